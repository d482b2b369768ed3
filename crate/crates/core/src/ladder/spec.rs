use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Dimension sequence `dims[i]` of the levels of a strict inductive limit.
///
/// Levels are numbered from 1. A linear ladder has `dim(i) = step * i` and is
/// defined for every level; an explicit ladder only defines the levels it lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LadderSpec {
    Linear { step: usize },
    Explicit(Vec<usize>),
}

impl LadderSpec {
    /// `dim(i) = i`.
    pub fn identity() -> Self {
        LadderSpec::Linear { step: 1 }
    }

    /// `dim(i) = 2i`.
    pub fn even() -> Self {
        LadderSpec::Linear { step: 2 }
    }

    pub fn linear(step: usize) -> Result<Self> {
        if step == 0 {
            return Err(Error::Specification(
                "linear ladder step must be at least 1".into(),
            ));
        }
        Ok(LadderSpec::Linear { step })
    }

    /// Validates a finite list of dimensions: nonempty, first entry at least 1,
    /// strictly increasing.
    pub fn explicit(dims: Vec<usize>) -> Result<Self> {
        let Some(&first) = dims.first() else {
            return Err(Error::Specification("dimension list is empty".into()));
        };
        if first == 0 {
            return Err(Error::Specification(
                "first level must have dimension at least 1".into(),
            ));
        }
        if let Some(w) = dims.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::Specification(format!(
                "dimensions must be strictly increasing: level {} has {} but level {} has {}",
                w + 1,
                dims[w],
                w + 2,
                dims[w + 1]
            )));
        }
        Ok(LadderSpec::Explicit(dims))
    }

    /// Highest defined level, `None` when the ladder is unbounded.
    /// Rechecks the ladder invariants; used when a spec was built directly
    /// from the enum variants.
    pub fn validate(&self) -> Result<()> {
        match self {
            LadderSpec::Linear { step } => LadderSpec::linear(*step).map(|_| ()),
            LadderSpec::Explicit(d) => LadderSpec::explicit(d.clone()).map(|_| ()),
        }
    }

    pub fn max_level(&self) -> Option<usize> {
        match self {
            LadderSpec::Linear { .. } => None,
            LadderSpec::Explicit(d) => Some(d.len()),
        }
    }

    pub fn dim(&self, level: usize) -> Result<usize> {
        let out_of_range = || Error::LevelOutOfRange {
            level,
            max: self.max_level().unwrap_or(usize::MAX),
        };
        if level == 0 {
            return Err(out_of_range());
        }
        match self {
            LadderSpec::Linear { step } => step.checked_mul(level).ok_or_else(out_of_range),
            LadderSpec::Explicit(d) => d.get(level - 1).copied().ok_or_else(out_of_range),
        }
    }

    /// Smallest level whose dimension is at least `n` (level 1 for `n = 0`).
    pub fn level_for_dim(&self, n: usize) -> Result<usize> {
        match self {
            LadderSpec::Linear { step } => Ok(n.div_ceil(*step).max(1)),
            LadderSpec::Explicit(d) => {
                let idx = d.partition_point(|&a| a < n);
                if idx == d.len() {
                    Err(Error::LevelOutOfRange {
                        level: idx + 1,
                        max: d.len(),
                    })
                } else {
                    Ok(idx + 1)
                }
            }
        }
    }
}

impl Default for LadderSpec {
    fn default() -> Self {
        LadderSpec::identity()
    }
}

impl fmt::Display for LadderSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LadderSpec::Linear { step: 1 } => write!(f, "identity"),
            LadderSpec::Linear { step: 2 } => write!(f, "even"),
            LadderSpec::Linear { step } => write!(f, "linear{step}"),
            LadderSpec::Explicit(d) => {
                let parts: Vec<String> = d.iter().map(|x| x.to_string()).collect();
                write!(f, "{}", parts.join(":"))
            }
        }
    }
}

/// Parses `identity`, `even`, or a dimension list such as `1:3:7:15`
/// (colons, commas or spaces as separators).
impl FromStr for LadderSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "identity" => Ok(LadderSpec::identity()),
            "even" => Ok(LadderSpec::even()),
            other => {
                let dims = other
                    .split([':', ',', ' '])
                    .filter(|p| !p.is_empty())
                    .map(|p| {
                        p.parse::<usize>()
                            .map_err(|_| Error::Specification(format!("not a dimension: {p:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                LadderSpec::explicit(dims)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_increasing() {
        assert!(matches!(
            LadderSpec::explicit(vec![3, 3, 4]),
            Err(Error::Specification(_))
        ));
        assert!(LadderSpec::explicit(vec![0, 1]).is_err());
        assert!(LadderSpec::explicit(vec![]).is_err());
        assert!(LadderSpec::linear(0).is_err());
    }

    #[test]
    fn level_lookup() {
        let even = LadderSpec::even();
        assert_eq!(even.level_for_dim(3).unwrap(), 2);
        assert_eq!(even.dim(2).unwrap(), 4);
        assert_eq!(LadderSpec::identity().level_for_dim(0).unwrap(), 1);

        let ex = LadderSpec::explicit(vec![1, 3, 7]).unwrap();
        assert_eq!(ex.level_for_dim(2).unwrap(), 2);
        assert_eq!(ex.level_for_dim(7).unwrap(), 3);
        assert!(matches!(
            ex.level_for_dim(8),
            Err(Error::LevelOutOfRange { .. })
        ));
        assert!(ex.dim(4).is_err());
        assert!(ex.dim(0).is_err());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(
            "identity".parse::<LadderSpec>().unwrap(),
            LadderSpec::identity()
        );
        assert_eq!("even".parse::<LadderSpec>().unwrap(), LadderSpec::even());
        let ex: LadderSpec = "1:3:7".parse().unwrap();
        assert_eq!(ex.to_string(), "1:3:7");
        assert!("3:3:4".parse::<LadderSpec>().is_err());
        assert!("abc".parse::<LadderSpec>().is_err());
    }
}
