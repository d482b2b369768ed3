use std::sync::Arc;

use num_complex::Complex64;

use super::{LadderSpec, PhiElement};
use crate::error::{Error, Result};

/// Dense row-major complex matrix `rows x cols`.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelMap {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl LevelMap {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                actual: data.len(),
            });
        }
        Ok(LevelMap { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let data = (0..rows)
            .flat_map(|r| (0..cols).map(move |c| (r, c)))
            .map(|(r, c)| f(r, c))
            .collect();
        LevelMap { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.cols + col] = value;
    }

    /// The first `cols` columns.
    pub fn restrict_columns(&self, cols: usize) -> LevelMap {
        LevelMap::from_fn(self.rows, cols.min(self.cols), |r, c| self.get(r, c))
    }

    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        (0..self.rows)
            .map(|r| {
                self.data[r * self.cols..(r + 1) * self.cols]
                    .iter()
                    .zip(x)
                    .map(|(m, v)| m * v)
                    .sum()
            })
            .collect()
    }
}

/// Maps out of each level into a common target `C^m`, compatible with the
/// inclusions: the first `dim(i)` columns of map `i+1` equal map `i`.
#[derive(Debug, Clone)]
pub struct LevelMapFamily {
    ladder: Arc<LadderSpec>,
    target_dim: usize,
    maps: Vec<LevelMap>,
}

impl LevelMapFamily {
    /// Validates shapes and the compatibility condition, reporting the first
    /// offending level.
    pub fn new(ladder: Arc<LadderSpec>, target_dim: usize, maps: Vec<LevelMap>) -> Result<Self> {
        let family = LevelMapFamily::new_unchecked(ladder, target_dim, maps);
        family.verify()?;
        Ok(family)
    }

    /// Builds a family without the compatibility check. Used to inject faults
    /// into the axiom suite; [`LevelMapFamily::verify`] still reports them.
    pub fn new_unchecked(ladder: Arc<LadderSpec>, target_dim: usize, maps: Vec<LevelMap>) -> Self {
        LevelMapFamily {
            ladder,
            target_dim,
            maps,
        }
    }

    /// Column restrictions of `top` to levels `1..=levels`. `top` must have
    /// exactly `dim(levels)` columns.
    pub fn from_top(ladder: Arc<LadderSpec>, top: LevelMap, levels: usize) -> Result<Self> {
        let top_dim = ladder.dim(levels)?;
        if top.cols() != top_dim {
            return Err(Error::DimensionMismatch {
                expected: top_dim,
                actual: top.cols(),
            });
        }
        let maps = (1..=levels)
            .map(|i| ladder.dim(i).map(|d| top.restrict_columns(d)))
            .collect::<Result<Vec<_>>>()?;
        LevelMapFamily::new(ladder, top.rows(), maps)
    }

    /// Identity maps into `C^dim(levels)`.
    pub fn identity(ladder: Arc<LadderSpec>, levels: usize) -> Result<Self> {
        let m = ladder.dim(levels)?;
        let top = LevelMap::from_fn(m, m, |r, c| {
            if r == c {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        LevelMapFamily::from_top(ladder, top, levels)
    }

    pub fn ladder(&self) -> &Arc<LadderSpec> {
        &self.ladder
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn levels(&self) -> usize {
        self.maps.len()
    }

    pub fn map(&self, level: usize) -> Option<&LevelMap> {
        level.checked_sub(1).and_then(|i| self.maps.get(i))
    }

    pub fn verify(&self) -> Result<()> {
        self.ladder.validate()?;
        for (i, m) in self.maps.iter().enumerate() {
            let level = i + 1;
            let dim = self.ladder.dim(level)?;
            if m.rows() != self.target_dim || m.cols() != dim {
                return Err(Error::CoconeViolation {
                    level,
                    detail: format!(
                        "map has shape {}x{}, expected {}x{}",
                        m.rows(),
                        m.cols(),
                        self.target_dim,
                        dim
                    ),
                });
            }
            if i > 0 {
                let prev = &self.maps[i - 1];
                if m.restrict_columns(prev.cols()) != *prev {
                    return Err(Error::CoconeViolation {
                        level,
                        detail: format!(
                            "first {} columns differ from the map at level {}",
                            prev.cols(),
                            level - 1
                        ),
                    });
                }
            }
        }
        Ok(())
    }
}

/// The induced map on the union of levels: `M_i * coeffs(x)` for `i` the level
/// of `x`. When `x` sits above the family's last level the canonical level is
/// used instead, which gives the same result on compatible families.
pub fn induce_map(family: &LevelMapFamily, x: &PhiElement) -> Result<Vec<Complex64>> {
    if family.ladder() != x.ladder() {
        return Err(Error::LadderMismatch);
    }
    if let Some(m) = family.map(x.level()) {
        return Ok(m.apply(x.coeffs()));
    }
    let canonical = x.canonical();
    match family.map(canonical.level()) {
        Some(m) => Ok(m.apply(canonical.coeffs())),
        None => Err(Error::LevelOutOfRange {
            level: canonical.level(),
            max: family.levels(),
        }),
    }
}
