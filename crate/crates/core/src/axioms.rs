//! Seeded property suite over the ladder and dual constructions.
//!
//! Random cases come from ChaCha8 (`rand_chacha`), seeded with
//! `SeedableRng::seed_from_u64(seed)`, with stream `p` selected for the `p`-th
//! property so that each property's cases do not depend on the others.

use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dual::{seminorm_qk, DualFunctional, SeminormIndex};
use crate::error::Error;
use crate::ladder::{
    embed_to_hilbert, induce_map, HilbertElement, LadderSpec, LevelMap, LevelMapFamily, PhiElement,
};

/// Relative tolerance for floating invariants.
pub const RELATIVE_TOLERANCE: f64 = 1e-12;

/// Highest level used for random elements on unbounded ladders.
const MAX_RANDOM_LEVEL: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyResult {
    pub name: &'static str,
    pub cases: usize,
    pub failed: usize,
    pub max_residual: f64,
}

impl PropertyResult {
    fn new(name: &'static str) -> Self {
        PropertyResult {
            name,
            cases: 0,
            failed: 0,
            max_residual: 0.0,
        }
    }

    fn record(&mut self, ok: bool, residual: f64) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
        }
        if residual.is_nan() || residual > self.max_residual {
            self.max_residual = residual;
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub ladder: LadderSpec,
    pub seed: u64,
    pub cases: usize,
    /// Corrupt one of the random level-map families before it reaches the
    /// commutation check.
    pub inject_cocone_fault: bool,
}

impl SuiteConfig {
    pub fn new(ladder: LadderSpec, seed: u64) -> Self {
        SuiteConfig {
            ladder,
            seed,
            cases: 1000,
            inject_cocone_fault: false,
        }
    }
}

struct Gen {
    rng: ChaCha8Rng,
    ladder: Arc<LadderSpec>,
    max_level: usize,
}

impl Gen {
    fn new(cfg: &SuiteConfig, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(stream);
        let max_level = cfg
            .ladder
            .max_level()
            .map_or(MAX_RANDOM_LEVEL, |m| m.min(MAX_RANDOM_LEVEL));
        Gen {
            rng,
            ladder: Arc::new(cfg.ladder.clone()),
            max_level,
        }
    }

    fn scalar(&mut self) -> Complex64 {
        Complex64::new(self.rng.gen_range(-1.0..1.0), self.rng.gen_range(-1.0..1.0))
    }

    fn level(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.gen_range(lo..=hi)
    }

    /// Random element at a random level up to `hi`; a quarter of the cases
    /// get a zeroed tail so canonical levels vary.
    fn element(&mut self, hi: usize) -> PhiElement {
        let level = self.level(1, hi);
        let dim = self.ladder.dim(level).expect("level within ladder");
        let mut coeffs: Vec<Complex64> = (0..dim).map(|_| self.scalar()).collect();
        if self.rng.gen_bool(0.25) {
            let keep = self.rng.gen_range(0..=dim);
            for c in &mut coeffs[keep..] {
                *c = Complex64::new(0.0, 0.0);
            }
        }
        PhiElement::new(Arc::clone(&self.ladder), level, coeffs).expect("dimension matches")
    }

    fn nonzero_element(&mut self, hi: usize) -> PhiElement {
        loop {
            let x = self.element(hi);
            if x.support() > 0 {
                return x;
            }
        }
    }

    fn family(&mut self, levels: usize) -> LevelMapFamily {
        let m = self.rng.gen_range(1..=5);
        let cols = self.ladder.dim(levels).expect("level within ladder");
        let mut top = LevelMap::from_fn(m, cols, |_, _| Complex64::new(0.0, 0.0));
        for r in 0..m {
            for c in 0..cols {
                let v = self.scalar();
                top.set(r, c, v);
            }
        }
        LevelMapFamily::from_top(Arc::clone(&self.ladder), top, levels)
            .expect("column restrictions are compatible")
    }
}

fn rel(diff: f64, scale: f64) -> f64 {
    if scale == 0.0 {
        diff
    } else {
        diff / scale
    }
}

fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Runs every property and returns one result per property, in a fixed order.
pub fn run_suite(cfg: &SuiteConfig) -> Vec<PropertyResult> {
    let (compat, commute) = cocone_compatibility_and_commutation(cfg);
    vec![
        composition(cfg),
        isometry(cfg),
        well_definedness(cfg),
        projection_algebra(cfg),
        pythagoras(cfg),
        density(cfg),
        injectivity(cfg),
        compat,
        commute,
        cocone_rejection(cfg),
        pairing_linearity(cfg),
        level_consistency(cfg),
        restriction_bound(cfg),
        riesz(cfg),
        seminorm_q0(cfg),
        seminorm_order(cfg),
        factorial_pairing(),
    ]
}

fn composition(cfg: &SuiteConfig) -> PropertyResult {
    let mut res = PropertyResult::new("composition");
    let mut g = Gen::new(cfg, 1);
    if g.max_level < 3 {
        return res;
    }
    for _ in 0..cfg.cases {
        let x = g.element(g.max_level - 2);
        let j = g.level(x.level() + 1, g.max_level - 1);
        let k = g.level(j + 1, g.max_level);
        let via = x.include(j).and_then(|y| y.include(k));
        let direct = x.include(k);
        let residual = match (&via, &direct) {
            (Ok(a), Ok(b)) => max_abs_diff(a.coeffs(), b.coeffs()),
            _ => f64::INFINITY,
        };
        res.record(residual == 0.0, residual);
    }
    res
}

fn isometry(cfg: &SuiteConfig) -> PropertyResult {
    let mut res = PropertyResult::new("isometry");
    let mut g = Gen::new(cfg, 2);
    for _ in 0..cfg.cases {
        let x = g.element(g.max_level);
        let y = g.element(g.max_level);
        let j = g.level(x.level().max(y.level()), g.max_level);
        let base = x.inner_product(&y).expect("same ladder");
        let lifted = x
            .include(j)
            .and_then(|a| y.include(j).and_then(|b| a.inner_product(&b)))
            .expect("levels in range");
        let r = rel((base - lifted).norm(), x.norm() * y.norm());
        res.record(r <= RELATIVE_TOLERANCE, r);
    }
    res
}

fn well_definedness(cfg: &SuiteConfig) -> PropertyResult {
    let mut res = PropertyResult::new("well_definedness");
    let mut g = Gen::new(cfg, 3);
    for _ in 0..cfg.cases {
        let x = g.element(g.max_level);
        let y = g.element(g.max_level);
        let common = x.canonical_level().max(y.canonical_level());
        let at_canonical = x
            .canonical()
            .inner_product_at(&y.canonical(), common)
            .expect("same ladder");
        let level = g.level(x.level().max(y.level()), g.max_level);
        let at_level = x.inner_product_at(&y, level).expect("same ladder");
        let r = (at_canonical - at_level).norm();
        res.record(r == 0.0, r);
    }
    res
}

fn projection_algebra(cfg: &SuiteConfig) -> PropertyResult {
    let mut res = PropertyResult::new("projection_algebra");
    let mut g = Gen::new(cfg, 4);
    let ctx = crate::ladder::ladder_from_hilbert(cfg.ladder.clone()).expect("valid ladder");
    let max_n = g.ladder.dim(g.max_level).expect("level within ladder");
    for _ in 0..cfg.cases {
        let x = if g.rng.gen_bool(0.5) {
            HilbertElement::geometric(g.rng.gen_range(0.05..0.95)).expect("ratio in range")
        } else {
            HilbertElement::power_law(g.rng.gen_range(0.6..3.0)).expect("exponent in range")
        };
        let n = g.level(1, max_n);
        let m = g.level(1, max_n);
        let outcome = (|| -> Result<(f64, bool), Error> {
            let pm = ctx.project(&x, m)?;
            let pn_pm = ctx.project(&embed_to_hilbert(&pm), n)?;
            let p_min = ctx.project(&x, n.min(m))?;
            let pn = ctx.project(&x, n)?;
            let pn_pn = ctx.project(&embed_to_hilbert(&pn), n)?;
            let d = max_abs_diff(pn_pm.coeffs(), p_min.include(pn_pm.level())?.coeffs())
                .max(max_abs_diff(pn_pn.coeffs(), pn.coeffs()));
            Ok((d, pn.norm() <= x.norm() * (1.0 + RELATIVE_TOLERANCE)))
        })();
        match outcome {
            Ok((d, bounded)) => res.record(d == 0.0 && bounded, d),
            Err(_) => res.record(false, f64::INFINITY),
        }
    }
    res
}

fn pythagoras(cfg: &SuiteConfig) -> PropertyResult {
    let mut res = PropertyResult::new("pythagoras");
    let mut g = Gen::new(cfg, 5);
    for _ in 0..cfg.cases {
        let x = HilbertElement::geometric(g.rng.gen_range(0.05..0.95)).expect("ratio in range");
        let n = g.level(0, 50);
        let total = x.norm().powi(2);
        let split = x.truncated_norm(n).expect("extender present").powi(2)
            + x.tail_norm(n).expect("all n certified").powi(2);
        let r = rel((total - split).abs(), total);
        res.record(r <= RELATIVE_TOLERANCE, r);
    }
    res
}

fn density(cfg: &SuiteConfig) -> PropertyResult {
    let mut res = PropertyResult::new("density");
    let mut g = Gen::new(cfg, 6);
    let families = (cfg.cases / 10).max(1);
    for _ in 0..families {
        let x = if g.rng.gen_bool(0.5) {
            HilbertElement::geometric(g.rng.gen_range(0.05..0.95)).expect("ratio in range")
        } else {
            HilbertElement::power_law(g.rng.gen_range(1.0..3.0)).expect("exponent in range")
        };
        let tails: Vec<f64> = (0..=50)
            .map(|n| x.tail_norm(n).expect("certified"))
            .collect();
        let monotone = tails.windows(2).all(|w| w[1] <= w[0]);
        let reaches = [1e-3, 1e-6].iter().all(|&eps| {
            x.level_for_tolerance(eps)
                .and_then(|n| x.tail_norm(n))
                .is_ok_and(|t| t < eps)
        });
        res.record(monotone && reaches, 0.0);
    }
    res
}

fn injectivity(cfg: &SuiteConfig) -> PropertyResult {
    let mut res = PropertyResult::new("injectivity");
    let mut g = Gen::new(cfg, 7);
    for _ in 0..cfg.cases {
        let x = g.nonzero_element(g.max_level);
        res.record(embed_to_hilbert(&x).norm() > 0.0, 0.0);
    }
    res
}

fn cocone_compatibility_and_commutation(cfg: &SuiteConfig) -> (PropertyResult, PropertyResult) {
    let mut compat = PropertyResult::new("cocone_compatibility");
    let mut commute = PropertyResult::new("commutation");
    let mut g = Gen::new(cfg, 8);
    let families = (cfg.cases / 10).max(1);
    let fault_at = families / 2;
    for f in 0..families {
        let inject = cfg.inject_cocone_fault && f == fault_at && g.max_level >= 2;
        let levels = g.level(if inject { 2 } else { 1 }, g.max_level);
        let mut family = g.family(levels);
        if inject {
            family = corrupt(&family, levels);
        }
        compat.record(family.verify().is_ok(), 0.0);
        for _ in 0..10 {
            let x = g.element(levels);
            let j = g.level(x.level(), levels);
            let base = induce_map(&family, &x);
            let lifted = x.include(j).and_then(|y| induce_map(&family, &y));
            let residual = match (&base, &lifted) {
                (Ok(a), Ok(b)) => max_abs_diff(a, b),
                _ => f64::INFINITY,
            };
            commute.record(residual == 0.0, residual);
        }
    }
    (compat, commute)
}

/// Perturbs a column of the map at `level` that it shares with the map below.
fn corrupt(family: &LevelMapFamily, level: usize) -> LevelMapFamily {
    let maps: Vec<LevelMap> = (1..=family.levels())
        .map(|i| {
            let mut m = family.map(i).expect("level exists").clone();
            if i == level {
                let v = m.get(0, 0);
                m.set(0, 0, v + Complex64::new(1.0, 0.0));
            }
            m
        })
        .collect();
    LevelMapFamily::new_unchecked(Arc::clone(family.ladder()), family.target_dim(), maps)
}

fn cocone_rejection(cfg: &SuiteConfig) -> PropertyResult {
    let mut res = PropertyResult::new("cocone_rejection");
    let mut g = Gen::new(cfg, 9);
    if g.max_level < 2 {
        return res;
    }
    let families = (cfg.cases / 10).max(1);
    for _ in 0..families {
        let levels = g.level(2, g.max_level);
        let family = g.family(levels);
        let bad = g.level(2, levels);
        let corrupted = corrupt(&family, bad);
        let maps: Vec<LevelMap> = (1..=levels)
            .map(|i| corrupted.map(i).expect("level exists").clone())
            .collect();
        let outcome = LevelMapFamily::new(Arc::clone(&g.ladder), family.target_dim(), maps);
        let ok = matches!(outcome, Err(Error::CoconeViolation { level, .. }) if level == bad);
        res.record(ok, 0.0);
    }
    res
}

fn random_functional(g: &mut Gen) -> DualFunctional {
    let a = g.scalar();
    let b = g.scalar();
    let growth = g.rng.gen_range(0.0..3.0);
    DualFunctional::new("random", move |i| {
        let t = i as f64;
        a * t.powf(growth) + b * (-1.0f64).powi(i as i32)
    })
}

fn pairing_linearity(cfg: &SuiteConfig) -> PropertyResult {
    let mut res = PropertyResult::new("pairing_linearity");
    let mut g = Gen::new(cfg, 10);
    for _ in 0..cfg.cases {
        let f = random_functional(&mut g);
        let x = g.element(g.max_level);
        let y = g.element(g.max_level);
        let (a, b) = (g.scalar(), g.scalar());
        let combo = PhiElement::linear_combination(a, &x, b, &y).expect("same ladder");
        let lhs = f.pair(&combo);
        let rhs = a * f.pair(&x) + b * f.pair(&y);
        let level = x.level().max(y.level());
        let fnorm = f.restrict(&g.ladder, level).expect("level in range").norm;
        let scale = fnorm * (a.norm() * x.norm() + b.norm() * y.norm());
        let r = rel((lhs - rhs).norm(), scale);
        res.record(r <= RELATIVE_TOLERANCE, r);
    }
    res
}

fn level_consistency(cfg: &SuiteConfig) -> PropertyResult {
    let mut res = PropertyResult::new("level_consistency");
    let mut g = Gen::new(cfg, 11);
    for _ in 0..cfg.cases {
        let f = random_functional(&mut g);
        let x = g.element(g.max_level);
        let j = g.level(x.level(), g.max_level);
        let r = (f.pair(&x) - f.pair(&x.include(j).expect("level in range"))).norm();
        res.record(r == 0.0, r);
    }
    res
}

fn restriction_bound(cfg: &SuiteConfig) -> PropertyResult {
    let mut res = PropertyResult::new("restriction_bound");
    let mut g = Gen::new(cfg, 12);
    for _ in 0..cfg.cases {
        let f = random_functional(&mut g);
        let x = g.element(g.max_level);
        let bound = f
            .restrict(&g.ladder, x.level())
            .expect("level in range")
            .norm
            * x.norm();
        let value = f.pair(&x).norm();
        let excess = rel((value - bound).max(0.0), bound);
        res.record(excess <= RELATIVE_TOLERANCE, excess);
    }
    res
}

fn riesz(cfg: &SuiteConfig) -> PropertyResult {
    let mut res = PropertyResult::new("riesz");
    let mut g = Gen::new(cfg, 13);
    for _ in 0..cfg.cases {
        let x = g.element(g.max_level);
        let y = g.element(g.max_level);
        let lhs = DualFunctional::riesz(&y).pair(&x);
        let rhs = x.inner_product(&y).expect("same ladder");
        let r = rel((lhs - rhs).norm(), x.norm() * y.norm());
        res.record(r <= RELATIVE_TOLERANCE, r);
    }
    res
}

fn seminorm_q0(cfg: &SuiteConfig) -> PropertyResult {
    let mut res = PropertyResult::new("seminorm_q0");
    let mut g = Gen::new(cfg, 14);
    for _ in 0..cfg.cases {
        let x = g.element(g.max_level);
        let l2 = x.norm();
        let q0 = seminorm_qk(x.coeffs(), SeminormIndex(0));
        let r = rel((q0 - l2).abs(), l2);
        res.record(r <= RELATIVE_TOLERANCE, r);
    }
    res
}

fn seminorm_order(cfg: &SuiteConfig) -> PropertyResult {
    let mut res = PropertyResult::new("seminorm_order");
    let mut g = Gen::new(cfg, 15);
    for _ in 0..cfg.cases {
        let x = g.element(g.max_level);
        let q: Vec<f64> = (0..=4)
            .map(|k| seminorm_qk(x.coeffs(), SeminormIndex(k)))
            .collect();
        res.record(q.windows(2).all(|w| w[0] <= w[1]), 0.0);
    }
    res
}

fn factorial_pairing() -> PropertyResult {
    let mut res = PropertyResult::new("factorial_pairing");
    let ladder = Arc::new(LadderSpec::identity());
    let f = DualFunctional::factorial();
    let mut expected = 1.0f64;
    for i in 1..=20usize {
        expected *= i as f64;
        let e = PhiElement::basis(Arc::clone(&ladder), i).expect("basis index in range");
        let lifted = e.include(i + 200).expect("level in range");
        let ok = f.pair(&e) == Complex64::new(expected, 0.0) && f.pair(&lifted) == f.pair(&e);
        res.record(ok, 0.0);
    }
    res
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suite_passes_on_both_ladders() {
        for ladder in [LadderSpec::identity(), LadderSpec::even()] {
            let mut cfg = SuiteConfig::new(ladder, 42);
            cfg.cases = 200;
            for r in run_suite(&cfg) {
                assert!(r.passed(), "{} failed {} of {}", r.name, r.failed, r.cases);
                assert!(r.cases > 0, "{} ran no cases", r.name);
                assert!(r.max_residual < RELATIVE_TOLERANCE, "{}", r.name);
            }
        }
    }

    #[test]
    fn suite_is_deterministic() {
        let mut cfg = SuiteConfig::new(LadderSpec::identity(), 7);
        cfg.cases = 50;
        assert_eq!(run_suite(&cfg), run_suite(&cfg));
    }

    #[test]
    fn injected_fault_is_reported() {
        let mut cfg = SuiteConfig::new(LadderSpec::identity(), 42);
        cfg.cases = 100;
        cfg.inject_cocone_fault = true;
        let results = run_suite(&cfg);
        let compat = results
            .iter()
            .find(|r| r.name == "cocone_compatibility")
            .unwrap();
        assert_eq!(compat.failed, 1);
    }

    #[test]
    fn short_explicit_ladder_skips_composition() {
        let mut cfg = SuiteConfig::new(LadderSpec::explicit(vec![2, 5]).unwrap(), 1);
        cfg.cases = 20;
        let results = run_suite(&cfg);
        let comp = results.iter().find(|r| r.name == "composition").unwrap();
        assert_eq!(comp.cases, 0);
        assert!(results.iter().all(PropertyResult::passed));
    }
}
