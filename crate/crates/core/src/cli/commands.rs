use num_complex::Complex64;

use super::{ConvergeFamily, HermiteTarget, Job, RunConfig, SequenceFamily};
use crate::axioms::{run_suite, SuiteConfig};
use crate::dual::{is_stabilized, seminorm_partial_sums_of, SeminormIndex};
use crate::error::Result;
use crate::fourier::{
    coeffs_to_sequence, parseval_check, rapid_decay_report, IndexInterleaving, Smoothness,
    TorusFunction,
};
use crate::hermite::{
    density_diagnostic, orthonormal_basis, orthonormal_inner_product, orthonormality_residuals,
};
use crate::ladder::{power_tail_lower, HilbertElement};
use crate::report::{Report, ReportRow};

/// Gap bound for the geometric closed form and for Parseval on smooth inputs.
pub const GAP_TOLERANCE: f64 = 1e-10;
/// Quadrature bound on orthonormality residuals.
pub const ORTHONORMALITY_TOLERANCE: f64 = 1e-8;
const RELATIVE_TOLERANCE: f64 = 1e-12;

/// Runs the configured job and returns its report.
pub fn run_report(config: &RunConfig) -> Result<Report> {
    match &config.job {
        Job::Converge { family, levels } => converge(config, *family, *levels),
        Job::Axioms {
            cases,
            inject_cocone_fault,
        } => Ok(axioms(config, *cases, *inject_cocone_fault)),
        Job::Seminorm { family, ks, terms } => seminorm(config, family, ks, *terms),
        Job::Hermite { degree, target } => hermite(config, *degree, *target),
        Job::Fourier {
            function,
            grid,
            modes,
            ks,
        } => fourier(config, function, *grid, *modes, ks),
    }
}

fn header(config: &RunConfig, columns: &[&str]) -> Report {
    Report::new(columns)
        .config("command", config.command_name())
        .config("ladder", &config.ladder)
        .config("seed", config.seed)
}

fn converge(config: &RunConfig, family: ConvergeFamily, levels: usize) -> Result<Report> {
    let mut report = header(config, &["n", "tail_norm", "closed_form", "abs_gap"]);
    let (x, closed): (HilbertElement, Box<dyn Fn(usize) -> f64>) = match family {
        ConvergeFamily::Geometric(r) => {
            report = report.config("family", "geometric").config("ratio", r);
            let scale = (1.0 - r * r).sqrt();
            (
                HilbertElement::geometric(r)?,
                Box::new(move |n| r.powi(n as i32) / scale),
            )
        }
        ConvergeFamily::Power(p) => {
            report = report.config("family", "power").config("exponent", p);
            (
                HilbertElement::power_law(p)?,
                Box::new(move |n| power_tail_lower(2.0 * p, n).max(0.0).sqrt()),
            )
        }
    };
    report = report.config("levels", levels);
    let mut prev = f64::INFINITY;
    for level in 1..=levels {
        let n = config.ladder.dim(level)?;
        let tail = x.tail_norm(n)?;
        let cf = closed(n);
        let gap = (tail - cf).abs();
        report.require(tail <= prev);
        if matches!(family, ConvergeFamily::Geometric(_)) {
            report.require(gap < GAP_TOLERANCE);
        } else {
            report.require(cf <= tail);
        }
        prev = tail;
        report.push(ReportRow::new().key(n).num(tail).num(cf).num(gap));
    }
    Ok(report)
}

fn axioms(config: &RunConfig, cases: usize, inject_cocone_fault: bool) -> Report {
    let mut report = header(
        config,
        &["property", "cases", "passed", "failed", "max_residual"],
    )
    .config("cases", cases);
    let suite = SuiteConfig {
        ladder: config.ladder.clone(),
        seed: config.seed,
        cases,
        inject_cocone_fault,
    };
    for r in run_suite(&suite) {
        report.require(r.passed());
        report.push(
            ReportRow::new()
                .key(r.name)
                .key(r.cases)
                .key(r.cases - r.failed)
                .key(r.failed)
                .num(r.max_residual),
        );
    }
    report
}

fn seminorm(
    config: &RunConfig,
    family: &SequenceFamily,
    ks: &[u32],
    terms: usize,
) -> Result<Report> {
    let mut report = header(config, &["k", "n", "partial_qk", "stabilized"]);
    let coeffs: Vec<Complex64> = match family {
        SequenceFamily::Geometric(r) => {
            report = report.config("family", "geometric").config("ratio", r);
            (1..=terms)
                .map(|n| Complex64::new(r.powi(n as i32), 0.0))
                .collect()
        }
        SequenceFamily::Power(p) => {
            report = report.config("family", "power").config("exponent", p);
            (1..=terms)
                .map(|n| Complex64::new((n as f64).powf(-p), 0.0))
                .collect()
        }
        SequenceFamily::Fourier { function, grid } => {
            report = report
                .config("family", "fourier")
                .config("function", function)
                .config("grid", grid);
            let f = TorusFunction::named(function)?;
            let mut seq = coeffs_to_sequence(&f, *grid)?;
            seq.truncate(terms);
            seq
        }
    };
    let k_list: Vec<String> = ks.iter().map(u32::to_string).collect();
    report = report.config("k", k_list.join(":")).config("terms", terms);

    let sums: Vec<_> = ks
        .iter()
        .map(|&k| seminorm_partial_sums_of(&coeffs, SeminormIndex(k)))
        .collect();
    let mut l2 = 0.0;
    let running_l2: Vec<f64> = coeffs
        .iter()
        .map(|c| {
            l2 += c.norm_sqr();
            l2.sqrt()
        })
        .collect();
    for s in &sums {
        report.require(s.values.windows(2).all(|w| w[0] <= w[1]));
        if s.k.0 == 0 {
            let q0_ok = s
                .values
                .iter()
                .zip(&running_l2)
                .all(|(q, l)| (q - l).abs() <= RELATIVE_TOLERANCE * l);
            report.require(q0_ok);
        }
    }
    for pair in sums.windows(2) {
        let ordered = pair[0]
            .values
            .iter()
            .zip(&pair[1].values)
            .all(|(a, b)| a <= b);
        report.require(ordered);
    }
    for s in &sums {
        for (i, v) in s.values.iter().enumerate() {
            report.push(
                ReportRow::new()
                    .key(s.k.0)
                    .key(i + 1)
                    .num(*v)
                    .flag(is_stabilized(&s.values[..=i])),
            );
        }
    }
    Ok(report)
}

fn hermite(config: &RunConfig, degree: usize, target: HermiteTarget) -> Result<Report> {
    let mut report = header(
        config,
        &["section", "key", "index", "exact", "value", "flag"],
    )
    .config("degree", degree)
    .config("target", target.name());
    let basis = orthonormal_basis(degree);
    for p in &basis {
        let scale = p.scale_f64();
        for (j, c) in p.poly.coeffs().iter().enumerate() {
            let value = scale * num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::NAN);
            report.push(
                ReportRow::new()
                    .key("basis")
                    .key(p.degree)
                    .key(j)
                    .key(c)
                    .num(value)
                    .empty(),
            );
        }
        report.push(
            ReportRow::new()
                .key("normalization")
                .key(p.degree)
                .empty()
                .key(format!("{}*(2pi)^(-1/4)", p.normalization))
                .num(scale)
                .empty(),
        );
    }
    let residuals = orthonormality_residuals(&basis);
    for (a, pa) in basis.iter().enumerate() {
        for (b, pb) in basis.iter().enumerate() {
            let exact = orthonormal_inner_product(pa, pb);
            let expected = if a == b { 1 } else { 0 };
            let exact_ok = exact
                .as_rational()
                .is_some_and(|q| *q == num_rational::BigRational::from_integer(expected.into()));
            let ok = exact_ok && residuals[a][b] < ORTHONORMALITY_TOLERANCE;
            report.require(ok);
            report.push(
                ReportRow::new()
                    .key("orthonormality")
                    .key(a)
                    .key(b)
                    .key(&exact)
                    .num(residuals[a][b])
                    .flag(ok),
            );
        }
    }
    let rows = density_diagnostic(|x| target.eval(x), degree)?;
    let mut prev = f64::INFINITY;
    for r in &rows {
        let ok = r.error <= prev;
        report.require(ok);
        prev = r.error;
        report.push(
            ReportRow::new()
                .key("density")
                .key(r.degree)
                .empty()
                .empty()
                .num(r.error)
                .flag(ok),
        );
    }
    for r in &rows {
        report.push(
            ReportRow::new()
                .key("density_residual")
                .key(r.degree)
                .empty()
                .empty()
                .num(r.residual)
                .empty(),
        );
    }
    Ok(report)
}

fn fourier(
    config: &RunConfig,
    function: &str,
    grid: usize,
    modes: usize,
    ks: &[u32],
) -> Result<Report> {
    let k_list: Vec<String> = ks.iter().map(u32::to_string).collect();
    let mut report = header(config, &["section", "key", "index", "re", "im", "flag"])
        .config("function", function)
        .config("grid", grid)
        .config("modes", modes)
        .config("k", k_list.join(":"));
    let f = TorusFunction::named(function)?;
    let smooth = f.smoothness() == Smoothness::Smooth;
    let seq = coeffs_to_sequence(&f, grid)?;
    for position in 1..=(2 * modes as u64 + 1) {
        let c = seq[position as usize - 1];
        report.push(
            ReportRow::new()
                .key("coeff")
                .key(IndexInterleaving::to_integer(position))
                .key(position)
                .num(c.re)
                .num(c.im)
                .empty(),
        );
    }

    let p = parseval_check(&f, grid)?;
    let gap_ok = p.gap < GAP_TOLERANCE;
    if smooth {
        report.require(gap_ok);
    }
    for (label, value) in [("lhs", p.lhs), ("rhs", p.rhs)] {
        report.push(
            ReportRow::new()
                .key("parseval")
                .key(label)
                .empty()
                .num(value)
                .empty()
                .empty(),
        );
    }
    report.push(
        ReportRow::new()
            .key("parseval")
            .key("gap")
            .empty()
            .num(p.gap)
            .empty()
            .flag(gap_ok),
    );

    let decay = rapid_decay_report(&f, ks, grid)?;
    report.require(decay.passed());
    if smooth {
        let ordered = decay.rows.windows(2).all(|w| w[0].last() <= w[1].last());
        report.require(ordered);
    }
    for row in &decay.rows {
        report.push(
            ReportRow::new()
                .key("decay")
                .key(row.k.0)
                .key(row.values.len())
                .num(row.last())
                .empty()
                .flag(row.stabilized),
        );
    }
    Ok(report)
}
