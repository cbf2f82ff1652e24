//! Desk-scale verification suites: closed forms against the oracle, the
//! zero band, and the symmetry scalings.

use std::fmt;

use rayon::prelude::*;

use crate::basis::{Family, FamilySpec};
use crate::closed_forms::{rho_closed_vector, symmetry_factor, zero_region};
use crate::error::Result;
use crate::oracle::oracle_rho;
use crate::scalars::{Field, Float, Rational};

/// The family set of the oracle-equivalence acceptance run.
pub fn default_families() -> Vec<FamilySpec> {
    let q = |n: i64, d: i64| Rational::new(n.into(), d.into());
    let ok = |r: Result<FamilySpec>| r.expect("valid built-in family");
    vec![
        ok(FamilySpec::jacobi(q(5, 2), q(3, 2))),
        ok(FamilySpec::jacobi(q(0, 1), q(0, 1))),
        ok(FamilySpec::symmetric_jacobi(q(5, 2))),
        ok(FamilySpec::gegenbauer(q(3, 2))),
        FamilySpec::legendre(),
        FamilySpec::chebyshev(),
        ok(FamilySpec::laguerre(q(0, 1))),
        ok(FamilySpec::laguerre(q(1, 1))),
        ok(FamilySpec::laguerre(q(5, 2))),
    ]
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub families: Vec<FamilySpec>,
    /// Oracle pairs run over `0 <= m <= n <= max_degree`.
    pub max_degree: usize,
    /// When set, float values are compared with the exact ones as well.
    pub float_precision: Option<usize>,
    /// Test hook: perturbs one closed-form value so the failure path can be
    /// exercised end to end.
    pub inject_fault: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            families: default_families(),
            max_degree: 8,
            float_precision: None,
            inject_fault: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch {
    pub suite: &'static str,
    pub family: String,
    pub m: usize,
    pub n: usize,
    pub j: usize,
    pub expected: String,
    pub got: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: family={} m={} n={} j={}: expected {}, got {}",
            self.suite, self.family, self.m, self.n, self.j, self.expected, self.got
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct FamilyTally {
    pub family: String,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub tallies: Vec<FamilyTally>,
    pub first_mismatch: Option<Mismatch>,
}

impl Report {
    pub fn checks(&self) -> usize {
        self.tallies.iter().map(|t| t.passed + t.failed).sum()
    }

    pub fn failures(&self) -> usize {
        self.tallies.iter().map(|t| t.failed).sum()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for t in &self.tallies {
            out.push_str(&format!("{}: {} passed, {} failed\n", t.family, t.passed, t.failed));
        }
        match &self.first_mismatch {
            None => out.push_str(&format!("all {} checks passed\n", self.checks())),
            Some(m) => {
                out.push_str(&format!("{} of {} checks failed\n", self.failures(), self.checks()));
                out.push_str(&format!("first mismatch: {m}\n"));
            }
        }
        out
    }
}

#[derive(Default)]
struct Tally {
    passed: usize,
    failed: usize,
    first: Option<Mismatch>,
}

impl Tally {
    fn record(&mut self, ok: bool, mismatch: impl FnOnce() -> Mismatch) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            if self.first.is_none() {
                self.first = Some(mismatch());
            }
        }
    }
}

/// log10 of the relative agreement required of the float backend,
/// `10^-(p log10 2 - 17)`, i.e. `1e-60` at 256 bits. Exact zeros are compared against the largest
/// magnitude in the same coefficient vector.
pub fn float_tolerance_log10(precision: usize) -> f64 {
    -(precision as f64 * std::f64::consts::LOG10_2 - 17.0)
}

fn float_close(exact: &Rational, approx: &Float, scale_log10: f64, precision: usize) -> bool {
    let diff = approx.to_rational() - exact;
    if num_traits::Zero::is_zero(&diff) {
        return true;
    }
    let reference = if num_traits::Zero::is_zero(exact) {
        scale_log10
    } else {
        exact.log10_abs()
    };
    diff.log10_abs() - reference <= float_tolerance_log10(precision)
}

fn check_family(spec: &FamilySpec, cfg: &VerifyConfig, fault: bool) -> Result<Tally> {
    let mut tally = Tally::default();
    let name = spec.to_string();
    let mismatch = |suite, m, n, j, e: String, g: String| Mismatch {
        suite,
        family: name.clone(),
        m,
        n,
        j,
        expected: e,
        got: g,
    };

    for m in 0..=cfg.max_degree {
        for n in m..=cfg.max_degree {
            let truth = oracle_rho::<Rational>(spec, m, n, &())?;
            let mut closed = rho_closed_vector::<Rational>(spec, m, n, &())?;
            if fault && (m, n) == (1, 2) {
                closed[1] += Rational::from_integer(1.into());
            }
            for (j, (e, g)) in truth.coeffs().iter().zip(&closed).enumerate() {
                tally.record(e == g, || mismatch("oracle", m, n, j, e.to_string(), g.to_string()));
            }
            if let Some(p) = cfg.float_precision {
                let approx = rho_closed_vector::<Float>(spec, m, n, &p)?;
                let scale = truth
                    .coeffs()
                    .iter()
                    .map(Field::log10_abs)
                    .fold(f64::NEG_INFINITY, f64::max);
                for (j, (e, g)) in truth.coeffs().iter().zip(&approx).enumerate() {
                    tally.record(float_close(e, g, scale, p), || {
                        mismatch("float", m, n, j, e.to_string(), g.to_string())
                    });
                }
            }
        }
    }

    for m in 0..=4usize {
        for n in 0..=20usize {
            let Some(band) = zero_region(spec, m, n) else { continue };
            let values = rho_closed_vector::<Rational>(spec, m, n, &())?;
            for j in band {
                let v = &values[j];
                tally.record(Field::is_zero(v), || {
                    mismatch("zero-region", m, n, j, "0".into(), v.to_string())
                });
            }
        }
    }

    let symmetric_range = match spec.family() {
        Family::Laguerre | Family::GenericMonic => None,
        Family::Legendre => Some(false),
        _ => Some(true),
    };
    if let Some(needs_high) = symmetric_range {
        for m in 0..=4usize {
            let lo = if needs_high { m + 1 } else { 0 };
            let cols = (0..=12usize)
                .map(|n| rho_closed_vector::<Rational>(spec, m, n, &()))
                .collect::<Result<Vec<_>>>()?;
            let zero = Rational::from_integer(0.into());
            for n in lo..=12usize {
                for j in lo..=12usize {
                    let fwd = cols[n].get(j).unwrap_or(&zero);
                    let back = cols[j].get(n).unwrap_or(&zero);
                    let want = symmetry_factor::<Rational>(spec, m, n, j, &())? * fwd;
                    tally.record(&want == back, || {
                        mismatch("symmetry", m, j, n, want.to_string(), back.to_string())
                    });
                }
            }
        }
    }
    Ok(tally)
}

/// Runs every suite for every configured family.
pub fn run(cfg: &VerifyConfig) -> Result<Report> {
    let tallies = cfg
        .families
        .par_iter()
        .enumerate()
        .map(|(i, spec)| check_family(spec, cfg, cfg.inject_fault && i == 0).map(|t| (spec.to_string(), t)))
        .collect::<Result<Vec<_>>>()?;
    let first_mismatch = tallies.iter().find_map(|(_, t)| t.first.clone());
    Ok(Report {
        tallies: tallies
            .into_iter()
            .map(|(family, t)| FamilyTally {
                family,
                passed: t.passed,
                failed: t.failed,
            })
            .collect(),
        first_mismatch,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(fault: bool) -> VerifyConfig {
        VerifyConfig {
            families: vec![FamilySpec::legendre(), FamilySpec::chebyshev()],
            max_degree: 4,
            float_precision: Some(256),
            inject_fault: fault,
        }
    }

    #[test]
    fn clean_run_passes() {
        let report = run(&small(false)).unwrap();
        assert!(report.passed());
        assert!(report
            .render()
            .ends_with(&format!("all {} checks passed\n", report.checks())));
    }

    #[test]
    fn injected_fault_is_reported() {
        let report = run(&small(true)).unwrap();
        assert_eq!(report.failures(), 1);
        let m = report.first_mismatch.unwrap();
        assert_eq!(
            (m.suite, m.family.as_str(), m.m, m.n, m.j),
            ("oracle", "legendre", 1, 2, 1)
        );
    }

    #[test]
    fn tolerance_at_default_precision() {
        assert!((float_tolerance_log10(256) + 60.06).abs() < 0.01);
    }
}
