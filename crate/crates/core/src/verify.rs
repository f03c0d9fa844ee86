//! Cross-validation of every evaluation path against the brute-force oracle,
//! and checks of the side identities.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bernoulli::{bernoulli_polynomial, zeta_neg_int, Convention, Rational};
use crate::error::{Error, Result};
use crate::hurwitz::{hurwitz_neg_exact, hurwitz_zeta_hermite, to_f64, HurwitzArgs};
use crate::powersum::{
    powersum_alternating, powersum_bernoulli_minus, powersum_bernoulli_plus, powersum_bruteforce,
    powersum_parity, powersum_polynomial, powersum_recursive, powersum_via_poly, PowerSumQuery,
};
use crate::quadrature::QuadratureConfig;

pub const REPORT_VERSION: u32 = 1;

/// Relative error allowed on the numeric Hermite path.
pub const NUMERIC_TOLERANCE: f64 = 1e-10;

/// `n` values at which the Hermite path is sampled.
pub const NUMERIC_N_SAMPLES: [u64; 6] = [0, 1, 2, 5, 10, 20];

/// Largest `p` at which the Hermite path is sampled.
pub const NUMERIC_P_MAX: u32 = 10;

pub const PATHS: [&str; 10] = [
    "bernoulli-",
    "bernoulli+",
    "alt",
    "parity-minus",
    "parity-plus",
    "poly",
    "recursive",
    "polynomial-eval",
    "continuation",
    "hermite",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mismatch {
    pub p: u32,
    pub n: u64,
    pub path: String,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub p_range: (u32, u32),
    pub n_range: (u64, u64),
    pub paths_compared: Vec<String>,
    pub mismatches: Vec<Mismatch>,
    pub numeric_max_rel_err: f64,
    pub numeric_tolerance: f64,
    pub all_passed: bool,
}

#[derive(Serialize, Deserialize)]
struct Ranges {
    p: (u32, u32),
    n: (u64, u64),
}

/// The versioned JSON document.
#[derive(Serialize, Deserialize)]
struct ReportDocument {
    report_version: u32,
    ranges: Ranges,
    paths: Vec<String>,
    mismatches: Vec<Mismatch>,
    max_rel_err: f64,
    tolerance: f64,
    passed: bool,
}

impl VerificationReport {
    pub fn to_json(&self) -> serde_json::Value {
        let doc = ReportDocument {
            report_version: REPORT_VERSION,
            ranges: Ranges {
                p: self.p_range,
                n: self.n_range,
            },
            paths: self.paths_compared.clone(),
            mismatches: self.mismatches.clone(),
            max_rel_err: self.numeric_max_rel_err,
            tolerance: self.numeric_tolerance,
            passed: self.all_passed,
        };
        serde_json::to_value(doc).expect("report serializes")
    }

    pub fn from_json(value: serde_json::Value) -> Result<Self> {
        let doc: ReportDocument = serde_json::from_value(value)
            .map_err(|e| Error::domain(format!("malformed report: {e}")))?;
        if doc.report_version != REPORT_VERSION {
            return Err(Error::domain(format!(
                "unsupported report version {}",
                doc.report_version
            )));
        }
        Ok(VerificationReport {
            p_range: doc.ranges.p,
            n_range: doc.ranges.n,
            paths_compared: doc.paths,
            mismatches: doc.mismatches,
            numeric_max_rel_err: doc.max_rel_err,
            numeric_tolerance: doc.tolerance,
            all_passed: doc.passed,
        })
    }
}

struct Row {
    mismatches: Vec<Mismatch>,
    max_rel_err: f64,
}

fn exact_row(p: u32, ns: RangeInclusive<u64>) -> Vec<Mismatch> {
    let poly = powersum_polynomial(p, Convention::Minus);
    let zeta = zeta_neg_int(p);
    let mut out = Vec::new();
    for n in ns {
        let q = PowerSumQuery::new(p, n);
        let oracle = powersum_bruteforce(q);
        let mut check = |path: &str, got: Result<BigInt>| {
            let got = match got {
                Ok(v) if v == oracle => return,
                Ok(v) => v.to_string(),
                Err(e) => e.to_string(),
            };
            out.push(Mismatch {
                p,
                n,
                path: path.to_string(),
                expected: oracle.to_string(),
                got,
            });
        };
        check("bernoulli-", powersum_bernoulli_minus(q));
        check("bernoulli+", powersum_bernoulli_plus(q));
        check("alt", powersum_alternating(q));
        if p >= 1 {
            check("parity-minus", powersum_parity(q, Convention::Minus));
            check("parity-plus", powersum_parity(q, Convention::Plus));
            check("poly", powersum_via_poly(q));
        }
        check("recursive", Ok(powersum_recursive(q)));
        let at = poly.eval(&Rational::from_integer(n.into()));
        check(
            "polynomial-eval",
            if at.is_integer() {
                Ok(at.to_integer())
            } else {
                Err(Error::NonIntegral {
                    path: "polynomial-eval",
                    p,
                    n,
                    value: at.to_string(),
                })
            },
        );
        let continued = &zeta - hurwitz_neg_exact(p, n);
        check(
            "continuation",
            if continued.is_integer() {
                Ok(continued.to_integer())
            } else {
                Err(Error::domain(format!("non-integral continuation {continued}")))
            },
        );
    }
    out
}

fn numeric_row(p: u32, n_max: u64, cfg: &QuadratureConfig) -> Row {
    let mut row = Row {
        mismatches: Vec::new(),
        max_rel_err: 0.0,
    };
    for n in NUMERIC_N_SAMPLES.into_iter().filter(|&n| n <= n_max) {
        let exact = hurwitz_neg_exact(p, n);
        let expected = to_f64(&exact);
        let args = HurwitzArgs::new(-(p as f64), n as f64 + 1.0).expect("valid arguments");
        match hurwitz_zeta_hermite(&args, cfg) {
            Ok(est) => {
                let err = (est.value - expected).abs() / expected.abs().max(1.0);
                row.max_rel_err = row.max_rel_err.max(err);
                if !(err < NUMERIC_TOLERANCE) {
                    row.mismatches.push(Mismatch {
                        p,
                        n,
                        path: "hermite".into(),
                        expected: exact.to_string(),
                        got: format!("{:e} (relative error {err:e})", est.value),
                    });
                }
            }
            Err(e) => {
                row.mismatches.push(Mismatch {
                    p,
                    n,
                    path: "hermite".into(),
                    expected: exact.to_string(),
                    got: e.to_string(),
                });
            }
        }
    }
    row
}

/// Runs every exact path against brute force on `0..=p_max` × `1..=n_max`, and
/// the Hermite quadrature on the subsampled grid `p <= 10`, `n` in
/// [`NUMERIC_N_SAMPLES`]. Rows are evaluated in parallel; the report is
/// sorted so it does not depend on scheduling.
pub fn cross_validate(p_max: u32, n_max: u64, cfg: &QuadratureConfig) -> Result<VerificationReport> {
    if n_max == 0 {
        return Err(Error::domain("n_max must be at least 1"));
    }
    cfg.validate()?;
    let rows: Vec<Row> = (0..=p_max)
        .into_par_iter()
        .map(|p| {
            let mut row = if p <= NUMERIC_P_MAX {
                numeric_row(p, n_max, cfg)
            } else {
                Row {
                    mismatches: Vec::new(),
                    max_rel_err: 0.0,
                }
            };
            row.mismatches.extend(exact_row(p, 1..=n_max));
            row
        })
        .collect();

    let mut mismatches: Vec<Mismatch> = Vec::new();
    let mut max_rel_err = 0.0f64;
    for row in rows {
        mismatches.extend(row.mismatches);
        max_rel_err = max_rel_err.max(row.max_rel_err);
    }
    mismatches.sort_by(|a, b| (a.p, a.n, &a.path).cmp(&(b.p, b.n, &b.path)));

    let all_passed = mismatches.is_empty() && max_rel_err < NUMERIC_TOLERANCE;
    Ok(VerificationReport {
        p_range: (0, p_max),
        n_range: (1, n_max),
        paths_compared: PATHS.iter().map(|s| s.to_string()).collect(),
        mismatches,
        numeric_max_rel_err: max_rel_err,
        numeric_tolerance: NUMERIC_TOLERANCE,
        all_passed,
    })
}

/// `|t e^{xt}/(e^t - 1) - Σ_{k=0}^{terms} B_k(x) t^k / k!|`.
///
/// At `t = 0` both sides equal 1 and the residual is zero.
pub fn generating_function_check(x: f64, t: f64, terms: u32) -> Result<f64> {
    if terms == 0 {
        return Err(Error::domain("terms must be at least 1"));
    }
    if !x.is_finite() || !t.is_finite() {
        return Err(Error::domain("x and t must be finite"));
    }
    if t.abs() >= 2.0 * std::f64::consts::PI {
        return Err(Error::domain(format!(
            "|t| = {} is outside the radius of convergence 2π",
            t.abs()
        )));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    let lhs = t * (x * t).exp() / t.exp_m1();
    let xq = Rational::from_float(x).ok_or_else(|| Error::domain("x is not representable"))?;
    let mut series = 0.0;
    let mut scale = 1.0;
    for k in 0..=terms {
        if k > 0 {
            scale *= t / k as f64;
        }
        series += to_f64(&bernoulli_polynomial(k as usize, &xq, Convention::Minus)) * scale;
    }
    Ok((lhs - series).abs())
}

/// Whether the degree-`p+1` coefficient of `S_p(n)` is exactly `1/(p+1)`.
pub fn leading_coefficient_check(p: u32) -> bool {
    let poly = powersum_polynomial(p, Convention::Minus);
    poly.coefficients.get(p as usize + 1)
        == Some(&Rational::new(1.into(), BigInt::from(p + 1)))
}

/// Whether the parity form gives the same value under both conventions for
/// every `1 <= n <= n_max`.
pub fn convention_invariance_check(p: u32, n_max: u64) -> bool {
    p >= 1
        && (1..=n_max).all(|n| {
            let q = PowerSumQuery::new(p, n);
            matches!(
                (powersum_parity(q, Convention::Minus), powersum_parity(q, Convention::Plus)),
                (Ok(a), Ok(b)) if a == b
            )
        })
}
