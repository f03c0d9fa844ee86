//! The Hurwitz zeta function through its Hermite integral, and the auxiliary
//! integral `f(p, n)` that turns `ζ(-p, n + 1)` into a finite Bernoulli sum.
//!
//! The Hermite representation, valid for every real `s != 1` and `z > 0`:
//!
//! ```text
//! ζ(s, z) = z^{-s}/2 + z^{1-s}/(s-1)
//!         + 2 ∫_0^∞ sin(s·atan(x/z)) / ((x² + z²)^{s/2} (e^{2πx} - 1)) dx
//! ```
//!
//! At `s = -p` the integral is `-f(p, n)` with `z = n + 1`, and `f` reduces to
//! a π-free rational ([`f_parity_exact`]). That gives [`hurwitz_neg_exact`],
//! and `S_p(n) = ζ(-p) - ζ(-p, n + 1)`.

use std::f64::consts::{E, PI};

use num_bigint::BigInt;
use num_traits::{Pow, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::bernoulli::{bernoulli_number, zeta_even_exact, Convention, Rational};
use crate::error::{Error, Result};
use crate::quadrature::{integrate, Estimate, QuadratureConfig};

const TWO_PI: f64 = 2.0 * PI;

/// Real arguments of `ζ(s, z)`: `s != 1`, `z > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HurwitzArgs {
    s: f64,
    z: f64,
}

impl HurwitzArgs {
    pub fn new(s: f64, z: f64) -> Result<Self> {
        if !s.is_finite() || !z.is_finite() {
            return Err(Error::domain("s and z must be finite"));
        }
        if s == 1.0 {
            return Err(Error::domain("ζ(s, z) has a pole at s = 1"));
        }
        if z <= 0.0 {
            return Err(Error::domain(format!("z must be positive, got {z}")));
        }
        Ok(HurwitzArgs { s, z })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn z(&self) -> f64 {
        self.z
    }
}

/// `ln(e^y - 1)` for `y > 0`, without overflow at large `y`.
fn ln_expm1(y: f64) -> f64 {
    if y > 1.0 {
        y + (-(-y).exp()).ln_1p()
    } else {
        y.exp_m1().ln()
    }
}

/// Integrand of the Hermite representation. The removable singularity at
/// `x = 0` is replaced by its limit `s / (2π z^{s+1})`.
pub fn hermite_integrand(a: &HurwitzArgs, x: f64) -> f64 {
    let (s, z) = (a.s, a.z);
    if x == 0.0 {
        return s / (TWO_PI * z.powf(s + 1.0));
    }
    let numer = (s * (x / z).atan()).sin();
    if numer == 0.0 {
        return 0.0;
    }
    numer * (-0.5 * s * (x * x + z * z).ln() - ln_expm1(TWO_PI * x)).exp()
}

/// Upper limit beyond which the integrand is below `abs_tol`.
fn truncation_point(s: f64, z: f64, cfg: &QuadratureConfig) -> f64 {
    let log_tol = (1.0 / cfg.abs_tol).ln();
    let decay = (log_tol + (s.abs() + 1.0) * (log_tol + z + E).ln()) / TWO_PI;
    cfg.truncation_guard * z.max(decay)
}

/// `ζ(s, z)` by adaptive quadrature of the Hermite integral. The returned
/// error estimate covers the quadrature only; truncation is below `abs_tol`.
pub fn hurwitz_zeta_hermite(a: &HurwitzArgs, cfg: &QuadratureConfig) -> Result<Estimate> {
    cfg.validate()?;
    let (s, z) = (a.s, a.z);
    let upper = truncation_point(s, z, cfg);
    let integral = if s == 0.0 {
        Estimate {
            value: 0.0,
            abs_error: 0.0,
        }
    } else {
        integrate(|x| hermite_integrand(a, x), 0.0, upper, cfg)?
    };
    let closed = 0.5 * z.powf(-s) + z.powf(1.0 - s) / (s - 1.0);
    Ok(Estimate {
        value: closed + 2.0 * integral.value,
        abs_error: 2.0 * integral.abs_error,
    })
}

/// `f(p, n) = ∫_0^∞ sin(p·atan(x/(n+1))) (x² + (n+1)²)^{p/2} / (e^{2πx} - 1) dx`
/// by quadrature. The power is taken in log space.
pub fn f_numeric(p: u32, n: u64, cfg: &QuadratureConfig) -> Result<Estimate> {
    cfg.validate()?;
    if p == 0 {
        return Ok(Estimate {
            value: 0.0,
            abs_error: 0.0,
        });
    }
    let pf = p as f64;
    let z = n as f64 + 1.0;
    let integrand = |x: f64| {
        if x == 0.0 {
            return pf * z.powf(pf - 1.0) / TWO_PI;
        }
        let numer = (pf * (x / z).atan()).sin();
        numer * (0.5 * pf * (x * x + z * z).ln() - ln_expm1(TWO_PI * x)).exp()
    };
    integrate(integrand, 0.0, truncation_point(-pf, z, cfg), cfg)
}

/// `sin(π k / 2)` for integer `k`, from the exact period-4 table.
fn sin_half_pi(k: u32) -> i32 {
    match k % 4 {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

/// `ζ(k)` for an integer `k >= 2`: exact-in-π for even `k`, series otherwise.
fn zeta_positive_int(k: u32) -> f64 {
    if k % 2 == 0 {
        zeta_even_exact(k).map(|z| z.to_f64()).unwrap_or(f64::NAN)
    } else {
        riemann_zeta_series(k as f64, 1e-16).unwrap_or(f64::NAN)
    }
}

/// The terms `m = 0..p` of the closed form for `f(p, n)`:
/// `p! (n+1)^m / (m! (2π)^{p-m+1}) · sin(π(p-m)/2) · ζ(p-m+1)`.
/// The `m = p` term vanishes and is omitted. Terms whose sine factor is zero
/// are exactly `0.0` and never touch ζ.
pub fn f_closed_terms(p: u32, n: u64) -> Vec<f64> {
    let z = n as f64 + 1.0;
    (0..p)
        .map(|m| {
            let k = p - m;
            let sign = sin_half_pi(k);
            if sign == 0 {
                return 0.0;
            }
            let falling: f64 = (m + 1..=p).map(f64::from).product();
            let scale = falling * z.powi(m as i32) / TWO_PI.powi(k as i32 + 1);
            sign as f64 * scale * zeta_positive_int(k + 1)
        })
        .collect()
}

/// Closed-form `f(p, n)` as a floating sum over zeta values.
pub fn f_closed(p: u32, n: u64) -> f64 {
    f_closed_terms(p, n).iter().sum()
}

/// Exact `f(p, n)` for `p >= 1`, from the even/odd reductions where all π
/// factors cancel:
///
/// ```text
/// f(2ρ-1, n) = ((2ρ-1)!/2) Σ_{m<ρ} (n+1)^{2m}   B_{2ρ-2m} / ((2m)!   (2ρ-2m)!)
/// f(2ρ,   n) = ((2ρ)!/2)   Σ_{m<ρ} (n+1)^{2m+1} B_{2ρ-2m} / ((2m+1)! (2ρ-2m)!)
/// ```
pub fn f_parity_exact(p: u32, n: u64) -> Result<Rational> {
    if p == 0 {
        return Err(Error::domain("the parity reduction of f needs p >= 1"));
    }
    let z = BigInt::from(n) + 1u32;
    let rho = (p as usize + 1) / 2;
    let odd = p % 2 == 1;
    let two_rho = 2 * rho;
    let factorials: Vec<BigInt> = std::iter::once(BigInt::from(1u32))
        .chain((1..=two_rho as u64).scan(BigInt::from(1u32), |acc, i| {
            *acc *= i;
            Some(acc.clone())
        }))
        .collect();

    let sum: Rational = (0..rho)
        .map(|m| {
            let power = if odd { 2 * m } else { 2 * m + 1 };
            let b = bernoulli_number(two_rho - 2 * m, Convention::Minus);
            let denom = &factorials[power] * &factorials[two_rho - 2 * m];
            b * Rational::new(z.clone().pow(power as u32), denom)
        })
        .sum();
    Ok(sum * Rational::new(factorials[p as usize].clone(), 2.into()))
}

/// Exact `ζ(-p, n + 1) = (n+1)^p/2 - (n+1)^{p+1}/(p+1) - 2 f(p, n)`.
pub fn hurwitz_neg_exact(p: u32, n: u64) -> Rational {
    let z = BigInt::from(n) + 1u32;
    let mut value = Rational::new(z.clone().pow(p), 2.into())
        - Rational::new(z.pow(p + 1), BigInt::from(p + 1));
    if p > 0 {
        let f = f_parity_exact(p, n).expect("p >= 1");
        value -= f * Rational::from_integer(2.into());
    }
    value
}

/// `ζ(s) = Σ k^{-s}` for real `s > 1`: the partial sum to `N - 1`, the
/// integral tail `N^{1-s}/(s-1)`, and Euler–Maclaurin corrections until the
/// next correction falls below `tol`.
pub fn riemann_zeta_series(s: f64, tol: f64) -> Result<f64> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(Error::domain(format!("the zeta series needs s > 1, got {s}")));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("tolerance must be positive"));
    }
    let mut cutoff = 10u64;
    loop {
        if let Some(v) = euler_maclaurin(s, cutoff, tol) {
            return Ok(v);
        }
        cutoff *= 2;
        if cutoff > 1 << 20 {
            return Err(Error::Convergence {
                achieved: f64::NAN,
                target: tol,
            });
        }
    }
}

fn euler_maclaurin(s: f64, cutoff: u64, tol: f64) -> Option<f64> {
    let big_n = cutoff as f64;
    // Smallest terms first.
    let partial: f64 = (1..cutoff).rev().map(|k| (k as f64).powf(-s)).sum();
    let mut tail = big_n.powf(1.0 - s) / (s - 1.0) + 0.5 * big_n.powf(-s);
    let mut rising = s;
    let mut factorial = 2.0;
    let mut previous = f64::INFINITY;
    for j in 1..=40u32 {
        let b = bernoulli_number(2 * j as usize, Convention::Minus)
            .to_f64()
            .unwrap_or(f64::NAN);
        let term = b / factorial * rising * big_n.powf(-s - 2.0 * j as f64 + 1.0);
        if term.abs() > previous {
            return None;
        }
        tail += term;
        if term.abs() < tol * 0.1 {
            return Some(partial + tail);
        }
        previous = term.abs();
        let (a, c) = (2.0 * j as f64 + 1.0, 2.0 * j as f64 + 2.0);
        rising *= (s + a - 2.0) * (s + a - 1.0);
        factorial *= a * c;
    }
    None
}

/// Rational value as `f64`; `NaN` if the conversion fails.
pub(crate) fn to_f64(r: &Rational) -> f64 {
    if r.is_zero() {
        0.0
    } else {
        r.to_f64().unwrap_or(f64::NAN)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bernoulli::binomial;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    /// `f(p, n) = Im ∫ (n + 1 + ix)^p / (e^{2πx} - 1) dx`, expanded binomially:
    /// only odd powers `x^j` survive, and `∫ x^j/(e^{2πx}-1) = |B_{j+1}| / (2(j+1))`.
    fn f_binomial_oracle(p: u32, n: u64) -> Rational {
        let z = BigInt::from(n) + 1u32;
        let mut acc = Rational::zero();
        for j in (1..=p).step_by(2) {
            let moment = {
                let b = bernoulli_number(j as usize + 1, Convention::Minus);
                let b = if b < Rational::zero() { -b } else { b };
                b / Rational::from_integer(BigInt::from(2 * (j + 1)))
            };
            let im_sign = if (j / 2) % 2 == 0 { 1 } else { -1 };
            let c = binomial(p as u64, j as u64) * z.clone().pow(p - j) * im_sign;
            acc += Rational::from_integer(c) * moment;
        }
        acc
    }

    #[test]
    fn integrand_values() {
        let a = HurwitzArgs::new(2.0, 1.0).unwrap();
        assert!((hermite_integrand(&a, 0.0) - 1.0 / PI).abs() < 1e-15);
        // Continuity of the limit at the origin.
        assert!(rel(hermite_integrand(&a, 1e-7), 1.0 / PI) < 1e-6);
        let zero_s = HurwitzArgs::new(0.0, 1.0).unwrap();
        assert_eq!(hermite_integrand(&zero_s, 1.0), 0.0);
    }

    #[test]
    fn integrand_decays() {
        let a = HurwitzArgs::new(-6.0, 3.0).unwrap();
        for x in [10.0, 20.0, 40.0, 120.0, 500.0] {
            let v = hermite_integrand(&a, x).abs();
            assert!(v.is_finite());
            if v > 0.0 {
                let log_bound = 10f64.ln() - TWO_PI * x + 3.0 * (x * x + 9.0).ln();
                assert!(v.ln() <= log_bound, "x = {x}: {v}");
            }
        }
    }

    #[test]
    fn args_validation() {
        assert!(HurwitzArgs::new(1.0, 2.0).is_err());
        assert!(HurwitzArgs::new(2.0, 0.0).is_err());
        assert!(HurwitzArgs::new(2.0, -1.0).is_err());
        assert!(HurwitzArgs::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn hermite_examples() {
        let cfg = QuadratureConfig::default();
        let eval = |s, z| hurwitz_zeta_hermite(&HurwitzArgs::new(s, z).unwrap(), &cfg).unwrap();
        assert_eq!(eval(0.0, 2.0).value, -1.5);
        assert!(rel(eval(2.0, 1.0).value, PI * PI / 6.0) < 1e-12);
        assert!(rel(eval(-3.0, 1.0).value, 1.0 / 120.0) < 1e-11);
        // ζ(1/2) = -1.4603545088095868...
        assert!(rel(eval(0.5, 1.0).value, -1.460_354_508_809_586_8) < 1e-11);
        // ζ(2, 1/2) = 3 ζ(2)
        assert!(rel(eval(2.0, 0.5).value, PI * PI / 2.0) < 1e-11);
    }

    #[test]
    fn hermite_tiny_refinement_budget_fails() {
        let cfg = QuadratureConfig {
            max_refinements: 1,
            rel_tol: 1e-15,
            abs_tol: 1e-300,
            ..QuadratureConfig::default()
        };
        let a = HurwitzArgs::new(-10.0, 21.0).unwrap();
        assert!(matches!(
            hurwitz_zeta_hermite(&a, &cfg),
            Err(Error::Convergence { .. })
        ));
    }

    #[test]
    fn f_examples() {
        let cfg = QuadratureConfig::default();
        assert_eq!(f_numeric(0, 5, &cfg).unwrap().value, 0.0);
        assert!(rel(f_numeric(1, 3, &cfg).unwrap().value, 1.0 / 24.0) < 1e-12);
        assert!(rel(f_numeric(2, 3, &cfg).unwrap().value, 1.0 / 3.0) < 1e-12);

        assert_eq!(f_closed(0, 9), 0.0);
        assert!(rel(f_closed(1, 7), 1.0 / 24.0) < 1e-14);
        assert!(rel(f_closed(3, 1), f_numeric(3, 1, &cfg).unwrap().value) < 1e-10);
        // Oracle value from independent high-precision quadrature: 0.495833333333333
        assert!(rel(f_closed(3, 1), 0.495_833_333_333_333_3) < 1e-13);
    }

    #[test]
    fn f_parity_values() {
        assert_eq!(f_parity_exact(1, 100).unwrap(), r(1, 24));
        assert_eq!(f_parity_exact(2, 3).unwrap(), r(1, 3));
        assert_eq!(f_parity_exact(3, 0).unwrap(), r(29, 240));
        assert!(f_parity_exact(0, 4).is_err());
        for n in 0..30 {
            assert_eq!(f_parity_exact(1, n).unwrap(), r(1, 24));
            assert_eq!(f_parity_exact(2, n).unwrap(), r(n as i64 + 1, 12));
        }
    }

    #[test]
    fn f_parity_matches_binomial_expansion() {
        for p in 1..=16 {
            for n in 0..=12 {
                assert_eq!(f_parity_exact(p, n).unwrap(), f_binomial_oracle(p, n), "p={p} n={n}");
            }
        }
    }

    #[test]
    fn f_closed_even_offsets_vanish() {
        for p in 1..=12 {
            for (m, t) in f_closed_terms(p, 4).iter().enumerate() {
                if (p - m as u32) % 2 == 0 {
                    assert_eq!(*t, 0.0, "p={p} m={m}");
                } else {
                    assert!(*t != 0.0);
                }
            }
        }
    }

    #[test]
    fn hurwitz_neg_values() {
        assert_eq!(hurwitz_neg_exact(0, 1), r(-3, 2));
        assert_eq!(hurwitz_neg_exact(2, 2), r(-5, 1));
        assert_eq!(hurwitz_neg_exact(1, 0), r(-1, 12));
    }

    #[test]
    fn zeta_series_values() {
        assert!((riemann_zeta_series(2.0, 1e-12).unwrap() - 1.644_934_066_848).abs() < 1e-12);
        assert!((riemann_zeta_series(4.0, 1e-12).unwrap() - 1.082_323_233_711).abs() < 1e-12);
        assert!((riemann_zeta_series(3.0, 1e-12).unwrap() - 1.202_056_903_160).abs() < 1e-12);
        // ζ(1.5) = 2.612375348685488...
        assert!((riemann_zeta_series(1.5, 1e-12).unwrap() - 2.612_375_348_685_488).abs() < 1e-12);
        assert!(riemann_zeta_series(60.0, 1e-15).unwrap() - 1.0 < 1e-17);
        assert!(riemann_zeta_series(1.0, 1e-12).is_err());
        assert!(riemann_zeta_series(0.5, 1e-12).is_err());
    }

    #[test]
    fn zeta_even_matches_series() {
        for k in 1..=6 {
            let exact = zeta_even_exact(2 * k).unwrap().to_f64();
            let series = riemann_zeta_series(2.0 * k as f64, 1e-15).unwrap();
            assert!(rel(exact, series) < 1e-12, "k = {k}");
        }
    }
}
