//! Bernoulli numbers, Bernoulli polynomials, and the zeta values they pin down.

use std::fmt;
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact signed rational, always stored in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Which value `B_1` takes. Every other index is unaffected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `B_1 = -1/2`, the generating function `t / (e^t - 1)`.
    #[default]
    Minus,
    /// `B_1 = +1/2`, the generating function `t e^t / (e^t - 1)`.
    Plus,
}

impl Convention {
    pub const ALL: [Convention; 2] = [Convention::Minus, Convention::Plus];

    pub fn as_str(self) -> &'static str {
        match self {
            Convention::Minus => "minus",
            Convention::Plus => "plus",
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "minus" | "-" => Ok(Convention::Minus),
            "plus" | "+" => Ok(Convention::Plus),
            other => Err(Error::domain(format!("unknown convention '{other}'"))),
        }
    }
}

/// Memoized table `B_0..=B_max` under the minus convention.
///
/// Readers share the table; an extension holds the write lock for its whole
/// duration, so a partially extended table is never visible.
#[derive(Debug)]
pub struct BernoulliCache {
    values: RwLock<Vec<Rational>>,
}

impl Default for BernoulliCache {
    fn default() -> Self {
        Self::new()
    }
}

impl BernoulliCache {
    pub fn new() -> Self {
        BernoulliCache {
            values: RwLock::new(vec![Rational::one()]),
        }
    }

    /// Process-wide cache used by the free functions in this crate.
    pub fn global() -> &'static BernoulliCache {
        static CACHE: OnceLock<BernoulliCache> = OnceLock::new();
        CACHE.get_or_init(BernoulliCache::new)
    }

    /// Largest index currently stored.
    pub fn max_index(&self) -> usize {
        self.values.read().expect("bernoulli cache poisoned").len() - 1
    }

    pub fn get(&self, k: usize, conv: Convention) -> Rational {
        if k == 1 && conv == Convention::Plus {
            return Rational::new(1.into(), 2.into());
        }
        {
            let values = self.values.read().expect("bernoulli cache poisoned");
            if let Some(b) = values.get(k) {
                return b.clone();
            }
        }
        self.extend_to(k);
        self.values.read().expect("bernoulli cache poisoned")[k].clone()
    }

    /// Returns `B_0..=B_k` under `conv`.
    pub fn table(&self, k: usize, conv: Convention) -> Vec<Rational> {
        self.extend_to(k);
        let values = self.values.read().expect("bernoulli cache poisoned");
        let mut out = values[..=k].to_vec();
        if conv == Convention::Plus && k >= 1 {
            out[1] = -out[1].clone();
        }
        out
    }

    fn extend_to(&self, k: usize) {
        let mut values = self.values.write().expect("bernoulli cache poisoned");
        // B_m = -1/(m+1) * sum_{j<m} C(m+1, j) B_j
        for m in values.len()..=k {
            if m > 1 && m % 2 == 1 {
                values.push(Rational::zero());
                continue;
            }
            let row = binomial_row(m as u64 + 1);
            let acc = values
                .iter()
                .enumerate()
                .filter(|(_, b)| !b.is_zero())
                .fold(Rational::zero(), |acc, (j, b)| {
                    acc + b * Rational::from_integer(row[j].clone())
                });
            values.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
        }
    }
}

/// `B_k` under the given convention.
pub fn bernoulli_number(k: usize, conv: Convention) -> Rational {
    BernoulliCache::global().get(k, conv)
}

/// `B_m(x) = sum_{k=0}^{m} C(m, k) B_k x^{m-k}`.
pub fn bernoulli_polynomial(m: usize, x: &Rational, conv: Convention) -> Rational {
    let b = BernoulliCache::global().table(m, conv);
    let row = binomial_row(m as u64);
    // Horner in x over coefficients C(m, k) B_k, highest power (k = 0) first.
    b.iter()
        .zip(row.iter())
        .fold(Rational::zero(), |acc, (bk, c)| {
            acc * x + bk * Rational::from_integer(c.clone())
        })
}

/// `C(n, k)` by the multiplicative formula, exact in big integers.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// The full row `C(n, 0..=n)`.
pub fn binomial_row(n: u64) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for k in 0..n {
        c = c * (n - k) / (k + 1);
        row.push(c.clone());
    }
    row
}

/// `ζ(-p)`: `-1/2` at `p = 0`, otherwise `-B_{p+1} / (p+1)`.
pub fn zeta_neg_int(p: u32) -> Rational {
    if p == 0 {
        return Rational::new((-1).into(), 2.into());
    }
    let b = bernoulli_number(p as usize + 1, Convention::Minus);
    -b / Rational::from_integer(BigInt::from(p + 1))
}

/// `coefficient * π^pi_exponent`, kept symbolic in π.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiPower {
    pub coefficient: Rational,
    pub pi_exponent: u32,
}

impl PiPower {
    pub fn to_f64(&self) -> f64 {
        self.coefficient.to_f64().unwrap_or(f64::NAN)
            * std::f64::consts::PI.powi(self.pi_exponent as i32)
    }

    /// The rational value when no π factor is present.
    pub fn as_rational(&self) -> Option<&Rational> {
        (self.pi_exponent == 0).then_some(&self.coefficient)
    }
}

impl fmt::Display for PiPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pi_exponent {
            0 => write!(f, "{}", self.coefficient),
            e if self.coefficient.is_one() => write!(f, "pi^{e}"),
            e => write!(f, "({})*pi^{e}", self.coefficient),
        }
    }
}

/// Euler's evaluation `ζ(2k) = (-1)^{k+1} (2π)^{2k} B_{2k} / (2 (2k)!)`.
pub fn zeta_even_exact(two_rho: u32) -> Result<PiPower> {
    if two_rho == 0 || two_rho % 2 != 0 {
        return Err(Error::domain(format!(
            "exact zeta needs a positive even argument, got {two_rho}"
        )));
    }
    let b = bernoulli_number(two_rho as usize, Convention::Minus);
    let factorial: BigInt = (1..=two_rho as u64).map(BigInt::from).product();
    let two_pow = BigInt::one() << two_rho as usize;
    let mut coefficient = b * Rational::new(two_pow, factorial * 2);
    if (two_rho / 2) % 2 == 0 {
        coefficient = -coefficient;
    }
    debug_assert!(coefficient.is_positive());
    Ok(PiPower {
        coefficient,
        pi_exponent: two_rho,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    /// Akiyama–Tanigawa: an independent route that yields the plus convention.
    fn akiyama_tanigawa(n: usize) -> Vec<Rational> {
        let mut a = vec![Rational::zero(); n + 1];
        let mut out = Vec::with_capacity(n + 1);
        for m in 0..=n {
            a[m] = q(1, m as i64 + 1);
            for j in (1..=m).rev() {
                a[j - 1] = Rational::from_integer(j.into()) * (&a[j - 1] - &a[j]);
            }
            out.push(a[0].clone());
        }
        out
    }

    #[test]
    fn small_values() {
        assert_eq!(bernoulli_number(0, Convention::Minus), q(1, 1));
        assert_eq!(bernoulli_number(1, Convention::Minus), q(-1, 2));
        assert_eq!(bernoulli_number(1, Convention::Plus), q(1, 2));
        assert_eq!(bernoulli_number(2, Convention::Minus), q(1, 6));
        assert_eq!(bernoulli_number(4, Convention::Minus), q(-1, 30));
        assert_eq!(bernoulli_number(12, Convention::Minus), q(-691, 2730));
    }

    #[test]
    fn matches_akiyama_tanigawa() {
        let at = akiyama_tanigawa(60);
        for (k, b) in at.iter().enumerate() {
            assert_eq!(&bernoulli_number(k, Convention::Plus), b, "k = {k}");
        }
    }

    #[test]
    fn odd_indices_vanish() {
        for k in 1..=40 {
            for conv in Convention::ALL {
                assert!(bernoulli_number(2 * k + 1, conv).is_zero());
            }
        }
    }

    #[test]
    fn conventions_differ_by_sign_of_odd_terms() {
        for k in 0..=30 {
            let sign = if k % 2 == 0 { q(1, 1) } else { q(-1, 1) };
            assert_eq!(
                bernoulli_number(k, Convention::Plus),
                sign * bernoulli_number(k, Convention::Minus)
            );
        }
    }

    #[test]
    fn plus_normalization() {
        for p in 0..=20u64 {
            let row = binomial_row(p + 1);
            let sum: Rational = (0..=p as usize)
                .map(|k| {
                    Rational::from_integer(row[k].clone()) * bernoulli_number(k, Convention::Plus)
                })
                .sum();
            assert_eq!(sum / Rational::from_integer((p + 1).into()), q(1, 1));
        }
    }

    #[test]
    fn polynomial_values() {
        assert_eq!(bernoulli_polynomial(0, &q(7, 3), Convention::Minus), q(1, 1));
        assert_eq!(bernoulli_polynomial(1, &q(1, 1), Convention::Minus), q(1, 2));
        assert_eq!(bernoulli_polynomial(2, &q(1, 2), Convention::Minus), q(-1, 12));
        // B_3(x) = x^3 - 3x^2/2 + x/2
        assert_eq!(bernoulli_polynomial(3, &q(3, 1), Convention::Minus), q(15, 1));
    }

    #[test]
    fn polynomial_endpoints() {
        for m in 0..=25 {
            let zero = bernoulli_polynomial(m, &Rational::zero(), Convention::Minus);
            assert_eq!(zero, bernoulli_number(m, Convention::Minus));
            if m != 1 {
                let one = bernoulli_polynomial(m, &Rational::one(), Convention::Minus);
                assert_eq!(one, bernoulli_number(m, Convention::Minus), "m = {m}");
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(11, 0), 1.into());
        assert_eq!(binomial(11, 3), 165.into());
        assert_eq!(binomial(3, 5), 0.into());
        let row = binomial_row(30);
        for k in 0..=30 {
            assert_eq!(row[k], binomial(30, k as u64));
        }
    }

    #[test]
    fn zeta_at_negative_integers() {
        assert_eq!(zeta_neg_int(0), q(-1, 2));
        assert_eq!(zeta_neg_int(1), q(-1, 12));
        assert_eq!(zeta_neg_int(2), q(0, 1));
        assert_eq!(zeta_neg_int(3), q(1, 120));
    }

    #[test]
    fn zeta_even_values() {
        assert_eq!(zeta_even_exact(2).unwrap().coefficient, q(1, 6));
        assert_eq!(zeta_even_exact(4).unwrap().coefficient, q(1, 90));
        assert_eq!(zeta_even_exact(6).unwrap().coefficient, q(1, 945));
        assert_eq!(zeta_even_exact(6).unwrap().pi_exponent, 6);
        assert!(zeta_even_exact(0).is_err());
        assert!(zeta_even_exact(3).is_err());
        assert_eq!(zeta_even_exact(2).unwrap().to_string(), "(1/6)*pi^2");
    }

    #[test]
    fn independent_caches_agree() {
        let cache = BernoulliCache::new();
        assert_eq!(cache.max_index(), 0);
        assert_eq!(cache.get(20, Convention::Minus), bernoulli_number(20, Convention::Minus));
        assert_eq!(cache.max_index(), 20);
    }

    #[test]
    fn concurrent_reads_during_extension() {
        let cache = BernoulliCache::new();
        std::thread::scope(|s| {
            for t in 0..8 {
                let cache = &cache;
                s.spawn(move || {
                    for k in (0..=80).rev().skip(t) {
                        assert_eq!(
                            cache.get(k, Convention::Minus),
                            bernoulli_number(k, Convention::Minus)
                        );
                    }
                });
            }
        });
    }
}
