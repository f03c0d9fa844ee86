//! Exact evaluation of `S_p(n) = 1^p + ... + n^p` through each closed form.
//!
//! Every path accumulates in [`Rational`] and checks integrality of the final
//! value instead of assuming it. `n = 0` is the empty sum on every path.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::bernoulli::{binomial_row, bernoulli_polynomial, BernoulliCache, Convention, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PowerSumQuery {
    pub p: u32,
    pub n: u64,
}

impl PowerSumQuery {
    pub fn new(p: u32, n: u64) -> Self {
        PowerSumQuery { p, n }
    }
}

/// Coefficients of `S_p(n)` as a polynomial in `n`, index `d` holding the
/// coefficient of `n^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumPolynomial {
    pub coefficients: Vec<Rational>,
}

impl SumPolynomial {
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn eval(&self, n: &Rational) -> Rational {
        self.coefficients
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * n + c)
    }
}

impl fmt::Display for SumPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coefficients.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Named evaluation routes, as exposed on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    BernoulliMinus,
    BernoulliPlus,
    Alternating,
    Parity,
    Poly,
    Recursive,
    Brute,
}

impl Method {
    pub const ALL: [Method; 7] = [
        Method::BernoulliMinus,
        Method::BernoulliPlus,
        Method::Alternating,
        Method::Parity,
        Method::Poly,
        Method::Recursive,
        Method::Brute,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::BernoulliMinus => "bernoulli-",
            Method::BernoulliPlus => "bernoulli+",
            Method::Alternating => "alt",
            Method::Parity => "parity",
            Method::Poly => "poly",
            Method::Recursive => "recursive",
            Method::Brute => "brute",
        }
    }

    /// Evaluates `S_p(n)` along this route. The parity and Bernoulli-polynomial
    /// forms are stated for `p >= 1`; at `p = 0` they fall back to `S_0(n) = n`.
    pub fn evaluate(self, q: PowerSumQuery, conv: Convention) -> Result<BigInt> {
        match self {
            Method::BernoulliMinus => powersum_bernoulli_minus(q),
            Method::BernoulliPlus => powersum_bernoulli_plus(q),
            Method::Alternating => powersum_alternating(q),
            Method::Parity if q.p == 0 => Ok(BigInt::from(q.n)),
            Method::Parity => powersum_parity(q, conv),
            Method::Poly if q.p == 0 => Ok(BigInt::from(q.n)),
            Method::Poly => powersum_via_poly(q),
            Method::Recursive => Ok(powersum_recursive(q)),
            Method::Brute => Ok(powersum_bruteforce(q)),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::domain(format!("unknown method '{s}'")))
    }
}

fn int(v: impl Into<BigInt>) -> Rational {
    Rational::from_integer(v.into())
}

fn into_integer(value: Rational, path: &'static str, q: PowerSumQuery) -> Result<BigInt> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(Error::NonIntegral {
            path,
            p: q.p,
            n: q.n,
            value: value.to_string(),
        })
    }
}

/// Direct summation. The oracle every other path is checked against.
pub fn powersum_bruteforce(q: PowerSumQuery) -> BigInt {
    (1..=q.n).map(|k| BigInt::from(k).pow(q.p)).sum()
}

/// `sum_{k=0}^{p} C(p+1, k) n^{p-k+1} B_k` with the given per-term sign rule.
fn bernoulli_sum(q: PowerSumQuery, b: &[Rational], alternate: bool) -> Rational {
    let p = q.p as usize;
    let row = binomial_row(q.p as u64 + 1);
    let n = BigInt::from(q.n);
    // Horner over powers of n: terms k = 0..=p carry n^{p+1-k}.
    let mut acc = Rational::zero();
    for k in 0..=p {
        let mut term = &b[k] * int(row[k].clone());
        if alternate && k % 2 == 1 {
            term = -term;
        }
        acc = (acc + term) * int(n.clone());
    }
    acc
}

/// `(1/(p+1)) sum_{k=0}^{p} C(p+1,k) n^{p-k+1} B_k + n^p` with `B_1 = -1/2`.
pub fn powersum_bernoulli_minus(q: PowerSumQuery) -> Result<BigInt> {
    if q.p == 0 {
        return Ok(BigInt::from(q.n));
    }
    let b = BernoulliCache::global().table(q.p as usize, Convention::Minus);
    let value = bernoulli_sum(q, &b, false) / int(q.p + 1) + int(BigInt::from(q.n).pow(q.p));
    into_integer(value, "bernoulli-", q)
}

/// Bernoulli's original `(1/(p+1)) sum_{k=0}^{p} C(p+1,k) B_k n^{p-k+1}` with `B_1 = +1/2`.
pub fn powersum_bernoulli_plus(q: PowerSumQuery) -> Result<BigInt> {
    let b = BernoulliCache::global().table(q.p as usize, Convention::Plus);
    let value = bernoulli_sum(q, &b, false) / int(q.p + 1);
    into_integer(value, "bernoulli+", q)
}

/// `(1/(p+1)) sum_{k=0}^{p} (-1)^k C(p+1,k) n^{p-k+1} B_k` with `B_1 = -1/2`.
pub fn powersum_alternating(q: PowerSumQuery) -> Result<BigInt> {
    let b = BernoulliCache::global().table(q.p as usize, Convention::Minus);
    let value = bernoulli_sum(q, &b, true) / int(q.p + 1);
    into_integer(value, "alt", q)
}

/// The parity split in powers of `n + 1`. Only even-index Bernoulli numbers
/// (and `B_0`) appear, so the result cannot depend on `conv`.
pub fn powersum_parity(q: PowerSumQuery, conv: Convention) -> Result<BigInt> {
    if q.p == 0 {
        return Err(Error::domain("the parity form needs p >= 1"));
    }
    let p = q.p as usize;
    let b = BernoulliCache::global().table(p, conv);
    let row = binomial_row(q.p as u64 + 1);
    let m = BigInt::from(q.n) + 1u32;

    let sum: Rational = if p % 2 == 0 {
        (0..=p / 2)
            .map(|k| int(&row[2 * k + 1] * (&m).pow(2 * k as u32 + 1)) * &b[p - 2 * k])
            .sum()
    } else {
        (1..=(p + 1) / 2)
            .map(|k| int(&row[2 * k] * (&m).pow(2 * k as u32)) * &b[p + 1 - 2 * k])
            .sum()
    };
    let value = sum / int(q.p + 1) - Rational::new((&m).pow(q.p), 2.into());
    into_integer(value, "parity", q)
}

/// `(B_{p+1}(n+1) - B_{p+1}) / (p+1)`.
pub fn powersum_via_poly(q: PowerSumQuery) -> Result<BigInt> {
    if q.p == 0 {
        return Err(Error::domain("the Bernoulli-polynomial form needs p >= 1"));
    }
    let m = q.p as usize + 1;
    let at = bernoulli_polynomial(m, &int(q.n + 1), Convention::Minus);
    let b = BernoulliCache::global().get(m, Convention::Minus);
    into_integer((at - b) / int(m), "poly", q)
}

/// Solves `(1+n)^{p+1} = 1 + sum_{r=0}^{p} C(p+1, r) S_r(n)` for each `S_r` in turn.
pub fn powersum_recursive(q: PowerSumQuery) -> BigInt {
    let n1 = BigInt::from(q.n) + 1u32;
    let mut sums: Vec<BigInt> = Vec::with_capacity(q.p as usize + 1);
    for r in 0..=q.p {
        let row = binomial_row(r as u64 + 1);
        let known: BigInt = sums.iter().zip(row.iter()).map(|(s, c)| s * c).sum();
        let rhs = (&n1).pow(r + 1) - 1u32 - known;
        let (s, rem) = rhs.div_rem(&BigInt::from(r + 1));
        debug_assert!(rem.is_zero(), "recursion produced a fraction at r = {r}");
        sums.push(s);
    }
    sums.pop().unwrap_or_default()
}

/// `S_p(n)` as an exact polynomial in `n`. Both conventions give the same
/// polynomial; the minus convention reaches it through the `+ n^p` correction.
pub fn powersum_polynomial(p: u32, conv: Convention) -> SumPolynomial {
    let deg = p as usize + 1;
    let mut coefficients = vec![Rational::zero(); deg + 1];
    if p == 0 {
        coefficients[1] = Rational::one();
        return SumPolynomial { coefficients };
    }
    let b = BernoulliCache::global().table(p as usize, conv);
    let row = binomial_row(p as u64 + 1);
    let scale = int(p + 1);
    for k in 0..=p as usize {
        coefficients[deg - k] = &b[k] * int(row[k].clone()) / &scale;
    }
    if conv == Convention::Minus {
        coefficients[p as usize] += Rational::one();
    }
    SumPolynomial { coefficients }
}
