//! q-brackets, binomial helpers, and p-adic valuations.
//!
//! The q-bracket is `[x]_q = (1 - q^x) / (1 - q)`, with `[x]_1 = x` as the
//! limit value. With q replaced by -q it reads `(1 - (-q)^x) / (1 + q)`,
//! which is where the `[2]_q = 1 + q` normalization of the fermionic
//! measure comes from; only the q-form is implemented here.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::{C64, Rat};

/// `[x]_q` for integer x. Errors at q = 1, where the quotient degenerates;
/// use [`q_bracket_limit`] to get the limit value x instead.
pub fn q_bracket<T: Scalar>(x: i32, q: &T) -> Result<T> {
    if q.is_one() {
        return Err(Error::QBracketAtOne);
    }
    Ok(bracket_unchecked(x, q))
}

/// `[x]_q` for integer x, returning the limit value x at q = 1.
pub fn q_bracket_limit<T: Scalar>(x: i32, q: &T) -> T {
    if q.is_one() {
        T::from_bigint(&BigInt::from(x))
    } else {
        bracket_unchecked(x, q)
    }
}

fn bracket_unchecked<T: Scalar>(x: i32, q: &T) -> T {
    (T::one() - q.powi(x)) / (T::one() - q.clone())
}

/// `[x]_q` for real x. Integer x works for any q except 1 (where the limit
/// value x is returned); non-integer x needs a positive real q so that
/// q^x = exp(x log q) has an unambiguous principal value.
pub fn q_bracket_real(x: f64, q: f64) -> Result<f64> {
    if q == 1.0 {
        return Ok(x);
    }
    let qx = if x.fract() == 0.0 && x.abs() < i32::MAX as f64 {
        Scalar::powi(&q, x as i32)
    } else {
        Scalar::powf(&q, x)?
    };
    Ok((1.0 - qx) / (1.0 - q))
}

/// `[x]_q` for complex x and real q in (0, 1), via q^x = exp(x log q).
pub fn q_bracket_complex(x: C64, q: f64) -> Result<C64> {
    if !(0.0 < q && q < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "complex q-bracket needs real q in (0, 1), got q = {q}"
        )));
    }
    let qx = (x * q.ln()).exp();
    Ok((C64::new(1.0, 0.0) - qx) / (1.0 - q))
}

/// `[2]_q = 1 + q`, the normalization constant of the fermionic measure.
pub fn two_bracket<T: Scalar>(q: &T) -> T {
    T::one() + q.clone()
}

/// Binomial coefficient with the convention `binom(n, k) = 0` for k > n.
pub fn binom(n: u64, k: u64) -> BigInt {
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// `binom(m + r - 1, m)`, the coefficient of the negative binomial series
/// `(1 + z)^{-r} = sum_m binom(m + r - 1, m) (-z)^m` for r >= 1.
pub fn neg_binom_coeff(m: u64, r: u32) -> BigInt {
    binom(m + r as u64 - 1, m)
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n as u64).map(BigInt::from).product()
}

/// Trial division. Intended for the small odd primes the p-adic modules use.
pub fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// p-adic valuation of a rational, with `Infinite` as the value at 0.
/// `Infinite` compares greater than every finite valuation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn is_finite(&self) -> bool {
        matches!(self, Valuation::Finite(_))
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// `v_p(x)` for an odd prime p: the exponent of p in x, negative when p
/// divides the denominator, `Infinite` at x = 0.
pub fn padic_valuation(x: &Rat, p: u64) -> Result<Valuation> {
    if !is_odd_prime(p) {
        return Err(Error::NotAnOddPrime(p));
    }
    if x.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let v = int_valuation(x.numer(), p) - int_valuation(x.denom(), p);
    Ok(Valuation::Finite(v))
}

fn int_valuation(n: &BigInt, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}
