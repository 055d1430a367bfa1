//! Higher-order twisted q-Euler and q-Genocchi numbers and polynomials.
//!
//! Two independent evaluation routes are provided for the q-Euler family
//! of order r with twist w:
//!
//! - [`euler_number_closed`] / [`euler_poly_closed`]: the closed finite sum
//!   `E = (1-q)^{-n} sum_{l=0}^{n} binom(n,l) (-1)^l q^{lx}
//!   ([2]_q / (1 + w q^l))^r`, defined for every w away from the poles.
//!   This is the canonical definition; exact inputs give exact outputs.
//! - [`euler_number_series`]: the absolutely convergent series
//!   `[2]_q^r sum_{m>=0} binom(m+r-1, m) (-w)^m [m]_q^n`, valid for
//!   |w| < 1 and |q| < 1. It exists as a cross-check, not as the primary
//!   route, and is summed exactly with a floating tail bound.
//!
//! The q-Genocchi family is defined through the q-Euler one:
//! `G_{m} = 0` for m < r and `G_{n+r} = r! binom(n+r, r) E_n`.

use num_bigint::BigInt;
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numerics::{binom, factorial, two_bracket};
use crate::scalar::Scalar;
use crate::Rat;

/// Shared evaluation context: deformation q, twist w, order r >= 1.
#[derive(Clone, Debug, PartialEq)]
pub struct QContext<T> {
    pub q: T,
    pub w: T,
    pub r: u32,
}

impl<T: Scalar> QContext<T> {
    pub fn new(q: T, w: T, r: u32) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidArgument("order r must be >= 1".into()));
        }
        Ok(QContext { q, w, r })
    }
}

/// Polynomial argument. Exact mode supports nonnegative integers; the real
/// variant routes through principal powers and needs a positive real q.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Argument {
    Integer(u64),
    Real(f64),
}

#[derive(Clone, Debug)]
pub struct EulerQuery<T> {
    pub n: u32,
    pub ctx: QContext<T>,
    /// Polynomial argument; absent means the number, i.e. x = 0.
    pub x: Option<Argument>,
}

impl<T: Scalar> EulerQuery<T> {
    pub fn number(n: u32, ctx: QContext<T>) -> Self {
        EulerQuery { n, ctx, x: None }
    }

    pub fn poly(n: u32, ctx: QContext<T>, x: Argument) -> Self {
        EulerQuery { n, ctx, x: Some(x) }
    }
}

#[derive(Clone, Debug)]
pub struct GenocchiQuery<T> {
    pub m: u32,
    pub ctx: QContext<T>,
    pub x: Option<Argument>,
}

impl<T: Scalar> GenocchiQuery<T> {
    pub fn number(m: u32, ctx: QContext<T>) -> Self {
        GenocchiQuery { m, ctx, x: None }
    }

    pub fn poly(m: u32, ctx: QContext<T>, x: Argument) -> Self {
        GenocchiQuery { m, ctx, x: Some(x) }
    }
}

/// q^(l*x) for the polynomial variants.
fn arg_power<T: Scalar>(q: &T, l: u32, x: Argument) -> Result<T> {
    match x {
        Argument::Integer(k) => {
            let e = l as u64 * k;
            let e = i32::try_from(e).map_err(|_| {
                Error::InvalidArgument(format!("exponent l*x = {e} too large"))
            })?;
            Ok(q.powi(e))
        }
        Argument::Real(t) => q.powf(l as f64 * t),
    }
}

fn closed_sum<T: Scalar>(n: u32, ctx: &QContext<T>, x: Option<Argument>) -> Result<T> {
    if ctx.q.is_one() {
        return Err(Error::QIsOne);
    }
    let two = two_bracket(&ctx.q);
    let mut sum = T::zero();
    for l in 0..=n {
        let ql = ctx.q.powi(l as i32);
        let denom = T::one() + ctx.w.clone() * ql;
        if denom.is_zero() {
            return Err(Error::Pole { l });
        }
        let mut term = T::from_bigint(&binom(n as u64, l as u64))
            * (two.clone() / denom).powi(ctx.r as i32);
        if let Some(arg) = x {
            term = term * arg_power(&ctx.q, l, arg)?;
        }
        if l % 2 == 1 {
            term = -term;
        }
        sum = sum + term;
    }
    Ok(sum / (T::one() - ctx.q.clone()).powi(n as i32))
}

/// Closed-sum q-Euler number of order r. Exact for exact inputs.
pub fn euler_number_closed<T: Scalar>(query: &EulerQuery<T>) -> Result<T> {
    closed_sum(query.n, &query.ctx, None)
}

/// Closed-sum q-Euler polynomial; x = 0 (or absent) reduces bit-for-bit to
/// [`euler_number_closed`].
pub fn euler_poly_closed<T: Scalar>(query: &EulerQuery<T>) -> Result<T> {
    let x = match query.x {
        None | Some(Argument::Integer(0)) => None,
        other => other,
    };
    closed_sum(query.n, &query.ctx, x)
}

/// Result of the exact series summation: the partial sum itself, how many
/// terms it took, and the floating bound on the discarded tail.
#[derive(Clone, Debug)]
pub struct SeriesSum {
    pub value: Rat,
    pub terms: usize,
    pub tail_bound: f64,
}

const SERIES_TERM_CAP: usize = 2_000_000;

/// Series-form q-Euler number: partial sum of
/// `[2]_q^r sum_m binom(m+r-1, m) (-w)^m [m]_q^n`, truncated once the tail
/// bound drops to `tol`. Requires |w| < 1 and |q| < 1 (with q != 1 implied),
/// which keep `[m]_q` bounded by `1/(1 - |q|)` and make the series
/// absolutely convergent.
///
/// The partial sum is exact: the returned value differs from the true series
/// value by at most `tail_bound <= tol`. The tail of the term-magnitude
/// series is bounded by
/// `[2]_q^r (M+1)^{r-1} |w|^M B^n / (1 - g_M)` with `B = 1/(1-|q|)` and
/// `g_M = |w| ((M+2)/(M+1))^{r-1}`, using `binom(m+r-1, m) <= (m+1)^{r-1}`
/// and the fact that the term ratio bound g_m decreases in m.
pub fn euler_number_series(query: &EulerQuery<Rat>, tol: f64) -> Result<SeriesSum> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let QContext { q, w, r } = &query.ctx;
    let n = query.n;
    let w_abs = w.abs_f64();
    if w_abs >= 1.0 {
        return Err(Error::Divergence(format!(
            "series needs |w| < 1, got |w| = {w_abs}"
        )));
    }
    let q_abs = q.abs_f64();
    if q_abs >= 1.0 {
        return Err(Error::Divergence(format!(
            "series tail bound needs |q| < 1, got |q| = {q_abs}"
        )));
    }

    let r = *r;
    let bound_b = 1.0 / (1.0 - q_abs);
    let prefactor = two_bracket(q).abs_f64().powi(r as i32) * bound_b.powi(n as i32);
    let tail_at = |m_start: usize| -> f64 {
        // bound on sum_{m >= m_start} of |term_m| / [2]_q^r, scaled back up
        let m = m_start as f64;
        let g = w_abs * ((m + 2.0) / (m + 1.0)).powi(r as i32 - 1);
        if g >= 1.0 {
            return f64::INFINITY;
        }
        prefactor * (m + 1.0).powi(r as i32 - 1) * w_abs.powi(m_start as i32) / (1.0 - g)
    };

    // Exact accumulation over the common denominator
    //   D_m = bw^m * cq^n * bq^{n(m-1)},   cq = bq - aq,
    // under which term m has integer numerator
    //   binom(m+r-1, m) * (-aw)^m * (bq^m - aq^m)^n.
    // Stepping m -> m+1 multiplies D by (bw * bq^n), so the running sum is a
    // single integer that is rescaled by that constant each step.
    let (aq, bq) = (query.ctx.q.numer().clone(), query.ctx.q.denom().clone());
    let (aw, bw) = (query.ctx.w.numer().clone(), query.ctx.w.denom().clone());
    let step = &bw * bq.clone().pow(n);

    let mut sum_num = BigInt::zero();
    let mut aq_pow = BigInt::one(); // aq^m
    let mut bq_pow = BigInt::one(); // bq^m
    let mut w_num_pow = BigInt::one(); // (-aw)^m
    let mut binom_c = BigInt::one(); // binom(m + r - 1, m)
    let mut m = 0usize;
    let tail = loop {
        if m > 0 {
            // advance the running powers to exponent m
            aq_pow *= &aq;
            bq_pow *= &bq;
            w_num_pow *= -&aw;
            // binom(m+r-1, m) = binom(m+r-2, m-1) * (m+r-1) / m
            binom_c = binom_c * BigInt::from(m as u64 + r as u64 - 1) / BigInt::from(m as u64);
            let bracket_num: BigInt = (&bq_pow - &aq_pow).pow(n);
            sum_num = sum_num * &step + &binom_c * &w_num_pow * bracket_num;
        }
        // m = 0 contributes [0]_q^n: zero unless n = 0, where 0^0 = 1 makes
        // it exactly one; that unit is added after the loop.
        let t = tail_at(m + 1);
        if t <= tol {
            break t;
        }
        if m >= SERIES_TERM_CAP {
            let d = series_denominator(&bw, &bq, &(bq.clone() - aq.clone()), n, m);
            let partial = Rat::new(sum_num, d);
            return Err(Error::NonConvergence {
                terms: m + 1,
                estimate: t,
                partial: format!("{:.6e}", partial.to_f64().unwrap_or(f64::NAN)),
            });
        }
        m += 1;
    };

    let cq = &bq - &aq;
    let d = series_denominator(&bw, &bq, &cq, n, m);
    let mut value = Rat::new(sum_num, d);
    if n == 0 {
        value += Rat::one();
    }
    value *= Pow::pow(two_bracket(&query.ctx.q), r as i32);
    Ok(SeriesSum {
        value,
        terms: m + 1,
        tail_bound: tail,
    })
}

fn series_denominator(bw: &BigInt, bq: &BigInt, cq: &BigInt, n: u32, m: usize) -> BigInt {
    if m == 0 {
        return BigInt::one();
    }
    bw.clone().pow(m as u64) * cq.clone().pow(n) * bq.clone().pow(n as u64 * (m as u64 - 1))
}

/// q-Genocchi number of order r: zero below the order, and
/// `r! binom(m, r) E_{m-r}` from the order upward.
pub fn genocchi_number<T: Scalar>(query: &GenocchiQuery<T>) -> Result<T> {
    genocchi_eval(query.m, &query.ctx, None)
}

/// q-Genocchi polynomial; same vanishing below the order, with the q-Euler
/// polynomial carrying the x dependence.
pub fn genocchi_poly<T: Scalar>(query: &GenocchiQuery<T>) -> Result<T> {
    genocchi_eval(query.m, &query.ctx, query.x)
}

fn genocchi_eval<T: Scalar>(m: u32, ctx: &QContext<T>, x: Option<Argument>) -> Result<T> {
    let r = ctx.r;
    if m < r {
        return Ok(T::zero());
    }
    let euler = closed_sum(
        m - r,
        ctx,
        match x {
            None | Some(Argument::Integer(0)) => None,
            other => other,
        },
    )?;
    let factor = factorial(r) * binom(m as u64, r as u64);
    Ok(T::from_bigint(&factor) * euler)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::Signed;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    fn ctx(q: Rat, w: Rat, r: u32) -> QContext<Rat> {
        QContext::new(q, w, r).unwrap()
    }

    #[test]
    fn order_zero_is_rejected() {
        assert!(QContext::new(rat(1, 2), Rat::one(), 0).is_err());
    }

    #[test]
    fn euler_number_n0_is_two_bracket_over_one_plus_w_to_the_r() {
        // (([2]_{1/2}) / (1 + 1))^2 = (3/4)^2 = 9/16
        let q = EulerQuery::number(0, ctx(rat(1, 2), Rat::one(), 2));
        assert_eq!(euler_number_closed(&q).unwrap(), rat(9, 16));
    }

    #[test]
    fn euler_number_n1_untwisted_is_minus_half_for_any_q() {
        for q in [rat(1, 2), rat(1, 3), rat(2, 5), rat(-3, 4), rat(7, 2)] {
            let query = EulerQuery::number(1, ctx(q, Rat::one(), 1));
            assert_eq!(euler_number_closed(&query).unwrap(), rat(-1, 2));
        }
    }

    #[test]
    fn euler_number_frozen_value_n2_r1() {
        // hand-derived: q = 1/2, w = 1/3 gives E_2 = -45/182
        let query = EulerQuery::number(2, ctx(rat(1, 2), rat(1, 3), 1));
        assert_eq!(euler_number_closed(&query).unwrap(), rat(-45, 182));
    }

    #[test]
    fn euler_number_q_one_errors_towards_classical_oracle() {
        let query = EulerQuery::number(2, ctx(Rat::one(), Rat::one(), 1));
        assert!(matches!(euler_number_closed(&query), Err(Error::QIsOne)));
    }

    #[test]
    fn euler_number_pole_reports_the_offending_index() {
        // w = -1/q makes 1 + w q^l vanish at l = 1
        let query = EulerQuery::number(2, ctx(rat(1, 2), rat(-2, 1), 1));
        assert!(matches!(euler_number_closed(&query), Err(Error::Pole { l: 1 })));
    }

    #[test]
    fn euler_poly_x0_reduces_to_number_bit_for_bit() {
        let c = ctx(rat(1, 2), rat(1, 3), 2);
        for n in 0..6 {
            let num = euler_number_closed(&EulerQuery::number(n, c.clone())).unwrap();
            let pol =
                euler_poly_closed(&EulerQuery::poly(n, c.clone(), Argument::Integer(0))).unwrap();
            assert_eq!(num, pol);
        }
    }

    #[test]
    fn euler_poly_n0_carries_no_x_dependence() {
        // n = 0: the l-sum has a single term, so x is invisible:
        // value = ([2]_q / (1 + w))^r = (3/2 / (4/3))^1 = 9/8 at any x.
        let c = ctx(rat(1, 2), rat(1, 3), 1);
        let v = euler_poly_closed(&EulerQuery::poly(0, c, Argument::Integer(7))).unwrap();
        assert_eq!(v, rat(9, 8));
    }

    #[test]
    fn euler_poly_real_x_needs_floating_scalar() {
        let c = ctx(rat(1, 2), rat(1, 3), 1);
        let q = EulerQuery::poly(2, c, Argument::Real(2.5));
        assert!(matches!(
            euler_poly_closed(&q),
            Err(Error::BranchAmbiguity { .. })
        ));
    }

    #[test]
    fn euler_poly_real_x_floating_matches_integer_x() {
        let cf = QContext::new(0.5f64, 0.25f64, 2).unwrap();
        let via_int =
            euler_poly_closed(&EulerQuery::poly(3, cf.clone(), Argument::Integer(2))).unwrap();
        let via_real =
            euler_poly_closed(&EulerQuery::poly(3, cf, Argument::Real(2.0))).unwrap();
        assert!((via_int - via_real).abs() < 1e-13);
    }

    #[test]
    fn series_geometric_case_n0() {
        // n = 0: [2]_q sum_m (-w)^m = (3/2) / (3/2) = 1 at q = w = 1/2
        let query = EulerQuery::number(0, ctx(rat(1, 2), rat(1, 2), 1));
        let s = euler_number_series(&query, 1e-12).unwrap();
        let closed = euler_number_closed(&query).unwrap();
        assert_eq!(closed, Rat::one());
        let diff = (s.value - closed).abs().to_f64().unwrap();
        assert!(diff <= s.tail_bound && s.tail_bound <= 1e-12);
    }

    #[test]
    fn series_matches_closed_n1() {
        let query = EulerQuery::number(1, ctx(rat(1, 2), rat(1, 2), 1));
        let s = euler_number_series(&query, 1e-12).unwrap();
        let closed = euler_number_closed(&query).unwrap();
        assert!((s.value - closed).abs().to_f64().unwrap() <= 1e-12);
    }

    #[test]
    fn series_matches_closed_higher_order() {
        let query = EulerQuery::number(3, ctx(rat(1, 3), rat(9, 10), 2));
        let s = euler_number_series(&query, 1e-10).unwrap();
        let closed = euler_number_closed(&query).unwrap();
        assert!((s.value - closed).abs().to_f64().unwrap() <= 1e-10);
        assert!(s.terms > 10);
    }

    #[test]
    fn series_rejects_divergent_and_bad_tolerance() {
        let query = EulerQuery::number(1, ctx(rat(1, 2), rat(3, 2), 1));
        assert!(matches!(
            euler_number_series(&query, 1e-10),
            Err(Error::Divergence(_))
        ));
        let query = EulerQuery::number(1, ctx(rat(1, 2), rat(1, 2), 1));
        assert!(euler_number_series(&query, 0.0).is_err());
        assert!(euler_number_series(&query, -1.0).is_err());
    }

    #[test]
    fn series_negative_q_still_agrees_with_closed() {
        let query = EulerQuery::number(4, ctx(rat(-1, 3), rat(1, 2), 2));
        let s = euler_number_series(&query, 1e-12).unwrap();
        let closed = euler_number_closed(&query).unwrap();
        assert!((s.value - closed).abs().to_f64().unwrap() <= 1e-12);
    }

    #[test]
    fn genocchi_vanishes_below_the_order() {
        let c = ctx(rat(1, 2), rat(1, 2), 3);
        assert_eq!(
            genocchi_number(&GenocchiQuery::number(2, c.clone())).unwrap(),
            Rat::zero()
        );
        // vanishing short-circuits parameter trouble, including q = 1
        let weird = ctx(Rat::one(), rat(-2, 1), 2);
        assert_eq!(
            genocchi_number(&GenocchiQuery::number(1, weird)).unwrap(),
            Rat::zero()
        );
        assert_eq!(
            genocchi_poly(&GenocchiQuery::poly(0, c, Argument::Integer(5))).unwrap(),
            Rat::zero()
        );
    }

    #[test]
    fn genocchi_first_value_at_the_order() {
        // m = r = 1: 1! * binom(1,1) * E_0 = (3/2) / 2 = 3/4 at q = 1/2, w = 1
        let g = GenocchiQuery::number(1, ctx(rat(1, 2), Rat::one(), 1));
        assert_eq!(genocchi_number(&g).unwrap(), rat(3, 4));
        // m = r = 2: 2! * E_0^{(2)} = 2 * 9/16 = 9/8 at q = 1/2, w = 1
        let g = GenocchiQuery::number(2, ctx(rat(1, 2), Rat::one(), 2));
        assert_eq!(genocchi_number(&g).unwrap(), rat(9, 8));
    }

    #[test]
    fn genocchi_bridge_is_bit_identical() {
        for r in 1..=4u32 {
            for n in 0..=8u32 {
                let c = ctx(rat(3, 5), rat(1, 4), r);
                let g = genocchi_number(&GenocchiQuery::number(n + r, c.clone())).unwrap();
                let e = euler_number_closed(&EulerQuery::number(n, c)).unwrap();
                let factor = Rat::from_integer(factorial(r) * binom((n + r) as u64, r as u64));
                assert_eq!(g, factor * e);
            }
        }
    }

    #[test]
    fn genocchi_poly_bridge_with_x() {
        let c = ctx(rat(1, 2), rat(1, 2), 1);
        let g = genocchi_poly(&GenocchiQuery::poly(3, c.clone(), Argument::Integer(1))).unwrap();
        let e = euler_poly_closed(&EulerQuery::poly(2, c, Argument::Integer(1))).unwrap();
        assert_eq!(g, Rat::from_integer(3.into()) * e);
    }
}
