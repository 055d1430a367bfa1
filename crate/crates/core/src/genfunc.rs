//! Formal exponential generating series over exact rationals.
//!
//! A [`FormalSeries`] stores divided coefficients: entry k is the
//! coefficient of t^k / k!, i.e. the k-th derivative of the series at
//! t = 0. In this form the product of two series is the binomial
//! convolution `c_k = sum_j binom(k, j) a_j b_{k-j}`, and integer
//! sequences stay integers instead of growing factorial denominators.
//!
//! On top of the ring operations sit the classical (q = 1) Euler and
//! Genocchi generating functions `(2 / (w e^t + 1))^r e^{xt}` and
//! `t^r (2 / (w e^t + 1))^r e^{xt}`, a q-interpolated comparator
//! `2^r t^r / prod_v (q^{h-v} e^t + 1)` kept around because its number
//! family genuinely differs from the twisted one, and the partial-sum
//! q-EGF `[2]_q^r sum_m binom(m+r-1, m) (-w)^m e^{[m+x]_q t}` whose
//! t^n-coefficients converge to the q-Euler values.

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numerics::{binom, q_bracket, two_bracket};
use crate::scalar::Scalar;
use crate::Rat;

/// Default truncation order for callers with no opinion.
pub const DEFAULT_ORDER: usize = 16;

/// Truncated exponential generating series with divided coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSeries {
    coeffs: Vec<Rat>,
}

impl FormalSeries {
    /// Series from divided coefficients; the truncation order is
    /// `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least order 0");
        FormalSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        FormalSeries {
            coeffs: vec![Rat::zero(); order + 1],
        }
    }

    pub fn constant(c: Rat, order: usize) -> Self {
        let mut s = FormalSeries::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        FormalSeries::constant(Rat::one(), order)
    }

    /// e^{ct}: divided coefficients c^k.
    pub fn exponential(c: &Rat, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut p = Rat::one();
        for _ in 0..=order {
            coeffs.push(p.clone());
            p *= c;
        }
        FormalSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Rat {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn truncated(&self, order: usize) -> Self {
        let order = order.min(self.order());
        FormalSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|k| self.coeffs[k].clone() + other.coeffs[k].clone())
            .collect();
        FormalSeries { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|k| self.coeffs[k].clone() - other.coeffs[k].clone())
            .collect();
        FormalSeries { coeffs }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        FormalSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Binomial convolution, truncated to the shorter operand.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![Rat::zero(); order + 1];
        for (k, c) in coeffs.iter_mut().enumerate() {
            let mut acc = Rat::zero();
            for j in 0..=k {
                acc += Rat::from_integer(binom(k as u64, j as u64))
                    * &self.coeffs[j]
                    * &other.coeffs[k - j];
            }
            *c = acc;
        }
        FormalSeries { coeffs }
    }

    /// Multiplicative inverse; the constant term must be nonzero. Solves
    /// `sum_j binom(k, j) a_j b_{k-j} = [k = 0]` coefficient by coefficient.
    pub fn inverse(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::SingularSeries);
        }
        let a0_inv = Rat::one() / &self.coeffs[0];
        let mut b = vec![a0_inv.clone()];
        for k in 1..=self.order() {
            let mut acc = Rat::zero();
            for j in 1..=k {
                acc += Rat::from_integer(binom(k as u64, j as u64))
                    * &self.coeffs[j]
                    * &b[k - j];
            }
            b.push(-acc * &a0_inv);
        }
        Ok(FormalSeries { coeffs: b })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = FormalSeries::one(self.order());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiply by t^r. In divided form the coefficient of t^{k}/k! becomes
    /// `a_{k-r} * k! / (k-r)! = a_{k-r} * r! * binom(k, r)`, and the first r
    /// coefficients vanish.
    pub fn shift_t_pow(&self, r: u32) -> Self {
        let order = self.order();
        let mut coeffs = vec![Rat::zero(); order + 1];
        for k in r as usize..=order {
            let factor = crate::numerics::factorial(r) * binom(k as u64, r as u64);
            coeffs[k] = &self.coeffs[k - r as usize] * Rat::from_integer(factor);
        }
        FormalSeries { coeffs }
    }
}

/// `(2 / (w e^t + 1))^r e^{xt}` as a truncated series. The denominator
/// series has constant term w + 1, so w = -1 is singular.
pub fn classical_euler_series(w: &Rat, r: u32, x: u64, order: usize) -> Result<FormalSeries> {
    if r == 0 {
        return Err(Error::InvalidArgument("order r must be >= 1".into()));
    }
    // w e^t + 1 has divided coefficients (w + 1, w, w, ...)
    let mut denom = FormalSeries::exponential(&Rat::one(), order).scale(w);
    denom.coeffs[0] += Rat::one();
    let base = denom.inverse()?.scale(&Rat::from_integer(2.into()));
    let mut s = base.pow(r);
    if x > 0 {
        s = s.mul(&FormalSeries::exponential(&Rat::from_integer(x.into()), order));
    }
    Ok(s)
}

/// `t^r (2 / (w e^t + 1))^r e^{xt}`: the classical Genocchi normalization
/// of [`classical_euler_series`].
pub fn classical_genocchi_series(w: &Rat, r: u32, x: u64, order: usize) -> Result<FormalSeries> {
    Ok(classical_euler_series(w, r, x, order)?.shift_t_pow(r))
}

/// Comparator family `2^r t^r / prod_{v=0}^{r-1} (q^{h-v} e^t + 1)`.
/// Each factor needs q^{h-v} != -1; the offending v is reported.
pub fn cos_genocchi_series(h: i32, r: u32, q: &Rat, order: usize) -> Result<FormalSeries> {
    if r == 0 {
        return Err(Error::InvalidArgument("order r must be >= 1".into()));
    }
    let mut denom = FormalSeries::one(order);
    for v in 0..r {
        let e = h - v as i32;
        if q.is_zero() && e < 0 {
            return Err(Error::InvalidArgument(
                "q = 0 admits no negative power q^(h-v)".into(),
            ));
        }
        let qhv = Scalar::powi(q, e);
        let mut factor = FormalSeries::exponential(&Rat::one(), order).scale(&qhv);
        factor.coeffs[0] += Rat::one();
        if factor.coeffs[0].is_zero() {
            return Err(Error::SingularFactor { v });
        }
        denom = denom.mul(&factor);
    }
    let two_r = Rat::from_integer(BigInt::from(2).pow(r));
    Ok(denom.inverse()?.scale(&two_r).shift_t_pow(r))
}

/// Exact partial sum of the q-EGF plus per-coefficient tail bounds.
#[derive(Clone, Debug)]
pub struct EgfPartial {
    pub series: FormalSeries,
    /// Entry n bounds the neglected mass of coefficient n.
    pub tail_bounds: Vec<f64>,
    pub terms: usize,
}

/// Partial sum over m <= cutoff of
/// `[2]_q^r sum_m binom(m+r-1, m) (-w)^m e^{[m+x]_q t}`,
/// truncated at the given order. Coefficient n of the full series is the
/// series-form q-Euler polynomial value E_n(x); the partial sum is exact
/// and `tail_bounds[n]` bounds what the cutoff discarded, using
/// `|[m+x]_q| <= 1/(1 - |q|)` and `binom(m+r-1, m) <= (m+1)^{r-1}`.
pub fn q_euler_egf(
    w: &Rat,
    q: &Rat,
    r: u32,
    x: u64,
    cutoff: usize,
    order: usize,
) -> Result<EgfPartial> {
    if r == 0 {
        return Err(Error::InvalidArgument("order r must be >= 1".into()));
    }
    let w_abs = w.abs().to_f64().unwrap_or(f64::INFINITY);
    if w_abs >= 1.0 {
        return Err(Error::Divergence(format!(
            "q-EGF tail bound needs |w| < 1, got |w| = {w_abs}"
        )));
    }
    let q_abs = q.abs().to_f64().unwrap_or(f64::INFINITY);
    if q_abs >= 1.0 {
        return Err(Error::Divergence(format!(
            "q-EGF tail bound needs |q| < 1, got |q| = {q_abs}"
        )));
    }

    let two_r = Pow::pow(two_bracket(q), r as i32);
    let mut series = FormalSeries::zero(order);
    let mut c_m = Rat::one(); // binom(m+r-1, m), exact
    let mut w_pow = Rat::one(); // (-w)^m
    for m in 0..=cutoff {
        if m > 0 {
            c_m = c_m * Rat::from_integer((m as u64 + r as u64 - 1).into())
                / Rat::from_integer((m as u64).into());
            w_pow *= -w;
        }
        // [m+x]_q is exact; q != 1 because |q| < 1
        let bracket = q_bracket((m as u64 + x) as i32, q)?;
        let weight = &c_m * &w_pow * &two_r;
        let e = FormalSeries::exponential(&bracket, order);
        series = series.add(&e.scale(&weight));
    }

    // tail of sum_{m > cutoff} (m+1)^{r-1} |w|^m B^n, via the decreasing
    // term-ratio bound g = |w| ((M+2)/(M+1))^{r-1}
    let bound_b = 1.0 / (1.0 - q_abs);
    let two_r_abs = two_r.abs().to_f64().unwrap_or(f64::INFINITY);
    let m_next = (cutoff + 1) as f64;
    let g = w_abs * ((m_next + 2.0) / (m_next + 1.0)).powi(r as i32 - 1);
    let base_tail = if g < 1.0 {
        two_r_abs * (m_next + 1.0).powi(r as i32 - 1) * w_abs.powf(m_next) / (1.0 - g)
    } else {
        f64::INFINITY
    };
    let tail_bounds = (0..=order)
        .map(|n| base_tail * bound_b.powi(n as i32))
        .collect();

    Ok(EgfPartial {
        series,
        tail_bounds,
        terms: cutoff + 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qeuler::{
        euler_number_closed, euler_poly_closed, genocchi_number, Argument, EulerQuery,
        GenocchiQuery, QContext,
    };

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&n| Rat::from_integer(n.into())).collect()
    }

    #[test]
    fn exponential_product_doubles_the_rate() {
        let e = FormalSeries::exponential(&Rat::one(), 8);
        let e2 = e.mul(&e);
        for k in 0..=8usize {
            assert_eq!(e2.coeff(k), &Rat::from_integer(BigInt::from(2).pow(k as u32)));
        }
    }

    #[test]
    fn one_is_the_multiplicative_identity() {
        let s = FormalSeries::from_coeffs(ints(&[3, -1, 4, -1, 5]));
        assert_eq!(s.mul(&FormalSeries::one(4)), s);
    }

    #[test]
    fn t_times_t_has_divided_coefficient_two() {
        // t = 0 + 1 * t/1!; t * t = 2 * t^2/2!
        let t = FormalSeries::from_coeffs(ints(&[0, 1, 0, 0]));
        let t2 = t.mul(&t);
        assert_eq!(t2.coeffs(), &ints(&[0, 0, 2, 0])[..]);
    }

    #[test]
    fn shift_t_pow_matches_direct_multiplication_by_t() {
        let s = FormalSeries::from_coeffs(ints(&[2, 3, 5, 7, 11]));
        let t = FormalSeries::from_coeffs(ints(&[0, 1, 0, 0, 0]));
        assert_eq!(s.shift_t_pow(1), s.mul(&t));
        assert_eq!(s.shift_t_pow(2), s.mul(&t).mul(&t));
    }

    #[test]
    fn inverse_of_constant_and_exponential() {
        let two = FormalSeries::constant(rat(2, 1), 5);
        assert_eq!(two.inverse().unwrap(), FormalSeries::constant(rat(1, 2), 5));
        // 1/e^t = e^{-t}: coefficients (-1)^k
        let e = FormalSeries::exponential(&Rat::one(), 6);
        let inv = e.inverse().unwrap();
        assert_eq!(inv, FormalSeries::exponential(&-Rat::one(), 6));
    }

    #[test]
    fn inverse_is_two_sided() {
        let s = FormalSeries::from_coeffs(vec![
            rat(3, 2),
            rat(-1, 3),
            rat(7, 5),
            rat(0, 1),
            rat(2, 7),
        ]);
        let inv = s.inverse().unwrap();
        assert_eq!(s.mul(&inv), FormalSeries::one(4));
        assert_eq!(inv.mul(&s), FormalSeries::one(4));
    }

    #[test]
    fn inverse_needs_nonzero_constant_term() {
        let t = FormalSeries::from_coeffs(ints(&[0, 1, 0]));
        assert!(matches!(t.inverse(), Err(Error::SingularSeries)));
    }

    #[test]
    fn classical_euler_untwisted_values() {
        // 2/(e^t + 1): (1, -1/2, 0, 1/4, 0, -1/2, 0)
        let s = classical_euler_series(&Rat::one(), 1, 0, 6).unwrap();
        let expect = vec![
            rat(1, 1),
            rat(-1, 2),
            rat(0, 1),
            rat(1, 4),
            rat(0, 1),
            rat(-1, 2),
            rat(0, 1),
        ];
        assert_eq!(s.coeffs(), &expect[..]);
    }

    #[test]
    fn classical_euler_constant_term_is_one_for_any_x() {
        for x in [0u64, 1, 5] {
            let s = classical_euler_series(&Rat::one(), 1, x, 4).unwrap();
            assert_eq!(s.coeff(0), &Rat::one());
        }
    }

    #[test]
    fn classical_euler_order_two_is_the_square() {
        let one = classical_euler_series(&rat(1, 2), 1, 0, 8).unwrap();
        let two = classical_euler_series(&rat(1, 2), 2, 0, 8).unwrap();
        assert_eq!(two, one.mul(&one));
    }

    #[test]
    fn classical_euler_rejects_w_minus_one() {
        assert!(classical_euler_series(&-Rat::one(), 1, 0, 4).is_err());
    }

    #[test]
    fn classical_genocchi_untwisted_values() {
        // t * 2/(e^t + 1): (0, 1, -1, 0, 1, 0, -3)
        let s = classical_genocchi_series(&Rat::one(), 1, 0, 6).unwrap();
        assert_eq!(s.coeffs(), &ints(&[0, 1, -1, 0, 1, 0, -3])[..]);
    }

    #[test]
    fn classical_genocchi_vanishes_below_the_order() {
        for r in 1..=4u32 {
            let s = classical_genocchi_series(&rat(1, 3), r, 2, 10).unwrap();
            for k in 0..r as usize {
                assert!(s.coeff(k).is_zero(), "r = {r}, k = {k}");
            }
        }
    }

    #[test]
    fn genocchi_shift_recovers_euler_coefficients() {
        let w = rat(1, 3);
        for r in 1..=3u32 {
            let e = classical_euler_series(&w, r, 1, 12).unwrap();
            let g = classical_genocchi_series(&w, r, 1, 12).unwrap();
            for n in 0..=(12 - r as usize) {
                let factor =
                    Rat::from_integer(crate::numerics::factorial(r) * binom((n + r as usize) as u64, r as u64));
                assert_eq!(g.coeff(n + r as usize), &(e.coeff(n) * factor));
            }
        }
    }

    #[test]
    fn cos_genocchi_at_q_one_is_classical() {
        for r in 1..=3u32 {
            let cos = cos_genocchi_series(1, r, &Rat::one(), 8).unwrap();
            let classical = classical_genocchi_series(&Rat::one(), r, 0, 8).unwrap();
            assert_eq!(cos, classical);
        }
    }

    #[test]
    fn cos_genocchi_frozen_values() {
        // hand-derived by series inversion: h = 1, r = 1, q = 1/2
        let s = cos_genocchi_series(1, 1, &rat(1, 2), 4).unwrap();
        let expect = vec![rat(0, 1), rat(4, 3), rat(-8, 9), rat(-4, 9), rat(16, 27)];
        assert_eq!(s.coeffs(), &expect[..]);
    }

    #[test]
    fn cos_genocchi_singular_factor_reports_v() {
        // q = -1, h = 1: factor v = 0 already has q^(h-v) = -1
        let r = cos_genocchi_series(1, 2, &-Rat::one(), 4);
        assert!(matches!(r, Err(Error::SingularFactor { v: 0 })));
    }

    #[test]
    fn comparator_differs_from_twisted_family() {
        // the comparator at (q = 1/2, h = 1) is not the twisted family at
        // w = 1/2: they already disagree at n = 1 (4/3 vs 1)
        let cos = cos_genocchi_series(1, 1, &rat(1, 2), 6).unwrap();
        let ctx = QContext::new(rat(1, 2), rat(1, 2), 1).unwrap();
        let mut witness = None;
        for n in 0..=6u32 {
            let g = genocchi_number(&GenocchiQuery::number(n, ctx.clone())).unwrap();
            if &g != cos.coeff(n as usize) {
                witness = Some(n);
                break;
            }
        }
        assert_eq!(witness, Some(1));
    }

    #[test]
    fn egf_coefficients_approach_euler_values() {
        let w = rat(1, 2);
        let q = rat(1, 3);
        for r in [1u32, 2] {
            let egf = q_euler_egf(&w, &q, r, 0, 60, 8).unwrap();
            let ctx = QContext::new(q.clone(), w.clone(), r).unwrap();
            for n in 0..=8u32 {
                let closed = euler_number_closed(&EulerQuery::number(n, ctx.clone())).unwrap();
                let diff = (egf.series.coeff(n as usize) - closed)
                    .abs()
                    .to_f64()
                    .unwrap();
                assert!(
                    diff <= egf.tail_bounds[n as usize],
                    "n = {n}, r = {r}: diff {diff:e} above bound {:e}",
                    egf.tail_bounds[n as usize]
                );
                assert!(egf.tail_bounds[n as usize] < 1e-8);
            }
        }
    }

    #[test]
    fn egf_with_x_matches_euler_poly() {
        let w = rat(1, 2);
        let q = rat(1, 2);
        let egf = q_euler_egf(&w, &q, 1, 1, 80, 4).unwrap();
        let ctx = QContext::new(q, w, 1).unwrap();
        let closed =
            euler_poly_closed(&EulerQuery::poly(2, ctx, Argument::Integer(1))).unwrap();
        let diff = (egf.series.coeff(2) - closed).abs().to_f64().unwrap();
        assert!(diff <= egf.tail_bounds[2] && egf.tail_bounds[2] <= 1e-12);
    }

    #[test]
    fn egf_rejects_large_twist_or_deformation() {
        assert!(q_euler_egf(&rat(3, 2), &rat(1, 2), 1, 0, 10, 4).is_err());
        assert!(q_euler_egf(&rat(1, 2), &rat(3, 2), 1, 0, 10, 4).is_err());
    }
}
