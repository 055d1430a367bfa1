//! Finite-level fermionic p-adic Riemann sums.
//!
//! The level-N sum over Z_p discretizes the alternating measure that
//! assigns `(-q)^x / [p^N]_{-q}` to the residue class `x + p^N Z_p`:
//!
//! ```text
//! S_N(f) = c_N * sum_{x=0}^{p^N - 1} f(x) (-q)^x,
//! c_N    = (1 + q) / (1 + q^{p^N}).
//! ```
//!
//! Everything here is exact rational arithmetic, so the shift identity
//! can be checked as an equation rather than a tolerance: for P = p^N,
//!
//! ```text
//! q S_N(f(.+1)) + S_N(f) - (1+q) f(0) = c_N q^P (f(P) - f(0)),
//! ```
//!
//! with an n-step analogue obtained by telescoping. Both sides go to
//! zero p-adically when q = 1 mod p, which is what the limit identity
//! asserts; at finite level they agree exactly.
//!
//! The r-fold sum over Z_p^r of `(-w)^{x_1 + ... + x_r}` times a power
//! of the q-bracket of the coordinate sum collapses by counting bounded
//! compositions, and its p-adic limit is the order-r twisted q-Euler
//! number; [`witt_verify`] compares levels against that target and
//! reports the p-adic valuation of the defect at each level.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numerics::{binom, is_odd_prime, padic_valuation, q_bracket_limit, Valuation};
use crate::qeuler::{euler_number_closed, EulerQuery, QContext};
use crate::scalar::Scalar;
use crate::Rat;

/// Largest number of sample points a single level may require.
pub const MAX_POINTS: u64 = 1_000_000;

/// A discretization level: the prime p and exponent N, carrying p^N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicLevel {
    p: u64,
    exponent: u32,
    point_count: u64,
}

impl PadicLevel {
    /// Requires an odd prime, N >= 1, and p^N <= [`MAX_POINTS`].
    pub fn new(p: u64, exponent: u32) -> Result<Self> {
        if !is_odd_prime(p) {
            return Err(Error::NotAnOddPrime(p));
        }
        if exponent == 0 {
            return Err(Error::InvalidArgument("level exponent must be >= 1".into()));
        }
        let mut point_count: u64 = 1;
        for _ in 0..exponent {
            point_count = point_count.checked_mul(p).unwrap_or(u64::MAX);
            if point_count > MAX_POINTS {
                return Err(Error::InvalidArgument(format!(
                    "level {p}^{exponent} exceeds the {MAX_POINTS}-point budget"
                )));
            }
        }
        Ok(PadicLevel {
            p,
            exponent,
            point_count,
        })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn point_count(&self) -> u64 {
        self.point_count
    }
}

/// Parameters that must sit in the unit-disc neighbourhood of 1 for the
/// level sums to converge p-adically.
#[derive(Clone, Debug)]
pub struct PadicParams {
    pub q: Rat,
    pub w: Rat,
}

impl PadicParams {
    /// Both q and w must satisfy v_p(value - 1) >= 1; the first violator
    /// is named in the error.
    pub fn validate_for(&self, p: u64) -> Result<()> {
        for (name, value) in [("q", &self.q), ("w", &self.w)] {
            let shifted = value - Rat::one();
            if padic_valuation(&shifted, p)? < Valuation::Finite(1) {
                return Err(Error::CongruenceViolation { p, name });
            }
        }
        Ok(())
    }
}

/// A function on the nonnegative integers sampled by the level sums.
#[derive(Clone)]
pub struct Integrand {
    label: String,
    f: Arc<dyn Fn(u64) -> Rat + Send + Sync>,
}

impl std::fmt::Debug for Integrand {
    fn fmt(&self, fmt: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fmt.debug_struct("Integrand").field("label", &self.label).finish()
    }
}

impl Integrand {
    pub fn new(label: impl Into<String>, f: impl Fn(u64) -> Rat + Send + Sync + 'static) -> Self {
        Integrand {
            label: label.into(),
            f: Arc::new(f),
        }
    }

    /// f(x) = 1.
    pub fn one() -> Self {
        Integrand::new("1", |_| Rat::one())
    }

    /// f(x) = x.
    pub fn coordinate() -> Self {
        Integrand::new("x", |x| Rat::from_integer(x.into()))
    }

    /// f(x) = [x]_q, read as x itself when q = 1.
    pub fn q_bracket(q: &Rat) -> Self {
        let q = q.clone();
        Integrand::new("[x]_q", move |x| q_bracket_limit(x as i32, &q))
    }

    /// f(x) = [x]_q^n.
    pub fn power(q: &Rat, n: u32) -> Self {
        let q = q.clone();
        Integrand::new(format!("[x]_q^{n}"), move |x| {
            Scalar::powi(&q_bracket_limit(x as i32, &q), n as i32)
        })
    }

    /// f(x) = w^x.
    pub fn twist(w: &Rat) -> Self {
        let w = w.clone();
        Integrand::new("w^x", move |x| Scalar::powi(&w, x as i32))
    }

    /// f(x + k).
    pub fn shifted(&self, k: u64) -> Self {
        let inner = self.f.clone();
        Integrand::new(format!("{}(.+{k})", self.label), move |x| inner(x + k))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn eval(&self, x: u64) -> Rat {
        (self.f)(x)
    }
}

/// The normalizing constant c_N = (1 + q) / (1 + q^{p^N}).
fn level_constant(q: &Rat, level: &PadicLevel) -> Result<Rat> {
    let q_pow = Scalar::powi(q, level.point_count() as i32);
    let denom = Rat::one() + q_pow;
    if denom.is_zero() {
        return Err(Error::ZeroDenominator(format!(
            "1 + q^{} vanishes at q = {q}",
            level.point_count()
        )));
    }
    Ok((Rat::one() + q) / denom)
}

/// Level-N sum `c_N sum_{x < p^N} f(x) (-q)^x`, exact.
pub fn riemann_sum(f: &Integrand, q: &Rat, level: &PadicLevel) -> Result<Rat> {
    let c = level_constant(q, level)?;
    let minus_q = -q.clone();
    let mut weight = Rat::one();
    let mut acc = Rat::zero();
    for x in 0..level.point_count() {
        acc += f.eval(x) * &weight;
        weight *= &minus_q;
    }
    Ok(c * acc)
}

/// One row of a shift-identity check at a single level.
#[derive(Clone, Debug)]
pub struct ShiftRow {
    pub level: u32,
    /// `q S_N(f(.+1)) + S_N(f) - (1+q) f(0)`, assembled from level sums.
    pub residual: Rat,
    /// `c_N q^P (f(P) - f(0))`, evaluated independently.
    pub closed_form: Rat,
    /// v_p of the residual.
    pub valuation: Valuation,
}

/// Evaluates the one-step shift identity at each exponent in `levels`.
/// The residual and its closed form are computed by disjoint routes and
/// should agree exactly; both shrink p-adically as the level grows.
pub fn check_shift_identity(
    f: &Integrand,
    q: &Rat,
    p: u64,
    levels: &[u32],
) -> Result<Vec<ShiftRow>> {
    let shifted = f.shifted(1);
    let mut rows = Vec::with_capacity(levels.len());
    for &exponent in levels {
        let level = PadicLevel::new(p, exponent)?;
        let big_p = level.point_count();
        let residual = q * riemann_sum(&shifted, q, &level)?
            + riemann_sum(f, q, &level)?
            - (Rat::one() + q) * f.eval(0);
        let closed_form = level_constant(q, &level)?
            * Scalar::powi(q, big_p as i32)
            * (f.eval(big_p) - f.eval(0));
        let valuation = padic_valuation(&residual, p)?;
        rows.push(ShiftRow {
            level: exponent,
            residual,
            closed_form,
            valuation,
        });
    }
    Ok(rows)
}

/// Evaluates the n-step shift identity
/// `q^n S_N(f(.+n)) + (-1)^{n-1} S_N(f)
///  = (1+q) sum_{l<n} (-1)^{n-1-l} q^l f(l) + residual`
/// whose exact residual telescopes to
/// `c_N q^P sum_{k<n} (-1)^{n-1-k} q^k (f(P+k) - f(k))`.
pub fn check_multi_shift(
    f: &Integrand,
    q: &Rat,
    p: u64,
    n: u32,
    levels: &[u32],
) -> Result<Vec<ShiftRow>> {
    if n == 0 {
        return Err(Error::InvalidArgument("shift count must be >= 1".into()));
    }
    let shifted = f.shifted(n as u64);
    let sign = |k: u32| -> Rat {
        if (n - 1 - k) % 2 == 0 {
            Rat::one()
        } else {
            -Rat::one()
        }
    };
    let mut boundary = Rat::zero();
    for l in 0..n {
        boundary += sign(l) * Scalar::powi(q, l as i32) * f.eval(l as u64);
    }
    let parity = if (n - 1) % 2 == 0 { Rat::one() } else { -Rat::one() };

    let mut rows = Vec::with_capacity(levels.len());
    for &exponent in levels {
        let level = PadicLevel::new(p, exponent)?;
        let big_p = level.point_count();
        let residual = Scalar::powi(q, n as i32) * riemann_sum(&shifted, q, &level)?
            + &parity * riemann_sum(f, q, &level)?
            - (Rat::one() + q) * &boundary;
        let mut defect = Rat::zero();
        for k in 0..n {
            defect += sign(k)
                * Scalar::powi(q, k as i32)
                * (f.eval(big_p + k as u64) - f.eval(k as u64));
        }
        let closed_form =
            level_constant(q, &level)? * Scalar::powi(q, big_p as i32) * defect;
        let valuation = padic_valuation(&residual, p)?;
        rows.push(ShiftRow {
            level: exponent,
            residual,
            closed_form,
            valuation,
        });
    }
    Ok(rows)
}

/// Number of r-tuples in `[0, bound)^r` with coordinate sum s: bounded
/// compositions by inclusion-exclusion over coordinates that overflow.
fn tuple_count(r: u32, bound: u64, s: u64) -> num_bigint::BigInt {
    let mut total = num_bigint::BigInt::zero();
    for j in 0..=r as u64 {
        if j * bound > s {
            break;
        }
        let term = binom(r as u64, j) * binom(s - j * bound + r as u64 - 1, r as u64 - 1);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// The r-fold level sum of `(-w)^{x_1+...+x_r} [x_1+...+x_r]_q^n`
/// collapsed along the coordinate sum:
/// `c_N^r sum_{s <= r(p^N - 1)} #{tuples with sum s} (-w)^s [s]_q^n`,
/// with the bracket read as s itself at q = 1.
pub fn multi_riemann_sum(n: u32, ctx: &QContext<Rat>, level: &PadicLevel) -> Result<Rat> {
    let c = level_constant(&ctx.q, level)?;
    let c_r = Scalar::powi(&c, ctx.r as i32);
    let bound = level.point_count();
    let s_max = (bound - 1) * ctx.r as u64;

    let mut acc = Rat::zero();
    let mut w_pow = Rat::one(); // (-w)^s
    let mut bracket = Rat::zero(); // [s]_q, incrementally [s+1] = [s] + q^s
    let mut q_pow = Rat::one(); // q^s
    for s in 0..=s_max {
        if s > 0 {
            w_pow *= -&ctx.w;
            bracket += &q_pow;
            q_pow *= &ctx.q;
        }
        let count = Rat::from_integer(tuple_count(ctx.r, bound, s));
        acc += count * &w_pow * Scalar::powi(&bracket, n as i32);
    }
    Ok(c_r * acc)
}

/// Same sum with the tuples enumerated outright; exponential in r, kept
/// as an independent cross-check for the collapsed form.
pub fn multi_riemann_sum_naive(n: u32, ctx: &QContext<Rat>, level: &PadicLevel) -> Result<Rat> {
    let c = level_constant(&ctx.q, level)?;
    let c_r = Scalar::powi(&c, ctx.r as i32);
    let bound = level.point_count();
    let mut tuple = vec![0u64; ctx.r as usize];
    let mut acc = Rat::zero();
    loop {
        let s: u64 = tuple.iter().sum();
        let mut weight = Rat::one();
        for &x in &tuple {
            weight = weight * Scalar::powi(&-ctx.q.clone(), x as i32);
        }
        // w^s q^{-s} against the product of (-q)^{x_i}
        let twist = Scalar::powi(&ctx.w, s as i32)
            * Scalar::powi(&ctx.q, -(s as i32));
        let bracket = q_bracket_limit(s as i32, &ctx.q);
        acc += weight * twist * Scalar::powi(&bracket, n as i32);
        // odometer
        let mut i = 0;
        loop {
            if i == tuple.len() {
                return Ok(c_r * acc);
            }
            tuple[i] += 1;
            if tuple[i] < bound {
                break;
            }
            tuple[i] = 0;
            i += 1;
        }
    }
}

/// One level of a convergence check against the q-Euler target.
#[derive(Clone, Debug)]
pub struct WittRow {
    pub level: u32,
    /// S_N minus the target value.
    pub difference: Rat,
    /// v_p of the difference.
    pub valuation: Valuation,
}

/// Compares the collapsed level sums against the order-r twisted q-Euler
/// number E_n (the classical value when q = 1) and reports the p-adic
/// valuation of the defect at each requested level. Valuations should
/// climb without bound; a bounded tail means the sums are not converging
/// to the target.
pub fn witt_verify(
    p: u64,
    ctx: &QContext<Rat>,
    n: u32,
    levels: &[u32],
) -> Result<Vec<WittRow>> {
    PadicParams {
        q: ctx.q.clone(),
        w: ctx.w.clone(),
    }
    .validate_for(p)?;
    let target = if ctx.q.is_one() {
        crate::genfunc::classical_euler_series(&ctx.w, ctx.r, 0, n as usize)?
            .coeff(n as usize)
            .clone()
    } else {
        euler_number_closed(&EulerQuery::number(n, ctx.clone()))?
    };
    let mut rows = Vec::with_capacity(levels.len());
    for &exponent in levels {
        let level = PadicLevel::new(p, exponent)?;
        let difference = multi_riemann_sum(n, ctx, &level)? - &target;
        let valuation = padic_valuation(&difference, p)?;
        rows.push(WittRow {
            level: exponent,
            difference,
            valuation,
        });
    }
    Ok(rows)
}

/// True when each valuation strictly exceeds the previous one, with one
/// exception: a residual that is already exactly zero has infinite
/// valuation and cannot deepen further, so consecutive `Infinite`s
/// count as still increasing. (This happens on real inputs: at w = q
/// the r-fold geometric sums cancel the normalizer and every level
/// hits the n = 0 target on the nose.)
pub fn strictly_increasing(vals: &[Valuation]) -> bool {
    vals.windows(2)
        .all(|w| w[0] < w[1] || (w[0] == Valuation::Infinite && w[1] == Valuation::Infinite))
}

/// True when no valuation drops below the previous one.
pub fn nondecreasing(vals: &[Valuation]) -> bool {
    vals.windows(2).all(|w| w[0] <= w[1])
}
