//! Lerch- and Hurwitz-type q-zeta functions of a complex argument.
//!
//! Both families are twisted Dirichlet-type series in the q-bracket,
//! with r-fold binomial weights:
//!
//! ```text
//! lerch:   [2]_q^r sum_{m >= 1} binom(m+r-1, m) (-w)^m [m]_q^{-s}
//! hurwitz: [2]_q^r sum_{m >= 0} binom(m+r-1, m) (-w)^m [m+x]_q^{-s}
//! ```
//!
//! for 0 < q < 1, real twist w, and x > 0. Powers of the (positive
//! real) bracket use the principal branch. At s = -k with k >= 1 the
//! Lerch values are the order-r twisted q-Euler numbers E_k and the
//! Hurwitz values the polynomials E_k(x); at k = 0 the Lerch sum is
//! short of E_0 by exactly [2]_q^r, its missing m = 0 term.
//!
//! Two disjoint evaluation routes keep each other honest:
//!
//! - [`Method::Direct`]: partial summation with a rigorous geometric
//!   tail bound. Requires |w| <= 1 - delta so the bound closes.
//! - [`Method::Accelerated`]: a sequence transformation of the twist
//!   series (partial sums rewritten against forward differences of the
//!   bracket factor). Still usable at |w| = 1, but its error estimate
//!   is the empirical stagnation of the last few stages, not a bound.

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::qeuler::{euler_number_closed, euler_poly_closed, Argument, EulerQuery, QContext};
use crate::{C64, Rat};

/// Iteration cap for [`Method::Direct`].
pub const DIRECT_TERM_CAP: usize = 100_000;
/// Stage cap for [`Method::Accelerated`].
pub const ACCEL_STAGE_CAP: usize = 2_000;
/// Default target for the reported error estimate.
pub const DEFAULT_TOL: f64 = 1e-12;
/// Default margin keeping the direct route's |w| away from 1.
pub const DEFAULT_DELTA: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Pick [`Method::Direct`] when |w| <= 1 - delta, else the
    /// accelerated route.
    Auto,
    Direct,
    Accelerated,
}

/// One evaluation request; build with [`ZetaQuery::lerch`] or
/// [`ZetaQuery::hurwitz`] and adjust with the `with_*` methods.
#[derive(Clone, Debug)]
pub struct ZetaQuery {
    pub s: C64,
    pub q: f64,
    pub w: f64,
    pub r: u32,
    /// `None` evaluates the Lerch form, `Some(x)` the Hurwitz form.
    pub x: Option<f64>,
    pub method: Method,
    pub tol: f64,
    pub delta: f64,
}

impl ZetaQuery {
    pub fn lerch(s: C64, q: f64, w: f64, r: u32) -> Self {
        ZetaQuery {
            s,
            q,
            w,
            r,
            x: None,
            method: Method::Auto,
            tol: DEFAULT_TOL,
            delta: DEFAULT_DELTA,
        }
    }

    pub fn hurwitz(s: C64, q: f64, w: f64, r: u32, x: f64) -> Self {
        ZetaQuery {
            x: Some(x),
            ..ZetaQuery::lerch(s, q, w, r)
        }
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.r == 0 {
            return Err(Error::InvalidArgument("order r must be >= 1".into()));
        }
        if !(self.q > 0.0 && self.q < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "deformation q must lie in (0, 1), got {}",
                self.q
            )));
        }
        if !self.w.is_finite() {
            return Err(Error::InvalidArgument("twist w must be finite".into()));
        }
        if self.w == -1.0 {
            return Err(Error::Divergence("twist w = -1 is a pole of both families".into()));
        }
        if !(self.s.re.is_finite() && self.s.im.is_finite()) {
            return Err(Error::InvalidArgument("argument s must be finite".into()));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidArgument("tolerance must be positive".into()));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::InvalidArgument("delta must lie in (0, 1)".into()));
        }
        if let Some(x) = self.x {
            if !(x > 0.0 && x.is_finite()) {
                return Err(Error::ExcludedArgument { x: format!("{x}") });
            }
        }
        Ok(())
    }

    fn resolve_method(&self) -> Result<Method> {
        match self.method {
            Method::Direct => {
                if self.w.abs() > 1.0 - self.delta {
                    Err(Error::MethodUnavailable {
                        modulus: self.w.abs(),
                    })
                } else {
                    Ok(Method::Direct)
                }
            }
            Method::Accelerated => Ok(Method::Accelerated),
            Method::Auto => {
                if self.w.abs() <= 1.0 - self.delta {
                    Ok(Method::Direct)
                } else {
                    Ok(Method::Accelerated)
                }
            }
        }
    }

    fn start_index(&self) -> u64 {
        if self.x.is_none() {
            1
        } else {
            0
        }
    }
}

/// An evaluated query: the value, the route that produced it, how many
/// terms or stages it took, and the error figure that route reports
/// (a bound for the direct route, a stagnation estimate otherwise).
#[derive(Clone, Debug)]
pub struct ZetaValue {
    pub value: C64,
    pub method: Method,
    pub error_estimate: f64,
    pub terms: usize,
}

/// `[m + x]_q` for the query's offset convention; integral indices go
/// through `powi`.
fn bracket(q: f64, m: u64, x: Option<f64>) -> f64 {
    let q_pow = match x {
        None => q.powi(m as i32),
        Some(v) if v.fract() == 0.0 && v <= 1e6 => q.powi(m as i32 + v as i32),
        Some(v) => q.powf(m as f64 + v),
    };
    (1.0 - q_pow) / (1.0 - q)
}

/// `b^{-s}` on the principal branch for b > 0; negative-integer s goes
/// through `powi` so that interpolation values carry no log/exp noise.
fn bracket_pow_neg_s(b: f64, s: C64) -> C64 {
    if s.im == 0.0 && s.re.fract() == 0.0 && s.re.abs() <= 1e9 {
        C64::new(b.powi(-s.re as i32), 0.0)
    } else {
        (-s * C64::new(b.ln(), 0.0)).exp()
    }
}

/// Neumaier-compensated accumulator; `value` folds the correction in.
#[derive(Default)]
struct Compensated {
    sum: f64,
    comp: f64,
}

impl Compensated {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Partial sum with the tail bounded by a dominating geometric series:
/// `binom(m+r-1, m) <= (m+1)^{r-1}` and the bracket power bounded by
/// its monotone extreme over the tail.
fn direct(query: &ZetaQuery) -> Result<ZetaValue> {
    let m0 = query.start_index();
    let r = query.r;
    let w_abs = query.w.abs();
    let neg_w = -query.w;
    let pre = (1.0 + query.q).powi(r as i32);
    let sup_bracket = 1.0 / (1.0 - query.q);

    let mut re = Compensated::default();
    let mut im = Compensated::default();
    let mut coeff = if m0 == 0 { 1.0 } else { r as f64 };
    let mut terms = 0usize;
    let mut m = m0;
    let mut last_tail = f64::INFINITY;
    loop {
        // can the tail starting at m already be certified below tol?
        let growth = ((m + 2) as f64 / (m + 1) as f64).powi(r as i32 - 1);
        let g = w_abs * growth;
        if g < 1.0 {
            let c_sup = if query.s.re >= 0.0 {
                bracket(query.q, m, query.x).powf(-query.s.re)
            } else {
                sup_bracket.powf(-query.s.re)
            };
            let tail =
                pre * ((m + 1) as f64).powi(r as i32 - 1) * w_abs.powi(m as i32) * c_sup
                    / (1.0 - g);
            last_tail = tail;
            if tail <= query.tol {
                let value = C64::new(re.value(), im.value()) * pre;
                return Ok(ZetaValue {
                    value,
                    method: Method::Direct,
                    error_estimate: tail,
                    terms,
                });
            }
        }
        if terms >= DIRECT_TERM_CAP {
            let value = C64::new(re.value(), im.value()) * pre;
            return Err(Error::NonConvergence {
                terms,
                estimate: last_tail,
                partial: format!("{value}"),
            });
        }
        if m > m0 {
            coeff *= (m + r as u64 - 1) as f64 / m as f64;
        }
        let t = bracket_pow_neg_s(bracket(query.q, m, query.x), query.s)
            * coeff
            * neg_w.powi(m as i32);
        re.add(t.re);
        im.add(t.im);
        terms += 1;
        m += 1;
    }
}

/// Sequence transformation: with z = -w and u = z / (1 - z), the twist
/// series `sum_j b_j z^j` is resummed as
/// `(1/(1-z)) sum_k u^k (delta^k b)_0` over forward differences of
/// `b_j = binom(j+m0+r-1, j+m0) [j+m0+x]_q^{-s}`. The differences decay
/// like powers of (1 - q), so the resummation converges even at
/// |w| = 1 where the original series only converges conditionally.
/// Stops when three consecutive stage increments sit below tol.
fn accelerated(query: &ZetaQuery) -> Result<ZetaValue> {
    let m0 = query.start_index();
    let r = query.r as u64;
    let z = -query.w;
    let u = z / (1.0 - z);
    // full prefactor [2]_q^r z^{m0} / (1 - z) applied per increment so
    // the stagnation test sees final-value scale
    let pre = (1.0 + query.q).powi(query.r as i32) * z.powi(m0 as i32) / (1.0 - z);

    let mut diag: Vec<C64> = Vec::with_capacity(64);
    let mut coeff = if m0 == 0 { 1.0 } else { query.r as f64 };
    let mut u_pow = 1.0f64;
    let mut value = C64::new(0.0, 0.0);
    let mut recent = [f64::INFINITY; 3];
    for k in 0..ACCEL_STAGE_CAP {
        let j = k as u64;
        if j > 0 {
            coeff *= (j + m0 + r - 1) as f64 / (j + m0) as f64;
        }
        let b = bracket_pow_neg_s(bracket(query.q, j + m0, query.x), query.s) * coeff;
        // push the new difference diagonal: entry i holds delta^i b_{k-i}
        let mut carry = b;
        for slot in diag.iter_mut() {
            let next = carry - *slot;
            *slot = carry;
            carry = next;
        }
        diag.push(carry);
        let inc = pre * u_pow * carry;
        value += inc;
        u_pow *= u;
        recent[k % 3] = inc.norm();
        if k >= 2 && recent.iter().all(|&a| a <= query.tol) {
            return Ok(ZetaValue {
                value,
                method: Method::Accelerated,
                error_estimate: recent.iter().sum(),
                terms: k + 1,
            });
        }
    }
    Err(Error::NonConvergence {
        terms: ACCEL_STAGE_CAP,
        estimate: recent.iter().cloned().fold(0.0, f64::max),
        partial: format!("{value}"),
    })
}

/// Evaluates the query with its resolved method.
pub fn evaluate(query: &ZetaQuery) -> Result<ZetaValue> {
    query.validate()?;
    match query.resolve_method()? {
        Method::Direct => direct(query),
        _ => accelerated(query),
    }
}

/// Lerch form; the query must carry no x.
pub fn lerch_zeta(query: &ZetaQuery) -> Result<ZetaValue> {
    if query.x.is_some() {
        return Err(Error::InvalidArgument(
            "lerch form takes no argument x; clear it or call hurwitz_zeta".into(),
        ));
    }
    evaluate(query)
}

/// Hurwitz form; the query must carry an x.
pub fn hurwitz_zeta(query: &ZetaQuery) -> Result<ZetaValue> {
    if query.x.is_none() {
        return Err(Error::InvalidArgument(
            "hurwitz form requires an argument x; set it or call lerch_zeta".into(),
        ));
    }
    evaluate(query)
}

/// One parameter point of an interpolation check grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub q: f64,
    pub w: f64,
    pub r: u32,
    /// `None` checks numbers against the Lerch form, `Some(x)` checks
    /// polynomials against the Hurwitz form.
    pub x: Option<f64>,
}

/// A verified interpolation value at s = -k.
#[derive(Clone, Debug)]
pub struct GridPoint {
    pub zeta: C64,
    pub target: f64,
    pub difference: f64,
}

/// A grid cell: its coordinates plus the per-cell outcome, so one bad
/// cell cannot take down the rest of the report.
#[derive(Debug)]
pub struct InterpolationCell {
    pub spec: GridSpec,
    pub k: u32,
    pub outcome: Result<GridPoint>,
}

fn interpolation_target(spec: &GridSpec, k: u32) -> Result<f64> {
    let to_rat = |v: f64| {
        Rat::from_float(v)
            .ok_or_else(|| Error::InvalidArgument(format!("{v} is not a finite parameter")))
    };
    match spec.x {
        Some(x) if x.fract() != 0.0 || x < 0.0 => {
            // fractional arguments have no exact closed sum; use the
            // floating closed sum as the target
            let ctx = QContext::new(spec.q, spec.w, spec.r)?;
            euler_poly_closed(&EulerQuery::poly(k, ctx, Argument::Real(x)))
        }
        Some(x) => {
            let ctx = QContext::new(to_rat(spec.q)?, to_rat(spec.w)?, spec.r)?;
            let exact =
                euler_poly_closed(&EulerQuery::poly(k, ctx, Argument::Integer(x as u64)))?;
            exact
                .to_f64()
                .ok_or_else(|| Error::InvalidArgument("target overflows f64".into()))
        }
        None => {
            let ctx = QContext::new(to_rat(spec.q)?, to_rat(spec.w)?, spec.r)?;
            let exact = euler_number_closed(&EulerQuery::number(k, ctx))?;
            exact
                .to_f64()
                .ok_or_else(|| Error::InvalidArgument("target overflows f64".into()))
        }
    }
}

/// Checks `zeta(-k) = E_k` (numbers) or `E_k(x)` (polynomials) for
/// every grid point and k = 1..=k_max, reporting the distance between
/// the complex zeta value and the exact target per cell.
pub fn interpolation_report(k_max: u32, grid: &[GridSpec]) -> Vec<InterpolationCell> {
    let mut cells = Vec::with_capacity(grid.len() * k_max as usize);
    for spec in grid {
        for k in 1..=k_max {
            let outcome = (|| {
                let s = C64::new(-(k as f64), 0.0);
                let query = match spec.x {
                    None => ZetaQuery::lerch(s, spec.q, spec.w, spec.r),
                    Some(x) => ZetaQuery::hurwitz(s, spec.q, spec.w, spec.r, x),
                };
                let zeta = evaluate(&query)?;
                let target = interpolation_target(spec, k)?;
                let difference = (zeta.value - C64::new(target, 0.0)).norm();
                Ok(GridPoint {
                    zeta: zeta.value,
                    target,
                    difference,
                })
            })();
            cells.push(InterpolationCell {
                spec: *spec,
                k,
                outcome,
            });
        }
    }
    cells
}
