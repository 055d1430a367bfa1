//! Exact and floating arithmetic for higher-order twisted q-Euler and
//! q-Genocchi numbers and polynomials, together with the machinery used to
//! cross-check them against independent definitions:
//!
//! - [`numerics`]: q-brackets, binomial helpers, and p-adic valuations.
//! - [`qeuler`]: closed finite sums and truncated series for the twisted
//!   q-Euler and q-Genocchi families of arbitrary positive order.
//! - [`fermionic`]: finite-level fermionic p-adic Riemann sums, the shift
//!   identities they satisfy, and Witt-style verification of the q-Euler
//!   integral representation.
//! - [`genfunc`]: exponential generating series over exact rationals, the
//!   classical (q = 1) Euler/Genocchi series, and a partial-sum q-EGF.
//! - [`zeta`]: Lerch- and Hurwitz-type q-zeta functions whose values at
//!   negative integers interpolate the q-Euler family.
//!
//! Exact computations run over [`Rat`] (arbitrary-precision rationals) and
//! floating ones over `f64` or [`C64`]; the scalar-generic entry points in
//! [`qeuler`] and [`numerics`] accept any type implementing [`Scalar`].

pub mod error;
pub mod fermionic;
pub mod genfunc;
pub mod numerics;
pub mod qeuler;
pub mod scalar;
pub mod zeta;

/// Exact rational scalar used by every exact-mode computation.
pub type Rat = num_rational::BigRational;

/// Complex floating scalar used by the zeta module and floating cross-checks.
pub type C64 = num_complex::Complex<f64>;

pub use error::{Error, Result};
pub use fermionic::{
    check_multi_shift, check_shift_identity, multi_riemann_sum, nondecreasing, riemann_sum,
    strictly_increasing, witt_verify, Integrand, PadicLevel, PadicParams, ShiftRow, WittRow,
};
pub use genfunc::{
    classical_euler_series, classical_genocchi_series, cos_genocchi_series, q_euler_egf,
    EgfPartial, FormalSeries, DEFAULT_ORDER,
};
pub use numerics::{
    binom, factorial, neg_binom_coeff, padic_valuation, q_bracket, q_bracket_complex,
    q_bracket_limit, q_bracket_real, two_bracket, Valuation,
};
pub use qeuler::{
    euler_number_closed, euler_number_series, euler_poly_closed, genocchi_number, genocchi_poly,
    Argument, EulerQuery, GenocchiQuery, QContext, SeriesSum,
};
pub use scalar::Scalar;
pub use zeta::{
    evaluate as zeta_evaluate, hurwitz_zeta, interpolation_report, lerch_zeta, GridPoint,
    GridSpec, InterpolationCell, Method, ZetaQuery, ZetaValue,
};
