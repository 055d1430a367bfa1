//! Scalar abstraction shared by the closed-sum formulas.
//!
//! The finite sums in [`crate::qeuler`] and the q-brackets in
//! [`crate::numerics`] are identical over exact rationals, real floats, and
//! complex floats; [`Scalar`] captures exactly the operations they need.
//! Exact arithmetic uses [`crate::Rat`], floating arithmetic `f32`/`f64`,
//! and the zeta module [`crate::C64`].

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::{C64, Rat};

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_bigint(n: &BigInt) -> Self;

    /// Integer power by binary exponentiation. `powi(0)` is one for every
    /// base, matching the 0^0 = 1 convention the series forms rely on.
    /// Negative exponents invert; the base must then be nonzero.
    fn powi(&self, exp: i32) -> Self;

    /// Principal real power. Defined only for positive real bases; every
    /// other base reports a branch ambiguity.
    fn powf(&self, exp: f64) -> Result<Self>;

    /// Magnitude as `f64`, used by truncation bounds. Lossy by design.
    fn abs_f64(&self) -> f64;
}

macro_rules! impl_scalar_float {
    ($t:ty) => {
        impl Scalar for $t {
            fn from_bigint(n: &BigInt) -> Self {
                n.to_f64().unwrap_or(f64::NAN) as $t
            }

            fn powi(&self, exp: i32) -> Self {
                if exp == 0 {
                    1.0
                } else {
                    <$t>::powi(*self, exp)
                }
            }

            fn powf(&self, exp: f64) -> Result<Self> {
                if *self > 0.0 {
                    Ok(<$t>::powf(*self, exp as $t))
                } else {
                    Err(Error::BranchAmbiguity {
                        base: format!("{}", self),
                        exponent: exp,
                    })
                }
            }

            fn abs_f64(&self) -> f64 {
                (*self as f64).abs()
            }
        }
    };
}

impl_scalar_float!(f32);
impl_scalar_float!(f64);

impl Scalar for C64 {
    fn from_bigint(n: &BigInt) -> Self {
        C64::new(n.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn powi(&self, exp: i32) -> Self {
        if exp == 0 {
            C64::new(1.0, 0.0)
        } else {
            C64::powi(self, exp)
        }
    }

    fn powf(&self, exp: f64) -> Result<Self> {
        if self.im == 0.0 && self.re > 0.0 {
            Ok(C64::new(self.re.powf(exp), 0.0))
        } else {
            Err(Error::BranchAmbiguity {
                base: format!("{}", self),
                exponent: exp,
            })
        }
    }

    fn abs_f64(&self) -> f64 {
        self.norm()
    }
}

impl Scalar for Rat {
    fn from_bigint(n: &BigInt) -> Self {
        Rat::from_integer(n.clone())
    }

    fn powi(&self, exp: i32) -> Self {
        if exp == 0 {
            Rat::one()
        } else {
            Pow::pow(self, exp)
        }
    }

    fn powf(&self, exp: f64) -> Result<Self> {
        Err(Error::BranchAmbiguity {
            base: format!("{}", self),
            exponent: exp,
        })
    }

    fn abs_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN).abs()
    }
}
