//! Coefficient scalars for polynomial arithmetic. The same generic kernels
//! run over floating complex numbers and over exact Gaussian rationals.

use crate::rational::GaussianRational;
use num_complex::{Complex, Complex64};
use num_traits::{One, Zero};
use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A field usable as polynomial coefficients.
pub trait Coeff:
    Clone
    + PartialEq
    + Debug
    + Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    /// True when arithmetic is exact and equality is decidable.
    const EXACT: bool;

    fn from_i64(n: i64) -> Self;
    /// Approximate absolute value, for pivoting and tolerance checks.
    fn magnitude(&self) -> f64;
    /// Numeric view.
    fn to_c64(&self) -> Complex64;
    /// Distinct sample nodes for evaluation-interpolation schemes.
    ///
    /// Floating types use points on a circle (well conditioned at any
    /// count); exact types use small integers.
    fn interp_nodes(count: usize) -> Vec<Self>;
}

macro_rules! impl_coeff_complex_float {
    ($t:ty) => {
        impl Coeff for Complex<$t> {
            const EXACT: bool = false;

            fn from_i64(n: i64) -> Self {
                Complex::new(n as $t, 0.0)
            }

            fn magnitude(&self) -> f64 {
                self.norm() as f64
            }

            fn to_c64(&self) -> Complex64 {
                Complex64::new(self.re as f64, self.im as f64)
            }

            fn interp_nodes(count: usize) -> Vec<Self> {
                let radius = 1.25 as $t;
                let tau = std::f64::consts::TAU as $t;
                (0..count)
                    .map(|k| {
                        let theta = tau * (k as $t) / (count as $t);
                        Complex::from_polar(radius, theta)
                    })
                    .collect()
            }
        }
    };
}

impl_coeff_complex_float!(f32);
impl_coeff_complex_float!(f64);

impl Coeff for GaussianRational {
    const EXACT: bool = true;

    fn from_i64(n: i64) -> Self {
        GaussianRational::from_i64(n)
    }

    fn magnitude(&self) -> f64 {
        self.to_c64().norm()
    }

    fn to_c64(&self) -> Complex64 {
        GaussianRational::to_c64(self)
    }

    fn interp_nodes(count: usize) -> Vec<Self> {
        (0..count).map(|k| GaussianRational::from_i64(k as i64)).collect()
    }
}
