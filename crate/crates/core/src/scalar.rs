//! Gaussian-rational scalars: exact complex numbers with `BigRational`
//! real and imaginary parts. This is the coefficient field for everything
//! else in the crate.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Exact complex scalar with arbitrary-precision rational parts.
pub type ExactComplex = Complex<BigRational>;

/// Floating-point complex value used by numeric evaluation.
pub type Complex64 = Complex<f64>;

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn ec_zero() -> ExactComplex {
    ExactComplex::zero()
}

pub fn ec_one() -> ExactComplex {
    ExactComplex::one()
}

/// The imaginary unit.
pub fn ec_i() -> ExactComplex {
    ExactComplex::new(BigRational::zero(), BigRational::one())
}

pub fn ec_int(n: i64) -> ExactComplex {
    ExactComplex::new(rat(n, 1), BigRational::zero())
}

pub fn ec_rat(num: i64, den: i64) -> ExactComplex {
    ExactComplex::new(rat(num, den), BigRational::zero())
}

/// `re_n/re_d + (im_n/im_d) i`.
pub fn ec(re_n: i64, re_d: i64, im_n: i64, im_d: i64) -> ExactComplex {
    ExactComplex::new(rat(re_n, re_d), rat(im_n, im_d))
}

pub fn ec_from_rat(re: BigRational) -> ExactComplex {
    ExactComplex::new(re, BigRational::zero())
}

/// Complex conjugate.
pub fn ec_conj(a: &ExactComplex) -> ExactComplex {
    ExactComplex::new(a.re.clone(), -a.im.clone())
}

pub fn ec_is_zero(a: &ExactComplex) -> bool {
    a.re.is_zero() && a.im.is_zero()
}

pub fn ec_is_real(a: &ExactComplex) -> bool {
    a.im.is_zero()
}

/// Exact inverse; `None` for zero.
pub fn ec_inv(a: &ExactComplex) -> Option<ExactComplex> {
    if ec_is_zero(a) {
        return None;
    }
    let n = a.re.clone() * a.re.clone() + a.im.clone() * a.im.clone();
    Some(ExactComplex::new(a.re.clone() / n.clone(), -a.im.clone() / n))
}

pub fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back to a quotient of approximations for huge numerators.
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn ec_to_f64(a: &ExactComplex) -> Complex64 {
    Complex64::new(rat_to_f64(&a.re), rat_to_f64(&a.im))
}
