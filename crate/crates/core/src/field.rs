//! The working function class: quotients `p(x) / r2^m` with polynomial
//! numerator and denominator a power of `r2 = x0^2+x1^2+x2^2+x3^2`,
//! smooth on R^4 minus the origin and closed under +, *, and d/dx_i.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{Mono, Poly4};
use crate::scalar::{ec_int, ec_inv, ec_rat, Complex64, ExactComplex};

/// Canonical-form quotient `num / r2^m`: when `m > 0` the numerator is not
/// exactly divisible by `r2`, and the zero field has `m = 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymField {
    num: Poly4,
    m: u32,
}

impl SymField {
    /// Canonicalize `num / r2^m` by cancelling every exact `r2` factor.
    pub fn new(num: Poly4, m: u32) -> SymField {
        let mut num = num;
        let mut m = m;
        if num.is_zero() {
            return SymField { num, m: 0 };
        }
        while m > 0 {
            match num.div_exact_r2() {
                Some(q) => {
                    num = q;
                    m -= 1;
                }
                None => break,
            }
        }
        SymField { num, m }
    }

    pub fn zero() -> SymField {
        SymField::new(Poly4::zero(), 0)
    }

    pub fn one() -> SymField {
        SymField::new(Poly4::one(), 0)
    }

    pub fn constant(c: ExactComplex) -> SymField {
        SymField::new(Poly4::constant(c), 0)
    }

    pub fn var(axis: usize) -> SymField {
        SymField::new(Poly4::var(axis), 0)
    }

    pub fn r2() -> SymField {
        SymField::new(Poly4::r2(), 0)
    }

    /// `1 / r2^m`.
    pub fn inv_r2_pow(m: u32) -> SymField {
        SymField::new(Poly4::one(), m)
    }

    pub fn num(&self) -> &Poly4 {
        &self.num
    }

    pub fn denom_exp(&self) -> u32 {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Polynomial fields are exactly those with `m = 0`.
    pub fn is_polynomial(&self) -> bool {
        self.m == 0
    }

    pub fn add(&self, other: &SymField) -> SymField {
        let m = self.m.max(other.m);
        let a = self.num.mul(&Poly4::r2().pow(m - self.m));
        let b = other.num.mul(&Poly4::r2().pow(m - other.m));
        SymField::new(a.add(&b), m)
    }

    pub fn neg(&self) -> SymField {
        SymField {
            num: self.num.neg(),
            m: self.m,
        }
    }

    pub fn sub(&self, other: &SymField) -> SymField {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &SymField) -> SymField {
        SymField::new(self.num.mul(&other.num), self.m + other.m)
    }

    pub fn scale(&self, c: &ExactComplex) -> SymField {
        SymField::new(self.num.scale(c), self.m)
    }

    /// Division by a unit of the ring, i.e. `c * r2^k` with `c != 0`.
    /// Returns `None` when the divisor is not a unit.
    pub fn div_unit(&self, divisor: &SymField) -> Option<SymField> {
        let (c, net) = divisor.as_unit()?;
        let inv = ec_inv(&c)?;
        // self / (c r2^net) = self * c^-1 * r2^-net
        let scaled = self.scale(&inv);
        let (new_m, extra_pow) = k_neg_part(scaled.m, net);
        Some(SymField::new(
            scaled.num.mul(&Poly4::r2().pow(extra_pow)),
            new_m,
        ))
    }

    /// Decompose a unit of the ring as `c * r2^net` with `c != 0` and a
    /// signed net exponent (negative when the power of `r2` sits in the
    /// denominator). Returns `None` for non-units.
    fn as_unit(&self) -> Option<(ExactComplex, i64)> {
        if self.num.is_zero() {
            return None;
        }
        if self.num.num_terms() != 1 {
            // canonical numerators divisible by r2 were already cancelled,
            // so a unit numerator is either a constant or c*r2^j; the
            // latter only occurs with m = 0.
            if self.m != 0 {
                return None;
            }
            // try peeling r2 factors
            let mut q = self.num.clone();
            let mut j = 0i64;
            while let Some(next) = q.div_exact_r2() {
                q = next;
                j += 1;
            }
            if q.num_terms() == 1 {
                let (mono, c) = q.leading().map(|(m, c)| (*m, c.clone()))?;
                if mono == Mono::ONE {
                    return Some((c, j));
                }
            }
            return None;
        }
        let (mono, c) = self.num.leading().map(|(m, c)| (*m, c.clone()))?;
        if mono == Mono::ONE {
            Some((c, -(self.m as i64)))
        } else {
            None
        }
    }

    /// Exact partial derivative: for `p / r2^m` the quotient rule gives
    /// `(dp * r2 - 2m x_axis p) / r2^(m+1)`.
    pub fn partial(&self, axis: usize) -> SymField {
        assert!(axis < 4, "axis out of range");
        if self.m == 0 {
            return SymField::new(self.num.partial(axis), 0);
        }
        let dp = self.num.partial(axis).mul(&Poly4::r2());
        let corr = Poly4::var(axis)
            .mul(&self.num)
            .scale(&ec_int(-2 * self.m as i64));
        SymField::new(dp.add(&corr), self.m + 1)
    }

    /// Componentwise Laplacian.
    pub fn laplacian(&self) -> SymField {
        let mut acc = SymField::zero();
        for axis in 0..4 {
            acc = acc.add(&self.partial(axis).partial(axis));
        }
        acc
    }

    /// Split by homogeneity degree `n - 2m` (numerator degree minus twice
    /// the denominator exponent). Parts are returned ascending by degree
    /// and sum back to the original field.
    pub fn homogeneous_parts(&self) -> Vec<(i64, SymField)> {
        self.num
            .homogeneous_parts()
            .into_iter()
            .map(|(deg, part)| {
                (
                    deg as i64 - 2 * self.m as i64,
                    SymField::new(part, self.m),
                )
            })
            .collect()
    }

    /// Floating evaluation of `num(p) / r2(p)^m`.
    pub fn eval_point(&self, p: [f64; 4]) -> Result<Complex64> {
        let r2 = p.iter().map(|v| v * v).sum::<f64>();
        if self.m > 0 && r2 == 0.0 {
            return Err(Error::EvalAtSingularity);
        }
        Ok(self.num.eval(p) / Complex64::new(r2.powi(self.m as i32), 0.0))
    }

    /// Coefficient-wise complex conjugation.
    pub fn conj(&self) -> SymField {
        SymField {
            num: self.num.conj(),
            m: self.m,
        }
    }

    /// Real part of the coefficients: `(f + conj f)/2`.
    pub fn re_part(&self) -> SymField {
        self.add(&self.conj()).scale(&ec_rat(1, 2))
    }

    /// Imaginary part of the coefficients: `(f - conj f)/(2i)`.
    pub fn im_part(&self) -> SymField {
        self.sub(&self.conj())
            .scale(&ec_inv(&crate::scalar::ec(0, 1, 2, 1)).unwrap())
    }

    pub fn is_real(&self) -> bool {
        self.im_part().is_zero()
    }

    pub fn pow(&self, n: u32) -> SymField {
        let mut out = SymField::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }
}

fn k_neg_part(m: u32, net: i64) -> (u32, u32) {
    // self has denominator exponent m; dividing by r2^net yields
    // denominator exponent m + net which may be negative: then multiply
    // the numerator by r2^(-(m+net)) instead.
    let total = m as i64 + net;
    if total >= 0 {
        (total as u32, 0)
    } else {
        (0, (-total) as u32)
    }
}

impl fmt::Display for SymField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / r2^{}", self.num, self.m)
        }
    }
}
