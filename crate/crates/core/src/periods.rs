//! Exact integration of 3-forms over the unit 3-sphere and the resulting
//! obstruction certificates, plus a Gauss-Legendre quadrature oracle.
//!
//! Periods are computed exactly from monomial moments: obstruction is a
//! yes/no certificate and must not depend on a tolerance. The numeric
//! quadrature exists only to cross-check.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::field::SymField;
use crate::forms::{flux3form, DiffForm};
use crate::scalar::{ec_from_rat, ec_is_zero, Complex64, ExactComplex};

/// An exact rational multiple of pi^2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiSquaredValue {
    pub coeff: ExactComplex,
}

impl PiSquaredValue {
    pub fn zero() -> PiSquaredValue {
        PiSquaredValue {
            coeff: crate::scalar::ec_zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        ec_is_zero(&self.coeff)
    }

    pub fn add(&self, o: &PiSquaredValue) -> PiSquaredValue {
        PiSquaredValue {
            coeff: self.coeff.clone() + o.coeff.clone(),
        }
    }

    pub fn to_f64(&self) -> Complex64 {
        let pi2 = std::f64::consts::PI * std::f64::consts::PI;
        crate::scalar::ec_to_f64(&self.coeff) * Complex64::new(pi2, 0.0)
    }
}

fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Exact moment of a monomial over the unit 3-sphere:
/// for all exponents even (`alpha_i = 2 n_i`),
/// `integral = 2 pi^2 prod_i (2n_i)!/(4^{n_i} n_i!) / (N+1)!` with
/// `N = sum n_i`; zero whenever any exponent is odd.
pub fn sphere_moment(alpha: [u16; 4]) -> PiSquaredValue {
    if alpha.iter().any(|&a| a % 2 == 1) {
        return PiSquaredValue::zero();
    }
    let n: Vec<u64> = alpha.iter().map(|&a| (a / 2) as u64).collect();
    let big_n: u64 = n.iter().sum();
    let mut num = BigInt::from(2);
    let mut den = BigInt::one();
    for &ni in &n {
        num *= factorial(2 * ni);
        den *= BigInt::from(4u32).pow(ni as u32) * factorial(ni);
    }
    den *= factorial(big_n + 1);
    PiSquaredValue {
        coeff: ec_from_rat(BigRational::new(num, den)),
    }
}

/// Integral of a coefficient field restricted to the unit sphere
/// (`r2 = 1`) against `x_axis dS`.
fn moment_of_field(f: &SymField, axis: usize) -> PiSquaredValue {
    let mut acc = PiSquaredValue::zero();
    for (mono, coeff) in f.num().terms() {
        let mut e = mono.0;
        e[axis] += 1;
        let m = sphere_moment(e);
        acc = acc.add(&PiSquaredValue {
            coeff: coeff.clone() * m.coeff,
        });
    }
    acc
}

/// Exact period of a 3-form over the unit 3-sphere: pulls back through
/// the outward-normal contraction,
/// `int w = int (w_123 x0 - w_023 x1 + w_013 x2 - w_012 x3) dS`,
/// with `r2 = 1` on the sphere. With homogeneity degree -3 the period is
/// scale-invariant; other degrees integrate the unit-sphere restriction.
pub fn period_s3(w: &DiffForm) -> PiSquaredValue {
    assert_eq!(w.degree(), 3, "period_s3 takes 3-forms");
    let mut acc = PiSquaredValue::zero();
    for (missing, idx, sign) in [
        (0usize, [1u8, 2, 3], 1i64),
        (1, [0, 2, 3], -1),
        (2, [0, 1, 3], 1),
        (3, [0, 1, 2], -1),
    ] {
        let c = w.coeff(&idx);
        let m = moment_of_field(&c, missing);
        acc = acc.add(&PiSquaredValue {
            coeff: m.coeff * crate::scalar::ec_int(sign),
        });
    }
    acc
}

/// Certificate for the existence of a global regular extension on
/// punctured R^4: a harmonic `h` is the real part of a regular function
/// there exactly when the period of its flux 3-form vanishes.
#[derive(Clone, Debug, PartialEq)]
pub struct ObstructionCertificate {
    pub h: SymField,
    pub period: PiSquaredValue,
    pub obstructed: bool,
}

pub fn obstruction_certificate(h: &SymField) -> Result<ObstructionCertificate> {
    if !h.laplacian().is_zero() {
        return Err(Error::NotHarmonic);
    }
    let period = period_s3(&flux3form(h));
    let obstructed = !period.is_zero();
    Ok(ObstructionCertificate {
        h: h.clone(),
        period,
        obstructed,
    })
}

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on
/// the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // Chebyshev-based initial guess.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_p(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_p(n, x);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

fn legendre_p(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let pk = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = pk;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Numeric period of a 3-form over the sphere of the given radius, by a
/// product Gauss-Legendre rule in hyperspherical coordinates:
/// `x = R (cos a, sin a cos b, sin a sin b cos c, sin a sin b sin c)`,
/// `dS = R^3 sin^2 a sin b da db dc`.
pub fn period_s3_numeric(w: &DiffForm, radius: f64, n: usize) -> Complex64 {
    assert_eq!(w.degree(), 3, "period_s3_numeric takes 3-forms");
    let (nodes, weights) = gauss_legendre(n);
    let pi = std::f64::consts::PI;
    let mut acc = Complex64::new(0.0, 0.0);
    // map [-1,1] -> [0,pi] twice and [0,2pi] once
    for (ia, &na) in nodes.iter().enumerate() {
        let a = 0.5 * pi * (na + 1.0);
        let wa = weights[ia] * 0.5 * pi;
        for (ib, &nb) in nodes.iter().enumerate() {
            let b = 0.5 * pi * (nb + 1.0);
            let wb = weights[ib] * 0.5 * pi;
            for (ic, &nc) in nodes.iter().enumerate() {
                let c = pi * (nc + 1.0);
                let wc = weights[ic] * pi;
                let p = [
                    radius * a.cos(),
                    radius * a.sin() * b.cos(),
                    radius * a.sin() * b.sin() * c.cos(),
                    radius * a.sin() * b.sin() * c.sin(),
                ];
                let jac = radius.powi(3) * a.sin().powi(2) * b.sin();
                let mut integrand = Complex64::new(0.0, 0.0);
                for (missing, idx, sign) in [
                    (0usize, [1u8, 2, 3], 1.0f64),
                    (1, [0, 2, 3], -1.0),
                    (2, [0, 1, 3], 1.0),
                    (3, [0, 1, 2], -1.0),
                ] {
                    let cf = w.coeff(&idx);
                    if cf.is_zero() {
                        continue;
                    }
                    let v = cf.eval_point(p).expect("point away from origin");
                    integrand += v * (p[missing] / radius) * sign;
                }
                acc += integrand * jac * wa * wb * wc;
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ec_int, ec_rat};

    #[test]
    fn moment_examples() {
        // volume of S^3
        assert_eq!(sphere_moment([0, 0, 0, 0]).coeff, ec_int(2));
        // odd symmetry
        assert!(sphere_moment([1, 0, 0, 0]).is_zero());
        // x0^2 -> pi^2 / 2
        assert_eq!(sphere_moment([2, 0, 0, 0]).coeff, ec_rat(1, 2));
        // x0^2 x1^2 x2^2 x3^2: 2 * (1/2)^4 / 5! = 1/960
        assert_eq!(sphere_moment([2, 2, 2, 2]).coeff, ec_rat(1, 960));
    }

    #[test]
    fn moments_match_quadrature() {
        // Wrap x^alpha in the outward-normal 3-form so the sphere pullback
        // integrand is exactly x^alpha (times r2 = 1), then cross-check the
        // exact moment against the quadrature rule.
        for alpha in [[0u16, 0, 0, 0], [2, 0, 0, 0], [0, 2, 2, 0]] {
            let f = SymField::new(crate::poly::Poly4::monomial(alpha, crate::scalar::ec_one()), 0);
            let mut w = DiffForm::zero(3);
            w.add_term(&[1, 2, 3], f.mul(&SymField::var(0)));
            w.add_term(&[0, 2, 3], f.mul(&SymField::var(1)).neg());
            w.add_term(&[0, 1, 3], f.mul(&SymField::var(2)));
            w.add_term(&[0, 1, 2], f.mul(&SymField::var(3)).neg());
            let exact = sphere_moment(alpha).to_f64();
            assert_eq!(period_s3(&w).coeff, sphere_moment(alpha).coeff);
            let numeric = period_s3_numeric(&w, 1.0, 24);
            assert!(
                (numeric - exact).norm() / exact.norm() < 1e-9,
                "moment {:?}: quadrature {} vs exact {}",
                alpha,
                numeric,
                exact
            );
        }
        // flux of the fundamental harmonic: exact 4 pi^2
        let w = flux3form(&SymField::inv_r2_pow(1));
        let exact = period_s3(&w);
        assert_eq!(exact.coeff, ec_int(4));
        let numeric = period_s3_numeric(&w, 1.0, 24);
        let expected = exact.to_f64();
        assert!(
            (numeric - expected).norm() / expected.norm() < 1e-9,
            "quadrature {} vs exact {}",
            numeric,
            expected
        );
    }

    #[test]
    fn period_examples() {
        // exact forms have zero period (Stokes)
        let mut u = DiffForm::zero(2);
        u.add_term(&[0, 1], SymField::var(2).pow(3));
        u.add_term(&[1, 3], SymField::var(0).mul(&SymField::var(2)));
        let w = crate::forms::exterior_d(&u);
        assert!(period_s3(&w).is_zero());
        // flux3form(x0): all moments odd
        assert!(period_s3(&flux3form(&SymField::var(0))).is_zero());
        // flux3form(1/r2) = 4 pi^2 (checked above), scale invariance:
        let w = flux3form(&SymField::inv_r2_pow(1));
        for radius in [0.5, 1.0, 2.0] {
            let numeric = period_s3_numeric(&w, radius, 24);
            let expected = period_s3(&w).to_f64();
            assert!((numeric - expected).norm() / expected.norm() < 1e-9);
        }
    }

    #[test]
    fn obstruction_examples() {
        // degree-2 harmonic: no obstruction
        let h = SymField::var(0).pow(2).sub(&SymField::var(1).pow(2));
        let cert = obstruction_certificate(&h).unwrap();
        assert!(!cert.obstructed);
        // fundamental harmonic: obstructed with witness 4 pi^2
        let cert = obstruction_certificate(&SymField::inv_r2_pow(1)).unwrap();
        assert!(cert.obstructed);
        assert_eq!(cert.period.coeff, ec_int(4));
        // constants: flux vanishes
        let cert = obstruction_certificate(&SymField::one()).unwrap();
        assert!(!cert.obstructed);
        // non-harmonic input is rejected
        assert!(obstruction_certificate(&SymField::var(0).pow(2)).is_err());
    }
}
