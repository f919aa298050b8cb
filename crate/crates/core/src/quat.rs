//! Quaternion algebra over `SymField` components, the Cauchy-Fueter
//! operator `D` and its conjugate, and the tau embedding into complex
//! 2x2 matrices.
//!
//! A quaternion-valued function is stored as four components
//! `u = w + x i + y j + z k`. The complex-pair view `u = u0 + j u1`
//! (with the coefficient imaginary unit playing the role of the
//! quaternionic i) is provided by [`Quat::from_pair`] / [`Quat::to_pair`];
//! the rule `j c = conj(c) j` is confined to those two conversions.

use crate::field::SymField;
use crate::scalar::ExactComplex;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Quat {
    pub w: SymField,
    pub x: SymField,
    pub y: SymField,
    pub z: SymField,
}

impl Quat {
    pub fn new(w: SymField, x: SymField, y: SymField, z: SymField) -> Quat {
        Quat { w, x, y, z }
    }

    pub fn zero() -> Quat {
        Quat::new(
            SymField::zero(),
            SymField::zero(),
            SymField::zero(),
            SymField::zero(),
        )
    }

    pub fn scalar(f: SymField) -> Quat {
        Quat::new(f, SymField::zero(), SymField::zero(), SymField::zero())
    }

    pub fn one() -> Quat {
        Quat::scalar(SymField::one())
    }

    /// The coordinate function `q = x0 + x1 i + x2 j + x3 k`.
    pub fn coordinate() -> Quat {
        Quat::new(
            SymField::var(0),
            SymField::var(1),
            SymField::var(2),
            SymField::var(3),
        )
    }

    /// Basis unit `e_a` for `a` in `0..4` (1, i, j, k).
    pub fn unit(a: usize) -> Quat {
        let mut u = Quat::zero();
        *u.comp_mut(a) = SymField::one();
        u
    }

    pub fn comp(&self, a: usize) -> &SymField {
        match a {
            0 => &self.w,
            1 => &self.x,
            2 => &self.y,
            3 => &self.z,
            _ => panic!("component out of range"),
        }
    }

    fn comp_mut(&mut self, a: usize) -> &mut SymField {
        match a {
            0 => &mut self.w,
            1 => &mut self.x,
            2 => &mut self.y,
            3 => &mut self.z,
            _ => panic!("component out of range"),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.w.is_zero() && self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn add(&self, o: &Quat) -> Quat {
        Quat::new(
            self.w.add(&o.w),
            self.x.add(&o.x),
            self.y.add(&o.y),
            self.z.add(&o.z),
        )
    }

    pub fn sub(&self, o: &Quat) -> Quat {
        Quat::new(
            self.w.sub(&o.w),
            self.x.sub(&o.x),
            self.y.sub(&o.y),
            self.z.sub(&o.z),
        )
    }

    pub fn neg(&self) -> Quat {
        Quat::new(self.w.neg(), self.x.neg(), self.y.neg(), self.z.neg())
    }

    pub fn scale(&self, c: &ExactComplex) -> Quat {
        Quat::new(
            self.w.scale(c),
            self.x.scale(c),
            self.y.scale(c),
            self.z.scale(c),
        )
    }

    /// Quaternion conjugate `w - x i - y j - z k` (coefficients untouched).
    pub fn conj(&self) -> Quat {
        Quat::new(self.w.clone(), self.x.neg(), self.y.neg(), self.z.neg())
    }

    /// Real part in the quaternionic sense: the scalar component.
    pub fn re(&self) -> &SymField {
        &self.w
    }

    pub fn partial(&self, axis: usize) -> Quat {
        Quat::new(
            self.w.partial(axis),
            self.x.partial(axis),
            self.y.partial(axis),
            self.z.partial(axis),
        )
    }

    pub fn laplacian(&self) -> Quat {
        Quat::new(
            self.w.laplacian(),
            self.x.laplacian(),
            self.y.laplacian(),
            self.z.laplacian(),
        )
    }

    /// Pair form `u = u0 + j u1`: complex-valued `u0`, `u1` are folded
    /// into four real-valued components (`j c = conj(c) j`).
    pub fn from_pair(f0: &SymField, f1: &SymField) -> Quat {
        Quat::new(
            f0.re_part(),
            f0.im_part(),
            f1.re_part(),
            f1.im_part().neg(),
        )
    }

    /// Inverse of [`Quat::from_pair`] on real-component quaternions,
    /// extended coefficient-linearly otherwise: `(w + i x, y - i z)`.
    pub fn to_pair(&self) -> (SymField, SymField) {
        let i = crate::scalar::ec_i();
        (
            self.w.add(&self.x.scale(&i)),
            self.y.sub(&self.z.scale(&i)),
        )
    }
}

/// Hamilton product, left-to-right order preserved.
pub fn qmul(a: &Quat, b: &Quat) -> Quat {
    let w = a
        .w
        .mul(&b.w)
        .sub(&a.x.mul(&b.x))
        .sub(&a.y.mul(&b.y))
        .sub(&a.z.mul(&b.z));
    let x = a
        .w
        .mul(&b.x)
        .add(&a.x.mul(&b.w))
        .add(&a.y.mul(&b.z))
        .sub(&a.z.mul(&b.y));
    let y = a
        .w
        .mul(&b.y)
        .sub(&a.x.mul(&b.z))
        .add(&a.y.mul(&b.w))
        .add(&a.z.mul(&b.x));
    let z = a
        .w
        .mul(&b.z)
        .add(&a.x.mul(&b.y))
        .sub(&a.y.mul(&b.x))
        .add(&a.z.mul(&b.w));
    Quat::new(w, x, y, z)
}

/// Cauchy-Fueter operator `D u = d0 u + i (d1 u) + j (d2 u) + k (d3 u)`,
/// quaternion units multiplying from the left.
pub fn cf_d(u: &Quat) -> Quat {
    let mut acc = Quat::zero();
    for a in 0..4 {
        acc = acc.add(&qmul(&Quat::unit(a), &u.partial(a)));
    }
    acc
}

/// Conjugate operator `Dbar u = d0 u - i (d1 u) - j (d2 u) - k (d3 u)`;
/// `D Dbar = Dbar D` is the componentwise Laplacian.
pub fn cf_dbar(u: &Quat) -> Quat {
    let mut acc = u.partial(0);
    for a in 1..4 {
        acc = acc.sub(&qmul(&Quat::unit(a), &u.partial(a)));
    }
    acc
}

/// A function is quaternionic regular exactly when `D u = 0`.
pub fn is_regular(u: &Quat) -> bool {
    cf_d(u).is_zero()
}

/// Complex 2x2 matrix with `SymField` entries, the target of tau.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CMat2 {
    pub e: [[SymField; 2]; 2],
}

impl CMat2 {
    pub fn mul(&self, o: &CMat2) -> CMat2 {
        let mut out = [
            [SymField::zero(), SymField::zero()],
            [SymField::zero(), SymField::zero()],
        ];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = self.e[r][0]
                    .mul(&o.e[0][c])
                    .add(&self.e[r][1].mul(&o.e[1][c]));
            }
        }
        CMat2 { e: out }
    }
}

/// Embedding of the quaternions into complex 2x2 matrices:
/// `tau(q) = [[w + i x, -y - i z], [y - i z, w - i x]]`.
pub fn tau_embed(a: &Quat) -> CMat2 {
    let i = crate::scalar::ec_i();
    CMat2 {
        e: [
            [
                a.w.add(&a.x.scale(&i)),
                a.y.neg().sub(&a.z.scale(&i)),
            ],
            [
                a.y.sub(&a.z.scale(&i)),
                a.w.sub(&a.x.scale(&i)),
            ],
        ],
    }
}

/// `tau(f) := j (f0 + j f1)` for a pair of complex-valued fields; the
/// result is quaternionic regular exactly when the pair is 1-regular.
pub fn tau_pair(f0: &SymField, f1: &SymField) -> Quat {
    qmul(&Quat::unit(2), &Quat::from_pair(f0, f1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ec, ec_i, ec_int, ec_rat};

    #[test]
    fn basis_table() {
        // i^2 = j^2 = k^2 = -1 and ijk = -1, checked on all 16 products
        let expected_sign_and_axis = |a: usize, b: usize| -> (i64, usize) {
            // multiplication table for units indexed 0..4 = (1, i, j, k)
            const TAB: [[(i64, usize); 4]; 4] = [
                [(1, 0), (1, 1), (1, 2), (1, 3)],
                [(1, 1), (-1, 0), (1, 3), (-1, 2)],
                [(1, 2), (-1, 3), (-1, 0), (1, 1)],
                [(1, 3), (1, 2), (-1, 1), (-1, 0)],
            ];
            TAB[a][b]
        };
        for a in 0..4 {
            for b in 0..4 {
                let prod = qmul(&Quat::unit(a), &Quat::unit(b));
                let (sign, axis) = expected_sign_and_axis(a, b);
                let expected = Quat::unit(axis).scale(&ec_int(sign));
                assert_eq!(prod, expected, "unit product {} * {}", a, b);
            }
        }
        // ijk = -1
        let ijk = qmul(&qmul(&Quat::unit(1), &Quat::unit(2)), &Quat::unit(3));
        assert_eq!(ijk, Quat::one().neg());
        // i j = k, j i = -k
        assert_eq!(qmul(&Quat::unit(1), &Quat::unit(2)), Quat::unit(3));
        assert_eq!(qmul(&Quat::unit(2), &Quat::unit(1)), Quat::unit(3).neg());
    }

    #[test]
    fn q_times_conj_is_r2() {
        let q = Quat::coordinate();
        assert_eq!(qmul(&q, &q.conj()), Quat::scalar(SymField::r2()));
    }

    #[test]
    fn tau_examples() {
        let id = tau_embed(&Quat::one());
        assert_eq!(id.e[0][0], SymField::one());
        assert_eq!(id.e[0][1], SymField::zero());
        assert_eq!(id.e[1][0], SymField::zero());
        assert_eq!(id.e[1][1], SymField::one());
        // tau(j) = [[0, -1], [1, 0]]
        let tj = tau_embed(&Quat::unit(2));
        assert_eq!(tj.e[0][0], SymField::zero());
        assert_eq!(tj.e[0][1], SymField::one().neg());
        assert_eq!(tj.e[1][0], SymField::one());
        assert_eq!(tj.e[1][1], SymField::zero());
    }

    #[test]
    fn cf_d_examples() {
        assert!(cf_d(&Quat::one()).is_zero());
        // D q = -2
        assert_eq!(
            cf_d(&Quat::coordinate()),
            Quat::scalar(SymField::constant(ec_int(-2)))
        );
        // D (x1 - i x0) = 0
        let u = Quat::new(
            SymField::var(1),
            SymField::var(0).neg(),
            SymField::zero(),
            SymField::zero(),
        );
        assert!(cf_d(&u).is_zero());
    }

    #[test]
    fn cf_dbar_examples() {
        assert!(cf_dbar(&Quat::one()).is_zero());
        // Dbar q = 4
        assert_eq!(
            cf_dbar(&Quat::coordinate()),
            Quat::scalar(SymField::constant(ec_int(4)))
        );
        // D Dbar x0^2 = 2
        let u = Quat::scalar(SymField::var(0).pow(2));
        assert_eq!(
            cf_d(&cf_dbar(&u)),
            Quat::scalar(SymField::constant(ec_int(2)))
        );
        assert_eq!(cf_d(&cf_dbar(&u)), u.laplacian());
    }

    #[test]
    fn is_regular_examples() {
        assert!(is_regular(&Quat::one()));
        assert!(!is_regular(&Quat::coordinate()));
        // x0 + (x1 i + x2 j + x3 k)/3
        let third = ec_rat(1, 3);
        let u = Quat::new(
            SymField::var(0),
            SymField::var(1).scale(&third),
            SymField::var(2).scale(&third),
            SymField::var(3).scale(&third),
        );
        assert!(is_regular(&u));
    }

    #[test]
    fn tau_ring_homomorphism_50_pairs() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut random_rational_quat = || {
            Quat::new(
                SymField::constant(ec_rat(rng.gen_range(-9..=9), rng.gen_range(1..=4))),
                SymField::constant(ec_rat(rng.gen_range(-9..=9), rng.gen_range(1..=4))),
                SymField::constant(ec_rat(rng.gen_range(-9..=9), rng.gen_range(1..=4))),
                SymField::constant(ec_rat(rng.gen_range(-9..=9), rng.gen_range(1..=4))),
            )
        };
        for _ in 0..50 {
            let a = random_rational_quat();
            let b = random_rational_quat();
            assert_eq!(
                tau_embed(&qmul(&a, &b)),
                tau_embed(&a).mul(&tau_embed(&b))
            );
        }
    }

    #[test]
    fn pair_round_trip() {
        let f0 = SymField::var(0).add(&SymField::var(1).scale(&ec(0, 1, 2, 3)));
        let f1 = SymField::var(2).scale(&ec(1, 2, -1, 1));
        let u = Quat::from_pair(&f0, &f1);
        let (g0, g1) = u.to_pair();
        assert_eq!(g0, f0);
        assert_eq!(g1, f1);
        // q = (x0 + i x1) + j (x2 - i x3)
        let q = Quat::coordinate();
        let (q0, q1) = q.to_pair();
        assert_eq!(q0, SymField::var(0).add(&SymField::var(1).scale(&ec_i())));
        assert_eq!(q1, SymField::var(2).sub(&SymField::var(3).scale(&ec_i())));
        assert_eq!(Quat::from_pair(&q0, &q1), q);
    }

    #[test]
    fn tau_pair_examples() {
        assert!(tau_pair(&SymField::zero(), &SymField::zero()).is_zero());
        // (f0, f1) = (-x2 - i x3, 0) is 1-regular, so tau of it is regular
        let f0 = SymField::var(2).neg().sub(&SymField::var(3).scale(&ec_i()));
        assert!(is_regular(&tau_pair(&f0, &SymField::zero())));
        // (x0, 0) is not 1-regular
        assert!(!is_regular(&tau_pair(&SymField::var(0), &SymField::zero())));
    }
}
