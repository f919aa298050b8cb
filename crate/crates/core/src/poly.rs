//! Sparse exact polynomials in the four real coordinates `x0..x3`.
//!
//! Terms are stored in a `BTreeMap` keyed by exponent 4-tuples under
//! graded-lexicographic order, so iteration (and therefore printing,
//! serialization and elimination pivoting) is deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::{ec_conj, ec_from_rat, ec_is_zero, ec_to_f64, Complex64, ExactComplex};

/// Exponent 4-tuple ordered graded-lexicographically: total degree first,
/// then lexicographic comparison of `(e0, e1, e2, e3)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Mono(pub [u16; 4]);

impl Mono {
    pub const ONE: Mono = Mono([0, 0, 0, 0]);

    pub fn var(axis: usize) -> Mono {
        let mut e = [0u16; 4];
        e[axis] = 1;
        Mono(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut e = [0u16; 4];
        for (i, out) in e.iter_mut().enumerate() {
            *out = self.0[i]
                .checked_add(other.0[i])
                .expect("monomial exponent overflow (per-axis exponents are capped at 65535)");
        }
        Mono(e)
    }

    /// Componentwise division; `None` if any exponent would go negative.
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        let mut e = [0u16; 4];
        for (i, out) in e.iter_mut().enumerate() {
            *out = self.0[i].checked_sub(other.0[i])?;
        }
        Some(Mono(e))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with Gaussian-rational coefficients.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly4 {
    terms: BTreeMap<Mono, ExactComplex>,
}

impl Poly4 {
    pub fn zero() -> Poly4 {
        Poly4::default()
    }

    pub fn constant(c: ExactComplex) -> Poly4 {
        let mut p = Poly4::zero();
        p.add_term(Mono::ONE, c);
        p
    }

    pub fn one() -> Poly4 {
        Poly4::constant(crate::scalar::ec_one())
    }

    pub fn var(axis: usize) -> Poly4 {
        assert!(axis < 4, "axis out of range");
        let mut p = Poly4::zero();
        p.add_term(Mono::var(axis), crate::scalar::ec_one());
        p
    }

    /// `r2 = x0^2 + x1^2 + x2^2 + x3^2`.
    pub fn r2() -> Poly4 {
        let mut p = Poly4::zero();
        for axis in 0..4 {
            let mut e = [0u16; 4];
            e[axis] = 2;
            p.add_term(Mono(e), crate::scalar::ec_one());
        }
        p
    }

    pub fn monomial(expo: [u16; 4], c: ExactComplex) -> Poly4 {
        let mut p = Poly4::zero();
        p.add_term(Mono(expo), c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &ExactComplex)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Mono) -> ExactComplex {
        self.terms.get(m).cloned().unwrap_or_else(crate::scalar::ec_zero)
    }

    /// Largest monomial in graded-lex order, if nonzero.
    pub fn leading(&self) -> Option<(&Mono, &ExactComplex)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn add_term(&mut self, m: Mono, c: ExactComplex) {
        if ec_is_zero(&c) {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(crate::scalar::ec_zero);
        *entry = entry.clone() + c;
        if ec_is_zero(entry) {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Poly4) -> Poly4 {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly4 {
        Poly4 {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, -c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Poly4) -> Poly4 {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &ExactComplex) -> Poly4 {
        if ec_is_zero(c) {
            return Poly4::zero();
        }
        Poly4 {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (*m, a.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly4) -> Poly4 {
        let mut out = Poly4::zero();
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Poly4 {
        let mut out = Poly4::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Exact partial derivative along one coordinate axis.
    pub fn partial(&self, axis: usize) -> Poly4 {
        assert!(axis < 4, "axis out of range");
        let mut out = Poly4::zero();
        for (m, c) in self.terms() {
            let e = m.0[axis];
            if e == 0 {
                continue;
            }
            let mut shifted = m.0;
            shifted[axis] = e - 1;
            out.add_term(
                Mono(shifted),
                c.clone() * ec_from_rat(crate::scalar::rat(e as i64, 1)),
            );
        }
        out
    }

    /// Coefficient-wise complex conjugation (the coordinates are real).
    pub fn conj(&self) -> Poly4 {
        Poly4 {
            terms: self.terms.iter().map(|(m, c)| (*m, ec_conj(c))).collect(),
        }
    }

    /// Split into homogeneous parts, ascending by total degree.
    pub fn homogeneous_parts(&self) -> Vec<(u32, Poly4)> {
        let mut by_deg: BTreeMap<u32, Poly4> = BTreeMap::new();
        for (m, c) in self.terms() {
            by_deg
                .entry(m.degree())
                .or_insert_with(Poly4::zero)
                .add_term(*m, c.clone());
        }
        by_deg.into_iter().collect()
    }

    /// Remainder-is-zero test for division by `r2` under graded-lex order:
    /// the leading term of `r2` is `x0^2`, so repeatedly cancel the largest
    /// remaining term divisible by `x0^2`. Returns the exact quotient when
    /// the remainder vanishes.
    pub fn div_exact_r2(&self) -> Option<Poly4> {
        let r2 = Poly4::r2();
        let x0sq = Mono([2, 0, 0, 0]);
        let mut rem = self.clone();
        let mut quot = Poly4::zero();
        loop {
            // Largest monomial still divisible by x0^2.
            let hit = rem
                .terms
                .iter()
                .rev()
                .find_map(|(m, c)| m.div(&x0sq).map(|q| (q, c.clone())));
            match hit {
                None => {
                    return if rem.is_zero() { Some(quot) } else { None };
                }
                Some((q, c)) => {
                    let mut qp = Poly4::zero();
                    qp.add_term(q, c);
                    rem = rem.sub(&qp.mul(&r2));
                    quot = quot.add(&qp);
                }
            }
        }
    }

    pub fn eval(&self, p: [f64; 4]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in self.terms() {
            let mut v = ec_to_f64(c);
            for (axis, coord) in p.iter().enumerate() {
                v *= coord.powi(m.0[axis] as i32);
            }
            acc += v;
        }
        acc
    }
}

impl fmt::Display for Poly4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            for axis in 0..4 {
                match m.0[axis] {
                    0 => {}
                    1 => write!(f, "*x{}", axis)?,
                    e => write!(f, "*x{}^{}", axis, e)?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ec_i, ec_int, ec_one};

    #[test]
    fn graded_lex_order() {
        // degree dominates, then lex on exponents
        assert!(Mono([0, 0, 0, 0]) < Mono([0, 0, 0, 1]));
        assert!(Mono([0, 0, 0, 1]) < Mono([1, 0, 0, 0]));
        assert!(Mono([1, 0, 0, 0]) < Mono([0, 0, 0, 2]));
        assert!(Mono([1, 1, 0, 0]) < Mono([2, 0, 0, 0]));
    }

    #[test]
    fn mul_expand_example() {
        // (-x2 - i x3)(-x2 + i x3) = x2^2 + x3^2
        let a = Poly4::var(2).neg().add(&Poly4::var(3).scale(&ec_i()).neg());
        let b = Poly4::var(2).neg().add(&Poly4::var(3).scale(&ec_i()));
        let prod = a.mul(&b);
        let expected = Poly4::monomial([0, 0, 2, 0], ec_one())
            .add(&Poly4::monomial([0, 0, 0, 2], ec_one()));
        assert_eq!(prod, expected);
    }

    #[test]
    fn exact_division_by_r2() {
        let r2 = Poly4::r2();
        let p = r2.mul(&Poly4::var(0)).mul(&r2);
        let q = p.div_exact_r2().unwrap();
        assert_eq!(q, r2.mul(&Poly4::var(0)));
        assert!(Poly4::var(0).div_exact_r2().is_none());
        assert_eq!(r2.div_exact_r2().unwrap(), Poly4::one());
        // x0^2 alone is not divisible even though the leading term matches
        assert!(Poly4::monomial([2, 0, 0, 0], ec_int(1)).div_exact_r2().is_none());
    }

    #[test]
    fn derivative_and_eval() {
        let p = Poly4::var(0).pow(2); // x0^2
        assert_eq!(p.partial(0), Poly4::var(0).scale(&ec_int(2)));
        assert_eq!(p.partial(1), Poly4::zero());
        let v = Poly4::r2().eval([1.0, 1.0, 1.0, 1.0]);
        assert_eq!(v.re, 4.0);
        assert_eq!(v.im, 0.0);
    }
}
