//! Differential forms on R^4 with `SymField` coefficients: exterior
//! derivative, Euclidean Hodge star (orientation `dx0^dx1^dx2^dx3`),
//! anti-self-dual projection and the `e`-basis, the eta identification of
//! rank-2 symmetric spinor fields with ASD 2-forms, the Cauchy-Fueter /
//! exterior-derivative bridge, the flux 3-form, the formal adjoint `d*`,
//! and the radial homotopy operator.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::SymField;
use crate::poly::Poly4;
use crate::quat::{cf_d, Quat};
use crate::scalar::{ec_i, ec_int, ec_inv, ec_rat, ExactComplex};
use crate::spinor::{MixedSpinorField, SymSpinorField};

/// Degree-p form; only strictly increasing index tuples are stored and an
/// absent tuple means a zero coefficient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiffForm {
    p: u8,
    comps: BTreeMap<Vec<u8>, SymField>,
}

/// Sort an index tuple, tracking the permutation sign; `None` on repeats.
fn sort_sign(idx: &[u8]) -> Option<(Vec<u8>, i64)> {
    let mut v = idx.to_vec();
    let mut sign = 1i64;
    for i in 0..v.len() {
        for j in 0..v.len().saturating_sub(i + 1) {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

impl DiffForm {
    pub fn zero(p: u8) -> DiffForm {
        assert!(p <= 4, "degree out of range");
        DiffForm {
            p,
            comps: BTreeMap::new(),
        }
    }

    /// A 0-form from a scalar field.
    pub fn scalar(f: SymField) -> DiffForm {
        let mut w = DiffForm::zero(0);
        w.add_term(&[], f);
        w
    }

    /// `dx_a` as a constant 1-form.
    pub fn dx(a: u8) -> DiffForm {
        assert!(a < 4);
        let mut w = DiffForm::zero(1);
        w.add_term(&[a], SymField::one());
        w
    }

    pub fn degree(&self) -> u8 {
        self.p
    }

    pub fn comps(&self) -> impl Iterator<Item = (&Vec<u8>, &SymField)> {
        self.comps.iter()
    }

    pub fn coeff(&self, idx: &[u8]) -> SymField {
        self.comps.get(idx).cloned().unwrap_or_else(SymField::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn is_polynomial(&self) -> bool {
        self.comps.values().all(SymField::is_polynomial)
    }

    /// Add `f dx_idx`, normalizing the tuple order and sign. Terms with
    /// repeated indices vanish.
    pub fn add_term(&mut self, idx: &[u8], f: SymField) {
        assert_eq!(idx.len(), self.p as usize, "tuple length != degree");
        assert!(idx.iter().all(|&a| a < 4), "index out of range");
        if f.is_zero() {
            return;
        }
        let Some((key, sign)) = sort_sign(idx) else {
            return;
        };
        let f = if sign < 0 { f.neg() } else { f };
        let entry = self.comps.entry(key.clone()).or_insert_with(SymField::zero);
        *entry = entry.add(&f);
        if entry.is_zero() {
            self.comps.remove(&key);
        }
    }

    pub fn add(&self, o: &DiffForm) -> DiffForm {
        assert_eq!(self.p, o.p, "degree mismatch");
        let mut out = self.clone();
        for (idx, f) in o.comps() {
            out.add_term(idx, f.clone());
        }
        out
    }

    pub fn sub(&self, o: &DiffForm) -> DiffForm {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> DiffForm {
        DiffForm {
            p: self.p,
            comps: self.comps.iter().map(|(k, f)| (k.clone(), f.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &ExactComplex) -> DiffForm {
        let mut out = DiffForm::zero(self.p);
        for (k, f) in self.comps() {
            out.add_term(k, f.scale(c));
        }
        out
    }

    pub fn mul_field(&self, g: &SymField) -> DiffForm {
        let mut out = DiffForm::zero(self.p);
        for (k, f) in self.comps() {
            out.add_term(k, f.mul(g));
        }
        out
    }

    /// Wedge product.
    pub fn wedge(&self, o: &DiffForm) -> DiffForm {
        let p = self.p + o.p;
        assert!(p <= 4, "wedge degree exceeds 4");
        let mut out = DiffForm::zero(p);
        for (ka, fa) in self.comps() {
            for (kb, fb) in o.comps() {
                let idx: Vec<u8> = ka.iter().chain(kb.iter()).copied().collect();
                out.add_term(&idx, fa.mul(fb));
            }
        }
        out
    }
}

/// Exterior derivative with canonical increasing-tuple normalization.
pub fn exterior_d(w: &DiffForm) -> DiffForm {
    assert!(w.degree() < 4, "d of a 4-form");
    let mut out = DiffForm::zero(w.degree() + 1);
    for (idx, f) in w.comps() {
        for a in 0..4u8 {
            let mut tuple = vec![a];
            tuple.extend_from_slice(idx);
            out.add_term(&tuple, f.partial(a as usize));
        }
    }
    out
}

/// Euclidean Hodge star with orientation `dx0^dx1^dx2^dx3`;
/// `** = (-1)^{p(4-p)}`.
pub fn hodge_star(w: &DiffForm) -> DiffForm {
    let p = w.degree();
    let mut out = DiffForm::zero(4 - p);
    for (idx, f) in w.comps() {
        let comp: Vec<u8> = (0..4u8).filter(|a| !idx.contains(a)).collect();
        let full: Vec<u8> = idx.iter().chain(comp.iter()).copied().collect();
        let (_, sign) = sort_sign(&full).expect("complement tuple is a permutation");
        let f = if sign < 0 { f.neg() } else { f.clone() };
        out.add_term(&comp, f);
    }
    out
}

/// Anti-self-dual 2-form in the trivializing basis
/// `e1 = dx0^dx1 - dx2^dx3`, `e2 = dx0^dx2 + dx1^dx3`,
/// `e3 = dx0^dx3 - dx1^dx2`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ASDForm {
    pub a1: SymField,
    pub a2: SymField,
    pub a3: SymField,
}

impl ASDForm {
    pub fn zero() -> ASDForm {
        ASDForm {
            a1: SymField::zero(),
            a2: SymField::zero(),
            a3: SymField::zero(),
        }
    }

    pub fn new(a1: SymField, a2: SymField, a3: SymField) -> ASDForm {
        ASDForm { a1, a2, a3 }
    }

    /// The constant basis section `e1`, `e2` or `e3` (1-based).
    pub fn basis(i: usize) -> DiffForm {
        let mut w = DiffForm::zero(2);
        match i {
            1 => {
                w.add_term(&[0, 1], SymField::one());
                w.add_term(&[2, 3], SymField::one().neg());
            }
            2 => {
                w.add_term(&[0, 2], SymField::one());
                w.add_term(&[1, 3], SymField::one());
            }
            3 => {
                w.add_term(&[0, 3], SymField::one());
                w.add_term(&[1, 2], SymField::one().neg());
            }
            _ => panic!("basis index must be 1, 2 or 3"),
        }
        w
    }

    pub fn to_form(&self) -> DiffForm {
        ASDForm::basis(1)
            .mul_field(&self.a1)
            .add(&ASDForm::basis(2).mul_field(&self.a2))
            .add(&ASDForm::basis(3).mul_field(&self.a3))
    }

    pub fn is_zero(&self) -> bool {
        self.a1.is_zero() && self.a2.is_zero() && self.a3.is_zero()
    }

    pub fn add(&self, o: &ASDForm) -> ASDForm {
        ASDForm::new(
            self.a1.add(&o.a1),
            self.a2.add(&o.a2),
            self.a3.add(&o.a3),
        )
    }
}

/// Projection `(w - *w)/2` of a 2-form, expressed in the `e`-basis.
pub fn asd_project(w: &DiffForm) -> ASDForm {
    assert_eq!(w.degree(), 2, "asd_project takes 2-forms");
    let half = ec_rat(1, 2);
    let proj = w.sub(&hodge_star(w)).scale(&half);
    ASDForm::new(
        proj.coeff(&[0, 1]),
        proj.coeff(&[0, 2]),
        proj.coeff(&[0, 3]),
    )
}

/// `d conj(z_A^{B'})` as a constant-coefficient 1-form.
fn d_zbar(a: usize, bp: usize) -> DiffForm {
    let mut w = DiffForm::zero(1);
    for axis in 0..4u8 {
        w.add_term(
            &[axis],
            crate::spinor::z_coord_conj(a, bp).partial(axis as usize),
        );
    }
    w
}

/// The eta identification of rank-2 symmetric spinor fields with ASD
/// 2-forms, expanded from the `d zbar` wedge products:
/// `eta(f) = f_{0'0'} dzb_0^{1'}^dzb_1^{1'}
///          + f_{0'1'} (-dzb_0^{0'}^dzb_1^{1'} + dzb_1^{0'}^dzb_0^{1'})
///          - f_{1'1'} dzb_1^{0'}^dzb_0^{0'}`.
pub fn eta(f: &SymSpinorField) -> ASDForm {
    assert_eq!(f.k(), 2, "eta takes rank-2 symmetric fields");
    let t1 = d_zbar(0, 1).wedge(&d_zbar(1, 1)).mul_field(f.comp(0));
    let t2a = d_zbar(0, 0).wedge(&d_zbar(1, 1)).neg().mul_field(f.comp(1));
    let t2b = d_zbar(1, 0).wedge(&d_zbar(0, 1)).mul_field(f.comp(1));
    let t3 = d_zbar(1, 0).wedge(&d_zbar(0, 0)).mul_field(f.comp(2)).neg();
    let total = t1.add(&t2a).add(&t2b).add(&t3);
    debug_assert!(hodge_star(&total).add(&total).is_zero(), "eta image is ASD");
    asd_project(&total)
}

/// The unique `f` with `eta(f) = w`:
/// `f_{0'0'} = (a2 - i a3)/2`, `f_{0'1'} = -i a1 / 2`,
/// `f_{1'1'} = (a2 + i a3)/2`.
pub fn eta_inverse(w: &ASDForm) -> SymSpinorField {
    let i = ec_i();
    let half = ec_rat(1, 2);
    let minus_i_half = ec_inv(&(ec_int(2) * i.clone())).unwrap();
    let f00 = w.a2.sub(&w.a3.scale(&i)).scale(&half);
    let f01 = w.a1.scale(&minus_i_half);
    let f11 = w.a2.add(&w.a3.scale(&i)).scale(&half);
    SymSpinorField::new(2, vec![f00, f01, f11])
}

/// Both sides of the bridge identity between the Cauchy-Fueter operator
/// and the exterior derivative of an ASD 2-form `F = f1 e1 + f2 e2 + f3 e3`:
/// left `D(f1 i + f2 j + f3 k)`, right
/// `(dF)_123 - (dF)_023 i + (dF)_013 j - (dF)_012 k`. They agree always.
pub fn bridge_lemma_sides(f: &ASDForm) -> (Quat, Quat) {
    let lhs = cf_d(&Quat::new(
        SymField::zero(),
        f.a1.clone(),
        f.a2.clone(),
        f.a3.clone(),
    ));
    let df = exterior_d(&f.to_form());
    let rhs = Quat::new(
        df.coeff(&[1, 2, 3]),
        df.coeff(&[0, 2, 3]).neg(),
        df.coeff(&[0, 1, 3]),
        df.coeff(&[0, 1, 2]).neg(),
    );
    (lhs, rhs)
}

/// Flux 3-form of a scalar field:
/// `H = -d0h dx1^dx2^dx3 + d1h dx0^dx2^dx3 - d2h dx0^dx1^dx3
///      + d3h dx0^dx1^dx2`, so `dH = -(Lap h) vol`; closed iff `h` is
/// harmonic. The sign is pinned by the bridge identity.
pub fn flux3form(h: &SymField) -> DiffForm {
    let mut w = DiffForm::zero(3);
    w.add_term(&[1, 2, 3], h.partial(0).neg());
    w.add_term(&[0, 2, 3], h.partial(1));
    w.add_term(&[0, 1, 3], h.partial(2).neg());
    w.add_term(&[0, 1, 2], h.partial(3));
    w
}

/// Formal adjoint of `d`, fixed by the anchor identity
/// `d d* + d* d = -Lap` componentwise: on R^4 this is `-*d*` in every
/// degree (the per-degree sign table is constant -1).
pub fn dstar(w: &DiffForm) -> DiffForm {
    assert!(w.degree() >= 1, "dstar needs degree >= 1");
    hodge_star(&exterior_d(&hodge_star(w))).neg()
}

/// Radial homotopy operator of the Poincare lemma on star-shaped domains:
/// for a monomial coefficient `x^alpha` on `dx_I` the radial integral
/// contributes the exact factor `1/(|alpha| + p)`, and
/// `d(Kw) + K(dw) = w` for `p >= 1`. Polynomial coefficients only.
pub fn poincare_homotopy(w: &DiffForm) -> Result<DiffForm> {
    let p = w.degree();
    assert!(p >= 1, "homotopy needs degree >= 1");
    if !w.is_polynomial() {
        return Err(Error::NonPolynomialInput);
    }
    let mut out = DiffForm::zero(p - 1);
    for (idx, f) in w.comps() {
        for (mono, coeff) in f.num().terms() {
            let factor = ec_rat(1, (mono.degree() + p as u32) as i64);
            for (l, &il) in idx.iter().enumerate() {
                let sign = if l % 2 == 0 { 1 } else { -1 };
                let rest: Vec<u8> = idx
                    .iter()
                    .enumerate()
                    .filter(|(t, _)| *t != l)
                    .map(|(_, &a)| a)
                    .collect();
                let mut expo = mono.0;
                expo[il as usize] += 1;
                let term = SymField::new(
                    Poly4::monomial(expo, coeff.clone() * factor.clone() * ec_int(sign)),
                    0,
                );
                out.add_term(&rest, term);
            }
        }
    }
    Ok(out)
}

/// Identifies a rank-2 mixed spinor field with a 3-form through the
/// `d zbar` triple products so that the image of the k-Cauchy-Fueter
/// operator matches the exterior derivative of the eta image:
/// `resolution_3form(dk_apply(f)) = d(eta(f))`, and
/// `d(resolution_3form(g)) = -(d1k_apply(g)) vol`. The S^3 period of this
/// 3-form is the exact obstruction to solving `D^(2) X = g` on punctured
/// R^4.
pub fn resolution_3form(g: &MixedSpinorField) -> DiffForm {
    assert_eq!(g.k(), 2, "resolution_3form takes rank-2 mixed fields");
    let half = ec_rat(1, 2);
    let om00 = d_zbar(0, 0).wedge(&d_zbar(0, 1)).wedge(&d_zbar(1, 1));
    let om10 = d_zbar(1, 0).wedge(&d_zbar(0, 1)).wedge(&d_zbar(1, 1));
    let om01 = d_zbar(0, 0).wedge(&d_zbar(1, 0)).wedge(&d_zbar(0, 1));
    let om11 = d_zbar(1, 0).wedge(&d_zbar(0, 0)).wedge(&d_zbar(1, 1));
    om00.mul_field(g.comp(0, 0))
        .add(&om10.mul_field(g.comp(1, 0)))
        .add(&om01.mul_field(g.comp(0, 1)))
        .sub(&om11.mul_field(g.comp(1, 1)))
        .scale(&half)
}
