//! Fields valued in the symmetric powers of C^2, the raised derivative
//! table, the k-Cauchy-Fueter operators, the multiplication-type operators
//! L0/L1, regularity checks, and exact kernel bases on homogeneous
//! polynomial slices.
//!
//! A symmetric spinor component is stored once per index multiset: slot
//! `j` of a rank-k field holds the component with exactly `j` primed
//! indices equal to 1'.

use crate::field::SymField;
use crate::linalg;
use crate::poly::{Mono, Poly4};
use crate::scalar::{ec_i, ec_one, ec_zero, ExactComplex};

/// Field valued in the k-th symmetric power of C^2 (k+1 slots).
/// `k = 0` is a single scalar field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymSpinorField {
    k: usize,
    comps: Vec<SymField>,
}

/// Field valued in C^2 tensor the (k-1)-st symmetric power of C^2,
/// stored as a 2 x k array: unprimed index first, then the number of
/// primed indices equal to 1'.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MixedSpinorField {
    k: usize,
    comps: [Vec<SymField>; 2],
}

impl SymSpinorField {
    pub fn new(k: usize, comps: Vec<SymField>) -> SymSpinorField {
        assert_eq!(comps.len(), k + 1, "rank-{} field needs {} slots", k, k + 1);
        SymSpinorField { k, comps }
    }

    pub fn zero(k: usize) -> SymSpinorField {
        SymSpinorField::new(k, vec![SymField::zero(); k + 1])
    }

    pub fn scalar(f: SymField) -> SymSpinorField {
        SymSpinorField::new(0, vec![f])
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn comps(&self) -> &[SymField] {
        &self.comps
    }

    pub fn comp(&self, ones: usize) -> &SymField {
        &self.comps[ones]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(SymField::is_zero)
    }

    pub fn add(&self, o: &SymSpinorField) -> SymSpinorField {
        assert_eq!(self.k, o.k);
        SymSpinorField::new(
            self.k,
            self.comps
                .iter()
                .zip(&o.comps)
                .map(|(a, b)| a.add(b))
                .collect(),
        )
    }

    pub fn sub(&self, o: &SymSpinorField) -> SymSpinorField {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> SymSpinorField {
        SymSpinorField::new(self.k, self.comps.iter().map(SymField::neg).collect())
    }

    pub fn scale(&self, c: &ExactComplex) -> SymSpinorField {
        SymSpinorField::new(self.k, self.comps.iter().map(|f| f.scale(c)).collect())
    }

    pub fn is_polynomial(&self) -> bool {
        self.comps.iter().all(SymField::is_polynomial)
    }
}

impl MixedSpinorField {
    pub fn new(k: usize, comps: [Vec<SymField>; 2]) -> MixedSpinorField {
        assert!(k >= 1, "mixed fields need k >= 1");
        assert!(
            comps[0].len() == k && comps[1].len() == k,
            "rank-{} mixed field needs 2 x {} slots",
            k,
            k
        );
        MixedSpinorField { k, comps }
    }

    pub fn zero(k: usize) -> MixedSpinorField {
        MixedSpinorField::new(k, [vec![SymField::zero(); k], vec![SymField::zero(); k]])
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn comp(&self, a: usize, ones: usize) -> &SymField {
        &self.comps[a][ones]
    }

    pub fn row(&self, a: usize) -> &[SymField] {
        &self.comps[a]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().flatten().all(SymField::is_zero)
    }

    pub fn add(&self, o: &MixedSpinorField) -> MixedSpinorField {
        assert_eq!(self.k, o.k);
        let take = |a: usize| -> Vec<SymField> {
            self.comps[a]
                .iter()
                .zip(&o.comps[a])
                .map(|(x, y)| x.add(y))
                .collect()
        };
        MixedSpinorField::new(self.k, [take(0), take(1)])
    }

    pub fn sub(&self, o: &MixedSpinorField) -> MixedSpinorField {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> MixedSpinorField {
        MixedSpinorField::new(
            self.k,
            [
                self.comps[0].iter().map(SymField::neg).collect(),
                self.comps[1].iter().map(SymField::neg).collect(),
            ],
        )
    }

    pub fn is_polynomial(&self) -> bool {
        self.comps.iter().flatten().all(SymField::is_polynomial)
    }
}

/// Antisymmetric symbol: `eps(0,1) = 1`, `eps(1,0) = -1`, zero otherwise.
pub fn eps(a: usize, b: usize) -> i64 {
    match (a, b) {
        (0, 1) => 1,
        (1, 0) => -1,
        _ => 0,
    }
}

/// Raised first-order operators:
/// `[[-d2 - i d3, -d0 - i d1], [d0 - i d1, -d2 + i d3]]`.
pub fn nabla_raised(a: usize, bp: usize, f: &SymField) -> SymField {
    let i = ec_i();
    match (a, bp) {
        (0, 0) => f.partial(2).neg().sub(&f.partial(3).scale(&i)),
        (0, 1) => f.partial(0).neg().sub(&f.partial(1).scale(&i)),
        (1, 0) => f.partial(0).sub(&f.partial(1).scale(&i)),
        (1, 1) => f.partial(2).neg().add(&f.partial(3).scale(&i)),
        _ => panic!("spinor index out of range"),
    }
}

/// Lower-index operators `nabla_{AA'}`:
/// `[[d0 + i d1, -d2 - i d3], [d2 - i d3, d0 - i d1]]`.
pub fn nabla_lower(a: usize, ap: usize, f: &SymField) -> SymField {
    let i = ec_i();
    match (a, ap) {
        (0, 0) => f.partial(0).add(&f.partial(1).scale(&i)),
        (0, 1) => f.partial(2).neg().sub(&f.partial(3).scale(&i)),
        (1, 0) => f.partial(2).sub(&f.partial(3).scale(&i)),
        (1, 1) => f.partial(0).sub(&f.partial(1).scale(&i)),
        _ => panic!("spinor index out of range"),
    }
}

/// Coordinate matrix `z_A^{A'}`:
/// `[[-x2 - i x3, -x0 - i x1], [x0 - i x1, -x2 + i x3]]`.
pub fn z_coord(a: usize, bp: usize) -> SymField {
    let i = ec_i();
    let x = SymField::var;
    match (a, bp) {
        (0, 0) => x(2).neg().sub(&x(3).scale(&i)),
        (0, 1) => x(0).neg().sub(&x(1).scale(&i)),
        (1, 0) => x(0).sub(&x(1).scale(&i)),
        (1, 1) => x(2).neg().add(&x(3).scale(&i)),
        _ => panic!("spinor index out of range"),
    }
}

/// Complex conjugate `conj(z_A^{A'})` as a coordinate function.
pub fn z_coord_conj(a: usize, bp: usize) -> SymField {
    z_coord(a, bp).conj()
}

/// The k-Cauchy-Fueter operator: contracts the raised derivative with the
/// first primed index. In slot storage,
/// `out[A][j] = nabla_A^{0'} f[j] + nabla_A^{1'} f[j+1]`.
pub fn dk_apply(f: &SymSpinorField) -> MixedSpinorField {
    let k = f.k();
    assert!(k >= 1, "dk_apply needs k >= 1");
    let row = |a: usize| -> Vec<SymField> {
        (0..k)
            .map(|j| nabla_raised(a, 0, f.comp(j)).add(&nabla_raised(a, 1, f.comp(j + 1))))
            .collect()
    };
    MixedSpinorField::new(k, [row(0), row(1)])
}

/// The second operator of the k-Cauchy-Fueter complex:
/// `out[t] = sum_{A'} (nabla_0^{A'} g[1][..] - nabla_1^{A'} g[0][..])`.
/// Sends a rank-k mixed field to a rank-(k-2) symmetric field.
pub fn d1k_apply(g: &MixedSpinorField) -> SymSpinorField {
    let k = g.k();
    assert!(k >= 2, "d1k_apply needs k >= 2");
    let comps = (0..k - 1)
        .map(|t| {
            let a0 = nabla_raised(0, 0, g.comp(1, t)).sub(&nabla_raised(1, 0, g.comp(0, t)));
            let a1 =
                nabla_raised(0, 1, g.comp(1, t + 1)).sub(&nabla_raised(1, 1, g.comp(0, t + 1)));
            a0.add(&a1)
        })
        .collect();
    SymSpinorField::new(k - 2, comps)
}

/// Multiplication-type operator on symmetric fields:
/// `(L_j f)[t] = z_j^{0'} f[t] + z_j^{1'} f[t+1]`.
pub fn l_apply(j: usize, f: &SymSpinorField) -> SymSpinorField {
    let k = f.k();
    assert!(k >= 1, "l_apply needs k >= 1");
    assert!(j < 2);
    let comps = (0..k)
        .map(|t| {
            z_coord(j, 0)
                .mul(f.comp(t))
                .add(&z_coord(j, 1).mul(f.comp(t + 1)))
        })
        .collect();
    SymSpinorField::new(k - 1, comps)
}

/// Same contraction on the first primed index of a mixed field; the
/// unprimed index rides along.
pub fn l_apply_mixed(j: usize, g: &MixedSpinorField) -> MixedSpinorField {
    let k = g.k();
    assert!(k >= 2, "l_apply_mixed needs k >= 2");
    assert!(j < 2);
    let row = |a: usize| -> Vec<SymField> {
        (0..k - 1)
            .map(|t| {
                z_coord(j, 0)
                    .mul(g.comp(a, t))
                    .add(&z_coord(j, 1).mul(g.comp(a, t + 1)))
            })
            .collect()
    };
    MixedSpinorField::new(k - 1, [row(0), row(1)])
}

/// k-regularity: `D^(k) f = 0` for `k >= 1`; harmonicity for `k = 0`.
pub fn is_k_regular(f: &SymSpinorField) -> bool {
    if f.k() == 0 {
        f.comp(0).laplacian().is_zero()
    } else {
        dk_apply(f).is_zero()
    }
}

/// Monomial exponents of total degree `d`, descending graded-lex
/// (so `x0^d` comes first and generated bases lead with `x0`).
pub fn monomials_of_degree(d: u32) -> Vec<Mono> {
    let mut out = Vec::new();
    for e0 in 0..=d {
        for e1 in 0..=(d - e0) {
            for e2 in 0..=(d - e0 - e1) {
                let e3 = d - e0 - e1 - e2;
                out.push(Mono([e0 as u16, e1 as u16, e2 as u16, e3 as u16]));
            }
        }
    }
    out.sort();
    out.reverse();
    out
}

/// Exact basis of `{f : components homogeneous of degree d, D^(k) f = 0}`,
/// computed as the nullspace of the constraint matrix over the graded-lex
/// monomial basis. Deterministic for fixed `(k, d)`.
pub fn kernel_basis(k: usize, d: u32) -> Vec<SymSpinorField> {
    assert!(k >= 1, "kernel_basis needs k >= 1");
    let mons = monomials_of_degree(d);
    let ncols = (k + 1) * mons.len();
    if d == 0 {
        // first-order operator kills constants
        return (0..=k)
            .map(|c| {
                let mut comps = vec![SymField::zero(); k + 1];
                comps[c] = SymField::one();
                SymSpinorField::new(k, comps)
            })
            .collect();
    }
    let out_mons = monomials_of_degree(d - 1);
    let col_of = |c: usize, mi: usize| c * mons.len() + mi;
    let out_index: std::collections::BTreeMap<Mono, usize> = out_mons
        .iter()
        .enumerate()
        .map(|(i, m)| (*m, i))
        .collect();
    // rows: (A, j, output monomial)
    let nrows = 2 * k * out_mons.len();
    let mut mat = vec![vec![ec_zero(); ncols]; nrows];
    let row_of = |a: usize, j: usize, oi: usize| (a * k + j) * out_mons.len() + oi;
    for (mi, mono) in mons.iter().enumerate() {
        for c in 0..=k {
            let unit = SymField::new(Poly4::monomial(mono.0, ec_one()), 0);
            for a in 0..2 {
                // component c contributes to out[a][c] via nabla_a^{0'}
                // and to out[a][c-1] via nabla_a^{1'}
                if c < k {
                    accumulate(
                        &mut mat,
                        row_of(a, c, 0),
                        col_of(c, mi),
                        &nabla_raised(a, 0, &unit),
                        &out_index,
                    );
                }
                if c >= 1 {
                    accumulate(
                        &mut mat,
                        row_of(a, c - 1, 0),
                        col_of(c, mi),
                        &nabla_raised(a, 1, &unit),
                        &out_index,
                    );
                }
            }
        }
    }
    let null = linalg::nullspace(&mat, ncols);
    null.into_iter()
        .map(|v| {
            let comps = (0..=k)
                .map(|c| {
                    let mut p = Poly4::zero();
                    for (mi, mono) in mons.iter().enumerate() {
                        p.add_term(*mono, v[col_of(c, mi)].clone());
                    }
                    SymField::new(p, 0)
                })
                .collect();
            SymSpinorField::new(k, comps)
        })
        .collect()
}

fn accumulate(
    mat: &mut [Vec<ExactComplex>],
    row_base: usize,
    col: usize,
    contribution: &SymField,
    out_index: &std::collections::BTreeMap<Mono, usize>,
) {
    debug_assert!(contribution.is_polynomial());
    for (mono, coeff) in contribution.num().terms() {
        let oi = out_index[mono];
        mat[row_base + oi][col] = mat[row_base + oi][col].clone() + coeff.clone();
    }
}
