//! Floating-point cross-validation of the symbolic operators by central
//! finite differences at random admissible points.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::field::SymField;
use crate::forms::{exterior_d, hodge_star, DiffForm};
use crate::quat::{cf_d, Quat};
use crate::scalar::Complex64;
use crate::spinor::{d1k_apply, dk_apply, l_apply, z_coord, MixedSpinorField, SymSpinorField};

/// Central difference `(f(p + s e_axis) - f(p - s e_axis)) / (2 s)`.
pub fn fd_derivative(f: &SymField, axis: usize, p: [f64; 4], step: f64) -> Result<Complex64> {
    let mut hi = p;
    let mut lo = p;
    hi[axis] += step;
    lo[axis] -= step;
    Ok((f.eval_point(hi)? - f.eval_point(lo)?) / Complex64::new(2.0 * step, 0.0))
}

/// Operators covered by the finite-difference check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FdOp {
    /// Cauchy-Fueter operator on quaternion functions.
    D,
    /// k-Cauchy-Fueter operator on symmetric spinor fields.
    Dk,
    /// Second operator of the complex on mixed spinor fields.
    D1k,
    /// Zeroth-order contraction L0.
    L0,
    /// Zeroth-order contraction L1.
    L1,
    /// Exterior derivative on forms.
    ExteriorD,
    /// Hodge star (zeroth-order).
    Star,
}

/// Input value for an operator check.
#[derive(Clone, Debug)]
pub enum OpInput {
    Quat(Quat),
    Sym(SymSpinorField),
    Mixed(MixedSpinorField),
    Form(DiffForm),
}

/// Per-point report; the errors are recomputable from (op, input, point,
/// step).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FdReport {
    pub op: String,
    pub point: [f64; 4],
    pub step: f64,
    pub max_abs_error: f64,
    pub max_rel_error: f64,
}

fn permutation_sign(order: &[u8]) -> f64 {
    let mut v = order.to_vec();
    let mut sign = 1.0;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    sign
}

fn fd_nabla(a: usize, bp: usize, f: &SymField, p: [f64; 4], step: f64) -> Result<Complex64> {
    let i = Complex64::new(0.0, 1.0);
    let d = |axis: usize| fd_derivative(f, axis, p, step);
    Ok(match (a, bp) {
        (0, 0) => -d(2)? - i * d(3)?,
        (0, 1) => -d(0)? - i * d(1)?,
        (1, 0) => d(0)? - i * d(1)?,
        (1, 1) => -d(2)? + i * d(3)?,
        _ => unreachable!(),
    })
}

/// Pairs of (symbolic evaluation, finite-difference reconstruction) for
/// every output component of the operator at one point.
fn component_pairs(op: FdOp, input: &OpInput, p: [f64; 4], step: f64) -> Result<Vec<(Complex64, Complex64)>> {
    let mut out = Vec::new();
    match (op, input) {
        (FdOp::D, OpInput::Quat(u)) => {
            let sym = cf_d(u);
            // FD reconstruction of the componentwise formula
            let d = |f: &SymField, axis: usize| fd_derivative(f, axis, p, step);
            let fd = [
                d(&u.w, 0)? - d(&u.x, 1)? - d(&u.y, 2)? - d(&u.z, 3)?,
                d(&u.x, 0)? + d(&u.w, 1)? + d(&u.z, 2)? - d(&u.y, 3)?,
                d(&u.y, 0)? - d(&u.z, 1)? + d(&u.w, 2)? + d(&u.x, 3)?,
                d(&u.z, 0)? + d(&u.y, 1)? - d(&u.x, 2)? + d(&u.w, 3)?,
            ];
            for (a, fd_val) in fd.iter().enumerate() {
                out.push((sym.comp(a).eval_point(p)?, *fd_val));
            }
        }
        (FdOp::Dk, OpInput::Sym(f)) => {
            let sym = dk_apply(f);
            for a in 0..2 {
                for j in 0..f.k() {
                    let fd = fd_nabla(a, 0, f.comp(j), p, step)?
                        + fd_nabla(a, 1, f.comp(j + 1), p, step)?;
                    out.push((sym.comp(a, j).eval_point(p)?, fd));
                }
            }
        }
        (FdOp::D1k, OpInput::Mixed(g)) => {
            let sym = d1k_apply(g);
            for t in 0..g.k() - 1 {
                let fd = fd_nabla(0, 0, g.comp(1, t), p, step)?
                    - fd_nabla(1, 0, g.comp(0, t), p, step)?
                    + fd_nabla(0, 1, g.comp(1, t + 1), p, step)?
                    - fd_nabla(1, 1, g.comp(0, t + 1), p, step)?;
                out.push((sym.comp(t).eval_point(p)?, fd));
            }
        }
        (FdOp::L0, OpInput::Sym(f)) | (FdOp::L1, OpInput::Sym(f)) => {
            let j = if op == FdOp::L0 { 0 } else { 1 };
            let sym = l_apply(j, f);
            for t in 0..f.k() {
                let direct = z_coord(j, 0).eval_point(p)? * f.comp(t).eval_point(p)?
                    + z_coord(j, 1).eval_point(p)? * f.comp(t + 1).eval_point(p)?;
                out.push((sym.comp(t).eval_point(p)?, direct));
            }
        }
        (FdOp::ExteriorD, OpInput::Form(w)) => {
            let sym = exterior_d(w);
            for (idx, coeff) in sym.comps() {
                // reconstruct (dw)_idx = sum_l (-1)^l d_{idx[l]} w_{idx without l}
                let mut fd = Complex64::new(0.0, 0.0);
                for (l, &a) in idx.iter().enumerate() {
                    let rest: Vec<u8> = idx
                        .iter()
                        .enumerate()
                        .filter(|(t, _)| *t != l)
                        .map(|(_, &b)| b)
                        .collect();
                    let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
                    fd += fd_derivative(&w.coeff(&rest), a as usize, p, step)? * sign;
                }
                out.push((coeff.eval_point(p)?, fd));
            }
        }
        (FdOp::Star, OpInput::Form(w)) => {
            // zeroth-order: each input coefficient lands on its
            // complementary tuple with an independently computed
            // permutation sign
            let sym = hodge_star(w);
            for (idx, coeff) in w.comps() {
                let comp: Vec<u8> = (0..4u8).filter(|a| !idx.contains(a)).collect();
                let full: Vec<u8> = idx.iter().chain(comp.iter()).copied().collect();
                let sign = permutation_sign(&full);
                out.push((
                    sym.coeff(&comp).eval_point(p)?,
                    coeff.eval_point(p)? * sign,
                ));
            }
        }
        _ => panic!("operator/input kind mismatch"),
    }
    Ok(out)
}

/// Check one operator at one point.
pub fn fd_check_at(op: FdOp, input: &OpInput, p: [f64; 4], step: f64) -> Result<FdReport> {
    let pairs = component_pairs(op, input, p, step)?;
    let mut max_abs: f64 = 0.0;
    let mut max_rel: f64 = 0.0;
    for (sym, fd) in pairs {
        let abs = (sym - fd).norm();
        // error relative to the scale max(1, |sym|)
        let rel = abs / sym.norm().max(1.0);
        max_abs = max_abs.max(abs);
        max_rel = max_rel.max(rel);
    }
    Ok(FdReport {
        op: format!("{:?}", op),
        point: p,
        step,
        max_abs_error: max_abs,
        max_rel_error: max_rel,
    })
}

/// Check one operator at several points; returns per-point reports.
pub fn fd_check_operator(
    op: FdOp,
    input: &OpInput,
    points: &[[f64; 4]],
    step: f64,
) -> Result<Vec<FdReport>> {
    points
        .iter()
        .map(|&p| fd_check_at(op, input, p, step))
        .collect()
}

/// The worst report over a batch of points.
pub fn fd_worst(reports: &[FdReport]) -> Option<FdReport> {
    reports
        .iter()
        .max_by(|a, b| {
            a.max_rel_error
                .partial_cmp(&b.max_rel_error)
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .cloned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ec_rat;

    #[test]
    fn fd_derivative_examples() {
        // quadratics are exact for central differences up to rounding
        let f = SymField::var(0).pow(2);
        let v = fd_derivative(&f, 0, [1.0, 0.0, 0.0, 0.0], 1e-4).unwrap();
        assert!((v.re - 2.0).abs() < 1e-6);
        // rational field matches the symbolic derivative
        let f = SymField::inv_r2_pow(1);
        let p = [1.0, 1.0, 0.0, 0.0];
        let fd = fd_derivative(&f, 2, p, 1e-4).unwrap();
        let sym = f.partial(2).eval_point(p).unwrap();
        assert!((fd - sym).norm() / sym.norm().max(1.0) < 1e-6);
        // constants differentiate to zero
        let f = SymField::constant(ec_rat(3, 7));
        let v = fd_derivative(&f, 1, p, 1e-4).unwrap();
        assert!(v.norm() < 1e-10);
    }

    #[test]
    fn fd_check_d_on_coordinate() {
        // D q = -2 at arbitrary points
        let input = OpInput::Quat(Quat::coordinate());
        let reports = fd_check_operator(
            FdOp::D,
            &input,
            &[[0.3, -1.2, 0.7, 0.5], [1.0, 1.0, -1.0, 0.25]],
            1e-4,
        )
        .unwrap();
        for r in reports {
            assert!(r.max_rel_error < 1e-6, "{:?}", r);
        }
    }

    #[test]
    fn fd_check_l0_zeroth_order() {
        let f = SymSpinorField::new(
            1,
            vec![SymField::var(0).mul(&SymField::var(2)), SymField::inv_r2_pow(1)],
        );
        let reports = fd_check_operator(
            FdOp::L0,
            &OpInput::Sym(f),
            &[[0.9, 0.4, -0.3, 1.1]],
            1e-4,
        )
        .unwrap();
        assert!(reports[0].max_rel_error < 1e-12);
    }
}
