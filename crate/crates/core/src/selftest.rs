//! Deterministic identity suite spanning all modules; consumed by the CLI
//! `selftest` subcommand. Every check is exact unless explicitly numeric.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus;
use crate::fd::{fd_check_operator, fd_worst, FdOp, OpInput};
use crate::field::SymField;
use crate::forms::{
    asd_project, bridge_lemma_sides, eta, eta_inverse, exterior_d, flux3form, hodge_star,
    poincare_homotopy, resolution_3form, ASDForm, DiffForm,
};
use crate::periods::{obstruction_certificate, period_s3, period_s3_numeric};
use crate::quat::{cf_d, cf_dbar, is_regular, qmul, tau_embed, tau_pair, Quat};
use crate::scalar::{ec_int, ec_rat};
use crate::solvers;
use crate::spinor::{
    d1k_apply, dk_apply, eps, is_k_regular, kernel_basis, l_apply, l_apply_mixed, nabla_lower,
    nabla_raised, z_coord, SymSpinorField,
};

pub const DEFAULT_SEED: u64 = 42;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SelfCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<SelfCheck>,
}

impl SelftestReport {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }
}

struct Suite {
    checks: Vec<SelfCheck>,
}

impl Suite {
    fn record(&mut self, name: &str, pass: bool, detail: String) {
        self.checks.push(SelfCheck {
            name: name.to_string(),
            pass,
            detail,
        });
    }

    fn check(&mut self, name: &str, pass: bool) {
        self.record(name, pass, String::new());
    }
}

/// Run the full identity suite with the given seed.
pub fn selftest(seed: u64) -> SelftestReport {
    let mut s = Suite { checks: Vec::new() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // --- operator tables -------------------------------------------------
    let mut table_ok = true;
    for a in 0..2 {
        for bp in 0..2 {
            for j in 0..2 {
                for kp in 0..2 {
                    let got = nabla_raised(a, bp, &z_coord(j, kp));
                    let want = SymField::constant(ec_int(2 * eps(a, j) * eps(bp, kp)));
                    table_ok &= got == want;
                }
            }
            table_ok &= nabla_raised(a, bp, &SymField::r2()) == z_coord(a, bp).scale(&ec_int(2));
        }
    }
    s.check("nabla_z_16_entry_table", table_ok);
    let f = corpus::random_symfield_with(&mut rng, 3, 1);
    let det = nabla_raised(0, 0, &nabla_raised(1, 1, &f))
        .sub(&nabla_raised(0, 1, &nabla_raised(1, 0, &f)));
    s.check("nabla_determinant_is_laplacian", det == f.laplacian());

    // --- quaternion layer -------------------------------------------------
    let mut tau_ok = true;
    for _ in 0..10 {
        let q1 = corpus::random_quat(&mut rng, 0, 0);
        let q2 = corpus::random_quat(&mut rng, 0, 0);
        let lhs = tau_embed(&qmul(&q1, &q2));
        let rhs = tau_embed(&q1).mul(&tau_embed(&q2));
        tau_ok &= lhs == rhs;
    }
    s.check("tau_ring_homomorphism", tau_ok);
    let u = corpus::random_quat(&mut rng, 2, 1);
    s.check(
        "laplacian_factorization",
        cf_d(&cf_dbar(&u)) == u.laplacian() && cf_dbar(&cf_d(&u)) == u.laplacian(),
    );
    // pair-form equivalence of the Cauchy-Fueter equation
    let f0 = corpus::random_symfield_with(&mut rng, 2, 0);
    let f1 = corpus::random_symfield_with(&mut rng, 2, 0);
    let uq = Quat::from_pair(&f0, &f1);
    let g = cf_d(&uq);
    let (g0, g1) = g.to_pair();
    let row0 = nabla_lower(0, 0, &f0).add(&nabla_lower(0, 1, &f1));
    let row1 = nabla_lower(1, 0, &f0).add(&nabla_lower(1, 1, &f1));
    s.check("pair_system_equivalence", row0 == g0 && row1 == g1);
    // Leibniz rule on random fields
    let a = corpus::random_symfield_with(&mut rng, 2, 1);
    let b = corpus::random_symfield_with(&mut rng, 2, 1);
    let mut leibniz = true;
    for axis in 0..4 {
        leibniz &= a.mul(&b).partial(axis)
            == a.partial(axis).mul(&b).add(&a.mul(&b.partial(axis)));
    }
    s.check("leibniz_rule", leibniz);
    s.check(
        "fundamental_harmonic",
        SymField::inv_r2_pow(1).laplacian().is_zero(),
    );

    // --- spinor layer ------------------------------------------------------
    let mut prop_ok = true;
    for k in 2..=3usize {
        let f = corpus::random_sym_spinor(&mut rng, k, 2, 1);
        prop_ok &= l_apply(0, &l_apply(1, &f)) == l_apply(1, &l_apply(0, &f));
        for j in 0..2 {
            prop_ok &= dk_apply(&l_apply(j, &f)) == l_apply_mixed(j, &dk_apply(&f));
        }
        prop_ok &= d1k_apply(&dk_apply(&f)).is_zero();
    }
    s.check("l_operators_commute_and_intertwine", prop_ok);
    let mut thm_ok = true;
    for k in 1..=2usize {
        let basis = kernel_basis(k + 1, 2);
        let pick = |rng: &mut ChaCha8Rng| -> SymSpinorField {
            use rand::Rng;
            let mut acc = SymSpinorField::zero(k + 1);
            for b in &basis {
                acc = acc.add(&b.scale(&ec_int(rng.gen_range(-2..=2))));
            }
            acc
        };
        let f = pick(&mut rng);
        let g = pick(&mut rng);
        let sum = l_apply(0, &f).add(&l_apply(1, &g));
        thm_ok &= is_k_regular(&sum);
        if k == 1 {
            let (p0, p1) = (sum.comp(0).clone(), sum.comp(1).clone());
            thm_ok &= is_regular(&tau_pair(&p0, &p1));
        }
    }
    s.check("regular_products_descend", thm_ok);

    // --- forms layer ------------------------------------------------------
    let w = corpus::random_form(&mut rng, 1, 2, 1);
    s.check("dd_zero", exterior_d(&exterior_d(&w)).is_zero());
    let w2 = corpus::random_form(&mut rng, 2, 2, 0);
    s.check("star_involution", hodge_star(&hodge_star(&w2)) == w2);
    let fsp = corpus::random_sym_spinor(&mut rng, 2, 2, 0);
    let eta_f = eta(&fsp);
    let eta_form = eta_f.to_form();
    s.check(
        "eta_lands_asd_and_round_trips",
        hodge_star(&eta_form).add(&eta_form).is_zero() && eta_inverse(&eta_f) == fsp,
    );
    s.check(
        "eta_d_matches_dk",
        exterior_d(&eta_form) == resolution_3form(&dk_apply(&fsp)),
    );
    let asd = ASDForm::new(
        corpus::random_symfield_with(&mut rng, 2, 0),
        corpus::random_symfield_with(&mut rng, 2, 0),
        corpus::random_symfield_with(&mut rng, 2, 0),
    );
    let (lhs, rhs) = bridge_lemma_sides(&asd);
    s.check("bridge_identity", lhs == rhs);
    let mut anchor_ok = true;
    for p in 0..=4u8 {
        let w = corpus::random_form(&mut rng, p, 2, 0);
        let mut got = DiffForm::zero(p);
        if p < 4 {
            got = got.add(&crate::forms::dstar(&exterior_d(&w)));
        }
        if p >= 1 {
            got = got.add(&exterior_d(&crate::forms::dstar(&w)));
        }
        let mut want = DiffForm::zero(p);
        for (idx, c) in w.comps() {
            want.add_term(idx, c.laplacian().neg());
        }
        anchor_ok &= got == want;
    }
    s.check("dstar_anchor_identity", anchor_ok);
    let wp = corpus::random_form(&mut rng, 2, 2, 0);
    let homotopy_ok = exterior_d(&poincare_homotopy(&wp).unwrap())
        .add(&poincare_homotopy(&exterior_d(&wp)).unwrap())
        == wp;
    s.check("radial_homotopy", homotopy_ok);

    // --- solvers ------------------------------------------------------------
    let g = corpus::random_symfield_with(&mut rng, 3, 0);
    let upois = solvers::poisson_solve_poly(&g).unwrap();
    s.check("poisson_residual", upois.laplacian() == g);
    let gq = corpus::random_quat(&mut rng, 3, 0);
    let fq = solvers::cf_solve_poly(&gq).unwrap();
    s.check("cf_solve_residual", cf_d(&fq) == gq);
    let h = corpus::random_harmonic(&mut rng, 3);
    let flux = flux3form(&h);
    let prim = solvers::asd_primitive_poly(&flux).unwrap().to_form();
    s.check(
        "asd_primitive_postconditions",
        exterior_d(&prim) == flux && hodge_star(&prim).add(&prim).is_zero(),
    );
    let hr = h.re_part();
    let conj = solvers::regular_conjugate(&hr).unwrap();
    s.check(
        "regular_conjugate",
        conj.re() == &hr && cf_d(&conj).is_zero(),
    );
    let mut y_ok = true;
    for h in [SymField::one(), SymField::var(0), SymField::inv_r2_pow(1)] {
        let y = solvers::build_y(&h).unwrap();
        let (r1, r0, d1y) = solvers::check_y(&h, &y);
        y_ok &= r1.is_zero() && r0.is_zero() && d1y.is_zero();
    }
    s.check("build_y_three_checks", y_ok);
    let dec = solvers::inverse_decompose(&SymField::var(0), 2).unwrap();
    s.check(
        "decompose_x0",
        dec.residuals.all_exact() && dec.minimal_denom == 1,
    );
    let dec = solvers::inverse_decompose(&SymField::inv_r2_pow(1), 2).unwrap();
    s.check("decompose_fundamental_harmonic", dec.residuals.all_exact());

    // --- periods ------------------------------------------------------------
    let cert = obstruction_certificate(&SymField::inv_r2_pow(1)).unwrap();
    s.record(
        "obstruction_fundamental_harmonic",
        cert.obstructed && cert.period.coeff == ec_int(4),
        format!("period = {:?} pi^2", cert.period.coeff),
    );
    let h2 = SymField::var(0).pow(2).sub(&SymField::var(1).pow(2));
    let cert = obstruction_certificate(&h2).unwrap();
    s.check("obstruction_clear_polynomial", !cert.obstructed);
    let wexact = exterior_d(&corpus::random_form(&mut rng, 2, 3, 0));
    s.check("stokes_period_zero", period_s3(&wexact).is_zero());
    let wflux = flux3form(&SymField::inv_r2_pow(1));
    let numeric = period_s3_numeric(&wflux, 1.0, 24);
    let exact = period_s3(&wflux).to_f64();
    s.record(
        "period_quadrature_cross_check",
        (numeric - exact).norm() / exact.norm() < 1e-6,
        format!("numeric {} vs exact {}", numeric, exact),
    );

    // --- finite differences --------------------------------------------------
    let points = corpus::random_points(&mut rng, 5);
    let mut fd_ok = true;
    let mut worst = 0.0f64;
    let uq = corpus::random_quat(&mut rng, 2, 1);
    let reports = fd_check_operator(FdOp::D, &OpInput::Quat(uq), &points, 1e-4).unwrap();
    if let Some(r) = fd_worst(&reports) {
        fd_ok &= r.max_rel_error <= 1e-6;
        worst = worst.max(r.max_rel_error);
    }
    let fsp = corpus::random_sym_spinor(&mut rng, 2, 2, 1);
    let reports = fd_check_operator(FdOp::Dk, &OpInput::Sym(fsp), &points, 1e-4).unwrap();
    if let Some(r) = fd_worst(&reports) {
        fd_ok &= r.max_rel_error <= 1e-6;
        worst = worst.max(r.max_rel_error);
    }
    s.record(
        "finite_difference_cross_validation",
        fd_ok,
        format!("worst relative error {worst:.3e}"),
    );

    // --- fixtures -------------------------------------------------------------
    let mut fixtures_ok = true;
    let mut detail = Vec::new();
    for fx in corpus::builtin_fixtures() {
        for outcome in corpus::check_fixture(&fx).unwrap() {
            if !outcome.pass {
                fixtures_ok = false;
                detail.push(format!("{}/{}", outcome.fixture, outcome.check));
            }
        }
    }
    s.record("fixtures", fixtures_ok, detail.join(", "));

    // project the eta projection sanity on a non-ASD form
    let sd = DiffForm::dx(0)
        .wedge(&DiffForm::dx(1))
        .add(&DiffForm::dx(2).wedge(&DiffForm::dx(3)));
    s.check("asd_projection_kills_self_dual", asd_project(&sd).is_zero());
    s.check(
        "half_projection",
        asd_project(&DiffForm::dx(0).wedge(&DiffForm::dx(1))).a1
            == SymField::constant(ec_rat(1, 2)),
    );

    let passed = s.checks.iter().filter(|c| c.pass).count();
    let failed = s.checks.len() - passed;
    SelftestReport {
        seed,
        passed,
        failed,
        checks: s.checks,
    }
}
