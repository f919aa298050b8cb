//! Property tests for the algebraic substrate: ring axioms, the Leibniz
//! rule, canonicalization, evaluation consistency, form calculus, and
//! serialization round-trips.

use num_traits::ToPrimitive;
use proptest::prelude::*;

use fueter::field::SymField;
use fueter::forms::{exterior_d, hodge_star, DiffForm};
use fueter::json;
use fueter::poly::{Mono, Poly4};
use fueter::quat::{cf_d, qmul, tau_embed, tau_pair, Quat};
use fueter::scalar::{ec, ec_is_zero, ExactComplex};
use fueter::spinor::kernel_basis;

fn arb_coeff() -> impl Strategy<Value = ExactComplex> {
    (-4i64..=4, 1i64..=3, -4i64..=4, 1i64..=3).prop_map(|(rn, rd, im_n, im_d)| ec(rn, rd, im_n, im_d))
}

fn arb_mono() -> impl Strategy<Value = Mono> {
    (0u16..=2, 0u16..=2, 0u16..=2, 0u16..=2).prop_map(|(a, b, c, d)| Mono([a, b, c, d]))
}

fn arb_poly() -> impl Strategy<Value = Poly4> {
    proptest::collection::vec((arb_mono(), arb_coeff()), 0..5).prop_map(|terms| {
        let mut p = Poly4::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    })
}

fn arb_field() -> impl Strategy<Value = SymField> {
    (arb_poly(), 0u32..=2).prop_map(|(p, m)| SymField::new(p, m))
}

fn arb_point() -> impl Strategy<Value = [f64; 4]> {
    ([-2.0f64..2.0, -2.0..2.0, -2.0..2.0, -2.0..2.0])
        .prop_filter("away from the singularity", |p| {
            p.iter().map(|v| v * v).sum::<f64>() >= 0.25
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn poly_ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn leibniz_rule(f in arb_field(), g in arb_field()) {
        for axis in 0..4 {
            prop_assert_eq!(
                f.mul(&g).partial(axis),
                f.partial(axis).mul(&g).add(&f.mul(&g.partial(axis)))
            );
        }
    }

    #[test]
    fn canonicalization_idempotent_and_equal_fields_identical(f in arb_field(), k in 0u32..=2) {
        // re-canonicalizing is the identity
        let again = SymField::new(f.num().clone(), f.denom_exp());
        prop_assert_eq!(&again, &f);
        // the same field lifted to a higher denominator collapses back
        let lifted = SymField::new(f.num().mul(&Poly4::r2().pow(k)), f.denom_exp() + k);
        prop_assert_eq!(&lifted, &f);
    }

    #[test]
    fn eval_respects_arithmetic(f in arb_field(), g in arb_field(), p in arb_point()) {
        let lhs = f.add(&g).eval_point(p).unwrap();
        let rhs = f.eval_point(p).unwrap() + g.eval_point(p).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + lhs.norm()));
        let lhs = f.mul(&g).eval_point(p).unwrap();
        let rhs = f.eval_point(p).unwrap() * g.eval_point(p).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + lhs.norm()));
    }

    #[test]
    fn homogeneous_parts_sum_back(f in arb_field()) {
        let parts = f.homogeneous_parts();
        let sum = parts.iter().fold(SymField::zero(), |acc, (_, p)| acc.add(p));
        prop_assert_eq!(sum, f.clone());
        for (deg, part) in parts {
            prop_assert!(!part.is_zero());
            // Euler's identity pins the homogeneity degree:
            // sum_i x_i d_i(part) = deg * part
            let mut euler = SymField::zero();
            for axis in 0..4 {
                euler = euler.add(&SymField::var(axis).mul(&part.partial(axis)));
            }
            let expected = part.scale(&ec(deg, 1, 0, 1));
            prop_assert_eq!(euler, expected);
        }
    }

    #[test]
    fn quaternion_conjugation_antihomomorphism(p in arb_poly(), q in arb_poly()) {
        let u = Quat::new(
            SymField::new(p.clone(), 0),
            SymField::new(q.clone(), 0),
            SymField::new(p.mul(&q), 0),
            SymField::new(p.add(&q), 0),
        );
        let v = Quat::new(
            SymField::new(q.clone(), 1),
            SymField::new(p.clone(), 0),
            SymField::one(),
            SymField::new(q.mul(&q), 0),
        );
        prop_assert_eq!(qmul(&u, &v).conj(), qmul(&v.conj(), &u.conj()));
        // tau is a ring homomorphism
        prop_assert_eq!(
            tau_embed(&qmul(&u, &v)),
            tau_embed(&u).mul(&tau_embed(&v))
        );
    }

    #[test]
    fn exterior_square_zero(f0 in arb_field(), f1 in arb_field(), f2 in arb_field(), f3 in arb_field()) {
        let mut w = DiffForm::zero(1);
        for (i, f) in [f0, f1, f2, f3].into_iter().enumerate() {
            w.add_term(&[i as u8], f);
        }
        prop_assert!(exterior_d(&exterior_d(&w)).is_zero());
    }

    #[test]
    fn hodge_involution_signs(f in arb_field(), p in 0u8..=4) {
        let idx: Vec<u8> = (0..p).collect();
        let mut w = DiffForm::zero(p);
        w.add_term(&idx, f);
        let twice = hodge_star(&hodge_star(&w));
        // ** = (-1)^{p(4-p)} id
        let sign = if (p as u32 * (4 - p as u32)).is_multiple_of(2) { 1 } else { -1 };
        prop_assert_eq!(twice, if sign > 0 { w } else { w.neg() });
    }

    #[test]
    fn json_round_trips(f in arb_field()) {
        let v = json::field_to_json(&f);
        prop_assert_eq!(json::field_from_json(&v).unwrap(), f.clone());
        // encoding is stable under decode -> encode
        let v2 = json::field_to_json(&json::field_from_json(&v).unwrap());
        prop_assert_eq!(serde_json::to_string(&v).unwrap(), serde_json::to_string(&v2).unwrap());
        let u = Quat::new(f.clone(), f.neg(), SymField::zero(), f.clone());
        prop_assert_eq!(json::quat_from_json(&json::quat_to_json(&u)).unwrap(), u);
    }
}

#[test]
fn regular_components_are_harmonic() {
    // each component of a quaternionic regular function is harmonic
    for d in 0..=3u32 {
        for f in kernel_basis(1, d) {
            let u = tau_pair(f.comp(0), f.comp(1));
            assert!(cf_d(&u).is_zero());
            for a in 0..4 {
                assert!(u.comp(a).laplacian().is_zero(), "component {a} at degree {d}");
            }
        }
    }
}

#[test]
fn moment_oracle_monte_carlo() {
    // seeded Monte-Carlo cross-check of the exact moment formula, 1e-3
    // relative as stated
    use rand::Rng as _;
    use rand::SeedableRng as _;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(55);
    let samples = 400_000usize;
    let mut acc = [0.0f64; 2];
    for _ in 0..samples {
        // uniform point on S^3 via normalized gaussians (Box-Muller)
        let mut p = [0.0f64; 4];
        for pair in 0..2 {
            let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
            let u2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let r = (-2.0 * u1.ln()).sqrt();
            p[2 * pair] = r * u2.cos();
            p[2 * pair + 1] = r * u2.sin();
        }
        let norm = (p.iter().map(|v| v * v).sum::<f64>()).sqrt();
        for v in &mut p {
            *v /= norm;
        }
        acc[0] += 1.0;
        acc[1] += p[0] * p[0];
    }
    let area = 2.0 * std::f64::consts::PI * std::f64::consts::PI;
    let moment_est = area * acc[1] / acc[0];
    // the exact volume moment must equal the 3-sphere area itself
    let exact0 = fueter::periods::sphere_moment([0, 0, 0, 0]).to_f64().re;
    assert!((area - exact0).abs() / area < 1e-12);
    let exact2 = fueter::periods::sphere_moment([2, 0, 0, 0]).to_f64().re;
    assert!(
        (moment_est - exact2).abs() / exact2 < 5e-3,
        "MC estimate {moment_est} vs exact {exact2}"
    );
}

#[test]
fn decode_rejects_malformed_payloads() {
    for bad in [
        r#"{"m": -1, "terms": []}"#,
        r#"{"m": 0, "terms": [[[0,0,0],[1,1,0,1]]]}"#,
        r#"{"m": 0, "terms": [[[0,0,0,0],[1,0,0,1]]]}"#,
        r#"{"terms": []}"#,
        r#"[1,2]"#,
    ] {
        let v: serde_json::Value = match serde_json::from_str(bad) {
            Ok(v) => v,
            Err(_) => continue,
        };
        assert!(json::field_from_json(&v).is_err(), "accepted {bad}");
    }
    // spinor rank bounds
    let bad = serde_json::json!({"kind": "sym_spinor", "k": 100000, "comps": []});
    assert!(json::sym_spinor_from_json(&bad).is_err());
}

#[test]
fn pi_squared_values_are_exact_rationals() {
    let p = fueter::periods::sphere_moment([4, 2, 0, 0]);
    // 2 * (4!/(4^2 2!)) * (2!/(4 * 1!)) / (3+1)! = 2 * (3/4) * (1/2) / 24
    let expected = ec(1, 32, 0, 1);
    assert!(ec_is_zero(&(p.coeff.clone() - expected)));
    assert!(p.coeff.re.to_f64().is_some());
}
