//! Deterministic generators of test inputs: harmonic polynomial bases,
//! seeded random fields, and the named fixtures packaged as JSON.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::SymField;
use crate::forms::DiffForm;
use crate::linalg;
use crate::poly::Poly4;
use crate::quat::Quat;
use crate::scalar::{ec, ec_one, ec_zero};
use crate::spinor::{monomials_of_degree, MixedSpinorField, SymSpinorField};

/// Exact basis of homogeneous degree-d harmonic polynomials, as the
/// nullspace of the Laplacian constraint matrix. The dimension is
/// measured, not assumed; the observed values are pinned in tests.
pub fn harmonic_basis(d: u32) -> Vec<SymField> {
    let mons = monomials_of_degree(d);
    if d < 2 {
        return mons
            .iter()
            .map(|m| SymField::new(Poly4::monomial(m.0, ec_one()), 0))
            .collect();
    }
    let out_mons = monomials_of_degree(d - 2);
    let out_index: std::collections::BTreeMap<_, _> = out_mons
        .iter()
        .enumerate()
        .map(|(i, m)| (*m, i))
        .collect();
    let mut mat = vec![vec![ec_zero(); mons.len()]; out_mons.len()];
    for (mi, mono) in mons.iter().enumerate() {
        let lap = SymField::new(Poly4::monomial(mono.0, ec_one()), 0).laplacian();
        for (om, coeff) in lap.num().terms() {
            mat[out_index[om]][mi] = coeff.clone();
        }
    }
    linalg::nullspace(&mat, mons.len())
        .into_iter()
        .map(|v| {
            let mut p = Poly4::zero();
            for (mi, mono) in mons.iter().enumerate() {
                p.add_term(*mono, v[mi].clone());
            }
            SymField::new(p, 0)
        })
        .collect()
}

/// Deterministic pseudo-random field with small rational coefficients:
/// a sparse polynomial of degree <= `degree_max` over `r2^m` with
/// `m <= m_max`. Identical across runs and platforms for a fixed seed.
pub fn random_symfield(seed: u64, degree_max: u32, m_max: u32) -> SymField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_symfield_with(&mut rng, degree_max, m_max)
}

pub fn random_symfield_with(rng: &mut ChaCha8Rng, degree_max: u32, m_max: u32) -> SymField {
    let m = if m_max == 0 {
        0
    } else {
        rng.gen_range(0..=m_max)
    };
    let nterms = rng.gen_range(2..=5u32);
    let mut p = Poly4::zero();
    for _ in 0..nterms {
        let d = rng.gen_range(0..=degree_max);
        let mut e = [0u16; 4];
        for _ in 0..d {
            e[rng.gen_range(0..4usize)] += 1;
        }
        let re_n = rng.gen_range(-3..=3i64);
        let im_n = rng.gen_range(-3..=3i64);
        let den = rng.gen_range(1..=2i64);
        p.add_term(crate::poly::Mono(e), ec(re_n, den, im_n, den));
    }
    SymField::new(p, m)
}

pub fn random_sym_spinor(rng: &mut ChaCha8Rng, k: usize, degree_max: u32, m_max: u32) -> SymSpinorField {
    SymSpinorField::new(
        k,
        (0..=k)
            .map(|_| random_symfield_with(rng, degree_max, m_max))
            .collect(),
    )
}

pub fn random_mixed_spinor(rng: &mut ChaCha8Rng, k: usize, degree_max: u32, m_max: u32) -> MixedSpinorField {
    let row = |rng: &mut ChaCha8Rng| -> Vec<SymField> {
        (0..k).map(|_| random_symfield_with(rng, degree_max, m_max)).collect()
    };
    let r0 = row(rng);
    let r1 = row(rng);
    MixedSpinorField::new(k, [r0, r1])
}

pub fn random_quat(rng: &mut ChaCha8Rng, degree_max: u32, m_max: u32) -> Quat {
    Quat::new(
        random_symfield_with(rng, degree_max, m_max),
        random_symfield_with(rng, degree_max, m_max),
        random_symfield_with(rng, degree_max, m_max),
        random_symfield_with(rng, degree_max, m_max),
    )
}

pub fn random_form(rng: &mut ChaCha8Rng, p: u8, degree_max: u32, m_max: u32) -> DiffForm {
    let mut w = DiffForm::zero(p);
    let tuples: Vec<Vec<u8>> = match p {
        0 => vec![vec![]],
        1 => vec![vec![0], vec![1], vec![2], vec![3]],
        2 => vec![
            vec![0, 1],
            vec![0, 2],
            vec![0, 3],
            vec![1, 2],
            vec![1, 3],
            vec![2, 3],
        ],
        3 => vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        4 => vec![vec![0, 1, 2, 3]],
        _ => panic!("degree out of range"),
    };
    for idx in tuples {
        w.add_term(&idx, random_symfield_with(rng, degree_max, m_max));
    }
    w
}

/// Random rational-coefficient harmonic polynomial of degree <= `d`, as a
/// combination of exact basis elements.
pub fn random_harmonic(rng: &mut ChaCha8Rng, d: u32) -> SymField {
    let mut acc = SymField::zero();
    for deg in 0..=d {
        for b in harmonic_basis(deg) {
            let re = rng.gen_range(-2..=2i64);
            let im = rng.gen_range(-1..=1i64);
            if re != 0 || im != 0 {
                acc = acc.add(&b.scale(&ec(re, 1, im, 1)));
            }
        }
    }
    acc
}

/// Random admissible evaluation points: coordinates in [-2, 2] with
/// `r2 >= 0.25`, bounded away from the singularity.
pub fn random_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<[f64; 4]> {
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let p = [
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
        ];
        if p.iter().map(|v| v * v).sum::<f64>() >= 0.25 {
            out.push(p);
        }
    }
    out
}

/// A named fixture: a serialized payload plus the exact claims expected
/// to hold for it. Claims are checked through public operations only.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub payload: serde_json::Value,
    pub claims: Vec<FixtureClaim>,
}

#[derive(Clone, Debug)]
pub struct FixtureClaim {
    pub check: String,
    pub expected: bool,
}

/// Outcome of running one fixture claim.
#[derive(Clone, Debug)]
pub struct FixtureOutcome {
    pub fixture: String,
    pub check: String,
    pub pass: bool,
}

/// The embedded fixture corpus (versioned directory `fixtures/v1`).
pub fn builtin_fixtures() -> Vec<Fixture> {
    const SOURCES: &[&str] = &[
        include_str!("../fixtures/v1/one_regular_pair.json"),
        include_str!("../fixtures/v1/non_regular_pair.json"),
        include_str!("../fixtures/v1/two_regular_from_imaginary_regular.json"),
        include_str!("../fixtures/v1/fundamental_harmonic.json"),
        include_str!("../fixtures/v1/regular_quaternion.json"),
    ];
    SOURCES
        .iter()
        .map(|s| crate::json::fixture_from_json_str(s).expect("builtin fixture parses"))
        .collect()
}

/// Run every claim of a fixture.
pub fn check_fixture(fx: &Fixture) -> Result<Vec<FixtureOutcome>> {
    let mut out = Vec::new();
    for claim in &fx.claims {
        let got = eval_claim(&claim.check, &fx.payload)?;
        out.push(FixtureOutcome {
            fixture: fx.name.clone(),
            check: claim.check.clone(),
            pass: got == claim.expected,
        });
    }
    Ok(out)
}

fn eval_claim(check: &str, payload: &serde_json::Value) -> Result<bool> {
    match check {
        "is_k_regular" => {
            let f = crate::json::sym_spinor_from_json(payload)?;
            Ok(crate::spinor::is_k_regular(&f))
        }
        "tau_pair_regular" => {
            let (f0, f1) = crate::json::pair_from_json(payload)?;
            Ok(crate::quat::is_regular(&crate::quat::tau_pair(&f0, &f1)))
        }
        "quat_regular" => {
            let u = crate::json::quat_from_json(payload)?;
            Ok(crate::quat::is_regular(&u))
        }
        "harmonic" => {
            let f = crate::json::field_from_json(payload)?;
            Ok(f.laplacian().is_zero())
        }
        "eta_closed" => {
            let f = crate::json::sym_spinor_from_json(payload)?;
            let w = crate::forms::eta(&f);
            Ok(crate::forms::exterior_d(&w.to_form()).is_zero())
        }
        "eta_roundtrip" => {
            let f = crate::json::sym_spinor_from_json(payload)?;
            Ok(crate::forms::eta_inverse(&crate::forms::eta(&f)) == f)
        }
        other => Err(Error::Decode(format!("unknown fixture check `{other}`"))),
    }
}
