//! Canonical JSON forms for every domain type. Reports carry exact
//! rationals as `[numerator, denominator]` pairs, never floats; terms are
//! sorted graded-lexicographically so encoding is byte-deterministic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::SymField;
use crate::forms::{ASDForm, DiffForm};
use crate::periods::{ObstructionCertificate, PiSquaredValue};
use crate::poly::{Mono, Poly4};
use crate::quat::Quat;
use crate::scalar::ExactComplex;
use crate::solvers::{Certificate, Claim, ClaimStatus, DecompositionResult};
use crate::spinor::{MixedSpinorField, SymSpinorField};

fn bigint_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        // decimal-string fallback for values outside the i64 range
        None => json!(n.to_string()),
    }
}

fn bigint_from_json(v: &Value) -> Result<BigInt> {
    if let Some(n) = v.as_i64() {
        return Ok(BigInt::from(n));
    }
    if let Some(s) = v.as_str() {
        return s
            .parse::<BigInt>()
            .map_err(|e| Error::Decode(format!("bad integer `{s}`: {e}")));
    }
    Err(Error::Decode(format!("expected integer, got {v}")))
}

pub fn rational_to_json(r: &BigRational) -> Value {
    json!([bigint_to_json(r.numer()), bigint_to_json(r.denom())])
}

pub fn rational_from_json(v: &Value) -> Result<BigRational> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Error::Decode(format!("expected [num, den], got {v}")))?;
    let num = bigint_from_json(&arr[0])?;
    let den = bigint_from_json(&arr[1])?;
    if den == BigInt::from(0) {
        return Err(Error::Decode("zero denominator".into()));
    }
    Ok(BigRational::new(num, den))
}

fn coeff_to_json(c: &ExactComplex) -> Value {
    json!([
        bigint_to_json(c.re.numer()),
        bigint_to_json(c.re.denom()),
        bigint_to_json(c.im.numer()),
        bigint_to_json(c.im.denom()),
    ])
}

fn coeff_from_json(v: &Value) -> Result<ExactComplex> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 4)
        .ok_or_else(|| {
            Error::Decode(format!(
                "expected [re_num, re_den, im_num, im_den], got {v}"
            ))
        })?;
    let rn = bigint_from_json(&arr[0])?;
    let rd = bigint_from_json(&arr[1])?;
    let im_n = bigint_from_json(&arr[2])?;
    let im_d = bigint_from_json(&arr[3])?;
    if rd == BigInt::from(0) || im_d == BigInt::from(0) {
        return Err(Error::Decode("zero denominator".into()));
    }
    Ok(ExactComplex::new(
        BigRational::new(rn, rd),
        BigRational::new(im_n, im_d),
    ))
}

/// `{"m": N, "terms": [[[e0,e1,e2,e3],[re_num,re_den,im_num,im_den]], ..]}`
/// with terms sorted graded-lex.
pub fn field_to_json(f: &SymField) -> Value {
    let terms: Vec<Value> = f
        .num()
        .terms()
        .map(|(mono, coeff)| {
            json!([
                [mono.0[0], mono.0[1], mono.0[2], mono.0[3]],
                coeff_to_json(coeff)
            ])
        })
        .collect();
    json!({"m": f.denom_exp(), "terms": terms})
}

pub fn field_from_json(v: &Value) -> Result<SymField> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Decode(format!("expected field object, got {v}")))?;
    let m = obj
        .get("m")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Decode("field needs a nonnegative `m`".into()))?;
    let m = u32::try_from(m).map_err(|_| Error::Decode("`m` too large".into()))?;
    let terms = obj
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Decode("field needs a `terms` array".into()))?;
    let mut p = Poly4::zero();
    for t in terms {
        let pair = t
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::Decode(format!("bad term {t}")))?;
        let expo = pair[0]
            .as_array()
            .filter(|a| a.len() == 4)
            .ok_or_else(|| Error::Decode(format!("bad exponent tuple {}", pair[0])))?;
        let mut e = [0u16; 4];
        for (i, ev) in expo.iter().enumerate() {
            let n = ev
                .as_u64()
                .ok_or_else(|| Error::Decode(format!("bad exponent {ev}")))?;
            e[i] = u16::try_from(n).map_err(|_| Error::Decode("exponent too large".into()))?;
        }
        p.add_term(Mono(e), coeff_from_json(&pair[1])?);
    }
    Ok(SymField::new(p, m))
}

pub fn quat_to_json(u: &Quat) -> Value {
    json!({
        "w": field_to_json(&u.w),
        "x": field_to_json(&u.x),
        "y": field_to_json(&u.y),
        "z": field_to_json(&u.z),
    })
}

pub fn quat_from_json(v: &Value) -> Result<Quat> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Decode(format!("expected quaternion object, got {v}")))?;
    let comp = |name: &str| -> Result<SymField> {
        field_from_json(
            obj.get(name)
                .ok_or_else(|| Error::Decode(format!("quaternion needs `{name}`")))?,
        )
    };
    Ok(Quat::new(comp("w")?, comp("x")?, comp("y")?, comp("z")?))
}

pub fn pair_to_json(f0: &SymField, f1: &SymField) -> Value {
    json!({"f0": field_to_json(f0), "f1": field_to_json(f1)})
}

pub fn pair_from_json(v: &Value) -> Result<(SymField, SymField)> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Decode(format!("expected pair object, got {v}")))?;
    let f0 = field_from_json(
        obj.get("f0")
            .ok_or_else(|| Error::Decode("pair needs `f0`".into()))?,
    )?;
    let f1 = field_from_json(
        obj.get("f1")
            .ok_or_else(|| Error::Decode("pair needs `f1`".into()))?,
    )?;
    Ok((f0, f1))
}

pub fn sym_spinor_to_json(f: &SymSpinorField) -> Value {
    json!({
        "kind": "sym_spinor",
        "k": f.k(),
        "comps": f.comps().iter().map(field_to_json).collect::<Vec<_>>(),
    })
}

pub fn sym_spinor_from_json(v: &Value) -> Result<SymSpinorField> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Decode(format!("expected spinor object, got {v}")))?;
    if obj.get("kind").and_then(Value::as_str) != Some("sym_spinor") {
        return Err(Error::Decode("expected kind `sym_spinor`".into()));
    }
    let k = obj
        .get("k")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Decode("spinor needs `k`".into()))? as usize;
    if k > 64 {
        return Err(Error::Decode("rank too large".into()));
    }
    let comps = obj
        .get("comps")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Decode("spinor needs `comps`".into()))?;
    if comps.len() != k + 1 {
        return Err(Error::Decode(format!(
            "rank-{k} symmetric spinor needs {} comps, got {}",
            k + 1,
            comps.len()
        )));
    }
    let comps = comps
        .iter()
        .map(field_from_json)
        .collect::<Result<Vec<_>>>()?;
    Ok(SymSpinorField::new(k, comps))
}

pub fn mixed_spinor_to_json(g: &MixedSpinorField) -> Value {
    json!({
        "kind": "mixed_spinor",
        "k": g.k(),
        "comps": [
            g.row(0).iter().map(field_to_json).collect::<Vec<_>>(),
            g.row(1).iter().map(field_to_json).collect::<Vec<_>>(),
        ],
    })
}

pub fn mixed_spinor_from_json(v: &Value) -> Result<MixedSpinorField> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Decode(format!("expected spinor object, got {v}")))?;
    if obj.get("kind").and_then(Value::as_str) != Some("mixed_spinor") {
        return Err(Error::Decode("expected kind `mixed_spinor`".into()));
    }
    let k = obj
        .get("k")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Decode("spinor needs `k`".into()))? as usize;
    if k == 0 || k > 64 {
        return Err(Error::Decode("rank out of range".into()));
    }
    let comps = obj
        .get("comps")
        .and_then(Value::as_array)
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Error::Decode("mixed spinor needs 2 rows of comps".into()))?;
    let mut rows: Vec<Vec<SymField>> = Vec::with_capacity(2);
    for row in comps {
        let row = row
            .as_array()
            .ok_or_else(|| Error::Decode("bad spinor row".into()))?;
        if row.len() != k {
            return Err(Error::Decode(format!(
                "rank-{k} mixed spinor needs rows of length {k}, got {}",
                row.len()
            )));
        }
        rows.push(row.iter().map(field_from_json).collect::<Result<Vec<_>>>()?);
    }
    let r1 = rows.pop().expect("two rows");
    let r0 = rows.pop().expect("two rows");
    Ok(MixedSpinorField::new(k, [r0, r1]))
}

pub fn form_to_json(w: &DiffForm) -> Value {
    json!({
        "kind": "form",
        "p": w.degree(),
        "comps": w
            .comps()
            .map(|(idx, f)| json!([idx, field_to_json(f)]))
            .collect::<Vec<_>>(),
    })
}

pub fn form_from_json(v: &Value) -> Result<DiffForm> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Decode(format!("expected form object, got {v}")))?;
    if obj.get("kind").and_then(Value::as_str) != Some("form") {
        return Err(Error::Decode("expected kind `form`".into()));
    }
    let p = obj
        .get("p")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Decode("form needs `p`".into()))?;
    if p > 4 {
        return Err(Error::Decode("form degree out of range".into()));
    }
    let mut w = DiffForm::zero(p as u8);
    let comps = obj
        .get("comps")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Decode("form needs `comps`".into()))?;
    for item in comps {
        let pair = item
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::Decode(format!("bad form term {item}")))?;
        let idx_arr = pair[0]
            .as_array()
            .ok_or_else(|| Error::Decode("bad index tuple".into()))?;
        if idx_arr.len() != p as usize {
            return Err(Error::Decode("index tuple length != degree".into()));
        }
        let mut idx = Vec::with_capacity(idx_arr.len());
        for iv in idx_arr {
            let n = iv
                .as_u64()
                .filter(|&n| n < 4)
                .ok_or_else(|| Error::Decode(format!("bad form index {iv}")))?;
            idx.push(n as u8);
        }
        if idx.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Decode(
                "form indices must be strictly increasing".into(),
            ));
        }
        w.add_term(&idx, field_from_json(&pair[1])?);
    }
    Ok(w)
}

pub fn asd_to_json(w: &ASDForm) -> Value {
    json!({
        "kind": "asd_form",
        "e": [field_to_json(&w.a1), field_to_json(&w.a2), field_to_json(&w.a3)],
    })
}

pub fn asd_from_json(v: &Value) -> Result<ASDForm> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Decode(format!("expected asd_form object, got {v}")))?;
    if obj.get("kind").and_then(Value::as_str) != Some("asd_form") {
        return Err(Error::Decode("expected kind `asd_form`".into()));
    }
    let e = obj
        .get("e")
        .and_then(Value::as_array)
        .filter(|a| a.len() == 3)
        .ok_or_else(|| Error::Decode("asd_form needs 3 `e` coefficients".into()))?;
    Ok(ASDForm::new(
        field_from_json(&e[0])?,
        field_from_json(&e[1])?,
        field_from_json(&e[2])?,
    ))
}

pub fn certificate_to_json(c: &Certificate) -> Value {
    json!({
        "claims": c
            .claims
            .iter()
            .map(|claim| {
                let status = match &claim.status {
                    ClaimStatus::ExactZero => json!("exact-zero"),
                    ClaimStatus::Nonzero => json!("nonzero"),
                    ClaimStatus::Value(v) => json!({"value": v}),
                };
                json!({"name": claim.name, "status": status, "witness": claim.witness})
            })
            .collect::<Vec<_>>(),
    })
}

pub fn certificate_from_json(v: &Value) -> Result<Certificate> {
    let claims = v
        .as_object()
        .and_then(|o| o.get("claims"))
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Decode("certificate needs `claims`".into()))?;
    let mut out = Certificate::default();
    for c in claims {
        let obj = c
            .as_object()
            .ok_or_else(|| Error::Decode("bad claim".into()))?;
        let name = obj
            .get("name")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Decode("claim needs `name`".into()))?
            .to_string();
        let status = match obj.get("status") {
            Some(Value::String(s)) if s == "exact-zero" => ClaimStatus::ExactZero,
            Some(Value::String(s)) if s == "nonzero" => ClaimStatus::Nonzero,
            Some(Value::Object(o)) if o.contains_key("value") => {
                ClaimStatus::Value(o["value"].clone())
            }
            other => return Err(Error::Decode(format!("bad claim status {other:?}"))),
        };
        let witness = obj.get("witness").cloned().unwrap_or(Value::Null);
        out.claims.push(Claim {
            name,
            status,
            witness,
        });
    }
    Ok(out)
}

/// Decomposition results serialize with the six coefficient functions,
/// both 1-regular pairs, the graded solution and the full certificate.
pub fn decomposition_to_json(r: &DecompositionResult) -> Value {
    json!({
        "f_pair": pair_to_json(&r.f_pair.0, &r.f_pair.1),
        "g_pair": pair_to_json(&r.g_pair.0, &r.g_pair.1),
        "F0": field_to_json(&r.f0_cap),
        "F1": field_to_json(&r.f1_cap),
        "G0": field_to_json(&r.g0_cap),
        "G1": field_to_json(&r.g1_cap),
        "X": sym_spinor_to_json(&r.x),
        "minimal_denom": r.minimal_denom,
        "certificate": certificate_to_json(&r.residuals),
    })
}

pub fn pi2_to_json(p: &PiSquaredValue) -> Value {
    rational_to_json(&p.coeff.re)
}

/// `{"h": field, "period_pi2": [num, den], "status": "obstructed"|"clear"}`
/// (an extra `period_pi2_im` appears only when the period has an
/// imaginary part).
pub fn obstruction_to_json(c: &ObstructionCertificate) -> Value {
    let mut obj = serde_json::Map::new();
    obj.insert("h".into(), field_to_json(&c.h));
    obj.insert("period_pi2".into(), pi2_to_json(&c.period));
    if !c.period.coeff.im.is_zero() {
        obj.insert(
            "period_pi2_im".into(),
            rational_to_json(&c.period.coeff.im),
        );
    }
    obj.insert(
        "status".into(),
        json!(if c.obstructed { "obstructed" } else { "clear" }),
    );
    Value::Object(obj)
}

pub fn fixture_from_json_str(s: &str) -> Result<crate::corpus::Fixture> {
    let v: Value =
        serde_json::from_str(s).map_err(|e| Error::Decode(format!("bad fixture JSON: {e}")))?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Decode("fixture must be an object".into()))?;
    let name = obj
        .get("name")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Decode("fixture needs `name`".into()))?
        .to_string();
    let payload = obj
        .get("payload")
        .cloned()
        .ok_or_else(|| Error::Decode("fixture needs `payload`".into()))?;
    let claims = obj
        .get("claims")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Decode("fixture needs `claims`".into()))?
        .iter()
        .map(|c| {
            let o = c
                .as_object()
                .ok_or_else(|| Error::Decode("bad fixture claim".into()))?;
            Ok(crate::corpus::FixtureClaim {
                check: o
                    .get("check")
                    .and_then(Value::as_str)
                    .ok_or_else(|| Error::Decode("claim needs `check`".into()))?
                    .to_string(),
                expected: o
                    .get("expected")
                    .and_then(Value::as_bool)
                    .ok_or_else(|| Error::Decode("claim needs `expected`".into()))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(crate::corpus::Fixture {
        name,
        payload,
        claims,
    })
}
