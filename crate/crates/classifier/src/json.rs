//! JSON forms of verdicts and certificates. A certificate carries its
//! endomorphisms, so `validate_certificate` can run on it alone.

use inertia_endo::json::{endo, endo_from};
use inertia_group::json::{self as gj, as_int, as_rat, as_u64, field, get_arr, get_str, int, obj, rat};
use inertia_group::GroupError;
use serde_json::{json, Value};

use crate::certificate::{Certificate, EndoScalars};
use crate::decide::EndoForm;
use crate::{ClassifyError, Verdict};

fn bad(what: &str) -> ClassifyError {
    ClassifyError::Group(GroupError::Invalid(format!("malformed certificate: {what}")))
}

fn ints<T: ToString>(xs: &[T]) -> Value {
    Value::Array(xs.iter().map(|x| int(x.to_string())).collect())
}

fn slots(xs: &[usize]) -> Value {
    Value::Array(xs.iter().map(|x| int(x + 1)).collect())
}

pub fn certificate(c: &Certificate) -> Value {
    let endos = Value::Array(c.endos().iter().map(endo).collect());
    match c {
        Certificate::CaseA { m, image_orders, index_bound, .. } => obj(vec![
            ("schemaVersion", json!(gj::SCHEMA_VERSION)),
            ("type", json!("certificate")),
            ("case", json!("A")),
            ("endomorphisms", endos),
            ("m", ints(m)),
            ("a0", json!("intersection of the kernels of phi_i - m_i")),
            ("imageOrders", ints(image_orders)),
            ("indexBound", int(index_bound)),
        ]),
        Certificate::CaseB { pi, pi1, b_slots, d_slots, c_slots, v, rank, c_scale, scalars, index_bound, .. } => {
            let sc: Vec<Value> = scalars
                .iter()
                .map(|s| {
                    obj(vec![
                        ("mn", s.mn.as_ref().map_or(Value::Null, rat)),
                        ("slotScalars", Value::Array(s.slot_scalars.iter().map(rat).collect())),
                        ("imageOrder", int(&s.image_order)),
                    ])
                })
                .collect();
            obj(vec![
                ("schemaVersion", json!(gj::SCHEMA_VERSION)),
                ("type", json!("certificate")),
                ("case", json!("B")),
                ("endomorphisms", endos),
                ("pi", ints(pi)),
                ("pi1", ints(pi1)),
                ("bSlots", slots(b_slots)),
                ("dSlots", slots(d_slots)),
                ("cSlots", slots(c_slots)),
                ("v", gj::handle(v)),
                ("rank", int(rank)),
                ("cScale", int(c_scale)),
                ("scalars", Value::Array(sc)),
                ("indexBound", int(index_bound)),
            ])
        }
    }
}

fn int_list(v: &Value, k: &str) -> Result<Vec<num_bigint::BigInt>, ClassifyError> {
    Ok(get_arr(v, k)?.iter().map(as_int).collect::<Result<_, _>>()?)
}

fn u64_list(v: &Value, k: &str) -> Result<Vec<u64>, ClassifyError> {
    Ok(get_arr(v, k)?.iter().map(as_u64).collect::<Result<_, _>>()?)
}

fn slot_list(v: &Value, k: &str) -> Result<Vec<usize>, ClassifyError> {
    u64_list(v, k)?.into_iter().map(|s| s.checked_sub(1).map(|s| s as usize).ok_or_else(|| bad("slots are 1-based"))).collect()
}

pub fn certificate_from(v: &Value) -> Result<Certificate, ClassifyError> {
    if get_str(v, "schemaVersion")? != gj::SCHEMA_VERSION {
        return Err(bad("schema version"));
    }
    if get_str(v, "type")? != "certificate" {
        return Err(bad("not a certificate"));
    }
    let endos = get_arr(v, "endomorphisms")?.iter().map(endo_from).collect::<Result<Vec<_>, _>>()?;
    let g = &endos.first().ok_or_else(|| bad("no endomorphisms"))?.ambient;
    match get_str(v, "case")? {
        "A" => Ok(Certificate::CaseA {
            endos: endos.clone(),
            m: int_list(v, "m")?,
            image_orders: int_list(v, "imageOrders")?,
            index_bound: as_int(field(v, "indexBound")?)?,
        }),
        "B" => {
            let mut scalars = Vec::new();
            for s in get_arr(v, "scalars")? {
                let mn = match field(s, "mn")? {
                    Value::Null => None,
                    x => Some(as_rat(x)?),
                };
                scalars.push(EndoScalars {
                    mn,
                    slot_scalars: get_arr(s, "slotScalars")?.iter().map(as_rat).collect::<Result<_, _>>()?,
                    image_order: as_int(field(s, "imageOrder")?)?,
                });
            }
            Ok(Certificate::CaseB {
                pi: u64_list(v, "pi")?,
                pi1: u64_list(v, "pi1")?,
                b_slots: slot_list(v, "bSlots")?,
                d_slots: slot_list(v, "dSlots")?,
                c_slots: slot_list(v, "cSlots")?,
                v: gj::handle_from(g, field(v, "v")?)?,
                rank: as_u64(field(v, "rank")?)?,
                c_scale: as_int(field(v, "cScale")?)?,
                scalars,
                index_bound: as_int(field(v, "indexBound")?)?,
                endos: endos.clone(),
            })
        }
        _ => Err(bad("case")),
    }
}

pub fn verdict(v: &Verdict) -> Value {
    let per: Vec<Value> = v
        .per_endo
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let form = match &e.form {
                Some(EndoForm::A { m }) => obj(vec![("case", json!("A")), ("m", int(m))]),
                Some(EndoForm::B { mu }) => obj(vec![("case", json!("B")), ("mn", mu.as_ref().map_or(Value::Null, rat))]),
                None => Value::Null,
            };
            obj(vec![
                ("index", int(i + 1)),
                ("rin", json!(e.rin)),
                ("lin", json!(e.lin)),
                ("form", form),
                ("reason", json!(e.reason)),
            ])
        })
        .collect();
    let w = |w: &Option<inertia_witness::Witness>| w.as_ref().map_or(Value::Null, inertia_witness::json::witness);
    obj(vec![
        ("schemaVersion", json!(gj::SCHEMA_VERSION)),
        ("type", json!("verdict")),
        ("rin", json!(v.rin)),
        ("lin", json!(v.lin)),
        ("reason", json!(v.reason)),
        ("endomorphisms", Value::Array(per)),
        ("certificate", v.certificate.as_ref().map_or(Value::Null, certificate)),
        ("witness", w(&v.witness)),
        ("linWitness", w(&v.lin_witness)),
    ])
}
