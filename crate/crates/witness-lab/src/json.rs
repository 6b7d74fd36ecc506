//! JSON form of a witness. It carries the endomorphism so that it can be
//! re-verified on its own.

use inertia_endo::json::{endo, endo_from};
use inertia_group::json::{self as gj, as_int, as_rat, as_u64, field, get_arr, get_str, int, obj, rat};
use inertia_group::GroupError;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::{CopyRule, Growth, Kind, Mode, Part, Shape, Witness, WitnessError};

fn bad(what: &str) -> WitnessError {
    WitnessError::Group(GroupError::Invalid(format!("malformed witness: {what}")))
}

pub fn witness(w: &Witness) -> Value {
    let parts: Vec<Value> = w
        .parts
        .iter()
        .map(|p| {
            let copy = match p.copy {
                CopyRule::Fixed(c) => obj(vec![("fixed", int(c + 1))]),
                CopyRule::Shift(c) => obj(vec![("shift", int(c + 1))]),
            };
            obj(vec![
                ("slot", int(p.slot + 1)),
                ("copy", copy),
                ("value", rat(&p.value)),
                ("prime", int(p.prime)),
                ("offset", int(p.offset)),
            ])
        })
        .collect();
    let growth = match &w.growth {
        Growth::Power { coef, base, shift } => obj(vec![
            ("kind", json!("power")),
            ("coefficient", int(coef)),
            ("base", int(base)),
            ("shift", int(shift)),
            ("text", json!(w.growth.describe())),
        ]),
        Growth::Rank(r) => obj(vec![("kind", json!("rank")), ("rank", int(r)), ("text", json!(w.growth.describe()))]),
    };
    obj(vec![
        ("schemaVersion", json!(gj::SCHEMA_VERSION)),
        ("type", json!("witness")),
        ("kind", json!(w.kind.name())),
        ("mode", json!(w.mode.name())),
        ("reason", json!(w.reason)),
        ("endomorphism", endo(&w.endo)),
        ("fixed", Value::Array(w.fixed.iter().map(gj::element).collect())),
        ("generator", Value::Array(parts)),
        (
            "shape",
            json!(match w.shape {
                Shape::Cumulative => "cumulative",
                Shape::Single => "single",
            }),
        ),
        ("growth", growth),
        ("verifiedTo", int(w.verified_to)),
    ])
}

fn small(v: &Value) -> Result<u64, WitnessError> {
    Ok(as_u64(v)?)
}

fn one_based(v: &Value) -> Result<u64, WitnessError> {
    small(v)?.checked_sub(1).ok_or_else(|| bad("indices are 1-based"))
}

pub fn witness_from(v: &Value) -> Result<Witness, WitnessError> {
    let phi = endo_from(field(v, "endomorphism")?)?;
    let g = &phi.ambient;
    let kind = Kind::from_name(get_str(v, "kind")?).ok_or_else(|| bad("kind"))?;
    let mode = match get_str(v, "mode")? {
        "rin" => Mode::Rin,
        "lin" => Mode::Lin,
        _ => return Err(bad("mode")),
    };
    let fixed = get_arr(v, "fixed")?.iter().map(|e| gj::element_from(g, e)).collect::<Result<Vec<_>, _>>()?;
    let mut parts = Vec::new();
    for p in get_arr(v, "generator")? {
        let c = field(p, "copy")?;
        let copy = if let Some(x) = c.get("fixed") {
            CopyRule::Fixed(one_based(x)?)
        } else if let Some(x) = c.get("shift") {
            CopyRule::Shift(one_based(x)?)
        } else {
            return Err(bad("copy rule"));
        };
        let slot = one_based(field(p, "slot")?)? as usize;
        if slot >= g.slots.len() {
            return Err(bad("slot out of range"));
        }
        parts.push(Part {
            slot,
            copy,
            value: as_rat(field(p, "value")?)?,
            prime: small(field(p, "prime")?)?,
            offset: as_int(field(p, "offset")?)?.to_i64().ok_or_else(|| bad("offset"))?,
        });
    }
    let shape = match get_str(v, "shape")? {
        "cumulative" => Shape::Cumulative,
        "single" => Shape::Single,
        _ => return Err(bad("shape")),
    };
    let gr = field(v, "growth")?;
    let growth = match get_str(gr, "kind")? {
        "power" => Growth::Power {
            coef: as_int(field(gr, "coefficient")?)?,
            base: as_int(field(gr, "base")?)?,
            shift: small(field(gr, "shift")?)? as u32,
        },
        "rank" => Growth::Rank(small(field(gr, "rank")?)? as u32),
        _ => return Err(bad("growth kind")),
    };
    Ok(Witness {
        kind,
        mode,
        fixed,
        parts,
        shape,
        growth,
        verified_to: small(field(v, "verifiedTo")?)? as u32,
        reason: get_str(v, "reason")?.to_string(),
        endo: phi,
    })
}
