//! JSON encoding. Integers are written as decimal strings; object fields keep
//! insertion order so output is byte-stable.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::descriptor::{Atom, Coord, GroupDescriptor, Mult, Slot};
use crate::element::Element;
use crate::handle::{DivClosure, SubgroupHandle};
use crate::primes::PrimeSet;
use crate::rational::{fmt_rational, parse_rational, Q};
use crate::section::SectionSize;
use crate::GroupError;

pub const SCHEMA_VERSION: &str = "1";

pub fn obj(fields: Vec<(&str, Value)>) -> Value {
    let mut m = Map::new();
    for (k, v) in fields {
        m.insert(k.to_string(), v);
    }
    Value::Object(m)
}

pub fn int(n: impl ToString) -> Value {
    Value::String(n.to_string())
}

pub fn rat(q: &Q) -> Value {
    Value::String(fmt_rational(q))
}

fn bad(what: &str) -> GroupError {
    GroupError::Invalid(format!("malformed JSON: {what}"))
}

pub fn field<'a>(v: &'a Value, k: &str) -> Result<&'a Value, GroupError> {
    v.get(k).ok_or_else(|| bad(&format!("missing field '{k}'")))
}

pub fn get_str<'a>(v: &'a Value, k: &str) -> Result<&'a str, GroupError> {
    field(v, k)?.as_str().ok_or_else(|| bad(&format!("'{k}' is not a string")))
}

pub fn get_arr<'a>(v: &'a Value, k: &str) -> Result<&'a Vec<Value>, GroupError> {
    field(v, k)?.as_array().ok_or_else(|| bad(&format!("'{k}' is not an array")))
}

pub fn as_int(v: &Value) -> Result<BigInt, GroupError> {
    v.as_str().and_then(|s| s.parse().ok()).ok_or_else(|| bad("expected integer string"))
}

pub fn as_u64(v: &Value) -> Result<u64, GroupError> {
    v.as_str().and_then(|s| s.parse().ok()).ok_or_else(|| bad("expected small integer string"))
}

pub fn as_rat(v: &Value) -> Result<Q, GroupError> {
    v.as_str().and_then(parse_rational).ok_or_else(|| bad("expected rational string"))
}

pub fn prime_set(ps: &PrimeSet) -> Value {
    match ps {
        PrimeSet::All => Value::String("ALL".into()),
        PrimeSet::Finite(v) => Value::Array(v.iter().map(int).collect()),
    }
}

pub fn prime_set_from(v: &Value) -> Result<PrimeSet, GroupError> {
    match v {
        Value::String(s) if s == "ALL" => Ok(PrimeSet::All),
        Value::Array(a) => PrimeSet::finite(a.iter().map(as_u64).collect::<Result<_, _>>()?),
        _ => Err(bad("prime set")),
    }
}

pub fn atom(a: &Atom) -> Value {
    match a {
        Atom::Cyclic { p, e } => obj(vec![("kind", json!("cyclic")), ("p", int(p)), ("e", int(e))]),
        Atom::Prufer { p } => obj(vec![("kind", json!("prufer")), ("p", int(p))]),
        Atom::Localized(ps) => obj(vec![("kind", json!("localized")), ("primes", prime_set(ps))]),
    }
}

pub fn atom_from(v: &Value) -> Result<Atom, GroupError> {
    match get_str(v, "kind")? {
        "cyclic" => Ok(Atom::Cyclic {
            p: as_u64(field(v, "p")?)?,
            e: as_u64(field(v, "e")?)? as u32,
        }),
        "prufer" => Ok(Atom::Prufer { p: as_u64(field(v, "p")?)? }),
        "localized" => Ok(Atom::Localized(prime_set_from(field(v, "primes")?)?)),
        k => Err(bad(&format!("atom kind '{k}'"))),
    }
}

pub fn group(g: &GroupDescriptor) -> Value {
    let slots: Vec<Value> = g
        .slots
        .iter()
        .map(|s| {
            let m = match s.mult {
                Mult::Finite(k) => int(k),
                Mult::Omega => json!("w"),
            };
            obj(vec![("atom", atom(&s.atom)), ("mult", m)])
        })
        .collect();
    let mut fields = vec![("text", json!(g.to_text())), ("slots", Value::Array(slots))];
    if let Some(p) = &g.presentation {
        let rows: Vec<Value> =
            p.relations.iter().map(|r| Value::Array(r.iter().map(int).collect())).collect();
        fields.push((
            "presentation",
            obj(vec![("generators", int(p.ngens)), ("relations", Value::Array(rows))]),
        ));
    }
    obj(fields)
}

/// Rebuild a descriptor; presentations are re-normalised from their relations.
pub fn group_from(v: &Value) -> Result<GroupDescriptor, GroupError> {
    if let Some(p) = v.get("presentation") {
        let n = as_u64(field(p, "generators")?)? as usize;
        let rows = get_arr(p, "relations")?
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| bad("relation row"))?
                    .iter()
                    .map(as_int)
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        return GroupDescriptor::from_presentation(rows, n);
    }
    let mut slots = Vec::new();
    for s in get_arr(v, "slots")? {
        let mult = match field(s, "mult")? {
            Value::String(w) if w == "w" => Mult::Omega,
            m => Mult::Finite(as_u64(m)? as u32),
        };
        slots.push(Slot { atom: atom_from(field(s, "atom")?)?, mult });
    }
    GroupDescriptor::new(slots)
}

pub fn coord(c: Coord) -> Value {
    json!(format!("{}.{}", c.0 + 1, c.1 + 1))
}

pub fn coord_from(v: &Value) -> Result<Coord, GroupError> {
    let s = v.as_str().ok_or_else(|| bad("coordinate"))?;
    let (a, b) = s.split_once('.').ok_or_else(|| bad("coordinate"))?;
    let a: usize = a.parse().map_err(|_| bad("coordinate"))?;
    let b: u64 = b.parse().map_err(|_| bad("coordinate"))?;
    if a == 0 || b == 0 {
        return Err(bad("coordinate indices are 1-based"));
    }
    Ok((a - 1, b - 1))
}

/// Elements as lists of [coordinate, value] pairs (values as stored).
pub fn element(e: &Element) -> Value {
    Value::Array(e.coords.iter().map(|(c, v)| json!([coord(*c), rat(v)])).collect())
}

pub fn element_from(g: &GroupDescriptor, v: &Value) -> Result<Element, GroupError> {
    let mut e = Element::zero();
    for pair in v.as_array().ok_or_else(|| bad("element"))? {
        let p = pair.as_array().filter(|p| p.len() == 2).ok_or_else(|| bad("element entry"))?;
        e.add_at(coord_from(&p[0])?, as_rat(&p[1])?);
    }
    g.canonical(e)
}

pub fn handle(h: &SubgroupHandle) -> Value {
    let cl: Vec<Value> = h
        .closures
        .iter()
        .map(|c| {
            obj(vec![
                ("slot", int(c.slot + 1)),
                ("primes", prime_set(&c.primes)),
                ("scale", rat(&c.scale)),
            ])
        })
        .collect();
    obj(vec![
        ("label", json!(h.label)),
        ("generators", Value::Array(h.gens.iter().map(element).collect())),
        ("divisibleClosure", Value::Array(cl)),
    ])
}

pub fn handle_from(g: &GroupDescriptor, v: &Value) -> Result<SubgroupHandle, GroupError> {
    let gens = get_arr(v, "generators")?
        .iter()
        .map(|e| element_from(g, e))
        .collect::<Result<Vec<_>, _>>()?;
    let mut closures = Vec::new();
    for c in get_arr(v, "divisibleClosure")? {
        let slot = as_u64(field(c, "slot")?)? as usize;
        if slot == 0 {
            return Err(bad("closure slot is 1-based"));
        }
        closures.push(DivClosure {
            slot: slot - 1,
            primes: prime_set_from(field(c, "primes")?)?,
            scale: as_rat(field(c, "scale")?)?,
        });
    }
    let h = SubgroupHandle {
        gens,
        closures,
        label: v.get("label").and_then(|l| l.as_str()).unwrap_or("").to_string(),
    };
    h.validate(g)?;
    Ok(h)
}

pub fn section(s: &SectionSize) -> Value {
    match s {
        SectionSize::Finite(n) => obj(vec![("kind", json!("Finite")), ("value", int(n))]),
        SectionSize::AtLeast(n) => obj(vec![("kind", json!("AtLeast")), ("value", int(n))]),
        SectionSize::CertifiedInfinite(g) => {
            obj(vec![("kind", json!("CertifiedInfinite")), ("growth", json!(g))])
        }
    }
}

pub fn section_from(v: &Value) -> Result<SectionSize, GroupError> {
    match get_str(v, "kind")? {
        "Finite" => Ok(SectionSize::Finite(as_int(field(v, "value")?)?)),
        "AtLeast" => Ok(SectionSize::AtLeast(as_int(field(v, "value")?)?)),
        "CertifiedInfinite" => Ok(SectionSize::CertifiedInfinite(get_str(v, "growth")?.into())),
        k => Err(bad(&format!("section kind '{k}'"))),
    }
}

/// Pretty JSON with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}
