//! JSON form of an endomorphism: the ambient group, the normal-form text and
//! the three entry tables.

use inertia_group::json::{self as gj, as_rat, as_u64, field, get_arr, obj, rat};
use serde_json::Value;

use crate::{EndoError, Endomorphism, Entry, FinTerm};

pub fn endo(phi: &Endomorphism) -> Value {
    let each: Vec<Value> = phi
        .each
        .iter()
        .map(|((t, s), c)| {
            obj(vec![("target", gj::int(t + 1)), ("source", gj::int(s + 1)), ("coefficient", rat(c))])
        })
        .collect();
    let copy: Vec<Value> = phi
        .copy
        .iter()
        .map(|((s, t), c)| obj(vec![("target", gj::coord(*t)), ("source", gj::coord(*s)), ("coefficient", rat(c))]))
        .collect();
    let terms: Vec<Value> = phi
        .terms
        .iter()
        .map(|t| {
            obj(vec![
                ("source", gj::coord(t.source)),
                ("weight", rat(&t.weight)),
                ("prime", gj::int(t.p)),
                ("exponent", gj::int(t.f)),
                ("target", gj::element(&t.target)),
            ])
        })
        .collect();
    obj(vec![
        ("ambient", gj::group(&phi.ambient)),
        ("text", Value::String(phi.to_text())),
        ("each", Value::Array(each)),
        ("copy", Value::Array(copy)),
        ("terms", Value::Array(terms)),
    ])
}

pub fn endo_from(v: &Value) -> Result<Endomorphism, EndoError> {
    let g = gj::group_from(field(v, "ambient")?)?;
    let slot = |x: &Value| -> Result<usize, EndoError> {
        let s = as_u64(x)? as usize;
        if s == 0 {
            return Err(EndoError::Group(inertia_group::GroupError::Invalid("slots are 1-based".into())));
        }
        Ok(s - 1)
    };
    let mut entries = Vec::new();
    for e in get_arr(v, "each")? {
        entries.push(Entry::Slot {
            target: slot(field(e, "target")?)?,
            source: slot(field(e, "source")?)?,
            c: as_rat(field(e, "coefficient")?)?,
        });
    }
    for e in get_arr(v, "copy")? {
        entries.push(Entry::Copy {
            target: gj::coord_from(field(e, "target")?)?,
            source: gj::coord_from(field(e, "source")?)?,
            c: as_rat(field(e, "coefficient")?)?,
        });
    }
    for e in get_arr(v, "terms")? {
        entries.push(Entry::Term(FinTerm {
            source: gj::coord_from(field(e, "source")?)?,
            weight: as_rat(field(e, "weight")?)?,
            p: as_u64(field(e, "prime")?)?,
            f: as_u64(field(e, "exponent")?)? as u32,
            target: gj::element_from(&g, field(e, "target")?)?,
        }));
    }
    Endomorphism::from_entries(&g, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_endo;
    use inertia_group::parse::parse_group;

    #[test]
    fn roundtrip() {
        let g = parse_group("Z(4) + Z(2)^w + Z(2^inf) + Q[3]^2").unwrap();
        let phi = parse_endo(
            &g,
            "block{1: 3; 2,3: 1; 4: 1/3} + matrix{3.1<-4.2: 1/2} + finitary{1.1 * 1 mod 2^2 -> [3: 1/4]}",
        )
        .unwrap();
        let v = endo(&phi);
        assert_eq!(endo_from(&v).unwrap(), phi);
        assert_eq!(v["terms"][0]["prime"], "2");
    }
}
