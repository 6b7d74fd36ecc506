//! JSON reports for the oracle commands.

use inertia_group::json::{int, obj};
use serde_json::Value;

use crate::bounds::{ClosureBound, FsReport};
use crate::group::FiniteAbelianGroup;
use crate::table::SubgroupTable;

pub fn group(g: &FiniteAbelianGroup) -> Value {
    let f: Vec<Value> = g
        .factors()
        .iter()
        .map(|(p, e)| obj(vec![("prime", int(p)), ("exponent", int(e))]))
        .collect();
    obj(vec![("text", Value::String(g.to_string())), ("order", int(g.order())), ("factors", Value::Array(f))])
}

fn element(g: &FiniteAbelianGroup, a: u32) -> Value {
    Value::Array(g.decode(a).into_iter().map(int).collect())
}

pub fn table(t: &SubgroupTable) -> Value {
    let subs: Vec<Value> = t
        .subgroups
        .iter()
        .map(|s| {
            obj(vec![
                ("order", int(s.order)),
                ("generators", Value::Array(s.gens.iter().map(|&a| element(&t.group, a)).collect())),
            ])
        })
        .collect();
    obj(vec![("group", group(&t.group)), ("count", int(t.len())), ("subgroups", Value::Array(subs))])
}

pub fn closure_bound(b: &ClosureBound) -> Value {
    obj(vec![
        ("prime", int(b.p)),
        ("m", int(b.m)),
        ("worst", int(b.worst)),
        ("bound", int(b.m * b.m)),
        ("holds", Value::Bool(b.holds)),
        ("subgroups", int(b.subgroups)),
    ])
}

pub fn fs(r: &FsReport) -> Value {
    obj(vec![("bound", int(r.bound)), ("subgroups", int(r.subgroups)), ("validated", Value::Bool(r.validated))])
}
