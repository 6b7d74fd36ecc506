//! `inertia gallery`.

use std::fmt::Write;

use clap::Args;
use inertia_classify::json::verdict as verdict_json;
use inertia_gallery::{by_name, check, Expected, Params, NAMES};
use inertia_group::json::{self as gj, obj, render};
use serde_json::{json, Value};

use crate::{CliError, Outcome};

#[derive(Debug, Args)]
pub struct GalleryArgs {
    /// Entry name; omit to list the entries
    pub name: Option<String>,
    /// Prime for critical-id-inversion
    #[arg(long, default_value_t = 3)]
    pub p: u64,
    /// Rank of the divisible part for critical-id-inversion
    #[arg(long, default_value_t = 1)]
    pub d: u32,
    /// Exponent of the bounded part for critical-id-inversion
    #[arg(long, default_value_t = 1)]
    pub e: u32,
    /// Prime bound P for proposition-a
    #[arg(long, default_value_t = 5)]
    pub bound: u64,
    #[command(flatten)]
    pub common: crate::Common,
}

fn expected(e: &Expected) -> Value {
    obj(vec![("rin", json!(e.rin)), ("lin", json!(e.lin))])
}

pub fn run(args: &GalleryArgs) -> Result<Outcome, CliError> {
    let Some(name) = &args.name else {
        return Ok(Outcome::new(true, NAMES.iter().map(|n| format!("{n}\n")).collect()));
    };
    let params = Params { p: args.p, d: args.d, e: args.e, bound: args.bound };
    let entry = by_name(name, &params)?;
    let c = check(&entry, args.common.precision)?;
    let out = if args.common.json {
        let inverse = match (&entry.inverse, &c.inverse) {
            (Some(want), Some(v)) => obj(vec![("expected", expected(want)), ("verdict", verdict_json(v))]),
            _ => Value::Null,
        };
        render(&obj(vec![
            ("schemaVersion", json!(gj::SCHEMA_VERSION)),
            ("type", json!("gallery")),
            ("name", json!(entry.name)),
            ("claim", json!(entry.claim)),
            ("group", json!(entry.group.to_text())),
            ("endomorphisms", Value::Array(entry.endos.iter().map(|e| json!(e.to_text())).collect())),
            ("expected", expected(&entry.expected)),
            ("verdict", verdict_json(&c.verdict)),
            ("inverse", inverse),
            ("ok", json!(c.ok())),
        ]))
    } else {
        let mut s = String::new();
        writeln!(s, "{}: {}", entry.name, entry.claim).unwrap();
        writeln!(s, "group: {}", entry.group.to_text()).unwrap();
        for (i, e) in entry.endos.iter().enumerate() {
            writeln!(s, "endomorphism {}: {}", i + 1, e.to_text()).unwrap();
        }
        let show = |s: &mut String, what: &str, want: &Expected, v: &inertia_classify::Verdict| {
            writeln!(
                s,
                "{what}: expected rin={} lin={}, got rin={} lin={}",
                want.rin, want.lin, v.rin, v.lin
            )
            .unwrap();
        };
        show(&mut s, "verdict", &entry.expected, &c.verdict);
        if let (Some(want), Some(v)) = (&entry.inverse, &c.inverse) {
            show(&mut s, "inverse", want, v);
        }
        writeln!(s, "{}", if c.ok() { "ok" } else { "MISMATCH" }).unwrap();
        s
    };
    Ok(Outcome::new(c.ok(), out))
}
