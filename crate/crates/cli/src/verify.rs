//! `inertia verify`: re-validate any JSON artifact the CLI emits.
//!
//! Certificates go through `validate_certificate`, witnesses through
//! `verify_witness`; neither shares code with the constructors. Oracle
//! reports are recomputed, bounds by the direct (non-dual) computation and
//! subgroup counts by the independent recount.

use inertia_classify::json::certificate_from;
use inertia_classify::validate_certificate;
use inertia_group::json::{as_u64, field, get_arr, get_str, SCHEMA_VERSION};
use inertia_oracle::bounds::closure_bound_direct;
use inertia_oracle::lattice::recount;
use inertia_oracle::table::Subgroup;
use inertia_oracle::{fs_bound, FiniteAbelianGroup, FiniteEndo, LIMIT};
use inertia_witness::json::witness_from;
use inertia_witness::verify_witness;
use serde_json::Value;

use crate::{CliError, Outcome};

/// A failed check, in words.
type Check = Result<String, String>;

fn schema(e: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("schema mismatch: {e}"))
}

fn get_bool(v: &Value, k: &str) -> Result<bool, CliError> {
    field(v, k).map_err(schema)?.as_bool().ok_or_else(|| schema(format!("'{k}' is not a boolean")))
}

fn small(v: &Value) -> Result<u64, CliError> {
    as_u64(v).map_err(schema)
}

pub fn verify_text(text: &str, k: u32) -> Result<Outcome, CliError> {
    let v: Value = serde_json::from_str(text)?;
    let out = verify_value(&v, k)?;
    Ok(match out {
        Ok(msg) => Outcome::new(true, format!("pass: {msg}\n")),
        Err(msg) => Outcome::new(false, format!("fail: {msg}\n")),
    })
}

pub fn verify_value(v: &Value, k: u32) -> Result<Check, CliError> {
    let version = get_str(v, "schemaVersion").map_err(schema)?;
    if version != SCHEMA_VERSION {
        return Err(schema(format!("schemaVersion {version}, expected {SCHEMA_VERSION}")));
    }
    match get_str(v, "type").map_err(schema)? {
        "certificate" => certificate(v),
        "witness" => witness(v, k),
        "verdict" => verdict(v, k),
        "gallery" => gallery(v, k),
        "subgroups" => subgroups(v),
        "bounds" => bounds(v),
        "fs" => fs(v),
        t => Err(schema(format!("unknown type '{t}'"))),
    }
}

fn certificate(v: &Value) -> Result<Check, CliError> {
    let c = certificate_from(v)?;
    Ok(match validate_certificate(&c) {
        Ok(()) => Ok(format!("certificate for {} endomorphism(s) is valid", c.endos().len())),
        Err(e) => Err(e.to_string()),
    })
}

fn witness(v: &Value, k: u32) -> Result<Check, CliError> {
    let w = witness_from(v)?;
    let r = verify_witness(&w, k)?;
    Ok(match r.first_failure {
        None if r.ok => Ok(format!("witness meets growth {} for i = 1..{k}", w.growth.describe())),
        None => Err("witness failed verification".into()),
        Some(i) => Err(format!("witness growth {} not attained at index {i}", w.growth.describe())),
    })
}

fn verdict(v: &Value, k: u32) -> Result<Check, CliError> {
    let rin = get_bool(v, "rin")?;
    let lin = get_bool(v, "lin")?;
    let per = get_arr(v, "endomorphisms").map_err(schema)?;
    let mut all_rin = true;
    let mut all_lin = true;
    for e in per {
        all_rin &= get_bool(e, "rin")?;
        all_lin &= get_bool(e, "lin")?;
    }
    if (all_rin, all_lin) != (rin, lin) {
        return Ok(Err("overall verdict disagrees with the per-endomorphism verdicts".into()));
    }
    let cert = field(v, "certificate").map_err(schema)?;
    let wit = field(v, "witness").map_err(schema)?;
    let mut done = Vec::new();
    match (rin, cert.is_null(), wit.is_null()) {
        (true, false, true) => match certificate(cert)? {
            Ok(_) => done.push("certificate"),
            Err(e) => return Ok(Err(e)),
        },
        (false, true, false) => match witness(wit, k)? {
            Ok(_) => done.push("witness"),
            Err(e) => return Ok(Err(e)),
        },
        (true, ..) => return Ok(Err("rin is true but no certificate (or a stray witness) is attached".into())),
        (false, ..) => return Ok(Err("rin is false but no witness (or a stray certificate) is attached".into())),
    }
    let lw = field(v, "linWitness").map_err(schema)?;
    if !lw.is_null() {
        if lin {
            return Ok(Err("lin is true but a left witness is attached".into()));
        }
        match witness(lw, k)? {
            Ok(_) => done.push("left witness"),
            Err(e) => return Ok(Err(format!("left witness: {e}"))),
        }
    }
    Ok(Ok(format!("verdict rin={rin} lin={lin}; {} valid", done.join(" and "))))
}

fn gallery(v: &Value, k: u32) -> Result<Check, CliError> {
    let mut notes = Vec::new();
    let mut all_match = true;
    let mut pairs = vec![(field(v, "expected").map_err(schema)?, field(v, "verdict").map_err(schema)?)];
    let inv = field(v, "inverse").map_err(schema)?;
    if !inv.is_null() {
        pairs.push((field(inv, "expected").map_err(schema)?, field(inv, "verdict").map_err(schema)?));
    }
    for (want, got) in pairs {
        if let Err(e) = verdict(got, k)? {
            return Ok(Err(e));
        }
        let same = get_bool(want, "rin")? == get_bool(got, "rin")? && get_bool(want, "lin")? == get_bool(got, "lin")?;
        all_match &= same;
        notes.push(if same { "matches" } else { "differs" });
    }
    if get_bool(v, "ok")? != all_match {
        return Ok(Err("the 'ok' field disagrees with the verdicts".into()));
    }
    Ok(Ok(format!("gallery entry {}: verdicts valid, expectation {}", get_str(v, "name").map_err(schema)?, notes.join(", "))))
}

fn group(v: &Value) -> Result<FiniteAbelianGroup, CliError> {
    let cap = small(field(v, "cap").map_err(schema)?)?;
    let g = field(v, "group").map_err(schema)?;
    let mut factors = Vec::new();
    for f in get_arr(g, "factors").map_err(schema)? {
        let p = small(field(f, "prime").map_err(schema)?)?;
        let e = small(field(f, "exponent").map_err(schema)?)?;
        factors.push((p as u32, e as u32));
    }
    Ok(FiniteAbelianGroup::new(&factors, cap as u32)?)
}

fn endos(v: &Value, g: &FiniteAbelianGroup) -> Result<Vec<FiniteEndo>, CliError> {
    let mut out = Vec::new();
    for m in get_arr(v, "endomorphisms").map_err(schema)? {
        let rows = m.as_array().ok_or_else(|| schema("matrix rows"))?;
        let mut mat = Vec::new();
        for r in rows {
            let r = r.as_array().ok_or_else(|| schema("matrix row"))?;
            mat.push(r.iter().map(|x| small(x).map(|x| x as u32)).collect::<Result<Vec<_>, _>>()?);
        }
        out.push(FiniteEndo::from_matrix(g, mat)?);
    }
    Ok(out)
}

fn subgroups(v: &Value) -> Result<Check, CliError> {
    let g = group(v)?;
    let count = small(field(v, "count").map_err(schema)?)? as usize;
    let listed = get_arr(v, "subgroups").map_err(schema)?;
    if listed.len() != count {
        return Ok(Err(format!("{} subgroups listed, count says {count}", listed.len())));
    }
    let fresh = recount(&g);
    if fresh != count {
        return Ok(Err(format!("recount finds {fresh} subgroups, the table says {count}")));
    }
    let mut seen = std::collections::HashSet::new();
    for (i, s) in listed.iter().enumerate() {
        let mut gens = Vec::new();
        for x in get_arr(s, "generators").map_err(schema)? {
            let digits = x.as_array().ok_or_else(|| schema("element"))?;
            let d = digits.iter().map(|x| small(x).map(|x| x as u32)).collect::<Result<Vec<_>, _>>()?;
            if d.len() != g.rank() || d.iter().zip(g.orders()).any(|(a, q)| a >= q) {
                return Err(schema(format!("subgroup {}: bad element", i + 1)));
            }
            gens.push(g.encode(&d));
        }
        let sub = Subgroup::generated(&g, &gens);
        let order = small(field(s, "order").map_err(schema)?)?;
        if sub.order as u64 != order {
            return Ok(Err(format!("subgroup {} has order {}, listed as {order}", i + 1, sub.order)));
        }
        if !seen.insert(sub.bits) {
            return Ok(Err(format!("subgroup {} is listed twice", i + 1)));
        }
    }
    Ok(Ok(format!("{count} distinct subgroups of {g}, matching the recount")))
}

fn bounds(v: &Value) -> Result<Check, CliError> {
    let g = group(v)?;
    let phis = endos(v, &g)?;
    let results = get_arr(v, "results").map_err(schema)?;
    if results.len() != phis.len() {
        return Err(schema("one result per endomorphism"));
    }
    let mut holds = true;
    for (i, (phi, r)) in phis.iter().zip(results).enumerate() {
        let b = closure_bound_direct(&g, phi, LIMIT)?;
        let claimed = (
            small(field(r, "m").map_err(schema)?)?,
            small(field(r, "worst").map_err(schema)?)?,
            get_bool(r, "holds")?,
        );
        if claimed != (b.m as u64, b.worst as u64, b.holds) {
            return Ok(Err(format!(
                "endomorphism {}: recomputed m = {}, worst = {}, holds = {}",
                i + 1,
                b.m,
                b.worst,
                b.holds
            )));
        }
        holds &= b.holds;
    }
    if get_bool(v, "holds")? != holds {
        return Ok(Err("the 'holds' field disagrees with the results".into()));
    }
    if !holds {
        return Ok(Err("the closure bound fails".into()));
    }
    Ok(Ok(format!("closure bound holds for {} endomorphism(s), recomputed directly", phis.len())))
}

fn fs(v: &Value) -> Result<Check, CliError> {
    let g = group(v)?;
    let phis = endos(v, &g)?;
    let r = fs_bound(&g, &phis, LIMIT)?;
    let claimed = field(v, "result").map_err(schema)?;
    let bound = small(field(claimed, "bound").map_err(schema)?)?;
    if bound != r.bound {
        return Ok(Err(format!("recomputed bound {} differs from {bound}", r.bound)));
    }
    if !r.validated || !get_bool(claimed, "validated")? {
        return Ok(Err("X_Phi <= X <= X^Phi fails for some X".into()));
    }
    Ok(Ok(format!("bound {bound} recomputed; closures bracket every subgroup")))
}
