//! `inertia oracle`: subgroup tables, closure bounds and the (FS) bound on
//! finite abelian groups.

use std::fmt::Write;

use clap::{Args, Subcommand};
use inertia_endo::parse::parse_endo;
use inertia_group::json::{self as gj, int, obj, render};
use inertia_group::parse::parse_group;
use inertia_oracle::table::enumerate_subgroups;
use inertia_oracle::{closure_bounds, fs_bound, json as oj, random_endo, FiniteAbelianGroup, FiniteEndo, LIMIT};
use serde_json::{json, Value};

use crate::{CliError, Outcome, DEFAULT_SEED};

#[derive(Debug, Args, Clone)]
pub struct OracleOpts {
    /// Largest group order accepted
    #[arg(long, default_value_t = inertia_oracle::DEFAULT_CAP)]
    pub cap: u32,
    /// Print JSON instead of a text report
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args, Clone)]
pub struct EndoOpts {
    /// Endomorphism: swap-cycle, shear, random, or any endomorphism spec
    /// such as "mult 2" (repeatable)
    #[arg(long = "endo")]
    pub endos: Vec<String>,
    /// Add this many random endomorphisms
    #[arg(long, default_value_t = 0)]
    pub random: usize,
    /// Seed for `random`
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Enumerate every subgroup
    Subgroups {
        group: String,
        #[command(flatten)]
        opts: OracleOpts,
    },
    /// max |X^phi / X| against m^2, m = max |X / X_phi|, over every subgroup X
    Bounds {
        group: String,
        #[command(flatten)]
        endo: EndoOpts,
        #[command(flatten)]
        opts: OracleOpts,
    },
    /// max |X^Phi / X_Phi| over every subgroup X, for the family Phi
    Fs {
        group: String,
        #[command(flatten)]
        endo: EndoOpts,
        #[command(flatten)]
        opts: OracleOpts,
    },
}

pub fn finite_group(text: &str, cap: u32) -> Result<(inertia_group::GroupDescriptor, FiniteAbelianGroup), CliError> {
    let d = parse_group(text)?;
    let g = FiniteAbelianGroup::from_descriptor(&d, cap)?;
    Ok((d, g))
}

fn named(g: &FiniteAbelianGroup, name: &str) -> Result<Option<FiniteEndo>, CliError> {
    let n = g.rank();
    let mut m = vec![vec![0u32; n]; n];
    match name {
        "swap-cycle" => {
            for (j, row) in m.iter_mut().enumerate() {
                row[(j + 1) % n] = 1;
            }
        }
        "shear" => {
            if n < 2 || g.prime_of(0) != g.prime_of(1) {
                return Err(CliError::Input("shear needs two cyclic factors over the same prime".into()));
            }
            let (q0, q1) = (g.orders()[0], g.orders()[1]);
            for (j, row) in m.iter_mut().enumerate() {
                row[j] = 1;
            }
            // smallest nonzero image of e_1 in Z(q_2)
            m[0][1] = q1 / q0.min(q1);
        }
        _ => return Ok(None),
    }
    Ok(Some(FiniteEndo::from_matrix(g, m)?))
}

pub fn resolve_endos(
    d: &inertia_group::GroupDescriptor,
    g: &FiniteAbelianGroup,
    opts: &EndoOpts,
) -> Result<Vec<FiniteEndo>, CliError> {
    let mut rng = inertia_gallery::random::rng(opts.seed);
    let mut out = Vec::new();
    for spec in &opts.endos {
        if spec == "random" {
            out.push(random_endo(g, &mut rng));
        } else if let Some(f) = named(g, spec)? {
            out.push(f);
        } else {
            out.push(FiniteEndo::from_endo(g, &parse_endo(d, spec)?)?);
        }
    }
    for _ in 0..opts.random {
        out.push(random_endo(g, &mut rng));
    }
    if out.is_empty() {
        return Err(CliError::Input("give at least one --endo or --random N".into()));
    }
    Ok(out)
}

pub fn matrix(f: &FiniteEndo) -> Value {
    Value::Array(f.matrix.iter().map(|r| Value::Array(r.iter().map(int).collect())).collect())
}

fn header(kind: &str, g: &FiniteAbelianGroup, cap: u32) -> Vec<(&'static str, Value)> {
    vec![
        ("schemaVersion", json!(gj::SCHEMA_VERSION)),
        ("type", json!(kind.to_string())),
        ("cap", int(cap)),
        ("group", oj::group(g)),
    ]
}

pub fn run(cmd: &OracleCommand) -> Result<Outcome, CliError> {
    match cmd {
        OracleCommand::Subgroups { group, opts } => {
            let (_, g) = finite_group(group, opts.cap)?;
            let t = enumerate_subgroups(&g, LIMIT)?;
            let out = if opts.json {
                let mut f = header("subgroups", &g, opts.cap);
                let table = oj::table(&t);
                f.push(("count", table["count"].clone()));
                f.push(("subgroups", table["subgroups"].clone()));
                render(&obj(f))
            } else {
                let mut by_order = std::collections::BTreeMap::new();
                for s in &t.subgroups {
                    *by_order.entry(s.order).or_insert(0usize) += 1;
                }
                let mut s = format!("group: {g}\ncount: {}\n", t.len());
                for (o, k) in by_order {
                    writeln!(s, "  order {o}: {k}").unwrap();
                }
                s
            };
            Ok(Outcome::new(true, out))
        }
        OracleCommand::Bounds { group, endo, opts } => {
            let (d, g) = finite_group(group, opts.cap)?;
            let phis = resolve_endos(&d, &g, endo)?;
            let bounds = closure_bounds(&g, &phis, LIMIT)?;
            let holds = bounds.iter().all(|b| b.holds);
            let out = if opts.json {
                let mut f = header("bounds", &g, opts.cap);
                f.push(("endomorphisms", Value::Array(phis.iter().map(matrix).collect())));
                f.push(("results", Value::Array(bounds.iter().map(oj::closure_bound).collect())));
                f.push(("holds", json!(holds)));
                render(&obj(f))
            } else {
                let mut s = format!("group: {g}\n");
                for (i, b) in bounds.iter().enumerate() {
                    writeln!(
                        s,
                        "endomorphism {}: m = {}, max log_p |X^phi/X| = {} <= m^2 = {}: {}",
                        i + 1,
                        b.m,
                        b.worst,
                        b.m * b.m,
                        b.holds
                    )
                    .unwrap();
                }
                writeln!(s, "subgroups: {}", bounds.first().map_or(0, |b| b.subgroups)).unwrap();
                writeln!(s, "holds: {holds}").unwrap();
                s
            };
            Ok(Outcome::new(holds, out))
        }
        OracleCommand::Fs { group, endo, opts } => {
            let (d, g) = finite_group(group, opts.cap)?;
            let phis = resolve_endos(&d, &g, endo)?;
            let r = fs_bound(&g, &phis, LIMIT)?;
            let out = if opts.json {
                let mut f = header("fs", &g, opts.cap);
                f.push(("endomorphisms", Value::Array(phis.iter().map(matrix).collect())));
                f.push(("result", oj::fs(&r)));
                render(&obj(f))
            } else {
                format!(
                    "group: {g}\nm = max |X^Phi / X_Phi| = {}\nsubgroups: {}\nX_Phi <= X <= X^Phi, both invariant: {}\n",
                    r.bound, r.subgroups, r.validated
                )
            };
            Ok(Outcome::new(r.validated, out))
        }
    }
}
