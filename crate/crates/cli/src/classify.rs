//! `inertia classify` and `inertia witness`.

use std::fmt::Write;

use inertia_classify::json::verdict as verdict_json;
use inertia_classify::{classify_general, Certificate, EndoForm, Verdict};
use inertia_endo::parse::parse_endo;
use inertia_endo::Endomorphism;
use inertia_group::json::render;
use inertia_group::parse::parse_group;
use inertia_group::rational::{fmt_rational, parse_rational};
use inertia_group::{PrimeSet, SectionSize};
use inertia_witness::{diagonal_witness, verify_witness, Witness};

use crate::{CliError, Common, Outcome, WitnessCommand};

fn parse_inputs(group: &str, endos: &[String]) -> Result<Vec<Endomorphism>, CliError> {
    let g = parse_group(group)?;
    endos
        .iter()
        .enumerate()
        .map(|(i, e)| {
            parse_endo(&g, e).map_err(|err| CliError::Input(format!("endomorphism {}: {err}", i + 1)))
        })
        .collect()
}

pub fn classify(group: &str, endos: &[String], lin: bool, common: &Common) -> Result<Outcome, CliError> {
    let phis = parse_inputs(group, endos)?;
    let v = classify_general(&phis, common.precision)?;
    let ok = v.rin && (!lin || v.lin);
    let out = if common.json { render(&verdict_json(&v)) } else { verdict_text(&phis, &v, lin, common.precision)? };
    Ok(Outcome::new(ok, out))
}

fn form_text(f: &Option<EndoForm>) -> String {
    match f {
        Some(EndoForm::A { m }) => format!("multiplication by {m} up to finite image"),
        Some(EndoForm::B { mu: Some(mu) }) => format!("scalar {} on the torsion-free part", fmt_rational(mu)),
        Some(EndoForm::B { mu: None }) => "componentwise multiplication".into(),
        None => "-".into(),
    }
}

fn certificate_text(c: &Certificate) -> String {
    match c {
        Certificate::CaseA { m, index_bound, .. } => {
            let ms: Vec<String> = m.iter().map(|x| x.to_string()).collect();
            format!("case A: m = [{}], finite-index subgroup of index <= {index_bound}", ms.join(", "))
        }
        Certificate::CaseB { pi, pi1, rank, index_bound, .. } => format!(
            "case B: pi = {:?}, pi1 = {:?}, V of rank {rank}, index <= {index_bound}",
            pi, pi1
        ),
    }
}

fn sections_text(s: &[SectionSize]) -> String {
    let shown: Vec<String> = s
        .iter()
        .take(8)
        .map(|x| match x {
            SectionSize::Finite(n) => n.to_string(),
            SectionSize::AtLeast(n) => format!(">={n}"),
            SectionSize::CertifiedInfinite(g) => format!("infinite ({g})"),
        })
        .collect();
    let more = if s.len() > 8 { ", ..." } else { "" };
    format!("{}{more}", shown.join(", "))
}

pub fn witness_text(w: &Witness, k: u32) -> Result<String, CliError> {
    let check = verify_witness(w, k)?;
    let mut s = String::new();
    writeln!(s, "  kind {}, {} sections, growth {}", w.kind.name(), w.mode.name(), w.growth.describe()).unwrap();
    if !w.reason.is_empty() {
        writeln!(s, "  {}", w.reason).unwrap();
    }
    match check.first_failure {
        None => writeln!(s, "  verified for i = 1..{k}: {}", sections_text(&check.sections)).unwrap(),
        Some(i) => writeln!(s, "  FAILED at i = {i}").unwrap(),
    }
    Ok(s)
}

fn verdict_text(phis: &[Endomorphism], v: &Verdict, lin: bool, k: u32) -> Result<String, CliError> {
    let mut s = String::new();
    writeln!(s, "group: {}", phis[0].ambient.to_text()).unwrap();
    for (i, (phi, e)) in phis.iter().zip(&v.per_endo).enumerate() {
        writeln!(s, "endomorphism {}: {}", i + 1, phi.to_text()).unwrap();
        writeln!(s, "  rin={} lin={}; {}", e.rin, e.lin, form_text(&e.form)).unwrap();
        if !e.reason.is_empty() {
            writeln!(s, "  {}", e.reason).unwrap();
        }
    }
    writeln!(s, "rin: {}", v.rin).unwrap();
    writeln!(s, "lin: {}", v.lin).unwrap();
    if let Some(c) = &v.certificate {
        writeln!(s, "certificate: {}", certificate_text(c)).unwrap();
    }
    if let Some(w) = &v.witness {
        writeln!(s, "witness:").unwrap();
        s.push_str(&witness_text(w, k)?);
    }
    if lin {
        if let Some(w) = &v.lin_witness {
            writeln!(s, "left witness:").unwrap();
            s.push_str(&witness_text(w, k)?);
        }
    }
    Ok(s)
}

fn emit(w: &Witness, common: &Common) -> Result<Outcome, CliError> {
    let check = verify_witness(w, common.precision)?;
    let out = if common.json {
        render(&inertia_witness::json::witness(w))
    } else {
        format!("witness for {}\n{}", w.endo.to_text(), witness_text(w, common.precision)?)
    };
    if !check.ok {
        return Err(CliError::Input(format!(
            "the witness failed verification at i = {}",
            check.first_failure.unwrap_or(0)
        )));
    }
    // a verified witness means the endomorphism is not inertial
    Ok(Outcome::new(false, out))
}

/// Exit codes follow `classify`: 0 when the endomorphism is inertial and
/// there is no witness, 1 when a verified witness is printed.
pub fn witness(cmd: &WitnessCommand) -> Result<Outcome, CliError> {
    match cmd {
        WitnessCommand::Endo { group, endo, lin, common } => {
            let phis = parse_inputs(group, std::slice::from_ref(endo))?;
            let v = classify_general(&phis, common.precision)?;
            let (holds, w) = if *lin { (v.lin, &v.lin_witness) } else { (v.rin, &v.witness) };
            let side = if *lin { "left" } else { "right" };
            match w {
                Some(w) => emit(w, common),
                None if holds => Ok(Outcome::new(true, format!("the endomorphism is {side} inertial; no witness\n"))),
                None => Ok(Outcome::new(false, format!("not {side} inertial, but no witness family is available\n"))),
            }
        }
        WitnessCommand::Diagonal { p, alpha, mn, pi, common } => {
            let alpha = parse_rational(alpha).ok_or_else(|| CliError::Input(format!("bad --alpha '{alpha}'")))?;
            let mn = parse_rational(mn).ok_or_else(|| CliError::Input(format!("bad --mn '{mn}'")))?;
            let pi = PrimeSet::finite(if pi.is_empty() { vec![*p] } else { pi.clone() })?;
            let w = diagonal_witness(*p, &alpha, &mn, &pi, common.precision)?;
            emit(&w, common)
        }
    }
}
