//! Text grammar for endomorphisms of a given group.
//!
//! ```text
//! endo    := term ("+" term)*
//! term    := "zero" | "id" | "mult" scalar
//!          | "block" "{" slots ":" scalar (";" ...)* "}"
//!          | "each" "{" s "<-" s ":" q (";" ...)* "}"
//!          | "matrix" "{" s.c "<-" s.c ":" q (";" ...)* "}"
//!          | "gens" "{" row (";" row)* "}"
//!          | "finitary" "{" s.c "*" q "mod" p["^"f] "->" element (";" ...)* "}"
//! slots   := ["slots" "="] n ("," n)*
//! scalar  := q | "local(" p ":" q ")"
//! ```
//!
//! Slots and copies are 1-based. `gens` gives phi(g_j) as row j on the
//! group's generators. `local(p: c)` is c, checked to sit on p-primary slots.

use inertia_group::lattice::Row;
use inertia_group::parse::{coord, element, Cursor};
use inertia_group::{Atom, GroupDescriptor, Q};

use crate::{coef, convert, EndoError, Endomorphism, Entry, FinTerm};

pub fn parse_endo(g: &GroupDescriptor, src: &str) -> Result<Endomorphism, EndoError> {
    let mut cur = Cursor::new(src);
    let mut acc: Option<Endomorphism> = None;
    loop {
        let start = cur.pos();
        let t = term(&mut cur, g)?;
        acc = Some(match acc {
            None => t,
            Some(a) => a.add(&t).map_err(|e| EndoError::Group(cur.err_at(start, e.to_string())))?,
        });
        if !cur.eat('+') {
            break;
        }
    }
    cur.finish()?;
    Ok(acc.unwrap())
}

fn scalar(cur: &mut Cursor, slots: &[(usize, usize)], g: &GroupDescriptor) -> Result<Q, EndoError> {
    let start = cur.pos();
    if cur.eat_word("local") {
        cur.expect('(')?;
        let p = cur.prime()?;
        cur.expect(':')?;
        let c = cur.rational()?;
        cur.expect(')')?;
        for (s, _) in slots {
            let ok = match &g.slots[*s].atom {
                Atom::Cyclic { p: q, .. } | Atom::Prufer { p: q } => *q == p,
                Atom::Localized(_) => false,
            };
            if !ok {
                return Err(cur.err_at(start, format!("slot {} is not {p}-primary", s + 1)).into());
            }
        }
        return Ok(c);
    }
    Ok(cur.rational()?)
}

fn slot_index(cur: &mut Cursor, g: &GroupDescriptor) -> Result<usize, EndoError> {
    let start = cur.pos();
    let s = cur.uint()?;
    if s == 0 || s as usize > g.slots.len() {
        return Err(cur.err_at(start, format!("slot {s} out of range")).into());
    }
    Ok(s as usize - 1)
}

fn entry_list<F>(cur: &mut Cursor, mut item: F) -> Result<(), EndoError>
where
    F: FnMut(&mut Cursor) -> Result<(), EndoError>,
{
    cur.expect('{')?;
    if cur.eat('}') {
        return Ok(());
    }
    loop {
        item(cur)?;
        if !cur.eat(';') {
            break;
        }
        if cur.peek() == Some('}') {
            break;
        }
    }
    cur.expect('}')?;
    Ok(())
}

fn located(cur: &Cursor, pos: usize, r: Result<(), String>) -> Result<(), EndoError> {
    r.map_err(|m| EndoError::Group(cur.err_at(pos, format!("not well defined: {m}"))))
}

fn term(cur: &mut Cursor, g: &GroupDescriptor) -> Result<Endomorphism, EndoError> {
    let start = cur.pos();
    let wrap = |cur: &Cursor, r: Result<Endomorphism, EndoError>| {
        r.map_err(|e| match e {
            EndoError::Group(inertia_group::GroupError::Parse { .. }) => e,
            other => EndoError::Group(cur.err_at(start, other.to_string())),
        })
    };
    if cur.eat_word("zero") {
        return Ok(Endomorphism::zero(g));
    }
    if cur.eat_word("id") {
        return Ok(Endomorphism::identity(g));
    }
    if cur.eat_word("mult") {
        let all: Vec<(usize, usize)> = (0..g.slots.len()).map(|s| (s, s)).collect();
        let c = scalar(cur, &all, g)?;
        for (s, _) in &all {
            let a = &g.slots[*s].atom;
            located(cur, start, coef::well_defined(a, a, &c))?;
        }
        return wrap(cur, Endomorphism::scalar(g, &c));
    }
    if cur.eat_word("block") || cur.eat_word("blocks") {
        let mut entries = Vec::new();
        entry_list(cur, |cur| {
            let pos = cur.pos();
            cur.eat_word("slots");
            cur.eat('=');
            let mut ss = vec![slot_index(cur, g)?];
            while cur.eat(',') {
                ss.push(slot_index(cur, g)?);
            }
            cur.expect(':')?;
            let pairs: Vec<(usize, usize)> = ss.iter().map(|s| (*s, *s)).collect();
            let c = scalar(cur, &pairs, g)?;
            for s in ss {
                let a = &g.slots[s].atom;
                located(cur, pos, coef::well_defined(a, a, &c))?;
                entries.push(Entry::Slot { target: s, source: s, c: c.clone() });
            }
            Ok(())
        })?;
        return wrap(cur, Endomorphism::from_entries(g, entries));
    }
    if cur.eat_word("each") {
        let mut entries = Vec::new();
        entry_list(cur, |cur| {
            let pos = cur.pos();
            let t = slot_index(cur, g)?;
            cur.expect('<')?;
            cur.expect('-')?;
            let s = slot_index(cur, g)?;
            cur.expect(':')?;
            let c = scalar(cur, &[(t, s)], g)?;
            located(cur, pos, coef::well_defined(&g.slots[s].atom, &g.slots[t].atom, &c))?;
            entries.push(Entry::Slot { target: t, source: s, c });
            Ok(())
        })?;
        return wrap(cur, Endomorphism::from_entries(g, entries));
    }
    if cur.eat_word("matrix") {
        let mut entries = Vec::new();
        entry_list(cur, |cur| {
            let pos = cur.pos();
            let t = coord(cur, g)?;
            cur.expect('<')?;
            cur.expect('-')?;
            let s = coord(cur, g)?;
            cur.expect(':')?;
            let c = scalar(cur, &[(t.0, s.0)], g)?;
            located(cur, pos, coef::well_defined(g.atom(s), g.atom(t), &c))?;
            entries.push(Entry::Copy { target: t, source: s, c });
            Ok(())
        })?;
        return wrap(cur, Endomorphism::from_entries(g, entries));
    }
    if cur.eat_word("gens") {
        let mut rows: Vec<Row> = Vec::new();
        entry_list(cur, |cur| {
            let mut r = vec![cur.int()?];
            while cur.eat(',') {
                r.push(cur.int()?);
            }
            rows.push(r);
            Ok(())
        })?;
        return wrap(cur, convert::from_generator_matrix(g, &rows));
    }
    if cur.eat_word("finitary") {
        let mut entries = Vec::new();
        entry_list(cur, |cur| {
            let pos = cur.pos();
            let source = coord(cur, g)?;
            cur.expect('*')?;
            let weight = cur.rational()?;
            if !cur.eat_word("mod") {
                return Err(cur.err("expected 'mod'").into());
            }
            let p = cur.prime()?;
            let f = if cur.eat('^') { cur.uint()? as u32 } else { 1 };
            cur.expect('-')?;
            cur.expect('>')?;
            let target = element(cur, g)?;
            let t = FinTerm { source, weight, p, f, target };
            crate::check_term(g, &t).map_err(|e| EndoError::Group(cur.err_at(pos, e.to_string())))?;
            entries.push(Entry::Term(t));
            Ok(())
        })?;
        return wrap(cur, Endomorphism::from_entries(g, entries));
    }
    Err(cur.err("expected zero, id, mult, block, each, matrix, gens or finitary").into())
}
