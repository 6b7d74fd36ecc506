//! Text grammar for groups, elements and subgroup handles.
//!
//! ```text
//! group   := "0" | summand ("+" summand)* | "fg{" row (";" row)* "}"
//! summand := atom ("^" (int | "w"))?
//! atom    := "Z" | "Z(" n ")" | "Z(" p "^" (e | "inf") ")" | "Q" | "Q[" primes "]"
//! element := "[" (coord ":" value ("," coord ":" value)*)? "]" | "gens(" int,* ")"
//! coord   := slot ("." copy)?           1-based
//! handle  := "<" (element | "div(" slot (":" primes)? ("*" value)? ")"),* ">"
//! ```
//!
//! Cyclic coordinates take integer residues, Prufer and localized
//! coordinates take rational values.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::descriptor::{Atom, GroupDescriptor, Mult, Slot};
use crate::element::Element;
use crate::handle::{DivClosure, SubgroupHandle};
use crate::primes::{factor, PrimeSet};
use crate::rational::{pow, Q};
use crate::GroupError;

/// Character cursor with line/column tracking.
pub struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub fn err(&self, msg: impl Into<String>) -> GroupError {
        self.err_at(self.pos, msg)
    }

    pub fn err_at(&self, pos: usize, msg: impl Into<String>) -> GroupError {
        let before = &self.src[..pos.min(self.src.len())];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        GroupError::Parse { line, col, msg: msg.into() }
    }

    pub fn pos(&self) -> usize {
        self.pos
    }

    pub fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<(), GroupError> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(d) => Err(self.err(format!("expected '{c}', found '{d}'"))),
                None => Err(self.err(format!("expected '{c}', found end of input"))),
            }
        }
    }

    /// Keyword match (whole word).
    pub fn eat_word(&mut self, w: &str) -> bool {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        if rest.starts_with(w) {
            let after = rest[w.len()..].chars().next();
            if after.map_or(true, |c| !(c.is_alphanumeric() || c == '_')) {
                self.pos += w.len();
                return true;
            }
        }
        false
    }

    pub fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let n: usize = rest
            .chars()
            .take_while(|c| c.is_alphanumeric() || *c == '_' || *c == '-')
            .map(|c| c.len_utf8())
            .sum();
        if n == 0 || !rest.chars().next().unwrap().is_alphabetic() {
            return None;
        }
        self.pos += n;
        Some(rest[..n].to_string())
    }

    pub fn uint(&mut self) -> Result<u64, GroupError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[self.pos..];
        let n = rest.chars().take_while(|c| c.is_ascii_digit()).count();
        if n == 0 {
            return Err(self.err("expected a number"));
        }
        self.pos += n;
        rest[..n].parse().map_err(|_| self.err_at(start, "number too large"))
    }

    pub fn int(&mut self) -> Result<BigInt, GroupError> {
        self.skip_ws();
        let neg = self.eat('-');
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let n = rest.chars().take_while(|c| c.is_ascii_digit()).count();
        if n == 0 {
            return Err(self.err("expected an integer"));
        }
        let v: BigInt = rest[..n].parse().unwrap();
        self.pos += n;
        Ok(if neg { -v } else { v })
    }

    pub fn rational(&mut self) -> Result<Q, GroupError> {
        let n = self.int()?;
        if self.eat('/') {
            let start = self.pos;
            let d = self.int()?;
            if d.is_zero() {
                return Err(self.err_at(start, "zero denominator"));
            }
            Ok(Q::new(n, d))
        } else {
            Ok(Q::from_integer(n))
        }
    }

    pub fn prime(&mut self) -> Result<u64, GroupError> {
        self.skip_ws();
        let start = self.pos;
        let p = self.uint()?;
        if !crate::primes::is_prime(p) {
            return Err(self.err_at(start, format!("{p} is not prime")));
        }
        Ok(p)
    }

    /// "ALL" or comma-separated primes (possibly empty); stops before `close`.
    pub fn prime_set(&mut self, close: char) -> Result<PrimeSet, GroupError> {
        if self.eat_word("ALL") {
            return Ok(PrimeSet::All);
        }
        let mut ps = Vec::new();
        if self.peek() == Some(close) {
            return Ok(PrimeSet::empty());
        }
        loop {
            ps.push(self.prime()?);
            if !self.eat(',') {
                break;
            }
        }
        PrimeSet::finite(ps)
    }

    pub fn finish(&mut self) -> Result<(), GroupError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.err(format!("unexpected '{c}'"))),
        }
    }
}

fn mult_suffix(cur: &mut Cursor) -> Result<Mult, GroupError> {
    if !cur.eat('^') {
        return Ok(Mult::Finite(1));
    }
    if cur.eat_word("w") || cur.eat_word("omega") {
        return Ok(Mult::Omega);
    }
    let start = cur.pos();
    let k = cur.uint()?;
    if k == 0 || k > u32::MAX as u64 {
        return Err(cur.err_at(start, "multiplicity must be positive"));
    }
    Ok(Mult::Finite(k as u32))
}

fn z_atoms(cur: &mut Cursor) -> Result<Vec<Atom>, GroupError> {
    let start = cur.pos();
    let n = cur.uint()?;
    if cur.eat('^') {
        if !crate::primes::is_prime(n) {
            return Err(cur.err_at(start, format!("{n} is not prime")));
        }
        if cur.eat_word("inf") {
            return Ok(vec![Atom::Prufer { p: n }]);
        }
        let es = cur.pos();
        let e = cur.uint()?;
        if e == 0 || e > 64 {
            return Err(cur.err_at(es, "exponent out of range"));
        }
        return Ok(vec![Atom::Cyclic { p: n, e: e as u32 }]);
    }
    if n == 0 {
        return Err(cur.err_at(start, "Z(0) is not a cyclic atom; write Z"));
    }
    let f = factor(&BigInt::from(n)).map_err(|e| cur.err_at(start, e.to_string()))?;
    Ok(f.into_iter().map(|(p, e)| Atom::Cyclic { p, e }).collect())
}

fn fg_rows(cur: &mut Cursor) -> Result<(Vec<Vec<BigInt>>, usize), GroupError> {
    let mut rows = Vec::new();
    loop {
        let mut r = Vec::new();
        loop {
            r.push(cur.int()?);
            if !cur.eat(',') {
                break;
            }
        }
        rows.push(r);
        if !cur.eat(';') {
            break;
        }
    }
    let n = rows[0].len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(cur.err("ragged relation matrix"));
    }
    Ok((rows, n))
}

pub fn parse_group(src: &str) -> Result<GroupDescriptor, GroupError> {
    let mut cur = Cursor::new(src);
    if cur.eat_word("fg") {
        cur.expect('{')?;
        let (rows, n) = fg_rows(&mut cur)?;
        cur.expect('}')?;
        cur.finish()?;
        return GroupDescriptor::from_presentation(rows, n);
    }
    if cur.peek() == Some('0') {
        cur.uint()?;
        cur.finish()?;
        return Ok(GroupDescriptor::trivial());
    }
    let mut slots = Vec::new();
    loop {
        let start = cur.pos();
        let atoms = if cur.eat_word("Z") {
            if cur.eat('(') {
                let a = z_atoms(&mut cur)?;
                cur.expect(')')?;
                a
            } else {
                vec![Atom::Localized(PrimeSet::empty())]
            }
        } else if cur.eat_word("Q") {
            if cur.eat('[') {
                let ps = cur.prime_set(']')?;
                cur.expect(']')?;
                vec![Atom::Localized(ps)]
            } else {
                vec![Atom::Localized(PrimeSet::All)]
            }
        } else {
            return Err(cur.err_at(start, "expected an atom (Z, Z(...), Q, Q[...])"));
        };
        let mult = mult_suffix(&mut cur)?;
        for a in atoms {
            slots.push(Slot { atom: a, mult });
        }
        if !cur.eat('+') {
            break;
        }
    }
    cur.finish()?;
    GroupDescriptor::new(slots)
}

/// Coordinate "s" or "s.c" (1-based) to 0-based.
pub fn coord(cur: &mut Cursor, g: &GroupDescriptor) -> Result<(usize, u64), GroupError> {
    let start = cur.pos();
    let s = cur.uint()?;
    let c = if cur.eat('.') { cur.uint()? } else { 1 };
    if s == 0 || c == 0 {
        return Err(cur.err_at(start, "slot and copy indices are 1-based"));
    }
    let coord = ((s - 1) as usize, c - 1);
    g.check_coord(coord).map_err(|e| cur.err_at(start, e.to_string()))?;
    Ok(coord)
}

/// Value typed at a coordinate: residues for cyclic slots.
pub fn coord_value(
    cur: &mut Cursor,
    g: &GroupDescriptor,
    c: (usize, u64),
) -> Result<Q, GroupError> {
    let start = cur.pos();
    let v = cur.rational()?;
    match g.atom(c) {
        Atom::Cyclic { p, e } => {
            if !v.denom().is_one() {
                return Err(cur.err_at(start, "cyclic coordinates take integer residues"));
            }
            Ok(v / Q::from_integer(pow(*p, *e)))
        }
        a => {
            if !a.admits(&v).map_err(|e| cur.err_at(start, e.to_string()))? {
                return Err(cur.err_at(start, format!("value not in {a}")));
            }
            Ok(v)
        }
    }
}

pub fn element(cur: &mut Cursor, g: &GroupDescriptor) -> Result<Element, GroupError> {
    let start = cur.pos();
    if cur.eat_word("gens") {
        cur.expect('(')?;
        let mut x = Vec::new();
        if cur.peek() != Some(')') {
            loop {
                x.push(cur.int()?);
                if !cur.eat(',') {
                    break;
                }
            }
        }
        cur.expect(')')?;
        return g.from_generators(&x).map_err(|e| cur.err_at(start, e.to_string()));
    }
    cur.expect('[')?;
    let mut el = Element::zero();
    if !cur.eat(']') {
        loop {
            let c = coord(cur, g)?;
            cur.expect(':')?;
            let v = coord_value(cur, g, c)?;
            el.add_at(c, v);
            if !cur.eat(',') {
                break;
            }
        }
        cur.expect(']')?;
    }
    g.canonical(el).map_err(|e| cur.err_at(start, e.to_string()))
}

pub fn parse_element(g: &GroupDescriptor, src: &str) -> Result<Element, GroupError> {
    let mut cur = Cursor::new(src);
    let e = element(&mut cur, g)?;
    cur.finish()?;
    Ok(e)
}

pub fn handle(cur: &mut Cursor, g: &GroupDescriptor) -> Result<SubgroupHandle, GroupError> {
    cur.expect('<')?;
    let mut h = SubgroupHandle::zero();
    if cur.eat('>') {
        return Ok(h);
    }
    loop {
        let start = cur.pos();
        if cur.eat_word("div") {
            cur.expect('(')?;
            let s = cur.uint()?;
            if s == 0 || s as usize > g.slots.len() {
                return Err(cur.err_at(start, "closure slot out of range"));
            }
            let slot = (s - 1) as usize;
            let atom = &g.slots[slot].atom;
            let primes = if cur.eat(':') {
                cur.prime_set(')')?
            } else {
                match atom {
                    Atom::Localized(pi) => pi.clone(),
                    a => PrimeSet::Finite(vec![a.prime().unwrap()]),
                }
            };
            let scale = if cur.eat('*') { cur.rational()? } else { atom.unit() };
            cur.expect(')')?;
            h.closures.push(DivClosure { slot, primes, scale });
        } else {
            h.gens.push(element(cur, g)?);
        }
        if !cur.eat(',') {
            break;
        }
    }
    cur.expect('>')?;
    h.validate(g).map_err(|e| cur.err(e.to_string()))?;
    Ok(h)
}

pub fn parse_handle(g: &GroupDescriptor, src: &str) -> Result<SubgroupHandle, GroupError> {
    let mut cur = Cursor::new(src);
    let h = handle(&mut cur, g)?;
    cur.finish()?;
    Ok(h)
}
