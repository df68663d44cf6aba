//! Session files.
//!
//! ```text
//! session   := ring-stmt stmt*
//! ring-stmt := "ring" NAME "=" [field] "[" vars "]" [order] ";"
//! field     := "QQ" | "ZZ/" PRIME
//! order     := "grevlex" | "lex"
//! stmt      := "ideal" NAME "=" poly ("," poly)* ";"
//!            | "lift" NAME "=" "[" row ("," row)* "]" ";"
//!            | "tier" ("fast" | "extended") ";"
//!            | "task" KIND arg* ";"
//! row       := "[" poly ("," poly)* "]"
//! arg       := NAME | KEY "=" VALUE | FLAG
//! ```
//!
//! `#` starts a comment running to the end of the line. A missing field
//! defaults to `ZZ/$RESINT_PRIME`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::ideal::Ideal;
use crate::ring::parse::{line_col, parse_poly_offset};
use crate::ring::{is_prime, Field, MonomialOrder, Poly, PolyRing, DEFAULT_PRIME};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Tier {
    Fast,
    Extended,
}

/// One `task` line: the kind, the positional words and the `key=value`
/// options. Bare words that are not declared names are flags.
#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Task {
    pub kind: String,
    pub names: Vec<String>,
    pub options: BTreeMap<String, String>,
    pub flags: Vec<String>,
}

impl Task {
    pub fn option<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.options.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| Error::InvalidInput(format!("bad value {v:?} for option {key}"))),
        }
    }

    pub fn flag(&self, f: &str) -> bool {
        self.flags.iter().any(|x| x == f)
    }

    /// The `i`-th positional name.
    pub fn name(&self, i: usize) -> Result<&str> {
        self.names
            .get(i)
            .map(|s| s.as_str())
            .ok_or_else(|| Error::InvalidInput(format!("task {} needs at least {} ideal name(s)", self.kind, i + 1)))
    }
}

#[derive(Debug)]
pub struct Session {
    pub ring_name: String,
    pub ring: Arc<PolyRing>,
    pub ideals: BTreeMap<String, Ideal>,
    pub lifts: BTreeMap<String, Vec<Vec<Poly>>>,
    pub tier: Tier,
    pub tasks: Vec<Task>,
}

impl Session {
    pub fn ideal(&self, name: &str) -> Result<&Ideal> {
        self.ideals.get(name).ok_or_else(|| Error::InvalidInput(format!("unknown ideal {name}")))
    }

    pub fn lift(&self, name: &str) -> Result<&Vec<Vec<Poly>>> {
        self.lifts.get(name).ok_or_else(|| Error::InvalidInput(format!("unknown lifting matrix {name}")))
    }
}

/// The prime used when a session omits the field.
pub fn default_prime() -> u32 {
    std::env::var("RESINT_PRIME").ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_PRIME)
}

struct Stmt<'a> {
    text: &'a str,
    start: usize,
}

fn err_at(src: &str, off: usize, msg: impl Into<String>) -> Error {
    let (line, col) = line_col(src, off);
    Error::Parse { line, col, msg: msg.into() }
}

/// Blank out comments while keeping byte offsets.
fn strip_comments(src: &str) -> String {
    let mut out = String::with_capacity(src.len());
    let mut in_comment = false;
    for ch in src.chars() {
        if ch == '#' {
            in_comment = true;
        }
        if ch == '\n' {
            in_comment = false;
        }
        if in_comment {
            for _ in 0..ch.len_utf8() {
                out.push(' ');
            }
        } else {
            out.push(ch);
        }
    }
    out
}

fn statements<'a>(src: &str, clean: &'a str) -> Result<Vec<Stmt<'a>>> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, ch) in clean.char_indices() {
        if ch == ';' {
            out.push(Stmt { text: &clean[start..i], start });
            start = i + 1;
        }
    }
    let rest = &clean[start..];
    if !rest.trim().is_empty() {
        let end = start + rest.trim_end().len();
        return Err(err_at(src, end, "expected ';'"));
    }
    Ok(out)
}

/// Offset of the first non-space byte at or after `from`.
fn skip_ws(s: &str, from: usize) -> usize {
    from + s[from..].len() - s[from..].trim_start().len()
}

fn split_top(s: &str, sep: char) -> Vec<(usize, &str)> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push((start, &s[start..]));
    parts
}

fn is_ident(s: &str) -> bool {
    let mut ch = s.chars();
    matches!(ch.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && ch.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// `NAME = rest`, returning the name and the offset of `rest`.
fn name_eq<'a>(src: &str, st: &Stmt<'a>, from: usize) -> Result<(&'a str, usize)> {
    let t = st.text;
    let Some(eq) = t[from..].find('=') else {
        return Err(err_at(src, st.start + from, "expected '='"));
    };
    let name = t[from..from + eq].trim();
    if !is_ident(name) {
        return Err(err_at(src, st.start + skip_ws(t, from), format!("bad name {name:?}")));
    }
    Ok((name, from + eq + 1))
}

fn parse_polys(src: &str, ring: &Arc<PolyRing>, text: &str, base: usize) -> Result<Vec<Poly>> {
    let mut out = Vec::new();
    for (off, piece) in split_top(text, ',') {
        let lead = piece.len() - piece.trim_start().len();
        parse_poly_offset(ring, piece.trim())
            .map(|p| out.push(p))
            .map_err(|(o, msg)| err_at(src, base + off + lead + o, msg))?;
    }
    Ok(out)
}

fn parse_ring(src: &str, st: &Stmt) -> Result<(String, Arc<PolyRing>)> {
    let t = st.text;
    let kw = skip_ws(t, 0);
    let (name, rest) = name_eq(src, st, kw + 4)?;
    let body = &t[rest..];
    let Some(open) = body.find('[') else {
        return Err(err_at(src, st.start + rest, "expected '[' before the variable list"));
    };
    let Some(close) = body.find(']') else {
        return Err(err_at(src, st.start + rest + open, "unclosed variable list"));
    };
    let field_txt = body[..open].trim();
    let field = match field_txt {
        "" => Field::Prime(default_prime()),
        "QQ" => Field::Rationals,
        f if f.starts_with("ZZ/") => {
            let p: u32 = f[3..]
                .trim()
                .parse()
                .map_err(|_| err_at(src, st.start + rest, format!("bad characteristic {:?}", &f[3..])))?;
            if !is_prime(p) {
                return Err(err_at(src, st.start + rest, format!("{p} is not prime")));
            }
            Field::Prime(p)
        }
        f => return Err(err_at(src, st.start + skip_ws(t, rest), format!("unknown field {f:?}"))),
    };
    let vars: Vec<&str> = body[open + 1..close].split(',').map(str::trim).filter(|v| !v.is_empty()).collect();
    let order_txt = body[close + 1..].trim();
    let order = match order_txt {
        "" | "grevlex" => MonomialOrder::Grevlex,
        "lex" => MonomialOrder::Lex,
        o => {
            let off = st.start + rest + close + 1 + (body[close + 1..].len() - body[close + 1..].trim_start().len());
            return Err(err_at(src, off, format!("unknown monomial order {o:?}")));
        }
    };
    let ring = PolyRing::new(field, &vars, order).map_err(|e| err_at(src, st.start + rest + open, e.to_string()))?;
    Ok((name.to_string(), ring))
}

fn parse_lift(src: &str, ring: &Arc<PolyRing>, st: &Stmt, from: usize) -> Result<(String, Vec<Vec<Poly>>)> {
    let (name, rest) = name_eq(src, st, from)?;
    let body = st.text[rest..].trim();
    let base = st.start + skip_ws(st.text, rest);
    if !body.starts_with('[') || !body.ends_with(']') {
        return Err(err_at(src, base, "a lifting matrix is written [[..],[..]]"));
    }
    let inner = &body[1..body.len() - 1];
    let mut rows = Vec::new();
    for (off, row) in split_top(inner, ',') {
        let r = row.trim();
        let lead = row.len() - row.trim_start().len();
        if !r.starts_with('[') || !r.ends_with(']') {
            return Err(err_at(src, base + 1 + off + lead, "expected a bracketed row"));
        }
        rows.push(parse_polys(src, ring, &r[1..r.len() - 1], base + 2 + off + lead)?);
    }
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(err_at(src, base, "rows of the lifting matrix differ in length"));
    }
    Ok((name.to_string(), rows))
}

pub fn parse_session(src: &str) -> Result<Session> {
    let clean = strip_comments(src);
    let stmts = statements(src, &clean)?;
    let mut it = stmts.iter().filter(|s| !s.text.trim().is_empty());
    let Some(first) = it.next() else {
        return Err(err_at(src, 0, "empty session: expected a ring declaration"));
    };
    if first.text.split_whitespace().next() != Some("ring") {
        return Err(err_at(src, first.start + skip_ws(first.text, 0), "a session starts with 'ring'"));
    }
    let (ring_name, ring) = parse_ring(src, first)?;
    let mut s = Session {
        ring_name,
        ring,
        ideals: BTreeMap::new(),
        lifts: BTreeMap::new(),
        tier: Tier::Fast,
        tasks: Vec::new(),
    };
    for st in it {
        let kw_at = skip_ws(st.text, 0);
        let kw = st.text[kw_at..].split_whitespace().next().unwrap_or("");
        let after = kw_at + kw.len();
        let taken = |s: &Session, n: &str| s.ideals.contains_key(n) || s.lifts.contains_key(n) || n == s.ring_name;
        match kw {
            "ideal" => {
                let (name, rest) = name_eq(src, st, after)?;
                if taken(&s, name) {
                    return Err(err_at(src, st.start + after, format!("name {name} already declared")));
                }
                let gens = parse_polys(src, &s.ring, &st.text[rest..], st.start + rest)?;
                s.ideals.insert(name.to_string(), Ideal::new(&s.ring, gens));
            }
            "lift" => {
                let (name, m) = parse_lift(src, &s.ring, st, after)?;
                if taken(&s, &name) {
                    return Err(err_at(src, st.start + after, format!("name {name} already declared")));
                }
                s.lifts.insert(name, m);
            }
            "tier" => {
                s.tier = match st.text[after..].trim() {
                    "fast" => Tier::Fast,
                    "extended" => Tier::Extended,
                    t => return Err(err_at(src, st.start + after, format!("unknown tier {t:?}"))),
                };
            }
            "task" => {
                let mut words = st.text[after..].split_whitespace();
                let Some(kind) = words.next() else {
                    return Err(err_at(src, st.start + after, "task needs a kind"));
                };
                let mut task = Task { kind: kind.to_string(), ..Task::default() };
                for w in words {
                    if let Some((k, v)) = w.split_once('=') {
                        task.options.insert(k.to_string(), v.to_string());
                    } else if s.ideals.contains_key(w) {
                        task.names.push(w.to_string());
                    } else {
                        task.flags.push(w.to_string());
                    }
                }
                s.tasks.push(task);
            }
            "ring" => return Err(err_at(src, st.start + kw_at, "only one ring per session")),
            other => return Err(err_at(src, st.start + kw_at, format!("unknown statement {other:?}"))),
        }
    }
    Ok(s)
}
