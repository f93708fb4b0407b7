//! The `.bq` text format.
//!
//! ```text
//! # Kronecker-like example
//! field Q
//! vertex 3
//! vertex 2
//! vertex 1
//! arrow b 3 2
//! arrow g 3 2
//! arrow a 2 1
//! rel b*a - g*a
//! ```
//!
//! Vertices mentioned by an `arrow` line before being declared are declared
//! implicitly, in order of appearance. Relation terms are `[coeff*]a*b*...`
//! with `coeff` an integer or `p/q`; composition is left to right.
//!
//! Morphism files hold `vmap <v> -> <v>` and `amap <a> -> <a>` lines. Group
//! files hold `element <name>` headers, each followed by its `vmap`/`amap`
//! lines; entries left out of an element are fixed by it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::quiver::BoundQuiver;

/// Vertex and arrow assignments by name, in file order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MapSpec {
    pub vertices: Vec<(String, String)>,
    pub arrows: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    pub elements: Vec<(String, MapSpec)>,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Splits a line into whitespace separated words with 1-based columns,
/// stopping at `#`.
fn words(line: &str) -> Vec<(usize, &str)> {
    let body = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in body.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &body[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &body[s..]));
    }
    out.into_iter().map(|(s, w)| (body[..s].chars().count() + 1, w)).collect()
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_alphabetic() || c == '_') && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

type Terms = Vec<(Scalar, Vec<String>)>;

pub fn parse_quiver(text: &str) -> Result<BoundQuiver> {
    let mut field = Field::Rational;
    let mut seen_rel = false;
    let mut pending: Vec<(usize, usize, Terms)> = Vec::new();
    let mut decls: Vec<(usize, Vec<(usize, &str)>)> = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let ln = ln + 1;
        let w = words(line);
        let Some(&(col, kw)) = w.first() else { continue };
        match kw {
            "field" => {
                if w.len() != 2 {
                    return Err(syntax(ln, col, "expected `field Q` or `field Fp:<p>`"));
                }
                if seen_rel || !decls.is_empty() {
                    return Err(syntax(ln, col, "`field` must precede all declarations"));
                }
                field = w[1].1.parse().map_err(|e: Error| syntax(ln, w[1].0, e.to_string()))?;
            }
            "vertex" | "arrow" => {
                if seen_rel {
                    return Err(syntax(ln, col, format!("`{kw}` after the first `rel`")));
                }
                decls.push((ln, w));
            }
            "rel" => {
                seen_rel = true;
                let body_start = line.find("rel").unwrap() + 3;
                let body = line[body_start..].split('#').next().unwrap_or("");
                let offset = line[..body_start].chars().count();
                let terms = parse_rel_body(body, ln, offset)?;
                pending.push((ln, col, terms));
            }
            other => return Err(syntax(ln, col, format!("unknown keyword `{other}`"))),
        }
    }
    let mut quiver = BoundQuiver::new(field);
    for (ln, w) in decls {
        let (col, kw) = w[0];
        match kw {
            "vertex" => {
                if w.len() != 2 {
                    return Err(syntax(ln, col, "expected `vertex <id>`"));
                }
                quiver.add_vertex(w[1].1).map_err(|e| syntax(ln, w[1].0, e.to_string()))?;
            }
            _ => {
                if w.len() != 4 {
                    return Err(syntax(ln, col, "expected `arrow <name> <source> <target>`"));
                }
                if !is_ident(w[1].1) {
                    return Err(syntax(ln, w[1].0, format!("invalid arrow name `{}`", w[1].1)));
                }
                quiver.ensure_vertex(w[2].1).map_err(|e| syntax(ln, w[2].0, e.to_string()))?;
                quiver.ensure_vertex(w[3].1).map_err(|e| syntax(ln, w[3].0, e.to_string()))?;
                quiver
                    .add_arrow(w[1].1, w[2].1, w[3].1)
                    .map_err(|e| syntax(ln, w[1].0, e.to_string()))?;
            }
        }
    }
    for (_, _, terms) in pending {
        quiver.add_relation(&terms)?;
    }
    Ok(quiver)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Star,
    Plus,
    Minus,
}

fn lex(body: &str, ln: usize, offset: usize) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = body.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = offset + i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c == '*' {
            out.push((col, Tok::Star));
            i += 1;
        } else if c == '+' {
            out.push((col, Tok::Plus));
            i += 1;
        } else if c == '-' {
            out.push((col, Tok::Minus));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let num: BigInt = chars[start..i].iter().collect::<String>().parse().unwrap();
            let mut den = BigInt::one();
            if i < chars.len() && chars[i] == '/' {
                i += 1;
                let ds = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if ds == i {
                    return Err(syntax(ln, offset + i + 1, "expected denominator after `/`"));
                }
                den = chars[ds..i].iter().collect::<String>().parse().unwrap();
                if den.is_zero() {
                    return Err(syntax(ln, offset + ds + 1, "zero denominator"));
                }
            }
            out.push((col, Tok::Num(BigRational::new(num, den))));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push((col, Tok::Ident(chars[start..i].iter().collect())));
        } else {
            return Err(syntax(ln, col, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

fn parse_rel_body(body: &str, ln: usize, offset: usize) -> Result<Vec<(Scalar, Vec<String>)>> {
    let toks = lex(body, ln, offset)?;
    let end_col = offset + body.chars().count() + 1;
    let mut terms = Vec::new();
    let mut i = 0;
    let col_at = |i: usize| toks.get(i).map_or(end_col, |(c, _)| *c);
    if toks.is_empty() {
        return Err(syntax(ln, end_col, "empty relation"));
    }
    loop {
        let mut sign = Scalar::one();
        match toks.get(i).map(|t| &t.1) {
            Some(Tok::Plus) => i += 1,
            Some(Tok::Minus) => {
                sign = -sign;
                i += 1;
            }
            _ if terms.is_empty() => {}
            Some(_) => return Err(syntax(ln, col_at(i), "expected `+` or `-` between terms")),
            None => break,
        }
        let mut coeff = sign;
        if let Some((_, Tok::Num(n))) = toks.get(i) {
            coeff *= n.clone();
            i += 1;
            match toks.get(i) {
                Some((_, Tok::Star)) => i += 1,
                _ => return Err(syntax(ln, col_at(i), "expected `*` after coefficient")),
            }
        }
        let mut names = Vec::new();
        loop {
            match toks.get(i) {
                Some((_, Tok::Ident(s))) => {
                    names.push(s.clone());
                    i += 1;
                }
                _ => return Err(syntax(ln, col_at(i), "expected an arrow name")),
            }
            match toks.get(i) {
                Some((_, Tok::Star)) => i += 1,
                _ => break,
            }
        }
        if coeff.is_zero() {
            return Err(syntax(ln, col_at(i.saturating_sub(1)), "zero coefficient"));
        }
        terms.push((coeff, names));
        if i >= toks.len() {
            break;
        }
    }
    Ok(terms)
}

fn parse_map_line(w: &[(usize, &str)], ln: usize, spec: &mut MapSpec) -> Result<()> {
    let (col, kw) = w[0];
    if w.len() != 4 || w[2].1 != "->" {
        return Err(syntax(ln, col, format!("expected `{kw} <from> -> <to>`")));
    }
    let pair = (w[1].1.to_string(), w[3].1.to_string());
    if kw == "vmap" {
        spec.vertices.push(pair);
    } else {
        spec.arrows.push(pair);
    }
    Ok(())
}

pub fn parse_morphism(text: &str) -> Result<MapSpec> {
    let mut spec = MapSpec::default();
    for (ln, line) in text.lines().enumerate() {
        let ln = ln + 1;
        let w = words(line);
        let Some(&(col, kw)) = w.first() else { continue };
        match kw {
            "vmap" | "amap" => parse_map_line(&w, ln, &mut spec)?,
            other => return Err(syntax(ln, col, format!("unknown keyword `{other}`"))),
        }
    }
    Ok(spec)
}

pub fn parse_group(text: &str) -> Result<GroupSpec> {
    let mut elements: Vec<(String, MapSpec)> = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let ln = ln + 1;
        let w = words(line);
        let Some(&(col, kw)) = w.first() else { continue };
        match kw {
            "element" => {
                if w.len() != 2 {
                    return Err(syntax(ln, col, "expected `element <name>`"));
                }
                if elements.iter().any(|(n, _)| n == w[1].1) {
                    return Err(syntax(ln, w[1].0, format!("duplicate element `{}`", w[1].1)));
                }
                elements.push((w[1].1.to_string(), MapSpec::default()));
            }
            "vmap" | "amap" => {
                let Some((_, spec)) = elements.last_mut() else {
                    return Err(syntax(ln, col, "map line before any `element`"));
                };
                parse_map_line(&w, ln, spec)?;
            }
            other => return Err(syntax(ln, col, format!("unknown keyword `{other}`"))),
        }
    }
    Ok(GroupSpec { elements })
}

pub fn write_morphism(spec: &MapSpec) -> String {
    let mut out = String::new();
    for (a, b) in &spec.vertices {
        out.push_str(&format!("vmap {a} -> {b}\n"));
    }
    for (a, b) in &spec.arrows {
        out.push_str(&format!("amap {a} -> {b}\n"));
    }
    out
}
