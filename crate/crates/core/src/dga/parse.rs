use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::{make_dga, Generator, Poly, Presentation};
use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(Scalar),
    Ident(String),
    Plus,
    Minus,
    Star,
}

fn tokenize(s: &str, location: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let x: Scalar = text
                    .parse()
                    .map_err(|_| Error::parse(location, format!("bad number {text:?}")))?;
                out.push(Token::Num(x));
            }
            '=' | ';' => return Err(Error::parse(location, format!("unexpected {c:?}"))),
            _ => {
                let start = i;
                while i < chars.len() && !chars[i].is_whitespace() && !"+-*;=".contains(chars[i]) {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
        }
    }
    Ok(out)
}

/// Parses `"2*x*y - y*x + 1/2"` against the generators of `p`.
pub(super) fn parse_poly(p: &Presentation, s: &str) -> Result<Poly> {
    let location = format!("polynomial {s:?}");
    let toks = tokenize(s, &location)?;
    let f = p.field();
    let mut out = Poly::zero();
    let mut k = 0;
    if toks.is_empty() {
        return Err(Error::parse(location, "empty polynomial"));
    }
    while k < toks.len() {
        let mut sign = f.int(1);
        while let Some(t @ (Token::Plus | Token::Minus)) = toks.get(k) {
            if *t == Token::Minus {
                sign = f.neg(&sign);
            }
            k += 1;
        }
        let mut term = Poly::constant(sign);
        let mut expect_factor = true;
        while expect_factor {
            match toks.get(k) {
                Some(Token::Num(x)) => {
                    let x = f.element(x)?;
                    term = term.scale(f, &x);
                }
                Some(Token::Ident(name)) => {
                    let g = p
                        .generator(name)
                        .ok_or_else(|| Error::parse(&location, format!("unknown generator {name:?}")))?;
                    term = p.multiply(&term, &Poly::word(vec![g], f));
                }
                _ => return Err(Error::parse(&location, "expected a number or a generator")),
            }
            k += 1;
            expect_factor = matches!(toks.get(k), Some(Token::Star));
            if expect_factor {
                k += 1;
            }
        }
        match toks.get(k) {
            None | Some(Token::Plus) | Some(Token::Minus) => {}
            Some(t) => return Err(Error::parse(&location, format!("unexpected token {t:?}"))),
        }
        out = out.add(f, &term);
    }
    Ok(out)
}

fn strip_comments(text: &str) -> String {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Parses the text format `gen x deg 0 wt 1 [part k]; d y = x*x;`, with an
/// optional leading `field Fp:p;`.
pub fn parse_presentation(text: &str, field: Option<Field>) -> Result<Presentation> {
    let text = strip_comments(text);
    let mut field_decl = None;
    let mut gens = Vec::new();
    let mut diffs: Vec<(String, String, usize)> = Vec::new();
    for (n, stmt) in text.split(';').enumerate() {
        let stmt = stmt.trim();
        if stmt.is_empty() {
            continue;
        }
        let loc = format!("statement {} ({stmt:?})", n + 1);
        let mut words = stmt.split_whitespace();
        match words.next() {
            Some("field") => {
                let f: Field = words
                    .next()
                    .ok_or_else(|| Error::parse(&loc, "missing field"))?
                    .parse()?;
                field_decl = Some(f);
            }
            Some("gen") => {
                let name = words.next().ok_or_else(|| Error::parse(&loc, "missing generator name"))?;
                let (mut deg, mut wt, mut part) = (None, None, 0u32);
                while let Some(key) = words.next() {
                    let val = words
                        .next()
                        .ok_or_else(|| Error::parse(&loc, format!("missing value after {key}")))?;
                    let num: i64 = val
                        .parse()
                        .map_err(|_| Error::parse(&loc, format!("bad integer {val:?}")))?;
                    match key {
                        "deg" => deg = Some(num as i32),
                        "wt" => wt = Some(num as i32),
                        "part" if num >= 0 => part = num as u32,
                        _ => return Err(Error::parse(&loc, format!("unknown key {key:?}"))),
                    }
                }
                let deg = deg.ok_or_else(|| Error::parse(&loc, "missing deg"))?;
                let wt = wt.ok_or_else(|| Error::parse(&loc, "missing wt"))?;
                gens.push(Generator::new(name, deg, wt).in_part(part));
            }
            Some("d") => {
                let rest = stmt[1..].trim();
                let (name, rhs) = rest
                    .split_once('=')
                    .ok_or_else(|| Error::parse(&loc, "expected d NAME = POLY"))?;
                diffs.push((name.trim().to_string(), rhs.trim().to_string(), n + 1));
            }
            Some(other) => return Err(Error::parse(&loc, format!("unknown statement {other:?}"))),
            None => {}
        }
    }
    let field = match (field, field_decl) {
        (Some(a), Some(b)) if a != b => return Err(Error::FieldMismatch(a.name(), b.name())),
        (Some(a), _) => a,
        (None, Some(b)) => b,
        (None, None) => Field::Rational,
    };
    build(field, gens, diffs)
}

fn build(field: Field, gens: Vec<Generator>, diffs: Vec<(String, String, usize)>) -> Result<Presentation> {
    let bare = Presentation::unchecked(field, gens.clone(), BTreeMap::new())?;
    let mut d = BTreeMap::new();
    for (name, rhs, n) in diffs {
        if bare.generator(&name).is_none() {
            return Err(Error::parse(format!("statement {n}"), format!("unknown generator {name:?}")));
        }
        if d.insert(name.clone(), parse_poly(&bare, &rhs)?).is_some() {
            return Err(Error::parse(format!("statement {n}"), format!("second differential for {name}")));
        }
    }
    make_dga(field, gens, d)
}

/// JSON form: `{"field":"Q","generators":[{"name":"x","deg":0,"wt":1}],"d":{"y":"x*x"}}`.
pub fn parse_presentation_json(v: &Value, field: Option<Field>) -> Result<Presentation> {
    let loc = "presentation";
    let declared: Option<Field> = match v.get("field") {
        Some(Value::String(s)) => Some(s.parse()?),
        Some(_) => return Err(Error::parse(loc, "field must be a string")),
        None => None,
    };
    let field = match (field, declared) {
        (Some(a), Some(b)) if a != b => return Err(Error::FieldMismatch(a.name(), b.name())),
        (a, b) => a.or(b).unwrap_or_default(),
    };
    let list = v
        .get("generators")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::parse(loc, "missing generators array"))?;
    let mut gens = Vec::new();
    for (k, g) in list.iter().enumerate() {
        let gl = format!("generators[{k}]");
        let name = g
            .get("name")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::parse(&gl, "missing name"))?;
        let int = |key: &str| {
            g.get(key)
                .and_then(Value::as_i64)
                .ok_or_else(|| Error::parse(&gl, format!("missing integer {key}")))
        };
        let part = g.get("part").and_then(Value::as_u64).unwrap_or(0) as u32;
        gens.push(Generator::new(name, int("deg")? as i32, int("wt")? as i32).in_part(part));
    }
    let mut diffs = Vec::new();
    if let Some(d) = v.get("d") {
        let obj = d.as_object().ok_or_else(|| Error::parse(loc, "d must be an object"))?;
        for (k, (name, rhs)) in obj.iter().enumerate() {
            let rhs = rhs
                .as_str()
                .ok_or_else(|| Error::parse(format!("d.{name}"), "polynomial must be a string"))?;
            diffs.push((name.clone(), rhs.to_string(), k + 1));
        }
    }
    build(field, gens, diffs)
}

pub fn presentation_to_json(p: &Presentation) -> Value {
    let gens: Vec<Value> = p
        .generators()
        .iter()
        .map(|g| {
            let mut o = json!({"name": g.name, "deg": g.degree, "wt": g.weight});
            if g.part != 0 {
                o["part"] = json!(g.part);
            }
            o
        })
        .collect();
    let d: serde_json::Map<String, Value> = p
        .differentials()
        .into_iter()
        .map(|(k, v)| (k, Value::String(p.format_poly(&v))))
        .collect();
    json!({"field": p.field().to_string(), "generators": gens, "d": d})
}
