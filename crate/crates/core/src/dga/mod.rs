//! Weight-graded semi-free dg algebras on finitely many generators.

mod morphism;
mod parse;
mod truncation;

pub use morphism::{make_morphism, push_class, DgaMorphism, PushedClass};
pub use parse::{parse_presentation, parse_presentation_json, presentation_to_json};
pub use truncation::{default_cap, Truncation, WeightPiece};

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar};

/// Generator indices; the empty word is the unit.
pub type Word = Vec<u32>;

/// A generator with cohomological degree, weight and the tensor factor
/// (`part`) it belongs to. Generators in different parts graded-commute.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: i32,
    pub weight: i32,
    pub part: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: i32, weight: i32) -> Self {
        Generator {
            name: name.into(),
            degree,
            weight,
            part: 0,
        }
    }

    pub fn in_part(mut self, part: u32) -> Self {
        self.part = part;
        self
    }
}

/// Noncommutative polynomial: a finite sum of scalar multiples of words.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    terms: BTreeMap<Word, Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one(field: Field) -> Self {
        Poly::monomial(field.int(1), Vec::new())
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::monomial(c, Vec::new())
    }

    pub fn monomial(c: Scalar, w: Word) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        Poly { terms }
    }

    pub fn word(w: Word, field: Field) -> Self {
        Poly::monomial(field.int(1), w)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &[u32]) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, field: Field, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_insert_with(Scalar::zero);
        *slot = field.add(slot, c);
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, field: Field, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(field, w.clone(), c);
        }
        out
    }

    pub fn scale(&self, field: Field, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(w, x)| (w.clone(), field.mul(x, c)))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
        }
    }

    pub fn sub(&self, field: Field, other: &Poly) -> Poly {
        self.add(field, &other.scale(field, &field.int(-1)))
    }
}

/// Semi-free dga presentation with a validated differential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    field: Field,
    generators: Vec<Generator>,
    d: Vec<Poly>,
    index: HashMap<String, u32>,
    multipart: bool,
}

/// Validated presentation: homogeneous differential of degree +1, weight
/// parity preserved, and `d∘d = 0` checked exactly on every generator.
pub fn make_dga(field: Field, generators: Vec<Generator>, d: BTreeMap<String, Poly>) -> Result<Presentation> {
    let p = Presentation::unchecked(field, generators, d)?;
    p.validate()?;
    Ok(p)
}

impl Presentation {
    pub(crate) fn unchecked(field: Field, generators: Vec<Generator>, d: BTreeMap<String, Poly>) -> Result<Self> {
        let mut index = HashMap::new();
        for (k, g) in generators.iter().enumerate() {
            if g.name.is_empty() || g.name.chars().any(|ch| ch.is_whitespace() || "+-*;=".contains(ch)) {
                return Err(Error::Presentation(format!("invalid generator name {:?}", g.name)));
            }
            if index.insert(g.name.clone(), k as u32).is_some() {
                return Err(Error::Presentation(format!("duplicate generator {}", g.name)));
            }
        }
        let mut diffs = vec![Poly::zero(); generators.len()];
        for (name, poly) in d {
            let k = *index
                .get(&name)
                .ok_or_else(|| Error::Presentation(format!("differential given for unknown generator {name}")))?;
            for w in poly.terms.keys() {
                if w.iter().any(|&g| g as usize >= generators.len()) {
                    return Err(Error::Presentation(format!("d {name} mentions an unknown generator")));
                }
            }
            diffs[k as usize] = poly;
        }
        let multipart = generators.iter().any(|g| g.part != generators[0].part);
        let mut p = Presentation {
            field,
            generators,
            d: vec![],
            index,
            multipart,
        };
        p.d = diffs.iter().map(|q| p.normalize(q)).collect();
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        for (k, g) in self.generators.iter().enumerate() {
            for w in self.d[k].terms.keys() {
                if self.word_degree(w) != g.degree + 1 {
                    return Err(Error::Presentation(format!(
                        "d {} has a term of degree {}, expected {}",
                        g.name,
                        self.word_degree(w),
                        g.degree + 1
                    )));
                }
                if (self.word_weight(w) - g.weight).rem_euclid(2) != 0 {
                    return Err(Error::Presentation(format!(
                        "d {} changes weight parity",
                        g.name
                    )));
                }
            }
        }
        for (k, g) in self.generators.iter().enumerate() {
            let dd = self.d_poly(&self.d[k]);
            if !dd.is_zero() {
                return Err(Error::DSquared {
                    generator: g.name.clone(),
                    residual: self.format_poly(&dd),
                });
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Option<u32> {
        self.index.get(name).copied()
    }

    /// Differential of a generator.
    pub fn d_of(&self, g: u32) -> &Poly {
        &self.d[g as usize]
    }

    pub fn differentials(&self) -> BTreeMap<String, Poly> {
        self.generators
            .iter()
            .zip(&self.d)
            .filter(|(_, p)| !p.is_zero())
            .map(|(g, p)| (g.name.clone(), p.clone()))
            .collect()
    }

    pub fn word_degree(&self, w: &[u32]) -> i32 {
        w.iter().map(|&g| self.generators[g as usize].degree).sum()
    }

    pub fn word_weight(&self, w: &[u32]) -> i32 {
        w.iter().map(|&g| self.generators[g as usize].weight).sum()
    }

    /// Common degree of the terms, or `None` for the zero polynomial.
    pub fn poly_degree(&self, p: &Poly) -> Option<i32> {
        p.terms.keys().next().map(|w| self.word_degree(w))
    }

    pub fn is_homogeneous(&self, p: &Poly) -> bool {
        let mut degs = p.terms.keys().map(|w| self.word_degree(w));
        match degs.next() {
            Some(d0) => degs.all(|d| d == d0),
            None => true,
        }
    }

    /// Sign of moving `b` to the left past `a`.
    fn swap_sign(&self, a: u32, b: u32) -> bool {
        let (ga, gb) = (&self.generators[a as usize], &self.generators[b as usize]);
        (ga.weight * gb.weight + ga.degree * gb.degree).rem_euclid(2) == 1
    }

    /// Sorts a word into nondecreasing part order; returns the sign flip.
    pub fn normalize_word(&self, w: &mut [u32]) -> bool {
        if !self.multipart {
            return false;
        }
        let mut flip = false;
        for i in 1..w.len() {
            let mut j = i;
            while j > 0 && self.generators[w[j - 1] as usize].part > self.generators[w[j] as usize].part {
                flip ^= self.swap_sign(w[j - 1], w[j]);
                w.swap(j - 1, j);
                j -= 1;
            }
        }
        flip
    }

    pub fn normalize(&self, p: &Poly) -> Poly {
        if !self.multipart {
            return p.clone();
        }
        let mut out = Poly::zero();
        for (w, c) in &p.terms {
            let mut w = w.clone();
            let flip = self.normalize_word(&mut w);
            let c = if flip { self.field.neg(c) } else { c.clone() };
            out.add_term(self.field, w, &c);
        }
        out
    }

    pub fn is_normal_word(&self, w: &[u32]) -> bool {
        w.windows(2)
            .all(|p| self.generators[p[0] as usize].part <= self.generators[p[1] as usize].part)
    }

    /// Product in the algebra.
    pub fn multiply(&self, p: &Poly, q: &Poly) -> Poly {
        let f = self.field;
        let mut out = Poly::zero();
        for (u, a) in &p.terms {
            for (v, b) in &q.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                let flip = self.normalize_word(&mut w);
                let c = f.mul(a, b);
                let c = if flip { f.neg(&c) } else { c };
                out.add_term(f, w, &c);
            }
        }
        out
    }

    /// Derivation on a single word, `d(g₁⋯g_k) = Σ (−1)^{|g₁⋯g_{t−1}|} g₁⋯d(g_t)⋯g_k`.
    pub fn d_word(&self, w: &[u32]) -> Poly {
        let f = self.field;
        let mut out = Poly::zero();
        let mut prefix_deg = 0i32;
        for (t, &g) in w.iter().enumerate() {
            let dg = &self.d[g as usize];
            if !dg.is_zero() {
                let sign = f.sign(prefix_deg as i64);
                for (m, c) in &dg.terms {
                    let mut nw = Vec::with_capacity(w.len() + m.len());
                    nw.extend_from_slice(&w[..t]);
                    nw.extend_from_slice(m);
                    nw.extend_from_slice(&w[t + 1..]);
                    let flip = self.normalize_word(&mut nw);
                    let c = f.mul(&sign, c);
                    let c = if flip { f.neg(&c) } else { c };
                    out.add_term(f, nw, &c);
                }
            }
            prefix_deg += self.generators[g as usize].degree;
        }
        out
    }

    pub fn d_poly(&self, p: &Poly) -> Poly {
        let f = self.field;
        let mut out = Poly::zero();
        for (w, c) in &p.terms {
            for (m, x) in &self.d_word(w).terms {
                out.add_term(f, m.clone(), &f.mul(c, x));
            }
        }
        out
    }

    pub fn generator_poly(&self, name: &str) -> Option<Poly> {
        self.generator(name).map(|g| Poly::word(vec![g], self.field))
    }

    /// True when every term of every `d(g)` has the weight of `g`.
    pub fn is_weight_homogeneous(&self) -> bool {
        self.generators.iter().zip(&self.d).all(|(g, p)| {
            p.terms.keys().all(|w| self.word_weight(w) == g.weight)
        })
    }

    /// True when no `d(g)` has a term of larger weight than `g`.
    pub fn lowers_weight(&self) -> bool {
        self.generators.iter().zip(&self.d).all(|(g, p)| {
            p.terms.keys().all(|w| self.word_weight(w) <= g.weight)
        })
    }

    pub fn format_word(&self, w: &[u32]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let names: Vec<&str> = w.iter().map(|&g| self.generators[g as usize].name.as_str()).collect();
        names.join("*")
    }

    /// `"x*y - y*x"`, `"2*x*x - 2"`: longer words first.
    pub fn format_poly(&self, p: &Poly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<(&Word, &Scalar)> = p.terms.iter().collect();
        terms.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0.cmp(b.0)));
        let mut out = String::new();
        for (k, (w, c)) in terms.into_iter().enumerate() {
            let c = self.display_scalar(c);
            let negative = c.is_negative();
            let mag = if negative { -c } else { c };
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if w.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&self.format_word(w));
            } else {
                out.push_str(&format!("{mag}*{}", self.format_word(w)));
            }
        }
        out
    }

    /// Signed representative used for printing prime-field coefficients.
    fn display_scalar(&self, c: &Scalar) -> Scalar {
        match self.field {
            Field::Prime(p) => {
                let half = Scalar::from_int((p / 2) as i64);
                if c > &half {
                    c - &Scalar::from_int(p as i64)
                } else {
                    c.clone()
                }
            }
            Field::Rational => c.clone(),
        }
    }

    pub fn parse_poly(&self, s: &str) -> Result<Poly> {
        parse::parse_poly(self, s)
    }

    /// Presentation text in the `gen …; d … = …;` format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if self.field != Field::Rational {
            out.push_str(&format!("field {};\n", self.field));
        }
        for g in &self.generators {
            out.push_str(&format!("gen {} deg {} wt {}", g.name, g.degree, g.weight));
            if self.multipart {
                out.push_str(&format!(" part {}", g.part));
            }
            out.push_str(";\n");
        }
        for (k, g) in self.generators.iter().enumerate() {
            if !self.d[k].is_zero() {
                out.push_str(&format!("d {} = {};\n", g.name, self.format_poly(&self.d[k])));
            }
        }
        out
    }

    /// The presentation with no generators.
    pub fn trivial(field: Field) -> Self {
        make_dga(field, vec![], BTreeMap::new()).expect("empty presentation")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `D₁ ⊗ʷ D₂`: generators `l.*` and `r.*`; factors graded-commute with sign
/// `(−1)^{w w′ + |a||b|}`.
pub fn graded_tensor(d1: &Presentation, d2: &Presentation) -> Result<Presentation> {
    d1.field.ensure_same(&d2.field)?;
    let shift = d1.generators.iter().map(|g| g.part + 1).max().unwrap_or(0);
    let n1 = d1.generators.len() as u32;
    let mut gens = Vec::new();
    for g in &d1.generators {
        gens.push(Generator {
            name: format!("l.{}", g.name),
            ..g.clone()
        });
    }
    for g in &d2.generators {
        gens.push(Generator {
            name: format!("r.{}", g.name),
            part: g.part + shift,
            ..g.clone()
        });
    }
    let mut d = BTreeMap::new();
    for (k, g) in d1.generators.iter().enumerate() {
        if !d1.d[k].is_zero() {
            d.insert(format!("l.{}", g.name), d1.d[k].clone());
        }
    }
    for (k, g) in d2.generators.iter().enumerate() {
        if !d2.d[k].is_zero() {
            let moved = Poly {
                terms: d2.d[k]
                    .terms
                    .iter()
                    .map(|(w, c)| (w.iter().map(|x| x + n1).collect(), c.clone()))
                    .collect(),
            };
            d.insert(format!("r.{}", g.name), moved);
        }
    }
    make_dga(d1.field, gens, d)
}

/// The left (`l.`) or right (`r.`) inclusion of a factor into `D₁ ⊗ʷ D₂`.
pub fn tensor_inclusion_word(d1: &Presentation, right: bool, w: &[u32]) -> Word {
    let off = if right { d1.generators.len() as u32 } else { 0 };
    w.iter().map(|x| x + off).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    pub(crate) fn toen() -> Presentation {
        let gens = vec![Generator::new("x", 0, 1), Generator::new("y", -1, 2)];
        let d = BTreeMap::from([("y".to_string(), Poly::word(vec![0, 0], q()))]);
        make_dga(q(), gens, d).unwrap()
    }

    #[test]
    fn toen_presentation_is_valid() {
        let t = toen();
        assert_eq!(t.format_poly(t.d_of(1)), "x*x");
        assert!(t.is_weight_homogeneous());
    }

    #[test]
    fn d_squared_failure_reports_generator() {
        let gens = vec![Generator::new("y", -1, 2), Generator::new("z", -2, 2)];
        let d = BTreeMap::from([
            ("y".to_string(), Poly::one(q())),
            ("z".to_string(), Poly::word(vec![0], q())),
        ]);
        match make_dga(q(), gens, d) {
            Err(Error::DSquared { generator, residual }) => {
                assert_eq!(generator, "z");
                assert_eq!(residual, "1");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn free_algebra_with_zero_differential() {
        let gens = vec![Generator::new("a", 0, 1), Generator::new("b", 1, 1)];
        assert!(make_dga(q(), gens, BTreeMap::new()).is_ok());
    }

    #[test]
    fn multiplication() {
        let t = toen();
        let x = t.generator_poly("x").unwrap();
        let y = t.generator_poly("y").unwrap();
        assert_eq!(t.format_poly(&t.multiply(&x, &x)), "x*x");
        let s = x.add(q(), &y);
        assert_eq!(t.format_poly(&t.multiply(&s, &x)), "x*x + y*x");
    }

    #[test]
    fn cross_relation_sign() {
        let a = make_dga(q(), vec![Generator::new("a", 0, 1)], BTreeMap::new()).unwrap();
        let b = make_dga(q(), vec![Generator::new("b", 0, 1)], BTreeMap::new()).unwrap();
        let t = graded_tensor(&a, &b).unwrap();
        let pa = t.generator_poly("l.a").unwrap();
        let pb = t.generator_poly("r.b").unwrap();
        let ab = t.multiply(&pa, &pb);
        let ba = t.multiply(&pb, &pa);
        assert_eq!(ab, ba.scale(q(), &q().int(-1)));
    }

    #[test]
    fn formatting() {
        let gens = vec![Generator::new("x", 0, 1), Generator::new("y", -1, 2)];
        let p = make_dga(q(), gens, BTreeMap::new()).unwrap();
        let poly = p.parse_poly("2*x*x - 2").unwrap();
        assert_eq!(p.format_poly(&poly), "2*x*x - 2");
        let c = p.parse_poly("x*y - y*x").unwrap();
        assert_eq!(p.format_poly(&c), "x*y - y*x");
    }
}
