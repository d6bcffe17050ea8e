use std::collections::{BTreeMap, HashMap};

use super::{Poly, Presentation, Word};
use crate::complexes::{cohomology_at, ChainMap, CohomologyDegree, Complex};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, SparseRow};

/// Basis-word cap per degree: `QFLAB_CAP` if set, else 20000.
pub fn default_cap() -> usize {
    std::env::var("QFLAB_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(20000)
}

/// The subcomplex spanned by normal words with weight in `[w_min, w_max]`,
/// restricted to degrees `lo−1 ..= hi+1` so that cohomology in `lo ..= hi` is exact.
#[derive(Clone, Debug)]
pub struct Truncation {
    pres: Presentation,
    w_min: i32,
    w_max: i32,
    lo: i32,
    hi: i32,
    words: BTreeMap<i32, Vec<Word>>,
    lookup: HashMap<Word, usize>,
    complex: Complex,
}

/// Per-weight cohomology dimension of a weight-homogeneous presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightPiece {
    pub weight: i32,
    pub degree: i32,
    pub dim: usize,
}

impl Truncation {
    /// Filtration piece `F_{≤w}`; needs positive generator weights and a
    /// differential that never raises weight.
    pub fn new(pres: &Presentation, w_max: i32, lo: i32, hi: i32, cap: usize) -> Result<Self> {
        if !pres.lowers_weight() {
            let g = pres
                .generators()
                .iter()
                .enumerate()
                .find(|(k, g)| pres.d_of(*k as u32).terms().keys().any(|w| pres.word_weight(w) > g.weight))
                .map(|(_, g)| g.name.clone())
                .unwrap_or_default();
            return Err(Error::Presentation(format!("d raises weight on generator {g}")));
        }
        Truncation::build(pres, 0, w_max, lo, hi, cap)
    }

    /// Exact weight-`w` piece; needs a weight-homogeneous differential.
    pub fn weight_piece(pres: &Presentation, w: i32, lo: i32, hi: i32, cap: usize) -> Result<Self> {
        if !pres.is_weight_homogeneous() {
            return Err(Error::Precondition("weight pieces need a weight-homogeneous differential".into()));
        }
        Truncation::build(pres, w, w, lo, hi, cap)
    }

    fn build(pres: &Presentation, w_min: i32, w_max: i32, lo: i32, hi: i32, cap: usize) -> Result<Self> {
        if lo > hi {
            return Err(Error::Precondition(format!("empty degree range {lo}..{hi}")));
        }
        if let Some(g) = pres.generators().iter().find(|g| g.weight <= 0) {
            return Err(Error::Presentation(format!(
                "truncation needs positive weights, {} has weight {}",
                g.name, g.weight
            )));
        }
        let (dlo, dhi) = (lo - 1, hi + 1);
        let mut words: BTreeMap<i32, Vec<(i32, Word)>> = BTreeMap::new();
        let mut visited = 0usize;
        let guard = cap.saturating_mul(64);
        let gens = pres.generators();
        let mut stack: Vec<(Word, i32, i32)> = vec![(Vec::new(), 0, 0)];
        // depth-first in lexicographic order
        while let Some((w, wt, deg)) = stack.pop() {
            visited += 1;
            if visited > guard {
                return Err(Error::Resource {
                    what: format!("word enumeration up to weight {w_max}"),
                    count: visited,
                    cap: guard,
                });
            }
            if wt >= w_min && (dlo..=dhi).contains(&deg) {
                let bucket = words.entry(deg).or_default();
                bucket.push((wt, w.clone()));
                if bucket.len() > cap {
                    return Err(Error::Resource {
                        what: format!("degree {deg} of the weight ≤ {w_max} truncation"),
                        count: bucket.len(),
                        cap,
                    });
                }
            }
            let last_part = w.last().map_or(0, |&g| gens[g as usize].part);
            for (k, g) in gens.iter().enumerate().rev() {
                if g.part < last_part || wt + g.weight > w_max {
                    continue;
                }
                let mut nw = w.clone();
                nw.push(k as u32);
                stack.push((nw, wt + g.weight, deg + g.degree));
            }
        }
        let words: BTreeMap<i32, Vec<Word>> = words
            .into_iter()
            .map(|(deg, mut v)| {
                v.sort();
                (deg, v.into_iter().map(|(_, w)| w).collect())
            })
            .collect();
        let mut lookup = HashMap::new();
        for v in words.values() {
            for (k, w) in v.iter().enumerate() {
                lookup.insert(w.clone(), k);
            }
        }
        let f = pres.field();
        let basis: BTreeMap<i32, Vec<String>> = words
            .iter()
            .map(|(deg, v)| (*deg, v.iter().map(|w| pres.format_word(w)).collect()))
            .collect();
        let mut diffs = BTreeMap::new();
        for (deg, v) in &words {
            let Some(next) = words.get(&(deg + 1)) else {
                continue;
            };
            let mut entries = Vec::new();
            for (col, w) in v.iter().enumerate() {
                for (m, c) in pres.d_word(w).terms() {
                    if pres.word_weight(m) < w_min {
                        continue;
                    }
                    let row = *lookup.get(m).expect("d stays inside the truncation");
                    entries.push((row, col, c.clone()));
                }
            }
            diffs.insert(*deg, Matrix::assemble(f, next.len(), v.len(), entries));
        }
        let complex = Complex::assemble(f, basis, diffs)?;
        Ok(Truncation {
            pres: pres.clone(),
            w_min,
            w_max,
            lo,
            hi,
            words,
            lookup,
            complex,
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn w_max(&self) -> i32 {
        self.w_max
    }

    pub fn w_min(&self) -> i32 {
        self.w_min
    }

    pub fn degree_range(&self) -> (i32, i32) {
        (self.lo, self.hi)
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    /// Basis words of a degree (including the helper degrees `lo−1` and `hi+1`).
    pub fn basis(&self, deg: i32) -> &[Word] {
        self.words.get(&deg).map_or(&[], Vec::as_slice)
    }

    pub fn dim(&self, deg: i32) -> usize {
        self.basis(deg).len()
    }

    /// Coordinates of a homogeneous polynomial lying in the truncation.
    pub fn vector(&self, p: &Poly) -> Result<(i32, SparseRow)> {
        let deg = self
            .pres
            .poly_degree(p)
            .unwrap_or(self.lo);
        if !self.pres.is_homogeneous(p) {
            return Err(Error::Precondition("polynomial is not homogeneous".into()));
        }
        let mut row: SparseRow = Vec::with_capacity(p.len());
        for (w, c) in p.terms() {
            let k = self
                .lookup
                .get(w)
                .ok_or_else(|| {
                    Error::Precondition(format!(
                        "word {} lies outside the truncation",
                        self.pres.format_word(w)
                    ))
                })?;
            row.push((*k, c.clone()));
        }
        row.sort_by_key(|(k, _)| *k);
        Ok((deg, row))
    }

    pub fn poly(&self, deg: i32, v: &SparseRow) -> Poly {
        let f = self.pres.field();
        let mut out = Poly::zero();
        for (k, c) in v {
            out.add_term(f, self.basis(deg)[*k].clone(), c);
        }
        out
    }

    pub fn cohomology_at(&self, deg: i32) -> CohomologyDegree {
        cohomology_at(&self.complex, deg)
    }

    /// Cohomology in every degree of the requested range.
    pub fn cohomology(&self) -> BTreeMap<i32, CohomologyDegree> {
        (self.lo..=self.hi).map(|i| (i, self.cohomology_at(i))).collect()
    }

    /// Representative cocycles of `H^deg` as polynomials.
    pub fn representatives(&self, deg: i32) -> Vec<Poly> {
        self.cohomology_at(deg)
            .representatives()
            .iter()
            .map(|v| self.poly(deg, v))
            .collect()
    }

    /// Whether a homogeneous cocycle has a nonzero class here.
    pub fn is_nonzero_class(&self, p: &Poly) -> Result<bool> {
        if p.is_zero() {
            return Ok(false);
        }
        let (deg, v) = self.vector(p)?;
        let h = self.cohomology_at(deg);
        let coords = h
            .coordinates(v)
            .ok_or_else(|| Error::Precondition("polynomial is not a cocycle".into()))?;
        Ok(coords.iter().any(|c| !c.is_zero()))
    }

    /// Inclusion `F_{≤w} → F_{≤w′}` for the same presentation and degree range.
    pub fn inclusion_into(&self, bigger: &Truncation) -> Result<ChainMap> {
        if bigger.pres != self.pres || bigger.lo != self.lo || bigger.hi != self.hi {
            return Err(Error::Precondition("inclusion needs one presentation and degree range".into()));
        }
        if bigger.w_min > self.w_min || bigger.w_max < self.w_max {
            return Err(Error::Precondition("target truncation is smaller".into()));
        }
        let f = self.pres.field();
        let blocks = self
            .words
            .iter()
            .map(|(deg, v)| {
                let entries = v
                    .iter()
                    .enumerate()
                    .map(|(k, w)| (bigger.lookup[w], k, f.int(1)))
                    .collect::<Vec<_>>();
                (*deg, Matrix::assemble(f, bigger.dim(*deg), v.len(), entries))
            })
            .collect();
        ChainMap::new(self.complex.clone(), bigger.complex.clone(), 0, blocks)
    }

    /// Exact per-weight cohomology dimensions for weights `1 ..= w_max` (plus
    /// the unit in weight 0). Needs a weight-homogeneous differential.
    pub fn cohomology_by_weight(&self, cap: usize) -> Result<Vec<WeightPiece>> {
        let mut out = Vec::new();
        for w in 0..=self.w_max {
            let piece = Truncation::weight_piece(&self.pres, w, self.lo, self.hi, cap)?;
            for deg in self.lo..=self.hi {
                let dim = piece.cohomology_at(deg).dim();
                if dim > 0 {
                    out.push(WeightPiece { weight: w, degree: deg, dim });
                }
            }
        }
        Ok(out)
    }
}
