use std::collections::BTreeMap;

use super::{Poly, Presentation, Truncation, Word};
use crate::complexes::ChainMap;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Algebra map determined by generator images, commuting with `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgaMorphism {
    source: Presentation,
    target: Presentation,
    images: Vec<Poly>,
}

/// Validated morphism; generators without an image map to zero.
pub fn make_morphism(
    source: &Presentation,
    target: &Presentation,
    images: BTreeMap<String, Poly>,
) -> Result<DgaMorphism> {
    source.field().ensure_same(&target.field())?;
    let mut imgs = vec![Poly::zero(); source.generators().len()];
    for (name, p) in images {
        let k = source
            .generator(&name)
            .ok_or_else(|| Error::Presentation(format!("image given for unknown generator {name}")))?;
        imgs[k as usize] = target.normalize(&p);
    }
    let m = DgaMorphism {
        source: source.clone(),
        target: target.clone(),
        images: imgs,
    };
    m.validate()?;
    Ok(m)
}

impl DgaMorphism {
    fn validate(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        for (k, g) in s.generators().iter().enumerate() {
            let img = &self.images[k];
            for w in img.terms().keys() {
                if t.word_degree(w) != g.degree {
                    return Err(Error::Morphism {
                        generator: g.name.clone(),
                        detail: format!("image term {} has degree {}", t.format_word(w), t.word_degree(w)),
                    });
                }
                if (t.word_weight(w) - g.weight).rem_euclid(2) != 0 {
                    return Err(Error::Morphism {
                        generator: g.name.clone(),
                        detail: format!("image term {} changes weight parity", t.format_word(w)),
                    });
                }
            }
            let lhs = t.d_poly(img);
            let rhs = self.apply(s.d_of(k as u32));
            if lhs != rhs {
                return Err(Error::Morphism {
                    generator: g.name.clone(),
                    detail: format!(
                        "d(f {}) = {} but f(d {}) = {}",
                        g.name,
                        t.format_poly(&lhs),
                        g.name,
                        t.format_poly(&rhs)
                    ),
                });
            }
        }
        Ok(())
    }

    pub fn identity(p: &Presentation) -> DgaMorphism {
        let images = (0..p.generators().len() as u32)
            .map(|g| Poly::word(vec![g], p.field()))
            .collect();
        DgaMorphism {
            source: p.clone(),
            target: p.clone(),
            images,
        }
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn target(&self) -> &Presentation {
        &self.target
    }

    pub fn image(&self, name: &str) -> Option<&Poly> {
        self.source.generator(name).map(|k| &self.images[k as usize])
    }

    /// Generator name → printed image.
    pub fn table(&self) -> BTreeMap<String, String> {
        self.source
            .generators()
            .iter()
            .zip(&self.images)
            .map(|(g, p)| (g.name.clone(), self.target.format_poly(p)))
            .collect()
    }

    pub fn apply_word(&self, w: &[u32]) -> Poly {
        let f = self.target.field();
        let mut acc = Poly::one(f);
        for &g in w {
            acc = self.target.multiply(&acc, &self.images[g as usize]);
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    pub fn apply(&self, p: &Poly) -> Poly {
        let f = self.target.field();
        let mut out = Poly::zero();
        for (w, c) in p.terms() {
            out = out.add(f, &self.apply_word(w).scale(f, c));
        }
        out
    }

    /// `self ∘ g`.
    pub fn after(&self, g: &DgaMorphism) -> Result<DgaMorphism> {
        if g.target != self.source {
            return Err(Error::Presentation("morphisms are not composable".into()));
        }
        let images = g.images.iter().map(|p| self.apply(p)).collect();
        Ok(DgaMorphism {
            source: g.source.clone(),
            target: self.target.clone(),
            images,
        })
    }

    /// No image term is heavier than its generator.
    pub fn is_weight_nonincreasing(&self) -> bool {
        self.source.generators().iter().zip(&self.images).all(|(g, p)| {
            p.terms().keys().all(|w| self.target.word_weight(w) <= g.weight)
        })
    }

    /// Induced chain map between truncations with the same degree range.
    pub fn on_truncations(&self, src: &Truncation, tgt: &Truncation) -> Result<ChainMap> {
        if !self.is_weight_nonincreasing() {
            return Err(Error::Precondition("morphism raises weight".into()));
        }
        if src.degree_range() != tgt.degree_range() || src.w_max() > tgt.w_max() {
            return Err(Error::Precondition("truncations are not compatible".into()));
        }
        let f = self.target.field();
        let (lo, hi) = src.degree_range();
        let mut blocks = BTreeMap::new();
        for deg in lo - 1..=hi + 1 {
            let mut entries = Vec::new();
            for (col, w) in src.basis(deg).iter().enumerate() {
                let img = self.apply_word(w);
                if img.is_zero() {
                    continue;
                }
                let (_, v) = tgt.vector(&img)?;
                for (row, c) in v {
                    entries.push((row, col, c));
                }
            }
            blocks.insert(deg, Matrix::assemble(f, tgt.dim(deg), src.dim(deg), entries));
        }
        ChainMap::new(src.complex().clone(), tgt.complex().clone(), 0, blocks)
    }
}

/// Result of pushing a cycle through a morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushedClass {
    pub image: Poly,
    pub nonzero: bool,
    /// True when the verdict holds in the whole algebra, not just the truncation.
    pub definitive: bool,
}

fn split_by_weight(p: &Presentation, poly: &Poly) -> BTreeMap<i32, Poly> {
    let mut out: BTreeMap<i32, Poly> = BTreeMap::new();
    for (w, c) in poly.terms() {
        out.entry(p.word_weight(w))
            .or_default()
            .add_term(p.field(), Word::clone(w), c);
    }
    out
}

/// Pushes a cycle forward and tests its class in the target.
pub fn push_class(m: &DgaMorphism, cycle: &Poly, w_max: i32, cap: usize) -> Result<PushedClass> {
    let (s, t) = (&m.source, &m.target);
    if !s.is_homogeneous(cycle) {
        return Err(Error::Precondition("cycle is not homogeneous".into()));
    }
    if !s.d_poly(cycle).is_zero() {
        return Err(Error::Precondition(format!("{} is not a cycle", s.format_poly(cycle))));
    }
    let image = m.apply(cycle);
    let Some(deg) = t.poly_degree(&image) else {
        return Ok(PushedClass {
            image,
            nonzero: false,
            definitive: true,
        });
    };
    if t.is_weight_homogeneous() {
        for (w, part) in split_by_weight(t, &image) {
            let piece = Truncation::weight_piece(t, w, deg, deg, cap)?;
            if piece.is_nonzero_class(&part)? {
                return Ok(PushedClass {
                    image,
                    nonzero: true,
                    definitive: true,
                });
            }
        }
        return Ok(PushedClass {
            image,
            nonzero: false,
            definitive: true,
        });
    }
    let heaviest = image.terms().keys().map(|w| t.word_weight(w)).max().unwrap_or(0);
    let tr = Truncation::new(t, w_max.max(heaviest), deg, deg, cap)?;
    let nonzero = tr.is_nonzero_class(&image)?;
    Ok(PushedClass {
        image,
        nonzero,
        definitive: !nonzero,
    })
}
