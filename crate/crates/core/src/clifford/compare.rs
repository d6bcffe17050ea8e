use std::collections::BTreeMap;

use super::{derived_clifford, ClassicalClifford, CliffordPresentation};
use crate::complexes::{cohomology_at, CohomologyDegree};
use crate::dga::{make_dga, make_morphism, push_class, DgaMorphism, Generator, Poly, Presentation, PushedClass, Truncation};
use crate::error::{Error, Result};
use crate::linalg::{rank, Matrix, Scalar, SparseRow};
use crate::quadratic::QuadraticForm;

/// Both routes to `H⁰` of a derived Clifford algebra.
#[derive(Clone, Debug)]
pub struct H0Comparison {
    /// Classical Clifford algebra of `(H⁰C, H⁰q)`.
    pub classical: ClassicalClifford,
    /// Cocycles in `C⁰` representing the basis of `H⁰C`.
    pub representatives: Vec<SparseRow>,
    /// `dim H⁰(F_{≤w_max})`.
    pub dim: usize,
    pub w_max: i32,
    /// Whether the classes of `x_S` multiply by the classical table; `None`
    /// when `w_max < 2r` leaves products outside the truncation.
    pub structure: Option<bool>,
}

impl H0Comparison {
    pub fn classical_dim(&self) -> usize {
        self.classical.dim()
    }

    pub fn agree(&self) -> bool {
        self.dim == self.classical_dim() && self.structure != Some(false)
    }
}

fn class_coords(tr: &Truncation, h: &CohomologyDegree, p: &Poly) -> Result<Option<Vec<Scalar>>> {
    if p.is_zero() {
        return Ok(Some(vec![Scalar::zero(); h.dim()]));
    }
    let (deg, v) = tr.vector(p)?;
    if deg != h.degree {
        return Ok(None);
    }
    Ok(h.coordinates(v))
}

/// Whether the classes of `elems[S]` form a basis of `H⁰` of the truncation
/// and multiply by the structure constants of `cl`.
pub(crate) fn check_structure(tr: &Truncation, elems: &[Poly], cl: &ClassicalClifford) -> Result<bool> {
    let pres = tr.presentation();
    let f = pres.field();
    let h = tr.cohomology_at(0);
    if elems.len() != cl.dim() || h.dim() != cl.dim() {
        return Ok(false);
    }
    let mut coords = Vec::with_capacity(elems.len());
    for e in elems {
        match class_coords(tr, &h, e)? {
            Some(c) => coords.push(c),
            None => return Ok(false),
        }
    }
    let basis = Matrix::from_rows_shaped(f, coords.len(), h.dim(), coords.clone())?;
    if rank(&basis) != cl.dim() {
        return Ok(false);
    }
    for s in 0..elems.len() {
        for t in 0..elems.len() {
            let prod = pres.multiply(&elems[s], &elems[t]);
            let Some(lhs) = class_coords(tr, &h, &prod)? else {
                return Ok(false);
            };
            let mut rhs = vec![Scalar::zero(); h.dim()];
            for (u, c) in cl.mul_basis(s as u32, t as u32) {
                for (k, x) in coords[u as usize].iter().enumerate() {
                    rhs[k] = f.add(&rhs[k], &f.mul(&c, x));
                }
            }
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Ordered products `x_{v_{s₁}} ⋯ x_{v_{s_k}}` for every subset `S`.
pub(crate) fn pbw_elements(pres: &Presentation, gens: &[Poly]) -> Vec<Poly> {
    let f = pres.field();
    (0..1u32 << gens.len())
        .map(|s| {
            let mut acc = Poly::one(f);
            for (i, g) in gens.iter().enumerate() {
                if s & (1 << i) != 0 {
                    acc = pres.multiply(&acc, g);
                }
            }
            acc
        })
        .collect()
}

pub(crate) fn h0_data(q: &QuadraticForm) -> Result<(Vec<SparseRow>, ClassicalClifford)> {
    let c = q.carrier();
    if q.shift() != 0 {
        return Err(Error::Precondition(format!("H⁰ comparison needs shift 0, got {}", q.shift())));
    }
    if c.max_degree().is_some_and(|d| d > 0) {
        return Err(Error::Precondition("H⁰ comparison needs a connective complex".into()));
    }
    let f = q.field();
    let h = cohomology_at(c, 0);
    let reps = h.dense_representatives();
    let gram: Vec<Vec<Scalar>> = reps
        .iter()
        .map(|a| reps.iter().map(|b| q.pairing().eval(0, a, b)).collect())
        .collect();
    let gram = Matrix::from_rows_shaped(f, reps.len(), reps.len(), gram)?;
    Ok((h.representatives().to_vec(), ClassicalClifford::new(gram)?))
}

/// `H⁰` of `Cliff(C, q, 0)` via the classical algebra of `(H⁰C, H⁰q)`,
/// cross-checked against the weight truncation `F_{≤w_max}`.
pub fn h0_derived(q: &QuadraticForm, w_max: i32, cap: usize) -> Result<H0Comparison> {
    let (representatives, classical) = h0_data(q)?;
    let cl = derived_clifford(q)?;
    let tr = Truncation::new(cl.presentation(), w_max, 0, 0, cap)?;
    let dim = tr.cohomology_at(0).dim();
    let structure = if w_max >= 2 * classical.rank() as i32 {
        let gens: Vec<Poly> = representatives.iter().map(|v| cl.x_of(0, v)).collect();
        let elems = pbw_elements(cl.presentation(), &gens);
        Some(check_structure(&tr, &elems, &classical)?)
    } else {
        None
    };
    Ok(H0Comparison {
        classical,
        representatives,
        dim,
        w_max,
        structure,
    })
}

/// A cycle in degree −1 together with the evidence that its class is nonzero.
#[derive(Clone, Debug)]
pub struct HMinusOneCertificate {
    pub clifford: CliffordPresentation,
    pub cycle: Poly,
    pub weight: i32,
    /// Nonzero in the exact weight piece of the source.
    pub per_weight: bool,
    pub detection: DgaMorphism,
    pub pushed: PushedClass,
}

impl HMinusOneCertificate {
    pub fn cycle_text(&self) -> String {
        self.clifford.presentation().format_poly(&self.cycle)
    }

    pub fn nonzero(&self) -> bool {
        self.per_weight && self.pushed.nonzero && self.pushed.definitive
    }
}

/// For `q = 0` on `kʳ` in degree 0: `xy − yx` (r = 1) or `y₁₂ − y₂₁` (r ≥ 2)
/// with a detection morphism. `None` when no certificate is known.
pub fn h_minus_one_certificate(q: &QuadraticForm, w_max: i32, cap: usize) -> Result<Option<HMinusOneCertificate>> {
    let c = q.carrier();
    if q.shift() != 0 || c.degrees().iter().any(|&i| i != 0) {
        return Err(Error::Precondition("certificate needs a degree-0 space and shift 0".into()));
    }
    let r = c.total_dim();
    if r == 0 || !q.is_zero() {
        return Ok(None);
    }
    let cl = derived_clifford(q)?;
    let pres = cl.presentation();
    let f = pres.field();
    let (cycle, detection) = if r == 1 {
        (pres.parse_poly("x*y - y*x")?, DgaMorphism::identity(pres))
    } else {
        let mut cycle = Poly::word(vec![cl.y_generator(0, 1)], f);
        cycle.add_term(f, vec![cl.y_generator(1, 0)], &f.int(-1));
        let ys: Vec<&Generator> = (0..r)
            .flat_map(|a| (0..r).map(move |b| (a, b)))
            .map(|(a, b)| &pres.generators()[cl.y_generator(a, b) as usize])
            .collect();
        let target = make_dga(f, ys.iter().map(|g| (*g).clone()).collect(), BTreeMap::new())?;
        let images = ys
            .iter()
            .map(|g| (g.name.clone(), target.generator_poly(&g.name).expect("same names")))
            .collect();
        (cycle, make_morphism(pres, &target, images)?)
    };
    let weight = pres.word_weight(cycle.terms().keys().next().expect("nonzero cycle"));
    let piece = Truncation::weight_piece(pres, weight, -1, -1, cap)?;
    let per_weight = piece.is_nonzero_class(&cycle)?;
    let pushed = push_class(&detection, &cycle, w_max, cap)?;
    Ok(Some(HMinusOneCertificate {
        clifford: cl,
        cycle,
        weight,
        per_weight,
        detection,
        pushed,
    }))
}
