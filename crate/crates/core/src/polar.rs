//! Polarization and the simplicial complexes built from it.
//!
//! The polarized ring has variables `x_{i,j}` with `1 ≤ j ≤ b_i`; a
//! squarefree monomial there is a [`Face`]. `Δ(I)` is the complex whose
//! Stanley–Reisner ideal is the polarization of `I`. Its facets are the
//! complements of the primes `φ(u)`, one for each standard monomial `u`.
//! The whisker-type complex `Θ(I)` is the complex whose facet list is
//! [`polarize`]; it gets no type of its own.

use std::collections::HashSet;
use std::fmt;

use serde::ser::{Serialize, SerializeTuple, Serializer};

use crate::error::{Error, Result};
use crate::ideal::{ArtinianContext, Monomial, MonomialIdeal};

/// Largest number of faces enumerated for the Euler characteristic.
pub const MAX_FACE_COUNT: usize = 1 << 20;

/// The polarized variable `x_{var+1, level}`. `var` is 0-based, `level` is
/// 1-based, matching how the variable is printed.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PolarVar {
    pub var: usize,
    pub level: u32,
}

impl PolarVar {
    pub fn new(var: usize, level: u32) -> Self {
        PolarVar { var, level }
    }
}

impl fmt::Display for PolarVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}_{}", self.var + 1, self.level)
    }
}

impl Serialize for PolarVar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&(self.var + 1))?;
        t.serialize_element(&self.level)?;
        t.end()
    }
}

/// A set of polarized variables, kept sorted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Face(Vec<PolarVar>);

impl Serialize for Face {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl Face {
    pub fn new(members: impl IntoIterator<Item = PolarVar>) -> Self {
        let mut v: Vec<PolarVar> = members.into_iter().collect();
        v.sort();
        v.dedup();
        Face(v)
    }

    pub fn empty() -> Self {
        Face(Vec::new())
    }

    pub fn members(&self) -> &[PolarVar] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: &PolarVar) -> bool {
        self.0.binary_search(v).is_ok()
    }

    pub fn is_subset(&self, other: &Face) -> bool {
        self.0.iter().all(|v| other.contains(v))
    }

    pub fn difference(&self, other: &Face) -> Face {
        Face(
            self.0
                .iter()
                .filter(|v| !other.contains(v))
                .copied()
                .collect(),
        )
    }

    pub fn intersection(&self, other: &Face) -> Face {
        Face(
            self.0
                .iter()
                .filter(|v| other.contains(v))
                .copied()
                .collect(),
        )
    }

    pub fn with(&self, v: PolarVar) -> Face {
        Face::new(self.0.iter().copied().chain(std::iter::once(v)))
    }

    pub fn without(&self, v: &PolarVar) -> Face {
        Face(self.0.iter().filter(|w| *w != v).copied().collect())
    }

    pub fn map(&self, f: impl Fn(PolarVar) -> PolarVar) -> Face {
        Face::new(self.0.iter().map(|&v| f(v)))
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// Inclusion-maximal elements, sorted and deduplicated.
pub fn maximal_faces(faces: impl IntoIterator<Item = Face>) -> Vec<Face> {
    let mut all: Vec<Face> = faces.into_iter().collect();
    all.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    all.dedup();
    let mut kept: Vec<Face> = Vec::new();
    for f in all {
        if !kept.iter().any(|k| f.is_subset(k)) {
            kept.push(f);
        }
    }
    kept.sort();
    kept
}

/// A simplicial complex given by its facets over an explicit vertex set.
///
/// The vertex set may contain vertices that lie in no facet; comparisons
/// between complexes built on different ambient sets should go through
/// [`SimplicialComplex::facets`].
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub struct SimplicialComplex {
    vertices: Vec<PolarVar>,
    facets: Vec<Face>,
}

impl SimplicialComplex {
    /// Keeps the maximal faces; the vertex set is widened to cover them.
    pub fn new(
        vertices: impl IntoIterator<Item = PolarVar>,
        faces: impl IntoIterator<Item = Face>,
    ) -> Self {
        let facets = maximal_faces(faces);
        let mut vertices: Vec<PolarVar> = vertices.into_iter().collect();
        vertices.extend(facets.iter().flat_map(|f| f.members().iter().copied()));
        vertices.sort();
        vertices.dedup();
        SimplicialComplex { vertices, facets }
    }

    pub fn vertices(&self) -> &[PolarVar] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn contains_face(&self, face: &Face) -> bool {
        self.facets.iter().any(|f| face.is_subset(f))
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    pub fn link(&self, v: &PolarVar) -> SimplicialComplex {
        let faces = self
            .facets
            .iter()
            .filter(|f| f.contains(v))
            .map(|f| f.without(v));
        SimplicialComplex::new(self.vertices.iter().copied().filter(|w| w != v), faces)
    }

    pub fn deletion(&self, v: &PolarVar) -> SimplicialComplex {
        let faces = self.facets.iter().map(|f| f.without(v));
        SimplicialComplex::new(self.vertices.iter().copied().filter(|w| w != v), faces)
    }

    /// `(link, deletion)` of `v`.
    pub fn link_and_deletion(&self, v: &PolarVar) -> (SimplicialComplex, SimplicialComplex) {
        (self.link(v), self.deletion(v))
    }

    pub fn cone(&self, apex: PolarVar) -> Result<SimplicialComplex> {
        if self.vertices.contains(&apex) {
            return Err(Error::ConeVertexPresent {
                vertex: apex.to_string(),
            });
        }
        let faces = self.facets.iter().map(|f| f.with(apex));
        Ok(SimplicialComplex::new(
            self.vertices.iter().copied().chain(std::iter::once(apex)),
            faces,
        ))
    }

    pub fn relabel(&self, f: impl Fn(PolarVar) -> PolarVar) -> SimplicialComplex {
        SimplicialComplex::new(
            self.vertices.iter().map(|&v| f(v)),
            self.facets.iter().map(|face| face.map(&f)),
        )
    }

    /// `χ̃ = Σ_F (−1)^{|F|−1}` over all faces, the empty face included.
    pub fn reduced_euler_characteristic(&self) -> Result<i64> {
        let support: Vec<PolarVar> = {
            let mut s: Vec<PolarVar> = self
                .facets
                .iter()
                .flat_map(|f| f.members().to_vec())
                .collect();
            s.sort();
            s.dedup();
            s
        };
        if self.facets.is_empty() {
            return Ok(0);
        }
        if support.len() > 64 {
            return Err(Error::scale("complex vertex count", support.len(), 64));
        }
        let mask_of = |f: &Face| {
            f.members().iter().fold(0u64, |m, v| {
                m | 1u64 << support.binary_search(v).expect("vertex in support")
            })
        };
        let mut seen: HashSet<u64> = HashSet::new();
        let mut stack: Vec<u64> = self.facets.iter().map(mask_of).collect();
        while let Some(m) = stack.pop() {
            if !seen.insert(m) {
                continue;
            }
            if seen.len() > MAX_FACE_COUNT {
                return Err(Error::scale("face count", seen.len(), MAX_FACE_COUNT));
            }
            let mut rest = m;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                rest ^= bit;
                let sub = m ^ bit;
                if !seen.contains(&sub) {
                    stack.push(sub);
                }
            }
        }
        Ok(seen
            .iter()
            .map(|m| if m.count_ones() % 2 == 1 { 1 } else { -1 })
            .sum())
    }
}

pub fn reduced_euler_characteristic(cplx: &SimplicialComplex) -> Result<i64> {
    cplx.reduced_euler_characteristic()
}

/// The polarization of `x^c` as a face: `{x_{i,j} : 1 ≤ j ≤ c_i}`.
pub fn polarize_monomial(m: &Monomial) -> Face {
    Face::new(
        m.exponents()
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| (1..=c).map(move |j| PolarVar::new(i, j))),
    )
}

/// Squarefree generators of the polarized ideal, which are also the facets of `Θ(I)`.
pub fn polarize(ideal: &MonomialIdeal) -> Vec<Face> {
    let mut faces: Vec<Face> = ideal.generators().iter().map(polarize_monomial).collect();
    faces.sort();
    faces
}

/// `Θ(I)`: the complex whose facet ideal is the polarization of `I`.
pub fn theta_complex(ctx: &ArtinianContext) -> SimplicialComplex {
    SimplicialComplex::new(polar_vertices(ctx), polarize(ctx.ideal()))
}

/// All polarized variables of the context, in `(i, j)` order.
pub fn polar_vertices(ctx: &ArtinianContext) -> Vec<PolarVar> {
    ctx.bounds()
        .iter()
        .enumerate()
        .flat_map(|(i, &b)| (1..=b).map(move |j| PolarVar::new(i, j)))
        .collect()
}

/// `φ(u) = {x_{i, a_i + 1}}` for a standard monomial `u`.
pub fn phi(ctx: &ArtinianContext, u: &Monomial) -> Result<Face> {
    if !ctx.is_standard(u) {
        return Err(Error::NotStandard {
            monomial: u.to_string(),
        });
    }
    Ok(phi_unchecked(u))
}

pub(crate) fn phi_unchecked(u: &Monomial) -> Face {
    Face(
        u.exponents()
            .iter()
            .enumerate()
            .map(|(i, &a)| PolarVar::new(i, a + 1))
            .collect(),
    )
}

/// Minimal primes of the polarized ideal, as variable sets.
pub fn minimal_primes(ctx: &ArtinianContext) -> Vec<Face> {
    let mut primes: Vec<Face> = ctx.standard().iter().map(phi_unchecked).collect();
    primes.sort();
    primes
}

/// `Δ(I)` with facets `𝒮 ∖ φ(u)`.
pub fn delta_facets(ctx: &ArtinianContext) -> SimplicialComplex {
    let all = Face::new(polar_vertices(ctx));
    let facets = ctx
        .standard()
        .iter()
        .map(|u| all.difference(&phi_unchecked(u)));
    SimplicialComplex::new(all.members().iter().copied(), facets)
}

/// Facet complements; for `Δ(I)` these are the generators of `L(I)`.
pub fn alexander_dual_generators(cplx: &SimplicialComplex) -> Vec<Face> {
    let all = Face::new(cplx.vertices().iter().copied());
    let mut gens: Vec<Face> = cplx.facets().iter().map(|f| all.difference(f)).collect();
    gens.sort();
    gens
}

/// The face as an exponent vector over the polarized ring of `ctx`.
pub fn face_to_monomial(ctx: &ArtinianContext, face: &Face) -> Monomial {
    let mut e = vec![0u32; ctx.polar_var_count()];
    for v in face.members() {
        e[ctx.polar_index(v.var, v.level)] += 1;
    }
    Monomial::new(e)
}

/// Polarized variable for a flat index of the polarized ring.
pub fn polar_var_at(ctx: &ArtinianContext, index: usize) -> PolarVar {
    let (var, level) = ctx.polar_from_index(index);
    PolarVar::new(var, level)
}
