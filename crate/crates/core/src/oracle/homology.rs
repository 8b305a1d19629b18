//! Multigraded Betti numbers from upper Koszul simplicial complexes.
//!
//! For a monomial ideal `I` and a multidegree `α`, the complex
//! `K^α = {squarefree τ ≤ α : x^{α−τ} ∈ I}` satisfies
//! `β_{i,α}(I) = dim H̃_{i−1}(K^α)`. Only multidegrees in the lcm lattice of
//! the generators can carry Betti numbers, so those are the only strands
//! visited. Ranks are taken over GF(2) and GF(2³¹−1) and must agree;
//! optionally over the rationals as well.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ideal::Monomial;

pub const MAX_BETTI_GENERATORS: usize = 64;
pub const MAX_BETTI_VARS: usize = 16;
pub const MAX_LCM_LATTICE: usize = 1 << 18;

const MERSENNE_31: u64 = (1 << 31) - 1;

#[derive(Clone, Copy, Debug, Default)]
pub struct BettiOptions {
    /// Also compute every rank over ℚ (exact, slow).
    pub rational: bool,
}

/// Graded Betti numbers `β_{i,d}` of an ideal (homological index `i`
/// counted from the generators, `i = 0`).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedBetti {
    numvars: usize,
    entries: BTreeMap<(usize, u32), u64>,
}

impl GradedBetti {
    pub fn numvars(&self) -> usize {
        self.numvars
    }

    /// Nonzero `((i, d), β_{i,d})` pairs of the ideal.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, u32), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn get(&self, i: usize, d: u32) -> u64 {
        self.entries.get(&(i, d)).copied().unwrap_or(0)
    }

    /// Total Betti numbers of `S/I`: `β_0 = 1`, `β_i(S/I) = β_{i−1}(I)`.
    pub fn quotient_totals(&self) -> Vec<u64> {
        let top = self.entries.keys().map(|&(i, _)| i + 1).max().unwrap_or(0);
        let mut out = vec![0u64; top + 1];
        out[0] = 1;
        for (&(i, _), &b) in &self.entries {
            out[i + 1] += b;
        }
        out
    }

    /// `projdim S/I`.
    pub fn quotient_projdim(&self) -> usize {
        self.quotient_totals().len() - 1
    }

    /// True when every `β_{i,d}` of the ideal sits at `d = generator_degree + i`.
    pub fn is_linear(&self, generator_degree: u32) -> bool {
        self.entries
            .keys()
            .all(|&(i, d)| d == generator_degree + i as u32)
    }
}

pub fn betti_bruteforce(generators: &[Monomial], numvars: usize) -> Result<GradedBetti> {
    betti_bruteforce_with(generators, numvars, BettiOptions::default())
}

pub fn betti_bruteforce_with(
    generators: &[Monomial],
    numvars: usize,
    options: BettiOptions,
) -> Result<GradedBetti> {
    if generators.len() > MAX_BETTI_GENERATORS {
        return Err(Error::scale(
            "Betti oracle generator count",
            generators.len(),
            MAX_BETTI_GENERATORS,
        ));
    }
    if numvars > MAX_BETTI_VARS {
        return Err(Error::scale(
            "Betti oracle variable count",
            numvars,
            MAX_BETTI_VARS,
        ));
    }
    if let Some(bad) = generators.iter().find(|g| g.arity() != numvars) {
        return Err(Error::Arity {
            expected: numvars,
            got: bad.arity(),
        });
    }
    let gens = crate::ideal::minimal_elements(generators.iter().cloned());
    let mut betti = GradedBetti {
        numvars,
        entries: BTreeMap::new(),
    };
    if gens.is_empty() {
        return Ok(betti);
    }
    for alpha in lcm_lattice(&gens)? {
        let ranks = strand_homology(&gens, &alpha, options)?;
        for (i, &h) in ranks.iter().enumerate() {
            if h > 0 {
                *betti.entries.entry((i, alpha.degree())).or_insert(0) += h;
            }
        }
    }
    Ok(betti)
}

/// `numvars − projdim S/I`, i.e. depth by Auslander–Buchsbaum.
pub fn depth_bruteforce(generators: &[Monomial], numvars: usize) -> Result<usize> {
    let betti = betti_bruteforce(generators, numvars)?;
    Ok(numvars - betti.quotient_projdim())
}

fn lcm_lattice(gens: &[Monomial]) -> Result<Vec<Monomial>> {
    let mut seen: HashSet<Monomial> = gens.iter().cloned().collect();
    let mut frontier: Vec<Monomial> = gens.to_vec();
    while let Some(e) = frontier.pop() {
        for g in gens {
            let l = e.lcm(g);
            if seen.insert(l.clone()) {
                if seen.len() > MAX_LCM_LATTICE {
                    return Err(Error::scale(
                        "lcm lattice size",
                        seen.len(),
                        MAX_LCM_LATTICE,
                    ));
                }
                frontier.push(l);
            }
        }
    }
    let mut all: Vec<Monomial> = seen.into_iter().collect();
    all.sort();
    Ok(all)
}

/// `dim H̃_{s−1}(K^α)` for `s = 0, 1, …`; entry `s` is `β_{s,α}`.
fn strand_homology(gens: &[Monomial], alpha: &Monomial, options: BettiOptions) -> Result<Vec<u64>> {
    let support: Vec<usize> = alpha.support().collect();
    let in_ideal = |m: &Monomial| gens.iter().any(|g| g.divides(m));

    // faces of K^α as masks over `support`, bucketed by cardinality
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); support.len() + 1];
    for tau in 0u32..(1u32 << support.len()) {
        let mut e = alpha.exponents().to_vec();
        for (k, &var) in support.iter().enumerate() {
            if tau & (1 << k) != 0 {
                e[var] -= 1;
            }
        }
        if in_ideal(&Monomial::new(e)) {
            by_size[tau.count_ones() as usize].push(tau);
        }
    }
    if by_size[0].is_empty() {
        return Ok(Vec::new());
    }
    while by_size.last().is_some_and(|v| v.is_empty()) {
        by_size.pop();
    }

    // rank of ∂_s : C_s → C_{s−1}, for s = 1..=top; rank ∂_0 = 0
    let top = by_size.len() - 1;
    let mut ranks = vec![0u64; top + 2];
    for s in 1..=top {
        let boundary = Boundary::new(&by_size[s], &by_size[s - 1]);
        let r2 = boundary.rank_gf2();
        let rp = boundary.rank_mod_p(MERSENNE_31);
        if r2 != rp {
            return Err(disagreement(alpha, s, &[("GF(2)", r2), ("GF(p)", rp)]));
        }
        if options.rational {
            let rq = boundary.rank_rational();
            if rq != r2 {
                return Err(disagreement(
                    alpha,
                    s,
                    &[("GF(2)", r2), ("GF(p)", rp), ("Q", rq)],
                ));
            }
        }
        ranks[s] = r2;
    }
    Ok((0..=top)
        .map(|s| by_size[s].len() as u64 - ranks[s] - ranks[s + 1])
        .collect())
}

fn disagreement(alpha: &Monomial, size: usize, ranks: &[(&str, u64)]) -> Error {
    let detail = ranks
        .iter()
        .map(|(f, r)| format!("{f} rank {r}"))
        .collect::<Vec<_>>()
        .join(", ");
    Error::FieldDisagreement {
        multidegree: format!("{alpha} (boundary from size {size})"),
        detail,
    }
}

/// Sparse boundary map: each row is a face, entries are `(column, ±1)`.
struct Boundary {
    rows: Vec<Vec<(usize, i64)>>,
    cols: usize,
}

impl Boundary {
    fn new(faces: &[u32], facets_below: &[u32]) -> Self {
        let index: HashMap<u32, usize> = facets_below
            .iter()
            .enumerate()
            .map(|(k, &m)| (m, k))
            .collect();
        let rows = faces
            .iter()
            .map(|&tau| {
                let mut row = Vec::new();
                let mut bits = tau;
                let mut position = 0;
                while bits != 0 {
                    let bit = bits & bits.wrapping_neg();
                    bits ^= bit;
                    let sign = if position % 2 == 0 { 1 } else { -1 };
                    row.push((index[&(tau ^ bit)], sign));
                    position += 1;
                }
                row
            })
            .collect();
        Boundary {
            rows,
            cols: facets_below.len(),
        }
    }

    fn rank_gf2(&self) -> u64 {
        let words = self.cols.div_ceil(64);
        let mut rows: Vec<Vec<u64>> = self
            .rows
            .iter()
            .map(|r| {
                let mut w = vec![0u64; words];
                for &(c, _) in r {
                    w[c / 64] ^= 1 << (c % 64);
                }
                w
            })
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let (word, bit) = (col / 64, 1u64 << (col % 64));
            let Some(p) = (rank..rows.len()).find(|&r| rows[r][word] & bit != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for row in rows[rank + 1..].iter_mut() {
                if row[word] & bit != 0 {
                    for (x, y) in row.iter_mut().zip(&pivot) {
                        *x ^= y;
                    }
                }
            }
            rank += 1;
        }
        rank as u64
    }

    fn rank_mod_p(&self, p: u64) -> u64 {
        let mut rows: Vec<Vec<u64>> = self
            .rows
            .iter()
            .map(|r| {
                let mut v = vec![0u64; self.cols];
                for &(c, s) in r {
                    v[c] = if s > 0 { 1 } else { p - 1 };
                }
                v
            })
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pr) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(rank, pr);
            let inv = pow_mod(rows[rank][col], p - 2, p);
            for x in rows[rank].iter_mut() {
                *x = *x * inv % p;
            }
            let pivot = rows[rank].clone();
            for row in rows[rank + 1..].iter_mut() {
                let f = row[col];
                if f != 0 {
                    for (x, &y) in row.iter_mut().zip(&pivot) {
                        *x = (*x + p - f * y % p) % p;
                    }
                }
            }
            rank += 1;
        }
        rank as u64
    }

    // Fraction-free (Bareiss) elimination over the integers.
    fn rank_rational(&self) -> u64 {
        let mut m: Vec<Vec<BigInt>> = self
            .rows
            .iter()
            .map(|r| {
                let mut v = vec![BigInt::zero(); self.cols];
                for &(c, s) in r {
                    v[c] = BigInt::from(s);
                }
                v
            })
            .collect();
        let mut rank = 0;
        let mut prev = BigInt::one();
        for col in 0..self.cols {
            let Some(pr) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, pr);
            for r in rank + 1..m.len() {
                for c in col + 1..self.cols {
                    let v = (&m[r][c] * &m[rank][col] - &m[r][col] * &m[rank][c]) / &prev;
                    m[r][c] = v;
                }
                m[r][col] = BigInt::zero();
            }
            prev = m[rank][col].clone();
            rank += 1;
        }
        rank as u64
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    // L(I) written over the polarized variables (x1_1, x1_2, …, x2_1, …).
    fn l_square() -> Vec<Monomial> {
        vec![
            m(&[1, 0, 1, 0]),
            m(&[1, 0, 0, 1]),
            m(&[0, 1, 1, 0]),
            m(&[0, 1, 0, 1]),
        ]
    }

    fn l_mixed() -> Vec<Monomial> {
        // φ(1), φ(y), φ(y²), φ(x), φ(x²) over x1_1..x1_3, x2_1..x2_3
        vec![
            m(&[1, 0, 0, 1, 0, 0]),
            m(&[1, 0, 0, 0, 1, 0]),
            m(&[1, 0, 0, 0, 0, 1]),
            m(&[0, 1, 0, 1, 0, 0]),
            m(&[0, 0, 1, 1, 0, 0]),
        ]
    }

    #[test]
    fn principal_ideal() {
        let b = betti_bruteforce(&[m(&[1, 1])], 2).unwrap();
        assert_eq!(b.entries().collect::<Vec<_>>(), vec![((0, 2), 1)]);
        assert_eq!(b.quotient_totals(), vec![1, 1]);
        assert_eq!(depth_bruteforce(&[m(&[1, 1])], 2).unwrap(), 1);
    }

    #[test]
    fn square_l_ideal() {
        let b = betti_bruteforce(&l_square(), 4).unwrap();
        assert_eq!(b.quotient_totals(), vec![1, 4, 4, 1]);
        assert_eq!(b.get(0, 2), 4);
        assert_eq!(b.get(1, 3), 4);
        assert_eq!(b.get(2, 4), 1);
        assert!(b.is_linear(2));
        assert_eq!(depth_bruteforce(&l_square(), 4).unwrap(), 1);
    }

    #[test]
    fn mixed_l_ideal() {
        let b = betti_bruteforce(&l_mixed(), 6).unwrap();
        assert_eq!(b.quotient_totals(), vec![1, 5, 6, 2]);
        assert!(b.is_linear(2));
    }

    #[test]
    fn koszul_complex_of_variables() {
        // (x, y, z): β_i(S/I) = C(3, i)
        let b = betti_bruteforce(&[m(&[1, 0, 0]), m(&[0, 1, 0]), m(&[0, 0, 1])], 3).unwrap();
        assert_eq!(b.quotient_totals(), vec![1, 3, 3, 1]);
    }

    #[test]
    fn nonlinear_example() {
        // (x², xy, y³) in two variables: β(S/I) = (1, 3, 2), second syzygies in degrees 3 and 4
        let b = betti_bruteforce(&[m(&[2, 0]), m(&[1, 1]), m(&[0, 3])], 2).unwrap();
        assert_eq!(b.quotient_totals(), vec![1, 3, 2]);
        assert_eq!(b.get(1, 3), 1);
        assert_eq!(b.get(1, 4), 1);
        assert!(!b.is_linear(2));
    }

    #[test]
    fn rational_ranks_agree() {
        let opts = BettiOptions { rational: true };
        let b = betti_bruteforce_with(&l_mixed(), 6, opts).unwrap();
        assert_eq!(b, betti_bruteforce(&l_mixed(), 6).unwrap());
    }

    #[test]
    fn torsion_shows_up_as_field_disagreement() {
        // The 6-vertex triangulation of RP² has H₁ = Z/2. Its Stanley–Reisner
        // ideal has a Betti number that depends on the characteristic.
        let faces: [[usize; 3]; 10] = [
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 4, 5],
            [0, 1, 5],
            [1, 2, 4],
            [2, 3, 5],
            [1, 3, 4],
            [2, 4, 5],
            [1, 3, 5],
        ];
        let mut non_faces = Vec::new();
        for a in 0..6 {
            for b in a + 1..6 {
                for c in b + 1..6 {
                    let mut t = [a, b, c];
                    t.sort();
                    if !faces.contains(&t) {
                        let mut e = vec![0u32; 6];
                        for v in t {
                            e[v] = 1;
                        }
                        non_faces.push(Monomial::new(e));
                    }
                }
            }
        }
        let err = betti_bruteforce(&non_faces, 6).unwrap_err();
        assert!(matches!(err, Error::FieldDisagreement { .. }), "{err}");
    }

    #[test]
    fn scale_limits() {
        let many: Vec<Monomial> = (0..17).map(|i| Monomial::pure_power(17, i, 1)).collect();
        assert!(betti_bruteforce(&many, 17).unwrap_err().is_scale());
    }
}
