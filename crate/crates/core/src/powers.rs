//! Powers `L(I)^k`: generators in block form, their colon sets, the
//! q-invariant and the resulting depth profile.
//!
//! A generator of `L(I)^k` is stored as `n` ascending blocks of levels, block
//! `i` listing the `j` of every `x_{i,j}` factor with multiplicity. The total
//! order compares the concatenated blocks lexicographically, so the generator
//! with smaller levels at the first difference comes first.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::{ArtinianContext, Monomial};
use crate::polar::{Face, PolarVar};

/// Largest number of deduplicated generators of `L(I)^k`.
pub const MAX_POWER_GENERATORS: usize = 100_000;
/// Largest number of k-multisets of generators enumerated to build them.
pub const MAX_POWER_PRODUCTS: u128 = 5_000_000;
/// Up to this many k-multisets, `q_invariant` also takes the colon-set route.
pub const COLON_ROUTE_PRODUCTS: u128 = 50_000;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PowerGenerator {
    blocks: Vec<Vec<u32>>,
}

impl PowerGenerator {
    /// The product `φ(u_1)⋯φ(u_k)` of standard monomials.
    pub fn from_factors(ctx: &ArtinianContext, factors: &[Monomial]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::ZeroPower);
        }
        if let Some(u) = factors.iter().find(|u| !ctx.is_standard(u)) {
            return Err(Error::NotStandard {
                monomial: u.to_string(),
            });
        }
        Ok(Self::from_factors_unchecked(ctx.n(), factors.iter()))
    }

    fn from_factors_unchecked<'a>(n: usize, factors: impl Iterator<Item = &'a Monomial>) -> Self {
        let mut blocks = vec![Vec::new(); n];
        for u in factors {
            for (i, &a) in u.exponents().iter().enumerate() {
                blocks[i].push(a + 1);
            }
        }
        for b in &mut blocks {
            b.sort_unstable();
        }
        PowerGenerator { blocks }
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn k(&self) -> usize {
        self.blocks.first().map_or(0, Vec::len)
    }

    pub fn degree(&self) -> usize {
        self.blocks.len() * self.k()
    }

    pub fn multiplicities(&self) -> BTreeMap<PolarVar, u32> {
        let mut out = BTreeMap::new();
        for (i, block) in self.blocks.iter().enumerate() {
            for &j in block {
                *out.entry(PolarVar::new(i, j)).or_insert(0) += 1;
            }
        }
        out
    }

    /// Exponent vector over the polarized ring of `ctx`.
    pub fn to_monomial(&self, ctx: &ArtinianContext) -> Monomial {
        let mut e = vec![0u32; ctx.polar_var_count()];
        for (v, c) in self.multiplicities() {
            e[ctx.polar_index(v.var, v.level)] += c;
        }
        Monomial::new(e)
    }

    /// `c_i = last(block_i) − 1`, the exponents of the lcm of any factorization.
    pub fn lcm_exponents(&self) -> Vec<u32> {
        self.blocks
            .iter()
            .map(|b| b.last().copied().unwrap_or(1) - 1)
            .collect()
    }
}

impl fmt::Display for PowerGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (v, c)) in self.multiplicities().into_iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "{v}")?;
            if c > 1 {
                write!(f, "^{c}")?;
            }
        }
        Ok(())
    }
}

/// Number of k-multisets drawn from `l` items, saturating.
fn multiset_count(l: usize, k: usize) -> u128 {
    let mut acc: u128 = 1;
    for t in 0..k as u128 {
        acc = acc.saturating_mul(l as u128 + t) / (t + 1);
    }
    acc
}

/// All distinct generators of `L(I)^k`, in the block order.
pub fn power_generators(ctx: &ArtinianContext, k: usize) -> Result<Vec<PowerGenerator>> {
    if k == 0 {
        return Err(Error::ZeroPower);
    }
    let products = multiset_count(ctx.length(), k);
    if products > MAX_POWER_PRODUCTS {
        return Err(Error::scale(
            "generator products of L(I)^k",
            products,
            MAX_POWER_PRODUCTS,
        ));
    }
    let mut seen = BTreeSet::new();
    let mut picked: Vec<usize> = Vec::with_capacity(k);
    collect_products(ctx, k, 0, &mut picked, &mut seen)?;
    Ok(seen.into_iter().collect())
}

fn collect_products(
    ctx: &ArtinianContext,
    k: usize,
    start: usize,
    picked: &mut Vec<usize>,
    seen: &mut BTreeSet<PowerGenerator>,
) -> Result<()> {
    if picked.len() == k {
        let std = ctx.standard();
        seen.insert(PowerGenerator::from_factors_unchecked(
            ctx.n(),
            picked.iter().map(|&p| &std[p]),
        ));
        if seen.len() > MAX_POWER_GENERATORS {
            return Err(Error::scale(
                "generators of L(I)^k",
                seen.len(),
                MAX_POWER_GENERATORS,
            ));
        }
        return Ok(());
    }
    for p in start..ctx.length() {
        picked.push(p);
        collect_products(ctx, k, p, picked, seen)?;
        picked.pop();
    }
    Ok(())
}

/// `{x_{i,j} : 1 ≤ j ≤ last(block_i) − 1}`, the variables generating the
/// colon of the earlier generators by `g`.
pub fn power_colon_set(g: &PowerGenerator) -> Face {
    Face::new(
        g.lcm_exponents()
            .into_iter()
            .enumerate()
            .flat_map(|(i, c)| (1..=c).map(move |j| PolarVar::new(i, j))),
    )
}

/// `max deg lcm(u_1, …, u_k)` over standard monomials.
///
/// The lcm only depends on the per-variable champions, so it suffices to
/// search subsets of size at most `min(k, n)` of the maximal standard
/// monomials.
pub fn max_lcm_degree(ctx: &ArtinianContext, k: usize) -> Result<u32> {
    if k == 0 {
        return Err(Error::ZeroPower);
    }
    let n = ctx.n();
    let maximal: Vec<&Monomial> = ctx
        .standard()
        .iter()
        .filter(|u| (0..n).all(|i| !ctx.is_standard(&u.times_var(i))))
        .collect();
    let ceiling: u32 = ctx.bounds().iter().map(|b| b - 1).sum();
    let mut search = LcmSearch {
        candidates: maximal,
        ceiling,
        best: 0,
    };
    search.run(0, &vec![0u32; n], k.min(n));
    Ok(search.best)
}

struct LcmSearch<'a> {
    candidates: Vec<&'a Monomial>,
    ceiling: u32,
    best: u32,
}

impl LcmSearch<'_> {
    fn gain(current: &[u32], u: &Monomial) -> u32 {
        current
            .iter()
            .zip(u.exponents())
            .map(|(&c, &a)| a.saturating_sub(c))
            .sum()
    }

    fn run(&mut self, start: usize, current: &[u32], picks_left: usize) {
        let degree: u32 = current.iter().sum();
        self.best = self.best.max(degree);
        if picks_left == 0 || self.best == self.ceiling {
            return;
        }
        let rest = &self.candidates[start..];
        let max_gain = rest
            .iter()
            .map(|u| Self::gain(current, u))
            .max()
            .unwrap_or(0);
        let bound = (degree + picks_left as u32 * max_gain).min(self.ceiling);
        if bound <= self.best {
            return;
        }
        for p in start..self.candidates.len() {
            let u = self.candidates[p];
            if Self::gain(current, u) == 0 {
                continue;
            }
            let next: Vec<u32> = current
                .iter()
                .zip(u.exponents())
                .map(|(&c, &a)| c.max(a))
                .collect();
            self.run(p + 1, &next, picks_left - 1);
            if self.best == self.ceiling {
                return;
            }
        }
    }
}

/// `q(L(I)^k)` with the routes that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QInvariant {
    pub value: u32,
    /// Max colon-set size over the generators, when they were enumerated.
    pub colon_route: Option<u32>,
    pub lcm_route: u32,
}

pub fn q_invariant(ctx: &ArtinianContext, k: usize) -> Result<QInvariant> {
    let lcm_route = max_lcm_degree(ctx, k)?;
    let colon_route = if multiset_count(ctx.length(), k) <= COLON_ROUTE_PRODUCTS {
        let gens = power_generators(ctx, k)?;
        Some(
            gens.iter()
                .map(|g| power_colon_set(g).len() as u32)
                .max()
                .unwrap_or(0),
        )
    } else {
        None
    };
    if let Some(c) = colon_route {
        if c != lcm_route {
            return Err(Error::Invariant(format!(
                "q(L(I)^{k}): colon sets give {c}, lcm search gives {lcm_route}"
            )));
        }
    }
    Ok(QInvariant {
        value: lcm_route,
        colon_route,
        lcm_route,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DepthRow {
    pub k: usize,
    pub q: u32,
    pub depth: usize,
    pub stabilized: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DepthProfile {
    pub rows: Vec<DepthRow>,
    /// Least recorded `k` with depth `n − 1`, if reached within `kmax`.
    pub stabilization_k: Option<usize>,
}

impl DepthProfile {
    pub fn depth(&self, k: usize) -> Option<usize> {
        self.rows.iter().find(|r| r.k == k).map(|r| r.depth)
    }
}

/// `depth S^℘/L(I)^k = Σ b_i − q(L(I)^k) − 1` for `k = 1..=kmax`.
pub fn depth_profile(ctx: &ArtinianContext, kmax: usize) -> Result<DepthProfile> {
    if kmax == 0 {
        return Err(Error::ZeroPower);
    }
    let n = ctx.n();
    let vars = ctx.polar_var_count();
    let mut rows: Vec<DepthRow> = Vec::with_capacity(kmax);
    for k in 1..=kmax {
        let q = q_invariant(ctx, k)?.value;
        let depth = vars - q as usize - 1;
        if let Some(prev) = rows.last() {
            let strict_ok = prev.depth == n - 1 || depth < prev.depth;
            if depth > prev.depth || !strict_ok {
                return Err(Error::Invariant(format!(
                    "depth went from {} at k={} to {depth} at k={k}",
                    prev.depth, prev.k
                )));
            }
        }
        if k >= n && depth != n - 1 {
            return Err(Error::Invariant(format!(
                "depth {depth} at k={k} ≥ n, expected {}",
                n - 1
            )));
        }
        rows.push(DepthRow {
            k,
            q,
            depth,
            stabilized: depth == n - 1,
        });
    }
    let stabilization_k = rows.iter().find(|r| r.stabilized).map(|r| r.k);
    Ok(DepthProfile {
        rows,
        stabilization_k,
    })
}
