//! The ideal `L(I)` generated by the primes `φ(u)`, its linear-quotient
//! order, and what follows from it: colon sets, the decomposition function,
//! Betti numbers, and a shelling of `Δ(I)`.
//!
//! Generators are ordered lexicographically by their level vectors
//! `(a_1+1, …, a_n+1)`. Along that order the colon of the prefix by the
//! generator of `u = x^a` is generated by `{x_{i,j} : j ≤ a_i}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::{h_vector, ArtinianContext, Monomial};
use crate::polar::{face_to_monomial, phi_unchecked, Face, PolarVar};

/// A generator `φ(u)` of `L(I)` at 1-based position `rank` of the admissible order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LGenerator {
    pub source: Monomial,
    pub face: Face,
    pub rank: usize,
}

pub fn admissible_order(ctx: &ArtinianContext) -> Vec<LGenerator> {
    let mut sources = ctx.standard().to_vec();
    sources.sort_by(|a, b| a.exponents().cmp(b.exponents()));
    sources
        .into_iter()
        .enumerate()
        .map(|(k, u)| LGenerator {
            face: phi_unchecked(&u),
            source: u,
            rank: k + 1,
        })
        .collect()
}

/// Generators of `L(I)` as monomials of the polarized ring, in admissible order.
pub fn l_ideal(ctx: &ArtinianContext) -> Vec<Monomial> {
    admissible_order(ctx)
        .iter()
        .map(|g| face_to_monomial(ctx, &g.face))
        .collect()
}

/// `set(g) = {x_{i,j} : 1 ≤ j ≤ a_i}`.
pub fn colon_set(g: &LGenerator) -> Face {
    Face::new(
        g.source
            .exponents()
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| (1..=a).map(move |j| PolarVar::new(i, j))),
    )
}

/// Minimal generators of `(earlier faces) : face(g)`, computed directly from
/// the prefix rather than from the closed formula.
pub fn prefix_colon(order: &[LGenerator], rank: usize) -> Vec<Face> {
    let g = &order[rank - 1].face;
    let mut quotients: Vec<Face> = order[..rank - 1]
        .iter()
        .map(|f| f.face.difference(g))
        .collect();
    quotients.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    quotients.dedup();
    let mut minimal: Vec<Face> = Vec::new();
    for q in quotients {
        if !minimal.iter().any(|m| m.is_subset(&q)) {
            minimal.push(q);
        }
    }
    minimal.sort();
    minimal
}

/// The earliest generator in `order` whose face divides `m`.
pub fn decompose<'a>(order: &'a [LGenerator], m: &Face) -> Result<&'a LGenerator> {
    order
        .iter()
        .find(|g| g.face.is_subset(m))
        .ok_or_else(|| Error::NoDividingGenerator {
            what: m.to_string(),
        })
}

/// The decomposition function `b(m)` of `L(I)`.
pub fn decomposition_function(ctx: &ArtinianContext, m: &Face) -> Result<LGenerator> {
    decompose(&admissible_order(ctx), m).cloned()
}

/// Closed form of `b(x_{i,j} · g)` for `x_{i,j} ∈ set(g)`: the source of `g`
/// with exponent `i` lowered to `j − 1`.
pub fn decomposition_source(g: &LGenerator, var: PolarVar) -> Monomial {
    let mut e = g.source.exponents().to_vec();
    e[var.var] = var.level - 1;
    Monomial::new(e)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityWitness {
    pub generator: usize,
    pub variable: PolarVar,
    pub image: usize,
    pub image_set: Face,
    /// `set(b(x·g)) ⊆ set(g)`
    pub contained: bool,
    /// `set(b(x_{i,j}·g)) = set(g) ∖ {x_{i,j}, …, x_{i,a_i}}`
    pub matches_formula: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub regular: bool,
    pub witnesses: Vec<RegularityWitness>,
}

pub fn check_regular(ctx: &ArtinianContext) -> RegularityReport {
    let order = admissible_order(ctx);
    let mut witnesses = Vec::new();
    for g in &order {
        let set_g = colon_set(g);
        for &x in set_g.members() {
            let image = decompose(&order, &g.face.with(x)).expect("g itself divides x·g");
            let image_set = colon_set(image);
            let a_i = g.source.exponents()[x.var];
            let removed = Face::new((x.level..=a_i).map(|l| PolarVar::new(x.var, l)));
            witnesses.push(RegularityWitness {
                generator: g.rank,
                variable: x,
                image: image.rank,
                contained: image_set.is_subset(&set_g),
                matches_formula: image_set == set_g.difference(&removed),
                image_set,
            });
        }
    }
    RegularityReport {
        regular: witnesses.iter().all(|w| w.contained),
        witnesses,
    }
}

/// Total Betti numbers `β_0, β_1, …` of `S^℘/L(I)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct BettiVector(pub Vec<u64>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiSummary {
    pub betti: BettiVector,
    pub projdim: usize,
    pub depth: usize,
}

/// `β_i = Σ_j h_j · C(j, i−1)` for `i ≥ 1`, with `projdim` and the depth over
/// the polarized ring.
pub fn betti_formula(ctx: &ArtinianContext) -> Result<BettiSummary> {
    let h = h_vector(ctx);
    let projdim = ctx.max_standard_degree() as usize + 1;
    let mut betti = vec![1u64];
    for i in 1..=projdim {
        let mut total = 0u64;
        for (j, &hj) in h.iter().enumerate() {
            let term = binomial(j as u64, i as u64 - 1)?
                .checked_mul(hj)
                .ok_or(Error::Overflow("Betti number"))?;
            total = total
                .checked_add(term)
                .ok_or(Error::Overflow("Betti number"))?;
        }
        betti.push(total);
    }
    Ok(BettiSummary {
        betti: BettiVector(betti),
        projdim,
        depth: ctx.polar_var_count() - projdim,
    })
}

fn binomial(n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for t in 0..k {
        // acc·(n−t) is divisible by t+1 at every step
        acc = acc
            .checked_mul((n - t) as u128)
            .ok_or(Error::Overflow("binomial coefficient"))?
            / (t as u128 + 1);
    }
    u64::try_from(acc).map_err(|_| Error::Overflow("binomial coefficient"))
}

/// Facets of `Δ(I)` as complements of the generators, in admissible order.
pub fn shelling_order(ctx: &ArtinianContext) -> Vec<Face> {
    let all = Face::new(crate::polar::polar_vertices(ctx));
    admissible_order(ctx)
        .iter()
        .map(|g| all.difference(&g.face))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::{build_context, random_artinian, MonomialIdeal};
    use crate::oracle;
    use proptest::prelude::*;

    fn ctx(n: usize, rows: &[&[u32]]) -> ArtinianContext {
        build_context(MonomialIdeal::from_exponents(n, rows).unwrap()).unwrap()
    }

    fn square() -> ArtinianContext {
        ctx(2, &[&[2, 0], &[0, 2]])
    }

    fn mixed() -> ArtinianContext {
        ctx(2, &[&[3, 0], &[0, 3], &[1, 1]])
    }

    fn maximal() -> ArtinianContext {
        ctx(2, &[&[1, 0], &[0, 1]])
    }

    fn pv(i: usize, j: u32) -> PolarVar {
        PolarVar::new(i - 1, j)
    }

    fn sources(c: &ArtinianContext) -> Vec<Vec<u32>> {
        admissible_order(c)
            .iter()
            .map(|g| g.source.exponents().to_vec())
            .collect()
    }

    fn generator(c: &ArtinianContext, source: &[u32]) -> LGenerator {
        admissible_order(c)
            .into_iter()
            .find(|g| g.source.exponents() == source)
            .unwrap()
    }

    #[test]
    fn admissible_order_examples() {
        assert_eq!(
            sources(&square()),
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
        );
        assert_eq!(sources(&maximal()), vec![vec![0, 0]]);
        assert_eq!(
            sources(&mixed()),
            vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 0], vec![2, 0]]
        );
        let ranks: Vec<usize> = admissible_order(&mixed()).iter().map(|g| g.rank).collect();
        assert_eq!(ranks, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn colon_set_examples() {
        let g = generator(&square(), &[1, 1]);
        assert_eq!(colon_set(&g), Face::new([pv(1, 1), pv(2, 1)]));
        assert!(colon_set(&admissible_order(&mixed())[0]).is_empty());
        let g = generator(&mixed(), &[2, 0]);
        assert_eq!(colon_set(&g), Face::new([pv(1, 1), pv(1, 2)]));
        let order = admissible_order(&mixed());
        assert_eq!(
            prefix_colon(&order, g.rank),
            vec![Face::new([pv(1, 1)]), Face::new([pv(1, 2)])]
        );
    }

    #[test]
    fn decomposition_examples() {
        let c = square();
        let g = generator(&c, &[1, 1]);
        let b = decomposition_function(&c, &g.face.with(pv(1, 1))).unwrap();
        assert_eq!(b.source.exponents(), &[0, 1]);

        let g = generator(&c, &[1, 0]);
        let b = decomposition_function(&c, &g.face.with(pv(1, 1))).unwrap();
        assert_eq!(b.source.exponents(), &[0, 0]);

        let c = mixed();
        let g = generator(&c, &[2, 0]);
        let b = decomposition_function(&c, &g.face.with(pv(1, 1))).unwrap();
        assert_eq!(b.source.exponents(), &[0, 0]);
        assert_eq!(decomposition_source(&g, pv(1, 1)), b.source);

        let err = decomposition_function(&c, &Face::new([pv(1, 2)])).unwrap_err();
        assert!(matches!(err, Error::NoDividingGenerator { .. }));
    }

    #[test]
    fn regularity_examples() {
        let r = check_regular(&square());
        assert!(r.regular);
        let w = r
            .witnesses
            .iter()
            .find(|w| w.generator == 4 && w.variable == pv(1, 1))
            .unwrap();
        assert_eq!(w.image, 2);
        assert_eq!(w.image_set, Face::new([pv(2, 1)]));

        let r = check_regular(&maximal());
        assert!(r.regular && r.witnesses.is_empty());

        let r = check_regular(&mixed());
        assert!(r.regular);
        assert_eq!(r.witnesses.len(), 6);
        assert!(r.witnesses.iter().all(|w| w.matches_formula));
    }

    #[test]
    fn image_set_drops_levels_from_j() {
        // u = φ(xy), variable x_{1,1}: b(x_{1,1}u) = φ(y) has set {x2_1}, so the
        // levels removed from set(u) start at j itself, not at j + 1.
        let r = check_regular(&square());
        let w = r
            .witnesses
            .iter()
            .find(|w| w.generator == 4 && w.variable == pv(1, 1))
            .unwrap();
        assert_ne!(w.image_set, Face::new([pv(1, 1), pv(2, 1)]));
        assert!(w.contained);
    }

    #[test]
    fn betti_examples() {
        let s = betti_formula(&square()).unwrap();
        assert_eq!(
            (s.betti.0.clone(), s.projdim, s.depth),
            (vec![1, 4, 4, 1], 3, 1)
        );
        let s = betti_formula(&maximal()).unwrap();
        assert_eq!((s.betti.0.clone(), s.projdim, s.depth), (vec![1, 1], 1, 1));
        let s = betti_formula(&mixed()).unwrap();
        assert_eq!(
            (s.betti.0.clone(), s.projdim, s.depth),
            (vec![1, 5, 6, 2], 3, 3)
        );
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), Ok(10));
        assert_eq!(binomial(3, 4), Ok(0));
        assert_eq!(binomial(64, 32), Ok(1_832_624_140_942_590_534));
        assert_eq!(binomial(0, 0), Ok(1));
        assert!(binomial(200, 100).is_err());
    }

    #[test]
    fn shelling_examples() {
        assert_eq!(shelling_order(&maximal()), vec![Face::empty()]);
        let order = shelling_order(&square());
        assert_eq!(order[0], Face::new([pv(1, 2), pv(2, 2)]));
        assert_eq!(order[3], Face::new([pv(1, 1), pv(2, 1)]));
        assert!(oracle::is_shelling(&order));
        assert!(oracle::is_shelling(&shelling_order(&mixed())));
    }

    fn arb_ctx() -> impl Strategy<Value = ArtinianContext> {
        (1usize..=3, 1u32..=3, 0usize..6, any::<u64>())
            .prop_map(|(n, b, e, s)| build_context(random_artinian(n, b, e, s)).unwrap())
    }

    proptest! {
        #[test]
        fn colon_formula_matches_prefix_colon(c in arb_ctx()) {
            let order = admissible_order(&c);
            for g in &order {
                let explicit = prefix_colon(&order, g.rank);
                prop_assert!(explicit.iter().all(|f| f.len() == 1));
                let union = Face::new(explicit.iter().flat_map(|f| f.members().to_vec()));
                prop_assert_eq!(union, colon_set(g));
            }
        }

        #[test]
        fn first_betti_is_length_and_alternating_sum_vanishes(c in arb_ctx()) {
            let s = betti_formula(&c).unwrap();
            prop_assert_eq!(s.betti.0[1] as usize, c.length());
            let alt: i64 = s.betti.0.iter().enumerate()
                .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
                .sum();
            prop_assert_eq!(alt, 0);
        }

        #[test]
        fn decomposition_moves_strictly_earlier(c in arb_ctx()) {
            let order = admissible_order(&c);
            for g in &order {
                for &x in colon_set(g).members() {
                    let b = decompose(&order, &g.face.with(x)).unwrap();
                    prop_assert!(b.rank < g.rank);
                    prop_assert_eq!(&b.source, &decomposition_source(g, x));
                }
            }
        }

        #[test]
        fn order_refines_componentwise_order(c in arb_ctx()) {
            let order = admissible_order(&c);
            for (p, g) in order.iter().enumerate() {
                for h in &order[..p] {
                    prop_assert!(!g.source.divides(&h.source));
                }
            }
        }
    }
}
