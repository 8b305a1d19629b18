//! Vertex-decomposition certificates for `Δ(I)`.
//!
//! The shed vertex is always `x_{i,1}` for the largest `i` with `b_i > 1`.
//! Its deletion is an iterated cone with apexes `x_{i,b_i}, …, x_{i,2}` over
//! `Δ(J₁)`, where `J₁` keeps the standard monomials not divisible by `x_i`.
//! Its link, after shifting every `x_{i,j}` down to `x_{i,j−1}`, is `Δ(J₂)`
//! for the ideal with standard monomials `u / x_i`. `Δ(J₂)` lives on a
//! possibly smaller box than the link does; the missing vertices are cone
//! apexes, recorded as `link_cone`.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::{
    build_context, ideal_from_standard_set, minimalize, ArtinianContext, Monomial, MonomialIdeal,
};
use crate::polar::{delta_facets, Face, PolarVar, SimplicialComplex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "node", rename_all = "kebab-case")]
pub enum VdCertificate {
    /// A complex with a single facet.
    LeafSimplex,
    /// `Δ((x_1, …, x_n)) = {∅}`.
    LeafTrivial,
    Shed(Box<ShedNode>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShedNode {
    pub vertex: PolarVar,
    pub cone_chain: Vec<PolarVar>,
    pub link_cone: Vec<PolarVar>,
    pub j1: MonomialIdeal,
    pub j2: MonomialIdeal,
    pub deletion: VdCertificate,
    pub link: VdCertificate,
}

/// `(J₁, J₂)` for shedding `x_{var,1}`.
pub fn derived_ideals(ctx: &ArtinianContext, var: usize) -> Result<(MonomialIdeal, MonomialIdeal)> {
    let n = ctx.n();
    if ctx.bounds()[var] <= 1 {
        return Err(Error::VariableExhausted { var: var + 1 });
    }
    let j1 = minimalize(
        ctx.ideal()
            .generators()
            .iter()
            .filter(|g| g.exponents()[var] == 0)
            .cloned()
            .chain(std::iter::once(Monomial::pure_power(n, var, 1))),
        n,
    )?;
    let shifted: Vec<Monomial> = ctx
        .standard()
        .iter()
        .filter_map(|u| u.div_var(var))
        .collect();
    let j2 = ideal_from_standard_set(&shifted, n)?;
    Ok((j1, j2))
}

pub fn vd_certificate(ctx: &ArtinianContext) -> Result<VdCertificate> {
    let Some(var) = (0..ctx.n()).rev().find(|&i| ctx.bounds()[i] > 1) else {
        return Ok(VdCertificate::LeafTrivial);
    };
    let b = ctx.bounds()[var];
    let (j1, j2) = derived_ideals(ctx, var)?;
    let ctx1 = build_context(j1.clone())?;
    let ctx2 = build_context(j2.clone())?;

    let link_cone = ctx
        .bounds()
        .iter()
        .zip(ctx2.bounds())
        .enumerate()
        .flat_map(|(k, (&outer, &inner))| {
            let top = if k == var { outer - 1 } else { outer };
            (inner + 1..=top).map(move |l| PolarVar::new(k, l))
        })
        .collect();

    Ok(VdCertificate::Shed(Box::new(ShedNode {
        vertex: PolarVar::new(var, 1),
        cone_chain: (2..=b).rev().map(|l| PolarVar::new(var, l)).collect(),
        link_cone,
        deletion: vd_certificate(&ctx1)?,
        link: vd_certificate(&ctx2)?,
        j1,
        j2,
    })))
}

/// Where and why a certificate failed to verify.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VdFailure {
    pub path: String,
    pub reason: String,
}

/// Check `cert` against `cplx`, recursing into the complexes of `J₁`, `J₂`.
/// Complexes are compared by facets; vertices lying in no facet are ignored.
pub fn verify_certificate(
    cplx: &SimplicialComplex,
    cert: &VdCertificate,
) -> std::result::Result<(), VdFailure> {
    verify_at(cplx, cert, "root")
}

fn fail(path: &str, reason: String) -> std::result::Result<(), VdFailure> {
    Err(VdFailure {
        path: path.to_string(),
        reason,
    })
}

fn show(faces: &[Face]) -> String {
    faces
        .iter()
        .map(Face::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn verify_at(
    cplx: &SimplicialComplex,
    cert: &VdCertificate,
    path: &str,
) -> std::result::Result<(), VdFailure> {
    let node = match cert {
        VdCertificate::LeafTrivial => {
            return if cplx.facets() == [Face::empty()] {
                Ok(())
            } else {
                fail(
                    path,
                    format!("expected {{∅}}, found {}", show(cplx.facets())),
                )
            };
        }
        VdCertificate::LeafSimplex => {
            return if cplx.facets().len() == 1 {
                Ok(())
            } else {
                fail(
                    path,
                    format!("expected a simplex, found {} facets", cplx.facets().len()),
                )
            };
        }
        VdCertificate::Shed(node) => node,
    };
    let v = node.vertex;
    if !cplx.vertices().contains(&v) {
        return fail(path, format!("{v} is not a vertex"));
    }

    let (link, deletion) = cplx.link_and_deletion(&v);
    let avoiding: Vec<Face> = cplx
        .facets()
        .iter()
        .filter(|f| !f.contains(&v))
        .cloned()
        .collect();
    if deletion.facets() != avoiding.as_slice() {
        return fail(
            path,
            format!(
                "{v} is not a shedding vertex: deletion facets {}",
                show(deletion.facets())
            ),
        );
    }

    let sub = |name: &str| format!("{path}/{name}");
    let child =
        |ideal: &MonomialIdeal, name: &str| -> std::result::Result<SimplicialComplex, VdFailure> {
            build_context(ideal.clone())
                .map(|c| delta_facets(&c))
                .map_err(|e| VdFailure {
                    path: sub(name),
                    reason: format!("ideal {ideal}: {e}"),
                })
        };

    let delta1 = child(&node.j1, "deletion")?;
    let coned = cone_chain(&delta1, node.cone_chain.iter().rev().copied());
    match coned {
        Ok(c) if c.facets() == deletion.facets() => {}
        Ok(c) => {
            return fail(
                path,
                format!(
                    "deletion of {v} is {} but the cone over the complex of {} is {}",
                    show(deletion.facets()),
                    node.j1,
                    show(c.facets())
                ),
            )
        }
        Err(e) => return fail(path, e.to_string()),
    }

    let delta2 = child(&node.j2, "link")?;
    let shifted = link.relabel(|w| {
        if w.var == v.var {
            PolarVar::new(w.var, w.level - 1)
        } else {
            w
        }
    });
    match cone_chain(&delta2, node.link_cone.iter().copied()) {
        Ok(c) if c.facets() == shifted.facets() => {}
        Ok(c) => {
            return fail(
                path,
                format!(
                    "shifted link of {v} is {} but the complex of {} gives {}",
                    show(shifted.facets()),
                    node.j2,
                    show(c.facets())
                ),
            )
        }
        Err(e) => return fail(path, e.to_string()),
    }

    verify_at(&delta1, &node.deletion, &sub("deletion"))?;
    verify_at(&delta2, &node.link, &sub("link"))?;

    let top = cplx
        .vertices()
        .iter()
        .filter(|w| w.var == v.var)
        .map(|w| w.level)
        .max()
        .unwrap_or(1);
    let expected: Vec<PolarVar> = (2..=top).rev().map(|l| PolarVar::new(v.var, l)).collect();
    if v.level != 1 || node.cone_chain != expected {
        return fail(
            path,
            format!(
                "shed vertex must be {} with cone chain levels {top}..2",
                PolarVar::new(v.var, 1)
            ),
        );
    }
    Ok(())
}

fn cone_chain(
    base: &SimplicialComplex,
    mut apexes: impl Iterator<Item = PolarVar>,
) -> Result<SimplicialComplex> {
    apexes.try_fold(base.clone(), |acc, apex| acc.cone(apex))
}

impl VdCertificate {
    /// Number of nested levels, a leaf counting as one.
    pub fn depth(&self) -> usize {
        match self {
            VdCertificate::Shed(node) => 1 + node.deletion.depth().max(node.link.depth()),
            _ => 1,
        }
    }

    /// Indented text rendering, stable for golden comparisons.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.render(0, &mut out);
        out
    }

    fn render(&self, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent);
        match self {
            VdCertificate::LeafTrivial => {
                let _ = writeln!(out, "{pad}leaf trivial");
            }
            VdCertificate::LeafSimplex => {
                let _ = writeln!(out, "{pad}leaf simplex");
            }
            VdCertificate::Shed(node) => {
                let list = |vs: &[PolarVar]| {
                    if vs.is_empty() {
                        "-".to_string()
                    } else {
                        vs.iter()
                            .map(PolarVar::to_string)
                            .collect::<Vec<_>>()
                            .join(",")
                    }
                };
                let _ = writeln!(
                    out,
                    "{pad}shed {} cone={} link-cone={}",
                    node.vertex,
                    list(&node.cone_chain),
                    list(&node.link_cone)
                );
                let _ = writeln!(out, "{pad}  deletion {}", node.j1);
                node.deletion.render(indent + 2, out);
                let _ = writeln!(out, "{pad}  link {}", node.j2);
                node.link.render(indent + 2, out);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::random_artinian;
    use crate::oracle;
    use proptest::prelude::*;

    fn ideal(n: usize, rows: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(n, rows).unwrap()
    }

    fn ctx(n: usize, rows: &[&[u32]]) -> ArtinianContext {
        build_context(ideal(n, rows)).unwrap()
    }

    fn pv(i: usize, j: u32) -> PolarVar {
        PolarVar::new(i - 1, j)
    }

    fn shed(cert: &VdCertificate) -> &ShedNode {
        match cert {
            VdCertificate::Shed(node) => node,
            other => panic!("expected a shed node, got {other:?}"),
        }
    }

    #[test]
    fn derived_ideal_examples() {
        let c = ctx(2, &[&[3, 0], &[0, 3], &[1, 1]]);
        let (j1, j2) = derived_ideals(&c, 1).unwrap();
        assert_eq!(j1, ideal(2, &[&[3, 0], &[0, 1]]));
        assert_eq!(j2, ideal(2, &[&[1, 0], &[0, 2]]));

        let c = ctx(2, &[&[2, 0], &[0, 2]]);
        let (j1, j2) = derived_ideals(&c, 1).unwrap();
        assert_eq!(j1, ideal(2, &[&[2, 0], &[0, 1]]));
        assert_eq!(j2, ideal(2, &[&[2, 0], &[0, 1]]));

        let c = ctx(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(
            derived_ideals(&c, 0),
            Err(Error::VariableExhausted { var: 1 })
        );
        assert_eq!(
            derived_ideals(&c, 1),
            Err(Error::VariableExhausted { var: 2 })
        );
    }

    #[test]
    fn j2_is_the_colon_by_the_variable() {
        for seed in 0..40 {
            let i = random_artinian(3, 3, 5, seed);
            let c = build_context(i.clone()).unwrap();
            for var in (0..3).filter(|&v| c.bounds()[v] > 1) {
                let (_, j2) = derived_ideals(&c, var).unwrap();
                let x = Monomial::pure_power(3, var, 1);
                let colon = minimalize(i.generators().iter().map(|g| g.colon(&x)), 3).unwrap();
                assert_eq!(j2, colon);
            }
        }
    }

    #[test]
    fn certificate_examples() {
        let c = ctx(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(vd_certificate(&c).unwrap(), VdCertificate::LeafTrivial);

        let c = ctx(2, &[&[2, 0], &[0, 2]]);
        let cert = vd_certificate(&c).unwrap();
        let node = shed(&cert);
        assert_eq!(node.vertex, pv(2, 1));
        assert_eq!(node.cone_chain, vec![pv(2, 2)]);
        assert_eq!(node.j1, ideal(2, &[&[2, 0], &[0, 1]]));
        assert_eq!(node.j2, ideal(2, &[&[2, 0], &[0, 1]]));
        assert!(verify_certificate(&delta_facets(&c), &cert).is_ok());

        let c = ctx(2, &[&[3, 0], &[0, 3], &[1, 1]]);
        let cert = vd_certificate(&c).unwrap();
        let node = shed(&cert);
        assert_eq!(node.vertex, pv(2, 1));
        assert_eq!(node.cone_chain, vec![pv(2, 3), pv(2, 2)]);
        assert_eq!(node.link_cone, vec![pv(1, 2), pv(1, 3)]);
        assert_eq!(node.j1, ideal(2, &[&[3, 0], &[0, 1]]));
        assert_eq!(node.j2, ideal(2, &[&[1, 0], &[0, 2]]));
        assert!(verify_certificate(&delta_facets(&c), &cert).is_ok());
    }

    #[test]
    fn certificate_golden_text() {
        let c = ctx(2, &[&[3, 0], &[0, 3], &[1, 1]]);
        let golden = include_str!("../tests/golden/vd_x3_y3_xy.txt");
        assert_eq!(vd_certificate(&c).unwrap().to_text(), golden);
    }

    #[test]
    fn deletion_of_four_cycle_is_a_cone() {
        let c = ctx(2, &[&[2, 0], &[0, 2]]);
        let d = delta_facets(&c);
        let del = d.deletion(&pv(2, 1));
        let points = SimplicialComplex::new([], [Face::new([pv(1, 1)]), Face::new([pv(1, 2)])]);
        assert_eq!(del.facets(), points.cone(pv(2, 2)).unwrap().facets());
    }

    #[test]
    fn wrong_vertex_is_rejected() {
        let c = ctx(2, &[&[2, 0], &[0, 2]]);
        let mut cert = vd_certificate(&c).unwrap();
        if let VdCertificate::Shed(node) = &mut cert {
            node.vertex = pv(2, 2);
        }
        let failure = verify_certificate(&delta_facets(&c), &cert).unwrap_err();
        assert_eq!(failure.path, "root");
        assert!(failure.reason.contains("cone"), "{}", failure.reason);
    }

    #[test]
    fn wrong_child_is_rejected_with_path() {
        let c = ctx(2, &[&[3, 0], &[0, 3], &[1, 1]]);
        let mut cert = vd_certificate(&c).unwrap();
        if let VdCertificate::Shed(node) = &mut cert {
            node.link = VdCertificate::LeafTrivial;
        }
        let failure = verify_certificate(&delta_facets(&c), &cert).unwrap_err();
        assert_eq!(failure.path, "root/link");
    }

    #[test]
    fn simplex_leaf() {
        let simplex = SimplicialComplex::new([], [Face::new([pv(1, 1), pv(1, 2), pv(2, 1)])]);
        assert!(verify_certificate(&simplex, &VdCertificate::LeafSimplex).is_ok());
        assert!(verify_certificate(&simplex, &VdCertificate::LeafTrivial).is_err());
    }

    #[test]
    fn json_shape() {
        let c = ctx(2, &[&[2, 0], &[0, 2]]);
        let json = serde_json::to_value(vd_certificate(&c).unwrap()).unwrap();
        assert_eq!(json["node"], "shed");
        assert_eq!(json["vertex"], serde_json::json!([2, 1]));
        assert_eq!(json["cone_chain"], serde_json::json!([[2, 2]]));
        assert_eq!(json["deletion"]["node"], "shed");
    }

    fn arb_ctx() -> impl Strategy<Value = ArtinianContext> {
        (1usize..=3, 1u32..=3, 0usize..6, any::<u64>())
            .prop_map(|(n, b, e, s)| build_context(random_artinian(n, b, e, s)).unwrap())
    }

    proptest! {
        #[test]
        fn certificates_verify(c in arb_ctx()) {
            let cert = vd_certificate(&c).unwrap();
            let d = delta_facets(&c);
            prop_assert!(verify_certificate(&d, &cert).is_ok());
            let bound = c.bounds().iter().map(|&b| b as usize - 1).sum::<usize>() + 1;
            prop_assert!(cert.depth() <= bound);
        }

        #[test]
        fn shed_vertex_deletion_keeps_only_avoiding_facets(c in arb_ctx()) {
            for var in (0..c.n()).filter(|&i| c.bounds()[i] > 1) {
                let v = PolarVar::new(var, 1);
                let d = delta_facets(&c);
                let avoiding: Vec<Face> = d.facets().iter().filter(|f| !f.contains(&v)).cloned().collect();
                let del = d.deletion(&v);
                prop_assert_eq!(del.facets(), avoiding.as_slice());
            }
        }

        #[test]
        fn cone_preserves_bruteforce_verdict(c in arb_ctx()) {
            let d = delta_facets(&c);
            prop_assume!(d.vertices().len() < oracle::MAX_VD_ORACLE_VERTICES);
            let apex = PolarVar::new(c.n(), 1);
            let coned = d.cone(apex).unwrap();
            prop_assert_eq!(
                oracle::is_vertex_decomposable_bruteforce(&d).unwrap(),
                oracle::is_vertex_decomposable_bruteforce(&coned).unwrap()
            );
        }
    }
}
