use crate::error::{Error, Result};
use crate::polar::{Face, PolarVar};

pub const MAX_FACET_ORACLE_VERTICES: usize = 24;

/// Maximal subsets of `vertices` containing no generator face, by exhaustive
/// mask enumeration.
pub fn facets_bruteforce(generators: &[Face], vertices: &[PolarVar]) -> Result<Vec<Face>> {
    let mut verts = vertices.to_vec();
    verts.sort();
    verts.dedup();
    let v = verts.len();
    if v > MAX_FACET_ORACLE_VERTICES {
        return Err(Error::scale(
            "facet oracle vertex count",
            v,
            MAX_FACET_ORACLE_VERTICES,
        ));
    }
    // generators touching vertices outside the ground set can never be contained
    let gen_masks: Vec<u32> = generators
        .iter()
        .filter_map(|g| {
            g.members()
                .iter()
                .try_fold(0u32, |m, x| verts.binary_search(x).ok().map(|k| m | 1 << k))
        })
        .collect();
    let independent = |mask: u32| gen_masks.iter().all(|&g| g & mask != g);

    let mut facets = Vec::new();
    for mask in 0u32..(1u32 << v) {
        if !independent(mask) {
            continue;
        }
        let maximal = (0..v).all(|k| mask & (1 << k) != 0 || !independent(mask | 1 << k));
        if maximal {
            facets.push(Face::new(
                (0..v).filter(|k| mask & (1 << k) != 0).map(|k| verts[k]),
            ));
        }
    }
    facets.sort();
    Ok(facets)
}
