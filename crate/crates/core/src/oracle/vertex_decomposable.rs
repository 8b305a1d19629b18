use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::polar::{PolarVar, SimplicialComplex};

pub const MAX_VD_ORACLE_VERTICES: usize = 12;

/// Exhaustive vertex-decomposability test. Simplices (including `{∅}`) are
/// decomposable; otherwise every vertex is tried as a shedding vertex.
///
/// Only vertices that lie in some facet count towards the size limit.
pub fn is_vertex_decomposable_bruteforce(cplx: &SimplicialComplex) -> Result<bool> {
    let mut support: Vec<PolarVar> = cplx
        .facets()
        .iter()
        .flat_map(|f| f.members().iter().copied())
        .collect();
    support.sort();
    support.dedup();
    if support.len() > MAX_VD_ORACLE_VERTICES {
        return Err(Error::scale(
            "VD oracle vertex count",
            support.len(),
            MAX_VD_ORACLE_VERTICES,
        ));
    }
    let facets: Vec<u16> = cplx
        .facets()
        .iter()
        .map(|f| {
            f.members()
                .iter()
                .fold(0u16, |m, v| m | 1 << support.binary_search(v).unwrap())
        })
        .collect();
    let mut memo = HashMap::new();
    Ok(decomposable(normalize(facets), &mut memo))
}

fn normalize(faces: impl IntoIterator<Item = u16>) -> Vec<u16> {
    let mut all: Vec<u16> = faces.into_iter().collect();
    all.sort_by(|a, b| b.count_ones().cmp(&a.count_ones()).then(a.cmp(b)));
    all.dedup();
    let mut kept: Vec<u16> = Vec::new();
    for f in all {
        if !kept.iter().any(|&k| f & k == f) {
            kept.push(f);
        }
    }
    kept.sort();
    kept
}

fn decomposable(facets: Vec<u16>, memo: &mut HashMap<Vec<u16>, bool>) -> bool {
    if facets.len() <= 1 {
        return true;
    }
    if let Some(&known) = memo.get(&facets) {
        return known;
    }
    let support = facets.iter().fold(0u16, |a, &f| a | f);
    let mut answer = false;
    for v in (0..16).map(|k| 1u16 << k).filter(|b| support & b != 0) {
        let deletion = normalize(facets.iter().map(|&f| f & !v));
        let shedding = deletion.iter().all(|d| facets.binary_search(d).is_ok());
        if !shedding {
            continue;
        }
        let link = normalize(facets.iter().filter(|&&f| f & v != 0).map(|&f| f & !v));
        if decomposable(deletion, memo) && decomposable(link, memo) {
            answer = true;
            break;
        }
    }
    memo.insert(facets, answer);
    answer
}
