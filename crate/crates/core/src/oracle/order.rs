use crate::ideal::{minimal_elements, Monomial};
use crate::polar::Face;

/// Outcome of [`verify_linear_quotients`]. `first_failure` is the 0-based
/// position of the first generator whose colon is not generated by variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearQuotientsReport {
    pub ok: bool,
    pub first_failure: Option<usize>,
}

/// Minimal generators of `(prefix) : g`, i.e. of `{f / gcd(f, g)}`.
pub fn colon_generators(prefix: &[Monomial], g: &Monomial) -> Vec<Monomial> {
    minimal_elements(prefix.iter().map(|f| f.colon(g)))
}

pub fn verify_linear_quotients(ordered: &[Monomial]) -> LinearQuotientsReport {
    for j in 1..ordered.len() {
        let colon = colon_generators(&ordered[..j], &ordered[j]);
        if colon.iter().any(|c| c.degree() != 1) {
            return LinearQuotientsReport {
                ok: false,
                first_failure: Some(j),
            };
        }
    }
    LinearQuotientsReport {
        ok: true,
        first_failure: None,
    }
}

/// Shelling test: for all `i < j` some `l < j` has `|F_j ∖ F_l| = 1` and
/// `F_j ∩ F_i ⊆ F_j ∩ F_l`.
pub fn is_shelling(ordered: &[Face]) -> bool {
    (1..ordered.len()).all(|j| {
        let fj = &ordered[j];
        let earlier = &ordered[..j];
        earlier.iter().all(|fi| {
            let meet = fj.intersection(fi);
            earlier
                .iter()
                .any(|fl| fj.difference(fl).len() == 1 && meet.is_subset(&fj.intersection(fl)))
        })
    })
}
