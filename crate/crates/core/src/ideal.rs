//! Monomials, monomial ideals and zero-dimensional (artinian) contexts.
//!
//! A [`Monomial`] is an exponent vector. A [`MonomialIdeal`] always holds its
//! minimal generating set in canonical order (total degree, then
//! lexicographic on exponent vectors). An [`ArtinianContext`] adds the
//! pure-power bounds `b_i` and the cached set of standard monomials, which is
//! what every other module in the crate indexes over.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest admissible pure-power exponent `b_i`.
pub const MAX_BOUND: u32 = 64;
/// Largest admissible number of polarized variables `Σ b_i`.
pub const MAX_POLAR_VARS: usize = 64;
/// Largest admissible number of standard monomials.
pub const MAX_STANDARD: usize = 1 << 20;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    /// `x_var^exp` in `n` variables (`var` is 0-based).
    pub fn pure_power(n: usize, var: usize, exp: u32) -> Self {
        let mut e = vec![0; n];
        e[var] = exp;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.arity(), other.arity());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a + b).collect())
    }

    /// `self / gcd(self, other)`, the generator contributed to `(self) : other`.
    pub fn colon(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.saturating_sub(b))
                .collect(),
        )
    }

    /// Multiply by `x_var`.
    pub fn times_var(&self, var: usize) -> Monomial {
        let mut e = self.0.clone();
        e[var] += 1;
        Monomial(e)
    }

    /// Divide by `x_var`, if it divides.
    pub fn div_var(&self, var: usize) -> Option<Monomial> {
        let mut e = self.0.clone();
        e[var] = e[var].checked_sub(1)?;
        Some(Monomial(e))
    }

    /// Support as a list of 0-based variable indices.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Divisibility-minimal elements of `monomials`, in canonical order.
///
/// Works for any arity and does not reject the constant monomial; the ideal
/// constructor [`minimalize`] layers the ideal-specific checks on top.
pub fn minimal_elements(monomials: impl IntoIterator<Item = Monomial>) -> Vec<Monomial> {
    let mut all: Vec<Monomial> = monomials.into_iter().collect();
    all.sort();
    all.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(all.len());
    // Canonical order puts every proper divisor before its multiples.
    for m in all {
        if !kept.iter().any(|k| k.divides(&m)) {
            kept.push(m);
        }
    }
    kept
}

/// A monomial ideal given by its minimal generating set `G(I)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct MonomialIdeal {
    n: usize,
    generators: Vec<Monomial>,
}

/// Minimal generators of the ideal generated by `raw`.
pub fn minimalize(raw: impl IntoIterator<Item = Monomial>, n: usize) -> Result<MonomialIdeal> {
    let raw: Vec<Monomial> = raw.into_iter().collect();
    if raw.is_empty() {
        return Err(Error::EmptyIdeal);
    }
    for m in &raw {
        if m.arity() != n {
            return Err(Error::Arity {
                expected: n,
                got: m.arity(),
            });
        }
        if m.is_one() {
            return Err(Error::UnitIdeal);
        }
    }
    Ok(MonomialIdeal {
        n,
        generators: minimal_elements(raw),
    })
}

impl MonomialIdeal {
    pub fn new(raw: impl IntoIterator<Item = Monomial>, n: usize) -> Result<Self> {
        minimalize(raw, n)
    }

    /// Build from exponent rows, mostly a convenience for tests.
    pub fn from_exponents(n: usize, rows: &[&[u32]]) -> Result<Self> {
        minimalize(rows.iter().map(|r| Monomial::new(r.to_vec())), n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    /// True when every minimal generator is a pure power (a complete intersection).
    pub fn is_pure_powers(&self) -> bool {
        self.generators.iter().all(|g| g.support().count() == 1)
    }

    /// Ideal-file text: an `n` line followed by one `gen` line per generator.
    pub fn to_text(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for g in &self.generators {
            out.push_str("gen");
            for e in g.exponents() {
                out.push(' ');
                out.push_str(&e.to_string());
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        text.parse()
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, g) in self.generators.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for MonomialIdeal {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut gens = Vec::new();
        for (idx, raw_line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw_line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { line: line_no, msg };
            let mut words = line.split_whitespace();
            match words.next() {
                Some("n") => {
                    if n.is_some() {
                        return Err(err("duplicate `n` line".into()));
                    }
                    let value = words
                        .next()
                        .ok_or_else(|| err("`n` needs a value".into()))?;
                    let value: usize = value
                        .parse()
                        .map_err(|_| err(format!("invalid variable count `{value}`")))?;
                    if value == 0 {
                        return Err(err("variable count must be positive".into()));
                    }
                    if words.next().is_some() {
                        return Err(err("trailing tokens after `n`".into()));
                    }
                    n = Some(value);
                }
                Some("gen") => {
                    let n = n.ok_or_else(|| err("`gen` before `n` line".into()))?;
                    let exps = words
                        .map(|w| {
                            w.parse::<u32>()
                                .map_err(|_| err(format!("invalid exponent `{w}`")))
                        })
                        .collect::<Result<Vec<u32>>>()?;
                    if exps.len() != n {
                        return Err(err(format!(
                            "generator has {} exponents, expected {n}",
                            exps.len()
                        )));
                    }
                    gens.push(Monomial::new(exps));
                }
                Some(other) => return Err(err(format!("unknown directive `{other}`"))),
                None => unreachable!(),
            }
        }
        let n = n.ok_or(Error::Parse {
            line: 0,
            msg: "missing `n` line".into(),
        })?;
        minimalize(gens, n)
    }
}

/// A zero-dimensional monomial ideal together with its pure-power bounds and
/// cached standard monomials.
#[derive(Clone, Debug)]
pub struct ArtinianContext {
    ideal: MonomialIdeal,
    bounds: Vec<u32>,
    standard: Vec<Monomial>,
    offsets: Vec<usize>,
}

pub fn build_context(ideal: MonomialIdeal) -> Result<ArtinianContext> {
    ArtinianContext::new(ideal)
}

impl ArtinianContext {
    pub fn new(ideal: MonomialIdeal) -> Result<Self> {
        let n = ideal.n();
        let mut bounds = Vec::with_capacity(n);
        for var in 0..n {
            let b = ideal
                .generators()
                .iter()
                .filter(|g| g.support().all(|s| s == var))
                .map(|g| g.exponents()[var])
                .min()
                .ok_or(Error::NotZeroDimensional { var: var + 1 })?;
            if b > MAX_BOUND {
                return Err(Error::scale("pure-power exponent", b, MAX_BOUND));
            }
            bounds.push(b);
        }
        let total: usize = bounds.iter().map(|&b| b as usize).sum();
        if total > MAX_POLAR_VARS {
            return Err(Error::scale(
                "polarized variable count",
                total,
                MAX_POLAR_VARS,
            ));
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for &b in &bounds {
            offsets.push(offsets.last().unwrap() + b as usize);
        }

        let mut standard = Vec::new();
        let mut point = vec![0u32; n];
        scan_box(&ideal, &bounds, 0, &mut point, &mut standard)?;
        standard.sort();

        Ok(ArtinianContext {
            ideal,
            bounds,
            standard,
            offsets,
        })
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn n(&self) -> usize {
        self.ideal.n()
    }

    /// The pure-power bounds `b_i`.
    pub fn bounds(&self) -> &[u32] {
        &self.bounds
    }

    /// Standard monomials in canonical order.
    pub fn standard(&self) -> &[Monomial] {
        &self.standard
    }

    /// `ℓ(S/I)`, the number of standard monomials.
    pub fn length(&self) -> usize {
        self.standard.len()
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        m.arity() == self.n()
            && m.exponents().iter().zip(&self.bounds).all(|(a, b)| a < b)
            && !self.ideal.contains(m)
    }

    /// Number of polarized variables, `Σ b_i`.
    pub fn polar_var_count(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    /// Flat index of the polarized variable `x_{var+1, level}` in `0..Σ b_i`.
    pub fn polar_index(&self, var: usize, level: u32) -> usize {
        debug_assert!(level >= 1 && level <= self.bounds[var]);
        self.offsets[var] + level as usize - 1
    }

    /// Inverse of [`ArtinianContext::polar_index`].
    pub fn polar_from_index(&self, index: usize) -> (usize, u32) {
        let var = self.offsets.partition_point(|&o| o <= index) - 1;
        (var, (index - self.offsets[var] + 1) as u32)
    }

    pub fn max_standard_degree(&self) -> u32 {
        self.standard
            .iter()
            .map(Monomial::degree)
            .max()
            .unwrap_or(0)
    }
}

// Coordinates are raised one at a time with the tail held at zero. Once the
// partial point lies in the ideal, every larger value of that coordinate does
// too, so the scan visits only standard monomials.
fn scan_box(
    ideal: &MonomialIdeal,
    bounds: &[u32],
    var: usize,
    point: &mut Vec<u32>,
    out: &mut Vec<Monomial>,
) -> Result<()> {
    if var == bounds.len() {
        if out.len() >= MAX_STANDARD {
            return Err(Error::scale(
                "standard monomial count",
                out.len() + 1,
                MAX_STANDARD,
            ));
        }
        out.push(Monomial::new(point.clone()));
        return Ok(());
    }
    for a in 0..bounds[var] {
        point[var] = a;
        if ideal.contains(&Monomial::new(point.clone())) {
            break;
        }
        scan_box(ideal, bounds, var + 1, point, out)?;
    }
    point[var] = 0;
    Ok(())
}

/// `h_j` = number of standard monomials of degree `j`.
pub fn h_vector(ctx: &ArtinianContext) -> Vec<u64> {
    let mut h = vec![0u64; ctx.max_standard_degree() as usize + 1];
    for u in ctx.standard() {
        h[u.degree() as usize] += 1;
    }
    while h.len() > 1 && h.last() == Some(&0) {
        h.pop();
    }
    h
}

/// The ideal `(J, x_1^2, …, x_n^2)` attached to the facet ideal `J` of a
/// complex given by squarefree generators.
pub fn whisker_from_complex(squarefree: &[Monomial], n: usize) -> Result<MonomialIdeal> {
    for m in squarefree {
        if m.arity() != n {
            return Err(Error::Arity {
                expected: n,
                got: m.arity(),
            });
        }
        if !m.is_squarefree() {
            return Err(Error::NotSquarefree {
                monomial: m.to_string(),
            });
        }
    }
    let squares = (0..n).map(|i| Monomial::pure_power(n, i, 2));
    minimalize(squarefree.iter().cloned().chain(squares), n)
}

/// The ideal whose standard monomials are exactly `standard`.
///
/// `standard` must be a nonempty order ideal (closed under taking divisors).
/// Minimal generators are the minimal monomials `v·x_k` that leave the set.
pub fn ideal_from_standard_set(standard: &[Monomial], n: usize) -> Result<MonomialIdeal> {
    use std::collections::HashSet;
    let members: HashSet<&Monomial> = standard.iter().collect();
    let mut corners = Vec::new();
    for v in standard {
        for k in 0..n {
            let w = v.times_var(k);
            if !members.contains(&w) {
                corners.push(w);
            }
        }
    }
    minimalize(corners, n)
}

/// Seeded random artinian ideal: pure powers with exponents drawn from
/// `1..=bmax` plus up to `extra` random mixed monomials inside the box.
/// Draws touching fewer than two variables are discarded, so the bounds of
/// the result are exactly the drawn pure-power exponents.
///
/// # Panics
/// Panics if `n == 0` or `bmax == 0`.
pub fn random_artinian(n: usize, bmax: u32, extra: usize, seed: u64) -> MonomialIdeal {
    assert!(
        n >= 1 && bmax >= 1,
        "random_artinian needs n >= 1 and bmax >= 1"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bounds: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=bmax)).collect();
    let mut gens: Vec<Monomial> = (0..n)
        .map(|i| Monomial::pure_power(n, i, bounds[i]))
        .collect();
    for _ in 0..extra {
        let m = Monomial::new(bounds.iter().map(|&b| rng.gen_range(0..b)).collect());
        if m.support().count() >= 2 {
            gens.push(m);
        }
    }
    minimalize(gens, n).expect("pure powers keep the ideal proper and nonempty")
}
