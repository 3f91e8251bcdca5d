//! Mixed extensions of graphs and the star family `S(t0, -p, t1, ..., tq)`.
//!
//! A mixed extension replaces every base vertex `i` by a clique (`t_i > 0`)
//! or coclique (`t_i < 0`) of size `|t_i|`; two blobs are completely joined
//! exactly when their base vertices are adjacent. Extensions of a star have a
//! center clique of size `t0`, a pool of `p` pairwise non-adjacent leaves, and
//! `q` clique parts of size at least two.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// One signed entry per base vertex: positive is a clique, negative a coclique.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtensionType(Vec<i64>);

impl ExtensionType {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if let Some(i) = entries.iter().position(|&t| t == 0) {
            return Err(Error::ZeroEntry(i));
        }
        Ok(ExtensionType(entries))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.iter().map(|t| t.unsigned_abs() as usize).sum()
    }
}

pub fn mixed_extension(base: &Graph, ty: &ExtensionType) -> Result<Graph> {
    if ty.0.len() != base.n() {
        return Err(Error::SizeMismatch { expected: base.n(), actual: ty.0.len() });
    }
    let mut offsets = Vec::with_capacity(ty.0.len() + 1);
    offsets.push(0);
    for &t in &ty.0 {
        offsets.push(offsets.last().copied().unwrap_or(0) + t.unsigned_abs() as usize);
    }
    let mut g = Graph::empty(ty.order());
    for (i, &t) in ty.0.iter().enumerate() {
        if t > 0 {
            for u in offsets[i]..offsets[i + 1] {
                for v in u + 1..offsets[i + 1] {
                    g.set_edge(u, v, true);
                }
            }
        }
        for j in i + 1..ty.0.len() {
            if base.has_edge(i, j) {
                for u in offsets[i]..offsets[i + 1] {
                    for v in offsets[j]..offsets[j + 1] {
                        g.set_edge(u, v, true);
                    }
                }
            }
        }
    }
    Ok(g)
}

/// Normalized parameters of `S(t0, -p, k_1·t_1, ..., k_h·t_h)`.
///
/// `parts` holds `(size, count)` pairs with strictly decreasing sizes, all at
/// least two. Complete graphs have the single representation
/// `(t0 = n - 1, p = 1, parts = ∅)` (and `(1, 0, ∅)` for `K_1`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StarParams {
    t0: usize,
    p: usize,
    parts: Vec<(usize, usize)>,
}

impl StarParams {
    /// Builds normalized parameters; part sizes of one are folded into `p`.
    pub fn new(t0: usize, p: usize, part_sizes: &[usize]) -> Result<Self> {
        if t0 == 0 {
            return Err(Error::InvalidParams("center clique must have at least one vertex".into()));
        }
        if part_sizes.contains(&0) {
            return Err(Error::InvalidParams("part sizes must be positive".into()));
        }
        let mut p = p;
        let mut sizes: Vec<usize> = Vec::with_capacity(part_sizes.len());
        for &s in part_sizes {
            if s == 1 {
                p += 1;
            } else {
                sizes.push(s);
            }
        }
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        let mut parts: Vec<(usize, usize)> = Vec::new();
        for s in sizes {
            match parts.last_mut() {
                Some((size, count)) if *size == s => *count += 1,
                _ => parts.push((s, 1)),
            }
        }
        let mut sp = StarParams { t0, p, parts };
        if sp.p + sp.q() <= 1 {
            let n = sp.n();
            sp = if n == 1 { StarParams { t0: 1, p: 0, parts: vec![] } } else { StarParams { t0: n - 1, p: 1, parts: vec![] } };
        }
        Ok(sp)
    }

    /// From `(size, multiplicity)` pairs.
    pub fn with_multiset(t0: usize, p: usize, parts: &[(usize, usize)]) -> Result<Self> {
        let sizes: Vec<usize> = parts.iter().flat_map(|&(s, k)| std::iter::repeat_n(s, k)).collect();
        StarParams::new(t0, p, &sizes)
    }

    pub fn t0(&self) -> usize {
        self.t0
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// `(size, count)` pairs, sizes strictly decreasing.
    pub fn parts(&self) -> &[(usize, usize)] {
        &self.parts
    }

    /// Number of clique parts of size at least two.
    pub fn q(&self) -> usize {
        self.parts.iter().map(|&(_, k)| k).sum()
    }

    /// Number of distinct part sizes.
    pub fn h(&self) -> usize {
        self.parts.len()
    }

    pub fn n(&self) -> usize {
        self.t0 + self.p + self.parts.iter().map(|&(s, k)| s * k).sum::<usize>()
    }

    /// Part sizes listed with repetition, largest first.
    pub fn part_sizes(&self) -> Vec<usize> {
        self.parts.iter().flat_map(|&(s, k)| std::iter::repeat_n(s, k)).collect()
    }

    /// True when the extension is a complete graph (`p + q <= 1`).
    pub fn is_complete(&self) -> bool {
        self.p + self.q() <= 1
    }

    /// Sizes of the components left after deleting the center, largest first.
    fn component_sizes(&self) -> Vec<usize> {
        let mut c = self.part_sizes();
        c.extend(std::iter::repeat_n(1, self.p));
        c
    }

    pub fn clique_number(&self) -> usize {
        self.t0 + self.component_sizes().first().copied().unwrap_or(0)
    }

    /// Signed type vector for the underlying star, center first.
    pub fn extension_type(&self) -> ExtensionType {
        let mut ty = vec![self.t0 as i64];
        if self.p > 0 {
            ty.push(-(self.p as i64));
        }
        ty.extend(self.part_sizes().into_iter().map(|s| s as i64));
        ExtensionType(ty)
    }
}

impl fmt::Display for StarParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S({}", self.t0)?;
        if self.p > 0 {
            write!(f, ",-{}", self.p)?;
        }
        for &(s, k) in &self.parts {
            if k == 1 {
                write!(f, ",{s}")?;
            } else {
                write!(f, ",{s}^{k}")?;
            }
        }
        write!(f, ")")
    }
}

impl FromStr for StarParams {
    type Err = Error;

    /// Accepts `S(t0,-p,t1^k1,...)` as well as flat tuples like `S(2,1,1,3)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("{msg} in star literal {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix("S(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| bad("expected S(...)"))?;
        if inner.is_empty() {
            return Err(bad("empty tuple"));
        }
        let mut raw = Vec::new();
        for tok in inner.split(',') {
            let (base, reps) = match tok.split_once('^') {
                Some((b, r)) => (b, r.parse::<usize>().map_err(|_| bad("bad exponent"))?),
                None => (tok, 1),
            };
            if reps == 0 {
                return Err(bad("zero exponent"));
            }
            let v: i64 = base.parse().map_err(|_| bad("bad integer"))?;
            raw.extend(std::iter::repeat_n(v, reps));
        }
        normalize(&raw)
    }
}

/// Folds a raw tuple `(t0, t1, ..., tk)` into normalized parameters.
///
/// Size-one clique entries and every coclique entry join the leaf pool;
/// several negative entries are merged.
pub fn normalize(raw: &[i64]) -> Result<StarParams> {
    if let Some(i) = raw.iter().position(|&t| t == 0) {
        return Err(Error::ZeroEntry(i));
    }
    let (&t0, rest) = raw.split_first().ok_or_else(|| Error::InvalidParams("empty tuple".into()))?;
    if t0 < 0 {
        return Err(Error::InvalidParams("the center entry must be a clique".into()));
    }
    let mut p = 0usize;
    let mut sizes = Vec::new();
    for &t in rest {
        if t < 0 {
            p += t.unsigned_abs() as usize;
        } else {
            sizes.push(t as usize);
        }
    }
    StarParams::new(t0 as usize, p, &sizes)
}

pub fn star_extension(sp: &StarParams) -> Graph {
    let ty = sp.extension_type();
    let base = Graph::star(ty.entries().len() - 1);
    mixed_extension(&base, &ty).expect("type length matches the star order")
}

/// Recovers star parameters when `g` is a mixed extension of a star.
///
/// The center is the full set of universal vertices; the rest must split into
/// cliques.
pub fn recognize_star_extension(g: &Graph) -> Result<Option<StarParams>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    if g.is_complete() {
        return StarParams::new(n.max(2) - 1, usize::from(n >= 2), &[]).map(Some);
    }
    let universal = g.universal_vertices();
    if universal.is_empty() {
        return Ok(None);
    }
    let rest: Vec<usize> = (0..n).filter(|v| !universal.contains(v)).collect();
    let sub = crate::graph::induced_subgraph(g, &rest)?;
    let mut p = 0;
    let mut sizes = Vec::new();
    for comp in sub.components() {
        if !sub.is_clique(&comp) {
            return Ok(None);
        }
        if comp.len() == 1 {
            p += 1;
        } else {
            sizes.push(comp.len());
        }
    }
    StarParams::new(universal.len(), p, &sizes).map(Some)
}

/// Whether `star_extension(pattern)` is an induced subgraph of `star_extension(host)`.
pub fn param_contains(host: &StarParams, pattern: &StarParams) -> bool {
    if pattern.is_complete() {
        return pattern.n() <= host.clique_number();
    }
    if pattern.t0 > host.t0 {
        return false;
    }
    let want = pattern.component_sizes();
    let have = host.component_sizes();
    want.len() <= have.len() && want.iter().zip(&have).all(|(w, h)| w <= h)
}

/// Bounds of a parameter sweep over star extensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarGrid {
    pub t0_max: usize,
    pub p_max: usize,
    /// Bound on the total size of the clique parts.
    pub parts_total_max: usize,
    pub n_max: usize,
}

impl StarGrid {
    /// Distinct normalized parameters in the grid, sorted, with `n >= 2`.
    pub fn params(&self) -> Vec<StarParams> {
        let mut partitions = Vec::new();
        let mut current = Vec::new();
        partitions_into(self.parts_total_max, self.parts_total_max, &mut current, &mut partitions);
        let mut out = std::collections::BTreeSet::new();
        for t0 in 1..=self.t0_max {
            for p in 0..=self.p_max {
                for sizes in &partitions {
                    let n = t0 + p + sizes.iter().sum::<usize>();
                    if (2..=self.n_max).contains(&n) {
                        out.insert(StarParams::new(t0, p, sizes).expect("grid entries are positive"));
                    }
                }
            }
        }
        out.into_iter().collect()
    }
}

/// Multisets of sizes `>= 2`, non-increasing, with sum at most `budget`.
fn partitions_into(budget: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    out.push(current.clone());
    for s in (2..=max.min(budget)).rev() {
        current.push(s);
        partitions_into(budget - s, s, current, out);
        current.pop();
    }
}
