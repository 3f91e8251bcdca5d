//! Simple undirected graphs stored as packed adjacency bit rows, together with
//! the metric quantities the anti-adjacency matrix is built from.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const WORD: usize = 64;

/// Undirected simple graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(WORD).max(1);
        Graph { n, words, bits: vec![0; n * words] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::Invariant(format!("self-loop at vertex {u}")));
            }
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    /// Builds a graph on at most 64 vertices from one bit row per vertex.
    ///
    /// Rows must be symmetric with an empty diagonal.
    pub fn from_bit_rows(rows: &[u64]) -> Result<Self> {
        let n = rows.len();
        if n > WORD {
            return Err(Error::OrderTooLarge { n, max: WORD, what: "bit-row constructor" });
        }
        let mask = if n == WORD { u64::MAX } else { (1u64 << n) - 1 };
        for (u, &row) in rows.iter().enumerate() {
            if row & !mask != 0 {
                return Err(Error::VertexOutOfRange { vertex: 63 - (row & !mask).leading_zeros() as usize, n });
            }
            if row >> u & 1 == 1 {
                return Err(Error::Invariant(format!("self-loop at vertex {u}")));
            }
            for v in 0..n {
                if (row >> v & 1) != (rows[v] >> u & 1) {
                    return Err(Error::Invariant(format!("asymmetric adjacency between {u} and {v}")));
                }
            }
        }
        Ok(Graph { n, words: 1, bits: rows.to_vec() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / WORD] >> (v % WORD) & 1 == 1
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize, on: bool) {
        for (a, b) in [(u, v), (v, u)] {
            let w = &mut self.bits[a * self.words + b / WORD];
            if on {
                *w |= 1 << (b % WORD);
            } else {
                *w &= !(1 << (b % WORD));
            }
        }
    }

    /// Packed adjacency row of `u`; only meaningful for `n <= 64`.
    #[inline]
    pub fn row(&self, u: usize) -> u64 {
        debug_assert!(self.words == 1);
        self.bits[u]
    }

    pub(crate) fn row_words(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row_words(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|u| self.degree(u)).collect()
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.has_edge(u, v))
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| (u + 1..self.n).filter(move |&v| self.has_edge(u, v)).map(move |v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    pub fn is_complete(&self) -> bool {
        self.n >= 1 && (0..self.n).all(|u| self.degree(u) == self.n - 1)
    }

    pub fn complement(&self) -> Graph {
        let mut c = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    c.set_edge(u, v, true);
                }
            }
        }
        c
    }

    /// Vertices adjacent to every other vertex.
    pub fn universal_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&u| self.degree(u) + 1 == self.n).collect()
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        if self.words == 1 {
            let all = if self.n == WORD { u64::MAX } else { (1u64 << self.n) - 1 };
            let mut seen = 1u64;
            let mut frontier = 1u64;
            while frontier != 0 {
                let mut next = 0;
                let mut f = frontier;
                while f != 0 {
                    let u = f.trailing_zeros() as usize;
                    f &= f - 1;
                    next |= self.bits[u];
                }
                frontier = next & !seen;
                seen |= next;
            }
            return seen == all;
        }
        self.components().len() == 1
    }

    /// True iff the vertex subset induces a clique.
    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Same graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, actual: perm.len() });
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            self.check_vertex(p)?;
            if std::mem::replace(&mut seen[p], true) {
                return Err(Error::Invariant(format!("relabeling is not a permutation (repeats {p})")));
            }
        }
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.set_edge(perm[u], perm[v], true);
        }
        Ok(g)
    }

    // Named families.

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.set_edge(u, v, true);
            }
        }
        g
    }

    pub fn path(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for u in 1..n {
            g.set_edge(u - 1, u, true);
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.set_edge(0, n - 1, true);
        }
        g
    }

    /// The star `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Graph {
        let mut g = Graph::empty(leaves + 1);
        for v in 1..=leaves {
            g.set_edge(0, v, true);
        }
        g
    }

    pub fn complete_multipartite(parts: &[usize]) -> Graph {
        let n = parts.iter().sum();
        let mut g = Graph::complete(n);
        let mut start = 0;
        for &s in parts {
            for u in start..start + s {
                for v in u + 1..start + s {
                    g.set_edge(u, v, false);
                }
            }
            start += s;
        }
        g
    }

    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            g.set_edge(u, v, true);
        }
        for (u, v) in other.edges() {
            g.set_edge(self.n + u, self.n + v, true);
        }
        g
    }

    /// `self ∨ other`: disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Graph {
        let mut g = self.disjoint_union(other);
        for u in 0..self.n {
            for v in 0..other.n {
                g.set_edge(u, self.n + v, true);
            }
        }
        g
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

/// Shortest-path length, with a dedicated value for unreachable pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Distance {
    Finite(u32),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<u32> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<Distance>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> Distance {
        self.d[u * self.n + v]
    }
}

/// All-pairs shortest paths by breadth-first search from every vertex.
pub fn distances(g: &Graph) -> DistanceMatrix {
    let n = g.n();
    let mut d = vec![Distance::Infinite; n * n];
    if g.words == 1 {
        let all = if n == WORD { u64::MAX } else { (1u64 << n) - 1 };
        for s in 0..n {
            let row = &mut d[s * n..(s + 1) * n];
            let mut seen = 1u64 << s;
            let mut frontier = seen;
            let mut level = 0u32;
            while frontier != 0 {
                let mut f = frontier;
                while f != 0 {
                    let u = f.trailing_zeros() as usize;
                    f &= f - 1;
                    row[u] = Distance::Finite(level);
                }
                let mut next = 0;
                let mut f = frontier;
                while f != 0 {
                    let u = f.trailing_zeros() as usize;
                    f &= f - 1;
                    next |= g.bits[u];
                }
                frontier = next & !seen & all;
                seen |= frontier;
                level += 1;
            }
        }
        return DistanceMatrix { n, d };
    }
    let mut queue = Vec::with_capacity(n);
    for s in 0..n {
        let row = &mut d[s * n..(s + 1) * n];
        row[s] = Distance::Finite(0);
        queue.clear();
        queue.push(s);
        let mut i = 0;
        while i < queue.len() {
            let u = queue[i];
            i += 1;
            let du = row[u].finite().unwrap_or(0);
            for v in g.neighbors(u) {
                if row[v] == Distance::Infinite {
                    row[v] = Distance::Finite(du + 1);
                    queue.push(v);
                }
            }
        }
    }
    DistanceMatrix { n, d }
}

/// Per-vertex eccentricities plus diameter, radius and connectivity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EccProfile {
    pub ecc: Vec<Distance>,
    pub diameter: Distance,
    pub radius: Distance,
    pub connected: bool,
}

pub fn ecc_profile(dm: &DistanceMatrix) -> EccProfile {
    let n = dm.n();
    let ecc: Vec<Distance> =
        (0..n).map(|u| (0..n).map(|v| dm.get(u, v)).max().unwrap_or(Distance::Finite(0))).collect();
    let connected = n > 0 && ecc.iter().all(|e| e.is_finite());
    let diameter = ecc.iter().copied().max().unwrap_or(Distance::Finite(0));
    let radius = ecc.iter().copied().min().unwrap_or(Distance::Finite(0));
    EccProfile { ecc, diameter, radius, connected }
}

/// Subgraph induced by `vs`, relabeled `0..vs.len()` in the given order.
pub fn induced_subgraph(g: &Graph, vs: &[usize]) -> Result<Graph> {
    if vs.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut seen = vec![false; g.n()];
    for &v in vs {
        g.check_vertex(v)?;
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::Invariant(format!("vertex {v} repeated in subset")));
        }
    }
    let mut h = Graph::empty(vs.len());
    for (i, &u) in vs.iter().enumerate() {
        for (j, &v) in vs.iter().enumerate().skip(i + 1) {
            if g.has_edge(u, v) {
                h.set_edge(i, j, true);
            }
        }
    }
    Ok(h)
}

/// Whether some vertex subset of `g` induces a copy of `pattern`.
///
/// Backtracking over pattern vertices in descending-degree order; a host
/// vertex is a candidate only if its degree is at least the pattern degree.
pub fn contains_induced(g: &Graph, pattern: &Graph) -> Result<bool> {
    let (n, k) = (g.n(), pattern.n());
    if k > n {
        return Err(Error::PatternTooLarge { pattern: k, host: n });
    }
    if k == 0 {
        return Ok(true);
    }
    let mut order: Vec<usize> = (0..k).collect();
    let pdeg = pattern.degrees();
    order.sort_by(|&a, &b| pdeg[b].cmp(&pdeg[a]).then(a.cmp(&b)));
    let hdeg = g.degrees();
    let mut image = vec![usize::MAX; k];
    let mut used = vec![false; n];
    Ok(extend_embedding(g, pattern, &order, &pdeg, &hdeg, 0, &mut image, &mut used))
}

#[allow(clippy::too_many_arguments)]
fn extend_embedding(
    g: &Graph,
    pattern: &Graph,
    order: &[usize],
    pdeg: &[usize],
    hdeg: &[usize],
    depth: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let pv = order[depth];
    for hv in 0..g.n() {
        if used[hv] || hdeg[hv] < pdeg[pv] {
            continue;
        }
        let consistent =
            order[..depth].iter().all(|&pu| pattern.has_edge(pv, pu) == g.has_edge(hv, image[pu]));
        if !consistent {
            continue;
        }
        image[pv] = hv;
        used[hv] = true;
        if extend_embedding(g, pattern, order, pdeg, hdeg, depth + 1, image, used) {
            return true;
        }
        used[hv] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(x: u32) -> Distance {
        Distance::Finite(x)
    }

    #[test]
    fn path_distances() {
        let dm = distances(&Graph::path(4));
        assert_eq!(dm.get(0, 3), d(3));
        assert_eq!(dm.get(0, 2), d(2));
        assert_eq!(dm.get(1, 2), d(1));
    }

    #[test]
    fn complete_distances() {
        let dm = distances(&Graph::complete(5));
        for u in 0..5 {
            for v in 0..5 {
                assert_eq!(dm.get(u, v), d(u32::from(u != v)));
            }
        }
    }

    #[test]
    fn disconnected_pairs_are_infinite() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let dm = distances(&g);
        assert_eq!(dm.get(0, 2), Distance::Infinite);
        assert_eq!(dm.get(1, 3), Distance::Infinite);
        assert_eq!(dm.get(0, 1), d(1));
        let prof = ecc_profile(&dm);
        assert!(!prof.connected);
        assert!(prof.ecc.iter().all(|e| *e == Distance::Infinite));
    }

    #[test]
    fn eccentricities() {
        let p = ecc_profile(&distances(&Graph::path(4)));
        assert_eq!(p.ecc, vec![d(3), d(2), d(2), d(3)]);
        assert_eq!(p.diameter, d(3));
        assert_eq!(p.radius, d(2));
        let s = ecc_profile(&distances(&Graph::star(3)));
        assert_eq!(s.ecc, vec![d(1), d(2), d(2), d(2)]);
        assert_eq!(s.diameter, d(2));
        let c = ecc_profile(&distances(&Graph::cycle(4)));
        assert!(c.ecc.iter().all(|e| *e == d(2)));
    }

    #[test]
    fn multiword_rows_match_single_word() {
        let g = Graph::cycle(70);
        assert!(g.is_connected());
        let p = ecc_profile(&distances(&g));
        assert_eq!(p.diameter, d(35));
        assert_eq!(p.radius, d(35));
        assert_eq!(g.degree(0), 2);
    }

    #[test]
    fn induced_examples() {
        let c4 = Graph::cycle(4);
        let h = induced_subgraph(&c4, &[0, 1, 2]).unwrap();
        assert_eq!(h, Graph::path(3));
        let k3 = induced_subgraph(&Graph::complete(5), &[4, 1, 2]).unwrap();
        assert_eq!(k3, Graph::complete(3));
        // diamond: 0,1 are the degree-3 vertices, 2,3 the degree-2 ones
        let diamond = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert_eq!(induced_subgraph(&diamond, &[2, 3]).unwrap(), Graph::empty(2));
        assert_eq!(induced_subgraph(&diamond, &[]), Err(Error::EmptySubset));
        assert!(matches!(induced_subgraph(&diamond, &[9]), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn containment_examples() {
        let p3k1 = Graph::path(3).disjoint_union(&Graph::empty(1));
        assert!(contains_induced(&Graph::cycle(5), &Graph::path(4)).unwrap());
        assert!(!contains_induced(&Graph::star(4), &Graph::cycle(4)).unwrap());
        assert!(contains_induced(&Graph::path(5), &p3k1).unwrap());
        assert!(!contains_induced(&Graph::star(4), &p3k1).unwrap());
        assert!(matches!(
            contains_induced(&Graph::path(3), &Graph::path(4)),
            Err(Error::PatternTooLarge { .. })
        ));
    }

    #[test]
    fn bit_rows_validation() {
        assert!(Graph::from_bit_rows(&[0b10, 0b01]).is_ok());
        assert!(Graph::from_bit_rows(&[0b10, 0b00]).is_err());
        assert!(Graph::from_bit_rows(&[0b01]).is_err());
    }

    #[test]
    fn diameter_one_iff_complete() {
        for n in 3..7 {
            let k = Graph::complete(n);
            assert_eq!(ecc_profile(&distances(&k)).diameter, d(1));
            let mut g = k.clone();
            g.set_edge(0, 1, false);
            assert_eq!(ecc_profile(&distances(&g)).diameter, d(2));
        }
    }
}
