//! Canonical labeling for small graphs, used to deduplicate enumerations.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_CANON_ORDER: usize = 10;

/// Byte string equal for two graphs iff they are isomorphic.
///
/// Vertices are first split into cells by iterated degree refinement, then
/// every ordering that respects the cell sequence is searched for the
/// lexicographically smallest upper-triangle bit string.
pub fn canonical_key(g: &Graph) -> Result<Vec<u8>> {
    let n = g.n();
    if n > MAX_CANON_ORDER {
        return Err(Error::OrderTooLarge { n, max: MAX_CANON_ORDER, what: "canonical_key" });
    }
    let colors = refine(g);
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut by_color: Vec<(usize, usize)> = colors.iter().copied().zip(0..n).collect();
    by_color.sort_unstable();
    for (c, v) in by_color {
        match cells.last_mut() {
            Some(cell) if colors[cell[0]] == c => cell.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let slots: Vec<usize> = cells.iter().enumerate().flat_map(|(i, c)| std::iter::repeat_n(i, c.len())).collect();

    let nbits = n * n.saturating_sub(1) / 2;
    let mut search = Search {
        g,
        cells: &cells,
        slots: &slots,
        placed: Vec::with_capacity(n),
        used: vec![false; n],
        bits: vec![false; nbits],
        best: None,
        generation: 0,
    };
    search.run(0, Ordering::Equal);
    let best = search.best.unwrap_or_default();

    let mut key = Vec::with_capacity(1 + nbits.div_ceil(8));
    key.push(n as u8);
    for chunk in best.chunks(8) {
        key.push(chunk.iter().enumerate().fold(0u8, |acc, (i, &b)| acc | (u8::from(b) << (7 - i))));
    }
    Ok(key)
}

/// The canonical relabeling of `g`; isomorphic inputs give equal graphs.
pub fn canonical_form(g: &Graph) -> Result<Graph> {
    let key = canonical_key(g)?;
    let n = g.n();
    let mut rows = vec![0u64; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if key[1 + k / 8] >> (7 - k % 8) & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            k += 1;
        }
    }
    Graph::from_bit_rows(&rows)
}

/// Stable color refinement starting from degrees; colors are ranks of sorted
/// signatures, so the result depends only on the isomorphism class.
fn refine(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut colors: Vec<usize> = g.degrees();
    let mut distinct = count_distinct(&colors);
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).map(|u| colors[u]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut sorted = sigs.clone();
        sorted.sort();
        sorted.dedup();
        colors = sigs.iter().map(|s| sorted.binary_search(s).unwrap_or(0)).collect();
        let now = sorted.len();
        if now == distinct {
            return colors;
        }
        distinct = now;
    }
}

fn count_distinct(xs: &[usize]) -> usize {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

struct Search<'a> {
    g: &'a Graph,
    cells: &'a [Vec<usize>],
    slots: &'a [usize],
    placed: Vec<usize>,
    used: Vec<bool>,
    bits: Vec<bool>,
    best: Option<Vec<bool>>,
    generation: u64,
}

impl Search<'_> {
    /// `state` compares the bits fixed so far against the same prefix of `best`.
    fn run(&mut self, pos: usize, state: Ordering) {
        if pos == self.slots.len() {
            if self.best.is_none() || state == Ordering::Less {
                self.best = Some(self.bits.clone());
                self.generation += 1;
            }
            return;
        }
        let cell = &self.cells[self.slots[pos]];
        let base = pos * pos.saturating_sub(1) / 2;
        let generation = self.generation;
        for &v in cell {
            if self.used[v] {
                continue;
            }
            // a new best found below this frame shares its prefix
            let mut st = if self.generation != generation { Ordering::Equal } else { state };
            for (i, &u) in self.placed.iter().enumerate() {
                let b = self.g.has_edge(u, v);
                self.bits[base + i] = b;
                if st == Ordering::Equal {
                    if let Some(best) = &self.best {
                        st = b.cmp(&best[base + i]);
                    }
                }
            }
            if st == Ordering::Greater {
                continue;
            }
            self.used[v] = true;
            self.placed.push(v);
            self.run(pos + 1, st);
            self.placed.pop();
            self.used[v] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn relabeled_path_has_same_key() {
        let a = Graph::path(4);
        let b = Graph::from_edges(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(canonical_key(&a).unwrap(), canonical_key(&b).unwrap());
    }

    #[test]
    fn path_and_star_differ() {
        assert_ne!(canonical_key(&Graph::path(4)).unwrap(), canonical_key(&Graph::star(3)).unwrap());
    }

    #[test]
    fn eleven_graphs_on_four_vertices() {
        let keys: HashSet<Vec<u8>> = (0u32..64)
            .map(|mask| {
                let pairs = [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)];
                let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
                canonical_key(&Graph::from_edges(4, &edges).unwrap()).unwrap()
            })
            .collect();
        assert_eq!(keys.len(), 11);
    }

    #[test]
    fn canonical_form_is_isomorphism_invariant() {
        let a = canonical_form(&Graph::path(5)).unwrap();
        let b = canonical_form(&Graph::from_edges(5, &[(4, 2), (2, 0), (0, 3), (3, 1)]).unwrap()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.edge_count(), 4);
        assert_eq!(canonical_key(&a).unwrap(), canonical_key(&Graph::path(5)).unwrap());
    }

    #[test]
    fn order_limit() {
        assert!(canonical_key(&Graph::path(10)).is_ok());
        assert!(matches!(canonical_key(&Graph::path(11)), Err(Error::OrderTooLarge { .. })));
    }
}
