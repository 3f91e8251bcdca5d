//! Spectral versus structural classification of connected graphs.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extension::{param_contains, recognize_star_extension, StarParams};
use crate::graph::{contains_induced, distances, ecc_profile, Distance, Graph};
use crate::graph6::to_graph6;
use crate::spectral::{
    adjacency, anti_adjacency, char_poly_exact, count_roots, eigenvalues, Bound, ExactPoly, IntMatrix, MAX_EXACT_ORDER,
};

/// Float guard band around zero for orders beyond exact arithmetic.
pub const SIGN_GUARD: f64 = 1e-8;

/// Exact eigenvalue counts read off a characteristic polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolyFacts {
    pub n: usize,
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
    pub minus_one: usize,
    pub minus_two: usize,
    /// Eigenvalues strictly below -2.
    pub below_minus_two: usize,
    /// Integer eigenvalues with multiplicity, descending.
    pub integer: Vec<(i64, usize)>,
}

impl PolyFacts {
    /// Eigenvalues other than -2 and 0.
    pub fn outside_minus_two_zero(&self) -> usize {
        self.n - self.zero - self.minus_two
    }

    fn mult(&self, r: i64) -> usize {
        self.integer.iter().find(|&&(v, _)| v == r).map_or(0, |&(_, m)| m)
    }
}

/// All counts are with multiplicity and exact.
pub fn poly_facts(p: &ExactPoly) -> PolyFacts {
    let n = p.degree().unwrap_or(0);
    let rp = p.to_rational();
    let positive = count_roots(&rp, &Bound::int(0), &Bound::PosInf, true).unwrap_or(0);
    let at_or_below = count_roots(&rp, &Bound::NegInf, &Bound::int(-2), true).unwrap_or(0);
    let (zero, mut cof) = p.deflate_root(&BigInt::from(0));
    let c0 = cof.coeff(0);
    let lim = (n * n + 1) as i64;
    let mut integer = Vec::new();
    for r in (-lim..=lim).rev() {
        if r == 0 || !(&c0 % BigInt::from(r)).is_zero() {
            continue;
        }
        let (m, next) = cof.deflate_root(&BigInt::from(r));
        if m > 0 {
            integer.push((r, m));
            cof = next;
        }
    }
    if zero > 0 {
        integer.push((0, zero));
        integer.sort_by(|a, b| b.0.cmp(&a.0));
    }
    let mut f = PolyFacts {
        n,
        positive,
        negative: n - positive - zero,
        zero,
        minus_one: 0,
        minus_two: 0,
        below_minus_two: 0,
        integer,
    };
    f.minus_one = f.mult(-1);
    f.minus_two = f.mult(-2);
    f.below_minus_two = at_or_below - f.minus_two;
    f
}

/// Memoizes [`poly_facts`] by polynomial; enumerations see few distinct ones.
#[derive(Default)]
pub struct FactsCache {
    map: HashMap<ExactPoly, PolyFacts>,
}

impl FactsCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn facts(&mut self, p: ExactPoly) -> PolyFacts {
        if let Some(f) = self.map.get(&p) {
            return f.clone();
        }
        let f = poly_facts(&p);
        self.map.insert(p, f.clone());
        f
    }

    pub fn facts_of(&mut self, m: &IntMatrix) -> Result<PolyFacts> {
        Ok(self.facts(char_poly_exact(m)?))
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

fn require_graph(g: &Graph) -> Result<()> {
    if g.n() == 0 || !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

fn positive_count(m: &IntMatrix, cache: &mut FactsCache) -> Result<usize> {
    let n = m.n();
    if n <= MAX_EXACT_ORDER {
        return Ok(cache.facts_of(m)?.positive);
    }
    let s = eigenvalues(m);
    if s.values.iter().any(|v| v.abs() <= SIGN_GUARD) {
        return Err(Error::Undecidable { n, guard: SIGN_GUARD });
    }
    Ok(s.count_above(0.0))
}

/// Exactly one positive anti-adjacency eigenvalue.
pub fn one_positive_spectral(g: &Graph) -> Result<bool> {
    one_positive_spectral_cached(g, &mut FactsCache::new())
}

pub fn one_positive_spectral_cached(g: &Graph, cache: &mut FactsCache) -> Result<bool> {
    require_graph(g)?;
    Ok(positive_count(&anti_adjacency(g)?, cache)? == 1)
}

/// Parameter conditions of the one-positive-eigenvalue family.
pub fn theorem1_predicate(sp: &StarParams) -> bool {
    theorem1_violation(sp).is_none()
}

/// Label of the failed condition, if any.
pub fn theorem1_violation(sp: &StarParams) -> Option<&'static str> {
    let s = sp.p() + sp.q();
    match sp.t0() {
        1 if s == 0 => Some("1.1(i)"),
        1 | 2 => None,
        3 if s > 4 => Some("1.1(iii)"),
        4 if s > 3 => Some("1.1(iv)"),
        t if t >= 5 && s > 2 => Some("1.1(v)"),
        _ => None,
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct ClosedSurd {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl ClosedSurd {
    /// `(a - b sqrt(c)) / d`.
    pub fn value(&self) -> f64 {
        (self.a as f64 - self.b as f64 * (self.c as f64).sqrt()) / self.d as f64
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct Fixture {
    pub label: String,
    pub graph: String,
    pub printed: String,
    #[serde(default)]
    pub closed_form: Option<ClosedSurd>,
    #[serde(default)]
    pub truncated: Option<f64>,
}

impl Fixture {
    pub fn params(&self) -> StarParams {
        self.graph.parse().expect("fixture literals are well formed")
    }
}

#[derive(Deserialize)]
struct FixtureFile {
    fixtures: Vec<Fixture>,
}

pub const TABLE1_JSON: &str = include_str!("../data/table1.json");

/// The twelve forbidden fixtures F1–F12.
pub fn table1() -> &'static [Fixture] {
    static CELL: OnceLock<Vec<Fixture>> = OnceLock::new();
    CELL.get_or_init(|| serde_json::from_str::<FixtureFile>(TABLE1_JSON).expect("bundled fixture file parses").fixtures)
}

/// Labels of the fixtures contained in `S(sp)` as induced subgraphs.
pub fn forbidden_report(sp: &StarParams) -> Vec<String> {
    table1().iter().filter(|f| param_contains(sp, &f.params())).map(|f| f.label.clone()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectralVerdict {
    pub member: bool,
    pub counts: Option<PolyFacts>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralVerdict {
    pub member: bool,
    pub family: Option<String>,
    pub params: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub graph: String,
    pub n: usize,
    pub theorem: String,
    pub spectral: SpectralVerdict,
    pub structural: StructuralVerdict,
    pub agree: bool,
    pub witnesses: Vec<String>,
}

fn forbidden_subgraph_witness(g: &Graph) -> Result<Option<String>> {
    let prof = ecc_profile(&distances(g));
    if let Distance::Finite(d) = prof.diameter {
        if d >= 3 {
            return Ok(Some(format!("diameter {d}")));
        }
    }
    let p3k1 = Graph::path(3).disjoint_union(&Graph::empty(1));
    for (name, pat) in [("P4", Graph::path(4)), ("C4", Graph::cycle(4)), ("P3+K1", p3k1)] {
        if pat.n() <= g.n() && contains_induced(g, &pat)? {
            return Ok(Some(format!("induced {name}")));
        }
    }
    Ok(None)
}

pub fn theorem1_check(g: &Graph) -> Result<ClassReport> {
    theorem1_check_with(g, &mut FactsCache::new(), theorem1_predicate)
}

/// As [`theorem1_check`], with a caller-supplied parameter predicate.
pub fn theorem1_check_with(g: &Graph, cache: &mut FactsCache, pred: impl Fn(&StarParams) -> bool) -> Result<ClassReport> {
    require_graph(g)?;
    let m = anti_adjacency(g)?;
    let (spectral_member, counts) = if g.n() <= MAX_EXACT_ORDER {
        let f = cache.facts_of(&m)?;
        (f.positive == 1, Some(f))
    } else {
        (positive_count(&m, cache)? == 1, None)
    };
    let sp = recognize_star_extension(g)?;
    let structural_member = sp.as_ref().is_some_and(&pred);
    let mut witnesses = Vec::new();
    if !structural_member {
        match &sp {
            Some(sp) => {
                if let Some(v) = theorem1_violation(sp) {
                    witnesses.push(format!("violates {v}"));
                }
                witnesses.extend(forbidden_report(sp).into_iter().map(|f| format!("contains {f}")));
            }
            None => witnesses.extend(forbidden_subgraph_witness(g)?),
        }
    }
    Ok(ClassReport {
        graph: to_graph6(g),
        n: g.n(),
        theorem: "theorem1".into(),
        spectral: SpectralVerdict { member: spectral_member, counts },
        structural: StructuralVerdict {
            member: structural_member,
            family: sp.as_ref().map(|_| "star extension".into()),
            params: sp.map(|s| s.to_string()),
        },
        agree: spectral_member == structural_member,
        witnesses,
    })
}

/// Sizes of the parts when the complement of `g` is a disjoint union of
/// cliques (so `g` is complete multipartite), largest first.
pub fn complete_multipartite_parts(g: &Graph) -> Option<Vec<usize>> {
    let c = g.complement();
    let mut parts = Vec::new();
    for comp in c.components() {
        if !c.is_clique(&comp) {
            return None;
        }
        parts.push(comp.len());
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Some(parts)
}

/// Structural side for "at most two eigenvalues outside {-2, 0}".
pub fn is_complete_bipartite(g: &Graph) -> bool {
    complete_multipartite_parts(g).is_some_and(|p| p.len() == 2)
}

pub fn theorem2_check(g: &Graph) -> Result<ClassReport> {
    theorem2_check_with(g, &mut FactsCache::new(), is_complete_bipartite)
}

/// As [`theorem2_check`], with a caller-supplied structural predicate.
pub fn theorem2_check_with(g: &Graph, cache: &mut FactsCache, structural: impl Fn(&Graph) -> bool) -> Result<ClassReport> {
    require_graph(g)?;
    if g.n() < 2 {
        return Err(Error::InvalidParams("order must be at least 2".into()));
    }
    let f = cache.facts_of(&anti_adjacency(g)?)?;
    let outside = f.outside_minus_two_zero();
    let spectral_member = outside <= 2;
    let structural_member = structural(g);
    let mut witnesses = Vec::new();
    if outside == 1 {
        witnesses.push("exactly one eigenvalue outside {-2, 0}".into());
    }
    if spectral_member != structural_member {
        witnesses.push(format!("{outside} eigenvalues outside {{-2, 0}}"));
    }
    let parts = complete_multipartite_parts(g);
    Ok(ClassReport {
        graph: to_graph6(g),
        n: g.n(),
        theorem: "theorem2".into(),
        spectral: SpectralVerdict { member: spectral_member, counts: Some(f) },
        structural: StructuralVerdict {
            member: structural_member,
            family: parts.as_ref().map(|_| "complete multipartite".into()),
            params: parts.map(|p| format!("K{p:?}")),
        },
        agree: spectral_member == structural_member && outside != 1,
        witnesses,
    })
}

/// Both sides of the least-eigenvalue-equals-(-2) characterization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeastMinusTwo {
    pub spectral: bool,
    pub structural: bool,
    /// `"(i)"` for `K_{n1,...,nl}`, `"(ii)"` for `K_{n0} ∨ K_{n1,...,nl}`.
    pub form: Option<String>,
    /// `(n0, part sizes)` when the graph is a clique joined to a complete multipartite graph.
    pub decomposition: Option<(usize, Vec<usize>)>,
}

/// Universal vertices joined to a complete multipartite remainder.
fn join_decomposition(g: &Graph) -> Option<(usize, Vec<usize>)> {
    let u = g.universal_vertices();
    let rest: Vec<usize> = (0..g.n()).filter(|v| !u.contains(v)).collect();
    if rest.is_empty() {
        return Some((u.len(), vec![]));
    }
    let r = crate::graph::induced_subgraph(g, &rest).ok()?;
    complete_multipartite_parts(&r).map(|p| (u.len(), p))
}

pub fn least_minus2_predicate(g: &Graph) -> Result<LeastMinusTwo> {
    least_minus2_cached(g, &mut FactsCache::new())
}

pub fn least_minus2_cached(g: &Graph, cache: &mut FactsCache) -> Result<LeastMinusTwo> {
    require_graph(g)?;
    let f = cache.facts_of(&anti_adjacency(g)?)?;
    let spectral = f.minus_two > 0 && f.below_minus_two == 0;
    let decomposition = join_decomposition(g);
    let form = decomposition.as_ref().and_then(|(n0, parts)| {
        let l = parts.len();
        if l < 2 || parts.iter().any(|&s| s < 2) {
            return None;
        }
        match n0 {
            0 => Some("(i)"),
            1 if l <= 4 => Some("(ii)"),
            2 if l <= 3 => Some("(ii)"),
            n if *n >= 3 && l == 2 => Some("(ii)"),
            _ => None,
        }
        .map(String::from)
    });
    Ok(LeastMinusTwo { spectral, structural: form.is_some(), form, decomposition })
}

pub fn smith_check(g: &Graph) -> Result<ClassReport> {
    smith_check_cached(g, &mut FactsCache::new())
}

pub fn smith_check_cached(g: &Graph, cache: &mut FactsCache) -> Result<ClassReport> {
    require_graph(g)?;
    let f = cache.facts_of(&adjacency(g))?;
    let spectral_member = f.positive == 1;
    let parts = complete_multipartite_parts(g);
    let structural_member = parts.is_some();
    Ok(ClassReport {
        graph: to_graph6(g),
        n: g.n(),
        theorem: "smith".into(),
        spectral: SpectralVerdict { member: spectral_member, counts: Some(f) },
        structural: StructuralVerdict {
            member: structural_member,
            family: parts.as_ref().map(|_| "complete multipartite".into()),
            params: parts.map(|p| format!("K{p:?}")),
        },
        agree: spectral_member == structural_member,
        witnesses: vec![],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::star_extension;

    fn sp(t0: usize, p: usize, parts: &[usize]) -> StarParams {
        StarParams::new(t0, p, parts).unwrap()
    }

    fn diamond() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
    }

    #[test]
    fn one_positive_examples() {
        for n in 2..7 {
            assert!(one_positive_spectral(&Graph::complete(n)).unwrap());
        }
        assert!(!one_positive_spectral(&Graph::path(4)).unwrap());
        assert!(!one_positive_spectral(&star_extension(&sp(4, 1, &[2, 2, 2]))).unwrap());
        assert!(one_positive_spectral(&Graph::empty(2)).is_err());
    }

    #[test]
    fn predicate_examples() {
        assert!(theorem1_predicate(&sp(3, 1, &[2, 2, 2])));
        assert!(!theorem1_predicate(&sp(5, 1, &[2, 2])));
        assert!(!theorem1_predicate(&sp(4, 1, &[2, 2, 2])));
        assert_eq!(theorem1_violation(&sp(5, 3, &[])), Some("1.1(v)"));
    }

    #[test]
    fn theorem1_examples() {
        let d = theorem1_check(&diamond()).unwrap();
        assert!(d.spectral.member && d.structural.member && d.agree);
        let c5 = theorem1_check(&Graph::cycle(5)).unwrap();
        assert!(!c5.spectral.member && c5.structural.params.is_none() && c5.agree);
        let f1 = theorem1_check(&star_extension(&sp(5, 3, &[]))).unwrap();
        assert!(!f1.spectral.member && !f1.structural.member && f1.agree);
        assert!(f1.witnesses.contains(&"violates 1.1(v)".to_string()));
    }

    #[test]
    fn forbidden_examples() {
        assert!(forbidden_report(&sp(5, 3, &[])).contains(&"F1".to_string()));
        assert!(forbidden_report(&sp(6, 2, &[2])).contains(&"F2".to_string()));
        assert!(forbidden_report(&sp(2, 7, &[3, 3, 3, 3])).is_empty());
    }

    #[test]
    fn theorem2_examples() {
        let k23 = theorem2_check(&Graph::complete_multipartite(&[2, 3])).unwrap();
        assert!(k23.spectral.member && k23.structural.member && k23.agree);
        let k14 = theorem2_check(&Graph::star(4)).unwrap();
        assert!(k14.spectral.member && k14.agree);
        let d = theorem2_check(&diamond()).unwrap();
        assert!(!d.spectral.member && !d.structural.member && d.agree);
    }

    #[test]
    fn least_minus_two_examples() {
        let a = least_minus2_predicate(&Graph::complete_multipartite(&[2, 2])).unwrap();
        assert!(a.spectral && a.form.as_deref() == Some("(i)"));
        let b = least_minus2_predicate(&Graph::complete(1).join(&Graph::complete_multipartite(&[2, 2]))).unwrap();
        assert!(b.spectral && b.form.as_deref() == Some("(ii)"));
        let c = least_minus2_predicate(&Graph::path(4)).unwrap();
        assert!(!c.spectral && !c.structural);
    }

    #[test]
    fn smith_examples() {
        let k = smith_check(&Graph::complete_multipartite(&[2, 3])).unwrap();
        assert!(k.spectral.member && k.structural.member);
        for g in [Graph::path(4), Graph::cycle(5)] {
            let r = smith_check(&g).unwrap();
            assert!(!r.spectral.member && !r.structural.member);
        }
    }

    #[test]
    fn facts_of_path_three() {
        let f = poly_facts(&char_poly_exact(&anti_adjacency(&Graph::path(3)).unwrap()).unwrap());
        assert_eq!((f.positive, f.negative, f.zero, f.minus_two), (1, 2, 0, 1));
        assert_eq!(f.integer, vec![(-2, 1)]);
        assert_eq!(f.outside_minus_two_zero(), 2);
    }

    #[test]
    fn fixture_file() {
        let t = table1();
        assert_eq!(t.len(), 12);
        assert_eq!(t[0].params(), sp(5, 3, &[]));
        assert_eq!(t[11].params(), sp(3, 1, &[2, 2, 2, 2]));
        assert_eq!(t.iter().filter(|f| f.closed_form.is_some()).count(), 3);
    }
}
