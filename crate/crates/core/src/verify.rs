//! Exhaustive enumeration and grid runs that check the characterizations,
//! closed forms and fixtures, reported deterministically.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::canon::{canonical_form, canonical_key};
use crate::characterize::{
    forbidden_report, is_complete_bipartite, smith_check_cached, table1, theorem1_check_with,
    theorem1_predicate, theorem2_check_with, ClassReport, FactsCache,
};
use crate::error::{Error, Result};
use crate::extension::{star_extension, StarGrid, StarParams};
use crate::graph::{distances, ecc_profile, Distance, Graph};
use crate::graph6::to_graph6;
use crate::hlindex::{hl_agreement, hl_statement, HL_TOLERANCE};
use crate::spectral::{
    anti_adjacency, char_poly_exact, closed_form_spectrum, count_roots, count_roots_open, eigenvalues, exact_nullity,
    interlaces, isolate_roots, join_char_poly, star_char_poly, Bound,
};

pub const MAX_ENUM_ORDER: usize = 8;
/// Distinct counterexamples kept per claim; failures beyond this are only counted.
pub const MAX_COUNTEREXAMPLES: usize = 50;
pub const SPECTRUM_TOLERANCE: f64 = 1e-8;
pub const INTERLACING_TOLERANCE: f64 = 1e-8;
pub const TABLE1_TOLERANCE: f64 = 1e-10;
const REPORT_VERSION: u32 = 1;
const CHUNKS_PER_WORKER: usize = 16;

/// The `index`-th of `count` contiguous ranges of edge bitmasks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Shard {
    pub index: usize,
    pub count: usize,
}

fn edge_slots(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Graph whose edge `{i, j}` (`i < j`) is present when bit `j(j-1)/2 + i` of
/// `mask` is set, the column order of graph6.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut rows = vec![0u64; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if mask >> k & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            k += 1;
        }
    }
    Graph::from_bit_rows(&rows).expect("rows built symmetric without loops")
}

fn check_order(n: usize) -> Result<()> {
    if !(2..=MAX_ENUM_ORDER).contains(&n) {
        return Err(Error::OutOfRange(format!("enumeration order {n} not in 2..={MAX_ENUM_ORDER}")));
    }
    Ok(())
}

fn shard_range(n: usize, shard: Option<Shard>) -> Result<(u64, u64)> {
    let total = 1u128 << edge_slots(n);
    let Some(Shard { index, count }) = shard else {
        return Ok((0, total as u64));
    };
    if count == 0 || index >= count {
        return Err(Error::OutOfRange(format!("shard {index} of {count}")));
    }
    let at = |i: usize| (total * i as u128 / count as u128) as u64;
    Ok((at(index), at(index + 1)))
}

/// Every connected labeled graph on `n` vertices once, in bitmask order.
pub fn enumerate_connected(n: usize, shard: Option<Shard>) -> Result<impl Iterator<Item = Graph>> {
    check_order(n)?;
    let (lo, hi) = shard_range(n, shard)?;
    Ok((lo..hi).map(move |mask| graph_from_mask(n, mask)).filter(Graph::is_connected))
}

/// One canonical representative per isomorphism class, ordered by canonical key.
pub fn enumerate_connected_dedup(n: usize) -> Result<Vec<Graph>> {
    enumerate_dedup(n, 1).map(|(_, _, graphs)| graphs)
}

/// Number of labeled masks, connected graphs and canonical classes.
fn enumerate_dedup(n: usize, workers: usize) -> Result<(u64, u64, Vec<Graph>)> {
    check_order(n)?;
    let chunks = chunk_count(n, workers);
    let parts = parallel_map(chunks, workers, |c| {
        let mut seen: BTreeMap<Vec<u8>, Graph> = BTreeMap::new();
        let mut connected = 0u64;
        for g in enumerate_connected(n, Some(Shard { index: c, count: chunks }))? {
            connected += 1;
            let key = canonical_key(&g)?;
            if let std::collections::btree_map::Entry::Vacant(e) = seen.entry(key) {
                e.insert(canonical_form(&g)?);
            }
        }
        Ok((connected, seen))
    })?;
    let mut all = BTreeMap::new();
    let mut connected = 0;
    for (c, seen) in parts {
        connected += c;
        all.extend(seen);
    }
    Ok((1u64 << edge_slots(n), connected, all.into_values().collect()))
}

fn chunk_count(n: usize, workers: usize) -> usize {
    let total = 1usize << edge_slots(n);
    total.min(workers.max(1) * CHUNKS_PER_WORKER)
}

/// Runs `f` on `0..units` with up to `workers` threads; results keep unit order.
fn parallel_map<T: Send>(units: usize, workers: usize, f: impl Fn(usize) -> Result<T> + Sync) -> Result<Vec<T>> {
    let workers = workers.clamp(1, units.max(1));
    if workers == 1 {
        return (0..units).map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Result<T>>>> = Mutex::new((0..units).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= units {
                    break;
                }
                let r = f(i);
                slots.lock().expect("worker panicked")[i] = Some(r);
            });
        }
    });
    slots.into_inner().expect("worker panicked").into_iter().map(|r| r.expect("every unit ran")).collect()
}

#[derive(Clone, Copy, Debug)]
pub struct RunConfig {
    pub workers: usize,
    /// Check one representative per isomorphism class instead of every labeling.
    pub dedup: bool,
    /// Record wall-clock duration; off keeps reports byte-identical across runs.
    pub timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { workers: 1, dedup: false, timing: false }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Scope {
    Exhaustive { n_min: usize, n_max: usize, dedup: bool },
    StarGrid { grid: StarGrid, join_n0_max: Option<usize> },
    Fixtures { count: usize },
    Samples { pairs: usize, seed: u64, max_order: usize },
    Paths { k_min: usize, k_max: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Totals {
    pub scanned: u64,
    pub connected: u64,
    /// Isomorphism classes checked, when deduplicating.
    pub distinct: Option<u64>,
    pub checked: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub claim: String,
    pub pass: bool,
    pub checked: u64,
    pub failures: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub claim: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph6: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<String>,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<ClassReport>,
    /// Failing inputs with the same key (isomorphic graphs, equal parameters).
    pub occurrences: u64,
    #[serde(skip)]
    key: Vec<u8>,
}

impl Counterexample {
    fn for_graph(g: &Graph, detail: String, report: Option<ClassReport>) -> Result<Self> {
        let key = if g.n() <= crate::canon::MAX_CANON_ORDER { canonical_key(g)? } else { to_graph6(g).into_bytes() };
        Ok(Counterexample { claim: String::new(), graph6: Some(to_graph6(g)), params: None, detail, report, occurrences: 1, key })
    }

    fn for_params(sp: &StarParams, detail: String) -> Self {
        let params = sp.to_string();
        let key = params.clone().into_bytes();
        Counterexample { claim: String::new(), graph6: Some(to_graph6(&star_extension(sp))), params: Some(params), detail, report: None, occurrences: 1, key }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub version: u32,
    pub name: String,
    pub scope: Scope,
    pub totals: Totals,
    pub pass: bool,
    pub verdicts: Vec<Verdict>,
    pub counterexamples: Vec<Counterexample>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration_ms: Option<u64>,
}

impl VerifyReport {
    pub fn verdict(&self, claim: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.claim == claim)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Human-readable summary, one line per claim.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let t = &self.totals;
        let _ = writeln!(out, "{}: {}", self.name, if self.pass { "PASS" } else { "FAIL" });
        let _ = write!(out, "  scanned {}, connected {}, checked {}", t.scanned, t.connected, t.checked);
        if let Some(d) = t.distinct {
            let _ = write!(out, ", distinct {d}");
        }
        out.push('\n');
        for v in &self.verdicts {
            let _ = writeln!(out, "  [{}] {} ({} checked, {} failed)", if v.pass { "pass" } else { "FAIL" }, v.claim, v.checked, v.failures);
        }
        for c in &self.counterexamples {
            let what = c.params.as_deref().or(c.graph6.as_deref()).unwrap_or("-");
            let _ = writeln!(out, "  counterexample {} {what}: {} (x{})", c.claim, c.detail, c.occurrences);
        }
        for n in &self.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        if let Some(ms) = self.duration_ms {
            let _ = writeln!(out, "  duration {ms} ms");
        }
        out
    }
}

/// Per-claim tallies with deduplicated, capped counterexamples.
struct Collector {
    claims: Vec<String>,
    checked: Vec<u64>,
    failures: Vec<u64>,
    examples: Vec<Counterexample>,
    index: HashMap<(usize, Vec<u8>), usize>,
    kept: Vec<usize>,
}

impl Collector {
    fn new<S: AsRef<str>>(claims: &[S]) -> Self {
        let k = claims.len();
        Collector { claims: claims.iter().map(|c| c.as_ref().to_string()).collect(), checked: vec![0; k], failures: vec![0; k], examples: Vec::new(), index: HashMap::new(), kept: vec![0; k] }
    }

    fn pass(&mut self, claim: usize) {
        self.checked[claim] += 1;
    }

    fn fail(&mut self, claim: usize, ce: Counterexample) {
        self.checked[claim] += 1;
        self.failures[claim] += 1;
        self.add_example(claim, ce);
    }

    fn check(&mut self, claim: usize, ok: bool, ce: impl FnOnce() -> Result<Counterexample>) -> Result<()> {
        if ok {
            self.pass(claim);
        } else {
            self.fail(claim, ce()?);
        }
        Ok(())
    }

    fn add_example(&mut self, claim: usize, mut ce: Counterexample) {
        if let Some(&i) = self.index.get(&(claim, ce.key.clone())) {
            self.examples[i].occurrences += ce.occurrences;
        } else if self.kept[claim] < MAX_COUNTEREXAMPLES {
            ce.claim = self.claims[claim].clone();
            self.index.insert((claim, ce.key.clone()), self.examples.len());
            self.kept[claim] += 1;
            self.examples.push(ce);
        }
    }

    fn merge(&mut self, other: Collector) {
        for k in 0..self.claims.len() {
            self.checked[k] += other.checked[k];
            self.failures[k] += other.failures[k];
        }
        for ce in other.examples {
            let claim = self.claims.iter().position(|c| *c == ce.claim).expect("same claim list");
            self.add_example(claim, ce);
        }
    }

    fn finish(self, name: &str, scope: Scope, mut totals: Totals, notes: Vec<String>, started: Option<Instant>) -> VerifyReport {
        let verdicts: Vec<Verdict> = (0..self.claims.len())
            .map(|k| Verdict { claim: self.claims[k].clone(), pass: self.failures[k] == 0, checked: self.checked[k], failures: self.failures[k] })
            .collect();
        totals.checked = self.checked.iter().copied().max().unwrap_or(0);
        VerifyReport {
            version: REPORT_VERSION,
            name: name.into(),
            scope,
            totals,
            pass: verdicts.iter().all(|v| v.pass),
            verdicts,
            counterexamples: self.examples,
            notes,
            duration_ms: started.map(|t| t.elapsed().as_millis() as u64),
        }
    }
}

type GraphCheck<'a> = dyn Fn(&Graph, &mut FactsCache, &mut Collector) -> Result<()> + Sync + 'a;

/// Runs `check` over every connected graph with `2 <= n <= n_max`.
fn exhaustive(name: &str, claims: &[&str], n_max: usize, cfg: RunConfig, check: &GraphCheck<'_>) -> Result<VerifyReport> {
    let started = cfg.timing.then(Instant::now);
    check_order(n_max)?;
    let mut col = Collector::new(claims);
    let mut totals = Totals { distinct: cfg.dedup.then_some(0), ..Totals::default() };
    for n in 2..=n_max {
        if cfg.dedup {
            let (scanned, connected, graphs) = enumerate_dedup(n, cfg.workers)?;
            totals.scanned += scanned;
            totals.connected += connected;
            totals.distinct = totals.distinct.map(|d| d + graphs.len() as u64);
            let chunk = graphs.len().div_ceil(cfg.workers.max(1) * CHUNKS_PER_WORKER).max(1);
            let parts = parallel_map(graphs.len().div_ceil(chunk), cfg.workers, |c| {
                let mut local = Collector::new(claims);
                let mut cache = FactsCache::new();
                for g in &graphs[c * chunk..((c + 1) * chunk).min(graphs.len())] {
                    check(g, &mut cache, &mut local)?;
                }
                Ok(local)
            })?;
            parts.into_iter().for_each(|p| col.merge(p));
        } else {
            let chunks = chunk_count(n, cfg.workers);
            let parts = parallel_map(chunks, cfg.workers, |c| {
                let mut local = Collector::new(claims);
                let mut cache = FactsCache::new();
                let mut connected = 0u64;
                for g in enumerate_connected(n, Some(Shard { index: c, count: chunks }))? {
                    connected += 1;
                    check(&g, &mut cache, &mut local)?;
                }
                Ok((connected, local))
            })?;
            totals.scanned += 1u64 << edge_slots(n);
            for (connected, p) in parts {
                totals.connected += connected;
                col.merge(p);
            }
        }
    }
    let scope = Scope::Exhaustive { n_min: 2, n_max, dedup: cfg.dedup };
    Ok(col.finish(name, scope, totals, Vec::new(), started))
}

fn class_detail(r: &ClassReport) -> String {
    let mut d = format!("spectral {} vs structural {}", r.spectral.member, r.structural.member);
    if let Some(p) = &r.structural.params {
        let _ = write!(d, " ({p})");
    }
    if !r.witnesses.is_empty() {
        let _ = write!(d, "; {}", r.witnesses.join(", "));
    }
    d
}

pub fn verify_theorem1(n_max: usize, cfg: RunConfig) -> Result<VerifyReport> {
    verify_theorem1_with(n_max, cfg, theorem1_predicate)
}

/// Exhaustive run with a replacement parameter predicate, for mutation tests.
pub fn verify_theorem1_with(n_max: usize, cfg: RunConfig, pred: impl Fn(&StarParams) -> bool + Sync) -> Result<VerifyReport> {
    exhaustive("theorem1", &["theorem1"], n_max, cfg, &|g, cache, col| {
        let r = theorem1_check_with(g, cache, &pred)?;
        col.check(0, r.agree, || Counterexample::for_graph(g, class_detail(&r), Some(r.clone())))
    })
}

/// Theorem 1.1 over the star extensions of a parameter grid: spectral
/// membership of each constructed graph against `pred`.
pub fn verify_theorem1_grid(grid: StarGrid, cfg: RunConfig, pred: impl Fn(&StarParams) -> bool + Sync) -> Result<VerifyReport> {
    let started = cfg.timing.then(Instant::now);
    let params = grid.params();
    let parts = parallel_map(params.len(), cfg.workers, |i| {
        let sp = &params[i];
        let mut col = Collector::new(&["theorem1"]);
        let g = star_extension(sp);
        let r = theorem1_check_with(&g, &mut FactsCache::new(), &pred)?;
        col.check(0, r.agree, || {
            let mut detail = class_detail(&r);
            let forbidden = forbidden_report(sp);
            if !forbidden.is_empty() {
                let _ = write!(detail, "; contains {}", forbidden.join(", "));
            }
            Ok(Counterexample::for_params(sp, detail))
        })?;
        Ok(col)
    })?;
    let mut col = Collector::new(&["theorem1"]);
    parts.into_iter().for_each(|p| col.merge(p));
    let totals = Totals { scanned: params.len() as u64, connected: params.len() as u64, ..Totals::default() };
    Ok(col.finish("theorem1-grid", Scope::StarGrid { grid, join_n0_max: None }, totals, Vec::new(), started))
}

pub const THEOREM2_AGREEMENT: &str = "theorem2(ii)";
pub const THEOREM2_NO_SINGLE: &str = "theorem2(i)";

pub fn verify_theorem2(n_max: usize, cfg: RunConfig) -> Result<VerifyReport> {
    verify_theorem2_with(n_max, cfg, is_complete_bipartite)
}

/// Exhaustive run with a replacement structural side, for mutation tests.
pub fn verify_theorem2_with(n_max: usize, cfg: RunConfig, structural: impl Fn(&Graph) -> bool + Sync) -> Result<VerifyReport> {
    exhaustive("theorem2", &[THEOREM2_AGREEMENT, THEOREM2_NO_SINGLE], n_max, cfg, &|g, cache, col| {
        let r = theorem2_check_with(g, cache, &structural)?;
        let outside = r.spectral.counts.as_ref().map_or(0, |f| f.outside_minus_two_zero());
        col.check(0, r.spectral.member == r.structural.member, || Counterexample::for_graph(g, class_detail(&r), Some(r.clone())))?;
        col.check(1, outside != 1, || Counterexample::for_graph(g, "exactly one eigenvalue outside {-2, 0}".into(), Some(r.clone())))
    })
}

pub fn verify_smith(n_max: usize, cfg: RunConfig) -> Result<VerifyReport> {
    exhaustive("smith", &["smith"], n_max, cfg, &|g, cache, col| {
        let r = smith_check_cached(g, cache)?;
        col.check(0, r.agree, || Counterexample::for_graph(g, class_detail(&r), Some(r.clone())))
    })
}

/// Grid for the closed-form checks: star parameters plus joins
/// `K_{n0} ∨ K_{n1,...,nl}` with `n0 <= join_n0_max`, parts of size at least
/// two totaling at most `grid.parts_total_max`, and order at most `grid.n_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedFormGrid {
    pub stars: StarGrid,
    pub join_n0_max: usize,
}

impl Default for ClosedFormGrid {
    fn default() -> Self {
        ClosedFormGrid { stars: StarGrid { t0_max: 5, p_max: 4, parts_total_max: 8, n_max: 14 }, join_n0_max: 3 }
    }
}

impl ClosedFormGrid {
    pub fn joins(&self) -> Vec<(usize, Vec<usize>)> {
        let mut parts = Vec::new();
        multipartitions(self.stars.parts_total_max, self.stars.parts_total_max, &mut Vec::new(), &mut parts);
        let mut out = Vec::new();
        for n0 in 1..=self.join_n0_max {
            for p in &parts {
                if p.len() >= 2 && n0 + p.iter().sum::<usize>() <= self.stars.n_max {
                    out.push((n0, p.clone()));
                }
            }
        }
        out
    }
}

fn multipartitions(budget: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    out.push(current.clone());
    for s in (2..=max.min(budget)).rev() {
        current.push(s);
        multipartitions(budget - s, s, current, out);
        current.pop();
    }
}

/// Parameters whose tabled spectrum is known to disagree with the factored
/// polynomial: a center of one vertex and no clique parts.
pub fn closed_form_whitelisted(sp: &StarParams) -> bool {
    sp.t0() == 1 && sp.q() == 0 && sp.p() >= 2
}

pub const CF_STAR_POLY: &str = "star char poly";
pub const CF_JOIN_POLY: &str = "join char poly";
pub const CF_SPECTRUM: &str = "closed-form spectrum";
pub const CF_WHITELIST: &str = "discrepancy whitelist";

pub fn verify_closed_forms(grid: ClosedFormGrid, cfg: RunConfig) -> Result<VerifyReport> {
    let started = cfg.timing.then(Instant::now);
    let claims = [CF_STAR_POLY, CF_JOIN_POLY, CF_SPECTRUM, CF_WHITELIST];
    let stars = grid.stars.params();
    let joins = grid.joins();
    let star_parts = parallel_map(stars.len(), cfg.workers, |i| {
        let sp = &stars[i];
        let mut col = Collector::new(&claims);
        let mut notes = Vec::new();
        let g = star_extension(sp);
        let m = anti_adjacency(&g)?;
        let exact = char_poly_exact(&m)?;
        let formula = star_char_poly(sp).expand();
        col.check(0, formula == exact, || Ok(Counterexample::for_params(sp, format!("formula {formula} vs exact {exact}"))))?;
        if theorem1_predicate(sp) {
            let cf = closed_form_spectrum(sp)?;
            let numeric = eigenvalues(&m);
            let close = cf.spectrum.values.len() == numeric.values.len()
                && cf.spectrum.values.iter().zip(&numeric.values).all(|(a, b)| (a - b).abs() <= SPECTRUM_TOLERANCE);
            col.check(2, close, || Ok(Counterexample::for_params(sp, format!("closed form {:?} vs numeric {:?}", cf.spectrum.values, numeric.values))))?;
            let flagged = !cf.discrepancies.is_empty();
            col.check(3, flagged == closed_form_whitelisted(sp), || {
                Ok(Counterexample::for_params(sp, format!("flagged {flagged}, whitelisted {}", closed_form_whitelisted(sp))))
            })?;
            if flagged {
                for d in &cf.discrepancies {
                    notes.push(format!("{sp}: {:?} tabled {}, found {}", d.block, d.claimed, d.found));
                }
            }
        }
        Ok((col, notes))
    })?;
    let join_parts = parallel_map(joins.len(), cfg.workers, |i| {
        let (n0, parts) = &joins[i];
        let mut col = Collector::new(&claims);
        let g = Graph::complete(*n0).join(&Graph::complete_multipartite(parts));
        let exact = char_poly_exact(&anti_adjacency(&g)?)?;
        let formula = join_char_poly(*n0, parts)?.expand();
        col.check(1, formula == exact, || {
            Counterexample::for_graph(&g, format!("K{n0} join K{parts:?}: formula {formula} vs exact {exact}"), None)
        })?;
        Ok(col)
    })?;
    let mut col = Collector::new(&claims);
    let mut notes = Vec::new();
    for (p, n) in star_parts {
        col.merge(p);
        notes.extend(n);
    }
    join_parts.into_iter().for_each(|p| col.merge(p));
    let count = (stars.len() + joins.len()) as u64;
    let totals = Totals { scanned: count, connected: count, ..Totals::default() };
    let scope = Scope::StarGrid { grid: grid.stars, join_n0_max: Some(grid.join_n0_max) };
    Ok(col.finish("closed-forms", scope, totals, notes, started))
}

pub const HL_PREMISE: &str = "median eigenvalues non-positive except K2";
pub const HL_STATEMENT: &str = "statement fires once and matches ladder";
pub const HL_AGREEMENT: &str = "ladder agrees with numeric";
pub const HL_WHITELIST: &str = "disagreements are exactly t0=1, q=0";

/// The one case-(ii) subcase whose tabled value `0` the spectrum contradicts.
pub fn hl_whitelisted(sp: &StarParams, regime: &str) -> bool {
    sp.t0() == 1 && sp.q() == 0 && regime == "1.3(ii)"
}

pub fn verify_hl(grid: StarGrid, cfg: RunConfig) -> Result<VerifyReport> {
    let started = cfg.timing.then(Instant::now);
    let claims = [HL_PREMISE, HL_STATEMENT, HL_AGREEMENT, HL_WHITELIST];
    let params: Vec<StarParams> = grid.params().into_iter().filter(theorem1_predicate).collect();
    let parts = parallel_map(params.len(), cfg.workers, |i| {
        let sp = &params[i];
        let mut col = Collector::new(&claims);
        let r = hl_agreement(sp)?;
        let regime = r.regime.clone().unwrap_or_default();
        // For n = 2 the index H = 1 points at the positive eigenvalue.
        let premise = r.xi_h <= HL_TOLERANCE && r.xi_l <= HL_TOLERANCE && (r.r - r.xi_l.abs()).abs() <= 1e-12;
        col.check(0, premise != (sp.n() == 2), || Ok(Counterexample::for_params(sp, format!("xi_H {} xi_L {} R {}", r.xi_h, r.xi_l, r.r))))?;
        let fired = hl_statement(sp)?;
        let single = fired.len() == 1 && fired[0].0 == regime;
        col.check(1, single, || Ok(Counterexample::for_params(sp, format!("statement fired {fired:?}, ladder {regime}"))))?;
        let agree = r.agreement == Some(true);
        let white = hl_whitelisted(sp, &regime);
        let detail = || format!("{regime} predicts {} but R = {}", r.prediction.map(|p| p.to_string()).unwrap_or_default(), r.r);
        col.check(2, agree || white, || Ok(Counterexample::for_params(sp, detail())))?;
        col.check(3, agree != white, || Ok(Counterexample::for_params(sp, format!("agreement {agree}, whitelisted {white}"))))?;
        let note = (!agree).then(detail).map(|d| format!("{sp}: {d}"));
        Ok((col, note, regime))
    })?;
    let mut col = Collector::new(&claims);
    let mut notes = Vec::new();
    let mut regimes: BTreeMap<String, usize> = BTreeMap::new();
    for (p, note, regime) in parts {
        col.merge(p);
        notes.extend(note);
        *regimes.entry(regime).or_default() += 1;
    }
    notes.push(format!("regimes: {}", regimes.iter().map(|(k, v)| format!("{k} x{v}")).collect::<Vec<_>>().join(", ")));
    let totals = Totals { scanned: grid.params().len() as u64, connected: params.len() as u64, ..Totals::default() };
    Ok(col.finish("hl-index", Scope::StarGrid { grid, join_n0_max: None }, totals, notes, started))
}

pub const TABLE1_POSITIVE: &str = "all xi2 positive";

/// Second largest eigenvalue of an integer polynomial with all roots real:
/// exact positivity and a tight enclosure.
fn second_root(p: &crate::ExactPoly) -> Result<(bool, f64, f64)> {
    let rp = p.to_rational();
    let width = BigRational::new(BigInt::from(1), BigInt::from(1) << 50);
    let roots = isolate_roots(&rp, &width);
    let k = roots.len();
    if k < 2 {
        return Err(Error::Invariant("fewer than two distinct roots".into()));
    }
    let (lo1, hi1) = &roots[k - 1];
    let top_simple = count_roots(&rp, &Bound::Finite(lo1.clone()), &Bound::Finite(hi1.clone()), true)? == 1;
    let positive = count_roots_open(&rp, &Bound::int(0), &Bound::PosInf, true)?;
    let (lo, hi) = &roots[if top_simple { k - 2 } else { k - 1 }];
    let f = crate::scalar::to_f64_lossy;
    Ok((positive >= 2, f(lo), f(hi)))
}

pub fn verify_table1() -> Result<VerifyReport> {
    let fixtures = table1();
    let mut claims: Vec<String> = fixtures.iter().map(|f| f.label.clone()).collect();
    claims.push(TABLE1_POSITIVE.into());
    let mut col = Collector::new(&claims);
    let mut notes = Vec::new();
    for (i, fx) in fixtures.iter().enumerate() {
        let sp = fx.params();
        let m = anti_adjacency(&star_extension(&sp))?;
        let (positive, lo, hi) = second_root(&char_poly_exact(&m)?)?;
        let xi2 = (lo + hi) / 2.0;
        let numeric = eigenvalues(&m).xi(2);
        let dual = (numeric - xi2).abs() <= SPECTRUM_TOLERANCE;
        let (ok, expect) = match (&fx.closed_form, fx.truncated) {
            (Some(c), _) => ((xi2 - c.value()).abs() <= TABLE1_TOLERANCE, format!("{} = {:.12}", fx.printed, c.value())),
            (None, Some(t)) => (t <= xi2 && xi2 < t + 1e-3, format!("[{t}, {})", t + 1e-3)),
            (None, None) => (false, "no tabled value".into()),
        };
        notes.push(format!("{} {}: xi2 = {xi2:.12} (exact enclosure), {numeric:.12} (numeric), tabled {expect}", fx.label, fx.graph));
        col.check(i, ok && dual, || Ok(Counterexample::for_params(&sp, format!("xi2 {xi2:.12}, numeric {numeric:.12}, tabled {expect}"))))?;
        col.check(claims.len() - 1, positive, || Ok(Counterexample::for_params(&sp, format!("xi2 {xi2:.12} not positive"))))?;
    }
    let count = fixtures.len() as u64;
    let totals = Totals { scanned: count, connected: count, ..Totals::default() };
    Ok(col.finish("table1", Scope::Fixtures { count: fixtures.len() }, totals, notes, None))
}

pub const INTERLACING: &str = "interlacing";

/// Connected graph on `n` vertices from edge density `density`, retrying until connected.
fn random_connected(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    loop {
        let density: f64 = rng.gen_range(0.2..0.8);
        let mask = (0..edge_slots(n)).fold(0u64, |m, k| if rng.gen_bool(density) { m | 1 << k } else { m });
        let g = graph_from_mask(n, mask);
        if g.is_connected() {
            return g;
        }
    }
}

/// Ball of random radius around a random vertex, shrunk by one vertex when it
/// covers the whole graph.
fn random_ball(rng: &mut ChaCha8Rng, g: &Graph) -> Vec<usize> {
    let n = g.n();
    let dm = distances(g);
    let ecc = ecc_profile(&dm).ecc;
    let v = rng.gen_range(0..n);
    let reach = match ecc[v] {
        Distance::Finite(e) => e.max(1),
        Distance::Infinite => 1,
    };
    let radius = rng.gen_range(1..=reach);
    let mut ball: Vec<usize> = (0..n).filter(|&u| dm.get(v, u).finite().is_some_and(|d| d <= radius)).collect();
    if ball.len() == n {
        let drop = ball[rng.gen_range(0..n)];
        if drop != v {
            ball.retain(|&u| u != drop);
        }
    }
    ball
}

/// Collects `pairs` random `(G, H)` with `H` an induced ball of `G` meeting
/// the principal-submatrix hypotheses, and checks eigenvalue interlacing.
pub fn verify_interlacing(pairs: usize, seed: u64, max_order: usize) -> Result<VerifyReport> {
    if !(3..=crate::canon::MAX_CANON_ORDER).contains(&max_order) {
        return Err(Error::OutOfRange(format!("sampling order {max_order} not in 3..=10")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut col = Collector::new(&[INTERLACING]);
    let (mut attempts, mut proper) = (0u64, 0u64);
    let cap = 1000 * pairs.max(1) as u64;
    while (col.checked[0] as usize) < pairs && attempts < cap {
        attempts += 1;
        let n = rng.gen_range(3..=max_order);
        let g = random_connected(&mut rng, n);
        let vs = random_ball(&mut rng, &g);
        match crate::spectral::submatrix_conditions(&g, &vs) {
            Ok(true) => {}
            Ok(false) | Err(Error::Disconnected) => continue,
            Err(e) => return Err(e),
        }
        if vs.len() < n {
            proper += 1;
        }
        let big = eigenvalues(&anti_adjacency(&g)?).values;
        let h = crate::graph::induced_subgraph(&g, &vs)?;
        let small = eigenvalues(&anti_adjacency(&h)?).values;
        col.check(0, interlaces(&big, &small, INTERLACING_TOLERANCE), || {
            Counterexample::for_graph(&g, format!("subset {vs:?}: G {big:?}, H {small:?}"), None)
        })?;
    }
    let notes = vec![format!(
        "{} of {attempts} sampled pairs met the hypotheses ({proper} with a proper subset)",
        col.checked[0]
    )];
    let mut report = col.finish(
        "interlacing",
        Scope::Samples { pairs, seed, max_order },
        Totals { scanned: attempts, connected: attempts, ..Totals::default() },
        notes,
        None,
    );
    if (report.totals.checked as usize) < pairs {
        report.pass = false;
        report.notes.push(format!("only {} qualifying pairs within {cap} attempts", report.totals.checked));
    }
    Ok(report)
}

pub const NULLITY_ODD: &str = "nullity P_{2k+1} = 2k-3";
pub const NULLITY_EVEN: &str = "nullity P_{2k} = 2k-4";
pub const NULLITY_P4: &str = "nullity P_4 = 0";

pub fn verify_nullity_paths(k_min: usize, k_max: usize) -> Result<VerifyReport> {
    if k_min < 3 || k_max < k_min {
        return Err(Error::OutOfRange(format!("path range k in {k_min}..={k_max} needs 3 <= k_min <= k_max")));
    }
    let mut col = Collector::new(&[NULLITY_ODD, NULLITY_EVEN, NULLITY_P4]);
    let mut notes = Vec::new();
    let mut check = |col: &mut Collector, claim: usize, m: usize, expected: usize| -> Result<()> {
        let g = Graph::path(m);
        let eta = exact_nullity(&anti_adjacency(&g)?);
        notes.push(format!("P{m}: nullity {eta}"));
        col.check(claim, eta == expected, || Counterexample::for_graph(&g, format!("P{m}: nullity {eta}, expected {expected}"), None))
    };
    for k in k_min..=k_max {
        check(&mut col, 1, 2 * k, 2 * k - 4)?;
        check(&mut col, 0, 2 * k + 1, 2 * k - 3)?;
    }
    check(&mut col, 2, 4, 0)?;
    let count = (2 * (k_max - k_min + 1) + 1) as u64;
    let totals = Totals { scanned: count, connected: count, ..Totals::default() };
    Ok(col.finish("nullity", Scope::Paths { k_min, k_max }, totals, notes, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn connected_counts() {
        assert_eq!(enumerate_connected(3, None).unwrap().count(), 4);
        assert_eq!(enumerate_connected(4, None).unwrap().count(), 38);
        assert_eq!(enumerate_connected_dedup(3).unwrap().len(), 2);
        assert_eq!(enumerate_connected_dedup(4).unwrap().len(), 6);
        assert_eq!(enumerate_connected_dedup(5).unwrap().len(), 21);
    }

    #[test]
    fn shards_partition_the_stream() {
        let all: Vec<String> = enumerate_connected(5, None).unwrap().map(|g| to_graph6(&g)).collect();
        let mut joined = Vec::new();
        for index in 0..2 {
            joined.extend(enumerate_connected(5, Some(Shard { index, count: 2 })).unwrap().map(|g| to_graph6(&g)));
        }
        assert_eq!(all, joined);
        let unique: HashSet<&String> = all.iter().collect();
        assert_eq!(unique.len(), all.len());
    }

    #[test]
    fn order_bounds() {
        assert!(enumerate_connected(1, None).is_err());
        assert!(enumerate_connected(9, None).is_err());
        assert!(enumerate_connected(4, Some(Shard { index: 2, count: 2 })).is_err());
    }

    #[test]
    fn mask_order_matches_graph6() {
        let g = graph_from_mask(4, 0b100101);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && g.has_edge(2, 3));
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn small_exhaustive_runs_pass() {
        let cfg = RunConfig::default();
        for r in [verify_theorem1(5, cfg).unwrap(), verify_theorem2(5, cfg).unwrap(), verify_smith(5, cfg).unwrap()] {
            assert!(r.pass, "{}", r.to_text());
            assert!(r.counterexamples.is_empty());
            assert!(r.totals.connected <= r.totals.scanned);
        }
    }

    #[test]
    fn dedup_and_workers_give_same_verdicts() {
        let a = verify_theorem1(5, RunConfig::default()).unwrap();
        let b = verify_theorem1(5, RunConfig { workers: 3, ..RunConfig::default() }).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        let c = verify_theorem1(5, RunConfig { dedup: true, ..RunConfig::default() }).unwrap();
        assert!(c.pass);
        assert_eq!(c.totals.distinct, Some(1 + 2 + 6 + 21));
    }

    #[test]
    fn theorem2_mutant_finds_octahedron() {
        let mutant = |g: &Graph| crate::characterize::complete_multipartite_parts(g).is_some_and(|p| p.len() == 2 || p.len() == 3);
        let r = verify_theorem2_with(6, RunConfig::default(), mutant).unwrap();
        assert!(!r.pass);
        let octa = to_graph6(&canonical_form(&Graph::complete_multipartite(&[2, 2, 2])).unwrap());
        let found: Vec<String> = r.counterexamples.iter().filter_map(|c| c.graph6.clone()).map(|s| {
            to_graph6(&canonical_form(&crate::graph6::parse_graph6(&s).unwrap()).unwrap())
        }).collect();
        assert!(found.contains(&octa));
    }

    #[test]
    fn theorem1_grid_mutant_is_caught() {
        let grid = StarGrid { t0_max: 5, p_max: 4, parts_total_max: 4, n_max: 10 };
        assert!(verify_theorem1_grid(grid, RunConfig::default(), theorem1_predicate).unwrap().pass);
        let mutant = |sp: &StarParams| match sp.t0() {
            t if t >= 5 => sp.p() + sp.q() <= 3,
            _ => theorem1_predicate(sp),
        };
        let r = verify_theorem1_grid(grid, RunConfig::default(), mutant).unwrap();
        assert!(!r.pass);
        let f1 = r.counterexamples.iter().find(|c| c.params.as_deref() == Some("S(5,-3)")).unwrap();
        assert!(f1.detail.contains("F1"));
        assert!(r.counterexamples.iter().any(|c| c.detail.contains("F2")));
    }

    #[test]
    fn closed_forms_small_grid() {
        let grid = ClosedFormGrid { stars: StarGrid { t0_max: 3, p_max: 3, parts_total_max: 6, n_max: 10 }, join_n0_max: 2 };
        let r = verify_closed_forms(grid, RunConfig::default()).unwrap();
        assert!(r.pass, "{}", r.to_text());
        assert!(r.notes.iter().any(|n| n.starts_with("S(1,-2)")));
    }

    #[test]
    fn table1_regression() {
        let r = verify_table1().unwrap();
        assert!(r.pass, "{}", r.to_text());
        assert_eq!(r.verdicts.len(), 13);
    }

    #[test]
    fn nullity_examples() {
        let r = verify_nullity_paths(3, 5).unwrap();
        assert!(r.pass, "{}", r.to_text());
        assert!(r.notes.contains(&"P11: nullity 7".to_string()));
        assert!(r.notes.contains(&"P10: nullity 6".to_string()));
        assert!(verify_nullity_paths(2, 5).is_err());
    }

    #[test]
    fn interlacing_is_deterministic() {
        let a = verify_interlacing(40, 7, 8).unwrap();
        let b = verify_interlacing(40, 7, 8).unwrap();
        assert!(a.pass, "{}", a.to_text());
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.totals.checked, 40);
    }

    #[test]
    fn star_interlacing_example() {
        let g = Graph::star(3);
        let vs = [0, 1, 2];
        assert!(crate::spectral::submatrix_conditions(&g, &vs).unwrap());
        let big = eigenvalues(&anti_adjacency(&g).unwrap()).values;
        let small = eigenvalues(&anti_adjacency(&crate::graph::induced_subgraph(&g, &vs).unwrap()).unwrap()).values;
        assert!(interlaces(&big, &small, INTERLACING_TOLERANCE));
    }
}
