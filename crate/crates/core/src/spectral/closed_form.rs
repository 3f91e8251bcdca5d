//! Factored characteristic polynomials of star extensions and joins, and the
//! tabled spectrum of the one-positive-eigenvalue family with certified roots.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::eigen::Spectrum;
use super::poly::Poly;
use super::sturm::{count_roots, count_roots_open, isolate_roots, Bound};
use crate::characterize::theorem1_predicate;
use crate::error::{Error, Result};
use crate::extension::StarParams;
use crate::scalar::to_f64_lossy;

pub type ExactPoly = Poly<BigInt>;

/// `core · ∏ (x - r)^m` over the listed integer roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactoredPoly {
    pub linear: Vec<(i64, usize)>,
    pub core: ExactPoly,
}

impl FactoredPoly {
    fn new(linear: Vec<(i64, usize)>, core: ExactPoly) -> Self {
        FactoredPoly { linear: linear.into_iter().filter(|&(_, m)| m > 0).collect(), core }
    }

    pub fn expand(&self) -> ExactPoly {
        self.linear.iter().fold(self.core.clone(), |acc, &(r, m)| acc * Poly::linear_root(BigInt::from(r)).pow(m))
    }

    pub fn degree(&self) -> usize {
        self.core.degree().unwrap_or(0) + self.linear.iter().map(|&(_, m)| m).sum::<usize>()
    }
}

impl fmt::Display for FactoredPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for &(r, m) in &self.linear {
            let base = match r {
                0 => "x".to_string(),
                r if r < 0 => format!("(x + {})", -r),
                r => format!("(x - {r})"),
            };
            parts.push(if m == 1 { base } else { format!("{base}^{m}") });
        }
        if self.core != Poly::one() || parts.is_empty() {
            parts.push(format!("({})", self.core));
        }
        write!(f, "{}", parts.join(" "))
    }
}

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

fn lin(a: i64) -> ExactPoly {
    Poly::new(vec![int(a), int(1)])
}

/// `∏ (x + 2t_i)` over distinct part sizes, and the sum over `j` of
/// `k_j t_j ∏_{i≠j} (x + 2t_i)`.
fn part_products(sp: &StarParams) -> (ExactPoly, ExactPoly) {
    let parts = sp.parts();
    let full = parts.iter().fold(Poly::one(), |acc, &(t, _)| acc * lin(2 * t as i64));
    let mut sum = Poly::zero();
    for (j, &(tj, kj)) in parts.iter().enumerate() {
        let others = parts
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .fold(Poly::one(), |acc, (_, &(t, _))| acc * lin(2 * t as i64));
        sum = sum + others.scale(&int((kj * tj) as i64));
    }
    (full, sum)
}

/// The non-trivial factor: `h` when `p ≥ 1`, `l` when `p = 0`.
pub fn star_core(sp: &StarParams) -> ExactPoly {
    let (t0, p) = (sp.t0() as i64, sp.p() as i64);
    if sp.is_complete() {
        return Poly::one();
    }
    let (full, sum) = part_products(sp);
    let two_x = Poly::new(vec![int(2 - t0), int(2)]);
    if p >= 1 {
        let quad = Poly::new(vec![int(t0 * p - 2 * t0 - 2 * p + 2), int(3 - 2 * p - t0), int(1)]);
        quad * full - lin(2) * two_x * sum
    } else {
        lin(1 - t0) * full - two_x * sum
    }
}

/// Characteristic polynomial of `A(S(t0, -p, ...))` in factored form.
pub fn star_char_poly(sp: &StarParams) -> FactoredPoly {
    let n = sp.n();
    if sp.is_complete() {
        return FactoredPoly::new(vec![(n as i64 - 1, 1), (-1, n - 1)], Poly::one());
    }
    let (t0, p, q) = (sp.t0(), sp.p(), sp.q());
    let mut linear = vec![(0, n - t0 - p - q), (-1, t0 - 1)];
    if p >= 1 {
        linear.push((-2, p - 1));
    }
    linear.extend(sp.parts().iter().rev().map(|&(t, k)| (-2 * t as i64, k - 1)));
    FactoredPoly::new(linear, star_core(sp))
}

/// The bracketed factor for `K_{n0} ∨ K_{n1,...,nl}`.
pub fn join_core(n0: usize, parts: &[usize]) -> ExactPoly {
    let shifted = |r: usize| lin(2 - 2 * parts[r] as i64);
    let full = (0..parts.len()).fold(Poly::one(), |acc, r| acc * shifted(r));
    let mut sum = Poly::zero();
    for r in 0..parts.len() {
        let others = (0..parts.len()).filter(|&s| s != r).fold(Poly::one(), |acc, s| acc * shifted(s));
        sum = sum + others.scale(&int(parts[r] as i64));
    }
    lin(1 - n0 as i64) * full - sum.scale(&int(n0 as i64))
}

/// Characteristic polynomial of `A(K_{n0} ∨ K_{n1,...,nl})`, `l ≥ 2`, `n_r ≥ 2`.
pub fn join_char_poly(n0: usize, parts: &[usize]) -> Result<FactoredPoly> {
    if n0 == 0 || parts.len() < 2 || parts.iter().any(|&s| s < 2) {
        return Err(Error::InvalidParams(format!("join needs n0 >= 1 and at least two parts of size >= 2, got {n0} and {parts:?}")));
    }
    let n: usize = n0 + parts.iter().sum::<usize>();
    Ok(FactoredPoly::new(vec![(-1, n0 - 1), (-2, n - n0 - parts.len())], join_core(n0, parts)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BlockKind {
    /// The unique positive eigenvalue.
    Top,
    /// Eigenvalue 0 from the trivial `x^{n-t0-p-q}` factor.
    Zero,
    /// The core root the table places at 0.
    TabledZero,
    /// The core root in `(-1, 0)`.
    Second,
    MinusOne,
    MinusTwo,
    /// The core root in `(-2t_h, -2)`.
    FirstNegative,
    /// `-2t_i` from repeated parts, `i` indexing distinct sizes from the largest (1-based).
    Part(usize),
    /// The core root in `(-2t_i, -2t_{i+1})`.
    Between(usize),
}

/// A tabled value: exact, or a core root inside an open interval
/// (`None` endpoints are infinite).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Claim {
    Exact(i64),
    Interval(Option<i64>, Option<i64>),
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Claim::Exact(v) => write!(f, "={v}"),
            Claim::Interval(a, b) => {
                let lo = a.map_or("-inf".to_string(), |v| v.to_string());
                let hi = b.map_or("inf".to_string(), |v| v.to_string());
                write!(f, "in ({lo}, {hi})")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Block {
    pub kind: BlockKind,
    pub claim: Claim,
    pub multiplicity: usize,
    /// Whether the block is a root of the core factor.
    pub from_core: bool,
    pub value: f64,
    /// Certified interval for a core root, width at most `1e-10`.
    pub certified: Option<(f64, f64)>,
    pub confirmed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Discrepancy {
    pub block: BlockKind,
    pub claimed: String,
    pub found: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClosedForm {
    pub params: String,
    pub char_poly: FactoredPoly,
    pub blocks: Vec<Block>,
    pub spectrum: Spectrum,
    pub discrepancies: Vec<Discrepancy>,
}

/// Parameters where the table places a core root at 0.
pub fn tabled_zero_case(sp: &StarParams) -> bool {
    let (t0, p, q) = (sp.t0(), sp.p(), sp.q());
    (p >= 1 && t0 == 1 && q == 0) || (t0 == 3 && p + q == 4) || (t0 == 4 && p + q == 3)
}

fn block(kind: BlockKind, claim: Claim, multiplicity: usize, from_core: bool) -> Block {
    let value = match claim {
        Claim::Exact(v) => v as f64,
        Claim::Interval(..) => f64::NAN,
    };
    Block { kind, claim, multiplicity, from_core, value, certified: None, confirmed: !from_core }
}

/// Eigenvalue blocks in descending order as tabled for the family, without
/// locating the core roots.
pub fn tabled_blocks(sp: &StarParams) -> Result<Vec<Block>> {
    if !theorem1_predicate(sp) {
        return Err(Error::OutsideFamily(sp.to_string()));
    }
    let n = sp.n();
    if sp.is_complete() {
        return Ok(vec![
            block(BlockKind::Top, Claim::Exact(n as i64 - 1), 1, false),
            block(BlockKind::MinusOne, Claim::Exact(-1), n - 1, false),
        ]);
    }
    let (t0, p, q) = (sp.t0(), sp.p(), sp.q());
    let ts: Vec<i64> = sp.parts().iter().map(|&(t, _)| t as i64).collect();
    let h = ts.len();
    let mut out = vec![
        block(BlockKind::Top, Claim::Interval(Some(0), None), 1, true),
        block(BlockKind::Zero, Claim::Exact(0), n - t0 - p - q, false),
    ];
    if tabled_zero_case(sp) {
        out.push(block(BlockKind::TabledZero, Claim::Exact(0), 1, true));
    } else {
        out.push(block(BlockKind::Second, Claim::Interval(Some(-1), Some(0)), 1, true));
    }
    out.push(block(BlockKind::MinusOne, Claim::Exact(-1), t0 - 1, false));
    if p >= 1 {
        out.push(block(BlockKind::MinusTwo, Claim::Exact(-2), p - 1, false));
        if h >= 1 {
            out.push(block(BlockKind::FirstNegative, Claim::Interval(Some(-2 * ts[h - 1]), Some(-2)), 1, true));
        }
    }
    for i in (1..=h).rev() {
        let k = sp.parts()[i - 1].1;
        out.push(block(BlockKind::Part(i), Claim::Exact(-2 * ts[i - 1]), k - 1, false));
        if i > 1 {
            out.push(block(BlockKind::Between(i - 1), Claim::Interval(Some(-2 * ts[i - 2]), Some(-2 * ts[i - 1])), 1, true));
        }
    }
    Ok(out)
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(int(v))
}

fn to_bound(v: Option<i64>, inf: Bound) -> Bound {
    v.map_or(inf, Bound::int)
}

/// Full spectrum of a family member from the factored polynomial.
///
/// Core roots are isolated exactly and matched to the tabled core blocks in
/// descending order. Values are always the certified roots; a block whose
/// claim fails is listed under `discrepancies`.
pub fn closed_form_spectrum(sp: &StarParams) -> Result<ClosedForm> {
    let mut blocks = tabled_blocks(sp)?;
    let char_poly = star_char_poly(sp);
    let core = char_poly.core.to_rational();
    let mut discrepancies = Vec::new();
    if core.degree().unwrap_or(0) > 0 {
        let width = BigRational::new(int(1), int(1) << 34);
        let mut roots = isolate_roots(&core, &width);
        roots.reverse();
        let slots: Vec<usize> = (0..blocks.len()).filter(|&i| blocks[i].from_core).collect();
        if roots.len() != slots.len() {
            discrepancies.push(Discrepancy {
                block: BlockKind::Top,
                claimed: format!("{} simple core roots", slots.len()),
                found: format!("{} distinct real core roots", roots.len()),
            });
        }
        let two = rat(2);
        for (rank, (&bi, (lo, hi))) in slots.iter().zip(&roots).enumerate() {
            let mid = to_f64_lossy(&((lo + hi) / &two));
            let b = &mut blocks[bi];
            b.certified = Some((to_f64_lossy(lo), to_f64_lossy(hi)));
            b.confirmed = match b.claim {
                Claim::Exact(v) => core.eval(&rat(v)).is_zero() && *lo < rat(v) && rat(v) <= *hi,
                Claim::Interval(a, c) => {
                    let (a, c) = (to_bound(a, Bound::NegInf), to_bound(c, Bound::PosInf));
                    let inside = count_roots_open(&core, &a, &c, false)? == 1;
                    let above = match &c {
                        Bound::PosInf => 0,
                        fin => count_roots(&core, fin, &Bound::PosInf, false)?,
                    };
                    inside && above == rank
                }
            };
            b.value = match b.claim {
                Claim::Exact(v) if b.confirmed => v as f64,
                _ => mid,
            };
            if !b.confirmed {
                discrepancies.push(Discrepancy {
                    block: b.kind,
                    claimed: b.claim.to_string(),
                    found: format!("core root in ({:.12}, {:.12}], about {mid:.12}", to_f64_lossy(lo), to_f64_lossy(hi)),
                });
            }
        }
    }
    let spectrum = tabled_spectrum(&blocks);
    Ok(ClosedForm { params: sp.to_string(), char_poly, blocks, spectrum, discrepancies })
}

fn tabled_spectrum(blocks: &[Block]) -> Spectrum {
    let mut values = Vec::new();
    let mut groups: Vec<(f64, usize)> = Vec::new();
    let mut annotations: Vec<String> = Vec::new();
    let mut order: Vec<&Block> = blocks.iter().filter(|b| b.multiplicity > 0).collect();
    order.sort_by(|a, b| b.value.total_cmp(&a.value));
    for b in order {
        values.extend(std::iter::repeat_n(b.value, b.multiplicity));
        let note = if b.confirmed { b.claim.to_string() } else { format!("{} (unconfirmed)", b.claim) };
        match groups.last_mut() {
            Some(g) if g.0 == b.value => {
                g.1 += b.multiplicity;
                if let Some(a) = annotations.last_mut() {
                    a.push_str("; ");
                    a.push_str(&note);
                }
            }
            _ => {
                groups.push((b.value, b.multiplicity));
                annotations.push(note);
            }
        }
    }
    Spectrum { values, groups, annotations }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(t0: usize, p: usize, parts: &[usize]) -> StarParams {
        StarParams::new(t0, p, parts).unwrap()
    }

    fn ip(c: &[i64]) -> ExactPoly {
        Poly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn path_three() {
        let f = star_char_poly(&sp(1, 2, &[]));
        assert_eq!(f.core, ip(&[-2, -2, 1]));
        assert_eq!(f.linear, vec![(-2, 1)]);
        assert_eq!(f.expand(), ip(&[-4, -6, 0, 1]));
        assert_eq!(f.to_string(), "(x + 2) (x^2 - 2x - 2)");
    }

    #[test]
    fn diamond() {
        let f = star_char_poly(&sp(2, 2, &[]));
        assert_eq!(f.core, ip(&[-2, -3, 1]));
        assert_eq!(f.linear, vec![(-1, 1), (-2, 1)]);
    }

    #[test]
    fn l_positive_at_minus_one() {
        for t in 2..6 {
            let l = star_core(&sp(1, 0, &[t, t]));
            assert!(l.eval(&int(-1)) > int(0));
        }
    }

    #[test]
    fn complete_graph_factors() {
        let f = star_char_poly(&sp(3, 1, &[]));
        assert_eq!(f.expand(), ip(&[-3, 1]) * ip(&[1, 1]).pow(3));
        assert_eq!(f.degree(), 4);
    }

    #[test]
    fn join_examples() {
        use crate::graph::Graph;
        use crate::spectral::{anti_adjacency, char_poly_exact};
        for (n0, parts) in [(1, vec![2, 2]), (2, vec![2, 2]), (1, vec![3, 2, 2])] {
            let g = Graph::complete(n0).join(&Graph::complete_multipartite(&parts));
            let exact = char_poly_exact(&anti_adjacency(&g).unwrap()).unwrap();
            assert_eq!(join_char_poly(n0, &parts).unwrap().expand(), exact);
        }
        for (n1, n2) in [(2, 2), (3, 2), (5, 4)] {
            assert_eq!(join_core(2, &[n1, n2]).eval(&int(-2)), int(-4 * (n1 * n2) as i64));
        }
        assert!(join_char_poly(1, &[2]).is_err());
        assert!(join_char_poly(1, &[2, 1]).is_err());
    }

    #[test]
    fn star_k13_closed_form() {
        let cf = closed_form_spectrum(&sp(1, 3, &[])).unwrap();
        let s7 = 7f64.sqrt();
        let want = [2.0 + s7, 2.0 - s7, -2.0, -2.0];
        assert!(cf.spectrum.values.iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-9));
        // the table's zero sits where the core has 2 - sqrt 7
        assert_eq!(cf.discrepancies.len(), 1);
    }

    #[test]
    fn diamond_closed_form() {
        let cf = closed_form_spectrum(&sp(2, 2, &[])).unwrap();
        assert!(cf.discrepancies.is_empty());
        let r = 17f64.sqrt();
        let want = [(3.0 + r) / 2.0, (3.0 - r) / 2.0, -1.0, -2.0];
        assert!(cf.spectrum.values.iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-9));
        assert!(cf.blocks.iter().all(|b| b.kind != BlockKind::Zero || b.multiplicity == 0));
    }

    #[test]
    fn p3_is_flagged() {
        let cf = closed_form_spectrum(&sp(1, 2, &[])).unwrap();
        assert_eq!(cf.discrepancies.len(), 1);
        assert_eq!(cf.discrepancies[0].block, BlockKind::TabledZero);
        assert!((cf.spectrum.values[1] - (1.0 - 3f64.sqrt())).abs() < 1e-9);
    }

    #[test]
    fn brackets_confirmed_with_parts() {
        let cf = closed_form_spectrum(&sp(3, 1, &[2, 2, 2])).unwrap();
        assert!(cf.discrepancies.is_empty(), "{:?}", cf.discrepancies);
        let cf = closed_form_spectrum(&sp(1, 1, &[4, 3, 2, 2])).unwrap();
        assert!(cf.discrepancies.is_empty(), "{:?}", cf.discrepancies);
    }

    #[test]
    fn outside_family() {
        assert!(matches!(closed_form_spectrum(&sp(5, 3, &[])), Err(Error::OutsideFamily(_))));
    }
}
