//! HL-index of anti-adjacency spectra and its regime ladder on the star family.

use std::fmt;

use serde::Serialize;

use crate::characterize::theorem1_predicate;
use crate::error::{Error, Result};
use crate::extension::{star_extension, StarParams};
use crate::spectral::{anti_adjacency, closed_form_spectrum, eigenvalues, tabled_blocks, BlockKind, Claim, Spectrum};

pub const HL_TOLERANCE: f64 = 1e-8;

/// Predicted value of `R`, as an absolute value or an open interval of absolute values.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Prediction {
    Point { value: f64 },
    /// `hi = None` is unbounded.
    Interval { lo: f64, hi: Option<f64> },
}

impl Prediction {
    /// Points match within `tol`; intervals must contain `r` strictly.
    pub fn admits(&self, r: f64, tol: f64) -> bool {
        match *self {
            Prediction::Point { value } => (r - value).abs() <= tol,
            Prediction::Interval { lo, hi } => lo < r && hi.is_none_or(|h| r < h),
        }
    }
}

impl fmt::Display for Prediction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Prediction::Point { value } => write!(f, "{value}"),
            Prediction::Interval { lo, hi: Some(hi) } => write!(f, "({lo}, {hi})"),
            Prediction::Interval { lo, hi: None } => write!(f, "({lo}, inf)"),
        }
    }
}

/// Numeric and closed-form spectra kept when a prediction fails.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MismatchSpectra {
    pub numeric: Vec<f64>,
    pub closed_form: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HLResult {
    pub n: usize,
    /// `H = floor((n+1)/2)`.
    pub h_index: usize,
    /// `L = ceil((n+1)/2)`.
    pub l_index: usize,
    pub xi_h: f64,
    pub xi_l: f64,
    /// `max(|xi_H|, |xi_L|)`.
    pub r: f64,
    /// Exact description of `xi_L` when the spectrum is annotated.
    pub exact: Option<String>,
    pub params: Option<String>,
    pub regime: Option<String>,
    pub prediction: Option<Prediction>,
    pub agreement: Option<bool>,
    pub mismatch: Option<MismatchSpectra>,
}

/// `(H, L)` for order `n`.
pub fn hl_indices(n: usize) -> (usize, usize) {
    (n.div_ceil(2), (n + 2) / 2)
}

/// Reads the median eigenvalues of a descending spectrum of order `n`.
pub fn hl_numeric(spec: &Spectrum, n: usize) -> Result<HLResult> {
    if n == 0 || spec.n() != n {
        return Err(Error::SizeMismatch { expected: n.max(1), actual: spec.n() });
    }
    let (h, l) = hl_indices(n);
    let (xi_h, xi_l) = (spec.xi(h), spec.xi(l));
    let exact = if spec.annotations.len() == spec.groups.len() && !spec.annotations.is_empty() {
        let mut seen = 0;
        spec.groups.iter().zip(&spec.annotations).find_map(|(g, a)| {
            seen += g.1;
            (seen >= l).then(|| a.clone())
        })
    } else {
        None
    };
    Ok(HLResult {
        n,
        h_index: h,
        l_index: l,
        xi_h,
        xi_l,
        r: xi_h.abs().max(xi_l.abs()),
        exact,
        params: None,
        regime: None,
        prediction: None,
        agreement: None,
        mismatch: None,
    })
}

fn claim_to_abs(claim: Claim) -> Prediction {
    match claim {
        Claim::Exact(v) => Prediction::Point { value: v.unsigned_abs() as f64 },
        Claim::Interval(a, b) => {
            let lo = b.map_or(0.0, |v| v.unsigned_abs() as f64);
            let hi = a.map(|v| v.unsigned_abs() as f64);
            Prediction::Interval { lo, hi }
        }
    }
}

fn regime_label(kind: BlockKind, h: usize) -> Result<&'static str> {
    Ok(match kind {
        BlockKind::Zero => "1.3(i)",
        BlockKind::TabledZero | BlockKind::Second => "1.3(ii)",
        BlockKind::MinusOne => "1.3(iii)",
        BlockKind::MinusTwo => "1.3(iv)",
        BlockKind::FirstNegative => "1.3(v)(a)",
        BlockKind::Part(i) if i == h => "1.3(v)(b)",
        BlockKind::Between(_) => "1.3(v)(c)",
        BlockKind::Part(_) => "1.3(v)(d)",
        BlockKind::Top => return Err(Error::Invariant("median index fell on the positive eigenvalue".into())),
    })
}

/// Regime and predicted `R` from the position of `xi_L` among the tabled
/// eigenvalue blocks.
pub fn hl_regime(sp: &StarParams) -> Result<(String, Prediction)> {
    let blocks = tabled_blocks(sp)?;
    if sp.p() + sp.q() <= 1 {
        return Ok(("1.3(p+q<=1)".into(), Prediction::Point { value: 1.0 }));
    }
    let (_, l) = hl_indices(sp.n());
    let mut seen = 0;
    for b in blocks.iter().filter(|b| b.multiplicity > 0) {
        seen += b.multiplicity;
        if seen >= l {
            return Ok((regime_label(b.kind, sp.h())?.into(), claim_to_abs(b.claim)));
        }
    }
    Err(Error::Invariant(format!("tabled blocks of {sp} cover fewer than {l} eigenvalues")))
}

/// HL-index of a family member from its certified closed-form spectrum,
/// with the regime prediction attached.
pub fn hl_closed_form(sp: &StarParams) -> Result<HLResult> {
    let (regime, prediction) = hl_regime(sp)?;
    let cf = closed_form_spectrum(sp)?;
    let mut out = hl_numeric(&cf.spectrum, sp.n())?;
    out.params = Some(sp.to_string());
    out.regime = Some(regime);
    out.prediction = Some(prediction);
    Ok(out)
}

/// Numeric HL-index of the constructed graph checked against the regime
/// prediction.
pub fn hl_agreement(sp: &StarParams) -> Result<HLResult> {
    let (regime, prediction) = hl_regime(sp)?;
    let spec = eigenvalues(&anti_adjacency(&star_extension(sp))?);
    let mut out = hl_numeric(&spec, sp.n())?;
    let agree = prediction.admits(out.r, HL_TOLERANCE);
    if !agree {
        out.mismatch = Some(MismatchSpectra { numeric: spec.values.clone(), closed_form: closed_form_spectrum(sp)?.spectrum.values });
    }
    out.params = Some(sp.to_string());
    out.regime = Some(regime);
    out.prediction = Some(prediction);
    out.agreement = Some(agree);
    Ok(out)
}

fn ceil_half(x: i64) -> i64 {
    x.div_euclid(2) + x.rem_euclid(2)
}

/// Every case of the published case list whose condition holds, with its
/// value read as an absolute value. Exactly one fires on a family member.
pub fn hl_statement(sp: &StarParams) -> Result<Vec<(String, Prediction)>> {
    if !theorem1_predicate(sp) {
        return Err(Error::OutsideFamily(sp.to_string()));
    }
    let point = |v: i64| Prediction::Point { value: v as f64 };
    let interval = |lo: i64, hi: Option<i64>| Prediction::Interval { lo: lo as f64, hi: hi.map(|v| v as f64) };
    let (t0, p, q, n) = (sp.t0() as i64, sp.p() as i64, sp.q() as i64, sp.n() as i64);
    let s = p + q;
    if s <= 1 {
        return Ok(vec![("1.3(p+q<=1)".into(), point(1))]);
    }
    // t(i) and k(i) for 1 <= i <= h, largest size first.
    let h = sp.h();
    let t = |i: usize| sp.parts()[i - 1].0 as i64;
    let k = |i: usize| sp.parts()[i - 1].1 as i64;
    let mut fired = Vec::new();
    let mut fire = |label: &str, pred: Prediction| fired.push((label.to_string(), pred));
    if s <= ceil_half(n - 2 * t0) {
        fire("1.3(i)", point(0));
    }
    if s == ceil_half(n - 2 * t0 + 2) {
        let special = (t0 == 1 && q == 0) || (t0 == 3 && s == 4) || (t0 == 4 && s == 3);
        fire("1.3(ii)", if special { point(0) } else { interval(0, Some(1)) });
    }
    if ceil_half(n - 2 * t0 + 4) <= s && s <= ceil_half(n) {
        fire("1.3(iii)", point(1));
    }
    if s >= ceil_half(n + 2) {
        if q <= ceil_half(n - 2) {
            fire("1.3(iv)", point(2));
        }
        if h >= 1 {
            if q == ceil_half(n) {
                fire("1.3(v)(a)", interval(2, Some(2 * t(h))));
            }
            if ceil_half(n + 2) <= q && q <= ceil_half(n + 2 * k(h) - 2) {
                fire("1.3(v)(b)", point(2 * t(h)));
            }
            let tail = |i: usize| (0..=i).map(|a| 2 * k(h - a)).sum::<i64>();
            for i in 0..h {
                if q == ceil_half(n + tail(i)) {
                    let upper = (h - i > 1).then(|| 2 * t(h - i - 1));
                    fire("1.3(v)(c)", interval(2 * t(h - i), upper));
                }
            }
            for i in 0..h.saturating_sub(1) {
                if ceil_half(n + tail(i) + 2) <= q && q <= ceil_half(n + tail(i + 1) - 2) {
                    fire("1.3(v)(d)", point(2 * t(h - i - 1)));
                }
            }
        }
    }
    Ok(fired)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::spectral::eigenvalues;

    fn sp(t0: usize, p: usize, parts: &[usize]) -> StarParams {
        StarParams::new(t0, p, parts).unwrap()
    }

    fn point(r: &HLResult) -> f64 {
        match r.prediction.unwrap() {
            Prediction::Point { value } => value,
            other => panic!("expected a point, got {other}"),
        }
    }

    #[test]
    fn indices() {
        assert_eq!(hl_indices(4), (2, 3));
        assert_eq!(hl_indices(5), (3, 3));
        assert_eq!(hl_indices(1), (1, 1));
    }

    #[test]
    fn numeric_examples() {
        let k4 = hl_numeric(&eigenvalues(&anti_adjacency(&Graph::complete(4)).unwrap()), 4).unwrap();
        assert!((k4.r - 1.0).abs() < 1e-10);
        let s15 = hl_numeric(&eigenvalues(&anti_adjacency(&star_extension(&sp(1, 5, &[]))).unwrap()), 6).unwrap();
        assert!((s15.xi_h + 2.0).abs() < 1e-10 && (s15.r - 2.0).abs() < 1e-10);
        let diamond = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let d = hl_numeric(&eigenvalues(&anti_adjacency(&diamond).unwrap()), 4).unwrap();
        assert!((d.xi_h - (3.0 - 17f64.sqrt()) / 2.0).abs() < 1e-10);
        assert!((d.xi_l + 1.0).abs() < 1e-10 && (d.r - 1.0).abs() < 1e-10);
    }

    #[test]
    fn size_mismatch() {
        let s = eigenvalues(&anti_adjacency(&Graph::complete(3)).unwrap());
        assert!(matches!(hl_numeric(&s, 4), Err(Error::SizeMismatch { .. })));
    }

    #[test]
    fn closed_form_examples() {
        let a = hl_closed_form(&sp(1, 5, &[])).unwrap();
        assert_eq!(a.regime.as_deref(), Some("1.3(iv)"));
        assert!((point(&a) - 2.0).abs() < 1e-12 && (a.r - 2.0).abs() < 1e-10);
        let b = hl_closed_form(&sp(2, 2, &[])).unwrap();
        assert_eq!(b.regime.as_deref(), Some("1.3(iii)"));
        assert!((b.r - 1.0).abs() < 1e-10);
        let c = hl_closed_form(&sp(2, 8, &[2])).unwrap();
        assert_eq!(c.n, 12);
        assert_eq!(c.regime.as_deref(), Some("1.3(iv)"));
        let numeric = hl_numeric(&eigenvalues(&anti_adjacency(&star_extension(&sp(2, 8, &[2]))).unwrap()), 12).unwrap();
        assert!((numeric.r - point(&c)).abs() < 1e-8);
        assert!(c.exact.is_some());
    }

    #[test]
    fn agreement_examples() {
        for params in [sp(1, 5, &[]), sp(2, 2, &[])] {
            assert_eq!(hl_agreement(&params).unwrap().agreement, Some(true));
        }
        let p3 = hl_agreement(&sp(1, 2, &[])).unwrap();
        assert_eq!(p3.agreement, Some(false));
        assert_eq!(p3.regime.as_deref(), Some("1.3(ii)"));
        assert!((p3.r - (3f64.sqrt() - 1.0)).abs() < 1e-10);
        assert_eq!(p3.mismatch.unwrap().numeric.len(), 3);
    }

    #[test]
    fn interval_regime() {
        // n = 5, p + q = 2 = ceil((n - 2t0 + 2)/2), not a special case.
        let r = hl_agreement(&sp(2, 1, &[2])).unwrap();
        assert_eq!(r.regime.as_deref(), Some("1.3(ii)"));
        assert_eq!(r.prediction, Some(Prediction::Interval { lo: 0.0, hi: Some(1.0) }));
        assert_eq!(r.agreement, Some(true));
    }

    #[test]
    fn negative_intervals_are_normalized() {
        assert_eq!(claim_to_abs(Claim::Interval(Some(-6), Some(-2))), Prediction::Interval { lo: 2.0, hi: Some(6.0) });
        assert_eq!(claim_to_abs(Claim::Exact(-4)), Prediction::Point { value: 4.0 });
    }

    #[test]
    fn outside_family_is_rejected() {
        assert!(matches!(hl_regime(&sp(5, 3, &[])), Err(Error::OutsideFamily(_))));
        assert!(hl_statement(&sp(5, 3, &[])).is_err());
    }

    #[test]
    fn statement_and_ladder_on_small_grid() {
        let grid = crate::extension::StarGrid { t0_max: 4, p_max: 4, parts_total_max: 6, n_max: 12 };
        for params in grid.params().into_iter().filter(theorem1_predicate) {
            let fired = hl_statement(&params).unwrap();
            assert_eq!(fired.len(), 1, "{params}: {fired:?}");
            let (label, _) = hl_regime(&params).unwrap();
            assert_eq!(fired[0].0, label, "{params}");
        }
    }
}
