//! Exact real-root counting and isolation with Sturm sequences over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use crate::error::{Error, Result};

pub type RationalPoly = Poly<BigRational>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(BigRational),
    PosInf,
}

impl Bound {
    pub fn int(v: i64) -> Self {
        Bound::Finite(BigRational::from_integer(BigInt::from(v)))
    }

    fn lt(&self, other: &Bound) -> bool {
        match (self, other) {
            (Bound::NegInf, Bound::NegInf) | (Bound::PosInf, _) | (_, Bound::NegInf) => false,
            (Bound::NegInf, _) | (_, Bound::PosInf) => true,
            (Bound::Finite(a), Bound::Finite(b)) => a < b,
        }
    }
}

/// Sturm chain of a squarefree polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    seq: Vec<RationalPoly>,
}

impl SturmChain {
    pub fn new(p: &RationalPoly) -> Self {
        let p0 = p.squarefree().normalize_positive();
        let mut seq = vec![p0.clone()];
        if p0.degree().unwrap_or(0) == 0 {
            return SturmChain { seq };
        }
        let mut a = p0;
        let mut b = a.derivative().normalize_positive();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            seq.push(b.clone());
            a = b;
            b = (-&r).normalize_positive();
        }
        SturmChain { seq }
    }

    fn sign_at(p: &RationalPoly, at: &Bound) -> i8 {
        let s = match at {
            Bound::Finite(x) => {
                let v = p.eval(x);
                if v.is_zero() {
                    return 0;
                }
                v.is_positive()
            }
            Bound::PosInf => p.lead().is_some_and(Signed::is_positive),
            Bound::NegInf => {
                let pos = p.lead().is_some_and(Signed::is_positive);
                if p.degree().unwrap_or(0).is_multiple_of(2) { pos } else { !pos }
            }
        };
        if p.is_zero() {
            0
        } else if s {
            1
        } else {
            -1
        }
    }

    pub fn sign_changes(&self, at: &Bound) -> usize {
        let mut last = 0i8;
        let mut changes = 0;
        for p in &self.seq {
            let s = Self::sign_at(p, at);
            if s != 0 {
                if last != 0 && s != last {
                    changes += 1;
                }
                last = s;
            }
        }
        changes
    }

    /// Distinct roots in the half-open interval `(lo, hi]`.
    pub fn count(&self, lo: &Bound, hi: &Bound) -> Result<usize> {
        if !lo.lt(hi) {
            return Err(Error::DegenerateInterval);
        }
        Ok(self.sign_changes(lo) - self.sign_changes(hi))
    }
}

/// Roots in `(lo, hi]`, distinct or counted with multiplicity.
///
/// Multiplicities come from the chain `g_0 = p`, `g_{k+1} = gcd(g_k, g_k')`:
/// a root of multiplicity `m` is a distinct root of exactly `g_0, ..., g_{m-1}`.
pub fn count_roots(p: &RationalPoly, lo: &Bound, hi: &Bound, with_multiplicity: bool) -> Result<usize> {
    if !lo.lt(hi) {
        return Err(Error::DegenerateInterval);
    }
    if p.is_zero() {
        return Err(Error::Invariant("root count of the zero polynomial".into()));
    }
    if !with_multiplicity {
        return SturmChain::new(p).count(lo, hi);
    }
    let mut g = p.clone();
    let mut total = 0;
    while g.degree().unwrap_or(0) > 0 {
        total += SturmChain::new(&g).count(lo, hi)?;
        g = g.gcd(&g.derivative());
    }
    Ok(total)
}

/// Roots in the open interval `(lo, hi)`.
pub fn count_roots_open(p: &RationalPoly, lo: &Bound, hi: &Bound, with_multiplicity: bool) -> Result<usize> {
    let half = count_roots(p, lo, hi, with_multiplicity)?;
    let at_hi = match hi {
        Bound::Finite(x) => {
            let (m, _) = p.deflate_root(x);
            if with_multiplicity { m } else { usize::from(m > 0) }
        }
        _ => 0,
    };
    Ok(half - at_hi)
}

/// Positive roots of an integer polynomial, counted with multiplicity.
pub fn positive_root_count(p: &Poly<BigInt>) -> usize {
    count_roots(&p.to_rational(), &Bound::int(0), &Bound::PosInf, true).unwrap_or(0)
}

/// Cauchy bound: every root has absolute value below it.
fn root_bound(p: &RationalPoly) -> BigRational {
    let lead = p.lead().cloned().unwrap_or_else(BigRational::one).abs();
    let m = p.coeffs().iter().map(|c| c.abs() / lead.clone()).fold(BigRational::zero(), |a, b| if b > a { b } else { a });
    (m + BigRational::one()).ceil()
}

/// Disjoint intervals `(lo, hi]`, ascending, each holding one distinct real
/// root and no wider than `width`.
pub fn isolate_roots(p: &RationalPoly, width: &BigRational) -> Vec<(BigRational, BigRational)> {
    let chain = SturmChain::new(p);
    let b = root_bound(p);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    let two = BigRational::from_integer(BigInt::from(2));
    while let Some((lo, hi)) = stack.pop() {
        let c = chain.sign_changes(&Bound::Finite(lo.clone())) - chain.sign_changes(&Bound::Finite(hi.clone()));
        if c == 0 {
            continue;
        }
        if c == 1 {
            out.push(bisect_simple(&chain.seq[0], lo, hi, width));
            continue;
        }
        let mid = (&lo + &hi) / &two;
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    out.sort();
    out
}

/// Shrinks `(lo, hi]` holding exactly one root of the squarefree `p0`, using
/// only the sign of `p0`.
fn bisect_simple(p0: &RationalPoly, mut lo: BigRational, mut hi: BigRational, width: &BigRational) -> (BigRational, BigRational) {
    let two = BigRational::from_integer(BigInt::from(2));
    let sign = |x: &BigRational| {
        let v = p0.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    };
    let mut s_hi = sign(&hi);
    while (&hi - &lo) > *width {
        let mid = (&lo + &hi) / &two;
        let s_mid = sign(&mid);
        // The root is `hi` itself, or lies strictly between a sign change.
        if s_hi == 0 || (s_mid != 0 && s_mid != s_hi) {
            lo = mid;
        } else {
            hi = mid;
            s_hi = s_mid;
        }
    }
    (lo, hi)
}

/// Narrows an isolating interval `(lo, hi]` of a single root to `width`.
pub fn refine_root(
    chain: &SturmChain,
    lo: BigRational,
    hi: BigRational,
    width: &BigRational,
) -> (BigRational, BigRational) {
    bisect_simple(&chain.seq[0], lo, hi, width)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::to_f64_lossy;

    fn ip(c: &[i64]) -> Poly<BigInt> {
        Poly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn positive_counts() {
        assert_eq!(positive_root_count(&ip(&[-4, -6, 0, 1])), 1);
        assert_eq!(positive_root_count(&ip(&[-1, 0, 1])), 1);
        assert_eq!(positive_root_count(&ip(&[-4, 0, 1]).pow(2)), 2);
        let d = count_roots(&ip(&[-4, 0, 1]).pow(2).to_rational(), &Bound::int(0), &Bound::PosInf, false).unwrap();
        assert_eq!(d, 1);
    }

    #[test]
    fn half_open_endpoints() {
        // x(x - 1)(x + 2)
        let p = (ip(&[0, 1]) * ip(&[-1, 1]) * ip(&[2, 1])).to_rational();
        assert_eq!(count_roots(&p, &Bound::int(0), &Bound::int(1), false).unwrap(), 1);
        assert_eq!(count_roots(&p, &Bound::int(-2), &Bound::int(0), false).unwrap(), 1);
        assert_eq!(count_roots(&p, &Bound::NegInf, &Bound::int(-2), false).unwrap(), 1);
        assert_eq!(count_roots_open(&p, &Bound::int(-2), &Bound::int(1), false).unwrap(), 1);
        assert_eq!(count_roots(&p, &Bound::NegInf, &Bound::PosInf, false).unwrap(), 3);
        assert_eq!(count_roots(&p, &Bound::int(1), &Bound::int(1), false), Err(Error::DegenerateInterval));
    }

    #[test]
    fn isolation() {
        let p = ip(&[-2, -2, 1]).to_rational();
        let w = BigRational::new(BigInt::from(1), BigInt::from(10_000_000_000i64));
        let roots = isolate_roots(&p, &w);
        assert_eq!(roots.len(), 2);
        let mid = |(a, b): &(BigRational, BigRational)| to_f64_lossy(&((a + b) / BigRational::from_integer(2.into())));
        assert!((mid(&roots[0]) - (1.0 - 3f64.sqrt())).abs() < 1e-10);
        assert!((mid(&roots[1]) - (1.0 + 3f64.sqrt())).abs() < 1e-10);
    }
}
