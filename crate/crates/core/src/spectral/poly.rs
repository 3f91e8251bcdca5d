//! Dense univariate polynomials with coefficients in ascending degree.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Clone + Num> Poly<T> {
    /// Trailing zero coefficients are dropped; the zero polynomial has none.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    pub fn x() -> Self {
        Poly::new(vec![T::zero(), T::one()])
    }

    /// `x - r`.
    pub fn linear_root(r: T) -> Self {
        Poly::new(vec![T::zero() - r, T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        let mut k = T::zero();
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        for c in &self.coeffs {
            if !k.is_zero() {
                out.push(c.clone() * k.clone());
            }
            k = k + T::one();
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Poly::one(), |acc, _| &acc * self)
    }

    pub fn map<U: Clone + Num>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Quotient and remainder; division needs `T` to be a field.
    ///
    /// # Panics
    /// If `d` is zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&nd| nd >= dd) else {
            return (Poly::zero(), self.clone());
        };
        let mut quot = vec![T::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = rem[k + dd].clone() / lead.clone();
            if c.is_zero() {
                continue;
            }
            for (i, di) in d.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].clone() - c.clone() * di.clone();
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Number of times `x - r` divides `self`, and the cofactor.
    pub fn deflate_root(&self, r: &T) -> (usize, Self) {
        let mut p = self.clone();
        let mut m = 0;
        while !p.is_zero() && p.eval(r).is_zero() {
            p = synthetic_div(&p, r);
            m += 1;
        }
        (m, p)
    }
}

/// Divides by `x - r`, assuming `r` is a root.
fn synthetic_div<T: Clone + Num>(p: &Poly<T>, r: &T) -> Poly<T> {
    let n = p.coeffs.len();
    let mut out = vec![T::zero(); n - 1];
    let mut acc = T::zero();
    for k in (1..n).rev() {
        acc = acc * r.clone() + p.coeffs[k].clone();
        out[k - 1] = acc.clone();
    }
    Poly::new(out)
}

impl<T: Clone + Num + Signed> Poly<T> {
    /// Monic greatest common divisor over a field.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            Some(l) => self.scale(&(T::one() / l.clone())),
            None => self.clone(),
        }
    }

    /// Divides by the absolute value of the leading coefficient, keeping signs.
    pub fn normalize_positive(&self) -> Self {
        match self.lead() {
            Some(l) => self.scale(&(T::one() / l.abs())),
            None => self.clone(),
        }
    }

    /// `self / gcd(self, self')`.
    pub fn squarefree(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }
}

impl Poly<BigInt> {
    pub fn to_rational(&self) -> Poly<BigRational> {
        self.map(|c| BigRational::from_integer(c.clone()))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<T: Clone + Num> $tr<&Poly<T>> for &Poly<T> {
            type Output = Poly<T>;
            fn $m(self, rhs: &Poly<T>) -> Poly<T> {
                #[allow(clippy::redundant_closure_call)]
                ($body)(self, rhs)
            }
        }
        impl<T: Clone + Num> $tr for Poly<T> {
            type Output = Poly<T>;
            fn $m(self, rhs: Poly<T>) -> Poly<T> {
                (&self).$m(&rhs)
            }
        }
    };
}

binop!(Add, add, |a: &Poly<T>, b: &Poly<T>| {
    let n = a.coeffs.len().max(b.coeffs.len());
    Poly::new((0..n).map(|k| a.coeff(k) + b.coeff(k)).collect())
});

binop!(Sub, sub, |a: &Poly<T>, b: &Poly<T>| {
    let n = a.coeffs.len().max(b.coeffs.len());
    Poly::new((0..n).map(|k| a.coeff(k) - b.coeff(k)).collect())
});

binop!(Mul, mul, |a: &Poly<T>, b: &Poly<T>| {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let mut out = vec![T::zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        for (j, y) in b.coeffs.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    Poly::new(out)
});

impl<T: Clone + Num + Neg<Output = T>> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Clone + Num + Neg<Output = T>> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        -&self
    }
}

impl<T: Clone + Num + Signed + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let unit = a.is_one();
            match k {
                0 => write!(f, "{a}")?,
                1 if unit => write!(f, "x")?,
                1 => write!(f, "{a}x")?,
                _ if unit => write!(f, "x^{k}")?,
                _ => write!(f, "{a}x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Serialized as a list of decimal coefficient strings, ascending degree.
impl<T: fmt::Display> Serialize for Poly<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> Poly<BigInt> {
        Poly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn arithmetic() {
        let a = ip(&[-2, 1]);
        let b = ip(&[2, 1]);
        assert_eq!(&a * &b, ip(&[-4, 0, 1]));
        assert_eq!(&a + &b, ip(&[0, 2]));
        assert_eq!(&a - &a, Poly::zero());
        assert_eq!(ip(&[1, 1]).pow(3), ip(&[1, 3, 3, 1]));
        assert_eq!(ip(&[-4, -6, 0, 1]).derivative(), ip(&[-6, 0, 3]));
        assert_eq!(ip(&[-4, -6, 0, 1]).eval(&BigInt::from(-2)), BigInt::from(0));
    }

    #[test]
    fn division_and_gcd() {
        let p = ip(&[-4, -6, 0, 1]).to_rational();
        let d = ip(&[2, 1]).to_rational();
        let (q, r) = p.div_rem(&d);
        assert!(r.is_zero());
        assert_eq!(q, ip(&[-2, -2, 1]).to_rational());
        let sq = ip(&[-4, 0, 1]).pow(2).to_rational();
        assert_eq!(sq.gcd(&sq.derivative()), ip(&[-4, 0, 1]).to_rational());
        assert_eq!(sq.squarefree(), ip(&[-4, 0, 1]).to_rational());
    }

    #[test]
    fn deflation() {
        let p = ip(&[2, 1]).pow(3) * ip(&[0, 1]);
        let (m, rest) = p.deflate_root(&BigInt::from(-2));
        assert_eq!(m, 3);
        assert_eq!(rest, ip(&[0, 1]));
    }

    #[test]
    fn display_and_serialize() {
        assert_eq!(ip(&[-4, -6, 0, 1]).to_string(), "x^3 - 6x - 4");
        assert_eq!(ip(&[1, 0, -2]).to_string(), "-2x^2 + 1");
        assert_eq!(serde_json::to_string(&ip(&[-1, 0, 1])).unwrap(), r#"["-1","0","1"]"#);
    }
}
