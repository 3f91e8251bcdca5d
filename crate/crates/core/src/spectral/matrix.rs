//! Symmetric matrices, the anti-adjacency construction, and exact integer kernels.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::graph::{distances, ecc_profile, induced_subgraph, Distance, Graph};
use crate::scalar::ExactInt;

/// Dense symmetric matrix stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SymMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Clone + Zero> SymMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        SymMatrix { n, data: vec![T::zero(); n * n] }
    }

    /// From full rows; fails unless square and symmetric.
    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self>
    where
        T: PartialEq,
    {
        let n = rows.len();
        let mut m = SymMatrix::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::SizeMismatch { expected: n, actual: row.len() });
            }
            for (j, x) in row.iter().enumerate() {
                m.data[i * n + j] = x.clone();
            }
        }
        for i in 0..n {
            for j in 0..i {
                if m.data[i * n + j] != m.data[j * n + i] {
                    return Err(Error::Invariant(format!("entry ({i},{j}) breaks symmetry")));
                }
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.n + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = v.clone();
        self.data[j * self.n + i] = v;
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(<[T]>::to_vec).collect()
    }

    pub fn map<U: Clone + Zero>(&self, f: impl Fn(&T) -> U) -> SymMatrix<U> {
        SymMatrix { n: self.n, data: self.data.iter().map(f).collect() }
    }

    pub fn principal_submatrix(&self, vs: &[usize]) -> SymMatrix<T> {
        let k = vs.len();
        let mut out = SymMatrix::zeros(k);
        for (a, &i) in vs.iter().enumerate() {
            for (b, &j) in vs.iter().enumerate() {
                out.data[a * k + b] = self.get(i, j).clone();
            }
        }
        out
    }
}

pub type IntMatrix = SymMatrix<i64>;

impl IntMatrix {
    pub fn to_f64(&self) -> SymMatrix<f64> {
        self.map(|&x| x as f64)
    }
}

/// Keeps `d(u,v)` where it equals `min(ecc u, ecc v)`, zero elsewhere.
pub fn anti_adjacency(g: &Graph) -> Result<IntMatrix> {
    let dm = distances(g);
    let prof = ecc_profile(&dm);
    if !prof.connected {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    let mut m = SymMatrix::zeros(n);
    for u in 0..n {
        for v in u + 1..n {
            if let (Distance::Finite(d), Some(eu), Some(ev)) = (dm.get(u, v), prof.ecc[u].finite(), prof.ecc[v].finite()) {
                if d == eu.min(ev) {
                    m.set(u, v, i64::from(d));
                }
            }
        }
    }
    Ok(m)
}

pub fn adjacency(g: &Graph) -> IntMatrix {
    let mut m = SymMatrix::zeros(g.n());
    for (u, v) in g.edges() {
        m.set(u, v, 1);
    }
    m
}

pub const MAX_EXACT_ORDER: usize = 16;

/// Faddeev–LeVerrier in `T`; `None` when an intermediate overflows.
fn faddeev_leverrier<T: ExactInt>(a: &IntMatrix) -> Option<Vec<T>> {
    let n = a.n();
    let at: Vec<T> = a.data.iter().map(|&x| T::from_i64(x)).collect::<Option<_>>()?;
    let mut c: Vec<T> = vec![T::zero(); n + 1];
    c[n] = T::one();
    let mut m: Vec<T> = vec![T::zero(); n * n];
    let mut am: Vec<T> = vec![T::zero(); n * n];
    for k in 1..=n {
        for i in 0..n {
            m[i * n + i] = m[i * n + i].checked_add(&c[n - k + 1])?;
        }
        for i in 0..n {
            for j in 0..n {
                let mut s = T::zero();
                for l in 0..n {
                    let x = &at[i * n + l];
                    if !x.is_zero() {
                        s = s.checked_add(&x.checked_mul(&m[l * n + j])?)?;
                    }
                }
                am[i * n + j] = s;
            }
        }
        let mut tr = T::zero();
        for i in 0..n {
            tr = tr.checked_add(&am[i * n + i])?;
        }
        let kk = T::from_usize(k)?;
        c[n - k] = T::zero().checked_sub(&tr.checked_div(&kk)?)?;
        std::mem::swap(&mut m, &mut am);
    }
    Some(c)
}

/// Characteristic polynomial `det(xI - m)` with exact integer coefficients.
///
/// Runs in `i64`, then `i128`, then `BigInt` as intermediates overflow.
pub fn char_poly_exact(m: &IntMatrix) -> Result<Poly<BigInt>> {
    let n = m.n();
    if n > MAX_EXACT_ORDER {
        return Err(Error::OrderTooLarge { n, max: MAX_EXACT_ORDER, what: "char_poly_exact" });
    }
    let coeffs: Vec<BigInt> = if let Some(c) = faddeev_leverrier::<i64>(m) {
        c.into_iter().map(BigInt::from).collect()
    } else if let Some(c) = faddeev_leverrier::<i128>(m) {
        c.into_iter().map(BigInt::from).collect()
    } else {
        faddeev_leverrier::<BigInt>(m).ok_or_else(|| Error::Invariant("big-integer arithmetic failed".into()))?
    };
    Ok(Poly::new(coeffs))
}

/// Rank by fraction-free elimination in `T`; `None` on overflow.
pub fn bareiss_rank<T: ExactInt>(m: &IntMatrix) -> Option<usize> {
    let n = m.n();
    let mut a: Vec<T> = m.data.iter().map(|&x| T::from_i64(x)).collect::<Option<_>>()?;
    let mut prev = T::one();
    let mut rank = 0;
    for col in 0..n {
        let Some(piv) = (rank..n).find(|&r| !a[r * n + col].is_zero()) else {
            continue;
        };
        if piv != rank {
            for j in 0..n {
                a.swap(piv * n + j, rank * n + j);
            }
        }
        let p = a[rank * n + col].clone();
        for i in rank + 1..n {
            let f = a[i * n + col].clone();
            for j in col + 1..n {
                let v = a[i * n + j].checked_mul(&p)?.checked_sub(&f.checked_mul(&a[rank * n + j])?)?;
                a[i * n + j] = v.checked_div(&prev)?;
            }
            a[i * n + col] = T::zero();
        }
        prev = p;
        rank += 1;
    }
    Some(rank)
}

/// Multiplicity of the eigenvalue 0, as `n - rank` over the integers.
pub fn exact_nullity(m: &IntMatrix) -> usize {
    let rank = bareiss_rank::<i128>(m).or_else(|| bareiss_rank::<BigInt>(m)).unwrap_or(0);
    m.n() - rank
}

/// Whether `G[vs]` keeps every eccentricity and pairwise distance of `G`.
///
/// When it does, the anti-adjacency matrix of the induced subgraph is checked
/// against the principal submatrix of the host's.
pub fn submatrix_conditions(g: &Graph, vs: &[usize]) -> Result<bool> {
    let h = induced_subgraph(g, vs)?;
    if !h.is_connected() {
        return Err(Error::Disconnected);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let (dg, dh) = (distances(g), distances(&h));
    let (eg, eh) = (ecc_profile(&dg), ecc_profile(&dh));
    let keeps = vs.iter().enumerate().all(|(a, &u)| {
        eh.ecc[a] == eg.ecc[u] && vs.iter().enumerate().all(|(b, &v)| dh.get(a, b) == dg.get(u, v))
    });
    if keeps && anti_adjacency(&h)? != anti_adjacency(g)?.principal_submatrix(vs) {
        return Err(Error::Invariant("principal submatrix differs under preserved distances".into()));
    }
    Ok(keeps)
}
