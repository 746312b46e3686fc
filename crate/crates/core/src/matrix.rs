//! Small dense square matrices over a [`Ring`].

use crate::coeff_ring::Ring;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    n: usize,
    entries: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::Dimension { expected: n, got: row.len() });
            }
            entries.extend(row);
        }
        Ok(Self { n, entries })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Self { n, entries }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<E>> {
        self.entries.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn map<F, T: Clone>(&self, f: F) -> Matrix<T>
    where
        F: Fn(&E) -> T,
    {
        Matrix { n: self.n, entries: self.entries.iter().map(f).collect() }
    }
}

impl<E: Clone> Matrix<E> {
    pub fn zero<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        Self::from_fn(n, |_, _| ring.zero())
    }

    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { ring.one() } else { ring.zero() })
    }

    pub fn diagonal<R: Ring<Elem = E>>(ring: &R, diag: &[E]) -> Self {
        Self::from_fn(diag.len(), |i, j| if i == j { diag[i].clone() } else { ring.zero() })
    }

    pub fn add<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Matrix {
            n: self.n,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| ring.add(a, b)).collect(),
        }
    }

    pub fn sub<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Matrix {
            n: self.n,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| ring.sub(a, b)).collect(),
        }
    }

    pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, c: &E) -> Self {
        self.map(|x| ring.mul(c, x))
    }

    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        Self::from_fn(n, |i, j| {
            let mut acc = ring.zero();
            for k in 0..n {
                let a = self.get(i, k);
                if ring.is_zero(a) {
                    continue;
                }
                acc = ring.add(&acc, &ring.mul(a, other.get(k, j)));
            }
            acc
        })
    }

    pub fn mul_vec<R: Ring<Elem = E>>(&self, ring: &R, v: &[E]) -> Vec<E> {
        (0..self.n)
            .map(|i| {
                let mut acc = ring.zero();
                for (j, x) in v.iter().enumerate() {
                    acc = ring.add(&acc, &ring.mul(self.get(i, j), x));
                }
                acc
            })
            .collect()
    }

    /// `[M^0, M^1, ..., M^k]` by repeated multiplication.
    pub fn powers<R: Ring<Elem = E>>(&self, ring: &R, k: usize) -> Vec<Self> {
        let mut out = vec![Self::identity(ring, self.n)];
        for _ in 0..k {
            let next = out.last().expect("nonempty").mul(ring, self);
            out.push(next);
        }
        out
    }

    pub fn is_zero<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        self.entries.iter().all(|x| ring.is_zero(x))
    }

    /// Coefficients `[c_0 = 1, c_1, ..., c_n]` with
    /// `det(X - M) = sum_k c_k X^{n-k}`, by Berkowitz's division-free
    /// algorithm. `c_k = (-1)^k tr(wedge^k M)`.
    pub fn char_poly<R: Ring<Elem = E>>(&self, ring: &R) -> Vec<E> {
        let n = self.n;
        if n == 0 {
            return vec![ring.one()];
        }
        let a = |i: usize, j: usize| self.get(i, j);
        let mut poly = vec![ring.one(), ring.neg(a(n - 1, n - 1))];
        for k in (0..n - 1).rev() {
            let m = n - k;
            // Toeplitz column: 1, -a_kk, -R C, -R A1 C, ...
            let mut t = Vec::with_capacity(m + 1);
            t.push(ring.one());
            t.push(ring.neg(a(k, k)));
            let mut u: Vec<E> = (k + 1..n).map(|i| a(i, k).clone()).collect();
            for _ in 0..m.saturating_sub(1) {
                let mut dot = ring.zero();
                for (idx, j) in (k + 1..n).enumerate() {
                    dot = ring.add(&dot, &ring.mul(a(k, j), &u[idx]));
                }
                t.push(ring.neg(&dot));
                let next: Vec<E> = (k + 1..n)
                    .map(|i| {
                        let mut acc = ring.zero();
                        for (idx, j) in (k + 1..n).enumerate() {
                            acc = ring.add(&acc, &ring.mul(a(i, j), &u[idx]));
                        }
                        acc
                    })
                    .collect();
                u = next;
            }
            let new: Vec<E> = (0..=m)
                .map(|i| {
                    let mut acc = ring.zero();
                    for j in 0..=i.min(m - 1) {
                        acc = ring.add(&acc, &ring.mul(&t[i - j], &poly[j]));
                    }
                    acc
                })
                .collect();
            poly = new;
        }
        poly
    }

    pub fn det<R: Ring<Elem = E>>(&self, ring: &R) -> E {
        let c = self.char_poly(ring);
        let last = c[self.n].clone();
        if self.n % 2 == 0 {
            last
        } else {
            ring.neg(&last)
        }
    }

    pub fn trace<R: Ring<Elem = E>>(&self, ring: &R) -> E {
        (0..self.n).fold(ring.zero(), |acc, i| ring.add(&acc, self.get(i, i)))
    }

    pub fn render<R: Ring<Elem = E>>(&self, ring: &R) -> Vec<Vec<String>> {
        self.rows().iter().map(|r| r.iter().map(|x| ring.render(x)).collect()).collect()
    }
}
