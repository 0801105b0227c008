//! Small dense matrices with exact integer entries.
//!
//! Connectivity matrices of desk-scale graphs are tiny, so everything here is
//! a straightforward row-major `Vec<BigInt>`; exactness matters more than
//! speed. `BoolMatrix` tracks only positivity patterns, which is all the
//! block-structure checks need.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix { n, data: vec![BigInt::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> BigInt) -> Self {
        let mut m = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                m.data[r * n + c] = f(r, c);
            }
        }
        m
    }

    pub fn from_rows_i64(rows: &[&[i64]]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n));
        Self::from_fn(n, |r, c| BigInt::from(rows[r][c]))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.n + c] = v;
    }

    pub fn add_assign_at(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.n + c] += v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = IntMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.data[r * n + c] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> IntMatrix {
        let mut base = self.clone();
        let mut acc = IntMatrix::identity(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n);
        IntMatrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn row_sum(&self, r: usize) -> BigInt {
        (0..self.n).map(|c| self.get(r, c)).sum()
    }

    pub fn col_sum(&self, c: usize) -> BigInt {
        (0..self.n).map(|r| self.get(r, c)).sum()
    }

    pub fn entries_sum(&self) -> BigInt {
        self.data.iter().sum()
    }

    pub fn has_zero_row(&self) -> Option<usize> {
        (0..self.n).find(|&r| self.row_sum(r).is_zero())
    }

    pub fn has_zero_col(&self) -> Option<usize> {
        (0..self.n).find(|&c| self.col_sum(c).is_zero())
    }

    /// Restriction to the rows and columns listed in `idx`.
    pub fn block(&self, idx: &[usize]) -> IntMatrix {
        IntMatrix::from_fn(idx.len(), |r, c| self.get(idx[r], idx[c]).clone())
    }

    pub fn positivity(&self) -> BoolMatrix {
        BoolMatrix {
            n: self.n,
            data: self.data.iter().map(|v| !v.is_zero()).collect(),
        }
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.data.iter().all(|v| *v > BigInt::zero())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.n {
            write!(f, "[")?;
            for c in 0..self.n {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Positivity pattern of a nonnegative matrix; product is over the boolean
/// semiring.
#[derive(Clone, PartialEq, Eq)]
pub struct BoolMatrix {
    n: usize,
    data: Vec<bool>,
}

impl BoolMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![false; n * n];
        for i in 0..n {
            data[i * n + i] = true;
        }
        BoolMatrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.n + c]
    }

    pub fn mul(&self, other: &BoolMatrix) -> BoolMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut data = vec![false; n * n];
        for r in 0..n {
            for k in 0..n {
                if self.get(r, k) {
                    for c in 0..n {
                        if other.get(k, c) {
                            data[r * n + c] = true;
                        }
                    }
                }
            }
        }
        BoolMatrix { n, data }
    }

    pub fn pow(&self, mut e: u64) -> BoolMatrix {
        let mut base = self.clone();
        let mut acc = BoolMatrix::identity(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lambda1_a() -> IntMatrix {
        IntMatrix::from_rows_i64(&[&[0, 1, 0], &[1, 0, 1], &[0, 1, 0]])
    }

    #[test]
    fn square_of_tridiagonal() {
        let a = lambda1_a();
        let a2 = a.mul(&a);
        assert_eq!(a2, IntMatrix::from_rows_i64(&[&[1, 0, 1], &[0, 2, 0], &[1, 0, 1]]));
        assert_eq!(a2.entries_sum(), BigInt::from(6));
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let a = lambda1_a();
        let mut acc = IntMatrix::identity(3);
        for e in 0..6u64 {
            assert_eq!(a.pow(e), acc);
            acc = acc.mul(&a);
        }
    }

    #[test]
    fn bool_pow_tracks_positivity() {
        let a = lambda1_a();
        for e in 0..6u64 {
            assert_eq!(a.pow(e).positivity(), a.positivity().pow(e));
        }
    }

    #[test]
    fn block_extraction() {
        let a2 = lambda1_a().pow(2);
        let corner = a2.block(&[0, 2]);
        assert_eq!(corner, IntMatrix::from_rows_i64(&[&[1, 1], &[1, 1]]));
        let mid = a2.block(&[1]);
        assert_eq!(mid, IntMatrix::from_rows_i64(&[&[2]]));
    }
}
