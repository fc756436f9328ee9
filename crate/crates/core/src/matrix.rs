//! Dense matrices of arbitrary-precision integers with exact permanents and
//! determinants.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Largest side length accepted by [`IntMatrix::permanent`] by default.
pub const DEFAULT_PERMANENT_CAP: usize = 30;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// # Panics
    /// If the rows have different lengths.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> IntMatrix {
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            entries.extend(r.iter().cloned().map(Into::into));
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Exact permanent with the default size cap.
    pub fn permanent(&self) -> Result<BigInt> {
        self.permanent_with_cap(DEFAULT_PERMANENT_CAP)
    }

    /// Exact permanent; fails with [`Error::Oversize`] when `n > cap`.
    ///
    /// Sparse matrices whose nonzero pattern has a narrow column frontier are
    /// handled by a row-by-row transfer over partial matchings; everything
    /// else goes through Ryser's formula.
    pub fn permanent_with_cap(&self, cap: usize) -> Result<BigInt> {
        let n = self.require_square()?;
        if n > cap {
            return Err(Error::Oversize { n, cap });
        }
        if n > 16 && self.max_frontier() <= 20 {
            Ok(self.permanent_frontier())
        } else {
            Ok(self.permanent_ryser())
        }
    }

    /// Ryser's inclusion-exclusion formula, subsets visited in Gray-code order.
    pub fn permanent_ryser(&self) -> BigInt {
        let n = self.rows;
        assert!(self.is_square());
        if n == 0 {
            return BigInt::one();
        }
        let mut row_sums = vec![BigInt::zero(); n];
        let mut in_set = vec![false; n];
        let mut total = BigInt::zero();
        let mut size = 0usize;
        for k in 1u64..(1u64 << n) {
            let j = k.trailing_zeros() as usize;
            let adding = !in_set[j];
            in_set[j] = adding;
            for (i, s) in row_sums.iter_mut().enumerate() {
                if adding {
                    *s += self.get(i, j);
                } else {
                    *s -= self.get(i, j);
                }
            }
            size = if adding { size + 1 } else { size - 1 };
            let mut prod = BigInt::one();
            for s in &row_sums {
                if s.is_zero() {
                    prod = BigInt::zero();
                    break;
                }
                prod *= s;
            }
            if (n - size).is_multiple_of(2) {
                total += prod;
            } else {
                total -= prod;
            }
        }
        total
    }

    /// Largest number of "open" columns (touched by a processed row and by an
    /// unprocessed one) during a row-by-row sweep.
    fn max_frontier(&self) -> usize {
        let last = self.last_rows();
        let mut first = vec![usize::MAX; self.cols];
        for i in 0..self.rows {
            for (j, f) in first.iter_mut().enumerate() {
                if !self.get(i, j).is_zero() && *f == usize::MAX {
                    *f = i;
                }
            }
        }
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .filter(|&j| first[j] <= i && last[j].is_some_and(|l| l > i))
                    .count()
            })
            .max()
            .unwrap_or(0)
    }

    fn last_rows(&self) -> Vec<Option<usize>> {
        (0..self.cols)
            .map(|j| (0..self.rows).rev().find(|&i| !self.get(i, j).is_zero()))
            .collect()
    }

    /// Permanent by summing over partial matchings row by row; a state is
    /// the set of already matched columns that later rows could still hit.
    pub fn permanent_frontier(&self) -> BigInt {
        assert!(self.is_square());
        let last = self.last_rows();
        if last.iter().any(Option::is_none) && self.rows > 0 {
            return BigInt::zero();
        }
        let mut states: BTreeMap<Vec<usize>, BigInt> = BTreeMap::new();
        states.insert(Vec::new(), BigInt::one());
        for i in 0..self.rows {
            let mut next: BTreeMap<Vec<usize>, BigInt> = BTreeMap::new();
            for (used, weight) in &states {
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    if a.is_zero() || used.binary_search(&j).is_ok() {
                        continue;
                    }
                    let mut s = used.clone();
                    let pos = s.binary_search(&j).unwrap_err();
                    s.insert(pos, j);
                    *next.entry(s).or_insert_with(BigInt::zero) += weight * a;
                }
            }
            // columns that no later row reaches must be matched by now
            let closing: Vec<usize> = (0..self.cols).filter(|&j| last[j] == Some(i)).collect();
            states = BTreeMap::new();
            'state: for (mut used, weight) in next {
                for j in &closing {
                    match used.binary_search(j) {
                        Ok(pos) => {
                            used.remove(pos);
                        }
                        Err(_) => continue 'state,
                    }
                }
                *states.entry(used).or_insert_with(BigInt::zero) += weight;
            }
        }
        states.remove(&Vec::new()).unwrap_or_else(BigInt::zero)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        let n = self.require_square()?;
        let mut a: Vec<Vec<BigInt>> = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        Ok(if n == 0 {
            sign
        } else {
            sign * &a[n - 1][n - 1]
        })
    }

    pub fn abs_determinant(&self) -> Result<BigInt> {
        self.determinant().map(|d| d.abs())
    }
}

impl fmt::Display for IntMatrix {
    /// One line per row, entries separated by single spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}
