//! Dense symmetric matrices over the two-element field.
//!
//! Rows are packed into `u64` words. Every operation is plain Gaussian
//! elimination; the matrices that show up here rarely exceed a few dozen
//! rows.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2SymMatrix {
    n: usize,
    words: usize,
    data: Vec<u64>,
}

fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

impl Gf2SymMatrix {
    pub fn zeros(n: usize) -> Self {
        let words = words_for(n);
        Gf2SymMatrix {
            n,
            words,
            data: vec![0; n * words],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from the upper triangle of `f` (`f(i, j)` for `i <= j`),
    /// mirroring it below the diagonal.
    pub fn from_upper(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Parses rows of `0`/`1` entries. Returns `None` if the rows are
    /// ragged or the matrix is not symmetric.
    pub fn from_rows(rows: &[&[u8]]) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        for i in 0..n {
            for j in 0..n {
                if (rows[i][j] & 1) != (rows[j][i] & 1) {
                    return None;
                }
            }
        }
        Some(Self::from_upper(n, |i, j| rows[i][j] & 1 == 1))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.n && j < self.n, "index out of range");
        self.data[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    fn put(&mut self, i: usize, j: usize, bit: bool) {
        let w = &mut self.data[i * self.words + j / 64];
        if bit {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    /// Sets entry `(i, j)` and its mirror `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, bit: bool) {
        assert!(i < self.n && j < self.n, "index out of range");
        self.put(i, j, bit);
        self.put(j, i, bit);
    }

    pub fn toggle(&mut self, i: usize, j: usize) {
        let b = self.get(i, j);
        self.set(i, j, !b);
    }

    pub fn diagonal(&self) -> Vec<bool> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    /// `self + E`.
    pub fn plus_identity(&self) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            m.toggle(i, i);
        }
        m
    }

    /// `self + E_ii`: the same matrix with one diagonal entry toggled.
    pub fn with_diagonal_toggled(&self, i: usize) -> Self {
        let mut m = self.clone();
        m.toggle(i, i);
        m
    }

    pub fn principal_submatrix(&self, idx: &[usize]) -> Self {
        Self::from_upper(idx.len(), |a, b| self.get(idx[a], idx[b]))
    }

    /// True when `self` and `other` agree off the diagonal.
    pub fn coincides_off_diagonal(&self, other: &Self) -> bool {
        self.n == other.n
            && (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j) == other.get(i, j)))
    }

    /// Rows as single words, available when `n <= 64`.
    pub fn word_rows(&self) -> Option<Vec<u64>> {
        (self.words == 1).then(|| self.data.clone())
    }

    pub fn rank(&self) -> usize {
        if self.words == 1 {
            let mut rows = self.data.clone();
            return rank_of_words(&mut rows);
        }
        let mut rows: Vec<Vec<u64>> = (0..self.n).map(|i| self.row(i).to_vec()).collect();
        let mut rank = 0;
        for col in 0..self.n {
            let (w, b) = (col / 64, col % 64);
            let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] >> b & 1 == 1) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for r in rows.iter_mut().skip(rank + 1) {
                if r[w] >> b & 1 == 1 {
                    r.iter_mut().zip(&pivot).for_each(|(x, y)| *x ^= y);
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn corank(&self) -> usize {
        self.n - self.rank()
    }

    /// The determinant over GF(2); the 0×0 matrix has determinant 1.
    pub fn determinant(&self) -> bool {
        self.rank() == self.n
    }

    pub fn is_nonsingular(&self) -> bool {
        self.determinant()
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut left: Vec<Vec<u64>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut right: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let mut r = vec![0u64; self.words];
                r[i / 64] |= 1 << (i % 64);
                r
            })
            .collect();
        for col in 0..n {
            let (w, b) = (col / 64, col % 64);
            let p = (col..n)
                .find(|&r| left[r][w] >> b & 1 == 1)
                .ok_or(Error::SingularMatrix)?;
            left.swap(col, p);
            right.swap(col, p);
            let (pl, pr) = (left[col].clone(), right[col].clone());
            for r in 0..n {
                if r != col && left[r][w] >> b & 1 == 1 {
                    left[r].iter_mut().zip(&pl).for_each(|(x, y)| *x ^= y);
                    right[r].iter_mut().zip(&pr).for_each(|(x, y)| *x ^= y);
                }
            }
        }
        Ok(Gf2SymMatrix {
            n,
            words: self.words,
            data: right.into_iter().flatten().collect(),
        })
    }

    /// A nonsingular symmetric matrix equal to `self` off the diagonal.
    ///
    /// A nonsingular input is returned unchanged. Otherwise diagonal
    /// assignments are tried in lexicographic order (entry 0 most
    /// significant) and the first nonsingular one wins. Such an assignment
    /// always exists.
    pub fn nondegenerate_completion(&self) -> Self {
        if self.is_nonsingular() {
            return self.clone();
        }
        let mut m = self.clone();
        let mut diag = vec![false; self.n];
        loop {
            for (i, &d) in diag.iter().enumerate() {
                m.put(i, i, d);
            }
            if m.is_nonsingular() {
                return m;
            }
            // binary increment with the last entry least significant
            let mut i = self.n;
            loop {
                assert!(i > 0, "no nonsingular diagonal completion exists");
                i -= 1;
                diag[i] = !diag[i];
                if diag[i] {
                    break;
                }
            }
        }
    }
}

/// Rank of a set of `u64` row vectors, destroying the input.
pub fn rank_of_words(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    for i in 0..rows.len() {
        let r = rows[i];
        if r == 0 {
            continue;
        }
        let low = r & r.wrapping_neg();
        rows.swap(rank, i);
        for x in rows.iter_mut().skip(rank + 1) {
            if *x & low != 0 {
                *x ^= r;
            }
        }
        rank += 1;
    }
    rank
}

impl fmt::Debug for Gf2SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2SymMatrix[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ", ")?;
            }
            for j in 0..self.n {
                write!(f, "{}", self.get(i, j) as u8)?;
            }
        }
        write!(f, "]")
    }
}
