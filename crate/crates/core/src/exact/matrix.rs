use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::rat_to_string;

/// Dense integer matrix, row-major.
pub type IntMatrix = Vec<Vec<BigInt>>;

/// Rank by fraction-free (Bareiss) elimination. Works for rectangular input.
pub fn bareiss_rank(m: &[Vec<BigInt>]) -> usize {
    let mut work = m.to_vec();
    eliminate(&mut work).0
}

/// Determinant of a square matrix by Bareiss elimination.
pub fn bareiss_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "determinant of a non-square matrix");
    if n == 0 {
        return BigInt::one();
    }
    let mut work = m.to_vec();
    let (rank, negate) = eliminate(&mut work);
    if rank < n {
        return BigInt::zero();
    }
    let det = work[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// In-place fraction-free echelon form. Returns the rank and whether an odd
/// number of row swaps happened. Every division is exact.
fn eliminate(m: &mut [Vec<BigInt>]) -> (usize, bool) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut swaps = false;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap(p, r);
            swaps = !swaps;
        }
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        for row in rest.iter_mut() {
            let factor = row[c].clone();
            for j in c + 1..cols {
                let num = pivot * &row[j] - &factor * &pivot_row[j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                row[j] = q;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot.clone();
        r += 1;
    }
    (r, swaps)
}

/// Dense matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: Vec<Vec<BigRational>>,
}

impl RationalMatrix {
    pub fn new(rows: Vec<Vec<BigRational>>) -> Self {
        let n = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == n), "ragged matrix");
        Self { rows }
    }

    pub fn from_int(m: &[Vec<BigInt>]) -> Self {
        Self::new(
            m.iter()
                .map(|row| row.iter().cloned().map(BigRational::from_integer).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        Self::new(
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                        .collect()
                })
                .collect(),
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    pub fn transpose(&self) -> Self {
        Self::new(
            (0..self.ncols())
                .map(|j| self.rows.iter().map(|row| row[j].clone()).collect())
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols(), other.nrows(), "dimension mismatch");
        let rows = self
            .rows
            .iter()
            .map(|row| {
                (0..other.ncols())
                    .map(|j| {
                        row.iter()
                            .zip(&other.rows)
                            .filter(|(a, _)| !a.is_zero())
                            .fold(BigRational::zero(), |acc, (a, orow)| acc + a * &orow[j])
                    })
                    .collect()
            })
            .collect();
        Self::new(rows)
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
        })
    }

    /// Column `j`.
    pub fn column(&self, j: usize) -> Vec<BigRational> {
        self.rows.iter().map(|row| row[j].clone()).collect()
    }

    /// True when every row and column holds a single 1 and zeros elsewhere.
    pub fn is_permutation(&self) -> bool {
        let n = self.nrows();
        let mut col_hits = vec![0usize; self.ncols()];
        for row in &self.rows {
            let mut ones = 0;
            for (j, x) in row.iter().enumerate() {
                if x.is_one() {
                    ones += 1;
                    col_hits[j] += 1;
                } else if !x.is_zero() {
                    return false;
                }
            }
            if ones != 1 {
                return false;
            }
        }
        n == self.ncols() && col_hits.iter().all(|&c| c == 1)
    }

    /// Gauss-Jordan inverse with the first nonzero entry as pivot.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.nrows();
        assert_eq!(n, self.ncols(), "inverse of a non-square matrix");
        let mut a = self.rows.clone();
        let mut inv = Self::identity(n).rows;
        for c in 0..n {
            let p = (c..n).find(|&i| !a[i][c].is_zero())?;
            a.swap(p, c);
            inv.swap(p, c);
            let pivot = a[c][c].clone();
            for j in 0..n {
                a[c][j] /= &pivot;
                inv[c][j] /= &pivot;
            }
            for i in 0..n {
                if i == c || a[i][c].is_zero() {
                    continue;
                }
                let f = a[i][c].clone();
                for j in 0..n {
                    let (ac, ic) = (a[c][j].clone(), inv[c][j].clone());
                    a[i][j] -= &f * ac;
                    inv[i][j] -= &f * ic;
                }
            }
        }
        Some(Self::new(inv))
    }
}

impl Serialize for RationalMatrix {
    /// Entries as strings (`"p/q"` or `"p"`).
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| row.iter().map(rat_to_string).collect())
            .collect();
        strings.serialize(s)
    }
}
