use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::ExactPoly;
use crate::graph::Graph;

pub const DEFAULT_EXACT_CAP: usize = 64;

/// `det(tI - A)` with exact integer coefficients (Faddeev-LeVerrier).
///
/// `M_k = A M_{k-1} + c_{n-k+1} I` and `c_{n-k} = -tr(A M_k) / k`; each
/// division by `k` is exact because the coefficients are integers.
pub fn char_poly_exact(g: &Graph, cap: usize) -> Result<ExactPoly> {
    let n = g.n();
    if n > cap {
        return Err(Error::TooLarge {
            what: "exact characteristic polynomial",
            size: n,
            cap,
        });
    }
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::from(1);
    let mut m: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // A is 0/1, so (A M)[i][j] is a sum of rows of M over neighbors of i.
        let mut next: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let mut row = vec![BigInt::zero(); n];
                for &w in g.neighbors(i) {
                    for (acc, x) in row.iter_mut().zip(&m[w]) {
                        *acc += x;
                    }
                }
                row
            })
            .collect();
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        let trace: BigInt = (0..n)
            .map(|i| g.neighbors(i).iter().map(|&w| &next[w][i]).sum::<BigInt>())
            .sum();
        let (q, r) = (-trace).div_rem(&BigInt::from(k));
        if !r.is_zero() {
            return Err(Error::Internal(format!("Faddeev-LeVerrier step {k} is not integral")));
        }
        coeffs[n - k] = q;
        m = next;
    }
    Ok(ExactPoly::new(coeffs))
}
