//! Walk matrices and controllability, in exact arithmetic.
//!
//! The walk matrix of `u` has columns `e_u, A e_u, ..., A^{n-1} e_u`; its
//! entry `[w][k]` counts walks of length `k` from `u` to `w`. The pair
//! `(X, u)` is controllable when the walk matrix is invertible.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{bareiss_rank, ExactPoly, IntMatrix, RationalMatrix};
use crate::graph::Graph;
use crate::spectral::{char_poly_exact, eigenvalue_support, SpectralDecomposition};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkMatrix {
    pub base_vertex: usize,
    /// Row-major: `entries[w][k] = (A^k)[w][u]`.
    pub entries: IntMatrix,
}

fn check_cap(g: &Graph, cap: usize, what: &'static str) -> Result<()> {
    if g.n() > cap {
        Err(Error::TooLarge { what, size: g.n(), cap })
    } else {
        Ok(())
    }
}

pub fn walk_matrix(g: &Graph, u: usize, cap: usize) -> Result<WalkMatrix> {
    g.check_vertex(u)?;
    check_cap(g, cap, "walk matrix")?;
    let n = g.n();
    let mut entries = vec![vec![BigInt::zero(); n]; n];
    entries[u][0] = BigInt::one();
    for k in 1..n {
        for w in 0..n {
            let s: BigInt = g.neighbors(w).iter().map(|&x| &entries[x][k - 1]).sum();
            entries[w][k] = s;
        }
    }
    Ok(WalkMatrix { base_vertex: u, entries })
}

pub fn rank_exact(m: &[Vec<BigInt>]) -> usize {
    bareiss_rank(m)
}

/// `phi(X \ u)`; the null graph has characteristic polynomial 1.
pub fn deleted_char_poly(g: &Graph, u: usize, cap: usize) -> Result<ExactPoly> {
    g.check_vertex(u)?;
    if g.n() == 1 {
        return Ok(ExactPoly::one());
    }
    char_poly_exact(&g.delete_vertex(u)?, cap)
}

/// `deg phi(X) - deg gcd(phi(X), phi(X \ u))`: the number of poles of
/// `phi(X \ u, t) / phi(X, t)`.
pub fn pole_count(phi: &ExactPoly, phi_deleted: &ExactPoly) -> usize {
    let gcd = phi.to_rat().gcd(&phi_deleted.to_rat());
    phi.degree() - gcd.degree().unwrap_or(0)
}

/// Controllability decided twice: full rank of `W_u`, and coprimality of
/// `phi(X)` and `phi(X \ u)`. Disagreement is reported as an internal error.
pub fn is_controllable(g: &Graph, u: usize, cap: usize) -> Result<bool> {
    let w = walk_matrix(g, u, cap)?;
    let by_rank = rank_exact(&w.entries) == g.n();
    let phi = char_poly_exact(g, cap)?;
    let by_gcd = pole_count(&phi, &deleted_char_poly(g, u, cap)?) == g.n();
    if by_rank != by_gcd {
        return Err(Error::Internal(format!(
            "controllability of vertex {u}: walk-matrix rank says {by_rank}, coprimality says {by_gcd}"
        )));
    }
    Ok(by_rank)
}

pub fn cospectral_via_charpoly(g: &Graph, u: usize, v: usize, cap: usize) -> Result<bool> {
    g.check_vertex(v)?;
    Ok(deleted_char_poly(g, u, cap)? == deleted_char_poly(g, v, cap)?)
}

/// `W_u^T W_u`, whose `[r][s]` entry is `(A^{r+s})[u][u]`.
pub fn gram(w: &WalkMatrix) -> IntMatrix {
    let n = w.entries.len();
    (0..n)
        .map(|r| {
            (0..n)
                .map(|s| w.entries.iter().map(|row| &row[r] * &row[s]).sum())
                .collect()
        })
        .collect()
}

pub fn cospectral_via_gram(g: &Graph, u: usize, v: usize, cap: usize) -> Result<bool> {
    let wu = walk_matrix(g, u, cap)?;
    let wv = walk_matrix(g, v, cap)?;
    Ok(gram(&wu) == gram(&wv))
}

/// `(rank W_u, |support(u)|, pole count)`; all three coincide.
pub fn support_size_crosscheck(
    g: &Graph,
    sd: &SpectralDecomposition,
    u: usize,
    support_tolerance: f64,
    cap: usize,
) -> Result<(usize, usize, usize)> {
    let rank = rank_exact(&walk_matrix(g, u, cap)?.entries);
    let support = eigenvalue_support(sd, u, support_tolerance).len();
    let poles = pole_count(&char_poly_exact(g, cap)?, &deleted_char_poly(g, u, cap)?);
    Ok((rank, support, poles))
}

/// `Q = W_v W_u^{-1}` with its verified properties.
#[derive(Clone, Debug, Serialize)]
pub struct TransferSimilarity {
    pub u: usize,
    pub v: usize,
    pub q: RationalMatrix,
    /// `QA = AQ`.
    pub commutes_with_adjacency: bool,
    /// `Q e_u = e_v`.
    pub maps_u_to_v: bool,
    /// `Q^T Q = I`.
    pub orthogonal: bool,
    pub cospectral: bool,
    pub is_permutation: bool,
}

pub fn transfer_similarity(g: &Graph, u: usize, v: usize, cap: usize) -> Result<TransferSimilarity> {
    for x in [u, v] {
        if !is_controllable(g, x, cap)? {
            return Err(Error::NotControllable(x));
        }
    }
    let wu = RationalMatrix::from_int(&walk_matrix(g, u, cap)?.entries);
    let wv = RationalMatrix::from_int(&walk_matrix(g, v, cap)?.entries);
    let wu_inv = wu
        .inverse()
        .ok_or_else(|| Error::Internal(format!("walk matrix of controllable vertex {u} is singular")))?;
    let q = wv.mul(&wu_inv);

    let n = g.n();
    let a = RationalMatrix::from_int(
        &(0..n)
            .map(|i| (0..n).map(|j| BigInt::from(u8::from(g.has_edge(i, j)))).collect())
            .collect::<Vec<_>>(),
    );
    let commutes_with_adjacency = q.mul(&a) == a.mul(&q);
    let column_u = q.column(u);
    let maps_u_to_v = column_u
        .iter()
        .enumerate()
        .all(|(i, x)| if i == v { x.is_one() } else { x.is_zero() });
    let orthogonal = q.transpose().mul(&q).is_identity();
    let cospectral = cospectral_via_gram(g, u, v, cap)?;
    let is_permutation = q.is_permutation();
    Ok(TransferSimilarity {
        u,
        v,
        q,
        commutes_with_adjacency,
        maps_u_to_v,
        orthogonal,
        cospectral,
        is_permutation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, path};
    use crate::spectral::{decompose, DEFAULT_EXACT_CAP, DEFAULT_SUPPORT_TOLERANCE};

    const CAP: usize = DEFAULT_EXACT_CAP;

    fn ints(rows: &[&[i64]]) -> IntMatrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn walk_matrix_examples() {
        let w = walk_matrix(&path(2).unwrap(), 0, CAP).unwrap();
        assert_eq!(w.entries, ints(&[&[1, 0], &[0, 1]]));
        let w = walk_matrix(&path(3).unwrap(), 1, CAP).unwrap();
        assert_eq!(w.entries, ints(&[&[0, 1, 0], &[1, 0, 2], &[0, 1, 0]]));
        assert_eq!(rank_exact(&w.entries), 2);
        assert_eq!(rank_exact(&walk_matrix(&path(4).unwrap(), 0, CAP).unwrap().entries), 4);
        assert!(walk_matrix(&path(5).unwrap(), 0, 4).is_err());
    }

    #[test]
    fn controllability() {
        assert!(is_controllable(&path(4).unwrap(), 0, CAP).unwrap());
        assert!(!is_controllable(&path(3).unwrap(), 1, CAP).unwrap());
        for n in 3..6 {
            let k = complete(n).unwrap();
            assert!((0..n).all(|u| !is_controllable(&k, u, CAP).unwrap()));
        }
        assert!(is_controllable(&path(1).unwrap(), 0, CAP).unwrap());
    }

    #[test]
    fn cospectrality_routes() {
        let p3 = path(3).unwrap();
        assert!(cospectral_via_charpoly(&p3, 0, 2, CAP).unwrap());
        assert!(cospectral_via_gram(&p3, 0, 2, CAP).unwrap());
        let p4 = path(4).unwrap();
        assert!(!cospectral_via_charpoly(&p4, 0, 1, CAP).unwrap());
        assert!(!cospectral_via_gram(&p4, 0, 1, CAP).unwrap());
        assert_eq!(deleted_char_poly(&p4, 0, CAP).unwrap(), ExactPoly::from_i64(&[0, -2, 0, 1]));
        assert_eq!(deleted_char_poly(&p4, 1, CAP).unwrap(), ExactPoly::from_i64(&[0, -1, 0, 1]));
        let k5 = complete(5).unwrap();
        assert!(cospectral_via_charpoly(&k5, 1, 3, CAP).unwrap());
    }

    #[test]
    fn gram_entries_are_closed_walk_counts() {
        let g = crate::graph::petersen();
        let w = walk_matrix(&g, 4, CAP).unwrap();
        let gm = gram(&w);
        let mut diag = Vec::new();
        let mut column = vec![BigInt::zero(); 10];
        column[4] = BigInt::one();
        for _ in 0..19 {
            diag.push(column[4].clone());
            column = (0..10)
                .map(|x| g.neighbors(x).iter().map(|&y| &column[y]).sum())
                .collect();
        }
        // (W^T W)[r][s] = e_u^T A^{r+s} e_u.
        for r in 0..10 {
            for s in 0..10 {
                assert_eq!(gm[r][s], diag[r + s]);
            }
        }
    }

    #[test]
    fn crosschecks() {
        let cases = [(path(3).unwrap(), 1, 2), (path(4).unwrap(), 0, 4), (path(1).unwrap(), 0, 1)];
        for (g, u, expected) in cases {
            let sd = decompose(&g, None).unwrap();
            let got = support_size_crosscheck(&g, &sd, u, DEFAULT_SUPPORT_TOLERANCE, CAP).unwrap();
            assert_eq!(got, (expected, expected, expected));
        }
    }

    #[test]
    fn p4_reversal() {
        let p4 = path(4).unwrap();
        let t = transfer_similarity(&p4, 0, 3, CAP).unwrap();
        let reversal = RationalMatrix::from_int(&ints(&[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 0, 0], &[1, 0, 0, 0]]));
        assert_eq!(t.q, reversal);
        assert!(t.commutes_with_adjacency && t.maps_u_to_v && t.orthogonal && t.cospectral && t.is_permutation);

        let same = transfer_similarity(&p4, 1, 1, CAP).unwrap();
        assert!(same.q.is_identity());

        assert!(matches!(
            transfer_similarity(&path(3).unwrap(), 1, 0, CAP),
            Err(Error::NotControllable(1))
        ));
    }

    #[test]
    fn non_cospectral_controllable_pair_is_not_orthogonal() {
        // P4: end 0 and interior 1 are both controllable but not cospectral.
        let p4 = path(4).unwrap();
        let t = transfer_similarity(&p4, 0, 1, CAP).unwrap();
        assert!(t.commutes_with_adjacency && t.maps_u_to_v);
        assert!(!t.cospectral && !t.orthogonal);
    }
}
