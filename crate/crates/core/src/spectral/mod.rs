//! Spectral decomposition `A = sum_r theta_r E_r` and the transition operator
//! `H(t) = sum_r exp(i theta_r t) E_r`.

mod charpoly;

pub use charpoly::{char_poly_exact, DEFAULT_EXACT_CAP};

use std::ops::Range;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest graph accepted for dense eigendecomposition.
pub const SPECTRAL_CAP: usize = 4096;

/// Default threshold on `(E_r)[u][u]` for eigenvalue supports.
pub const DEFAULT_SUPPORT_TOLERANCE: f64 = 1e-10;

/// Default clustering tolerance for a graph of order `n` with spectral radius `rho`.
pub fn default_grouping_tolerance(n: usize, rho: f64) -> f64 {
    f64::max(1e-8, n as f64 * rho.abs() * 1e-12)
}

/// Distinct eigenvalues `theta_1 > ... > theta_d` with their spectral idempotents.
///
/// The idempotents are kept in factored form: `E_r = V_r V_r^T` where the
/// columns of `V_r` are the orthonormal eigenvectors grouped into cluster `r`.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    raw: Vec<f64>,
    vectors: DMatrix<f64>,
    clusters: Vec<Range<usize>>,
    eigenvalues: Vec<f64>,
    grouping_tolerance: f64,
}

/// Eigendecomposition of the adjacency matrix of `g`, grouped into idempotents.
///
/// Numeric eigenvalues are clustered wherever consecutive sorted values are
/// closer than `grouping_tolerance` (default: [`default_grouping_tolerance`]).
pub fn decompose(g: &Graph, grouping_tolerance: Option<f64>) -> Result<SpectralDecomposition> {
    let n = g.n();
    if n > SPECTRAL_CAP {
        return Err(Error::TooLarge {
            what: "eigendecomposition",
            size: n,
            cap: SPECTRAL_CAP,
        });
    }
    if let Some(tol) = grouping_tolerance {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "grouping tolerance must be positive, got {tol}"
            )));
        }
    }
    let eig = SymmetricEigen::try_new(g.adjacency_matrix(), f64::EPSILON, 10_000 + 1_000 * n)
        .ok_or(Error::EigenSolver { n })?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let raw: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(n, n, |row, col| eig.eigenvectors[(row, order[col])]);

    let rho = raw[0];
    let tol = grouping_tolerance.unwrap_or_else(|| default_grouping_tolerance(n, rho));
    let mut clusters = Vec::new();
    let mut start = 0;
    for k in 1..=n {
        if k == n || raw[k - 1] - raw[k] >= tol {
            clusters.push(start..k);
            start = k;
        }
    }
    let eigenvalues = clusters
        .iter()
        .map(|c| raw[c.clone()].iter().sum::<f64>() / c.len() as f64)
        .collect();

    Ok(SpectralDecomposition {
        raw,
        vectors,
        clusters,
        eigenvalues,
        grouping_tolerance: tol,
    })
}

impl SpectralDecomposition {
    pub fn n(&self) -> usize {
        self.raw.len()
    }

    /// Distinct eigenvalues, descending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn distinct_count(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.clusters.iter().map(ExactSizeIterator::len).collect()
    }

    /// All `n` numeric eigenvalues, descending.
    pub fn eigenvalue_multiset(&self) -> &[f64] {
        &self.raw
    }

    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn grouping_tolerance(&self) -> f64 {
        self.grouping_tolerance
    }

    /// `E_r` as a dense matrix.
    pub fn idempotent(&self, r: usize) -> DMatrix<f64> {
        let block = self.vectors.columns_range(self.clusters[r].clone());
        block * block.transpose()
    }

    pub fn idempotents(&self) -> Vec<DMatrix<f64>> {
        (0..self.distinct_count()).map(|r| self.idempotent(r)).collect()
    }

    /// `(E_r)[u][v]`. Symmetric in `u` and `v` bit for bit.
    pub fn idempotent_entry(&self, r: usize, u: usize, v: usize) -> f64 {
        self.clusters[r]
            .clone()
            .map(|k| self.vectors[(u, k)] * self.vectors[(v, k)])
            .sum()
    }

    /// `E_r e_u`.
    pub fn projection(&self, r: usize, u: usize) -> DVector<f64> {
        let block = self.vectors.columns_range(self.clusters[r].clone());
        let coords = block.row(u).transpose();
        block * coords
    }

    /// `H(t)[u][v] = sum_r exp(i theta_r t) (E_r)[u][v]`.
    pub fn transition_entry(&self, u: usize, v: usize, t: f64) -> Complex64 {
        self.eigenvalues
            .iter()
            .enumerate()
            .map(|(r, &theta)| Complex64::from_polar(1.0, theta * t) * self.idempotent_entry(r, u, v))
            .sum()
    }

    /// `H(t)` as a dense complex matrix.
    pub fn transition_matrix(&self, t: f64) -> DMatrix<Complex64> {
        let n = self.n();
        let mut phased = DMatrix::<Complex64>::zeros(n, n);
        let mut plain = DMatrix::<Complex64>::zeros(n, n);
        for (r, cluster) in self.clusters.iter().enumerate() {
            let phase = Complex64::from_polar(1.0, self.eigenvalues[r] * t);
            for k in cluster.clone() {
                for row in 0..n {
                    let x = self.vectors[(row, k)];
                    plain[(row, k)] = Complex64::new(x, 0.0);
                    phased[(row, k)] = phase * x;
                }
            }
        }
        phased * plain.transpose()
    }
}

pub fn transition_matrix(sd: &SpectralDecomposition, t: f64) -> DMatrix<Complex64> {
    sd.transition_matrix(t)
}

/// Indices `r` with `(E_r)[u][u] > support_tolerance`.
pub fn eigenvalue_support(sd: &SpectralDecomposition, u: usize, support_tolerance: f64) -> Vec<usize> {
    (0..sd.distinct_count())
        .filter(|&r| sd.idempotent_entry(r, u, u) > support_tolerance)
        .collect()
}

/// Minimum eigenvalue separation against the bound `12 / (n + 1)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapReport {
    pub n: usize,
    /// Minimum gap over the eigenvalue multiset; 0 when an eigenvalue repeats.
    pub sigma: f64,
    pub sigma_squared: f64,
    pub bound: f64,
    /// `sigma^2 < bound`, strictly.
    pub satisfied: bool,
}

pub fn gap_report(sd: &SpectralDecomposition) -> Result<GapReport> {
    let n = sd.n();
    if n < 2 {
        return Err(Error::InvalidArgument("eigenvalue gap needs at least two vertices".into()));
    }
    let sigma = if sd.multiplicities().iter().any(|&m| m > 1) {
        0.0
    } else {
        sd.eigenvalues()
            .windows(2)
            .map(|w| w[0] - w[1])
            .fold(f64::INFINITY, f64::min)
    };
    let bound = 12.0 / (n as f64 + 1.0);
    let sigma_squared = sigma * sigma;
    Ok(GapReport {
        n,
        sigma,
        sigma_squared,
        bound,
        satisfied: sigma_squared < bound,
    })
}

pub fn eigenvalue_gap(g: &Graph) -> Result<GapReport> {
    gap_report(&decompose(g, None)?)
}

/// `(sum over ordered pairs of (theta_i - theta_j)^2, 4 n |E|)`, which agree.
pub fn trace_identity_check(g: &Graph) -> Result<(f64, f64)> {
    let sd = decompose(g, None)?;
    Ok(trace_identity(&sd, g.edge_count()))
}

pub fn trace_identity(sd: &SpectralDecomposition, edges: usize) -> (f64, f64) {
    let ev = sd.eigenvalue_multiset();
    let lhs = ev
        .iter()
        .flat_map(|a| ev.iter().map(move |b| (a - b) * (a - b)))
        .sum();
    (lhs, 4.0 * sd.n() as f64 * edges as f64)
}
