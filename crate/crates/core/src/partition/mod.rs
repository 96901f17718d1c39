//! Equitable partitions, color refinement and `Delta_u`.
//!
//! A partition is equitable when, for every ordered pair of cells `(C_i, C_j)`,
//! all vertices of `C_i` have the same number of neighbors in `C_j`. The
//! coarsest equitable refinement of a partition is computed by splitting
//! cells on neighbor-count signatures until nothing changes; each round costs
//! `O(n + m)` plus sorting, and there are at most `n` rounds.

mod automorphism;

pub use automorphism::{find_automorphism, is_automorphism, similar_bruteforce, stabilizer_orbits_bruteforce};

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Cells are sorted internally and ordered by their minimum vertex, so two
/// partitions are equal exactly when they have the same cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    cells: Vec<Vec<usize>>,
    cell_of: Vec<usize>,
}

impl Partition {
    pub fn from_cells(n: usize, cells: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for cell in &cells {
            if cell.is_empty() {
                return Err(Error::InvalidArgument("empty cell".into()));
            }
            for &v in cell {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::InvalidArgument(format!("vertex {v} in two cells")));
                }
            }
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(Error::InvalidArgument(format!("vertex {v} not covered")));
        }
        Ok(Self::canonical(n, cells))
    }

    fn canonical(n: usize, mut cells: Vec<Vec<usize>>) -> Self {
        for cell in &mut cells {
            cell.sort_unstable();
        }
        cells.sort_unstable_by_key(|c| c[0]);
        let mut cell_of = vec![0; n];
        for (i, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = i;
            }
        }
        Self { cells, cell_of }
    }

    /// Cells are the classes of equal color.
    pub fn from_colors<T: Ord>(colors: &[T]) -> Self {
        let mut groups: BTreeMap<&T, Vec<usize>> = BTreeMap::new();
        for (v, c) in colors.iter().enumerate() {
            groups.entry(c).or_default().push(v);
        }
        Self::canonical(colors.len(), groups.into_values().collect())
    }

    pub fn discrete(n: usize) -> Self {
        Self::canonical(n, (0..n).map(|v| vec![v]).collect())
    }

    pub fn trivial(n: usize) -> Self {
        Self::canonical(n, vec![(0..n).collect()])
    }

    /// `{{u}, V \ {u}}` (just `{{u}}` on one vertex).
    pub fn isolate(n: usize, u: usize) -> Self {
        let rest: Vec<usize> = (0..n).filter(|&v| v != u).collect();
        let mut cells = vec![vec![u]];
        if !rest.is_empty() {
            cells.push(rest);
        }
        Self::canonical(n, cells)
    }

    pub fn n(&self) -> usize {
        self.cell_of.len()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn cell_of(&self, v: usize) -> usize {
        self.cell_of[v]
    }

    pub fn cell_sizes(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn is_singleton(&self, v: usize) -> bool {
        self.cells[self.cell_of[v]].len() == 1
    }

    /// Every cell of `self` lies inside a cell of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.n() == coarser.n()
            && self
                .cells
                .iter()
                .all(|cell| cell.iter().all(|&v| coarser.cell_of(v) == coarser.cell_of(cell[0])))
    }

    /// 0/1 characteristic matrix `P`, one column per cell.
    pub fn char_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n(), self.len(), |v, c| if self.cell_of[v] == c { 1.0 } else { 0.0 })
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.cells.serialize(s)
    }
}

/// Normalized characteristic matrix `Q`: columns of `P` scaled to unit length.
pub fn normalized_char_matrix(pi: &Partition) -> DMatrix<f64> {
    let mut q = pi.char_matrix();
    for (c, cell) in pi.cells().iter().enumerate() {
        let scale = 1.0 / (cell.len() as f64).sqrt();
        q.column_mut(c).scale_mut(scale);
    }
    q
}

/// Exact form of `Q^T Q = I`: `P^T P` is diagonal with the cell sizes.
pub fn char_matrix_gram_is_diagonal(pi: &Partition) -> bool {
    let sizes = pi.cell_sizes();
    (0..pi.len()).all(|i| {
        (0..pi.len()).all(|j| {
            let count = (0..pi.n())
                .filter(|&v| pi.cell_of(v) == i && pi.cell_of(v) == j)
                .count();
            count == if i == j { sizes[i] } else { 0 }
        })
    })
}

fn check_partition(g: &Graph, pi: &Partition) -> Result<()> {
    if pi.n() != g.n() {
        return Err(Error::InvalidArgument(format!(
            "partition on {} vertices for graph on {}",
            pi.n(),
            g.n()
        )));
    }
    Ok(())
}

/// Neighbor counts of `v` into each cell, as sorted `(cell, count)` pairs.
fn signature(g: &Graph, pi: &Partition, v: usize) -> Vec<(usize, usize)> {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &w in g.neighbors(v) {
        *counts.entry(pi.cell_of(w)).or_default() += 1;
    }
    counts.into_iter().collect()
}

/// The unique coarsest equitable partition refining `pi0`.
pub fn coarsest_equitable_refinement(g: &Graph, pi0: &Partition) -> Result<Partition> {
    check_partition(g, pi0)?;
    let mut pi = pi0.clone();
    loop {
        let colors: Vec<(usize, Vec<(usize, usize)>)> = (0..g.n())
            .map(|v| (pi.cell_of(v), signature(g, &pi, v)))
            .collect();
        let next = Partition::from_colors(&colors);
        if next.len() == pi.len() {
            return Ok(pi);
        }
        pi = next;
    }
}

/// `Delta_u`: coarsest equitable refinement of `{{u}, V \ {u}}`.
pub fn delta_u(g: &Graph, u: usize) -> Result<Partition> {
    g.check_vertex(u)?;
    coarsest_equitable_refinement(g, &Partition::isolate(g.n(), u))
}

pub fn check_delta_equality(g: &Graph, u: usize, v: usize) -> Result<bool> {
    Ok(delta_u(g, u)? == delta_u(g, v)?)
}

/// Quotient matrix: `b[i][j]` neighbors in cell `j` of any vertex in cell `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Quotient {
    pub b: Vec<Vec<usize>>,
}

/// The four equivalent characterizations of an equitable partition, each
/// decided on its own. `a`, `c` and `d` are exact; `b` is floating point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaChecks {
    /// Neighbor counts are constant on cells.
    pub counts_constant: bool,
    /// The column space of `Q` is `A`-invariant: `(I - QQ^T) A Q = 0`.
    pub column_space_invariant: bool,
    /// `A Q = Q B` for some `B`; decided exactly as `A P = P (P^T P)^{-1} P^T A P`.
    pub quotient_exists: bool,
    /// `A QQ^T = QQ^T A` over the rationals.
    pub commutes_with_projection: bool,
}

impl LemmaChecks {
    pub fn all(&self) -> bool {
        self.counts_constant && self.column_space_invariant && self.quotient_exists && self.commutes_with_projection
    }

    pub fn agree(&self) -> bool {
        let v = self.counts_constant;
        self.column_space_invariant == v && self.quotient_exists == v && self.commutes_with_projection == v
    }
}

/// Checks equitability by direct counting. When equitable, returns the
/// quotient `B` and the evaluated lemma equivalences.
pub fn is_equitable(g: &Graph, pi: &Partition) -> Result<Option<(Quotient, LemmaChecks)>> {
    check_partition(g, pi)?;
    let checks = lemma_checks(g, pi);
    if !checks.counts_constant {
        return Ok(None);
    }
    let k = pi.len();
    let b = (0..k)
        .map(|i| {
            let v = pi.cells()[i][0];
            let mut row = vec![0; k];
            for &w in g.neighbors(v) {
                row[pi.cell_of(w)] += 1;
            }
            row
        })
        .collect();
    Ok(Some((Quotient { b }, checks)))
}

type Q64 = Ratio<i64>;

pub fn lemma_checks(g: &Graph, pi: &Partition) -> LemmaChecks {
    let n = g.n();
    let k = pi.len();

    let counts_constant = pi
        .cells()
        .iter()
        .all(|cell| cell.iter().all(|&v| signature(g, pi, v) == signature(g, pi, cell[0])));

    // AP[v][j] = neighbors of v in cell j.
    let mut ap = vec![vec![0i64; k]; n];
    for (v, row) in ap.iter_mut().enumerate() {
        for &w in g.neighbors(v) {
            row[pi.cell_of(w)] += 1;
        }
    }
    let sizes = pi.cell_sizes();
    // B' = (P^T P)^{-1} P^T A P: cell-averaged neighbor counts.
    let b_avg: Vec<Vec<Q64>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let total: i64 = pi.cells()[i].iter().map(|&v| ap[v][j]).sum();
                    Q64::new(total, sizes[i] as i64)
                })
                .collect()
        })
        .collect();
    let quotient_exists = (0..n).all(|v| (0..k).all(|j| Q64::from(ap[v][j]) == b_avg[pi.cell_of(v)][j]));

    // (A QQ^T)[x][y] = |N(x) & cell(y)| / |cell(y)|, (QQ^T A)[x][y] = |N(y) & cell(x)| / |cell(x)|.
    let commutes_with_projection = (0..n).all(|x| {
        (0..n).all(|y| {
            let left = Q64::new(ap[x][pi.cell_of(y)], sizes[pi.cell_of(y)] as i64);
            let right = Q64::new(ap[y][pi.cell_of(x)], sizes[pi.cell_of(x)] as i64);
            left == right
        })
    });

    let q = normalized_char_matrix(pi);
    let aq = g.adjacency_matrix() * &q;
    let residual = &aq - &q * (q.transpose() * &aq);
    let column_space_invariant = residual.amax() < 1e-9;

    LemmaChecks {
        counts_constant,
        column_space_invariant,
        quotient_exists,
        commutes_with_projection,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, hypercube, path, petersen, star};

    #[test]
    fn regular_graphs_keep_trivial_partition() {
        for g in [petersen(), hypercube(3).unwrap(), cycle(7).unwrap(), complete(4).unwrap()] {
            let pi = coarsest_equitable_refinement(&g, &Partition::trivial(g.n())).unwrap();
            assert_eq!(pi, Partition::trivial(g.n()));
        }
        // Non-regular graphs split the trivial partition.
        let p = path(4).unwrap();
        assert_eq!(coarsest_equitable_refinement(&p, &Partition::trivial(4)).unwrap().len(), 2);
    }

    #[test]
    fn discrete_and_star() {
        let g = petersen();
        let d = Partition::discrete(10);
        assert_eq!(coarsest_equitable_refinement(&g, &d).unwrap(), d);
        let s = star(3).unwrap();
        let pi = Partition::from_cells(4, vec![vec![0], vec![1, 2, 3]]).unwrap();
        assert_eq!(coarsest_equitable_refinement(&s, &pi).unwrap(), pi);
    }

    #[test]
    fn delta_u_examples() {
        let q3 = hypercube(3).unwrap();
        for u in 0..8 {
            let delta = delta_u(&q3, u).unwrap();
            let mut sizes = delta.cell_sizes();
            sizes.sort_unstable();
            assert_eq!(sizes, vec![1, 1, 3, 3]);
            // Cells are the distance classes from u.
            let dist = q3.distances_from(u);
            for cell in delta.cells() {
                assert!(cell.iter().all(|&v| dist[v] == dist[cell[0]]));
            }
        }
        assert_eq!(delta_u(&path(4).unwrap(), 0).unwrap(), Partition::discrete(4));
        assert_eq!(delta_u(&path(1).unwrap(), 0).unwrap(), Partition::trivial(1));
        let pete = delta_u(&petersen(), 0).unwrap();
        assert_eq!(pete.cell_sizes(), vec![1, 3, 6]);
    }

    #[test]
    fn delta_equality() {
        assert!(check_delta_equality(&hypercube(3).unwrap(), 0, 7).unwrap());
        // Both refine to the discrete partition.
        assert!(check_delta_equality(&path(4).unwrap(), 0, 1).unwrap());
        assert!(!check_delta_equality(&crate::graph::star(3).unwrap(), 0, 1).unwrap());
        assert!(check_delta_equality(&path(3).unwrap(), 0, 2).unwrap());
    }

    #[test]
    fn equitable_examples() {
        let s = star(3).unwrap();
        let pi = Partition::from_cells(4, vec![vec![0], vec![1, 2, 3]]).unwrap();
        let (quot, checks) = is_equitable(&s, &pi).unwrap().unwrap();
        assert_eq!(quot.b, vec![vec![0, 3], vec![1, 0]]);
        assert!(checks.all());

        let p3 = path(3).unwrap();
        let pi = Partition::from_cells(3, vec![vec![0], vec![1, 2]]).unwrap();
        assert!(is_equitable(&p3, &pi).unwrap().is_none());
        assert!(lemma_checks(&p3, &pi).agree());

        let g = petersen();
        let (quot, _) = is_equitable(&g, &Partition::discrete(10)).unwrap().unwrap();
        for i in 0..10 {
            for j in 0..10 {
                assert_eq!(quot.b[i][j], usize::from(g.has_edge(i, j)));
            }
        }
    }

    #[test]
    fn normalized_matrices() {
        let q = normalized_char_matrix(&Partition::discrete(4));
        assert_eq!(q, DMatrix::identity(4, 4));
        let q = normalized_char_matrix(&Partition::trivial(4));
        assert!(q.iter().all(|&x| (x - 0.5).abs() < 1e-15));
        let pi = Partition::from_cells(5, vec![vec![0, 3], vec![1], vec![2, 4]]).unwrap();
        assert!(char_matrix_gram_is_diagonal(&pi));
        let q = normalized_char_matrix(&pi);
        assert!((q.transpose() * &q - DMatrix::identity(3, 3)).amax() < 1e-15);
        let qqt = &q * q.transpose();
        assert!((qqt[(0, 3)] - 0.5).abs() < 1e-15 && qqt[(0, 1)] == 0.0);
        for v in 0..5 {
            let ev = DMatrix::from_fn(5, 1, |i, _| if i == v { 1.0 } else { 0.0 });
            let fixed = (&qqt * &ev - &ev).amax() < 1e-15;
            assert_eq!(fixed, pi.is_singleton(v));
        }
    }

    #[test]
    fn invalid_partitions() {
        assert!(Partition::from_cells(3, vec![vec![0, 1]]).is_err());
        assert!(Partition::from_cells(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(Partition::from_cells(2, vec![vec![0, 2]]).is_err());
        let g = path(3).unwrap();
        assert!(coarsest_equitable_refinement(&g, &Partition::trivial(4)).is_err());
    }
}
