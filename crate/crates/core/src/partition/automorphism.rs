//! Backtracking automorphism search for small graphs.
//!
//! Candidate images are restricted to vertices of the same color, where the
//! colors come from an equitable refinement that every relevant automorphism
//! preserves cell by cell.

use crate::error::{Error, Result};
use crate::graph::Graph;

use super::{coarsest_equitable_refinement, delta_u, Partition};

pub fn is_automorphism(g: &Graph, perm: &[usize]) -> bool {
    perm.len() == g.n() && g.edges().all(|(a, b)| g.has_edge(perm[a], perm[b]))
}

/// Searches for an automorphism that maps `x -> y` for every forced pair and
/// sends each vertex to a vertex of the same color.
pub fn find_automorphism(g: &Graph, colors: &[usize], forced: &[(usize, usize)]) -> Option<Vec<usize>> {
    let n = g.n();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for &(x, y) in forced {
        if colors[x] != colors[y] || g.degree(x) != g.degree(y) {
            return None;
        }
        if image[x] != usize::MAX || used[y] {
            if image[x] != y {
                return None;
            }
            continue;
        }
        image[x] = y;
        used[y] = true;
    }
    for &(x, _) in forced {
        for &(z, _) in forced {
            if g.has_edge(x, z) != g.has_edge(image[x], image[z]) {
                return None;
            }
        }
    }

    // Assign free vertices in BFS order from the forced ones so adjacency
    // constraints bite early.
    let mut order = Vec::with_capacity(n);
    let mut queued = vec![false; n];
    let mut frontier: Vec<usize> = forced.iter().map(|&(x, _)| x).collect();
    for &x in &frontier {
        queued[x] = true;
    }
    let mut roots = 0..n;
    loop {
        let mut next = Vec::new();
        for &x in &frontier {
            for &w in g.neighbors(x) {
                if !queued[w] {
                    queued[w] = true;
                    order.push(w);
                    next.push(w);
                }
            }
        }
        if next.is_empty() {
            match roots.find(|&v| !queued[v]) {
                Some(v) => {
                    queued[v] = true;
                    order.push(v);
                    next.push(v);
                }
                None => break,
            }
        }
        frontier = next;
    }

    if extend(g, colors, &order, 0, &mut image, &mut used) {
        Some(image)
    } else {
        None
    }
}

fn extend(g: &Graph, colors: &[usize], order: &[usize], depth: usize, image: &mut [usize], used: &mut [bool]) -> bool {
    let Some(&x) = order.get(depth) else {
        return true;
    };
    for y in 0..g.n() {
        if used[y] || colors[y] != colors[x] || g.degree(y) != g.degree(x) {
            continue;
        }
        let consistent = (0..g.n())
            .filter(|&z| image[z] != usize::MAX)
            .all(|z| g.has_edge(x, z) == g.has_edge(y, image[z]));
        if !consistent {
            continue;
        }
        image[x] = y;
        used[y] = true;
        if extend(g, colors, order, depth + 1, image, used) {
            return true;
        }
        image[x] = usize::MAX;
        used[y] = false;
    }
    false
}

fn check_cap(g: &Graph, n_cap: usize) -> Result<()> {
    if g.n() > n_cap {
        Err(Error::TooLarge {
            what: "brute-force automorphism search",
            size: g.n(),
            cap: n_cap,
        })
    } else {
        Ok(())
    }
}

/// Orbit partition of the stabilizer `Aut(X)_u`.
pub fn stabilizer_orbits_bruteforce(g: &Graph, u: usize, n_cap: usize) -> Result<Partition> {
    g.check_vertex(u)?;
    check_cap(g, n_cap)?;
    let n = g.n();
    let delta = delta_u(g, u)?;
    let colors: Vec<usize> = (0..n).map(|v| delta.cell_of(v)).collect();

    let mut orbit: Vec<usize> = (0..n).collect();
    fn root(orbit: &mut [usize], mut x: usize) -> usize {
        while orbit[x] != x {
            orbit[x] = orbit[orbit[x]];
            x = orbit[x];
        }
        x
    }
    for x in 0..n {
        for y in x + 1..n {
            if colors[x] != colors[y] || root(&mut orbit, x) == root(&mut orbit, y) {
                continue;
            }
            if let Some(perm) = find_automorphism(g, &colors, &[(u, u), (x, y)]) {
                for (a, &b) in perm.iter().enumerate() {
                    let (ra, rb) = (root(&mut orbit, a), root(&mut orbit, b));
                    orbit[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }
    let reps: Vec<usize> = (0..n).map(|v| root(&mut orbit, v)).collect();
    Ok(Partition::from_colors(&reps))
}

/// Whether some automorphism maps `u` to `v`.
pub fn similar_bruteforce(g: &Graph, u: usize, v: usize, n_cap: usize) -> Result<bool> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    check_cap(g, n_cap)?;
    let stable = coarsest_equitable_refinement(g, &Partition::trivial(g.n()))?;
    let colors: Vec<usize> = (0..g.n()).map(|x| stable.cell_of(x)).collect();
    Ok(find_automorphism(g, &colors, &[(u, v)]).is_some())
}
