#![allow(dead_code)]

use qwalk::graph::graph6::parse_graph6;
use qwalk::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CONNECTED_1_7: &str = include_str!("../data/connected_1_7.g6");
pub const CONNECTED_4_6: &str = include_str!("../data/connected_4_6.g6");

pub fn catalog(text: &str) -> Vec<Graph> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| parse_graph6(l.trim()).unwrap())
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// G(n, p) sample.
pub fn gnp(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Connected G(n, p) sample, resampling until connected.
pub fn connected_gnp(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    loop {
        let g = gnp(rng, n, p);
        if g.is_connected() {
            return g;
        }
    }
}

/// `count` connected graphs with `lo <= n <= hi`.
pub fn random_connected(seed: u64, count: usize, lo: usize, hi: usize) -> Vec<Graph> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = r.gen_range(lo..=hi);
            let p = r.gen_range(0.25..0.75);
            connected_gnp(&mut r, n, p)
        })
        .collect()
}
