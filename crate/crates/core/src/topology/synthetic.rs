//! Deterministic synthetic topologies: grids, rings and random geometric
//! graphs.

use rand::Rng;

use crate::rng;

use super::Graph;

/// `width x height` lattice; nodes are named `rRRcCC`.
pub fn grid(width: usize, height: usize) -> Graph {
    let name = |r: usize, c: usize| format!("r{r:02}c{c:02}");
    let mut g = Graph::new();
    for r in 0..height {
        for c in 0..width {
            g.add_node(&name(r, c));
            if c + 1 < width {
                g.add_edge(&name(r, c), &name(r, c + 1));
            }
            if r + 1 < height {
                g.add_edge(&name(r, c), &name(r + 1, c));
            }
        }
    }
    g
}

/// Cycle on `n >= 3` nodes named `nNNN`.
pub fn ring(n: usize) -> Graph {
    let mut g = Graph::new();
    for i in 0..n {
        g.add_edge(&format!("n{i:03}"), &format!("n{:03}", (i + 1) % n));
    }
    g
}

/// `n` points uniform in the unit square joined when closer than `radius`.
pub fn random_geometric(n: usize, radius: f64, seed: u64) -> Graph {
    let mut rng = rng::stream(seed, &[0x6E0]);
    let pts: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen(), rng.gen())).collect();
    let mut g = Graph::new();
    for i in 0..n {
        g.add_node(&format!("v{i:04}"));
    }
    for i in 0..n {
        for j in i + 1..n {
            let (dx, dy) = (pts[i].0 - pts[j].0, pts[i].1 - pts[j].1);
            if dx * dx + dy * dy < radius * radius {
                g.add_edge(&format!("v{i:04}"), &format!("v{j:04}"));
            }
        }
    }
    g
}

/// The bundled corpus: for every diameter `n` in 5..=35 a grid and a ring
/// with that diameter, plus random geometric graphs of assorted density.
pub fn corpus(seed: u64) -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in 5..=35 {
        let w = n / 2 + 1;
        let h = n + 2 - w;
        out.push((format!("grid-{w}x{h}"), grid(w, h)));
        out.push((format!("ring-{}", 2 * n), ring(2 * n)));
    }
    for (i, nodes) in (40..=160).step_by(8).enumerate() {
        for (j, radius) in [0.16, 0.2, 0.26].into_iter().enumerate() {
            let g = random_geometric(nodes, radius, rng::derive_seed(seed, &[i as u64, j as u64]));
            out.push((format!("rgg-{nodes}-{radius}"), g));
        }
    }
    out
}
