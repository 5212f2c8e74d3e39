//! Fixed inputs shared by the benchmarks.

use bimoore::constructions::{self as cons, Recipe};
use bimoore::BipartiteGraph;

/// Graphs of increasing size with a fixed, scrambled vertex order.
pub fn graphs() -> Vec<(&'static str, BipartiteGraph)> {
    let list = [
        ("heawood", Recipe::ProjectivePlane(2)),
        ("tutte-coxeter", Recipe::SymplecticQuadrangle(2)),
        ("g6n-12", Recipe::G6n(12)),
        ("pg2-5", Recipe::ProjectivePlane(5)),
    ];
    list.into_iter()
        .map(|(name, r)| (name, scramble(&r.build().expect("fixture builds"))))
        .collect()
}

/// Deterministic relabelling by multiplication with a unit.
pub fn scramble(g: &BipartiteGraph) -> BipartiteGraph {
    let perm = |n: usize| -> Vec<usize> {
        let step = (1..n)
            .rev()
            .find(|&a| gcd(a, n) == 1 && a * 2 < n + 1)
            .unwrap_or(1);
        (0..n).map(|i| i * step % n).collect()
    };
    g.permuted(&perm(g.n1()), &perm(g.n2()))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn heawood() -> BipartiteGraph {
    cons::named("heawood").expect("registry graph")
}
