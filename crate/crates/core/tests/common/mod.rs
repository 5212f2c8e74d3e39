//! Independent reference computations shared by the integration tests.

#![allow(dead_code)]

use bimoore::spectrum::IntPolynomial;
use bimoore::BipartiteGraph;

/// `det(xI - A)` by cofactor expansion along rows, memoised on the set of
/// columns already used. Exponential in the order; meant for small graphs.
pub fn cofactor_char_poly(g: &BipartiteGraph) -> IntPolynomial {
    let a = g.adjacency_matrix();
    let n = a.len();
    assert!(n <= 20, "cofactor oracle is for small graphs");
    let full = (1usize << n) - 1;
    let mut memo: Vec<Option<Vec<i64>>> = vec![None; 1 << n];
    memo[full] = Some(vec![1]);
    // masks in decreasing popcount order, so every superset is ready
    let mut masks: Vec<usize> = (0..full).collect();
    masks.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
    for mask in masks {
        let row = mask.count_ones() as usize;
        let mut acc = vec![0i64; n - row + 1];
        let mut free_before = 0;
        for col in 0..n {
            if mask & (1 << col) != 0 {
                continue;
            }
            let sign = if free_before % 2 == 0 { 1 } else { -1 };
            free_before += 1;
            let minor = memo[mask | (1 << col)].as_ref().unwrap();
            // entry of xI - A
            if row == col {
                for (k, &c) in minor.iter().enumerate() {
                    acc[k + 1] += sign * c;
                }
            }
            if a[row][col] != 0 {
                for (k, &c) in minor.iter().enumerate() {
                    acc[k] -= sign * a[row][col] * c;
                }
            }
        }
        memo[mask] = Some(acc);
    }
    IntPolynomial::from_i64(memo[0].as_ref().unwrap())
}

/// Points and blocks of the unique `[4,3;3]` Moore graph: six points of
/// degree 4, eight pairwise meeting triples, one of them repeated.
pub fn fig_1a() -> BipartiteGraph {
    let blocks = [
        [0, 1, 2],
        [0, 1, 2],
        [0, 3, 4],
        [0, 3, 5],
        [1, 3, 4],
        [1, 4, 5],
        [2, 3, 5],
        [2, 4, 5],
    ];
    BipartiteGraph::from_edges(
        6,
        8,
        blocks
            .iter()
            .enumerate()
            .flat_map(|(b, t)| t.iter().map(move |&p| (p, b))),
    )
}
