use std::collections::VecDeque;
use std::fmt;

use super::BipartiteGraph;

/// A path or cycle length that may be unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

impl From<usize> for Distance {
    fn from(d: usize) -> Self {
        Distance::Finite(d)
    }
}

/// Summary of the metric parameters of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphMetrics {
    pub degrees1: Vec<usize>,
    pub degrees2: Vec<usize>,
    pub diameter: Distance,
    pub girth: Distance,
    pub connected: bool,
}

/// Per-vertex degrees of side 1 and side 2, in vertex order.
pub fn degrees(g: &BipartiteGraph) -> (Vec<usize>, Vec<usize>) {
    let d1 = (0..g.n1()).map(|i| g.row_degree(i)).collect();
    let mut d2 = vec![0; g.n2()];
    for (_, j) in g.edges() {
        d2[j] += 1;
    }
    (d1, d2)
}

/// `(r, s)` when every side-1 vertex has degree `r` and every side-2 vertex
/// degree `s`.
pub fn is_biregular(g: &BipartiteGraph) -> Option<(usize, usize)> {
    let (d1, d2) = degrees(g);
    let r = *d1.first()?;
    let s = *d2.first()?;
    if d1.iter().all(|&d| d == r) && d2.iter().all(|&d| d == s) {
        debug_assert_eq!(r * g.n1(), s * g.n2());
        Some((r, s))
    } else {
        None
    }
}

fn bfs(adj: &[Vec<usize>], src: usize, dist: &mut [usize], queue: &mut VecDeque<usize>) -> usize {
    dist.fill(usize::MAX);
    dist[src] = 0;
    queue.clear();
    queue.push_back(src);
    let mut reached = 1;
    let mut far = 0;
    while let Some(u) = queue.pop_front() {
        let du = dist[u];
        far = du;
        for &w in &adj[u] {
            if dist[w] == usize::MAX {
                dist[w] = du + 1;
                reached += 1;
                queue.push_back(w);
            }
        }
    }
    if reached == adj.len() {
        far
    } else {
        usize::MAX
    }
}

/// Eccentricity of every vertex (side 1 first), by breadth-first search.
pub fn eccentricities(g: &BipartiteGraph) -> Vec<Distance> {
    let adj = g.adjacency_lists();
    let mut dist = vec![0; adj.len()];
    let mut queue = VecDeque::new();
    (0..adj.len())
        .map(|v| match bfs(&adj, v, &mut dist, &mut queue) {
            usize::MAX => Distance::Infinite,
            e => Distance::Finite(e),
        })
        .collect()
}

pub fn diameter(g: &BipartiteGraph) -> Distance {
    let adj = g.adjacency_lists();
    let mut dist = vec![0; adj.len()];
    let mut queue = VecDeque::new();
    let mut best = 0;
    for v in 0..adj.len() {
        match bfs(&adj, v, &mut dist, &mut queue) {
            usize::MAX => return Distance::Infinite,
            e => best = best.max(e),
        }
    }
    Distance::Finite(best)
}

pub fn is_connected(g: &BipartiteGraph) -> bool {
    let adj = g.adjacency_lists();
    let mut dist = vec![0; adj.len()];
    bfs(&adj, 0, &mut dist, &mut VecDeque::new()) != usize::MAX
}

/// Length of a shortest cycle.
pub fn girth(g: &BipartiteGraph) -> Distance {
    let adj = g.adjacency_lists();
    let n = adj.len();
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    let mut best = usize::MAX;
    for src in 0..n {
        dist.fill(usize::MAX);
        dist[src] = 0;
        parent[src] = usize::MAX;
        queue.clear();
        queue.push_back(src);
        'search: while let Some(u) = queue.pop_front() {
            // nothing shorter than `best` can be found past this depth
            if 2 * dist[u] >= best {
                break;
            }
            for &w in &adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    best = best.min(dist[u] + dist[w] + 1);
                    if best == 4 {
                        break 'search;
                    }
                }
            }
        }
    }
    if best == usize::MAX {
        Distance::Infinite
    } else {
        Distance::Finite(best)
    }
}

pub fn metrics(g: &BipartiteGraph) -> GraphMetrics {
    let (degrees1, degrees2) = degrees(g);
    let diameter = diameter(g);
    GraphMetrics {
        degrees1,
        degrees2,
        diameter,
        girth: girth(g),
        connected: diameter.is_finite(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(t: usize) -> BipartiteGraph {
        BipartiteGraph::from_edges(t, t, (0..t).flat_map(|i| [(i, i), ((i + 1) % t, i)]))
    }

    #[test]
    fn complete_bipartite_metrics() {
        let k = BipartiteGraph::from_fn(3, 3, |_, _| true);
        let m = metrics(&k);
        assert_eq!(m.diameter, Distance::Finite(2));
        assert_eq!(m.girth, Distance::Finite(4));
        assert!(m.connected);
        let k23 = BipartiteGraph::from_fn(2, 3, |_, _| true);
        assert_eq!(degrees(&k23), (vec![3, 3], vec![2, 2, 2]));
        assert_eq!(is_biregular(&k23), Some((3, 2)));
    }

    #[test]
    fn cycles() {
        for t in 2..9 {
            let c = cycle(t);
            assert_eq!(diameter(&c), Distance::Finite(t));
            assert_eq!(girth(&c), Distance::Finite(2 * t));
        }
    }

    #[test]
    fn forests_and_disconnected() {
        let star = BipartiteGraph::from_fn(1, 4, |_, _| true);
        assert_eq!(girth(&star), Distance::Infinite);
        assert_eq!(diameter(&star), Distance::Finite(2));
        let k11 = BipartiteGraph::from_edges(1, 1, [(0, 0)]);
        assert_eq!(diameter(&k11), Distance::Finite(1));
        let two = BipartiteGraph::from_edges(2, 2, [(0, 0), (1, 1)]);
        assert_eq!(diameter(&two), Distance::Infinite);
        assert!(!is_connected(&two));
        assert!(!metrics(&two).connected);
        assert_eq!(eccentricities(&two), vec![Distance::Infinite; 4]);
    }

    #[test]
    fn irregular_is_not_biregular() {
        let g = BipartiteGraph::from_edges(2, 2, [(0, 0), (0, 1), (1, 1)]);
        assert_eq!(is_biregular(&g), None);
    }
}
