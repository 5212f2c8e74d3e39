//! Two-sided graphs stored as a biadjacency bit matrix.
//!
//! Side 1 vertices index the rows, side 2 vertices index the columns. Only
//! edges between the two sides can be represented, so every value of
//! [`BipartiteGraph`] is bipartite by construction.

mod canon;
pub mod io;
mod metrics;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

pub(crate) use canon::rows_are_canonical;
pub use canon::{canonical_form, canonical_labeling, is_canonical, CanonicalLabeling};
pub use metrics::{
    degrees, diameter, eccentricities, girth, is_biregular, is_connected, metrics, Distance,
    GraphMetrics,
};

/// One of the two stable sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    One,
    Two,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::One => Side::Two,
            Side::Two => Side::One,
        }
    }
}

/// Optional human-readable vertex names, used by DOT export.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labels {
    pub side1: Vec<String>,
    pub side2: Vec<String>,
}

/// A bipartite graph with an `n1 x n2` biadjacency matrix.
///
/// Equality and hashing look at the matrix only; labels are ignored.
#[derive(Clone)]
pub struct BipartiteGraph {
    n1: usize,
    n2: usize,
    words: usize,
    bits: Vec<u64>,
    labels: Option<Arc<Labels>>,
}

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

impl BipartiteGraph {
    /// Edgeless graph with the given side sizes.
    ///
    /// Panics if `n1 + n2 < 2`.
    pub fn new(n1: usize, n2: usize) -> Self {
        assert!(
            n1 + n2 >= 2,
            "a bipartite graph needs at least two vertices"
        );
        let words = words_for(n2);
        BipartiteGraph {
            n1,
            n2,
            words,
            bits: vec![0; n1 * words],
            labels: None,
        }
    }

    pub fn from_edges<I>(n1: usize, n2: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::new(n1, n2);
        for (i, j) in edges {
            g.add_edge(i, j);
        }
        g
    }

    pub fn from_fn(n1: usize, n2: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Self::new(n1, n2);
        for i in 0..n1 {
            for j in 0..n2 {
                if adjacent(i, j) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Builds a graph from single-word rows (`n2 <= 64`); bit `j` of `rows[i]`
    /// is the edge `(i, j)`.
    pub fn from_u64_rows(n2: usize, rows: &[u64]) -> Self {
        assert!(n2 <= 64);
        let mut g = Self::new(rows.len(), n2);
        let mask = if n2 == 64 { u64::MAX } else { (1u64 << n2) - 1 };
        for (i, &row) in rows.iter().enumerate() {
            g.bits[i] = row & mask;
        }
        g
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        assert!(i < self.n1 && j < self.n2, "edge ({i}, {j}) out of range");
        self.bits[i * self.words + j / 64] |= 1u64 << (j % 64);
    }

    pub fn remove_edge(&mut self, i: usize, j: usize) {
        assert!(i < self.n1 && j < self.n2, "edge ({i}, {j}) out of range");
        self.bits[i * self.words + j / 64] &= !(1u64 << (j % 64));
    }

    pub fn with_labels(mut self, labels: Labels) -> Self {
        assert_eq!(labels.side1.len(), self.n1);
        assert_eq!(labels.side2.len(), self.n2);
        self.labels = Some(Arc::new(labels));
        self
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    pub fn labels(&self) -> Option<&Labels> {
        self.labels.as_deref()
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn side_len(&self, side: Side) -> usize {
        match side {
            Side::One => self.n1,
            Side::Two => self.n2,
        }
    }

    pub fn order(&self) -> usize {
        self.n1 + self.n2
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    /// Raw bit words of row `i`.
    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    /// Row `i` as a single word, when `n2 <= 64`.
    #[inline]
    pub fn row_u64(&self, i: usize) -> u64 {
        debug_assert!(self.n2 <= 64);
        self.bits[i * self.words]
    }

    pub fn edge_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn row_degree(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn column_degree(&self, j: usize) -> usize {
        (0..self.n1).filter(|&i| self.has_edge(i, j)).count()
    }

    /// Side-2 neighbours of side-1 vertex `i`, ascending.
    pub fn row_neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(i).iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    None
                } else {
                    let b = word.trailing_zeros() as usize;
                    word &= word - 1;
                    Some(w * 64 + b)
                }
            })
        })
    }

    /// Side-1 neighbours of side-2 vertex `j`, ascending.
    pub fn column_neighbors(&self, j: usize) -> Vec<usize> {
        (0..self.n1).filter(|&i| self.has_edge(i, j)).collect()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n1).flat_map(move |i| self.row_neighbors(i).map(move |j| (i, j)))
    }

    /// Adjacency lists over all `n1 + n2` vertices, side 1 numbered first.
    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.order()];
        for (i, j) in self.edges() {
            adj[i].push(self.n1 + j);
            adj[self.n1 + j].push(i);
        }
        adj
    }

    /// The same graph with the roles of the sides exchanged.
    pub fn swap_sides(&self) -> BipartiteGraph {
        let mut t = BipartiteGraph::new(self.n2, self.n1);
        for (i, j) in self.edges() {
            t.add_edge(j, i);
        }
        if let Some(l) = &self.labels {
            t = t.with_labels(Labels {
                side1: l.side2.clone(),
                side2: l.side1.clone(),
            });
        }
        t
    }

    /// Swaps sides if needed so that side 1 has the larger (first) degree.
    /// Intended for biregular graphs; others are returned unchanged.
    pub fn larger_degree_first(&self) -> BipartiteGraph {
        match is_biregular(self) {
            Some((r, s)) if r < s => self.swap_sides(),
            _ => self.clone(),
        }
    }

    /// Applies `row_perm` and `col_perm`: row `i` of the result is row
    /// `row_perm[i]` of `self`, column `j` is column `col_perm[j]`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> BipartiteGraph {
        assert_eq!(row_perm.len(), self.n1);
        assert_eq!(col_perm.len(), self.n2);
        BipartiteGraph::from_fn(self.n1, self.n2, |i, j| {
            self.has_edge(row_perm[i], col_perm[j])
        })
    }

    /// Dense 0/1 adjacency matrix of the whole graph (side 1 first).
    pub fn adjacency_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.order();
        let mut a = vec![vec![0i64; n]; n];
        for (i, j) in self.edges() {
            a[i][self.n1 + j] = 1;
            a[self.n1 + j][i] = 1;
        }
        a
    }

    /// Compares biadjacency matrices read row by row, `1 > 0`, column 0
    /// most significant. Only meaningful for equal side sizes.
    pub fn cmp_matrix(&self, other: &BipartiteGraph) -> std::cmp::Ordering {
        debug_assert_eq!((self.n1, self.n2), (other.n1, other.n2));
        for i in 0..self.n1 {
            for j in 0..self.n2 {
                match (self.has_edge(i, j), other.has_edge(i, j)) {
                    (true, false) => return std::cmp::Ordering::Greater,
                    (false, true) => return std::cmp::Ordering::Less,
                    _ => {}
                }
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl PartialEq for BipartiteGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n1 == other.n1 && self.n2 == other.n2 && self.bits == other.bits
    }
}

impl Eq for BipartiteGraph {}

impl Hash for BipartiteGraph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n1.hash(state);
        self.n2.hash(state);
        self.bits.hash(state);
    }
}

impl fmt::Debug for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BipartiteGraph {}x{}", self.n1, self.n2)?;
        for i in 0..self.n1 {
            for j in 0..self.n2 {
                f.write_str(if self.has_edge(i, j) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Renders the plain-text biadjacency format.
impl fmt::Display for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&io::write_biadjacency(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edges_and_degrees() {
        let g = BipartiteGraph::from_fn(2, 3, |_, _| true);
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.row_degree(0), 3);
        assert_eq!(g.column_degree(2), 2);
        assert_eq!(g.row_neighbors(1).collect::<Vec<_>>(), vec![0, 1, 2]);
    }

    #[test]
    fn wide_rows_span_words() {
        let mut g = BipartiteGraph::new(2, 130);
        g.add_edge(0, 0);
        g.add_edge(0, 64);
        g.add_edge(1, 129);
        assert_eq!(g.row_neighbors(0).collect::<Vec<_>>(), vec![0, 64]);
        assert_eq!(g.column_neighbors(129), vec![1]);
        assert_eq!(g.edge_count(), 3);
        let t = g.swap_sides();
        assert!(t.has_edge(129, 1) && t.has_edge(64, 0));
        g.remove_edge(0, 64);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn labels_do_not_affect_equality() {
        let g = BipartiteGraph::from_edges(1, 1, [(0, 0)]);
        let h = g.clone().with_labels(Labels {
            side1: vec!["a".into()],
            side2: vec!["b".into()],
        });
        assert_eq!(g, h);
    }

    #[test]
    #[should_panic]
    fn single_vertex_rejected() {
        BipartiteGraph::new(1, 0);
    }
}
