//! Canonical forms under independent row and column permutations.
//!
//! The canonical representative of a biadjacency matrix is the largest
//! matrix, read row-major with `1 > 0`, over all row and column
//! permutations. For a fixed row order the best column order simply sorts
//! the columns in decreasing order, so the search only ranges over row
//! orders. Columns that agree on every row chosen so far form a block; the
//! next row contributes a count of ones per block, and only rows whose count
//! vector is lexicographically largest can continue the canonical prefix.
//! Ties are resolved by backtracking. Two leaves giving the same matrix
//! differ by an automorphism; automorphisms found this way prune siblings
//! lying in one orbit of the stabilizer of the current path.

use super::BipartiteGraph;

pub(crate) trait Bits: Clone + PartialEq {
    fn and(&self, other: &Self) -> Self;
    fn and_not(&self, other: &Self) -> Self;
    fn count(&self) -> u32;
    fn is_zero(&self) -> bool;
}

impl Bits for u64 {
    #[inline]
    fn and(&self, other: &Self) -> Self {
        self & other
    }
    #[inline]
    fn and_not(&self, other: &Self) -> Self {
        self & !other
    }
    #[inline]
    fn count(&self) -> u32 {
        self.count_ones()
    }
    #[inline]
    fn is_zero(&self) -> bool {
        *self == 0
    }
}

impl Bits for Vec<u64> {
    fn and(&self, other: &Self) -> Self {
        self.iter().zip(other).map(|(a, b)| a & b).collect()
    }
    fn and_not(&self, other: &Self) -> Self {
        self.iter().zip(other).map(|(a, b)| a & !b).collect()
    }
    fn count(&self) -> u32 {
        self.iter().map(|w| w.count_ones()).sum()
    }
    fn is_zero(&self) -> bool {
        self.iter().all(|&w| w == 0)
    }
}

enum Mode {
    /// Find the maximum.
    Search,
    /// Abort as soon as anything beats the recorded prefix.
    Verify,
}

struct Canonizer<'a, B: Bits> {
    rows: &'a [B],
    mode: Mode,
    /// Best count vector found so far at each depth.
    best: Vec<Vec<u32>>,
    best_order: Vec<usize>,
    best_blocks: Vec<B>,
    beaten: bool,
    /// Row parts of automorphisms found so far.
    autos: Vec<Vec<usize>>,
}

/// Cap on stored automorphisms; pruning stays correct with any subset.
const MAX_AUTOS: usize = 128;

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Orbit representatives of the group generated by `gens` that fix every
/// row of `path`.
fn orbits(n: usize, gens: &[Vec<usize>], path: &[usize]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    for g in gens.iter().filter(|g| path.iter().all(|&p| g[p] == p)) {
        for (i, &j) in g.iter().enumerate() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    (0..n).map(|i| find(&mut parent, i)).collect()
}

fn count_vector<B: Bits>(row: &B, blocks: &[B], out: &mut Vec<u32>) {
    out.clear();
    out.extend(blocks.iter().map(|b| row.and(b).count()));
}

fn refine<B: Bits>(row: &B, blocks: &[B]) -> Vec<B> {
    let mut next = Vec::with_capacity(blocks.len() + 1);
    for b in blocks {
        let ones = b.and(row);
        let zeros = b.and_not(row);
        if !ones.is_zero() {
            next.push(ones);
        }
        if !zeros.is_zero() {
            next.push(zeros);
        }
    }
    next
}

impl<B: Bits> Canonizer<'_, B> {
    fn descend(
        &mut self,
        blocks: Vec<B>,
        remaining: &mut Vec<usize>,
        path: &mut Vec<usize>,
        improved: bool,
    ) {
        if self.beaten {
            return;
        }
        let depth = path.len();
        if remaining.is_empty() {
            if improved || self.best_order.is_empty() {
                self.best_order = path.clone();
                self.best_blocks = blocks;
            } else if self.autos.len() < MAX_AUTOS {
                let mut sigma = vec![0; path.len()];
                for (&from, &to) in self.best_order.iter().zip(path.iter()) {
                    sigma[from] = to;
                }
                if sigma.iter().enumerate().any(|(i, &j)| i != j) {
                    self.autos.push(sigma);
                }
            }
            return;
        }

        let mut vectors: Vec<Vec<u32>> = Vec::with_capacity(remaining.len());
        let mut scratch = Vec::new();
        for &i in remaining.iter() {
            count_vector(&self.rows[i], &blocks, &mut scratch);
            vectors.push(scratch.clone());
        }
        let top = vectors
            .iter()
            .max()
            .expect("remaining is non-empty")
            .clone();
        let top = &top;

        let mut improved = improved;
        if depth < self.best.len() {
            match top.cmp(&self.best[depth]) {
                std::cmp::Ordering::Less => return,
                std::cmp::Ordering::Equal => {}
                std::cmp::Ordering::Greater => {
                    if let Mode::Verify = self.mode {
                        self.beaten = true;
                        return;
                    }
                    self.best.truncate(depth);
                    self.best.push(top.clone());
                    improved = true;
                }
            }
        } else {
            self.best.push(top.clone());
            improved = true;
        }

        let candidates: Vec<usize> = remaining
            .iter()
            .zip(&vectors)
            .filter(|(_, v)| *v == top)
            .map(|(&i, _)| i)
            .collect();
        let mut tried: Vec<usize> = Vec::new();
        let mut orbit: Option<(usize, Vec<usize>)> = None;
        for &i in &candidates {
            // identical rows give the same subtree
            if tried.iter().any(|&t| self.rows[t] == self.rows[i]) {
                continue;
            }
            if !tried.is_empty() && !self.autos.is_empty() {
                if orbit
                    .as_ref()
                    .is_none_or(|(seen, _)| *seen != self.autos.len())
                {
                    orbit = Some((self.autos.len(), orbits(self.rows.len(), &self.autos, path)));
                }
                let rep = &orbit.as_ref().unwrap().1;
                if tried.iter().any(|&t| rep[t] == rep[i]) {
                    continue;
                }
            }
            tried.push(i);
            let pos = remaining.iter().position(|&x| x == i).unwrap();
            remaining.remove(pos);
            path.push(i);
            let next = refine(&self.rows[i], &blocks);
            self.descend(next, remaining, path, improved);
            path.pop();
            remaining.insert(pos, i);
            if self.beaten {
                return;
            }
            // later siblings can only tie with what was just recorded
            improved = false;
        }
    }
}

fn full_block<B: Bits>(all: B) -> Vec<B> {
    if all.is_zero() {
        Vec::new()
    } else {
        vec![all]
    }
}

fn identity_vectors<B: Bits>(rows: &[B], all: B) -> Vec<Vec<u32>> {
    let mut blocks = full_block(all);
    let mut out = Vec::with_capacity(rows.len());
    let mut v = Vec::new();
    for row in rows {
        count_vector(row, &blocks, &mut v);
        out.push(v.clone());
        blocks = refine(row, &blocks);
    }
    out
}

/// Row order and final column blocks of the canonical form.
pub(crate) fn canonical_order<B: Bits>(rows: &[B], all: B) -> (Vec<usize>, Vec<B>) {
    let mut c = Canonizer {
        rows,
        mode: Mode::Search,
        best: Vec::new(),
        best_order: Vec::new(),
        best_blocks: Vec::new(),
        beaten: false,
        autos: Vec::new(),
    };
    let mut remaining: Vec<usize> = (0..rows.len()).collect();
    let blocks = full_block(all);
    if rows.is_empty() {
        return (Vec::new(), blocks);
    }
    c.descend(blocks, &mut remaining, &mut Vec::new(), true);
    (c.best_order, c.best_blocks)
}

/// True when the matrix given by single-word `rows` (`n2` columns, row 0
/// first) is its own canonical form.
pub(crate) fn rows_are_canonical(rows: &[u64], n2: usize) -> bool {
    let n1 = rows.len();
    debug_assert!(n1 <= 64 && n2 <= 64);
    // columns must already be sorted in decreasing order
    let column = |j: usize| -> u64 {
        rows.iter().enumerate().fold(0u64, |acc, (i, &row)| {
            acc | ((row >> j & 1) << (n1 - 1 - i))
        })
    };
    if (1..n2).any(|j| column(j - 1) < column(j)) {
        return false;
    }
    let all = if n2 == 64 { u64::MAX } else { (1u64 << n2) - 1 };
    let mut c = Canonizer {
        rows,
        mode: Mode::Verify,
        best: identity_vectors(rows, all),
        best_order: (0..n1).collect(),
        best_blocks: Vec::new(),
        beaten: false,
        autos: Vec::new(),
    };
    let mut remaining: Vec<usize> = (0..n1).collect();
    c.descend(full_block(all), &mut remaining, &mut Vec::new(), false);
    !c.beaten
}

/// Row and column permutations taking a graph to its canonical form:
/// row `k` of the canonical form is row `rows[k]` of the input, column `k`
/// is column `cols[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalLabeling {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

fn all_columns(n2: usize, words: usize) -> Vec<u64> {
    let mut v = vec![0u64; words];
    for j in 0..n2 {
        v[j / 64] |= 1 << (j % 64);
    }
    v
}

fn block_columns(block: &[u64]) -> impl Iterator<Item = usize> + '_ {
    block.iter().enumerate().flat_map(|(w, &word)| {
        (0..64)
            .filter(move |b| word >> b & 1 == 1)
            .map(move |b| w * 64 + b)
    })
}

pub fn canonical_labeling(g: &BipartiteGraph) -> CanonicalLabeling {
    let (order, cols) = if g.n2() <= 64 {
        let rows: Vec<u64> = (0..g.n1()).map(|i| g.row_u64(i)).collect();
        let (order, blocks) = canonical_order(&rows, all_columns(g.n2(), 1)[0]);
        let cols = blocks
            .iter()
            .flat_map(|b| block_columns(std::slice::from_ref(b)).collect::<Vec<_>>())
            .collect();
        (order, cols)
    } else {
        let rows: Vec<Vec<u64>> = (0..g.n1()).map(|i| g.row(i).to_vec()).collect();
        let words = rows.first().map_or(1, |r| r.len());
        let (order, blocks) = canonical_order(&rows, all_columns(g.n2(), words));
        let cols = blocks
            .iter()
            .flat_map(|b| block_columns(b).collect::<Vec<_>>())
            .collect();
        (order, cols)
    };
    // isolated columns never enter a block; they sort last
    let mut cols: Vec<usize> = cols;
    if cols.len() < g.n2() {
        let mut seen = vec![false; g.n2()];
        for &c in &cols {
            seen[c] = true;
        }
        cols.extend((0..g.n2()).filter(|&j| !seen[j]));
    }
    let rows = if order.len() == g.n1() {
        order
    } else {
        (0..g.n1()).collect()
    };
    CanonicalLabeling { rows, cols }
}

/// The lexicographically largest biadjacency matrix reachable by permuting
/// rows and columns independently. Sides are never exchanged.
pub fn canonical_form(g: &BipartiteGraph) -> BipartiteGraph {
    let lab = canonical_labeling(g);
    g.permuted(&lab.rows, &lab.cols)
}

pub fn is_canonical(g: &BipartiteGraph) -> bool {
    canonical_form(g) == *g
}
