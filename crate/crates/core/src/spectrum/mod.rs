//! Exact characteristic polynomials and the spectral identities of the
//! subdivision and k-tuple transforms.
//!
//! Everything is done with integer polynomials, so spectra containing
//! square roots are compared without rounding. For a bipartite graph with
//! biadjacency matrix `N` (`n1 <= n2`) the adjacency matrix `A` satisfies
//! `det(xI - A) = x^(n2 - n1) det(x^2 I - N N^T)`, which keeps the
//! determinant computation at the size of the smaller side.

mod poly;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use poly::{Factor, Factorization, IntPolynomial};

use crate::constructions;
use crate::error::{Error, Result};
use crate::graph::{self, BipartiteGraph, Side};

/// Largest vertex count accepted by [`char_poly`].
pub const SIZE_CAP: usize = 256;

/// `det(xI - M)` by Berkowitz's division-free algorithm.
pub fn char_poly_matrix(m: &[Vec<i64>]) -> IntPolynomial {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "matrix must be square");
    let a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    // q holds coefficients highest power first
    let mut q = vec![BigInt::one()];
    for k in 0..n {
        // A_k = [[B, c], [r, akk]] with B the leading k x k block
        let akk = &a[k][k];
        let mut t = Vec::with_capacity(k + 2);
        t.push(BigInt::one());
        t.push(-akk);
        let mut v: Vec<BigInt> = (0..k).map(|i| a[i][k].clone()).collect();
        for _ in 0..k {
            let rv: BigInt = (0..k).map(|j| &a[k][j] * &v[j]).sum();
            t.push(-rv);
            v = (0..k)
                .map(|i| (0..k).map(|j| &a[i][j] * &v[j]).sum())
                .collect();
        }
        let next: Vec<BigInt> = (0..=k + 1)
            .map(|i| {
                (0..=i.min(k))
                    .filter(|&j| !q[j].is_zero() && !t[i - j].is_zero())
                    .map(|j| &t[i - j] * &q[j])
                    .sum()
            })
            .collect();
        q = next;
    }
    q.reverse();
    IntPolynomial::new(q)
}

/// Gram matrix `N N^T` of the smaller side.
fn gram(g: &BipartiteGraph) -> Vec<Vec<i64>> {
    let g = if g.n1() <= g.n2() {
        g.clone()
    } else {
        g.swap_sides()
    };
    let n = g.n1();
    let mut m = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i..n {
            let c: u32 = g
                .row(i)
                .iter()
                .zip(g.row(j))
                .map(|(a, b)| (a & b).count_ones())
                .sum();
            m[i][j] = c as i64;
            m[j][i] = c as i64;
        }
    }
    m
}

/// Characteristic polynomial of the adjacency matrix of `g`.
pub fn char_poly(g: &BipartiteGraph) -> Result<IntPolynomial> {
    if g.order() > SIZE_CAP {
        return Err(Error::TooLarge(g.order(), SIZE_CAP));
    }
    let small = g.n1().min(g.n2());
    let phi = char_poly_matrix(&gram(g)).in_square();
    Ok(phi.shift(g.order() - 2 * small))
}

/// Outcome of comparing the two sides of a polynomial identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub lhs: IntPolynomial,
    pub rhs: IntPolynomial,
    /// Lowest power whose coefficients differ.
    pub witness: Option<usize>,
}

impl IdentityCheck {
    fn new(lhs: IntPolynomial, rhs: IntPolynomial) -> Self {
        let n = lhs.coeffs().len().max(rhs.coeffs().len());
        let witness = (0..n).find(|&j| lhs.coeff(j) != rhs.coeff(j));
        IdentityCheck { lhs, rhs, witness }
    }

    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// `x^(m - n) phi_G(x^2 - r)` for an `r`-regular graph on `n` vertices with
/// `m` edges.
pub fn subdivision_rhs(phi_g: &IntPolynomial, n: usize, m: usize, r: u64) -> IntPolynomial {
    let inner = IntPolynomial::from_i64(&[-(r as i64), 0, 1]);
    phi_g.compose(&inner).shift(m - n)
}

fn regular_degree(g: &BipartiteGraph) -> Option<usize> {
    match graph::is_biregular(g) {
        Some((a, b)) if a == b => Some(a),
        _ => None,
    }
}

/// Checks `phi_S(G)(x) = x^(m - n) phi_G(x^2 - r)` for an `r`-regular
/// bipartite graph.
pub fn check_subdivision_identity(g: &BipartiteGraph, r: u64) -> Result<IdentityCheck> {
    if regular_degree(g) != Some(r as usize) {
        return Err(Error::NotRegular);
    }
    let s = constructions::subdivision(g)?;
    let lhs = char_poly(&s)?;
    let rhs = subdivision_rhs(&char_poly(g)?, g.order(), g.edge_count(), r);
    Ok(IdentityCheck::new(lhs, rhs))
}

/// The same identity for any regular simple graph given by its edges.
pub fn check_subdivision_identity_edges(
    n: usize,
    edges: &[(usize, usize)],
) -> Result<IdentityCheck> {
    let s = constructions::subdivide_edges(n, edges)?;
    Ok(IdentityCheck::new(char_poly(&s)?, edges_rhs(n, edges)))
}

fn edges_rhs(n: usize, edges: &[(usize, usize)]) -> IntPolynomial {
    let mut a = vec![vec![0i64; n]; n];
    for &(u, v) in edges {
        a[u][v] = 1;
        a[v][u] = 1;
    }
    let r = a.first().map_or(0, |row| row.iter().sum::<i64>()) as u64;
    subdivision_rhs(&char_poly_matrix(&a), n, edges.len(), r)
}

/// Reads `S(G)` back as the regular graph `G`: the side whose vertices all
/// have degree 2 becomes the edge list over the other side.
pub fn unsubdivide(s: &BipartiteGraph) -> Result<(usize, Vec<(usize, usize)>)> {
    let (d1, d2) = graph::degrees(s);
    let s = if d2.iter().all(|&d| d == 2) {
        s.clone()
    } else if d1.iter().all(|&d| d == 2) {
        s.swap_sides()
    } else {
        return Err(Error::NotApplicable(
            "no side consists of degree-2 vertices".into(),
        ));
    };
    let edges = (0..s.n2())
        .map(|j| {
            let ends = s.column_neighbors(j);
            (ends[0], ends[1])
        })
        .collect();
    Ok((s.n1(), edges))
}

/// Checks the subdivision identity starting from `S(G)` itself: `G` is
/// recovered with [`unsubdivide`] and the left side is `phi` of the input.
pub fn check_subdivision_of(s: &BipartiteGraph) -> Result<IdentityCheck> {
    let (n, edges) = unsubdivide(s)?;
    // rejects irregular or non-simple preimages
    constructions::subdivide_edges(n, &edges)?;
    let lhs = char_poly(s)?;
    Ok(IdentityCheck::new(lhs, edges_rhs(n, &edges)))
}

/// `x^((k - 1) n_side) sum_j a_j k^((n - j) / 2) x^j` where
/// `phi_G = sum_j a_j x^j`.
pub fn ktuple_rhs(phi_g: &IntPolynomial, side_len: usize, k: usize) -> Result<IntPolynomial> {
    let n = phi_g.degree().unwrap_or(0);
    if let Some(j) = phi_g.odd_codegree_violation() {
        return Err(Error::BadSpectralSymmetry(j));
    }
    let kk = BigInt::from(k);
    let coeffs = phi_g
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, a)| a * num_traits::pow(kk.clone(), (n - j) / 2))
        .collect();
    Ok(IntPolynomial::new(coeffs).shift((k - 1) * side_len))
}

/// Checks the characteristic polynomial of the `k`-tuple graph against
/// `sqrt(k) * spec G` together with `(k - 1) n_side` zeros.
pub fn check_ktuple_identity(g: &BipartiteGraph, side: Side, k: usize) -> Result<IdentityCheck> {
    if k < 2 {
        return Err(Error::BadMultiplicity(k));
    }
    let rhs = ktuple_rhs(&char_poly(g)?, g.side_len(side), k)?;
    let lhs = char_poly(&constructions::k_tuple(g, side, k)?)?;
    Ok(IdentityCheck::new(lhs, rhs))
}

/// Reads a `k`-tuple graph back as its base: side 1 must consist of runs of
/// `k` identical rows, each run collapsing to one vertex.
pub fn untuple(t: &BipartiteGraph, k: usize) -> Result<BipartiteGraph> {
    if k < 2 {
        return Err(Error::BadMultiplicity(k));
    }
    if !t.n1().is_multiple_of(k) {
        return Err(Error::NotApplicable(format!(
            "side 1 has {} vertices, not a multiple of {k}",
            t.n1()
        )));
    }
    for i in 0..t.n1() {
        if t.row(i) != t.row(i - i % k) {
            return Err(Error::NotApplicable(format!(
                "row {i} differs from row {} of its run",
                i - i % k
            )));
        }
    }
    Ok(BipartiteGraph::from_fn(t.n1() / k, t.n2(), |i, j| {
        t.has_edge(i * k, j)
    }))
}

/// Checks the k-tuple identity starting from the k-tuple graph itself.
pub fn check_ktuple_of(t: &BipartiteGraph, k: usize) -> Result<IdentityCheck> {
    let base = untuple(t, k)?;
    let rhs = ktuple_rhs(&char_poly(&base)?, base.n1(), k)?;
    Ok(IdentityCheck::new(char_poly(t)?, rhs))
}
