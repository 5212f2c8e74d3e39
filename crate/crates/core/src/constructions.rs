//! Builders for the graph families used as seeds and extremal examples.
//!
//! Every builder is deterministic. Where a family has natural coordinates
//! the output carries vertex labels, which DOT export picks up.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;

use crate::bounds::{self, Params};
use crate::error::{Error, Result};
use crate::field::{FieldElement, Gf};
use crate::graph::{self, BipartiteGraph, Distance, Labels, Side};

fn fmt_vector(open: char, close: char, v: &[FieldElement]) -> String {
    let inner: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("{open}{}{close}", inner.join(","))
}

pub fn complete_bipartite(a: usize, b: usize) -> Result<BipartiteGraph> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidParams(format!(
            "K_(a,b) needs a, b >= 1, got ({a}, {b})"
        )));
    }
    Ok(BipartiteGraph::from_fn(a, b, |_, _| true))
}

/// The cycle on `len` vertices, numbered `1..=len` around the cycle; odd
/// vertices `u1, u3, ...` form side 1 and even vertices `2, 4, ...` side 2.
pub fn even_cycle(len: usize) -> Result<BipartiteGraph> {
    if len < 4 || len % 2 == 1 {
        return Err(Error::InvalidParams(format!(
            "cycle length must be even and at least 4, got {len}"
        )));
    }
    let t = len / 2;
    let g = BipartiteGraph::from_edges(t, t, (0..t).flat_map(|i| [(i, i), (i, (i + t - 1) % t)]));
    Ok(g.with_labels(Labels {
        side1: (0..t).map(|i| format!("u{}", 2 * i + 1)).collect(),
        side2: (0..t).map(|i| format!("{}", 2 * i + 2)).collect(),
    }))
}

/// Incidence graph of PG(2, q): points on side 1, lines on side 2.
pub fn projective_plane(q: u32) -> Result<BipartiteGraph> {
    let f = Gf::get(q)?;
    let pts = f.projective_points(3);
    let g = BipartiteGraph::from_fn(pts.len(), pts.len(), |i, j| f.dot(&pts[i], &pts[j]) == 0);
    Ok(g.with_labels(Labels {
        side1: pts.iter().map(|v| fmt_vector('(', ')', v)).collect(),
        side2: pts.iter().map(|v| fmt_vector('[', ']', v)).collect(),
    }))
}

/// Incidence graph of the symplectic quadrangle W(q): all points of
/// PG(3, q) against the lines that are totally isotropic for
/// `x0 y1 - x1 y0 + x2 y3 - x3 y2`.
pub fn symplectic_quadrangle(q: u32) -> Result<BipartiteGraph> {
    if !(2..=5).contains(&q) {
        return Err(Error::UnsupportedOrder(q as u64));
    }
    let f = Gf::get(q)?;
    let pts = f.projective_points(4);
    let index: HashMap<usize, usize> = pts
        .iter()
        .enumerate()
        .map(|(i, v)| (f.vector_code(v), i))
        .collect();
    let form = |x: &[u8], y: &[u8]| {
        let a = f.sub(f.mul(x[0], y[1]), f.mul(x[1], y[0]));
        let b = f.sub(f.mul(x[2], y[3]), f.mul(x[3], y[2]));
        f.add(a, b)
    };
    let mut lines: Vec<Vec<usize>> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (i, x) in pts.iter().enumerate() {
        for y in &pts[i + 1..] {
            if form(x, y) != 0 {
                continue;
            }
            let mut line: Vec<usize> = Vec::with_capacity(q as usize + 1);
            for a in f.elements() {
                for b in f.elements() {
                    if (a, b) == (0, 0) {
                        continue;
                    }
                    let mut v: Vec<u8> = (0..4)
                        .map(|k| f.add(f.mul(a, x[k]), f.mul(b, y[k])))
                        .collect();
                    f.normalize(&mut v);
                    line.push(index[&f.vector_code(&v)]);
                }
            }
            line.sort_unstable();
            line.dedup();
            if seen.insert(line.clone()) {
                lines.push(line);
            }
        }
    }
    lines.sort();
    let mut g = BipartiteGraph::new(pts.len(), lines.len());
    for (j, line) in lines.iter().enumerate() {
        for &i in line {
            g.add_edge(i, j);
        }
    }
    Ok(g.with_labels(Labels {
        side1: pts.iter().map(|v| fmt_vector('(', ')', v)).collect(),
        side2: (0..lines.len()).map(|j| format!("L{j}")).collect(),
    }))
}

fn vertex_names(g: &BipartiteGraph) -> Vec<String> {
    match g.labels() {
        Some(l) => l.side1.iter().chain(&l.side2).cloned().collect(),
        None => (0..g.n1())
            .map(|i| format!("u{i}"))
            .chain((0..g.n2()).map(|j| format!("v{j}")))
            .collect(),
    }
}

/// Subdivision of an arbitrary `r`-regular simple graph given by its edge
/// list: side 1 holds the original vertices, side 2 one vertex per edge.
pub fn subdivide_edges(n: usize, edges: &[(usize, usize)]) -> Result<BipartiteGraph> {
    let mut deg = vec![0usize; n];
    let mut seen = std::collections::HashSet::new();
    for &(a, b) in edges {
        if a >= n || b >= n || a == b {
            return Err(Error::InvalidParams(format!("bad edge ({a}, {b})")));
        }
        if !seen.insert((a.min(b), a.max(b))) {
            return Err(Error::InvalidParams(format!("repeated edge ({a}, {b})")));
        }
        deg[a] += 1;
        deg[b] += 1;
    }
    let r = deg.first().copied().unwrap_or(0);
    if deg.iter().any(|&d| d != r) {
        return Err(Error::NotRegular);
    }
    if r < 2 {
        return Err(Error::InvalidParams(format!(
            "degree must be at least 2, got {r}"
        )));
    }
    Ok(BipartiteGraph::from_edges(
        n,
        edges.len(),
        edges
            .iter()
            .enumerate()
            .flat_map(|(e, &(a, b))| [(a, e), (b, e)]),
    ))
}

/// Subdivision graph `S(G)` of a regular bipartite graph.
pub fn subdivision(g: &BipartiteGraph) -> Result<BipartiteGraph> {
    let edges: Vec<(usize, usize)> = g.edges().map(|(i, j)| (i, g.n1() + j)).collect();
    let s = subdivide_edges(g.order(), &edges)?;
    let names = vertex_names(g);
    Ok(s.with_labels(Labels {
        side2: edges
            .iter()
            .map(|&(a, b)| format!("{}-{}", names[a], names[b]))
            .collect(),
        side1: names,
    }))
}

/// `k`-tuple graph: every vertex of `side` is replaced by `k` copies with
/// the same neighbourhood. The copied side becomes side 1 of the output,
/// with the copies of each original vertex numbered consecutively.
pub fn k_tuple(g: &BipartiteGraph, side: Side, k: usize) -> Result<BipartiteGraph> {
    if k < 2 {
        return Err(Error::BadMultiplicity(k));
    }
    let base = match side {
        Side::One => g.clone(),
        Side::Two => g.swap_sides(),
    };
    let n1 = base.n1();
    let mut out = BipartiteGraph::from_fn(n1 * k, base.n2(), |i, j| base.has_edge(i / k, j));
    let names = vertex_names(&base);
    out = out.with_labels(Labels {
        side1: (0..n1 * k)
            .map(|i| format!("{}{}", names[i / k], "'".repeat(i % k)))
            .collect(),
        side2: names[n1..].to_vec(),
    });
    Ok(out)
}

/// Semi-double graph: the 2-tuple graph.
pub fn semi_double(g: &BipartiteGraph, side: Side) -> Result<BipartiteGraph> {
    k_tuple(g, side, 2)
}

/// `G_{6+n}`: side 1 is `{(0,j) : j in Z_6}`, side 2 is `{(1,i) : i in Z_n}`,
/// with `(1,i) ~ (0,j)` iff `j - i` is 0, 1 or 3 modulo 6.
pub fn g_6n(n: usize) -> Result<BipartiteGraph> {
    if n < 6 {
        return Err(Error::TooSmall(n));
    }
    let g = BipartiteGraph::from_fn(6, n, |j, i| matches!((j + 6 - i % 6) % 6, 0 | 1 | 3));
    Ok(g.with_labels(Labels {
        side1: (0..6).map(|j| format!("(0,{j})")).collect(),
        side2: (0..n).map(|i| format!("(1,{i})")).collect(),
    }))
}

/// Side-1 degrees of `G_{6+n}` for `n = 6k + rho`, read off by residue.
pub fn g_6n_degrees(n: usize) -> [usize; 6] {
    let k = n / 6;
    let t = 3 * k;
    match n % 6 {
        0 => [t; 6],
        1 => [t + 1, t + 1, t, t + 1, t, t],
        2 => [t + 1, t + 2, t + 1, t + 1, t + 1, t],
        3 => [t + 1, t + 2, t + 2, t + 2, t + 1, t + 1],
        4 => [t + 2, t + 2, t + 2, t + 3, t + 2, t + 1],
        _ => [t + 2, t + 3, t + 2, t + 3, t + 3, t + 2],
    }
}

/// `G'_r`: `G_{6+2r}` with the edge `(0,3) ~ (1,0)` moved to `(0,5) ~ (1,0)`.
pub fn g_prime_r(r: u64) -> Result<BipartiteGraph> {
    if r % 3 != 2 {
        return Err(Error::UnsupportedResidue(r));
    }
    if r < 5 {
        return Err(Error::InvalidParams(format!("need r >= 5, got {r}")));
    }
    let mut g = g_6n(2 * r as usize)?;
    debug_assert!(g.has_edge(3, 0) && !g.has_edge(5, 0));
    g.remove_edge(3, 0);
    g.add_edge(5, 0);
    Ok(g)
}

/// Checks that `g` is a bipartite Moore graph of degree `r` and diameter `d`.
pub fn check_moore_bipartite(g: &BipartiteGraph, r: u64, d: u64) -> Result<()> {
    let bound = bounds::best_bound(Params::new(r, r, d)?)?.total;
    match graph::is_biregular(g) {
        Some((a, b)) if a as u64 == r && b as u64 == r => {}
        _ => return Err(Error::ParamMismatch(format!("graph is not {r}-regular"))),
    }
    let diam = graph::diameter(g);
    if diam != Distance::Finite(d as usize) {
        return Err(Error::ParamMismatch(format!(
            "diameter is {diam}, expected {d}"
        )));
    }
    if bound != g.order().into() {
        return Err(Error::ParamMismatch(format!(
            "order is {}, a Moore graph has {bound}",
            g.order()
        )));
    }
    Ok(())
}

/// The `[r; d]` bipartite Moore graph for `d` in {3, 4, 6}, built for
/// `d = 3, 4` and taken from `external` (after checking) for `d = 6`.
fn moore_regular(r: u64, d: u64, external: Option<&BipartiteGraph>) -> Result<BipartiteGraph> {
    if r < 3 {
        return Err(Error::InvalidParams(format!("need r >= 3, got {r}")));
    }
    let q = u32::try_from(r - 1).map_err(|_| Error::UnsupportedOrder(r - 1))?;
    match d {
        3 => projective_plane(q),
        4 => symplectic_quadrangle(q),
        6 => {
            let g = external.ok_or_else(|| {
                Error::NeedsInput(format!(
                    "a [{r};6] Moore graph (generalized hexagon of order {q}) must be supplied"
                ))
            })?;
            check_moore_bipartite(g, r, 6)?;
            Ok(g.clone())
        }
        _ => Err(Error::InvalidParams(format!(
            "d must be 3, 4 or 6, got {d}"
        ))),
    }
}

/// An `[2r, r; d]` graph with the order formula printed for its family.
#[derive(Debug, Clone)]
pub struct FamilyGraph {
    pub graph: BipartiteGraph,
    pub printed_order: u64,
}

impl FamilyGraph {
    pub fn order_matches_printed(&self) -> bool {
        self.graph.order() as u64 == self.printed_order
    }
}

/// Printed closed forms for the order of the `[r, 2r; d]` family.
pub fn family_r_2r_printed_order(r: u64, d: u64) -> Option<u64> {
    let r = r as i128;
    let v = match d {
        3 => 3 * r * r - 3 * r + 3,
        4 => 3 * r.pow(3) - 6 * r * r + 10 * r,
        6 => 2 * r.pow(5) - 8 * r.pow(4) + 14 * r.pow(3) - 12 * r * r + 6 * r,
        _ => return None,
    };
    u64::try_from(v).ok()
}

/// Semi-double of the `[r; d]` Moore graph, oriented so that side 1 has
/// degree `2r`.
pub fn family_r_2r(r: u64, d: u64, external: Option<&BipartiteGraph>) -> Result<FamilyGraph> {
    let base = moore_regular(r, d, external)?;
    let graph = semi_double(&base, Side::Two)?.swap_sides();
    Ok(FamilyGraph {
        graph,
        printed_order: family_r_2r_printed_order(r, d).unwrap(),
    })
}

/// Subdivision of the `[r; m]` Moore graph: an `[r, 2; 2m]` Moore graph.
pub fn moore_r2(r: u64, m: u64, external: Option<&BipartiteGraph>) -> Result<BipartiteGraph> {
    subdivision(&moore_regular(r, m, external)?)
}

/// Graphs addressable by name.
pub const NAMED: [&str; 5] = ["heawood", "fano", "tutte-coxeter", "k33", "c6"];

pub fn named(name: &str) -> Result<BipartiteGraph> {
    match name {
        "heawood" | "fano" => projective_plane(2),
        "tutte-coxeter" => symplectic_quadrangle(2),
        "k33" => complete_bipartite(3, 3),
        "c6" => even_cycle(6),
        _ => Err(Error::InvalidParams(format!(
            "unknown graph {name:?}; known: {}",
            NAMED.join(", ")
        ))),
    }
}

/// A buildable family member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recipe {
    CompleteBipartite(usize, usize),
    Cycle(usize),
    ProjectivePlane(u32),
    SymplecticQuadrangle(u32),
    Subdivision(Box<Recipe>),
    KTuple {
        of: Box<Recipe>,
        side: Side,
        k: usize,
    },
    G6n(usize),
    GPrime(u64),
    FamilyR2r {
        r: u64,
        d: u64,
    },
    MooreR2 {
        r: u64,
        m: u64,
    },
}

impl Recipe {
    pub fn build(&self) -> Result<BipartiteGraph> {
        match self {
            Recipe::CompleteBipartite(a, b) => complete_bipartite(*a, *b),
            Recipe::Cycle(n) => even_cycle(*n),
            Recipe::ProjectivePlane(q) => projective_plane(*q),
            Recipe::SymplecticQuadrangle(q) => symplectic_quadrangle(*q),
            Recipe::Subdivision(of) => subdivision(&of.build()?),
            Recipe::KTuple { of, side, k } => k_tuple(&of.build()?, *side, *k),
            Recipe::G6n(n) => g_6n(*n),
            Recipe::GPrime(r) => g_prime_r(*r),
            Recipe::FamilyR2r { r, d } => Ok(family_r_2r(*r, *d, None)?.graph),
            Recipe::MooreR2 { r, m } => moore_r2(*r, *m, None),
        }
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::CompleteBipartite(a, b) => write!(f, "K({a},{b})"),
            Recipe::Cycle(n) => write!(f, "C{n}"),
            Recipe::ProjectivePlane(q) => write!(f, "PG(2,{q})"),
            Recipe::SymplecticQuadrangle(q) => write!(f, "W({q})"),
            Recipe::Subdivision(of) => write!(f, "S({of})"),
            Recipe::KTuple { of, side, k } => {
                let s = if *side == Side::One { 1 } else { 2 };
                write!(f, "{k}-tuple({of}, side {s})")
            }
            Recipe::G6n(n) => write!(f, "G(6+{n})"),
            Recipe::GPrime(r) => write!(f, "G'({r})"),
            Recipe::FamilyR2r { r, d } => write!(f, "[{r},{};{d}] semi-double", 2 * r),
            Recipe::MooreR2 { r, m } => write!(f, "[{r},2;{}] subdivision", 2 * m),
        }
    }
}

/// Parameters a built graph is claimed to have. Degrees are given larger
/// first, independent of side order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expected {
    pub order: usize,
    pub degrees: Option<(usize, usize)>,
    pub diameter: usize,
    pub girth: Option<Distance>,
    pub defect: Option<i64>,
}

#[derive(Debug, Clone)]
pub struct ConstructionRecipe {
    pub recipe: Recipe,
    pub expected: Expected,
}

impl ConstructionRecipe {
    /// Mismatches between `g` and the expected parameters.
    pub fn check(&self, g: &BipartiteGraph) -> Vec<String> {
        let e = &self.expected;
        let mut bad = Vec::new();
        if g.order() != e.order {
            bad.push(format!("order {} != {}", g.order(), e.order));
        }
        let degrees = graph::is_biregular(g).map(|(a, b)| (a.max(b), a.min(b)));
        if let Some(want) = e.degrees {
            if degrees != Some(want) {
                bad.push(format!("degrees {degrees:?} != {want:?}"));
            }
        }
        let d = graph::diameter(g);
        if d != Distance::Finite(e.diameter) {
            bad.push(format!("diameter {d} != {}", e.diameter));
        }
        if let Some(want) = e.girth {
            let got = graph::girth(g);
            if got != want {
                bad.push(format!("girth {got} != {want}"));
            }
        }
        if let (Some(want), Some((r, s))) = (e.defect, degrees) {
            let got = Params::new(r as u64, s as u64, e.diameter as u64)
                .and_then(|p| bounds::defect(g, p));
            match got {
                Ok(v) if v == BigInt::from(want) => {}
                Ok(v) => bad.push(format!("defect {v} != {want}")),
                Err(err) => bad.push(format!("defect: {err}")),
            }
        }
        bad
    }
}

fn expect(
    recipe: Recipe,
    order: usize,
    degrees: (usize, usize),
    diameter: usize,
    girth: Option<usize>,
    defect: Option<i64>,
) -> ConstructionRecipe {
    ConstructionRecipe {
        recipe,
        expected: Expected {
            order,
            degrees: Some(degrees),
            diameter,
            girth: girth.map(Distance::Finite),
            defect,
        },
    }
}

/// Every self-contained construction with its claimed parameters.
pub fn recipes() -> Vec<ConstructionRecipe> {
    use Recipe::*;
    let b = Box::new;
    let c6 = || b(Cycle(6));
    let mut v = vec![
        expect(CompleteBipartite(3, 3), 6, (3, 3), 2, Some(4), Some(0)),
        expect(CompleteBipartite(5, 2), 7, (5, 2), 2, Some(4), None),
        expect(Cycle(4), 4, (2, 2), 2, Some(4), Some(0)),
        expect(Cycle(6), 6, (2, 2), 3, Some(6), Some(0)),
        expect(
            Subdivision(b(CompleteBipartite(3, 3))),
            15,
            (3, 2),
            4,
            Some(8),
            Some(0),
        ),
        expect(
            Subdivision(b(CompleteBipartite(4, 4))),
            24,
            (4, 2),
            4,
            Some(8),
            Some(0),
        ),
        expect(
            Subdivision(b(CompleteBipartite(5, 5))),
            35,
            (5, 2),
            4,
            Some(8),
            Some(0),
        ),
        expect(
            KTuple {
                of: c6(),
                side: Side::One,
                k: 2,
            },
            9,
            (4, 2),
            3,
            Some(4),
            Some(0),
        ),
        expect(
            KTuple {
                of: c6(),
                side: Side::One,
                k: 3,
            },
            12,
            (6, 2),
            3,
            Some(4),
            Some(0),
        ),
        expect(
            KTuple {
                of: c6(),
                side: Side::One,
                k: 4,
            },
            15,
            (8, 2),
            3,
            Some(4),
            Some(0),
        ),
        expect(
            KTuple {
                of: c6(),
                side: Side::One,
                k: 5,
            },
            18,
            (10, 2),
            3,
            Some(4),
            Some(0),
        ),
        expect(G6n(12), 18, (6, 3), 3, Some(4), None),
    ];
    for (q, order) in [
        (2, 14),
        (3, 26),
        (4, 42),
        (5, 62),
        (7, 114),
        (8, 146),
        (9, 182),
    ] {
        let deg = q as usize + 1;
        v.push(expect(
            ProjectivePlane(q),
            order,
            (deg, deg),
            3,
            Some(6),
            Some(0),
        ));
    }
    for (q, order) in [(2, 30), (3, 80), (4, 170), (5, 312)] {
        let deg = q as usize + 1;
        v.push(expect(
            SymplecticQuadrangle(q),
            order,
            (deg, deg),
            4,
            Some(8),
            Some(0),
        ));
    }
    for (r, order) in [(5, 16), (8, 22), (11, 28), (14, 34), (17, 40)] {
        v.push(expect(
            GPrime(r),
            order,
            (r as usize, 3),
            3,
            Some(4),
            Some(0),
        ));
    }
    v.push(expect(
        KTuple {
            of: b(ProjectivePlane(2)),
            side: Side::Two,
            k: 2,
        },
        21,
        (6, 3),
        3,
        Some(4),
        Some(0),
    ));
    v.push(expect(
        KTuple {
            of: b(SymplecticQuadrangle(2)),
            side: Side::One,
            k: 2,
        },
        45,
        (6, 3),
        4,
        Some(4),
        Some(54),
    ));
    v.push(expect(
        FamilyR2r { r: 3, d: 3 },
        21,
        (6, 3),
        3,
        Some(4),
        Some(0),
    ));
    v.push(expect(
        FamilyR2r { r: 4, d: 3 },
        39,
        (8, 4),
        3,
        Some(4),
        Some(3),
    ));
    v.push(expect(
        FamilyR2r { r: 5, d: 3 },
        63,
        (10, 5),
        3,
        Some(4),
        Some(3),
    ));
    v.push(expect(
        FamilyR2r { r: 3, d: 4 },
        45,
        (6, 3),
        4,
        Some(4),
        Some(54),
    ));
    v.push(expect(
        FamilyR2r { r: 4, d: 4 },
        120,
        (8, 4),
        4,
        Some(4),
        None,
    ));
    v.push(expect(
        MooreR2 { r: 3, m: 3 },
        35,
        (3, 2),
        6,
        Some(12),
        Some(0),
    ));
    v.push(expect(
        MooreR2 { r: 4, m: 3 },
        78,
        (4, 2),
        6,
        Some(12),
        Some(0),
    ));
    v.push(expect(
        MooreR2 { r: 5, m: 3 },
        147,
        (5, 2),
        6,
        Some(12),
        Some(0),
    ));
    v.push(expect(
        MooreR2 { r: 3, m: 4 },
        75,
        (3, 2),
        8,
        Some(16),
        Some(0),
    ));
    v.push(expect(
        MooreR2 { r: 4, m: 4 },
        240,
        (4, 2),
        8,
        Some(16),
        Some(0),
    ));
    v
}

/// Order of `[r, 2; 2m]` Moore graphs, `(r + 2) / (r - 2) * ((r - 1)^m - 1)`.
pub fn moore_r2_order(r: u64, m: u64) -> Option<u64> {
    let num = (r + 2).checked_mul((r - 1).checked_pow(m as u32)? - 1)?;
    (num % (r - 2) == 0).then(|| num / (r - 2))
}
