//! Moore-type upper bounds on the order of bipartite biregular graphs.
//!
//! For degrees `r >= s` and diameter `d`, counting vertices of the
//! breadth-first tree rooted on either side gives per-side caps. For even
//! `d = 2m` both caps are attainable simultaneously and the bound is
//! `(r + s) * Q`, where `Q = sum_{i<m} ((r-1)(s-1))^i`. For odd
//! `d = 2m + 1` the tree counts `N1'` and `N2'` are incompatible with
//! `r * N1 = s * N2`, so both sides are rounded down to a common multiple
//! `t * (sigma, rho)` with `rho = r / gcd(r, s)` and `sigma = s / gcd(r, s)`.
//! When `rho` divides `N2'` that multiple would force a cycle-free ball of
//! radius `2m` around every side-2 vertex, which is impossible, and `t`
//! drops by one more.
//!
//! All arithmetic is exact.

use std::fmt::{self, Write as _};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::{self, BipartiteGraph, Distance};

/// Degrees and diameter `[r, s; d]` with `r >= s >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Params {
    r: u64,
    s: u64,
    d: u64,
}

impl Params {
    pub fn new(r: u64, s: u64, d: u64) -> Result<Self> {
        if s < 2 || r < s {
            return Err(Error::InvalidParams(format!(
                "need r >= s >= 2, got r = {r}, s = {s}"
            )));
        }
        if d < 2 {
            return Err(Error::InvalidParams(format!("need d >= 2, got {d}")));
        }
        Ok(Params { r, s, d })
    }

    /// Like [`Params::new`] but accepts the two degrees in either order.
    pub fn unordered(a: u64, b: u64, d: u64) -> Result<Self> {
        Self::new(a.max(b), a.min(b), d)
    }

    pub fn r(&self) -> u64 {
        self.r
    }
    pub fn s(&self) -> u64 {
        self.s
    }
    pub fn d(&self) -> u64 {
        self.d
    }
    /// `d = 2m` or `d = 2m + 1`.
    pub fn m(&self) -> u64 {
        self.d / 2
    }
    pub fn is_odd(&self) -> bool {
        self.d % 2 == 1
    }
    pub fn gcd(&self) -> u64 {
        self.r.gcd(&self.s)
    }
    pub fn rho(&self) -> u64 {
        self.r / self.gcd()
    }
    pub fn sigma(&self) -> u64 {
        self.s / self.gcd()
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{};{}]", self.r, self.s, self.d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Even,
    OddPlain,
    OddImproved,
    /// `r = s` with odd diameter: the classical bipartite Moore bound.
    OddRegular,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Even => "even",
            Regime::OddPlain => "odd-plain",
            Regime::OddImproved => "odd-improved",
            Regime::OddRegular => "odd-regular",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundResult {
    pub params: Params,
    /// Cap on the number of degree-`r` vertices.
    pub n1_max: BigUint,
    /// Cap on the number of degree-`s` vertices.
    pub n2_max: BigUint,
    pub total: BigUint,
    pub regime: Regime,
    /// Tree counts `(N1', N2')` for odd diameter.
    pub raw_caps: Option<(BigUint, BigUint)>,
    /// Total of the unimproved odd bound when `regime` is `OddImproved`.
    pub plain_total: Option<BigUint>,
}

impl BoundResult {
    pub fn total_u64(&self) -> Option<u64> {
        self.total.to_u64()
    }

    /// The multiplier `t` with `(n1_max, n2_max) = t * (sigma, rho)`.
    pub fn multiplier(&self) -> BigUint {
        &self.n2_max / self.params.rho()
    }
}

/// `sum_{i < m} ((r-1)(s-1))^i`; equals `m` when `(r-1)(s-1) = 1`.
pub fn tree_factor(r: u64, s: u64, m: u64) -> BigUint {
    let x = BigUint::from((r - 1) * (s - 1));
    let mut sum = BigUint::zero();
    let mut term = BigUint::one();
    for _ in 0..m {
        sum += &term;
        term *= &x;
    }
    sum
}

/// Bound for even diameter `d = 2m`.
pub fn moore_even(p: Params) -> Result<BoundResult> {
    if p.is_odd() {
        return Err(Error::InvalidParams(format!("{p}: diameter must be even")));
    }
    let q = tree_factor(p.r, p.s, p.m());
    let n2_max = &q * p.r;
    let n1_max = &q * p.s;
    let total = &q * (p.r + p.s);
    Ok(BoundResult {
        params: p,
        n1_max,
        n2_max,
        total,
        regime: Regime::Even,
        raw_caps: None,
        plain_total: None,
    })
}

/// Tree counts `(N1', N2')` for odd diameter `d = 2m + 1`: vertices of the
/// same side within distance `2m` of a side-1 (resp. side-2) root.
pub fn partite_caps_odd(p: Params) -> Result<(BigUint, BigUint)> {
    if !p.is_odd() {
        return Err(Error::InvalidParams(format!("{p}: diameter must be odd")));
    }
    let q = tree_factor(p.r, p.s, p.m());
    let n1 = BigUint::one() + &q * (p.r * (p.s - 1));
    let n2 = BigUint::one() + &q * (p.s * (p.r - 1));
    Ok((n1, n2))
}

/// Whether `rho` divides `s * Q - 1`, which rules out the plain odd bound.
/// Always false for `r = s`, where the biregular argument does not apply.
pub fn improvement_applies(p: Params) -> Result<bool> {
    if !p.is_odd() {
        return Err(Error::InvalidParams(format!("{p}: diameter must be odd")));
    }
    if p.r == p.s {
        return Ok(false);
    }
    let q = tree_factor(p.r, p.s, p.m());
    let sq = q * p.s;
    let rho = BigUint::from(p.rho());
    // s * Q >= 2 here, so the subtraction cannot underflow
    Ok(((sq - 1u32) % rho).is_zero())
}

/// Bound for odd diameter with `r > s`.
pub fn moore_odd(p: Params) -> Result<BoundResult> {
    if !p.is_odd() {
        return Err(Error::InvalidParams(format!("{p}: diameter must be odd")));
    }
    if p.r == p.s {
        return Err(Error::RegularCase(p.r));
    }
    let (n1p, n2p) = partite_caps_odd(p)?;
    let rho = BigUint::from(p.rho());
    let sigma = BigUint::from(p.sigma());
    let floor = &n2p / &rho;
    let plain_total = &floor * (&rho + &sigma);
    let improved = improvement_applies(p)?;
    let (t, regime, plain) = if improved {
        debug_assert!((&n2p % &rho).is_zero());
        (&floor - 1u32, Regime::OddImproved, Some(plain_total))
    } else {
        (floor, Regime::OddPlain, None)
    };
    Ok(BoundResult {
        params: p,
        n1_max: &t * &sigma,
        n2_max: &t * &rho,
        total: &t * (&rho + &sigma),
        regime,
        raw_caps: Some((n1p, n2p)),
        plain_total: plain,
    })
}

/// The best available bound for any valid parameters.
pub fn best_bound(p: Params) -> Result<BoundResult> {
    if !p.is_odd() {
        return moore_even(p);
    }
    if p.r > p.s {
        return moore_odd(p);
    }
    let (n1p, n2p) = partite_caps_odd(p)?;
    Ok(BoundResult {
        params: p,
        total: &n1p + &n2p,
        n1_max: n1p.clone(),
        n2_max: n2p.clone(),
        regime: Regime::OddRegular,
        raw_caps: Some((n1p, n2p)),
        plain_total: None,
    })
}

fn check_graph(g: &BipartiteGraph, p: Params) -> Result<()> {
    let (a, b) = graph::is_biregular(g)
        .ok_or_else(|| Error::ParamMismatch("graph is not biregular".into()))?;
    if (a.max(b) as u64, a.min(b) as u64) != (p.r, p.s) {
        return Err(Error::ParamMismatch(format!(
            "graph has degrees ({a},{b}), expected ({},{})",
            p.r, p.s
        )));
    }
    let d = graph::diameter(g);
    if d != Distance::Finite(p.d as usize) {
        return Err(Error::ParamMismatch(format!(
            "graph has diameter {d}, expected {}",
            p.d
        )));
    }
    Ok(())
}

/// Best bound minus the order of `g`.
pub fn defect(g: &BipartiteGraph, p: Params) -> Result<BigInt> {
    check_graph(g, p)?;
    let b = best_bound(p)?;
    Ok(BigInt::from(b.total) - BigInt::from(g.order()))
}

/// Defect against the unimproved odd bound, when it differs from the best.
pub fn defect_against_plain(g: &BipartiteGraph, p: Params) -> Result<Option<BigInt>> {
    check_graph(g, p)?;
    let b = best_bound(p)?;
    Ok(b.plain_total
        .map(|t| BigInt::from(t) - BigInt::from(g.order())))
}

/// Girth cap `4m` for a graph of odd diameter `2m + 1` whose order reaches
/// the plain odd bound with `r > s`. `None` when no cap below `2d` applies.
pub fn girth_cap(p: Params) -> Option<u64> {
    (p.is_odd() && p.r() > p.s()).then(|| 4 * p.m())
}

/// Caps `(N1, N2)` for `[rho * s, s; 3]`-graphs.
pub fn multiple_degree_caps(s: u64, rho: u64) -> Result<(u64, u64)> {
    if s < 2 || rho < 2 {
        return Err(Error::InvalidParams(format!(
            "need s >= 2 and rho >= 2, got s = {s}, rho = {rho}"
        )));
    }
    if (s - 1).is_multiple_of(rho) {
        let n1 = (s * s - 1) - (s - 1) / rho;
        Ok((n1, rho * (s * s - 1) - (s - 1)))
    } else {
        let n1 = s * s - s.div_ceil(rho);
        Ok((n1, rho * n1))
    }
}

/// `[2s, s; 3]`-graphs never reach the plain bound for odd `s`.
pub fn no_2s_s_bimoore(s: u64) -> Result<bool> {
    if s < 3 || s.is_multiple_of(2) {
        return Err(Error::NotApplicable(format!(
            "s = {s}: the statement covers odd s >= 3"
        )));
    }
    debug_assert!(improvement_applies(Params::new(2 * s, s, 3)?)?);
    Ok(true)
}

/// Known values below the formula bound that come from elsewhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KnownValue {
    pub r: u64,
    pub s: u64,
    pub d: u64,
    pub value: u64,
    pub source: &'static str,
}

pub const KNOWN_VALUES: &[KnownValue] = &[
    KnownValue {
        r: 7,
        s: 7,
        d: 4,
        value: 516,
        source: "nonexistence of the degree-7 bipartite Moore graph",
    },
    KnownValue {
        r: 7,
        s: 7,
        d: 6,
        value: 18660,
        source: "nonexistence of the degree-7 bipartite Moore graph",
    },
    KnownValue {
        r: 3,
        s: 2,
        d: 5,
        value: 15,
        source: "exhaustive search (no graph at order 20)",
    },
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Annotation {
    /// The unimproved odd bound this cell replaces.
    Improved {
        plain: BigUint,
    },
    Known(KnownValue),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCell {
    pub result: BoundResult,
    pub annotations: Vec<Annotation>,
}

impl BoundCell {
    pub fn r(&self) -> u64 {
        self.result.params.r
    }
    pub fn s(&self) -> u64 {
        self.result.params.s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundTable {
    pub d: u64,
    pub cells: Vec<BoundCell>,
}

/// Grid of best bounds over `r_range x s_range` restricted to `s <= r`.
pub fn emit_bound_table(
    d: u64,
    r_range: std::ops::RangeInclusive<u64>,
    s_range: std::ops::RangeInclusive<u64>,
) -> Result<BoundTable> {
    let mut cells = Vec::new();
    for r in r_range {
        for s in s_range.clone() {
            if s > r {
                break;
            }
            let result = best_bound(Params::new(r, s, d)?)?;
            let mut annotations = Vec::new();
            if let Some(plain) = &result.plain_total {
                annotations.push(Annotation::Improved {
                    plain: plain.clone(),
                });
            }
            if let Some(k) = KNOWN_VALUES.iter().find(|k| (k.r, k.s, k.d) == (r, s, d)) {
                annotations.push(Annotation::Known(*k));
            }
            cells.push(BoundCell {
                result,
                annotations,
            });
        }
    }
    Ok(BoundTable { d, cells })
}

impl BoundTable {
    pub fn get(&self, r: u64, s: u64) -> Option<&BoundCell> {
        self.cells.iter().find(|c| c.r() == r && c.s() == s)
    }

    fn cell_text(cell: &BoundCell) -> String {
        let mut s = cell.result.total.to_string();
        for a in &cell.annotations {
            match a {
                Annotation::Improved { plain } => write!(s, " (was {plain})").unwrap(),
                Annotation::Known(k) => write!(s, " (known {})", k.value).unwrap(),
            }
        }
        s
    }

    /// Aligned grid, one row per `r`, one column per `s`.
    pub fn render_text(&self) -> String {
        let mut rs: Vec<u64> = self.cells.iter().map(|c| c.r()).collect();
        rs.dedup();
        let mut ss: Vec<u64> = self.cells.iter().map(|c| c.s()).collect();
        ss.sort_unstable();
        ss.dedup();
        let texts: Vec<(u64, u64, String)> = self
            .cells
            .iter()
            .map(|c| (c.r(), c.s(), Self::cell_text(c)))
            .collect();
        let width = texts
            .iter()
            .map(|t| t.2.chars().count())
            .max()
            .unwrap_or(1)
            .max(3);
        let mut out = format!("d = {}\n{:>5} |", self.d, "r\\s");
        for s in &ss {
            write!(out, " {s:>width$}").unwrap();
        }
        out.push('\n');
        out.push_str(&"-".repeat(7 + ss.len() * (width + 1)));
        out.push('\n');
        for r in rs {
            write!(out, "{r:>5} |").unwrap();
            for s in &ss {
                let t = texts
                    .iter()
                    .find(|t| t.0 == r && t.1 == *s)
                    .map_or("", |t| t.2.as_str());
                write!(out, " {t:>width$}").unwrap();
            }
            out.truncate(out.trim_end().len());
            out.push('\n');
        }
        out
    }

    /// CSV with header `d,r,s,n1_max,n2_max,bound,regime,annotation`.
    pub fn render_csv(&self) -> String {
        let mut out = String::from("d,r,s,n1_max,n2_max,bound,regime,annotation\n");
        for c in &self.cells {
            let ann: Vec<String> = c
                .annotations
                .iter()
                .map(|a| match a {
                    Annotation::Improved { plain } => {
                        format!("improved:{plain}\u{2192}{}", c.result.total)
                    }
                    Annotation::Known(k) => format!("known:{}", k.value),
                })
                .collect();
            let ann = ann.join(";");
            let ann = if ann.contains([',', '"']) {
                format!("\"{}\"", ann.replace('"', "\"\""))
            } else {
                ann
            };
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                self.d,
                c.r(),
                c.s(),
                c.result.n1_max,
                c.result.n2_max,
                c.result.total,
                c.result.regime,
                ann
            )
            .unwrap();
        }
        out
    }
}
