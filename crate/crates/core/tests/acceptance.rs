//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use bimoore::bounds::{self, emit_bound_table, girth_cap, improvement_applies, Annotation};
use bimoore::constructions::{self as cons, recipes};
use bimoore::enumerate::{enumerate, generate, verify_uniqueness, EnumOptions, EnumSpec};
use bimoore::graph::{self, canonical_form};
use bimoore::spectrum::{char_poly, check_ktuple_identity, check_subdivision_identity};
use bimoore::{BipartiteGraph, Distance, Params, Side};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use common::{cofactor_char_poly, fig_1a};

/// Published grids, row `r` from 2, column `s` from 2. A cell `(a)b`
/// prints `b` with `a` in parentheses above it.
const TABLE_D4: &str = "
8
15 30
24 49 80
35 72 117 170
48 99 160 231 312
63 130 209 300 403 (518)516
80 165 264 377 504 645 800
99 204 325 462 615 784 969 1170
120 247 292 555 736 935 1152 1387 1640";

const TABLE_D6: &str = "
12
35 126
78 301 728
147 584 1431 2730
248 999 2410 4631 7812
387 1570 3773 7212 12103 (18662)18660
570 2321 5556 10569 17654 27105 39216
803 3276 7813 14798 24615 37648 54281 74898
1092 4459 10598 19995 33136 50507 72594 99883 132860";

const TABLE_D3: &str = "
6
5 14
9 14 26
7 16 27 42
12 (24)21 (35)30 44 62
9 20 33 48 65 86
15 22 42 52 70 90 114
11 32 39 56 80 96 119 146
18 26 49 (69)66 (88)80 102 126 152 182
13 28 45 64 85 108 133 160 189 222";

const TABLE_D5: &str = "
10
15 62
36 (112)105 242
56 168 369 682
80 (249)246 (535)530 957 1562
108 330 715 (1284)1272 2067 3110
140 429 924 (1651)1638 2646 3945 5602
176 544 (1157)1144 2044 3280 4880 6885 9362
216 663 1407 (2499)2496 (3976)3968 5882 8289 11229 14762";

struct Cell {
    r: u64,
    s: u64,
    shown: u64,
    above: Option<u64>,
}

fn parse_table(t: &str) -> Vec<Cell> {
    let mut out = Vec::new();
    for (i, line) in t.trim().lines().enumerate() {
        for (j, tok) in line.split_whitespace().enumerate() {
            let (above, shown) = match tok.strip_prefix('(') {
                Some(rest) => {
                    let (a, b) = rest.split_once(')').unwrap();
                    (Some(a.parse().unwrap()), b.parse().unwrap())
                }
                None => (None, tok.parse().unwrap()),
            };
            out.push(Cell {
                r: i as u64 + 2,
                s: j as u64 + 2,
                shown,
                above,
            });
        }
    }
    out
}

type Outcome = Result<(), Vec<String>>;

fn collect(errors: Vec<String>) -> Outcome {
    if errors.is_empty() {
        Ok(())
    } else {
        Err(errors)
    }
}

fn criterion_1() -> Outcome {
    let mut errors = Vec::new();
    for (d, text) in [(4, TABLE_D4), (6, TABLE_D6), (3, TABLE_D3), (5, TABLE_D5)] {
        let cells = parse_table(text);
        let rmax = cells.iter().map(|c| c.r).max().unwrap();
        let table = emit_bound_table(d, 2..=rmax, 2..=rmax).unwrap();
        for c in &cells {
            let got = table.get(c.r, c.s).expect("cell emitted");
            let total = got.result.total.clone();
            let known = got.annotations.iter().find_map(|a| match a {
                Annotation::Known(k) => Some(k.value),
                _ => None,
            });
            let plain = got.result.plain_total.clone();
            let here = format!("d={d} (r,s)=({},{})", c.r, c.s);
            if known == Some(c.shown) {
                // a known order printed in place of the formula value
                if let Some(a) = c.above {
                    if total != a.into() {
                        errors.push(format!("{here}: formula {total}, printed above {a}"));
                    }
                }
                continue;
            }
            if total != c.shown.into() {
                errors.push(format!("{here}: computed {total}, printed {}", c.shown));
            }
            if let Some(a) = c.above {
                if plain != Some(a.into()) {
                    errors.push(format!("{here}: plain bound {plain:?}, printed ({a})"));
                }
            }
        }
    }
    collect(errors)
}

fn criterion_2() -> Outcome {
    let mut errors = Vec::new();
    for (d, text) in [(3, TABLE_D3), (5, TABLE_D5)] {
        for c in parse_table(text) {
            let p = Params::new(c.r, c.s, d).unwrap();
            let applies = improvement_applies(p).unwrap();
            if applies != c.above.is_some() {
                errors.push(format!(
                    "d={d} (r,s)=({},{}): improvement_applies = {applies}, printed parenthesized = {}",
                    c.r,
                    c.s,
                    c.above.is_some()
                ));
            }
        }
    }
    collect(errors)
}

fn shape(g: &BipartiteGraph) -> (Option<(usize, usize)>, Distance) {
    let deg = graph::is_biregular(g).map(|(a, b)| (a.max(b), a.min(b)));
    (deg, graph::diameter(g))
}

fn criterion_3() -> Outcome {
    let mut errors = Vec::new();
    for rec in recipes() {
        match rec.recipe.build() {
            Ok(g) => {
                for e in rec.check(&g) {
                    errors.push(format!("{}: {e}", rec.recipe));
                }
            }
            Err(e) => errors.push(format!("{}: {e}", rec.recipe)),
        }
    }
    // S(K_{r,r}) against the starred column of the d = 4 grid
    let d4 = parse_table(TABLE_D4);
    for r in 3..=10u64 {
        let printed = d4.iter().find(|c| c.r == r && c.s == 2).unwrap().shown;
        let g =
            cons::subdivision(&cons::complete_bipartite(r as usize, r as usize).unwrap()).unwrap();
        if g.order() as u64 != printed || shape(&g) != (Some((r as usize, 2)), Distance::Finite(4))
        {
            errors.push(format!(
                "S(K{r},{r}): order {} vs {printed}, shape {:?}",
                g.order(),
                shape(&g)
            ));
        }
    }
    let d6 = parse_table(TABLE_D6);
    for r in [3u64, 4, 5, 6, 8, 9, 10] {
        let printed = d6.iter().find(|c| c.r == r && c.s == 2).unwrap().shown;
        match cons::moore_r2(r, 3, None) {
            Ok(g) => {
                if g.order() as u64 != printed
                    || shape(&g) != (Some((r as usize, 2)), Distance::Finite(6))
                {
                    errors.push(format!(
                        "moore_r2({r}, 3): order {} vs {printed}, shape {:?}",
                        g.order(),
                        shape(&g)
                    ));
                }
            }
            Err(e) => errors.push(format!("moore_r2({r}, 3): {e}")),
        }
    }
    for r in [5u64, 8, 11, 14] {
        let g = cons::g_prime_r(r).unwrap();
        if g.order() as u64 != 2 * r + 6
            || shape(&g) != (Some((r as usize, 3)), Distance::Finite(3))
        {
            errors.push(format!(
                "G'({r}): order {}, shape {:?}",
                g.order(),
                shape(&g)
            ));
        }
    }
    let h = cons::named("heawood").unwrap();
    let sd = cons::semi_double(&h, Side::One).unwrap();
    let defect = bounds::defect(&sd, Params::new(6, 3, 3).unwrap());
    if sd.order() != 21
        || graph::diameter(&sd) != Distance::Finite(3)
        || defect != Ok(BigInt::from(0))
    {
        errors.push(format!(
            "semi_double(Heawood): order {}, defect {defect:?}",
            sd.order()
        ));
    }
    collect(errors)
}

fn criterion_4() -> Outcome {
    let mut errors = Vec::new();
    let subdivided = [
        ("K3,3", cons::complete_bipartite(3, 3).unwrap(), 3),
        ("K4,4", cons::complete_bipartite(4, 4).unwrap(), 4),
        ("Heawood", cons::named("heawood").unwrap(), 3),
        ("Tutte-Coxeter", cons::named("tutte-coxeter").unwrap(), 3),
        ("PG(2,3)", cons::projective_plane(3).unwrap(), 4),
    ];
    for (name, g, r) in &subdivided {
        match check_subdivision_identity(g, *r) {
            Ok(c) if c.holds() => {
                // left side once more through the full adjacency matrix
                let s = cons::subdivision(g).unwrap();
                if s.order() <= 16 && cofactor_char_poly(&s) != c.lhs {
                    errors.push(format!(
                        "S({name}): characteristic polynomial disagrees with oracle"
                    ));
                }
            }
            Ok(c) => errors.push(format!("S({name}): differs at x^{:?}", c.witness)),
            Err(e) => errors.push(format!("S({name}): {e}")),
        }
    }
    let c6 = cons::even_cycle(6).unwrap();
    let mut tuples = vec![("C6", c6.clone(), 2), ("C6", c6.clone(), 3), ("C6", c6, 5)];
    tuples.push(("Heawood", cons::named("heawood").unwrap(), 2));
    tuples.push(("Tutte-Coxeter", cons::named("tutte-coxeter").unwrap(), 2));
    for (name, g, k) in &tuples {
        for side in [Side::One, Side::Two] {
            match check_ktuple_identity(g, side, *k) {
                Ok(c) if c.holds() => {}
                Ok(c) => errors.push(format!("{k}-tuple({name}): differs at x^{:?}", c.witness)),
                Err(e) => errors.push(format!("{k}-tuple({name}): {e}")),
            }
        }
    }
    collect(errors)
}

/// `(n1, n2, r, s, d, generated, with diameter d)` for census rows.
const CENSUS: [(usize, usize, usize, usize, usize, u64, u64); 12] = [
    (6, 8, 4, 3, 3, 18, 1),
    (6, 10, 5, 3, 3, 45, 2),
    (7, 14, 6, 3, 3, 7063, 1),
    (6, 14, 7, 3, 3, 344, 4),
    (6, 16, 8, 3, 3, 950, 10),
    (6, 20, 10, 3, 3, 6197, 19),
    (6, 22, 11, 3, 3, 14815, 16),
    (8, 10, 5, 4, 3, 3143, 583),
    (6, 9, 3, 2, 4, 6, 1),
    (8, 16, 4, 2, 4, 204, 1),
    (8, 12, 3, 2, 5, 20, 0),
    (6, 9, 3, 2, 5, 6, 1),
];

fn criterion_5() -> Outcome {
    let mut errors = Vec::new();
    for (n1, n2, r, s, d, generated, with_d) in CENSUS {
        let spec = EnumSpec::new(n1, n2, r, s, d).unwrap();
        let rep = enumerate(spec, &EnumOptions::exhaustive()).unwrap();
        let line = format!(
            "{spec}: {}/{} in {:.2?}",
            rep.generated, rep.with_diameter, rep.elapsed
        );
        println!("    {line}");
        if (rep.generated, rep.with_diameter) != (generated, with_d) || !rep.complete {
            errors.push(format!("{line}, expected {generated}/{with_d}"));
        }
    }
    collect(errors)
}

fn unique_instances() -> Vec<(&'static str, BipartiteGraph, EnumSpec)> {
    let spec = |n1, n2, r, s, d| EnumSpec::new(n1, n2, r, s, d).unwrap();
    let prism = [
        (0, 1),
        (1, 2),
        (0, 2),
        (3, 4),
        (4, 5),
        (3, 5),
        (0, 3),
        (1, 4),
        (2, 5),
    ];
    vec![
        ("[4,3;3] on 14", fig_1a(), spec(6, 8, 4, 3, 3)),
        (
            "[6,3;3] on 21",
            cons::semi_double(&cons::named("heawood").unwrap(), Side::One).unwrap(),
            spec(7, 14, 6, 3, 3),
        ),
        (
            "[3,2;4] on 15",
            cons::subdivision(&cons::complete_bipartite(3, 3).unwrap()).unwrap(),
            spec(6, 9, 3, 2, 4),
        ),
        (
            "[4,2;4] on 24",
            cons::subdivision(&cons::complete_bipartite(4, 4).unwrap()).unwrap(),
            spec(8, 16, 4, 2, 4),
        ),
        (
            "[3,2;5] on 15",
            cons::subdivide_edges(6, &prism).unwrap(),
            spec(6, 9, 3, 2, 5),
        ),
    ]
}

fn criterion_6() -> Outcome {
    let mut errors = Vec::new();
    for (name, g, spec) in unique_instances() {
        match verify_uniqueness(&g, spec, &EnumOptions::exhaustive()) {
            Ok(true) => {}
            Ok(false) => errors.push(format!("{name}: not the only class")),
            Err(e) => errors.push(format!("{name}: {e}")),
        }
    }
    collect(errors)
}

fn test_graphs() -> Vec<(String, BipartiteGraph)> {
    let mut v: Vec<(String, BipartiteGraph)> = recipes()
        .into_iter()
        .filter(|r| r.expected.order <= 120)
        .map(|r| (r.recipe.to_string(), r.recipe.build().unwrap()))
        .collect();
    for (name, g, _) in unique_instances() {
        v.push((name.to_string(), g));
    }
    v.push(("C8".into(), cons::even_cycle(8).unwrap()));
    v.push(("C10".into(), cons::even_cycle(10).unwrap()));
    v.push(("G(6+9)".into(), cons::g_6n(9).unwrap()));
    v
}

fn criterion_7() -> Outcome {
    let mut errors = Vec::new();
    let graphs = test_graphs();

    // girth cap on odd-diameter Moore instances
    let mut capped = 0;
    let mut odd_moore: Vec<(String, BipartiteGraph)> = graphs.clone();
    for (n1, n2, r, s, d, _, _) in CENSUS {
        if d % 2 == 1 && r > s {
            let spec = EnumSpec::new(n1, n2, r, s, d).unwrap();
            let opts = EnumOptions {
                max_representatives: usize::MAX,
                ..EnumOptions::exhaustive()
            };
            for g in enumerate(spec, &opts).unwrap().representatives {
                odd_moore.push((spec.to_string(), g));
            }
        }
    }
    for (name, g) in &odd_moore {
        let Some((a, b)) = graph::is_biregular(g) else {
            continue;
        };
        let Distance::Finite(d) = graph::diameter(g) else {
            continue;
        };
        let Ok(p) = Params::new(a.max(b) as u64, a.min(b) as u64, d as u64) else {
            continue;
        };
        let Some(cap) = girth_cap(p) else { continue };
        if bounds::defect(g, p) != Ok(BigInt::from(0)) {
            continue;
        }
        capped += 1;
        if !graph::girth(g).finite().is_some_and(|x| x as u64 <= cap) {
            errors.push(format!("{name}: girth {} above cap {cap}", graph::girth(g)));
        }
    }
    if capped < 10 {
        errors.push(format!(
            "only {capped} odd-diameter Moore instances checked"
        ));
    }

    for (name, g) in &graphs {
        let Distance::Finite(d) = graph::diameter(g) else {
            continue;
        };
        if let Some((a, b)) = graph::is_biregular(g) {
            if a == b && a >= 2 {
                let s = cons::subdivision(g).unwrap();
                if graph::diameter(&s) != Distance::Finite(2 * d) {
                    errors.push(format!(
                        "S({name}): diameter {} vs 2 * {d}",
                        graph::diameter(&s)
                    ));
                }
            }
        }
        if d >= 2 {
            for side in [Side::One, Side::Two] {
                for k in [2, 3] {
                    let t = cons::k_tuple(g, side, k).unwrap();
                    if graph::diameter(&t) != Distance::Finite(d) {
                        errors.push(format!("{k}-tuple({name}, {side:?}): diameter changed"));
                    }
                }
            }
        }
    }

    let mut rng = StdRng::seed_from_u64(0x5eed);
    for (name, g) in graphs.iter().filter(|(_, g)| g.order() <= 50) {
        let c = canonical_form(g);
        let mut rows: Vec<usize> = (0..g.n1()).collect();
        let mut cols: Vec<usize> = (0..g.n2()).collect();
        for _ in 0..1000 {
            rows.shuffle(&mut rng);
            cols.shuffle(&mut rng);
            if canonical_form(&g.permuted(&rows, &cols)) != c {
                errors.push(format!("{name}: canonical form depends on labelling"));
                break;
            }
        }
    }

    let mut checked = 0;
    for n in 2..=10 {
        for n1 in 1..n {
            let n2 = n - n1;
            for r in 1..=n2 {
                if (n1 * r) % n2 != 0 {
                    continue;
                }
                let s = n1 * r / n2;
                let Ok(spec) = EnumSpec::new(n1, n2, r, s, 1) else {
                    continue;
                };
                let opts = EnumOptions {
                    connected_only: false,
                    ..EnumOptions::exhaustive()
                };
                for g in generate(spec, &opts).unwrap() {
                    checked += 1;
                    if char_poly(&g).unwrap() != cofactor_char_poly(&g) {
                        errors.push(format!("char_poly mismatch on {spec} graph {g:?}"));
                    }
                }
            }
        }
    }
    if checked < 50 {
        errors.push(format!("only {checked} small graphs compared"));
    }
    println!(
        "    {capped} girth-capped instances, {checked} small graphs against the cofactor oracle"
    );
    collect(errors)
}

fn main() -> ExitCode {
    type Criterion = (u32, &'static str, fn() -> Outcome, Duration);
    let criteria: [Criterion; 7] = [
        (
            1,
            "bound-table regression",
            criterion_1,
            Duration::from_secs(1),
        ),
        (
            2,
            "improvement condition",
            criterion_2,
            Duration::from_secs(1),
        ),
        (
            3,
            "construction verification",
            criterion_3,
            Duration::from_secs(10),
        ),
        (
            4,
            "spectral identities",
            criterion_4,
            Duration::from_secs(30),
        ),
        (
            5,
            "enumeration census",
            criterion_5,
            Duration::from_secs(600),
        ),
        (6, "uniqueness", criterion_6, Duration::from_secs(600)),
        (7, "property suites", criterion_7, Duration::from_secs(600)),
    ];
    let mut failed = 0;
    for (id, name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let mut problems = outcome.err().unwrap_or_default();
        if took > limit {
            problems.push(format!("took {took:.2?}, limit {limit:?}"));
        }
        let verdict = if problems.is_empty() { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {id}: {name} ({took:.2?})");
        for p in &problems {
            println!("    {p}");
        }
        if !problems.is_empty() {
            failed += 1;
        }
    }
    println!("{} of 7 criteria passed", 7 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
