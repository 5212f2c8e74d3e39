//! One function per subcommand. Each returns the exit status; errors are
//! mapped to a status by [`status_of`].

use std::fmt;
use std::fs;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use bimoore::bounds::{self, emit_bound_table, girth_cap};
use bimoore::constructions as cons;
use bimoore::enumerate::{self as en, CensusOptions, EnumOptions, EnumReport, EnumSpec};
use bimoore::graph::{self, io::GraphRecord};
use bimoore::spectrum::{self, IdentityCheck};
use bimoore::{BipartiteGraph, Distance, Error, Params, Side};

use crate::files;
use crate::{
    BoundsArgs, Check, ConstructArgs, EnumerateArgs, ExportArgs, SpectrumArgs, Status, TableFormat,
    VerifyArgs,
};

/// A malformed command line that clap cannot detect on its own.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(UsageError(msg.into()).into())
}

pub fn status_of(e: &anyhow::Error) -> Status {
    for cause in e.chain() {
        if cause.is::<UsageError>() {
            return Status::Usage;
        }
        match cause.downcast_ref::<Error>() {
            Some(Error::InvalidParams(_) | Error::BadMultiplicity(_)) => return Status::Usage,
            Some(Error::Incomplete(_)) => return Status::Incomplete,
            Some(_) => return Status::Failed,
            None => {}
        }
    }
    Status::Failed
}

fn side(n: u8) -> Side {
    if n == 1 {
        Side::One
    } else {
        Side::Two
    }
}

pub fn bounds(a: BoundsArgs) -> Result<Status> {
    let s_max = a.s_max.unwrap_or(a.max).min(a.max);
    if a.d < 2 || a.min < 2 || a.max < a.min || s_max < a.min {
        return usage(format!(
            "need d >= 2 and 2 <= min <= s-max <= max, got d = {}, min = {}, s-max = {s_max}, max = {}",
            a.d, a.min, a.max
        ));
    }
    let table = emit_bound_table(a.d, a.min..=a.max, a.min..=s_max)?;
    let text = match a.format {
        TableFormat::Text => table.render_text(),
        TableFormat::Csv => table.render_csv(),
    };
    files::emit(None, &text)?;
    Ok(Status::Ok)
}

const CONSTRUCTIONS: &[(&str, &str)] = &[
    ("complete A B", "complete bipartite graph K(A,B)"),
    ("cycle N", "even cycle on N vertices"),
    ("projective-plane Q", "incidence graph of PG(2,Q)"),
    (
        "quadrangle Q",
        "incidence graph of the symplectic quadrangle W(Q)",
    ),
    ("g6n N", "the [6,3;3]-type graph G(6+N)"),
    ("g-prime R", "[R,3;3] graph on 2R+6 vertices, R = 2 mod 3"),
    ("subdivision", "subdivision graph; needs --of or --input"),
    (
        "k-tuple K",
        "K copies of each vertex of --side; needs --of or --input",
    ),
    ("semi-double", "the 2-tuple graph; needs --of or --input"),
    (
        "family-r-2r R D",
        "[2R,R;D] graph from a Moore graph (--input for large R)",
    ),
    ("moore-r2 R M", "[R,2;2M] Moore graph (--input for large R)"),
];

fn numbers<T: FromStr>(name: &str, params: &[String], want: usize) -> Result<Vec<T>> {
    if params.len() != want {
        return usage(format!(
            "{name} takes {want} parameter(s), got {}",
            params.len()
        ));
    }
    params
        .iter()
        .map(|p| {
            p.parse()
                .map_err(|_| UsageError(format!("{name}: {p:?} is not a valid number")).into())
        })
        .collect()
}

fn first_graph(path: &str) -> Result<GraphRecord> {
    Ok(files::read(path)?.swap_remove(0))
}

fn base_graph(a: &ConstructArgs) -> Result<(BipartiteGraph, String)> {
    match (&a.of, &a.input) {
        (Some(name), None) => Ok((cons::named(name)?, name.clone())),
        (None, Some(path)) => Ok((first_graph(&path.to_string_lossy())?.graph, "file".into())),
        _ => usage(format!("{} needs exactly one of --of and --input", a.name)),
    }
}

fn external(a: &ConstructArgs) -> Result<Option<BipartiteGraph>> {
    a.input
        .as_ref()
        .map(|p| first_graph(&p.to_string_lossy()).map(|r| r.graph))
        .transpose()
}

pub fn construct(a: ConstructArgs) -> Result<Status> {
    if a.name == "list" {
        let mut text = String::new();
        for (usage, what) in CONSTRUCTIONS {
            text.push_str(&format!("{usage:<20} {what}\n"));
        }
        text.push_str(&format!("{:<20} named graphs\n", cons::NAMED.join(", ")));
        files::emit(None, &text)?;
        return Ok(Status::Ok);
    }
    let name = a.name.as_str();
    let mut tags: Vec<(&str, String)> = vec![("recipe", name.to_string())];
    let g = match name {
        "complete" => {
            let v = numbers::<usize>(name, &a.params, 2)?;
            cons::complete_bipartite(v[0], v[1])?
        }
        "cycle" => cons::even_cycle(numbers(name, &a.params, 1)?[0])?,
        "projective-plane" => cons::projective_plane(numbers(name, &a.params, 1)?[0])?,
        "quadrangle" => cons::symplectic_quadrangle(numbers(name, &a.params, 1)?[0])?,
        "g6n" => cons::g_6n(numbers(name, &a.params, 1)?[0])?,
        "g-prime" => cons::g_prime_r(numbers(name, &a.params, 1)?[0])?,
        "subdivision" => {
            numbers::<usize>(name, &a.params, 0)?;
            let (base, of) = base_graph(&a)?;
            tags.push(("of", of));
            cons::subdivision(&base)?
        }
        "k-tuple" | "semi-double" => {
            let k = if name == "semi-double" {
                numbers::<usize>(name, &a.params, 0)?;
                2
            } else {
                match (a.k, a.params.is_empty()) {
                    (Some(k), true) => k,
                    (None, false) => numbers(name, &a.params, 1)?[0],
                    _ => return usage("k-tuple needs K, either as a parameter or with --k"),
                }
            };
            let (base, of) = base_graph(&a)?;
            tags = vec![
                ("recipe", "k-tuple".into()),
                ("k", k.to_string()),
                ("side", a.side.to_string()),
                ("of", of),
            ];
            cons::k_tuple(&base, side(a.side), k)?
        }
        "family-r-2r" => {
            let v = numbers::<u64>(name, &a.params, 2)?;
            tags.push(("r", v[0].to_string()));
            tags.push(("d", v[1].to_string()));
            cons::family_r_2r(v[0], v[1], external(&a)?.as_ref())?.graph
        }
        "moore-r2" => {
            let v = numbers::<u64>(name, &a.params, 2)?;
            tags.push(("r", v[0].to_string()));
            tags.push(("m", v[1].to_string()));
            cons::moore_r2(v[0], v[1], external(&a)?.as_ref())?
        }
        other => {
            numbers::<usize>(name, &a.params, 0)?;
            match cons::named(other) {
                Ok(g) => g,
                Err(_) => {
                    return usage(format!(
                        "unknown construction {other:?}; `bimoore construct list` shows them all"
                    ))
                }
            }
        }
    };
    if matches!(
        name,
        "complete" | "cycle" | "projective-plane" | "quadrangle" | "g6n" | "g-prime"
    ) {
        tags.push(("params", a.params.join(",")));
    }
    let g = if a.swap_sides { g.swap_sides() } else { g };
    if a.swap_sides {
        tags.push(("swapped", "1".into()));
    }
    files::emit(a.out.as_deref(), &files::render(&g, &tags, a.format))?;
    Ok(Status::Ok)
}

fn degree_pair(g: &BipartiteGraph) -> Option<(u64, u64)> {
    graph::is_biregular(g).map(|(a, b)| (a.max(b) as u64, a.min(b) as u64))
}

/// Report lines for one graph plus the first failed expectation.
fn verify_one(g: &BipartiteGraph, expect: Option<Params>) -> Result<(Vec<String>, Option<String>)> {
    let mut out = Vec::new();
    let mut failure = None;
    let fail = |msg: String, failure: &mut Option<String>| {
        if failure.is_none() {
            *failure = Some(msg);
        }
    };
    out.push(format!(
        "{} vertices ({} + {}), {} edges",
        g.order(),
        g.n1(),
        g.n2(),
        g.edge_count()
    ));
    let degrees = degree_pair(g);
    match degrees {
        Some((r, s)) => out.push(format!("biregular: yes, degrees ({r}, {s})")),
        None => {
            let (d1, d2) = graph::degrees(g);
            let range = |d: &[usize]| {
                let lo = d.iter().min().copied().unwrap_or(0);
                let hi = d.iter().max().copied().unwrap_or(0);
                format!("{lo}..{hi}")
            };
            out.push(format!(
                "biregular: no, side degrees {} and {}",
                range(&d1),
                range(&d2)
            ));
        }
    }
    let diameter = graph::diameter(g);
    out.push(format!("diameter: {diameter}"));
    let girth = graph::girth(g);
    out.push(format!("girth: {girth}"));

    if let Some(p) = expect {
        if degrees != Some((p.r(), p.s())) {
            let got = degrees.map_or("not biregular".to_string(), |(r, s)| format!("({r}, {s})"));
            fail(
                format!("degrees {got}, expected ({}, {})", p.r(), p.s()),
                &mut failure,
            );
        }
        if diameter != Distance::Finite(p.d() as usize) {
            fail(
                format!("diameter {diameter}, expected {}", p.d()),
                &mut failure,
            );
        }
    }
    let params = match (expect, degrees, diameter) {
        (Some(p), _, _) => Some(p),
        (None, Some((r, s)), Distance::Finite(d)) if d >= 2 => Params::new(r, s, d as u64).ok(),
        _ => None,
    };
    if let (Some(p), None) = (params, &failure) {
        let b = bounds::best_bound(p)?;
        out.push(format!("best bound {p}: {} ({})", b.total, b.regime));
        out.push(format!("defect: {}", bounds::defect(g, p)?));
        if let Some(plain) = bounds::defect_against_plain(g, p)? {
            out.push(format!(
                "defect against plain bound {}: {plain}",
                b.plain_total.as_ref().expect("plain bound")
            ));
        }
        if let Some(cap) = girth_cap(p) {
            let plain = b.plain_total.clone().unwrap_or(b.total.clone());
            if plain == g.order().into() {
                let ok = girth.finite().is_some_and(|gi| gi as u64 <= cap);
                out.push(format!(
                    "girth cap {cap}: {}",
                    if ok { "holds" } else { "VIOLATED" }
                ));
                if !ok {
                    fail(format!("girth {girth} exceeds the cap {cap}"), &mut failure);
                }
            } else {
                out.push(format!(
                    "girth cap {cap}: not applicable, order below {plain}"
                ));
            }
        }
    }
    Ok((out, failure))
}

pub fn verify(a: VerifyArgs) -> Result<Status> {
    let expect = match a.expect.as_deref() {
        Some(&[r, s, d]) => Some(Params::new(r, s, d)?),
        _ => None,
    };
    let records = files::read(&a.file)?;
    let mut status = Status::Ok;
    let mut text = String::new();
    for (i, rec) in records.iter().enumerate() {
        let (lines, failure) = verify_one(&rec.graph, expect)?;
        let recipe = rec
            .tag("recipe")
            .map_or(String::new(), |r| format!(" [{r}]"));
        text.push_str(&format!("graph {}{recipe}: {}\n", i + 1, lines[0]));
        for l in &lines[1..] {
            text.push_str(&format!("  {l}\n"));
        }
        match failure {
            Some(f) => {
                text.push_str(&format!("  FAIL: {f}\n"));
                status = Status::Failed;
            }
            None if expect.is_some() => text.push_str("  OK\n"),
            None => {}
        }
    }
    files::emit(None, &text)?;
    Ok(status)
}

fn describe(check: &IdentityCheck, what: &str) -> String {
    match check.witness {
        None => format!(
            "{what} identity holds\n  phi = {}\n",
            check.lhs.factor()
        ),
        Some(j) => format!(
            "{what} identity FAILS: coefficients of x^{j} differ ({} vs {})\n  lhs = {}\n  rhs = {}\n",
            check.lhs.coeff(j),
            check.rhs.coeff(j),
            check.lhs,
            check.rhs
        ),
    }
}

fn subdivision_check(rec: &GraphRecord, base: bool) -> Result<IdentityCheck> {
    let g = &rec.graph;
    if base {
        let r = graph::is_biregular(g)
            .filter(|(a, b)| a == b)
            .ok_or(Error::NotRegular)?
            .0;
        return Ok(spectrum::check_subdivision_identity(g, r as u64)?);
    }
    Ok(spectrum::check_subdivision_of(g)?)
}

fn ktuple_check(
    rec: &GraphRecord,
    k: Option<usize>,
    base: bool,
    side_n: u8,
) -> Result<IdentityCheck> {
    let k = match (k, rec.tag("k")) {
        (Some(k), _) => k,
        (None, Some(t)) => t
            .parse()
            .map_err(|_| UsageError(format!("bad k tag {t:?}")))?,
        (None, None) => return usage("k-tuple check needs --k or a k tag in the file"),
    };
    let g = &rec.graph;
    if base {
        return Ok(spectrum::check_ktuple_identity(g, side(side_n), k)?);
    }
    match spectrum::check_ktuple_of(g, k) {
        Err(Error::NotApplicable(_)) if rec.tag("swapped").is_some() => {
            Ok(spectrum::check_ktuple_of(&g.swap_sides(), k)?)
        }
        other => Ok(other?),
    }
}

pub fn spectrum(a: SpectrumArgs) -> Result<Status> {
    let records = files::read(&a.file)?;
    let mut text = String::new();
    let mut status = Status::Ok;
    for (i, rec) in records.iter().enumerate() {
        if records.len() > 1 {
            text.push_str(&format!("graph {}:\n", i + 1));
        }
        let check = match a.check {
            Some(Check::Identity) => match rec.tag("recipe") {
                Some("subdivision") => Some(Check::Subdivision),
                Some("k-tuple") => Some(Check::Ktuple),
                _ => {
                    return usage(
                        "no construction tag to pick an identity; use --check subdivision or --check ktuple",
                    )
                }
            },
            c => c,
        };
        let result = match check {
            Some(Check::Subdivision) => Some(("subdivision", subdivision_check(rec, a.base)?)),
            Some(Check::Ktuple) => Some(("k-tuple", ktuple_check(rec, a.k, a.base, a.side)?)),
            _ => None,
        };
        match result {
            Some((what, c)) => {
                if !c.holds() {
                    status = Status::Failed;
                }
                text.push_str(&describe(&c, what));
            }
            None => {
                let phi = spectrum::char_poly(&rec.graph)?;
                let f = phi.factor();
                text.push_str(&format!("characteristic polynomial: {phi}\n"));
                text.push_str(&format!("coefficients: {}\n", phi.coefficient_list()));
                text.push_str(&format!("factored: {f}\n"));
                text.push_str(&format!("spectrum: {}\n", f.spectrum_string()));
            }
        }
    }
    files::emit(None, &text)?;
    Ok(status)
}

fn emit_representatives(dir: &std::path::Path, report: &EnumReport) -> Result<()> {
    let sp = &report.spec;
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(format!(
        "r{}-s{}-d{}-n{}x{}.g6",
        sp.r, sp.s, sp.d, sp.n1, sp.n2
    ));
    let tags = [
        ("r", sp.r.to_string()),
        ("s", sp.s.to_string()),
        ("d", sp.d.to_string()),
    ];
    let text: String = report
        .representatives
        .iter()
        .map(|g| files::render(g, &tags, crate::GraphFormat::Graph6))
        .collect();
    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))
}

pub fn enumerate(a: EnumerateArgs) -> Result<Status> {
    let opts = EnumOptions {
        work_limit: if a.exhaustive {
            None
        } else {
            Some(a.limit.unwrap_or(en::DEFAULT_WORK_LIMIT))
        },
        threads: a.threads,
        max_representatives: a.reps,
        connected_only: !a.all,
        checkpoint: a.checkpoint.clone(),
    };
    let reports = match (a.n1, a.n2) {
        (Some(n1), Some(n2)) => vec![en::enumerate(EnumSpec::new(n1, n2, a.r, a.s, a.d)?, &opts)?],
        _ => {
            let copts = CensusOptions {
                from_plain_bound: a.plain_bound,
            };
            en::census(a.r as u64, a.s as u64, a.d as u64, &opts, copts)?
        }
    };
    if reports.is_empty() {
        bail!("no feasible order for [{},{};{}]", a.r, a.s, a.d);
    }
    let mut text = String::new();
    for rep in &reports {
        text.push_str(&format!("{rep}\n"));
        eprintln!("{}: {} nodes in {:.2?}", rep.spec, rep.nodes, rep.elapsed);
        if let Some(dir) = &a.emit {
            emit_representatives(dir, rep)?;
        }
    }
    files::emit(None, &text)?;
    if reports.iter().any(|r| !r.complete) {
        return Ok(Status::Incomplete);
    }
    Ok(Status::Ok)
}

pub fn export(a: ExportArgs) -> Result<Status> {
    let records = files::read(&a.file)?;
    let text: String = records
        .iter()
        .map(|rec| {
            let tags: Vec<(&str, String)> = rec
                .tags
                .iter()
                .map(|(k, v)| (k.as_str(), v.clone()))
                .collect();
            files::render(&rec.graph, &tags, a.format)
        })
        .collect();
    files::emit(a.out.as_deref(), &text)?;
    Ok(Status::Ok)
}
