//! Reading graph files and writing graphs in the supported formats.

use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use anyhow::{Context, Result};
use bimoore::graph::io::{self as gio, GraphRecord};
use bimoore::BipartiteGraph;

use crate::GraphFormat;

/// Reads every graph in `path`, or stdin for `-`.
pub fn read(path: &str) -> Result<Vec<GraphRecord>> {
    let text = if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .context("reading stdin")?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))?
    };
    gio::read_graphs(&text).with_context(|| format!("parsing {path}"))
}

pub fn render(g: &BipartiteGraph, tags: &[(&str, String)], format: GraphFormat) -> String {
    match format {
        GraphFormat::Graph6 => gio::write_graph6_record(g, tags),
        GraphFormat::Biadjacency => {
            let mut s = format!("# bipartite {} {}", g.n1(), g.n2());
            for (k, v) in tags {
                s.push_str(&format!(" {k}={v}"));
            }
            s.push('\n');
            s.push_str(&gio::write_biadjacency(g));
            s
        }
        GraphFormat::Dot => gio::to_dot(g),
    }
}

/// Writes to `out`, or stdout when absent.
pub fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(stdout.flush()?)
        }
    }
}
