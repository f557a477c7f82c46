//! `bench` grids and their CSV rows.

use std::io::Write;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use ecoc_core::gen::{GenSpec, Probability};
use ecoc_core::{kernelize_with, LpMode, Outcome};
use rayon::prelude::*;

pub const COLUMNS: [&str; 15] = [
    "kind", "seed", "n", "m", "l", "k", "p", "outcome", "kernel_n", "kernel_k", "rule2", "rule3", "rule4",
    "lp_solves", "wall_ms",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pub kinds: Vec<String>,
    pub n: Vec<usize>,
    pub components: Vec<usize>,
    pub l: Vec<usize>,
    pub k: Vec<usize>,
    pub p: Vec<Probability>,
    pub seeds: Vec<u64>,
}

impl Default for Grid {
    fn default() -> Self {
        Self {
            kinds: vec!["planted".into()],
            n: vec![20],
            components: vec![5],
            l: vec![1],
            k: vec![2],
            p: vec![Probability::new(1, 4).unwrap()],
            seeds: vec![0],
        }
    }
}

/// Integer values: `3`, `1,2,5` or the half-open range `0..10`.
fn integers(key: &str, text: &str) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for item in text.split(',') {
        let item = item.trim();
        let parse = |s: &str| s.trim().parse::<u64>().ok().with_context(|| format!("bad value `{s}` for `{key}`"));
        if let Some((a, b)) = item.split_once("..") {
            out.extend(parse(a)?..parse(b)?);
        } else {
            out.push(parse(item)?);
        }
    }
    if out.is_empty() {
        bail!("`{key}` has no values");
    }
    Ok(out)
}

fn sizes(key: &str, text: &str) -> Result<Vec<usize>> {
    integers(key, text)?
        .into_iter()
        .map(|x| usize::try_from(x).with_context(|| format!("`{key}` value {x} is too large")))
        .collect()
}

/// Parses `key=v1,v2;key=a..b;...`. Keys left out keep their defaults.
pub fn parse_grid(text: &str) -> Result<Grid> {
    let mut grid = Grid::default();
    let mut seen = Vec::new();
    for part in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, values) = part.split_once('=').with_context(|| format!("expected key=values, got `{part}`"))?;
        let key = key.trim();
        if seen.contains(&key) {
            bail!("grid key `{key}` given twice");
        }
        seen.push(key);
        match key {
            "kind" => {
                grid.kinds = values.split(',').map(|s| s.trim().to_string()).collect();
                if let Some(bad) = grid.kinds.iter().find(|k| *k != "planted" && *k != "random") {
                    bail!("unknown kind `{bad}`");
                }
            }
            "n" => grid.n = sizes(key, values)?,
            "components" => grid.components = sizes(key, values)?,
            "l" => grid.l = sizes(key, values)?,
            "k" => grid.k = sizes(key, values)?,
            "p" => {
                grid.p = values
                    .split(',')
                    .map(|s| s.trim().parse::<Probability>().map_err(anyhow::Error::msg))
                    .collect::<Result<_>>()?
            }
            "seed" => grid.seeds = integers(key, values)?,
            _ => bail!("unknown grid key `{key}`"),
        }
    }
    if grid.l.contains(&0) {
        bail!("l must be at least 1");
    }
    Ok(grid)
}

impl Grid {
    /// The cartesian product, seeds varying fastest. Planted specs ignore
    /// `n` and random specs ignore `components`.
    pub fn specs(&self) -> Vec<GenSpec> {
        let mut out = Vec::new();
        for kind in &self.kinds {
            let sizes = if kind == "planted" { &self.components } else { &self.n };
            for &size in sizes {
                for &l in &self.l {
                    for &k in &self.k {
                        for &p in &self.p {
                            for &seed in &self.seeds {
                                out.push(if kind == "planted" {
                                    GenSpec::Planted {
                                        components: size,
                                        l,
                                        k,
                                        p,
                                        seed,
                                    }
                                } else {
                                    GenSpec::Random { n: size, p, l, k, seed }
                                });
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct Row {
    pub spec: GenSpec,
    pub n: usize,
    pub m: usize,
    /// `(kernel_n, kernel_k)`, or `None` for a no answer.
    pub kernel: Option<(usize, i64)>,
    pub rules: [usize; 3],
    pub lp_solves: usize,
    pub wall_ms: f64,
}

/// Runs every spec of the grid in parallel; rows come back in grid order.
pub fn run(grid: &Grid, mode: LpMode) -> Vec<Row> {
    grid.specs()
        .into_par_iter()
        .map(|spec| {
            let inst = spec.generate();
            let mut lp_solves = 0;
            let start = Instant::now();
            let res = kernelize_with(&inst, mode, |_, _| lp_solves += 1);
            let wall_ms = start.elapsed().as_secs_f64() * 1e3;
            let kernel = match &res.outcome {
                Outcome::Kernel(ker) => Some((ker.graph.num_vertices(), ker.k)),
                Outcome::No(_) => None,
            };
            Row {
                n: inst.graph.num_vertices(),
                m: inst.graph.num_edges(),
                kernel,
                rules: res.rule_counts(),
                lp_solves,
                wall_ms,
                spec,
            }
        })
        .collect()
}

pub fn write_csv<W: Write>(out: W, rows: &[Row]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COLUMNS)?;
    for row in rows {
        let (kind, seed, l, k, p) = match &row.spec {
            GenSpec::Planted { l, k, p, seed, .. } => ("planted", seed, l, k, p),
            GenSpec::Random { l, k, p, seed, .. } => ("random", seed, l, k, p),
        };
        let (outcome, kernel_n, kernel_k) = match row.kernel {
            Some((n, k)) => ("kernel", n.to_string(), k.to_string()),
            None => ("no", String::new(), String::new()),
        };
        w.write_record([
            kind.to_string(),
            seed.to_string(),
            row.n.to_string(),
            row.m.to_string(),
            l.to_string(),
            k.to_string(),
            p.to_string(),
            outcome.to_string(),
            kernel_n,
            kernel_k,
            row.rules[0].to_string(),
            row.rules[1].to_string(),
            row.rules[2].to_string(),
            row.lp_solves.to_string(),
            format!("{:.3}", row.wall_ms),
        ])?;
    }
    w.flush()?;
    Ok(())
}
