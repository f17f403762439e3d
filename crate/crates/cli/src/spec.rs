//! Subshift, pattern, torus and measure documents.

use std::path::Path;

use num_rational::Rational64;
use serde::Deserialize;
use symdyn::lattice::OrbitMeasureSpec;
use symdyn::zoo::{self, SigmaSpec};
use symdyn::{
    Alphabet, CellSet, LabeledGraph, Oracle1d, Pattern, PeriodLattice, Sft1d, SftZd, Sofic1d,
    SubshiftHandle, Symbol, TorusConfig,
};

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum SpecFile {
    Sft1d {
        alphabet: Vec<String>,
        forbidden: Vec<String>,
    },
    Sofic1d {
        alphabet: Vec<String>,
        vertices: Vec<String>,
        edges: Vec<(String, String, String)>,
    },
    Oracle {
        name: String,
    },
    Sigma {
        preperiod: Vec<u8>,
        period: Vec<u8>,
    },
    SftZd {
        d: usize,
        alphabet: Vec<String>,
        window: Vec<Vec<i64>>,
        allowed: Vec<Vec<String>>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PatternFile {
    support: Vec<Vec<i64>>,
    values: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TorusFile {
    periods: Vec<usize>,
    cells: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MeasureFile {
    points: Vec<TorusFile>,
    weights: Vec<String>,
}

fn input<E: std::fmt::Display>(what: &str) -> impl Fn(E) -> CliError + '_ {
    move |e| CliError::Input(format!("{what}: {e}"))
}

/// Inline JSON when the argument starts with `{` or `[`, a file path otherwise.
fn read_document(arg: &str) -> Result<String, CliError> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        Ok(arg.to_string())
    } else {
        std::fs::read_to_string(arg).map_err(input(arg))
    }
}

fn alphabet(tokens: Vec<String>) -> Result<Alphabet, CliError> {
    Alphabet::new(tokens).map_err(input("field \"alphabet\""))
}

fn symbols(a: &Alphabet, tokens: &[String], field: &str) -> Result<Vec<Symbol>, CliError> {
    tokens
        .iter()
        .map(|t| a.symbol(t))
        .collect::<symdyn::Result<_>>()
        .map_err(input(field))
}

/// Loads a subshift document. Sofic graphs are trimmed, with a warning on
/// standard error naming the removed vertices.
pub fn load_spec(path: &Path) -> Result<SubshiftHandle, CliError> {
    let text = std::fs::read_to_string(path).map_err(input(&path.display().to_string()))?;
    let spec: SpecFile = serde_json::from_str(&text).map_err(input(&path.display().to_string()))?;
    Ok(match spec {
        SpecFile::Sft1d {
            alphabet: a,
            forbidden,
        } => {
            let a = alphabet(a)?;
            let words = forbidden
                .iter()
                .map(|w| a.parse(w))
                .collect::<symdyn::Result<_>>()
                .map_err(input("field \"forbidden\""))?;
            SubshiftHandle::Sft1d(Sft1d::new(a, words).map_err(input("sft1d"))?)
        }
        SpecFile::Sofic1d {
            alphabet: a,
            vertices,
            edges,
        } => {
            let a = alphabet(a)?;
            let vs: Vec<&str> = vertices.iter().map(String::as_str).collect();
            let es: Vec<(&str, &str, &str)> = edges
                .iter()
                .map(|(f, t, l)| (f.as_str(), t.as_str(), l.as_str()))
                .collect();
            let g = LabeledGraph::from_tokens(a, &vs, &es).map_err(input("field \"edges\""))?;
            let x = Sofic1d::new(g);
            if !x.removed_vertices().is_empty() {
                eprintln!(
                    "warning: trimmed vertices not on any bi-infinite path: {}",
                    x.removed_vertices().join(", ")
                );
            }
            SubshiftHandle::Sofic1d(x)
        }
        SpecFile::Oracle { name } => match zoo::make_zoo(&name).map_err(input("field \"name\""))? {
            h @ SubshiftHandle::Oracle1d(_) => h,
            _ => {
                return Err(CliError::Input(format!(
                    "field \"name\": {name:?} is not an oracle shift"
                )))
            }
        },
        SpecFile::Sigma { preperiod, period } => SubshiftHandle::Oracle1d(Oracle1d::sigma(
            SigmaSpec::new(preperiod, period).map_err(input("sigma"))?,
        )),
        SpecFile::SftZd {
            d,
            alphabet: a,
            window,
            allowed,
        } => {
            let a = alphabet(a)?;
            let rows = allowed
                .iter()
                .map(|r| symbols(&a, r, "field \"allowed\""))
                .collect::<Result<_, _>>()?;
            SubshiftHandle::SftZd(SftZd::new(d, a, window, rows).map_err(input("sft_zd"))?)
        }
    })
}

pub fn load_pattern(arg: &str, a: &Alphabet, d: usize) -> Result<Pattern, CliError> {
    let doc: PatternFile = serde_json::from_str(&read_document(arg)?).map_err(input("pattern"))?;
    if doc.support.len() != doc.values.len() {
        return Err(CliError::Input(format!(
            "pattern: {} support cells but {} values",
            doc.support.len(),
            doc.values.len()
        )));
    }
    let values = symbols(a, &doc.values, "pattern field \"values\"")?;
    Pattern::new(d, doc.support.into_iter().zip(values)).map_err(input("pattern"))
}

fn torus(doc: TorusFile, a: &Alphabet) -> Result<TorusConfig, CliError> {
    let lattice = PeriodLattice::new(doc.periods).map_err(input("field \"periods\""))?;
    let cells = symbols(a, &doc.cells, "field \"cells\"")?;
    TorusConfig::new(lattice, cells).map_err(input("torus"))
}

/// Orbit measure document: generator points and `"p/q"` weights.
pub fn load_measure(
    arg: &str,
    a: &Alphabet,
) -> Result<(Vec<TorusConfig>, OrbitMeasureSpec), CliError> {
    let doc: MeasureFile = serde_json::from_str(&read_document(arg)?).map_err(input("measure"))?;
    let weights = doc
        .weights
        .iter()
        .map(|w| w.parse::<Rational64>().map_err(input("field \"weights\"")))
        .collect::<Result<Vec<_>, _>>()?;
    let points = doc
        .points
        .into_iter()
        .map(|t| torus(t, a))
        .collect::<Result<Vec<_>, _>>()?;
    let spec = OrbitMeasureSpec::from_points(&points, weights).map_err(input("measure"))?;
    Ok((points, spec))
}

/// `boxR` for `{−R, …, R}^d`, or a JSON cell list (`[0,1,2]` in one
/// dimension, `[[0,0],[1,0]]` in general).
pub fn parse_delta(arg: &str, d: usize) -> Result<CellSet, CliError> {
    if let Some(r) = arg.strip_prefix("box") {
        let r: i64 = r
            .parse()
            .map_err(|_| CliError::Input(format!("--delta: bad box radius in {arg:?}")))?;
        return Ok(CellSet::cube(d, r));
    }
    let value: serde_json::Value = serde_json::from_str(arg).map_err(input("--delta"))?;
    let cells: Vec<Vec<i64>> = match serde_json::from_value::<Vec<i64>>(value.clone()) {
        Ok(flat) if d == 1 => flat.into_iter().map(|c| vec![c]).collect(),
        _ => serde_json::from_value(value).map_err(input("--delta"))?,
    };
    CellSet::new(d, cells).map_err(input("--delta"))
}

pub fn torus_json(y: &TorusConfig, a: &Alphabet) -> serde_json::Value {
    serde_json::json!({
        "periods": y.lattice().periods(),
        "cells": y.cells().iter().map(|&s| a.token(s)).collect::<Vec<_>>(),
    })
}
