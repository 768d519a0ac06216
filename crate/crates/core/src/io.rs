//! JSONL instance files.
//!
//! Line 1 is a header object, every following line one edge `{"e":[..]}`
//! with 1-based vertices in lexicographic order.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::graph::HyperGraph;
use crate::samplers::ModelSpec;
use crate::seed::Seed;

pub const FORMAT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceHeader {
    pub d: usize,
    pub dims: Vec<u32>,
    #[serde(default = "unknown_model")]
    pub model: String,
    #[serde(default)]
    pub params: Map<String, Value>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub version: Option<String>,
}

fn unknown_model() -> String {
    "none".into()
}

impl InstanceHeader {
    /// Header for a hand-made graph.
    pub fn plain(dims: &[u32]) -> Self {
        InstanceHeader {
            d: dims.len(),
            dims: dims.to_vec(),
            model: unknown_model(),
            params: Map::new(),
            seed: 0,
            version: Some(FORMAT_VERSION.into()),
        }
    }

    /// Header for a sampled graph; word samples record their words.
    pub fn for_sample(spec: &ModelSpec, seed: Seed, words: Option<&[Vec<u32>]>) -> Self {
        let mut params = spec.params_json();
        if let Some(ws) = words {
            params.insert("words".into(), serde_json::json!(ws));
        }
        let dims = spec.class_dims();
        InstanceHeader {
            d: dims.len(),
            dims,
            model: spec.kind.name().into(),
            params,
            seed: seed.0,
            version: Some(FORMAT_VERSION.into()),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeLine {
    e: Vec<u32>,
}

pub fn write_instance<W: Write>(mut w: W, header: &InstanceHeader, h: &HyperGraph) -> Result<()> {
    serde_json::to_writer(&mut w, header).map_err(std::io::Error::from)?;
    writeln!(w)?;
    for e in h.edges() {
        writeln!(
            w,
            "{{\"e\":{}}}",
            serde_json::to_string(e).map_err(std::io::Error::from)?
        )?;
    }
    w.flush()?;
    Ok(())
}

/// Parses and validates an instance. Errors carry the 1-based file line.
pub fn read_instance<R: BufRead>(r: R) -> Result<(InstanceHeader, HyperGraph)> {
    let mut lines = r.lines().enumerate();
    let parse = |line: usize, msg: String| Error::Parse { line, msg };
    let header: InstanceHeader = loop {
        match lines.next() {
            None => return Err(parse(1, "missing header".into())),
            Some((i, l)) => {
                let l = l?;
                if l.trim().is_empty() {
                    continue;
                }
                break serde_json::from_str(&l).map_err(|e| parse(i + 1, e.to_string()))?;
            }
        }
    };
    if header.d != header.dims.len() || header.d < 2 || header.dims.contains(&0) {
        return Err(parse(
            1,
            format!("bad header: d = {} with dims {:?}", header.d, header.dims),
        ));
    }
    let mut coords = Vec::new();
    let mut line_of = Vec::new();
    for (i, l) in lines {
        let l = l?;
        if l.trim().is_empty() {
            continue;
        }
        let e: EdgeLine = serde_json::from_str(&l).map_err(|e| parse(i + 1, e.to_string()))?;
        if e.e.len() != header.d {
            return Err(parse(
                i + 1,
                format!("edge has {} coordinates, expected {}", e.e.len(), header.d),
            ));
        }
        coords.extend_from_slice(&e.e);
        line_of.push(i + 1);
    }
    let h = HyperGraph::from_flat(header.dims.clone(), coords).map_err(|err| match err {
        Error::Invalid { index, kind } => parse(line_of[index], kind.to_string()),
        other => other,
    })?;
    Ok((header, h))
}
