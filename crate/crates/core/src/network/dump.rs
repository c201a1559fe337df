//! Plain-text edge-list format.
//!
//! ```text
//! <n> <alpha> <seed>
//! school <member> <member> ...      (optional; default: endpoints of school edges)
//! masks <type> <type> ...           (optional; one 1-based mask type per node)
//! <u> <v> c
//! <u> <v> s
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Any other line whose
//! first token is a word is kept as a keyed entry for callers that layer more
//! data on top (oracle fixtures do).

use std::fmt::Write as _;

use super::{Layer, MultilayerGraph};
use crate::error::Error;

#[derive(Debug, Clone, PartialEq)]
pub struct GraphDump {
    pub graph: MultilayerGraph,
    /// 0-based mask types, if a `masks` line was present.
    pub mask_types: Option<Vec<usize>>,
    pub extra: Vec<(String, Vec<String>)>,
}

pub fn write_edge_list(graph: &MultilayerGraph, mask_types: Option<&[usize]>) -> String {
    let mut out = String::new();
    writeln!(out, "{} {} {}", graph.n(), graph.alpha(), graph.seed()).unwrap();
    out.push_str("school");
    for (i, member) in graph.school_members().iter().enumerate() {
        if *member {
            write!(out, " {i}").unwrap();
        }
    }
    out.push('\n');
    if let Some(types) = mask_types {
        out.push_str("masks");
        for t in types {
            write!(out, " {}", t + 1).unwrap();
        }
        out.push('\n');
    }
    for layer in [Layer::Community, Layer::School] {
        for (u, v) in graph.edges(layer) {
            writeln!(out, "{u} {v} {}", layer.tag()).unwrap();
        }
    }
    out
}

fn parse_err(line_no: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("edge list line {}: {msg}", line_no + 1))
}

pub fn read_edge_list(text: &str) -> Result<GraphDump, Error> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or_else(|| Error::Parse("empty edge list".into()))?;
    let h: Vec<&str> = header.split_whitespace().collect();
    if h.len() != 3 {
        return Err(parse_err(hline, "header must be `n alpha seed`"));
    }
    let n: usize = h[0].parse().map_err(|e| parse_err(hline, e))?;
    let alpha: f64 = h[1].parse().map_err(|e| parse_err(hline, e))?;
    let seed: u64 = h[2].parse().map_err(|e| parse_err(hline, e))?;

    let mut edges_c = Vec::new();
    let mut edges_s = Vec::new();
    let mut members: Option<Vec<bool>> = None;
    let mut mask_types = None;
    let mut extra = Vec::new();

    for (no, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let first = tokens[0];
        if first.chars().next().is_some_and(|c| c.is_ascii_digit()) {
            if tokens.len() != 3 {
                return Err(parse_err(no, "edge lines are `u v c|s`"));
            }
            let u: u32 = tokens[0].parse().map_err(|e| parse_err(no, e))?;
            let v: u32 = tokens[1].parse().map_err(|e| parse_err(no, e))?;
            match tokens[2] {
                "c" => edges_c.push((u, v)),
                "s" => edges_s.push((u, v)),
                other => return Err(parse_err(no, format!("unknown layer tag `{other}`"))),
            }
            continue;
        }
        match first {
            "school" => {
                let mut m = vec![false; n];
                for t in &tokens[1..] {
                    let i: usize = t.parse().map_err(|e| parse_err(no, e))?;
                    *m.get_mut(i).ok_or_else(|| parse_err(no, format!("member {i} out of range")))? = true;
                }
                members = Some(m);
            }
            "masks" => {
                let types = tokens[1..]
                    .iter()
                    .map(|t| match t.parse::<usize>() {
                        Ok(v) if v >= 1 => Ok(v - 1),
                        _ => Err(parse_err(no, format!("mask type `{t}` must be an integer >= 1"))),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                if types.len() != n {
                    return Err(parse_err(no, format!("{} mask types for {n} nodes", types.len())));
                }
                mask_types = Some(types);
            }
            key => extra.push((key.to_string(), tokens[1..].iter().map(|s| s.to_string()).collect())),
        }
    }

    let members = members.unwrap_or_else(|| {
        let mut m = vec![false; n];
        for &(u, v) in &edges_s {
            for x in [u, v] {
                if let Some(slot) = m.get_mut(x as usize) {
                    *slot = true;
                }
            }
        }
        m
    });
    let graph = MultilayerGraph::new(n, alpha, seed, edges_c, edges_s, members)
        .map_err(|e| Error::Parse(e.to_string()))?;
    Ok(GraphDump {
        graph,
        mask_types,
        extra,
    })
}
