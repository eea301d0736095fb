use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypercore::{EdgePartition, Hypergraph, VertexColoring};

/// A hypergraph with an optional edge partition and vertex coloring.
///
/// Text form:
///
/// ```text
/// # comments run to the end of the line
/// 3 5          # r n
/// 0 1 2        # one edge per line
/// 2 3 4
/// colors 2     # optional: one class per edge, in the order listed above
/// 1
/// 2
/// coloring 2   # optional: one color per vertex
/// 1
/// 1
/// 2
/// 2
/// 1
/// ```
///
/// Edges are normalized on read (vertices sorted, edges in lexicographic
/// order) and the partition follows its edges, so a file written by
/// [`HypergraphFile::to_text`] reads back unchanged.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergraphFile {
    pub hypergraph: Hypergraph,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<EdgePartition>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coloring: Option<VertexColoring>,
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| Error::input(format!("line {line}: expected a non-negative integer, got {tok:?}")))
}

impl HypergraphFile {
    pub fn new(hypergraph: Hypergraph) -> Self {
        HypergraphFile { hypergraph, partition: None, coloring: None }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines.next().ok_or_else(|| Error::input("empty file"))?;
        let head: Vec<&str> = header.split_whitespace().collect();
        if head.len() != 2 {
            return Err(Error::input(format!("line {hl}: header must be `r n`")));
        }
        let r = parse_usize(head[0], hl)?;
        let n = parse_usize(head[1], hl)?;
        let mut raw_edges: Vec<Vec<usize>> = Vec::new();
        let mut class_lines: Option<(u32, Vec<u32>)> = None;
        let mut color_lines: Option<Vec<u32>> = None;
        #[derive(PartialEq)]
        enum Block {
            Edges,
            Classes,
            Colors,
        }
        let mut block = Block::Edges;
        for (ln, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[0] {
                "colors" if toks.len() == 2 => {
                    if class_lines.is_some() {
                        return Err(Error::input(format!("line {ln}: second `colors` block")));
                    }
                    let t = parse_usize(toks[1], ln)? as u32;
                    class_lines = Some((t, Vec::new()));
                    block = Block::Classes;
                }
                "coloring" if toks.len() == 2 => {
                    if color_lines.is_some() {
                        return Err(Error::input(format!("line {ln}: second `coloring` block")));
                    }
                    parse_usize(toks[1], ln)?;
                    color_lines = Some(Vec::new());
                    block = Block::Colors;
                }
                _ => match block {
                    Block::Edges => {
                        raw_edges.push(toks.iter().map(|t| parse_usize(t, ln)).collect::<Result<_>>()?);
                    }
                    Block::Classes | Block::Colors => {
                        if toks.len() != 1 {
                            return Err(Error::input(format!("line {ln}: expected a single integer")));
                        }
                        let v = parse_usize(toks[0], ln)? as u32;
                        match block {
                            Block::Classes => class_lines.as_mut().expect("in block").1.push(v),
                            _ => color_lines.as_mut().expect("in block").push(v),
                        }
                    }
                },
            }
        }
        for e in &mut raw_edges {
            e.sort_unstable();
        }
        let hypergraph = Hypergraph::new(n, r, raw_edges.clone())?;
        let partition = match class_lines {
            None => None,
            Some((t, classes)) => {
                if classes.len() != raw_edges.len() {
                    return Err(Error::input(format!(
                        "`colors` block has {} lines for {} edges",
                        classes.len(),
                        raw_edges.len()
                    )));
                }
                let mut canonical = vec![0u32; classes.len()];
                for (e, c) in raw_edges.iter().zip(classes) {
                    canonical[hypergraph.edge_index(e).expect("edge was just inserted")] = c;
                }
                Some(EdgePartition::new(canonical, t)?)
            }
        };
        let coloring = match color_lines {
            None => None,
            Some(colors) => {
                if colors.len() != n {
                    return Err(Error::input(format!("`coloring` block has {} lines for {n} vertices", colors.len())));
                }
                Some(VertexColoring::new(colors)?)
            }
        };
        Ok(HypergraphFile { hypergraph, partition, coloring })
    }

    /// Canonical text form.
    pub fn to_text(&self) -> String {
        let h = &self.hypergraph;
        let mut out = format!("{} {}\n", h.r(), h.n());
        for e in h.edges() {
            let line: Vec<String> = e.iter().map(usize::to_string).collect();
            writeln!(out, "{}", line.join(" ")).expect("writing to a String");
        }
        if let Some(p) = &self.partition {
            writeln!(out, "colors {}", p.t()).expect("writing to a String");
            for c in p.class_of() {
                writeln!(out, "{c}").expect("writing to a String");
            }
        }
        if let Some(c) = &self.coloring {
            writeln!(out, "coloring {}", c.num_colors()).expect("writing to a String");
            for v in c.colors() {
                writeln!(out, "{v}").expect("writing to a String");
            }
        }
        out
    }
}
