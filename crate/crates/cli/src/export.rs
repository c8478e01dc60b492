use std::io::Write;

use anyhow::Result;
use cycle_prefix::oracle::Network;
use cycle_prefix::topology::out_arcs;
use cycle_prefix::{NetworkParams, Vertex};
use serde::Serialize;

use crate::Format;

#[derive(Serialize)]
struct ArcRow {
    src: String,
    dst: String,
    op: String,
    kind: &'static str,
}

#[derive(Serialize)]
struct DistanceRow {
    src: String,
    dst: String,
    d: Option<usize>,
}

/// Every arc, sources in rank order and each source's arcs in operation order.
pub fn write_arcs(net: &Network, format: Format, out: &mut impl Write) -> Result<u64> {
    let g = *net.params();
    let rows = net.vertices().iter().flat_map(|x| {
        out_arcs(x, &g).into_iter().map(move |a| ArcRow {
            src: g.format_vertex(&a.src),
            dst: g.format_vertex(&a.dst),
            op: a.op.to_string(),
            kind: a.op.kind(),
        })
    });
    match format {
        Format::Dot => {
            writeln!(out, "digraph cycle_prefix {{")?;
            writeln!(
                out,
                "  comment=\"delta={} dee={} r={}\";",
                g.delta(),
                g.dee(),
                g.r()
            )?;
            writeln!(out, "  label=\"{g}\";")?;
            let mut n = 0;
            for row in rows {
                writeln!(
                    out,
                    "  \"{}\" -> \"{}\" [label=\"{}\"];",
                    row.src, row.dst, row.op
                )?;
                n += 1;
            }
            writeln!(out, "}}")?;
            Ok(n)
        }
        Format::Jsonl => {
            let mut n = 0;
            for row in rows {
                serde_json::to_writer(&mut *out, &row)?;
                writeln!(out)?;
                n += 1;
            }
            Ok(n)
        }
        Format::Csv => write_csv(rows, out),
    }
}

/// Distances from each of `sources`, targets in rank order.
pub fn write_distances(
    net: &Network,
    sources: &[Vertex],
    format: Format,
    out: &mut impl Write,
) -> Result<u64> {
    let g: NetworkParams = *net.params();
    let indices = sources
        .iter()
        .map(|x| net.index_of(x))
        .collect::<cycle_prefix::Result<Vec<_>>>()?;
    let rows = indices.into_iter().flat_map(|s| {
        let src = g.format_vertex(&net.vertex(s));
        let dist = net.bfs(s);
        net.vertices()
            .iter()
            .zip(dist)
            .map(move |(y, d)| DistanceRow {
                src: src.clone(),
                dst: g.format_vertex(y),
                d: (d != u32::MAX).then_some(d as usize),
            })
    });
    match format {
        Format::Dot => anyhow::bail!("distance tables are exported as jsonl or csv"),
        Format::Jsonl => {
            let mut n = 0;
            for row in rows {
                serde_json::to_writer(&mut *out, &row)?;
                writeln!(out)?;
                n += 1;
            }
            Ok(n)
        }
        Format::Csv => write_csv(rows, out),
    }
}

fn write_csv<T: Serialize>(rows: impl Iterator<Item = T>, out: &mut impl Write) -> Result<u64> {
    let mut w = csv::Writer::from_writer(out);
    let mut n = 0;
    for row in rows {
        w.serialize(row)?;
        n += 1;
    }
    w.flush()?;
    Ok(n)
}
