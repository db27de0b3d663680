//! Gephi-style node and edge CSV files.
//!
//! Node files carry an `Id,Label` header, edge files `Source,Target,Weight`.
//! Columns are located by name (case-insensitive), so extra Gephi columns
//! such as `Type` are ignored. A missing `Weight` column means unit weights.

use std::collections::HashMap;
use std::path::Path;

use super::{Graph, GraphBuilder};
use crate::error::{Error, Result};

fn column(headers: &csv::StringRecord, name: &str) -> Option<usize> {
    headers
        .iter()
        .position(|h| h.trim().trim_start_matches('\u{feff}').eq_ignore_ascii_case(name))
}

fn reader(text: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes())
}

struct EdgeColumns {
    source: usize,
    target: usize,
    weight: Option<usize>,
}

fn edge_columns(headers: &csv::StringRecord) -> Result<EdgeColumns> {
    let source = column(headers, "Source").ok_or(Error::MissingHeader {
        file: "edge CSV",
        column: "Source",
    })?;
    let target = column(headers, "Target").ok_or(Error::MissingHeader {
        file: "edge CSV",
        column: "Target",
    })?;
    Ok(EdgeColumns {
        source,
        target,
        weight: column(headers, "Weight"),
    })
}

fn parse_weight(record: &csv::StringRecord, col: Option<usize>) -> Result<f64> {
    let Some(col) = col else { return Ok(1.0) };
    let raw = record.get(col).unwrap_or("");
    match raw.parse::<f64>() {
        Ok(w) if w.is_finite() && w > 0.0 => Ok(w),
        _ => Err(Error::InvalidWeight(raw.to_string())),
    }
}

fn add_row(
    builder: &mut GraphBuilder,
    ids: &HashMap<String, usize>,
    record: &csv::StringRecord,
    cols: &EdgeColumns,
) -> Result<()> {
    let source = record.get(cols.source).unwrap_or("");
    let target = record.get(cols.target).unwrap_or("");
    let u = *ids.get(source).ok_or_else(|| Error::UnknownNode(source.to_string()))?;
    let v = *ids.get(target).ok_or_else(|| Error::UnknownNode(target.to_string()))?;
    if u == v {
        return Err(Error::SelfLoop(source.to_string()));
    }
    let weight = parse_weight(record, cols.weight)?;
    builder.add_edge(u, v, weight)
}

/// Parses a node CSV and an edge CSV into a graph.
///
/// Nodes are numbered in declaration order. Duplicate edge rows (in either
/// orientation) are merged with summed weights.
pub fn load_edge_csv(node_csv: &str, edge_csv: &str) -> Result<Graph> {
    let mut nodes = reader(node_csv);
    let headers = nodes.headers()?.clone();
    let id_col = column(&headers, "Id").ok_or(Error::MissingHeader {
        file: "node CSV",
        column: "Id",
    })?;
    let label_col = column(&headers, "Label").ok_or(Error::MissingHeader {
        file: "node CSV",
        column: "Label",
    })?;

    let mut builder = GraphBuilder::new();
    let mut ids = HashMap::new();
    for record in nodes.records() {
        let record = record?;
        let id = record.get(id_col).unwrap_or("").to_string();
        let label = record.get(label_col).unwrap_or("").to_string();
        if ids.contains_key(&id) {
            return Err(Error::DuplicateNode(id));
        }
        let idx = builder.add_node(label);
        ids.insert(id, idx);
    }

    let mut edges = reader(edge_csv);
    let cols = edge_columns(&edges.headers()?.clone())?;
    for record in edges.records() {
        add_row(&mut builder, &ids, &record?, &cols)?;
    }
    Ok(builder.build())
}

/// Parses an edge CSV on its own; nodes are created in order of first
/// appearance and labelled with their ids. Isolated nodes cannot be
/// represented this way.
pub fn load_edge_list(edge_csv: &str) -> Result<Graph> {
    let mut edges = reader(edge_csv);
    let cols = edge_columns(&edges.headers()?.clone())?;
    let mut builder = GraphBuilder::new();
    let mut ids: HashMap<String, usize> = HashMap::new();
    for record in edges.records() {
        let record = record?;
        for col in [cols.source, cols.target] {
            let id = record.get(col).unwrap_or("");
            if !ids.contains_key(id) {
                let idx = builder.add_node(id);
                ids.insert(id.to_string(), idx);
            }
        }
        add_row(&mut builder, &ids, &record, &cols)?;
    }
    Ok(builder.build())
}

/// Reads an edge CSV from disk, optionally paired with its node CSV.
pub fn read_edge_csv_file(edges: &Path, nodes: Option<&Path>) -> Result<Graph> {
    let edge_text = std::fs::read_to_string(edges)?;
    match nodes {
        Some(path) => load_edge_csv(&std::fs::read_to_string(path)?, &edge_text),
        None => load_edge_list(&edge_text),
    }
}

fn into_string(writer: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = writer.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| Error::InvalidData(e.to_string()))
}

/// `Id,Label` rows with dense ids.
pub fn write_node_csv(g: &Graph) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["Id", "Label"])?;
    for (id, label) in g.labels().iter().enumerate() {
        w.write_record([id.to_string().as_str(), label.as_str()])?;
    }
    into_string(w)
}

/// `Source,Target,Weight` rows, one per undirected edge.
pub fn write_edge_csv(g: &Graph) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["Source", "Target", "Weight"])?;
    for e in g.edges() {
        w.write_record([e.u.to_string(), e.v.to_string(), e.weight.to_string()])?;
    }
    into_string(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    const NODES: &str = "Id,Label\n0,A\n1,B\n";

    #[test]
    fn single_edge() {
        let g = load_edge_csv(NODES, "Source,Target,Weight\n0,1,2.0\n").unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.weight(0, 1), Some(2.0));
        assert_eq!(g.label(1), "B");
    }

    #[test]
    fn reversed_duplicates_merge() {
        let g = load_edge_csv(NODES, "Source,Target,Weight\n0,1,1.0\n1,0,2.0\n").unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.weight(0, 1), Some(3.0));
    }

    #[test]
    fn self_loop_rejected() {
        let err = load_edge_csv(NODES, "Source,Target,Weight\n0,0,1.0\n").unwrap_err();
        assert!(matches!(err, Error::SelfLoop(_)));
    }

    #[test]
    fn error_paths() {
        assert!(matches!(
            load_edge_csv(NODES, "Source,Target,Weight\n0,7,1.0\n"),
            Err(Error::UnknownNode(_))
        ));
        assert!(matches!(
            load_edge_csv(NODES, "Source,Target,Weight\n0,1,abc\n"),
            Err(Error::InvalidWeight(_))
        ));
        assert!(matches!(
            load_edge_csv(NODES, "Source,Target,Weight\n0,1,-2\n"),
            Err(Error::InvalidWeight(_))
        ));
        assert!(matches!(
            load_edge_csv("Name\nA\n", "Source,Target,Weight\n"),
            Err(Error::MissingHeader { column: "Id", .. })
        ));
        assert!(matches!(
            load_edge_csv(NODES, "From,To\n0,1\n"),
            Err(Error::MissingHeader { column: "Source", .. })
        ));
        assert!(matches!(
            load_edge_csv("Id,Label\n0,A\n0,B\n", "Source,Target\n"),
            Err(Error::DuplicateNode(_))
        ));
    }

    #[test]
    fn quoted_labels_and_extra_columns() {
        let nodes = "Id,Label\n0,\"Vale, Mira\"\n1,Tobin\n";
        let edges = "Source,Target,Type,Weight\n0,1,Undirected,4\n";
        let g = load_edge_csv(nodes, edges).unwrap();
        assert_eq!(g.label(0), "Vale, Mira");
        assert_eq!(g.weight(0, 1), Some(4.0));
    }

    #[test]
    fn written_csvs_reparse() {
        let mut b = GraphBuilder::new();
        for name in ["Mira", "Tobin, Reed", "Oskar", "Loner"] {
            b.add_node(name);
        }
        b.add_edge(0, 1, 3.5).unwrap();
        b.add_edge(1, 2, 0.125).unwrap();
        let g = b.build();
        let back = load_edge_csv(&write_node_csv(&g).unwrap(), &write_edge_csv(&g).unwrap()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn edge_list_infers_nodes() {
        let g = load_edge_list("Source,Target\na,b\nb,c\n").unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.labels(), ["a", "b", "c"]);
        assert_eq!(g.weight(1, 2), Some(1.0));
    }
}
