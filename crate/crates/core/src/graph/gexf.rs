//! GEXF 1.2 export (and the matching import used for round-trips).

use std::collections::HashMap;
use std::fmt::Write as _;

use quick_xml::escape::escape;
use quick_xml::events::{BytesStart, Event};
use quick_xml::Reader;

use super::{Graph, GraphBuilder};
use crate::error::{Error, Result};

/// Serializes `g` as an undirected, weighted GEXF 1.2 document.
///
/// Weights use the shortest decimal form that parses back to the same `f64`.
pub fn write_gexf(g: &Graph) -> String {
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str("<gexf xmlns=\"http://www.gexf.net/1.2draft\" version=\"1.2\">\n");
    out.push_str("  <graph mode=\"static\" defaultedgetype=\"undirected\">\n");
    out.push_str("    <nodes>\n");
    for (id, label) in g.labels().iter().enumerate() {
        let _ = writeln!(out, "      <node id=\"{id}\" label=\"{}\"/>", escape(label.as_str()));
    }
    out.push_str("    </nodes>\n");
    out.push_str("    <edges>\n");
    for (id, e) in g.edges().iter().enumerate() {
        let _ = writeln!(
            out,
            "      <edge id=\"{id}\" source=\"{}\" target=\"{}\" weight=\"{}\"/>",
            e.u, e.v, e.weight
        );
    }
    out.push_str("    </edges>\n");
    out.push_str("  </graph>\n");
    out.push_str("</gexf>\n");
    out
}

fn attributes(e: &BytesStart<'_>) -> Result<HashMap<String, String>> {
    let mut map = HashMap::new();
    for attr in e.attributes() {
        let attr = attr.map_err(|err| Error::Gexf(err.to_string()))?;
        let key = String::from_utf8_lossy(attr.key.as_ref()).into_owned();
        let value = attr
            .unescape_value()
            .map_err(|err| Error::Gexf(err.to_string()))?
            .into_owned();
        map.insert(key, value);
    }
    Ok(map)
}

/// Parses the node/edge subset of GEXF emitted by [`write_gexf`].
///
/// Node ids may be arbitrary strings; nodes are numbered in document order.
/// Edges without a `weight` attribute get weight 1.
pub fn read_gexf(text: &str) -> Result<Graph> {
    let mut reader = Reader::from_str(text);
    reader.config_mut().trim_text(true);

    let mut builder = GraphBuilder::new();
    let mut ids: HashMap<String, usize> = HashMap::new();
    loop {
        let event = reader.read_event().map_err(|err| Error::Gexf(err.to_string()))?;
        match event {
            Event::Start(ref e) | Event::Empty(ref e) => match e.name().as_ref() {
                b"node" => {
                    let attrs = attributes(e)?;
                    let id = attrs
                        .get("id")
                        .cloned()
                        .ok_or_else(|| Error::Gexf("node without id".into()))?;
                    if ids.contains_key(&id) {
                        return Err(Error::DuplicateNode(id));
                    }
                    let label = attrs.get("label").cloned().unwrap_or_else(|| id.clone());
                    let idx = builder.add_node(label);
                    ids.insert(id, idx);
                }
                b"edge" => {
                    let attrs = attributes(e)?;
                    let endpoint = |key: &str| -> Result<usize> {
                        let raw = attrs
                            .get(key)
                            .ok_or_else(|| Error::Gexf(format!("edge without {key}")))?;
                        ids.get(raw).copied().ok_or_else(|| Error::UnknownNode(raw.clone()))
                    };
                    let (u, v) = (endpoint("source")?, endpoint("target")?);
                    let weight = match attrs.get("weight") {
                        Some(raw) => raw.parse::<f64>().map_err(|_| Error::InvalidWeight(raw.clone()))?,
                        None => 1.0,
                    };
                    builder.add_edge(u, v, weight)?;
                }
                _ => {}
            },
            Event::Eof => break,
            _ => {}
        }
    }
    Ok(builder.build())
}
