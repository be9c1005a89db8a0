//! The on-disk graph format: one JSON document per rooted (optionally
//! colored) graph. Absent map entries are `null`. Writing is canonical, so
//! write-then-read is the identity and equal objects serialize to equal
//! bytes.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Coloring, GeneratorSet, Rooted, SchreierGraph};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphDocument {
    pub generator_pairs: Vec<[usize; 2]>,
    pub n: usize,
    pub maps: Vec<Vec<Option<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colors: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphabet_size: Option<u32>,
    pub complete: bool,
}

pub fn to_document(x: &Rooted) -> GraphDocument {
    let g = x.graph();
    GraphDocument {
        generator_pairs: g.gens().pairs().iter().map(|&(a, b)| [a, b]).collect(),
        n: g.n_vertices(),
        maps: g.maps().to_vec(),
        root: Some(x.root()),
        colors: x.coloring().map(|c| c.colors().to_vec()),
        alphabet_size: x.coloring().map(Coloring::alphabet_size),
        complete: g.is_complete(),
    }
}

/// Rebuilds the rooted graph, rejecting structural problems as malformed
/// documents and invariant violations with the full violation list. A
/// missing root defaults to 0.
pub fn from_document(doc: &GraphDocument) -> Result<Rooted> {
    let pairs: Vec<(usize, usize)> = doc.generator_pairs.iter().map(|p| (p[0], p[1])).collect();
    let gens = GeneratorSet::from_pairs(&pairs)
        .map_err(|e| Error::MalformedDocument(format!("generator_pairs: {e}")))?;
    let graph = SchreierGraph::from_maps(gens, doc.n, doc.maps.clone(), doc.complete)
        .map_err(|e| Error::MalformedDocument(format!("maps: {e}")))?;
    let violations = graph.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidGraph(violations));
    }
    let root = doc.root.unwrap_or(0);
    let rooted = Rooted::new(graph, root)
        .map_err(|e| Error::MalformedDocument(format!("root: {e}")))?;
    match (&doc.colors, doc.alphabet_size) {
        (None, None) => Ok(rooted),
        (None, Some(_)) => Err(Error::MalformedDocument(
            "alphabet_size given without colors".into(),
        )),
        (Some(_), None) => Err(Error::MalformedDocument(
            "colors given without alphabet_size".into(),
        )),
        (Some(colors), Some(alphabet)) => {
            let coloring = Coloring::new(alphabet, colors.clone())
                .map_err(|e| Error::MalformedDocument(format!("colors: {e}")))?;
            rooted
                .with_coloring(coloring)
                .map_err(|e| Error::MalformedDocument(format!("colors: {e}")))
        }
    }
}

pub fn graph_to_bytes(x: &Rooted) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(&to_document(x)).expect("serialization is total");
    bytes.push(b'\n');
    bytes
}

pub fn graph_from_bytes(bytes: &[u8]) -> Result<Rooted> {
    let doc: GraphDocument = serde_json::from_slice(bytes)
        .map_err(|e| Error::MalformedDocument(e.to_string()))?;
    from_document(&doc)
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

pub fn write_graph(x: &Rooted, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, graph_to_bytes(x)).map_err(|e| io_err(path, e))
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<Rooted> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|e| io_err(path, e))?;
    graph_from_bytes(&bytes)
}
