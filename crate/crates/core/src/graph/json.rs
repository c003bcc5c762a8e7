use serde::{Deserialize, Serialize};

use super::{EdgeType, Graph};
use crate::error::{Error, Result};

/// Wire form of a graph: `{"n": .., "edges": [[u,v],..], "edge_types": [[u,v,"type_i"],..]}`.
///
/// Edges are written with `u < v`, sorted lexicographically, so a parse
/// followed by a write reproduces canonical input byte for byte.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_types: Option<Vec<(usize, usize, EdgeType)>>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        let edges = g.edges();
        let edge_types =
            g.is_labeled().then(|| edges.iter().map(|&(u, v)| (u, v, g.edge_type(u, v).unwrap())).collect());
        GraphJson { n: g.n(), edges: edges.into_iter().map(|(u, v)| [u, v]).collect(), edge_types }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Graph> {
        let pairs: Vec<(usize, usize)> = j.edges.iter().map(|&[u, v]| (u, v)).collect();
        let mut g = Graph::from_edges(j.n, &pairs)?;
        if let Some(types) = j.edge_types {
            let mut labeled = Graph::new(j.n);
            for (u, v, t) in types {
                if !g.has_edge(u, v) {
                    return Err(Error::Parse(format!("edge type given for non-edge {{{u},{v}}}")));
                }
                if labeled.has_edge(u, v) {
                    return Err(Error::Parse(format!("edge {{{u},{v}}} labeled twice")));
                }
                labeled.add_labeled_edge(u, v, t);
            }
            if labeled.edge_count() != g.edge_count() {
                return Err(Error::Parse("edge_types must label every edge".into()));
            }
            g = labeled;
        }
        Ok(g)
    }
}

impl Graph {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson::from(self)).expect("graph serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Graph> {
        let j: GraphJson = serde_json::from_str(s)?;
        Graph::try_from(j)
    }
}
