//! Line-delimited JSON graph file.
//!
//! Line 1 is a header holding the format name, version, promotion threshold
//! and authority weights. Then one record per line: nodes, edges, svo
//! records, assertions, each group sorted by key. Every record is an object
//! tagged by a `record` field whose remaining fields follow the struct
//! declaration order.

use std::collections::BTreeMap;
use std::io::BufRead;

use serde::{Deserialize, Serialize};

use super::{CharacteristicAssertion, Edge, GraphError, KnowledgeGraph, Node, SvoRecord};
use crate::ingest::{AuthorityConfig, OpinionKind};

pub const FORMAT_NAME: &str = "lexgraph";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Header {
    format: String,
    version: u32,
    promotion_threshold: f64,
    source_weights: BTreeMap<String, u32>,
    opinion_weights: BTreeMap<OpinionKind, u32>,
}

#[derive(Serialize)]
#[serde(tag = "record", rename_all = "snake_case")]
enum RecordRef<'a> {
    Node(&'a Node),
    Edge(&'a Edge),
    Svo(&'a SvoRecord),
    Assertion(&'a CharacteristicAssertion),
}

#[derive(Deserialize)]
#[serde(tag = "record", rename_all = "snake_case")]
enum Record {
    Node(Node),
    Edge(Edge),
    Svo(SvoRecord),
    Assertion(CharacteristicAssertion),
}

fn line(record: &impl Serialize) -> String {
    let mut s = serde_json::to_string(record).expect("graph records serialize");
    s.push('\n');
    s
}

impl KnowledgeGraph {
    pub fn serialize(&self) -> String {
        let header = Header {
            format: FORMAT_NAME.to_string(),
            version: FORMAT_VERSION,
            promotion_threshold: self.promotion_threshold,
            source_weights: self.authority.source_weights.clone(),
            opinion_weights: self.authority.opinion_weights.clone(),
        };
        let mut out = line(&header);
        out.extend(self.nodes.values().map(|n| line(&RecordRef::Node(n))));
        out.extend(self.edges.values().map(|e| line(&RecordRef::Edge(e))));
        out.extend(self.svos.values().map(|s| line(&RecordRef::Svo(s))));
        out.extend(self.assertions.values().map(|a| line(&RecordRef::Assertion(a))));
        out
    }

    pub fn deserialize<R: BufRead>(input: R) -> Result<Self, GraphError> {
        let mut lines = input.lines().enumerate().map(|(i, l)| (i + 1, l));
        let malformed = |line: usize, reason: String| GraphError::MalformedRecord { line, reason };

        let header: Header = match lines.next() {
            Some((n, l)) => serde_json::from_str(&l?).map_err(|e| malformed(n, format!("header: {e}")))?,
            None => return Err(malformed(1, "missing header".into())),
        };
        if header.format != FORMAT_NAME || header.version != FORMAT_VERSION {
            return Err(malformed(1, format!("unsupported format {} v{}", header.format, header.version)));
        }
        let authority =
            AuthorityConfig { source_weights: header.source_weights, opinion_weights: header.opinion_weights };
        let mut g = KnowledgeGraph::new(authority, header.promotion_threshold);

        let mut nodes = Vec::new();
        let mut edges = Vec::new();
        let mut svos = Vec::new();
        let mut assertions = Vec::new();
        for (n, l) in lines {
            let l = l?;
            if l.trim().is_empty() {
                continue;
            }
            match serde_json::from_str::<Record>(&l).map_err(|e| malformed(n, e.to_string()))? {
                Record::Node(x) => nodes.push((n, x)),
                Record::Edge(x) => edges.push((n, x)),
                Record::Svo(x) => svos.push((n, x)),
                Record::Assertion(x) => assertions.push((n, x)),
            }
        }

        for (n, node) in nodes {
            if g.nodes.insert(node.id.clone(), node).is_some() {
                return Err(malformed(n, "duplicate node".into()));
            }
        }
        let dangling = |g: &KnowledgeGraph, line: usize, ids: &[&super::NodeId]| {
            match ids.iter().find(|id| !g.nodes.contains_key(id)) {
                Some(id) => Err(GraphError::DanglingReference { line, missing: format!("node {id}") }),
                None => Ok(()),
            }
        };
        for (n, edge) in edges {
            dangling(&g, n, &[&edge.from, &edge.to])?;
            if edge.id != edge.canonical_id() {
                return Err(malformed(n, format!("edge id `{}` is not canonical", edge.id)));
            }
            g.insert_edge(edge).map_err(|e| malformed(n, e.to_string()))?;
        }
        for (n, svo) in svos {
            let ids: Vec<&super::NodeId> = svo.subject.iter().chain([&svo.verb]).chain(svo.object.iter()).collect();
            dangling(&g, n, &ids)?;
            g.svos.insert(svo.svo_id.clone(), svo);
        }
        for (n, a) in assertions {
            dangling(&g, n, &[&a.class_or_entity, &a.characteristic])?;
            g.assertions.insert((a.class_or_entity.clone(), a.characteristic.clone(), a.negated), a);
        }
        Ok(g)
    }

    pub fn deserialize_str(input: &str) -> Result<Self, GraphError> {
        Self::deserialize(input.as_bytes())
    }
}
