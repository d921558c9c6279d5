//! Embedding similarity for attachment decisions, and seeded random walks
//! with co-occurrence counts.
//!
//! Walk generator: every walk gets its own `ChaCha8Rng`, seeded with
//! `seed_from_u64(k)` where `k` is the 64-bit FNV-1a hash of
//! `seed (8 bytes LE) ‖ start node id (UTF-8) ‖ 0xFF ‖ walk index (8 bytes LE)`.
//! A step among `n` outgoing edges (sorted by edge id) takes index
//! `(next_u64() * n) >> 64`.

use std::collections::{BTreeMap, BTreeSet};
use std::io::BufRead;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::kgraph::{Edge, EdgeKind, KnowledgeGraph, NodeId};
use crate::query::{QueryError, Selector};

#[derive(Debug, Error)]
pub enum AnalyticsError {
    #[error("vector has zero norm")]
    ZeroVector,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("embedding line {line}: {reason}")]
    BadEmbedding { line: usize, reason: String },
    #[error(transparent)]
    Selector(#[from] QueryError),
    #[error("invalid walk config: {0}")]
    InvalidWalkConfig(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub fn cosine_similarity(a: &[f64], b: &[f64]) -> Result<f64, AnalyticsError> {
    if a.len() != b.len() {
        return Err(AnalyticsError::DimensionMismatch(a.len(), b.len()));
    }
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        return Err(AnalyticsError::ZeroVector);
    }
    Ok((dot / (na * nb)).clamp(-1.0, 1.0))
}

/// Lemma vectors of one shared dimension. Text format: a `dim N` header,
/// then `lemma v1 ... vN` per line. Blank lines and `#` comments are skipped.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingTable {
    dimension: usize,
    vectors: BTreeMap<String, Vec<f64>>,
}

impl EmbeddingTable {
    pub fn new(dimension: usize) -> Self {
        Self { dimension, vectors: BTreeMap::new() }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn get(&self, lemma: &str) -> Option<&[f64]> {
        self.vectors.get(lemma).map(Vec::as_slice)
    }

    pub fn insert(&mut self, lemma: &str, vector: Vec<f64>) -> Result<(), AnalyticsError> {
        if vector.len() != self.dimension {
            return Err(AnalyticsError::DimensionMismatch(self.dimension, vector.len()));
        }
        if vector.iter().any(|v| !v.is_finite()) {
            return Err(AnalyticsError::BadEmbedding { line: 0, reason: format!("non-finite component for `{lemma}`") });
        }
        self.vectors.insert(lemma.to_lowercase(), vector);
        Ok(())
    }

    /// Same table with every vector multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        let vectors = self.vectors.iter().map(|(k, v)| (k.clone(), v.iter().map(|x| x * factor).collect())).collect();
        Self { dimension: self.dimension, vectors }
    }

    pub fn parse<R: BufRead>(input: R) -> Result<Self, AnalyticsError> {
        let mut table: Option<Self> = None;
        for (i, line) in input.lines().enumerate() {
            let line = line?;
            let n = i + 1;
            let bad = |reason: String| AnalyticsError::BadEmbedding { line: n, reason };
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split_whitespace();
            let first = fields.next().expect("non-empty line");
            let Some(t) = table.as_mut() else {
                let dim = match (first, fields.next(), fields.next()) {
                    ("dim", Some(d), None) => d.parse::<usize>().ok().filter(|&d| d > 0),
                    _ => None,
                }
                .ok_or_else(|| bad("expected header `dim N`".into()))?;
                table = Some(Self::new(dim));
                continue;
            };
            let values: Vec<f64> = fields
                .map(|f| f.parse::<f64>().map_err(|_| bad(format!("bad number `{f}`"))))
                .collect::<Result<_, _>>()?;
            if values.len() != t.dimension {
                return Err(bad(format!("expected {} components, got {}", t.dimension, values.len())));
            }
            t.insert(first, values).map_err(|e| bad(e.to_string()))?;
        }
        table.ok_or(AnalyticsError::BadEmbedding { line: 1, reason: "missing header `dim N`".into() })
    }

    pub fn parse_str(input: &str) -> Result<Self, AnalyticsError> {
        Self::parse(input.as_bytes())
    }

    pub fn similarity(&self, a: &str, b: &str) -> Option<f64> {
        cosine_similarity(self.get(a)?, self.get(b)?).ok()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Attachment {
    VerbAttachment,
    NounAttachment,
    Unknown,
}

/// Decides whether `candidate` (the head of a prepositional phrase such as
/// "with a gun") qualifies the verb or the object noun, by comparing the
/// two cosine similarities against `margin`.
pub fn attachment_score(
    verb: &str,
    object_head: &str,
    candidate: &str,
    table: &EmbeddingTable,
    margin: f64,
) -> Attachment {
    let (Some(v), Some(n)) = (table.similarity(verb, candidate), table.similarity(object_head, candidate)) else {
        return Attachment::Unknown;
    };
    if v - n >= margin {
        Attachment::VerbAttachment
    } else if n - v >= margin {
        Attachment::NounAttachment
    } else {
        Attachment::Unknown
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkConfig {
    pub seed: u64,
    /// Maximum number of steps per walk.
    pub walk_length: usize,
    pub walks_per_start: usize,
    pub start_nodes: Vec<Selector>,
    /// Edge kinds a walk may follow (outgoing direction only).
    pub edge_kinds: BTreeSet<EdgeKind>,
}

impl WalkConfig {
    pub fn new(seed: u64, walk_length: usize, walks_per_start: usize, start_nodes: Vec<Selector>) -> Self {
        Self { seed, walk_length, walks_per_start, start_nodes, edge_kinds: EdgeKind::ALL.into_iter().collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    pub start: NodeId,
    pub index: usize,
    pub nodes: Vec<NodeId>,
    /// Edge taken at each step; `edges.len() + 1 == nodes.len()`.
    pub edges: Vec<String>,
}

impl Walk {
    /// Node ids separated by tabs.
    pub fn to_line(&self) -> String {
        let ids: Vec<&str> = self.nodes.iter().map(NodeId::as_str).collect();
        ids.join("\t")
    }
}

fn fnv1a64(parts: &[&[u8]]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for part in parts {
        for &b in *part {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    h
}

/// Seed of the generator for one walk.
pub fn walk_seed(seed: u64, start: &NodeId, walk_index: usize) -> u64 {
    fnv1a64(&[&seed.to_le_bytes(), start.as_str().as_bytes(), &[0xff], &(walk_index as u64).to_le_bytes()])
}

/// `walks_per_start` walks from every node matched by the start selectors
/// (each node once, in id order). A walk stops early at a node without
/// eligible outgoing edges.
pub fn random_walks(graph: &KnowledgeGraph, config: &WalkConfig) -> Result<Vec<Walk>, AnalyticsError> {
    if config.walk_length == 0 || config.walks_per_start == 0 {
        return Err(AnalyticsError::InvalidWalkConfig("walk_length and walks_per_start must be >= 1".into()));
    }
    let mut starts = BTreeSet::new();
    for sel in &config.start_nodes {
        starts.extend(sel.resolve(graph)?);
    }
    let mut outgoing: BTreeMap<&NodeId, Vec<&Edge>> = BTreeMap::new();
    for e in graph.edges().filter(|e| config.edge_kinds.contains(&e.kind)) {
        outgoing.entry(&e.from).or_default().push(e);
    }

    let mut walks = Vec::new();
    for start in &starts {
        for index in 0..config.walks_per_start {
            let mut rng = ChaCha8Rng::seed_from_u64(walk_seed(config.seed, start, index));
            let mut nodes = vec![start.clone()];
            let mut edges = Vec::new();
            for _ in 0..config.walk_length {
                let here = nodes.last().expect("walk has a start");
                let Some(out) = outgoing.get(here).filter(|o| !o.is_empty()) else { break };
                let pick = ((u128::from(rng.next_u64()) * out.len() as u128) >> 64) as usize;
                let e = out[pick];
                edges.push(e.id.clone());
                nodes.push(e.to.clone());
            }
            walks.push(Walk { start: start.clone(), index, nodes, edges });
        }
    }
    Ok(walks)
}

/// Counts, over all walks, pairs of positions holding two different nodes.
/// Keys are ordered `(smaller id, larger id)`.
pub fn cooccurrence_stats(walks: &[Vec<NodeId>]) -> BTreeMap<(NodeId, NodeId), u64> {
    let mut counts = BTreeMap::new();
    for walk in walks {
        for (i, a) in walk.iter().enumerate() {
            for b in &walk[i + 1..] {
                if a == b {
                    continue;
                }
                let key = if a < b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
                *counts.entry(key).or_insert(0) += 1;
            }
        }
    }
    counts
}
