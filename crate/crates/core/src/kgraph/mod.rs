//! The knowledge graph.
//!
//! Nodes are keyed by `(lemma,pos)` so that every mention of "gun" lands on
//! the same node. Edges carry the metadata of the statement they came from,
//! including its authority (`source_weight * opinion_weight`). All maps are
//! ordered, which makes iteration and serialization canonical regardless of
//! insertion order.

mod contradictions;
pub mod cypher;
mod hierarchy;
mod serial;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ingest::{AuthorityConfig, IngestError, OpinionKind, Provenance};
use crate::svo::{ClauseKind, ClauseLink, CopulaAssertion, CopulaRelation, NounPhrase, SvoTriplet, TriState};

pub use hierarchy::Origin;

pub const DEFAULT_PROMOTION_THRESHOLD: f64 = 0.75;

/// Authority given to edges asserted through the API rather than from text.
pub const MANUAL_AUTHORITY: u32 = 1;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("unknown source level `{0}`")]
    UnknownSourceLevel(String),
    #[error("unknown node {0}")]
    UnknownNode(NodeId),
    #[error("IS_A edge {child} -> {parent} would form a cycle")]
    CycleWouldForm { child: NodeId, parent: NodeId },
    #[error("class {0} has no direct children")]
    NoChildren(NodeId),
    #[error("{a} and {b} are not modifiers of a common quality class")]
    NotSameQualityClass { a: NodeId, b: NodeId },
    #[error("svo {0} is not the condition of another clause")]
    NotConditional(String),
    #[error("line {line}: malformed record: {reason}")]
    MalformedRecord { line: usize, reason: String },
    #[error("line {line}: record references missing {missing}")]
    DanglingReference { line: usize, missing: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<IngestError> for GraphError {
    fn from(e: IngestError) -> Self {
        match e {
            IngestError::UnknownSourceLevel(s) => GraphError::UnknownSourceLevel(s),
            other => GraphError::MalformedRecord { line: 0, reason: other.to_string() },
        }
    }
}

/// Coarse part of speech used in node identity, so that "record" the noun
/// and "record" the verb stay distinct.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PosKind {
    Noun,
    Verb,
    Mod,
    Quality,
}

impl PosKind {
    pub fn from_upos(upos: &str) -> Self {
        match upos {
            "VERB" | "AUX" => Self::Verb,
            "ADJ" | "ADV" => Self::Mod,
            _ => Self::Noun,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Noun => "noun",
            Self::Verb => "verb",
            Self::Mod => "mod",
            Self::Quality => "quality",
        }
    }

    /// Kind given to a node created from text with this part of speech.
    pub fn default_kind(self) -> NodeKind {
        match self {
            Self::Noun => NodeKind::Entity,
            Self::Verb => NodeKind::Method,
            Self::Mod => NodeKind::Modifier,
            Self::Quality => NodeKind::QualityClass,
        }
    }
}

impl FromStr for PosKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "noun" => Ok(Self::Noun),
            "verb" => Ok(Self::Verb),
            "mod" => Ok(Self::Mod),
            "quality" => Ok(Self::Quality),
            other => Err(format!("unknown pos kind `{other}`")),
        }
    }
}

/// Canonical node identifier, `(lemma,pos)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(String);

impl NodeId {
    pub fn new(lemma: &str, pos: PosKind) -> Self {
        Self(format!("({},{})", lemma.to_lowercase(), pos.as_str()))
    }

    pub fn noun(lemma: &str) -> Self {
        Self::new(lemma, PosKind::Noun)
    }

    pub fn verb(lemma: &str) -> Self {
        Self::new(lemma, PosKind::Verb)
    }

    pub fn modifier(lemma: &str) -> Self {
        Self::new(lemma, PosKind::Mod)
    }

    /// Parses the `(lemma,pos)` form.
    pub fn parse(s: &str) -> Option<Self> {
        let inner = s.strip_prefix('(')?.strip_suffix(')')?;
        let (lemma, pos) = inner.rsplit_once(',')?;
        let pos: PosKind = pos.parse().ok()?;
        (!lemma.is_empty()).then(|| Self::new(lemma, pos))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn lemma(&self) -> &str {
        let inner = &self.0[1..self.0.len() - 1];
        inner.rsplit_once(',').map_or(inner, |(l, _)| l)
    }

    pub fn pos(&self) -> PosKind {
        let inner = &self.0[1..self.0.len() - 1];
        inner.rsplit_once(',').and_then(|(_, p)| p.parse().ok()).unwrap_or(PosKind::Noun)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    Entity,
    Class,
    Method,
    Modifier,
    QualityClass,
}

impl NodeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Entity => "entity",
            Self::Class => "class",
            Self::Method => "method",
            Self::Modifier => "modifier",
            Self::QualityClass => "quality_class",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    pub id: NodeId,
    pub kind: NodeKind,
    pub lemma: String,
    #[serde(default)]
    pub attributes: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EdgeKind {
    SubjectOf,
    ObjectOf,
    PrepObject,
    IsA,
    HasCharacteristic,
    HasModifier,
    ConditionOf,
    Invokes,
    Coordinate,
    Contradicts,
    IsNot,
}

impl EdgeKind {
    pub const ALL: [EdgeKind; 11] = [
        Self::SubjectOf,
        Self::ObjectOf,
        Self::PrepObject,
        Self::IsA,
        Self::HasCharacteristic,
        Self::HasModifier,
        Self::ConditionOf,
        Self::Invokes,
        Self::Coordinate,
        Self::Contradicts,
        Self::IsNot,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::SubjectOf => "SUBJECT_OF",
            Self::ObjectOf => "OBJECT_OF",
            Self::PrepObject => "PREP_OBJECT",
            Self::IsA => "IS_A",
            Self::HasCharacteristic => "HAS_CHARACTERISTIC",
            Self::HasModifier => "HAS_MODIFIER",
            Self::ConditionOf => "CONDITION_OF",
            Self::Invokes => "INVOKES",
            Self::Coordinate => "COORDINATE",
            Self::Contradicts => "CONTRADICTS",
            Self::IsNot => "IS_NOT",
        }
    }

    /// Edges that carry one role of an SVO statement.
    pub fn is_svo_role(self) -> bool {
        matches!(self, Self::SubjectOf | Self::ObjectOf | Self::PrepObject)
    }
}

impl fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EdgeKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let upper = s.trim().to_ascii_uppercase().replace('-', "_");
        Self::ALL
            .into_iter()
            .find(|k| k.as_str() == upper || (upper == "IS" && *k == Self::HasCharacteristic))
            .ok_or_else(|| format!("unknown edge kind `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: String,
    pub kind: EdgeKind,
    pub from: NodeId,
    pub to: NodeId,
    /// The statement this edge belongs to (the child clause for clause edges,
    /// the affirmative side for CONTRADICTS).
    pub svo_id: Option<String>,
    /// The other statement for clause edges (parent) and CONTRADICTS (negated side).
    pub linked_svo: Option<String>,
    /// Preposition, clause trigger or IS_NOT relation name.
    pub label: Option<String>,
    pub authority: u32,
    pub opinion_kind: Option<OpinionKind>,
    pub negated: bool,
    pub deontic_possible: TriState,
    pub deontic_necessary: TriState,
    pub temporal_relative: Option<usize>,
    pub temporal_absolute: Option<String>,
    /// Modifier lemmas of the phrase at the `from` end (role edges) or the
    /// `to` end (HAS_CHARACTERISTIC).
    pub modifiers: Vec<String>,
}

impl Edge {
    /// An edge with neutral payload; `id` is derived from the other fields.
    pub fn new(kind: EdgeKind, from: NodeId, to: NodeId) -> Self {
        let mut e = Self {
            id: String::new(),
            kind,
            from,
            to,
            svo_id: None,
            linked_svo: None,
            label: None,
            authority: MANUAL_AUTHORITY,
            opinion_kind: None,
            negated: false,
            deontic_possible: TriState::Unknown,
            deontic_necessary: TriState::Unknown,
            temporal_relative: None,
            temporal_absolute: None,
            modifiers: Vec::new(),
        };
        e.id = e.canonical_id();
        e
    }

    pub fn canonical_id(&self) -> String {
        format!(
            "{}|{}|{}|{}|{}|{}",
            self.kind,
            self.svo_id.as_deref().unwrap_or("-"),
            self.linked_svo.as_deref().unwrap_or("-"),
            self.from,
            self.to,
            self.label.as_deref().unwrap_or("-")
        )
    }

    fn with_svo(mut self, svo: &SvoRecord) -> Self {
        self.svo_id = Some(svo.svo_id.clone());
        self.authority = svo.authority;
        self.opinion_kind = Some(svo.opinion_kind);
        self.negated = svo.negated;
        self.deontic_possible = svo.deontic_possible;
        self.deontic_necessary = svo.deontic_necessary;
        self.temporal_relative = Some(svo.temporal_relative);
        self.temporal_absolute = svo.temporal_absolute.clone();
        self
    }

    fn finish(mut self) -> Self {
        self.id = self.canonical_id();
        self
    }
}

/// One ingested SVO statement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SvoRecord {
    pub svo_id: String,
    pub document_id: String,
    pub subject: Option<NodeId>,
    pub verb: NodeId,
    pub object: Option<NodeId>,
    pub negated: bool,
    pub modality: Option<String>,
    pub authority: u32,
    pub opinion_kind: OpinionKind,
    pub deontic_possible: TriState,
    pub deontic_necessary: TriState,
    pub temporal_relative: usize,
    pub temporal_absolute: Option<String>,
    /// Link to the governing clause, if any.
    pub parent_link: Option<ClauseLink>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharacteristicAssertion {
    pub class_or_entity: NodeId,
    pub characteristic: NodeId,
    /// "not dangerous" is stored as characteristic `dangerous`, negated.
    pub negated: bool,
    pub origin: Origin,
    /// Share of direct children carrying the characteristic; set on
    /// promoted assertions (and inherited copies of them).
    pub occurrence_ratio: Option<f64>,
    pub source_svo: Option<String>,
    /// Ancestor the assertion was inherited from.
    pub inherited_from: Option<NodeId>,
}

impl CharacteristicAssertion {
    /// True when the characteristic is an assumption drawn from children.
    pub fn is_assumption(&self) -> bool {
        self.occurrence_ratio.is_some()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GraphDelta {
    pub nodes_added: Vec<NodeId>,
    pub edges_added: Vec<String>,
}

impl GraphDelta {
    pub fn merge(&mut self, other: GraphDelta) {
        self.nodes_added.extend(other.nodes_added);
        self.edges_added.extend(other.edges_added);
    }
}

type AssertionKey = (NodeId, NodeId, bool);

#[derive(Debug, Clone)]
pub struct KnowledgeGraph {
    nodes: BTreeMap<NodeId, Node>,
    edges: BTreeMap<String, Edge>,
    svos: BTreeMap<String, SvoRecord>,
    assertions: BTreeMap<AssertionKey, CharacteristicAssertion>,
    /// IS_A transitive closure: node -> all ancestors.
    ancestors: BTreeMap<NodeId, BTreeSet<NodeId>>,
    authority: AuthorityConfig,
    promotion_threshold: f64,
}

impl Default for KnowledgeGraph {
    fn default() -> Self {
        Self::new(AuthorityConfig::default(), DEFAULT_PROMOTION_THRESHOLD)
    }
}

impl PartialEq for KnowledgeGraph {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes
            && self.edges == other.edges
            && self.svos == other.svos
            && self.assertions == other.assertions
            && self.authority == other.authority
            && self.promotion_threshold.to_bits() == other.promotion_threshold.to_bits()
    }
}

impl KnowledgeGraph {
    pub fn new(authority: AuthorityConfig, promotion_threshold: f64) -> Self {
        Self {
            nodes: BTreeMap::new(),
            edges: BTreeMap::new(),
            svos: BTreeMap::new(),
            assertions: BTreeMap::new(),
            ancestors: BTreeMap::new(),
            authority,
            promotion_threshold,
        }
    }

    pub fn authority_config(&self) -> &AuthorityConfig {
        &self.authority
    }

    pub fn promotion_threshold(&self) -> f64 {
        self.promotion_threshold
    }

    pub fn set_promotion_threshold(&mut self, threshold: f64) {
        self.promotion_threshold = threshold;
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = &Node> {
        self.nodes.values()
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.values()
    }

    pub fn svos(&self) -> impl Iterator<Item = &SvoRecord> {
        self.svos.values()
    }

    pub fn assertions(&self) -> impl Iterator<Item = &CharacteristicAssertion> {
        self.assertions.values()
    }

    pub fn node(&self, id: &NodeId) -> Option<&Node> {
        self.nodes.get(id)
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.edges.get(id)
    }

    pub fn svo(&self, id: &str) -> Option<&SvoRecord> {
        self.svos.get(id)
    }

    pub fn contains_node(&self, id: &NodeId) -> bool {
        self.nodes.contains_key(id)
    }

    /// All nodes whose lemma matches, across parts of speech.
    pub fn nodes_by_lemma(&self, lemma: &str) -> Vec<NodeId> {
        let lemma = lemma.to_lowercase();
        self.nodes.values().filter(|n| n.lemma == lemma).map(|n| n.id.clone()).collect()
    }

    /// Number of edge endpoints at `id` (a self-loop counts twice).
    pub fn degree(&self, id: &NodeId) -> usize {
        self.edges.values().map(|e| usize::from(&e.from == id) + usize::from(&e.to == id)).sum()
    }

    /// Inserts the node if absent. An existing node keeps its kind.
    pub fn upsert_node(&mut self, lemma: &str, pos: PosKind, kind: NodeKind) -> (NodeId, bool) {
        let id = NodeId::new(lemma, pos);
        if self.nodes.contains_key(&id) {
            return (id, false);
        }
        let node = Node { id: id.clone(), kind, lemma: id.lemma().to_string(), attributes: BTreeMap::new() };
        self.nodes.insert(id.clone(), node);
        (id, true)
    }

    pub fn set_attribute(&mut self, id: &NodeId, key: &str, value: &str) -> Result<(), GraphError> {
        let node = self.nodes.get_mut(id).ok_or_else(|| GraphError::UnknownNode(id.clone()))?;
        node.attributes.insert(key.to_string(), value.to_string());
        Ok(())
    }

    /// Inserts or replaces an edge by id. Endpoints must exist; IS_A edges
    /// must keep the hierarchy acyclic. Returns whether the id was new.
    pub fn insert_edge(&mut self, mut edge: Edge) -> Result<bool, GraphError> {
        for end in [&edge.from, &edge.to] {
            if !self.nodes.contains_key(end) {
                return Err(GraphError::UnknownNode(end.clone()));
            }
        }
        if edge.id.is_empty() {
            edge.id = edge.canonical_id();
        }
        if edge.kind == EdgeKind::IsA {
            self.link_ancestors(&edge.from, &edge.to)?;
        }
        Ok(self.edges.insert(edge.id.clone(), edge).is_none())
    }

    fn node_for_phrase(&mut self, np: &NounPhrase, delta: &mut GraphDelta) -> NodeId {
        let pos = PosKind::from_upos(&np.upos);
        self.upsert(&np.lemma_key, pos, delta)
    }

    fn upsert(&mut self, lemma: &str, pos: PosKind, delta: &mut GraphDelta) -> NodeId {
        let (id, added) = self.upsert_node(lemma, pos, pos.default_kind());
        if added {
            delta.nodes_added.push(id.clone());
        }
        id
    }

    fn put_edge(&mut self, edge: Edge, delta: &mut GraphDelta) -> Result<(), GraphError> {
        let id = edge.id.clone();
        if self.insert_edge(edge)? {
            delta.edges_added.push(id);
        }
        Ok(())
    }

    fn modifier_edges(
        &mut self,
        head: &NodeId,
        np: &NounPhrase,
        svo: &SvoRecord,
        delta: &mut GraphDelta,
    ) -> Result<(), GraphError> {
        for m in &np.modifier_lemmas {
            let mid = self.upsert(m, PosKind::Mod, delta);
            let mut e = Edge::new(EdgeKind::HasModifier, head.clone(), mid).with_svo(svo);
            e.negated = false;
            self.put_edge(e.finish(), delta)?;
        }
        Ok(())
    }

    /// Adds one triplet: role nodes and edges, modifier nodes, and the clause
    /// edge to its parent statement once both ends are present.
    pub fn add_svo(&mut self, triplet: &SvoTriplet, provenance: &Provenance) -> Result<GraphDelta, GraphError> {
        let authority = self.authority.authority(provenance)?;
        let mut delta = GraphDelta::default();
        let m = &triplet.metadata;

        let verb = self.upsert(&triplet.verb_lemma, PosKind::from_upos(&triplet.verb_upos), &mut delta);
        let subject = triplet.subject.as_ref().map(|np| self.node_for_phrase(np, &mut delta));
        let object = triplet.object.as_ref().map(|np| self.node_for_phrase(np, &mut delta));

        let record = SvoRecord {
            svo_id: triplet.svo_id.clone(),
            document_id: provenance.document_id.clone(),
            subject: subject.clone(),
            verb: verb.clone(),
            object: object.clone(),
            negated: m.negated,
            modality: m.modality.clone(),
            authority,
            opinion_kind: provenance.opinion_kind,
            deontic_possible: m.deontic_possible,
            deontic_necessary: m.deontic_necessary,
            temporal_relative: m.temporal_relative,
            temporal_absolute: m.temporal_absolute.clone(),
            parent_link: triplet.clause_links.iter().find(|l| l.child_svo == triplet.svo_id).cloned(),
        };

        if let (Some(id), Some(np)) = (&subject, &triplet.subject) {
            let mut e = Edge::new(EdgeKind::SubjectOf, id.clone(), verb.clone()).with_svo(&record);
            e.modifiers = np.modifier_lemmas.clone();
            self.put_edge(e.finish(), &mut delta)?;
            self.modifier_edges(id, np, &record, &mut delta)?;
        }
        if let (Some(id), Some(np)) = (&object, &triplet.object) {
            let mut e = Edge::new(EdgeKind::ObjectOf, id.clone(), verb.clone()).with_svo(&record);
            e.modifiers = np.modifier_lemmas.clone();
            self.put_edge(e.finish(), &mut delta)?;
            self.modifier_edges(id, np, &record, &mut delta)?;
        }
        for (prep, np) in &triplet.prep_objects {
            let id = self.node_for_phrase(np, &mut delta);
            let mut e = Edge::new(EdgeKind::PrepObject, id.clone(), verb.clone()).with_svo(&record);
            e.label = Some(prep.clone());
            e.modifiers = np.modifier_lemmas.clone();
            self.put_edge(e.finish(), &mut delta)?;
            self.modifier_edges(&id, np, &record, &mut delta)?;
        }

        self.svos.insert(record.svo_id.clone(), record.clone());

        // Clause edges in both directions: to this statement's parent, and
        // from already-present children that name it as their parent.
        let mut pairs: Vec<(SvoRecord, SvoRecord)> = Vec::new();
        if let Some(link) = &record.parent_link {
            if let Some(parent) = self.svos.get(&link.parent_svo) {
                pairs.push((record.clone(), parent.clone()));
            }
        }
        for child in self.svos.values() {
            if child.parent_link.as_ref().is_some_and(|l| l.parent_svo == record.svo_id) {
                pairs.push((child.clone(), record.clone()));
            }
        }
        for (child, parent) in pairs {
            let link = child.parent_link.as_ref().expect("child has a link");
            let e = clause_edge(&child, &parent, link);
            self.put_edge(e, &mut delta)?;
        }
        Ok(delta)
    }

    /// Adds a copular assertion: IS_A for class membership, otherwise an
    /// explicit characteristic plus a HAS_CHARACTERISTIC edge.
    pub fn add_copula(
        &mut self,
        assertion: &CopulaAssertion,
        provenance: &Provenance,
    ) -> Result<GraphDelta, GraphError> {
        let authority = self.authority.authority(provenance)?;
        let mut delta = GraphDelta::default();
        let subject = self.node_for_phrase(&assertion.subject, &mut delta);
        let predicate = self.node_for_phrase(&assertion.predicate, &mut delta);

        let stamp = |mut e: Edge| {
            e.svo_id = Some(assertion.id.clone());
            e.authority = authority;
            e.opinion_kind = Some(provenance.opinion_kind);
            e.temporal_relative = Some(assertion.sentence_ordinal);
            e
        };

        if assertion.relation == CopulaRelation::IsA && !assertion.negated {
            let e = stamp(Edge::new(EdgeKind::IsA, subject.clone(), predicate.clone()));
            self.put_edge(e.finish(), &mut delta)?;
        } else {
            let mut e = stamp(Edge::new(EdgeKind::HasCharacteristic, subject.clone(), predicate.clone()));
            e.negated = assertion.negated;
            e.modifiers = assertion.predicate.modifier_lemmas.clone();
            self.put_edge(e.finish(), &mut delta)?;
            self.put_assertion(&subject, &predicate, assertion.negated, Some(assertion.id.clone()));
        }
        for (np, id) in [(&assertion.subject, &subject), (&assertion.predicate, &predicate)] {
            for m in &np.modifier_lemmas {
                let mid = self.upsert(m, PosKind::Mod, &mut delta);
                let e = stamp(Edge::new(EdgeKind::HasModifier, id.clone(), mid));
                self.put_edge(e.finish(), &mut delta)?;
            }
        }
        Ok(delta)
    }

    /// Adds a CONTRADICTS/clause/etc. edge set built elsewhere.
    pub(crate) fn put_edges(&mut self, edges: Vec<Edge>) -> Result<GraphDelta, GraphError> {
        let mut delta = GraphDelta::default();
        for e in edges {
            self.put_edge(e, &mut delta)?;
        }
        Ok(delta)
    }
}

fn clause_edge(child: &SvoRecord, parent: &SvoRecord, link: &ClauseLink) -> Edge {
    let (kind, from, to) = match link.kind {
        ClauseKind::Conditional => (EdgeKind::ConditionOf, child.verb.clone(), parent.verb.clone()),
        ClauseKind::NestedCausal | ClauseKind::OpenComplement => {
            (EdgeKind::Invokes, parent.verb.clone(), child.verb.clone())
        }
        ClauseKind::Coordinate => (EdgeKind::Coordinate, parent.verb.clone(), child.verb.clone()),
    };
    let mut e = Edge::new(kind, from, to);
    e.svo_id = Some(child.svo_id.clone());
    e.linked_svo = Some(parent.svo_id.clone());
    e.label = link.trigger_lemma.clone();
    e.authority = child.authority.min(parent.authority);
    e.opinion_kind = Some(child.opinion_kind);
    e.temporal_relative = Some(child.temporal_relative);
    e.temporal_absolute = child.temporal_absolute.clone();
    e.finish()
}
