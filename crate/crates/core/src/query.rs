//! Constrained path search between two entities, ranked by authority.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::ingest::OpinionKind;
use crate::kgraph::{Edge, EdgeKind, KnowledgeGraph, NodeId};
use crate::svo::TriState;

pub const DEFAULT_MAX_LENGTH: usize = 6;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QueryError {
    #[error("selector `{0}` matches no node")]
    UnknownSelector(String),
    #[error("invalid query: {0}")]
    Invalid(String),
    #[error("svo `{0}` is not a condition of another clause")]
    NotConditional(String),
}

/// A lemma (matching every part of speech) or an exact `(lemma,pos)` id.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Selector {
    Lemma(String),
    Node(NodeId),
}

impl Selector {
    pub fn resolve(&self, graph: &KnowledgeGraph) -> Result<BTreeSet<NodeId>, QueryError> {
        let found: BTreeSet<NodeId> = match self {
            Selector::Lemma(l) => graph.nodes_by_lemma(l).into_iter().collect(),
            Selector::Node(id) => graph.contains_node(id).then(|| id.clone()).into_iter().collect(),
        };
        if found.is_empty() {
            Err(QueryError::UnknownSelector(self.to_string()))
        } else {
            Ok(found)
        }
    }
}

impl FromStr for Selector {
    type Err = QueryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(QueryError::Invalid("empty selector".into()));
        }
        if s.starts_with('(') {
            NodeId::parse(s).map(Selector::Node).ok_or_else(|| QueryError::Invalid(format!("bad node id `{s}`")))
        } else {
            Ok(Selector::Lemma(s.to_lowercase()))
        }
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Selector::Lemma(l) => f.write_str(l),
            Selector::Node(id) => write!(f, "{id}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathConstraint {
    /// Only these edge kinds may be used.
    EdgeKindWhitelist(BTreeSet<EdgeKind>),
    ForbidEdgeKind(EdgeKind),
    /// The path must visit a node matched by the selector.
    MustPassNode(Selector),
    /// Edges with an opinion kind must carry one of these. Edges asserted
    /// outside any opinion always pass.
    OpinionKindFilter(BTreeSet<OpinionKind>),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DeonticFilter {
    /// Drop role edges whose statement is known to be impossible.
    pub require_possible: bool,
    /// Keep only role edges whose statement is known to be necessary.
    pub require_necessary: bool,
    /// Drop negated edges of any kind.
    pub exclude_negated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    pub from: Selector,
    pub to: Selector,
    pub max_length: usize,
    pub constraints: Vec<PathConstraint>,
    pub deontic: DeonticFilter,
    pub authority_floor: Option<u32>,
}

impl Query {
    pub fn new(from: Selector, to: Selector) -> Self {
        Self {
            from,
            to,
            max_length: DEFAULT_MAX_LENGTH,
            constraints: Vec::new(),
            deontic: DeonticFilter::default(),
            authority_floor: None,
        }
    }

    pub fn between(from: &str, to: &str) -> Result<Self, QueryError> {
        Ok(Self::new(from.parse()?, to.parse()?))
    }

    /// Parses `from=<sel> to=<sel> [max=N] [require=necessary|possible]
    /// [exclude-negated] [via=<sel>] [edge=KIND,...] [forbid=KIND,...]
    /// [opinion=KIND,...] [floor=N]`.
    pub fn parse(expr: &str) -> Result<Self, QueryError> {
        let bad = |m: String| QueryError::Invalid(m);
        let mut from = None;
        let mut to = None;
        let mut q = Query::new(Selector::Lemma(String::new()), Selector::Lemma(String::new()));
        for word in expr.split_whitespace() {
            if word == "exclude-negated" {
                q.deontic.exclude_negated = true;
                continue;
            }
            let (key, value) = word.split_once('=').ok_or_else(|| bad(format!("expected key=value, got `{word}`")))?;
            let kinds = |v: &str| -> Result<BTreeSet<EdgeKind>, QueryError> {
                v.split(',').filter(|k| !k.is_empty()).map(|k| k.parse().map_err(bad)).collect()
            };
            match key {
                "from" => from = Some(value.parse()?),
                "to" => to = Some(value.parse()?),
                "max" => {
                    q.max_length = value.parse().map_err(|_| bad(format!("bad max `{value}`")))?;
                    if q.max_length == 0 {
                        return Err(bad("max must be at least 1".into()));
                    }
                }
                "require" => match value {
                    "necessary" => q.deontic.require_necessary = true,
                    "possible" => q.deontic.require_possible = true,
                    other => return Err(bad(format!("require expects necessary|possible, got `{other}`"))),
                },
                "via" => q.constraints.push(PathConstraint::MustPassNode(value.parse()?)),
                "edge" => q.constraints.push(PathConstraint::EdgeKindWhitelist(kinds(value)?)),
                "forbid" => {
                    for k in kinds(value)? {
                        q.constraints.push(PathConstraint::ForbidEdgeKind(k));
                    }
                }
                "opinion" => {
                    let set = value
                        .split(',')
                        .filter(|k| !k.is_empty())
                        .map(|k| k.parse::<OpinionKind>().map_err(|_| bad(format!("bad opinion kind `{k}`"))))
                        .collect::<Result<_, _>>()?;
                    q.constraints.push(PathConstraint::OpinionKindFilter(set));
                }
                "floor" => {
                    q.authority_floor = Some(value.parse().map_err(|_| bad(format!("bad floor `{value}`")))?)
                }
                other => return Err(bad(format!("unknown key `{other}`"))),
            }
        }
        q.from = from.ok_or_else(|| bad("missing from=".into()))?;
        q.to = to.ok_or_else(|| bad("missing to=".into()))?;
        Ok(q)
    }

    /// Whether a single edge may appear on a result path.
    pub fn admits_edge(&self, e: &Edge) -> bool {
        for c in &self.constraints {
            let ok = match c {
                PathConstraint::EdgeKindWhitelist(kinds) => kinds.contains(&e.kind),
                PathConstraint::ForbidEdgeKind(k) => e.kind != *k,
                PathConstraint::OpinionKindFilter(kinds) => e.opinion_kind.is_none_or(|o| kinds.contains(&o)),
                PathConstraint::MustPassNode(_) => true,
            };
            if !ok {
                return false;
            }
        }
        if self.deontic.exclude_negated && e.negated {
            return false;
        }
        if e.kind.is_svo_role() {
            if self.deontic.require_possible && e.deontic_possible == TriState::No {
                return false;
            }
            if self.deontic.require_necessary && e.deontic_necessary != TriState::Yes {
                return false;
            }
        }
        self.authority_floor.is_none_or(|f| e.authority >= f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankedPath {
    pub nodes: Vec<NodeId>,
    pub edges: Vec<String>,
    /// Lowest edge authority on the path; 0 for the empty path.
    pub min_authority: u32,
    /// Number of places where consecutive edges come from different statements.
    pub statement_switches: usize,
    pub rendered_phrase: String,
}

impl RankedPath {
    pub fn length(&self) -> usize {
        self.edges.len()
    }

    fn rank_key(&self) -> (Reverse<u32>, usize, &[NodeId], usize, &[String]) {
        (Reverse(self.min_authority), self.edges.len(), &self.nodes, self.statement_switches, &self.edges)
    }
}

/// Higher minimum authority first, then shorter, then by node id sequence.
/// Paths over the same nodes through parallel edges prefer staying within
/// one statement, then fall back to edge id order.
pub fn compare_paths(a: &RankedPath, b: &RankedPath) -> std::cmp::Ordering {
    a.rank_key().cmp(&b.rank_key())
}

pub fn rank_paths(mut paths: Vec<RankedPath>) -> Vec<RankedPath> {
    paths.sort_by(compare_paths);
    paths
}

struct Step<'g> {
    edge: &'g Edge,
    next: &'g NodeId,
}

/// Every simple path from a `from` node to a `to` node within the bounds,
/// ranked. Edges are traversed in either direction.
pub fn find_paths(graph: &KnowledgeGraph, query: &Query) -> Result<Vec<RankedPath>, QueryError> {
    if query.max_length == 0 {
        return Err(QueryError::Invalid("max_length must be at least 1".into()));
    }
    let sources = query.from.resolve(graph)?;
    let targets = query.to.resolve(graph)?;
    let mut must_pass = Vec::new();
    for c in &query.constraints {
        if let PathConstraint::MustPassNode(sel) = c {
            must_pass.push(sel.resolve(graph)?);
        }
    }

    let mut adjacency: BTreeMap<&NodeId, Vec<Step<'_>>> = BTreeMap::new();
    for e in graph.edges().filter(|e| e.from != e.to && query.admits_edge(e)) {
        adjacency.entry(&e.from).or_default().push(Step { edge: e, next: &e.to });
        adjacency.entry(&e.to).or_default().push(Step { edge: e, next: &e.from });
    }

    let mut out = Vec::new();
    for start in &sources {
        let mut nodes = vec![start];
        let mut edges: Vec<&Edge> = Vec::new();
        dfs(&adjacency, &targets, &must_pass, query.max_length, &mut nodes, &mut edges, graph, &mut out);
    }
    Ok(rank_paths(out))
}

#[allow(clippy::too_many_arguments)]
fn dfs<'g>(
    adjacency: &BTreeMap<&'g NodeId, Vec<Step<'g>>>,
    targets: &BTreeSet<NodeId>,
    must_pass: &[BTreeSet<NodeId>],
    max_length: usize,
    nodes: &mut Vec<&'g NodeId>,
    edges: &mut Vec<&'g Edge>,
    graph: &KnowledgeGraph,
    out: &mut Vec<RankedPath>,
) {
    let here = *nodes.last().expect("path is never empty");
    if targets.contains(here) && must_pass.iter().all(|set| nodes.iter().any(|n| set.contains(*n))) {
        out.push(make_path(graph, nodes, edges));
    }
    if edges.len() == max_length {
        return;
    }
    for step in adjacency.get(here).map(Vec::as_slice).unwrap_or_default() {
        if nodes.contains(&step.next) {
            continue;
        }
        nodes.push(step.next);
        edges.push(step.edge);
        dfs(adjacency, targets, must_pass, max_length, nodes, edges, graph, out);
        nodes.pop();
        edges.pop();
    }
}

fn make_path(graph: &KnowledgeGraph, nodes: &[&NodeId], edges: &[&Edge]) -> RankedPath {
    let nodes: Vec<NodeId> = nodes.iter().map(|n| (*n).clone()).collect();
    let edge_ids: Vec<String> = edges.iter().map(|e| e.id.clone()).collect();
    let min_authority = edges.iter().map(|e| e.authority).min().unwrap_or(0);
    let statement_switches = edges.windows(2).filter(|w| w[0].svo_id != w[1].svo_id).count();
    let rendered_phrase = render_steps(graph, &nodes, edges);
    RankedPath { nodes, edges: edge_ids, min_authority, statement_switches, rendered_phrase }
}

/// Renders a path by looking its edges up in `graph`.
pub fn render_phrase(graph: &KnowledgeGraph, path: &RankedPath) -> String {
    let edges: Vec<&Edge> = path.edges.iter().filter_map(|id| graph.edge(id)).collect();
    render_steps(graph, &path.nodes, &edges)
}

/// The phrase followed by the node id sequence, so distinct paths never
/// render alike.
pub fn render_phrase_debug(graph: &KnowledgeGraph, path: &RankedPath) -> String {
    let ids: Vec<&str> = path.nodes.iter().map(NodeId::as_str).collect();
    format!("{} [{}]", render_phrase(graph, path), ids.join(" "))
}

fn render_steps(graph: &KnowledgeGraph, nodes: &[NodeId], edges: &[&Edge]) -> String {
    let lemma = |id: &NodeId| graph.node(id).map_or_else(|| id.lemma().to_string(), |n| n.lemma.clone());
    let mut words: Vec<String> = Vec::new();
    if let Some(first) = edges.first() {
        if first.kind.is_svo_role() && first.from == nodes[0] {
            words.extend(first.modifiers.iter().cloned());
        }
    }
    words.push(lemma(&nodes[0]));

    let mut negated_svos: BTreeSet<&str> = BTreeSet::new();
    for (i, e) in edges.iter().enumerate() {
        let forward = e.from == nodes[i];
        let target = lemma(&nodes[i + 1]);
        // a negated statement says "not" once even when two of its edges are on the path
        let say_not = e.kind.is_svo_role()
            && e.negated
            && e.svo_id.as_deref().is_none_or(|s| negated_svos.insert(s));
        match e.kind {
            EdgeKind::SubjectOf | EdgeKind::ObjectOf | EdgeKind::PrepObject if forward => {
                if say_not {
                    words.push("not".into());
                }
                words.push(target);
            }
            EdgeKind::SubjectOf | EdgeKind::ObjectOf | EdgeKind::PrepObject => {
                if say_not {
                    words.push("not".into());
                }
                if let Some(prep) = e.label.as_ref().filter(|_| e.kind == EdgeKind::PrepObject) {
                    words.push(prep.clone());
                }
                words.extend(e.modifiers.iter().cloned());
                words.push(target);
            }
            EdgeKind::HasCharacteristic if forward => {
                words.push("is".into());
                if e.negated {
                    words.push("not".into());
                }
                words.extend(e.modifiers.iter().cloned());
                words.push(target);
            }
            EdgeKind::HasCharacteristic => {
                words.push(if e.negated { "does not characterize" } else { "characterizes" }.into());
                words.push(target);
            }
            EdgeKind::IsA => {
                words.push(if forward { "is a" } else { "includes" }.into());
                words.push(target);
            }
            EdgeKind::HasModifier => {
                words.push(if forward { "is" } else { "describes" }.into());
                words.push(target);
            }
            EdgeKind::Invokes => {
                let w = if forward { e.label.clone().unwrap_or_else(|| "invokes".into()) } else { "invoked by".into() };
                words.push(w);
                words.push(target);
            }
            EdgeKind::Coordinate => {
                words.push(e.label.clone().unwrap_or_else(|| "and".into()));
                words.push(target);
            }
            EdgeKind::ConditionOf => {
                words.push(if forward { "then" } else { "if" }.into());
                words.push(target);
            }
            EdgeKind::Contradicts => {
                words.push("contradicts".into());
                words.push(target);
            }
            EdgeKind::IsNot => {
                words.push("is not".into());
                words.push(target);
            }
        }
    }
    words.join(" ")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fact {
    pub subject: String,
    pub verb: String,
    pub object: Option<String>,
    pub negated: bool,
}

impl Fact {
    pub fn new(subject: &str, verb: &str, object: &str, negated: bool) -> Self {
        Self { subject: subject.into(), verb: verb.into(), object: Some(object.into()), negated }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionOutcome {
    Satisfied,
    Violated,
    Unknown,
}

/// `lemma` names the condition's node or something beneath it.
fn compatible(graph: &KnowledgeGraph, lemma: &str, class: &NodeId) -> bool {
    let lemma = lemma.to_lowercase();
    lemma == class.lemma() || graph.nodes_by_lemma(&lemma).iter().any(|n| graph.is_kind_of(n, class))
}

/// Tests a conditional statement against context facts. A matching
/// affirmative fact satisfies it; otherwise a matching negated fact
/// violates it; otherwise the outcome is unknown.
pub fn evaluate_condition(
    graph: &KnowledgeGraph,
    conditional_svo: &str,
    facts: &[Fact],
) -> Result<ConditionOutcome, QueryError> {
    let is_condition = graph
        .edges()
        .any(|e| e.kind == EdgeKind::ConditionOf && e.svo_id.as_deref() == Some(conditional_svo));
    let cond = graph
        .svo(conditional_svo)
        .filter(|_| is_condition)
        .ok_or_else(|| QueryError::NotConditional(conditional_svo.to_string()))?;

    let matches = |f: &Fact| {
        f.verb.to_lowercase() == cond.verb.lemma()
            && cond.subject.as_ref().is_none_or(|s| compatible(graph, &f.subject, s))
            && match (&cond.object, &f.object) {
                (None, _) => true,
                (Some(o), Some(fo)) => compatible(graph, fo, o),
                (Some(_), None) => false,
            }
    };
    let matching: Vec<&Fact> = facts.iter().filter(|f| matches(f)).collect();
    Ok(if matching.iter().any(|f| !f.negated) {
        ConditionOutcome::Satisfied
    } else if !matching.is_empty() {
        ConditionOutcome::Violated
    } else {
        ConditionOutcome::Unknown
    })
}
