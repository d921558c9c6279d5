//! Class hierarchy: IS_A closure, default inheritance with override,
//! characteristic promotion, quality classes and temporal checks.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{
    CharacteristicAssertion, Edge, EdgeKind, GraphDelta, GraphError, KnowledgeGraph, NodeId, NodeKind, PosKind,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    Explicit,
    Inherited,
    Promoted,
}

impl KnowledgeGraph {
    fn require(&self, id: &NodeId) -> Result<(), GraphError> {
        if self.nodes.contains_key(id) {
            Ok(())
        } else {
            Err(GraphError::UnknownNode(id.clone()))
        }
    }

    /// Records `child IS_A parent` in the closure cache, refusing cycles.
    pub(super) fn link_ancestors(&mut self, child: &NodeId, parent: &NodeId) -> Result<(), GraphError> {
        if child == parent || self.ancestors.get(parent).is_some_and(|a| a.contains(child)) {
            return Err(GraphError::CycleWouldForm { child: child.clone(), parent: parent.clone() });
        }
        let mut gained: BTreeSet<NodeId> = self.ancestors.get(parent).cloned().unwrap_or_default();
        gained.insert(parent.clone());
        let descendants: Vec<NodeId> = self
            .ancestors
            .iter()
            .filter(|(_, anc)| anc.contains(child))
            .map(|(n, _)| n.clone())
            .collect();
        for n in descendants.into_iter().chain(std::iter::once(child.clone())) {
            self.ancestors.entry(n).or_default().extend(gained.iter().cloned());
        }
        Ok(())
    }

    /// All IS_A ancestors of `node`.
    pub fn ancestors(&self, node: &NodeId) -> Result<BTreeSet<NodeId>, GraphError> {
        self.require(node)?;
        Ok(self.ancestors.get(node).cloned().unwrap_or_default())
    }

    /// True when `node` equals `class` or lies beneath it.
    pub fn is_kind_of(&self, node: &NodeId, class: &NodeId) -> bool {
        node == class || self.ancestors.get(node).is_some_and(|a| a.contains(class))
    }

    pub fn parents(&self, node: &NodeId) -> BTreeSet<NodeId> {
        self.edges
            .values()
            .filter(|e| e.kind == EdgeKind::IsA && &e.from == node)
            .map(|e| e.to.clone())
            .collect()
    }

    pub fn children(&self, class: &NodeId) -> BTreeSet<NodeId> {
        self.edges
            .values()
            .filter(|e| e.kind == EdgeKind::IsA && &e.to == class)
            .map(|e| e.from.clone())
            .collect()
    }

    fn ensure_class(&mut self, id: &NodeId, delta: &mut GraphDelta) {
        if !self.nodes.contains_key(id) {
            let kind = match id.pos() {
                PosKind::Noun => NodeKind::Class,
                other => other.default_kind(),
            };
            self.upsert_node(id.lemma(), id.pos(), kind);
            delta.nodes_added.push(id.clone());
        }
    }

    /// Adds `child IS_A parent`, creating missing ends as class nodes.
    pub fn assert_is_a(&mut self, child: &NodeId, parent: &NodeId) -> Result<GraphDelta, GraphError> {
        if child == parent || self.ancestors.get(parent).is_some_and(|a| a.contains(child)) {
            return Err(GraphError::CycleWouldForm { child: child.clone(), parent: parent.clone() });
        }
        let mut delta = GraphDelta::default();
        self.ensure_class(child, &mut delta);
        self.ensure_class(parent, &mut delta);
        let edge = Edge::new(EdgeKind::IsA, child.clone(), parent.clone());
        let id = edge.id.clone();
        if self.insert_edge(edge)? {
            delta.edges_added.push(id);
        }
        Ok(delta)
    }

    /// Stores an explicit assertion. Repeated sources keep the smallest
    /// svo id so the result does not depend on ingestion order.
    pub(crate) fn put_assertion(
        &mut self,
        node: &NodeId,
        characteristic: &NodeId,
        negated: bool,
        source_svo: Option<String>,
    ) {
        let key = (node.clone(), characteristic.clone(), negated);
        let source = match self.assertions.get(&key) {
            Some(old) if old.origin == Origin::Explicit => match (&old.source_svo, source_svo) {
                (Some(a), Some(b)) => Some(a.clone().min(b)),
                (a, b) => a.clone().or(b),
            },
            _ => source_svo,
        };
        self.assertions.insert(
            key,
            CharacteristicAssertion {
                class_or_entity: node.clone(),
                characteristic: characteristic.clone(),
                negated,
                origin: Origin::Explicit,
                occurrence_ratio: None,
                source_svo: source,
                inherited_from: None,
            },
        );
    }

    /// Explicitly asserts a characteristic (or its negation) on `node`.
    /// The characteristic node is created if needed.
    pub fn add_characteristic(
        &mut self,
        node: &NodeId,
        characteristic: &NodeId,
        negated: bool,
    ) -> Result<(), GraphError> {
        self.require(node)?;
        self.upsert_node(characteristic.lemma(), characteristic.pos(), characteristic.pos().default_kind());
        self.put_assertion(node, characteristic, negated, None);
        Ok(())
    }

    /// Removes an explicit or promoted assertion; returns whether one existed.
    pub fn remove_characteristic(&mut self, node: &NodeId, characteristic: &NodeId, negated: bool) -> bool {
        self.assertions.remove(&(node.clone(), characteristic.clone(), negated)).is_some()
    }

    fn own_assertions<'a>(&'a self, node: &'a NodeId) -> impl Iterator<Item = &'a CharacteristicAssertion> + 'a {
        self.assertions
            .range((node.clone(), NodeId(String::new()), false)..)
            .take_while(move |((n, _, _), _)| n == node)
            .map(|(_, a)| a)
    }

    /// Own assertions plus those inherited from ancestors. A characteristic
    /// asserted on the node (either polarity) shadows inherited ones, and a
    /// nearer ancestor shadows a farther one.
    pub fn get_characteristics(&self, node: &NodeId) -> Result<Vec<CharacteristicAssertion>, GraphError> {
        self.require(node)?;
        let mut out: Vec<CharacteristicAssertion> = self.own_assertions(node).cloned().collect();
        let mut shadowed: BTreeSet<NodeId> = out.iter().map(|a| a.characteristic.clone()).collect();

        let mut seen = BTreeSet::from([node.clone()]);
        let mut queue: VecDeque<NodeId> = self.parents(node).into_iter().collect();
        while let Some(anc) = queue.pop_front() {
            if !seen.insert(anc.clone()) {
                continue;
            }
            let found: Vec<&CharacteristicAssertion> =
                self.own_assertions(&anc).filter(|a| !shadowed.contains(&a.characteristic)).collect();
            for a in &found {
                out.push(CharacteristicAssertion {
                    class_or_entity: node.clone(),
                    characteristic: a.characteristic.clone(),
                    negated: a.negated,
                    origin: Origin::Inherited,
                    occurrence_ratio: a.occurrence_ratio,
                    source_svo: a.source_svo.clone(),
                    inherited_from: Some(anc.clone()),
                });
            }
            shadowed.extend(found.into_iter().map(|a| a.characteristic.clone()));
            queue.extend(self.parents(&anc));
        }
        Ok(out)
    }

    /// Promotes characteristics explicitly held by at least the threshold
    /// share of the class's direct children. One level per call.
    pub fn promote_characteristics(&mut self, class: &NodeId) -> Result<Vec<CharacteristicAssertion>, GraphError> {
        self.require(class)?;
        let children = self.children(class);
        if children.is_empty() {
            return Err(GraphError::NoChildren(class.clone()));
        }
        let mut counts: BTreeMap<(NodeId, bool), usize> = BTreeMap::new();
        for child in &children {
            for a in self.own_assertions(child).filter(|a| a.origin == Origin::Explicit) {
                *counts.entry((a.characteristic.clone(), a.negated)).or_default() += 1;
            }
        }
        let explicit_on_class: BTreeSet<NodeId> = self
            .own_assertions(class)
            .filter(|a| a.origin == Origin::Explicit)
            .map(|a| a.characteristic.clone())
            .collect();

        let n = children.len();
        let mut promoted = Vec::new();
        for ((characteristic, negated), count) in counts {
            let ratio = count as f64 / n as f64;
            if ratio < self.promotion_threshold || explicit_on_class.contains(&characteristic) {
                continue;
            }
            let a = CharacteristicAssertion {
                class_or_entity: class.clone(),
                characteristic: characteristic.clone(),
                negated,
                origin: Origin::Promoted,
                occurrence_ratio: Some(ratio),
                source_svo: None,
                inherited_from: None,
            };
            self.assertions.insert((class.clone(), characteristic, negated), a.clone());
            promoted.push(a);
        }
        Ok(promoted)
    }

    /// Declares a quality class (e.g. speed) whose members are modifiers.
    pub fn declare_quality(&mut self, quality: &str, modifiers: &[&str]) -> Result<GraphDelta, GraphError> {
        let mut delta = GraphDelta::default();
        let (q, added) = self.upsert_node(quality, PosKind::Quality, NodeKind::QualityClass);
        if added {
            delta.nodes_added.push(q.clone());
        }
        for m in modifiers {
            let (mid, added) = self.upsert_node(m, PosKind::Mod, NodeKind::Modifier);
            if added {
                delta.nodes_added.push(mid.clone());
            }
            let edge = Edge::new(EdgeKind::IsA, mid, q.clone());
            let id = edge.id.clone();
            if self.insert_edge(edge)? {
                delta.edges_added.push(id);
            }
        }
        Ok(delta)
    }

    fn quality_classes(&self, node: &NodeId) -> BTreeSet<NodeId> {
        self.parents(node)
            .into_iter()
            .filter(|p| self.nodes.get(p).is_some_and(|n| n.kind == NodeKind::QualityClass))
            .collect()
    }

    /// Declares `a IS_NOT b` under `relation` (e.g. faster_than). Both must
    /// be members of a common quality class.
    pub fn assert_is_not(&mut self, a: &NodeId, b: &NodeId, relation: &str) -> Result<GraphDelta, GraphError> {
        self.require(a)?;
        self.require(b)?;
        if self.quality_classes(a).is_disjoint(&self.quality_classes(b)) {
            return Err(GraphError::NotSameQualityClass { a: a.clone(), b: b.clone() });
        }
        let mut edge = Edge::new(EdgeKind::IsNot, a.clone(), b.clone());
        edge.label = Some(relation.to_string());
        self.put_edges(vec![edge.finish()])
    }

    /// INVOKES edges whose invoked clause is dated strictly before the
    /// invoking one. Relative ordinals are compared within one document only.
    pub fn temporal_inconsistencies(&self) -> Vec<&Edge> {
        self.edges
            .values()
            .filter(|e| e.kind == EdgeKind::Invokes)
            .filter(|e| {
                let (Some(child), Some(parent)) = (
                    e.svo_id.as_deref().and_then(|s| self.svos.get(s)),
                    e.linked_svo.as_deref().and_then(|s| self.svos.get(s)),
                ) else {
                    return false;
                };
                match (&child.temporal_absolute, &parent.temporal_absolute) {
                    (Some(c), Some(p)) => date_precedes(c, p),
                    (None, None) => {
                        child.document_id == parent.document_id
                            && child.temporal_relative < parent.temporal_relative
                    }
                    _ => false,
                }
            })
            .collect()
    }
}

/// `YYYY[-MM[-DD]]` comparison at the shared precision.
fn date_precedes(a: &str, b: &str) -> bool {
    let n = a.len().min(b.len());
    a[..n] < b[..n]
}
