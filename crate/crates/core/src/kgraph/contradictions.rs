use std::collections::BTreeMap;

use super::{Edge, EdgeKind, GraphError, KnowledgeGraph, NodeId, SvoRecord};

impl KnowledgeGraph {
    /// `(affirmative, negated)` svo id pairs sharing subject, verb and
    /// object nodes. Statements without a subject never conflict.
    pub fn contradiction_pairs(&self) -> Vec<(String, String)> {
        type Key<'a> = (&'a NodeId, &'a NodeId, Option<&'a NodeId>);
        let mut groups: BTreeMap<Key<'_>, (Vec<&SvoRecord>, Vec<&SvoRecord>)> = BTreeMap::new();
        for r in self.svos.values() {
            let Some(subject) = &r.subject else { continue };
            let g = groups.entry((subject, &r.verb, r.object.as_ref())).or_default();
            if r.negated {
                g.1.push(r);
            } else {
                g.0.push(r);
            }
        }
        let mut pairs = Vec::new();
        for (aff, neg) in groups.values() {
            for a in aff {
                for n in neg {
                    pairs.push((a.svo_id.clone(), n.svo_id.clone()));
                }
            }
        }
        pairs.sort();
        pairs
    }

    /// Adds one CONTRADICTS edge (a self-loop on the shared verb) per
    /// conflicting pair and returns all of them, old and new. The edge has
    /// no opinion kind of its own; each side keeps its own on its record.
    pub fn detect_contradictions(&mut self) -> Result<Vec<Edge>, GraphError> {
        let mut edges = Vec::new();
        for (aff, neg) in self.contradiction_pairs() {
            let (a, n) = (&self.svos[&aff], &self.svos[&neg]);
            let mut e = Edge::new(EdgeKind::Contradicts, a.verb.clone(), a.verb.clone());
            e.svo_id = Some(aff);
            e.linked_svo = Some(neg);
            e.authority = a.authority.min(n.authority);
            edges.push(e.finish());
        }
        self.put_edges(edges.clone())?;
        Ok(edges)
    }

    /// The statements contradicting `svo_id`, reported from either side.
    pub fn contradictions_of(&self, svo_id: &str) -> Vec<(&str, &Edge)> {
        self.edges
            .values()
            .filter(|e| e.kind == EdgeKind::Contradicts)
            .filter_map(|e| {
                let (a, n) = (e.svo_id.as_deref()?, e.linked_svo.as_deref()?);
                if a == svo_id {
                    Some((n, e))
                } else if n == svo_id {
                    Some((a, e))
                } else {
                    None
                }
            })
            .collect()
    }
}
