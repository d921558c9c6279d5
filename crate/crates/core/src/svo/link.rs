use std::collections::BTreeMap;

use super::extract::{nearest_predicate_ancestor, predicates};
use super::tree::DepTree;
use super::{ClauseKind, ClauseLink, SvoTriplet};
use crate::ingest::Sentence;

const CONDITION_MARKERS: [&str; 4] = ["if", "when", "whether", "unless"];

/// Links every non-root clause to the clause of its nearest verbal ancestor.
pub fn link_clauses(sentence: &Sentence, triplets: &[SvoTriplet]) -> Vec<ClauseLink> {
    let tree = DepTree::new(sentence);
    let preds = predicates(&tree);

    // The first triplet of each verb stands for the clause.
    let mut primary: BTreeMap<usize, &str> = BTreeMap::new();
    for t in triplets {
        primary.entry(t.verb_token).or_insert(&t.svo_id);
    }

    let mut links = Vec::new();
    for (&verb, &child_svo) in &primary {
        let Some(parent) = nearest_predicate_ancestor(&tree, &preds, verb) else { continue };
        let Some(&parent_svo) = primary.get(&parent) else { continue };
        let vt = tree.token(verb);
        let marker = tree.first_child_with(verb, |c| {
            matches!(c.base_deprel(), "mark" | "advmod") && CONDITION_MARKERS.contains(&c.lemma.as_str())
        });
        let first_mark = || tree.first_child_with(verb, |c| c.base_deprel() == "mark");
        let (kind, trigger) = if let Some(m) = marker {
            (ClauseKind::Conditional, Some(m))
        } else if vt.base_deprel() == "xcomp" {
            (ClauseKind::OpenComplement, first_mark())
        } else if vt.base_deprel() == "conj" {
            (ClauseKind::Coordinate, tree.first_child_with(verb, |c| c.base_deprel() == "cc"))
        } else {
            (ClauseKind::NestedCausal, first_mark())
        };
        links.push(ClauseLink {
            kind,
            parent_svo: parent_svo.to_string(),
            child_svo: child_svo.to_string(),
            trigger_lemma: trigger.map(|i| tree.token(i).lemma.clone()),
        });
    }

    // Object conjuncts hang off the verb's first triplet.
    for t in triplets {
        let Some(&first) = primary.get(&t.verb_token) else { continue };
        if first == t.svo_id {
            continue;
        }
        let trigger = t
            .object
            .as_ref()
            .and_then(|o| tree.first_child_with(o.head_token, |c| c.base_deprel() == "cc"))
            .map(|i| tree.token(i).lemma.clone());
        links.push(ClauseLink {
            kind: ClauseKind::Coordinate,
            parent_svo: first.to_string(),
            child_svo: t.svo_id.clone(),
            trigger_lemma: trigger,
        });
    }
    links.sort_by(|a, b| a.child_svo.cmp(&b.child_svo));
    links
}
