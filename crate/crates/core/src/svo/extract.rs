use std::collections::BTreeMap;

use super::chunk::{chunks_of, phrase_at};
use super::tree::DepTree;
use super::{NounPhrase, SvoMetadata, SvoTriplet};
use crate::ingest::{Sentence, Token};

fn has_be_complement(tree: &DepTree<'_>, index: usize) -> bool {
    tree.first_child_with(index, |c| matches!(c.deprel.as_str(), "attr" | "acomp")).is_some()
}

/// Tokens that head a triplet: every VERB, plus AUX tokens that head their
/// own clause. A form of "be" with a predicate complement is a copula and is
/// handled by `classify_copula` instead.
pub(crate) fn predicates(tree: &DepTree<'_>) -> Vec<usize> {
    (1..=tree.len())
        .filter(|&i| {
            let t = tree.token(i);
            let copular_be = t.lemma == "be" && has_be_complement(tree, i);
            match t.upos.as_str() {
                "VERB" => !copular_be,
                "AUX" => {
                    !matches!(t.base_deprel(), "aux" | "cop")
                        && !copular_be
                        && tree
                            .first_child_with(i, |c| {
                                matches!(c.base_deprel(), "nsubj" | "csubj" | "obj" | "dobj" | "expl")
                            })
                            .is_some()
                }
                _ => false,
            }
        })
        .collect()
}

pub(crate) fn nearest_predicate_ancestor(
    tree: &DepTree<'_>,
    preds: &[usize],
    index: usize,
) -> Option<usize> {
    let mut cur = tree.parent(index);
    let mut steps = 0;
    while cur != 0 && steps <= tree.len() {
        if preds.contains(&cur) {
            return Some(cur);
        }
        cur = tree.parent(cur);
        steps += 1;
    }
    None
}

pub(crate) fn is_passive(tree: &DepTree<'_>, verb: usize) -> bool {
    tree.token(verb).feat("Voice") == Some("Pass")
        || tree
            .first_child_with(verb, |c| {
                matches!(c.deprel.as_str(), "nsubj:pass" | "csubj:pass" | "aux:pass" | "nsubjpass" | "auxpass")
            })
            .is_some()
}

fn is_infinitival(tree: &DepTree<'_>, verb: usize) -> bool {
    tree.token(verb).feat("VerbForm") == Some("Inf")
        || tree
            .first_child_with(verb, |c| c.base_deprel() == "mark" && c.lemma == "to")
            .is_some()
}

fn case_lemma(tree: &DepTree<'_>, index: usize) -> Option<String> {
    let cases: Vec<&str> = tree
        .children_with(index, |c| c.base_deprel() == "case")
        .map(|c| tree.token(c).lemma.as_str())
        .collect();
    (!cases.is_empty()).then(|| cases.join("_"))
}

fn agent_child(tree: &DepTree<'_>, verb: usize, passive: bool) -> Option<usize> {
    tree.first_child_with(verb, |c| matches!(c.deprel.as_str(), "obl:agent" | "nmod:agent" | "agent"))
        .or_else(|| {
            passive
                .then(|| {
                    tree.children_with(verb, |c| matches!(c.base_deprel(), "obl" | "nmod"))
                        .find(|&c| case_lemma(tree, c).as_deref() == Some("by"))
                })
                .flatten()
        })
        .map(|a| {
            // spaCy-style `agent` attaches the preposition; its pobj is the phrase.
            tree.first_child_with(a, |c| c.deprel == "pobj").unwrap_or(a)
        })
}

struct Chunks<'t, 'a> {
    tree: &'t DepTree<'a>,
    by_head: BTreeMap<usize, NounPhrase>,
}

impl Chunks<'_, '_> {
    fn phrase(&self, index: usize) -> NounPhrase {
        self.by_head.get(&index).cloned().unwrap_or_else(|| phrase_at(self.tree, index))
    }

    fn nominal_phrase(&self, index: usize) -> Option<NounPhrase> {
        self.tree.is_nominal(index).then(|| self.phrase(index))
    }

    /// Phrase for a subject, merging coordinated conjuncts into one key.
    fn subject_phrase(&self, index: usize) -> NounPhrase {
        let tree = self.tree;
        let mut np = self.phrase(index);
        let conjuncts: Vec<usize> =
            tree.children_with(index, |c| c.base_deprel() == "conj").filter(|&c| tree.is_nominal(c)).collect();
        for c in conjuncts {
            let cc = tree.first_child_with(c, |t| t.base_deprel() == "cc");
            let coordinator = cc.map_or("and", |i| tree.token(i).lemma.as_str());
            let other = self.phrase(c);
            np.lemma_key = format!("{}_{}_{}", np.lemma_key, coordinator, other.lemma_key);
            np.token_indices.extend(other.token_indices.iter().copied());
            np.token_indices.extend(cc);
            np.modifier_lemmas.extend(other.modifier_lemmas);
        }
        np
    }
}

fn is_subject(t: &Token) -> bool {
    matches!(t.deprel.as_str(), "nsubj" | "csubj") || {
        let mut parts = t.deprel.splitn(2, ':');
        matches!(parts.next(), Some("nsubj" | "csubj")) && !matches!(parts.next(), Some("pass"))
    }
}

fn is_passive_subject(t: &Token) -> bool {
    matches!(t.deprel.as_str(), "nsubj:pass" | "csubj:pass" | "nsubjpass" | "csubjpass")
}

/// Extracts one triplet per predicate, or one per object conjunct when the
/// object is coordinated. Metadata holds only `temporal_relative` and
/// `incomplete`; see [`super::extract_metadata`] for the rest.
pub fn extract_svos(document_id: &str, ordinal: usize, sentence: &Sentence) -> Vec<SvoTriplet> {
    let tree = DepTree::new(sentence);
    let chunks = Chunks {
        tree: &tree,
        by_head: chunks_of(&tree).into_iter().map(|np| (np.head_token, np)).collect(),
    };
    let preds = predicates(&tree);
    let mut order = preds.clone();
    order.sort_by_key(|&v| (tree.depth(v), v));

    let mut subjects: BTreeMap<usize, (Option<NounPhrase>, bool)> = BTreeMap::new();
    let mut triplets = Vec::new();

    for &v in &order {
        let vt = tree.token(v);
        let passive = is_passive(&tree, v);
        let agent = if passive { agent_child(&tree, v, true) } else { None };

        let explicit = agent
            .map(|a| chunks.phrase(a))
            .or_else(|| tree.first_child_with(v, is_subject).map(|c| chunks.subject_phrase(c)));
        let (subject, inherited) = match explicit {
            Some(np) => (Some(np), false),
            None => {
                let source = if vt.base_deprel() == "conj" && preds.contains(&vt.head) {
                    Some(vt.head)
                } else if vt.base_deprel() == "xcomp" || is_infinitival(&tree, v) {
                    nearest_predicate_ancestor(&tree, &preds, v)
                } else {
                    None
                };
                match source.and_then(|p| subjects.get(&p)).and_then(|(np, _)| np.clone()) {
                    Some(np) => (Some(np), true),
                    None => (None, false),
                }
            }
        };
        subjects.insert(v, (subject.clone(), inherited));

        let object_head = if passive {
            tree.first_child_with(v, is_passive_subject)
        } else {
            tree.first_child_with(v, |c| matches!(c.base_deprel(), "obj" | "dobj"))
        };
        let mut objects: Vec<NounPhrase> = Vec::new();
        if let Some(o) = object_head {
            objects.push(chunks.phrase(o));
            for c in tree.children_with(o, |c| c.base_deprel() == "conj") {
                if tree.is_nominal(c) {
                    objects.push(chunks.phrase(c));
                }
            }
        }

        let mut prep_objects = Vec::new();
        for &c in tree.children(v) {
            if Some(c) == agent {
                continue;
            }
            let ct = tree.token(c);
            match ct.base_deprel() {
                "obl" | "nmod" if !matches!(ct.deprel.as_str(), "obl:agent" | "nmod:agent") => {
                    if let (Some(prep), Some(np)) = (case_lemma(&tree, c), chunks.nominal_phrase(c)) {
                        prep_objects.push((prep, np));
                    }
                }
                "prep" => {
                    if let Some(p) = tree.first_child_with(c, |t| t.deprel == "pobj") {
                        if let Some(np) = chunks.nominal_phrase(p) {
                            prep_objects.push((ct.lemma.clone(), np));
                        }
                    }
                }
                _ => {}
            }
        }

        let base_id = format!("{document_id}:{}:{v}", sentence.sentence_id);
        let object_slots: Vec<Option<NounPhrase>> =
            if objects.is_empty() { vec![None] } else { objects.into_iter().map(Some).collect() };
        for (k, object) in object_slots.into_iter().enumerate() {
            let svo_id = if k == 0 { base_id.clone() } else { format!("{base_id}#{}", k + 1) };
            let incomplete = subject.is_none() && object.is_none() && prep_objects.is_empty();
            triplets.push(SvoTriplet {
                svo_id,
                document_id: document_id.to_string(),
                sentence_id: sentence.sentence_id.clone(),
                subject: subject.clone(),
                subject_inherited: inherited,
                verb_token: v,
                verb_lemma: vt.lemma.clone(),
                verb_upos: vt.upos.clone(),
                object,
                prep_objects: prep_objects.clone(),
                metadata: SvoMetadata {
                    temporal_relative: ordinal,
                    incomplete,
                    ..SvoMetadata::default()
                },
                clause_links: Vec::new(),
            });
        }
    }
    triplets.sort_by(|a, b| (a.verb_token, &a.svo_id).cmp(&(b.verb_token, &b.svo_id)));
    triplets
}
