use serde::{Deserialize, Serialize};

use super::chunk::{chunks_of, phrase_at};
use super::tree::{is_negator, DepTree};
use super::NounPhrase;
use crate::ingest::Sentence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CopulaRelation {
    /// "a gun is a firearm": class membership.
    IsA,
    /// "use is active employment": an attribute of the subject.
    Attribute,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CopulaAssertion {
    /// `document_id:sentence_id:predicate_index`
    pub id: String,
    pub subject: NounPhrase,
    pub predicate: NounPhrase,
    pub relation: CopulaRelation,
    pub negated: bool,
    pub sentence_ordinal: usize,
}

/// Finds copular clauses, either a predicate with a `cop` dependent or a
/// root-like "be" with an `attr`/`acomp` complement. An indefinite article
/// on a nominal predicate makes the assertion class membership.
pub fn classify_copula(document_id: &str, ordinal: usize, sentence: &Sentence) -> Vec<CopulaAssertion> {
    let tree = DepTree::new(sentence);
    let chunks = chunks_of(&tree);
    let phrase = |i: usize| {
        chunks.iter().find(|np| np.head_token == i).cloned().unwrap_or_else(|| phrase_at(&tree, i))
    };
    let subject_of = |i: usize| {
        tree.first_child_with(i, |c| c.base_deprel() == "nsubj" && c.deprel != "nsubj:pass")
    };

    let mut out = Vec::new();
    for i in 1..=tree.len() {
        let t = tree.token(i);
        // (predicate, clause head whose dependents hold subject and negation)
        let found = if let Some(cop) = tree.first_child_with(i, |c| c.deprel == "cop") {
            subject_of(i).map(|s| (i, s, vec![i, cop]))
        } else if t.lemma == "be" && !matches!(t.base_deprel(), "cop" | "aux") {
            tree.first_child_with(i, |c| matches!(c.deprel.as_str(), "attr" | "acomp"))
                .and_then(|p| subject_of(i).map(|s| (p, s, vec![i, p])))
        } else {
            None
        };
        let Some((pred, subj, scope)) = found else { continue };

        let predicate = phrase(pred);
        let indefinite = tree
            .children_with(pred, |c| c.base_deprel() == "det")
            .any(|d| matches!(tree.token(d).lemma.as_str(), "a" | "an"));
        let relation = if indefinite && tree.is_nominal(pred) {
            CopulaRelation::IsA
        } else {
            CopulaRelation::Attribute
        };
        let negated = scope
            .iter()
            .flat_map(|&h| tree.children(h).iter().copied())
            .any(|c| is_negator(tree.token(c)));
        out.push(CopulaAssertion {
            id: format!("{document_id}:{}:{pred}", sentence.sentence_id),
            subject: phrase(subj),
            predicate,
            relation,
            negated,
            sentence_ordinal: ordinal,
        });
    }
    out
}
