use std::collections::BTreeSet;

use super::tree::DepTree;
use super::NounPhrase;
use crate::ingest::{Sentence, Token};

/// Relations that pull a dependent into its head's noun-phrase chunk.
pub(crate) fn is_chunk_relation(token: &Token) -> bool {
    matches!(token.base_deprel(), "det" | "amod" | "compound" | "nummod")
        || token.deprel == "nmod:poss"
}

fn is_modifier(token: &Token) -> bool {
    matches!(token.upos.as_str(), "ADJ" | "ADV") || token.base_deprel() == "amod"
}

pub(crate) fn phrase_at(tree: &DepTree<'_>, head: usize) -> NounPhrase {
    let mut members = BTreeSet::new();
    let mut stack = vec![head];
    while let Some(i) = stack.pop() {
        members.insert(i);
        for c in tree.children_with(i, is_chunk_relation) {
            stack.push(c);
        }
    }
    let modifier_lemmas = members
        .iter()
        .filter(|&&i| i != head && is_modifier(tree.token(i)))
        .map(|&i| tree.token(i).lemma.clone())
        .collect();
    let head_tok = tree.token(head);
    NounPhrase {
        head_token: head,
        token_indices: members,
        lemma_key: head_tok.lemma.clone(),
        upos: head_tok.upos.clone(),
        modifier_lemmas,
    }
}

/// One chunk per nominal token that is not itself a member of another chunk.
pub fn chunk_noun_phrases(sentence: &Sentence) -> Vec<NounPhrase> {
    let tree = DepTree::new(sentence);
    chunks_of(&tree)
}

pub(crate) fn chunks_of(tree: &DepTree<'_>) -> Vec<NounPhrase> {
    (1..=tree.len())
        .filter(|&i| tree.is_nominal(i))
        .filter(|&i| {
            let t = tree.token(i);
            !(is_chunk_relation(t) && t.head != 0 && tree.is_nominal(t.head))
        })
        .map(|i| phrase_at(tree, i))
        .collect()
}
