//! Naive pronoun assignment: a third-person pronoun takes the nearest
//! preceding noun-phrase head in the same document that agrees in number
//! (and in personhood: he/she prefer proper nouns, it prefers common nouns).
//! Everything else is left unresolved.

use super::chunk::chunks_of;
use super::tree::DepTree;
use super::{Antecedent, SvoTriplet};
use crate::ingest::{Document, Token};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PronounClass {
    Personal,
    Neuter,
    Plural,
}

fn classify(token: &Token) -> Option<PronounClass> {
    let key = |w: &str| match w {
        "he" | "him" | "his" | "himself" | "she" | "her" | "hers" | "herself" => {
            Some(PronounClass::Personal)
        }
        "it" | "its" | "itself" => Some(PronounClass::Neuter),
        "they" | "them" | "their" | "theirs" | "themselves" => Some(PronounClass::Plural),
        _ => None,
    };
    key(&token.lemma).or_else(|| key(&token.form.to_lowercase()))
}

struct Candidate {
    position: (usize, usize),
    lemma: String,
    proper: bool,
    plural: bool,
}

impl Candidate {
    fn agrees(&self, class: PronounClass) -> bool {
        match class {
            PronounClass::Personal => self.proper && !self.plural,
            PronounClass::Neuter => !self.proper && !self.plural,
            PronounClass::Plural => self.plural,
        }
    }
}

/// Fills `metadata.resolved_antecedents` for every pronoun phrase in the
/// triplets. Triplets must come from `document`.
pub fn resolve_pronouns(document: &Document, triplets: &mut [SvoTriplet]) {
    let mut candidates = Vec::new();
    for (ordinal, sentence) in document.sentences.iter().enumerate() {
        let tree = DepTree::new(sentence);
        for np in chunks_of(&tree) {
            if !matches!(np.upos.as_str(), "NOUN" | "PROPN") {
                continue;
            }
            let head = tree.token(np.head_token);
            candidates.push(Candidate {
                position: (ordinal, np.head_token),
                lemma: np.lemma_key.clone(),
                proper: head.upos == "PROPN",
                plural: head.feat("Number") == Some("Plur"),
            });
        }
    }

    for t in triplets.iter_mut() {
        let Some(ordinal) = document.sentences.iter().position(|s| s.sentence_id == t.sentence_id)
        else {
            continue;
        };
        let sentence = &document.sentences[ordinal];
        let pronoun_heads: Vec<usize> =
            t.role_phrases().filter(|np| np.is_pronoun()).map(|np| np.head_token).collect();
        for head in pronoun_heads {
            let Some(token) = sentence.token(head) else { continue };
            let antecedent = classify(token)
                .and_then(|class| {
                    candidates
                        .iter()
                        .filter(|c| c.position < (ordinal, head) && c.agrees(class))
                        .max_by_key(|c| c.position)
                })
                .map_or(Antecedent::Unresolved, |c| Antecedent::Resolved(c.lemma.clone()));
            t.metadata.resolved_antecedents.insert(head, antecedent);
        }
    }
}
