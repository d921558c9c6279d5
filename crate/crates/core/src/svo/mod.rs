//! Rule-based subject-verb-object extraction over dependency trees.
//!
//! Every verb yields one [`SvoTriplet`] (more when its object is
//! coordinated). The triplet's [`SvoMetadata`] records the peripheral terms
//! that modify it: negation, modality, tense, enumeration, possession and
//! pronoun assignment. [`ClauseLink`]s nest subordinate clauses under the
//! verb that governs them; the root verb's triplet is the root of the
//! sentence's link forest.

mod chunk;
mod copula;
mod extract;
mod link;
mod metadata;
mod pronoun;
pub(crate) mod tree;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use chunk::chunk_noun_phrases;
pub use copula::{classify_copula, CopulaAssertion, CopulaRelation};
pub use extract::extract_svos;
pub use link::link_clauses;
pub use metadata::{extract_metadata, DeonticRule, DeonticTable};
pub use pronoun::resolve_pronouns;

use crate::ingest::{Document, Sentence};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NounPhrase {
    pub head_token: usize,
    pub token_indices: BTreeSet<usize>,
    /// Lemma of the head token; coordinated subjects join their conjuncts
    /// with the coordinator (`he_or_she`).
    pub lemma_key: String,
    /// UPOS of the head token.
    pub upos: String,
    /// Adjective and adverb lemmas inside the chunk, in surface order.
    pub modifier_lemmas: Vec<String>,
}

impl NounPhrase {
    pub fn is_pronoun(&self) -> bool {
        self.upos == "PRON"
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TriState {
    Yes,
    No,
    #[default]
    Unknown,
}

impl TriState {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Yes => "yes",
            Self::No => "no",
            Self::Unknown => "unknown",
        }
    }
}

impl fmt::Display for TriState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TriState {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "yes" => Ok(Self::Yes),
            "no" => Ok(Self::No),
            "unknown" => Ok(Self::Unknown),
            other => Err(format!("expected yes|no|unknown, got `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TenseTime {
    Past,
    Present,
    Future,
    #[default]
    Unspecified,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Antecedent {
    Resolved(String),
    Unresolved,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SvoMetadata {
    pub negated: bool,
    /// The token that licensed `negated`.
    pub negator: Option<String>,
    pub modality: Option<String>,
    pub tense_time: TenseTime,
    pub enumeration: Option<String>,
    /// (possessor lemma, possessed head lemma)
    pub possession: Vec<(String, String)>,
    pub pronoun_subject: bool,
    pub pronoun_object: bool,
    /// Pronoun token index -> antecedent.
    pub resolved_antecedents: BTreeMap<usize, Antecedent>,
    pub deontic_possible: TriState,
    pub deontic_necessary: TriState,
    /// 0-based ordinal of the host sentence within its document.
    pub temporal_relative: usize,
    pub temporal_absolute: Option<String>,
    pub incomplete: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClauseKind {
    NestedCausal,
    Conditional,
    OpenComplement,
    Coordinate,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClauseLink {
    pub kind: ClauseKind,
    pub parent_svo: String,
    pub child_svo: String,
    pub trigger_lemma: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SvoTriplet {
    /// `document_id:sentence_id:verb_index`, with `#k` appended for the k-th
    /// object conjunct (k >= 2).
    pub svo_id: String,
    pub document_id: String,
    pub sentence_id: String,
    pub subject: Option<NounPhrase>,
    /// The subject was borrowed from a governing or coordinated clause.
    pub subject_inherited: bool,
    pub verb_token: usize,
    pub verb_lemma: String,
    pub verb_upos: String,
    pub object: Option<NounPhrase>,
    pub prep_objects: Vec<(String, NounPhrase)>,
    pub metadata: SvoMetadata,
    /// Links in which this triplet is the child.
    pub clause_links: Vec<ClauseLink>,
}

impl SvoTriplet {
    pub fn role_phrases(&self) -> impl Iterator<Item = &NounPhrase> {
        self.subject
            .iter()
            .chain(self.object.iter())
            .chain(self.prep_objects.iter().map(|(_, np)| np))
    }
}

/// Triplets and copular assertions extracted from one sentence.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SentenceExtraction {
    pub triplets: Vec<SvoTriplet>,
    pub assertions: Vec<CopulaAssertion>,
}

/// Runs the full per-sentence extraction with a configurable deontic table.
#[derive(Debug, Clone, Default)]
pub struct Extractor {
    pub deontic: DeonticTable,
}

impl Extractor {
    pub fn new(deontic: DeonticTable) -> Self {
        Self { deontic }
    }

    pub fn extract_sentence(
        &self,
        document_id: &str,
        ordinal: usize,
        sentence: &Sentence,
    ) -> SentenceExtraction {
        let mut triplets = extract_svos(document_id, ordinal, sentence);
        for t in &mut triplets {
            t.metadata = extract_metadata(t, sentence, &self.deontic);
        }
        let links = link_clauses(sentence, &triplets);
        for link in links {
            if let Some(child) = triplets.iter_mut().find(|t| t.svo_id == link.child_svo) {
                child.clause_links.push(link);
            }
        }
        let assertions = classify_copula(document_id, ordinal, sentence);
        SentenceExtraction { triplets, assertions }
    }

    /// Extracts every sentence, then resolves pronouns across the document.
    pub fn extract_document(&self, document: &Document) -> SentenceExtraction {
        let mut out = SentenceExtraction::default();
        for (ordinal, sentence) in document.sentences.iter().enumerate() {
            let ex = self.extract_sentence(document.id(), ordinal, sentence);
            out.triplets.extend(ex.triplets);
            out.assertions.extend(ex.assertions);
        }
        resolve_pronouns(document, &mut out.triplets);
        out
    }
}

/// One line per triplet: `svo_id  subject  verb  object  flags`.
pub fn debug_record(t: &SvoTriplet) -> String {
    let lemma = |np: &Option<NounPhrase>| np.as_ref().map_or("-".to_string(), |n| n.lemma_key.clone());
    let mut flags = Vec::new();
    if t.metadata.negated {
        flags.push("neg".to_string());
    }
    if let Some(m) = &t.metadata.modality {
        flags.push(format!("modal={m}"));
    }
    if t.metadata.incomplete {
        flags.push("incomplete".to_string());
    }
    if t.subject_inherited {
        flags.push("inherited_subject".to_string());
    }
    for (p, np) in &t.prep_objects {
        flags.push(format!("{p}={}", np.lemma_key));
    }
    format!(
        "{}\t{}\t{}\t{}\t{}",
        t.svo_id,
        lemma(&t.subject),
        t.verb_lemma,
        lemma(&t.object),
        if flags.is_empty() { "-".to_string() } else { flags.join(",") }
    )
}
