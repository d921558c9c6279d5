//! CoNLL-U ingestion.
//!
//! Reads dependency-parsed text into [`Document`]s. Provenance travels in
//! comment lines:
//!
//! ```text
//! # newdoc id = bailey-majority
//! # meta::source_level = supreme_court
//! # meta::opinion_kind = majority
//! # meta::citation = Bailey v. United States, 516 U.S. 137 (1995)
//! # sent_id = s1
//! # text = I use a gun ...
//! 1	I	I	PRON	_	_	2	nsubj	_	_
//! ```
//!
//! Only the index, form, lemma, upos, feats, head and deprel columns are
//! consumed. Multiword-token ranges (`3-4`) and empty nodes (`5.1`) are
//! skipped.

#![allow(clippy::tabs_in_doc_comments)]

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::BufRead;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DEFAULT_SOURCE_LEVEL: &str = "unspecified";

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("line {line}: malformed token line: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("sentence {sentence}: head graph contains a cycle through tokens {tokens:?}")]
    CycleDetected { sentence: String, tokens: Vec<usize> },
    #[error("sentence {sentence}: multiple root tokens {roots:?}")]
    MultipleRoots { sentence: String, roots: Vec<usize> },
    #[error("sentence {sentence}: invalid dependency tree: {report}")]
    InvalidTree { sentence: String, report: String },
    #[error("unknown source level `{0}`")]
    UnknownSourceLevel(String),
    #[error("line {line}: unknown opinion kind `{value}`")]
    UnknownOpinionKind { line: usize, value: String },
    #[error("document {document}: duplicate sentence id `{sentence}`")]
    DuplicateSentenceId { document: String, sentence: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    /// 1-based position in the sentence.
    pub index: usize,
    pub form: String,
    /// Lowercased at parse time.
    pub lemma: String,
    pub upos: String,
    pub feats: BTreeMap<String, String>,
    /// Index of the syntactic parent, 0 for the root.
    pub head: usize,
    pub deprel: String,
}

impl Token {
    /// The relation label without its subtype (`nsubj:pass` -> `nsubj`).
    pub fn base_deprel(&self) -> &str {
        self.deprel.split(':').next().unwrap_or(&self.deprel)
    }

    pub fn feat(&self, key: &str) -> Option<&str> {
        self.feats.get(key).map(String::as_str)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sentence {
    pub sentence_id: String,
    pub text: String,
    pub tokens: Vec<Token>,
}

impl Sentence {
    pub fn token(&self, index: usize) -> Option<&Token> {
        index
            .checked_sub(1)
            .and_then(|i| self.tokens.get(i))
            .filter(|t| t.index == index)
            .or_else(|| self.tokens.iter().find(|t| t.index == index))
    }

    pub fn root(&self) -> Option<&Token> {
        self.tokens.iter().find(|t| t.head == 0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OpinionKind {
    Majority,
    Concurring,
    Dissenting,
}

impl OpinionKind {
    pub const ALL: [OpinionKind; 3] = [Self::Majority, Self::Concurring, Self::Dissenting];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Majority => "majority",
            Self::Concurring => "concurring",
            Self::Dissenting => "dissenting",
        }
    }
}

impl fmt::Display for OpinionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OpinionKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "majority" => Ok(Self::Majority),
            "concurring" | "concurrence" => Ok(Self::Concurring),
            "dissenting" | "dissent" => Ok(Self::Dissenting),
            other => Err(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub document_id: String,
    pub source_level: String,
    pub opinion_kind: OpinionKind,
    pub citation: String,
}

impl Provenance {
    pub fn new(document_id: impl Into<String>) -> Self {
        Self {
            document_id: document_id.into(),
            source_level: DEFAULT_SOURCE_LEVEL.to_string(),
            opinion_kind: OpinionKind::Majority,
            citation: String::new(),
        }
    }
}

/// Weights used to derive an authority metric for every statement.
///
/// The authority of a statement is `source_weight * opinion_weight`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuthorityConfig {
    pub source_weights: BTreeMap<String, u32>,
    pub opinion_weights: BTreeMap<OpinionKind, u32>,
}

impl Default for AuthorityConfig {
    fn default() -> Self {
        let source_weights = [("supreme_court", 3), ("appellate", 2), (DEFAULT_SOURCE_LEVEL, 1)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        let opinion_weights = [
            (OpinionKind::Majority, 3),
            (OpinionKind::Concurring, 2),
            (OpinionKind::Dissenting, 1),
        ]
        .into_iter()
        .collect();
        Self { source_weights, opinion_weights }
    }
}

impl AuthorityConfig {
    /// Checks that both maps are non-empty, all weights are at least 1 and
    /// every opinion kind has a weight.
    pub fn validate(&self) -> Result<(), String> {
        if self.source_weights.is_empty() {
            return Err("source_weights must not be empty".into());
        }
        if let Some((k, _)) = self.source_weights.iter().find(|(_, w)| **w == 0) {
            return Err(format!("source weight for `{k}` must be >= 1"));
        }
        for kind in OpinionKind::ALL {
            match self.opinion_weights.get(&kind) {
                None => return Err(format!("missing opinion weight for `{kind}`")),
                Some(0) => return Err(format!("opinion weight for `{kind}` must be >= 1")),
                Some(_) => {}
            }
        }
        Ok(())
    }

    pub fn authority(&self, provenance: &Provenance) -> Result<u32, IngestError> {
        let source = self
            .source_weights
            .get(&provenance.source_level)
            .ok_or_else(|| IngestError::UnknownSourceLevel(provenance.source_level.clone()))?;
        // validate() guarantees every opinion kind is present; fall back to 1
        // for hand-built configs that skipped it.
        let opinion = self.opinion_weights.get(&provenance.opinion_kind).copied().unwrap_or(1);
        Ok(source * opinion)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub provenance: Provenance,
    pub sentences: Vec<Sentence>,
}

impl Document {
    pub fn id(&self) -> &str {
        &self.provenance.document_id
    }
}

/// One violated tree invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeViolation {
    Empty,
    /// Token indices are not `1..=n` in order.
    BadIndex { position: usize, index: usize },
    SelfLoop(usize),
    DanglingHead { token: usize, head: usize },
    NoRoot,
    MultipleRoots(Vec<usize>),
    CycleDetected(Vec<usize>),
    EmptyLemma(usize),
}

impl fmt::Display for TreeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Empty => write!(f, "sentence has no tokens"),
            Self::BadIndex { position, index } => {
                write!(f, "token at position {position} has index {index}")
            }
            Self::SelfLoop(i) => write!(f, "token {i} is its own head"),
            Self::DanglingHead { token, head } => {
                write!(f, "token {token} points at missing head {head}")
            }
            Self::NoRoot => write!(f, "no root token"),
            Self::MultipleRoots(r) => write!(f, "multiple roots {r:?}"),
            Self::CycleDetected(c) => write!(f, "cycle through {c:?}"),
            Self::EmptyLemma(i) => write!(f, "token {i} has an empty lemma"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<TreeViolation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("ok");
        }
        let parts: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("; "))
    }
}

/// Checks the tree invariants of a sentence without modifying it.
pub fn validate_tree(sentence: &Sentence) -> ValidationReport {
    let mut violations = Vec::new();
    let tokens = &sentence.tokens;
    if tokens.is_empty() {
        violations.push(TreeViolation::Empty);
        return ValidationReport { violations };
    }
    let n = tokens.len();
    for (pos, t) in tokens.iter().enumerate() {
        if t.index != pos + 1 {
            violations.push(TreeViolation::BadIndex { position: pos + 1, index: t.index });
        }
        if t.lemma.is_empty() {
            violations.push(TreeViolation::EmptyLemma(t.index));
        }
        if t.head == t.index {
            violations.push(TreeViolation::SelfLoop(t.index));
        } else if t.head > n {
            violations.push(TreeViolation::DanglingHead { token: t.index, head: t.head });
        }
    }
    if !violations.is_empty() {
        // Index problems make head lookups meaningless.
        return ValidationReport { violations };
    }

    let roots: Vec<usize> = tokens.iter().filter(|t| t.head == 0).map(|t| t.index).collect();
    match roots.len() {
        0 => violations.push(TreeViolation::NoRoot),
        1 => {}
        _ => violations.push(TreeViolation::MultipleRoots(roots)),
    }

    // Walk up from every token; a walk that revisits a token is a cycle.
    // state: 0 = unvisited, 1 = on current walk, 2 = reaches the root.
    let mut state = vec![0u8; n + 1];
    let mut reported: BTreeSet<usize> = BTreeSet::new();
    for start in 1..=n {
        let mut walk = Vec::new();
        let mut cur = start;
        while cur != 0 && state[cur] == 0 {
            state[cur] = 1;
            walk.push(cur);
            cur = tokens[cur - 1].head;
        }
        if cur != 0 && state[cur] == 1 {
            let from = walk.iter().position(|&t| t == cur).unwrap_or(0);
            let mut cycle: Vec<usize> = walk[from..].to_vec();
            cycle.sort_unstable();
            if reported.insert(cycle[0]) {
                violations.push(TreeViolation::CycleDetected(cycle));
            }
        }
        for t in walk {
            state[t] = 2;
        }
    }
    ValidationReport { violations }
}

fn parse_feats(raw: &str) -> Result<BTreeMap<String, String>, String> {
    let mut feats = BTreeMap::new();
    if raw == "_" || raw.is_empty() {
        return Ok(feats);
    }
    for pair in raw.split('|') {
        let (k, v) = pair.split_once('=').ok_or_else(|| format!("bad feature `{pair}`"))?;
        feats.insert(k.to_string(), v.to_string());
    }
    Ok(feats)
}

fn parse_token(line: &str, line_no: usize) -> Result<Option<Token>, IngestError> {
    let malformed = |reason: String| IngestError::MalformedLine { line: line_no, reason };
    let cols: Vec<&str> = line.split('\t').collect();
    if cols.len() != 10 {
        return Err(malformed(format!("expected 10 tab-separated columns, found {}", cols.len())));
    }
    let id = cols[0];
    if id.contains('-') || id.contains('.') {
        return Ok(None);
    }
    let index: usize = id.parse().map_err(|_| malformed(format!("non-numeric id `{id}`")))?;
    if index == 0 {
        return Err(malformed("token id must be >= 1".into()));
    }
    let head: usize =
        cols[6].parse().map_err(|_| malformed(format!("non-numeric head `{}`", cols[6])))?;
    if head == index {
        return Err(malformed(format!("token {index} is its own head")));
    }
    let form = cols[1].to_string();
    let lemma = match cols[2] {
        "_" if form != "_" => form.to_lowercase(),
        l => l.to_lowercase(),
    };
    let feats = parse_feats(cols[5]).map_err(malformed)?;
    Ok(Some(Token {
        index,
        form,
        lemma,
        upos: cols[3].to_string(),
        feats,
        head,
        deprel: cols[7].to_string(),
    }))
}

struct DocBuilder {
    provenance: Provenance,
    sentences: Vec<Sentence>,
    ids: BTreeSet<String>,
}

impl DocBuilder {
    fn new(id: String) -> Self {
        Self { provenance: Provenance::new(id), sentences: Vec::new(), ids: BTreeSet::new() }
    }
}

#[derive(Default)]
struct SentenceBuilder {
    sent_id: Option<String>,
    text: Option<String>,
    tokens: Vec<Token>,
}

impl SentenceBuilder {
    fn is_empty(&self) -> bool {
        self.tokens.is_empty() && self.sent_id.is_none() && self.text.is_none()
    }
}

fn finish_sentence(
    docs: &mut Vec<DocBuilder>,
    pending: SentenceBuilder,
) -> Result<(), IngestError> {
    if pending.tokens.is_empty() {
        return Ok(());
    }
    if docs.is_empty() {
        docs.push(DocBuilder::new("doc-1".to_string()));
    }
    let doc = docs.last_mut().expect("document exists");
    let ordinal = doc.sentences.len() + 1;
    let sentence_id = pending.sent_id.unwrap_or_else(|| format!("s{ordinal}"));
    let text = pending.text.unwrap_or_else(|| {
        pending.tokens.iter().map(|t| t.form.as_str()).collect::<Vec<_>>().join(" ")
    });
    let sentence = Sentence { sentence_id: sentence_id.clone(), text, tokens: pending.tokens };

    let report = validate_tree(&sentence);
    for v in &report.violations {
        match v {
            TreeViolation::CycleDetected(tokens) => {
                return Err(IngestError::CycleDetected {
                    sentence: sentence_id,
                    tokens: tokens.clone(),
                })
            }
            TreeViolation::MultipleRoots(roots) => {
                return Err(IngestError::MultipleRoots {
                    sentence: sentence_id,
                    roots: roots.clone(),
                })
            }
            _ => {}
        }
    }
    if !report.is_ok() {
        return Err(IngestError::InvalidTree { sentence: sentence_id, report: report.to_string() });
    }
    if !doc.ids.insert(sentence_id.clone()) {
        return Err(IngestError::DuplicateSentenceId {
            document: doc.provenance.document_id.clone(),
            sentence: sentence_id,
        });
    }
    doc.sentences.push(sentence);
    Ok(())
}

fn comment_value<'a>(comment: &'a str, key: &str) -> Option<&'a str> {
    let rest = comment.strip_prefix(key)?;
    let rest = rest.trim_start();
    let rest = rest.strip_prefix('=')?;
    Some(rest.trim())
}

/// Parses a CoNLL-U stream into documents.
pub fn parse_conllu<R: BufRead>(input: R) -> Result<Vec<Document>, IngestError> {
    let mut docs: Vec<DocBuilder> = Vec::new();
    let mut pending = SentenceBuilder::default();

    for (i, line) in input.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            finish_sentence(&mut docs, std::mem::take(&mut pending))?;
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim();
            if let Some(id) = comment_value(comment, "newdoc id").or_else(|| {
                comment.strip_prefix("newdoc").filter(|r| r.trim().is_empty()).map(|_| "")
            }) {
                finish_sentence(&mut docs, std::mem::take(&mut pending))?;
                let id = if id.is_empty() { format!("doc-{}", docs.len() + 1) } else { id.to_string() };
                docs.push(DocBuilder::new(id));
            } else if let Some(v) = comment_value(comment, "sent_id") {
                pending.sent_id = Some(v.to_string());
            } else if let Some(v) = comment_value(comment, "text") {
                pending.text = Some(v.to_string());
            } else if let Some(v) = comment_value(comment, "meta::source_level") {
                current_doc(&mut docs).provenance.source_level = v.to_string();
            } else if let Some(v) = comment_value(comment, "meta::opinion_kind") {
                let kind = v
                    .parse()
                    .map_err(|value| IngestError::UnknownOpinionKind { line: line_no, value })?;
                current_doc(&mut docs).provenance.opinion_kind = kind;
            } else if let Some(v) = comment_value(comment, "meta::citation") {
                current_doc(&mut docs).provenance.citation = v.to_string();
            }
            continue;
        }
        if let Some(token) = parse_token(line, line_no)? {
            pending.tokens.push(token);
        }
    }
    if !pending.is_empty() {
        finish_sentence(&mut docs, pending)?;
    }

    Ok(docs
        .into_iter()
        .filter(|d| !d.sentences.is_empty())
        .map(|d| Document { provenance: d.provenance, sentences: d.sentences })
        .collect())
}

fn current_doc(docs: &mut Vec<DocBuilder>) -> &mut DocBuilder {
    if docs.is_empty() {
        docs.push(DocBuilder::new("doc-1".to_string()));
    }
    docs.last_mut().expect("document exists")
}

pub fn parse_conllu_str(input: &str) -> Result<Vec<Document>, IngestError> {
    parse_conllu(input.as_bytes())
}

/// Parses and additionally checks every document's source level against
/// `config`.
pub fn parse_conllu_checked<R: BufRead>(
    input: R,
    config: &AuthorityConfig,
) -> Result<Vec<Document>, IngestError> {
    let docs = parse_conllu(input)?;
    for doc in &docs {
        if !config.source_weights.contains_key(&doc.provenance.source_level) {
            return Err(IngestError::UnknownSourceLevel(doc.provenance.source_level.clone()));
        }
    }
    Ok(docs)
}

/// Writes documents back as CoNLL-U. Unconsumed columns are written as `_`.
pub fn write_conllu(docs: &[Document]) -> String {
    let mut out = String::new();
    for doc in docs {
        let p = &doc.provenance;
        out.push_str(&format!("# newdoc id = {}\n", p.document_id));
        out.push_str(&format!("# meta::source_level = {}\n", p.source_level));
        out.push_str(&format!("# meta::opinion_kind = {}\n", p.opinion_kind));
        if !p.citation.is_empty() {
            out.push_str(&format!("# meta::citation = {}\n", p.citation));
        }
        for s in &doc.sentences {
            out.push_str(&format!("# sent_id = {}\n", s.sentence_id));
            out.push_str(&format!("# text = {}\n", s.text));
            for t in &s.tokens {
                let feats = if t.feats.is_empty() {
                    "_".to_string()
                } else {
                    t.feats.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join("|")
                };
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\t_\t{}\t{}\t{}\t_\t_\n",
                    t.index, t.form, t.lemma, t.upos, feats, t.head, t.deprel
                ));
            }
            out.push('\n');
        }
    }
    out
}
