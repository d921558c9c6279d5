use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::extract::predicates;
use super::tree::{is_negator, DepTree};
use super::{NounPhrase, SvoMetadata, SvoTriplet, TenseTime, TriState};
use crate::ingest::Sentence;

const MODALS: [&str; 11] =
    ["must", "shall", "may", "can", "might", "should", "will", "would", "could", "ought", "need"];

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeonticRule {
    #[serde(default)]
    pub possible: TriState,
    #[serde(default)]
    pub necessary: TriState,
}

/// Maps (modality, negated) to deontic flags. Anything not in the table is
/// unknown on both axes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeonticTable {
    rules: BTreeMap<(String, bool), DeonticRule>,
}

impl Default for DeonticTable {
    fn default() -> Self {
        let necessary = DeonticRule { possible: TriState::Unknown, necessary: TriState::Yes };
        let possible = DeonticRule { possible: TriState::Yes, necessary: TriState::Unknown };
        let forbidden = DeonticRule { possible: TriState::No, necessary: TriState::Unknown };
        let mut rules = BTreeMap::new();
        for m in ["must", "shall"] {
            rules.insert((m.to_string(), false), necessary);
            rules.insert((m.to_string(), true), forbidden);
        }
        for m in ["may", "can"] {
            rules.insert((m.to_string(), false), possible);
            rules.insert((m.to_string(), true), forbidden);
        }
        rules.insert(("might".to_string(), false), possible);
        Self { rules }
    }
}

impl DeonticTable {
    pub fn empty() -> Self {
        Self { rules: BTreeMap::new() }
    }

    pub fn set(&mut self, modality: &str, negated: bool, rule: DeonticRule) {
        self.rules.insert((modality.to_string(), negated), rule);
    }

    pub fn lookup(&self, modality: Option<&str>, negated: bool) -> DeonticRule {
        modality
            .and_then(|m| self.rules.get(&(m.to_string(), negated)))
            .copied()
            .unwrap_or_default()
    }

    /// Parses override keys of the form `must` or `must not`.
    pub fn apply_overrides(
        &mut self,
        overrides: &BTreeMap<String, DeonticRule>,
    ) -> Result<(), String> {
        for (key, rule) in overrides {
            let mut words = key.split_whitespace();
            let modal = words.next().ok_or_else(|| "empty deontic key".to_string())?;
            let negated = match words.next() {
                None => false,
                Some("not") => true,
                Some(other) => return Err(format!("bad deontic key `{key}` (unexpected `{other}`)")),
            };
            self.set(modal, negated, *rule);
        }
        Ok(())
    }
}

/// Tokens in the verb's clause, not descending into other verbs' clauses.
fn local_subtree(tree: &DepTree<'_>, verb: usize, preds: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut stack: Vec<usize> = tree.children(verb).to_vec();
    while let Some(i) = stack.pop() {
        if preds.contains(&i) {
            continue;
        }
        out.push(i);
        stack.extend_from_slice(tree.children(i));
    }
    out.sort_unstable();
    out
}

fn modality(tree: &DepTree<'_>, verb: usize) -> Option<String> {
    let aux: Vec<usize> = tree.children_with(verb, |c| c.base_deprel() == "aux").collect();
    if let Some(&m) = aux.iter().find(|&&a| {
        let t = tree.token(a);
        t.feat("VerbType") == Some("Mod") || MODALS.contains(&t.lemma.as_str())
    }) {
        return Some(tree.token(m).lemma.clone());
    }
    let to_mark = tree.first_child_with(verb, |c| c.base_deprel() == "mark" && c.lemma == "to");
    // "had to use": have attached as aux right before the infinitival "to".
    if let Some(to) = to_mark {
        if aux.iter().any(|&a| a + 1 == to && tree.token(a).lemma == "have") {
            return Some("have_to".to_string());
        }
        // "had to use" with "have" as the governing verb and an xcomp.
        let vt = tree.token(verb);
        if vt.base_deprel() == "xcomp" && vt.head != 0 && tree.token(vt.head).lemma == "have" {
            return Some("have_to".to_string());
        }
    }
    None
}

fn tense_of(value: Option<&str>) -> Option<TenseTime> {
    match value? {
        "Past" => Some(TenseTime::Past),
        "Pres" => Some(TenseTime::Present),
        "Fut" => Some(TenseTime::Future),
        _ => None,
    }
}

fn tense(tree: &DepTree<'_>, verb: usize) -> TenseTime {
    if let Some(t) = tense_of(tree.token(verb).feat("Tense")) {
        return t;
    }
    let aux: Vec<usize> =
        tree.children_with(verb, |c| matches!(c.base_deprel(), "aux" | "auxpass")).collect();
    if aux.iter().any(|&a| tree.token(a).lemma == "will") {
        return TenseTime::Future;
    }
    // The auxiliary closest before the verb carries the clause tense.
    let mut ordered = aux;
    ordered.sort_by_key(|&a| (a > verb, a.abs_diff(verb)));
    ordered
        .into_iter()
        .find_map(|a| tense_of(tree.token(a).feat("Tense")))
        .unwrap_or(TenseTime::Unspecified)
}

fn determiner(tree: &DepTree<'_>, np: &NounPhrase) -> Option<String> {
    tree.children_with(np.head_token, |c| c.base_deprel() == "det" && c.deprel != "det:poss")
        .chain(tree.children_with(np.head_token, |c| c.base_deprel() == "nummod"))
        .next()
        .map(|d| tree.token(d).lemma.clone())
}

fn looks_like_date(form: &str) -> bool {
    let parts: Vec<&str> = form.split('-').collect();
    let digits = |s: &str, n: usize| s.len() == n && s.bytes().all(|b| b.is_ascii_digit());
    match parts.as_slice() {
        [y] => digits(y, 4),
        [y, m] => digits(y, 4) && digits(m, 2),
        [y, m, d] => digits(y, 4) && digits(m, 2) && digits(d, 2),
        _ => false,
    }
}

/// Derives the metadata layer for `triplet` from its host sentence.
pub fn extract_metadata(triplet: &SvoTriplet, sentence: &Sentence, table: &DeonticTable) -> SvoMetadata {
    let tree = DepTree::new(sentence);
    let verb = triplet.verb_token;
    let preds = predicates(&tree);
    let local = local_subtree(&tree, verb, &preds);

    let negator = local.iter().map(|&i| tree.token(i)).find(|t| is_negator(t));
    let negated = negator.is_some();
    let modality = modality(&tree, verb);
    let rule = table.lookup(modality.as_deref(), negated);

    let enumeration = triplet
        .object
        .iter()
        .chain(triplet.prep_objects.iter().map(|(_, np)| np))
        .chain(triplet.subject.iter())
        .find_map(|np| determiner(&tree, np));

    let mut possession = Vec::new();
    for np in triplet.role_phrases() {
        for &i in &np.token_indices {
            let t = tree.token(i);
            if t.deprel == "nmod:poss" || t.deprel == "poss" {
                let possessed = tree.token(t.head).lemma.clone();
                possession.push((t.lemma.clone(), possessed));
            }
        }
    }

    let temporal_absolute = local
        .iter()
        .map(|&i| tree.token(i))
        .find(|t| t.upos == "NUM" && looks_like_date(&t.form))
        .map(|t| t.form.clone());

    SvoMetadata {
        negated,
        negator: negator.map(|t| t.lemma.clone()),
        modality,
        tense_time: tense(&tree, verb),
        enumeration,
        possession,
        pronoun_subject: triplet.subject.as_ref().is_some_and(NounPhrase::is_pronoun),
        pronoun_object: triplet.object.as_ref().is_some_and(NounPhrase::is_pronoun),
        resolved_antecedents: triplet.metadata.resolved_antecedents.clone(),
        deontic_possible: rule.possible,
        deontic_necessary: rule.necessary,
        temporal_relative: triplet.metadata.temporal_relative,
        temporal_absolute,
        incomplete: triplet.metadata.incomplete,
    }
}
