mod common;

use common::{fixture_docs, sentence_from_rows};
use lexgraph::ingest::validate_tree;
use lexgraph::svo::{
    chunk_noun_phrases, classify_copula, extract_svos, link_clauses, Antecedent, ClauseKind,
    CopulaRelation, Extractor, SvoTriplet, TenseTime, TriState,
};

fn lemma(np: &Option<lexgraph::svo::NounPhrase>) -> &str {
    np.as_ref().map_or("-", |n| n.lemma_key.as_str())
}

fn roles(t: &SvoTriplet) -> (&str, &str, &str) {
    (lemma(&t.subject), t.verb_lemma.as_str(), lemma(&t.object))
}

fn bailey() -> Vec<SvoTriplet> {
    let docs = fixture_docs("bailey.conllu");
    Extractor::default().extract_document(&docs[0]).triplets
}

#[test]
fn bailey_parses_to_one_sixteen_token_sentence() {
    let docs = fixture_docs("bailey.conllu");
    assert_eq!(docs.len(), 1);
    assert_eq!(docs[0].sentences.len(), 1);
    let s = &docs[0].sentences[0];
    assert_eq!(s.tokens.len(), 16);
    let root = s.root().unwrap();
    assert_eq!((root.index, root.lemma.as_str()), (2, "use"));
    assert!(validate_tree(s).is_ok());
}

#[test]
fn bailey_chunks() {
    let docs = fixture_docs("bailey.conllu");
    let chunks = chunk_noun_phrases(&docs[0].sentences[0]);
    let keys: Vec<(&str, Vec<usize>)> = chunks
        .iter()
        .map(|np| (np.lemma_key.as_str(), np.token_indices.iter().copied().collect()))
        .collect();
    assert_eq!(
        keys,
        vec![
            ("i", vec![1]),
            ("gun", vec![3, 4]),
            ("house", vec![7, 8]),
            ("i", vec![10]),
            ("it", vec![16]),
        ]
    );
    assert!(chunks.iter().all(|np| np.modifier_lemmas.is_empty()));
}

#[test]
fn fast_dog_chunks_keep_modifiers() {
    let docs = fixture_docs("fast_dog.conllu");
    let chunks = chunk_noun_phrases(&docs[0].sentences[0]);
    assert_eq!(chunks.len(), 2);
    assert_eq!(chunks[0].lemma_key, "dog");
    assert_eq!(chunks[0].modifier_lemmas, vec!["fast"]);
    assert_eq!(chunks[1].lemma_key, "car");
    assert_eq!(chunks[1].modifier_lemmas, vec!["slow"]);
}

#[test]
fn no_nouns_no_chunks() {
    let s = sentence_from_rows(&[("Stop", "stop", "VERB", "", 0, "root")]);
    assert!(chunk_noun_phrases(&s).is_empty());
}

#[test]
fn bailey_triplets_and_metadata() {
    let ts = bailey();
    let got: Vec<_> = ts.iter().map(roles).collect();
    assert_eq!(got, vec![("i", "use", "gun"), ("i", "protect", "house"), ("i", "use", "it")]);

    let first = &ts[0].metadata;
    assert!(!first.negated);
    assert_eq!(first.enumeration.as_deref(), Some("a"));
    assert_eq!(first.tense_time, TenseTime::Present);

    assert!(ts[1].subject_inherited);
    assert_eq!(ts[1].metadata.possession, vec![("my".to_string(), "house".to_string())]);

    let third = &ts[2].metadata;
    assert!(third.negated);
    assert_eq!(third.negator.as_deref(), Some("never"));
    assert_eq!(third.modality.as_deref(), Some("have_to"));
    assert!(third.pronoun_subject && third.pronoun_object);
    assert_eq!(third.temporal_relative, 0);
    assert!(ts.iter().all(|t| !t.metadata.incomplete));
}

#[test]
fn bailey_clause_links() {
    let ts = bailey();
    let links: Vec<_> = ts.iter().flat_map(|t| t.clause_links.iter()).collect();
    assert_eq!(links.len(), 2);
    assert_eq!(links[0].kind, ClauseKind::NestedCausal);
    assert_eq!(links[0].parent_svo, "bailey:s1:2");
    assert_eq!(links[0].child_svo, "bailey:s1:6");
    assert_eq!(links[0].trigger_lemma.as_deref(), Some("to"));
    assert_eq!(links[1].kind, ClauseKind::Coordinate);
    assert_eq!(links[1].child_svo, "bailey:s1:15");
    assert_eq!(links[1].trigger_lemma.as_deref(), Some("but"));
}

#[test]
fn bailey_pronoun_uses_nearest_match() {
    // Nearest preceding singular common noun before "it" is "house"; the
    // hand-drawn schema in the source reads it as "gun". The shipped rule is
    // nearest-match, so "house" is frozen here.
    let ts = bailey();
    let third = &ts[2].metadata.resolved_antecedents;
    assert_eq!(third.get(&16), Some(&Antecedent::Resolved("house".into())));
    assert_eq!(third.get(&10), Some(&Antecedent::Unresolved));
    assert_eq!(ts[0].metadata.resolved_antecedents.get(&1), Some(&Antecedent::Unresolved));
}

#[test]
fn pronouns_across_sentences() {
    let input = "\
# newdoc id = d
# sent_id = 1
1\tSmith\tSmith\tPROPN\t_\tNumber=Sing\t2\tnsubj\t_\t_
2\tcarried\tcarry\tVERB\t_\tTense=Past\t0\troot\t_\t_
3\ta\ta\tDET\t_\t_\t4\tdet\t_\t_
4\tgun\tgun\tNOUN\t_\tNumber=Sing\t2\tobj\t_\t_

# sent_id = 2
1\tHe\the\tPRON\t_\t_\t2\tnsubj\t_\t_
2\tconcealed\tconceal\tVERB\t_\tTense=Past\t0\troot\t_\t_
3\tit\tit\tPRON\t_\t_\t2\tobj\t_\t_

# newdoc id = e
1\tIt\tit\tPRON\t_\t_\t2\tnsubj\t_\t_
2\trains\train\tVERB\t_\t_\t0\troot\t_\t_
";
    let docs = lexgraph::ingest::parse_conllu_str(input).unwrap();
    let ts = Extractor::default().extract_document(&docs[0]).triplets;
    let second = &ts[1].metadata.resolved_antecedents;
    assert_eq!(second.get(&1), Some(&Antecedent::Resolved("smith".into())));
    assert_eq!(second.get(&3), Some(&Antecedent::Resolved("gun".into())));
    assert_eq!(ts[1].metadata.temporal_relative, 1);

    let ts = Extractor::default().extract_document(&docs[1]).triplets;
    assert_eq!(ts[0].metadata.resolved_antecedents.get(&1), Some(&Antecedent::Unresolved));
}

#[test]
fn conditional_sentence() {
    let docs = fixture_docs("conditional.conllu");
    let ts = Extractor::default().extract_document(&docs[0]).triplets;
    let got: Vec<_> = ts.iter().map(roles).collect();
    assert_eq!(got, vec![("one", "carry", "firearm"), ("he_or_she", "possess", "it")]);
    let link = &ts[0].clause_links[0];
    assert_eq!(link.kind, ClauseKind::Conditional);
    assert_eq!(link.trigger_lemma.as_deref(), Some("if"));
    assert_eq!(link.parent_svo, ts[1].svo_id);
    assert!(ts[1].clause_links.is_empty());
}

#[test]
fn passive_maps_to_active_roles() {
    let docs = fixture_docs("passive.conllu");
    let passive = extract_svos("passive", 0, &docs[0].sentences[0]);
    let active = extract_svos("passive", 1, &docs[0].sentences[1]);
    assert_eq!(passive.len(), 1);
    assert_eq!(roles(&passive[0]), ("smith", "carry", "gun"));
    assert_eq!(roles(&passive[0]), roles(&active[0]));
    assert!(passive[0].prep_objects.is_empty());
}

#[test]
fn fast_dog_prep_object_and_modal() {
    let docs = fixture_docs("fast_dog.conllu");
    let ts = Extractor::default().extract_document(&docs[0]).triplets;
    assert_eq!(ts.len(), 1);
    assert_eq!(roles(&ts[0]), ("dog", "run", "-"));
    assert_eq!(ts[0].prep_objects[0].0, "alongside");
    assert_eq!(ts[0].prep_objects[0].1.lemma_key, "car");
    assert_eq!(ts[0].metadata.modality.as_deref(), Some("might"));
    assert_eq!(ts[0].metadata.deontic_possible, TriState::Yes);
}

#[test]
fn must_not_forbids() {
    let s = sentence_from_rows(&[
        ("he", "he", "PRON", "", 4, "nsubj"),
        ("must", "must", "AUX", "VerbType=Mod", 4, "aux"),
        ("not", "not", "PART", "Polarity=Neg", 4, "advmod"),
        ("carry", "carry", "VERB", "VerbForm=Inf", 0, "root"),
        ("it", "it", "PRON", "", 4, "obj"),
    ]);
    let ex = Extractor::default().extract_sentence("d", 0, &s);
    let m = &ex.triplets[0].metadata;
    assert!(m.negated);
    assert_eq!(m.modality.as_deref(), Some("must"));
    assert_eq!((m.deontic_possible, m.deontic_necessary), (TriState::No, TriState::Unknown));
}

#[test]
fn coordinated_objects_expand() {
    // Smith carried a gun and a knife
    let s = sentence_from_rows(&[
        ("Smith", "smith", "PROPN", "", 2, "nsubj"),
        ("carried", "carry", "VERB", "Tense=Past", 0, "root"),
        ("a", "a", "DET", "", 4, "det"),
        ("gun", "gun", "NOUN", "", 2, "obj"),
        ("and", "and", "CCONJ", "", 7, "cc"),
        ("a", "a", "DET", "", 7, "det"),
        ("knife", "knife", "NOUN", "", 4, "conj"),
    ]);
    let ex = Extractor::default().extract_sentence("d", 0, &s);
    let got: Vec<_> = ex.triplets.iter().map(roles).collect();
    assert_eq!(got, vec![("smith", "carry", "gun"), ("smith", "carry", "knife")]);
    assert_eq!(ex.triplets[1].svo_id, "d:s:2#2");
    let link = &ex.triplets[1].clause_links[0];
    assert_eq!((link.kind, link.trigger_lemma.as_deref()), (ClauseKind::Coordinate, Some("and")));
}

#[test]
fn open_complement_inherits_subject() {
    // He tried to hide the gun
    let s = sentence_from_rows(&[
        ("He", "he", "PRON", "", 2, "nsubj"),
        ("tried", "try", "VERB", "Tense=Past", 0, "root"),
        ("to", "to", "PART", "", 4, "mark"),
        ("hide", "hide", "VERB", "VerbForm=Inf", 2, "xcomp"),
        ("the", "the", "DET", "", 6, "det"),
        ("gun", "gun", "NOUN", "", 4, "obj"),
    ]);
    let ex = Extractor::default().extract_sentence("d", 0, &s);
    assert_eq!(roles(&ex.triplets[1]), ("he", "hide", "gun"));
    assert!(ex.triplets[1].subject_inherited);
    let link = &ex.triplets[1].clause_links[0];
    assert_eq!(link.kind, ClauseKind::OpenComplement);
    let links = link_clauses(&s, &ex.triplets);
    assert_eq!(links.len(), 1);
}

#[test]
fn verb_without_roles_is_incomplete() {
    let s = sentence_from_rows(&[("Stop", "stop", "VERB", "", 0, "root")]);
    let ts = extract_svos("d", 0, &s);
    assert_eq!(ts.len(), 1);
    assert!(ts[0].metadata.incomplete);
}

#[test]
fn single_clause_has_no_links() {
    let docs = fixture_docs("passive.conllu");
    let s = &docs[0].sentences[1];
    let ts = extract_svos("passive", 1, s);
    assert!(link_clauses(s, &ts).is_empty());
}

#[test]
fn copula_attribute_and_class_membership() {
    let docs = fixture_docs("copula.conllu");
    let a = classify_copula("c", 0, &docs[0].sentences[0]);
    assert_eq!(a.len(), 1);
    assert_eq!(a[0].subject.lemma_key, "use");
    assert_eq!(a[0].predicate.lemma_key, "employment");
    assert_eq!(a[0].predicate.modifier_lemmas, vec!["active"]);
    assert_eq!(a[0].relation, CopulaRelation::Attribute);
    // Copular clauses yield assertions, not triplets.
    assert!(extract_svos("c", 0, &docs[0].sentences[0]).is_empty());

    let none = &fixture_docs("passive.conllu")[0].sentences[1];
    assert!(classify_copula("p", 0, none).is_empty());
}

/// Ten hand-built copular sentences: (rows, subject, predicate, relation, negated).
#[test]
fn copula_fixture_table() {
    use CopulaRelation::{Attribute, IsA};
    type Row = (&'static str, &'static str, &'static str, &'static str, usize, &'static str);
    let cases: Vec<(Vec<Row>, &str, &str, CopulaRelation, bool)> = vec![
        // a gun is a firearm
        (vec![("a", "a", "DET", "", 2, "det"), ("gun", "gun", "NOUN", "", 5, "nsubj"), ("is", "be", "AUX", "", 5, "cop"), ("a", "a", "DET", "", 5, "det"), ("firearm", "firearm", "NOUN", "", 0, "root")], "gun", "firearm", IsA, false),
        // a rifle is an instrument
        (vec![("a", "a", "DET", "", 2, "det"), ("rifle", "rifle", "NOUN", "", 5, "nsubj"), ("is", "be", "AUX", "", 5, "cop"), ("an", "an", "DET", "", 5, "det"), ("instrument", "instrument", "NOUN", "", 0, "root")], "rifle", "instrument", IsA, false),
        // the gun is the weapon
        (vec![("the", "the", "DET", "", 2, "det"), ("gun", "gun", "NOUN", "", 5, "nsubj"), ("is", "be", "AUX", "", 5, "cop"), ("the", "the", "DET", "", 5, "det"), ("weapon", "weapon", "NOUN", "", 0, "root")], "gun", "weapon", Attribute, false),
        // use is active employment
        (vec![("use", "use", "NOUN", "", 4, "nsubj"), ("is", "be", "AUX", "", 4, "cop"), ("active", "active", "ADJ", "", 4, "amod"), ("employment", "employment", "NOUN", "", 0, "root")], "use", "employment", Attribute, false),
        // the gun is dangerous
        (vec![("the", "the", "DET", "", 2, "det"), ("gun", "gun", "NOUN", "", 4, "nsubj"), ("is", "be", "AUX", "", 4, "cop"), ("dangerous", "dangerous", "ADJ", "", 0, "root")], "gun", "dangerous", Attribute, false),
        // a knife is not a firearm
        (vec![("a", "a", "DET", "", 2, "det"), ("knife", "knife", "NOUN", "", 6, "nsubj"), ("is", "be", "AUX", "", 6, "cop"), ("not", "not", "PART", "", 6, "advmod"), ("a", "a", "DET", "", 6, "det"), ("firearm", "firearm", "NOUN", "", 0, "root")], "knife", "firearm", IsA, true),
        // barter is trade
        (vec![("barter", "barter", "NOUN", "", 3, "nsubj"), ("is", "be", "AUX", "", 3, "cop"), ("trade", "trade", "NOUN", "", 0, "root")], "barter", "trade", Attribute, false),
        // Smith is a defendant
        (vec![("Smith", "smith", "PROPN", "", 4, "nsubj"), ("is", "be", "AUX", "", 4, "cop"), ("a", "a", "DET", "", 4, "det"), ("defendant", "defendant", "NOUN", "", 0, "root")], "smith", "defendant", IsA, false),
        // spaCy style: a pistol is(root) a handgun(attr)
        (vec![("a", "a", "DET", "", 2, "det"), ("pistol", "pistol", "NOUN", "", 3, "nsubj"), ("is", "be", "AUX", "", 0, "root"), ("a", "a", "DET", "", 5, "det"), ("handgun", "handgun", "NOUN", "", 3, "attr")], "pistol", "handgun", IsA, false),
        // spaCy style: the truck is(root) large(acomp)
        (vec![("the", "the", "DET", "", 2, "det"), ("truck", "truck", "NOUN", "", 3, "nsubj"), ("is", "be", "AUX", "", 0, "root"), ("large", "large", "ADJ", "", 3, "acomp")], "truck", "large", Attribute, false),
    ];
    assert_eq!(cases.len(), 10);
    for (rows, subj, pred, rel, neg) in cases {
        let s = sentence_from_rows(&rows);
        let a = classify_copula("d", 0, &s);
        assert_eq!(a.len(), 1, "{subj} {pred}");
        assert_eq!(a[0].subject.lemma_key, subj);
        assert_eq!(a[0].predicate.lemma_key, pred);
        assert_eq!(a[0].relation, rel, "{subj} {pred}");
        assert_eq!(a[0].negated, neg, "{subj} {pred}");
        assert!(extract_svos("d", 0, &s).is_empty(), "{subj} {pred}");
    }
}
