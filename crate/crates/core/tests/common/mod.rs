#![allow(dead_code)]

pub mod gen;

use std::path::PathBuf;

use lexgraph::ingest::{parse_conllu_str, Document, Sentence, Token};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).expect("fixture readable")
}

pub fn fixture_docs(name: &str) -> Vec<Document> {
    parse_conllu_str(&fixture_text(name)).expect("fixture parses")
}

/// Builds a sentence from (form, lemma, upos, feats, head, deprel) rows.
pub fn sentence_from_rows(rows: &[(&str, &str, &str, &str, usize, &str)]) -> Sentence {
    let tokens = rows
        .iter()
        .enumerate()
        .map(|(i, &(form, lemma, upos, feats, head, deprel))| Token {
            index: i + 1,
            form: form.to_string(),
            lemma: lemma.to_lowercase(),
            upos: upos.to_string(),
            feats: feats
                .split('|')
                .filter(|f| !f.is_empty())
                .filter_map(|f| f.split_once('='))
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect(),
            head,
            deprel: deprel.to_string(),
        })
        .collect();
    Sentence { sentence_id: "s".into(), text: String::new(), tokens }
}

/// Runs the default pipeline over the named fixtures.
pub fn fixture_graph(names: &[&str]) -> lexgraph::kgraph::KnowledgeGraph {
    let docs: Vec<Document> = names.iter().flat_map(|n| fixture_docs(n)).collect();
    lexgraph::pipeline::Pipeline::default().build(&docs).expect("fixtures build").0
}
