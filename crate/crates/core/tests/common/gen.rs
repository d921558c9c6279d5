//! Seeded generators for graphs, triplets and queries.

use std::collections::{BTreeMap, BTreeSet};

use lexgraph::ingest::{OpinionKind, Provenance};
use lexgraph::kgraph::{Edge, EdgeKind, KnowledgeGraph, NodeId, NodeKind, PosKind};
use lexgraph::query::{DeonticFilter, PathConstraint, Query, Selector};
use lexgraph::svo::{NounPhrase, SvoMetadata, SvoTriplet, TriState};
use rand::seq::IndexedRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Lemmas that stress quoting and id parsing.
pub const ODD_LEMMAS: [&str; 6] = ["o'neil", "a,b", "back\\slash", "quote\"d", "café", "x y"];

const POS: [PosKind; 3] = [PosKind::Noun, PosKind::Verb, PosKind::Mod];
const TRI: [TriState; 3] = [TriState::Yes, TriState::No, TriState::Unknown];

pub fn random_tristate(rng: &mut impl Rng) -> TriState {
    *TRI.choose(rng).unwrap()
}

pub fn random_opinion(rng: &mut impl Rng) -> OpinionKind {
    *OpinionKind::ALL.choose(rng).unwrap()
}

/// A graph of up to `max_nodes` nodes and `max_edges` edges with random
/// payloads. Lemmas repeat across parts of speech so that lemma selectors
/// can match several nodes. IS_A edges only point from lower to higher
/// node index, which keeps the hierarchy acyclic.
pub fn random_graph(rng: &mut impl Rng, max_nodes: usize, max_edges: usize) -> KnowledgeGraph {
    let mut g = KnowledgeGraph::default();
    let n_nodes = rng.random_range(1..=max_nodes);
    let lemma_pool = (n_nodes / 2).max(1);
    let mut ids: Vec<NodeId> = Vec::new();
    for _ in 0..n_nodes * 2 {
        if ids.len() == n_nodes {
            break;
        }
        let lemma = if rng.random_bool(0.05) {
            ODD_LEMMAS.choose(rng).unwrap().to_string()
        } else {
            format!("w{}", rng.random_range(0..lemma_pool))
        };
        let pos = *POS.choose(rng).unwrap();
        let (id, added) = g.upsert_node(&lemma, pos, pos.default_kind());
        if added {
            ids.push(id);
        }
    }
    let n_edges = rng.random_range(0..=max_edges);
    for _ in 0..n_edges {
        let a = rng.random_range(0..ids.len());
        let b = rng.random_range(0..ids.len());
        let mut kind = *EdgeKind::ALL.choose(rng).unwrap();
        if kind == EdgeKind::IsA && a >= b {
            kind = EdgeKind::Coordinate;
        }
        let mut e = Edge::new(kind, ids[a].clone(), ids[b].clone());
        if rng.random_bool(0.8) {
            e.svo_id = Some(format!("d:s:{}", rng.random_range(0..30)));
        }
        if rng.random_bool(0.2) {
            e.linked_svo = Some(format!("d:s:{}", rng.random_range(0..30)));
        }
        if rng.random_bool(0.3) {
            e.label = Some(["with", "to", "if", "but"].choose(rng).unwrap().to_string());
        }
        e.authority = rng.random_range(1..=9);
        e.opinion_kind = rng.random_bool(0.8).then(|| random_opinion(rng));
        e.negated = rng.random_bool(0.25);
        e.deontic_possible = random_tristate(rng);
        e.deontic_necessary = random_tristate(rng);
        e.temporal_relative = rng.random_bool(0.5).then(|| rng.random_range(0..5));
        e.temporal_absolute = rng.random_bool(0.1).then(|| format!("{}", rng.random_range(1990..2000)));
        if rng.random_bool(0.2) {
            e.modifiers = vec!["fast".into()];
        }
        e.id = e.canonical_id();
        g.insert_edge(e).expect("endpoints exist and IS_A is forward");
    }
    g
}

fn phrase(lemma: &str, head: usize, modifiers: Vec<String>) -> NounPhrase {
    NounPhrase {
        head_token: head,
        token_indices: BTreeSet::from([head]),
        lemma_key: lemma.to_string(),
        upos: "NOUN".into(),
        modifier_lemmas: modifiers,
    }
}

/// A triplet over small lemma pools so that identical statements recur.
/// Subjects are occasionally missing.
pub fn random_triplet(rng: &mut impl Rng, doc: &str, k: usize, pool: usize) -> SvoTriplet {
    let pick = |rng: &mut dyn rand::RngCore, p: &str| format!("{p}{}", rng.random_range(0..pool));
    let subject = rng.random_bool(0.9).then(|| phrase(&pick(rng, "s"), 1, Vec::new()));
    let object = rng.random_bool(0.8).then(|| {
        let m = if rng.random_bool(0.2) { vec!["big".to_string()] } else { Vec::new() };
        phrase(&pick(rng, "o"), 3, m)
    });
    let prep_objects = if rng.random_bool(0.2) { vec![("with".to_string(), phrase(&pick(rng, "p"), 5, Vec::new()))] } else { Vec::new() };
    let metadata = SvoMetadata {
        negated: rng.random_bool(0.4),
        deontic_possible: random_tristate(rng),
        deontic_necessary: random_tristate(rng),
        temporal_relative: k,
        ..SvoMetadata::default()
    };
    SvoTriplet {
        svo_id: format!("{doc}:s{k}:2"),
        document_id: doc.to_string(),
        sentence_id: format!("s{k}"),
        subject,
        subject_inherited: false,
        verb_token: 2,
        verb_lemma: pick(rng, "v"),
        verb_upos: "VERB".into(),
        object,
        prep_objects,
        metadata,
        clause_links: Vec::new(),
    }
}

pub fn random_provenance(rng: &mut impl Rng, doc: &str) -> Provenance {
    let mut p = Provenance::new(doc);
    p.source_level = ["supreme_court", "appellate", "unspecified"].choose(rng).unwrap().to_string();
    p.opinion_kind = random_opinion(rng);
    p
}

/// A graph exercising every record type: statements, hierarchy, explicit
/// and promoted assertions, quality classes and contradictions.
pub fn random_full_graph(rng: &mut impl Rng) -> KnowledgeGraph {
    let mut g = KnowledgeGraph::default();
    let docs = rng.random_range(0..4);
    for d in 0..docs {
        let doc = format!("doc{d}");
        let prov = random_provenance(rng, &doc);
        for k in 0..rng.random_range(0..8) {
            let t = random_triplet(rng, &doc, k, 4);
            g.add_svo(&t, &prov).unwrap();
        }
    }
    let classes: Vec<NodeId> = (0..rng.random_range(0..6))
        .map(|i| g.upsert_node(&format!("c{i}"), PosKind::Noun, NodeKind::Class).0)
        .collect();
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            if rng.random_bool(0.3) {
                g.assert_is_a(&classes[i], &classes[j]).unwrap();
            }
        }
        if rng.random_bool(0.5) {
            let c = NodeId::modifier(ODD_LEMMAS.choose(rng).unwrap());
            g.add_characteristic(&classes[i], &c, rng.random_bool(0.3)).unwrap();
        }
    }
    for c in &classes {
        let _ = g.promote_characteristics(c);
    }
    if rng.random_bool(0.3) {
        g.declare_quality("speed", &["fast", "slow"]).unwrap();
        g.assert_is_not(&NodeId::modifier("fast"), &NodeId::modifier("slow"), "faster_than").unwrap();
    }
    if rng.random_bool(0.3) {
        g.upsert_node("o'neil", PosKind::Noun, NodeKind::Entity);
        g.set_attribute(&NodeId::noun("o'neil"), "note", "tab\there").unwrap();
    }
    g.detect_contradictions().unwrap();
    g
}

fn random_selector(rng: &mut impl Rng, g: &KnowledgeGraph) -> Selector {
    let nodes: Vec<&NodeId> = g.nodes().map(|n| &n.id).collect();
    let id = (*nodes.choose(rng).unwrap()).clone();
    if rng.random_bool(0.5) {
        Selector::Node(id)
    } else {
        Selector::Lemma(id.lemma().to_string())
    }
}

/// A query with a random combination of constraints.
pub fn random_query(rng: &mut impl Rng, g: &KnowledgeGraph, max_len: usize) -> Query {
    let mut q = Query::new(random_selector(rng, g), random_selector(rng, g));
    q.max_length = rng.random_range(1..=max_len);
    if rng.random_bool(0.3) {
        let kinds: BTreeSet<EdgeKind> = EdgeKind::ALL.into_iter().filter(|_| rng.random_bool(0.6)).collect();
        q.constraints.push(PathConstraint::EdgeKindWhitelist(kinds));
    }
    if rng.random_bool(0.3) {
        q.constraints.push(PathConstraint::ForbidEdgeKind(*EdgeKind::ALL.choose(rng).unwrap()));
    }
    if rng.random_bool(0.2) {
        q.constraints.push(PathConstraint::MustPassNode(random_selector(rng, g)));
    }
    if rng.random_bool(0.3) {
        let kinds: BTreeSet<OpinionKind> = OpinionKind::ALL.into_iter().filter(|_| rng.random_bool(0.5)).collect();
        q.constraints.push(PathConstraint::OpinionKindFilter(kinds));
    }
    q.deontic = DeonticFilter {
        require_possible: rng.random_bool(0.2),
        require_necessary: rng.random_bool(0.1),
        exclude_negated: rng.random_bool(0.2),
    };
    if rng.random_bool(0.2) {
        q.authority_floor = Some(rng.random_range(1..=9));
    }
    q
}

/// Simple-path enumeration by breadth-first extension of partial paths,
/// ignoring every constraint except length. Returns (nodes, edge ids).
pub fn all_simple_paths(
    g: &KnowledgeGraph,
    sources: &BTreeSet<NodeId>,
    targets: &BTreeSet<NodeId>,
    max_len: usize,
) -> Vec<(Vec<NodeId>, Vec<Edge>)> {
    let mut incident: BTreeMap<&NodeId, Vec<(&Edge, &NodeId)>> = BTreeMap::new();
    for e in g.edges() {
        incident.entry(&e.from).or_default().push((e, &e.to));
        incident.entry(&e.to).or_default().push((e, &e.from));
    }
    let mut frontier: Vec<(Vec<NodeId>, Vec<Edge>)> = sources.iter().map(|s| (vec![s.clone()], Vec::new())).collect();
    let mut found = Vec::new();
    for _ in 0..=max_len {
        let mut next = Vec::new();
        for (nodes, edges) in frontier {
            let last = nodes.last().unwrap();
            if targets.contains(last) {
                found.push((nodes.clone(), edges.clone()));
            }
            if edges.len() == max_len {
                continue;
            }
            for (e, other) in incident.get(last).map(Vec::as_slice).unwrap_or_default() {
                if nodes.contains(other) {
                    continue;
                }
                let mut n2 = nodes.clone();
                n2.push((*other).clone());
                let mut e2 = edges.clone();
                e2.push((*e).clone());
                next.push((n2, e2));
            }
        }
        frontier = next;
    }
    found
}

/// The query's filters, restated edge by edge and path by path.
pub fn oracle_accepts(g: &KnowledgeGraph, q: &Query, nodes: &[NodeId], edges: &[Edge]) -> bool {
    for c in &q.constraints {
        let ok = match c {
            PathConstraint::EdgeKindWhitelist(k) => edges.iter().all(|e| k.contains(&e.kind)),
            PathConstraint::ForbidEdgeKind(k) => edges.iter().all(|e| e.kind != *k),
            PathConstraint::MustPassNode(sel) => nodes.iter().any(|n| match sel {
                Selector::Node(id) => n == id,
                Selector::Lemma(l) => g.node(n).unwrap().lemma == *l,
            }),
            PathConstraint::OpinionKindFilter(k) => {
                edges.iter().all(|e| e.opinion_kind.is_none_or(|o| k.contains(&o)))
            }
        };
        if !ok {
            return false;
        }
    }
    let role = |e: &Edge| matches!(e.kind, EdgeKind::SubjectOf | EdgeKind::ObjectOf | EdgeKind::PrepObject);
    edges.iter().all(|e| {
        !(q.deontic.exclude_negated && e.negated)
            && !(q.deontic.require_possible && role(e) && e.deontic_possible == TriState::No)
            && !(q.deontic.require_necessary && role(e) && e.deontic_necessary != TriState::Yes)
            && q.authority_floor.is_none_or(|f| e.authority >= f)
    })
}

const DEPRELS: [&str; 26] = [
    "nsubj", "obj", "dobj", "obl", "amod", "det", "case", "advmod", "neg", "aux", "mark", "conj", "cc", "xcomp",
    "advcl", "ccomp", "nmod:poss", "compound", "nsubj:pass", "obl:agent", "csubj", "cop", "nummod", "acl", "punct",
    "prep",
];

fn lemma_for(rng: &mut impl Rng, upos: &str) -> &'static str {
    let pool: &[&'static str] = match upos {
        "VERB" => &["use", "carry", "protect", "possess", "trade"],
        "NOUN" => &["gun", "house", "firearm", "truck"],
        "PROPN" => &["smith", "bailey"],
        "PRON" => &["he", "it", "they", "i", "my"],
        "ADJ" => &["active", "fast"],
        "ADV" => &["never", "knowingly", "not"],
        "AUX" => &["will", "must", "have", "may", "do", "be"],
        "PART" => &["not", "to"],
        "DET" => &["a", "the", "no"],
        "ADP" => &["with", "by", "in"],
        "CCONJ" => &["and", "or", "but"],
        "SCONJ" => &["if", "when"],
        _ => &["2001", "three"],
    };
    pool.choose(rng).unwrap()
}

/// A random well-formed dependency tree of 1..=max_tokens tokens.
pub fn random_sentence(rng: &mut impl Rng, max_tokens: usize, id: &str) -> lexgraph::ingest::Sentence {
    use lexgraph::ingest::{Sentence, Token};
    use rand::seq::SliceRandom;
    const UPOS: [&str; 13] =
        ["VERB", "VERB", "NOUN", "NOUN", "PROPN", "PRON", "ADJ", "ADV", "AUX", "PART", "DET", "ADP", "CCONJ"];
    let n = rng.random_range(1..=max_tokens);
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(rng);
    let mut heads = vec![0usize; n + 1];
    for k in 1..n {
        heads[order[k]] = order[rng.random_range(0..k)];
    }
    let tokens: Vec<Token> = (1..=n)
        .map(|i| {
            let upos = *UPOS.choose(rng).unwrap();
            let lemma = lemma_for(rng, upos).to_string();
            let mut feats = BTreeMap::new();
            if matches!(upos, "VERB" | "AUX") && rng.random_bool(0.5) {
                feats.insert("Tense".to_string(), ["Past", "Pres"].choose(rng).unwrap().to_string());
            }
            if upos == "NOUN" && rng.random_bool(0.3) {
                feats.insert("Number".to_string(), "Plur".to_string());
            }
            let deprel = if heads[i] == 0 { "root".to_string() } else { DEPRELS.choose(rng).unwrap().to_string() };
            let form = if rng.random_bool(0.2) { lemma.to_uppercase() } else { lemma.clone() };
            Token { index: i, form, lemma, upos: upos.to_string(), feats, head: heads[i], deprel }
        })
        .collect();
    let text = tokens.iter().map(|t| t.form.as_str()).collect::<Vec<_>>().join(" ");
    Sentence { sentence_id: id.to_string(), text, tokens }
}
