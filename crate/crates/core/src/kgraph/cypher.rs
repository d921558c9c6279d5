//! Cypher export: one statement per line, nodes first, then relationships.

use super::{Edge, KnowledgeGraph, Node, NodeKind};

/// Escapes a value for a single-quoted Cypher string literal.
pub fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\'' => out.push_str("\\'"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c => out.push(c),
        }
    }
    out
}

/// Inverse of [`escape`]. Returns `None` on a dangling or unknown escape.
pub fn unescape(s: &str) -> Option<String> {
    let mut out = String::with_capacity(s.len());
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        out.push(match chars.next()? {
            '\\' => '\\',
            '\'' => '\'',
            '"' => '"',
            'n' => '\n',
            'r' => '\r',
            't' => '\t',
            _ => return None,
        });
    }
    Some(out)
}

/// Reads the single-quoted literal starting at `s` (which must begin with
/// a quote) and returns its unescaped value and the remaining input.
pub fn read_string_literal(s: &str) -> Option<(String, &str)> {
    let body = s.strip_prefix('\'')?;
    let mut escaped = false;
    for (i, c) in body.char_indices() {
        match (escaped, c) {
            (true, _) => escaped = false,
            (false, '\\') => escaped = true,
            (false, '\'') => return Some((unescape(&body[..i])?, &body[i + 1..])),
            _ => {}
        }
    }
    None
}

fn quoted(s: &str) -> String {
    format!("'{}'", escape(s))
}

fn label(kind: NodeKind) -> &'static str {
    match kind {
        NodeKind::Entity => "Entity",
        NodeKind::Class => "Class",
        NodeKind::Method => "Method",
        NodeKind::Modifier => "Modifier",
        NodeKind::QualityClass => "QualityClass",
    }
}

fn node_statement(n: &Node) -> String {
    let mut props = vec![
        format!("id: {}", quoted(n.id.as_str())),
        format!("lemma: {}", quoted(&n.lemma)),
        format!("kind: {}", quoted(n.kind.as_str())),
    ];
    for (k, v) in &n.attributes {
        props.push(format!("`{}`: {}", k.replace('`', "``"), quoted(v)));
    }
    format!("CREATE (:{} {{{}}});", label(n.kind), props.join(", "))
}

fn edge_statement(e: &Edge) -> String {
    let mut props = vec![format!("id: {}", quoted(&e.id)), format!("authority: {}", e.authority)];
    props.push(format!("negated: {}", e.negated));
    for (key, value) in [
        ("svo_id", e.svo_id.as_deref()),
        ("linked_svo", e.linked_svo.as_deref()),
        ("label", e.label.as_deref()),
        ("opinion_kind", e.opinion_kind.map(|o| o.as_str())),
    ] {
        if let Some(v) = value {
            props.push(format!("{key}: {}", quoted(v)));
        }
    }
    props.push(format!("deontic_possible: {}", quoted(&e.deontic_possible.to_string())));
    props.push(format!("deontic_necessary: {}", quoted(&e.deontic_necessary.to_string())));
    if let Some(t) = e.temporal_relative {
        props.push(format!("temporal_relative: {t}"));
    }
    if let Some(t) = &e.temporal_absolute {
        props.push(format!("temporal_absolute: {}", quoted(t)));
    }
    if !e.modifiers.is_empty() {
        let list: Vec<String> = e.modifiers.iter().map(|m| quoted(m)).collect();
        props.push(format!("modifiers: [{}]", list.join(", ")));
    }
    format!(
        "MATCH (a {{id: {}}}), (b {{id: {}}}) CREATE (a)-[:{} {{{}}}]->(b);",
        quoted(e.from.as_str()),
        quoted(e.to.as_str()),
        e.kind,
        props.join(", ")
    )
}

impl KnowledgeGraph {
    /// One statement per node and per edge, each terminated by a newline.
    pub fn export_cypher(&self) -> String {
        let mut out = String::new();
        for n in self.nodes() {
            out.push_str(&node_statement(n));
            out.push('\n');
        }
        for e in self.edges() {
            out.push_str(&edge_statement(e));
            out.push('\n');
        }
        out
    }
}
