use crate::ingest::{Sentence, Token};

pub(crate) const NOMINAL_UPOS: [&str; 4] = ["NOUN", "PROPN", "PRON", "NUM"];

/// Closed set of lexical negators.
pub(crate) const NEGATORS: [&str; 6] = ["not", "never", "no", "n't", "neither", "nor"];

/// Child lists over a validated sentence. Index 0 is the virtual root.
pub(crate) struct DepTree<'a> {
    pub sentence: &'a Sentence,
    children: Vec<Vec<usize>>,
}

impl<'a> DepTree<'a> {
    pub fn new(sentence: &'a Sentence) -> Self {
        let n = sentence.tokens.len();
        let mut children = vec![Vec::new(); n + 1];
        for t in &sentence.tokens {
            if t.head <= n {
                children[t.head].push(t.index);
            }
        }
        for c in &mut children {
            c.sort_unstable();
        }
        Self { sentence, children }
    }

    pub fn len(&self) -> usize {
        self.sentence.tokens.len()
    }

    pub fn token(&self, index: usize) -> &'a Token {
        &self.sentence.tokens[index - 1]
    }

    pub fn children(&self, index: usize) -> &[usize] {
        &self.children[index]
    }

    pub fn children_with<'s>(
        &'s self,
        index: usize,
        pred: impl Fn(&Token) -> bool + 's,
    ) -> impl Iterator<Item = usize> + 's {
        self.children[index].iter().copied().filter(move |&c| pred(self.token(c)))
    }

    pub fn first_child_with(&self, index: usize, pred: impl Fn(&Token) -> bool) -> Option<usize> {
        self.children[index].iter().copied().find(|&c| pred(self.token(c)))
    }

    pub fn parent(&self, index: usize) -> usize {
        self.token(index).head
    }

    pub fn depth(&self, mut index: usize) -> usize {
        let mut d = 0;
        while index != 0 && d <= self.len() {
            index = self.parent(index);
            d += 1;
        }
        d
    }

    pub fn is_nominal(&self, index: usize) -> bool {
        NOMINAL_UPOS.contains(&self.token(index).upos.as_str())
    }
}

pub(crate) fn is_negator(token: &Token) -> bool {
    token.deprel == "neg"
        || NEGATORS.contains(&token.lemma.as_str())
        || NEGATORS.contains(&token.form.to_lowercase().as_str())
}
