//! Noncommutative rewriting on path words: Buchberger-style completion with
//! the length-lexicographic order, overlaps processed shortest first.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeMap, BinaryHeap};

use crate::error::AlgebraError;
use crate::field::Field;

pub type Letter = u16;

/// A path word; letters are arrow ranks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn splice(prefix: &[Letter], middle: &[Letter], suffix: &[Letter]) -> Word {
        let mut v = Vec::with_capacity(prefix.len() + middle.len() + suffix.len());
        v.extend_from_slice(prefix);
        v.extend_from_slice(middle);
        v.extend_from_slice(suffix);
        Word(v)
    }
}

/// Terms in strictly decreasing order, no zero coefficients.
pub type Poly<E> = Vec<(Word, E)>;

#[derive(Debug, Clone)]
pub struct Rule<E> {
    pub lead: Word,
    /// `lead` rewrites to this combination of smaller words.
    pub tail: Poly<E>,
}

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone)]
struct Trie {
    alphabet: usize,
    next: Vec<u32>,
    rule: Vec<Option<usize>>,
}

impl Trie {
    fn new(alphabet: usize) -> Self {
        Trie {
            alphabet,
            next: vec![NONE; alphabet],
            rule: vec![None],
        }
    }

    fn child(&self, node: usize, l: Letter) -> Option<usize> {
        let c = self.next[node * self.alphabet + l as usize];
        (c != NONE).then_some(c as usize)
    }

    fn insert(&mut self, w: &Word, rule: Option<usize>) {
        let mut node = 0;
        for &l in &w.0 {
            node = match self.child(node, l) {
                Some(c) => c,
                None => {
                    let c = self.rule.len();
                    self.rule.push(None);
                    self.next.extend(std::iter::repeat_n(NONE, self.alphabet));
                    self.next[node * self.alphabet + l as usize] = c as u32;
                    c
                }
            };
        }
        self.rule[node] = rule;
    }

    /// First rule whose lead occurs in `w`, with its position.
    fn find(&self, w: &[Letter]) -> Option<(usize, usize)> {
        for start in 0..w.len() {
            let mut node = 0;
            for &l in &w[start..] {
                match self.child(node, l) {
                    Some(c) => node = c,
                    None => break,
                }
                if let Some(r) = self.rule[node] {
                    return Some((r, start));
                }
            }
        }
        None
    }
}

/// A complete rewriting system: every word has a unique normal form.
#[derive(Debug, Clone)]
pub struct Rewriter<F: Field> {
    field: F,
    rules: Vec<Option<Rule<F::Elem>>>,
    trie: Trie,
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct Overlap {
    len: usize,
    seq: usize,
    left: usize,
    right: usize,
    shared: usize,
}

impl<F: Field> Rewriter<F> {
    /// Completes `relations`. Fails when an overlap longer than `cap` remains.
    pub fn complete(
        field: F,
        alphabet: usize,
        relations: Vec<Poly<F::Elem>>,
        cap: usize,
    ) -> Result<Self, AlgebraError> {
        let mut rw = Rewriter {
            field,
            rules: Vec::new(),
            trie: Trie::new(alphabet.max(1)),
        };
        let mut pending = relations;
        let mut heap: BinaryHeap<Reverse<Overlap>> = BinaryHeap::new();
        let mut seq = 0usize;
        loop {
            while let Some(p) = pending.pop() {
                rw.add_rule(p, &mut pending, &mut heap, &mut seq);
            }
            let Some(Reverse(o)) = heap.pop() else { break };
            if o.len > cap {
                return Err(AlgebraError::CapExceeded { cap });
            }
            let (Some(l), Some(r)) = (&rw.rules[o.left], &rw.rules[o.right]) else {
                continue;
            };
            let x = &l.lead.0[..l.lead.len() - o.shared];
            let z = &r.lead.0[o.shared..];
            let mut terms: Vec<(Word, F::Elem)> = l
                .tail
                .iter()
                .map(|(w, c)| (Word::splice(&[], &w.0, z), c.clone()))
                .collect();
            terms.extend(
                r.tail
                    .iter()
                    .map(|(w, c)| (Word::splice(x, &w.0, &[]), rw.field.neg(c))),
            );
            let s = rw.reduce(terms);
            if !s.is_empty() {
                pending.push(s);
            }
        }
        rw.interreduce();
        Ok(rw)
    }

    fn add_rule(
        &mut self,
        p: Poly<F::Elem>,
        pending: &mut Vec<Poly<F::Elem>>,
        heap: &mut BinaryHeap<Reverse<Overlap>>,
        seq: &mut usize,
    ) {
        let p = self.reduce(p);
        let Some((lead, lc)) = p.first().cloned() else { return };
        let inv = self.field.inv(&lc);
        let tail: Poly<F::Elem> = p[1..]
            .iter()
            .map(|(w, c)| (w.clone(), self.field.neg(&self.field.mul(c, &inv))))
            .collect();
        for i in 0..self.rules.len() {
            let divides = matches!(&self.rules[i], Some(r) if contains(&r.lead.0, &lead.0));
            if divides {
                let old = self.rules[i].take().expect("live rule");
                self.trie.insert(&old.lead, None);
                let mut poly = vec![(old.lead, self.field.one())];
                poly.extend(old.tail.into_iter().map(|(w, c)| (w, self.field.neg(&c))));
                pending.push(poly);
            }
        }
        let idx = self.rules.len();
        self.trie.insert(&lead, Some(idx));
        self.rules.push(Some(Rule { lead, tail }));
        let new = &self.rules[idx].as_ref().expect("just inserted").lead;
        let mut push = |left: usize, right: usize, a: &Word, b: &Word| {
            for shared in 1..a.len().min(b.len()) {
                if a.0[a.len() - shared..] == b.0[..shared] {
                    *seq += 1;
                    heap.push(Reverse(Overlap {
                        len: a.len() + b.len() - shared,
                        seq: *seq,
                        left,
                        right,
                        shared,
                    }));
                }
            }
        };
        for (j, r) in self.rules.iter().enumerate() {
            let Some(r) = r else { continue };
            push(idx, j, new, &r.lead);
            if j != idx {
                push(j, idx, &r.lead, new);
            }
        }
    }

    fn interreduce(&mut self) {
        for i in 0..self.rules.len() {
            if let Some(tail) = self.rules[i].as_ref().map(|r| r.tail.clone()) {
                let tail = self.reduce(tail);
                self.rules[i].as_mut().expect("live rule").tail = tail;
            }
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Live rules in insertion order.
    pub fn rules(&self) -> impl Iterator<Item = &Rule<F::Elem>> {
        self.rules.iter().flatten()
    }

    pub fn is_reducible(&self, w: &[Letter]) -> bool {
        self.trie.find(w).is_some()
    }

    /// Normal form of a linear combination of words.
    pub fn reduce(&self, terms: impl IntoIterator<Item = (Word, F::Elem)>) -> Poly<F::Elem> {
        let f = &self.field;
        let mut work: BTreeMap<Word, F::Elem> = BTreeMap::new();
        let push = |work: &mut BTreeMap<Word, F::Elem>, w: Word, c: F::Elem| {
            if f.is_zero(&c) {
                return;
            }
            match work.entry(w) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let s = f.add(e.get(), &c);
                    if f.is_zero(&s) {
                        e.remove();
                    } else {
                        *e.get_mut() = s;
                    }
                }
            }
        };
        for (w, c) in terms {
            push(&mut work, w, c);
        }
        let mut out = Vec::new();
        while let Some((w, c)) = work.pop_last() {
            match self.trie.find(&w.0) {
                Some((r, pos)) => {
                    let rule = self.rules[r].as_ref().expect("trie points at live rules");
                    let (pre, post) = (&w.0[..pos], &w.0[pos + rule.lead.len()..]);
                    for (t, d) in &rule.tail {
                        push(&mut work, Word::splice(pre, &t.0, post), f.mul(&c, d));
                    }
                }
                None => out.push((w, c)),
            }
        }
        out
    }
}

fn contains(hay: &[Letter], needle: &[Letter]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn w(v: &[Letter]) -> Word {
        Word(v.to_vec())
    }

    #[test]
    fn order_is_length_first() {
        assert!(w(&[5]) < w(&[0, 0]));
        assert!(w(&[0, 1]) < w(&[1, 0]));
    }

    #[test]
    fn commutative_loops_complete() {
        // xy = yx, x^2 = 0, y^2 = 0 on one vertex: dimension 4
        let f = PrimeField::new(7).unwrap();
        let rels = vec![
            vec![(w(&[1, 0]), 1), (w(&[0, 1]), 6)],
            vec![(w(&[0, 0]), 1)],
            vec![(w(&[1, 1]), 1)],
        ];
        let rw = Rewriter::complete(f, 2, rels, 16).unwrap();
        let nf = rw.reduce(vec![(w(&[1, 0]), 1)]);
        assert_eq!(nf, vec![(w(&[0, 1]), 1)]);
        assert!(rw.reduce(vec![(w(&[0, 1, 0]), 1)]).is_empty());
        assert!(rw.is_reducible(&[1, 0, 1]));
        assert!(!rw.is_reducible(&[0, 1]));
    }

    #[test]
    fn overlap_is_resolved() {
        // x^3 = x^2 on a loop
        let f = PrimeField::new(5).unwrap();
        let rels = vec![vec![(w(&[0, 0, 0]), 1), (w(&[0, 0]), 4)]];
        let rw = Rewriter::complete(f, 1, rels, 16).unwrap();
        assert_eq!(rw.reduce(vec![(w(&[0, 0, 0, 0]), 1)]), vec![(w(&[0, 0]), 1)]);
    }
}
