//! Palindromic tree (eertree). Indexes every distinct nonempty palindromic
//! factor of a word in linear time. Used to cross-check the census obtained
//! by filtering a [`FactorSet`](crate::factors::FactorSet).

use std::collections::{BTreeMap, BTreeSet};

use crate::word::{Symbol, Word};

const IMAGINARY: usize = 0; // root of length -1
const EMPTY: usize = 1; // root of length 0

struct Node {
    len: isize,
    link: usize,
    next: [Option<usize>; 2],
    // end position (exclusive) of the first occurrence
    end: usize,
}

pub struct Eertree<'a> {
    word: &'a [Symbol],
    nodes: Vec<Node>,
}

impl<'a> Eertree<'a> {
    pub fn new(word: &'a [Symbol]) -> Self {
        let mut tree = Eertree {
            word,
            nodes: vec![
                Node {
                    len: -1,
                    link: IMAGINARY,
                    next: [None; 2],
                    end: 0,
                },
                Node {
                    len: 0,
                    link: IMAGINARY,
                    next: [None; 2],
                    end: 0,
                },
            ],
        };
        let mut suffix = EMPTY;
        for i in 0..word.len() {
            suffix = tree.add(i, suffix);
        }
        tree
    }

    fn find(&self, mut v: usize, i: usize) -> usize {
        loop {
            let len = self.nodes[v].len;
            let j = i as isize - len - 1;
            if j >= 0 && self.word[j as usize] == self.word[i] {
                return v;
            }
            v = self.nodes[v].link;
        }
    }

    fn add(&mut self, i: usize, suffix: usize) -> usize {
        let c = self.word[i] as usize;
        let parent = self.find(suffix, i);
        if let Some(existing) = self.nodes[parent].next[c] {
            return existing;
        }
        let len = self.nodes[parent].len + 2;
        let link = if len == 1 {
            EMPTY
        } else {
            let p = self.find(self.nodes[parent].link, i);
            self.nodes[p].next[c].expect("suffix palindrome already indexed")
        };
        let id = self.nodes.len();
        self.nodes.push(Node {
            len,
            link,
            next: [None; 2],
            end: i + 1,
        });
        self.nodes[parent].next[c] = Some(id);
        id
    }

    /// Number of distinct nonempty palindromic factors.
    pub fn len(&self) -> usize {
        self.nodes.len() - 2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Distinct palindromic factors with length at most `max_len`, by length.
    pub fn by_length(&self, max_len: usize) -> BTreeMap<usize, BTreeSet<Word>> {
        let mut out: BTreeMap<usize, BTreeSet<Word>> = BTreeMap::new();
        for node in &self.nodes[2..] {
            let len = node.len as usize;
            if len <= max_len {
                out.entry(len)
                    .or_default()
                    .insert(Word::from(&self.word[node.end - len..node.end]));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(w: &Word) -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        for i in 0..w.len() {
            for j in i + 1..=w.len() {
                let f = Word::from(&w[i..j]);
                if f.is_palindrome() {
                    out.insert(f);
                }
            }
        }
        out
    }

    #[test]
    fn matches_brute_force_on_all_short_words() {
        for len in 0..=10u32 {
            for bits in 0..(1u32 << len) {
                let w: Word = (0..len)
                    .map(|i| Symbol::from_bit(u64::from((bits >> i) & 1)).unwrap())
                    .collect();
                let tree = Eertree::new(&w);
                let got: BTreeSet<Word> =
                    tree.by_length(usize::MAX).into_values().flatten().collect();
                assert_eq!(got, brute(&w), "{w}");
                assert_eq!(tree.len(), got.len());
            }
        }
    }

    #[test]
    fn small_example() {
        let w: Word = "10110".parse().unwrap();
        let tree = Eertree::new(&w);
        // 1, 0, 101, 11, 0110
        assert_eq!(tree.len(), 5);
        assert_eq!(
            tree.by_length(2).values().map(BTreeSet::len).sum::<usize>(),
            3
        );
    }
}
