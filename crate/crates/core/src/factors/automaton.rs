//! Suffix automaton over the binary alphabet, used only to count distinct
//! factors per length. Serves as a fast path that must agree with the
//! hash-set extraction in the parent module.

use crate::word::Symbol;

#[derive(Clone, Copy)]
struct State {
    len: usize,
    link: Option<usize>,
    next: [Option<usize>; 2],
}

pub struct SuffixAutomaton {
    states: Vec<State>,
    last: usize,
}

impl SuffixAutomaton {
    pub fn new(word: &[Symbol]) -> Self {
        let mut sam = SuffixAutomaton {
            states: Vec::with_capacity(2 * word.len() + 1),
            last: 0,
        };
        sam.states.push(State {
            len: 0,
            link: None,
            next: [None; 2],
        });
        for &s in word {
            sam.extend(s as usize);
        }
        sam
    }

    fn extend(&mut self, c: usize) {
        let cur = self.states.len();
        self.states.push(State {
            len: self.states[self.last].len + 1,
            link: None,
            next: [None; 2],
        });
        let mut p = Some(self.last);
        while let Some(pi) = p {
            if self.states[pi].next[c].is_some() {
                break;
            }
            self.states[pi].next[c] = Some(cur);
            p = self.states[pi].link;
        }
        match p {
            None => self.states[cur].link = Some(0),
            Some(pi) => {
                let q = self.states[pi].next[c].unwrap();
                if self.states[pi].len + 1 == self.states[q].len {
                    self.states[cur].link = Some(q);
                } else {
                    let clone = self.states.len();
                    let mut st = self.states[q];
                    st.len = self.states[pi].len + 1;
                    self.states.push(st);
                    let mut p = Some(pi);
                    while let Some(pi) = p {
                        if self.states[pi].next[c] != Some(q) {
                            break;
                        }
                        self.states[pi].next[c] = Some(clone);
                        p = self.states[pi].link;
                    }
                    self.states[q].link = Some(clone);
                    self.states[cur].link = Some(clone);
                }
            }
        }
        self.last = cur;
    }

    /// `counts[n]` = number of distinct factors of length `n`, for `n ≤ max_len`.
    /// `counts[0]` is always 1 (the empty word).
    pub fn counts_by_length(&self, max_len: usize) -> Vec<usize> {
        // Each non-root state covers the lengths (len(link), len].
        let mut diff = vec![0isize; max_len + 2];
        for st in &self.states[1..] {
            let lo = self.states[st.link.unwrap()].len + 1;
            let hi = st.len.min(max_len);
            if lo <= hi {
                diff[lo] += 1;
                diff[hi + 1] -= 1;
            }
        }
        let mut counts = vec![0usize; max_len + 1];
        counts[0] = 1;
        let mut run = 0isize;
        for n in 1..=max_len {
            run += diff[n];
            counts[n] = run as usize;
        }
        counts
    }
}
