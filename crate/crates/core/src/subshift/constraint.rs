//! Incremental satisfiability of position constraints.
//!
//! Constraints arrive at nondecreasing positions; each one asks for one of
//! several words to be read there. A [`State`] summarises everything the
//! future needs to know, so callers can memoise on it.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::word::Word;

use super::graph::BlockGraph;
use super::{Repr, Subshift};

const FREE: u8 = u8::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Branch {
    /// Constraints on positions `cursor..`, `FREE` where unconstrained.
    pending: Vec<u8>,
    /// Possible graph nodes ending just before `cursor`; unused before start.
    nodes: BitSet,
}

/// Opaque search state; hashable for memoisation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct State(Inner);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Inner {
    Graph {
        cursor: usize,
        started: bool,
        branches: Vec<Branch>,
    },
    Windows {
        candidates: BitSet,
    },
}

#[derive(Debug)]
enum Kind<'a> {
    Graph(&'a BlockGraph),
    /// Every factor of length `span`, for substitution subshifts.
    Windows(Vec<Word>),
    /// Start positions in a generator prefix, with cached occurrence lists.
    Text {
        text: &'a [u8],
        starts: usize,
        occurrences: RefCell<HashMap<Vec<u8>, Rc<Vec<u32>>>>,
    },
}

/// Constraint checker for patterns inside `[0, span)`.
#[derive(Debug)]
pub struct ConstraintSystem<'a> {
    kind: Kind<'a>,
    span: usize,
}

impl<'a> ConstraintSystem<'a> {
    pub(super) fn new(shift: &'a Subshift, span: usize) -> Result<Self> {
        let kind = match &shift.repr {
            Repr::Graph(g) => Kind::Graph(g),
            Repr::Substitution(_) => Kind::Windows(shift.factors(span)?),
            Repr::Orbit(prefix) => {
                let text = prefix.symbols();
                if span > text.len() {
                    return Err(Error::SizeLimit(format!(
                        "span {span} exceeds generator prefix of length {}",
                        text.len()
                    )));
                }
                Kind::Text {
                    text,
                    starts: text.len() - span + 1,
                    occurrences: RefCell::new(HashMap::new()),
                }
            }
        };
        Ok(ConstraintSystem { kind, span })
    }

    pub fn span(&self) -> usize {
        self.span
    }

    pub fn initial(&self) -> State {
        State(match &self.kind {
            Kind::Graph(g) => Inner::Graph {
                cursor: 0,
                started: false,
                branches: vec![Branch {
                    pending: Vec::new(),
                    nodes: BitSet::new(g.node_count()),
                }],
            },
            Kind::Windows(ws) => Inner::Windows {
                candidates: BitSet::full(ws.len()),
            },
            Kind::Text { starts, .. } => Inner::Windows {
                candidates: BitSet::full(*starts),
            },
        })
    }

    /// Requires one of `words` at `pos`; `None` when nothing survives.
    pub fn apply(&self, state: &State, pos: usize, words: &[Word]) -> Result<Option<State>> {
        if let Some(w) = words.iter().find(|w| pos + w.len() > self.span) {
            return Err(Error::invalid(format!(
                "word {w} at {pos} leaves the span {}",
                self.span
            )));
        }
        match (&self.kind, &state.0) {
            (Kind::Graph(g), Inner::Graph { cursor, started, branches }) => {
                if pos < *cursor {
                    return Err(Error::invalid(format!("position {pos} before cursor {cursor}")));
                }
                let (mut cursor, mut started, mut branches) = (*cursor, *started, branches.clone());
                if !started && pos >= g.block_len() {
                    branches = branches.into_iter().filter_map(|b| start(g, b)).collect();
                    started = true;
                    cursor = g.block_len();
                }
                if started {
                    branches = branches
                        .into_iter()
                        .filter_map(|b| advance(g, b, pos - cursor))
                        .collect();
                    cursor = pos;
                }
                let mut next = Vec::new();
                for b in &branches {
                    for w in words {
                        if let Some(pending) = overlay(&b.pending, pos - cursor, w.symbols()) {
                            next.push(Branch {
                                pending,
                                nodes: b.nodes.clone(),
                            });
                        }
                    }
                }
                let branches: Vec<Branch> = merge(next)
                    .into_iter()
                    .filter(|b| feasible(g, started, b))
                    .collect();
                if branches.is_empty() {
                    return Ok(None);
                }
                Ok(Some(State(Inner::Graph {
                    cursor,
                    started,
                    branches,
                })))
            }
            (Kind::Windows(ws), Inner::Windows { candidates }) => {
                let mut next = BitSet::new(ws.len());
                for i in candidates.iter() {
                    let s = ws[i].symbols();
                    if words.iter().any(|w| &s[pos..pos + w.len()] == w.symbols()) {
                        next.insert(i);
                    }
                }
                Ok((!next.is_empty()).then_some(State(Inner::Windows { candidates: next })))
            }
            (Kind::Text { starts, .. }, Inner::Windows { candidates }) => {
                let mut next = BitSet::new(*starts);
                for w in words {
                    for &o in self.occurrences(w.symbols()).iter() {
                        let Some(t) = (o as usize).checked_sub(pos) else {
                            continue;
                        };
                        if t < *starts && candidates.contains(t) {
                            next.insert(t);
                        }
                    }
                }
                Ok((!next.is_empty()).then_some(State(Inner::Windows { candidates: next })))
            }
            _ => Err(Error::invalid("state belongs to a different constraint system")),
        }
    }

    /// Some allowed configuration meets every constraint so far.
    pub fn is_satisfiable(&self, state: &State) -> bool {
        match (&self.kind, &state.0) {
            (Kind::Graph(g), Inner::Graph { started, branches, .. }) => {
                branches.iter().any(|b| feasible(g, *started, b))
            }
            (Kind::Windows(_) | Kind::Text { .. }, Inner::Windows { candidates }) => !candidates.is_empty(),
            _ => false,
        }
    }

    /// Least allowed word of length `span` realising the chosen words.
    pub fn realize(&self, placed: &[(usize, &Word)]) -> Result<Option<Word>> {
        let mut pattern: Vec<Option<u8>> = vec![None; self.span];
        for &(pos, w) in placed {
            for (i, &c) in w.symbols().iter().enumerate() {
                let slot = pattern
                    .get_mut(pos + i)
                    .ok_or_else(|| Error::invalid(format!("word {w} at {pos} leaves the span")))?;
                match *slot {
                    Some(d) if d != c => return Ok(None),
                    _ => *slot = Some(c),
                }
            }
        }
        Ok(match &self.kind {
            Kind::Graph(g) => g.realize(&pattern),
            Kind::Windows(ws) => ws
                .iter()
                .find(|w| matches(w.symbols(), &pattern))
                .cloned(),
            Kind::Text { text, starts, .. } => (0..*starts)
                .map(|t| &text[t..t + self.span])
                .filter(|w| matches(w, &pattern))
                .min()
                .map(|w| Word::new(w.to_vec())),
        })
    }

    fn occurrences(&self, w: &[u8]) -> Rc<Vec<u32>> {
        let Kind::Text { text, occurrences, .. } = &self.kind else {
            unreachable!("occurrence lists belong to text systems")
        };
        if let Some(hit) = occurrences.borrow().get(w) {
            return Rc::clone(hit);
        }
        let list: Rc<Vec<u32>> = Rc::new(if w.is_empty() || w.len() > text.len() {
            Vec::new()
        } else {
            (0..=text.len() - w.len())
                .filter(|&i| &text[i..i + w.len()] == w)
                .map(|i| i as u32)
                .collect()
        });
        occurrences.borrow_mut().insert(w.to_vec(), Rc::clone(&list));
        list
    }
}

fn matches(window: &[u8], pattern: &[Option<u8>]) -> bool {
    window.iter().zip(pattern).all(|(&s, c)| c.is_none_or(|c| c == s))
}

fn feasible(g: &BlockGraph, started: bool, b: &Branch) -> bool {
    let b = if started { Some(b.clone()) } else { start(g, b.clone()) };
    b.and_then(|b| {
        let n = b.pending.len();
        advance(g, b, n)
    })
    .is_some()
}

fn overlay(pending: &[u8], at: usize, w: &[u8]) -> Option<Vec<u8>> {
    let mut out = pending.to_vec();
    if out.len() < at + w.len() {
        out.resize(at + w.len(), FREE);
    }
    for (i, &c) in w.iter().enumerate() {
        let slot = &mut out[at + i];
        if *slot != FREE && *slot != c {
            return None;
        }
        *slot = c;
    }
    Some(out)
}

fn start(g: &BlockGraph, mut b: Branch) -> Option<Branch> {
    let m = g.block_len();
    let head: Vec<Option<u8>> = (0..m)
        .map(|i| b.pending.get(i).copied().filter(|&c| c != FREE))
        .collect();
    b.nodes = g.matching_nodes(&head);
    b.pending.drain(..m.min(b.pending.len()));
    (!b.nodes.is_empty()).then_some(b)
}

fn advance(g: &BlockGraph, mut b: Branch, steps: usize) -> Option<Branch> {
    for i in 0..steps {
        let sym = b.pending.get(i).copied().filter(|&c| c != FREE);
        if sym.is_none() && b.nodes.is_full() && g.block_len() == 0 {
            continue;
        }
        b.nodes = g.step(&b.nodes, sym);
        if b.nodes.is_empty() {
            return None;
        }
    }
    b.pending.drain(..steps.min(b.pending.len()));
    Some(b)
}

fn merge(mut branches: Vec<Branch>) -> Vec<Branch> {
    for b in &mut branches {
        while b.pending.last() == Some(&FREE) {
            b.pending.pop();
        }
    }
    branches.sort_by(|a, b| a.pending.cmp(&b.pending));
    let mut out: Vec<Branch> = Vec::with_capacity(branches.len());
    for b in branches {
        match out.last_mut() {
            Some(last) if last.pending == b.pending => last.nodes.union_with(&b.nodes),
            _ => out.push(b),
        }
    }
    out
}
