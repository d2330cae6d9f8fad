//! Block transition graphs for full shifts and shifts of finite type.

use crate::bitset::BitSet;
use crate::word::{code_word, word_code, Word};

/// Nodes are the allowed blocks of length `block_len` that begin an
/// infinite path; an edge `u -> v` reads one symbol. A full shift has
/// `block_len = 0` and a single node with a loop per symbol.
#[derive(Clone, Debug)]
pub struct BlockGraph {
    p: usize,
    block_len: usize,
    /// Block word of every live node.
    nodes: Vec<Vec<u8>>,
    /// `succ[node * p + symbol]`.
    succ: Vec<Option<u32>>,
}

impl BlockGraph {
    pub fn new(p: usize, forbidden: &[Word]) -> Self {
        let m_f = forbidden.iter().map(Word::len).max().unwrap_or(1);
        let block_len = m_f.saturating_sub(1);
        let has_forbidden =
            |w: &[u8]| forbidden.iter().any(|f| !f.is_empty() && w.windows(f.len()).any(|x| x == f.symbols()));

        let total = p.pow(block_len as u32);
        let mut allowed = vec![false; total];
        for (code, slot) in allowed.iter_mut().enumerate() {
            *slot = !has_forbidden(code_word(code, block_len, p).symbols());
        }
        let mut succ_all = vec![None; total * p];
        for code in 0..total {
            if !allowed[code] {
                continue;
            }
            let mut w = code_word(code, block_len, p).into_symbols();
            for c in 0..p {
                w.push(c as u8);
                if !has_forbidden(&w) {
                    let next = word_code(&w[1..], p);
                    succ_all[code * p + c] = Some(next);
                }
                w.pop();
            }
        }

        // Trim nodes without an infinite forward path.
        let mut live = allowed;
        loop {
            let mut changed = false;
            for code in 0..total {
                if live[code] && !(0..p).any(|c| succ_all[code * p + c].is_some_and(|n| live[n])) {
                    live[code] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }

        let mut index = vec![u32::MAX; total];
        let mut nodes = Vec::new();
        for code in 0..total {
            if live[code] {
                index[code] = nodes.len() as u32;
                nodes.push(code_word(code, block_len, p).into_symbols());
            }
        }
        let mut succ = vec![None; nodes.len() * p];
        for (i, node) in nodes.iter().enumerate() {
            let code = word_code(node, p);
            for c in 0..p {
                if let Some(n) = succ_all[code * p + c].filter(|&n| live[n]) {
                    succ[i * p + c] = Some(index[n]);
                }
            }
        }
        BlockGraph {
            p,
            block_len,
            nodes,
            succ,
        }
    }

    pub fn alphabet_size(&self) -> usize {
        self.p
    }

    pub fn block_len(&self) -> usize {
        self.block_len
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node_word(&self, node: usize) -> &[u8] {
        &self.nodes[node]
    }

    pub fn succ(&self, node: usize, symbol: u8) -> Option<usize> {
        self.succ[node * self.p + symbol as usize].map(|n| n as usize)
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Live nodes whose block agrees with `pattern` (missing entries free).
    pub fn matching_nodes(&self, pattern: &[Option<u8>]) -> BitSet {
        let mut set = BitSet::new(self.nodes.len());
        for (i, node) in self.nodes.iter().enumerate() {
            if node
                .iter()
                .zip(pattern)
                .all(|(&s, c)| c.is_none_or(|c| c == s))
            {
                set.insert(i);
            }
        }
        set
    }

    /// One step of the subset construction, reading `symbol` (or any).
    pub fn step(&self, from: &BitSet, symbol: Option<u8>) -> BitSet {
        let mut next = BitSet::new(self.nodes.len());
        for u in from.iter() {
            match symbol {
                Some(c) => {
                    if let Some(v) = self.succ(u, c) {
                        next.insert(v);
                    }
                }
                None => {
                    for c in 0..self.p as u8 {
                        if let Some(v) = self.succ(u, c) {
                            next.insert(v);
                        }
                    }
                }
            }
        }
        next
    }

    /// Number of allowed words of length `n`.
    pub fn count_words(&self, n: usize) -> u128 {
        if n <= self.block_len {
            let mut prefixes: Vec<&[u8]> = self.nodes.iter().map(|w| &w[..n]).collect();
            prefixes.sort_unstable();
            prefixes.dedup();
            return prefixes.len() as u128;
        }
        let mut counts = vec![1u128; self.nodes.len()];
        for _ in 0..n - self.block_len {
            let mut next = vec![0u128; self.nodes.len()];
            for (u, &c) in counts.iter().enumerate() {
                for s in 0..self.p as u8 {
                    if let Some(v) = self.succ(u, s) {
                        next[v] = next[v].saturating_add(c);
                    }
                }
            }
            counts = next;
        }
        counts.iter().fold(0u128, |a, &b| a.saturating_add(b))
    }

    /// All allowed words of length `n`, lexicographically sorted.
    pub fn words(&self, n: usize) -> Vec<Word> {
        if n <= self.block_len {
            let mut prefixes: Vec<Vec<u8>> = self.nodes.iter().map(|w| w[..n].to_vec()).collect();
            prefixes.sort_unstable();
            prefixes.dedup();
            return prefixes.into_iter().map(Word::new).collect();
        }
        let mut out = Vec::new();
        let mut buf = Vec::with_capacity(n);
        for (start, node) in self.nodes.iter().enumerate() {
            buf.clear();
            buf.extend_from_slice(node);
            self.extend_words(start, n, &mut buf, &mut out);
        }
        out.sort_unstable();
        out.into_iter().map(Word::new).collect()
    }

    fn extend_words(&self, node: usize, n: usize, buf: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if buf.len() == n {
            out.push(buf.clone());
            return;
        }
        for c in 0..self.p as u8 {
            if let Some(v) = self.succ(node, c) {
                buf.push(c);
                self.extend_words(v, n, buf, out);
                buf.pop();
            }
        }
    }

    /// Some allowed word agreeing with `pattern`, lexicographically least.
    pub fn realize(&self, pattern: &[Option<u8>]) -> Option<Word> {
        let n = pattern.len().max(self.block_len);
        let get = |i: usize| pattern.get(i).copied().flatten();
        let head: Vec<Option<u8>> = (0..self.block_len).map(get).collect();
        let mut layers = vec![self.matching_nodes(&head)];
        for i in self.block_len..n {
            let next = self.step(layers.last().unwrap(), get(i));
            layers.push(next);
        }
        if layers.last().unwrap().is_empty() {
            return None;
        }
        // Backward pass: nodes at each layer that reach a surviving end node.
        let steps = n - self.block_len;
        let mut good = vec![BitSet::new(self.nodes.len()); steps + 1];
        good[steps] = layers[steps].clone();
        for t in (0..steps).rev() {
            let sym = get(self.block_len + t);
            for u in layers[t].iter() {
                let ok = (0..self.p as u8)
                    .filter(|&c| sym.is_none_or(|s| s == c))
                    .any(|c| self.succ(u, c).is_some_and(|v| good[t + 1].contains(v)));
                if ok {
                    good[t].insert(u);
                }
            }
        }
        let mut node = good[0]
            .iter()
            .min_by(|&a, &b| self.nodes[a].cmp(&self.nodes[b]))?;
        let mut word = self.nodes[node].clone();
        for t in 0..steps {
            let sym = get(self.block_len + t);
            let (c, v) = (0..self.p as u8)
                .filter(|&c| sym.is_none_or(|s| s == c))
                .find_map(|c| self.succ(node, c).filter(|&v| good[t + 1].contains(v)).map(|v| (c, v)))?;
            word.push(c);
            node = v;
        }
        word.truncate(pattern.len());
        Some(Word::new(word))
    }
}
