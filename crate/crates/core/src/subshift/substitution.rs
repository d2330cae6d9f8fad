//! Substitution subshifts: languages generated by iterating a morphism.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::word::Word;

#[derive(Clone, Debug)]
pub struct Substitution {
    p: usize,
    rules: Vec<Vec<u8>>,
    primitive: bool,
    /// Two-letter factors of the language.
    pairs: Vec<[u8; 2]>,
}

impl Substitution {
    pub fn new(p: usize, rules: &[Word]) -> Result<Self> {
        if rules.len() != p {
            return Err(Error::InvalidArgument(format!(
                "substitution needs {p} rules, got {}",
                rules.len()
            )));
        }
        for (a, r) in rules.iter().enumerate() {
            if r.is_empty() {
                return Err(Error::InvalidArgument(format!("rule for {a} is empty")));
            }
            r.check_alphabet(p)?;
        }
        let rules: Vec<Vec<u8>> = rules.iter().map(|w| w.symbols().to_vec()).collect();
        let mut sub = Substitution {
            p,
            rules,
            primitive: false,
            pairs: Vec::new(),
        };
        if !sub.is_growing() {
            return Err(Error::Unsupported(
                "substitution images must grow without bound under iteration".into(),
            ));
        }
        sub.primitive = sub.compute_primitive();
        sub.pairs = sub.compute_pairs();
        Ok(sub)
    }

    pub fn alphabet_size(&self) -> usize {
        self.p
    }

    pub fn rules(&self) -> &[Vec<u8>] {
        &self.rules
    }

    /// Some power of the incidence matrix is strictly positive.
    pub fn is_primitive(&self) -> bool {
        self.primitive
    }

    pub fn apply(&self, w: &[u8]) -> Vec<u8> {
        w.iter().flat_map(|&c| self.rules[c as usize].iter().copied()).collect()
    }

    fn is_growing(&self) -> bool {
        // Every symbol must eventually reach a symbol whose image has length ≥ 2.
        let mut grows: Vec<bool> = self.rules.iter().map(|r| r.len() >= 2).collect();
        loop {
            let mut changed = false;
            for a in 0..self.p {
                if !grows[a] && self.rules[a].iter().any(|&c| grows[c as usize]) {
                    grows[a] = true;
                    changed = true;
                }
            }
            if !changed {
                return grows.iter().all(|&g| g);
            }
        }
    }

    fn compute_primitive(&self) -> bool {
        let p = self.p;
        let base: Vec<Vec<bool>> = (0..p)
            .map(|a| (0..p).map(|b| self.rules[a].contains(&(b as u8))).collect())
            .collect();
        let mut power = base.clone();
        for _ in 0..(p - 1) * (p - 1) + 1 {
            if power.iter().all(|row| row.iter().all(|&x| x)) {
                return true;
            }
            let mut next = vec![vec![false; p]; p];
            for (i, row) in power.iter().enumerate() {
                for (k, &x) in row.iter().enumerate() {
                    if x {
                        for j in 0..p {
                            next[i][j] |= base[k][j];
                        }
                    }
                }
            }
            power = next;
        }
        power.iter().all(|row| row.iter().all(|&x| x))
    }

    fn compute_pairs(&self) -> Vec<[u8; 2]> {
        let mut pairs = BTreeSet::new();
        let mut frontier: Vec<Vec<u8>> = (0..self.p as u8).map(|a| vec![a]).collect();
        while let Some(w) = frontier.pop() {
            for f in self.apply(&w).windows(2) {
                let pair = [f[0], f[1]];
                if pairs.insert(pair) {
                    frontier.push(pair.to_vec());
                }
            }
        }
        pairs.into_iter().collect()
    }

    /// Distinct factors of length `n`, sorted.
    pub fn factors(&self, n: usize, max_bytes: usize) -> Result<Vec<Word>> {
        let mut out = BTreeSet::new();
        let mut bytes = 0usize;
        let mut collect = |text: &[u8], out: &mut BTreeSet<Vec<u8>>| -> Result<()> {
            if n == 0 {
                out.insert(Vec::new());
                return Ok(());
            }
            for w in text.windows(n) {
                if !out.contains(w) {
                    bytes += n;
                    if bytes > max_bytes {
                        return Err(Error::SizeLimit(format!(
                            "factor table of length {n} exceeds {max_bytes} bytes"
                        )));
                    }
                    out.insert(w.to_vec());
                }
            }
            Ok(())
        };
        // Iterate single letters until every image has length ≥ n − 1.
        let mut images: Vec<Vec<u8>> = (0..self.p as u8).map(|a| vec![a]).collect();
        loop {
            for img in &images {
                collect(img, &mut out)?;
            }
            if images.iter().all(|img| img.len() + 1 >= n) {
                break;
            }
            images = images.iter().map(|img| self.apply(img)).collect();
        }
        for &[c, d] in &self.pairs {
            let mut text = images[c as usize].clone();
            text.extend_from_slice(&images[d as usize]);
            collect(&text, &mut out)?;
        }
        Ok(out.into_iter().map(Word::new).collect())
    }
}
