//! Infinite words avoiding a prescribed set of windows at every position.
//!
//! Given `A_n ⊆ Λ_p^m` with `|A_n| ≤ ℓ`, find `x` with `x[n, n+m-1] ∉ A_n`
//! for every `n`. Words of length `m` are stored as their base-`p` code.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::word::{code_word, word_code, Word};

/// Largest window table, `p^m`, the module will allocate.
pub const MAX_TABLE: usize = 1 << 22;

fn table_size(p: usize, m: usize) -> Result<usize> {
    let size = (p as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if size > MAX_TABLE as u128 {
        return Err(Error::SizeLimit(format!("{p}^{m} windows exceed {MAX_TABLE}")));
    }
    Ok(size as usize)
}

/// Smallest window length the guarantee covers for bound `ℓ`.
pub fn guaranteed_m(l: usize) -> usize {
    4 * l + 2
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AvoidanceInstance {
    p: usize,
    m: usize,
    l: usize,
    /// Sorted window codes forbidden at each position `n < N`.
    forbidden: Vec<Vec<u32>>,
    seed: Option<u64>,
}

impl AvoidanceInstance {
    pub fn explicit(p: usize, m: usize, l: usize, sets: &[Vec<Word>]) -> Result<Self> {
        check_params(p, m)?;
        let mut forbidden = Vec::with_capacity(sets.len());
        for (n, set) in sets.iter().enumerate() {
            let mut codes = Vec::with_capacity(set.len());
            for w in set {
                if w.len() != m {
                    return Err(Error::invalid(format!("word {w} at position {n} has length {} not {m}", w.len())));
                }
                w.check_alphabet(p)?;
                codes.push(word_code(w.symbols(), p) as u32);
            }
            codes.sort_unstable();
            codes.dedup();
            if codes.len() > l {
                return Err(Error::invalid(format!("position {n} forbids {} words, more than {l}", codes.len())));
            }
            forbidden.push(codes);
        }
        Ok(AvoidanceInstance {
            p,
            m,
            l,
            forbidden,
            seed: None,
        })
    }

    /// `min(ℓ, p^m)` distinct uniformly drawn windows at each of `positions` places.
    pub fn generated(p: usize, m: usize, l: usize, positions: usize, seed: u64) -> Result<Self> {
        let size = check_params(p, m)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = l.min(size);
        let forbidden = (0..positions)
            .map(|_| {
                let mut codes: Vec<u32> = sample(&mut rng, size, k).into_iter().map(|c| c as u32).collect();
                codes.sort_unstable();
                codes
            })
            .collect();
        Ok(AvoidanceInstance {
            p,
            m,
            l,
            forbidden,
            seed: Some(seed),
        })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn l(&self) -> usize {
        self.l
    }

    /// Number of positions with a stored set; later positions forbid nothing.
    pub fn positions(&self) -> usize {
        self.forbidden.len()
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn table_size(&self) -> usize {
        self.p.pow(self.m as u32)
    }

    pub fn codes_at(&self, n: usize) -> &[u32] {
        self.forbidden.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn is_forbidden(&self, n: usize, code: u32) -> bool {
        self.codes_at(n).binary_search(&code).is_ok()
    }

    pub fn words_at(&self, n: usize) -> Vec<Word> {
        self.codes_at(n)
            .iter()
            .map(|&c| code_word(c as usize, self.m, self.p))
            .collect()
    }

    pub fn is_guaranteed(&self) -> bool {
        self.m >= guaranteed_m(self.l)
    }

    fn forbidden_set(&self, n: usize) -> BitSet {
        let mut set = BitSet::new(self.table_size());
        for &c in self.codes_at(n) {
            set.insert(c as usize);
        }
        set
    }
}

fn check_params(p: usize, m: usize) -> Result<usize> {
    if p < 2 {
        return Err(Error::invalid(format!("alphabet size {p} is below 2")));
    }
    if m == 0 {
        return Err(Error::invalid("window length must be positive"));
    }
    table_size(p, m)
}

impl fmt::Display for AvoidanceInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {} {}", self.p, self.m, self.l, self.positions())?;
        if let Some(seed) = self.seed {
            return writeln!(f, "seed={seed}");
        }
        for n in 0..self.positions() {
            let words = self.words_at(n);
            if !words.is_empty() {
                let list: Vec<String> = words.iter().map(Word::to_string).collect();
                writeln!(f, "{n}: {}", list.join(","))?;
            }
        }
        Ok(())
    }
}

impl FromStr for AvoidanceInstance {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header `p m l N`"))?;
        let nums = header
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| Error::parse(hline, format!("bad header field {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let [p, m, l, positions] = nums[..] else {
            return Err(Error::parse(hline, "header needs four numbers `p m l N`"));
        };
        let mut sets: Vec<Vec<Word>> = vec![Vec::new(); positions];
        let mut seed = None;
        for (line, body) in lines {
            if let Some(s) = body.strip_prefix("seed=") {
                seed = Some(s.trim().parse::<u64>().map_err(|_| Error::parse(line, format!("bad seed {s:?}")))?);
                continue;
            }
            let (n, words) = body
                .split_once(':')
                .ok_or_else(|| Error::parse(line, format!("expected `n: w1,w2`, got {body:?}")))?;
            let n = n
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::parse(line, format!("bad position {n:?}")))?;
            if n >= positions {
                return Err(Error::parse(line, format!("position {n} outside 0..{positions}")));
            }
            for w in words.split(',').map(str::trim).filter(|w| !w.is_empty()) {
                sets[n].push(w.parse::<Word>().map_err(|e| Error::parse(line, e.to_string()))?);
            }
        }
        match seed {
            Some(seed) => {
                if sets.iter().any(|s| !s.is_empty()) {
                    return Err(Error::parse(hline, "seeded instances take no explicit sets"));
                }
                Self::generated(p, m, l, positions, seed)
            }
            None => Self::explicit(p, m, l, &sets),
        }
    }
}

/// One step of the window recursion: windows `c·a` with `a·c ∈ from` for some `a`.
fn slide(from: &BitSet, p: usize, size: usize) -> BitSet {
    let mut next = BitSet::new(size);
    let tail = size / p;
    for w in from.iter() {
        let base = (w % tail) * p;
        for a in 0..p {
            next.insert(base + a);
        }
    }
    next
}

/// `R_n`: windows at `n` reachable by a configuration valid on `[0, n+m-1]`.
pub fn viability(instance: &AvoidanceInstance, positions: usize) -> Vec<BitSet> {
    let (p, size) = (instance.p, instance.table_size());
    let mut out: Vec<BitSet> = Vec::with_capacity(positions);
    for n in 0..positions {
        let mut r = match out.last() {
            None => BitSet::full(size),
            Some(prev) => slide(prev, p, size),
        };
        for &c in instance.codes_at(n) {
            r.remove(c as usize);
        }
        out.push(r);
    }
    out
}

#[doc(hidden)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Fault {
    #[default]
    None,
    /// Feeds `C_{n-1}` instead of `C_n` into `B_{n+1}`.
    StaleC,
}

/// The sets `B_n`, `C_n` and the prefix decomposition `D_{n,k}`.
#[derive(Clone, Debug)]
pub struct Bookkeeping {
    pub p: usize,
    pub m: usize,
    pub b: Vec<BitSet>,
    pub c: Vec<BitSet>,
    /// `d[n][k]`: codes of the words of length `k` in `D_n`.
    pub d: Vec<Vec<Vec<u32>>>,
}

impl Bookkeeping {
    pub fn positions(&self) -> usize {
        self.b.len()
    }

    pub fn d_count(&self, n: usize, k: usize) -> usize {
        self.d[n][k].len()
    }
}

pub fn bookkeeping(instance: &AvoidanceInstance, positions: usize) -> Result<Bookkeeping> {
    bookkeeping_with(instance, positions, Fault::None)
}

#[doc(hidden)]
pub fn bookkeeping_with(instance: &AvoidanceInstance, positions: usize, fault: Fault) -> Result<Bookkeeping> {
    let (p, m) = (instance.p, instance.m);
    let size = table_size(p, m)?;
    let mut bk = Bookkeeping {
        p,
        m,
        b: Vec::with_capacity(positions),
        c: Vec::with_capacity(positions),
        d: Vec::with_capacity(positions),
    };
    for n in 0..positions {
        let mut b = instance.forbidden_set(n);
        if n > 0 {
            let feed = match fault {
                Fault::StaleC if n >= 2 => &bk.c[n - 2],
                _ => &bk.c[n - 1],
            };
            for c in feed.iter() {
                for a in 0..p {
                    b.insert(c * p + a);
                }
            }
        }
        let c = c_from_b(&b, p, size);
        bk.d.push(decompose(&c, p, m));
        bk.b.push(b);
        bk.c.push(c);
    }
    Ok(bk)
}

/// `C = {c ∈ Λ^{m-1} : Λc ⊆ B}`.
fn c_from_b(b: &BitSet, p: usize, size: usize) -> BitSet {
    let tail = size / p;
    let mut c = BitSet::new(tail);
    for code in 0..tail {
        if (0..p).all(|a| b.contains(a * tail + code)) {
            c.insert(code);
        }
    }
    c
}

/// Minimal prefixes `y` with `yΛ^{m-1-|y|} ⊆ C`, grouped by length.
fn decompose(c: &BitSet, p: usize, m: usize) -> Vec<Vec<u32>> {
    // full[k][y]: every extension of the length-k prefix y lies in C.
    let mut full: Vec<Vec<bool>> = vec![Vec::new(); m];
    full[m - 1] = (0..c.len()).map(|i| c.contains(i)).collect();
    for k in (0..m - 1).rev() {
        let below = &full[k + 1];
        full[k] = (0..below.len() / p)
            .map(|y| (0..p).all(|a| below[y * p + a]))
            .collect();
    }
    (0..m)
        .map(|k| {
            (0..full[k].len())
                .filter(|&y| full[k][y] && (k == 0 || !full[k - 1][y / p]))
                .map(|y| y as u32)
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsReport {
    pub positions: usize,
    pub max_c: usize,
    /// Largest `|D_{n,k}|` per `k`.
    pub max_d: Vec<usize>,
    /// First position whose `B_n` is all of `Λ_p^m`.
    pub saturated_at: Option<usize>,
}

fn violation(n: usize, what: impl fmt::Display) -> Error {
    Error::Invariant(format!("verify_bounds: {what} fails at n={n}"))
}

/// Re-derives the recursion and checks every counting bound.
pub fn verify_bounds(bk: &Bookkeeping, instance: &AvoidanceInstance) -> Result<BoundsReport> {
    let (p, m, l) = (bk.p, bk.m, instance.l);
    if (p, m) != (instance.p, instance.m) {
        return Err(Error::invalid("bookkeeping and instance disagree on p or m"));
    }
    let size = table_size(p, m)?;
    let r = viability(instance, bk.positions());
    let mut report = BoundsReport {
        positions: bk.positions(),
        max_c: 0,
        max_d: vec![0; m],
        saturated_at: None,
    };
    for n in 0..bk.positions() {
        let mut expect = instance.forbidden_set(n);
        if n > 0 {
            for c in bk.c[n - 1].iter() {
                for a in 0..p {
                    expect.insert(c * p + a);
                }
            }
        }
        if expect != bk.b[n] {
            return Err(violation(n, "B_n recursion"));
        }
        if c_from_b(&bk.b[n], p, size) != bk.c[n] {
            return Err(violation(n, "C_n definition"));
        }
        if bk.b[n] != r[n].complement() {
            return Err(violation(n, "B_n against the viability table"));
        }
        // D_n must tile C_n without overlap.
        let mut tiled = BitSet::new(size / p);
        let mut total = 0usize;
        for (k, ys) in bk.d[n].iter().enumerate() {
            let width = p.pow((m - 1 - k) as u32);
            for &y in ys {
                for i in 0..width {
                    tiled.insert(y as usize * width + i);
                }
                total += width;
            }
        }
        if tiled != bk.c[n] || total != bk.c[n].count() {
            return Err(violation(n, "D_n decomposition"));
        }
        let c = bk.c[n].count();
        report.max_c = report.max_c.max(c);
        if p * c > (n + 1) * l {
            return Err(violation(n, format!("|C_n| ≤ (n+1)ℓ/p with |C_n|={c}")));
        }
        for k in 1..m {
            let dk = bk.d_count(n, m - k);
            if dk > (1usize << (k - 1)) * l {
                return Err(violation(n, format!("|D_{{n,{}}}| ≤ 2^{}ℓ with size {dk}", m - k, k - 1)));
            }
        }
        if n > 0 {
            for k in 0..m {
                let rhs = l + (k + 1..m).map(|j| bk.d_count(n - 1, j)).sum::<usize>();
                if bk.d_count(n, k) > rhs {
                    return Err(violation(n, format!("|D_{{n,{k}}}| ≤ ℓ + Σ_{{j>{k}}} |D_{{n-1,j}}|")));
                }
            }
        }
        for (k, slot) in report.max_d.iter_mut().enumerate() {
            *slot = (*slot).max(bk.d_count(n, k));
        }
        if bk.b[n].is_full() && report.saturated_at.is_none() {
            report.saturated_at = Some(n);
            if instance.is_guaranteed() {
                return Err(violation(n, "B_n ≠ Λ_p^m"));
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Solved {
        x: Word,
        /// Committed windows that were later abandoned.
        backtracks: usize,
    },
    Exhausted {
        /// Deepest window position reached.
        position: usize,
        backtracks: usize,
    },
}

impl SolveOutcome {
    pub fn word(&self) -> Option<&Word> {
        match self {
            SolveOutcome::Solved { x, .. } => Some(x),
            SolveOutcome::Exhausted { .. } => None,
        }
    }
}

struct Solver<'a> {
    inst: &'a AvoidanceInstance,
    size: usize,
    last: usize,
    dead: HashSet<(usize, u32)>,
}

impl Solver<'_> {
    fn usable(&self, n: usize, w: u32) -> bool {
        !self.inst.is_forbidden(n, w) && !self.dead.contains(&(n, w))
    }

    fn step(&self, w: u32, a: usize) -> u32 {
        ((w as usize * self.inst.p + a) % self.size) as u32
    }

    /// Window `w` at `n` extends `depth` more steps (or to the end).
    fn probe(&mut self, n: usize, w: u32, depth: usize) -> bool {
        if depth == 0 || n == self.last {
            return true;
        }
        for a in 0..self.inst.p {
            let next = self.step(w, a);
            if self.usable(n + 1, next) && self.probe(n + 1, next, depth - 1) {
                return true;
            }
        }
        self.dead.insert((n, w));
        false
    }
}

/// Lexicographically least word of length `len` avoiding every `A_n`.
///
/// A window is committed only if it survives `lookahead` further steps;
/// windows proven dead are remembered, so the search is exhaustive.
pub fn solve_prefix(instance: &AvoidanceInstance, len: usize, lookahead: usize) -> Result<SolveOutcome> {
    if lookahead == 0 {
        return Err(Error::invalid("lookahead must be positive"));
    }
    let (p, m) = (instance.p, instance.m);
    let size = table_size(p, m)?;
    if len < m {
        return Ok(SolveOutcome::Solved {
            x: Word::zeros(len),
            backtracks: 0,
        });
    }
    let mut s = Solver {
        inst: instance,
        size,
        last: len - m,
        dead: HashSet::new(),
    };
    let mut path: Vec<u32> = Vec::with_capacity(len - m + 1);
    let mut cursor = 0usize;
    let mut backtracks = 0usize;
    let mut deepest = 0usize;
    while path.len() <= s.last {
        let n = path.len();
        deepest = deepest.max(n);
        let limit = if n == 0 { size } else { p };
        let mut chosen = None;
        while cursor < limit {
            let w = if n == 0 { cursor as u32 } else { s.step(path[n - 1], cursor) };
            cursor += 1;
            if s.usable(n, w) && s.probe(n, w, lookahead) {
                chosen = Some(w);
                break;
            }
        }
        match chosen {
            Some(w) => {
                path.push(w);
                cursor = 0;
            }
            None if n == 0 => {
                if instance.is_guaranteed() {
                    return Err(Error::Invariant(format!(
                        "no valid word of length {len} although m={m} ≥ 4ℓ+2 (dead at {deepest})"
                    )));
                }
                return Ok(SolveOutcome::Exhausted {
                    position: deepest,
                    backtracks,
                });
            }
            None => {
                let w = path.pop().expect("nonempty path");
                s.dead.insert((n - 1, w));
                backtracks += 1;
                cursor = if n - 1 == 0 { w as usize + 1 } else { w as usize % p + 1 };
            }
        }
    }
    let mut x = code_word(path[0] as usize, m, p).into_symbols();
    x.extend(path[1..].iter().map(|&w| (w as usize % p) as u8));
    let x = Word::new(x);
    if let Some(n) = first_violation(instance, &x) {
        return Err(Error::Invariant(format!("solver output hits a forbidden window at {n}")));
    }
    Ok(SolveOutcome::Solved { x, backtracks })
}

/// Sliding scan: first `n` with `x[n, n+m-1] ∈ A_n`.
pub fn first_violation(instance: &AvoidanceInstance, x: &Word) -> Option<usize> {
    let m = instance.m;
    if x.len() < m {
        return None;
    }
    (0..=x.len() - m).find(|&n| {
        let window = &x.symbols()[n..n + m];
        instance.words_at(n).iter().any(|w| w.symbols() == window)
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplorerRow {
    pub m: usize,
    pub trials: usize,
    pub successes: usize,
    /// Deepest position reached, for each failed trial in order.
    pub failures: Vec<(usize, usize)>,
}

impl ExplorerRow {
    pub fn rate(&self) -> f64 {
        self.successes as f64 / self.trials as f64
    }
}

/// Seed of trial `t` at window length `m`.
pub fn trial_seed(seed: u64, m: usize, trial: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add((m as u64) << 32)
        .wrapping_add(trial as u64)
}

/// Success rate of seeded instances for each `m` in `1..=4ℓ+2`.
pub fn minimal_m_explorer(p: usize, l: usize, trials: usize, len: usize, seed: u64) -> Result<Vec<ExplorerRow>> {
    if trials == 0 {
        return Err(Error::invalid("need at least one trial"));
    }
    (1..=guaranteed_m(l))
        .map(|m| {
            table_size(p, m)?;
            let outcomes = (0..trials)
                .into_par_iter()
                .map(|t| {
                    let inst = AvoidanceInstance::generated(p, m, l, len, trial_seed(seed, m, t))?;
                    solve_prefix(&inst, len, 2 * m)
                })
                .collect::<Result<Vec<_>>>()?;
            let mut row = ExplorerRow {
                m,
                trials,
                successes: 0,
                failures: Vec::new(),
            };
            for (t, o) in outcomes.iter().enumerate() {
                match o {
                    SolveOutcome::Solved { .. } => row.successes += 1,
                    SolveOutcome::Exhausted { position, .. } => row.failures.push((t, *position)),
                }
            }
            Ok(row)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn empty_instance_gives_zeros() {
        let inst = AvoidanceInstance::generated(2, 6, 0, 100, 7).unwrap();
        let out = solve_prefix(&inst, 100, 12).unwrap();
        assert_eq!(out.word().unwrap(), &Word::zeros(100));
    }

    #[test]
    fn constant_forbidden_window() {
        let sets = vec![vec![w("000000")]; 60];
        let inst = AvoidanceInstance::explicit(2, 6, 1, &sets).unwrap();
        let x = solve_prefix(&inst, 60, 12).unwrap().word().unwrap().clone();
        assert_eq!(x.to_string(), "000001".repeat(10));
        assert_eq!(first_violation(&inst, &x), None);
    }

    #[test]
    fn seeded_instances_are_solved() {
        for seed in 0..5 {
            let inst = AvoidanceInstance::generated(2, 6, 1, 500, seed).unwrap();
            let out = solve_prefix(&inst, 500, 12).unwrap();
            assert_eq!(first_violation(&inst, out.word().unwrap()), None);
        }
    }

    #[test]
    fn bookkeeping_single_window() {
        let mut sets = vec![Vec::new(); 5];
        sets[0].push(w("101"));
        let inst = AvoidanceInstance::explicit(2, 3, 1, &sets).unwrap();
        let bk = bookkeeping(&inst, 5).unwrap();
        assert_eq!(bk.b[0].count(), 1);
        assert!(bk.c[0].is_empty());
        assert!(bk.b[1..].iter().all(BitSet::is_empty));
        verify_bounds(&bk, &inst).unwrap();
    }

    #[test]
    fn saturation_when_l_is_large() {
        let sets = vec![vec![w("00"), w("10")], vec![w("10"), w("11")]];
        let inst = AvoidanceInstance::explicit(2, 2, 2, &sets).unwrap();
        let bk = bookkeeping(&inst, 2).unwrap();
        assert!(bk.b[1].is_full());
        let report = verify_bounds(&bk, &inst).unwrap();
        assert_eq!(report.saturated_at, Some(1));
        assert_eq!(solve_prefix(&inst, 3, 4).unwrap(), SolveOutcome::Exhausted { position: 0, backtracks: 0 });
    }

    #[test]
    fn stale_c_fault_is_caught() {
        // C_0 = {0} and C_1 = ∅, so a stale C changes B_2.
        let sets = vec![vec![w("00"), w("10")], Vec::new(), Vec::new()];
        let inst = AvoidanceInstance::explicit(2, 2, 2, &sets).unwrap();
        let bk = bookkeeping_with(&inst, 3, Fault::StaleC).unwrap();
        let err = verify_bounds(&bk, &inst).unwrap_err();
        assert!(err.to_string().contains("verify_bounds"), "{err}");
        verify_bounds(&bookkeeping(&inst, 3).unwrap(), &inst).unwrap();
    }

    #[test]
    fn instance_text_round_trip() {
        let sets = vec![vec![w("000")], Vec::new(), vec![w("011"), w("110")]];
        let inst = AvoidanceInstance::explicit(2, 3, 2, &sets).unwrap();
        assert_eq!(inst.to_string().parse::<AvoidanceInstance>().unwrap(), inst);
        let gen = AvoidanceInstance::generated(2, 6, 1, 50, 9).unwrap();
        assert_eq!(gen.to_string(), "2 6 1 50\nseed=9\n");
        assert_eq!(gen.to_string().parse::<AvoidanceInstance>().unwrap(), gen);
        let err = "2 3 1 4\n5: 000\n".parse::<AvoidanceInstance>().unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!("2 3 1 4\n0: 000,111\n".parse::<AvoidanceInstance>().is_err());
    }

    #[test]
    fn explorer_rows() {
        let rows = minimal_m_explorer(2, 1, 4, 200, 1).unwrap();
        assert_eq!(rows.len(), 6);
        assert_eq!(rows[5].successes, 4);
        assert_eq!(rows[0].successes, 4);
        let zero = minimal_m_explorer(2, 0, 3, 50, 1).unwrap();
        assert!(zero.iter().all(|r| r.successes == 3));
    }
}
