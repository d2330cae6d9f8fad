//! Explicit examples: a proximal topological K point built from a marker system,
//! and step witnesses for full shifts.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::independence::{is_independence_set, Budget, CylinderTuple};
use crate::sets::SubsetWindow;
use crate::subshift::{Subshift, SubshiftSpec};
use crate::word::Word;

/// Inputs of the K-example recursion.
///
/// `y` is a prefix of a transitive point of a system over `{0,1,2}` whose only
/// minimal point is `0^∞`. `z[m]` holds the marker prefixes `z_{m,1}[0,t_m] … z_{m,m}[0,t_m]`.
/// `phi[k-1]` is the schedule value used to build level `k+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KExampleParams {
    pub y: Word,
    pub z: BTreeMap<usize, Vec<Word>>,
    pub phi: Vec<usize>,
    pub depth: usize,
}

impl KExampleParams {
    /// Small default: `y = 121 0^261361`, one marker system per scheduled level.
    pub fn toy() -> Self {
        let mut y = vec![1, 2, 1];
        y.extend(std::iter::repeat_n(0, 261_361));
        let mut z = BTreeMap::new();
        z.insert(1, vec![Word::new(vec![1])]);
        z.insert(2, vec![Word::new(vec![1]), Word::new(vec![2])]);
        KExampleParams {
            y: Word::new(y),
            z,
            phi: vec![1, 2, 1],
            depth: 4,
        }
    }

    /// `t_m`, the common marker length minus one.
    pub fn marker_len(&self, m: usize) -> Option<usize> {
        self.z.get(&m).and_then(|ws| ws.first()).map(|w| w.len() - 1)
    }

    /// `f_m(a)`: index of the marker equal to `a`, or 0.
    pub fn marker_index(&self, m: usize, a: &[u8]) -> usize {
        self.z
            .get(&m)
            .and_then(|ws| ws.iter().position(|w| w.symbols() == a))
            .map_or(0, |j| j + 1)
    }

    pub fn validate(&self) -> Result<()> {
        if self.depth == 0 {
            return Err(Error::invalid("K must be at least 1"));
        }
        self.y.check_alphabet(3)?;
        if self.phi.len() + 1 < self.depth {
            return Err(Error::invalid(format!(
                "schedule has {} entries, K={} needs {}",
                self.phi.len(),
                self.depth,
                self.depth - 1
            )));
        }
        for (i, &m) in self.phi.iter().enumerate() {
            let k = i + 1;
            if m == 0 || m > k {
                return Err(Error::invalid(format!("phi({k}) = {m} outside [1, {k}]")));
            }
        }
        for (&m, ws) in &self.z {
            if ws.len() != m {
                return Err(Error::invalid(format!("z[{m},*] has {} markers, expected {m}", ws.len())));
            }
            let len = ws[0].len();
            for (j, w) in ws.iter().enumerate() {
                w.check_alphabet(3)?;
                if w.len() != len || len == 0 {
                    return Err(Error::invalid(format!("z[{m},{}] must have length {len}", j + 1)));
                }
                if !matches!(w.symbols()[0], 1 | 2) {
                    return Err(Error::invalid(format!("z[{m},{}] must start with 1 or 2", j + 1)));
                }
                if ws[..j].contains(w) {
                    return Err(Error::invalid(format!("z[{m},{}] repeats an earlier marker", j + 1)));
                }
            }
        }
        for &m in self.phi.iter().take(self.depth - 1) {
            if !self.z.contains_key(&m) {
                return Err(Error::invalid(format!("no markers z[{m},*] for scheduled level {m}")));
            }
        }
        Ok(())
    }
}

fn format_runs(w: &Word) -> String {
    let mut parts = Vec::new();
    let mut literal = String::new();
    let s = w.symbols();
    let mut i = 0;
    while i < s.len() {
        let mut j = i;
        while j < s.len() && s[j] == s[i] {
            j += 1;
        }
        if j - i >= 8 {
            if !literal.is_empty() {
                parts.push(std::mem::take(&mut literal));
            }
            parts.push(format!("{}^{}", s[i], j - i));
        } else {
            for &c in &s[i..j] {
                literal.push(char::from_digit(c as u32, 36).unwrap_or('?'));
            }
        }
        i = j;
    }
    if !literal.is_empty() {
        parts.push(literal);
    }
    parts.join(" ")
}

fn parse_runs(text: &str, line: usize) -> Result<Word> {
    let mut out = Vec::new();
    for token in text.split_whitespace() {
        match token.split_once('^') {
            Some((sym, count)) => {
                let sym = Word::parse_digits(sym).map_err(|e| Error::parse(line, e.to_string()))?;
                let count: usize = count
                    .parse()
                    .map_err(|_| Error::parse(line, format!("bad repeat count in {token}")))?;
                for _ in 0..count {
                    out.extend_from_slice(sym.symbols());
                }
            }
            None => {
                let w = Word::parse_digits(token).map_err(|e| Error::parse(line, e.to_string()))?;
                out.extend_from_slice(w.symbols());
            }
        }
    }
    Ok(Word::new(out))
}

impl fmt::Display for KExampleParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "y={}", format_runs(&self.y))?;
        for (m, ws) in &self.z {
            for (j, w) in ws.iter().enumerate() {
                writeln!(f, "z[{m},{}]={w}", j + 1)?;
            }
        }
        let phi: Vec<String> = self.phi.iter().map(usize::to_string).collect();
        writeln!(f, "phi={}", phi.join(","))?;
        writeln!(f, "K={}", self.depth)
    }
}

impl FromStr for KExampleParams {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut y = None;
        let mut markers: BTreeMap<usize, BTreeMap<usize, Word>> = BTreeMap::new();
        let mut phi = None;
        let mut depth = None;
        for (i, raw) in s.lines().enumerate() {
            let line = i + 1;
            let text = raw.split('#').next().unwrap_or("").trim();
            if text.is_empty() {
                continue;
            }
            let (key, value) = text
                .split_once('=')
                .ok_or_else(|| Error::parse(line, "expected key=value"))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "y" => y = Some(parse_runs(value, line)?),
                "phi" => {
                    let vals: std::result::Result<Vec<usize>, _> =
                        value.split(',').map(|v| v.trim().parse::<usize>()).collect();
                    phi = Some(vals.map_err(|_| Error::parse(line, "phi must be a comma-separated list"))?);
                }
                "K" => {
                    depth = Some(value.parse().map_err(|_| Error::parse(line, "K must be an integer"))?);
                }
                _ => {
                    let inner = key
                        .strip_prefix("z[")
                        .and_then(|k| k.strip_suffix(']'))
                        .ok_or_else(|| Error::parse(line, format!("unknown key {key}")))?;
                    let (m, j) = inner
                        .split_once(',')
                        .and_then(|(m, j)| Some((m.trim().parse::<usize>().ok()?, j.trim().parse::<usize>().ok()?)))
                        .ok_or_else(|| Error::parse(line, format!("bad marker key {key}")))?;
                    if j == 0 || j > m {
                        return Err(Error::parse(line, format!("marker index {j} outside [1, {m}]")));
                    }
                    let w = parse_runs(value, line)?;
                    if markers.entry(m).or_default().insert(j, w).is_some() {
                        return Err(Error::parse(line, format!("duplicate marker z[{m},{j}]")));
                    }
                }
            }
        }
        let mut z = BTreeMap::new();
        for (m, ws) in markers {
            if ws.len() != m || ws.keys().copied().ne(1..=m) {
                return Err(Error::parse(0, format!("markers z[{m},1..{m}] incomplete")));
            }
            z.insert(m, ws.into_values().collect());
        }
        let params = KExampleParams {
            y: y.ok_or_else(|| Error::parse(0, "missing y"))?,
            z,
            phi: phi.ok_or_else(|| Error::parse(0, "missing phi"))?,
            depth: depth.ok_or_else(|| Error::parse(0, "missing K"))?,
        };
        params.validate()?;
        Ok(params)
    }
}

/// `C_{k,i}` for the block `a = A_k`: `0^{2n_k}` for `i = 0`, else `σ^{i-1}(a) 0^{i-1} 0^{n_k}`.
pub fn c_block(a: &Word, i: usize) -> Word {
    let n = a.len();
    if i == 0 {
        return Word::zeros(2 * n);
    }
    let mut out = a.symbols()[(i - 1).min(n)..].to_vec();
    out.resize(2 * n, 0);
    Word::new(out)
}

/// How level `k + 1` was built from level `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelStep {
    /// `m = φ(k)`.
    pub m: usize,
    pub t: usize,
    /// Least gap bound for `0^{n_k}` in the prefix of `y`, raised to at least `t_m`.
    pub ell: usize,
    pub b: usize,
    /// `f_m(y[i, i+t_m])` for `i = 0 … b_k − t_m`.
    pub f_values: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KLevel {
    pub k: usize,
    pub a: Word,
    pub step: Option<LevelStep>,
}

impl KLevel {
    pub fn n(&self) -> usize {
        self.a.len()
    }

    /// `C_{k,i}` for `0 ≤ i ≤ k`.
    pub fn c_block(&self, i: usize) -> Result<Word> {
        if i > self.k {
            return Err(Error::invalid(format!("C[{},{i}] needs i ≤ {}", self.k, self.k)));
        }
        Ok(c_block(&self.a, i))
    }
}

#[derive(Clone, Debug)]
pub struct ProximalRun {
    pub params: KExampleParams,
    pub levels: Vec<KLevel>,
}

impl ProximalRun {
    /// `A_K`, the prefix of the recurrent point.
    pub fn x_prefix(&self) -> &Word {
        &self.levels.last().expect("at least one level").a
    }

    pub fn level(&self, k: usize) -> Option<&KLevel> {
        k.checked_sub(1).and_then(|i| self.levels.get(i))
    }

    /// Level-by-level audit text.
    pub fn audit(&self) -> String {
        let mut out = String::from("k,n_k,m,t_m,l_k,b_k,nonzero_f\n");
        for lvl in &self.levels {
            match &lvl.step {
                Some(s) => {
                    let nonzero = s.f_values.iter().filter(|&&v| v != 0).count();
                    out += &format!("{},{},{},{},{},{},{nonzero}\n", lvl.k, lvl.n(), s.m, s.t, s.ell, s.b);
                }
                None => out += &format!("{},{},,,,,\n", lvl.k, lvl.n()),
            }
        }
        out
    }
}

/// Calls `visit(prev, start)` for each occurrence start of `0^n` not directly
/// following the previous one; `prev` is the previous start, or 0 before the first.
fn zero_block_jumps(text: &[u8], n: usize, mut visit: impl FnMut(usize, usize) -> bool) -> bool {
    let mut prev: Option<usize> = None;
    let mut i = 0;
    while i < text.len() {
        if text[i] != 0 {
            i += 1;
            continue;
        }
        let start = i;
        while i < text.len() && text[i] == 0 {
            i += 1;
        }
        if i - start >= n {
            if !visit(prev.unwrap_or(0), start) {
                return false;
            }
            prev = Some(i - n);
        }
    }
    true
}

/// Largest gap between consecutive starts of `0^n`, counting the leading gap from 0.
fn max_zero_gap(text: &[u8], n: usize) -> Option<usize> {
    let mut best = None::<usize>;
    zero_block_jumps(text, n, |prev, start| {
        let gap = (start - prev).max(1);
        best = Some(best.map_or(gap, |b| b.max(gap)));
        true
    });
    best
}

/// Runs the recursion up to `A_K`.
pub fn proximal_k_point(params: &KExampleParams) -> Result<ProximalRun> {
    params.validate()?;
    let y = params.y.symbols();
    let a1 = Word::new(vec![1, 0]);
    let mut levels = vec![KLevel {
        k: 1,
        a: a1,
        step: None,
    }];
    for k in 1..params.depth {
        let m = params.phi[k - 1];
        let t = params.marker_len(m).expect("validated");
        let prev = &levels[k - 1];
        let n = prev.n();
        let gap = max_zero_gap(y, n).ok_or_else(|| {
            Error::Precondition(format!("0^{n} never occurs in the prefix of y (level {k})"))
        })?;
        let ell = gap.max(t).max(1);
        let b = 2 * ell * n;
        if b >= y.len() {
            return Err(Error::invalid(format!(
                "prefix of y too short: level {k} reads position {b}, prefix has length {}",
                y.len()
            )));
        }
        let f_values: Vec<usize> = (0..=b - t).map(|i| params.marker_index(m, &y[i..=i + t])).collect();
        let cm = &levels[m - 1].a;
        let n_m = cm.len();
        let mut next = Vec::with_capacity(4 * n + f_values.len() * 2 * n_m);
        next.extend_from_slice(prev.a.symbols());
        next.resize(2 * n, 0);
        for &f in &f_values {
            next.extend_from_slice(c_block(cm, f).symbols());
        }
        next.resize(next.len() + 2 * n, 0);
        let expected = 4 * n + (b - t + 1) * 2 * n_m;
        if next.len() != expected {
            return Err(Error::Invariant(format!(
                "level {} has length {}, accounting gives {expected}",
                k + 1,
                next.len()
            )));
        }
        levels[k - 1].step = Some(LevelStep {
            m,
            t,
            ell,
            b,
            f_values,
        });
        levels.push(KLevel {
            k: k + 1,
            a: Word::new(next),
            step: None,
        });
    }
    Ok(ProximalRun {
        params: params.clone(),
        levels,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroGapLevel {
    pub k: usize,
    pub n: usize,
    /// `2 b_k`.
    pub bound: usize,
    pub max_gap: Option<usize>,
    /// `(previous start, next start)` of the first gap above the bound.
    pub first_violation: Option<(usize, usize)>,
}

impl ZeroGapLevel {
    pub fn passed(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// Checks that `0^{n_k}` recurs in `x` with gaps at most `2 b_k`, for every level with a step.
/// The truncated final gap is not checked.
pub fn verify_syndetic_zeros(x: &Word, levels: &[KLevel]) -> Vec<ZeroGapLevel> {
    let text = x.symbols();
    levels
        .iter()
        .filter_map(|lvl| {
            let step = lvl.step.as_ref()?;
            let n = lvl.n();
            let bound = 2 * step.b;
            let mut first_violation = None;
            let mut max_gap = None::<usize>;
            zero_block_jumps(text, n, |prev, start| {
                let gap = (start - prev).max(1);
                max_gap = Some(max_gap.map_or(gap, |g| g.max(gap)));
                if gap > bound && first_violation.is_none() {
                    first_violation = Some((prev, start));
                }
                true
            });
            if max_gap.is_none() && text.len() > bound {
                first_violation = Some((0, text.len()));
            }
            Some(ZeroGapLevel {
                k: lvl.k,
                n,
                bound,
                max_gap,
                first_violation,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IeWindowReport {
    pub m: usize,
    /// Lattice step `2 n_m`.
    pub step: u64,
    /// Times of the independence set found, all multiples of `step`.
    pub found: Option<Vec<u64>>,
    pub complete: bool,
}

/// Searches the lattice `2 n_m · [0, horizon)` for an independence set of size `s`
/// for `([A_m], [σ(A_m)0], …, [σ^{j-1}(A_m)0^{j-1}])` in the orbit closure of `x`.
pub fn verify_ie_window(
    run: &ProximalRun,
    j: usize,
    m: usize,
    s: usize,
    horizon: u64,
    budget: Budget,
) -> Result<IeWindowReport> {
    if j == 0 {
        return Err(Error::invalid("j must be at least 1"));
    }
    let level = run.level(m).filter(|_| m > j).ok_or_else(|| {
        Error::Precondition(format!(
            "level m={m} must satisfy j < m ≤ K (j={j}, K={})",
            run.levels.len()
        ))
    })?;
    let step = 2 * level.n() as u64;
    if s == 0 {
        return Ok(IeWindowReport {
            m,
            step,
            found: Some(Vec::new()),
            complete: true,
        });
    }
    let a = level.a.symbols();
    let targets: Vec<Vec<Word>> = (0..j)
        .map(|i| {
            let mut w = a[i..].to_vec();
            w.resize(a.len(), 0);
            vec![Word::new(w)]
        })
        .collect();
    let shift = Subshift::new(SubshiftSpec::OrbitClosure {
        p: 2,
        prefix: run.x_prefix().clone(),
    })?;
    let tuple = CylinderTuple::new(shift, targets)?;
    let candidates: Vec<u64> = (0..horizon).map(|i| i * step).collect();
    let window = (horizon.saturating_sub(1)) * step + 1;
    let engine = tuple.engine(window, budget)?;
    let r = engine.find_subset(&candidates, s, None)?;
    Ok(IeWindowReport {
        m,
        step,
        found: r.found,
        complete: r.complete,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernoulliWitness {
    pub k: u64,
    /// `{k, 2k, …, Mk}` as checked.
    pub checked: SubsetWindow,
    pub verified: bool,
}

/// For cylinders of a full shift fixed by coordinates below `k`, every multiple of `k`
/// is an independence time; spot-checks `{k, …, Mk}`.
pub fn bernoulli_rs_witness(
    shift: &Subshift,
    targets: Vec<Vec<Word>>,
    multiples: u64,
    budget: Budget,
) -> Result<BernoulliWitness> {
    if !matches!(shift.spec(), SubshiftSpec::Full { .. }) {
        return Err(Error::Precondition(format!(
            "step witness needs a full shift, got {}",
            shift.spec().kind_name()
        )));
    }
    let tuple = CylinderTuple::new(shift.clone(), targets)?;
    let k = tuple.max_base_len() as u64;
    let set: Vec<u64> = (1..=multiples).map(|i| i * k).collect();
    let checked = SubsetWindow::new(set, multiples * k + 1)?;
    let verified = is_independence_set(&tuple, &checked, budget)?.is_independent();
    Ok(BernoulliWitness { k, checked, verified })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> KExampleParams {
        let mut p = KExampleParams::toy();
        p.depth = 3;
        p.y = Word::new(p.y.symbols()[..400].to_vec());
        p
    }

    #[test]
    fn level_one_literals() {
        let run = proximal_k_point(&small()).unwrap();
        let l1 = run.level(1).unwrap();
        assert_eq!(l1.a.to_string(), "10");
        assert_eq!(l1.c_block(0).unwrap().to_string(), "0000");
        assert_eq!(l1.c_block(1).unwrap().to_string(), "1000");
    }

    #[test]
    fn second_level_by_hand() {
        let run = proximal_k_point(&small()).unwrap();
        let s = run.level(1).unwrap().step.clone().unwrap();
        assert_eq!((s.m, s.t, s.ell, s.b), (1, 0, 3, 12));
        let mut expected = String::from("1000");
        for c in ["1", "2", "1"] {
            expected += if c == "1" { "1000" } else { "0000" };
        }
        expected += &"0000".repeat(10);
        expected += "0000";
        assert_eq!(run.level(2).unwrap().a.to_string(), expected);
    }

    #[test]
    fn depth_one() {
        let mut p = small();
        p.depth = 1;
        let run = proximal_k_point(&p).unwrap();
        assert_eq!(run.x_prefix().to_string(), "10");
        assert!(verify_syndetic_zeros(run.x_prefix(), &run.levels).is_empty());
    }

    #[test]
    fn short_prefix_rejected() {
        let mut p = small();
        p.y = Word::new(p.y.symbols()[..100].to_vec());
        assert!(matches!(proximal_k_point(&p), Err(Error::InvalidArgument(_))));
        p.y = Word::new(vec![1, 2, 1, 2]);
        p.depth = 2;
        assert!(matches!(proximal_k_point(&p), Err(Error::Precondition(_))));
    }

    #[test]
    fn zeros_and_tamper() {
        let run = proximal_k_point(&small()).unwrap();
        let report = verify_syndetic_zeros(run.x_prefix(), &run.levels);
        assert_eq!(report.len(), 2);
        assert!(report.iter().all(ZeroGapLevel::passed));
        let mut x = run.x_prefix().symbols().to_vec();
        x[1000..3000].iter_mut().for_each(|c| *c = 1);
        let report = verify_syndetic_zeros(&Word::new(x), &run.levels);
        assert_eq!(report[0].first_violation.map(|v| v.1), Some(3000));
        assert!(!report[1].passed());
    }

    #[test]
    fn params_round_trip() {
        let p = small();
        let text = p.to_string();
        assert!(text.starts_with("y=121 0^397\n"));
        assert_eq!(text.parse::<KExampleParams>().unwrap(), p);
        let bad = "y=121\nz[1,1]=0\nphi=1\nK=2\n";
        assert!(bad.parse::<KExampleParams>().is_err());
        assert!(matches!("y=1\nfoo=2\n".parse::<KExampleParams>(), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn ie_window_small() {
        let run = proximal_k_point(&small()).unwrap();
        let r = verify_ie_window(&run, 1, 2, 3, 6, Budget::default()).unwrap();
        assert_eq!(r.step, 120);
        assert_eq!(r.found, Some(vec![0, 120, 360]));
        let r = verify_ie_window(&run, 1, 2, 0, 6, Budget::default()).unwrap();
        assert_eq!(r.found, Some(vec![]));
        assert!(matches!(
            verify_ie_window(&run, 3, 3, 1, 6, Budget::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn bernoulli_steps() {
        let shift = Subshift::new(SubshiftSpec::full(2)).unwrap();
        let t = vec![vec!["010".parse().unwrap()], vec!["11".parse().unwrap()]];
        let w = bernoulli_rs_witness(&shift, t, 4, Budget::default()).unwrap();
        assert_eq!(w.k, 3);
        assert_eq!(w.checked.elements(), &[3, 6, 9, 12]);
        assert!(w.verified);
        let golden = Subshift::new(SubshiftSpec::golden_mean()).unwrap();
        assert!(matches!(
            bernoulli_rs_witness(&golden, vec![vec!["0".parse().unwrap()]], 2, Budget::default()),
            Err(Error::Precondition(_))
        ));
    }
}
