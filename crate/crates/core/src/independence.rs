//! Independence sets for tuples of cylinder unions.

use std::cell::Cell;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::sets::{ip_generate, SubsetWindow};
use crate::subshift::{ConstraintSystem, State, Subshift};
use crate::word::Word;

/// Work limits for independence queries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Search nodes a single independence check may visit.
    pub max_nodes: usize,
    /// Independence checks a subset search may issue.
    pub max_checks: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: 1 << 22,
            max_checks: 1 << 20,
        }
    }
}

/// Parses `0,1` or `0|01,1`: comma-separated targets, `|` inside a union.
pub fn parse_targets(text: &str) -> Result<Vec<Vec<Word>>> {
    text.split(',')
        .map(|t| {
            t.split('|')
                .map(|w| w.trim().parse::<Word>())
                .collect::<Result<Vec<_>>>()
        })
        .collect()
}

pub fn format_targets(targets: &[Vec<Word>]) -> String {
    targets
        .iter()
        .map(|t| t.iter().map(Word::to_string).collect::<Vec<_>>().join("|"))
        .collect::<Vec<_>>()
        .join(",")
}

/// Targets `A_1, .., A_k`, each a union of cylinders read at offset 0.
#[derive(Clone, Debug)]
pub struct CylinderTuple {
    shift: Subshift,
    targets: Vec<Vec<Word>>,
}

impl CylinderTuple {
    pub fn new(shift: Subshift, targets: Vec<Vec<Word>>) -> Result<Self> {
        if targets.is_empty() {
            return Err(Error::invalid("tuple needs at least one target"));
        }
        for (i, t) in targets.iter().enumerate() {
            if t.is_empty() {
                return Err(Error::invalid(format!("target {} is empty", i + 1)));
            }
            for w in t {
                if w.is_empty() {
                    return Err(Error::invalid(format!("target {} has an empty base", i + 1)));
                }
                w.check_alphabet(shift.alphabet_size())?;
                if !shift.is_allowed(w)? {
                    return Err(Error::invalid(format!("cylinder [{w}] is empty")));
                }
            }
        }
        Ok(CylinderTuple { shift, targets })
    }

    pub fn shift(&self) -> &Subshift {
        &self.shift
    }

    pub fn targets(&self) -> &[Vec<Word>] {
        &self.targets
    }

    pub fn arity(&self) -> usize {
        self.targets.len()
    }

    pub fn max_base_len(&self) -> usize {
        self.targets.iter().flatten().map(Word::len).max().unwrap_or(1)
    }

    /// Engine for sets whose largest element is below `horizon`.
    pub fn engine(&self, horizon: u64, budget: Budget) -> Result<Engine<'_>> {
        let span = horizon as usize + self.max_base_len().saturating_sub(1);
        Ok(Engine {
            tuple: self,
            system: self.shift.constraints(span.max(1))?,
            budget,
            nodes: Cell::new(0),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Independent,
    /// Target index (from 0) per element of `F` with no realising point.
    Refuted(Vec<usize>),
}

impl Verdict {
    pub fn is_independent(&self) -> bool {
        matches!(self, Verdict::Independent)
    }
}

type Memo = HashMap<(usize, State), Option<Vec<usize>>>;

pub struct Engine<'a> {
    tuple: &'a CylinderTuple,
    system: ConstraintSystem<'a>,
    budget: Budget,
    nodes: Cell<usize>,
}

impl Engine<'_> {
    fn check_fits(&self, f: &[u64]) -> Result<()> {
        if let Some(&last) = f.last() {
            if last as usize + self.tuple.max_base_len() > self.system.span() {
                return Err(Error::invalid(format!(
                    "element {last} beyond the engine window of {}",
                    self.system.span()
                )));
            }
        }
        if f.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("positions must be strictly increasing"));
        }
        Ok(())
    }

    fn tick(&self) -> Result<()> {
        let n = self.nodes.get() + 1;
        self.nodes.set(n);
        if n > self.budget.max_nodes {
            return Err(Error::SizeLimit(format!(
                "independence check exceeded {} search nodes",
                self.budget.max_nodes
            )));
        }
        Ok(())
    }

    /// Decides whether `f` is an independence set.
    pub fn check(&self, f: &[u64]) -> Result<Verdict> {
        self.check_fits(f)?;
        self.nodes.set(0);
        let mut memo = Memo::new();
        Ok(match self.refute(f, 0, &self.system.initial(), &mut memo)? {
            None => Verdict::Independent,
            Some(s) => Verdict::Refuted(s),
        })
    }

    fn refute(&self, f: &[u64], i: usize, state: &State, memo: &mut Memo) -> Result<Option<Vec<usize>>> {
        if i == f.len() {
            return Ok(None);
        }
        let key = (i, state.clone());
        if let Some(hit) = memo.get(&key) {
            return Ok(hit.clone());
        }
        self.tick()?;
        let mut result = None;
        for (j, target) in self.tuple.targets.iter().enumerate() {
            match self.system.apply(state, f[i] as usize, target)? {
                None => {
                    result = Some(vec![j]);
                    break;
                }
                Some(next) => {
                    if let Some(mut rest) = self.refute(f, i + 1, &next, memo)? {
                        rest.insert(0, j);
                        result = Some(rest);
                        break;
                    }
                }
            }
        }
        memo.insert(key, result.clone());
        Ok(result)
    }

    /// A point prefix visiting `A_{s(j)}` at each `f[j]`.
    pub fn witness(&self, f: &[u64], assignment: &[usize]) -> Result<Option<Word>> {
        self.check_fits(f)?;
        if assignment.len() != f.len() || assignment.iter().any(|&j| j >= self.tuple.arity()) {
            return Err(Error::invalid("assignment does not match the set"));
        }
        let mut chosen = Vec::with_capacity(f.len());
        if !self.choose(f, assignment, &self.system.initial(), &mut chosen)? {
            return Ok(None);
        }
        let placed: Vec<(usize, &Word)> = f.iter().map(|&p| p as usize).zip(chosen).collect();
        self.system.realize(&placed)
    }

    fn choose<'w>(&'w self, f: &[u64], s: &[usize], state: &State, chosen: &mut Vec<&'w Word>) -> Result<bool> {
        let i = chosen.len();
        if i == f.len() {
            return Ok(self.system.is_satisfiable(state));
        }
        for w in &self.tuple.targets[s[i]] {
            if let Some(next) = self.system.apply(state, f[i] as usize, std::slice::from_ref(w))? {
                chosen.push(w);
                if self.choose(f, s, &next, chosen)? {
                    return Ok(true);
                }
                chosen.pop();
            }
        }
        Ok(false)
    }

    /// Number of assignments `s` on `f` that some point realises.
    pub fn count_realizable(&self, f: &[u64]) -> Result<u128> {
        self.check_fits(f)?;
        self.nodes.set(0);
        let mut memo = HashMap::new();
        self.count_from(f, 0, &self.system.initial(), &mut memo)
    }

    fn count_from(&self, f: &[u64], i: usize, state: &State, memo: &mut HashMap<(usize, State), u128>) -> Result<u128> {
        if i == f.len() {
            return Ok(1);
        }
        let key = (i, state.clone());
        if let Some(&hit) = memo.get(&key) {
            return Ok(hit);
        }
        self.tick()?;
        let mut total = 0u128;
        for target in &self.tuple.targets {
            if let Some(next) = self.system.apply(state, f[i] as usize, target)? {
                total += self.count_from(f, i + 1, &next, memo)?;
            }
        }
        memo.insert(key, total);
        Ok(total)
    }

    /// Some independence set `G ∪ forced` with `G ⊆ candidates`, `|G| = size`.
    pub fn find_subset(&self, candidates: &[u64], size: usize, forced: Option<u64>) -> Result<SubsetSearch> {
        if let Some(x) = forced {
            if !self.check(&[x])?.is_independent() {
                return Ok(SubsetSearch {
                    found: None,
                    complete: true,
                });
            }
        }
        let mut search = Search {
            engine: self,
            candidates,
            forced,
            checks: 0,
            exhausted: false,
        };
        let mut current = Vec::new();
        let found = search.extend(0, size, &mut current)?;
        Ok(SubsetSearch {
            found: found.then(|| with_forced(&current, forced)),
            complete: !search.exhausted,
        })
    }

    /// Largest independence subset of `candidates` by branch and bound.
    pub fn max_subset(&self, candidates: &[u64]) -> Result<SubsetSearch> {
        let mut best: Vec<u64> = Vec::new();
        let mut complete = true;
        for size in 1..=candidates.len() {
            let r = self.find_subset(candidates, size, None)?;
            complete &= r.complete;
            match r.found {
                Some(set) => best = set,
                None => break,
            }
        }
        Ok(SubsetSearch {
            found: Some(best),
            complete,
        })
    }
}

fn with_forced(current: &[u64], forced: Option<u64>) -> Vec<u64> {
    let mut set = current.to_vec();
    if let Some(x) = forced {
        set.push(x);
        set.sort_unstable();
        set.dedup();
    }
    set
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetSearch {
    pub found: Option<Vec<u64>>,
    /// False when the check budget cut the search short.
    pub complete: bool,
}

struct Search<'e, 'a> {
    engine: &'e Engine<'a>,
    candidates: &'e [u64],
    forced: Option<u64>,
    checks: usize,
    exhausted: bool,
}

impl Search<'_, '_> {
    fn extend(&mut self, from: usize, size: usize, current: &mut Vec<u64>) -> Result<bool> {
        if current.len() == size {
            return Ok(true);
        }
        for idx in from..self.candidates.len() {
            if current.len() + (self.candidates.len() - idx) < size {
                return Ok(false);
            }
            let c = self.candidates[idx];
            if Some(c) == self.forced {
                continue;
            }
            if self.checks >= self.engine.budget.max_checks {
                self.exhausted = true;
                return Ok(false);
            }
            self.checks += 1;
            current.push(c);
            let trial = with_forced(current, self.forced);
            if self.engine.check(&trial)?.is_independent() && self.extend(idx + 1, size, current)? {
                return Ok(true);
            }
            current.pop();
        }
        Ok(false)
    }
}

/// Exact decision for one set; builds a fresh engine sized to `f`.
pub fn is_independence_set(tuple: &CylinderTuple, f: &SubsetWindow, budget: Budget) -> Result<Verdict> {
    let horizon = f.max().map_or(1, |m| m + 1);
    tuple.engine(horizon, budget)?.check(f.elements())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeketeReport {
    /// `a[k-1] = a_k`.
    pub a: Vec<u64>,
    pub ratios: Vec<Ratio<u64>>,
    pub upper_bound_i: Ratio<u64>,
    pub witness: SubsetWindow,
    pub partial: bool,
}

impl FeketeReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,a_k,ratio\n");
        for (i, (a, r)) in self.a.iter().zip(&self.ratios).enumerate() {
            out.push_str(&format!("{},{a},{r}\n", i + 1));
        }
        out
    }

    /// Every pair `j + k ≤ K` satisfies `a_{j+k} ≤ a_j + a_k`.
    pub fn is_subadditive(&self) -> bool {
        let n = self.a.len();
        (1..=n).all(|j| (1..=n - j).all(|k| self.a[j + k - 1] <= self.a[j - 1] + self.a[k - 1]))
    }
}

/// Independence profile `a_k` for `k ≤ horizon`.
pub fn max_independence_within(tuple: &CylinderTuple, horizon: u64, budget: Budget) -> Result<FeketeReport> {
    if horizon == 0 {
        return Err(Error::invalid("horizon must be positive"));
    }
    let engine = tuple.engine(horizon, budget)?;
    let mut a = Vec::new();
    let mut witness: Vec<u64> = Vec::new();
    let mut partial = false;
    for k in 1..=horizon {
        let prev = a.last().copied().unwrap_or(0);
        let candidates: Vec<u64> = (0..k - 1).collect();
        let r = engine.find_subset(&candidates, prev as usize, Some(k - 1))?;
        match r.found {
            Some(set) => {
                a.push(prev + 1);
                witness = set;
            }
            None => {
                a.push(prev);
                if !r.complete {
                    partial = true;
                    break;
                }
            }
        }
    }
    let ratios: Vec<Ratio<u64>> = a.iter().enumerate().map(|(i, &x)| Ratio::new(x, i as u64 + 1)).collect();
    let upper_bound_i = ratios.iter().copied().min().unwrap_or_else(|| Ratio::from_integer(1));
    Ok(FeketeReport {
        witness: SubsetWindow::from_unsorted(witness, a.len() as u64),
        a,
        ratios,
        upper_bound_i,
        partial,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityWitness {
    pub set: SubsetWindow,
    /// First `j` with `|F ∩ [0, j)| < j (I − 1/k)`, if any.
    pub first_violation: Option<u64>,
}

impl DensityWitness {
    pub fn satisfied(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// Greedy independence set meeting `|F ∩ [0, j)| ≥ j (bound − 1/precision)`.
pub fn density_witness(
    tuple: &CylinderTuple,
    bound: Ratio<u64>,
    precision: u64,
    horizon: u64,
    budget: Budget,
) -> Result<DensityWitness> {
    if precision == 0 || horizon == 0 {
        return Err(Error::invalid("precision and horizon must be positive"));
    }
    let engine = tuple.engine(horizon, budget)?;
    let mut set: Vec<u64> = Vec::new();
    for j in 0..horizon {
        set.push(j);
        if !engine.check(&set)?.is_independent() {
            set.pop();
        }
    }
    // count·k·den ≥ j·(num·k − den), in exact integers.
    let (num, den) = (*bound.numer() as i128, *bound.denom() as i128);
    let k = precision as i128;
    let mut count = 0i128;
    let mut first_violation = None;
    for j in 1..=horizon {
        if set.binary_search(&(j - 1)).is_ok() {
            count += 1;
        }
        if count * k * den < j as i128 * (num * k - den) {
            first_violation = Some(j);
            break;
        }
    }
    Ok(DensityWitness {
        set: SubsetWindow::from_unsorted(set, horizon),
        first_violation,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IpBuilderReport {
    pub generators: Vec<u64>,
    /// Zero together with every nonempty subset sum.
    pub verified_sums: SubsetWindow,
    /// Candidates tried at each step.
    pub tried: Vec<u64>,
    /// Step at which no candidate worked.
    pub exhausted_at: Option<usize>,
}

/// Generators `t_1 < t_2 < ..` with `t_{k+1}` above all earlier sums, so
/// that the finite sums stay distinct, each step re-checked for independence.
pub fn ip_independence_builder(
    tuple: &CylinderTuple,
    depth: usize,
    step_horizon: u64,
    budget: Budget,
) -> Result<IpBuilderReport> {
    let shift = tuple.shift();
    let m_f = shift.spec().memory().ok_or_else(|| {
        Error::Precondition(format!("{} subshifts are not checked for mixing", shift.spec().kind_name()))
    })?;
    if !shift.is_mixing_window(m_f as u64)? {
        return Err(Error::Precondition("subshift fails the mixing window check".into()));
    }
    if depth == 0 || step_horizon == 0 {
        return Err(Error::invalid("depth and step horizon must be positive"));
    }
    if depth > 20 {
        return Err(Error::SizeLimit(format!("depth {depth} means 2^{depth} sums")));
    }
    let mut generators = Vec::new();
    let mut sums = vec![0u64];
    let mut tried = Vec::new();
    for step in 0..depth {
        let base: u64 = generators.iter().sum();
        let mut found = None;
        let mut count = 0;
        for t in base + 1..=base + step_horizon {
            count += 1;
            let mut trial = sums.clone();
            trial.extend(sums.iter().map(|s| s + t));
            trial.sort_unstable();
            let set = SubsetWindow::new(trial, base + t + 1)?;
            if is_independence_set(tuple, &set, budget)?.is_independent() {
                found = Some((t, set));
                break;
            }
        }
        tried.push(count);
        match found {
            Some((t, set)) => {
                generators.push(t);
                sums = set.elements().to_vec();
            }
            None => {
                return Ok(IpBuilderReport {
                    verified_sums: SubsetWindow::from_unsorted(sums, base + 1),
                    generators,
                    tried,
                    exhausted_at: Some(step + 1),
                })
            }
        }
    }
    let mut all = ip_generate(&generators)?.elements().to_vec();
    all.push(0);
    let verified_sums = SubsetWindow::from_unsorted(all, generators.iter().sum::<u64>() + 1);
    if !is_independence_set(tuple, &verified_sums, budget)?.is_independent() {
        return Err(Error::Invariant("finite sums failed the final independence check".into()));
    }
    Ok(IpBuilderReport {
        generators,
        verified_sums,
        tried,
        exhausted_at: None,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct EntropyBracket {
    pub lower: f64,
    pub upper: f64,
    /// Realisable visit patterns on the first `m` elements, `m = 1..=depth`.
    pub pattern_counts: Vec<u128>,
    /// Largest independence subset of the first `m` elements.
    pub independent_sizes: Vec<usize>,
    pub complete: bool,
}

/// Bracket for the sequence entropy of the cover by complements of `cylinders`.
pub fn sequence_entropy_bracket(
    shift: &Subshift,
    cylinders: &[Word],
    f: &SubsetWindow,
    depth: usize,
    budget: Budget,
) -> Result<EntropyBracket> {
    if cylinders.is_empty() {
        return Err(Error::invalid("need at least one cylinder"));
    }
    let len = cylinders[0].len();
    if cylinders.iter().any(|w| w.len() != len) {
        return Err(Error::invalid("cylinders must share one base length"));
    }
    for (i, a) in cylinders.iter().enumerate() {
        if cylinders[..i].contains(a) {
            return Err(Error::invalid(format!("cylinder [{a}] repeated, so not disjoint")));
        }
    }
    if depth == 0 || depth > f.len() {
        return Err(Error::invalid(format!("depth must lie in [1, {}]", f.len())));
    }
    let n = cylinders.len();
    let targets: Vec<Vec<Word>> = cylinders.iter().map(|w| vec![w.clone()]).collect();
    let tuple = CylinderTuple::new(shift.clone(), targets)?;
    let positions = &f.elements()[..depth];
    let engine = tuple.engine(positions[depth - 1] + 1, budget)?;
    let per_element = if n > 1 {
        (n as f64 / (n as f64 - 1.0)).ln()
    } else {
        0.0
    };
    let mut out = EntropyBracket {
        lower: 0.0,
        upper: 0.0,
        pattern_counts: Vec::new(),
        independent_sizes: Vec::new(),
        complete: true,
    };
    let mut best = 0usize;
    for m in 1..=depth {
        let prefix = &positions[..m];
        let count = engine.count_realizable(prefix)?;
        out.pattern_counts.push(count);
        if count > 0 {
            out.upper = out.upper.max((count as f64).ln() / m as f64);
        }
        // The best set can grow by at most the new element.
        let r = engine.find_subset(&prefix[..m - 1], best, Some(prefix[m - 1]))?;
        out.complete &= r.complete;
        if r.found.is_some() {
            best += 1;
        }
        out.independent_sizes.push(best);
        out.lower = out.lower.max(best as f64 * per_element / m as f64);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SingleSetFamily {
    /// Multiples `{0, k, 2k, ..}` for some step `k`.
    Multiples,
    Ip(Vec<u64>),
    Explicit(SubsetWindow),
}

impl fmt::Display for SingleSetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingleSetFamily::Multiples => write!(f, "multiples"),
            SingleSetFamily::Ip(g) => {
                let parts: Vec<String> = g.iter().map(u64::to_string).collect();
                write!(f, "ip:{}", parts.join("+"))
            }
            SingleSetFamily::Explicit(s) => write!(f, "explicit:{s}"),
        }
    }
}

impl FromStr for SingleSetFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "multiples" {
            return Ok(SingleSetFamily::Multiples);
        }
        if let Some(rest) = s.strip_prefix("ip:") {
            let gens = rest
                .split('+')
                .map(|g| g.trim().parse::<u64>().map_err(|_| Error::invalid(format!("bad generator {g:?}"))))
                .collect::<Result<Vec<_>>>()?;
            return Ok(SingleSetFamily::Ip(gens));
        }
        if let Some(rest) = s.strip_prefix("explicit:") {
            return Ok(SingleSetFamily::Explicit(rest.parse()?));
        }
        Err(Error::Unsupported(format!("family {s:?}; expected multiples, ip:.. or explicit:..")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingleSetWitness {
    pub set: SubsetWindow,
    pub step: Option<u64>,
}

/// A member of the family that is an independence set for the single cylinder `u`.
///
/// For multiples, step `k` is accepted when `u` can be read at each of
/// `0, k, .., (horizon − 1)k`.
pub fn single_set_independence(
    shift: &Subshift,
    u: &Word,
    family: &SingleSetFamily,
    horizon: u64,
    budget: Budget,
) -> Result<Option<SingleSetWitness>> {
    let tuple = CylinderTuple::new(shift.clone(), vec![vec![u.clone()]])?;
    match family {
        SingleSetFamily::Multiples => {
            if horizon == 0 {
                return Err(Error::invalid("horizon must be positive"));
            }
            for k in 1..=horizon {
                let set = SubsetWindow::new((0..horizon).map(|i| i * k).collect(), (horizon - 1) * k + 1)?;
                if is_independence_set(&tuple, &set, budget)?.is_independent() {
                    return Ok(Some(SingleSetWitness { set, step: Some(k) }));
                }
            }
            Ok(None)
        }
        SingleSetFamily::Ip(gens) => {
            let mut all = ip_generate(gens)?.elements().to_vec();
            all.push(0);
            let set = SubsetWindow::from_unsorted(all, 1);
            let ok = is_independence_set(&tuple, &set, budget)?.is_independent();
            Ok(ok.then_some(SingleSetWitness { set, step: None }))
        }
        SingleSetFamily::Explicit(set) => {
            let ok = is_independence_set(&tuple, set, budget)?.is_independent();
            Ok(ok.then(|| SingleSetWitness {
                set: set.clone(),
                step: None,
            }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subshift::SubshiftSpec;

    fn tuple(spec: SubshiftSpec, targets: &str) -> CylinderTuple {
        CylinderTuple::new(Subshift::new(spec).unwrap(), parse_targets(targets).unwrap()).unwrap()
    }

    fn set(el: &[u64]) -> SubsetWindow {
        SubsetWindow::from_unsorted(el.to_vec(), 1)
    }

    #[test]
    fn decision_examples() {
        let b = Budget::default();
        let full = tuple(SubshiftSpec::full(2), "0,1");
        assert!(is_independence_set(&full, &SubsetWindow::interval(0..10), b).unwrap().is_independent());
        let golden = tuple(SubshiftSpec::golden_mean(), "0,1");
        assert_eq!(is_independence_set(&golden, &set(&[0, 1]), b).unwrap(), Verdict::Refuted(vec![1, 1]));
        assert!(is_independence_set(&golden, &set(&[0, 2]), b).unwrap().is_independent());
        let e = golden.engine(3, b).unwrap();
        assert_eq!(e.witness(&[0, 2], &[1, 1]).unwrap().unwrap().to_string(), "101");
    }

    #[test]
    fn union_targets() {
        let b = Budget::default();
        // Without the union, [1] at 0 and 1 is the forbidden word 11.
        let plain = tuple(SubshiftSpec::golden_mean(), "1,00");
        assert!(!is_independence_set(&plain, &set(&[0, 1]), b).unwrap().is_independent());
        let golden = tuple(SubshiftSpec::golden_mean(), "1|01,00");
        assert!(is_independence_set(&golden, &set(&[0, 1]), b).unwrap().is_independent());
        let e = golden.engine(2, b).unwrap();
        assert_eq!(e.witness(&[0, 1], &[0, 0]).unwrap().unwrap().to_string(), "101");
        assert!(CylinderTuple::new(Subshift::new(SubshiftSpec::golden_mean()).unwrap(), vec![vec![]]).is_err());
        assert!(CylinderTuple::new(Subshift::new(SubshiftSpec::golden_mean()).unwrap(), parse_targets("11").unwrap()).is_err());
    }

    #[test]
    fn profiles() {
        let b = Budget::default();
        let full = max_independence_within(&tuple(SubshiftSpec::full(2), "0,1"), 10, b).unwrap();
        assert_eq!(full.a, (1..=10).collect::<Vec<u64>>());
        assert_eq!(full.upper_bound_i, Ratio::from_integer(1));
        let golden = max_independence_within(&tuple(SubshiftSpec::golden_mean(), "0,1"), 10, b).unwrap();
        assert_eq!(golden.a, (1..=10).map(|k: u64| k.div_ceil(2)).collect::<Vec<_>>());
        assert!(golden.is_subadditive());
        assert_eq!(golden.witness.len(), 5);
        assert!(golden.to_csv().starts_with("k,a_k,ratio\n1,1,1\n2,1,1/2\n"));
    }

    #[test]
    fn density_witnesses() {
        let b = Budget::default();
        let full = tuple(SubshiftSpec::full(2), "0,1");
        let w = density_witness(&full, Ratio::from_integer(1), 5, 30, b).unwrap();
        assert_eq!(w.set, SubsetWindow::interval(0..30));
        let golden = tuple(SubshiftSpec::golden_mean(), "0,1");
        let w = density_witness(&golden, Ratio::new(1, 2), 10, 30, b).unwrap();
        assert!(w.satisfied());
        assert_eq!(w.set, SubsetWindow::arithmetic(2, 0, 30).unwrap());
    }

    #[test]
    fn ip_builder() {
        let b = Budget::default();
        let r = ip_independence_builder(&tuple(SubshiftSpec::full(2), "0,1"), 2, 20, b).unwrap();
        assert_eq!(r.generators, vec![1, 2]);
        assert_eq!(r.verified_sums.elements(), &[0, 1, 2, 3]);
        let r = ip_independence_builder(&tuple(SubshiftSpec::golden_mean(), "0,1"), 2, 20, b).unwrap();
        assert!(r.verified_sums.elements().windows(2).all(|w| w[1] - w[0] >= 2));
        let period2 = SubshiftSpec::Sft {
            p: 2,
            forbidden: parse_targets("00,11").unwrap().concat(),
        };
        assert!(matches!(
            ip_independence_builder(&tuple(period2, "0,1"), 2, 20, b),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn entropy_brackets() {
        let b = Budget::default();
        let full = Subshift::new(SubshiftSpec::full(2)).unwrap();
        let cyl = parse_targets("0,1").unwrap().concat();
        let r = sequence_entropy_bracket(&full, &cyl, &SubsetWindow::interval(0..8), 8, b).unwrap();
        assert_eq!(r.pattern_counts, (1..=8).map(|m| 1u128 << m).collect::<Vec<_>>());
        assert!((r.upper - 2f64.ln()).abs() < 1e-12);
        assert!(r.lower <= r.upper + 1e-12);
        let r = sequence_entropy_bracket(&full, &cyl[..1], &SubsetWindow::interval(0..4), 4, b).unwrap();
        assert_eq!((r.lower, r.upper), (0.0, 0.0));
        assert!(sequence_entropy_bracket(&full, &parse_targets("0,0").unwrap().concat(), &SubsetWindow::interval(0..4), 4, b).is_err());
    }

    #[test]
    fn single_sets() {
        let b = Budget::default();
        let w = |s: &str| s.parse::<Word>().unwrap();
        let m = SingleSetFamily::Multiples;
        let full = Subshift::new(SubshiftSpec::full(2)).unwrap();
        assert_eq!(single_set_independence(&full, &w("0"), &m, 12, b).unwrap().unwrap().step, Some(1));
        let golden = Subshift::new(SubshiftSpec::golden_mean()).unwrap();
        assert_eq!(single_set_independence(&golden, &w("1"), &m, 12, b).unwrap().unwrap().step, Some(2));
        let fib = Subshift::new(SubshiftSpec::fibonacci()).unwrap();
        assert_eq!(single_set_independence(&fib, &w("1"), &m, 12, b).unwrap(), None);
        assert_eq!("ip:1+2".parse::<SingleSetFamily>().unwrap().to_string(), "ip:1+2");
        assert!("cofinite:3".parse::<SingleSetFamily>().is_err());
    }
}
