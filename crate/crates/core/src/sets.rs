//! Finite windows onto subsets of the nonnegative integers, density
//! estimates, family predicates and the combinatorial constructions that
//! live on such sets.
//!
//! Every quantity here is a finite-horizon surrogate of a limit; none of
//! them decides membership of an infinite set.

use std::collections::HashSet;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, Result};

/// Hard cap on the number of IP generators (2^24 subset sums).
pub const MAX_IP_GENERATORS: usize = 24;

/// Hard cap on the number of blocks in [`fss_construct`].
pub const MAX_FSS_BLOCKS: usize = 20;

/// Strictly increasing elements, all below `horizon`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct SubsetWindow {
    elements: Vec<u64>,
    horizon: u64,
}

impl SubsetWindow {
    pub fn new(elements: Vec<u64>, horizon: u64) -> Result<Self> {
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("elements must be strictly increasing"));
        }
        if let Some(&last) = elements.last() {
            if last >= horizon {
                return Err(Error::invalid(format!(
                    "element {last} is not below horizon {horizon}"
                )));
            }
        }
        Ok(SubsetWindow { elements, horizon })
    }

    /// Sorts and deduplicates; the horizon is raised to cover every element.
    pub fn from_unsorted(mut elements: Vec<u64>, horizon: u64) -> Self {
        elements.sort_unstable();
        elements.dedup();
        let horizon = horizon.max(elements.last().map_or(0, |&m| m + 1));
        SubsetWindow { elements, horizon }
    }

    pub fn empty(horizon: u64) -> Self {
        SubsetWindow {
            elements: Vec::new(),
            horizon,
        }
    }

    /// `[range.start, range.end)` as a window with horizon `range.end`.
    pub fn interval(range: Range<u64>) -> Self {
        SubsetWindow {
            elements: range.clone().collect(),
            horizon: range.end,
        }
    }

    /// `{offset, offset + step, ..} ∩ [0, horizon)`.
    pub fn arithmetic(step: u64, offset: u64, horizon: u64) -> Result<Self> {
        if step == 0 {
            return Err(Error::invalid("arithmetic step must be at least 1"));
        }
        let elements = (offset..horizon).step_by(step as usize).collect();
        Ok(SubsetWindow { elements, horizon })
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn min(&self) -> Option<u64> {
        self.elements.first().copied()
    }

    pub fn max(&self) -> Option<u64> {
        self.elements.last().copied()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// Number of elements in `[range.start, range.end)`.
    pub fn count_in(&self, range: Range<u64>) -> u64 {
        let lo = self.elements.partition_point(|&e| e < range.start);
        let hi = self.elements.partition_point(|&e| e < range.end);
        hi.saturating_sub(lo) as u64
    }

    pub fn translate(&self, m: u64) -> SubsetWindow {
        SubsetWindow {
            elements: self.elements.iter().map(|&e| e + m).collect(),
            horizon: self.horizon + m,
        }
    }

    pub fn is_subset_of(&self, other: &SubsetWindow) -> bool {
        self.elements.iter().all(|&e| other.contains(e))
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.elements.iter().copied()
    }

    /// Element values as positions, for the subshift-facing APIs.
    pub fn positions(&self) -> Vec<usize> {
        self.elements.iter().map(|&e| e as usize).collect()
    }
}

impl fmt::Display for SubsetWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.horizon)?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl FromStr for SubsetWindow {
    type Err = Error;

    /// `horizon;e1,e2,...` with ascending decimals.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (h, rest) = s
            .split_once(';')
            .ok_or_else(|| Error::invalid(format!("expected `horizon;e1,e2,...`, got {s:?}")))?;
        let horizon = parse_u64(h)?;
        let elements = if rest.trim().is_empty() {
            Vec::new()
        } else {
            rest.split(',').map(parse_u64).collect::<Result<Vec<_>>>()?
        };
        SubsetWindow::new(elements, horizon)
    }
}

fn parse_u64(s: &str) -> Result<u64> {
    s.trim()
        .parse::<u64>()
        .map_err(|_| Error::invalid(format!("not a nonnegative integer: {s:?}")))
}

/// Families of subsets of Z_+ that can be generated or tested at finite scale.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FamilySpec {
    Explicit(SubsetWindow),
    Arithmetic { step: u64, offset: u64 },
    Cofinite { threshold: u64 },
    Ip { generators: Vec<u64> },
    SyndeticGap { bound: u64 },
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            FamilySpec::Arithmetic { step: 0, .. } => {
                Err(Error::invalid("arithmetic step must be at least 1"))
            }
            FamilySpec::Ip { generators } if generators.is_empty() || generators.contains(&0) => {
                Err(Error::invalid("ip generators must be a nonempty list of positive integers"))
            }
            FamilySpec::SyndeticGap { bound: 0 } => Err(Error::invalid("syndetic gap bound must be at least 1")),
            _ => Ok(()),
        }
    }

    /// The member of the family generated inside `[0, horizon)`.
    pub fn prefix(&self, horizon: u64) -> Result<SubsetWindow> {
        self.validate()?;
        match self {
            FamilySpec::Explicit(w) => {
                let elements = w.iter().filter(|&e| e < horizon).collect();
                SubsetWindow::new(elements, horizon)
            }
            FamilySpec::Arithmetic { step, offset } => SubsetWindow::arithmetic(*step, *offset, horizon),
            FamilySpec::Cofinite { threshold } => Ok(SubsetWindow::interval(*threshold.min(&horizon)..horizon)),
            FamilySpec::Ip { generators } => {
                let full = ip_generate(generators)?;
                let elements = full.iter().filter(|&e| e < horizon).collect();
                SubsetWindow::new(elements, horizon)
            }
            FamilySpec::SyndeticGap { .. } => Err(Error::Unsupported(
                "a syndetic-gap family is a predicate, it has no canonical member".into(),
            )),
        }
    }

    /// Finite-scale membership: `set` contains the family's generated
    /// member within its horizon (or, for syndetic-gap, has bounded gaps).
    pub fn admits(&self, set: &SubsetWindow) -> Result<bool> {
        match self {
            FamilySpec::SyndeticGap { bound } => {
                self.validate()?;
                Ok(syndetic_with_gap(set, *bound))
            }
            _ => Ok(self.prefix(set.horizon())?.is_subset_of(set)),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Explicit(w) => write!(f, "explicit:{w}"),
            FamilySpec::Arithmetic { step, offset } => write!(f, "arith:{step},{offset}"),
            FamilySpec::Cofinite { threshold } => write!(f, "cofinite:{threshold}"),
            FamilySpec::Ip { generators } => {
                let g: Vec<String> = generators.iter().map(|g| g.to_string()).collect();
                write!(f, "ip:{}", g.join("+"))
            }
            FamilySpec::SyndeticGap { bound } => write!(f, "syndetic:{bound}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, body) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::invalid(format!("family spec needs `kind:...`, got {s:?}")))?;
        let spec = match kind {
            "explicit" => FamilySpec::Explicit(body.parse()?),
            "arith" => {
                let (k, off) = body
                    .split_once(',')
                    .ok_or_else(|| Error::invalid("arith family is `arith:step,offset`"))?;
                FamilySpec::Arithmetic {
                    step: parse_u64(k)?,
                    offset: parse_u64(off)?,
                }
            }
            "cofinite" => FamilySpec::Cofinite {
                threshold: parse_u64(body)?,
            },
            "ip" => FamilySpec::Ip {
                generators: body.split('+').map(parse_u64).collect::<Result<_>>()?,
            },
            "syndetic" => FamilySpec::SyndeticGap {
                bound: parse_u64(body)?,
            },
            other => return Err(Error::invalid(format!("unknown family kind {other:?}"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Finite-horizon density estimates, exact rationals.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DensityReport {
    pub lower: Ratio<u64>,
    pub upper: Ratio<u64>,
    pub banach_upper: Ratio<u64>,
    pub window_length: u64,
}

/// Lower/upper density estimates from the prefix ratios at multiples of
/// `window_length`, and the upper Banach estimate from every interval of
/// exactly `window_length` inside the horizon.
pub fn densities(set: &SubsetWindow, window_length: u64) -> Result<DensityReport> {
    let horizon = set.horizon();
    if window_length == 0 || window_length > horizon {
        return Err(Error::invalid(format!(
            "window length {window_length} must lie in [1, {horizon}]"
        )));
    }
    let mut lower = Ratio::from_integer(1u64);
    let mut upper = Ratio::from_integer(0u64);
    let mut n = window_length;
    while n <= horizon {
        let r = Ratio::new(set.count_in(0..n), n);
        lower = lower.min(r);
        upper = upper.max(r);
        n += window_length;
    }

    let mut best = 0u64;
    let mut count = set.count_in(0..window_length);
    best = best.max(count);
    for start in 1..=(horizon - window_length) {
        if set.contains(start - 1) {
            count -= 1;
        }
        if set.contains(start + window_length - 1) {
            count += 1;
        }
        best = best.max(count);
    }

    Ok(DensityReport {
        lower,
        upper,
        banach_upper: Ratio::new(best, window_length),
        window_length,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PwsWitness {
    pub start: u64,
    pub end: u64,
    /// Largest gap between consecutive elements inside `[start, end)`.
    pub gap: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FamilyPredicates {
    pub syndetic_with_gap: bool,
    pub thick_up_to: bool,
    pub pws_witness: Option<PwsWitness>,
}

/// Gaps bounded by `bound` everywhere inside the horizon: the first element
/// is at most `bound`, consecutive gaps are at most `bound`, and the
/// horizon ends within `bound` of the last element.
pub fn syndetic_with_gap(set: &SubsetWindow, bound: u64) -> bool {
    let (Some(first), Some(last)) = (set.min(), set.max()) else {
        return false;
    };
    first <= bound
        && set.horizon() - last <= bound
        && set.elements().windows(2).all(|w| w[1] - w[0] <= bound)
}

pub fn family_predicates(set: &SubsetWindow, gap_bound: u64, thick_depth: u64) -> Result<FamilyPredicates> {
    if gap_bound == 0 || thick_depth == 0 || thick_depth > set.horizon() {
        return Err(Error::invalid(format!(
            "need gap bound >= 1 and 1 <= depth <= horizon ({})",
            set.horizon()
        )));
    }

    let mut thick = false;
    let mut run = 0u64;
    let mut prev: Option<u64> = None;
    for e in set.iter() {
        run = if prev.is_some_and(|p| p + 1 == e) { run + 1 } else { 1 };
        if run >= thick_depth {
            thick = true;
            break;
        }
        prev = Some(e);
    }

    // Maximal runs of elements whose consecutive gaps stay within the bound.
    let mut pws = None;
    let el = set.elements();
    let mut i = 0;
    while i < el.len() && pws.is_none() {
        let mut j = i;
        let mut gap = 1;
        while j + 1 < el.len() && el[j + 1] - el[j] <= gap_bound {
            gap = gap.max(el[j + 1] - el[j]);
            j += 1;
        }
        let (start, end) = (el[i], el[j] + 1);
        if end - start >= thick_depth {
            pws = Some(PwsWitness { start, end, gap });
        }
        i = j + 1;
    }

    Ok(FamilyPredicates {
        syndetic_with_gap: syndetic_with_gap(set, gap_bound),
        thick_up_to: thick,
        pws_witness: pws,
    })
}

/// All sums over nonempty sets of distinct generator indices.
pub fn ip_generate(generators: &[u64]) -> Result<SubsetWindow> {
    if generators.is_empty() {
        return Err(Error::invalid("at least one generator is required"));
    }
    if generators.len() > MAX_IP_GENERATORS {
        return Err(Error::SizeLimit(format!(
            "{} generators exceed the limit of {MAX_IP_GENERATORS}",
            generators.len()
        )));
    }
    if generators.contains(&0) {
        return Err(Error::invalid("generators must be positive"));
    }
    let mut sums: Vec<u64> = vec![0];
    for &g in generators {
        let shifted: Vec<u64> = sums.iter().map(|&s| s + g).collect();
        sums.extend(shifted);
    }
    sums.remove(0);
    Ok(SubsetWindow::from_unsorted(sums, 0))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BlockWitness {
    /// `translates[j-1] + {p_1..p_j} ⊆ S` for every `j`.
    Found(Vec<i64>),
    /// No translate for level `failed_at` (1-based) inside the horizon.
    /// Inconclusive at this scale, not a disproof.
    Inconclusive { failed_at: usize, partial: Vec<i64> },
}

/// Searches nondecreasing translates `b_1 <= b_2 <= ..` with
/// `b_j + {p_1, .., p_j} ⊆ S`, where `p_1 < p_2 < ..` are the first
/// elements of `pattern`.
pub fn block_witness(set: &SubsetWindow, pattern: &SubsetWindow, depth: usize) -> Result<BlockWitness> {
    if depth == 0 || depth > pattern.len() {
        return Err(Error::invalid(format!(
            "depth {depth} must lie in [1, {}]",
            pattern.len()
        )));
    }
    let p = &pattern.elements()[..depth];
    let horizon = set.horizon() as i64;
    let mut b = -(p[0] as i64);
    let mut found = Vec::with_capacity(depth);
    for j in 1..=depth {
        let piece = &p[..j];
        let last = piece[j - 1] as i64;
        loop {
            if b + last >= horizon {
                return Ok(BlockWitness::Inconclusive {
                    failed_at: j,
                    partial: found,
                });
            }
            if piece.iter().all(|&q| set.contains((b + q as i64) as u64)) {
                break;
            }
            b += 1;
        }
        found.push(b);
    }
    Ok(BlockWitness::Found(found))
}

/// `F - F = {a - b : a, b ∈ F, a > b}`.
pub fn difference_set(set: &SubsetWindow) -> Result<SubsetWindow> {
    let Some(max) = set.max() else {
        return Err(Error::invalid("difference set of an empty set"));
    };
    let el = set.elements();
    let mut diffs = Vec::new();
    for (i, &a) in el.iter().enumerate() {
        for &b in &el[..i] {
            diffs.push(a - b);
        }
    }
    Ok(SubsetWindow::from_unsorted(diffs, max + 1))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TranslateReport {
    pub translate: i64,
    pub count: u64,
    pub success: bool,
    /// `d|F| > k`, so the counting guarantee can apply at all.
    pub precondition_holds: bool,
    /// The least interval length at which success is guaranteed.
    pub required_length: Option<u64>,
    /// `precondition_holds` and the interval is at least `required_length`.
    pub guaranteed: bool,
    pub density: Ratio<u64>,
}

/// Scans every translate `p ∈ [min I - max F, max I]` and returns the one
/// maximizing `|S ∩ I ∩ (F + p)|`.
pub fn find_translate(
    set: &SubsetWindow,
    interval: Range<u64>,
    pattern: &SubsetWindow,
    k: u64,
) -> Result<TranslateReport> {
    if interval.is_empty() || pattern.is_empty() {
        return Err(Error::invalid("interval and pattern must be nonempty"));
    }
    if interval.end > set.horizon() {
        return Err(Error::invalid("interval must lie inside the set's horizon"));
    }
    let len = interval.end - interval.start;
    let hits = set.count_in(interval.clone());
    let density = Ratio::new(hits, len);
    let fsize = pattern.len() as u64;
    let max_f = pattern.max().unwrap_or(0);

    // N minimal with d|F| / (1 + max F / N) >= k, i.e. N (c|F| - k|I|) >= k maxF |I|.
    let excess = (hits * fsize).checked_sub(k * len).filter(|&e| e > 0);
    let precondition_holds = excess.is_some();
    let required_length = excess.map(|e| (k * max_f * len).div_ceil(e).max(1));
    let guaranteed = required_length.is_some_and(|n| len >= n);

    let lo = interval.start as i64 - max_f as i64;
    let hi = interval.end as i64 - 1;
    let mut best = (lo, 0u64);
    for p in lo..=hi {
        let count = pattern
            .iter()
            .map(|f| f as i64 + p)
            .filter(|&x| x >= interval.start as i64 && x < interval.end as i64 && set.contains(x as u64))
            .count() as u64;
        if count > best.1 {
            best = (p, count);
        }
    }
    let success = best.1 >= k;
    if guaranteed && !success {
        return Err(Error::Invariant(format!(
            "interval of length {len} >= N = {} but best translate only reaches {} < {k}",
            required_length.unwrap_or(0),
            best.1
        )));
    }
    Ok(TranslateReport {
        translate: best.0,
        count: best.1,
        success,
        precondition_holds,
        required_length,
        guaranteed,
        density,
    })
}

/// True when `a_j - a_i > a_i - a_s` for all `s < i < j` (sorted input).
pub fn is_superincreasing_gap(block: &[u64]) -> bool {
    block.len() >= 3
        && block.windows(2).all(|w| w[0] < w[1])
        && (1..block.len() - 1).all(|i| block[i + 1] - block[i] > block[i] - block[0])
}

/// The blocks of size >= 3 with superincreasing gaps, ordered by largest
/// element, then size, then lexicographically.
pub fn superincreasing_blocks() -> impl Iterator<Item = Vec<u64>> {
    (4u64..).flat_map(|max| {
        let mut found = Vec::new();
        for first in 1..max {
            let mut stack = vec![first];
            extend_blocks(&mut stack, max, &mut found);
        }
        found.sort_by(|a: &Vec<u64>, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        found
    })
}

fn extend_blocks(stack: &mut Vec<u64>, max: u64, out: &mut Vec<Vec<u64>>) {
    let last = *stack.last().unwrap();
    let lo = if stack.len() >= 2 {
        // next - last > last - first
        2 * last - stack[0] + 1
    } else {
        last + 1
    };
    if lo > max {
        return;
    }
    if stack.len() >= 2 && lo <= max {
        stack.push(max);
        out.push(stack.clone());
        stack.pop();
    }
    for next in lo..max {
        stack.push(next);
        extend_blocks(stack, max, out);
        stack.pop();
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FssConstruction {
    pub set: SubsetWindow,
    /// `(A_i, t_i)`; the set is the union of the `A_i + t_i`.
    pub blocks: Vec<(Vec<u64>, u64)>,
}

/// A union of translated superincreasing-gap blocks, spread out by
/// `t_{i+1} = g (t_i + max A_i)` so that the union has no 3-term
/// arithmetic progression.
pub fn fss_construct(num_blocks: usize, growth: u64) -> Result<FssConstruction> {
    if num_blocks > MAX_FSS_BLOCKS {
        return Err(Error::SizeLimit(format!(
            "{num_blocks} blocks exceed the limit of {MAX_FSS_BLOCKS}"
        )));
    }
    if growth < 3 {
        return Err(Error::invalid("growth factor must be at least 3"));
    }
    let mut blocks = Vec::with_capacity(num_blocks);
    let mut elements = Vec::new();
    let mut t = 0u64;
    for block in superincreasing_blocks().take(num_blocks) {
        let top = *block.last().unwrap();
        elements.extend(block.iter().map(|&a| a + t));
        let next = t
            .checked_add(top)
            .and_then(|v| v.checked_mul(growth))
            .ok_or_else(|| Error::SizeLimit("translates overflow u64".into()))?;
        blocks.push((block, t));
        t = next;
    }
    let set = SubsetWindow::from_unsorted(elements, 0);
    if let Some((x, y, z)) = find_three_ap(&set) {
        return Err(Error::Invariant(format!(
            "construction produced the progression {x}, {y}, {z}"
        )));
    }
    Ok(FssConstruction { set, blocks })
}

/// Some `x < y < z` in the set with `x + z = 2y`.
pub fn find_three_ap(set: &SubsetWindow) -> Option<(u64, u64, u64)> {
    let el = set.elements();
    for (i, &x) in el.iter().enumerate() {
        for &z in &el[i + 1..] {
            if (x + z) % 2 == 0 {
                let y = (x + z) / 2;
                if set.contains(y) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AntiSsReport {
    pub set: SubsetWindow,
    /// False when the horizon ran out before `n` elements were found.
    pub complete: bool,
    /// `max_p |F ∩ (S + p)|` over the full translate range.
    pub max_intersection: u64,
}

/// Greedily builds `F = {b_1 < b_2 < ..}` so that no translate of `S`
/// meets `F` in more than two points. `S` must have strictly increasing
/// gaps; candidates are drawn from `[0, S.horizon)`.
pub fn anti_ss_sparse(set: &SubsetWindow, n: usize) -> Result<AntiSsReport> {
    let el = set.elements();
    let gaps: Vec<u64> = el.windows(2).map(|w| w[1] - w[0]).collect();
    if gaps.windows(2).any(|g| g[0] >= g[1]) {
        return Err(Error::invalid("consecutive gaps of S must be strictly increasing"));
    }
    let members: HashSet<u64> = el.iter().copied().collect();
    let in_s = |x: i64| x >= 0 && members.contains(&(x as u64));

    let mut chosen: Vec<u64> = Vec::with_capacity(n);
    let mut candidate = 0u64;
    while chosen.len() < n && candidate < set.horizon().max(1) {
        let b = candidate as i64;
        // A third coincidence needs a pair (b_i, b_j) and s in S with
        // b_i - s = b_j - s' = b - s'' for s', s'' in S.
        let clash = chosen.iter().enumerate().any(|(j, &bj)| {
            chosen[..j].iter().any(|&bi| {
                let d = (bj - bi) as i64;
                el.iter().any(|&s| {
                    let s = s as i64;
                    in_s(s + d) && in_s(b - bi as i64 + s)
                })
            })
        });
        if !clash {
            chosen.push(candidate);
        }
        candidate += 1;
    }
    let complete = chosen.len() == n;
    let horizon = set.horizon().max(chosen.last().map_or(0, |&c| c + 1));
    let f = SubsetWindow::new(chosen, horizon)?;
    let max_intersection = max_translate_intersection(&f, set);
    if max_intersection > 2 {
        return Err(Error::Invariant(format!(
            "greedy set meets a translate of S in {max_intersection} points"
        )));
    }
    Ok(AntiSsReport {
        set: f,
        complete,
        max_intersection,
    })
}

/// `max_p |F ∩ (S + p)|` for `p ∈ [min F - max S, max F - min S]`.
pub fn max_translate_intersection(f: &SubsetWindow, s: &SubsetWindow) -> u64 {
    let (Some(fmin), Some(fmax), Some(smin), Some(smax)) = (f.min(), f.max(), s.min(), s.max()) else {
        return 0;
    };
    let lo = fmin as i64 - smax as i64;
    let hi = fmax as i64 - smin as i64;
    (lo..=hi)
        .map(|p| {
            f.iter()
                .filter(|&x| {
                    let y = x as i64 - p;
                    y >= 0 && s.contains(y as u64)
                })
                .count() as u64
        })
        .max()
        .unwrap_or(0)
}
