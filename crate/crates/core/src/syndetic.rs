//! Certificates that a syndetic set is not an independence set for
//! `([0]_X, [1]_X)` in a minimal binary subshift.

use std::fmt;
use std::str::FromStr;

use crate::avoidance::{self, AvoidanceInstance, SolveOutcome};
use crate::error::{Error, Result};
use crate::independence::{Budget, CylinderTuple};
use crate::sets::{syndetic_with_gap, SubsetWindow};
use crate::subshift::{Subshift, SubshiftSpec};
use crate::word::Word;

/// Scale `(n, R)` at which minimality is checked.
pub const DEFAULT_SCALE: (usize, usize) = (2, 16);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Refuted,
    /// No contradiction within the searched depth.
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Refuted => "refuted",
            Status::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionCertificate {
    pub spec: SubshiftSpec,
    pub f: SubsetWindow,
    pub scale: (usize, usize),
    pub l: usize,
    pub m: usize,
    pub a: Word,
    pub x: Word,
    pub status: Status,
    /// Smallest `J` with no `y ∈ X` satisfying `y(n_j) = x(j)` for `j < J`;
    /// the number of elements searched when inconclusive.
    pub depth: usize,
    /// Refuting subset `J₀ ⊆ F` and the symbols `x` assigns on it.
    pub refuting_set: Vec<u64>,
    pub assignment: Word,
}

/// Gap bound `ℓ`: the largest gap, also covering `n_0`.
pub fn gap_bound(f: &SubsetWindow) -> Result<usize> {
    let first = f.min().ok_or_else(|| Error::invalid("F is empty"))?;
    let gaps = f.elements().windows(2).map(|w| w[1] - w[0]).max().unwrap_or(1);
    Ok(gaps.max(first).max(1) as usize)
}

/// `A_j` for `j` with `j + m − 1 < |F|`, read from `a` (1-based) along the gaps of `F`.
pub fn derive_sets(a: &Word, f: &[u64], l: usize, m: usize) -> Result<Vec<Vec<Word>>> {
    if a.len() != m * l {
        return Err(Error::invalid(format!("a has length {} not mℓ = {}", a.len(), m * l)));
    }
    if f.len() < m {
        return Ok(Vec::new());
    }
    (0..=f.len() - m)
        .map(|j| {
            let mut set: Vec<Word> = (1..=l)
                .map(|k| {
                    (0..m)
                        .map(|i| {
                            let idx = k + (f[j + i] - f[j]) as usize;
                            a.symbols()
                                .get(idx - 1)
                                .copied()
                                .ok_or_else(|| Error::invalid(format!("gap at F[{j}] exceeds ℓ = {l}")))
                        })
                        .collect::<Result<Vec<u8>>>()
                        .map(Word::new)
                })
                .collect::<Result<_>>()?;
            set.sort();
            set.dedup();
            Ok(set)
        })
        .collect()
}

fn instance_for(a: &Word, f: &[u64], l: usize, m: usize) -> Result<AvoidanceInstance> {
    AvoidanceInstance::explicit(2, m, l, &derive_sets(a, f, l, m)?)
}

fn digits(x: &Word, idx: &[usize]) -> Word {
    Word::new(idx.iter().map(|&i| x.symbols()[i]).collect())
}

/// Positions `F[j]` carrying `x(j)` for the chosen indices are unrealisable in `X`.
fn unrealizable(shift: &Subshift, f: &[u64], x: &Word, idx: &[usize]) -> Result<bool> {
    let Some(&last) = idx.last() else {
        return Ok(false);
    };
    let mut pattern = vec![None; f[last] as usize + 1];
    for &i in idx {
        pattern[f[i] as usize] = Some(x.symbols()[i]);
    }
    Ok(shift.realize(&pattern)?.is_none())
}

/// Builds the certificate from the first `depth` elements of `F`.
pub fn build_obstruction(
    shift: &Subshift,
    f: &SubsetWindow,
    scale: (usize, usize),
    depth: usize,
) -> Result<ObstructionCertificate> {
    if shift.alphabet_size() != 2 {
        return Err(Error::Precondition("the obstruction needs a binary subshift".into()));
    }
    if !shift.is_minimal_window(scale.0, scale.1)? {
        return Err(Error::Precondition(format!(
            "subshift fails the minimality check at scale ({}, {})",
            scale.0, scale.1
        )));
    }
    let l = gap_bound(f)?;
    if !syndetic_with_gap(f, l as u64) {
        return Err(Error::Precondition(format!("F is not syndetic with gap {l} in its window")));
    }
    let m = avoidance::guaranteed_m(l);
    if depth == 0 || depth > f.len() {
        return Err(Error::invalid(format!("depth must lie in [1, {}]", f.len())));
    }
    let el = &f.elements()[..depth];
    let a = shift.lex_least_word(m * l)?;
    let inst = instance_for(&a, el, l, m)?;
    let x = match avoidance::solve_prefix(&inst, depth, 2 * m)? {
        SolveOutcome::Solved { x, .. } => x,
        SolveOutcome::Exhausted { position, .. } => {
            return Err(Error::Invariant(format!("avoidance failed at {position} with m = 4ℓ+2")))
        }
    };

    // Grow the constrained pattern until no point of X fits it.
    let sys = shift.constraints(el[depth - 1] as usize + 1)?;
    let mut state = sys.initial();
    let mut refuted_at = None;
    for (j, &n) in el.iter().enumerate() {
        let sym = Word::new(vec![x.symbols()[j]]);
        match sys.apply(&state, n as usize, std::slice::from_ref(&sym))? {
            Some(next) => state = next,
            None => {
                refuted_at = Some(j + 1);
                break;
            }
        }
    }
    let spec = shift.spec().clone();
    let Some(depth_found) = refuted_at else {
        return Ok(ObstructionCertificate {
            spec,
            f: f.clone(),
            scale,
            l,
            m,
            a,
            x,
            status: Status::Inconclusive,
            depth,
            refuting_set: Vec::new(),
            assignment: Word::default(),
        });
    };

    let mut keep: Vec<usize> = (0..depth_found).collect();
    let mut i = 0;
    while i < keep.len() {
        let mut trial = keep.clone();
        trial.remove(i);
        if unrealizable(shift, el, &x, &trial)? {
            keep = trial;
        } else {
            i += 1;
        }
    }
    Ok(ObstructionCertificate {
        spec,
        f: f.clone(),
        scale,
        l,
        m,
        a,
        refuting_set: keep.iter().map(|&i| el[i]).collect(),
        assignment: digits(&x, &keep),
        x,
        status: Status::Refuted,
        depth: depth_found,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Instance,
    ForbiddenSets,
    SlidingScan,
    Independence,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Instance => "instance",
            Stage::ForbiddenSets => "forbidden-sets",
            Stage::SlidingScan => "sliding-scan",
            Stage::Independence => "independence",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub failed: Option<(Stage, String)>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.failed.is_none()
    }

    fn fail(stage: Stage, why: impl Into<String>) -> Self {
        Verification {
            failed: Some((stage, why.into())),
        }
    }
}

/// Independent re-check of every stage of a certificate.
pub fn verify_certificate(cert: &ObstructionCertificate, shift: &Subshift, f: &SubsetWindow) -> Result<Verification> {
    use Stage::*;
    if &cert.spec != shift.spec() || &cert.f != f {
        return Ok(Verification::fail(Instance, "certificate is for another subshift or set"));
    }
    if cert.status != Status::Refuted {
        return Ok(Verification::fail(Instance, "certificate is inconclusive"));
    }
    let l = gap_bound(f)?;
    if cert.l != l || cert.m != avoidance::guaranteed_m(l) {
        return Ok(Verification::fail(ForbiddenSets, format!("expected ℓ={l}, m={}", avoidance::guaranteed_m(l))));
    }
    if cert.a.len() != cert.m * l || !shift.is_allowed(&cert.a)? {
        return Ok(Verification::fail(ForbiddenSets, "a is not an allowed word of length mℓ"));
    }
    let len = cert.x.len();
    if len > f.len() || len < cert.depth {
        return Ok(Verification::fail(SlidingScan, "x length does not fit F"));
    }
    let el = &f.elements()[..len];
    let inst = instance_for(&cert.a, el, l, cert.m)?;
    if let Some(n) = avoidance::first_violation(&inst, &cert.x) {
        return Ok(Verification::fail(SlidingScan, format!("x hits A_{n}")));
    }
    // The recorded x must be the canonical least avoider.
    match avoidance::solve_prefix(&inst, len, 2 * cert.m)? {
        SolveOutcome::Solved { x, .. } if x == cert.x => {}
        _ => return Ok(Verification::fail(SlidingScan, "x is not the least avoiding word")),
    }
    let mut idx = Vec::new();
    for n in &cert.refuting_set {
        match el.iter().position(|e| e == n) {
            Some(i) if i < cert.depth => idx.push(i),
            _ => return Ok(Verification::fail(Independence, format!("{n} is not among the first {} elements of F", cert.depth))),
        }
    }
    if digits(&cert.x, &idx) != cert.assignment {
        return Ok(Verification::fail(Independence, "assignment disagrees with x"));
    }
    let tuple = CylinderTuple::new(shift.clone(), vec![vec![Word::new(vec![0])], vec![Word::new(vec![1])]])?;
    let horizon = cert.refuting_set.last().map_or(1, |&n| n + 1);
    let engine = tuple.engine(horizon, Budget::default())?;
    if engine.check(&cert.refuting_set)?.is_independent() {
        return Ok(Verification::fail(Independence, "J₀ is an independence set"));
    }
    let assignment: Vec<usize> = cert.assignment.symbols().iter().map(|&s| s as usize).collect();
    if engine.witness(&cert.refuting_set, &assignment)?.is_some() {
        return Ok(Verification::fail(Independence, "the recorded assignment is realisable"));
    }
    Ok(Verification { failed: None })
}

fn join(el: &[u64]) -> String {
    el.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for ObstructionCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[instance]")?;
        write!(f, "{}", self.spec)?;
        writeln!(f, "F={}", self.f)?;
        writeln!(f, "scale={},{}", self.scale.0, self.scale.1)?;
        writeln!(f, "l={}", self.l)?;
        writeln!(f, "m={}", self.m)?;
        writeln!(f, "\n[a]\n{}", self.a)?;
        writeln!(f, "\n[x]\n{}", self.x)?;
        writeln!(f, "\n[refutation]")?;
        writeln!(f, "status={}", self.status)?;
        writeln!(f, "depth={}", self.depth)?;
        writeln!(f, "set={}", join(&self.refuting_set))?;
        writeln!(f, "assignment={}", self.assignment)
    }
}

impl FromStr for ObstructionCertificate {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut section = "";
        let mut spec_lines = String::new();
        let (mut fset, mut scale, mut l, mut m) = (None, None, None, None);
        let (mut a, mut x) = (None, None);
        let (mut status, mut depth, mut set, mut assignment) = (None, None, None, None);
        let num = |line: usize, v: &str| v.trim().parse::<usize>().map_err(|_| Error::parse(line, format!("bad number {v:?}")));
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.trim();
            if body.is_empty() {
                continue;
            }
            if body.starts_with('[') && body.ends_with(']') {
                section = match body {
                    "[instance]" => "instance",
                    "[a]" => "a",
                    "[x]" => "x",
                    "[refutation]" => "refutation",
                    other => return Err(Error::parse(line, format!("unknown section {other}"))),
                };
                continue;
            }
            let word = |v: &str| v.parse::<Word>().map_err(|e| Error::parse(line, e.to_string()));
            match section {
                "instance" => {
                    let (k, v) = body.split_once('=').ok_or_else(|| Error::parse(line, "expected key=value"))?;
                    match k {
                        "F" => fset = Some(v.parse::<SubsetWindow>().map_err(|e| Error::parse(line, e.to_string()))?),
                        "scale" => {
                            let (n, r) = v.split_once(',').ok_or_else(|| Error::parse(line, "scale needs n,R"))?;
                            scale = Some((num(line, n)?, num(line, r)?));
                        }
                        "l" => l = Some(num(line, v)?),
                        "m" => m = Some(num(line, v)?),
                        _ => {
                            spec_lines.push_str(body);
                            spec_lines.push('\n');
                        }
                    }
                }
                "a" => a = Some(word(body)?),
                "x" => x = Some(word(body)?),
                "refutation" => {
                    let (k, v) = body.split_once('=').ok_or_else(|| Error::parse(line, "expected key=value"))?;
                    match k {
                        "status" => {
                            status = Some(match v {
                                "refuted" => Status::Refuted,
                                "inconclusive" => Status::Inconclusive,
                                _ => return Err(Error::parse(line, format!("bad status {v:?}"))),
                            })
                        }
                        "depth" => depth = Some(num(line, v)?),
                        "set" => {
                            set = Some(
                                v.split(',')
                                    .filter(|s| !s.trim().is_empty())
                                    .map(|s| num(line, s).map(|n| n as u64))
                                    .collect::<Result<Vec<_>>>()?,
                            )
                        }
                        "assignment" => assignment = Some(if v.is_empty() { Word::default() } else { word(v)? }),
                        _ => return Err(Error::parse(line, format!("unknown key {k:?}"))),
                    }
                }
                _ => return Err(Error::parse(line, "content before the first section")),
            }
        }
        let missing = |what: &str| Error::parse(0, format!("certificate lacks {what}"));
        Ok(ObstructionCertificate {
            spec: spec_lines.parse()?,
            f: fset.ok_or_else(|| missing("F"))?,
            scale: scale.ok_or_else(|| missing("scale"))?,
            l: l.ok_or_else(|| missing("l"))?,
            m: m.ok_or_else(|| missing("m"))?,
            a: a.ok_or_else(|| missing("[a]"))?,
            x: x.ok_or_else(|| missing("[x]"))?,
            status: status.ok_or_else(|| missing("status"))?,
            depth: depth.ok_or_else(|| missing("depth"))?,
            refuting_set: set.ok_or_else(|| missing("set"))?,
            assignment: assignment.ok_or_else(|| missing("assignment"))?,
        })
    }
}
