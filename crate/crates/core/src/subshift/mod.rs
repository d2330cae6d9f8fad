//! Subshifts over finite alphabets and their finite-scale properties.

mod constraint;
mod graph;
mod substitution;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::sets::SubsetWindow;
use crate::word::{Word, MAX_TEXT_ALPHABET};

pub use constraint::{ConstraintSystem, State};
pub use graph::BlockGraph;
pub use substitution::Substitution;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubshiftSpec {
    Full { p: usize },
    Sft { p: usize, forbidden: Vec<Word> },
    Substitution { p: usize, rules: Vec<Word> },
    OrbitClosure { p: usize, prefix: Word },
}

impl SubshiftSpec {
    pub fn full(p: usize) -> Self {
        SubshiftSpec::Full { p }
    }

    pub fn golden_mean() -> Self {
        SubshiftSpec::Sft {
            p: 2,
            forbidden: vec![Word::new(vec![1, 1])],
        }
    }

    pub fn fibonacci() -> Self {
        SubshiftSpec::Substitution {
            p: 2,
            rules: vec![Word::new(vec![0, 1]), Word::new(vec![0])],
        }
    }

    pub fn thue_morse() -> Self {
        SubshiftSpec::Substitution {
            p: 2,
            rules: vec![Word::new(vec![0, 1]), Word::new(vec![1, 0])],
        }
    }

    pub fn alphabet_size(&self) -> usize {
        match self {
            SubshiftSpec::Full { p }
            | SubshiftSpec::Sft { p, .. }
            | SubshiftSpec::Substitution { p, .. }
            | SubshiftSpec::OrbitClosure { p, .. } => *p,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            SubshiftSpec::Full { .. } => "full",
            SubshiftSpec::Sft { .. } => "sft",
            SubshiftSpec::Substitution { .. } => "substitution",
            SubshiftSpec::OrbitClosure { .. } => "orbit",
        }
    }

    /// Longest forbidden word; 1 for full shifts.
    pub fn memory(&self) -> Option<usize> {
        match self {
            SubshiftSpec::Full { .. } => Some(1),
            SubshiftSpec::Sft { forbidden, .. } => forbidden.iter().map(Word::len).max().or(Some(1)),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let p = self.alphabet_size();
        if p < 2 {
            return Err(Error::invalid(format!("alphabet size {p} is below 2")));
        }
        if p > MAX_TEXT_ALPHABET {
            return Err(Error::invalid(format!("alphabet size {p} above {MAX_TEXT_ALPHABET}")));
        }
        match self {
            SubshiftSpec::Full { .. } => Ok(()),
            SubshiftSpec::Sft { forbidden, .. } => {
                for w in forbidden {
                    if w.is_empty() {
                        return Err(Error::invalid("empty forbidden word"));
                    }
                    w.check_alphabet(p)?;
                }
                Ok(())
            }
            SubshiftSpec::Substitution { rules, .. } => Substitution::new(p, rules).map(|_| ()),
            SubshiftSpec::OrbitClosure { prefix, .. } => {
                if prefix.is_empty() {
                    return Err(Error::invalid("empty generator prefix"));
                }
                prefix.check_alphabet(p)
            }
        }
    }

    /// Product system over the paired alphabet; `(a, b)` is encoded as `a·q + b`.
    pub fn product(&self, other: &SubshiftSpec) -> Result<SubshiftSpec> {
        let (p, q) = (self.alphabet_size(), other.alphabet_size());
        let lift = |spec: &SubshiftSpec| -> Result<Vec<Word>> {
            match spec {
                SubshiftSpec::Full { .. } => Ok(Vec::new()),
                SubshiftSpec::Sft { forbidden, .. } => Ok(forbidden.clone()),
                _ => Err(Error::Unsupported(format!(
                    "product of {} subshifts",
                    spec.kind_name()
                ))),
            }
        };
        let (fx, fy) = (lift(self)?, lift(other)?);
        if p * q > MAX_TEXT_ALPHABET {
            return Err(Error::SizeLimit(format!("product alphabet {} too large", p * q)));
        }
        if fx.is_empty() && fy.is_empty() {
            return Ok(SubshiftSpec::Full { p: p * q });
        }
        let mut forbidden = Vec::new();
        for w in &fx {
            for free in all_words(q, w.len()) {
                forbidden.push(Word::new(
                    w.symbols().iter().zip(&free).map(|(&a, &b)| a * q as u8 + b).collect(),
                ));
            }
        }
        for w in &fy {
            for free in all_words(p, w.len()) {
                forbidden.push(Word::new(
                    free.iter().zip(w.symbols()).map(|(&a, &b)| a * q as u8 + b).collect(),
                ));
            }
        }
        forbidden.sort();
        forbidden.dedup();
        Ok(SubshiftSpec::Sft { p: p * q, forbidden })
    }
}

fn all_words(p: usize, n: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..p as u8).map(move |c| {
                    let mut v = w.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
    }
    out
}

fn join_words(words: &[Word]) -> String {
    words.iter().map(Word::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for SubshiftSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p={}", self.alphabet_size())?;
        writeln!(f, "kind={}", self.kind_name())?;
        match self {
            SubshiftSpec::Full { .. } => Ok(()),
            SubshiftSpec::Sft { forbidden, .. } => writeln!(f, "forbidden={}", join_words(forbidden)),
            SubshiftSpec::Substitution { rules, .. } => {
                let parts: Vec<String> = rules.iter().enumerate().map(|(a, r)| format!("{a}:{r}")).collect();
                writeln!(f, "rules={}", parts.join(";"))
            }
            SubshiftSpec::OrbitClosure { prefix, .. } => writeln!(f, "prefix={prefix}"),
        }
    }
}

impl FromStr for SubshiftSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut p = None;
        let mut kind = None;
        let mut forbidden = None;
        let mut rules = None;
        let mut prefix = None;
        let word = |line: usize, s: &str| s.parse::<Word>().map_err(|e| Error::parse(line, e.to_string()));
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let raw = raw.trim();
            if raw.is_empty() || raw.starts_with('#') {
                continue;
            }
            let (key, value) = raw
                .split_once('=')
                .ok_or_else(|| Error::parse(line, format!("expected key=value, got {raw:?}")))?;
            let value = value.trim();
            match key.trim() {
                "p" => {
                    p = Some(
                        value
                            .parse::<usize>()
                            .map_err(|_| Error::parse(line, format!("bad alphabet size {value:?}")))?,
                    )
                }
                "kind" => kind = Some((line, value.to_string())),
                "forbidden" => {
                    let list = value
                        .split(',')
                        .filter(|s| !s.trim().is_empty())
                        .map(|s| word(line, s.trim()))
                        .collect::<Result<Vec<_>>>()?;
                    forbidden = Some(list);
                }
                "rules" => {
                    let mut list: Vec<(usize, Word)> = Vec::new();
                    for part in value.split(';').filter(|s| !s.trim().is_empty()) {
                        let (a, img) = part
                            .split_once(':')
                            .ok_or_else(|| Error::parse(line, format!("bad rule {part:?}")))?;
                        let a = a
                            .trim()
                            .parse::<usize>()
                            .map_err(|_| Error::parse(line, format!("bad rule symbol {a:?}")))?;
                        list.push((a, word(line, img.trim())?));
                    }
                    list.sort_by_key(|(a, _)| *a);
                    if list.iter().enumerate().any(|(i, (a, _))| i != *a) {
                        return Err(Error::parse(line, "rules must cover symbols 0..p exactly once"));
                    }
                    rules = Some(list.into_iter().map(|(_, w)| w).collect());
                }
                "prefix" => prefix = Some(word(line, value)?),
                other => return Err(Error::parse(line, format!("unknown key {other:?}"))),
            }
        }
        let p = p.ok_or_else(|| Error::parse(0, "missing p="))?;
        let (kline, kind) = kind.ok_or_else(|| Error::parse(0, "missing kind="))?;
        let spec = match kind.as_str() {
            "full" => SubshiftSpec::Full { p },
            "sft" => SubshiftSpec::Sft {
                p,
                forbidden: forbidden.ok_or_else(|| Error::parse(kline, "sft needs forbidden="))?,
            },
            "substitution" => SubshiftSpec::Substitution {
                p,
                rules: rules.ok_or_else(|| Error::parse(kline, "substitution needs rules="))?,
            },
            "orbit" => SubshiftSpec::OrbitClosure {
                p,
                prefix: prefix.ok_or_else(|| Error::parse(kline, "orbit needs prefix="))?,
            },
            other => return Err(Error::parse(kline, format!("unknown kind {other:?}"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Size guards for language tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LanguageLimits {
    /// Longest word length served by [`Subshift::language`].
    pub cap: usize,
    /// Most words a single table may hold.
    pub max_words: usize,
    /// Byte budget for factor tables of text-presented subshifts.
    pub max_bytes: usize,
}

impl Default for LanguageLimits {
    fn default() -> Self {
        LanguageLimits {
            cap: 24,
            max_words: 1 << 22,
            max_bytes: 1 << 28,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cylinder {
    pub base: Word,
    pub offset: usize,
}

impl Cylinder {
    pub fn new(base: Word, offset: usize) -> Self {
        Cylinder { base, offset }
    }

    pub fn at_zero(base: Word) -> Self {
        Cylinder { base, offset: 0 }
    }
}

#[derive(Clone, Debug)]
enum Repr {
    Graph(BlockGraph),
    Substitution(Substitution),
    Orbit(Word),
}

/// A subshift ready for language queries.
#[derive(Clone, Debug)]
pub struct Subshift {
    spec: SubshiftSpec,
    repr: Repr,
    limits: LanguageLimits,
}

impl Subshift {
    pub fn new(spec: SubshiftSpec) -> Result<Self> {
        Self::with_limits(spec, LanguageLimits::default())
    }

    pub fn with_limits(spec: SubshiftSpec, limits: LanguageLimits) -> Result<Self> {
        spec.validate()?;
        let p = spec.alphabet_size();
        let repr = match &spec {
            SubshiftSpec::Full { .. } => Repr::Graph(BlockGraph::new(p, &[])),
            SubshiftSpec::Sft { forbidden, .. } => {
                let m_f = forbidden.iter().map(Word::len).max().unwrap_or(1);
                if (p as f64).powi(m_f as i32 - 1) > limits.max_words as f64 {
                    return Err(Error::SizeLimit(format!(
                        "transition graph with {p}^{} nodes",
                        m_f - 1
                    )));
                }
                let g = BlockGraph::new(p, forbidden);
                if g.is_empty() {
                    return Err(Error::invalid("shift of finite type is empty"));
                }
                Repr::Graph(g)
            }
            SubshiftSpec::Substitution { rules, .. } => Repr::Substitution(Substitution::new(p, rules)?),
            SubshiftSpec::OrbitClosure { prefix, .. } => Repr::Orbit(prefix.clone()),
        };
        Ok(Subshift { spec, repr, limits })
    }

    pub fn spec(&self) -> &SubshiftSpec {
        &self.spec
    }

    pub fn limits(&self) -> LanguageLimits {
        self.limits
    }

    pub fn alphabet_size(&self) -> usize {
        self.spec.alphabet_size()
    }

    /// Language answers come from a finite prefix only.
    pub fn is_approximate(&self) -> bool {
        matches!(self.repr, Repr::Orbit(_))
    }

    pub fn graph(&self) -> Option<&BlockGraph> {
        match &self.repr {
            Repr::Graph(g) => Some(g),
            _ => None,
        }
    }

    /// Substitution subshift with a primitive rule set, hence minimal.
    pub fn is_primitive_substitution(&self) -> bool {
        matches!(&self.repr, Repr::Substitution(s) if s.is_primitive())
    }

    /// Number of allowed words of length `n`.
    pub fn count(&self, n: usize) -> Result<u128> {
        match &self.repr {
            Repr::Graph(g) => Ok(g.count_words(n)),
            _ => self.factors(n).map(|f| f.len() as u128),
        }
    }

    /// Allowed words of length `n`, sorted.
    pub fn language(&self, n: usize) -> Result<Vec<Word>> {
        if n > self.limits.cap {
            return Err(Error::SizeLimit(format!(
                "language length {n} above cap {}",
                self.limits.cap
            )));
        }
        match &self.repr {
            Repr::Graph(g) => {
                let count = g.count_words(n);
                if count > self.limits.max_words as u128 {
                    return Err(Error::SizeLimit(format!(
                        "{count} words of length {n} exceed {}",
                        self.limits.max_words
                    )));
                }
                Ok(g.words(n))
            }
            _ => self.factors(n),
        }
    }

    /// Distinct factors of length `n` with no length cap; text-presented kinds.
    pub fn factors(&self, n: usize) -> Result<Vec<Word>> {
        match &self.repr {
            Repr::Graph(_) => self.language(n),
            Repr::Substitution(s) => s.factors(n, self.limits.max_bytes),
            Repr::Orbit(prefix) => {
                if n > prefix.len() {
                    return Err(Error::SizeLimit(format!(
                        "length {n} exceeds generator prefix of length {}",
                        prefix.len()
                    )));
                }
                let mut words: Vec<Word> = prefix.symbols().windows(n).map(|w| Word::new(w.to_vec())).collect();
                words.sort();
                words.dedup();
                Ok(words)
            }
        }
    }

    pub fn is_allowed(&self, w: &Word) -> Result<bool> {
        let pattern: Vec<Option<u8>> = w.symbols().iter().map(|&c| Some(c)).collect();
        Ok(self.realize(&pattern)?.is_some())
    }

    /// Lexicographically least allowed word matching `pattern`.
    pub fn realize(&self, pattern: &[Option<u8>]) -> Result<Option<Word>> {
        if pattern.iter().flatten().any(|&c| c as usize >= self.alphabet_size()) {
            return Ok(None);
        }
        match &self.repr {
            Repr::Graph(g) => Ok(g.realize(pattern)),
            Repr::Orbit(prefix) => {
                if pattern.len() > prefix.len() {
                    return Err(Error::SizeLimit(format!(
                        "pattern of length {} exceeds generator prefix of length {}",
                        pattern.len(),
                        prefix.len()
                    )));
                }
                Ok(prefix
                    .symbols()
                    .windows(pattern.len())
                    .filter(|w| w.iter().zip(pattern).all(|(&s, c)| c.is_none_or(|c| c == s)))
                    .min()
                    .map(|w| Word::new(w.to_vec())))
            }
            Repr::Substitution(_) => {
                let windows = self.factors(pattern.len())?;
                Ok(windows.into_iter().find(|w| {
                    w.symbols()
                        .iter()
                        .zip(pattern)
                        .all(|(&s, c)| c.is_none_or(|c| c == s))
                }))
            }
        }
    }

    pub fn lex_least_word(&self, n: usize) -> Result<Word> {
        self.realize(&vec![None; n])?
            .ok_or_else(|| Error::Invariant(format!("no allowed word of length {n}")))
    }

    fn check_cylinder(&self, c: &Cylinder) -> Result<()> {
        c.base.check_alphabet(self.alphabet_size())?;
        if !self.is_allowed(&c.base)? {
            return Err(Error::invalid(format!("cylinder [{}] is empty", c.base)));
        }
        Ok(())
    }

    /// `N(U, V) ∩ [0, horizon)`.
    pub fn return_times(&self, u: &Cylinder, v: &Cylinder, horizon: u64) -> Result<SubsetWindow> {
        self.check_cylinder(u)?;
        self.check_cylinder(v)?;
        let horizon_us = horizon as usize;
        let span = (u.offset + u.base.len()).max(v.offset + horizon_us.saturating_sub(1) + v.base.len());
        let place = |pattern: &mut [Option<u8>], at: usize, w: &Word| -> bool {
            for (i, &c) in w.symbols().iter().enumerate() {
                match pattern[at + i] {
                    Some(d) if d != c => return false,
                    _ => pattern[at + i] = Some(c),
                }
            }
            true
        };
        let windows = match &self.repr {
            Repr::Graph(_) => None,
            _ => Some(self.factors(span)?),
        };
        let mut hits = Vec::new();
        for n in 0..horizon_us {
            let len = (u.offset + u.base.len()).max(v.offset + n + v.base.len());
            let mut pattern = vec![None; len];
            if !place(&mut pattern, u.offset, &u.base) || !place(&mut pattern, v.offset + n, &v.base) {
                continue;
            }
            let ok = match (&self.repr, &windows) {
                (Repr::Graph(g), _) => g.realize(&pattern).is_some(),
                (_, Some(ws)) => ws.iter().any(|w| {
                    w.symbols()
                        .iter()
                        .zip(&pattern)
                        .all(|(&s, c)| c.is_none_or(|c| c == s))
                }),
                _ => unreachable!(),
            };
            if ok {
                hits.push(n as u64);
            }
        }
        SubsetWindow::new(hits, horizon)
    }

    /// Every pair of one-symbol cylinders returns at each time in `[n0, n0 + m_f]`.
    pub fn is_mixing_window(&self, n0: u64) -> Result<bool> {
        let m_f = self
            .spec
            .memory()
            .ok_or_else(|| Error::Unsupported(format!("mixing check for {} subshifts", self.spec.kind_name())))?;
        let horizon = n0 + m_f as u64 + 1;
        let p = self.alphabet_size() as u8;
        for a in 0..p {
            for b in 0..p {
                let (u, v) = (Word::new(vec![a]), Word::new(vec![b]));
                if !self.is_allowed(&u)? || !self.is_allowed(&v)? {
                    continue;
                }
                let times = self.return_times(&Cylinder::at_zero(u), &Cylinder::at_zero(v), horizon)?;
                if times.count_in(n0..horizon) != horizon - n0 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Every allowed word of length `n` occurs in every allowed word of length `r`.
    pub fn is_minimal_window(&self, n: usize, r: usize) -> Result<bool> {
        if n == 0 || n > r {
            return Err(Error::invalid(format!("need 1 ≤ n ≤ R, got n={n}, R={r}")));
        }
        let short = self.language(n)?;
        let long = self.language(r)?;
        Ok(long.iter().all(|w| short.iter().all(|s| w.contains(s))))
    }

    /// Constraint system for patterns of total span at most `span`.
    pub fn constraints(&self, span: usize) -> Result<ConstraintSystem<'_>> {
        ConstraintSystem::new(self, span)
    }
}
