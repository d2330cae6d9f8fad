use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const DIGITS: &[u8] = b"0123456789abcdefghijklmnopqrstuvwxyz";

/// Largest alphabet that still has a one-character text encoding.
pub const MAX_TEXT_ALPHABET: usize = DIGITS.len();

/// A finite word over `{0, .., p-1}`, position 0 leftmost.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(symbols: Vec<u8>) -> Self {
        Word(symbols)
    }

    pub fn zeros(len: usize) -> Self {
        Word(vec![0; len])
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<u8> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_symbol(&self) -> Option<u8> {
        self.0.iter().copied().max()
    }

    /// Checks every symbol against the alphabet size.
    pub fn check_alphabet(&self, p: usize) -> Result<()> {
        match self.0.iter().find(|&&s| s as usize >= p) {
            Some(s) => Err(Error::invalid(format!(
                "symbol {s} outside alphabet of size {p} in word {self}"
            ))),
            None => Ok(()),
        }
    }

    /// True if `other` occurs somewhere in `self`.
    pub fn contains(&self, other: &Word) -> bool {
        if other.is_empty() {
            return true;
        }
        self.0.windows(other.len()).any(|w| w == other.symbols())
    }

    /// Drops the first `n` symbols (the shift applied to a finite block).
    pub fn shifted(&self, n: usize) -> Word {
        Word(self.0[n.min(self.0.len())..].to_vec())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Parses a digit string (0-9 then a-z for larger alphabets).
    pub fn parse_digits(s: &str) -> Result<Word> {
        let symbols = s
            .bytes()
            .map(|b| {
                DIGITS
                    .iter()
                    .position(|&d| d == b.to_ascii_lowercase())
                    .map(|v| v as u8)
                    .ok_or_else(|| Error::invalid(format!("bad symbol {:?} in word {s:?}", b as char)))
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(Word(symbols))
    }
}

impl From<Vec<u8>> for Word {
    fn from(v: Vec<u8>) -> Self {
        Word(v)
    }
}

impl From<&[u8]> for Word {
    fn from(v: &[u8]) -> Self {
        Word(v.to_vec())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Word::parse_digits(s)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.0 {
            let c = DIGITS.get(s as usize).copied().unwrap_or(b'?');
            write!(f, "{}", c as char)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// Base-p value of a word, most significant symbol first, so numeric
/// order equals lexicographic order among words of one length.
pub fn word_code(symbols: &[u8], p: usize) -> usize {
    symbols.iter().fold(0usize, |acc, &s| acc * p + s as usize)
}

pub fn code_word(mut code: usize, len: usize, p: usize) -> Word {
    let mut v = vec![0u8; len];
    for slot in v.iter_mut().rev() {
        *slot = (code % p) as u8;
        code /= p;
    }
    Word(v)
}
