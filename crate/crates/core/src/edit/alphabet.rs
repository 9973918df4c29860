use serde::{Deserialize, Serialize};

use super::Sym;
use crate::{Error, Result};

/// Ordered set of distinct single-character symbols.
///
/// ε is not a member; it is addressed as code `len()` in cost matrices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Alphabet {
    symbols: Vec<char>,
}

const NUMBERED: &str = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz";

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("no symbols".into()));
        }
        if symbols.len() > Sym::MAX as usize {
            return Err(Error::InvalidAlphabet(format!(
                "{} symbols, at most {} supported",
                symbols.len(),
                Sym::MAX
            )));
        }
        for (i, c) in symbols.iter().enumerate() {
            if c.is_whitespace() || *c == '#' {
                return Err(Error::InvalidAlphabet(format!("symbol {c:?} is reserved")));
            }
            if symbols[..i].contains(c) {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol {c:?}")));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// `n` symbols drawn from `0-9`, then `A-Z`, then `a-z`.
    pub fn numbered(n: usize) -> Result<Self> {
        if n > NUMBERED.len() {
            return Err(Error::InvalidAlphabet(format!(
                "numbered alphabets hold at most {} symbols",
                NUMBERED.len()
            )));
        }
        Alphabet::new(NUMBERED.chars().take(n))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Matrix index of ε.
    pub fn epsilon(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn symbol(&self, code: Sym) -> Option<char> {
        self.symbols.get(code as usize).copied()
    }

    pub fn code(&self, c: char) -> Option<Sym> {
        self.symbols.iter().position(|&s| s == c).map(|i| i as Sym)
    }

    pub fn encode(&self, s: &str) -> Result<Vec<Sym>> {
        s.chars()
            .map(|c| self.code(c).ok_or(Error::UnknownSymbol(c)))
            .collect()
    }

    pub fn decode(&self, seq: &[Sym]) -> String {
        seq.iter().map(|&c| self.symbol(c).unwrap_or('?')).collect()
    }

    /// Checks every code of `seq` is a member (never ε).
    pub fn check(&self, seq: &[Sym]) -> Result<()> {
        match seq.iter().find(|&&c| c as usize >= self.len()) {
            Some(&c) => Err(Error::SymbolOutOfRange(c, self.len())),
            None => Ok(()),
        }
    }
}

impl std::fmt::Display for Alphabet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.symbols.iter().try_for_each(|c| write!(f, "{c}"))
    }
}

impl TryFrom<String> for Alphabet {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        Alphabet::new(s.chars())
    }
}

impl From<Alphabet> for String {
    fn from(a: Alphabet) -> String {
        a.to_string()
    }
}
