//! Alphabets, strings over them, and periodicity.
//!
//! Symbols are the integers `1..=sigma`. Indexing through [`Str::at`] and
//! [`Str::substring`] is 1-based; the underlying slice is exposed 0-based for
//! tight loops.

use std::fmt;

use crate::error::{Error, Result};

/// A symbol of an alphabet of size `sigma`, always in `1..=sigma`.
pub type Symbol = u32;

/// A finite alphabet `{1, .., sigma}` together with a terminator outside it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet {
    sigma: u32,
}

impl Alphabet {
    /// Number of letters the text codec understands.
    pub const MAX_TEXT_SIGMA: u32 = 26;

    pub fn new(sigma: u32) -> Result<Self> {
        if sigma == 0 {
            return Err(Error::InvalidAlphabet(sigma));
        }
        Ok(Alphabet { sigma })
    }

    pub fn size(&self) -> u32 {
        self.sigma
    }

    /// A unary alphabet is admitted but useless for experiments.
    pub fn is_degenerate(&self) -> bool {
        self.sigma < 2
    }

    pub fn contains(&self, s: Symbol) -> bool {
        (1..=self.sigma).contains(&s)
    }

    /// Fails for unary alphabets, which every experiment entry point rejects.
    pub fn require_nondegenerate(&self) -> Result<()> {
        if self.is_degenerate() {
            Err(Error::DegenerateAlphabet)
        } else {
            Ok(())
        }
    }
}

/// Rendering of the terminator in every human-readable output.
pub const TERMINATOR_CHAR: char = '$';

/// Maps a lowercase letter to its symbol, `'a'` being 1.
pub fn letter_to_symbol(c: char) -> Option<Symbol> {
    c.is_ascii_lowercase().then(|| c as u32 - 'a' as u32 + 1)
}

pub fn symbol_to_letter(s: Symbol) -> Option<char> {
    (1..=26).contains(&s).then(|| char::from(b'a' + (s - 1) as u8))
}

/// An immutable string over an [`Alphabet`]. The terminator is never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Str {
    alphabet: Alphabet,
    symbols: Vec<Symbol>,
}

impl Str {
    /// Checks every symbol against the alphabet; the error names the 1-based
    /// position of the first offender.
    pub fn new(raw: Vec<Symbol>, alphabet: Alphabet) -> Result<Self> {
        if let Some(pos) = raw.iter().position(|&s| !alphabet.contains(s)) {
            return Err(Error::SymbolOutOfAlphabet {
                position: pos + 1,
                symbol: raw[pos],
                sigma: alphabet.size(),
            });
        }
        Ok(Str {
            alphabet,
            symbols: raw,
        })
    }

    /// Decodes lowercase text, `'a'..'z'` being `1..26`.
    pub fn from_text(text: &str, alphabet: Alphabet) -> Result<Self> {
        let mut raw = Vec::with_capacity(text.len());
        for (i, c) in text.chars().enumerate() {
            match letter_to_symbol(c) {
                Some(s) => raw.push(s),
                None => {
                    return Err(Error::InvalidCharacter {
                        position: i + 1,
                        character: c,
                    })
                }
            }
        }
        Str::new(raw, alphabet)
    }

    /// Unchecked constructor for enumeration loops whose symbols are in range
    /// by construction.
    pub(crate) fn from_trusted(symbols: Vec<Symbol>, alphabet: Alphabet) -> Self {
        debug_assert!(symbols.iter().all(|&s| alphabet.contains(s)));
        Str { alphabet, symbols }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn as_slice(&self) -> &[Symbol] {
        &self.symbols
    }

    /// `S[i]`, 1-based.
    pub fn at(&self, i: usize) -> Option<Symbol> {
        i.checked_sub(1).and_then(|k| self.symbols.get(k)).copied()
    }

    /// `S[i,j]` inclusive and 1-based; empty whenever `j < i`.
    pub fn substring(&self, i: usize, j: usize) -> Result<Str> {
        if j < i {
            return Ok(Str {
                alphabet: self.alphabet,
                symbols: Vec::new(),
            });
        }
        if i < 1 || j > self.len() {
            return Err(Error::OutOfRange {
                i,
                j,
                len: self.len(),
            });
        }
        Ok(Str {
            alphabet: self.alphabet,
            symbols: self.symbols[i - 1..j].to_vec(),
        })
    }

    /// `S[i,n]`.
    pub fn suffix(&self, i: usize) -> Result<Str> {
        self.substring(i, self.len())
    }

    /// Prepends one symbol, producing a string one longer.
    pub fn prepend(&self, s: Symbol) -> Result<Str> {
        let mut raw = Vec::with_capacity(self.len() + 1);
        raw.push(s);
        raw.extend_from_slice(&self.symbols);
        Str::new(raw, self.alphabet)
    }

    /// Smallest `d` dividing `n` with `S[i] = S[i+d]` for all `i <= n-d`.
    /// Equals `n` for aperiodic strings.
    pub fn minimal_period(&self) -> Result<usize> {
        let n = self.len();
        if n == 0 {
            return Err(Error::EmptyString);
        }
        Ok(minimal_period_of(&self.symbols))
    }

    pub fn is_aperiodic(&self) -> Result<bool> {
        Ok(self.minimal_period()? == self.len())
    }

    /// Lowercase rendering; symbols beyond `z` are printed as `<k>`.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.len());
        for &s in &self.symbols {
            push_symbol(&mut out, s);
        }
        out
    }
}

pub(crate) fn push_symbol(out: &mut String, s: Symbol) {
    match symbol_to_letter(s) {
        Some(c) => out.push(c),
        None => {
            out.push('<');
            out.push_str(&s.to_string());
            out.push('>');
        }
    }
}

/// Divisor-restricted minimal period of a nonempty slice.
pub(crate) fn minimal_period_of(s: &[Symbol]) -> usize {
    let n = s.len();
    (1..n)
        .filter(|d| n.is_multiple_of(*d))
        .find(|&d| s[d..].iter().zip(s).all(|(a, b)| a == b))
        .unwrap_or(n)
}

impl fmt::Display for Str {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for Str {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Str({:?}, sigma={})", self.to_text(), self.alphabet.size())
    }
}
