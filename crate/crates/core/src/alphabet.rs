use std::fmt;

use crate::error::{Error, Result};

/// Index of a letter within its [`Alphabet`].
pub type Letter = usize;

/// The separator letter used by the `$`-framed encodings.
pub const DOLLAR: &str = "$";

/// An ordered list of distinct letter names. The order fixes letter indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(letters: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        if letters.is_empty() {
            return Err(Error::Invalid("alphabet is empty".into()));
        }
        for (i, l) in letters.iter().enumerate() {
            if l.is_empty() || l.chars().any(char::is_whitespace) {
                return Err(Error::Invalid(format!("bad letter name {l:?}")));
            }
            if letters[..i].contains(l) {
                return Err(Error::Invalid(format!("duplicate letter {l:?}")));
            }
        }
        Ok(Alphabet { letters })
    }

    /// Letters `0`, `1`, ... `k-1`.
    pub fn numbered(k: usize) -> Self {
        Alphabet::new((0..k).map(|i| i.to_string())).expect("k > 0")
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn name(&self, l: Letter) -> &str {
        &self.letters[l]
    }

    pub fn names(&self) -> &[String] {
        &self.letters
    }

    pub fn index(&self, name: &str) -> Option<Letter> {
        self.letters.iter().position(|l| l == name)
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.index(name)
            .ok_or_else(|| Error::UnknownLetter(name.to_string()))
    }

    pub fn letters(&self) -> std::ops::Range<Letter> {
        0..self.letters.len()
    }

    /// Appends `$`, failing if it is already present.
    pub fn with_dollar(&self) -> Result<Alphabet> {
        if self.index(DOLLAR).is_some() {
            return Err(Error::DollarPresent);
        }
        let mut letters = self.letters.clone();
        letters.push(DOLLAR.to_string());
        Ok(Alphabet { letters })
    }

    /// Removes `$`, returning the rest and the index `$` had.
    pub fn without_dollar(&self) -> Result<(Alphabet, Letter)> {
        let d = self.index(DOLLAR).ok_or(Error::DollarMissing)?;
        let letters: Vec<String> = self
            .letters
            .iter()
            .filter(|l| *l != DOLLAR)
            .cloned()
            .collect();
        let rest = Alphabet::new(letters)
            .map_err(|_| Error::Invalid("alphabet has no letter besides `$`".into()))?;
        Ok((rest, d))
    }

    /// For every letter of `self`, its index in `other`, if the two alphabets
    /// hold the same letters.
    pub fn mapping_to(&self, other: &Alphabet) -> Result<Vec<Letter>> {
        if self.len() != other.len() {
            return Err(self.mismatch(other));
        }
        self.letters
            .iter()
            .map(|l| other.index(l).ok_or_else(|| self.mismatch(other)))
            .collect()
    }

    pub(crate) fn mismatch(&self, other: &Alphabet) -> Error {
        Error::AlphabetMismatch {
            left: self.letters.join(" "),
            right: other.letters.join(" "),
        }
    }

    /// Renders a word as space-separated letter names.
    pub fn render(&self, word: &[Letter]) -> String {
        word.iter()
            .map(|&l| self.name(l))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses a whitespace-separated word.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Letter>> {
        text.split_whitespace().map(|t| self.letter(t)).collect()
    }
}

/// An alphabet `Σ ∪ {$}` seen as `Σ` plus the `$` letter.
#[derive(Debug, Clone)]
pub(crate) struct DollarSplit {
    pub sigma: Alphabet,
    pub dollar: Letter,
    /// Index in the full alphabet of each letter of `sigma`.
    pub full: Vec<Letter>,
}

impl DollarSplit {
    pub fn new(full: &Alphabet) -> Result<Self> {
        let (sigma, dollar) = full.without_dollar()?;
        let full = sigma.letters().map(|l| if l < dollar { l } else { l + 1 }).collect();
        Ok(DollarSplit { sigma, dollar, full })
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letters.join(" "))
    }
}
