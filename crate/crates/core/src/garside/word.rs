use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::coxeter::CoxeterError;

/// `σ_i` or `σ_i⁻¹`, with a 0-based generator index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BraidLetter {
    pub generator: usize,
    pub inverse: bool,
}

impl BraidLetter {
    pub fn pos(generator: usize) -> Self {
        BraidLetter {
            generator,
            inverse: false,
        }
    }

    pub fn neg(generator: usize) -> Self {
        BraidLetter {
            generator,
            inverse: true,
        }
    }

    pub fn sign(self) -> i32 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A word in the Artin generators; the empty word is the identity braid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BraidWord(pub Vec<BraidLetter>);

#[derive(Debug, Error, PartialEq, Eq)]
#[error("cannot parse braid word {input:?}: {reason}")]
pub struct ParseBraidError {
    pub input: String,
    pub reason: String,
}

impl BraidWord {
    pub fn new() -> Self {
        BraidWord(Vec::new())
    }

    /// Positive word from 0-based generator indices.
    pub fn positive(word: &[usize]) -> Self {
        BraidWord(word.iter().map(|&s| BraidLetter::pos(s)).collect())
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        BraidWord(
            self.0
                .iter()
                .rev()
                .map(|l| BraidLetter {
                    generator: l.generator,
                    inverse: !l.inverse,
                })
                .collect(),
        )
    }

    pub fn concat(&self, other: &BraidWord) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        BraidWord(v)
    }

    pub fn exponent_sum(&self) -> i64 {
        self.0.iter().map(|l| l.sign() as i64).sum()
    }

    pub fn check_rank(&self, rank: usize) -> Result<(), CoxeterError> {
        match self.0.iter().find(|l| l.generator >= rank) {
            Some(l) => Err(CoxeterError::InvalidGenerator {
                index: l.generator,
                rank,
            }),
            None => Ok(()),
        }
    }
}

impl FromIterator<BraidLetter> for BraidWord {
    fn from_iter<T: IntoIterator<Item = BraidLetter>>(iter: T) -> Self {
        BraidWord(iter.into_iter().collect())
    }
}

/// Whitespace-separated signed 1-based indices: `1 2 -1` is `σ1 σ2 σ1⁻¹`.
impl FromStr for BraidWord {
    type Err = ParseBraidError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split_whitespace()
            .map(|tok| {
                let n: i64 = tok.parse().map_err(|_| ParseBraidError {
                    input: s.to_string(),
                    reason: format!("{tok:?} is not an integer"),
                })?;
                if n == 0 {
                    return Err(ParseBraidError {
                        input: s.to_string(),
                        reason: "generator indices are 1-based; 0 is not allowed".into(),
                    });
                }
                Ok(BraidLetter {
                    generator: (n.unsigned_abs() - 1) as usize,
                    inverse: n < 0,
                })
            })
            .collect()
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", l.sign() as i64 * (l.generator as i64 + 1))?;
        }
        Ok(())
    }
}
