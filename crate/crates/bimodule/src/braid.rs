use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

/// A crossing `σ_index^sign`, with `index` in `1..=n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub index: usize,
    pub sign: Sign,
}

impl Letter {
    pub fn pos(index: usize) -> Self {
        Self { index, sign: Sign::Pos }
    }

    pub fn neg(index: usize) -> Self {
        Self { index, sign: Sign::Neg }
    }

    pub fn inverse(self) -> Self {
        Self {
            index: self.index,
            sign: self.sign.flip(),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.sign {
            Sign::Pos => 's',
            Sign::Neg => 'S',
        };
        write!(f, "{c}{}", self.index)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("a braid needs at least 2 strands (got {0})")]
    TooFewStrands(usize),
    #[error("bad token {token:?} at byte {position}: expected s<k> or S<k>")]
    BadToken { position: usize, token: String },
    #[error("crossing index {index} at byte {position} is outside 1..={max}")]
    IndexOutOfRange { position: usize, index: usize, max: usize },
    #[error("words on {0} and {1} strands cannot be composed")]
    StrandMismatch(usize, usize),
}

/// A braid word on `strands = n + 1` strands.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self, BraidError> {
        if strands < 2 {
            return Err(BraidError::TooFewStrands(strands));
        }
        if let Some(l) = letters.iter().find(|l| l.index == 0 || l.index >= strands) {
            return Err(BraidError::IndexOutOfRange {
                position: 0,
                index: l.index,
                max: strands - 1,
            });
        }
        Ok(Self { strands, letters })
    }

    pub fn empty(strands: usize) -> Result<Self, BraidError> {
        Self::new(strands, Vec::new())
    }

    /// Parses whitespace-separated letters `s<k>` (positive) and `S<k>`
    /// (negative).
    pub fn parse(s: &str, strands: usize) -> Result<Self, BraidError> {
        if strands < 2 {
            return Err(BraidError::TooFewStrands(strands));
        }
        let mut letters = Vec::new();
        let mut rest = s;
        let mut offset = 0;
        loop {
            let trimmed = rest.trim_start();
            offset += rest.len() - trimmed.len();
            if trimmed.is_empty() {
                break;
            }
            let end = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
            let token = &trimmed[..end];
            let bad = || BraidError::BadToken {
                position: offset,
                token: token.to_string(),
            };
            let sign = match token.chars().next() {
                Some('s') => Sign::Pos,
                Some('S') => Sign::Neg,
                _ => return Err(bad()),
            };
            let digits = &token[1..];
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let index: usize = digits.parse().map_err(|_| bad())?;
            if index == 0 || index >= strands {
                return Err(BraidError::IndexOutOfRange {
                    position: offset,
                    index,
                    max: strands - 1,
                });
            }
            letters.push(Letter { index, sign });
            rest = &trimmed[end..];
            offset += end;
        }
        Ok(Self { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    /// The algebra index `n = strands - 1`.
    pub fn n(&self) -> usize {
        self.strands - 1
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn n_plus(&self) -> usize {
        self.letters.iter().filter(|l| l.sign == Sign::Pos).count()
    }

    pub fn n_minus(&self) -> usize {
        self.letters.iter().filter(|l| l.sign == Sign::Neg).count()
    }

    /// Reverses the word and flips every sign.
    pub fn mirror(&self) -> Self {
        Self {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &Self) -> Result<Self, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Self {
            strands: self.strands,
            letters,
        })
    }

    pub fn squared(&self) -> Self {
        self.concat(self).expect("same strand count")
    }

    /// Every word of exactly `len` letters on `strands` strands, in
    /// lexicographic letter order.
    pub fn all_of_length(strands: usize, len: usize) -> Vec<Self> {
        let alphabet: Vec<Letter> = (1..strands).flat_map(|i| [Letter::pos(i), Letter::neg(i)]).collect();
        let mut words = vec![Vec::new()];
        for _ in 0..len {
            words = words
                .into_iter()
                .flat_map(|w: Vec<Letter>| {
                    alphabet.iter().map(move |&l| {
                        let mut w = w.clone();
                        w.push(l);
                        w
                    })
                })
                .collect();
        }
        words.into_iter().map(|letters| Self { strands, letters }).collect()
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(Letter::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_signs() {
        let w = BraidWord::parse("S2 s1", 3).unwrap();
        assert_eq!(w.letters(), [Letter::neg(2), Letter::pos(1)]);
        assert_eq!(w.to_string(), "S2 s1");
    }

    #[test]
    fn empty_string_is_the_empty_word() {
        assert!(BraidWord::parse("   ", 2).unwrap().is_empty());
    }

    #[test]
    fn index_out_of_range_reports_position() {
        assert_eq!(
            BraidWord::parse("s1  s9", 2),
            Err(BraidError::IndexOutOfRange {
                position: 4,
                index: 9,
                max: 1
            })
        );
    }

    #[test]
    fn bad_tokens() {
        for s in ["x1", "s", "s1a", "s-1", "s0"] {
            assert!(BraidWord::parse(s, 3).is_err(), "{s}");
        }
    }

    #[test]
    fn mirror_reverses_and_flips() {
        let w = BraidWord::parse("s1 S2", 3).unwrap();
        assert_eq!(w.mirror().to_string(), "s2 S1");
        assert_eq!(w.n_plus(), 1);
        assert_eq!(w.n_minus(), 1);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(BraidWord::all_of_length(3, 2).len(), 16);
        assert_eq!(BraidWord::all_of_length(2, 0).len(), 1);
    }
}
