use std::fmt;
use std::str::FromStr;

use super::TreeError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Minus,
    Plus,
}

impl Letter {
    pub fn flip(self) -> Letter {
        match self {
            Letter::Minus => Letter::Plus,
            Letter::Plus => Letter::Minus,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::Minus => '-',
            Letter::Plus => '+',
        }
    }
}

/// Word over `{+, -}`. Written with ASCII `+` and `-`; the unicode minus
/// is accepted on input.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn repeat(l: Letter, k: usize) -> Word {
        Word(vec![l; k])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn flipped(&self) -> Word {
        Word(self.0.iter().map(|l| l.flip()).collect())
    }

    /// Reverse and exchange the letters.
    pub fn mirrored(&self) -> Word {
        self.reversed().flipped()
    }

    /// All words of length `n`, in lexicographic order (`-` before `+`).
    pub fn all(n: usize) -> Vec<Word> {
        (0..1u64 << n)
            .map(|mask| {
                Word(
                    (0..n)
                        .map(|i| {
                            if mask >> (n - 1 - i) & 1 == 1 {
                                Letter::Plus
                            } else {
                                Letter::Minus
                            }
                        })
                        .collect(),
                )
            })
            .collect()
    }

    /// Maximal runs of equal letters, as (letter, length).
    pub fn runs(&self) -> Vec<(Letter, usize)> {
        let mut out: Vec<(Letter, usize)> = Vec::new();
        for &l in &self.0 {
            match out.last_mut() {
                Some((last, k)) if *last == l => *k += 1,
                _ => out.push((l, 1)),
            }
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = TreeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '+' => Ok(Letter::Plus),
                '-' | '\u{2212}' => Ok(Letter::Minus),
                _ => Err(TreeError::Malformed(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

impl serde::Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_mirror() {
        let w: Word = "-++\u{2212}+".parse().unwrap();
        assert_eq!(w.to_string(), "-++-+");
        assert_eq!(w.mirrored().to_string(), "-+--+");
        assert_eq!(Word::all(2).iter().map(|w| w.to_string()).collect::<Vec<_>>(), ["--", "-+", "+-", "++"]);
        assert_eq!(w.runs(), vec![(Letter::Minus, 1), (Letter::Plus, 2), (Letter::Minus, 1), (Letter::Plus, 1)]);
    }
}
