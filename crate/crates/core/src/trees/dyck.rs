use std::fmt;
use std::str::FromStr;

use super::TreeError;

/// Dyck word over `U` (up) and `R` (right/down).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyckPath {
    /// `true` for `U`.
    steps: Vec<bool>,
}

/// Shape statistics of a Dyck path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyckStructure {
    pub factors: Vec<DyckPath>,
    pub peaks: usize,
    pub nonpeak_pairs: usize,
}

impl DyckPath {
    pub fn new(steps: Vec<bool>) -> Result<Self, TreeError> {
        let mut h = 0i64;
        for &s in &steps {
            h += if s { 1 } else { -1 };
            if h < 0 {
                return Err(TreeError::NotDyck(render(&steps)));
            }
        }
        if h != 0 {
            return Err(TreeError::NotDyck(render(&steps)));
        }
        Ok(DyckPath { steps })
    }

    pub fn empty() -> Self {
        DyckPath { steps: Vec::new() }
    }

    /// `U p R`.
    pub fn lift(&self) -> Self {
        let mut steps = vec![true];
        steps.extend_from_slice(&self.steps);
        steps.push(false);
        DyckPath { steps }
    }

    pub fn concat(&self, other: &DyckPath) -> Self {
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        DyckPath { steps }
    }

    pub fn semilength(&self) -> usize {
        self.steps.len() / 2
    }

    pub fn steps(&self) -> &[bool] {
        &self.steps
    }

    /// Indecomposable factors, each of the form `U p R`.
    pub fn factors(&self) -> Vec<DyckPath> {
        let mut out = Vec::new();
        let mut h = 0i64;
        let mut start = 0;
        for (i, &s) in self.steps.iter().enumerate() {
            h += if s { 1 } else { -1 };
            if h == 0 {
                out.push(DyckPath {
                    steps: self.steps[start..=i].to_vec(),
                });
                start = i + 1;
            }
        }
        out
    }

    /// For an indecomposable path `U p R`, the inner path `p`.
    pub fn unlift(&self) -> Option<DyckPath> {
        if self.factors().len() != 1 {
            return None;
        }
        Some(DyckPath {
            steps: self.steps[1..self.steps.len() - 1].to_vec(),
        })
    }

    pub fn peaks(&self) -> usize {
        self.steps.windows(2).filter(|w| w[0] && !w[1]).count()
    }

    pub fn structure(&self) -> DyckStructure {
        let peaks = self.peaks();
        DyckStructure {
            factors: self.factors(),
            peaks,
            nonpeak_pairs: self.semilength() - peaks,
        }
    }

    /// All Dyck paths of semilength `n`, in lexicographic order (`R` < `U`).
    pub fn all(n: usize) -> Vec<DyckPath> {
        fn go(open: usize, close: usize, n: usize, acc: &mut Vec<bool>, out: &mut Vec<DyckPath>) {
            if acc.len() == 2 * n {
                out.push(DyckPath { steps: acc.clone() });
                return;
            }
            if close < open {
                acc.push(false);
                go(open, close + 1, n, acc, out);
                acc.pop();
            }
            if open < n {
                acc.push(true);
                go(open + 1, close, n, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        go(0, 0, n, &mut Vec::new(), &mut out);
        out
    }
}

fn render(steps: &[bool]) -> String {
    steps.iter().map(|&s| if s { 'U' } else { 'R' }).collect()
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.steps))
    }
}

impl fmt::Debug for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DyckPath({self})")
    }
}

impl FromStr for DyckPath {
    type Err = TreeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let steps = s
            .chars()
            .map(|c| match c {
                'U' => Ok(true),
                'R' => Ok(false),
                _ => Err(TreeError::NotDyck(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        DyckPath::new(steps)
    }
}

impl serde::Serialize for DyckPath {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structures() {
        let p: DyckPath = "UURR".parse().unwrap();
        let s = p.structure();
        assert_eq!((s.factors.len(), s.peaks, s.nonpeak_pairs), (1, 1, 1));
        let q: DyckPath = "URUR".parse().unwrap();
        let s = q.structure();
        assert_eq!((s.factors.len(), s.peaks, s.nonpeak_pairs), (2, 2, 0));
        assert!("UUR".parse::<DyckPath>().is_err());
        assert!("RU".parse::<DyckPath>().is_err());
    }

    #[test]
    fn catalan() {
        let counts: Vec<usize> = (0..7).map(|n| DyckPath::all(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 14, 42, 132]);
    }
}
