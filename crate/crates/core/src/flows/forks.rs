use serde::Serialize;

use crate::trees::fork;

use super::flow::{count_flows, FlowClass};

fn binom(n: i64, k: i64) -> i128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    (0..k).fold(1i128, |acc, j| acc * (n - j) as i128 / (j + 1) as i128)
}

/// Conjectured number of closed flows of size `k` on the fork with stem `i`
/// and `n` vertices.
pub fn fork_formula(n: usize, i: usize, k: usize) -> i128 {
    let (n, i, k) = (n as i64, i as i64, k as i64);
    binom(i, k) * binom(n, k) - binom(i + 1, k + 1) * binom(n - 1, k - 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForkRow {
    pub stem: usize,
    pub size: usize,
    pub enumerated: u64,
    pub formula: i128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForkReport {
    pub n: usize,
    pub rows: Vec<ForkRow>,
}

impl ForkReport {
    pub fn counterexamples(&self) -> Vec<&ForkRow> {
        self.rows
            .iter()
            .filter(|r| r.enumerated as i128 != r.formula)
            .collect()
    }

    pub fn consistent(&self) -> bool {
        self.counterexamples().is_empty()
    }
}

/// Compare enumerated closed-flow counts on every fork with `n` vertices
/// against the binomial formula, for all sizes up to `n`.
pub fn fork_conjecture_check(n: usize) -> ForkReport {
    let mut rows = Vec::new();
    for stem in 1..=n {
        let t = fork(stem, n - stem).expect("stem >= 1");
        let counts = count_flows(&t, FlowClass::Closed, 0);
        for size in 0..=n {
            rows.push(ForkRow {
                stem,
                size,
                enumerated: counts.get(size, 0),
                formula: fork_formula(n, stem, size),
            });
        }
    }
    ForkReport { n, rows }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_gives_narayana() {
        // N(5, k+1) = 1, 10, 20, 10, 1
        let got: Vec<i128> = (0..5).map(|k| fork_formula(5, 4, k)).collect();
        assert_eq!(got, vec![1, 10, 20, 10, 1]);
    }

    #[test]
    fn small_scan() {
        for n in 2..=6 {
            let r = fork_conjecture_check(n);
            assert!(r.consistent(), "{:?}", r.counterexamples());
            assert!(r.rows.iter().filter(|r| r.size == 0).all(|r| r.enumerated == 1));
        }
    }
}
