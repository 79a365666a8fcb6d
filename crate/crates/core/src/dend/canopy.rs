use std::fmt;
use std::str::FromStr;

use num_integer::binomial;

use crate::exactcoeff::{rat, BPoly, Coefficient, FlowFraction};
use crate::flows::flows_gf;
use crate::trees::{linear, Letter, PBTree, RootedTree, Word};

use super::words::{narayana, narayana_t};
use super::DendError;

/// Series with an explicit block-product rule for their coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CanopySeries {
    U,
    V,
    D,
    DAtZero,
    E,
    F,
    Z,
}

impl FromStr for CanopySeries {
    type Err = DendError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "sU_t" => CanopySeries::U,
            "sV_t" => CanopySeries::V,
            "sD_t" => CanopySeries::D,
            "sD" => CanopySeries::DAtZero,
            "sE_t" => CanopySeries::E,
            "sF" => CanopySeries::F,
            "sZ" => CanopySeries::Z,
            _ => return Err(DendError::UnknownSeries(s.to_string())),
        })
    }
}

impl fmt::Display for CanopySeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CanopySeries::U => "sU_t",
            CanopySeries::V => "sV_t",
            CanopySeries::D => "sD_t",
            CanopySeries::DAtZero => "sD",
            CanopySeries::E => "sE_t",
            CanopySeries::F => "sF",
            CanopySeries::Z => "sZ",
        })
    }
}

fn ff(p: BPoly) -> FlowFraction {
    FlowFraction::from_bpoly(p)
}

fn minus_count(w: &Word) -> usize {
    w.letters().iter().filter(|l| **l == Letter::Minus).count()
}

fn sign(k: usize) -> FlowFraction {
    ff(BPoly::constant(rat(if k.is_multiple_of(2) { 1 } else { -1 })))
}

fn b_pow(k: usize) -> FlowFraction {
    ff(BPoly::monomial(rat(1), k))
}

/// Product of Narayana factors over the maximal runs of `w`; the run at
/// position `special` (if any) gets the `t`-refined factor.
fn run_product(w: &Word, special: Option<usize>) -> FlowFraction {
    w.runs()
        .iter()
        .enumerate()
        .fold(FlowFraction::one(), |acc, (i, &(_, len))| {
            let f = if Some(i) == special { narayana_t(len) } else { ff(narayana(len)) };
            acc.times(&f)
        })
}

fn runs_of(w: &Word, l: Letter) -> usize {
    w.runs().iter().filter(|(x, _)| *x == l).count()
}

/// `z_{p,q} = Σ_k C(p,k) C(q,k) b^{p+q+1-k}`.
pub fn z_poly(p: usize, q: usize) -> BPoly {
    (0..=p.min(q)).fold(BPoly::zero(), |acc, k| {
        let c = binomial(p as i64, k as i64) * binomial(q as i64, k as i64);
        &acc + &BPoly::monomial(rat(c), p + q + 1 - k)
    })
}

fn sides(t: &PBTree) -> (Word, Word) {
    let (l, r) = t.split().expect("nonunit tree");
    let left = l.right_completed_canopy().unwrap_or_default();
    let right = r.left_completed_canopy().unwrap_or_default();
    (left, right)
}

/// Coefficient of `τ` read off from its canopy by the block rules.
pub fn canopy_coefficient(t: &PBTree, series: CanopySeries) -> Result<FlowFraction, DendError> {
    if t.is_leaf() {
        return Err(DendError::UnitTree);
    }
    Ok(match series {
        CanopySeries::U => {
            let w = t.right_completed_canopy().expect("nonunit");
            let last = w.runs().len() - 1;
            run_product(&w, Some(last))
                .times(&b_pow(runs_of(&w, Letter::Minus)))
                .times(&sign(minus_count(&w)))
        }
        CanopySeries::V => {
            let w = t.left_completed_canopy().expect("nonunit");
            run_product(&w, Some(0))
                .times(&b_pow(runs_of(&w, Letter::Plus)))
                .times(&sign(minus_count(&w)))
        }
        CanopySeries::D | CanopySeries::DAtZero => {
            let (left, right) = sides(t);
            let refined = series == CanopySeries::D;
            let last = left.runs().len().checked_sub(1).filter(|_| refined);
            let first = refined.then_some(0);
            run_product(&left, last)
                .times(&run_product(&right, first))
                .times(&b_pow(runs_of(&left, Letter::Minus) + runs_of(&right, Letter::Plus)))
                .times(&sign(minus_count(&left) + minus_count(&right)))
        }
        CanopySeries::E => {
            let (left, right) = sides(t);
            let lr = left.runs();
            let rr = right.runs();
            let k = lr.last().map_or(0, |r| r.1);
            let l = rr.first().map_or(0, |r| r.1);
            let outer_left = Word(left.letters()[..left.len() - k].to_vec());
            let outer_right = Word(right.letters()[l..].to_vec());
            let centre: Vec<RootedTree> = [k, l].iter().filter(|&&m| m > 0).map(|&m| linear(m).unwrap()).collect();
            flows_gf(&RootedTree::graft(centre))
                .times(&run_product(&outer_left, None))
                .times(&run_product(&outer_right, None))
                .times(&b_pow(runs_of(&left, Letter::Minus) + runs_of(&right, Letter::Plus)))
                .times(&sign(minus_count(&left) + minus_count(&right)))
        }
        CanopySeries::F => {
            let w = t.full_canopy().expect("nonunit");
            run_product(&w, None)
                .times(&b_pow(runs_of(&w, Letter::Minus) - 1))
                .times(&sign(minus_count(&w) - 1))
        }
        CanopySeries::Z => {
            let w = t.full_canopy().expect("nonunit");
            let runs = w.runs();
            let mut acc = BPoly::one();
            for pair in runs.chunks(2) {
                let (p, q) = (pair[0].1, pair[1].1);
                let s = if p % 2 == 1 { 1 } else { -1 };
                acc = &acc * &z_poly(p - 1, q - 1).scale(&rat(s));
            }
            ff(acc.div_rem(&BPoly::b()).0)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The six-vertex tree whose canopy is `-++-+`.
    fn example() -> PBTree {
        let t = crate::trees::enumerate_pbtrees(6)
            .iter()
            .copied()
            .find(|t| t.canopy().unwrap().to_string() == "-++-+" && t.left().unwrap().degree() == 3)
            .unwrap();
        assert_eq!(t.right_completed_canopy().unwrap().to_string(), "-++-++");
        t
    }

    #[test]
    fn paper_examples() {
        let t = example();
        let ca = |k| ff(narayana(k));
        let b2 = b_pow(2);
        let u = b2.times(&ca(1)).times(&ca(2)).times(&ca(1)).times(&narayana_t(2));
        assert_eq!(canopy_coefficient(&t, CanopySeries::U).unwrap(), u);
        let d = b2.times(&ca(1)).times(&narayana_t(2)).times(&narayana_t(1)).times(&ca(1));
        assert_eq!(canopy_coefficient(&t, CanopySeries::D).unwrap(), d);
        let f = b_pow(1).times(&ca(2)).times(&ca(2)).times(&ca(1)).times(&ca(2));
        assert_eq!(canopy_coefficient(&t, CanopySeries::F).unwrap(), f);
    }

    #[test]
    fn z_values() {
        assert_eq!(z_poly(0, 0), BPoly::b());
        assert_eq!(z_poly(1, 1), BPoly::from_ints(&[0, 0, 1, 1]));
        assert_eq!(canopy_coefficient(&PBTree::single(), CanopySeries::Z).unwrap(), FlowFraction::one());
    }
}
