use std::fmt;
use std::str::FromStr;

use crate::exactcoeff::{rat, BPoly, Coefficient, FlowFraction, Rational, TCoefficient};
use crate::trees::{PBTree, Word};

use super::canopy::{canopy_coefficient, CanopySeries};
use super::words::{WordFamily, WordSeries};
use super::{DendError, DendSeries};

/// Which canopy variant of a tree is looked up in a word series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CanopyMode {
    RightCompleted,
    LeftCompleted,
    Full,
}

impl CanopyMode {
    pub fn word(self, t: &PBTree) -> Option<Word> {
        match self {
            CanopyMode::RightCompleted => t.right_completed_canopy().ok(),
            CanopyMode::LeftCompleted => t.left_completed_canopy().ok(),
            CanopyMode::Full => t.full_canopy().ok(),
        }
    }
}

/// The dendriform series whose coefficient on `τ` is the coefficient in
/// `w` of the chosen canopy of `τ`. The unit tree gets 0.
pub fn lift_by_canopy<R: Coefficient>(w: &WordSeries<R>, mode: CanopyMode, degree: usize) -> DendSeries<R> {
    DendSeries::from_fn(degree, |t| mode.word(t).map(|c| w.get(&c)).unwrap_or_else(R::zero))
}

/// `ℛ`, the solution of `ℛ = • + • ≺ ℛ`.
pub fn right_combs(degree: usize) -> DendSeries<Rational> {
    let single = DendSeries::single(degree);
    let mut r = single.clone();
    for _ in 1..degree {
        r = single.add(&single.prec(&r).expect("no unit terms")).unwrap();
    }
    r
}

/// `ℒ`, the solution of `ℒ = -• - ℒ ≻ •`.
pub fn left_combs(degree: usize) -> DendSeries<Rational> {
    let single = DendSeries::single(degree);
    let mut l = single.neg();
    for _ in 1..degree {
        l = single.neg().sub(&l.succ(&single).expect("no unit terms")).unwrap();
    }
    l
}

/// `(1 + ℛ) ∨ (1 + ℒ)`.
pub fn corolla_image(degree: usize) -> DendSeries<Rational> {
    right_combs(degree).one_plus().vee(&left_combs(degree).one_plus()).unwrap()
}

/// `(1 - Σℒ) ∨ (1 - Σℛ)`.
pub fn all_trees_image(degree: usize) -> DendSeries<Rational> {
    let one = DendSeries::one(degree);
    let l = one.sub(&left_combs(degree).suspension()).unwrap();
    let r = one.sub(&right_combs(degree).suspension()).unwrap();
    l.vee(&r).unwrap()
}

/// The flow series of the dendriform side, all exact in `FlowFraction`.
#[derive(Debug, Clone)]
pub struct DendFamily {
    pub degree: usize,
    pub words: WordFamily,
    pub u_t: DendSeries<FlowFraction>,
    pub v_t: DendSeries<FlowFraction>,
    pub d_t: DendSeries<FlowFraction>,
    pub e_t: DendSeries<FlowFraction>,
}

fn b() -> FlowFraction {
    FlowFraction::from_bpoly(BPoly::b())
}

/// `t / (1 - t) + b`.
fn connected_weight() -> FlowFraction {
    FlowFraction::t_power(1).times(&FlowFraction::geometric(1)).plus(&b())
}

impl DendFamily {
    pub fn build(degree: usize) -> Self {
        let words = WordFamily::build(degree + 1);
        let u_t = lift_by_canopy(&words.u_t, CanopyMode::RightCompleted, degree);
        let v_t = lift_by_canopy(&words.v_t, CanopyMode::LeftCompleted, degree);
        let d_t = u_t.one_plus().vee(&v_t.one_plus()).expect("same degree");
        let e_t = flows_from_small(&d_t).expect("small flows vanish at t = 0 after subtraction");
        DendFamily {
            degree,
            words,
            u_t,
            v_t,
            d_t,
            e_t,
        }
    }

    /// Full-canopy lift of `N_v T P_u`.
    pub fn ntp(&self, v_is_t: bool, u_is_t: bool) -> DendSeries<FlowFraction> {
        lift_by_canopy(&self.words.ntp(v_is_t, u_is_t), CanopyMode::Full, self.degree)
    }

    /// Connected flows, by the closed formula in `N`, `T`, `P`.
    pub fn connected(&self) -> DendSeries<FlowFraction> {
        let deg = self.degree;
        let w = connected_weight();
        let one = DendSeries::one(deg);
        let x = self.ntp(true, false);
        let y = self.ntp(false, true);
        let single = DendSeries::single(deg).scale(&FlowFraction::geometric(1));
        let a = one.vee(&x).unwrap().scale(&w);
        let c = y.vee(&one).unwrap().scale(&w);
        let d = y.vee(&x).unwrap().scale(&w.mul_t());
        single.add(&a).unwrap().sub(&c).unwrap().sub(&d).unwrap()
    }

    /// Closed connected flows: `• + b (1 ∨ NTP) - b (NTP ∨ 1)`.
    pub fn closed_connected(&self) -> DendSeries<FlowFraction> {
        let deg = self.degree;
        let one = DendSeries::one(deg);
        let x = self.ntp(false, false);
        let single = DendSeries::single(deg);
        single
            .add(&one.vee(&x).unwrap().scale(&b()))
            .unwrap()
            .sub(&x.vee(&one).unwrap().scale(&b()))
            .unwrap()
    }

    /// `-NTP`.
    pub fn unit_exit(&self) -> DendSeries<FlowFraction> {
        self.ntp(false, false).neg()
    }

    /// `-(1 - t) N_t T P_t`.
    pub fn unit_exit_t(&self) -> DendSeries<FlowFraction> {
        self.ntp(true, true).scale(&FlowFraction::one_minus_t_pow(1)).neg()
    }

    /// The block-product description of `sZ`.
    pub fn quotient_tail(&self) -> DendSeries<FlowFraction> {
        DendSeries::from_fn(self.degree, |t| {
            if t.is_leaf() {
                FlowFraction::zero()
            } else {
                canopy_coefficient(t, CanopySeries::Z).expect("nonunit tree")
            }
        })
    }
}

/// `E = D / (1 - t) + (b / t) (D - D|_{t=0})`, coefficientwise.
pub fn flows_from_small(d_t: &DendSeries<FlowFraction>) -> Result<DendSeries<FlowFraction>, DendError> {
    let output_root = d_t.sub(&d_t.at_t0())?.map(TCoefficient::mul_b).div_t()?;
    d_t.map(TCoefficient::over_one_minus_t).add(&output_root)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedDend {
    U,
    V,
    D,
    E,
    Connected,
    UnitExit,
    UnitExitT,
    Z,
    R,
    L,
}

impl NamedDend {
    pub const NAMES: &'static [&'static str] = &["sU_t", "sV_t", "sD_t", "sE_t", "sEc_t", "sF", "sF_t", "sZ", "R", "L"];
}

impl FromStr for NamedDend {
    type Err = DendError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use NamedDend::*;
        Ok(match s {
            "sU_t" => U,
            "sV_t" => V,
            "sD_t" => D,
            "sE_t" => E,
            "sEc_t" => Connected,
            "sF" => UnitExit,
            "sF_t" => UnitExitT,
            "sZ" => Z,
            "R" => R,
            "L" => L,
            _ => return Err(DendError::UnknownSeries(s.to_string())),
        })
    }
}

impl fmt::Display for NamedDend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use NamedDend::*;
        let i = [U, V, D, E, Connected, UnitExit, UnitExitT, Z, R, L]
            .iter()
            .position(|x| x == self)
            .unwrap();
        f.write_str(Self::NAMES[i])
    }
}

pub fn build_dend_named(name: NamedDend, degree: usize) -> DendSeries<FlowFraction> {
    use NamedDend::*;
    match name {
        R => right_combs(degree).map(FlowFraction::from_rational),
        L => left_combs(degree).map(FlowFraction::from_rational),
        _ => {
            let f = DendFamily::build(degree);
            match name {
                U => f.u_t,
                V => f.v_t,
                D => f.d_t,
                E => f.e_t,
                Connected => f.connected(),
                UnitExit => f.unit_exit(),
                UnitExitT => f.unit_exit_t(),
                Z => f.quotient_tail(),
                R | L => unreachable!(),
            }
        }
    }
}

/// Sum of linear trees, each with coefficient 1.
pub fn linear_trees(degree: usize) -> crate::prelie::PreLieSeries<Rational> {
    crate::prelie::PreLieSeries::from_fn(degree, |t| {
        if crate::trees::as_linear(t).is_some() {
            rat(1)
        } else {
            rat(0)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dend::words::narayana_t;

    fn p(s: &str) -> PBTree {
        s.parse().unwrap()
    }

    #[test]
    fn combs_low_degree() {
        let r = right_combs(4);
        assert_eq!(r.get(&PBTree::right_comb(3)), Some(&rat(1)));
        assert_eq!(r.nonzero().count(), 4);
        let l = left_combs(4);
        assert_eq!(l.get(&PBTree::left_comb(2)), Some(&rat(1)));
        assert_eq!(l.get(&PBTree::left_comb(3)), Some(&rat(-1)));
        assert_eq!(r.bar(), l.neg());
    }

    #[test]
    fn first_terms() {
        let f = DendFamily::build(2);
        let left = p("((. .) .)");
        let right = p("(. (. .))");
        let bb = b();
        assert_eq!(f.u_t.get(&left), Some(&narayana_t(2)));
        assert_eq!(f.u_t.get(&right), Some(&narayana_t(1).times(&bb).negate()));
        assert_eq!(f.d_t.get(&PBTree::single()), Some(&FlowFraction::one()));
        assert_eq!(f.d_t.get(&left), Some(&narayana_t(1)));
        assert_eq!(f.d_t.get(&right), Some(&narayana_t(1).negate()));
        assert_eq!(f.e_t.get(&left), Some(&narayana_t(2)));
        assert_eq!(f.e_t.get(&right), Some(&narayana_t(2).negate()));
    }
}
