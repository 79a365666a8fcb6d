//! Exact arithmetic kernel.
//!
//! Everything here is exact: unbounded rationals, polynomials in `b`,
//! fractions `P(b, t) / (1 - t)^m`, truncated `t`-expansions and Sturm
//! sequences. No floating point is used anywhere in the kernel.

mod bpoly;
mod fraction;
mod rational;
mod ring;
mod sturm;
mod tseries;

pub use bpoly::BPoly;
pub use fraction::FlowFraction;
pub use rational::{format_rational, parse_rational, rat, rat_frac, Rational};
pub use ring::{Coefficient, TCoefficient};
pub use sturm::{count_real_roots, is_real_rooted, squarefree_part, RootInterval};
pub use tseries::TruncatedTSeries;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("numerator does not vanish at t = 0, cannot divide by t")]
    NotDivisible,
    #[error("reconstruction failed: guard coefficient t^{index} does not vanish (pole bound {pole_bound}, numerator degree bound {numdeg_bound})")]
    ReconstructionFailed {
        index: usize,
        pole_bound: u32,
        numdeg_bound: usize,
    },
    #[error("series of order {order} is too short for bounds ({pole_bound}, {numdeg_bound}); need order >= {needed}")]
    SeriesTooShort {
        order: usize,
        pole_bound: u32,
        numdeg_bound: usize,
        needed: usize,
    },
    #[error("zero polynomial has no finite root count")]
    ZeroPolynomial,
    #[error("cannot parse {0:?}")]
    Parse(String),
}
