use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::dend::{phi, DendFamily, DendSeries};
use crate::exactcoeff::{rat, rat_frac, BPoly, Coefficient, FlowFraction};
use crate::prelie::z_series;
use crate::trees::{PBTree, Word};

use super::groupring::{groupring_multiply, groupring_oracle, Permutation};
use super::{RibbonElement, SymError};

/// The ribbon preimage of the degree `n` part of `s`, when its
/// coefficients depend only on the canopy.
pub fn sym_membership<R: Coefficient>(s: &DendSeries<R>, n: usize) -> Result<RibbonElement<R>, SymError> {
    let mut seen: HashMap<Word, (PBTree, R)> = HashMap::new();
    let mut out = RibbonElement::zero(n);
    for (t, c) in s.iter().filter(|(t, _)| t.degree() == n) {
        let w = t.canopy().expect("degree n >= 1");
        match seen.get(&w) {
            Some((first, v)) if !v.agrees(c) => {
                return Err(SymError::NotInSym { degree: n, first: *first, second: *t });
            }
            Some(_) => {}
            None => {
                seen.insert(w.clone(), (*t, c.clone()));
                out.set(w, c.clone())?;
            }
        }
    }
    Ok(out)
}

/// Outcome of `x · x = c x` together with the identity-word normalization.
#[derive(Debug, Clone)]
pub struct IdempotentReport<R> {
    pub degree: usize,
    pub scalar: R,
    pub square_mismatch: Option<Word>,
    pub identity_coefficient: R,
    pub normalized: bool,
}

impl<R: Coefficient> IdempotentReport<R> {
    pub fn holds(&self) -> bool {
        self.square_mismatch.is_none() && self.normalized
    }

    pub fn into_result(self) -> Result<(), SymError> {
        if let Some(word) = self.square_mismatch {
            return Err(SymError::Mismatch { word });
        }
        if !self.normalized {
            return Err(SymError::Normalization {
                expected: format!("({}) / {}", self.scalar, self.degree),
                found: self.identity_coefficient.to_string(),
            });
        }
        Ok(())
    }
}

/// Checks `x · x = scalar x` for the internal product and that the
/// coefficient of `(+)^{n-1}` is `scalar / n`.
pub fn quasi_idempotent_check<R: Coefficient>(x: &RibbonElement<R>, scalar: &R) -> Result<IdempotentReport<R>, SymError> {
    let n = x.degree();
    let square = x.internal_product(x)?;
    let square_mismatch = square.first_difference(&x.scale(scalar));
    let identity_coefficient = x.identity_coefficient();
    let normalized = identity_coefficient.agrees(&scalar.scale(&rat_frac(1, n as i64)));
    Ok(IdempotentReport { degree: n, scalar: scalar.clone(), square_mismatch, identity_coefficient, normalized })
}

/// The same relation checked in the group ring. Returns the first
/// permutation where it fails.
pub fn groupring_idempotent_check<R: Coefficient>(x: &RibbonElement<R>, scalar: &R) -> Result<Option<Permutation>, SymError> {
    let g = groupring_oracle(x)?;
    let square = groupring_multiply(&g, &g)?;
    Ok(square.first_difference(&g.scale(scalar)))
}

/// The series whose homogeneous parts are (quasi-)idempotent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdempotentFamily {
    /// Small flows at `t = 0`.
    D,
    /// Flows with exit rate 1.
    F,
    /// The `t`-deformation of `F`.
    FT,
    /// Image of the tail of the quotient series.
    Z,
}

impl IdempotentFamily {
    pub const ALL: [IdempotentFamily; 4] = [Self::D, Self::F, Self::FT, Self::Z];

    /// Whether the relation is only conjectured.
    pub fn is_conjecture(self) -> bool {
        matches!(self, Self::FT | Self::Z)
    }

    pub fn expected_scalar(self, n: usize) -> FlowFraction {
        let ca = |k: usize| if k == 0 { FlowFraction::one() } else { FlowFraction::from_bpoly(crate::dend::narayana(k)) };
        let value = match self {
            Self::D => ca(n - 1),
            Self::F => ca(n),
            Self::FT => crate::dend::narayana_t(n),
            Self::Z => FlowFraction::from_bpoly(BPoly::monomial(rat(1), n - 1)),
        };
        value.scale(&rat(n as i64))
    }

    /// The dendriform series truncated at `degree`.
    pub fn series(self, degree: usize) -> Result<DendSeries<FlowFraction>, SymError> {
        Ok(match self {
            Self::D => DendFamily::build(degree).d_t.at_t0(),
            Self::F => DendFamily::build(degree).unit_exit(),
            Self::FT => DendFamily::build(degree).unit_exit_t(),
            Self::Z => phi(&z_series(degree)?.map(|p| FlowFraction::from_bpoly(p.clone()))),
        })
    }

    /// Homogeneous parts of degrees `1..=degree` as ribbon elements.
    pub fn elements(self, degree: usize) -> Result<Vec<RibbonElement<FlowFraction>>, SymError> {
        let s = self.series(degree)?;
        (1..=degree).map(|n| sym_membership(&s, n)).collect()
    }
}

impl fmt::Display for IdempotentFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::D => "D",
            Self::F => "F",
            Self::FT => "F_t",
            Self::Z => "Z",
        })
    }
}

impl FromStr for IdempotentFamily {
    type Err = SymError;
    fn from_str(s: &str) -> Result<Self, SymError> {
        match s {
            "D" => Ok(Self::D),
            "F" => Ok(Self::F),
            "F_t" | "Ft" => Ok(Self::FT),
            "Z" => Ok(Self::Z),
            _ => Err(SymError::UnknownFamily(s.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dend::{right_combs, DendFamily};
    use crate::exactcoeff::Rational;

    #[test]
    fn right_combs_lie_in_sym() {
        let r = right_combs(4);
        let x = sym_membership(&r, 3).unwrap();
        assert_eq!(x.iter().count(), 1);
        assert_eq!(x.get(&"--".parse().unwrap()), rat(1));
    }

    #[test]
    fn canopy_lifts_are_in_sym_but_e_t_is_not() {
        let f = DendFamily::build(4);
        for n in 1..=4 {
            assert!(sym_membership(&f.u_t, n).is_ok());
            assert!(sym_membership(&f.v_t, n).is_ok());
        }
        assert!(sym_membership(&f.e_t, 3).is_ok());
        match sym_membership(&f.e_t, 4) {
            Err(SymError::NotInSym { degree: 4, first, second }) => {
                assert_eq!(first.canopy().unwrap(), second.canopy().unwrap());
                assert_ne!(f.e_t.get(&first), f.e_t.get(&second));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn d_in_degree_three() {
        let xs = IdempotentFamily::D.elements(3).unwrap();
        let scalar = IdempotentFamily::D.expected_scalar(3);
        assert_eq!(scalar, FlowFraction::from_bpoly(BPoly::from_ints(&[3, 3])));
        let report = quasi_idempotent_check(&xs[2], &scalar).unwrap();
        assert!(report.holds(), "{report:?}");
    }

    #[test]
    fn scaled_identity_is_quasi_idempotent_but_not_normalized() {
        let x = RibbonElement::<Rational>::ribbon("++".parse().unwrap(), rat(2));
        let report = quasi_idempotent_check(&x, &rat(2)).unwrap();
        assert!(report.square_mismatch.is_none());
        assert!(!report.normalized);
        assert!(matches!(report.into_result(), Err(SymError::Normalization { .. })));
    }
}
