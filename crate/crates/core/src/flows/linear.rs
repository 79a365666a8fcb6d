use serde::Serialize;

use crate::exactcoeff::{BPoly, FlowFraction};
use crate::trees::linear;

use super::flow::{count_flows, FlowClass};
use super::FlowError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeriesIdentity {
    pub name: &'static str,
    pub holds: bool,
    /// Smallest power of `x` where the two sides differ.
    pub first_failure: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearSeriesReport {
    pub order: usize,
    pub identities: Vec<SeriesIdentity>,
}

impl LinearSeriesReport {
    pub fn all_hold(&self) -> bool {
        self.identities.iter().all(|i| i.holds)
    }
}

/// Enumerated data for linear trees with `1..=n` vertices.
#[derive(Debug, Clone)]
pub struct LinearData {
    /// Closed flows by size.
    pub closed: Vec<BPoly>,
    /// Closed connected flows by size.
    pub closed_connected: Vec<BPoly>,
    /// All flows, reconstructed as fractions.
    pub fractions: Vec<FlowFraction>,
}

pub fn linear_data(n: usize) -> Result<LinearData, FlowError> {
    let mut data = LinearData {
        closed: vec![BPoly::zero()],
        closed_connected: vec![BPoly::zero()],
        fractions: vec![FlowFraction::zero()],
    };
    for m in 1..=n {
        let t = linear(m).map_err(FlowError::Tree)?;
        let order = 2 * m + 2;
        let all = count_flows(&t, FlowClass::All, order as u32);
        data.closed.push(all.b_polynomial(0));
        data.closed_connected
            .push(count_flows(&t, FlowClass::ClosedConnected, 0).b_polynomial(0));
        let frac = FlowFraction::reconstruct(&all.series(), m as u32, m).map_err(FlowError::Coeff)?;
        data.fractions.push(frac);
    }
    Ok(data)
}

fn first_mismatch<T: PartialEq>(lhs: &[T], rhs: &[T]) -> Option<usize> {
    lhs.iter().zip(rhs).position(|(a, b)| a != b)
}

/// Check the ordinary generating series equations for linear trees up to
/// `x^n`, with every coefficient taken from flow enumeration.
pub fn linear_ordinary_series_check(n: usize) -> Result<LinearSeriesReport, FlowError> {
    let d = linear_data(n)?;
    let mut ids = Vec::new();

    // E = Ec + E Ec
    let rhs: Vec<BPoly> = (0..=n)
        .map(|m| {
            let mut acc = d.closed_connected[m].clone();
            for j in 1..m {
                acc = &acc + &(&d.closed[j] * &d.closed_connected[m - j]);
            }
            acc
        })
        .collect();
    let f = first_mismatch(&d.closed, &rhs);
    ids.push(SeriesIdentity {
        name: "closed = connected / (1 - connected)",
        holds: f.is_none(),
        first_failure: f,
    });

    // Ec = x (1 + b E)
    let rhs: Vec<BPoly> = (0..=n)
        .map(|m| match m {
            0 => BPoly::zero(),
            1 => BPoly::one(),
            _ => &d.closed[m - 1] * &BPoly::b(),
        })
        .collect();
    let f = first_mismatch(&d.closed_connected, &rhs);
    ids.push(SeriesIdentity {
        name: "connected = x (1 + b closed)",
        holds: f.is_none(),
        first_failure: f,
    });

    // E_t = x/(1-t) (1 + E_t) + b x / t (E_t - E)
    let mut rhs = vec![FlowFraction::zero()];
    for m in 1..=n {
        let prev = &d.fractions[m - 1];
        let base = if m == 1 { FlowFraction::one() } else { prev.clone() };
        let first = base.mul(&FlowFraction::geometric(1));
        let diff = prev.sub(&FlowFraction::from_bpoly(prev.eval_t0()));
        let second = diff.divide_by_t().map_err(FlowError::Coeff)?.scale_bpoly(&BPoly::b());
        rhs.push(first.add(&second));
    }
    let f = first_mismatch(&d.fractions, &rhs);
    ids.push(SeriesIdentity {
        name: "flows: root input or output",
        holds: f.is_none(),
        first_failure: f,
    });

    Ok(LinearSeriesReport {
        order: n,
        identities: ids,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_order_coefficients() {
        let d = linear_data(3).unwrap();
        assert_eq!(d.closed[1], BPoly::one());
        assert_eq!(d.closed[3], BPoly::from_ints(&[1, 3, 1]));
        assert_eq!(d.closed_connected[2], BPoly::b());
        assert_eq!(d.fractions[2], crate::flows::flows_gf(&linear(2).unwrap()));
    }

    #[test]
    fn identities_hold() {
        let r = linear_ordinary_series_check(5).unwrap();
        assert!(r.all_hold(), "{r:?}");
    }
}
