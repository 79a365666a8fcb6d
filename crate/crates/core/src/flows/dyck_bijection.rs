use crate::exactcoeff::{rat, BPoly};
use crate::trees::{as_linear, linear, DyckPath};

use super::flow::{enumerate_flows, Flow, FlowClass};
use super::FlowError;

fn rates_to_path(r: &[u32]) -> DyckPath {
    let mut starts: Vec<usize> = (0..r.len()).filter(|&d| d == 0 || r[d] == 0).collect();
    starts.push(r.len());
    let mut out = DyckPath::empty();
    for w in starts.windows(2) {
        let comp = &r[w[0]..w[1]];
        let piece = if comp.len() == 1 {
            DyckPath::empty().lift()
        } else {
            let inner: Vec<u32> = comp[1..].iter().map(|x| x - 1).collect();
            rates_to_path(&inner).lift()
        };
        out = out.concat(&piece);
    }
    out
}

fn path_to_rates(p: &DyckPath) -> Vec<u32> {
    let mut out = Vec::new();
    for f in p.factors() {
        let inner = f.unlift().expect("factor is indecomposable");
        out.push(0);
        out.extend(path_to_rates(&inner).into_iter().map(|x| x + 1));
    }
    out
}

/// Dyck path of a closed flow on a linear tree.
pub fn rho(f: &Flow) -> Result<DyckPath, FlowError> {
    if as_linear(&f.carrier).is_none() {
        return Err(FlowError::NotLinear(f.carrier.clone()));
    }
    if f.exit_rate() != 0 {
        return Err(FlowError::NotClosed);
    }
    Ok(rates_to_path(&f.rates))
}

/// Closed flow on the linear tree with one vertex per up step.
pub fn rho_inverse(p: &DyckPath) -> Result<Flow, FlowError> {
    let r = path_to_rates(p);
    let n = r.len();
    let t = linear(n).map_err(FlowError::Tree)?;
    let mut outputs = vec![false; n];
    let mut inputs = vec![0u32; n];
    for d in 0..n {
        let above = if d + 1 < n { r[d + 1] } else { 0 };
        let net = r[d] as i64 - above as i64;
        if net < 0 {
            outputs[d] = true;
        } else {
            inputs[d] = net as u32;
        }
    }
    Flow::from_indices(&t, outputs, inputs)
}

/// `Σ b^{#non-peak matched pairs}` over the images of all closed flows.
pub fn narayana_via_rho(n: usize) -> Result<BPoly, FlowError> {
    let t = linear(n).map_err(FlowError::Tree)?;
    let mut acc = vec![0i64; n + 1];
    for f in enumerate_flows(&t, FlowClass::Closed, 0) {
        acc[rho(&f)?.structure().nonpeak_pairs] += 1;
    }
    Ok(BPoly::new(acc.into_iter().map(rat).collect()))
}

/// `Σ b^{n - peaks}` over Dyck paths of semilength `n`.
pub fn narayana_by_peaks(n: usize) -> BPoly {
    let mut acc = vec![0i64; n + 1];
    for p in DyckPath::all(n) {
        acc[n - p.peaks()] += 1;
    }
    BPoly::new(acc.into_iter().map(rat).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flows::flow::flow_rates;

    #[test]
    fn small_cases() {
        let t = linear(2).unwrap();
        let empty = flow_rates(&t, &[], &[]).unwrap();
        assert_eq!(rho(&empty).unwrap().to_string(), "URUR");
        let one = flow_rates(&t, &[vec![]], &[(vec![0], 1)]).unwrap();
        assert_eq!(rho(&one).unwrap().to_string(), "UURR");
        assert_eq!(rho_inverse(&"UURR".parse().unwrap()).unwrap(), one);
    }

    #[test]
    fn rejects() {
        let t = linear(2).unwrap();
        let open = flow_rates(&t, &[], &[(vec![], 1)]).unwrap();
        assert!(matches!(rho(&open), Err(FlowError::NotClosed)));
        let c = crate::trees::corolla(2);
        let f = flow_rates(&c, &[], &[]).unwrap();
        assert!(matches!(rho(&f), Err(FlowError::NotLinear(_))));
    }

    #[test]
    fn round_trips() {
        for n in 1..=6 {
            let t = linear(n).unwrap();
            let flows = enumerate_flows(&t, FlowClass::Closed, 0);
            assert_eq!(flows.len(), DyckPath::all(n).len());
            for f in flows {
                let p = rho(&f).unwrap();
                assert_eq!(rho_inverse(&p).unwrap(), f);
                assert_eq!(p.structure().nonpeak_pairs, f.size());
            }
        }
    }
}
