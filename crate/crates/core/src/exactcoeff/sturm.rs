use num_traits::{Signed, Zero};

use super::{rat, BPoly, CoeffError, Rational};

/// Where roots are counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootInterval {
    AllReals,
    /// Strictly negative reals.
    Negative,
    /// Negative reals and zero.
    NonPositive,
}

/// `p / gcd(p, p')`, made monic. Same roots as `p`, all simple.
pub fn squarefree_part(p: &BPoly) -> BPoly {
    let g = p.gcd(&p.derivative());
    let (q, _) = p.div_rem(&g);
    q.gcd(&q)
}

fn sturm_chain(p: &BPoly) -> Vec<BPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(-&r);
    }
    chain
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

fn sign_of(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_negative() {
        -1
    } else {
        1
    }
}

fn changes_at(chain: &[BPoly], x: &Rational) -> usize {
    sign_changes(chain.iter().map(|q| sign_of(&q.eval(x))))
}

fn changes_at_infinity(chain: &[BPoly], positive: bool) -> usize {
    sign_changes(chain.iter().map(|q| {
        let lead = sign_of(q.leading().expect("nonzero chain member"));
        let odd = q.degree().unwrap() % 2 == 1;
        if !positive && odd {
            -lead
        } else {
            lead
        }
    }))
}

/// Number of distinct real roots of `p` in the interval, by Sturm's theorem.
pub fn count_real_roots(p: &BPoly, interval: RootInterval) -> Result<usize, CoeffError> {
    if p.is_zero() {
        return Err(CoeffError::ZeroPolynomial);
    }
    let q = squarefree_part(p);
    if q.degree() == Some(0) {
        return Ok(0);
    }
    let chain = sturm_chain(&q);
    let minus_inf = changes_at_infinity(&chain, false);
    let count = match interval {
        RootInterval::AllReals => minus_inf - changes_at_infinity(&chain, true),
        // V(a) - V(b) counts roots in (a, b]
        RootInterval::NonPositive => minus_inf - changes_at(&chain, &rat(0)),
        RootInterval::Negative => {
            let n = minus_inf - changes_at(&chain, &rat(0));
            if q.eval(&rat(0)).is_zero() {
                n - 1
            } else {
                n
            }
        }
    };
    Ok(count)
}

/// Every complex root of `p` is real.
pub fn is_real_rooted(p: &BPoly) -> Result<bool, CoeffError> {
    let q = squarefree_part(p);
    let deg = q.degree().ok_or(CoeffError::ZeroPolynomial)?;
    Ok(count_real_roots(p, RootInterval::AllReals)? == deg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn narayana_three() {
        let p = BPoly::from_ints(&[1, 3, 1]);
        assert_eq!(count_real_roots(&p, RootInterval::Negative).unwrap(), 2);
        assert!(is_real_rooted(&p).unwrap());
    }

    #[test]
    fn no_real_roots() {
        let p = BPoly::from_ints(&[1, 0, 1]);
        assert_eq!(count_real_roots(&p, RootInterval::AllReals).unwrap(), 0);
        assert!(!is_real_rooted(&p).unwrap());
    }

    #[test]
    fn fork_connected_polynomial() {
        let p = BPoly::from_ints(&[0, 2, 2]);
        assert_eq!(count_real_roots(&p, RootInterval::AllReals).unwrap(), 2);
        assert_eq!(count_real_roots(&p, RootInterval::NonPositive).unwrap(), 2);
        assert_eq!(count_real_roots(&p, RootInterval::Negative).unwrap(), 1);
    }

    #[test]
    fn repeated_roots_count_once() {
        let p = BPoly::from_ints(&[1, 1]).pow(3);
        assert_eq!(count_real_roots(&p, RootInterval::AllReals).unwrap(), 1);
        assert!(is_real_rooted(&p).unwrap());
    }

    #[test]
    fn zero_polynomial() {
        assert_eq!(
            count_real_roots(&BPoly::zero(), RootInterval::AllReals),
            Err(CoeffError::ZeroPolynomial)
        );
    }
}
