use rayon::prelude::*;

use crate::exactcoeff::{Coefficient, FlowFraction, Rational};
use crate::flows::connected_flows_gf;
use crate::prelie::{all_trees, corollas, flows_series, small_flows_series, unit_exit_series, z_series, IdentityCheck, PreLieSeries};
use crate::trees::PBTree;

use super::canopy::{canopy_coefficient, CanopySeries};
use super::named::{all_trees_image, corolla_image, left_combs, linear_trees, right_combs, DendFamily};
use super::series::weighted_left_combs;
use super::{phi, DendError, DendSeries};

fn compare<R: Coefficient>(name: &str, lhs: &DendSeries<R>, rhs: &DendSeries<R>) -> IdentityCheck {
    match lhs.first_difference(rhs) {
        None => IdentityCheck::new(name, None, None),
        Some(t) => IdentityCheck::new(
            name,
            Some(t.to_string()),
            Some(format!("{} vs {}", lhs.get(&t).unwrap(), rhs.get(&t).unwrap())),
        ),
    }
}

fn run<R: Coefficient>(name: &str, f: impl FnOnce() -> Result<(DendSeries<R>, DendSeries<R>), DendError>) -> IdentityCheck {
    match f() {
        Ok((l, r)) => compare(name, &l, &r),
        Err(e) => IdentityCheck::failed(name, e.to_string()),
    }
}

/// Identities among the comb series and the images of `Crls` and `H_1`.
pub fn check_comb_identities(degree: usize) -> Vec<IdentityCheck> {
    let r = right_combs(degree);
    let l = left_combs(degree);
    let one = DendSeries::<Rational>::one(degree);
    let one_minus_sl = one.sub(&l.suspension()).unwrap();
    let one_minus_sr = one.sub(&r.suspension()).unwrap();
    let phi_linear = phi(&linear_trees(degree));
    let out = vec![
        run("right_combs", || {
            let expected = DendSeries::from_fn(degree, |t| {
                Rational::from_integer(((*t == PBTree::right_comb(t.degree()) && t.degree() > 0) as i64).into())
            });
            Ok((r.clone(), expected))
        }),
        run("left_combs", || {
            let expected = DendSeries::from_fn(degree, |t| {
                let n = t.degree();
                let s = if n % 2 == 0 { 1 } else { -1 };
                Rational::from_integer(((*t == PBTree::left_comb(n) && n > 0) as i64 * s).into())
            });
            Ok((l.clone(), expected))
        }),
        run("L_inverse_R", || Ok((l.one_plus().star(&r.one_plus())?, one.clone()))),
        run("bar_R", || Ok((r.bar(), l.neg()))),
        run("image_des_corolles", || Ok((phi(&corollas(degree)), corolla_image(degree)))),
        run("image_de_tout", || Ok((phi(&all_trees(degree)), all_trees_image(degree)))),
        run("inverse_cool", || {
            Ok((all_trees_image(degree).inverse()?, l.one_plus().vee(&r.one_plus())?))
        }),
        run("nice_compo", || {
            Ok((r.suspension().compose(&l.one_plus().vee(&r.one_plus())?)?, l.neg()))
        }),
        run("lemme_auxi_1", || {
            let rhs = one_minus_sl.star(&phi_linear)?.star(&one_minus_sr)?;
            Ok((phi(&all_trees(degree)), rhs))
        }),
        run("lemme_auxi_2", || Ok((one_minus_sl.star(&phi_linear)?, weighted_left_combs(degree)))),
        run("lemme_auxi_3", || {
            Ok((weighted_left_combs(degree).star(&one_minus_sr)?, one_minus_sl.vee(&one_minus_sr)?))
        }),
    ];
    out
}

/// Connected flows as exact fractions, one tree at a time.
pub fn connected_fractions(degree: usize) -> Result<PreLieSeries<FlowFraction>, crate::flows::FlowError> {
    let mut s = PreLieSeries::zero(degree);
    let trees = s.trees().to_vec();
    let values: Vec<_> = trees.par_iter().map(connected_flows_gf).collect();
    for (t, v) in trees.iter().zip(values) {
        s.set(t, v?).expect("within degree");
    }
    Ok(s)
}

type LazyCheck<'a> = Box<dyn Fn() -> IdentityCheck + Sync + 'a>;

/// The theorems of the dendriform side, checked coefficientwise.
pub fn check_dend_identities(family: &DendFamily) -> Vec<IdentityCheck> {
    let deg = family.degree;
    let f = family;
    let checks: Vec<(&str, LazyCheck<'_>)> = vec![
        ("lemmeVU", Box::new(|| lemme_vu(f))),
        ("uv_from_et_U", Box::new(|| run("uv_from_et_U", || Ok((f.u_t.clone(), lift(&right_combs(deg)).compose(&f.e_t)?))))),
        ("uv_from_et_V", Box::new(|| run("uv_from_et_V", || Ok((f.v_t.clone(), lift(&left_combs(deg)).compose(&f.e_t)?))))),
        (
            "d_corolle_e_dend",
            Box::new(|| {
                run("d_corolle_e_dend", || {
                    let crl = lift(&corolla_image(deg));
                    Ok((f.d_t.clone(), crl.diamond(&DendSeries::single(deg), &f.e_t)?))
                })
            }),
        ),
        ("phi_E_t", Box::new(|| run("phi_E_t", || Ok((phi(&flows_series(deg)), f.e_t.clone()))))),
        ("phi_D_t", Box::new(|| run("phi_D_t", || Ok((phi(&small_flows_series(deg)), f.d_t.clone()))))),
        (
            "formule_Ect",
            Box::new(|| match connected_fractions(deg) {
                Ok(ec) => compare("formule_Ect", &phi(&ec), &f.connected()),
                Err(e) => IdentityCheck::failed("formule_Ect", e.to_string()),
            }),
        ),
        ("closed_connected", Box::new(|| compare("closed_connected", &f.connected().at_t0(), &f.closed_connected()))),
        (
            "phi_F",
            Box::new(|| match unit_exit_series(deg) {
                Ok(fs) => compare("phi_F", &phi(&fs.map(|p| FlowFraction::from_bpoly(p.clone()))), &f.unit_exit()),
                Err(e) => IdentityCheck::failed("phi_F", e.to_string()),
            }),
        ),
        ("bar_E_t", Box::new(|| compare("bar_E_t", &f.e_t.bar(), &f.e_t))),
        ("bar_D_t", Box::new(|| compare("bar_D_t", &f.d_t.bar(), &f.d_t))),
        ("bar_U_t", Box::new(|| compare("bar_U_t", &f.u_t.bar(), &f.v_t.neg()))),
        ("canopy_U", Box::new(|| canopy_check(&f.u_t, CanopySeries::U))),
        ("canopy_V", Box::new(|| canopy_check(&f.v_t, CanopySeries::V))),
        ("canopy_D", Box::new(|| canopy_check(&f.d_t, CanopySeries::D))),
        ("canopy_D0", Box::new(|| canopy_check(&f.d_t.at_t0(), CanopySeries::DAtZero))),
        ("canopy_E", Box::new(|| canopy_check(&f.e_t, CanopySeries::E))),
        ("canopy_F", Box::new(|| canopy_check(&f.unit_exit(), CanopySeries::F))),
    ];
    checks.par_iter().map(|(_, c)| c()).collect()
}

fn lift(s: &DendSeries<Rational>) -> DendSeries<FlowFraction> {
    s.map(FlowFraction::from_rational)
}

fn canopy_check(s: &DendSeries<FlowFraction>, which: CanopySeries) -> IdentityCheck {
    let expected = DendSeries::from_fn(s.degree(), |t| {
        if t.is_leaf() {
            FlowFraction::zero()
        } else {
            canopy_coefficient(t, which).expect("nonunit tree")
        }
    });
    compare(&format!("canopy_{which}"), s, &expected)
}

/// `(1 + V_v) * (1 + U_u) = 1 + (v - u) N_v T P_u` at `(u, v)` in
/// `{(t, 0), (0, t), (t, t)}`.
fn lemme_vu(f: &DendFamily) -> IdentityCheck {
    let deg = f.degree;
    let t = FlowFraction::t_power(1);
    for (u_is_t, v_is_t) in [(true, false), (false, true), (true, true)] {
        let u = if u_is_t { f.u_t.clone() } else { f.u_t.at_t0() };
        let v = if v_is_t { f.v_t.clone() } else { f.v_t.at_t0() };
        let diff = match (v_is_t, u_is_t) {
            (true, false) => t.clone(),
            (false, true) => t.negate(),
            _ => FlowFraction::zero(),
        };
        let lhs = v.one_plus().star(&u.one_plus()).expect("same degree");
        let rhs = DendSeries::one(deg).add(&f.ntp(v_is_t, u_is_t).scale(&diff)).unwrap();
        let c = compare("lemmeVU", &lhs, &rhs);
        if !c.holds {
            return IdentityCheck {
                detail: Some(format!("at u={} v={}: {}", if u_is_t { "t" } else { "0" }, if v_is_t { "t" } else { "0" }, c.detail.unwrap_or_default())),
                ..c
            };
        }
    }
    IdentityCheck::new("lemmeVU", None, None)
}

/// `φ(Z)` against the block description of `sZ` (a conjecture).
pub fn check_quotient_tail(degree: usize) -> IdentityCheck {
    match z_series(degree) {
        Ok(z) => {
            let family = DendFamily::build(degree);
            compare("phi_Z", &phi(&z.map(|p| FlowFraction::from_bpoly(p.clone()))), &family.quotient_tail())
        }
        Err(e) => IdentityCheck::failed("phi_Z", e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comb_identities_degree_four() {
        for c in check_comb_identities(4) {
            assert!(c.holds, "{c:?}");
        }
    }

    #[test]
    fn dend_identities_degree_three() {
        let f = DendFamily::build(3);
        for c in check_dend_identities(&f) {
            assert!(c.holds, "{c:?}");
        }
    }

    #[test]
    fn quotient_tail_degree_four() {
        assert!(check_quotient_tail(4).holds);
    }
}
