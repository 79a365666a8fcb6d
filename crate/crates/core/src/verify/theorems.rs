use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dend::{check_comb_identities, check_dend_identities, DendFamily};
use crate::exactcoeff::{rat, FlowFraction, Rational};
use crate::flows::{
    check_commuting, count_flows, count_flows_multi, flows_gf, linear_ordinary_series_check, narayana_by_peaks,
    narayana_via_rho, small_flows_gf, unit_exit_gf, FlowClass,
};
use crate::prelie::{check_prelie_identities, h_series, labelled_compose, FlowBundle, PreLieSeries};
use crate::symfun::{groupring_idempotent_check, quasi_idempotent_check, IdempotentFamily};
use crate::trees::{linear, trees_up_to};

use super::{CheckKind, Outcome, Scope, Task};

/// Deliberate corruptions used to check that failures are caught.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Adds 1 to the flow fraction of the two-vertex linear tree.
    CorruptLinearTwo,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    pub degree: usize,
    pub t_order: usize,
    pub seed: u64,
    pub fault: Option<Fault>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { degree: 5, t_order: 8, seed: 0, fault: None }
    }
}

pub fn random_series(rng: &mut ChaCha8Rng, degree: usize) -> PreLieSeries<Rational> {
    let mut s = PreLieSeries::<Rational>::zero(degree);
    for t in s.trees().to_vec() {
        let v = if t.size() == 1 { 1 } else { rng.gen_range(-3..=3) };
        s.set(&t, rat(v)).expect("within degree");
    }
    s
}

fn catalan(n: usize) -> u64 {
    (0..n as u64).fold(1, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

fn first_failure<T>(items: impl IntoIterator<Item = T>, f: impl Fn(&T) -> Option<String>) -> Outcome {
    for item in items {
        if let Some(w) = f(&item) {
            return Outcome::fail(w, "first failing case");
        }
    }
    Outcome::pass()
}

pub fn theorem_tasks(config: &SuiteConfig) -> Vec<Task> {
    let n = config.degree.max(1);
    let m = config.t_order.max(2);
    let small = n.min(4);
    let seed = config.seed;
    let fault = config.fault;
    let th = CheckKind::Theorem;
    let mut tasks = vec![
        Task::single(th, "flow_recursion_vs_enumeration", Scope { t_order: Some(m), sizes: Some((1, n + 1)), degree: None }, move || {
            first_failure(trees_up_to(n + 1), |t| {
                let counts = count_flows_multi(t, &[FlowClass::All, FlowClass::Small, FlowClass::ConnectedUnitExit], m as u32);
                if flows_gf(t).expand(m) != counts[0].series() {
                    Some(format!("E on {t}"))
                } else if small_flows_gf(t).expand(m) != counts[1].series() {
                    Some(format!("D on {t}"))
                } else if unit_exit_gf(t) != counts[2].b_polynomial(1) {
                    Some(format!("F on {t}"))
                } else {
                    None
                }
            })
        }),
        Task::single(th, "reduction_choice_independence", Scope::sizes(1, n + 1), move || {
            first_failure(trees_up_to(n + 1), |t| check_commuting(t).err().map(|_| t.to_string()))
        }),
        Task::new(th, Scope::sizes(1, n + 3), move || {
            let lnr = |k: usize| linear(k).expect("k >= 1");
            vec![
                (
                    "narayana_via_rho".to_string(),
                    first_failure(1..=n + 3, |&k| match narayana_via_rho(k) {
                        Ok(p) if p == narayana_by_peaks(k) && p == flows_gf(&lnr(k)).eval_t0() => None,
                        _ => Some(lnr(k).to_string()),
                    }),
                ),
                (
                    "closed_flows_catalan".to_string(),
                    first_failure(1..=n + 3, |&k| {
                        (count_flows(&lnr(k), FlowClass::Closed, 0).total() != catalan(k)).then(|| lnr(k).to_string())
                    }),
                ),
            ]
        }),
        Task::single(th, "linear_series_equations", Scope::sizes(1, n + 3), move || match linear_ordinary_series_check(n + 3) {
            Ok(r) => match r.identities.iter().find(|i| !i.holds) {
                None => Outcome::pass(),
                Some(i) => Outcome::fail(i.name, format!("first failing power {:?}", i.first_failure)),
            },
            Err(e) => Outcome::error(e),
        }),
        Task::single(th, "h_group_law", Scope::degree(n + 1), move || {
            for (k, l) in [(1, 1), (2, 3), (1, -1)] {
                match h_series(k, n + 1).compose(&h_series(l, n + 1)) {
                    Ok(s) => {
                        if let Some(t) = s.first_difference(&h_series(k + l, n + 1)) {
                            return Outcome::fail(t.to_string(), format!("H_{k} o H_{l}"));
                        }
                    }
                    Err(e) => return Outcome::error(e),
                }
            }
            match h_series(1, n + 1).inverse() {
                Ok(inv) if inv == h_series(-1, n + 1) => Outcome::pass(),
                Ok(_) => Outcome::fail("H_1", "inverse is not H_-1"),
                Err(e) => Outcome::error(e),
            }
        }),
        Task::single(th, "composition_vs_labelled_oracle", Scope::degree(small), move || {
            let unit = PreLieSeries::<Rational>::unit(small);
            let trees = unit.trees().to_vec();
            for a in &trees {
                for b in &trees {
                    let mut s = PreLieSeries::zero(small);
                    s.set(a, rat(1)).expect("in range");
                    let mut t = unit.clone();
                    let bumped = t.get(b).expect("in range") + rat(1);
                    t.set(b, bumped).expect("in range");
                    match s.compose(&t) {
                        Ok(c) if c == labelled_compose(&s, &t) => {}
                        Ok(_) => return Outcome::fail(format!("{a} o (1 + {b})"), "edge-subset law differs"),
                        Err(e) => return Outcome::error(e),
                    }
                }
            }
            Outcome::pass()
        }),
        Task::new(th, Scope::degree(small), move || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut assoc = Outcome::pass();
            let mut radixe = Outcome::pass();
            for i in 0..5 {
                let [s, t, u, v, w] = std::array::from_fn(|_| random_series(&mut rng, small));
                let l = s.compose(&t).and_then(|st| st.compose(&u));
                let r = t.compose(&u).and_then(|tu| s.compose(&tu));
                if assoc.holds && l.ok() != r.ok() {
                    assoc = Outcome::fail(format!("sample {i}"), "(s o t) o u differs from s o (t o u)");
                }
                let l = s.diamond(&t, &u).and_then(|x| x.diamond(&v, &w));
                let r = t.diamond(&v, &w).and_then(|tvw| u.compose(&w).and_then(|uw| s.diamond(&tvw, &uw)));
                if radixe.holds && l.ok() != r.ok() {
                    radixe = Outcome::fail(format!("sample {i}"), "diamond is not a right action");
                }
            }
            vec![("composition_associative".to_string(), assoc), ("diamond_axiom".to_string(), radixe)]
        }),
        Task::new(th, Scope { degree: Some(n), t_order: Some(m), sizes: None }, move || {
            let mut bundle = FlowBundle::build(n, m);
            if fault == Some(Fault::CorruptLinearTwo) && n >= 2 {
                let lnr2 = linear(2).expect("two vertices");
                let bumped = bundle.flows.get(&lnr2).expect("in range").add(&FlowFraction::one());
                bundle.flows.set(&lnr2, bumped).expect("in range");
            }
            check_prelie_identities(&bundle).into_iter().map(|c| (c.name.clone(), c.into())).collect()
        }),
        Task::new(th, Scope::degree(n + 1), move || {
            check_comb_identities(n + 1).into_iter().map(|c| (c.name.clone(), c.into())).collect()
        }),
        Task::new(th, Scope::degree(n), move || {
            check_dend_identities(&DendFamily::build(n)).into_iter().map(|c| (c.name.clone(), c.into())).collect()
        }),
    ];
    for family in [IdempotentFamily::D, IdempotentFamily::F] {
        tasks.push(idempotent_task(th, family, n + 1, n.min(5)));
    }
    tasks
}

/// `x_n · x_n = c_n x_n` for `n ≤ max`, with the group ring oracle up to
/// `oracle_max`.
pub(crate) fn idempotent_task(kind: CheckKind, family: IdempotentFamily, max: usize, oracle_max: usize) -> Task {
    let id = format!("idempotent_{family}");
    Task::single(kind, &id, Scope::sizes(1, max), move || {
        let xs = match family.elements(max) {
            Ok(xs) => xs,
            Err(e) => return Outcome::error(e),
        };
        for (i, x) in xs.iter().enumerate() {
            let k = i + 1;
            let scalar = family.expected_scalar(k);
            match quasi_idempotent_check(x, &scalar).map(|r| r.into_result()) {
                Ok(Ok(())) => {}
                Ok(Err(e)) => return Outcome::fail(format!("n={k}"), e.to_string()),
                Err(e) => return Outcome::error(e),
            }
            if k <= oracle_max {
                match groupring_idempotent_check(x, &scalar) {
                    Ok(None) => {}
                    Ok(Some(p)) => return Outcome::fail(format!("n={k} {p}"), "group ring square differs"),
                    Err(e) => return Outcome::error(e),
                }
            }
        }
        Outcome::pass().with_detail(format!("ribbon n <= {max}, group ring n <= {oracle_max}"))
    })
}
