use crate::dend::{check_quotient_tail, phi, z_poly, DendFamily};
use crate::exactcoeff::{count_real_roots, squarefree_part, BPoly, FlowFraction, RootInterval};
use crate::flows::{flows_gf, fork_conjecture_check, unit_exit_gf, unit_exit_t_gf};
use crate::prelie::{quotient_conjecture_scan, PreLieSeries};
use crate::symfun::IdempotentFamily;
use crate::trees::trees_up_to;

use super::theorems::idempotent_task;
use super::{CheckKind, Outcome, Scope, Task};

/// Largest sizes for each conjecture scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureLimits {
    pub fork: usize,
    pub unit_exit_t: usize,
    pub unit_exit_t_image: usize,
    pub quotient: usize,
    pub quotient_tail: usize,
    pub idempotent: usize,
    pub idempotent_oracle: usize,
    pub real_roots: usize,
    pub z_poly: usize,
}

impl Default for ConjectureLimits {
    fn default() -> Self {
        ConjectureLimits {
            fork: 10,
            unit_exit_t: 7,
            unit_exit_t_image: 5,
            quotient: 7,
            quotient_tail: 6,
            idempotent: 6,
            idempotent_oracle: 4,
            real_roots: 7,
            z_poly: 6,
        }
    }
}

impl ConjectureLimits {
    /// Every limit capped at `n`.
    pub fn capped(n: usize) -> Self {
        let d = Self::default();
        ConjectureLimits {
            fork: d.fork.min(n),
            unit_exit_t: d.unit_exit_t.min(n),
            unit_exit_t_image: d.unit_exit_t_image.min(n),
            quotient: d.quotient.min(n),
            quotient_tail: d.quotient_tail.min(n),
            idempotent: d.idempotent.min(n),
            idempotent_oracle: d.idempotent_oracle.min(n),
            real_roots: d.real_roots.min(n),
            z_poly: d.z_poly.min(n),
        }
    }
}

/// Real-rooted with every root at most 0. Constants count as true.
fn real_nonpositive_roots(p: &BPoly) -> bool {
    match squarefree_part(p).degree() {
        None | Some(0) => true,
        Some(d) => count_real_roots(p, RootInterval::NonPositive).map(|k| k == d).unwrap_or(false),
    }
}

pub fn conjecture_tasks(limits: &ConjectureLimits) -> Vec<Task> {
    let l = limits.clone();
    let cj = CheckKind::Conjecture;
    let mut tasks = vec![
        Task::single(cj, "fork_closed_flow_counts", Scope::sizes(1, l.fork), move || {
            for n in 1..=l.fork {
                let report = fork_conjecture_check(n);
                if let Some(row) = report.counterexamples().first() {
                    return Outcome::fail(
                        format!("n={n} stem={} size={}", row.stem, row.size),
                        format!("enumerated {} vs formula {}", row.enumerated, row.formula),
                    );
                }
            }
            Outcome::pass()
        }),
        Task::single(cj, "unit_exit_t_well_defined", Scope::sizes(1, l.unit_exit_t), move || {
            for t in trees_up_to(l.unit_exit_t) {
                match unit_exit_t_gf(&t) {
                    Ok(f) if f.eval_t0() == unit_exit_gf(&t) => {}
                    Ok(_) => return Outcome::fail(t.to_string(), "value at t = 0 differs from F"),
                    Err(e) => return Outcome::fail(t.to_string(), e.to_string()),
                }
            }
            Outcome::pass()
        }),
        Task::single(cj, "unit_exit_t_image", Scope::degree(l.unit_exit_t_image), move || {
            let n = l.unit_exit_t_image;
            let mut values = Vec::new();
            for t in trees_up_to(n) {
                match unit_exit_t_gf(&t) {
                    Ok(v) => values.push((t, v)),
                    Err(e) => return Outcome::fail(t.to_string(), e.to_string()),
                }
            }
            let mut s = PreLieSeries::<FlowFraction>::zero(n);
            for (t, v) in values {
                s.set(&t, v).expect("within degree");
            }
            match phi(&s).first_difference(&DendFamily::build(n).unit_exit_t()) {
                None => Outcome::pass(),
                Some(t) => Outcome::fail(t.to_string(), "image differs from -(1-t) N_t T P_t"),
            }
        }),
        Task::single(cj, "quotient_signed_saturated", Scope::sizes(1, l.quotient), move || {
            match quotient_conjecture_scan(l.quotient) {
                Ok(rows) => match rows.iter().find(|r| !r.matches) {
                    None => Outcome::pass(),
                    Some(r) => Outcome::fail(r.tree.clone(), format!("{} vs {}", r.value, r.predicted)),
                },
                Err(e) => Outcome::error(e),
            }
        }),
        Task::single(cj, "quotient_tail_canopy", Scope::degree(l.quotient_tail), move || {
            check_quotient_tail(l.quotient_tail).into()
        }),
        Task::single(cj, "real_roots_E_F", Scope::sizes(1, l.real_roots), move || {
            for t in trees_up_to(l.real_roots) {
                if !real_nonpositive_roots(&flows_gf(&t).eval_t0()) {
                    return Outcome::fail(t.to_string(), "E has a non-real or positive root");
                }
                let f = unit_exit_gf(&t);
                if !f.is_zero() && !real_nonpositive_roots(&f) {
                    return Outcome::fail(t.to_string(), "F has a non-real or positive root");
                }
            }
            Outcome::pass()
        }),
        Task::single(cj, "real_roots_z", Scope::sizes(0, l.z_poly), move || {
            for p in 0..=l.z_poly {
                for q in 0..=l.z_poly {
                    if !real_nonpositive_roots(&z_poly(p, q)) {
                        return Outcome::fail(format!("p={p} q={q}"), "non-real or positive root");
                    }
                }
            }
            Outcome::pass()
        }),
    ];
    for family in [IdempotentFamily::FT, IdempotentFamily::Z] {
        tasks.push(idempotent_task(cj, family, l.idempotent, l.idempotent_oracle));
    }
    tasks
}
