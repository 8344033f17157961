//! Time-indexed dynamic programming for machine-word instances.
//!
//! `best[t]` is the heaviest early set whose jobs occupy exactly `t` time
//! units, scanning jobs in due-date order.  Pseudo-polynomial in the total
//! processing time, so it only accepts word-sized instances whose total
//! fits under a horizon.  Serves as a third independent route to the
//! optimum, sharing no structure with the front-based solver.

use super::{SolveError, SolveResult, SolveStats};
use crate::sched::{edd_order, Instance};

/// Largest total processing time accepted by [`solve_lawler_moore`].
pub const DEFAULT_HORIZON: u64 = 1_000_000;

pub fn solve_lawler_moore(inst: &Instance<u64>) -> Result<SolveResult<u64>, SolveError> {
    solve_lawler_moore_with_horizon(inst, DEFAULT_HORIZON)
}

pub fn solve_lawler_moore_with_horizon(
    inst: &Instance<u64>,
    horizon: u64,
) -> Result<SolveResult<u64>, SolveError> {
    let mut total: u64 = 0;
    for job in inst.jobs() {
        total = total.checked_add(job.p).unwrap_or(u64::MAX);
        if total > horizon {
            return Err(SolveError::HorizonTooLarge {
                total,
                limit: horizon,
            });
        }
    }
    let t_max = total as usize;
    let order = edd_order(inst).order;

    let mut best: Vec<Option<u64>> = vec![None; t_max + 1];
    best[0] = Some(0);
    // One decision row per job layer, for witness reconstruction.
    let mut took: Vec<Vec<bool>> = Vec::with_capacity(order.len());
    for &id in &order {
        let job = inst.job(id);
        let p = job.p as usize;
        let hi = job.d.min(total) as usize;
        let mut row = vec![false; t_max + 1];
        if p <= hi {
            // Descending so each read sees the previous layer's value.
            for t in (p..=hi).rev() {
                if let Some(base) = best[t - p] {
                    let cand = base + job.w;
                    if best[t].is_none_or(|cur| cand > cur) {
                        best[t] = Some(cand);
                        row[t] = true;
                    }
                }
            }
        }
        took.push(row);
    }

    let mut best_t = 0usize;
    let mut best_w = 0u64;
    for (t, entry) in best.iter().enumerate() {
        if let Some(w) = *entry {
            if w > best_w {
                best_w = w;
                best_t = t;
            }
        }
    }

    let mut ids: Vec<usize> = Vec::new();
    let mut t_cur = best_t;
    for (layer, &id) in order.iter().enumerate().rev() {
        if took[layer][t_cur] {
            ids.push(id);
            t_cur -= inst.job(id).p as usize;
        }
    }
    debug_assert_eq!(t_cur, 0);
    ids.sort_unstable();

    Ok(SolveResult {
        optimum_early_weight: best_w,
        witness_early_set: ids,
        stats: SolveStats {
            states_created: (t_max as u64 + 1) * order.len() as u64,
            front_peak: 0,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sched::early_set_feasible;
    use crate::solvers::solve_pareto;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_instance(rng: &mut ChaCha8Rng, max_jobs: usize) -> Instance<u64> {
        let n = rng.gen_range(0..=max_jobs);
        let mut inst = Instance::new(());
        for _ in 0..n {
            inst.push(
                "j",
                rng.gen_range(1..=30),
                rng.gen_range(0..=30),
                rng.gen_range(0..=120),
            );
        }
        inst
    }

    #[test]
    fn agrees_with_the_front_solver() {
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        for _ in 0..500 {
            let inst = random_instance(&mut rng, 12);
            let a = solve_lawler_moore(&inst).unwrap();
            let b = solve_pareto(&inst).unwrap();
            assert_eq!(a.optimum_early_weight, b.optimum_early_weight);
        }
    }

    #[test]
    fn witness_is_feasible_and_weighs_the_optimum() {
        let mut rng = ChaCha8Rng::seed_from_u64(52);
        for _ in 0..300 {
            let inst = random_instance(&mut rng, 12);
            let res = solve_lawler_moore(&inst).unwrap();
            assert!(early_set_feasible(&inst, &res.witness_early_set).unwrap());
            let total: u64 = res.witness_early_set.iter().map(|&i| inst.job(i).w).sum();
            assert_eq!(total, res.optimum_early_weight);
        }
    }

    #[test]
    fn boundaries() {
        let mut single = Instance::new(());
        single.push("only", 4, 7, 4);
        let res = solve_lawler_moore(&single).unwrap();
        assert_eq!(res.optimum_early_weight, 7);
        assert_eq!(res.witness_early_set, vec![0]);

        let mut hopeless = Instance::new(());
        hopeless.push("a", 3, 5, 0);
        hopeless.push("b", 2, 9, 0);
        let res = solve_lawler_moore(&hopeless).unwrap();
        assert_eq!(res.optimum_early_weight, 0);
        assert!(res.witness_early_set.is_empty());

        let empty: Instance<u64> = Instance::new(());
        assert_eq!(solve_lawler_moore(&empty).unwrap().optimum_early_weight, 0);
    }

    #[test]
    fn horizon_is_enforced() {
        let mut inst = Instance::new(());
        inst.push("big", 100, 1, 200);
        inst.push("big", 100, 1, 200);
        let res = solve_lawler_moore_with_horizon(&inst, 150);
        assert!(matches!(
            res,
            Err(SolveError::HorizonTooLarge {
                total: 200,
                limit: 150
            })
        ));
    }
}
