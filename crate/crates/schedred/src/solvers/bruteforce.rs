//! Exhaustive reference solvers for tiny instances.

use itertools::Itertools;

use super::{SolveError, SolveResult, SolveStats};
use crate::sched::{evaluate, Instance, Schedule, Value};

const PERM_LIMIT: usize = 9;
const SUBSET_LIMIT: usize = 22;

/// Tries every processing order.  The slowest and most assumption-free
/// route: it does not even rely on early jobs being moveable to the front.
pub fn solve_perm_bruteforce<V: Value>(inst: &Instance<V>) -> Result<SolveResult<V>, SolveError> {
    let n = inst.len();
    if n > PERM_LIMIT {
        return Err(SolveError::TooManyJobs {
            alg: "permutation brute force",
            limit: PERM_LIMIT,
            got: n,
        });
    }
    let mut best_w = inst.zero();
    let mut best_set: Vec<usize> = Vec::new();
    let mut count = 0u64;
    for order in (0..n).permutations(n) {
        count += 1;
        let res = evaluate(inst, &Schedule { order })?;
        if res.w_early > best_w {
            best_w = res.w_early;
            best_set = (0..n).filter(|&i| res.early[i]).collect();
        }
    }
    Ok(SolveResult {
        optimum_early_weight: best_w,
        witness_early_set: best_set,
        stats: SolveStats {
            states_created: count.max(1),
            front_peak: 0,
        },
    })
}

/// Tries every subset as a candidate early set, keeping the best feasible
/// one.  Feasibility is the due-date-order prefix test.
pub fn solve_subset_bruteforce<V: Value>(inst: &Instance<V>) -> Result<SolveResult<V>, SolveError> {
    let n = inst.len();
    if n > SUBSET_LIMIT {
        return Err(SolveError::TooManyJobs {
            alg: "subset brute force",
            limit: SUBSET_LIMIT,
            got: n,
        });
    }
    let edd: Vec<usize> = crate::sched::edd_order(inst).order;
    let mut best_w = inst.zero();
    let mut best_mask = 0u32;
    for mask in 0u32..(1u32 << n) {
        let mut clock = inst.zero();
        let mut weight = inst.zero();
        let mut feasible = true;
        for &id in &edd {
            if mask & (1 << id) == 0 {
                continue;
            }
            let job = inst.job(id);
            clock = match clock.checked_add(&job.p) {
                Some(c) => c,
                None => {
                    feasible = false;
                    break;
                }
            };
            if clock > job.d {
                feasible = false;
                break;
            }
            weight = weight
                .checked_add(&job.w)
                .ok_or(crate::sched::SchedError::ValueOverflow)?;
        }
        if feasible && weight > best_w {
            best_w = weight;
            best_mask = mask;
        }
    }
    Ok(SolveResult {
        optimum_early_weight: best_w,
        witness_early_set: (0..n).filter(|&i| best_mask & (1 << i) != 0).collect(),
        stats: SolveStats {
            states_created: 1u64 << n,
            front_peak: 0,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn word_instance(rows: &[(u64, u64, u64)]) -> Instance<u64> {
        let mut inst = Instance::new(());
        for &(p, w, d) in rows {
            inst.push("j", p, w, d);
        }
        inst
    }

    fn random_instance(rng: &mut ChaCha8Rng, max_jobs: usize) -> Instance<u64> {
        let n = rng.gen_range(0..=max_jobs);
        let mut inst = Instance::new(());
        for _ in 0..n {
            inst.push(
                "j",
                rng.gen_range(1..=10),
                rng.gen_range(0..=10),
                rng.gen_range(0..=25),
            );
        }
        inst
    }

    #[test]
    fn two_competing_jobs_pick_the_heavier() {
        let inst = word_instance(&[(2, 1, 2), (2, 2, 3)]);
        let res = solve_perm_bruteforce(&inst).unwrap();
        assert_eq!(res.optimum_early_weight, 2);
        assert_eq!(res.witness_early_set, vec![1]);
        let res = solve_subset_bruteforce(&inst).unwrap();
        assert_eq!(res.optimum_early_weight, 2);
    }

    #[test]
    fn hopeless_and_trivial_boundaries() {
        let inst = word_instance(&[(5, 9, 2)]);
        assert_eq!(solve_perm_bruteforce(&inst).unwrap().optimum_early_weight, 0);
        assert_eq!(
            solve_subset_bruteforce(&inst).unwrap().optimum_early_weight,
            0
        );

        let all = word_instance(&[(1, 3, 10), (1, 4, 10), (1, 5, 10)]);
        assert_eq!(solve_subset_bruteforce(&all).unwrap().optimum_early_weight, 12);

        let empty = word_instance(&[]);
        assert_eq!(solve_perm_bruteforce(&empty).unwrap().optimum_early_weight, 0);
    }

    #[test]
    fn size_limits_are_enforced() {
        let inst = word_instance(&vec![(1, 1, 1); 10]);
        assert!(matches!(
            solve_perm_bruteforce(&inst),
            Err(SolveError::TooManyJobs { limit: 9, got: 10, .. })
        ));
        let inst = word_instance(&vec![(1, 1, 1); 23]);
        assert!(matches!(
            solve_subset_bruteforce(&inst),
            Err(SolveError::TooManyJobs { limit: 22, got: 23, .. })
        ));
    }

    #[test]
    fn permutation_and_subset_routes_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(314);
        for _ in 0..500 {
            let inst = random_instance(&mut rng, 7);
            let a = solve_perm_bruteforce(&inst).unwrap();
            let b = solve_subset_bruteforce(&inst).unwrap();
            assert_eq!(a.optimum_early_weight, b.optimum_early_weight);
        }
    }

    #[test]
    fn adding_a_job_never_hurts() {
        let mut rng = ChaCha8Rng::seed_from_u64(2718);
        for _ in 0..200 {
            let smaller = random_instance(&mut rng, 6);
            let mut bigger = smaller.clone();
            bigger.push(
                "extra",
                rng.gen_range(1..=10),
                rng.gen_range(0..=10),
                rng.gen_range(0..=25),
            );
            let a = solve_subset_bruteforce(&smaller).unwrap();
            let b = solve_subset_bruteforce(&bigger).unwrap();
            assert!(b.optimum_early_weight >= a.optimum_early_weight);
        }
    }

    #[test]
    fn witnesses_are_feasible_and_account_for_the_optimum() {
        let mut rng = ChaCha8Rng::seed_from_u64(1618);
        for _ in 0..200 {
            let inst = random_instance(&mut rng, 7);
            for res in [
                solve_perm_bruteforce(&inst).unwrap(),
                solve_subset_bruteforce(&inst).unwrap(),
            ] {
                assert!(crate::sched::early_set_feasible(&inst, &res.witness_early_set).unwrap());
                let total: u64 = res.witness_early_set.iter().map(|&i| inst.job(i).w).sum();
                assert_eq!(total, res.optimum_early_weight);
            }
        }
    }
}
