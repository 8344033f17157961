//! Single-machine instances with weighted tardy jobs.
//!
//! A job is early in a schedule when it completes no later than its due date,
//! and tardy otherwise; the objective throughout is maximizing the total
//! weight of early jobs (equivalently, minimizing weighted tardy count).
//! Values are abstracted so the same machinery runs on machine words and on
//! the digit-vector numbers produced by the reductions.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::blockint::{BlockInt, BlockLayout};

/// Exact, totally ordered, nonnegative additive values.
///
/// `Ctx` carries whatever is needed to mint a zero: nothing for words, the
/// digit layout for block integers.
pub trait Value: Clone + Ord + fmt::Debug + Send + Sync {
    type Ctx: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(ctx: &Self::Ctx) -> Self;

    /// Exact sum, or `None` when the value domain cannot represent it.
    fn checked_add(&self, rhs: &Self) -> Option<Self>;
}

impl Value for u64 {
    type Ctx = ();

    fn zero(_: &()) -> u64 {
        0
    }

    fn checked_add(&self, rhs: &u64) -> Option<u64> {
        u64::checked_add(*self, *rhs)
    }
}

impl Value for BlockInt {
    type Ctx = Arc<BlockLayout>;

    fn zero(ctx: &Arc<BlockLayout>) -> BlockInt {
        BlockInt::zero(ctx)
    }

    fn checked_add(&self, rhs: &BlockInt) -> Option<BlockInt> {
        self.add(rhs).ok()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SchedError {
    #[error("schedule is not a permutation of the job ids")]
    NotAPermutation,
    #[error("job id {0} outside the instance")]
    UnknownJobId(usize),
    #[error("job id {0} listed twice")]
    DuplicateJobId(usize),
    #[error("sum not representable in the value domain")]
    ValueOverflow,
    #[error("early set is not feasible")]
    InfeasibleEarlySet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Job<V> {
    pub id: usize,
    /// Human-readable origin label; carries no semantics for solving.
    pub tag: String,
    pub p: V,
    pub w: V,
    pub d: V,
}

/// Ordered list of jobs with dense ids `0..len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance<V: Value> {
    ctx: V::Ctx,
    jobs: Vec<Job<V>>,
}

impl<V: Value> Instance<V> {
    pub fn new(ctx: V::Ctx) -> Self {
        Instance { ctx, jobs: Vec::new() }
    }

    pub fn push(&mut self, tag: impl Into<String>, p: V, w: V, d: V) -> usize {
        let id = self.jobs.len();
        self.jobs.push(Job {
            id,
            tag: tag.into(),
            p,
            w,
            d,
        });
        id
    }

    pub fn ctx(&self) -> &V::Ctx {
        &self.ctx
    }

    pub fn jobs(&self) -> &[Job<V>] {
        &self.jobs
    }

    pub fn job(&self, id: usize) -> &Job<V> {
        &self.jobs[id]
    }

    pub fn len(&self) -> usize {
        self.jobs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.jobs.is_empty()
    }

    pub fn zero(&self) -> V {
        V::zero(&self.ctx)
    }

    /// Sum of all job weights.
    pub fn total_weight(&self) -> Result<V, SchedError> {
        let mut acc = self.zero();
        for job in &self.jobs {
            acc = acc.checked_add(&job.w).ok_or(SchedError::ValueOverflow)?;
        }
        Ok(acc)
    }
}

/// Processing order as a permutation of job ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    pub order: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalResult<V> {
    /// Completion time per job id.
    pub completion: Vec<V>,
    /// Early flag per job id (complete at or before the due date).
    pub early: Vec<bool>,
    pub p_early: V,
    pub w_early: V,
    pub w_tardy: V,
}

/// Runs a schedule and aggregates early/tardy weight exactly.
pub fn evaluate<V: Value>(
    inst: &Instance<V>,
    sched: &Schedule,
) -> Result<EvalResult<V>, SchedError> {
    let n = inst.len();
    if sched.order.len() != n {
        return Err(SchedError::NotAPermutation);
    }
    let mut seen = vec![false; n];
    for &id in &sched.order {
        if id >= n || seen[id] {
            return Err(SchedError::NotAPermutation);
        }
        seen[id] = true;
    }

    let zero = inst.zero();
    let mut completion = vec![zero.clone(); n];
    let mut early = vec![false; n];
    let mut clock = zero.clone();
    let mut p_early = zero.clone();
    let mut w_early = zero.clone();
    let mut w_tardy = zero;
    for &id in &sched.order {
        let job = inst.job(id);
        clock = clock.checked_add(&job.p).ok_or(SchedError::ValueOverflow)?;
        completion[id] = clock.clone();
        if clock <= job.d {
            early[id] = true;
            p_early = p_early.checked_add(&job.p).ok_or(SchedError::ValueOverflow)?;
            w_early = w_early.checked_add(&job.w).ok_or(SchedError::ValueOverflow)?;
        } else {
            w_tardy = w_tardy.checked_add(&job.w).ok_or(SchedError::ValueOverflow)?;
        }
    }
    Ok(EvalResult {
        completion,
        early,
        p_early,
        w_early,
        w_tardy,
    })
}

/// All job ids sorted by due date, ties kept in instance order.
pub fn edd_order<V: Value>(inst: &Instance<V>) -> Schedule {
    let mut order: Vec<usize> = (0..inst.len()).collect();
    order.sort_by(|&a, &b| inst.job(a).d.cmp(&inst.job(b).d));
    Schedule { order }
}

/// Checks the canonical shape of a witness schedule: the flagged-early jobs
/// form a prefix in non-decreasing due-date order, followed by the rest.
pub fn is_edd<V: Value>(inst: &Instance<V>, sched: &Schedule, early: &[bool]) -> bool {
    debug_assert_eq!(early.len(), inst.len());
    let mut in_suffix = false;
    let mut last_due: Option<&V> = None;
    for &id in &sched.order {
        if early[id] {
            if in_suffix {
                return false;
            }
            if let Some(prev) = last_due {
                if *prev > inst.job(id).d {
                    return false;
                }
            }
            last_due = Some(&inst.job(id).d);
        } else {
            in_suffix = true;
        }
    }
    true
}

/// Sorts a candidate early set by due date (ties in id order) and returns it
/// if every prefix meets its member's due date.
fn sorted_feasible_prefix<V: Value>(
    inst: &Instance<V>,
    early_ids: &[usize],
) -> Result<Option<Vec<usize>>, SchedError> {
    let n = inst.len();
    let mut seen = vec![false; n.max(1)];
    let mut ids = Vec::with_capacity(early_ids.len());
    for &id in early_ids {
        if id >= n {
            return Err(SchedError::UnknownJobId(id));
        }
        if seen[id] {
            return Err(SchedError::DuplicateJobId(id));
        }
        seen[id] = true;
        ids.push(id);
    }
    ids.sort_unstable();
    ids.sort_by(|&a, &b| inst.job(a).d.cmp(&inst.job(b).d));
    let mut clock = inst.zero();
    for &id in &ids {
        let job = inst.job(id);
        clock = clock.checked_add(&job.p).ok_or(SchedError::ValueOverflow)?;
        if clock > job.d {
            return Ok(None);
        }
    }
    Ok(Some(ids))
}

/// Whether the given jobs can all be early simultaneously.  By the due-date
/// exchange argument this is order-independent: it holds exactly when the
/// set, sorted by due date, meets every prefix's due date.
pub fn early_set_feasible<V: Value>(
    inst: &Instance<V>,
    early_ids: &[usize],
) -> Result<bool, SchedError> {
    Ok(sorted_feasible_prefix(inst, early_ids)?.is_some())
}

/// Expands a feasible early set into a full schedule: the set in due-date
/// order, then every remaining job in id order.
pub fn witness_to_schedule<V: Value>(
    inst: &Instance<V>,
    early_ids: &[usize],
) -> Result<Schedule, SchedError> {
    let sorted = sorted_feasible_prefix(inst, early_ids)?.ok_or(SchedError::InfeasibleEarlySet)?;
    let mut in_prefix = vec![false; inst.len()];
    for &id in &sorted {
        in_prefix[id] = true;
    }
    let mut order = sorted;
    order.extend((0..inst.len()).filter(|&id| !in_prefix[id]));
    Ok(Schedule { order })
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn word_instance(rows: &[(u64, u64, u64)]) -> Instance<u64> {
        let mut inst = Instance::new(());
        for (i, &(p, w, d)) in rows.iter().enumerate() {
            inst.push(format!("j{i}"), p, w, d);
        }
        inst
    }

    fn random_instance(rng: &mut ChaCha8Rng, max_jobs: usize) -> Instance<u64> {
        let n = rng.gen_range(0..=max_jobs);
        let mut inst = Instance::new(());
        for i in 0..n {
            inst.push(
                format!("j{i}"),
                rng.gen_range(1..=10),
                rng.gen_range(0..=10),
                rng.gen_range(0..=20),
            );
        }
        inst
    }

    /// Best early weight over every processing order, by brute force.
    fn best_over_permutations(inst: &Instance<u64>) -> u64 {
        (0..inst.len())
            .permutations(inst.len())
            .map(|order| evaluate(inst, &Schedule { order }).unwrap().w_early)
            .max()
            .unwrap_or(0)
    }

    /// Best early weight over every feasible early set.
    fn best_over_feasible_sets(inst: &Instance<u64>) -> u64 {
        let n = inst.len();
        let mut best = 0;
        for mask in 0u32..(1 << n) {
            let ids: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            if early_set_feasible(inst, &ids).unwrap() {
                let w: u64 = ids.iter().map(|&i| inst.job(i).w).sum();
                best = best.max(w);
            }
        }
        best
    }

    #[test]
    fn evaluate_two_job_example() {
        let inst = word_instance(&[(2, 5, 2), (2, 7, 3)]);
        let res = evaluate(&inst, &Schedule { order: vec![0, 1] }).unwrap();
        assert_eq!(res.completion, vec![2, 4]);
        assert_eq!(res.early, vec![true, false]);
        assert_eq!(res.p_early, 2);
        assert_eq!(res.w_early, 5);
        assert_eq!(res.w_tardy, 7);
    }

    #[test]
    fn completion_exactly_at_due_date_is_early() {
        let inst = word_instance(&[(4, 1, 4)]);
        let res = evaluate(&inst, &Schedule { order: vec![0] }).unwrap();
        assert!(res.early[0]);
        let tight = word_instance(&[(5, 1, 4)]);
        let res = evaluate(&tight, &Schedule { order: vec![0] }).unwrap();
        assert!(!res.early[0]);
    }

    #[test]
    fn empty_instance_evaluates_to_zeros() {
        let inst = word_instance(&[]);
        let res = evaluate(&inst, &Schedule { order: vec![] }).unwrap();
        assert_eq!(res.w_early, 0);
        assert_eq!(res.w_tardy, 0);
        assert_eq!(res.p_early, 0);
    }

    #[test]
    fn evaluate_rejects_non_permutations() {
        let inst = word_instance(&[(1, 1, 1), (1, 1, 1)]);
        for order in [vec![0], vec![0, 0], vec![0, 2]] {
            assert_eq!(
                evaluate(&inst, &Schedule { order }).unwrap_err(),
                SchedError::NotAPermutation
            );
        }
    }

    #[test]
    fn early_and_tardy_weight_partition_the_total() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let inst = random_instance(&mut rng, 8);
            let mut order: Vec<usize> = (0..inst.len()).collect();
            for i in (1..order.len()).rev() {
                order.swap(i, rng.gen_range(0..=i));
            }
            let res = evaluate(&inst, &Schedule { order }).unwrap();
            assert_eq!(
                res.w_early + res.w_tardy,
                inst.total_weight().unwrap()
            );
        }
    }

    #[test]
    fn edd_order_is_sorted_stable_and_idempotent() {
        let inst = word_instance(&[(1, 1, 7), (1, 1, 3), (1, 1, 7), (1, 1, 1)]);
        let sched = edd_order(&inst);
        assert_eq!(sched.order, vec![3, 1, 0, 2]);
        let dues: Vec<u64> = sched.order.iter().map(|&i| inst.job(i).d).collect();
        assert!(dues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn is_edd_accepts_witness_shape_and_rejects_others() {
        let inst = word_instance(&[(1, 1, 5), (1, 1, 2), (1, 1, 9)]);
        let early = vec![true, true, false];
        assert!(is_edd(&inst, &Schedule { order: vec![1, 0, 2] }, &early));
        // Early jobs out of due-date order.
        assert!(!is_edd(&inst, &Schedule { order: vec![0, 1, 2] }, &early));
        // Tardy job interleaved before an early one.
        assert!(!is_edd(&inst, &Schedule { order: vec![1, 2, 0] }, &early));
    }

    #[test]
    fn feasibility_boundary_cases() {
        let inst = word_instance(&[(3, 1, 3), (3, 1, 0)]);
        assert!(early_set_feasible(&inst, &[]).unwrap());
        assert!(early_set_feasible(&inst, &[0]).unwrap());
        assert!(!early_set_feasible(&inst, &[1]).unwrap());
        assert_eq!(
            early_set_feasible(&inst, &[0, 0]).unwrap_err(),
            SchedError::DuplicateJobId(0)
        );
        assert_eq!(
            early_set_feasible(&inst, &[5]).unwrap_err(),
            SchedError::UnknownJobId(5)
        );
    }

    #[test]
    fn best_feasible_set_matches_best_permutation() {
        // The exchange argument behind processing early jobs in due-date
        // order: restricting attention to feasible early sets loses nothing.
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..200 {
            let inst = random_instance(&mut rng, 7);
            assert_eq!(
                best_over_feasible_sets(&inst),
                best_over_permutations(&inst),
            );
        }
    }

    #[test]
    fn feasibility_ignores_tie_order_among_equal_due_dates() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..500 {
            let n = rng.gen_range(1..=8);
            let mut inst = Instance::new(());
            for i in 0..n {
                let d = *[4u64, 9, 9, 9, 14].get(rng.gen_range(0..5)).unwrap();
                inst.push(format!("j{i}"), rng.gen_range(1..=5), 1, d);
            }
            let ids: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.6)).collect();
            let forward = early_set_feasible(&inst, &ids).unwrap();
            // Independent check with the opposite tie order: sort by due date
            // then reversed id, and test prefixes the same way.
            let mut alt = ids.clone();
            alt.sort_by(|&a, &b| {
                inst.job(a)
                    .d
                    .cmp(&inst.job(b).d)
                    .then(b.cmp(&a))
            });
            let mut clock = 0u64;
            let mut alt_ok = true;
            for &id in &alt {
                clock += inst.job(id).p;
                if clock > inst.job(id).d {
                    alt_ok = false;
                    break;
                }
            }
            assert_eq!(forward, alt_ok, "tie order changed feasibility");
        }
    }

    #[test]
    fn witness_schedule_fronts_the_early_set() {
        let inst = word_instance(&[(2, 3, 9), (2, 4, 2), (2, 5, 20), (2, 1, 1)]);
        let sched = witness_to_schedule(&inst, &[0, 1]).unwrap();
        assert_eq!(sched.order, vec![1, 0, 2, 3]);
        let res = evaluate(&inst, &sched).unwrap();
        assert!(res.early[0] && res.early[1]);
        assert!(is_edd(&inst, &sched, &[true, true, false, false]));

        assert_eq!(
            witness_to_schedule(&inst, &[3, 1]).unwrap_err(),
            SchedError::InfeasibleEarlySet
        );
    }
}
