//! Dominance-pruned dynamic programming over (early processing time,
//! early weight) pairs.
//!
//! Jobs are scanned in due-date order.  A state records the total
//! processing time and total weight of one feasible early prefix; a state
//! is kept only if no other state finishes no later *and* weighs no less.
//! The surviving states form a front with strictly increasing time and
//! strictly increasing weight, and the heaviest one is the optimum.
//!
//! Two optional twists:
//!
//! * **Batch compression** groups identical jobs (same processing time,
//!   weight, and due date) and decides only how many of each batch to keep.
//!   Which copies are kept is immaterial, so this is lossless.
//! * **A reachability cutoff** drops states that cannot reach a caller
//!   supplied target weight even if every remaining job ends up early.
//!   With a cutoff the run answers the decision "is the optimum at least
//!   the target?" exactly, and reports the true optimum whenever the
//!   answer is yes; it stays silent (no outcome) when the answer is no.

use super::{SolveError, SolveResult, SolveStats};
use crate::sched::{Instance, SchedError, Value};

/// Upper bound on examined states before a run gives up.
pub const DEFAULT_STATE_BUDGET: u64 = 10_000_000;

/// Knobs for [`solve_pareto_with`].
#[derive(Debug, Clone)]
pub struct ParetoOptions<V: Value> {
    /// Abort with [`SolveError::StateBudgetExceeded`] once this many
    /// candidate states have been examined.
    pub budget: u64,
    /// Batch identical jobs (lossless; on by default).
    pub compress: bool,
    /// Keep only states that can still reach this weight.
    pub cutoff: Option<V>,
}

impl<V: Value> Default for ParetoOptions<V> {
    fn default() -> Self {
        ParetoOptions {
            budget: DEFAULT_STATE_BUDGET,
            compress: true,
            cutoff: None,
        }
    }
}

/// One nondominated (time, weight) pair of the final front.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrontState<V: Value> {
    pub p_early: V,
    pub w_early: V,
}

/// The final nondominated front, ordered by increasing time.
#[derive(Debug, Clone)]
pub struct ParetoFront<V: Value> {
    pub states: Vec<FrontState<V>>,
}

/// Result of a front computation.
///
/// `outcome` is `None` exactly when a cutoff was set and no feasible early
/// set reaches it; without a cutoff there is always an outcome (the empty
/// early set is feasible).
#[derive(Debug, Clone)]
pub struct ParetoRun<V: Value> {
    pub outcome: Option<SolveResult<V>>,
    pub front: ParetoFront<V>,
}

/// A batch of interchangeable jobs, scanned as one unit.
struct Group<V> {
    ids: Vec<usize>,
    p: V,
    w: V,
    d: V,
}

/// Decision-trail node: `taken` copies of `group` on top of `parent`.
struct Node {
    parent: u32,
    group: u32,
    taken: u32,
}

/// A live front slot plus the trail needed to rebuild its early set.
struct Slot<V> {
    p: V,
    w: V,
    node: u32,
}

struct Candidate<V> {
    p: V,
    w: V,
    base: u32,
    taken: u32,
}

const ROOT: u32 = 0;

fn build_groups<V: Value>(inst: &Instance<V>, compress: bool) -> Vec<Group<V>> {
    let mut ids: Vec<usize> = (0..inst.len()).collect();
    if compress {
        // Sorting ties by (p, w) lets identical jobs sit next to each other;
        // any due-date order is equally valid for the prefix test.
        ids.sort_by(|&a, &b| {
            let (ja, jb) = (inst.job(a), inst.job(b));
            ja.d.cmp(&jb.d)
                .then(ja.p.cmp(&jb.p))
                .then(ja.w.cmp(&jb.w))
                .then(a.cmp(&b))
        });
    } else {
        ids.sort_by(|&a, &b| inst.job(a).d.cmp(&inst.job(b).d).then(a.cmp(&b)));
    }
    let mut groups: Vec<Group<V>> = Vec::new();
    for id in ids {
        let job = inst.job(id);
        let same = compress
            && groups.last().is_some_and(|g: &Group<V>| {
                g.p == job.p && g.w == job.w && g.d == job.d
            });
        if same {
            groups.last_mut().unwrap().ids.push(id);
        } else {
            groups.push(Group {
                ids: vec![id],
                p: job.p.clone(),
                w: job.w.clone(),
                d: job.d.clone(),
            });
        }
    }
    groups
}

/// Admissible reachability test for cutoff pruning: bounds the final weight
/// of any completion of the state `(p, w)` against the groups still to come.
/// Each group is bounded independently by how many of its copies fit under
/// the group's due date on top of `p` alone; ignoring interference between
/// future groups only overestimates, so dropping states that fail the test
/// never loses a completion that reaches `target`.
fn can_still_reach<V: Value>(w: &V, p: &V, rest: &[Group<V>], target: &V) -> bool {
    let mut bound = w.clone();
    if bound >= *target {
        return true;
    }
    for group in rest {
        let mut load = p.clone();
        for _ in 0..group.ids.len() {
            let Some(next) = load.checked_add(&group.p) else {
                break;
            };
            if next > group.d {
                break;
            }
            load = next;
            let Some(more) = bound.checked_add(&group.w) else {
                // Unrepresentable bound: nothing can be ruled out.
                return true;
            };
            bound = more;
        }
        if bound >= *target {
            return true;
        }
    }
    false
}

/// Total weight still to come after each group, for cutoff pruning.
/// `None` disables pruning (the running sum overflowed, so nothing
/// can be ruled out).
fn remaining_weight<V: Value>(groups: &[Group<V>], zero: &V) -> Vec<Option<V>> {
    let mut rem = vec![None; groups.len()];
    let mut acc = Some(zero.clone());
    for gi in (0..groups.len()).rev() {
        rem[gi] = acc.clone();
        if let Some(a) = acc {
            let mut sum = Some(a);
            for _ in 0..groups[gi].ids.len() {
                sum = sum.and_then(|s| s.checked_add(&groups[gi].w));
            }
            acc = sum;
        }
    }
    rem
}

/// Runs the front computation with explicit options.
pub fn solve_pareto_with<V: Value>(
    inst: &Instance<V>,
    options: &ParetoOptions<V>,
) -> Result<ParetoRun<V>, SolveError> {
    let zero = inst.zero();
    let groups = build_groups(inst, options.compress);
    let rem_after = remaining_weight(&groups, &zero);

    let mut arena = vec![Node {
        parent: ROOT,
        group: 0,
        taken: 0,
    }];
    let mut front = vec![Slot {
        p: zero.clone(),
        w: zero.clone(),
        node: ROOT,
    }];
    let mut examined = 0u64;
    let mut front_peak = 1usize;

    for (gi, group) in groups.iter().enumerate() {
        let mut candidates: Vec<Candidate<V>> = Vec::with_capacity(front.len() * 2);
        for slot in &front {
            examined += 1;
            if examined > options.budget {
                return Err(SolveError::StateBudgetExceeded(options.budget));
            }
            candidates.push(Candidate {
                p: slot.p.clone(),
                w: slot.w.clone(),
                base: slot.node,
                taken: 0,
            });
        }
        // Incrementally extend each base slot by one more copy per round;
        // a slot drops out once the batch's shared due date is overrun
        // (later rounds only finish later, so it never comes back).
        let mut acc: Vec<(V, V, u32)> = front
            .iter()
            .map(|s| (s.p.clone(), s.w.clone(), s.node))
            .collect();
        for taken in 1..=group.ids.len() as u32 {
            let mut next = Vec::with_capacity(acc.len());
            for (p, w, base) in acc {
                let Some(np) = p.checked_add(&group.p) else {
                    continue;
                };
                if np > group.d {
                    continue;
                }
                let nw = w
                    .checked_add(&group.w)
                    .ok_or(SchedError::ValueOverflow)?;
                examined += 1;
                if examined > options.budget {
                    return Err(SolveError::StateBudgetExceeded(options.budget));
                }
                candidates.push(Candidate {
                    p: np.clone(),
                    w: nw.clone(),
                    base,
                    taken,
                });
                next.push((np, nw, base));
            }
            if next.is_empty() {
                break;
            }
            acc = next;
        }

        // Stable sort: time ascending, weight descending; on full ties the
        // earliest pushed candidate (fewest copies taken) wins.
        candidates.sort_by(|a, b| a.p.cmp(&b.p).then_with(|| b.w.cmp(&a.w)));

        let mut new_front: Vec<Slot<V>> = Vec::new();
        for cand in candidates {
            if let (Some(target), Some(rem)) = (options.cutoff.as_ref(), rem_after[gi].as_ref()) {
                if let Some(reach) = cand.w.checked_add(rem) {
                    if reach < *target {
                        continue;
                    }
                }
            }
            let keep = new_front
                .last()
                .is_none_or(|s| cand.w > s.w);
            if keep {
                let node = if cand.taken == 0 {
                    cand.base
                } else {
                    arena.push(Node {
                        parent: cand.base,
                        group: gi as u32,
                        taken: cand.taken,
                    });
                    (arena.len() - 1) as u32
                };
                new_front.push(Slot {
                    p: cand.p,
                    w: cand.w,
                    node,
                });
            }
        }
        front = new_front;
        if let Some(target) = options.cutoff.as_ref() {
            let rest = &groups[gi + 1..];
            front.retain(|slot| can_still_reach(&slot.w, &slot.p, rest, target));
        }
        front_peak = front_peak.max(front.len());
        if front.is_empty() {
            break;
        }
    }

    if let Some(target) = options.cutoff.as_ref() {
        // The per-group filter already enforces this when any group exists;
        // this also covers the empty instance.
        front.retain(|s| s.w >= *target);
    }
    let stats = SolveStats {
        states_created: examined,
        front_peak,
    };
    let outcome = front.last().map(|best| {
        let mut ids: Vec<usize> = Vec::new();
        let mut node = best.node;
        while node != ROOT {
            let entry = &arena[node as usize];
            let group = &groups[entry.group as usize];
            ids.extend_from_slice(&group.ids[..entry.taken as usize]);
            node = entry.parent;
        }
        ids.sort_unstable();
        SolveResult {
            optimum_early_weight: best.w.clone(),
            witness_early_set: ids,
            stats: stats.clone(),
        }
    });
    let states = front
        .into_iter()
        .map(|s| FrontState {
            p_early: s.p,
            w_early: s.w,
        })
        .collect();
    Ok(ParetoRun {
        outcome,
        front: ParetoFront { states },
    })
}

/// Runs with default options (no cutoff), returning the optimum directly.
pub fn solve_pareto<V: Value>(inst: &Instance<V>) -> Result<SolveResult<V>, SolveError> {
    let run = solve_pareto_with(inst, &ParetoOptions::default())?;
    Ok(run
        .outcome
        .expect("a run without a cutoff always has an outcome"))
}
