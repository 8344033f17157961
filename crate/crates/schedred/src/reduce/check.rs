//! Structural audit of a built instance, independent of any selection.

use super::{ReductionOutput, VariantKind};
use crate::report::{Check, Report};
use itertools::Itertools;

/// Audits invariants every correctly built instance satisfies: job count,
/// distinct-value tallies on the bounded side, deadline layering, gadget
/// shapes, counting-digit discipline, and carry-free closure of job sums.
pub fn structure_check(red: &ReductionOutput) -> Report {
    let mut report = Report::new();
    let k = red.classes() as usize;
    let n = red.class_size() as usize;
    let m = red.edges_per_pair() as usize;
    let b = red.retained_pairs().len();
    let jobs = red.instance.jobs();

    let expected_jobs = (2 * n - 1) * k + 4 * b * (m + n);
    report.push(
        Check::new("job-count", jobs.len() == expected_jobs)
            .detail("measured", jobs.len())
            .detail("expected", expected_jobs),
    );

    let mut touched = vec![false; k + 1];
    for &(a, bb) in red.retained_pairs() {
        touched[a as usize] = true;
        touched[bb as usize] = true;
    }

    let distinct_p = jobs
        .iter()
        .map(|j| j.p.digits().to_vec())
        .sorted()
        .dedup()
        .count();
    let distinct_w = jobs
        .iter()
        .map(|j| j.w.digits().to_vec())
        .sorted()
        .dedup()
        .count();
    // Size-1 classes have no plain or negated copies at all; untouched
    // classes carry no pair marks, so plain and negated copies coincide.
    let vertex_p: usize = (1..=k)
        .map(|i| if n == 1 || !touched[i] { 1 } else { 2 })
        .sum();
    let vertex_w: usize = (1..=k)
        .map(|i| match (n == 1, touched[i]) {
            (true, _) => 1,
            (false, false) => 2,
            (false, true) => 3,
        })
        .sum();
    match red.kind {
        VariantKind::PSharp => {
            let expected = vertex_p + 6 * b;
            report.push(
                Check::new("distinct-p", distinct_p == expected)
                    .detail("measured", distinct_p)
                    .detail("expected", expected)
                    .detail("bounded-side", "yes"),
            );
            report.push(
                Check::new("distinct-w", true)
                    .detail("measured", distinct_w)
                    .detail("bounded-side", "no"),
            );
        }
        VariantKind::WSharp => {
            let expected = vertex_w + 8 * b;
            report.push(
                Check::new("distinct-p", true)
                    .detail("measured", distinct_p)
                    .detail("bounded-side", "no"),
            );
            report.push(
                Check::new("distinct-w", distinct_w == expected)
                    .detail("measured", distinct_w)
                    .detail("expected", expected)
                    .detail("bounded-side", "yes"),
            );
        }
    }

    // Gadget arity: the index must tile the job list exactly.
    let mut arity = red.index.star.len() == k
        && red.index.pos.len() == k
        && red.index.neg.len() == k
        && red.index.large.len() == b
        && red.index.small.len() == b;
    for i in 0..k.min(red.index.pos.len()) {
        arity &= red.index.pos[i].len() == n - 1 && red.index.neg[i].len() == n - 1;
    }
    for gadget in red.index.large.iter().chain(&red.index.small) {
        arity &= gadget.hit.len() == m
            && gadget.miss.len() == m
            && gadget.fill_hi.len() == n
            && gadget.fill_lo.len() == n;
    }
    let indexed = (2 * n - 1) * red.index.star.len()
        + red
            .index
            .large
            .iter()
            .chain(&red.index.small)
            .map(|g| g.hit.len() + g.miss.len() + g.fill_hi.len() + g.fill_lo.len())
            .sum::<usize>();
    arity &= indexed == jobs.len();
    report.push(Check::new("gadget-arity", arity).detail("indexed-jobs", indexed));

    // Counting digit discipline: processing times never use it, exactly the
    // comparison jobs that encode a hit weigh one unit, and the only
    // deadlines touching it belong to the lowest gadget, whose one-digit
    // slack window is the counting digit itself.
    let p_clean = jobs.iter().all(|j| j.p.counting_digit() == 0);
    let unit_carriers = jobs.iter().filter(|j| j.w.counting_digit() == 1).count();
    let w_clean = jobs.iter().all(|j| j.w.counting_digit() <= 1);
    let lowest = &red.index.small[0];
    let mut in_lowest = vec![false; jobs.len()];
    for &id in lowest
        .hit
        .iter()
        .chain(&lowest.miss)
        .chain(&lowest.fill_hi)
        .chain(&lowest.fill_lo)
    {
        in_lowest[id] = true;
    }
    let d_clean = jobs
        .iter()
        .enumerate()
        .all(|(id, j)| j.d.counting_digit() == u32::from(in_lowest[id]));
    report.push(
        Check::new(
            "counting-digit-use",
            p_clean && w_clean && d_clean && unit_carriers == 2 * b * m,
        )
        .detail("unit-carriers", unit_carriers)
        .detail("expected-carriers", 2 * b * m),
    );

    // Deadline layering.  Every class shares a single deadline, strictly
    // shrinking along class numbers.  Gadgets run strictly one after another
    // (all vertex jobs, then the at-least gadgets from the highest block
    // down, then the at-most gadgets likewise), and each gadget is
    // internally ordered with its fillers tied to the boundary slot: the
    // bounded-p build steps its slot deadlines up, the bounded-w build
    // steps them down.
    let mut layering = true;
    for i in 0..k {
        let d0 = &jobs[red.index.star[i]].d;
        layering &= red.index.pos[i]
            .iter()
            .chain(&red.index.neg[i])
            .all(|&id| jobs[id].d == *d0);
        if i + 1 < k {
            layering &= *d0 > jobs[red.index.star[i + 1]].d;
        }
    }
    for gadget in red.index.large.iter().chain(&red.index.small) {
        for slot in 0..m {
            layering &= jobs[gadget.hit[slot]].d <= jobs[gadget.miss[slot]].d;
            if slot + 1 < m {
                let (h0, h1) = (&jobs[gadget.hit[slot]].d, &jobs[gadget.hit[slot + 1]].d);
                let (m0, m1) = (&jobs[gadget.miss[slot]].d, &jobs[gadget.miss[slot + 1]].d);
                match red.kind {
                    VariantKind::PSharp => layering &= h0 < h1 && m0 < m1,
                    VariantKind::WSharp => layering &= h0 > h1 && m0 > m1,
                }
            }
        }
        let tied_slot = match red.kind {
            VariantKind::PSharp => m - 1,
            VariantKind::WSharp => 0,
        };
        let fill_d = &jobs[gadget.fill_hi[0]].d;
        layering &= gadget
            .fill_hi
            .iter()
            .chain(&gadget.fill_lo)
            .all(|&id| jobs[id].d == *fill_d);
        layering &= *fill_d == jobs[gadget.miss[tied_slot]].d;
    }
    let gadget_span = |gadget: &super::PairGadget| {
        let ds = gadget
            .hit
            .iter()
            .chain(&gadget.miss)
            .chain(&gadget.fill_hi)
            .chain(&gadget.fill_lo)
            .map(|&id| &jobs[id].d);
        (ds.clone().min().unwrap(), ds.max().unwrap())
    };
    let max_vertex = red.index.star.iter().map(|&id| &jobs[id].d).max().unwrap();
    let run_order = red
        .index
        .large
        .iter()
        .rev()
        .chain(red.index.small.iter().rev());
    let mut previous_max = max_vertex;
    for gadget in run_order {
        let (min_d, max_d) = gadget_span(gadget);
        layering &= previous_max < min_d;
        previous_max = max_d;
    }
    report.push(Check::new("deadline-layering", layering));

    // Threshold shape: the counting digit carries one unit per possible hit
    // and the rest is exactly the sum of the three weight totals.
    let base = red
        .constants
        .w_v()
        .add_nocarry(red.constants.w_l())
        .and_then(|v| v.add_nocarry(red.constants.w_s()));
    let threshold_ok = match base {
        Ok(base) => {
            red.threshold.counting_digit() == ((m + 1) * b) as u32
                && red.threshold.digits()[1..] == base.digits()[1..]
                && base.counting_digit() == 0
        }
        Err(_) => false,
    };
    report.push(
        Check::new("threshold-shape", threshold_ok)
            .detail("counting-digit", red.threshold.counting_digit())
            .detail("expected", (m + 1) * b),
    );

    // Carry-free closure: any two job values from the families that ever
    // meet in an evaluation add without carries.
    let mut clean = true;
    'outer: for a in jobs {
        for other in jobs {
            if a.p.add_nocarry(&other.p).is_err()
                || a.w.add_nocarry(&other.w).is_err()
                || a.p.add_nocarry(&other.d).is_err()
                || a.w.add_nocarry(&other.d).is_err()
                || a.p.add_nocarry(&other.w).is_err()
            {
                clean = false;
                break 'outer;
            }
        }
    }
    report.push(Check::new("carry-free-sums", clean).detail("pairs", jobs.len() * jobs.len()));

    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{figure1, random_nice, PatternGraph};
    use crate::reduce::{build, build_eth, build_w};
    use crate::sched::Instance;

    #[test]
    fn fixture_passes_and_reports_the_expected_tallies() {
        let red = build(&figure1()).unwrap();
        let report = structure_check(&red);
        assert!(report.all_passed(), "{}", report.lines());
        let distinct = report
            .checks
            .iter()
            .find(|c| c.name == "distinct-p")
            .unwrap();
        assert!(distinct.line().contains("measured=24"));

        let red_w = build_w(&figure1()).unwrap();
        let report_w = structure_check(&red_w);
        assert!(report_w.all_passed(), "{}", report_w.lines());
        let distinct_w = report_w
            .checks
            .iter()
            .find(|c| c.name == "distinct-w")
            .unwrap();
        assert!(distinct_w.line().contains("measured=33"));
    }

    #[test]
    fn random_builds_pass_across_shapes_and_variants() {
        let path = PatternGraph::path(3);
        for seed in 0..8u64 {
            let k = 2 + (seed % 3) as u32;
            let n = 1 + (seed % 4) as u32;
            let m = (1 + (seed % 3) as u32).min(n * n);
            let g = random_nice(k, n, m, seed + 400).unwrap();
            for red in [build(&g).unwrap(), build_w(&g).unwrap()] {
                let report = structure_check(&red);
                assert!(report.all_passed(), "k={k} n={n} m={m}\n{}", report.lines());
            }
            if k == 3 {
                for kind in [VariantKind::PSharp, VariantKind::WSharp] {
                    let red = build_eth(&g, &path, kind).unwrap();
                    let report = structure_check(&red);
                    assert!(report.all_passed(), "{}", report.lines());
                }
            }
        }
    }

    #[test]
    fn isolated_classes_shed_their_negated_value() {
        // A pattern with a single edge leaves class 3 untouched.
        let g = random_nice(3, 2, 2, 77).unwrap();
        let h = PatternGraph::new(3, vec![(1, 2)]).unwrap();
        let red = build_eth(&g, &h, VariantKind::PSharp).unwrap();
        let report = structure_check(&red);
        assert!(report.all_passed(), "{}", report.lines());
        // 2k - 1 + 6 = 11 distinct processing times.
        let line = report
            .checks
            .iter()
            .find(|c| c.name == "distinct-p")
            .unwrap()
            .line();
        assert!(line.contains("measured=11"), "{line}");
    }

    #[test]
    fn tampering_with_a_processing_time_is_caught() {
        let mut red = build(&figure1()).unwrap();
        let bumped = red.index.large[0].hit[0];
        let mut inst = Instance::new(red.layout().clone());
        for (id, job) in red.instance.jobs().iter().enumerate() {
            let p = if id == bumped {
                job.p.add_nocarry(red.constants.unit()).unwrap()
            } else {
                job.p.clone()
            };
            inst.push(job.tag.clone(), p, job.w.clone(), job.d.clone());
        }
        red.instance = inst;
        let report = structure_check(&red);
        assert!(!report.all_passed());
        assert!(report
            .checks
            .iter()
            .any(|c| c.name == "distinct-p" && !c.passed));
        assert!(report
            .checks
            .iter()
            .any(|c| c.name == "counting-digit-use" && !c.passed));
    }

    #[test]
    fn report_lines_name_every_check_once() {
        let red = build(&figure1()).unwrap();
        let report = structure_check(&red);
        let text = report.lines();
        for name in [
            "job-count",
            "distinct-p",
            "distinct-w",
            "gadget-arity",
            "counting-digit-use",
            "deadline-layering",
            "threshold-shape",
            "carry-free-sums",
        ] {
            assert_eq!(
                text.matches(&format!("check={name} ")).count()
                    + text.matches(&format!("check={name}\n")).count()
                    + usize::from(text.ends_with(&format!("check={name}"))),
                1,
                "{name} in\n{text}"
            );
        }
    }
}
