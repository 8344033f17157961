//! Assembles the job list of a construction, gadget by gadget.

use super::{
    Constants, GadgetIndex, PairGadget, ReduceError, ReductionOutput, VariantKind,
};
use crate::blockint::{all_pairs, choose_radix, BlockInt, BlockLayout};
use crate::graphs::{is_nice, KPartiteGraph, PatternGraph};
use crate::sched::Instance;

/// Full construction bounding the number of distinct processing times.
pub fn build(g: &KPartiteGraph) -> Result<ReductionOutput, ReduceError> {
    build_core(g, None, VariantKind::PSharp)
}

/// Full construction bounding the number of distinct weights.
pub fn build_w(g: &KPartiteGraph) -> Result<ReductionOutput, ReduceError> {
    build_core(g, None, VariantKind::WSharp)
}

/// Pattern-restricted construction: gadgets exist only for pattern edges, so
/// adjacency is demanded only there (subgraph-isomorphism style decisions).
pub fn build_eth(
    g: &KPartiteGraph,
    h: &PatternGraph,
    kind: VariantKind,
) -> Result<ReductionOutput, ReduceError> {
    if g.classes() < 3 {
        return Err(ReduceError::BadPattern(format!(
            "pattern builds need at least 3 classes, got {}",
            g.classes()
        )));
    }
    if h.classes() != g.classes() {
        return Err(ReduceError::BadPattern(format!(
            "pattern covers {} classes but the graph has {}",
            h.classes(),
            g.classes()
        )));
    }
    build_core(g, Some(h.clone()), kind)
}

fn build_core(
    g: &KPartiteGraph,
    pattern: Option<PatternGraph>,
    kind: VariantKind,
) -> Result<ReductionOutput, ReduceError> {
    if !is_nice(g) {
        return Err(ReduceError::NotNice);
    }
    let k = g.classes();
    let n = g.class_size(1);
    let pairs = match &pattern {
        Some(h) => h.edges().to_vec(),
        None => all_pairs(k),
    };
    if pairs.is_empty() {
        return Err(ReduceError::BadPattern("pattern has no edges".into()));
    }
    let m = g.pair_edges(pairs[0].0, pairs[0].1).len() as u32;
    let b = pairs.len();

    // Every class: 1 anchor + 2(n-1) copies.  Every retained pair: 2m edge
    // jobs + 2n fillers, twice (large and small).
    let job_count = (2 * n as usize - 1) * k as usize + 4 * b * (m as usize + n as usize);
    let radix = choose_radix(k, n, m, job_count);
    let layout = BlockLayout::new(k, m, radix, pairs.clone())?;
    let constants = Constants::new(layout.clone(), n, kind)?;
    let pow = |e: usize| BlockInt::pow(&layout, e);

    let mut inst: Instance<BlockInt> = Instance::new(layout.clone());
    let mut index = GadgetIndex::default();

    // Vertex selection gadgets, class by class.  All of a class's jobs share
    // one due date: room for exactly n of them after the later classes run.
    //
    // The slack window below each class's digit absorbs the mark mass the
    // selection loads into the pair blocks.  When the edge gadgets vary
    // their weights, every edge job's due date carries the block's top
    // digit, so the windows can span the whole sub-vertex range without
    // disturbing the order.  When the edge gadgets vary their processing
    // times instead, only the last-due slot of the top block carries the
    // top digit; class 1's window must then stop at the top block's
    // lowest rung, or class 1's due date would pass the early slots' and
    // they would run before class 1, their mark tests forgiven by a load
    // that is short the whole class-1 column.  The mark mass still fits
    // under the narrow window: it tops out at 2n per digit and the radix
    // dwarfs that.
    let below = pow(layout.below_vertex())?;
    let narrow = pow(layout.below_vertex() - m as usize + 1)?;
    for i in 1..=k {
        let window = if kind == VariantKind::WSharp && i == 1 {
            &narrow
        } else {
            &below
        };
        let d = constants.pv(i as usize - 1).add_nocarry(window)?;
        let p_pos = constants.x(i).add_nocarry(constants.l(i))?;
        let p_neg = constants.x(i).add_nocarry(constants.s(i))?;
        let mut w_star = p_pos.clone();
        w_star.accumulate_nocarry(constants.x(i), n)?;
        index
            .star
            .push(inst.push(format!("x*_{i}"), p_pos.clone(), w_star, d.clone()));
        let mut pos = Vec::with_capacity(n as usize - 1);
        let mut neg = Vec::with_capacity(n as usize - 1);
        for c in 1..n {
            pos.push(inst.push(format!("x_{i}#{c}"), p_pos.clone(), p_pos.clone(), d.clone()));
        }
        for c in 1..n {
            neg.push(inst.push(format!("!x_{i}#{c}"), p_neg.clone(), p_neg.clone(), d.clone()));
        }
        index.pos.push(pos);
        index.neg.push(neg);
    }

    // Edge gadgets.  One closure builds either side; the `small` flag picks
    // the block, the comparison direction, and the surrounding prefix terms.
    let push_gadget = |inst: &mut Instance<BlockInt>,
                       q: usize,
                       small: bool|
     -> Result<PairGadget, ReduceError> {
        let (a, bb) = pairs[q];
        let base = if small {
            layout.small_base(a, bb)
        } else {
            layout.large_base(a, bb)
        }
        .expect("pair is retained");
        let top = if small { constants.z(q) } else { constants.y(q) };
        let (kind_tag, fill_hi_tag, fill_lo_tag) = if small {
            ("z", "g1", "g0")
        } else {
            ("y", "f1", "f0")
        };

        // Everything this gadget's jobs must wait for: the vertex gadgets,
        // all earlier-due gadgets of the same family, all large gadgets if
        // this is a small one, plus a one-digit window for the slack the
        // vertex selection leaves in this very block.
        //
        // The window digit depends on the variant.  When the edge gadgets
        // vary their weights, every job in the next-due gadget carries its
        // own block's top digit, which sits above any window in this block,
        // so the window may sit one digit below the block.  When the edge
        // gadgets vary their processing times, the next-due gadget's early
        // slots only carry their low rungs; a window above those rungs would
        // put this gadget's last jobs after them, and their mark tests would
        // then be checked against a load that is missing this gadget's
        // filler mass — slack that no selection should get.  The window must
        // instead land exactly on the next block's lowest rung (`base - m`,
        // which is `base - 1` when each pair has a single edge slot), where
        // the next gadget's own mark digits break the tie in its favour.
        // The mass the window has to absorb — mark digits of all lower
        // blocks — still fits, because each digit carries at most 2n and the
        // radix dwarfs that.  The lowest block of all has only the counting
        // column below it, so its window saturates to a single unit there.
        let mut prefix = constants.pv(0).clone();
        if small {
            prefix = prefix
                .add_nocarry(constants.pl_total())?
                .add_nocarry(constants.ps_after(q))?;
        } else {
            prefix = prefix.add_nocarry(constants.pl_after(q))?;
        }
        let window = match kind {
            VariantKind::PSharp => base - 1,
            VariantKind::WSharp => base.saturating_sub(m as usize),
        };
        let prefix = prefix.add_nocarry(&pow(window)?)?;

        let mut hit = Vec::with_capacity(m as usize);
        let mut miss = Vec::with_capacity(m as usize);
        for slot in 1..=m {
            let (ea, eb) = g.pair_edges(a, bb)[slot as usize - 1];
            // How far into the gadget this slot's pair of jobs runs.
            let mut reach = prefix.clone();
            match kind {
                VariantKind::PSharp => reach.accumulate_nocarry(top, slot)?,
                VariantKind::WSharp => {
                    for done in slot..=m {
                        reach = reach.add_nocarry(&pow(base + m as usize + 2 - done as usize)?)?;
                    }
                }
            }
            // The hit job's deadline encodes the edge; a selection fits
            // under it exactly when the comparison succeeds.
            let (hi, lo) = if small { (n - ea, n - eb) } else { (ea, eb) };
            let mut d_hit = reach.clone();
            d_hit.accumulate_nocarry(&pow(base + 1)?, hi)?;
            d_hit.accumulate_nocarry(&pow(base)?, lo)?;
            let mut d_miss = reach;
            d_miss.accumulate_nocarry(&pow(base + 1)?, n)?;
            d_miss.accumulate_nocarry(&pow(base)?, n)?;

            // The varying side forms a ladder over digits base+2..=base+m+1,
            // one rung per slot: slot 1 gets the block's top digit, each
            // later slot one digit lower, the lowest rung one above the
            // filler digits.  The flat side puts the block's top value on
            // every twin.  This shape is what makes the gadget airtight.
            // Skipping a slot forfeits one copy of the top value on the
            // flat side (or the slot's unique rung when the ladder is the
            // weight side), which no other job in the instance can repay.
            // Taking both twins of a slot doubles a single digit of load:
            // under the suffix due dates of the few-weights variant that
            // digit is the largest one in the slot's own due date, so the
            // second twin is late no matter what was skipped earlier;
            // under the step-up due dates of the few-processing-times
            // variant the doubled top-digit count exceeds the step, so a
            // double is late unless a skip freed the room — and the skip
            // already lost an unrepayable weight rung.  Anchoring the
            // ladder one digit lower breaks all of this: the bottom rung
            // stops dominating the filler mass, and skipped slots become
            // repayable, letting sets cheat the mark comparisons.
            let rung = pow(base + m as usize + 2 - slot as usize)?;
            let (p_edge, w_miss) = match kind {
                VariantKind::PSharp => (top.clone(), rung),
                VariantKind::WSharp => (rung, top.clone()),
            };
            let w_hit = w_miss.add_nocarry(constants.unit())?;
            hit.push(inst.push(
                format!("{kind_tag}_{{{a},{bb}}}_{slot}"),
                p_edge.clone(),
                w_hit,
                d_hit,
            ));
            miss.push(inst.push(
                format!("!{kind_tag}_{{{a},{bb}}}_{slot}"),
                p_edge,
                w_miss,
                d_miss,
            ));
        }

        // Fillers run after all of the gadget's edge jobs.
        let mut d_fill = prefix;
        match kind {
            VariantKind::PSharp => d_fill.accumulate_nocarry(top, m)?,
            VariantKind::WSharp => {
                for done in 1..=m {
                    d_fill = d_fill.add_nocarry(&pow(base + 1 + done as usize)?)?;
                }
            }
        }
        d_fill.accumulate_nocarry(&pow(base + 1)?, n)?;
        d_fill.accumulate_nocarry(&pow(base)?, n)?;
        let mut fill_hi = Vec::with_capacity(n as usize);
        let mut fill_lo = Vec::with_capacity(n as usize);
        for c in 1..=n {
            let p = pow(base + 1)?;
            fill_hi.push(inst.push(
                format!("{fill_hi_tag}_{{{a},{bb}}}#{c}"),
                p.clone(),
                p,
                d_fill.clone(),
            ));
        }
        for c in 1..=n {
            let p = pow(base)?;
            fill_lo.push(inst.push(
                format!("{fill_lo_tag}_{{{a},{bb}}}#{c}"),
                p.clone(),
                p,
                d_fill.clone(),
            ));
        }
        Ok(PairGadget {
            pair: (a, bb),
            hit,
            miss,
            fill_hi,
            fill_lo,
        })
    };

    for q in 0..b {
        let gadget = push_gadget(&mut inst, q, false)?;
        index.large.push(gadget);
    }
    for q in 0..b {
        let gadget = push_gadget(&mut inst, q, true)?;
        index.small.push(gadget);
    }

    debug_assert_eq!(inst.len(), job_count);
    let threshold = constants.threshold().clone();
    Ok(ReductionOutput {
        instance: inst,
        threshold,
        constants,
        kind,
        pattern,
        index,
        graph: g.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{figure1, random_nice};
    use itertools::Itertools;

    fn distinct<'a>(values: impl Iterator<Item = &'a BlockInt>) -> usize {
        values.map(|v| v.digits().to_vec()).sorted().dedup().count()
    }

    #[test]
    fn fixture_build_matches_the_worked_example() {
        let red = build(&figure1()).unwrap();
        assert_eq!(red.instance.len(), 117);
        assert_eq!(red.layout().radix(), 508);
        assert_eq!(distinct(red.instance.jobs().iter().map(|j| &j.p)), 24);
        assert_eq!(red.threshold.counting_digit(), 15);
        // 21 vertex jobs (7 per class), then 48 + 48 edge-gadget jobs.
        let vertex_jobs = red
            .instance
            .jobs()
            .iter()
            .filter(|j| j.tag.contains('x'))
            .count();
        assert_eq!(vertex_jobs, 21);
        // Negated twins: n-1 per class plus one per edge job slot.
        assert_eq!(
            red.instance
                .jobs()
                .iter()
                .filter(|j| j.tag.starts_with('!'))
                .count(),
            9 + 12 + 12
        );
    }

    #[test]
    fn fixture_w_variant_swaps_the_distinct_side() {
        let red = build_w(&figure1()).unwrap();
        assert_eq!(red.instance.len(), 117);
        assert_eq!(distinct(red.instance.jobs().iter().map(|j| &j.w)), 33);
        // Processing times collapse to m+2 values per block plus 2 per class.
        assert_eq!(distinct(red.instance.jobs().iter().map(|j| &j.p)), 42);
        assert_eq!(red.threshold.counting_digit(), 15);
    }

    #[test]
    fn sample_job_characteristics_match_hand_derivation() {
        let red = build(&figure1()).unwrap();
        let layout = red.layout().clone();
        let jobs = red.instance.jobs();
        // x*_3: class digit plus large marks; weight five class digits.
        let star3 = &jobs[red.index.star[2]];
        assert_eq!(star3.tag, "x*_3");
        assert_eq!(star3.p.digit(layout.vertex_digit(3)), 1);
        assert_eq!(star3.w.digit(layout.vertex_digit(3)), 5);
        assert_eq!(star3.p.digit(layout.large_base(1, 3).unwrap()), 1);
        assert_eq!(star3.p.digit(layout.large_base(2, 3).unwrap()), 1);
        // Its due date: room for n = 4 class-3 jobs only.
        assert_eq!(star3.d.digit(layout.vertex_digit(3)), 4);
        assert_eq!(star3.d.digit(layout.vertex_digit(2)), 0);
        assert_eq!(star3.d.digit(layout.below_vertex()), 1);
        // y_{2,3}_1 encodes edge (1,4): due date digits (1,4) on the block.
        let y = &jobs[red.index.large[2].hit[0]];
        assert_eq!(y.tag, "y_{2,3}_1");
        let f = layout.large_base(2, 3).unwrap();
        assert_eq!(y.d.digit(f + 1), 1);
        assert_eq!(y.d.digit(f), 4);
        assert_eq!(y.d.digit(f + 5), 1);
        assert_eq!(y.d.digit(f - 1), 1, "one-digit slack window");
        assert_eq!(y.p.digit(f + 5), 1, "edge jobs cost the top digit");
        assert_eq!(y.w.digit(f + 5), 1, "first slot weighs a full block");
        assert_eq!(y.w.digit(f + 4), 0, "weight ladder skips nothing below");
        assert_eq!(y.w.counting_digit(), 1, "hit jobs carry the counting unit");
        let ny = &jobs[red.index.large[2].miss[0]];
        assert_eq!(ny.d.digit(f + 1), 4);
        assert_eq!(ny.d.digit(f), 4);
        assert_eq!(ny.w.counting_digit(), 0);
        // z_{2,3}_1 flips the encoding: n - 1, n - 4.
        let z = &jobs[red.index.small[2].hit[0]];
        let g = layout.small_base(2, 3).unwrap();
        assert_eq!(z.d.digit(g + 1), 3);
        assert_eq!(z.d.digit(g), 0);
        // Small gadgets wait for every large gadget.
        assert_eq!(z.d.digit(layout.large_base(1, 2).unwrap()), 4);
        // Fillers tie their gadget's last miss twin.
        let f1 = &jobs[red.index.large[2].fill_hi[0]];
        let last_miss = &jobs[red.index.large[2].miss[3]];
        assert_eq!(f1.d, last_miss.d);
    }

    #[test]
    fn pattern_build_drops_non_pattern_blocks() {
        let g = figure1();
        let path = PatternGraph::path(3);
        for kind in [VariantKind::PSharp, VariantKind::WSharp] {
            let red = build_eth(&g, &path, kind).unwrap();
            // 21 vertex + 2 pairs * 32.
            assert_eq!(red.instance.len(), 85);
            assert_eq!(red.retained_pairs(), &[(1, 2), (2, 3)]);
            assert_eq!(red.layout().digit_count(), 3 + 2 * 2 * 6 + 1);
            assert_eq!(red.threshold.counting_digit(), 10);
            if kind == VariantKind::PSharp {
                assert_eq!(distinct(red.instance.jobs().iter().map(|j| &j.p)), 18);
            } else {
                assert_eq!(distinct(red.instance.jobs().iter().map(|j| &j.w)), 25);
            }
        }
    }

    #[test]
    fn complete_pattern_build_is_bit_identical_to_the_full_build() {
        let g = random_nice(3, 3, 2, 99).unwrap();
        let full = build(&g).unwrap();
        let via_pattern = build_eth(&g, &PatternGraph::complete(3), VariantKind::PSharp).unwrap();
        assert_eq!(full.instance.len(), via_pattern.instance.len());
        for (a, b) in full.instance.jobs().iter().zip(via_pattern.instance.jobs()) {
            assert_eq!(a.tag, b.tag);
            assert_eq!(a.p, b.p);
            assert_eq!(a.w, b.w);
            assert_eq!(a.d, b.d);
        }
        assert_eq!(full.threshold, via_pattern.threshold);
        let full_w = build_w(&g).unwrap();
        let via_pattern_w =
            build_eth(&g, &PatternGraph::complete(3), VariantKind::WSharp).unwrap();
        assert_eq!(full_w.threshold, via_pattern_w.threshold);
        for (a, b) in full_w.instance.jobs().iter().zip(via_pattern_w.instance.jobs()) {
            assert_eq!((&a.p, &a.w, &a.d), (&b.p, &b.w, &b.d));
        }
    }

    #[test]
    fn bad_inputs_are_rejected() {
        let mut g = KPartiteGraph::new(vec![2, 2]).unwrap();
        g.add_edge(1, 2, 1, 1).unwrap();
        g.add_edge(1, 2, 2, 2).unwrap();
        // Nice, but two classes: full build fine, pattern build refused.
        assert!(build(&g).is_ok());
        let h = PatternGraph::complete(2);
        assert!(matches!(
            build_eth(&g, &h, VariantKind::PSharp),
            Err(ReduceError::BadPattern(_))
        ));

        let mut ragged = KPartiteGraph::new(vec![2, 3]).unwrap();
        ragged.add_edge(1, 2, 1, 1).unwrap();
        assert!(matches!(build(&ragged), Err(ReduceError::NotNice)));

        let g3 = random_nice(3, 2, 2, 5).unwrap();
        let h4 = PatternGraph::path(4);
        assert!(matches!(
            build_eth(&g3, &h4, VariantKind::PSharp),
            Err(ReduceError::BadPattern(_))
        ));
    }

    #[test]
    fn job_counts_and_radix_track_the_size_formula() {
        for (k, n, m, seed) in [(2u32, 2u32, 1u32, 1u64), (3, 2, 2, 2), (4, 3, 3, 3)] {
            let g = random_nice(k, n, m, seed).unwrap();
            let red = build(&g).unwrap();
            let b = (k * (k - 1) / 2) as usize;
            let expect = (2 * n as usize - 1) * k as usize + 4 * b * (m as usize + n as usize);
            assert_eq!(red.instance.len(), expect);
            assert_eq!(
                red.layout().radix(),
                4 * (expect as u32 + n + m + 2)
            );
        }
    }
}
