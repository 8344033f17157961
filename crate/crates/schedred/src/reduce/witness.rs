//! Canonical early sets for a vertex selection, with digit-level traces.
//!
//! For every selection (one vertex per class) the construction admits one
//! natural early set: fill each class's slot budget, then, per retained
//! pair, send the comparison jobs whose encoded edge is on the winning side
//! of the selection and pad with fillers.  The counting digit of its total
//! early weight then counts exactly the comparison jobs that hit, which is
//! maximal precisely when every retained pair holds the selected edge.

use super::{ReduceError, ReductionOutput};
use crate::blockint::BlockInt;
use crate::sched::{early_set_feasible, evaluate, witness_to_schedule};

/// Lexicographic `<=` on vertex pairs: first coordinates decide, ties fall
/// through to the second.
pub fn lex_le(a: (u32, u32), b: (u32, u32)) -> bool {
    a.0 < b.0 || (a.0 == b.0 && a.1 <= b.1)
}

/// Number of listed edges lexicographically at or above the selected pair.
pub fn count_ge(sel: (u32, u32), edges: &[(u32, u32)]) -> u32 {
    edges.iter().filter(|&&e| lex_le(sel, e)).count() as u32
}

/// Number of listed edges lexicographically at or below the selected pair.
pub fn count_le(sel: (u32, u32), edges: &[(u32, u32)]) -> u32 {
    edges.iter().filter(|&&e| lex_le(e, sel)).count() as u32
}

/// Running totals after one gadget group of the canonical early set.
#[derive(Debug, Clone)]
pub struct SegmentTrace {
    /// Which group this row closes ("vertex", "large(2,3)", ...).
    pub label: String,
    /// Total processing of the early jobs up to and including the group.
    pub p_cum: BlockInt,
    /// Total weight of the early jobs up to and including the group.
    pub w_cum: BlockInt,
}

/// The canonical early set for one selection.
#[derive(Debug, Clone)]
pub struct Witness {
    /// Job ids of the early set, ascending.
    pub early: Vec<usize>,
    /// Early weight the set must achieve, built from the weight totals plus
    /// one counting unit per comparison hit.
    pub predicted: BlockInt,
    /// Comparison jobs that hit across all retained pairs.
    pub counted_units: u32,
    /// Group-by-group totals in processing order.
    pub segments: Vec<SegmentTrace>,
}

/// Builds the canonical early set for `selection` (class i picks vertex
/// number `selection[i-1]`, 1-based).
pub fn witness(red: &ReductionOutput, selection: &[u32]) -> Result<Witness, ReduceError> {
    let k = red.classes();
    let n = red.class_size();
    if selection.len() != k as usize {
        return Err(ReduceError::BadSelection(format!(
            "selection names {} classes, instance has {k}",
            selection.len()
        )));
    }
    if let Some(&v) = selection.iter().find(|&&v| v == 0 || v > n) {
        return Err(ReduceError::BadSelection(format!(
            "vertex number {v} outside 1..={n}"
        )));
    }

    let inst = &red.instance;
    let cons = &red.constants;
    let layout = red.layout().clone();
    let mut early: Vec<usize> = Vec::new();
    let mut segments: Vec<SegmentTrace> = Vec::new();
    let mut p_cum = BlockInt::zero(&layout);
    let mut w_cum = BlockInt::zero(&layout);
    let mut push_group =
        |label: String, ids: &[usize], early: &mut Vec<usize>| -> Result<(), ReduceError> {
            for &id in ids {
                p_cum = p_cum.add_nocarry(&inst.job(id).p)?;
                w_cum = w_cum.add_nocarry(&inst.job(id).w)?;
            }
            early.extend_from_slice(ids);
            segments.push(SegmentTrace {
                label,
                p_cum: p_cum.clone(),
                w_cum: w_cum.clone(),
            });
            Ok(())
        };

    // Vertex groups share one segment: the anchor, enough plain copies to
    // mirror the selected vertex number, negated copies for the rest.
    let mut vertex_ids = Vec::new();
    for i in 1..=k as usize {
        let sel = selection[i - 1];
        vertex_ids.push(red.index.star[i - 1]);
        vertex_ids.extend_from_slice(&red.index.pos[i - 1][..sel as usize - 1]);
        vertex_ids.extend_from_slice(&red.index.neg[i - 1][..(n - sel) as usize]);
    }
    push_group("vertex".into(), &vertex_ids, &mut early)?;

    // Gadget groups run from the highest block down: later pairs first.
    let pairs = red.retained_pairs().to_vec();
    let mut counted: u32 = 0;
    for q in (0..pairs.len()).rev() {
        let (a, b) = pairs[q];
        let sel = (selection[a as usize - 1], selection[b as usize - 1]);
        let edges = red.graph.pair_edges(a, b);
        let gadget = &red.index.large[q];
        let mut ids = Vec::new();
        for (slot, &edge) in edges.iter().enumerate() {
            ids.push(if lex_le(sel, edge) {
                gadget.hit[slot]
            } else {
                gadget.miss[slot]
            });
        }
        counted += count_ge(sel, edges);
        ids.extend_from_slice(&gadget.fill_hi[..(n - sel.0) as usize]);
        ids.extend_from_slice(&gadget.fill_lo[..(n - sel.1) as usize]);
        push_group(format!("large({a},{b})"), &ids, &mut early)?;
    }
    for q in (0..pairs.len()).rev() {
        let (a, b) = pairs[q];
        let sel = (selection[a as usize - 1], selection[b as usize - 1]);
        let edges = red.graph.pair_edges(a, b);
        let gadget = &red.index.small[q];
        let mut ids = Vec::new();
        for (slot, &edge) in edges.iter().enumerate() {
            ids.push(if lex_le(edge, sel) {
                gadget.hit[slot]
            } else {
                gadget.miss[slot]
            });
        }
        counted += count_le(sel, edges);
        ids.extend_from_slice(&gadget.fill_hi[..sel.0 as usize]);
        ids.extend_from_slice(&gadget.fill_lo[..sel.1 as usize]);
        push_group(format!("small({a},{b})"), &ids, &mut early)?;
    }

    let mut predicted = cons.w_v().add_nocarry(cons.w_l())?.add_nocarry(cons.w_s())?;
    predicted.accumulate_nocarry(cons.unit(), counted)?;
    early.sort_unstable();
    Ok(Witness {
        early,
        predicted,
        counted_units: counted,
        segments,
    })
}

/// Schedules the witness set and checks it delivers exactly its prediction:
/// every witness job early, measured early weight equal to `predicted`.
pub fn verify_witness(red: &ReductionOutput, wit: &Witness) -> Result<(), ReduceError> {
    if !early_set_feasible(&red.instance, &wit.early)? {
        return Err(ReduceError::FeasibilityViolation(
            "canonical early set misses a deadline".into(),
        ));
    }
    let schedule = witness_to_schedule(&red.instance, &wit.early)?;
    let result = evaluate(&red.instance, &schedule)?;
    if result.w_early != wit.predicted {
        return Err(ReduceError::FeasibilityViolation(format!(
            "measured early weight {} differs from predicted {}",
            result.w_early, wit.predicted
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{figure1, is_clique, random_nice, selection_satisfies, PatternGraph};
    use crate::reduce::{build, build_eth, build_w, VariantKind};
    use itertools::Itertools;

    #[test]
    fn lexicographic_comparison_matches_tuple_ordering() {
        for a in 0..5u32 {
            for b in 0..5u32 {
                for c in 0..5u32 {
                    for d in 0..5u32 {
                        assert_eq!(lex_le((a, b), (c, d)), (a, b) <= (c, d));
                    }
                }
            }
        }
    }

    #[test]
    fn edge_counts_match_a_direct_filter() {
        let g = figure1();
        for &(a, b) in &[(1u32, 2u32), (1, 3), (2, 3)] {
            let edges = g.pair_edges(a, b);
            for sel in (1..=4u32).cartesian_product(1..=4u32) {
                let ge = edges.iter().filter(|&&e| e >= sel).count() as u32;
                let le = edges.iter().filter(|&&e| e <= sel).count() as u32;
                assert_eq!(count_ge(sel, edges), ge);
                assert_eq!(count_le(sel, edges), le);
                // Distinct edges: both counts overlap exactly on the edge.
                let present = u32::from(g.has_edge(a, b, sel.0, sel.1));
                assert_eq!(ge + le, edges.len() as u32 + present);
            }
        }
    }

    #[test]
    fn worked_example_counts() {
        let g = figure1();
        assert_eq!(count_ge((2, 3), g.pair_edges(2, 3)), 2);
        assert_eq!(count_le((2, 3), g.pair_edges(2, 3)), 3);
        assert_eq!(count_ge((1, 2), g.pair_edges(1, 2)), 3);
        assert_eq!(count_le((1, 3), g.pair_edges(1, 3)), 1);
    }

    #[test]
    fn fixture_witness_digit_strings() {
        let red = build(&figure1()).unwrap();
        let wit = witness(&red, &[1, 2, 3]).unwrap();

        // After the vertex jobs: four per class, selection marks spread over
        // the pair blocks, nothing on the counting digit.
        assert_eq!(
            wit.segments[0].p_cum.render_blocks(),
            "444|000023|000013|000012|000021|000031|000032|0"
        );
        assert_eq!(
            wit.segments[0].w_cum.render_blocks(),
            "888|000023|000013|000012|000021|000031|000032|0"
        );

        // After the first comparison gadget, its block is fully loaded.
        assert_eq!(wit.segments[1].label, "large(2,3)");
        let block = wit.segments[1].p_cum.render_blocks();
        assert_eq!(block.split('|').nth(1).unwrap(), "400044");
        assert_eq!(wit.segments[1].w_cum.counting_digit(), 2);

        // All three high gadgets hit 9 times, the first low gadget 3 more.
        assert_eq!(wit.segments[3].w_cum.counting_digit(), 9);
        assert_eq!(wit.segments[4].label, "small(2,3)");
        assert_eq!(wit.segments[4].w_cum.counting_digit(), 12);

        // (1,2,3) picks an edge in every pair, so the witness meets the
        // threshold exactly.
        assert!(is_clique(&figure1(), &[1, 2, 3]));
        assert_eq!(wit.counted_units, 15);
        let last = wit.segments.last().unwrap();
        assert_eq!(last.w_cum, wit.predicted);
        assert_eq!(wit.predicted, red.threshold);
        verify_witness(&red, &wit).unwrap();
    }

    #[test]
    fn non_clique_witnesses_fall_short_of_the_threshold() {
        let red = build(&figure1()).unwrap();
        for sel in [[1u32, 1, 1], [4, 4, 4], [2, 2, 3]] {
            assert!(!is_clique(&figure1(), &sel));
            let wit = witness(&red, &sel).unwrap();
            assert!(wit.counted_units < 15);
            assert!(wit.predicted < red.threshold);
            verify_witness(&red, &wit).unwrap();
        }
    }

    #[test]
    fn every_selection_is_exact_across_variants_and_patterns() {
        let path = PatternGraph::path(3);
        for seed in 0..6u64 {
            let n = 2 + (seed % 2) as u32;
            let m = 1 + (seed % 3) as u32;
            let g = random_nice(3, n, m, seed * 17 + 5).unwrap();
            let full_p = build(&g).unwrap();
            let full_w = build_w(&g).unwrap();
            let eth_p = build_eth(&g, &path, VariantKind::PSharp).unwrap();
            let eth_w = build_eth(&g, &path, VariantKind::WSharp).unwrap();
            let selections: Vec<Vec<u32>> = (0..3)
                .map(|_| 1..=n)
                .multi_cartesian_product()
                .collect();
            for sel in &selections {
                for red in [&full_p, &full_w] {
                    let wit = witness(red, sel).unwrap();
                    verify_witness(red, &wit).unwrap();
                    assert_eq!(
                        wit.predicted == red.threshold,
                        is_clique(&g, sel),
                        "full build, sel {sel:?}"
                    );
                }
                for red in [&eth_p, &eth_w] {
                    let wit = witness(red, sel).unwrap();
                    verify_witness(red, &wit).unwrap();
                    assert_eq!(
                        wit.predicted == red.threshold,
                        selection_satisfies(&g, &path, sel),
                        "pattern build, sel {sel:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn bad_selections_are_rejected() {
        let red = build(&figure1()).unwrap();
        assert!(matches!(
            witness(&red, &[1, 2]),
            Err(ReduceError::BadSelection(_))
        ));
        assert!(matches!(
            witness(&red, &[1, 2, 5]),
            Err(ReduceError::BadSelection(_))
        ));
        assert!(matches!(
            witness(&red, &[0, 2, 3]),
            Err(ReduceError::BadSelection(_))
        ));
    }
}
