//! The numeric scaffolding every construction is assembled from.
//!
//! All values are block numerals over the instance's layout.  Sums are
//! formed exclusively with the carry-checked adders, so building the bundle
//! doubles as a proof that the chosen radix keeps every digit independent.

use std::sync::Arc;

use super::VariantKind;
use crate::blockint::{BlockInt, BlockIntError, BlockLayout};

/// Named constants shared by the gadgets of one construction.
///
/// Conventions: classes `i` are 1-based; retained pairs are addressed by
/// their index `q` in the layout's ascending lexicographic order.
#[derive(Debug, Clone)]
pub struct Constants {
    layout: Arc<BlockLayout>,
    class_size: u32,
    kind: VariantKind,
    unit: BlockInt,
    x: Vec<BlockInt>,
    l: Vec<BlockInt>,
    s: Vec<BlockInt>,
    y: Vec<BlockInt>,
    z: Vec<BlockInt>,
    pv: Vec<BlockInt>,
    pl_after: Vec<BlockInt>,
    ps_after: Vec<BlockInt>,
    pl_total: BlockInt,
    w_v: BlockInt,
    w_l: BlockInt,
    w_s: BlockInt,
    threshold: BlockInt,
}

impl Constants {
    pub fn new(
        layout: Arc<BlockLayout>,
        class_size: u32,
        kind: VariantKind,
    ) -> Result<Self, BlockIntError> {
        let k = layout.classes() as usize;
        let n = class_size;
        let m = layout.edges_per_pair();
        let pow = |e: usize| BlockInt::pow(&layout, e);
        let zero = BlockInt::zero(&layout);
        let unit = pow(0)?;

        // One digit per class, just above all edge blocks.
        let x: Vec<BlockInt> = (1..=k as u32)
            .map(|i| pow(layout.vertex_digit(i)))
            .collect::<Result<_, _>>()?;

        // l[i-1] marks, for each retained pair containing class i, the large
        // block digit that tallies class i's selected index: the first digit
        // when i is the pair's larger class, the second when the smaller.
        // s[i-1] marks the same digits in the small blocks.
        let mut l = vec![zero.clone(); k];
        let mut s = vec![zero.clone(); k];
        for &(a, b) in layout.pairs() {
            let f = layout.large_base(a, b).expect("pair is retained");
            let g = layout.small_base(a, b).expect("pair is retained");
            l[b as usize - 1] = l[b as usize - 1].add_nocarry(&pow(f)?)?;
            l[a as usize - 1] = l[a as usize - 1].add_nocarry(&pow(f + 1)?)?;
            s[b as usize - 1] = s[b as usize - 1].add_nocarry(&pow(g)?)?;
            s[a as usize - 1] = s[a as usize - 1].add_nocarry(&pow(g + 1)?)?;
        }

        // pv[i] = n * (X_{i+1} + ... + X_k): the processing time of the
        // vertex gadgets of all classes scheduled before class i's (classes
        // are scheduled in descending order).
        let mut pv = vec![zero.clone(); k + 1];
        for i in (0..k).rev() {
            let mut v = pv[i + 1].clone();
            v.accumulate_nocarry(&x[i], n)?;
            pv[i] = v;
        }

        let pair_count = layout.pair_count();
        let mut y = Vec::with_capacity(pair_count);
        let mut z = Vec::with_capacity(pair_count);
        let mut large_p = Vec::with_capacity(pair_count);
        let mut large_w = Vec::with_capacity(pair_count);
        let mut small_p = Vec::with_capacity(pair_count);
        let mut small_w = Vec::with_capacity(pair_count);
        for q in 0..pair_count {
            let (a, b) = layout.pairs()[q];
            let f = layout.large_base(a, b).expect("pair is retained");
            let g = layout.small_base(a, b).expect("pair is retained");
            y.push(pow(f + m as usize + 1)?);
            z.push(pow(g + m as usize + 1)?);

            // The m edge jobs of a gadget put all their bulk on the block's
            // top digit on one side and spread one unit per edge slot on the
            // other; which side is which is the whole difference between the
            // two variants.
            let totals = |base: usize, top: &BlockInt| -> Result<_, BlockIntError> {
                let mut bulk = zero.clone();
                bulk.accumulate_nocarry(top, m)?;
                // The spread side descends from the block's top digit, one
                // digit per slot (see the builder for why the anchor must
                // be the top digit).
                let mut spread = zero.clone();
                for slot in 1..=m as usize {
                    spread = spread.add_nocarry(&pow(base + m as usize + 2 - slot)?)?;
                }
                let mut fill = zero.clone();
                fill.accumulate_nocarry(&pow(base + 1)?, n)?;
                fill.accumulate_nocarry(&pow(base)?, n)?;
                let (p_side, w_side) = match kind {
                    VariantKind::PSharp => (bulk, spread),
                    VariantKind::WSharp => (spread, bulk),
                };
                Ok((p_side.add_nocarry(&fill)?, w_side.add_nocarry(&fill)?))
            };
            let (p_tot, w_tot) = totals(f, &y[q])?;
            large_p.push(p_tot);
            large_w.push(w_tot);
            let (p_tot, w_tot) = totals(g, &z[q])?;
            small_p.push(p_tot);
            small_w.push(w_tot);
        }

        // Pairs with larger lexicographic rank have earlier due dates, so a
        // gadget's jobs see the total early processing time of every pair
        // after it (suffix sums).
        let suffix = |per_pair: &[BlockInt]| -> Result<(Vec<BlockInt>, BlockInt), BlockIntError> {
            let mut after = vec![zero.clone(); pair_count];
            let mut acc = zero.clone();
            for q in (0..pair_count).rev() {
                after[q] = acc.clone();
                acc = acc.add_nocarry(&per_pair[q])?;
            }
            Ok((after, acc))
        };
        let (pl_after, pl_total) = suffix(&large_p)?;
        let (ps_after, _) = suffix(&small_p)?;

        let mut w_v = zero.clone();
        for xi in &x {
            w_v.accumulate_nocarry(xi, 2 * n)?;
        }
        let mut w_l = zero.clone();
        for v in &large_w {
            w_l = w_l.add_nocarry(v)?;
        }
        let mut w_s = zero.clone();
        for v in &small_w {
            w_s = w_s.add_nocarry(v)?;
        }

        let mut threshold = w_v.add_nocarry(&w_l)?.add_nocarry(&w_s)?;
        threshold.accumulate_nocarry(&unit, (m + 1) * pair_count as u32)?;

        Ok(Constants {
            layout,
            class_size,
            kind,
            unit,
            x,
            l,
            s,
            y,
            z,
            pv,
            pl_after,
            ps_after,
            pl_total,
            w_v,
            w_l,
            w_s,
            threshold,
        })
    }

    pub fn layout(&self) -> &Arc<BlockLayout> {
        &self.layout
    }

    pub fn class_size(&self) -> u32 {
        self.class_size
    }

    pub fn kind(&self) -> VariantKind {
        self.kind
    }

    /// The counting-digit unit.
    pub fn unit(&self) -> &BlockInt {
        &self.unit
    }

    /// Class digit value for 1-based class `i`.
    pub fn x(&self, i: u32) -> &BlockInt {
        &self.x[i as usize - 1]
    }

    /// Class `i`'s marks in the large blocks.
    pub fn l(&self, i: u32) -> &BlockInt {
        &self.l[i as usize - 1]
    }

    /// Class `i`'s marks in the small blocks.
    pub fn s(&self, i: u32) -> &BlockInt {
        &self.s[i as usize - 1]
    }

    /// Top digit value of pair `q`'s large block.
    pub fn y(&self, q: usize) -> &BlockInt {
        &self.y[q]
    }

    /// Top digit value of pair `q`'s small block.
    pub fn z(&self, q: usize) -> &BlockInt {
        &self.z[q]
    }

    /// Processing time of the first `i` scheduled vertex gadgets' early jobs
    /// at their largest (classes k, k-1, ..., i+1), i.e. what class i's jobs
    /// can see on the clock before their own gadget starts.
    pub fn pv(&self, i: usize) -> &BlockInt {
        &self.pv[i]
    }

    /// Total early processing time of all large gadgets due before pair `q`.
    pub fn pl_after(&self, q: usize) -> &BlockInt {
        &self.pl_after[q]
    }

    /// Ditto for small gadgets.
    pub fn ps_after(&self, q: usize) -> &BlockInt {
        &self.ps_after[q]
    }

    /// Total early processing time of all large gadgets.
    pub fn pl_total(&self) -> &BlockInt {
        &self.pl_total
    }

    /// Early weight of the vertex gadgets under any valid selection.
    pub fn w_v(&self) -> &BlockInt {
        &self.w_v
    }

    /// Early weight of all large gadgets, minus counting units.
    pub fn w_l(&self) -> &BlockInt {
        &self.w_l
    }

    /// Early weight of all small gadgets, minus counting units.
    pub fn w_s(&self) -> &BlockInt {
        &self.w_s
    }

    /// The decision threshold: gadget weights plus `(m+1) * pairs` counting
    /// units, reached exactly when every retained pair is adjacent.
    pub fn threshold(&self) -> &BlockInt {
        &self.threshold
    }
}
