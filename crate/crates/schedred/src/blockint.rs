//! Fixed-width base-`N` digit vectors laid out in blocks.
//!
//! Job characteristics in the generated scheduling instances are numbers in a
//! positional system whose digit positions carry meaning: a counting digit at
//! the bottom, one block of `m + 2` digits per retained class pair for the
//! "small" gadget family, the same again for the "large" family, and one digit
//! per vertex class at the top.  The radix is chosen large enough that all
//! sums formed while verifying a schedule stay carry-free, so digit positions
//! never interact; `add_nocarry` makes that assumption checkable.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Process-wide tallies of block-numeral additions, for encoding-safety
/// audits.  Sums formed while building or verifying an instance go through
/// [`BlockInt::add_nocarry`], which only counts on success (a detected carry
/// aborts the computation instead).  Sums formed by schedule evaluation and
/// the solvers go through [`BlockInt::add`], which classifies each call by
/// whether any digit actually carried; on instances from the generators the
/// carried count must stay zero.
pub mod tally {
    use std::sync::atomic::{AtomicU64, Ordering};

    static CARRY_FREE_ADDS: AtomicU64 = AtomicU64::new(0);
    static CARRIED_ADDS: AtomicU64 = AtomicU64::new(0);

    pub(crate) fn bump() {
        CARRY_FREE_ADDS.fetch_add(1, Ordering::Relaxed);
    }

    pub(crate) fn bump_carried() {
        CARRIED_ADDS.fetch_add(1, Ordering::Relaxed);
    }

    pub fn carry_free_adds() -> u64 {
        CARRY_FREE_ADDS.load(Ordering::Relaxed)
    }

    pub fn carried_adds() -> u64 {
        CARRIED_ADDS.load(Ordering::Relaxed)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BlockIntError {
    #[error("layout needs at least two vertex classes, got {0}")]
    TooFewClasses(u32),
    #[error("layout needs at least one edge slot per pair, got {0}")]
    NoEdgeSlots(u32),
    #[error("radix must be at least 2, got {0}")]
    RadixTooSmall(u32),
    #[error("class pair ({0},{1}) is not a pair of distinct classes in range")]
    BadPair(u32, u32),
    #[error("pair list must be strictly lexicographically sorted at ({0},{1})")]
    UnsortedPairs(u32, u32),
    #[error("exponent {exp} outside a layout with {digits} digits")]
    ExponentOutOfRange { exp: usize, digits: usize },
    #[error("carry out of the top digit")]
    Overflow,
    #[error("carry at digit {0} in carry-free addition")]
    CarryDetected(usize),
    #[error("values belong to different layouts")]
    LayoutMismatch,
    #[error("digit {digit} not below radix {radix}")]
    DigitTooLarge { digit: u32, radix: u32 },
    #[error("expected {expected} digits, got {got}")]
    WrongDigitCount { expected: usize, got: usize },
    #[error("radix {got} does not match layout radix {expected}")]
    RadixMismatch { expected: u32, got: u32 },
    #[error("malformed digit-vector literal: {0}")]
    Malformed(String),
}

/// Digit-position map for one family of instances: `classes` vertex classes,
/// `edges_per_pair` edge slots per retained pair, and the retained pairs in
/// lexicographic order.  Total width is `classes + 2·pairs·(edges_per_pair+2) + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockLayout {
    classes: u32,
    edges_per_pair: u32,
    radix: u32,
    pairs: Vec<(u32, u32)>,
}

impl BlockLayout {
    pub fn new(
        classes: u32,
        edges_per_pair: u32,
        radix: u32,
        pairs: Vec<(u32, u32)>,
    ) -> Result<Arc<Self>, BlockIntError> {
        if classes < 2 {
            return Err(BlockIntError::TooFewClasses(classes));
        }
        if edges_per_pair < 1 {
            return Err(BlockIntError::NoEdgeSlots(edges_per_pair));
        }
        if radix < 2 {
            return Err(BlockIntError::RadixTooSmall(radix));
        }
        for (idx, &(i, j)) in pairs.iter().enumerate() {
            if i < 1 || j <= i || j > classes {
                return Err(BlockIntError::BadPair(i, j));
            }
            if idx > 0 && pairs[idx - 1] >= (i, j) {
                return Err(BlockIntError::UnsortedPairs(i, j));
            }
        }
        Ok(Arc::new(BlockLayout {
            classes,
            edges_per_pair,
            radix,
            pairs,
        }))
    }

    /// Layout retaining every class pair, the default for full reductions.
    pub fn complete(
        classes: u32,
        edges_per_pair: u32,
        radix: u32,
    ) -> Result<Arc<Self>, BlockIntError> {
        Self::new(classes, edges_per_pair, radix, all_pairs(classes))
    }

    pub fn classes(&self) -> u32 {
        self.classes
    }

    pub fn edges_per_pair(&self) -> u32 {
        self.edges_per_pair
    }

    pub fn radix(&self) -> u32 {
        self.radix
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    fn block_width(&self) -> usize {
        self.edges_per_pair as usize + 2
    }

    /// Total number of digits.
    pub fn digit_count(&self) -> usize {
        self.classes as usize + 2 * self.pair_count() * self.block_width() + 1
    }

    /// Index of `(i, j)` in the retained-pair order, if retained.
    pub fn pair_index(&self, i: u32, j: u32) -> Option<usize> {
        self.pairs.iter().position(|&p| p == (i, j))
    }

    /// Lowest digit of the small block for the retained pair `(i, j)`.
    pub fn small_base(&self, i: u32, j: u32) -> Option<usize> {
        self.pair_index(i, j).map(|g| g * self.block_width() + 1)
    }

    /// Lowest digit of the large block for the retained pair `(i, j)`.
    pub fn large_base(&self, i: u32, j: u32) -> Option<usize> {
        self.pair_index(i, j)
            .map(|g| (self.pair_count() + g) * self.block_width() + 1)
    }

    /// Digit carrying the multiplicity of class-`i` selection jobs (1-based).
    pub fn vertex_digit(&self, i: u32) -> usize {
        debug_assert!(i >= 1 && i <= self.classes);
        2 * self.pair_count() * self.block_width() + i as usize
    }

    /// Digit position just below the vertex block (the counting digit when no
    /// pairs are retained).
    pub fn below_vertex(&self) -> usize {
        2 * self.pair_count() * self.block_width()
    }
}

/// All class pairs `(i, j)` with `i < j`, lexicographically sorted.
pub fn all_pairs(classes: u32) -> Vec<(u32, u32)> {
    let mut pairs = Vec::new();
    for i in 1..=classes {
        for j in (i + 1)..=classes {
            pairs.push((i, j));
        }
    }
    pairs
}

/// Radix large enough that every sum formed while checking a generated
/// instance stays carry-free, with margin.
pub fn choose_radix(classes: u32, class_size: u32, edges_per_pair: u32, job_count: usize) -> u32 {
    assert!(
        classes >= 1 && class_size >= 1 && edges_per_pair >= 1 && job_count >= 1,
        "radix choice needs positive parameters"
    );
    let n = 4 * (job_count as u64 + class_size as u64 + edges_per_pair as u64 + 2);
    u32::try_from(n).expect("radix exceeds u32; instance far beyond supported scale")
}

/// Nonnegative number in a [`BlockLayout`], stored least-significant digit
/// first with exactly `layout.digit_count()` digits.
#[derive(Clone)]
pub struct BlockInt {
    layout: Arc<BlockLayout>,
    digits: Vec<u32>,
}

impl fmt::Debug for BlockInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_blocks())
    }
}

impl BlockInt {
    pub fn zero(layout: &Arc<BlockLayout>) -> Self {
        BlockInt {
            layout: Arc::clone(layout),
            digits: vec![0; layout.digit_count()],
        }
    }

    /// The number `radix^exp`.
    pub fn pow(layout: &Arc<BlockLayout>, exp: usize) -> Result<Self, BlockIntError> {
        if exp >= layout.digit_count() {
            return Err(BlockIntError::ExponentOutOfRange {
                exp,
                digits: layout.digit_count(),
            });
        }
        let mut v = Self::zero(layout);
        v.digits[exp] = 1;
        Ok(v)
    }

    /// Builds a value from least-significant-first digits, validating width
    /// and range.
    pub fn from_digits(layout: &Arc<BlockLayout>, digits: Vec<u32>) -> Result<Self, BlockIntError> {
        if digits.len() != layout.digit_count() {
            return Err(BlockIntError::WrongDigitCount {
                expected: layout.digit_count(),
                got: digits.len(),
            });
        }
        if let Some(&d) = digits.iter().find(|&&d| d >= layout.radix()) {
            return Err(BlockIntError::DigitTooLarge {
                digit: d,
                radix: layout.radix(),
            });
        }
        Ok(BlockInt {
            layout: Arc::clone(layout),
            digits,
        })
    }

    pub fn layout(&self) -> &Arc<BlockLayout> {
        &self.layout
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn digit(&self, exp: usize) -> u32 {
        self.digits[exp]
    }

    /// The bottom digit, which counts unit contributions.
    pub fn counting_digit(&self) -> u32 {
        self.digits[0]
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }

    fn same_layout(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.layout, &other.layout) || self.layout == other.layout
    }

    /// Exact addition with carry propagation; errors only when the true sum
    /// needs more digits than the layout has.
    pub fn add(&self, other: &Self) -> Result<Self, BlockIntError> {
        if !self.same_layout(other) {
            return Err(BlockIntError::LayoutMismatch);
        }
        let radix = self.layout.radix() as u64;
        let mut digits = Vec::with_capacity(self.digits.len());
        let mut carry = 0u64;
        let mut carried = false;
        for (&a, &b) in self.digits.iter().zip(&other.digits) {
            let s = a as u64 + b as u64 + carry;
            digits.push((s % radix) as u32);
            carry = s / radix;
            carried |= carry != 0;
        }
        if carry != 0 {
            return Err(BlockIntError::Overflow);
        }
        if carried {
            tally::bump_carried();
        } else {
            tally::bump();
        }
        Ok(BlockInt {
            layout: Arc::clone(&self.layout),
            digits,
        })
    }

    /// Digit-wise addition that refuses to carry: errors at the first digit
    /// whose sum reaches the radix.  Succeeding guarantees the result equals
    /// [`BlockInt::add`].
    pub fn add_nocarry(&self, other: &Self) -> Result<Self, BlockIntError> {
        if !self.same_layout(other) {
            return Err(BlockIntError::LayoutMismatch);
        }
        let radix = self.layout.radix();
        let mut digits = Vec::with_capacity(self.digits.len());
        for (pos, (&a, &b)) in self.digits.iter().zip(&other.digits).enumerate() {
            let s = a as u64 + b as u64;
            if s >= radix as u64 {
                return Err(BlockIntError::CarryDetected(pos));
            }
            digits.push(s as u32);
        }
        tally::bump();
        Ok(BlockInt {
            layout: Arc::clone(&self.layout),
            digits,
        })
    }

    /// Adds `other` into `self` `times` times, carry-free.  Scaling is always
    /// done by repeated addition so that any digit collision surfaces as
    /// [`BlockIntError::CarryDetected`] instead of silently wrapping.
    pub fn accumulate_nocarry(&mut self, other: &Self, times: u32) -> Result<(), BlockIntError> {
        for _ in 0..times {
            *self = self.add_nocarry(other)?;
        }
        Ok(())
    }

    /// Renders in display block order: vertex block, large pair blocks from
    /// the last retained pair down, small pair blocks likewise, then the
    /// counting digit, blocks separated by `|` with each block's most
    /// significant digit first.
    pub fn render_blocks(&self) -> String {
        let lay = &self.layout;
        let width = lay.block_width();
        let b = lay.pair_count();
        let mut segments: Vec<String> = Vec::with_capacity(2 * b + 2);

        let mut vertex = String::new();
        for i in (1..=lay.classes()).rev() {
            vertex.push_str(&self.digits[lay.vertex_digit(i)].to_string());
        }
        segments.push(vertex);

        for family in 0..2 {
            // family 0 = large blocks (upper), family 1 = small blocks (lower)
            for g in (0..b).rev() {
                let base = ((1 - family) * b + g) * width + 1;
                let mut block = String::new();
                for e in (base..base + width).rev() {
                    block.push_str(&self.digits[e].to_string());
                }
                segments.push(block);
            }
        }

        segments.push(self.digits[0].to_string());
        segments.join("|")
    }

    /// Single-line literal `bint N=<radix> d=[d0,d1,...]` with digits least
    /// significant first.
    pub fn to_bint_string(&self) -> String {
        let body = self
            .digits
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(",");
        format!("bint N={} d=[{}]", self.layout.radix(), body)
    }
}

/// Digit-vector literal detached from any layout, as read from a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawBint {
    pub radix: u32,
    pub digits: Vec<u32>,
}

impl RawBint {
    /// Attaches the literal to a layout, validating radix, width, and digit
    /// range.
    pub fn into_block_int(self, layout: &Arc<BlockLayout>) -> Result<BlockInt, BlockIntError> {
        if self.radix != layout.radix() {
            return Err(BlockIntError::RadixMismatch {
                expected: layout.radix(),
                got: self.radix,
            });
        }
        BlockInt::from_digits(layout, self.digits)
    }
}

/// Parses a `bint N=<radix> d=[d0,d1,...]` literal.
pub fn parse_bint(text: &str) -> Result<RawBint, BlockIntError> {
    let bad = |msg: &str| BlockIntError::Malformed(format!("{msg}: {text}"));
    let rest = text
        .strip_prefix("bint ")
        .ok_or_else(|| bad("missing 'bint' prefix"))?;
    let (radix_part, digit_part) = rest
        .split_once(' ')
        .ok_or_else(|| bad("missing digit list"))?;
    let radix = radix_part
        .strip_prefix("N=")
        .and_then(|s| s.parse::<u32>().ok())
        .ok_or_else(|| bad("bad radix field"))?;
    let list = digit_part
        .strip_prefix("d=[")
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| bad("bad digit list delimiters"))?;
    let mut digits = Vec::new();
    if !list.is_empty() {
        for piece in list.split(',') {
            let d = piece
                .parse::<u32>()
                .map_err(|_| bad("bad digit"))?;
            if d >= radix {
                return Err(BlockIntError::DigitTooLarge { digit: d, radix });
            }
            digits.push(d);
        }
    }
    Ok(RawBint { radix, digits })
}

impl PartialEq for BlockInt {
    fn eq(&self, other: &Self) -> bool {
        self.same_layout(other) && self.digits == other.digits
    }
}

impl Eq for BlockInt {}

impl PartialOrd for BlockInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BlockInt {
    fn cmp(&self, other: &Self) -> Ordering {
        assert!(
            self.same_layout(other),
            "comparing values from different layouts"
        );
        for (a, b) in self.digits.iter().rev().zip(other.digits.iter().rev()) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl fmt::Display for BlockInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_blocks())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn figure_layout() -> Arc<BlockLayout> {
        BlockLayout::complete(3, 4, 200).unwrap()
    }

    fn tiny_layout(radix: u32) -> Arc<BlockLayout> {
        BlockLayout::complete(2, 1, radix).unwrap()
    }

    /// Wide-integer oracle: positional evaluation, valid whenever the value
    /// fits in a u128.
    fn as_u128(x: &BlockInt) -> u128 {
        let radix = x.layout().radix() as u128;
        x.digits()
            .iter()
            .rev()
            .fold(0u128, |acc, &d| acc * radix + d as u128)
    }

    fn random_value(rng: &mut ChaCha8Rng, layout: &Arc<BlockLayout>, max_digit: u32) -> BlockInt {
        let digits = (0..layout.digit_count())
            .map(|_| rng.gen_range(0..=max_digit))
            .collect();
        BlockInt::from_digits(layout, digits).unwrap()
    }

    #[test]
    fn layout_digit_positions_match_hand_computation() {
        let lay = figure_layout();
        assert_eq!(lay.digit_count(), 40);
        assert_eq!(lay.pair_count(), 3);
        assert_eq!(lay.small_base(1, 2), Some(1));
        assert_eq!(lay.small_base(2, 3), Some(13));
        assert_eq!(lay.large_base(1, 2), Some(19));
        assert_eq!(lay.large_base(2, 3), Some(31));
        assert_eq!(lay.below_vertex(), 36);
        assert_eq!(lay.vertex_digit(1), 37);
        assert_eq!(lay.vertex_digit(3), 39);
        assert_eq!(lay.pair_index(1, 3), Some(1));
        assert_eq!(lay.pair_index(3, 1), None);

        let small = tiny_layout(10);
        assert_eq!(small.digit_count(), 9);
    }

    #[test]
    fn layout_rejects_bad_parameters() {
        assert_eq!(
            BlockLayout::complete(1, 1, 10).unwrap_err(),
            BlockIntError::TooFewClasses(1)
        );
        assert_eq!(
            BlockLayout::complete(2, 0, 10).unwrap_err(),
            BlockIntError::NoEdgeSlots(0)
        );
        assert_eq!(
            BlockLayout::complete(2, 1, 1).unwrap_err(),
            BlockIntError::RadixTooSmall(1)
        );
        assert_eq!(
            BlockLayout::new(3, 1, 10, vec![(1, 2), (1, 2)]).unwrap_err(),
            BlockIntError::UnsortedPairs(1, 2)
        );
        assert_eq!(
            BlockLayout::new(3, 1, 10, vec![(1, 3), (1, 2)]).unwrap_err(),
            BlockIntError::UnsortedPairs(1, 2)
        );
        assert_eq!(
            BlockLayout::new(3, 1, 10, vec![(2, 2)]).unwrap_err(),
            BlockIntError::BadPair(2, 2)
        );
        assert_eq!(
            BlockLayout::new(3, 1, 10, vec![(1, 4)]).unwrap_err(),
            BlockIntError::BadPair(1, 4)
        );
    }

    #[test]
    fn radix_choice_is_the_documented_affine_formula() {
        assert_eq!(choose_radix(3, 2, 1, 45), 200);
        assert_eq!(choose_radix(3, 4, 4, 117), 508);
        // Margin property: strictly more than twice every count that can pile
        // up on one digit.
        for (k, n, m, j) in [(2u32, 1u32, 1u32, 10usize), (4, 4, 4, 200), (3, 3, 9, 99)] {
            let r = choose_radix(k, n, m, j) as u64;
            assert!(r > 2 * (j as u64 + n as u64 + m as u64));
        }
    }

    #[test]
    fn pow_places_single_digits_and_rejects_out_of_range() {
        let lay = figure_layout();
        let unit = BlockInt::pow(&lay, 0).unwrap();
        assert_eq!(unit.counting_digit(), 1);
        assert_eq!(unit.digits().iter().sum::<u32>(), 1);

        let top = BlockInt::pow(&lay, 39).unwrap();
        assert_eq!(top.digit(39), 1);

        assert_eq!(
            BlockInt::pow(&lay, 40).unwrap_err(),
            BlockIntError::ExponentOutOfRange { exp: 40, digits: 40 }
        );
    }

    #[test]
    fn render_blocks_golden_strings() {
        let lay = figure_layout();
        let zero = BlockInt::zero(&lay);
        assert_eq!(
            zero.render_blocks(),
            "000|000000|000000|000000|000000|000000|000000|0"
        );
        // Lowest digit of the (2,3) small block sits at the right end of the
        // fifth segment.
        let v = BlockInt::pow(&lay, lay.small_base(2, 3).unwrap()).unwrap();
        assert_eq!(
            v.render_blocks(),
            "000|000000|000000|000000|000001|000000|000000|0"
        );
        // Top vertex digit leads the rendering.
        let x3 = BlockInt::pow(&lay, lay.vertex_digit(3)).unwrap();
        assert_eq!(
            x3.render_blocks(),
            "100|000000|000000|000000|000000|000000|000000|0"
        );
    }

    #[test]
    fn add_carries_and_overflows_like_positional_arithmetic() {
        let lay = tiny_layout(10);
        let nine = BlockInt::from_digits(&lay, vec![9, 0, 0, 0, 0, 0, 0, 0, 0]).unwrap();
        let one = BlockInt::pow(&lay, 0).unwrap();
        let ten = nine.add(&one).unwrap();
        assert_eq!(ten.digits(), &[0, 1, 0, 0, 0, 0, 0, 0, 0]);

        let all_nines = BlockInt::from_digits(&lay, vec![9; 9]).unwrap();
        assert_eq!(all_nines.add(&one).unwrap_err(), BlockIntError::Overflow);

        let other_lay = tiny_layout(11);
        let foreign = BlockInt::zero(&other_lay);
        assert_eq!(nine.add(&foreign).unwrap_err(), BlockIntError::LayoutMismatch);
    }

    #[test]
    fn add_nocarry_reports_the_first_carrying_digit() {
        let lay = tiny_layout(10);
        let nine = BlockInt::from_digits(&lay, vec![9, 0, 0, 0, 0, 0, 0, 0, 0]).unwrap();
        let one = BlockInt::pow(&lay, 0).unwrap();
        assert_eq!(
            nine.add_nocarry(&one).unwrap_err(),
            BlockIntError::CarryDetected(0)
        );
        let two = one.add_nocarry(&one).unwrap();
        assert_eq!(as_u128(&two), 2);
    }

    #[test]
    fn accumulate_nocarry_matches_repeated_addition() {
        let lay = figure_layout();
        let y = BlockInt::pow(&lay, 36).unwrap();
        let mut acc = BlockInt::zero(&lay);
        acc.accumulate_nocarry(&y, 4).unwrap();
        assert_eq!(acc.digit(36), 4);
        let mut overflowing = BlockInt::zero(&lay);
        assert_eq!(
            overflowing.accumulate_nocarry(&y, 200).unwrap_err(),
            BlockIntError::CarryDetected(36)
        );
    }

    #[test]
    fn arithmetic_and_order_agree_with_wide_integer_oracle() {
        let lay = tiny_layout(50);
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..10_000 {
            let a = random_value(&mut rng, &lay, 24);
            let b = random_value(&mut rng, &lay, 24);
            let sum = a.add(&b).unwrap();
            assert_eq!(as_u128(&sum), as_u128(&a) + as_u128(&b));
            let nc = a.add_nocarry(&b).unwrap();
            assert_eq!(nc, sum);
            assert_eq!(a.cmp(&b), as_u128(&a).cmp(&as_u128(&b)));
        }
        // Carrying sums still match the oracle even when digits collide.
        for _ in 0..10_000 {
            let a = random_value(&mut rng, &lay, 49);
            let b = random_value(&mut rng, &lay, 49);
            match a.add(&b) {
                Ok(sum) => assert_eq!(as_u128(&sum), as_u128(&a) + as_u128(&b)),
                Err(BlockIntError::Overflow) => {
                    assert!(as_u128(&a) + as_u128(&b) >= 50u128.pow(9))
                }
                Err(e) => panic!("unexpected error {e}"),
            }
        }
    }

    #[test]
    fn bint_literal_round_trips() {
        let lay = figure_layout();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let v = random_value(&mut rng, &lay, 199);
            let text = v.to_bint_string();
            let parsed = parse_bint(&text).unwrap().into_block_int(&lay).unwrap();
            assert_eq!(parsed, v);
        }
        assert!(parse_bint("bint N=10 d=[0,11]").is_err());
        assert!(parse_bint("N=10 d=[0]").is_err());
        assert!(parse_bint("bint N=10 d=0,1").is_err());
    }

    proptest! {
        #[test]
        fn addition_is_commutative_and_zero_is_identity(
            a in proptest::collection::vec(0u32..30, 9),
            b in proptest::collection::vec(0u32..30, 9),
        ) {
            let lay = tiny_layout(100);
            let a = BlockInt::from_digits(&lay, a).unwrap();
            let b = BlockInt::from_digits(&lay, b).unwrap();
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            let zero = BlockInt::zero(&lay);
            prop_assert_eq!(a.add(&zero).unwrap(), a.clone());
            prop_assert_eq!(a.add_nocarry(&b).unwrap(), a.add(&b).unwrap());
        }
    }
}
