//! Instance generators that translate clique-style selection problems into
//! single-machine weighted-tardy-job scheduling.
//!
//! A generated instance encodes a nice k-partite graph in block numerals:
//!
//! * a **vertex selection gadget** per class, whose early jobs commit to one
//!   vertex index per class;
//! * a **large edge gadget** per retained class pair, counting how many of
//!   the pair's edges are lexicographically at least the selected pair;
//! * a **small edge gadget** per retained pair, counting those at most the
//!   selected pair.
//!
//! Each of a pair's `m` edges is at-least, at-most, or both (exactly when it
//! *is* the selected pair), so the two counters sum to `m + 1` precisely when
//! the selected vertices are adjacent.  The counting digit of the optimal
//! early weight therefore reaches `(m+1) * pairs` exactly when every retained
//! pair is adjacent — the instance's threshold.
//!
//! Two variants share this skeleton: [`build`] concentrates distinctness in
//! processing times (few distinct p), [`build_w`] swaps the roles of
//! processing times and weights (few distinct w).  [`build_eth`] keeps
//! gadgets only for the edges of a pattern graph, so adjacency is demanded
//! only where the pattern has an edge.

mod build;
mod check;
mod constants;
mod witness;

pub use build::{build, build_eth, build_w};
pub use check::structure_check;
pub use constants::Constants;
pub use witness::{count_ge, count_le, lex_le, verify_witness, witness, SegmentTrace, Witness};

use std::sync::Arc;

use thiserror::Error;

use crate::blockint::{BlockInt, BlockIntError, BlockLayout};
use crate::graphs::{KPartiteGraph, PatternGraph};
use crate::sched::{Instance, SchedError};

/// Which job statistic the construction keeps bounded: the number of
/// distinct processing times (`PSharp`) or distinct weights (`WSharp`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VariantKind {
    PSharp,
    WSharp,
}

impl VariantKind {
    /// Short code used in CLI flags and file headers.
    pub fn code(self) -> &'static str {
        match self {
            VariantKind::PSharp => "p",
            VariantKind::WSharp => "w",
        }
    }
}

#[derive(Debug, Error)]
pub enum ReduceError {
    #[error("graph is not nice: equal class sizes and equal per-pair edge counts required")]
    NotNice,
    #[error("pattern does not fit the graph: {0}")]
    BadPattern(String),
    #[error("bad selection: {0}")]
    BadSelection(String),
    #[error("construction bug: {0}")]
    FeasibilityViolation(String),
    #[error(transparent)]
    Block(#[from] BlockIntError),
    #[error(transparent)]
    Sched(#[from] SchedError),
}

/// Job ids of one edge gadget, in construction order.
#[derive(Debug, Clone)]
pub struct PairGadget {
    pub pair: (u32, u32),
    /// Per edge slot (index `l-1`): the job that is early exactly when the
    /// slot's comparison succeeds, carrying the extra counting unit.
    pub hit: Vec<usize>,
    /// The twin scheduled instead when the comparison fails.
    pub miss: Vec<usize>,
    /// `n` interchangeable fillers on the block's second digit.
    pub fill_hi: Vec<usize>,
    /// `n` interchangeable fillers on the block's first digit.
    pub fill_lo: Vec<usize>,
}

/// Job ids organized by gadget role, for assembling witness schedules.
#[derive(Debug, Clone, Default)]
pub struct GadgetIndex {
    /// Per class: the high-weight anchor job that every valid selection keeps.
    pub star: Vec<usize>,
    /// Per class: `n-1` copies tallying the selected index from below.
    pub pos: Vec<Vec<usize>>,
    /// Per class: `n-1` copies tallying the complement.
    pub neg: Vec<Vec<usize>>,
    /// Per retained pair, ascending lexicographic order: at-least counters.
    pub large: Vec<PairGadget>,
    /// Per retained pair: at-most counters.
    pub small: Vec<PairGadget>,
}

/// A complete generated instance with its decision threshold and the
/// bookkeeping needed to verify it.
#[derive(Debug, Clone)]
pub struct ReductionOutput {
    pub instance: Instance<BlockInt>,
    pub threshold: BlockInt,
    pub constants: Constants,
    pub kind: VariantKind,
    pub pattern: Option<PatternGraph>,
    pub index: GadgetIndex,
    pub graph: KPartiteGraph,
}

impl ReductionOutput {
    pub fn layout(&self) -> &Arc<BlockLayout> {
        self.instance.ctx()
    }

    pub fn classes(&self) -> u32 {
        self.layout().classes()
    }

    pub fn class_size(&self) -> u32 {
        self.constants.class_size()
    }

    pub fn edges_per_pair(&self) -> u32 {
        self.layout().edges_per_pair()
    }

    pub fn retained_pairs(&self) -> &[(u32, u32)] {
        self.layout().pairs()
    }
}
