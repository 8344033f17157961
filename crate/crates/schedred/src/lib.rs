//! Instance generators reducing multicolored-clique-style problems to
//! single-machine scheduling with weighted tardy jobs, plus exact solvers and
//! a verification harness for checking the constructions end to end.

pub mod blockint;
pub mod formats;
pub mod graphs;
pub mod harness;
pub mod reduce;
pub mod report;
pub mod sched;
pub mod solvers;
