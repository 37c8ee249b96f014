//! Executable separation apparatus: the marker language no small folding
//! system reproduces, its balance fact, synchronized pumping
//! decompositions, the exhaustive bounded refuter, and the union
//! non-closure demonstration.

mod pumping;
mod refuter;
mod separation;
mod union;

pub use pumping::{pump_decompose, PumpDecomposition};
pub use refuter::{
    refute_bounded, refute_bounded_with_progress, RefuteProgress, RefuterConfig, RefuterOutcome,
    Verdict,
};
pub use separation::{balance_check, separation_language};
pub use union::{union_demo, UnionReport};
