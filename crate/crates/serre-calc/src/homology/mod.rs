//! Homological engines: Ext over the commutative ring `R` through Taylor
//! complexes, and minimal resolutions over the noncommutative `gr(Lambda)`.

pub mod linalg;
pub mod pbw;
pub mod resolution;
pub mod shelling;
pub mod taylor;
pub mod tor;

pub use linalg::Fp;
pub use pbw::{pbw_multiply, PbwElement, PbwMonomial};
pub use resolution::{resolution_tables, BettiTable, CyclicModule, Resolution, Summand};
pub use shelling::shellability_check;
pub use taylor::{is_cm, taylor_ext_ranks, taylor_ext_ranks_rbar, CmVerdict, ExtRanks};
