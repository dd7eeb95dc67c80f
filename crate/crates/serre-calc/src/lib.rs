//! Exact combinatorics and graded algebra for the mod `p` representations
//! of `GL_2(K)` attached to a reducible generic `rho-bar`.
//!
//! The crate is layered bottom-up:
//!
//! * [`weights`]: the tuple sets `P^ss`, `P`, `D^ss`, `D` and maps between them,
//! * [`characters`]: torus characters as difference exponents,
//! * [`monomial`]: monomial ideals of `R-bar = F[y_j, z_j]/(y_j z_j)`,
//! * [`cycles`]: characteristic cycles over `R-bar`,
//! * [`homology`]: Taylor/Ext computations over `R` and minimal resolutions over `gr(Lambda)`,
//! * [`repmodel`]: the structural predictions built from all of the above,
//! * [`verify`]: suites of checks and the JSON report used by the binary.
//!
//! ```
//! use serre_calc::weights::{enumerate_pss, enumerate_p, Params};
//! use serre_calc::subset::IndexSet;
//!
//! let params = Params::new(2, 29, IndexSet::singleton(0), vec![13, 14]).unwrap();
//! assert_eq!(enumerate_pss(2).len(), 10);
//! assert!(enumerate_p(&params).len() < 10);
//! ```

pub mod characters;
pub mod cycles;
pub mod error;
pub mod homology;
pub mod monomial;
pub mod repmodel;
pub mod subset;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};
