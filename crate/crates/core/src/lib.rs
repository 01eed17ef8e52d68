//! Finite co-design with composable parametric uncertainty.
//!
//! Design problems are monotone feasibility relations `F^op × R → Bool`
//! between finite posets. They compose in series (`dp::compose`), in
//! parallel (`dp::tensor`) and around feedback loops (`dp::trace`).
//! On top of that sits a small family of uncertainty monads (exactly-one,
//! nonempty subsets, endpoint intervals, exact finite distributions) and
//! parametrized cells `U → M(DP(F, R))` that compose like their plain
//! counterparts while concatenating parameter spaces.
//!
//! Everything is exhaustive and exact: orders are dense boolean tables and
//! probabilities are arbitrary-precision rationals, so every law the
//! structures are supposed to satisfy can be checked by equality.

pub mod dp;
pub mod error;
pub mod exec;
pub mod learning;
pub mod model;
pub mod monads;
pub mod param;
pub mod poset;
pub mod queries;
pub mod rational;
pub mod wiring;

pub use dp::{DesignProblem, MonotoneMap};
pub use error::{Error, Result};
pub use exec::Execution;
pub use monads::{Dist, Interval, MonadKind, Uncertain};
pub use param::{ParamCell, ParamSpace, ParamTuple, Reparam};
pub use poset::{Antichain, Elem, FinitePoset, PosetRef, SetFamily};
