//! Classification of involutions on minimal surfaces of general type with
//! `p_g = q = 0`.
//!
//! Everything is exact integer arithmetic. Given `K_S^2` and the number `k`
//! of isolated fixed points, the crate computes the numerical profile of the
//! quotient surface, enumerates the possible branch-curve configurations in
//! each admissible `(k, K_W^2)` cell, applies the registered exclusion
//! rules, and for `K_S^2 = 7` runs the encoded case analysis (Kodaira class
//! of the quotient, the Enriques filter, the double-cover examples).
//!
//! Entry points: [`report::classify`], [`report::enriques_report`],
//! [`report::examples_report`], [`report::rules_report`], and the renderers
//! beside them.

pub mod arith;
pub mod branch;
pub mod cover;
pub mod enriques;
pub mod profile;
pub mod report;
pub mod rules;

pub use arith::{ArithError, CurveClass, CurveType};
pub use branch::{BranchConfig, BranchError};
pub use profile::{ProfileError, QuotientProfile};
pub use report::{Error, Format};
pub use rules::{RuleSet, RuleStage};
