//! graycheck: a verification kernel for string-diagram reasoning in
//! semi-strict braided monoidal bicategories (braided Gray monoids).
//!
//! The crate type-checks diagrams, decides equality modulo strict
//! interchange, replays axiom-by-axiom proof scripts, and mechanically
//! generates enriched-bicategory constructions with their proof
//! obligations.

pub mod constructions;
pub mod diagram;
pub mod dsl;
pub mod enriched;
pub mod libs;
pub mod normalize;
pub mod render;
pub mod rewrite;
pub mod schemas;
pub mod scripts;
pub mod signature;
