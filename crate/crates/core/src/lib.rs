//! Toric models of blown-up `P³` and `(P¹)³`, their intersection theory,
//! toric symmetries, and a reduction engine for stationary invariants.

pub mod classspec;
pub mod error;
pub mod fan;
pub mod gw;
pub mod intersection;
pub mod isomorphism;
pub mod lattice;
pub mod linalg;
pub mod model;
pub mod sampling;
pub mod symmetry;

pub use classspec::{format_class, parse_class};
pub use error::{Error, Result};
pub use fan::{BaseModel, Cone, LatticeFan, RayLabel};
pub use gw::{BaseTable, GwQuery, Outcome, ReductionTrace, Rule};
pub use intersection::IntersectionTable;
pub use isomorphism::{fan_isomorphism, FanIsomorphism};
pub use lattice::{LatticeVector, Mat3};
pub use linalg::IntMatrix;
pub use model::{CurveClass, DivisorClass, Model, Side};
pub use symmetry::ToricSymmetry;
