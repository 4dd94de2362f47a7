//! Graded graphs, their pascalizations, and the exact arithmetic around
//! dimensions, central measures and K₀ of the associated algebras.

pub mod dimensions;
pub mod error;
pub mod export;
pub mod family;
pub mod graph;
pub mod k0;
pub mod measures;
pub mod partition;
pub mod pascalize;

pub use error::{Error, Result};
pub use family::{build_family, Family, FamilyGraph};
pub use graph::{Direction, GradedGraph, GraphPath, Label, RawGraph, VertexId};
pub use partition::{Partition, PartitionPair};
pub use pascalize::{pascalize, PascalLabel, PascalizedGraph, WalkTrajectory};

pub use num_bigint::BigUint;
pub use num_rational::BigRational;
