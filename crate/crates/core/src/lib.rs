//! Geometry kernel for crooked planes and crooked halfspaces in
//! 2+1-dimensional Minkowski space.
//!
//! The library covers the Lorentzian linear algebra (inner product,
//! determinant form, cross product, causal types, null frames), halfplanes of
//! the hyperbolic plane in the hyperboloid model, crooked halfspaces with
//! their strata and symmetry groups, containment of lines and particles,
//! disjointness criteria cross-validated three ways, and crooked foliations.
//! A small CLI (`crooked`) exposes the predicates and emits zigzag polylines,
//! meshes and vertex paths.

pub mod cli;
pub mod cone;
pub mod crooked;
pub mod disjoint;
pub mod error;
pub mod exact;
pub mod foliation;
pub mod frame;
pub mod hyperbolic;
pub mod lines;
pub mod mesh;
pub mod rng;
pub mod scene;
pub mod symmetry;
pub mod tol;
pub mod transform;
pub mod vec;
pub mod zigzag;

pub use cone::TranslationCone;
pub use crooked::{CrookedHalfspace, StemQuadrant, Stratum};
pub use error::{GeomError, Result};
pub use foliation::{CoefficientPath, CrookedFoliation, DirectorPath};
pub use frame::NullFrame;
pub use hyperbolic::{GeodesicRelation, HPoint, Halfplane};
pub use lines::Line;
pub use tol::{Tol, DEFAULT_EPS};
pub use transform::AffineMap;
pub use vec::{CausalClass, Chart, Point, Vec3};
