//! Stationary Poisson line tessellations in the plane.
//!
//! The crate simulates Poisson line processes with discrete or uniform
//! directional distributions, builds the induced tessellation inside a disk
//! window, samples the typical cell by a direct stochastic construction, and
//! evaluates the matching closed-form triangle probabilities so the two
//! routes can be checked against each other.

pub mod analytic;
pub mod arrangement;
pub mod directional;
pub mod estimate;
pub mod geometry;
pub mod lineproc;
pub mod quadrature;
pub mod stream;
pub mod typical;

pub use directional::{DirectionalDistribution, IntensityProfile};
pub use estimate::EstimateResult;
pub use geometry::{ConvexPolygon, Line, Point};
pub use lineproc::SimulationConfig;
