//! Stationary planar random forests.
//!
//! The crate is organised in five layers:
//!
//! * [`geometry`]: exact rational planar kernel.
//! * [`forest`]: the graph model, validators and finite-window estimators
//!   (edge intensity, box crossings, escape degree, ends classification,
//!   pendant trees, peeling).
//! * [`generators`]: uniform spanning trees, duals, contours, peeling layers,
//!   drainage networks and fixtures.
//! * [`corridor`]: doors, topological lines, Jordan curves from symmetric
//!   differences and the betweenness order.
//! * [`harness`]: seeded experiments, statistics, SVG rendering and the
//!   acceptance checks.

pub mod corridor;
pub mod forest;
pub mod generators;
pub mod geometry;
pub mod harness;
