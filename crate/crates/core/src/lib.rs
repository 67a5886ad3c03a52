//! Certified topology of real plane algebraic curves.
//!
//! Given `F(x, y) = 0` with integer coefficients, [`compute_topology`]
//! returns a straight-line graph isotopic to the real curve. All decisions
//! are exact: rational arithmetic, subresultant sequences over `Z[x]`, and
//! root isolation whose only approximations are certified intervals.

pub mod algnum;
pub mod arith;
pub mod bipoly;
pub mod bounds;
pub mod cli;
pub mod emit;
pub mod error;
pub mod isolate;
pub mod parse;
pub mod subres;
pub mod topology;
pub mod upoly;

pub use algnum::AlgebraicNumber;
pub use arith::{Interval, Rational, Sign};
pub use bipoly::BiPoly;
pub use error::{Error, Result};
pub use isolate::IsolatingInterval;
pub use parse::parse_poly;
pub use subres::{subresultant_chain, SubresChain};
pub use topology::{compute_topology, ShearMode, TopologyGraph, TopologyOptions};
pub use upoly::IntPoly;
