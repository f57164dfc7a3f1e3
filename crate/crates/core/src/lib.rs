//! Minimal nilpotent orbits of complex simple Lie algebras and their
//! hyperKähler structure: Chevalley bases with exact integer structure
//! constants, the orbit through e_theta, the potential family rho(eta),
//! the complex structures I, J, K and the sl(2) / Eguchi-Hanson model.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod chevalley;
pub mod cli;
pub mod hyperkahler;
pub mod intmat;
pub mod linalg;
pub mod orbit;
pub mod report;
pub mod rootsystem;
pub mod sampling;
pub mod sl2geom;
