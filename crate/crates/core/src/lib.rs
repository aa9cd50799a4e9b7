//! Exact construction and verification of rank-two quaternionic reflection groups.

pub mod error;
pub mod exactnum;

pub use error::{Error, Result};
pub use exactnum::{CycNum, Rat};
pub mod quat;

pub use quat::{QMat2, Quat};
pub mod matgroup;
pub mod sgroups;

pub use sgroups::{SGroup, Tag};
pub mod gkh;
pub mod extpoly;
pub mod soi;
pub mod conj;
pub mod catalog;
