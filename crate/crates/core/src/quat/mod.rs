//! Quaternions over cyclotomic fields, 2×2 quaternionic matrices and reflections.

pub mod consts;
mod matrix;
mod quaternion;
mod reflection;

pub use consts::{quat_const, Const};
pub use matrix::{QMat2, QVec2};
pub(crate) use matrix::split_top;
pub use quaternion::Quat;
pub use reflection::{in_left_span, quat_is_reflection, quat_is_reflection_bounded, reflection_root, ReflectionInfo, ORDER_BOUND};
