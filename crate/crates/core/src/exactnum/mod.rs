//! Exact rational and cyclotomic arithmetic.

mod cycnum;
mod field;
mod rat;

pub use cycnum::CycNum;
pub use rat::Rat;

/// Euler's totient, the dimension of ℚ(ζ_n) over ℚ.
pub fn totient(n: u32) -> usize {
    field::totient(n)
}
