//! Tree automorphisms as words over finitary root-stabilizer portraits and
//! the canonical unitary translation `σ`.

mod classify;
mod portrait;
mod word;

pub use classify::Classification;
pub use portrait::{FinitaryPortrait, LocalPermutation};
pub use word::{AutWord, Generator};
