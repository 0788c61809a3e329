//! Burst-insertion/deletion error-correcting codes over arbitrary finite
//! alphabets.
//!
//! A `(t, s)`-burst deletes `t` consecutive symbols of a word and inserts
//! `s` arbitrary symbols at the same coordinate. This crate provides:
//!
//! * the channel model — applying bursts, inversions, absorptions, and
//!   localized deletions, and enumerating error balls ([`channel`]);
//! * exact ball-size and sphere-packing arithmetic ([`bounds`]);
//! * syndrome-defined code families with decoders for `(2,2)`-bursts,
//!   `(t,t)`-bursts, binary and `q`-ary `(t,t-1)`-bursts, and general
//!   `(t,s)`-bursts via integer lifting ([`codes`]);
//! * derived code families for inversions, absorption errors, bursts of
//!   at most `t` deletions, localized deletions, and stable burst
//!   deletions in permutations ([`applications`], [`permutation`]);
//! * a brute-force verification harness that enumerates codes, proves
//!   ball-disjointness, and runs exhaustive decode roundtrips at desk
//!   scale ([`verify`]).

pub mod applications;
pub mod bounds;
pub mod channel;
pub mod cli;
pub mod codes;
pub mod error;
pub mod instance;
pub mod permutation;
pub mod verify;
pub mod word;

pub use error::{CodeError, Result};
pub use word::Word;
