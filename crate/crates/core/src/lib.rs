//! Exact combinatorics of Arthur packets for p-adic classical groups.
//!
//! Half-integers, segments and tableaux live in [`segment`]; Jacquet operators
//! on the general linear side in [`jacquet`]; Jordan blocks and characters in
//! [`params`]; the (ℓ,η) parametrization and symbolic Jacquet rules in
//! [`packets`]; induced decompositions in [`induction`]; brute-force checks in
//! [`oracle`]; and the JSON front end in [`cli`].

pub mod cli;
pub mod error;
pub mod induction;
pub mod jacquet;
pub mod oracle;
pub mod packets;
pub mod params;
pub mod segment;

pub use error::{Error, Result};
pub use segment::{CuspidalLabel, HalfInt, Multisegment, Segment, Sign};
