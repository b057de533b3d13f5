//! Core primitives for a biometric index vault.
//!
//! An image is reduced to a compact signature (its leading singular values,
//! its normalized intensity histogram, or the eigenvalues of its column
//! covariance), the signature is encrypted under an elliptic-curve hybrid
//! scheme, and stored signatures are later compared against a query by
//! Euclidean distance after decryption.
//!
//! This crate is `no_std` (alloc only) and holds the pure computation:
//! image handling, signature extraction, curve arithmetic and encryption,
//! matching, and the on-disk record byte format. File IO, key files, and
//! the CLI live in the companion `fpix` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod crypto;
pub mod image;
pub mod indexing;
pub mod matcher;
pub mod matrix;
pub mod record;

mod fmath;
