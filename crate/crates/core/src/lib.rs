#![cfg_attr(not(test), no_std)]
#![doc = include_str!("../README.md")]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod error;
pub mod g2;
pub mod involution;
pub mod lattice;
pub mod pairs;
pub mod perm;
pub mod tables;
pub mod torus;
