#![no_std]
extern crate alloc;

pub mod embedding;
pub mod exactnum;
pub mod invariant;
pub mod lattice;
pub mod linalg;
pub mod normalform;
pub mod polyring;
pub mod spectrum;
