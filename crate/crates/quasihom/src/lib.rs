//! File formats, certificate checking and the command-line front-end for
//! [`quasihom_core`].

pub mod commands;
pub mod document;
pub mod expr;
pub mod problem;
