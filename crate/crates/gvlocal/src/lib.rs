//! Gopakumar–Vafa invariants of local P² computed exactly, once by summing
//! the topological vertex over partition triples and once from closed
//! generating functions, so that the two can be compared term by term.

pub mod qseries;
pub mod partitions;
pub mod hopf;
pub mod vertex;
pub mod closedform;
