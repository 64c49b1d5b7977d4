//! Heegaard Floer correction terms for lens spaces and plumbed manifolds, and
//! the distance-one surgery obstructions built on them.

pub mod classify;
pub mod cli;
pub mod exactlat;
pub mod lens;
pub mod obstruct;
pub mod plumbing;
pub mod simpleknot;
pub mod surgery;
