//! Cuspidal surfaces in P^3 over finite fields and the ternary codes of their cusps.

pub mod ffield;
pub mod mpoly;
pub mod construct;
pub mod singular;
pub mod cuspcode;
pub mod wedge;
pub mod cli;
