//! Centres of diagonal braid groups on surfaces, their normal forms, and the
//! toric and noncommutative-torus constructions built on them.

pub mod braid;
pub mod centre;
pub mod nctorus;
pub mod par;
pub mod scheme;
pub mod sweep;
pub mod tables;
pub mod toric;
pub mod zlinalg;
