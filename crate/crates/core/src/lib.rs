pub mod alphabet;
pub mod error;
pub mod experiment;
pub mod hashing;
pub mod io;
pub mod minimizer;
pub mod rng;
pub mod simulation;
pub mod conv;
pub mod metrics;
pub mod parallel;
pub mod stats;
pub mod suite;
pub mod validation;
