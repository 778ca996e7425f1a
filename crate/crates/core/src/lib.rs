//! Naive and compact suffix trees, the growth of a string, exact counts of
//! aperiodic strings and of strings by growth, and experiments measuring
//! the expected growth and expected naive-tree size of random strings.
//!
//! Sweeps over all strings or over Monte Carlo samples run on rayon when the
//! default `parallel` feature is enabled and sequentially otherwise; results
//! are identical either way.

pub mod combinatorics;
pub mod enumerate;
pub mod error;
pub mod experiments;
pub mod output;
pub mod parallel;
pub mod sampling;
pub mod strings;
pub mod tree;
pub mod verify;

pub use combinatorics::{mu, mu_prime_power, omega_bruteforce, phi, phi_prefix_sum, verify_omega_bounds, Combinatorics, Counts};
pub use error::{Error, Result};
pub use parallel::Workers;
pub use strings::{Alphabet, Str, Symbol};
pub use tree::{growth_oracle, growth_sum_identity, growth_tree, CompactSuffixTree, GrowthValue, NaiveSuffixTree};
