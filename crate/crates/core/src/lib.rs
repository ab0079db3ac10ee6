//! Many Independent Objective (MIO) search for test-suite generation.
//!
//! The crate bundles the MIO archive and search loop together with three
//! baselines (MOSA, Whole Test Suite and random search), a set of synthetic
//! fitness landscapes, three instrumented numerical functions scored with
//! branch distance, the statistics used to compare algorithms over repeated
//! runs, and an experiment harness that writes CSV results.
//!
//! ```
//! use miosearch::algorithms::{run_mio, MioConfig};
//! use miosearch::problems::{ArtificialProblem, LandscapeKind};
//! use miosearch::{seeded_rng, Budget};
//!
//! let mut rng = seeded_rng(7);
//! let problem = ArtificialProblem::generate(LandscapeKind::Gradient, 5, 1000, &mut rng);
//! let result = run_mio(&problem, &MioConfig::default(), Budget::new(1000), &mut rng).unwrap();
//! assert_eq!(result.evaluations, 1000);
//! ```

pub mod algorithms;
pub mod archive;
pub mod budget;
pub mod harness;
pub mod problems;
pub mod schedule;
pub mod seed;
pub mod stats;
pub mod types;

pub use archive::{Archive, ArchiveError};
pub use budget::{Budget, BudgetExhausted};
pub use schedule::{ParameterSchedule, ScheduledParam};
pub use seed::{derive_seed, seeded_rng, SearchRng};
pub use types::{HeuristicVector, TestCase};
