//! Probabilistic design space characterization under sampled parametric
//! uncertainty.
//!
//! Given a black-box process model, a knowledge space (the box of process
//! parameters under study), and a weighted sample set describing the model
//! parameter distribution, this crate estimates the feasibility probability
//! of every candidate design point and characterizes the design space at a
//! chosen reliability value. Two samplers are provided:
//!
//! * [`run_mc`] — exhaustive characterization over a Sobol (or uniform
//!   random) design grid;
//! * [`run_ns`] — nested sampling, which steers a live-point population into
//!   regions of increasing feasibility probability using enlarged-ellipsoid
//!   replacement proposals, concentrating samples where the reliability is
//!   high. [`run_nominal`] is the single-scenario specialization that
//!   recovers the nominal design space.
//!
//! The labelled result set can then be regressed with a small feed-forward
//! network ([`FeasibilityMapMlp`]) to reconstruct the full feasibility map.
//! An analytic two-parameter benchmark with closed-form probabilistic,
//! nominal, and set-membership design spaces lives in [`benchmark`] and backs
//! the test oracles.
//!
//! All randomness derives from per-run master seeds through documented
//! substreams; identical seeds give byte-identical results.

pub mod benchmark;
pub mod ellipsoid;
mod error;
pub mod mc;
pub mod mlp;
pub mod model;
pub mod ns;
pub mod rng;
pub mod sample;
pub mod sobol;
pub mod space;
pub mod special;
pub mod uncertainty;

pub use error::{Error, Result};

pub use ellipsoid::{enclosing_ellipsoid, enclosing_ellipsoid_with_floor, sample_in_ellipsoid, Ellipsoid};
pub use mc::{run_mc, McConfig, Sequence};
pub use mlp::{gradient_check, Activation, FeasibilityMapMlp, MlpConfig, TrainingReport};
pub use model::{
    feasibility_probability, feasibility_probability_bounded, indicator, BoundedOutcome,
    ProcessModel,
};
pub use ns::{run_nominal, run_ns, NsConfig};
pub use sample::{DesignSample, RunResult, RunStats, Status, Termination, TraceRecord};
pub use sobol::sobol_points;
pub use space::KnowledgeSpace;
pub use uncertainty::{ThetaSample, UncertaintySet};
