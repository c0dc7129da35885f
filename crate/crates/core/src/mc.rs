//! Exhaustive design space characterization over a fixed design sample set.
//!
//! Every design point gets a full feasibility-probability estimate; the
//! result is the complete labelled set, emitted in input order.

use crate::error::Result;
use crate::model::{feasibility_probability, ProcessModel};
use crate::rng::{substream, SubStream};
use crate::sample::{DesignSample, RunResult, RunStats, Status, Termination};
use crate::sobol::sobol_points;
use crate::space::KnowledgeSpace;
use crate::uncertainty::UncertaintySet;

/// How the design points are laid out over the knowledge space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Sequence {
    #[default]
    Sobol,
    UniformRandom,
}

/// Configuration for a Monte Carlo characterization run.
#[derive(Debug, Clone)]
pub struct McConfig {
    /// Number of design points `N_d`.
    pub design_points: usize,
    pub sequence: Sequence,
    /// Sobol indices skipped before the first emitted point. Defaults to 1,
    /// dropping the degenerate all-zeros corner.
    pub sobol_skip: usize,
    pub seed: u64,
}

impl McConfig {
    pub fn new(design_points: usize, seed: u64) -> Self {
        Self {
            design_points,
            sequence: Sequence::default(),
            sobol_skip: 1,
            seed,
        }
    }
}

/// Estimates the feasibility probability at `cfg.design_points` design points.
///
/// Performs exactly `N_d * N_theta` model evaluations. All returned samples
/// are dead (there is no live set to maintain) and appear in sequence order.
pub fn run_mc<M: ProcessModel>(
    model: &M,
    space: &KnowledgeSpace,
    set: &UncertaintySet,
    cfg: &McConfig,
) -> Result<RunResult> {
    let designs: Vec<Vec<f64>> = match cfg.sequence {
        Sequence::Sobol => sobol_points(space.dim(), cfg.design_points, cfg.sobol_skip)?
            .into_iter()
            .map(|u| space.from_unit(&u))
            .collect(),
        Sequence::UniformRandom => {
            let mut rng = substream(cfg.seed, SubStream::DesignInit);
            (0..cfg.design_points)
                .map(|_| space.sample_uniform(&mut rng))
                .collect()
        }
    };

    let mut samples = Vec::with_capacity(designs.len());
    let mut model_evals = 0u64;
    for d in designs {
        let prob = feasibility_probability(model, &d, set)?;
        model_evals += set.len() as u64;
        samples.push(DesignSample {
            d,
            prob,
            status: Status::Dead,
        });
    }

    Ok(RunResult {
        samples,
        stats: RunStats {
            model_evals,
            iterations: 0,
            proposals_generated: 0,
            proposals_accepted: 0,
            proposals_rejected: 0,
            termination: Termination::Completed,
        },
        trace: Vec::new(),
    })
}
