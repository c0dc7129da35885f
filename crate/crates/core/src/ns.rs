//! Nested sampling over the knowledge space.
//!
//! A fixed-size set of live points is pushed through regions of increasing
//! feasibility probability: each iteration draws replacement proposals from
//! an enlarged ellipsoid enclosing the live points, and every proposal that
//! beats the current worst live point replaces it, archiving the replaced
//! point as dead. The loop ends when all live points meet the reliability
//! target, when progress stalls (the target region is likely empty), or when
//! the iteration budget runs out.
//!
//! With acceleration enabled, proposal evaluation is interrupted as soon as
//! the proposal provably cannot beat the iteration's replacement floor. The
//! interrupt never changes an accept/reject decision or a stored probability,
//! so accelerated and plain runs produce identical results from identical
//! seeds; only the evaluation count differs.

use crate::ellipsoid::{enclosing_ellipsoid_with_floor, sample_in_ellipsoid};
use crate::error::{Error, Result};
use crate::model::{feasibility_probability_bounded, BoundedOutcome, ProcessModel};
use crate::rng::{substream, SubStream};
use crate::sample::{DesignSample, RunResult, RunStats, Status, Termination, TraceRecord};
use crate::space::KnowledgeSpace;
use crate::uncertainty::UncertaintySet;

/// Tuning for a nested-sampling run.
#[derive(Debug, Clone)]
pub struct NsConfig {
    /// Reliability target `alpha*`. A value of 0 is the degenerate floor: the
    /// loop body never runs and the initial live set is returned as-is.
    pub alpha_star: f64,
    /// Number of live points `N_L` (at least 2).
    pub live_points: usize,
    /// Replacement proposals per iteration `N_R`.
    pub proposals_per_iteration: usize,
    /// Initial ellipsoid enlargement factor.
    pub initial_enlargement: f64,
    /// Per-iteration geometric decay rate of the enlargement factor.
    pub shrink_rate: f64,
    /// Number of consecutive iterations over which the worst live-point
    /// probability must improve by at least `stall_epsilon`.
    pub stall_window: usize,
    pub stall_epsilon: f64,
    pub max_iterations: u64,
    pub seed: u64,
    /// Interrupt provably losing proposal evaluations early.
    pub accelerate: bool,
}

impl NsConfig {
    /// Defaults: 8 proposals per iteration, enlargement 0.30 shrinking at
    /// rate 0.20, stall window 50 at epsilon 1e-4, 10_000 max iterations,
    /// acceleration on.
    pub fn new(alpha_star: f64, live_points: usize, seed: u64) -> Self {
        Self {
            alpha_star,
            live_points,
            proposals_per_iteration: 8,
            initial_enlargement: 0.30,
            shrink_rate: 0.20,
            stall_window: 50,
            stall_epsilon: 1e-4,
            max_iterations: 10_000,
            seed,
            accelerate: true,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.alpha_star) {
            return Err(Error::InvalidInput(format!(
                "alpha_star must lie in [0, 1], got {}",
                self.alpha_star
            )));
        }
        if self.live_points < 2 {
            return Err(Error::InvalidInput(format!(
                "live_points must be at least 2, got {}",
                self.live_points
            )));
        }
        if self.proposals_per_iteration == 0 {
            return Err(Error::InvalidInput(
                "proposals_per_iteration must be positive".into(),
            ));
        }
        if !(self.initial_enlargement >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "initial_enlargement must be non-negative, got {}",
                self.initial_enlargement
            )));
        }
        if !(0.0..1.0).contains(&self.shrink_rate) {
            return Err(Error::InvalidInput(format!(
                "shrink_rate must lie in [0, 1), got {}",
                self.shrink_rate
            )));
        }
        if self.stall_window == 0 {
            return Err(Error::InvalidInput("stall_window must be positive".into()));
        }
        if !(self.stall_epsilon > 0.0) {
            return Err(Error::InvalidInput(format!(
                "stall_epsilon must be positive, got {}",
                self.stall_epsilon
            )));
        }
        Ok(())
    }
}

struct LivePoint {
    d: Vec<f64>,
    prob: f64,
}

fn worst_index(live: &[LivePoint]) -> usize {
    let mut idx = 0;
    for (i, point) in live.iter().enumerate().skip(1) {
        if point.prob < live[idx].prob {
            idx = i;
        }
    }
    idx
}

/// Runs nested sampling and returns the archived dead points followed by the
/// final live set, with run counters and the per-iteration trace.
///
/// On [`Termination::ReachedAlpha`] at least `live_points` samples carry a
/// probability at or above `alpha_star` (more when several replacements land
/// during the final iteration).
pub fn run_ns<M: ProcessModel>(
    model: &M,
    space: &KnowledgeSpace,
    set: &UncertaintySet,
    cfg: &NsConfig,
) -> Result<RunResult> {
    cfg.validate()?;
    let mut rng_init = substream(cfg.seed, SubStream::DesignInit);
    let mut rng_prop = substream(cfg.seed, SubStream::Proposals);
    let min_semi_axis = 1e-12 * space.diagonal();
    let n_theta = set.len();

    let mut stats = RunStats {
        model_evals: 0,
        iterations: 0,
        proposals_generated: 0,
        proposals_accepted: 0,
        proposals_rejected: 0,
        termination: Termination::ReachedAlpha,
    };

    let mut live: Vec<LivePoint> = Vec::with_capacity(cfg.live_points);
    for _ in 0..cfg.live_points {
        let d = space.sample_uniform(&mut rng_init);
        let prob = match feasibility_probability_bounded(model, &d, set, 0.0)? {
            BoundedOutcome::Value { prob, .. } => prob,
            BoundedOutcome::RejectedBelowFloor { .. } => unreachable!("zero floor"),
        };
        stats.model_evals += n_theta as u64;
        live.push(LivePoint { d, prob });
    }

    let mut dead: Vec<DesignSample> = Vec::new();
    let mut trace: Vec<TraceRecord> = Vec::new();
    let mut p_min_history: Vec<f64> = Vec::new();
    let mut iteration: u64 = 0;

    let termination = loop {
        if live.iter().all(|p| p.prob >= cfg.alpha_star) {
            break Termination::ReachedAlpha;
        }
        if iteration >= cfg.max_iterations {
            break Termination::MaxIterations;
        }

        let floor = live[worst_index(&live)].prob;
        let enlargement =
            cfg.initial_enlargement * (1.0 - cfg.shrink_rate).powi(iteration.min(1 << 30) as i32);
        let live_cloud: Vec<Vec<f64>> = live.iter().map(|p| p.d.clone()).collect();
        let ellipsoid = enclosing_ellipsoid_with_floor(&live_cloud, enlargement, min_semi_axis)?;
        debug_assert!(live.iter().all(|p| ellipsoid.contains(&p.d, 1e-9)));

        for _ in 0..cfg.proposals_per_iteration {
            let proposal = sample_in_ellipsoid(&ellipsoid, space, &mut rng_prop)?;
            stats.proposals_generated += 1;
            // The interrupt floor is frozen for the whole batch; the
            // accept/reject test below always uses the current worst.
            let eval_floor = if cfg.accelerate { floor } else { 0.0 };
            let outcome = feasibility_probability_bounded(model, &proposal, set, eval_floor)?;
            stats.model_evals += outcome.evals() as u64;
            match outcome {
                BoundedOutcome::Value { prob, .. } => {
                    let worst = worst_index(&live);
                    if prob > live[worst].prob {
                        let replaced = std::mem::replace(
                            &mut live[worst],
                            LivePoint { d: proposal, prob },
                        );
                        dead.push(DesignSample {
                            d: replaced.d,
                            prob: replaced.prob,
                            status: Status::Dead,
                        });
                        stats.proposals_accepted += 1;
                    } else {
                        stats.proposals_rejected += 1;
                    }
                }
                BoundedOutcome::RejectedBelowFloor { .. } => {
                    stats.proposals_rejected += 1;
                }
            }
        }

        iteration += 1;
        stats.iterations = iteration;
        trace.push(TraceRecord {
            iteration,
            p_min: floor,
            enlargement,
            model_evals: stats.model_evals,
        });

        let p_min_now = live[worst_index(&live)].prob;
        p_min_history.push(p_min_now);
        let w = cfg.stall_window;
        if p_min_history.len() > w {
            let then = p_min_history[p_min_history.len() - 1 - w];
            if p_min_now - then < cfg.stall_epsilon {
                break Termination::StalledEmptyDs;
            }
        }
    };

    stats.termination = termination;
    let mut samples = dead;
    for point in live {
        samples.push(DesignSample {
            d: point.d,
            prob: point.prob,
            status: Status::Live,
        });
    }
    Ok(RunResult {
        samples,
        stats,
        trace,
    })
}

/// Characterizes the nominal design space: a single uncertainty scenario at
/// `theta_nominal` with the reliability target forced to 1, so every sample
/// probability is exactly 0 or 1.
pub fn run_nominal<M: ProcessModel>(
    model: &M,
    space: &KnowledgeSpace,
    theta_nominal: &[f64],
    cfg: &NsConfig,
) -> Result<RunResult> {
    let set = UncertaintySet::nominal(theta_nominal.to_vec())?;
    let mut nominal_cfg = cfg.clone();
    nominal_cfg.alpha_star = 1.0;
    run_ns(model, space, &set, &nominal_cfg)
}
