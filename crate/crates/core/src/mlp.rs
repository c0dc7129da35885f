//! Feed-forward surrogate of the feasibility-probability map.
//!
//! A small fully-connected network is fitted by mini-batch gradient descent
//! on the labelled sample set produced by the samplers: inputs are design
//! points canonicalized to `[-1, 1]` per dimension, the single sigmoid output
//! is the predicted feasibility probability, and the loss is mean squared
//! error on the probabilities. Training is single-threaded and
//! seed-deterministic: the same configuration, dataset, and seed reproduce
//! the weights bit for bit. Labels are inherently noisy (they come from a
//! finite uncertainty discretization), so early stopping on a validation
//! split guards against fitting that noise.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::KnowledgeSpace;

const SCHEMA: &str = "feasibility-mlp/1";
const MIN_DATASET: usize = 10;

/// Hidden-layer activation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Activation {
    Tanh,
    Relu,
}

/// Training hyperparameters.
#[derive(Debug, Clone)]
pub struct MlpConfig {
    pub hidden_layers: Vec<usize>,
    pub hidden_activation: Activation,
    pub epochs: usize,
    pub batch_size: usize,
    pub learning_rate: f64,
    pub seed: u64,
    /// Fraction of the dataset held out for early stopping.
    pub validation_fraction: f64,
    /// Epochs without validation improvement before training stops.
    pub patience: usize,
}

impl MlpConfig {
    pub fn new(seed: u64) -> Self {
        Self {
            hidden_layers: vec![16, 32, 32, 16],
            hidden_activation: Activation::Tanh,
            epochs: 2000,
            batch_size: 32,
            learning_rate: 0.1,
            seed,
            validation_fraction: 0.2,
            patience: 50,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.hidden_layers.is_empty() || self.hidden_layers.iter().any(|&w| w == 0) {
            return Err(Error::InvalidInput(
                "need at least one hidden layer, all widths positive".into(),
            ));
        }
        if self.epochs == 0 || self.batch_size == 0 {
            return Err(Error::InvalidInput(
                "epochs and batch_size must be positive".into(),
            ));
        }
        if !(self.learning_rate > 0.0) || !self.learning_rate.is_finite() {
            return Err(Error::InvalidInput(format!(
                "learning_rate must be positive, got {}",
                self.learning_rate
            )));
        }
        if !(0.0..1.0).contains(&self.validation_fraction) {
            return Err(Error::InvalidInput(format!(
                "validation_fraction must lie in [0, 1), got {}",
                self.validation_fraction
            )));
        }
        Ok(())
    }
}

/// One dense layer; weights are row-major `rows x cols` (output x input).
#[derive(Debug, Clone, Serialize, Deserialize)]
struct Layer {
    rows: usize,
    cols: usize,
    weights: Vec<f64>,
    biases: Vec<f64>,
}

impl Layer {
    fn init<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> Self {
        // Scaled uniform fan-in initialization.
        let bound = 1.0 / (cols as f64).sqrt();
        let weights = (0..rows * cols)
            .map(|_| rng.random_range(-bound..bound))
            .collect();
        Self {
            rows,
            cols,
            weights,
            biases: vec![0.0; rows],
        }
    }
}

fn sigmoid(z: f64) -> f64 {
    1.0 / (1.0 + (-z).exp())
}

/// Summary of a completed fit.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrainingReport {
    pub final_train_mse: f64,
    pub final_validation_mse: f64,
    pub epochs_run: usize,
    pub best_epoch: usize,
    pub seed: u64,
}

/// A trained feasibility-map surrogate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FeasibilityMapMlp {
    schema: String,
    input_lower: Vec<f64>,
    input_upper: Vec<f64>,
    hidden_activation: Activation,
    layers: Vec<Layer>,
    training: TrainingReport,
}

impl FeasibilityMapMlp {
    /// Fits the network to `(design point, probability)` pairs.
    ///
    /// All points must lie in `space`, which also defines the input
    /// normalization stored with the model.
    pub fn fit(
        dataset: &[(Vec<f64>, f64)],
        space: &KnowledgeSpace,
        cfg: &MlpConfig,
    ) -> Result<Self> {
        cfg.validate()?;
        if dataset.len() < MIN_DATASET {
            return Err(Error::UndersizedDataset {
                got: dataset.len(),
                min: MIN_DATASET,
            });
        }
        let dim = space.dim();
        for (i, (d, prob)) in dataset.iter().enumerate() {
            if d.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: d.len(),
                });
            }
            if !space.contains(d) {
                return Err(Error::InvalidInput(format!(
                    "dataset point {i} lies outside the knowledge space"
                )));
            }
            if !prob.is_finite() || !(0.0..=1.0).contains(prob) {
                return Err(Error::InvalidInput(format!(
                    "dataset label {i} must be a probability, got {prob}"
                )));
            }
        }

        let inputs: Vec<Vec<f64>> = dataset
            .iter()
            .map(|(d, _)| normalize(d, space.lower(), space.upper()))
            .collect();
        let labels: Vec<f64> = dataset.iter().map(|(_, p)| *p).collect();

        let mut rng = ChaCha12Rng::seed_from_u64(cfg.seed);
        let mut sizes = Vec::with_capacity(cfg.hidden_layers.len() + 2);
        sizes.push(dim);
        sizes.extend_from_slice(&cfg.hidden_layers);
        sizes.push(1);
        let mut layers: Vec<Layer> = sizes
            .windows(2)
            .map(|w| Layer::init(w[1], w[0], &mut rng))
            .collect();

        let mut order: Vec<usize> = (0..dataset.len()).collect();
        order.shuffle(&mut rng);
        let n_val = ((dataset.len() as f64 * cfg.validation_fraction).round() as usize)
            .clamp(1, dataset.len() - 2);
        let (val_idx, train_idx) = order.split_at(n_val);

        let mut scratch = Scratch::new(&sizes);
        let mut grads: Vec<Layer> = layers
            .iter()
            .map(|l| Layer {
                rows: l.rows,
                cols: l.cols,
                weights: vec![0.0; l.weights.len()],
                biases: vec![0.0; l.rows],
            })
            .collect();

        let mut best_val = f64::INFINITY;
        let mut best_layers = layers.clone();
        let mut best_epoch = 0;
        let mut epochs_since_best = 0;
        let mut epochs_run = 0;
        let mut shuffled = train_idx.to_vec();

        for epoch in 1..=cfg.epochs {
            epochs_run = epoch;
            shuffled.shuffle(&mut rng);
            for batch in shuffled.chunks(cfg.batch_size) {
                for g in &mut grads {
                    g.weights.iter_mut().for_each(|v| *v = 0.0);
                    g.biases.iter_mut().for_each(|v| *v = 0.0);
                }
                let inv_batch = 1.0 / batch.len() as f64;
                for &i in batch {
                    let pred = forward(&layers, cfg.hidden_activation, &inputs[i], &mut scratch);
                    let dloss = 2.0 * (pred - labels[i]) * inv_batch;
                    backward(&layers, cfg.hidden_activation, &mut scratch, dloss, &mut grads);
                }
                for (layer, grad) in layers.iter_mut().zip(&grads) {
                    for (w, g) in layer.weights.iter_mut().zip(&grad.weights) {
                        *w -= cfg.learning_rate * g;
                    }
                    for (b, g) in layer.biases.iter_mut().zip(&grad.biases) {
                        *b -= cfg.learning_rate * g;
                    }
                }
            }

            let val_mse = mse(&layers, cfg.hidden_activation, &inputs, &labels, val_idx, &mut scratch);
            if !val_mse.is_finite() {
                return Err(Error::TrainingDiverged { epoch });
            }
            if val_mse < best_val {
                best_val = val_mse;
                best_layers.clone_from(&layers);
                best_epoch = epoch;
                epochs_since_best = 0;
            } else {
                epochs_since_best += 1;
                if epochs_since_best >= cfg.patience {
                    break;
                }
            }
        }

        let layers = best_layers;
        let final_train_mse = mse(
            &layers,
            cfg.hidden_activation,
            &inputs,
            &labels,
            train_idx,
            &mut scratch,
        );
        if !final_train_mse.is_finite() {
            return Err(Error::TrainingDiverged { epoch: epochs_run });
        }

        Ok(Self {
            schema: SCHEMA.to_string(),
            input_lower: space.lower().to_vec(),
            input_upper: space.upper().to_vec(),
            hidden_activation: cfg.hidden_activation,
            layers,
            training: TrainingReport {
                final_train_mse,
                final_validation_mse: best_val,
                epochs_run,
                best_epoch,
                seed: cfg.seed,
            },
        })
    }

    /// Predicted feasibility probability at `d`; always strictly inside (0, 1).
    ///
    /// Points outside the training knowledge space are accepted but
    /// extrapolated; see [`is_extrapolation`](Self::is_extrapolation).
    pub fn predict(&self, d: &[f64]) -> Result<f64> {
        if d.len() != self.input_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.input_dim(),
                got: d.len(),
            });
        }
        let x = normalize(d, &self.input_lower, &self.input_upper);
        let mut scratch = Scratch::new(&self.sizes());
        Ok(forward(&self.layers, self.hidden_activation, &x, &mut scratch))
    }

    /// Whether `d` lies outside the box the surrogate was trained on.
    pub fn is_extrapolation(&self, d: &[f64]) -> bool {
        d.len() != self.input_dim()
            || d.iter()
                .zip(self.input_lower.iter().zip(&self.input_upper))
                .any(|(x, (lo, hi))| x < lo || x > hi)
    }

    pub fn input_dim(&self) -> usize {
        self.input_lower.len()
    }

    /// Hidden-layer widths, input to output.
    pub fn hidden_layers(&self) -> Vec<usize> {
        self.layers[..self.layers.len() - 1]
            .iter()
            .map(|l| l.rows)
            .collect()
    }

    pub fn hidden_activation(&self) -> Activation {
        self.hidden_activation
    }

    pub fn training(&self) -> &TrainingReport {
        &self.training
    }

    pub fn normalization(&self) -> (&[f64], &[f64]) {
        (&self.input_lower, &self.input_upper)
    }

    fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![self.layers[0].cols];
        sizes.extend(self.layers.iter().map(|l| l.rows));
        sizes
    }

    /// Serializes the model as a versioned JSON document.
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let model: Self = serde_json::from_str(text)?;
        if model.schema != SCHEMA {
            return Err(Error::SchemaVersion {
                found: model.schema,
                expected: SCHEMA.to_string(),
            });
        }
        if model.layers.is_empty() || model.input_lower.len() != model.input_upper.len() {
            return Err(Error::InvalidInput("malformed model document".into()));
        }
        Ok(model)
    }
}

fn normalize(d: &[f64], lower: &[f64], upper: &[f64]) -> Vec<f64> {
    d.iter()
        .zip(lower.iter().zip(upper))
        .map(|(x, (lo, hi))| 2.0 * (x - lo) / (hi - lo) - 1.0)
        .collect()
}

/// Per-sample activation buffers: `acts[0]` is the input, `acts[l]` the
/// output of layer `l - 1`, plus a delta buffer per layer.
struct Scratch {
    acts: Vec<Vec<f64>>,
    deltas: Vec<Vec<f64>>,
}

impl Scratch {
    fn new(sizes: &[usize]) -> Self {
        Self {
            acts: sizes.iter().map(|&n| vec![0.0; n]).collect(),
            deltas: sizes[1..].iter().map(|&n| vec![0.0; n]).collect(),
        }
    }
}

fn forward(layers: &[Layer], activation: Activation, input: &[f64], scratch: &mut Scratch) -> f64 {
    scratch.acts[0].copy_from_slice(input);
    let last = layers.len() - 1;
    for (l, layer) in layers.iter().enumerate() {
        let (before, after) = scratch.acts.split_at_mut(l + 1);
        let prev = &before[l];
        let out = &mut after[0];
        for r in 0..layer.rows {
            let row = &layer.weights[r * layer.cols..(r + 1) * layer.cols];
            let z = layer.biases[r]
                + row
                    .iter()
                    .zip(prev.iter())
                    .map(|(w, a)| w * a)
                    .sum::<f64>();
            out[r] = if l == last {
                sigmoid(z)
            } else {
                match activation {
                    Activation::Tanh => z.tanh(),
                    Activation::Relu => z.max(0.0),
                }
            };
        }
    }
    scratch.acts[layers.len()][0]
}

/// Accumulates gradients for one sample into `grads`; `dloss` is the
/// derivative of the (already batch-averaged) loss with respect to the
/// prediction. Requires the activations of a preceding `forward` call.
fn backward(
    layers: &[Layer],
    activation: Activation,
    scratch: &mut Scratch,
    dloss: f64,
    grads: &mut [Layer],
) {
    let Scratch { acts, deltas } = scratch;
    let last = layers.len() - 1;
    let pred = acts[layers.len()][0];
    deltas[last][0] = dloss * pred * (1.0 - pred);

    for l in (0..layers.len()).rev() {
        let layer = &layers[l];
        let (lower_deltas, this_delta) = deltas.split_at_mut(l);
        let delta = &this_delta[0];
        let prev_act = &acts[l];
        let grad = &mut grads[l];
        for r in 0..layer.rows {
            let g = delta[r];
            grad.biases[r] += g;
            let grow = &mut grad.weights[r * layer.cols..(r + 1) * layer.cols];
            for (gw, a) in grow.iter_mut().zip(prev_act.iter()) {
                *gw += g * a;
            }
        }
        if l > 0 {
            let prev_delta = &mut lower_deltas[l - 1];
            prev_delta.iter_mut().for_each(|v| *v = 0.0);
            for r in 0..layer.rows {
                let g = delta[r];
                let row = &layer.weights[r * layer.cols..(r + 1) * layer.cols];
                for (pd, w) in prev_delta.iter_mut().zip(row.iter()) {
                    *pd += g * w;
                }
            }
            for (pd, a) in prev_delta.iter_mut().zip(prev_act.iter()) {
                *pd *= match activation {
                    Activation::Tanh => 1.0 - a * a,
                    Activation::Relu => {
                        if *a > 0.0 {
                            1.0
                        } else {
                            0.0
                        }
                    }
                };
            }
        }
    }
}

fn mse(
    layers: &[Layer],
    activation: Activation,
    inputs: &[Vec<f64>],
    labels: &[f64],
    subset: &[usize],
    scratch: &mut Scratch,
) -> f64 {
    let mut total = 0.0;
    for &i in subset {
        let pred = forward(layers, activation, &inputs[i], scratch);
        let err = pred - labels[i];
        total += err * err;
    }
    total / subset.len() as f64
}

/// Compares back-propagated gradients against central finite differences on a
/// small random network and dataset; returns the maximum relative error over
/// `probe_count` randomly chosen parameters.
pub fn gradient_check(cfg: &MlpConfig, probe_count: usize) -> Result<f64> {
    cfg.validate()?;
    let input_dim = 2;
    let mut rng = ChaCha12Rng::seed_from_u64(cfg.seed);
    let mut sizes = vec![input_dim];
    sizes.extend_from_slice(&cfg.hidden_layers);
    sizes.push(1);
    let mut layers: Vec<Layer> = sizes
        .windows(2)
        .map(|w| Layer::init(w[1], w[0], &mut rng))
        .collect();
    let inputs: Vec<Vec<f64>> = (0..8)
        .map(|_| (0..input_dim).map(|_| rng.random_range(-1.0..1.0)).collect())
        .collect();
    let labels: Vec<f64> = (0..8).map(|_| rng.random_range(0.05..0.95)).collect();
    let subset: Vec<usize> = (0..inputs.len()).collect();
    let mut scratch = Scratch::new(&sizes);

    let mut grads: Vec<Layer> = layers
        .iter()
        .map(|l| Layer {
            rows: l.rows,
            cols: l.cols,
            weights: vec![0.0; l.weights.len()],
            biases: vec![0.0; l.rows],
        })
        .collect();
    let inv_n = 1.0 / inputs.len() as f64;
    for i in 0..inputs.len() {
        let pred = forward(&layers, cfg.hidden_activation, &inputs[i], &mut scratch);
        backward(
            &layers,
            cfg.hidden_activation,
            &mut scratch,
            2.0 * (pred - labels[i]) * inv_n,
            &mut grads,
        );
    }

    let param_count: usize = layers.iter().map(|l| l.weights.len() + l.rows).sum();
    let mut probes: Vec<usize> = (0..param_count).collect();
    probes.shuffle(&mut rng);
    probes.truncate(probe_count.min(param_count));

    let mut max_rel_err = 0.0f64;
    for flat in probes {
        let analytic = get_flat(&grads, flat);
        let original = get_flat(&layers, flat);
        let h = 1e-6 * original.abs().max(1.0);
        set_flat(&mut layers, flat, original + h);
        let loss_plus = mse(
            &layers,
            cfg.hidden_activation,
            &inputs,
            &labels,
            &subset,
            &mut scratch,
        );
        set_flat(&mut layers, flat, original - h);
        let loss_minus = mse(
            &layers,
            cfg.hidden_activation,
            &inputs,
            &labels,
            &subset,
            &mut scratch,
        );
        set_flat(&mut layers, flat, original);
        let numeric = (loss_plus - loss_minus) / (2.0 * h);
        let rel = (analytic - numeric).abs() / analytic.abs().max(numeric.abs()).max(1e-8);
        max_rel_err = max_rel_err.max(rel);
    }
    Ok(max_rel_err)
}

fn get_flat(layers: &[Layer], mut index: usize) -> f64 {
    for l in layers {
        if index < l.weights.len() {
            return l.weights[index];
        }
        index -= l.weights.len();
        if index < l.biases.len() {
            return l.biases[index];
        }
        index -= l.biases.len();
    }
    unreachable!("flat index out of range")
}

fn set_flat(layers: &mut [Layer], mut index: usize, value: f64) {
    for l in layers {
        if index < l.weights.len() {
            l.weights[index] = value;
            return;
        }
        index -= l.weights.len();
        if index < l.biases.len() {
            l.biases[index] = value;
            return;
        }
        index -= l.biases.len();
    }
    unreachable!("flat index out of range")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Hand-derived chain rule for a 1-input, 1-hidden-unit, 1-output tanh
    /// network: z1 = w1 x + b1, a1 = tanh z1, z2 = w2 a1 + b2, p = sigmoid z2,
    /// L = (p - y)^2.
    #[test]
    fn backprop_matches_hand_derivation_for_minimal_network() {
        let (w1, b1, w2, b2) = (0.3, -0.1, 0.7, 0.2);
        let (x, y) = (0.5, 0.8);
        let layers = vec![
            Layer {
                rows: 1,
                cols: 1,
                weights: vec![w1],
                biases: vec![b1],
            },
            Layer {
                rows: 1,
                cols: 1,
                weights: vec![w2],
                biases: vec![b2],
            },
        ];
        let mut grads = vec![
            Layer {
                rows: 1,
                cols: 1,
                weights: vec![0.0],
                biases: vec![0.0],
            },
            Layer {
                rows: 1,
                cols: 1,
                weights: vec![0.0],
                biases: vec![0.0],
            },
        ];
        let mut scratch = Scratch::new(&[1, 1, 1]);
        let p = forward(&layers, Activation::Tanh, &[x], &mut scratch);
        backward(
            &layers,
            Activation::Tanh,
            &mut scratch,
            2.0 * (p - y),
            &mut grads,
        );

        let a1 = (w1 * x + b1).tanh();
        let p_hand = sigmoid(w2 * a1 + b2);
        let common = 2.0 * (p_hand - y) * p_hand * (1.0 - p_hand);
        assert!((p - p_hand).abs() < 1e-15);
        assert!((grads[1].weights[0] - common * a1).abs() < 1e-12);
        assert!((grads[1].biases[0] - common).abs() < 1e-12);
        assert!((grads[0].weights[0] - common * w2 * (1.0 - a1 * a1) * x).abs() < 1e-12);
        assert!((grads[0].biases[0] - common * w2 * (1.0 - a1 * a1)).abs() < 1e-12);
    }

    /// With all weights zero the prediction is sigmoid(0) = 0.5 everywhere,
    /// so the output-bias gradient vanishes exactly when the mean residual
    /// does.
    #[test]
    fn zero_network_output_bias_gradient_tracks_mean_residual() {
        let sizes = [1usize, 2, 1];
        let zero_layers = |_: ()| -> Vec<Layer> {
            sizes
                .windows(2)
                .map(|w| Layer {
                    rows: w[1],
                    cols: w[0],
                    weights: vec![0.0; w[0] * w[1]],
                    biases: vec![0.0; w[1]],
                })
                .collect()
        };
        let run = |labels: &[f64]| -> f64 {
            let layers = zero_layers(());
            let mut grads = zero_layers(());
            let mut scratch = Scratch::new(&sizes);
            let inv_n = 1.0 / labels.len() as f64;
            for (i, y) in labels.iter().enumerate() {
                let x = [i as f64 * 0.1];
                let p = forward(&layers, Activation::Tanh, &x, &mut scratch);
                backward(
                    &layers,
                    Activation::Tanh,
                    &mut scratch,
                    2.0 * (p - y) * inv_n,
                    &mut grads,
                );
            }
            grads[1].biases[0]
        };
        // Dyadic labels keep the mean residual exactly zero in f64.
        assert_eq!(run(&[0.25, 0.75]), 0.0);
        assert!(run(&[0.25, 0.5]).abs() > 1e-6);
    }
}
