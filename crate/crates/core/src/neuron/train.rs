use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::model::{gradient, gradient_finite_difference, loss, GeometricNeuron, Objective};
use super::Sample;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GradientMethod {
    Analytic,
    FiniteDifference,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    pub learning_rate: f64,
    pub epochs: usize,
    /// Samples per step; 0 means the whole set.
    pub batch: usize,
    /// Seeds minibatch shuffling.
    pub seed: u64,
    pub gradient: GradientMethod,
    /// Stop once the loss falls below this value.
    pub tolerance: f64,
    pub objective: Objective,
    /// Whether `Theta` is trained or held fixed.
    pub train_threshold: bool,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            learning_rate: 0.1,
            epochs: 5000,
            batch: 0,
            seed: 0,
            gradient: GradientMethod::Analytic,
            tolerance: 1e-12,
            objective: Objective::default(),
            train_threshold: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainReport {
    pub neuron: GeometricNeuron,
    /// Loss before the first step, then after every epoch.
    pub history: Vec<f64>,
    pub epochs_run: usize,
    pub converged: bool,
}

impl TrainReport {
    pub fn final_loss(&self) -> f64 {
        *self
            .history
            .last()
            .expect("history starts with the initial loss")
    }

    /// Neuron block followed by an `epoch loss` table; the last line holds
    /// the final loss.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# epochs_run = {}", self.epochs_run);
        let _ = writeln!(s, "# converged = {}", self.converged);
        let _ = writeln!(s, "# theta_norm = {:e}", self.neuron.threshold.coeff_norm());
        s.push_str(&self.neuron.to_text());
        s.push_str("epoch loss\n");
        for (i, l) in self.history.iter().enumerate() {
            let _ = writeln!(s, "{i} {l:e}");
        }
        s
    }
}

const DIVERGENCE: f64 = 1e12;

/// Fixed-step gradient descent. After each step the weight is projected
/// onto its parity and rescaled to `|<W W~>_0| = 1`.
pub fn train(n: &GeometricNeuron, samples: &[Sample], cfg: &TrainConfig) -> Result<TrainReport> {
    if !(cfg.learning_rate.is_finite() && cfg.learning_rate > 0.0) {
        return Err(Error::Domain("learning rate must be > 0".into()));
    }
    if samples.is_empty() {
        return Err(Error::Domain("training needs at least one sample".into()));
    }
    let mut neuron = n.clone();
    let full_batch = cfg.batch == 0 || cfg.batch >= samples.len();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut order: Vec<usize> = (0..samples.len()).collect();
    let grad = |nn: &GeometricNeuron, batch: &[Sample]| match cfg.gradient {
        GradientMethod::Analytic => gradient(nn, batch, &cfg.objective),
        GradientMethod::FiniteDifference => gradient_finite_difference(nn, batch, &cfg.objective),
    };

    let mut pending = if full_batch && cfg.epochs > 0 {
        Some(grad(&neuron, samples)?)
    } else {
        None
    };
    let mut history = vec![match &pending {
        Some(g) => g.loss,
        None => loss(&neuron, samples, cfg.objective.normalization)?,
    }];
    let mut epochs_run = 0;
    let mut converged = history[0] < cfg.tolerance;
    while epochs_run < cfg.epochs && !converged {
        if let Some(g) = pending.take() {
            step(&mut neuron, &g, cfg)?;
        } else {
            order.shuffle(&mut rng);
            for chunk in order.chunks(cfg.batch) {
                let batch: Vec<Sample> = chunk.iter().map(|&i| samples[i].clone()).collect();
                let g = grad(&neuron, &batch)?;
                step(&mut neuron, &g, cfg)?;
            }
        }
        epochs_run += 1;
        let current = if full_batch {
            let g = grad(&neuron, samples)?;
            let l = g.loss;
            pending = Some(g);
            l
        } else {
            loss(&neuron, samples, cfg.objective.normalization)?
        };
        history.push(current);
        if !current.is_finite() || current > DIVERGENCE {
            return Err(Error::Divergence {
                epoch: epochs_run,
                loss: current,
                history,
            });
        }
        converged = current < cfg.tolerance;
    }
    Ok(TrainReport {
        neuron,
        history,
        epochs_run,
        converged,
    })
}

fn step(n: &mut GeometricNeuron, g: &super::Gradient, cfg: &TrainConfig) -> Result<()> {
    n.weight -= &g.dw.scale(cfg.learning_rate);
    if cfg.train_threshold {
        n.threshold -= &g.dtheta.scale(cfg.learning_rate);
    }
    n.project_parity();
    n.normalize_gauge()
}
