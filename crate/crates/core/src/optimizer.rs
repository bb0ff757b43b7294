//! Gradient-descent placement of circle centers.
//!
//! Every epoch is one full-batch update of all center coordinates against the
//! pairwise distance mismatch. The learning rate starts at `10·n` and is then
//! reset from the loss each epoch (`loss / (10·n)`, capped at 100). A run ends
//! when the loss drops below the threshold, when the caller raises the stop
//! signal, after five consecutive loss increases, or at the epoch cap; every
//! ending other than convergence restores the lowest-loss snapshot.

use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{CircleModel, Point};
use crate::scalar::Scalar;

/// Consecutive loss increases that end a run.
pub const MAX_RISES: u32 = 5;
/// Upper bound of the learning-rate schedule.
pub const LR_CAP: f64 = 100.0;
pub const DEFAULT_MAX_EPOCHS: usize = 20_000;
pub const DEFAULT_LOSS_THRESHOLD: f64 = 1.0;
/// Halvings tried when an update produces non-finite coordinates.
const MAX_HALVINGS: usize = 40;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OptimizerError {
    #[error("layout diverged at epoch {epoch}: no finite update after {MAX_HALVINGS} learning-rate halvings")]
    Divergence { epoch: usize },
    #[error("run is not active (status {0})")]
    NotRunning(RunStatus),
    #[error("invalid run configuration: {0}")]
    Config(String),
}

/// How pairwise distance errors are aggregated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LossKind {
    /// `Σ |d_obs − d_target|`. The learning-rate schedule is stable with this form.
    #[default]
    Absolute,
    /// `Σ (d_obs − d_target)²`. Overshoots under the default schedule.
    Squared,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Running,
    Converged,
    StoppedByUser,
    RevertedAfterRises,
    EpochLimit,
}

impl RunStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RunStatus::Running => "running",
            RunStatus::Converged => "converged",
            RunStatus::StoppedByUser => "stopped_by_user",
            RunStatus::RevertedAfterRises => "reverted_after_rises",
            RunStatus::EpochLimit => "epoch_limit",
        }
    }
}

impl fmt::Display for RunStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig<T> {
    /// Picks the separation direction for coincident centers. Seed 0 is `+x`.
    pub seed: u64,
    pub max_epochs: usize,
    pub loss_threshold: T,
    /// Canvas `(width, height)` in diagram units.
    pub canvas: (T, T),
    pub loss: LossKind,
}

impl<T: Scalar> Default for RunConfig<T> {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            max_epochs: DEFAULT_MAX_EPOCHS,
            loss_threshold: T::lit(DEFAULT_LOSS_THRESHOLD),
            canvas: (T::lit(800.0), T::lit(800.0)),
            loss: LossKind::default(),
        }
    }
}

impl<T: Scalar> RunConfig<T> {
    pub fn validate(&self) -> Result<(), OptimizerError> {
        if self.max_epochs < 1 {
            return Err(OptimizerError::Config("max_epochs must be at least 1".into()));
        }
        if !(self.loss_threshold > T::zero()) {
            return Err(OptimizerError::Config("loss threshold must be positive".into()));
        }
        let (w, h) = self.canvas;
        if !(w > T::zero() && h > T::zero() && w.is_finite() && h.is_finite()) {
            return Err(OptimizerError::Config("canvas dimensions must be positive".into()));
        }
        Ok(())
    }
}

/// Lowest-loss positions seen so far.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Snapshot<T> {
    pub positions: Vec<Point<T>>,
    pub loss: T,
    pub epoch: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayoutState<T> {
    pub positions: Vec<Point<T>>,
    pub epoch: usize,
    pub loss: T,
    /// Loss observed by the latest epoch, before any revert.
    pub epoch_loss: T,
    /// Learning rate for the next epoch.
    pub lr: T,
    pub rise_count: u32,
    pub best: Snapshot<T>,
    pub status: RunStatus,
}

pub fn initial_learning_rate<T: Scalar>(n: usize) -> T {
    T::lit(10.0) * T::from_count(n)
}

pub fn next_learning_rate<T: Scalar>(loss: T, n: usize) -> T {
    (loss / (T::lit(10.0) * T::from_count(n))).min(T::lit(LR_CAP))
}

impl<T: Scalar> LayoutState<T> {
    /// Ring placement at epoch 0.
    pub fn initialize(model: &CircleModel<T>, config: &RunConfig<T>) -> Result<Self, OptimizerError> {
        config.validate()?;
        let order = placement_order(model);
        let positions = initial_positions(&order, config.canvas, model);
        let loss = Objective::new(model, config).loss(&positions);
        let status = if loss < config.loss_threshold {
            RunStatus::Converged
        } else {
            RunStatus::Running
        };
        Ok(LayoutState {
            best: Snapshot {
                positions: positions.clone(),
                loss,
                epoch: 0,
            },
            positions,
            epoch: 0,
            loss,
            epoch_loss: loss,
            lr: initial_learning_rate(model.n()),
            rise_count: 0,
            status,
        })
    }

    /// Applies one epoch's outcome: bookkeeping, learning-rate schedule and
    /// stop rules. `n` is the number of circles.
    pub fn record_epoch(&mut self, positions: Vec<Point<T>>, loss: T, n: usize, config: &RunConfig<T>) {
        let previous = self.loss;
        self.positions = positions;
        self.loss = loss;
        self.epoch_loss = loss;
        self.epoch += 1;
        self.lr = next_learning_rate(loss, n);
        self.rise_count = if loss > previous { self.rise_count + 1 } else { 0 };
        if loss < self.best.loss {
            self.best = Snapshot {
                positions: self.positions.clone(),
                loss,
                epoch: self.epoch,
            };
        }
        if loss < config.loss_threshold {
            self.status = RunStatus::Converged;
        } else if self.rise_count >= MAX_RISES {
            self.revert_to_best(RunStatus::RevertedAfterRises);
        } else if self.epoch >= config.max_epochs {
            self.revert_to_best(RunStatus::EpochLimit);
        }
    }

    /// Ends a running layout at the caller's request. No-op once finished.
    pub fn stop_by_user(&mut self) {
        if self.status == RunStatus::Running {
            self.revert_to_best(RunStatus::StoppedByUser);
        }
    }

    fn revert_to_best(&mut self, status: RunStatus) {
        self.positions = self.best.positions.clone();
        self.loss = self.best.loss;
        self.status = status;
    }

    pub fn is_running(&self) -> bool {
        self.status == RunStatus::Running
    }
}

/// Largest circle first, then greedily the unplaced circle nearest (by target
/// distance) to the one placed just before. Ties go to the lower index.
pub fn placement_order<T: Scalar>(model: &CircleModel<T>) -> Vec<usize> {
    let n = model.n();
    if n == 0 {
        return Vec::new();
    }
    let mut first = 0;
    for i in 1..n {
        if model.radius(i) > model.radius(first) {
            first = i;
        }
    }
    let mut order = vec![first];
    let mut placed = vec![false; n];
    placed[first] = true;
    while order.len() < n {
        let prev = *order.last().unwrap();
        let mut next: Option<usize> = None;
        for j in (0..n).filter(|&j| !placed[j]) {
            if next.is_none_or(|k| model.target(prev, j) < model.target(prev, k)) {
                next = Some(j);
            }
        }
        let next = next.unwrap();
        placed[next] = true;
        order.push(next);
    }
    order
}

/// Centers on a ring of radius `min(w, h) / 4` around the canvas center, the
/// k-th circle of `order` at `90° − 360°·k/n` (y axis up). Indexed by circle.
pub fn initial_positions<T: Scalar>(
    order: &[usize],
    canvas: (T, T),
    model: &CircleModel<T>,
) -> Vec<Point<T>> {
    let n = model.n();
    let (w, h) = canvas;
    let center = Point::new(T::HALF * w, T::HALF * h);
    let ring = w.min(h) / T::lit(4.0);
    let mut positions = vec![center; n];
    for (k, &i) in order.iter().enumerate() {
        let degrees = T::lit(90.0) - T::lit(360.0) * T::from_count(k) / T::from_count(n);
        let (s, c) = degrees.to_radians().sin_cos();
        positions[i] = Point::new(center.x + ring * c, center.y + ring * s);
    }
    positions
}

/// Unit vector used as the pair direction when two centers coincide.
pub fn tie_direction<T: Scalar>(seed: u64) -> Point<T> {
    if seed == 0 {
        return Point::new(T::one(), T::zero());
    }
    let angle: f64 = ChaCha8Rng::seed_from_u64(seed).random_range(0.0..std::f64::consts::TAU);
    Point::new(T::lit(angle.cos()), T::lit(angle.sin()))
}

/// Loss and gradient over a fixed model.
#[derive(Debug, Clone, Copy)]
pub struct Objective<'a, T> {
    model: &'a CircleModel<T>,
    kind: LossKind,
    tie: Point<T>,
}

impl<'a, T: Scalar> Objective<'a, T> {
    pub fn new(model: &'a CircleModel<T>, config: &RunConfig<T>) -> Self {
        Objective {
            model,
            kind: config.loss,
            tie: tie_direction(config.seed),
        }
    }

    pub fn with_kind(model: &'a CircleModel<T>, kind: LossKind) -> Self {
        Objective {
            model,
            kind,
            tie: Point::new(T::one(), T::zero()),
        }
    }

    pub fn kind(&self) -> LossKind {
        self.kind
    }

    pub fn loss(&self, positions: &[Point<T>]) -> T {
        let n = self.model.n();
        let mut total = T::zero();
        for i in 0..n {
            for j in i + 1..n {
                let e = positions[i].distance(&positions[j]) - self.model.target(i, j);
                total = total
                    + match self.kind {
                        LossKind::Absolute => e.abs(),
                        LossKind::Squared => e * e,
                    };
            }
        }
        total
    }

    /// Analytic gradient with respect to every center coordinate.
    pub fn gradient(&self, positions: &[Point<T>]) -> Vec<Point<T>> {
        let n = self.model.n();
        let mut grad = vec![Point::new(T::zero(), T::zero()); n];
        for i in 0..n {
            for j in i + 1..n {
                let (dx, dy) = (positions[i].x - positions[j].x, positions[i].y - positions[j].y);
                let d = dx.hypot(dy);
                // Unit vector from j towards i.
                let (ux, uy) = if d > T::zero() {
                    (dx / d, dy / d)
                } else {
                    (self.tie.x, self.tie.y)
                };
                let e = d - self.model.target(i, j);
                let w = match self.kind {
                    LossKind::Absolute => sign(e),
                    LossKind::Squared => T::TWO * e,
                };
                grad[i].x = grad[i].x + w * ux;
                grad[i].y = grad[i].y + w * uy;
                grad[j].x = grad[j].x - w * ux;
                grad[j].y = grad[j].y - w * uy;
            }
        }
        grad
    }
}

fn sign<T: Scalar>(v: T) -> T {
    if v > T::zero() {
        T::one()
    } else if v < T::zero() {
        -T::one()
    } else {
        T::zero()
    }
}

/// Pairwise distance loss under `kind`.
pub fn loss<T: Scalar>(positions: &[Point<T>], model: &CircleModel<T>, kind: LossKind) -> T {
    Objective::with_kind(model, kind).loss(positions)
}

/// Gradient of [`loss`]; coincident centers separate along `+x`.
pub fn loss_gradient<T: Scalar>(
    positions: &[Point<T>],
    model: &CircleModel<T>,
    kind: LossKind,
) -> Vec<Point<T>> {
    Objective::with_kind(model, kind).gradient(positions)
}

/// One full-batch gradient step followed by the schedule and stop-rule update.
pub fn epoch_step<T: Scalar>(
    state: &LayoutState<T>,
    model: &CircleModel<T>,
    config: &RunConfig<T>,
) -> Result<LayoutState<T>, OptimizerError> {
    if !state.is_running() {
        return Err(OptimizerError::NotRunning(state.status));
    }
    let objective = Objective::new(model, config);
    let grad = objective.gradient(&state.positions);
    let mut lr = state.lr;
    for _ in 0..=MAX_HALVINGS {
        let moved: Vec<Point<T>> = state
            .positions
            .iter()
            .zip(&grad)
            .map(|(p, g)| Point::new(p.x - lr * g.x, p.y - lr * g.y))
            .collect();
        if moved.iter().all(Point::is_finite) {
            let loss = objective.loss(&moved);
            if loss.is_finite() {
                let mut next = state.clone();
                next.record_epoch(moved, loss, model.n(), config);
                return Ok(next);
            }
        }
        lr = T::HALF * lr;
    }
    Err(OptimizerError::Divergence {
        epoch: state.epoch + 1,
    })
}

/// Monotonic cross-context stop flag, checked between epochs.
#[derive(Debug, Clone, Default)]
pub struct StopSignal(Arc<AtomicBool>);

impl StopSignal {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn raise(&self) {
        self.0.store(true, Ordering::SeqCst);
    }

    pub fn is_raised(&self) -> bool {
        self.0.load(Ordering::SeqCst)
    }
}

/// Runs epochs from the ring initialization until a stop rule fires.
/// `on_epoch` sees the state after every epoch.
pub fn run<T: Scalar>(
    model: &CircleModel<T>,
    config: &RunConfig<T>,
    stop: &StopSignal,
    mut on_epoch: impl FnMut(&LayoutState<T>),
) -> Result<LayoutState<T>, OptimizerError> {
    let mut state = LayoutState::initialize(model, config)?;
    while state.is_running() {
        if stop.is_raised() {
            state.stop_by_user();
            break;
        }
        state = epoch_step(&state, model, config)?;
        on_epoch(&state);
    }
    Ok(state)
}
