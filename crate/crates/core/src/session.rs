//! Incremental driver used by interactive front ends.
//!
//! A [`Session`] owns everything derived from the input sets and advances the
//! layout a few epochs at a time, so a caller can redraw between calls and
//! raise the stop signal from elsewhere.

use serde::{Deserialize, Serialize};

use crate::geometry::{area_scale_for_canvas, target_distance_matrix, CircleModel, Point};
use crate::optimizer::{epoch_step, LayoutState, RunConfig, RunStatus, StopSignal};
use crate::render::{render_svg, DiagramConfig};
use crate::scalar::Scalar;
use crate::setops::{build_region_table, IdSet, Mask, RegionTable};
use crate::Error;

/// Progress reported for one epoch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpochRecord<T> {
    pub epoch: usize,
    pub loss: T,
    pub lr: T,
}

#[derive(Debug, Clone)]
pub struct Session<T> {
    sets: Vec<IdSet>,
    table: RegionTable,
    model: CircleModel<T>,
    config: RunConfig<T>,
    state: LayoutState<T>,
    stop: StopSignal,
}

impl<T: Scalar> Session<T> {
    /// Builds the region table and circle model and places the circles on
    /// the starting ring.
    pub fn initialize(sets: Vec<IdSet>, config: RunConfig<T>) -> Result<Self, Error> {
        config.validate()?;
        let table = build_region_table(&sets)?;
        let sizes = table.sizes().to_vec();
        let largest = sizes.iter().copied().max().unwrap_or(1);
        let (w, h) = config.canvas;
        let area_scale = area_scale_for_canvas(largest, w, h);
        let model = target_distance_matrix(&table, &sizes, area_scale)?;
        let state = LayoutState::initialize(&model, &config)?;
        Ok(Session {
            sets,
            table,
            model,
            config,
            state,
            stop: StopSignal::new(),
        })
    }

    /// Runs up to `k` epochs. Returns early once a stop rule fires or the
    /// stop signal is seen; the signal is checked before every epoch.
    pub fn step(&mut self, k: usize) -> Result<Vec<EpochRecord<T>>, Error> {
        let mut records = Vec::new();
        for _ in 0..k {
            if !self.state.is_running() {
                break;
            }
            if self.stop.is_raised() {
                self.state.stop_by_user();
                break;
            }
            self.state = epoch_step(&self.state, &self.model, &self.config)?;
            records.push(EpochRecord {
                epoch: self.state.epoch,
                loss: self.state.epoch_loss,
                lr: self.state.lr,
            });
        }
        if self.state.is_running() && self.stop.is_raised() {
            self.state.stop_by_user();
        }
        Ok(records)
    }

    /// Steps until a stop rule fires.
    pub fn run_to_end(&mut self, mut on_epoch: impl FnMut(&EpochRecord<T>)) -> Result<RunStatus, Error> {
        while self.state.is_running() {
            for record in self.step(1)? {
                on_epoch(&record);
            }
        }
        Ok(self.state.status)
    }

    pub fn raise_stop(&self) {
        self.stop.raise();
    }

    /// Handle that can raise the stop signal from another thread.
    pub fn stop_signal(&self) -> StopSignal {
        self.stop.clone()
    }

    pub fn state(&self) -> &LayoutState<T> {
        &self.state
    }

    pub fn status(&self) -> RunStatus {
        self.state.status
    }

    pub fn positions(&self) -> &[Point<T>] {
        &self.state.positions
    }

    pub fn sets(&self) -> &[IdSet] {
        &self.sets
    }

    pub fn table(&self) -> &RegionTable {
        &self.table
    }

    pub fn model(&self) -> &CircleModel<T> {
        &self.model
    }

    pub fn config(&self) -> &RunConfig<T> {
        &self.config
    }

    /// Intersections shown to the user after redundant ones are pruned.
    pub fn regions(&self) -> &[(Mask, Vec<String>)] {
        self.table.display()
    }

    /// Renders the current positions; set colors come from the input sets.
    pub fn render_svg(&self, diagram: &DiagramConfig<T>) -> Result<String, Error> {
        let mut diagram = diagram.clone();
        diagram.set_colors = self.sets.iter().map(IdSet::color).collect();
        Ok(render_svg(&self.state.positions, &self.model, &self.table, &diagram)?)
    }
}
