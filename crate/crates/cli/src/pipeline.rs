use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use areavenn::color::palette_color;
use areavenn::render::rasterize_png;
use areavenn::{DiagramConfig, Error, IdSet, OptimizerError, RunConfig, RunStatus, Session, StopSignal};
use thiserror::Error;

use crate::args::CliConfig;
use crate::report::dump_regions;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Engine(#[from] Error),
}

impl PipelineError {
    /// 3 for a diverged layout, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Engine(Error::Optimizer(OptimizerError::Divergence { .. })) => 3,
            _ => 1,
        }
    }
}

fn read_sets(config: &CliConfig) -> Result<Vec<IdSet>, PipelineError> {
    config
        .inputs
        .iter()
        .enumerate()
        .map(|(i, spec)| {
            let text = fs::read_to_string(&spec.path).map_err(|source| PipelineError::Read {
                path: spec.path.clone(),
                source,
            })?;
            let color = spec.color.unwrap_or_else(|| palette_color(i));
            Ok(IdSet::parse(spec.name.clone(), color, &text).map_err(Error::from)?)
        })
        .collect()
}

fn write_file(path: &Path, bytes: &[u8], out: &mut dyn Write) -> Result<(), PipelineError> {
    fs::write(path, bytes).map_err(|source| PipelineError::Write {
        path: path.to_path_buf(),
        source,
    })?;
    let _ = writeln!(out, "wrote {}", path.display());
    Ok(())
}

pub fn diagram_config(config: &CliConfig) -> DiagramConfig<f64> {
    DiagramConfig {
        title: config.title.clone(),
        subtitle: config.subtitle.clone(),
        label_mode: config.label_mode,
        background: config.background,
        width: config.width,
        height: config.height,
        segments: config.segments,
        precision: config.precision,
        ..DiagramConfig::default()
    }
}

/// Reads the inputs, runs the layout to completion and writes every
/// requested output. Progress goes to `diag`, write confirmations to `out`.
/// Raising `stop` ends the run early with the best layout so far, which is
/// still written.
pub fn run_pipeline(
    config: &CliConfig,
    stop: &StopSignal,
    out: &mut dyn Write,
    diag: &mut dyn Write,
) -> Result<RunStatus, PipelineError> {
    let sets = read_sets(config)?;
    let run = RunConfig {
        seed: config.seed,
        max_epochs: config.max_epochs,
        canvas: (config.width, config.height),
        ..RunConfig::default()
    };
    let mut session = Session::initialize(sets, run)?;
    while session.state().is_running() {
        if stop.is_raised() {
            session.raise_stop();
        }
        for r in session.step(1)? {
            if !config.quiet {
                let _ = writeln!(diag, "epoch={} loss={} lr={}", r.epoch, r.loss, r.lr);
            }
        }
    }
    let state = session.state();
    if !config.quiet {
        let _ = writeln!(diag, "status={} epochs={} loss={}", state.status, state.epoch, state.loss);
    }

    if config.svg_out.is_some() || config.png_out.is_some() {
        let svg = session.render_svg(&diagram_config(config))?;
        if let Some(path) = &config.svg_out {
            write_file(path, svg.as_bytes(), out)?;
        }
        if let Some(path) = &config.png_out {
            let png = rasterize_png(&svg, 1.0).map_err(Error::from)?;
            write_file(path, &png, out)?;
        }
    }
    if let Some(path) = &config.regions_out {
        let json = dump_regions(session.table(), session.model(), state);
        write_file(path, json.as_bytes(), out)?;
    }
    Ok(state.status)
}
