use std::collections::HashSet;
use std::ffi::OsString;
use std::path::PathBuf;

use areavenn::render::LabelMode;
use areavenn::setops::{MAX_SETS, MIN_SETS};
use areavenn::Rgba;
use clap::error::ErrorKind;
use clap::{CommandFactory, Parser};

/// One `--set NAME=PATH[:#RRGGBB]` argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSpec {
    pub name: String,
    pub path: PathBuf,
    pub color: Option<Rgba>,
}

fn parse_set_spec(arg: &str) -> Result<SetSpec, String> {
    let (name, rest) = arg
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=PATH[:#RRGGBB], got {arg:?}"))?;
    if name.trim().is_empty() {
        return Err("set name must not be empty".into());
    }
    // A trailing ":#..." is a color; any other colon belongs to the path.
    let (path, color) = match rest.rsplit_once(':') {
        Some((path, color)) if color.starts_with('#') => {
            (path, Some(color.parse::<Rgba>().map_err(|e| e.to_string())?))
        }
        _ => (rest, None),
    };
    if path.is_empty() {
        return Err(format!("set {name:?} has no file path"));
    }
    Ok(SetSpec {
        name: name.to_string(),
        path: PathBuf::from(path),
        color,
    })
}

fn parse_color(arg: &str) -> Result<Rgba, String> {
    arg.parse::<Rgba>().map_err(|e| e.to_string())
}

fn parse_label_mode(arg: &str) -> Result<LabelMode, String> {
    arg.parse()
}

#[derive(Debug, Parser)]
#[command(name = "areavenn", version, about = "Draw an area-proportional Euler diagram from 2 to 10 ID lists")]
struct Args {
    /// Input set as NAME=PATH, optionally with a fill color: NAME=PATH:#RRGGBB
    #[arg(long = "set", value_name = "NAME=PATH[:#RRGGBB]", value_parser = parse_set_spec)]
    sets: Vec<SetSpec>,
    #[arg(long, default_value = "")]
    title: String,
    #[arg(long, default_value = "")]
    subtitle: String,
    /// Region labels: absolute, percent or none
    #[arg(long, default_value = "absolute", value_parser = parse_label_mode)]
    labels: LabelMode,
    #[arg(long, value_name = "#RRGGBB", default_value = "#ffffff", value_parser = parse_color)]
    bg: Rgba,
    #[arg(long, default_value_t = 800.0)]
    width: f64,
    #[arg(long, default_value_t = 800.0)]
    height: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 20_000)]
    max_epochs: usize,
    /// Polygon segments per circle when building region shapes
    #[arg(long, default_value_t = 256)]
    segments: usize,
    /// Label placement precision in canvas units
    #[arg(long, default_value_t = 1.0)]
    precision: f64,
    #[arg(long, value_name = "PATH.svg")]
    out: Option<PathBuf>,
    #[arg(long, value_name = "PATH.png")]
    png: Option<PathBuf>,
    #[arg(long, value_name = "PATH.json")]
    regions: Option<PathBuf>,
    /// Suppress progress output
    #[arg(long)]
    quiet: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliConfig {
    pub inputs: Vec<SetSpec>,
    pub title: String,
    pub subtitle: String,
    pub label_mode: LabelMode,
    pub background: Rgba,
    pub width: f64,
    pub height: f64,
    pub seed: u64,
    pub max_epochs: usize,
    pub segments: usize,
    pub precision: f64,
    pub svg_out: Option<PathBuf>,
    pub png_out: Option<PathBuf>,
    pub regions_out: Option<PathBuf>,
    pub quiet: bool,
}

impl CliConfig {
    pub fn outputs(&self) -> impl Iterator<Item = &PathBuf> {
        [&self.svg_out, &self.png_out, &self.regions_out]
            .into_iter()
            .flatten()
    }
}

fn usage(message: String) -> clap::Error {
    Args::command().error(ErrorKind::ValueValidation, message)
}

/// Parses and validates the command line. The first item is the program name.
pub fn parse_cli<I, T>(args: I) -> Result<CliConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let a = Args::try_parse_from(args)?;
    if !(MIN_SETS..=MAX_SETS).contains(&a.sets.len()) {
        return Err(usage(format!(
            "a diagram has two to ten circles; got {} --set argument(s)",
            a.sets.len()
        )));
    }
    let mut names = HashSet::new();
    for s in &a.sets {
        if !names.insert(s.name.as_str()) {
            return Err(usage(format!("set name {:?} is used twice", s.name)));
        }
    }
    if !(a.width > 0.0 && a.width.is_finite() && a.height > 0.0 && a.height.is_finite()) {
        return Err(usage("--width and --height must be positive".into()));
    }
    if !(a.precision > 0.0 && a.precision.is_finite()) {
        return Err(usage("--precision must be positive".into()));
    }
    if a.segments < 16 {
        return Err(usage("--segments must be at least 16".into()));
    }
    if a.max_epochs == 0 {
        return Err(usage("--max-epochs must be at least 1".into()));
    }
    let config = CliConfig {
        inputs: a.sets,
        title: a.title,
        subtitle: a.subtitle,
        label_mode: a.labels,
        background: a.bg,
        width: a.width,
        height: a.height,
        seed: a.seed,
        max_epochs: a.max_epochs,
        segments: a.segments,
        precision: a.precision,
        svg_out: a.out,
        png_out: a.png,
        regions_out: a.regions,
        quiet: a.quiet,
    };
    let outputs: Vec<&PathBuf> = config.outputs().collect();
    if outputs.is_empty() {
        return Err(usage("nothing to write: give at least one of --out, --png, --regions".into()));
    }
    let mut seen = HashSet::new();
    for p in outputs {
        if !seen.insert(p) || config.inputs.iter().any(|s| &s.path == p) {
            return Err(usage(format!("path {} is used more than once", p.display())));
        }
    }
    Ok(config)
}
