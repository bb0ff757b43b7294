//! Diagram composition and output.
//!
//! The optimizer works in canvas units around the canvas center; rendering
//! first fits the layout into the drawable box (uniform scale plus
//! translation, so every area and distance ratio survives), then places a
//! count label at the pole of each realized exclusive region.

mod raster;
mod svg;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::color::{palette_color, Rgba};
use crate::geometry::{
    pole_of_inaccessibility, region_polygons, Circle, CircleModel, GeometryError, Point, Region,
    DEFAULT_SEGMENTS,
};
use crate::scalar::Scalar;
use crate::setops::{Mask, RegionTable};

pub use raster::rasterize_png;
pub use svg::to_svg;

#[derive(Debug, Error)]
pub enum RenderError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("layout has {positions} positions for {circles} circles")]
    Mismatch { positions: usize, circles: usize },
    #[error("invalid vector document: {0}")]
    Document(String),
    #[error("cannot rasterize: {0}")]
    Raster(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LabelMode {
    #[default]
    Absolute,
    Percent,
    None,
}

impl FromStr for LabelMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "absolute" => Ok(LabelMode::Absolute),
            "percent" => Ok(LabelMode::Percent),
            "none" => Ok(LabelMode::None),
            other => Err(format!("unknown label mode {other:?} (absolute|percent|none)")),
        }
    }
}

impl fmt::Display for LabelMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LabelMode::Absolute => "absolute",
            LabelMode::Percent => "percent",
            LabelMode::None => "none",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagramConfig<T> {
    pub title: String,
    pub subtitle: String,
    pub label_mode: LabelMode,
    /// One color per set; missing entries fall back to the default palette.
    pub set_colors: Vec<Rgba>,
    pub background: Rgba,
    pub text_color: Rgba,
    pub width: T,
    pub height: T,
    /// Multiplies each set color's alpha.
    pub fill_opacity: T,
    pub title_font_size: T,
    pub subtitle_font_size: T,
    pub label_font_size: T,
    pub stroke_width: T,
    /// Fraction of the canvas kept clear on each side.
    pub margin: T,
    pub segments: usize,
    /// Pole search precision in canvas units.
    pub precision: T,
}

impl<T: Scalar> Default for DiagramConfig<T> {
    fn default() -> Self {
        DiagramConfig {
            title: String::new(),
            subtitle: String::new(),
            label_mode: LabelMode::Absolute,
            set_colors: Vec::new(),
            background: Rgba::WHITE,
            text_color: Rgba::BLACK,
            width: T::lit(800.0),
            height: T::lit(800.0),
            fill_opacity: T::HALF,
            title_font_size: T::lit(24.0),
            subtitle_font_size: T::lit(16.0),
            label_font_size: T::lit(14.0),
            stroke_width: T::lit(2.0),
            margin: T::lit(0.08),
            segments: DEFAULT_SEGMENTS,
            precision: T::one(),
        }
    }
}

impl<T: Scalar> DiagramConfig<T> {
    pub fn set_color(&self, index: usize) -> Rgba {
        self.set_colors
            .get(index)
            .copied()
            .unwrap_or_else(|| palette_color(index))
    }

    /// Height of the title/subtitle band below the top margin.
    pub fn header_height(&self) -> T {
        let line = T::lit(1.5);
        let mut h = T::zero();
        if !self.title.is_empty() {
            h = h + line * self.title_font_size;
        }
        if !self.subtitle.is_empty() {
            h = h + line * self.subtitle_font_size;
        }
        h
    }

    /// Drawable box `(min, max)` for the circles.
    pub fn plot_box(&self) -> (Point<T>, Point<T>) {
        let (mx, my) = (self.margin * self.width, self.margin * self.height);
        (
            Point::new(mx, my + self.header_height()),
            Point::new(self.width - mx, self.height - my),
        )
    }
}

/// Uniform scale followed by translation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Viewport<T> {
    pub scale: T,
    pub offset: Point<T>,
}

impl<T: Scalar> Viewport<T> {
    pub fn apply(&self, p: &Point<T>) -> Point<T> {
        Point::new(self.scale * p.x + self.offset.x, self.scale * p.y + self.offset.y)
    }

    pub fn circles(&self, positions: &[Point<T>], radii: &[T]) -> Vec<Circle<T>> {
        positions
            .iter()
            .zip(radii)
            .map(|(p, &r)| Circle::new(self.apply(p), self.scale * r))
            .collect()
    }
}

/// Maps the bounding box of the circles onto the center of `plot_box`, as
/// large as fits.
pub fn fit_viewport<T: Scalar>(
    positions: &[Point<T>],
    radii: &[T],
    plot_box: (Point<T>, Point<T>),
) -> Viewport<T> {
    let (mut lo, mut hi) = (
        Point::new(T::infinity(), T::infinity()),
        Point::new(T::neg_infinity(), T::neg_infinity()),
    );
    for (p, &r) in positions.iter().zip(radii) {
        lo.x = lo.x.min(p.x - r);
        lo.y = lo.y.min(p.y - r);
        hi.x = hi.x.max(p.x + r);
        hi.y = hi.y.max(p.y + r);
    }
    let (bmin, bmax) = plot_box;
    let (bw, bh) = (hi.x - lo.x, hi.y - lo.y);
    let scale = if bw > T::zero() && bh > T::zero() {
        ((bmax.x - bmin.x) / bw).min((bmax.y - bmin.y) / bh)
    } else {
        T::one()
    };
    let layout_center = Point::new(T::HALF * (lo.x + hi.x), T::HALF * (lo.y + hi.y));
    let box_center = Point::new(T::HALF * (bmin.x + bmax.x), T::HALF * (bmin.y + bmax.y));
    Viewport {
        scale,
        offset: Point::new(
            box_center.x - scale * layout_center.x,
            box_center.y - scale * layout_center.y,
        ),
    }
}

/// Region label text. Percentages use the union as denominator and round
/// half up to one decimal.
pub fn format_label(count: usize, union_size: usize, mode: LabelMode) -> String {
    match mode {
        LabelMode::Absolute => count.to_string(),
        LabelMode::Percent => {
            let union = union_size.max(1) as u128;
            let tenths = (2000 * count as u128 + union) / (2 * union);
            format!("{}.{}%", tenths / 10, tenths % 10)
        }
        LabelMode::None => String::new(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LabelKind {
    RegionCount,
    SetTitle,
    Title,
    Subtitle,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabelSpec<T> {
    pub text: String,
    pub anchor: Point<T>,
    pub kind: LabelKind,
    /// Region for count labels, the single set for set titles.
    pub mask: Option<Mask>,
}

fn clamp_to_canvas<T: Scalar>(p: Point<T>, config: &DiagramConfig<T>) -> Point<T> {
    Point::new(
        p.x.max(T::zero()).min(config.width),
        p.y.max(T::zero()).min(config.height),
    )
}

/// Count labels at region poles, set titles, then title and subtitle.
pub fn compute_labels<T: Scalar>(
    table: &RegionTable,
    regions: &BTreeMap<Mask, Region<T>>,
    circles: &[Circle<T>],
    config: &DiagramConfig<T>,
) -> Result<Vec<LabelSpec<T>>, RenderError> {
    let mut labels = Vec::new();
    let mut poles = BTreeMap::new();
    for (&mask, region) in regions {
        if let Some(part) = region.largest_part() {
            match pole_of_inaccessibility(part, config.precision) {
                Ok(pole) => {
                    poles.insert(mask, pole.point);
                }
                Err(GeometryError::Degenerate(_)) => {}
                Err(e) => return Err(e.into()),
            }
        }
    }

    let counts_shown = config.label_mode != LabelMode::None;
    if counts_shown {
        let mut masks: Vec<Mask> = table.exclusive().keys().copied().collect();
        masks.sort_by_key(|m| m.display_key());
        for mask in masks {
            if let Some(&anchor) = poles.get(&mask) {
                labels.push(LabelSpec {
                    text: format_label(table.exclusive_count(mask), table.union_size(), config.label_mode),
                    anchor,
                    kind: LabelKind::RegionCount,
                    mask: Some(mask),
                });
            }
        }
    }

    let line = T::lit(1.2) * config.label_font_size;
    for (i, name) in table.names().iter().enumerate() {
        let own = Mask::single(i);
        let anchor = match poles.get(&own) {
            Some(p) if counts_shown => Point::new(p.x, p.y - line),
            Some(p) => *p,
            None => {
                let c = &circles[i];
                Point::new(c.center.x, c.center.y - c.radius - T::HALF * line)
            }
        };
        labels.push(LabelSpec {
            text: name.clone(),
            anchor: clamp_to_canvas(anchor, config),
            kind: LabelKind::SetTitle,
            mask: Some(own),
        });
    }

    let center_x = T::HALF * config.width;
    let mut baseline = T::HALF * config.margin * config.height;
    if !config.title.is_empty() {
        baseline = baseline + config.title_font_size;
        labels.push(LabelSpec {
            text: config.title.clone(),
            anchor: Point::new(center_x, baseline),
            kind: LabelKind::Title,
            mask: None,
        });
    }
    if !config.subtitle.is_empty() {
        baseline = baseline + T::lit(1.4) * config.subtitle_font_size;
        labels.push(LabelSpec {
            text: config.subtitle.clone(),
            anchor: Point::new(center_x, baseline),
            kind: LabelKind::Subtitle,
            mask: None,
        });
    }
    Ok(labels)
}

/// Everything needed to draw the diagram, in canvas coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagram<T> {
    pub width: T,
    pub height: T,
    pub viewport: Viewport<T>,
    pub circles: Vec<Circle<T>>,
    pub regions: BTreeMap<Mask, Region<T>>,
    pub labels: Vec<LabelSpec<T>>,
}

/// Fits the layout and places all labels.
pub fn compose<T: Scalar>(
    positions: &[Point<T>],
    model: &CircleModel<T>,
    table: &RegionTable,
    config: &DiagramConfig<T>,
) -> Result<Diagram<T>, RenderError> {
    if positions.len() != model.n() || table.n() != model.n() {
        return Err(RenderError::Mismatch {
            positions: positions.len(),
            circles: model.n(),
        });
    }
    let viewport = fit_viewport(positions, model.radii(), config.plot_box());
    let circles = viewport.circles(positions, model.radii());
    let masks: Vec<Mask> = table.exclusive().keys().copied().collect();
    let regions = region_polygons(&circles, &masks, config.segments)?;
    let labels = compute_labels(table, &regions, &circles, config)?;
    Ok(Diagram {
        width: config.width,
        height: config.height,
        viewport,
        circles,
        regions,
        labels,
    })
}

/// Deterministic vector document for the finished layout.
pub fn render_svg<T: Scalar>(
    positions: &[Point<T>],
    model: &CircleModel<T>,
    table: &RegionTable,
    config: &DiagramConfig<T>,
) -> Result<String, RenderError> {
    let diagram = compose(positions, model, table, config)?;
    Ok(to_svg(&diagram, config))
}
