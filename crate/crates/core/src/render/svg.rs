use std::fmt::Write;

use super::{Diagram, DiagramConfig, LabelKind};
use crate::color::Rgba;
use crate::scalar::Scalar;

pub const FONT_FAMILY: &str = "DejaVu Sans, sans-serif";

/// Outline shade relative to the fill color.
const STROKE_DARKEN: f64 = 0.6;

fn num<T: Scalar>(v: T) -> String {
    let v = v.to_f64().unwrap_or(0.0);
    // Avoid "-0.000000" so byte output does not depend on the sign of zero.
    let s = format!("{v:.6}");
    if s.trim_start_matches('-').bytes().all(|b| b == b'0' || b == b'.') {
        "0.000000".to_string()
    } else {
        s
    }
}

fn opacity(v: f64) -> String {
    format!("{:.4}", v.clamp(0.0, 1.0))
}

pub(crate) fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

fn paint(attr: &str, color: Rgba, extra_opacity: f64) -> String {
    format!(
        r#"{attr}="{}" {attr}-opacity="{}""#,
        color.hex_rgb(),
        opacity(color.alpha_fraction() * extra_opacity)
    )
}

/// Serializes a composed diagram. Output depends only on the inputs.
pub fn to_svg<T: Scalar>(diagram: &Diagram<T>, config: &DiagramConfig<T>) -> String {
    let mut s = String::new();
    let (w, h) = (num(diagram.width), num(diagram.height));
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(
        s,
        r#"  <rect x="0" y="0" width="{w}" height="{h}" {}/>"#,
        paint("fill", config.background, 1.0)
    );

    let fill_opacity = config.fill_opacity.to_f64().unwrap_or(0.5);
    let _ = writeln!(s, r#"  <g id="circles">"#);
    for (i, c) in diagram.circles.iter().enumerate() {
        let color = config.set_color(i);
        let _ = writeln!(
            s,
            r#"    <circle cx="{}" cy="{}" r="{}" {} {} stroke-width="{}"/>"#,
            num(c.center.x),
            num(c.center.y),
            num(c.radius),
            paint("fill", color, fill_opacity),
            paint("stroke", color.darken(STROKE_DARKEN), 1.0),
            num(config.stroke_width),
        );
    }
    let _ = writeln!(s, "  </g>");

    let _ = writeln!(
        s,
        r#"  <g id="labels" font-family="{FONT_FAMILY}" text-anchor="middle" {}>"#,
        paint("fill", config.text_color, 1.0)
    );
    for label in &diagram.labels {
        let (size, weight, baseline) = match label.kind {
            LabelKind::RegionCount => (config.label_font_size, "normal", " dominant-baseline=\"central\""),
            LabelKind::SetTitle => (config.label_font_size, "bold", " dominant-baseline=\"central\""),
            LabelKind::Title => (config.title_font_size, "bold", ""),
            LabelKind::Subtitle => (config.subtitle_font_size, "normal", ""),
        };
        let class = match label.kind {
            LabelKind::RegionCount => "count",
            LabelKind::SetTitle => "set",
            LabelKind::Title => "title",
            LabelKind::Subtitle => "subtitle",
        };
        let _ = writeln!(
            s,
            r#"    <text class="{class}" x="{}" y="{}" font-size="{}" font-weight="{weight}"{baseline}>{}</text>"#,
            num(label.anchor.x),
            num(label.anchor.y),
            num(size),
            escape(&label.text),
        );
    }
    let _ = writeln!(s, "  </g>");
    s.push_str("</svg>\n");
    s
}
