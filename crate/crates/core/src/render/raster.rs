use std::sync::{Arc, OnceLock};

use resvg::{tiny_skia, usvg};

use super::RenderError;

/// System fonts are scanned once per process.
fn font_database() -> Arc<usvg::fontdb::Database> {
    static DB: OnceLock<Arc<usvg::fontdb::Database>> = OnceLock::new();
    DB.get_or_init(|| {
        let mut db = usvg::fontdb::Database::new();
        db.load_system_fonts();
        db.set_sans_serif_family("DejaVu Sans");
        Arc::new(db)
    })
    .clone()
}

/// Rasterizes an SVG document to PNG bytes at `scale` times its nominal size.
pub fn rasterize_png(svg: &str, scale: f32) -> Result<Vec<u8>, RenderError> {
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(RenderError::Raster(format!("scale must be positive, got {scale}")));
    }
    let options = usvg::Options {
        fontdb: font_database(),
        ..Default::default()
    };
    let tree = usvg::Tree::from_str(svg, &options).map_err(|e| RenderError::Document(e.to_string()))?;
    let size = tree.size();
    let (w, h) = (
        (size.width() * scale).round() as u32,
        (size.height() * scale).round() as u32,
    );
    let mut pixmap = tiny_skia::Pixmap::new(w, h)
        .ok_or_else(|| RenderError::Raster(format!("cannot allocate {w}x{h} image")))?;
    resvg::render(&tree, tiny_skia::Transform::from_scale(scale, scale), &mut pixmap.as_mut());
    pixmap.encode_png().map_err(|e| RenderError::Raster(e.to_string()))
}
