use areavenn::{CircleModel, LayoutState, Mask, RegionTable};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct SetEntry {
    pub name: String,
    pub size: usize,
}

#[derive(Debug, Serialize)]
pub struct RegionEntry {
    pub sets: Vec<String>,
    pub exclusive_count: usize,
    pub ids: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct IntersectionEntry {
    pub sets: Vec<String>,
    pub count: usize,
    pub ids: Vec<String>,
    pub pruned: bool,
}

#[derive(Debug, Serialize)]
pub struct CircleEntry {
    pub name: String,
    pub x: f64,
    pub y: f64,
    pub r: f64,
}

#[derive(Debug, Serialize)]
pub struct LayoutEntry {
    pub circles: Vec<CircleEntry>,
    pub loss: f64,
    pub epochs: usize,
    pub stop_reason: String,
}

/// Region report. Field order here is the key order in the output.
#[derive(Debug, Serialize)]
pub struct Report {
    pub sets: Vec<SetEntry>,
    pub union_size: usize,
    pub regions: Vec<RegionEntry>,
    pub intersections: Vec<IntersectionEntry>,
    pub layout: LayoutEntry,
}

fn names(table: &RegionTable, mask: Mask) -> Vec<String> {
    table.mask_names(mask).into_iter().map(str::to_owned).collect()
}

fn by_display_order<'a, V>(map: impl Iterator<Item = (&'a Mask, V)>) -> Vec<(Mask, V)> {
    let mut v: Vec<(Mask, V)> = map.map(|(m, v)| (*m, v)).collect();
    v.sort_by_key(|(m, _)| m.display_key());
    v
}

pub fn build_report(table: &RegionTable, model: &CircleModel<f64>, state: &LayoutState<f64>) -> Report {
    Report {
        sets: table
            .names()
            .iter()
            .zip(table.sizes())
            .map(|(name, &size)| SetEntry { name: name.clone(), size })
            .collect(),
        union_size: table.union_size(),
        regions: by_display_order(table.exclusive().iter())
            .into_iter()
            .map(|(mask, ids)| RegionEntry {
                sets: names(table, mask),
                exclusive_count: ids.len(),
                ids: ids.clone(),
            })
            .collect(),
        intersections: by_display_order(table.inclusive().iter())
            .into_iter()
            .map(|(mask, ids)| IntersectionEntry {
                sets: names(table, mask),
                count: ids.len(),
                ids: ids.clone(),
                pruned: !table.is_displayed(mask),
            })
            .collect(),
        layout: LayoutEntry {
            circles: table
                .names()
                .iter()
                .zip(&state.positions)
                .zip(model.radii())
                .map(|((name, p), &r)| CircleEntry { name: name.clone(), x: p.x, y: p.y, r })
                .collect(),
            loss: state.loss,
            epochs: state.epoch,
            stop_reason: state.status.as_str().to_string(),
        },
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn dump_regions(table: &RegionTable, model: &CircleModel<f64>, state: &LayoutState<f64>) -> String {
    let mut s = serde_json::to_string_pretty(&build_report(table, model, state))
        .expect("report contains only plain data");
    s.push('\n');
    s
}
