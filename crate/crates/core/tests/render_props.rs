use std::f64::consts::PI;

use areavenn::render::{compose, rasterize_png, LabelKind};
use areavenn::{DiagramConfig, IdSet, LabelMode, Rgba, RunConfig, RunStatus, Session};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ids(prefix: &str, range: std::ops::Range<usize>) -> Vec<String> {
    range.map(|k| format!("{prefix}{k}")).collect()
}

fn three_sets() -> Vec<IdSet> {
    vec![
        IdSet::new("Alpha", Rgba::rgb(0xe4, 0x1a, 0x1c), ids("x", 0..40)).unwrap(),
        IdSet::new("Beta", Rgba::rgb(0x37, 0x7e, 0xb8), ids("x", 25..60)).unwrap(),
        IdSet::new("Gamma", Rgba::rgb(0x4d, 0xaf, 0x4a), ids("x", 35..50)).unwrap(),
    ]
}

fn random_sets(rng: &mut ChaCha8Rng, n: usize) -> Vec<IdSet> {
    (0..n)
        .map(|i| {
            let lo = rng.random_range(0..60);
            let len = rng.random_range(5..50);
            IdSet::new(format!("S{i}"), Rgba::BLACK, ids("e", lo..lo + len)).unwrap()
        })
        .collect()
}

fn finished(sets: Vec<IdSet>) -> Session<f64> {
    let mut s = Session::initialize(sets, RunConfig::default()).unwrap();
    s.run_to_end(|_| {}).unwrap();
    s
}

#[test]
fn count_labels_sit_inside_their_regions() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for trial in 0..12 {
        let s = finished(random_sets(&mut rng, 2 + trial % 4));
        let config = DiagramConfig::default();
        let d = compose(s.positions(), s.model(), s.table(), &config).unwrap();
        for label in d.labels.iter().filter(|l| l.kind == LabelKind::RegionCount) {
            let mask = label.mask.unwrap();
            let region = &d.regions[&mask];
            assert!(region.largest_part().unwrap().contains(&label.anchor));
            // The polygon region approximates the true circle arrangement.
            for (i, c) in d.circles.iter().enumerate() {
                assert_eq!(c.contains(&label.anchor), mask.contains(i), "trial {trial} mask {mask}");
            }
            assert_eq!(label.text, s.table().exclusive_count(mask).to_string());
        }
    }
}

#[test]
fn drawn_circle_areas_stay_proportional_to_sizes() {
    let s = finished(three_sets());
    let config = DiagramConfig::<f64>::default();
    let d = compose(s.positions(), s.model(), s.table(), &config).unwrap();
    let sizes = s.table().sizes();
    let ref_ratio = PI * d.circles[0].radius.powi(2) / sizes[0] as f64;
    for (c, &size) in d.circles.iter().zip(sizes) {
        let ratio = PI * c.radius.powi(2) / size as f64;
        assert!((ratio / ref_ratio - 1.0).abs() <= 1e-6);
    }
    // Uniform scaling keeps center distances in proportion too.
    let p = s.positions();
    let k = d.viewport.scale;
    for i in 0..3 {
        for j in 0..3 {
            let drawn = d.circles[i].center.distance(&d.circles[j].center);
            assert!((drawn - k * p[i].distance(&p[j])).abs() <= 1e-9 * (1.0 + drawn));
        }
    }
}

#[test]
fn everything_fits_on_the_canvas() {
    let s = finished(three_sets());
    let config = DiagramConfig::<f64> {
        title: "Overlap".into(),
        subtitle: "three sets".into(),
        ..Default::default()
    };
    let d = compose(s.positions(), s.model(), s.table(), &config).unwrap();
    let (lo, hi) = config.plot_box();
    for c in &d.circles {
        assert!(c.center.x - c.radius >= lo.x - 1e-6 && c.center.x + c.radius <= hi.x + 1e-6);
        assert!(c.center.y - c.radius >= lo.y - 1e-6 && c.center.y + c.radius <= hi.y + 1e-6);
    }
    let title = d.labels.iter().find(|l| l.kind == LabelKind::Title).unwrap();
    assert!(title.anchor.y < lo.y);
}

#[test]
fn percent_labels_use_union_denominator() {
    let s = finished(three_sets());
    let config = DiagramConfig::<f64> {
        label_mode: LabelMode::Percent,
        ..Default::default()
    };
    let d = compose(s.positions(), s.model(), s.table(), &config).unwrap();
    let union = s.table().union_size() as f64;
    for label in d.labels.iter().filter(|l| l.kind == LabelKind::RegionCount) {
        let count = s.table().exclusive_count(label.mask.unwrap()) as f64;
        let shown: f64 = label.text.trim_end_matches('%').parse().unwrap();
        assert!((shown - 100.0 * count / union).abs() <= 0.05 + 1e-9);
    }
}

#[test]
fn output_is_byte_identical_across_runs() {
    let render = || {
        let s = finished(three_sets());
        let svg = s.render_svg(&DiagramConfig::default()).unwrap();
        let png = rasterize_png(&svg, 1.0).unwrap();
        (svg, png)
    };
    let (a, b) = (render(), render());
    assert_eq!(a.0, b.0);
    assert_eq!(a.1, b.1);
}

#[test]
fn svg_mentions_every_set_and_escapes_names() {
    let mut sets = three_sets();
    sets.push(IdSet::new("R&D <core>", Rgba::rgb(1, 2, 3), ids("x", 55..70)).unwrap());
    let s = finished(sets);
    let svg = s
        .render_svg(&DiagramConfig {
            title: "A \"quoted\" title".into(),
            ..Default::default()
        })
        .unwrap();
    assert_eq!(svg.matches("<circle ").count(), 4);
    assert!(svg.contains("R&amp;D &lt;core&gt;"));
    assert!(svg.contains("A &quot;quoted&quot; title"));
    assert!(svg.contains(r##"fill="#e41a1c" fill-opacity="0.5000""##));
    assert!(svg.contains(r##"fill="#010203""##));
}

#[test]
fn raster_matches_nominal_size_and_background() {
    let s = finished(three_sets());
    let config = DiagramConfig::<f64> {
        width: 400.0,
        height: 300.0,
        background: Rgba::rgb(10, 20, 30),
        ..Default::default()
    };
    let png = rasterize_png(&s.render_svg(&config).unwrap(), 1.0).unwrap();
    let img = resvg::tiny_skia::Pixmap::decode_png(&png).unwrap();
    assert_eq!((img.width(), img.height()), (400, 300));
    let corner = img.pixel(1, 1).unwrap();
    assert_eq!((corner.red(), corner.green(), corner.blue()), (10, 20, 30));
}

#[test]
fn single_precision_pipeline() {
    let mut s = Session::<f32>::initialize(three_sets(), RunConfig::default()).unwrap();
    let status = s.run_to_end(|_| {}).unwrap();
    assert!(matches!(status, RunStatus::Converged | RunStatus::RevertedAfterRises));
    assert!(s.render_svg(&DiagramConfig::default()).unwrap().contains("Gamma"));
}
