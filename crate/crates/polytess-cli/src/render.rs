//! Deterministic SVG rendering of one simulated tessellation window.

use polytess::arrangement::{cell_statistics, CellComplex};
use polytess::directional::IntensityProfile;
use polytess::geometry::Point;
use polytess::lineproc::{sample_lines_hitting_disk, SimulationConfig};
use polytess::stream::stream_rng;
use std::fmt::Write;

const VIEW: f64 = 1000.0;
const DISK_R: f64 = 480.0;

fn map(p: Point, radius: f64) -> (f64, f64) {
    let s = DISK_R / radius;
    (VIEW / 2.0 + p.x * s, VIEW / 2.0 - p.y * s)
}

/// Render replicate 0 of the configuration: window circle, chords, interior
/// triangles filled. Same seed, same bytes.
pub fn render_svg(profile: &IntensityProfile, cfg: &SimulationConfig) -> String {
    let mut rng = stream_rng(cfg.seed, 0);
    let lines = sample_lines_hitting_disk(profile, cfg, &mut rng);
    let complex = CellComplex::build(&lines, cfg.radius);
    let cells = complex.interior_cells();
    let stats = cell_statistics(&cells);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {VIEW} {VIEW}\" width=\"{VIEW}\" height=\"{VIEW}\">"
    );
    let _ = writeln!(svg, "<rect width=\"{VIEW}\" height=\"{VIEW}\" fill=\"white\"/>");
    let _ = writeln!(
        svg,
        "<!-- lines={} cells={} triangles={} -->",
        lines.len(),
        stats.n_cells_interior,
        stats.n_triangles
    );

    // Triangular cells, filled.
    for cell in cells.iter().filter(|c| c.vertex_count() == 3) {
        let mut pts = String::new();
        for v in cell.vertices() {
            let (x, y) = map(*v, cfg.radius);
            let _ = write!(pts, "{x:.2},{y:.2} ");
        }
        let _ = writeln!(
            svg,
            "<polygon points=\"{}\" fill=\"#e8943a\" stroke=\"none\"/>",
            pts.trim_end()
        );
    }

    // Chords.
    for l in &lines {
        let half = (cfg.radius * cfg.radius - l.d * l.d).max(0.0).sqrt();
        let mid = l.normal() * l.d;
        let a = map(mid + l.direction() * (-half), cfg.radius);
        let b = map(mid + l.direction() * half, cfg.radius);
        let _ = writeln!(
            svg,
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#34434f\" stroke-width=\"1\"/>",
            a.0, a.1, b.0, b.1
        );
    }

    let _ = writeln!(
        svg,
        "<circle cx=\"{}\" cy=\"{}\" r=\"{DISK_R}\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>",
        VIEW / 2.0,
        VIEW / 2.0
    );
    svg.push_str("</svg>\n");
    svg
}
