//! SVG depiction of a map, its zones and optionally a plan.

use std::fmt::Write;

use pamcpp_core::{Cell, FullPlan, Instance};

const CELL: usize = 12;
const ZONE_COLORS: [&str; 8] = ["#e6194b", "#3cb44b", "#ffe119", "#4363d8", "#f58231", "#911eb4", "#42d4f4", "#f032e6"];
const ROBOT_COLORS: [&str; 6] = ["#1b3a8c", "#b3261e", "#1e7b34", "#7a4f01", "#5b2a86", "#006d77"];

fn center(c: Cell) -> (usize, usize) {
    (c.x * CELL + CELL / 2, c.y * CELL + CELL / 2)
}

/// Obstacles black, free space white, zones as tinted regions labelled with
/// their weight. Each robot gets a polyline for its priority phase and a
/// dashed path for the residual phase, if it has one.
pub fn svg(inst: &Instance, plan: Option<&FullPlan>) -> String {
    let map = &inst.map;
    let (w, h) = (map.width() * CELL, map.height() * CELL);
    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#).unwrap();
    writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#).unwrap();
    for y in 0..map.height() {
        for x in 0..map.width() {
            if !map.is_free(Cell::new(x, y)) {
                writeln!(s, r#"<rect x="{}" y="{}" width="{CELL}" height="{CELL}" fill="black"/>"#, x * CELL, y * CELL).unwrap();
            }
        }
    }
    for (i, z) in inst.zones.iter().enumerate() {
        let color = ZONE_COLORS[i % ZONE_COLORS.len()];
        let mut d = String::new();
        for c in &z.cells {
            write!(d, "M{} {}h{CELL}v{CELL}h-{CELL}z", c.x * CELL, c.y * CELL).unwrap();
        }
        writeln!(s, r#"<path class="zone" d="{d}" fill="{color}" fill-opacity="0.45"/>"#).unwrap();
        let (cx, cy) = center(z.cells[0]);
        writeln!(s, r#"<text x="{cx}" y="{cy}" font-size="{CELL}" text-anchor="middle" dominant-baseline="central">w={}</text>"#, z.weight).unwrap();
    }
    if let Some(plan) = plan {
        for (i, (path, &b)) in plan.paths.iter().zip(&plan.phase_boundary).enumerate() {
            let color = ROBOT_COLORS[i % ROBOT_COLORS.len()];
            let b = b.clamp(1, path.len());
            let points: Vec<String> = path.cells[..b]
                .iter()
                .map(|&c| {
                    let (x, y) = center(c);
                    format!("{x},{y}")
                })
                .collect();
            writeln!(s, r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#, points.join(" ")).unwrap();
            if b < path.len() {
                let mut d = String::new();
                for (j, &c) in path.cells[b - 1..].iter().enumerate() {
                    let (x, y) = center(c);
                    write!(d, "{}{x} {y}", if j == 0 { "M" } else { " L" }).unwrap();
                }
                writeln!(s, r#"<path class="residual" d="{d}" fill="none" stroke="{color}" stroke-width="2" stroke-dasharray="4 3"/>"#).unwrap();
            }
            let (x, y) = center(path.cells[0]);
            writeln!(s, r#"<circle cx="{x}" cy="{y}" r="{}" fill="{color}"/>"#, CELL / 3).unwrap();
        }
    }
    s.push_str("</svg>\n");
    s
}
