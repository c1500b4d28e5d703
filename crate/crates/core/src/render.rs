//! Static SVG drawings of planar lattice tilings and of the simplex face
//! coverage diagram.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::constructions::{build, BuildOptions, Family, Order2Coset};
use crate::coverings::{face_coverage, l7_translates, FaceCoverage, FACE_LEVEL};
use crate::error::{arg, Result};
use crate::groups::GroupElement;
use crate::lattices::{quotient_structure, Lattice};
use crate::shapes::Shape;

const PALETTES: [[&str; 5]; 2] = [
    ["#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3"],
    ["#fdb462", "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd"],
];

/// Inclusive integer window of the plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub x: (i64, i64),
    pub y: (i64, i64),
}

impl Window {
    pub fn square(r: i64) -> Window {
        Window { x: (-r, r), y: (-r, r) }
    }
}

/// Which translate of which prototile owns a point.
type Owner = Option<(usize, [i64; 2])>;

/// Draw the plane tiled (or covered) by translates of the prototiles under
/// a 2-D lattice. Where translates overlap, the earlier prototile wins.
pub fn tiling_svg(l: &Lattice, prototiles: &[Vec<Vec<i64>>], window: Window, cell: u32) -> Result<String> {
    if l.dim() != 2 {
        return arg("tilings can only be drawn in two dimensions");
    }
    if window.x.0 > window.x.1 || window.y.0 > window.y.1 || cell == 0 {
        return arg("empty drawing window");
    }
    let q = quotient_structure(l)?;
    let mut reps: HashMap<GroupElement, (usize, [i64; 2])> = HashMap::new();
    for (j, tile) in prototiles.iter().enumerate() {
        for p in tile {
            if p.len() != 2 {
                return arg("prototile points must be 2-D");
            }
            reps.entry(q.map(p)).or_insert((j, [p[0], p[1]]));
        }
    }
    let b = l.basis();
    let det = b[0][0] * b[1][1] - b[0][1] * b[1][0];
    let owner = |x: i64, y: i64| -> Owner {
        reps.get(&q.map(&[x, y])).map(|&(j, r)| {
            let (vx, vy) = (x - r[0], y - r[1]);
            // lattice coordinates by Cramer's rule
            let a = (vx * b[1][1] - vy * b[1][0]) / det;
            let c = (b[0][0] * vy - b[0][1] * vx) / det;
            (j, [a, c])
        })
    };
    let cols = (window.x.1 - window.x.0 + 1) as u32;
    let rows = (window.y.1 - window.y.0 + 1) as u32;
    let (w, h) = (cols * cell, rows * cell);
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let px = |x: i64| (x - window.x.0) as u32 * cell;
    let py = |y: i64| (window.y.1 - y) as u32 * cell;
    for y in (window.y.0..=window.y.1).rev() {
        for x in window.x.0..=window.x.1 {
            let fill = match owner(x, y) {
                Some((j, [a, c])) => PALETTES[j % 2][(a + 2 * c).rem_euclid(5) as usize],
                None => "#ffffff",
            };
            let _ = writeln!(s, r#"<rect x="{}" y="{}" width="{cell}" height="{cell}" fill="{fill}"/>"#, px(x), py(y));
        }
    }
    let _ = writeln!(s, r##"<g stroke="#000000" stroke-width="2" stroke-linecap="square">"##);
    for y in window.y.0..=window.y.1 {
        for x in window.x.0..=window.x.1 {
            let here = owner(x, y);
            if x < window.x.1 && owner(x + 1, y) != here {
                let _ = writeln!(s, r#"<line x1="{0}" y1="{1}" x2="{0}" y2="{2}"/>"#, px(x + 1), py(y), py(y) + cell);
            }
            if y > window.y.0 && owner(x, y - 1) != here {
                let _ = writeln!(s, r#"<line x1="{0}" y1="{2}" x2="{1}" y2="{2}"/>"#, px(x), px(x) + cell, py(y) + cell);
            }
        }
    }
    let _ = writeln!(s, "</g>");
    if (window.x.0..=window.x.1).contains(&0) && (window.y.0..=window.y.1).contains(&0) {
        let c = cell / 2;
        let _ = writeln!(s, r##"<circle cx="{}" cy="{}" r="{}" fill="#000000"/>"##, px(0) + c, py(0) + c, c.max(2) / 2);
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn octa_points(k: u64) -> Result<Vec<Vec<i64>>> {
    Shape::octahedron(2, k).enumerate()
}

/// Tiling of the plane by diamonds of radius k under (k, k+1), (-k-1, k).
pub fn figure1_svg(k: u64) -> Result<String> {
    let c = build(Family::Twisted2d, k, &BuildOptions::default())?;
    let r = 3 * k as i64 + 2;
    tiling_svg(&c.lattice, &[octa_points(k)?], Window::square(r), 16)
}

/// Covering by diamonds of radii k and k - 1 used by the order-2 optimum.
pub fn figure7_svg(k: u64) -> Result<String> {
    let c = build(Family::Order2D2, k, &BuildOptions::default())?;
    let Some(Order2Coset::Lifted(g)) = &c.order2 else {
        return arg("order2_d2 must carry a coset vector");
    };
    let small: Vec<Vec<i64>> = if k == 0 {
        vec![]
    } else {
        octa_points(k - 1)?.into_iter().map(|p| vec![p[0] + g[0], p[1] + g[1]]).collect()
    };
    let r = 3 * k as i64 + 2;
    tiling_svg(&c.lattice, &[octa_points(k)?, small], Window::square(r), 16)
}

/// Triangular face diagram; each cell shows the translates covering it,
/// uncovered cells are filled red.
pub fn face_coverage_svg(cov: &FaceCoverage) -> String {
    let unit = 60.0_f64;
    let level = FACE_LEVEL as f64;
    let h3 = 3f64.sqrt() / 2.0;
    let w = unit * level + 20.0;
    let h = unit * level * h3 + 20.0;
    // (x, y) on the face goes to x + y/2 across, y*sqrt(3)/2 up
    let pt = |(x, y): (i64, i64)| -> (f64, f64) {
        let fx = x as f64 + y as f64 / 2.0;
        let fy = y as f64 * h3;
        (10.0 + fx * unit, h - 10.0 - fy * unit)
    };
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}">"#
    );
    for (c, labels) in &cov.labels {
        let v = c.vertices().map(pt);
        let fill = if labels.is_empty() {
            "#ff4040"
        } else if c.up {
            "#f4f4f4"
        } else {
            "#dcdcdc"
        };
        let _ = writeln!(
            s,
            r##"<polygon points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="{fill}" stroke="#000000" stroke-width="1"/>"##,
            v[0].0, v[0].1, v[1].0, v[1].1, v[2].0, v[2].1
        );
        let cx = (v[0].0 + v[1].0 + v[2].0) / 3.0;
        let cy = (v[0].1 + v[1].1 + v[2].1) / 3.0;
        let text: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
        let _ = writeln!(
            s,
            r#"<text x="{cx:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="middle">{}</text>"#,
            cy + 4.0,
            text.join(",")
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Face coverage of the radius-10 simplex by the fourteen shrunk translates.
pub fn figure4_svg() -> String {
    face_coverage_svg(&face_coverage(&l7_translates()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure1_is_deterministic_and_complete() {
        let a = figure1_svg(3).unwrap();
        assert_eq!(a, figure1_svg(3).unwrap());
        assert!(a.starts_with("<?xml"));
        assert!(!a.contains("#ffffff"));
        assert_eq!(a.matches("<rect").count(), 23 * 23);
    }

    #[test]
    fn figure7_covers_the_window() {
        let s = figure7_svg(3).unwrap();
        assert!(!s.contains("#ffffff"));
        assert!(s.contains(PALETTES[1][0]) || s.contains(PALETTES[1][1]));
    }

    #[test]
    fn figure4_has_all_cells_and_no_gaps() {
        let s = figure4_svg();
        assert_eq!(s.matches("<polygon").count(), 100);
        assert!(!s.contains("#ff4040"));
    }

    #[test]
    fn bad_inputs() {
        let l = Lattice::identity(3);
        assert!(tiling_svg(&l, &[], Window::square(1), 8).is_err());
    }
}
