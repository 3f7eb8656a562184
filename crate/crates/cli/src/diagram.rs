//! Static SVG drawing of a cycle of curves: nodes on a circle labelled by
//! self-intersection `-d_i`, consecutive nodes joined. Output depends only on
//! the input word, so repeated runs are byte-identical.

use std::f64::consts::PI;
use std::fmt::Write;

const SIZE: f64 = 320.0;
const RADIUS: f64 = 110.0;
const NODE: f64 = 16.0;

fn point(i: usize, n: usize) -> (f64, f64) {
    let theta = -PI / 2.0 + 2.0 * PI * i as f64 / n as f64;
    (SIZE / 2.0 + RADIUS * theta.cos(), SIZE / 2.0 + RADIUS * theta.sin())
}

pub fn cycle_svg(d: &[i64]) -> String {
    let n = d.len();
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"<g fill="none" stroke="black" stroke-width="2">"#);
    match n {
        0 => {}
        1 => {
            // Nodal curve: one node with a loop through the centre.
            let (x, y) = point(0, 1);
            let _ = writeln!(
                s,
                r#"<path d="M {:.2} {:.2} C {:.2} {:.2} {:.2} {:.2} {:.2} {:.2}"/>"#,
                x - NODE / 2.0,
                y + NODE / 2.0,
                x - RADIUS,
                y + 2.0 * RADIUS,
                x + RADIUS,
                y + 2.0 * RADIUS,
                x + NODE / 2.0,
                y + NODE / 2.0
            );
        }
        2 => {
            // Two curves meeting twice.
            let (a, b) = (point(0, 2), point(1, 2));
            for bend in [-1.0, 1.0] {
                let _ = writeln!(
                    s,
                    r#"<path d="M {:.2} {:.2} Q {:.2} {:.2} {:.2} {:.2}"/>"#,
                    a.0,
                    a.1,
                    SIZE / 2.0 + bend * RADIUS * 0.8,
                    SIZE / 2.0,
                    b.0,
                    b.1
                );
            }
        }
        _ => {
            for i in 0..n {
                let (a, b) = (point(i, n), point((i + 1) % n, n));
                let _ = writeln!(s, r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#, a.0, a.1, b.0, b.1);
            }
        }
    }
    let _ = writeln!(s, "</g>");
    for (i, di) in d.iter().enumerate() {
        let (x, y) = point(i, n);
        let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="{NODE:.2}" fill="white" stroke="black" stroke-width="2"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{x:.2}" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="middle">{}</text>"#,
            y + 4.0,
            -di
        );
    }
    s.push_str("</svg>\n");
    s
}
