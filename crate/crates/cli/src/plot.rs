//! CSV and SVG renderings of a map. Only this module converts to floating point.

use std::collections::BTreeSet;
use std::fmt::Write;

use sharklab::rational::{int, to_decimal, to_f64};
use sharklab::{PlMap, Rational};

const DIGITS: usize = 12;
const SIZE: f64 = 400.0;
const MARGIN: f64 = 20.0;

/// `x,y` rows at every breakpoint and at `samples` evenly spaced points.
pub fn csv(f: &PlMap, samples: usize) -> String {
    let mut xs: BTreeSet<Rational> = f.points().iter().map(|p| p.x.clone()).collect();
    let (lo, hi) = (f.lo(), f.hi());
    match samples {
        0 => {}
        1 => {
            xs.insert(lo.clone());
        }
        n => {
            let steps = int(n as i64 - 1);
            for i in 0..n {
                xs.insert(lo + (hi - lo) * int(i as i64) / &steps);
            }
        }
    }
    let mut out = String::from("x,y\n");
    for x in xs {
        let y = f.eval(&x).expect("grid lies in the domain");
        let _ = writeln!(out, "{},{}", to_decimal(&x, DIGITS), to_decimal(&y, DIGITS));
    }
    out
}

/// The polyline through the breakpoints, with axes and the diagonal, scaled to
/// the bounding box of the domain and range.
pub fn svg(f: &PlMap) -> String {
    let (x0, x1) = (to_f64(f.lo()), to_f64(f.hi()));
    let ys = f.points().iter().map(|p| to_f64(&p.y));
    let (y0, y1) = ys.fold((x0, x1), |(a, b), y| (a.min(y), b.max(y)));
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * SIZE;
    let sy = |y: f64| MARGIN + SIZE - (y - y0) / (y1 - y0).max(f64::MIN_POSITIVE) * SIZE;
    let fmt = |v: f64| to_decimal(&Rational::from_float(v).unwrap_or_default(), 6);
    let full = SIZE + 2.0 * MARGIN;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{w}" viewBox="0 0 {w} {w}">"#,
        w = fmt(full)
    );
    let axis = |out: &mut String, (ax, ay, bx, by): (f64, f64, f64, f64), style: &str| {
        let _ = writeln!(
            out,
            r#"  <line x1="{}" y1="{}" x2="{}" y2="{}" {style}/>"#,
            fmt(ax),
            fmt(ay),
            fmt(bx),
            fmt(by)
        );
    };
    axis(
        &mut out,
        (sx(x0), sy(y0), sx(x1), sy(y0)),
        r#"stroke="black""#,
    );
    axis(
        &mut out,
        (sx(x0), sy(y0), sx(x0), sy(y1)),
        r#"stroke="black""#,
    );
    let (d0, d1) = (x0.max(y0), x1.min(y1));
    if d0 < d1 {
        axis(
            &mut out,
            (sx(d0), sy(d0), sx(d1), sy(d1)),
            r#"stroke="gray" stroke-dasharray="4 4""#,
        );
    }
    let points: Vec<String> = f
        .points()
        .iter()
        .map(|p| format!("{},{}", fmt(sx(to_f64(&p.x))), fmt(sy(to_f64(&p.y)))))
        .collect();
    let _ = writeln!(
        out,
        r#"  <polyline fill="none" stroke="steelblue" stroke-width="2" points="{}"/>"#,
        points.join(" ")
    );
    let _ = writeln!(out, "</svg>");
    out
}
