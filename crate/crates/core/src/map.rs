//! Continuous piecewise-linear self-maps of a closed rational interval.
//!
//! A [`PlMap`] stores its graph as a list of breakpoints `(x, y)`. The map is
//! the linear interpolation between consecutive breakpoints. Collinear interior
//! breakpoints are allowed and kept until [`PlMap::normalize`] is called, so a
//! constructed map serializes exactly as it was built.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::budget::PieceBudget;
use crate::error::{Error, Result};
use crate::rational::{parse_canonical, Interval, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }
}

/// One linear piece `y = slope · x + intercept` on `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub lo: Rational,
    pub hi: Rational,
    pub slope: Rational,
    pub intercept: Rational,
}

impl Piece {
    fn through(a: &Point, b: &Point) -> Self {
        let slope = (&b.y - &a.y) / (&b.x - &a.x);
        let intercept = &a.y - &slope * &a.x;
        Piece {
            lo: a.x.clone(),
            hi: b.x.clone(),
            slope,
            intercept,
        }
    }

    pub fn apply(&self, x: &Rational) -> Rational {
        &self.slope * x + &self.intercept
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlMap {
    points: Vec<Point>,
}

impl PlMap {
    /// Validates and wraps a breakpoint list. The domain is `[first x, last x]`.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::Domain("a map needs at least 2 breakpoints".into()));
        }
        if let Some(i) = points.windows(2).position(|w| w[0].x >= w[1].x) {
            return Err(Error::Domain(format!(
                "breakpoint x-coordinates must strictly increase (points {i} and {})",
                i + 1
            )));
        }
        let lo = &points[0].x;
        let hi = &points[points.len() - 1].x;
        if let Some(i) = points.iter().position(|p| &p.y < lo || &p.y > hi) {
            return Err(Error::Domain(format!(
                "point {i} has y = {} outside the domain [{lo}, {hi}]",
                points[i].y
            )));
        }
        Ok(PlMap { points })
    }

    /// Convenience constructor from `(x, y)` pairs.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, Rational)>,
    {
        PlMap::new(pairs.into_iter().map(|(x, y)| Point::new(x, y)).collect())
    }

    pub fn identity(lo: Rational, hi: Rational) -> Result<Self> {
        PlMap::from_pairs([(lo.clone(), lo), (hi.clone(), hi)])
    }

    pub fn constant(lo: Rational, hi: Rational, value: Rational) -> Result<Self> {
        PlMap::from_pairs([(lo, value.clone()), (hi, value)])
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn lo(&self) -> &Rational {
        &self.points[0].x
    }

    pub fn hi(&self) -> &Rational {
        &self.points[self.points.len() - 1].x
    }

    pub fn domain(&self) -> Interval {
        Interval::spanning(self.lo().clone(), self.hi().clone())
    }

    pub fn piece_count(&self) -> usize {
        self.points.len() - 1
    }

    pub fn pieces(&self) -> impl Iterator<Item = Piece> + '_ {
        self.points.windows(2).map(|w| Piece::through(&w[0], &w[1]))
    }

    pub fn piece(&self, index: usize) -> Piece {
        Piece::through(&self.points[index], &self.points[index + 1])
    }

    /// Index of the piece containing `x`; a shared breakpoint goes to the left piece.
    pub fn piece_index(&self, x: &Rational) -> Option<usize> {
        if x < self.lo() || x > self.hi() {
            return None;
        }
        let idx = self.points.partition_point(|p| &p.x < x);
        Some(idx.saturating_sub(1).min(self.piece_count() - 1))
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let i = self.piece_index(x).ok_or_else(|| {
            Error::Domain(format!("{x} is outside [{}, {}]", self.lo(), self.hi()))
        })?;
        let (a, b) = (&self.points[i], &self.points[i + 1]);
        if x == &a.x {
            return Ok(a.y.clone());
        }
        if x == &b.x {
            return Ok(b.y.clone());
        }
        Ok(&a.y + (&b.y - &a.y) * (x - &a.x) / (&b.x - &a.x))
    }

    /// `f^n(x)` by repeated evaluation.
    pub fn eval_iter(&self, x: &Rational, n: u64) -> Result<Rational> {
        let mut y = x.clone();
        for _ in 0..n {
            y = self.eval(&y)?;
        }
        Ok(y)
    }

    /// Exact `(min, max)` of the map on `within`.
    pub fn extrema_on(&self, within: &Interval) -> Result<(Rational, Rational)> {
        if !within.is_subset_of(&self.domain()) {
            return Err(Error::Domain(format!(
                "{within} is not inside the domain {}",
                self.domain()
            )));
        }
        let mut lo = self.eval(within.lo())?;
        let mut hi = lo.clone();
        let inner = self
            .points
            .iter()
            .filter(|p| within.lo() < &p.x && &p.x < within.hi())
            .map(|p| p.y.clone());
        for y in inner.chain(std::iter::once(self.eval(within.hi())?)) {
            if y < lo {
                lo = y;
            } else if y > hi {
                hi = y;
            }
        }
        Ok((lo, hi))
    }

    /// Exact image `f(within)`.
    pub fn image(&self, within: &Interval) -> Result<Interval> {
        let (lo, hi) = self.extrema_on(within)?;
        Ok(Interval::spanning(lo, hi))
    }

    /// The set `{ x in within : f(x) = y }` as sorted closed intervals
    /// (flat pieces contribute whole segments, the rest single points).
    pub fn level_set(&self, y: &Rational, within: &Interval) -> Result<Vec<Interval>> {
        if !within.is_subset_of(&self.domain()) {
            return Err(Error::Domain(format!(
                "{within} is not inside the domain {}",
                self.domain()
            )));
        }
        let mut out: Vec<Interval> = Vec::new();
        let mut push = |iv: Interval| {
            if let Some(last) = out.last_mut() {
                if last.hi() >= iv.lo() {
                    if iv.hi() > last.hi() {
                        *last = Interval::spanning(last.lo().clone(), iv.hi().clone());
                    }
                    return;
                }
            }
            out.push(iv);
        };
        for piece in self.pieces() {
            let span = Interval::spanning(piece.lo.clone(), piece.hi.clone());
            let Some(part) = span.intersect(within) else {
                continue;
            };
            if piece.slope.is_zero() {
                if &piece.intercept == y {
                    push(part);
                }
                continue;
            }
            let x = (y - &piece.intercept) / &piece.slope;
            if part.contains(&x) {
                push(Interval::point(x));
            }
        }
        Ok(out)
    }

    /// Number of maximal monotone pieces. Flat pieces never start a new lap.
    pub fn lap_count(&self) -> usize {
        let mut laps = 1;
        let mut direction = 0i8;
        for w in self.points.windows(2) {
            let d = match w[1].y.cmp(&w[0].y) {
                std::cmp::Ordering::Greater => 1,
                std::cmp::Ordering::Less => -1,
                std::cmp::Ordering::Equal => 0,
            };
            if d != 0 {
                if direction != 0 && d != direction {
                    laps += 1;
                }
                direction = d;
            }
        }
        laps
    }

    /// Removes interior breakpoints collinear with their neighbours.
    pub fn normalize(&self) -> PlMap {
        let mut kept: Vec<Point> = Vec::with_capacity(self.points.len());
        for p in &self.points {
            while kept.len() >= 2 {
                let a = &kept[kept.len() - 2];
                let b = &kept[kept.len() - 1];
                // (b - a) x (p - a) == 0
                let cross = (&b.x - &a.x) * (&p.y - &a.y) - (&b.y - &a.y) * (&p.x - &a.x);
                if cross.is_zero() {
                    kept.pop();
                } else {
                    break;
                }
            }
            kept.push(p.clone());
        }
        PlMap { points: kept }
    }

    /// Value equality: same domain and same values everywhere.
    pub fn same_function(&self, other: &PlMap) -> bool {
        self.normalize() == other.normalize()
    }

    /// The restriction of the map to a sub-interval of its domain (as a plain
    /// function; the result need not be a self-map of `within`).
    pub fn restrict_points(&self, within: &Interval) -> Result<Vec<Point>> {
        let mut pts = vec![Point::new(within.lo().clone(), self.eval(within.lo())?)];
        pts.extend(
            self.points
                .iter()
                .filter(|p| within.lo() < &p.x && &p.x < within.hi())
                .cloned(),
        );
        if !within.is_degenerate() {
            pts.push(Point::new(within.hi().clone(), self.eval(within.hi())?));
        }
        Ok(pts)
    }
}

/// `g ∘ f`. Breakpoints are those of `f` plus every preimage under `f` of a
/// breakpoint of `g`; nothing is merged.
pub fn compose(g: &PlMap, f: &PlMap) -> Result<PlMap> {
    let (range_lo, range_hi) = f.extrema_on(&f.domain())?;
    if &range_lo < g.lo() || &range_hi > g.hi() {
        return Err(Error::Domain(format!(
            "range [{range_lo}, {range_hi}] of the inner map is not inside the domain [{}, {}] of the outer map",
            g.lo(),
            g.hi()
        )));
    }
    let mut points = Vec::with_capacity(f.points.len() + g.points.len());
    points.push(Point::new(f.lo().clone(), g.eval(&f.points[0].y)?));
    for w in f.points.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if a.y != b.y {
            let ascending = a.y < b.y;
            let (ylo, yhi) = if ascending {
                (&a.y, &b.y)
            } else {
                (&b.y, &a.y)
            };
            let start = g.points.partition_point(|p| &p.x <= ylo);
            let end = g.points.partition_point(|p| &p.x < yhi);
            let crossing = &g.points[start..end];
            let dx = &b.x - &a.x;
            let dy = &b.y - &a.y;
            let mut push_crossing = |p: &Point| {
                let x = &a.x + (&p.x - &a.y) * &dx / &dy;
                points.push(Point::new(x, p.y.clone()));
            };
            if ascending {
                crossing.iter().for_each(&mut push_crossing);
            } else {
                crossing.iter().rev().for_each(&mut push_crossing);
            }
        }
        points.push(Point::new(b.x.clone(), g.eval(&b.y)?));
    }
    Ok(PlMap { points })
}

/// `f^n`; `f^0` is the identity on the domain.
pub fn iterate(f: &PlMap, n: u64, budget: PieceBudget) -> Result<PlMap> {
    let mut acc = PlMap::identity(f.lo().clone(), f.hi().clone())?;
    for k in 1..=n {
        acc = if k == 1 { f.clone() } else { compose(f, &acc)? };
        if acc.piece_count() > budget.pieces() {
            return Err(Error::Resource {
                what: "piece count of the iterate",
                budget: budget.pieces(),
                reached: k,
            });
        }
    }
    Ok(acc)
}

/// On-disk map format: every number is a canonical `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub domain: [String; 2],
    pub points: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
}

impl MapFile {
    pub fn from_map(map: &PlMap, comment: Option<String>) -> Self {
        MapFile {
            domain: [map.lo().to_string(), map.hi().to_string()],
            points: map
                .points
                .iter()
                .map(|p| [p.x.to_string(), p.y.to_string()])
                .collect(),
            comment,
        }
    }

    pub fn to_map(&self) -> Result<PlMap> {
        let lo = parse_canonical("domain[0]", &self.domain[0])?;
        let hi = parse_canonical("domain[1]", &self.domain[1])?;
        let points = self
            .points
            .iter()
            .enumerate()
            .map(|(i, [x, y])| {
                Ok(Point::new(
                    parse_canonical(&format!("points[{i}].x"), x)?,
                    parse_canonical(&format!("points[{i}].y"), y)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let map = PlMap::new(points).map_err(|e| Error::parse("points", e.to_string()))?;
        if map.lo() != &lo || map.hi() != &hi {
            return Err(Error::parse(
                "domain",
                format!("[{lo}, {hi}] does not match the first and last breakpoints"),
            ));
        }
        Ok(map)
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse("map file", e.to_string()))
    }

    /// Canonical text: pretty JSON with a trailing newline.
    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("map files always serialize");
        s.push('\n');
        s
    }
}

impl PlMap {
    pub fn to_text(&self) -> String {
        MapFile::from_map(self, None).to_text()
    }

    pub fn from_text(text: &str) -> Result<PlMap> {
        MapFile::parse(text)?.to_map()
    }
}

impl fmt::Display for PlMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.points {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "({}, {})", p.x, p.y)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn tent() -> PlMap {
        PlMap::from_pairs([(int(0), int(0)), (ratio(1, 2), int(1)), (int(1), int(0))]).unwrap()
    }

    fn h() -> PlMap {
        PlMap::from_pairs([
            (int(0), ratio(1, 2)),
            (ratio(1, 4), int(1)),
            (ratio(1, 2), ratio(1, 2)),
            (int(1), int(0)),
        ])
        .unwrap()
    }

    #[test]
    fn validation() {
        assert!(PlMap::from_pairs([(int(0), int(0))]).is_err());
        assert!(PlMap::from_pairs([(int(0), int(0)), (int(0), int(1))]).is_err());
        assert!(PlMap::from_pairs([(int(0), int(2)), (int(1), int(1))]).is_err());
    }

    #[test]
    fn eval_examples() {
        assert_eq!(tent().eval(&ratio(1, 2)).unwrap(), int(1));
        assert_eq!(h().eval(&ratio(5, 14)).unwrap(), ratio(11, 14));
        for p in h().points() {
            assert_eq!(h().eval(&p.x).unwrap(), p.y);
        }
        assert!(matches!(tent().eval(&ratio(3, 2)), Err(Error::Domain(_))));
    }

    #[test]
    fn compose_examples() {
        let id = PlMap::identity(int(0), int(1)).unwrap();
        assert!(compose(&id, &h()).unwrap().same_function(&h()));
        let tt = compose(&tent(), &tent()).unwrap();
        assert_eq!(tt.lap_count(), 4);
        assert_eq!(tt.eval(&ratio(1, 4)).unwrap(), int(1));
        assert_eq!(tt.eval(&ratio(3, 4)).unwrap(), int(1));
        assert_eq!(tt.normalize(), tt);
        let zero = PlMap::constant(int(0), int(1), int(0)).unwrap();
        let z = compose(&zero, &h()).unwrap().normalize();
        assert_eq!(z, zero);
    }

    #[test]
    fn compose_checks_domains() {
        let small = PlMap::identity(int(0), ratio(1, 2)).unwrap();
        assert!(matches!(compose(&small, &tent()), Err(Error::Domain(_))));
    }

    #[test]
    fn iterate_examples() {
        let b = PieceBudget::default();
        assert!(iterate(&h(), 0, b)
            .unwrap()
            .same_function(&PlMap::identity(int(0), int(1)).unwrap()));
        assert_eq!(iterate(&h(), 1, b).unwrap(), h());
        assert_eq!(
            iterate(&tent(), 2, b).unwrap().eval(&ratio(2, 5)).unwrap(),
            ratio(2, 5)
        );
        let err = iterate(&tent(), 12, PieceBudget::new(1000)).unwrap_err();
        assert!(
            matches!(
                err,
                Error::Resource {
                    budget: 1000,
                    reached: 10,
                    ..
                }
            ),
            "{err}"
        );
    }

    #[test]
    fn normalize_examples() {
        let m = PlMap::from_pairs([
            (int(0), int(0)),
            (ratio(1, 2), ratio(1, 2)),
            (int(1), int(1)),
        ])
        .unwrap();
        assert_eq!(m.normalize(), PlMap::identity(int(0), int(1)).unwrap());
        assert_eq!(tent().normalize(), tent());
    }

    #[test]
    fn extrema_and_level_sets() {
        let dom = Interval::new(int(0), ratio(1, 2)).unwrap();
        assert_eq!(tent().extrema_on(&dom).unwrap(), (int(0), int(1)));
        let inner = Interval::new(ratio(1, 4), ratio(3, 4)).unwrap();
        assert_eq!(tent().extrema_on(&inner).unwrap(), (ratio(1, 2), int(1)));
        let lv = tent().level_set(&ratio(1, 2), &tent().domain()).unwrap();
        assert_eq!(
            lv,
            vec![Interval::point(ratio(1, 4)), Interval::point(ratio(3, 4))]
        );
        let flat = PlMap::from_pairs([
            (int(0), int(0)),
            (ratio(1, 2), ratio(1, 2)),
            (int(1), ratio(1, 2)),
        ])
        .unwrap();
        let lv = flat.level_set(&ratio(1, 2), &flat.domain()).unwrap();
        assert_eq!(lv, vec![Interval::new(ratio(1, 2), int(1)).unwrap()]);
    }

    #[test]
    fn lap_counts() {
        assert_eq!(tent().lap_count(), 2);
        assert_eq!(h().lap_count(), 2);
        assert_eq!(
            PlMap::constant(int(0), int(1), int(0)).unwrap().lap_count(),
            1
        );
    }

    #[test]
    fn file_format() {
        let text = h().to_text();
        assert!(text.contains("\"1/4\""));
        assert_eq!(PlMap::from_text(&text).unwrap(), h());
        let bad = r#"{"domain":["0","1"],"points":[["0","2/4"],["1","0"]]}"#;
        let err = PlMap::from_text(bad).unwrap_err();
        assert!(err.to_string().contains("points[0].y"), "{err}");
        let mismatch = r#"{"domain":["0","2"],"points":[["0","0"],["1","0"]]}"#;
        assert!(PlMap::from_text(mismatch).is_err());
    }
}
