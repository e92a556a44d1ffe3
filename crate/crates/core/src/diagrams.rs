//! Young diagrams in French convention, their Russian-coordinate profiles,
//! corners, and the `d_XY` distance.
//!
//! Row `i` (1-based, counted from the bottom) holds `parts[i-1]` boxes. A box
//! with column `x` and row `y` has Russian coordinate `u = x - y`; a lattice
//! point `(x, y)` on the boundary has `u = x - y`, `v = x + y`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer partition `parts[0] >= parts[1] >= ... >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct YoungDiagram {
    parts: Vec<usize>,
    n: usize,
}

/// Russian `u`-coordinates of the profile's local minima (concave corners,
/// where a box may be added) and local maxima (convex corners).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerSet {
    pub concave: Vec<i64>,
    pub convex: Vec<i64>,
}

/// A weakly decreasing curve in French coordinates, given both as `x(y)` and
/// `y(x)`. Both maps vanish beyond the curve's extent.
pub trait CurveParametrization {
    fn x_of_y(&self, y: f64) -> f64;
    fn y_of_x(&self, x: f64) -> f64;

    /// Length of the curve's foot on the x-axis, `x_of_y(0)`.
    fn x_extent(&self) -> f64 {
        self.x_of_y(0.0)
    }

    /// Height of the curve on the y-axis, `y_of_x(0)`.
    fn y_extent(&self) -> f64 {
        self.y_of_x(0.0)
    }
}

impl YoungDiagram {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_parts(parts: Vec<usize>) -> Result<Self> {
        let valid = parts.iter().all(|&p| p >= 1) && parts.windows(2).all(|w| w[0] >= w[1]);
        if !valid {
            return Err(Error::InvalidParts(parts));
        }
        let n = parts.iter().sum();
        Ok(Self { parts, n })
    }

    /// The staircase `(N, N-1, ..., 1)` with `N(N+1)/2` boxes. `N = 0` gives
    /// the empty diagram.
    pub fn staircase(size: usize) -> Self {
        let parts: Vec<usize> = (1..=size).rev().collect();
        Self { n: size * (size + 1) / 2, parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of boxes.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Length of row `i` (0-based), zero past the last row.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Self {
        let width = self.part(0);
        let mut cols = vec![0usize; width];
        for &p in &self.parts {
            for c in cols.iter_mut().take(p) {
                *c += 1;
            }
        }
        Self { parts: cols, n: self.n }
    }

    pub fn corners(&self) -> CornerSet {
        let l = self.parts.len();
        let mut concave = Vec::with_capacity(l + 1);
        let mut convex = Vec::with_capacity(l);
        // Walk from the top-left end of the profile (0, l) to the bottom-right.
        concave.push(-(l as i64));
        for i in (0..l).rev() {
            let row = self.parts[i] as i64;
            let y = i as i64;
            let above = self.part(i + 1) as i64;
            if row > above {
                convex.push(row - (y + 1));
            }
            let below = if i == 0 { i64::MAX } else { self.parts[i - 1] as i64 };
            if row < below {
                concave.push(row - y);
            }
        }
        CornerSet { concave, convex }
    }

    /// The `c`-rescaled profile `c * omega(u / c)`.
    pub fn profile_value(&self, c: f64, u: f64) -> f64 {
        let corners = self.corners();
        let s = u / c;
        let up: f64 = corners.concave.iter().map(|&x| (s - x as f64).abs()).sum();
        let down: f64 = corners.convex.iter().map(|&y| (s - y as f64).abs()).sum();
        c * (up - down)
    }

    /// Adds the box sitting in the concave corner with coordinate `u`.
    pub fn add_box(&self, u: i64) -> Result<Self> {
        if !self.corners().concave.contains(&u) {
            return Err(Error::NotConcaveCorner(u));
        }
        let mut parts = self.parts.clone();
        // The corner at u sits at the end of the row with index y, where
        // parts[y] - y = u; a new row starts when u = -len.
        let row = (0..=parts.len()).find(|&y| self.part(y) as i64 - y as i64 == u);
        match row {
            Some(y) if y < parts.len() => parts[y] += 1,
            _ => parts.push(1),
        }
        Ok(Self { n: self.n + 1, parts })
    }

    /// Diagrams obtained by adding a single box.
    pub fn successors(&self) -> Vec<Self> {
        self.corners().concave.iter().map(|&u| self.add_box(u).expect("concave corner")).collect()
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all_of_size(n: usize) -> Vec<Self> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<YoungDiagram>) {
            if rest == 0 {
                out.push(YoungDiagram::from_parts(cur.clone()).expect("valid by construction"));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// `d_XY` between the `c`-rescaled diagrams: the larger of the sup-distance
    /// between parts and between conjugate parts.
    pub fn d_xy(&self, other: &Self, c: f64) -> f64 {
        let dx = sup_part_distance(&self.parts, &other.parts);
        let dy = sup_part_distance(&self.conjugate().parts, &other.conjugate().parts);
        c * dx.max(dy) as f64
    }

    /// `d_XY` between the `c`-rescaled diagram and a limit curve, sampled on
    /// the part-index grid: row `i` is compared against `X((i-1)c)` and
    /// `X(ic)`, column `j` against `Y((j-1)c)` and `Y(jc)`.
    pub fn d_xy_to_curve<C: CurveParametrization + ?Sized>(&self, c: f64, curve: &C) -> f64 {
        let dx = grid_distance(&self.parts, c, curve.y_extent(), |y| curve.x_of_y(y));
        let dy = grid_distance(&self.conjugate().parts, c, curve.x_extent(), |x| curve.y_of_x(x));
        dx.max(dy)
    }
}

fn sup_part_distance(a: &[usize], b: &[usize]) -> usize {
    let len = a.len().max(b.len());
    (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            x.abs_diff(y)
        })
        .max()
        .unwrap_or(0)
}

fn grid_distance(parts: &[usize], c: f64, extent: f64, curve: impl Fn(f64) -> f64) -> f64 {
    // Past both the last row and the curve's extent every term is zero.
    let rows = parts.len().max((extent / c).ceil() as usize + 1);
    (1..=rows)
        .map(|i| {
            let part = c * parts.get(i - 1).copied().unwrap_or(0) as f64;
            let lower = (part - curve((i - 1) as f64 * c)).abs();
            let upper = (part - curve(i as f64 * c)).abs();
            lower.max(upper)
        })
        .fold(0.0, f64::max)
}

impl TryFrom<Vec<usize>> for YoungDiagram {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Self::from_parts(parts)
    }
}

impl From<YoungDiagram> for Vec<usize> {
    fn from(d: YoungDiagram) -> Self {
        d.parts
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Parses `"4,2,2,2"` (optionally parenthesised); the empty string or `"()"`
/// is the empty diagram.
impl FromStr for YoungDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if trimmed.is_empty() {
            return Ok(Self::empty());
        }
        let parts = trimmed
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::ParseParts { input: s.to_string(), reason: e.to_string() })?;
        Self::from_parts(parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_support::diagram_strategy;
    use proptest::prelude::*;

    fn d(parts: &[usize]) -> YoungDiagram {
        YoungDiagram::from_parts(parts.to_vec()).unwrap()
    }

    /// x(y) = max(sqrt2 - y, 0): the triangle diagram in French coordinates.
    struct Triangle;

    impl CurveParametrization for Triangle {
        fn x_of_y(&self, y: f64) -> f64 {
            (2f64.sqrt() - y).max(0.0)
        }
        fn y_of_x(&self, x: f64) -> f64 {
            (2f64.sqrt() - x).max(0.0)
        }
    }

    struct Flat(f64);

    impl CurveParametrization for Flat {
        fn x_of_y(&self, y: f64) -> f64 {
            if y < 1.0 {
                self.0
            } else {
                0.0
            }
        }
        fn y_of_x(&self, x: f64) -> f64 {
            if x < self.0 {
                1.0
            } else {
                0.0
            }
        }
    }

    #[test]
    fn construction() {
        assert_eq!(d(&[]).n(), 0);
        assert_eq!(d(&[4, 2, 2, 2]).n(), 10);
        assert!(matches!(YoungDiagram::from_parts(vec![2, 3]), Err(Error::InvalidParts(_))));
        assert!(YoungDiagram::from_parts(vec![2, 0]).is_err());
    }

    #[test]
    fn staircases() {
        assert_eq!(YoungDiagram::staircase(1), d(&[1]));
        assert_eq!(YoungDiagram::staircase(3), d(&[3, 2, 1]));
        assert_eq!(YoungDiagram::staircase(3).n(), 6);
        assert_eq!(YoungDiagram::staircase(19).n(), 190);
        assert!(YoungDiagram::staircase(0).is_empty());
    }

    #[test]
    fn conjugates() {
        assert_eq!(d(&[2, 1]).conjugate(), d(&[2, 1]));
        assert_eq!(d(&[4, 2, 2, 2]).conjugate(), d(&[4, 4, 1, 1]));
        assert_eq!(d(&[]).conjugate(), d(&[]));
    }

    #[test]
    fn corner_examples() {
        let c = d(&[4, 2, 2, 2]).corners();
        assert_eq!(c.concave, vec![-4, 1, 4]);
        assert_eq!(c.convex, vec![-2, 3]);
        let c = d(&[]).corners();
        assert_eq!(c.concave, vec![0]);
        assert!(c.convex.is_empty());
        let c = d(&[2, 1]).corners();
        assert_eq!(c.concave, vec![-2, 0, 2]);
        assert_eq!(c.convex, vec![-1, 1]);
    }

    #[test]
    fn profile_examples() {
        assert_eq!(d(&[]).profile_value(1.0, 3.0), 3.0);
        assert_eq!(d(&[1]).profile_value(1.0, 0.0), 2.0);
        assert_eq!(d(&[1]).profile_value(1.0, 1.5), 1.5);
        // rescaling: c * omega(u / c)
        assert_eq!(d(&[1]).profile_value(0.5, 0.0), 1.0);
    }

    #[test]
    fn adding_boxes() {
        assert_eq!(d(&[]).add_box(0).unwrap(), d(&[1]));
        assert_eq!(d(&[1]).add_box(1).unwrap(), d(&[2]));
        assert_eq!(d(&[1]).add_box(-1).unwrap(), d(&[1, 1]));
        assert_eq!(d(&[1]).add_box(0), Err(Error::NotConcaveCorner(0)));
        assert_eq!(d(&[4, 2, 2, 2]).add_box(1).unwrap(), d(&[4, 3, 2, 2]));
    }

    #[test]
    fn partitions_enumerated() {
        let counts: Vec<usize> = (0..=8).map(|n| YoungDiagram::all_of_size(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
    }

    #[test]
    fn d_xy_examples() {
        assert_eq!(d(&[2, 1]).d_xy(&d(&[1, 1]), 1.0), 1.0);
        assert_eq!(d(&[3, 1]).d_xy(&d(&[3, 1]), 0.7), 0.0);
        assert_eq!(d(&[3]).d_xy(&d(&[]), 0.5), 1.5);
    }

    #[test]
    fn d_xy_to_curve_examples() {
        assert!(d(&[]).d_xy_to_curve(1.0, &Flat(2.0)) >= 2.0);
        // Row 1 fits exactly when X(0) = X(c) = c * parts[0].
        let contribution = grid_distance(&[2], 1.0, 0.0, |y| if y <= 1.0 { 2.0 } else { 0.0 });
        assert_eq!(contribution, 0.0);
    }

    #[test]
    fn staircase_distance_to_triangle_is_order_one_over_n() {
        let mut scaled = Vec::new();
        for size in [10usize, 20, 40, 80] {
            let st = YoungDiagram::staircase(size);
            let c = 1.0 / (st.n() as f64).sqrt();
            let dist = st.d_xy_to_curve(c, &Triangle);
            scaled.push(size as f64 * dist);
        }
        for s in &scaled {
            assert!(*s <= 4.0, "{scaled:?}");
        }
        // N * d converges to sqrt(2)/2 from below; successive gaps shrink.
        let limit = 2f64.sqrt() / 2.0;
        let gaps: Vec<f64> = scaled.iter().map(|s| (limit - s).abs()).collect();
        assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{scaled:?}");
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("4,2,2,2".parse::<YoungDiagram>().unwrap(), d(&[4, 2, 2, 2]));
        assert_eq!("".parse::<YoungDiagram>().unwrap(), d(&[]));
        assert_eq!("(3, 1)".parse::<YoungDiagram>().unwrap(), d(&[3, 1]));
        assert!("1,x".parse::<YoungDiagram>().is_err());
        assert!("1,2".parse::<YoungDiagram>().is_err());
        assert_eq!(d(&[3, 1]).to_string(), "(3,1)");
        let json = serde_json::to_string(&d(&[4, 2])).unwrap();
        assert_eq!(json, "[4,2]");
        assert!(serde_json::from_str::<YoungDiagram>("[1,2]").is_err());
    }

    proptest! {
        #[test]
        fn corners_interlace(dg in diagram_strategy(60)) {
            let c = dg.corners();
            prop_assert_eq!(c.concave.len(), c.convex.len() + 1);
            for (j, y) in c.convex.iter().enumerate() {
                prop_assert!(c.concave[j] < *y && *y < c.concave[j + 1]);
            }
        }

        #[test]
        fn conjugation_is_involution(dg in diagram_strategy(40)) {
            prop_assert_eq!(dg.conjugate().conjugate(), dg.clone());
            prop_assert_eq!(dg.conjugate().n(), dg.n());
        }

        #[test]
        fn d_xy_is_a_metric(a in diagram_strategy(30), b in diagram_strategy(30),
                            e in diagram_strategy(30), c in 0.1f64..3.0) {
            prop_assert_eq!(a.d_xy(&b, c), b.d_xy(&a, c));
            prop_assert_eq!(a.d_xy(&a, c), 0.0);
            if a != b {
                prop_assert!(a.d_xy(&b, c) > 0.0);
            }
            prop_assert!(a.d_xy(&e, c) <= a.d_xy(&b, c) + b.d_xy(&e, c) + 1e-12);
            prop_assert_eq!(a.d_xy(&b, c), a.conjugate().d_xy(&b.conjugate(), c));
        }

        #[test]
        fn profile_is_compact_perturbation_of_abs(dg in diagram_strategy(40)) {
            let reach = (dg.len().max(dg.part(0)) + 1) as f64;
            let grid: Vec<f64> = (-400..=400).map(|k| k as f64 * 0.125).collect();
            for w in grid.windows(2) {
                let a = dg.profile_value(1.0, w[0]);
                let b = dg.profile_value(1.0, w[1]);
                prop_assert!((a - b).abs() <= (w[1] - w[0]) + 1e-12);
                prop_assert!(a >= w[0].abs() - 1e-12);
                if w[0].abs() > reach {
                    prop_assert!((a - w[0].abs()).abs() < 1e-12);
                }
            }
        }

        #[test]
        fn add_box_at_every_corner(dg in diagram_strategy(30)) {
            for u in dg.corners().concave {
                let bigger = dg.add_box(u).unwrap();
                prop_assert_eq!(bigger.n(), dg.n() + 1);
            }
        }
    }
}
