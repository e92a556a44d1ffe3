//! Schensted row insertion on tableaux with real entries, the RSK pair
//! `(P, Q)`, and statistics of a tableau derived from insertion: the
//! insertion coordinate `uIns(T; z)`, the cumulative function `F_T`, and the
//! jeu de taquin path.
//!
//! Rows are stored bottom-up (French convention): `rows[0]` is the longest
//! row. Boxes use 1-based `(x, y)` = (column, row).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::diagrams::YoungDiagram;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BoxCoord {
    pub x: usize,
    pub y: usize,
    pub u: i64,
}

impl BoxCoord {
    pub fn new(x: usize, y: usize) -> Self {
        Self { x, y, u: x as i64 - y as i64 }
    }
}

/// A filling with entries in `[0, 1]`, weakly increasing along rows and
/// strictly increasing up columns.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct RealTableau {
    rows: Vec<Vec<f64>>,
}

/// A filling by `1..=n`, each used once, increasing along rows and columns.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct StandardTableau {
    rows: Vec<Vec<usize>>,
}

/// Result of inserting one value.
#[derive(Debug, Clone, PartialEq)]
pub struct Insertion {
    pub tableau: RealTableau,
    pub new_box: BoxCoord,
    /// One changed box per visited row, ending at the new box.
    pub route: Vec<BoxCoord>,
}

fn check_shape<T>(rows: &[Vec<T>]) -> Result<()> {
    if rows.iter().any(|r| r.is_empty()) {
        return Err(Error::InvalidTableau("empty row".into()));
    }
    if rows.windows(2).any(|w| w[0].len() < w[1].len()) {
        return Err(Error::InvalidTableau("row lengths must weakly decrease".into()));
    }
    Ok(())
}

impl RealTableau {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        check_shape(&rows)?;
        for (r, row) in rows.iter().enumerate() {
            if let Some(&z) = row.iter().find(|z| !(0.0..=1.0).contains(*z)) {
                return Err(Error::ValueOutOfRange(z));
            }
            if row.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::InvalidTableau(format!("row {} is not weakly increasing", r + 1)));
            }
            if r > 0 && row.iter().zip(&rows[r - 1]).any(|(above, below)| above <= below) {
                return Err(Error::InvalidTableau(format!("column violation in row {}", r + 1)));
            }
        }
        Ok(Self { rows })
    }

    /// Builds a tableau from a standard tableau by replacing label `k` with
    /// `values[k - 1]`; `values` must be sorted ascending.
    pub fn from_standard(q: &StandardTableau, values: &[f64]) -> Self {
        debug_assert_eq!(q.n(), values.len());
        let rows = q.rows().iter().map(|row| row.iter().map(|&k| values[k - 1]).collect()).collect();
        Self { rows }
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn n(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn shape(&self) -> YoungDiagram {
        YoungDiagram::from_parts(self.rows.iter().map(Vec::len).collect()).expect("valid tableau shape")
    }

    pub fn get(&self, b: BoxCoord) -> Option<f64> {
        self.rows.get(b.y - 1).and_then(|r| r.get(b.x - 1)).copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = f64> + '_ {
        self.rows.iter().flatten().copied()
    }

    /// Inserts `z` in place and returns the coordinates of the new box.
    pub fn insert_mut(&mut self, z: f64) -> Result<BoxCoord> {
        check_value(z)?;
        Ok(self.bump_in_place(z, None))
    }

    fn bump_in_place(&mut self, z: f64, mut route: Option<&mut Vec<BoxCoord>>) -> BoxCoord {
        let mut carry = z;
        let mut y = 0;
        loop {
            if y == self.rows.len() {
                self.rows.push(Vec::new());
            }
            let row = &mut self.rows[y];
            // leftmost entry strictly larger than the carried value
            let i = row.partition_point(|&e| e <= carry);
            let b = BoxCoord::new(i + 1, y + 1);
            if let Some(r) = route.as_deref_mut() {
                r.push(b);
            }
            if i == row.len() {
                row.push(carry);
                return b;
            }
            carry = std::mem::replace(&mut row[i], carry);
            y += 1;
        }
    }

    /// Schensted row insertion of `z`, returning a new tableau.
    pub fn insert(&self, z: f64) -> Result<Insertion> {
        check_value(z)?;
        let mut tableau = self.clone();
        let mut route = Vec::new();
        let new_box = tableau.bump_in_place(z, Some(&mut route));
        Ok(Insertion { tableau, new_box, route })
    }

    /// Coordinates of the box that inserting `z` would create.
    pub fn ins_box(&self, z: f64) -> BoxCoord {
        let mut carry = z;
        for (y, row) in self.rows.iter().enumerate() {
            let i = row.partition_point(|&e| e <= carry);
            if i == row.len() {
                return BoxCoord::new(i + 1, y + 1);
            }
            carry = row[i];
        }
        BoxCoord::new(1, self.rows.len() + 1)
    }

    /// `uIns(T; z)`.
    pub fn u_ins(&self, z: f64) -> Result<i64> {
        check_value(z)?;
        Ok(self.ins_box(z).u)
    }

    /// Sorted distinct entries, the jump points of `z -> uIns(T; z)`.
    pub fn breakpoints(&self) -> Breakpoints<'_> {
        let mut zs: Vec<f64> = self.entries().collect();
        zs.sort_by(f64::total_cmp);
        zs.dedup();
        Breakpoints { tableau: self, zs }
    }

    /// `F_T(u) = inf { z in [0,1] : uIns(T; z) > u }`, with `inf {} = 1`.
    pub fn cumulative_f(&self, u: f64) -> f64 {
        self.breakpoints().cumulative_f(u)
    }
}

/// Candidate thresholds of a tableau's insertion function, sorted once and
/// reused for many evaluations of `F_T`.
#[derive(Debug, Clone)]
pub struct Breakpoints<'a> {
    tableau: &'a RealTableau,
    zs: Vec<f64>,
}

impl Breakpoints<'_> {
    /// `uIns` is a right-continuous non-decreasing step function that is
    /// constant on `[0, e_1)` and on each `[e_k, e_{k+1})`, so the infimum is
    /// attained at 0 or at an entry; binary search over them.
    pub fn cumulative_f(&self, u: f64) -> f64 {
        let t = self.tableau;
        if t.ins_box(0.0).u as f64 > u {
            return 0.0;
        }
        let k = self.zs.partition_point(|&z| t.ins_box(z).u as f64 <= u);
        self.zs.get(k).copied().unwrap_or(1.0)
    }

    pub fn values(&self) -> &[f64] {
        &self.zs
    }
}

fn check_value(z: f64) -> Result<()> {
    if (0.0..=1.0).contains(&z) {
        Ok(())
    } else {
        Err(Error::ValueOutOfRange(z))
    }
}

impl TryFrom<Vec<Vec<f64>>> for RealTableau {
    type Error = Error;

    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::from_rows(rows)
    }
}

impl From<RealTableau> for Vec<Vec<f64>> {
    fn from(t: RealTableau) -> Self {
        t.rows
    }
}

impl StandardTableau {
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        check_shape(&rows)?;
        let n: usize = rows.iter().map(Vec::len).sum();
        let mut seen = vec![false; n + 1];
        for (r, row) in rows.iter().enumerate() {
            for &k in row {
                if k == 0 || k > n || std::mem::replace(&mut seen[k], true) {
                    return Err(Error::InvalidTableau(format!("labels must be a permutation of 1..={n}")));
                }
            }
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidTableau(format!("row {} is not increasing", r + 1)));
            }
            if r > 0 && row.iter().zip(&rows[r - 1]).any(|(above, below)| above <= below) {
                return Err(Error::InvalidTableau(format!("column violation in row {}", r + 1)));
            }
        }
        Ok(Self { rows })
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<Vec<usize>>) -> Self {
        Self { rows }
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn n(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn shape(&self) -> YoungDiagram {
        YoungDiagram::from_parts(self.rows.iter().map(Vec::len).collect()).expect("valid tableau shape")
    }

    pub fn get(&self, b: BoxCoord) -> Option<usize> {
        self.rows.get(b.y - 1).and_then(|r| r.get(b.x - 1)).copied()
    }

    /// Box holding each label: `positions()[k - 1]` is the box of `k`.
    pub fn positions(&self) -> Vec<BoxCoord> {
        let mut out = vec![BoxCoord::new(0, 0); self.n()];
        for (y, row) in self.rows.iter().enumerate() {
            for (x, &k) in row.iter().enumerate() {
                out[k - 1] = BoxCoord::new(x + 1, y + 1);
            }
        }
        out
    }
}

impl TryFrom<Vec<Vec<usize>>> for StandardTableau {
    type Error = Error;

    fn try_from(rows: Vec<Vec<usize>>) -> Result<Self> {
        Self::from_rows(rows)
    }
}

impl From<StandardTableau> for Vec<Vec<usize>> {
    fn from(t: StandardTableau) -> Self {
        t.rows
    }
}

/// Insertion tableau `P(w)` and recording tableau `Q(w)`.
pub fn rsk(w: &[f64]) -> Result<(RealTableau, StandardTableau)> {
    let mut p = RealTableau::empty();
    let mut q: Vec<Vec<usize>> = Vec::new();
    for (k, &z) in w.iter().enumerate() {
        let b = p.insert_mut(z)?;
        if b.y > q.len() {
            q.push(Vec::new());
        }
        q[b.y - 1].push(k + 1);
    }
    Ok((p, StandardTableau::from_rows_unchecked(q)))
}

pub fn p_tableau(w: &[f64]) -> Result<RealTableau> {
    let mut p = RealTableau::empty();
    for &z in w {
        p.insert_mut(z)?;
    }
    Ok(p)
}

pub fn q_tableau(w: &[f64]) -> Result<StandardTableau> {
    rsk(w).map(|(_, q)| q)
}

pub fn rsk_shape(w: &[f64]) -> Result<YoungDiagram> {
    p_tableau(w).map(|p| p.shape())
}

/// Box `(x, y)` maps to `w[Q(x, y) - 1]`: the input letter whose insertion
/// created that box.
pub fn responsibility_matrix(w: &[f64]) -> Result<BTreeMap<BoxCoord, f64>> {
    let q = q_tableau(w)?;
    Ok(q.positions().into_iter().zip(w.iter().copied()).collect())
}

/// `F_T(u)`; see [`RealTableau::cumulative_f`].
pub fn cumulative_f(t: &RealTableau, u: f64) -> f64 {
    t.cumulative_f(u)
}

/// Jeu de taquin path of a standard tableau in lazy parametrisation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JdtPath {
    /// Boxes visited, starting at `(1, 1)`.
    pub path: Vec<BoxCoord>,
    /// `lazy[n - 1] = j_n`, the last path box holding a label `<= n`.
    pub lazy: Vec<BoxCoord>,
    /// Set when `n_max` exceeded the tableau's size and `lazy` was cut short.
    pub truncated: bool,
}

/// Walks from the corner box, always stepping to the neighbour `(x+1, y)` or
/// `(x, y+1)` with the smaller label. A neighbour outside the tableau loses,
/// which agrees with any extension of `q` by larger labels; so `j_n` is exact
/// for every `n <= q.n()`.
pub fn jdt_lazy_path(q: &StandardTableau, n_max: usize) -> JdtPath {
    let mut path = Vec::new();
    if q.n() > 0 {
        let mut cur = BoxCoord::new(1, 1);
        path.push(cur);
        loop {
            let right = q.get(BoxCoord::new(cur.x + 1, cur.y)).map(|v| (v, BoxCoord::new(cur.x + 1, cur.y)));
            let up = q.get(BoxCoord::new(cur.x, cur.y + 1)).map(|v| (v, BoxCoord::new(cur.x, cur.y + 1)));
            let next = match (right, up) {
                (Some(a), Some(b)) => Some(if a.0 < b.0 { a } else { b }),
                (a, b) => a.or(b),
            };
            match next {
                Some((_, b)) => {
                    path.push(b);
                    cur = b;
                }
                None => break,
            }
        }
    }
    let reach = n_max.min(q.n());
    let mut lazy = Vec::with_capacity(reach);
    let mut k = 0;
    for n in 1..=reach {
        while k + 1 < path.len() && q.get(path[k + 1]).expect("path box") <= n {
            k += 1;
        }
        lazy.push(path[k]);
    }
    JdtPath { path, lazy, truncated: n_max > q.n() }
}
