//! Monte Carlo estimation of the double cumulative function
//! `F(u, z) = P(F_T(u) <= z)` for a uniform Poissonized tableau `T` of a
//! fixed shape, plus the transition-zone coordinates in which it develops a
//! Gaussian profile.

use std::io::Write;

use rand::Rng;
use serde::{Deserialize, Serialize};
use statrs::distribution::Normal;

use crate::diagrams::YoungDiagram;
use crate::error::{Error, Result};
use crate::limit_shapes::{normal_cdf, LimitMeasure};
use crate::parallel::MonteCarlo;
use crate::sampling::poissonized;

/// Estimates on a `u_grid x z_grid` lattice, all cells sharing one sample of
/// tableaux. `estimates[i][j]` belongs to `(u_grid[i], z_grid[j])`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DcfGrid {
    pub shape: YoungDiagram,
    pub u_grid: Vec<f64>,
    pub z_grid: Vec<f64>,
    pub estimates: Vec<Vec<f64>>,
    pub std_errors: Vec<Vec<f64>>,
    pub samples: usize,
    pub seed: u64,
    pub stream: u64,
}

fn is_sorted(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[0] <= w[1])
}

/// Binomial Wald error; degenerate cells get the rule-of-three bound.
fn wald_error(p: f64, samples: usize) -> f64 {
    let m = samples as f64;
    if p == 0.0 || p == 1.0 {
        3.0 / m
    } else {
        (p * (1.0 - p) / m).sqrt()
    }
}

pub fn estimate_dcf(shape: &YoungDiagram, u_grid: &[f64], z_grid: &[f64], samples: usize, mc: &MonteCarlo, stream: u64) -> Result<DcfGrid> {
    if samples == 0 {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    if !is_sorted(u_grid) || !is_sorted(z_grid) {
        return Err(Error::Precondition("grids must be sorted".into()));
    }
    if z_grid.iter().any(|z| !(0.0..=1.0).contains(z)) {
        return Err(Error::Precondition("z grid must lie in [0, 1]".into()));
    }
    let cells = u_grid.len() * z_grid.len();
    let partials = mc.run_chunks(stream, samples, |rng, count| {
        let mut counts = vec![0u64; cells];
        for _ in 0..count {
            let t = poissonized(shape, rng);
            let bp = t.breakpoints();
            for (i, &u) in u_grid.iter().enumerate() {
                let f = bp.cumulative_f(u);
                // [F_T(u) <= z] holds for a suffix of the sorted z grid
                let first = z_grid.partition_point(|&z| z < f);
                for c in &mut counts[i * z_grid.len() + first..(i + 1) * z_grid.len()] {
                    *c += 1;
                }
            }
        }
        counts
    });
    let mut totals = vec![0u64; cells];
    for part in partials {
        for (t, c) in totals.iter_mut().zip(part) {
            *t += c;
        }
    }
    let m = samples as f64;
    let estimates: Vec<Vec<f64>> = totals.chunks(z_grid.len().max(1)).map(|row| row.iter().map(|&c| c as f64 / m).collect()).collect();
    let estimates = if z_grid.is_empty() { vec![Vec::new(); u_grid.len()] } else { estimates };
    let std_errors = estimates.iter().map(|row| row.iter().map(|&p| wald_error(p, samples)).collect()).collect();
    Ok(DcfGrid {
        shape: shape.clone(),
        u_grid: u_grid.to_vec(),
        z_grid: z_grid.to_vec(),
        estimates,
        std_errors,
        samples,
        seed: mc.seed,
        stream,
    })
}

impl DcfGrid {
    pub fn estimate(&self, i: usize, j: usize) -> f64 {
        self.estimates[i][j]
    }

    /// Row-major CSV with header `u,z,estimate,std_error`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["u", "z", "estimate", "std_error"])?;
        for (i, &u) in self.u_grid.iter().enumerate() {
            for (j, &z) in self.z_grid.iter().enumerate() {
                w.write_record(&[u.to_string(), z.to_string(), self.estimates[i][j].to_string(), self.std_errors[i][j].to_string()])?;
            }
        }
        w.flush()?;
        Ok(())
    }

    /// JSON envelope for external plotting.
    pub fn to_json(&self, elapsed_seconds: Option<f64>) -> serde_json::Value {
        serde_json::json!({
            "shape": self.shape,
            "seed": self.seed,
            "stream": self.stream,
            "samples": self.samples,
            "timing_seconds": elapsed_seconds,
            "u_grid": self.u_grid,
            "z_grid": self.z_grid,
            "estimates": self.estimates,
            "std_errors": self.std_errors,
        })
    }
}

/// Centre and scales of the transition zone around `(sqrt(n) u0, z0)`:
/// limit density `f0` and interaction energy `e0` at `u0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransitionFrame {
    pub n: usize,
    pub u0: f64,
    pub z0: f64,
    pub f0: f64,
    pub e0: f64,
}

impl TransitionFrame {
    pub fn new(n: usize, u0: f64, z0: f64, f0: f64, e0: f64) -> Result<Self> {
        if n == 0 || !(f0 > 0.0) || !(e0 > 0.0) || !(z0 > 0.0 && z0 < 1.0) {
            return Err(Error::Precondition(format!(
                "frame needs n >= 1, f0 > 0, e0 > 0 and 0 < z0 < 1 (n={n}, f0={f0}, e0={e0}, z0={z0})"
            )));
        }
        Ok(Self { n, u0, z0, f0, e0 })
    }

    /// Frame at level `z0` read off a limit measure's closed forms.
    pub fn from_limit(measure: LimitMeasure, n: usize, z0: f64) -> Result<Self> {
        if !(z0 > 0.0 && z0 < 1.0) {
            return Err(Error::InvalidLevel(z0));
        }
        let u0 = measure.quantile(z0)?;
        Self::new(n, u0, z0, measure.density(u0), measure.energy(u0))
    }

    fn quarter_root(&self) -> f64 {
        (self.n as f64).powf(0.25)
    }

    /// `U = sqrt(n) u0 + n^(1/4) q`.
    pub fn u_coord(&self, q: f64) -> f64 {
        (self.n as f64).sqrt() * self.u0 + self.quarter_root() * q
    }

    /// `(U, Z) = (sqrt(n) u0 + n^(1/4) q, z0 + xi / n^(1/4))`; `Z` outside
    /// `[0, 1]` is an error.
    pub fn coords(&self, q: f64, xi: f64) -> Result<(f64, f64)> {
        let r = self.quarter_root();
        let u = self.u_coord(q);
        let z = self.z0 + xi / r;
        if !(0.0..=1.0).contains(&z) {
            return Err(Error::LevelOutOfRange(z));
        }
        Ok((u, z))
    }

    /// Normalised cumulative function
    /// `n^(1/4) / sqrt(e0) * (F_T(U) - z0 - f0 q / n^(1/4))`, given `F_T(U)`.
    pub fn normalize(&self, cumulative_at_u: f64, q: f64) -> f64 {
        let r = self.quarter_root();
        r / self.e0.sqrt() * (cumulative_at_u - (self.z0 + self.f0 * q / r))
    }

    /// Limit profile `Phi((xi - f0 q) / sqrt(e0))`.
    pub fn gaussian_target(&self, q: f64, xi: f64) -> f64 {
        normal_cdf((xi - self.f0 * q) / self.e0.sqrt())
    }
}

pub fn transition_coords(frame: &TransitionFrame, q: f64, xi: f64) -> Result<(f64, f64)> {
    frame.coords(q, xi)
}

/// `X_{n,q}` for a tableau of the frame's size.
pub fn x_stat(t: &crate::rsk::RealTableau, frame: &TransitionFrame, q: f64) -> f64 {
    frame.normalize(t.cumulative_f(frame.u_coord(q)), q)
}

/// Chebyshev-type upper bound `1 / ((u - u') (K(u') - z)^2)` on `F(u, z)`.
pub fn chebyshev_bound(k: impl Fn(f64) -> f64, u: f64, u_prime: f64, z: f64) -> Result<f64> {
    let ku = k(u_prime);
    if !(u_prime < u) || !(0.0..ku).contains(&z) {
        return Err(Error::Precondition(format!("need u' < u and 0 <= z < K(u'); got u={u}, u'={u_prime}, z={z}, K(u')={ku}")));
    }
    Ok(1.0 / ((u - u_prime) * (ku - z).powi(2)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileCell {
    pub q: f64,
    pub xi: f64,
    pub u: f64,
    pub z: f64,
    pub estimate: f64,
    pub std_error: f64,
    pub target: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileResidual {
    pub sup_residual: f64,
    pub cells: Vec<ProfileCell>,
}

/// Sup over the `(q, xi)` grid of `|F_hat(U, Z) - Phi((xi - f0 q) / sqrt(e0))|`.
pub fn gaussian_profile_residual(
    shape: &YoungDiagram,
    frame: &TransitionFrame,
    q_grid: &[f64],
    xi_grid: &[f64],
    samples: usize,
    mc: &MonteCarlo,
    stream: u64,
) -> Result<ProfileResidual> {
    let mut qs = q_grid.to_vec();
    let mut xis = xi_grid.to_vec();
    qs.sort_by(f64::total_cmp);
    xis.sort_by(f64::total_cmp);
    let u_grid = qs.iter().map(|&q| frame.coords(q, 0.0).map(|c| c.0)).collect::<Result<Vec<_>>>()?;
    let z_grid = xis.iter().map(|&xi| frame.coords(0.0, xi).map(|c| c.1)).collect::<Result<Vec<_>>>()?;
    let grid = estimate_dcf(shape, &u_grid, &z_grid, samples, mc, stream)?;
    let mut cells = Vec::with_capacity(qs.len() * xis.len());
    for (i, &q) in qs.iter().enumerate() {
        for (j, &xi) in xis.iter().enumerate() {
            cells.push(ProfileCell {
                q,
                xi,
                u: u_grid[i],
                z: z_grid[j],
                estimate: grid.estimates[i][j],
                std_error: grid.std_errors[i][j],
                target: frame.gaussian_target(q, xi),
            });
        }
    }
    let sup_residual = cells.iter().map(|c| (c.estimate - c.target).abs()).fold(0.0, f64::max);
    Ok(ProfileResidual { sup_residual, cells })
}

/// Exploratory mode with a random horizontal coordinate: `q` is drawn from
/// N(0, 1) afresh for every tableau, and the estimate is
/// `P(F_T(U_{n,Q}) <= Z_{n,xi})` together with its Wald error.
pub fn randomized_profile(
    shape: &YoungDiagram,
    frame: &TransitionFrame,
    xi: f64,
    samples: usize,
    mc: &MonteCarlo,
    stream: u64,
) -> Result<(f64, f64)> {
    if samples == 0 {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    let (_, z) = frame.coords(0.0, xi)?;
    let normal = Normal::new(0.0, 1.0).expect("standard normal");
    let hits = mc.run_chunks(stream, samples, |rng, count| {
        (0..count)
            .filter(|_| {
                let q: f64 = rng.sample(normal);
                poissonized(shape, rng).cumulative_f(frame.u_coord(q)) <= z
            })
            .count()
    });
    let p = hits.into_iter().sum::<usize>() as f64 / samples as f64;
    Ok((p, wald_error(p, samples)))
}

/// Limit of [`randomized_profile`]: mixing `Phi((xi - f0 q) / sqrt(e0))` over
/// a standard normal `q` gives `Phi(xi / sqrt(e0 + f0^2))`.
pub fn randomized_target(frame: &TransitionFrame, xi: f64) -> f64 {
    normal_cdf(xi / (frame.e0 + frame.f0 * frame.f0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limit_shapes::arcsine;
    use crate::rsk::RealTableau;
    use crate::transition::transition_measure;

    fn single() -> YoungDiagram {
        YoungDiagram::from_parts(vec![1]).unwrap()
    }

    /// Exact `F(u, z)` for the one-box shape: the entry is U(0,1) and
    /// `uIns` is -1 below it, +1 at and above it.
    fn single_box_dcf(u: f64, z: f64) -> f64 {
        if u <= -1.0 {
            1.0
        } else if u < 1.0 {
            z
        } else {
            0.0
        }
    }

    #[test]
    fn single_box_examples() {
        let mc = MonteCarlo::sequential(21);
        let g = estimate_dcf(&single(), &[-2.0, 0.0, 2.0], &[0.1, 0.3, 0.9], 20_000, &mc, 0).unwrap();
        for j in 0..3 {
            assert_eq!(g.estimate(0, j), 1.0);
            assert_eq!(g.estimate(2, j), 0.0);
            assert_eq!(g.std_errors[0][j], 3.0 / 20_000.0);
        }
        let p = g.estimate(1, 1);
        assert!((p - 0.3).abs() < 4.0 * g.std_errors[1][1], "{p}");
    }

    #[test]
    fn single_box_consistency_rate() {
        let u_grid = [-1.5, -0.5, 0.0, 0.5, 1.5];
        let z_grid = [0.2, 0.5, 0.8];
        let mut errors = Vec::new();
        for (k, samples) in [1_000usize, 10_000, 100_000].into_iter().enumerate() {
            let g = estimate_dcf(&single(), &u_grid, &z_grid, samples, &MonteCarlo::sequential(5), k as u64).unwrap();
            let mut worst = 0.0f64;
            for (i, &u) in u_grid.iter().enumerate() {
                for (j, &z) in z_grid.iter().enumerate() {
                    let dev = (g.estimate(i, j) - single_box_dcf(u, z)).abs();
                    assert!(dev <= 4.0 * g.std_errors[i][j] + 1e-12);
                    worst = worst.max(dev * (samples as f64).sqrt());
                }
            }
            errors.push(worst);
        }
        // sqrt(m)-scaled error stays O(1)
        assert!(errors.iter().all(|&e| e < 2.5), "{errors:?}");
    }

    #[test]
    fn grid_monotonicity() {
        let shape = YoungDiagram::staircase(6);
        let u_grid: Vec<f64> = (-7..=7).map(|k| k as f64 + 0.5).collect();
        let z_grid: Vec<f64> = (1..10).map(|k| k as f64 / 10.0).collect();
        let g = estimate_dcf(&shape, &u_grid, &z_grid, 5_000, &MonteCarlo::new(8, 2), 0).unwrap();
        for row in &g.estimates {
            assert!(row.windows(2).all(|w| w[0] <= w[1]));
            assert!(row.iter().all(|p| (0.0..=1.0).contains(p)));
        }
        for j in 0..z_grid.len() {
            for i in 1..u_grid.len() {
                let pooled = (g.std_errors[i][j].powi(2) + g.std_errors[i - 1][j].powi(2)).sqrt();
                assert!(g.estimates[i][j] <= g.estimates[i - 1][j] + 2.0 * pooled);
            }
        }
    }

    #[test]
    fn worker_count_does_not_matter() {
        let shape = YoungDiagram::staircase(5);
        let a = estimate_dcf(&shape, &[0.5], &[0.5], 1_000, &MonteCarlo::new(3, 1), 0).unwrap();
        let b = estimate_dcf(&shape, &[0.5], &[0.5], 1_000, &MonteCarlo::new(3, 4), 0).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn csv_layout() {
        let g = estimate_dcf(&single(), &[0.0], &[0.25, 0.75], 100, &MonteCarlo::sequential(1), 0).unwrap();
        let mut buf = Vec::new();
        g.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "u,z,estimate,std_error");
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("0,0.25,"));
        let json = g.to_json(Some(0.5));
        assert_eq!(json["samples"], 100);
        assert_eq!(json["shape"], serde_json::json!([1]));
    }

    #[test]
    fn coordinate_examples() {
        let f = TransitionFrame::new(16, 1.0, 0.5, 0.3, 0.2).unwrap();
        let (u, z) = transition_coords(&f, 0.5, 0.2).unwrap();
        assert!((u - 5.0).abs() < 1e-12 && (z - 0.6).abs() < 1e-12);
        assert_eq!(f.coords(0.0, 0.0).unwrap(), (4.0, 0.5));
        let one = TransitionFrame::new(1, 0.3, 0.4, 0.3, 0.2).unwrap();
        let (u, z) = one.coords(0.2, 0.1).unwrap();
        assert!((u - 0.5).abs() < 1e-15 && (z - 0.5).abs() < 1e-15);
        assert_eq!(f.coords(0.0, 2.5), Err(Error::LevelOutOfRange(1.75)));
        assert!(TransitionFrame::new(4, 0.0, 0.5, 0.0, 1.0).is_err());
    }

    #[test]
    fn x_stat_centering_and_scaling() {
        let f = TransitionFrame::new(16, 0.0, 0.5, 0.25, 0.1).unwrap();
        // F_T(U) equal to the centring term gives zero
        assert!(f.normalize(0.5 + 0.25 * 0.4 / 2.0, 0.4).abs() < 1e-15);
        let g = TransitionFrame { e0: 0.2, ..f };
        let a = f.normalize(0.7, 0.0);
        let b = g.normalize(0.7, 0.0);
        assert!((b - a / 2f64.sqrt()).abs() < 1e-12);
        let t = RealTableau::from_rows(vec![vec![0.6]]).unwrap();
        let one = TransitionFrame::new(1, 0.0, 0.5, 0.5, 0.25).unwrap();
        // F_T(0) = 0.6, centring term 0.5
        assert!((x_stat(&t, &one, 0.0) - 0.2).abs() < 1e-12);
    }

    #[test]
    fn chebyshev_examples() {
        let k = |u: f64| transition_measure(&single()).cumulative(u);
        assert_eq!(chebyshev_bound(k, 1.0, 0.0, 0.25).unwrap(), 16.0);
        assert!(chebyshev_bound(k, 1e9, 0.0, 0.25).unwrap() < 1e-7);
        assert!(chebyshev_bound(k, 1.0, 0.0, 0.5 - 1e-6).unwrap() > 1e11);
        assert!(chebyshev_bound(k, 0.0, 1.0, 0.25).is_err());
        assert!(chebyshev_bound(k, 1.0, 0.0, 0.5).is_err());
    }

    #[test]
    fn chebyshev_containment_on_staircase() {
        let shape = YoungDiagram::staircase(8);
        let m = transition_measure(&shape);
        let u_grid: Vec<f64> = (-9..=9).map(|k| k as f64).collect();
        let z_grid: Vec<f64> = (0..=20).map(|k| k as f64 / 20.0).collect();
        let g = estimate_dcf(&shape, &u_grid, &z_grid, 4_000, &MonteCarlo::sequential(12), 0).unwrap();
        let mut checked = 0;
        for (i, &u) in u_grid.iter().enumerate() {
            for &up in &u_grid[..i] {
                for (j, &z) in z_grid.iter().enumerate() {
                    if let Ok(bound) = chebyshev_bound(|x| m.cumulative(x), u, up, z) {
                        assert!(g.estimate(i, j) <= bound + 5.0 * g.std_errors[i][j], "u={u} u'={up} z={z}");
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked > 100);
    }

    #[test]
    fn target_profile_properties() {
        let f = TransitionFrame::new(100, 0.0, 0.5, 0.2, 1e12).unwrap();
        for q in [-1.0, 0.0, 1.0] {
            for xi in [-1.0, 0.0, 1.0] {
                assert!((f.gaussian_target(q, xi) - 0.5).abs() < 1e-6);
            }
        }
        let f = TransitionFrame::from_limit(arcsine(), 100, 0.5).unwrap();
        for c in [-0.3, 0.0, 0.4] {
            let a = f.gaussian_target(-1.0, c - f.f0);
            let b = f.gaussian_target(2.0, c + 2.0 * f.f0);
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn randomized_mode() {
        let shape = YoungDiagram::staircase(60);
        let frame = TransitionFrame::from_limit(arcsine(), shape.n(), 0.5).unwrap();
        // oracle for the mixture by quadrature over q
        let mixed = crate::test_support::tanh_sinh(
            |q| (-q * q / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt() * frame.gaussian_target(q, 0.5),
            -12.0,
            12.0,
        );
        assert!((randomized_target(&frame, 0.5) - mixed).abs() < 1e-8);
        let a = randomized_profile(&shape, &frame, 0.5, 4_000, &MonteCarlo::new(5, 1), 0).unwrap();
        let b = randomized_profile(&shape, &frame, 0.5, 4_000, &MonteCarlo::new(5, 3), 0).unwrap();
        assert_eq!(a, b);
        assert!((a.0 - randomized_target(&frame, 0.5)).abs() < 0.08, "{a:?}");
        assert!(randomized_profile(&shape, &frame, 0.5, 0, &MonteCarlo::new(5, 1), 0).is_err());
    }
}
