//! Kerov's transition measure of a Young diagram and the quantities built on
//! it: the cumulative function `K`, the Plancherel growth step, the modified
//! Cauchy transform `G+` and the (regularised) interaction energy.
//!
//! Atom weights come from the partial-fraction expansion
//!
//! ```text
//!   prod_j (z - y_j) / prod_i (z - x_i) = sum_i p_i / (z - x_i)
//! ```
//!
//! over concave corners `x_i` and convex corners `y_j`, evaluated exactly.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::diagrams::YoungDiagram;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub location: f64,
    pub weight: f64,
}

/// A finitely supported probability measure with strictly increasing atom
/// locations and positive weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MeasureArrays", into = "MeasureArrays")]
pub struct DiscreteMeasure {
    atoms: Vec<Atom>,
}

#[derive(Serialize, Deserialize)]
struct MeasureArrays {
    locations: Vec<f64>,
    weights: Vec<f64>,
}

/// Transition measure with exact rational weights on integer locations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMeasure {
    pub atoms: Vec<(i64, BigRational)>,
}

const WEIGHT_SUM_TOLERANCE: f64 = 1e-9;

impl DiscreteMeasure {
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidMeasure("no atoms".into()));
        }
        if atoms.windows(2).any(|w| !(w[0].location < w[1].location)) {
            return Err(Error::InvalidMeasure("locations must be strictly increasing".into()));
        }
        if atoms.iter().any(|a| !(a.weight > 0.0 && a.weight <= 1.0)) {
            return Err(Error::InvalidMeasure("weights must lie in (0, 1]".into()));
        }
        let total: f64 = atoms.iter().map(|a| a.weight).sum();
        if (total - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
            return Err(Error::InvalidMeasure(format!("weights sum to {total}")));
        }
        Ok(Self { atoms })
    }

    pub fn dirac(location: f64) -> Self {
        Self { atoms: vec![Atom { location, weight: 1.0 }] }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn mean(&self) -> f64 {
        self.atoms.iter().map(|a| a.location * a.weight).sum()
    }

    /// Image of the measure under `x -> factor * x`.
    pub fn dilate(&self, factor: f64) -> Self {
        assert!(factor > 0.0, "dilation factor must be positive");
        let atoms = self.atoms.iter().map(|a| Atom { location: a.location * factor, weight: a.weight }).collect();
        Self { atoms }
    }

    /// `K(u) = mu((-inf, u])`.
    pub fn cumulative(&self, u: f64) -> f64 {
        let k = self.atoms.partition_point(|a| a.location <= u);
        if k == self.atoms.len() {
            return 1.0;
        }
        self.atoms[..k].iter().map(|a| a.weight).sum()
    }

    /// `G+(u) = sum 1 / (|u - x| + 1) mu(x)`.
    pub fn cauchy_plus(&self, u: f64) -> f64 {
        self.atoms.iter().map(|a| a.weight / ((u - a.location).abs() + 1.0)).sum()
    }

    /// Sum over atom pairs `x1 <= u0 < x2` of `w1 w2 / (x2 - x1 + eps)`.
    pub fn interaction_energy(&self, u0: f64, eps: f64) -> f64 {
        assert!(eps >= 0.0, "regularisation must be non-negative");
        let split = self.atoms.partition_point(|a| a.location <= u0);
        let (left, right) = self.atoms.split_at(split);
        left.iter().flat_map(|a| right.iter().map(move |b| a.weight * b.weight / (b.location - a.location + eps))).sum()
    }

    /// Inverse-CDF draw of an atom index from a single uniform.
    pub fn sample_index<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let target: f64 = rng.gen();
        let mut acc = 0.0;
        for (i, a) in self.atoms.iter().enumerate() {
            acc += a.weight;
            if target < acc {
                return i;
            }
        }
        self.atoms.len() - 1
    }
}

impl TryFrom<MeasureArrays> for DiscreteMeasure {
    type Error = Error;

    fn try_from(m: MeasureArrays) -> Result<Self> {
        if m.locations.len() != m.weights.len() {
            return Err(Error::InvalidMeasure("locations and weights differ in length".into()));
        }
        let atoms = m.locations.into_iter().zip(m.weights).map(|(location, weight)| Atom { location, weight }).collect();
        Self::new(atoms)
    }
}

impl From<DiscreteMeasure> for MeasureArrays {
    fn from(m: DiscreteMeasure) -> Self {
        Self { locations: m.atoms.iter().map(|a| a.location).collect(), weights: m.atoms.iter().map(|a| a.weight).collect() }
    }
}

impl ExactMeasure {
    pub fn to_f64(&self) -> DiscreteMeasure {
        let atoms = self.atoms.iter().map(|(x, w)| Atom { location: *x as f64, weight: w.to_f64().expect("finite weight") }).collect();
        DiscreteMeasure { atoms }
    }

    pub fn weight_at(&self, location: i64) -> BigRational {
        self.atoms.iter().find(|(x, _)| *x == location).map(|(_, w)| w.clone()).unwrap_or_else(BigRational::zero)
    }
}

/// Exact partial-fraction weights of the diagram's Cauchy transform.
pub fn exact_transition_measure(d: &YoungDiagram) -> ExactMeasure {
    let corners = d.corners();
    let atoms = corners
        .concave
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let mut num = BigInt::one();
            for &y in &corners.convex {
                num *= BigInt::from(x - y);
            }
            let mut den = BigInt::one();
            for (k, &other) in corners.concave.iter().enumerate() {
                if k != i {
                    den *= BigInt::from(x - other);
                }
            }
            (x, BigRational::new(num, den))
        })
        .collect();
    ExactMeasure { atoms }
}

/// Transition measure with weights computed exactly, then rounded.
pub fn transition_measure(d: &YoungDiagram) -> DiscreteMeasure {
    exact_transition_measure(d).to_f64()
}

/// Transition measure in plain floating point: each weight is accumulated as
/// a product of corner-difference ratios, interleaved to stay near unity.
pub fn transition_measure_f64(d: &YoungDiagram) -> DiscreteMeasure {
    let corners = d.corners();
    let xs = &corners.concave;
    let ys = &corners.convex;
    let atoms = xs
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let mut w = 1.0f64;
            let others = xs.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &o)| o);
            for (y, o) in ys.iter().zip(others) {
                w *= (x - y) as f64 / (x - o) as f64;
            }
            Atom { location: x as f64, weight: w }
        })
        .collect();
    DiscreteMeasure { atoms }
}

/// `K_lambda(u)`: the cumulative function of the transition measure.
pub fn cumulative_k(m: &DiscreteMeasure, u: f64) -> f64 {
    m.cumulative(u)
}

/// One step of the Plancherel growth process: a box is added at concave
/// corner `x_i` with probability `p_i`.
pub fn growth_step<R: Rng + ?Sized>(d: &YoungDiagram, rng: &mut R) -> YoungDiagram {
    let m = transition_measure(d);
    let i = m.sample_index(rng);
    let u = m.atoms()[i].location as i64;
    d.add_box(u).expect("atoms sit on concave corners")
}

/// Number of standard Young tableaux of shape `d`, by the hook-length formula.
pub fn hook_count(d: &YoungDiagram) -> BigUint {
    let conj = d.conjugate();
    let mut hooks = BigUint::one();
    for (row, &len) in d.parts().iter().enumerate() {
        for col in 0..len {
            let arm = len - col - 1;
            let leg = conj.part(col) - row - 1;
            hooks *= BigUint::from(arm + leg + 1);
        }
    }
    factorial(d.n()) / hooks
}

pub(crate) fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// `(f^lambda)^2 / n!` as an exact rational.
pub fn plancherel_pmf_exact(d: &YoungDiagram) -> BigRational {
    let f = BigInt::from(hook_count(d));
    BigRational::new(&f * &f, BigInt::from(factorial(d.n())))
}

pub fn plancherel_pmf(d: &YoungDiagram) -> f64 {
    plancherel_pmf_exact(d).to_f64().expect("probability is finite")
}
