//! Seeded random sampling of standard and Poissonized tableaux.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagrams::YoungDiagram;
use crate::error::{Error, Result};
use crate::rsk::{p_tableau, RealTableau, StandardTableau};

/// ChaCha8 keyed by `seed`, positioned on stream `stream`. ChaCha streams are
/// disjoint keystreams, so workers need no coordination.
#[derive(Debug, Clone)]
pub struct SeededGenerator {
    seed: u64,
    stream: u64,
    rng: ChaCha8Rng,
}

impl SeededGenerator {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { seed, stream, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }
}

impl RngCore for SeededGenerator {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.rng.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> std::result::Result<(), rand::Error> {
        self.rng.try_fill_bytes(dest)
    }
}

/// Uniformly random standard tableau of shape `d` by the Greene-Nijenhuis-Wilf
/// hook walk. Labels are placed from `n` down to 1, each at the corner where
/// a walk started from a uniform box ends.
pub fn uniform_syt<R: Rng + ?Sized>(d: &YoungDiagram, rng: &mut R) -> StandardTableau {
    let mut rows: Vec<usize> = d.parts().to_vec();
    let mut cols: Vec<usize> = d.conjugate().parts().to_vec();
    let mut labels: Vec<Vec<usize>> = rows.iter().map(|&len| vec![0; len]).collect();
    let mut height = rows.len();

    for label in (1..=d.n()).rev() {
        let width = rows[0];
        // uniform box of the remaining diagram, by rejection from its bounding box
        let (mut r, mut c) = loop {
            let r = rng.gen_range(0..height);
            let c = rng.gen_range(0..width);
            if c < rows[r] {
                break (r, c);
            }
        };
        loop {
            let arm = rows[r] - c - 1;
            let leg = cols[c] - r - 1;
            if arm + leg == 0 {
                break;
            }
            let j = rng.gen_range(0..arm + leg);
            if j < arm {
                c += j + 1;
            } else {
                r += j - arm + 1;
            }
        }
        labels[r][c] = label;
        rows[r] -= 1;
        cols[c] -= 1;
        if rows[r] == 0 {
            height -= 1;
        }
    }
    StandardTableau::from_rows_unchecked(labels)
}

/// Uniform Poissonized tableau of shape `d`: a uniform standard tableau whose
/// label `k` is replaced by the `k`-th smallest of `n` i.i.d. uniforms.
pub fn poissonized<R: Rng + ?Sized>(d: &YoungDiagram, rng: &mut R) -> RealTableau {
    let q = uniform_syt(d, rng);
    let mut values: Vec<f64> = (0..d.n()).map(|_| rng.gen::<f64>()).collect();
    values.sort_unstable_by(f64::total_cmp);
    RealTableau::from_standard(&q, &values)
}

/// Insertion tableau of `n` i.i.d. uniforms.
pub fn plancherel_poissonized<R: Rng + ?Sized>(n: usize, rng: &mut R) -> RealTableau {
    let w: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
    p_tableau(&w).expect("uniforms lie in [0, 1]")
}

pub const REJECTION_MAX_BOXES: usize = 8;

/// A single rejection trial: fill `d` in reading order with i.i.d. uniforms
/// and keep the filling only if it is a tableau.
pub fn rejection_attempt<R: Rng + ?Sized>(d: &YoungDiagram, rng: &mut R) -> Result<Option<RealTableau>> {
    if d.n() > REJECTION_MAX_BOXES {
        return Err(Error::ShapeTooLarge(d.n()));
    }
    let rows: Vec<Vec<f64>> = d.parts().iter().map(|&len| (0..len).map(|_| rng.gen::<f64>()).collect()).collect();
    Ok(RealTableau::from_rows(rows).ok())
}

/// Exactly uniform Poissonized tableau for shapes with at most 8 boxes.
pub fn rejection_poissonized_oracle<R: Rng + ?Sized>(d: &YoungDiagram, rng: &mut R) -> Result<RealTableau> {
    loop {
        if let Some(t) = rejection_attempt(d, rng)? {
            return Ok(t);
        }
    }
}
