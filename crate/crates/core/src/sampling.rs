//! Seeded sampling of polydisc points.
//!
//! Every random draw goes through one `ChaCha8Rng` stream seeded with
//! `seed_from_u64`, so a seed fixes all samples on every platform.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Attempts per point before the separation constraint is declared infeasible.
pub const MAX_ATTEMPTS: usize = 100_000;

/// Uniform point of the closed disc `|z| <= radius` by rejection from the square.
pub fn disc_point<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> Complex64 {
    loop {
        let z = Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0));
        if z.norm_sqr() <= 1.0 {
            return z * radius;
        }
    }
}

/// Points of the polydisc of a given radius whose coordinates are pairwise
/// at least `separation` apart.
#[derive(Debug, Clone)]
pub struct PolydiscSampler {
    rng: ChaCha8Rng,
    n: usize,
    radius: f64,
    separation: f64,
}

impl PolydiscSampler {
    pub fn new(seed: u64, n: usize, radius: f64, separation: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        if !(radius > 0.0 && radius < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "radius must lie in (0, 1), got {radius}"
            )));
        }
        if !(separation >= 0.0) || !separation.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "separation must be non-negative, got {separation}"
            )));
        }
        Ok(Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            n,
            radius,
            separation,
        })
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn sample(&mut self) -> Result<Vec<Complex64>> {
        'attempt: for _ in 0..MAX_ATTEMPTS {
            let mut pts: Vec<Complex64> = Vec::with_capacity(self.n);
            for _ in 0..self.n {
                let z = disc_point(&mut self.rng, self.radius);
                if pts.iter().any(|p| (p - z).norm() < self.separation) {
                    continue 'attempt;
                }
                pts.push(z);
            }
            return Ok(pts);
        }
        Err(Error::InvalidArgument(format!(
            "could not place {} points with separation {} in the disc of radius {}",
            self.n, self.separation, self.radius
        )))
    }
}
