//! Seeded random curve classes for property checks.

use crate::error::{Error, Result};
use crate::intersection::IntersectionTable;
use crate::model::{CurveClass, Model};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Coefficients are drawn uniformly from `-BOUND..=BOUND`.
pub const BOUND: i64 = 10;

pub struct ClassSampler {
    rng: ChaCha8Rng,
}

impl ClassSampler {
    pub fn new(seed: u64) -> Self {
        ClassSampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn class(&mut self, model: Model) -> CurveClass {
        let coeffs = (0..model.rank()).map(|_| self.rng.gen_range(-BOUND..=BOUND)).collect();
        CurveClass::new(model, coeffs).expect("rank matches")
    }

    /// A random class with `−K·β = 0` and all coefficients in range.
    ///
    /// Draws a class, then solves for the coordinate whose `−K` weight has
    /// the smallest nonzero magnitude; draws again when that is not an
    /// integer in range.
    pub fn vdim_zero_class(&mut self, model: Model) -> Result<CurveClass> {
        let table = IntersectionTable::cached(model)?;
        let k = table.canonical_class();
        let weights: Vec<i64> = (0..model.rank())
            .map(|j| -table.intersect(&k, &CurveClass::basis(model, j)).expect("same model"))
            .collect();
        let pivot = (0..weights.len())
            .filter(|&j| weights[j] != 0)
            .min_by_key(|&j| (weights[j].abs(), j))
            .ok_or_else(|| Error::InvalidModel(format!("{model} has trivial anticanonical degree")))?;
        for _ in 0..100_000 {
            let mut c: Vec<i64> = (0..model.rank()).map(|_| self.rng.gen_range(-BOUND..=BOUND)).collect();
            c[pivot] = 0;
            let rest: i64 = c.iter().zip(&weights).map(|(x, w)| x * w).sum();
            if rest % weights[pivot] != 0 {
                continue;
            }
            let x = -rest / weights[pivot];
            if x.abs() <= BOUND {
                c[pivot] = x;
                return CurveClass::new(model, c);
            }
        }
        Err(Error::InvalidModel(format!("could not sample a vdim-zero class on {model}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gw::anticanonical_degree;

    #[test]
    fn seeded_and_in_range() {
        let m = Model::perm_p3();
        let a: Vec<_> = (0..5).map(|_| ClassSampler::new(7).class(m)).collect();
        assert!(a.windows(2).all(|w| w[0] == w[1]));
        let mut s = ClassSampler::new(0);
        for _ in 0..200 {
            assert!(s.class(m).coeffs().iter().all(|x| x.abs() <= BOUND));
        }
    }

    #[test]
    fn vdim_zero_samples() {
        let mut s = ClassSampler::new(3);
        for m in [Model::p3(6), Model::cube(4), Model::perm_cube(), Model::perm_p3()] {
            for _ in 0..50 {
                let b = s.vdim_zero_class(m).unwrap();
                assert_eq!(anticanonical_degree(&b).unwrap(), 0);
                assert!(b.coeffs().iter().all(|x| x.abs() <= BOUND));
            }
        }
    }
}
