//! Seeded sampling of small rational test points.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::quadric::{Mat2x4, Mat4, Vec2, Vec4};
use crate::Rational;

/// Numerators in `[-10, 10]`, denominators in `[1, 10]`.
pub struct RationalSampler {
    rng: ChaCha8Rng,
    seed: u64,
}

impl RationalSampler {
    pub const BOUND: i64 = 10;

    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            seed,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn rational(&mut self) -> Rational {
        let num = self.rng.gen_range(-Self::BOUND..=Self::BOUND);
        let den = self.rng.gen_range(1..=Self::BOUND);
        Rational::new(num.into(), den.into())
    }

    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    fn nonzero<T>(&mut self, mut draw: impl FnMut(&mut Self) -> T, zero: impl Fn(&T) -> bool) -> T {
        loop {
            let v = draw(self);
            if !zero(&v) {
                return v;
            }
        }
    }

    pub fn vec2(&mut self) -> Vec2 {
        self.nonzero(
            |s| [s.rational(), s.rational()],
            |v| v.iter().all(num_traits::Zero::is_zero),
        )
    }

    pub fn vec4(&mut self) -> Vec4 {
        self.nonzero(
            |s| std::array::from_fn(|_| s.rational()),
            |v: &Vec4| v.iter().all(num_traits::Zero::is_zero),
        )
    }

    pub fn mat2x4(&mut self) -> Mat2x4 {
        self.nonzero(
            |s| [s.vec4(), s.vec4()],
            |m: &Mat2x4| m.iter().flatten().all(num_traits::Zero::is_zero),
        )
    }

    pub fn mat4(&mut self) -> Mat4 {
        std::array::from_fn(|_| std::array::from_fn(|_| self.rational()))
    }
}
