//! Seeded, reproducible generators for measures and window functions.
//!
//! The randomized law suites (library property tests, the `props test`
//! command, and the acceptance run) all draw from this sampler so a
//! seed pins down every case exactly.

use num::bigint::BigInt;
use rand::seq::index::sample as index_sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::measure::MolecularMeasure;
use crate::rat::Rat;
use crate::semigroup::{Element, Window};
use crate::uniform::WindowFunction;

/// Default seed for every randomized suite; override with `--seed`.
pub const DEFAULT_SEED: u64 = 1729;

/// Deterministic source of random measures, coefficients and window
/// functions.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A rational `p/q` with `q` in `1..=4` and `|p/q| <= bound`.
    pub fn rational(&mut self, bound: i64) -> Rat {
        let den = self.rng.gen_range(1..=4i64);
        let num = self.rng.gen_range(-bound * den..=bound * den);
        Rat::new(BigInt::from(num), BigInt::from(den))
    }

    /// A strictly positive rational with `p/q <= bound`.
    pub fn positive_rational(&mut self, bound: i64) -> Rat {
        let den = self.rng.gen_range(1..=4i64);
        let num = self.rng.gen_range(1..=bound * den);
        Rat::new(BigInt::from(num), BigInt::from(den))
    }

    /// One element of a pool window.
    pub fn element(&mut self, pool: &Window) -> Element {
        let i = self.rng.gen_range(0..pool.len());
        pool.elements()[i].clone()
    }

    /// A measure supported on at most `max_support` pool elements with
    /// coefficients bounded by `bound` in absolute value. Zero
    /// coefficients are possible, so supports can come out smaller.
    pub fn measure(&mut self, pool: &Window, max_support: usize, bound: i64) -> MolecularMeasure {
        let k = self.rng.gen_range(0..=max_support.min(pool.len()));
        let picks = index_sample(&mut self.rng, pool.len(), k);
        let terms = picks
            .iter()
            .map(|i| (pool.elements()[i].clone(), self.rational(bound)));
        MolecularMeasure::from_terms(pool.semigroup(), terms.collect::<Vec<_>>())
            .expect("pool elements are valid")
    }

    /// A measure with strictly positive coefficients on a non-empty
    /// support of at most `max_support` pool elements.
    pub fn positive_measure(
        &mut self,
        pool: &Window,
        max_support: usize,
        bound: i64,
    ) -> MolecularMeasure {
        let k = self.rng.gen_range(1..=max_support.min(pool.len()).max(1));
        let picks = index_sample(&mut self.rng, pool.len(), k);
        let terms = picks
            .iter()
            .map(|i| (pool.elements()[i].clone(), self.positive_rational(bound)));
        MolecularMeasure::from_terms(pool.semigroup(), terms.collect::<Vec<_>>())
            .expect("pool elements are valid")
    }

    /// A window function with values bounded by `bound` in absolute
    /// value, including a random default so products off the window are
    /// still interesting.
    pub fn window_function(&mut self, window: &Window, bound: i64) -> WindowFunction {
        let values = window
            .iter()
            .map(|e| (e.clone(), self.rational(bound)))
            .collect();
        let default = self.rational(bound);
        WindowFunction::new(window.clone(), values, default).expect("keys come from the window")
    }
}
