use rand::seq::SliceRandom;
use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seedable coin-flip and integer source.
///
/// The same seed always yields the same sequence. Per-item streams
/// ([`RandomSource::for_item`]) give every sentence of a corpus its own
/// sequence regardless of the order sentences are processed in.
#[derive(Debug, Clone)]
pub struct RandomSource {
    seed: u64,
    rng: ChaCha8Rng,
    bits: u64,
    n_bits: u32,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        RandomSource { seed, rng: ChaCha8Rng::seed_from_u64(seed), bits: 0, n_bits: 0 }
    }

    /// Independent stream number `item` under `seed`.
    pub fn for_item(seed: u64, item: u64) -> Self {
        let mut source = RandomSource::new(seed);
        source.rng.set_stream(item);
        source
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// A fair coin; `true` is heads.
    pub fn coin_flip(&mut self) -> bool {
        if self.n_bits == 0 {
            self.bits = self.rng.next_u64();
            self.n_bits = 64;
        }
        let head = self.bits & 1 == 1;
        self.bits >>= 1;
        self.n_bits -= 1;
        head
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform integer in `0..bound` (`bound > 0`).
    pub fn below(&mut self, bound: u64) -> u64 {
        self.rng.random_range(0..bound)
    }

    /// Uniform float in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        self.rng.random()
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        items.shuffle(&mut self.rng);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_flips() {
        let mut a = RandomSource::new(7);
        let mut b = RandomSource::new(7);
        for _ in 0..500 {
            assert_eq!(a.coin_flip(), b.coin_flip());
        }
    }

    #[test]
    fn item_streams_differ() {
        let mut a = RandomSource::for_item(7, 0);
        let mut b = RandomSource::for_item(7, 1);
        let xs: Vec<u64> = (0..4).map(|_| a.next_u64()).collect();
        let ys: Vec<u64> = (0..4).map(|_| b.next_u64()).collect();
        assert_ne!(xs, ys);
    }

    #[test]
    fn coin_is_roughly_fair() {
        let mut r = RandomSource::new(1);
        let heads = (0..10_000).filter(|_| r.coin_flip()).count();
        assert!((4_700..5_300).contains(&heads), "{heads}");
    }

    #[test]
    fn below_stays_in_range() {
        let mut r = RandomSource::new(3);
        for bound in 1..50 {
            assert!(r.below(bound) < bound);
        }
        let u = r.unit();
        assert!((0.0..1.0).contains(&u));
    }
}
