//! Counter-based random streams.
//!
//! A stream is the triple `(seed, stream_id, counter)`. Draws are made in
//! blocks: block `b` of a batch reads ChaCha20 keyed by `seed`, on stream
//! `stream_id`, starting at word `(counter + b) · 2^36`. Blocks never overlap
//! and can be generated in any order or on any thread, so a batch depends
//! only on the triple and its size.

use crate::exec::Exec;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

/// Words reserved for one block.
const BLOCK_SHIFT: u32 = 36;

/// Draws generated per block in [`RngStream::fill`].
pub const BLOCK_DRAWS: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    counter: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        Self {
            seed,
            stream_id,
            counter: 0,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Blocks consumed so far.
    pub fn counter(&self) -> u64 {
        self.counter
    }

    /// A fresh stream with the same seed and another id.
    pub fn with_stream(&self, stream_id: u64) -> Self {
        Self::new(self.seed, stream_id)
    }

    /// Generator for block `b` past the current counter; does not advance.
    pub fn block_rng(&self, b: u64) -> ChaCha20Rng {
        let mut rng = ChaCha20Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_id);
        rng.set_word_pos(((self.counter + b) as u128) << BLOCK_SHIFT);
        rng
    }

    pub fn advance(&mut self, blocks: u64) {
        self.counter += blocks;
    }

    /// Generator for the next block, consuming it.
    pub fn next_rng(&mut self) -> ChaCha20Rng {
        let rng = self.block_rng(0);
        self.advance(1);
        rng
    }

    /// `n` draws of `draw`, [`BLOCK_DRAWS`] per block, identical under every
    /// execution policy.
    pub fn fill<F>(&mut self, n: usize, exec: Exec, draw: F) -> Vec<f64>
    where
        F: Fn(&mut ChaCha20Rng) -> f64 + Sync + Send,
    {
        let blocks = n.div_ceil(BLOCK_DRAWS);
        let this = *self;
        let parts = exec.map(blocks, |b| {
            let mut rng = this.block_rng(b as u64);
            let len = BLOCK_DRAWS.min(n - b * BLOCK_DRAWS);
            (0..len).map(|_| draw(&mut rng)).collect::<Vec<_>>()
        });
        self.advance(blocks as u64);
        parts.concat()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn same_triple_same_draws() {
        let mut a = RngStream::new(7, 3);
        let mut b = RngStream::new(7, 3);
        let x: Vec<u64> = (0..5).map(|_| a.next_rng().random()).collect();
        let y: Vec<u64> = (0..5).map(|_| b.next_rng().random()).collect();
        assert_eq!(x, y);
        assert_eq!(a.counter(), 5);
    }

    #[test]
    fn streams_and_blocks_differ() {
        let s = RngStream::new(7, 0);
        let x: u64 = s.block_rng(0).random();
        assert_ne!(x, s.with_stream(1).block_rng(0).random::<u64>());
        assert_ne!(x, s.block_rng(1).random::<u64>());
        assert_ne!(x, RngStream::new(8, 0).block_rng(0).random::<u64>());
    }

    #[test]
    fn fill_ignores_scheduling() {
        let f = |r: &mut ChaCha20Rng| r.random::<f64>();
        let mut a = RngStream::new(1, 2);
        let mut b = RngStream::new(1, 2);
        let x = a.fill(5000, Exec::Parallel, f);
        let y = b.fill(5000, Exec::Sequential, f);
        assert_eq!(x, y);
        assert_eq!(x.len(), 5000);
        assert_eq!(a.counter(), 5);
        assert_ne!(a.fill(10, Exec::Sequential, f), x[..10].to_vec());
    }
}
