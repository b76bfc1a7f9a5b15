//! Cascade interactive error correction.
//!
//! Pass `p` shuffles the string with a shared random permutation and splits
//! it into blocks of size `⌈0.73/q⌉·2^p`. Alice announces every block
//! parity; blocks whose parities disagree are bisected (one more parity from
//! Alice per step) to locate and flip a single error. Every flip changes the
//! parity of one block in each earlier pass, and any block that becomes odd
//! is bisected in turn.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Bits spent announcing one pass permutation seed.
const PERMUTATION_SEED_BITS: u64 = 64;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Reconciliation {
    /// Bob's corrected string.
    pub corrected: Vec<bool>,
    /// Parity bits disclosed by Alice.
    pub leak_bits: u64,
    /// All classical bits exchanged, both directions.
    pub transcript_bits: u64,
    pub corrections: usize,
}

struct Pass {
    /// Shuffled position → original index.
    perm: Vec<usize>,
    /// Original index → shuffled position.
    pos: Vec<usize>,
    block: usize,
    alice: Vec<bool>,
}

impl Pass {
    fn range(&self, blk: usize) -> (usize, usize) {
        let lo = blk * self.block;
        (lo, (lo + self.block).min(self.perm.len()))
    }

    fn parity(&self, x: &[bool], lo: usize, hi: usize) -> bool {
        self.perm[lo..hi].iter().fold(false, |acc, &i| acc ^ x[i])
    }
}

/// Corrects `x_b` towards `x_a` with `passes` Cascade passes sized for the
/// error rate `initial_qber`.
///
/// A hint outside `(0, ½)` returns `x_b` unchanged with no leakage; the
/// verification hash then decides.
pub fn reconcile_cascade(
    x_a: &[bool],
    x_b: &[bool],
    initial_qber: f64,
    passes: usize,
    rng: &mut impl Rng,
) -> Result<Reconciliation> {
    if x_a.len() != x_b.len() {
        return Err(Error::DimensionMismatch {
            expected: x_a.len(),
            found: x_b.len(),
        });
    }
    let n = x_a.len();
    let mut b = x_b.to_vec();
    if !(initial_qber > 0.0 && initial_qber < 0.5) || n == 0 {
        return Ok(Reconciliation {
            corrected: b,
            leak_bits: 0,
            transcript_bits: 0,
            corrections: 0,
        });
    }

    let mut leak = 0u64;
    let mut corrections = 0usize;
    let mut block = ((0.73 / initial_qber).ceil() as usize).clamp(1, n);
    let mut done: Vec<Pass> = Vec::with_capacity(passes);
    let mut queue: Vec<(usize, usize)> = Vec::new();

    for p in 0..passes {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        let mut pos = vec![0; n];
        for (j, &i) in perm.iter().enumerate() {
            pos[i] = j;
        }
        let blocks = n.div_ceil(block);
        let mut pass = Pass {
            perm,
            pos,
            block,
            alice: Vec::with_capacity(blocks),
        };
        for blk in 0..blocks {
            let (lo, hi) = pass.range(blk);
            pass.alice.push(pass.parity(x_a, lo, hi));
        }
        leak += blocks as u64;
        for blk in 0..blocks {
            let (lo, hi) = pass.range(blk);
            if pass.parity(&b, lo, hi) != pass.alice[blk] {
                queue.push((p, blk));
            }
        }
        done.push(pass);

        while let Some((q, blk)) = queue.pop() {
            let pass = &done[q];
            let (mut lo, mut hi) = pass.range(blk);
            if pass.parity(&b, lo, hi) == pass.alice[blk] {
                continue;
            }
            while hi - lo > 1 {
                let mid = lo + (hi - lo) / 2;
                leak += 1;
                if pass.parity(x_a, lo, mid) != pass.parity(&b, lo, mid) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            let idx = pass.perm[lo];
            b[idx] ^= true;
            corrections += 1;
            for (other, op) in done.iter().enumerate() {
                if other != q {
                    queue.push((other, op.pos[idx] / op.block));
                }
            }
        }
        block = (block * 2).min(n);
    }

    Ok(Reconciliation {
        corrected: b,
        leak_bits: leak,
        // Bob answers every parity Alice sends
        transcript_bits: 2 * leak + PERMUTATION_SEED_BITS * passes as u64,
        corrections,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;

    fn random_bits(n: usize, rng: &mut impl Rng) -> Vec<bool> {
        (0..n).map(|_| rng.random()).collect()
    }

    #[test]
    fn equal_strings_cost_only_block_parities() {
        let mut rng = stream(1, "cascade");
        let x = random_bits(1000, &mut rng);
        let r = reconcile_cascade(&x, &x, 0.02, 4, &mut rng).unwrap();
        assert_eq!(r.corrected, x);
        assert_eq!(r.corrections, 0);
        // blocks of 37, 74, 148, 296
        let blocks: u64 = [37usize, 74, 148, 296].iter().map(|s| 1000usize.div_ceil(*s) as u64).sum();
        assert_eq!(r.leak_bits, blocks);
    }

    #[test]
    fn single_error_is_fixed() {
        for seed in 0..100 {
            let mut rng = stream(seed, "cascade");
            let x_a = random_bits(1024, &mut rng);
            let mut x_b = x_a.clone();
            let i = rng.random_range(0..1024);
            x_b[i] = !x_b[i];
            let r = reconcile_cascade(&x_a, &x_b, 0.01, 4, &mut rng).unwrap();
            assert_eq!(r.corrected, x_a);
            let blocks: u64 = [73usize, 146, 292, 584].iter().map(|s| 1024usize.div_ceil(*s) as u64).sum();
            assert!(r.leak_bits <= blocks + 10 * 4, "{}", r.leak_bits);
        }
    }

    #[test]
    fn degenerate_hint_is_a_no_op() {
        let x = vec![true, false, true];
        let y = vec![false, false, true];
        let mut rng = stream(2, "cascade");
        for q in [0.0, 0.5, 0.7] {
            let r = reconcile_cascade(&x, &y, q, 4, &mut rng).unwrap();
            assert_eq!((r.corrected.clone(), r.leak_bits), (y.clone(), 0));
        }
        assert!(reconcile_cascade(&x, &y[..2], 0.1, 4, &mut rng).is_err());
    }
}
