//! Toeplitz hashing over GF(2), a two-universal family used both for the
//! verification hash and as the privacy-amplification extractor.

use rand::Rng;
use serde::{Serialize, Serializer};

use super::bits::{pack_words, to_hex};
use super::sifting::Flag;
use crate::error::{Error, Result};

/// The `n_out × n_in` Toeplitz matrix `T[i][j] = d[i − j + n_in − 1]`
/// defined by its diagonal seed `d` of `n_in + n_out − 1` bits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ToeplitzHash {
    n_in: usize,
    n_out: usize,
    #[serde(serialize_with = "hex_bits")]
    diagonal_seed: Vec<bool>,
}

fn hex_bits<S: Serializer>(bits: &[bool], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&to_hex(bits))
}

/// Seed length for the given shape.
pub fn seed_len(n_in: usize, n_out: usize) -> usize {
    (n_in + n_out).saturating_sub(1)
}

/// 64 bits of `words` starting at bit `start` (zero beyond the end).
fn window(words: &[u64], start: usize) -> u64 {
    let (w, s) = (start / 64, start % 64);
    let lo = words.get(w).copied().unwrap_or(0) >> s;
    if s == 0 {
        lo
    } else {
        lo | words.get(w + 1).copied().unwrap_or(0) << (64 - s)
    }
}

impl ToeplitzHash {
    pub fn new(n_in: usize, n_out: usize, diagonal_seed: Vec<bool>) -> Result<Self> {
        if n_out > n_in {
            return Err(Error::InvalidConfig(format!("output length {n_out} exceeds input length {n_in}")));
        }
        if diagonal_seed.len() != seed_len(n_in, n_out) {
            return Err(Error::DimensionMismatch {
                expected: seed_len(n_in, n_out),
                found: diagonal_seed.len(),
            });
        }
        Ok(Self {
            n_in,
            n_out,
            diagonal_seed,
        })
    }

    /// A uniformly random member of the family.
    pub fn random(n_in: usize, n_out: usize, rng: &mut impl Rng) -> Result<Self> {
        let seed = (0..seed_len(n_in, n_out)).map(|_| rng.random()).collect();
        Self::new(n_in, n_out, seed)
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn n_out(&self) -> usize {
        self.n_out
    }

    pub fn diagonal_seed(&self) -> &[bool] {
        &self.diagonal_seed
    }

    pub fn hash(&self, x: &[bool]) -> Result<Vec<bool>> {
        if x.len() != self.n_in {
            return Err(Error::DimensionMismatch {
                expected: self.n_in,
                found: x.len(),
            });
        }
        // out_i = ⊕_u d[i + u] · x[n_in − 1 − u]
        let reversed: Vec<bool> = x.iter().rev().copied().collect();
        let xr = pack_words(&reversed);
        let d = pack_words(&self.diagonal_seed);
        Ok((0..self.n_out)
            .map(|i| {
                let ones: u32 = xr
                    .iter()
                    .enumerate()
                    .map(|(c, &w)| (window(&d, i + 64 * c) & w).count_ones())
                    .sum();
                ones % 2 == 1
            })
            .collect())
    }
}

/// Outcome of comparing `t`-bit hashes of both strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HashCheck {
    pub flag: Flag,
    pub hash: ToeplitzHash,
}

/// Both parties hash with the same freshly drawn Toeplitz matrix.
pub fn verify_hash(x_a: &[bool], x_b: &[bool], t: usize, rng: &mut impl Rng) -> Result<HashCheck> {
    if x_a.len() != x_b.len() {
        return Err(Error::DimensionMismatch {
            expected: x_a.len(),
            found: x_b.len(),
        });
    }
    // a hash longer than the string is padded by repeating the family over
    // a longer (zero-extended) input
    let n_in = x_a.len().max(t);
    let pad = |x: &[bool]| {
        let mut v = x.to_vec();
        v.resize(n_in, false);
        v
    };
    let hash = ToeplitzHash::random(n_in, t, rng)?;
    let pass = hash.hash(&pad(x_a))? == hash.hash(&pad(x_b))?;
    Ok(HashCheck {
        flag: Flag::from_pass(pass),
        hash,
    })
}

/// Extracts an `l`-bit key; the returned hash (its seed) is public.
pub fn privacy_amplification(x: &[bool], l: usize, rng: &mut impl Rng) -> Result<(Vec<bool>, ToeplitzHash)> {
    if l > x.len() {
        return Err(Error::InvalidConfig(format!(
            "key length {l} exceeds the {} available bits",
            x.len()
        )));
    }
    let hash = ToeplitzHash::random(x.len(), l, rng)?;
    Ok((hash.hash(x)?, hash))
}
