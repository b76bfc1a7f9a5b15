//! Bit strings as `Vec<bool>`, with packing helpers for hashing and output.

/// Packs bits little-endian into 64-bit words (bit `i` is bit `i % 64` of
/// word `i / 64`).
pub fn pack_words(bits: &[bool]) -> Vec<u64> {
    let mut words = vec![0u64; bits.len().div_ceil(64)];
    for (i, &b) in bits.iter().enumerate() {
        if b {
            words[i / 64] |= 1 << (i % 64);
        }
    }
    words
}

/// Hex encoding, most significant bit of each byte first, zero padded.
pub fn to_hex(bits: &[bool]) -> String {
    let bytes: Vec<u8> = bits
        .chunks(8)
        .map(|chunk| chunk.iter().enumerate().fold(0u8, |acc, (i, &b)| acc | (u8::from(b) << (7 - i))))
        .collect();
    hex::encode(bytes)
}

/// `'0'`/`'1'` characters.
pub fn to_binary_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

pub fn hamming_distance(a: &[bool], b: &[bool]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

pub fn parity(bits: impl IntoIterator<Item = bool>) -> bool {
    bits.into_iter().fold(false, |acc, b| acc ^ b)
}
