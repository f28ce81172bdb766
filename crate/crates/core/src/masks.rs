//! Magic mask families used by the block-summing algorithms.
//!
//! Block length is `2^k` bits. `m(k)` keeps the low block of every pair of
//! adjacent blocks, `h(k)` keeps the top bit of every block. Both patterns
//! extend without bound towards the high end and are truncated to the
//! requested width.

use crate::word::Word;

/// `2^k`. Panics for `k >= 64`.
pub const fn pow2(k: u32) -> u64 {
    assert!(k < 64, "pow2 exponent out of range");
    1u64 << k
}

/// Alternating `2^k`-bit runs of ones and zeros, ones in the lowest run.
///
/// Bit `i` is set iff `floor(i / 2^k)` is even. Panics if `width == 0`.
pub fn mask_m(k: u32, width: usize) -> Word {
    let limbs: Vec<u64> = (0..width.div_ceil(64))
        .map(|i| {
            if k < 6 {
                // repeating pattern inside one limb: 0x5555.., 0x3333.., 0x0F0F.., ...
                let block = 1u32 << k;
                u64::MAX / ((1u64 << block) + 1)
            } else {
                let block_index = (i as u128 * 64).checked_shr(k).unwrap_or(0);
                if block_index.is_multiple_of(2) {
                    u64::MAX
                } else {
                    0
                }
            }
        })
        .collect();
    truncated(&limbs, width)
}

/// The most significant bit of every `2^k`-bit block.
///
/// Bit `i` is set iff `i mod 2^k == 2^k - 1`. Panics if `width == 0`.
pub fn mask_h(k: u32, width: usize) -> Word {
    let limbs: Vec<u64> = (0..width.div_ceil(64))
        .map(|i| {
            if k <= 6 {
                // low bit of every block, moved to the block's top
                let block = 1u32 << k;
                let lsb_of_blocks = (u64::MAX as u128 / ((1u128 << block) - 1)) as u64;
                lsb_of_blocks << (block - 1)
            } else {
                let end = (i as u128 + 1) * 64;
                match 1u128.checked_shl(k) {
                    Some(block) if end.is_multiple_of(block) => 1 << 63,
                    _ => 0,
                }
            }
        })
        .collect();
    truncated(&limbs, width)
}

fn truncated(limbs: &[u64], width: usize) -> Word {
    let mut limbs = limbs.to_vec();
    let rem = width % 64;
    if rem != 0 {
        if let Some(top) = limbs.last_mut() {
            *top &= (1u64 << rem) - 1;
        }
    }
    Word::from_limbs(&limbs, width).expect("mask width must be positive")
}
