//! Fixed-width unsigned binary words.
//!
//! A [`Word`] is a value together with an explicit bit width. Values are
//! stored as little-endian 64-bit limbs and every operation is exact: sums
//! and negations wrap modulo `2^width`, and [`Word::mul_wide`] returns the
//! full double-width product.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

const LIMB_BITS: usize = 64;

/// Errors raised by word construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("value does not fit in {width} bits")]
    Overflow { width: usize },
    #[error("invalid hex literal {0:?}")]
    Parse(String),
    #[error("width must be positive")]
    ZeroWidth,
    #[error("width mismatch: {left} vs {right}")]
    WidthMismatch { left: usize, right: usize },
    #[error("shift by {shift} exceeds width {width}")]
    ShiftOutOfRange { shift: usize, width: usize },
    #[error("bit range {offset}..{end} exceeds width {width}")]
    RangeOutOfWidth {
        offset: usize,
        end: usize,
        width: usize,
    },
}

/// An unsigned integer with a declared bit width. Invariant: `value < 2^width`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    limbs: Vec<u64>,
    width: usize,
}

#[inline]
fn limbs_for(width: usize) -> usize {
    width.div_ceil(LIMB_BITS)
}

impl Word {
    /// The zero word of the given width.
    pub fn zero(width: usize) -> Result<Self, WordError> {
        if width == 0 {
            return Err(WordError::ZeroWidth);
        }
        Ok(Word {
            limbs: vec![0; limbs_for(width)],
            width,
        })
    }

    /// The all-ones word of the given width.
    pub fn ones(width: usize) -> Result<Self, WordError> {
        let mut w = Self::zero(width)?;
        w.limbs.iter_mut().for_each(|l| *l = u64::MAX);
        w.normalize();
        Ok(w)
    }

    pub fn from_u64(value: u64, width: usize) -> Result<Self, WordError> {
        Self::from_u128(value as u128, width)
    }

    pub fn from_u128(value: u128, width: usize) -> Result<Self, WordError> {
        let mut w = Self::zero(width)?;
        let lo = value as u64;
        let hi = (value >> 64) as u64;
        let fits = if width >= 128 {
            true
        } else {
            value >> width == 0
        };
        if !fits {
            return Err(WordError::Overflow { width });
        }
        w.limbs[0] = lo;
        if hi != 0 {
            w.limbs[1] = hi;
        }
        Ok(w)
    }

    /// Builds a word from little-endian limbs; limbs beyond the width must be zero.
    pub fn from_limbs(limbs: &[u64], width: usize) -> Result<Self, WordError> {
        let mut w = Self::zero(width)?;
        for (i, &limb) in limbs.iter().enumerate() {
            if i < w.limbs.len() {
                w.limbs[i] = limb;
            } else if limb != 0 {
                return Err(WordError::Overflow { width });
            }
        }
        let before = w.limbs.last().copied();
        w.normalize();
        if w.limbs.last().copied() != before {
            return Err(WordError::Overflow { width });
        }
        Ok(w)
    }

    /// Parses hex text (optional `0x`/`0X` prefix, either case) into a word of `width` bits.
    pub fn from_hex(hex: &str, width: usize) -> Result<Self, WordError> {
        if width == 0 {
            return Err(WordError::ZeroWidth);
        }
        let digits = hex
            .strip_prefix("0x")
            .or_else(|| hex.strip_prefix("0X"))
            .unwrap_or(hex);
        if digits.is_empty() {
            return Err(WordError::Parse(hex.to_string()));
        }
        let mut limbs = vec![0u64; digits.len().div_ceil(16)];
        for (pos, c) in digits.bytes().rev().enumerate() {
            let nibble = (c as char)
                .to_digit(16)
                .ok_or_else(|| WordError::Parse(hex.to_string()))? as u64;
            limbs[pos / 16] |= nibble << (4 * (pos % 16));
        }
        Self::from_limbs(&limbs, width)
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    /// Little-endian limbs; bits at and above `width` are zero.
    pub fn limbs(&self) -> &[u64] {
        &self.limbs
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.iter().all(|&l| l == 0)
    }

    pub fn bit(&self, i: usize) -> bool {
        i < self.width && (self.limbs[i / LIMB_BITS] >> (i % LIMB_BITS)) & 1 == 1
    }

    /// Returns a copy with bit `i` set. Panics if `i >= width`.
    pub fn with_bit(mut self, i: usize) -> Self {
        assert!(
            i < self.width,
            "bit {i} out of range for width {}",
            self.width
        );
        self.limbs[i / LIMB_BITS] |= 1 << (i % LIMB_BITS);
        self
    }

    /// The value as `u64`, if it fits.
    pub fn to_u64(&self) -> Option<u64> {
        if self.limbs[1..].iter().any(|&l| l != 0) {
            return None;
        }
        Some(self.limbs[0])
    }

    /// Same value at a different width; fails if the value does not fit.
    pub fn resize(&self, width: usize) -> Result<Self, WordError> {
        Self::from_limbs(&self.limbs, width)
    }

    fn normalize(&mut self) {
        let rem = self.width % LIMB_BITS;
        if rem != 0 {
            if let Some(top) = self.limbs.last_mut() {
                *top &= (1u64 << rem) - 1;
            }
        }
    }

    fn check_width(&self, other: &Word) -> Result<(), WordError> {
        if self.width != other.width {
            return Err(WordError::WidthMismatch {
                left: self.width,
                right: other.width,
            });
        }
        Ok(())
    }

    fn zip_limbs(&self, other: &Word, f: impl Fn(u64, u64) -> u64) -> Result<Word, WordError> {
        self.check_width(other)?;
        let limbs = self
            .limbs
            .iter()
            .zip(&other.limbs)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(Word {
            limbs,
            width: self.width,
        })
    }

    pub fn bitand(&self, other: &Word) -> Result<Word, WordError> {
        self.zip_limbs(other, |a, b| a & b)
    }

    pub fn bitor(&self, other: &Word) -> Result<Word, WordError> {
        self.zip_limbs(other, |a, b| a | b)
    }

    pub fn bitxor(&self, other: &Word) -> Result<Word, WordError> {
        self.zip_limbs(other, |a, b| a ^ b)
    }

    /// `(self + other) mod 2^width`.
    pub fn add_mod(&self, other: &Word) -> Result<Word, WordError> {
        self.check_width(other)?;
        let mut carry = false;
        let limbs = self
            .limbs
            .iter()
            .zip(&other.limbs)
            .map(|(&a, &b)| {
                let (s, c1) = a.overflowing_add(b);
                let (s, c2) = s.overflowing_add(carry as u64);
                carry = c1 || c2;
                s
            })
            .collect();
        let mut w = Word {
            limbs,
            width: self.width,
        };
        w.normalize();
        Ok(w)
    }

    /// `(self - other) mod 2^width`.
    pub fn sub_mod(&self, other: &Word) -> Result<Word, WordError> {
        self.check_width(other)?;
        let mut borrow = false;
        let limbs = self
            .limbs
            .iter()
            .zip(&other.limbs)
            .map(|(&a, &b)| {
                let (d, b1) = a.overflowing_sub(b);
                let (d, b2) = d.overflowing_sub(borrow as u64);
                borrow = b1 || b2;
                d
            })
            .collect();
        let mut w = Word {
            limbs,
            width: self.width,
        };
        w.normalize();
        Ok(w)
    }

    /// Two's-complement negation, `(2^width - self) mod 2^width`.
    pub fn neg_mod(&self) -> Word {
        let mut carry = true;
        let limbs = self
            .limbs
            .iter()
            .map(|&a| {
                let (s, c) = (!a).overflowing_add(carry as u64);
                carry = c;
                s
            })
            .collect();
        let mut w = Word {
            limbs,
            width: self.width,
        };
        w.normalize();
        w
    }

    /// Logical right shift, `floor(self / 2^shift)`.
    pub fn shr(&self, shift: usize) -> Result<Word, WordError> {
        if shift > self.width {
            return Err(WordError::ShiftOutOfRange {
                shift,
                width: self.width,
            });
        }
        let n = self.limbs.len();
        let (limb_shift, bit_shift) = (shift / LIMB_BITS, shift % LIMB_BITS);
        let mut limbs = vec![0u64; n];
        for (i, out) in limbs
            .iter_mut()
            .enumerate()
            .take(n.saturating_sub(limb_shift))
        {
            let lo = self.limbs[i + limb_shift] >> bit_shift;
            let hi = if bit_shift != 0 && i + limb_shift + 1 < n {
                self.limbs[i + limb_shift + 1] << (LIMB_BITS - bit_shift)
            } else {
                0
            };
            *out = lo | hi;
        }
        Ok(Word {
            limbs,
            width: self.width,
        })
    }

    /// Left shift modulo `2^width`.
    pub fn shl(&self, shift: usize) -> Result<Word, WordError> {
        if shift > self.width {
            return Err(WordError::ShiftOutOfRange {
                shift,
                width: self.width,
            });
        }
        let n = self.limbs.len();
        let (limb_shift, bit_shift) = (shift / LIMB_BITS, shift % LIMB_BITS);
        let mut limbs = vec![0u64; n];
        for (i, out) in limbs.iter_mut().enumerate().skip(limb_shift) {
            let src = i - limb_shift;
            let lo = self.limbs[src] << bit_shift;
            let carry = if bit_shift != 0 && src > 0 {
                self.limbs[src - 1] >> (LIMB_BITS - bit_shift)
            } else {
                0
            };
            *out = lo | carry;
        }
        let mut w = Word {
            limbs,
            width: self.width,
        };
        w.normalize();
        Ok(w)
    }

    /// Exact product of two `W`-bit words as a `2W`-bit word.
    pub fn mul_wide(&self, other: &Word) -> Result<Word, WordError> {
        self.check_width(other)?;
        let width = 2 * self.width;
        let mut acc = vec![0u64; limbs_for(width)];
        for (i, &a) in self.limbs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let mut carry: u128 = 0;
            for (j, &b) in other.limbs.iter().enumerate() {
                let t = (a as u128) * (b as u128) + acc[i + j] as u128 + carry;
                acc[i + j] = t as u64;
                carry = t >> 64;
            }
            let mut k = i + other.limbs.len();
            while carry != 0 {
                let t = acc[k] as u128 + carry;
                acc[k] = t as u64;
                carry = t >> 64;
                k += 1;
            }
        }
        Ok(Word { limbs: acc, width })
    }

    /// The field `floor(self / 2^offset) mod 2^len` as a word of width `len`.
    pub fn extract_bits(&self, offset: usize, len: usize) -> Result<Word, WordError> {
        let end = offset + len;
        if len == 0 || end > self.width {
            return Err(WordError::RangeOutOfWidth {
                offset,
                end,
                width: self.width,
            });
        }
        let shifted = self.shr(offset)?;
        let mut limbs = shifted.limbs;
        limbs.truncate(limbs_for(len));
        let mut w = Word { limbs, width: len };
        w.normalize();
        Ok(w)
    }

    /// Uppercase hex with `0x` prefix, zero-padded to `ceil(width / 4)` digits.
    pub fn to_hex(&self) -> String {
        let digits = self.width.div_ceil(4);
        let mut out = String::with_capacity(digits + 2);
        out.push_str("0x");
        for d in (0..digits).rev() {
            let nibble = (self.limbs[d / 16] >> (4 * (d % 16))) & 0xF;
            out.push(
                char::from_digit(nibble as u32, 16)
                    .unwrap()
                    .to_ascii_uppercase(),
            );
        }
        out
    }
}

impl PartialOrd for Word {
    /// Numeric comparison; words of different widths are unordered.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.width != other.width {
            return None;
        }
        Some(self.limbs.iter().rev().cmp(other.limbs.iter().rev()))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({}, width={})", self.to_hex(), self.width)
    }
}

/// Parses `"<hex>:<width>"`, e.g. `"0xFF:8"`.
impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (hex, width) = s
            .rsplit_once(':')
            .ok_or_else(|| WordError::Parse(s.to_string()))?;
        let width = width.parse().map_err(|_| WordError::Parse(s.to_string()))?;
        Word::from_hex(hex, width)
    }
}
