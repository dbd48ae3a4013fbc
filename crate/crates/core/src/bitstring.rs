use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::error::{Error, Result};

const WORD: usize = 64;

/// Fixed-length binary genome packed into 64-bit words.
///
/// Position `i` lives in word `i / 64`, bit `i % 64`. Bits past `len` in the
/// last word are always zero, so word-level equality is genome equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitString {
    words: Vec<u64>,
    len: usize,
}

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

#[inline]
fn tail_mask(len: usize) -> u64 {
    match len % WORD {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

impl BitString {
    pub fn zeros(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension {
                n,
                reason: "bit strings need at least one position",
            });
        }
        Ok(Self {
            words: vec![0; words_for(n)],
            len: n,
        })
    }

    pub fn ones(n: usize) -> Result<Self> {
        let mut x = Self::zeros(n)?;
        x.words.iter_mut().for_each(|w| *w = u64::MAX);
        x.clear_tail();
        Ok(x)
    }

    /// Each position independently 0 or 1 with probability 1/2.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        let mut x = Self::zeros(n)?;
        x.words.iter_mut().for_each(|w| *w = rng.next_u64());
        x.clear_tail();
        Ok(x)
    }

    pub fn from_bools(bits: &[bool]) -> Result<Self> {
        let mut x = Self::zeros(bits.len())?;
        for (i, &b) in bits.iter().enumerate() {
            x.set(i, b);
        }
        Ok(x)
    }

    /// Parses a string of `0`/`1` characters; position 0 is the first character.
    pub fn parse(s: &str) -> Result<Self> {
        let bits: Vec<bool> = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Config("bit strings may only contain 0 and 1")),
            })
            .collect::<Result<_>>()?;
        Self::from_bools(&bits)
    }

    pub(crate) fn from_words(words: Vec<u64>, len: usize) -> Self {
        debug_assert_eq!(words.len(), words_for(len));
        let mut x = Self { words, len };
        x.clear_tail();
        x
    }

    #[inline]
    fn clear_tail(&mut self) {
        let mask = tail_mask(self.len);
        if let Some(last) = self.words.last_mut() {
            *last &= mask;
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    /// Always false; kept for API symmetry with slices.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    /// Bit `i` as 0 or 1.
    #[inline]
    pub fn bit(&self, i: usize) -> u8 {
        self.get(i) as u8
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Length of the all-ones prefix.
    pub fn leading_ones(&self) -> usize {
        let mut total = 0;
        for w in &self.words {
            let run = w.trailing_ones() as usize;
            total += run;
            if run < WORD {
                break;
            }
        }
        total.min(self.len)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn to_bools(&self) -> Vec<bool> {
        self.iter().collect()
    }

    /// Copies the bits at `positions` (in order) into a new string.
    pub fn select(&self, positions: &[usize]) -> Result<Self> {
        let mut out = Self::zeros(positions.len())?;
        for (j, &i) in positions.iter().enumerate() {
            out.set(j, self.get(i));
        }
        Ok(out)
    }
}

pub fn hamming_distance(x: &BitString, y: &BitString) -> Result<usize> {
    if x.len != y.len {
        return Err(Error::LengthMismatch {
            left: x.len,
            right: y.len,
        });
    }
    Ok(x.words
        .iter()
        .zip(&y.words)
        .map(|(a, b)| (a ^ b).count_ones() as usize)
        .sum())
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.iter().map(|b| if b { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngStream;
    use alloc::string::ToString;

    fn bs(s: &str) -> BitString {
        BitString::parse(s).unwrap()
    }

    #[test]
    fn zero_dimension_rejected() {
        assert!(matches!(
            BitString::zeros(0),
            Err(Error::InvalidDimension { n: 0, .. })
        ));
        let mut rng = RngStream::from_seed(1);
        assert!(BitString::random(0, &mut rng).is_err());
    }

    #[test]
    fn random_is_reproducible() {
        let a = BitString::random(4, &mut RngStream::from_seed(9)).unwrap();
        let b = BitString::random(4, &mut RngStream::from_seed(9)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 4);
    }

    #[test]
    fn single_bit_domain() {
        let mut rng = RngStream::from_seed(5);
        let mut seen = [false; 2];
        for _ in 0..64 {
            let x = BitString::random(1, &mut rng).unwrap();
            seen[x.bit(0) as usize] = true;
            assert!(x.to_string() == "0" || x.to_string() == "1");
        }
        assert_eq!(seen, [true, true]);
    }

    #[test]
    fn hamming_examples() {
        assert_eq!(hamming_distance(&bs("0000"), &bs("0000")).unwrap(), 0);
        assert_eq!(hamming_distance(&bs("0000"), &bs("1111")).unwrap(), 4);
        assert_eq!(hamming_distance(&bs("0101"), &bs("0011")).unwrap(), 2);
        assert!(hamming_distance(&bs("01"), &bs("011")).is_err());
    }

    #[test]
    fn tail_bits_stay_clear() {
        let x = BitString::ones(70).unwrap();
        assert_eq!(x.count_ones(), 70);
        assert_eq!(x.words()[1], (1u64 << 6) - 1);
        assert_eq!(x.leading_ones(), 70);
        let x = BitString::ones(128).unwrap();
        assert_eq!(x.leading_ones(), 128);
    }

    #[test]
    fn leading_ones_across_words() {
        let mut x = BitString::ones(100).unwrap();
        x.set(80, false);
        assert_eq!(x.leading_ones(), 80);
        assert_eq!(bs("1101").leading_ones(), 2);
        assert_eq!(bs("0111").leading_ones(), 0);
    }

    #[test]
    fn display_round_trips() {
        let x = bs("0110100111");
        assert_eq!(bs(&x.to_string()), x);
        assert!(BitString::parse("012").is_err());
    }
}
