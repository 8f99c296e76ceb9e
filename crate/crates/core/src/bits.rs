//! Fixed-length bit vectors used for message payloads, labels and outputs.
//!
//! Bit order is big-endian throughout: `Bits::from_uint(0b10, 2)` is the
//! string `"10"`, and concatenating labels keeps the first label's bits first.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits {
    bits: Vec<bool>,
}

impl Bits {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            bits: vec![false; len],
        }
    }

    /// The low `width` bits of `value`, most significant first.
    pub fn from_uint(value: u64, width: usize) -> Self {
        debug_assert!(width >= 64 || value >> width == 0, "{value} does not fit in {width} bits");
        let bits = (0..width)
            .rev()
            .map(|i| i < 64 && (value >> i) & 1 == 1)
            .collect();
        Self { bits }
    }

    pub fn from_bools(bits: impl IntoIterator<Item = bool>) -> Self {
        Self {
            bits: bits.into_iter().collect(),
        }
    }

    /// Parses a string of `0` and `1` characters.
    pub fn parse_binary(s: &str) -> Option<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(|bits| Self { bits })
    }

    /// Parses exactly `ceil(len / 4)` hex digits, most significant nibble
    /// first, keeping the first `len` bits. The padding bits must be zero.
    pub fn parse_hex(s: &str, len: usize) -> Option<Self> {
        if s.len() != len.div_ceil(4) {
            return None;
        }
        let mut bits = Vec::with_capacity(s.len() * 4);
        for c in s.chars() {
            let d = c.to_digit(16)?;
            bits.extend((0..4).rev().map(|i| (d >> i) & 1 == 1));
        }
        if bits.len() < len || bits[len..].iter().any(|&b| b) {
            return None;
        }
        bits.truncate(len);
        Some(Self { bits })
    }

    /// Hex digits, zero-padded at the end to a whole nibble.
    pub fn to_hex(&self) -> String {
        self.bits
            .chunks(4)
            .map(|chunk| {
                let mut d = 0u32;
                for i in 0..4 {
                    d = (d << 1) | u32::from(chunk.get(i).copied().unwrap_or(false));
                }
                char::from_digit(d, 16).unwrap()
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn set(&mut self, i: usize, value: bool) {
        self.bits[i] = value;
    }

    pub fn push(&mut self, bit: bool) {
        self.bits.push(bit);
    }

    pub fn push_uint(&mut self, value: u64, width: usize) {
        self.extend(&Bits::from_uint(value, width));
    }

    pub fn extend(&mut self, other: &Bits) {
        self.bits.extend_from_slice(&other.bits);
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.bits.iter().copied()
    }

    /// Bits `[start, start + len)` as a new vector.
    pub fn slice(&self, start: usize, len: usize) -> Bits {
        Bits {
            bits: self.bits[start..start + len].to_vec(),
        }
    }

    /// Big-endian unsigned value. Panics above 64 bits.
    pub fn to_uint(&self) -> u64 {
        assert!(self.len() <= 64, "{} bits do not fit in u64", self.len());
        self.bits.iter().fold(0, |acc, &b| (acc << 1) | u64::from(b))
    }

    pub fn uint_at(&self, start: usize, width: usize) -> u64 {
        self.bits[start..start + width]
            .iter()
            .fold(0, |acc, &b| (acc << 1) | u64::from(b))
    }

    /// Splits into consecutive chunks of `width` bits; the last may be shorter.
    pub fn chunks(&self, width: usize) -> Vec<Bits> {
        assert!(width > 0);
        self.bits
            .chunks(width)
            .map(|c| Bits { bits: c.to_vec() })
            .collect()
    }

    pub fn concat<'a>(parts: impl IntoIterator<Item = &'a Bits>) -> Bits {
        let mut out = Bits::new();
        for p in parts {
            out.extend(p);
        }
        out
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bits({self})")
    }
}

impl Serialize for Bits {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Bits {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Bits::parse_binary(&s).ok_or_else(|| serde::de::Error::custom("expected a string of 0/1"))
    }
}
