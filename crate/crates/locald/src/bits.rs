//! Flat bit-strings.
//!
//! Node inputs and certificates are finite binary strings. Encoders build
//! single flat strings out of variable-length fields, so a self-delimiting
//! blob format is provided: a payload of `len` bits is written as
//! `|lenbits|` ones, a zero, `len` in minimal binary, then the payload.
//! Decoding is strict: a non-minimal length field is an error, which makes
//! every valid encoding canonical (equal meaning iff equal bits).

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An ordered sequence of bits. Inputs and certificates are values of this type.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn new() -> Self {
        BitString(Vec::new())
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        BitString(bits)
    }

    /// Parses a string of `0` and `1` characters.
    pub fn parse(s: &str) -> Result<Self, BitStringParseError> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => return Err(BitStringParseError { offending: c }),
            }
        }
        Ok(BitString(bits))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<bool> {
        self.0.get(i).copied()
    }

    pub fn push(&mut self, bit: bool) {
        self.0.push(bit);
    }

    pub fn extend(&mut self, other: &BitString) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        self.0.iter().copied()
    }

    /// The single bit of a length-1 string.
    pub fn as_single_bit(&self) -> Option<bool> {
        match self.0.as_slice() {
            [b] => Some(*b),
            _ => None,
        }
    }

    /// Interprets the whole string as an MSB-first unsigned integer.
    /// Empty strings and strings longer than 64 bits have no value.
    pub fn as_value(&self) -> Option<u64> {
        if self.is_empty() || self.len() > 64 {
            return None;
        }
        let mut v = 0u64;
        for b in self.bits() {
            v = (v << 1) | u64::from(b);
        }
        Some(v)
    }

    /// Minimal MSB-first binary representation; `0` encodes as a single zero bit.
    pub fn from_value(v: u64) -> Self {
        let width = (64 - v.leading_zeros()).max(1) as usize;
        Self::from_value_width(v, width)
    }

    /// Fixed-width MSB-first representation. Width may be zero when `v` is zero.
    pub fn from_value_width(v: u64, width: usize) -> Self {
        assert!(width <= 64, "width out of range");
        assert!(width == 64 || v < (1u64 << width), "value does not fit width");
        let mut bits = Vec::with_capacity(width);
        for i in (0..width).rev() {
            bits.push((v >> i) & 1 == 1);
        }
        BitString(bits)
    }

    /// Appends a self-delimiting blob: unary length-of-length, minimal-binary
    /// length, then the payload bits.
    pub fn push_blob(&mut self, payload: &BitString) {
        let lenbits = BitString::from_value(payload.len() as u64);
        for _ in 0..lenbits.len() {
            self.push(true);
        }
        self.push(false);
        self.extend(&lenbits);
        self.extend(payload);
    }

    /// `len:hex` form used by JSON reports; bits are packed MSB-first and the
    /// final nibble is zero-padded.
    pub fn to_hex(&self) -> String {
        let mut s = format!("{}:", self.len());
        let mut nibble = 0u8;
        let mut filled = 0;
        for b in self.bits() {
            nibble = (nibble << 1) | u8::from(b);
            filled += 1;
            if filled == 4 {
                s.push(char::from_digit(u32::from(nibble), 16).unwrap());
                nibble = 0;
                filled = 0;
            }
        }
        if filled > 0 {
            nibble <<= 4 - filled;
            s.push(char::from_digit(u32::from(nibble), 16).unwrap());
        }
        s
    }

    pub fn from_hex(s: &str) -> Result<Self, BitStringParseError> {
        let bad = || BitStringParseError { offending: '?' };
        let (len, hex) = s.split_once(':').ok_or_else(bad)?;
        let len: usize = len.parse().map_err(|_| bad())?;
        if hex.len() != len.div_ceil(4) {
            return Err(bad());
        }
        let mut bits = Vec::with_capacity(len);
        for c in hex.chars() {
            let v = c.to_digit(16).ok_or_else(bad)? as u8;
            for i in (0..4).rev() {
                bits.push((v >> i) & 1 == 1);
            }
        }
        if bits[len..].iter().any(|&b| b) {
            return Err(bad());
        }
        bits.truncate(len);
        Ok(BitString(bits))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bits() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b\"{self}\"")
    }
}

impl std::str::FromStr for BitString {
    type Err = BitStringParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BitString::parse(s)
    }
}

impl Serialize for BitString {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BitString {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        BitString::parse(&s).map_err(D::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid bit-string character {offending:?}")]
pub struct BitStringParseError {
    offending: char,
}

/// Cursor over a [`BitString`] for strict decoding.
pub struct BitReader<'a> {
    bits: &'a BitString,
    pos: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BitReadError {
    #[error("bit stream ended early")]
    UnexpectedEnd,
    #[error("non-minimal integer field")]
    NonMinimal,
    #[error("field wider than supported")]
    FieldTooWide,
}

impl<'a> BitReader<'a> {
    pub fn new(bits: &'a BitString) -> Self {
        BitReader { bits, pos: 0 }
    }

    pub fn remaining(&self) -> usize {
        self.bits.len() - self.pos
    }

    pub fn read_bit(&mut self) -> Result<bool, BitReadError> {
        let b = self.bits.get(self.pos).ok_or(BitReadError::UnexpectedEnd)?;
        self.pos += 1;
        Ok(b)
    }

    pub fn read_bits(&mut self, width: usize) -> Result<u64, BitReadError> {
        if width > 64 {
            return Err(BitReadError::FieldTooWide);
        }
        let mut v = 0u64;
        for _ in 0..width {
            v = (v << 1) | u64::from(self.read_bit()?);
        }
        Ok(v)
    }

    pub fn read_bitstring(&mut self, len: usize) -> Result<BitString, BitReadError> {
        let mut out = BitString::new();
        for _ in 0..len {
            out.push(self.read_bit()?);
        }
        Ok(out)
    }

    /// Reads a blob written by [`BitString::push_blob`], rejecting
    /// non-minimal length fields.
    pub fn read_blob(&mut self) -> Result<BitString, BitReadError> {
        let mut ll = 0usize;
        while self.read_bit()? {
            ll += 1;
            if ll > 40 {
                return Err(BitReadError::FieldTooWide);
            }
        }
        if ll == 0 {
            return Err(BitReadError::NonMinimal);
        }
        let len = self.read_bits(ll)?;
        if ll > 1 && len < (1 << (ll - 1)) {
            return Err(BitReadError::NonMinimal);
        }
        self.read_bitstring(len as usize)
    }
}

#[macro_export]
macro_rules! bitstr {
    ($s:literal) => {
        $crate::bits::BitString::parse($s).expect("literal bit-string")
    };
}
