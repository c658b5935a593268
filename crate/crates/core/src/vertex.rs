//! Vertices of the standard cubes, as subsets of `{1..n}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A vertex of `[1]^n`. Bit `i-1` of `bits` is coordinate `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Vertex {
    dim: u8,
    bits: u32,
}

pub const MAX_DIM: usize = 24;

pub(crate) fn full(n: usize) -> u32 {
    if n == 0 {
        0
    } else {
        u32::MAX >> (32 - n)
    }
}

impl Vertex {
    pub fn new(dim: usize, bits: u32) -> Result<Self> {
        if dim > MAX_DIM {
            return Err(Error::Invalid(format!("cube dimension {dim} too large")));
        }
        if bits & !full(dim) != 0 {
            return Err(Error::IndexOutOfRange(format!(
                "bits {bits:#b} outside [1]^{dim}"
            )));
        }
        Ok(Vertex {
            dim: dim as u8,
            bits,
        })
    }

    pub(crate) fn raw(dim: usize, bits: u32) -> Self {
        debug_assert!(bits & !full(dim) == 0);
        Vertex {
            dim: dim as u8,
            bits,
        }
    }

    pub fn alpha(dim: usize) -> Self {
        Vertex::raw(dim, 0)
    }

    pub fn omega(dim: usize) -> Self {
        Vertex::raw(dim, full(dim))
    }

    /// Vertex with the given 1-based coordinates set to 1.
    pub fn from_coords(dim: usize, coords: &[usize]) -> Result<Self> {
        let mut bits = 0u32;
        for &c in coords {
            if c == 0 || c > dim {
                return Err(Error::IndexOutOfRange(format!(
                    "coordinate {c} not in 1..={dim}"
                )));
            }
            bits |= 1 << (c - 1);
        }
        Vertex::new(dim, bits)
    }

    pub fn from_tuple(t: &[u8]) -> Result<Self> {
        let mut bits = 0u32;
        for (i, &x) in t.iter().enumerate() {
            match x {
                0 => {}
                1 => bits |= 1 << i,
                _ => return Err(Error::Invalid(format!("entry {x} is not 0 or 1"))),
            }
        }
        Vertex::new(t.len(), bits)
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn get(&self, coord: usize) -> bool {
        coord >= 1 && coord <= self.dim() && self.bits >> (coord - 1) & 1 == 1
    }

    pub fn coords(&self) -> Vec<usize> {
        (1..=self.dim()).filter(|&c| self.get(c)).collect()
    }

    pub fn tuple(&self) -> Vec<u8> {
        (1..=self.dim()).map(|c| self.get(c) as u8).collect()
    }

    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// The order `a ≼ b` (inclusion of coordinate sets).
    pub fn leq(&self, other: &Vertex) -> bool {
        self.dim == other.dim && self.bits & !other.bits == 0
    }

    /// `d(a, b) = |b \ a|` when `a ≼ b`.
    pub fn distance(&self, other: &Vertex) -> Option<usize> {
        self.leq(other)
            .then(|| (other.bits & !self.bits).count_ones() as usize)
    }

    /// Largest coordinate set to 1, or 0 for `α`.
    pub fn sup(&self) -> usize {
        32 - self.bits.leading_zeros() as usize
    }

    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "" | "()" => return Vertex::new(0, 0),
            _ => {}
        }
        let inner = t.trim_start_matches('(').trim_end_matches(')');
        let digits: Vec<u8> = if inner.contains(',') {
            inner
                .split(',')
                .map(|p| p.trim().parse::<u8>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Invalid(format!("vertex {s:?}: {e}")))?
        } else {
            inner
                .chars()
                .map(|c| match c {
                    '0' => Ok(0),
                    '1' => Ok(1),
                    _ => Err(Error::Invalid(format!("vertex {s:?}: bad digit {c:?}"))),
                })
                .collect::<Result<_>>()?
        };
        Vertex::from_tuple(&digits)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dim == 0 {
            return write!(f, "()");
        }
        for c in 1..=self.dim() {
            write!(f, "{}", self.get(c) as u8)?;
        }
        Ok(())
    }
}

/// All vertices of `[1]^n` in bit order.
pub fn vertices(n: usize) -> impl Iterator<Item = Vertex> {
    (0..=full(n)).map(move |b| Vertex::raw(n, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distance_and_order() {
        let a = Vertex::from_tuple(&[1, 0, 0, 0, 0]).unwrap();
        let b = Vertex::from_tuple(&[1, 0, 1, 0, 1]).unwrap();
        assert!(a.leq(&b));
        assert_eq!(a.distance(&b), Some(2));
        assert_eq!(b.distance(&a), None);
        assert_eq!(b.sup(), 5);
        assert_eq!(Vertex::alpha(3).sup(), 0);
    }

    #[test]
    fn parse_roundtrip() {
        for v in vertices(4) {
            assert_eq!(Vertex::parse(&v.to_string()).unwrap(), v);
        }
        assert_eq!(
            Vertex::parse("(1,0,1)").unwrap(),
            Vertex::from_coords(3, &[1, 3]).unwrap()
        );
        assert!(Vertex::parse("102").is_err());
    }
}
