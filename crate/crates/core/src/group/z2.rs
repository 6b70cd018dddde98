use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vector over the two-element field.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Z2Vector {
    bits: Vec<bool>,
}

impl Z2Vector {
    pub fn new(bits: Vec<bool>) -> Self {
        Z2Vector { bits }
    }

    pub fn zeros(len: usize) -> Self {
        Z2Vector { bits: vec![false; len] }
    }

    /// Bit `t` of `mask` becomes entry `t`.
    pub fn from_mask(mask: u64, len: usize) -> Self {
        Z2Vector {
            bits: (0..len).map(|t| mask >> t & 1 == 1).collect(),
        }
    }

    pub fn to_mask(&self) -> u64 {
        self.bits
            .iter()
            .enumerate()
            .fold(0, |acc, (t, &b)| acc | (b as u64) << t)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, t: usize) -> bool {
        self.bits[t]
    }

    pub fn add(&self, other: &Z2Vector) -> Result<Z2Vector> {
        if self.len() != other.len() {
            return Err(Error::DegreeMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(Z2Vector {
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a ^ b).collect(),
        })
    }

    /// Removes entry `t`.
    pub fn without(&self, t: usize) -> Z2Vector {
        let mut bits = self.bits.clone();
        bits.remove(t);
        Z2Vector { bits }
    }

    /// Inserts `bit` at position `t`.
    pub fn with_inserted(&self, t: usize, bit: bool) -> Z2Vector {
        let mut bits = self.bits.clone();
        bits.insert(t, bit);
        Z2Vector { bits }
    }
}

/// Sum of the entries mod 2.
pub fn z2_parity(v: &Z2Vector) -> u8 {
    (v.bits.iter().filter(|&&b| b).count() % 2) as u8
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Z2SpanReport {
    pub n: usize,
    /// Size of the even-weight subgroup, enumerated directly.
    pub even_weight_count: u64,
    /// Size of the span of all weight-two vectors.
    pub pair_span_count: u64,
    pub equal: bool,
}

/// Checks that the even-weight subgroup of `Z_2^n` equals the span of the
/// vectors with exactly two ones.
pub fn z2_even_weight_span_check(n: usize) -> Result<Z2SpanReport> {
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    if n > 20 {
        return Err(Error::DegreeTooLarge { n, max: 20 });
    }
    let even: HashSet<u32> = (0u32..1 << n).filter(|v| v.count_ones() % 2 == 0).collect();

    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            pairs.push(1u32 << a | 1u32 << b);
        }
    }
    let mut span: HashSet<u32> = HashSet::from([0]);
    let mut frontier = vec![0u32];
    while let Some(v) = frontier.pop() {
        for &p in &pairs {
            let w = v ^ p;
            if span.insert(w) {
                frontier.push(w);
            }
        }
    }
    Ok(Z2SpanReport {
        n,
        even_weight_count: even.len() as u64,
        pair_span_count: span.len() as u64,
        equal: even == span,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_of_vectors() {
        assert_eq!(z2_parity(&Z2Vector::new(vec![true, true, false])), 0);
        assert_eq!(z2_parity(&Z2Vector::new(vec![true, false, false])), 1);
        assert_eq!(z2_parity(&Z2Vector::zeros(0)), 0);
    }

    #[test]
    fn even_weight_counts() {
        assert_eq!(z2_even_weight_span_check(4).unwrap().even_weight_count, 8);
        let r5 = z2_even_weight_span_check(5).unwrap();
        assert_eq!(r5.pair_span_count, 16);
        assert!(r5.equal);
        let r1 = z2_even_weight_span_check(1).unwrap();
        assert_eq!((r1.even_weight_count, r1.pair_span_count, r1.equal), (1, 1, true));
        assert!(z2_even_weight_span_check(21).is_err());
    }

    #[test]
    fn mask_round_trip_and_insertion() {
        let v = Z2Vector::from_mask(0b101, 3);
        assert_eq!(v.bits(), &[true, false, true]);
        assert_eq!(v.to_mask(), 0b101);
        assert_eq!(v.without(1).with_inserted(1, true).bits(), &[true, true, true]);
        assert!(v.add(&Z2Vector::zeros(2)).is_err());
    }
}
