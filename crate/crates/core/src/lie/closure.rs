//! Generators `SO_jk` of the parity Lie groups and exact bracket closure.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::RationalMatrix;
use crate::partition::PartitionSpec;

/// Largest matrix size accepted by [`bracket_closure`].
pub const MAX_CLOSURE_DEGREE: usize = 8;

fn unit_pair(j: usize, k: usize, n: usize, lower: i64) -> Result<RationalMatrix> {
    if j == 0 || j >= k || k > n {
        return Err(Error::BadIndices { j, k, n });
    }
    let mut m = RationalMatrix::zeros(n);
    m.set(j - 1, k - 1, BigRational::one());
    m.set(k - 1, j - 1, BigRational::from_integer(lower.into()));
    Ok(m)
}

/// `E_jk − E_kj` (1-based, `j < k`).
pub fn so2_generator(j: usize, k: usize, n: usize) -> Result<RationalMatrix> {
    unit_pair(j, k, n, -1)
}

/// `E_jk + E_kj` (1-based, `j < k`).
pub fn so11_generator(j: usize, k: usize, n: usize) -> Result<RationalMatrix> {
    unit_pair(j, k, n, 1)
}

/// Rotations for every within-block pair, then hyperbolic generators: all
/// cross-block pairs, or when `minimal` only the pair of smallest indices
/// for each unordered block pair.
pub fn generator_set(j: &PartitionSpec, minimal: bool) -> Vec<RationalMatrix> {
    let n = j.degree();
    let mut out = Vec::new();
    for block in j.blocks() {
        for (a, &x) in block.iter().enumerate() {
            for &y in &block[a + 1..] {
                out.push(so2_generator(x.min(y) + 1, x.max(y) + 1, n).expect("distinct axes"));
            }
        }
    }
    let blocks = j.blocks();
    for a in 0..blocks.len() {
        for b in a + 1..blocks.len() {
            if minimal {
                let (x, y) = (blocks[a][0], blocks[b][0]);
                out.push(so11_generator(x.min(y) + 1, x.max(y) + 1, n).expect("distinct axes"));
            } else {
                for &x in &blocks[a] {
                    for &y in &blocks[b] {
                        out.push(so11_generator(x.min(y) + 1, x.max(y) + 1, n).expect("distinct axes"));
                    }
                }
            }
        }
    }
    out
}

/// `Σ n_i(n_i − 1)/2 + m(m − 1)/2`.
pub fn p_formula(j: &PartitionSpec) -> usize {
    let m = j.block_count();
    j.block_sizes().iter().map(|&s| s * (s - 1) / 2).sum::<usize>() + m * (m - 1) / 2
}

/// Subspace of `Q^d` kept in reduced row echelon form.
#[derive(Debug, Clone, Default)]
struct Echelon {
    rows: Vec<(usize, Vec<BigRational>)>,
}

impl Echelon {
    fn reduce(&self, mut v: Vec<BigRational>) -> Vec<BigRational> {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        v
    }

    fn contains(&self, v: &[BigRational]) -> bool {
        self.reduce(v.to_vec()).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns whether the span grew.
    fn insert(&mut self, v: &[BigRational]) -> bool {
        let mut v = self.reduce(v.to_vec());
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, v));
        true
    }
}

/// Basis of a matrix Lie algebra in reduced row echelon form over the
/// row-major coordinates, so equal spans have equal bases.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LieBasis {
    pub n: usize,
    pub basis: Vec<RationalMatrix>,
    /// Set when the span is known to be bracket-closed.
    pub complete: bool,
}

impl LieBasis {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, m: &RationalMatrix) -> bool {
        m.n() == self.n && self.echelon().contains(m.to_vector())
    }

    fn echelon(&self) -> Echelon {
        let mut e = Echelon::default();
        for b in &self.basis {
            e.insert(b.to_vector());
        }
        e
    }
}

/// Smallest bracket-closed span containing `gens`.
pub fn bracket_closure(gens: &[RationalMatrix]) -> Result<LieBasis> {
    let Some(first) = gens.first() else {
        return Err(Error::Invalid("no generators".into()));
    };
    let n = first.n();
    if let Some(g) = gens.iter().find(|g| g.n() != n) {
        return Err(Error::DegreeMismatch { left: n, right: g.n() });
    }
    if n > MAX_CLOSURE_DEGREE {
        return Err(Error::DegreeTooLarge {
            n,
            max: MAX_CLOSURE_DEGREE,
        });
    }
    let mut span = Echelon::default();
    let mut found: Vec<RationalMatrix> = Vec::new();
    for g in gens {
        if span.insert(g.to_vector()) {
            found.push(g.clone());
        }
    }
    // every pair (i, j) with j < i is bracketed once
    let mut i = 0;
    while i < found.len() {
        for j in 0..i {
            let b = found[i].bracket(&found[j])?;
            if span.insert(b.to_vector()) {
                found.push(b);
            }
        }
        i += 1;
    }
    let basis = span
        .rows
        .into_iter()
        .map(|(_, v)| RationalMatrix::from_vector(n, v))
        .collect::<Result<Vec<_>>>()?;
    Ok(LieBasis {
        n,
        basis,
        complete: true,
    })
}

/// Whether all pairwise brackets of the basis stay in its span.
pub fn is_bracket_closed(basis: &LieBasis) -> Result<bool> {
    let e = basis.echelon();
    for (i, a) in basis.basis.iter().enumerate() {
        for b in &basis.basis[i + 1..] {
            if !e.contains(a.bracket(b)?.to_vector()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub partition: String,
    pub p: usize,
    pub dim_minimal: usize,
    pub dim_full: usize,
    pub spans_equal: bool,
}

pub fn closure_report(j: &PartitionSpec) -> Result<ClosureReport> {
    let minimal = bracket_closure_or_zero(j, true)?;
    let full = bracket_closure_or_zero(j, false)?;
    Ok(ClosureReport {
        partition: j.to_string(),
        p: p_formula(j),
        dim_minimal: minimal.dimension(),
        dim_full: full.dimension(),
        spans_equal: minimal.basis == full.basis,
    })
}

/// The degree-one single block has no generators; its algebra is zero.
fn bracket_closure_or_zero(j: &PartitionSpec, minimal: bool) -> Result<LieBasis> {
    let gens = generator_set(j, minimal);
    if gens.is_empty() {
        if j.degree() > MAX_CLOSURE_DEGREE {
            return Err(Error::DegreeTooLarge {
                n: j.degree(),
                max: MAX_CLOSURE_DEGREE,
            });
        }
        return Ok(LieBasis {
            n: j.degree(),
            basis: Vec::new(),
            complete: true,
        });
    }
    bracket_closure(&gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> PartitionSpec {
        s.parse().unwrap()
    }

    #[test]
    fn generator_examples() {
        assert_eq!(so2_generator(1, 2, 2).unwrap(), RationalMatrix::from_i64(&[&[0, 1], &[-1, 0]]).unwrap());
        assert_eq!(so11_generator(1, 2, 2).unwrap(), RationalMatrix::from_i64(&[&[0, 1], &[1, 0]]).unwrap());
        assert_eq!(
            so2_generator(1, 3, 3).unwrap(),
            RationalMatrix::from_i64(&[&[0, 0, 1], &[0, 0, 0], &[-1, 0, 0]]).unwrap()
        );
        assert!(so2_generator(2, 2, 3).is_err());
        assert!(so2_generator(0, 1, 3).is_err());
        assert!(so11_generator(1, 4, 3).is_err());
    }

    #[test]
    fn generator_set_examples() {
        let g = generator_set(&part("3"), true);
        assert_eq!(g.len(), 3);
        assert!(g.iter().all(RationalMatrix::is_antisymmetric));
        assert_eq!(generator_set(&part("1,1"), true), generator_set(&part("1,1"), false));
        assert_eq!(generator_set(&part("1,1"), true).len(), 1);
        let g = generator_set(&part("2,2"), true);
        assert_eq!(g.len(), 3);
        assert_eq!(g.len(), p_formula(&part("2,2")));
        assert_eq!(generator_set(&part("2,2"), false).len(), 6);
    }

    #[test]
    fn p_examples() {
        assert_eq!(p_formula(&part("3")), 3);
        assert_eq!(p_formula(&part("1")), 0);
        assert_eq!(p_formula(&part("2,1")), 2);
    }

    #[test]
    fn closure_examples() {
        assert_eq!(bracket_closure(&generator_set(&part("5"), true)).unwrap().dimension(), 10);
        assert_eq!(bracket_closure(&generator_set(&part("1,1"), true)).unwrap().dimension(), 1);
        let b = bracket_closure(&generator_set(&part("2,1"), true)).unwrap();
        assert_eq!(b.dimension(), 3);
        assert!(b.contains(&so2_generator(1, 2, 3).unwrap()));
        assert!(b.contains(&so11_generator(1, 3, 3).unwrap()));
        assert!(b.contains(&so11_generator(2, 3, 3).unwrap()));
        assert!(!b.contains(&so2_generator(1, 3, 3).unwrap()));
        assert!(is_bracket_closed(&b).unwrap());
    }

    #[test]
    fn reports() {
        let r = closure_report(&part("3")).unwrap();
        assert_eq!((r.p, r.dim_minimal, r.dim_full, r.spans_equal), (3, 3, 3, true));
        let r = closure_report(&part("2,1")).unwrap();
        assert_eq!((r.p, r.dim_minimal, r.dim_full, r.spans_equal), (2, 3, 3, true));
        let r = closure_report(&part("1,1")).unwrap();
        assert_eq!((r.p, r.dim_minimal, r.dim_full, r.spans_equal), (1, 1, 1, true));
        let r = closure_report(&part("1")).unwrap();
        assert_eq!((r.p, r.dim_minimal), (0, 0));
    }

    #[test]
    fn closure_errors() {
        assert!(bracket_closure(&[]).is_err());
        assert!(bracket_closure(&[RationalMatrix::zeros(2), RationalMatrix::zeros(3)]).is_err());
        assert!(bracket_closure(&[RationalMatrix::zeros(9)]).is_err());
    }
}
