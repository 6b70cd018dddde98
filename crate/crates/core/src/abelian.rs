//! Parity on `Z^n`, the sublattices `AZ^n`, `BZ^n`, `JZ^n`, the finite
//! quotients `Z^n / JZ^n`, and exact charts of `R^n / JZ^n`.
//!
//! `x mod k` always means the canonical residue in `[0, k)`, so the charts are
//! homomorphisms on negative coordinates as well. Nothing here uses floating
//! point.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::Z2Vector;
use crate::partition::PartitionSpec;

/// Parses `p/q` or an integer into a reduced rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text, "1"),
    };
    let p: BigInt = num
        .parse()
        .map_err(|_| Error::parse("rational", format!("bad numerator `{num}`")))?;
    let q: BigInt = den
        .parse()
        .map_err(|_| Error::parse("rational", format!("bad denominator `{den}`")))?;
    if q.is_zero() {
        return Err(Error::parse("rational", "zero denominator"));
    }
    Ok(BigRational::new(p, q))
}

/// `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Residue of `x` in `[0, k)`.
pub fn residue(x: &BigRational, k: i64) -> BigRational {
    let k = BigRational::from_integer(BigInt::from(k));
    let q = (x / &k).floor();
    x - q * k
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerVector(pub Vec<BigInt>);

impl IntegerVector {
    pub fn from_i64(v: &[i64]) -> Self {
        IntegerVector(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &IntegerVector) -> Result<IntegerVector> {
        check_len(self.len(), other.len())?;
        Ok(IntegerVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn to_rational(&self) -> RationalVector {
        RationalVector(self.0.iter().cloned().map(BigRational::from_integer).collect())
    }
}

impl fmt::Display for IntegerVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(BigInt::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for IntegerVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        split_list(s)
            .map(|t| {
                t.parse::<BigInt>()
                    .map_err(|_| Error::parse("integer vector", format!("bad entry `{t}`")))
            })
            .collect::<Result<Vec<_>>>()
            .map(IntegerVector)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalVector(pub Vec<BigRational>);

impl RationalVector {
    pub fn from_pairs(v: &[(i64, i64)]) -> Self {
        RationalVector(
            v.iter()
                .map(|&(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &RationalVector) -> Result<RationalVector> {
        check_len(self.len(), other.len())?;
        Ok(RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &RationalVector) -> Result<RationalVector> {
        check_len(self.len(), other.len())?;
        Ok(RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    /// `Some` when every entry is an integer.
    pub fn to_integer(&self) -> Option<IntegerVector> {
        self.0
            .iter()
            .map(|r| r.is_integer().then(|| r.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(IntegerVector)
    }
}

impl FromStr for RationalVector {
    type Err = Error;

    /// Comma-separated rational literals, e.g. `3/4,1/4,5`.
    fn from_str(s: &str) -> Result<Self> {
        split_list(s).map(parse_rational).collect::<Result<Vec<_>>>().map(RationalVector)
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        f.write_str(&parts.join(","))
    }
}

fn split_list(s: &str) -> impl Iterator<Item = &str> {
    let s = s.trim();
    // an empty string is an empty vector
    s.split(',').map(str::trim).filter(move |_| !s.is_empty())
}

fn check_len(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::DegreeMismatch { left, right });
    }
    Ok(())
}

/// Sum of the entries mod 2.
pub fn int_parity(x: &IntegerVector) -> u8 {
    let sum: BigInt = x.0.iter().sum();
    if sum.is_even() {
        0
    } else {
        1
    }
}

/// The sublattices of `Z^n` built from the parity homomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sublattice {
    /// Even total sum.
    A,
    /// Every entry even.
    B,
    /// Even sum inside every block.
    J(PartitionSpec),
}

pub fn membership(x: &IntegerVector, which: &Sublattice) -> Result<bool> {
    match which {
        Sublattice::A => Ok(int_parity(x) == 0),
        Sublattice::B => Ok(x.0.iter().all(Integer::is_even)),
        Sublattice::J(j) => Ok(project_node(x, j)?.bits().iter().all(|&b| !b)),
    }
}

/// Element of the finite quotient `Z^n / JZ^n ≅ Z_2^m`: one bit per block.
pub type QuotientElement = Z2Vector;

/// Bit `i` is the parity of the block-`i` coordinate sum.
pub fn project_node(x: &IntegerVector, j: &PartitionSpec) -> Result<QuotientElement> {
    check_len(j.degree(), x.len())?;
    Ok(Z2Vector::new(
        j.blocks()
            .iter()
            .map(|b| b.iter().map(|&a| &x.0[a]).sum::<BigInt>().is_odd())
            .collect(),
    ))
}

/// `Z_2^m`, either as a full addition table (`m <= 6`) or by its standard
/// generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuotientGroup {
    Table {
        order: u64,
        /// Elements are indexed by their bit masks (bit `i` = block `i`).
        table: Vec<Vec<u32>>,
    },
    Generators {
        order: u64,
        generators: Vec<Z2Vector>,
    },
}

impl QuotientGroup {
    pub fn order(&self) -> u64 {
        match self {
            QuotientGroup::Table { order, .. } | QuotientGroup::Generators { order, .. } => *order,
        }
    }
}

pub fn quotient_table(j: &PartitionSpec) -> Result<QuotientGroup> {
    let m = j.block_count();
    if m > 20 {
        return Err(Error::CapExceeded {
            what: "quotient block count",
            limit: 20,
        });
    }
    let order = 1u64 << m;
    if m <= 6 {
        let table = (0..order as u32)
            .map(|a| (0..order as u32).map(|b| a ^ b).collect())
            .collect();
        Ok(QuotientGroup::Table { order, table })
    } else {
        let generators = (0..m).map(|i| Z2Vector::from_mask(1 << i, m)).collect();
        Ok(QuotientGroup::Generators { order, generators })
    }
}

/// Coordinates of one block: residues mod 1 of every coordinate after the
/// first, and the block sum mod 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockChart {
    pub residues: Vec<BigRational>,
    pub blocksum: BigRational,
}

/// A point of `R^n / JZ^n` in per-block coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chart {
    pub blocks: Vec<BlockChart>,
}

impl Chart {
    pub fn is_zero(&self) -> bool {
        self.blocks
            .iter()
            .all(|b| b.blocksum.is_zero() && b.residues.iter().all(Zero::is_zero))
    }

    /// Componentwise addition mod 1 (residues) and mod 2 (block sums).
    pub fn add(&self, other: &Chart) -> Result<Chart> {
        check_len(self.blocks.len(), other.blocks.len())?;
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| {
                check_len(a.residues.len(), b.residues.len())?;
                Ok(BlockChart {
                    residues: a
                        .residues
                        .iter()
                        .zip(&b.residues)
                        .map(|(x, y)| residue(&(x + y), 1))
                        .collect(),
                    blocksum: residue(&(&a.blocksum + &b.blocksum), 2),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(|blocks| Chart { blocks })
    }
}

/// Chart coordinates of `x`. Within each block the smallest axis plays the
/// role of the coordinate without its own residue.
pub fn chart(x: &RationalVector, j: &PartitionSpec) -> Result<Chart> {
    check_len(j.degree(), x.len())?;
    let blocks = j
        .blocks()
        .iter()
        .map(|b| BlockChart {
            residues: b[1..].iter().map(|&a| residue(&x.0[a], 1)).collect(),
            blocksum: residue(&b.iter().map(|&a| x.0[a].clone()).sum::<BigRational>(), 2),
        })
        .collect();
    Ok(Chart { blocks })
}

pub fn chart_equiv(x: &RationalVector, y: &RationalVector, j: &PartitionSpec) -> Result<bool> {
    Ok(chart(x, j)? == chart(y, j)?)
}

/// Rational multiple of `π`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PiMultiple(pub BigRational);

impl fmt::Display for PiMultiple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = &self.0;
        if r.is_zero() {
            return f.write_str("0");
        }
        let sign = if r.is_negative() { "-" } else { "" };
        let (p, q) = (r.numer().abs(), r.denom().clone());
        match (p.is_one(), q.is_one()) {
            (true, true) => write!(f, "{sign}π"),
            (false, true) => write!(f, "{sign}{p}π"),
            (true, false) => write!(f, "{sign}π/{q}"),
            (false, false) => write!(f, "{sign}{p}π/{q}"),
        }
    }
}

/// Spherical angles of one block: `φ = π · blocksum` in `[0, 2π)` and
/// `θ_k = π · residue_k` in `[0, π)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SphericalAngles {
    pub phi: PiMultiple,
    pub theta: Vec<PiMultiple>,
}

pub fn spherical(chart: &Chart, block: usize) -> Result<SphericalAngles> {
    let b = chart
        .blocks
        .get(block)
        .ok_or_else(|| Error::Invalid(format!("chart has no block {}", block + 1)))?;
    Ok(SphericalAngles {
        phi: PiMultiple(b.blocksum.clone()),
        theta: b.residues.iter().cloned().map(PiMultiple).collect(),
    })
}

#[derive(Serialize, Deserialize)]
struct BlockChartJson {
    theta: Vec<String>,
    phi: String,
}

impl Serialize for Chart {
    /// `[{"theta": ["1/4"], "phi": "1"}, ...]`; the numbers are the raw
    /// residues, which are also the angles as multiples of `π`.
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let blocks: Vec<BlockChartJson> = self
            .blocks
            .iter()
            .map(|b| BlockChartJson {
                theta: b.residues.iter().map(format_rational).collect(),
                phi: format_rational(&b.blocksum),
            })
            .collect();
        blocks.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Chart {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = Vec::<BlockChartJson>::deserialize(d)?;
        let blocks = raw
            .into_iter()
            .map(|b| {
                let residues = b
                    .theta
                    .iter()
                    .map(|t| parse_rational(t))
                    .collect::<Result<Vec<_>>>()
                    .map_err(D::Error::custom)?;
                let blocksum = parse_rational(&b.phi).map_err(D::Error::custom)?;
                let one = BigRational::one();
                let two = &one + &one;
                if residues.iter().any(|r| r.is_negative() || r >= &one)
                    || blocksum.is_negative()
                    || blocksum >= two
                {
                    return Err(D::Error::custom("chart coordinates out of range"));
                }
                Ok(BlockChart { residues, blocksum })
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Chart { blocks })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    fn part(s: &str) -> PartitionSpec {
        s.parse().unwrap()
    }

    #[test]
    fn parity_examples() {
        assert_eq!(int_parity(&IntegerVector::from_i64(&[1, 2, 3])), 0);
        assert_eq!(int_parity(&IntegerVector::from_i64(&[1, 0])), 1);
        assert_eq!(int_parity(&IntegerVector::from_i64(&[-1, 0])), 1);
    }

    #[test]
    fn membership_examples() {
        let v = IntegerVector::from_i64(&[1, 1]);
        assert!(membership(&v, &Sublattice::A).unwrap());
        assert!(membership(&v, &Sublattice::J(part("2"))).unwrap());
        assert!(!membership(&v, &Sublattice::B).unwrap());
        let zero = IntegerVector::from_i64(&[0, 0, 0, 0]);
        for s in [Sublattice::A, Sublattice::B, Sublattice::J(part("2,2"))] {
            assert!(membership(&zero, &s).unwrap());
        }
        assert!(!membership(&IntegerVector::from_i64(&[1, 1, 1, 0]), &Sublattice::J(part("2,2"))).unwrap());
        assert!(membership(&v, &Sublattice::J(part("3"))).is_err());
    }

    #[test]
    fn project_examples() {
        let j = part("1,1");
        let images: std::collections::HashSet<_> = [[0, 0], [1, 0], [0, 1], [1, 1]]
            .iter()
            .map(|v| project_node(&IntegerVector::from_i64(v), &j).unwrap())
            .collect();
        assert_eq!(images.len(), 4);
        let j = part("2");
        assert_eq!(
            project_node(&IntegerVector::from_i64(&[0, 0]), &j).unwrap(),
            project_node(&IntegerVector::from_i64(&[1, 1]), &j).unwrap()
        );
        assert_eq!(
            project_node(&IntegerVector::from_i64(&[0, 0, 0]), &part("2,1")).unwrap(),
            Z2Vector::zeros(2)
        );
    }

    #[test]
    fn quotient_orders() {
        assert_eq!(quotient_table(&part("2,1")).unwrap().order(), 4);
        assert_eq!(quotient_table(&part("3")).unwrap().order(), 2);
        if let QuotientGroup::Table { table, .. } = quotient_table(&part("1,1,1")).unwrap() {
            assert!((0..8).all(|a| table[a][a] == 0));
        } else {
            panic!("expected a table");
        }
        let big = PartitionSpec::singletons(7).unwrap();
        assert!(matches!(quotient_table(&big).unwrap(), QuotientGroup::Generators { order: 128, .. }));
        assert!(quotient_table(&PartitionSpec::singletons(21).unwrap()).is_err());
    }

    #[test]
    fn chart_examples() {
        let c = chart(&RationalVector::from_pairs(&[(1, 2), (1, 2)]), &part("2")).unwrap();
        assert_eq!(c.blocks[0].residues, vec![q(1, 2)]);
        assert_eq!(c.blocks[0].blocksum, q(1, 1));

        let c = chart(&RationalVector::from_pairs(&[(3, 4), (1, 4), (5, 1)]), &part("2,1")).unwrap();
        assert_eq!(c.blocks[0].residues, vec![q(1, 4)]);
        assert_eq!(c.blocks[0].blocksum, q(1, 1));
        assert!(c.blocks[1].residues.is_empty());
        assert_eq!(c.blocks[1].blocksum, q(1, 1));

        let c = chart(&RationalVector::from_pairs(&[(3, 1), (-1, 1)]), &part("2")).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn residues_of_negatives() {
        assert_eq!(residue(&q(-1, 4), 1), q(3, 4));
        assert_eq!(residue(&q(-5, 2), 2), q(3, 2));
        assert_eq!(residue(&q(4, 1), 2), q(0, 1));
    }

    #[test]
    fn spherical_examples() {
        let c = chart(&RationalVector::from_pairs(&[(1, 2), (1, 2)]), &part("2")).unwrap();
        let s = spherical(&c, 0).unwrap();
        assert_eq!(s.phi.to_string(), "π");
        assert_eq!(s.theta[0].to_string(), "π/2");

        let c = chart(&RationalVector::from_pairs(&[(0, 1), (3, 2)]), &part("2")).unwrap();
        let s = spherical(&c, 0).unwrap();
        assert_eq!(s.theta[0].0, q(1, 2));
        assert_eq!(s.phi.0, q(3, 2));
        assert_eq!(s.phi.to_string(), "3π/2");

        let zero = chart(&RationalVector::from_pairs(&[(0, 1), (0, 1), (0, 1)]), &part("3")).unwrap();
        let s = spherical(&zero, 0).unwrap();
        assert!(s.phi.0.is_zero() && s.theta.iter().all(|t| t.0.is_zero()));
        assert!(spherical(&zero, 1).is_err());
    }

    #[test]
    fn equivalence_examples() {
        let j = part("2");
        let x = RationalVector::from_pairs(&[(3, 4), (1, 4)]);
        let y = RationalVector::from_pairs(&[(7, 4), (5, 4)]);
        assert!(chart_equiv(&x, &y, &j).unwrap());
        assert!(chart_equiv(&x, &x, &j).unwrap());
        let a = RationalVector::from_pairs(&[(0, 1), (0, 1)]);
        let b = RationalVector::from_pairs(&[(1, 1), (0, 1)]);
        assert!(!chart_equiv(&a, &b, &j).unwrap());
    }

    #[test]
    fn literal_grammar() {
        let v: RationalVector = "3/4, -1/4 ,5".parse().unwrap();
        assert_eq!(v.0, vec![q(3, 4), q(-1, 4), q(5, 1)]);
        assert_eq!(v.to_string(), "3/4,-1/4,5");
        assert_eq!(parse_rational("6/4").unwrap(), q(3, 2));
        assert_eq!(parse_rational("2/-4").unwrap(), q(-1, 2));
        for bad in ["1/0", "x", "1/2/3", "", "1.5"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
        assert!("".parse::<RationalVector>().unwrap().is_empty());
        assert!("1,,2".parse::<RationalVector>().is_err());
    }

    #[test]
    fn chart_json() {
        let c = chart(&RationalVector::from_pairs(&[(3, 4), (1, 4), (5, 1)]), &part("2,1")).unwrap();
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(json, r#"[{"theta":["1/4"],"phi":"1"},{"theta":[],"phi":"1"}]"#);
        assert_eq!(serde_json::from_str::<Chart>(&json).unwrap(), c);
        assert!(serde_json::from_str::<Chart>(r#"[{"theta":["5/4"],"phi":"1"}]"#).is_err());
    }
}
