//! Signed permutations: the hyperoctahedral group `P_n = S_2 wr S_n`.
//!
//! An element sends basis axis `e_j` to `signs[j] * e_{images[j]}`, so its
//! matrix has `M[images[j]][j] = signs[j]`. The sign is applied before the
//! permutation, which makes the factorization `z = x * y` put the pure
//! permutation `x` on the left and the pure sign tuple `y` on the right.
//!
//! Axes are 1-based in every textual form (`π:[2,1];ε:[+1,-1]`) and 0-based
//! in the API.

use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest degree accepted by any constructor.
pub const MAX_DEGREE: usize = 12;

/// An element of `{+1, -1}`. `Plus` sorts before `Minus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i32(v: i32) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn to_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }

    /// Product of a sequence of signs.
    pub fn product<I: IntoIterator<Item = Sign>>(iter: I) -> Sign {
        iter.into_iter().fold(Sign::Plus, |acc, s| acc * s)
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// The three parity homomorphisms `P_n -> {+1, -1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ParityKind {
    /// Sign of the permutation part.
    Type1,
    /// Product of the sign entries.
    Type2,
    /// Product of the two; equals the determinant.
    Type3,
}

impl ParityKind {
    pub const ALL: [ParityKind; 3] = [ParityKind::Type1, ParityKind::Type2, ParityKind::Type3];

    pub fn from_index(k: u8) -> Option<ParityKind> {
        match k {
            1 => Some(ParityKind::Type1),
            2 => Some(ParityKind::Type2),
            3 => Some(ParityKind::Type3),
            _ => None,
        }
    }
}

/// Sign of a 0-based permutation, computed from its cycle decomposition.
pub fn permutation_sign(images: &[usize]) -> Sign {
    let n = images.len();
    let mut seen = vec![false; n];
    let mut sign = Sign::Plus;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0usize;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = images[j];
            len += 1;
        }
        if len.is_multiple_of(2) {
            sign = -sign;
        }
    }
    sign
}

fn is_bijection(images: &[usize]) -> bool {
    let n = images.len();
    let mut hit = vec![false; n];
    for &i in images {
        if i >= n || hit[i] {
            return false;
        }
        hit[i] = true;
    }
    true
}

/// Element of `P_n`.
///
/// The derived ordering is the canonical order used for every deterministic
/// listing: lexicographic on images, then on signs with `+1 < -1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedPermutation {
    images: Vec<usize>,
    signs: Vec<Sign>,
}

impl SignedPermutation {
    /// Builds an element from 0-based images and per-axis signs.
    pub fn new(images: Vec<usize>, signs: Vec<Sign>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        if n > MAX_DEGREE {
            return Err(Error::DegreeTooLarge { n, max: MAX_DEGREE });
        }
        if signs.len() != n {
            return Err(Error::DegreeMismatch {
                left: n,
                right: signs.len(),
            });
        }
        if !is_bijection(&images) {
            return Err(Error::NotBijection(n));
        }
        Ok(SignedPermutation { images, signs })
    }

    /// Builds an element from 1-based images and `±1` integers, the form used
    /// in text and in tests.
    pub fn from_one_based(images: &[usize], signs: &[i32]) -> Result<Self> {
        let images = images
            .iter()
            .map(|&i| i.checked_sub(1).ok_or(Error::NotBijection(images.len())))
            .collect::<Result<Vec<_>>>()?;
        let signs = signs
            .iter()
            .map(|&s| Sign::from_i32(s).ok_or_else(|| Error::Invalid(format!("sign {s} is not ±1"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(images, signs)
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new((0..n).collect(), vec![Sign::Plus; n])
    }

    /// Pure permutation (all signs `+1`).
    pub fn from_permutation(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        Self::new(images, vec![Sign::Plus; n])
    }

    /// Pure sign tuple (identity images).
    pub fn from_signs(signs: Vec<Sign>) -> Result<Self> {
        Self::new((0..signs.len()).collect(), signs)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based image of axis `j`.
    pub fn image(&self, j: usize) -> usize {
        self.images[j]
    }

    pub fn sign(&self, j: usize) -> Sign {
        self.signs[j]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(j, &i)| i == j) && self.signs.iter().all(|s| s.is_plus())
    }

    /// `g ∘ h`: apply `h` first, then `self`. Agrees with the matrix product.
    pub fn compose(&self, h: &SignedPermutation) -> Result<SignedPermutation> {
        if self.degree() != h.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: h.degree(),
            });
        }
        Ok(self.compose_unchecked(h))
    }

    pub(crate) fn compose_unchecked(&self, h: &SignedPermutation) -> SignedPermutation {
        let (images, signs) = h
            .images
            .iter()
            .zip(&h.signs)
            .map(|(&hj, &hs)| (self.images[hj], hs * self.signs[hj]))
            .unzip();
        SignedPermutation { images, signs }
    }

    pub fn inverse(&self) -> SignedPermutation {
        let n = self.degree();
        let mut images = vec![0; n];
        let mut signs = vec![Sign::Plus; n];
        for j in 0..n {
            images[self.images[j]] = j;
            signs[self.images[j]] = self.signs[j];
        }
        SignedPermutation { images, signs }
    }

    /// Splits `z` into `(x, y)` with `x` a pure permutation, `y` a pure sign
    /// tuple and `x ∘ y = z`.
    pub fn decompose(&self) -> (SignedPermutation, SignedPermutation) {
        let n = self.degree();
        let x = SignedPermutation {
            images: self.images.clone(),
            signs: vec![Sign::Plus; n],
        };
        let y = SignedPermutation {
            images: (0..n).collect(),
            signs: self.signs.clone(),
        };
        (x, y)
    }

    pub fn permutation_sign(&self) -> Sign {
        permutation_sign(&self.images)
    }

    pub fn sign_product(&self) -> Sign {
        Sign::product(self.signs.iter().copied())
    }

    pub fn parity(&self, kind: ParityKind) -> Sign {
        match kind {
            ParityKind::Type1 => self.permutation_sign(),
            ParityKind::Type2 => self.sign_product(),
            ParityKind::Type3 => self.permutation_sign() * self.sign_product(),
        }
    }

    pub fn to_matrix(&self) -> SignedMatrix {
        let n = self.degree();
        let mut entries = vec![vec![0i8; n]; n];
        for j in 0..n {
            entries[self.images[j]][j] = self.signs[j].to_i32() as i8;
        }
        SignedMatrix { entries }
    }

    pub fn from_matrix(m: &SignedMatrix) -> Result<SignedPermutation> {
        m.to_signed_permutation()
    }

    /// Embeds `self` (degree `d`) on the listed target axes of degree `n`,
    /// matching axes by position; all other axes are fixed.
    pub fn embed(&self, axes: &[usize], n: usize) -> Result<SignedPermutation> {
        if axes.len() != self.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: axes.len(),
            });
        }
        let mut used = vec![false; n];
        for &axis in axes {
            if axis >= n || std::mem::replace(&mut used[axis], true) {
                return Err(Error::Invalid(format!("bad embedding axis {}", axis + 1)));
            }
        }
        let mut out = SignedPermutation::identity(n)?;
        for (t, &axis) in axes.iter().enumerate() {
            out.images[axis] = axes[self.images[t]];
            out.signs[axis] = self.signs[t];
        }
        Ok(out)
    }

    /// Dense key for hashing and dedup: 4 bits per image, 1 bit per sign.
    pub(crate) fn key(&self) -> u64 {
        let mut k = 0u64;
        for &i in &self.images {
            k = (k << 4) | i as u64;
        }
        for &s in &self.signs {
            k = (k << 1) | (s == Sign::Minus) as u64;
        }
        k
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("π:[")?;
        for (t, i) in self.images.iter().enumerate() {
            if t > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str("];ε:[")?;
        for (t, s) in self.signs.iter().enumerate() {
            if t > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("]")
    }
}

fn parse_bracket_list<'a>(text: &'a str, prefix: &str) -> Result<Vec<&'a str>> {
    let text = text.trim();
    let rest = text
        .strip_prefix(prefix)
        .ok_or_else(|| Error::parse("signed permutation", format!("expected `{prefix}`")))?
        .trim_start();
    let rest = rest
        .strip_prefix(':')
        .ok_or_else(|| Error::parse("signed permutation", "expected `:`"))?
        .trim();
    let inner = rest
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::parse("signed permutation", "expected a bracketed list"))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    Ok(inner.split(',').map(str::trim).collect())
}

impl FromStr for SignedPermutation {
    type Err = Error;

    /// Parses `π:[2,1];ε:[+1,-1]`.
    fn from_str(s: &str) -> Result<Self> {
        let (perm, signs) = s
            .split_once(';')
            .ok_or_else(|| Error::parse("signed permutation", "expected `;` separating π and ε"))?;
        let images = parse_bracket_list(perm, "π")?
            .into_iter()
            .map(|t| {
                t.parse::<usize>()
                    .ok()
                    .filter(|&v| v >= 1)
                    .map(|v| v - 1)
                    .ok_or_else(|| Error::parse("signed permutation", format!("bad image `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        let signs = parse_bracket_list(signs, "ε")?
            .into_iter()
            .map(|t| match t {
                "+1" | "1" => Ok(Sign::Plus),
                "-1" => Ok(Sign::Minus),
                _ => Err(Error::parse("signed permutation", format!("bad sign `{t}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        SignedPermutation::new(images, signs)
    }
}

impl Serialize for SignedPermutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SignedPermutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Square `{-1, 0, +1}` matrix with exactly one nonzero per row and column
/// once validated through [`SignedMatrix::new`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SignedMatrix {
    entries: Vec<Vec<i8>>,
}

impl SignedMatrix {
    pub fn new(entries: Vec<Vec<i8>>) -> Result<Self> {
        let m = SignedMatrix { entries };
        m.to_signed_permutation()?;
        Ok(m)
    }

    pub fn degree(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i8>] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> i8 {
        self.entries[row][col]
    }

    fn to_signed_permutation(&self) -> Result<SignedPermutation> {
        let n = self.entries.len();
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        if self.entries.iter().any(|r| r.len() != n) {
            return Err(Error::NotMonomial("matrix is not square".into()));
        }
        let mut images = Vec::with_capacity(n);
        let mut signs = Vec::with_capacity(n);
        for col in 0..n {
            let mut found = None;
            for row in 0..n {
                match self.entries[row][col] {
                    0 => {}
                    v @ (1 | -1) => {
                        if found.is_some() {
                            return Err(Error::NotMonomial(format!("column {} has two nonzeros", col + 1)));
                        }
                        found = Some((row, Sign::from_i32(v as i32).expect("±1")));
                    }
                    v => return Err(Error::NotMonomial(format!("entry {v} is not in {{-1,0,1}}"))),
                }
            }
            let (row, sign) = found.ok_or_else(|| Error::NotMonomial(format!("column {} is zero", col + 1)))?;
            images.push(row);
            signs.push(sign);
        }
        SignedPermutation::new(images, signs)
            .map_err(|_| Error::NotMonomial("rows do not carry exactly one nonzero".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(images: &[usize], signs: &[i32]) -> SignedPermutation {
        SignedPermutation::from_one_based(images, signs).unwrap()
    }

    #[test]
    fn identity_basics() {
        let e = SignedPermutation::identity(2).unwrap();
        assert_eq!(e, sp(&[1, 2], &[1, 1]));
        assert_eq!(e.to_matrix().entries(), &[vec![1, 0], vec![0, 1]]);
        let e3 = SignedPermutation::identity(3).unwrap();
        for k in ParityKind::ALL {
            assert_eq!(e3.parity(k), Sign::Plus);
        }
        assert_eq!(SignedPermutation::identity(0), Err(Error::ZeroDegree));
        assert!(matches!(
            SignedPermutation::identity(13),
            Err(Error::DegreeTooLarge { .. })
        ));
    }

    #[test]
    fn rotation_squares_to_negation() {
        let r = sp(&[2, 1], &[1, -1]);
        assert_eq!(r.compose(&r).unwrap(), sp(&[1, 2], &[-1, -1]));
        let e = SignedPermutation::identity(2).unwrap();
        assert_eq!(r.compose(&e).unwrap(), r);
        assert_eq!(r.compose(&r.inverse()).unwrap(), e);
        assert!(r.compose(&SignedPermutation::identity(3).unwrap()).is_err());
    }

    #[test]
    fn inverse_is_transpose() {
        let r = sp(&[2, 1], &[1, -1]);
        assert_eq!(r.inverse(), sp(&[2, 1], &[-1, 1]));
        let e4 = SignedPermutation::identity(4).unwrap();
        assert_eq!(e4.inverse(), e4);
    }

    #[test]
    fn matrices_of_listed_maps() {
        assert_eq!(sp(&[2, 1], &[1, 1]).to_matrix().entries(), &[vec![0, 1], vec![1, 0]]);
        // columns (e2, -e1)
        assert_eq!(sp(&[2, 1], &[1, -1]).to_matrix().entries(), &[vec![0, -1], vec![1, 0]]);
    }

    #[test]
    fn from_matrix_rejects_bad_patterns() {
        assert!(SignedMatrix::new(vec![vec![1, 1], vec![0, 0]]).is_err());
        assert!(SignedMatrix::new(vec![vec![2, 0], vec![0, 1]]).is_err());
        assert!(SignedMatrix::new(vec![vec![1, 0], vec![1, 0]]).is_err());
        assert!(SignedMatrix::new(vec![vec![1, 0, 0], vec![0, 1, 0]]).is_err());
        assert!(SignedMatrix::new(vec![]).is_err());
        let m = SignedMatrix::new(vec![vec![0, -1], vec![1, 0]]).unwrap();
        assert_eq!(SignedPermutation::from_matrix(&m).unwrap(), sp(&[2, 1], &[1, -1]));
    }

    #[test]
    fn decompose_example() {
        let z = sp(&[2, 1], &[1, -1]);
        let (x, y) = z.decompose();
        assert_eq!(x, sp(&[2, 1], &[1, 1]));
        assert_eq!(y, sp(&[1, 2], &[1, -1]));
        assert_eq!(x.compose(&y).unwrap(), z);
        let e = SignedPermutation::identity(3).unwrap();
        assert_eq!(e.decompose(), (e.clone(), e.clone()));
    }

    #[test]
    fn parity_examples() {
        let swap = sp(&[2, 1], &[1, 1]);
        assert_eq!(swap.parity(ParityKind::Type1), Sign::Minus);
        assert_eq!(swap.parity(ParityKind::Type2), Sign::Plus);
        assert_eq!(swap.parity(ParityKind::Type3), Sign::Minus);
        assert_eq!(sp(&[2, 1], &[1, -1]).parity(ParityKind::Type3), Sign::Plus);
    }

    #[test]
    fn permutation_sign_by_cycles() {
        assert_eq!(permutation_sign(&[0, 1, 2]), Sign::Plus);
        assert_eq!(permutation_sign(&[1, 2, 0]), Sign::Plus);
        assert_eq!(permutation_sign(&[1, 0, 2]), Sign::Minus);
        assert_eq!(permutation_sign(&[1, 0, 3, 2]), Sign::Plus);
        assert_eq!(permutation_sign(&[1, 2, 3, 0]), Sign::Minus);
    }

    #[test]
    fn text_encoding() {
        let r = sp(&[2, 1], &[1, -1]);
        assert_eq!(r.to_string(), "π:[2,1];ε:[+1,-1]");
        assert_eq!("π:[2,1];ε:[+1,-1]".parse::<SignedPermutation>().unwrap(), r);
        assert_eq!(" π : [2, 1] ; ε : [1, -1] ".parse::<SignedPermutation>().unwrap(), r);
        for bad in ["", "π:[2,1]", "π:[2,2];ε:[1,1]", "π:[0,1];ε:[1,1]", "π:[1,2];ε:[1,2]", "π:[];ε:[]", "x:[1];ε:[1]"] {
            assert!(bad.parse::<SignedPermutation>().is_err(), "{bad}");
        }
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(json, "\"π:[2,1];ε:[+1,-1]\"");
        assert_eq!(serde_json::from_str::<SignedPermutation>(&json).unwrap(), r);
    }

    #[test]
    fn canonical_order_puts_plus_first() {
        let a = sp(&[1, 2], &[1, 1]);
        let b = sp(&[1, 2], &[1, -1]);
        let c = sp(&[2, 1], &[1, 1]);
        assert!(a < b && b < c);
    }

    #[test]
    fn embed_places_pattern_on_axes() {
        let r = sp(&[2, 1], &[1, -1]);
        let g = r.embed(&[0, 2], 3).unwrap();
        assert_eq!(g, sp(&[3, 2, 1], &[1, 1, -1]));
        assert!(r.embed(&[0, 0], 3).is_err());
    }
}
