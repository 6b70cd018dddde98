use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::abelian::format_rational;
use crate::error::{Error, Result};
use crate::lie::RationalMatrix;
use crate::signed_perm::{Sign, SignedPermutation};

/// `M = to_matrix(P) · diag(D)` with `D > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialFactor {
    pub permutation: SignedPermutation,
    pub diagonal: Vec<BigRational>,
}

impl MonomialFactor {
    pub fn reconstruct(&self) -> RationalMatrix {
        let n = self.diagonal.len();
        let mut m = RationalMatrix::zeros(n);
        for (j, d) in self.diagonal.iter().enumerate() {
            let v = match self.permutation.sign(j) {
                Sign::Plus => d.clone(),
                Sign::Minus => -d.clone(),
            };
            m.set(self.permutation.image(j), j, v);
        }
        m
    }
}

impl Serialize for MonomialFactor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Json<'a> {
            permutation: &'a SignedPermutation,
            diagonal: Vec<String>,
        }
        Json {
            permutation: &self.permutation,
            diagonal: self.diagonal.iter().map(format_rational).collect(),
        }
        .serialize(s)
    }
}

pub fn factor_monomial(m: &RationalMatrix) -> Result<MonomialFactor> {
    let n = m.n();
    let mut images = Vec::with_capacity(n);
    let mut signs = Vec::with_capacity(n);
    let mut diagonal = Vec::with_capacity(n);
    for j in 0..n {
        let mut rows = (0..n).filter(|&i| !m.get(i, j).is_zero());
        let (Some(i), None) = (rows.next(), rows.next()) else {
            return Err(Error::NotMonomial(format!("column {} needs exactly one nonzero entry", j + 1)));
        };
        let v = m.get(i, j);
        images.push(i);
        signs.push(if v.is_negative() { Sign::Minus } else { Sign::Plus });
        diagonal.push(v.abs());
    }
    let permutation = SignedPermutation::new(images, signs)
        .map_err(|_| Error::NotMonomial("two columns share a nonzero row".into()))?;
    Ok(MonomialFactor { permutation, diagonal })
}
