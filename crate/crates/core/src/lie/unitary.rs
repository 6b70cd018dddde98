// negated comparisons make NaN residuals fail the checks
#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! `U = O1 · diag(e^{iθ}) · O2` for unitary `U` with real orthogonal `O1`,
//! `O2`.
//!
//! `W = UᵀU` is symmetric and unitary, so `Re W` and `Im W` are commuting
//! real symmetric matrices. A common real eigenbasis `Q` gives
//! `QᵀWQ = diag(e^{iφ})`; then `O2 = Qᵀ`, `θ = φ/2`, and
//! `O1 = U Q diag(e^{−iθ})` is real because `O1ᵀO1 = I`.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::{Complex, DMatrix};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const MAX_UNITARY_DEGREE: usize = 16;

type C64 = Complex<f64>;

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix(pub DMatrix<C64>);

impl ComplexMatrix {
    pub fn identity(n: usize) -> Self {
        ComplexMatrix(DMatrix::identity(n, n))
    }

    pub fn from_real(m: &DMatrix<f64>) -> Self {
        ComplexMatrix(m.map(|x| C64::new(x, 0.0)))
    }

    pub fn n(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    /// `‖U*U − I‖_F`.
    pub fn unitarity_error(&self) -> f64 {
        let n = self.n();
        (self.0.adjoint() * &self.0 - DMatrix::<C64>::identity(n, n)).norm()
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = self
                .0
                .row(i)
                .iter()
                .map(|z| format!("{:+.6}{:+.6}i", z.re, z.im))
                .collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for ComplexMatrix {
    /// Rows of `[re, im]` pairs.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> = (0..self.n())
            .map(|i| self.0.row(i).iter().map(|z| [z.re, z.im]).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<[f64; 2]>> = Vec::deserialize(d)?;
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(D::Error::custom("complex matrix must be square and non-empty"));
        }
        if rows.iter().flatten().flatten().any(|x| !x.is_finite()) {
            return Err(D::Error::custom("complex matrix entries must be finite"));
        }
        Ok(ComplexMatrix(DMatrix::from_fn(n, n, |i, j| C64::new(rows[i][j][0], rows[i][j][1]))))
    }
}

fn check_degree(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    if n > MAX_UNITARY_DEGREE {
        return Err(Error::DegreeTooLarge {
            n,
            max: MAX_UNITARY_DEGREE,
        });
    }
    Ok(())
}

/// Orthonormalized complex Gaussian matrix; the phases of `R`'s diagonal
/// are moved into `Q` so the result is Haar-distributed.
pub fn random_unitary(n: usize, seed: u64) -> Result<ComplexMatrix> {
    check_degree(n)?;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let a = DMatrix::from_fn(n, n, |_, _| {
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        C64::new(re, im)
    });
    let qr = a.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    Ok(ComplexMatrix(q))
}

/// Real analogue of [`random_unitary`].
pub fn random_orthogonal(n: usize, seed: u64) -> Result<DMatrix<f64>> {
    check_degree(n)?;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let a = DMatrix::from_fn(n, n, |_, _| StandardNormal.sample(&mut rng));
    let qr = a.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    Ok(q)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Input unitarity, `‖U*U − I‖_F`.
    pub unitarity: f64,
    /// `‖U − O1 Λ O2‖_F`.
    pub reconstruction: f64,
    /// `‖OᵢᵀOᵢ − I‖_F`.
    pub orthogonality: f64,
    /// Frobenius norm of the discarded imaginary part of `O1`.
    pub imaginary: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            unitarity: 1e-10,
            reconstruction: 1e-9,
            orthogonality: 1e-10,
            imaginary: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionResult {
    pub o1: DMatrix<f64>,
    pub o2: DMatrix<f64>,
    /// In `(−π/2, π/2]`.
    pub thetas: Vec<f64>,
    pub reconstruction_error: f64,
    pub orthogonality_error: f64,
    pub imaginary_residue: f64,
}

impl DecompositionResult {
    pub fn reconstruct(&self) -> DMatrix<C64> {
        let n = self.thetas.len();
        let lambda = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            n,
            self.thetas.iter().map(|&t| C64::from_polar(1.0, t)),
        ));
        complexify(&self.o1) * lambda * complexify(&self.o2)
    }
}

impl Serialize for DecompositionResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Json {
            o1: Vec<Vec<f64>>,
            o2: Vec<Vec<f64>>,
            thetas: Vec<f64>,
            reconstruction_error: f64,
            orthogonality_error: f64,
            imaginary_residue: f64,
        }
        let rows = |m: &DMatrix<f64>| (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect();
        Json {
            o1: rows(&self.o1),
            o2: rows(&self.o2),
            thetas: self.thetas.clone(),
            reconstruction_error: self.reconstruction_error,
            orthogonality_error: self.orthogonality_error,
            imaginary_residue: self.imaginary_residue,
        }
        .serialize(s)
    }
}

fn complexify(m: &DMatrix<f64>) -> DMatrix<C64> {
    m.map(|x| C64::new(x, 0.0))
}

/// Eigenvalues closer than this are treated as one cluster.
const CLUSTER_GAP: f64 = 1e-8;
/// Mixing weights for `Re W + r Im W`, tried in order.
const MIXES: [f64; 5] = [0.618_033_988_749_895, 1.324_717_957_244_746, -0.412_454_033_640_107, std::f64::consts::E, -1.732_050_807_568_877];

/// Orthogonal `Q` with `QᵀXQ`, `QᵀYQ` diagonal, for commuting symmetric
/// `X`, `Y`. Eigenvectors of `X + rY` are split further inside clusters of
/// equal eigenvalue using a second weight.
fn common_eigenbasis(x: &DMatrix<f64>, y: &DMatrix<f64>, r: f64, r2: f64) -> DMatrix<f64> {
    let n = x.nrows();
    let eig = (x + y * r).symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let mut q = DMatrix::zeros(n, n);
    for (k, &idx) in order.iter().enumerate() {
        q.set_column(k, &eig.eigenvectors.column(idx));
    }
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && eig.eigenvalues[order[end]] - eig.eigenvalues[order[end - 1]] <= CLUSTER_GAP {
            end += 1;
        }
        if end - start > 1 {
            let block = q.columns(start, end - start).into_owned();
            let m = block.transpose() * (x + y * r2) * &block;
            let sym = (&m + m.transpose()) * 0.5;
            let inner = sym.symmetric_eigen();
            let refined = &block * inner.eigenvectors;
            q.columns_mut(start, end - start).copy_from(&refined);
        }
        start = end;
    }
    q
}

fn off_diagonal_norm(m: &DMatrix<C64>) -> f64 {
    let n = m.nrows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

pub fn odo_decompose(u: &ComplexMatrix, tol: &Tolerances) -> Result<DecompositionResult> {
    let n = u.n();
    check_degree(n)?;
    let residual = u.unitarity_error();
    if !(residual <= tol.unitarity) {
        return Err(Error::NotUnitary {
            residual,
            tol: tol.unitarity,
        });
    }
    let u = &u.0;
    let w = u.transpose() * u;
    let x = w.map(|z| z.re);
    let y = w.map(|z| z.im);
    let x = (&x + x.transpose()) * 0.5;
    let y = (&y + y.transpose()) * 0.5;

    let mut best: Option<(f64, DMatrix<f64>)> = None;
    for (k, &r) in MIXES.iter().enumerate() {
        let r2 = MIXES[(k + 1) % MIXES.len()];
        let q = common_eigenbasis(&x, &y, r, r2);
        let off = off_diagonal_norm(&(complexify(&q).transpose() * &w * complexify(&q)));
        let better = best.as_ref().is_none_or(|(b, _)| off < *b);
        if better {
            best = Some((off, q));
        }
        if off <= tol.orthogonality {
            break;
        }
    }
    let (_, q) = best.expect("at least one mix tried");
    let d = complexify(&q).transpose() * &w * complexify(&q);

    let thetas: Vec<f64> = (0..n)
        .map(|k| {
            let phi = d[(k, k)].arg();
            let phi = if phi <= -PI { PI } else { phi };
            phi / 2.0
        })
        .collect();
    let inv_lambda = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        n,
        thetas.iter().map(|&t| C64::from_polar(1.0, -t)),
    ));
    let o1c = u * complexify(&q) * inv_lambda;
    let imaginary_residue = o1c.map(|z| z.im).norm();
    if !(imaginary_residue <= tol.imaginary) {
        return Err(Error::ResidueCheck {
            what: "imaginary part of O1",
            value: imaginary_residue,
            tol: tol.imaginary,
        });
    }
    let o1 = o1c.map(|z| z.re);
    let o2 = q.transpose();
    let eye = DMatrix::<f64>::identity(n, n);
    let orthogonality_error = (o1.transpose() * &o1 - &eye).norm().max((o2.transpose() * &o2 - &eye).norm());
    let mut result = DecompositionResult {
        o1,
        o2,
        thetas,
        reconstruction_error: 0.0,
        orthogonality_error,
        imaginary_residue,
    };
    result.reconstruction_error = (u - result.reconstruct()).norm();
    if !(result.orthogonality_error <= tol.orthogonality) {
        return Err(Error::ResidueCheck {
            what: "orthogonality",
            value: result.orthogonality_error,
            tol: tol.orthogonality,
        });
    }
    if !(result.reconstruction_error <= tol.reconstruction) {
        return Err(Error::ResidueCheck {
            what: "reconstruction",
            value: result.reconstruction_error,
            tol: tol.reconstruction,
        });
    }
    Ok(result)
}
