//! Eigendecomposition of graph Laplacians and the principal square root.
//!
//! `L = P Λ P⁻¹` with eigenvalues sorted ascending, `Ω = √Λ` and
//! `℧ = diag(0, 1/ω₁, …)` (zero wherever `ω = 0`).
//!
//! Symmetric Laplacians go through a symmetric eigensolver and get an
//! orthogonal `P`. Everything else is handled by computing eigenvalues from a
//! real Schur form and eigenvectors as null spaces of `L - λI` (via SVD),
//! which also exposes defective matrices. Complex spectra are rejected: the
//! closed-form propagators downstream assume real nonnegative `λ`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerances; each is multiplied by `‖L‖_max` (and `n` for the
/// reconstruction bound) before use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SpectralConfig {
    pub zero_rel: f64,
    pub complex_rel: f64,
    pub cond_max: f64,
    pub reconstruct_rel: f64,
    pub pattern_rel: f64,
}

impl Default for SpectralConfig {
    fn default() -> Self {
        Self {
            zero_rel: 1e-9,
            complex_rel: 1e-9,
            cond_max: 1e12,
            reconstruct_rel: 1e-8,
            pattern_rel: 1e-8,
        }
    }
}

// eigenvalues closer than this (relative) are treated as one repeated eigenvalue
const CLUSTER_REL: f64 = 1e-7;
// a repeated eigenvalue of multiplicity m must leave m singular values of L - λI below this
const NULLITY_REL: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    /// Eigenvectors as columns, unit 2-norm.
    pub p: DMatrix<f64>,
    pub p_inv: DMatrix<f64>,
    /// Ascending; entries within `zero_tol` of zero are exactly 0 and `lambda = omega²`.
    pub lambda: DVector<f64>,
    pub omega: DVector<f64>,
    pub mho: DVector<f64>,
    pub zero_tol: f64,
    pub pattern_tol: f64,
    /// True when `P` is orthogonal and `P⁻¹ = Pᵀ`.
    pub orthogonal: bool,
    /// 2-norm condition number of `P`.
    pub condition: f64,
    /// `‖P Λ P⁻¹ − L‖_max`.
    pub reconstruction_error: f64,
    pub laplacian: DMatrix<f64>,
}

impl SpectralDecomposition {
    pub fn n(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_diagonal(&self.lambda)
    }

    pub fn omega_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_diagonal(&self.omega)
    }

    pub fn mho_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_diagonal(&self.mho)
    }

    /// `P diag(values) P⁻¹`.
    pub fn synthesize(&self, values: &DVector<f64>) -> DMatrix<f64> {
        let mut scaled = self.p.clone();
        for (k, mut col) in scaled.column_iter_mut().enumerate() {
            col *= values[k];
        }
        scaled * &self.p_inv
    }

    pub fn reconstruct(&self) -> DMatrix<f64> {
        self.synthesize(&self.lambda)
    }

    pub fn zero_mode_count(&self) -> usize {
        self.lambda.iter().filter(|&&l| l == 0.0).count()
    }

    pub fn max_frequency(&self) -> f64 {
        self.omega.iter().copied().fold(0.0, f64::max)
    }
}

fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}

fn is_exactly_symmetric(m: &DMatrix<f64>) -> bool {
    let n = m.nrows();
    (0..n).all(|i| (i + 1..n).all(|j| m[(i, j)] == m[(j, i)]))
}

/// Flips the sign of each column so its largest-magnitude entry is positive.
fn normalize_columns(p: &mut DMatrix<f64>) {
    for mut col in p.column_iter_mut() {
        let norm = col.norm();
        if norm > 0.0 {
            col /= norm;
        }
        let mut pivot = 0.0_f64;
        for &x in col.iter() {
            if x.abs() > pivot.abs() * (1.0 + 1e-12) {
                pivot = x;
            }
        }
        if pivot < 0.0 {
            col.neg_mut();
        }
    }
}

fn condition_number(p: &DMatrix<f64>) -> f64 {
    let sv = p.clone().singular_values();
    let max = sv.iter().copied().fold(0.0, f64::max);
    let min = sv.iter().copied().fold(f64::INFINITY, f64::min);
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

fn symmetric_eigen(l: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = l.nrows();
    let eig = SymmetricEigen::new(l.clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let p = DMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    (values, p)
}

fn general_eigen(l: &DMatrix<f64>, scale: f64, complex_tol: f64) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let n = l.nrows();
    let raw = l.clone().complex_eigenvalues();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| raw[a].re.total_cmp(&raw[b].re));
    let sorted: Vec<_> = order.iter().map(|&k| raw[k]).collect();

    let cluster_tol = CLUSTER_REL * scale;
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for k in 0..n {
        match clusters.last_mut() {
            Some(c) if (sorted[k] - sorted[*c.last().unwrap()]).norm() <= cluster_tol => c.push(k),
            _ => clusters.push(vec![k]),
        }
    }

    let mut values = Vec::with_capacity(n);
    let mut columns: Vec<DVector<f64>> = Vec::with_capacity(n);
    for cluster in &clusters {
        let m = cluster.len();
        let worst = cluster
            .iter()
            .map(|&k| sorted[k])
            .max_by(|a, b| a.im.abs().total_cmp(&b.im.abs()))
            .unwrap();
        // a lone eigenvalue off the real axis is genuinely complex; a cluster
        // straddling it may be a defective real eigenvalue split by rounding
        if worst.im.abs() > complex_tol && (m == 1 || worst.im.abs() > cluster_tol) {
            return Err(Error::ComplexSpectrum {
                re: worst.re,
                im: worst.im,
                tol: complex_tol,
            });
        }
        let mu = cluster.iter().map(|&k| sorted[k].re).sum::<f64>() / m as f64;
        let shifted = l - DMatrix::identity(n, n) * mu;
        let svd = shifted.svd(false, true);
        let v_t = svd.v_t.expect("requested right singular vectors");
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]));
        let sigma_m = svd.singular_values[idx[m - 1]];
        if sigma_m > NULLITY_REL * scale {
            return Err(Error::NotDiagonalizable(format!(
                "eigenvalue {mu} has algebraic multiplicity {m} but fewer independent eigenvectors \
                 (singular value {sigma_m:e})"
            )));
        }
        for &k in &idx[..m] {
            values.push(mu);
            columns.push(v_t.row(k).transpose());
        }
    }
    Ok((values, DMatrix::from_columns(&columns)))
}

/// Diagonalizes a graph Laplacian.
pub fn decompose(l: &DMatrix<f64>, cfg: &SpectralConfig) -> Result<SpectralDecomposition> {
    let n = l.nrows();
    if l.ncols() != n || n == 0 {
        return Err(Error::DimensionMismatch {
            expected: "non-empty square matrix".into(),
            got: format!("{}x{}", l.nrows(), l.ncols()),
        });
    }
    let norm = max_abs(l);
    let scale = if norm > 0.0 { norm } else { 1.0 };
    let zero_tol = cfg.zero_rel * scale;
    let complex_tol = cfg.complex_rel * scale;

    let orthogonal = is_exactly_symmetric(l);
    let (raw, mut p) = if orthogonal {
        symmetric_eigen(l)
    } else {
        general_eigen(l, scale, complex_tol)?
    };
    normalize_columns(&mut p);

    let condition = condition_number(&p);
    if condition > cfg.cond_max {
        return Err(Error::NotDiagonalizable(format!(
            "eigenvector matrix condition number {condition:e} exceeds {:e}",
            cfg.cond_max
        )));
    }
    let p_inv = if orthogonal {
        p.transpose()
    } else {
        p.clone().try_inverse().ok_or_else(|| {
            Error::NotDiagonalizable("eigenvector matrix is singular".into())
        })?
    };

    let mut omega = DVector::zeros(n);
    for (k, &value) in raw.iter().enumerate() {
        if value < -zero_tol {
            return Err(Error::NegativeEigenvalue { value, tol: zero_tol });
        }
        omega[k] = if value.abs() <= zero_tol { 0.0 } else { value.sqrt() };
    }
    let lambda = omega.map(|w| w * w);
    let mho = omega.map(|w| if w > 0.0 { 1.0 / w } else { 0.0 });

    let mut dec = SpectralDecomposition {
        p,
        p_inv,
        lambda,
        omega,
        mho,
        zero_tol,
        pattern_tol: cfg.pattern_rel * scale,
        orthogonal,
        condition,
        reconstruction_error: 0.0,
        laplacian: l.clone(),
    };
    let residual = max_abs(&(dec.reconstruct() - l));
    let bound = cfg.reconstruct_rel * scale * n as f64;
    if residual > bound {
        return Err(Error::NotDiagonalizable(format!(
            "reconstruction residual {residual:e} exceeds {bound:e}"
        )));
    }
    dec.reconstruction_error = residual;
    Ok(dec)
}

/// Principal square root of a Laplacian together with its sparsity verdict.
#[derive(Debug, Clone)]
pub struct SqrtLaplacian {
    pub matrix: DMatrix<f64>,
    /// True when `√L` has a nonzero (beyond `pattern_tol`) where `L` has an
    /// off-diagonal zero, i.e. it links nodes the graph does not.
    pub pattern_dense: bool,
}

/// `√L = P Ω P⁻¹`.
pub fn sqrt_laplacian(dec: &SpectralDecomposition) -> SqrtLaplacian {
    let matrix = dec.synthesize(&dec.omega);
    let pattern_dense = !pattern_matches(&matrix, &dec.laplacian, dec.pattern_tol)
        .expect("square root has the Laplacian's shape");
    SqrtLaplacian {
        matrix,
        pattern_dense,
    }
}

/// True iff every off-diagonal exact zero of `l` is a zero of `m` within `tol`.
pub fn pattern_matches(m: &DMatrix<f64>, l: &DMatrix<f64>, tol: f64) -> Result<bool> {
    if m.shape() != l.shape() || !l.is_square() {
        return Err(Error::DimensionMismatch {
            expected: format!("{}x{} square", l.nrows(), l.ncols()),
            got: format!("{}x{}", m.nrows(), m.ncols()),
        });
    }
    let n = l.nrows();
    Ok((0..n).all(|i| {
        (0..n).all(|j| i == j || l[(i, j)] != 0.0 || m[(i, j)].abs() <= tol)
    }))
}

/// Off-diagonal support of `m` (entries above `tol`), diagonal always set.
pub fn support(m: &DMatrix<f64>, tol: f64) -> Vec<Vec<bool>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| i == j || m[(i, j)].abs() > tol).collect())
        .collect()
}
