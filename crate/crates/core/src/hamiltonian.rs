//! The 2n×2n Hamiltonian and its 2×2 generator algebra.
//!
//! Kronecker products use the node-major convention: `M ⊗ m` places the 2×2
//! block `M_ij · m` at rows `2i..2i+2`, columns `2j..2j+2`, so node `i`'s
//! `(+, −)` pair sits at state indices `2i, 2i+1`.
//!
//! ```text
//! Ĥ = √D ⊗ σ_z − (√D⁻¹ A) ⊗ â        (direct form)
//!   = H ⊗ â + √D ⊗ b̂                 (factored form)
//!
//! â = ½[[1, 1], [−1, −1]]    b̂ = ½[[1, −1], [1, −1]]
//! {â, b̂} = ê,  â² = b̂² = 0
//! ```
//!
//! Because the generators are nilpotent and anticommute to the identity,
//! powers of `Ĥ` collapse to two Kronecker terms:
//!
//! ```text
//! Ĥ^(2k)   = √D⁻¹ L^k √D ⊗ âb̂ + L^k ⊗ b̂â
//! Ĥ^(2k+1) = H L^k ⊗ â + L^k √D ⊗ b̂
//! ```

use nalgebra::{DMatrix, Matrix2};

use crate::error::Result;
use crate::graph::LaplacianBundle;

pub type Mat2 = Matrix2<f64>;

pub fn a_hat() -> Mat2 {
    Mat2::new(0.5, 0.5, -0.5, -0.5)
}

pub fn b_hat() -> Mat2 {
    Mat2::new(0.5, -0.5, 0.5, -0.5)
}

pub fn e_hat() -> Mat2 {
    Mat2::identity()
}

pub fn sigma_z() -> Mat2 {
    Mat2::new(1.0, 0.0, 0.0, -1.0)
}

/// `{x, y} = xy + yx`.
pub fn anticommutator(x: &Mat2, y: &Mat2) -> Mat2 {
    x * y + y * x
}

/// The five 2×2 matrices that appear in every power of `Ĥ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorAlgebra {
    pub a_hat: Mat2,
    pub b_hat: Mat2,
    pub e_hat: Mat2,
    pub ab: Mat2,
    pub ba: Mat2,
}

impl Default for GeneratorAlgebra {
    fn default() -> Self {
        let (a, b) = (a_hat(), b_hat());
        Self {
            a_hat: a,
            b_hat: b,
            e_hat: e_hat(),
            ab: a * b,
            ba: b * a,
        }
    }
}

/// Result of checking one algebraic identity.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub holds: bool,
    /// Largest absolute entry of `lhs − rhs`.
    pub max_error: f64,
}

impl GeneratorAlgebra {
    /// Evaluates every identity the power expansion relies on, with exact comparison.
    pub fn identities(&self) -> Vec<IdentityCheck> {
        let (a, b, e) = (self.a_hat, self.b_hat, self.e_hat);
        let zero = Mat2::zeros();
        let cases: [(&'static str, Mat2, Mat2); 8] = [
            ("{a,b} = e", anticommutator(&a, &b), e),
            ("a^2 = 0", a * a, zero),
            ("b^2 = 0", b * b, zero),
            ("aba = a", a * b * a, a),
            ("bab = b", b * a * b, b),
            ("(ab)^2 = ab", self.ab * self.ab, self.ab),
            ("(ba)^2 = ba", self.ba * self.ba, self.ba),
            ("ab + ba = e", self.ab + self.ba, e),
        ];
        cases
            .into_iter()
            .map(|(name, lhs, rhs)| IdentityCheck {
                name,
                holds: lhs == rhs,
                max_error: (lhs - rhs).abs().max(),
            })
            .collect()
    }
}

pub fn kron(big: &DMatrix<f64>, small: &Mat2) -> DMatrix<f64> {
    let (r, c) = big.shape();
    DMatrix::from_fn(2 * r, 2 * c, |i, j| big[(i / 2, j / 2)] * small[(i % 2, j % 2)])
}

/// `Ĥ = √D ⊗ σ_z − (√D⁻¹ A) ⊗ â`.
pub fn hamiltonian_direct(bundle: &LaplacianBundle) -> DMatrix<f64> {
    let scaled_adj = bundle.inv_sqrt_degree_matrix() * &bundle.adjacency;
    kron(&bundle.sqrt_degree_matrix(), &sigma_z()) - kron(&scaled_adj, &a_hat())
}

/// `Ĥ = H ⊗ â + √D ⊗ b̂`.
pub fn hamiltonian_factored(bundle: &LaplacianBundle) -> DMatrix<f64> {
    kron(&bundle.semi_normalized, &a_hat()) + kron(&bundle.sqrt_degree_matrix(), &b_hat())
}

/// `n×n` map of which 2×2 blocks of a `2n×2n` matrix have an entry above
/// `tol`. Diagonal blocks are always reported present.
pub fn block_support(m: &DMatrix<f64>, tol: f64) -> Vec<Vec<bool>> {
    let n = m.nrows() / 2;
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    i == j
                        || (0..2).any(|r| (0..2).any(|c| m[(2 * i + r, 2 * j + c)].abs() > tol))
                })
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct Hamiltonian {
    pub matrix: DMatrix<f64>,
    pub block_pattern: Vec<Vec<bool>>,
    /// Largest entry of `direct − factored`, relative to `‖Ĥ‖_max`.
    pub construction_gap: f64,
    pub bundle: LaplacianBundle,
}

impl Hamiltonian {
    pub fn n(&self) -> usize {
        self.bundle.n()
    }

    /// True when the block pattern equals the Laplacian's link pattern plus the diagonal.
    pub fn pattern_matches_laplacian(&self) -> bool {
        self.block_pattern == crate::spectral::support(&self.bundle.laplacian, 0.0)
    }

    /// Block pattern of `Ĥ²` lies inside the pattern of `L²` (plus diagonal):
    /// squaring the Hamiltonian creates no link that two hops of `L` do not.
    pub fn square_pattern_contained(&self) -> bool {
        let h2 = &self.matrix * &self.matrix;
        let tol = 1e-12 * h2.abs().max().max(f64::MIN_POSITIVE);
        let l2 = &self.bundle.laplacian * &self.bundle.laplacian;
        let l2_tol = 1e-12 * l2.abs().max().max(f64::MIN_POSITIVE);
        let inner = block_support(&h2, tol);
        let outer = crate::spectral::support(&l2, l2_tol);
        inner
            .iter()
            .zip(&outer)
            .all(|(ri, ro)| ri.iter().zip(ro).all(|(&i, &o)| !i || o))
    }
}

pub fn build_hamiltonian(bundle: &LaplacianBundle) -> Result<Hamiltonian> {
    let matrix = hamiltonian_direct(bundle);
    let factored = hamiltonian_factored(bundle);
    let scale = matrix.abs().max().max(f64::MIN_POSITIVE);
    let construction_gap = (&matrix - factored).abs().max() / scale;
    let block_pattern = block_support(&matrix, 0.0);
    Ok(Hamiltonian {
        matrix,
        block_pattern,
        construction_gap,
        bundle: bundle.clone(),
    })
}

fn matrix_power(m: &DMatrix<f64>, mut k: u32) -> DMatrix<f64> {
    let mut result = DMatrix::identity(m.nrows(), m.ncols());
    let mut base = m.clone();
    while k > 0 {
        if k & 1 == 1 {
            result = &result * &base;
        }
        k >>= 1;
        if k > 0 {
            base = &base * &base;
        }
    }
    result
}

/// `Ĥ^m` from the two-term closed form; only `n×n` powers of `L` are formed.
pub fn hamiltonian_power(bundle: &LaplacianBundle, m: u32) -> DMatrix<f64> {
    let alg = GeneratorAlgebra::default();
    let l_k = matrix_power(&bundle.laplacian, m / 2);
    if m % 2 == 0 {
        let left = bundle.inv_sqrt_degree_matrix() * &l_k * bundle.sqrt_degree_matrix();
        kron(&left, &alg.ab) + kron(&l_k, &alg.ba)
    } else {
        let left = &bundle.semi_normalized * &l_k;
        let right = &l_k * bundle.sqrt_degree_matrix();
        kron(&left, &alg.a_hat) + kron(&right, &alg.b_hat)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, generators, laplacian_bundle, WeightedDigraph};

    fn naive_power(h: &DMatrix<f64>, m: u32) -> DMatrix<f64> {
        (0..m).fold(DMatrix::identity(h.nrows(), h.ncols()), |acc, _| acc * h)
    }

    #[test]
    fn generator_entries() {
        let alg = GeneratorAlgebra::default();
        assert_eq!(alg.ab, Mat2::new(0.5, -0.5, -0.5, 0.5));
        assert_eq!(alg.ba, Mat2::new(0.5, 0.5, 0.5, 0.5));
    }

    #[test]
    fn identities_hold_exactly() {
        for check in GeneratorAlgebra::default().identities() {
            assert!(check.holds, "{} off by {}", check.name, check.max_error);
            assert_eq!(check.max_error, 0.0);
        }
    }

    #[test]
    fn anticommutator_examples() {
        assert_eq!(anticommutator(&a_hat(), &b_hat()), e_hat());
        assert_eq!(anticommutator(&a_hat(), &a_hat()), Mat2::zeros());
        assert_eq!(anticommutator(&e_hat(), &e_hat()), 2.0 * e_hat());
    }

    #[test]
    fn kron_layout_is_node_major() {
        let big = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        let k = kron(&big, &sigma_z());
        assert_eq!(k[(0, 0)], 1.0);
        assert_eq!(k[(1, 1)], -1.0);
        assert_eq!(k[(0, 2)], 2.0);
        assert_eq!(k[(3, 3)], -4.0);
        assert_eq!(k[(0, 1)], 0.0);
    }

    #[test]
    fn two_node_hamiltonian() {
        let g = WeightedDigraph::new(2, [(0, 1, 1.0), (1, 0, 1.0)]).unwrap();
        let ham = build_hamiltonian(&laplacian_bundle(&g).unwrap()).unwrap();
        // D = I and A = [[0,1],[1,0]]
        #[rustfmt::skip]
        let want = DMatrix::from_row_slice(4, 4, &[
            1.0,  0.0, -0.5, -0.5,
            0.0, -1.0,  0.5,  0.5,
           -0.5, -0.5,  1.0,  0.0,
            0.5,  0.5,  0.0, -1.0,
        ]);
        assert_eq!(ham.matrix, want);
        assert_eq!(ham.construction_gap, 0.0);
    }

    #[test]
    fn complete_graph_block_pattern() {
        let ham = build_hamiltonian(&laplacian_bundle(&complete_graph(3, 1.0).unwrap()).unwrap()).unwrap();
        assert!(ham.block_pattern.iter().flatten().all(|&b| b));
    }

    #[test]
    fn path_block_pattern_is_tridiagonal() {
        let ham = build_hamiltonian(&laplacian_bundle(&generators::path(4, 1.0).unwrap()).unwrap()).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(ham.block_pattern[i][j], i.abs_diff(j) <= 1);
            }
        }
        assert!(ham.pattern_matches_laplacian());
        assert!(ham.square_pattern_contained());
    }

    #[test]
    fn power_zero_is_identity() {
        let b = laplacian_bundle(&generators::path(4, 0.7).unwrap()).unwrap();
        assert_eq!(hamiltonian_power(&b, 0), DMatrix::identity(8, 8));
    }

    #[test]
    fn cube_on_pair_matches_product() {
        let g = WeightedDigraph::new(2, [(0, 1, 1.0), (1, 0, 1.0)]).unwrap();
        let b = laplacian_bundle(&g).unwrap();
        let h = build_hamiltonian(&b).unwrap().matrix;
        let naive = &h * &h * &h;
        assert!((hamiltonian_power(&b, 3) - naive).abs().max() < 1e-14);
    }

    #[test]
    fn square_on_k3_matches_product() {
        let b = laplacian_bundle(&complete_graph(3, 1.0).unwrap()).unwrap();
        let h = build_hamiltonian(&b).unwrap().matrix;
        assert!((hamiltonian_power(&b, 2) - &h * &h).abs().max() < 1e-14);
    }

    #[test]
    fn powers_on_directed_graph() {
        let g = WeightedDigraph::new(
            4,
            [(0, 1, 2.0), (1, 2, 0.3), (2, 0, 1.1), (3, 0, 0.9), (0, 3, 0.2), (2, 3, 1.7)],
        )
        .unwrap();
        let b = laplacian_bundle(&g).unwrap();
        let h = build_hamiltonian(&b).unwrap().matrix;
        for m in 0..=7 {
            let naive = naive_power(&h, m);
            let rel = (hamiltonian_power(&b, m) - &naive).abs().max() / naive.abs().max();
            assert!(rel < 1e-12, "m = {m}: {rel}");
        }
    }
}
