//! Dense complex linear algebra shared by the quantum-side modules.
//!
//! Everything here is deliberately small and dense: the largest matrices
//! handled are 64×64 three-site operators. Large ring Hamiltonians are never
//! materialized; they live behind the matrix-free machinery in
//! [`crate::quantum`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Default tolerance for validity checks (Hermiticity, trace, positivity).
pub const VALIDITY_TOL: f64 = 1e-10;

/// Default relative tolerance for eigendecomposition reconstruction.
pub const RECONSTRUCTION_TOL: f64 = 1e-9;

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Build from a row-major slice of entries.
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    /// Build from row-major real entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::from_entries(
            rows,
            cols,
            entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&e| e * c).collect(),
        }
    }

    pub fn scale_re(&self, c: f64) -> Self {
        self.scale(Complex64::new(c, 0.0))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale_re(-1.0))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    /// Kronecker product; dimensions multiply.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest absolute deviation from Hermiticity.
    pub fn hermiticity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                let d = (self[(i, j)] - self[(j, i)].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    /// Largest absolute imaginary part over all entries.
    pub fn max_imag(&self) -> f64 {
        self.entries.iter().fold(0.0f64, |m, e| m.max(e.im.abs()))
    }

    /// tr(self · other), both square of equal dimension.
    pub fn trace_product(&self, other: &Self) -> Complex64 {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.rows, other.cols);
        let mut t = Complex64::new(0.0, 0.0);
        for i in 0..self.rows {
            for k in 0..self.cols {
                t += self[(i, k)] * other[(k, i)];
            }
        }
        t
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.cols + j]
    }
}

/// Pauli operator label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pauli {
    Identity,
    X,
    Y,
    Z,
}

/// The standard 2×2 Pauli matrix (or the identity).
pub fn pauli(p: Pauli) -> ComplexMatrix {
    let (a, b, c, d) = match p {
        Pauli::Identity => (
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        ),
        Pauli::X => (
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        ),
        Pauli::Y => (
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 0.0),
        ),
        Pauli::Z => (
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(-1.0, 0.0),
        ),
    };
    ComplexMatrix::from_entries(2, 2, vec![a, b, c, d]).unwrap()
}

/// σ_i ⊗ σ_j on two qubits.
pub fn pauli_pair(i: Pauli, j: Pauli) -> ComplexMatrix {
    pauli(i).kron(&pauli(j))
}

/// Hermitian eigendecomposition by cyclic Jacobi rotations.
///
/// Returns eigenvalues in ascending order and the matching eigenvectors as
/// the columns of a unitary matrix. Deterministic for identical input.
pub fn herm_eig(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    herm_eig_with_tol(m, VALIDITY_TOL)
}

/// [`herm_eig`] with an explicit Hermiticity tolerance.
pub fn herm_eig_with_tol(m: &ComplexMatrix, tol: f64) -> Result<(Vec<f64>, ComplexMatrix)> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "herm_eig needs a square matrix, got {}x{}",
            m.rows, m.cols
        )));
    }
    let defect = m.hermiticity_defect();
    if defect > tol {
        return Err(Error::NotHermitian { deviation: defect, tol });
    }

    let n = m.rows;
    let mut a = m.clone();
    // Symmetrize exactly so rounding in the input cannot bias the sweeps.
    for i in 0..n {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let avg = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n);

    let fro = a.frobenius_norm().max(f64::MIN_POSITIVE);
    let off_tol = 1e-14 * fro;

    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= off_tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag <= off_tol / (n as f64) {
                    continue;
                }
                // Phase that makes the off-diagonal entry real, then a real
                // Jacobi rotation that zeroes it.
                let phase = apq / mag;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Column update: columns p,q of A and V multiply by
                //   U = [[c, -s*phase], [s*conj(phase), c]]  (acting on (p,q)).
                let (cc, sc) = (Complex64::new(c, 0.0), Complex64::new(s, 0.0));
                let u_pp = cc;
                let u_pq = -sc * phase;
                let u_qp = sc * phase.conj();
                let u_qq = cc;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * u_pp + akq * u_qp;
                    a[(k, q)] = akp * u_pq + akq * u_qq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
                    a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * u_pp + vkq * u_qp;
                    v[(k, q)] = vkp * u_pq + vkq * u_qq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap());

    let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok((eigenvalues, eigenvectors))
}

/// Largest singular value.
pub fn spectral_norm(m: &ComplexMatrix) -> f64 {
    // Singular values of m are the square roots of the eigenvalues of m†m,
    // which is Hermitian PSD by construction.
    let gram = m.dagger().matmul(m);
    let (eigs, _) = herm_eig_with_tol(&gram, 1e-8 * gram.frobenius_norm().max(1.0))
        .expect("gram matrix is Hermitian by construction");
    eigs.last().copied().unwrap_or(0.0).max(0.0).sqrt()
}

/// Three-component Bloch vector with ‖v‖ ≤ 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochVector {
    pub v: [f64; 3],
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if norm > 1.0 + VALIDITY_TOL {
            return Err(Error::BlochNormExceeded { norm });
        }
        Ok(Self { v: [x, y, z] })
    }

    pub fn norm(&self) -> f64 {
        self.v.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

/// The single-qubit state ½(𝕀 + v·σ).
pub fn bloch_state(v: BlochVector) -> DensityMatrix {
    let mut m = pauli(Pauli::Identity);
    for (comp, p) in v.v.iter().zip([Pauli::X, Pauli::Y, Pauli::Z]) {
        m = m.add(&pauli(p).scale_re(*comp));
    }
    DensityMatrix::new(m.scale_re(0.5), vec![2]).expect("Bloch construction is always valid")
}

/// Hermitian, PSD, trace-one matrix on a tensor product of sites.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    site_dims: Vec<usize>,
}

impl DensityMatrix {
    /// Validates Hermiticity, positivity and unit trace within [`VALIDITY_TOL`].
    pub fn new(matrix: ComplexMatrix, site_dims: Vec<usize>) -> Result<Self> {
        Self::new_with_tol(matrix, site_dims, VALIDITY_TOL)
    }

    pub fn new_with_tol(matrix: ComplexMatrix, site_dims: Vec<usize>, tol: f64) -> Result<Self> {
        let dim: usize = site_dims.iter().product();
        if !matrix.is_square() || matrix.rows() != dim {
            return Err(Error::InvalidDensityMatrix(format!(
                "matrix is {}x{} but site dims {:?} give dimension {dim}",
                matrix.rows(),
                matrix.cols(),
                site_dims
            )));
        }
        let defect = matrix.hermiticity_defect();
        if defect > tol {
            return Err(Error::NotHermitian { deviation: defect, tol });
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > tol || tr.im.abs() > tol {
            return Err(Error::InvalidDensityMatrix(format!(
                "trace is {tr} instead of 1"
            )));
        }
        let (eigs, _) = herm_eig_with_tol(&matrix, tol)?;
        if let Some(&min) = eigs.first() {
            if min < -tol {
                return Err(Error::InvalidDensityMatrix(format!(
                    "minimum eigenvalue {min:.3e} is negative"
                )));
            }
        }
        Ok(Self { matrix, site_dims })
    }

    /// Unvalidated constructor for intermediate accumulation steps.
    pub(crate) fn raw(matrix: ComplexMatrix, site_dims: Vec<usize>) -> Self {
        Self { matrix, site_dims }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn site_dims(&self) -> &[usize] {
        &self.site_dims
    }

    pub fn sites(&self) -> usize {
        self.site_dims.len()
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        herm_eig(&self.matrix).expect("validated at construction").0
    }

    /// Re tr(ρ·op).
    pub fn expectation(&self, op: &ComplexMatrix) -> f64 {
        self.matrix.trace_product(op).re
    }

    /// ρ_A ⊗ ρ_B.
    pub fn kron(&self, other: &Self) -> Self {
        let mut dims = self.site_dims.clone();
        dims.extend_from_slice(&other.site_dims);
        Self {
            matrix: self.matrix.kron(&other.matrix),
            site_dims: dims,
        }
    }

    /// Convex combination λ·self + (1−λ)·other (same site dims).
    pub fn mix(&self, other: &Self, lambda: f64) -> Result<Self> {
        if self.site_dims != other.site_dims {
            return Err(Error::DimensionMismatch(
                "mixing states with different site dimensions".into(),
            ));
        }
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::OutOfRange(format!("mixing weight {lambda} not in [0,1]")));
        }
        Ok(Self {
            matrix: self
                .matrix
                .scale_re(lambda)
                .add(&other.matrix.scale_re(1.0 - lambda)),
            site_dims: self.site_dims.clone(),
        })
    }

    /// Transpose the indexed tensor factor.
    pub fn partial_transpose(&self, site: usize) -> Result<ComplexMatrix> {
        if site >= self.site_dims.len() {
            return Err(Error::InvalidSite {
                site,
                sites: self.site_dims.len(),
            });
        }
        let dims = &self.site_dims;
        let dim = self.dim();
        let mut out = ComplexMatrix::zeros(dim, dim);
        let mut ridx = vec![0usize; dims.len()];
        for r in 0..dim {
            decompose_index(r, dims, &mut ridx);
            let mut cidx = vec![0usize; dims.len()];
            for c in 0..dim {
                decompose_index(c, dims, &mut cidx);
                // swap the site-th component between row and column
                let mut ri = ridx.clone();
                let mut ci = cidx.clone();
                std::mem::swap(&mut ri[site], &mut ci[site]);
                out[(compose_index(&ri, dims), compose_index(&ci, dims))] = self.matrix[(r, c)];
            }
        }
        Ok(out)
    }

    /// Reduced state on the given (strictly increasing) site indices.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let sites = self.site_dims.len();
        if keep.windows(2).any(|w| w[0] >= w[1]) || keep.iter().any(|&k| k >= sites) {
            return Err(Error::InvalidSite {
                site: *keep.iter().max().unwrap_or(&0),
                sites,
            });
        }
        let keep_dims: Vec<usize> = keep.iter().map(|&k| self.site_dims[k]).collect();
        let out_dim: usize = keep_dims.iter().product();
        let traced: Vec<usize> = (0..sites).filter(|s| !keep.contains(s)).collect();
        let traced_dims: Vec<usize> = traced.iter().map(|&s| self.site_dims[s]).collect();
        let traced_total: usize = traced_dims.iter().product();

        let mut out = ComplexMatrix::zeros(out_dim, out_dim);
        let mut kr = vec![0usize; keep.len()];
        let mut kc = vec![0usize; keep.len()];
        let mut tv = vec![0usize; traced.len()];
        let mut full_r = vec![0usize; sites];
        let mut full_c = vec![0usize; sites];
        for r in 0..out_dim {
            decompose_index(r, &keep_dims, &mut kr);
            for c in 0..out_dim {
                decompose_index(c, &keep_dims, &mut kc);
                let mut acc = Complex64::new(0.0, 0.0);
                for t in 0..traced_total {
                    decompose_index(t, &traced_dims, &mut tv);
                    for (slot, &site) in keep.iter().enumerate() {
                        full_r[site] = kr[slot];
                        full_c[site] = kc[slot];
                    }
                    for (slot, &site) in traced.iter().enumerate() {
                        full_r[site] = tv[slot];
                        full_c[site] = tv[slot];
                    }
                    acc += self.matrix[(
                        compose_index(&full_r, &self.site_dims),
                        compose_index(&full_c, &self.site_dims),
                    )];
                }
                out[(r, c)] = acc;
            }
        }
        // Partial traces of valid states are valid; allow a small slack for
        // accumulated rounding.
        DensityMatrix::new_with_tol(out, keep_dims, 1e-8)
    }
}

/// Big-endian mixed-radix decomposition of `index` into `out`.
fn decompose_index(index: usize, dims: &[usize], out: &mut [usize]) {
    let mut rem = index;
    for k in (0..dims.len()).rev() {
        out[k] = rem % dims[k];
        rem /= dims[k];
    }
}

fn compose_index(idx: &[usize], dims: &[usize]) -> usize {
    let mut v = 0usize;
    for (i, d) in idx.iter().zip(dims) {
        v = v * d + i;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pauli_conventions() {
        assert_eq!(pauli(Pauli::Identity), ComplexMatrix::identity(2));
        let z = pauli(Pauli::Z);
        assert_eq!(z[(0, 0)], c(1.0, 0.0));
        assert_eq!(z[(1, 1)], c(-1.0, 0.0));
        let y = pauli(Pauli::Y);
        assert_eq!(y[(0, 1)], c(0.0, -1.0));
        assert_eq!(y[(1, 0)], c(0.0, 1.0));
    }

    #[test]
    fn kron_basics() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(i2.kron(&i2), ComplexMatrix::identity(4));
        let zz = pauli_pair(Pauli::Z, Pauli::Z);
        for (k, expect) in [1.0, -1.0, -1.0, 1.0].into_iter().enumerate() {
            assert_eq!(zz[(k, k)], c(expect, 0.0));
        }
    }

    #[test]
    fn kron_mixed_product_rule() {
        // (a⊗b)(c⊗d) = (ac)⊗(bd) for fixed pseudo-random 2x2 inputs.
        let mk = |seed: u64| {
            ComplexMatrix::from_fn(2, 2, |i, j| {
                let x = ((seed + 1) as f64 * 0.37 + i as f64 * 1.3 + j as f64 * 2.7).sin();
                let y = ((seed + 2) as f64 * 0.91 + i as f64 * 0.4 + j as f64 * 1.1).cos();
                c(x, y)
            })
        };
        let (a, b, cc, d) = (mk(0), mk(1), mk(2), mk(3));
        let lhs = a.kron(&b).matmul(&cc.kron(&d));
        let rhs = a.matmul(&cc).kron(&b.matmul(&d));
        assert!(lhs.sub(&rhs).frobenius_norm() < 1e-12);
    }

    #[test]
    fn herm_eig_sigma_x() {
        let (eigs, _) = herm_eig(&pauli(Pauli::X)).unwrap();
        assert!((eigs[0] + 1.0).abs() < 1e-12);
        assert!((eigs[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn herm_eig_reconstruction_random_8x8() {
        let n = 8;
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let re = ((i * 7 + j * 3 + 1) as f64 * 0.7311).sin();
                let im = ((i * 5 + j * 11 + 2) as f64 * 0.4177).cos();
                m[(i, j)] = c(re, im);
            }
        }
        let h = m.add(&m.dagger()).scale_re(0.5);
        let (eigs, vecs) = herm_eig(&h).unwrap();

        // sum of eigenvalues equals trace
        let sum: f64 = eigs.iter().sum();
        assert!((sum - h.trace().re).abs() < 1e-9);

        // reconstruction V Λ V†
        let mut lambda = ComplexMatrix::zeros(n, n);
        for (i, &e) in eigs.iter().enumerate() {
            lambda[(i, i)] = c(e, 0.0);
        }
        let rec = vecs.matmul(&lambda).matmul(&vecs.dagger());
        assert!(rec.sub(&h).frobenius_norm() <= 1e-9 * h.frobenius_norm());

        // V unitary
        let gram = vecs.dagger().matmul(&vecs);
        assert!(gram.sub(&ComplexMatrix::identity(n)).frobenius_norm() < 1e-10);
    }

    #[test]
    fn herm_eig_rejects_non_hermitian() {
        let mut m = ComplexMatrix::identity(2);
        m[(0, 1)] = c(1.0, 0.0);
        assert!(matches!(herm_eig(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn spectral_norm_basics() {
        assert!((spectral_norm(&ComplexMatrix::identity(3)) - 1.0).abs() < 1e-10);
        assert!((spectral_norm(&pauli(Pauli::Z).scale_re(2.0)) - 2.0).abs() < 1e-10);
    }

    #[test]
    fn spectral_norm_from_svd_synthesis() {
        // Build u * diag(3,1) * v† from two rotations; largest singular value 3.
        let rot = |t: f64| {
            ComplexMatrix::from_real(2, 2, &[t.cos(), -t.sin(), t.sin(), t.cos()]).unwrap()
        };
        let u = rot(0.7);
        let v = rot(-1.2);
        let s = ComplexMatrix::from_real(2, 2, &[3.0, 0.0, 0.0, 1.0]).unwrap();
        let m = u.matmul(&s).matmul(&v.dagger());
        assert!((spectral_norm(&m) - 3.0).abs() < 1e-9);
    }

    #[test]
    fn spectral_norm_matches_eig_for_hermitian() {
        let h = pauli_pair(Pauli::Y, Pauli::X)
            .scale_re(0.7)
            .add(&pauli_pair(Pauli::Z, Pauli::Z).scale_re(-1.4));
        let (eigs, _) = herm_eig(&h).unwrap();
        let max_abs = eigs.iter().fold(0.0f64, |m, e| m.max(e.abs()));
        assert!((spectral_norm(&h) - max_abs).abs() < 1e-9);
    }

    #[test]
    fn bloch_states() {
        let maximally_mixed = bloch_state(BlochVector::new(0.0, 0.0, 0.0).unwrap());
        assert!(maximally_mixed
            .matrix()
            .sub(&ComplexMatrix::identity(2).scale_re(0.5))
            .frobenius_norm()
            .abs()
            < 1e-15);

        let up = bloch_state(BlochVector::new(0.0, 0.0, 1.0).unwrap());
        assert!((up.matrix()[(0, 0)].re - 1.0).abs() < 1e-15);
        assert!(up.matrix()[(1, 1)].norm() < 1e-15);

        let s = 1.0 / 2.0f64.sqrt();
        let xy = bloch_state(BlochVector::new(s, s, 0.0).unwrap());
        assert!((xy.expectation(&pauli(Pauli::X)) - s).abs() < 1e-12);
        assert!((xy.expectation(&pauli(Pauli::Y)) - s).abs() < 1e-12);
    }

    #[test]
    fn bloch_eigenvalues_from_norm() {
        for &(x, y, z) in &[(0.3, -0.2, 0.4), (0.0, 0.9, 0.1), (1.0, 0.0, 0.0)] {
            let v = BlochVector::new(x, y, z).unwrap();
            let rho = bloch_state(v);
            let eigs = rho.eigenvalues();
            let r = v.norm();
            assert!((eigs[0] - (1.0 - r) / 2.0).abs() < 1e-12);
            assert!((eigs[1] - (1.0 + r) / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn bloch_rejects_long_vectors() {
        assert!(BlochVector::new(1.0, 0.5, 0.0).is_err());
    }

    #[test]
    fn partial_transpose_product_state() {
        let a = bloch_state(BlochVector::new(0.2, 0.3, -0.1).unwrap());
        let b = bloch_state(BlochVector::new(-0.5, 0.1, 0.7).unwrap());
        let prod = a.kron(&b);
        let pt = prod.partial_transpose(1).unwrap();
        let expect = a.matrix().kron(&b.matrix().transpose());
        assert!(pt.sub(&expect).frobenius_norm() < 1e-12);

        // applying it twice is the identity map
        let again = DensityMatrix::new(pt, vec![2, 2]).unwrap();
        let back = again.partial_transpose(1).unwrap();
        assert!(back.sub(prod.matrix()).frobenius_norm() < 1e-13);
    }

    #[test]
    fn partial_transpose_maximally_entangled() {
        // |φ+><φ+| on two qubits; min eigenvalue of the partial transpose is -1/2.
        let mut m = ComplexMatrix::zeros(4, 4);
        for (i, j) in [(0usize, 0usize), (0, 3), (3, 0), (3, 3)] {
            m[(i, j)] = c(0.5, 0.0);
        }
        let rho = DensityMatrix::new(m, vec![2, 2]).unwrap();
        let pt = rho.partial_transpose(1).unwrap();
        let (eigs, _) = herm_eig(&pt).unwrap();
        assert!((eigs[0] + 0.5).abs() < 1e-12);
    }

    #[test]
    fn partial_transpose_preserves_trace_and_hermiticity() {
        let a = bloch_state(BlochVector::new(0.4, 0.1, 0.2).unwrap());
        let b = bloch_state(BlochVector::new(0.0, -0.6, 0.3).unwrap());
        let mixed = a.kron(&b).mix(&b.kron(&a), 0.35).unwrap();
        for site in 0..2 {
            let pt = mixed.partial_transpose(site).unwrap();
            assert!((pt.trace().re - 1.0).abs() < 1e-12);
            assert!(pt.hermiticity_defect() < 1e-12);
        }
    }

    #[test]
    fn partial_trace_of_product() {
        let a = bloch_state(BlochVector::new(0.2, 0.3, -0.1).unwrap());
        let b = bloch_state(BlochVector::new(-0.5, 0.1, 0.7).unwrap());
        let prod = a.kron(&b);
        let ra = prod.partial_trace(&[0]).unwrap();
        let rb = prod.partial_trace(&[1]).unwrap();
        assert!(ra.matrix().sub(a.matrix()).frobenius_norm() < 1e-12);
        assert!(rb.matrix().sub(b.matrix()).frobenius_norm() < 1e-12);
    }

    #[test]
    fn invalid_density_matrices_rejected() {
        // wrong trace
        let m = ComplexMatrix::identity(2);
        assert!(DensityMatrix::new(m, vec![2]).is_err());
        // negative eigenvalue
        let m = ComplexMatrix::from_real(2, 2, &[1.5, 0.0, 0.0, -0.5]).unwrap();
        assert!(DensityMatrix::new(m, vec![2]).is_err());
    }
}
