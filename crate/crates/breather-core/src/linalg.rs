//! Thin LAPACK/BLAS wrappers for the symmetric eigenproblems and the dense
//! products the modal layer needs. All matrices here are real; banded
//! symmetric matrices are stored as (diagonal, superdiagonal) pairs since
//! every form assembled from piecewise-linear elements is tridiagonal.

use ndarray::{Array1, Array2};
use thiserror::Error;

// Link against the system OpenBLAS for the `lapack`/`blas` FFI symbols.
use openblas_src as _;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("LAPACK {routine} failed with info = {info}")]
    LapackInfo { routine: &'static str, info: i32 },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// Symmetric tridiagonal matrix: main diagonal and superdiagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiag {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

impl Tridiag {
    pub fn zeros(n: usize) -> Tridiag {
        Tridiag { diag: vec![0.0; n], offdiag: vec![0.0; n.saturating_sub(1)] }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// y = T x.
    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.len();
        assert_eq!(x.len(), n);
        let mut y = vec![0.0; n];
        for i in 0..n {
            y[i] = self.diag[i] * x[i];
            if i > 0 {
                y[i] += self.offdiag[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                y[i] += self.offdiag[i] * x[i + 1];
            }
        }
        y
    }

    /// xᵀ T y.
    pub fn quadratic(&self, x: &[f64], y: &[f64]) -> f64 {
        self.matvec(y).iter().zip(x).map(|(ty, xi)| ty * xi).sum()
    }

    pub fn to_dense(&self) -> Array2<f64> {
        let n = self.len();
        let mut a = Array2::zeros((n, n));
        for i in 0..n {
            a[(i, i)] = self.diag[i];
            if i + 1 < n {
                a[(i, i + 1)] = self.offdiag[i];
                a[(i + 1, i)] = self.offdiag[i];
            }
        }
        a
    }

    /// a*X + self, elementwise on the band.
    pub fn scaled_add(&mut self, a: f64, x: &Tridiag) {
        assert_eq!(self.len(), x.len());
        for (d, xd) in self.diag.iter_mut().zip(&x.diag) {
            *d += a * xd;
        }
        for (e, xe) in self.offdiag.iter_mut().zip(&x.offdiag) {
            *e += a * xe;
        }
    }
}

/// Cholesky factorization of a symmetric positive definite tridiagonal
/// matrix (LDLᵀ via LAPACK dpttrf), reusable for repeated solves.
pub struct TridiagCholesky {
    d: Vec<f64>,
    e: Vec<f64>,
}

impl TridiagCholesky {
    pub fn new(t: &Tridiag) -> Result<TridiagCholesky, LinalgError> {
        let n = t.len() as i32;
        let mut d = t.diag.clone();
        let mut e = t.offdiag.clone();
        let mut info = 0;
        unsafe { lapack::dpttrf(n, &mut d, &mut e, &mut info) };
        if info != 0 {
            return Err(LinalgError::LapackInfo { routine: "dpttrf", info });
        }
        Ok(TridiagCholesky { d, e })
    }

    /// Solves T x = b in place.
    pub fn solve_in_place(&self, b: &mut [f64]) {
        let n = self.d.len() as i32;
        assert_eq!(b.len(), self.d.len());
        let mut info = 0;
        unsafe { lapack::dpttrs(n, 1, &self.d, &self.e, b, n, &mut info) };
        debug_assert_eq!(info, 0);
    }
}

/// All eigenpairs of the generalized symmetric-definite tridiagonal pencil
/// A x = λ B x with B positive definite, via the banded solver dsbgvd.
/// Eigenvalues ascend; eigenvector columns satisfy ZᵀBZ = I.
pub fn tridiag_generalized_eigh(
    a: &Tridiag,
    b: &Tridiag,
) -> Result<(Vec<f64>, Array2<f64>), LinalgError> {
    let n = a.len();
    if b.len() != n {
        return Err(LinalgError::Dimension(format!("A is {n}, B is {}", b.len())));
    }
    let ni = n as i32;
    let (ka, kb) = (1i32, 1i32);
    let (ldab, ldbb) = (ka + 1, kb + 1);
    // Banded upper storage, column-major: entry (i,j) at ab[ka + i - j + j*ldab].
    let mut ab = vec![0.0f64; (ldab as usize) * n];
    let mut bb = vec![0.0f64; (ldbb as usize) * n];
    for j in 0..n {
        ab[1 + j * ldab as usize] = a.diag[j];
        bb[1 + j * ldbb as usize] = b.diag[j];
        if j > 0 {
            ab[j * ldab as usize] = a.offdiag[j - 1];
            bb[j * ldbb as usize] = b.offdiag[j - 1];
        }
    }
    let mut w = vec![0.0f64; n];
    let mut z = vec![0.0f64; n * n];
    let lwork = (1 + 5 * n + 2 * n * n).max(16);
    let liwork = (3 + 5 * n).max(16);
    let mut work = vec![0.0f64; lwork];
    let mut iwork = vec![0i32; liwork];
    let mut info = 0;
    unsafe {
        lapack::dsbgvd(
            b'V', b'U', ni, ka, kb, &mut ab, ldab, &mut bb, ldbb, &mut w, &mut z, ni, &mut work,
            lwork as i32, &mut iwork, liwork as i32, &mut info,
        );
    }
    if info != 0 {
        return Err(LinalgError::LapackInfo { routine: "dsbgvd", info });
    }
    // z is column-major; ndarray from shape with Fortran order then own a
    // standard-layout copy so later slicing is cheap.
    let zf = Array2::from_shape_vec((n, n).f(), z)
        .map_err(|e| LinalgError::Dimension(e.to_string()))?;
    let mut zc = Array2::zeros((n, n));
    zc.assign(&zf);
    Ok((w, zc))
}

use ndarray::ShapeBuilder;

/// All eigenpairs of the dense generalized symmetric-definite problem
/// A x = λ B x (B positive definite) via dsygvd. Eigenvalues ascend;
/// eigenvectors are B-orthonormal columns.
pub fn dense_generalized_eigh(
    a: &Array2<f64>,
    b: &Array2<f64>,
) -> Result<(Vec<f64>, Array2<f64>), LinalgError> {
    let n = a.nrows();
    if a.ncols() != n || b.nrows() != n || b.ncols() != n {
        return Err(LinalgError::Dimension("square matrices of equal size required".into()));
    }
    let ni = n as i32;
    // Symmetric input: row-major buffer doubles as column-major.
    let mut af: Vec<f64> = a.iter().cloned().collect();
    let mut bf: Vec<f64> = b.iter().cloned().collect();
    let mut w = vec![0.0f64; n];
    let lwork = (1 + 6 * n + 2 * n * n).max(32);
    let liwork = (3 + 5 * n).max(16);
    let mut work = vec![0.0f64; lwork];
    let mut iwork = vec![0i32; liwork];
    let mut info = 0;
    unsafe {
        lapack::dsygvd(
            1, b'V', b'U', ni, &mut af, ni, &mut bf, ni, &mut w, &mut work, lwork as i32,
            &mut iwork, liwork as i32, &mut info,
        );
    }
    if info != 0 {
        return Err(LinalgError::LapackInfo { routine: "dsygvd", info });
    }
    let zf = Array2::from_shape_vec((n, n).f(), af)
        .map_err(|e| LinalgError::Dimension(e.to_string()))?;
    let mut zc = Array2::zeros((n, n));
    zc.assign(&zf);
    Ok((w, zc))
}

/// y = Aᵀ x for a standard-layout matrix, via dgemv. A row-major (m, n)
/// buffer is a column-major (n, m) matrix, so the transposed product is the
/// no-transpose Fortran call.
pub fn matvec_t(a: &Array2<f64>, x: &[f64]) -> Vec<f64> {
    let (m, n) = a.dim();
    assert_eq!(x.len(), m);
    let sa = a.as_slice().expect("matrix must be standard layout");
    let mut y = vec![0.0f64; n];
    unsafe {
        blas::dgemv(
            b'N', n as i32, m as i32, 1.0, sa, n as i32, x, 1, 0.0, &mut y, 1,
        );
    }
    y
}

/// y = A x for a standard-layout matrix, via dgemv with the transpose flag.
pub fn matvec(a: &Array2<f64>, x: &[f64]) -> Vec<f64> {
    let (m, n) = a.dim();
    assert_eq!(x.len(), n);
    let sa = a.as_slice().expect("matrix must be standard layout");
    let mut y = vec![0.0f64; m];
    unsafe {
        blas::dgemv(
            b'T', n as i32, m as i32, 1.0, sa, n as i32, x, 1, 0.0, &mut y, 1,
        );
    }
    y
}

/// C = A B via dgemm, all standard layout.
pub fn matmul(a: &Array2<f64>, b: &Array2<f64>) -> Array2<f64> {
    let (m, ka) = a.dim();
    let (kb, n) = b.dim();
    assert_eq!(ka, kb);
    let mut c = Array2::<f64>::zeros((m, n));
    // Row-major C = A*B is column-major Cᵀ = Bᵀ Aᵀ with the raw buffers.
    unsafe {
        blas::dgemm(
            b'N',
            b'N',
            n as i32,
            m as i32,
            ka as i32,
            1.0,
            b.as_slice().unwrap(),
            n as i32,
            a.as_slice().unwrap(),
            ka as i32,
            0.0,
            c.as_slice_mut().unwrap(),
            n as i32,
        );
    }
    c
}

/// Sets the OpenBLAS thread count. Called once at startup; the per-mode
/// parallelism of this crate lives in rayon, so BLAS stays single-threaded
/// by default for reproducibility.
pub fn set_blas_threads(n: usize) {
    unsafe extern "C" {
        fn openblas_set_num_threads(n: i32);
    }
    unsafe { openblas_set_num_threads(n.max(1) as i32) };
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn banded_eigh_matches_free_laplacian() {
        // -u'' on (0, 5h) with Dirichlet ends, h = 1: eigenvalues 2-2cos(jπ/5).
        let n = 4;
        let a = Tridiag { diag: vec![2.0; n], offdiag: vec![-1.0; n - 1] };
        let b = Tridiag { diag: vec![1.0; n], offdiag: vec![0.0; n - 1] };
        let (w, z) = tridiag_generalized_eigh(&a, &b).unwrap();
        for (j, wj) in w.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((j + 1) as f64 * std::f64::consts::PI / 5.0).cos();
            assert!((wj - exact).abs() < 1e-12, "j={j}: {wj} vs {exact}");
        }
        // B-orthonormal here means plain orthonormal
        for i in 0..n {
            for j in 0..n {
                let dot: f64 = (0..n).map(|r| z[(r, i)] * z[(r, j)]).sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((dot - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn dense_generalized_matches_banded() {
        let n = 12;
        let mut a = Tridiag::zeros(n);
        let mut b = Tridiag::zeros(n);
        for i in 0..n {
            a.diag[i] = 2.0 + (i as f64 * 0.37).sin();
            b.diag[i] = 1.5 + 0.3 * (i as f64 * 0.21).cos();
        }
        for i in 0..n - 1 {
            a.offdiag[i] = -0.8 + 0.1 * (i as f64);
            b.offdiag[i] = 0.2;
        }
        let (w1, _) = tridiag_generalized_eigh(&a, &b).unwrap();
        let (w2, _) = dense_generalized_eigh(&a.to_dense(), &b.to_dense()).unwrap();
        for (x, y) in w1.iter().zip(&w2) {
            assert!((x - y).abs() < 1e-10 * (1.0 + x.abs()));
        }
    }

    #[test]
    fn tridiag_solve_roundtrip() {
        let n = 30;
        let t = Tridiag {
            diag: vec![2.5; n],
            offdiag: vec![-1.0; n - 1],
        };
        let chol = TridiagCholesky::new(&t).unwrap();
        let x: Vec<f64> = (0..n).map(|i| (i as f64 * 0.11).sin()).collect();
        let mut b = t.matvec(&x);
        chol.solve_in_place(&mut b);
        for (u, v) in b.iter().zip(&x) {
            assert!((u - v).abs() < 1e-12);
        }
    }

    #[test]
    fn blas_products() {
        let a = array![[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]];
        let y = matvec(&a, &[1.0, 1.0, 1.0]);
        assert_eq!(y, vec![6.0, 15.0]);
        let yt = matvec_t(&a, &[1.0, 1.0]);
        assert_eq!(yt, vec![5.0, 7.0, 9.0]);
        let b = array![[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]];
        let c = matmul(&a, &b);
        assert_eq!(c, array![[4.0, 5.0], [10.0, 11.0]]);
    }
}
