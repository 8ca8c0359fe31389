//! Dense kernels shared by the subspace and spectral code.
//!
//! Matrices are stored as nalgebra values; the decompositions run in faer.

use faer::{Mat, MatRef, Side};

use crate::{CMat, Tolerance, C64};

fn to_faer(m: &CMat) -> Mat<C64> {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

fn from_faer(m: MatRef<'_, C64>) -> CMat {
    CMat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

pub(crate) struct ThinSvd {
    pub u: CMat,
    pub s: Vec<f64>,
    /// Right singular vectors as columns (`V`, not `Vᴴ`).
    pub v: CMat,
}

pub(crate) fn svd(m: &CMat) -> ThinSvd {
    let (rows, cols) = m.shape();
    if rows == 0 || cols == 0 {
        return ThinSvd {
            u: CMat::zeros(rows, 0),
            s: Vec::new(),
            v: CMat::zeros(cols, 0),
        };
    }
    let d = to_faer(m).thin_svd().expect("svd converges");
    ThinSvd {
        u: from_faer(d.U()),
        s: d.S().column_vector().iter().map(|z| z.re).collect(),
        v: from_faer(d.V()),
    }
}

pub(crate) fn singular_values(m: &CMat) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    to_faer(m).singular_values().expect("svd converges")
}

pub(crate) fn spectral_norm(m: &CMat) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Number of singular values above the tolerance cutoff for `m`.
pub(crate) fn rank_of(s: &[f64], tol: &Tolerance, rows: usize, cols: usize) -> usize {
    let cut = tol.cutoff(s.first().copied().unwrap_or(0.0), rows, cols);
    s.iter().take_while(|&&x| x > cut).count()
}

/// Orthonormal basis of the orthogonal complement of the column space of an
/// orthonormal `q`; always exactly `n - r` columns.
pub(crate) fn complete(q: &CMat) -> CMat {
    let (n, r) = q.shape();
    if r == 0 {
        return CMat::identity(n, n);
    }
    if r >= n {
        return CMat::zeros(n, 0);
    }
    let proj = CMat::identity(n, n) - q * q.adjoint();
    let d = svd(&proj);
    d.u.columns(0, n - r).into_owned()
}

/// Right null space of `m`, rank decided by the explicit `cutoff`.
pub(crate) fn null_space_with_cutoff(m: &CMat, cutoff: f64) -> CMat {
    let (rows, cols) = m.shape();
    if cols == 0 {
        return CMat::zeros(0, 0);
    }
    if rows == 0 {
        return CMat::identity(cols, cols);
    }
    let d = svd(m);
    let r = d.s.iter().take_while(|&&x| x > cutoff).count();
    complete(&d.v.columns(0, r).into_owned())
}

/// Right null space of `m` under the tolerance rank policy.
pub(crate) fn null_space(m: &CMat, tol: &Tolerance) -> CMat {
    let s = singular_values(m);
    let cut = tol.cutoff(s.first().copied().unwrap_or(0.0), m.nrows(), m.ncols());
    null_space_with_cutoff(m, cut)
}

/// Pseudoinverse with the tolerance rank policy.
pub(crate) fn pinv(m: &CMat, tol: &Tolerance) -> CMat {
    let (rows, cols) = m.shape();
    let d = svd(m);
    let r = rank_of(&d.s, tol, rows, cols);
    let mut out = CMat::zeros(cols, rows);
    for i in 0..r {
        let vi = d.v.column(i);
        let ui = d.u.column(i);
        out += (vi * ui.adjoint()) * C64::new(1.0 / d.s[i], 0.0);
    }
    out
}

/// Eigen-decomposition of the Hermitian part of `m`, eigenvalues ascending.
pub(crate) fn hermitian_eigen(m: &CMat) -> (Vec<f64>, CMat) {
    let n = m.nrows();
    if n == 0 {
        return (Vec::new(), CMat::zeros(0, 0));
    }
    let h = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let e = to_faer(&h).self_adjoint_eigen(Side::Lower).expect("eigensolver converges");
    let vals = e.S().column_vector().iter().map(|z| z.re).collect();
    (vals, from_faer(e.U()))
}

/// Eigenvalues of a general square complex matrix.
pub(crate) fn eigenvalues(m: &CMat) -> Vec<C64> {
    let n = m.nrows();
    match n {
        0 => Vec::new(),
        1 => vec![m[(0, 0)]],
        _ => to_faer(m).eigenvalues().expect("eigensolver converges"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn complete_gives_exact_count() {
        let q = CMat::from_column_slice(3, 1, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let w = complete(&q);
        assert_eq!(w.shape(), (3, 2));
        assert!((q.adjoint() * &w).norm() < 1e-14);
        assert!((w.adjoint() * &w - CMat::identity(2, 2)).norm() < 1e-14);
    }

    #[test]
    fn eigenvalues_of_complex_triangularizable() {
        // [[0, 2], [3, 0]] has eigenvalues ±sqrt(6)
        let m = CMat::from_row_slice(2, 2, &[c(0.0, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(0.0, 0.0)]);
        let mut ev: Vec<f64> = eigenvalues(&m).iter().map(|z| z.re).collect();
        ev.sort_by(f64::total_cmp);
        assert!((ev[0] + 6f64.sqrt()).abs() < 1e-12);
        assert!((ev[1] - 6f64.sqrt()).abs() < 1e-12);
        // rotation generator has eigenvalues ±i
        let r = CMat::from_row_slice(2, 2, &[c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let mut ev = eigenvalues(&r);
        ev.sort_by(|a, b| a.im.total_cmp(&b.im));
        assert!((ev[0] - c(0.0, -1.0)).norm() < 1e-12);
        assert!((ev[1] - c(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn eigenvalues_match_determinant_roots_on_random_complex() {
        use rand::SeedableRng;
        use rand_distr::{Distribution, StandardNormal};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 2..7 {
            let m = CMat::from_fn(n, n, |_, _| {
                c(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng))
            });
            for lam in eigenvalues(&m) {
                let shifted = &m - CMat::identity(n, n) * lam;
                let s = singular_values(&shifted);
                assert!(s[n - 1] < 1e-10 * s[0], "n={n} lam={lam} smin={}", s[n - 1]);
            }
        }
    }

    #[test]
    fn svd_reconstructs_rank_deficient_projector() {
        use rand::SeedableRng;
        use rand_distr::{Distribution, StandardNormal};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for n in 2..7 {
            for r in 0..=n {
                let g = CMat::from_fn(n, r, |_, _| {
                    c(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng))
                });
                let q = svd(&g).u;
                let p = CMat::identity(n, n) - &q * q.adjoint();
                let d = svd(&p);
                let s = CMat::from_diagonal(&nalgebra::DVector::from_iterator(
                    d.s.len(),
                    d.s.iter().map(|&x| c(x, 0.0)),
                ));
                let back = &d.u * s * d.v.adjoint();
                assert!((back - &p).norm() < 1e-13, "n={n} r={r}");
                assert!(d.s.windows(2).all(|w| w[0] >= w[1]));
            }
        }
    }

    #[test]
    fn pinv_of_rank_deficient() {
        let m = CMat::from_row_slice(2, 2, &[c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let p = pinv(&m, &Tolerance::default());
        assert!((p[(0, 0)] - c(0.5, 0.0)).norm() < 1e-15);
        assert!(p[(1, 1)].norm() < 1e-15);
    }
}
