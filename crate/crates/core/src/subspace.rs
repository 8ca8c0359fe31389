//! Subspaces of ℂⁿ held as orthonormal bases.

use serde::{Deserialize, Serialize};

use crate::linalg;
use crate::{CMat, Error, Result, C64};

/// Rank policy shared by every computation in the crate.
///
/// A singular value `σ` of an `r × c` matrix `M` counts as nonzero iff
/// `σ > max(abs, rel · σ_max(M) · max(r, c))`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rel: 1e-10,
            abs: 1e-12,
        }
    }
}

impl Tolerance {
    pub fn new(rel: f64, abs: f64) -> Result<Self> {
        if !(rel.is_finite() && rel > 0.0 && abs.is_finite() && abs >= 0.0) {
            return Err(Error::InvalidTolerance { rel, abs });
        }
        Ok(Tolerance { rel, abs })
    }

    pub fn cutoff(&self, sigma_max: f64, rows: usize, cols: usize) -> f64 {
        self.abs
            .max(self.rel * sigma_max * rows.max(cols).max(1) as f64)
    }

    /// Cutoff for geometric quantities (sines of principal angles) in ℂⁿ,
    /// where the natural scale is 1.
    pub fn subspace_cutoff(&self, n: usize) -> f64 {
        self.cutoff(1.0, n, n)
    }
}

/// Outcome of a subspace comparison: the verdict and the residual behind it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub holds: bool,
    pub residual: f64,
}

impl Comparison {
    pub fn new(residual: f64, cutoff: f64) -> Self {
        Comparison {
            holds: residual <= cutoff,
            residual,
        }
    }

    /// True when the residual sits within 10x of the cutoff on either side.
    pub fn borderline(&self, cutoff: f64) -> bool {
        self.residual > cutoff / 10.0 && self.residual < cutoff * 10.0
    }
}

/// A linear subspace of ℂⁿ with a column-orthonormal basis.
///
/// The zero subspace has an `n × 0` basis; `n = 0` is allowed.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: CMat,
    tol: Tolerance,
}

pub(crate) fn check_finite(m: &CMat) -> Result<()> {
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            let z = m[(i, j)];
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(Error::NonFinite { row: i, col: j });
            }
        }
    }
    Ok(())
}

impl Subspace {
    /// Column space of `generators`.
    pub fn span(generators: &CMat, tol: Tolerance) -> Result<Self> {
        check_finite(generators)?;
        Ok(Self::span_finite(generators, tol))
    }

    pub(crate) fn span_finite(generators: &CMat, tol: Tolerance) -> Self {
        let (n, m) = generators.shape();
        let d = linalg::svd(generators);
        let r = linalg::rank_of(&d.s, &tol, n, m);
        Subspace {
            ambient: n,
            basis: d.u.columns(0, r).into_owned(),
            tol,
        }
    }

    /// Wraps a basis that is already column-orthonormal.
    pub(crate) fn from_orthonormal(basis: CMat, tol: Tolerance) -> Self {
        Subspace {
            ambient: basis.nrows(),
            basis,
            tol,
        }
    }

    pub fn zero(n: usize, tol: Tolerance) -> Self {
        Self::from_orthonormal(CMat::zeros(n, 0), tol)
    }

    pub fn full(n: usize, tol: Tolerance) -> Self {
        Self::from_orthonormal(CMat::identity(n, n), tol)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &CMat {
        &self.basis
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tol
    }

    pub fn with_tolerance(mut self, tol: Tolerance) -> Self {
        self.tol = tol;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    fn same_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        Ok(())
    }

    /// Orthogonal complement; `dim S + dim S⊥ = n` always.
    pub fn complement(&self) -> Subspace {
        Self::from_orthonormal(linalg::complete(&self.basis), self.tol)
    }

    /// `A ∩ B`: the directions of `B` whose distance to `A` is below the
    /// subspace cutoff.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.same_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ambient, self.tol));
        }
        let ub = &other.basis;
        let residual = ub - &self.basis * (self.basis.adjoint() * ub);
        let cut = self.tol.cutoff(1.0, self.ambient, ub.ncols());
        let z = linalg::null_space_with_cutoff(&residual, cut);
        Ok(Self::span_finite(&(ub * z), self.tol))
    }

    /// `A + B`, the span of both bases.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.same_ambient(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone().with_tolerance(self.tol));
        }
        let mut g = CMat::zeros(self.ambient, self.dim() + other.dim());
        g.columns_mut(0, self.dim()).copy_from(&self.basis);
        g.columns_mut(self.dim(), other.dim()).copy_from(&other.basis);
        Ok(Self::span_finite(&g, self.tol))
    }

    /// Whether `other ⊆ self`; the residual is the largest distance from a
    /// unit vector of `other` to `self`.
    pub fn contains(&self, other: &Subspace) -> Result<Comparison> {
        self.same_ambient(other)?;
        let ub = &other.basis;
        let r = ub - &self.basis * (self.basis.adjoint() * ub);
        Ok(Comparison::new(
            linalg::spectral_norm(&r),
            self.tol.subspace_cutoff(self.ambient),
        ))
    }

    /// Equality measured by `‖P_A − P_B‖₂`; symmetric in its arguments.
    pub fn equals(&self, other: &Subspace) -> Result<Comparison> {
        self.same_ambient(other)?;
        let cut = self.tol.subspace_cutoff(self.ambient);
        if self.dim() != other.dim() {
            return Ok(Comparison::new(1.0, cut));
        }
        let d = self.projection_matrix() - other.projection_matrix();
        Ok(Comparison::new(linalg::spectral_norm(&d), cut))
    }

    pub fn projection_matrix(&self) -> CMat {
        &self.basis * self.basis.adjoint()
    }

    /// Whether `v ∈ S`, with residual relative to `‖v‖`.
    pub fn contains_vector(&self, v: &[C64]) -> Result<Comparison> {
        if v.len() != self.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: v.len(),
            });
        }
        let v = CMat::from_column_slice(v.len(), 1, v);
        let r = &v - &self.basis * (self.basis.adjoint() * &v);
        let scale = v.norm().max(f64::MIN_POSITIVE);
        Ok(Comparison::new(
            r.norm() / scale,
            self.tol.subspace_cutoff(self.ambient),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real_matrix;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn span(rows: usize, cols: usize, data: &[f64]) -> Subspace {
        Subspace::span(&real_matrix(rows, cols, data), tol()).unwrap()
    }

    #[test]
    fn span_collinear_columns() {
        let s = span(2, 2, &[1.0, 2.0, 0.0, 0.0]);
        assert_eq!(s.dim(), 1);
        assert!((s.basis()[(0, 0)].norm() - 1.0).abs() < 1e-15);
        assert!(s.basis()[(1, 0)].norm() < 1e-15);
    }

    #[test]
    fn span_identity_is_full() {
        assert!(span(2, 2, &[1.0, 0.0, 0.0, 1.0]).is_full());
    }

    #[test]
    fn span_nearly_collinear_is_one_dimensional() {
        // Oracle: sigma_min of [[1,1],[1,1+1e-14]] is about 3.5e-15, far below
        // the cutoff max(1e-12, 1e-10 * 2 * 2) = 4e-10.
        let s = span(2, 2, &[1.0, 1.0, 1.0, 1.0 + 1e-14]);
        assert_eq!(s.dim(), 1);
    }

    #[test]
    fn span_rejects_non_finite() {
        let g = real_matrix(2, 1, &[1.0, f64::NAN]);
        assert!(matches!(
            Subspace::span(&g, tol()),
            Err(Error::NonFinite { row: 1, col: 0 })
        ));
    }

    #[test]
    fn complement_examples() {
        let s = span(2, 1, &[1.0, 0.0]);
        let c = s.complement();
        assert!(c.equals(&span(2, 1, &[0.0, 1.0])).unwrap().holds);
        assert!(Subspace::zero(3, tol()).complement().is_full());
        assert!(Subspace::full(3, tol()).complement().is_zero());
    }

    #[test]
    fn intersect_examples() {
        let a = span(2, 1, &[1.0, 0.0]);
        let b = span(2, 1, &[0.0, 1.0]);
        assert!(a.intersect(&b).unwrap().is_zero());
        assert!(a.intersect(&a).unwrap().equals(&a).unwrap().holds);
        // xy-plane ∩ yz-plane = y-axis (oracle: solve a·e1 + b·e2 = c·e2 + d·e3)
        let xy = span(3, 2, &[1.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
        let yz = span(3, 2, &[0.0, 0.0, 1.0, 0.0, 0.0, 1.0]);
        let i = xy.intersect(&yz).unwrap();
        assert!(i.equals(&span(3, 1, &[0.0, 1.0, 0.0])).unwrap().holds);
    }

    #[test]
    fn sum_examples() {
        let a = span(2, 1, &[1.0, 0.0]);
        assert!(a.sum(&Subspace::zero(2, tol())).unwrap().equals(&a).unwrap().holds);
        assert!(a.sum(&span(2, 1, &[0.0, 1.0])).unwrap().is_full());
    }

    #[test]
    fn contains_examples() {
        let full = Subspace::full(2, tol());
        let x = span(2, 1, &[1.0, 0.0]);
        let d = span(2, 1, &[1.0, 1.0]);
        assert!(full.contains(&d).unwrap().holds);
        assert!(!x.contains(&d).unwrap().holds);
        assert!(x.contains(&Subspace::zero(2, tol())).unwrap().holds);
    }

    #[test]
    fn projection_examples() {
        let p = Subspace::full(3, tol()).projection_matrix();
        assert!((p - CMat::identity(3, 3)).norm() < 1e-15);
        let z = Subspace::zero(3, tol()).projection_matrix();
        assert!(z.norm() == 0.0);
    }

    #[test]
    fn zero_ambient_is_first_class() {
        let e = Subspace::span(&CMat::zeros(0, 3), tol()).unwrap();
        assert_eq!(e.dim(), 0);
        assert!(e.is_full() && e.is_zero());
        assert!(e.complement().is_zero());
        assert!(e.equals(&e.intersect(&e).unwrap()).unwrap().holds);
    }

    #[test]
    fn mismatch_rejected() {
        let a = Subspace::zero(2, tol());
        let b = Subspace::zero(3, tol());
        assert!(matches!(a.intersect(&b), Err(Error::AmbientMismatch { .. })));
        assert!(a.sum(&b).is_err() && a.contains(&b).is_err() && a.equals(&b).is_err());
    }

    #[test]
    fn tolerance_validation() {
        assert!(Tolerance::new(0.0, 1e-12).is_err());
        assert!(Tolerance::new(1e-10, -1.0).is_err());
        assert!(Tolerance::new(1e-8, 0.0).is_ok());
    }

    #[test]
    fn contains_vector_residual_is_relative() {
        let x = span(2, 1, &[1.0, 0.0]);
        let big = [C64::new(1e6, 0.0), C64::new(0.0, 0.0)];
        assert!(x.contains_vector(&big).unwrap().holds);
        let off = [C64::new(1.0, 0.0), C64::new(1.0, 0.0)];
        assert!(!x.contains_vector(&off).unwrap().holds);
    }
}
