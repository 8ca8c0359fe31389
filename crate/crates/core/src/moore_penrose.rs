//! The Moore-Penrose inverse `T† = P_{N(T)⊥} T⁻¹ P_{R(T)}`, the regular part
//! `T_op = P_{M(T)⊥} T`, operator extraction, norms and the reduced minimal
//! modulus.
//!
//! `T†` is built by composing the three relations literally; no matrix
//! pseudoinverse shortcut is taken. The quotient `K / M(T)` is identified with
//! `M(T)⊥`, so the regular part stands in for `Q_T T`.

use serde::Serialize;

use crate::relation::split_block;
use crate::{linalg, projection_relation, CMat, Error, LinearRelation, Result, Subspace};

/// Single-valued incarnation of a relation: `x ↦ matrix · x` on `domain`.
///
/// `matrix` vanishes on `domain⊥`; `defect` is the residual of the
/// single-valuedness certificate `‖Y − matrix · X‖` on the graph basis.
#[derive(Clone, Debug)]
pub struct OperatorView {
    pub matrix: CMat,
    pub domain: Subspace,
    pub defect: f64,
}

/// Numbers reported alongside `T†`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct PseudoinverseSummary {
    pub norm: f64,
    pub gamma: f64,
}

impl LinearRelation {
    /// Operator extraction; fails when `M(T) ≠ {0}`.
    pub fn operator_view(&self) -> Result<OperatorView> {
        let tol = self.tolerance();
        let (x, y) = (self.h_block(), self.k_block());
        let m = self.multivalued().dim();
        if m > 0 {
            return Err(Error::Multivalued(m));
        }
        let (image, _) = split_block(&x, &tol);
        let x_pinv = block_pinv(&x, &tol);
        let matrix = &y * x_pinv;
        let defect = linalg::spectral_norm(&(&y - &matrix * &x));
        Ok(OperatorView {
            matrix,
            domain: Subspace::from_orthonormal(image, tol),
            defect,
        })
    }

    /// `T_op = P_{M(T)⊥} T`, always an operator with `T = T_op ⊕̂ ({0} × M(T))`.
    pub fn regular_part(&self) -> Result<(LinearRelation, OperatorView)> {
        let p = projection_relation(&self.multivalued().complement());
        let op = p.compose(self)?;
        let view = op
            .operator_view()
            .map_err(|e| Error::Internal(format!("regular part is not single-valued: {e}")))?;
        Ok((op, view))
    }

    /// `T† = P_{N(T)⊥} T⁻¹ P_{R(T)}`, a single-valued relation defined on all
    /// of `K`, together with its matrix.
    pub fn moore_penrose(&self) -> Result<(LinearRelation, OperatorView)> {
        let p_range = projection_relation(&self.range());
        let p_coker = projection_relation(&self.kernel().complement());
        let mp = p_coker.compose(&self.inverse().compose(&p_range)?)?;
        let view = mp.operator_view().map_err(|e| {
            Error::Internal(format!("Moore-Penrose inverse is not single-valued: {e}"))
        })?;
        let cut = self.tolerance().subspace_cutoff(mp.graph().ambient_dim());
        if view.defect > cut {
            return Err(Error::Internal(format!(
                "Moore-Penrose extraction defect {} above {cut}",
                view.defect
            )));
        }
        Ok((mp, view))
    }

    /// `T† = P_{N(T)⊥} T⁻¹ P_{R(T)}` without the matrix.
    pub fn mp(&self) -> Result<LinearRelation> {
        Ok(self.moore_penrose()?.0)
    }

    /// `(T⁻¹)_op = P_{N(T)⊥} T⁻¹`, defined on `R(T)` only.
    pub fn reduced_inverse(&self) -> Result<LinearRelation> {
        projection_relation(&self.kernel().complement()).compose(&self.inverse())
    }

    /// Norm of the regular part on its domain; exactly 0 when the regular
    /// part has rank 0 under the tolerance policy.
    pub fn operator_norm(&self) -> Result<f64> {
        let (_, view) = self.regular_part()?;
        let s = linalg::singular_values(&view.matrix);
        let (rows, cols) = view.matrix.shape();
        let tol = self.tolerance();
        Ok(match linalg::rank_of(&s, &tol, rows, cols) {
            0 => 0.0,
            _ => s[0],
        })
    }

    /// Reduced minimal modulus `inf { ‖T_op x‖ / ‖x‖ : x ∈ N(T)⊥ ∩ D(T) }`,
    /// `+∞` when `D(T) ⊆ N(T)`.
    pub fn gamma(&self) -> Result<f64> {
        let tol = self.tolerance();
        let w = self.kernel().complement().intersect(&self.domain())?;
        if w.is_zero() {
            return Ok(f64::INFINITY);
        }
        let (_, view) = self.regular_part()?;
        let restricted = &view.matrix * w.basis();
        let s = linalg::singular_values(&restricted);
        let r = linalg::rank_of(&s, &tol, restricted.nrows(), restricted.ncols());
        Ok(if r == 0 { f64::INFINITY } else { s[r - 1] })
    }

    pub fn pseudoinverse_summary(&self) -> Result<PseudoinverseSummary> {
        Ok(PseudoinverseSummary {
            norm: self.mp()?.operator_norm()?,
            gamma: self.gamma()?,
        })
    }
}

/// Pseudoinverse of a graph block with the same rank decision as `split_block`.
fn block_pinv(x: &CMat, tol: &crate::Tolerance) -> CMat {
    let (rows, cols) = x.shape();
    let d = linalg::svd(x);
    let cut = tol.cutoff(1.0, rows, cols);
    let mut out = CMat::zeros(cols, rows);
    for (i, &s) in d.s.iter().enumerate().take_while(|(_, &s)| s > cut) {
        out += (d.v.column(i) * d.u.column(i).adjoint()).scale(1.0 / s);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{real_matrix, Tolerance, C64};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn op(rows: usize, cols: usize, data: &[f64]) -> LinearRelation {
        LinearRelation::from_operator_matrix(&real_matrix(rows, cols, data), None, tol()).unwrap()
    }

    fn close(a: &CMat, b: &CMat, eps: f64) -> bool {
        a.shape() == b.shape() && (a - b).iter().all(|z| z.norm() <= eps)
    }

    #[test]
    fn regular_part_examples() {
        let a = op(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        let (r, _) = a.regular_part().unwrap();
        assert!(r.rel_equals(&a).unwrap().holds);

        let mv = LinearRelation::purely_multivalued(1, &Subspace::full(1, tol()));
        let (r, view) = mv.regular_part().unwrap();
        assert_eq!(r.graph_dim(), 0);
        assert!(view.domain.is_zero());
        assert!(view.matrix.norm() == 0.0);

        // {(x, x)} ⊕̂ ({0} × span e₂) in ℂ²: T_op x = P_{e₂⊥} x on D(T) = span (1,1)
        let g = real_matrix(4, 2, &[1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 1.0]);
        let t = LinearRelation::from_generators(2, 2, &g, tol()).unwrap();
        let (r, view) = t.regular_part().unwrap();
        let expected = real_matrix(4, 1, &[1.0, 1.0, 1.0, 0.0]);
        let expected = LinearRelation::from_generators(2, 2, &expected, tol()).unwrap();
        assert!(r.rel_equals(&expected).unwrap().holds);
        let x = real_matrix(2, 1, &[1.0, 1.0]);
        assert!(close(&(&view.matrix * x), &real_matrix(2, 1, &[1.0, 0.0]), 1e-12));
    }

    #[test]
    fn moore_penrose_examples() {
        let t = op(2, 2, &[2.0, 0.0, 0.0, 0.0]);
        let (mp, view) = t.moore_penrose().unwrap();
        assert!(close(&view.matrix, &real_matrix(2, 2, &[0.5, 0.0, 0.0, 0.0]), 1e-12));
        assert!(view.domain.is_full());
        assert!(mp.is_operator());

        let mv = LinearRelation::purely_multivalued(2, &Subspace::full(3, tol()));
        let (_, view) = mv.moore_penrose().unwrap();
        assert_eq!(view.matrix.shape(), (2, 3));
        assert!(view.matrix.norm() < 1e-12);
        assert!(view.domain.is_full());

        let full = LinearRelation::full(2, 2, tol());
        let (_, view) = full.moore_penrose().unwrap();
        assert!(view.matrix.norm() < 1e-12);
    }

    #[test]
    fn operator_view_examples() {
        let a = real_matrix(2, 3, &[1.0, -2.0, 0.5, 0.0, 3.0, 1.0]);
        let t = LinearRelation::from_operator_matrix(&a, None, tol()).unwrap();
        assert!(close(&t.operator_view().unwrap().matrix, &a, 1e-10));

        let z = LinearRelation::zero(2, 2, tol());
        let v = z.operator_view().unwrap();
        assert!(v.domain.is_zero() && v.matrix.norm() == 0.0);

        let g = real_matrix(4, 1, &[1.0, 0.0, 5.0, 0.0]);
        let t = LinearRelation::from_generators(2, 2, &g, tol()).unwrap();
        let v = t.operator_view().unwrap();
        assert!(close(&v.matrix, &real_matrix(2, 2, &[5.0, 0.0, 0.0, 0.0]), 1e-12));

        let mv = LinearRelation::purely_multivalued(1, &Subspace::full(2, tol()));
        assert!(matches!(mv.operator_view(), Err(Error::Multivalued(2))));
    }

    #[test]
    fn norm_examples() {
        assert!((op(2, 2, &[3.0, 0.0, 0.0, 1.0]).operator_norm().unwrap() - 3.0).abs() < 1e-12);
        assert_eq!(LinearRelation::zero_operator(2, 3, tol()).operator_norm().unwrap(), 0.0);
        let t = op(2, 2, &[2.0, 0.0, 0.0, 0.0]);
        assert!((t.mp().unwrap().operator_norm().unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn gamma_examples() {
        assert!((op(2, 2, &[3.0, 0.0, 0.0, 0.0]).gamma().unwrap() - 3.0).abs() < 1e-12);
        assert_eq!(LinearRelation::zero_operator(2, 2, tol()).gamma().unwrap(), f64::INFINITY);
        let mv = LinearRelation::purely_multivalued(2, &Subspace::full(2, tol()));
        assert_eq!(mv.gamma().unwrap(), f64::INFINITY);
    }

    #[test]
    fn complex_operator_pseudoinverse() {
        // rank-one complex matrix u vᴴ with pseudoinverse v uᴴ / (|u|² |v|²)
        let u = CMat::from_column_slice(2, 1, &[C64::new(1.0, 1.0), C64::new(0.0, 2.0)]);
        let v = CMat::from_column_slice(3, 1, &[C64::new(1.0, 0.0), C64::new(0.0, -1.0), C64::new(2.0, 0.0)]);
        let a = &u * v.adjoint();
        let t = LinearRelation::from_operator_matrix(&a, None, tol()).unwrap();
        let expected = (&v * u.adjoint()).scale(1.0 / (u.norm_squared() * v.norm_squared()));
        let (_, view) = t.moore_penrose().unwrap();
        assert!(close(&view.matrix, &expected, 1e-12));
    }
}
