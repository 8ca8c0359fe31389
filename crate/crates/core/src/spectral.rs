//! Resolvent sets and point spectra of relations in one space, square roots
//! of nonnegative self-adjoint relations and absolute values.
//!
//! A relation `T` in `H` is written as `{(Ec, Fc) : c ∈ ℂʳ}` with `[E; F]`
//! its orthonormal graph basis. Then `T − λ = {(Ec, (F − λE)c)}` and
//!
//! * `R(T − λ) = H` iff `rank(F − λE) = dim H`,
//! * `N(T − λ) = {0}` iff `ker(F − λE) ⊆ ker E`.
//!
//! `λ ∈ ρ(T)` iff both hold; `σ(T)` is the complement of `ρ(T)`. A nonempty
//! resolvent set forces `r = dim H`, and then `σ(T)` is the set of finite
//! eigenvalues of the square pencil `F − λE`, or all of ℂ when that pencil is
//! singular.

use serde::Serialize;

use crate::relation::stack;
use crate::{linalg, CMat, Error, LinearRelation, Result, Subspace, C64};

/// Kernel representation `T = {(Ec, Fc)}` of a relation in one space.
#[derive(Clone, Debug)]
pub struct PencilRep {
    pub e: CMat,
    pub f: CMat,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResolventVerdict {
    pub lambda: [f64; 2],
    pub in_resolvent: bool,
    /// `rank(F − λE)`, compared against `dim H`.
    pub rank: usize,
    pub dim_h: usize,
    /// `dim N(T − λ)`.
    pub kernel_dim: usize,
    pub smallest_singular_value: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    /// Finite eigenvalues with multiplicity, sorted by real then imaginary part.
    pub eigenvalues: Vec<C64>,
    /// `σ(T) = ℂ` (empty resolvent set).
    pub whole_plane: bool,
    /// The pencil is square and `det(F − λE)` is not identically zero.
    pub pencil_regular: bool,
    /// Eigenvalues at infinity (multivalued directions), excluded above.
    pub infinite_eigenvalues: usize,
    /// Pencil eigenvalue candidates dropped because they passed the resolvent
    /// test on re-validation.
    pub rejected_candidates: usize,
}

/// Clustering radius for [`SpectrumReport::distinct`].
pub const EIGENVALUE_CLUSTER_RADIUS: f64 = 1e-7;

impl SpectrumReport {
    /// Eigenvalues with clusters closer than `radius` merged (cluster mean).
    pub fn distinct(&self, radius: f64) -> Vec<C64> {
        let mut clusters: Vec<(C64, usize)> = Vec::new();
        for &z in &self.eigenvalues {
            match clusters
                .iter_mut()
                .find(|(c, n)| (*c / *n as f64 - z).norm() <= radius)
            {
                Some((c, n)) => {
                    *c += z;
                    *n += 1;
                }
                None => clusters.push((z, 1)),
            }
        }
        clusters.into_iter().map(|(c, n)| c / n as f64).collect()
    }
}

// Probe points for the pencil regularity test.
const PROBES: [(f64, f64); 4] = [
    (0.618_033_988_749_895, 0.414_213_562_373_095),
    (-1.324_717_957_244_746, 0.577_215_664_901_532),
    (2.718_281_828_459_045, -1.618_033_988_749_895),
    (-0.141_592_653_589_793, -3.302_775_637_731_995),
];

fn require_square(t: &LinearRelation, op: &'static str) -> Result<()> {
    if !t.is_square() {
        return Err(Error::NotSquare {
            op,
            dim_h: t.dim_h(),
            dim_k: t.dim_k(),
        });
    }
    Ok(())
}

impl LinearRelation {
    pub fn pencil(&self) -> Result<PencilRep> {
        require_square(self, "pencil")?;
        Ok(PencilRep {
            e: self.h_block(),
            f: self.k_block(),
        })
    }

    /// Whether `(T − λ)⁻¹` is an everywhere defined operator.
    pub fn is_in_resolvent(&self, lambda: C64) -> Result<ResolventVerdict> {
        let p = self.pencil()?;
        let tol = self.tolerance();
        let n = self.dim_h();
        let m = &p.f - &p.e * lambda;
        let s = linalg::singular_values(&m);
        let rank = linalg::rank_of(&s, &tol, m.nrows(), m.ncols());
        let z = linalg::null_space(&m, &tol);
        let ez = &p.e * z;
        let ez_cut = tol.cutoff(1.0, ez.nrows(), ez.ncols());
        let kernel_dim = linalg::singular_values(&ez)
            .iter()
            .filter(|&&x| x > ez_cut)
            .count();
        let smallest = if m.ncols() < n {
            0.0
        } else {
            s.last().copied().unwrap_or(0.0)
        };
        Ok(ResolventVerdict {
            lambda: [lambda.re, lambda.im],
            in_resolvent: rank == n && kernel_dim == 0,
            rank,
            dim_h: n,
            kernel_dim,
            smallest_singular_value: smallest,
        })
    }

    /// Finite point spectrum through the pencil `F − λE`.
    pub fn point_spectrum(&self) -> Result<SpectrumReport> {
        require_square(self, "point_spectrum")?;
        let tol = self.tolerance();
        let n = self.dim_h();
        let singular = SpectrumReport {
            eigenvalues: Vec::new(),
            whole_plane: true,
            pencil_regular: false,
            infinite_eigenvalues: 0,
            rejected_candidates: 0,
        };
        if self.graph_dim() != n {
            return Ok(singular);
        }
        let mut regular = false;
        for (re, im) in PROBES {
            if self.is_in_resolvent(C64::new(re, im))?.in_resolvent {
                regular = true;
                break;
            }
        }
        if !regular {
            return Ok(singular);
        }

        // First Wong sequence V_{i+1} = F⁻¹(E V_i); its limit carries the
        // finite eigenvalues and E is injective on it.
        let PencilRep { e, f } = self.pencil()?;
        let mut q = CMat::identity(n, n);
        loop {
            let eq = &e * &q;
            let w = Subspace::span_finite(&eq, tol);
            let off = &f - w.projection_matrix() * &f;
            let cut = tol.cutoff(1.0, off.nrows(), off.ncols());
            let next = linalg::null_space_with_cutoff(&off, cut);
            if next.ncols() >= q.ncols() {
                break;
            }
            q = next;
        }
        let d = q.ncols();
        let eq = &e * &q;
        let fq = &f * &q;
        let reduced = linalg::pinv(&eq, &tol) * fq;
        let mut eigenvalues = Vec::with_capacity(d);
        let mut rejected = 0;
        for lam in linalg::eigenvalues(&reduced) {
            if self.is_in_resolvent(lam)?.in_resolvent {
                rejected += 1;
            } else {
                eigenvalues.push(lam);
            }
        }
        eigenvalues.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        Ok(SpectrumReport {
            eigenvalues,
            whole_plane: false,
            pencil_regular: true,
            infinite_eigenvalues: n - d,
            rejected_candidates: rejected,
        })
    }

    /// Principal square root of a nonnegative self-adjoint relation:
    /// `S^{1/2} = (S_op)^{1/2} ⊕̂ ({0} × M(S))`.
    pub fn sqrt_nonneg(&self) -> Result<LinearRelation> {
        require_square(self, "sqrt_nonneg")?;
        let c = self.classify();
        if !c.is_self_adjoint {
            return Err(Error::Precondition("relation is not self-adjoint".into()));
        }
        if !c.is_nonnegative {
            return Err(Error::Precondition("relation is not nonnegative".into()));
        }
        let tol = self.tolerance();
        let n = self.dim_h();
        let mv = self.multivalued();
        let dom = mv.complement();
        let (_, view) = self.regular_part()?;
        let q = dom.basis();
        let compressed = q.adjoint() * &view.matrix * q;
        let (vals, vecs) = linalg::hermitian_eigen(&compressed);
        let top = vals.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let floor = tol
            .cutoff(top, compressed.nrows(), compressed.ncols())
            .max(tol.subspace_cutoff(n));
        let mut roots = Vec::with_capacity(vals.len());
        for v in vals {
            if v < -floor {
                return Err(Error::Precondition(format!(
                    "regular part has negative eigenvalue {v}"
                )));
            }
            roots.push(C64::new(if v <= floor { 0.0 } else { v.sqrt() }, 0.0));
        }
        let diag = CMat::from_diagonal(&nalgebra::DVector::from_vec(roots));
        let root = q * (&vecs * diag * vecs.adjoint()) * q.adjoint();
        let g = stack(q, &(root * q));
        let op_part = LinearRelation::from_generators_finite(n, n, &g, tol);
        op_part.minkowski_sum(&LinearRelation::purely_multivalued(n, &mv))
    }

    /// `|T| = (T*T)^{1/2}`, a relation in `H`.
    pub fn absolute_value(&self) -> Result<LinearRelation> {
        self.adjoint().compose(self)?.sqrt_nonneg()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{real_matrix, Tolerance};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn op(rows: usize, cols: usize, data: &[f64]) -> LinearRelation {
        LinearRelation::from_operator_matrix(&real_matrix(rows, cols, data), None, tol()).unwrap()
    }

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn mv(n: usize) -> LinearRelation {
        LinearRelation::purely_multivalued(n, &Subspace::full(n, tol()))
    }

    #[test]
    fn resolvent_examples() {
        let t = op(1, 1, &[2.0]);
        assert!(t.is_in_resolvent(c(3.0)).unwrap().in_resolvent);
        let v = t.is_in_resolvent(c(2.0)).unwrap();
        assert!(!v.in_resolvent && v.kernel_dim == 1);

        for lam in [c(0.0), c(1.5), C64::new(-2.0, 7.0)] {
            assert!(mv(1).is_in_resolvent(lam).unwrap().in_resolvent);
            assert!(!LinearRelation::full(1, 1, tol()).is_in_resolvent(lam).unwrap().in_resolvent);
        }
        assert!(op(1, 2, &[1.0, 1.0]).is_in_resolvent(c(0.0)).is_err());
    }

    #[test]
    fn spectrum_examples() {
        let s = op(2, 2, &[2.0, 0.0, 0.0, 5.0]).point_spectrum().unwrap();
        assert_eq!(s.eigenvalues.len(), 2);
        assert!((s.eigenvalues[0] - c(2.0)).norm() < 1e-12);
        assert!((s.eigenvalues[1] - c(5.0)).norm() < 1e-12);

        let s = mv(1).point_spectrum().unwrap();
        assert!(s.eigenvalues.is_empty() && !s.whole_plane);
        assert_eq!(s.infinite_eigenvalues, 1);

        // λ² = 6
        let s = op(2, 2, &[0.0, 2.0, 3.0, 0.0]).point_spectrum().unwrap();
        let r6 = 6f64.sqrt();
        assert!((s.eigenvalues[0] - c(-r6)).norm() < 1e-12);
        assert!((s.eigenvalues[1] - c(r6)).norm() < 1e-12);

        let s = LinearRelation::full(2, 2, tol()).point_spectrum().unwrap();
        assert!(s.whole_plane && s.eigenvalues.is_empty());
    }

    #[test]
    fn spectrum_with_jordan_block_at_infinity() {
        // E = [[0,1],[0,0]], F = I: (F − λE) is unipotent, no finite
        // eigenvalues, a 2-block at infinity.
        let g = real_matrix(4, 2, &[0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 1.0]);
        let t = LinearRelation::from_generators(2, 2, &g, tol()).unwrap();
        let s = t.point_spectrum().unwrap();
        assert!(s.eigenvalues.is_empty() && s.pencil_regular);
        assert_eq!(s.infinite_eigenvalues, 2);
    }

    #[test]
    fn spectrum_mixed_finite_and_multivalued() {
        // T = graph of 3 on span e₁ ⊕̂ {0} × span e₂
        let g = real_matrix(4, 2, &[1.0, 0.0, 0.0, 0.0, 3.0, 0.0, 0.0, 1.0]);
        let t = LinearRelation::from_generators(2, 2, &g, tol()).unwrap();
        let s = t.point_spectrum().unwrap();
        assert_eq!(s.eigenvalues.len(), 1);
        assert!((s.eigenvalues[0] - c(3.0)).norm() < 1e-12);
        assert_eq!(s.infinite_eigenvalues, 1);
    }

    #[test]
    fn sqrt_examples() {
        let s = op(2, 2, &[4.0, 0.0, 0.0, 1.0]).sqrt_nonneg().unwrap();
        assert!(s.rel_equals(&op(2, 2, &[2.0, 0.0, 0.0, 1.0])).unwrap().holds);

        let m = mv(1).sqrt_nonneg().unwrap();
        assert!(m.rel_equals(&mv(1)).unwrap().holds);

        let s = op(2, 2, &[9.0, 0.0, 0.0, 0.0]).sqrt_nonneg().unwrap();
        assert!(s.rel_equals(&op(2, 2, &[3.0, 0.0, 0.0, 0.0])).unwrap().holds);

        assert!(matches!(op(1, 1, &[-1.0]).sqrt_nonneg(), Err(Error::Precondition(_))));
        assert!(matches!(
            op(2, 2, &[0.0, 1.0, 0.0, 0.0]).sqrt_nonneg(),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn absolute_value_examples() {
        // [[0, -3], [2, 0]] has |A| = diag(2, 3)
        let a = op(2, 2, &[0.0, -3.0, 2.0, 0.0]);
        let abs = a.absolute_value().unwrap();
        assert!(abs.rel_equals(&op(2, 2, &[2.0, 0.0, 0.0, 3.0])).unwrap().holds);

        // T = {0} × K: T*T = {0} × H, |T| = {0} × H
        let t = LinearRelation::purely_multivalued(2, &Subspace::full(3, tol()));
        let abs = t.absolute_value().unwrap();
        let expected = LinearRelation::purely_multivalued(2, &Subspace::full(2, tol()));
        assert!(abs.rel_equals(&expected).unwrap().holds);

        let r = std::f64::consts::FRAC_1_SQRT_2;
        let u = CMat::from_row_slice(2, 2, &[c(r), C64::new(0.0, r), C64::new(0.0, r), c(r)]);
        let t = LinearRelation::from_operator_matrix(&u, None, tol()).unwrap();
        let id = op(2, 2, &[1.0, 0.0, 0.0, 1.0]);
        assert!(t.absolute_value().unwrap().rel_equals(&id).unwrap().holds);
    }

    #[test]
    fn distinct_merges_close_values() {
        let r = SpectrumReport {
            eigenvalues: vec![c(1.0), c(1.0 + 1e-9), c(2.0)],
            whole_plane: false,
            pencil_regular: true,
            infinite_eigenvalues: 0,
            rejected_candidates: 0,
        };
        assert_eq!(r.distinct(EIGENVALUE_CLUSTER_RADIUS).len(), 2);
    }
}
