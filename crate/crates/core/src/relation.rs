//! The [`LinearRelation`] value and its canonical parts.
//!
//! Coordinates are stacked with the `H` block first and the `K` block second:
//! a graph vector `[h; k]` stands for the pair `{h, k}`.

use serde::Serialize;

use crate::linalg;
use crate::subspace::check_finite;
use crate::{CMat, Comparison, Error, Result, Subspace, Tolerance};

/// A linear relation from `ℂ^dim_h` to `ℂ^dim_k`, i.e. a subspace of the
/// product space.
#[derive(Clone, Debug)]
pub struct LinearRelation {
    dim_h: usize,
    dim_k: usize,
    graph: Subspace,
}

/// Domain, range, kernel and multivalued part of a relation.
#[derive(Clone, Debug)]
pub struct RelationParts {
    pub domain: Subspace,
    pub range: Subspace,
    pub kernel: Subspace,
    pub multivalued: Subspace,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Classification {
    pub is_operator: bool,
    pub is_symmetric: bool,
    pub is_self_adjoint: bool,
    pub is_nonnegative: bool,
    pub has_dense_domain: bool,
    pub has_dense_range: bool,
    /// Flags decided by a residual within 10x of its cutoff.
    pub borderline: Vec<&'static str>,
}

impl LinearRelation {
    /// The relation spanned by the columns of `pairs`, each column a stacked
    /// `[h; k]` pair.
    pub fn from_generators(
        dim_h: usize,
        dim_k: usize,
        pairs: &CMat,
        tol: Tolerance,
    ) -> Result<Self> {
        if pairs.nrows() != dim_h + dim_k {
            return Err(Error::DimensionMismatch {
                op: "from_generators",
                detail: format!(
                    "declared {dim_h} + {dim_k} rows, generators have {}",
                    pairs.nrows()
                ),
            });
        }
        check_finite(pairs)?;
        Ok(Self::from_generators_finite(dim_h, dim_k, pairs, tol))
    }

    pub(crate) fn from_generators_finite(
        dim_h: usize,
        dim_k: usize,
        pairs: &CMat,
        tol: Tolerance,
    ) -> Self {
        debug_assert_eq!(pairs.nrows(), dim_h + dim_k);
        LinearRelation {
            dim_h,
            dim_k,
            graph: Subspace::span_finite(pairs, tol),
        }
    }

    pub fn from_graph(dim_h: usize, dim_k: usize, graph: Subspace) -> Result<Self> {
        if graph.ambient_dim() != dim_h + dim_k {
            return Err(Error::AmbientMismatch {
                left: dim_h + dim_k,
                right: graph.ambient_dim(),
            });
        }
        Ok(LinearRelation {
            dim_h,
            dim_k,
            graph,
        })
    }

    /// `{(x, Ax) : x ∈ domain}`; the whole space when `domain` is `None`.
    pub fn from_operator_matrix(
        a: &CMat,
        domain: Option<&Subspace>,
        tol: Tolerance,
    ) -> Result<Self> {
        let (dim_k, dim_h) = a.shape();
        check_finite(a)?;
        let d = match domain {
            Some(d) if d.ambient_dim() != dim_h => {
                return Err(Error::DimensionMismatch {
                    op: "from_operator_matrix",
                    detail: format!(
                        "matrix has {dim_h} columns, domain lives in dimension {}",
                        d.ambient_dim()
                    ),
                })
            }
            Some(d) => d.basis().clone(),
            None => CMat::identity(dim_h, dim_h),
        };
        Ok(Self::from_generators_finite(
            dim_h,
            dim_k,
            &stack(&d, &(a * &d)),
            tol,
        ))
    }

    /// The zero relation `{0} × {0}`.
    pub fn zero(dim_h: usize, dim_k: usize, tol: Tolerance) -> Self {
        LinearRelation {
            dim_h,
            dim_k,
            graph: Subspace::zero(dim_h + dim_k, tol),
        }
    }

    /// `H × K`.
    pub fn full(dim_h: usize, dim_k: usize, tol: Tolerance) -> Self {
        LinearRelation {
            dim_h,
            dim_k,
            graph: Subspace::full(dim_h + dim_k, tol),
        }
    }

    /// Graph of the zero operator `H → K`.
    pub fn zero_operator(dim_h: usize, dim_k: usize, tol: Tolerance) -> Self {
        Self::from_operator_matrix(&CMat::zeros(dim_k, dim_h), None, tol)
            .expect("zero matrix is finite")
    }

    /// `{0} × M` as a relation from `ℂ^dim_h`.
    pub fn purely_multivalued(dim_h: usize, m: &Subspace) -> Self {
        let dim_k = m.ambient_dim();
        let g = stack(&CMat::zeros(dim_h, m.dim()), m.basis());
        LinearRelation {
            dim_h,
            dim_k,
            graph: Subspace::from_orthonormal(g, m.tolerance()),
        }
    }

    pub fn dim_h(&self) -> usize {
        self.dim_h
    }

    pub fn dim_k(&self) -> usize {
        self.dim_k
    }

    pub fn graph(&self) -> &Subspace {
        &self.graph
    }

    pub fn graph_dim(&self) -> usize {
        self.graph.dim()
    }

    pub fn tolerance(&self) -> Tolerance {
        self.graph.tolerance()
    }

    pub fn is_square(&self) -> bool {
        self.dim_h == self.dim_k
    }

    /// `H` block of the graph basis (`dim_h × dim graph`).
    pub fn h_block(&self) -> CMat {
        self.graph.basis().rows(0, self.dim_h).into_owned()
    }

    /// `K` block of the graph basis (`dim_k × dim graph`).
    pub fn k_block(&self) -> CMat {
        self.graph.basis().rows(self.dim_h, self.dim_k).into_owned()
    }

    pub fn domain(&self) -> Subspace {
        let (image, _) = split_block(&self.h_block(), &self.tolerance());
        Subspace::from_orthonormal(image, self.tolerance())
    }

    pub fn range(&self) -> Subspace {
        let (image, _) = split_block(&self.k_block(), &self.tolerance());
        Subspace::from_orthonormal(image, self.tolerance())
    }

    pub fn kernel(&self) -> Subspace {
        let (_, null) = split_block(&self.k_block(), &self.tolerance());
        Subspace::span_finite(&(self.h_block() * null), self.tolerance())
    }

    pub fn multivalued(&self) -> Subspace {
        let (_, null) = split_block(&self.h_block(), &self.tolerance());
        Subspace::span_finite(&(self.k_block() * null), self.tolerance())
    }

    pub fn parts(&self) -> RelationParts {
        RelationParts {
            domain: self.domain(),
            range: self.range(),
            kernel: self.kernel(),
            multivalued: self.multivalued(),
        }
    }

    pub fn is_operator(&self) -> bool {
        self.multivalued().is_zero()
    }

    pub(crate) fn same_dims(&self, other: &LinearRelation, op: &'static str) -> Result<()> {
        if self.dim_h != other.dim_h || self.dim_k != other.dim_k {
            return Err(Error::DimensionMismatch {
                op,
                detail: format!(
                    "{} -> {} vs {} -> {}",
                    self.dim_h, self.dim_k, other.dim_h, other.dim_k
                ),
            });
        }
        Ok(())
    }

    /// Whether `other ⊆ self` as graphs.
    pub fn includes(&self, other: &LinearRelation) -> Result<Comparison> {
        self.same_dims(other, "includes")?;
        self.graph.contains(&other.graph)
    }

    pub fn rel_equals(&self, other: &LinearRelation) -> Result<Comparison> {
        self.same_dims(other, "rel_equals")?;
        self.graph.equals(&other.graph)
    }

    /// `T|_W`: the graph intersected with `W × K`.
    pub fn restrict(&self, w: &Subspace) -> Result<LinearRelation> {
        if w.ambient_dim() != self.dim_h {
            return Err(Error::AmbientMismatch {
                left: self.dim_h,
                right: w.ambient_dim(),
            });
        }
        let wk = block_diag(w.basis(), &CMat::identity(self.dim_k, self.dim_k));
        let wk = Subspace::from_orthonormal(wk, self.tolerance());
        Ok(LinearRelation {
            dim_h: self.dim_h,
            dim_k: self.dim_k,
            graph: self.graph.intersect(&wk)?,
        })
    }

    pub fn classify(&self) -> Classification {
        let tol = self.tolerance();
        let cut = tol.subspace_cutoff(self.graph.ambient_dim());
        let mut borderline = Vec::new();
        let parts = self.parts();
        let mut c = Classification {
            is_operator: parts.multivalued.is_zero(),
            is_symmetric: false,
            is_self_adjoint: false,
            is_nonnegative: false,
            has_dense_domain: parts.domain.is_full(),
            has_dense_range: parts.range.is_full(),
            borderline: Vec::new(),
        };
        if self.is_square() {
            let adj = self.adjoint();
            let sym = adj.includes(self).expect("square relation");
            let sa = adj.rel_equals(self).expect("square relation");
            c.is_symmetric = sym.holds;
            c.is_self_adjoint = sa.holds;
            if sym.borderline(cut) {
                borderline.push("is_symmetric");
            }
            if sa.borderline(cut) {
                borderline.push("is_self_adjoint");
            }
            let (skew, min_eig) = self.form_residuals();
            c.is_nonnegative = skew <= cut && min_eig >= -cut;
            if Comparison::new(skew, cut).borderline(cut)
                || (min_eig < 0.0 && Comparison::new(-min_eig, cut).borderline(cut))
            {
                borderline.push("is_nonnegative");
            }
        }
        c.borderline = borderline;
        c
    }

    /// For the form `c ↦ ⟨Yc, Xc⟩` on the graph basis `[X; Y]`: the size of
    /// its non-Hermitian part and the smallest eigenvalue of its Hermitian part.
    pub(crate) fn form_residuals(&self) -> (f64, f64) {
        let g = self.h_block().adjoint() * self.k_block();
        let skew = linalg::spectral_norm(&(&g - g.adjoint()));
        let (vals, _) = linalg::hermitian_eigen(&g);
        (skew, vals.first().copied().unwrap_or(0.0))
    }
}

/// Image and null-space bases of one block of an orthonormal graph basis,
/// both read off a single SVD. The block's natural scale is 1.
pub(crate) fn split_block(block: &CMat, tol: &Tolerance) -> (CMat, CMat) {
    let (rows, cols) = block.shape();
    let d = linalg::svd(block);
    let cut = tol.cutoff(1.0, rows, cols);
    let r = d.s.iter().take_while(|&&x| x > cut).count();
    let image = d.u.columns(0, r).into_owned();
    let null = if cols == 0 {
        CMat::zeros(0, 0)
    } else {
        linalg::complete(&d.v.columns(0, r).into_owned())
    };
    (image, null)
}

/// `[top; bottom]`.
pub(crate) fn stack(top: &CMat, bottom: &CMat) -> CMat {
    debug_assert_eq!(top.ncols(), bottom.ncols());
    let mut m = CMat::zeros(top.nrows() + bottom.nrows(), top.ncols());
    m.rows_mut(0, top.nrows()).copy_from(top);
    m.rows_mut(top.nrows(), bottom.nrows()).copy_from(bottom);
    m
}

/// `[left, right]`.
pub(crate) fn hcat(left: &CMat, right: &CMat) -> CMat {
    debug_assert_eq!(left.nrows(), right.nrows());
    let mut m = CMat::zeros(left.nrows(), left.ncols() + right.ncols());
    m.columns_mut(0, left.ncols()).copy_from(left);
    m.columns_mut(left.ncols(), right.ncols()).copy_from(right);
    m
}

pub(crate) fn block_diag(a: &CMat, b: &CMat) -> CMat {
    let mut m = CMat::zeros(a.nrows() + b.nrows(), a.ncols() + b.ncols());
    m.view_mut((0, 0), a.shape()).copy_from(a);
    m.view_mut((a.nrows(), a.ncols()), b.shape()).copy_from(b);
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real_matrix;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn op(rows: usize, cols: usize, data: &[f64]) -> LinearRelation {
        LinearRelation::from_operator_matrix(&real_matrix(rows, cols, data), None, tol()).unwrap()
    }

    fn line(n: usize, data: &[f64]) -> Subspace {
        Subspace::span(&real_matrix(n, 1, data), tol()).unwrap()
    }

    #[test]
    fn generator_examples() {
        let t = LinearRelation::from_generators(1, 1, &real_matrix(2, 1, &[1.0, 2.0]), tol())
            .unwrap();
        assert!(t.rel_equals(&op(1, 1, &[2.0])).unwrap().holds);

        let z = LinearRelation::from_generators(2, 3, &CMat::zeros(5, 0), tol()).unwrap();
        assert_eq!(z.graph_dim(), 0);

        // (1,0 | 0,1) and (0,1 | 1,0): the swap operator, D = R = ℂ².
        let g = real_matrix(4, 2, &[1.0, 0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0]);
        let s = LinearRelation::from_generators(2, 2, &g, tol()).unwrap();
        let p = s.parts();
        assert_eq!(s.graph_dim(), 2);
        assert!(p.domain.is_full() && p.range.is_full());
        assert!(p.kernel.is_zero() && p.multivalued.is_zero());
    }

    #[test]
    fn generator_row_mismatch_rejected() {
        let g = real_matrix(3, 1, &[1.0, 2.0, 3.0]);
        assert!(matches!(
            LinearRelation::from_generators(1, 1, &g, tol()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn operator_matrix_examples() {
        let id = op(2, 2, &[1.0, 0.0, 0.0, 1.0]);
        let p = id.parts();
        assert!(p.kernel.is_zero() && p.multivalued.is_zero());

        let d = op(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        let p = d.parts();
        assert!(p.kernel.equals(&line(2, &[0.0, 1.0])).unwrap().holds);
        assert!(p.range.equals(&line(2, &[1.0, 0.0])).unwrap().holds);

        let a = real_matrix(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        let r = LinearRelation::from_operator_matrix(&a, Some(&line(2, &[1.0, 0.0])), tol())
            .unwrap();
        assert_eq!(r.graph_dim(), 1);
        assert!(r
            .graph()
            .equals(&line(4, &[1.0, 0.0, 1.0, 3.0]))
            .unwrap()
            .holds);

        assert!(LinearRelation::from_operator_matrix(&a, Some(&line(3, &[1.0, 0.0, 0.0])), tol())
            .is_err());
    }

    #[test]
    fn parts_examples() {
        let t = LinearRelation::purely_multivalued(1, &Subspace::full(1, tol()));
        let p = t.parts();
        assert!(p.domain.is_zero() && p.range.is_full());
        assert!(p.kernel.is_zero() && p.multivalued.is_full());

        let f = LinearRelation::full(2, 2, tol());
        let p = f.parts();
        assert!(p.domain.is_full() && p.range.is_full());
        assert!(p.kernel.is_full() && p.multivalued.is_full());
    }

    #[test]
    fn inclusion_examples() {
        let two = op(1, 1, &[2.0]);
        let three = op(1, 1, &[3.0]);
        assert!(two.includes(&two).unwrap().holds);
        assert!(!three.includes(&two).unwrap().holds);
        assert!(two.includes(&op(2, 2, &[1.0; 4])).is_err());
    }

    #[test]
    fn restrict_examples() {
        let id = op(2, 2, &[1.0, 0.0, 0.0, 1.0]);
        let full = Subspace::full(2, tol());
        assert!(id.restrict(&full).unwrap().rel_equals(&id).unwrap().holds);
        let r = id.restrict(&line(2, &[1.0, 0.0])).unwrap();
        assert!(r
            .graph()
            .equals(&line(4, &[1.0, 0.0, 1.0, 0.0]))
            .unwrap()
            .holds);

        // T|_{0} = {0} × M(T)
        let g = real_matrix(4, 2, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 1.0]);
        let t = LinearRelation::from_generators(2, 2, &g, tol()).unwrap();
        let r0 = t.restrict(&Subspace::zero(2, tol())).unwrap();
        let expected = LinearRelation::purely_multivalued(2, &t.multivalued());
        assert_eq!(t.multivalued().dim(), 1);
        assert!(r0.rel_equals(&expected).unwrap().holds);
    }

    #[test]
    fn classify_examples() {
        let psd = op(2, 2, &[2.0, 1.0, 1.0, 2.0]);
        let c = psd.classify();
        assert!(c.is_operator && c.is_self_adjoint && c.is_nonnegative && c.is_symmetric);

        let mv = LinearRelation::purely_multivalued(1, &Subspace::full(1, tol()));
        assert!(!mv.classify().is_operator);

        let nil = op(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        let c = nil.classify();
        assert!(!c.is_symmetric && !c.is_self_adjoint);

        let neg = op(1, 1, &[-1.0]);
        let c = neg.classify();
        assert!(c.is_self_adjoint && !c.is_nonnegative);

        let rect = op(2, 1, &[1.0, 1.0]);
        let c = rect.classify();
        assert!(!c.is_self_adjoint && c.has_dense_domain && !c.has_dense_range);
    }
}
