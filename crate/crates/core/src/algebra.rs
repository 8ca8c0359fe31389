//! Relation calculus: inverse, adjoint, products, sums, shifts, direct sums.

use crate::linalg;
use crate::relation::{block_diag, hcat, stack};
use crate::{CMat, Error, LinearRelation, Result, Subspace, C64};

impl LinearRelation {
    /// `T⁻¹ = {(k, h) : (h, k) ∈ T}`.
    pub fn inverse(&self) -> LinearRelation {
        let g = stack(&self.k_block(), &self.h_block());
        LinearRelation::from_graph(
            self.dim_k(),
            self.dim_h(),
            Subspace::from_orthonormal(g, self.tolerance()),
        )
        .expect("swapped blocks keep the ambient dimension")
    }

    /// `T* = {(k', h') : ⟨h', h⟩ = ⟨k', k⟩ for all (h, k) ∈ T}`, the
    /// orthogonal complement in `K ⊕ H` of `{(-k, h) : (h, k) ∈ T}`.
    pub fn adjoint(&self) -> LinearRelation {
        let g = stack(&(-self.k_block()), &self.h_block());
        let flipped = Subspace::from_orthonormal(g, self.tolerance());
        LinearRelation::from_graph(self.dim_k(), self.dim_h(), flipped.complement())
            .expect("complement keeps the ambient dimension")
    }

    /// The product `TS = {(x, y) : (x, z) ∈ S, (z, y) ∈ T for some z}` with
    /// `self = T`.
    pub fn compose(&self, s: &LinearRelation) -> Result<LinearRelation> {
        if s.dim_k() != self.dim_h() {
            return Err(Error::DimensionMismatch {
                op: "compose",
                detail: format!(
                    "inner operand maps into dimension {}, outer operand starts from {}",
                    s.dim_k(),
                    self.dim_h()
                ),
            });
        }
        let (xs, ys) = (s.h_block(), s.k_block());
        let (xt, yt) = (self.h_block(), self.k_block());
        // coefficient pairs (c, d) with S-middle = T-middle
        let z = block_null(&hcat(&ys, &(-&xt)), s);
        let (c, d) = (z.rows(0, s.graph_dim()), z.rows(s.graph_dim(), self.graph_dim()));
        let g = stack(&(xs * c), &(yt * d));
        Ok(LinearRelation::from_generators_finite(
            s.dim_h(),
            self.dim_k(),
            &g,
            self.tolerance(),
        ))
    }

    /// The operator-like sum `T + S = {(x, y + z) : (x, y) ∈ T, (x, z) ∈ S}`.
    pub fn add(&self, s: &LinearRelation) -> Result<LinearRelation> {
        self.same_dims(s, "add")?;
        let (xt, yt) = (self.h_block(), self.k_block());
        let (xs, ys) = (s.h_block(), s.k_block());
        let z = block_null(&hcat(&xt, &(-&xs)), self);
        let (c, d) = (z.rows(0, self.graph_dim()), z.rows(self.graph_dim(), s.graph_dim()));
        let g = stack(&(&xt * c), &(yt * c + ys * d));
        Ok(LinearRelation::from_generators_finite(
            self.dim_h(),
            self.dim_k(),
            &g,
            self.tolerance(),
        ))
    }

    /// The Minkowski sum `{(x + v, y + w)}`: the sum of the graphs.
    pub fn minkowski_sum(&self, s: &LinearRelation) -> Result<LinearRelation> {
        self.same_dims(s, "minkowski_sum")?;
        LinearRelation::from_graph(self.dim_h(), self.dim_k(), self.graph().sum(s.graph())?)
    }

    /// `T − λ = {(h, k − λh) : (h, k) ∈ T}`.
    pub fn shift(&self, lambda: C64) -> Result<LinearRelation> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                op: "shift",
                dim_h: self.dim_h(),
                dim_k: self.dim_k(),
            });
        }
        let x = self.h_block();
        let y = self.k_block() - &x * lambda;
        Ok(LinearRelation::from_generators_finite(
            self.dim_h(),
            self.dim_k(),
            &stack(&x, &y),
            self.tolerance(),
        ))
    }

    /// `αT = {(h, αk) : (h, k) ∈ T}`. With `α = 0` the multivalued part
    /// collapses: the result is `D(T) × {0}`.
    pub fn scale(&self, alpha: C64) -> LinearRelation {
        let g = stack(&self.h_block(), &(self.k_block() * alpha));
        LinearRelation::from_generators_finite(self.dim_h(), self.dim_k(), &g, self.tolerance())
    }

    /// `T₁ ⊕ T₂` from `H₁ ⊕ H₂` to `K₁ ⊕ K₂`.
    pub fn direct_sum(&self, other: &LinearRelation) -> LinearRelation {
        let (x1, y1) = (self.h_block(), self.k_block());
        let (x2, y2) = (other.h_block(), other.k_block());
        let g = stack(&block_diag(&x1, &x2), &block_diag(&y1, &y2));
        LinearRelation::from_graph(
            self.dim_h() + other.dim_h(),
            self.dim_k() + other.dim_k(),
            Subspace::from_orthonormal(g, self.tolerance()),
        )
        .expect("direct sum dimensions add up")
    }
}

/// Null space of a horizontal concatenation of graph blocks; the blocks have
/// natural scale 1.
fn block_null(m: &CMat, like: &LinearRelation) -> CMat {
    let cut = like.tolerance().cutoff(1.0, m.nrows(), m.ncols());
    linalg::null_space_with_cutoff(m, cut)
}

/// `[[0, A], [B, 0]] = {((x, y), (y_a, x_b)) : (x, x_b) ∈ B, (y, y_a) ∈ A}`
/// on `H ⊕ K`, with `A: K → H` and `B: H → K`.
pub fn anti_diagonal_block(a: &LinearRelation, b: &LinearRelation) -> Result<LinearRelation> {
    if a.dim_h() != b.dim_k() || a.dim_k() != b.dim_h() {
        return Err(Error::DimensionMismatch {
            op: "anti_diagonal_block",
            detail: format!(
                "A: {} -> {} and B: {} -> {} do not pair up",
                a.dim_h(),
                a.dim_k(),
                b.dim_h(),
                b.dim_k()
            ),
        });
    }
    let (h, k) = (b.dim_h(), b.dim_k());
    let (xb, yb) = (b.h_block(), b.k_block());
    let (xa, ya) = (a.h_block(), a.k_block());
    let (rb, ra) = (b.graph_dim(), a.graph_dim());
    // rows: x (H) | y (K) | y_a (H) | x_b (K)
    let mut g = CMat::zeros(2 * (h + k), rb + ra);
    g.view_mut((0, 0), (h, rb)).copy_from(&xb);
    g.view_mut((2 * h + k, 0), (k, rb)).copy_from(&yb);
    g.view_mut((h, rb), (k, ra)).copy_from(&xa);
    g.view_mut((h + k, rb), (h, ra)).copy_from(&ya);
    LinearRelation::from_graph(
        h + k,
        h + k,
        Subspace::from_orthonormal(g, b.tolerance()),
    )
}

/// Graph of the orthogonal projection onto `w`, defined on the whole space.
pub fn projection_relation(w: &Subspace) -> LinearRelation {
    LinearRelation::from_operator_matrix(&w.projection_matrix(), None, w.tolerance())
        .expect("projection matrix is finite")
}
