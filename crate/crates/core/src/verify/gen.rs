//! Seeded generators for random relations with prescribed structure.

use std::fmt;
use std::str::FromStr;

use nalgebra::DVector;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::relation::stack;
use crate::{CMat, Error, LinearRelation, Result, Subspace, Tolerance, C64};

/// Structural families of random relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationFlavor {
    Generic,
    OperatorGraph,
    DenseDomain,
    DenseRange,
    SelfAdjoint,
    NonnegSelfAdjoint,
    PurelyMultivalued,
    ComposablePair,
    RangeMatchesKernelPerpPair,
}

impl RelationFlavor {
    pub const ALL: [RelationFlavor; 9] = [
        RelationFlavor::Generic,
        RelationFlavor::OperatorGraph,
        RelationFlavor::DenseDomain,
        RelationFlavor::DenseRange,
        RelationFlavor::SelfAdjoint,
        RelationFlavor::NonnegSelfAdjoint,
        RelationFlavor::PurelyMultivalued,
        RelationFlavor::ComposablePair,
        RelationFlavor::RangeMatchesKernelPerpPair,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelationFlavor::Generic => "generic",
            RelationFlavor::OperatorGraph => "operator_graph",
            RelationFlavor::DenseDomain => "dense_domain",
            RelationFlavor::DenseRange => "dense_range",
            RelationFlavor::SelfAdjoint => "self_adjoint",
            RelationFlavor::NonnegSelfAdjoint => "nonneg_self_adjoint",
            RelationFlavor::PurelyMultivalued => "purely_multivalued",
            RelationFlavor::ComposablePair => "composable_pair",
            RelationFlavor::RangeMatchesKernelPerpPair => "range_matches_kernel_perp_pair",
        }
    }

    pub fn is_pair(self) -> bool {
        matches!(
            self,
            RelationFlavor::ComposablePair | RelationFlavor::RangeMatchesKernelPerpPair
        )
    }

    pub fn is_square(self) -> bool {
        matches!(self, RelationFlavor::SelfAdjoint | RelationFlavor::NonnegSelfAdjoint)
    }
}

impl fmt::Display for RelationFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelationFlavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RelationFlavor::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown flavor `{s}`")))
    }
}

/// Output of a generator: one relation or an ordered pair.
#[derive(Clone, Debug)]
pub enum Generated {
    Single(LinearRelation),
    /// `(T, S)` where the pair flavor constrains `S` relative to `T`.
    Pair(LinearRelation, LinearRelation),
}

pub fn gaussian(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> CMat {
    CMat::from_fn(rows, cols, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    })
}

/// Random subspace of `ℂⁿ` of dimension `d` (smaller only under a coarse
/// tolerance).
pub fn random_subspace(rng: &mut ChaCha8Rng, n: usize, d: usize, tol: Tolerance) -> Subspace {
    Subspace::span_finite(&gaussian(rng, n, d.min(n)), tol)
}

/// Random matrix of shape `rows × cols` and rank `min(r, rows, cols)`.
pub fn random_rank(rng: &mut ChaCha8Rng, rows: usize, cols: usize, r: usize) -> CMat {
    let r = r.min(rows).min(cols);
    gaussian(rng, rows, r) * gaussian(rng, r, cols)
}

fn hermitian_on(rng: &mut ChaCha8Rng, q: &CMat, nonneg: bool) -> CMat {
    let d = q.ncols();
    let u = Subspace::span_finite(&gaussian(rng, d, d), Tolerance::default());
    let zeros = if d > 0 { rng.random_range(0..=d / 2) } else { 0 };
    let vals: Vec<C64> = (0..d)
        .map(|i| {
            if i < zeros {
                return C64::new(0.0, 0.0);
            }
            let x: f64 = StandardNormal.sample(rng);
            let mag = 0.25 + x.abs();
            let v = if nonneg || rng.random_bool(0.5) { mag } else { -mag };
            C64::new(v, 0.0)
        })
        .collect();
    let diag = CMat::from_diagonal(&DVector::from_vec(vals));
    let b = u.basis();
    q * (b * diag * b.adjoint()) * q.adjoint()
}

fn operator_on(a: &CMat, domain: &Subspace) -> CMat {
    stack(domain.basis(), &(a * domain.basis()))
}

fn relation(dim_h: usize, dim_k: usize, g: &CMat, tol: Tolerance) -> LinearRelation {
    LinearRelation::from_generators_finite(dim_h, dim_k, g, tol)
}

/// Draws a relation (or pair) of the given flavor.
///
/// `graph_dim` is honored exactly by `generic`; structured flavors treat it
/// as a size hint (rank of the operator part or dimension of the
/// multivalued part) and the certified structure wins.
pub fn random_relation(
    rng: &mut ChaCha8Rng,
    dim_h: usize,
    dim_k: usize,
    graph_dim: usize,
    flavor: RelationFlavor,
    tol: Tolerance,
) -> Result<Generated> {
    if graph_dim > dim_h + dim_k {
        return Err(Error::Infeasible(format!(
            "graph dimension {graph_dim} exceeds dim_h + dim_k = {}",
            dim_h + dim_k
        )));
    }
    if flavor.is_square() && dim_h != dim_k {
        return Err(Error::Infeasible(format!(
            "{flavor} needs dim_h = dim_k, got {dim_h} and {dim_k}"
        )));
    }
    let single = |t| Ok(Generated::Single(t));
    match flavor {
        RelationFlavor::Generic => {
            single(relation(dim_h, dim_k, &gaussian(rng, dim_h + dim_k, graph_dim), tol))
        }
        RelationFlavor::OperatorGraph => {
            let a = random_rank(rng, dim_k, dim_h, graph_dim);
            single(LinearRelation::from_operator_matrix(&a, None, tol)?)
        }
        RelationFlavor::DenseDomain => single(dense_domain(rng, dim_h, dim_k, graph_dim, tol)?),
        RelationFlavor::DenseRange => {
            single(dense_domain(rng, dim_k, dim_h, graph_dim, tol)?.inverse())
        }
        RelationFlavor::SelfAdjoint | RelationFlavor::NonnegSelfAdjoint => {
            let n = dim_h;
            // the graph of a self-adjoint relation in ℂⁿ is always n-dimensional
            let m = rng.random_range(0..=n);
            let mv = random_subspace(rng, n, m, tol);
            let dom = mv.complement();
            let a = hermitian_on(rng, dom.basis(), flavor == RelationFlavor::NonnegSelfAdjoint);
            let op = relation(n, n, &operator_on(&a, &dom), tol);
            single(op.minkowski_sum(&LinearRelation::purely_multivalued(n, &mv))?)
        }
        RelationFlavor::PurelyMultivalued => {
            let mv = random_subspace(rng, dim_k, graph_dim.min(dim_k), tol);
            single(LinearRelation::purely_multivalued(dim_h, &mv))
        }
        RelationFlavor::ComposablePair => {
            // T: H → K with a multivalued part, S: H → K with M(S) ⊆ M(T).
            let mt_dim = rng.random_range(0..=dim_k);
            let mt = random_subspace(rng, dim_k, mt_dim, tol);
            let t = with_multivalued(rng, dim_h, dim_k, graph_dim, &mt, tol)?;
            let ms_dim = rng.random_range(0..=mt.dim());
            let ms = Subspace::span_finite(&(mt.basis() * gaussian(rng, mt.dim(), ms_dim)), tol);
            let s_rank = rng.random_range(0..=dim_h.min(dim_k));
            let s = with_multivalued(rng, dim_h, dim_k, s_rank, &ms, tol)?;
            Ok(Generated::Pair(t, s))
        }
        RelationFlavor::RangeMatchesKernelPerpPair => {
            // T: K → H₁ generic, then S: H → K with R(S) = N(T)⊥. Here
            // `dim_h` plays H₁ and `dim_k` plays K; H gets an independent size.
            let k = dim_k;
            let t = relation(k, dim_h, &gaussian(rng, k + dim_h, graph_dim), tol);
            let w = t.kernel().complement();
            let h = rng.random_range(1..=5usize);
            let wd = w.dim();
            let cols = rng.random_range(wd..=(h + wd));
            let mut top = gaussian(rng, h, cols);
            let coeff = gaussian(rng, wd, cols);
            if cols > 0 && rng.random_bool(0.3) {
                // one purely multivalued generator
                let j = rng.random_range(0..cols);
                top.column_mut(j).fill(C64::new(0.0, 0.0));
            }
            let g = stack(&top, &(w.basis() * coeff));
            let s = relation(h, k, &g, tol);
            Ok(Generated::Pair(t, s))
        }
    }
}

fn dense_domain(
    rng: &mut ChaCha8Rng,
    dim_h: usize,
    dim_k: usize,
    hint: usize,
    tol: Tolerance,
) -> Result<LinearRelation> {
    let rank = hint.min(dim_h).min(dim_k);
    let a = random_rank(rng, dim_k, dim_h, rank);
    let op = LinearRelation::from_operator_matrix(&a, None, tol)?;
    let m = rng.random_range(0..=dim_k);
    let mv = random_subspace(rng, dim_k, m, tol);
    op.minkowski_sum(&LinearRelation::purely_multivalued(dim_h, &mv))
}

/// Operator part on a random domain plus the given multivalued part.
fn with_multivalued(
    rng: &mut ChaCha8Rng,
    dim_h: usize,
    dim_k: usize,
    hint: usize,
    mv: &Subspace,
    tol: Tolerance,
) -> Result<LinearRelation> {
    let d = rng.random_range(0..=dim_h);
    let dom = random_subspace(rng, dim_h, d, tol);
    let a = random_rank(rng, dim_k, dim_h, hint);
    let op = relation(dim_h, dim_k, &operator_on(&a, &dom), tol);
    op.minkowski_sum(&LinearRelation::purely_multivalued(dim_h, mv))
}

/// Certifies that a generated value has the structure its flavor promises.
/// Returns the name of the first failed certificate.
pub fn certify(flavor: RelationFlavor, g: &Generated) -> std::result::Result<(), &'static str> {
    let ok = |b: bool, what| if b { Ok(()) } else { Err(what) };
    match (flavor, g) {
        (RelationFlavor::Generic, Generated::Single(_)) => Ok(()),
        (RelationFlavor::OperatorGraph, Generated::Single(t)) => {
            let c = t.classify();
            ok(c.is_operator, "is_operator")?;
            ok(c.has_dense_domain, "has_dense_domain")
        }
        (RelationFlavor::DenseDomain, Generated::Single(t)) => {
            ok(t.classify().has_dense_domain, "has_dense_domain")
        }
        (RelationFlavor::DenseRange, Generated::Single(t)) => {
            ok(t.classify().has_dense_range, "has_dense_range")
        }
        (RelationFlavor::SelfAdjoint, Generated::Single(t)) => {
            ok(t.classify().is_self_adjoint, "is_self_adjoint")
        }
        (RelationFlavor::NonnegSelfAdjoint, Generated::Single(t)) => {
            let c = t.classify();
            ok(c.is_self_adjoint, "is_self_adjoint")?;
            ok(c.is_nonnegative, "is_nonnegative")
        }
        (RelationFlavor::PurelyMultivalued, Generated::Single(t)) => {
            ok(t.domain().is_zero(), "domain_is_zero")
        }
        (RelationFlavor::ComposablePair, Generated::Pair(t, s)) => {
            let inside = t.multivalued().contains(&s.multivalued()).map_err(|_| "dims")?;
            ok(inside.holds, "multivalued_inclusion")
        }
        (RelationFlavor::RangeMatchesKernelPerpPair, Generated::Pair(t, s)) => {
            let eq = s.range().equals(&t.kernel().complement()).map_err(|_| "dims")?;
            ok(eq.holds, "range_matches_kernel_perp")
        }
        _ => Err("shape"),
    }
}
