use linrel::io::RelationFile;
use linrel::verify::{random_relation, Generated, RelationFlavor};
use linrel::{CMat, LinearRelation, Subspace, Tolerance, C64};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

const TOL: f64 = 1e-8;

fn gaussian(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> CMat {
    CMat::from_fn(rows, cols, |_, _| {
        C64::new(StandardNormal.sample(&mut *rng), StandardNormal.sample(&mut *rng))
    })
}

fn subspace(seed: u64, n: usize, d: usize) -> Subspace {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Subspace::span(&gaussian(&mut rng, n, d.min(n)), Tolerance::default()).unwrap()
}

fn relation(seed: u64, h: usize, k: usize, gd: usize, flavor: RelationFlavor) -> LinearRelation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match random_relation(&mut rng, h, k, gd.min(h + k), flavor, Tolerance::default()).unwrap() {
        Generated::Single(t) => t,
        Generated::Pair(t, _) => t,
    }
}

fn flavor() -> impl Strategy<Value = RelationFlavor> {
    prop_oneof![
        Just(RelationFlavor::Generic),
        Just(RelationFlavor::OperatorGraph),
        Just(RelationFlavor::DenseDomain),
        Just(RelationFlavor::DenseRange),
        Just(RelationFlavor::PurelyMultivalued),
    ]
}

fn eq(a: &LinearRelation, b: &LinearRelation) -> bool {
    a.rel_equals(b).unwrap().residual <= TOL
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dimension_formula(seed: u64, h in 1..6usize, k in 1..6usize, gd in 0..12usize, f in flavor()) {
        let t = relation(seed, h, k, gd, f);
        let p = t.parts();
        prop_assert_eq!(t.graph_dim(), p.domain.dim() + p.multivalued.dim());
        prop_assert_eq!(t.graph_dim(), p.range.dim() + p.kernel.dim());
        prop_assert!(p.domain.contains(&p.kernel).unwrap().holds);
        prop_assert!(p.range.contains(&p.multivalued).unwrap().holds);
    }

    #[test]
    fn de_morgan(s1: u64, s2: u64, n in 1..7usize, d1 in 0..7usize, d2 in 0..7usize) {
        let (u, v) = (subspace(s1, n, d1), subspace(s2, n, d2));
        let lhs = u.intersect(&v).unwrap().complement();
        let rhs = u.complement().sum(&v.complement()).unwrap();
        prop_assert!(lhs.equals(&rhs).unwrap().residual <= TOL);
        let lhs = u.sum(&v).unwrap().complement();
        let rhs = u.complement().intersect(&v.complement()).unwrap();
        prop_assert!(lhs.equals(&rhs).unwrap().residual <= TOL);
    }

    #[test]
    fn complement_is_an_involution(seed: u64, n in 0..7usize, d in 0..7usize) {
        let u = subspace(seed, n, d);
        let back = u.complement().complement();
        prop_assert_eq!(back.dim(), u.dim());
        prop_assert!(back.equals(&u).unwrap().residual <= TOL);
        prop_assert_eq!(u.complement().dim() + u.dim(), n);
    }

    #[test]
    fn canonical_form_ignores_generator_choice(seed: u64, n in 1..7usize, d in 0..7usize, extra in 0..3usize) {
        let u = subspace(seed, n, d);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        // redundant, rescaled generators of the same space
        let mix = gaussian(&mut rng, u.dim(), u.dim() + extra);
        let w = Subspace::span(&(u.basis() * mix), Tolerance::default()).unwrap();
        prop_assert_eq!(w.dim(), u.dim());
        prop_assert!((w.projection_matrix() - u.projection_matrix()).norm() <= TOL);
    }

    #[test]
    fn adjoint_is_an_involution(seed: u64, h in 1..6usize, k in 1..6usize, gd in 0..12usize, f in flavor()) {
        let t = relation(seed, h, k, gd, f);
        prop_assert!(eq(&t.adjoint().adjoint(), &t));
        prop_assert!(eq(&t.inverse().inverse(), &t));
    }

    #[test]
    fn inverse_commutes_with_adjoint(seed: u64, h in 1..6usize, k in 1..6usize, gd in 0..12usize, f in flavor()) {
        let t = relation(seed, h, k, gd, f);
        prop_assert!(eq(&t.inverse().adjoint(), &t.adjoint().inverse()));
    }

    #[test]
    fn composition_is_associative(
        s1: u64, s2: u64, s3: u64,
        a in 1..5usize, b in 1..5usize, c in 1..5usize, d in 1..5usize,
        g1 in 0..9usize, g2 in 0..9usize, g3 in 0..9usize,
    ) {
        // T: a → b, S: b → c, R: c → d
        let t = relation(s1, a, b, g1, RelationFlavor::Generic);
        let s = relation(s2, b, c, g2, RelationFlavor::Generic);
        let r = relation(s3, c, d, g3, RelationFlavor::Generic);
        let left = r.compose(&s).unwrap().compose(&t).unwrap();
        let right = r.compose(&s.compose(&t).unwrap()).unwrap();
        prop_assert!(eq(&left, &right));
    }

    #[test]
    fn pseudoinverse_is_an_everywhere_defined_operator(seed: u64, h in 1..6usize, k in 1..6usize, gd in 0..12usize, f in flavor()) {
        let t = relation(seed, h, k, gd, f);
        let dagger = t.mp().unwrap();
        prop_assert!(dagger.is_operator());
        prop_assert_eq!(dagger.domain().dim(), k);
        prop_assert!(eq(&t.compose(&dagger).unwrap().compose(&t).unwrap(), &t));
    }

    #[test]
    fn file_round_trip_is_exact(seed: u64, h in 0..6usize, k in 0..6usize, gd in 0..12usize, named: bool) {
        let t = relation(seed, h.max(1), k, gd, RelationFlavor::Generic);
        let file = RelationFile::from_relation(&t, named.then_some("p"));
        let back = RelationFile::parse(&file.to_text()).unwrap();
        prop_assert_eq!(&back.generators, t.graph().basis());
        prop_assert_eq!(back.name.as_deref(), named.then_some("p"));
        prop_assert!(eq(&back.to_relation().unwrap(), &t));
    }

    #[test]
    fn parser_never_panics(text in "(linrel 1\n)?((dim_h|dim_k|gen|tol|name|@x|#) [ -~]{0,30}\n){0,6}") {
        let _ = RelationFile::parse(&text);
    }
}
