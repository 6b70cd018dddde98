use num_bigint::BigInt;
use num_rational::BigRational;
use parity_groups::abelian::{chart, membership, IntegerVector, RationalVector, Sublattice};
use parity_groups::group::{closure, Caps};
use parity_groups::lie::{
    bracket_closure, factor_monomial, generator_set, is_bracket_closed, AlgebraKind, RationalMatrix, TwoByTwo,
};
use parity_groups::{ParityKind, PartitionSpec, Sign, SignedPermutation};
use proptest::prelude::*;

fn signed_perm(n: usize) -> impl Strategy<Value = SignedPermutation> {
    (Just((0..n).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(any::<bool>(), n)).prop_map(
        |(images, signs)| {
            let signs = signs.into_iter().map(|b| if b { Sign::Minus } else { Sign::Plus }).collect();
            SignedPermutation::new(images, signs).unwrap()
        },
    )
}

fn pair_of_degree() -> impl Strategy<Value = (SignedPermutation, SignedPermutation)> {
    (1usize..=8).prop_flat_map(|n| (signed_perm(n), signed_perm(n)))
}

fn partition() -> impl Strategy<Value = PartitionSpec> {
    prop::collection::vec(1usize..=3, 1..=4).prop_map(|sizes| PartitionSpec::from_sizes(&sizes).unwrap())
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-40i64..=40, 1i64..=12).prop_map(|(p, q)| BigRational::new(p.into(), q.into()))
}

fn point(n: usize) -> impl Strategy<Value = RationalVector> {
    prop::collection::vec(rational(), n).prop_map(RationalVector)
}

/// An element of `JZ^n`: integers with even sum inside each block.
fn lattice_vector(j: &PartitionSpec) -> impl Strategy<Value = IntegerVector> {
    let blocks = j.blocks().to_vec();
    let n = j.degree();
    prop::collection::vec(-9i64..=9, n).prop_map(move |mut v| {
        for b in &blocks {
            let s: i64 = b.iter().map(|&a| v[a]).sum();
            if s.rem_euclid(2) == 1 {
                v[b[0]] += 1;
            }
        }
        IntegerVector(v.into_iter().map(BigInt::from).collect())
    })
}

proptest! {
    #[test]
    fn parities_are_homomorphisms((g, h) in pair_of_degree()) {
        let gh = g.compose(&h).unwrap();
        for kind in ParityKind::ALL {
            prop_assert_eq!(gh.parity(kind), g.parity(kind) * h.parity(kind));
        }
    }

    #[test]
    fn text_form_round_trips(g in (1usize..=12).prop_flat_map(signed_perm)) {
        prop_assert_eq!(g.to_string().parse::<SignedPermutation>().unwrap(), g.clone());
        prop_assert_eq!(SignedPermutation::from_matrix(&g.to_matrix()).unwrap(), g);
    }

    #[test]
    fn decomposition_recomposes(g in (1usize..=10).prop_flat_map(signed_perm)) {
        let (x, y) = g.decompose();
        prop_assert_eq!(x.compose(&y).unwrap(), g.clone());
        prop_assert!(g.compose(&g.inverse()).unwrap().is_identity());
    }

    #[test]
    fn closure_ignores_generator_order(
        gens in (2usize..=4).prop_flat_map(|n| prop::collection::vec(signed_perm(n), 1..=3)),
        seed in any::<u64>(),
    ) {
        let mut shuffled = gens.clone();
        let k = shuffled.len();
        shuffled.rotate_left((seed as usize) % k);
        shuffled.reverse();
        let caps = Caps::default();
        prop_assert_eq!(closure(&gens, &caps).unwrap(), closure(&shuffled, &caps).unwrap());
    }

    #[test]
    fn chart_kills_the_sublattice(
        (j, x, z) in partition().prop_flat_map(|j| {
            let n = j.degree();
            (Just(j.clone()), point(n), lattice_vector(&j))
        })
    ) {
        prop_assert!(membership(&z, &Sublattice::J(j.clone())).unwrap());
        let shifted = x.add(&z.to_rational()).unwrap();
        prop_assert_eq!(chart(&shifted, &j).unwrap(), chart(&x, &j).unwrap());
    }

    #[test]
    fn chart_is_additive(
        (j, x, y) in partition().prop_flat_map(|j| {
            let n = j.degree();
            (Just(j), point(n), point(n))
        })
    ) {
        let lhs = chart(&x.add(&y).unwrap(), &j).unwrap();
        let rhs = chart(&x, &j).unwrap().add(&chart(&y, &j).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn algebras_are_closed_and_commutative(
        kind in prop_oneof![Just(AlgebraKind::A), Just(AlgebraKind::B), Just(AlgebraKind::C)],
        (x, y, u, v) in (rational(), rational(), rational(), rational()),
    ) {
        let a = TwoByTwo::new(kind, x, y);
        let b = TwoByTwo::new(kind, u, v);
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.to_matrix(), a.to_matrix().mul(&b.to_matrix()).unwrap());
        prop_assert_eq!(&ab, &b.mul(&a).unwrap());
        prop_assert_eq!(ab.det(), a.det() * b.det());
        prop_assert_eq!(a.add(&b).unwrap().to_matrix(), a.to_matrix().add(&b.to_matrix()).unwrap());
    }

    #[test]
    fn det_kernels_are_groups(
        kind in prop_oneof![Just(AlgebraKind::B), Just(AlgebraKind::C)],
        s in -20i64..=20,
        t in -20i64..=20,
    ) {
        // rational points on x² ± y² = 1 from a rational parameter
        let r = |s: i64| {
            let t = BigRational::new(s.into(), 7.into());
            let one = BigRational::from_integer(1.into());
            let two = BigRational::from_integer(2.into());
            match kind {
                AlgebraKind::C => {
                    let d = &one + &t * &t;
                    TwoByTwo::new(kind, (&one - &t * &t) / &d, &two * &t / &d)
                }
                _ => {
                    let d = &one - &t * &t;
                    TwoByTwo::new(kind, (&one + &t * &t) / &d, &two * &t / &d)
                }
            }
        };
        prop_assume!(s.abs() != 7 && t.abs() != 7);
        let (a, b) = (r(s), r(t));
        prop_assert!(a.det_kernel_member().unwrap() && b.det_kernel_member().unwrap());
        prop_assert!(a.mul(&b).unwrap().det_kernel_member().unwrap());
        prop_assert!(a.inverse().unwrap().det_kernel_member().unwrap());
    }

    #[test]
    fn monomial_factorization_round_trips(
        (g, d) in (1usize..=6).prop_flat_map(|n| {
            (signed_perm(n), prop::collection::vec((1i64..=30, 1i64..=9), n))
        })
    ) {
        let n = g.degree();
        let mut m = RationalMatrix::zeros(n);
        for j in 0..n {
            let v = BigRational::new(d[j].0.into(), d[j].1.into());
            let v = if g.sign(j) == Sign::Minus { -v } else { v };
            m.set(g.image(j), j, v);
        }
        let f = factor_monomial(&m).unwrap();
        prop_assert_eq!(&f.permutation, &g);
        prop_assert_eq!(f.reconstruct(), m);
    }

    #[test]
    fn closure_dimension_ignores_generator_order(j in partition(), seed in any::<u64>()) {
        prop_assume!(j.degree() >= 2 && j.degree() <= 6);
        let gens = generator_set(&j, true);
        let mut shuffled = gens.clone();
        let k = shuffled.len();
        shuffled.rotate_left((seed as usize) % k);
        shuffled.swap(0, k - 1);
        let a = bracket_closure(&gens).unwrap();
        let b = bracket_closure(&shuffled).unwrap();
        prop_assert_eq!(&a.basis, &b.basis);
        prop_assert!(is_bracket_closed(&a).unwrap());
    }

    #[test]
    fn parsers_never_panic(text in "\\PC{0,40}") {
        let _ = text.parse::<SignedPermutation>();
        let _ = text.parse::<PartitionSpec>();
        let _ = text.parse::<RationalVector>();
        let _ = serde_json::from_str::<RationalMatrix>(&text);
        let _ = serde_json::from_str::<parity_groups::lie::ComplexMatrix>(&text);
        let _ = serde_json::from_str::<parity_groups::abelian::Chart>(&text);
    }

    #[test]
    fn structured_parser_inputs_never_panic(
        images in prop::collection::vec(0usize..20, 0..8),
        signs in prop::collection::vec(-3i32..=3, 0..8),
    ) {
        let text = format!(
            "π:[{}];ε:[{}]",
            images.iter().map(ToString::to_string).collect::<Vec<_>>().join(","),
            signs.iter().map(ToString::to_string).collect::<Vec<_>>().join(","),
        );
        let _ = text.parse::<SignedPermutation>();
        let sizes = images.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        let _ = sizes.parse::<PartitionSpec>();
    }
}

#[test]
fn single_blocks_give_antisymmetric_algebras() {
    for n in 2..=5 {
        let j = PartitionSpec::from_sizes(&[n]).unwrap();
        let b = bracket_closure(&generator_set(&j, true)).unwrap();
        assert_eq!(b.dimension(), n * (n - 1) / 2);
        assert!(b.basis.iter().all(RationalMatrix::is_antisymmetric));
    }
}
