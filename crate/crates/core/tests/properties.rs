use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tsct_core::cyclo::{Cyclotomic, ResidueSystem};
use tsct_core::gf::FieldTower;
use tsct_core::grp::{GroupTag, Sl2};

fn cyclotomic(conductors: &'static [u64]) -> impl Strategy<Value = Cyclotomic> {
    (prop::sample::select(conductors), prop::collection::vec((0i64..200, -6i64..=6), 0..5), 1i64..4).prop_map(
        |(m, terms, den)| {
            let mut x = Cyclotomic::zero();
            for (e, k) in terms {
                x = &x + &Cyclotomic::root(m, e).scale_int(k);
            }
            x.scale(num_rational::Rational64::new(1, den))
        },
    )
}

/// Two elements of `Q(ζ_15)` or two of `Q(ζ_17)`; at `q = 16, ℓ = 5` these are the split and nonsplit tori.
fn same_torus() -> impl Strategy<Value = (bool, Cyclotomic, Cyclotomic)> {
    any::<bool>().prop_flat_map(|split| {
        let m: &'static [u64] = if split { &[15] } else { &[17] };
        (Just(split), cyclotomic(m), cyclotomic(m))
    })
}

const MIXED: &[u64] = &[1, 3, 5, 7, 9, 15, 17, 63, 65];

proptest! {
    #[test]
    fn cyclotomic_ring_axioms(a in cyclotomic(MIXED), b in cyclotomic(MIXED), c in cyclotomic(MIXED)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Cyclotomic::one(), a.clone());
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert!((&a * &a.conj()).is_real());
    }

    #[test]
    fn galois_action_is_a_ring_map(a in cyclotomic(&[63]), b in cyclotomic(&[63]), k in prop::sample::select(vec![2i64, 4, 5, 8, 11, 62])) {
        prop_assert_eq!((&a * &b).galois(k), &a.galois(k) * &b.galois(k));
        prop_assert_eq!((&a + &b).galois(k), &a.galois(k) + &b.galois(k));
    }

    #[test]
    fn canonical_form_is_unique(a in cyclotomic(MIXED), b in cyclotomic(MIXED)) {
        // equal numbers have equal representations, whatever the route
        let s = &a + &b;
        prop_assert_eq!(&(&s - &b), &a);
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Cyclotomic>(&json).unwrap(), a);
    }

    #[test]
    fn reduction_mod_ell_is_a_ring_map((split, a, b) in same_torus()) {
        let sys = ResidueSystem::new(16, 5).unwrap();
        let field = if split { sys.split() } else { sys.nonsplit() };
        let c = |x: &Cyclotomic| field.reduce(x).unwrap().coefficients().to_vec();
        let (ra, rb) = (field.reduce(&a).unwrap(), field.reduce(&b).unwrap());
        prop_assert_eq!(c(&(&a * &b)), field.mul(&ra, &rb).coefficients().to_vec());
        prop_assert_eq!(c(&(&a + &b)), field.add(&ra, &rb).coefficients().to_vec());
        if split || a.conductor() > 1 {
            prop_assert_eq!(sys.reduce(&a).unwrap().coefficients().to_vec(), c(&a));
        }
    }

    #[test]
    fn finite_field_axioms(f in 2u32..=8, x in any::<u32>(), y in any::<u32>(), z in any::<u32>()) {
        let t = FieldTower::new(f).unwrap();
        let mask = t.q() - 1;
        let el = |v: u32, w: u32| t.ext(v & mask, w & mask);
        let (a, b, c) = (el(x, y), el(y, z), el(z, x));
        prop_assert_eq!(t.mul(a, b), t.mul(b, a));
        prop_assert_eq!(t.mul(t.mul(a, b), c), t.mul(a, t.mul(b, c)));
        prop_assert_eq!(t.mul(a, t.add(b, c)), t.add(t.mul(a, b), t.mul(a, c)));
        prop_assert_eq!(t.frobenius(t.mul(a, b)), t.mul(t.frobenius(a), t.frobenius(b)));
        if !a.is_zero() {
            prop_assert_eq!(t.mul(a, t.inv(a).unwrap()), t.one(a.level()));
        }
    }
}

/// Class labels are conjugation invariants: 1000 random pairs `(x, y)`.
#[test]
fn classify_is_conjugation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for q in [16u64, 64] {
        let g = Sl2::from_q(q).unwrap();
        let elements = g.elements();
        for _ in 0..1000 {
            let x = elements[rng.gen_range(0..elements.len())];
            let y = elements[rng.gen_range(0..elements.len())];
            assert_eq!(g.classify(&g.conjugate(&x, &y)).unwrap(), g.classify(&x).unwrap());
        }
    }
}

/// Inside `N` and `N'`, classification is invariant under the subgroup only.
#[test]
fn local_classify_is_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let g = Sl2::from_q(32).unwrap();
    for group in [GroupTag::N, GroupTag::NPrime] {
        let h = g.elements_of(group);
        for _ in 0..500 {
            let x = h[rng.gen_range(0..h.len())];
            let y = h[rng.gen_range(0..h.len())];
            assert_eq!(g.classify_in(group, &g.conjugate(&x, &y)).unwrap(), g.classify_in(group, &x).unwrap());
        }
    }
}
