use std::sync::Arc;

use proptest::prelude::*;

use hhh::braid::BraidWord;
use hhh::complexes::ChainComplex;
use hhh::exactalg::{FpA, Rational, TriMono, TriSeries};
use hhh::hecke::{homfly, Homfly, Laurent2};
use hhh::pipeline::{compute_hhh, symmetry_involution, verify_euler, verify_symmetry, Arithmetic, HHHOptions};
use hhh::soergel::{BSBimodule, BimoduleCache, PolyRing};

/// Up to 3 strands and `max_len` letters.
fn braid_word(max_len: usize) -> impl Strategy<Value = BraidWord> {
    (1usize..=3).prop_flat_map(move |n| {
        let letter = if n == 1 {
            Just(0i32).boxed()
        } else {
            (1..n as i32).prop_flat_map(|i| prop_oneof![Just(i), Just(-i)]).boxed()
        };
        let len = if n == 1 { 0..=0 } else { 0..=max_len };
        prop::collection::vec(letter, len).prop_map(move |l| BraidWord::new(n, l).unwrap())
    })
}

fn bs_word(n: usize, max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1..n, 0..=max_len)
}

fn lift(h: &Homfly, top: u32) -> Laurent2 {
    h.numerator.mul(&Laurent2::delta().pow(top - h.delta_power))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn bott_samelson_invariants(w in bs_word(3, 3)) {
        let b = BSBimodule::<Rational>::bott_samelson(PolyRing::full(3), &w).unwrap();
        prop_assert!(b.check_invariants().is_ok());
        let r = BSBimodule::<Rational>::bott_samelson(PolyRing::reduced(3), &w).unwrap();
        prop_assert!(r.check_invariants().is_ok());
    }

    #[test]
    fn character_is_multiplicative(x in bs_word(3, 2), y in bs_word(3, 2)) {
        let ring = PolyRing::full(3);
        let bx = BSBimodule::<Rational>::bott_samelson(ring, &x).unwrap();
        let by = BSBimodule::<Rational>::bott_samelson(ring, &y).unwrap();
        let xy = bx.tensor(&by).unwrap();
        prop_assert_eq!(xy.character(), bx.character().mul(&by.character()));
    }

    #[test]
    fn rouquier_complexes_square_to_zero(w in braid_word(4)) {
        let cache = Arc::new(BimoduleCache::<FpA>::new(PolyRing::reduced(w.strands())));
        let c = ChainComplex::rouquier(cache, &w);
        prop_assert!(c.check_d_squared());
        let m = c.minimize();
        prop_assert!(m.check_d_squared());
        prop_assert_eq!(c.euler_character(), m.euler_character());
    }

    #[test]
    fn braid_times_inverse_is_the_unit(w in braid_word(3)) {
        let cache = Arc::new(BimoduleCache::<FpA>::new(PolyRing::reduced(w.strands())));
        let mut letters = w.letters().to_vec();
        letters.extend(w.inverse().letters());
        let c = ChainComplex::rouquier(cache.clone(), &BraidWord::new(w.strands(), letters).unwrap()).minimize();
        let unit = ChainComplex::unit(cache);
        let nonempty: Vec<_> = c.groups().iter().filter(|(_, v)| !v.is_empty()).collect();
        prop_assert_eq!(nonempty, unit.groups().iter().collect::<Vec<_>>());
    }

    #[test]
    fn homfly_skein_relation(w in braid_word(5), i in 1usize..3, sign in any::<bool>()) {
        prop_assume!(i < w.strands());
        let i = i as i32;
        let (mut plus, mut minus) = (w.letters().to_vec(), w.letters().to_vec());
        let pos = if sign { 0 } else { plus.len() };
        plus.insert(pos, i);
        minus.insert(pos, -i);
        let n = w.strands();
        let (p, m, z) = (homfly(&BraidWord::new(n, plus).unwrap()), homfly(&BraidWord::new(n, minus).unwrap()), homfly(&w));
        let top = p.delta_power.max(m.delta_power).max(z.delta_power + 1);
        let lhs = lift(&p, top).shift(-1, 0).sub(&lift(&m, top).shift(1, 0));
        prop_assert_eq!(lhs, lift(&z, top).mul(&Laurent2::delta()));
    }

    #[test]
    fn homfly_markov_and_mirror(w in braid_word(5)) {
        let h = homfly(&w);
        for v in w.markov_variants() {
            prop_assert_eq!(homfly(&v), h.clone());
        }
        prop_assert_eq!(homfly(&w.mirror()), h.invert());
    }

    #[test]
    fn symmetry_involution_is_an_involution(a in -5i32..5, t in -5i32..5, q in -5i32..5) {
        let m = TriMono::new(a, t, q);
        prop_assert_eq!(symmetry_involution(symmetry_involution(m)), m);
    }

    #[test]
    fn series_division_inverts_multiplication(terms in prop::collection::vec((0i32..3, -3i32..3, -4i32..6, -3i64..4), 0..6)) {
        let s = TriSeries::poly(&terms.iter().map(|&(a, t, q, c)| (TriMono::new(a, t, 2 * q), c)).collect::<Vec<_>>());
        let f = TriSeries::poly(&[(TriMono::ONE, 1), (TriMono::new(1, 0, 0), 1)]);
        prop_assert_eq!(s.mul(&f).divide_by_a_binomial(TriMono::ONE, 1).unwrap(), s);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    /// Euler characteristic against HOMFLY-PT and, for certified knots,
    /// the q ↦ t/q symmetry, on random short braids.
    #[test]
    fn random_closures(w in braid_word(4)) {
        let opts = HHHOptions { window: 16, arithmetic: Arithmetic::Modular, ..Default::default() };
        let r = compute_hhh(&w, &opts).unwrap();
        let e = verify_euler(&r);
        prop_assert!(e.holds, "{}: {:?}", w, e.first_difference);
        if r.stats.components == 1 && r.certified {
            prop_assert!(verify_symmetry(&r).unwrap().symmetric, "{}", w);
        }
        for v in w.markov_variants().into_iter().take(1) {
            let rv = compute_hhh(&v, &opts).unwrap();
            if r.stats.components == 1 && r.certified && rv.certified {
                prop_assert_eq!(&rv.reduced, &r.reduced);
            }
        }
    }
}
