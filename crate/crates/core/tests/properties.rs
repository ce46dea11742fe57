//! Randomized algebraic invariants of the Hecke and Ext-algebras.

use heckext::exec::Exec;
use heckext::ext_iwahori::{self, CenterLabel, ExtElt, ExtKey};
use heckext::ext_spherical::{self, SphericalExtElt};
use heckext::hecke::{self, HeckeElt, Level, LevelPair};
use heckext::{ExtendedWeylElt, Fp, WeylElt};
use proptest::prelude::*;

const P: u32 = 5;

fn fp() -> Fp {
    Fp::new(P)
}

fn weyl(max_len: u64) -> impl Strategy<Value = WeylElt> {
    let all = WeylElt::up_to_length(max_len);
    (0..all.len()).prop_map(move |i| all[i])
}

fn ext_weyl(max_len: u64) -> impl Strategy<Value = ExtendedWeylElt> {
    let all = ExtendedWeylElt::up_to_length(max_len, P - 1);
    (0..all.len()).prop_map(move |i| all[i])
}

fn elt_at(level: Level, max_len: u64) -> impl Strategy<Value = HeckeElt> {
    let f = fp();
    let keys: Vec<ExtendedWeylElt> = match level {
        Level::I => ExtendedWeylElt::up_to_length(max_len, P - 1),
        Level::J => WeylElt::up_to_length(max_len).into_iter().map(|w| ExtendedWeylElt::lift(w, P - 1)).collect(),
        Level::K => WeylElt::up_to_length(max_len)
            .into_iter()
            .filter(|w| w.in_kdk())
            .map(|w| ExtendedWeylElt::lift(w, P - 1))
            .collect(),
    };
    prop::collection::vec((0..keys.len(), 0..P), 1..4).prop_map(move |terms| {
        let mut out = HeckeElt::zero(level, f);
        for (i, c) in terms {
            out.add_term(keys[i], c);
        }
        out
    })
}

fn level() -> impl Strategy<Value = Level> {
    prop_oneof![Just(Level::I), Just(Level::J), Just(Level::K)]
}

fn ext_key(max_len: u64) -> impl Strategy<Value = ExtKey> {
    let all = ExtKey::up_to_length(max_len, None);
    (0..all.len()).prop_map(move |i| all[i])
}

fn ext_elt(max_len: u64) -> impl Strategy<Value = ExtElt> {
    let f = fp();
    prop::collection::vec((ext_key(max_len), 0..P), 1..4).prop_map(move |terms| {
        let mut out = ExtElt::zero(f);
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn pro_p_product_is_associative(a in ext_weyl(8), b in ext_weyl(8), c in ext_weyl(8)) {
        let f = fp();
        let (a, b, c) = (HeckeElt::basis(Level::I, f, a), HeckeElt::basis(Level::I, f, b), HeckeElt::basis(Level::I, f, c));
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn hecke_product_is_associative_at_every_level(
        (a, b, c) in level().prop_flat_map(|l| (elt_at(l, 6), elt_at(l, 6), elt_at(l, 6)))
    ) {
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn trivial_character_is_multiplicative(
        (a, b) in level().prop_flat_map(|l| (elt_at(l, 6), elt_at(l, 6)))
    ) {
        let f = fp();
        prop_assert_eq!(hecke::chi_triv(&a.mul(&b).unwrap()), f.mul(hecke::chi_triv(&a), hecke::chi_triv(&b)));
    }

    #[test]
    fn anti_involution_reverses_products(
        (a, b) in level().prop_flat_map(|l| (elt_at(l, 6), elt_at(l, 6)))
    ) {
        let lhs = hecke::anti_involution(&a.mul(&b).unwrap());
        let rhs = hecke::anti_involution(&b).mul(&hecke::anti_involution(&a)).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(hecke::anti_involution(&hecke::anti_involution(&a)), a);
    }

    #[test]
    fn c_after_r_is_index_squared(pair in prop::sample::select(LevelPair::ALL.to_vec()), seed in any::<u64>()) {
        let f = fp();
        let w = WeylElt::up_to_length(8)[(seed % 17) as usize];
        let w = if pair.upper == Level::K { w.kdk_rep() } else { w };
        let a = HeckeElt::tau(pair.upper, f, w);
        let idx = pair.index(f);
        let cr = hecke::map_c(pair, &hecke::map_r(pair, &a).unwrap()).unwrap();
        prop_assert_eq!(cr, a.scale(f.mul(idx, idx)));
    }

    #[test]
    fn c_is_invariant_under_idempotent_sandwich(pair in prop::sample::select(LevelPair::ALL.to_vec()), x in ext_weyl(8)) {
        let f = fp();
        let a = match pair.lower {
            Level::I => HeckeElt::basis(Level::I, f, x),
            _ => HeckeElt::tau(Level::J, f, x.base()),
        };
        let e = hecke::idempotent(pair, f);
        let eae = e.mul(&a).unwrap().mul(&e).unwrap();
        prop_assert_eq!(hecke::map_c(pair, &eae).unwrap(), hecke::map_c(pair, &a).unwrap());
    }

    #[test]
    fn trivial_characters_agree_across_levels(pair in prop::sample::select(LevelPair::ALL.to_vec()), w in weyl(8)) {
        let f = fp();
        let a = HeckeElt::tau(pair.upper, f, if pair.upper == Level::K { w.kdk_rep() } else { w });
        let r = hecke::map_r(pair, &a).unwrap();
        prop_assert_eq!(f.mul(hecke::chi_triv(&r), f.inv(pair.index(f))), hecke::chi_triv(&a));
    }

    #[test]
    fn ext_product_is_associative(a in ext_elt(4), b in ext_elt(4), c in ext_elt(4)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn ext_product_respects_degree(a in ext_key(6), b in ext_key(6)) {
        let f = fp();
        let prod = ExtElt::from_key(f, a).mul(&ExtElt::from_key(f, b));
        let d = a.degree() + b.degree();
        prop_assert!(prod.degrees().iter().all(|&e| e == d));
    }

    #[test]
    fn ext_anti_involution_is_graded_anti_multiplicative(a in ext_key(6), b in ext_key(6)) {
        prop_assume!(a.degree() <= 1 && b.degree() <= 1);
        let f = fp();
        let (x, y) = (ExtElt::from_key(f, a), ExtElt::from_key(f, b));
        let prod = x.mul(&y);
        if let Ok(lhs) = ext_iwahori::anti_involution_partial(&prod) {
            let jx = ext_iwahori::anti_involution_partial(&x).unwrap();
            let jy = ext_iwahori::anti_involution_partial(&y).unwrap();
            let sign = if a.degree() * b.degree() == 1 { f.neg(1) } else { 1 };
            prop_assert_eq!(lhs, jy.mul(&jx).scale(sign));
        }
    }

    #[test]
    fn degree_zero_embedding_is_multiplicative(u in weyl(6), v in weyl(6)) {
        let f = fp();
        let (a, b) = (HeckeElt::tau(Level::J, f, u), HeckeElt::tau(Level::J, f, v));
        prop_assert_eq!(ExtElt::from_hecke(&a.mul(&b).unwrap()), ExtElt::from_hecke(&a).mul(&ExtElt::from_hecke(&b)));
    }

    #[test]
    fn beta_and_psi_bases_round_trip(a in ext_elt(6)) {
        let f = fp();
        let two = a.component(2);
        prop_assert_eq!(ext_iwahori::from_beta(f, &ext_iwahori::to_beta(&two).unwrap()), two);
        let three = a.component(3);
        prop_assert_eq!(ext_iwahori::from_psi(f, &ext_iwahori::to_psi(&three).unwrap()), three);
    }

    #[test]
    fn squeeze_is_multiplicative(i in 0usize..24, j in 0usize..24) {
        let f = fp();
        let labels = CenterLabel::all_predicted(7);
        let (a, b) = (labels[i % labels.len()].element(f), labels[j % labels.len()].element(f));
        let ex = Exec::Sequential;
        let lhs = ext_spherical::squeeze(&a.mul(&b), ex).unwrap();
        let rhs = ext_spherical::ek_mul(&ext_spherical::squeeze(&a, ex).unwrap(), &ext_spherical::squeeze(&b, ex).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn squeeze_is_unital() {
    let f = fp();
    let one = ext_spherical::squeeze(&ExtElt::one(f), Exec::default()).unwrap();
    assert_eq!(one, SphericalExtElt::one(f));
    assert_eq!(ExtElt::tau(f, WeylElt::ONE), ExtElt::one(f));
}
