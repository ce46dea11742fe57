//! Property tests for the oracle's arithmetic.

use heckext_oracle::exact::{cartan_invariant, random_k, QpMat};
use heckext_oracle::mat::Mat;
use heckext_oracle::pattern::Pattern;
use heckext_oracle::ring::{El, ResidueRing};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ring() -> ResidueRing {
    ResidueRing::new(5, 2, 3).unwrap()
}

fn el() -> impl Strategy<Value = El> {
    (0u32..125, 0u32..125).prop_map(|(a, b)| El([a, b]))
}

proptest! {
    #[test]
    fn units_invert(a in el()) {
        let r = ring();
        match r.inv(a) {
            Some(b) => prop_assert_eq!(r.mul(a, b), r.one()),
            None => prop_assert!(!r.is_unit(a)),
        }
    }

    #[test]
    fn distributive(a in el(), b in el(), c in el()) {
        let r = ring();
        prop_assert_eq!(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
    }

    #[test]
    fn pattern_groups_are_closed(x in el(), y in el(), z in el(), w in el()) {
        let r = ring();
        let pat = Pattern::l();
        let g = Mat::upper(&r, r.mul_p_pow(x, 2)).mul(&r, &Mat::lower(&r, y));
        let h = Mat::torus(&r, r.add(r.one(), r.mul_p_pow(z, 1))).mul(&r, &Mat::lower(&r, w));
        prop_assert!(pat.contains(&r, &g) && pat.contains(&r, &h));
        prop_assert!(pat.contains(&r, &g.mul(&r, &h)));
        prop_assert!(pat.contains(&r, &g.inv(&r)));
        prop_assert_eq!(g.mul(&r, &g.inv(&r)), Mat::identity(&r));
    }

    #[test]
    fn cartan_is_k_biinvariant(seed in any::<u64>(), n in 0i64..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (k1, k2) = (random_k(5, &mut rng), random_k(5, &mut rng));
        let g = k1.mul(&QpMat::theta(5, n)).mul(&k2);
        prop_assert_eq!(cartan_invariant(&g).unwrap(), n as u32);
    }
}
