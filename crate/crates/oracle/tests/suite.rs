//! Group-theoretic inputs at p = 5, checked by brute force.

use heckext::exec::Exec;
use heckext::hecke::LevelPair;
use heckext::{Fp, Gen, WeylElt};
use heckext_oracle::closure::{enumerate, sanity_check, DEFAULT_CAP};
use heckext_oracle::exact::{cartan_samples, double_coset_count};
use heckext_oracle::frattini::{frattini_quotient, h1_dimension, stability};
use heckext_oracle::index::{index_mod_p, index_mod_p_enumerated};
use heckext_oracle::pattern::{GroupDescriptor, Pattern};
use heckext_oracle::ring::ResidueRing;
use heckext_oracle::transfer::{transfer_map, Transfer};

fn ring(f: usize, m: u32) -> ResidueRing {
    ResidueRing::new(5, f, m).unwrap()
}

fn rank(name: &str, f: usize, m: u32) -> u32 {
    let d: GroupDescriptor = name.parse().unwrap();
    h1_dimension(&d, ring(f, m), DEFAULT_CAP, Exec::default()).unwrap()
}

#[test]
fn enumeration_orders() {
    let ex = Exec::default();
    assert_eq!(enumerate(ring(1, 1), Pattern::k(), DEFAULT_CAP, ex).unwrap().order(), 120);
    assert_eq!(enumerate(ring(1, 2), Pattern::j(), DEFAULT_CAP, ex).unwrap().order(), 2500);
    assert_eq!(enumerate(ring(1, 2), Pattern::i(), DEFAULT_CAP, ex).unwrap().order(), 625);
}

#[test]
fn subgroup_sanity() {
    let ex = Exec::default();
    for (p, m) in [(Pattern::k(), 2), (Pattern::l(), 3), (Pattern::j_plus(2), 3), (Pattern::k_theta(1), 3)] {
        let g = enumerate(ring(1, m), p.balanced(), DEFAULT_CAP, ex).unwrap();
        sanity_check(&g, 2000, 7).unwrap();
    }
}

#[test]
fn frattini_suite() {
    assert_eq!(rank("J", 1, 3), 0);
    assert_eq!(rank("K", 1, 2), 0);
    assert_eq!(rank("Ktheta(1)", 1, 3), 1);
    assert_eq!(rank("Ktheta(2)", 1, 3), 1);
    assert_eq!(rank("L", 1, 3), 3);
    let ex = Exec::default();
    for w in WeylElt::up_to_length(2).into_iter().filter(|w| w.length() >= 1) {
        let q = frattini_quotient(&GroupDescriptor::j_w(w), ring(1, 3), DEFAULT_CAP, ex).unwrap();
        assert_eq!(q.invariants(), vec![5], "J_{w}");
    }
}

#[test]
fn unramified_quadratic_case() {
    assert_eq!(rank("L", 2, 2), 6);
    assert_eq!(rank("J+(1)", 2, 2), 2);
}

#[test]
fn precision_stability() {
    let ex = Exec::default();
    for (name, m, other) in [("K", 2, 3), ("J+(2)", 3, 4), ("Ktheta(2)", 3, 4), ("L", 3, 4)] {
        let d: GroupDescriptor = name.parse().unwrap();
        let s = stability(&d, ring(1, m), other, DEFAULT_CAP, ex).unwrap();
        assert!(s.stable(), "{name}: {s:?}");
    }
}

/// (s, w) with ℓ(sw) = ℓ(w) − 1 and 1 ≤ ℓ(w) ≤ 2.
fn descents() -> Vec<(Gen, WeylElt)> {
    let mut out = Vec::new();
    for w in WeylElt::up_to_length(2).into_iter().filter(|w| w.length() >= 1) {
        for s in [Gen::S0, Gen::S1] {
            if s.elt().mul(w).length() < w.length() {
                out.push((s, w));
            }
        }
    }
    out
}

#[test]
fn transfer_to_conjugate_is_zero() {
    let ex = Exec::default();
    let pairs = descents();
    assert_eq!(pairs.len(), 4);
    for (s, w) in pairs {
        let sup = Pattern::j().at(s.elt().mul(w));
        let sub = Pattern::j().at(w).conj(s.elt());
        let rep = transfer_map(ring(1, 3), sub, sup, DEFAULT_CAP, ex).unwrap();
        assert!(rep.is_zero() && rep.transversal_independent, "{s:?} {w}: {rep:?}");
        if w.length() == 2 {
            assert_eq!((rep.index, rep.source_rank, rep.target_rank), (5, 1, 1));
        }
    }
}

#[test]
fn transfer_from_iwahori_inverts() {
    let ex = Exec::default();
    for w in [WeylElt::S0, WeylElt::S1] {
        let sup = Pattern::j().at(w).balanced();
        let sub = sup.pro_p();
        let t = Transfer::new(ring(1, 3), sub, sup, DEFAULT_CAP, ex).unwrap();
        assert_eq!(t.transversal.len(), 4);
        assert!(t.inverts_basis());
        assert!(t.report().unwrap().transversal_independent);
    }
}

#[test]
fn indices_match_the_algebraic_rule() {
    let f = Fp::new(5);
    for w in WeylElt::up_to_length(4) {
        for pair in LevelPair::ALL {
            let oracle = index_mod_p(w, pair, ring(1, 6)).unwrap();
            assert_eq!(oracle, pair.local_index(f, w), "{w} {pair}");
        }
    }
    for w in WeylElt::up_to_length(1) {
        for pair in LevelPair::ALL {
            let e = index_mod_p_enumerated(w, pair, ring(1, 3), DEFAULT_CAP, Exec::default()).unwrap();
            assert_eq!(e, pair.local_index(f, w), "{w} {pair}");
        }
    }
}

#[test]
fn double_cosets_and_cartan() {
    // For n = 1 the cosets (1 −y/p; 0 1) split by the square class of y:
    // right multiplication by (a b; c d) ∈ K_{θ⁻¹} sends y to y·d² mod p.
    let counts: Vec<usize> = (0..3).map(|n| double_coset_count(5, n).unwrap().double_cosets).collect();
    assert_eq!(counts, vec![1, 2, 1]);
    let inv = cartan_samples(5, 200, 2024).unwrap();
    assert!(inv.iter().all(|&n| n <= 2));
    assert!(inv.contains(&2));
}
