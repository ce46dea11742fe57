//! Indices [V_w : U_w] mod p for U ⊆ V among I ⊆ J ⊆ K, where
//! G_w = G ∩ ẇGẇ⁻¹.

use heckext::exec::Exec;
use heckext::hecke::{Level, LevelPair};
use heckext::WeylElt;

use crate::closure::enumerate;
use crate::pattern::Pattern;
use crate::ring::ResidueRing;
use crate::Error;

pub fn level_pattern(level: Level) -> Pattern {
    match level {
        Level::I => Pattern::i(),
        Level::J => Pattern::j(),
        Level::K => Pattern::k(),
    }
}

/// (V_w, U_w) in the balanced frame of V_w.
pub fn local_groups(w: WeylElt, pair: LevelPair) -> (Pattern, Pattern) {
    let upper = level_pattern(pair.upper).at(w);
    let lower = level_pattern(pair.lower).at(w);
    let k = upper.balancing_shift();
    (upper.shift(k), lower.shift(k))
}

fn check_precision(w: WeylElt, ring: &ResidueRing) -> Result<(), Error> {
    if (ring.m() as u64) < w.length() + 2 {
        return Err(Error::Config(format!("precision {} is below ℓ({w}) + 2", ring.m())));
    }
    Ok(())
}

fn ratio_mod_p(upper: u128, lower: u128, p: u32) -> Result<u32, Error> {
    if lower == 0 || !upper.is_multiple_of(lower) {
        return Err(Error::NotClosed(format!("{lower} does not divide {upper}")));
    }
    Ok(((upper / lower) % p as u128) as u32)
}

/// [V_w : U_w] mod p from the orders of the finite images.
pub fn index_mod_p(w: WeylElt, pair: LevelPair, ring: ResidueRing) -> Result<u32, Error> {
    check_precision(w, &ring)?;
    let (upper, lower) = local_groups(w, pair);
    ratio_mod_p(upper.order(&ring)?, lower.order(&ring)?, ring.p())
}

/// As [`index_mod_p`], enumerating both groups.
pub fn index_mod_p_enumerated(
    w: WeylElt,
    pair: LevelPair,
    ring: ResidueRing,
    cap: u128,
    exec: Exec,
) -> Result<u32, Error> {
    check_precision(w, &ring)?;
    let (upper, lower) = local_groups(w, pair);
    let a = enumerate(ring, upper, cap, exec)?.order() as u128;
    let b = enumerate(ring, lower, cap, exec)?.order() as u128;
    ratio_mod_p(a, b, ring.p())
}
