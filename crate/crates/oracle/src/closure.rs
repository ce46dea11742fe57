//! Enumeration of finite subgroups of SL₂(𝔒/𝔐ᵐ) by breadth-first closure.
//!
//! A subgroup inside a pattern group is stored as a bitset over a dense
//! index of the pattern's image: (a, b/π^vb, c/π^vc) when a is a unit, with
//! a second chart (a, c, d) for the non-unit-a elements of K.

use std::sync::atomic::{AtomicU64, Ordering};

use heckext::exec::Exec;

use crate::mat::Mat;
use crate::pattern::{Diag, Pattern};
use crate::ring::ResidueRing;
use crate::Error;

/// Default cap on enumerated group orders.
pub const DEFAULT_CAP: u128 = 20_000_000;

const CHUNK: usize = 2048;

/// Dense indexing of the image of a pattern group.
#[derive(Clone, Copy, Debug)]
pub struct Indexer {
    ring: ResidueRing,
    pattern: Pattern,
    kb: u32,
    kc: u32,
    nb: u64,
    nc: u64,
    na: u64,
    two_charts: bool,
}

impl Indexer {
    pub fn new(ring: ResidueRing, pattern: Pattern) -> Self {
        let m = ring.m();
        let kb = m.saturating_sub(pattern.vb.max(0) as u32);
        let kc = m.saturating_sub(pattern.vc.max(0) as u32);
        Indexer {
            ring,
            pattern,
            kb,
            kc,
            nb: ring.size_at(kb),
            nc: ring.size_at(kc),
            na: ring.size(),
            two_charts: pattern.diag == Diag::Integral,
        }
    }

    pub fn len(&self) -> u64 {
        let base = self.na * self.nb * self.nc;
        if self.two_charts {
            2 * base
        } else {
            base
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, x: &Mat) -> u64 {
        let r = &self.ring;
        let m = r.m();
        if r.is_unit(x.a) {
            let ia = r.encode(x.a, m);
            let ib = r.encode(r.div_p_pow(x.b, m - self.kb), self.kb);
            let ic = r.encode(r.div_p_pow(x.c, m - self.kc), self.kc);
            (ia * self.nb + ib) * self.nc + ic
        } else {
            debug_assert!(self.two_charts);
            let base = self.na * self.nb * self.nc;
            base + (r.encode(x.a, m) * self.na + r.encode(x.c, m)) * self.na + r.encode(x.d, m)
        }
    }

    pub fn decode(&self, idx: u64) -> Mat {
        let r = &self.ring;
        let m = r.m();
        let base = self.na * self.nb * self.nc;
        if idx < base {
            let ic = idx % self.nc;
            let ib = (idx / self.nc) % self.nb;
            let ia = idx / (self.nc * self.nb);
            let a = r.decode(ia, m);
            let b = r.mul_p_pow(r.decode(ib, self.kb), m - self.kb);
            let c = r.mul_p_pow(r.decode(ic, self.kc), m - self.kc);
            let d = r.mul(r.add(r.one(), r.mul(b, c)), r.inv(a).expect("chart 0 has unit a"));
            Mat::new(a, b, c, d)
        } else {
            let i = idx - base;
            let id = i % self.na;
            let ic = (i / self.na) % self.na;
            let ia = i / (self.na * self.na);
            let (a, c, d) = (r.decode(ia, m), r.decode(ic, m), r.decode(id, m));
            let b = r.mul(r.sub(r.mul(a, d), r.one()), r.inv(c).expect("chart 1 has unit c"));
            Mat::new(a, b, c, d)
        }
    }
}

/// A bitset with atomic insertion, shared by the parallel closure.
pub struct AtomicBitset {
    words: Vec<AtomicU64>,
}

impl AtomicBitset {
    pub fn new(len: u64) -> Self {
        AtomicBitset { words: (0..len.div_ceil(64)).map(|_| AtomicU64::new(0)).collect() }
    }

    /// Sets bit i; true if it was previously clear.
    pub fn insert(&self, i: u64) -> bool {
        let mask = 1u64 << (i % 64);
        self.words[(i / 64) as usize].fetch_or(mask, Ordering::Relaxed) & mask == 0
    }

    pub fn contains(&self, i: u64) -> bool {
        self.words[(i / 64) as usize].load(Ordering::Relaxed) >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> u64 {
        self.words.iter().map(|w| w.load(Ordering::Relaxed).count_ones() as u64).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(i, w)| {
            let mut bits = w.load(Ordering::Relaxed);
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros() as u64;
                bits &= bits - 1;
                Some(i as u64 * 64 + t)
            })
        })
    }
}

/// A subgroup of the image of a pattern group, stored as a bitset.
pub struct Subgroup {
    pub indexer: Indexer,
    pub bits: AtomicBitset,
    pub gens: Vec<Mat>,
    order: u64,
}

impl Subgroup {
    pub fn ring(&self) -> &ResidueRing {
        &self.indexer.ring
    }

    pub fn pattern(&self) -> Pattern {
        self.indexer.pattern
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn contains(&self, x: &Mat) -> bool {
        self.indexer.pattern.contains(&self.indexer.ring, x) && self.bits.contains(self.indexer.index(x))
    }

    pub fn elements(&self) -> impl Iterator<Item = Mat> + '_ {
        self.bits.iter().map(|i| self.indexer.decode(i))
    }

    /// Extends the subgroup by new generators.
    pub fn extend(&mut self, new: &[Mat], exec: Exec) -> Result<(), Error> {
        self.gens.extend_from_slice(new);
        let frontier: Vec<Mat> = self.elements().collect();
        self.order += grow(&self.indexer, &self.bits, &self.gens, frontier, exec)?;
        Ok(())
    }
}

/// Level-synchronous BFS: right-multiplies the frontier by the generators
/// until nothing new appears. Returns the number of elements added.
fn grow(ix: &Indexer, bits: &AtomicBitset, gens: &[Mat], mut frontier: Vec<Mat>, exec: Exec) -> Result<u64, Error> {
    let r = ix.ring;
    let mut added = 0u64;
    while !frontier.is_empty() {
        let chunks: Vec<&[Mat]> = frontier.chunks(CHUNK).collect();
        let next: Vec<Result<Vec<Mat>, Error>> = exec.map(&chunks, |chunk| {
            let mut out = Vec::new();
            for x in chunk.iter() {
                for g in gens {
                    let y = x.mul(&r, g);
                    if !ix.pattern.contains(&r, &y) {
                        return Err(Error::NotClosed(format!("{} leaves {}", y.display(&r), ix.pattern)));
                    }
                    if bits.insert(ix.index(&y)) {
                        out.push(y);
                    }
                }
            }
            Ok(out)
        });
        frontier = Vec::new();
        for part in next {
            frontier.extend(part?);
        }
        added += frontier.len() as u64;
    }
    Ok(added)
}

/// The subgroup generated by `gens` inside the image of `pattern`.
pub fn closure(ring: ResidueRing, pattern: Pattern, gens: &[Mat], cap: u128, exec: Exec) -> Result<Subgroup, Error> {
    let predicted = pattern.order(&ring)?;
    if predicted > cap {
        return Err(Error::CapExceeded { predicted, cap });
    }
    let indexer = Indexer::new(ring, pattern);
    let bits = AtomicBitset::new(indexer.len());
    let id = Mat::identity(&ring);
    bits.insert(indexer.index(&id));
    let added = grow(&indexer, &bits, gens, vec![id], exec)?;
    Ok(Subgroup { indexer, bits, gens: gens.to_vec(), order: 1 + added })
}

/// The normal closure in ⟨ambient⟩ of the subgroup generated by `seeds`.
pub fn normal_closure(
    ring: ResidueRing,
    pattern: Pattern,
    seeds: &[Mat],
    ambient: &[Mat],
    cap: u128,
    exec: Exec,
) -> Result<Subgroup, Error> {
    let mut n = closure(ring, pattern, seeds, cap, exec)?;
    loop {
        let mut missing: Vec<Mat> = Vec::new();
        for x in &n.gens {
            for g in ambient {
                let y = x.conj(&ring, g);
                if !n.contains(&y) && !missing.contains(&y) {
                    missing.push(y);
                }
            }
        }
        if missing.is_empty() {
            return Ok(n);
        }
        n.extend(&missing, exec)?;
    }
}

/// Enumerates the image of a pattern group from its generators and checks
/// the count against the order formula.
pub fn enumerate(ring: ResidueRing, pattern: Pattern, cap: u128, exec: Exec) -> Result<Subgroup, Error> {
    let gens = pattern.generators(&ring)?;
    let g = closure(ring, pattern, &gens, cap, exec)?;
    let predicted = pattern.order(&ring)?;
    if g.order() as u128 != predicted {
        return Err(Error::NotClosed(format!("generators of {pattern} reach {} of {predicted} elements", g.order())));
    }
    Ok(g)
}

/// Groups up to this order are checked exhaustively by [`sanity_check`].
pub const EXHAUSTIVE_LIMIT: u64 = 100_000;

/// Checks that the enumerated set is closed under inverses and products.
///
/// Up to [`EXHAUSTIVE_LIMIT`] every element's inverse and every product
/// x·g with g a generator is tested, which is closure under all products
/// because the generators generate. Above it, `samples` random pairs are
/// tested instead. Returns the number of checks made.
pub fn sanity_check(g: &Subgroup, samples: usize, seed: u64) -> Result<u64, Error> {
    use rand::{Rng, SeedableRng};
    let r = *g.ring();
    let fail = |what: &str, x: &Mat| Error::NotClosed(format!("{what} {} is missing", x.display(&r)));
    let mut checks = 0u64;
    if g.order() <= EXHAUSTIVE_LIMIT {
        for x in g.elements() {
            let inv = x.inv(&r);
            if !g.contains(&inv) {
                return Err(fail("inverse", &inv));
            }
            for h in &g.gens {
                let y = x.mul(&r, h);
                if !g.contains(&y) {
                    return Err(fail("product", &y));
                }
            }
            checks += 1 + g.gens.len() as u64;
        }
        return Ok(checks);
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let len = g.indexer.len();
    let mut sample = || loop {
        let i = rng.random_range(0..len);
        if g.bits.contains(i) {
            return g.indexer.decode(i);
        }
    };
    for _ in 0..samples {
        let (x, y) = (sample(), sample());
        let (xy, inv) = (x.mul(&r, &y), x.inv(&r));
        if !g.contains(&xy) {
            return Err(fail("product", &xy));
        }
        if !g.contains(&inv) {
            return Err(fail("inverse", &inv));
        }
        checks += 2;
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sanity_on_small_and_large_groups() {
        let r = ResidueRing::new(5, 1, 2).unwrap();
        let l = enumerate(r, Pattern::l(), DEFAULT_CAP, Exec::default()).unwrap();
        assert!(sanity_check(&l, 0, 1).unwrap() > l.order());
        let r3 = ResidueRing::new(5, 1, 3).unwrap();
        let j = enumerate(r3, Pattern::j(), DEFAULT_CAP, Exec::default()).unwrap();
        assert_eq!(sanity_check(&j, 500, 1).unwrap(), 1000);
    }

    #[test]
    fn index_round_trips() {
        for (pattern, m) in [(Pattern::k(), 2), (Pattern::j(), 2), (Pattern::l(), 3), (Pattern::j_minus(2), 3)] {
            let r = ResidueRing::new(5, 1, m).unwrap();
            let ix = Indexer::new(r, pattern);
            let g = enumerate(r, pattern, DEFAULT_CAP, Exec::default()).unwrap();
            for x in g.elements() {
                assert!(pattern.contains(&r, &x));
                assert_eq!(ix.decode(ix.index(&x)), x);
            }
        }
    }

    #[test]
    fn small_orders() {
        let r1 = ResidueRing::new(5, 1, 1).unwrap();
        assert_eq!(enumerate(r1, Pattern::k(), DEFAULT_CAP, Exec::default()).unwrap().order(), 120);
        let r2 = ResidueRing::new(5, 1, 2).unwrap();
        assert_eq!(enumerate(r2, Pattern::j(), DEFAULT_CAP, Exec::default()).unwrap().order(), 2500);
        assert_eq!(enumerate(r2, Pattern::i(), DEFAULT_CAP, Exec::default()).unwrap().order(), 625);
    }

    #[test]
    fn cap_is_enforced() {
        let r = ResidueRing::new(5, 1, 3).unwrap();
        assert!(matches!(enumerate(r, Pattern::k(), 1000, Exec::default()), Err(Error::CapExceeded { .. })));
    }
}
