//! Degree-zero Hecke algebras of SL₂(ℚₚ) over 𝔽ₚ (so q = p):
//! the pro-p Iwahori algebra H, the Iwahori algebra H_J and the spherical
//! algebra H_K, with the maps R and C between levels.
//!
//! Every basis symbol is an [`ExtendedWeylElt`] with torus order p − 1; the
//! J- and K-levels only use torus part 0, and K-level symbols are the
//! minimal double coset representatives 1, s₀θⁿ (n ≥ 1).

use std::collections::BTreeMap;
use std::fmt;

use crate::weyl::{ExtendedWeylElt, Gen, WeylElt};
use crate::{Error, Fp};

/// I (pro-p Iwahori), J (Iwahori) or K (maximal compact SL₂(ℤₚ)).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    I,
    J,
    K,
}

impl Level {
    pub fn name(self) -> &'static str {
        match self {
            Level::I => "pro_p",
            Level::J => "iwahori",
            Level::K => "spherical",
        }
    }
}

/// An inclusion U ⊆ V of levels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LevelPair {
    pub lower: Level,
    pub upper: Level,
}

impl LevelPair {
    pub const IJ: LevelPair = LevelPair { lower: Level::I, upper: Level::J };
    pub const IK: LevelPair = LevelPair { lower: Level::I, upper: Level::K };
    pub const JK: LevelPair = LevelPair { lower: Level::J, upper: Level::K };
    pub const ALL: [LevelPair; 3] = [Self::IJ, Self::IK, Self::JK];

    /// [V:U] mod p: [J:I] = q − 1 ≡ −1, [K:I] = (q+1)(q−1)... ≡ −1, [K:J] = q + 1 ≡ 1.
    pub fn index(self, f: Fp) -> u32 {
        match (self.lower, self.upper) {
            (Level::J, Level::K) => 1,
            _ => f.neg(1),
        }
    }

    /// [V_w : U_w] mod p for the lower-level symbol `w`.
    pub fn local_index(self, f: Fp, w: WeylElt) -> u32 {
        match (self.lower, self.upper) {
            (Level::I, Level::J) => f.neg(1),
            (Level::I, Level::K) => {
                if w.in_kdk() {
                    f.neg(1)
                } else {
                    0
                }
            }
            _ => u32::from(w.in_kdk()),
        }
    }
}

impl fmt::Display for LevelPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?},{:?})", self.lower, self.upper)
    }
}

/// A finitely supported 𝔽ₚ-combination of double coset symbols at one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElt {
    level: Level,
    field: Fp,
    terms: BTreeMap<ExtendedWeylElt, u32>,
}

impl HeckeElt {
    pub fn zero(level: Level, field: Fp) -> Self {
        HeckeElt { level, field, terms: BTreeMap::new() }
    }

    pub fn one(level: Level, field: Fp) -> Self {
        Self::tau(level, field, WeylElt::ONE)
    }

    /// τ_w̃ for an extended element (pro-p level only for nonzero torus parts).
    pub fn basis(level: Level, field: Fp, key: ExtendedWeylElt) -> Self {
        assert_eq!(key.order(), field.p() - 1, "torus order must be p - 1");
        match level {
            Level::I => {}
            Level::J => assert_eq!(key.torus(), 0, "Iwahori symbols carry no torus part"),
            Level::K => {
                assert_eq!(key.torus(), 0, "spherical symbols carry no torus part");
                assert!(key.base().in_kdk(), "{} is not a minimal K-double coset representative", key.base());
            }
        }
        let mut e = Self::zero(level, field);
        e.terms.insert(key, 1);
        e
    }

    /// τ_w with the canonical lift of `w`.
    pub fn tau(level: Level, field: Fp, w: WeylElt) -> Self {
        Self::basis(level, field, ExtendedWeylElt::lift(w, field.p() - 1))
    }

    /// τ_t for the torus element diag(gᵏ, g⁻ᵏ).
    pub fn torus(field: Fp, k: u32) -> Self {
        Self::basis(Level::I, field, ExtendedWeylElt::torus_elt(k, field.p() - 1))
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn order(&self) -> u32 {
        self.field.p() - 1
    }

    pub fn terms(&self) -> impl Iterator<Item = (ExtendedWeylElt, u32)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn coeff(&self, key: ExtendedWeylElt) -> u32 {
        self.terms.get(&key).copied().unwrap_or(0)
    }

    pub fn coeff_w(&self, w: WeylElt) -> u32 {
        self.coeff(ExtendedWeylElt::lift(w, self.order()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_length(&self) -> u64 {
        self.terms.keys().map(|k| k.length()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, key: ExtendedWeylElt, c: u32) {
        let f = self.field;
        let c = c % f.p();
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(key).or_insert(0);
        *entry = f.add(*entry, c);
        if *entry == 0 {
            self.terms.remove(&key);
        }
    }

    fn check_same(&self, other: &Self) -> Result<(), Error> {
        if self.level != other.level {
            return Err(Error::AlgebraMismatch { expected: self.level.name(), found: other.level.name() });
        }
        assert_eq!(self.field, other.field, "elements over different fields");
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(k, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = self.field;
        let mut out = Self::zero(self.level, f);
        for (k, v) in self.terms() {
            out.add_term(k, f.mul(v, c % f.p()));
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(self.field.p() - 1)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        self.check_same(other)?;
        let f = self.field;
        let mut out = Self::zero(self.level, f);
        match self.level {
            Level::J => {
                for (u, a) in self.terms() {
                    for (v, b) in other.terms() {
                        let (neg, w) = iwahori_basis_mul(u.base(), v.base());
                        let c = f.mul(a, b);
                        out.add_term(ExtendedWeylElt::lift(w, self.order()), if neg { f.neg(c) } else { c });
                    }
                }
            }
            Level::I => {
                for (x, a) in self.terms() {
                    for (y, b) in other.terms() {
                        let c = f.mul(a, b);
                        for (z, d) in pro_p_basis_mul(f, x, y) {
                            out.add_term(z, f.mul(c, d));
                        }
                    }
                }
            }
            Level::K => {
                let prod = poly_mul(f, &self.to_t_poly(), &other.to_t_poly());
                out = Self::from_t_poly(f, &prod);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.level, self.field);
        for _ in 0..n {
            acc = acc.mul(self).expect("same level");
        }
        acc
    }

    /// Coefficients of a spherical element as a polynomial in T, using
    /// τ^K_1 = 1 and τ^K_{s₀θⁿ} = Tⁿ − Tⁿ⁻¹.
    pub fn to_t_poly(&self) -> Vec<u32> {
        assert_eq!(self.level, Level::K);
        let f = self.field;
        let deg = self.terms.keys().map(|k| k.base().n().max(0) as usize).max().unwrap_or(0);
        let mut poly = vec![0u32; deg + 1];
        for (k, c) in self.terms() {
            let n = if k.base().is_one() { 0 } else { k.base().n() as usize };
            poly[n] = f.add(poly[n], c);
            if n > 0 {
                poly[n - 1] = f.sub(poly[n - 1], c);
            }
        }
        poly
    }

    /// Inverse of [`to_t_poly`](Self::to_t_poly): Tⁿ = 1 + Σ_{k=1}^{n} τ^K_{s₀θᵏ}.
    pub fn from_t_poly(f: Fp, poly: &[u32]) -> Self {
        let mut out = Self::zero(Level::K, f);
        let mut tail = 0u32;
        for n in (0..poly.len()).rev() {
            tail = f.add(tail, poly[n]);
            let w = if n == 0 { WeylElt::ONE } else { WeylElt::s0_theta(n as i64) };
            out.add_term(ExtendedWeylElt::lift(w, f.p() - 1), tail);
        }
        out
    }
}

fn poly_mul(f: Fp, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

/// τ_s·τ_w in H_J: τ_{sw} on an ascent, −τ_w on a descent.
pub fn iwahori_left_letter(s: Gen, w: WeylElt) -> (bool, WeylElt) {
    if w.left_ascent(s) {
        (false, s.elt().mul(w))
    } else {
        (true, w)
    }
}

/// τ_u·τ_v = ±τ_z in H_J; returns (sign is negative, z).
pub fn iwahori_basis_mul(u: WeylElt, v: WeylElt) -> (bool, WeylElt) {
    let mut neg = false;
    let mut z = v;
    for &s in u.reduced_word().iter().rev() {
        let (n, w) = iwahori_left_letter(s, z);
        neg ^= n;
        z = w;
    }
    (neg, z)
}

/// τ_x̃·τ_ỹ in H. Left letters act by τ_s̃τ_ỹ = τ_{s̃ỹ} on an ascent and by
/// τ_s̃τ_ỹ = −e_J τ_ỹ = Σ_t τ_{tỹ} on a descent.
pub fn pro_p_basis_mul(f: Fp, x: ExtendedWeylElt, y: ExtendedWeylElt) -> BTreeMap<ExtendedWeylElt, u32> {
    let order = x.order();
    let (word, t) = x.factor();
    let mut cur: BTreeMap<ExtendedWeylElt, u32> = BTreeMap::new();
    cur.insert(ExtendedWeylElt::torus_elt(t, order).mul(y), 1);
    for &s in word.iter().rev() {
        let sl = ExtendedWeylElt::simple(s, order);
        let mut next: BTreeMap<ExtendedWeylElt, u32> = BTreeMap::new();
        let mut push = |k: ExtendedWeylElt, c: u32| {
            let e = next.entry(k).or_insert(0);
            *e = f.add(*e, c);
        };
        for (z, c) in cur {
            if z.base().left_ascent(s) {
                push(sl.mul(z), c);
            } else {
                for k in 0..order {
                    push(ExtendedWeylElt::torus_elt(k, order).mul(z), c);
                }
            }
        }
        next.retain(|_, c| *c != 0);
        cur = next;
    }
    cur
}

/// e_{U,V} = (1/[V:U])·char_V, an idempotent of the lower algebra.
pub fn idempotent(pair: LevelPair, f: Fp) -> HeckeElt {
    let one = HeckeElt::one(pair.upper, f);
    map_r(pair, &one).expect("upper level").scale(f.inv(pair.index(f)))
}

/// The lower-level symbols making up the upper double coset of `key`.
fn refine(pair: LevelPair, key: ExtendedWeylElt) -> Vec<ExtendedWeylElt> {
    let order = key.order();
    let w = key.base();
    let k_orbit = || {
        let s0 = WeylElt::S0;
        let mut v = vec![w, s0.mul(w), w.mul(s0), s0.mul(w).mul(s0)];
        v.sort();
        v.dedup();
        v
    };
    let torus_orbit = |ws: Vec<WeylElt>| {
        ws.into_iter().flat_map(|w| (0..order).map(move |t| ExtendedWeylElt::new(t, w, order))).collect()
    };
    match (pair.lower, pair.upper) {
        (Level::I, Level::J) => torus_orbit(vec![w]),
        (Level::I, Level::K) => torus_orbit(k_orbit()),
        _ => k_orbit().into_iter().map(|w| ExtendedWeylElt::lift(w, order)).collect(),
    }
}

/// The upper-level symbol of the double coset containing the lower symbol `key`.
fn coarsen(pair: LevelPair, key: ExtendedWeylElt) -> ExtendedWeylElt {
    let w = match pair.upper {
        Level::K => key.base().kdk_rep(),
        _ => key.base(),
    };
    ExtendedWeylElt::lift(w, key.order())
}

fn expect_level(a: &HeckeElt, level: Level) -> Result<(), Error> {
    if a.level != level {
        return Err(Error::AlgebraMismatch { expected: level.name(), found: a.level.name() });
    }
    Ok(())
}

/// C_{U,V}: τ^U_g ↦ [V_g:U_g]·τ^V_g.
pub fn map_c(pair: LevelPair, a: &HeckeElt) -> Result<HeckeElt, Error> {
    expect_level(a, pair.lower)?;
    let f = a.field;
    let mut out = HeckeElt::zero(pair.upper, f);
    for (k, c) in a.terms() {
        out.add_term(coarsen(pair, k), f.mul(c, pair.local_index(f, k.base())));
    }
    Ok(out)
}

/// R_{V,U}: the V-biinvariant function τ^V_g = char_{VgV} viewed as a
/// U-biinvariant function, i.e. the sum of the U-double cosets inside VgV.
pub fn map_r(pair: LevelPair, a: &HeckeElt) -> Result<HeckeElt, Error> {
    expect_level(a, pair.upper)?;
    let f = a.field;
    let mut out = HeckeElt::zero(pair.lower, f);
    for (k, c) in a.terms() {
        for r in refine(pair, k) {
            out.add_term(r, c);
        }
    }
    Ok(out)
}

/// The trivial character χ_triv(τ_g) = [U : U_g] mod p.
pub fn chi_triv(a: &HeckeElt) -> u32 {
    let f = a.field;
    match a.level {
        Level::I | Level::J => a.terms().filter(|(k, _)| k.length() == 0).fold(0, |acc, (_, c)| f.add(acc, c)),
        Level::K => {
            let r = map_r(LevelPair::JK, a).expect("spherical element");
            f.mul(chi_triv(&r), f.inv(LevelPair::JK.index(f)))
        }
    }
}

/// 𝒥(τ_g) = τ_{g⁻¹}.
pub fn anti_involution(a: &HeckeElt) -> HeckeElt {
    let mut out = HeckeElt::zero(a.level, a.field);
    for (k, c) in a.terms() {
        let inv = k.inv();
        let key = match a.level {
            Level::I => inv,
            Level::J => ExtendedWeylElt::lift(inv.base(), inv.order()),
            Level::K => ExtendedWeylElt::lift(inv.base().kdk_rep(), inv.order()),
        };
        out.add_term(key, c);
    }
    out
}

/// ζ_J = (τ_{s₀}+1)(τ_{s₁}+1) + τ_{s₁}τ_{s₀}.
pub fn zeta(f: Fp) -> HeckeElt {
    let one = HeckeElt::one(Level::J, f);
    let t0 = HeckeElt::tau(Level::J, f, WeylElt::S0);
    let t1 = HeckeElt::tau(Level::J, f, WeylElt::S1);
    let a = t0.add(&one).unwrap().mul(&t1.add(&one).unwrap()).unwrap();
    a.add(&t1.mul(&t0).unwrap()).unwrap()
}

/// T = 1 + τ^K_{s₀θ}, the image of ζ_J in H_K.
pub fn satake_t(f: Fp) -> HeckeElt {
    HeckeElt::one(Level::K, f).add(&HeckeElt::tau(Level::K, f, WeylElt::s0_theta(1))).unwrap()
}

/// Tⁿ in the τ^K-basis.
pub fn satake_t_power(f: Fp, n: u32) -> HeckeElt {
    satake_t(f).pow(n)
}

/// Expands an element of any level into the pro-p basis as an
/// I-biinvariant function (char_{JvJ} = Σ_t τ_{tṽ}).
pub fn to_pro_p(a: &HeckeElt) -> HeckeElt {
    match a.level {
        Level::I => a.clone(),
        Level::J => map_r(LevelPair::IJ, a).unwrap(),
        Level::K => map_r(LevelPair::IK, a).unwrap(),
    }
}

/// Pointwise product of I-biinvariant functions (coefficientwise in the pro-p basis).
pub fn pointwise_product(a: &HeckeElt, b: &HeckeElt) -> HeckeElt {
    let (a, b) = (to_pro_p(a), to_pro_p(b));
    let f = a.field;
    let mut out = HeckeElt::zero(Level::I, f);
    for (k, c) in a.terms() {
        out.add_term(k, f.mul(c, b.coeff(k)));
    }
    out
}

/// Pointwise product of two elements of the same level, in that level's basis.
pub fn pointwise_same_level(a: &HeckeElt, b: &HeckeElt) -> Result<HeckeElt, Error> {
    a.check_same(b)?;
    let f = a.field;
    let mut out = HeckeElt::zero(a.level, f);
    for (k, c) in a.terms() {
        out.add_term(k, f.mul(c, b.coeff(k)));
    }
    Ok(out)
}

impl fmt::Display for HeckeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms().map(|(k, c)| format!("{}*tau[{}]", self.field.signed(c), k)).collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Fp {
        Fp::new(5)
    }

    #[test]
    fn iwahori_examples() {
        let f = f5();
        let t = |w| HeckeElt::tau(Level::J, f, w);
        let s01 = WeylElt::theta(1);
        let s10 = WeylElt::theta(-1);
        assert_eq!(t(WeylElt::S0).mul(&t(WeylElt::S1)).unwrap(), t(s01));
        assert_eq!(t(WeylElt::S0).mul(&t(WeylElt::S0)).unwrap(), t(WeylElt::S0).neg());
        assert_eq!(t(s01).mul(&t(s10)).unwrap(), t(WeylElt::s0_theta(-1)).neg());
    }

    #[test]
    fn pro_p_quadratic() {
        let f = f5();
        let s0 = HeckeElt::tau(Level::I, f, WeylElt::S0);
        let e_j = idempotent(LevelPair::IJ, f);
        assert_eq!(s0.mul(&s0).unwrap(), e_j.mul(&s0).unwrap().neg());
    }

    #[test]
    fn idempotents() {
        let f = f5();
        for pair in LevelPair::ALL {
            let e = idempotent(pair, f);
            assert_eq!(e.mul(&e).unwrap(), e, "{pair}");
            assert_eq!(chi_triv(&e), 1);
        }
        let ejk = idempotent(LevelPair::JK, f);
        let expect = HeckeElt::tau(Level::J, f, WeylElt::S0).add(&HeckeElt::one(Level::J, f)).unwrap();
        assert_eq!(ejk, expect);
        let eik = idempotent(LevelPair::IK, f);
        let eij = idempotent(LevelPair::IJ, f);
        assert_eq!(eik.mul(&eij).unwrap(), eik);
    }

    #[test]
    fn map_c_examples() {
        let f = f5();
        let w = WeylElt::from_word(&[Gen::S1, Gen::S0, Gen::S1]);
        let a = HeckeElt::tau(Level::I, f, w);
        assert_eq!(map_c(LevelPair::IK, &a).unwrap(), HeckeElt::tau(Level::K, f, w).neg());
        let s1 = HeckeElt::tau(Level::I, f, WeylElt::S1);
        assert_eq!(map_c(LevelPair::IK, &s1).unwrap(), HeckeElt::tau(Level::K, f, WeylElt::s0_theta(1)).neg());
        let th = HeckeElt::tau(Level::J, f, WeylElt::theta(1));
        assert!(map_c(LevelPair::JK, &th).unwrap().is_zero());
        assert!(map_c(LevelPair::JK, &s1).is_err());
    }

    #[test]
    fn map_r_examples() {
        let f = f5();
        let one_k = HeckeElt::one(Level::K, f);
        assert_eq!(map_r(LevelPair::JK, &one_k).unwrap(), idempotent(LevelPair::JK, f));
        let tj = HeckeElt::tau(Level::J, f, WeylElt::S0);
        let e = idempotent(LevelPair::IJ, f);
        let ts = HeckeElt::tau(Level::I, f, WeylElt::S0);
        let rhs = e.mul(&ts).unwrap().mul(&e).unwrap().neg();
        assert_eq!(map_r(LevelPair::IJ, &tj).unwrap(), rhs);
        let tk = HeckeElt::tau(Level::K, f, WeylElt::s0_theta(1));
        assert_eq!(map_c(LevelPair::JK, &map_r(LevelPair::JK, &tk).unwrap()).unwrap(), tk);
    }

    #[test]
    fn zeta_and_satake() {
        let f = f5();
        let t = |w| HeckeElt::tau(Level::J, f, w);
        let expanded = [WeylElt::theta(1), WeylElt::theta(-1), WeylElt::S0, WeylElt::S1, WeylElt::ONE]
            .into_iter()
            .fold(HeckeElt::zero(Level::J, f), |acc, w| acc.add(&t(w)).unwrap());
        assert_eq!(zeta(f), expanded);
        let z = zeta(f);
        assert_eq!(z.mul(&t(WeylElt::s0_theta(1))).unwrap(), t(WeylElt::s0_theta(2)));
        assert_eq!(satake_t_power(f, 1), satake_t(f));
        let diff = satake_t_power(f, 2).sub(&satake_t_power(f, 1)).unwrap();
        assert_eq!(diff, HeckeElt::tau(Level::K, f, WeylElt::s0_theta(2)));
    }

    #[test]
    fn chi_and_involution() {
        let f = f5();
        assert_eq!(chi_triv(&HeckeElt::tau(Level::J, f, WeylElt::S0)), 0);
        assert_eq!(chi_triv(&HeckeElt::one(Level::J, f)), 1);
        assert_eq!(chi_triv(&satake_t(f)), 1);
        let a = HeckeElt::tau(Level::J, f, WeylElt::theta(1));
        assert_eq!(anti_involution(&a), HeckeElt::tau(Level::J, f, WeylElt::theta(-1)));
        let s0 = HeckeElt::tau(Level::J, f, WeylElt::S0);
        assert_eq!(anti_involution(&s0), s0);
    }

    #[test]
    fn projection_formula_instance() {
        let f = f5();
        let a = HeckeElt::tau(Level::I, f, WeylElt::S0);
        let b = HeckeElt::tau(Level::J, f, WeylElt::S0);
        let lhs = map_c(LevelPair::IJ, &pointwise_product(&a, &b)).unwrap();
        let rhs = pointwise_same_level(&map_c(LevelPair::IJ, &a).unwrap(), &b).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn t_poly_roundtrip() {
        let f = f5();
        for n in 0..6 {
            let w = if n == 0 { WeylElt::ONE } else { WeylElt::s0_theta(n) };
            let a = HeckeElt::tau(Level::K, f, w);
            assert_eq!(HeckeElt::from_t_poly(f, &a.to_t_poly()), a);
        }
    }
}
