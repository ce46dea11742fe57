//! The graded Ext-algebra E_J* of SL₂(ℚₚ), p ≥ 5, on the bases
//! τ_w (degree 0), x_w (degree 1, ℓ(w) ≥ 1), α_w (degree 2, ℓ(w) ≥ 1) and
//! φ_w (degree 3).
//!
//! Products are generated by the following basis rules, with s a simple
//! reflection and "ascent" meaning ℓ(sw) = ℓ(w) + 1:
//!
//! * τ_s·x_w = x_{sw} on an ascent, −x_w otherwise (E¹ ≅ F¹H_J as bimodules);
//! * τ_s·α_w = 0 on an ascent, α_{sw} − α_w on a descent with ℓ(w) ≥ 2, −α_w
//!   on a descent with ℓ(w) = 1;
//! * τ_s·φ_w = 0 on an ascent, φ_{sw} − φ_w on a descent;
//! * x_v·x_w = 0 unless v = w = s_ε, and x_{s_ε}² = −α_{s_ε};
//! * x_{s_ε}·α_w = −τ_{s_ε}·φ_w and α_w·x_{s_ε} = −φ_w·τ_{s_ε};
//!
//! and the mirror-image rules on the right. Longer x_v are peeled to a
//! generator: x_v = τ_u·x_{s_ε} with v = u·s_ε, hence x_v·α_w = −τ_v·φ_w.

use std::collections::BTreeMap;
use std::fmt;

use crate::exec::Exec;
use crate::field::{kernel, Echelon};
use crate::hecke::{self, HeckeElt, Level};
use crate::weyl::{Gen, WeylElt};
use crate::{Error, Fp};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Tau,
    X,
    Alpha,
    Phi,
}

impl Kind {
    pub const ALL: [Kind; 4] = [Kind::Tau, Kind::X, Kind::Alpha, Kind::Phi];

    pub fn degree(self) -> u8 {
        self as u8
    }

    pub fn from_degree(d: u8) -> Option<Kind> {
        Self::ALL.get(d as usize).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::Tau => "tau",
            Kind::X => "x",
            Kind::Alpha => "alpha",
            Kind::Phi => "phi",
        }
    }

    pub fn from_name(s: &str) -> Option<Kind> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    /// x and α have no length-zero symbol.
    pub fn admits(self, w: WeylElt) -> bool {
        !(matches!(self, Kind::X | Kind::Alpha) && w.is_one())
    }
}

/// A basis symbol of E_J*.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtKey {
    pub kind: Kind,
    pub w: WeylElt,
}

impl ExtKey {
    pub fn new(kind: Kind, w: WeylElt) -> Self {
        assert!(kind.admits(w), "{}_1 is not a basis symbol", kind.name());
        ExtKey { kind, w }
    }

    pub fn degree(self) -> u8 {
        self.kind.degree()
    }

    pub fn length(self) -> u64 {
        self.w.length()
    }

    /// All symbols with ℓ(w) ≤ `max_len`, optionally restricted to one degree.
    pub fn up_to_length(max_len: u64, degree: Option<u8>) -> Vec<ExtKey> {
        let mut out = Vec::new();
        for kind in Kind::ALL {
            if degree.is_some_and(|d| d != kind.degree()) {
                continue;
            }
            for w in WeylElt::up_to_length(max_len) {
                if kind.admits(w) {
                    out.push(ExtKey { kind, w });
                }
            }
        }
        out
    }
}

impl fmt::Display for ExtKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.kind.name(), self.w)
    }
}

/// A finitely supported element of E_J*.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtElt {
    field: Fp,
    terms: BTreeMap<ExtKey, u32>,
}

type Sparse = Vec<(ExtKey, u32)>;

impl ExtElt {
    pub fn zero(field: Fp) -> Self {
        ExtElt { field, terms: BTreeMap::new() }
    }

    pub fn basis(field: Fp, kind: Kind, w: WeylElt) -> Self {
        Self::from_key(field, ExtKey::new(kind, w))
    }

    pub fn from_key(field: Fp, key: ExtKey) -> Self {
        let mut e = Self::zero(field);
        e.terms.insert(key, 1);
        e
    }

    pub fn one(field: Fp) -> Self {
        Self::basis(field, Kind::Tau, WeylElt::ONE)
    }

    pub fn tau(field: Fp, w: WeylElt) -> Self {
        Self::basis(field, Kind::Tau, w)
    }

    pub fn x(field: Fp, w: WeylElt) -> Self {
        Self::basis(field, Kind::X, w)
    }

    pub fn alpha(field: Fp, w: WeylElt) -> Self {
        Self::basis(field, Kind::Alpha, w)
    }

    pub fn phi(field: Fp, w: WeylElt) -> Self {
        Self::basis(field, Kind::Phi, w)
    }

    /// Embeds a degree-zero Hecke element.
    pub fn from_hecke(h: &HeckeElt) -> Self {
        assert_eq!(h.level(), Level::J);
        let mut e = Self::zero(h.field());
        for (k, c) in h.terms() {
            e.add_term(ExtKey::new(Kind::Tau, k.base()), c);
        }
        e
    }

    /// The bimodule isomorphism f: F¹H_J → E¹_J, τ_w ↦ x_w.
    pub fn f_map(h: &HeckeElt) -> Result<Self, Error> {
        assert_eq!(h.level(), Level::J);
        let mut e = Self::zero(h.field());
        for (k, c) in h.terms() {
            if k.base().is_one() {
                return Err(Error::Unsupported("f is only defined on F¹H_J".into()));
            }
            e.add_term(ExtKey::new(Kind::X, k.base()), c);
        }
        Ok(e)
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (ExtKey, u32)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn coeff(&self, key: ExtKey) -> u32 {
        self.terms.get(&key).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_length(&self) -> u64 {
        self.terms.keys().map(|k| k.length()).max().unwrap_or(0)
    }

    /// The set of degrees with a nonzero component.
    pub fn degrees(&self) -> Vec<u8> {
        let mut d: Vec<u8> = self.terms.keys().map(|k| k.degree()).collect();
        d.dedup();
        d
    }

    pub fn component(&self, degree: u8) -> Self {
        ExtElt {
            field: self.field,
            terms: self.terms.iter().filter(|(k, _)| k.degree() == degree).map(|(&k, &c)| (k, c)).collect(),
        }
    }

    pub fn add_term(&mut self, key: ExtKey, c: u32) {
        let f = self.field;
        let c = c % f.p();
        if c == 0 {
            return;
        }
        let e = self.terms.entry(key).or_insert(0);
        *e = f.add(*e, c);
        if *e == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(k, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = self.field;
        let mut out = Self::zero(f);
        for (k, v) in self.terms() {
            out.add_term(k, f.mul(v, c % f.p()));
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(self.field.p() - 1)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = self.field;
        let mut out = Self::zero(f);
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                let c = f.mul(x, y);
                for (k, d) in mul_basis(f, a, b) {
                    out.add_term(k, f.mul(c, d));
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(self.field), |acc, _| acc.mul(self))
    }

    /// a·b − b·a.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }
}

impl fmt::Display for ExtElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms().map(|(k, c)| format!("{}*{}", self.field.signed(c), k)).collect();
        f.write_str(&parts.join(" + "))
    }
}

fn push(out: &mut Sparse, key: ExtKey, c: u32) {
    out.push((key, c));
}

/// τ_s·(symbol).
fn left_letter(f: Fp, s: Gen, key: ExtKey) -> Sparse {
    let w = key.w;
    let mut out = Vec::new();
    let ascent = w.left_ascent(s);
    let sw = s.elt().mul(w);
    let neg1 = f.neg(1);
    match key.kind {
        Kind::Tau | Kind::X => {
            if ascent {
                push(&mut out, ExtKey { kind: key.kind, w: sw }, 1);
            } else {
                push(&mut out, key, neg1);
            }
        }
        Kind::Alpha => {
            if !ascent {
                if w.length() >= 2 {
                    push(&mut out, ExtKey { kind: Kind::Alpha, w: sw }, 1);
                }
                push(&mut out, key, neg1);
            }
        }
        Kind::Phi => {
            if !ascent {
                push(&mut out, ExtKey { kind: Kind::Phi, w: sw }, 1);
                push(&mut out, key, neg1);
            }
        }
    }
    out
}

/// (symbol)·τ_s, the mirror image of [`left_letter`].
fn right_letter(f: Fp, key: ExtKey, s: Gen) -> Sparse {
    let w = key.w;
    let mut out = Vec::new();
    let ascent = w.right_ascent(s);
    let ws = w.mul(s.elt());
    let neg1 = f.neg(1);
    match key.kind {
        Kind::Tau | Kind::X => {
            if ascent {
                push(&mut out, ExtKey { kind: key.kind, w: ws }, 1);
            } else {
                push(&mut out, key, neg1);
            }
        }
        Kind::Alpha => {
            if !ascent {
                if w.length() >= 2 {
                    push(&mut out, ExtKey { kind: Kind::Alpha, w: ws }, 1);
                }
                push(&mut out, key, neg1);
            }
        }
        Kind::Phi => {
            if !ascent {
                push(&mut out, ExtKey { kind: Kind::Phi, w: ws }, 1);
                push(&mut out, key, neg1);
            }
        }
    }
    out
}

fn collect(f: Fp, v: Sparse) -> Sparse {
    let mut m: BTreeMap<ExtKey, u32> = BTreeMap::new();
    for (k, c) in v {
        let e = m.entry(k).or_insert(0);
        *e = f.add(*e, c);
    }
    m.into_iter().filter(|&(_, c)| c != 0).collect()
}

/// τ_u·v for a sparse vector v.
fn left_tau(f: Fp, u: WeylElt, v: Sparse) -> Sparse {
    let mut cur = v;
    for &s in u.reduced_word().iter().rev() {
        let mut next = Vec::new();
        for (k, c) in cur {
            for (k2, d) in left_letter(f, s, k) {
                next.push((k2, f.mul(c, d)));
            }
        }
        cur = collect(f, next);
    }
    cur
}

/// v·τ_u for a sparse vector v.
fn right_tau(f: Fp, v: Sparse, u: WeylElt) -> Sparse {
    let mut cur = v;
    for &s in u.reduced_word().iter() {
        let mut next = Vec::new();
        for (k, c) in cur {
            for (k2, d) in right_letter(f, k, s) {
                next.push((k2, f.mul(c, d)));
            }
        }
        cur = collect(f, next);
    }
    cur
}

fn negate(f: Fp, v: Sparse) -> Sparse {
    v.into_iter().map(|(k, c)| (k, f.neg(c))).collect()
}

/// Product of two basis symbols.
pub fn mul_basis(f: Fp, a: ExtKey, b: ExtKey) -> Sparse {
    use Kind::*;
    match (a.kind, b.kind) {
        (Tau, _) => left_tau(f, a.w, vec![(b, 1)]),
        (_, Tau) => right_tau(f, vec![(a, 1)], b.w),
        (X, X) => {
            if a.w == b.w && a.w.length() == 1 {
                vec![(ExtKey::new(Alpha, a.w), f.neg(1))]
            } else {
                Vec::new()
            }
        }
        // x_v = τ_u·x_{s_ε} with v = u·s_ε, so x_v·α_w = τ_u·(−τ_{s_ε}·φ_w) = −τ_v·φ_w.
        (X, Alpha) => negate(f, left_tau(f, a.w, vec![(ExtKey::new(Phi, b.w), 1)])),
        (Alpha, X) => negate(f, right_tau(f, vec![(ExtKey::new(Phi, a.w), 1)], b.w)),
        _ => Vec::new(),
    }
}

/// For w ∈ W^ε (w ≠ 1) the index 1 − ε of the letter defining β_w and ψ_w.
fn beta_letter(w: WeylElt) -> Gen {
    assert!(!w.is_one());
    // w ∈ W^ε means ℓ(s_ε w) = ℓ(w)+1, i.e. w starts with s_{1−ε}.
    let eps = if w.in_w0() { Gen::S0 } else { Gen::S1 };
    eps.other()
}

/// β_w := τ_{s_{1−ε}}·α_w for w ∈ W^ε.
pub fn beta(f: Fp, w: WeylElt) -> ExtElt {
    let t = ExtElt::tau(f, beta_letter(w).elt());
    t.mul(&ExtElt::alpha(f, w))
}

/// ψ_w := τ_{s_{1−ε}}·φ_w for w ∈ W^ε, ℓ(w) ≥ 1.
pub fn psi(f: Fp, w: WeylElt) -> ExtElt {
    let t = ExtElt::tau(f, beta_letter(w).elt());
    t.mul(&ExtElt::phi(f, w))
}

/// Coordinates of a degree-2 element in the β-basis.
pub fn to_beta(a: &ExtElt) -> Result<BTreeMap<WeylElt, u32>, Error> {
    change_basis(a, Kind::Alpha, beta)
}

/// Coordinates of a degree-3 element in the basis {φ_1} ∪ {ψ_w}; φ_1 is
/// reported under the key 1.
pub fn to_psi(a: &ExtElt) -> Result<BTreeMap<WeylElt, u32>, Error> {
    change_basis(a, Kind::Phi, psi)
}

fn change_basis(a: &ExtElt, kind: Kind, new: fn(Fp, WeylElt) -> ExtElt) -> Result<BTreeMap<WeylElt, u32>, Error> {
    if a.degrees().iter().any(|&d| d != kind.degree()) {
        return Err(Error::Degree(format!("expected a pure degree-{} element", kind.degree())));
    }
    let f = a.field;
    let mut rest = a.clone();
    let mut coords = BTreeMap::new();
    // Each new basis vector is −(old symbol) plus strictly shorter terms.
    while let Some((&key, &c)) = rest.terms.iter().next_back() {
        if key.w.is_one() {
            coords.insert(WeylElt::ONE, c);
            rest.terms.remove(&key);
            continue;
        }
        let b = f.neg(c);
        coords.insert(key.w, b);
        rest = rest.sub(&new(f, key.w).scale(b));
    }
    Ok(coords)
}

pub fn from_beta(f: Fp, coords: &BTreeMap<WeylElt, u32>) -> ExtElt {
    coords.iter().fold(ExtElt::zero(f), |acc, (&w, &c)| acc.add(&beta(f, w).scale(c)))
}

pub fn from_psi(f: Fp, coords: &BTreeMap<WeylElt, u32>) -> ExtElt {
    coords.iter().fold(ExtElt::zero(f), |acc, (&w, &c)| {
        let v = if w.is_one() { ExtElt::phi(f, w) } else { psi(f, w) };
        acc.add(&v.scale(c))
    })
}

/// The duality pairings ⟨φ_w, τ_v⟩ = δ_{wv} and ⟨α_w, x_v⟩ = δ_{wv}.
pub fn pairing(a: &ExtElt, b: &ExtElt) -> Result<u32, Error> {
    let (da, db) = (a.degrees(), b.degrees());
    let ok = da.len() <= 1 && db.len() <= 1;
    let (d1, d2) = (da.first().copied().unwrap_or(0), db.first().copied().unwrap_or(0));
    if !ok || !(d1 + d2 == 3 || a.is_zero() || b.is_zero()) {
        return Err(Error::Degree(format!("cannot pair degrees {da:?} and {db:?}")));
    }
    let (hi, lo) = if d1 >= d2 { (a, b) } else { (b, a) };
    let f = a.field;
    let dual = |k: Kind| match k {
        Kind::Phi => Kind::Tau,
        Kind::Alpha => Kind::X,
        _ => k,
    };
    Ok(hi.terms().fold(0, |acc, (k, c)| {
        let other = lo.coeff(ExtKey { kind: dual(k.kind), w: k.w });
        f.add(acc, f.mul(c, other))
    }))
}

/// The anti-involution 𝒥 on degrees 0 and 1 and on span{α_{s₀}, α_{s₁}}:
/// τ_w ↦ τ_{w⁻¹}, x_w ↦ −x_{w⁻¹}, α_{s_ε} ↦ −α_{s_ε}.
pub fn anti_involution_partial(a: &ExtElt) -> Result<ExtElt, Error> {
    let f = a.field;
    let mut out = ExtElt::zero(f);
    for (k, c) in a.terms() {
        match k.kind {
            Kind::Tau => out.add_term(ExtKey::new(Kind::Tau, k.w.inv()), c),
            Kind::X => out.add_term(ExtKey::new(Kind::X, k.w.inv()), f.neg(c)),
            Kind::Alpha if k.w.length() == 1 => out.add_term(k, f.neg(c)),
            _ => return Err(Error::Unsupported(format!("𝒥 is not available on {k}"))),
        }
    }
    Ok(out)
}

/// Sum of the φ-coordinates of a degree-3 element.
pub fn s_top(a: &ExtElt) -> Result<u32, Error> {
    if a.degrees().iter().any(|&d| d != 3) {
        return Err(Error::Degree("s_top needs a degree-3 element".into()));
    }
    let f = a.field;
    Ok(a.terms().fold(0, |acc, (_, c)| f.add(acc, c)))
}

/// ζ_J as an element of E_J⁰.
pub fn zeta(f: Fp) -> ExtElt {
    ExtElt::from_hecke(&hecke::zeta(f))
}

/// f((ζ−1)ζᵐ) = x-version of (ζ−1)ζᵐ ∈ F¹H_J.
pub fn odd_center(f: Fp, m: u32) -> ExtElt {
    let z = hecke::zeta(f);
    let h = z.sub(&HeckeElt::one(Level::J, f)).unwrap().mul(&z.pow(m)).unwrap();
    ExtElt::f_map(&h).expect("(ζ−1)ζᵐ has no τ_1 term")
}

/// s₀(s₁s₀)ⁿ and s₁(s₀s₁)ⁿ.
pub fn odd_pair(n: u64) -> (WeylElt, WeylElt) {
    (WeylElt::from_alternating(Gen::S0, 2 * n + 1), WeylElt::from_alternating(Gen::S1, 2 * n + 1))
}

/// β_{s₀(s₁s₀)ⁿ} + β_{s₁(s₀s₁)ⁿ}.
pub fn beta_pair(f: Fp, n: u64) -> ExtElt {
    let (a, b) = odd_pair(n);
    beta(f, a).add(&beta(f, b))
}

/// ψ_{s₀(s₁s₀)ⁿ} + ψ_{s₁(s₀s₁)ⁿ}.
pub fn psi_pair(f: Fp, n: u64) -> ExtElt {
    let (a, b) = odd_pair(n);
    psi(f, a).add(&psi(f, b))
}

/// Labels of the predicted basis of the center 𝒵(E_J*) = 𝔷* ⊕ kψ_{s₀} ⊕ kβ_{s₀}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CenterLabel {
    /// ζᵐ
    Zeta(u32),
    /// f((ζ−1)ζᵐ)
    Odd(u32),
    /// n-th β-pair
    BetaPair(u64),
    /// φ_1
    Phi1,
    /// n-th ψ-pair
    PsiPair(u64),
    /// ψ_{s₀}
    PsiS0,
    /// β_{s₀}
    BetaS0,
}

impl CenterLabel {
    pub fn degree(self) -> u8 {
        match self {
            CenterLabel::Zeta(_) => 0,
            CenterLabel::Odd(_) => 1,
            CenterLabel::BetaPair(_) | CenterLabel::BetaS0 => 2,
            _ => 3,
        }
    }

    pub fn in_kernel(self) -> bool {
        matches!(self, CenterLabel::PsiS0 | CenterLabel::BetaS0)
    }

    pub fn element(self, f: Fp) -> ExtElt {
        match self {
            CenterLabel::Zeta(m) => zeta(f).pow(m),
            CenterLabel::Odd(m) => odd_center(f, m),
            CenterLabel::BetaPair(n) => beta_pair(f, n),
            CenterLabel::Phi1 => ExtElt::phi(f, WeylElt::ONE),
            CenterLabel::PsiPair(n) => psi_pair(f, n),
            CenterLabel::PsiS0 => psi(f, WeylElt::S0),
            CenterLabel::BetaS0 => beta(f, WeylElt::S0),
        }
    }

    /// Largest length in the support of [`element`](Self::element).
    pub fn support_length(self) -> u64 {
        match self {
            CenterLabel::Zeta(m) => 2 * m as u64,
            CenterLabel::Odd(m) => 2 * m as u64 + 2,
            CenterLabel::BetaPair(n) | CenterLabel::PsiPair(n) => 2 * n + 1,
            CenterLabel::Phi1 => 0,
            CenterLabel::PsiS0 | CenterLabel::BetaS0 => 1,
        }
    }

    /// Predicted central basis elements of one degree supported in ℓ ≤ `max_len`.
    pub fn predicted(degree: u8, max_len: u64) -> Vec<CenterLabel> {
        let mut out = Vec::new();
        let fits = |l: &CenterLabel| l.support_length() <= max_len;
        match degree {
            0 => out.extend((0..=max_len as u32).map(CenterLabel::Zeta).take_while(fits)),
            1 => out.extend((0..=max_len as u32).map(CenterLabel::Odd).take_while(fits)),
            2 => {
                out.extend((0..=max_len).map(CenterLabel::BetaPair).take_while(fits));
                out.push(CenterLabel::BetaS0);
            }
            3 => {
                out.push(CenterLabel::Phi1);
                out.extend((0..=max_len).map(CenterLabel::PsiPair).take_while(fits));
                out.push(CenterLabel::PsiS0);
            }
            _ => {}
        }
        out.retain(fits);
        out
    }

    pub fn all_predicted(max_len: u64) -> Vec<CenterLabel> {
        (0..4).flat_map(|d| Self::predicted(d, max_len)).collect()
    }
}

impl fmt::Display for CenterLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CenterLabel::Zeta(m) => write!(f, "zeta^{m}"),
            CenterLabel::Odd(m) => write!(f, "f((zeta-1)zeta^{m})"),
            CenterLabel::BetaPair(n) => write!(f, "beta_pair({n})"),
            CenterLabel::Phi1 => f.write_str("phi[1]"),
            CenterLabel::PsiPair(n) => write!(f, "psi_pair({n})"),
            CenterLabel::PsiS0 => f.write_str("psi[s0]"),
            CenterLabel::BetaS0 => f.write_str("beta[s0]"),
        }
    }
}

/// An indexing of basis symbols as coordinates for linear algebra.
#[derive(Clone, Debug)]
pub struct Coords {
    keys: Vec<ExtKey>,
    index: BTreeMap<ExtKey, usize>,
}

impl Coords {
    pub fn new(keys: Vec<ExtKey>) -> Self {
        let mut keys = keys;
        keys.sort();
        keys.dedup();
        let index = keys.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        Coords { keys, index }
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn keys(&self) -> &[ExtKey] {
        &self.keys
    }

    /// Dense vector of `a`; `None` if `a` has support outside these coordinates.
    pub fn vector(&self, a: &ExtElt) -> Option<Vec<u32>> {
        let mut v = vec![0u32; self.keys.len()];
        for (k, c) in a.terms() {
            v[*self.index.get(&k)?] = c;
        }
        Some(v)
    }

    pub fn element(&self, f: Fp, v: &[u32]) -> ExtElt {
        let mut e = ExtElt::zero(f);
        for (&k, &c) in self.keys.iter().zip(v) {
            e.add_term(k, c);
        }
        e
    }
}

/// The window of test lengths used to certify centrality of an element
/// supported in ℓ ≤ `support`: commutators with longer symbols follow the
/// same length-uniform rules.
pub fn centrality_window(support: u64) -> u64 {
    2 * support + 2
}

/// Whether `z` commutes with every basis symbol of length ≤ `window`.
pub fn is_central(z: &ExtElt, window: u64, exec: Exec) -> bool {
    let f = z.field;
    let tests = ExtKey::up_to_length(window, None);
    exec.find_map(&tests, |&g| {
        let g = ExtElt::from_key(f, g);
        (!z.commutator(&g).is_zero()).then_some(())
    })
    .is_none()
}

/// Result of a centralizer computation in one degree.
#[derive(Clone, Debug)]
pub struct CentralizerReport {
    pub degree: u8,
    pub max_len: u64,
    /// Echelon basis of the solution space.
    pub basis: Vec<ExtElt>,
    pub predicted: Vec<CenterLabel>,
    /// Whether the predicted elements span exactly the solution space.
    pub matches_expected: bool,
}

impl CentralizerReport {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// All z of the given degree, supported in ℓ ≤ `max_len`, with z·g = g·z for
/// every basis symbol g of length ≤ [`centrality_window`]`(max_len)`.
pub fn centralizer(f: Fp, degree: u8, max_len: u64, exec: Exec) -> CentralizerReport {
    let unknowns = ExtKey::up_to_length(max_len, Some(degree));
    let tests = ExtKey::up_to_length(centrality_window(max_len), None);
    // For each test symbol, the commutators [b, g] of all unknowns b.
    let blocks: Vec<Vec<ExtElt>> = exec.map(&tests, |&g| {
        let g = ExtElt::from_key(f, g);
        unknowns.iter().map(|&b| ExtElt::from_key(f, b).commutator(&g)).collect()
    });
    // Rows of the linear system: one per (test symbol, output symbol).
    let mut rows = Vec::new();
    for block in &blocks {
        let mut out_keys: Vec<ExtKey> = block.iter().flat_map(|e| e.terms().map(|(k, _)| k)).collect();
        out_keys.sort();
        out_keys.dedup();
        for key in out_keys {
            rows.push(block.iter().map(|e| e.coeff(key)).collect::<Vec<u32>>());
        }
    }
    let coords = Coords::new(unknowns.clone());
    let ker = kernel(f, unknowns.len(), rows);
    let basis: Vec<ExtElt> = ker.iter().map(|v| coords.element(f, v)).collect();
    let predicted = CenterLabel::predicted(degree, max_len);
    let pred_vecs: Vec<Vec<u32>> = predicted
        .iter()
        .map(|l| coords.vector(&l.element(f)).expect("predicted element within support bound"))
        .collect();
    let solution = Echelon::new(f, coords.len(), ker.clone());
    let spanned = Echelon::new(f, coords.len(), pred_vecs.clone());
    let matches_expected = spanned.rank() == solution.rank()
        && pred_vecs.iter().all(|v| solution.contains(v))
        && spanned.rank() == predicted.len();
    CentralizerReport { degree, max_len, basis, predicted, matches_expected }
}

/// Outcome of the finite generation check.
#[derive(Clone, Debug)]
pub struct GenerationReport {
    pub max_len: u64,
    pub checked: usize,
    /// Basis symbols not reached (empty on success).
    pub missing: Vec<ExtKey>,
    /// Named recursion identities and whether they hold.
    pub recursions: Vec<(String, bool)>,
}

impl GenerationReport {
    pub fn pass(&self) -> bool {
        self.missing.is_empty() && self.recursions.iter().all(|r| r.1)
    }
}

/// The module generators S = S⁰ ∪ S¹ over the center.
pub fn generators(f: Fp) -> Vec<ExtElt> {
    let th = WeylElt::theta(1);
    let th_inv = WeylElt::theta(-1);
    vec![
        ExtElt::one(f),
        ExtElt::tau(f, WeylElt::S0),
        ExtElt::tau(f, WeylElt::S1),
        ExtElt::tau(f, th),
        ExtElt::x(f, WeylElt::S0),
        ExtElt::x(f, WeylElt::S1),
        ExtElt::x(f, th),
        ExtElt::x(f, th_inv),
    ]
}

/// Checks that every basis symbol of length ≤ `max_len` lies in the span of
/// {z·s} with z running over a computed basis of the center and s ∈ S.
pub fn finite_generation_check(f: Fp, max_len: u64, exec: Exec) -> GenerationReport {
    let support = max_len + 4;
    let degrees: Vec<u8> = (0..4).collect();
    let centers: Vec<Vec<ExtElt>> = exec.map(&degrees, |&d| centralizer(f, d, support, Exec::Sequential).basis);
    let gens = generators(f);
    let products: Vec<ExtElt> = centers.iter().flatten().flat_map(|z| gens.iter().map(move |s| z.mul(s))).collect();
    let bound = products.iter().map(|e| e.max_length()).max().unwrap_or(0);
    let coords = Coords::new(ExtKey::up_to_length(bound, None));
    let span = Echelon::new(f, coords.len(), products.iter().map(|e| coords.vector(e).unwrap()));
    let targets = ExtKey::up_to_length(max_len, None);
    let missing: Vec<ExtKey> =
        targets.iter().copied().filter(|&k| !span.contains(&coords.vector(&ExtElt::from_key(f, k)).unwrap())).collect();
    CheckRecursions::run(f, max_len, targets.len(), missing)
}

struct CheckRecursions;

impl CheckRecursions {
    fn run(f: Fp, max_len: u64, checked: usize, missing: Vec<ExtKey>) -> GenerationReport {
        let mut recursions = Vec::new();
        let z = zeta(f);
        for n in 0..=(max_len / 2) {
            for eps in [Gen::S0, Gen::S1] {
                let lhs = ExtElt::tau(f, eps.elt()).mul(&z.pow(n as u32));
                let rhs = ExtElt::tau(f, WeylElt::from_alternating(eps, 2 * n + 1));
                recursions.push((format!("tau[{eps}]*zeta^{n} = tau[{eps}({}{eps})^{n}]", eps.other()), lhs == rhs));
            }
        }
        for n in 1..=(max_len / 2) {
            for eps in [Gen::S0, Gen::S1] {
                let odd = |k: u64| WeylElt::from_alternating(eps, 2 * k + 1);
                let even = WeylElt::from_alternating(eps, 2 * n);
                let pair = beta_pair(f, n);
                let two = WeylElt::from_alternating(eps, 2);
                let lhs = ExtElt::tau(f, eps.elt()).mul(&pair);
                let rhs = beta(f, odd(n)).neg().add(&beta(f, even));
                recursions.push((format!("tau[{eps}]*beta_pair({n})"), lhs == rhs));
                let lhs = ExtElt::tau(f, two).mul(&pair);
                let rhs = beta(f, even).neg().add(&beta(f, odd(n - 1)));
                recursions.push((format!("tau[{two}]*beta_pair({n})"), lhs == rhs));
                let lhs = ExtElt::x(f, eps.elt()).mul(&pair);
                let rhs = psi(f, odd(n)).sub(&psi(f, even));
                recursions.push((format!("x[{eps}]*beta_pair({n})"), lhs == rhs));
                let lhs = ExtElt::x(f, two).mul(&pair);
                let rhs = psi(f, even).sub(&psi(f, odd(n - 1)));
                recursions.push((format!("x[{two}]*beta_pair({n})"), lhs == rhs));
            }
        }
        GenerationReport { max_len, checked, missing, recursions }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Fp {
        Fp::new(5)
    }

    #[test]
    fn product_identities() {
        let f = f5();
        let s0 = WeylElt::S0;
        let s1 = WeylElt::S1;
        let s01 = WeylElt::theta(1);
        let s10 = WeylElt::theta(-1);
        assert_eq!(ExtElt::x(f, s1).mul(&ExtElt::x(f, s1)), ExtElt::alpha(f, s1).neg());
        assert_eq!(ExtElt::x(f, s0).mul(&ExtElt::x(f, s0)), ExtElt::alpha(f, s0).neg());
        // Ascent case of the α-action: ℓ(s₀·s₁s₀) = 3.
        assert!(ExtElt::tau(f, s0).mul(&ExtElt::alpha(f, s10)).is_zero());
        // Descent case: s₀·s₀s₁ = s₁.
        assert_eq!(ExtElt::tau(f, s0).mul(&ExtElt::alpha(f, s01)), ExtElt::alpha(f, s1).sub(&ExtElt::alpha(f, s01)));
        // x_{s₀}·α_w for w ∈ W¹ and w ∈ W⁰.
        assert_eq!(ExtElt::x(f, s0).mul(&ExtElt::alpha(f, s01)), ExtElt::phi(f, s1).neg().add(&ExtElt::phi(f, s01)));
        assert!(ExtElt::x(f, s0).mul(&ExtElt::alpha(f, s1)).is_zero());
        assert!(ExtElt::x(f, s01).mul(&ExtElt::x(f, s10)).is_zero());
        let fz = odd_center(f, 0);
        assert_eq!(fz.mul(&fz), beta(f, s0).add(&beta(f, s1)));
    }

    #[test]
    fn beta_psi_examples() {
        let f = f5();
        assert_eq!(beta(f, WeylElt::S0), ExtElt::alpha(f, WeylElt::S0).neg());
        assert_eq!(psi(f, WeylElt::S0), ExtElt::phi(f, WeylElt::ONE).sub(&ExtElt::phi(f, WeylElt::S0)));
        let a = ExtElt::alpha(f, WeylElt::theta(2)).add(&ExtElt::alpha(f, WeylElt::S1).scale(3));
        assert_eq!(from_beta(f, &to_beta(&a).unwrap()), a);
        let b = ExtElt::phi(f, WeylElt::ONE).add(&ExtElt::phi(f, WeylElt::s0_theta(-2)));
        assert_eq!(from_psi(f, &to_psi(&b).unwrap()), b);
    }

    #[test]
    fn pairing_examples() {
        let f = f5();
        let one = pairing(&ExtElt::phi(f, WeylElt::S0), &ExtElt::tau(f, WeylElt::S0)).unwrap();
        assert_eq!(one, 1);
        let zero = pairing(&ExtElt::alpha(f, WeylElt::s0_theta(1)), &ExtElt::x(f, WeylElt::theta(1))).unwrap();
        assert_eq!(zero, 0);
        let w = WeylElt::theta(1);
        let lhs = pairing(&ExtElt::phi(f, w).mul(&ExtElt::tau(f, WeylElt::S1)), &ExtElt::tau(f, WeylElt::S0));
        let rhs = pairing(&ExtElt::phi(f, w), &ExtElt::tau(f, WeylElt::S0).mul(&ExtElt::tau(f, WeylElt::S1)));
        assert_eq!(lhs.unwrap(), 1);
        assert_eq!(rhs.unwrap(), 1);
        assert!(pairing(&ExtElt::phi(f, w), &ExtElt::x(f, w)).is_err());
    }

    #[test]
    fn involution_examples() {
        let f = f5();
        let th = ExtElt::tau(f, WeylElt::theta(1));
        assert_eq!(anti_involution_partial(&th).unwrap(), ExtElt::tau(f, WeylElt::theta(-1)));
        let x = ExtElt::x(f, WeylElt::S0);
        assert_eq!(anti_involution_partial(&x).unwrap(), x.neg());
        let a = ExtElt::alpha(f, WeylElt::S0);
        assert_eq!(anti_involution_partial(&a).unwrap(), a.neg());
        assert!(anti_involution_partial(&ExtElt::phi(f, WeylElt::ONE)).is_err());
    }

    #[test]
    fn s_top_examples() {
        let f = f5();
        assert_eq!(s_top(&ExtElt::phi(f, WeylElt::theta(1))).unwrap(), 1);
        assert_eq!(s_top(&psi(f, WeylElt::S0)).unwrap(), 0);
        let e = ExtElt::phi(f, WeylElt::ONE).add(&psi(f, WeylElt::s0_theta(1)));
        assert_eq!(s_top(&e).unwrap(), 1);
    }

    #[test]
    fn small_centralizers() {
        let f = f5();
        let c0 = centralizer(f, 0, 4, Exec::default());
        assert_eq!(c0.dimension(), 3);
        assert!(c0.matches_expected);
        let c2 = centralizer(f, 2, 3, Exec::default());
        assert_eq!(c2.dimension(), 3);
        assert!(c2.matches_expected);
        let c3 = centralizer(f, 3, 1, Exec::default());
        assert_eq!(c3.dimension(), 3);
        assert!(c3.matches_expected);
    }
}
