//! The affine Weyl group W = ⟨s₀, s₁⟩ of SL₂ (infinite dihedral) and its
//! extension W̃ by the torus quotient T⁰/T¹ ≅ 𝔽_q^×.
//!
//! Elements of W are stored in the normal form θⁿ or s₀θⁿ, with
//! θ = diag(π, π⁻¹) = s₀s₁. Lifts to N(T) are the monomial matrices
//! θⁿ and s₀θⁿ, where s₀ = (0 1; −1 0).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::Error;

/// A simple reflection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    S0,
    S1,
}

impl Gen {
    pub fn other(self) -> Gen {
        match self {
            Gen::S0 => Gen::S1,
            Gen::S1 => Gen::S0,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Gen::S0 => 0,
            Gen::S1 => 1,
        }
    }

    pub fn elt(self) -> WeylElt {
        match self {
            Gen::S0 => WeylElt::S0,
            Gen::S1 => WeylElt::S1,
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Gen::S0 => "s0",
            Gen::S1 => "s1",
        })
    }
}

/// θⁿ when `eps == 0`, s₀θⁿ when `eps == 1`.
///
/// Ordered by (length, eps, n), the reporting order used throughout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WeylElt {
    eps: u8,
    n: i64,
}

impl WeylElt {
    pub const ONE: WeylElt = WeylElt { eps: 0, n: 0 };
    pub const S0: WeylElt = WeylElt { eps: 1, n: 0 };
    pub const S1: WeylElt = WeylElt { eps: 1, n: 1 };

    pub fn new(eps: u8, n: i64) -> Self {
        assert!(eps <= 1);
        WeylElt { eps, n }
    }

    pub fn theta(n: i64) -> Self {
        WeylElt { eps: 0, n }
    }

    pub fn s0_theta(n: i64) -> Self {
        WeylElt { eps: 1, n }
    }

    pub fn eps(self) -> u8 {
        self.eps
    }

    pub fn n(self) -> i64 {
        self.n
    }

    pub fn is_one(self) -> bool {
        self == Self::ONE
    }

    pub fn length(self) -> u64 {
        if self.eps == 0 {
            (2 * self.n).unsigned_abs()
        } else {
            (1 - 2 * self.n).unsigned_abs()
        }
    }

    /// Group law: s₀θⁿ s₀ = θ⁻ⁿ.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, rhs: WeylElt) -> WeylElt {
        let n1 = if rhs.eps == 1 { -self.n } else { self.n };
        WeylElt { eps: self.eps ^ rhs.eps, n: n1 + rhs.n }
    }

    pub fn inv(self) -> WeylElt {
        if self.eps == 0 {
            WeylElt::theta(-self.n)
        } else {
            self
        }
    }

    /// The alternating word of length `len` starting with `first`.
    pub fn from_alternating(first: Gen, len: u64) -> WeylElt {
        let k = (len / 2) as i64;
        match (first, len % 2) {
            (Gen::S0, 0) => WeylElt::theta(k),
            (Gen::S0, _) => WeylElt::s0_theta(-k),
            (Gen::S1, 0) => WeylElt::theta(-k),
            (Gen::S1, _) => WeylElt::s0_theta(k + 1),
        }
    }

    /// First letter of the (unique) reduced word, `None` for the identity.
    pub fn first_letter(self) -> Option<Gen> {
        match (self.eps, self.n.cmp(&0)) {
            (0, Ordering::Equal) => None,
            (0, Ordering::Greater) | (1, Ordering::Less) | (1, Ordering::Equal) => Some(Gen::S0),
            _ => Some(Gen::S1),
        }
    }

    pub fn last_letter(self) -> Option<Gen> {
        self.inv().first_letter()
    }

    pub fn reduced_word(self) -> Vec<Gen> {
        let mut word = Vec::with_capacity(self.length() as usize);
        if let Some(mut g) = self.first_letter() {
            for _ in 0..self.length() {
                word.push(g);
                g = g.other();
            }
        }
        word
    }

    pub fn from_word(word: &[Gen]) -> WeylElt {
        word.iter().fold(WeylElt::ONE, |acc, g| acc.mul(g.elt()))
    }

    /// w ∈ W⁰ iff ℓ(s₀w) = ℓ(w) + 1.
    pub fn in_w0(self) -> bool {
        self.first_letter() != Some(Gen::S0)
    }

    /// w ∈ W¹ iff ℓ(s₁w) = ℓ(w) + 1.
    pub fn in_w1(self) -> bool {
        self.first_letter() != Some(Gen::S1)
    }

    /// Whether left multiplication by `s` lengthens `self`.
    pub fn left_ascent(self, s: Gen) -> bool {
        self.first_letter() != Some(s)
    }

    /// Whether right multiplication by `s` lengthens `self`.
    pub fn right_ascent(self, s: Gen) -> bool {
        self.last_letter() != Some(s)
    }

    /// Bruhat order. In the infinite dihedral group v ≤ w iff v = w or
    /// ℓ(v) < ℓ(w).
    pub fn bruhat_leq(self, w: WeylElt) -> bool {
        self == w || self.length() < w.length()
    }

    /// Membership in the minimal K-double coset representatives {1, s₀θⁿ : n ≥ 1}.
    pub fn in_kdk(self) -> bool {
        self.is_one() || (self.eps == 1 && self.n >= 1)
    }

    /// The minimal-length element of W_K·w·W_K with W_K = {1, s₀}.
    pub fn kdk_rep(self) -> WeylElt {
        let s0 = WeylElt::S0;
        [self, s0.mul(self), self.mul(s0), s0.mul(self).mul(s0)].into_iter().min().expect("nonempty")
    }

    /// All elements of length ≤ `max_len` in reporting order (2·max_len + 1 of them).
    pub fn up_to_length(max_len: u64) -> Vec<WeylElt> {
        let mut out = vec![WeylElt::ONE];
        for len in 1..=max_len {
            let mut pair = [WeylElt::from_alternating(Gen::S0, len), WeylElt::from_alternating(Gen::S1, len)];
            pair.sort();
            out.extend(pair);
        }
        out
    }

    /// Removes the first letter (w ↦ s·w with s the first letter).
    pub fn drop_first(self) -> Option<WeylElt> {
        self.first_letter().map(|g| g.elt().mul(self))
    }
}

impl Ord for WeylElt {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.length(), self.eps, self.n).cmp(&(other.length(), other.eps, other.n))
    }
}

impl PartialOrd for WeylElt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for WeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.eps, self.n) {
            (0, 0) => f.write_str("1"),
            (0, n) => write!(f, "theta^{n}"),
            (_, 0) => f.write_str("s0"),
            (_, n) => write!(f, "s0*theta^{n}"),
        }
    }
}

impl FromStr for WeylElt {
    type Err = Error;

    /// Accepts `1`, `theta^n`, `s0`, `s0*theta^n`, `s1`, or a word such as `s0s1s0`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a Weyl group element: {s:?}"));
        if s == "1" || s == "e" {
            return Ok(WeylElt::ONE);
        }
        let power = |t: &str| -> Result<i64, Error> {
            match t.strip_prefix("theta") {
                Some("") => Ok(1),
                Some(rest) => rest.strip_prefix('^').and_then(|e| e.parse().ok()).ok_or_else(bad),
                None => Err(bad()),
            }
        };
        if let Some(rest) = s.strip_prefix("s0*") {
            return Ok(WeylElt::s0_theta(power(rest)?));
        }
        if s.starts_with("theta") {
            return Ok(WeylElt::theta(power(s)?));
        }
        let mut word = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            if let Some(r) = rest.strip_prefix("s0") {
                word.push(Gen::S0);
                rest = r;
            } else if let Some(r) = rest.strip_prefix("s1") {
                word.push(Gen::S1);
                rest = r;
            } else {
                return Err(bad());
            }
            rest = rest.trim_start_matches(['*', ' ']);
        }
        Ok(WeylElt::from_word(&word))
    }
}

/// An element t·ẇ of W̃ = N(T)/T¹, where t = diag(gᵏ, g⁻ᵏ) for the fixed
/// generator g of 𝔽_q^× and ẇ is the canonical monomial lift of the base.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExtendedWeylElt {
    base: WeylElt,
    torus: u32,
    order: u32,
}

impl ExtendedWeylElt {
    /// `order` is q − 1, the order of T⁰/T¹.
    pub fn new(torus: u32, base: WeylElt, order: u32) -> Self {
        assert!(order >= 2 && order.is_multiple_of(2), "q - 1 must be even");
        ExtendedWeylElt { base, torus: torus % order, order }
    }

    pub fn lift(base: WeylElt, order: u32) -> Self {
        Self::new(0, base, order)
    }

    pub fn torus_elt(k: u32, order: u32) -> Self {
        Self::new(k, WeylElt::ONE, order)
    }

    pub fn base(self) -> WeylElt {
        self.base
    }

    pub fn torus(self) -> u32 {
        self.torus
    }

    pub fn order(self) -> u32 {
        self.order
    }

    pub fn length(self) -> u64 {
        self.base.length()
    }

    /// Exponent of −id = α̌(−1).
    pub fn minus_one(order: u32) -> u32 {
        order / 2
    }

    /// The lift nₛ of a simple reflection with nₛ² = α̌(−1):
    /// s̃₀ = (0 1; −1 0) and s̃₁ = (0 −π⁻¹; π 0) = −s₀θ.
    pub fn simple(s: Gen, order: u32) -> Self {
        match s {
            Gen::S0 => Self::lift(WeylElt::S0, order),
            Gen::S1 => Self::new(Self::minus_one(order), WeylElt::S1, order),
        }
    }

    /// Group law. Conjugation by an s₀-type lift inverts the torus, and
    /// (s₀θᵃ)(s₀θᵇ) = s₀²θ^{b−a} = −θ^{b−a} supplies the only nontrivial cocycle.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.order, rhs.order);
        let o = self.order;
        let conj = if self.base.eps() == 1 { (o - rhs.torus) % o } else { rhs.torus };
        let cocycle = if self.base.eps() == 1 && rhs.base.eps() == 1 { o / 2 } else { 0 };
        Self::new(self.torus + conj + cocycle, self.base.mul(rhs.base), o)
    }

    pub fn inv(self) -> Self {
        let o = self.order;
        let binv = Self::lift(self.base.inv(), o);
        // (t·ẇ)(t'·ẇ⁻¹) has torus t + (±t') + c; solve for t'.
        let c = self.mul(binv).torus;
        let t = if self.base.eps() == 1 { c } else { (o - c) % o };
        Self::new(t, self.base.inv(), o)
    }

    /// Writes self = s̃_{i₁}⋯s̃_{i_k}·t with the word of the base reduced.
    pub fn factor(self) -> (Vec<Gen>, u32) {
        let word = self.base.reduced_word();
        let prod =
            word.iter().fold(Self::lift(WeylElt::ONE, self.order), |acc, &g| acc.mul(Self::simple(g, self.order)));
        let rest = prod.inv().mul(self);
        debug_assert!(rest.base.is_one());
        (word, rest.torus)
    }

    /// All elements whose base has length ≤ `max_len`.
    pub fn up_to_length(max_len: u64, order: u32) -> Vec<Self> {
        let mut out = Vec::new();
        for w in WeylElt::up_to_length(max_len) {
            for t in 0..order {
                out.push(Self::new(t, w, order));
            }
        }
        out
    }
}

impl Ord for ExtendedWeylElt {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.base, self.torus, self.order).cmp(&(other.base, other.torus, other.order))
    }
}

impl PartialOrd for ExtendedWeylElt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExtendedWeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.torus == 0 {
            write!(f, "{}", self.base)
        } else {
            write!(f, "t^{}·{}", self.torus, self.base)
        }
    }
}

impl ExtendedWeylElt {
    /// Parses `t^k·w` (or `t^k*w`) and plain `w`.
    pub fn parse(s: &str, order: u32) -> Result<Self, Error> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("t^") {
            let (k, w) = rest
                .split_once('·')
                .or_else(|| rest.split_once('*'))
                .ok_or_else(|| Error::Parse(format!("bad extended element {s:?}")))?;
            let k: u32 = k.parse().map_err(|_| Error::Parse(format!("bad torus exponent in {s:?}")))?;
            return Ok(Self::new(k, w.parse()?, order));
        }
        Ok(Self::lift(s.parse()?, order))
    }
}
