//! Valuation-pattern subgroups of SL₂(𝔉): determinant-one matrices
//! (a b; c d) with v(b) ≥ vb, v(c) ≥ vc and a constraint on the diagonal.
//! These describe J, I, K, J_ℓ^±, I_ℓ^±, K_{θⁿ}, L and all their
//! conjugates by monomial matrices and intersections.

use std::fmt;
use std::str::FromStr;

use heckext::WeylElt;

use crate::mat::Mat;
use crate::ring::ResidueRing;
use crate::Error;

/// Constraint on the diagonal entry a (and then d).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Diag {
    /// a ∈ 𝔒 (only meaningful for vb = vc = 0).
    Integral,
    /// a ∈ 𝔒^×.
    Unit,
    /// a ∈ ±1 + 𝔐.
    PlusMinusOnePlusM,
    /// a ∈ 1 + 𝔐.
    OnePlusM,
}

impl Diag {
    fn meet(self, other: Diag) -> Diag {
        self.max(other)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Pattern {
    pub vb: i64,
    pub vc: i64,
    pub diag: Diag,
}

impl Pattern {
    pub fn new(vb: i64, vc: i64, diag: Diag) -> Self {
        // Once bc ∈ 𝔐 the diagonal entries are units automatically.
        let diag = if diag == Diag::Integral && vb + vc >= 1 { Diag::Unit } else { diag };
        Pattern { vb, vc, diag }
    }

    /// K = SL₂(𝔒).
    pub fn k() -> Self {
        Pattern::new(0, 0, Diag::Integral)
    }

    /// The Iwahori subgroup J.
    pub fn j() -> Self {
        Pattern::new(0, 1, Diag::Unit)
    }

    /// The pro-p Iwahori subgroup I.
    pub fn i() -> Self {
        Pattern::new(0, 1, Diag::OnePlusM)
    }

    /// J_ℓ⁺ = (𝔒^× 𝔒; 𝔐^{ℓ+1} 𝔒^×).
    pub fn j_plus(l: u32) -> Self {
        Pattern::new(0, l as i64 + 1, Diag::Unit)
    }

    /// J_ℓ⁻ = (𝔒^× 𝔐^ℓ; 𝔐 𝔒^×).
    pub fn j_minus(l: u32) -> Self {
        Pattern::new(l as i64, 1, Diag::Unit)
    }

    pub fn i_plus(l: u32) -> Self {
        Pattern::new(0, l as i64 + 1, Diag::OnePlusM)
    }

    pub fn i_minus(l: u32) -> Self {
        Pattern::new(l as i64, 1, Diag::OnePlusM)
    }

    /// K_{θⁿ} = (𝔒^× 𝔐^{2n}; 𝔒 𝔒^×).
    pub fn k_theta(n: u32) -> Self {
        Pattern::new(2 * n as i64, 0, Diag::Integral)
    }

    /// L = (1+𝔐 𝔐²; 𝔒 1+𝔐)·⟨−id⟩.
    pub fn l() -> Self {
        Pattern::new(2, 0, Diag::PlusMinusOnePlusM)
    }

    /// Same group with the diagonal tightened to 1 + 𝔐 (U ↦ U ∩ I-type).
    pub fn pro_p(self) -> Self {
        Pattern::new(self.vb, self.vc, Diag::OnePlusM)
    }

    /// ẇ·G·ẇ⁻¹ for the monomial lift ẇ = s₀^ε θⁿ, θ = diag(π, π⁻¹).
    pub fn conj(self, w: WeylElt) -> Self {
        let n = w.n();
        // θⁿ (a b; c d) θ⁻ⁿ = (a π^{2n}b; π^{−2n}c d)
        let (vb, vc) = (self.vb + 2 * n, self.vc - 2 * n);
        let (vb, vc) = if w.eps() == 1 { (vc, vb) } else { (vb, vc) };
        Pattern { vb, vc, diag: self.diag }
    }

    pub fn intersect(self, o: Pattern) -> Self {
        Pattern::new(self.vb.max(o.vb), self.vc.max(o.vc), self.diag.meet(o.diag))
    }

    /// G_w = G ∩ ẇGẇ⁻¹.
    pub fn at(self, w: WeylElt) -> Self {
        self.intersect(self.conj(w))
    }

    pub fn contains_pattern(self, o: Pattern) -> bool {
        o.vb >= self.vb && o.vc >= self.vc && o.diag >= self.diag
    }

    /// Conjugation by diag(πᵏ, 1): vb ↦ vb + k, vc ↦ vc − k.
    pub fn shift(self, k: i64) -> Self {
        Pattern { vb: self.vb + k, vc: self.vc - k, diag: self.diag }
    }

    /// The frame shift that balances vb and vc (vb ≤ vc ≤ vb + 1).
    pub fn balancing_shift(self) -> i64 {
        (self.vc - self.vb).div_euclid(2)
    }

    pub fn balanced(self) -> Self {
        self.shift(self.balancing_shift())
    }

    /// max(vb, vc) in the balanced frame.
    pub fn depth(self) -> u32 {
        let b = self.balanced();
        b.vb.max(b.vc).max(0) as u32
    }

    fn check_frame(self) -> Result<(), Error> {
        if self.vb < 0 || self.vc < 0 {
            return Err(Error::Config(format!("{self} is not integral in this frame")));
        }
        if self.diag == Diag::Integral && (self.vb, self.vc) != (0, 0) {
            return Err(Error::Config(format!("{self}: unconstrained diagonal needs vb = vc = 0")));
        }
        Ok(())
    }

    /// Membership of the image in SL₂(𝔒/𝔐ᵐ) (this frame).
    pub fn contains(self, r: &ResidueRing, x: &Mat) -> bool {
        if self.vb < 0 || self.vc < 0 || x.det(r) != r.one() {
            return false;
        }
        if !r.divisible(x.b, self.vb as u32) || !r.divisible(x.c, self.vc as u32) {
            return false;
        }
        let res = r.residue(x.a);
        match self.diag {
            Diag::Integral => true,
            Diag::Unit => r.is_unit(x.a),
            Diag::OnePlusM => res == r.residue(r.one()),
            Diag::PlusMinusOnePlusM => res == r.residue(r.one()) || res == r.residue(r.int(-1)),
        }
    }

    /// Order of the image in SL₂(𝔒/𝔐ᵐ) (this frame).
    pub fn order(self, r: &ResidueRing) -> Result<u128, Error> {
        self.check_frame()?;
        let q = r.q() as u128;
        let m = r.m();
        if self.diag == Diag::Integral {
            return Ok(q.pow(3 * m) - q.pow(3 * m - 2));
        }
        let a_set = match self.diag {
            Diag::Unit => (q - 1) * q.pow(m - 1),
            Diag::OnePlusM => q.pow(m - 1),
            Diag::PlusMinusOnePlusM => 2 * q.pow(m - 1),
            Diag::Integral => unreachable!(),
        };
        let free = |v: i64| q.pow(m.saturating_sub(v as u32));
        Ok(a_set * free(self.vb) * free(self.vc))
    }

    /// Generators (this frame): root subgroup elements at the boundary
    /// valuations, torus elements for the diagonal constraint, and −id for L.
    pub fn generators(self, r: &ResidueRing) -> Result<Vec<Mat>, Error> {
        self.check_frame()?;
        let m = r.m();
        let mut out = Vec::new();
        for x in r.basis() {
            if (self.vb as u32) < m {
                out.push(Mat::upper(r, r.mul_p_pow(x, self.vb as u32)));
            }
            if (self.vc as u32) < m {
                out.push(Mat::lower(r, r.mul_p_pow(x, self.vc as u32)));
            }
        }
        if matches!(self.diag, Diag::Integral | Diag::Unit) {
            out.push(Mat::torus(r, r.primitive_root()));
        }
        if m > 1 {
            for x in r.basis() {
                out.push(Mat::torus(r, r.add(r.one(), r.mul_p_pow(x, 1))));
            }
        }
        if self.diag == Diag::PlusMinusOnePlusM {
            out.push(Mat::from_ints(r, [-1, 0, 0, -1]));
        }
        Ok(out)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = match self.diag {
            Diag::Integral => "O",
            Diag::Unit => "O^x",
            Diag::PlusMinusOnePlusM => "+-1+M",
            Diag::OnePlusM => "1+M",
        };
        write!(f, "({d} M^{}; M^{} {d})", self.vb, self.vc)
    }
}

/// A named group from the descriptor grammar "J", "I", "K", "J+(l)",
/// "J-(l)", "I+(l)", "I-(l)", "Ktheta(n)", "L".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupDescriptor {
    pub name: String,
    pub pattern: Pattern,
}

impl GroupDescriptor {
    pub fn new(name: impl Into<String>, pattern: Pattern) -> Self {
        GroupDescriptor { name: name.into(), pattern }
    }

    /// J_w = J ∩ wJw⁻¹.
    pub fn j_w(w: WeylElt) -> Self {
        GroupDescriptor::new(format!("J_{w}"), Pattern::j().at(w))
    }
}

impl FromStr for GroupDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let arg = |prefix: &str| -> Option<Result<u32, Error>> {
            let inner = s.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?;
            Some(inner.trim().parse::<u32>().map_err(|e| Error::Parse(format!("{s}: {e}"))))
        };
        let pattern = match s {
            "J" => Pattern::j(),
            "I" => Pattern::i(),
            "K" => Pattern::k(),
            "L" => Pattern::l(),
            _ => {
                if let Some(l) = arg("J+") {
                    Pattern::j_plus(l?)
                } else if let Some(l) = arg("J-") {
                    Pattern::j_minus(l?)
                } else if let Some(l) = arg("I+") {
                    Pattern::i_plus(l?)
                } else if let Some(l) = arg("I-") {
                    Pattern::i_minus(l?)
                } else if let Some(n) = arg("Ktheta") {
                    Pattern::k_theta(n?)
                } else {
                    return Err(Error::Parse(format!("unknown group descriptor {s:?}")));
                }
            }
        };
        Ok(GroupDescriptor::new(s, pattern))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use heckext::Gen;

    #[test]
    fn j_w_matches_the_named_groups() {
        for w in WeylElt::up_to_length(8).into_iter().skip(1) {
            let l = w.length() as u32;
            let expect = if w.in_w0() { Pattern::j_plus(l) } else { Pattern::j_minus(l) };
            assert_eq!(Pattern::j().at(w), expect, "{w}");
        }
        assert_eq!(Pattern::j().at(WeylElt::ONE), Pattern::j());
    }

    #[test]
    fn k_at_theta_powers() {
        for n in 1..4 {
            assert_eq!(Pattern::k().at(WeylElt::theta(n)), Pattern::new(2 * n, 0, Diag::Unit));
            // K_{s₀θⁿ} = s₀K_{θⁿ}s₀⁻¹ = J_{s₀θⁿ}
            let w = WeylElt::s0_theta(n);
            assert_eq!(Pattern::k().at(w), Pattern::k().at(WeylElt::theta(n)).conj(WeylElt::S0));
            assert_eq!(Pattern::k().at(w), Pattern::j().at(w));
        }
    }

    #[test]
    fn simple_conjugates() {
        // s₁ = (0 −π⁻¹; π 0): b ↦ π^{−2}c, c ↦ π²b.
        let s1 = Gen::S1.elt();
        assert_eq!(Pattern::j().conj(s1), Pattern::new(-1, 2, Diag::Unit));
        assert_eq!(Pattern::j().conj(WeylElt::S0), Pattern::new(1, 0, Diag::Unit));
    }

    #[test]
    fn orders_over_small_rings() {
        let r = ResidueRing::new(5, 1, 2).unwrap();
        assert_eq!(Pattern::j().order(&r).unwrap(), 2500);
        assert_eq!(Pattern::i().order(&r).unwrap(), 625);
        let r1 = ResidueRing::new(5, 1, 1).unwrap();
        assert_eq!(Pattern::k().order(&r1).unwrap(), 120);
    }

    #[test]
    fn descriptors_parse() {
        let d: GroupDescriptor = "Ktheta(2)".parse().unwrap();
        assert_eq!(d.pattern, Pattern::new(4, 0, Diag::Unit));
        assert_eq!("J+(1)".parse::<GroupDescriptor>().unwrap().pattern, Pattern::j_plus(1));
        assert!("Q".parse::<GroupDescriptor>().is_err());
        assert!("J+(x)".parse::<GroupDescriptor>().is_err());
    }
}
