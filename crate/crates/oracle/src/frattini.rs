//! Frattini quotients 𝒢_Φ = 𝒢/[𝒢,𝒢]𝒢ᵖ of finite congruence images.
//!
//! Φ is the normal closure of {xᵖ, [x, y]} over a generating set of 𝒢;
//! 𝒢/Φ is then elementary abelian of order pʳ, and r = dim H¹(𝒢, 𝔽ₚ).
//! Coordinates on 𝒢_Φ come from a basis chosen among the generators.

use heckext::exec::Exec;

use crate::closure::{enumerate, normal_closure, Subgroup};
use crate::mat::Mat;
use crate::pattern::{GroupDescriptor, Pattern};
use crate::ring::ResidueRing;
use crate::Error;

pub struct FrattiniQuotient {
    pub pattern: Pattern,
    pub ring: ResidueRing,
    pub order: u64,
    pub rank: u32,
    pub group: Subgroup,
    pub phi: Subgroup,
    /// Elements of 𝒢 whose classes form a basis of 𝒢_Φ.
    pub basis: Vec<Mat>,
    // (inverse of ∏ basisᵢ^{eᵢ}, e) over all exponent vectors
    combos: Vec<(Mat, Vec<u32>)>,
}

impl FrattiniQuotient {
    /// Invariant factors of 𝒢_Φ (r copies of p).
    pub fn invariants(&self) -> Vec<u64> {
        vec![self.ring.p() as u64; self.rank as usize]
    }

    /// Coordinates of the class of x in the chosen basis of 𝒢_Φ.
    pub fn coords(&self, x: &Mat) -> Option<Vec<u32>> {
        let r = &self.ring;
        self.combos.iter().find(|(inv, _)| self.phi.contains(&x.mul(r, inv))).map(|(_, e)| e.clone())
    }

    pub fn in_phi(&self, x: &Mat) -> bool {
        self.phi.contains(x)
    }
}

fn extend_combos(r: &ResidueRing, combos: &[(Mat, Vec<u32>)], g: &Mat) -> Vec<(Mat, Vec<u32>)> {
    let ginv = g.inv(r);
    let mut out = Vec::with_capacity(combos.len() * r.p() as usize);
    for e in 0..r.p() {
        let ge = ginv.pow(r, e as u64);
        for (inv, ex) in combos {
            let mut ex = ex.clone();
            ex.push(e);
            out.push((ge.mul(r, inv), ex));
        }
    }
    out
}

/// The Frattini quotient of the image of `pattern` (taken in its own frame)
/// in SL₂(𝔒/𝔐ᵐ).
pub fn frattini_in_frame(
    ring: ResidueRing,
    pattern: Pattern,
    cap: u128,
    exec: Exec,
) -> Result<FrattiniQuotient, Error> {
    let r = &ring;
    let group = enumerate(ring, pattern, cap, exec)?;
    let gens = group.gens.clone();
    let id = Mat::identity(r);
    let mut seeds: Vec<Mat> = Vec::new();
    let mut push = |x: Mat| {
        if x != id && !seeds.contains(&x) {
            seeds.push(x);
        }
    };
    for (i, x) in gens.iter().enumerate() {
        push(x.pow(r, r.p() as u64));
        for y in &gens[i + 1..] {
            push(x.commutator(r, y));
        }
    }
    let phi = normal_closure(ring, pattern, &seeds, &gens, cap, exec)?;
    let (order, phi_order) = (group.order(), phi.order());
    if order % phi_order != 0 {
        return Err(Error::NotClosed(format!("|Φ| = {phi_order} does not divide |G| = {order}")));
    }
    let mut ratio = order / phi_order;
    let mut rank = 0;
    while ratio > 1 {
        if ratio % r.p() as u64 != 0 {
            return Err(Error::NotClosed(format!("G/Φ has order {} which is not a power of p", order / phi_order)));
        }
        ratio /= r.p() as u64;
        rank += 1;
    }
    let mut basis = Vec::new();
    let mut combos = vec![(id, Vec::new())];
    for g in &gens {
        if combos.iter().any(|(inv, _)| phi.contains(&g.mul(r, inv))) {
            continue;
        }
        combos = extend_combos(r, &combos, g);
        basis.push(*g);
    }
    if basis.len() != rank as usize {
        return Err(Error::NotClosed(format!("generators span rank {} of {rank}", basis.len())));
    }
    Ok(FrattiniQuotient { pattern, ring, order, rank, group, phi, basis, combos })
}

/// The Frattini quotient of a named group, computed in its balanced frame.
pub fn frattini_quotient(
    desc: &GroupDescriptor,
    ring: ResidueRing,
    cap: u128,
    exec: Exec,
) -> Result<FrattiniQuotient, Error> {
    frattini_in_frame(ring, desc.pattern.balanced(), cap, exec)
}

/// dim_𝔽ₚ H¹(𝒢, 𝔽ₚ) = p-rank of 𝒢_Φ.
pub fn h1_dimension(desc: &GroupDescriptor, ring: ResidueRing, cap: u128, exec: Exec) -> Result<u32, Error> {
    Ok(frattini_quotient(desc, ring, cap, exec)?.rank)
}

/// Frattini invariants at two precisions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stability {
    pub m: u32,
    pub other_m: u32,
    pub invariants: Vec<u64>,
    pub other_invariants: Vec<u64>,
}

impl Stability {
    pub fn stable(&self) -> bool {
        self.invariants == self.other_invariants
    }
}

pub fn stability(
    desc: &GroupDescriptor,
    ring: ResidueRing,
    other_m: u32,
    cap: u128,
    exec: Exec,
) -> Result<Stability, Error> {
    let a = frattini_quotient(desc, ring, cap, exec)?.invariants();
    let b = frattini_quotient(desc, ring.with_precision(other_m)?, cap, exec)?.invariants();
    Ok(Stability { m: ring.m(), other_m, invariants: a, other_invariants: b })
}

/// The report emitted by the command-line oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub group: String,
    pub p: u32,
    pub f: usize,
    pub m: u32,
    pub order: u64,
    pub frattini_invariants: Vec<u64>,
    /// Precision the invariants were compared against.
    pub compared_m: u32,
    pub stable: bool,
}

/// Frattini quotient at precision m, compared against m + 1 when that fits
/// under the cap and against m − 1 otherwise.
pub fn oracle_report(desc: &GroupDescriptor, ring: ResidueRing, cap: u128, exec: Exec) -> Result<OracleReport, Error> {
    let fq = frattini_quotient(desc, ring, cap, exec)?;
    let bal = desc.pattern.balanced();
    let up = ring.with_precision(ring.m() + 1)?;
    let other = if bal.order(&up)? <= cap { ring.m() + 1 } else { ring.m().saturating_sub(1).max(1) };
    let other_inv = if other == ring.m() {
        fq.invariants()
    } else {
        frattini_quotient(desc, ring.with_precision(other)?, cap, exec)?.invariants()
    };
    Ok(OracleReport {
        group: desc.name.clone(),
        p: ring.p(),
        f: ring.f(),
        m: ring.m(),
        order: fq.order,
        stable: other_inv == fq.invariants(),
        frattini_invariants: fq.invariants(),
        compared_m: other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::DEFAULT_CAP;

    fn ring(m: u32) -> ResidueRing {
        ResidueRing::new(5, 1, m).unwrap()
    }

    #[test]
    fn small_quotients() {
        let ex = Exec::default();
        let k: GroupDescriptor = "K".parse().unwrap();
        assert_eq!(frattini_quotient(&k, ring(2), DEFAULT_CAP, ex).unwrap().rank, 0);
        // I_Φ is spanned by the two affine root subgroups; the torus 1+𝔐 is
        // a commutator.
        let i: GroupDescriptor = "I".parse().unwrap();
        assert_eq!(frattini_quotient(&i, ring(3), DEFAULT_CAP, ex).unwrap().rank, 2);
    }

    #[test]
    fn coordinates_are_additive() {
        let ex = Exec::default();
        let fq = frattini_quotient(&"I".parse().unwrap(), ring(2), DEFAULT_CAP, ex).unwrap();
        let r = fq.ring;
        let els: Vec<Mat> = fq.group.elements().step_by(37).take(40).collect();
        for x in &els {
            for y in els.iter().take(10) {
                let (cx, cy, cxy) = (fq.coords(x).unwrap(), fq.coords(y).unwrap(), fq.coords(&x.mul(&r, y)).unwrap());
                let sum: Vec<u32> = cx.iter().zip(&cy).map(|(a, b)| (a + b) % 5).collect();
                assert_eq!(cxy, sum);
            }
        }
    }
}
