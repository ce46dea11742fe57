//! The transfer (Verlagerung) 𝒢_Φ → ℋ_Φ for a finite-index subgroup
//! ℋ ⊆ 𝒢, computed from an explicit right transversal ℋ\𝒢.

use heckext::exec::Exec;

use crate::frattini::{frattini_in_frame, FrattiniQuotient};
use crate::mat::Mat;
use crate::pattern::Pattern;
use crate::ring::ResidueRing;
use crate::Error;

pub struct Transfer {
    pub sup: FrattiniQuotient,
    pub sub: FrattiniQuotient,
    /// Right coset representatives: 𝒢 = ⊔ ℋtᵢ.
    pub transversal: Vec<Mat>,
}

/// Result of [`transfer_map`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferReport {
    pub index: usize,
    pub source_rank: u32,
    pub target_rank: u32,
    /// Row i: coordinates in ℋ_Φ of the transfer of the i-th basis class of 𝒢_Φ.
    pub matrix: Vec<Vec<u32>>,
    /// The matrix computed from a second transversal agrees.
    pub transversal_independent: bool,
}

impl TransferReport {
    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(|&c| c == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.len() == self.target_rank as usize
            && self.matrix.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, &c)| c == (i == j) as u32))
    }
}

impl Transfer {
    /// `sub ⊆ sup`, both in the frame given (sup balanced is typical).
    pub fn new(ring: ResidueRing, sub: Pattern, sup: Pattern, cap: u128, exec: Exec) -> Result<Self, Error> {
        if !sup.contains_pattern(sub) {
            return Err(Error::Config(format!("{sub} is not contained in {sup}")));
        }
        let sup_q = frattini_in_frame(ring, sup, cap, exec)?;
        let sub_q = frattini_in_frame(ring, sub, cap, exec)?;
        let r = &ring;
        let mut reps = vec![Mat::identity(r)];
        let mut i = 0;
        while i < reps.len() {
            for g in &sup_q.group.gens {
                let x = reps[i].mul(r, g);
                if !reps.iter().any(|t| sub.contains(r, &x.mul(r, &t.inv(r)))) {
                    reps.push(x);
                }
            }
            i += 1;
        }
        let expected = sup_q.order / sub_q.order;
        if reps.len() as u64 != expected {
            return Err(Error::NotClosed(format!("transversal has {} cosets, expected {expected}", reps.len())));
        }
        Ok(Transfer { sup: sup_q, sub: sub_q, transversal: reps })
    }

    fn coset_of(&self, reps: &[Mat], x: &Mat) -> usize {
        let r = &self.sup.ring;
        reps.iter()
            .position(|t| self.sub.pattern.contains(r, &x.mul(r, &t.inv(r))))
            .expect("the transversal covers the group")
    }

    /// V(g) = ∏ᵢ tᵢ·g·t_{σ(i)}⁻¹ ∈ ℋ, well defined modulo [ℋ, ℋ].
    pub fn transfer_with(&self, reps: &[Mat], g: &Mat) -> Mat {
        let r = &self.sup.ring;
        reps.iter().fold(Mat::identity(r), |acc, t| {
            let x = t.mul(r, g);
            let j = self.coset_of(reps, &x);
            acc.mul(r, &x.mul(r, &reps[j].inv(r)))
        })
    }

    pub fn transfer(&self, g: &Mat) -> Mat {
        self.transfer_with(&self.transversal, g)
    }

    /// The transversal {hᵢtᵢ} with hᵢ ∈ ℋ built from the generators of ℋ.
    pub fn alternate_transversal(&self) -> Vec<Mat> {
        let r = &self.sup.ring;
        let gens = &self.sub.group.gens;
        self.transversal.iter().enumerate().map(|(i, t)| gens[i % gens.len()].pow(r, i as u64 + 1).mul(r, t)).collect()
    }

    fn matrix_with(&self, reps: &[Mat]) -> Result<Vec<Vec<u32>>, Error> {
        self.sup
            .basis
            .iter()
            .map(|g| {
                let v = self.transfer_with(reps, g);
                self.sub.coords(&v).ok_or_else(|| Error::NotClosed("transfer left the subgroup".into()))
            })
            .collect()
    }

    /// Whether every basis class b of 𝒢_Φ has a representative in ℋ that is
    /// nonzero in ℋ_Φ with V(b) ≡ b⁻¹ there, i.e. the transfer restricts to
    /// inversion on those classes.
    pub fn inverts_basis(&self) -> bool {
        let r = &self.sup.ring;
        self.sup.basis.iter().all(|b| {
            self.sub.pattern.contains(r, b) && !self.sub.in_phi(b) && self.sub.in_phi(&self.transfer(b).mul(r, b))
        })
    }

    pub fn report(&self) -> Result<TransferReport, Error> {
        let matrix = self.matrix_with(&self.transversal)?;
        let other = self.matrix_with(&self.alternate_transversal())?;
        Ok(TransferReport {
            index: self.transversal.len(),
            source_rank: self.sup.rank,
            target_rank: self.sub.rank,
            transversal_independent: matrix == other,
            matrix,
        })
    }
}

/// The transfer (sup)_Φ → (sub)_Φ, computed in the balanced frame of `sup`.
pub fn transfer_map(
    ring: ResidueRing,
    sub: Pattern,
    sup: Pattern,
    cap: u128,
    exec: Exec,
) -> Result<TransferReport, Error> {
    let k = sup.balancing_shift();
    Transfer::new(ring, sub.shift(k), sup.shift(k), cap, exec)?.report()
}
