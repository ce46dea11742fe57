//! Exact 2×2 matrices over ℤ[1/p] (integer numerators over a power of p),
//! Cartan invariants, and the double cosets
//! K_{θ⁻¹} \ (θ⁻¹Kθⁿ ∩ KθK) / K_{θ⁻ⁿ}.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::Error;

/// A matrix with entries num[i][j] / p^den.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QpMat {
    p: u32,
    num: [[BigInt; 2]; 2],
    den: u32,
}

fn v_p(x: &BigInt, p: u32) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let (mut x, mut v) = (x.clone(), 0);
    while (&x % &p).is_zero() {
        x /= &p;
        v += 1;
    }
    Some(v)
}

impl QpMat {
    pub fn new(p: u32, num: [[BigInt; 2]; 2], den: u32) -> Self {
        let mut m = QpMat { p, num, den };
        m.normalize();
        m
    }

    pub fn from_ints(p: u32, e: [[i64; 2]; 2]) -> Self {
        QpMat::new(p, e.map(|row| row.map(BigInt::from)), 0)
    }

    pub fn identity(p: u32) -> Self {
        QpMat::from_ints(p, [[1, 0], [0, 1]])
    }

    /// θⁿ = diag(πⁿ, π⁻ⁿ).
    pub fn theta(p: u32, n: i64) -> Self {
        let pk = BigInt::from(p).pow(n.unsigned_abs() as u32);
        let k = n.unsigned_abs() as u32;
        if n >= 0 {
            QpMat::new(p, [[pk.pow(2), BigInt::zero()], [BigInt::zero(), BigInt::one()]], k)
        } else {
            QpMat::new(p, [[BigInt::one(), BigInt::zero()], [BigInt::zero(), pk.pow(2)]], k)
        }
    }

    fn normalize(&mut self) {
        let p = BigInt::from(self.p);
        while self.den > 0 && self.num.iter().flatten().all(|x| (x % &p).is_zero()) {
            for x in self.num.iter_mut().flatten() {
                *x /= &p;
            }
            self.den -= 1;
        }
    }

    pub fn mul(&self, o: &QpMat) -> QpMat {
        let n = |i: usize, j: usize| &self.num[i][0] * &o.num[0][j] + &self.num[i][1] * &o.num[1][j];
        QpMat::new(self.p, [[n(0, 0), n(0, 1)], [n(1, 0), n(1, 1)]], self.den + o.den)
    }

    /// Inverse of a determinant-one matrix.
    pub fn inv(&self) -> QpMat {
        let [[a, b], [c, d]] = &self.num;
        QpMat::new(self.p, [[d.clone(), -b.clone()], [-c.clone(), a.clone()]], self.den)
    }

    pub fn is_det_one(&self) -> bool {
        let [[a, b], [c, d]] = &self.num;
        a * d - b * c == BigInt::from(self.p).pow(2 * self.den)
    }

    /// p-adic valuation of entry (i, j); None for 0.
    pub fn valuation(&self, i: usize, j: usize) -> Option<i64> {
        v_p(&self.num[i][j], self.p).map(|v| v as i64 - self.den as i64)
    }

    pub fn min_valuation(&self) -> i64 {
        (0..4).filter_map(|k| self.valuation(k / 2, k % 2)).min().expect("nonzero matrix")
    }

    /// Entry-wise lower bounds on valuations: v(entry) ≥ bound.
    pub fn satisfies(&self, bounds: [[i64; 2]; 2]) -> bool {
        (0..4).all(|k| self.valuation(k / 2, k % 2).is_none_or(|v| v >= bounds[k / 2][k % 2]))
    }
}

impl fmt::Display for QpMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = |i: usize, j: usize| {
            if self.den == 0 {
                format!("{}", self.num[i][j])
            } else {
                format!("{}/{}^{}", self.num[i][j], self.p, self.den)
            }
        };
        write!(f, "({} {}; {} {})", e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }
}

/// The n with g ∈ KθⁿK: minus the least entry valuation.
pub fn cartan_invariant(g: &QpMat) -> Result<u32, Error> {
    if !g.is_det_one() {
        return Err(Error::Config(format!("{g} does not have determinant 1")));
    }
    Ok((-g.min_valuation()).max(0) as u32)
}

fn in_k(g: &QpMat) -> bool {
    g.satisfies([[0, 0], [0, 0]])
}

/// K_{θ⁻¹} = (𝔒^× 𝔒; 𝔐² 𝔒^×).
fn in_k_theta_inv(g: &QpMat) -> bool {
    g.satisfies([[0, 0], [2, 0]])
}

/// K_θ = (𝔒^× 𝔐²; 𝔒 𝔒^×).
fn in_k_theta(g: &QpMat) -> bool {
    g.satisfies([[0, 2], [0, 0]])
}

/// Representatives a of K/K_θ: s₀·(1 y; 0 1) for y mod p², and
/// (1 py; 0 1) for y mod p.
pub fn k_mod_k_theta(p: u32) -> Vec<QpMat> {
    let p = p as i64;
    let mut out: Vec<QpMat> = (0..p * p).map(|y| QpMat::from_ints(p as u32, [[0, 1], [-1, -y]])).collect();
    out.extend((0..p).map(|y| QpMat::from_ints(p as u32, [[1, p * y], [0, 1]])));
    out
}

/// An SL₂(ℤ) matrix (a b; c d) with the given first column (gcd(a, c) = 1).
fn with_first_column(p: u32, a: i64, c: i64) -> QpMat {
    let e = a.extended_gcd(&c);
    assert_eq!(e.gcd, 1, "first column must be primitive");
    // a·x + c·y = 1, so (a −y; c x) has determinant 1.
    QpMat::from_ints(p, [[a, -e.y], [c, e.x]])
}

fn primitive_root(p: u32) -> i64 {
    let q1 = p as i64 - 1;
    (2..p as i64)
        .find(|&g| {
            (1..q1).all(|k| {
                let mut x = 1i64;
                for _ in 0..k {
                    x = x * g % p as i64;
                }
                x != 1
            })
        })
        .unwrap_or(1)
}

/// Generators of a dense subgroup of K_{θ⁻ⁿ} = K ∩ θ⁻ⁿKθⁿ inside SL₂(ℤ).
pub fn k_theta_inv_generators(p: u32, n: u32) -> Vec<QpMat> {
    let pi = p as i64;
    if n == 0 {
        return vec![QpMat::from_ints(p, [[1, 1], [0, 1]]), QpMat::from_ints(p, [[1, 0], [1, 1]])];
    }
    let c = pi.pow(2 * n);
    vec![
        QpMat::from_ints(p, [[1, 1], [0, 1]]),
        QpMat::from_ints(p, [[1, 0], [c, 1]]),
        with_first_column(p, primitive_root(p), c),
        with_first_column(p, 1 + pi, c),
    ]
}

/// Outcome of [`double_coset_count`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCosetReport {
    pub n: u32,
    /// Number of K/K_θ representatives (should be [K:K_θ] = p² + p).
    pub k_cosets: usize,
    /// Right K_{θ⁻¹}-cosets in θ⁻¹Kθⁿ ∩ KθK.
    pub cosets: Vec<QpMat>,
    /// Orbits of K_{θ⁻ⁿ} on those cosets.
    pub double_cosets: usize,
}

fn find_root(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// |K_{θ⁻¹} \ (θ⁻¹Kθⁿ ∩ KθK) / K_{θ⁻ⁿ}|.
pub fn double_coset_count(p: u32, n: u32) -> Result<DoubleCosetReport, Error> {
    let reps = k_mod_k_theta(p);
    for (i, a) in reps.iter().enumerate() {
        for b in &reps[..i] {
            if in_k_theta(&b.inv().mul(a)) {
                return Err(Error::NotClosed(format!("{a} and {b} define the same coset of K_θ")));
            }
        }
    }
    let t_inv = QpMat::theta(p, -1);
    let t_n = QpMat::theta(p, n as i64);
    // θ⁻¹Kθⁿ = ⊔ K_{θ⁻¹}·θ⁻¹a⁻¹θⁿ
    let mut cosets = Vec::new();
    for a in &reps {
        let h = t_inv.mul(&a.inv()).mul(&t_n);
        if cartan_invariant(&h)? == 1 {
            cosets.push(h);
        }
    }
    let same = |x: &QpMat, y: &QpMat| in_k_theta_inv(&x.mul(&y.inv()));
    let gens = k_theta_inv_generators(p, n);
    let mut parent: Vec<usize> = (0..cosets.len()).collect();
    for i in 0..cosets.len() {
        for k in &gens {
            let hk = cosets[i].mul(k);
            let j = cosets
                .iter()
                .position(|h| same(&hk, h))
                .ok_or_else(|| Error::NotClosed(format!("{hk} is in no listed coset")))?;
            let (a, b) = (find_root(&mut parent, i), find_root(&mut parent, j));
            parent[a] = b;
        }
    }
    let double_cosets = (0..cosets.len()).filter(|&i| find_root(&mut parent, i) == i).count();
    Ok(DoubleCosetReport { n, k_cosets: reps.len(), cosets, double_cosets })
}

/// A random element of SL₂(ℤ) ⊂ K: a product of elementary matrices.
pub fn random_k(p: u32, rng: &mut ChaCha8Rng) -> QpMat {
    let bound = (p * p) as i64;
    (0..6).fold(QpMat::identity(p), |acc, i| {
        let x = rng.random_range(-bound..=bound);
        let e = if i % 2 == 0 { [[1, x], [0, 1]] } else { [[1, 0], [x, 1]] };
        acc.mul(&QpMat::from_ints(p, e))
    })
}

/// Cartan invariants of `samples` random products k₁θk₂θk₃.
pub fn cartan_samples(p: u32, samples: usize, seed: u64) -> Result<Vec<u32>, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let theta = QpMat::theta(p, 1);
    (0..samples)
        .map(|_| {
            let (k1, k2, k3) = (random_k(p, &mut rng), random_k(p, &mut rng), random_k(p, &mut rng));
            debug_assert!(in_k(&k1) && in_k(&k2) && in_k(&k3));
            cartan_invariant(&k1.mul(&theta).mul(&k2).mul(&theta).mul(&k3))
        })
        .collect()
}

/// Whether a rational entry is a p-adic unit.
pub fn is_unit_entry(x: &BigInt, p: u32) -> bool {
    !x.is_zero() && !(x.abs() % BigInt::from(p)).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cartan_examples() {
        assert_eq!(cartan_invariant(&QpMat::theta(5, 1)).unwrap(), 1);
        assert_eq!(cartan_invariant(&QpMat::identity(5)).unwrap(), 0);
        // θ⁻¹a⁻¹θ for a = s₀(1 y; 0 1) is (−y, −p⁻²; p², 0).
        let a = QpMat::from_ints(5, [[0, 1], [-1, -3]]);
        let h = QpMat::theta(5, -1).mul(&a.inv()).mul(&QpMat::theta(5, 1));
        let expect = QpMat::new(5, [[BigInt::from(-3 * 25), BigInt::from(-1)], [BigInt::from(625), BigInt::zero()]], 2);
        assert_eq!(h, expect);
        assert_eq!(cartan_invariant(&h).unwrap(), 2);
        assert!(cartan_invariant(&QpMat::from_ints(5, [[2, 0], [0, 2]])).is_err());
    }

    #[test]
    fn coset_list_sizes() {
        let sizes: Vec<usize> = (0..3).map(|n| double_coset_count(5, n).unwrap().cosets.len()).collect();
        assert_eq!(sizes, vec![30, 4, 1]);
    }

    #[test]
    fn generators_lie_in_the_right_groups() {
        for n in 0..3 {
            let t = QpMat::theta(5, n as i64);
            for k in k_theta_inv_generators(5, n) {
                assert!(k.is_det_one() && in_k(&k));
                assert!(in_k(&t.mul(&k).mul(&t.inv())), "{k}");
            }
        }
    }

    /// (1 −z/p; 0 1) = (1 0; p(y⁻¹−z⁻¹) 1)(1 −y/p; 0 1)(yz⁻¹ 0; 0 y⁻¹z)(1 0; p(yz⁻²−z⁻¹) 1)
    /// holds up to the working precision, but the outer factors have
    /// lower-left valuation 1 and so lie outside K_{θ⁻¹}.
    #[test]
    fn merging_identity_leaves_k_theta_inv() {
        let (p, big) = (5i64, 5i64.pow(8));
        let inv = |a: i64| (1..big).find(|x| (a * x) % big == 1).unwrap();
        let (y, z) = (1i64, 2i64);
        let (yi, zi) = (inv(y), inv(z));
        let l1 = QpMat::from_ints(5, [[1, 0], [p * (yi - zi), 1]]);
        let u = |t: i64| QpMat::new(5, [[BigInt::from(p), BigInt::from(-t)], [BigInt::zero(), BigInt::from(p)]], 1);
        let dg = QpMat::from_ints(5, [[(y * zi) % big, 0], [0, (yi * z) % big]]);
        let l2 = QpMat::from_ints(5, [[1, 0], [p * ((y * zi % big) * zi - zi), 1]]);
        let rhs = l1.mul(&u(y)).mul(&dg).mul(&l2);
        let err = rhs.mul(&u(z).inv());
        assert!(err.satisfies([[0, 7], [8, 0]]));
        assert!(!in_k_theta_inv(&l1) && !in_k_theta_inv(&l2));
        assert!(l1.satisfies([[0, 0], [1, 0]]));
    }
}
