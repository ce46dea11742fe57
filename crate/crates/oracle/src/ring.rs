//! The Galois ring GR(pᵐ, f) = W_m(𝔽_q): the unramified extension of ℤ/pᵐ
//! of degree f, with residue field 𝔽_q, q = pᶠ. Elements are coefficient
//! vectors in the basis 1, ξ over ℤ/pᵐ, where ξ is a root of a monic
//! polynomial irreducible mod p. Only f ∈ {1, 2} is supported.

use std::fmt;

use crate::Error;

pub const MAX_F: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct El(pub [u32; MAX_F]);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResidueRing {
    p: u32,
    f: usize,
    m: u32,
    pm: u32,
    // ξ² = r0 + r1·ξ when f = 2
    r: [u32; 2],
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl ResidueRing {
    pub fn new(p: u32, f: usize, m: u32) -> Result<Self, Error> {
        if !is_prime(p) {
            return Err(Error::Config(format!("{p} is not prime")));
        }
        if !(1..=MAX_F).contains(&f) {
            return Err(Error::Config(format!("unramification degree {f} is not supported (1 or 2)")));
        }
        if m == 0 || (p as u64).checked_pow(m).is_none_or(|x| x > 1 << 20) {
            return Err(Error::Config(format!("precision {m} out of range for p = {p}")));
        }
        let pm = p.pow(m);
        let mut r = [0, 0];
        if f == 2 {
            // ξ² = r0 + r1ξ with x² − r1x − r0 rootless mod p.
            r = (0..p)
                .flat_map(|r1| (0..p).map(move |r0| [r0, r1]))
                .find(|&[r0, r1]| (0..p).all(|x| !(x * x % p + p * p - r1 * x % p - r0).is_multiple_of(p)))
                .expect("an irreducible quadratic exists");
        }
        Ok(ResidueRing { p, f, m, pm, r })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn f(&self) -> usize {
        self.f
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// pᵐ, the characteristic.
    pub fn modulus(&self) -> u32 {
        self.pm
    }

    /// Residue field size q = pᶠ.
    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.f as u32)
    }

    /// Number of elements, qᵐ.
    pub fn size(&self) -> u64 {
        self.q().pow(self.m)
    }

    /// The same ring at another precision.
    pub fn with_precision(&self, m: u32) -> Result<Self, Error> {
        ResidueRing::new(self.p, self.f, m)
    }

    pub fn zero(&self) -> El {
        El::default()
    }

    pub fn one(&self) -> El {
        self.int(1)
    }

    pub fn int(&self, x: i64) -> El {
        let mut e = El::default();
        e.0[0] = x.rem_euclid(self.pm as i64) as u32;
        e
    }

    /// ξ (only for f = 2).
    pub fn xi(&self) -> El {
        let mut e = El::default();
        e.0[1] = 1 % self.pm;
        e
    }

    /// The additive generators 1, ξ, …, ξ^{f−1}.
    pub fn basis(&self) -> Vec<El> {
        (0..self.f)
            .map(|i| {
                let mut e = El::default();
                e.0[i] = 1;
                e
            })
            .collect()
    }

    pub fn add(&self, a: El, b: El) -> El {
        let mut out = El::default();
        for i in 0..self.f {
            out.0[i] = ((a.0[i] as u64 + b.0[i] as u64) % self.pm as u64) as u32;
        }
        out
    }

    pub fn neg(&self, a: El) -> El {
        let mut out = El::default();
        for i in 0..self.f {
            out.0[i] = (self.pm - a.0[i]) % self.pm;
        }
        out
    }

    pub fn sub(&self, a: El, b: El) -> El {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: El, b: El) -> El {
        let n = self.pm as u64;
        if self.f == 1 {
            return El([((a.0[0] as u64 * b.0[0] as u64) % n) as u32, 0]);
        }
        let (a0, a1, b0, b1) = (a.0[0] as u64, a.0[1] as u64, b.0[0] as u64, b.0[1] as u64);
        let c0 = a0 * b0 % n;
        let c1 = (a0 * b1 + a1 * b0) % n;
        let c2 = a1 * b1 % n;
        let (r0, r1) = (self.r[0] as u64, self.r[1] as u64);
        El([((c0 + c2 * r0) % n) as u32, ((c1 + c2 * r1) % n) as u32])
    }

    pub fn pow(&self, a: El, mut e: u64) -> El {
        let (mut base, mut acc) = (a, self.one());
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn is_zero(&self, a: El) -> bool {
        a.0[..self.f].iter().all(|&c| c == 0)
    }

    /// Reduction mod p, as coefficient residues.
    pub fn residue(&self, a: El) -> El {
        let mut out = El::default();
        for i in 0..self.f {
            out.0[i] = a.0[i] % self.p;
        }
        out
    }

    pub fn is_unit(&self, a: El) -> bool {
        !self.is_zero(self.residue(a))
    }

    /// p-adic valuation (m for zero).
    pub fn valuation(&self, a: El) -> u32 {
        (0..self.f)
            .map(|i| {
                let (mut c, mut v) = (a.0[i], 0);
                while c != 0 && c % self.p == 0 && v < self.m {
                    c /= self.p;
                    v += 1;
                }
                if c == 0 {
                    self.m
                } else {
                    v
                }
            })
            .min()
            .unwrap_or(self.m)
    }

    /// Whether a ∈ pᵏ·R.
    pub fn divisible(&self, a: El, k: u32) -> bool {
        self.valuation(a) >= k
    }

    /// a / pᵏ as an element of R/p^{m−k}, encoded with the same coefficients.
    pub fn div_p_pow(&self, a: El, k: u32) -> El {
        let d = self.p.pow(k.min(self.m));
        let mut out = El::default();
        for i in 0..self.f {
            out.0[i] = a.0[i] / d;
        }
        out
    }

    /// pᵏ·a.
    pub fn mul_p_pow(&self, a: El, k: u32) -> El {
        if k >= self.m {
            return self.zero();
        }
        self.mul(a, self.int(self.p.pow(k) as i64))
    }

    /// Inverse of a unit (Newton iteration from the residue inverse).
    pub fn inv(&self, a: El) -> Option<El> {
        if !self.is_unit(a) {
            return None;
        }
        // a^{q−2} inverts a mod p; each Newton step doubles the precision.
        let mut x = self.pow(a, self.q() - 2);
        let two = self.int(2);
        let mut prec = 1;
        while prec < self.m {
            x = self.mul(x, self.sub(two, self.mul(a, x)));
            prec *= 2;
        }
        Some(x)
    }

    /// The Teichmüller lift [a mod p]: the unique (q−1)-th root of unity
    /// congruent to a.
    pub fn teichmuller(&self, a: El) -> El {
        self.pow(self.residue(a), self.q().pow(self.m - 1))
    }

    /// A generator of 𝔽_q^×, lifted by Teichmüller.
    pub fn primitive_root(&self) -> El {
        let q1 = self.q() - 1;
        let primes: Vec<u64> = (2..=q1).filter(|&d| q1.is_multiple_of(d) && (2..d).all(|e| d % e != 0)).collect();
        let field = ResidueRing::new(self.p, self.f, 1).expect("valid field");
        let all = (0..self.q()).map(|i| {
            let mut e = El::default();
            let mut x = i;
            for c in e.0.iter_mut().take(self.f) {
                *c = (x % self.p as u64) as u32;
                x /= self.p as u64;
            }
            e
        });
        let g = all
            .filter(|&e| field.is_unit(e))
            .find(|&e| primes.iter().all(|&r| field.pow(e, q1 / r) != field.one()))
            .expect("𝔽_q^× is cyclic");
        self.teichmuller(g)
    }

    /// Dense index of an element of R/pᵏ (coefficients below pᵏ).
    pub fn encode(&self, a: El, k: u32) -> u64 {
        let radix = (self.p as u64).pow(k);
        (0..self.f).rev().fold(0, |acc, i| acc * radix + (a.0[i] as u64 % radix))
    }

    pub fn decode(&self, mut idx: u64, k: u32) -> El {
        let radix = (self.p as u64).pow(k);
        let mut out = El::default();
        for i in 0..self.f {
            out.0[i] = (idx % radix) as u32;
            idx /= radix;
        }
        out
    }

    /// Size of R/pᵏ, q^k.
    pub fn size_at(&self, k: u32) -> u64 {
        self.q().pow(k)
    }

    pub fn display(&self, a: El) -> ElDisplay {
        ElDisplay { el: a, f: self.f, pm: self.pm }
    }
}

pub struct ElDisplay {
    el: El,
    f: usize,
    pm: u32,
}

impl fmt::Display for ElDisplay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let signed = |c: u32| if c > self.pm / 2 { c as i64 - self.pm as i64 } else { c as i64 };
        if self.f == 1 {
            write!(f, "{}", signed(self.el.0[0]))
        } else {
            write!(f, "{}+{}ξ", signed(self.el.0[0]), signed(self.el.0[1]))
        }
    }
}
