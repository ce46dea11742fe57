//! Prime field arithmetic and exact Gaussian elimination over 𝔽ₚ.

use std::fmt;

/// The prime field 𝔽ₚ. Elements are plain `u32` residues in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
}

impl Fp {
    /// Panics unless `p` is an odd prime below 2¹⁶ (products then fit in a `u32`).
    pub fn new(p: u32) -> Self {
        assert!((3..1 << 16).contains(&p) && is_prime(p as u64), "{p} is not a supported prime");
        Fp { p }
    }

    pub fn p(self) -> u32 {
        self.p
    }

    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        a * b % self.p
    }

    pub fn pow(self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero");
        self.pow(a, self.p as u64 - 2)
    }

    /// Smallest generator of 𝔽ₚ^×.
    pub fn primitive_root(self) -> u32 {
        let n = self.p as u64 - 1;
        let factors = prime_factors(n);
        (2..self.p).find(|&g| factors.iter().all(|&f| self.pow(g, n / f) != 1)).expect("cyclic group has a generator")
    }

    /// Renders a residue as a signed representative in `(-p/2, p/2]`.
    pub fn signed(self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Row-reduced echelon form of a dense matrix over 𝔽ₚ.
///
/// Pivots are taken in increasing column order, so the result is canonical
/// for the row space and independent of the input row order.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub field: Fp,
    pub ncols: usize,
    /// Nonzero rows, each normalized to have a leading 1 at `pivots[i]`.
    pub rows: Vec<Vec<u32>>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: Fp, ncols: usize, rows: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let mut ech = Echelon { field, ncols, rows: Vec::new(), pivots: Vec::new() };
        for r in rows {
            ech.insert(r);
        }
        ech.finish();
        ech
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current rows; returns the remainder.
    pub fn reduce(&self, mut v: Vec<u32>) -> Vec<u32> {
        let f = self.field;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    if r != 0 {
                        *x = f.sub(*x, f.mul(c, r));
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v.to_vec()).iter().all(|&x| x == 0)
    }

    /// Adds a row, keeping the basis reduced; returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<u32>) -> bool {
        assert_eq!(v.len(), self.ncols);
        let f = self.field;
        let mut v = self.reduce(v);
        let Some(pc) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[pc]);
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c != 0 {
                for (x, &r) in row.iter_mut().zip(&v) {
                    if r != 0 {
                        *x = f.sub(*x, f.mul(c, r));
                    }
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(pc);
        true
    }

    fn finish(&mut self) {
        let mut idx: Vec<usize> = (0..self.rows.len()).collect();
        idx.sort_by_key(|&i| self.pivots[i]);
        self.rows = idx.iter().map(|&i| self.rows[i].clone()).collect();
        self.pivots = idx.iter().map(|&i| self.pivots[i]).collect();
    }

    /// Sorted copy of the basis (insert keeps rows in insertion order).
    pub fn sorted(mut self) -> Self {
        self.finish();
        self
    }
}

/// Basis of the right kernel {x : M x = 0} of an `nrows × ncols` matrix, in
/// reduced echelon form with pivots on the lowest free columns first.
pub fn kernel(field: Fp, ncols: usize, rows: impl IntoIterator<Item = Vec<u32>>) -> Vec<Vec<u32>> {
    let ech = Echelon::new(field, ncols, rows);
    let mut is_pivot = vec![false; ncols];
    for &pc in &ech.pivots {
        is_pivot[pc] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u32; ncols];
        v[free] = 1;
        for (row, &pc) in ech.rows.iter().zip(&ech.pivots) {
            v[pc] = field.neg(row[free]);
        }
        basis.push(v);
    }
    let ker = Echelon::new(field, ncols, basis);
    ker.rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        let f = Fp::new(5);
        assert_eq!(f.inv(2), 3);
        assert_eq!(f.primitive_root(), 2);
        assert_eq!(f.neg(0), 0);
        assert_eq!(f.signed(4), -1);
        assert_eq!(Fp::new(7).primitive_root(), 3);
    }

    #[test]
    fn kernel_of_rank_one() {
        let f = Fp::new(5);
        let ker = kernel(f, 3, vec![vec![1, 2, 3]]);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            let dot = (v[0] + 2 * v[1] + 3 * v[2]) % 5;
            assert_eq!(dot, 0);
        }
    }

    #[test]
    fn echelon_is_order_independent() {
        let f = Fp::new(7);
        let a = Echelon::new(f, 3, vec![vec![1, 1, 0], vec![0, 1, 1]]);
        let b = Echelon::new(f, 3, vec![vec![0, 1, 1], vec![1, 2, 1]]);
        assert_eq!(a.rows, b.rows);
    }
}
