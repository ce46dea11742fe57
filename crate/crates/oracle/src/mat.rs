//! 2×2 matrices over a [`ResidueRing`].

use std::fmt;

use crate::ring::{El, ResidueRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    pub a: El,
    pub b: El,
    pub c: El,
    pub d: El,
}

impl Mat {
    pub fn new(a: El, b: El, c: El, d: El) -> Self {
        Mat { a, b, c, d }
    }

    pub fn identity(r: &ResidueRing) -> Self {
        Mat::new(r.one(), r.zero(), r.zero(), r.one())
    }

    pub fn from_ints(r: &ResidueRing, [a, b, c, d]: [i64; 4]) -> Self {
        Mat::new(r.int(a), r.int(b), r.int(c), r.int(d))
    }

    pub fn upper(r: &ResidueRing, x: El) -> Self {
        Mat::new(r.one(), x, r.zero(), r.one())
    }

    pub fn lower(r: &ResidueRing, x: El) -> Self {
        Mat::new(r.one(), r.zero(), x, r.one())
    }

    /// diag(t, t⁻¹) for a unit t.
    pub fn torus(r: &ResidueRing, t: El) -> Self {
        Mat::new(t, r.zero(), r.zero(), r.inv(t).expect("torus entry must be a unit"))
    }

    pub fn mul(&self, r: &ResidueRing, o: &Mat) -> Mat {
        Mat {
            a: r.add(r.mul(self.a, o.a), r.mul(self.b, o.c)),
            b: r.add(r.mul(self.a, o.b), r.mul(self.b, o.d)),
            c: r.add(r.mul(self.c, o.a), r.mul(self.d, o.c)),
            d: r.add(r.mul(self.c, o.b), r.mul(self.d, o.d)),
        }
    }

    /// Inverse of a determinant-one matrix.
    pub fn inv(&self, r: &ResidueRing) -> Mat {
        Mat { a: self.d, b: r.neg(self.b), c: r.neg(self.c), d: self.a }
    }

    pub fn det(&self, r: &ResidueRing) -> El {
        r.sub(r.mul(self.a, self.d), r.mul(self.b, self.c))
    }

    pub fn pow(&self, r: &ResidueRing, mut e: u64) -> Mat {
        let (mut base, mut acc) = (*self, Mat::identity(r));
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(r, &base);
            }
            base = base.mul(r, &base);
            e >>= 1;
        }
        acc
    }

    /// x·y·x⁻¹·y⁻¹.
    pub fn commutator(&self, r: &ResidueRing, y: &Mat) -> Mat {
        self.mul(r, y).mul(r, &self.inv(r)).mul(r, &y.inv(r))
    }

    /// g·x·g⁻¹.
    pub fn conj(&self, r: &ResidueRing, g: &Mat) -> Mat {
        g.mul(r, self).mul(r, &g.inv(r))
    }

    pub fn display<'a>(&'a self, r: &'a ResidueRing) -> MatDisplay<'a> {
        MatDisplay { m: self, r }
    }
}

pub struct MatDisplay<'a> {
    m: &'a Mat,
    r: &'a ResidueRing,
}

impl fmt::Display for MatDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.r;
        write!(f, "({} {}; {} {})", r.display(self.m.a), r.display(self.m.b), r.display(self.m.c), r.display(self.m.d))
    }
}
