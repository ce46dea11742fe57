//! The spherical Ext-algebra E_K* realized as the center 𝒵(E_J*) modulo the
//! two-dimensional kernel kψ_{s₀} ⊕ kβ_{s₀} of the squeeze map
//! z ↦ C*_{J,K}(e·z·e), e = e_{J,K} = τ_{s₀} + 1.
//!
//! Canonical representatives live in 𝔷*, spanned by ζᵐ (↦ Tᵐ),
//! f((ζ−1)ζᵐ) (↦ u·Tᵐ), the β-pairs (↦ Bₙ), φ_1 (↦ Φ₁) and the ψ-pairs
//! (↦ Ψₙ).

use std::collections::BTreeMap;
use std::fmt;

use crate::exec::Exec;
use crate::ext_iwahori::{self, centrality_window, is_central, CenterLabel, Coords, ExtElt, ExtKey};
use crate::field::{kernel, Echelon};
use crate::weyl::WeylElt;
use crate::{Error, Fp};

/// Writes `z` in the predicted basis of 𝒵(E_J*); `None` if `z` is outside
/// its span.
pub fn center_coordinates(z: &ExtElt) -> Option<BTreeMap<CenterLabel, u32>> {
    let f = z.field();
    let labels = CenterLabel::all_predicted(z.max_length() + 2);
    let elems: Vec<ExtElt> = labels.iter().map(|l| l.element(f)).collect();
    let bound = elems.iter().map(|e| e.max_length()).max().unwrap_or(0).max(z.max_length());
    let coords = Coords::new(ExtKey::up_to_length(bound, None));
    let cols: Vec<Vec<u32>> = elems.iter().chain([z]).map(|e| coords.vector(e).unwrap()).collect();
    let n = cols.len();
    let rows = (0..coords.len()).map(|i| cols.iter().map(|c| c[i]).collect::<Vec<u32>>());
    let ker = kernel(f, n, rows);
    // Labels are independent, so at most one kernel vector involves z.
    let v = ker.iter().find(|v| v[n - 1] != 0)?;
    let scale = f.neg(f.inv(v[n - 1]));
    let mut out = BTreeMap::new();
    for (l, &c) in labels.iter().zip(v) {
        let c = f.mul(c, scale);
        if c != 0 {
            out.insert(*l, c);
        }
    }
    Some(out)
}

/// An element of E_K*, stored as its canonical representative in 𝔷*.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphericalExtElt {
    rep: ExtElt,
    coords: BTreeMap<CenterLabel, u32>,
}

impl SphericalExtElt {
    fn from_coords(f: Fp, coords: BTreeMap<CenterLabel, u32>) -> Self {
        let coords: BTreeMap<CenterLabel, u32> =
            coords.into_iter().filter(|(l, c)| !l.in_kernel() && *c != 0).collect();
        let rep = coords.iter().fold(ExtElt::zero(f), |acc, (l, &c)| acc.add(&l.element(f).scale(c)));
        SphericalExtElt { rep, coords }
    }

    /// The basis element named by a non-kernel label (Tᵐ, u·Tᵐ, Bₙ, Φ₁, Ψₙ).
    pub fn basis(f: Fp, label: CenterLabel) -> Self {
        assert!(!label.in_kernel(), "{label} lies in the kernel");
        Self::from_coords(f, BTreeMap::from([(label, 1)]))
    }

    pub fn one(f: Fp) -> Self {
        Self::basis(f, CenterLabel::Zeta(0))
    }

    /// T, the image of ζ_J.
    pub fn t(f: Fp) -> Self {
        Self::basis(f, CenterLabel::Zeta(1))
    }

    /// u, the image of f(ζ − 1).
    pub fn u(f: Fp) -> Self {
        Self::basis(f, CenterLabel::Odd(0))
    }

    pub fn representative(&self) -> &ExtElt {
        &self.rep
    }

    pub fn coords(&self) -> &BTreeMap<CenterLabel, u32> {
        &self.coords
    }

    pub fn field(&self) -> Fp {
        self.rep.field()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = self.field();
        let mut c = self.coords.clone();
        for (&l, &v) in &other.coords {
            let e = c.entry(l).or_insert(0);
            *e = f.add(*e, v);
        }
        Self::from_coords(f, c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(self.field().p() - 1))
    }

    pub fn scale(&self, s: u32) -> Self {
        let f = self.field();
        Self::from_coords(f, self.coords.iter().map(|(&l, &c)| (l, f.mul(c, s % f.p()))).collect())
    }

    /// Degree of a homogeneous element (None for zero or mixed elements).
    pub fn degree(&self) -> Option<u8> {
        let mut d = self.coords.keys().map(|l| l.degree());
        let first = d.next()?;
        d.all(|x| x == first).then_some(first)
    }
}

impl fmt::Display for SphericalExtElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return f.write_str("0");
        }
        let fp = self.field();
        let parts: Vec<String> =
            self.coords.iter().map(|(l, &c)| format!("{}*{}", fp.signed(c), ek_name(*l))).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Name of the E_K* basis element attached to a label of 𝔷*.
pub fn ek_name(l: CenterLabel) -> String {
    match l {
        CenterLabel::Zeta(m) => format!("T^{m}"),
        CenterLabel::Odd(m) => format!("u*T^{m}"),
        CenterLabel::BetaPair(n) => format!("B_{n}"),
        CenterLabel::Phi1 => "Phi1".into(),
        CenterLabel::PsiPair(n) => format!("Psi_{n}"),
        other => format!("ker:{other}"),
    }
}

/// The squeeze map, realized as projection of the center onto 𝔷* along
/// span{ψ_{s₀}, β_{s₀}}.
pub fn squeeze(z: &ExtElt, exec: Exec) -> Result<SphericalExtElt, Error> {
    let f = z.field();
    if !is_central(z, centrality_window(z.max_length()), exec) {
        return Err(Error::NotCentral(z.to_string()));
    }
    let coords =
        center_coordinates(z).ok_or_else(|| Error::NotCentral(format!("{z} is outside the predicted center")))?;
    Ok(SphericalExtElt::from_coords(f, coords))
}

/// Product in E_K*: multiply representatives in E_J* and re-canonicalize.
pub fn ek_mul(a: &SphericalExtElt, b: &SphericalExtElt) -> SphericalExtElt {
    let f = a.field();
    let prod = a.rep.mul(&b.rep);
    let coords = center_coordinates(&prod).expect("products of central elements are central");
    SphericalExtElt::from_coords(f, coords)
}

/// e·z·e with e = τ_{s₀} + 1.
pub fn sandwich(z: &ExtElt) -> ExtElt {
    let f = z.field();
    let e = ExtElt::one(f).add(&ExtElt::tau(f, WeylElt::S0));
    e.mul(z).mul(&e)
}

/// Kernel of z ↦ e·z·e on the predicted center basis with support ≤
/// `max_len`, in label coordinates.
pub fn sandwich_kernel(f: Fp, max_len: u64) -> Vec<BTreeMap<CenterLabel, u32>> {
    let labels = CenterLabel::all_predicted(max_len);
    let images: Vec<ExtElt> = labels.iter().map(|l| sandwich(&l.element(f))).collect();
    let bound = images.iter().map(|e| e.max_length()).max().unwrap_or(0);
    let coords = Coords::new(ExtKey::up_to_length(bound, None));
    let cols: Vec<Vec<u32>> = images.iter().map(|e| coords.vector(e).unwrap()).collect();
    let rows = (0..coords.len()).map(|i| cols.iter().map(|c| c[i]).collect::<Vec<u32>>());
    kernel(f, labels.len(), rows)
        .into_iter()
        .map(|v| labels.iter().zip(v).filter(|(_, c)| *c != 0).map(|(l, c)| (*l, c)).collect())
        .collect()
}

/// Canonical E_K* basis labels with index ≤ `max_index`.
pub fn ek_basis_labels(max_index: u64) -> Vec<CenterLabel> {
    let m = max_index as u32;
    let mut out: Vec<CenterLabel> = (0..=m).map(CenterLabel::Zeta).collect();
    out.extend((0..=m).map(CenterLabel::Odd));
    out.extend((0..=max_index).map(CenterLabel::BetaPair));
    out.push(CenterLabel::Phi1);
    out.extend((0..=max_index).map(CenterLabel::PsiPair));
    out
}

/// Outcome of [`graded_comm_report`].
#[derive(Clone, Debug)]
pub struct GradedCommReport {
    pub max_index: u64,
    pub commutative: bool,
    pub graded_commutative: bool,
    /// An odd element with nonzero square, with its square.
    pub witness: Option<(SphericalExtElt, SphericalExtElt)>,
    pub kernel_dim: usize,
    /// Kernel equals span{ψ_{s₀}, β_{s₀}}.
    pub kernel_matches: bool,
    /// squeeze restricted to 𝔷* is injective.
    pub splitting: bool,
    /// T acts on the Φ₁ line by this scalar.
    pub phi1_eigenvalue: Option<u32>,
    /// Pairs that failed commutativity (empty on success).
    pub failures: Vec<(String, String)>,
}

pub fn graded_comm_report(f: Fp, max_index: u64, exec: Exec) -> GradedCommReport {
    let labels = ek_basis_labels(max_index);
    let basis: Vec<SphericalExtElt> = labels.iter().map(|&l| SphericalExtElt::basis(f, l)).collect();
    let pairs: Vec<(usize, usize)> = (0..basis.len()).flat_map(|i| (i..basis.len()).map(move |j| (i, j))).collect();
    let results = exec.map(&pairs, |&(i, j)| {
        let (a, b) = (&basis[i], &basis[j]);
        let ab = ek_mul(a, b);
        let ba = ek_mul(b, a);
        let sign_ok = {
            let (da, db) = (labels[i].degree(), labels[j].degree());
            let odd = da % 2 == 1 && db % 2 == 1;
            if odd {
                ab == ba.scale(f.p() - 1)
            } else {
                ab == ba
            }
        };
        (ab == ba, sign_ok)
    });
    let failures: Vec<(String, String)> = pairs
        .iter()
        .zip(&results)
        .filter(|(_, r)| !r.0)
        .map(|(&(i, j), _)| (ek_name(labels[i]), ek_name(labels[j])))
        .collect();
    let u = SphericalExtElt::u(f);
    let u2 = ek_mul(&u, &u);
    let witness = (!u2.is_zero()).then(|| (u.clone(), u2));
    let ker = sandwich_kernel(f, 2 * max_index + 2);
    let expected: Vec<CenterLabel> = vec![CenterLabel::PsiS0, CenterLabel::BetaS0];
    let ker_span =
        Echelon::new(f, 2, ker.iter().map(|v| expected.iter().map(|l| v.get(l).copied().unwrap_or(0)).collect()));
    let kernel_matches = ker.iter().all(|v| v.keys().all(|l| l.in_kernel())) && ker_span.rank() == 2;
    let z_labels: Vec<CenterLabel> =
        CenterLabel::all_predicted(2 * max_index + 2).into_iter().filter(|l| !l.in_kernel()).collect();
    let images: Vec<ExtElt> = z_labels.iter().map(|l| sandwich(&l.element(f))).collect();
    let bound = images.iter().map(|e| e.max_length()).max().unwrap_or(0);
    let coords = Coords::new(ExtKey::up_to_length(bound, None));
    let rank = Echelon::new(f, coords.len(), images.iter().map(|e| coords.vector(e).unwrap())).rank();
    let phi1 = SphericalExtElt::basis(f, CenterLabel::Phi1);
    let t_phi1 = ek_mul(&SphericalExtElt::t(f), &phi1);
    let phi1_eigenvalue = (0..f.p()).find(|&c| t_phi1 == phi1.scale(c));
    GradedCommReport {
        max_index,
        commutative: failures.is_empty(),
        graded_commutative: results.iter().all(|r| r.1),
        witness,
        kernel_dim: ker.len(),
        kernel_matches,
        splitting: rank == z_labels.len(),
        phi1_eigenvalue,
        failures,
    }
}

/// The odd generator f(ζ − 1) of 𝔷¹.
pub fn odd_generator(f: Fp) -> ExtElt {
    ext_iwahori::odd_center(f, 0)
}
