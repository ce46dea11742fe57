//! The named verifications: one per acceptance criterion, plus the short
//! ids `squeeze-kernel`, `center-deg0` and `frattini-J`.
//!
//! Each check recomputes its statement from scratch and returns a
//! [`Verdict`] carrying machine-readable details (witnesses on failure).

use std::collections::BTreeMap;

use anyhow::{bail, Result};
use heckext::exec::Exec;
use heckext::ext_iwahori::{self, centralizer, finite_generation_check, pairing, CenterLabel, ExtElt, ExtKey, Kind};
use heckext::ext_spherical::{ek_mul, graded_comm_report, squeeze, SphericalExtElt};
use heckext::field::Echelon;
use heckext::hecke::{self, chi_triv, idempotent, map_c, map_r, satake_t_power, HeckeElt, Level, LevelPair};
use heckext::{ExtendedWeylElt, Fp, Gen, WeylElt};
use heckext_oracle::closure::DEFAULT_CAP;
use heckext_oracle::exact::{cartan_samples, double_coset_count};
use heckext_oracle::frattini::{frattini_quotient, h1_dimension};
use heckext_oracle::index::{index_mod_p, index_mod_p_enumerated};
use heckext_oracle::pattern::{GroupDescriptor, Pattern};
use heckext_oracle::ring::ResidueRing;
use heckext_oracle::transfer::{transfer_map, Transfer};
use serde_json::{json, Value};

use crate::render::spherical_json;
use crate::RunConfig;

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub id: &'static str,
    /// Acceptance criterion number, if the id is one.
    pub criterion: Option<u8>,
    pub statement: &'static str,
    pub pass: bool,
    pub details: Value,
}

impl Verdict {
    pub fn line(&self) -> String {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        match self.criterion {
            Some(n) => format!("{tag} [{n:>2}] {}: {}", self.id, self.statement),
            None => format!("{tag} {}: {}", self.id, self.statement),
        }
    }

    pub fn json(&self) -> Value {
        json!({
            "id": self.id,
            "criterion": self.criterion,
            "statement": self.statement,
            "pass": self.pass,
            "details": self.details,
        })
    }
}

type CheckFn = fn(&RunConfig) -> Result<(bool, Value)>;

struct Check {
    id: &'static str,
    criterion: Option<u8>,
    statement: &'static str,
    run: CheckFn,
}

const CHECKS: &[Check] = &[
    Check {
        id: "hecke-relations",
        criterion: Some(1),
        statement: "H_J and H associative on basis triples with lengths <= 8; quadratic relations",
        run: hecke_relations,
    },
    Check {
        id: "satake",
        criterion: Some(2),
        statement: "tau^K[s0*theta^n] = T^n - T^(n-1) for 1 <= n <= 10",
        run: satake,
    },
    Check {
        id: "level-change",
        criterion: Some(3),
        statement: "C(R(a)) = [V:U]^2 a, C(a) = C(eae), chi compatibility, lengths <= 8",
        run: level_change,
    },
    Check {
        id: "counterexample",
        criterion: Some(4),
        statement: "no scalar multiple of C_{I,K} is a unital algebra map",
        run: counterexample,
    },
    Check {
        id: "ext-structure",
        criterion: Some(5),
        statement: "E_J products, associativity, peeling, transport, pairing",
        run: ext_structure,
    },
    Check {
        id: "center",
        criterion: Some(6),
        statement: "centralizer dimensions 5, 4, 5, 6 at max_len 8",
        run: center,
    },
    Check {
        id: "finite-generation",
        criterion: Some(7),
        statement: "E_J basis of length <= 8 generated over the center by S",
        run: finite_generation,
    },
    Check {
        id: "squeeze",
        criterion: Some(8),
        statement: "squeeze kernel, multiplicativity, u^2 = B_0",
        run: squeeze_check,
    },
    Check {
        id: "frattini",
        criterion: Some(9),
        statement: "Frattini quotients of J, K, J_w, K_theta^n, L",
        run: frattini,
    },
    Check {
        id: "transfer-zero",
        criterion: Some(10),
        statement: "transfer to the s-conjugate is zero; I_w in J_w transfer inverts",
        run: transfer_zero,
    },
    Check {
        id: "indices",
        criterion: Some(11),
        statement: "[V_w:U_w] mod p matches the algebraic rule, l(w) <= 4",
        run: indices,
    },
    Check {
        id: "double-cosets",
        criterion: Some(12),
        statement: "one double coset for n = 0, 1, 2; Cartan invariants of K theta K theta K in {0,1,2}",
        run: double_cosets,
    },
    Check {
        id: "squeeze-kernel",
        criterion: None,
        statement: "squeeze kernel is span{psi_s0, beta_s0}",
        run: squeeze_kernel,
    },
    Check {
        id: "center-deg0",
        criterion: None,
        statement: "degree-0 centralizer at max_len is spanned by powers of zeta",
        run: center_deg0,
    },
    Check { id: "frattini-J", criterion: None, statement: "the Frattini quotient of J is trivial", run: frattini_j },
];

/// Criteria that fail for documented reasons (see the README).
pub const KNOWN_FAILURES: &[u8] = &[12];

/// All ids accepted by [`verify`], `all` included.
pub fn ids() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.id).chain(["all"]).collect()
}

fn run_check(c: &Check, cfg: &RunConfig) -> Result<Verdict> {
    let (pass, details) = (c.run)(cfg)?;
    Ok(Verdict { id: c.id, criterion: c.criterion, statement: c.statement, pass, details })
}

/// Runs one check by id, or every acceptance criterion for `all`.
pub fn verify(id: &str, cfg: &RunConfig) -> Result<Vec<Verdict>> {
    cfg.validate()?;
    if id == "all" {
        return acceptance(cfg);
    }
    let Some(c) = CHECKS.iter().find(|c| c.id == id) else {
        bail!("unknown statement id {id:?}; known ids: {}", ids().join(", "));
    };
    Ok(vec![run_check(c, cfg)?])
}

/// The twelve acceptance criteria in order.
pub fn acceptance(cfg: &RunConfig) -> Result<Vec<Verdict>> {
    CHECKS.iter().filter(|c| c.criterion.is_some()).map(|c| run_check(c, cfg)).collect()
}

/// Collects labelled failures.
#[derive(Default)]
struct Failures(Vec<String>);

impl Failures {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok && self.0.len() < 20 {
            self.0.push(what());
        }
    }

    fn pass(&self) -> bool {
        self.0.is_empty()
    }
}

fn tau(level: Level, f: Fp, w: WeylElt) -> HeckeElt {
    HeckeElt::tau(level, f, w)
}

fn spherical_basis(max_len: u64) -> Vec<WeylElt> {
    WeylElt::up_to_length(max_len).into_iter().filter(|w| w.in_kdk()).collect()
}

fn level_basis(level: Level, f: Fp, max_len: u64) -> Vec<HeckeElt> {
    match level {
        Level::I => ExtendedWeylElt::up_to_length(max_len, f.p() - 1)
            .into_iter()
            .map(|k| HeckeElt::basis(Level::I, f, k))
            .collect(),
        Level::J => WeylElt::up_to_length(max_len).into_iter().map(|w| tau(Level::J, f, w)).collect(),
        Level::K => spherical_basis(max_len).into_iter().map(|w| tau(Level::K, f, w)).collect(),
    }
}

fn associativity_failures<E, M>(basis: &[E], exec: Exec, mul: M) -> Vec<String>
where
    E: PartialEq + std::fmt::Display + Send + Sync,
    M: Fn(&E, &E) -> E + Sync + Send,
{
    let n = basis.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let products: Vec<E> = exec.map(&pairs, |&(i, j)| mul(&basis[i], &basis[j]));
    let idx: Vec<usize> = (0..n).collect();
    exec.map(&idx, |&i| {
        let mut bad = Vec::new();
        for j in 0..n {
            let ab = &products[i * n + j];
            for k in 0..n {
                let left = mul(ab, &basis[k]);
                let right = mul(&basis[i], &products[j * n + k]);
                if left != right && bad.len() < 3 {
                    bad.push(format!("({})({})({})", basis[i], basis[j], basis[k]));
                }
            }
        }
        bad
    })
    .into_iter()
    .flatten()
    .take(10)
    .collect()
}

fn hecke_relations(cfg: &RunConfig) -> Result<(bool, Value)> {
    let f = cfg.field();
    let mul = |a: &HeckeElt, b: &HeckeElt| a.mul(b).expect("same level");
    let hj = level_basis(Level::J, f, 8);
    let h = level_basis(Level::I, f, 8);
    let mut fails = Failures::default();
    let bad_j = associativity_failures(&hj, cfg.exec, mul);
    let bad_h = associativity_failures(&h, cfg.exec, mul);
    fails.check(bad_j.is_empty(), || format!("H_J associativity: {bad_j:?}"));
    fails.check(bad_h.is_empty(), || format!("H associativity: {bad_h:?}"));
    let e_j = idempotent(LevelPair::IJ, f);
    for s in [Gen::S0, Gen::S1] {
        let t = tau(Level::J, f, s.elt());
        fails.check(mul(&t, &t) == t.neg(), || format!("(tau^J[{s}])^2 != -tau^J[{s}]"));
        let st = HeckeElt::basis(Level::I, f, ExtendedWeylElt::simple(s, f.p() - 1));
        fails.check(mul(&st, &st) == mul(&e_j, &st).neg(), || format!("(tau[~{s}])^2 != -e_J tau[~{s}]"));
    }
    let triples = hj.len().pow(3) + h.len().pow(3);
    Ok((fails.pass(), json!({ "triples": triples, "failures": fails.0 })))
}

fn satake(cfg: &RunConfig) -> Result<(bool, Value)> {
    let f = cfg.field();
    let mut fails = Failures::default();
    for n in 1..=10u32 {
        let lhs = tau(Level::K, f, WeylElt::s0_theta(n as i64));
        let rhs = satake_t_power(f, n).sub(&satake_t_power(f, n - 1))?;
        fails.check(lhs == rhs, || format!("n = {n}: {lhs} != {rhs}"));
    }
    Ok((fails.pass(), json!({ "n_max": 10, "failures": fails.0 })))
}

fn level_change(cfg: &RunConfig) -> Result<(bool, Value)> {
    let f = cfg.field();
    let mut fails = Failures::default();
    let mut count = 0usize;
    for pair in LevelPair::ALL {
        let idx = pair.index(f);
        let idx2 = f.mul(idx, idx);
        let e = idempotent(pair, f);
        for a in level_basis(pair.upper, f, 8) {
            let cr = map_c(pair, &map_r(pair, &a)?)?;
            fails.check(cr == a.scale(idx2), || format!("{pair}: C(R({a})) = {cr}"));
            let chi_r = f.mul(chi_triv(&map_r(pair, &a)?), f.inv(idx));
            fails.check(chi_r == chi_triv(&a), || format!("{pair}: chi mismatch on {a}"));
            count += 1;
        }
        for a in level_basis(pair.lower, f, 8) {
            let eae = e.mul(&a)?.mul(&e)?;
            fails.check(map_c(pair, &a)? == map_c(pair, &eae)?, || format!("{pair}: C({a}) != C(e a e)"));
            count += 1;
        }
    }
    Ok((fails.pass(), json!({ "elements": count, "failures": fails.0 })))
}

fn counterexample(cfg: &RunConfig) -> Result<(bool, Value)> {
    let f = cfg.field();
    let order = f.p() - 1;
    let st = |s: Gen| HeckeElt::basis(Level::I, f, ExtendedWeylElt::simple(s, order));
    let (a, b) = (st(Gen::S1), st(Gen::S0));
    let prod = a.mul(&b)?.mul(&a)?;
    let w = WeylElt::from_word(&[Gen::S1, Gen::S0, Gen::S1]);
    let c_prod = map_c(LevelPair::IK, &prod)?;
    let expected = tau(Level::K, f, w).neg();
    let ca = map_c(LevelPair::IK, &a)?;
    let cb = map_c(LevelPair::IK, &b)?;
    let c_factors = ca.mul(&cb)?.mul(&ca)?;
    let one_i = HeckeElt::one(Level::I, f);
    let one_k = HeckeElt::one(Level::K, f);
    // c·C is a unital algebra map only if it is unital and multiplicative on the triple.
    let scalars: Vec<u32> = (0..f.p())
        .filter(|&c| {
            let unital = map_c(LevelPair::IK, &one_i).map(|x| x.scale(c) == one_k).unwrap_or(false);
            let c3 = f.pow(c, 3);
            unital && c_prod.scale(c) == c_factors.scale(c3)
        })
        .collect();
    let pass = c_prod == expected && c_factors.is_zero() && scalars.is_empty();
    Ok((
        pass,
        json!({
            "C(product)": c_prod.to_string(),
            "product of C": c_factors.to_string(),
            "admissible_scalars": scalars,
        }),
    ))
}

fn w(s: &str) -> WeylElt {
    s.parse().expect("valid Weyl word")
}

/// τ_u ↦ x_u on F¹H_J (u ≠ 1); None if a τ_1 term is present.
fn transport(a: &HeckeElt) -> Option<ExtElt> {
    let f = a.field();
    let mut out = ExtElt::zero(f);
    for (k, c) in a.terms() {
        if k.base().is_one() {
            return None;
        }
        out = out.add(&ExtElt::x(f, k.base()).scale(c));
    }
    Some(out)
}

fn ext_structure(cfg: &RunConfig) -> Result<(bool, Value)> {
    let f = cfg.field();
    let mut fails = Failures::default();
    let (t, x, al, ph) = (
        |s: &str| ExtElt::tau(f, w(s)),
        |s: &str| ExtElt::x(f, w(s)),
        |s: &str| ExtElt::alpha(f, w(s)),
        |s: &str| ExtElt::phi(f, w(s)),
    );
    // Product identities.
    let fz = ext_iwahori::odd_center(f, 0);
    let identities = [
        ("x[s1]^2 = -alpha[s1]", x("s1").mul(&x("s1")) == al("s1").neg()),
        ("x[s0]^2 = -alpha[s0]", x("s0").mul(&x("s0")) == al("s0").neg()),
        ("tau[s0] alpha[s1s0] = 0", t("s0").mul(&al("s1s0")).is_zero()),
        ("x[s0] alpha[s0s1] = -phi[s1] + phi[s0s1]", x("s0").mul(&al("s0s1")) == ph("s1").neg().add(&ph("s0s1"))),
        ("x[s0s1] x[s1s0] = 0", x("s0s1").mul(&x("s1s0")).is_zero()),
        (
            "f(zeta-1)^2 = beta[s0] + beta[s1]",
            fz.mul(&fz) == ext_iwahori::beta(f, WeylElt::S0).add(&ext_iwahori::beta(f, WeylElt::S1)),
        ),
    ];
    for (name, ok) in identities {
        fails.check(ok, || format!("identity {name}"));
    }
    // Associativity on triples of total length ≤ 6.
    let keys = ExtKey::up_to_length(6, None);
    let bad_assoc: Vec<String> = cfg
        .exec
        .map(&keys, |&a| {
            let ea = ExtElt::from_key(f, a);
            let mut bad = Vec::new();
            for &b in keys.iter().filter(|b| a.length() + b.length() <= 6) {
                let eb = ExtElt::from_key(f, b);
                let ab = ea.mul(&eb);
                for &c in keys.iter().filter(|c| a.length() + b.length() + c.length() <= 6) {
                    let ec = ExtElt::from_key(f, c);
                    if ab.mul(&ec) != ea.mul(&eb.mul(&ec)) {
                        bad.push(format!("({a})({b})({c})"));
                    }
                }
            }
            bad
        })
        .into_iter()
        .flatten()
        .take(10)
        .collect();
    fails.check(bad_assoc.is_empty(), || format!("associativity: {bad_assoc:?}"));
    // Peeling consistency: both factorizations of x_v act like x_v.
    let tests: Vec<ExtElt> = ExtKey::up_to_length(5, None).into_iter().map(|k| ExtElt::from_key(f, k)).collect();
    for v in WeylElt::up_to_length(6).into_iter().filter(|v| v.length() >= 2) {
        let (eps, delta) = (v.last_letter().expect("nontrivial"), v.first_letter().expect("nontrivial"));
        let u = v.mul(eps.elt());
        let u2 = delta.elt().mul(v);
        let (tu, xe) = (ExtElt::tau(f, u), ExtElt::x(f, eps.elt()));
        let (xd, tu2) = (ExtElt::x(f, delta.elt()), ExtElt::tau(f, u2));
        let xv = ExtElt::x(f, v);
        fails.check(tu.mul(&xe) == xv && xd.mul(&tu2) == xv, || format!("peeling of x[{v}]"));
        for g in &tests {
            let right = xv.mul(g);
            let left = g.mul(&xv);
            let ok = tu.mul(&xe.mul(g)) == right
                && xd.mul(&tu2.mul(g)) == right
                && g.mul(&tu).mul(&xe) == left
                && g.mul(&xd).mul(&tu2) == left;
            fails.check(ok, || format!("peeling of x[{v}] against {g}"));
        }
    }
    // Bimodule transport τ_w ↦ x_w.
    let words = WeylElt::up_to_length(6);
    for &wv in &words {
        for &ww in words.iter().filter(|w| !w.is_one()) {
            let (hv, hw) = (tau(Level::J, f, wv), tau(Level::J, f, ww));
            let (ev, xw) = (ExtElt::tau(f, wv), ExtElt::x(f, ww));
            let left = transport(&hv.mul(&hw)?);
            let right = transport(&hw.mul(&hv)?);
            fails.check(left == Some(ev.mul(&xw)), || format!("transport tau[{wv}] x[{ww}]"));
            fails.check(right == Some(xw.mul(&ev)), || format!("transport x[{ww}] tau[{wv}]"));
        }
    }
    // Pairing adjointness and nondegeneracy.
    for s in [WeylElt::S0, WeylElt::S1] {
        let h = ExtElt::tau(f, s);
        for &a in &words {
            for &b in &words {
                let (pa, tb) = (ExtElt::phi(f, a), ExtElt::tau(f, b));
                fails.check(pairing(&pa.mul(&h), &tb)? == pairing(&pa, &tb.mul(&h))?, || {
                    format!("<phi[{a}] tau[{s}], tau[{b}]>")
                });
                if !a.is_one() && !b.is_one() {
                    let (aa, xb) = (ExtElt::alpha(f, a), ExtElt::x(f, b));
                    fails.check(pairing(&aa.mul(&h), &xb)? == pairing(&aa, &xb.mul(&h))?, || {
                        format!("<alpha[{a}] tau[{s}], x[{b}]>")
                    });
                }
            }
        }
    }
    for n in 0..=6 {
        for (hi, lo) in [(Kind::Phi, Kind::Tau), (Kind::Alpha, Kind::X)] {
            let block: Vec<WeylElt> = WeylElt::up_to_length(n).into_iter().filter(|&u| hi.admits(u)).collect();
            let rows = block.iter().map(|&a| {
                block
                    .iter()
                    .map(|&b| {
                        pairing(&ExtElt::basis(f, hi, a), &ExtElt::basis(f, lo, b)).expect("degrees 3 and 0 or 2 and 1")
                    })
                    .collect::<Vec<u32>>()
            });
            let rank = Echelon::new(f, block.len(), rows).rank();
            fails.check(rank == block.len(), || format!("pairing block {}-{} at length {n}", hi.name(), lo.name()));
        }
    }
    Ok((fails.pass(), json!({ "identities": identities.len(), "failures": fails.0 })))
}

fn center(cfg: &RunConfig) -> Result<(bool, Value)> {
    let f = cfg.field();
    let degrees: Vec<u8> = (0..4).collect();
    let reports = cfg.exec.map(&degrees, |&d| centralizer(f, d, 8, Exec::Sequential));
    let dims: Vec<usize> = reports.iter().map(|r| r.dimension()).collect();
    let matches: Vec<bool> = reports.iter().map(|r| r.matches_expected).collect();
    let pass = dims == [5, 4, 5, 6] && matches.iter().all(|&m| m);
    Ok((pass, json!({ "max_len": 8, "dimensions": dims, "expected": [5, 4, 5, 6], "matches_expected": matches })))
}

fn finite_generation(cfg: &RunConfig) -> Result<(bool, Value)> {
    let r = finite_generation_check(cfg.field(), 8, cfg.exec);
    let missing: Vec<String> = r.missing.iter().map(|k| k.to_string()).collect();
    let bad: Vec<&String> = r.recursions.iter().filter(|x| !x.1).map(|x| &x.0).collect();
    Ok((
        r.pass(),
        json!({ "max_len": 8, "checked": r.checked, "recursions": r.recursions.len(), "missing": missing, "failed_recursions": bad }),
    ))
}

fn squeeze_check(cfg: &RunConfig) -> Result<(bool, Value)> {
    let f = cfg.field();
    let rep = graded_comm_report(f, 6, cfg.exec);
    let b0 = SphericalExtElt::basis(f, CenterLabel::BetaPair(0));
    let witness_ok = rep.witness.as_ref().is_some_and(|(_, sq)| *sq == b0);
    // Multiplicativity of squeeze on central basis pairs of index ≤ 6.
    let mut labels: Vec<CenterLabel> = (0..=6u32).flat_map(|m| [CenterLabel::Zeta(m), CenterLabel::Odd(m)]).collect();
    labels.extend((0..=6u64).flat_map(|n| [CenterLabel::BetaPair(n), CenterLabel::PsiPair(n)]));
    labels.extend([CenterLabel::Phi1, CenterLabel::PsiS0, CenterLabel::BetaS0]);
    let images: Vec<SphericalExtElt> =
        labels.iter().map(|l| squeeze(&l.element(f), cfg.exec)).collect::<Result<_, _>>()?;
    let pairs: Vec<(usize, usize)> = (0..labels.len()).flat_map(|i| (i..labels.len()).map(move |j| (i, j))).collect();
    let bad: Vec<String> = cfg
        .exec
        .map(&pairs, |&(i, j)| {
            let z = labels[i].element(f).mul(&labels[j].element(f));
            let lhs = squeeze(&z, Exec::Sequential);
            (lhs.as_ref().ok() != Some(&ek_mul(&images[i], &images[j])))
                .then(|| format!("{} * {}", labels[i], labels[j]))
        })
        .into_iter()
        .flatten()
        .collect();
    let unital = squeeze(&ExtElt::one(f), cfg.exec)? == SphericalExtElt::one(f);
    let pass = rep.commutative
        && !rep.graded_commutative
        && witness_ok
        && rep.kernel_dim == 2
        && rep.kernel_matches
        && rep.splitting
        && bad.is_empty()
        && unital;
    Ok((
        pass,
        json!({
            "commutative": rep.commutative,
            "graded_commutative": rep.graded_commutative,
            "witness": rep.witness.as_ref().map(|(u, sq)| json!({ "odd": spherical_json(u), "square": spherical_json(sq) })),
            "kernel_dim": rep.kernel_dim,
            "kernel_matches": rep.kernel_matches,
            "splitting": rep.splitting,
            "phi1_eigenvalue": rep.phi1_eigenvalue,
            "multiplicative_pairs": pairs.len(),
            "non_multiplicative": bad,
        }),
    ))
}

fn ring(cfg: &RunConfig, f: usize, m: u32) -> Result<ResidueRing> {
    Ok(ResidueRing::new(cfg.p, f, m)?)
}

fn frattini(cfg: &RunConfig) -> Result<(bool, Value)> {
    let ex = cfg.exec;
    let mut fails = Failures::default();
    let mut results = BTreeMap::new();
    let mut rank_of = |d: &GroupDescriptor, f: usize, m: u32| -> Result<u32> {
        let r = frattini_quotient(d, ring(cfg, f, m)?, DEFAULT_CAP, ex)?.rank;
        results.insert(format!("{} f={f} m={m}", d.name), r);
        Ok(r)
    };
    let named = |s: &str| -> GroupDescriptor { s.parse().expect("valid descriptor") };
    // Ranks at m = 3.
    let mut expect =
        vec![(named("J"), 0), (named("K"), 0), (named("Ktheta(1)"), 1), (named("Ktheta(2)"), 1), (named("L"), 3)];
    for word in ["s0", "s1", "s0s1", "s1s0"] {
        expect.push((GroupDescriptor::j_w(w(word)), 1));
    }
    for (d, r) in &expect {
        let got = rank_of(d, 1, 3)?;
        fails.check(got == *r, || format!("{}: rank {got}, expected {r}", d.name));
    }
    let h1 = h1_dimension(&named("L"), ring(cfg, 1, 3)?, DEFAULT_CAP, ex)?;
    fails.check(h1 == 3, || format!("dim H^1(L) = {h1}"));
    // Precision stability, one case per family.
    for (name, m, other) in [("K", 2, 3), ("J+(2)", 3, 4), ("Ktheta(2)", 3, 4), ("L", 3, 4)] {
        let d = named(name);
        let (a, b) = (rank_of(&d, 1, m)?, rank_of(&d, 1, other)?);
        fails.check(a == b, || format!("{name}: rank {a} at m = {m}, {b} at m = {other}"));
    }
    // Unramified quadratic case.
    let l2 = rank_of(&named("L"), 2, 2)?;
    fails.check(l2 == 6, || format!("L over q = p^2: rank {l2}, expected 6"));
    let j2 = rank_of(&named("J+(1)"), 2, 2)?;
    fails.check(j2 == 2, || format!("J+(1) over q = p^2: rank {j2}, expected 2"));
    Ok((fails.pass(), json!({ "ranks": results, "failures": fails.0 })))
}

fn transfer_zero(cfg: &RunConfig) -> Result<(bool, Value)> {
    let ex = cfg.exec;
    let r = ring(cfg, 1, 3)?;
    let mut fails = Failures::default();
    let mut cases = Vec::new();
    for v in WeylElt::up_to_length(2).into_iter().filter(|v| v.length() >= 1) {
        for s in [Gen::S0, Gen::S1] {
            if s.elt().mul(v).length() >= v.length() {
                continue;
            }
            let sup = Pattern::j().at(s.elt().mul(v));
            let sub = Pattern::j().at(v).conj(s.elt());
            let rep = transfer_map(r, sub, sup, DEFAULT_CAP, ex)?;
            fails.check(rep.is_zero() && rep.transversal_independent, || format!("s = {s}, w = {v}: {:?}", rep.matrix));
            cases.push(json!({
                "s": s.to_string(), "w": v.to_string(), "index": rep.index,
                "source_rank": rep.source_rank, "target_rank": rep.target_rank, "zero": rep.is_zero(),
            }));
        }
    }
    for v in [WeylElt::S0, WeylElt::S1] {
        let sup = Pattern::j().at(v).balanced();
        let t = Transfer::new(r, sup.pro_p(), sup, DEFAULT_CAP, ex)?;
        let ok = t.inverts_basis() && t.report()?.transversal_independent;
        fails.check(ok, || format!("I_w in J_w for w = {v} does not invert"));
        cases.push(json!({ "pair": format!("I_{v} in J_{v}"), "index": t.transversal.len(), "inverts": ok }));
    }
    Ok((fails.pass(), json!({ "m": 3, "cases": cases, "failures": fails.0 })))
}

fn indices(cfg: &RunConfig) -> Result<(bool, Value)> {
    let f = cfg.field();
    let mut fails = Failures::default();
    let mut count = 0;
    for v in WeylElt::up_to_length(4) {
        for pair in LevelPair::ALL {
            let got = index_mod_p(v, pair, ring(cfg, 1, 6)?)?;
            let want = pair.local_index(f, v);
            fails.check(got == want, || format!("{pair} at {v}: oracle {got}, rule {want}"));
            count += 1;
        }
    }
    for v in WeylElt::up_to_length(1) {
        for pair in LevelPair::ALL {
            let got = index_mod_p_enumerated(v, pair, ring(cfg, 1, 3)?, DEFAULT_CAP, cfg.exec)?;
            let want = pair.local_index(f, v);
            fails.check(got == want, || format!("{pair} at {v} (enumerated): oracle {got}, rule {want}"));
        }
    }
    // The map C uses the same rule.
    for v in WeylElt::up_to_length(4) {
        let a = tau(Level::J, f, v);
        let c = hecke::map_c(LevelPair::JK, &a)?;
        let coeff = c.terms().map(|(_, c)| c).next().unwrap_or(0);
        let want = index_mod_p(v, LevelPair::JK, ring(cfg, 1, 6)?)?;
        fails.check(coeff == want, || format!("C_(J,K)(tau[{v}]) coefficient {coeff}, oracle {want}"));
    }
    Ok((fails.pass(), json!({ "checked": count, "failures": fails.0 })))
}

fn double_cosets(cfg: &RunConfig) -> Result<(bool, Value)> {
    let counts: Vec<usize> =
        (0..3).map(|n| double_coset_count(cfg.p, n).map(|r| r.double_cosets)).collect::<Result<_, _>>()?;
    let cosets: Vec<usize> =
        (0..3).map(|n| double_coset_count(cfg.p, n).map(|r| r.cosets.len())).collect::<Result<_, _>>()?;
    let inv = cartan_samples(cfg.p, 200, cfg.seed)?;
    let mut hist = [0usize; 3];
    let in_range = inv.iter().all(|&n| n <= 2);
    for &n in inv.iter().filter(|&&n| n <= 2) {
        hist[n as usize] += 1;
    }
    let pass = counts == [1, 1, 1] && in_range;
    Ok((
        pass,
        json!({
            "double_cosets": counts,
            "expected": [1, 1, 1],
            "single_cosets": cosets,
            "cartan_samples": inv.len(),
            "cartan_histogram": hist,
            "cartan_in_range": in_range,
        }),
    ))
}

fn squeeze_kernel(cfg: &RunConfig) -> Result<(bool, Value)> {
    let rep = graded_comm_report(cfg.field(), cfg.max_len, cfg.exec);
    Ok((
        rep.kernel_dim == 2 && rep.kernel_matches,
        json!({ "kernel_dim": rep.kernel_dim, "kernel_matches": rep.kernel_matches }),
    ))
}

fn center_deg0(cfg: &RunConfig) -> Result<(bool, Value)> {
    let r = centralizer(cfg.field(), 0, cfg.max_len, cfg.exec);
    let predicted = r.predicted.len();
    Ok((
        r.matches_expected && r.dimension() == predicted,
        json!({ "max_len": cfg.max_len, "dimension": r.dimension(), "predicted": predicted }),
    ))
}

fn frattini_j(cfg: &RunConfig) -> Result<(bool, Value)> {
    let d: GroupDescriptor = "J".parse().expect("valid descriptor");
    let q = frattini_quotient(&d, ring(cfg, 1, cfg.precision)?, DEFAULT_CAP, cfg.exec)?;
    Ok((q.rank == 0, json!({ "m": cfg.precision, "order": q.order, "frattini_invariants": q.invariants() })))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_criteria_cover_one_to_twelve() {
        let all = ids();
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), all.len());
        let nums: Vec<u8> = CHECKS.iter().filter_map(|c| c.criterion).collect();
        assert_eq!(nums, (1..=12).collect::<Vec<_>>());
    }

    #[test]
    fn unknown_id_is_an_error() {
        assert!(verify("nope", &RunConfig::default()).is_err());
    }

    #[test]
    fn cheap_checks_pass_at_p7() {
        let cfg = RunConfig { p: 7, ..Default::default() };
        for id in ["satake", "counterexample"] {
            let v = verify(id, &cfg).unwrap();
            assert!(v[0].pass, "{id}: {}", v[0].details);
        }
    }

    #[test]
    fn transport_rejects_the_unit() {
        let f = Fp::new(5);
        assert!(transport(&HeckeElt::one(Level::J, f)).is_none());
        assert_eq!(transport(&tau(Level::J, f, WeylElt::S0)), Some(ExtElt::x(f, WeylElt::S0)));
    }
}
