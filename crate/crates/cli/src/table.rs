//! Multiplication tables of basis elements.

use std::fmt::Write;
use std::str::FromStr;

use anyhow::{bail, Result};
use heckext::ext_iwahori::{ExtElt, ExtKey};
use heckext::ext_spherical::{ek_basis_labels, ek_mul, SphericalExtElt};
use heckext::hecke::{HeckeElt, Level};
use heckext::{ExtendedWeylElt, WeylElt};
use serde_json::{json, Value};

use crate::render::{csv_field, ext_json, hecke_json, spherical_json};
use crate::{Format, RunConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algebra {
    /// The pro-p Iwahori–Hecke algebra.
    H,
    HJ,
    HK,
    EJ,
    EK,
}

impl FromStr for Algebra {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "H" => Algebra::H,
            "H_J" | "HJ" => Algebra::HJ,
            "H_K" | "HK" => Algebra::HK,
            "E_J" | "EJ" => Algebra::EJ,
            "E_K" | "EK" => Algebra::EK,
            _ => bail!("unknown algebra {s:?} (expected H, H_J, H_K, E_J or E_K)"),
        })
    }
}

impl Algebra {
    pub fn tag(self) -> &'static str {
        match self {
            Algebra::H => "H",
            Algebra::HJ => "H_J",
            Algebra::HK => "H_K",
            Algebra::EJ => "E_J",
            Algebra::EK => "E_K",
        }
    }
}

/// One product a·b of basis elements, as display strings and JSON.
#[derive(Clone, Debug)]
pub struct Row {
    pub a: String,
    pub b: String,
    pub product: String,
    pub json: Value,
}

pub struct Table {
    pub algebra: Algebra,
    pub p: u32,
    pub max_len: u64,
    pub rows: Vec<Row>,
}

fn rows_of<E, J, M>(basis: &[E], cfg: &RunConfig, mul: M, to_json: J) -> Vec<Row>
where
    E: std::fmt::Display + Sync,
    J: Fn(&E) -> Value + Sync,
    M: Fn(&E, &E) -> E + Sync + Send,
{
    let pairs: Vec<(usize, usize)> = (0..basis.len()).flat_map(|i| (0..basis.len()).map(move |j| (i, j))).collect();
    cfg.exec.map(&pairs, |&(i, j)| {
        let (a, b) = (&basis[i], &basis[j]);
        let ab = mul(a, b);
        Row {
            a: a.to_string(),
            b: b.to_string(),
            product: ab.to_string(),
            json: json!({ "a": to_json(a), "b": to_json(b), "product": to_json(&ab) }),
        }
    })
}

fn hecke_mul(a: &HeckeElt, b: &HeckeElt) -> HeckeElt {
    a.mul(b).expect("same level")
}

/// All pairwise products of basis elements with length (or index) ≤ max_len.
pub fn cmd_table(algebra: Algebra, cfg: &RunConfig) -> Result<Table> {
    cfg.validate()?;
    let f = cfg.field();
    let l = cfg.max_len;
    let rows = match algebra {
        Algebra::H => {
            let basis: Vec<HeckeElt> = ExtendedWeylElt::up_to_length(l, cfg.p - 1)
                .into_iter()
                .map(|k| HeckeElt::basis(Level::I, f, k))
                .collect();
            rows_of(&basis, cfg, hecke_mul, hecke_json)
        }
        Algebra::HJ => {
            let basis: Vec<HeckeElt> =
                WeylElt::up_to_length(l).into_iter().map(|w| HeckeElt::tau(Level::J, f, w)).collect();
            rows_of(&basis, cfg, hecke_mul, hecke_json)
        }
        Algebra::HK => {
            let basis: Vec<HeckeElt> = std::iter::once(WeylElt::ONE)
                .chain((1..=l as i64).map(WeylElt::s0_theta))
                .map(|w| HeckeElt::tau(Level::K, f, w))
                .collect();
            rows_of(&basis, cfg, hecke_mul, hecke_json)
        }
        Algebra::EJ => {
            let basis: Vec<ExtElt> =
                ExtKey::up_to_length(l, None).into_iter().map(|k| ExtElt::from_key(f, k)).collect();
            rows_of(&basis, cfg, |a, b| a.mul(b), ext_json)
        }
        Algebra::EK => {
            let basis: Vec<SphericalExtElt> =
                ek_basis_labels(l).into_iter().map(|lab| SphericalExtElt::basis(f, lab)).collect();
            rows_of(&basis, cfg, ek_mul, spherical_json)
        }
    };
    Ok(Table { algebra, p: cfg.p, max_len: l, rows })
}

impl Table {
    pub fn find(&self, a: &str, b: &str) -> Option<&Row> {
        self.rows.iter().find(|r| r.a == a && r.b == b)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let rows: Vec<&Value> = self.rows.iter().map(|r| &r.json).collect();
                let v = json!({ "algebra": self.algebra.tag(), "p": self.p, "max_len": self.max_len, "rows": rows });
                serde_json::to_string_pretty(&v).expect("serializable") + "\n"
            }
            Format::Csv => {
                let mut s = String::from("a,b,product\n");
                for r in &self.rows {
                    writeln!(s, "{},{},{}", csv_field(&r.a), csv_field(&r.b), csv_field(&r.product)).unwrap();
                }
                s
            }
            Format::Text => {
                let mut s = String::new();
                for r in &self.rows {
                    writeln!(s, "({}) * ({}) = {}", r.a, r.b, r.product).unwrap();
                }
                s
            }
        }
    }
}
