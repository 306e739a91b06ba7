//! Per-group analysis: chief series with centrality verdicts, the
//! hypercentre, the intersections and the F-maximal subgroups.

use std::fmt::Write as _;

use serde::Serialize;

use crate::chief::{chief_series, is_f_central, z_pi_f};
use crate::error::Result;
use crate::formation::Formation;
use crate::group::Group;
use crate::intersections::f_max_report;
use crate::primes::PrimeSet;
use crate::subgroup::SubgroupSet;

#[derive(Clone, Debug, Serialize)]
pub struct SubgroupInfo {
    pub order: usize,
    /// A recognisable name when the subgroup coincides with one.
    pub name: Option<String>,
    pub hex: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorInfo {
    pub lower: usize,
    pub upper: usize,
    pub order: usize,
    pub primes: Vec<u64>,
    pub pi_exempt: bool,
    pub f_central: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MaximalInfo {
    pub subgroup: SubgroupInfo,
    pub k_f_subnormal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Analysis {
    pub group: String,
    pub order: usize,
    pub formation: Formation,
    pub pi: String,
    pub in_f: bool,
    pub chief_series: Vec<FactorInfo>,
    pub z_pi_f: SubgroupInfo,
    pub int_f: SubgroupInfo,
    pub int_star: SubgroupInfo,
    pub f_maximal: Vec<MaximalInfo>,
}

fn info(g: &Group, s: &SubgroupSet) -> SubgroupInfo {
    let name = if s.is_trivial() {
        Some("1".to_string())
    } else if s.is_whole() {
        Some(g.name().to_string())
    } else if *s == g.centre() {
        Some("Z(G)".into())
    } else if *s == g.hypercentre() {
        Some("Z_inf(G)".into())
    } else if *s == g.fitting() {
        Some("F(G)".into())
    } else if *s == g.derived_subgroup() {
        Some("G'".into())
    } else {
        None
    };
    SubgroupInfo {
        order: s.order(),
        name,
        hex: s.to_hex(),
    }
}

pub fn analyze(g: &Group, f: &Formation, pi: &PrimeSet) -> Result<Analysis> {
    let series = chief_series(g);
    let chief = series
        .factors
        .iter()
        .map(|cf| {
            Ok(FactorInfo {
                lower: cf.lower.order(),
                upper: cf.upper.order(),
                order: cf.order,
                primes: cf.primes.clone(),
                pi_exempt: cf.is_pi_exempt(pi),
                f_central: is_f_central(g, cf, f)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let z = z_pi_f(g, f, pi)?;
    let report = f_max_report(g, f)?;
    Ok(Analysis {
        group: g.name().to_string(),
        order: g.order(),
        formation: f.clone(),
        pi: pi.to_string(),
        in_f: f.is_member(g),
        chief_series: chief,
        z_pi_f: info(g, &z),
        int_f: info(g, &report.int_f),
        int_star: info(g, &report.int_star),
        f_maximal: report
            .f_maximal
            .iter()
            .zip(&report.knormal_flags)
            .map(|(m, &k)| MaximalInfo {
                subgroup: info(g, m),
                k_f_subnormal: k,
            })
            .collect(),
    })
}

fn show(s: &SubgroupInfo) -> String {
    match &s.name {
        Some(n) => format!("{n} (order {})", s.order),
        None => format!("order {}", s.order),
    }
}

impl Analysis {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} (order {}), formation {}, pi = {}{}",
            self.group,
            self.order,
            self.formation,
            self.pi,
            if self.in_f { ", G in F" } else { "" }
        );
        let _ = writeln!(out, "chief series:");
        for c in &self.chief_series {
            let verdict = if c.f_central {
                "F-central"
            } else {
                "F-eccentric"
            };
            let exempt = if c.pi_exempt { ", pi-exempt" } else { "" };
            let _ = writeln!(
                out,
                "  {:>5} / {:<5} order {:<4} {verdict}{exempt}",
                c.upper, c.lower, c.order
            );
        }
        let _ = writeln!(out, "Z_piF  = {}", show(&self.z_pi_f));
        let _ = writeln!(out, "Int_F  = {}", show(&self.int_f));
        let _ = writeln!(out, "Int*_F = {}", show(&self.int_star));
        let _ = writeln!(out, "F-maximal subgroups: {}", self.f_maximal.len());
        for m in &self.f_maximal {
            let k = if m.k_f_subnormal {
                "K-F-subnormal"
            } else {
                "not K-F-subnormal"
            };
            let _ = writeln!(out, "  {}  {k}  {}", show(&m.subgroup), m.subgroup.hex);
        }
        out
    }
}
