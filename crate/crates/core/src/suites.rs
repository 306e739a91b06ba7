//! Catalog-wide verification suites with structured, deterministic reports.

use std::collections::hash_map::Entry;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{catalog, extended_catalog, module_example_matrices, A4_GENERATORS};
use crate::chief::{
    is_f_central_satellite, is_f_central_semidirect, z_f, z_pi_f, z_pi_f_oracle, ChiefFactor,
};
use crate::criticality::boundary_scan;
use crate::error::{Error, Result};
use crate::formation::Formation;
use crate::group::{Group, DEFAULT_ORDER_CAP};
use crate::intersections::{f_max_report, int_f};
use crate::module::{extend_representation, invariant_subspaces, matrix_module_semidirect, Matrix};
use crate::primes::{self, PrimeSet};
use crate::quotient::quotient_unchecked;
use crate::subgroup::SubgroupSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    /// The checked relation is expected to hold on every group.
    Certified,
    /// Run for exploration; failures are informative, not defects.
    Exploratory,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub group: String,
    pub order: usize,
    pub pass: bool,
    pub data: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub label: Label,
    pub passed: bool,
    pub verdicts: Vec<Verdict>,
    pub failures: Vec<Verdict>,
    pub wall_clock_ms: u64,
}

impl SuiteReport {
    /// The report as JSON without the timing field.
    pub fn deterministic_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().unwrap().remove("wall_clock_ms");
        v
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SuiteOptions {
    pub max_order: Option<usize>,
    pub soluble_only: bool,
    /// Run over the extended catalog with all small pairwise products.
    pub extended: bool,
}

impl SuiteOptions {
    fn admits(&self, g: &Group) -> bool {
        self.max_order.is_none_or(|m| g.order() <= m) && (!self.soluble_only || g.is_soluble())
    }
}

fn sub(s: &SubgroupSet) -> Value {
    json!({ "order": s.order(), "hex": s.to_hex() })
}

/// Runs `check` on every admitted catalog group in parallel and merges the
/// verdicts in catalog order. Errors become failing verdicts.
fn run_suite(
    suite: impl Into<String>,
    label: Label,
    opts: &SuiteOptions,
    check: impl Fn(&Group) -> Result<(bool, Value)> + Sync,
) -> SuiteReport {
    let start = Instant::now();
    let cat = if opts.extended {
        extended_catalog()
    } else {
        catalog()
    };
    let groups: Vec<&Group> = cat.groups().iter().filter(|g| opts.admits(g)).collect();
    let verdicts: Vec<Verdict> = groups
        .par_iter()
        .map(|g| {
            let (pass, data) = match check(g) {
                Ok(r) => r,
                Err(e) => (false, json!({ "error": e.to_string() })),
            };
            Verdict {
                group: g.name().to_string(),
                order: g.order(),
                pass,
                data,
            }
        })
        .collect();
    finish(suite.into(), label, verdicts, start)
}

fn finish(suite: String, label: Label, verdicts: Vec<Verdict>, start: Instant) -> SuiteReport {
    let failures: Vec<Verdict> = verdicts.iter().filter(|v| !v.pass).cloned().collect();
    SuiteReport {
        suite,
        label,
        passed: failures.is_empty(),
        verdicts,
        failures,
        wall_clock_ms: start.elapsed().as_millis() as u64,
    }
}

/// `Int_Nil(G) = Z_Nil(G) = Z_∞(G)`.
pub fn baer(opts: &SuiteOptions) -> SuiteReport {
    run_suite("baer", Label::Certified, opts, |g| {
        let int = int_f(g, &Formation::Nil)?;
        let z = z_f(g, &Formation::Nil)?;
        let hyper = g.hypercentre();
        Ok((
            int == z && z == hyper,
            json!({ "int": sub(&int), "z": sub(&z), "hypercentre": sub(&hyper) }),
        ))
    })
}

/// Whether `Z_{πF} = Int_F` is expected for every group.
pub fn is_certified_equality(f: &Formation, pi: &PrimeSet) -> bool {
    match f {
        Formation::Nil | Formation::NA | Formation::PDec(_) => *pi == PrimeSet::All,
        Formation::PNilp(p) => *pi == PrimeSet::single(*p),
        _ => false,
    }
}

/// The `(F, π)` pairs run by [`hypercentre_equality_certified`].
pub fn certified_equality_configs() -> Vec<(Formation, PrimeSet)> {
    vec![
        (Formation::Nil, PrimeSet::All),
        (Formation::PDec(2), PrimeSet::All),
        (Formation::PDec(3), PrimeSet::All),
        (Formation::PNilp(2), PrimeSet::single(2)),
        (Formation::PNilp(3), PrimeSet::single(3)),
        (Formation::NA, PrimeSet::All),
    ]
}

/// For `D = Int_{pNilp(p)}(G)`: `O_{p'}(D) = O_{p'}(G)` and `D/O_{p'}(G)`
/// lies in the hypercentre of `G/O_{p'}(G)`.
pub fn p_nilpotent_structure(g: &Group, p: u64) -> Result<(bool, Value)> {
    let d = int_f(g, &Formation::PNilp(p))?;
    let emb = g.materialize(&d);
    let o_d = emb.push(&emb.group.o_p_prime(p), g.order());
    let o_g = g.o_p_prime(p);
    let q = quotient_unchecked(g, &o_g);
    let image = q.image(&d);
    let hyper = q.target.hypercentre();
    let ok = o_d == o_g && image.is_subgroup_of(&hyper);
    Ok((
        ok,
        json!({ "d": sub(&d), "o_p_prime_d": o_d.order(), "o_p_prime_g": o_g.order(),
                "image": image.order(), "quotient_hypercentre": hyper.order() }),
    ))
}

/// `Z_{πF}(G) = Int_F(G)`, labelled certified or exploratory by configuration.
/// For `pNilp(p)` the structure of `Int_F` is checked as well.
pub fn hypercentre_equality(f: &Formation, pi: &PrimeSet, opts: &SuiteOptions) -> SuiteReport {
    let label = if is_certified_equality(f, pi) {
        Label::Certified
    } else {
        Label::Exploratory
    };
    run_suite(format!("hypercentre[{f};{pi}]"), label, opts, |g| {
        let z = z_pi_f(g, f, pi)?;
        let int = int_f(g, f)?;
        let mut data = json!({ "z": sub(&z), "int": sub(&int) });
        let mut ok = z == int;
        if let Formation::PNilp(p) = f {
            let (s, d) = p_nilpotent_structure(g, *p)?;
            ok &= s;
            data["structure"] = d;
        }
        Ok((ok, data))
    })
}

pub fn hypercentre_equality_certified(opts: &SuiteOptions) -> Vec<SuiteReport> {
    certified_equality_configs()
        .iter()
        .map(|(f, pi)| hypercentre_equality(f, pi, opts))
        .collect()
}

/// `Z_{N^r}(G) = Int_{N^r}(G)` on soluble groups.
pub fn nilpotent_length(r: usize, opts: &SuiteOptions) -> SuiteReport {
    let opts = SuiteOptions {
        soluble_only: true,
        ..*opts
    };
    let f = Formation::NilPow(r);
    run_suite(
        format!("nilpotent-length[{r}]"),
        Label::Certified,
        &opts,
        |g| {
            let z = z_f(g, &f)?;
            let int = int_f(g, &f)?;
            Ok((
                z == int,
                json!({ "z": sub(&z), "int": sub(&int), "length": g.nilpotent_length()? }),
            ))
        },
    )
}

/// `Int_Sup(G) ≤ Int_SylTower(G)` and `Int_Nil(G) ≤ Z_NA(G)`.
pub fn sylow_tower(opts: &SuiteOptions) -> SuiteReport {
    run_suite("sylow-tower", Label::Certified, opts, |g| {
        let sup = int_f(g, &Formation::Sup)?;
        let tower = int_f(g, &Formation::SylTower)?;
        let nil = int_f(g, &Formation::Nil)?;
        let z_na = z_f(g, &Formation::NA)?;
        Ok((
            sup.is_subgroup_of(&tower) && nil.is_subgroup_of(&z_na),
            json!({ "int_sup": sub(&sup), "int_syltower": sub(&tower),
                    "int_nil": sub(&nil), "z_na": sub(&z_na) }),
        ))
    })
}

/// Hereditary saturated formations containing the nilpotent groups used by
/// [`int_star`].
pub fn int_star_formations() -> Vec<Formation> {
    vec![
        Formation::Nil,
        Formation::Sup,
        Formation::PNilp(2),
        Formation::PNilp(3),
        Formation::PDec(2),
        Formation::NA,
    ]
}

/// `Int*_F(G) = Int_F(G)`. Groups outside `F` whose F-maximal subgroups are
/// all K-F-subnormal are listed under `all_k_subnormal`.
pub fn int_star(opts: &SuiteOptions) -> SuiteReport {
    run_suite("int-star", Label::Certified, opts, |g| {
        let mut ok = true;
        let mut per = serde_json::Map::new();
        let mut all_k = Vec::new();
        for f in int_star_formations() {
            let r = f_max_report(g, &f)?;
            ok &= r.int_star == r.int_f;
            if !f.is_member(g) && r.knormal_flags.iter().all(|&k| k) {
                all_k.push(f.to_string());
            }
            per.insert(
                f.to_string(),
                json!({ "int": r.int_f.order(), "int_star": r.int_star.order(),
                        "f_maximal": r.f_maximal.len(),
                        "k_subnormal": r.knormal_flags.iter().filter(|&&k| k).count() }),
            );
        }
        Ok((ok, json!({ "formations": per, "all_k_subnormal": all_k })))
    })
}

/// The order-324 group with its module, after checking that the module is
/// simple and faithful by enumerating invariant subspaces.
pub fn module_example_group() -> Result<(Group, SubgroupSet)> {
    let a4 = Group::from_cycle_strings("A4", 4, &A4_GENERATORS, DEFAULT_ORDER_CAP)?;
    let mats = module_example_matrices()
        .iter()
        .map(|rows| Matrix::from_rows(rows, 3))
        .collect::<Result<Vec<_>>>()?;
    let inv = invariant_subspaces(3, 3, &mats);
    if inv.len() != 2 {
        return Err(Error::ConstructionFailed(format!(
            "module has {} invariant subspaces, expected 2",
            inv.len()
        )));
    }
    let rep = extend_representation(&a4, &mats, 3)?;
    if rep.iter().skip(1).any(|m| *m == Matrix::identity(3)) {
        return Err(Error::ConstructionFailed("action is not faithful".into()));
    }
    matrix_module_semidirect(3, 3, &mats, &a4, DEFAULT_ORDER_CAP)
}

/// A supersoluble-inside-3-supersoluble pair whose intersections are not
/// nested: `Int_Sup(G) = P` while `Int_{pSup(3)}(G) = 1`.
pub fn module_example() -> SuiteReport {
    let start = Instant::now();
    let verdict = match module_example_check() {
        Ok((pass, data)) => Verdict {
            group: crate::catalog::MODULE_EXAMPLE.into(),
            order: 324,
            pass,
            data,
        },
        Err(e) => Verdict {
            group: crate::catalog::MODULE_EXAMPLE.into(),
            order: 324,
            pass: false,
            data: json!({ "error": e.to_string() }),
        },
    };
    finish(
        "module-example".into(),
        Label::Certified,
        vec![verdict],
        start,
    )
}

fn module_example_check() -> Result<(bool, Value)> {
    let (g, p) = module_example_group()?;
    let sup = int_f(&g, &Formation::Sup)?;
    let psup = int_f(&g, &Formation::PSup(3))?;
    let minimal = g.minimal_normal_subgroups().contains(&p);
    let ok = g.order() == 324 && p.order() == 27 && minimal && sup == p && psup.is_trivial();
    Ok((
        ok,
        json!({ "p": sub(&p), "p_minimal_normal": minimal,
                "int_sup": sub(&sup), "int_psup3": sub(&psup) }),
    ))
}

/// Boundary scans expected to come back empty. For `pNilp(p)` only the
/// prime `p` is scanned: with `π = all`, `A4` is `F(3)`-critical for `pNilp(2)`.
pub fn certified_boundary_configs() -> Vec<(Formation, PrimeSet)> {
    vec![
        (Formation::Nil, PrimeSet::All),
        (Formation::PDec(2), PrimeSet::All),
        (Formation::PDec(3), PrimeSet::All),
        (Formation::PNilp(2), PrimeSet::single(2)),
        (Formation::PNilp(3), PrimeSet::single(3)),
        (Formation::NA, PrimeSet::All),
    ]
}

pub fn is_certified_boundary(f: &Formation, pi: &PrimeSet) -> bool {
    match f {
        Formation::Nil | Formation::NA | Formation::PDec(_) => *pi == PrimeSet::All,
        Formation::PNilp(p) => pi.is_subset(&PrimeSet::single(*p)),
        _ => false,
    }
}

/// Catalog groups outside `F` that are `F(p)`-critical for some `p ∈ π`.
/// Each verdict passes iff the group is not such a witness.
pub fn boundary(f: &Formation, pi: &PrimeSet, opts: &SuiteOptions) -> SuiteReport {
    let label = if is_certified_boundary(f, pi) {
        Label::Certified
    } else {
        Label::Exploratory
    };
    run_suite(format!("boundary[{f};{pi}]"), label, opts, |g| {
        let w = boundary_scan(f, pi, &[g], None)?;
        Ok((w.is_empty(), json!({ "witnesses": w })))
    })
}

/// Every chief factor `H/K` of `g` (all covering pairs of normal subgroups).
pub fn all_chief_factors(g: &Group) -> Vec<ChiefFactor> {
    let mut out = Vec::new();
    for k in g.normal_subgroups() {
        for h in g.minimal_normal_over(k) {
            out.push(ChiefFactor::new(h, k.clone()));
        }
    }
    out
}

/// Formations whose satellite tables are checked against the definition.
pub fn dual_oracle_formations() -> Vec<Formation> {
    vec![
        Formation::Nil,
        Formation::Sup,
        Formation::NA,
        Formation::PNilp(2),
        Formation::PNilp(3),
        Formation::PDec(2),
        Formation::PDec(3),
    ]
}

/// Satellite and explicit-construction centrality agree on every chief
/// factor, and the hypercentre agrees with its definition-based oracle
/// for `π = all` and for each single prime of `|G|`.
pub fn dual_oracle(opts: &SuiteOptions) -> SuiteReport {
    run_suite("dual-oracle", Label::Certified, opts, |g| {
        let mut ok = true;
        let (mut checked, mut skipped, mut mismatches) = (0usize, 0usize, Vec::new());
        let factors = all_chief_factors(g);
        for f in dual_oracle_formations() {
            for cf in &factors {
                let sat = is_f_central_satellite(g, cf, &f)?;
                match is_f_central_semidirect(g, cf, &f, DEFAULT_ORDER_CAP) {
                    Ok(sd) => {
                        checked += 1;
                        if sd != sat {
                            ok = false;
                            mismatches.push(json!({ "formation": f, "upper": cf.upper.order(), "lower": cf.lower.order() }));
                        }
                    }
                    Err(e) if e.is_cap() => skipped += 1,
                    Err(e) => return Err(e),
                }
            }
            let mut pis = vec![PrimeSet::All];
            pis.extend(
                primes::prime_divisors(g.order() as u64)
                    .into_iter()
                    .map(PrimeSet::single),
            );
            for pi in pis {
                let fast = z_pi_f(g, &f, &pi)?;
                let slow = z_pi_f_oracle(g, &f, &pi)?;
                if fast != slow {
                    ok = false;
                    mismatches.push(json!({ "formation": f, "pi": pi.to_string(),
                                            "z": fast.order(), "oracle": slow.order() }));
                }
            }
        }
        Ok((
            ok,
            json!({ "factors": factors.len(), "checked": checked, "skipped_over_cap": skipped,
                    "mismatches": mismatches }),
        ))
    })
}

/// `(F, π)` pairs with `𝔊_σ F = F` for `σ = π(F) \ π`, used by the
/// hypercentre lemmas.
pub fn closed_configs() -> Vec<(Formation, PrimeSet)> {
    let mut out: Vec<(Formation, PrimeSet)> = dual_oracle_formations()
        .into_iter()
        .map(|f| (f, PrimeSet::All))
        .collect();
    out.push((Formation::PNilp(2), PrimeSet::single(2)));
    out.push((Formation::PNilp(3), PrimeSet::single(3)));
    out
}

#[derive(Default)]
struct Tally {
    checks: std::collections::BTreeMap<&'static str, usize>,
    violations: Vec<String>,
}

impl Tally {
    fn check(&mut self, lemma: &'static str, ok: bool, what: impl FnOnce() -> String) {
        *self.checks.entry(lemma).or_default() += 1;
        if !ok {
            self.violations.push(format!("{lemma}: {}", what()));
        }
    }
}

fn member_of(g: &Group, s: &SubgroupSet, f: &Formation) -> bool {
    if s.is_whole() {
        f.is_member(g)
    } else {
        f.is_member(&g.materialize(s).group)
    }
}

/// `Int_F` of the subgroup `s`, as a subgroup of `g`.
fn int_of_subgroup(g: &Group, s: &SubgroupSet, f: &Formation) -> Result<SubgroupSet> {
    if s.is_whole() {
        return int_f(g, f);
    }
    let e = g.materialize(s);
    Ok(e.push(&int_f(&e.group, f)?, g.order()))
}

fn hypercentre_lemmas(g: &Group, t: &mut Tally) -> Result<()> {
    let lat = g.lattice()?;
    let quotients: Vec<_> = g
        .normal_subgroups()
        .iter()
        .map(|n| quotient_unchecked(g, n))
        .collect();
    for (f, pi) in closed_configs() {
        let z = z_pi_f(g, &f, &pi)?;
        for q in &quotients {
            let zq = z_pi_f(&q.target, &f, &pi)?;
            t.check(
                "hypercentre-quotient",
                q.image(&z).is_subgroup_of(&zq),
                || format!("{f};{pi} N={}", q.kernel.order()),
            );
        }
        let gz = quotient_unchecked(g, &z);
        if f.is_member(&gz.target) {
            t.check("hypercentre-extension", f.is_member(g), || {
                format!("{f};{pi}")
            });
        }
        for i in 0..lat.len() {
            if f.member_in_lattice(g, i)? {
                let j = g.join(&z, lat.get(i));
                t.check("hypercentre-join", member_of(g, &j, &f), || {
                    format!("{f};{pi} H={}", lat.get(i).order())
                });
            }
        }
        let int = int_f(g, &f)?;
        t.check("hypercentre-below-int", z.is_subgroup_of(&int), || {
            format!("{f};{pi}")
        });
    }
    Ok(())
}

fn intersection_lemmas(g: &Group, t: &mut Tally) -> Result<()> {
    let lat = g.lattice()?;
    let normals = g.normal_subgroups();
    for f in dual_oracle_formations() {
        let int = int_f(g, &f)?;
        for n in normals {
            let q = quotient_unchecked(g, n);
            let lat_q = q.target.lattice()?;
            let mut int_q = std::collections::HashMap::new();
            for i in 0..lat.len() {
                let h = lat.get(i);
                let hn = q.image(&g.join(h, n));
                let k = lat_q
                    .index_of(&hn)
                    .ok_or_else(|| Error::PreconditionViolated("image is not a subgroup".into()))?;
                if let Entry::Vacant(e) = int_q.entry(k) {
                    e.insert(int_of_subgroup(&q.target, &hn, &f)?);
                }
                let lhs = q.image(&int_of_subgroup(g, h, &f)?);
                t.check("int-quotient", lhs.is_subgroup_of(&int_q[&k]), || {
                    format!("{f} H={} N={}", h.order(), n.order())
                });
            }
            if n.is_subgroup_of(&int) {
                let iq = int_f(&q.target, &f)?;
                t.check("int-mod-normal", q.image(&int) == iq, || {
                    format!("{f} N={}", n.order())
                });
            }
        }
        for i in 0..lat.len() {
            let h = lat.get(i);
            let hi = g.materialize(h);
            let k = hi.pull(&h.intersection(&int));
            let top = quotient_unchecked(&hi.group, &k);
            let in_f = f.member_in_lattice(g, i)?;
            if f.is_member(&top.target) {
                t.check("int-section", in_f, || format!("{f} H={}", h.order()));
            }
            if in_f {
                t.check("int-join", member_of(g, &g.join(&int, h), &f), || {
                    format!("{f} H={}", h.order())
                });
            }
        }
        let top = quotient_unchecked(g, &int);
        t.check(
            "int-of-quotient-trivial",
            int_f(&top.target, &f)?.is_trivial(),
            || f.to_string(),
        );
    }
    Ok(())
}

/// Structural facts about hypercentres and intersections that hold for every
/// group: images under quotients, joins with `F`-subgroups, and the
/// behaviour of `Int_F` modulo normal subgroups.
pub fn lemma_pack(opts: &SuiteOptions) -> SuiteReport {
    run_suite("lemmas", Label::Certified, opts, |g| {
        let mut t = Tally::default();
        hypercentre_lemmas(g, &mut t)?;
        intersection_lemmas(g, &mut t)?;
        Ok((
            t.violations.is_empty(),
            json!({ "checks": t.checks, "violations": t.violations }),
        ))
    })
}

/// Checks that are expected to fail or to find witnesses.
pub fn negative_controls() -> Vec<SuiteReport> {
    let s4 = SuiteOptions::default();
    vec![
        hypercentre_equality(&Formation::Sup, &PrimeSet::single(3), &s4),
        boundary(&Formation::Sup, &PrimeSet::single(3), &s4),
    ]
}

/// Suite names accepted by [`run_named`].
pub const SUITES: [&str; 10] = [
    "baer",
    "hypercentre",
    "nilpotent-length",
    "sylow-tower",
    "int-star",
    "module-example",
    "boundary",
    "dual-oracle",
    "lemmas",
    "all",
];

/// Runs a suite by name. `hypercentre` and `boundary` take an optional
/// formation and prime set; without them they run their certified configurations.
pub fn run_named(
    name: &str,
    formation: Option<&Formation>,
    pi: Option<&PrimeSet>,
    opts: &SuiteOptions,
) -> Result<Vec<SuiteReport>> {
    let all = PrimeSet::All;
    Ok(match name {
        "baer" => vec![baer(opts)],
        "hypercentre" => match formation {
            Some(f) => vec![hypercentre_equality(f, pi.unwrap_or(&all), opts)],
            None => hypercentre_equality_certified(opts),
        },
        "nilpotent-length" => (1..=3).map(|r| nilpotent_length(r, opts)).collect(),
        "sylow-tower" => vec![sylow_tower(opts)],
        "int-star" => vec![int_star(opts)],
        "module-example" => vec![module_example()],
        "boundary" => match formation {
            Some(f) => {
                if !f.has_satellite() {
                    return Err(Error::NoSatellite(f.to_string()));
                }
                vec![boundary(f, pi.unwrap_or(&all), opts)]
            }
            None => certified_boundary_configs()
                .iter()
                .map(|(f, pi)| boundary(f, pi, opts))
                .collect(),
        },
        "dual-oracle" => vec![dual_oracle(opts)],
        "lemmas" => vec![lemma_pack(opts)],
        "all" => {
            let mut out = vec![baer(opts)];
            out.extend(hypercentre_equality_certified(opts));
            out.extend((1..=3).map(|r| nilpotent_length(r, opts)));
            out.push(sylow_tower(opts));
            out.push(int_star(opts));
            out.push(module_example());
            out.extend(
                certified_boundary_configs()
                    .iter()
                    .map(|(f, pi)| boundary(f, pi, opts)),
            );
            out.push(dual_oracle(opts));
            out.push(lemma_pack(opts));
            out
        }
        other => {
            return Err(Error::PreconditionViolated(format!(
                "unknown suite `{other}`"
            )))
        }
    })
}
