//! Minimal non-members of satellite classes, and catalog scans for groups
//! that are `F(p)`-critical but lie outside `F`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formation::Formation;
use crate::group::Group;
use crate::primes::{self, PrimeSet};

/// Primes tried for every group when a scan is asked for all primes.
pub const SCAN_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct MaximalVerdict {
    pub order: usize,
    pub hex: String,
    pub in_class: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CriticalWitness {
    pub group: String,
    pub order: usize,
    pub formation: Formation,
    pub p: u64,
    pub maximal_memberships: Vec<MaximalVerdict>,
    pub in_f: bool,
}

/// `test(G)` fails while every maximal subgroup passes. For the
/// subgroup-closed classes used here this is the same as every proper
/// subgroup passing.
pub fn is_class_critical(g: &Group, test: impl Fn(&Group) -> Result<bool>) -> Result<bool> {
    Ok(critical_verdicts(g, &test)?.is_some())
}

/// The maximal-subgroup verdicts if `g` is critical for `test`.
fn critical_verdicts(
    g: &Group,
    test: &impl Fn(&Group) -> Result<bool>,
) -> Result<Option<Vec<MaximalVerdict>>> {
    if test(g)? {
        return Ok(None);
    }
    let lat = g.lattice()?;
    let mut verdicts = Vec::new();
    for i in lat.maximal_below(lat.whole_index()) {
        let in_class = test(&lat.embedded(g, i).group)?;
        if !in_class {
            return Ok(None);
        }
        verdicts.push(MaximalVerdict {
            order: lat.get(i).order(),
            hex: lat.get(i).to_hex(),
            in_class,
        });
    }
    Ok(Some(verdicts))
}

/// The primes a scan tries for `g`: `π` itself, or for `π = all` the prime
/// divisors of `|G|` together with [`SCAN_PRIMES`].
pub fn scan_primes(pi: &PrimeSet, g: &Group) -> Vec<u64> {
    match pi {
        PrimeSet::Only(s) => s.iter().copied().collect(),
        PrimeSet::All => {
            let mut ps = primes::prime_divisors(g.order() as u64);
            ps.extend(SCAN_PRIMES);
            ps.sort_unstable();
            ps.dedup();
            ps
        }
    }
}

/// Groups outside `F` that are `F(p)`-critical for some `p ∈ π`. An empty
/// result is evidence for the boundary condition on these groups, not a proof.
pub fn boundary_scan(
    f: &Formation,
    pi: &PrimeSet,
    groups: &[&Group],
    universe: Option<&(dyn Fn(&Group) -> bool + Sync)>,
) -> Result<Vec<CriticalWitness>> {
    if !f.has_satellite() {
        return Err(Error::NoSatellite(f.to_string()));
    }
    let per_group: Vec<Result<Vec<CriticalWitness>>> = groups
        .par_iter()
        .map(|g| {
            if universe.is_some_and(|u| !u(g)) || f.is_member(g) {
                return Ok(Vec::new());
            }
            let mut found = Vec::new();
            for p in scan_primes(pi, g) {
                let test = |h: &Group| f.satellite_member(p, h);
                if let Some(maximal_memberships) = critical_verdicts(g, &test)? {
                    found.push(CriticalWitness {
                        group: g.name().to_string(),
                        order: g.order(),
                        formation: f.clone(),
                        p,
                        maximal_memberships,
                        in_f: false,
                    });
                }
            }
            Ok(found)
        })
        .collect();
    let mut out = Vec::new();
    for r in per_group {
        out.extend(r?);
    }
    Ok(out)
}
