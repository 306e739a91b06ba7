//! F-maximal subgroups, their intersection, and K-F-subnormality.

use std::collections::HashMap;

use crate::error::Result;
use crate::formation::Formation;
use crate::group::Group;
use crate::lattice::Lattice;
use crate::quotient::quotient_unchecked;
use crate::subgroup::SubgroupSet;

#[derive(Clone, Debug)]
pub struct FMaxReport {
    pub formation: Formation,
    pub f_maximal: Vec<SubgroupSet>,
    pub int_f: SubgroupSet,
    /// Per entry of `f_maximal`: is it K-F-subnormal?
    pub knormal_flags: Vec<bool>,
    pub int_star: SubgroupSet,
}

/// Lattice indices of the F-maximal subgroups, ascending.
pub fn f_maximal_indices(g: &Group, f: &Formation) -> Result<Vec<usize>> {
    let lat = g.lattice()?;
    let mut is_max = vec![false; lat.len()];
    debug_assert!(f.hereditary());
    for i in (0..lat.len()).rev() {
        // F is subgroup-closed, so a member of F lies below some F-maximal
        // subgroup; those are larger and therefore already found.
        if lat.above(i).any(|b| is_max[b]) {
            continue;
        }
        is_max[i] = f.member_in_lattice(g, i)?;
    }
    Ok((0..lat.len()).filter(|&i| is_max[i]).collect())
}

pub fn f_maximal_subgroups(g: &Group, f: &Formation) -> Result<Vec<SubgroupSet>> {
    let lat = g.lattice()?;
    Ok(f_maximal_indices(g, f)?
        .into_iter()
        .map(|i| lat.get(i).clone())
        .collect())
}

fn intersect_all<'a>(g: &Group, subs: impl IntoIterator<Item = &'a SubgroupSet>) -> SubgroupSet {
    subs.into_iter()
        .fold(SubgroupSet::whole(g), |acc, s| acc.intersection(s))
}

/// `Int_F(G)`.
pub fn int_f(g: &Group, f: &Formation) -> Result<SubgroupSet> {
    let maxes = f_maximal_subgroups(g, f)?;
    let int = intersect_all(g, &maxes);
    debug_assert!(g.is_normal(&int));
    Ok(int)
}

/// Reachability of the whole group along admissible steps, shared across
/// queries for one group and formation.
pub struct KSubnormality<'a> {
    g: &'a Group,
    lat: &'a Lattice,
    f: Formation,
    reach: Vec<Option<bool>>,
    core_quotients: HashMap<(usize, SubgroupSet), bool>,
}

impl<'a> KSubnormality<'a> {
    pub fn new(g: &'a Group, f: &Formation) -> Result<Self> {
        let lat = g.lattice()?;
        let mut reach = vec![None; lat.len()];
        reach[lat.whole_index()] = Some(true);
        Ok(KSubnormality {
            g,
            lat,
            f: f.clone(),
            reach,
            core_quotients: HashMap::new(),
        })
    }

    fn normal_in(&self, a: usize, b: usize) -> bool {
        let s = self.lat.get(a);
        self.lat.generators(b).iter().all(|&t| {
            self.lat
                .generators(a)
                .iter()
                .all(|&x| s.contains(self.g.conj(t, x)))
        })
    }

    /// `A ⊲ B` or `B/core_B(A) ∈ F`.
    fn admissible(&mut self, a: usize, b: usize) -> Result<bool> {
        if self.normal_in(a, b) || self.f.member_in_lattice(self.g, b)? {
            return Ok(true);
        }
        let bs = self.lat.get(b);
        let core = self.g.core_in(bs, self.lat.get(a));
        if let Some(&v) = self.core_quotients.get(&(b, core.clone())) {
            return Ok(v);
        }
        let emb = self.lat.embedded(self.g, b);
        let q = quotient_unchecked(&emb.group, &emb.pull(&core));
        let v = self.f.is_member(&q.target);
        self.core_quotients.insert((b, core), v);
        Ok(v)
    }

    fn reaches(&mut self, a: usize) -> Result<bool> {
        if let Some(v) = self.reach[a] {
            return Ok(v);
        }
        let ups: Vec<usize> = self.lat.above(a).collect();
        let mut ok = false;
        for b in ups.into_iter().rev() {
            if self.admissible(a, b)? && self.reaches(b)? {
                ok = true;
                break;
            }
        }
        self.reach[a] = Some(ok);
        Ok(ok)
    }

    /// Is lattice member `i` K-F-subnormal?
    pub fn is_k_f_subnormal_index(&mut self, i: usize) -> Result<bool> {
        self.reaches(i)
    }
}

pub fn is_k_f_subnormal(g: &Group, h: &SubgroupSet, f: &Formation) -> Result<bool> {
    let lat = g.lattice()?;
    let i = lat.index_of(h).ok_or_else(|| {
        crate::error::Error::PreconditionViolated("not a subgroup of the group".into())
    })?;
    KSubnormality::new(g, f)?.is_k_f_subnormal_index(i)
}

/// Everything about the F-maximal subgroups of `g` in one pass.
pub fn f_max_report(g: &Group, f: &Formation) -> Result<FMaxReport> {
    let lat = g.lattice()?;
    let idx = f_maximal_indices(g, f)?;
    let mut ks = KSubnormality::new(g, f)?;
    let mut flags = Vec::with_capacity(idx.len());
    for &i in &idx {
        flags.push(ks.is_k_f_subnormal_index(i)?);
    }
    let f_maximal: Vec<SubgroupSet> = idx.iter().map(|&i| lat.get(i).clone()).collect();
    let int = intersect_all(g, &f_maximal);
    let int_star = intersect_all(
        g,
        f_maximal
            .iter()
            .zip(&flags)
            .filter(|(_, &k)| !k)
            .map(|(s, _)| s),
    );
    Ok(FMaxReport {
        formation: f.clone(),
        f_maximal,
        int_f: int,
        knormal_flags: flags,
        int_star,
    })
}

/// `Int*_F(G)`: intersection of the F-maximal subgroups that are not
/// K-F-subnormal; the whole group when there are none.
pub fn int_star_f(g: &Group, f: &Formation) -> Result<SubgroupSet> {
    Ok(f_max_report(g, f)?.int_star)
}
