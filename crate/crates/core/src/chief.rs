//! Chief series, F-centrality of chief factors, and the πF-hypercentre.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::formation::Formation;
use crate::group::{Group, DEFAULT_ORDER_CAP};
use crate::primes::{self, PrimeSet};
use crate::quotient::quotient_unchecked;
use crate::subgroup::SubgroupSet;

/// A chief factor `H/K` of a group: `K < H`, both normal, nothing normal between.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiefFactor {
    pub upper: SubgroupSet,
    pub lower: SubgroupSet,
    pub order: usize,
    pub primes: Vec<u64>,
}

impl ChiefFactor {
    pub fn new(upper: SubgroupSet, lower: SubgroupSet) -> Self {
        let order = upper.order() / lower.order();
        ChiefFactor {
            primes: primes::prime_divisors(order as u64),
            upper,
            lower,
            order,
        }
    }

    /// True iff no prime of the factor lies in `pi`.
    pub fn is_pi_exempt(&self, pi: &PrimeSet) -> bool {
        self.primes.iter().all(|&p| !pi.contains(p))
    }
}

#[derive(Clone, Debug)]
pub struct ChiefSeries {
    /// `1 = N_0 < N_1 < … < N_k = G`.
    pub terms: Vec<SubgroupSet>,
    pub factors: Vec<ChiefFactor>,
}

impl ChiefSeries {
    fn from_terms(terms: Vec<SubgroupSet>) -> Self {
        let factors = terms
            .windows(2)
            .map(|w| ChiefFactor::new(w[1].clone(), w[0].clone()))
            .collect();
        ChiefSeries { terms, factors }
    }
}

/// Chief series built by repeatedly taking the canonically least minimal
/// normal subgroup of the current quotient.
pub fn chief_series(g: &Group) -> ChiefSeries {
    climb(
        g,
        SubgroupSet::trivial(g),
        &SubgroupSet::whole(g),
        vec![SubgroupSet::trivial(g)],
    )
}

/// Chief series passing through the normal subgroup `n`.
pub fn chief_series_through(g: &Group, n: &SubgroupSet) -> Result<ChiefSeries> {
    if !g.is_normal(n) {
        return Err(Error::NotNormal);
    }
    let start = SubgroupSet::trivial(g);
    let below = climb(g, start.clone(), n, vec![start]);
    Ok(climb(g, n.clone(), &SubgroupSet::whole(g), below.terms))
}

fn climb(
    g: &Group,
    mut cur: SubgroupSet,
    top: &SubgroupSet,
    mut terms: Vec<SubgroupSet>,
) -> ChiefSeries {
    while cur != *top {
        cur = g
            .minimal_normal_over(&cur)
            .into_iter()
            .find(|m| m.is_subgroup_of(top))
            .expect("top is normal and strictly above the current term");
        terms.push(cur.clone());
    }
    ChiefSeries::from_terms(terms)
}

/// `G/C_G(H/K) ∈ F(p)` for every prime `p` of the factor.
pub fn is_f_central_satellite(g: &Group, f: &ChiefFactor, formation: &Formation) -> Result<bool> {
    if !formation.has_satellite() {
        return Err(Error::NoSatellite(formation.to_string()));
    }
    let c = g.centralizer_mod(&f.upper, &f.lower);
    let a = quotient_unchecked(g, &c).target;
    for &p in &f.primes {
        if !formation.satellite_member(p, &a)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(H/K) ⋊ (G/C_G(H/K)) ∈ F`, built explicitly.
pub fn is_f_central_semidirect(
    g: &Group,
    f: &ChiefFactor,
    formation: &Formation,
    cap: usize,
) -> Result<bool> {
    let c = g.centralizer_mod(&f.upper, &f.lower);
    let size = f.order * (g.order() / c.order());
    if size > cap {
        return Err(Error::ClosureCapExceeded { cap, reached: size });
    }
    let h = g.materialize(&f.upper);
    let v = quotient_unchecked(&h.group, &h.pull(&f.lower));
    let a = quotient_unchecked(g, &c);
    let action: Vec<Vec<usize>> = a
        .reps
        .iter()
        .map(|&x| {
            v.reps
                .iter()
                .map(|&y| v.proj[h.local[g.conj(x, h.embedding[y])]])
                .collect()
        })
        .collect();
    let s = Group::semidirect_product(&v.target, &a.target, &action, cap)?;
    Ok(formation.is_member(&s))
}

/// Satellite test when the formation has one, else the explicit construction.
pub fn is_f_central(g: &Group, f: &ChiefFactor, formation: &Formation) -> Result<bool> {
    if formation.has_satellite() {
        is_f_central_satellite(g, f, formation)
    } else {
        is_f_central_semidirect(g, f, formation, DEFAULT_ORDER_CAP)
    }
}

/// `Z_{πF}(G)`, by absorbing every qualifying minimal normal subgroup of
/// `G/Z` per round until nothing qualifies.
pub fn z_pi_f(g: &Group, formation: &Formation, pi: &PrimeSet) -> Result<SubgroupSet> {
    let mut z = SubgroupSet::trivial(g);
    loop {
        let mut next = z.clone();
        for m in g.minimal_normal_over(&z) {
            let f = ChiefFactor::new(m.clone(), z.clone());
            if f.is_pi_exempt(pi) || is_f_central(g, &f, formation)? {
                next = g.join(&next, &m);
            }
        }
        if next == z {
            return Ok(z);
        }
        z = next;
    }
}

/// `Z_F(G)`: [`z_pi_f`] for all primes.
pub fn z_f(g: &Group, formation: &Formation) -> Result<SubgroupSet> {
    z_pi_f(g, formation, &PrimeSet::All)
}

/// [`z_pi_f`] absorbing one minimal normal subgroup at a time, taking the
/// first qualifying one in canonical order, or the last if `reverse`.
pub fn z_pi_f_ordered(
    g: &Group,
    formation: &Formation,
    pi: &PrimeSet,
    reverse: bool,
) -> Result<SubgroupSet> {
    let mut z = SubgroupSet::trivial(g);
    loop {
        let mut mins = g.minimal_normal_over(&z);
        if reverse {
            mins.reverse();
        }
        let mut picked = None;
        for m in mins {
            let f = ChiefFactor::new(m.clone(), z.clone());
            if f.is_pi_exempt(pi) || is_f_central(g, &f, formation)? {
                picked = Some(m);
                break;
            }
        }
        match picked {
            Some(m) => z = m,
            None => return Ok(z),
        }
    }
}

/// `Z_{πF}(G)` straight from the definition: the join of every normal `N`
/// whose chief factors below `N` are all π-exempt or F-central. Centrality
/// uses the explicit semidirect construction, falling back to the satellite
/// test only when the construction exceeds the order cap.
pub fn z_pi_f_oracle(g: &Group, formation: &Formation, pi: &PrimeSet) -> Result<SubgroupSet> {
    let mut memo: HashMap<(SubgroupSet, SubgroupSet), bool> = HashMap::new();
    let mut z = SubgroupSet::trivial(g);
    for n in g.normal_subgroups() {
        if n.is_subgroup_of(&z) {
            continue;
        }
        let series = chief_series_through(g, n)?;
        let mut ok = true;
        for f in series.factors.iter().filter(|f| f.upper.is_subgroup_of(n)) {
            if f.is_pi_exempt(pi) {
                continue;
            }
            let key = (f.upper.clone(), f.lower.clone());
            let central = match memo.get(&key) {
                Some(&v) => v,
                None => {
                    let v = match is_f_central_semidirect(g, f, formation, DEFAULT_ORDER_CAP) {
                        Err(e) if e.is_cap() => is_f_central_satellite(g, f, formation)?,
                        r => r?,
                    };
                    memo.insert(key, v);
                    v
                }
            };
            if !central {
                ok = false;
                break;
            }
        }
        if ok {
            z = g.join(&z, n);
        }
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::group_from_permutations;

    fn s4() -> Group {
        group_from_permutations(4, &["(1 2 3 4)", "(1 2)"]).unwrap()
    }

    #[test]
    fn s4_chief_series() {
        let g = s4();
        let cs = chief_series(&g);
        let orders: Vec<usize> = cs.terms.iter().map(|t| t.order()).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
        assert_eq!(
            cs.factors.iter().map(|f| f.order).collect::<Vec<_>>(),
            vec![4, 3, 2]
        );
        let normals: Vec<usize> = g.normal_subgroups().iter().map(|n| n.order()).collect();
        assert_eq!(normals, orders);
        let a4 = g.normal_subgroups()[2].clone();
        assert_eq!(chief_series_through(&g, &a4).unwrap().terms, cs.terms);
    }

    #[test]
    fn cyclic_prime_series() {
        let g = Group::cyclic(5);
        assert_eq!(chief_series(&g).terms.len(), 2);
        assert_eq!(chief_series(&Group::trivial()).factors.len(), 0);
    }

    #[test]
    fn series_through_requires_normal() {
        let g = s4();
        let h = g.closure(&[g.generators()[1]]);
        if !g.is_normal(&h) {
            assert!(matches!(
                chief_series_through(&g, &h),
                Err(Error::NotNormal)
            ));
        }
        let c12 = Group::cyclic(12);
        let c2 = c12
            .normal_subgroups()
            .iter()
            .find(|n| n.order() == 2)
            .unwrap()
            .clone();
        let cs = chief_series_through(&c12, &c2).unwrap();
        assert_eq!(cs.terms[1], c2);
    }

    #[test]
    fn centrality_in_s4() {
        let g = s4();
        let cs = chief_series(&g);
        let (v4, a4v4) = (&cs.factors[0], &cs.factors[1]);
        {
            let f = &Formation::Sup;
            assert!(is_f_central_satellite(&g, a4v4, f).unwrap());
            assert!(is_f_central_semidirect(&g, a4v4, f, 512).unwrap());
            assert!(!is_f_central_satellite(&g, v4, f).unwrap());
            assert!(!is_f_central_semidirect(&g, v4, f, 512).unwrap());
        }
        assert!(matches!(
            is_f_central_semidirect(&g, v4, &Formation::Sup, 10),
            Err(Error::ClosureCapExceeded { .. })
        ));
    }

    #[test]
    fn nilpotent_groups_are_nil_central() {
        let d8 = group_from_permutations(4, &["(1 2 3 4)", "(1 3)"]).unwrap();
        for f in chief_series(&d8).factors {
            assert!(is_f_central_satellite(&d8, &f, &Formation::Nil).unwrap());
            assert!(is_f_central_semidirect(&d8, &f, &Formation::Nil, 512).unwrap());
        }
    }

    #[test]
    fn hypercentre_examples() {
        let g = s4();
        let all = PrimeSet::of(&[2, 3]);
        assert!(z_pi_f(&g, &Formation::Nil, &all).unwrap().is_trivial());
        assert!(z_pi_f(&g, &Formation::Sup, &PrimeSet::single(3))
            .unwrap()
            .is_whole());
        assert!(z_pi_f(&g, &Formation::Sup, &PrimeSet::single(2))
            .unwrap()
            .is_trivial());
        for (f, pi) in [
            (Formation::Nil, all.clone()),
            (Formation::Sup, PrimeSet::single(3)),
            (Formation::Sup, PrimeSet::single(2)),
        ] {
            assert_eq!(
                z_pi_f(&g, &f, &pi).unwrap(),
                z_pi_f_oracle(&g, &f, &pi).unwrap()
            );
        }
        assert!(z_f(&Group::trivial(), &Formation::Nil)
            .unwrap()
            .is_trivial());
        assert!(
            z_pi_f_oracle(&Group::trivial(), &Formation::Nil, &PrimeSet::All)
                .unwrap()
                .is_trivial()
        );
        let s3 = group_from_permutations(3, &["(1 2 3)", "(1 2)"]).unwrap();
        assert!(z_f(&s3, &Formation::Sup).unwrap().is_whole());
        assert!(z_pi_f_oracle(&s3, &Formation::Sup, &PrimeSet::All)
            .unwrap()
            .is_whole());
    }

    #[test]
    fn hypercentre_matches_upper_central_series() {
        let sl23 = group_from_permutations(8, &["(1 4 7)(2 8 5)", "(1 6 2 3)(4 7 8 5)"]).unwrap();
        assert_eq!(z_f(&sl23, &Formation::Nil).unwrap(), sl23.hypercentre());
        assert_eq!(z_f(&sl23, &Formation::Nil).unwrap().order(), 2);
    }

    #[test]
    fn order_independence() {
        let g = Group::direct_product(
            &group_from_permutations(3, &["(1 2 3)", "(1 2)"]).unwrap(),
            &Group::cyclic(6),
            512,
        )
        .unwrap();
        for f in [
            Formation::Nil,
            Formation::Sup,
            Formation::PNilp(2),
            Formation::NA,
        ] {
            let a = z_f(&g, &f).unwrap();
            assert_eq!(a, z_pi_f_ordered(&g, &f, &PrimeSet::All, false).unwrap());
            assert_eq!(a, z_pi_f_ordered(&g, &f, &PrimeSet::All, true).unwrap());
        }
    }
}
