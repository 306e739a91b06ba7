//! Full subgroup lattices and the distinguished subgroups that need them.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::bits::ElementSet;
use crate::error::{Error, Result};
use crate::formation::Formation;
use crate::group::Group;
use crate::primes::{self, PrimeSet};
use crate::quotient::quotient_unchecked;
use crate::subgroup::{Closure, Embedded, SubgroupSet};

pub const DEFAULT_SUBGROUP_CAP: usize = 20_000;

/// Every subgroup of a group, in canonical order (size, then element list).
///
/// The lattice does not borrow its group; methods that need the
/// multiplication take it as an argument.
pub struct Lattice {
    subgroups: Vec<SubgroupSet>,
    gens: Vec<Vec<usize>>,
    index: HashMap<SubgroupSet, usize>,
    normal: Vec<bool>,
    /// Strict supersets of each member, as indices in ascending order.
    above: Vec<Vec<u32>>,
    embedded: Vec<OnceLock<Embedded>>,
    pub(crate) memo: Mutex<HashMap<(Formation, usize), bool>>,
}

impl std::fmt::Debug for Lattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Lattice({} subgroups)", self.subgroups.len())
    }
}

impl Lattice {
    /// Enumerates all subgroups of `g`.
    ///
    /// Every subgroup is generated by elements of prime-power order, and every
    /// nontrivial subgroup is `<M, x>` for a maximal subgroup `M` of it and
    /// such an element `x`. Starting from the trivial group and extending
    /// each found subgroup by each cyclic prime-power seed therefore reaches
    /// every subgroup.
    pub fn build(g: &Group, cap: usize) -> Result<Lattice> {
        let n = g.order();
        let mut seed_sets: HashMap<ElementSet, usize> = HashMap::new();
        let mut seeds: Vec<usize> = Vec::new();
        for x in 1..n {
            let o = g.element_order(x) as u64;
            if primes::factorize(o).len() == 1 {
                let c = g.closure(&[x]);
                if !seed_sets.contains_key(c.bits()) {
                    seed_sets.insert(c.bits().clone(), x);
                    seeds.push(x);
                }
            }
        }

        let mut found: HashMap<ElementSet, usize> = HashMap::new();
        let mut list: Vec<(ElementSet, Vec<usize>)> = Vec::new();
        let trivial = ElementSet::from_indices(n, [0]);
        found.insert(trivial.clone(), 0);
        list.push((trivial, Vec::new()));
        let mut i = 0;
        while i < list.len() {
            let (set, gens) = list[i].clone();
            let elems: Vec<usize> = set.iter().collect();
            for &x in &seeds {
                if set.contains(x) {
                    continue;
                }
                let mut cl = Closure {
                    set: set.clone(),
                    elems: elems.clone(),
                    gens: gens.clone(),
                };
                cl.extend(g, x);
                if !found.contains_key(&cl.set) {
                    if list.len() >= cap {
                        return Err(Error::SubgroupCountCapExceeded { cap });
                    }
                    found.insert(cl.set.clone(), list.len());
                    list.push((cl.set, cl.gens));
                }
            }
            i += 1;
        }

        let mut order: Vec<usize> = (0..list.len()).collect();
        let subs: Vec<SubgroupSet> = list
            .iter()
            .map(|(s, _)| SubgroupSet::from_bits_unchecked(s.clone()))
            .collect();
        order.sort_by(|&a, &b| subs[a].cmp(&subs[b]));
        let subgroups: Vec<SubgroupSet> = order.iter().map(|&k| subs[k].clone()).collect();
        let gens: Vec<Vec<usize>> = order.iter().map(|&k| list[k].1.clone()).collect();
        let index = subgroups
            .iter()
            .enumerate()
            .map(|(k, s)| (s.clone(), k))
            .collect();
        let normal = subgroups
            .iter()
            .zip(&gens)
            .map(|(s, hg)| {
                g.generators()
                    .iter()
                    .all(|&t| hg.iter().all(|&x| s.contains(g.conj(t, x))))
            })
            .collect();
        let m = subgroups.len();
        let above = (0..m)
            .map(|a| {
                (a + 1..m)
                    .filter(|&b| {
                        subgroups[b].order() > subgroups[a].order()
                            && subgroups[b].order().is_multiple_of(subgroups[a].order())
                            && subgroups[a].is_subgroup_of(&subgroups[b])
                    })
                    .map(|b| b as u32)
                    .collect()
            })
            .collect();
        Ok(Lattice {
            subgroups,
            gens,
            index,
            normal,
            above,
            embedded: (0..m).map(|_| OnceLock::new()).collect(),
            memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[SubgroupSet] {
        &self.subgroups
    }

    pub fn get(&self, i: usize) -> &SubgroupSet {
        &self.subgroups[i]
    }

    pub fn index_of(&self, h: &SubgroupSet) -> Option<usize> {
        self.index.get(h).copied()
    }

    /// Generators of member `i` found during enumeration.
    pub fn generators(&self, i: usize) -> &[usize] {
        &self.gens[i]
    }

    pub fn is_normal(&self, i: usize) -> bool {
        self.normal[i]
    }

    /// Indices of the strict supersets of member `i`, ascending.
    pub fn above(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.above[i].iter().map(|&b| b as usize)
    }

    pub fn whole_index(&self) -> usize {
        self.subgroups.len() - 1
    }

    /// Member `i` as a standalone group, built once and cached.
    pub fn embedded(&self, g: &Group, i: usize) -> &Embedded {
        self.embedded[i].get_or_init(|| g.materialize(&self.subgroups[i]))
    }

    /// Indices of the maximal members of the lattice strictly below member `i`.
    pub fn maximal_below(&self, i: usize) -> Vec<usize> {
        let within = &self.subgroups[i];
        let below: Vec<usize> = (0..i)
            .filter(|&a| {
                self.subgroups[a].order() < within.order()
                    && self.subgroups[a].is_subgroup_of(within)
            })
            .collect();
        below
            .iter()
            .copied()
            .filter(|&a| {
                !self
                    .above(a)
                    .any(|b| b != i && below.binary_search(&b).is_ok())
            })
            .collect()
    }
}

/// The distinguished subgroups exposed by [`Group::named_subgroup`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedSubgroup {
    Derived,
    Centre,
    Fitting,
    Frattini,
    HypercentreInf,
    OPi(PrimeSet),
    OPrimeP(u64),
    Socle,
}

impl Group {
    /// Maximal subgroups of `within` (proper, nothing strictly between).
    pub fn maximal_subgroups(&self, within: &SubgroupSet) -> Result<Vec<SubgroupSet>> {
        let lat = self.lattice()?;
        let i = lat
            .index_of(within)
            .ok_or_else(|| Error::PreconditionViolated("not a subgroup".into()))?;
        Ok(lat
            .maximal_below(i)
            .into_iter()
            .map(|a| lat.get(a).clone())
            .collect())
    }

    /// Intersection of the maximal subgroups; the whole group if there are none.
    pub fn frattini(&self) -> Result<SubgroupSet> {
        let whole = SubgroupSet::whole(self);
        Ok(self
            .maximal_subgroups(&whole)?
            .iter()
            .fold(whole.clone(), |acc, m| acc.intersection(m)))
    }

    pub fn named_subgroup(&self, kind: &NamedSubgroup) -> Result<SubgroupSet> {
        Ok(match kind {
            NamedSubgroup::Derived => self.derived_subgroup(),
            NamedSubgroup::Centre => self.centre(),
            NamedSubgroup::Fitting => self.fitting(),
            NamedSubgroup::Frattini => self.frattini()?,
            NamedSubgroup::HypercentreInf => self.hypercentre(),
            NamedSubgroup::OPi(pi) => self.o_pi(pi),
            NamedSubgroup::OPrimeP(p) => self.o_p_prime_p(*p),
            NamedSubgroup::Socle => self.socle(),
        })
    }

    /// A Sylow `p`-subgroup: the first lattice member of order `|G|_p`.
    pub fn sylow(&self, p: u64) -> Result<SubgroupSet> {
        let target = primes::part(self.order() as u64, |q| q == p) as usize;
        let lat = self.lattice()?;
        Ok(lat
            .subgroups()
            .iter()
            .find(|s| s.order() == target)
            .cloned()
            .expect("Sylow subgroups exist"))
    }

    /// A Hall `π`-subgroup if one exists: the first lattice member of order `|G|_π`.
    pub fn hall(&self, pi: &PrimeSet) -> Result<Option<SubgroupSet>> {
        let target = primes::part(self.order() as u64, |q| pi.contains(q)) as usize;
        let lat = self.lattice()?;
        Ok(lat
            .subgroups()
            .iter()
            .find(|s| s.order() == target)
            .cloned())
    }

    /// Length of the iterated Fitting series; 0 for the trivial group.
    pub fn nilpotent_length(&self) -> Result<usize> {
        if !self.is_soluble() {
            return Err(Error::NotSoluble);
        }
        let mut f = SubgroupSet::trivial(self);
        let mut len = 0;
        while !f.is_whole() {
            let q = quotient_unchecked(self, &f);
            f = q.preimage(&q.target.fitting());
            len += 1;
        }
        Ok(len)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::group_from_permutations;
    use std::collections::HashSet;

    fn s3() -> Group {
        group_from_permutations(3, &["(1 2 3)", "(1 2)"]).unwrap()
    }
    fn s4() -> Group {
        group_from_permutations(4, &["(1 2 3 4)", "(1 2)"]).unwrap()
    }
    fn a4() -> Group {
        group_from_permutations(4, &["(1 2)(3 4)", "(1 2 3)"]).unwrap()
    }
    fn d8() -> Group {
        group_from_permutations(4, &["(1 2 3 4)", "(1 3)"]).unwrap()
    }
    fn q8() -> Group {
        group_from_permutations(8, &["(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)"]).unwrap()
    }

    /// Every subset containing the identity that is closed under
    /// multiplication; feasible only for tiny groups.
    fn naive_subgroup_count(g: &Group) -> usize {
        let n = g.order();
        let mut count = 0;
        for mask in 0u32..(1 << (n - 1)) {
            let members: Vec<usize> = std::iter::once(0)
                .chain((1..n).filter(|&i| mask >> (i - 1) & 1 == 1))
                .collect();
            let set: HashSet<usize> = members.iter().copied().collect();
            if members
                .iter()
                .all(|&x| members.iter().all(|&y| set.contains(&g.mul(x, y))))
            {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn small_lattice_sizes() {
        assert_eq!(s3().lattice().unwrap().len(), 6);
        assert_eq!(naive_subgroup_count(&s3()), 6);
        assert_eq!(q8().lattice().unwrap().len(), 6);
        assert_eq!(Group::cyclic(7).lattice().unwrap().len(), 2);
        assert_eq!(Group::cyclic(5).lattice().unwrap().len(), 2);
        assert_eq!(s4().lattice().unwrap().len(), 30);
        let a5 = group_from_permutations(5, &["(1 2 3 4 5)", "(1 2 3)"]).unwrap();
        assert_eq!(a5.lattice().unwrap().len(), 59);
    }

    #[test]
    fn naive_count_matches_for_order_eight() {
        for g in [q8(), d8(), Group::cyclic(8)] {
            assert_eq!(g.lattice().unwrap().len(), naive_subgroup_count(&g));
        }
    }

    #[test]
    fn lattice_invariants() {
        let g = s4();
        let lat = g.lattice().unwrap();
        assert!(lat.get(0).is_trivial());
        assert!(lat.get(lat.whole_index()).is_whole());
        for s in lat.subgroups() {
            assert_eq!(24 % s.order(), 0);
        }
        for a in lat.subgroups() {
            for b in lat.subgroups() {
                assert!(lat.index_of(&a.intersection(b)).is_some());
                let j = g.join(a, b);
                let smallest = lat
                    .subgroups()
                    .iter()
                    .find(|s| a.is_subgroup_of(s) && b.is_subgroup_of(s))
                    .unwrap();
                assert_eq!(&j, smallest);
            }
        }
        let normals: Vec<_> = (0..lat.len())
            .filter(|&i| lat.is_normal(i))
            .map(|i| lat.get(i).clone())
            .collect();
        assert_eq!(normals, g.normal_subgroups());
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            Lattice::build(&s4(), 10),
            Err(Error::SubgroupCountCapExceeded { cap: 10 })
        ));
    }

    #[test]
    fn maximal_subgroups_of_a4() {
        let g = a4();
        let max = g.maximal_subgroups(&SubgroupSet::whole(&g)).unwrap();
        let mut orders: Vec<usize> = max.iter().map(|m| m.order()).collect();
        orders.sort();
        assert_eq!(orders, vec![3, 3, 3, 3, 4]);
    }

    #[test]
    fn minimal_normal_and_c6() {
        let g = s4();
        let mins = g.minimal_normal_subgroups();
        assert_eq!(mins.len(), 1);
        assert_eq!(mins[0].order(), 4);
        let c6 = Group::cyclic(6);
        assert_eq!(c6.normal_subgroups().len(), c6.lattice().unwrap().len());
    }

    #[test]
    fn named_subgroups() {
        let g = s4();
        assert_eq!(
            g.named_subgroup(&NamedSubgroup::Fitting).unwrap().order(),
            4
        );
        assert_eq!(
            g.named_subgroup(&NamedSubgroup::Frattini).unwrap().order(),
            1
        );
        assert_eq!(
            g.named_subgroup(&NamedSubgroup::Derived).unwrap().order(),
            12
        );
        assert_eq!(g.named_subgroup(&NamedSubgroup::Socle).unwrap().order(), 4);
        assert_eq!(
            g.named_subgroup(&NamedSubgroup::OPrimeP(2))
                .unwrap()
                .order(),
            4
        );
        assert_eq!(
            g.named_subgroup(&NamedSubgroup::OPrimeP(3))
                .unwrap()
                .order(),
            12
        );
        let d = d8();
        let phi = d.frattini().unwrap();
        assert_eq!(phi.order(), 2);
        assert_eq!(phi, d.centre());
        let sl23 = group_from_permutations(8, &["(1 4 7)(2 8 5)", "(1 6 2 3)(4 7 8 5)"]).unwrap();
        assert_eq!(
            sl23.named_subgroup(&NamedSubgroup::HypercentreInf)
                .unwrap()
                .order(),
            2
        );
        let t = Group::trivial();
        assert!(t.frattini().unwrap().is_whole());
        assert!(t.fitting().is_whole());
        assert!(t.centre().is_whole());
    }

    #[test]
    fn sylow_and_hall() {
        let g = s4();
        let p = g.sylow(2).unwrap();
        assert_eq!(p.order(), 8);
        assert!(!p.elements().all(|x| g.element_order(x) <= 2));
        let a = a4();
        assert!(a.hall(&PrimeSet::of(&[2, 3])).unwrap().unwrap().is_whole());
        let a5 = group_from_permutations(5, &["(1 2 3 4 5)", "(1 2 3)"]).unwrap();
        assert!(a5.hall(&PrimeSet::of(&[3, 5])).unwrap().is_none());
        assert_eq!(
            a5.hall(&PrimeSet::of(&[2, 3])).unwrap().unwrap().order(),
            12
        );
    }

    #[test]
    fn nilpotent_lengths() {
        assert_eq!(d8().nilpotent_length().unwrap(), 1);
        assert_eq!(s3().nilpotent_length().unwrap(), 2);
        assert_eq!(s4().nilpotent_length().unwrap(), 3);
        assert_eq!(Group::trivial().nilpotent_length().unwrap(), 0);
        let a5 = group_from_permutations(5, &["(1 2 3 4 5)", "(1 2 3)"]).unwrap();
        assert!(matches!(a5.nilpotent_length(), Err(Error::NotSoluble)));
    }

    #[test]
    fn frattini_inside_fitting() {
        for g in [s4(), d8(), q8(), a4(), Group::cyclic(12)] {
            assert!(g.frattini().unwrap().is_subgroup_of(&g.fitting()));
        }
    }
}
