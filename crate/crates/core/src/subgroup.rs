use std::collections::HashSet;

use crate::bits::ElementSet;
use crate::error::{Error, Result};
use crate::group::{Group, Provenance};
use crate::primes::{self, PrimeSet};

/// A subgroup of some parent group, stored as a bitset over its element
/// indices. Ordered by size, then lexicographically by element list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubgroupSet {
    bits: ElementSet,
}

impl std::fmt::Debug for SubgroupSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup(order {}, {:?})", self.order(), self.bits)
    }
}

impl SubgroupSet {
    pub(crate) fn from_bits_unchecked(bits: ElementSet) -> Self {
        Self { bits }
    }

    /// Wraps a subset of `g`, checking that it is a subgroup.
    pub fn new(g: &Group, bits: ElementSet) -> Result<Self> {
        if bits.universe() != g.order() || !bits.contains(0) {
            return Err(Error::PreconditionViolated(
                "subset must contain the identity".into(),
            ));
        }
        for x in bits.iter() {
            if !bits.contains(g.inv(x)) || bits.iter().any(|y| !bits.contains(g.mul(x, y))) {
                return Err(Error::PreconditionViolated("subset is not closed".into()));
            }
        }
        let s = Self { bits };
        debug_assert_eq!(g.order() % s.order(), 0);
        Ok(s)
    }

    pub fn trivial(g: &Group) -> Self {
        Self {
            bits: ElementSet::from_indices(g.order(), [0]),
        }
    }

    pub fn whole(g: &Group) -> Self {
        Self {
            bits: ElementSet::full(g.order()),
        }
    }

    pub fn order(&self) -> usize {
        self.bits.count()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn contains(&self, x: usize) -> bool {
        self.bits.contains(x)
    }

    pub fn is_subgroup_of(&self, other: &SubgroupSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.bits.universe()
    }

    pub fn intersection(&self, other: &SubgroupSet) -> SubgroupSet {
        SubgroupSet {
            bits: self.bits.intersection(&other.bits),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter()
    }

    pub fn bits(&self) -> &ElementSet {
        &self.bits
    }

    pub fn to_hex(&self) -> String {
        self.bits.to_hex()
    }
}

/// A subgroup under construction by Dimino's algorithm.
///
/// The element set is always a union of right cosets `H t` of the
/// previous stage `H`, which makes it closed under right multiplication by
/// the generators once every coset representative has been processed.
#[derive(Clone)]
pub(crate) struct Closure {
    pub(crate) set: ElementSet,
    pub(crate) elems: Vec<usize>,
    pub(crate) gens: Vec<usize>,
}

impl Closure {
    pub(crate) fn trivial(g: &Group) -> Self {
        Self {
            set: ElementSet::from_indices(g.order(), [0]),
            elems: vec![0],
            gens: Vec::new(),
        }
    }

    pub(crate) fn contains(&self, x: usize) -> bool {
        self.set.contains(x)
    }

    /// Replaces the closure by `<self, x>`.
    pub(crate) fn extend(&mut self, g: &Group, x: usize) {
        if self.set.contains(x) {
            return;
        }
        let base = self.elems.clone();
        self.gens.push(x);
        let mut reps = vec![0usize];
        let mut i = 0;
        while i < reps.len() {
            let r = reps[i];
            for k in 0..self.gens.len() {
                let t = g.mul(r, self.gens[k]);
                if !self.set.contains(t) {
                    for &h in &base {
                        let y = g.mul(h, t);
                        self.set.insert(y);
                        self.elems.push(y);
                    }
                    reps.push(t);
                }
            }
            i += 1;
        }
    }

    pub(crate) fn into_subgroup(self) -> SubgroupSet {
        SubgroupSet::from_bits_unchecked(self.set)
    }
}

impl Group {
    /// The subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> SubgroupSet {
        let mut cl = Closure::trivial(self);
        for &x in gens {
            cl.extend(self, x);
        }
        cl.into_subgroup()
    }

    /// A small generating set of `h`.
    pub fn generators_of(&self, h: &SubgroupSet) -> Vec<usize> {
        self.greedy_generators(&h.elements().collect::<Vec<_>>())
    }

    /// Smallest subgroup containing both `a` and `b`.
    pub fn join(&self, a: &SubgroupSet, b: &SubgroupSet) -> SubgroupSet {
        if b.is_subgroup_of(a) {
            return a.clone();
        }
        if a.is_subgroup_of(b) {
            return b.clone();
        }
        let mut cl = Closure::trivial(self);
        for x in self
            .generators_of(a)
            .into_iter()
            .chain(self.generators_of(b))
        {
            cl.extend(self, x);
        }
        cl.into_subgroup()
    }

    pub fn join_all<'a>(&self, subs: impl IntoIterator<Item = &'a SubgroupSet>) -> SubgroupSet {
        subs.into_iter()
            .fold(SubgroupSet::trivial(self), |acc, s| self.join(&acc, s))
    }

    pub fn is_normal(&self, h: &SubgroupSet) -> bool {
        self.normalizes(self.generators(), h)
    }

    /// True iff every element of `by` normalizes `h`.
    pub(crate) fn normalizes(&self, by: &[usize], h: &SubgroupSet) -> bool {
        let hg = self.generators_of(h);
        by.iter()
            .all(|&g| hg.iter().all(|&x| h.contains(self.conj(g, x))))
    }

    pub fn conjugate(&self, h: &SubgroupSet, g: usize) -> SubgroupSet {
        SubgroupSet::from_bits_unchecked(ElementSet::from_indices(
            self.order(),
            h.elements().map(|x| self.conj(g, x)),
        ))
    }

    /// Intersection of the conjugates of `h` by elements of `within`;
    /// the largest normal subgroup of `within` contained in `h`.
    pub fn core_in(&self, within: &SubgroupSet, h: &SubgroupSet) -> SubgroupSet {
        let mut core = h.clone();
        for g in within.elements() {
            if core.is_trivial() {
                break;
            }
            if !h.contains(g) {
                core = core.intersection(&self.conjugate(h, g));
            }
        }
        core
    }

    pub fn core(&self, h: &SubgroupSet) -> SubgroupSet {
        self.core_in(&SubgroupSet::whole(self), h)
    }

    /// `C_G(H/K) = { g : [g, h] ∈ K for all h ∈ H }` for normal `K ≤ H`.
    pub fn section_centralizer(&self, h: &SubgroupSet, k: &SubgroupSet) -> Result<SubgroupSet> {
        if !k.is_subgroup_of(h) || !self.is_normal(h) || !self.is_normal(k) {
            return Err(Error::PreconditionViolated(
                "section centralizer needs normal K ≤ H".into(),
            ));
        }
        Ok(self.centralizer_mod(h, k))
    }

    pub(crate) fn centralizer_mod(&self, h: &SubgroupSet, k: &SubgroupSet) -> SubgroupSet {
        let hg = self.generators_of(h);
        SubgroupSet::from_bits_unchecked(ElementSet::from_indices(
            self.order(),
            (0..self.order()).filter(|&g| hg.iter().all(|&x| k.contains(self.commutator(g, x)))),
        ))
    }

    pub fn centre(&self) -> SubgroupSet {
        self.centralizer_mod(&SubgroupSet::whole(self), &SubgroupSet::trivial(self))
    }

    /// Limit of the upper central series.
    pub fn hypercentre(&self) -> SubgroupSet {
        let whole = SubgroupSet::whole(self);
        let mut z = SubgroupSet::trivial(self);
        loop {
            let next = self.centralizer_mod(&whole, &z);
            if next == z {
                return z;
            }
            z = next;
        }
    }

    /// Subgroup generated by all commutators `[a, b]` with `a ∈ A`, `b ∈ B`.
    pub fn commutator_subgroup(&self, a: &SubgroupSet, b: &SubgroupSet) -> SubgroupSet {
        let mut cl = Closure::trivial(self);
        let bs: Vec<usize> = b.elements().collect();
        for x in a.elements() {
            for &y in &bs {
                cl.extend(self, self.commutator(x, y));
            }
        }
        cl.into_subgroup()
    }

    pub fn derived_subgroup(&self) -> SubgroupSet {
        let w = SubgroupSet::whole(self);
        self.commutator_subgroup(&w, &w)
    }

    pub fn is_soluble(&self) -> bool {
        let mut cur = SubgroupSet::whole(self);
        loop {
            if cur.is_trivial() {
                return true;
            }
            let next = self.commutator_subgroup(&cur, &cur);
            if next == cur {
                return false;
            }
            cur = next;
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.hypercentre().is_whole()
    }

    /// True iff every prime divisor of `|G|` lies in `pi`.
    pub fn is_pi_group(&self, pi: &PrimeSet) -> bool {
        primes::prime_divisors(self.order() as u64)
            .into_iter()
            .all(|p| pi.contains(p))
    }

    /// Conjugacy classes, each as an ascending element list, ordered by
    /// least element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let mut class = vec![x];
            seen[x] = true;
            let mut i = 0;
            while i < class.len() {
                let y = class[i];
                for &g in self.generators() {
                    let z = self.conj(g, y);
                    if !seen[z] {
                        seen[z] = true;
                        class.push(z);
                    }
                }
                i += 1;
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    /// All normal subgroups in canonical order, cached.
    ///
    /// Computed as the closure under products of the normal closures of
    /// single conjugacy classes; no subgroup lattice is needed.
    pub fn normal_subgroups(&self) -> &[SubgroupSet] {
        self.cache.normals.get_or_init(|| {
            let mut found: HashSet<SubgroupSet> = HashSet::new();
            let mut list: Vec<SubgroupSet> = Vec::new();
            let push = |s: SubgroupSet, found: &mut HashSet<SubgroupSet>, list: &mut Vec<_>| {
                if found.insert(s.clone()) {
                    list.push(s);
                }
            };
            push(SubgroupSet::trivial(self), &mut found, &mut list);
            for class in self.conjugacy_classes() {
                let s = self.closure(&class);
                push(s, &mut found, &mut list);
            }
            let mut i = 0;
            while i < list.len() {
                for j in 0..i {
                    let s = self.join(&list[i], &list[j]);
                    push(s, &mut found, &mut list);
                }
                i += 1;
            }
            list.sort();
            list
        })
    }

    /// Normal subgroups `M` of `G` with `lower < M` and nothing normal
    /// strictly between; i.e. the lifts of the minimal normal subgroups of
    /// `G/lower`. Canonical order.
    pub fn minimal_normal_over(&self, lower: &SubgroupSet) -> Vec<SubgroupSet> {
        let above: Vec<&SubgroupSet> = self
            .normal_subgroups()
            .iter()
            .filter(|m| lower.is_subgroup_of(m) && *m != lower)
            .collect();
        above
            .iter()
            .filter(|m| {
                !above
                    .iter()
                    .any(|l| l.order() < m.order() && l.is_subgroup_of(m))
            })
            .map(|m| (*m).clone())
            .collect()
    }

    pub fn minimal_normal_subgroups(&self) -> Vec<SubgroupSet> {
        self.minimal_normal_over(&SubgroupSet::trivial(self))
    }

    /// `O_π(G)`: the largest normal π-subgroup.
    pub fn o_pi(&self, pi: &PrimeSet) -> SubgroupSet {
        self.normal_subgroups()
            .iter()
            .filter(|n| is_pi_number(n.order() as u64, pi))
            .max_by_key(|n| n.order())
            .cloned()
            .expect("the trivial subgroup is a normal π-subgroup")
    }

    pub fn o_p(&self, p: u64) -> SubgroupSet {
        self.o_pi(&PrimeSet::single(p))
    }

    /// `O_{p'}(G)`.
    pub fn o_p_prime(&self, p: u64) -> SubgroupSet {
        self.normal_subgroups()
            .iter()
            .filter(|n| !(n.order() as u64).is_multiple_of(p))
            .max_by_key(|n| n.order())
            .cloned()
            .expect("trivial subgroup")
    }

    /// `O_{p',p}(G)`: preimage of `O_p(G/O_{p'}(G))`.
    pub fn o_p_prime_p(&self, p: u64) -> SubgroupSet {
        let base = self.o_p_prime(p);
        self.normal_subgroups()
            .iter()
            .filter(|n| {
                base.is_subgroup_of(n)
                    && primes::is_prime_power_of((n.order() / base.order()) as u64, p)
            })
            .max_by_key(|n| n.order())
            .cloned()
            .expect("O_{p'} itself qualifies")
    }

    /// Largest normal nilpotent subgroup, as the product of the `O_p(G)`.
    pub fn fitting(&self) -> SubgroupSet {
        let ops: Vec<SubgroupSet> = primes::prime_divisors(self.order() as u64)
            .into_iter()
            .map(|p| self.o_p(p))
            .collect();
        self.join_all(&ops)
    }

    pub fn socle(&self) -> SubgroupSet {
        let mins = self.minimal_normal_subgroups();
        self.join_all(&mins)
    }

    /// Re-indexes `h` as a group of its own. Local element `i` is the `i`-th
    /// smallest parent index in `h`, so the identity stays at 0.
    pub fn materialize(&self, h: &SubgroupSet) -> Embedded {
        let elems: Vec<usize> = h.elements().collect();
        let m = elems.len();
        let mut local = vec![usize::MAX; self.order()];
        for (i, &x) in elems.iter().enumerate() {
            local[x] = i;
        }
        let mut mul = vec![0u16; m * m];
        for (i, &x) in elems.iter().enumerate() {
            for (j, &y) in elems.iter().enumerate() {
                mul[i * m + j] = local[self.mul(x, y)] as u16;
            }
        }
        let gens = self
            .generators_of(h)
            .into_iter()
            .map(|x| local[x])
            .collect();
        let group = Group::from_parts(
            format!("{}<{}>", self.name(), m),
            m,
            mul,
            gens,
            Provenance::Subgroup {
                of: self.name().to_string(),
            },
        )
        .expect("a subgroup of a group is a group");
        Embedded {
            group,
            embedding: elems,
            local,
        }
    }
}

pub(crate) fn is_pi_number(n: u64, pi: &PrimeSet) -> bool {
    primes::prime_divisors(n)
        .into_iter()
        .all(|p| pi.contains(p))
}

/// A subgroup re-indexed as a standalone group, with the maps back and forth.
pub struct Embedded {
    pub group: Group,
    /// Local index → parent index.
    pub embedding: Vec<usize>,
    /// Parent index → local index (`usize::MAX` outside the subgroup).
    pub local: Vec<usize>,
}

impl Embedded {
    /// Parent subgroup `s ≤ H` as a subgroup of the materialized group.
    pub fn pull(&self, s: &SubgroupSet) -> SubgroupSet {
        SubgroupSet::from_bits_unchecked(ElementSet::from_indices(
            self.group.order(),
            s.elements().map(|x| self.local[x]),
        ))
    }

    /// Local subgroup pushed back into the parent.
    pub fn push(&self, s: &SubgroupSet, parent_order: usize) -> SubgroupSet {
        SubgroupSet::from_bits_unchecked(ElementSet::from_indices(
            parent_order,
            s.elements().map(|x| self.embedding[x]),
        ))
    }
}
