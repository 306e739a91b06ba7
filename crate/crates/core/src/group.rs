//! Finite groups as dense multiplication tables.
//!
//! Every group is stored as an `n × n` table of element indices with the
//! identity at index 0. Groups are immutable once built; derived data
//! (element orders, normal subgroups, the subgroup lattice) is computed
//! lazily and cached behind `OnceLock`s so a `Group` can be shared across
//! worker threads.

use std::collections::VecDeque;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::perm::Perm;
use crate::subgroup::SubgroupSet;

pub const DEFAULT_ORDER_CAP: usize = 512;
pub const DEFAULT_ISO_CAP: usize = 128;

/// How a group was obtained.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Generators {
        degree: usize,
        generators: Vec<String>,
    },
    Table,
    Direct {
        left: String,
        right: String,
    },
    Semidirect {
        normal: String,
        complement: String,
    },
    MatrixModule {
        p: u64,
        dim: usize,
        acting: String,
    },
    Quotient {
        of: String,
        kernel_order: usize,
    },
    Subgroup {
        of: String,
    },
}

#[derive(Default)]
pub(crate) struct Cache {
    pub(crate) orders: OnceLock<Vec<usize>>,
    pub(crate) normals: OnceLock<Vec<SubgroupSet>>,
    pub(crate) lattice: OnceLock<std::result::Result<Lattice, usize>>,
}

pub struct Group {
    name: String,
    n: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
    gens: Vec<usize>,
    provenance: Provenance,
    pub(crate) cache: Cache,
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Group")
            .field("name", &self.name)
            .field("order", &self.n)
            .field("gens", &self.gens)
            .finish()
    }
}

impl Group {
    /// Builds a group from a flat row-major table, validating the group axioms.
    ///
    /// `gens` may be empty, in which case a generating set is chosen greedily.
    pub(crate) fn from_parts(
        name: impl Into<String>,
        n: usize,
        mul: Vec<u16>,
        gens: Vec<usize>,
        provenance: Provenance,
    ) -> Result<Self> {
        if n == 0 || mul.len() != n * n {
            return Err(Error::InvalidTable(format!("expected {n}x{n} entries")));
        }
        if n > u16::MAX as usize {
            return Err(Error::InvalidTable(format!(
                "order {n} too large for u16 indices"
            )));
        }
        for i in 0..n {
            if mul[i] as usize != i || mul[i * n] as usize != i {
                return Err(Error::InvalidTable("index 0 is not the identity".into()));
            }
        }
        // Latin square: every row and column is a permutation.
        let mut inv = vec![u16::MAX; n];
        let mut seen = vec![usize::MAX; n];
        for x in 0..n {
            for y in 0..n {
                let z = mul[x * n + y] as usize;
                if z >= n || seen[z] == x {
                    return Err(Error::InvalidTable(format!("row {x} is not a permutation")));
                }
                seen[z] = x;
                if z == 0 {
                    inv[x] = y as u16;
                }
            }
        }
        let mut seen = vec![usize::MAX; n];
        for y in 0..n {
            for x in 0..n {
                let z = mul[x * n + y] as usize;
                if seen[z] == y {
                    return Err(Error::InvalidTable(format!(
                        "column {y} is not a permutation"
                    )));
                }
                seen[z] = y;
            }
        }
        let mut g = Group {
            name: name.into(),
            n,
            mul,
            inv,
            gens: Vec::new(),
            provenance,
            cache: Cache::default(),
        };
        g.gens = if gens.is_empty() {
            g.greedy_generators(&(0..n).collect::<Vec<_>>())
        } else {
            let mut gs: Vec<usize> = Vec::new();
            for x in gens {
                if x >= n {
                    return Err(Error::InvalidTable(format!("generator {x} out of range")));
                }
                if x != 0 && !gs.contains(&x) {
                    gs.push(x);
                }
            }
            gs
        };
        if g.closure(&g.gens).order() != n {
            return Err(Error::InvalidTable(
                "designated generators do not generate".into(),
            ));
        }
        // Light's test: (xy)s = x(ys) for all x, y and generators s suffices.
        for &s in &g.gens {
            for x in 0..n {
                for y in 0..n {
                    if g.mul(g.mul(x, y), s) != g.mul(x, g.mul(y, s)) {
                        return Err(Error::InvalidTable(format!(
                            "not associative at ({x}, {y}, {s})"
                        )));
                    }
                }
            }
        }
        Ok(g)
    }

    /// Builds a group from a multiplication table given as rows.
    pub fn from_table(name: impl Into<String>, table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        let mut mul = Vec::with_capacity(n * n);
        for row in table {
            if row.len() != n {
                return Err(Error::InvalidTable("table is not square".into()));
            }
            mul.extend(row.iter().map(|&x| x.min(u16::MAX as usize) as u16));
        }
        Self::from_parts(name, n, mul, Vec::new(), Provenance::Table)
    }

    /// Closes a set of permutations of `{1..degree}` under composition.
    ///
    /// Elements are numbered in breadth-first order from the identity, each
    /// new element being `x * g` for an earlier `x` and a generator `g`.
    pub fn from_permutations(
        name: impl Into<String>,
        degree: usize,
        generators: &[Perm],
        cap: usize,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::InvalidPermutation(format!(
                "{} has degree {}, expected {degree}",
                bad.to_cycles(),
                bad.degree()
            )));
        }
        let mut elems = vec![Perm::identity(degree)];
        let mut index = std::collections::HashMap::new();
        index.insert(elems[0].clone(), 0usize);
        // parent[y] = (x, generator slot) with y = x * generators[slot]
        let mut parent: Vec<(usize, usize)> = vec![(0, usize::MAX)];
        let mut right: Vec<Vec<usize>> = vec![Vec::new(); generators.len()];
        let mut i = 0;
        while i < elems.len() {
            for (k, g) in generators.iter().enumerate() {
                let y = elems[i].compose(g);
                let j = match index.get(&y) {
                    Some(&j) => j,
                    None => {
                        let j = elems.len();
                        if j >= cap {
                            return Err(Error::ClosureCapExceeded {
                                cap,
                                reached: j + 1,
                            });
                        }
                        index.insert(y.clone(), j);
                        elems.push(y);
                        parent.push((i, k));
                        j
                    }
                };
                right[k].push(j);
            }
            i += 1;
        }
        let n = elems.len();
        let mut mul = vec![0u16; n * n];
        for x in 0..n {
            mul[x * n] = x as u16;
        }
        for y in 1..n {
            let (p, k) = parent[y];
            for x in 0..n {
                let xp = mul[x * n + p] as usize;
                mul[x * n + y] = right[k][xp] as u16;
            }
        }
        let gens: Vec<usize> = generators.iter().map(|g| index[g]).collect();
        Self::from_parts(
            name,
            n,
            mul,
            gens,
            Provenance::Generators {
                degree,
                generators: generators.iter().map(Perm::to_cycles).collect(),
            },
        )
    }

    /// Parses cycle strings and closes them; see [`Group::from_permutations`].
    pub fn from_cycle_strings(
        name: impl Into<String>,
        degree: usize,
        generators: &[&str],
        cap: usize,
    ) -> Result<Self> {
        let perms = generators
            .iter()
            .map(|s| Perm::parse_cycles(degree, s))
            .collect::<Result<Vec<_>>>()?;
        Self::from_permutations(name, degree, &perms, cap)
    }

    pub fn cyclic(n: usize) -> Self {
        let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let perm = Perm::from_images(cycle).expect("cycle is a permutation");
        Self::from_permutations(format!("C{n}"), n, &[perm], usize::MAX)
            .expect("cyclic group construction")
    }

    /// The trivial group.
    pub fn trivial() -> Self {
        Self::from_parts("1", 1, vec![0], Vec::new(), Provenance::Table).expect("trivial group")
    }

    /// Componentwise product; element `(a, b)` has index `a * |B| + b`.
    pub fn direct_product(a: &Group, b: &Group, cap: usize) -> Result<Self> {
        let n = a.n * b.n;
        if n > cap {
            return Err(Error::ClosureCapExceeded { cap, reached: n });
        }
        let mut mul = vec![0u16; n * n];
        for x in 0..n {
            let (xa, xb) = (x / b.n, x % b.n);
            for y in 0..n {
                let (ya, yb) = (y / b.n, y % b.n);
                mul[x * n + y] = (a.mul(xa, ya) * b.n + b.mul(xb, yb)) as u16;
            }
        }
        let gens = a
            .gens
            .iter()
            .map(|&g| g * b.n)
            .chain(b.gens.iter().copied())
            .collect();
        Self::from_parts(
            format!("{}x{}", a.name, b.name),
            n,
            mul,
            gens,
            Provenance::Direct {
                left: a.name.clone(),
                right: b.name.clone(),
            },
        )
    }

    /// `N ⋊ H` with `(n1,h1)(n2,h2) = (n1 · (h1 ▷ n2), h1 h2)`.
    ///
    /// `action[h][x]` is the image of `x ∈ N` under `h`; element `(x, h)` has
    /// index `x * |H| + h`, so a trivial action reproduces
    /// [`Group::direct_product`] index for index.
    pub fn semidirect_product(
        normal: &Group,
        complement: &Group,
        action: &[Vec<usize>],
        cap: usize,
    ) -> Result<Self> {
        let (nn, nh) = (normal.n, complement.n);
        if action.len() != nh || action.iter().any(|a| a.len() != nn) {
            return Err(Error::PreconditionViolated(format!(
                "action must be a {nh} x {nn} table"
            )));
        }
        if action[0].iter().enumerate().any(|(i, &x)| i != x) {
            return Err(Error::NotActionHomomorphism);
        }
        for &g in &complement.gens {
            if !normal.is_automorphism(&action[g]) {
                return Err(Error::NotAutomorphism(g));
            }
        }
        for h in 0..nh {
            for &g in &complement.gens {
                let hg = complement.mul(h, g);
                if (0..nn).any(|x| action[hg][x] != action[h][action[g][x]]) {
                    return Err(Error::NotActionHomomorphism);
                }
            }
        }
        let n = nn * nh;
        if n > cap {
            return Err(Error::ClosureCapExceeded { cap, reached: n });
        }
        let mut mul = vec![0u16; n * n];
        for x in 0..n {
            let (x1, h1) = (x / nh, x % nh);
            for y in 0..n {
                let (x2, h2) = (y / nh, y % nh);
                let xn = normal.mul(x1, action[h1][x2]);
                mul[x * n + y] = (xn * nh + complement.mul(h1, h2)) as u16;
            }
        }
        let gens = normal
            .gens
            .iter()
            .map(|&g| g * nh)
            .chain(complement.gens.iter().copied())
            .collect();
        Self::from_parts(
            format!("{}:{}", normal.name, complement.name),
            n,
            mul,
            gens,
            Provenance::Semidirect {
                normal: normal.name.clone(),
                complement: complement.name.clone(),
            },
        )
    }

    /// Extends generator images of an action to a full `|H| × |N|` table by
    /// walking the Cayley graph of `complement`. Consistency is checked later
    /// by [`Group::semidirect_product`].
    pub fn extend_action(
        normal: &Group,
        complement: &Group,
        generator_images: &[Vec<usize>],
    ) -> Result<Vec<Vec<usize>>> {
        if generator_images.len() != complement.gens.len() {
            return Err(Error::PreconditionViolated(format!(
                "expected {} generator images, got {}",
                complement.gens.len(),
                generator_images.len()
            )));
        }
        for img in generator_images {
            if img.len() != normal.n || img.iter().any(|&x| x >= normal.n) {
                return Err(Error::NotAutomorphism(0));
            }
        }
        let mut table: Vec<Option<Vec<usize>>> = vec![None; complement.n];
        table[0] = Some((0..normal.n).collect());
        let mut queue = VecDeque::from([0usize]);
        while let Some(h) = queue.pop_front() {
            for (k, &g) in complement.gens.iter().enumerate() {
                let hg = complement.mul(h, g);
                if table[hg].is_none() {
                    let cur = table[h].as_ref().unwrap();
                    let img = &generator_images[k];
                    table[hg] = Some((0..normal.n).map(|x| cur[img[x]]).collect());
                    queue.push_back(hg);
                }
            }
        }
        Ok(table.into_iter().map(|t| t.unwrap()).collect())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.n + y] as usize
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x] as usize
    }

    /// `x y x⁻¹`
    #[inline]
    pub fn conj(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(x, y), self.inv(x))
    }

    /// `[x, y] = x y x⁻¹ y⁻¹`
    #[inline]
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.conj(x, y), self.inv(y))
    }

    pub fn pow(&self, x: usize, k: usize) -> usize {
        let (mut acc, mut base, mut k) = (0, x, k);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    fn orders(&self) -> &[usize] {
        self.cache.orders.get_or_init(|| {
            (0..self.n)
                .map(|x| {
                    let (mut y, mut k) = (x, 1);
                    while y != 0 {
                        y = self.mul(y, x);
                        k += 1;
                    }
                    k
                })
                .collect()
        })
    }

    /// Least `k ≥ 1` with `x^k = e`.
    pub fn element_order(&self, x: usize) -> usize {
        self.orders()[x]
    }

    pub fn exponent(&self) -> usize {
        self.orders().iter().fold(1, |acc, &o| lcm(acc, o))
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .all(|&a| self.gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Sorted list of element orders.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut v = self.orders().to_vec();
        v.sort_unstable();
        v
    }

    fn is_automorphism(&self, f: &[usize]) -> bool {
        if f.len() != self.n || f[0] != 0 {
            return false;
        }
        let mut seen = vec![false; self.n];
        for &x in f {
            if x >= self.n || std::mem::replace(&mut seen[x], true) {
                return false;
            }
        }
        (0..self.n).all(|x| (0..self.n).all(|y| f[self.mul(x, y)] == self.mul(f[x], f[y])))
    }

    /// Picks generators from `pool` (in order), skipping elements already in
    /// the subgroup generated so far.
    pub(crate) fn greedy_generators(&self, pool: &[usize]) -> Vec<usize> {
        let mut cl = crate::subgroup::Closure::trivial(self);
        let mut gens = Vec::new();
        // Prefer high-order elements: fewer generators for the same closure.
        let mut sorted: Vec<usize> = pool.to_vec();
        sorted.sort_by_key(|&x| std::cmp::Reverse(self.element_order(x)));
        for x in sorted {
            if !cl.contains(x) {
                cl.extend(self, x);
                gens.push(x);
            }
        }
        gens
    }

    /// Regular permutation representation `x ↦ (y ↦ x y)` of the generators.
    pub fn regular_generators(&self) -> Vec<Perm> {
        self.gens
            .iter()
            .map(|&g| {
                Perm::from_images((0..self.n).map(|y| self.mul(g, y)).collect())
                    .expect("left multiplication is a bijection")
            })
            .collect()
    }

    pub fn lattice(&self) -> Result<&Lattice> {
        self.lattice_with_cap(crate::lattice::DEFAULT_SUBGROUP_CAP)
    }

    /// The cached lattice; `cap` only matters on the first call.
    pub fn lattice_with_cap(&self, cap: usize) -> Result<&Lattice> {
        match self
            .cache
            .lattice
            .get_or_init(|| Lattice::build(self, cap).map_err(|_| cap))
        {
            Ok(l) => Ok(l),
            Err(cap) => Err(Error::SubgroupCountCapExceeded { cap: *cap }),
        }
    }

    /// True iff a bijective homomorphism `self → other` exists.
    ///
    /// Backtracks over images of a small generating set, restricted to
    /// elements of equal order, after comparing element-order profiles.
    pub fn is_isomorphic_to(&self, other: &Group) -> Result<bool> {
        self.is_isomorphic_with_cap(other, DEFAULT_ISO_CAP)
    }

    pub fn is_isomorphic_with_cap(&self, other: &Group, cap: usize) -> Result<bool> {
        if self.n != other.n {
            return Ok(false);
        }
        if self.n > cap {
            return Err(Error::IsoCapExceeded { cap, order: self.n });
        }
        if self.order_profile() != other.order_profile() {
            return Ok(false);
        }
        let (a_ab, b_ab) = (self.is_abelian(), other.is_abelian());
        if a_ab != b_ab {
            return Ok(false);
        }
        // Finite abelian groups are determined by their order statistics.
        if a_ab {
            return Ok(true);
        }
        let gens = self.greedy_generators(&(0..self.n).collect::<Vec<_>>());
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| {
                (0..other.n)
                    .filter(|&y| other.element_order(y) == self.element_order(g))
                    .collect()
            })
            .collect();
        let mut images = Vec::with_capacity(gens.len());
        Ok(self.iso_search(other, &gens, &candidates, &mut images))
    }

    fn iso_search(
        &self,
        other: &Group,
        gens: &[usize],
        candidates: &[Vec<usize>],
        images: &mut Vec<usize>,
    ) -> bool {
        let k = images.len();
        if k > 0 && self.partial_hom(other, &gens[..k], images).is_none() {
            return false;
        }
        if k == gens.len() {
            return true;
        }
        for &y in &candidates[k] {
            images.push(y);
            if self.iso_search(other, gens, candidates, images) {
                return true;
            }
            images.pop();
        }
        false
    }

    /// Extends `gens[i] ↦ images[i]` along the Cayley graph of `<gens>`,
    /// returning the map if it is a well-defined injective homomorphism.
    fn partial_hom(&self, other: &Group, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.n];
        let mut used = vec![false; other.n];
        map[0] = 0;
        used[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (&g, &gy) in gens.iter().zip(images) {
                let xg = self.mul(x, g);
                let want = other.mul(map[x], gy);
                if map[xg] == usize::MAX {
                    if std::mem::replace(&mut used[want], true) {
                        return None;
                    }
                    map[xg] = want;
                    queue.push_back(xg);
                } else if map[xg] != want {
                    return None;
                }
            }
        }
        Some(map)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// Convenience wrapper: closes permutation generators under the default cap.
pub fn group_from_permutations(degree: usize, generators: &[&str]) -> Result<Group> {
    Group::from_cycle_strings(
        format!("<{}>", generators.join(", ")),
        degree,
        generators,
        DEFAULT_ORDER_CAP,
    )
}

pub fn are_isomorphic(a: &Group, b: &Group) -> Result<bool> {
    a.is_isomorphic_to(b)
}
