//! Semidirect products `V ⋊ H` with `V = F_p^dim` and `H` acting by matrices.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::group::{Group, Provenance};
use crate::perm::Perm;
use crate::primes::is_prime;
use crate::subgroup::SubgroupSet;

/// Square matrix over `F_p`, row-major, acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    pub dim: usize,
    pub entries: Vec<u64>,
}

impl Matrix {
    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1;
        }
        Matrix { dim, entries }
    }

    pub fn from_rows(rows: &[Vec<u64>], p: u64) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::BadSpec("matrix must be square and non-empty".into()));
        }
        Ok(Matrix {
            dim,
            entries: rows.iter().flatten().map(|&x| x % p).collect(),
        })
    }

    pub fn mul(&self, other: &Matrix, p: u64) -> Matrix {
        let d = self.dim;
        let mut entries = vec![0; d * d];
        for i in 0..d {
            for j in 0..d {
                entries[i * d + j] = (0..d)
                    .map(|k| self.entries[i * d + k] * other.entries[k * d + j])
                    .sum::<u64>()
                    % p;
            }
        }
        Matrix { dim: d, entries }
    }

    pub fn apply(&self, v: &[u64], p: u64) -> Vec<u64> {
        let d = self.dim;
        (0..d)
            .map(|i| (0..d).map(|k| self.entries[i * d + k] * v[k]).sum::<u64>() % p)
            .collect()
    }
}

/// Vector ↔ index with `index = Σ v_i p^i`.
pub fn vector_index(v: &[u64], p: u64) -> usize {
    v.iter().rev().fold(0u64, |acc, &x| acc * p + x) as usize
}

pub fn index_vector(mut idx: usize, p: u64, dim: usize) -> Vec<u64> {
    (0..dim)
        .map(|_| {
            let x = idx as u64 % p;
            idx /= p as usize;
            x
        })
        .collect()
}

/// `F_p^dim` as an additive group, elements indexed by [`vector_index`].
pub fn elementary_abelian(p: u64, dim: usize) -> Result<Group> {
    if !is_prime(p) || dim == 0 {
        return Err(Error::PreconditionViolated(
            "need a prime p and dim ≥ 1".into(),
        ));
    }
    let n = (p as usize).pow(dim as u32);
    let mut mul = vec![0u16; n * n];
    for x in 0..n {
        let vx = index_vector(x, p, dim);
        for y in 0..n {
            let vy = index_vector(y, p, dim);
            let s: Vec<u64> = vx.iter().zip(&vy).map(|(a, b)| (a + b) % p).collect();
            mul[x * n + y] = vector_index(&s, p) as u16;
        }
    }
    let gens = (0..dim).map(|i| (p as usize).pow(i as u32)).collect();
    let name = if dim == 1 {
        format!("C{p}")
    } else {
        format!("C{p}^{dim}")
    };
    Group::from_parts(name, n, mul, gens, Provenance::Table)
}

/// Extends `generator of H ↦ matrix` to all of `H`, failing with
/// [`Error::RelationMismatch`] unless it is a homomorphism into `GL(dim, p)`.
pub fn extend_representation(h: &Group, mats: &[Matrix], p: u64) -> Result<Vec<Matrix>> {
    if mats.len() != h.generators().len() {
        return Err(Error::PreconditionViolated(format!(
            "{} matrices for {} generators",
            mats.len(),
            h.generators().len()
        )));
    }
    let dim = mats.first().map_or(1, |m| m.dim);
    let mut rep: Vec<Option<Matrix>> = vec![None; h.order()];
    rep[0] = Some(Matrix::identity(dim));
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (k, &g) in h.generators().iter().enumerate() {
            let xg = h.mul(x, g);
            let m = rep[x].as_ref().unwrap().mul(&mats[k], p);
            match &rep[xg] {
                None => {
                    rep[xg] = Some(m);
                    queue.push_back(xg);
                }
                Some(existing) if *existing != m => return Err(Error::RelationMismatch),
                Some(_) => {}
            }
        }
    }
    Ok(rep.into_iter().map(|m| m.unwrap()).collect())
}

/// Builds `V ⋊ H` for `V = F_p^dim`; returns the group and `V` as a subgroup.
///
/// `V` occupies the indices `x * |H|` (see [`Group::semidirect_product`]).
pub fn matrix_module_semidirect(
    p: u64,
    dim: usize,
    mats: &[Matrix],
    h: &Group,
    cap: usize,
) -> Result<(Group, SubgroupSet)> {
    if mats.iter().any(|m| m.dim != dim) {
        return Err(Error::PreconditionViolated(
            "matrix dimension mismatch".into(),
        ));
    }
    let total = (p as usize).pow(dim as u32) * h.order();
    if total > cap {
        return Err(Error::ClosureCapExceeded {
            cap,
            reached: total,
        });
    }
    let v = elementary_abelian(p, dim)?;
    let rep = extend_representation(h, mats, p)?;
    let action: Vec<Vec<usize>> = rep
        .iter()
        .map(|m| {
            (0..v.order())
                .map(|x| vector_index(&m.apply(&index_vector(x, p, dim), p), p))
                .collect()
        })
        .collect();
    let g = Group::semidirect_product(&v, h, &action, cap)?;
    let g_order = g.order();
    let mut mul = Vec::with_capacity(g_order * g_order);
    for x in 0..g_order {
        for y in 0..g_order {
            mul.push(g.mul(x, y) as u16);
        }
    }
    let g = Group::from_parts(
        format!("{}^{}:{}", p, dim, h.name()),
        g_order,
        mul,
        g.generators().to_vec(),
        Provenance::MatrixModule {
            p,
            dim,
            acting: h.name().to_string(),
        },
    )?;
    let module = SubgroupSet::from_bits_unchecked(crate::bits::ElementSet::from_indices(
        g_order,
        (0..v.order()).map(|x| x * h.order()),
    ));
    Ok((g, module))
}

/// Every subspace of `F_p^dim` invariant under all `mats`, as sorted index
/// lists. Enumerates all subspaces by spanning sets, independently of any
/// group structure.
pub fn invariant_subspaces(p: u64, dim: usize, mats: &[Matrix]) -> Vec<Vec<usize>> {
    let n = (p as usize).pow(dim as u32);
    let span = |gens: &[usize]| -> Vec<usize> {
        let mut set: HashSet<usize> = HashSet::from([0]);
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            let vx = index_vector(x, p, dim);
            for &g in gens {
                let vg = index_vector(g, p, dim);
                let s: Vec<u64> = vx.iter().zip(&vg).map(|(a, b)| (a + b) % p).collect();
                let y = vector_index(&s, p);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        let mut v: Vec<usize> = set.into_iter().collect();
        v.sort_unstable();
        v
    };
    let mut subspaces: HashSet<Vec<usize>> = HashSet::from([vec![0]]);
    let mut queue = vec![vec![0usize]];
    while let Some(s) = queue.pop() {
        for x in 0..n {
            if s.binary_search(&x).is_err() {
                let mut gens = s.clone();
                gens.push(x);
                let t = span(&gens);
                if subspaces.insert(t.clone()) {
                    queue.push(t);
                }
            }
        }
    }
    let mut out: Vec<Vec<usize>> = subspaces
        .into_iter()
        .filter(|s| {
            mats.iter().all(|m| {
                s.iter().all(|&x| {
                    let y = vector_index(&m.apply(&index_vector(x, p, dim), p), p);
                    s.binary_search(&y).is_ok()
                })
            })
        })
        .collect();
    out.sort_by_key(|s| (s.len(), s.clone()));
    out
}

/// Matrices of the permutation action on the sum-zero submodule of `F_p^d`,
/// in the basis `e_i - e_d` (`i < d`). Permutations act by `e_i ↦ e_σ(i)`.
pub fn sum_zero_matrices(perms: &[Perm], p: u64) -> Vec<Matrix> {
    perms
        .iter()
        .map(|s| {
            let d = s.degree();
            let last = d - 1;
            let dim = d - 1;
            let mut entries = vec![0u64; dim * dim];
            // image of f_i = e_σ(i) - e_σ(last) = f_σ(i) - f_σ(last), f_last = 0
            for i in 0..dim {
                let (a, b) = (s.apply(i), s.apply(last));
                if a != last {
                    entries[a * dim + i] = (entries[a * dim + i] + 1) % p;
                }
                if b != last {
                    entries[b * dim + i] = (entries[b * dim + i] + p - 1) % p;
                }
            }
            Matrix { dim, entries }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::group_from_permutations;

    #[test]
    fn dim_one_sign_module_gives_s3() {
        let c2 = Group::cyclic(2);
        let m = Matrix::from_rows(&[vec![2]], 3).unwrap();
        let (g, v) = matrix_module_semidirect(3, 1, &[m], &c2, 512).unwrap();
        let s3 = group_from_permutations(3, &["(1 2 3)", "(1 2)"]).unwrap();
        assert!(g.is_isomorphic_to(&s3).unwrap());
        assert_eq!(v.order(), 3);
        assert!(g.is_normal(&v));
    }

    #[test]
    fn trivial_action_is_direct() {
        let c3 = Group::cyclic(3);
        let (g, _) = matrix_module_semidirect(2, 2, &[Matrix::identity(2)], &c3, 512).unwrap();
        assert_eq!(g.order(), 12);
        assert!(g.is_abelian());
        let c2c2c3 = Group::direct_product(
            &Group::direct_product(&Group::cyclic(2), &Group::cyclic(2), 512).unwrap(),
            &c3,
            512,
        )
        .unwrap();
        assert!(g.is_isomorphic_to(&c2c2c3).unwrap());
    }

    #[test]
    fn relation_mismatch_detected() {
        let c2 = Group::cyclic(2);
        // An element of order 3 in GL(2, 2) cannot be the image of an involution.
        let m = Matrix::from_rows(&[vec![0, 1], vec![1, 1]], 2).unwrap();
        assert!(matches!(
            matrix_module_semidirect(2, 2, &[m], &c2, 512),
            Err(Error::RelationMismatch)
        ));
    }

    #[test]
    fn sum_zero_module_of_a4_is_simple_and_faithful() {
        let perms: Vec<Perm> = ["(1 2)(3 4)", "(1 2 3)"]
            .iter()
            .map(|s| Perm::parse_cycles(4, s).unwrap())
            .collect();
        let a4 = Group::from_permutations("A4", 4, &perms, 512).unwrap();
        let mats = sum_zero_matrices(&perms, 3);
        let rep = extend_representation(&a4, &mats, 3).unwrap();
        let faithful = rep.iter().skip(1).all(|m| *m != Matrix::identity(3));
        assert!(faithful);
        let inv = invariant_subspaces(3, 3, &mats);
        assert_eq!(inv.iter().map(|s| s.len()).collect::<Vec<_>>(), vec![1, 27]);
        let (g, p) = matrix_module_semidirect(3, 3, &mats, &a4, 512).unwrap();
        assert_eq!(g.order(), 324);
        assert_eq!(p.order(), 27);
        assert!(g.minimal_normal_subgroups().contains(&p));
    }

    #[test]
    fn invariant_subspaces_of_trivial_action() {
        // Every subspace of F_2^2 is invariant under the identity: 0, three lines, whole.
        let inv = invariant_subspaces(2, 2, &[Matrix::identity(2)]);
        assert_eq!(inv.len(), 5);
    }
}
