//! The built-in formations, their membership tests, residuals and
//! canonical local satellites.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::chief::chief_series;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::primes::{self, PrimeSet};
use crate::quotient::quotient_unchecked;
use crate::subgroup::SubgroupSet;

/// One formation from the fixed menu.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formation {
    /// Groups of order 1.
    Triv,
    All,
    Sol,
    Nil,
    /// Supersoluble groups.
    Sup,
    /// `p`-supersoluble: every chief factor of order divisible by `p` has order `p`.
    PSup(u64),
    /// `p`-nilpotent: a normal Hall `p'`-subgroup exists.
    PNilp(u64),
    /// `p`-decomposable: a direct product of a `p`-group and a `p'`-group.
    PDec(u64),
    /// A normal Hall `π`-subgroup exists.
    PiClosed(PrimeSet),
    /// All `π`-groups.
    GPi(PrimeSet),
    /// Soluble `π`-groups.
    SPi(PrimeSet),
    /// Abelian groups of exponent dividing `n`.
    AExp(u64),
    /// Groups with nilpotent derived subgroup.
    NA,
    /// Soluble groups of nilpotent length at most `r`.
    NilPow(usize),
    /// Groups with a Sylow tower for the primes in decreasing order.
    SylTower,
}

impl Formation {
    pub fn hereditary(&self) -> bool {
        true
    }

    pub fn saturated(&self) -> bool {
        !matches!(self, Formation::AExp(_))
    }

    pub fn has_satellite(&self) -> bool {
        !matches!(self, Formation::SylTower | Formation::AExp(_))
    }

    pub fn is_member(&self, g: &Group) -> bool {
        let n = g.order() as u64;
        match self {
            Formation::Triv => n == 1,
            Formation::All => true,
            Formation::Sol => g.is_soluble(),
            Formation::Nil => g.is_nilpotent(),
            Formation::Sup => chief_series(g)
                .factors
                .iter()
                .all(|f| primes::is_prime(f.order as u64)),
            Formation::PSup(p) => chief_series(g)
                .factors
                .iter()
                .all(|f| !(f.order as u64).is_multiple_of(*p) || f.order as u64 == *p),
            Formation::PNilp(p) => g.o_p_prime(*p).order() as u64 == primes::part(n, |q| q != *p),
            Formation::PDec(p) => {
                g.o_p(*p).order() as u64 == primes::part(n, |q| q == *p)
                    && g.o_p_prime(*p).order() as u64 == primes::part(n, |q| q != *p)
            }
            Formation::PiClosed(pi) => pi_closed(g, pi),
            Formation::GPi(pi) => g.is_pi_group(pi),
            Formation::SPi(pi) => g.is_pi_group(pi) && g.is_soluble(),
            Formation::AExp(e) => g.is_abelian() && *e % g.exponent() as u64 == 0,
            Formation::NA => g.derived_subgroup().is_subgroup_of(&g.fitting()),
            Formation::NilPow(r) => g.is_soluble() && g.nilpotent_length().is_ok_and(|l| l <= *r),
            Formation::SylTower => {
                let mut ps = primes::prime_divisors(n);
                ps.reverse();
                (1..=ps.len()).all(|k| pi_closed(g, &PrimeSet::of(&ps[..k])))
            }
        }
    }

    /// Membership in the canonical local satellite value `F(p)`.
    pub fn satellite_member(&self, p: u64, g: &Group) -> Result<bool> {
        let p_group = || primes::is_prime_power_of(g.order() as u64, p);
        let mod_o_p = || quotient_unchecked(g, &g.o_p(p)).target;
        let over_o_p = |h: &Formation| h.is_member(&mod_o_p());
        Ok(match self {
            Formation::Triv => false,
            Formation::All => true,
            Formation::Sol => g.is_soluble(),
            Formation::Nil => p_group(),
            Formation::Sup => over_o_p(&Formation::AExp(p - 1)),
            Formation::PSup(q) if p == *q => over_o_p(&Formation::AExp(p - 1)),
            Formation::PSup(_) => self.is_member(g),
            Formation::PNilp(q) if p == *q => p_group(),
            Formation::PNilp(_) => self.is_member(g),
            Formation::PDec(q) if p == *q => p_group(),
            Formation::PDec(q) => !(g.order() as u64).is_multiple_of(*q),
            Formation::PiClosed(pi) if pi.contains(p) => self.is_member(g),
            Formation::PiClosed(pi) => g.is_pi_group(&complement(pi, g.order() as u64)),
            Formation::GPi(pi) => pi.contains(p) && g.is_pi_group(pi),
            Formation::SPi(pi) => pi.contains(p) && self.is_member(g),
            Formation::NA => mod_o_p().is_abelian(),
            Formation::NilPow(0) => false,
            Formation::NilPow(r) => over_o_p(&Formation::NilPow(r - 1)),
            Formation::SylTower | Formation::AExp(_) => {
                return Err(Error::NoSatellite(self.to_string()))
            }
        })
    }

    /// Memoized membership of lattice member `i` of `g`.
    pub fn member_in_lattice(&self, g: &Group, i: usize) -> Result<bool> {
        let lat = g.lattice()?;
        if let Some(&v) = lat.memo.lock().unwrap().get(&(self.clone(), i)) {
            return Ok(v);
        }
        let h = lat.get(i);
        let v = if h.is_whole() {
            self.is_member(g)
        } else {
            self.is_member(&lat.embedded(g, i).group)
        };
        lat.memo.lock().unwrap().insert((self.clone(), i), v);
        Ok(v)
    }

    /// The `F`-residual: the smallest normal subgroup with quotient in `F`.
    pub fn residual(&self, g: &Group) -> SubgroupSet {
        let res = g
            .normal_subgroups()
            .iter()
            .filter(|n| self.is_member(&quotient_unchecked(g, n).target))
            .fold(SubgroupSet::whole(g), |acc, n| acc.intersection(n));
        debug_assert!(self.is_member(&quotient_unchecked(g, &res).target));
        res
    }
}

/// `pi'` restricted to the primes dividing `n`.
fn complement(pi: &PrimeSet, n: u64) -> PrimeSet {
    PrimeSet::of(
        &primes::prime_divisors(n)
            .into_iter()
            .filter(|&q| !pi.contains(q))
            .collect::<Vec<_>>(),
    )
}

fn pi_closed(g: &Group, pi: &PrimeSet) -> bool {
    let n = g.order() as u64;
    let target = primes::part(n, |q| pi.contains(q));
    g.normal_subgroups()
        .iter()
        .any(|s| s.order() as u64 == target)
}

impl fmt::Display for Formation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formation::Triv => write!(f, "triv"),
            Formation::All => write!(f, "all"),
            Formation::Sol => write!(f, "sol"),
            Formation::Nil => write!(f, "nil"),
            Formation::Sup => write!(f, "sup"),
            Formation::PSup(p) => write!(f, "psup:{p}"),
            Formation::PNilp(p) => write!(f, "pnilp:{p}"),
            Formation::PDec(p) => write!(f, "pdec:{p}"),
            Formation::PiClosed(pi) => write!(f, "piclosed:{pi}"),
            Formation::GPi(pi) => write!(f, "gpi:{pi}"),
            Formation::SPi(pi) => write!(f, "spi:{pi}"),
            Formation::AExp(n) => write!(f, "aexp:{n}"),
            Formation::NA => write!(f, "na"),
            Formation::NilPow(r) => write!(f, "nilpow:{r}"),
            Formation::SylTower => write!(f, "syltower"),
        }
    }
}

impl FromStr for Formation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadFormation(s.to_string());
        let lower = s.trim().to_ascii_lowercase();
        let (head, arg) = match lower.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (lower.as_str(), None),
        };
        let prime = |a: Option<&str>| -> Result<u64> {
            let p: u64 = a.ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
            if primes::is_prime(p) {
                Ok(p)
            } else {
                Err(bad())
            }
        };
        let pset = |a: Option<&str>| PrimeSet::parse(a.ok_or_else(bad)?).ok_or_else(bad);
        let f = match (head, arg) {
            ("triv", None) => Formation::Triv,
            ("all", None) => Formation::All,
            ("sol", None) => Formation::Sol,
            ("nil", None) => Formation::Nil,
            ("sup", None) => Formation::Sup,
            ("na", None) => Formation::NA,
            ("syltower", None) => Formation::SylTower,
            ("psup", a) => Formation::PSup(prime(a)?),
            ("pnilp", a) => Formation::PNilp(prime(a)?),
            ("pdec", a) => Formation::PDec(prime(a)?),
            ("piclosed", a) => Formation::PiClosed(pset(a)?),
            ("gpi", a) => Formation::GPi(pset(a)?),
            ("spi", a) => Formation::SPi(pset(a)?),
            ("aexp", Some(a)) => Formation::AExp(a.trim().parse().map_err(|_| bad())?),
            ("nilpow", Some(a)) => Formation::NilPow(a.trim().parse().map_err(|_| bad())?),
            _ => return Err(bad()),
        };
        Ok(f)
    }
}

impl Serialize for Formation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::group_from_permutations;

    fn s3() -> Group {
        group_from_permutations(3, &["(1 2 3)", "(1 2)"]).unwrap()
    }
    fn s4() -> Group {
        group_from_permutations(4, &["(1 2 3 4)", "(1 2)"]).unwrap()
    }
    fn a4() -> Group {
        group_from_permutations(4, &["(1 2)(3 4)", "(1 2 3)"]).unwrap()
    }
    fn v4() -> Group {
        group_from_permutations(4, &["(1 2)(3 4)", "(1 3)(2 4)"]).unwrap()
    }

    #[test]
    fn membership_examples() {
        assert!(!Formation::Sup.is_member(&s4()));
        assert!(Formation::Sup.is_member(&s3()));
        assert!(!Formation::NA.is_member(&s4()));
        assert!(Formation::NA.is_member(&s3()));
        assert!(!Formation::SylTower.is_member(&a4()));
        assert!(Formation::SylTower.is_member(&s3()));
        assert!(!Formation::SylTower.is_member(&s4()));
        assert!(!Formation::PNilp(3).is_member(&s4()));
        assert!(Formation::PNilp(2).is_member(&s3()));
        assert!(!Formation::PNilp(3).is_member(&s3()));
        assert!(Formation::PNilp(2).is_member(&Group::cyclic(6)));
        assert!(Formation::PDec(2).is_member(&Group::cyclic(6)));
        assert!(!Formation::PDec(2).is_member(&s3()));
        assert!(Formation::PiClosed(PrimeSet::single(3)).is_member(&s3()));
        assert!(!Formation::PiClosed(PrimeSet::single(2)).is_member(&s3()));
        assert!(Formation::NilPow(2).is_member(&s3()));
        assert!(!Formation::NilPow(2).is_member(&s4()));
        assert!(Formation::NilPow(3).is_member(&s4()));
        assert!(Formation::NilPow(0).is_member(&Group::trivial()));
        assert!(Formation::PSup(3).is_member(&s4()));
        assert!(!Formation::PSup(2).is_member(&s4()));
        assert!(Formation::AExp(6).is_member(&Group::cyclic(3)));
        assert!(!Formation::AExp(2).is_member(&Group::cyclic(4)));
        assert!(Formation::GPi(PrimeSet::of(&[2, 3])).is_member(&s4()));
        let a5 = group_from_permutations(5, &["(1 2 3 4 5)", "(1 2 3)"]).unwrap();
        assert!(!Formation::Sol.is_member(&a5));
        assert!(!Formation::SPi(PrimeSet::of(&[2, 3, 5])).is_member(&a5));
        assert!(Formation::GPi(PrimeSet::of(&[2, 3, 5])).is_member(&a5));
        assert!(!Formation::PSup(2).is_member(&a5));
        assert!(!Formation::NilPow(5).is_member(&a5));
    }

    #[test]
    fn residual_examples() {
        let g = s4();
        assert_eq!(Formation::Nil.residual(&g).order(), 12);
        assert!(Formation::All.residual(&g).is_trivial());
        assert!(Formation::Sol.residual(&g).is_trivial());
        assert!(Formation::Triv.residual(&g).is_whole());
        assert_eq!(Formation::Sup.residual(&g).order(), 4);
    }

    #[test]
    fn satellite_examples() {
        assert!(Formation::Nil
            .satellite_member(2, &Group::cyclic(2))
            .unwrap());
        assert!(!Formation::Nil.satellite_member(2, &s3()).unwrap());
        assert!(Formation::Sup.satellite_member(3, &v4()).unwrap());
        assert!(!Formation::Sup.satellite_member(3, &a4()).unwrap());
        assert!(Formation::PDec(2)
            .satellite_member(3, &Group::cyclic(3))
            .unwrap());
        assert!(!Formation::PDec(2)
            .satellite_member(2, &Group::cyclic(3))
            .unwrap());
        assert!(Formation::Sup
            .satellite_member(2, &Group::cyclic(2))
            .unwrap());
        assert!(!Formation::Sup.satellite_member(2, &s3()).unwrap());
        assert!(matches!(
            Formation::SylTower.satellite_member(2, &s3()),
            Err(Error::NoSatellite(_))
        ));
        assert!(Formation::AExp(2).satellite_member(2, &s3()).is_err());
    }

    #[test]
    fn flags() {
        assert!(!Formation::AExp(4).saturated());
        assert!(Formation::AExp(4).hereditary());
        assert!(Formation::Sup.saturated() && Formation::Sup.has_satellite());
        assert!(!Formation::SylTower.has_satellite());
    }

    #[test]
    fn names_round_trip() {
        for s in [
            "triv",
            "all",
            "sol",
            "nil",
            "sup",
            "psup:3",
            "pnilp:2",
            "pdec:5",
            "piclosed:2,3",
            "gpi:2,3",
            "spi:2",
            "aexp:6",
            "na",
            "nilpow:2",
            "syltower",
        ] {
            let f: Formation = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        assert!("psup:4".parse::<Formation>().is_err());
        assert!("psup".parse::<Formation>().is_err());
        assert!("gpi:".parse::<Formation>().is_err());
        assert!("bogus".parse::<Formation>().is_err());
    }

    #[test]
    fn lattice_memo_agrees() {
        let g = s4();
        let lat = g.lattice().unwrap();
        for i in 0..lat.len() {
            let direct = Formation::Sup.is_member(&g.materialize(lat.get(i)).group);
            assert_eq!(Formation::Sup.member_in_lattice(&g, i).unwrap(), direct);
            assert_eq!(Formation::Sup.member_in_lattice(&g, i).unwrap(), direct);
        }
    }
}
