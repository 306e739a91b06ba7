use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorisation as ascending `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn is_prime_power_of(n: u64, p: u64) -> bool {
    let mut n = n;
    while n > 1 && n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// Largest divisor of `n` whose prime divisors all satisfy `keep`.
pub fn part(n: u64, keep: impl Fn(u64) -> bool) -> u64 {
    factorize(n)
        .into_iter()
        .filter(|&(p, _)| keep(p))
        .map(|(p, e)| p.pow(e))
        .product()
}

/// A set of primes. `All` stands for every prime; computations restrict it
/// to the primes dividing the group order at hand.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PrimeSet {
    All,
    Only(BTreeSet<u64>),
}

impl PrimeSet {
    pub fn single(p: u64) -> Self {
        PrimeSet::Only([p].into_iter().collect())
    }

    pub fn of(ps: &[u64]) -> Self {
        PrimeSet::Only(ps.iter().copied().collect())
    }

    pub fn contains(&self, p: u64) -> bool {
        match self {
            PrimeSet::All => true,
            PrimeSet::Only(s) => s.contains(&p),
        }
    }

    /// The primes of this set dividing `n`.
    pub fn restrict(&self, n: u64) -> Vec<u64> {
        prime_divisors(n)
            .into_iter()
            .filter(|&p| self.contains(p))
            .collect()
    }

    pub fn is_subset(&self, other: &PrimeSet) -> bool {
        match (self, other) {
            (_, PrimeSet::All) => true,
            (PrimeSet::All, PrimeSet::Only(_)) => false,
            (PrimeSet::Only(a), PrimeSet::Only(b)) => a.is_subset(b),
        }
    }

    /// Parses `all` or a comma separated list such as `2,3`.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("all") {
            return Some(PrimeSet::All);
        }
        let mut set = BTreeSet::new();
        for part in s.split(',') {
            let p: u64 = part.trim().parse().ok()?;
            if !is_prime(p) {
                return None;
            }
            set.insert(p);
        }
        (!set.is_empty()).then_some(PrimeSet::Only(set))
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeSet::All => write!(f, "all"),
            PrimeSet::Only(s) => {
                let parts: Vec<String> = s.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", parts.join(","))
            }
        }
    }
}
