//! Permutations of `{1..degree}` stored 0-based as image tables.
//!
//! Products compose right to left: `(a * b)(i) = a(b(i))`.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree).collect())
    }

    /// Builds from a 0-based image table, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection"
                )));
            }
        }
        Ok(Perm(images))
    }

    /// Parses cycle notation such as `(1 2 3)(4 5)`; `()` or the empty string
    /// is the identity. Points are 1-based and must not exceed `degree`.
    pub fn parse_cycles(degree: usize, s: &str) -> Result<Self> {
        let bad = |why: &str| Error::InvalidPermutation(format!("`{s}`: {why}"));
        let mut images: Vec<usize> = (0..degree).collect();
        let mut seen = vec![false; degree];
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(|| bad("expected `(`"))?;
            let close = body.find(')').ok_or_else(|| bad("unclosed cycle"))?;
            let points = body[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| match t.parse::<usize>() {
                    Ok(p) if (1..=degree).contains(&p) => Ok(p - 1),
                    _ => Err(bad(&format!("point `{t}` outside 1..={degree}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            for &p in &points {
                if std::mem::replace(&mut seen[p], true) {
                    return Err(bad("point repeated"));
                }
            }
            for (i, &p) in points.iter().enumerate() {
                images[p] = points[(i + 1) % points.len()];
            }
            rest = body[close + 1..].trim_start();
        }
        Ok(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    pub fn to_cycles(&self) -> String {
        let mut seen = vec![false; self.0.len()];
        let mut out = String::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cycle = vec![start + 1];
            seen[start] = true;
            let mut j = self.0[start];
            while j != start {
                seen[j] = true;
                cycle.push(j + 1);
                j = self.0[j];
            }
            let parts: Vec<String> = cycle.iter().map(|p| p.to_string()).collect();
            out.push_str(&format!("({})", parts.join(" ")));
        }
        if out.is_empty() {
            "()".into()
        } else {
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let p = Perm::parse_cycles(5, "(1 2 3)(4 5)").unwrap();
        assert_eq!(p.images(), &[1, 2, 0, 4, 3]);
        assert_eq!(p.to_cycles(), "(1 2 3)(4 5)");
        assert_eq!(Perm::parse_cycles(3, "()").unwrap(), Perm::identity(3));
    }

    #[test]
    fn composition_is_right_to_left() {
        let a = Perm::parse_cycles(3, "(1 2)").unwrap();
        let b = Perm::parse_cycles(3, "(2 3)").unwrap();
        // b first: 1 -> 1 -> 2
        assert_eq!(a.compose(&b).apply(0), 1);
        assert_eq!(a.compose(&a.inverse()), Perm::identity(3));
    }

    #[test]
    fn malformed_input() {
        assert!(Perm::parse_cycles(3, "(1 4)").is_err());
        assert!(Perm::parse_cycles(3, "(1 2 1)").is_err());
        assert!(Perm::parse_cycles(3, "(1 2").is_err());
        assert!(Perm::parse_cycles(3, "1 2").is_err());
        assert!(Perm::from_images(vec![0, 0]).is_err());
    }
}
