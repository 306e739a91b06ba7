//! The shipped catalog of small groups.

use std::collections::HashMap;
use std::ops::Deref;
use std::path::Path;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::module::sum_zero_matrices;
use crate::perm::Perm;
use crate::spec::{GroupKind, GroupSpec};

/// Name of the order-324 group `F_3^3 ⋊ A4` built from the sum-zero
/// submodule of the natural permutation module of `A4`.
pub const MODULE_EXAMPLE: &str = "C3^3:A4";

/// Generators of `A4` shared by the catalog entry and the module example.
pub const A4_GENERATORS: [&str; 2] = ["(1 2)(3 4)", "(1 2 3)"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Tags {
    pub order: usize,
    pub soluble: bool,
    pub nilpotent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub spec: GroupSpec,
    pub tags: Tags,
}

pub struct Catalog {
    entries: Vec<CatalogEntry>,
    groups: Vec<Group>,
    by_name: HashMap<String, usize>,
    /// Entries before this index are base entries; the rest are products.
    base_len: usize,
}

fn perm(name: &str, degree: usize, gens: &[&str]) -> GroupSpec {
    GroupSpec {
        name: name.to_string(),
        kind: GroupKind::Permutation {
            degree,
            generators: gens.iter().map(|s| s.to_string()).collect(),
        },
    }
}

fn direct(name: &str, factors: &[&str]) -> GroupSpec {
    GroupSpec {
        name: name.to_string(),
        kind: GroupKind::Direct {
            factors: factors.iter().map(|s| s.to_string()).collect(),
        },
    }
}

fn cycle(n: usize) -> String {
    let items: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    format!("({})", items.join(" "))
}

/// Matrices of the two `A4` generators on the sum-zero module over `F_3`.
pub fn module_example_matrices() -> Vec<Vec<Vec<u64>>> {
    let perms: Vec<Perm> = A4_GENERATORS
        .iter()
        .map(|s| Perm::parse_cycles(4, s).expect("fixed generators"))
        .collect();
    sum_zero_matrices(&perms, 3)
        .into_iter()
        .map(|m| m.entries.chunks(m.dim).map(|r| r.to_vec()).collect())
        .collect()
}

/// `(spec, soluble, nilpotent)` for every base entry, in catalog order.
fn base_entries() -> Vec<(GroupSpec, bool, bool)> {
    let mut out: Vec<(GroupSpec, bool, bool)> = Vec::new();
    out.push((
        GroupSpec {
            name: "C1".into(),
            kind: GroupKind::Table {
                table: vec![vec![0]],
            },
        },
        true,
        true,
    ));
    for n in 2..=24 {
        out.push((perm(&format!("C{n}"), n, &[&cycle(n)]), true, true));
    }
    for (name, factors) in [
        ("C2^2", vec!["C2", "C2"]),
        ("C2^3", vec!["C2", "C2", "C2"]),
        ("C2^4", vec!["C2", "C2", "C2", "C2"]),
        ("C3^2", vec!["C3", "C3"]),
        ("C3^3", vec!["C3", "C3", "C3"]),
        ("C5^2", vec!["C5", "C5"]),
    ] {
        out.push((direct(name, &factors), true, true));
    }
    let named: Vec<(GroupSpec, bool, bool)> = vec![
        (perm("D6", 3, &["(1 2 3)", "(2 3)"]), true, false),
        (perm("D8", 4, &["(1 2 3 4)", "(2 4)"]), true, true),
        (perm("D10", 5, &["(1 2 3 4 5)", "(2 5)(3 4)"]), true, false),
        (
            perm("D12", 6, &["(1 2 3 4 5 6)", "(2 6)(3 5)"]),
            true,
            false,
        ),
        (perm("S3", 3, &["(1 2 3)", "(1 2)"]), true, false),
        (
            perm("Q8", 8, &["(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)"]),
            true,
            true,
        ),
        (
            perm(
                "Q16",
                16,
                &[
                    "(1 2 3 4 5 6 7 8)(9 10 11 12 13 14 15 16)",
                    "(1 9 5 13)(2 16 6 12)(3 15 7 11)(4 14 8 10)",
                ],
            ),
            true,
            true,
        ),
        (
            perm("SL(2,3)", 8, &["(1 4 7)(2 8 5)", "(1 6 2 3)(4 7 8 5)"]),
            true,
            false,
        ),
        (perm("A4", 4, &A4_GENERATORS), true, false),
        (perm("S4", 4, &["(1 2 3 4)", "(1 2)"]), true, false),
        (perm("A5", 5, &["(1 2 3 4 5)", "(1 2 3)"]), false, false),
        (perm("S5", 5, &["(1 2 3 4 5)", "(1 2)"]), false, false),
        (
            perm("C7:C3", 7, &["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)"]),
            true,
            false,
        ),
        (perm("C5:C4", 5, &["(1 2 3 4 5)", "(2 3 5 4)"]), true, false),
        (
            perm("C3:C8", 11, &["(1 2 3)", "(2 3)(4 5 6 7 8 9 10 11)"]),
            true,
            false,
        ),
        (
            // C2^2 has elements 0, (0,1), (1,0), (1,1); the generator of C3
            // permutes the three involutions cyclically.
            GroupSpec {
                name: "V4:C3".into(),
                kind: GroupKind::Semidirect {
                    normal: "C2^2".into(),
                    complement: "C3".into(),
                    action: vec![vec![0, 2, 3, 1]],
                },
            },
            true,
            false,
        ),
        (direct("D8xC3", &["D8", "C3"]), true, true),
        (direct("Q8xC3", &["Q8", "C3"]), true, true),
        (direct("S3xS3", &["S3", "S3"]), true, false),
        (direct("S3xC4", &["S3", "C4"]), true, false),
        (
            GroupSpec {
                name: MODULE_EXAMPLE.into(),
                kind: GroupKind::MatrixModule {
                    p: 3,
                    dim: 3,
                    acting: "A4".into(),
                    matrices: module_example_matrices(),
                },
            },
            true,
            false,
        ),
    ];
    out.extend(named);
    out
}

/// Products of base entries that are always shipped.
fn curated_products() -> Vec<(GroupSpec, bool, bool)> {
    let mut out = Vec::new();
    for (a, b, soluble, nilpotent) in [
        ("S3", "C3", true, false),
        ("S3", "C2", true, false),
        ("A4", "C2", true, false),
        ("A4", "C3", true, false),
        ("S4", "C2", true, false),
        ("S4", "C3", true, false),
        ("SL(2,3)", "C2", true, false),
        ("SL(2,3)", "C3", true, false),
        ("D8", "C2", true, true),
        ("Q8", "C2", true, true),
        ("S3", "D8", true, false),
        ("Q8", "S3", true, false),
        ("A4", "S3", true, false),
        ("D10", "C3", true, false),
        ("C7:C3", "C2", true, false),
        ("C5:C4", "C2", true, false),
        ("C3:C8", "C2", true, false),
        ("D12", "C2", true, false),
        ("A5", "C2", false, false),
    ] {
        out.push((direct(&format!("{a}x{b}"), &[a, b]), soluble, nilpotent));
    }
    out
}

/// Orders below this bound qualify for the extended product list.
pub const PRODUCT_ORDER_BOUND: usize = 128;

/// Base entries (not themselves products) of order at most `bound / 2`,
/// in catalog order.
fn product_bases(cat: &Catalog) -> Vec<(String, usize, bool, bool)> {
    cat.entries[..cat.base_len]
        .iter()
        .filter(|e| e.tags.order > 1 && e.tags.order < PRODUCT_ORDER_BOUND / 2)
        .map(|e| {
            (
                e.name.clone(),
                e.tags.order,
                e.tags.soluble,
                e.tags.nilpotent,
            )
        })
        .collect()
}

impl Catalog {
    /// Builds every entry and checks its declared tags against the group.
    pub fn load() -> Result<Catalog> {
        let mut cat = Catalog {
            entries: Vec::new(),
            groups: Vec::new(),
            by_name: HashMap::new(),
            base_len: 0,
        };
        cat.extend(base_entries())?;
        cat.base_len = cat.len();
        cat.extend(curated_products())?;
        Ok(cat)
    }

    /// The shipped catalog plus `AxB` for every pair of base entries
    /// `A`, `B` (in catalog order, `A` first) with `|A||B| < 128`.
    pub fn load_extended() -> Result<Catalog> {
        let mut cat = Self::load()?;
        let bases = product_bases(&cat);
        let mut extra = Vec::new();
        for (i, (a, oa, sa, na)) in bases.iter().enumerate() {
            for (b, ob, sb, nb) in &bases[i..] {
                let name = format!("{a}x{b}");
                if oa * ob < PRODUCT_ORDER_BOUND
                    && cat.get(&name).is_none()
                    && cat.get(&format!("{b}x{a}")).is_none()
                {
                    extra.push((direct(&name, &[a, b]), *sa && *sb, *na && *nb));
                }
            }
        }
        cat.extend(extra)?;
        Ok(cat)
    }

    fn extend(&mut self, specs: Vec<(GroupSpec, bool, bool)>) -> Result<()> {
        let cat = self;
        for (spec, soluble, nilpotent) in specs {
            let g = spec.build(&|n| cat.get(n).ok_or_else(|| Error::UnknownGroup(n.into())))?;
            let tags = Tags {
                order: g.order(),
                soluble,
                nilpotent,
            };
            if g.is_soluble() != soluble || g.is_nilpotent() != nilpotent {
                return Err(Error::ConstructionFailed(format!(
                    "{}: declared tags do not match the group",
                    spec.name
                )));
            }
            cat.by_name.insert(spec.name.clone(), cat.groups.len());
            cat.entries.push(CatalogEntry {
                name: spec.name.clone(),
                spec,
                tags,
            });
            cat.groups.push(g);
        }
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Group> {
        self.by_name.get(name).map(|&i| &self.groups[i])
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn groups(&self) -> &[Group] {
        &self.groups
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CatalogEntry, &Group)> {
        self.entries.iter().zip(&self.groups)
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }
}

/// The shared catalog, built on first use.
pub fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| Catalog::load().expect("shipped catalog builds"))
}

/// The extended catalog, built on first use.
pub fn extended_catalog() -> &'static Catalog {
    static EXTENDED: OnceLock<Catalog> = OnceLock::new();
    EXTENDED.get_or_init(|| Catalog::load_extended().expect("extended catalog builds"))
}

/// A group either borrowed from the catalog or loaded from a file.
pub enum Loaded {
    Catalog(&'static Group),
    Owned(Box<Group>),
}

impl Deref for Loaded {
    type Target = Group;

    fn deref(&self) -> &Group {
        match self {
            Loaded::Catalog(g) => g,
            Loaded::Owned(g) => g,
        }
    }
}

/// Looks `what` up as a catalog name, else reads it as a JSON spec file
/// whose product references resolve against the catalog.
pub fn load_group(what: &str) -> Result<Loaded> {
    let cat = catalog();
    if let Some(g) = cat.get(what) {
        return Ok(Loaded::Catalog(g));
    }
    if what.contains('x') && !Path::new(what).exists() {
        if let Some(g) = extended_catalog().get(what) {
            return Ok(Loaded::Catalog(g));
        }
    }
    let path = Path::new(what);
    if !path.exists() {
        return Err(Error::UnknownGroup(what.to_string()));
    }
    let spec = GroupSpec::from_file(path)?;
    let g = spec.build(&|n| cat.get(n).ok_or_else(|| Error::UnknownGroup(n.into())))?;
    Ok(Loaded::Owned(Box::new(g)))
}
