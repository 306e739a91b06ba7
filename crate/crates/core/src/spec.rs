//! JSON group descriptions.
//!
//! ```json
//! {"name": "S3", "kind": "permutation", "degree": 3, "generators": ["(1 2 3)", "(1 2)"]}
//! {"name": "S3xC4", "kind": "direct", "factors": ["S3", "C4"]}
//! ```
//!
//! Product kinds refer to other groups by name; names are resolved by the
//! caller (normally against the catalog).

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Group, DEFAULT_ORDER_CAP};
use crate::module::{matrix_module_semidirect, Matrix};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub name: String,
    #[serde(flatten)]
    pub kind: GroupKind,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupKind {
    Permutation {
        degree: usize,
        generators: Vec<String>,
    },
    /// Rows of the multiplication table; index 0 must be the identity.
    Table { table: Vec<Vec<usize>> },
    /// Direct product of two or more named groups, left to right.
    Direct { factors: Vec<String> },
    /// `normal ⋊ complement`; `action[k]` lists the images of the elements
    /// of `normal` under the `k`-th designated generator of `complement`.
    Semidirect {
        normal: String,
        complement: String,
        action: Vec<Vec<usize>>,
    },
    /// `F_p^dim ⋊ acting`, one matrix (list of rows) per designated
    /// generator of `acting`.
    MatrixModule {
        p: u64,
        dim: usize,
        acting: String,
        matrices: Vec<Vec<Vec<u64>>>,
    },
}

impl GroupSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Names of the groups this spec refers to.
    pub fn dependencies(&self) -> Vec<&str> {
        match &self.kind {
            GroupKind::Permutation { .. } | GroupKind::Table { .. } => Vec::new(),
            GroupKind::Direct { factors } => factors.iter().map(String::as_str).collect(),
            GroupKind::Semidirect {
                normal, complement, ..
            } => vec![normal, complement],
            GroupKind::MatrixModule { acting, .. } => vec![acting],
        }
    }

    /// Builds the group, looking up referenced names with `resolve`.
    pub fn build<'g>(&self, resolve: &dyn Fn(&str) -> Result<&'g Group>) -> Result<Group> {
        let cap = DEFAULT_ORDER_CAP;
        let g = match &self.kind {
            GroupKind::Permutation { degree, generators } => {
                let gens: Vec<&str> = generators.iter().map(String::as_str).collect();
                Group::from_cycle_strings(&self.name, *degree, &gens, cap)?
            }
            GroupKind::Table { table } => Group::from_table(&self.name, table)?,
            GroupKind::Direct { factors } => {
                let (first, rest) = factors
                    .split_first()
                    .ok_or_else(|| Error::BadSpec("direct product needs factors".into()))?;
                let mut acc: Option<Group> = None;
                for name in rest {
                    let left = acc.as_ref().map_or_else(|| resolve(first), Ok)?;
                    acc = Some(Group::direct_product(left, resolve(name)?, cap)?);
                }
                match acc {
                    Some(g) => g,
                    None => Group::direct_product(resolve(first)?, &Group::trivial(), cap)?,
                }
            }
            GroupKind::Semidirect {
                normal,
                complement,
                action,
            } => {
                let (n, h) = (resolve(normal)?, resolve(complement)?);
                let table = Group::extend_action(n, h, action)?;
                Group::semidirect_product(n, h, &table, cap)?
            }
            GroupKind::MatrixModule {
                p,
                dim,
                acting,
                matrices,
            } => {
                let mats = matrices
                    .iter()
                    .map(|rows| Matrix::from_rows(rows, *p))
                    .collect::<Result<Vec<_>>>()?;
                matrix_module_semidirect(*p, *dim, &mats, resolve(acting)?, cap)?.0
            }
        };
        Ok(g.with_name(self.name.clone()))
    }
}
