use crate::bits::ElementSet;
use crate::error::{Error, Result};
use crate::group::{Group, Provenance};
use crate::subgroup::SubgroupSet;

/// The natural map `G → G/N`.
pub struct QuotientMap {
    pub target: Group,
    /// Element of `G` → coset index in `target`.
    pub proj: Vec<usize>,
    pub kernel: SubgroupSet,
    /// Coset index → least element of the coset.
    pub reps: Vec<usize>,
}

impl QuotientMap {
    /// Image of a subgroup of the source.
    pub fn image(&self, h: &SubgroupSet) -> SubgroupSet {
        SubgroupSet::from_bits_unchecked(ElementSet::from_indices(
            self.target.order(),
            h.elements().map(|x| self.proj[x]),
        ))
    }

    /// Full preimage of a subgroup of the target.
    pub fn preimage(&self, s: &SubgroupSet) -> SubgroupSet {
        SubgroupSet::from_bits_unchecked(ElementSet::from_indices(
            self.proj.len(),
            (0..self.proj.len()).filter(|&x| s.contains(self.proj[x])),
        ))
    }
}

/// `G/N`. Cosets are numbered by their least element, so the identity coset
/// is 0 and the numbering is deterministic.
pub fn quotient_group(g: &Group, normal: &SubgroupSet) -> Result<QuotientMap> {
    if !g.is_normal(normal) {
        return Err(Error::NotNormal);
    }
    Ok(quotient_unchecked(g, normal))
}

pub(crate) fn quotient_unchecked(g: &Group, normal: &SubgroupSet) -> QuotientMap {
    let n = g.order();
    let mut proj = vec![usize::MAX; n];
    let mut reps = Vec::new();
    let kernel: Vec<usize> = normal.elements().collect();
    for x in 0..n {
        if proj[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for &k in &kernel {
            proj[g.mul(x, k)] = c;
        }
    }
    let m = reps.len();
    let mut mul = vec![0u16; m * m];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            mul[i * m + j] = proj[g.mul(a, b)] as u16;
        }
    }
    let gens = g.generators().iter().map(|&x| proj[x]).collect();
    let target = Group::from_parts(
        format!("{}/{}", g.name(), normal.order()),
        m,
        mul,
        gens,
        Provenance::Quotient {
            of: g.name().to_string(),
            kernel_order: normal.order(),
        },
    )
    .expect("quotient by a normal subgroup is a group");
    QuotientMap {
        target,
        proj,
        kernel: normal.clone(),
        reps,
    }
}
