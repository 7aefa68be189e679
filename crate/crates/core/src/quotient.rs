use std::sync::Arc;

use crate::element_set::ElementSet;
use crate::error::{GroupError, Result};
use crate::group::Group;
use crate::subgroup::Subgroup;

/// `G/N` together with the projection `G -> G/N`.
///
/// Cosets are numbered by their smallest member, ascending, so the identity
/// coset is 0.
#[derive(Debug)]
pub struct Quotient {
    pub base: String,
    pub kernel: Subgroup,
    pub group: Arc<Group>,
    pub projection: Vec<usize>,
    pub representatives: Vec<usize>,
}

impl Quotient {
    pub fn project(&self, a: usize) -> usize {
        self.projection[a]
    }

    /// `{ yN : y in set }` as an element set of the quotient.
    pub fn project_set(&self, set: &ElementSet) -> ElementSet {
        self.group.set_of(set.iter().map(|a| self.projection[a]))
    }

    /// Full preimage of a set of cosets.
    pub fn preimage(&self, base: &Group, set: &ElementSet) -> ElementSet {
        base.set_of((0..base.order()).filter(|&a| set.contains(self.projection[a])))
    }
}

impl Group {
    pub fn quotient(&self, n: &Subgroup) -> Result<Quotient> {
        if !self.owns(n.set()) || !self.is_normal(n) {
            return Err(GroupError::NotNormal);
        }
        let order = self.order();
        let mut projection = vec![usize::MAX; order];
        let mut reps = Vec::new();
        let kernel = n.elements();
        for a in 0..order {
            if projection[a] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(a);
            for &k in &kernel {
                projection[self.mul(a, k)] = c;
            }
        }
        let m = reps.len();
        let mut mul = vec![0u32; m * m];
        for (i, &ri) in reps.iter().enumerate() {
            for (j, &rj) in reps.iter().enumerate() {
                mul[i * m + j] = projection[self.mul(ri, rj)] as u32;
            }
        }
        for a in 0..order {
            for b in 0..order {
                let lhs = projection[self.mul(a, b)];
                let rhs = mul[projection[a] * m + projection[b]] as usize;
                if lhs != rhs {
                    return Err(GroupError::NotNormal);
                }
            }
        }
        let labels = reps.iter().map(|&r| format!("{}N", self.label(r))).collect();
        let group = Arc::new(Group::from_validated_table(m, mul).with_labels(labels));
        Ok(Quotient {
            base: self.fingerprint().to_string(),
            kernel: n.clone(),
            group,
            projection,
            representatives: reps,
        })
    }
}
