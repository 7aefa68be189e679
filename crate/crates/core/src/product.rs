use crate::description::BuildOptions;
use crate::error::{GroupError, Result};
use crate::group::Group;
use crate::subgroup::Subgroup;

/// `G x H` with its two factors embedded as subgroups.
///
/// The pair `(g, h)` has index `g * |H| + h`, so the identity stays at 0.
#[derive(Debug)]
pub struct DirectProduct {
    pub group: Group,
    pub left: Subgroup,
    pub right: Subgroup,
    pub left_embedding: Vec<usize>,
    pub right_embedding: Vec<usize>,
}

impl Group {
    pub fn direct_product(&self, other: &Group, opts: &BuildOptions) -> Result<DirectProduct> {
        let (m, k) = (self.order(), other.order());
        let n = m.checked_mul(k).filter(|&n| n <= opts.max_order);
        let n = n.ok_or(GroupError::OrderCapExceeded { cap: opts.max_order })?;
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            let (ga, ha) = (a / k, a % k);
            for b in 0..n {
                let (gb, hb) = (b / k, b % k);
                mul[a * n + b] = (self.mul(ga, gb) * k + other.mul(ha, hb)) as u32;
            }
        }
        let labels = (0..n)
            .map(|a| format!("[{}, {}]", self.label(a / k), other.label(a % k)))
            .collect();
        let group = Group::from_validated_table(n, mul).with_labels(labels);
        let left_embedding: Vec<usize> = (0..m).map(|g| g * k).collect();
        let right_embedding: Vec<usize> = (0..k).collect();
        let left = group.closed_set_to_subgroup(group.set_of(left_embedding.iter().copied()));
        let right = group.closed_set_to_subgroup(group.set_of(right_embedding.iter().copied()));
        Ok(DirectProduct {
            group,
            left,
            right,
            left_embedding,
            right_embedding,
        })
    }
}
