use crate::{Error, Result, MAX_DIM};

/// Physical subsystems with their code-block and transversal-part structure.
///
/// `dims[j]` is the Hilbert dimension of subsystem `j`; `block_of[j]` and
/// `part_of[j]` assign it to a code block and a transversal part. Valid
/// layouts satisfy the transversality rule: a part holds at most one
/// subsystem from each block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsystemLayout {
    dims: Vec<usize>,
    block_of: Vec<usize>,
    part_of: Vec<usize>,
}

impl SubsystemLayout {
    pub fn new(dims: Vec<usize>, block_of: Vec<usize>, part_of: Vec<usize>) -> Result<Self> {
        let layout = Self {
            dims,
            block_of,
            part_of,
        };
        layout.validate()?;
        Ok(layout)
    }

    /// `n` qubits in a single block with singleton transversal parts.
    pub fn qubits(n: usize) -> Result<Self> {
        Self::new(vec![2; n], vec![0; n], (0..n).collect())
    }

    /// Build from explicit index lists; `blocks` and `parts` must each
    /// partition `0..dims.len()`. Either may be `None` for the defaults
    /// (one block containing everything; singleton parts).
    pub fn from_groupings(
        dims: Vec<usize>,
        blocks: Option<&[Vec<usize>]>,
        parts: Option<&[Vec<usize>]>,
    ) -> Result<Self> {
        let n = dims.len();
        let block_of = match blocks {
            Some(groups) => assignment_from_groups(n, groups, "blocks")?,
            None => vec![0; n],
        };
        let part_of = match parts {
            Some(groups) => assignment_from_groups(n, groups, "parts")?,
            None => (0..n).collect(),
        };
        Self::new(dims, block_of, part_of)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.dims.len();
        if n == 0 {
            return Err(Error::validation("layout must contain subsystems"));
        }
        if self.block_of.len() != n || self.part_of.len() != n {
            return Err(Error::validation(
                "block and part assignments must cover every subsystem",
            ));
        }
        if self.dims.iter().any(|&d| d == 0) {
            return Err(Error::validation("subsystem dimensions must be positive"));
        }
        check_contiguous(&self.block_of, "block")?;
        check_contiguous(&self.part_of, "part")?;

        // transversality: at most one subsystem per (part, block) pair
        let mut seen = std::collections::HashSet::new();
        for j in 0..n {
            if !seen.insert((self.part_of[j], self.block_of[j])) {
                return Err(Error::validation(format!(
                    "part {} holds more than one subsystem of block {}",
                    self.part_of[j], self.block_of[j]
                )));
            }
        }

        let mut total = 1usize;
        for &d in &self.dims {
            total = total.checked_mul(d).ok_or(Error::ResourceLimit {
                requested: usize::MAX,
                max: MAX_DIM,
            })?;
        }
        if total > MAX_DIM {
            return Err(Error::ResourceLimit {
                requested: total,
                max: MAX_DIM,
            });
        }
        Ok(())
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn n_subsystems(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn n_blocks(&self) -> usize {
        self.block_of.iter().max().map_or(0, |m| m + 1)
    }

    pub fn n_parts(&self) -> usize {
        self.part_of.iter().max().map_or(0, |m| m + 1)
    }

    pub fn block_of(&self, subsystem: usize) -> usize {
        self.block_of[subsystem]
    }

    pub fn part_of(&self, subsystem: usize) -> usize {
        self.part_of[subsystem]
    }

    /// Subsystem indices of one part, ascending.
    pub fn part_members(&self, part: usize) -> Vec<usize> {
        (0..self.dims.len())
            .filter(|&j| self.part_of[j] == part)
            .collect()
    }

    /// All qubit-sized subsystems?
    pub fn is_qubit_layout(&self) -> bool {
        self.dims.iter().all(|&d| d == 2)
    }
}

fn check_contiguous(assignment: &[usize], what: &str) -> Result<()> {
    let count = assignment.iter().max().map_or(0, |m| m + 1);
    let mut seen = vec![false; count];
    for &a in assignment {
        seen[a] = true;
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        return Err(Error::validation(format!("{what} {missing} is empty")));
    }
    Ok(())
}

fn assignment_from_groups(n: usize, groups: &[Vec<usize>], what: &str) -> Result<Vec<usize>> {
    let mut assignment = vec![usize::MAX; n];
    for (g, members) in groups.iter().enumerate() {
        for &j in members {
            if j >= n {
                return Err(Error::validation(format!(
                    "{what}: subsystem index {j} out of range (n = {n})"
                )));
            }
            if assignment[j] != usize::MAX {
                return Err(Error::validation(format!(
                    "{what}: subsystem {j} listed more than once"
                )));
            }
            assignment[j] = g;
        }
    }
    if let Some(j) = assignment.iter().position(|&a| a == usize::MAX) {
        return Err(Error::validation(format!(
            "{what}: subsystem {j} is not assigned to any group"
        )));
    }
    Ok(assignment)
}

/// A layout with its transversal parts merged into composite subsystems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergedLayout {
    /// Dimension of each part: the product of its members' dimensions.
    pub part_dims: Vec<usize>,
    /// Members of each part, ascending subsystem indices.
    pub part_members: Vec<Vec<usize>>,
    /// Subsystem ordering that makes each part contiguous: position `k` of
    /// the reordered system holds original subsystem `permutation[k]`.
    pub permutation: Vec<usize>,
}

/// Merge each transversal part of a layout into a single composite
/// subsystem, in part order.
pub fn merge_parts(layout: &SubsystemLayout) -> Result<MergedLayout> {
    layout.validate()?;
    let n_parts = layout.n_parts();
    let mut part_dims = Vec::with_capacity(n_parts);
    let mut part_members = Vec::with_capacity(n_parts);
    let mut permutation = Vec::with_capacity(layout.n_subsystems());
    for p in 0..n_parts {
        let members = layout.part_members(p);
        part_dims.push(members.iter().map(|&j| layout.dims()[j]).product());
        permutation.extend(members.iter().copied());
        part_members.push(members);
    }
    Ok(MergedLayout {
        part_dims,
        part_members,
        permutation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singleton_parts_merge_to_original_dims() {
        let layout = SubsystemLayout::qubits(4).unwrap();
        let merged = merge_parts(&layout).unwrap();
        assert_eq!(merged.part_dims, vec![2, 2, 2, 2]);
        assert_eq!(merged.permutation, vec![0, 1, 2, 3]);
    }

    #[test]
    fn two_block_pairing_merges_and_permutes() {
        // 4 qubits, blocks {0,1} and {2,3}, parts {0,2} and {1,3}
        let layout = SubsystemLayout::from_groupings(
            vec![2, 2, 2, 2],
            Some(&[vec![0, 1], vec![2, 3]]),
            Some(&[vec![0, 2], vec![1, 3]]),
        )
        .unwrap();
        let merged = merge_parts(&layout).unwrap();
        assert_eq!(merged.part_dims, vec![4, 4]);
        assert_eq!(merged.permutation, vec![0, 2, 1, 3]);
    }

    #[test]
    fn part_with_two_subsystems_of_one_block_is_rejected() {
        let err = SubsystemLayout::from_groupings(
            vec![2, 2],
            None, // single block containing everything
            Some(&[vec![0, 1]]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn dimension_cap_is_enforced() {
        let err = SubsystemLayout::qubits(13).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { .. }));
    }

    #[test]
    fn empty_block_is_rejected() {
        // block indices {0, 2}: block 1 is empty
        let err = SubsystemLayout::new(vec![2, 2], vec![0, 2], vec![0, 1]).unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn groupings_must_partition() {
        assert!(SubsystemLayout::from_groupings(
            vec![2, 2, 2],
            Some(&[vec![0, 1]]), // subsystem 2 unassigned
            None,
        )
        .is_err());
        assert!(SubsystemLayout::from_groupings(
            vec![2, 2],
            Some(&[vec![0, 1], vec![1]]), // duplicate
            None,
        )
        .is_err());
    }
}
