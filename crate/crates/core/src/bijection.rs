//! The classical bijection between Dyck paths and 312-avoiding permutations.
//!
//! Up steps are numbered left to right and each down step takes the number of
//! the up step it closes; reading the down steps gives the permutation. The
//! inverse cuts the permutation into blocks headed by its left-to-right
//! maxima.

use thiserror::Error;

use crate::dyck::{DyckPath, Step};
use crate::perm::{LrMaximum, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error("permutation {0} contains the pattern 312")]
    Not312Avoiding(Permutation),
}

pub fn path_to_perm(path: &DyckPath) -> Permutation {
    let mut open: Vec<usize> = Vec::new();
    let mut next_label = 1;
    let mut entries = Vec::with_capacity(path.semilength());
    for step in path.steps() {
        match step {
            Step::Up => {
                open.push(next_label);
                next_label += 1;
            }
            Step::Down => entries.push(open.pop().expect("Dyck path is balanced")),
        }
    }
    Permutation::from_entries_unchecked(entries)
}

pub fn perm_to_path(perm: &Permutation) -> Result<DyckPath, BijectionError> {
    if !perm.avoids_312() {
        return Err(BijectionError::Not312Avoiding(perm.clone()));
    }
    let maxima = perm.left_to_right_maxima();
    let mut steps = Vec::with_capacity(2 * perm.len());
    let mut prev_value = 0;
    for (j, m) in maxima.iter().enumerate() {
        let block_end = maxima.get(j + 1).map_or(perm.len() + 1, |next| next.index);
        steps.extend(std::iter::repeat(Step::Up).take(m.value - prev_value));
        steps.extend(std::iter::repeat(Step::Down).take(block_end - m.index));
        prev_value = m.value;
    }
    Ok(DyckPath::from_steps_unchecked(steps))
}

/// Each left-to-right maximum paired with its excess `value - index`, which
/// is the height reached by the first down step of the matching run.
pub fn lrm_heights(perm: &Permutation) -> Result<Vec<(LrMaximum, usize)>, BijectionError> {
    if !perm.avoids_312() {
        return Err(BijectionError::Not312Avoiding(perm.clone()));
    }
    Ok(perm
        .left_to_right_maxima()
        .into_iter()
        .map(|m| (m, m.excess()))
        .collect())
}
