//! Exhaustive decomposition machinery for finite groups: three-factor
//! transversal splittings, the gyration tables they induce, the full
//! battery of structural laws, and a search that enumerates every valid
//! splitting of a small group.

mod decomp;
mod group;
mod laws;
mod search;

pub use decomp::{verify_bitransversal, Decomposition};
pub use group::{load_group, FiniteGroup, GroupFile};
pub use laws::{
    build_bigyrogroup, build_tables, check_all_theorems, verify_bigyrotransversal,
    verify_symmetry, verify_twisted_subgroup, BiGyroTables, GyrTables, TheoremReport,
};
pub use search::{search_decompositions, FoundDecomposition, SearchHit, SearchOpts};

use thiserror::Error;

/// Failures from loading, validating, decomposing, or searching a finite
/// group. Verification outcomes that are not input errors are reported
/// through check lists instead.
#[derive(Debug, Error)]
pub enum FinError {
    #[error("{0}")]
    Input(String),
    /// Cell (row, col) repeats a value already seen in its row or column.
    #[error("not a Latin square: cell ({row}, {col}) repeats value {value}")]
    NotLatin { row: usize, col: usize, value: usize },
    #[error("associativity fails at ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("no two-sided identity element")]
    MissingIdentity,
    #[error("{side} is not a subgroup: {reason}")]
    NotSubgroup { side: &'static str, reason: String },
    #[error("element {element} has {count} factorizations, expected exactly one")]
    Factorization { element: usize, count: usize },
    #[error("{0}")]
    Structural(String),
    #[error("group order {order} exceeds the search bound {bound}")]
    OrderBound { order: usize, bound: usize },
}

/// Sorts an index set, rejecting empties, duplicates, and out-of-range
/// entries. `label` names the set in error messages.
pub(crate) fn normalize_index_set(
    order: usize,
    label: &str,
    set: &[usize],
) -> Result<Vec<usize>, FinError> {
    if set.is_empty() {
        return Err(FinError::Input(format!("{label} is empty")));
    }
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    for pair in sorted.windows(2) {
        if pair[0] == pair[1] {
            return Err(FinError::Input(format!(
                "{label} repeats index {}",
                pair[0]
            )));
        }
    }
    if let Some(&last) = sorted.last() {
        if last >= order {
            return Err(FinError::Input(format!(
                "{label} contains index {last}, but the group has order {order}"
            )));
        }
    }
    Ok(sorted)
}
