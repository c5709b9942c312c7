//! Unique three-factor splittings of a group through two subgroups and a
//! transversal subset.

use super::group::FiniteGroup;
use super::{normalize_index_set, FinError};

/// A verified splitting: every group element is h*x*k for exactly one
/// (h, x, k) in hl x b x hr. Index sets are kept sorted.
#[derive(Debug, Clone)]
pub struct Decomposition<'a> {
    group: &'a FiniteGroup,
    hl: Vec<usize>,
    b: Vec<usize>,
    hr: Vec<usize>,
    fact: Vec<(usize, usize, usize)>,
}

impl<'a> Decomposition<'a> {
    pub fn group(&self) -> &'a FiniteGroup {
        self.group
    }

    pub fn hl(&self) -> &[usize] {
        &self.hl
    }

    pub fn b(&self) -> &[usize] {
        &self.b
    }

    pub fn hr(&self) -> &[usize] {
        &self.hr
    }

    /// The unique (h, x, k) with g = h*x*k, as group element indices.
    pub fn fact(&self, g: usize) -> (usize, usize, usize) {
        self.fact[g]
    }
}

/// Proves that (hl, b, hr) splits the group uniquely, returning the
/// factorization map. Subgroup defects are input errors; a miscounted
/// factorization is reported with the smallest offending element.
pub fn verify_bitransversal<'a>(
    group: &'a FiniteGroup,
    hl: &[usize],
    b: &[usize],
    hr: &[usize],
) -> Result<Decomposition<'a>, FinError> {
    let order = group.order();
    let hl = normalize_index_set(order, "H_L", hl)?;
    let b = normalize_index_set(order, "B", b)?;
    let hr = normalize_index_set(order, "H_R", hr)?;
    for (side, set) in [("H_L", &hl), ("H_R", &hr)] {
        if let Some(reason) = group.subgroup_violation(set) {
            return Err(FinError::NotSubgroup { side, reason });
        }
    }

    let mut counts = vec![0usize; order];
    let mut first = vec![None; order];
    for &h in &hl {
        for &x in &b {
            let hx = group.mul(h, x);
            for &k in &hr {
                let g = group.mul(hx, k);
                counts[g] += 1;
                if first[g].is_none() {
                    first[g] = Some((h, x, k));
                }
            }
        }
    }
    if let Some(g) = (0..order).find(|&g| counts[g] != 1) {
        return Err(FinError::Factorization {
            element: g,
            count: counts[g],
        });
    }

    let fact = first.into_iter().map(Option::unwrap).collect();
    Ok(Decomposition {
        group,
        hl,
        b,
        hr,
        fact,
    })
}
