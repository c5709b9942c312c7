//! Brute-force enumeration of carrier decompositions over a small group.
//!
//! For each pair of subgroups the group is partitioned into double
//! cosets; a carrier must pick exactly one member per coset, so the
//! search walks coset representatives, propagating the closure
//! constraints (inverses, conjugates, symmetric products) to prune
//! before the expensive uniqueness verification runs.

use serde::{Deserialize, Serialize};

use crate::report::all_hold;

use super::decomp::{verify_bitransversal, Decomposition};
use super::group::FiniteGroup;
use super::laws::{
    build_tables, verify_bigyrotransversal, verify_symmetry, verify_twisted_subgroup, GyrTables,
    LAW_CONTAINS_IDENTITY,
};
use super::FinError;

#[derive(Debug, Clone)]
pub struct SearchOpts {
    pub max_order: usize,
    /// Restrict carriers to those containing the group identity. Lifting
    /// this also waives the identity membership law when candidates are
    /// filtered, so carriers like a lone involution become reachable.
    pub require_identity_in_carrier: bool,
}

impl Default for SearchOpts {
    fn default() -> Self {
        Self {
            max_order: 64,
            require_identity_in_carrier: true,
        }
    }
}

/// One catalog entry in wire form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoundDecomposition {
    #[serde(rename = "H_L")]
    pub hl: Vec<usize>,
    #[serde(rename = "B")]
    pub b: Vec<usize>,
    #[serde(rename = "H_R")]
    pub hr: Vec<usize>,
    pub bigyrocommutative: bool,
    pub degenerate: bool,
}

/// A certified decomposition together with its derived tables.
#[derive(Debug, Clone)]
pub struct SearchHit<'a> {
    pub decomposition: Decomposition<'a>,
    pub tables: GyrTables,
    pub bigyrocommutative: bool,
    pub degenerate: bool,
}

impl SearchHit<'_> {
    pub fn found(&self) -> FoundDecomposition {
        FoundDecomposition {
            hl: self.decomposition.hl().to_vec(),
            b: self.decomposition.b().to_vec(),
            hr: self.decomposition.hr().to_vec(),
            bigyrocommutative: self.bigyrocommutative,
            degenerate: self.degenerate,
        }
    }

    pub fn summary(&self) -> String {
        let g = self.decomposition.group();
        let set = |s: &[usize]| {
            s.iter()
                .map(|&i| g.name(i))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let mut tags = Vec::new();
        if self.degenerate {
            tags.push("degenerate");
        }
        if self.bigyrocommutative {
            tags.push("bi-gyrocommutative");
        }
        let tag = if tags.is_empty() {
            String::new()
        } else {
            format!("  [{}]", tags.join(", "))
        };
        format!(
            "H_L = {{{}}}  B = {{{}}}  H_R = {{{}}}{}",
            set(self.decomposition.hl()),
            set(self.decomposition.b()),
            set(self.decomposition.hr()),
            tag
        )
    }
}

/// Enumerates every subgroup pair and carrier whose triple passes the
/// full verification chain. Output is sorted by (|H_L|, |H_R|, B) with
/// the subgroups themselves as final tie-breakers, so catalogs are
/// deterministic for a fixed group table.
pub fn search_decompositions<'a>(
    g: &'a FiniteGroup,
    opts: &SearchOpts,
) -> Result<Vec<SearchHit<'a>>, FinError> {
    if g.order() > opts.max_order {
        return Err(FinError::OrderBound {
            order: g.order(),
            bound: opts.max_order,
        });
    }
    let subs = g.subgroups();
    let mut hits = Vec::new();
    for hl in &subs {
        for hr in &subs {
            if g.order() % (hl.len() * hr.len()) != 0 {
                continue;
            }
            if !commute_elementwise(g, hl, hr) {
                continue;
            }
            let search = match CarrierSearch::new(g, hl, hr) {
                Some(s) => s,
                None => continue,
            };
            for b in search.carriers(opts.require_identity_in_carrier) {
                if let Some(hit) = certify(g, hl, &b, hr, opts) {
                    hits.push(hit);
                }
            }
        }
    }
    hits.sort_by(|p, q| {
        let key = |h: &SearchHit| {
            let d = &h.decomposition;
            (d.hl().len(), d.hr().len(), d.b().to_vec(), d.hl().to_vec(), d.hr().to_vec())
        };
        key(p).cmp(&key(q))
    });
    Ok(hits)
}

fn commute_elementwise(g: &FiniteGroup, hl: &[usize], hr: &[usize]) -> bool {
    hl.iter()
        .all(|&h| hr.iter().all(|&k| g.mul(h, k) == g.mul(k, h)))
}

fn certify<'a>(
    g: &'a FiniteGroup,
    hl: &[usize],
    b: &[usize],
    hr: &[usize],
    opts: &SearchOpts,
) -> Option<SearchHit<'a>> {
    let d = verify_bitransversal(g, hl, b, hr).ok()?;
    if !all_hold(&verify_bigyrotransversal(&d)) {
        return None;
    }
    let twisted = verify_twisted_subgroup(g, b).ok()?;
    let waived = |law: &str| !opts.require_identity_in_carrier && law == LAW_CONTAINS_IDENTITY;
    if !twisted.iter().all(|c| c.pass || waived(&c.law)) {
        return None;
    }
    let tables = build_tables(&d).ok()?;
    if !all_hold(&verify_symmetry(&d, &tables)) {
        return None;
    }
    Some(SearchHit {
        bigyrocommutative: tables.is_bigyrocommutative(),
        degenerate: tables.is_degenerate(),
        decomposition: d,
        tables,
    })
}

/// Double-coset scaffolding for one subgroup pair. Exists only when
/// every coset has size |H_L| * |H_R|, the freeness condition without
/// which no carrier can factor the group uniquely.
struct CarrierSearch<'g> {
    g: &'g FiniteGroup,
    coset_of: Vec<usize>,
    coset_members: Vec<Vec<usize>>,
    conj_by: Vec<usize>,
}

/// Partial carrier: per-coset representative choices plus the forced
/// member list, scanned up to `scanned` by the propagator.
#[derive(Clone)]
struct Partial {
    chosen: Vec<Option<usize>>,
    members: Vec<usize>,
    scanned: usize,
}

impl<'g> CarrierSearch<'g> {
    fn new(g: &'g FiniteGroup, hl: &[usize], hr: &[usize]) -> Option<Self> {
        let size = hl.len() * hr.len();
        let mut coset_of = vec![usize::MAX; g.order()];
        let mut coset_members = Vec::new();
        for x in 0..g.order() {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let id = coset_members.len();
            let mut members = Vec::new();
            for &h in hl {
                for &k in hr {
                    let y = g.mul(g.mul(h, x), k);
                    if coset_of[y] == usize::MAX {
                        coset_of[y] = id;
                        members.push(y);
                    }
                }
            }
            if members.len() != size {
                return None;
            }
            members.sort_unstable();
            coset_members.push(members);
        }
        let mut conj_by = [hl, hr].concat();
        conj_by.sort_unstable();
        conj_by.dedup();
        Some(Self {
            g,
            coset_of,
            coset_members,
            conj_by,
        })
    }

    fn carriers(&self, require_identity: bool) -> Vec<Vec<usize>> {
        let mut st = Partial {
            chosen: vec![None; self.coset_members.len()],
            members: Vec::new(),
            scanned: 0,
        };
        let mut out = Vec::new();
        if require_identity {
            if !(self.force(&mut st, self.g.identity()) && self.propagate(&mut st)) {
                return out;
            }
        }
        self.extend(st, &mut out);
        out
    }

    fn force(&self, st: &mut Partial, x: usize) -> bool {
        match st.chosen[self.coset_of[x]] {
            Some(y) => y == x,
            None => {
                st.chosen[self.coset_of[x]] = Some(x);
                st.members.push(x);
                true
            }
        }
    }

    /// Closes the forced set under inverses, conjugation by both
    /// subgroups, and symmetric products. Returns false on a clash with
    /// an already chosen representative.
    fn propagate(&self, st: &mut Partial) -> bool {
        while st.scanned < st.members.len() {
            let x = st.members[st.scanned];
            st.scanned += 1;
            if !self.force(st, self.g.inv(x)) {
                return false;
            }
            for &h in &self.conj_by {
                if !self.force(st, self.g.conj(h, x)) {
                    return false;
                }
            }
            let mut i = 0;
            while i < st.members.len() {
                let y = st.members[i];
                i += 1;
                let xyx = self.g.mul(self.g.mul(x, y), x);
                let yxy = self.g.mul(self.g.mul(y, x), y);
                if !self.force(st, xyx) || !self.force(st, yxy) {
                    return false;
                }
            }
        }
        true
    }

    fn extend(&self, st: Partial, out: &mut Vec<Vec<usize>>) {
        match st.chosen.iter().position(Option::is_none) {
            None => {
                let mut b: Vec<usize> = st.chosen.iter().map(|c| c.unwrap()).collect();
                b.sort_unstable();
                out.push(b);
            }
            Some(c) => {
                for &x in &self.coset_members[c] {
                    let mut next = st.clone();
                    if self.force(&mut next, x) && self.propagate(&mut next) {
                        self.extend(next, out);
                    }
                }
            }
        }
    }
}
