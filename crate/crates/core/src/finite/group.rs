//! Finite groups as dense Cayley tables, plus the stock constructors the
//! test corpus and fixtures are built from.

use std::collections::{BTreeSet, HashMap};

use serde::Deserialize;

use super::FinError;

/// Orders up to this bound get the cubic associativity sweep on load.
/// The decomposition search never accepts anything larger anyway.
const ASSOCIATIVITY_SWEEP_BOUND: usize = 128;

/// A finite group on elements `0..order`, given by its Cayley table.
/// `table[a][b]` is the product a*b. Construction proves the table is a
/// Latin square with a two-sided identity and, for orders up to 128,
/// checks associativity on every triple.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<Vec<usize>>,
    names: Option<Vec<String>>,
    identity: usize,
    inv: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_table(
        table: Vec<Vec<usize>>,
        names: Option<Vec<String>>,
    ) -> Result<Self, FinError> {
        let order = table.len();
        if order == 0 {
            return Err(FinError::Input("the table is empty".into()));
        }
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != order {
                return Err(FinError::Input(format!(
                    "row {row} has {} entries, expected {order}",
                    entries.len()
                )));
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= order {
                    return Err(FinError::Input(format!(
                        "cell ({row}, {col}) holds {value}, outside 0..{order}"
                    )));
                }
            }
        }
        if let Some(names) = &names {
            if names.len() != order {
                return Err(FinError::Input(format!(
                    "{} names for {order} elements",
                    names.len()
                )));
            }
        }

        for row in 0..order {
            let mut seen_at = vec![None; order];
            for col in 0..order {
                let value = table[row][col];
                if seen_at[value].is_some() {
                    return Err(FinError::NotLatin { row, col, value });
                }
                seen_at[value] = Some(col);
            }
        }
        for col in 0..order {
            let mut seen_at = vec![None; order];
            for row in 0..order {
                let value = table[row][col];
                if seen_at[value].is_some() {
                    return Err(FinError::NotLatin { row, col, value });
                }
                seen_at[value] = Some(row);
            }
        }

        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(FinError::MissingIdentity)?;

        if order <= ASSOCIATIVITY_SWEEP_BOUND {
            for a in 0..order {
                for b in 0..order {
                    let ab = table[a][b];
                    for c in 0..order {
                        if table[ab][c] != table[a][table[b][c]] {
                            return Err(FinError::NotAssociative { a, b, c });
                        }
                    }
                }
            }
        }

        // Latin row + identity guarantee a unique two-sided inverse.
        let inv = (0..order)
            .map(|a| (0..order).find(|&b| table[a][b] == identity).unwrap())
            .collect();

        Ok(Self {
            order,
            table,
            names,
            identity,
            inv,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// h * x * h^(-1).
    #[inline]
    pub fn conj(&self, h: usize, x: usize) -> usize {
        self.mul(self.mul(h, x), self.inv(h))
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn name(&self, i: usize) -> String {
        match &self.names {
            Some(names) => names[i].clone(),
            None => format!("g{i}"),
        }
    }

    /// Integers under addition modulo n.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "order must be positive");
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Self::from_table(table, None).expect("cyclic table is a group")
    }

    /// Symmetries of a regular n-gon, order 2n. Index i < n is the
    /// rotation by i steps; index n + i is the rotation by i steps
    /// followed by the base reflection.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1, "need at least one rotation");
        let order = 2 * n;
        let mut table = vec![vec![0; order]; order];
        for i in 0..n {
            for j in 0..n {
                // (r^i s^e)(r^j s^f) = r^(i +/- j) s^(e xor f)
                table[i][j] = (i + j) % n;
                table[i][n + j] = n + (i + j) % n;
                table[n + i][j] = n + (i + n - j) % n;
                table[n + i][n + j] = (i + n - j) % n;
            }
        }
        Self::from_table(table, None).expect("dihedral table is a group")
    }

    /// Generalized quaternion group of the given order, a multiple of 4
    /// that is at least 8. With m = order/4: index i < 2m is a^i, index
    /// 2m + i is a^i b, where a^(2m) = 1, b^2 = a^m, and b a b^(-1) =
    /// a^(-1).
    pub fn quaternion(order: usize) -> Self {
        assert!(
            order >= 8 && order % 4 == 0,
            "order must be a multiple of 4, at least 8"
        );
        let m = order / 4;
        let tm = 2 * m;
        let mut table = vec![vec![0; order]; order];
        for i in 0..tm {
            for j in 0..tm {
                table[i][j] = (i + j) % tm;
                table[i][tm + j] = tm + (i + j) % tm;
                table[tm + i][j] = tm + (i + tm - j) % tm;
                table[tm + i][tm + j] = (i + tm - j + m) % tm;
            }
        }
        Self::from_table(table, None).expect("quaternion table is a group")
    }

    /// Permutations of {0, .., n-1} in lexicographic order of their
    /// one-line images; the product p*q applies q first. Elements are
    /// named by their images, e.g. "102".
    pub fn symmetric(n: usize) -> Self {
        assert!((1..=6).contains(&n), "factorial order grows too fast");
        let perms = all_permutations(n);
        let index: HashMap<&[usize], usize> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_slice(), i))
            .collect();
        let order = perms.len();
        let mut table = vec![vec![0; order]; order];
        for (i, p) in perms.iter().enumerate() {
            for (j, q) in perms.iter().enumerate() {
                let composed: Vec<usize> = (0..n).map(|x| p[q[x]]).collect();
                table[i][j] = index[composed.as_slice()];
            }
        }
        let names = perms
            .iter()
            .map(|p| p.iter().map(|d| d.to_string()).collect())
            .collect();
        Self::from_table(table, Some(names)).expect("composition table is a group")
    }

    /// All subgroups, each a sorted index list, ordered by size and then
    /// lexicographically. Exhaustive closure search.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let trivial = vec![self.identity];
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        found.insert(trivial.clone());
        let mut queue = vec![trivial];
        while let Some(h) = queue.pop() {
            for g in 0..self.order {
                if h.binary_search(&g).is_ok() {
                    continue;
                }
                let mut seed = h.clone();
                seed.push(g);
                let extended = self.closure(&seed);
                if found.insert(extended.clone()) {
                    queue.push(extended);
                }
            }
        }
        let mut subs: Vec<Vec<usize>> = found.into_iter().collect();
        subs.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        subs
    }

    /// Smallest subgroup containing the seed, as a sorted index list.
    fn closure(&self, seed: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order];
        let mut elems = vec![self.identity];
        member[self.identity] = true;
        for &s in seed {
            if !member[s] {
                member[s] = true;
                elems.push(s);
            }
        }
        let mut i = 0;
        while i < elems.len() {
            let mut j = 0;
            while j < elems.len() {
                for p in [self.mul(elems[i], elems[j]), self.mul(elems[j], elems[i])] {
                    if !member[p] {
                        member[p] = true;
                        elems.push(p);
                    }
                }
                j += 1;
            }
            i += 1;
        }
        elems.sort_unstable();
        elems
    }

    /// Transports the structure along a bijection phi of the index set:
    /// in the result, phi(a) * phi(b) = phi(a * b).
    pub fn relabel(&self, phi: &[usize]) -> Result<Self, FinError> {
        if phi.len() != self.order {
            return Err(FinError::Input(format!(
                "relabeling has {} entries for order {}",
                phi.len(),
                self.order
            )));
        }
        let mut hit = vec![false; self.order];
        for &p in phi {
            if p >= self.order || hit[p] {
                return Err(FinError::Input("relabeling is not a bijection".into()));
            }
            hit[p] = true;
        }
        let mut table = vec![vec![0; self.order]; self.order];
        for a in 0..self.order {
            for b in 0..self.order {
                table[phi[a]][phi[b]] = phi[self.table[a][b]];
            }
        }
        let names = self.names.as_ref().map(|names| {
            let mut moved = vec![String::new(); self.order];
            for (i, name) in names.iter().enumerate() {
                moved[phi[i]] = name.clone();
            }
            moved
        });
        Self::from_table(table, names)
    }

    /// First reason a sorted index set fails to be a subgroup, if any.
    pub(crate) fn subgroup_violation(&self, set: &[usize]) -> Option<String> {
        let mut member = vec![false; self.order];
        for &x in set {
            member[x] = true;
        }
        if !member[self.identity] {
            return Some("it misses the identity".into());
        }
        for &a in set {
            if !member[self.inv(a)] {
                return Some(format!("{} has no inverse in it", self.name(a)));
            }
            for &b in set {
                let p = self.mul(a, b);
                if !member[p] {
                    return Some(format!(
                        "{} * {} = {} escapes it",
                        self.name(a),
                        self.name(b),
                        self.name(p)
                    ));
                }
            }
        }
        None
    }
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, used: &mut [bool], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(n, used, cur, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut vec![false; n], &mut Vec::new(), &mut out);
    out
}

#[derive(Debug, Deserialize)]
struct GroupWire {
    order: usize,
    table: Vec<Vec<usize>>,
    #[serde(default)]
    names: Option<Vec<String>>,
    #[serde(default, rename = "H_L")]
    hl: Option<Vec<usize>>,
    #[serde(default, rename = "B")]
    b: Option<Vec<usize>>,
    #[serde(default, rename = "H_R")]
    hr: Option<Vec<usize>>,
}

/// A parsed group file: the validated group plus whatever decomposition
/// subsets the file carried.
#[derive(Debug, Clone)]
pub struct GroupFile {
    pub group: FiniteGroup,
    pub hl: Option<Vec<usize>>,
    pub b: Option<Vec<usize>>,
    pub hr: Option<Vec<usize>>,
}

/// Parses and validates a group file. Subset fields are range-checked
/// here; whether they decompose the group is a separate question.
pub fn load_group(json: &str) -> Result<GroupFile, FinError> {
    let wire: GroupWire =
        serde_json::from_str(json).map_err(|e| FinError::Input(e.to_string()))?;
    if wire.order != wire.table.len() {
        return Err(FinError::Input(format!(
            "declared order {} but the table has {} rows",
            wire.order,
            wire.table.len()
        )));
    }
    let group = FiniteGroup::from_table(wire.table, wire.names)?;
    for (label, set) in [("H_L", &wire.hl), ("B", &wire.b), ("H_R", &wire.hr)] {
        if let Some(set) = set {
            if let Some(&bad) = set.iter().find(|&&i| i >= group.order()) {
                return Err(FinError::Input(format!(
                    "{label} contains index {bad}, but the group has order {}",
                    group.order()
                )));
            }
        }
    }
    Ok(GroupFile {
        group,
        hl: wire.hl,
        b: wire.b,
        hr: wire.hr,
    })
}
