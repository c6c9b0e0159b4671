//! Standard small operads: `Comm`, `Ass`, `M_+` and the weighted commutative
//! operad `Comm ⊗ M` for a commutative monoid.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::OperadTable;
use crate::perm::{block_permutation, direct_sum, Permutation};
use crate::{Error, Result};

/// A finite monoid given by its multiplication table. `mul[a][b]` is "first
/// `a`, then `b`"; in `M_+` it becomes `a ∘_1 b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidTable {
    pub names: Vec<String>,
    pub unit: usize,
    pub mul: Vec<Vec<usize>>,
}

impl MonoidTable {
    /// Validates closure, the unit laws and associativity.
    pub fn new(names: Vec<String>, unit: usize, mul: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if unit >= n || mul.len() != n || mul.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::Invalid("malformed monoid table".into()));
        }
        for a in 0..n {
            if mul[unit][a] != a || mul[a][unit] != a {
                return Err(Error::Invalid(alloc::format!("{} is not a two-sided unit for {}", names[unit], names[a])));
            }
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(Error::Invalid(alloc::format!(
                            "not associative at ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        Ok(MonoidTable { names, unit, mul })
    }

    pub fn trivial() -> Self {
        MonoidTable { names: alloc::vec!["1".into()], unit: 0, mul: alloc::vec![alloc::vec![0]] }
    }

    /// `Z/n` on `1, w, w2, …`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let names = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "w".to_string(),
                _ => alloc::format!("w{i}"),
            })
            .collect();
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        MonoidTable { names, unit: 0, mul }
    }

    /// `{1, e}` with `e·e = e`.
    pub fn idempotent() -> Self {
        MonoidTable { names: alloc::vec!["1".into(), "e".into()], unit: 0, mul: alloc::vec![alloc::vec![0, 1], alloc::vec![1, 1]] }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.len()).all(|a| (0..self.len()).all(|b| self.mul[a][b] == self.mul[b][a]))
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|x| x == name)
    }
}

fn trivial_action(_: usize, c: usize, _: &Permutation) -> Option<usize> {
    Some(c)
}

/// The commutative operad truncated at `max_arity`: each `O(n) = {e_n}`.
pub fn comm(max_arity: usize) -> OperadTable {
    let names = (0..=max_arity).map(|n| alloc::vec![alloc::format!("e{n}")]).collect();
    OperadTable::from_fns(max_arity, names, 0, |_, _, _, _, _| Some(0), trivial_action, alloc::vec![0])
        .expect("Comm tables are well formed")
}

fn perm_name(p: &Permutation) -> String {
    let mut s = String::from("p");
    for i in p.one_based() {
        s.push_str(&alloc::format!("{i}"));
    }
    s
}

/// The associative operad truncated at `max_arity`: `O(n) = Σ_n`, right
/// action by multiplication, `γ(c; d) = c(j) · (d_1 ⊕ … ⊕ d_k)`. Identifiers
/// are `p` followed by the 1-based images, so `max_arity ≤ 9` keeps identifier
/// order equal to lexicographic permutation order.
pub fn ass(max_arity: usize) -> OperadTable {
    assert!(max_arity <= 9, "Ass identifiers assume single-digit images");
    let perms: Vec<Vec<Permutation>> = (0..=max_arity).map(Permutation::all).collect();
    let names = perms.iter().map(|ps| ps.iter().map(perm_name).collect()).collect();
    let circ = |k: usize, c: usize, i: usize, j: usize, d: usize| {
        let mut sizes = alloc::vec![1; k];
        sizes[i] = j;
        let mut taus: Vec<Permutation> = (0..k).map(|_| Permutation::identity(1)).collect();
        taus[i] = perms[j][d].clone();
        let r = block_permutation(&perms[k][c], &sizes).ok()?.then(&direct_sum(&taus));
        Some(r.rank())
    };
    let action = |n: usize, c: usize, sigma: &Permutation| Some(perms[n][c].then(sigma).rank());
    OperadTable::from_fns(max_arity, names, 0, circ, action, alloc::vec![0]).expect("Ass tables are well formed")
}

/// `M_+`: `O(0) = {*}`, `O(1) = M`, nothing above arity 1. `w` lists the
/// elements of `W` (all of `M` when `None`).
pub fn monoid_plus(m: &MonoidTable, w: Option<&[usize]>) -> Result<OperadTable> {
    let m = MonoidTable::new(m.names.clone(), m.unit, m.mul.clone())?;
    let names = alloc::vec![alloc::vec!["*".to_string()], m.names.clone()];
    let w = w.map_or_else(|| (0..m.len()).collect(), <[usize]>::to_vec);
    OperadTable::from_fns(
        1,
        names,
        m.unit,
        |_, c, _, j, d| Some(if j == 0 { 0 } else { m.mul[c][d] }),
        trivial_action,
        w,
    )
}

/// `Comm ⊗ M` for a commutative monoid: every `O(n)` is a copy of `M`,
/// `γ(c; d_1, …, d_k) = c·d_1⋯d_k` and `Σ_n` acts trivially.
pub fn weighted_comm(max_arity: usize, m: &MonoidTable, w: Option<&[usize]>) -> Result<OperadTable> {
    if !m.is_commutative() {
        return Err(Error::Invalid("weighted Comm needs a commutative monoid".into()));
    }
    let names = (0..=max_arity).map(|_| m.names.clone()).collect();
    let w = w.map_or_else(|| (0..m.len()).collect(), <[usize]>::to_vec);
    OperadTable::from_fns(max_arity, names, m.unit, |_, c, _, _, d| Some(m.mul[c][d]), trivial_action, w)
}
