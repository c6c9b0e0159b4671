//! Finite operads presented by `∘_i` and `Σ_n` tables.
//!
//! Element identifiers are opaque strings, sorted per arity at construction so
//! that the index order of [`Op`] agrees with identifier order.

mod axioms;
mod catalog;
mod map;

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

pub use axioms::check_operad_axioms;
pub use catalog::{ass, comm, monoid_plus, weighted_comm, MonoidTable};
pub use map::OperadMap;

use crate::perm::{factorial, Permutation};
use crate::{Error, Result};

/// An element of `O(arity)`, referenced by its position in the sorted
/// identifier list of that arity.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Op {
    pub arity: u32,
    pub index: u32,
}

impl Op {
    pub const fn new(arity: usize, index: usize) -> Self {
        Op { arity: arity as u32, index: index as u32 }
    }

    #[inline]
    pub fn arity(self) -> usize {
        self.arity as usize
    }

    #[inline]
    pub fn index(self) -> usize {
        self.index as usize
    }
}

/// `(k, c, i, j, d) ↦ c ∘_i d`, with `i` 1-based as in the exchange format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircEntry {
    pub k: usize,
    pub c: String,
    pub i: usize,
    pub j: usize,
    pub d: String,
    pub result: String,
}

/// `(n, c, σ) ↦ c·σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionEntry {
    pub n: usize,
    pub c: String,
    pub sigma: Permutation,
    pub result: String,
}

/// Identifier-based description of an operad, as read from a definition file.
#[derive(Clone, Debug, Default)]
pub struct OperadSpec {
    pub max_arity: usize,
    pub elements: BTreeMap<usize, Vec<String>>,
    pub unit: String,
    pub circ: Vec<CircEntry>,
    pub action: Vec<ActionEntry>,
    pub w: Vec<String>,
    /// Designated point of `O(0)`; defaults to the only element when
    /// `O(0)` is a singleton.
    pub point: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperadTable {
    max_arity: usize,
    names: Vec<Vec<String>>,
    unit: Op,
    /// `circ[k * (N + 1) + j][(c * k + i) * |O(j)| + d]`
    circ: Vec<Vec<Option<u32>>>,
    /// `action[n][c * n! + rank(σ)]`
    action: Vec<Vec<Option<u32>>>,
    in_w: Vec<bool>,
    point: Option<Op>,
}

/// Raw, index-based tables before identifiers are sorted.
pub(crate) struct RawTables {
    pub max_arity: usize,
    pub names: Vec<Vec<String>>,
    pub unit: usize,
    pub circ: BTreeMap<(usize, usize, usize, usize, usize), usize>,
    pub action: BTreeMap<(usize, usize, usize), usize>,
    pub w: Vec<usize>,
    pub point: Option<usize>,
}

impl OperadTable {
    /// Resolves an identifier-based description. Structural problems (unknown
    /// identifiers, results in the wrong arity, conflicting entries) are
    /// errors; the operad laws are checked separately by
    /// [`check_operad_axioms`].
    pub fn from_spec(spec: &OperadSpec) -> Result<Self> {
        let n = spec.max_arity;
        let mut names = alloc::vec![Vec::new(); n + 1];
        for (&arity, ids) in &spec.elements {
            if arity > n {
                return Err(Error::Invalid(alloc::format!("arity {arity} exceeds max_arity {n}")));
            }
            names[arity] = ids.clone();
        }
        let lookup = |arity: usize, id: &str| -> Result<usize> {
            names
                .get(arity)
                .and_then(|v| v.iter().position(|x| x == id))
                .ok_or_else(|| Error::Invalid(alloc::format!("unknown element {id:?} in arity {arity}")))
        };
        let unit = lookup(1, &spec.unit)?;
        let mut circ = BTreeMap::new();
        for e in &spec.circ {
            if e.k == 0 || e.i == 0 || e.i > e.k {
                return Err(Error::Invalid(alloc::format!("bad composition index {} for arity {}", e.i, e.k)));
            }
            if e.k + e.j - 1 > n {
                return Err(Error::Truncation { arity: e.k + e.j - 1, max: n });
            }
            let key = (e.k, lookup(e.k, &e.c)?, e.i - 1, e.j, lookup(e.j, &e.d)?);
            let r = lookup(e.k + e.j - 1, &e.result)?;
            if let Some(prev) = circ.insert(key, r) {
                if prev != r {
                    return Err(Error::Invalid(alloc::format!("conflicting entries for {} ∘_{} {}", e.c, e.i, e.d)));
                }
            }
        }
        let mut action = BTreeMap::new();
        for e in &spec.action {
            if e.sigma.degree() != e.n {
                return Err(Error::Arity { expected: e.n, found: e.sigma.degree() });
            }
            let key = (e.n, lookup(e.n, &e.c)?, e.sigma.rank());
            let r = lookup(e.n, &e.result)?;
            if let Some(prev) = action.insert(key, r) {
                if prev != r {
                    return Err(Error::Invalid(alloc::format!("conflicting action entries for {}", e.c)));
                }
            }
        }
        let w = spec.w.iter().map(|id| lookup(1, id)).collect::<Result<Vec<_>>>()?;
        let point = spec.point.as_deref().map(|id| lookup(0, id)).transpose()?;
        let all_singletons = names.iter().all(|v| v.len() <= 1);
        let mut raw = RawTables { max_arity: n, names, unit, circ, action, w, point };
        if all_singletons {
            for arity in 0..=n {
                if raw.names[arity].len() == 1 {
                    for r in 0..factorial(arity) {
                        raw.action.entry((arity, 0, r)).or_insert(0);
                    }
                }
            }
        }
        Self::assemble(raw)
    }

    /// Builds a table from closures over raw indices `0..names[arity].len()`.
    /// `circ(k, c, i, j, d)` uses a 0-based `i`.
    pub fn from_fns(
        max_arity: usize,
        names: Vec<Vec<String>>,
        unit: usize,
        circ: impl Fn(usize, usize, usize, usize, usize) -> Option<usize>,
        action: impl Fn(usize, usize, &Permutation) -> Option<usize>,
        w: Vec<usize>,
    ) -> Result<Self> {
        let mut names = names;
        names.resize(max_arity + 1, Vec::new());
        let mut circ_map = BTreeMap::new();
        let mut action_map = BTreeMap::new();
        for k in 1..=max_arity {
            for j in 0..=(max_arity + 1 - k) {
                for c in 0..names[k].len() {
                    for i in 0..k {
                        for d in 0..names[j].len() {
                            if let Some(r) = circ(k, c, i, j, d) {
                                circ_map.insert((k, c, i, j, d), r);
                            }
                        }
                    }
                }
            }
        }
        for n in 0..=max_arity {
            let perms = Permutation::all(n);
            for c in 0..names[n].len() {
                for (rank, sigma) in perms.iter().enumerate() {
                    if let Some(r) = action(n, c, sigma) {
                        action_map.insert((n, c, rank), r);
                    }
                }
            }
        }
        let point = (names[0].len() == 1).then_some(0);
        Self::assemble(RawTables { max_arity, names, unit, circ: circ_map, action: action_map, w, point })
    }

    pub(crate) fn assemble(raw: RawTables) -> Result<Self> {
        let n = raw.max_arity;
        // sort identifiers, remember old index -> new index
        let mut names = Vec::with_capacity(n + 1);
        let mut remap: Vec<Vec<usize>> = Vec::with_capacity(n + 1);
        for ids in &raw.names {
            let mut order: Vec<usize> = (0..ids.len()).collect();
            order.sort_by(|&a, &b| ids[a].cmp(&ids[b]));
            if order.windows(2).any(|w| ids[w[0]] == ids[w[1]]) {
                return Err(Error::Invalid(alloc::format!("duplicate identifiers in {ids:?}")));
            }
            let mut to_new = alloc::vec![0; ids.len()];
            for (new, &old) in order.iter().enumerate() {
                to_new[old] = new;
            }
            names.push(order.iter().map(|&i| ids[i].clone()).collect::<Vec<_>>());
            remap.push(to_new);
        }
        let size = |a: usize| names[a].len();
        let check = |arity: usize, idx: usize| -> Result<usize> {
            if arity > n || idx >= size(arity) {
                Err(Error::Invalid(alloc::format!("index {idx} outside O({arity})")))
            } else {
                Ok(remap[arity][idx])
            }
        };
        if size(1) == 0 {
            return Err(Error::Invalid("O(1) must contain the unit".into()));
        }
        let unit = Op::new(1, check(1, raw.unit)?);

        let mut circ = alloc::vec![Vec::new(); (n + 1) * (n + 1)];
        for k in 1..=n {
            for j in 0..=(n + 1 - k).min(n) {
                circ[k * (n + 1) + j] = alloc::vec![None; size(k) * k * size(j)];
            }
        }
        for (&(k, c, i, j, d), &r) in &raw.circ {
            if k == 0 || i >= k || k + j - 1 > n || j > n {
                return Err(Error::Invalid(alloc::format!("composition ({k}, {c}, {i}, {j}, {d}) out of range")));
            }
            let (c, d, r) = (check(k, c)?, check(j, d)?, check(k + j - 1, r)?);
            circ[k * (n + 1) + j][(c * k + i) * size(j) + d] = Some(r as u32);
        }
        let mut action = Vec::with_capacity(n + 1);
        for a in 0..=n {
            action.push(alloc::vec![None; size(a) * factorial(a)]);
        }
        for (&(a, c, rank), &r) in &raw.action {
            if a > n || rank >= factorial(a) {
                return Err(Error::Invalid(alloc::format!("action entry ({a}, {c}, {rank}) out of range")));
            }
            let (c, r) = (check(a, c)?, check(a, r)?);
            action[a][c * factorial(a) + rank] = Some(r as u32);
        }
        let mut in_w = alloc::vec![false; size(1)];
        for &w in &raw.w {
            in_w[check(1, w)?] = true;
        }
        let point = match raw.point {
            Some(p) => Some(Op::new(0, check(0, p)?)),
            None if size(0) == 1 => Some(Op::new(0, 0)),
            None => None,
        };
        Ok(OperadTable { max_arity: n, names, unit, circ, action, in_w, point })
    }

    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    pub fn unit(&self) -> Op {
        self.unit
    }

    /// The designated point of `O(0)`, if any.
    pub fn point(&self) -> Option<Op> {
        self.point
    }

    pub fn size(&self, arity: usize) -> usize {
        self.names.get(arity).map_or(0, Vec::len)
    }

    pub fn elements(&self, arity: usize) -> impl Iterator<Item = Op> + '_ {
        (0..self.size(arity)).map(move |i| Op::new(arity, i))
    }

    /// Every element of every arity, arity-major.
    pub fn all_elements(&self) -> impl Iterator<Item = Op> + '_ {
        (0..=self.max_arity).flat_map(move |a| self.elements(a))
    }

    pub fn name(&self, op: Op) -> &str {
        &self.names[op.arity()][op.index()]
    }

    pub fn lookup(&self, arity: usize, id: &str) -> Option<Op> {
        self.names.get(arity)?.binary_search_by(|x| x.as_str().cmp(id)).ok().map(|i| Op::new(arity, i))
    }

    pub fn contains(&self, op: Op) -> bool {
        op.arity() <= self.max_arity && op.index() < self.size(op.arity())
    }

    pub fn is_unit(&self, op: Op) -> bool {
        op == self.unit
    }

    pub fn in_w(&self, op: Op) -> bool {
        op.arity == 1 && self.in_w[op.index()]
    }

    pub fn w_elements(&self) -> impl Iterator<Item = Op> + '_ {
        self.elements(1).filter(move |&o| self.in_w(o))
    }

    /// `c ∘_i d` with a 0-based slot `i`.
    pub fn circ(&self, c: Op, i: usize, d: Op) -> Result<Op> {
        let (k, j) = (c.arity(), d.arity());
        if i >= k {
            return Err(Error::IndexOutOfRange { index: i + 1, bound: k });
        }
        let arity = k + j - 1;
        if arity > self.max_arity {
            return Err(Error::Truncation { arity, max: self.max_arity });
        }
        self.circ[k * (self.max_arity + 1) + j][(c.index() * k + i) * self.size(j) + d.index()]
            .map(|r| Op::new(arity, r as usize))
            .ok_or_else(|| {
                Error::IncompleteTable(alloc::format!("{} ∘_{} {}", self.name(c), i + 1, self.name(d)))
            })
    }

    /// Right action `c·σ`.
    pub fn act(&self, c: Op, sigma: &Permutation) -> Result<Op> {
        let n = c.arity();
        if sigma.degree() != n {
            return Err(Error::Arity { expected: n, found: sigma.degree() });
        }
        if sigma.is_identity() {
            if let Some(r) = self.action[n][c.index() * factorial(n) + sigma.rank()] {
                return Ok(Op::new(n, r as usize));
            }
            return Ok(c);
        }
        self.action[n][c.index() * factorial(n) + sigma.rank()]
            .map(|r| Op::new(n, r as usize))
            .ok_or_else(|| Error::IncompleteTable(alloc::format!("{}·{}", self.name(c), sigma)))
    }

    /// Raw action table lookup; `None` when the entry is missing.
    pub(crate) fn action_entry(&self, c: Op, sigma: &Permutation) -> Option<Op> {
        let n = c.arity();
        self.action[n][c.index() * factorial(n) + sigma.rank()].map(|r| Op::new(n, r as usize))
    }

    /// `γ(c; d_1, …, d_k)`, derived from the `∘_i` tables. Nullary arguments
    /// are inserted first so intermediate arities never exceed the result's
    /// or `c`'s arity; within each pass slots are filled from the highest
    /// index downward.
    pub fn gamma(&self, c: Op, args: &[Op]) -> Result<Op> {
        let k = c.arity();
        if args.len() != k {
            return Err(Error::Arity { expected: k, found: args.len() });
        }
        let total: usize = args.iter().map(|d| d.arity()).sum();
        if total > self.max_arity {
            return Err(Error::Truncation { arity: total, max: self.max_arity });
        }
        let mut acc = c;
        for (s, d) in args.iter().enumerate().rev() {
            if d.arity() == 0 {
                acc = self.circ(acc, s, *d)?;
            }
        }
        let rest: Vec<Op> = args.iter().copied().filter(|d| d.arity() != 0).collect();
        for (s, d) in rest.iter().enumerate().rev() {
            acc = self.circ(acc, s, *d)?;
        }
        Ok(acc)
    }

    /// `γ` in `O(1)`: "first `a`, then `b`" along the arrow direction.
    pub fn mul(&self, a: Op, b: Op) -> Result<Op> {
        self.gamma(a, &[b])
    }

    /// Names of `ops`, comma separated; handy for witnesses.
    pub fn names_of(&self, ops: &[Op]) -> String {
        let v: Vec<&str> = ops.iter().map(|&o| self.name(o)).collect();
        v.join(",")
    }

    /// Returns a copy with a different `W`.
    pub fn with_w(&self, w: &[Op]) -> Result<Self> {
        let mut out = self.clone();
        out.in_w = alloc::vec![false; self.size(1)];
        for &o in w {
            if o.arity != 1 || !self.contains(o) {
                return Err(Error::Invalid(alloc::format!("{o:?} is not in O(1)")));
            }
            out.in_w[o.index()] = true;
        }
        Ok(out)
    }

    /// Copy with `W = {unit}`.
    pub fn with_trivial_w(&self) -> Self {
        self.with_w(&[self.unit]).expect("unit lies in O(1)")
    }

    /// Re-expresses the table as an identifier-based description, listing
    /// every defined entry.
    pub fn to_spec(&self) -> OperadSpec {
        let n = self.max_arity;
        let mut spec = OperadSpec {
            max_arity: n,
            unit: self.name(self.unit).to_string(),
            point: self.point.map(|p| self.name(p).to_string()),
            ..Default::default()
        };
        for a in 0..=n {
            spec.elements.insert(a, self.names[a].clone());
        }
        for k in 1..=n {
            for j in 0..=(n + 1 - k).min(n) {
                for c in self.elements(k) {
                    for i in 0..k {
                        for d in self.elements(j) {
                            if let Ok(r) = self.circ(c, i, d) {
                                spec.circ.push(CircEntry {
                                    k,
                                    c: self.name(c).into(),
                                    i: i + 1,
                                    j,
                                    d: self.name(d).into(),
                                    result: self.name(r).into(),
                                });
                            }
                        }
                    }
                }
            }
        }
        for a in 0..=n {
            let perms = Permutation::all(a);
            for c in self.elements(a) {
                for sigma in &perms {
                    if let Some(r) = self.action_entry(c, sigma) {
                        spec.action.push(ActionEntry {
                            n: a,
                            c: self.name(c).into(),
                            sigma: sigma.clone(),
                            result: self.name(r).into(),
                        });
                    }
                }
            }
        }
        spec.w = self.w_elements().map(|o| self.name(o).to_string()).collect();
        spec
    }

    /// Overwrites one composition entry. Intended for mutation testing.
    pub fn set_circ(&mut self, c: Op, i: usize, d: Op, result: Op) -> Result<()> {
        let (k, j) = (c.arity(), d.arity());
        if i >= k || k + j - 1 != result.arity() || !self.contains(result) {
            return Err(Error::Invalid("mutation does not type-check".into()));
        }
        let sj = self.size(j);
        self.circ[k * (self.max_arity + 1) + j][(c.index() * k + i) * sj + d.index()] = Some(result.index);
        Ok(())
    }

    /// All defined composition entries `(c, i, d)` with 0-based `i`.
    pub fn circ_entries(&self) -> Vec<(Op, usize, Op)> {
        let n = self.max_arity;
        let mut out = Vec::new();
        for k in 1..=n {
            for j in 0..=(n + 1 - k).min(n) {
                for c in self.elements(k) {
                    for i in 0..k {
                        for d in self.elements(j) {
                            if self.circ(c, i, d).is_ok() {
                                out.push((c, i, d));
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for OperadTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sizes: Vec<String> = (0..=self.max_arity).map(|a| alloc::format!("{}", self.size(a))).collect();
        write!(f, "operad(max_arity={}, |O(n)|=[{}], |W|={})", self.max_arity, sizes.join(","), self.w_elements().count())
    }
}
