//! Reduced hammocks and the Dwyer–Kan hammock localization of a category.
//!
//! A hammock of height `n` from `a` to `b` is a sequence of columns, each a
//! stack of `n + 1` parallel arrows all pointing right or all pointing left,
//! separated by interior chains of objects joined by downward vertical
//! arrows. Rows are indexed `0..=n` from top to bottom. The endpoints carry
//! no verticals.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::category::Category;
use crate::report::AxiomReport;
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Dir {
    Right,
    Left,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::Right => Dir::Left,
            Dir::Left => Dir::Right,
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Column<M> {
    pub dir: Dir,
    /// One label per row.
    pub labels: Vec<M>,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Chain<O, M> {
    /// One object per row.
    pub objects: Vec<O>,
    /// `verticals[r]` goes from row `r` to row `r + 1`.
    pub verticals: Vec<M>,
}

/// Column `j` sits between node `j` and node `j + 1`, where node `0` is the
/// source, node `columns.len()` the target and `chains[j - 1]` node `j` for
/// the interior ones. A right column at row `r` goes from node `j` to node
/// `j + 1`, a left column the other way.
///
/// Field order makes the derived ordering the canonical serialization
/// order: directions and labels column by column, then chain data.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DkHammock<O, M> {
    pub source: O,
    pub target: O,
    pub height: usize,
    pub columns: Vec<Column<M>>,
    pub chains: Vec<Chain<O, M>>,
}

impl<O: Clone + Ord, M: Clone + Ord> DkHammock<O, M> {
    /// The identity `n`-simplex: no columns.
    pub fn empty(x: O, height: usize) -> Self {
        DkHammock { source: x.clone(), target: x, height, columns: Vec::new(), chains: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }
}

impl<O: Clone + Ord, M: Clone + Ord> DkHammock<O, M> {
    /// One line: `a ~> b: >(f0,f1) {x0,x1|v} <(g0,g1)`, with row labels of each
    /// column and, for each interior chain, its objects and verticals.
    pub fn display<'a, C: Category<Obj = O, Mor = M>>(&'a self, cat: &'a C) -> impl fmt::Display + 'a {
        DisplayHammock { cat, h: self }
    }
}

struct DisplayHammock<'a, C: Category> {
    cat: &'a C,
    h: &'a DkHammock<C::Obj, C::Mor>,
}

impl<C: Category> fmt::Display for DisplayHammock<'_, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (cat, h) = (self.cat, self.h);
        let join = |v: &mut dyn Iterator<Item = String>| v.collect::<Vec<_>>().join(",");
        write!(f, "{} ~> {}:", cat.obj_name(&h.source), cat.obj_name(&h.target))?;
        if h.columns.is_empty() {
            return write!(f, " id");
        }
        for (j, col) in h.columns.iter().enumerate() {
            if j > 0 {
                let ch = &h.chains[j - 1];
                let objects = join(&mut ch.objects.iter().map(|o| cat.obj_name(o)));
                let verticals = join(&mut ch.verticals.iter().map(|v| cat.mor_name(v)));
                write!(f, " {{{objects}|{verticals}}}")?;
            }
            let arrow = match col.dir {
                Dir::Right => '>',
                Dir::Left => '<',
            };
            write!(f, " {arrow}({})", join(&mut col.labels.iter().map(|l| cat.mor_name(l))))?;
        }
        Ok(())
    }
}

/// Objects of node `j` at row `r` and its vertical out of row `r`, with
/// identities at the endpoints.
fn node_object<C: Category>(h: &DkHammock<C::Obj, C::Mor>, j: usize, r: usize) -> C::Obj {
    if j == 0 {
        h.source.clone()
    } else if j == h.columns.len() {
        h.target.clone()
    } else {
        h.chains[j - 1].objects[r].clone()
    }
}

fn node_vertical<C: Category>(cat: &C, h: &DkHammock<C::Obj, C::Mor>, j: usize, r: usize) -> C::Mor {
    if j == 0 || j == h.columns.len() {
        cat.identity(&node_object::<C>(h, j, r))
    } else {
        h.chains[j - 1].verticals[r].clone()
    }
}

/// Checks shapes, typing, `W`-membership, commutativity and, when
/// `require_reduced`, alternation and the absence of identity columns.
pub fn dk_validate<C: Category>(cat: &C, h: &DkHammock<C::Obj, C::Mor>, require_reduced: bool) -> AxiomReport {
    let mut report = AxiomReport::new();
    let n = h.height;
    let m = h.columns.len();
    if h.chains.len() != m.saturating_sub(1) {
        report.push("shape", alloc::format!("{} columns but {} chains", m, h.chains.len()));
        return report;
    }
    if m == 0 && h.source != h.target {
        report.push("shape", "empty hammock between different objects");
    }
    for (j, col) in h.columns.iter().enumerate() {
        if col.labels.len() != n + 1 {
            report.push("shape", alloc::format!("column {j} has {} labels", col.labels.len()));
            return report;
        }
    }
    for (j, ch) in h.chains.iter().enumerate() {
        if ch.objects.len() != n + 1 || ch.verticals.len() != n {
            report.push("shape", alloc::format!("chain {} has the wrong length", j + 1));
            return report;
        }
        for (r, v) in ch.verticals.iter().enumerate() {
            if cat.source(v) != ch.objects[r] || cat.target(v) != ch.objects[r + 1] {
                report.push("typing", alloc::format!("vertical {r} of chain {}", j + 1));
            }
            if !cat.in_w(v) {
                report.push("membership", alloc::format!("vertical {r} of chain {} = {}", j + 1, cat.mor_name(v)));
            }
        }
    }
    if !report.passed() {
        return report;
    }
    for (j, col) in h.columns.iter().enumerate() {
        for (r, f) in col.labels.iter().enumerate() {
            let (from, to) = match col.dir {
                Dir::Right => (node_object::<C>(h, j, r), node_object::<C>(h, j + 1, r)),
                Dir::Left => (node_object::<C>(h, j + 1, r), node_object::<C>(h, j, r)),
            };
            if cat.source(f) != from || cat.target(f) != to {
                report.push("typing", alloc::format!("column {j} row {r}"));
                continue;
            }
            if col.dir == Dir::Left && !cat.in_w(f) {
                report.push("membership", alloc::format!("left column {j} row {r} = {}", cat.mor_name(f)));
            }
        }
        if require_reduced {
            if j > 0 && h.columns[j - 1].dir == col.dir {
                report.push("alternation", alloc::format!("columns {} and {j}", j - 1));
            }
            if col.labels.iter().all(|f| cat.is_identity(f)) {
                report.push("identity-column", alloc::format!("column {j}"));
            }
        }
    }
    if !report.passed() {
        return report;
    }
    for (j, col) in h.columns.iter().enumerate() {
        for r in 0..n {
            let vl = node_vertical(cat, h, j, r);
            let vr = node_vertical(cat, h, j + 1, r);
            let (f0, f1) = (&col.labels[r], &col.labels[r + 1]);
            let sides = match col.dir {
                Dir::Right => (cat.compose(f0, &vr), cat.compose(&vl, f1)),
                Dir::Left => (cat.compose(f0, &vl), cat.compose(&vr, f1)),
            };
            match sides {
                (Ok(x), Ok(y)) if x == y => {}
                _ => report.push("commutativity", alloc::format!("column {j} rows {r},{}", r + 1)),
            }
        }
    }
    report
}

/// A reduction step available in a hammock.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DkRedex {
    /// Compose columns `j` and `j + 1`, which point the same way.
    Merge(usize),
    /// Delete column `j`, whose labels are all identities.
    Delete(usize),
}

pub fn dk_redexes<C: Category>(cat: &C, h: &DkHammock<C::Obj, C::Mor>) -> Vec<DkRedex> {
    let mut out = Vec::new();
    for j in 0..h.columns.len() {
        if h.columns[j].labels.iter().all(|f| cat.is_identity(f)) {
            out.push(DkRedex::Delete(j));
        }
        if j + 1 < h.columns.len() && h.columns[j].dir == h.columns[j + 1].dir {
            out.push(DkRedex::Merge(j));
        }
    }
    out
}

pub fn dk_apply<C: Category>(cat: &C, h: &DkHammock<C::Obj, C::Mor>, redex: DkRedex) -> Result<DkHammock<C::Obj, C::Mor>> {
    let mut out = h.clone();
    match redex {
        DkRedex::Merge(j) => {
            let (a, b) = (&h.columns[j], &h.columns[j + 1]);
            let labels = a
                .labels
                .iter()
                .zip(&b.labels)
                .map(|(f, g)| match a.dir {
                    Dir::Right => cat.compose(f, g),
                    Dir::Left => cat.compose(g, f),
                })
                .collect::<Result<Vec<_>>>()?;
            out.columns[j] = Column { dir: a.dir, labels };
            out.columns.remove(j + 1);
            out.chains.remove(j);
        }
        DkRedex::Delete(j) => {
            out.columns.remove(j);
            let m = h.columns.len();
            if m == 1 {
                if h.source != h.target {
                    return Err(Error::ObjectMismatch("identity column between different objects".into()));
                }
            } else if j + 1 == m {
                // the chain before the last column merges into the target
                out.chains.remove(j - 1);
            } else {
                out.chains.remove(j);
            }
        }
    }
    Ok(out)
}

/// Reduces with the leftmost redex first.
pub fn dk_reduce<C: Category>(cat: &C, h: &DkHammock<C::Obj, C::Mor>) -> Result<DkHammock<C::Obj, C::Mor>> {
    dk_reduce_with(cat, h, |_| 0)
}

/// Reduces, letting `choose` pick which of the available redexes to apply.
/// Fails on non-commuting input.
pub fn dk_reduce_with<C: Category>(
    cat: &C,
    h: &DkHammock<C::Obj, C::Mor>,
    mut choose: impl FnMut(&[DkRedex]) -> usize,
) -> Result<DkHammock<C::Obj, C::Mor>> {
    let report = dk_validate(cat, h, false);
    if !report.passed() {
        return Err(Error::NonCommuting(alloc::format!("{report}")));
    }
    let mut cur = h.clone();
    loop {
        let redexes = dk_redexes(cat, &cur);
        if redexes.is_empty() {
            return Ok(cur);
        }
        let k = choose(&redexes).min(redexes.len() - 1);
        cur = dk_apply(cat, &cur, redexes[k])?;
    }
}

/// Concatenation: the glued endpoint becomes a chain of identities.
pub fn dk_compose<C: Category>(
    cat: &C,
    h1: &DkHammock<C::Obj, C::Mor>,
    h2: &DkHammock<C::Obj, C::Mor>,
) -> Result<DkHammock<C::Obj, C::Mor>> {
    if h1.height != h2.height {
        return Err(Error::HeightMismatch { left: h1.height, right: h2.height });
    }
    if h1.target != h2.source {
        return Err(Error::ObjectMismatch(alloc::format!("{} vs {}", cat.obj_name(&h1.target), cat.obj_name(&h2.source))));
    }
    let mut out = DkHammock {
        source: h1.source.clone(),
        target: h2.target.clone(),
        height: h1.height,
        columns: h1.columns.clone(),
        chains: h1.chains.clone(),
    };
    if !h1.columns.is_empty() && !h2.columns.is_empty() {
        let b = h1.target.clone();
        out.chains.push(Chain {
            objects: alloc::vec![b.clone(); h1.height + 1],
            verticals: alloc::vec![cat.identity(&b); h1.height],
        });
    }
    out.columns.extend(h2.columns.iter().cloned());
    out.chains.extend(h2.chains.iter().cloned());
    dk_reduce(cat, &out)
}

/// Deletes row `i`; the two verticals it separated compose as upper then
/// lower.
pub fn dk_face<C: Category>(cat: &C, h: &DkHammock<C::Obj, C::Mor>, i: usize) -> Result<DkHammock<C::Obj, C::Mor>> {
    if h.height == 0 || i > h.height {
        return Err(Error::IndexOutOfRange { index: i, bound: h.height });
    }
    let mut out = h.clone();
    out.height -= 1;
    for col in &mut out.columns {
        col.labels.remove(i);
    }
    for ch in &mut out.chains {
        ch.objects.remove(i);
        if i == 0 {
            ch.verticals.remove(0);
        } else if i == h.height {
            ch.verticals.remove(i - 1);
        } else {
            let v = cat.compose(&ch.verticals[i - 1], &ch.verticals[i])?;
            ch.verticals[i - 1] = v;
            ch.verticals.remove(i);
        }
    }
    dk_reduce(cat, &out)
}

/// Repeats row `i` with identity verticals between the copies.
pub fn dk_degeneracy<C: Category>(cat: &C, h: &DkHammock<C::Obj, C::Mor>, i: usize) -> Result<DkHammock<C::Obj, C::Mor>> {
    if i > h.height {
        return Err(Error::IndexOutOfRange { index: i, bound: h.height });
    }
    let mut out = h.clone();
    out.height += 1;
    for col in &mut out.columns {
        let f = col.labels[i].clone();
        col.labels.insert(i, f);
    }
    for ch in &mut out.chains {
        let x = ch.objects[i].clone();
        ch.verticals.insert(i, cat.identity(&x));
        ch.objects.insert(i, x);
    }
    dk_reduce(cat, &out)
}

/// The height-`n` image of `f` under `C → L^H C`: one right column.
pub fn include_category<C: Category>(cat: &C, f: &C::Mor, height: usize) -> Result<DkHammock<C::Obj, C::Mor>> {
    let h = DkHammock {
        source: cat.source(f),
        target: cat.target(f),
        height,
        columns: alloc::vec![Column { dir: Dir::Right, labels: alloc::vec![f.clone(); height + 1] }],
        chains: Vec::new(),
    };
    dk_reduce(cat, &h)
}

/// The image of `w` under `W^op → L^H C`: one left column.
pub fn include_wop<C: Category>(cat: &C, w: &C::Mor, height: usize) -> Result<DkHammock<C::Obj, C::Mor>> {
    if !cat.in_w(w) {
        return Err(Error::NotInW(cat.mor_name(w)));
    }
    let h = DkHammock {
        source: cat.target(w),
        target: cat.source(w),
        height,
        columns: alloc::vec![Column { dir: Dir::Left, labels: alloc::vec![w.clone(); height + 1] }],
        chains: Vec::new(),
    };
    dk_reduce(cat, &h)
}

/// Applies a functor labelwise and reduces. `mor` must preserve sources,
/// targets, identities, composition and send `W` into `W′`.
pub fn dk_map<C: Category, D: Category>(
    target_cat: &D,
    h: &DkHammock<C::Obj, C::Mor>,
    obj: impl Fn(&C::Obj) -> D::Obj,
    mor: impl Fn(&C::Mor) -> D::Mor,
) -> Result<DkHammock<D::Obj, D::Mor>> {
    let out = DkHammock {
        source: obj(&h.source),
        target: obj(&h.target),
        height: h.height,
        columns: h.columns.iter().map(|c| Column { dir: c.dir, labels: c.labels.iter().map(&mor).collect() }).collect(),
        chains: h
            .chains
            .iter()
            .map(|c| Chain { objects: c.objects.iter().map(&obj).collect(), verticals: c.verticals.iter().map(&mor).collect() })
            .collect(),
    };
    for ch in &out.chains {
        if let Some(v) = ch.verticals.iter().find(|v| !target_cat.in_w(v)) {
            return Err(Error::NotInW(target_cat.mor_name(v)));
        }
    }
    for col in out.columns.iter().filter(|c| c.dir == Dir::Left) {
        if let Some(v) = col.labels.iter().find(|v| !target_cat.in_w(v)) {
            return Err(Error::NotInW(target_cat.mor_name(v)));
        }
    }
    dk_reduce(target_cat, &out)
}

/// Enumeration bounds.
#[derive(Clone, Copy, Debug)]
pub struct DkBounds {
    pub height: usize,
    pub max_length: usize,
    /// Abort with a resource error beyond this many results.
    pub max_results: usize,
}

/// All reduced hammocks `a ⇝ b` with at most `max_length` columns, in
/// canonical order.
pub fn dk_enumerate<C: Category>(cat: &C, a: &C::Obj, b: &C::Obj, bounds: DkBounds) -> Result<Vec<DkHammock<C::Obj, C::Mor>>> {
    let mut found = BTreeSet::new();
    if a == b {
        found.insert(DkHammock::empty(a.clone(), bounds.height));
    }
    let objects = cat.objects();
    for len in 1..=bounds.max_length {
        for first in [Dir::Right, Dir::Left] {
            let mut search = Search { cat, bounds, len, objects: &objects, target: b, found: &mut found };
            let start = DkHammock {
                source: a.clone(),
                target: b.clone(),
                height: bounds.height,
                columns: Vec::new(),
                chains: Vec::new(),
            };
            search.extend(start, first)?;
        }
    }
    Ok(found.into_iter().collect())
}

struct Search<'a, C: Category> {
    cat: &'a C,
    bounds: DkBounds,
    len: usize,
    objects: &'a [C::Obj],
    target: &'a C::Obj,
    found: &'a mut BTreeSet<DkHammock<C::Obj, C::Mor>>,
}

impl<C: Category> Search<'_, C> {
    /// `partial` has `columns.len()` columns and, if nonempty, one chain per
    /// column (the last chain is the open right end).
    fn extend(&mut self, partial: DkHammock<C::Obj, C::Mor>, dir: Dir) -> Result<()> {
        let j = partial.columns.len();
        let last = j + 1 == self.len;
        let n = self.bounds.height;
        let left_obj = |r: usize| if j == 0 { partial.source.clone() } else { partial.chains[j - 1].objects[r].clone() };
        let left_vert = |r: usize| {
            if j == 0 {
                self.cat.identity(&partial.source)
            } else {
                partial.chains[j - 1].verticals[r].clone()
            }
        };
        // rows are filled top to bottom: (label, object, vertical into this row)
        let mut rows: Vec<(C::Mor, C::Obj, Option<C::Mor>)> = Vec::new();
        self.rows(&mut rows, n, dir, last, &left_obj, &left_vert, &mut |this, rows| {
            if rows.iter().all(|(f, _, _)| this.cat.is_identity(f)) {
                return Ok(());
            }
            let mut next = partial.clone();
            next.columns.push(Column { dir, labels: rows.iter().map(|r| r.0.clone()).collect() });
            if last {
                if this.found.len() >= this.bounds.max_results {
                    return Err(Error::Resource(alloc::format!("more than {} hammocks", this.bounds.max_results)));
                }
                this.found.insert(next);
                Ok(())
            } else {
                next.chains.push(Chain {
                    objects: rows.iter().map(|r| r.1.clone()).collect(),
                    verticals: rows.iter().skip(1).map(|r| r.2.clone().expect("set below row 0")).collect(),
                });
                this.extend(next, dir.flip())
            }
        })
    }

    #[allow(clippy::too_many_arguments)]
    fn rows(
        &mut self,
        rows: &mut Vec<(C::Mor, C::Obj, Option<C::Mor>)>,
        n: usize,
        dir: Dir,
        last: bool,
        left_obj: &dyn Fn(usize) -> C::Obj,
        left_vert: &dyn Fn(usize) -> C::Mor,
        done: &mut dyn FnMut(&mut Self, &[(C::Mor, C::Obj, Option<C::Mor>)]) -> Result<()>,
    ) -> Result<()> {
        let r = rows.len();
        if r == n + 1 {
            return done(self, rows);
        }
        let x = left_obj(r);
        let candidates: Vec<C::Obj> = if last { alloc::vec![self.target.clone()] } else { self.objects.to_vec() };
        for y in candidates {
            let labels = match dir {
                Dir::Right => self.cat.hom(&x, &y)?,
                Dir::Left => self.cat.w_hom(&y, &x)?,
            };
            let verticals: Vec<Option<C::Mor>> = if r == 0 {
                alloc::vec![None]
            } else if last {
                alloc::vec![Some(self.cat.identity(&y))]
            } else {
                let prev = &rows[r - 1].1;
                self.cat.w_hom(prev, &y)?.into_iter().map(Some).collect()
            };
            if r > 0 && last && rows[r - 1].1 != y {
                continue;
            }
            for v in &verticals {
                for f in &labels {
                    if let Some(v) = v {
                        let (f0, vl) = (&rows[r - 1].0, left_vert(r - 1));
                        let ok = match dir {
                            Dir::Right => self.cat.compose(f0, v)? == self.cat.compose(&vl, f)?,
                            Dir::Left => self.cat.compose(f0, &vl)? == self.cat.compose(v, f)?,
                        };
                        if !ok {
                            continue;
                        }
                    }
                    rows.push((f.clone(), y.clone(), v.clone()));
                    self.rows(rows, n, dir, last, left_obj, left_vert, done)?;
                    rows.pop();
                }
            }
        }
        Ok(())
    }
}
