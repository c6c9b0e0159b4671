//! Tree hammocks and the tree hammock localization `L^TH_W O`.
//!
//! A tree hammock of height `k` is a planar rooted tree built from atomic
//! pieces, `Forward(m)` (one node to `m` ordered children) and `Backward`
//! (one child pointing back to its parent), copied onto planes `0..=k` (top
//! to bottom). Every piece carries one operad label per plane and every node
//! one vertical `W`-label per level `0..k`, where level `j` joins plane `j` to
//! plane `j + 1`. The square of a piece at level `j` reads
//!
//! ```text
//! γ(label_j; vert_j(t_1), …, vert_j(t_m)) = γ(vert_j(s); label_{j+1})
//! ```
//!
//! with `s` the source node and `t_i` the targets: for `Forward` the owner is
//! the source and the children are the targets, for `Backward` the child is
//! the source and the owner the target.
//!
//! Hammocks are stored in canonical form: reduced, and at every `Forward`
//! piece the child order is the least one modulo
//! `(L·π; y_{π⁻¹(1)}, …, y_{π⁻¹(m)}) ~ (L; y_1, …, y_m)`, which is the
//! relation making the inclusion `O → L^TH_W O` equivariant.

mod enumerate;
mod ops;
mod reduce;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use enumerate::{th_enumerate, th_pi0, Boundary, Pi0, ThBounds};
pub use ops::{unary_piece,
    include_operad, invertibility_witnesses, th_degeneracy, th_face, th_graft, th_induced_map, th_sigma_action,
    GraftStrategy,
};
pub use reduce::{th_apply, th_redexes, th_reduce, th_reduce_with, Redex, Rule};

use crate::operad::{Op, OperadTable};
use crate::perm::Permutation;
use crate::report::AxiomReport;
use crate::Result;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Kind {
    Forward,
    Backward,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Piece {
    pub kind: Kind,
    /// One label per plane.
    pub labels: Vec<Op>,
    /// `Forward(m)`: `m` children; `Backward`: exactly one.
    pub children: Vec<Node>,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Node {
    /// One vertical per level.
    pub verticals: Vec<Op>,
    /// 0-based leaf label; only on nodes without a piece.
    pub leaf: Option<usize>,
    pub piece: Option<Piece>,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TreeHammock {
    pub arity: usize,
    pub height: usize,
    pub root: Node,
}

impl Node {
    pub fn leaf(label: Option<usize>, verticals: Vec<Op>) -> Self {
        Node { verticals, leaf: label, piece: None }
    }

    pub fn with_piece(verticals: Vec<Op>, kind: Kind, labels: Vec<Op>, children: Vec<Node>) -> Self {
        Node { verticals, leaf: None, piece: Some(Piece { kind, labels, children }) }
    }

    pub fn piece_count(&self) -> usize {
        self.piece.as_ref().map_or(0, |p| 1 + p.children.iter().map(Node::piece_count).sum::<usize>())
    }

    pub fn node_count(&self) -> usize {
        1 + self.piece.as_ref().map_or(0, |p| p.children.iter().map(Node::node_count).sum::<usize>())
    }

    /// Preorder traversal.
    pub fn walk<'a>(&'a self, f: &mut dyn FnMut(&'a Node)) {
        f(self);
        if let Some(p) = &self.piece {
            for c in &p.children {
                c.walk(f);
            }
        }
    }

    pub fn walk_mut(&mut self, f: &mut dyn FnMut(&mut Node)) {
        f(self);
        if let Some(p) = &mut self.piece {
            for c in &mut p.children {
                c.walk_mut(f);
            }
        }
    }

    pub fn at(&self, path: &[usize]) -> &Node {
        match path.split_first() {
            None => self,
            Some((&i, rest)) => self.piece.as_ref().expect("path through a leaf").children[i].at(rest),
        }
    }

    pub fn at_mut(&mut self, path: &[usize]) -> &mut Node {
        match path.split_first() {
            None => self,
            Some((&i, rest)) => self.piece.as_mut().expect("path through a leaf").children[i].at_mut(rest),
        }
    }

    /// Path to the leaf labeled `label`.
    pub fn find_leaf(&self, label: usize) -> Option<Vec<usize>> {
        if self.leaf == Some(label) {
            return Some(Vec::new());
        }
        let p = self.piece.as_ref()?;
        for (i, c) in p.children.iter().enumerate() {
            if let Some(mut path) = c.find_leaf(label) {
                path.insert(0, i);
                return Some(path);
            }
        }
        None
    }
}

impl TreeHammock {
    /// The identity simplex of height `k` in arity one: a bare labeled root
    /// with the given verticals (identities for the operad unit).
    pub fn bare(verticals: Vec<Op>) -> Self {
        TreeHammock { arity: 1, height: verticals.len(), root: Node::leaf(Some(0), verticals) }
    }

    pub fn identity(op: &OperadTable, height: usize) -> Self {
        Self::bare(alloc::vec![op.unit(); height])
    }

    pub fn piece_count(&self) -> usize {
        self.root.piece_count()
    }

    pub fn is_bare(&self) -> bool {
        self.root.piece.is_none()
    }

    pub fn display<'a>(&'a self, op: &'a OperadTable) -> impl fmt::Display + 'a {
        DisplayTree { op, h: self }
    }

    /// Number of pieces on the path from the root to each labeled leaf,
    /// indexed by label.
    pub fn geodesics(&self) -> Vec<usize> {
        let mut out = alloc::vec![0; self.arity];
        fn go(n: &Node, depth: usize, out: &mut Vec<usize>) {
            if let Some(l) = n.leaf {
                if l < out.len() {
                    out[l] = depth;
                }
            }
            if let Some(p) = &n.piece {
                for c in &p.children {
                    go(c, depth + 1, out);
                }
            }
        }
        go(&self.root, 0, &mut out);
        out
    }
}

struct DisplayTree<'a> {
    op: &'a OperadTable,
    h: &'a TreeHammock,
}

fn fmt_node(op: &OperadTable, n: &Node, out: &mut String) {
    match &n.piece {
        None => match n.leaf {
            Some(l) => out.push_str(&alloc::format!("#{}", l + 1)),
            None => out.push('_'),
        },
        Some(p) => {
            out.push(match p.kind {
                Kind::Forward => 'F',
                Kind::Backward => 'B',
            });
            out.push('(');
            out.push_str(&op.names_of(&p.labels).replace(',', "|"));
            out.push(')');
            out.push('[');
            for (i, c) in p.children.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                fmt_node(op, c, out);
            }
            out.push(']');
        }
    }
    if !n.verticals.is_empty() {
        out.push('^');
        out.push_str(&op.names_of(&n.verticals).replace(',', "|"));
    }
}

impl fmt::Display for DisplayTree<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        fmt_node(self.op, &self.h.root, &mut s);
        f.write_str(&s)
    }
}

/// Checks the tree hammock conditions. With `require_reduced` also checks
/// alternation and that no `Forward(1)` or `Backward` piece is labeled by
/// identities on every plane.
pub fn validate_hammock(op: &OperadTable, h: &TreeHammock, require_reduced: bool) -> AxiomReport {
    let mut report = AxiomReport::new();
    let mut seen = alloc::vec![false; h.arity];
    check_node(op, h, &h.root, None, &mut Vec::new(), require_reduced, &mut seen, &mut report);
    if let Some(l) = seen.iter().position(|s| !s) {
        report.push("leaf-labels", alloc::format!("label {} is missing", l + 1));
    }
    if h.root.piece.is_none() && h.root.leaf.is_none() && h.arity != 0 {
        report.push("leaf-labels", "bare unlabeled root");
    }
    report
}

#[allow(clippy::too_many_arguments)]
fn check_node(
    op: &OperadTable,
    h: &TreeHammock,
    n: &Node,
    parent_kind: Option<Kind>,
    path: &mut Vec<usize>,
    reduced: bool,
    seen: &mut [bool],
    report: &mut AxiomReport,
) {
    let at = |path: &[usize]| alloc::format!("node {path:?}");
    if n.verticals.len() != h.height {
        report.push("shape", alloc::format!("{} has {} verticals", at(path), n.verticals.len()));
        return;
    }
    for (j, &v) in n.verticals.iter().enumerate() {
        if v.arity() != 1 || !op.contains(v) || !op.in_w(v) {
            report.push("membership", alloc::format!("{} vertical {j}", at(path)));
        }
    }
    let Some(p) = &n.piece else {
        if let Some(l) = n.leaf {
            if l >= h.arity || seen[l] {
                report.push("leaf-labels", alloc::format!("{} label {}", at(path), l + 1));
            } else {
                seen[l] = true;
            }
        }
        return;
    };
    if n.leaf.is_some() {
        report.push("shape", alloc::format!("{} carries a piece and a leaf label", at(path)));
    }
    if p.labels.len() != h.height + 1 {
        report.push("shape", alloc::format!("{} has {} plane labels", at(path), p.labels.len()));
        return;
    }
    let m = p.children.len();
    match p.kind {
        Kind::Forward => {
            if p.labels.iter().any(|l| l.arity() != m || !op.contains(*l)) {
                report.push("shape", alloc::format!("{} Forward({m}) label of wrong arity", at(path)));
                return;
            }
        }
        Kind::Backward => {
            if m != 1 {
                report.push("shape", alloc::format!("{} Backward piece with {m} children", at(path)));
                return;
            }
            for (j, &l) in p.labels.iter().enumerate() {
                if l.arity() != 1 || !op.contains(l) || !op.in_w(l) {
                    report.push("membership", alloc::format!("{} Backward label on plane {j}", at(path)));
                }
            }
        }
    }
    if reduced {
        if parent_kind == Some(p.kind) {
            report.push("alternation", alloc::format!("{} repeats the direction of its parent piece", at(path)));
        }
        if m == 1 && p.labels.iter().all(|&l| op.is_unit(l)) {
            report.push("identity-column", at(path));
        }
    }
    // children with malformed verticals are reported when visited
    if p.children.iter().all(|c| c.verticals.len() == h.height) {
        for j in 0..h.height {
            let ok = match p.kind {
                Kind::Forward => {
                    let targets: Vec<Op> = p.children.iter().map(|c| c.verticals[j]).collect();
                    square(op, p.labels[j], &targets, n.verticals[j], p.labels[j + 1])
                }
                Kind::Backward => square(op, p.labels[j], &[n.verticals[j]], p.children[0].verticals[j], p.labels[j + 1]),
            };
            if !ok {
                report.push("commutativity", alloc::format!("{} level {j}", at(path)));
            }
        }
    }
    for (i, c) in p.children.iter().enumerate() {
        path.push(i);
        check_node(op, h, c, Some(p.kind), path, reduced, seen, report);
        path.pop();
    }
}

fn square(op: &OperadTable, upper: Op, targets: &[Op], source: Op, lower: Op) -> bool {
    match (op.gamma(upper, targets), op.gamma(source, &[lower])) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}

/// Puts every `Forward` piece into its least child order, bottom up.
pub fn canonicalize(op: &OperadTable, h: &TreeHammock) -> Result<TreeHammock> {
    let mut out = h.clone();
    canonicalize_node(op, &mut out.root)?;
    Ok(out)
}

fn canonicalize_node(op: &OperadTable, n: &mut Node) -> Result<()> {
    let Some(p) = &mut n.piece else { return Ok(()) };
    for c in &mut p.children {
        canonicalize_node(op, c)?;
    }
    let m = p.children.len();
    if p.kind != Kind::Forward || m < 2 {
        return Ok(());
    }
    let mut best: Option<Piece> = None;
    for pi in Permutation::all(m) {
        let inv = pi.inverse();
        let labels = p.labels.iter().map(|&l| op.act(l, &pi)).collect::<Result<Vec<_>>>()?;
        let children = (0..m).map(|t| p.children[inv.apply(t)].clone()).collect();
        let cand = Piece { kind: Kind::Forward, labels, children };
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    }
    *p = best.expect("Σ_m is never empty");
    Ok(())
}

#[cfg(test)]
mod tests;
