use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::{canonicalize, th_face, Kind, Node, TreeHammock};
use crate::operad::{Op, OperadTable};
use crate::perm::Permutation;
use crate::unionfind::UnionFind;
use crate::{Error, Result};

/// Verticals at the root and at labeled leaves.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Boundary {
    /// Any element of `W`.
    Free,
    /// The unit, as for hammocks between fixed objects.
    #[default]
    Identity,
}

#[derive(Clone, Debug)]
pub struct ThBounds {
    pub height: usize,
    pub max_pieces: usize,
    pub boundary: Boundary,
    /// Allow leaves without a label (inputs discarded by the tree).
    pub unlabeled_leaves: bool,
    /// Only reduced hammocks; otherwise every hammock up to the bounds,
    /// canonicalized for child order but not reduced.
    pub reduced_only: bool,
    pub max_results: usize,
}

impl Default for ThBounds {
    fn default() -> Self {
        ThBounds {
            height: 0,
            max_pieces: 3,
            boundary: Boundary::Identity,
            unlabeled_leaves: false,
            reduced_only: true,
            max_results: 1_000_000,
        }
    }
}

const LABELED: usize = usize::MAX;

/// All tree hammocks of arity `n` within the bounds, sorted.
pub fn th_enumerate(op: &OperadTable, n: usize, bounds: &ThBounds) -> Result<Vec<TreeHammock>> {
    let mut found = BTreeSet::new();
    for (shape, _, leaves) in shapes(op, bounds.max_pieces, None, n, bounds) {
        if leaves != n {
            continue;
        }
        if shape.piece.is_none() && shape.leaf.is_none() && n != 0 {
            continue;
        }
        for sigma in Permutation::all(n) {
            let mut labeled = shape.clone();
            let mut next = 0;
            labeled.walk_mut(&mut |x| {
                if x.leaf == Some(LABELED) {
                    x.leaf = Some(sigma.apply(next));
                    next += 1;
                }
            });
            Search::new(op, &labeled, bounds, n).run(&mut found)?;
        }
    }
    Ok(found.into_iter().collect())
}

/// Piece trees with at most `budget` pieces and at most `max_leaves` labeled
/// leaves, as (shape, pieces, labeled leaves). Labeled leaves carry the
/// placeholder `LABELED`.
fn shapes(op: &OperadTable, budget: usize, parent: Option<Kind>, max_leaves: usize, b: &ThBounds) -> Vec<(Node, usize, usize)> {
    let mut out = Vec::new();
    if max_leaves > 0 {
        out.push((Node::leaf(Some(LABELED), Vec::new()), 0, 1));
    }
    if b.unlabeled_leaves {
        out.push((Node::leaf(None, Vec::new()), 0, 0));
    }
    if budget == 0 {
        return out;
    }
    for kind in [Kind::Forward, Kind::Backward] {
        if b.reduced_only && parent == Some(kind) {
            continue;
        }
        let arities: Vec<usize> = match kind {
            Kind::Forward => (0..=op.max_arity()).filter(|&m| op.size(m) > 0).collect(),
            Kind::Backward => alloc::vec![1],
        };
        for m in arities {
            for (children, pieces, leaves) in sequences(op, m, budget - 1, kind, max_leaves, b) {
                let node = Node::with_piece(Vec::new(), kind, Vec::new(), children);
                out.push((node, pieces + 1, leaves));
            }
        }
    }
    out
}

fn sequences(op: &OperadTable, m: usize, budget: usize, parent: Kind, max_leaves: usize, b: &ThBounds) -> Vec<(Vec<Node>, usize, usize)> {
    if m == 0 {
        return alloc::vec![(Vec::new(), 0, 0)];
    }
    let mut out = Vec::new();
    for (first, p, l) in shapes(op, budget, Some(parent), max_leaves, b) {
        for (mut rest, p2, l2) in sequences(op, m - 1, budget - p, parent, max_leaves - l, b) {
            rest.insert(0, first.clone());
            out.push((rest, p + p2, l + l2));
        }
    }
    out
}

/// Backtracking over plane labels and verticals of one labeled shape.
struct Search<'a> {
    op: &'a OperadTable,
    bounds: &'a ThBounds,
    arity: usize,
    /// Preorder nodes: piece kind, child indices, leaf label, fixed boundary.
    kinds: Vec<Option<Kind>>,
    children: Vec<Vec<usize>>,
    leaf: Vec<Option<usize>>,
    fixed: Vec<bool>,
    pieces: Vec<usize>,
    labels: Vec<Vec<Op>>,
    verts: Vec<Vec<Op>>,
    by_arity: BTreeMap<usize, Vec<Op>>,
    w: Vec<Op>,
}

impl<'a> Search<'a> {
    fn new(op: &'a OperadTable, shape: &Node, bounds: &'a ThBounds, arity: usize) -> Self {
        let mut s = Search {
            op,
            bounds,
            arity,
            kinds: Vec::new(),
            children: Vec::new(),
            leaf: Vec::new(),
            fixed: Vec::new(),
            pieces: Vec::new(),
            labels: Vec::new(),
            verts: Vec::new(),
            by_arity: BTreeMap::new(),
            w: op.elements(1).filter(|&x| op.in_w(x)).collect(),
        };
        s.flatten(shape, true);
        for &p in &s.pieces {
            let m = s.children[p].len();
            s.by_arity.entry(m).or_insert_with(|| op.elements(m).collect());
        }
        s.labels = alloc::vec![Vec::new(); s.kinds.len()];
        s.verts = alloc::vec![Vec::new(); s.kinds.len()];
        s
    }

    fn flatten(&mut self, n: &Node, root: bool) -> usize {
        let idx = self.kinds.len();
        self.kinds.push(n.piece.as_ref().map(|p| p.kind));
        self.children.push(Vec::new());
        self.leaf.push(n.leaf);
        self.fixed.push(self.bounds.boundary == Boundary::Identity && (root || n.leaf.is_some()));
        if let Some(p) = &n.piece {
            self.pieces.push(idx);
            let kids: Vec<usize> = p.children.iter().map(|c| self.flatten(c, false)).collect();
            self.children[idx] = kids;
        }
        idx
    }

    fn candidates(&self, p: usize) -> Vec<Op> {
        match self.kinds[p] {
            Some(Kind::Forward) => self.by_arity[&self.children[p].len()].clone(),
            _ => self.w.clone(),
        }
    }

    fn run(&mut self, found: &mut BTreeSet<TreeHammock>) -> Result<()> {
        self.plane_zero(0, found)
    }

    fn plane_zero(&mut self, i: usize, found: &mut BTreeSet<TreeHammock>) -> Result<()> {
        if i == self.pieces.len() {
            return self.level(0, 0, found);
        }
        let p = self.pieces[i];
        for c in self.candidates(p) {
            self.labels[p].push(c);
            self.plane_zero(i + 1, found)?;
            self.labels[p].pop();
        }
        Ok(())
    }

    /// Chooses the vertical of `node` at level `j`.
    fn level(&mut self, j: usize, node: usize, found: &mut BTreeSet<TreeHammock>) -> Result<()> {
        if j == self.bounds.height {
            return self.emit(found);
        }
        if node == self.kinds.len() {
            return self.next_plane(j, 0, found);
        }
        let options = if self.fixed[node] { alloc::vec![self.op.unit()] } else { self.w.clone() };
        for v in options {
            self.verts[node].push(v);
            self.level(j, node + 1, found)?;
            self.verts[node].pop();
        }
        Ok(())
    }

    /// Solves for the plane `j + 1` label of the `i`-th piece.
    fn next_plane(&mut self, j: usize, i: usize, found: &mut BTreeSet<TreeHammock>) -> Result<()> {
        if i == self.pieces.len() {
            return self.level(j + 1, 0, found);
        }
        let p = self.pieces[i];
        let upper = self.labels[p][j];
        let (lhs, source) = match self.kinds[p] {
            Some(Kind::Forward) => {
                let targets: Vec<Op> = self.children[p].iter().map(|&c| self.verts[c][j]).collect();
                (self.op.gamma(upper, &targets)?, self.verts[p][j])
            }
            _ => (self.op.mul(upper, self.verts[p][j])?, self.verts[self.children[p][0]][j]),
        };
        for c in self.candidates(p) {
            if self.op.gamma(source, &[c])? == lhs {
                self.labels[p].push(c);
                self.next_plane(j, i + 1, found)?;
                self.labels[p].pop();
            }
        }
        Ok(())
    }

    fn build(&self, idx: usize) -> Node {
        let verticals = self.verts[idx].clone();
        match self.kinds[idx] {
            None => Node::leaf(self.leaf[idx], verticals),
            Some(kind) => {
                let kids = self.children[idx].iter().map(|&c| self.build(c)).collect();
                Node::with_piece(verticals, kind, self.labels[idx].clone(), kids)
            }
        }
    }

    fn emit(&self, found: &mut BTreeSet<TreeHammock>) -> Result<()> {
        if self.bounds.reduced_only {
            let identity = self.pieces.iter().any(|&p| self.children[p].len() == 1 && self.labels[p].iter().all(|&l| self.op.is_unit(l)));
            if identity {
                return Ok(());
            }
        }
        let h = TreeHammock { arity: self.arity, height: self.bounds.height, root: self.build(0) };
        found.insert(canonicalize(self.op, &h)?);
        if found.len() > self.bounds.max_results {
            return Err(Error::Resource(alloc::format!("more than {} hammocks", self.bounds.max_results)));
        }
        Ok(())
    }
}

/// Connected components of the height-0 hammocks within the bounds, joined
/// by the faces of the height-1 hammocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pi0 {
    pub classes: Vec<Vec<TreeHammock>>,
}

impl Pi0 {
    pub fn count(&self) -> usize {
        self.classes.len()
    }

    /// The index of the class containing `h`.
    pub fn class_of(&self, h: &TreeHammock) -> Option<usize> {
        self.classes.iter().position(|c| c.binary_search(h).is_ok())
    }
}

/// `π₀` of the arity-`n` part, truncated by `bounds` (its height is ignored).
/// A face leaving the height-0 set is an error, since the truncation would
/// otherwise silently drop a relation.
pub fn th_pi0(op: &OperadTable, n: usize, bounds: &ThBounds) -> Result<Pi0> {
    let b0 = ThBounds { height: 0, reduced_only: true, ..bounds.clone() };
    let b1 = ThBounds { height: 1, ..b0.clone() };
    let vertices = th_enumerate(op, n, &b0)?;
    let edges = th_enumerate(op, n, &b1)?;
    let mut uf = UnionFind::new(vertices.len());
    for e in &edges {
        let ends = [th_face(op, e, 0)?, th_face(op, e, 1)?];
        let idx = ends
            .iter()
            .map(|f| vertices.binary_search(f).map_err(|_| Error::Resource(alloc::format!("face {} exceeds the bounds", f.display(op)))))
            .collect::<Result<Vec<_>>>()?;
        uf.union(idx[0], idx[1]);
    }
    let classes = uf.classes().into_iter().map(|c| c.into_iter().map(|i| vertices[i].clone()).collect()).collect();
    Ok(Pi0 { classes })
}
