//! Bridges between Dwyer–Kan hammocks and tree hammocks: the monoid case,
//! where both sides are words of forward and backward arrows, and the
//! reduction functor `R` from hammocks over `C_O` with source `1` to tree
//! hammocks.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::category::{Category, FiniteCategory};
use crate::dk::{Chain, Column, Dir, DkHammock};
use crate::operad::{Op, OperadTable};
use crate::perm::Permutation;
use crate::smc::SmcMorphism;
use crate::tree::{canonicalize, th_reduce, validate_hammock, Kind, Node, TreeHammock};
use crate::{Error, Result};

fn monoid_op(op: &OperadTable, cat: &FiniteCategory, f: usize) -> Result<Op> {
    let name = cat.mor_name(&f);
    op.lookup(1, &name).ok_or_else(|| Error::Invalid(alloc::format!("{name} is not a unary operation")))
}

/// A hammock over a one-object category becomes the arity-one tree hammock
/// over `M_+` that reads the same word: right columns are `Forward(1)`
/// pieces, left columns `Backward` pieces, chains become the intermediate
/// nodes, and the root and leaf carry identity verticals. Morphisms are
/// matched to unary operations by name.
pub fn monoid_hammock_to_tree(op: &OperadTable, cat: &FiniteCategory, h: &DkHammock<usize, usize>) -> Result<TreeHammock> {
    if cat.object_count() != 1 {
        return Err(Error::Unsupported(alloc::format!("{} objects", cat.object_count())));
    }
    let k = h.height;
    let units = alloc::vec![op.unit(); k];
    let mut node = Node::leaf(Some(0), units.clone());
    for (j, col) in h.columns.iter().enumerate().rev() {
        let verticals = if j == 0 {
            units.clone()
        } else {
            h.chains[j - 1].verticals.iter().map(|&v| monoid_op(op, cat, v)).collect::<Result<Vec<_>>>()?
        };
        let kind = match col.dir {
            Dir::Right => Kind::Forward,
            Dir::Left => Kind::Backward,
        };
        let labels = col.labels.iter().map(|&f| monoid_op(op, cat, f)).collect::<Result<Vec<_>>>()?;
        node = Node::with_piece(verticals, kind, labels, alloc::vec![node]);
    }
    canonicalize(op, &TreeHammock { arity: 1, height: k, root: node })
}

/// Inverse of [`monoid_hammock_to_tree`] on arity-one hammocks built from
/// unary pieces with identity boundary verticals.
pub fn tree_to_monoid_hammock(op: &OperadTable, cat: &FiniteCategory, t: &TreeHammock) -> Result<DkHammock<usize, usize>> {
    if cat.object_count() != 1 || t.arity != 1 {
        return Err(Error::Unsupported("only arity one over a one-object category".into()));
    }
    let morphism = |x: Op| -> Result<usize> {
        let name = op.name(x);
        cat.lookup(name).ok_or_else(|| Error::Invalid(alloc::format!("{name} is not a morphism")))
    };
    let mut out = DkHammock::empty(0, t.height);
    let mut node = &t.root;
    if !node.verticals.iter().all(|&v| op.is_unit(v)) {
        return Err(Error::Unsupported("root verticals are not identities".into()));
    }
    while let Some(p) = &node.piece {
        if p.children.len() != 1 {
            return Err(Error::Unsupported(alloc::format!("piece with {} children", p.children.len())));
        }
        let dir = match p.kind {
            Kind::Forward => Dir::Right,
            Kind::Backward => Dir::Left,
        };
        out.columns.push(Column { dir, labels: p.labels.iter().map(|&l| morphism(l)).collect::<Result<Vec<_>>>()? });
        node = &p.children[0];
        if node.piece.is_some() {
            let verticals = node.verticals.iter().map(|&v| morphism(v)).collect::<Result<Vec<_>>>()?;
            out.chains.push(Chain { objects: alloc::vec![0; t.height + 1], verticals });
        }
    }
    if node.leaf != Some(0) || !node.verticals.iter().all(|&v| op.is_unit(v)) {
        return Err(Error::Unsupported("the path does not end at leaf 1 with identity verticals".into()));
    }
    Ok(out)
}

/// Coordinates of one hammock node with its chain verticals.
struct Level {
    size: usize,
    /// `verticals[x][r]` for coordinate `x` at level `r`.
    verticals: Vec<Vec<Op>>,
}

/// The reduction functor on hammocks `1 ⇝ n` over `C_O` with `W`-part
/// `C_{W_+}`: every coordinate of every node becomes a tree node, a right
/// column contributes one `Forward(k)` piece per source coordinate and a
/// left column one `Backward` piece per target coordinate. The result is
/// reduced.
///
/// Unsupported: other sources, chains whose objects vary along the rows or
/// whose verticals permute coordinates, and left columns with nullary
/// components (the coordinate would have no parent).
pub fn r_functor(op: &OperadTable, h: &DkHammock<usize, SmcMorphism>) -> Result<TreeHammock> {
    if h.source != 1 {
        return Err(Error::Unsupported(alloc::format!("source object {}", h.source)));
    }
    let k = h.height;
    let mut levels = Vec::with_capacity(h.columns.len() + 1);
    levels.push(Level { size: 1, verticals: alloc::vec![alloc::vec![op.unit(); k]] });
    for ch in &h.chains {
        let size = ch.objects[0];
        if ch.objects.iter().any(|&o| o != size) {
            return Err(Error::Unsupported("chain objects vary along the rows".into()));
        }
        let mut verticals = alloc::vec![Vec::with_capacity(k); size];
        for v in &ch.verticals {
            if !v.perm.is_identity() || v.components.iter().any(|c| c.arity() != 1) {
                return Err(Error::Unsupported("vertical moves coordinates".into()));
            }
            for (x, &c) in v.components.iter().enumerate() {
                verticals[x].push(c);
            }
        }
        levels.push(Level { size, verticals });
    }
    levels.push(Level { size: h.target, verticals: alloc::vec![alloc::vec![op.unit(); k]; h.target] });

    // pieces[(j, x)]: the piece owned by coordinate x of node j
    let mut pieces: BTreeMap<(usize, usize), (Kind, Vec<Op>, Vec<usize>)> = BTreeMap::new();
    for (j, col) in h.columns.iter().enumerate() {
        match col.dir {
            Dir::Right => right_pieces(op, j, col, &mut pieces)?,
            Dir::Left => left_pieces(j, col, levels[j].size, &mut pieces)?,
        }
    }
    fn build(j: usize, x: usize, levels: &[Level], pieces: &BTreeMap<(usize, usize), (Kind, Vec<Op>, Vec<usize>)>) -> Node {
        let verticals = levels[j].verticals[x].clone();
        match pieces.get(&(j, x)) {
            None => Node::leaf(Some(x), verticals),
            Some((kind, labels, children)) => {
                let kids = children.iter().map(|&c| build(j + 1, c, levels, pieces)).collect();
                Node::with_piece(verticals, *kind, labels.clone(), kids)
            }
        }
    }
    let t = TreeHammock { arity: h.target, height: k, root: build(0, 0, &levels, &pieces) };
    th_reduce(op, &t)
}

fn children_of(f: &SmcMorphism) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(f.source);
    let mut offset = 0;
    for c in &f.components {
        out.push((offset..offset + c.arity()).map(|p| f.perm.apply(p)).collect());
        offset += c.arity();
    }
    out
}

fn right_pieces(op: &OperadTable, j: usize, col: &Column<SmcMorphism>, pieces: &mut BTreeMap<(usize, usize), (Kind, Vec<Op>, Vec<usize>)>) -> Result<()> {
    let top = &col.labels[0];
    let order = children_of(top);
    for (q, children) in order.iter().enumerate() {
        let mut labels = Vec::with_capacity(col.labels.len());
        for f in &col.labels {
            let row = &children_of(f)[q];
            let rho = (row.len() == children.len())
                .then(|| row.iter().map(|y| children.iter().position(|z| z == y)).collect::<Option<Vec<_>>>())
                .flatten();
            let rho = rho.and_then(|r| Permutation::from_images(r).ok()).ok_or_else(|| {
                Error::NonCommuting(alloc::format!("component {q} of column {j} changes its outputs between rows"))
            })?;
            labels.push(op.act(f.components[q], &rho)?);
        }
        pieces.insert((j, q), (Kind::Forward, labels, children.clone()));
    }
    Ok(())
}

fn left_pieces(j: usize, col: &Column<SmcMorphism>, owners: usize, pieces: &mut BTreeMap<(usize, usize), (Kind, Vec<Op>, Vec<usize>)>) -> Result<()> {
    // owner y at node j ← child x at node j + 1
    let mut child_of: Vec<Option<usize>> = alloc::vec![None; owners];
    let mut labels: Vec<Vec<Op>> = alloc::vec![Vec::new(); owners];
    for (r, g) in col.labels.iter().enumerate() {
        let targets = children_of(g);
        for (x, t) in targets.iter().enumerate() {
            let [y] = t[..] else {
                return Err(Error::Unsupported(alloc::format!("left column {j} has a component of arity {}", t.len())));
            };
            match child_of[y] {
                None if r == 0 => child_of[y] = Some(x),
                Some(c) if c == x => {}
                _ => return Err(Error::NonCommuting(alloc::format!("left column {j} rewires coordinate {y} between rows"))),
            }
            labels[y].push(g.components[x]);
        }
    }
    for (y, (c, l)) in child_of.into_iter().zip(labels).enumerate() {
        let c = c.ok_or_else(|| Error::Invalid(alloc::format!("coordinate {y} of node {j} has no child")))?;
        pieces.insert((j, y), (Kind::Backward, l, alloc::vec![c]));
    }
    Ok(())
}

/// A tree hammock whose labeled leaves all lie the same number of pieces
/// below the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeodesicHammock {
    hammock: TreeHammock,
    length: usize,
}

impl GeodesicHammock {
    /// Checks the geodesic condition and commutativity (not reducedness).
    pub fn new(op: &OperadTable, hammock: TreeHammock) -> Result<Self> {
        let g = hammock.geodesics();
        let length = g.first().copied().unwrap_or(0);
        if g.iter().any(|&d| d != length) {
            return Err(Error::Invalid(alloc::format!("geodesic lengths {g:?}")));
        }
        let report = validate_hammock(op, &hammock, false);
        if !report.passed() {
            return Err(Error::NonCommuting(alloc::format!("{report}")));
        }
        Ok(GeodesicHammock { hammock, length })
    }

    pub fn hammock(&self) -> &TreeHammock {
        &self.hammock
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn into_inner(self) -> TreeHammock {
        self.hammock
    }
}

/// Lengthens short branches with identity `Forward(1)` pieces placed just
/// above their labeled leaves, copying the leaf verticals.
pub fn pad_to_equal_geodesics(op: &OperadTable, h: &TreeHammock) -> Result<GeodesicHammock> {
    let g = h.geodesics();
    let longest = g.iter().copied().max().unwrap_or(0);
    let mut out = h.clone();
    let ids = alloc::vec![op.unit(); h.height + 1];
    fn pad(n: &mut Node, g: &[usize], longest: usize, ids: &[Op]) {
        if let Some(p) = &mut n.piece {
            for c in &mut p.children {
                pad(c, g, longest, ids);
            }
            return;
        }
        let Some(l) = n.leaf else { return };
        for _ in g[l]..longest {
            let child = n.clone();
            *n = Node::with_piece(child.verticals.clone(), Kind::Forward, ids.to_vec(), alloc::vec![child]);
        }
    }
    pad(&mut out.root, &g, longest, &ids);
    GeodesicHammock::new(op, out)
}
