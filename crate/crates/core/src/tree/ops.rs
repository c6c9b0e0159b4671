use alloc::vec::Vec;

use super::{th_reduce, Kind, Node, TreeHammock};
use crate::operad::{Op, OperadMap, OperadTable};
use crate::perm::Permutation;
use crate::{Error, Result};

/// Deletes plane `i`; the two verticals it separated compose nodewise as
/// `γ(upper; lower)`. The result is reduced.
pub fn th_face(op: &OperadTable, h: &TreeHammock, i: usize) -> Result<TreeHammock> {
    if h.height == 0 || i > h.height {
        return Err(Error::IndexOutOfRange { index: i, bound: h.height });
    }
    let k = h.height;
    let mut out = h.clone();
    out.height -= 1;
    let mut failure = None;
    out.root.walk_mut(&mut |n| {
        if let Some(p) = &mut n.piece {
            p.labels.remove(i);
        }
        if i == 0 {
            n.verticals.remove(0);
        } else if i == k {
            n.verticals.remove(k - 1);
        } else {
            match op.mul(n.verticals[i - 1], n.verticals[i]) {
                Ok(v) => n.verticals[i - 1] = v,
                Err(e) => failure = Some(e),
            }
            n.verticals.remove(i);
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    th_reduce(op, &out)
}

/// Repeats plane `i` with identity verticals between the copies.
pub fn th_degeneracy(op: &OperadTable, h: &TreeHammock, i: usize) -> Result<TreeHammock> {
    if i > h.height {
        return Err(Error::IndexOutOfRange { index: i, bound: h.height });
    }
    let mut out = h.clone();
    out.height += 1;
    let u = op.unit();
    out.root.walk_mut(&mut |n| {
        if let Some(p) = &mut n.piece {
            let l = p.labels[i];
            p.labels.insert(i, l);
        }
        n.verticals.insert(i, u);
    });
    th_reduce(op, &out)
}

/// How grafting treats the two vertical chains meeting at the junction.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum GraftStrategy {
    /// Identify the chains; they must agree.
    Strict,
    /// Insert a `Backward` piece and a `Forward(1)` piece around an
    /// identity chain so that any two chains can be joined.
    #[default]
    Expansion,
}

/// `h1 ∘_i h2` with a 0-based slot `i`: the leaf of `h1` labeled `i` is
/// identified with the root of `h2`. Leaves of `h2` take labels
/// `i..i + m`, later leaves of `h1` shift up by `m - 1`.
pub fn th_graft(op: &OperadTable, h1: &TreeHammock, i: usize, h2: &TreeHammock, strategy: GraftStrategy) -> Result<TreeHammock> {
    if h1.height != h2.height {
        return Err(Error::HeightMismatch { left: h1.height, right: h2.height });
    }
    if i >= h1.arity {
        return Err(Error::IndexOutOfRange { index: i + 1, bound: h1.arity });
    }
    let m = h2.arity;
    let path = h1.root.find_leaf(i).ok_or_else(|| Error::Invalid(alloc::format!("no leaf labeled {}", i + 1)))?;
    let mut out = h1.clone();
    out.arity = h1.arity + m - 1;
    out.root.walk_mut(&mut |n| {
        if let Some(l) = n.leaf {
            if l > i {
                n.leaf = Some(l + m - 1);
            }
        }
    });
    let mut lower = h2.root.clone();
    lower.walk_mut(&mut |n| {
        if let Some(l) = n.leaf {
            n.leaf = Some(l + i);
        }
    });
    let leaf = out.root.at_mut(&path);
    let v = leaf.verticals.clone();
    let u = lower.verticals.clone();
    match strategy {
        GraftStrategy::Strict => {
            if let Some(level) = (0..v.len()).find(|&j| v[j] != u[j]) {
                return Err(Error::JunctionMismatch { level });
            }
            *leaf = lower;
        }
        GraftStrategy::Expansion => {
            let k = h1.height;
            let mut t = alloc::vec![op.unit()];
            let mut s = alloc::vec![op.unit()];
            for j in 0..k {
                t.push(op.mul(t[j], v[j])?);
                s.push(op.mul(s[j], u[j])?);
            }
            let middle = Node::with_piece(alloc::vec![op.unit(); k], Kind::Forward, s, alloc::vec![lower]);
            *leaf = Node::with_piece(v, Kind::Backward, t, alloc::vec![middle]);
        }
    }
    th_reduce(op, &out)
}

/// Right action `h·σ`: the leaf labeled `l` is relabeled `σ(l)`.
pub fn th_sigma_action(op: &OperadTable, h: &TreeHammock, sigma: &Permutation) -> Result<TreeHammock> {
    if sigma.degree() != h.arity {
        return Err(Error::Arity { expected: h.arity, found: sigma.degree() });
    }
    let mut out = h.clone();
    out.root.walk_mut(&mut |n| {
        if let Some(l) = n.leaf {
            n.leaf = Some(sigma.apply(l));
        }
    });
    super::canonicalize(op, &out)
}

/// The image of `c ∈ O(n)` under `O → L^TH_W O` at the given height: one
/// `Forward(n)` piece with identity verticals, reduced (so the unit gives
/// the bare root).
pub fn include_operad(op: &OperadTable, c: Op, height: usize) -> Result<TreeHammock> {
    if !op.contains(c) {
        return Err(Error::Invalid(alloc::format!("{c:?} is not an element")));
    }
    let n = c.arity();
    let ids = alloc::vec![op.unit(); height];
    let leaves = (0..n).map(|l| Node::leaf(Some(l), ids.clone())).collect();
    let h = TreeHammock {
        arity: n,
        height,
        root: Node::with_piece(ids.clone(), Kind::Forward, alloc::vec![c; height + 1], leaves),
    };
    th_reduce(op, &h)
}

/// The two height-one hammocks exhibiting grafting with `Backward(w)` as a
/// homotopy inverse of grafting with `Forward(w)`, reduced:
///
/// * first: `Backward` then `Forward(1)` with plane labels `(1, w)` each and
///   verticals `w, 1, w` from the root down;
/// * second: `Forward(1)` then `Backward` with plane labels `(w, 1)` each and
///   the same verticals.
pub fn invertibility_witnesses(op: &OperadTable, w: Op) -> Result<(TreeHammock, TreeHammock)> {
    if w.arity() != 1 || !op.in_w(w) {
        return Err(Error::NotInW(alloc::format!("{w:?}")));
    }
    let u = op.unit();
    let zigzag = |first: Kind, labels: Vec<Op>| {
        let second = match first {
            Kind::Forward => Kind::Backward,
            Kind::Backward => Kind::Forward,
        };
        let leaf = Node::leaf(Some(0), alloc::vec![w]);
        let middle = Node::with_piece(alloc::vec![u], second, labels.clone(), alloc::vec![leaf]);
        TreeHammock { arity: 1, height: 1, root: Node::with_piece(alloc::vec![w], first, labels, alloc::vec![middle]) }
    };
    let first = th_reduce(op, &zigzag(Kind::Backward, alloc::vec![u, w]))?;
    let second = th_reduce(op, &zigzag(Kind::Forward, alloc::vec![w, u]))?;
    Ok((first, second))
}

/// Height-zero hammock with a single `Forward(1)` or `Backward` piece.
pub fn unary_piece(op: &OperadTable, kind: Kind, label: Op) -> Result<TreeHammock> {
    let h = TreeHammock {
        arity: 1,
        height: 0,
        root: Node::with_piece(Vec::new(), kind, alloc::vec![label], alloc::vec![Node::leaf(Some(0), Vec::new())]),
    };
    th_reduce(op, &h)
}

/// Applies an operad map labelwise and reduces in the target.
pub fn th_induced_map(phi: &OperadMap, target: &OperadTable, h: &TreeHammock) -> Result<TreeHammock> {
    let mut out = h.clone();
    let mut bad = None;
    out.root.walk_mut(&mut |n| {
        for v in &mut n.verticals {
            *v = phi.apply(*v);
            if !target.in_w(*v) {
                bad = Some(*v);
            }
        }
        if let Some(p) = &mut n.piece {
            for l in &mut p.labels {
                *l = phi.apply(*l);
                if p.kind == Kind::Backward && !target.in_w(*l) {
                    bad = Some(*l);
                }
            }
        }
    });
    if let Some(b) = bad {
        return Err(Error::NotInW(alloc::format!("{}", target.name(b))));
    }
    th_reduce(target, &out)
}
