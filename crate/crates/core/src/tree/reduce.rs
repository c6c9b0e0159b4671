use alloc::vec::Vec;

use super::{canonicalize, validate_hammock, Kind, Node, Piece, TreeHammock};
use crate::operad::OperadTable;
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Rule {
    /// The node at the path owns a `Forward` piece below its parent's
    /// `Forward` piece; the two merge into the parent.
    MergeForward,
    /// Same for two `Backward` pieces.
    MergeBackward,
    /// The node at the path owns a `Forward(1)` or `Backward` piece labeled
    /// by identities on every plane; the piece is removed.
    DeleteIdentity,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Redex {
    pub path: Vec<usize>,
    pub rule: Rule,
}

/// Every applicable reduction step, in preorder.
pub fn th_redexes(op: &OperadTable, h: &TreeHammock) -> Vec<Redex> {
    let mut out = Vec::new();
    collect(op, &h.root, None, &mut Vec::new(), &mut out);
    out
}

fn collect(op: &OperadTable, n: &Node, parent: Option<Kind>, path: &mut Vec<usize>, out: &mut Vec<Redex>) {
    let Some(p) = &n.piece else { return };
    if parent == Some(p.kind) {
        let rule = match p.kind {
            Kind::Forward => Rule::MergeForward,
            Kind::Backward => Rule::MergeBackward,
        };
        out.push(Redex { path: path.clone(), rule });
    }
    if p.children.len() == 1 && p.labels.iter().all(|&l| op.is_unit(l)) {
        out.push(Redex { path: path.clone(), rule: Rule::DeleteIdentity });
    }
    for (i, c) in p.children.iter().enumerate() {
        path.push(i);
        collect(op, c, Some(p.kind), path, out);
        path.pop();
    }
}

/// Applies one reduction step. The result is not canonicalized.
pub fn th_apply(op: &OperadTable, h: &TreeHammock, redex: &Redex) -> Result<TreeHammock> {
    let mut out = h.clone();
    match redex.rule {
        Rule::DeleteIdentity => {
            let n = out.root.at_mut(&redex.path);
            let p = n.piece.take().ok_or_else(|| Error::Invalid("redex path names a leaf".into()))?;
            let child = p.children.into_iter().next().ok_or_else(|| Error::Invalid("identity piece without child".into()))?;
            n.leaf = child.leaf;
            n.piece = child.piece;
        }
        Rule::MergeForward | Rule::MergeBackward => {
            let (&i, parent_path) = redex.path.split_last().ok_or_else(|| Error::Invalid("merge at the root".into()))?;
            let parent = out.root.at_mut(parent_path);
            let pp = parent.piece.as_mut().ok_or_else(|| Error::Invalid("redex path names a leaf".into()))?;
            let x = pp.children.remove(i);
            let q: Piece = x.piece.ok_or_else(|| Error::Invalid("merge without a piece".into()))?;
            if q.kind != pp.kind {
                return Err(Error::Invalid("merge of pieces of different kinds".into()));
            }
            let labels = match q.kind {
                Kind::Forward => pp.labels.iter().zip(&q.labels).map(|(&l, &r)| op.circ(l, i, r)).collect::<Result<Vec<_>>>()?,
                Kind::Backward => pp.labels.iter().zip(&q.labels).map(|(&l, &r)| op.mul(r, l)).collect::<Result<Vec<_>>>()?,
            };
            pp.labels = labels;
            for (k, c) in q.children.into_iter().enumerate() {
                pp.children.insert(i + k, c);
            }
        }
    }
    Ok(out)
}

/// Reduces to canonical form, applying the first available redex each time.
pub fn th_reduce(op: &OperadTable, h: &TreeHammock) -> Result<TreeHammock> {
    th_reduce_with(op, h, |_| 0)
}

/// Reduces to canonical form with `choose` picking which redex to apply.
/// The input must commute and satisfy the membership conditions.
pub fn th_reduce_with(op: &OperadTable, h: &TreeHammock, mut choose: impl FnMut(&[Redex]) -> usize) -> Result<TreeHammock> {
    let report = validate_hammock(op, h, false);
    if !report.passed() {
        return Err(Error::NonCommuting(alloc::format!("{report}")));
    }
    let mut cur = h.clone();
    loop {
        let redexes = th_redexes(op, &cur);
        if redexes.is_empty() {
            return canonicalize(op, &cur);
        }
        let k = choose(&redexes).min(redexes.len() - 1);
        cur = th_apply(op, &cur, &redexes[k])?;
    }
}
