//! JSON formats for operads, algebras, operad maps and hammocks.
//!
//! Operation names are resolved within an arity. Where the arity is not
//! implied by the position (verticals and backward labels are unary, forward
//! labels have the arity of their piece), write `name@arity`.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use oploc_core::algebra::{AlgebraTable, BasedSet};
use oploc_core::dk::{Chain, Column, Dir, DkHammock};
use oploc_core::operad::{ass, comm, monoid_plus, weighted_comm, ActionEntry, CircEntry, MonoidTable, OperadMap, OperadSpec};
use oploc_core::smc::SmcMorphism;
use oploc_core::tree::{Kind, Node, TreeHammock};
use oploc_core::{Op, OperadTable, Permutation};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::report::CliError;

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

#[derive(Deserialize)]
#[serde(untagged)]
pub enum MonoidFile {
    Cyclic { cyclic: usize },
    Builtin { builtin: String },
    Table { names: Vec<String>, unit: String, mul: Vec<Vec<String>> },
}

impl MonoidFile {
    pub fn build(&self) -> Result<MonoidTable, CliError> {
        match self {
            MonoidFile::Cyclic { cyclic: 0 } => Err(CliError::Input("Z/0 is not a monoid".into())),
            MonoidFile::Cyclic { cyclic } => Ok(MonoidTable::cyclic(*cyclic)),
            MonoidFile::Builtin { builtin } => match builtin.as_str() {
                "trivial" => Ok(MonoidTable::trivial()),
                "idempotent" => Ok(MonoidTable::idempotent()),
                other => Err(CliError::Input(format!("unknown builtin monoid {other:?}"))),
            },
            MonoidFile::Table { names, unit, mul } => {
                let index = |x: &str| {
                    names.iter().position(|n| n == x).ok_or_else(|| CliError::Input(format!("unknown monoid element {x:?}")))
                };
                let mul = mul.iter().map(|row| row.iter().map(|x| index(x)).collect()).collect::<Result<_, _>>()?;
                Ok(MonoidTable::new(names.clone(), index(unit)?, mul)?)
            }
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogFile {
    pub catalog: String,
    #[serde(default)]
    pub max_arity: Option<usize>,
    #[serde(default)]
    pub monoid: Option<MonoidFile>,
    /// Names of the elements of `W`; all of `M` when absent.
    #[serde(default)]
    pub w: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircFile {
    pub k: usize,
    pub c: String,
    /// 1-based slot.
    pub i: usize,
    pub j: usize,
    pub d: String,
    pub result: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionFile {
    pub n: usize,
    pub c: String,
    /// 1-based images.
    pub sigma: Vec<usize>,
    pub result: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableFile {
    pub max_arity: usize,
    pub elements: BTreeMap<usize, Vec<String>>,
    pub unit: String,
    #[serde(default)]
    pub point: Option<String>,
    #[serde(default)]
    pub circ: Vec<CircFile>,
    #[serde(default)]
    pub action: Vec<ActionFile>,
    /// Defaults to the unit alone.
    #[serde(default)]
    pub w: Option<Vec<String>>,
}

/// A table carries no `catalog` key.
pub enum OperadFile {
    Catalog(CatalogFile),
    Table(TableFile),
}

fn monoid_w(m: &MonoidTable, w: &Option<Vec<String>>) -> Result<Option<Vec<usize>>, CliError> {
    w.as_ref()
        .map(|names| {
            names.iter().map(|n| m.index_of(n).ok_or_else(|| CliError::Input(format!("unknown monoid element {n:?}")))).collect()
        })
        .transpose()
}

impl OperadFile {
    pub fn build(&self) -> Result<OperadTable, CliError> {
        match self {
            OperadFile::Catalog(c) => {
                let need_monoid = || c.monoid.as_ref().ok_or_else(|| CliError::Input(format!("{} needs a monoid", c.catalog)));
                let arity = c.max_arity.unwrap_or(3);
                match c.catalog.as_str() {
                    "comm" => Ok(comm(arity)),
                    "ass" => Ok(ass(arity)),
                    "monoid_plus" => {
                        let m = need_monoid()?.build()?;
                        Ok(monoid_plus(&m, monoid_w(&m, &c.w)?.as_deref())?)
                    }
                    "weighted_comm" => {
                        let m = need_monoid()?.build()?;
                        Ok(weighted_comm(arity, &m, monoid_w(&m, &c.w)?.as_deref())?)
                    }
                    other => Err(CliError::Input(format!("unknown catalog operad {other:?}"))),
                }
            }
            OperadFile::Table(t) => {
                let spec = OperadSpec {
                    max_arity: t.max_arity,
                    elements: t.elements.clone(),
                    unit: t.unit.clone(),
                    circ: t
                        .circ
                        .iter()
                        .map(|e| CircEntry { k: e.k, c: e.c.clone(), i: e.i, j: e.j, d: e.d.clone(), result: e.result.clone() })
                        .collect(),
                    action: t
                        .action
                        .iter()
                        .map(|e| {
                            Ok(ActionEntry {
                                n: e.n,
                                c: e.c.clone(),
                                sigma: Permutation::from_one_based(&e.sigma)?,
                                result: e.result.clone(),
                            })
                        })
                        .collect::<Result<_, oploc_core::Error>>()?,
                    w: t.w.clone().unwrap_or_else(|| vec![t.unit.clone()]),
                    point: t.point.clone(),
                };
                Ok(OperadTable::from_spec(&spec)?)
            }
        }
    }
}

pub fn load_operad(path: &Path) -> Result<OperadTable, CliError> {
    let value: serde_json::Value = read_json(path)?;
    let bad = |e: serde_json::Error| CliError::Input(format!("{}: {e}", path.display()));
    let file = if value.get("catalog").is_some() {
        OperadFile::Catalog(serde_json::from_value(value).map_err(bad)?)
    } else {
        OperadFile::Table(serde_json::from_value(value).map_err(bad)?)
    };
    file.build()
}

/// The suboperad with `O(1)` cut down to `W`. Fails unless the remaining
/// operations are closed under composition.
pub fn restrict_to_w(op: &OperadTable) -> Result<OperadTable, CliError> {
    let mut spec = op.to_spec();
    let dropped: Vec<String> = op.elements(1).filter(|&o| !op.in_w(o)).map(|o| op.name(o).to_string()).collect();
    let gone = |arity: usize, name: &str| arity == 1 && dropped.iter().any(|d| d == name);
    spec.elements.insert(1, op.w_elements().map(|o| op.name(o).to_string()).collect());
    let mut circ = Vec::new();
    for e in spec.circ {
        if gone(e.k, &e.c) || gone(e.j, &e.d) {
            continue;
        }
        if gone(e.k + e.j - 1, &e.result) {
            return Err(CliError::Input(format!("W is not closed: {} ∘_{} {} = {}", e.c, e.i, e.d, e.result)));
        }
        circ.push(e);
    }
    spec.circ = circ;
    spec.action.retain(|e| !gone(e.n, &e.c));
    Ok(OperadTable::from_spec(&spec)?)
}

/// `name` or `name@arity`; a bare name must be unique across arities.
pub fn lookup_any(op: &OperadTable, id: &str) -> Result<Op, CliError> {
    if let Some((name, arity)) = id.rsplit_once('@') {
        let arity: usize = arity.parse().map_err(|_| CliError::Input(format!("bad arity in {id:?}")))?;
        return op.lookup(arity, name).ok_or_else(|| CliError::Input(format!("unknown operation {id:?}")));
    }
    let hits: Vec<Op> = (0..=op.max_arity()).filter_map(|a| op.lookup(a, id)).collect();
    match hits[..] {
        [o] => Ok(o),
        [] => Err(CliError::Input(format!("unknown operation {id:?}"))),
        _ => Err(CliError::Input(format!("{id:?} names operations of several arities; write {id}@ARITY"))),
    }
}

fn lookup_in(op: &OperadTable, arity: usize, id: &str) -> Result<Op, CliError> {
    let name = id.rsplit_once('@').map_or(id, |(n, _)| n);
    op.lookup(arity, name).ok_or_else(|| CliError::Input(format!("unknown operation {id:?} in arity {arity}")))
}

/// `c1|c2|…/p1,p2,…`: components, then the 1-based target position of each
/// source output.
pub fn parse_morphism(op: &OperadTable, text: &str) -> Result<SmcMorphism, CliError> {
    let (comps, perm) = text.split_once('/').ok_or_else(|| CliError::Input(format!("expected COMPONENTS/PERMUTATION in {text:?}")))?;
    let components = if comps.is_empty() { Vec::new() } else { comps.split('|').map(|c| lookup_any(op, c)).collect::<Result<_, _>>()? };
    let images = if perm.is_empty() {
        Vec::new()
    } else {
        perm.split(',').map(|p| p.trim().parse::<usize>().map_err(|_| CliError::Input(format!("bad position {p:?}")))).collect::<Result<_, _>>()?
    };
    Ok(SmcMorphism::new(components, Permutation::from_one_based(&images)?)?)
}

pub fn show_morphism(op: &OperadTable, f: &SmcMorphism) -> String {
    let comps: Vec<String> = f.components.iter().map(|&c| format!("{}@{}", op.name(c), c.arity())).collect();
    let perm: Vec<String> = f.perm.one_based().iter().map(|p| p.to_string()).collect();
    format!("{}/{}", comps.join("|"), perm.join(","))
}

#[derive(Serialize, Deserialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum KindFile {
    Forward,
    Backward,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceFile {
    pub kind: KindFile,
    pub labels: Vec<String>,
    pub children: Vec<NodeFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeFile {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub verticals: Vec<String>,
    /// 1-based label of a leaf.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leaf: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub piece: Option<PieceFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeFile {
    pub arity: usize,
    pub height: usize,
    pub root: NodeFile,
}

impl TreeFile {
    pub fn from_hammock(op: &OperadTable, h: &TreeHammock) -> Self {
        fn node(op: &OperadTable, n: &Node) -> NodeFile {
            NodeFile {
                verticals: n.verticals.iter().map(|&v| op.name(v).to_string()).collect(),
                leaf: n.leaf.map(|l| l + 1),
                piece: n.piece.as_ref().map(|p| PieceFile {
                    kind: match p.kind {
                        Kind::Forward => KindFile::Forward,
                        Kind::Backward => KindFile::Backward,
                    },
                    labels: p.labels.iter().map(|&l| op.name(l).to_string()).collect(),
                    children: p.children.iter().map(|c| node(op, c)).collect(),
                }),
            }
        }
        TreeFile { arity: h.arity, height: h.height, root: node(op, &h.root) }
    }

    pub fn to_hammock(&self, op: &OperadTable) -> Result<TreeHammock, CliError> {
        fn node(op: &OperadTable, n: &NodeFile, k: usize) -> Result<Node, CliError> {
            let verticals = n.verticals.iter().map(|v| lookup_in(op, 1, v)).collect::<Result<Vec<_>, _>>()?;
            if verticals.len() != k {
                return Err(CliError::Input(format!("a node has {} verticals, expected {k}", verticals.len())));
            }
            let leaf = n.leaf.map(|l| l.checked_sub(1).ok_or_else(|| CliError::Input("leaf labels are 1-based".into()))).transpose()?;
            let Some(p) = &n.piece else { return Ok(Node::leaf(leaf, verticals)) };
            if leaf.is_some() {
                return Err(CliError::Input("a node with a piece cannot be a leaf".into()));
            }
            let arity = match p.kind {
                KindFile::Forward => p.children.len(),
                KindFile::Backward => 1,
            };
            let kind = match p.kind {
                KindFile::Forward => Kind::Forward,
                KindFile::Backward => Kind::Backward,
            };
            let labels = p.labels.iter().map(|l| lookup_in(op, arity, l)).collect::<Result<Vec<_>, _>>()?;
            let children = p.children.iter().map(|c| node(op, c, k)).collect::<Result<Vec<_>, _>>()?;
            Ok(Node::with_piece(verticals, kind, labels, children))
        }
        Ok(TreeHammock { arity: self.arity, height: self.height, root: node(op, &self.root, self.height)? })
    }
}

pub fn load_tree(op: &OperadTable, path: &Path) -> Result<TreeHammock, CliError> {
    read_json::<TreeFile>(path)?.to_hammock(op)
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DirFile {
    Right,
    Left,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColumnFile {
    pub dir: DirFile,
    pub labels: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainFile {
    pub verticals: Vec<String>,
}

/// A hammock over the one-object category of unary operations.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DkFile {
    pub height: usize,
    pub columns: Vec<ColumnFile>,
    /// One per interior node; may be omitted at height 0.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub chains: Vec<ChainFile>,
}

impl DkFile {
    pub fn from_hammock(op: &OperadTable, h: &DkHammock<usize, usize>) -> Self {
        let name = |m: usize| op.name(Op::new(1, m)).to_string();
        DkFile {
            height: h.height,
            columns: h
                .columns
                .iter()
                .map(|c| ColumnFile {
                    dir: match c.dir {
                        Dir::Right => DirFile::Right,
                        Dir::Left => DirFile::Left,
                    },
                    labels: c.labels.iter().map(|&l| name(l)).collect(),
                })
                .collect(),
            chains: if h.height == 0 {
                Vec::new()
            } else {
                h.chains.iter().map(|c| ChainFile { verticals: c.verticals.iter().map(|&v| name(v)).collect() }).collect()
            },
        }
    }

    pub fn to_hammock(&self, op: &OperadTable) -> Result<DkHammock<usize, usize>, CliError> {
        let unary = |id: &String| lookup_in(op, 1, id).map(Op::index);
        let mut h = DkHammock::empty(0, self.height);
        for c in &self.columns {
            let dir = match c.dir {
                DirFile::Right => Dir::Right,
                DirFile::Left => Dir::Left,
            };
            h.columns.push(Column { dir, labels: c.labels.iter().map(unary).collect::<Result<_, _>>()? });
        }
        if self.chains.is_empty() && self.height == 0 {
            // nothing to say about height-0 chains beyond their count
            h.chains = vec![Chain { objects: vec![0], verticals: Vec::new() }; self.columns.len().saturating_sub(1)];
        }
        for c in &self.chains {
            h.chains.push(Chain { objects: vec![0; self.height + 1], verticals: c.verticals.iter().map(unary).collect::<Result<_, _>>()? });
        }
        Ok(h)
    }
}

pub fn load_dk(op: &OperadTable, path: &Path) -> Result<DkHammock<usize, usize>, CliError> {
    read_json::<DkFile>(path)?.to_hammock(op)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThetaFile {
    pub op: String,
    pub args: Vec<String>,
    pub result: String,
}

/// An algebra over a based set. `join: true` fills in every entry as the
/// maximum in carrier order, for semilattice algebras with the basepoint
/// first.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub carrier: Vec<String>,
    #[serde(default)]
    pub basepoint: Option<String>,
    #[serde(default)]
    pub join: bool,
    #[serde(default)]
    pub theta: Vec<ThetaFile>,
}

impl AlgebraFile {
    pub fn build(&self, op: &OperadTable) -> Result<AlgebraTable, CliError> {
        let index = |x: &str| self.carrier.iter().position(|c| c == x).ok_or_else(|| CliError::Input(format!("{x:?} is not in the carrier")));
        let base = self.basepoint.as_deref().map(index).transpose()?.unwrap_or(0);
        let carrier = BasedSet::new(self.carrier.clone(), base)?;
        let mut alg = if self.join {
            AlgebraTable::from_fn(op, carrier, |_, args| args.iter().copied().max().unwrap_or(base))
        } else {
            AlgebraTable::from_entries(carrier, [])
        };
        for t in &self.theta {
            let c = lookup_in(op, t.args.len(), &t.op)?;
            let args = t.args.iter().map(|a| index(a)).collect::<Result<Vec<_>, _>>()?;
            alg.set(c, args, index(&t.result)?);
        }
        Ok(alg)
    }
}

pub fn load_algebra(op: &OperadTable, path: &Path) -> Result<AlgebraTable, CliError> {
    read_json::<AlgebraFile>(path)?.build(op)
}

/// `{"pairs": [["p12@2", "e2@2"], …]}`; names as in [`lookup_any`].
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub pairs: Vec<(String, String)>,
}

pub fn load_map(source: &OperadTable, target: &OperadTable, path: &Path) -> Result<OperadMap, CliError> {
    let file: MapFile = read_json(path)?;
    let mut table = BTreeMap::new();
    for (a, b) in &file.pairs {
        table.insert(lookup_any(source, a)?, lookup_any(target, b)?);
    }
    if let Some(c) = source.all_elements().find(|c| !table.contains_key(c)) {
        return Err(CliError::Input(format!("the map does not send {}@{}", source.name(c), c.arity())));
    }
    Ok(OperadMap::new(source, target, |c| table[&c])?)
}
