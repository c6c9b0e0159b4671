//! Set-level algebras over finite operads: based sets, the free algebra
//! monad on terms, algebra tables, bar constructions `B(ℙ, 𝕆, X)` for an
//! operad map `O → P`, and the action of height-zero tree hammocks on an
//! algebra in which `W` acts bijectively.
//!
//! Symmetric actions on arguments follow `θ(c·σ; x_1, …, x_n) =
//! θ(c; x_{σ(1)}, …, x_{σ(n)})`, which is the convention compatible with
//! `γ(c·σ; d) = γ(c; d_{σ(1)}, …)·σ(j_1, …)`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::operad::{Op, OperadMap, OperadTable};
use crate::perm::Permutation;
use crate::report::AxiomReport;
use crate::tree::{canonicalize, th_apply, th_redexes, Kind, Node, TreeHammock};
use crate::{Error, Result};

/// A finite set with a basepoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasedSet {
    names: Vec<String>,
    basepoint: usize,
}

impl BasedSet {
    pub fn new(names: Vec<String>, basepoint: usize) -> Result<Self> {
        if basepoint >= names.len() {
            return Err(Error::Invalid(alloc::format!("basepoint {basepoint} outside {} elements", names.len())));
        }
        let distinct: BTreeSet<&String> = names.iter().collect();
        if distinct.len() != names.len() {
            return Err(Error::Invalid("repeated element names".into()));
        }
        Ok(BasedSet { names, basepoint })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// A term of an iterated free algebra `𝕆_1 𝕆_2 ⋯ 𝕆_d X`: leaves are carrier
/// elements and every `Term` layer holds an operation of the operad for its
/// depth.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Layered {
    Elem(usize),
    Term(Op, Vec<Layered>),
}

impl Layered {
    /// Single-layer term `(c; x_1, …, x_n)`.
    pub fn term(c: Op, args: &[usize]) -> Self {
        Layered::Term(c, args.iter().map(|&x| Layered::Elem(x)).collect())
    }

    /// True if every leaf lies exactly `depth` layers down, counting
    /// nullary operations as reaching any depth.
    pub fn fits(&self, depth: usize) -> bool {
        match self {
            Layered::Elem(_) => depth == 0,
            Layered::Term(_, args) => depth > 0 && args.iter().all(|a| a.fits(depth - 1)),
        }
    }

    pub fn display<'a>(&'a self, layers: &'a [&'a OperadTable], x: &'a BasedSet) -> impl fmt::Display + 'a {
        DisplayLayered { t: self, layers, x }
    }
}

struct DisplayLayered<'a> {
    t: &'a Layered,
    layers: &'a [&'a OperadTable],
    x: &'a BasedSet,
}

impl fmt::Display for DisplayLayered<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.t {
            Layered::Elem(x) => f.write_str(self.x.name(*x)),
            Layered::Term(c, args) => {
                let (op, rest) = self.layers.split_first().ok_or(fmt::Error)?;
                write!(f, "({}", op.name(*c))?;
                for (i, a) in args.iter().enumerate() {
                    f.write_str(if i == 0 { "; " } else { ", " })?;
                    write!(f, "{}", DisplayLayered { t: a, layers: rest, x: self.x })?;
                }
                f.write_str(")")
            }
        }
    }
}

fn point_of(op: &OperadTable) -> Result<Op> {
    op.point().ok_or_else(|| Error::Invalid("basepoint relation needs a designated element of O(0)".into()))
}

/// The basepoint of `layers[0] ⋯ X` in canonical form.
fn basepoint_term(layers: &[&OperadTable], x: &BasedSet) -> Result<Layered> {
    match layers.first() {
        None => Ok(Layered::Elem(x.basepoint())),
        Some(op) => Ok(Layered::Term(point_of(op)?, Vec::new())),
    }
}

/// Removes basepoint arguments through `c ∘_i *` and takes the least
/// representative of the `Σ_n`-orbit `(c·σ; x_{σ⁻¹(1)}, …)`.
fn canonical_layer<A: Ord + Clone>(op: &OperadTable, mut c: Op, mut args: Vec<A>, is_base: impl Fn(&A) -> bool) -> Result<(Op, Vec<A>)> {
    if c.arity() != args.len() {
        return Err(Error::Arity { expected: c.arity(), found: args.len() });
    }
    while let Some(i) = args.iter().rposition(&is_base) {
        c = op.circ(c, i, point_of(op)?)?;
        args.remove(i);
    }
    let n = args.len();
    let mut best: Option<(Op, Vec<A>)> = None;
    for sigma in Permutation::all(n) {
        let inv = sigma.inverse();
        let cand = (op.act(c, &sigma)?, (0..n).map(|q| args[inv.apply(q)].clone()).collect::<Vec<_>>());
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    }
    Ok(best.expect("Σ_n is never empty"))
}

/// Canonical form of a layered term, bottom up.
pub fn canonicalize_layered(layers: &[&OperadTable], x: &BasedSet, t: &Layered) -> Result<Layered> {
    match t {
        Layered::Elem(e) => {
            if !layers.is_empty() {
                return Err(Error::Invalid("term is shallower than its layers".into()));
            }
            if *e >= x.len() {
                return Err(Error::IndexOutOfRange { index: *e, bound: x.len() });
            }
            Ok(t.clone())
        }
        Layered::Term(c, args) => {
            let (op, rest) = layers.split_first().ok_or_else(|| Error::Invalid("term is deeper than its layers".into()))?;
            if !op.contains(*c) {
                return Err(Error::Invalid(alloc::format!("{c:?} is not an element")));
            }
            let args = args.iter().map(|a| canonicalize_layered(rest, x, a)).collect::<Result<Vec<_>>>()?;
            let base = if args.is_empty() { None } else { Some(basepoint_term(rest, x)?) };
            let (c, args) = canonical_layer(op, *c, args, |a| Some(a) == base.as_ref())?;
            Ok(Layered::Term(c, args))
        }
    }
}

/// Canonical form of a single-layer free term.
pub fn free_canonicalize(op: &OperadTable, x: &BasedSet, t: &Layered) -> Result<Layered> {
    canonicalize_layered(&[op], x, t)
}

/// `η(t) = (1; t)` at the top.
pub fn monad_eta(op: &OperadTable, t: Layered) -> Layered {
    Layered::Term(op.unit(), alloc::vec![t])
}

/// Merges layer `i` with layer `i + 1` through `γ` of `outer`, mapping the
/// inner operations with `inner` first. The result is not canonicalized.
fn merge_layers(outer: &OperadTable, inner: &dyn Fn(Op) -> Op, t: &Layered, i: usize) -> Result<Layered> {
    let Layered::Term(c, args) = t else {
        return Err(Error::Invalid("term is shallower than the merged layers".into()));
    };
    if i > 0 {
        let args = args.iter().map(|a| merge_layers(outer, inner, a, i - 1)).collect::<Result<Vec<_>>>()?;
        return Ok(Layered::Term(*c, args));
    }
    let mut ops = Vec::with_capacity(args.len());
    let mut flat = Vec::new();
    for a in args {
        let Layered::Term(d, grand) = a else {
            return Err(Error::Invalid("term is shallower than the merged layers".into()));
        };
        ops.push(inner(*d));
        flat.extend(grand.iter().cloned());
    }
    Ok(Layered::Term(outer.gamma(*c, &ops)?, flat))
}

/// `μ: 𝕆𝕆X → 𝕆X`, canonicalized.
pub fn monad_mu(op: &OperadTable, x: &BasedSet, t: &Layered) -> Result<Layered> {
    let merged = merge_layers(op, &|d| d, t, 0)?;
    free_canonicalize(op, x, &merged)
}

/// Merges layers `i` and `i + 1` of a term with at least `i + 2` layers,
/// without canonicalizing. `i = 0` is `μ` at the top, deeper `i` apply `μ`
/// under the outer layers.
pub fn monad_mu_at(op: &OperadTable, t: &Layered, i: usize) -> Result<Layered> {
    merge_layers(op, &|d| d, t, i)
}

/// Inserts a unit layer at depth `i`: `i = 0` is `η` of the whole term.
pub fn monad_eta_at(op: &OperadTable, t: &Layered, i: usize) -> Layered {
    insert_unit(op, t, i)
}

/// Wraps every subterm at depth `i` in a unit layer of `op`.
fn insert_unit(op: &OperadTable, t: &Layered, i: usize) -> Layered {
    if i == 0 {
        return monad_eta(op, t.clone());
    }
    match t {
        Layered::Term(c, args) => Layered::Term(*c, args.iter().map(|a| insert_unit(op, a, i - 1)).collect()),
        Layered::Elem(_) => t.clone(),
    }
}

/// Canonical single-layer terms `(c; x)` with `c` of arity at most
/// `max_arity`, sorted.
pub fn free_terms(op: &OperadTable, x: &BasedSet, max_arity: usize) -> Result<Vec<Layered>> {
    let mut out = BTreeSet::new();
    for n in 0..=max_arity.min(op.max_arity()) {
        for c in op.elements(n) {
            for args in tuples(x.len(), n) {
                out.insert(free_canonicalize(op, x, &Layered::term(c, &args))?);
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// All `n`-tuples over `0..size`, lexicographically.
pub fn tuples(size: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = alloc::vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|t| (0..size).map(move |e| [t.clone(), alloc::vec![e]].concat())).collect();
    }
    out
}

/// An algebra given by its structure maps `θ(c; x_1, …, x_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraTable {
    pub carrier: BasedSet,
    theta: BTreeMap<(Op, Vec<usize>), usize>,
}

impl AlgebraTable {
    /// Tabulates `f` on every operation and argument tuple.
    pub fn from_fn(op: &OperadTable, carrier: BasedSet, f: impl Fn(Op, &[usize]) -> usize) -> Self {
        let mut theta = BTreeMap::new();
        for c in (0..=op.max_arity()).flat_map(|n| op.elements(n)) {
            for args in tuples(carrier.len(), c.arity()) {
                let r = f(c, &args);
                theta.insert((c, args), r);
            }
        }
        AlgebraTable { carrier, theta }
    }

    pub fn from_entries(carrier: BasedSet, entries: impl IntoIterator<Item = (Op, Vec<usize>, usize)>) -> Self {
        AlgebraTable { carrier, theta: entries.into_iter().map(|(c, a, r)| ((c, a), r)).collect() }
    }

    pub fn theta(&self, c: Op, args: &[usize]) -> Result<usize> {
        self.theta
            .get(&(c, args.to_vec()))
            .copied()
            .ok_or_else(|| Error::IncompleteTable(alloc::format!("θ({c:?}; {args:?})")))
    }

    pub fn set(&mut self, c: Op, args: Vec<usize>, result: usize) {
        self.theta.insert((c, args), result);
    }

    pub fn entries(&self) -> impl Iterator<Item = (Op, &[usize], usize)> + '_ {
        self.theta.iter().map(|((c, a), r)| (*c, a.as_slice(), *r))
    }

    /// Evaluates a layered term whose layers all belong to the algebra's
    /// operad.
    pub fn eval(&self, t: &Layered) -> Result<usize> {
        self.eval_mapped(&|c| c, t)
    }

    /// Evaluates after sending every operation through `f`.
    pub fn eval_mapped(&self, f: &dyn Fn(Op) -> Op, t: &Layered) -> Result<usize> {
        match t {
            Layered::Elem(x) => Ok(*x),
            Layered::Term(c, args) => {
                let vals = args.iter().map(|a| self.eval_mapped(f, a)).collect::<Result<Vec<_>>>()?;
                self.theta(f(*c), &vals)
            }
        }
    }
}

/// Exhaustive check of completeness, the unit and basepoint laws,
/// associativity and equivariance.
pub fn check_algebra_axioms(op: &OperadTable, alg: &AlgebraTable) -> AxiomReport {
    let mut report = AxiomReport::new();
    let x = &alg.carrier;
    let s = x.len();
    let name = |c: Op| op.name(c);
    for c in (0..=op.max_arity()).flat_map(|n| op.elements(n)) {
        for args in tuples(s, c.arity()) {
            match alg.theta(c, &args) {
                Ok(r) if r < s => {}
                _ => report.push("completeness", alloc::format!("θ({}; {:?})", name(c), args)),
            }
        }
    }
    if !report.passed() {
        return report;
    }
    for e in 0..s {
        if alg.theta(op.unit(), &[e]).ok() != Some(e) {
            report.push("unit", alloc::format!("θ(1; {}) ≠ {}", x.name(e), x.name(e)));
        }
    }
    if let Some(p) = op.point() {
        if alg.theta(p, &[]).ok() != Some(x.basepoint()) {
            report.push("basepoint", alloc::format!("θ({}) is not the basepoint", name(p)));
        }
    }
    for c in (0..=op.max_arity()).flat_map(|n| op.elements(n)) {
        let n = c.arity();
        for sigma in Permutation::all(n) {
            let Ok(cs) = op.act(c, &sigma) else { continue };
            for args in tuples(s, n) {
                let permuted: Vec<usize> = (0..n).map(|p| args[sigma.apply(p)]).collect();
                if alg.theta(cs, &args).ok() != alg.theta(c, &permuted).ok() {
                    report.push("equivariance", alloc::format!("{}·{} on {:?}", name(c), sigma, args));
                }
            }
        }
    }
    // θ(c ∘_i d; x) = θ(c; x_1, …, θ(d; x_i, …), …)
    for (c, i, d) in op.circ_entries() {
        let (k, j) = (c.arity(), d.arity());
        let Ok(r) = op.circ(c, i, d) else { continue };
        for args in tuples(s, k + j - 1) {
            let Ok(inner) = alg.theta(d, &args[i..i + j]) else { continue };
            let mut outer: Vec<usize> = args[..i].to_vec();
            outer.push(inner);
            outer.extend_from_slice(&args[i + j..]);
            if alg.theta(r, &args).ok() != alg.theta(c, &outer).ok() {
                report.push("associativity", alloc::format!("{} ∘_{} {} on {:?}", name(c), i + 1, name(d), args));
            }
        }
    }
    report
}

/// The monad-algebra presentation `ξ: 𝕆X → X` on canonical terms of arity
/// at most the operad's bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonadAlgebra {
    pub carrier: BasedSet,
    pub xi: BTreeMap<Layered, usize>,
}

impl MonadAlgebra {
    pub fn xi(&self, op: &OperadTable, t: &Layered) -> Result<usize> {
        let c = free_canonicalize(op, &self.carrier, t)?;
        self.xi.get(&c).copied().ok_or_else(|| Error::IncompleteTable(alloc::format!("ξ{}", c.display(&[op], &self.carrier))))
    }
}

pub fn to_monad_algebra(op: &OperadTable, alg: &AlgebraTable) -> Result<MonadAlgebra> {
    let mut xi = BTreeMap::new();
    for t in free_terms(op, &alg.carrier, op.max_arity())? {
        xi.insert(t.clone(), alg.eval(&t)?);
    }
    Ok(MonadAlgebra { carrier: alg.carrier.clone(), xi })
}

pub fn from_monad_algebra(op: &OperadTable, m: &MonadAlgebra) -> Result<AlgebraTable> {
    let mut entries = Vec::new();
    for c in (0..=op.max_arity()).flat_map(|n| op.elements(n)) {
        for args in tuples(m.carrier.len(), c.arity()) {
            let r = m.xi(op, &Layered::term(c, &args))?;
            entries.push((c, args, r));
        }
    }
    Ok(AlgebraTable::from_entries(m.carrier.clone(), entries))
}

/// `ξ∘η = id` and `ξ∘μ = ξ∘𝕆ξ` on two-layer terms with at most
/// `max_leaves` leaves.
pub fn check_monad_algebra(op: &OperadTable, m: &MonadAlgebra, max_leaves: usize) -> Result<AxiomReport> {
    let mut report = AxiomReport::new();
    let x = &m.carrier;
    for e in 0..x.len() {
        if m.xi(op, &monad_eta(op, Layered::Elem(e)))? != e {
            report.push("unit", alloc::format!("ξη({})", x.name(e)));
        }
    }
    for t in two_layer_terms(op, x, max_leaves)? {
        let Layered::Term(c, args) = &t else { continue };
        let lhs = m.xi(op, &monad_mu(op, x, &t)?)?;
        let vals = args.iter().map(|a| m.xi(op, a)).collect::<Result<Vec<_>>>()?;
        let rhs = m.xi(op, &Layered::Term(*c, vals.into_iter().map(Layered::Elem).collect()))?;
        if lhs != rhs {
            report.push("associativity", alloc::format!("{}", t.display(&[op, op], x)));
        }
    }
    Ok(report)
}

/// Every term of `depth` layers over `X` with at most `max_leaves` leaves,
/// built from canonical lower layers (the outer layer is left raw).
pub fn layered_terms(op: &OperadTable, x: &BasedSet, depth: usize, max_leaves: usize) -> Result<Vec<Layered>> {
    // (term, leaves) pairs for the lower layers
    let mut level: Vec<(Layered, usize)> = (0..x.len()).map(|e| (Layered::Elem(e), 1)).collect();
    for d in 0..depth {
        let mut next = BTreeSet::new();
        for n in 0..=op.max_arity() {
            for c in op.elements(n) {
                for choice in tuples(level.len(), n) {
                    let leaves: usize = choice.iter().map(|&i| level[i].1).sum();
                    if leaves > max_leaves {
                        continue;
                    }
                    let t = Layered::Term(c, choice.iter().map(|&i| level[i].0.clone()).collect());
                    let layers = alloc::vec![op; d + 1];
                    let t = if d + 1 == depth { t } else { canonicalize_layered(&layers, x, &t)? };
                    next.insert((t, leaves));
                }
            }
        }
        level = next.into_iter().collect();
    }
    Ok(level.into_iter().map(|(t, _)| t).collect())
}

fn two_layer_terms(op: &OperadTable, x: &BasedSet, max_leaves: usize) -> Result<Vec<Layered>> {
    layered_terms(op, x, 2, max_leaves)
}

/// The free algebra on `x`, when it is finite: the carrier is the closure of
/// `η(X)` under the operations, capped at `max_elements`. Elements are named
/// by their terms.
pub fn free_algebra(op: &OperadTable, x: &BasedSet, max_elements: usize) -> Result<(AlgebraTable, Vec<Layered>)> {
    let mut elems: BTreeSet<Layered> = BTreeSet::new();
    for e in 0..x.len() {
        elems.insert(free_canonicalize(op, x, &monad_eta(op, Layered::Elem(e)))?);
    }
    loop {
        let list: Vec<Layered> = elems.iter().cloned().collect();
        let before = elems.len();
        for n in 0..=op.max_arity() {
            for c in op.elements(n) {
                for choice in tuples(list.len(), n) {
                    let t = Layered::Term(c, choice.iter().map(|&i| list[i].clone()).collect());
                    elems.insert(monad_mu(op, x, &t)?);
                    if elems.len() > max_elements {
                        return Err(Error::Resource(alloc::format!("free algebra exceeds {max_elements} elements")));
                    }
                }
            }
        }
        if elems.len() == before {
            break;
        }
    }
    let list: Vec<Layered> = elems.into_iter().collect();
    let base = free_canonicalize(op, x, &monad_eta(op, Layered::Elem(x.basepoint())))?;
    let names = list.iter().map(|t| alloc::format!("{}", t.display(&[op], x))).collect();
    let carrier = BasedSet::new(names, list.binary_search(&base).expect("η(*) is in the closure"))?;
    let mut entries = Vec::new();
    for c in (0..=op.max_arity()).flat_map(|n| op.elements(n)) {
        for args in tuples(list.len(), c.arity()) {
            let t = Layered::Term(c, args.iter().map(|&i| list[i].clone()).collect());
            let r = monad_mu(op, x, &t)?;
            entries.push((c, args, list.binary_search(&r).expect("closed under μ")));
        }
    }
    Ok((AlgebraTable::from_entries(carrier, entries), list))
}

/// The bar construction `B(ℙ, 𝕆, X)` for an operad map `φ: O → P` and an
/// `O`-algebra `X`. Level `q` elements are terms with one outer `P` layer
/// and `q` layers of `O` above `X`.
pub struct Bar<'a> {
    pub outer: &'a OperadTable,
    pub inner: &'a OperadTable,
    pub phi: &'a OperadMap,
    pub alg: &'a AlgebraTable,
}

impl<'a> Bar<'a> {
    pub fn layers(&self, q: usize) -> Vec<&'a OperadTable> {
        let mut v = alloc::vec![self.outer];
        v.extend(core::iter::repeat_n(self.inner, q));
        v
    }

    fn check_level(&self, q: usize, b: &Layered) -> Result<()> {
        if !b.fits(q + 1) {
            return Err(Error::Invalid(alloc::format!("bar element does not have {} layers", q + 1)));
        }
        Ok(())
    }

    pub fn canonicalize(&self, q: usize, b: &Layered) -> Result<Layered> {
        canonicalize_layered(&self.layers(q), &self.alg.carrier, b)
    }

    /// `d_0` applies `λ: ℙ𝕆 → ℙ`, the inner faces `μ`, and `d_q` the action
    /// `ξ` on the innermost layer.
    pub fn face(&self, q: usize, b: &Layered, i: usize) -> Result<Layered> {
        if q == 0 || i > q {
            return Err(Error::IndexOutOfRange { index: i, bound: q });
        }
        self.check_level(q, b)?;
        let out = if i == 0 {
            merge_layers(self.outer, &|d| self.phi.apply(d), b, 0)?
        } else if i < q {
            merge_layers(self.inner, &|d| d, b, i)?
        } else {
            self.act_innermost(b, q)?
        };
        self.canonicalize(q - 1, &out)
    }

    fn act_innermost(&self, b: &Layered, depth: usize) -> Result<Layered> {
        match b {
            Layered::Term(c, args) if depth == 0 => {
                let vals = args
                    .iter()
                    .map(|a| match a {
                        Layered::Elem(e) => Ok(*e),
                        Layered::Term(..) => Err(Error::Invalid("innermost layer holds a term".into())),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Layered::Elem(self.alg.theta(*c, &vals)?))
            }
            Layered::Term(c, args) => {
                let args = args.iter().map(|a| self.act_innermost(a, depth - 1)).collect::<Result<Vec<_>>>()?;
                Ok(Layered::Term(*c, args))
            }
            Layered::Elem(_) => Err(Error::Invalid("bar element is too shallow".into())),
        }
    }

    /// `s_i` inserts a unit layer of `O` below layer `i`.
    pub fn degeneracy(&self, q: usize, b: &Layered, i: usize) -> Result<Layered> {
        if i > q {
            return Err(Error::IndexOutOfRange { index: i, bound: q });
        }
        self.check_level(q, b)?;
        self.canonicalize(q + 1, &insert_unit(self.inner, b, i + 1))
    }

    /// The `P`-algebra structure on level `q`: grafting into the outer layer.
    pub fn p_action(&self, q: usize, p: Op, args: &[Layered]) -> Result<Layered> {
        for a in args {
            self.check_level(q, a)?;
        }
        let t = Layered::Term(p, args.to_vec());
        let merged = merge_layers(self.outer, &|d| d, &t, 0)?;
        self.canonicalize(q, &merged)
    }

    /// `B(𝕆, 𝕆, X) → B(ℙ, 𝕆, X)`: `φ` on the outer layer.
    pub fn push_forward(&self, q: usize, b: &Layered) -> Result<Layered> {
        self.check_level(q, b)?;
        let Layered::Term(c, args) = b else {
            return Err(Error::Invalid("bar element is too shallow".into()));
        };
        self.canonicalize(q, &Layered::Term(self.phi.apply(*c), args.clone()))
    }

    /// The augmentation `B(𝕆, 𝕆, X) → X`: evaluate every layer.
    pub fn augmentation(&self, b: &Layered) -> Result<usize> {
        self.alg.eval(b)
    }

    /// For `X` a `P`-algebra (`palg`) whose `O`-structure is the restriction
    /// along `φ`: `B(ℙ, 𝕆, X) → B(ℙ, ℙ, X) → X`.
    pub fn retraction(&self, palg: &AlgebraTable, b: &Layered) -> Result<usize> {
        match b {
            Layered::Elem(x) => Ok(*x),
            Layered::Term(c, args) => {
                let vals = args.iter().map(|a| palg.eval_mapped(&|d| self.phi.apply(d), a)).collect::<Result<Vec<_>>>()?;
                palg.theta(*c, &vals)
            }
        }
    }

    /// The map `B(ℙ, 𝕆, X) → Y` into a `P`-algebra induced by an `O`-map
    /// `f: X → Y`.
    pub fn universal(&self, y: &AlgebraTable, f: &[usize], b: &Layered) -> Result<usize> {
        fn go(bar: &Bar<'_>, y: &AlgebraTable, f: &[usize], t: &Layered, outer: bool) -> Result<usize> {
            match t {
                Layered::Elem(x) => f.get(*x).copied().ok_or(Error::IndexOutOfRange { index: *x, bound: f.len() }),
                Layered::Term(c, args) => {
                    let vals = args.iter().map(|a| go(bar, y, f, a, false)).collect::<Result<Vec<_>>>()?;
                    y.theta(if outer { *c } else { bar.phi.apply(*c) }, &vals)
                }
            }
        }
        go(self, y, f, b, true)
    }

    /// The simplicial identities on every element of levels `0..=max_q` with
    /// at most `max_leaves` leaves. Returns the level sizes with the report.
    pub fn check_simplicial(&self, max_q: usize, max_leaves: usize) -> Result<(Vec<usize>, AxiomReport)> {
        let mut report = AxiomReport::new();
        let mut sizes = Vec::with_capacity(max_q + 1);
        for n in 0..=max_q {
            let level = self.elements(n, max_leaves)?;
            sizes.push(level.len());
            for b in &level {
                let show = || alloc::format!("{}", b.display(&self.layers(n), &self.alg.carrier));
                let d = |x: &Layered, q: usize, i: usize| self.face(q, x, i);
                let s = |x: &Layered, q: usize, i: usize| self.degeneracy(q, x, i);
                for j in 0..=n {
                    let sj = s(b, n, j)?;
                    for i in 0..j {
                        if n >= 2 && d(&d(b, n, j)?, n - 1, i)? != d(&d(b, n, i)?, n - 1, j - 1)? {
                            report.push("d_i d_j", alloc::format!("i={i} j={j} on {}", show()));
                        }
                        if n >= 1 && d(&sj, n + 1, i)? != s(&d(b, n, i)?, n - 1, j - 1)? {
                            report.push("d_i s_j", alloc::format!("i={i} j={j} on {}", show()));
                        }
                    }
                    if d(&sj, n + 1, j)? != *b || d(&sj, n + 1, j + 1)? != *b {
                        report.push("d_j s_j", alloc::format!("j={j} on {}", show()));
                    }
                    for i in j + 2..=n + 1 {
                        if d(&sj, n + 1, i)? != s(&d(b, n, i - 1)?, n - 1, j)? {
                            report.push("d_i s_j", alloc::format!("i={i} j={j} on {}", show()));
                        }
                    }
                    for i in 0..=j {
                        if s(&sj, n + 1, i)? != s(&s(b, n, i)?, n + 1, j + 1)? {
                            report.push("s_i s_j", alloc::format!("i={i} j={j} on {}", show()));
                        }
                    }
                }
            }
        }
        Ok((sizes, report))
    }

    /// Every level-`q` element with at most `max_leaves` leaves, canonical.
    pub fn elements(&self, q: usize, max_leaves: usize) -> Result<Vec<Layered>> {
        let lower = if q == 0 {
            (0..self.alg.carrier.len()).map(Layered::Elem).collect()
        } else {
            layered_terms_canonical(self.inner, &self.alg.carrier, q, max_leaves)?
        };
        let leaves = |t: &Layered| count_leaves(t);
        let mut out = BTreeSet::new();
        for n in 0..=self.outer.max_arity() {
            for p in self.outer.elements(n) {
                for choice in tuples(lower.len(), n) {
                    if choice.iter().map(|&i| leaves(&lower[i])).sum::<usize>() > max_leaves {
                        continue;
                    }
                    let t = Layered::Term(p, choice.iter().map(|&i| lower[i].clone()).collect());
                    out.insert(self.canonicalize(q, &t)?);
                }
            }
        }
        Ok(out.into_iter().collect())
    }
}

fn count_leaves(t: &Layered) -> usize {
    match t {
        Layered::Elem(_) => 1,
        Layered::Term(_, args) => args.iter().map(count_leaves).sum(),
    }
}

fn layered_terms_canonical(op: &OperadTable, x: &BasedSet, depth: usize, max_leaves: usize) -> Result<Vec<Layered>> {
    let layers = alloc::vec![op; depth];
    let mut out = BTreeSet::new();
    for t in layered_terms(op, x, depth, max_leaves)? {
        out.insert(canonicalize_layered(&layers, x, &t)?);
    }
    Ok(out.into_iter().collect())
}

/// Inverses of the bijections `θ(w; −)` for `w ∈ W`; the data needed to let
/// height-zero tree hammocks act on an algebra.
#[derive(Clone, Debug)]
pub struct LocalizedAction {
    inverses: BTreeMap<Op, Vec<usize>>,
}

impl LocalizedAction {
    /// Fails with `NotLocalizable` naming the first `w` acting
    /// non-bijectively.
    pub fn new(op: &OperadTable, alg: &AlgebraTable) -> Result<Self> {
        let s = alg.carrier.len();
        let mut inverses = BTreeMap::new();
        for w in op.w_elements() {
            let mut inv = alloc::vec![usize::MAX; s];
            for e in 0..s {
                let r = alg.theta(w, &[e])?;
                if inv[r] != usize::MAX {
                    return Err(Error::NotLocalizable(op.name(w).into()));
                }
                inv[r] = e;
            }
            inverses.insert(w, inv);
        }
        Ok(LocalizedAction { inverses })
    }

    /// The action of a height-zero hammock: `θ` along `Forward` pieces, the
    /// inverse bijection along `Backward` pieces, the basepoint at unlabeled
    /// leaves.
    pub fn act(&self, alg: &AlgebraTable, h: &TreeHammock, args: &[usize]) -> Result<usize> {
        if h.height != 0 {
            return Err(Error::Unsupported(alloc::format!("height {}", h.height)));
        }
        if args.len() != h.arity {
            return Err(Error::Arity { expected: h.arity, found: args.len() });
        }
        self.node(alg, &h.root, args)
    }

    fn node(&self, alg: &AlgebraTable, n: &Node, args: &[usize]) -> Result<usize> {
        let Some(p) = &n.piece else {
            return Ok(n.leaf.map_or(alg.carrier.basepoint(), |l| args[l]));
        };
        let vals = p.children.iter().map(|c| self.node(alg, c, args)).collect::<Result<Vec<_>>>()?;
        match p.kind {
            Kind::Forward => alg.theta(p.labels[0], &vals),
            Kind::Backward => {
                let inv = self.inverses.get(&p.labels[0]).ok_or_else(|| Error::NotInW(alloc::format!("{:?}", p.labels[0])))?;
                Ok(inv[vals[0]])
            }
        }
    }
}

/// Builds the height-zero action and checks that every single reduction
/// step and the canonical reordering leave it unchanged on `hammocks`.
pub fn extend_action_to_height0(op: &OperadTable, alg: &AlgebraTable, hammocks: &[TreeHammock]) -> Result<(LocalizedAction, AxiomReport)> {
    let action = LocalizedAction::new(op, alg)?;
    let mut report = AxiomReport::new();
    let s = alg.carrier.len();
    for h in hammocks {
        let mut moved = Vec::new();
        for r in th_redexes(op, h) {
            moved.push(th_apply(op, h, &r)?);
        }
        moved.push(canonicalize(op, h)?);
        for args in tuples(s, h.arity) {
            let base = action.act(alg, h, &args)?;
            for m in &moved {
                if action.act(alg, m, &args)? != base {
                    report.push("reduction-invariance", alloc::format!("{} on {:?}", h.display(op), args));
                }
            }
        }
    }
    Ok((action, report))
}
