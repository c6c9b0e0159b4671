//! The strict symmetric monoidal category `C_O` of an operad.
//!
//! A morphism `a → b` is a tuple `(c_1, …, c_a)` with `c_i ∈ O(k_i)`,
//! `Σ k_i = b`, together with a permutation `σ ∈ Σ_b` sending output position
//! `p` of `c_1 ⊗ … ⊗ c_a` to coordinate `σ(p)` of the target, modulo
//! `(c_i·ρ_i; σ) ~ (c_i; (ρ_1 ⊕ … ⊕ ρ_a).then(σ))`.
//!
//! Composition is written in diagram order: `compose(f, g)` is "`f`, then `g`".

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::operad::{Op, OperadTable};
use crate::perm::{block_permutation, direct_sum, Permutation};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SmcMorphism {
    pub source: usize,
    pub target: usize,
    pub components: Vec<Op>,
    pub perm: Permutation,
}

impl SmcMorphism {
    /// Checks arities only; does not canonicalize.
    pub fn new(components: Vec<Op>, perm: Permutation) -> Result<Self> {
        let target: usize = components.iter().map(|c| c.arity()).sum();
        if perm.degree() != target {
            return Err(Error::Arity { expected: target, found: perm.degree() });
        }
        Ok(SmcMorphism { source: components.len(), target, components, perm })
    }

    pub fn arities(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.arity()).collect()
    }

    pub fn display<'a>(&'a self, op: &'a OperadTable) -> impl fmt::Display + 'a {
        DisplayMorphism { op, f: self }
    }
}

struct DisplayMorphism<'a> {
    op: &'a OperadTable,
    f: &'a SmcMorphism,
}

impl fmt::Display for DisplayMorphism<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}→{} ({}; {})", self.f.source, self.f.target, self.op.names_of(&self.f.components), self.f.perm)
    }
}

fn orbit_min(op: &OperadTable, c: Op) -> Result<(Op, Permutation)> {
    let mut best: Option<(Op, Permutation)> = None;
    for rho in Permutation::all(c.arity()) {
        let r = op.act(c, &rho)?;
        if best.as_ref().map_or(true, |(b, _)| r < *b) {
            best = Some((r, rho));
        }
    }
    Ok(best.expect("Σ_n is never empty"))
}

fn stabilizer(op: &OperadTable, c: Op) -> Result<Vec<Permutation>> {
    let mut out = Vec::new();
    for rho in Permutation::all(c.arity()) {
        if op.act(c, &rho)? == c {
            out.push(rho);
        }
    }
    Ok(out)
}

/// Replaces each component by the minimum of its `Σ`-orbit and then picks
/// the lexicographically least permutation among those reachable through
/// the stabilizers of the new components.
pub fn canonicalize_morphism(op: &OperadTable, raw: &SmcMorphism) -> Result<SmcMorphism> {
    let mut components = Vec::with_capacity(raw.source);
    let mut rhos = Vec::with_capacity(raw.source);
    for &c in &raw.components {
        let (m, rho) = orbit_min(op, c)?;
        components.push(m);
        rhos.push(rho.inverse());
    }
    // (c; σ) ~ (c·ρ; (ρ⁻¹ ⊕ …).then(σ))
    let perm = direct_sum(&rhos).then(&raw.perm);
    let mut images = Vec::with_capacity(raw.target);
    let mut offset = 0;
    for &m in &components {
        let k = m.arity();
        let block = &perm.images()[offset..offset + k];
        let mut best: Option<Vec<usize>> = None;
        for s in stabilizer(op, m)? {
            let cand: Vec<usize> = (0..k).map(|r| block[s.apply(r)]).collect();
            if best.as_ref().map_or(true, |b| cand < *b) {
                best = Some(cand);
            }
        }
        images.extend(best.expect("stabilizer contains the identity"));
        offset += k;
    }
    let perm = Permutation::from_images(images).expect("blockwise reordering of a permutation");
    Ok(SmcMorphism { source: raw.source, target: raw.target, components, perm })
}

pub fn identity(op: &OperadTable, a: usize) -> SmcMorphism {
    SmcMorphism { source: a, target: a, components: alloc::vec![op.unit(); a], perm: Permutation::identity(a) }
}

/// The permutation morphism `b → b` with unit components.
pub fn permutation_morphism(op: &OperadTable, sigma: &Permutation) -> SmcMorphism {
    let b = sigma.degree();
    SmcMorphism { source: b, target: b, components: alloc::vec![op.unit(); b], perm: sigma.clone() }
}

/// `f` then `g`.
pub fn smc_compose(op: &OperadTable, f: &SmcMorphism, g: &SmcMorphism) -> Result<SmcMorphism> {
    if f.target != g.source {
        return Err(Error::ObjectMismatch(alloc::format!("{}→{} then {}→{}", f.source, f.target, g.source, g.target)));
    }
    let mut components = Vec::with_capacity(f.source);
    let mut offset = 0;
    for &c in &f.components {
        let args: Vec<Op> = (0..c.arity()).map(|r| g.components[f.perm.apply(offset + r)]).collect();
        components.push(op.gamma(c, &args)?);
        offset += c.arity();
    }
    let perm = block_permutation(&f.perm, &g.arities())?.then(&g.perm);
    canonicalize_morphism(op, &SmcMorphism { source: f.source, target: g.target, components, perm })
}

pub fn smc_tensor(op: &OperadTable, f: &SmcMorphism, g: &SmcMorphism) -> Result<SmcMorphism> {
    let mut components = f.components.clone();
    components.extend_from_slice(&g.components);
    let perm = direct_sum(&[f.perm.clone(), g.perm.clone()]);
    canonicalize_morphism(
        op,
        &SmcMorphism { source: f.source + g.source, target: f.target + g.target, components, perm },
    )
}

/// The symmetry `a + b → b + a`: unit components, the first `a` positions
/// moved past the next `b`.
pub fn smc_symmetry(op: &OperadTable, a: usize, b: usize) -> SmcMorphism {
    let swap = Permutation::from_images(alloc::vec![1, 0]).expect("transposition");
    let perm = block_permutation(&swap, &[b, a]).expect("degree 2");
    SmcMorphism { source: a + b, target: a + b, components: alloc::vec![op.unit(); a + b], perm }
}

/// `σ·f`: components reordered as `c_{σ(1)}, …, c_{σ(a)}` and the permutation
/// preceded by the block permutation `σ(k_1, …, k_a)`. Agrees with composing
/// the permutation morphism of `σ` before `f`.
pub fn left_sigma_action(op: &OperadTable, sigma: &Permutation, f: &SmcMorphism) -> Result<SmcMorphism> {
    if sigma.degree() != f.source {
        return Err(Error::Arity { expected: f.source, found: sigma.degree() });
    }
    let components: Vec<Op> = (0..f.source).map(|t| f.components[sigma.apply(t)]).collect();
    let perm = block_permutation(sigma, &f.arities())?.then(&f.perm);
    canonicalize_morphism(op, &SmcMorphism { source: f.source, target: f.target, components, perm })
}

/// Right action of `τ ∈ Σ_b`: composition with the permutation morphism.
pub fn right_sigma_action(op: &OperadTable, f: &SmcMorphism, tau: &Permutation) -> Result<SmcMorphism> {
    if tau.degree() != f.target {
        return Err(Error::Arity { expected: f.target, found: tau.degree() });
    }
    canonicalize_morphism(op, &SmcMorphism { perm: f.perm.then(tau), ..f.clone() })
}

/// Every canonical morphism `a → b`, in sorted order.
pub fn hom_set(op: &OperadTable, a: usize, b: usize) -> Result<Vec<SmcMorphism>> {
    if a == 0 {
        return Ok(if b == 0 { alloc::vec![identity(op, 0)] } else { Vec::new() });
    }
    let perms = Permutation::all(b);
    let mut out = BTreeSet::new();
    let mut tuples = Vec::new();
    component_tuples(op, a, b, &mut Vec::new(), &mut tuples);
    for comps in tuples {
        for p in &perms {
            out.insert(canonicalize_morphism(op, &SmcMorphism::new(comps.clone(), p.clone())?)?);
        }
    }
    Ok(out.into_iter().collect())
}

fn component_tuples(op: &OperadTable, a: usize, remaining: usize, prefix: &mut Vec<Op>, out: &mut Vec<Vec<Op>>) {
    if prefix.len() == a {
        if remaining == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    for k in 0..=remaining.min(op.max_arity()) {
        for c in op.elements(k) {
            prefix.push(c);
            component_tuples(op, a, remaining - k, prefix, out);
            prefix.pop();
        }
    }
}

/// A strict symmetric monoidal category with object set `ℕ` and finite
/// hom-sets, presented by its operations.
pub trait StrictSmc {
    type Mor: Clone + Ord + fmt::Debug;
    fn hom(&self, a: usize, b: usize) -> Result<Vec<Self::Mor>>;
    /// `f` then `g`.
    fn compose(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor>;
    fn tensor(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor>;
    fn identity(&self, a: usize) -> Self::Mor;
    /// The image of `σ` under `Σ_b → C(b, b)`.
    fn permutation(&self, sigma: &Permutation) -> Self::Mor;
    fn name(&self, f: &Self::Mor) -> String;
}

/// `C_O` as a [`StrictSmc`].
pub struct SmcOfOperad<'a> {
    pub op: &'a OperadTable,
}

pub fn smc_from_operad(op: &OperadTable) -> SmcOfOperad<'_> {
    SmcOfOperad { op }
}

impl StrictSmc for SmcOfOperad<'_> {
    type Mor = SmcMorphism;

    fn hom(&self, a: usize, b: usize) -> Result<Vec<SmcMorphism>> {
        hom_set(self.op, a, b)
    }

    fn compose(&self, f: &SmcMorphism, g: &SmcMorphism) -> Result<SmcMorphism> {
        smc_compose(self.op, f, g)
    }

    fn tensor(&self, f: &SmcMorphism, g: &SmcMorphism) -> Result<SmcMorphism> {
        smc_tensor(self.op, f, g)
    }

    fn identity(&self, a: usize) -> SmcMorphism {
        identity(self.op, a)
    }

    fn permutation(&self, sigma: &Permutation) -> SmcMorphism {
        permutation_morphism(self.op, sigma)
    }

    fn name(&self, f: &SmcMorphism) -> String {
        let names: Vec<&str> = f.components.iter().map(|&c| self.op.name(c)).collect();
        let mut s = names.join("|");
        s.push('/');
        for i in f.perm.one_based() {
            s.push_str(&alloc::format!("{i}"));
        }
        s
    }
}

/// The operad `O_C(n) = C(1, n)` with `γ(c; d_1, …, d_k) = c ; (d_1 ⊗ … ⊗ d_k)`
/// and `c·σ = c ; σ`. Condition (3), that `C(a, b)` is generated by tensor
/// products of morphisms out of `1` modulo the symmetric relation, is
/// verified for `a, b ≤ check_bound`; its failure is a not-operadic error.
pub fn operad_from_smc<C: StrictSmc>(cat: &C, max_arity: usize, check_bound: usize) -> Result<OperadTable> {
    let homs: Vec<Vec<C::Mor>> = (0..=max_arity).map(|n| cat.hom(1, n)).collect::<Result<_>>()?;
    let names: Vec<Vec<String>> = homs.iter().map(|h| h.iter().map(|f| cat.name(f)).collect()).collect();
    let index = |n: usize, f: &C::Mor| homs[n].binary_search(f).ok();
    let unit = index(1, &cat.identity(1)).ok_or_else(|| Error::NotOperadic("identity of 1 missing from C(1,1)".into()))?;
    let mut circ_entries = alloc::collections::BTreeMap::new();
    for k in 1..=max_arity {
        for j in 0..=(max_arity + 1 - k).min(max_arity) {
            for (c, cf) in homs[k].iter().enumerate() {
                for i in 0..k {
                    for (d, df) in homs[j].iter().enumerate() {
                        let inner = cat.tensor(&cat.tensor(&cat.identity(i), df)?, &cat.identity(k - i - 1))?;
                        let r = cat.compose(cf, &inner)?;
                        let ri = index(k + j - 1, &r).ok_or_else(|| {
                            Error::NotOperadic(alloc::format!("{} is not in C(1,{})", cat.name(&r), k + j - 1))
                        })?;
                        circ_entries.insert((k, c, i, j, d), ri);
                    }
                }
            }
        }
    }
    let mut action_entries = alloc::collections::BTreeMap::new();
    for n in 0..=max_arity {
        for (rank, sigma) in Permutation::all(n).iter().enumerate() {
            let p = cat.permutation(sigma);
            for (c, cf) in homs[n].iter().enumerate() {
                let r = cat.compose(cf, &p)?;
                let ri = index(n, &r).ok_or_else(|| Error::NotOperadic(alloc::format!("{} not in C(1,{n})", cat.name(&r))))?;
                action_entries.insert((n, c, rank), ri);
            }
        }
    }
    let point = (names[0].len() == 1).then_some(0);
    let op = OperadTable::assemble(crate::operad::RawTables {
        max_arity,
        names,
        unit,
        circ: circ_entries,
        action: action_entries,
        w: alloc::vec![unit],
        point,
    })?;
    check_condition_three(cat, &op, check_bound)?;
    Ok(op)
}

/// Compares `C_{O_C}(a, b)` with `C(a, b)` through the map
/// `(c_i; σ) ↦ (c_1 ⊗ … ⊗ c_a) ; σ` for all `a, b ≤ bound`.
fn check_condition_three<C: StrictSmc>(cat: &C, op: &OperadTable, bound: usize) -> Result<()> {
    // O_C identifiers are C-names; recover the morphisms by name
    let mut by_name = alloc::collections::BTreeMap::new();
    for n in 0..=op.max_arity() {
        for f in cat.hom(1, n)? {
            by_name.insert((n, cat.name(&f)), f);
        }
    }
    // beyond the tabulated arities C_{O_C} is truncated; stop before the
    // first arity where C itself still has morphisms out of 1
    let mut b_max = bound;
    for n in op.max_arity() + 1..=bound {
        if !cat.hom(1, n)?.is_empty() {
            b_max = n - 1;
            break;
        }
    }
    for a in 0..=bound {
        for b in 0..=b_max {
            let ours = hom_set(op, a, b)?;
            let theirs = cat.hom(a, b)?;
            let mut image = BTreeSet::new();
            for f in &ours {
                let mut acc = cat.identity(0);
                for &c in &f.components {
                    acc = cat.tensor(&acc, &by_name[&(c.arity(), String::from(op.name(c)))])?;
                }
                let g = cat.compose(&acc, &cat.permutation(&f.perm))?;
                if !image.insert(g.clone()) {
                    return Err(Error::NotOperadic(alloc::format!("C({a},{b}): {} has two factorizations", cat.name(&g))));
                }
            }
            if image.len() != theirs.len() || image.iter().zip(&theirs).any(|(x, y)| x != y) {
                return Err(Error::NotOperadic(alloc::format!(
                    "C({a},{b}) has {} morphisms but {} factorizations",
                    theirs.len(),
                    image.len()
                )));
            }
        }
    }
    Ok(())
}

/// Sends `c ∈ O(n)` to `(c; id) ∈ C_O(1, n)` and checks that this is an
/// isomorphism onto `O_{C_O}`.
pub fn check_roundtrip(op: &OperadTable, back: &OperadTable) -> Result<()> {
    let cat = smc_from_operad(op);
    if op.max_arity() != back.max_arity() {
        return Err(Error::NotOperadic("arity range changed".into()));
    }
    let map = |c: Op| -> Result<Op> {
        let f = canonicalize_morphism(op, &SmcMorphism::new(alloc::vec![c], Permutation::identity(c.arity()))?)?;
        back.lookup(c.arity(), &cat.name(&f)).ok_or_else(|| Error::NotOperadic(alloc::format!("{} lost", op.name(c))))
    };
    for n in 0..=op.max_arity() {
        let mut seen = BTreeSet::new();
        for c in op.elements(n) {
            seen.insert(map(c)?);
        }
        if seen.len() != op.size(n) || seen.len() != back.size(n) {
            return Err(Error::NotOperadic(alloc::format!("O({n}) is not in bijection with C(1,{n})")));
        }
    }
    let images: Vec<(Op, Op)> = op.all_elements().map(|c| Ok((c, map(c)?))).collect::<Result<_>>()?;
    let lookup = |c: Op| images.iter().find(|(x, _)| *x == c).map(|(_, y)| *y).expect("total");
    let w: Vec<Op> = op.w_elements().map(lookup).collect();
    crate::operad::OperadMap::new(op, &back.with_w(&w)?, lookup).map(|_| ())
}
