//! Categories with a distinguished subcategory `W`, as consumed by the
//! hammock localization.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Debug;

use crate::operad::{MonoidTable, OperadTable};
use crate::smc::{self, SmcMorphism};
use crate::{Error, Result};

/// A category with a subcategory `W` and finitely enumerable hom-sets.
/// Composition is in diagram order: `compose(f, g)` is "`f`, then `g`".
pub trait Category {
    type Obj: Clone + Ord + Debug;
    type Mor: Clone + Ord + Debug;

    fn source(&self, f: &Self::Mor) -> Self::Obj;
    fn target(&self, f: &Self::Mor) -> Self::Obj;
    fn identity(&self, x: &Self::Obj) -> Self::Mor;
    fn compose(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor>;
    fn in_w(&self, f: &Self::Mor) -> bool;
    /// The objects over which interior chains of hammocks may range.
    fn objects(&self) -> Vec<Self::Obj>;
    fn hom(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Vec<Self::Mor>>;
    fn mor_name(&self, f: &Self::Mor) -> String;
    fn obj_name(&self, x: &Self::Obj) -> String;

    fn is_identity(&self, f: &Self::Mor) -> bool {
        *f == self.identity(&self.source(f))
    }

    fn w_hom(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Vec<Self::Mor>> {
        Ok(self.hom(a, b)?.into_iter().filter(|f| self.in_w(f)).collect())
    }
}

/// A finite category given by tables. Morphisms are indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    names: Vec<String>,
    source: Vec<usize>,
    target: Vec<usize>,
    identities: Vec<usize>,
    /// `comp[f][g]` is `f` then `g` when `target(f) = source(g)`.
    comp: Vec<Vec<Option<usize>>>,
    in_w: Vec<bool>,
}

impl FiniteCategory {
    /// Validates the category axioms and that `W` is a subcategory.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        objects: Vec<String>,
        names: Vec<String>,
        source: Vec<usize>,
        target: Vec<usize>,
        identities: Vec<usize>,
        comp: Vec<Vec<Option<usize>>>,
        w: Vec<usize>,
    ) -> Result<Self> {
        let m = names.len();
        let bad = |msg: String| Err(Error::Invalid(msg));
        if source.len() != m || target.len() != m || comp.len() != m || identities.len() != objects.len() {
            return bad("table sizes disagree".into());
        }
        let mut in_w = alloc::vec![false; m];
        for &f in &w {
            if f >= m {
                return bad(alloc::format!("W element {f} out of range"));
            }
            in_w[f] = true;
        }
        let cat = FiniteCategory { objects, names, source, target, identities, comp, in_w };
        for (x, &i) in cat.identities.iter().enumerate() {
            if i >= m || cat.source[i] != x || cat.target[i] != x || !cat.in_w[i] {
                return bad(alloc::format!("identity of object {x} is malformed or not in W"));
            }
        }
        for f in 0..m {
            for g in 0..m {
                let composable = cat.target[f] == cat.source[g];
                match (composable, cat.comp[f].get(g).copied().flatten()) {
                    (true, Some(h)) if h < m && cat.source[h] == cat.source[f] && cat.target[h] == cat.target[g] => {}
                    (false, None) => {}
                    _ => return bad(alloc::format!("composition {} ; {} is malformed", cat.names[f], cat.names[g])),
                }
                if composable && cat.in_w[f] && cat.in_w[g] && !cat.in_w[cat.comp[f][g].unwrap()] {
                    return bad(alloc::format!("W is not closed under {} ; {}", cat.names[f], cat.names[g]));
                }
            }
            if cat.comp[cat.identities[cat.source[f]]][f] != Some(f) || cat.comp[f][cat.identities[cat.target[f]]] != Some(f) {
                return bad(alloc::format!("unit law fails at {}", cat.names[f]));
            }
        }
        for f in 0..m {
            for g in 0..m {
                let Some(fg) = cat.comp[f][g] else { continue };
                for h in 0..m {
                    let Some(gh) = cat.comp[g][h] else { continue };
                    if cat.comp[fg][h] != cat.comp[f][gh] {
                        return bad(alloc::format!("associativity fails at ({}, {}, {})", cat.names[f], cat.names[g], cat.names[h]));
                    }
                }
            }
        }
        Ok(cat)
    }

    /// A monoid as a one-object category; morphism `i` is monoid element `i`.
    pub fn from_monoid(m: &MonoidTable, w: &[usize]) -> Result<Self> {
        let n = m.len();
        let comp = (0..n).map(|a| (0..n).map(|b| Some(m.mul[a][b])).collect()).collect();
        Self::new(
            alloc::vec!["*".to_string()],
            m.names.clone(),
            alloc::vec![0; n],
            alloc::vec![0; n],
            alloc::vec![m.unit],
            comp,
            w.to_vec(),
        )
    }

    /// The one-object category of `O(1)` with `W` from the operad.
    pub fn from_unary(op: &OperadTable) -> Result<Self> {
        let ops: Vec<_> = op.elements(1).collect();
        let n = ops.len();
        let mut comp = alloc::vec![alloc::vec![None; n]; n];
        for a in 0..n {
            for b in 0..n {
                comp[a][b] = Some(op.mul(ops[a], ops[b])?.index());
            }
        }
        let names = ops.iter().map(|&o| op.name(o).to_string()).collect();
        let w = ops.iter().filter(|&&o| op.in_w(o)).map(|o| o.index()).collect();
        Self::new(alloc::vec!["*".to_string()], names, alloc::vec![0; n], alloc::vec![0; n], alloc::vec![op.unit().index()], comp, w)
    }

    pub fn morphism_count(&self) -> usize {
        self.names.len()
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|x| x == name)
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    /// The same category with a different `W`.
    pub fn with_w(&self, w: &[usize]) -> Result<Self> {
        Self::new(
            self.objects.clone(),
            self.names.clone(),
            self.source.clone(),
            self.target.clone(),
            self.identities.clone(),
            self.comp.clone(),
            w.to_vec(),
        )
    }
}

impl Category for FiniteCategory {
    type Obj = usize;
    type Mor = usize;

    fn source(&self, f: &usize) -> usize {
        self.source[*f]
    }

    fn target(&self, f: &usize) -> usize {
        self.target[*f]
    }

    fn identity(&self, x: &usize) -> usize {
        self.identities[*x]
    }

    fn compose(&self, f: &usize, g: &usize) -> Result<usize> {
        self.comp[*f][*g].ok_or_else(|| Error::ObjectMismatch(alloc::format!("{} ; {}", self.names[*f], self.names[*g])))
    }

    fn in_w(&self, f: &usize) -> bool {
        self.in_w[*f]
    }

    fn objects(&self) -> Vec<usize> {
        (0..self.objects.len()).collect()
    }

    fn hom(&self, a: &usize, b: &usize) -> Result<Vec<usize>> {
        Ok((0..self.names.len()).filter(|&f| self.source[f] == *a && self.target[f] == *b).collect())
    }

    fn mor_name(&self, f: &usize) -> String {
        self.names[*f].clone()
    }

    fn obj_name(&self, x: &usize) -> String {
        self.objects[*x].clone()
    }
}

/// `C_O` with the subcategory `C_{W_+}` (components of arity at most one;
/// unary components in `W`, nullary ones equal to the designated point) and
/// objects `0..=max_object`.
pub struct OperadCategory<'a> {
    pub op: &'a OperadTable,
    pub max_object: usize,
}

impl<'a> OperadCategory<'a> {
    pub fn new(op: &'a OperadTable, max_object: usize) -> Self {
        OperadCategory { op, max_object }
    }
}

impl Category for OperadCategory<'_> {
    type Obj = usize;
    type Mor = SmcMorphism;

    fn source(&self, f: &SmcMorphism) -> usize {
        f.source
    }

    fn target(&self, f: &SmcMorphism) -> usize {
        f.target
    }

    fn identity(&self, x: &usize) -> SmcMorphism {
        smc::identity(self.op, *x)
    }

    fn compose(&self, f: &SmcMorphism, g: &SmcMorphism) -> Result<SmcMorphism> {
        smc::smc_compose(self.op, f, g)
    }

    fn in_w(&self, f: &SmcMorphism) -> bool {
        f.components.iter().all(|&c| match c.arity() {
            0 => self.op.point() == Some(c),
            1 => self.op.in_w(c),
            _ => false,
        })
    }

    fn objects(&self) -> Vec<usize> {
        (0..=self.max_object).collect()
    }

    fn hom(&self, a: &usize, b: &usize) -> Result<Vec<SmcMorphism>> {
        smc::hom_set(self.op, *a, *b)
    }

    fn mor_name(&self, f: &SmcMorphism) -> String {
        alloc::format!("{}", f.display(self.op))
    }

    fn obj_name(&self, x: &usize) -> String {
        alloc::format!("{x}")
    }
}
