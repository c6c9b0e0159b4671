use alloc::vec::Vec;

use super::{Op, OperadTable};
use crate::perm::Permutation;
use crate::report::AxiomReport;
use crate::{Error, Result};

/// An arity-preserving map between two operad tables, stored elementwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperadMap {
    images: Vec<Vec<Op>>,
}

impl OperadMap {
    /// Builds and verifies the map `c ↦ f(c)`.
    pub fn new(source: &OperadTable, target: &OperadTable, f: impl Fn(Op) -> Op) -> Result<Self> {
        let mut images = Vec::new();
        for a in 0..=source.max_arity() {
            let row: Vec<Op> = source.elements(a).map(&f).collect();
            if row.iter().any(|&o| o.arity() != a || !target.contains(o)) {
                return Err(Error::NotAMap(alloc::format!("arity {a} is not sent into O'({a})")));
            }
            images.push(row);
        }
        let map = OperadMap { images };
        let report = map.check(source, target);
        if !report.passed() {
            return Err(Error::NotAMap(alloc::format!("{report}")));
        }
        Ok(map)
    }

    /// The identity map of `op`.
    pub fn identity(op: &OperadTable) -> Self {
        OperadMap { images: (0..=op.max_arity()).map(|a| op.elements(a).collect()).collect() }
    }

    /// The unique map into an operad with singleton arities, e.g. `Ass → Comm`.
    pub fn to_terminal(source: &OperadTable, target: &OperadTable) -> Result<Self> {
        Self::new(source, target, |c| Op::new(c.arity(), 0))
    }

    pub fn apply(&self, c: Op) -> Op {
        self.images[c.arity()][c.index()]
    }

    /// Compatibility with units, `∘_i`, the symmetric actions and `W`.
    pub fn check(&self, source: &OperadTable, target: &OperadTable) -> AxiomReport {
        let mut report = AxiomReport::new();
        if self.apply(source.unit()) != target.unit() {
            report.push("unit", "unit is not preserved");
        }
        for w in source.w_elements() {
            if !target.in_w(self.apply(w)) {
                report.push("w", alloc::format!("{} is sent outside W'", source.name(w)));
            }
        }
        let n = source.max_arity();
        for k in 1..=n {
            for j in 0..=(n + 1 - k).min(n) {
                for c in source.elements(k) {
                    for i in 0..k {
                        for d in source.elements(j) {
                            let Ok(r) = source.circ(c, i, d) else { continue };
                            match target.circ(self.apply(c), i, self.apply(d)) {
                                Ok(t) if t == self.apply(r) => {}
                                _ => report.push(
                                    "composition",
                                    alloc::format!("{} ∘_{} {}", source.name(c), i + 1, source.name(d)),
                                ),
                            }
                        }
                    }
                }
            }
        }
        for a in 0..=n {
            for sigma in Permutation::all(a) {
                for c in source.elements(a) {
                    let Ok(r) = source.act(c, &sigma) else { continue };
                    match target.act(self.apply(c), &sigma) {
                        Ok(t) if t == self.apply(r) => {}
                        _ => report.push("equivariance", alloc::format!("{}·{}", source.name(c), sigma)),
                    }
                }
            }
        }
        report
    }
}
