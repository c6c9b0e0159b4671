use alloc::vec::Vec;

use super::{Op, OperadTable};
use crate::perm::{block_permutation, direct_sum, Permutation};
use crate::report::AxiomReport;

/// Exhaustively checks an operad table: completeness, the right action laws,
/// both unit laws, sequential and parallel `∘_i` associativity, equivariance
/// in its block-permutation and direct-sum forms, and that `W` is a submonoid
/// of `O(1)`.
///
/// Equivariance is checked in the form matching [`block_permutation`]:
/// `γ(c·σ; d_1, …, d_k) = γ(c; d_{σ(1)}, …, d_{σ(k)})·σ(j_1, …, j_k)` and
/// `γ(c; d_1·τ_1, …, d_k·τ_k) = γ(c; d_1, …, d_k)·(τ_1 ⊕ … ⊕ τ_k)`.
pub fn check_operad_axioms(op: &OperadTable) -> AxiomReport {
    let mut report = AxiomReport::new();
    let n = op.max_arity();
    let name = |o: Op| op.name(o);

    for k in 1..=n {
        for j in 0..=(n + 1 - k).min(n) {
            for c in op.elements(k) {
                for i in 0..k {
                    for d in op.elements(j) {
                        if op.circ(c, i, d).is_err() {
                            report.push("completeness", alloc::format!("{} ∘_{} {}", name(c), i + 1, name(d)));
                        }
                    }
                }
            }
        }
    }
    let perms: Vec<Vec<Permutation>> = (0..=n).map(Permutation::all).collect();
    for a in 0..=n {
        for c in op.elements(a) {
            for sigma in &perms[a] {
                if op.action_entry(c, sigma).is_none() && !sigma.is_identity() {
                    report.push("completeness", alloc::format!("{}·{}", name(c), sigma));
                }
            }
        }
    }

    // right action
    for a in 0..=n {
        for c in op.elements(a) {
            if let Ok(r) = op.act(c, &Permutation::identity(a)) {
                if r != c {
                    report.push("action-identity", alloc::format!("{}·id = {}", name(c), name(r)));
                }
            }
            for s in &perms[a] {
                let Ok(cs) = op.act(c, s) else { continue };
                for t in &perms[a] {
                    let (Ok(l), Ok(r)) = (op.act(cs, t), op.act(c, &s.then(t))) else { continue };
                    if l != r {
                        report.push(
                            "action-associativity",
                            alloc::format!("({}·{})·{} = {} but {}·({}{}) = {}", name(c), s, t, name(l), name(c), s, t, name(r)),
                        );
                    }
                }
            }
        }
    }

    // unit laws
    let u = op.unit();
    for c in op.all_elements() {
        if let Ok(r) = op.circ(u, 0, c) {
            if r != c {
                report.push("left-unit", alloc::format!("1 ∘_1 {} = {}", name(c), name(r)));
            }
        }
        for i in 0..c.arity() {
            if let Ok(r) = op.circ(c, i, u) {
                if r != c {
                    report.push("right-unit", alloc::format!("{} ∘_{} 1 = {}", name(c), i + 1, name(r)));
                }
            }
        }
    }

    // ∘_i associativity
    let elems: Vec<Op> = op.all_elements().collect();
    for &c in elems.iter().filter(|c| c.arity() > 0) {
        let k = c.arity();
        for &d in &elems {
            let j = d.arity();
            if k + j - 1 > n {
                continue;
            }
            for &e in &elems {
                let l = e.arity();
                if k + j + l < 2 || k + j + l - 2 > n {
                    continue;
                }
                for i in 0..k {
                    let Ok(cd) = op.circ(c, i, d) else { continue };
                    for p in 0..j {
                        let (Ok(lhs), Ok(de)) = (op.circ(cd, i + p, e), op.circ(d, p, e)) else { continue };
                        let Ok(rhs) = op.circ(c, i, de) else { continue };
                        if lhs != rhs {
                            report.push(
                                "associativity",
                                alloc::format!(
                                    "({} ∘_{} {}) ∘_{} {} = {} but {} ∘_{} ({} ∘_{} {}) = {}",
                                    name(c), i + 1, name(d), i + p + 1, name(e), name(lhs),
                                    name(c), i + 1, name(d), p + 1, name(e), name(rhs)
                                ),
                            );
                        }
                    }
                    for i2 in (i + 1)..k {
                        let (Ok(lhs), Ok(ce)) = (op.circ(cd, i2 + j - 1, e), op.circ(c, i2, e)) else { continue };
                        let Ok(rhs) = op.circ(ce, i, d) else { continue };
                        if lhs != rhs {
                            report.push(
                                "associativity",
                                alloc::format!(
                                    "({} ∘_{} {}) ∘_{} {} = {} but ({} ∘_{} {}) ∘_{} {} = {}",
                                    name(c), i + 1, name(d), i2 + j, name(e), name(lhs),
                                    name(c), i2 + 1, name(e), i + 1, name(d), name(rhs)
                                ),
                            );
                        }
                    }
                }
            }
        }
    }

    // equivariance, over all argument tuples that fit
    for k in 1..=n {
        let mut tuples = Vec::new();
        argument_tuples(op, k, n, &mut Vec::new(), &mut tuples);
        for c in op.elements(k) {
            for args in &tuples {
                let Ok(base) = op.gamma(c, args) else { continue };
                let sizes: Vec<usize> = args.iter().map(|d| d.arity()).collect();
                for sigma in &perms[k] {
                    let Ok(cs) = op.act(c, sigma) else { continue };
                    let Ok(lhs) = op.gamma(cs, args) else { continue };
                    let permuted: Vec<Op> = (0..k).map(|t| args[sigma.apply(t)]).collect();
                    let Ok(g) = op.gamma(c, &permuted) else { continue };
                    let block = block_permutation(sigma, &sizes).expect("degrees agree");
                    let Ok(rhs) = op.act(g, &block) else { continue };
                    if lhs != rhs {
                        report.push(
                            "equivariance-block",
                            alloc::format!("c={} σ={} args=[{}]: {} vs {}", name(c), sigma, op.names_of(args), name(lhs), name(rhs)),
                        );
                    }
                }
                for s in 0..k {
                    for tau in perms[sizes[s]].iter().filter(|t| !t.is_identity()) {
                        let mut moved = args.clone();
                        let Ok(ds) = op.act(args[s], tau) else { continue };
                        moved[s] = ds;
                        let Ok(lhs) = op.gamma(c, &moved) else { continue };
                        let taus: Vec<Permutation> = sizes
                            .iter()
                            .enumerate()
                            .map(|(t, &j)| if t == s { tau.clone() } else { Permutation::identity(j) })
                            .collect();
                        let Ok(rhs) = op.act(base, &direct_sum(&taus)) else { continue };
                        if lhs != rhs {
                            report.push(
                                "equivariance-sum",
                                alloc::format!("c={} slot {} τ={} args=[{}]: {} vs {}", name(c), s + 1, tau, op.names_of(args), name(lhs), name(rhs)),
                            );
                        }
                    }
                }
            }
        }
    }

    // W is a submonoid
    if !op.in_w(u) {
        report.push("w-submonoid", "unit is not in W");
    }
    for a in op.w_elements() {
        for b in op.w_elements() {
            if let Ok(r) = op.mul(a, b) {
                if !op.in_w(r) {
                    report.push("w-submonoid", alloc::format!("{}·{} = {} is not in W", name(a), name(b), name(r)));
                }
            }
        }
    }
    report
}

/// All `k`-tuples of elements whose arities sum to at most `budget`.
fn argument_tuples(op: &OperadTable, k: usize, budget: usize, prefix: &mut Vec<Op>, out: &mut Vec<Vec<Op>>) {
    if prefix.len() == k {
        out.push(prefix.clone());
        return;
    }
    for a in 0..=budget {
        for d in op.elements(a) {
            prefix.push(d);
            argument_tuples(op, k, budget - a, prefix, out);
            prefix.pop();
        }
    }
}
