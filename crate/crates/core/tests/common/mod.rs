#![allow(dead_code)]

use std::collections::BTreeSet;
use std::fmt::Debug;

use oploc_core::algebra::{
    canonicalize_layered, free_terms, layered_terms, monad_eta_at, monad_mu, monad_mu_at, extend_action_to_height0, AlgebraTable, Bar,
    BasedSet, check_algebra_axioms,
};
use oploc_core::category::{FiniteCategory, OperadCategory};
use oploc_core::comparison::{monoid_hammock_to_tree, pad_to_equal_geodesics, r_functor, tree_to_monoid_hammock};
use oploc_core::dk::{dk_compose, dk_degeneracy, dk_enumerate, dk_face, DkBounds, DkHammock};
use oploc_core::operad::{ass, check_operad_axioms, comm, monoid_plus, weighted_comm, MonoidTable, OperadMap};
use oploc_core::smc::{
    hom_set, left_sigma_action, operad_from_smc, permutation_morphism, smc_compose, smc_from_operad, check_roundtrip, SmcMorphism,
};
use oploc_core::tree::{
    invertibility_witnesses, th_degeneracy, th_enumerate, th_face, th_graft, th_pi0, th_reduce, th_reduce_with, th_sigma_action,
    unary_piece, validate_hammock, Boundary, GraftStrategy, Kind, ThBounds, TreeHammock,
};
use oploc_core::{Error, Op, OperadTable, Permutation};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Outcome = Result<String, String>;

fn fail<E: Debug>(context: &str) -> impl Fn(E) -> String + '_ {
    move |e| format!("{context}: {e:?}")
}

pub fn z2() -> MonoidTable {
    MonoidTable::cyclic(2)
}

/// `Σ_3` as a monoid, "first a, then b".
pub fn s3() -> MonoidTable {
    let perms = Permutation::all(3);
    let names = perms.iter().map(|p| p.one_based().iter().map(|i| i.to_string()).collect::<String>()).collect();
    let unit = perms.iter().position(Permutation::is_identity).unwrap();
    let mul = perms.iter().map(|a| perms.iter().map(|b| perms.iter().position(|c| *c == a.then(b)).unwrap()).collect()).collect();
    MonoidTable::new(names, unit, mul).unwrap()
}

pub fn test_monoids() -> Vec<(&'static str, MonoidTable)> {
    vec![("trivial", MonoidTable::trivial()), ("Z/2", z2()), ("Z/3", MonoidTable::cyclic(3)), ("idempotent", MonoidTable::idempotent())]
}

pub fn test_operads() -> Vec<(String, OperadTable)> {
    let mut v = vec![("Comm".to_string(), comm(3)), ("Ass".to_string(), ass(3))];
    for (name, m) in test_monoids() {
        v.push((format!("{name}_+"), monoid_plus(&m, None).unwrap()));
    }
    v
}

pub fn tb(height: usize, max_pieces: usize) -> ThBounds {
    ThBounds { height, max_pieces, ..ThBounds::default() }
}

// ---------------------------------------------------------------- criterion 1

pub fn criterion_1() -> Outcome {
    let op = comm(3);
    let e = |n| op.elements(n).next().unwrap();
    let cyc = |n, c: &[&[usize]]| Permutation::from_cycles(n, c).unwrap();
    let f = SmcMorphism::new(vec![e(1), e(3), e(2)], cyc(6, &[&[1, 2], &[3, 4, 5]])).map_err(fail("morphism"))?;
    let sigma = cyc(3, &[&[1, 2]]);
    let g = left_sigma_action(&op, &sigma, &f).map_err(fail("action"))?;
    let expected = cyc(6, &[&[2, 4], &[3, 5]]);
    let via_compose = smc_compose(&op, &permutation_morphism(&op, &sigma), &f).map_err(fail("compose"))?;
    if g.perm != expected || g.components != vec![e(3), e(1), e(2)] || via_compose != g {
        return Err(format!("got perm {} components {}", g.perm, op.names_of(&g.components)));
    }
    Ok(format!("σ·f has permutation {}", g.perm))
}

// ---------------------------------------------------------------- criterion 2

/// Composition laws checked directly from `∘_i`, with the permutations of
/// the equivariance laws built from leaf bookkeeping. Only used on tables
/// whose action entries are known to be lawful.
pub fn naive_is_operad(op: &OperadTable) -> bool {
    let n = op.max_arity();
    let u = op.unit();
    let circ = |c: Op, i: usize, d: Op| op.circ(c, i, d).ok();
    let fits = |a: usize| a <= n;
    for a in 0..=n {
        for c in op.elements(a) {
            if circ(u, 0, c) != Some(c) {
                return false;
            }
            for i in 0..a {
                if circ(c, i, u) != Some(c) {
                    return false;
                }
            }
        }
    }
    for k in 1..=n {
        for c in op.elements(k) {
            for j in 0..=n {
                if !fits(k + j - 1) && j > 0 {
                    continue;
                }
                for d in op.elements(j) {
                    for i in 0..k {
                        let Some(cd) = circ(c, i, d) else { return false };
                        for l in 0..=n {
                            for e in op.elements(l) {
                                // sequential
                                for p in 0..j {
                                    if fits(k + j + l - 2) && fits(j + l - 1) {
                                        let lhs = circ(cd, i + p, e);
                                        let rhs = circ(d, p, e).and_then(|de| circ(c, i, de));
                                        if lhs != rhs {
                                            return false;
                                        }
                                    }
                                }
                                // parallel, i < m
                                for m in i + 1..k {
                                    if fits(k + j + l - 2) && fits(k + l - 1) {
                                        let lhs = circ(cd, m + j - 1, e);
                                        let rhs = circ(c, m, e).and_then(|ce| circ(ce, i, d));
                                        if lhs != rhs {
                                            return false;
                                        }
                                    }
                                }
                            }
                        }
                        // (c·σ) ∘_t d = (c ∘_s d)·β with σ(s) = t
                        for sigma in Permutation::all(k) {
                            let Ok(cs) = op.act(c, &sigma) else { return false };
                            let t = sigma.apply(i);
                            let beta = graft_relabel(k, i, j, &sigma);
                            let lhs = circ(cs, t, d);
                            let rhs = Permutation::from_images(beta).ok().and_then(|b| op.act(cd, &b).ok());
                            if lhs != rhs {
                                return false;
                            }
                        }
                        // c ∘_i (d·τ) = (c ∘_i d)·(1 ⊕ τ ⊕ 1)
                        for tau in Permutation::all(j) {
                            let Ok(dt) = op.act(d, &tau) else { return false };
                            let mut images: Vec<usize> = (0..k + j - 1).collect();
                            for r in 0..j {
                                images[i + r] = i + tau.apply(r);
                            }
                            let lhs = circ(c, i, dt);
                            let rhs = Permutation::from_images(images).ok().and_then(|b| op.act(cd, &b).ok());
                            if lhs != rhs {
                                return false;
                            }
                        }
                    }
                }
            }
        }
    }
    true
}

/// Where the inputs of `c ∘_s d` go in `(c·σ) ∘_{σ(s)} d`, reading `c·σ` as
/// relabeling input `l` of `c` to `σ(l)`.
pub fn graft_relabel(k: usize, s: usize, m: usize, sigma: &Permutation) -> Vec<usize> {
    let t = sigma.apply(s);
    let place = |label: usize, slot: usize| if label < slot { label } else { label + m - 1 };
    let mut images = vec![0; k + m - 1];
    for l in 0..k {
        if l != s {
            images[place(l, s)] = place(sigma.apply(l), t);
        }
    }
    for r in 0..m {
        images[s + r] = t + r;
    }
    images
}

pub fn criterion_2() -> Outcome {
    let mut lines = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for (name, op) in test_operads() {
        let report = check_operad_axioms(&op);
        if !report.passed() {
            return Err(format!("{name} fails its axioms: {report}"));
        }
        if !naive_is_operad(&op) {
            return Err(format!("{name}: the oracle rejects the unmutated table"));
        }
        let mut mutations = Vec::new();
        for (c, i, d) in op.circ_entries() {
            let current = op.circ(c, i, d).unwrap();
            for r in op.elements(current.arity()).filter(|&r| r != current) {
                mutations.push((c, i, d, r));
            }
        }
        mutations.shuffle(&mut rng);
        mutations.truncate(300);
        let (mut flagged, mut lawful) = (0, 0);
        for &(c, i, d, r) in &mutations {
            let mut m = op.clone();
            m.set_circ(c, i, d, r).map_err(fail("set_circ"))?;
            let checker = check_operad_axioms(&m).passed();
            let oracle = naive_is_operad(&m);
            if checker != oracle {
                return Err(format!(
                    "{name}: {} ∘_{} {} := {}: checker says {checker}, oracle says {oracle}",
                    op.name(c),
                    i + 1,
                    op.name(d),
                    op.name(r)
                ));
            }
            if checker {
                lawful += 1;
            } else {
                flagged += 1;
            }
        }
        if !mutations.is_empty() && flagged == 0 {
            return Err(format!("{name}: no mutation flagged"));
        }
        lines.push(format!("{name} {flagged}/{} flagged, {lawful} lawful", mutations.len()));
    }
    Ok(lines.join("; "))
}

// ---------------------------------------------------------------- criterion 3

/// `|C_O(a, b)| = Σ_{f: b → a} Π_s |O(|f⁻¹(s)|)|`.
pub fn hom_count_oracle(op: &OperadTable, a: usize, b: usize) -> usize {
    if a == 0 {
        return usize::from(b == 0);
    }
    let mut total = 0;
    let mut f = vec![0; b];
    loop {
        let mut fibers = vec![0; a];
        for &s in &f {
            fibers[s] += 1;
        }
        total += fibers.iter().map(|&k| if k <= op.max_arity() { op.size(k) } else { 0 }).product::<usize>();
        // next function
        let mut p = 0;
        loop {
            if p == b {
                return total;
            }
            f[p] += 1;
            if f[p] < a {
                break;
            }
            f[p] = 0;
            p += 1;
        }
    }
}

pub fn criterion_3() -> Outcome {
    let mut ops = test_operads();
    ops.push(("weighted Comm(Z/2)".into(), weighted_comm(3, &z2(), None).unwrap()));
    let mut pairs = 0;
    for (name, op) in &ops {
        let back = operad_from_smc(&smc_from_operad(op), op.max_arity(), 4).map_err(|e| format!("{name}: {e}"))?;
        check_roundtrip(op, &back).map_err(|e| format!("{name}: {e}"))?;
        for a in 0..=4 {
            for b in 0..=4 {
                let original = hom_set(op, a, b).map_err(fail("hom"))?.len();
                let again = hom_set(&back, a, b).map_err(fail("hom"))?.len();
                let oracle = hom_count_oracle(op, a, b);
                if original != again || original != oracle {
                    return Err(format!("{name} C({a},{b}): {original} vs {again}, expected {oracle}"));
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{} operads, {pairs} hom-set sizes", ops.len()))
}

// ---------------------------------------------------------------- criterion 4

/// The five families of simplicial identities on every element of every
/// level; `face(x, n, i)` and `degen(x, n, i)` take the level `n` of `x`.
/// Returns the number of equations checked.
pub fn simplicial_identities<T: Clone + PartialEq + Debug>(
    levels: &[Vec<T>],
    face: &dyn Fn(&T, usize, usize) -> Result<T, Error>,
    degen: &dyn Fn(&T, usize, usize) -> Result<T, Error>,
    show: &dyn Fn(&T) -> String,
) -> Result<usize, String> {
    let mut count = 0usize;
    let mut check = |family: &str, x: &T, lhs: Result<T, Error>, rhs: Result<T, Error>| -> Result<(), String> {
        count += 1;
        match (lhs, rhs) {
            (Ok(l), Ok(r)) if l == r => Ok(()),
            (l, r) => Err(format!("{family} on {}: {:?} vs {:?}", show(x), l.map(|v| show(&v)), r.map(|v| show(&v)))),
        }
    };
    for (n, xs) in levels.iter().enumerate() {
        for x in xs {
            for j in 0..=n {
                let s = degen(x, n, j).map_err(|e| format!("s_{j} on {}: {e}", show(x)))?;
                for i in 0..j {
                    if n >= 2 {
                        check("d_i d_j", x, face(x, n, j).and_then(|y| face(&y, n - 1, i)), face(x, n, i).and_then(|y| face(&y, n - 1, j - 1)))?;
                    }
                    if n >= 1 {
                        check("d_i s_j", x, face(&s, n + 1, i), face(x, n, i).and_then(|y| degen(&y, n - 1, j - 1)))?;
                    }
                }
                for i in [j, j + 1] {
                    check("d_j s_j = d_j+1 s_j = id", x, face(&s, n + 1, i), Ok(x.clone()))?;
                }
                for i in j + 2..=n + 1 {
                    check("d_i s_j (i > j + 1)", x, face(&s, n + 1, i), face(x, n, i - 1).and_then(|y| degen(&y, n - 1, j)))?;
                }
                for i in 0..=j {
                    check("s_i s_j", x, degen(&s, n + 1, i), degen(x, n, i).and_then(|y| degen(&y, n + 1, j + 1)))?;
                }
            }
        }
    }
    drop(check);
    Ok(count)
}

pub fn criterion_4() -> Outcome {
    let m = z2();
    let cat = FiniteCategory::from_monoid(&m, &[0, 1]).map_err(fail("category"))?;
    let dk_levels = (0..=2)
        .map(|h| dk_enumerate(&cat, &0, &0, DkBounds { height: h, max_length: 4, max_results: 1_000_000 }))
        .collect::<Result<Vec<_>, _>>()
        .map_err(fail("dk enumerate"))?;
    let dk = simplicial_identities(&dk_levels, &|h, _, i| dk_face(&cat, h, i), &|h, _, i| dk_degeneracy(&cat, h, i), &|h| format!("{h:?}"))?;

    let op = monoid_plus(&m, None).map_err(fail("operad"))?;
    let th_levels =
        (0..=2).map(|h| th_enumerate(&op, 1, &tb(h, 4))).collect::<Result<Vec<_>, _>>().map_err(fail("th enumerate"))?;
    let th = simplicial_identities(&th_levels, &|h, _, i| th_face(&op, h, i), &|h, _, i| th_degeneracy(&op, h, i), &|h| {
        h.display(&op).to_string()
    })?;
    fn sizes<T>(v: &[Vec<T>]) -> String {
        v.iter().map(|l| l.len().to_string()).collect::<Vec<_>>().join("/")
    }
    Ok(format!(
        "DK {} hammocks, {dk} equations; tree {} hammocks, {th} equations",
        sizes(&dk_levels),
        sizes(&th_levels)
    ))
}

// ---------------------------------------------------------------- criterion 5

pub fn reduction_instances() -> Vec<(String, OperadTable, Vec<TreeHammock>)> {
    let z2op = monoid_plus(&z2(), None).unwrap();
    let s3op = monoid_plus(&s3(), None).unwrap();
    // two labeled leaves and at most three nullary pieces bound every
    // intermediate arity, whatever the merge order
    let wc = weighted_comm(5, &z2(), None).unwrap();
    let raw = |height, max_pieces| ThBounds {
        height,
        max_pieces,
        boundary: Boundary::Free,
        reduced_only: false,
        unlabeled_leaves: true,
        ..ThBounds::default()
    };
    let mut out = Vec::new();
    for (name, op, n, b) in [
        ("Z/2_+ height 0", &z2op, 1, raw(0, 5)),
        ("Z/2_+ height 1", &z2op, 1, raw(1, 4)),
        ("S3_+ height 0", &s3op, 1, raw(0, 4)),
        ("S3_+ height 1", &s3op, 1, raw(1, 2)),
        ("weighted Comm arity 2", &wc, 2, ThBounds { unlabeled_leaves: false, ..raw(0, 4) }),
    ] {
        let hs = th_enumerate(op, n, &b).unwrap();
        out.push((name.to_string(), op.clone(), hs));
    }
    out
}

pub fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut orders, mut instances) = (0, 0);
    for (name, op, hs) in reduction_instances() {
        for h in &hs {
            let reference = th_reduce(&op, h).map_err(|e| format!("{name} {}: {e}", h.display(&op)))?;
            if th_reduce(&op, &reference).map_err(fail("idempotence"))? != reference {
                return Err(format!("{name}: reduction is not idempotent on {}", h.display(&op)));
            }
            if !validate_hammock(&op, &reference, true).passed() {
                return Err(format!("{name}: {} reduces to a non-reduced hammock", h.display(&op)));
            }
            instances += 1;
            let tries = if h.piece_count() >= 3 { 2 } else { 1 };
            for _ in 0..tries {
                let other = th_reduce_with(&op, h, |rs| rng.gen_range(0..rs.len())).map_err(fail("random order"))?;
                orders += 1;
                if other != reference {
                    return Err(format!(
                        "{name}: {} reduces to {} and {}",
                        h.display(&op),
                        reference.display(&op),
                        other.display(&op)
                    ));
                }
            }
        }
    }
    if orders < 1000 {
        return Err(format!("only {orders} randomized orders"));
    }
    Ok(format!("{orders} randomized orders over {instances} unreduced instances"))
}

// ---------------------------------------------------------------- criterion 6

pub fn witness_cases() -> Vec<(String, OperadTable)> {
    let mut v = Vec::new();
    for (name, m) in test_monoids().into_iter().chain([("S3", s3())]) {
        v.push((format!("{name}_+ W=M"), monoid_plus(&m, None).unwrap()));
        v.push((format!("{name}_+ W=1"), monoid_plus(&m, Some(&[m.unit])).unwrap()));
    }
    v.push(("weighted Comm(Z/2)".into(), weighted_comm(2, &z2(), None).unwrap()));
    v
}

pub fn criterion_6() -> Outcome {
    let mut count = 0;
    for (name, op) in witness_cases() {
        let identity = TreeHammock::identity(&op, 0);
        for w in op.w_elements().collect::<Vec<_>>() {
            let (first, second) = invertibility_witnesses(&op, w).map_err(|e| format!("{name} {}: {e}", op.name(w)))?;
            for h in [&first, &second] {
                let report = validate_hammock(&op, h, true);
                if !report.passed() {
                    return Err(format!("{name} {}: {report}", op.name(w)));
                }
            }
            let f = unary_piece(&op, Kind::Forward, w).map_err(fail("piece"))?;
            let b = unary_piece(&op, Kind::Backward, w).map_err(fail("piece"))?;
            let bf = th_graft(&op, &b, 0, &f, GraftStrategy::Strict).map_err(fail("graft"))?;
            let fb = th_graft(&op, &f, 0, &b, GraftStrategy::Strict).map_err(fail("graft"))?;
            let faces = |h: &TreeHammock| -> Result<(TreeHammock, TreeHammock), String> {
                Ok((th_face(&op, h, 0).map_err(fail("face"))?, th_face(&op, h, 1).map_err(fail("face"))?))
            };
            let (f0, f1) = faces(&first)?;
            let (s0, s1) = faces(&second)?;
            if f1 != identity || f0 != bf || s0 != identity || s1 != fb {
                return Err(format!(
                    "{name} {}: faces {} {} / {} {}",
                    op.name(w),
                    f0.display(&op),
                    f1.display(&op),
                    s0.display(&op),
                    s1.display(&op)
                ));
            }
            count += 1;
        }
    }
    Ok(format!("{count} (operad, w) pairs"))
}

// ---------------------------------------------------------------- criterion 7

pub fn criterion_7() -> Outcome {
    let m = z2();
    let mut notes = Vec::new();
    for w in [vec![0, 1], vec![0]] {
        let cat = FiniteCategory::from_monoid(&m, &w).map_err(fail("category"))?;
        let op = monoid_plus(&m, Some(&w)).map_err(fail("operad"))?;
        let to_tree = |h: &DkHammock<usize, usize>| monoid_hammock_to_tree(&op, &cat, h).map_err(fail("to tree"));
        let mut checks = 0;
        let mut levels = Vec::new();
        for height in 0..=1 {
            let dk = dk_enumerate(&cat, &0, &0, DkBounds { height, max_length: 4, max_results: 1_000_000 }).map_err(fail("dk"))?;
            let th = th_enumerate(&op, 1, &tb(height, 4)).map_err(fail("th"))?;
            let image: BTreeSet<TreeHammock> = dk.iter().map(&to_tree).collect::<Result<_, _>>()?;
            if image.len() != dk.len() || image != th.iter().cloned().collect() {
                return Err(format!("W={w:?} height {height}: {} DK hammocks, {} images, {} tree hammocks", dk.len(), image.len(), th.len()));
            }
            for h in &dk {
                let t = to_tree(h)?;
                if tree_to_monoid_hammock(&op, &cat, &t).map_err(fail("inverse"))? != *h {
                    return Err(format!("inverse fails on {h:?}"));
                }
                if height == 1 {
                    for i in 0..=1 {
                        let lhs = to_tree(&dk_face(&cat, h, i).map_err(fail("dk face"))?)?;
                        if lhs != th_face(&op, &t, i).map_err(fail("th face"))? {
                            return Err(format!("face {i} of {h:?}"));
                        }
                        checks += 1;
                    }
                }
                for i in 0..=height {
                    let lhs = to_tree(&dk_degeneracy(&cat, h, i).map_err(fail("dk degeneracy"))?)?;
                    if lhs != th_degeneracy(&op, &t, i).map_err(fail("th degeneracy"))? {
                        return Err(format!("degeneracy {i} of {h:?}"));
                    }
                    checks += 1;
                }
                for g in dk.iter().filter(|g| g.len() + h.len() <= 4) {
                    let lhs = to_tree(&dk_compose(&cat, h, g).map_err(fail("dk compose"))?)?;
                    let rhs = th_graft(&op, &t, 0, &to_tree(g)?, GraftStrategy::Strict).map_err(fail("graft"))?;
                    if lhs != rhs {
                        return Err(format!("composition of {h:?} and {g:?}"));
                    }
                    checks += 1;
                }
            }
            levels.push(dk.len().to_string());
        }
        notes.push(format!("W={w:?}: {} hammocks, {checks} commuting squares", levels.join("/")));
    }
    Ok(notes.join("; "))
}

// ---------------------------------------------------------------- criterion 8

pub fn criterion_8() -> Outcome {
    let op = monoid_plus(&z2(), None).map_err(fail("operad"))?;
    let cat = OperadCategory::new(&op, 1);
    let (mut pairs, mut excluded) = (0, 0);
    for height in 0..=1 {
        let hs = dk_enumerate(&cat, &1, &1, DkBounds { height, max_length: 2, max_results: 1_000_000 }).map_err(fail("dk"))?;
        let images: Vec<Option<TreeHammock>> = hs
            .iter()
            .map(|h| match r_functor(&op, h) {
                Ok(t) => Ok(Some(t)),
                Err(Error::Unsupported(_)) => Ok(None),
                Err(e) => Err(format!("R on {h:?}: {e}")),
            })
            .collect::<Result<_, _>>()?;
        for (h1, r1) in hs.iter().zip(&images) {
            for (h2, r2) in hs.iter().zip(&images) {
                let (Some(r1), Some(r2)) = (r1, r2) else {
                    excluded += 1;
                    continue;
                };
                let composite = dk_compose(&cat, h1, h2).map_err(fail("compose"))?;
                let lhs = r_functor(&op, &composite).map_err(|e| format!("R on the composite of {h1:?} and {h2:?}: {e}"))?;
                let rhs = th_graft(&op, r1, 0, r2, GraftStrategy::Strict).map_err(fail("graft"))?;
                if lhs != rhs {
                    return Err(format!("R(h1 * h2) = {} but R(h1) ∘ R(h2) = {}", lhs.display(&op), rhs.display(&op)));
                }
                pairs += 1;
            }
        }
    }

    let wc = weighted_comm(2, &z2(), None).map_err(fail("operad"))?;
    let mut padded = 0;
    for (o, arities) in [(&op, 0..=1), (&wc, 0..=2)] {
        for n in arities {
            for height in 0..=1 {
                for h in th_enumerate(o, n, &tb(height, 4)).map_err(fail("th"))? {
                    let g = pad_to_equal_geodesics(o, &h).map_err(|e| format!("pad {}: {e}", h.display(o)))?;
                    if th_reduce(o, g.hammock()).map_err(fail("reduce"))? != h {
                        return Err(format!("padding {} does not reduce back", h.display(o)));
                    }
                    padded += 1;
                }
            }
        }
    }
    Ok(format!("{pairs} composable pairs ({excluded} outside the domain of R); {padded} padding roundtrips"))
}

// ---------------------------------------------------------------- criterion 9

fn graft_both(op: &OperadTable, h1: &TreeHammock, i: usize, h2: &TreeHammock) -> Result<TreeHammock, String> {
    th_graft(op, h1, i, h2, GraftStrategy::Expansion).map_err(|e| format!("{} ∘_{} {}: {e}", h1.display(op), i + 1, h2.display(op)))
}

fn associativity(op: &OperadTable, a: &TreeHammock, b: &TreeHammock, c: &TreeHammock) -> Result<(), String> {
    for i in 0..a.arity {
        for p in 0..b.arity {
            let lhs = graft_both(op, &graft_both(op, a, i, b)?, i + p, c)?;
            let rhs = graft_both(op, a, i, &graft_both(op, b, p, c)?)?;
            if lhs != rhs {
                return Err(format!(
                    "({} ∘ {}) ∘ {} = {} but {}",
                    a.display(op),
                    b.display(op),
                    c.display(op),
                    lhs.display(op),
                    rhs.display(op)
                ));
            }
        }
    }
    Ok(())
}

fn equivariance(op: &OperadTable, a: &TreeHammock, b: &TreeHammock) -> Result<usize, String> {
    let mut n = 0;
    let sigma_act = |h: &TreeHammock, s: &Permutation| th_sigma_action(op, h, s).map_err(fail("action"));
    for s in 0..a.arity {
        let base = graft_both(op, a, s, b)?;
        for sigma in Permutation::all(a.arity) {
            let lhs = graft_both(op, &sigma_act(a, &sigma)?, sigma.apply(s), b)?;
            let beta = Permutation::from_images(graft_relabel(a.arity, s, b.arity, &sigma)).map_err(fail("perm"))?;
            if lhs != sigma_act(&base, &beta)? {
                return Err(format!("σ = {sigma} on {} ∘_{} {}", a.display(op), s + 1, b.display(op)));
            }
            n += 1;
        }
        for tau in Permutation::all(b.arity) {
            let lhs = graft_both(op, a, s, &sigma_act(b, &tau)?)?;
            let mut images: Vec<usize> = (0..a.arity + b.arity - 1).collect();
            for r in 0..b.arity {
                images[s + r] = s + tau.apply(r);
            }
            let beta = Permutation::from_images(images).map_err(fail("perm"))?;
            if lhs != sigma_act(&base, &beta)? {
                return Err(format!("τ = {tau} on {} ∘_{} {}", a.display(op), s + 1, b.display(op)));
            }
            n += 1;
        }
    }
    Ok(n)
}

fn identity_junction(a: &TreeHammock, i: usize, b: &TreeHammock, op: &OperadTable) -> bool {
    let leaf = a.root.at(&a.root.find_leaf(i).unwrap());
    leaf.verticals.iter().chain(&b.root.verticals).all(|&v| op.is_unit(v))
}

pub fn criterion_9() -> Outcome {
    let op = monoid_plus(&z2(), None).map_err(fail("operad"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut triples, mut agreements, mut equations) = (0, 0, 0);
    for height in 0..=1 {
        for boundary in [Boundary::Identity, Boundary::Free] {
            let hs = th_enumerate(&op, 1, &ThBounds { boundary, ..tb(height, 3) }).map_err(fail("th"))?;
            let all = hs.len().pow(3);
            if all <= 200_000 {
                for a in &hs {
                    for b in &hs {
                        for c in &hs {
                            associativity(&op, a, b, c)?;
                            triples += 1;
                        }
                    }
                }
            } else {
                for _ in 0..3000 {
                    let pick = |rng: &mut ChaCha8Rng| hs[rng.gen_range(0..hs.len())].clone();
                    let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
                    associativity(&op, &a, &b, &c)?;
                    triples += 1;
                }
            }
            for a in &hs {
                for b in &hs {
                    equations += equivariance(&op, a, b)?;
                    if identity_junction(a, 0, b, &op) {
                        let strict = th_graft(&op, a, 0, b, GraftStrategy::Strict).map_err(fail("strict"))?;
                        if strict != graft_both(&op, a, 0, b)? {
                            return Err(format!("strict and expansion differ on {} ∘ {}", a.display(&op), b.display(&op)));
                        }
                        agreements += 1;
                    }
                }
            }
        }
    }
    // Σ-equivariance needs arity at least 2
    let wc = weighted_comm(3, &z2(), None).map_err(fail("operad"))?;
    for height in 0..=1 {
        let b = tb(height, 2);
        let hs: Vec<TreeHammock> =
            (1..=2).map(|n| th_enumerate(&wc, n, &b)).collect::<Result<Vec<_>, _>>().map_err(fail("th"))?.concat();
        for a in &hs {
            for c in &hs {
                if a.arity + c.arity - 1 <= 3 {
                    equations += equivariance(&wc, a, c)?;
                }
            }
        }
    }
    Ok(format!("{triples} associativity triples, {equations} equivariance equations, {agreements} strict/expansion agreements"))
}

// ---------------------------------------------------------------- criterion 10

pub fn criterion_10() -> Outcome {
    let m = z2();
    let full = th_pi0(&monoid_plus(&m, None).map_err(fail("operad"))?, 1, &tb(1, 4)).map_err(fail("pi0"))?;
    let trivial = th_pi0(&monoid_plus(&m, Some(&[0])).map_err(fail("operad"))?, 1, &tb(1, 4)).map_err(fail("pi0"))?;
    if full.count() != 2 || trivial.count() != m.len() {
        return Err(format!("W = M: {} classes, W = {{1}}: {} classes", full.count(), trivial.count()));
    }
    Ok(format!("W = M: {} classes; W = {{1}}: {} classes", full.count(), trivial.count()))
}

// ---------------------------------------------------------------- criterion 11

pub fn based(names: &[&str]) -> BasedSet {
    BasedSet::new(names.iter().map(|s| s.to_string()).collect(), 0).unwrap()
}

/// Join in the chain `* < a < b`; the basepoint is the unit.
pub fn join_algebra(op: &OperadTable) -> AlgebraTable {
    AlgebraTable::from_fn(op, based(&["*", "a", "b"]), |_, args| args.iter().copied().max().unwrap_or(0))
}

pub fn criterion_11() -> Outcome {
    let op = comm(3);
    let x = based(&["*", "a", "b"]);
    let mut laws = 0;
    for t in free_terms(&op, &x, 3).map_err(fail("terms"))? {
        for i in 0..=1 {
            let back = monad_mu(&op, &x, &monad_eta_at(&op, &t, i)).map_err(fail("mu"))?;
            if back != t {
                return Err(format!("unit law {i} on {}", t.display(&[&op], &x)));
            }
            laws += 1;
        }
    }
    for t in layered_terms(&op, &x, 2, 3).map_err(fail("terms"))? {
        let canonical = canonicalize_layered(&[&op, &op], &x, &t).map_err(fail("canonical"))?;
        if monad_mu(&op, &x, &canonical).map_err(fail("mu"))? != monad_mu(&op, &x, &t).map_err(fail("mu"))? {
            return Err(format!("μ is not well defined at {}", t.display(&[&op, &op], &x)));
        }
        laws += 1;
    }
    for t in layered_terms(&op, &x, 3, 3).map_err(fail("terms"))? {
        let lhs = monad_mu(&op, &x, &monad_mu_at(&op, &t, 0).map_err(fail("mu"))?).map_err(fail("mu"))?;
        let rhs = monad_mu(&op, &x, &monad_mu_at(&op, &t, 1).map_err(fail("mu"))?).map_err(fail("mu"))?;
        if lhs != rhs {
            return Err(format!("associativity at {}", t.display(&[&op, &op, &op], &x)));
        }
        laws += 1;
    }

    let inner = ass(3);
    let alg = join_algebra(&inner);
    let palg = join_algebra(&op);
    if !check_algebra_axioms(&inner, &alg).passed() || !check_algebra_axioms(&op, &palg).passed() {
        return Err("the join algebra is not an algebra".into());
    }
    let phi = OperadMap::to_terminal(&inner, &op).map_err(fail("map"))?;
    let bar = Bar { outer: &op, inner: &inner, phi: &phi, alg: &alg };
    let levels = (0..=3).map(|q| bar.elements(q, 3)).collect::<Result<Vec<_>, _>>().map_err(fail("bar elements"))?;
    let sampled: usize = levels.iter().map(Vec::len).sum();
    if sampled < 200 {
        return Err(format!("only {sampled} bar elements"));
    }
    let show = |b: &oploc_core::algebra::Layered| format!("{b:?}");
    let equations = simplicial_identities(&levels, &|b, q, i| bar.face(q, b, i), &|b, q, i| bar.degeneracy(q, b, i), &show)?;

    let id = OperadMap::identity(&inner);
    let free_side = Bar { outer: &inner, inner: &inner, phi: &id, alg: &alg };
    let mut composites = 0;
    for q in 0..=2 {
        for b in free_side.elements(q, 3).map_err(fail("bar elements"))? {
            let pushed = bar.push_forward(q, &b).map_err(fail("push forward"))?;
            let r = bar.retraction(&palg, &pushed).map_err(fail("retraction"))?;
            if r != free_side.augmentation(&b).map_err(fail("augmentation"))? {
                return Err(format!("retraction composite differs at {b:?}"));
            }
            composites += 1;
        }
    }
    Ok(format!("{laws} monad equations, {equations} bar identities on {sampled} elements, {composites} retraction composites"))
}

// ---------------------------------------------------------------- criterion 12

pub fn swap_algebra(op: &OperadTable) -> AlgebraTable {
    let w = op.lookup(1, "w").unwrap();
    AlgebraTable::from_fn(op, based(&["*", "x", "y"]), move |c, args| match args {
        [] => 0,
        [e] if c == w && *e != 0 => 3 - e,
        [e] => *e,
        _ => unreachable!("Z/2_+ has no operations of arity above one"),
    })
}

pub fn criterion_12() -> Outcome {
    let op = monoid_plus(&z2(), None).map_err(fail("operad"))?;
    let alg = swap_algebra(&op);
    let report = check_algebra_axioms(&op, &alg);
    if !report.passed() {
        return Err(format!("not an algebra: {report}"));
    }
    let mut hs = Vec::new();
    for n in 0..=1 {
        let b = ThBounds { height: 0, max_pieces: 4, reduced_only: false, unlabeled_leaves: true, ..ThBounds::default() };
        hs.extend(th_enumerate(&op, n, &b).map_err(fail("th"))?);
    }
    let (_, report) = extend_action_to_height0(&op, &alg, &hs).map_err(fail("extend"))?;
    if !report.passed() {
        return Err(format!("{report}"));
    }
    Ok(format!("{} hammocks", hs.len()))
}

pub fn all_criteria() -> Vec<(usize, &'static str, fn() -> Outcome)> {
    vec![
        (1, "left Σ-action on C_Comm", criterion_1 as fn() -> Outcome),
        (2, "operad axioms and mutations", criterion_2),
        (3, "operad / SMC roundtrip", criterion_3),
        (4, "simplicial identities", criterion_4),
        (5, "reduction canonicity", criterion_5),
        (6, "invertibility witnesses", criterion_6),
        (7, "monoid hammock bijection", criterion_7),
        (8, "reduction functor and padding", criterion_8),
        (9, "grafting laws", criterion_9),
        (10, "bounded π₀", criterion_10),
        (11, "monad and bar", criterion_11),
        (12, "height-zero action", criterion_12),
    ]
}
