//! One handler per subcommand. Handlers build a [`Report`]; printing and
//! exit codes are left to `main`.

use std::collections::BTreeSet;
use std::env;

use oploc_core::algebra::{
    check_algebra_axioms, check_monad_algebra, extend_action_to_height0, free_algebra, from_monad_algebra, to_monad_algebra, tuples, Bar,
    BasedSet,
};
use oploc_core::category::{FiniteCategory, OperadCategory};
use oploc_core::comparison::{monoid_hammock_to_tree, pad_to_equal_geodesics, r_functor, tree_to_monoid_hammock};
use oploc_core::dk::{dk_compose, dk_degeneracy, dk_enumerate, dk_face, dk_reduce, dk_validate, DkBounds, DkHammock};
use oploc_core::operad::{check_operad_axioms, OperadMap};
use oploc_core::smc::{check_roundtrip, hom_set, operad_from_smc, smc_compose, smc_from_operad, smc_tensor};
use oploc_core::tree::{
    invertibility_witnesses, th_degeneracy, th_enumerate, th_face, th_graft, th_pi0, th_reduce, unary_piece, validate_hammock, Boundary,
    GraftStrategy, Kind, ThBounds, TreeHammock,
};
use oploc_core::{Error, OperadTable};
use serde_json::{json, Value};

use crate::files::{self, DkFile, TreeFile};
use crate::report::{CliError, Report};
use crate::{AlgCmd, BoundaryArg, CategoryArg, Command, CompareCmd, DkCmd, OperadArgs, SmcCmd, Strategy, ThArgs, ThCmd};

type Res<T> = Result<T, CliError>;

/// Rough footprint of one enumerated hammock, used to turn the memory cap
/// into a result count.
const BYTES_PER_RESULT: usize = 512;
const DEFAULT_MAX_RESULTS: usize = 1_000_000;

fn max_results() -> Res<usize> {
    match env::var("OPLOC_MAX_MEM_MB") {
        Ok(v) => {
            let mb: usize = v.trim().parse().map_err(|_| CliError::Input(format!("OPLOC_MAX_MEM_MB={v:?} is not a number")))?;
            Ok((mb * 1024 * 1024 / BYTES_PER_RESULT).max(1))
        }
        Err(_) => Ok(DEFAULT_MAX_RESULTS),
    }
}

pub fn name(cmd: &Command) -> String {
    let sub = match cmd {
        Command::CheckOperad { .. } => "check-operad",
        Command::Smc(c) => match c {
            SmcCmd::Compose { .. } => "smc compose",
            SmcCmd::Tensor { .. } => "smc tensor",
            SmcCmd::Roundtrip { .. } => "smc roundtrip",
        },
        Command::Dk(c) => match c {
            DkCmd::Enumerate { .. } => "dk enumerate",
            DkCmd::Reduce { .. } => "dk reduce",
            DkCmd::Compose { .. } => "dk compose",
        },
        Command::Th(c) => match c {
            ThCmd::Enumerate { .. } => "th enumerate",
            ThCmd::Reduce { .. } => "th reduce",
            ThCmd::Graft { .. } => "th graft",
            ThCmd::Face { .. } => "th face",
            ThCmd::Witnesses { .. } => "th witnesses",
            ThCmd::Pi0 { .. } => "th pi0",
        },
        Command::Compare(c) => match c {
            CompareCmd::MonoidBijection { .. } => "compare monoid-bijection",
            CompareCmd::Rfunctor { .. } => "compare rfunctor",
            CompareCmd::PadRoundtrip { .. } => "compare pad-roundtrip",
        },
        Command::Alg(c) => match c {
            AlgCmd::Check { .. } => "alg check",
            AlgCmd::Free { .. } => "alg free",
            AlgCmd::Bar { .. } => "alg bar",
            AlgCmd::Localize { .. } => "alg localize",
        },
    };
    sub.into()
}

pub fn run(cmd: &Command) -> Res<Report> {
    let mut r = Report::new(&name(cmd));
    match cmd {
        Command::CheckOperad { path, operad, w_only } => {
            let path = match (path, operad) {
                (Some(p), None) | (None, Some(p)) => p,
                _ => return Err(CliError::Input("give the operad file either positionally or with --operad".into())),
            };
            let op = load(&OperadArgs { operad: path.clone(), w_only: *w_only })?;
            check_operad(&mut r, &op);
        }
        Command::Smc(c) => smc(&mut r, c)?,
        Command::Dk(c) => dk(&mut r, c)?,
        Command::Th(c) => th(&mut r, c)?,
        Command::Compare(c) => compare(&mut r, c)?,
        Command::Alg(c) => alg(&mut r, c)?,
    }
    Ok(r)
}

fn load(args: &OperadArgs) -> Res<OperadTable> {
    let op = files::load_operad(&args.operad)?;
    if args.w_only {
        files::restrict_to_w(&op)
    } else {
        Ok(op)
    }
}

fn th_bounds(b: &ThArgs) -> Res<ThBounds> {
    Ok(ThBounds {
        height: b.height,
        max_pieces: b.max_pieces,
        boundary: match b.boundary {
            BoundaryArg::Identity => Boundary::Identity,
            BoundaryArg::Free => Boundary::Free,
        },
        unlabeled_leaves: b.unlabeled_leaves,
        reduced_only: !b.unreduced,
        max_results: max_results()?,
    })
}

fn names(op: &OperadTable, arity: usize) -> Vec<String> {
    op.elements(arity).map(|o| op.name(o).to_string()).collect()
}

fn check_operad(r: &mut Report, op: &OperadTable) {
    let mut elements = serde_json::Map::new();
    for n in 0..=op.max_arity() {
        let ns = names(op, n);
        r.line(format!("O({n}): {} [{}]", ns.len(), ns.join(", ")));
        elements.insert(n.to_string(), json!(ns));
    }
    let w: Vec<String> = op.w_elements().map(|o| op.name(o).to_string()).collect();
    r.line(format!("W: [{}]", w.join(", ")));
    let report = check_operad_axioms(op);
    r.line(format!("axioms: {}", if report.passed() { "passed" } else { "failed" }));
    r.absorb(&report);
    r.result = json!({
        "max_arity": op.max_arity(),
        "unit": op.name(op.unit()),
        "point": op.point().map(|p| op.name(p).to_string()),
        "elements": elements,
        "w": w,
    });
}

fn smc(r: &mut Report, c: &SmcCmd) -> Res<()> {
    match c {
        SmcCmd::Compose { operad, f, g } | SmcCmd::Tensor { operad, f, g } => {
            let op = load(operad)?;
            let (f, g) = (files::parse_morphism(&op, f)?, files::parse_morphism(&op, g)?);
            let out = match c {
                SmcCmd::Compose { .. } => smc_compose(&op, &f, &g)?,
                _ => smc_tensor(&op, &f, &g)?,
            };
            let shown = files::show_morphism(&op, &out);
            r.line(format!("{} -> {}: {shown}", out.source, out.target));
            r.result = json!({ "source": out.source, "target": out.target, "morphism": shown });
        }
        SmcCmd::Roundtrip { operad, max_object } => {
            let op = load(operad)?;
            let back = operad_from_smc(&smc_from_operad(&op), op.max_arity(), *max_object)?;
            check_roundtrip(&op, &back)?;
            r.line(format!("operad recovered elementwise up to arity {}", op.max_arity()));
            let mut rows = Vec::new();
            for a in 0..=*max_object {
                let mut row = Vec::new();
                for b in 0..=*max_object {
                    let (x, y) = (hom_set(&op, a, b)?.len(), hom_set(&back, a, b)?.len());
                    if x != y {
                        r.violation("hom-set size", format!("|C({a},{b})| = {x} but {y} after the roundtrip"));
                    }
                    row.push(x);
                }
                r.line(format!("|C({a}, b)| for b = 0..={max_object}: {row:?}"));
                rows.push(row);
            }
            r.result = json!({ "max_arity": op.max_arity(), "hom_sizes": rows });
        }
    }
    Ok(())
}

fn unary_category(op: &OperadTable) -> Res<FiniteCategory> {
    Ok(FiniteCategory::from_unary(op)?)
}

fn checked_dk(cat: &FiniteCategory, h: &DkHammock<usize, usize>) -> Res<()> {
    let report = dk_validate(cat, h, false);
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::Input(format!("malformed hammock: {report}")))
    }
}

fn dk(r: &mut Report, c: &DkCmd) -> Res<()> {
    match c {
        DkCmd::Enumerate { operad, category, source, target, max_object, height, max_length } => {
            let op = load(operad)?;
            let bounds = DkBounds { height: *height, max_length: *max_length, max_results: max_results()? };
            let mut listed = Vec::new();
            match category {
                CategoryArg::Unary => {
                    if (*source, *target) != (0, 0) {
                        return Err(CliError::Input("the unary category has the single object 0".into()));
                    }
                    let cat = unary_category(&op)?;
                    for h in dk_enumerate(&cat, &0, &0, bounds)? {
                        let shown = h.display(&cat).to_string();
                        r.line(shown.clone());
                        listed.push(json!({ "display": shown, "hammock": DkFile::from_hammock(&op, &h) }));
                    }
                }
                CategoryArg::Smc => {
                    if source.max(target) > max_object {
                        return Err(CliError::Input(format!("objects must be at most --max-object {max_object}")));
                    }
                    let cat = OperadCategory::new(&op, *max_object);
                    for h in dk_enumerate(&cat, source, target, bounds)? {
                        let shown = h.display(&cat).to_string();
                        r.line(shown.clone());
                        listed.push(json!({ "display": shown }));
                    }
                }
            }
            r.line(format!("{} hammocks", listed.len()));
            r.result = json!({ "count": listed.len(), "hammocks": listed });
        }
        DkCmd::Reduce { operad, hammock } => {
            let op = load(operad)?;
            let cat = unary_category(&op)?;
            let h = files::load_dk(&op, hammock)?;
            checked_dk(&cat, &h)?;
            let out = dk_reduce(&cat, &h)?;
            dk_result(r, &op, &cat, &out);
        }
        DkCmd::Compose { operad, left, right } => {
            let op = load(operad)?;
            let cat = unary_category(&op)?;
            let (a, b) = (files::load_dk(&op, left)?, files::load_dk(&op, right)?);
            checked_dk(&cat, &a)?;
            checked_dk(&cat, &b)?;
            let out = dk_compose(&cat, &a, &b)?;
            dk_result(r, &op, &cat, &out);
        }
    }
    Ok(())
}

fn dk_result(r: &mut Report, op: &OperadTable, cat: &FiniteCategory, h: &DkHammock<usize, usize>) {
    let shown = h.display(cat).to_string();
    r.line(shown.clone());
    r.result = json!({ "display": shown, "hammock": DkFile::from_hammock(op, h) });
}

fn checked_tree(op: &OperadTable, h: &TreeHammock) -> Res<()> {
    let report = validate_hammock(op, h, false);
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::Input(format!("malformed hammock: {report}")))
    }
}

fn tree_json(op: &OperadTable, h: &TreeHammock) -> Value {
    json!({ "display": h.display(op).to_string(), "hammock": TreeFile::from_hammock(op, h) })
}

fn tree_result(r: &mut Report, op: &OperadTable, h: &TreeHammock) {
    r.line(h.display(op).to_string());
    r.result = tree_json(op, h);
}

fn strategy(s: Strategy) -> GraftStrategy {
    match s {
        Strategy::Strict => GraftStrategy::Strict,
        Strategy::Expansion => GraftStrategy::Expansion,
    }
}

fn th(r: &mut Report, c: &ThCmd) -> Res<()> {
    match c {
        ThCmd::Enumerate { operad, bounds } => {
            let op = load(operad)?;
            let hs = th_enumerate(&op, bounds.arity, &th_bounds(bounds)?)?;
            for h in &hs {
                r.line(h.display(&op).to_string());
            }
            r.line(format!("{} hammocks", hs.len()));
            r.result = json!({ "count": hs.len(), "hammocks": hs.iter().map(|h| tree_json(&op, h)).collect::<Vec<_>>() });
        }
        ThCmd::Reduce { operad, hammock } => {
            let op = load(operad)?;
            let h = files::load_tree(&op, hammock)?;
            checked_tree(&op, &h)?;
            tree_result(r, &op, &th_reduce(&op, &h)?);
        }
        ThCmd::Graft { operad, left, right, slot, strategy: s } => {
            let op = load(operad)?;
            let (a, b) = (files::load_tree(&op, left)?, files::load_tree(&op, right)?);
            checked_tree(&op, &a)?;
            checked_tree(&op, &b)?;
            let slot = slot.checked_sub(1).ok_or_else(|| CliError::Input("--slot is 1-based".into()))?;
            tree_result(r, &op, &th_graft(&op, &a, slot, &b, strategy(*s))?);
        }
        ThCmd::Face { operad, hammock, index } => {
            let op = load(operad)?;
            let h = files::load_tree(&op, hammock)?;
            checked_tree(&op, &h)?;
            tree_result(r, &op, &th_face(&op, &h, *index)?);
        }
        ThCmd::Witnesses { operad, w } => {
            let op = load(operad)?;
            let w = files::lookup_any(&op, w)?;
            if w.arity() != 1 {
                return Err(CliError::Input(format!("{} is not unary", op.name(w))));
            }
            if !op.in_w(w) {
                return Err(Error::NotInW(op.name(w).to_string()).into());
            }
            witnesses(r, &op, w)?;
        }
        ThCmd::Pi0 { operad, bounds } => {
            let op = load(operad)?;
            let pi0 = th_pi0(&op, bounds.arity, &th_bounds(bounds)?)?;
            let mut classes = Vec::new();
            for (i, class) in pi0.classes.iter().enumerate() {
                r.line(format!("class {}: {} hammocks, representative {}", i + 1, class.len(), class[0].display(&op)));
                classes.push(json!({
                    "size": class.len(),
                    "members": class.iter().map(|h| h.display(&op).to_string()).collect::<Vec<_>>(),
                }));
            }
            r.line(format!("{} components", pi0.count()));
            r.result = json!({ "count": pi0.count(), "classes": classes });
        }
    }
    Ok(())
}

fn witnesses(r: &mut Report, op: &OperadTable, w: oploc_core::Op) -> Res<()> {
    let (first, second) = invertibility_witnesses(op, w)?;
    let identity = TreeHammock::identity(op, 0);
    let f = unary_piece(op, Kind::Forward, w)?;
    let b = unary_piece(op, Kind::Backward, w)?;
    // first joins B(w)·F(w) to the identity, second joins the identity to F(w)·B(w)
    let expected = [
        (&first, [th_graft(op, &b, 0, &f, GraftStrategy::Strict)?, identity.clone()]),
        (&second, [identity.clone(), th_graft(op, &f, 0, &b, GraftStrategy::Strict)?]),
    ];
    let mut out = Vec::new();
    for (label, (h, want)) in ["first", "second"].iter().zip(expected) {
        r.line(format!("{label}: {}", h.display(op)));
        r.absorb(&validate_hammock(op, h, true));
        let mut faces = Vec::new();
        for (i, want) in want.iter().enumerate() {
            let face = th_face(op, h, i)?;
            r.line(format!("  d{i}: {}", face.display(op)));
            if &face != want {
                r.violation("witness face", format!("d{i} of the {label} witness is {} instead of {}", face.display(op), want.display(op)));
            }
            faces.push(face.display(op).to_string());
        }
        out.push(json!({ "witness": tree_json(op, h), "faces": faces }));
    }
    r.result = json!({ "w": op.name(w), "witnesses": out });
    Ok(())
}

fn compare(r: &mut Report, c: &CompareCmd) -> Res<()> {
    match c {
        CompareCmd::MonoidBijection { operad, height, max_length } => {
            let op = load(operad)?;
            if op.max_arity() > 1 {
                return Err(CliError::Input("the monoid comparison needs an operad concentrated in arities 0 and 1".into()));
            }
            monoid_bijection(r, &op, *height, *max_length)?;
        }
        CompareCmd::Rfunctor { operad, height, max_length } => {
            let op = load(operad)?;
            rfunctor(r, &op, *height, *max_length)?;
        }
        CompareCmd::PadRoundtrip { operad, bounds } => {
            let op = load(operad)?;
            let hs = th_enumerate(&op, bounds.arity, &th_bounds(bounds)?)?;
            for h in &hs {
                let g = pad_to_equal_geodesics(&op, h)?;
                let back = th_reduce(&op, g.hammock())?;
                if back != th_reduce(&op, h)? {
                    r.violation("pad roundtrip", format!("{} pads to {} which reduces to {}", h.display(&op), g.hammock().display(&op), back.display(&op)));
                }
            }
            r.line(format!("{} hammocks padded and reduced back", hs.len()));
            r.result = json!({ "hammocks": hs.len() });
        }
    }
    Ok(())
}

fn monoid_bijection(r: &mut Report, op: &OperadTable, height: usize, max_length: usize) -> Res<()> {
    let cat = unary_category(op)?;
    let max = max_results()?;
    let mut levels = Vec::new();
    let mut squares = 0usize;
    for k in 0..=height {
        let dk = dk_enumerate(&cat, &0, &0, DkBounds { height: k, max_length, max_results: max })?;
        let th = th_enumerate(op, 1, &ThBounds { height: k, max_pieces: max_length, max_results: max, ..ThBounds::default() })?;
        let to_tree = |h: &DkHammock<usize, usize>| monoid_hammock_to_tree(op, &cat, h);
        let images = dk.iter().map(to_tree).collect::<Result<Vec<_>, Error>>()?;
        let image_set: BTreeSet<&TreeHammock> = images.iter().collect();
        let th_set: BTreeSet<&TreeHammock> = th.iter().collect();
        if image_set.len() != dk.len() {
            r.violation("injective", format!("height {k}: {} hammocks have {} images", dk.len(), image_set.len()));
        }
        for t in th_set.difference(&image_set) {
            r.violation("surjective", format!("height {k}: {} is not hit", t.display(op)));
        }
        for t in image_set.difference(&th_set) {
            r.violation("image", format!("height {k}: {} is not an enumerated tree hammock", t.display(op)));
        }
        for (h, t) in dk.iter().zip(&images) {
            let shown = || h.display(&cat).to_string();
            if &tree_to_monoid_hammock(op, &cat, t)? != h {
                r.violation("inverse", shown());
            }
            let mut square = |name: &str, lhs: TreeHammock, rhs: TreeHammock| {
                squares += 1;
                if lhs != rhs {
                    r.violation(name, format!("{}: {} vs {}", shown(), lhs.display(op), rhs.display(op)));
                }
            };
            if k > 0 {
                for i in 0..=k {
                    square("face", to_tree(&dk_face(&cat, h, i)?)?, th_face(op, t, i)?);
                }
            }
            for i in 0..=k {
                square("degeneracy", to_tree(&dk_degeneracy(&cat, h, i)?)?, th_degeneracy(op, t, i)?);
            }
            for (g, u) in dk.iter().zip(&images).filter(|(g, _)| g.len() + h.len() <= max_length) {
                square("composition", to_tree(&dk_compose(&cat, h, g)?)?, th_graft(op, t, 0, u, GraftStrategy::Strict)?);
            }
        }
        r.line(format!("height {k}: {} hammocks on each side", dk.len()));
        levels.push(dk.len());
    }
    r.line(format!("{squares} commuting squares checked"));
    r.result = json!({ "hammocks": levels, "squares": squares });
    Ok(())
}

fn rfunctor(r: &mut Report, op: &OperadTable, height: usize, max_length: usize) -> Res<()> {
    let cat = OperadCategory::new(op, 1);
    let hs = dk_enumerate(&cat, &1, &1, DkBounds { height, max_length, max_results: max_results()? })?;
    let mut images = Vec::new();
    for h in &hs {
        images.push(match r_functor(op, h) {
            Ok(t) => Some(t),
            Err(Error::Unsupported(_)) => None,
            Err(e) => return Err(e.into()),
        });
    }
    let (mut pairs, mut excluded) = (0usize, 0usize);
    for (h1, r1) in hs.iter().zip(&images) {
        for (h2, r2) in hs.iter().zip(&images) {
            let (Some(r1), Some(r2)) = (r1, r2) else {
                excluded += 1;
                continue;
            };
            let lhs = r_functor(op, &dk_compose(&cat, h1, h2)?)?;
            let rhs = th_graft(op, r1, 0, r2, GraftStrategy::Strict)?;
            if lhs != rhs {
                r.violation(
                    "R preserves composition",
                    format!("{} then {}: {} vs {}", h1.display(&cat), h2.display(&cat), lhs.display(op), rhs.display(op)),
                );
            }
            pairs += 1;
        }
    }
    let in_domain = images.iter().filter(|i| i.is_some()).count();
    r.line(format!("{} hammocks 1 ⇝ 1, {in_domain} in the domain of R", hs.len()));
    r.line(format!("{pairs} composable pairs checked, {excluded} outside the domain"));
    r.result = json!({ "hammocks": hs.len(), "in_domain": in_domain, "pairs": pairs, "excluded": excluded });
    Ok(())
}

fn alg(r: &mut Report, c: &AlgCmd) -> Res<()> {
    match c {
        AlgCmd::Check { operad, algebra, max_leaves } => {
            let op = load(operad)?;
            let a = files::load_algebra(&op, algebra)?;
            let report = check_algebra_axioms(&op, &a);
            r.line(format!("algebra axioms: {}", if report.passed() { "passed" } else { "failed" }));
            r.absorb(&report);
            let mut monad = Value::Null;
            if report.passed() {
                let m = to_monad_algebra(&op, &a)?;
                let mr = check_monad_algebra(&op, &m, *max_leaves)?;
                r.line(format!("monad algebra laws up to {max_leaves} leaves: {}", if mr.passed() { "passed" } else { "failed" }));
                r.absorb(&mr);
                if from_monad_algebra(&op, &m)? != a {
                    r.violation("presentations agree", "the monad algebra does not give back the table");
                }
                monad = json!(mr.passed());
            }
            r.result = json!({ "carrier": a.carrier.names(), "axioms": report.passed(), "monad_laws": monad });
        }
        AlgCmd::Free { operad, carrier, max_elements } => {
            let op = load(operad)?;
            let names: Vec<String> = carrier.split(',').map(|s| s.trim().to_string()).collect();
            let x = BasedSet::new(names, 0)?;
            let (a, _) = free_algebra(&op, &x, *max_elements)?;
            for n in a.carrier.names() {
                r.line(n.clone());
            }
            r.line(format!("{} elements", a.carrier.len()));
            r.result = json!({ "elements": a.carrier.names() });
        }
        AlgCmd::Bar { operad, inner, algebra, map, height, max_leaves } => {
            let outer = load(operad)?;
            let inner = files::load_operad(inner)?;
            let a = files::load_algebra(&inner, algebra)?;
            let report = check_algebra_axioms(&inner, &a);
            if !report.passed() {
                r.line("not an algebra over the inner operad");
                r.absorb(&report);
                return Ok(());
            }
            let phi = match map {
                Some(path) => files::load_map(&inner, &outer, path)?,
                None if inner == outer => OperadMap::identity(&inner),
                None => OperadMap::to_terminal(&inner, &outer).map_err(|e| CliError::Input(format!("give --map: {e}")))?,
            };
            let bar = Bar { outer: &outer, inner: &inner, phi: &phi, alg: &a };
            let (sizes, report) = bar.check_simplicial(*height, *max_leaves)?;
            for (q, s) in sizes.iter().enumerate() {
                r.line(format!("level {q}: {s} elements"));
            }
            r.line(format!("simplicial identities: {}", if report.passed() { "passed" } else { "failed" }));
            r.absorb(&report);
            r.result = json!({ "level_sizes": sizes });
        }
        AlgCmd::Localize { operad, algebra, arity, max_pieces } => {
            let op = load(operad)?;
            let a = files::load_algebra(&op, algebra)?;
            let report = check_algebra_axioms(&op, &a);
            if !report.passed() {
                r.line("not an algebra");
                r.absorb(&report);
                return Ok(());
            }
            let max = max_results()?;
            let raw = ThBounds { height: 0, max_pieces: *max_pieces, reduced_only: false, unlabeled_leaves: true, max_results: max, ..ThBounds::default() };
            let mut hs = Vec::new();
            for n in 0..=*arity {
                hs.extend(th_enumerate(&op, n, &raw)?);
            }
            let (action, report) = extend_action_to_height0(&op, &a, &hs)?;
            r.line(format!("{} height-0 hammocks, action invariant under reduction: {}", hs.len(), report.passed()));
            r.absorb(&report);
            let mut table = Vec::new();
            let reduced = ThBounds { reduced_only: true, ..raw };
            for n in 0..=*arity {
                for h in th_enumerate(&op, n, &reduced)? {
                    let mut values = Vec::new();
                    for args in tuples(a.carrier.len(), n) {
                        let v = action.act(&a, &h, &args)?;
                        let shown: Vec<&str> = args.iter().map(|&x| a.carrier.name(x)).collect();
                        values.push(format!("({}) ↦ {}", shown.join(","), a.carrier.name(v)));
                    }
                    r.line(format!("{}: {}", h.display(&op), values.join(" ")));
                    table.push(json!({ "hammock": h.display(&op).to_string(), "values": values }));
                }
            }
            r.result = json!({ "hammocks": hs.len(), "action": table });
        }
    }
    Ok(())
}
