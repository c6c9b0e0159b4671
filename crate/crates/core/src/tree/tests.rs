use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::operad::{ass, comm, monoid_plus, weighted_comm, MonoidTable};

fn z2() -> OperadTable {
    monoid_plus(&MonoidTable::cyclic(2), None).unwrap()
}

fn bounds(height: usize, max_pieces: usize) -> ThBounds {
    ThBounds { height, max_pieces, ..ThBounds::default() }
}

/// Root `a1` owns Forward(2) `(α1, α2)` to `x2` (`a2`) and `x3` (`a3`); `x2`
/// owns Backward `(w11, w21)` to leaf 1 (`a4`); `x3` owns Backward
/// `(w12, w22)` to `x5` (`a5`), which owns Forward(2) `(γ1, γ2)` to leaves
/// 2 (`a6`) and 3 (`a7`).
#[allow(clippy::too_many_arguments)]
fn figure_three(a: [Op; 7], alpha: [Op; 2], w1: [Op; 2], w2: [Op; 2], g: [Op; 2]) -> TreeHammock {
    let v = |x: Op| alloc::vec![x];
    let x5 = Node::with_piece(v(a[4]), Kind::Forward, g.to_vec(), alloc::vec![Node::leaf(Some(1), v(a[5])), Node::leaf(Some(2), v(a[6]))]);
    let x2 = Node::with_piece(v(a[1]), Kind::Backward, w1.to_vec(), alloc::vec![Node::leaf(Some(0), v(a[3]))]);
    let x3 = Node::with_piece(v(a[2]), Kind::Backward, w2.to_vec(), alloc::vec![x5]);
    TreeHammock { arity: 3, height: 1, root: Node::with_piece(v(a[0]), Kind::Forward, alpha.to_vec(), alloc::vec![x2, x3]) }
}

fn figure_three_z2() -> (OperadTable, TreeHammock) {
    let op = weighted_comm(2, &MonoidTable::cyclic(2), None).unwrap();
    let (one, w) = (op.unit(), op.lookup(1, "w").unwrap());
    let two = |name: &str| op.lookup(2, name).unwrap();
    let h = figure_three([w, w, one, w, w, one, one], [two("1"), two("1")], [w, w], [w, one], [two("w"), two("1")]);
    (op, h)
}

#[test]
fn figure_three_caption_equations() {
    let (op, h) = figure_three_z2();
    assert!(validate_hammock(&op, &h, true).passed(), "{}", validate_hammock(&op, &h, true));
    let a: Vec<Op> = {
        let mut v = Vec::new();
        for path in [&[][..], &[0], &[1], &[0, 0], &[1, 0], &[1, 0, 0], &[1, 0, 1]] {
            v.push(h.root.at(path).verticals[0]);
        }
        v
    };
    let labels = |path: &[usize]| h.root.at(path).piece.as_ref().unwrap().labels.clone();
    let (alpha, w1, w2, g) = (labels(&[]), labels(&[0]), labels(&[1]), labels(&[1, 0]));
    let gm = |c: Op, d: &[Op]| op.gamma(c, d).unwrap();
    assert_eq!(gm(alpha[0], &[a[1], a[2]]), gm(a[0], &[alpha[1]]));
    assert_eq!(gm(w1[0], &[a[1]]), gm(a[3], &[w1[1]]));
    assert_eq!(gm(w2[0], &[a[2]]), gm(a[4], &[w2[1]]));
    assert_eq!(gm(g[0], &[a[5], a[6]]), gm(a[4], &[g[1]]));
}

#[test]
fn figure_three_breaks_when_a_square_does() {
    let (op, mut h) = figure_three_z2();
    let one = op.unit();
    h.root.at_mut(&[0, 0]).verticals[0] = one;
    let r = validate_hammock(&op, &h, true);
    assert!(r.has("commutativity"));
}

#[test]
fn figure_three_over_comm_has_identity_columns() {
    let op = comm(3);
    let (e1, e2) = (op.unit(), op.lookup(2, "e2").unwrap());
    let h = figure_three([e1; 7], [e2, e2], [e1, e1], [e1, e1], [e2, e2]);
    let r = validate_hammock(&op, &h, true);
    assert!(r.has("identity-column") && !r.has("commutativity"));
    let reduced = th_reduce(&op, &h).unwrap();
    assert_eq!(reduced.piece_count(), 1);
    assert_eq!(reduced, include_operad(&op, op.lookup(3, "e3").unwrap(), 1).unwrap());
}

#[test]
fn backward_label_outside_w_is_flagged() {
    let op = monoid_plus(&MonoidTable::cyclic(2), Some(&[0])).unwrap();
    let w = op.lookup(1, "w").unwrap();
    let h = TreeHammock {
        arity: 1,
        height: 0,
        root: Node::with_piece(Vec::new(), Kind::Backward, alloc::vec![w], alloc::vec![Node::leaf(Some(0), Vec::new())]),
    };
    assert!(validate_hammock(&op, &h, true).has("membership"));
}

#[test]
fn z2_counts_are_alternating_words() {
    let op = z2();
    for p in 0..=4 {
        assert_eq!(th_enumerate(&op, 1, &bounds(0, p)).unwrap().len(), 2 * p + 1, "p = {p}");
    }
}

#[test]
fn trivial_w_leaves_only_the_empty_tree() {
    let op = comm(3).with_trivial_w();
    let all = th_enumerate(&op, 1, &bounds(0, 3)).unwrap();
    assert_eq!(all, alloc::vec![TreeHammock::identity(&op, 0)]);
}

#[test]
fn forward_pair_over_z2_reduces_to_empty() {
    let op = z2();
    let w = op.lookup(1, "w").unwrap();
    let inner = Node::with_piece(Vec::new(), Kind::Forward, alloc::vec![w], alloc::vec![Node::leaf(Some(0), Vec::new())]);
    let h = TreeHammock { arity: 1, height: 0, root: Node::with_piece(Vec::new(), Kind::Forward, alloc::vec![w], alloc::vec![inner]) };
    assert_eq!(th_reduce(&op, &h).unwrap(), TreeHammock::identity(&op, 0));
}

fn s3_plus() -> OperadTable {
    let perms = Permutation::all(3);
    let names = perms.iter().map(|p| alloc::format!("{p}")).collect();
    let mul = perms.iter().map(|a| perms.iter().map(|b| a.then(b).rank()).collect()).collect();
    monoid_plus(&MonoidTable::new(names, 0, mul).unwrap(), None).unwrap()
}

#[test]
fn backward_merge_keeps_squares() {
    let op = s3_plus();
    let b = ThBounds { height: 1, max_pieces: 2, boundary: Boundary::Free, reduced_only: false, ..ThBounds::default() };
    let all = th_enumerate(&op, 1, &b).unwrap();
    let mut merged = 0;
    for h in &all {
        let r = th_reduce(&op, h).unwrap();
        assert!(validate_hammock(&op, &r, true).passed(), "{} -> {}", h.display(&op), r.display(&op));
        if th_redexes(&op, h).iter().any(|x| x.rule == Rule::MergeBackward) {
            merged += 1;
        }
    }
    assert!(merged > 0);
}

#[test]
fn reduction_is_confluent() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (op, pieces) in [(z2(), 4), (s3_plus(), 2), (weighted_comm(2, &MonoidTable::cyclic(2), None).unwrap(), 3)] {
        let b = ThBounds { height: 1, max_pieces: pieces, boundary: Boundary::Free, reduced_only: false, ..ThBounds::default() };
        let all = th_enumerate(&op, 1, &b).unwrap();
        for h in all.iter().step_by(7) {
            let first = th_reduce(&op, h).unwrap();
            let other = th_reduce_with(&op, h, |rs| rng.gen_range(0..rs.len())).unwrap();
            assert_eq!(first, other, "{}", h.display(&op));
            assert_eq!(th_reduce(&op, &first).unwrap(), first);
        }
    }
}

#[test]
fn witnesses_validate_and_have_the_stated_faces() {
    let op = z2();
    let w = op.lookup(1, "w").unwrap();
    let (first, second) = invertibility_witnesses(&op, w).unwrap();
    assert!(validate_hammock(&op, &first, true).passed());
    assert!(validate_hammock(&op, &second, true).passed());
    let fw = ops::unary_piece(&op, Kind::Forward, w).unwrap();
    let bw = ops::unary_piece(&op, Kind::Backward, w).unwrap();
    let id = TreeHammock::identity(&op, 0);
    let bf = th_graft(&op, &bw, 0, &fw, GraftStrategy::Strict).unwrap();
    let fb = th_graft(&op, &fw, 0, &bw, GraftStrategy::Strict).unwrap();
    assert_eq!(bf.piece_count(), 2);
    assert_eq!(th_face(&op, &first, 1).unwrap(), id);
    assert_eq!(th_face(&op, &first, 0).unwrap(), bf);
    assert_eq!(th_face(&op, &second, 0).unwrap(), id);
    assert_eq!(th_face(&op, &second, 1).unwrap(), fb);
}

#[test]
fn witnesses_at_the_unit_are_degenerate() {
    let op = z2();
    let (first, second) = invertibility_witnesses(&op, op.unit()).unwrap();
    let id = TreeHammock::identity(&op, 1);
    assert_eq!(first, id);
    assert_eq!(second, id);
}

#[test]
fn witnesses_need_w() {
    let op = monoid_plus(&MonoidTable::cyclic(2), Some(&[0])).unwrap();
    let w = op.lookup(1, "w").unwrap();
    assert!(matches!(invertibility_witnesses(&op, w), Err(crate::Error::NotInW(_))));
}

#[test]
fn face_of_degeneracy_is_identity() {
    let op = z2();
    let b = ThBounds { boundary: Boundary::Free, ..bounds(1, 3) };
    for h in th_enumerate(&op, 1, &b).unwrap() {
        for i in 0..=1 {
            let s = th_degeneracy(&op, &h, i).unwrap();
            assert_eq!(th_face(&op, &s, i).unwrap(), h);
            assert_eq!(th_face(&op, &s, i + 1).unwrap(), h);
        }
    }
}

#[test]
fn face_index_out_of_range() {
    let op = z2();
    assert!(th_face(&op, &TreeHammock::identity(&op, 0), 0).is_err());
    assert!(th_face(&op, &TreeHammock::identity(&op, 1), 2).is_err());
}

#[test]
fn graft_forward_then_backward_is_the_zigzag() {
    let op = z2();
    let w = op.lookup(1, "w").unwrap();
    let fw = ops::unary_piece(&op, Kind::Forward, w).unwrap();
    let bw = ops::unary_piece(&op, Kind::Backward, w).unwrap();
    let g = th_graft(&op, &fw, 0, &bw, GraftStrategy::Expansion).unwrap();
    assert_eq!(alloc::format!("{}", g.display(&op)), "F(w)[B(w)[#1]]");
    let id = TreeHammock::identity(&op, 0);
    assert_eq!(th_graft(&op, &fw, 0, &id, GraftStrategy::Expansion).unwrap(), fw);
}

#[test]
fn strict_graft_rejects_mismatched_junctions() {
    let op = z2();
    let w = op.lookup(1, "w").unwrap();
    let h1 = TreeHammock::identity(&op, 1);
    let h2 = TreeHammock::bare(alloc::vec![w]);
    assert!(matches!(th_graft(&op, &h1, 0, &h2, GraftStrategy::Strict), Err(crate::Error::JunctionMismatch { level: 0 })));
    let e = th_graft(&op, &h1, 0, &h2, GraftStrategy::Expansion).unwrap();
    assert!(validate_hammock(&op, &e, true).passed());
}

#[test]
fn include_operad_commutes_with_composition_in_ass() {
    let op = ass(3);
    for c in op.all_elements().filter(|c| (1..=3).contains(&c.arity())) {
        for d in op.all_elements().filter(|d| c.arity() + d.arity() <= 4 && d.arity() >= 1) {
            for i in 0..c.arity() {
                let lhs = include_operad(&op, op.circ(c, i, d).unwrap(), 0).unwrap();
                let hc = include_operad(&op, c, 0).unwrap();
                let hd = include_operad(&op, d, 0).unwrap();
                let rhs = th_graft(&op, &hc, i, &hd, GraftStrategy::Strict).unwrap();
                assert_eq!(lhs, rhs, "{} ∘_{} {}", op.name(c), i + 1, op.name(d));
            }
        }
    }
}

#[test]
fn include_comm_binary() {
    let op = comm(2);
    let h = include_operad(&op, op.lookup(2, "e2").unwrap(), 0).unwrap();
    assert_eq!(alloc::format!("{}", h.display(&op)), "F(e2)[#1,#2]");
    assert!(include_operad(&op, op.unit(), 2).unwrap().is_bare());
}

#[test]
fn sigma_action_relabels_leaves() {
    let op = ass(2);
    let c = op.lookup(2, "p12").unwrap();
    let h = include_operad(&op, c, 0).unwrap();
    let swap = Permutation::from_one_based(&[2, 1]).unwrap();
    let hs = th_sigma_action(&op, &h, &swap).unwrap();
    assert_eq!(hs, include_operad(&op, op.act(c, &swap).unwrap(), 0).unwrap());
    assert_eq!(th_sigma_action(&op, &hs, &swap).unwrap(), h);
}

#[test]
fn pi0_of_z2() {
    let op = z2();
    let b = bounds(1, 4);
    assert_eq!(th_pi0(&op, 1, &b).unwrap().count(), 2);
    let trivial = monoid_plus(&MonoidTable::cyclic(2), Some(&[0])).unwrap();
    assert_eq!(th_pi0(&trivial, 1, &b).unwrap().count(), 2);
}

#[test]
fn pi0_of_comm_with_trivial_w() {
    let op = comm(3).with_trivial_w();
    for n in 0..=3 {
        assert_eq!(th_pi0(&op, n, &bounds(1, 3)).unwrap().count(), op.size(n), "n = {n}");
    }
}

#[test]
fn enumeration_respects_max_results() {
    let op = z2();
    let b = ThBounds { max_results: 3, ..bounds(0, 4) };
    assert!(matches!(th_enumerate(&op, 1, &b), Err(crate::Error::Resource(_))));
}
