//! Permutations of `{1..n}` stored as image lists.
//!
//! Internally images are 0-based; [`Permutation::from_one_based`] and
//! [`Permutation::one_based`] convert at the boundary.
//!
//! Products are written left to right: `p.then(&q)` applies `p` first and then
//! `q`, so `(p.then(q))(i) = q(p(i))`. The right action of `Σ_n` on an operad
//! satisfies `(c·σ)·τ = c·(σ.then(τ))`.
//!
//! A block permutation `σ(j_1, …, j_k)` has source blocks arranged in the order
//! `j_{σ(1)}, …, j_{σ(k)}` and sends the block in source slot `t` onto block
//! `σ(t)` of the target arrangement `j_1, …, j_k`. With this convention
//! `σ ↦ σ(j)` is a homomorphism: `(σ.then(τ))(j) = σ(j^τ).then(τ(j))`, where
//! `j^τ` is the source arrangement of `τ(j)`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { images: (0..n).collect() }
    }

    /// Builds a permutation from 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::Invalid(alloc::format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    /// Builds a permutation from 1-based images, the exchange-format convention.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::Invalid(alloc::format!("{images:?} is not 1-based")));
        }
        Self::from_images(images.iter().map(|&i| i - 1).collect())
    }

    /// Builds a permutation of degree `n` from 1-based disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = alloc::vec![false; n];
        for cycle in cycles {
            for (pos, &x) in cycle.iter().enumerate() {
                let y = cycle[(pos + 1) % cycle.len()];
                if x == 0 || x > n || y == 0 || y > n || touched[x - 1] {
                    return Err(Error::Invalid(alloc::format!("bad cycle {cycle:?} in degree {n}")));
                }
                touched[x - 1] = true;
                images[x - 1] = y - 1;
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i + 1).collect()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "composing permutations of different degree");
        Permutation { images: self.images.iter().map(|&i| other.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = alloc::vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// Position of `self` in the lexicographic listing of `Σ_n`.
    pub fn rank(&self) -> usize {
        let n = self.degree();
        let mut rank = 0;
        for i in 0..n {
            let smaller = self.images[i + 1..].iter().filter(|&&x| x < self.images[i]).count();
            rank = rank * (n - i) + smaller;
        }
        rank
    }

    /// Inverse of [`Permutation::rank`].
    pub fn unrank(n: usize, mut rank: usize) -> Permutation {
        let mut digits = alloc::vec![0; n];
        for i in (0..n).rev() {
            let base = n - i;
            digits[i] = rank % base;
            rank /= base;
        }
        let mut pool: Vec<usize> = (0..n).collect();
        let images = digits.into_iter().map(|d| pool.remove(d)).collect();
        Permutation { images }
    }

    /// All of `Σ_n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        (0..factorial(n)).map(|r| Permutation::unrank(n, r)).collect()
    }
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn offsets(sizes: &[usize]) -> Vec<usize> {
    let mut acc = 0;
    sizes
        .iter()
        .map(|&s| {
            let o = acc;
            acc += s;
            o
        })
        .collect()
}

/// The block permutation `σ(j_1, …, j_k)`: source slot `t` holds a block of
/// size `j_{σ(t)}` which is carried, in order, onto block `σ(t)` of the target
/// arrangement `sizes`.
pub fn block_permutation(sigma: &Permutation, sizes: &[usize]) -> Result<Permutation> {
    if sigma.degree() != sizes.len() {
        return Err(Error::Arity { expected: sigma.degree(), found: sizes.len() });
    }
    let target = offsets(sizes);
    let mut images = Vec::with_capacity(sizes.iter().sum());
    for t in 0..sizes.len() {
        let block = sigma.apply(t);
        images.extend((0..sizes[block]).map(|r| target[block] + r));
    }
    Ok(Permutation { images })
}

/// The source arrangement of `block_permutation(sigma, sizes)`.
pub fn permuted_sizes(sigma: &Permutation, sizes: &[usize]) -> Vec<usize> {
    (0..sigma.degree()).map(|t| sizes[sigma.apply(t)]).collect()
}

/// `τ_1 ⊕ … ⊕ τ_k`: each summand acts inside its own consecutive block.
pub fn direct_sum(taus: &[Permutation]) -> Permutation {
    let mut images = Vec::with_capacity(taus.iter().map(Permutation::degree).sum());
    let mut offset = 0;
    for tau in taus {
        images.extend(tau.images.iter().map(|&i| i + offset));
        offset += tau.degree();
    }
    Permutation { images }
}

impl fmt::Display for Permutation {
    /// Cycle notation, 1-based; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = alloc::vec![false; self.degree()];
        let mut out = String::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            out.push('(');
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    out.push(' ');
                }
                first = false;
                out.push_str(&alloc::format!("{}", x + 1));
                x = self.images[x];
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self, self.one_based())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    /// Lays labeled blocks out in an array, slot `t` receiving block `σ(t)`,
    /// and reads off where each slot's entries live in the original layout.
    fn moved_blocks(sigma: &Permutation, sizes: &[usize]) -> Vec<usize> {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut next = 0;
        for &s in sizes {
            blocks.push((next..next + s).collect());
            next += s;
        }
        let mut array = Vec::new();
        for t in 0..sizes.len() {
            array.extend(blocks[sigma.apply(t)].iter().copied());
        }
        array
    }

    #[test]
    fn block_permutation_of_identity_is_identity() {
        let p = block_permutation(&Permutation::identity(3), &[2, 2, 2]).unwrap();
        assert!(p.is_identity());
        assert_eq!(p.degree(), 6);
    }

    #[test]
    fn figure_one_identity() {
        let sigma = cyc(3, &[&[1, 2]]);
        let tau = cyc(6, &[&[1, 2], &[3, 4, 5]]);
        let p = block_permutation(&sigma, &[1, 3, 2]).unwrap().then(&tau);
        assert_eq!(p, cyc(6, &[&[2, 4], &[3, 5]]));
    }

    #[test]
    fn three_cycle_on_uneven_blocks_matches_array_oracle() {
        let sigma = cyc(3, &[&[1, 2, 3]]);
        let expected = moved_blocks(&sigma, &[1, 1, 2]);
        // frozen from the oracle: slot 1 gets block 2, slot 2 block 3, slot 3 block 1
        assert_eq!(expected, vec![1, 2, 3, 0]);
        let p = block_permutation(&sigma, &[1, 1, 2]).unwrap();
        assert_eq!(p.images(), &[1, 2, 3, 0]);
    }

    #[test]
    fn block_permutation_rejects_degree_mismatch() {
        let e = block_permutation(&Permutation::identity(2), &[1, 2, 3]).unwrap_err();
        assert_eq!(e, Error::Arity { expected: 2, found: 3 });
    }

    #[test]
    fn direct_sum_examples() {
        let id1 = Permutation::identity(1);
        let id2 = Permutation::identity(2);
        let t = cyc(2, &[&[1, 2]]);
        assert!(direct_sum(&[id1.clone(), id2]).is_identity());
        assert_eq!(direct_sum(&[t.clone(), id1]), cyc(3, &[&[1, 2]]));
        assert_eq!(direct_sum(&[t.clone(), t]), cyc(4, &[&[1, 2], &[3, 4]]));
    }

    #[test]
    fn rank_roundtrip_and_lex_order() {
        let all = Permutation::all(4);
        assert_eq!(all.len(), 24);
        for (r, p) in all.iter().enumerate() {
            assert_eq!(p.rank(), r);
        }
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(Permutation::all(0), vec![Permutation::identity(0)]);
    }

    #[test]
    fn display_uses_cycles() {
        assert_eq!(alloc::format!("{}", cyc(6, &[&[2, 4], &[3, 5]])), "(2 4)(3 5)");
        assert_eq!(alloc::format!("{}", Permutation::identity(3)), "()");
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_one_based(&[1, 1]).is_err());
        assert!(Permutation::from_one_based(&[0, 1]).is_err());
        assert!(Permutation::from_images(vec![2, 0]).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn perm(n: usize) -> impl Strategy<Value = Permutation> {
            (0..factorial(n)).prop_map(move |r| Permutation::unrank(n, r))
        }

        fn perm_and_sizes() -> impl Strategy<Value = (Permutation, Vec<usize>)> {
            (1usize..5).prop_flat_map(|k| (perm(k), proptest::collection::vec(0usize..4, k)))
        }

        proptest! {
            #[test]
            fn block_matches_array_oracle((sigma, sizes) in perm_and_sizes()) {
                let p = block_permutation(&sigma, &sizes).unwrap();
                let expected = moved_blocks(&sigma, &sizes);
                prop_assert_eq!(p.images(), expected.as_slice());
            }

            #[test]
            fn unit_blocks_give_sigma(sigma in (1usize..6).prop_flat_map(perm)) {
                let ones = vec![1; sigma.degree()];
                prop_assert_eq!(block_permutation(&sigma, &ones).unwrap(), sigma);
            }

            #[test]
            fn block_is_homomorphism(
                (s, t, sizes) in (1usize..5).prop_flat_map(|k| (perm(k), perm(k), proptest::collection::vec(0usize..3, k)))
            ) {
                let lhs = block_permutation(&s.then(&t), &sizes).unwrap();
                let inner = permuted_sizes(&t, &sizes);
                let rhs = block_permutation(&s, &inner).unwrap().then(&block_permutation(&t, &sizes).unwrap());
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn direct_sum_is_homomorphism(
                (a, b, c, d) in (0usize..4, 0usize..4).prop_flat_map(|(m, n)| (perm(m), perm(n), perm(m), perm(n)))
            ) {
                let lhs = direct_sum(&[a.then(&c), b.then(&d)]);
                let rhs = direct_sum(&[a, b]).then(&direct_sum(&[c, d]));
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn inverse_cancels(p in (0usize..6).prop_flat_map(perm)) {
                prop_assert!(p.then(&p.inverse()).is_identity());
                prop_assert!(p.inverse().then(&p).is_identity());
            }
        }
    }
}
