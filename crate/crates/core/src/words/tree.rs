//! Reduced tree pairs: the combinatorial canonical form behind the word
//! machinery, plus exhaustive enumeration and seeded random elements.
//!
//! A tree pair is two finite binary trees with the same leaf count; the
//! element maps the standard dyadic partition of the domain tree affinely
//! onto the partition of the range tree, leaf by leaf.

use crate::dyadic::Dyadic;
use crate::plf::PlHomeo;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tree {
    Leaf,
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn leaves(&self) -> usize {
        match self {
            Tree::Leaf => 1,
            Tree::Node(l, r) => l.leaves() + r.leaves(),
        }
    }

    /// Boundaries of the standard dyadic partition carved by this tree over
    /// [lo,hi]: lo, the internal cut points in order, then hi.
    fn boundaries_into(&self, lo: &Dyadic, hi: &Dyadic, out: &mut Vec<Dyadic>) {
        match self {
            Tree::Leaf => out.push(hi.clone()),
            Tree::Node(l, r) => {
                let mid = (lo + hi).halve();
                l.boundaries_into(lo, &mid, out);
                r.boundaries_into(&mid, hi, out);
            }
        }
    }

    pub fn boundaries(&self) -> Vec<Dyadic> {
        let mut out = vec![Dyadic::zero()];
        self.boundaries_into(&Dyadic::zero(), &Dyadic::one(), &mut out);
        out
    }

    /// Bit i set when leaves i and i+1 are the two children of one caret.
    fn sibling_mask(&self) -> u64 {
        fn go(t: &Tree, first_leaf: usize, mask: &mut u64) -> usize {
            match t {
                Tree::Leaf => first_leaf + 1,
                Tree::Node(l, r) => {
                    if matches!(**l, Tree::Leaf) && matches!(**r, Tree::Leaf) {
                        *mask |= 1 << first_leaf;
                    }
                    let next = go(l, first_leaf, mask);
                    go(r, next, mask)
                }
            }
        }
        let mut mask = 0;
        go(self, 0, &mut mask);
        mask
    }

    /// Root-to-leaf direction strings, false = left edge.
    fn leaf_paths(&self) -> Vec<Vec<bool>> {
        fn go(t: &Tree, path: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
            match t {
                Tree::Leaf => out.push(path.clone()),
                Tree::Node(l, r) => {
                    path.push(false);
                    go(l, path, out);
                    path.pop();
                    path.push(true);
                    go(r, path, out);
                    path.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// The normal-form exponent of each leaf: the length of the maximal
    /// chain of left edges climbing from the leaf that stays off the right
    /// spine of the tree.
    pub fn leaf_exponents(&self) -> Vec<u64> {
        self.leaf_paths()
            .into_iter()
            .map(|path| {
                let m = path.len();
                let run = path.iter().rev().take_while(|d| !**d).count();
                // 1-based position of the first left edge; m+1 when all-right
                let first_left = path
                    .iter()
                    .position(|d| !*d)
                    .map(|p| p + 1)
                    .unwrap_or(m + 1);
                (m as i64 - (m - run).max(first_left) as i64).max(0) as u64
            })
            .collect()
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf => write!(f, "*"),
            Tree::Node(l, r) => write!(f, "({l} {r})"),
        }
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A pair of equal-leaf-count trees; reduced pairs are canonical forms of
/// elements of F.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TreePair {
    pub domain: Tree,
    pub range: Tree,
}

impl TreePair {
    pub fn new(domain: Tree, range: Tree) -> Self {
        assert_eq!(domain.leaves(), range.leaves(), "leaf counts must match");
        TreePair { domain, range }
    }

    pub fn leaves(&self) -> usize {
        self.domain.leaves()
    }

    /// No caret is shared: no i such that leaves i,i+1 are siblings in both.
    pub fn is_reduced(&self) -> bool {
        self.domain.sibling_mask() & self.range.sibling_mask() == 0
    }

    /// The PL map sending the domain partition onto the range partition.
    pub fn to_plf(&self) -> PlHomeo {
        let pairs = self
            .domain
            .boundaries()
            .into_iter()
            .zip(self.range.boundaries())
            .collect();
        PlHomeo::from_monotone_pairs(pairs)
    }
}

impl fmt::Display for TreePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.domain, self.range)
    }
}

fn is_standard_dyadic(lo: &Dyadic, hi: &Dyadic) -> bool {
    let len = hi - lo;
    match len.pow2_split() {
        Some((odd, p)) if odd == 1.into() && p <= 0 => lo.exponent() as i64 <= -p,
        _ => false,
    }
}

fn has_breakpoint_strictly_inside(f: &PlHomeo, lo: &Dyadic, hi: &Dyadic) -> bool {
    f.breakpoints().iter().any(|(x, _)| x > lo && x < hi)
}

/// Refines f's breakpoints to a pair of standard dyadic partitions: f is
/// affine on each domain cell and maps it onto a standard dyadic image cell.
fn standard_partition_pair(f: &PlHomeo) -> (Vec<Dyadic>, Vec<Dyadic>) {
    fn go(f: &PlHomeo, lo: &Dyadic, hi: &Dyadic, dom: &mut Vec<Dyadic>, ran: &mut Vec<Dyadic>) {
        let flo = f.eval_in(lo);
        let fhi = f.eval_in(hi);
        if !has_breakpoint_strictly_inside(f, lo, hi) && is_standard_dyadic(&flo, &fhi) {
            dom.push(hi.clone());
            ran.push(fhi);
            return;
        }
        let mid = (lo + hi).halve();
        go(f, lo, &mid, dom, ran);
        go(f, &mid, hi, dom, ran);
    }
    let mut dom = vec![Dyadic::zero()];
    let mut ran = vec![Dyadic::zero()];
    go(f, &Dyadic::zero(), &Dyadic::one(), &mut dom, &mut ran);
    (dom, ran)
}

/// Removes common carets: adjacent equal-length sibling cells merged on both
/// sides simultaneously, until none remain.
fn reduce_partition_pair(dom: &mut Vec<Dyadic>, ran: &mut Vec<Dyadic>) {
    let sibling = |a: &Dyadic, m: &Dyadic, b: &Dyadic| {
        (m - a) == (b - m) && is_standard_dyadic(a, m) && is_standard_dyadic(a, b)
    };
    let mut i = 1;
    while i + 1 < dom.len() {
        if sibling(&dom[i - 1], &dom[i], &dom[i + 1]) && sibling(&ran[i - 1], &ran[i], &ran[i + 1])
        {
            dom.remove(i);
            ran.remove(i);
            i = i.saturating_sub(1).max(1);
        } else {
            i += 1;
        }
    }
}

/// Builds the binary tree whose leaf cells are the given standard dyadic
/// partition of the standard interval [bounds[0], bounds[last]].
fn tree_of_partition(bounds: &[Dyadic]) -> Tree {
    if bounds.len() == 2 {
        return Tree::Leaf;
    }
    let mid = (&bounds[0] + &bounds[bounds.len() - 1]).halve();
    let pos = bounds
        .iter()
        .position(|x| *x == mid)
        .expect("standard dyadic partition always contains the midpoint");
    Tree::Node(
        Box::new(tree_of_partition(&bounds[..=pos])),
        Box::new(tree_of_partition(&bounds[pos..])),
    )
}

/// The unique reduced tree pair of an element.
pub fn tree_pair(f: &PlHomeo) -> TreePair {
    let (mut dom, mut ran) = standard_partition_pair(f);
    reduce_partition_pair(&mut dom, &mut ran);
    let pair = TreePair::new(tree_of_partition(&dom), tree_of_partition(&ran));
    debug_assert!(pair.is_reduced());
    debug_assert_eq!(pair.to_plf(), *f);
    pair
}

/// All binary trees with the given leaf count, in a fixed deterministic
/// order (left subtree size ascending, then recursively).
pub fn all_trees(leaves: usize) -> Vec<Tree> {
    if leaves == 1 {
        return vec![Tree::Leaf];
    }
    let mut out = Vec::new();
    for left in 1..leaves {
        for l in all_trees(left) {
            for r in all_trees(leaves - left) {
                out.push(Tree::Node(Box::new(l.clone()), Box::new(r)));
            }
        }
    }
    out
}

/// Every element of F with a reduced tree pair of at most `max_leaves`
/// leaves, each exactly once, in a fixed deterministic order.
pub fn enumerate_elements(max_leaves: usize) -> impl Iterator<Item = PlHomeo> {
    assert!(
        (1..=32).contains(&max_leaves),
        "enumeration bound must be in 1..=32"
    );
    (1..=max_leaves).flat_map(|l| {
        let trees = Arc::new(all_trees(l));
        let masks: Arc<Vec<u64>> = Arc::new(trees.iter().map(|t| t.sibling_mask()).collect());
        let n = trees.len();
        (0..n).flat_map(move |i| {
            let trees = Arc::clone(&trees);
            let masks = Arc::clone(&masks);
            (0..n).filter_map(move |j| {
                if masks[i] & masks[j] == 0 {
                    Some(TreePair::new(trees[i].clone(), trees[j].clone()).to_plf())
                } else {
                    None
                }
            })
        })
    })
}

/// Number of elements yielded by [`enumerate_elements`].
pub fn census(max_leaves: usize) -> u64 {
    let mut count = 0;
    for l in 1..=max_leaves {
        let masks: Vec<u64> = all_trees(l).iter().map(|t| t.sibling_mask()).collect();
        for a in &masks {
            for b in &masks {
                if a & b == 0 {
                    count += 1;
                }
            }
        }
    }
    count
}

fn catalan_table(n: usize) -> Vec<u128> {
    let mut c = vec![0u128; n + 1];
    c[0] = 1;
    for i in 1..=n {
        c[i] = (0..i).map(|k| c[k] * c[i - 1 - k]).sum();
    }
    c
}

fn random_tree(rng: &mut ChaCha8Rng, leaves: usize, cat: &[u128]) -> Tree {
    if leaves == 1 {
        return Tree::Leaf;
    }
    let mut r = rng.gen_range(0..cat[leaves - 1]);
    for left in 1..leaves {
        let w = cat[left - 1] * cat[leaves - left - 1];
        if r < w {
            let l = random_tree(rng, left, cat);
            let rr = random_tree(rng, leaves - left, cat);
            return Tree::Node(Box::new(l), Box::new(rr));
        }
        r -= w;
    }
    unreachable!("catalan weights sum to the total")
}

/// Deterministic pseudo-random element built from a tree pair with at most
/// `size` leaves per tree; the same seed always gives the same element.
pub fn random_element(size: usize, seed: u64) -> PlHomeo {
    assert!((1..=48).contains(&size), "size must be in 1..=48");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let leaves = rng.gen_range(1..=size);
    let cat = catalan_table(leaves.max(1) - 1 + 1);
    let dom = random_tree(&mut rng, leaves, &cat);
    let ran = random_tree(&mut rng, leaves, &cat);
    TreePair::new(dom, ran).to_plf()
}
