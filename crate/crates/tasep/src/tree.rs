//! Binary trees and the bijection with dominated sequence pairs.
//!
//! A tree here is a rooted tree in which every vertex may carry a left child
//! and may carry a right child; having an empty subtree on a side is
//! different from having none. Two encodings map trees to binary sequences:
//! `f` (segment encoding) and `g`. The map `T ↦ (f(T), g(T))` is a bijection
//! onto pairs `(A, B)` with `A ≽ B`, and [`decode`] inverts it. As a
//! consequence the number of trees with `f(T) = A` is exactly `W(A)`.

use std::fmt;
use std::str::FromStr;

use crate::seq::BinarySequence;
use crate::{Error, Result};

/// Maximum edge count accepted by [`enumerate_trees`].
pub const TREE_ENUMERATION_LIMIT: usize = 12;

/// A binary tree with optional, side-marked children.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BinaryTree {
    left: Option<Box<BinaryTree>>,
    right: Option<Box<BinaryTree>>,
}

impl BinaryTree {
    /// The single-vertex tree (no edges).
    pub fn leaf() -> Self {
        BinaryTree {
            left: None,
            right: None,
        }
    }

    pub fn with_children(left: Option<BinaryTree>, right: Option<BinaryTree>) -> Self {
        BinaryTree {
            left: left.map(Box::new),
            right: right.map(Box::new),
        }
    }

    pub fn left(&self) -> Option<&BinaryTree> {
        self.left.as_deref()
    }

    pub fn right(&self) -> Option<&BinaryTree> {
        self.right.as_deref()
    }

    /// Number of edges (= vertices − 1).
    pub fn edge_count(&self) -> usize {
        let mut n = 0;
        if let Some(l) = &self.left {
            n += 1 + l.edge_count();
        }
        if let Some(r) = &self.right {
            n += 1 + r.edge_count();
        }
        n
    }

    /// The segment encoding `f`: leaf ↦ ε, left-only ↦ `f(L)·0`,
    /// right-only ↦ `1·f(R)`, both ↦ `f(L)·01·f(R)`.
    ///
    /// The length equals the edge count and the number of ones equals the
    /// number of right children.
    pub fn f_encode(&self) -> BinarySequence {
        let mut bits = Vec::with_capacity(self.edge_count());
        self.f_encode_into(&mut bits);
        BinarySequence::new(bits).expect("encoding emits only 0/1")
    }

    fn f_encode_into(&self, bits: &mut Vec<u8>) {
        match (&self.left, &self.right) {
            (None, None) => {}
            (Some(l), None) => {
                l.f_encode_into(bits);
                bits.push(0);
            }
            (None, Some(r)) => {
                bits.push(1);
                r.f_encode_into(bits);
            }
            (Some(l), Some(r)) => {
                l.f_encode_into(bits);
                bits.push(0);
                bits.push(1);
                r.f_encode_into(bits);
            }
        }
    }

    /// The companion encoding `g`: leaf ↦ ε, left-only ↦ `0·g(L)`,
    /// right-only ↦ `1·g(R)`, both ↦ `0·g(L)·1·g(R)`.
    ///
    /// Always dominated by `f` of the same tree.
    pub fn g_encode(&self) -> BinarySequence {
        let mut bits = Vec::with_capacity(self.edge_count());
        self.g_encode_into(&mut bits);
        BinarySequence::new(bits).expect("encoding emits only 0/1")
    }

    fn g_encode_into(&self, bits: &mut Vec<u8>) {
        match (&self.left, &self.right) {
            (None, None) => {}
            (Some(l), None) => {
                bits.push(0);
                l.g_encode_into(bits);
            }
            (None, Some(r)) => {
                bits.push(1);
                r.g_encode_into(bits);
            }
            (Some(l), Some(r)) => {
                bits.push(0);
                l.g_encode_into(bits);
                bits.push(1);
                r.g_encode_into(bits);
            }
        }
    }
}

/// Recovers the unique tree with `f(T) = a` and `g(T) = b`.
///
/// Rejects pairs where `a` does not dominate `b`. The split point is the
/// first index `i` with `a(i) < b(i+1)`: `i = 0` forces a right-only root, no
/// such index forces a left-only root, and otherwise the left subtree has
/// `i − 1` edges.
pub fn decode(a: &BinarySequence, b: &BinarySequence) -> Result<BinaryTree> {
    if !a.dominates(b) {
        return Err(Error::NotDominated);
    }
    Ok(decode_rec(a.bits(), b.bits()))
}

fn decode_rec(a: &[u8], b: &[u8]) -> BinaryTree {
    let n = a.len();
    if n == 0 {
        return BinaryTree::leaf();
    }
    let mut ones_a = 0usize;
    let mut ones_b = 0usize;
    let mut split = None;
    for i in 0..n {
        // compare a(i) with b(i+1)
        ones_b += b[i] as usize;
        if ones_a < ones_b {
            split = Some(i);
            break;
        }
        ones_a += a[i] as usize;
    }
    match split {
        None => {
            // a = X·0, b = 0·X'
            debug_assert_eq!(a[n - 1], 0);
            debug_assert_eq!(b[0], 0);
            BinaryTree::with_children(Some(decode_rec(&a[..n - 1], &b[1..])), None)
        }
        Some(0) => {
            // a = 1·Y, b = 1·Y'
            debug_assert_eq!(a[0], 1);
            debug_assert_eq!(b[0], 1);
            BinaryTree::with_children(None, Some(decode_rec(&a[1..], &b[1..])))
        }
        Some(i) => {
            // a = X·01·Y with |X| = i − 1, b = 0·X'·1·Y'
            debug_assert_eq!(a[i - 1], 0);
            debug_assert_eq!(a[i], 1);
            debug_assert_eq!(b[0], 0);
            debug_assert_eq!(b[i], 1);
            BinaryTree::with_children(
                Some(decode_rec(&a[..i - 1], &b[1..i])),
                Some(decode_rec(&a[i + 1..], &b[i + 1..])),
            )
        }
    }
}

/// Every tree with exactly `n_edges` edges, each once.
///
/// The count satisfies `c(n) = 2·c(n−1) + Σ c(i)·c(n−2−i)` with `c(0) = 1`.
pub fn enumerate_trees(n_edges: usize) -> Result<Vec<BinaryTree>> {
    if n_edges > TREE_ENUMERATION_LIMIT {
        return Err(Error::TooLarge {
            what: "tree edges",
            got: n_edges,
            limit: TREE_ENUMERATION_LIMIT,
        });
    }
    // by_edges[m] = all trees with m edges
    let mut by_edges: Vec<Vec<BinaryTree>> = vec![vec![BinaryTree::leaf()]];
    for m in 1..=n_edges {
        let mut level = Vec::new();
        for child in &by_edges[m - 1] {
            level.push(BinaryTree::with_children(Some(child.clone()), None));
            level.push(BinaryTree::with_children(None, Some(child.clone())));
        }
        if m >= 2 {
            for i in 0..=m - 2 {
                let (ls, rs) = (&by_edges[i], &by_edges[m - 2 - i]);
                for l in ls {
                    for r in rs {
                        level.push(BinaryTree::with_children(Some(l.clone()), Some(r.clone())));
                    }
                }
            }
        }
        by_edges.push(level);
    }
    Ok(by_edges.pop().expect("at least one level"))
}

// Text form: TREE := "()" | "(" ["L" TREE] ["R" TREE] ")"

impl fmt::Display for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        if let Some(l) = &self.left {
            write!(f, "L{}", l)?;
        }
        if let Some(r) = &self.right {
            write!(f, "R{}", r)?;
        }
        write!(f, ")")
    }
}

impl FromStr for BinaryTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bytes: Vec<u8> = s.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
        let (tree, used) = parse_tree(&bytes)?;
        if used != bytes.len() {
            return Err(Error::Parse(format!(
                "trailing input after tree: {:?}",
                String::from_utf8_lossy(&bytes[used..])
            )));
        }
        Ok(tree)
    }
}

fn parse_tree(input: &[u8]) -> Result<(BinaryTree, usize)> {
    let err = |msg: &str| Error::Parse(msg.to_string());
    if input.first() != Some(&b'(') {
        return Err(err("expected '('"));
    }
    let mut pos = 1;
    let mut left = None;
    let mut right = None;
    if input.get(pos) == Some(&b'L') {
        let (t, used) = parse_tree(&input[pos + 1..])?;
        left = Some(t);
        pos += 1 + used;
    }
    if input.get(pos) == Some(&b'R') {
        let (t, used) = parse_tree(&input[pos + 1..])?;
        right = Some(t);
        pos += 1 + used;
    }
    if input.get(pos) != Some(&b')') {
        return Err(err("expected ')'"));
    }
    Ok((BinaryTree::with_children(left, right), pos + 1))
}
