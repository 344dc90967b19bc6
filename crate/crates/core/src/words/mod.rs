//! Words over the infinite generating set x_0, x_1, x_2, ... of F: parsing,
//! free reduction, conversion to and from PL maps, and the unique normal form
//! x_0^{b_0}...x_n^{b_n} x_n^{-a_n}...x_0^{-a_0} with its two conditions:
//! (i) exactly one of a_n, b_n is nonzero, and (ii) whenever a_k and b_k are
//! both positive for k < n, one of a_{k+1}, b_{k+1} is positive too.
//!
//! The normal form is computed by two independent routes, a rewriting system
//! on letters and the reduced-tree-pair leaf-exponent algorithm, so each can
//! catch the other's bugs.

mod tree;

pub use tree::{all_trees, census, enumerate_elements, random_element, tree_pair, Tree, TreePair};

use crate::plf::{generator, PlHomeo};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("SyntaxError at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
}

/// A freely reduced word over the x_i: adjacent letters with equal index are
/// merged and zero exponents dropped.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GenWord {
    letters: Vec<(u32, i64)>,
}

impl GenWord {
    pub fn empty() -> Self {
        GenWord::default()
    }

    pub fn from_letters(raw: impl IntoIterator<Item = (u32, i64)>) -> Self {
        let mut w = GenWord::empty();
        for (idx, exp) in raw {
            w.push(idx, exp);
        }
        w
    }

    pub fn push(&mut self, idx: u32, exp: i64) {
        if exp == 0 {
            return;
        }
        if let Some(last) = self.letters.last_mut() {
            if last.0 == idx {
                last.1 += exp;
                if last.1 == 0 {
                    self.letters.pop();
                }
                return;
            }
        }
        self.letters.push((idx, exp));
    }

    pub fn letters(&self) -> &[(u32, i64)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &GenWord) -> GenWord {
        let mut w = self.clone();
        for &(i, e) in &other.letters {
            w.push(i, e);
        }
        w
    }

    pub fn inverse(&self) -> GenWord {
        GenWord::from_letters(self.letters.iter().rev().map(|&(i, e)| (i, -e)))
    }

    /// The element of F this word spells, folding generators left to right
    /// under (f.g)(t) = f(g(t)).
    pub fn to_plf(&self) -> PlHomeo {
        let mut f = PlHomeo::identity();
        for &(idx, exp) in &self.letters {
            f = f.compose(&generator(idx).pow(exp));
        }
        f
    }
}

impl fmt::Display for GenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|(i, e)| {
                if *e == 1 {
                    format!("x{i}")
                } else {
                    format!("x{i}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Word problem for F: does the word spell the identity map?
pub fn is_identity(w: &GenWord) -> bool {
    w.to_plf().is_identity()
}

/// Parses space-separated `xN` / `xN^k` letters with `[u, v]` commutator
/// sugar expanding to u v u^-1 v^-1; brackets nest.
pub fn parse_word(text: &str) -> Result<GenWord, WordError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let word = parse_seq(bytes, &mut pos, 0)?;
    if pos != bytes.len() {
        return Err(WordError::Syntax {
            offset: pos,
            message: "unexpected character".into(),
        });
    }
    Ok(word)
}

fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
}

fn parse_int(bytes: &[u8], pos: &mut usize) -> Result<i64, WordError> {
    let start = *pos;
    let mut end = *pos;
    if end < bytes.len() && (bytes[end] == b'-' || bytes[end] == b'+') {
        end += 1;
    }
    while end < bytes.len() && bytes[end].is_ascii_digit() {
        end += 1;
    }
    let s = std::str::from_utf8(&bytes[start..end]).unwrap();
    let n = s.parse().map_err(|_| WordError::Syntax {
        offset: start,
        message: "expected an integer".into(),
    })?;
    *pos = end;
    Ok(n)
}

fn parse_seq(bytes: &[u8], pos: &mut usize, depth: u32) -> Result<GenWord, WordError> {
    let mut out = GenWord::empty();
    loop {
        skip_ws(bytes, pos);
        if *pos >= bytes.len() {
            return Ok(out);
        }
        match bytes[*pos] {
            b',' | b']' if depth > 0 => return Ok(out),
            b'[' => {
                *pos += 1;
                let u = parse_seq(bytes, pos, depth + 1)?;
                if *pos >= bytes.len() || bytes[*pos] != b',' {
                    return Err(WordError::Syntax {
                        offset: *pos,
                        message: "expected ',' in commutator".into(),
                    });
                }
                *pos += 1;
                let v = parse_seq(bytes, pos, depth + 1)?;
                if *pos >= bytes.len() || bytes[*pos] != b']' {
                    return Err(WordError::Syntax {
                        offset: *pos,
                        message: "expected ']' closing commutator".into(),
                    });
                }
                *pos += 1;
                // [u, v] = u v u^-1 v^-1
                out = out
                    .concat(&u)
                    .concat(&v)
                    .concat(&u.inverse())
                    .concat(&v.inverse());
            }
            b'x' => {
                *pos += 1;
                let idx = parse_int(bytes, pos)?;
                if idx < 0 {
                    return Err(WordError::Syntax {
                        offset: *pos,
                        message: "generator index must be non-negative".into(),
                    });
                }
                let exp = if *pos < bytes.len() && bytes[*pos] == b'^' {
                    *pos += 1;
                    parse_int(bytes, pos)?
                } else {
                    1
                };
                out.push(idx as u32, exp);
            }
            _ => {
                return Err(WordError::Syntax {
                    offset: *pos,
                    message: "expected a letter, '[' or end of word".into(),
                })
            }
        }
    }
}

/// The unique normal form of an element: positive letters with strictly
/// increasing indices, then negative letters with strictly decreasing
/// indices, subject to conditions (i) and (ii).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NormalWord {
    /// (index, exponent > 0) ascending: x_0^{b_0} ... x_n^{b_n}
    positive: Vec<(u32, u64)>,
    /// (index, exponent > 0) descending as written: x_n^{-a_n} ... x_0^{-a_0}
    negative: Vec<(u32, u64)>,
}

impl NormalWord {
    /// Builds and checks conditions (i)/(ii); violating input is an internal
    /// invariant failure, so this asserts rather than returning an error.
    pub fn new(positive: Vec<(u32, u64)>, negative: Vec<(u32, u64)>) -> Self {
        assert!(
            positive.windows(2).all(|w| w[0].0 < w[1].0),
            "positive indices must ascend"
        );
        assert!(
            negative.windows(2).all(|w| w[0].0 > w[1].0),
            "negative indices must descend"
        );
        assert!(
            positive.iter().chain(&negative).all(|&(_, e)| e > 0),
            "exponents must be positive"
        );
        let w = NormalWord { positive, negative };
        if let Some(n) = w.degree() {
            let (a, b) = (w.a(n), w.b(n));
            assert!(
                (a > 0) ^ (b > 0),
                "condition (i): exactly one of a_n, b_n is nonzero"
            );
            for k in 0..n {
                if w.a(k) > 0 && w.b(k) > 0 {
                    assert!(
                        w.a(k + 1) > 0 || w.b(k + 1) > 0,
                        "condition (ii): a_{k}>0 and b_{k}>0 require a nonzero exponent at {}",
                        k + 1
                    );
                }
            }
        }
        w
    }

    pub fn identity() -> Self {
        NormalWord {
            positive: Vec::new(),
            negative: Vec::new(),
        }
    }

    pub fn positive(&self) -> &[(u32, u64)] {
        &self.positive
    }

    pub fn negative(&self) -> &[(u32, u64)] {
        &self.negative
    }

    pub fn is_identity(&self) -> bool {
        self.positive.is_empty() && self.negative.is_empty()
    }

    /// Largest index appearing, if any.
    pub fn degree(&self) -> Option<u32> {
        self.positive
            .last()
            .map(|&(i, _)| i)
            .into_iter()
            .chain(self.negative.first().map(|&(i, _)| i))
            .max()
    }

    fn b(&self, k: u32) -> u64 {
        self.positive
            .iter()
            .find(|&&(i, _)| i == k)
            .map_or(0, |&(_, e)| e)
    }

    fn a(&self, k: u32) -> u64 {
        self.negative
            .iter()
            .find(|&&(i, _)| i == k)
            .map_or(0, |&(_, e)| e)
    }

    /// Signed exponent sum: sum of b_i minus sum of a_i.
    pub fn exponent_sum(&self) -> i64 {
        let b: u64 = self.positive.iter().map(|&(_, e)| e).sum();
        let a: u64 = self.negative.iter().map(|&(_, e)| e).sum();
        b as i64 - a as i64
    }

    pub fn to_gen_word(&self) -> GenWord {
        GenWord::from_letters(
            self.positive
                .iter()
                .map(|&(i, e)| (i, e as i64))
                .chain(self.negative.iter().map(|&(i, e)| (i, -(e as i64)))),
        )
    }

    pub fn to_plf(&self) -> PlHomeo {
        self.to_gen_word().to_plf()
    }
}

impl fmt::Display for NormalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_gen_word())
    }
}

/// Normal form via the reduced tree pair: leaf exponents of the range tree
/// give the b_i, leaf exponents of the domain tree give the a_i.
pub fn plf_to_word(f: &PlHomeo) -> NormalWord {
    let pair = tree_pair(f);
    let bs = pair.range.leaf_exponents();
    let as_ = pair.domain.leaf_exponents();
    let positive: Vec<(u32, u64)> = bs
        .iter()
        .enumerate()
        .filter(|&(_, &e)| e > 0)
        .map(|(i, &e)| (i as u32, e))
        .collect();
    let mut negative: Vec<(u32, u64)> = as_
        .iter()
        .enumerate()
        .filter(|&(_, &e)| e > 0)
        .map(|(i, &e)| (i as u32, e))
        .collect();
    negative.reverse();
    let w = NormalWord::new(positive, negative);
    debug_assert_eq!(w.to_plf(), *f);
    w
}

/// Normal form by rewriting with the defining relations, independent of the
/// tree-pair route.
///
/// Phases: (A) move inverse letters right past positive letters, cancelling
/// as they meet; (B) sort the positive prefix ascending and the negative
/// suffix descending with x_j x_i -> x_i x_{j+1}; (C) cancel at the
/// positive/negative boundary, which enforces condition (i); (D) collapse
/// condition-(ii) gaps with x_k u x_k^-1 = shift(u). Every phase strictly
/// decreases a well-founded measure.
pub fn normalize(w: &GenWord) -> NormalWord {
    let total: u64 = w.letters().iter().map(|&(_, e)| e.unsigned_abs()).sum();
    assert!(total <= 200_000, "word too large to normalize");
    let mut v: Vec<(u32, i8)> = Vec::with_capacity(total as usize);
    for &(i, e) in w.letters() {
        let s: i8 = if e > 0 { 1 } else { -1 };
        for _ in 0..e.unsigned_abs() {
            v.push((i, s));
        }
    }

    // Phase A: no negative letter directly before a positive one.
    let mut i = 0;
    while i + 1 < v.len() {
        let (li, ls) = v[i];
        let (ri, rs) = v[i + 1];
        if ls < 0 && rs > 0 {
            if li == ri {
                v.drain(i..=i + 1);
            } else if li < ri {
                v[i] = (ri + 1, 1);
                v[i + 1] = (li, -1);
            } else {
                v[i] = (ri, 1);
                v[i + 1] = (li + 1, -1);
            }
            i = i.saturating_sub(1);
        } else {
            i += 1;
        }
    }
    let split = v.iter().position(|&(_, s)| s < 0).unwrap_or(v.len());
    let (pos, neg) = v.split_at(split);
    let (mut pos, mut neg) = (pos.to_vec(), neg.to_vec());
    debug_assert!(neg.iter().all(|&(_, s)| s < 0));

    // Phase B: sort by index, pushing the larger letter inward (index + 1).
    let mut sorted = false;
    while !sorted {
        sorted = true;
        for p in 0..pos.len().saturating_sub(1) {
            if pos[p].0 > pos[p + 1].0 {
                let (j, i2) = (pos[p].0, pos[p + 1].0);
                pos[p] = (i2, 1);
                pos[p + 1] = (j + 1, 1);
                sorted = false;
            }
        }
    }
    sorted = false;
    while !sorted {
        sorted = true;
        for p in 0..neg.len().saturating_sub(1) {
            if neg[p].0 < neg[p + 1].0 {
                let (i2, j) = (neg[p].0, neg[p + 1].0);
                neg[p] = (j + 1, -1);
                neg[p + 1] = (i2, -1);
                sorted = false;
            }
        }
    }

    // Dense exponent vectors: b from the positive block, a from the negative.
    let top = pos
        .iter()
        .map(|&(i, _)| i)
        .chain(neg.iter().map(|&(i, _)| i))
        .max()
        .map_or(0, |m| m as usize + 1);
    let mut b = vec![0u64; top];
    let mut a = vec![0u64; top];
    for &(i, _) in &pos {
        b[i as usize] += 1;
    }
    for &(i, _) in &neg {
        a[i as usize] += 1;
    }

    // Phases C and D on the dense vectors.
    loop {
        while a.last() == Some(&0) && b.last() == Some(&0) {
            a.pop();
            b.pop();
        }
        if a.is_empty() {
            break;
        }
        let n = a.len() - 1;
        // (C) boundary cancellation enforces condition (i)
        if a[n] > 0 && b[n] > 0 {
            let c = a[n].min(b[n]);
            a[n] -= c;
            b[n] -= c;
            continue;
        }
        // (D) condition (ii): a gap above a doubled index collapses
        let gap = (0..n).find(|&k| a[k] > 0 && b[k] > 0 && a[k + 1] == 0 && b[k + 1] == 0);
        match gap {
            Some(k) => {
                a[k] -= 1;
                b[k] -= 1;
                a.remove(k + 1);
                b.remove(k + 1);
            }
            None => break,
        }
    }

    let positive: Vec<(u32, u64)> = b
        .iter()
        .enumerate()
        .filter(|&(_, &e)| e > 0)
        .map(|(i, &e)| (i as u32, e))
        .collect();
    let mut negative: Vec<(u32, u64)> = a
        .iter()
        .enumerate()
        .filter(|&(_, &e)| e > 0)
        .map(|(i, &e)| (i as u32, e))
        .collect();
    negative.reverse();
    NormalWord::new(positive, negative)
}
