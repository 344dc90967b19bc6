//! Dynamical analysis of elements of F: supports and dividing points,
//! defragmentation into disjointly supported pieces, commutation, bounded
//! root search, centralizer decompositions, and the index-shift behaviour of
//! conjugation on high generators.

use crate::dyadic::Dyadic;
use crate::plf::{generator, DyadicInterval, PlHomeo};
use crate::words::{enumerate_elements, plf_to_word};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("IdentityInput: the identity has no decomposition of this kind")]
    IdentityInput,
    #[error("NonDyadicCut: cut point {0} is not a dyadic rational")]
    NonDyadicCut(String),
}

fn rat(d: &Dyadic) -> BigRational {
    BigRational::new(
        d.numerator().clone(),
        BigInt::one() << d.exponent() as usize,
    )
}

fn rat_to_dyadic(r: &BigRational) -> Option<Dyadic> {
    let den = r.denom();
    let tz = den.trailing_zeros().unwrap_or(0);
    if (den >> tz as usize) == BigInt::one() {
        Some(Dyadic::new(r.numer().clone(), tz as u32))
    } else {
        None
    }
}

/// Where an element moves points: the maximal open intervals of the support
/// and the dyadic boundary points of its closure. Support endpoints can be
/// non-dyadic (a slope-4 segment can cross the diagonal at thirds), so they
/// are kept as exact rationals; the dividing points are the dyadic ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportReport {
    pub moved: Vec<(BigRational, BigRational)>,
    pub dividing_points: Vec<Dyadic>,
}

impl SupportReport {
    pub fn is_trivial(&self) -> bool {
        self.moved.is_empty()
    }
}

impl fmt::Display for SupportReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.moved.is_empty() {
            writeln!(f, "support: empty")?;
        } else {
            let ivs: Vec<String> = self
                .moved
                .iter()
                .map(|(a, b)| format!("({a},{b})"))
                .collect();
            writeln!(f, "support: {}", ivs.join(" "))?;
        }
        let pts: Vec<String> = self.dividing_points.iter().map(|p| p.to_string()).collect();
        write!(f, "dividing points: {{{}}}", pts.join(", "))
    }
}

/// Exact support computation from the breakpoint geometry.
pub fn support(g: &PlHomeo) -> SupportReport {
    // fixed set as a sorted union of closed (possibly degenerate) intervals
    let mut fixed: Vec<(BigRational, BigRational)> = Vec::new();
    let pts = g.breakpoints();
    for w in pts.windows(2) {
        let (x0, y0) = &w[0];
        let (x1, y1) = &w[1];
        let s = (y1 - y0).pow2_ratio(&(x1 - x0)).expect("canonical slope");
        if s == 0 {
            if x0 == y0 {
                fixed.push((rat(x0), rat(x1)));
            }
            continue;
        }
        // solve y0 + 2^s (t - x0) = t exactly
        let m = BigRational::new(
            if s >= 0 {
                BigInt::one() << s as usize
            } else {
                BigInt::one()
            },
            if s >= 0 {
                BigInt::one()
            } else {
                BigInt::one() << (-s) as usize
            },
        );
        let t = (rat(y0) - &m * rat(x0)) / (BigRational::one() - m);
        if t >= rat(x0) && t <= rat(x1) {
            fixed.push((t.clone(), t));
        }
    }
    fixed.sort();
    let mut merged: Vec<(BigRational, BigRational)> = Vec::new();
    for (a, b) in fixed {
        match merged.last_mut() {
            Some((_, hi)) if a <= *hi => {
                if b > *hi {
                    *hi = b;
                }
            }
            _ => merged.push((a, b)),
        }
    }
    debug_assert!(!merged.is_empty(), "0 and 1 are always fixed");
    let mut moved = Vec::new();
    for w in merged.windows(2) {
        moved.push((w[0].1.clone(), w[1].0.clone()));
    }
    let mut dividing: Vec<Dyadic> = Vec::new();
    for (a, b) in &moved {
        for e in [a, b] {
            if let Some(d) = rat_to_dyadic(e) {
                if dividing.last() != Some(&d) {
                    dividing.push(d);
                }
            }
        }
    }
    dividing.sort();
    dividing.dedup();
    SupportReport {
        moved,
        dividing_points: dividing,
    }
}

/// Restriction of g to [iv.lo, iv.hi] spliced with the identity outside.
/// Returns None unless g fixes both endpoints.
pub fn restrict(g: &PlHomeo, iv: &DyadicInterval) -> Option<PlHomeo> {
    if g.eval_in(iv.lo()) != *iv.lo() || g.eval_in(iv.hi()) != *iv.hi() {
        return None;
    }
    let mut pairs = vec![
        (Dyadic::zero(), Dyadic::zero()),
        (iv.lo().clone(), iv.lo().clone()),
    ];
    for (x, y) in g.breakpoints() {
        if x > iv.lo() && x < iv.hi() {
            pairs.push((x.clone(), y.clone()));
        }
    }
    pairs.push((iv.hi().clone(), iv.hi().clone()));
    pairs.push((Dyadic::one(), Dyadic::one()));
    pairs.dedup();
    Some(PlHomeo::from_monotone_pairs(pairs))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fragment {
    pub interval: DyadicInterval,
    pub piece: PlHomeo,
}

/// The factorization g = g_1 g_2 ... g_n into non-trivial pieces supported
/// between consecutive dividing points; the pieces commute pairwise.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Defragmentation {
    pub fragments: Vec<Fragment>,
}

impl Defragmentation {
    pub fn product(&self) -> PlHomeo {
        self.fragments
            .iter()
            .fold(PlHomeo::identity(), |acc, fr| acc.compose(&fr.piece))
    }
}

/// Cut points for the defragmentation: 0, the dividing points, 1.
fn cut_points(g: &PlHomeo) -> Vec<Dyadic> {
    let mut cuts = vec![Dyadic::zero()];
    cuts.extend(support(g).dividing_points);
    cuts.push(Dyadic::one());
    cuts.sort();
    cuts.dedup();
    cuts
}

pub fn defragment(g: &PlHomeo) -> Result<Defragmentation, StructureError> {
    let cuts = cut_points(g);
    let mut fragments = Vec::new();
    for w in cuts.windows(2) {
        let iv = DyadicInterval::new(w[0].clone(), w[1].clone()).expect("ordered cuts");
        let piece = restrict(g, &iv)
            .ok_or_else(|| StructureError::NonDyadicCut(format!("{} or {}", w[0], w[1])))?;
        if !piece.is_identity() {
            fragments.push(Fragment {
                interval: iv,
                piece,
            });
        }
    }
    Ok(Defragmentation { fragments })
}

pub fn commutes(g: &PlHomeo, h: &PlHomeo) -> bool {
    g.compose(h) == h.compose(g)
}

/// Result of the bounded root search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootResult {
    /// root^power = g with power maximal among the candidates found.
    Found { root: PlHomeo, power: u32 },
    /// The divisor bound exceeded 1 but no certified maximal root was found
    /// within the enumeration bound.
    Unknown,
}

/// Divisibility bound on root orders: at each boundary point of the support,
/// the log2 slope of g just inside the moved interval is k times that of any
/// k-th root, so k divides the gcd of those exponents.
fn root_divisor_bound(g: &PlHomeo, rep: &SupportReport) -> u64 {
    let slope_at = |point: &BigRational, from_right: bool| -> i64 {
        let pts = g.breakpoints();
        for w in pts.windows(2) {
            let (lo, hi) = (rat(&w[0].0), rat(&w[1].0));
            let inside = if from_right {
                *point >= lo && *point < hi
            } else {
                *point > lo && *point <= hi
            };
            if inside {
                return (&w[1].1 - &w[0].1)
                    .pow2_ratio(&(&w[1].0 - &w[0].0))
                    .expect("slope");
            }
        }
        unreachable!("support boundary lies in [0,1]")
    };
    let mut bound: u64 = 0;
    for (a, b) in &rep.moved {
        for (pt, from_right) in [(a, true), (b, false)] {
            let s = slope_at(pt, from_right).unsigned_abs();
            debug_assert!(s != 0, "slope is never 1 at a support boundary");
            bound = num_integer::gcd(bound, s);
        }
    }
    bound.max(1)
}

/// Bounded-search maximal root: sound but not complete. Candidate powers are
/// divisors of the slope bound; candidate roots come from the enumeration of
/// elements with at most `leaf_bound` leaves.
pub fn max_root(g: &PlHomeo, leaf_bound: usize) -> Result<RootResult, StructureError> {
    if g.is_identity() {
        return Err(StructureError::IdentityInput);
    }
    let rep = support(g);
    let bound = root_divisor_bound(g, &rep);
    if bound == 1 {
        return Ok(RootResult::Found {
            root: g.clone(),
            power: 1,
        });
    }
    let mut divisors: Vec<u64> = (2..=bound).filter(|k| bound.is_multiple_of(*k)).collect();
    divisors.sort_unstable_by(|x, y| y.cmp(x));
    let candidates: Vec<PlHomeo> = enumerate_elements(leaf_bound)
        .filter(|r| !r.is_identity() && support(r).moved == rep.moved)
        .collect();
    for k in divisors {
        for r in &candidates {
            if r.pow(k as i64) == *g {
                return Ok(RootResult::Found {
                    root: r.clone(),
                    power: k as u32,
                });
            }
        }
    }
    Ok(RootResult::Unknown)
}

/// One cyclic direct factor of a centralizer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicFactor {
    pub generator: PlHomeo,
    /// Index into the defragmentation this factor is the root of.
    pub root_of: usize,
    /// generator^power equals the fragment piece.
    pub power: u32,
}

/// Direct-product shape of a centralizer: one cyclic factor per fragment and
/// one full copy of F on every pointwise-fixed cut interval. `partial` is set
/// when some root search returned Unknown and the fragment itself stands in
/// for its root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralizerDecomposition {
    pub cyclic: Vec<CyclicFactor>,
    pub thompson: Vec<DyadicInterval>,
    pub partial: bool,
}

impl fmt::Display for CentralizerDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.cyclic.iter().enumerate() {
            writeln!(
                f,
                "cyclic factor {i}: <{}> (fragment {} = generator^{})",
                c.generator, c.root_of, c.power
            )?;
        }
        for iv in &self.thompson {
            writeln!(f, "thompson factor: F_{iv}")?;
        }
        if self.partial {
            writeln!(f, "note: partial (some root searches were inconclusive)")?;
        }
        Ok(())
    }
}

pub fn centralizer(
    g: &PlHomeo,
    leaf_bound: usize,
) -> Result<CentralizerDecomposition, StructureError> {
    if g.is_identity() {
        return Err(StructureError::IdentityInput);
    }
    let cuts = cut_points(g);
    let mut cyclic = Vec::new();
    let mut thompson = Vec::new();
    let mut partial = false;
    let mut fragment_index = 0;
    for w in cuts.windows(2) {
        let iv = DyadicInterval::new(w[0].clone(), w[1].clone()).expect("ordered cuts");
        let piece = restrict(g, &iv)
            .ok_or_else(|| StructureError::NonDyadicCut(format!("{} or {}", w[0], w[1])))?;
        if piece.is_identity() {
            thompson.push(iv);
            continue;
        }
        match max_root(&piece, leaf_bound)? {
            RootResult::Found { root, power } => {
                cyclic.push(CyclicFactor {
                    generator: root,
                    root_of: fragment_index,
                    power,
                });
            }
            RootResult::Unknown => {
                cyclic.push(CyclicFactor {
                    generator: piece,
                    root_of: fragment_index,
                    power: 1,
                });
                partial = true;
            }
        }
        fragment_index += 1;
    }
    Ok(CentralizerDecomposition {
        cyclic,
        thompson,
        partial,
    })
}

/// Which way conjugation by g shifts high generator indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// g^-1 x_m g = x_{m+t} for all m > M
    ConjugateByG,
    /// g x_m g^-1 = x_{m+t} for all m > M
    ConjugateByGInverse,
}

/// Certified shift data: conjugating x_m in `direction` gives x_{m+shift}
/// for every m > threshold, with threshold minimal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjShift {
    pub threshold: u32,
    pub shift: u32,
    pub direction: Direction,
}

impl ConjShift {
    /// Exact check of the shift identity at one index.
    pub fn holds_at(&self, g: &PlHomeo, m: u32) -> bool {
        conjugate(g, m, self.direction) == generator(m + self.shift)
    }
}

impl fmt::Display for ConjShift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, r) = match self.direction {
            Direction::ConjugateByG => ("g^-1 x_m g", "x_{m+t}"),
            Direction::ConjugateByGInverse => ("g x_m g^-1", "x_{m+t}"),
        };
        write!(
            f,
            "{l} = {r} with t = {} for all m > {}",
            self.shift, self.threshold
        )
    }
}

fn conjugate(g: &PlHomeo, m: u32, dir: Direction) -> PlHomeo {
    let xm = generator(m);
    match dir {
        Direction::ConjugateByG => g.inverse().compose(&xm).compose(g),
        Direction::ConjugateByGInverse => g.compose(&xm).compose(&g.inverse()),
    }
}

/// Computes the shift t = |sum(a_i - b_i)| from the normal form, picks the
/// direction by the sign of the sum, and certifies a minimal threshold M by
/// exact verification (the shift identity is monotone in m: it holds exactly
/// when the support of x_m lies inside the final affine segment).
pub fn conj_shift(g: &PlHomeo) -> ConjShift {
    let nf = plf_to_word(g);
    let sum = nf.exponent_sum();
    let t = sum.unsigned_abs() as u32;
    let direction = if sum >= 0 {
        Direction::ConjugateByG
    } else {
        Direction::ConjugateByGInverse
    };
    let degree = nf.degree().unwrap_or(0);
    let mut m_bound = degree + t.max(1);
    let out = |threshold| ConjShift {
        threshold,
        shift: t,
        direction,
    };
    let holds = |m: u32| conjugate(g, m, direction) == generator(m + t);
    while !holds(m_bound + 1) {
        m_bound += 1;
        assert!(
            m_bound < degree + t.max(1) + 64,
            "shift identity failed to certify"
        );
    }
    while m_bound > 0 && holds(m_bound) {
        m_bound -= 1;
    }
    out(m_bound)
}
