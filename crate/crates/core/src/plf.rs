//! Piecewise-linear homeomorphisms of [0,1] with dyadic breakpoints and
//! power-of-two slopes: the geometric realization of Thompson's group F.
//!
//! A [`PlHomeo`] is stored as its canonical breakpoint list, so structural
//! equality is functional equality and the word problem is list comparison.

use crate::dyadic::Dyadic;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PlfError {
    #[error("BadEndpoints: breakpoints must start at 0->0 and end at 1->1")]
    BadEndpoints,
    #[error("NotMonotone: breakpoint coordinates must be strictly increasing")]
    NotMonotone,
    #[error(
        "SlopeNotPowerOfTwo: segment from {0} to {1} has a slope that is not an integer power of 2"
    )]
    SlopeNotPowerOfTwo(String, String),
    #[error("OutOfDomain: {0} is outside [0,1]")]
    OutOfDomain(Dyadic),
    #[error("BadInterval: endpoints must satisfy 0 <= lo < hi <= 1")]
    BadInterval,
    #[error("NonDyadicScale: embedding into this interval leaves the dyadic breakpoint/slope conditions")]
    NonDyadicScale,
    #[error("breakpoint syntax error: {0}")]
    BreakpointSyntax(String),
}

/// A closed dyadic subinterval of [0,1].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyadicInterval {
    lo: Dyadic,
    hi: Dyadic,
}

impl DyadicInterval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Result<Self, PlfError> {
        if lo < Dyadic::zero() || lo >= hi || hi > Dyadic::one() {
            return Err(PlfError::BadInterval);
        }
        Ok(DyadicInterval { lo, hi })
    }

    pub fn unit() -> Self {
        DyadicInterval {
            lo: Dyadic::zero(),
            hi: Dyadic::one(),
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn length(&self) -> Dyadic {
        &self.hi - &self.lo
    }
}

impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

/// An element of F as a strictly increasing PL self-map of [0,1].
///
/// Invariants: first pair (0,0), last pair (1,1), both coordinate sequences
/// strictly increasing, every segment slope an exact power of two, and no
/// breakpoint collinear with its neighbours.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlHomeo {
    points: Vec<(Dyadic, Dyadic)>,
}

impl PlHomeo {
    pub fn identity() -> Self {
        PlHomeo {
            points: vec![
                (Dyadic::zero(), Dyadic::zero()),
                (Dyadic::one(), Dyadic::one()),
            ],
        }
    }

    /// Validates a breakpoint list and returns the canonical element.
    pub fn make(pairs: Vec<(Dyadic, Dyadic)>) -> Result<Self, PlfError> {
        if pairs.len() < 2 {
            return Err(PlfError::BadEndpoints);
        }
        if pairs[0] != (Dyadic::zero(), Dyadic::zero())
            || pairs[pairs.len() - 1] != (Dyadic::one(), Dyadic::one())
        {
            return Err(PlfError::BadEndpoints);
        }
        for w in pairs.windows(2) {
            if w[0].0 >= w[1].0 || w[0].1 >= w[1].1 {
                return Err(PlfError::NotMonotone);
            }
            let dx = &w[1].0 - &w[0].0;
            let dy = &w[1].1 - &w[0].1;
            if dy.pow2_ratio(&dx).is_none() {
                return Err(PlfError::SlopeNotPowerOfTwo(
                    format!("{}->{}", w[0].0, w[0].1),
                    format!("{}->{}", w[1].0, w[1].1),
                ));
            }
        }
        Ok(PlHomeo {
            points: canonical_points(pairs),
        })
    }

    /// Internal constructor for lists already known valid up to collinearity
    /// and exact duplicate points.
    pub(crate) fn from_monotone_pairs(mut pairs: Vec<(Dyadic, Dyadic)>) -> Self {
        pairs.dedup();
        let out = PlHomeo {
            points: canonical_points(pairs),
        };
        debug_assert!(PlHomeo::make(out.points.clone()).is_ok());
        out
    }

    pub fn breakpoints(&self) -> &[(Dyadic, Dyadic)] {
        &self.points
    }

    pub fn is_identity(&self) -> bool {
        self.points.len() == 2
    }

    /// Exact evaluation at a point of [0,1].
    pub fn eval(&self, t: &Dyadic) -> Result<Dyadic, PlfError> {
        if *t < Dyadic::zero() || *t > Dyadic::one() {
            return Err(PlfError::OutOfDomain(t.clone()));
        }
        Ok(self.eval_in(t))
    }

    pub(crate) fn eval_in(&self, t: &Dyadic) -> Dyadic {
        // rightmost breakpoint with x <= t
        let i = match self.points.binary_search_by(|(x, _)| x.cmp(t)) {
            Ok(i) => return self.points[i].1.clone(),
            Err(i) => i - 1,
        };
        let (x0, y0) = &self.points[i];
        let (x1, y1) = &self.points[i + 1];
        let s = (y1 - y0).pow2_ratio(&(x1 - x0)).expect("canonical slope");
        y0 + &(t - x0).times_pow2(s)
    }

    /// Composition `(self . g)(t) = self(g(t))`.
    pub fn compose(&self, g: &PlHomeo) -> PlHomeo {
        let g_inv = g.inverse();
        let mut xs: BTreeSet<Dyadic> = g.points.iter().map(|(x, _)| x.clone()).collect();
        xs.extend(self.points.iter().map(|(x, _)| g_inv.eval_in(x)));
        let pairs = xs
            .into_iter()
            .map(|x| {
                let y = self.eval_in(&g.eval_in(&x));
                (x, y)
            })
            .collect();
        PlHomeo::from_monotone_pairs(pairs)
    }

    /// Inverse map: coordinate swap of every breakpoint.
    pub fn inverse(&self) -> PlHomeo {
        PlHomeo {
            points: self
                .points
                .iter()
                .map(|(x, y)| (y.clone(), x.clone()))
                .collect(),
        }
    }

    /// Integer power by repeated composition.
    pub fn pow(&self, k: i64) -> PlHomeo {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = PlHomeo::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.compose(&base);
        }
        out
    }

    /// Commutator `[self, other] = self . other . self^-1 . other^-1`.
    pub fn commutator(&self, other: &PlHomeo) -> PlHomeo {
        self.compose(other)
            .compose(&self.inverse())
            .compose(&other.inverse())
    }

    /// Log2 slope of the final segment (at 1 from the left).
    pub fn final_slope_exponent(&self) -> i64 {
        let n = self.points.len();
        let (x0, y0) = &self.points[n - 2];
        let (x1, y1) = &self.points[n - 1];
        (y1 - y0).pow2_ratio(&(x1 - x0)).expect("canonical slope")
    }

    /// SVG rendering: unit square, dashed diagonal, polyline through the
    /// breakpoints. Coordinates are exact decimals, never floats.
    pub fn to_svg(&self) -> String {
        let size = Dyadic::from_int(512);
        let px = |v: &Dyadic| (v * &size).to_decimal_string();
        // SVG y axis points down, so plot (x, 1-y).
        let py = |v: &Dyadic| (&(&Dyadic::one() - v) * &size).to_decimal_string();
        let mut s = String::new();
        s.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-16 -16 544 544\" width=\"544\" height=\"544\">\n");
        s.push_str("  <rect x=\"0\" y=\"0\" width=\"512\" height=\"512\" fill=\"white\" stroke=\"black\"/>\n");
        s.push_str("  <line x1=\"0\" y1=\"512\" x2=\"512\" y2=\"0\" stroke=\"gray\" stroke-dasharray=\"8,8\"/>\n");
        let pts: Vec<String> = self
            .points
            .iter()
            .map(|(x, y)| format!("{},{}", px(x), py(y)))
            .collect();
        s.push_str(&format!(
            "  <polyline points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n",
            pts.join(" ")
        ));
        for (x, y) in &self.points {
            s.push_str(&format!(
                "  <circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"black\"/>\n",
                px(x),
                py(y)
            ));
        }
        s.push_str("</svg>\n");
        s
    }
}

/// Drops interior breakpoints collinear with their neighbours.
fn canonical_points(pairs: Vec<(Dyadic, Dyadic)>) -> Vec<(Dyadic, Dyadic)> {
    let mut out: Vec<(Dyadic, Dyadic)> = Vec::with_capacity(pairs.len());
    for p in pairs {
        while out.len() >= 2 {
            let a = &out[out.len() - 2];
            let b = &out[out.len() - 1];
            // b collinear with a..p: (b.y-a.y)(p.x-b.x) == (p.y-b.y)(b.x-a.x)
            let lhs = &(&b.1 - &a.1) * &(&p.0 - &b.0);
            let rhs = &(&p.1 - &b.1) * &(&b.0 - &a.0);
            if lhs == rhs {
                out.pop();
            } else {
                break;
            }
        }
        out.push(p);
    }
    out
}

impl fmt::Display for PlHomeo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .points
            .iter()
            .map(|(x, y)| format!("{x}->{y}"))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for PlHomeo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for PlHomeo {
    type Err = PlfError;

    /// Parses the breakpoint syntax `0->0,1/2->1/4,3/4->1/2,1->1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut pairs = Vec::new();
        for part in s.split(',') {
            let (x, y) = part
                .split_once("->")
                .ok_or_else(|| PlfError::BreakpointSyntax(part.to_string()))?;
            let x: Dyadic = x
                .parse()
                .map_err(|_| PlfError::BreakpointSyntax(part.to_string()))?;
            let y: Dyadic = y
                .parse()
                .map_err(|_| PlfError::BreakpointSyntax(part.to_string()))?;
            pairs.push((x, y));
        }
        PlHomeo::make(pairs)
    }
}

/// The generator x_n: identity on [0, 1-2^-n], then the three-slope step
/// with breakpoints at 1-2^-n, 1-2^-(n+1), 1-2^-(n+2).
pub fn generator(n: u32) -> PlHomeo {
    let one = Dyadic::one();
    let a1 = &one - &Dyadic::power_of_two(-(n as i64));
    let a2 = &one - &Dyadic::power_of_two(-(n as i64 + 1));
    let a3 = &one - &Dyadic::power_of_two(-(n as i64 + 2));
    let y2 = &a1 + &(&(&a2 - &a1) * &Dyadic::power_of_two(-1));
    let y3 = &y2 + &(&a3 - &a2);
    PlHomeo::from_monotone_pairs(vec![
        (Dyadic::zero(), Dyadic::zero()),
        (a1.clone(), a1),
        (a2, y2),
        (a3, y3),
        (one.clone(), one),
    ])
}

/// Conjugates `f` by the affine increasing bijection [0,1] -> iv and extends
/// by the identity outside; `embed(generator(n), iv)` is the generator
/// x_{iv,n} of the copy of F supported on iv.
pub fn embed(f: &PlHomeo, iv: &DyadicInterval) -> Result<PlHomeo, PlfError> {
    let scale = iv.length();
    let mut pairs = vec![(Dyadic::zero(), Dyadic::zero())];
    for (x, y) in f.breakpoints() {
        pairs.push((iv.lo() + &(x * &scale), iv.lo() + &(y * &scale)));
    }
    pairs.push((Dyadic::one(), Dyadic::one()));
    pairs.dedup();
    PlHomeo::make(pairs).map_err(|_| PlfError::NonDyadicScale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::dy;

    fn bp(s: &str) -> PlHomeo {
        s.parse().expect("literal element")
    }

    #[test]
    fn make_validates_the_definition() {
        assert_eq!(bp("0->0,1/2->1/4,3/4->1/2,1->1"), generator(0));
        assert_eq!(bp("0->0,1->1"), PlHomeo::identity());
        assert_eq!(
            PlHomeo::make(vec![
                (dy("0"), dy("0")),
                (dy("1/2"), dy("1/4")),
                (dy("3/4"), dy("1/8")),
                (dy("1"), dy("1")),
            ]),
            Err(PlfError::NotMonotone)
        );
        assert!(matches!(
            "0->0,1/2->3/8,1->1".parse::<PlHomeo>(),
            Err(PlfError::SlopeNotPowerOfTwo(_, _))
        ));
        assert_eq!("1/2->1/2".parse::<PlHomeo>(), Err(PlfError::BadEndpoints));
        // a collinear interior point is removed, not rejected
        assert_eq!(bp("0->0,1/2->1/2,1->1"), PlHomeo::identity());
    }

    #[test]
    fn generators_match_the_explicit_formula() {
        assert_eq!(generator(0), bp("0->0,1/2->1/4,3/4->1/2,1->1"));
        assert_eq!(generator(1), bp("0->0,1/2->1/2,3/4->5/8,7/8->3/4,1->1"));
        assert_eq!(generator(2), bp("0->0,3/4->3/4,7/8->13/16,15/16->7/8,1->1"));
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(generator(0).eval(&dy("1/2")).unwrap(), dy("1/4"));
        assert_eq!(generator(1).eval(&dy("1/4")).unwrap(), dy("1/4"));
        assert_eq!(generator(2).eval(&dy("15/16")).unwrap(), dy("7/8"));
        assert!(generator(0).eval(&dy("3/2")).is_err());
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(PlHomeo::identity().inverse(), PlHomeo::identity());
        assert_eq!(generator(0).inverse(), bp("0->0,1/4->1/2,1/2->3/4,1->1"));
        assert_eq!(generator(1).inverse().inverse(), generator(1));
        assert_eq!(
            generator(0).compose(&generator(0).inverse()),
            PlHomeo::identity()
        );
    }

    #[test]
    fn composition_convention_is_forced_by_the_conjugation_identity() {
        // x_0^-1 . x_1 . x_0 = x_2 under (f.g)(t) = f(g(t))
        let lhs = generator(0)
            .inverse()
            .compose(&generator(1).compose(&generator(0)));
        assert_eq!(lhs, generator(2));
        // the opposite convention fails at t = 3/4
        let wrong = generator(0).compose(&generator(1).compose(&generator(0).inverse()));
        assert_ne!(wrong, generator(2));
    }

    #[test]
    fn embed_examples() {
        let half = DyadicInterval::new(dy("0"), dy("1/2")).unwrap();
        assert_eq!(
            embed(&generator(0), &half).unwrap(),
            bp("0->0,1/4->1/8,3/8->1/4,1/2->1/2,1->1")
        );
        let iv = DyadicInterval::new(dy("1/4"), dy("3/8")).unwrap();
        assert_eq!(
            embed(&PlHomeo::identity(), &iv).unwrap(),
            PlHomeo::identity()
        );
        assert_eq!(
            embed(&generator(0), &DyadicInterval::unit()).unwrap(),
            generator(0)
        );
        // x_n is x_0 embedded in [1-2^-n, 1]
        let tail = DyadicInterval::new(dy("1/2"), dy("1")).unwrap();
        assert_eq!(embed(&generator(0), &tail).unwrap(), generator(1));
        // disjointly supported embeddings commute
        let a = embed(&generator(0), &half).unwrap();
        let b = embed(&generator(0), &tail).unwrap();
        assert_eq!(a.compose(&b), b.compose(&a));
        // embedding into an interval of non-power-of-two length stays in F
        let odd = DyadicInterval::new(dy("1/4"), dy("5/8")).unwrap();
        assert!(embed(&generator(1), &odd).is_ok());
    }

    #[test]
    fn interval_validation() {
        assert!(DyadicInterval::new(dy("1/2"), dy("1/2")).is_err());
        assert!(DyadicInterval::new(dy("-1/2"), dy("1/2")).is_err());
        assert!(DyadicInterval::new(dy("1/2"), dy("9/8")).is_err());
    }

    #[test]
    fn svg_contains_the_polyline() {
        let svg = generator(0).to_svg();
        assert!(svg.contains("<svg"));
        assert!(svg.contains("stroke-dasharray"));
        assert!(svg.contains("256,384")); // (1/2, 1/4) scaled, y flipped
    }
}
