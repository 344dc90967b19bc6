//! The space of marked copies of F at desk scale: exhaustive relation sets
//! up to a radius, the e^-R metric (always reported symbolically, never as a
//! float), and stabilization probes for sequences of markings.

use crate::plf::PlHomeo;
use rayon::prelude::*;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MarkedError {
    #[error("ArityMismatch: markings must have the same tuple length")]
    ArityMismatch,
    #[error("BudgetExceeded: enumeration exceeded the cap of {limit} words")]
    BudgetExceeded { limit: u64 },
}

/// A tuple of elements marking a copy of F; identity entries are allowed (a
/// marking may mark the trivial element).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Marking {
    generators: Vec<PlHomeo>,
}

impl Marking {
    pub fn new(generators: Vec<PlHomeo>) -> Self {
        assert!(!generators.is_empty(), "a marking needs at least one entry");
        Marking { generators }
    }

    pub fn arity(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[PlHomeo] {
        &self.generators
    }
}

/// An abstract freely reduced word over the marking positions: letter k > 0
/// is position k-1, negative letters are inverses.
pub type AbstractWord = Vec<i32>;

/// Renders `s1 s2^-1 ...`, merging adjacent equal letters into powers.
pub fn render_abstract_word(w: &AbstractWord) -> String {
    let mut parts: Vec<(i32, i64)> = Vec::new();
    for &l in w {
        match parts.last_mut() {
            Some((p, e)) if *p == l => *e += 1,
            _ => parts.push((l, 1)),
        }
    }
    parts
        .into_iter()
        .map(|(l, e)| {
            let exp = if l > 0 { e } else { -e };
            if exp == 1 {
                format!("s{}", l.abs())
            } else {
                format!("s{}^{}", l.abs(), exp)
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// All freely reduced relations of length at most `radius`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSet {
    pub radius: u32,
    pub relations: BTreeSet<AbstractWord>,
}

impl RelationSet {
    /// The relations of length at most r, for r <= radius.
    pub fn truncate(&self, r: u32) -> BTreeSet<AbstractWord> {
        self.relations
            .iter()
            .filter(|w| w.len() as u32 <= r)
            .cloned()
            .collect()
    }
}

/// Cap on the number of words an enumeration may visit.
#[derive(Debug, Clone, Copy)]
pub struct EnumerationBudget {
    pub max_words: u64,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_words: 50_000_000,
        }
    }
}

/// Exhaustively evaluates every freely reduced word of length <= radius over
/// the marking alphabet and collects those equal to the identity. Workers
/// partition the search by first letter.
pub fn relation_set(
    marking: &Marking,
    radius: u32,
    budget: EnumerationBudget,
    workers: usize,
) -> Result<RelationSet, MarkedError> {
    struct Search<'a> {
        values: &'a [PlHomeo],
        inverses: &'a [PlHomeo],
        radius: u32,
        counter: &'a AtomicU64,
        limit: u64,
    }

    impl Search<'_> {
        fn letter(&self, l: i32) -> &PlHomeo {
            if l > 0 {
                &self.values[(l - 1) as usize]
            } else {
                &self.inverses[(-l - 1) as usize]
            }
        }

        fn dfs(
            &self,
            prefix: &mut AbstractWord,
            value: &PlHomeo,
            out: &mut BTreeSet<AbstractWord>,
        ) -> Result<(), MarkedError> {
            if prefix.len() as u32 >= self.radius {
                return Ok(());
            }
            for k in 1..=self.values.len() as i32 {
                for l in [k, -k] {
                    if prefix.last() == Some(&-l) {
                        continue; // keep words freely reduced
                    }
                    if self.counter.fetch_add(1, Ordering::Relaxed) >= self.limit {
                        return Err(MarkedError::BudgetExceeded { limit: self.limit });
                    }
                    let next = value.compose(self.letter(l));
                    prefix.push(l);
                    if next.is_identity() {
                        out.insert(prefix.clone());
                    }
                    self.dfs(prefix, &next, out)?;
                    prefix.pop();
                }
            }
            Ok(())
        }
    }

    let arity = marking.arity() as i32;
    let values: Vec<PlHomeo> = marking.generators().to_vec();
    let inverses: Vec<PlHomeo> = values.iter().map(|g| g.inverse()).collect();
    let counter = AtomicU64::new(0);
    let search = Search {
        values: &values,
        inverses: &inverses,
        radius,
        counter: &counter,
        limit: budget.max_words,
    };

    let first_letters: Vec<i32> = (1..=arity).flat_map(|k| [k, -k]).collect();
    let run_subtree = |l: i32| -> Result<BTreeSet<AbstractWord>, MarkedError> {
        let mut out = BTreeSet::new();
        if radius == 0 {
            return Ok(out);
        }
        if counter.fetch_add(1, Ordering::Relaxed) >= budget.max_words {
            return Err(MarkedError::BudgetExceeded {
                limit: budget.max_words,
            });
        }
        let value = search.letter(l).clone();
        let mut prefix = vec![l];
        if value.is_identity() {
            out.insert(prefix.clone());
        }
        search.dfs(&mut prefix, &value, &mut out)?;
        Ok(out)
    };

    let subtrees: Vec<Result<BTreeSet<AbstractWord>, MarkedError>> = if workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("worker pool");
        pool.install(|| first_letters.par_iter().map(|&l| run_subtree(l)).collect())
    } else {
        first_letters.iter().map(|&l| run_subtree(l)).collect()
    };

    let mut relations = BTreeSet::new();
    for sub in subtrees {
        relations.extend(sub?);
    }
    Ok(RelationSet { radius, relations })
}

/// The metric, reported symbolically: either the two markings share all
/// relations up to the probed radius, or they differ first at length
/// `agreement + 1` and the distance is exactly e^-agreement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distance {
    /// Same relations through r_max: distance at most e^-r_max.
    AgreesThrough(u32),
    /// Largest radius with identical relation sets; distance e^-agreement.
    Exact { agreement: u32 },
}

impl Distance {
    /// Agreement radius capped at the probed maximum, the quantity the
    /// ultrametric inequality is stated in.
    pub fn agreement_radius(&self) -> u32 {
        match self {
            Distance::AgreesThrough(r) => *r,
            Distance::Exact { agreement } => *agreement,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::AgreesThrough(r) => write!(f, "distance <= e^-{r}"),
            Distance::Exact { agreement } => write!(f, "distance = e^-{agreement}"),
        }
    }
}

pub fn marked_distance(
    m1: &Marking,
    m2: &Marking,
    r_max: u32,
    budget: EnumerationBudget,
    workers: usize,
) -> Result<Distance, MarkedError> {
    if m1.arity() != m2.arity() {
        return Err(MarkedError::ArityMismatch);
    }
    let s1 = relation_set(m1, r_max, budget, workers)?;
    let s2 = relation_set(m2, r_max, budget, workers)?;
    let min_diff = s1
        .relations
        .symmetric_difference(&s2.relations)
        .map(|w| w.len() as u32)
        .min();
    Ok(match min_diff {
        None => Distance::AgreesThrough(r_max),
        Some(l) => Distance::Exact { agreement: l - 1 },
    })
}

/// Outcome of scanning a sequence of markings for relation-set stabilization
/// at one radius. A stable tail of length one is no evidence, so such runs
/// report `stabilized_at = None`.
#[derive(Debug, Clone)]
pub struct ProbeReport {
    pub radius: u32,
    /// Relation count per sequence position.
    pub counts: Vec<u64>,
    /// Whether each position's set differs from the previous one.
    pub changed: Vec<bool>,
    /// Earliest position from which the sets stay constant to the end,
    /// provided that tail has length at least two.
    pub stabilized_at: Option<usize>,
}

impl ProbeReport {
    pub fn render(&self, labels: &[String]) -> String {
        let mut s = String::new();
        s.push_str("convergence probe: a finite-radius witness, not a proof of convergence\n");
        s.push_str(&format!("radius: {}\n", self.radius));
        for (i, count) in self.counts.iter().enumerate() {
            let marker = if i == 0 {
                "-"
            } else if self.changed[i] {
                "changed"
            } else {
                "same"
            };
            s.push_str(&format!(
                "n = {}: {} relations ({marker})\n",
                labels[i], count
            ));
        }
        match self.stabilized_at {
            Some(i) => s.push_str(&format!("stabilized at n0 = {}\n", labels[i])),
            None => s.push_str("not stabilized within range\n"),
        }
        s
    }
}

pub fn convergence_probe(
    sequence: &[Marking],
    radius: u32,
    budget: EnumerationBudget,
    workers: usize,
) -> Result<ProbeReport, MarkedError> {
    assert!(!sequence.is_empty(), "the probe needs at least one marking");
    let arity = sequence[0].arity();
    if sequence.iter().any(|m| m.arity() != arity) {
        return Err(MarkedError::ArityMismatch);
    }
    let sets: Vec<RelationSet> = sequence
        .iter()
        .map(|m| relation_set(m, radius, budget, workers))
        .collect::<Result<_, _>>()?;
    let counts: Vec<u64> = sets.iter().map(|s| s.relations.len() as u64).collect();
    let changed: Vec<bool> = std::iter::once(false)
        .chain(sets.windows(2).map(|w| w[0].relations != w[1].relations))
        .collect();
    let mut tail_start = sets.len() - 1;
    while tail_start > 0 && !changed[tail_start] {
        tail_start -= 1;
    }
    let stabilized_at = (tail_start + 2 <= sets.len()).then_some(tail_start);
    Ok(ProbeReport {
        radius,
        counts,
        changed,
        stabilized_at,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plf::{generator, PlHomeo};
    use crate::words::parse_word;

    fn mk(gens: &[PlHomeo]) -> Marking {
        Marking::new(gens.to_vec())
    }

    fn std_pair() -> Vec<PlHomeo> {
        vec![generator(0), generator(1)]
    }

    #[test]
    fn relation_set_examples() {
        let m = mk(&std_pair());
        let s = relation_set(&m, 1, EnumerationBudget::default(), 1).unwrap();
        assert!(s.relations.is_empty());

        let mut with_id = std_pair();
        with_id.push(PlHomeo::identity());
        let s = relation_set(&mk(&with_id), 1, EnumerationBudget::default(), 1).unwrap();
        let expect: BTreeSet<AbstractWord> = [vec![3], vec![-3]].into_iter().collect();
        assert_eq!(s.relations, expect);

        let s = relation_set(&m, 10, EnumerationBudget::default(), 1).unwrap();
        // [x0 x1^-1, x0^-1 x1 x0] expanded has length 10 and is a relation
        let relator: AbstractWord = free_reduce(&vec![1, -2, -1, 2, 1, 2, -1, -1, -2, 1]);
        assert_eq!(relator.len(), 10);
        assert!(
            s.relations.contains(&relator),
            "the finite presentation relator appears"
        );
    }

    fn free_reduce(w: &AbstractWord) -> AbstractWord {
        let mut out: AbstractWord = Vec::new();
        for &l in w {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        out
    }

    #[test]
    fn every_relation_evaluates_to_the_identity() {
        let m = mk(&[
            generator(0),
            generator(1),
            parse_word("x0 x1^-1").unwrap().to_plf(),
        ]);
        let s = relation_set(&m, 4, EnumerationBudget::default(), 1).unwrap();
        for w in &s.relations {
            let mut value = PlHomeo::identity();
            for &l in w {
                let g = &m.generators()[(l.abs() - 1) as usize];
                value = value.compose(&if l > 0 { g.clone() } else { g.inverse() });
            }
            assert!(value.is_identity());
        }
    }

    #[test]
    fn relation_sets_are_monotone_in_the_radius() {
        let m = mk(&[generator(0), generator(1), generator(2)]);
        let s4 = relation_set(&m, 4, EnumerationBudget::default(), 1).unwrap();
        let s6 = relation_set(&m, 6, EnumerationBudget::default(), 1).unwrap();
        assert!(s4.relations.is_subset(&s6.relations));
        assert_eq!(s6.truncate(4), s4.relations);
    }

    #[test]
    fn permuting_positions_permutes_relations() {
        let a = mk(&[generator(0), generator(1), generator(2)]);
        let b = mk(&[generator(1), generator(0), generator(2)]);
        let sa = relation_set(&a, 5, EnumerationBudget::default(), 1).unwrap();
        let sb = relation_set(&b, 5, EnumerationBudget::default(), 1).unwrap();
        let swapped: BTreeSet<AbstractWord> = sa
            .relations
            .iter()
            .map(|w| {
                w.iter()
                    .map(|&l| match l.abs() {
                        1 => 2 * l.signum(),
                        2 => l.signum(),
                        _ => l,
                    })
                    .collect()
            })
            .collect();
        assert_eq!(swapped, sb.relations);
    }

    #[test]
    fn budget_is_enforced() {
        let m = mk(&std_pair());
        let err = relation_set(&m, 10, EnumerationBudget { max_words: 100 }, 1);
        assert_eq!(err, Err(MarkedError::BudgetExceeded { limit: 100 }));
    }

    #[test]
    fn workers_do_not_change_the_result() {
        let m = mk(&[generator(0), generator(1), generator(3)]);
        let s1 = relation_set(&m, 6, EnumerationBudget::default(), 1).unwrap();
        let s4 = relation_set(&m, 6, EnumerationBudget::default(), 4).unwrap();
        assert_eq!(s1, s4);
    }

    #[test]
    fn distance_examples() {
        let budget = EnumerationBudget::default();
        let m = mk(&std_pair());
        assert_eq!(
            marked_distance(&m, &m, 5, budget, 1).unwrap(),
            Distance::AgreesThrough(5)
        );

        let mut with_id = std_pair();
        with_id.push(PlHomeo::identity());
        let mut with_x0 = std_pair();
        with_x0.push(generator(0));
        assert_eq!(
            marked_distance(&mk(&with_id), &mk(&with_x0), 3, budget, 1).unwrap(),
            Distance::Exact { agreement: 0 }
        );

        let mut with_x1 = std_pair();
        with_x1.push(generator(1));
        let mut with_x2 = std_pair();
        with_x2.push(generator(2));
        assert_eq!(
            marked_distance(&mk(&with_x1), &mk(&with_x2), 2, budget, 1).unwrap(),
            Distance::Exact { agreement: 1 }
        );

        assert_eq!(
            marked_distance(&m, &mk(&with_id), 2, budget, 1),
            Err(MarkedError::ArityMismatch)
        );
    }

    #[test]
    fn probe_examples() {
        let budget = EnumerationBudget::default();
        // constant sequence stabilizes immediately
        let seq: Vec<Marking> = (0..5)
            .map(|_| mk(&[generator(0), generator(1), generator(1)]))
            .collect();
        let report = convergence_probe(&seq, 3, budget, 1).unwrap();
        assert_eq!(report.stabilized_at, Some(0));

        // powers of x0: at n = 1 the third letter equals the first, giving
        // the four length-2 relations s1 s3^-1 etc.; nothing afterwards
        let seq: Vec<Marking> = (1..=6)
            .map(|n| mk(&[generator(0), generator(1), generator(0).pow(n)]))
            .collect();
        let report = convergence_probe(&seq, 2, budget, 1).unwrap();
        assert_eq!(report.counts, vec![4, 0, 0, 0, 0, 0]);
        assert_eq!(report.stabilized_at, Some(1));

        // at radius 2 the generator sequence differs only at n = 1
        let seq: Vec<Marking> = (1..=6)
            .map(|n| mk(&[generator(0), generator(1), generator(n)]))
            .collect();
        let report = convergence_probe(&seq, 2, budget, 1).unwrap();
        assert_eq!(
            report.stabilized_at,
            Some(1),
            "x1 marks a length-2 relation, later terms none"
        );
    }

    #[test]
    fn ultrametric_on_a_small_pool() {
        let budget = EnumerationBudget::default();
        let pool: Vec<Marking> = vec![
            mk(&[generator(0), generator(1), PlHomeo::identity()]),
            mk(&[generator(0), generator(1), generator(0)]),
            mk(&[generator(0), generator(1), generator(1)]),
            mk(&[generator(0), generator(1), generator(2)]),
            mk(&[generator(0), generator(1), generator(0).pow(2)]),
        ];
        let r_max = 4;
        let n = pool.len();
        let mut radii = vec![vec![0u32; n]; n];
        for i in 0..n {
            for j in 0..n {
                radii[i][j] = marked_distance(&pool[i], &pool[j], r_max, budget, 1)
                    .unwrap()
                    .agreement_radius();
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    assert!(
                        radii[i][k] >= radii[i][j].min(radii[j][k]),
                        "ultrametric violated at ({i},{j},{k})"
                    );
                }
            }
        }
    }

    #[test]
    fn rendering_merges_powers() {
        assert_eq!(render_abstract_word(&vec![1, 1, -2, 3]), "s1^2 s2^-1 s3");
    }
}
