//! Lattice-form submodularity checks for the disagreement potential.
//!
//! For a pair `(a, b)` the margin is `[d(a) + d(b)] - [d(a | b) + d(a & b)]`;
//! submodularity is the statement that the margin is never negative. Because
//! `d` only depends on the number of ones, the sweeps here work on bit masks
//! and popcounts and only materialize [`LabelVector`]s for reported pairs.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::concave::{disagreement, Penalty, RawTable};
use crate::error::{Error, Result};
use crate::label::{deviation_from_ones, dominant_label, LabelVector, Majority};

/// Margins below `-MARGIN_TOLERANCE` count as violations.
pub const MARGIN_TOLERANCE: f64 = 1e-9;

/// Largest `k` swept exhaustively (`4^k` pairs).
pub const MAX_EXHAUSTIVE_K: usize = 13;

/// Reports keep at most this many violating pairs; the total is always counted.
pub const MAX_RETAINED_VIOLATIONS: usize = 1 << 16;

/// Seed used by [`find_counterexample`] when it falls back to sampling.
pub const COUNTEREXAMPLE_SEED: u64 = 0;

/// Coordinate-pattern counts of a pair: `(00, 01, 10, 11)` for `(a_i, b_i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct KappaProfile {
    pub k1: usize,
    pub k2: usize,
    pub k3: usize,
    pub k4: usize,
}

impl KappaProfile {
    pub fn total(&self) -> usize {
        self.k1 + self.k2 + self.k3 + self.k4
    }

    /// Deviation of `a | b`: its zeros are exactly the `k1` block.
    pub fn join_deviation(&self) -> usize {
        self.k1.min(self.k2 + self.k3 + self.k4)
    }

    /// Deviation of `a & b`: its ones are exactly the `k4` block.
    pub fn meet_deviation(&self) -> usize {
        (self.k1 + self.k2 + self.k3).min(self.k4)
    }

    pub fn as_array(&self) -> [usize; 4] {
        [self.k1, self.k2, self.k3, self.k4]
    }
}

/// Which branch of the case analysis a pair falls into, decided by the
/// dominant labels of its join and meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProofCase {
    /// `rho(a | b) = 0` (forces `rho(a & b) = 0`).
    JoinZero,
    /// `rho(a & b) = 1` (forces `rho(a | b) = 1`).
    MeetOne,
    JoinOneMeetZero,
    /// Only reachable through ties; never occurs with strict majorities.
    JoinZeroMeetOne,
    TieInvolved,
}

impl ProofCase {
    pub fn as_str(&self) -> &'static str {
        match self {
            ProofCase::JoinZero => "JoinZero",
            ProofCase::MeetOne => "MeetOne",
            ProofCase::JoinOneMeetZero => "JoinOneMeetZero",
            ProofCase::JoinZeroMeetOne => "JoinZeroMeetOne",
            ProofCase::TieInvolved => "TieInvolved",
        }
    }

    fn from_majorities(join: Majority, meet: Majority) -> ProofCase {
        match (join, meet) {
            (Majority::Tie, _) | (_, Majority::Tie) => ProofCase::TieInvolved,
            (Majority::Zero, Majority::One) => ProofCase::JoinZeroMeetOne,
            (Majority::Zero, _) => ProofCase::JoinZero,
            (_, Majority::One) => ProofCase::MeetOne,
            (Majority::One, Majority::Zero) => ProofCase::JoinOneMeetZero,
        }
    }
}

impl std::fmt::Display for ProofCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A pair with negative margin.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub a: LabelVector,
    pub b: LabelVector,
    pub margin: f64,
    pub kappa: KappaProfile,
    pub case: ProofCase,
}

impl Violation {
    fn new(a: LabelVector, b: LabelVector, margin: f64) -> Violation {
        // lengths agree by construction
        let (case, kappa) = classify_case(&a, &b).expect("equal lengths");
        Violation { a, b, margin, kappa, case }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub k: usize,
    pub pairs_checked: u64,
    /// Total number of violating pairs, including any not retained.
    pub violation_count: u64,
    /// Violating pairs in scan order, at most [`MAX_RETAINED_VIOLATIONS`].
    pub violations: Vec<Violation>,
    pub min_margin: f64,
    pub elapsed: Duration,
}

impl VerifyReport {
    pub fn has_violations(&self) -> bool {
        self.violation_count > 0
    }

    /// Equality of everything except `elapsed`, with margins compared bitwise.
    pub fn same_outcome(&self, other: &VerifyReport) -> bool {
        let same_violation = |x: &Violation, y: &Violation| {
            x.a == y.a && x.b == y.b && x.margin.to_bits() == y.margin.to_bits()
        };
        self.k == other.k
            && self.pairs_checked == other.pairs_checked
            && self.violation_count == other.violation_count
            && self.min_margin.to_bits() == other.min_margin.to_bits()
            && self.violations.len() == other.violations.len()
            && self.violations.iter().zip(&other.violations).all(|(x, y)| same_violation(x, y))
    }
}

/// Single place the margin is formed, so every path rounds identically.
#[inline]
fn margin_of(da: f64, db: f64, dj: f64, dm: f64) -> f64 {
    // + 0.0 folds -0.0 into 0.0 so min_margin is order independent
    ((da + db) - (dj + dm)) + 0.0
}

fn check_len(a: &LabelVector, b: &LabelVector) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { left: a.len(), right: b.len() });
    }
    Ok(())
}

/// Componentwise or / and.
pub fn join_meet(a: &LabelVector, b: &LabelVector) -> Result<(LabelVector, LabelVector)> {
    check_len(a, b)?;
    let join = a.iter().zip(b.iter()).map(|(x, y)| x | y).collect();
    let meet = a.iter().zip(b.iter()).map(|(x, y)| x & y).collect();
    Ok((LabelVector::new(join)?, LabelVector::new(meet)?))
}

pub fn kappa_profile(a: &LabelVector, b: &LabelVector) -> Result<KappaProfile> {
    check_len(a, b)?;
    let mut kp = KappaProfile { k1: 0, k2: 0, k3: 0, k4: 0 };
    for (x, y) in a.iter().zip(b.iter()) {
        match (x, y) {
            (false, false) => kp.k1 += 1,
            (false, true) => kp.k2 += 1,
            (true, false) => kp.k3 += 1,
            (true, true) => kp.k4 += 1,
        }
    }
    Ok(kp)
}

/// `[d(a) + d(b)] - [d(a | b) + d(a & b)]`.
pub fn submodular_margin<P: Penalty + ?Sized>(
    spec: &P,
    a: &LabelVector,
    b: &LabelVector,
) -> Result<f64> {
    let (join, meet) = join_meet(a, b)?;
    Ok(margin_of(
        disagreement(spec, a)?,
        disagreement(spec, b)?,
        disagreement(spec, &join)?,
        disagreement(spec, &meet)?,
    ))
}

pub fn classify_case(a: &LabelVector, b: &LabelVector) -> Result<(ProofCase, KappaProfile)> {
    let (join, meet) = join_meet(a, b)?;
    let kappa = kappa_profile(a, b)?;
    let case = ProofCase::from_majorities(
        dominant_label(&join).majority,
        dominant_label(&meet).majority,
    );
    Ok((case, kappa))
}

/// `d` indexed by the number of ones.
fn table_by_ones<P: Penalty + ?Sized>(spec: &P, k: usize) -> Result<Vec<f64>> {
    spec.require_cover(k / 2)?;
    (0..=k).map(|ones| spec.eval(deviation_from_ones(ones, k))).collect()
}

#[inline]
fn mask_margin(d: &[f64], a: u64, b: u64) -> f64 {
    margin_of(
        d[a.count_ones() as usize],
        d[b.count_ones() as usize],
        d[(a | b).count_ones() as usize],
        d[(a & b).count_ones() as usize],
    )
}

fn check_exhaustive_k(k: usize) -> Result<()> {
    if k == 0 || k > MAX_EXHAUSTIVE_K {
        return Err(Error::Range { index: k, max: MAX_EXHAUSTIVE_K });
    }
    Ok(())
}

struct Partial {
    min_margin: f64,
    count: u64,
    found: Vec<(u64, u64, f64)>,
}

impl Partial {
    fn new() -> Self {
        Partial { min_margin: f64::INFINITY, count: 0, found: Vec::new() }
    }

    #[inline]
    fn record(&mut self, a: u64, b: u64, margin: f64) {
        if margin < self.min_margin {
            self.min_margin = margin;
        }
        if margin < -MARGIN_TOLERANCE {
            self.count += 1;
            if self.found.len() < MAX_RETAINED_VIOLATIONS {
                self.found.push((a, b, margin));
            }
        }
    }

    fn absorb(&mut self, other: Partial) {
        if other.min_margin < self.min_margin {
            self.min_margin = other.min_margin;
        }
        self.count += other.count;
        let room = MAX_RETAINED_VIOLATIONS - self.found.len();
        self.found.extend(other.found.into_iter().take(room));
    }

    fn into_report(self, k: usize, pairs: u64, started: Instant) -> Result<VerifyReport> {
        let violations = self
            .found
            .into_iter()
            .map(|(a, b, m)| {
                Ok(Violation::new(LabelVector::from_mask(a, k)?, LabelVector::from_mask(b, k)?, m))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(VerifyReport {
            k,
            pairs_checked: pairs,
            violation_count: self.count,
            violations,
            min_margin: self.min_margin,
            elapsed: started.elapsed(),
        })
    }
}

/// Checks every ordered pair in `{0,1}^k x {0,1}^k`, in parallel over `a`.
///
/// The result matches [`verify_exhaustive_sequential`] exactly: pairs are
/// merged back in lexicographic `(a, b)` order.
pub fn verify_exhaustive<P: Penalty + Sync + ?Sized>(spec: &P, k: usize) -> Result<VerifyReport> {
    check_exhaustive_k(k)?;
    let started = Instant::now();
    let d = table_by_ones(spec, k)?;
    let n = 1u64 << k;
    let partials: Vec<Partial> = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut p = Partial::new();
            for b in 0..n {
                p.record(a, b, mask_margin(&d, a, b));
            }
            p
        })
        .collect();
    let mut total = Partial::new();
    for p in partials {
        total.absorb(p);
    }
    total.into_report(k, n * n, started)
}

/// Reference single-threaded lexicographic scan.
pub fn verify_exhaustive_sequential<P: Penalty + ?Sized>(
    spec: &P,
    k: usize,
) -> Result<VerifyReport> {
    check_exhaustive_k(k)?;
    let started = Instant::now();
    let d = table_by_ones(spec, k)?;
    let n = 1u64 << k;
    let mut p = Partial::new();
    for a in 0..n {
        for b in 0..n {
            p.record(a, b, mask_margin(&d, a, b));
        }
    }
    p.into_report(k, n * n, started)
}

/// Random vectors of arbitrary length, stored as 64-bit words.
///
/// Each vector draws a density level first, then ANDs or ORs together a few
/// uniform words, so popcounts spread over the whole range instead of
/// concentrating around `k/2`. Pairs far from balance are where violations
/// for non-concave tables live.
struct PairSampler {
    rng: ChaCha8Rng,
    k: usize,
    words: usize,
    tail: u64,
}

impl PairSampler {
    fn new(k: usize, seed: u64) -> Self {
        let words = k.div_ceil(64);
        let rem = k % 64;
        let tail = if rem == 0 { u64::MAX } else { (1u64 << rem) - 1 };
        PairSampler { rng: ChaCha8Rng::seed_from_u64(seed), k, words, tail }
    }

    fn draw(&mut self, out: &mut [u64]) {
        let level: i32 = self.rng.gen_range(-3..=3);
        for w in out.iter_mut() {
            let mut v: u64 = self.rng.gen();
            for _ in 0..level.unsigned_abs() {
                let extra: u64 = self.rng.gen();
                v = if level < 0 { v & extra } else { v | extra };
            }
            *w = v;
        }
        out[self.words - 1] &= self.tail;
    }

    fn to_label(&self, words: &[u64]) -> LabelVector {
        let bits = (0..self.k).map(|i| (words[i / 64] >> (i % 64)) & 1 == 1).collect();
        LabelVector::new(bits).expect("k >= 1")
    }
}

fn ones(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

/// Scans pairs from a sampler, calling `visit` until it returns false.
fn sampled_scan(
    d: &[f64],
    k: usize,
    n_pairs: u64,
    seed: u64,
    mut visit: impl FnMut(&PairSampler, &[u64], &[u64], f64) -> bool,
) {
    let mut sampler = PairSampler::new(k, seed);
    let mut a = vec![0u64; sampler.words];
    let mut b = vec![0u64; sampler.words];
    for _ in 0..n_pairs {
        sampler.draw(&mut a);
        sampler.draw(&mut b);
        let (mut or, mut and) = (0usize, 0usize);
        for (x, y) in a.iter().zip(&b) {
            or += (x | y).count_ones() as usize;
            and += (x & y).count_ones() as usize;
        }
        let margin = margin_of(d[ones(&a)], d[ones(&b)], d[or], d[and]);
        if !visit(&sampler, &a, &b, margin) {
            break;
        }
    }
}

/// Checks `n_pairs` pseudorandom pairs; fully determined by `(k, n_pairs, seed)`.
pub fn verify_sampled<P: Penalty + ?Sized>(
    spec: &P,
    k: usize,
    n_pairs: u64,
    seed: u64,
) -> Result<VerifyReport> {
    if k == 0 {
        return Err(Error::Parameter("k must be >= 1".into()));
    }
    let started = Instant::now();
    let d = table_by_ones(spec, k)?;
    let mut min_margin = f64::INFINITY;
    let mut count = 0u64;
    let mut violations = Vec::new();
    sampled_scan(&d, k, n_pairs, seed, |sampler, a, b, margin| {
        if margin < min_margin {
            min_margin = margin;
        }
        if margin < -MARGIN_TOLERANCE {
            count += 1;
            if violations.len() < MAX_RETAINED_VIOLATIONS {
                violations.push(Violation::new(sampler.to_label(a), sampler.to_label(b), margin));
            }
        }
        true
    });
    Ok(VerifyReport {
        k,
        pairs_checked: n_pairs,
        violation_count: count,
        violations,
        min_margin,
        elapsed: started.elapsed(),
    })
}

/// Hunts for a violating pair under an arbitrary (possibly non-concave) table.
///
/// Scans lexicographically when `k <= MAX_EXHAUSTIVE_K`, otherwise samples
/// with [`COUNTEREXAMPLE_SEED`]. At most `budget` pairs are examined.
/// Returns `None` for `k < 2`, where `d` is constant.
pub fn find_counterexample(g_samples: &[f64], k: usize, budget: u64) -> Result<Option<Violation>> {
    if k < 2 {
        return Ok(None);
    }
    let table = RawTable::new(g_samples.to_vec())?;
    let d = table_by_ones(&table, k)?;
    if k <= MAX_EXHAUSTIVE_K {
        let n = 1u64 << k;
        let pairs = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).take(budget as usize);
        for (a, b) in pairs {
            let m = mask_margin(&d, a, b);
            if m < -MARGIN_TOLERANCE {
                let a = LabelVector::from_mask(a, k)?;
                let b = LabelVector::from_mask(b, k)?;
                return Ok(Some(Violation::new(a, b, m)));
            }
        }
        return Ok(None);
    }
    let mut found = None;
    sampled_scan(&d, k, budget, COUNTEREXAMPLE_SEED, |sampler, a, b, margin| {
        if margin < -MARGIN_TOLERANCE {
            found = Some(Violation::new(sampler.to_label(a), sampler.to_label(b), margin));
            false
        } else {
            true
        }
    });
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concave::{ConcaveSpec, Family};

    fn lv(s: &str) -> LabelVector {
        s.parse().unwrap()
    }

    fn squares(t_max: usize) -> RawTable {
        RawTable::new((0..=t_max).map(|t| (t * t) as f64).collect()).unwrap()
    }

    #[test]
    fn join_meet_examples() {
        assert_eq!(join_meet(&lv("0011"), &lv("0101")).unwrap(), (lv("0111"), lv("0001")));
        assert_eq!(join_meet(&lv("0110"), &lv("0110")).unwrap(), (lv("0110"), lv("0110")));
        assert_eq!(join_meet(&lv("10"), &lv("01")).unwrap(), (lv("11"), lv("00")));
        assert_eq!(
            join_meet(&lv("00"), &lv("011")),
            Err(Error::LengthMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn kappa_examples() {
        let kp = |a, b| kappa_profile(&lv(a), &lv(b)).unwrap().as_array();
        assert_eq!(kp("0011", "0101"), [1, 1, 1, 1]);
        assert_eq!(kp("01101", "01101"), [2, 0, 0, 3]);
        assert_eq!(kp("10", "01"), [0, 1, 1, 0]);
    }

    #[test]
    fn margin_examples() {
        let sqrt = ConcaveSpec::new(Family::Sqrt, 2, 1.0).unwrap();
        let m = submodular_margin(&sqrt, &lv("0011"), &lv("0101")).unwrap();
        // d(a) = d(b) = sqrt 2, d(join) = d(meet) = 1
        assert!((m - (2.0 * 2f64.sqrt() - 2.0)).abs() < 1e-12);
        assert!((m - 0.82842712).abs() < 1e-8);

        assert_eq!(submodular_margin(&sqrt, &lv("0110"), &lv("0110")).unwrap(), 0.0);

        let m = submodular_margin(&squares(3), &lv("000011"), &lv("000101")).unwrap();
        assert_eq!(m, -2.0);
    }

    #[test]
    fn classify_examples() {
        let (case, kp) = classify_case(&lv("00"), &lv("00")).unwrap();
        assert_eq!((case, kp.as_array()), (ProofCase::JoinZero, [2, 0, 0, 0]));
        let (case, kp) = classify_case(&lv("11000"), &lv("01100")).unwrap();
        assert_eq!((case, kp.as_array()), (ProofCase::JoinOneMeetZero, [2, 1, 1, 1]));
        let (case, kp) = classify_case(&lv("01"), &lv("01")).unwrap();
        assert_eq!((case, kp.as_array()), (ProofCase::TieInvolved, [1, 0, 0, 1]));
    }

    #[test]
    fn exhaustive_examples() {
        let sqrt = ConcaveSpec::new(Family::Sqrt, 3, 1.0).unwrap();
        let r = verify_exhaustive(&sqrt, 6).unwrap();
        assert_eq!(r.pairs_checked, 4096);
        assert!(r.violations.is_empty());
        assert!(r.min_margin >= 0.0);

        let r = verify_exhaustive(&sqrt, 1).unwrap();
        assert_eq!(r.pairs_checked, 4);
        assert_eq!(r.violation_count, 0);
        assert_eq!(r.min_margin, 0.0);

        let r = verify_exhaustive(&squares(3), 6).unwrap();
        assert!(r.has_violations());
        assert_eq!(r.violation_count as usize, r.violations.len());
        assert!(r.violations.iter().any(|v| v.a == lv("000011") && v.b == lv("000101")));
        assert!(r.min_margin < -MARGIN_TOLERANCE);
    }

    #[test]
    fn exhaustive_range() {
        let sqrt = ConcaveSpec::new(Family::Sqrt, 7, 1.0).unwrap();
        assert!(matches!(verify_exhaustive(&sqrt, 0), Err(Error::Range { .. })));
        assert!(matches!(verify_exhaustive(&sqrt, 14), Err(Error::Range { .. })));
        // table too short for k = 8
        let short = ConcaveSpec::new(Family::Sqrt, 3, 1.0).unwrap();
        assert!(matches!(verify_exhaustive(&short, 8), Err(Error::Range { .. })));
    }

    #[test]
    fn parallel_matches_sequential() {
        for k in [1, 4, 7] {
            let sq = squares(k / 2);
            let a = verify_exhaustive(&sq, k).unwrap();
            let b = verify_exhaustive_sequential(&sq, k).unwrap();
            assert!(a.same_outcome(&b), "k = {k}");
        }
    }

    #[test]
    fn sampled_is_deterministic_and_finds_convex_violations() {
        let sq = squares(32);
        let r1 = verify_sampled(&sq, 64, 20_000, 1).unwrap();
        let r2 = verify_sampled(&sq, 64, 20_000, 1).unwrap();
        assert!(r1.same_outcome(&r2));
        assert!(r1.has_violations());
        let r3 = verify_sampled(&sq, 64, 20_000, 2).unwrap();
        assert!(!r1.same_outcome(&r3));

        let sqrt = ConcaveSpec::new(Family::Sqrt, 32, 1.0).unwrap();
        assert!(!verify_sampled(&sqrt, 64, 20_000, 1).unwrap().has_violations());
    }

    #[test]
    fn sampled_handles_multiword_vectors() {
        let sq = squares(50);
        let r = verify_sampled(&sq, 100, 5_000, 3).unwrap();
        assert!(r.has_violations());
        for v in r.violations.iter().take(20) {
            assert_eq!(v.a.len(), 100);
            let m = submodular_margin(&sq, &v.a, &v.b).unwrap();
            assert_eq!(m.to_bits(), v.margin.to_bits());
        }
    }

    #[test]
    fn counterexample_examples() {
        let sq: Vec<f64> = (0..=3).map(|t| (t * t) as f64).collect();
        let v = find_counterexample(&sq, 6, u64::MAX).unwrap().expect("convex g violates");
        assert!(v.margin < -MARGIN_TOLERANCE);
        assert_eq!(submodular_margin(&squares(3), &v.a, &v.b).unwrap(), v.margin);

        let sqrt: Vec<f64> = (0..=4).map(|t| (t as f64).sqrt()).collect();
        assert!(find_counterexample(&sqrt, 8, u64::MAX).unwrap().is_none());

        let trunc: Vec<f64> = (0..=2).map(|t| (t as f64).min(2.0)).collect();
        assert!(find_counterexample(&trunc, 5, u64::MAX).unwrap().is_none());

        assert!(find_counterexample(&sq, 1, u64::MAX).unwrap().is_none());
        // a budget of zero pairs finds nothing
        assert!(find_counterexample(&sq, 6, 0).unwrap().is_none());
    }

    #[test]
    fn counterexample_sampled_path() {
        let sq: Vec<f64> = (0..=10).map(|t| (t * t) as f64).collect();
        let v = find_counterexample(&sq, 20, 100_000).unwrap().expect("found by sampling");
        assert_eq!(v.a.len(), 20);
    }
}
