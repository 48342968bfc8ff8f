//! Directed sets, nets and numerical convergence probing.
//!
//! A net is a function from a directed index set into a metric value space.
//! The index sets here are computable stand-ins for the set-theoretic ones:
//! integer ranks (chains), finite seminorm subsets ordered by inclusion, and
//! finite-dimensional subspaces ordered by span containment. Probing walks a
//! monotone schedule of indices and renders one of three verdicts; divergence
//! always comes with a witness pair of comparable indices.

use std::collections::BTreeSet;

use num_complex::Complex64;
use thiserror::Error;

use crate::seq::SeqExpr;

/// Span-containment tolerance for subspace payloads.
const SUBSPACE_RESIDUAL_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum NetError {
    #[error("indices come from incompatible index sets")]
    IncompatibleIndexSets,
    #[error("subspace payload columns must be nonzero and of equal length")]
    MalformedSubspace,
    #[error("schedule must be monotone increasing in the index order (violated at position {0})")]
    NonMonotoneSchedule(usize),
    #[error("schedule must contain at least {required} indices, got {got}")]
    ScheduleTooShort { required: usize, got: usize },
    #[error("tolerance and divergence threshold must be positive and finite")]
    BadTolerance,
    #[error("domination |a_(alpha,k)| <= g_k violated at alpha = {alpha}, k = {k}")]
    DominationViolated { alpha: u64, k: usize },
    #[error("no finite tail bound available for the dominating sequence")]
    TailUnavailable,
    #[error("head terms failed to stabilize within the iteration budget")]
    HeadNotStabilized,
}

// ---------------------------------------------------------------------------
// Directed indices
// ---------------------------------------------------------------------------

/// Payload of a directed index. Two indices are comparable only when they
/// carry the same payload variant.
#[derive(Clone, Debug)]
pub enum IndexPayload {
    /// A chain of integers.
    Rank(u64),
    /// A finite set of seminorm indices, ordered by inclusion.
    SeminormSet(BTreeSet<u32>),
    /// A finite-dimensional subspace of some R^d given by orthonormal
    /// columns, ordered by span containment.
    Subspace(Vec<Vec<f64>>),
}

#[derive(Clone, Debug)]
pub struct DirectedIndex {
    pub payload: IndexPayload,
    /// Scheduling rank: position of the index along the probed chain.
    pub rank: u64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Gram-Schmidt with rank check: returns an orthonormal basis of the span of
/// `vectors`, discarding numerically dependent columns.
fn orthonormalize(vectors: &[Vec<f64>]) -> Result<Vec<Vec<f64>>, NetError> {
    let dim = match vectors.first() {
        Some(v) => v.len(),
        None => return Ok(Vec::new()),
    };
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vectors {
        if v.len() != dim {
            return Err(NetError::MalformedSubspace);
        }
        let mut w = v.clone();
        // Two passes of re-orthogonalization keep the Gram defect tiny.
        for _ in 0..2 {
            for b in &basis {
                let c = dot(&w, b);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= c * bi;
                }
            }
        }
        let n = norm(&w);
        if n > 1e-10 * norm(v).max(1.0) {
            for wi in w.iter_mut() {
                *wi /= n;
            }
            basis.push(w);
        }
    }
    Ok(basis)
}

/// Residual of `v` against the span of the orthonormal `basis`.
fn projection_residual(v: &[f64], basis: &[Vec<f64>]) -> f64 {
    let mut w = v.to_vec();
    for b in basis {
        let c = dot(&w, b);
        for (wi, bi) in w.iter_mut().zip(b) {
            *wi -= c * bi;
        }
    }
    norm(&w)
}

impl DirectedIndex {
    pub fn rank(r: u64) -> Self {
        DirectedIndex {
            payload: IndexPayload::Rank(r),
            rank: r,
        }
    }

    pub fn seminorm_set<I: IntoIterator<Item = u32>>(items: I) -> Self {
        let set: BTreeSet<u32> = items.into_iter().collect();
        let rank = set.len() as u64;
        DirectedIndex {
            payload: IndexPayload::SeminormSet(set),
            rank,
        }
    }

    /// Builds a subspace index from spanning vectors (orthonormalized, with
    /// dependent columns dropped).
    pub fn subspace(vectors: &[Vec<f64>]) -> Result<Self, NetError> {
        let basis = orthonormalize(vectors)?;
        let rank = basis.len() as u64;
        Ok(DirectedIndex {
            payload: IndexPayload::Subspace(basis),
            rank,
        })
    }

    /// Partial order test `self <= other`. Errors when the payloads are of
    /// different kinds.
    pub fn leq(&self, other: &DirectedIndex) -> Result<bool, NetError> {
        match (&self.payload, &other.payload) {
            (IndexPayload::Rank(a), IndexPayload::Rank(b)) => Ok(a <= b),
            (IndexPayload::SeminormSet(a), IndexPayload::SeminormSet(b)) => Ok(a.is_subset(b)),
            (IndexPayload::Subspace(a), IndexPayload::Subspace(b)) => {
                if a.first().map(Vec::len) != b.first().map(Vec::len)
                    && !a.is_empty()
                    && !b.is_empty()
                {
                    return Err(NetError::IncompatibleIndexSets);
                }
                Ok(a.iter()
                    .all(|v| projection_residual(v, b) < SUBSPACE_RESIDUAL_TOL))
            }
            _ => Err(NetError::IncompatibleIndexSets),
        }
    }

    pub fn comparable(&self, other: &DirectedIndex) -> Result<bool, NetError> {
        Ok(self.leq(other)? || other.leq(self)?)
    }
}

/// Least upper bound witness: `join(i, j) >= i` and `join(i, j) >= j`.
pub fn join(i: &DirectedIndex, j: &DirectedIndex) -> Result<DirectedIndex, NetError> {
    match (&i.payload, &j.payload) {
        (IndexPayload::Rank(a), IndexPayload::Rank(b)) => Ok(DirectedIndex::rank(*a.max(b))),
        (IndexPayload::SeminormSet(a), IndexPayload::SeminormSet(b)) => {
            Ok(DirectedIndex::seminorm_set(a.union(b).copied()))
        }
        (IndexPayload::Subspace(a), IndexPayload::Subspace(b)) => {
            if !a.is_empty() && !b.is_empty() && a[0].len() != b[0].len() {
                return Err(NetError::IncompatibleIndexSets);
            }
            let mut all = a.clone();
            all.extend_from_slice(b);
            DirectedIndex::subspace(&all)
        }
        _ => Err(NetError::IncompatibleIndexSets),
    }
}

// ---------------------------------------------------------------------------
// Nets and convergence reports
// ---------------------------------------------------------------------------

/// A net: deterministic evaluation map from directed indices into a value
/// space. Values are probed through a caller-supplied metric.
pub struct Net<V> {
    eval: Box<dyn Fn(&DirectedIndex) -> V + Send + Sync>,
}

impl<V> Net<V> {
    pub fn new(eval: impl Fn(&DirectedIndex) -> V + Send + Sync + 'static) -> Self {
        Net { eval: Box::new(eval) }
    }

    pub fn eval(&self, i: &DirectedIndex) -> V {
        (self.eval)(i)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Converged,
    Diverged,
    Inconclusive,
}

/// Outcome of probing a net along a schedule.
#[derive(Clone, Debug)]
pub struct ConvergenceReport<V> {
    pub verdict: Verdict,
    /// Last stabilized value when converged.
    pub limit: Option<V>,
    /// Max pairwise distance among the tail samples.
    pub oscillation: f64,
    /// `(index rank, value)` trajectory actually probed.
    pub samples: Vec<(u64, V)>,
    /// Divergence witness: two comparable indices whose values differ by
    /// more than the divergence threshold.
    pub witness: Option<((u64, V), (u64, V))>,
}

#[derive(Clone, Copy, Debug)]
pub struct ProbeOptions {
    pub tol: f64,
    pub div_threshold: f64,
    /// Minimum number of consecutive stabilized samples required before a
    /// converged verdict; guards against slow oscillation.
    pub window: usize,
}

impl ProbeOptions {
    pub fn new(tol: f64, div_threshold: f64) -> Self {
        ProbeOptions {
            tol,
            div_threshold,
            window: 5,
        }
    }
}

/// Core probe on a materialized trajectory. `comparable(i, j)` reports
/// whether the indices at sample positions `i` and `j` are comparable; on a
/// monotone schedule it is constantly true.
pub fn probe_samples<V: Clone>(
    samples: &[(u64, V)],
    comparable: impl Fn(usize, usize) -> bool,
    dist: impl Fn(&V, &V) -> f64,
    opts: &ProbeOptions,
) -> ConvergenceReport<V> {
    let m = samples.len();
    // suffix_diam[t] = max pairwise distance among samples t..m
    let mut suffix_diam = vec![0.0f64; m + 1];
    for t in (0..m).rev() {
        let mut worst = suffix_diam[t + 1];
        for u in t + 1..m {
            worst = worst.max(dist(&samples[t].1, &samples[u].1));
        }
        suffix_diam[t] = worst;
    }

    let tail_start = m.saturating_sub((m / 2).max(3));
    let tail_oscillation = suffix_diam[tail_start.min(m)];

    // Converged: some suffix of length >= window has diameter <= tol.
    for t in 0..m {
        if m - t >= opts.window && suffix_diam[t] <= opts.tol {
            return ConvergenceReport {
                verdict: Verdict::Converged,
                limit: Some(samples[m - 1].1.clone()),
                oscillation: suffix_diam[t],
                samples: samples.to_vec(),
                witness: None,
            };
        }
    }

    // Diverged: a comparable pair further apart than the threshold. Report
    // the worst such pair.
    let mut witness: Option<(usize, usize, f64)> = None;
    for i in 0..m {
        for j in i + 1..m {
            if !comparable(i, j) {
                continue;
            }
            let d = dist(&samples[i].1, &samples[j].1);
            if d > opts.div_threshold && witness.map_or(true, |(_, _, w)| d > w) {
                witness = Some((i, j, d));
            }
        }
    }
    if let Some((i, j, _)) = witness {
        return ConvergenceReport {
            verdict: Verdict::Diverged,
            limit: None,
            oscillation: tail_oscillation,
            samples: samples.to_vec(),
            witness: Some((samples[i].clone(), samples[j].clone())),
        };
    }

    ConvergenceReport {
        verdict: Verdict::Inconclusive,
        limit: None,
        oscillation: tail_oscillation,
        samples: samples.to_vec(),
        witness: None,
    }
}

/// Probes a net along a monotone schedule.
pub fn probe_convergence<V: Clone>(
    net: &Net<V>,
    schedule: &[DirectedIndex],
    dist: impl Fn(&V, &V) -> f64,
    opts: &ProbeOptions,
) -> Result<ConvergenceReport<V>, NetError> {
    if !(opts.tol > 0.0 && opts.tol.is_finite())
        || !(opts.div_threshold > 0.0 && opts.div_threshold.is_finite())
    {
        return Err(NetError::BadTolerance);
    }
    if schedule.len() < 3 {
        return Err(NetError::ScheduleTooShort {
            required: 3,
            got: schedule.len(),
        });
    }
    for w in 1..schedule.len() {
        if !schedule[w - 1].leq(&schedule[w])? {
            return Err(NetError::NonMonotoneSchedule(w));
        }
    }
    let samples: Vec<(u64, V)> = schedule
        .iter()
        .map(|i| (i.rank, net.eval(i)))
        .collect();
    Ok(probe_samples(&samples, |_, _| true, dist, opts))
}

// ---------------------------------------------------------------------------
// Dominated convergence for nets of sequences
// ---------------------------------------------------------------------------

/// A net of sequences `alpha -> (a_(alpha,k))_k`, probed along the chain
/// alpha = 1, 2, 4, 8, ...
pub struct SequenceNet {
    eval: Box<dyn Fn(u64, usize) -> Complex64 + Send + Sync>,
}

impl SequenceNet {
    pub fn new(eval: impl Fn(u64, usize) -> Complex64 + Send + Sync + 'static) -> Self {
        SequenceNet { eval: Box::new(eval) }
    }

    pub fn eval(&self, alpha: u64, k: usize) -> Complex64 {
        (self.eval)(alpha, k)
    }
}

/// Summable nonnegative dominator `g` with a computable tail bound.
pub struct Dominator {
    expr: SeqExpr,
}

impl Dominator {
    pub fn new(expr: SeqExpr) -> Self {
        Dominator { expr }
    }

    pub fn term(&self, k: usize) -> f64 {
        self.expr.value(k as u64).re
    }

    /// Upper bound for `Σ_{k > k0} g_k`, when one exists.
    pub fn tail(&self, k0: usize) -> Option<f64> {
        self.expr.abs_tail_sum_bracket(k0 as u64).map(|(_, hi)| hi)
    }
}

/// Limit of `Σ_k a_(alpha,k)` along the net, within `tol`.
///
/// Follows the head/tail split of the countable-space dominated-convergence
/// argument: truncate at `k0` with `tail(g) < tol/4`, then advance alpha
/// until the head terms stabilize within `tol / 2^(k+1)` per index. The
/// domination hypothesis is checked at every sampled pair.
pub fn dominated_net_sum(
    family: &SequenceNet,
    g: &Dominator,
    tol: f64,
) -> Result<Complex64, NetError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(NetError::BadTolerance);
    }
    // Head cutoff from the dominator's tail bound.
    let mut k0 = 1usize;
    loop {
        match g.tail(k0) {
            None => return Err(NetError::TailUnavailable),
            Some(t) if t < tol / 4.0 => break,
            Some(_) => {
                k0 *= 2;
                if k0 > 1 << 22 {
                    return Err(NetError::TailUnavailable);
                }
            }
        }
    }
    // Tighten: smallest power-of-two-free cutoff by bisection downward.
    while k0 > 1 && g.tail(k0 - 1).map_or(false, |t| t < tol / 4.0) {
        k0 -= 1;
    }

    let check_domination = |alpha: u64, head: &[Complex64]| -> Result<(), NetError> {
        for (idx, a) in head.iter().enumerate() {
            let k = idx + 1;
            let gk = g.term(k);
            if a.norm() > gk + 1e-12 * gk.max(1.0) {
                return Err(NetError::DominationViolated { alpha, k });
            }
        }
        Ok(())
    };

    let eval_head = |alpha: u64| -> Vec<Complex64> {
        (1..=k0).map(|k| family.eval(alpha, k)).collect()
    };

    let mut alpha = 1u64;
    let mut prev = eval_head(alpha);
    check_domination(alpha, &prev)?;
    let mut stable_runs = 0usize;
    for _ in 0..60 {
        let next_alpha = alpha.saturating_mul(2);
        let next = eval_head(next_alpha);
        check_domination(next_alpha, &next)?;
        let stabilized = (0..k0).all(|idx| {
            let k = idx + 1;
            (next[idx] - prev[idx]).norm() < tol / 2f64.powi(k as i32 + 1)
        });
        if stabilized {
            stable_runs += 1;
            if stable_runs >= 2 {
                let sum: Complex64 = next.iter().sum();
                return Ok(sum);
            }
        } else {
            stable_runs = 0;
        }
        alpha = next_alpha;
        prev = next;
    }
    Err(NetError::HeadNotStabilized)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abs_dist(a: &f64, b: &f64) -> f64 {
        (a - b).abs()
    }

    #[test]
    fn join_on_rank_chain_is_max() {
        let i = DirectedIndex::rank(3);
        let j = DirectedIndex::rank(5);
        let k = join(&i, &j).unwrap();
        assert!(matches!(k.payload, IndexPayload::Rank(5)));
        assert!(i.leq(&k).unwrap() && j.leq(&k).unwrap());
    }

    #[test]
    fn join_on_seminorm_sets_is_union() {
        let i = DirectedIndex::seminorm_set([1]);
        let j = DirectedIndex::seminorm_set([2]);
        let k = join(&i, &j).unwrap();
        match &k.payload {
            IndexPayload::SeminormSet(s) => {
                assert_eq!(s.iter().copied().collect::<Vec<_>>(), vec![1, 2])
            }
            _ => panic!("wrong payload"),
        }
        assert!(i.leq(&k).unwrap() && j.leq(&k).unwrap());
    }

    #[test]
    fn join_on_subspaces_bounds_dimension() {
        // Oracle: Gram-Schmidt on concatenated frames with a rank check.
        let f = DirectedIndex::subspace(&[vec![1.0, 0.0, 0.0]]).unwrap();
        let g = DirectedIndex::subspace(&[vec![1.0, 1.0, 0.0]]).unwrap();
        let k = join(&f, &g).unwrap();
        assert_eq!(k.rank, 2);
        assert!(f.leq(&k).unwrap() && g.leq(&k).unwrap());

        // Overlapping spans do not inflate the dimension.
        let h = DirectedIndex::subspace(&[vec![2.0, 0.0, 0.0]]).unwrap();
        let k2 = join(&f, &h).unwrap();
        assert_eq!(k2.rank, 1);
    }

    #[test]
    fn join_idempotent_on_comparable_pairs() {
        let i = DirectedIndex::seminorm_set([1, 2]);
        let j = DirectedIndex::seminorm_set([1, 2, 5]);
        assert!(i.leq(&j).unwrap());
        let k = join(&i, &j).unwrap();
        assert!(k.leq(&j).unwrap() && j.leq(&k).unwrap());
    }

    #[test]
    fn incompatible_index_sets_error() {
        let i = DirectedIndex::rank(1);
        let j = DirectedIndex::seminorm_set([1]);
        assert!(join(&i, &j).is_err());
        assert!(i.leq(&j).is_err());
    }

    #[test]
    fn probe_null_sequence_converges() {
        let net = Net::new(|i: &DirectedIndex| match i.payload {
            IndexPayload::Rank(n) => 1.0 / n as f64,
            _ => unreachable!(),
        });
        let schedule: Vec<_> = (1..=100).map(DirectedIndex::rank).collect();
        let report =
            probe_convergence(&net, &schedule, abs_dist, &ProbeOptions::new(1e-1, 10.0)).unwrap();
        assert_eq!(report.verdict, Verdict::Converged);
        assert!(report.limit.unwrap().abs() < 1e-1);
        assert!(report.oscillation <= 1e-1);
    }

    #[test]
    fn probe_constant_net() {
        let net = Net::new(|_: &DirectedIndex| 7.0);
        let schedule: Vec<_> = (1..=10).map(DirectedIndex::rank).collect();
        let report =
            probe_convergence(&net, &schedule, abs_dist, &ProbeOptions::new(1e-9, 1.0)).unwrap();
        assert_eq!(report.verdict, Verdict::Converged);
        assert_eq!(report.limit.unwrap(), 7.0);
        assert_eq!(report.oscillation, 0.0);
    }

    #[test]
    fn probe_odd_harmonic_diverges_with_witness() {
        // Oracle: partial sums of the odd harmonic series exceed any bound.
        let net = Net::new(|i: &DirectedIndex| match i.payload {
            IndexPayload::Rank(n) => (1..=n).filter(|k| k % 2 == 1).map(|k| 1.0 / k as f64).sum(),
            _ => unreachable!(),
        });
        let schedule: Vec<_> = (1..=200).map(DirectedIndex::rank).collect();
        let report =
            probe_convergence(&net, &schedule, abs_dist, &ProbeOptions::new(1e-3, 1.0)).unwrap();
        assert_eq!(report.verdict, Verdict::Diverged);
        let ((r1, v1), (r2, v2)) = report.witness.unwrap();
        assert!(r1 < r2);
        assert!((v1 - v2).abs() > 1.0);
    }

    #[test]
    fn probe_rejects_non_monotone_schedule() {
        let net = Net::new(|_: &DirectedIndex| 0.0);
        let schedule = vec![
            DirectedIndex::rank(1),
            DirectedIndex::rank(5),
            DirectedIndex::rank(3),
        ];
        let err =
            probe_convergence(&net, &schedule, abs_dist, &ProbeOptions::new(1e-3, 1.0)).unwrap_err();
        assert!(matches!(err, NetError::NonMonotoneSchedule(2)));
    }

    #[test]
    fn probe_requires_three_samples() {
        let net = Net::new(|_: &DirectedIndex| 0.0);
        let schedule = vec![DirectedIndex::rank(1), DirectedIndex::rank(2)];
        assert!(matches!(
            probe_convergence(&net, &schedule, abs_dist, &ProbeOptions::new(1e-3, 1.0)),
            Err(NetError::ScheduleTooShort { .. })
        ));
    }

    #[test]
    fn dominated_sum_geometric_family() {
        // a_(alpha,k) = (1 + 1/alpha) 2^-k, dominated by 2^(-k+1); limit 1.
        let family = SequenceNet::new(|alpha, k| {
            Complex64::new((1.0 + 1.0 / alpha as f64) * 0.5f64.powi(k as i32), 0.0)
        });
        let g = Dominator::new(SeqExpr::Scaled(
            2.0,
            Box::new(SeqExpr::GeometricPow { base: 0.5 }),
        ));
        let s = dominated_net_sum(&family, &g, 1e-8).unwrap();
        assert!((s.re - 1.0).abs() < 1e-8, "got {}", s.re);
    }

    #[test]
    fn dominated_sum_zero_family() {
        let family = SequenceNet::new(|_, _| Complex64::new(0.0, 0.0));
        let g = Dominator::new(SeqExpr::GeometricPow { base: 0.5 });
        let s = dominated_net_sum(&family, &g, 1e-10).unwrap();
        assert_eq!(s.norm(), 0.0);
    }

    #[test]
    fn dominated_sum_vanishing_family() {
        // a_(alpha,k) = 2^-k * k/(k+alpha) -> 0 pointwise.
        let family = SequenceNet::new(|alpha, k| {
            Complex64::new(
                0.5f64.powi(k as i32) * k as f64 / (k as f64 + alpha as f64),
                0.0,
            )
        });
        let g = Dominator::new(SeqExpr::GeometricPow { base: 0.5 });
        let s = dominated_net_sum(&family, &g, 1e-8).unwrap();
        assert!(s.norm() < 1e-8, "got {}", s.norm());
    }

    #[test]
    fn dominated_sum_detects_violation() {
        let family = SequenceNet::new(|alpha, k| {
            if k == 3 {
                Complex64::new(0.125 * (1.0 + alpha as f64), 0.0)
            } else {
                Complex64::new(0.5f64.powi(k as i32), 0.0)
            }
        });
        let g = Dominator::new(SeqExpr::GeometricPow { base: 0.5 });
        match dominated_net_sum(&family, &g, 1e-6) {
            Err(NetError::DominationViolated { k: 3, .. }) => {}
            other => panic!("expected domination violation at k = 3, got {other:?}"),
        }
    }

    #[test]
    fn dominated_sum_requires_tail_bound() {
        let family = SequenceNet::new(|_, k| Complex64::new(1.0 / (k as f64), 0.0));
        // Harmonic dominator: no finite tail bound.
        let g = Dominator::new(SeqExpr::InversePower { p: 1.0, offset: 0 });
        assert!(matches!(
            dominated_net_sum(&family, &g, 1e-6),
            Err(NetError::TailUnavailable)
        ));
    }
}
