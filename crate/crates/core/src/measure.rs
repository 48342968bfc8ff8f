//! Measure spaces, measurable vector-valued functions and simple functions.
//!
//! Two kinds of space are supported: countable discrete spaces whose weights
//! come from a closed-form sequence (so tails are boundable), and `[0,1]`
//! with Lebesgue measure. Measurable sets are finite index sets, complements
//! of finite index sets, or finite unions of intervals; nothing here needs a
//! full sigma-algebra engine.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::lcspace::LcsVector;
use crate::seq::SeqExpr;

#[derive(Debug, Error)]
pub enum MeasureError {
    #[error("malformed set descriptor: {0}")]
    BadSet(String),
    #[error("set descriptor kind does not match the measure space kind")]
    KindMismatch,
    #[error("discrete weights must be real and nonnegative")]
    BadWeights,
    #[error("tolerance must be positive and finite")]
    BadTolerance,
    #[error("integral tail not boundable: possibly infinite")]
    PossiblyInfinite,
    #[error("refinement budget exhausted before reaching the tolerance")]
    BudgetExceeded,
    #[error("simple function atom has infinite measure")]
    InfiniteAtom,
}

/// Point of a measure space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Point {
    /// 1-based index into a discrete space.
    Index(u64),
    /// Point of `[0,1]`.
    Real(f64),
}

/// Measurable set descriptor.
#[derive(Clone, Debug, PartialEq)]
pub enum SetDescriptor {
    /// Finite set of indices.
    Indices(BTreeSet<u64>),
    /// Whole discrete index set.
    AllIndices,
    /// Discrete complement of a finite index set.
    IndicesComplement(BTreeSet<u64>),
    /// Finite union of closed intervals inside `[0,1]`.
    Intervals(Vec<(f64, f64)>),
}

impl SetDescriptor {
    pub fn indices<I: IntoIterator<Item = u64>>(items: I) -> Self {
        SetDescriptor::Indices(items.into_iter().collect())
    }

    pub fn interval(a: f64, b: f64) -> Self {
        SetDescriptor::Intervals(vec![(a, b)])
    }

    pub fn contains(&self, p: &Point) -> bool {
        match (self, p) {
            (SetDescriptor::Indices(s), Point::Index(j)) => s.contains(j),
            (SetDescriptor::AllIndices, Point::Index(_)) => true,
            (SetDescriptor::IndicesComplement(s), Point::Index(j)) => !s.contains(j),
            (SetDescriptor::Intervals(iv), Point::Real(x)) => {
                iv.iter().any(|(a, b)| *a <= *x && *x <= *b)
            }
            _ => false,
        }
    }

    fn validate_intervals(iv: &[(f64, f64)]) -> Result<(), MeasureError> {
        for (a, b) in iv {
            if !a.is_finite() || !b.is_finite() || a > b || *a < 0.0 || *b > 1.0 {
                return Err(MeasureError::BadSet(format!("interval [{a}, {b}]")));
            }
        }
        Ok(())
    }

    /// Merges overlapping intervals; zero-length pieces are kept out.
    fn canonical_intervals(iv: &[(f64, f64)]) -> Vec<(f64, f64)> {
        let mut sorted: Vec<(f64, f64)> = iv.iter().copied().filter(|(a, b)| b > a).collect();
        sorted.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let mut out: Vec<(f64, f64)> = Vec::new();
        for (a, b) in sorted {
            match out.last_mut() {
                Some((_, pb)) if a <= *pb => *pb = pb.max(b),
                _ => out.push((a, b)),
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Measure {
    Finite(f64),
    Infinite,
}

impl Measure {
    pub fn finite(self) -> Option<f64> {
        match self {
            Measure::Finite(x) => Some(x),
            Measure::Infinite => None,
        }
    }
}

// ---------------------------------------------------------------------------
// Measure spaces
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub enum MeasureSpace {
    /// Weights `w_j = weights(j)`, a nonnegative real sequence.
    Discrete { weights: SeqExpr },
    /// Lebesgue measure on `[0,1]`, refined through nested dyadic partitions.
    Interval01,
}

impl MeasureSpace {
    pub fn discrete(weights: SeqExpr) -> Result<Self, MeasureError> {
        if !weights.is_real() {
            return Err(MeasureError::BadWeights);
        }
        for j in 1..=256u64 {
            if weights.value(j).re < 0.0 {
                return Err(MeasureError::BadWeights);
            }
        }
        Ok(MeasureSpace::Discrete { weights })
    }

    /// Finite-support discrete space with explicit weights.
    pub fn discrete_finite(weights: &[f64]) -> Result<Self, MeasureError> {
        let head = weights
            .iter()
            .map(|w| num_complex::Complex64::new(*w, 0.0))
            .collect();
        Self::discrete(SeqExpr::List {
            head,
            tail: Box::new(SeqExpr::zero()),
        })
    }

    pub fn weight(&self, j: u64) -> f64 {
        match self {
            MeasureSpace::Discrete { weights } => weights.value(j).re,
            MeasureSpace::Interval01 => 0.0,
        }
    }

    /// Bracket for the total weight beyond index `j0`.
    pub fn weight_tail_bracket(&self, j0: u64) -> Option<(f64, f64)> {
        match self {
            MeasureSpace::Discrete { weights } => weights.abs_tail_sum_bracket(j0),
            MeasureSpace::Interval01 => Some((0.0, 0.0)),
        }
    }

    pub fn total(&self) -> Measure {
        match self {
            MeasureSpace::Discrete { .. } => measure_of(self, &SetDescriptor::AllIndices)
                .expect("AllIndices is valid on discrete spaces"),
            MeasureSpace::Interval01 => Measure::Finite(1.0),
        }
    }

    pub fn is_discrete(&self) -> bool {
        matches!(self, MeasureSpace::Discrete { .. })
    }
}

/// Measure of a set. Exact for finite index sets and finite interval
/// unions; tail-corrected (bracket midpoint) for full discrete spaces.
pub fn measure_of(space: &MeasureSpace, set: &SetDescriptor) -> Result<Measure, MeasureError> {
    match (space, set) {
        (MeasureSpace::Discrete { .. }, SetDescriptor::Indices(s)) => {
            Ok(Measure::Finite(s.iter().map(|j| space.weight(*j)).sum()))
        }
        (MeasureSpace::Discrete { weights }, SetDescriptor::AllIndices) => {
            let head_len = 64u64;
            let head: f64 = (1..=head_len).map(|j| weights.value(j).re).sum();
            match weights.abs_tail_sum_bracket(head_len) {
                Some((lo, hi)) => Ok(Measure::Finite(head + 0.5 * (lo + hi))),
                // In this grammar a nonnegative sequence without a finite
                // tail bound has a divergent sum.
                None => Ok(Measure::Infinite),
            }
        }
        (MeasureSpace::Discrete { .. }, SetDescriptor::IndicesComplement(excl)) => {
            match measure_of(space, &SetDescriptor::AllIndices)? {
                Measure::Infinite => Ok(Measure::Infinite),
                Measure::Finite(total) => {
                    let removed: f64 = excl.iter().map(|j| space.weight(*j)).sum();
                    Ok(Measure::Finite((total - removed).max(0.0)))
                }
            }
        }
        (MeasureSpace::Interval01, SetDescriptor::Intervals(iv)) => {
            SetDescriptor::validate_intervals(iv)?;
            let canon = SetDescriptor::canonical_intervals(iv);
            Ok(Measure::Finite(canon.iter().map(|(a, b)| b - a).sum()))
        }
        _ => Err(MeasureError::KindMismatch),
    }
}

// ---------------------------------------------------------------------------
// Scalar integration
// ---------------------------------------------------------------------------

/// Nonnegative scalar integrand with the declarations that make its
/// integral computable: piecewise-continuity breakpoints on `[0,1]`, an
/// optional tail sup bound on discrete spaces, and an optional support set.
pub struct ScalarFn {
    eval: Box<dyn Fn(&Point) -> f64 + Send + Sync>,
    pub pieces: Vec<f64>,
    tail_sup: Option<Box<dyn Fn(u64) -> Option<f64> + Send + Sync>>,
    pub support: Option<SetDescriptor>,
}

impl ScalarFn {
    pub fn new(eval: impl Fn(&Point) -> f64 + Send + Sync + 'static) -> Self {
        ScalarFn {
            eval: Box::new(eval),
            pieces: Vec::new(),
            tail_sup: None,
            support: None,
        }
    }

    pub fn with_pieces(mut self, pieces: Vec<f64>) -> Self {
        self.pieces = pieces;
        self
    }

    /// `f(j0)` must bound `sup_{j > j0} g(j)`.
    pub fn with_tail_sup(
        mut self,
        f: impl Fn(u64) -> Option<f64> + Send + Sync + 'static,
    ) -> Self {
        self.tail_sup = Some(Box::new(f));
        self
    }

    pub fn with_support(mut self, support: SetDescriptor) -> Self {
        self.support = Some(support);
        self
    }

    pub fn eval(&self, p: &Point) -> f64 {
        match &self.support {
            Some(s) if !s.contains(p) => 0.0,
            _ => (self.eval)(p),
        }
    }

    fn tail_sup(&self, j0: u64) -> Option<f64> {
        self.tail_sup.as_ref().and_then(|f| f(j0))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ScalarIntegral {
    Finite(f64),
    Divergent,
}

impl ScalarIntegral {
    pub fn finite(self) -> Option<f64> {
        match self {
            ScalarIntegral::Finite(x) => Some(x),
            ScalarIntegral::Divergent => None,
        }
    }
}

const DISCRETE_WINDOW_CAP: u64 = 1 << 21;

/// Lebesgue integral of a nonnegative scalar function, within `tol`.
///
/// Discrete spaces use dominated tail bounds and report divergence when
/// dyadic window increments refuse to decay; `[0,1]` uses adaptive Simpson
/// refinement over the declared pieces.
pub fn scalar_integral(
    space: &MeasureSpace,
    g: &ScalarFn,
    tol: f64,
) -> Result<ScalarIntegral, MeasureError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(MeasureError::BadTolerance);
    }
    match space {
        MeasureSpace::Discrete { .. } => discrete_integral(space, g, tol),
        MeasureSpace::Interval01 => interval_integral(g, tol).map(ScalarIntegral::Finite),
    }
}

fn discrete_integral(
    space: &MeasureSpace,
    g: &ScalarFn,
    tol: f64,
) -> Result<ScalarIntegral, MeasureError> {
    // Finite support: exact sum.
    if let Some(SetDescriptor::Indices(s)) = &g.support {
        let sum = s
            .iter()
            .map(|j| space.weight(*j) * g.eval(&Point::Index(*j)))
            .sum();
        return Ok(ScalarIntegral::Finite(sum));
    }
    // Zero weight tail and explicit head: exact over the head.
    if let Some((_, hi)) = space.weight_tail_bracket(0) {
        let _ = hi;
    }

    let mut window: u64 = 64;
    let mut partial: f64 = (1..=window)
        .map(|j| space.weight(j) * g.eval(&Point::Index(j)))
        .sum();
    let mut increments: Vec<f64> = Vec::new();
    loop {
        // Try to certify the tail.
        if let Some((_, w_hi)) = space.weight_tail_bracket(window) {
            if w_hi == 0.0 {
                return Ok(ScalarIntegral::Finite(partial));
            }
            if let Some(b) = g.tail_sup(window) {
                let tail = w_hi * b;
                if tail < tol {
                    return Ok(ScalarIntegral::Finite(partial + 0.5 * tail));
                }
            }
        }
        if window >= DISCRETE_WINDOW_CAP {
            return Err(MeasureError::PossiblyInfinite);
        }
        let next = window * 2;
        let inc: f64 = (window + 1..=next)
            .map(|j| space.weight(j) * g.eval(&Point::Index(j)))
            .sum();
        partial += inc;
        increments.push(inc);
        window = next;
        // Divergence detector: sustained non-decaying dyadic increments.
        let floor = tol.max(1e-9);
        if increments.len() >= 6 {
            let run = &increments[increments.len() - 6..];
            if run.iter().all(|x| *x > floor) && run[5] > 0.7 * run[0] {
                return Ok(ScalarIntegral::Divergent);
            }
        }
    }
}

fn simpson(g: &ScalarFn, a: f64, m: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    let _ = (g, m);
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

fn adaptive_simpson(
    g: &ScalarFn,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    evals: &mut u64,
) -> Result<f64, MeasureError> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = g.eval(&Point::Real(lm));
    let frm = g.eval(&Point::Real(rm));
    *evals += 2;
    if *evals > 4_000_000 {
        return Err(MeasureError::BudgetExceeded);
    }
    let left = simpson(g, a, lm, m, fa, flm, fm);
    let right = simpson(g, m, rm, b, fm, frm, fb);
    let err = left + right - whole;
    if depth == 0 {
        return Err(MeasureError::BudgetExceeded);
    }
    if err.abs() <= 15.0 * tol {
        return Ok(left + right + err / 15.0);
    }
    let l = adaptive_simpson(g, a, m, fa, flm, fm, left, tol / 2.0, depth - 1, evals)?;
    let r = adaptive_simpson(g, m, b, fm, frm, fb, right, tol / 2.0, depth - 1, evals)?;
    Ok(l + r)
}

fn interval_integral(g: &ScalarFn, tol: f64) -> Result<f64, MeasureError> {
    // Breakpoints: declared pieces, plus support-interval endpoints.
    let mut cuts: Vec<f64> = vec![0.0, 1.0];
    cuts.extend(g.pieces.iter().copied().filter(|x| 0.0 < *x && *x < 1.0));
    if let Some(SetDescriptor::Intervals(iv)) = &g.support {
        for (a, b) in iv {
            for x in [a, b] {
                if 0.0 < *x && *x < 1.0 {
                    cuts.push(*x);
                }
            }
        }
    }
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    cuts.dedup();

    let n_pieces = (cuts.len() - 1) as f64;
    let mut total = 0.0;
    let mut evals = 0u64;
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b - a < 1e-15 {
            continue;
        }
        let m = 0.5 * (a + b);
        let fa = g.eval(&Point::Real(a));
        let fm = g.eval(&Point::Real(m));
        let fb = g.eval(&Point::Real(b));
        evals += 3;
        let whole = simpson(g, a, m, b, fa, fm, fb);
        total += adaptive_simpson(
            g,
            a,
            b,
            fa,
            fm,
            fb,
            whole,
            tol / (2.0 * n_pieces),
            40,
            &mut evals,
        )?;
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// Simple functions
// ---------------------------------------------------------------------------

/// `s = Σ_j 1_(A_j) v_j` with finite-measure sets. Overlapping atoms add;
/// the canonical form has pairwise disjoint sets.
#[derive(Clone, Debug, PartialEq)]
pub struct SimpleFunction {
    pub atoms: Vec<(SetDescriptor, LcsVector)>,
}

impl SimpleFunction {
    pub fn new(atoms: Vec<(SetDescriptor, LcsVector)>) -> Self {
        SimpleFunction { atoms }
    }

    pub fn empty() -> Self {
        SimpleFunction { atoms: Vec::new() }
    }

    pub fn eval(&self, p: &Point) -> LcsVector {
        let mut acc = LcsVector::zero();
        for (set, v) in &self.atoms {
            if set.contains(p) {
                acc = acc.add(v);
            }
        }
        acc
    }

    pub fn is_canonical(&self, space: &MeasureSpace) -> bool {
        match space {
            MeasureSpace::Discrete { .. } => {
                for i in 0..self.atoms.len() {
                    for j in i + 1..self.atoms.len() {
                        if discrete_sets_overlap(&self.atoms[i].0, &self.atoms[j].0) {
                            return false;
                        }
                    }
                }
                true
            }
            MeasureSpace::Interval01 => {
                for i in 0..self.atoms.len() {
                    for j in i + 1..self.atoms.len() {
                        if intervals_overlap_positively(&self.atoms[i].0, &self.atoms[j].0) {
                            return false;
                        }
                    }
                }
                true
            }
        }
    }

    /// Rewrites the function with pairwise disjoint sets; the pointwise
    /// values are preserved exactly up to null sets. Errors when an atom of
    /// the canonical form would have infinite measure.
    pub fn canonicalize(&self, space: &MeasureSpace) -> Result<SimpleFunction, MeasureError> {
        match space {
            MeasureSpace::Discrete { .. } => self.canonicalize_discrete(space),
            MeasureSpace::Interval01 => self.canonicalize_interval(),
        }
    }

    fn canonicalize_discrete(&self, space: &MeasureSpace) -> Result<SimpleFunction, MeasureError> {
        let mut explicit: BTreeSet<u64> = BTreeSet::new();
        let mut has_cofinite = false;
        for (set, _) in &self.atoms {
            match set {
                SetDescriptor::Indices(s) => explicit.extend(s.iter().copied()),
                SetDescriptor::IndicesComplement(s) => {
                    explicit.extend(s.iter().copied());
                    has_cofinite = true;
                }
                SetDescriptor::AllIndices => has_cofinite = true,
                SetDescriptor::Intervals(_) => return Err(MeasureError::KindMismatch),
            }
        }
        // Value away from every explicit index.
        let base = if has_cofinite {
            let mut acc = LcsVector::zero();
            for (set, v) in &self.atoms {
                match set {
                    SetDescriptor::AllIndices => acc = acc.add(v),
                    SetDescriptor::IndicesComplement(_) => acc = acc.add(v),
                    _ => {}
                }
            }
            // Complement atoms exclude only explicit indices, so any point
            // outside `explicit` is in all of them.
            Some(acc)
        } else {
            None
        };

        let mut groups: Vec<(LcsVector, BTreeSet<u64>)> = Vec::new();
        let mut cofinite_exceptions: BTreeSet<u64> = BTreeSet::new();
        for j in &explicit {
            let v = self.eval(&Point::Index(*j));
            match &base {
                Some(b) if v == *b => continue, // absorbed into the cofinite atom
                _ => {}
            }
            if base.is_some() {
                cofinite_exceptions.insert(*j);
            }
            if v.is_zero() && base.is_none() {
                continue;
            }
            match groups.iter_mut().find(|(gv, _)| *gv == v) {
                Some((_, set)) => {
                    set.insert(*j);
                }
                None => {
                    let mut s = BTreeSet::new();
                    s.insert(*j);
                    groups.push((v, s));
                }
            }
        }

        let mut atoms: Vec<(SetDescriptor, LcsVector)> = Vec::new();
        if let Some(b) = base {
            if !b.is_zero() {
                let set = SetDescriptor::IndicesComplement(if cofinite_exceptions.is_empty() {
                    // Canonical cofinite atom still excludes absorbed indices
                    // so re-canonicalization is stable.
                    BTreeSet::new()
                } else {
                    cofinite_exceptions.clone()
                });
                match measure_of(space, &set)? {
                    Measure::Infinite => return Err(MeasureError::InfiniteAtom),
                    Measure::Finite(_) => atoms.push((set, b)),
                }
            }
        }
        // Drop zero groups that were only kept as exceptions.
        for (v, s) in groups {
            if !v.is_zero() {
                atoms.push((SetDescriptor::Indices(s), v));
            }
        }
        atoms.sort_by_key(|(set, _)| match set {
            SetDescriptor::IndicesComplement(_) => (0u8, 0u64),
            SetDescriptor::Indices(s) => (1u8, s.iter().next().copied().unwrap_or(0)),
            _ => (2u8, 0),
        });
        Ok(SimpleFunction { atoms })
    }

    fn canonicalize_interval(&self) -> Result<SimpleFunction, MeasureError> {
        let mut cuts: Vec<f64> = vec![0.0, 1.0];
        for (set, _) in &self.atoms {
            match set {
                SetDescriptor::Intervals(iv) => {
                    SetDescriptor::validate_intervals(iv)?;
                    for (a, b) in iv {
                        cuts.push(*a);
                        cuts.push(*b);
                    }
                }
                _ => return Err(MeasureError::KindMismatch),
            }
        }
        cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
        cuts.dedup();

        // Value on each elementary segment, then merge adjacent equal runs.
        let mut runs: Vec<((f64, f64), LcsVector)> = Vec::new();
        for w in cuts.windows(2) {
            let (a, b) = (w[0], w[1]);
            if b - a <= 0.0 {
                continue;
            }
            let v = self.eval(&Point::Real(0.5 * (a + b)));
            match runs.last_mut() {
                Some(((_, pb), pv)) if *pb == a && *pv == v => *pb = b,
                _ => runs.push(((a, b), v)),
            }
        }

        let mut atoms: Vec<(SetDescriptor, LcsVector)> = Vec::new();
        for ((a, b), v) in runs {
            if v.is_zero() {
                continue;
            }
            match atoms.iter_mut().find(|(_, gv)| *gv == v) {
                Some((SetDescriptor::Intervals(iv), _)) => iv.push((a, b)),
                _ => atoms.push((SetDescriptor::Intervals(vec![(a, b)]), v)),
            }
        }
        atoms.sort_by(|(x, _), (y, _)| match (x, y) {
            (SetDescriptor::Intervals(a), SetDescriptor::Intervals(b)) => {
                a[0].partial_cmp(&b[0]).unwrap()
            }
            _ => std::cmp::Ordering::Equal,
        });
        Ok(SimpleFunction { atoms })
    }
}

fn discrete_sets_overlap(a: &SetDescriptor, b: &SetDescriptor) -> bool {
    match (a, b) {
        (SetDescriptor::Indices(x), SetDescriptor::Indices(y)) => {
            x.intersection(y).next().is_some()
        }
        (SetDescriptor::Indices(x), SetDescriptor::IndicesComplement(y))
        | (SetDescriptor::IndicesComplement(y), SetDescriptor::Indices(x)) => {
            x.iter().any(|j| !y.contains(j))
        }
        (SetDescriptor::Indices(x), SetDescriptor::AllIndices)
        | (SetDescriptor::AllIndices, SetDescriptor::Indices(x)) => !x.is_empty(),
        _ => true,
    }
}

fn intervals_overlap_positively(a: &SetDescriptor, b: &SetDescriptor) -> bool {
    match (a, b) {
        (SetDescriptor::Intervals(x), SetDescriptor::Intervals(y)) => {
            for (a1, b1) in x {
                for (a2, b2) in y {
                    if (b1.min(*b2) - a1.max(*a2)) > 1e-15 {
                        return true;
                    }
                }
            }
            false
        }
        _ => true,
    }
}

/// Vector-valued measurable function with the hints that keep integration
/// computable: piecewise breakpoints, per-seminorm support, sup bound, and
/// Lipschitz bound. Cheap to clone; the closures are shared.
#[derive(Clone)]
pub struct MeasurableFn {
    eval: std::sync::Arc<dyn Fn(&Point) -> LcsVector + Send + Sync>,
    pub pieces: Vec<f64>,
    support: Option<std::sync::Arc<dyn Fn(usize) -> SetDescriptor + Send + Sync>>,
    seminorm_bound: Option<std::sync::Arc<dyn Fn(usize) -> f64 + Send + Sync>>,
    lipschitz: Option<std::sync::Arc<dyn Fn(usize) -> f64 + Send + Sync>>,
}

impl MeasurableFn {
    pub fn new(eval: impl Fn(&Point) -> LcsVector + Send + Sync + 'static) -> Self {
        MeasurableFn {
            eval: std::sync::Arc::new(eval),
            pieces: Vec::new(),
            support: None,
            seminorm_bound: None,
            lipschitz: None,
        }
    }

    pub fn with_pieces(mut self, pieces: Vec<f64>) -> Self {
        self.pieces = pieces;
        self
    }

    /// Declares a region per seminorm index outside which `p_k(f) = 0`.
    pub fn with_support(
        mut self,
        f: impl Fn(usize) -> SetDescriptor + Send + Sync + 'static,
    ) -> Self {
        self.support = Some(std::sync::Arc::new(f));
        self
    }

    /// Declares `sup_x p_k(f(x)) <= bound(k)`.
    pub fn with_seminorm_bound(
        mut self,
        f: impl Fn(usize) -> f64 + Send + Sync + 'static,
    ) -> Self {
        self.seminorm_bound = Some(std::sync::Arc::new(f));
        self
    }

    /// Declares `p_k(f(x) - f(y)) <= lip(k) |x - y|` on `[0,1]`.
    pub fn with_lipschitz(mut self, f: impl Fn(usize) -> f64 + Send + Sync + 'static) -> Self {
        self.lipschitz = Some(std::sync::Arc::new(f));
        self
    }

    pub fn eval(&self, p: &Point) -> LcsVector {
        (self.eval)(p)
    }

    pub fn support(&self, k: usize) -> Option<SetDescriptor> {
        self.support.as_ref().map(|f| f(k))
    }

    pub fn seminorm_bound(&self, k: usize) -> Option<f64> {
        self.seminorm_bound.as_ref().map(|f| f(k))
    }

    pub fn lipschitz(&self, k: usize) -> Option<f64> {
        self.lipschitz.as_ref().map(|f| f(k))
    }
}
