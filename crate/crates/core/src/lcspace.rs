//! Concrete locally convex spaces given by directed countable seminorm
//! families, and the countable dense-set machinery behind separability.
//!
//! Four built-in spaces are provided:
//!
//! - `Euclidean(d)`: one seminorm, the Euclidean norm on the first `d`
//!   coordinates.
//! - `FrechetSequences`: `p_k(x) = max_{j<=k} |x_j|`, a countably infinite
//!   increasing family.
//! - `ContinuousOn01`: functions on `[0,1]` stored as sample tables with
//!   piecewise-linear interpolation; one seminorm, the sup norm of the
//!   interpolant.
//! - `WeightedL1(w)`: `p_k(x) = Σ_{j<=k} w_j |x_j|`.
//!
//! Families are stored pre-directed (increasing in `k`), so the seminorm
//! index set is a chain and `max(p_i, p_j) = p_max(i,j)` pointwise.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpaceError {
    #[error("unknown or malformed space descriptor: {0}")]
    BadDescriptor(String),
    #[error("dense set construction requires a nonempty point list")]
    EmptyImage,
    #[error("vectors built on incompatible grids or tails: {0}")]
    IncompatibleVectors(String),
}

// ---------------------------------------------------------------------------
// Vectors
// ---------------------------------------------------------------------------

/// Tail descriptor for the coordinates beyond the stored prefix.
#[derive(Clone, Debug, PartialEq)]
pub enum TailDescriptor {
    /// All further coordinates are zero.
    Zero,
    /// `|x_(m+i)| <= bound * ratio^i` with `0 <= ratio < 1`; seminorms charge
    /// the tail at this envelope.
    Geometric { ratio: f64, bound: f64 },
    /// The coordinates are samples of a function on the uniform grid of
    /// `[0,1]` (piecewise-linear interpolation); `lipschitz` bounds the slope
    /// of the underlying function for off-grid padding.
    FunctionTable { lipschitz: f64 },
}

/// Element of a concrete locally convex space: explicit coordinates plus a
/// tail descriptor.
#[derive(Clone, Debug, PartialEq)]
pub struct LcsVector {
    pub coords: Vec<f64>,
    pub tail: TailDescriptor,
}

impl LcsVector {
    pub fn zero() -> Self {
        LcsVector {
            coords: Vec::new(),
            tail: TailDescriptor::Zero,
        }
    }

    pub fn from_coords(coords: Vec<f64>) -> Self {
        LcsVector {
            coords,
            tail: TailDescriptor::Zero,
        }
    }

    /// Samples `f` on the uniform grid with `grid` points (grid >= 2) over
    /// `[0,1]`.
    pub fn from_function(f: impl Fn(f64) -> f64, grid: usize, lipschitz: f64) -> Self {
        let n = grid.max(2);
        let coords = (0..n)
            .map(|i| f(i as f64 / (n - 1) as f64))
            .collect();
        LcsVector {
            coords,
            tail: TailDescriptor::FunctionTable { lipschitz },
        }
    }

    pub fn coord(&self, j: usize) -> f64 {
        self.coords.get(j).copied().unwrap_or(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| *c == 0.0) && self.tail_bound_at(1) == 0.0
    }

    /// Envelope bound for `|x_(m+i)|`, `i >= 1`.
    fn tail_bound_at(&self, i: u64) -> f64 {
        match &self.tail {
            TailDescriptor::Zero | TailDescriptor::FunctionTable { .. } => 0.0,
            TailDescriptor::Geometric { ratio, bound } => bound * ratio.powi(i as i32),
        }
    }

    fn combine_tails(a: &TailDescriptor, b: &TailDescriptor) -> TailDescriptor {
        match (a, b) {
            (TailDescriptor::Zero, t) | (t, TailDescriptor::Zero) => t.clone(),
            (
                TailDescriptor::Geometric { ratio: r1, bound: b1 },
                TailDescriptor::Geometric { ratio: r2, bound: b2 },
            ) => TailDescriptor::Geometric {
                ratio: r1.max(*r2),
                bound: b1 + b2,
            },
            (
                TailDescriptor::FunctionTable { lipschitz: l1 },
                TailDescriptor::FunctionTable { lipschitz: l2 },
            ) => TailDescriptor::FunctionTable { lipschitz: l1 + l2 },
            _ => TailDescriptor::Zero,
        }
    }

    pub fn add(&self, other: &LcsVector) -> LcsVector {
        let n = self.coords.len().max(other.coords.len());
        let coords = (0..n).map(|j| self.coord(j) + other.coord(j)).collect();
        LcsVector {
            coords,
            tail: Self::combine_tails(&self.tail, &other.tail),
        }
    }

    pub fn sub(&self, other: &LcsVector) -> LcsVector {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, c: f64) -> LcsVector {
        let tail = match &self.tail {
            TailDescriptor::Zero => TailDescriptor::Zero,
            TailDescriptor::Geometric { ratio, bound } => TailDescriptor::Geometric {
                ratio: *ratio,
                bound: bound * c.abs(),
            },
            TailDescriptor::FunctionTable { lipschitz } => TailDescriptor::FunctionTable {
                lipschitz: lipschitz * c.abs(),
            },
        };
        LcsVector {
            coords: self.coords.iter().map(|x| x * c).collect(),
            tail,
        }
    }

    /// Off-grid padding for function tables: `L * h / 2` where `h` is the
    /// grid step. Sup norms of an underlying Lipschitz function are bounded
    /// by the table sup plus this padding.
    pub fn sup_padding(&self) -> f64 {
        match &self.tail {
            TailDescriptor::FunctionTable { lipschitz } if self.coords.len() >= 2 => {
                lipschitz / (2.0 * (self.coords.len() - 1) as f64)
            }
            _ => 0.0,
        }
    }
}

// ---------------------------------------------------------------------------
// Seminorm families
// ---------------------------------------------------------------------------

/// Descriptor for the built-in spaces.
#[derive(Clone, Debug, PartialEq)]
pub enum SpaceSpec {
    Euclidean { dim: usize },
    FrechetSequences,
    ContinuousOn01,
    WeightedL1 { weights: Vec<f64> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeminormCount {
    Finite(usize),
    CountablyInfinite,
}

/// A directed countable family of seminorms on one of the built-in spaces.
/// `eval(k, v)` is increasing in `k`; indices are 1-based and clamp to the
/// family size when finite.
#[derive(Clone, Debug)]
pub struct SeminormFamily {
    pub spec: SpaceSpec,
}

impl SeminormFamily {
    pub fn count(&self) -> SeminormCount {
        match &self.spec {
            SpaceSpec::Euclidean { .. } | SpaceSpec::ContinuousOn01 => SeminormCount::Finite(1),
            SpaceSpec::FrechetSequences => SeminormCount::CountablyInfinite,
            SpaceSpec::WeightedL1 { weights } => SeminormCount::Finite(weights.len()),
        }
    }

    fn clamp_index(&self, k: usize) -> usize {
        let k = k.max(1);
        match self.count() {
            SeminormCount::Finite(n) => k.min(n),
            SeminormCount::CountablyInfinite => k,
        }
    }

    /// `p_k(v)`. The tail descriptor is charged at its envelope, so the
    /// result is an upper evaluation that still satisfies the seminorm
    /// axioms on the representation.
    pub fn eval(&self, k: usize, v: &LcsVector) -> f64 {
        let k = self.clamp_index(k);
        let m = v.coords.len();
        match &self.spec {
            SpaceSpec::Euclidean { dim } => {
                let d = *dim;
                (0..d.min(m)).map(|j| v.coords[j] * v.coords[j]).sum::<f64>().sqrt()
            }
            SpaceSpec::FrechetSequences => {
                let mut best = 0.0f64;
                for j in 0..k.min(m) {
                    best = best.max(v.coords[j].abs());
                }
                if k > m {
                    for j in m..k {
                        best = best.max(v.tail_bound_at((j - m + 1) as u64));
                    }
                }
                best
            }
            SpaceSpec::ContinuousOn01 => {
                v.coords.iter().fold(0.0f64, |acc, x| acc.max(x.abs()))
            }
            SpaceSpec::WeightedL1 { weights } => {
                let mut s = 0.0;
                for (j, w) in weights.iter().enumerate().take(k) {
                    let x = if j < m {
                        v.coords[j].abs()
                    } else {
                        v.tail_bound_at((j - m + 1) as u64)
                    };
                    s += w * x;
                }
                s
            }
        }
    }

    /// Distance in `p_k`.
    pub fn dist(&self, k: usize, a: &LcsVector, b: &LcsVector) -> f64 {
        self.eval(k, &a.sub(b))
    }

    /// Top stored index used when a single dominating seminorm is wanted.
    pub fn top_index(&self, cap: usize) -> usize {
        match self.count() {
            SeminormCount::Finite(n) => n,
            SeminormCount::CountablyInfinite => cap.max(1),
        }
    }
}

/// Builds one of the built-in spaces, validating the descriptor.
pub fn make_space(spec: SpaceSpec) -> Result<SeminormFamily, SpaceError> {
    match &spec {
        SpaceSpec::Euclidean { dim } => {
            if *dim == 0 {
                return Err(SpaceError::BadDescriptor("Euclidean dim must be >= 1".into()));
            }
        }
        SpaceSpec::WeightedL1 { weights } => {
            if weights.is_empty() {
                return Err(SpaceError::BadDescriptor("WeightedL1 needs weights".into()));
            }
            if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
                return Err(SpaceError::BadDescriptor(
                    "WeightedL1 weights must be nonnegative and finite".into(),
                ));
            }
        }
        SpaceSpec::FrechetSequences | SpaceSpec::ContinuousOn01 => {}
    }
    Ok(SeminormFamily { spec })
}

// ---------------------------------------------------------------------------
// Countable dense sets
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    ImagePoints,
    RationalLattice,
}

enum DenseEnum {
    Cycle(Vec<LcsVector>),
    Lazy(Box<dyn Fn(usize) -> LcsVector + Send + Sync>),
}

/// Deterministic enumeration of a countable set of vectors.
pub struct CountableDenseSet {
    items: DenseEnum,
    pub provenance: Provenance,
}

impl CountableDenseSet {
    /// `n` is 1-based.
    pub fn enumerate(&self, n: usize) -> LcsVector {
        let n = n.max(1);
        match &self.items {
            DenseEnum::Cycle(points) => points[(n - 1) % points.len()].clone(),
            DenseEnum::Lazy(f) => f(n),
        }
    }

    /// Number of distinct points in one cycle, if finite.
    pub fn cycle_len(&self) -> Option<usize> {
        match &self.items {
            DenseEnum::Cycle(points) => Some(points.len()),
            DenseEnum::Lazy(_) => None,
        }
    }

    /// Lazy enumeration with image provenance; used for infinite discrete
    /// index sets where the image is enumerated point by point.
    pub fn from_enumeration(f: impl Fn(usize) -> LcsVector + Send + Sync + 'static) -> Self {
        CountableDenseSet {
            items: DenseEnum::Lazy(Box::new(f)),
            provenance: Provenance::ImagePoints,
        }
    }
}

/// Countable dense subset chosen inside the image: deduplicates the given
/// points in `p_k` and cycles them. Every enumerated point is one of the
/// inputs, so the enumeration lies inside the image's closure trivially.
pub fn dense_from_image(
    points: &[LcsVector],
    family: &SeminormFamily,
    k: usize,
) -> Result<CountableDenseSet, SpaceError> {
    if points.is_empty() {
        return Err(SpaceError::EmptyImage);
    }
    let mut distinct: Vec<LcsVector> = Vec::new();
    for p in points {
        if !distinct.iter().any(|q| family.dist(k, p, q) <= 1e-12) {
            distinct.push(p.clone());
        }
    }
    Ok(CountableDenseSet {
        items: DenseEnum::Cycle(distinct),
        provenance: Provenance::ImagePoints,
    })
}

/// Rational-lattice enumeration over a finite generator list: dyadic
/// combinations with growing resolution and range.
pub fn rational_lattice(generators: &[LcsVector]) -> Result<CountableDenseSet, SpaceError> {
    if generators.is_empty() {
        return Err(SpaceError::EmptyImage);
    }
    let gens = generators.to_vec();
    Ok(CountableDenseSet {
        items: DenseEnum::Lazy(Box::new(move |n| {
            // Level l enumerates coefficients in {-l..l} / 2^min(l,8) over
            // all generators, diagonally.
            let mut count = 0usize;
            for level in 1usize.. {
                let denom = 1 << level.min(8);
                let per_gen = 2 * level + 1;
                let total = per_gen.pow(gens.len() as u32);
                if count + total >= n {
                    let mut idx = n - count - 1;
                    let mut v = LcsVector::zero();
                    for g in &gens {
                        let c = (idx % per_gen) as i64 - level as i64;
                        idx /= per_gen;
                        v = v.add(&g.scale(c as f64 / denom as f64));
                    }
                    return v;
                }
                count += total;
            }
            unreachable!()
        })),
        provenance: Provenance::RationalLattice,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclidean_norm_345() {
        let fam = make_space(SpaceSpec::Euclidean { dim: 2 }).unwrap();
        let v = LcsVector::from_coords(vec![3.0, 4.0]);
        assert_eq!(fam.eval(1, &v), 5.0);
    }

    #[test]
    fn frechet_prefix_max() {
        let fam = make_space(SpaceSpec::FrechetSequences).unwrap();
        let v = LcsVector::from_coords(vec![1.0, -2.0, 0.5, 99.0]);
        assert_eq!(fam.eval(3, &v), 2.0);
        assert_eq!(fam.eval(4, &v), 99.0);
    }

    #[test]
    fn sup_norm_of_square_is_exact_on_grid() {
        // Oracle: sup of x^2 on [0,1] computed at the critical point x = 1,
        // which the grid contains; the table sup is exact there.
        let fam = make_space(SpaceSpec::ContinuousOn01).unwrap();
        let v = LcsVector::from_function(|x| x * x, 257, 2.0);
        assert!((fam.eval(1, &v) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn sup_padding_covers_off_grid_max() {
        // x(1-x) has its sup 0.25 at x = 1/2; with an even number of cells
        // the grid hits it, so force an odd grid that straddles the peak.
        let v = LcsVector::from_function(|x| x * (1.0 - x), 4, 1.0);
        let fam = make_space(SpaceSpec::ContinuousOn01).unwrap();
        let table_sup = fam.eval(1, &v);
        assert!(table_sup <= 0.25);
        assert!(table_sup + v.sup_padding() >= 0.25 - 1e-12);
    }

    #[test]
    fn weighted_l1_partial_sums() {
        let fam = make_space(SpaceSpec::WeightedL1 {
            weights: vec![1.0, 2.0, 3.0],
        })
        .unwrap();
        let v = LcsVector::from_coords(vec![1.0, -1.0, 1.0]);
        assert_eq!(fam.eval(1, &v), 1.0);
        assert_eq!(fam.eval(2, &v), 3.0);
        assert_eq!(fam.eval(3, &v), 6.0);
        // Index clamps to the family size.
        assert_eq!(fam.eval(9, &v), 6.0);
    }

    #[test]
    fn zero_vector_has_zero_seminorms() {
        let v = LcsVector::zero();
        for fam in [
            make_space(SpaceSpec::Euclidean { dim: 3 }).unwrap(),
            make_space(SpaceSpec::FrechetSequences).unwrap(),
            make_space(SpaceSpec::ContinuousOn01).unwrap(),
            make_space(SpaceSpec::WeightedL1 { weights: vec![1.0, 0.5] }).unwrap(),
        ] {
            for k in 1..=4 {
                assert_eq!(fam.eval(k, &v), 0.0);
            }
        }
    }

    #[test]
    fn geometric_tail_charged_by_frechet_seminorms() {
        let v = LcsVector {
            coords: vec![1.0],
            tail: TailDescriptor::Geometric { ratio: 0.5, bound: 1.0 },
        };
        let fam = make_space(SpaceSpec::FrechetSequences).unwrap();
        // p_3 sees coords[0] = 1 and tail envelopes 0.5, 0.25.
        assert_eq!(fam.eval(3, &v), 1.0);
        let w = v.scale(0.25);
        assert_eq!(fam.eval(3, &w), 0.25);
    }

    #[test]
    fn make_space_rejects_bad_descriptors() {
        assert!(make_space(SpaceSpec::Euclidean { dim: 0 }).is_err());
        assert!(make_space(SpaceSpec::WeightedL1 { weights: vec![] }).is_err());
        assert!(make_space(SpaceSpec::WeightedL1 { weights: vec![-1.0] }).is_err());
    }

    #[test]
    fn dense_from_finite_image_cycles() {
        let fam = make_space(SpaceSpec::Euclidean { dim: 2 }).unwrap();
        let pts = vec![
            LcsVector::from_coords(vec![1.0, 0.0]),
            LcsVector::from_coords(vec![0.0, 1.0]),
        ];
        let dense = dense_from_image(&pts, &fam, 1).unwrap();
        assert_eq!(dense.cycle_len(), Some(2));
        assert_eq!(dense.enumerate(1), pts[0]);
        assert_eq!(dense.enumerate(2), pts[1]);
        assert_eq!(dense.enumerate(3), pts[0]);
    }

    #[test]
    fn dense_from_singleton_is_constant() {
        let fam = make_space(SpaceSpec::Euclidean { dim: 1 }).unwrap();
        let pts = vec![LcsVector::from_coords(vec![42.0])];
        let dense = dense_from_image(&pts, &fam, 1).unwrap();
        for n in 1..5 {
            assert_eq!(dense.enumerate(n), pts[0]);
        }
    }

    #[test]
    fn dense_from_empty_image_errors() {
        let fam = make_space(SpaceSpec::Euclidean { dim: 1 }).unwrap();
        assert!(dense_from_image(&[], &fam, 1).is_err());
    }

    #[test]
    fn dense_circle_covering_radius() {
        // Oracle: brute-force nearest-neighbor over all samples.
        let fam = make_space(SpaceSpec::Euclidean { dim: 2 }).unwrap();
        let samples: Vec<LcsVector> = (0..1000)
            .map(|i| {
                let x = 2.0 * std::f64::consts::PI * i as f64 / 1000.0;
                LcsVector::from_coords(vec![x.cos(), x.sin()])
            })
            .collect();
        let dense = dense_from_image(&samples, &fam, 1).unwrap();
        let n_enum = dense.cycle_len().unwrap();
        let enumerated: Vec<LcsVector> = (1..=n_enum).map(|n| dense.enumerate(n)).collect();
        for s in &samples {
            let nearest = enumerated
                .iter()
                .map(|e| fam.dist(1, s, e))
                .fold(f64::INFINITY, f64::min);
            assert!(nearest <= 0.01, "covering radius exceeded: {nearest}");
        }
        // Containment in the image closure: enumerated points are inputs.
        for e in &enumerated {
            let nearest = samples
                .iter()
                .map(|s| fam.dist(1, s, e))
                .fold(f64::INFINITY, f64::min);
            assert!(nearest <= 1e-9);
        }
    }

    #[test]
    fn rational_lattice_is_deterministic_and_dense_on_segment() {
        let gen = vec![LcsVector::from_coords(vec![1.0])];
        let lat = rational_lattice(&gen).unwrap();
        let a = lat.enumerate(17);
        let b = lat.enumerate(17);
        assert_eq!(a, b);
        // Some enumerated point approaches 1/3.
        let fam = make_space(SpaceSpec::Euclidean { dim: 1 }).unwrap();
        let target = LcsVector::from_coords(vec![1.0 / 3.0]);
        let best = (1..=12000)
            .map(|n| fam.dist(1, &lat.enumerate(n), &target))
            .fold(f64::INFINITY, f64::min);
        assert!(best < 0.01, "lattice missed the target: {best}");
    }

    #[test]
    fn directedness_pointwise_max() {
        let fam = make_space(SpaceSpec::FrechetSequences).unwrap();
        let v = LcsVector::from_coords(vec![0.3, -1.5, 0.2, 2.0]);
        for (i, j) in [(1usize, 3usize), (2, 4), (3, 1)] {
            let lhs = fam.eval(i, &v).max(fam.eval(j, &v));
            let rhs = fam.eval(i.max(j), &v);
            assert_eq!(lhs, rhs);
        }
    }
}
