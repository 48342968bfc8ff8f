//! Closed-form scalar sequences with computable tail bounds.
//!
//! A [`SeqExpr`] describes a sequence `j ↦ a_j` (indices start at 1) in a
//! small closed-form grammar. Besides pointwise evaluation it supports
//! rigorous brackets for tail sums, which is what makes trace estimates,
//! infinite products and integrally-bounded checks terminate: a probe never
//! trusts a truncation it cannot bound.

use num_complex::Complex64;

/// Sequence grammar. Indices are 1-based throughout.
#[derive(Clone, Debug, PartialEq)]
pub enum SeqExpr {
    /// `c, c, c, ...`
    Const(Complex64),
    /// `base^j`
    GeometricPow { base: f64 },
    /// `1/(j + offset)^p`
    InversePower { p: f64, offset: u64 },
    /// `(-1)^(j+1)/(j + offset)^p`
    AlternatingInversePower { p: f64, offset: u64 },
    /// `1 - inner_j`
    OneMinus(Box<SeqExpr>),
    /// `c * inner_j`
    Scaled(f64, Box<SeqExpr>),
    /// Explicit head, then `tail` re-indexed from 1.
    List { head: Vec<Complex64>, tail: Box<SeqExpr> },
    /// Pointwise product.
    Product(Box<SeqExpr>, Box<SeqExpr>),
}

impl SeqExpr {
    pub fn zero() -> Self {
        SeqExpr::Const(Complex64::new(0.0, 0.0))
    }

    pub fn one() -> Self {
        SeqExpr::Const(Complex64::new(1.0, 0.0))
    }

    pub fn constant(c: f64) -> Self {
        SeqExpr::Const(Complex64::new(c, 0.0))
    }

    /// `a_j` for `j >= 1`.
    pub fn value(&self, j: u64) -> Complex64 {
        debug_assert!(j >= 1);
        match self {
            SeqExpr::Const(c) => *c,
            SeqExpr::GeometricPow { base } => Complex64::new(base.powi(j as i32), 0.0),
            SeqExpr::InversePower { p, offset } => {
                Complex64::new(((j + offset) as f64).powf(-p), 0.0)
            }
            SeqExpr::AlternatingInversePower { p, offset } => {
                let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
                Complex64::new(sign * ((j + offset) as f64).powf(-p), 0.0)
            }
            SeqExpr::OneMinus(inner) => Complex64::new(1.0, 0.0) - inner.value(j),
            SeqExpr::Scaled(c, inner) => inner.value(j) * *c,
            SeqExpr::List { head, tail } => {
                let m = head.len() as u64;
                if j <= m {
                    head[(j - 1) as usize]
                } else {
                    tail.value(j - m)
                }
            }
            SeqExpr::Product(a, b) => a.value(j) * b.value(j),
        }
    }

    pub fn is_real(&self) -> bool {
        match self {
            SeqExpr::Const(c) => c.im == 0.0,
            SeqExpr::GeometricPow { .. }
            | SeqExpr::InversePower { .. }
            | SeqExpr::AlternatingInversePower { .. } => true,
            SeqExpr::OneMinus(inner) | SeqExpr::Scaled(_, inner) => inner.is_real(),
            SeqExpr::List { head, tail } => head.iter().all(|c| c.im == 0.0) && tail.is_real(),
            SeqExpr::Product(a, b) => a.is_real() && b.is_real(),
        }
    }

    /// Upper bound for `sup_j |a_j|`; may be `f64::INFINITY`.
    pub fn sup_abs(&self) -> f64 {
        match self {
            SeqExpr::Const(c) => c.norm(),
            SeqExpr::GeometricPow { base } => {
                let b = base.abs();
                if b <= 1.0 {
                    b
                } else {
                    f64::INFINITY
                }
            }
            SeqExpr::InversePower { p, offset }
            | SeqExpr::AlternatingInversePower { p, offset } => {
                if *p >= 0.0 {
                    ((1 + offset) as f64).powf(-p)
                } else {
                    f64::INFINITY
                }
            }
            SeqExpr::OneMinus(inner) => 1.0 + inner.sup_abs(),
            SeqExpr::Scaled(c, inner) => c.abs() * inner.sup_abs(),
            SeqExpr::List { head, tail } => head
                .iter()
                .map(|c| c.norm())
                .fold(tail.sup_abs(), f64::max),
            SeqExpr::Product(a, b) => a.sup_abs() * b.sup_abs(),
        }
    }

    /// Upper bound for `sup_{j > j0} |a_j|`.
    pub fn sup_abs_tail(&self, j0: u64) -> f64 {
        match self {
            SeqExpr::Const(c) => c.norm(),
            SeqExpr::GeometricPow { base } => {
                let b = base.abs();
                if b <= 1.0 {
                    b.powi((j0 + 1) as i32)
                } else {
                    f64::INFINITY
                }
            }
            SeqExpr::InversePower { p, offset }
            | SeqExpr::AlternatingInversePower { p, offset } => {
                if *p >= 0.0 {
                    ((j0 + 1 + offset) as f64).powf(-p)
                } else {
                    f64::INFINITY
                }
            }
            SeqExpr::OneMinus(inner) => 1.0 + inner.sup_abs_tail(j0),
            SeqExpr::Scaled(c, inner) => c.abs() * inner.sup_abs_tail(j0),
            SeqExpr::List { head, tail } => {
                let m = head.len() as u64;
                if j0 >= m {
                    tail.sup_abs_tail(j0 - m)
                } else {
                    head[(j0 as usize)..]
                        .iter()
                        .map(|c| c.norm())
                        .fold(tail.sup_abs(), f64::max)
                }
            }
            SeqExpr::Product(a, b) => a.sup_abs_tail(j0) * b.sup_abs_tail(j0),
        }
    }

    /// Bracket `[lo, hi]` for `Σ_{j > j0} |a_j|`, or `None` when no finite
    /// bound is known.
    pub fn abs_tail_sum_bracket(&self, j0: u64) -> Option<(f64, f64)> {
        match self {
            SeqExpr::Const(c) => {
                if c.norm() == 0.0 {
                    Some((0.0, 0.0))
                } else {
                    None
                }
            }
            SeqExpr::GeometricPow { base } => {
                let b = base.abs();
                if b == 0.0 {
                    Some((0.0, 0.0))
                } else if b < 1.0 {
                    let s = b.powi((j0 + 1) as i32) / (1.0 - b);
                    Some((s, s))
                } else {
                    None
                }
            }
            SeqExpr::InversePower { p, offset }
            | SeqExpr::AlternatingInversePower { p, offset } => {
                if *p > 1.0 {
                    // Σ_{m >= n} m^{-p} is bracketed by ∫_n^∞ and ∫_{n-1}^∞.
                    let n = (j0 + 1 + offset) as f64;
                    let lo = n.powf(1.0 - p) / (p - 1.0);
                    let hi = (n - 1.0).max(1.0).powf(1.0 - p) / (p - 1.0);
                    Some((lo.min(hi), lo.max(hi)))
                } else {
                    None
                }
            }
            SeqExpr::OneMinus(inner) => match &**inner {
                SeqExpr::Const(c) => {
                    if (Complex64::new(1.0, 0.0) - c).norm() == 0.0 {
                        Some((0.0, 0.0))
                    } else {
                        None
                    }
                }
                _ => None,
            },
            SeqExpr::Scaled(c, inner) => {
                let (lo, hi) = inner.abs_tail_sum_bracket(j0)?;
                Some((c.abs() * lo, c.abs() * hi))
            }
            SeqExpr::List { head, tail } => {
                let m = head.len() as u64;
                if j0 >= m {
                    tail.abs_tail_sum_bracket(j0 - m)
                } else {
                    let head_part: f64 = head[(j0 as usize)..].iter().map(|c| c.norm()).sum();
                    let (lo, hi) = tail.abs_tail_sum_bracket(0)?;
                    Some((head_part + lo, head_part + hi))
                }
            }
            SeqExpr::Product(a, b) => {
                let hi_a = a
                    .abs_tail_sum_bracket(j0)
                    .map(|(_, hi)| hi * b.sup_abs_tail(j0));
                let hi_b = b
                    .abs_tail_sum_bracket(j0)
                    .map(|(_, hi)| hi * a.sup_abs_tail(j0));
                let hi = match (hi_a, hi_b) {
                    (Some(x), Some(y)) => x.min(y),
                    (Some(x), None) | (None, Some(x)) => x,
                    (None, None) => return None,
                };
                if hi.is_finite() {
                    Some((0.0, hi))
                } else {
                    None
                }
            }
        }
    }

    /// Bracket for the signed tail `Σ_{j > j0} a_j` of a real sequence.
    pub fn signed_tail_sum_bracket(&self, j0: u64) -> Option<(f64, f64)> {
        if !self.is_real() {
            return None;
        }
        match self {
            SeqExpr::Const(c) => {
                if c.re == 0.0 {
                    Some((0.0, 0.0))
                } else {
                    None
                }
            }
            SeqExpr::GeometricPow { base } => {
                if base.abs() < 1.0 {
                    let s = base.powi((j0 + 1) as i32) / (1.0 - base);
                    Some((s.min(s), s.max(s)))
                } else if *base == 0.0 {
                    Some((0.0, 0.0))
                } else {
                    None
                }
            }
            SeqExpr::InversePower { .. } => self.abs_tail_sum_bracket(j0),
            SeqExpr::AlternatingInversePower { p, offset } => {
                if *p > 0.0 {
                    // Alternating with decreasing terms: the tail is bounded
                    // by its first term in absolute value.
                    let t = ((j0 + 1 + offset) as f64).powf(-p);
                    Some((-t, t))
                } else {
                    None
                }
            }
            SeqExpr::OneMinus(inner) => match &**inner {
                SeqExpr::Const(c) if c.re == 1.0 && c.im == 0.0 => Some((0.0, 0.0)),
                _ => None,
            },
            SeqExpr::Scaled(c, inner) => {
                let (lo, hi) = inner.signed_tail_sum_bracket(j0)?;
                if *c >= 0.0 {
                    Some((c * lo, c * hi))
                } else {
                    Some((c * hi, c * lo))
                }
            }
            SeqExpr::List { head, tail } => {
                let m = head.len() as u64;
                if j0 >= m {
                    tail.signed_tail_sum_bracket(j0 - m)
                } else {
                    let head_part: f64 = head[(j0 as usize)..].iter().map(|c| c.re).sum();
                    let (lo, hi) = tail.signed_tail_sum_bracket(0)?;
                    Some((head_part + lo, head_part + hi))
                }
            }
            SeqExpr::Product(_, _) => {
                let (_, hi) = self.abs_tail_sum_bracket(j0)?;
                Some((-hi, hi))
            }
        }
    }

    /// Bracket for `Σ_{j > j0} |1 - a_j|`, the deviation of the sequence
    /// from 1. Finite exactly when partial products along the sequence can
    /// be tail-corrected.
    pub fn deviation_tail_bracket(&self, j0: u64) -> Option<(f64, f64)> {
        match self {
            SeqExpr::OneMinus(inner) => inner.abs_tail_sum_bracket(j0),
            SeqExpr::Const(c) => {
                if (Complex64::new(1.0, 0.0) - c).norm() == 0.0 {
                    Some((0.0, 0.0))
                } else {
                    None
                }
            }
            SeqExpr::Scaled(c, inner) => {
                // |1 - c·a| <= |1 - a| + |1 - c|·|a|
                if *c == 1.0 {
                    inner.deviation_tail_bracket(j0)
                } else {
                    None
                }
            }
            SeqExpr::List { head, tail } => {
                let m = head.len() as u64;
                if j0 >= m {
                    tail.deviation_tail_bracket(j0 - m)
                } else {
                    let head_part: f64 = head[(j0 as usize)..]
                        .iter()
                        .map(|c| (Complex64::new(1.0, 0.0) - c).norm())
                        .sum();
                    let (lo, hi) = tail.deviation_tail_bracket(0)?;
                    Some((head_part + lo, head_part + hi))
                }
            }
            SeqExpr::Product(a, b) => {
                // |1 - xy| <= |1 - x| + |x| |1 - y|
                let (_, da) = a.deviation_tail_bracket(j0)?;
                let (_, db) = b.deviation_tail_bracket(j0)?;
                let hi = da + a.sup_abs_tail(j0).min(1.0 + da) * db;
                Some((0.0, hi))
            }
            _ => None,
        }
    }

    /// Upper bound for `sup_{j > j0} |1 - a_j|`.
    pub fn deviation_sup_tail(&self, j0: u64) -> Option<f64> {
        match self {
            SeqExpr::OneMinus(inner) => Some(inner.sup_abs_tail(j0)),
            SeqExpr::Const(c) => Some((Complex64::new(1.0, 0.0) - c).norm()),
            SeqExpr::Scaled(c, inner) => {
                if *c == 1.0 {
                    inner.deviation_sup_tail(j0)
                } else {
                    None
                }
            }
            SeqExpr::List { head, tail } => {
                let m = head.len() as u64;
                if j0 >= m {
                    tail.deviation_sup_tail(j0 - m)
                } else {
                    let head_max = head[(j0 as usize)..]
                        .iter()
                        .map(|c| (Complex64::new(1.0, 0.0) - c).norm())
                        .fold(0.0, f64::max);
                    Some(head_max.max(tail.deviation_sup_tail(0)?))
                }
            }
            SeqExpr::Product(a, b) => {
                let da = a.deviation_sup_tail(j0)?;
                let db = b.deviation_sup_tail(j0)?;
                Some(da + (1.0 + da) * db)
            }
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geo(base: f64) -> SeqExpr {
        SeqExpr::GeometricPow { base }
    }

    #[test]
    fn values_match_closed_forms() {
        let e = geo(0.5);
        assert_eq!(e.value(1).re, 0.5);
        assert_eq!(e.value(3).re, 0.125);

        let p = SeqExpr::InversePower { p: 2.0, offset: 1 };
        assert_eq!(p.value(1).re, 0.25);

        let alt = SeqExpr::AlternatingInversePower { p: 1.0, offset: 0 };
        assert_eq!(alt.value(1).re, 1.0);
        assert_eq!(alt.value(2).re, -0.5);

        let om = SeqExpr::OneMinus(Box::new(geo(0.5)));
        assert_eq!(om.value(2).re, 0.75);

        let list = SeqExpr::List {
            head: vec![Complex64::new(7.0, 0.0)],
            tail: Box::new(geo(0.5)),
        };
        assert_eq!(list.value(1).re, 7.0);
        assert_eq!(list.value(2).re, 0.5);
    }

    #[test]
    fn geometric_tail_is_exact() {
        let e = geo(0.5);
        let (lo, hi) = e.abs_tail_sum_bracket(3).unwrap();
        // Σ_{j>3} 2^-j = 2^-3
        assert!((lo - 0.125).abs() < 1e-15);
        assert_eq!(lo, hi);
    }

    #[test]
    fn inverse_power_tail_brackets_truth() {
        let e = SeqExpr::InversePower { p: 2.0, offset: 0 };
        let (lo, hi) = e.abs_tail_sum_bracket(100).unwrap();
        // Oracle: direct summation far past the bracket index.
        let truth: f64 = (101u64..2_000_000).map(|j| 1.0 / (j as f64).powi(2)).sum();
        assert!(lo <= truth + 1e-9, "lo={lo} truth={truth}");
        assert!(hi >= truth, "hi={hi} truth={truth}");
        assert!(hi - lo < 1e-4);
    }

    #[test]
    fn harmonic_tail_unbounded() {
        let e = SeqExpr::InversePower { p: 1.0, offset: 0 };
        assert!(e.abs_tail_sum_bracket(10).is_none());
    }

    #[test]
    fn deviation_tail_of_one_minus() {
        let a = SeqExpr::OneMinus(Box::new(geo(0.5)));
        let (lo, hi) = a.deviation_tail_bracket(10).unwrap();
        assert!((lo - 2f64.powi(-10)).abs() < 1e-15);
        assert_eq!(lo, hi);
    }

    #[test]
    fn alternating_signed_tail_contains_truth() {
        let e = SeqExpr::AlternatingInversePower { p: 1.0, offset: 0 };
        let (lo, hi) = e.signed_tail_sum_bracket(10).unwrap();
        let truth: f64 = std::f64::consts::LN_2
            - (1u64..=10).map(|j| (if j % 2 == 1 { 1.0 } else { -1.0 }) / j as f64).sum::<f64>();
        assert!(lo <= truth && truth <= hi);
    }

    #[test]
    fn list_reindexes_tail() {
        let list = SeqExpr::List {
            head: vec![Complex64::new(3.0, 0.0), Complex64::new(4.0, 0.0)],
            tail: Box::new(geo(0.5)),
        };
        // Tail past the head: Σ_{j>2} = Σ_{i>=1} 2^-i = 1
        let (lo, hi) = list.abs_tail_sum_bracket(2).unwrap();
        assert!((lo - 1.0).abs() < 1e-15 && (hi - 1.0).abs() < 1e-15);
        // Tail crossing the head: 4 + 1
        let (lo, hi) = list.abs_tail_sum_bracket(1).unwrap();
        assert!((lo - 5.0).abs() < 1e-15 && (hi - 5.0).abs() < 1e-15);
    }

    #[test]
    fn product_deviation_is_bounded() {
        let a = SeqExpr::OneMinus(Box::new(geo(0.5)));
        let b = SeqExpr::OneMinus(Box::new(geo(1.0 / 3.0)));
        let prod = SeqExpr::Product(Box::new(a), Box::new(b));
        let (_, hi) = prod.deviation_tail_bracket(20).unwrap();
        // Oracle: direct sum of |1 - (1-2^-j)(1-3^-j)| over the tail. Each
        // term carries ~1 ulp-of-1 cancellation noise, hence the slack.
        let truth: f64 = (21u64..200)
            .map(|j| {
                let v = (1.0 - 0.5f64.powi(j as i32)) * (1.0 - (1.0f64 / 3.0).powi(j as i32));
                (1.0 - v).abs()
            })
            .sum();
        assert!(hi >= truth - 1e-12);
        assert!(hi < 1e-5);
    }
}
