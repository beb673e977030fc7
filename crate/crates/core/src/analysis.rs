//! Closed-form false-positive probabilities.
//!
//! Conventions: `f_s` is the false-positive probability of the yes-filter
//! (or of a classic filter), `f_r` that of the no-filters, `pr_s` and `pr_r`
//! the prior probabilities that a queried element is a member or a stored
//! false positive.

use std::fmt;

/// Bits, hash count and load of a single Bloom filter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FilterShape {
    pub bits: usize,
    pub hashes: usize,
    pub elements: usize,
}

impl FilterShape {
    pub fn new(bits: usize, hashes: usize, elements: usize) -> Self {
        assert!(bits >= 1, "a filter has at least one bit");
        FilterShape {
            bits,
            hashes,
            elements,
        }
    }

    fn throws(&self) -> f64 {
        self.hashes as f64 * self.elements as f64
    }
}

/// Priors `Pr[S]` and `Pr[R]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembershipPriors {
    pub pr_s: f64,
    pub pr_r: f64,
}

impl MembershipPriors {
    pub fn new(pr_s: f64, pr_r: f64) -> Option<Self> {
        let ok = |x: f64| (0.0..=1.0).contains(&x);
        (ok(pr_s) && ok(pr_r)).then_some(MembershipPriors { pr_s, pr_r })
    }
}

/// Probability that a given bit is still 0: `(1 - 1/m)^(k n)`.
pub fn bit_zero_prob(shape: FilterShape) -> f64 {
    (1.0 - 1.0 / shape.bits as f64).powf(shape.throws())
}

/// `f = (1 - (1 - 1/m)^(k n))^k`.
///
/// Assumes independent bits; for `k >= 2` the true rate is strictly higher.
pub fn fp_prob_exact(shape: FilterShape) -> f64 {
    if shape.hashes == 0 {
        // an element without hashes matches every filter
        return 1.0;
    }
    (1.0 - bit_zero_prob(shape)).powi(shape.hashes as i32)
}

/// `f ≈ (1 - e^(-k n / m))^k`.
pub fn fp_prob_approx(shape: FilterShape) -> f64 {
    if shape.hashes == 0 {
        return 1.0;
    }
    let fill = -(-shape.throws() / shape.bits as f64).exp_m1();
    fill.powi(shape.hashes as i32)
}

/// `Pr[S̄] = Pr[S] + (1 - Pr[S]) f_S`: probability of a positive answer.
pub fn pr_positive(pr_s: f64, f_s: f64) -> f64 {
    pr_s + (1.0 - pr_s) * f_s
}

/// `Pr[F] = (1 - Pr[S]) f_S`.
pub fn pr_false_positive(pr_s: f64, f_s: f64) -> f64 {
    (1.0 - pr_s) * f_s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Consistency {
    Consistent,
    /// The priors cannot occur together; the formula went negative.
    InconsistentPriors,
}

impl fmt::Display for Consistency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Consistency::Consistent => "OK",
            Consistency::InconsistentPriors => "INCONSISTENT",
        })
    }
}

/// A formula value that is reported even when it is not a probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Flagged {
    pub value: f64,
    pub consistency: Consistency,
}

impl Flagged {
    fn new(value: f64) -> Self {
        let consistency = if value < 0.0 {
            Consistency::InconsistentPriors
        } else {
            Consistency::Consistent
        };
        Flagged { value, consistency }
    }

    pub fn is_consistent(&self) -> bool {
        self.consistency == Consistency::Consistent
    }
}

/// Probability of the residual false-positive set `E` of a yes-no filter:
///
/// `Pr[E] = (1 - Pr[S]) f_S - (Pr[S] + (1 - Pr[S]) f_S) f_R - (1 - f_R) Pr[R]`.
///
/// Negative values are returned as-is and flagged, never clamped.
pub fn pr_e(pr_s: f64, f_s: f64, f_r: f64, pr_r: f64) -> Flagged {
    Flagged::new(pr_false_positive(pr_s, f_s) - pr_positive(pr_s, f_s) * f_r - (1.0 - f_r) * pr_r)
}

/// `Pr[E | Sᶜ] = f_S (1 - f_R) - (1 - f_R) Pr[R]`.
pub fn pr_e_given_not_s(f_s: f64, f_r: f64, pr_r: f64) -> Flagged {
    Flagged::new(f_s * (1.0 - f_r) - (1.0 - f_r) * pr_r)
}

/// False-positive probability of a yes-no filter with a single no-filter:
///
/// `f_E = (1 - e^(-k n / p))^k * (1 - (1 - e^(-k' n_R / q))^k')`.
///
/// `no_filter_load` is the number of elements stored in the no-filter; when
/// `None` it falls back to `n`, the member count.
pub fn f_e_single_no_filter(
    p: usize,
    q: usize,
    k: usize,
    k_prime: usize,
    n: usize,
    no_filter_load: Option<usize>,
) -> f64 {
    let f_s = fp_prob_approx(FilterShape::new(p, k, n));
    let f_r = fp_prob_approx(FilterShape::new(q, k_prime, no_filter_load.unwrap_or(n)));
    f_s * (1.0 - f_r)
}

/// `F_p = |T| f_p`, the expected number of false-positive occurrences.
pub fn expected_fp_count(t_size: usize, f_p: f64) -> f64 {
    t_size as f64 * f_p
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    fn shape(m: usize, k: usize, n: usize) -> FilterShape {
        FilterShape::new(m, k, n)
    }

    fn rational(num: i64, den: i64) -> BigRational {
        BigRational::new(num.into(), den.into())
    }

    fn to_f64(r: &BigRational) -> f64 {
        r.to_f64().unwrap()
    }

    #[test]
    fn bit_zero_edge_cases() {
        assert_eq!(bit_zero_prob(shape(10, 3, 0)), 1.0);
        assert_eq!(bit_zero_prob(shape(1, 1, 1)), 0.0);
    }

    #[test]
    fn small_filter_matches_rational_oracle() {
        // (1 - 1/8)^2 and (1 - (7/8)^2)^2, computed exactly
        let zero = rational(7, 8) * rational(7, 8);
        assert_eq!(zero, rational(49, 64));
        let one_minus = rational(1, 1) - zero.clone();
        let fp = one_minus.clone() * one_minus;
        assert_eq!(fp, rational(225, 4096));
        assert!((bit_zero_prob(shape(8, 2, 1)) - to_f64(&zero)).abs() < 1e-15);
        assert!((fp_prob_exact(shape(8, 2, 1)) - to_f64(&fp)).abs() < 1e-15);
    }

    #[test]
    fn empty_filter_has_no_false_positives() {
        assert_eq!(fp_prob_exact(shape(64, 3, 0)), 0.0);
        assert_eq!(fp_prob_approx(shape(64, 3, 0)), 0.0);
        assert_eq!(f_e_single_no_filter(160, 32, 4, 5, 0, None), 0.0);
    }

    #[test]
    fn approx_matches_direct_evaluation() {
        let direct = (1.0 - (-120.0f64 / 256.0).exp()).powi(4);
        assert!((fp_prob_approx(shape(256, 4, 30)) - direct).abs() < 1e-15);
    }

    #[test]
    fn approx_gap_shrinks_with_m() {
        let gap = |m: usize| {
            // keep the load ratio fixed
            let s = shape(m, 4, m / 8);
            (fp_prob_exact(s) - fp_prob_approx(s)).abs()
        };
        let gaps: Vec<f64> = [64, 256, 1024].into_iter().map(gap).collect();
        assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2], "{gaps:?}");
        assert!(gaps[0] < 1e-3);
    }

    #[test]
    fn positive_and_false_positive_priors() {
        assert_eq!(pr_positive(1.0, 0.4), 1.0);
        assert_eq!(pr_positive(0.25, 0.0), 0.25);
        assert!((pr_positive(0.3, 0.1) - 0.37).abs() < 1e-12);
        assert_eq!(pr_false_positive(0.0, 0.123), 0.123);
        assert_eq!(pr_false_positive(0.4, 0.0), 0.0);
        assert!((pr_false_positive(0.3, 0.1) - 0.07).abs() < 1e-12);
    }

    #[test]
    fn residual_formula_hand_values() {
        let v = pr_e(0.0, 0.2, 0.1, 0.05);
        assert!((v.value - 0.135).abs() < 1e-12);
        assert!(v.is_consistent());
        assert!((0.9f64 * (0.2 - 0.05) - 0.135).abs() < 1e-12);
        assert!((pr_e_given_not_s(0.2, 0.1, 0.05).value - 0.135).abs() < 1e-12);
        assert_eq!(pr_e_given_not_s(0.3, 1.0, 0.2).value, 0.0);
        assert!((pr_e(0.0, 0.3, 0.2, 0.0).value - 0.3 * 0.8).abs() < 1e-15);
    }

    #[test]
    fn negative_residual_value_is_flagged_not_clamped() {
        let v = pr_e(0.0, 0.1, 0.5, 0.9);
        assert!(v.value < 0.0);
        assert_eq!(v.consistency, Consistency::InconsistentPriors);
        assert_eq!(v.consistency.to_string(), "INCONSISTENT");
    }

    #[test]
    fn single_no_filter_is_the_product_of_factors() {
        let f_s = (1.0 - (-120.0f64 / 160.0).exp()).powi(4);
        let f_r = (1.0 - (-150.0f64 / 32.0).exp()).powi(5);
        let v = f_e_single_no_filter(160, 32, 4, 5, 30, None);
        assert!((v - f_s * (1.0 - f_r)).abs() < 1e-15);
        assert!(v < fp_prob_approx(shape(160, 4, 30)));
        // separate no-filter load
        let g = f_e_single_no_filter(160, 32, 4, 2, 30, Some(6));
        let f_r6 = (1.0 - (-12.0f64 / 32.0).exp()).powi(2);
        assert!((g - f_s * (1.0 - f_r6)).abs() < 1e-15);
    }

    #[test]
    fn saturated_no_filter_drives_f_e_to_zero() {
        let v = f_e_single_no_filter(160, 8, 4, 3, 30, Some(10_000));
        assert!(v < 1e-12);
    }

    #[test]
    fn expected_count() {
        assert_eq!(expected_fp_count(100, 0.05), 5.0);
        assert_eq!(expected_fp_count(100, 0.0), 0.0);
        let f = fp_prob_exact(shape(256, 6, 30));
        assert!((expected_fp_count(100, f) - 100.0 * f).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn residual_reduces_to_plain_false_positive(pr_s in 0.0f64..=1.0, f_s in 0.0f64..=1.0) {
            prop_assert!((pr_e(pr_s, f_s, 0.0, 0.0).value - pr_false_positive(pr_s, f_s)).abs() <= 1e-12);
        }

        #[test]
        fn residual_conditional_form(f_s in 0.0f64..=1.0, f_r in 0.0f64..=1.0, pr_r in 0.0f64..=1.0) {
            prop_assert!((pr_e(0.0, f_s, f_r, pr_r).value - pr_e_given_not_s(f_s, f_r, pr_r).value).abs() <= 1e-12);
        }

        #[test]
        fn residual_dominates_plain_filter(f_s in 1e-6f64..=1.0, f_r in 1e-6f64..=1.0) {
            let v = pr_e(0.0, f_s, f_r, 0.0).value;
            prop_assert!((v - f_s * (1.0 - f_r)).abs() <= 1e-12);
            prop_assert!(v < f_s);
        }

        #[test]
        fn probabilities_stay_in_unit_interval(m in 1usize..2000, k in 0usize..20, n in 0usize..500) {
            let s = shape(m, k, n);
            for v in [bit_zero_prob(s), fp_prob_exact(s), fp_prob_approx(s)] {
                prop_assert!((0.0..=1.0).contains(&v));
            }
        }

        #[test]
        fn exact_is_monotone_in_load(m in 2usize..1000, k in 1usize..12, n in 0usize..300) {
            prop_assert!(fp_prob_exact(shape(m, k, n)) <= fp_prob_exact(shape(m, k, n + 1)));
        }
    }
}
