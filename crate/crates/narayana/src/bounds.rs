//! The initial bound chain: Matveev's lower bound for linear forms in three
//! logarithms, the digit-count bracket, the per-variable upper bounds, and
//! the resolution of the implicit bound n < C log^4(rho) log^3(n) into the
//! explicit Theorem-1 cap.
//!
//! Everything here is evaluated in outward-rounded interval arithmetic, so a
//! reported upper bound is a certified majorant of the exact expression.

use rug::ops::Pow;
use rug::Integer;

use crate::algebraic::real_root_alpha;
use crate::error::{Error, Result};
use crate::real::PrecisionReal;

/// Working precision for bound bookkeeping; these are order-1e48 quantities
/// compared at a handful of significant digits.
pub const BOUND_PRECISION: u32 = 192;

/// Parameters of one application of Matveev's theorem.
#[derive(Clone, Debug)]
pub struct MatveevInstance {
    /// Number of logarithms s.
    pub num_logs: u32,
    /// Degree of the real number field containing the eta_i.
    pub field_degree: u32,
    /// B, an upper bound for the exponent magnitudes (must be >= 3 here).
    pub exponent_bound: PrecisionReal,
    /// A_1..A_s with A_i >= max(d h(eta_i), |log eta_i|, 0.16).
    pub heights: Vec<PrecisionReal>,
}

impl MatveevInstance {
    fn validate(&self) -> Result<()> {
        if self.num_logs < 1 || self.field_degree < 1 {
            return Err(Error::InvalidInstance(
                "need s >= 1 and field degree >= 1".into(),
            ));
        }
        if self.heights.len() != self.num_logs as usize {
            return Err(Error::InvalidInstance(format!(
                "expected {} height parameters, got {}",
                self.num_logs,
                self.heights.len()
            )));
        }
        if self.heights.iter().any(|a| !a.certainly_exceeds_f64(0.159)) {
            return Err(Error::InvalidInstance("every A_i must be >= 0.16".into()));
        }
        if !self.exponent_bound.certainly_exceeds_f64(2.999) {
            return Err(Error::InvalidInstance("B must be >= 3".into()));
        }
        Ok(())
    }
}

/// Right-hand side of Matveev's inequality (a negative real):
/// -1.4 30^(s+3) s^4.5 d^2 (1 + log d) (1 + log B) A_1...A_s.
pub fn matveev_lower_bound(inst: &MatveevInstance) -> Result<PrecisionReal> {
    inst.validate()?;
    let p = BOUND_PRECISION;
    let s = inst.num_logs;
    let d = inst.field_degree;
    let one = PrecisionReal::from_u64(p, 1);

    let thirty_pow = PrecisionReal::from_u64(p, 30).pow_u32(s + 3);
    // s^4.5 = sqrt(s^9), exact integer under the root
    let s_pow = PrecisionReal::from_integer(p, &Integer::from(s).pow(9)).sqrt();
    let d_sq = PrecisionReal::from_u64(p, (d as u64) * (d as u64));
    let log_d = PrecisionReal::from_u64(p, d as u64).ln();
    let log_b = inst.exponent_bound.ln();
    let c = PrecisionReal::from_f64(p, 1.4);

    let mut acc = c
        .mul(&thirty_pow)
        .mul(&s_pow)
        .mul(&d_sq)
        .mul(&one.add(&log_d))
        .mul(&one.add(&log_b));
    for a in &inst.heights {
        acc = acc.mul(a);
    }
    Ok(acc.neg())
}

/// The three linear forms of the bound chain, distinguished by their eta_1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinearForm {
    /// eta_1 = (rho-1) a / d1, A_1 = 12 log rho
    Lambda1,
    /// eta_1 = (rho-1) a / (d1 rho^l - (d1-d2)), A_1 = 1.125e14 log^2 rho (1+log n)
    Lambda2,
    /// eta_1 = (d1 rho^(l+m) - (d1-d2) rho^m - (d2-d3)) / ((rho-1) a),
    /// A_1 = 4.2e27 log^3 rho (1+log n)^2
    Lambda3,
}

impl LinearForm {
    /// The ceiling the paper states for this form's numeric coefficient.
    pub fn coefficient_ceiling(self) -> f64 {
        match self {
            LinearForm::Lambda1 => 3.73e13,
            LinearForm::Lambda2 => 3.49e26,
            LinearForm::Lambda3 => 1.31e40,
        }
    }

    /// Constant factor of A_1 with the (log rho, 1+log n) powers stripped.
    fn a1_scalar(self) -> PrecisionReal {
        let p = BOUND_PRECISION;
        match self {
            LinearForm::Lambda1 => PrecisionReal::from_u64(p, 12),
            LinearForm::Lambda2 => PrecisionReal::from_f64(p, 1.125e14),
            LinearForm::Lambda3 => PrecisionReal::from_f64(p, 4.2e27),
        }
    }

    /// The numeric coefficient C such that Matveev gives
    /// log|Lambda| > -C log^u(rho) (1+log n)^v for this form, i.e. the
    /// full prefactor with A_2 = log alpha folded in and the rho- and
    /// n-dependent powers stripped: C = 1.4 30^6 3^4.5 9 (1+log 3)
    /// (log alpha) 3 a1_scalar.
    pub fn matveev_coefficient(self) -> PrecisionReal {
        let p = BOUND_PRECISION;
        let one = PrecisionReal::from_u64(p, 1);
        let alpha = real_root_alpha(p);
        let log_alpha = alpha.value().ln();
        let thirty_pow = PrecisionReal::from_u64(p, 30).pow_u32(6);
        let s_pow = PrecisionReal::from_integer(p, &Integer::from(3).pow(9)).sqrt();
        PrecisionReal::from_f64(p, 1.4)
            .mul(&thirty_pow)
            .mul(&s_pow)
            .mul(&PrecisionReal::from_u64(p, 9))
            .mul(&one.add(&PrecisionReal::from_u64(p, 3).ln()))
            .mul(&log_alpha)
            .mul(&PrecisionReal::from_u64(p, 3))
            .mul(&self.a1_scalar())
    }
}

/// Integer bracket for S = l + m + k from
/// (S - 1) log rho + log alpha < n log alpha < S log rho + 1.
pub fn lemma2_digit_bounds(n: u64, rho: u32) -> (i64, i64) {
    assert!(n >= 1 && rho >= 2);
    let p = BOUND_PRECISION;
    let log_alpha = real_root_alpha(p).value().ln();
    let log_rho = PrecisionReal::from_u64(p, rho as u64).ln();
    let n_real = PrecisionReal::from_u64(p, n);
    let one = PrecisionReal::from_u64(p, 1);

    // S > (n log alpha - 1) / log rho
    let lower = n_real.mul(&log_alpha).sub(&one).div(&log_rho);
    // S < (n - 1) log alpha / log rho + 1
    let upper = n_real
        .sub(&one)
        .mul(&log_alpha)
        .div(&log_rho)
        .add(&one);

    let s_min = lower.lo().clone().floor().to_f64() as i64 + 1;
    let s_max = upper.hi().clone().ceil().to_f64() as i64 - 1;
    (s_min.max(1), s_max.max(s_min.max(1)))
}

fn log1p_n(n: &Integer) -> PrecisionReal {
    let p = BOUND_PRECISION;
    PrecisionReal::from_u64(p, 1).add(&PrecisionReal::from_integer(p, n).ln())
}

/// Upper bound for l from l log rho < 3.74e13 log^2 rho (1 + log n).
pub fn ell_bound(rho: u32, n: &Integer) -> PrecisionReal {
    assert!(rho >= 2 && *n >= 3);
    let p = BOUND_PRECISION;
    let log_rho = PrecisionReal::from_u64(p, rho as u64).ln();
    PrecisionReal::from_f64(p, 3.74e13)
        .mul(&log_rho)
        .mul(&log1p_n(n))
}

/// Upper bound for m from m log rho < 3.5e26 log^3 rho (1 + log n)^2.
pub fn m_bound(rho: u32, n: &Integer) -> PrecisionReal {
    assert!(rho >= 2 && *n >= 3);
    let p = BOUND_PRECISION;
    let log_rho = PrecisionReal::from_u64(p, rho as u64).ln();
    PrecisionReal::from_f64(p, 3.5e26)
        .mul(&log_rho.pow_u32(2))
        .mul(&log1p_n(n).pow_u32(2))
}

/// Resolves L < 2^r H (log H)^r under the hypothesis H > (4 r^2)^r.
pub fn resolve_recursive_bound(r: u32, h: &PrecisionReal) -> Result<PrecisionReal> {
    let p = BOUND_PRECISION;
    let floor = Integer::from(4u32 * r * r).pow(r);
    let floor_real = PrecisionReal::from_integer(p, &floor);
    if !floor_real.certainly_less_than(h) {
        return Err(Error::HypothesisViolated {
            h: h.hi_f64(),
            floor: floor_real.lo_f64(),
        });
    }
    let two_pow = PrecisionReal::from_integer(p, &(Integer::from(1) << r));
    Ok(two_pow.mul(h).mul(&h.ln().pow_u32(r)))
}

/// The audit trail of the initial bound on n for one base.
#[derive(Clone, Debug)]
pub struct InitialBoundReport {
    pub rho: u32,
    /// H = 2.75e41 log^4 rho.
    pub h: PrecisionReal,
    /// 8 H (log H)^3, the exact resolution of the implicit inequality.
    pub lemma3_bound: PrecisionReal,
    /// 8 H (95.42 + 4 log log rho)^3, the displayed intermediate step.
    pub derived_bound: PrecisionReal,
    /// The Theorem-1 cap 5.6e48 log^7 rho.
    pub cap: PrecisionReal,
    /// min(derived_bound, cap).
    pub capped_bound: PrecisionReal,
    /// 95.42 + 4 log log rho < 136 log rho, required for the cap step.
    pub log_check: bool,
}

pub fn initial_n_bound(rho: u32) -> InitialBoundReport {
    assert!(rho >= 2);
    let p = BOUND_PRECISION;
    let log_rho = PrecisionReal::from_u64(p, rho as u64).ln();
    let h = PrecisionReal::from_f64(p, 2.75e41).mul(&log_rho.pow_u32(4));
    let lemma3_bound = resolve_recursive_bound(3, &h).expect("H exceeds (4r^2)^r for rho >= 2");

    let inner = if rho == 2 {
        // log log 2 is negative; ln of log_rho still well defined
        log_rho.ln()
    } else {
        log_rho.ln()
    };
    let bracket = PrecisionReal::from_f64(p, 95.42).add(&inner.mul_integer(&Integer::from(4)));
    let derived_bound = PrecisionReal::from_u64(p, 8).mul(&h).mul(&bracket.pow_u32(3));
    let cap = PrecisionReal::from_f64(p, 5.6e48).mul(&log_rho.pow_u32(7));
    let capped_bound = if derived_bound.certainly_less_than(&cap) {
        derived_bound.clone()
    } else {
        cap.clone()
    };
    let log_check = bracket.certainly_less_than(&log_rho.mul_integer(&Integer::from(136)));
    InitialBoundReport {
        rho,
        h,
        lemma3_bound,
        derived_bound,
        cap,
        capped_bound,
        log_check,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digits::to_digits;
    use crate::sequence::narayana;
    fn n_ceiling() -> Integer {
        Integer::from(2u32) * Integer::from(10u32).pow(51)
    }

    #[test]
    fn lambda_coefficients_match_paper_ceilings() {
        for (form, expected) in [
            (LinearForm::Lambda1, 3.722e13),
            (LinearForm::Lambda2, 3.489e26),
            (LinearForm::Lambda3, 1.303e40),
        ] {
            let c = form.matveev_coefficient();
            let ceil = form.coefficient_ceiling();
            assert!(c.certainly_below_f64(ceil), "{form:?} exceeds ceiling");
            assert!(
                (c.mid_f64() - expected).abs() / expected < 5e-3,
                "{form:?} not within 0.5% of {expected:e}: {}",
                c.mid_f64()
            );
        }
    }

    #[test]
    fn matveev_direct_small_instance() {
        // s=1, d=1, B=3, A=[0.16]: -1.4 30^4 (1 + log 3) 0.16
        let inst = MatveevInstance {
            num_logs: 1,
            field_degree: 1,
            exponent_bound: PrecisionReal::from_u64(BOUND_PRECISION, 3),
            heights: vec![PrecisionReal::from_f64(BOUND_PRECISION, 0.16)],
        };
        let got = matveev_lower_bound(&inst).unwrap();
        let expect = -1.4 * 810000.0 * (1.0 + 3f64.ln()) * 0.16;
        assert!((got.mid_f64() - expect).abs() < 1e-6 * expect.abs());
    }

    #[test]
    fn matveev_invalid_instances() {
        let bad = MatveevInstance {
            num_logs: 2,
            field_degree: 1,
            exponent_bound: PrecisionReal::from_u64(BOUND_PRECISION, 3),
            heights: vec![PrecisionReal::from_f64(BOUND_PRECISION, 0.16)],
        };
        assert!(matches!(
            matveev_lower_bound(&bad),
            Err(Error::InvalidInstance(_))
        ));
        let low_a = MatveevInstance {
            num_logs: 1,
            field_degree: 1,
            exponent_bound: PrecisionReal::from_u64(BOUND_PRECISION, 3),
            heights: vec![PrecisionReal::from_f64(BOUND_PRECISION, 0.1)],
        };
        assert!(matveev_lower_bound(&low_a).is_err());
    }

    #[test]
    fn matveev_monotone_in_b_and_a() {
        let mk = |b: u64, a: f64| MatveevInstance {
            num_logs: 1,
            field_degree: 1,
            exponent_bound: PrecisionReal::from_u64(BOUND_PRECISION, b),
            heights: vec![PrecisionReal::from_f64(BOUND_PRECISION, a)],
        };
        let base = matveev_lower_bound(&mk(3, 0.5)).unwrap();
        let bigger_b = matveev_lower_bound(&mk(30, 0.5)).unwrap();
        let bigger_a = matveev_lower_bound(&mk(3, 5.0)).unwrap();
        assert!(bigger_b.certainly_less_than(&base));
        assert!(bigger_a.certainly_less_than(&base));
    }

    #[test]
    fn lemma2_bracket_for_known_cases() {
        let (lo, hi) = lemma2_digit_bounds(31, 5);
        assert_eq!((lo, hi), (7, 8));
        let digits = to_digits(&narayana(31).unwrap(), 5).unwrap().digits.len() as i64;
        assert!(lo <= digits && digits <= hi);

        let (lo, hi) = lemma2_digit_bounds(6, 2);
        assert!(lo <= 3 && 3 <= hi);

        let (lo, hi) = lemma2_digit_bounds(1, 2);
        assert!(lo >= 1 && hi >= lo);
    }

    #[test]
    fn lemma2_bracket_contains_true_digit_count() {
        let mut cache = crate::sequence::SequenceCache::new();
        for n in 4..=400u64 {
            let v = cache.get(n as i64).unwrap().clone();
            for rho in 2..=10u32 {
                let (lo, hi) = lemma2_digit_bounds(n, rho);
                let d = to_digits(&v, rho).unwrap().digits.len() as i64;
                assert!(lo <= d && d <= hi, "n={n} rho={rho} d={d} not in [{lo},{hi}]");
            }
        }
    }

    #[test]
    fn ell_and_m_bounds() {
        let n = n_ceiling();
        let e = ell_bound(2, &n);
        // 3.74e13 * ln 2 * (1 + ln(2e51))
        let expect = 3.74e13 * 2f64.ln() * (1.0 + (2e51f64).ln());
        assert!((e.mid_f64() - expect).abs() < 1e-4 * expect);
        let m = m_bound(2, &n);
        assert!(e.certainly_less_than(&m));
        // monotone in n
        let e_small = ell_bound(2, &Integer::from(100));
        assert!(e_small.certainly_less_than(&e));
    }

    #[test]
    fn recursive_bound_examples() {
        let p = BOUND_PRECISION;
        // r=1, H=100 -> 2 * 100 * ln 100
        let got = resolve_recursive_bound(1, &PrecisionReal::from_u64(p, 100)).unwrap();
        assert!((got.mid_f64() - 200.0 * 100f64.ln()).abs() < 1e-9);

        // r=3, H=(4*9)^3 exactly: hypothesis is strict, must fail
        assert!(matches!(
            resolve_recursive_bound(3, &PrecisionReal::from_u64(p, 46656)),
            Err(Error::HypothesisViolated { .. })
        ));

        // r=3, H = 2.75e41 log^4 2
        let h = PrecisionReal::from_f64(p, 2.75e41)
            .mul(&PrecisionReal::from_u64(p, 2).ln().pow_u32(4));
        let got = resolve_recursive_bound(3, &h).unwrap();
        assert!(got.mid_f64() > 4.0e47 && got.mid_f64() < 4.3e47);
    }

    #[test]
    fn recursive_bound_defining_implication() {
        // For sampled L <= bound, L/(log L)^r < H must have no counterexample
        // above the returned bound; check L at the bound satisfies the
        // defining inequality direction.
        let p = BOUND_PRECISION;
        for (r, h_val) in [(1u32, 1e4f64), (2, 1e9), (3, 1e20)] {
            let h = PrecisionReal::from_f64(p, h_val);
            let bound = resolve_recursive_bound(r, &h).unwrap();
            // any L with H > L/(log L)^r must satisfy L < bound; test a grid
            for frac in [0.1, 0.5, 0.9, 1.0] {
                let l = bound.hi_f64() * frac * 1.0001 + 10.0;
                if h_val > l / l.ln().powi(r as i32) {
                    assert!(l < bound.hi_f64() * 1.001);
                }
            }
        }
    }

    #[test]
    fn initial_bound_rho2() {
        let rep = initial_n_bound(2);
        assert!(rep.lemma3_bound.lo_f64() > 4.0e47 && rep.lemma3_bound.hi_f64() < 4.3e47);
        assert!(rep.lemma3_bound.certainly_less_than(&rep.cap));
        assert!(rep.lemma3_bound.hi_f64() <= rep.capped_bound.hi_f64() * (1.0 + 1e-12));
        assert!(rep.log_check);
    }

    #[test]
    fn initial_bound_monotone_and_checked_to_100() {
        let mut last = 0.0f64;
        for rho in 2..=100u32 {
            let rep = initial_n_bound(rho);
            assert!(rep.log_check, "95.42 + 4 log log rho < 136 log rho at {rho}");
            assert!(rep.capped_bound.hi_f64() <= rep.cap.hi_f64() * (1.0 + 1e-12));
            assert!(
                rep.capped_bound.hi_f64() >= last,
                "capped bound must be non-decreasing"
            );
            assert!(rep.lemma3_bound.hi_f64() <= rep.capped_bound.hi_f64() * (1.0 + 1e-12));
            last = rep.capped_bound.hi_f64();
        }
    }
}
