//! Isolation of real roots of integer polynomials with exact sign
//! certificates, and the constants derived from the dominant root of
//! x^3 - x^2 - 1.

use rug::float::Round;
use rug::{Assign, Float, Integer, Rational};

use crate::real::PrecisionReal;

/// A certified enclosure of a real polynomial root. The endpoints are dyadic
/// and the polynomial provably changes sign across them (exact rational
/// evaluation, no rounding involved).
#[derive(Clone, Debug)]
pub struct RootBracket {
    /// Coefficients, constant term first.
    pub poly: Vec<Integer>,
    value: PrecisionReal,
}

impl RootBracket {
    pub fn value(&self) -> &PrecisionReal {
        &self.value
    }

    /// Re-checks poly(lo) * poly(hi) < 0 with exact rational arithmetic.
    pub fn sign_certificate(&self) -> bool {
        let (lo, hi) = self.value.rational_endpoints();
        let a = poly_eval(&self.poly, &lo);
        let b = poly_eval(&self.poly, &hi);
        a.cmp0() == std::cmp::Ordering::Less && b.cmp0() == std::cmp::Ordering::Greater
    }
}

pub fn poly_eval(poly: &[Integer], x: &Rational) -> Rational {
    let mut acc = Rational::new();
    for c in poly.iter().rev() {
        acc *= x;
        acc += c;
    }
    acc
}

fn poly_derivative(poly: &[Integer]) -> Vec<Integer> {
    poly.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| Integer::from(c * i as u32))
        .collect()
}

/// Rounds a rational to a dyadic with denominator 2^bits (toward -inf).
fn to_dyadic(x: &Rational, bits: u32) -> Rational {
    let mut n = Integer::new();
    n.assign(Rational::from(x << bits).floor_ref());
    Rational::from((n, Integer::from(1) << bits))
}

/// Isolates the unique root of `poly` in `(lo, hi)`, where the polynomial is
/// negative at `lo` and positive at `hi`, to width below 2^(4 - precision).
///
/// Bisection supplies the first 32 bits unconditionally; rational Newton
/// steps finish quadratically, each re-certified by an exact sign change.
pub fn isolate_root(
    poly: &[Integer],
    lo: Rational,
    hi: Rational,
    precision_bits: u32,
) -> RootBracket {
    assert!(poly_eval(poly, &lo).cmp0() == std::cmp::Ordering::Less);
    assert!(poly_eval(poly, &hi).cmp0() == std::cmp::Ordering::Greater);
    let deriv = poly_derivative(poly);
    let target_bits = precision_bits as i64 - 4;
    let mut lo = lo;
    let mut hi = hi;

    let width_bits = |lo: &Rational, hi: &Rational| -> i64 {
        let w = Rational::from(hi - lo);
        if w.cmp0() == std::cmp::Ordering::Equal {
            return i64::MAX;
        }
        // -floor(log2 w)
        let num_bits = w.numer().significant_bits() as i64;
        let den_bits = w.denom().significant_bits() as i64;
        den_bits - num_bits
    };

    // bisection to 32 bits
    while width_bits(&lo, &hi) < 34 {
        let mid = Rational::from(&lo + &hi) / 2u32;
        match poly_eval(poly, &mid).cmp0() {
            std::cmp::Ordering::Less => lo = mid,
            std::cmp::Ordering::Greater => hi = mid,
            std::cmp::Ordering::Equal => {
                // dyadic midpoint is the root itself; nudge the bracket
                let quarter = Rational::from(&hi - &lo) / 4u32;
                lo = Rational::from(&mid - &quarter);
                hi = mid + quarter;
            }
        }
    }

    // Newton finishing; current certified bits roughly double per step
    let mut certified = 34i64;
    while certified < target_bits + 2 {
        let next_bits = ((certified - 2) * 2).min(target_bits + 8).max(40) as u32;
        let x = Rational::from(&lo + &hi) / 2u32;
        let fx = poly_eval(poly, &x);
        let dfx = poly_eval(&deriv, &x);
        let mut improved = false;
        if dfx.cmp0() != std::cmp::Ordering::Equal {
            let step = fx / &dfx;
            let next = to_dyadic(&(x - step), next_bits);
            let r = Rational::from(1) >> next_bits;
            let cand_lo = Rational::from(&next - &r);
            let cand_hi = Rational::from(&next + &r);
            if poly_eval(poly, &cand_lo).cmp0() == std::cmp::Ordering::Less
                && poly_eval(poly, &cand_hi).cmp0() == std::cmp::Ordering::Greater
            {
                lo = cand_lo;
                hi = cand_hi;
                improved = true;
            }
        }
        if !improved {
            let mid = Rational::from(&lo + &hi) / 2u32;
            match poly_eval(poly, &mid).cmp0() {
                std::cmp::Ordering::Less => lo = mid,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => {
                    let quarter = Rational::from(&hi - &lo) / 4u32;
                    lo = Rational::from(&mid - &quarter);
                    hi = mid + quarter;
                }
            }
        }
        certified = width_bits(&lo, &hi);
    }

    let store = precision_bits + 16;
    let value = PrecisionReal::from_endpoints(
        Float::with_val_round(store, &lo, Round::Down).0,
        Float::with_val_round(store, &hi, Round::Up).0,
    );
    let bracket = RootBracket {
        poly: poly.to_vec(),
        value,
    };
    debug_assert!(bracket.sign_certificate());
    bracket
}

/// The dominant root of x^3 - x^2 - 1 (about 1.46557).
pub fn real_root_alpha(precision_bits: u32) -> RootBracket {
    assert!(precision_bits >= 64);
    let poly = [
        Integer::from(-1),
        Integer::from(0),
        Integer::from(-1),
        Integer::from(1),
    ];
    isolate_root(&poly, Rational::from(1), Rational::from(2), precision_bits)
}

/// The golden ratio, as a root bracket of x^2 - x - 1.
pub fn golden_ratio(precision_bits: u32) -> RootBracket {
    let poly = [Integer::from(-1), Integer::from(-1), Integer::from(1)];
    isolate_root(&poly, Rational::from(1), Rational::from(2), precision_bits)
}

/// The Binet coefficient a = alpha^2 / (alpha^3 + 2); its minimal polynomial
/// over the integers is 31x^3 - 3x - 1.
pub fn binet_coefficient_a(precision_bits: u32) -> PrecisionReal {
    assert!(precision_bits >= 64);
    let alpha = real_root_alpha(precision_bits + 16);
    let alpha = alpha.value();
    let num = alpha.pow_u32(2);
    let den = alpha.pow_u32(3).add(&PrecisionReal::from_u64(precision_bits + 16, 2));
    num.div(&den).at_precision(precision_bits)
}
