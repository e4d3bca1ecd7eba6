//! Certified real arithmetic: every `PrecisionReal` is an interval whose
//! endpoints are MPFR floats rounded outward, so any value derived through
//! this module carries a rigorous enclosure of the exact result.

use rug::float::Round;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

/// An enclosure `[lo, hi]` of a real number at a stated working precision.
///
/// The claimed precision is the precision of the endpoint significands; the
/// actual certified accuracy is `hi - lo`, which the doubling-stability
/// invariant ties to the last 8 claimed bits for every exported value.
#[derive(Clone, Debug)]
pub struct PrecisionReal {
    lo: Float,
    hi: Float,
}

impl PrecisionReal {
    pub fn from_endpoints(lo: Float, hi: Float) -> Self {
        debug_assert!(lo <= hi);
        PrecisionReal { lo, hi }
    }

    /// Exact point value (the float itself is the represented number).
    pub fn point(value: Float) -> Self {
        let hi = value.clone();
        PrecisionReal { lo: value, hi }
    }

    pub fn from_integer(prec: u32, v: &Integer) -> Self {
        let lo = Float::with_val_round(prec, v, Round::Down).0;
        let hi = Float::with_val_round(prec, v, Round::Up).0;
        PrecisionReal { lo, hi }
    }

    pub fn from_rational(prec: u32, v: &Rational) -> Self {
        let lo = Float::with_val_round(prec, v, Round::Down).0;
        let hi = Float::with_val_round(prec, v, Round::Up).0;
        PrecisionReal { lo, hi }
    }

    pub fn from_u64(prec: u32, v: u64) -> Self {
        Self::from_integer(prec, &Integer::from(v))
    }

    /// f64 values are dyadic, so this is exact.
    pub fn from_f64(prec: u32, v: f64) -> Self {
        PrecisionReal::point(Float::with_val(prec.max(64), v))
    }

    pub fn precision_bits(&self) -> u32 {
        self.lo.prec()
    }

    pub fn lo(&self) -> &Float {
        &self.lo
    }

    pub fn hi(&self) -> &Float {
        &self.hi
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64()
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64()
    }

    pub fn mid_f64(&self) -> f64 {
        (self.lo_f64() + self.hi_f64()) / 2.0
    }

    /// Exact rational endpoints (MPFR floats are always dyadic rationals).
    pub fn rational_endpoints(&self) -> (Rational, Rational) {
        (
            self.lo.to_rational().expect("finite float"),
            self.hi.to_rational().expect("finite float"),
        )
    }

    pub fn width(&self) -> Float {
        Float::with_val_round(self.prec(), &self.hi - &self.lo, Round::Up).0
    }

    fn prec(&self) -> u32 {
        self.lo.prec()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_sign_positive() && !self.lo.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_sign_negative() && !self.hi.is_zero()
    }

    pub fn contains_zero(&self) -> bool {
        !self.is_positive() && !self.is_negative()
    }

    /// Strict certified comparison: every point of `self` is below every
    /// point of `other`.
    pub fn certainly_less_than(&self, other: &PrecisionReal) -> bool {
        self.hi < other.lo
    }

    pub fn certainly_exceeds_f64(&self, x: f64) -> bool {
        self.lo > x
    }

    pub fn certainly_below_f64(&self, x: f64) -> bool {
        self.hi < x
    }

    pub fn contains_integer(&self, v: &Integer) -> bool {
        self.lo <= *v && *v <= self.hi
    }

    /// True when the two enclosures agree on all but the last `slack` bits
    /// of the claimed precision: |a - b| < 2^(exp - (prec - slack)).
    pub fn agrees_to_claimed_bits(&self, other: &PrecisionReal, slack: u32) -> bool {
        let prec = self.prec().min(other.prec());
        let p = prec as i64;
        let diff = Float::with_val_round(prec, &self.hi - &other.lo, Round::Up)
            .0
            .abs()
            .max(&Float::with_val_round(prec, &other.hi - &self.lo, Round::Up).0.abs());
        if diff.is_zero() {
            return true;
        }
        let mag = self.lo.clone().abs();
        let exp = if mag.is_zero() {
            0
        } else {
            mag.get_exp().unwrap_or(0) as i64
        };
        let tol_exp = exp - (p - slack as i64);
        diff.get_exp().map_or(true, |e| (e as i64) <= tol_exp)
    }

    pub fn neg(&self) -> PrecisionReal {
        PrecisionReal {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn abs(&self) -> PrecisionReal {
        if self.is_negative() {
            self.neg()
        } else if self.contains_zero() {
            let hi = Float::with_val_round(
                self.prec(),
                self.lo.clone().abs().max(&self.hi.clone().abs()),
                Round::Up,
            )
            .0;
            PrecisionReal {
                lo: Float::new(self.prec()),
                hi,
            }
        } else {
            self.clone()
        }
    }

    pub fn add(&self, other: &PrecisionReal) -> PrecisionReal {
        let p = self.prec().max(other.prec());
        PrecisionReal {
            lo: Float::with_val_round(p, &self.lo + &other.lo, Round::Down).0,
            hi: Float::with_val_round(p, &self.hi + &other.hi, Round::Up).0,
        }
    }

    pub fn sub(&self, other: &PrecisionReal) -> PrecisionReal {
        let p = self.prec().max(other.prec());
        PrecisionReal {
            lo: Float::with_val_round(p, &self.lo - &other.hi, Round::Down).0,
            hi: Float::with_val_round(p, &self.hi - &other.lo, Round::Up).0,
        }
    }

    pub fn mul(&self, other: &PrecisionReal) -> PrecisionReal {
        let p = self.prec().max(other.prec());
        let pairs = [
            (&self.lo, &other.lo),
            (&self.lo, &other.hi),
            (&self.hi, &other.lo),
            (&self.hi, &other.hi),
        ];
        let mut lo: Option<Float> = None;
        let mut hi: Option<Float> = None;
        for (a, b) in pairs {
            let d = Float::with_val_round(p, a * b, Round::Down).0;
            let u = Float::with_val_round(p, a * b, Round::Up).0;
            lo = Some(match lo {
                Some(cur) => cur.min(&d),
                None => d,
            });
            hi = Some(match hi {
                Some(cur) => cur.max(&u),
                None => u,
            });
        }
        PrecisionReal {
            lo: lo.unwrap(),
            hi: hi.unwrap(),
        }
    }

    pub fn mul_integer(&self, k: &Integer) -> PrecisionReal {
        let p = self.prec();
        if *k >= 0 {
            PrecisionReal {
                lo: Float::with_val_round(p, &self.lo * k, Round::Down).0,
                hi: Float::with_val_round(p, &self.hi * k, Round::Up).0,
            }
        } else {
            PrecisionReal {
                lo: Float::with_val_round(p, &self.hi * k, Round::Down).0,
                hi: Float::with_val_round(p, &self.lo * k, Round::Up).0,
            }
        }
    }

    /// Division; `other` must not contain zero.
    pub fn div(&self, other: &PrecisionReal) -> PrecisionReal {
        assert!(
            !other.contains_zero(),
            "interval division by an enclosure of zero"
        );
        let p = self.prec().max(other.prec());
        let pairs = [
            (&self.lo, &other.lo),
            (&self.lo, &other.hi),
            (&self.hi, &other.lo),
            (&self.hi, &other.hi),
        ];
        let mut lo: Option<Float> = None;
        let mut hi: Option<Float> = None;
        for (a, b) in pairs {
            let d = Float::with_val_round(p, a / b, Round::Down).0;
            let u = Float::with_val_round(p, a / b, Round::Up).0;
            lo = Some(match lo {
                Some(cur) => cur.min(&d),
                None => d,
            });
            hi = Some(match hi {
                Some(cur) => cur.max(&u),
                None => u,
            });
        }
        PrecisionReal {
            lo: lo.unwrap(),
            hi: hi.unwrap(),
        }
    }

    pub fn recip(&self) -> PrecisionReal {
        PrecisionReal::from_u64(self.prec(), 1).div(self)
    }

    /// Natural logarithm; requires a certified positive enclosure.
    pub fn ln(&self) -> PrecisionReal {
        assert!(self.is_positive(), "ln of a non-positive enclosure");
        let p = self.prec();
        let mut lo = Float::with_val(p, &self.lo);
        lo.ln_round(Round::Down);
        let mut hi = Float::with_val(p, &self.hi);
        hi.ln_round(Round::Up);
        PrecisionReal { lo, hi }
    }

    /// ln(1 + x); requires the enclosure to stay above -1.
    pub fn ln_1p(&self) -> PrecisionReal {
        assert!(self.lo > -1i32, "ln_1p below -1");
        let p = self.prec();
        let mut lo = Float::with_val(p, &self.lo);
        lo.ln_1p_round(Round::Down);
        let mut hi = Float::with_val(p, &self.hi);
        hi.ln_1p_round(Round::Up);
        PrecisionReal { lo, hi }
    }

    pub fn sqrt(&self) -> PrecisionReal {
        assert!(!self.is_negative(), "sqrt of a negative enclosure");
        let p = self.prec();
        let mut lo = self.lo.clone().max(&Float::new(p));
        lo.sqrt_round(Round::Down);
        let mut hi = Float::with_val(p, &self.hi);
        hi.sqrt_round(Round::Up);
        PrecisionReal { lo, hi }
    }

    /// Integer power. x^n is monotone for odd n and for non-negative bases;
    /// the remaining even-power cases go through abs.
    pub fn pow_u32(&self, n: u32) -> PrecisionReal {
        let p = self.prec();
        if n == 0 {
            return PrecisionReal::from_u64(p, 1);
        }
        if n % 2 == 1 || !self.lo.is_sign_negative() {
            return PrecisionReal {
                lo: Float::with_val_round(p, (&self.lo).pow(n), Round::Down).0,
                hi: Float::with_val_round(p, (&self.hi).pow(n), Round::Up).0,
            };
        }
        // even n, lo < 0
        if self.hi.is_sign_negative() {
            return PrecisionReal {
                lo: Float::with_val_round(p, (&self.hi).pow(n), Round::Down).0,
                hi: Float::with_val_round(p, (&self.lo).pow(n), Round::Up).0,
            };
        }
        let m = self.lo.clone().abs().max(&self.hi.clone().abs());
        PrecisionReal {
            lo: Float::new(p),
            hi: Float::with_val_round(p, (&m).pow(n), Round::Up).0,
        }
    }

    /// Widen the enclosure outward by `2^exp` on both sides.
    pub fn widen_2exp(&self, exp: i32) -> PrecisionReal {
        let p = self.prec();
        let delta = Float::with_val(p, Float::i_exp(1, exp));
        PrecisionReal {
            lo: Float::with_val_round(p, &self.lo - &delta, Round::Down).0,
            hi: Float::with_val_round(p, &self.hi + &delta, Round::Up).0,
        }
    }

    /// Recompute the enclosure at a different working precision.
    pub fn at_precision(&self, prec: u32) -> PrecisionReal {
        PrecisionReal {
            lo: Float::with_val_round(prec, &self.lo, Round::Down).0,
            hi: Float::with_val_round(prec, &self.hi, Round::Up).0,
        }
    }

    /// Distance to the nearest integer, as a certified enclosure in [0, 1/2].
    ///
    /// The subtraction x - round(x) is exact at the working precision as long
    /// as the integer part fits, so the only width comes from the input.
    pub fn nearest_int_distance(&self) -> PrecisionReal {
        let p = self.prec();
        let half = Float::with_val(p, 0.5f64);
        let n_lo = self
            .lo
            .to_integer()
            .expect("finite float rounds to an integer");
        let n_hi = self
            .hi
            .to_integer()
            .expect("finite float rounds to an integer");
        let dist = |x: &Float, n: &Integer| -> Float {
            Float::with_val_round(p, x - n, Round::Up).0.abs()
        };
        if n_lo == n_hi {
            let d_lo = dist(&self.lo, &n_lo);
            let d_hi = dist(&self.hi, &n_lo);
            let hi = d_lo.clone().max(&d_hi).min(&half);
            let lo = if self.contains_integer(&n_lo) {
                Float::new(p)
            } else {
                d_lo.min(&d_hi)
            };
            PrecisionReal { lo, hi }
        } else {
            // The interval crosses a half-integer (or a full integer).
            let delta = Integer::from(&n_hi - &n_lo);
            if delta > 1i32 {
                return PrecisionReal {
                    lo: Float::new(p),
                    hi: half,
                };
            }
            let crosses_integer = self.contains_integer(&n_lo) || self.contains_integer(&n_hi);
            let lo = if crosses_integer {
                Float::new(p)
            } else {
                dist(&self.lo, &n_lo).min(&dist(&self.hi, &n_hi))
            };
            PrecisionReal { lo, hi: half }
        }
    }
}

impl std::fmt::Display for PrecisionReal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{:.6e}, {:.6e}]", self.lo_f64(), self.hi_f64())
    }
}
