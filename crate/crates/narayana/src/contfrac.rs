//! Certified continued fraction expansion. A partial quotient is emitted
//! only when the expansions of both interval endpoints agree on it, so every
//! convergent listed here is a true convergent of the enclosed number.

use rug::{Assign, Integer, Rational};

use crate::error::{Error, Result};
use crate::real::PrecisionReal;

#[derive(Clone, Debug)]
pub struct ContinuedFraction {
    /// a0, a1, ... with ai >= 1 for i >= 1.
    pub partial_quotients: Vec<Integer>,
    /// (p_i, q_i), same indexing as the partial quotients.
    pub convergents: Vec<(Integer, Integer)>,
    /// The expansion ended because the input was rational (exact).
    pub terminated: bool,
    /// Fewer certified terms than requested; re-run at higher precision.
    pub exhausted: bool,
}

impl ContinuedFraction {
    pub fn len(&self) -> usize {
        self.partial_quotients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partial_quotients.is_empty()
    }

    /// Exact determinant identity p_i q_{i-1} - p_{i-1} q_i = (-1)^(i-1).
    pub fn determinant_identity_holds(&self) -> bool {
        self.convergents.windows(2).enumerate().all(|(i, w)| {
            let (ref p0, ref q0) = w[0];
            let (ref p1, ref q1) = w[1];
            let det = Integer::from(p1 * q0) - Integer::from(p0 * q1);
            // index of the later convergent is i + 1
            det == if i % 2 == 0 { 1 } else { -1 }
        })
    }
}

fn floor_int(x: &Rational) -> Integer {
    let mut n = Integer::new();
    n.assign(x.floor_ref());
    n
}

/// Expansion driven by two exact rational endpoints. With `lo == hi` this is
/// the exact Euclidean expansion and terminates; otherwise terms stop as soon
/// as the endpoints disagree.
pub fn cf_from_endpoints(lo: &Rational, hi: &Rational, max_terms: usize) -> ContinuedFraction {
    assert!(lo <= hi);
    let mut quots = Vec::new();
    let mut convs: Vec<(Integer, Integer)> = Vec::new();
    // (p1, q1) holds the previous convergent, (p0, q0) the one before it
    let (mut p0, mut q0) = (Integer::from(0), Integer::from(1));
    let (mut p1, mut q1) = (Integer::from(1), Integer::from(0));
    let mut lo = lo.clone();
    let mut hi = hi.clone();
    let mut terminated = false;
    let exact = lo == hi;

    while quots.len() < max_terms {
        let a_lo = floor_int(&lo);
        let a_hi = floor_int(&hi);
        if a_lo != a_hi {
            break; // endpoints disagree: no further certified term
        }
        let a = a_lo;
        let np = Integer::from(&a * &p1) + &p0;
        let nq = Integer::from(&a * &q1) + &q0;
        p0 = std::mem::replace(&mut p1, np);
        q0 = std::mem::replace(&mut q1, nq);
        quots.push(a.clone());
        convs.push((p1.clone(), q1.clone()));

        let flo = Rational::from(&lo - &a);
        let fhi = Rational::from(&hi - &a);
        if exact {
            if flo.cmp0() == std::cmp::Ordering::Equal {
                terminated = true;
                break;
            }
            let next = flo.recip();
            lo = next.clone();
            hi = next;
        } else {
            if flo.cmp0() == std::cmp::Ordering::Equal
                || fhi.cmp0() == std::cmp::Ordering::Equal
            {
                // an endpoint landed on an integer: the next term cannot be
                // certified from this enclosure
                break;
            }
            // reciprocal flips the interval
            let new_lo = fhi.recip();
            let new_hi = flo.recip();
            lo = new_lo;
            hi = new_hi;
        }
    }

    let exhausted = !terminated && quots.len() < max_terms;
    ContinuedFraction {
        partial_quotients: quots,
        convergents: convs,
        terminated,
        exhausted,
    }
}

/// Certified expansion of an enclosed real.
///
/// Errors with `PrecisionExhausted` when fewer than `max_terms` certified
/// terms are available and the value is not provably rational at this
/// precision; the caller re-runs at higher precision.
pub fn cf_expand(x: &PrecisionReal, max_terms: usize) -> Result<ContinuedFraction> {
    assert!(x.is_positive(), "cf_expand expects a positive value");
    let (lo, hi) = x.rational_endpoints();
    let cf = cf_from_endpoints(&lo, &hi, max_terms);
    if cf.exhausted {
        return Err(Error::PrecisionExhausted(cf.len(), max_terms));
    }
    Ok(cf)
}

/// Exact expansion of a rational number; always terminates.
pub fn cf_expand_rational(x: &Rational, max_terms: usize) -> ContinuedFraction {
    cf_from_endpoints(x, x, max_terms)
}

/// Least-index convergent with q strictly above the threshold.
pub fn convergent_exceeding<'a>(
    cf: &'a ContinuedFraction,
    threshold: &Integer,
) -> Result<(usize, &'a (Integer, Integer))> {
    cf.convergents
        .iter()
        .enumerate()
        .find(|(_, (_, q))| q > threshold)
        .ok_or(Error::NotReached)
}
