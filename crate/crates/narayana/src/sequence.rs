//! Narayana's cows sequence N(n) = N(n-1) + N(n-3), N(0) = 0,
//! N(1) = N(2) = N(3) = 1, extended to negative indices by running the
//! recurrence backwards: N(n-3) = N(n) - N(n-1).

use rug::Integer;

use crate::algebraic::{binet_coefficient_a, real_root_alpha};
use crate::error::{Error, Result};
use crate::real::PrecisionReal;

pub const DEFAULT_MAX_INDEX: i64 = 1_000_000;

/// Incrementally extended cache of sequence values in both directions.
/// Reads of already-materialized values never mutate; extension needs `&mut`.
#[derive(Debug, Default)]
pub struct SequenceCache {
    /// values[i] = N(i)
    forward: Vec<Integer>,
    /// negative[i] = N(-(i+1))
    backward: Vec<Integer>,
}

impl SequenceCache {
    pub fn new() -> Self {
        SequenceCache {
            forward: vec![
                Integer::from(0),
                Integer::from(1),
                Integer::from(1),
                Integer::from(1),
            ],
            backward: Vec::new(),
        }
    }

    pub fn get(&mut self, n: i64) -> Result<&Integer> {
        if n.abs() > DEFAULT_MAX_INDEX {
            return Err(Error::IndexOutOfRange(n, DEFAULT_MAX_INDEX));
        }
        if n >= 0 {
            let idx = n as usize;
            while self.forward.len() <= idx {
                let k = self.forward.len();
                let next = Integer::from(&self.forward[k - 1] + &self.forward[k - 3]);
                self.forward.push(next);
            }
            Ok(&self.forward[idx])
        } else {
            let idx = (-n - 1) as usize;
            while self.backward.len() <= idx {
                let k = self.backward.len();
                // N(m) = N(m+3) - N(m+2) with m = -(k+1)
                let m = -(k as i64 + 1);
                let next = Integer::from(self.peek(m + 3) - self.peek(m + 2));
                self.backward.push(next);
            }
            Ok(&self.backward[idx])
        }
    }

    /// Already-materialized value; panics otherwise.
    fn peek(&self, j: i64) -> &Integer {
        if j >= 0 {
            &self.forward[j as usize]
        } else {
            &self.backward[(-j - 1) as usize]
        }
    }
}

/// Stateless exact evaluation; safe to call from parallel contexts.
pub fn narayana(n: i64) -> Result<Integer> {
    let mut cache = SequenceCache::new();
    cache.get(n).cloned()
}

pub fn narayana_range(from: i64, to: i64) -> Result<Vec<Integer>> {
    assert!(from <= to, "narayana_range requires from <= to");
    let mut cache = SequenceCache::new();
    // touch the endpoints once so both directions are materialized
    cache.get(from)?;
    cache.get(to)?;
    (from..=to).map(|n| cache.get(n).cloned()).collect()
}

/// |N(n) - a alpha^n| as a certified upper enclosure. The paper's residual
/// bound says this stays below alpha^(-n/2) for n > 1.
pub fn binet_residual(n: u64, precision_bits: u32) -> Result<PrecisionReal> {
    assert!(n > 1, "residual bound is stated for n > 1");
    // alpha^n needs about 0.552 n bits of headroom before the fractional
    // residual drowns in rounding
    let needed = (0.552 * n as f64) as u32 + 64;
    if needed > precision_bits {
        return Err(Error::PrecisionExhausted(
            precision_bits as usize,
            needed as usize,
        ));
    }
    let work = precision_bits + 16;
    let alpha = real_root_alpha(work);
    let a = binet_coefficient_a(work);
    let value = narayana(n as i64)?;
    let approx = a.mul(&alpha.value().pow_u32(n as u32));
    let residual = approx.sub(&PrecisionReal::from_integer(work, &value)).abs();
    Ok(residual.at_precision(precision_bits))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_terms_and_n31() {
        assert_eq!(narayana(0).unwrap(), 0);
        assert_eq!(narayana(31).unwrap(), 58425);
        assert_eq!(
            narayana_range(0, 3).unwrap(),
            vec![0, 1, 1, 1].into_iter().map(Integer::from).collect::<Vec<_>>()
        );
    }

    #[test]
    fn forward_range_matches_recurrence() {
        let vals = narayana_range(4, 10).unwrap();
        let expect: Vec<Integer> = [2, 3, 4, 6, 9, 13, 19].iter().map(|&v| Integer::from(v)).collect();
        assert_eq!(vals, expect);
    }

    #[test]
    fn negative_indices() {
        assert_eq!(narayana(-4).unwrap(), -1);
        let vals = narayana_range(-4, -1).unwrap();
        let expect: Vec<Integer> = [-1, 0, 1, 0].iter().map(|&v| Integer::from(v)).collect();
        assert_eq!(vals, expect);
    }

    #[test]
    fn recurrence_closure_both_directions() {
        let vals = narayana_range(-30, 60).unwrap();
        for i in 3..vals.len() {
            assert_eq!(vals[i], Integer::from(&vals[i - 1] + &vals[i - 3]));
        }
    }

    #[test]
    fn index_out_of_range() {
        assert!(matches!(
            narayana(DEFAULT_MAX_INDEX + 1),
            Err(Error::IndexOutOfRange(_, _))
        ));
    }

    #[test]
    fn residual_small_cases() {
        // n = 10: |N(10) - a alpha^10| < alpha^(-5)
        let r = binet_residual(10, 256).unwrap();
        let alpha = real_root_alpha(256);
        let bound = alpha.value().pow_u32(5).recip();
        assert!(r.certainly_less_than(&bound));

        // n = 2 boundary of "for all n > 1"
        let r2 = binet_residual(2, 256).unwrap();
        let bound2 = real_root_alpha(256).value().recip();
        assert!(r2.certainly_less_than(&bound2));
    }

    #[test]
    fn residual_precision_exhaustion() {
        assert!(matches!(
            binet_residual(5000, 256),
            Err(Error::PrecisionExhausted(_, _))
        ));
    }
}
