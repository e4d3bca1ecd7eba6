//! Base-rho digit strings, decomposition into three constant blocks, the
//! closed-form reconstruction
//! (d1 rho^(l+m+k) - (d1-d2) rho^(m+k) - (d2-d3) rho^k - d3) / (rho - 1),
//! and the exhaustive search over Narayana numbers.

use rug::ops::Pow;
use rug::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sequence::SequenceCache;

pub const MAX_BASE: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitString {
    pub base: u32,
    /// Most significant first.
    pub digits: Vec<u32>,
}

/// One solution shape of the concatenation equation: `ell` copies of `d1`,
/// then `m` copies of `d2`, then `k` copies of `d3`, read in base `base`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ConcatPattern {
    pub base: u32,
    pub d1: u32,
    pub d2: u32,
    pub d3: u32,
    pub ell: u32,
    pub m: u32,
    pub k: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchHit {
    pub n: i64,
    #[serde(serialize_with = "crate::report::serialize_integer")]
    pub value: Integer,
    pub patterns: Vec<ConcatPattern>,
}

pub fn to_digits(v: &Integer, base: u32) -> Result<DigitString> {
    if base < 2 {
        return Err(Error::BaseTooSmall(base));
    }
    assert!(v.cmp0() != std::cmp::Ordering::Less, "to_digits expects v >= 0");
    if v.cmp0() == std::cmp::Ordering::Equal {
        return Ok(DigitString {
            base,
            digits: vec![0],
        });
    }
    let mut digits = Vec::new();
    let mut rest = v.clone();
    while rest.cmp0() != std::cmp::Ordering::Equal {
        let (q, r) = rest.div_rem(Integer::from(base));
        digits.push(r.to_u32().expect("remainder below base"));
        rest = q;
    }
    digits.reverse();
    Ok(DigitString { base, digits })
}

impl DigitString {
    pub fn to_string_plain(&self) -> String {
        if self.base <= 10 {
            self.digits.iter().map(|d| char::from(b'0' + *d as u8)).collect()
        } else {
            self.digits
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(".")
        }
    }
}

/// Maximal constant runs of the digit string, in order.
pub fn maximal_runs(ds: &DigitString) -> Vec<(u32, u32)> {
    assert!(!ds.digits.is_empty());
    let mut runs: Vec<(u32, u32)> = Vec::new();
    for &d in &ds.digits {
        match runs.last_mut() {
            Some((last, len)) if *last == d => *len += 1,
            _ => runs.push((d, 1)),
        }
    }
    runs
}

/// All ways to split the digit string into exactly three constant blocks.
///
/// A cut inside a run splits it into two blocks of the same digit, so the
/// splits are: the unique one when there are three maximal runs, boundary
/// plus one free cut for two runs, and any two cuts for a single run.
/// `enforce_ordering` keeps only splits with k <= m <= ell.
pub fn three_block_patterns(ds: &DigitString, enforce_ordering: bool) -> Vec<ConcatPattern> {
    let len = ds.digits.len() as u32;
    if len < 3 || ds.digits[0] == 0 {
        return Vec::new();
    }
    let runs = maximal_runs(ds);
    let mut out = Vec::new();
    let mut push = |ell: u32, m: u32, k: u32| {
        let d1 = ds.digits[0];
        let d2 = ds.digits[ell as usize];
        let d3 = ds.digits[(ell + m) as usize];
        if !enforce_ordering || (k <= m && m <= ell) {
            out.push(ConcatPattern {
                base: ds.base,
                d1,
                d2,
                d3,
                ell,
                m,
                k,
            });
        }
    };
    match runs.len() {
        1 => {
            // cuts at any 1 <= i < j <= len - 1
            for i in 1..len - 1 {
                for j in i + 1..len {
                    push(i, j - i, len - j);
                }
            }
        }
        2 => {
            let boundary = runs[0].1;
            for cut in 1..len {
                if cut == boundary {
                    continue;
                }
                let (i, j) = if cut < boundary {
                    (cut, boundary)
                } else {
                    (boundary, cut)
                };
                push(i, j - i, len - j);
            }
        }
        3 => {
            push(runs[0].1, runs[1].1, runs[2].1);
        }
        _ => {}
    }
    out.sort();
    out
}

/// Exact value of a three-block pattern via the closed form; the division by
/// rho - 1 must be exact.
pub fn reconstruct(p: &ConcatPattern) -> Result<Integer> {
    assert!(p.base >= 2 && p.d1 >= 1 && p.d1 < p.base);
    assert!(p.d2 < p.base && p.d3 < p.base);
    assert!(p.ell >= 1 && p.m >= 1 && p.k >= 1);
    let rho = Integer::from(p.base);
    let smk = Integer::from(rho.clone().pow(p.m + p.k));
    let sk = Integer::from(rho.clone().pow(p.k));
    let total = Integer::from(rho.clone().pow(p.ell + p.m + p.k));
    let num = total * p.d1 - smk * (p.d1 as i64 - p.d2 as i64)
        - sk * (p.d2 as i64 - p.d3 as i64)
        - p.d3;
    let (q, r) = num.div_rem(Integer::from(p.base - 1));
    if r.cmp0() != std::cmp::Ordering::Equal {
        return Err(Error::NonExactDivision);
    }
    Ok(q)
}

/// Scans Narayana numbers over the given index and base ranges, reporting
/// every n whose value admits at least one three-block split in some base.
/// Output is grouped by n, patterns sorted by (base, ell, m, k).
pub fn search_hits(
    bases: std::ops::RangeInclusive<u32>,
    ns: std::ops::RangeInclusive<i64>,
    enforce_ordering: bool,
) -> Result<Vec<SearchHit>> {
    assert!(*bases.start() >= 2 && *bases.end() <= MAX_BASE);
    let n_lo = (*ns.start()).max(4);
    let n_hi = *ns.end();
    let mut cache = SequenceCache::new();
    let mut hits = Vec::new();
    for n in n_lo..=n_hi {
        let value = cache.get(n)?.clone();
        let mut patterns = Vec::new();
        for base in bases.clone() {
            let ds = to_digits(&value, base)?;
            patterns.extend(three_block_patterns(&ds, enforce_ordering));
        }
        if !patterns.is_empty() {
            patterns.sort();
            hits.push(SearchHit { n, value, patterns });
        }
    }
    Ok(hits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(base: u32, digits: &[u32]) -> DigitString {
        DigitString {
            base,
            digits: digits.to_vec(),
        }
    }

    #[test]
    fn digits_of_known_solutions() {
        assert_eq!(
            to_digits(&Integer::from(58425), 5).unwrap().digits,
            vec![3, 3, 3, 2, 2, 0, 0]
        );
        assert_eq!(to_digits(&Integer::from(0), 7).unwrap().digits, vec![0]);
        assert_eq!(
            to_digits(&Integer::from(18560), 8).unwrap().digits,
            vec![4, 4, 2, 0, 0]
        );
    }

    #[test]
    fn base_too_small() {
        assert!(matches!(
            to_digits(&Integer::from(5), 1),
            Err(Error::BaseTooSmall(1))
        ));
    }

    #[test]
    fn runs_examples() {
        assert_eq!(
            maximal_runs(&ds(5, &[3, 3, 3, 2, 2, 0, 0])),
            vec![(3, 3), (2, 2), (0, 2)]
        );
        assert_eq!(maximal_runs(&ds(2, &[1, 1, 1])), vec![(1, 3)]);
        assert_eq!(
            maximal_runs(&ds(2, &[1, 0, 0, 0, 0, 0, 0, 1])),
            vec![(1, 1), (0, 6), (1, 1)]
        );
    }

    #[test]
    fn three_runs_unique_split() {
        let patterns = three_block_patterns(&ds(5, &[3, 3, 3, 2, 2, 0, 0]), false);
        assert_eq!(patterns.len(), 1);
        let p = &patterns[0];
        assert_eq!((p.d1, p.ell, p.d2, p.m, p.d3, p.k), (3, 3, 2, 2, 0, 2));
    }

    #[test]
    fn three_digit_string_single_split() {
        // 4 = 100 in base 2: exactly one split over three digits
        let patterns = three_block_patterns(&ds(2, &[1, 0, 0]), false);
        assert_eq!(patterns.len(), 1);
        assert_eq!(
            (patterns[0].ell, patterns[0].m, patterns[0].k),
            (1, 1, 1)
        );
    }

    #[test]
    fn four_runs_no_split() {
        assert!(three_block_patterns(&ds(10, &[5, 8, 9, 6]), false).is_empty());
    }

    #[test]
    fn ordering_flag_filters() {
        // 129 = 10000001 in base 2 forces m = 6 > ell = 1
        let patterns = three_block_patterns(&ds(2, &[1, 0, 0, 0, 0, 0, 0, 1]), false);
        assert_eq!(patterns.len(), 1);
        assert!(three_block_patterns(&ds(2, &[1, 0, 0, 0, 0, 0, 0, 1]), true).is_empty());
    }

    #[test]
    fn reconstruct_known_values() {
        let p = ConcatPattern {
            base: 5,
            d1: 3,
            d2: 2,
            d3: 0,
            ell: 3,
            m: 2,
            k: 2,
        };
        assert_eq!(reconstruct(&p).unwrap(), 58425);
        let p = ConcatPattern {
            base: 2,
            d1: 1,
            d2: 1,
            d3: 1,
            ell: 1,
            m: 1,
            k: 1,
        };
        assert_eq!(reconstruct(&p).unwrap(), 7);
        let p = ConcatPattern {
            base: 10,
            d1: 1,
            d2: 2,
            d3: 9,
            ell: 1,
            m: 1,
            k: 1,
        };
        assert_eq!(reconstruct(&p).unwrap(), 129);
    }

    #[test]
    fn search_single_cell() {
        let hits = search_hits(5..=5, 31..=31, false).unwrap();
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].value, 58425);
        assert_eq!(hits[0].patterns.len(), 1);
    }

    #[test]
    fn search_two_digit_value_excluded() {
        // N(4) = 2 = 10 in base 2: only two digits
        assert!(search_hits(2..=2, 4..=4, false).unwrap().is_empty());
    }

    proptest::proptest! {
        #[test]
        fn round_trip_pattern(
            base in 2u32..=16u32,
            d1r in 0u32..1000,
            d2r in 0u32..1000,
            d3r in 0u32..1000,
            ell in 1u32..=13u32,
            m in 1u32..=13u32,
            k in 1u32..=13u32,
        ) {
            let p = ConcatPattern {
                base,
                d1: 1 + d1r % (base - 1),
                d2: d2r % base,
                d3: d3r % base,
                ell,
                m,
                k,
            };
            let v = reconstruct(&p).unwrap();
            let ds = to_digits(&v, base).unwrap();
            let mut expect = Vec::new();
            expect.extend(std::iter::repeat(p.d1).take(ell as usize));
            expect.extend(std::iter::repeat(p.d2).take(m as usize));
            expect.extend(std::iter::repeat(p.d3).take(k as usize));
            proptest::prop_assert_eq!(ds.digits, expect);
        }
    }
}
