//! Reed-Muller codes as extended cyclic codes.
//!
//! Coordinates of `RM(m, r)` follow the extended-cyclic layout: position 0 is
//! the zero vector and position `i >= 1` is `beta^(i-1)`, with `beta` the
//! primitive element of `GF(2^m)` and points read off the polynomial basis.
//! Under this order `Ext` of the punctured cyclic code is literally `RM(m, r)`.

use num_rational::Ratio;
use serde::Serialize;

use crate::code::LinearCode;
use crate::cyclic::{dual_defining_set, sumset, CyclicContext, CyclicSpec};
use crate::error::{Error, Result};
use crate::gf::{binomial, nth_root_of_unity, Elem};

/// Largest `m` for which `RM(m, r)` is built as a matrix.
pub const MAX_RM_M: u32 = 7;

/// Number of ones in the binary expansion of `a`.
pub fn two_adic_weight(a: usize) -> u32 {
    a.count_ones()
}

fn check_m(m: u32, cap: u32) -> Result<()> {
    if m == 0 || m > cap {
        return Err(Error::invalid(format!("m = {m} outside 1..={cap}")));
    }
    Ok(())
}

/// Evaluations of all multilinear monomials of degree `<= r`.
pub fn rm_code(m: u32, r: u32) -> Result<LinearCode> {
    check_m(m, MAX_RM_M)?;
    if r > m {
        return Err(Error::invalid(format!("order r = {r} exceeds m = {m}")));
    }
    let n = 1usize << m;
    let (field, beta) = nth_root_of_unity(2, (n - 1) as u64)?;
    let base = crate::gf::Field::new(2, 1)?;
    let points: Vec<u32> = std::iter::once(0)
        .chain((0..n - 1).map(|i| field.pow(beta, i as u64).index()))
        .collect();
    let rows: Vec<Vec<Elem>> = (0u32..1 << m)
        .filter(|mono| mono.count_ones() <= r)
        .map(|mono| {
            points
                .iter()
                .map(|&pt| if pt & mono == mono { Elem::ONE } else { Elem::ZERO })
                .collect()
        })
        .collect();
    LinearCode::from_generator(&base, n, &rows)
}

/// `sum_{i <= r} C(m, i)`.
pub fn rm_dimension(m: u32, r: u32) -> u64 {
    (0..=r.min(m)).map(|i| binomial(m as u64, i as u64) as u64).sum()
}

/// `{a != 0 : wt(a) <= m - r - 1}` modulo `2^m - 1`.
pub fn punctured_rm_defining_set(m: u32, r: u32) -> Result<CyclicSpec> {
    check_m(m, 20)?;
    if r >= m {
        return Err(Error::invalid(format!("order r = {r} must be below m = {m}")));
    }
    let n = (1usize << m) - 1;
    let t = (1..n).filter(|&a| two_adic_weight(a) < m - r).collect();
    let spec = CyclicSpec {
        q: 2,
        n,
        defining_set: t,
    };
    if spec.dim() as u64 != rm_dimension(m, r) {
        return Err(Error::Inconsistent(format!(
            "punctured RM({m}, {r}) has dimension {}",
            spec.dim()
        )));
    }
    Ok(spec)
}

/// `union_{wt(a) <= m - r} C_a`, including `a = 0`.
pub fn literal_rm_defining_set(m: u32, r: u32) -> Result<CyclicSpec> {
    check_m(m, 20)?;
    let n = (1usize << m) - 1;
    let t = (0..n).filter(|&a| two_adic_weight(a) <= m - r.min(m)).collect();
    Ok(CyclicSpec {
        q: 2,
        n,
        defining_set: t,
    })
}

/// The cyclic code whose extension is `RM(m, r)`.
pub fn punctured_rm_code(m: u32, r: u32) -> Result<(CyclicContext, LinearCode)> {
    check_m(m, MAX_RM_M)?;
    let spec = punctured_rm_defining_set(m, r)?;
    let ctx = CyclicContext::new(2, spec.n)?;
    let code = ctx.code(&spec)?;
    Ok((ctx, code))
}

/// `C_{2, 2^m - 1, 0, delta}`. A designed distance below 2 keeps only `C_0`.
pub fn bch_zero_based(m: u32, delta: usize) -> Result<CyclicSpec> {
    let n = (1usize << m) - 1;
    if delta < 2 {
        return Ok(CyclicSpec {
            q: 2,
            n,
            defining_set: vec![0],
        });
    }
    crate::cyclic::bch_defining_set(2, n, 0, delta)
}

/// Outcome of comparing `Ext(B)^perp` with `(0, B^perp) + span(1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtDualCheck {
    pub m: u32,
    pub delta: usize,
    pub holds: bool,
    pub left_dim: usize,
    pub right_dim: usize,
}

/// Exact equality test for the dual of an extended zero-based BCH code.
pub fn prop71_check(m: u32, delta: usize) -> Result<ExtDualCheck> {
    check_m(m, MAX_RM_M)?;
    let spec = bch_zero_based(m, delta)?;
    let ctx = CyclicContext::new(2, spec.n)?;
    let bch = ctx.code(&spec)?;
    let left = bch.extend().dual();
    let mut rows: Vec<Vec<Elem>> = bch
        .dual()
        .generator()
        .row_vecs()
        .into_iter()
        .map(|row| std::iter::once(Elem::ZERO).chain(row).collect())
        .collect();
    rows.push(vec![Elem::ONE; spec.n + 1]);
    let right = LinearCode::from_generator(bch.field(), spec.n + 1, &rows)?;
    Ok(ExtDualCheck {
        m,
        delta,
        holds: left == right,
        left_dim: left.dim(),
        right_dim: right.dim(),
    })
}

/// Star-product rate for `RM(m, r)` storage against `Ext(BCH)^perp`
/// retrieval with designed distance `2^{r'+1} - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtendedCyclicRate {
    pub m: u32,
    pub r: u32,
    pub r_prime: u32,
    pub star_dim: usize,
    #[serde(with = "crate::frac")]
    pub rate: Ratio<i64>,
    /// `sum_{i <= m - r - r' - 1} C(m, i) / 2^m`: the all-RM alternative.
    #[serde(with = "crate::frac")]
    pub rm_rate: Ratio<i64>,
}

/// `(2^m - 1 - dim(C * B^perp)) / 2^m`, with the dimension from the sumset.
pub fn thm71_rate(m: u32, r: u32, r_prime: u32) -> Result<ExtendedCyclicRate> {
    check_m(m, 16)?;
    let storage = punctured_rm_defining_set(m, r)?;
    let delta = (1usize << (r_prime + 1)) - 1;
    let retrieval = dual_defining_set(&bch_zero_based(m, delta)?);
    let n = storage.n;
    let star_dim = sumset(&storage.nonzero_set(), &retrieval.nonzero_set(), n).len();
    let full = 1i64 << m;
    Ok(ExtendedCyclicRate {
        m,
        r,
        r_prime,
        star_dim,
        rate: Ratio::new(n as i64 - star_dim as i64, full),
        rm_rate: Ratio::new(rm_retrieval_dim(m, r, r_prime) as i64, full),
    })
}

fn rm_retrieval_dim(m: u32, r: u32, r_prime: u32) -> u64 {
    match m.checked_sub(r + r_prime + 1) {
        Some(top) => rm_dimension(m, top),
        None => 0,
    }
}

/// `{2^m - 1 - 2^h : 0 <= h < m}`, the weight-`(m-1)` residues.
pub fn weight_m_minus_one_set(m: u32) -> Vec<usize> {
    let n = (1usize << m) - 1;
    let mut s: Vec<usize> = (0..m).map(|h| n - (1 << h)).collect();
    s.sort_unstable();
    s
}

/// Counts for `S1 + (C_0 u C_{-1} u C_{-3} u C_{-5})` modulo `2^m - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SumsetCount {
    pub m: u32,
    pub s1_len: usize,
    pub count: usize,
    /// `m + m(m-1)/2 + 2m^2`.
    pub claimed_max: usize,
}

pub fn example71_count(m: u32) -> Result<SumsetCount> {
    example71_count_with(m, &weight_m_minus_one_set(m))
}

pub fn example71_count_with(m: u32, s1: &[usize]) -> Result<SumsetCount> {
    if !(4..=20).contains(&m) {
        return Err(Error::invalid(format!("m = {m} outside 4..=20")));
    }
    let n = (1usize << m) - 1;
    let ctx_cosets = crate::cyclic::cyclotomic_cosets(n, 2)?;
    let coset = |i: usize| ctx_cosets.iter().find(|c| c.contains(&i)).unwrap().clone();
    let mut s2: Vec<usize> = [0, n - 1, n - 3, n - 5].into_iter().flat_map(coset).collect();
    s2.sort_unstable();
    s2.dedup();
    let mm = m as usize;
    Ok(SumsetCount {
        m,
        s1_len: s1.len(),
        count: sumset(s1, &s2, n).len(),
        claimed_max: mm + mm * (mm - 1) / 2 + 2 * mm * mm,
    })
}

/// The listed form `{sum_{i != h} 2^i : 1 <= h <= m-1} u {2^{m-1} - 1}`,
/// deduplicated.
pub fn example71_listed_set(m: u32) -> Vec<usize> {
    let n = (1usize << m) - 1;
    let mut s: Vec<usize> = (1..m).map(|h| n - (1 << h)).collect();
    s.push((1 << (m - 1)) - 1);
    s.sort_unstable();
    s.dedup();
    s
}

/// Checks `Ext(code of T) = RM(m, r)` for a candidate defining set.
pub fn extends_to_rm(m: u32, r: u32, spec: &CyclicSpec) -> Result<bool> {
    let ctx = CyclicContext::new(2, spec.n)?;
    Ok(ctx.code(spec)?.extend() == rm_code(m, r)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::Distance;

    #[test]
    fn rm_parameters() {
        for m in 1..=5 {
            for r in 0..=m {
                let c = rm_code(m, r).unwrap();
                assert_eq!(c.dim() as u64, rm_dimension(m, r));
                assert_eq!(c.min_distance().unwrap(), Distance::Finite(1 << (m - r)));
            }
        }
        let f = crate::gf::Field::new(2, 1).unwrap();
        assert_eq!(rm_code(4, 0).unwrap(), LinearCode::replicated(&f, 16));
        assert_eq!(rm_code(3, 3).unwrap(), LinearCode::full(&f, 8));
        assert!(rm_code(3, 4).is_err());
        assert!(rm_code(8, 1).is_err());
    }

    #[test]
    fn rm_duality() {
        for m in 1..=6 {
            for r in 0..m {
                assert_eq!(rm_code(m, r).unwrap().dual(), rm_code(m, m - r - 1).unwrap());
            }
        }
    }

    #[test]
    fn extension_of_punctured_code_is_rm() {
        for m in 2..=5 {
            for r in 0..m {
                let (_, code) = punctured_rm_code(m, r).unwrap();
                assert_eq!(code.extend(), rm_code(m, r).unwrap(), "m={m} r={r}");
            }
        }
        assert_eq!(punctured_rm_defining_set(3, 1).unwrap().defining_set, vec![1, 2, 4]);
        assert_eq!(punctured_rm_defining_set(4, 1).unwrap().dim(), 5);
        assert!(punctured_rm_defining_set(4, 3).unwrap().defining_set.is_empty());
    }

    #[test]
    fn literal_set_never_extends_to_rm() {
        for m in 2..=5 {
            for r in 0..m {
                let spec = literal_rm_defining_set(m, r).unwrap();
                assert!(!extends_to_rm(m, r, &spec).unwrap());
            }
        }
    }

    #[test]
    fn ext_dual_identity() {
        for (m, delta) in [(3, 2), (4, 3), (4, 5), (5, 7), (3, 1)] {
            let check = prop71_check(m, delta).unwrap();
            assert!(check.holds, "{check:?}");
            assert_eq!(check.left_dim, check.right_dim);
        }
    }

    #[test]
    fn zero_order_retrieval_is_trivial() {
        for m in 3..=6 {
            let rate = thm71_rate(m, 1, 0).unwrap();
            let dim = rm_dimension(m, 1) as i64;
            assert_eq!(rate.rate, Ratio::new((1 << m) - 1 - dim, 1 << m));
        }
    }

    #[test]
    fn sumset_dimension_matches_realized_star() {
        for (m, r, rp) in [(4, 1, 1), (5, 1, 2), (5, 2, 1), (6, 1, 2)] {
            let rate = thm71_rate(m, r, rp).unwrap();
            let (ctx, c) = punctured_rm_code(m, r).unwrap();
            let b = ctx.code(&bch_zero_based(m, (1 << (rp + 1)) - 1).unwrap()).unwrap();
            assert_eq!(c.star(&b.dual()).unwrap().dim(), rate.star_dim);
        }
    }

    #[test]
    fn listed_set_has_a_repeat() {
        assert_eq!(example71_listed_set(5).len(), 4);
        assert_eq!(weight_m_minus_one_set(5), vec![15, 23, 27, 29, 30]);
        let c = example71_count(5).unwrap();
        assert_eq!((c.s1_len, c.claimed_max), (5, 65));
        assert!(c.count <= c.claimed_max);
    }
}
