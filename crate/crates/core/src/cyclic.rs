//! Cyclic codes described by defining sets.
//!
//! A [`CyclicContext`] fixes `(q, n)`, the splitting field `GF(q^m)` and the
//! primitive `n`-th root of unity `beta`. Codes are described by their
//! defining set `T` (exponents `i` with `g(beta^i) = 0`); the nonzero set
//! `S = Z_n \ T` is what star products act on.

use std::collections::BTreeSet;

use num_rational::Ratio;
use serde::Serialize;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf::{nth_root_of_unity, order_of, prime_power, Elem, Embedding, Field, Poly};

/// `(q, n, T)` with `T` sorted and closed under multiplication by `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CyclicSpec {
    pub q: u64,
    pub n: usize,
    pub defining_set: Vec<usize>,
}

impl CyclicSpec {
    pub fn nonzero_set(&self) -> Vec<usize> {
        complement(&self.defining_set, self.n)
    }

    pub fn from_nonzero_set(q: u64, n: usize, nonzero: &[usize]) -> CyclicSpec {
        CyclicSpec {
            q,
            n,
            defining_set: complement(nonzero, n),
        }
    }

    /// Dimension of the realized code.
    pub fn dim(&self) -> usize {
        self.n - self.defining_set.len()
    }
}

fn complement(set: &[usize], n: usize) -> Vec<usize> {
    let mut mark = vec![false; n];
    for &i in set {
        mark[i % n.max(1)] = true;
    }
    (0..n).filter(|&i| !mark[i]).collect()
}

fn normalize(set: impl IntoIterator<Item = usize>, n: usize) -> Vec<usize> {
    set.into_iter()
        .map(|i| i % n)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// `{a + b mod n}`; empty when either side is empty.
pub fn sumset(s1: &[usize], s2: &[usize], n: usize) -> Vec<usize> {
    let mut mark = vec![false; n];
    for &a in s1 {
        for &b in s2 {
            mark[(a + b) % n] = true;
        }
    }
    (0..n).filter(|&i| mark[i]).collect()
}

/// `{-i mod n}`, sorted.
pub fn negate(set: &[usize], n: usize) -> Vec<usize> {
    normalize(set.iter().map(|&i| (n - i % n) % n), n)
}

/// Cyclotomic cosets of `q` modulo `n`, ordered by smallest member.
pub fn cyclotomic_cosets(n: usize, q: u64) -> Result<Vec<Vec<usize>>> {
    order_of(q, n as u64)?;
    let mut seen = vec![false; n];
    let mut cosets = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut coset = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            coset.push(i);
            i = ((i as u128 * q as u128) % n as u128) as usize;
        }
        cosets.push(coset);
    }
    Ok(cosets)
}

pub fn coset_count(n: usize, q: u64) -> Result<usize> {
    Ok(cyclotomic_cosets(n, q)?.len())
}

/// Union of the cosets through `b, b + 1, ..., b + delta - 2`.
pub fn bch_defining_set(q: u64, n: usize, b: usize, delta: usize) -> Result<CyclicSpec> {
    if delta < 2 {
        return Err(Error::invalid(format!("designed distance {delta} must be at least 2")));
    }
    let cosets = cyclotomic_cosets(n, q)?;
    let index = coset_index(&cosets, n);
    let mut chosen = vec![false; cosets.len()];
    for j in 0..delta - 1 {
        chosen[index[(b + j) % n]] = true;
    }
    let t = cosets
        .iter()
        .zip(&chosen)
        .filter(|(_, &c)| c)
        .flat_map(|(c, _)| c.iter().copied());
    Ok(CyclicSpec {
        q,
        n,
        defining_set: normalize(t, n),
    })
}

/// `{-i : i not in T}`: the defining set of the dual code.
pub fn dual_defining_set(spec: &CyclicSpec) -> CyclicSpec {
    CyclicSpec {
        q: spec.q,
        n: spec.n,
        defining_set: negate(&spec.nonzero_set(), spec.n),
    }
}

/// Defining set of the star product: nonzero set `S1 + S2`.
pub fn star_cyclic(a: &CyclicSpec, b: &CyclicSpec) -> Result<CyclicSpec> {
    if (a.q, a.n) != (b.q, b.n) {
        return Err(Error::DimensionMismatch(format!(
            "cyclic specs over (q, n) = ({}, {}) and ({}, {})",
            a.q, a.n, b.q, b.n
        )));
    }
    let s = sumset(&a.nonzero_set(), &b.nonzero_set(), a.n);
    Ok(CyclicSpec::from_nonzero_set(a.q, a.n, &s))
}

fn coset_index(cosets: &[Vec<usize>], n: usize) -> Vec<usize> {
    let mut index = vec![0; n];
    for (c, coset) in cosets.iter().enumerate() {
        for &i in coset {
            index[i] = c;
        }
    }
    index
}

/// The splitting data for cyclic codes of length `n` over `GF(q)`.
#[derive(Clone, Debug)]
pub struct CyclicContext {
    q: u64,
    n: usize,
    base: Field,
    ext: Field,
    beta: Elem,
    embed: Embedding,
    cosets: Vec<Vec<usize>>,
    index: Vec<usize>,
}

impl CyclicContext {
    pub fn new(q: u64, n: usize) -> Result<CyclicContext> {
        if n == 0 {
            return Err(Error::invalid("length must be positive"));
        }
        prime_power(q)?;
        let base = Field::with_order(q)?;
        let (ext, beta) = nth_root_of_unity(q, n as u64)?;
        let embed = base.embedding_into(&ext)?;
        let cosets = cyclotomic_cosets(n, q)?;
        let index = coset_index(&cosets, n);
        Ok(CyclicContext {
            q,
            n,
            base,
            ext,
            beta,
            embed,
            cosets,
            index,
        })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `ord_n(q)`, the degree of the splitting field over `GF(q)`.
    pub fn m(&self) -> u32 {
        self.ext.degree() / self.base.degree()
    }

    pub fn base_field(&self) -> &Field {
        &self.base
    }

    pub fn splitting_field(&self) -> &Field {
        &self.ext
    }

    pub fn beta(&self) -> Elem {
        self.beta
    }

    pub fn cosets(&self) -> &[Vec<usize>] {
        &self.cosets
    }

    pub fn coset_of(&self, i: usize) -> &[usize] {
        &self.cosets[self.index[i % self.n]]
    }

    /// Smallest union of cosets containing `set`.
    pub fn closure(&self, set: &[usize]) -> Vec<usize> {
        normalize(set.iter().flat_map(|&i| self.coset_of(i).iter().copied()), self.n)
    }

    pub fn is_closed(&self, set: &[usize]) -> bool {
        self.closure(set) == normalize(set.iter().copied(), self.n)
    }

    pub fn spec(&self, defining_set: &[usize]) -> Result<CyclicSpec> {
        if defining_set.iter().any(|&i| i >= self.n) {
            return Err(Error::invalid("defining set entry out of range"));
        }
        if !self.is_closed(defining_set) {
            return Err(Error::invalid("defining set is not a union of cyclotomic cosets"));
        }
        Ok(CyclicSpec {
            q: self.q,
            n: self.n,
            defining_set: normalize(defining_set.iter().copied(), self.n),
        })
    }

    /// Every cyclic code of this length: one spec per subset of cosets.
    pub fn all_specs(&self) -> Result<Vec<CyclicSpec>> {
        let count = self.cosets.len();
        if count > 20 {
            return Err(Error::cap(format!("2^{count} coset subsets"), 20));
        }
        Ok((0u64..1 << count)
            .map(|mask| {
                let t = (0..count)
                    .filter(|c| mask >> c & 1 == 1)
                    .flat_map(|c| self.cosets[c].iter().copied());
                CyclicSpec {
                    q: self.q,
                    n: self.n,
                    defining_set: normalize(t, self.n),
                }
            })
            .collect())
    }

    pub fn bch(&self, b: usize, delta: usize) -> Result<CyclicSpec> {
        bch_defining_set(self.q, self.n, b, delta)
    }

    /// Minimal polynomial of `beta^i` over `GF(q)`.
    pub fn minimal_polynomial(&self, i: usize) -> Result<Poly> {
        let mut acc = Poly::one();
        for &j in self.coset_of(i) {
            let root = self.ext.pow(self.beta, j as u64);
            acc = acc.mul(&Poly::linear(root, &self.ext), &self.ext);
        }
        acc.try_map(|c| self.embed.pull_back(c))
            .ok_or_else(|| Error::Inconsistent(format!("minimal polynomial of beta^{i} left the base field")))
    }

    /// Product of the minimal polynomials of the cosets in `T`.
    pub fn generator_polynomial(&self, spec: &CyclicSpec) -> Result<Poly> {
        self.check(spec)?;
        let mut g = Poly::one();
        for coset in &self.cosets {
            if spec.defining_set.binary_search(&coset[0]).is_ok() {
                g = g.mul(&self.minimal_polynomial(coset[0])?, &self.base);
            }
        }
        Ok(g)
    }

    fn check(&self, spec: &CyclicSpec) -> Result<()> {
        if (spec.q, spec.n) != (self.q, self.n) {
            return Err(Error::DimensionMismatch(format!(
                "spec over ({}, {}) in a context over ({}, {})",
                spec.q, spec.n, self.q, self.n
            )));
        }
        self.spec(&spec.defining_set).map(|_| ())
    }

    pub fn code(&self, spec: &CyclicSpec) -> Result<LinearCode> {
        let g = self.generator_polynomial(spec)?;
        self.code_from_poly(&g)
    }

    /// The code generated by a divisor `g` of `x^n - 1`.
    pub fn code_from_poly(&self, g: &Poly) -> Result<LinearCode> {
        let deg = g.degree().ok_or(Error::DivisionByZero)?;
        let (_, r) = Poly::x_pow_minus_one(self.n, &self.base).divmod(g, &self.base)?;
        if !r.is_zero() {
            return Err(Error::invalid("generator polynomial does not divide x^n - 1"));
        }
        let k = self.n - deg;
        let rows: Vec<Vec<Elem>> = (0..k)
            .map(|s| {
                (0..self.n)
                    .map(|i| if i >= s { g.coeff(i - s) } else { Elem::ZERO })
                    .collect()
            })
            .collect();
        LinearCode::from_generator(&self.base, self.n, &rows)
    }

    /// `{i : g(beta^i) = 0}` for a divisor `g` of `x^n - 1`.
    pub fn defining_set_of_poly(&self, g: &Poly) -> Result<CyclicSpec> {
        let lifted = g.try_map(|c| Some(self.embed.apply(c))).expect("embedding is total");
        let t: Vec<usize> = (0..self.n)
            .filter(|&i| lifted.eval(self.ext.pow(self.beta, i as u64), &self.ext).is_zero())
            .collect();
        if Some(t.len()) != g.degree() {
            return Err(Error::invalid("polynomial is not a divisor of x^n - 1"));
        }
        self.spec(&t)
    }

    /// Recovers the defining set of a cyclic code from its generator matrix.
    pub fn defining_set_of(&self, code: &LinearCode) -> Result<CyclicSpec> {
        if code.len() != self.n || code.field() != &self.base || !code.is_cyclic() {
            return Err(Error::invalid("not a cyclic code of this length and field"));
        }
        let k = code.dim();
        if k == 0 {
            return self.spec(&(0..self.n).collect::<Vec<_>>());
        }
        // The last canonical row is x^{k-1} g(x) up to scale.
        let row = code.generator().row(k - 1);
        let g = Poly::new(row[k - 1..].to_vec()).monic(&self.base)?;
        self.defining_set_of_poly(&g)
    }

    pub fn dual_spec(&self, spec: &CyclicSpec) -> CyclicSpec {
        dual_defining_set(spec)
    }
}

/// A lower bound together with whether clamping at zero made it vacuous.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RateBound {
    #[serde(with = "crate::frac")]
    pub value: Ratio<i64>,
    pub vacuous: bool,
}

impl RateBound {
    fn clamped(numer: i64, n: usize) -> RateBound {
        RateBound {
            value: Ratio::new(numer.max(0), n as i64),
            vacuous: numer <= 0,
        }
    }
}

/// `(n - (N - delta1 + 1)(delta2 - 1) m^2) / n`.
pub fn prop61_bound(n: usize, q: u64, delta1: usize, delta2: usize) -> Result<RateBound> {
    let big_n = coset_count(n, q)? as i64;
    let m = order_of(q, n as u64)? as i64;
    let numer = n as i64 - (big_n - delta1 as i64 + 1) * (delta2 as i64 - 1) * m * m;
    Ok(RateBound::clamped(numer, n))
}

/// `(n - m |S1| (delta2 - 1)) / n`.
pub fn thm62_bound(n: usize, q: u64, s1_len: usize, delta2: usize) -> Result<RateBound> {
    let m = order_of(q, n as u64)? as i64;
    let numer = n as i64 - m * s1_len as i64 * (delta2 as i64 - 1);
    Ok(RateBound::clamped(numer, n))
}

/// Smallest `t >= 1` with `delta <= 2^t + 1`.
pub fn binary_digit_budget(delta: usize) -> u32 {
    let mut t = 1;
    while (1usize << t) + 1 < delta {
        t += 1;
    }
    t
}

/// `(n - (m - t) 2^{t+1}) / n` with `n = (2^m - 1) / e`.
pub fn thm63_bound(m: u32, e: u64, delta: usize) -> Result<RateBound> {
    let n = two_weight_length(m, e)?;
    let t = binary_digit_budget(delta) as i64;
    let numer = n as i64 - (m as i64 - t) * (1i64 << (t + 1));
    Ok(RateBound::clamped(numer, n))
}

fn two_weight_length(m: u32, e: u64) -> Result<usize> {
    if m == 0 || m % 2 == 1 || m > 20 {
        return Err(Error::invalid(format!("m = {m} must be even and at most 20")));
    }
    if e == 0 || !((1u64 << (m / 2)) + 1).is_multiple_of(e) {
        return Err(Error::invalid(format!("e = {e} must divide 2^{} + 1", m / 2)));
    }
    Ok((((1u64 << m) - 1) / e) as usize)
}

/// Weight distribution of the dual of the irreducible code `C_e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoWeightProfile {
    pub m: u32,
    pub e: u64,
    pub n: usize,
    /// `(weight, count)` pairs for the nonzero weights, ascending.
    pub weights: Vec<(usize, u64)>,
}

impl TwoWeightProfile {
    pub fn min_weight(&self) -> usize {
        self.weights.iter().find(|w| w.1 > 0).map_or(0, |w| w.0)
    }

    pub fn max_weight(&self) -> usize {
        self.weights.iter().rev().find(|w| w.1 > 0).map_or(0, |w| w.0)
    }

    /// Dense `A_0, ..., A_n`.
    pub fn distribution(&self) -> Vec<u64> {
        let mut a = vec![0; self.n + 1];
        a[0] = 1;
        for &(w, c) in &self.weights {
            a[w] += c;
        }
        a
    }
}

/// Closed-form weights of `C_e^perp`, where `e | 2^{m/2} + 1`.
pub fn two_weight_profile(m: u32, e: u64) -> Result<TwoWeightProfile> {
    let n = two_weight_length(m, e)?;
    let full = (1u64 << m) - 1;
    let half = 1u64 << (m / 2 - 1);
    let low = ((1u64 << (m - 1)) - (e - 1) * half) / e;
    let high = ((1u64 << (m - 1)) + half) / e;
    let mut weights = vec![(low as usize, full / e)];
    if e > 1 {
        weights.push((high as usize, (e - 1) * full / e));
    }
    Ok(TwoWeightProfile { m, e, n, weights })
}

/// The pair `(C_e, C_e^perp)`: `C_e` is generated by the minimal polynomial
/// of `alpha^e` at length `(2^m - 1) / e`.
pub fn two_weight_irreducible(m: u32, e: u64) -> Result<(CyclicContext, LinearCode, LinearCode)> {
    let n = two_weight_length(m, e)?;
    let ctx = CyclicContext::new(2, n)?;
    if ctx.m() != m {
        return Err(Error::invalid(format!("2 has order {} modulo {n}, not {m}", ctx.m())));
    }
    let spec = ctx.spec(ctx.coset_of(1))?;
    let c_e = ctx.code(&spec)?;
    let dual = ctx.code(&dual_defining_set(&spec))?;
    Ok((ctx, c_e, dual))
}

/// The two-weight storage code paired with BCH-dual retrieval codes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoWeightScheme {
    pub m: u32,
    pub e: u64,
    pub n: usize,
    pub delta: usize,
    #[serde(with = "crate::frac")]
    pub storage_rate: Ratio<i64>,
    pub min_weight: usize,
    pub max_weight: usize,
    #[serde(with = "crate::frac")]
    pub f: Ratio<i64>,
    /// `delta - 1`, a lower bound on the privacy level.
    pub t: usize,
    /// Offset `b` minimizing `|S_C + S_D|`, smallest on ties.
    pub best_b: usize,
    pub sumset_size: usize,
    #[serde(with = "crate::frac")]
    pub retrieval_rate: Ratio<i64>,
    pub bound: RateBound,
}

/// Scans every BCH offset `b` for the retrieval side of the two-weight scheme.
pub fn two_weight_scheme(m: u32, e: u64, delta: usize) -> Result<TwoWeightScheme> {
    let profile = two_weight_profile(m, e)?;
    let n = profile.n;
    let ctx = CyclicContext::new(2, n)?;
    let storage = dual_defining_set(&ctx.spec(ctx.coset_of(1))?);
    let s1 = storage.nonzero_set();
    let mut best = (usize::MAX, 0);
    for b in 0..n {
        let d = dual_defining_set(&ctx.bch(b, delta)?);
        let size = sumset(&s1, &d.nonzero_set(), n).len();
        if size < best.0 {
            best = (size, b);
        }
    }
    let d = profile.min_weight();
    Ok(TwoWeightScheme {
        m,
        e,
        n,
        delta,
        storage_rate: Ratio::new(storage.dim() as i64, n as i64),
        min_weight: d,
        max_weight: profile.max_weight(),
        f: Ratio::new(d as i64 - 1, n as i64),
        t: delta - 1,
        best_b: best.1,
        sumset_size: best.0,
        retrieval_rate: Ratio::new((n - best.0) as i64, n as i64),
        bound: thm63_bound(m, e, delta)?,
    })
}

/// BCH storage `C(b1, delta1)` with retrieval `C(b2, delta2)^perp`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BchScheme {
    pub q: u64,
    pub n: usize,
    pub storage: CyclicSpec,
    pub retrieval: CyclicSpec,
    pub sumset_size: usize,
    #[serde(with = "crate::frac")]
    pub storage_rate: Ratio<i64>,
    #[serde(with = "crate::frac")]
    pub retrieval_rate: Ratio<i64>,
    pub bound: RateBound,
}

pub fn bch_scheme(q: u64, n: usize, b1: usize, delta1: usize, b2: usize, delta2: usize) -> Result<BchScheme> {
    let storage = bch_defining_set(q, n, b1, delta1)?;
    let retrieval = dual_defining_set(&bch_defining_set(q, n, b2, delta2)?);
    let size = sumset(&storage.nonzero_set(), &retrieval.nonzero_set(), n).len();
    Ok(BchScheme {
        q,
        n,
        sumset_size: size,
        storage_rate: Ratio::new(storage.dim() as i64, n as i64),
        retrieval_rate: Ratio::new((n - size) as i64, n as i64),
        bound: prop61_bound(n, q, delta1, delta2)?,
        storage,
        retrieval,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::Distance;
    use proptest::prelude::*;

    #[test]
    fn cosets_small_cases() {
        assert_eq!(cyclotomic_cosets(7, 5).unwrap(), vec![vec![0], vec![1, 5, 4, 6, 2, 3]]);
        assert_eq!(
            cyclotomic_cosets(7, 2).unwrap(),
            vec![vec![0], vec![1, 2, 4], vec![3, 6, 5]]
        );
        let sizes: Vec<usize> = cyclotomic_cosets(15, 2).unwrap().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 4, 4, 2, 4]);
        assert_eq!(coset_count(1, 2).unwrap(), 1);
        assert!(cyclotomic_cosets(6, 2).is_err());
    }

    #[test]
    fn coset_count_for_q_squared_minus_one() {
        // q - 1 singletons {j(q+1)} and pairs elsewhere.
        assert_eq!(coset_count(15, 4).unwrap(), 9);
        for q in [3u64, 4, 5, 7, 8] {
            let n = (q * q - 1) as usize;
            let cosets = cyclotomic_cosets(n, q).unwrap();
            let singles = cosets.iter().filter(|c| c.len() == 1).count();
            assert_eq!(singles as u64, q - 1);
            assert_eq!(cosets.len() as u64, (q - 1) + q * (q - 1) / 2);
        }
    }

    #[test]
    fn minimal_polynomials() {
        let ctx = CyclicContext::new(2, 7).unwrap();
        let m1 = ctx.minimal_polynomial(1).unwrap();
        let f = ctx.base_field();
        assert_eq!(m1.degree(), Some(3));
        for a in f.elements() {
            assert!(!m1.eval(a, f).is_zero());
        }
        assert_eq!(ctx.minimal_polynomial(0).unwrap(), Poly::linear(Elem::ONE, f));
        let ctx = CyclicContext::new(5, 7).unwrap();
        assert_eq!(ctx.m(), 6);
        let f5 = ctx.base_field();
        assert_eq!(ctx.minimal_polynomial(1).unwrap(), Poly::from_ints(&[1; 7], f5));
    }

    #[test]
    fn codes_from_defining_sets() {
        let ctx = CyclicContext::new(5, 7).unwrap();
        let f = ctx.base_field().clone();
        assert_eq!(ctx.code(&ctx.spec(&[]).unwrap()).unwrap(), LinearCode::full(&f, 7));
        let rep = ctx.code(&ctx.spec(&[1, 2, 3, 4, 5, 6]).unwrap()).unwrap();
        assert_eq!(rep, LinearCode::replicated(&f, 7));
        assert!(ctx.spec(&[1, 2]).is_err());
    }

    #[test]
    fn bch_15_7_5() {
        let ctx = CyclicContext::new(2, 15).unwrap();
        let spec = ctx.bch(1, 5).unwrap();
        assert_eq!(spec.defining_set, vec![1, 2, 3, 4, 6, 8, 9, 12]);
        let code = ctx.code(&spec).unwrap();
        assert_eq!((code.dim(), code.min_distance().unwrap()), (7, Distance::Finite(5)));
        assert_eq!(ctx.bch(3, 2).unwrap().defining_set, vec![3, 6, 9, 12]);
        assert!(ctx.bch(1, 1).is_err());
    }

    #[test]
    fn dual_defining_sets() {
        let ctx = CyclicContext::new(2, 7).unwrap();
        let spec = ctx.spec(&[1, 2, 4]).unwrap();
        assert_eq!(dual_defining_set(&spec).defining_set, vec![0, 1, 2, 4]);
        let ctx5 = CyclicContext::new(5, 7).unwrap();
        assert_eq!(
            dual_defining_set(&ctx5.spec(&[0]).unwrap()).defining_set,
            vec![1, 2, 3, 4, 5, 6]
        );
        assert_eq!(
            dual_defining_set(&ctx5.spec(&[]).unwrap()).defining_set,
            (0..7).collect::<Vec<_>>()
        );
    }

    #[test]
    fn defining_sets_round_trip_and_duals_match() {
        for (q, n) in [(2, 7), (2, 15), (5, 7), (4, 5), (3, 8)] {
            let ctx = CyclicContext::new(q, n).unwrap();
            for spec in ctx.all_specs().unwrap() {
                let code = ctx.code(&spec).unwrap();
                assert_eq!(code.dim(), spec.dim());
                assert!(code.is_cyclic());
                assert_eq!(ctx.defining_set_of(&code).unwrap(), spec);
                assert_eq!(ctx.code(&dual_defining_set(&spec)).unwrap(), code.dual());
            }
        }
    }

    #[test]
    fn sumset_basics() {
        assert_eq!(sumset(&[1, 3], &[0], 7), vec![1, 3]);
        assert_eq!(
            sumset(&[0, 1, 2], &[5, 6], 7),
            vec![0, 5, 6, 1]
                .into_iter()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect::<Vec<_>>()
        );
        assert!(sumset(&[], &[1], 7).is_empty());
    }

    #[test]
    fn window_distance_matches_exhaustive() {
        for (q, n) in [(2, 15), (2, 21), (3, 13), (4, 5)] {
            let ctx = CyclicContext::new(q, n).unwrap();
            for spec in ctx.all_specs().unwrap().into_iter().take(64) {
                let code = ctx.code(&spec).unwrap();
                assert_eq!(
                    code.min_distance_by_windows(26).unwrap(),
                    code.min_distance().unwrap(),
                    "{spec:?}"
                );
            }
        }
    }

    #[test]
    fn two_weight_small() {
        let (_, c, dual) = two_weight_irreducible(6, 3).unwrap();
        assert_eq!((c.len(), dual.dim()), (21, 6));
        let profile = two_weight_profile(6, 3).unwrap();
        assert_eq!(profile.weights, vec![(8, 21), (12, 42)]);
        assert_eq!(dual.weight_distribution().unwrap(), profile.distribution());
        let (_, _, simplex) = two_weight_irreducible(4, 1).unwrap();
        assert_eq!(
            simplex.weight_distribution().unwrap(),
            two_weight_profile(4, 1).unwrap().distribution()
        );
        assert!(two_weight_irreducible(6, 5).is_err());
        assert!(two_weight_irreducible(5, 1).is_err());
    }

    #[test]
    fn bounds() {
        assert_eq!(binary_digit_budget(17), 4);
        assert_eq!(binary_digit_budget(3), 1);
        assert_eq!(thm63_bound(10, 3, 17).unwrap().value, Ratio::new(149, 341));
        let b = thm62_bound(7, 2, 1, 3).unwrap();
        assert_eq!(b.value, Ratio::new(1, 7));
        assert!(prop61_bound(15, 2, 3, 5).unwrap().vacuous);
    }

    #[test]
    fn interval_scheme_rate() {
        // n = q - 1: every coset is a singleton and sumsets are intervals.
        let (q, n) = (11u64, 10usize);
        for d1 in 2..n {
            for d2 in 2..n {
                let s = bch_scheme(q, n, n + 1 - d2, d1, 1, d2).unwrap();
                let expected = (n + d2).saturating_sub(d1 + 1).min(n);
                assert_eq!(s.sumset_size, expected, "{d1} {d2}");
            }
        }
    }

    fn subset(n: usize) -> impl Strategy<Value = Vec<usize>> {
        prop::collection::btree_set(0..n, 0..n).prop_map(|s| s.into_iter().collect())
    }

    proptest! {
        #[test]
        fn sumset_size_and_monotonicity(a in subset(15), b in subset(15), extra in 0usize..15) {
            let s = sumset(&a, &b, 15);
            prop_assert!(s.len() <= 15.min(a.len() * b.len()));
            let mut bigger = a.clone();
            bigger.push(extra);
            let bigger = normalize(bigger, 15);
            let t = sumset(&bigger, &b, 15);
            prop_assert!(s.iter().all(|x| t.contains(x)));
        }
    }
}
