//! Linear codes and the operators used to compose storage and retrieval codes.
//!
//! A [`LinearCode`] is stored as its generator matrix in reduced row echelon
//! form with zero rows removed. That form is unique per row space, so code
//! equality is plain matrix equality.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::matrix::{add_scaled, Matrix};

/// Default exhaustive-enumeration budget: `q^k <= 2^26` codewords.
pub const DEFAULT_ENUM_BITS: u32 = 26;

/// Minimum distance, with `Infinite` for the zero code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    /// Finite stand-in for formulas: the zero code counts as distance `n + 1`.
    pub fn clamped(self, n: usize) -> usize {
        match self {
            Distance::Finite(d) => d,
            Distance::Infinite => n + 1,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u64(*d as u64),
            Distance::Infinite => s.serialize_str("inf"),
        }
    }
}

/// `[n, k, d]` together with the Singleton defect `n - (k + d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub d: Distance,
    pub defect: Option<i64>,
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.n, self.k, self.d)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct LinearCode {
    n: usize,
    generator: Matrix,
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}] code over {:?}",
            self.n,
            self.generator.rows(),
            self.generator.field()
        )
    }
}

impl LinearCode {
    /// Span of the given rows. Dependent and duplicate rows collapse.
    pub fn from_generator(field: &Field, n: usize, rows: &[Vec<Elem>]) -> Result<LinearCode> {
        Ok(LinearCode::from_matrix(&Matrix::from_rows(field, n, rows)?))
    }

    pub fn from_matrix(m: &Matrix) -> LinearCode {
        LinearCode {
            n: m.cols(),
            generator: m.row_basis(),
        }
    }

    pub fn zero(field: &Field, n: usize) -> LinearCode {
        LinearCode {
            n,
            generator: Matrix::zeros(field, 0, n),
        }
    }

    pub fn full(field: &Field, n: usize) -> LinearCode {
        LinearCode {
            n,
            generator: Matrix::identity(field, n),
        }
    }

    /// The `[n, 1, n]` repetition code: replicated storage.
    pub fn replicated(field: &Field, n: usize) -> LinearCode {
        LinearCode::from_generator(field, n, &[vec![Elem::ONE; n]]).expect("well-formed")
    }

    pub fn field(&self) -> &Field {
        self.generator.field()
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.generator.rows()
    }

    /// Canonical generator matrix (RREF, no zero rows).
    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    /// A parity-check matrix: the canonical generator of the dual.
    pub fn parity_check(&self) -> Matrix {
        self.generator.kernel()
    }

    pub fn encode(&self, message: &[Elem]) -> Result<Vec<Elem>> {
        if message.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "message of length {} for a code of dimension {}",
                message.len(),
                self.dim()
            )));
        }
        let f = self.field();
        let mut word = vec![Elem::ZERO; self.n];
        for (i, &m) in message.iter().enumerate() {
            if !m.is_zero() {
                add_scaled(f, &mut word, self.generator.row(i), m);
            }
        }
        Ok(word)
    }

    pub fn contains(&self, word: &[Elem]) -> bool {
        if word.len() != self.n {
            return false;
        }
        let h = self.parity_check();
        h.mul_vec(word).is_ok_and(|s| s.iter().all(|e| e.is_zero()))
    }

    pub fn is_subcode_of(&self, other: &LinearCode) -> bool {
        self.field() == other.field()
            && self.n == other.n
            && (0..self.dim()).all(|r| other.contains(self.generator.row(r)))
    }

    pub fn dual(&self) -> LinearCode {
        LinearCode {
            n: self.n,
            generator: self.generator.kernel(),
        }
    }

    fn check_compatible(&self, other: &LinearCode) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "codes of length {} and {}",
                self.n, other.n
            )));
        }
        Ok(())
    }

    /// Componentwise (Schur) product: the span of `c * d` over generator rows.
    pub fn star(&self, other: &LinearCode) -> Result<LinearCode> {
        self.check_compatible(other)?;
        let f = self.field();
        let mut rows = Vec::with_capacity(self.dim() * other.dim());
        for a in 0..self.dim() {
            let ra = self.generator.row(a);
            for b in 0..other.dim() {
                let rb = other.generator.row(b);
                rows.push(ra.iter().zip(rb).map(|(&x, &y)| f.mul(x, y)).collect());
            }
        }
        LinearCode::from_generator(f, self.n, &rows)
    }

    fn check_positions(&self, positions: &[usize]) -> Result<Vec<bool>> {
        let mut mark = vec![false; self.n];
        for &p in positions {
            if p >= self.n {
                return Err(Error::invalid(format!(
                    "position {p} out of range for length {}",
                    self.n
                )));
            }
            mark[p] = true;
        }
        Ok(mark)
    }

    /// Deletes the given coordinates.
    pub fn puncture(&self, positions: &[usize]) -> Result<LinearCode> {
        let mark = self.check_positions(positions)?;
        let keep: Vec<usize> = (0..self.n).filter(|&i| !mark[i]).collect();
        Ok(LinearCode::from_matrix(&self.generator.select_columns(&keep)))
    }

    /// Keeps the codewords vanishing on `positions`, then deletes those coordinates.
    pub fn shorten(&self, positions: &[usize]) -> Result<LinearCode> {
        let mark = self.check_positions(positions)?;
        let chosen: Vec<usize> = (0..self.n).filter(|&i| mark[i]).collect();
        let keep: Vec<usize> = (0..self.n).filter(|&i| !mark[i]).collect();
        // Messages m with m G_P = 0 span the left kernel of G_P.
        let combos = self.generator.select_columns(&chosen).transpose().kernel();
        let sub = combos.mul(&self.generator)?;
        Ok(LinearCode::from_matrix(&sub.select_columns(&keep)))
    }

    /// Prepends an overall parity coordinate so every codeword sums to zero.
    pub fn extend(&self) -> LinearCode {
        let f = self.field();
        let rows: Vec<Vec<Elem>> = (0..self.dim())
            .map(|r| {
                let row = self.generator.row(r);
                let sum = row.iter().fold(Elem::ZERO, |acc, &x| f.add(acc, x));
                std::iter::once(f.neg(sum)).chain(row.iter().copied()).collect()
            })
            .collect();
        LinearCode::from_generator(f, self.n + 1, &rows).expect("well-formed")
    }

    /// `C1 + C2` on concatenated supports.
    pub fn direct_sum(&self, other: &LinearCode) -> Result<LinearCode> {
        let n = self.n + other.n;
        let supports = [(0..self.n).collect::<Vec<_>>(), (self.n..n).collect::<Vec<_>>()];
        LinearCode::direct_sum_on(&[self, other], &supports, n)
    }

    /// Direct sum with component `i` placed on coordinates `supports[i]`.
    /// The supports must be disjoint; uncovered coordinates stay zero.
    pub fn direct_sum_on(parts: &[&LinearCode], supports: &[Vec<usize>], n: usize) -> Result<LinearCode> {
        if parts.len() != supports.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} components for {} supports",
                parts.len(),
                supports.len()
            )));
        }
        let field = parts
            .first()
            .map(|c| c.field().clone())
            .ok_or_else(|| Error::invalid("direct sum of no codes"))?;
        let mut used = vec![false; n];
        let mut rows = Vec::new();
        for (code, support) in parts.iter().zip(supports) {
            if code.field() != &field {
                return Err(Error::FieldMismatch);
            }
            if code.len() != support.len() {
                return Err(Error::DimensionMismatch(format!(
                    "component of length {} on a support of size {}",
                    code.len(),
                    support.len()
                )));
            }
            for &p in support {
                if p >= n || used[p] {
                    return Err(Error::invalid(format!("support position {p} invalid or reused")));
                }
                used[p] = true;
            }
            for r in 0..code.dim() {
                let mut row = vec![Elem::ZERO; n];
                for (&p, &v) in support.iter().zip(code.generator.row(r)) {
                    row[p] = v;
                }
                rows.push(row);
            }
        }
        LinearCode::from_generator(&field, n, &rows)
    }

    /// Coordinate `i` of the result is coordinate `perm[i]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Result<LinearCode> {
        let mut seen = vec![false; self.n];
        if perm.len() != self.n {
            return Err(Error::invalid("permutation has the wrong length"));
        }
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::invalid("not a permutation"));
            }
        }
        Ok(LinearCode::from_matrix(&self.generator.select_columns(perm)))
    }

    /// Invariance under `(c_0, ..., c_{n-1}) -> (c_{n-1}, c_0, ..., c_{n-2})`.
    pub fn is_cyclic(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let h = self.parity_check();
        (0..self.dim()).all(|r| {
            let row = self.generator.row(r);
            let shifted: Vec<Elem> = (0..self.n).map(|i| row[(i + self.n - 1) % self.n]).collect();
            h.mul_vec(&shifted).unwrap().iter().all(|e| e.is_zero())
        })
    }

    /// Number of codewords `q^k`, saturating at `u128::MAX`.
    pub fn size(&self) -> u128 {
        (self.field().order() as u128)
            .checked_pow(self.dim() as u32)
            .unwrap_or(u128::MAX)
    }

    pub(crate) fn ensure_enumerable(&self, cap_bits: u32, what: &str) -> Result<()> {
        if self.size() > 1u128 << cap_bits.min(127) {
            return Err(Error::cap(
                format!("{what} needs {}^{} codewords", self.field().order(), self.dim()),
                cap_bits,
            ));
        }
        Ok(())
    }

    /// Visits every codeword once, zero first.
    ///
    /// Walks a `p`-ary Gray code over the additive basis `{x^j g_i}`, so each
    /// step adds a single scaled generator row.
    pub fn for_each_codeword(&self, cap_bits: u32, mut visit: impl FnMut(&[Elem])) -> Result<()> {
        self.ensure_enumerable(cap_bits, "codeword enumeration")?;
        let f = self.field();
        let p = f.characteristic() as u64;
        let mut basis = Vec::with_capacity(self.dim() * f.degree() as usize);
        for r in 0..self.dim() {
            let mut scale = 1u32;
            for _ in 0..f.degree() {
                let s = Elem(scale);
                basis.push(self.generator.row(r).iter().map(|&x| f.mul(x, s)).collect::<Vec<_>>());
                scale *= p as u32;
            }
        }
        let total = self.size() as u64;
        let mut word = vec![Elem::ZERO; self.n];
        visit(&word);
        for step in 1..total {
            let mut c = step;
            let mut digit = 0;
            while c % p == 0 {
                c /= p;
                digit += 1;
            }
            add_scaled(f, &mut word, &basis[digit], Elem::ONE);
            visit(&word);
        }
        Ok(())
    }

    /// Generator rows bit-packed, for binary fast paths.
    pub(crate) fn packed_rows(&self) -> Vec<Vec<u64>> {
        let words = self.n.div_ceil(64);
        (0..self.dim())
            .map(|r| {
                let mut packed = vec![0u64; words];
                for (i, e) in self.generator.row(r).iter().enumerate() {
                    if !e.is_zero() {
                        packed[i / 64] |= 1 << (i % 64);
                    }
                }
                packed
            })
            .collect()
    }

    /// Calls `visit` with each codeword's support as a bit mask (`n <= 64`).
    pub(crate) fn for_each_support(&self, cap_bits: u32, mut visit: impl FnMut(u64)) -> Result<()> {
        if self.n > 64 {
            return Err(Error::invalid("support masks need n <= 64"));
        }
        if self.field().is_binary() {
            self.ensure_enumerable(cap_bits, "support enumeration")?;
            let rows: Vec<u64> = self
                .packed_rows()
                .into_iter()
                .map(|r| r.first().copied().unwrap_or(0))
                .collect();
            let mut word = 0u64;
            visit(word);
            for step in 1u64..(1u64 << rows.len()) {
                word ^= rows[step.trailing_zeros() as usize];
                visit(word);
            }
            return Ok(());
        }
        self.for_each_codeword(cap_bits, |w| {
            let mask = w
                .iter()
                .enumerate()
                .filter(|(_, e)| !e.is_zero())
                .fold(0u64, |m, (i, _)| m | 1 << i);
            visit(mask)
        })
    }

    pub fn weight_distribution(&self) -> Result<Vec<u64>> {
        self.weight_distribution_with_cap(DEFAULT_ENUM_BITS)
    }

    /// `A_0, ..., A_n`, by enumeration of the code or, when only the dual
    /// fits the budget, by the MacWilliams transform of the dual's weights.
    pub fn weight_distribution_with_cap(&self, cap_bits: u32) -> Result<Vec<u64>> {
        if self.ensure_enumerable(cap_bits, "weight enumeration").is_err() {
            let dual = self.dual();
            if dual.ensure_enumerable(cap_bits, "dual weight enumeration").is_ok() {
                let b = dual.enumerate_weights(cap_bits)?;
                return macwilliams(&b, self.field().order() as u64, dual.size())
                    .ok_or_else(|| Error::cap("MacWilliams transform overflows 128 bits", 127));
            }
        }
        self.enumerate_weights(cap_bits)
    }

    fn enumerate_weights(&self, cap_bits: u32) -> Result<Vec<u64>> {
        let mut dist = vec![0u64; self.n + 1];
        if self.field().is_binary() {
            self.ensure_enumerable(cap_bits, "weight enumeration")?;
            let rows = self.packed_rows();
            let mut word = vec![0u64; self.n.div_ceil(64)];
            dist[0] = 1;
            for step in 1u64..(1u64 << rows.len()) {
                let row = &rows[step.trailing_zeros() as usize];
                for (w, r) in word.iter_mut().zip(row) {
                    *w ^= r;
                }
                dist[word.iter().map(|w| w.count_ones() as usize).sum::<usize>()] += 1;
            }
            return Ok(dist);
        }
        self.for_each_codeword(cap_bits, |w| {
            dist[w.iter().filter(|e| !e.is_zero()).count()] += 1;
        })?;
        Ok(dist)
    }

    pub fn min_distance(&self) -> Result<Distance> {
        self.min_distance_with_cap(DEFAULT_ENUM_BITS)
    }

    /// Exhaustive when `q^k` fits the budget; cyclic codes past it fall back
    /// to information-window enumeration under the same budget.
    pub fn min_distance_with_cap(&self, cap_bits: u32) -> Result<Distance> {
        if self.dim() == 0 {
            return Ok(Distance::Infinite);
        }
        let too_big = |c: &LinearCode| c.ensure_enumerable(cap_bits, "").is_err();
        if too_big(self) && too_big(&self.dual()) && self.is_cyclic() {
            return self.min_distance_by_windows(cap_bits);
        }
        let dist = self.weight_distribution_with_cap(cap_bits)?;
        let d = dist
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, &a)| a > 0)
            .map(|(w, _)| w)
            .expect("a nonzero code has a nonzero codeword");
        Ok(Distance::Finite(d))
    }

    /// Minimum distance of a cyclic code from low-weight messages.
    ///
    /// Any `k` cyclically consecutive coordinates form an information set, and
    /// some window carries at most `k w / n` nonzeros of a weight-`w` word. So
    /// after all messages of window weight `<= i` are seen, every weight `w`
    /// with `k (w - 1) < (i + 1) n` below the best found is ruled out.
    pub fn min_distance_by_windows(&self, cap_bits: u32) -> Result<Distance> {
        let k = self.dim();
        if k == 0 {
            return Ok(Distance::Infinite);
        }
        let (_, pivots) = self.generator.rref();
        if pivots.iter().copied().ne(0..k) || !self.is_cyclic() {
            return Err(Error::invalid("window enumeration needs a cyclic code"));
        }
        let f = self.field();
        let q1 = (f.order() - 1) as u128;
        let budget = 1u128 << cap_bits.min(127);
        let mut visited = 0u128;
        let mut best = usize::MAX;
        let binary = f.is_binary().then(|| self.packed_rows());
        for level in 1..=k {
            visited += crate::gf::binomial(k as u64, level as u64) * q1.pow(level as u32 - 1);
            if visited > budget {
                return Err(Error::cap(
                    format!("window enumeration of a [{}, {k}] code at level {level}", self.n),
                    cap_bits,
                ));
            }
            match &binary {
                Some(rows) => {
                    let mut bufs = vec![vec![0u64; rows[0].len()]; level + 1];
                    binary_level(rows, 0, &mut bufs, &mut best);
                }
                None => {
                    let mut bufs = vec![vec![Elem::ZERO; self.n]; level + 1];
                    let rows = self.generator.row_vecs();
                    qary_level(f, &rows, 0, &mut bufs, &mut best);
                }
            }
            if k * (best - 1) < (level + 1) * self.n {
                break;
            }
        }
        Ok(Distance::Finite(best))
    }

    pub fn params(&self) -> Result<CodeParams> {
        self.params_with_cap(DEFAULT_ENUM_BITS)
    }

    pub fn params_with_cap(&self, cap_bits: u32) -> Result<CodeParams> {
        let d = self.min_distance_with_cap(cap_bits)?;
        Ok(CodeParams {
            n: self.n,
            k: self.dim(),
            d,
            defect: d.finite().map(|d| self.n as i64 - (self.dim() + d) as i64),
        })
    }
}

/// `A_j = |D|^{-1} sum_i B_i K_j(i)` for the dual distribution `B` of a code
/// `D` with `dual_size` words. `None` on overflow or a non-integral result.
fn macwilliams(b: &[u64], q: u64, dual_size: u128) -> Option<Vec<u64>> {
    let n = b.len() - 1;
    let binom = |a: usize, k: usize| i128::try_from(crate::gf::binomial(a as u64, k as u64)).ok();
    let size = i128::try_from(dual_size).ok()?;
    (0..=n)
        .map(|j| {
            let mut total: i128 = 0;
            for (i, &bi) in b.iter().enumerate() {
                if bi == 0 {
                    continue;
                }
                let mut k: i128 = 0;
                for s in 0..=j.min(i) {
                    if j - s > n - i {
                        continue;
                    }
                    let term = binom(i, s)?
                        .checked_mul(binom(n - i, j - s)?)?
                        .checked_mul((q as i128 - 1).checked_pow((j - s) as u32)?)?;
                    k = if s % 2 == 0 {
                        k.checked_add(term)?
                    } else {
                        k.checked_sub(term)?
                    };
                }
                total = total.checked_add(k.checked_mul(bi as i128)?)?;
            }
            (total % size == 0 && total >= 0).then(|| u64::try_from(total / size).ok())?
        })
        .collect()
}

/// Visits every sum of `bufs.len() - 1` distinct rows with index `>= start`.
fn binary_level(rows: &[Vec<u64>], start: usize, bufs: &mut [Vec<u64>], best: &mut usize) {
    let left = bufs.len() - 1;
    let (head, tail) = bufs.split_at_mut(1);
    for i in start..=rows.len() - left {
        for ((t, h), r) in tail[0].iter_mut().zip(&head[0]).zip(&rows[i]) {
            *t = h ^ r;
        }
        if left == 1 {
            let w = tail[0].iter().map(|x| x.count_ones() as usize).sum();
            *best = (*best).min(w);
        } else {
            binary_level(rows, i + 1, tail, best);
        }
    }
}

/// As [`binary_level`] with every nonzero coefficient, the first fixed to 1.
fn qary_level(f: &Field, rows: &[Vec<Elem>], start: usize, bufs: &mut [Vec<Elem>], best: &mut usize) {
    let left = bufs.len() - 1;
    let first = start == 0;
    let (head, tail) = bufs.split_at_mut(1);
    for i in start..=rows.len() - left {
        for c in f.elements().skip(1) {
            if first && c != Elem::ONE {
                break;
            }
            for ((t, &h), &r) in tail[0].iter_mut().zip(&head[0]).zip(&rows[i]) {
                *t = f.add(h, f.mul(c, r));
            }
            if left == 1 {
                *best = (*best).min(tail[0].iter().filter(|e| !e.is_zero()).count());
            } else {
                qary_level(f, rows, i + 1, tail, best);
            }
        }
    }
}
