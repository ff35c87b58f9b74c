//! Star-product PIR: scheme parameters, the disjoint-support collusion bound,
//! privacy checks and an end-to-end protocol simulator.
//!
//! Storage code `C` and retrieval code `D` share the field and length `n`.
//! Privacy is `t = d(D^perp) - 1`; the basic rate is `(d(C * D) - 1) / n`
//! and, for transitive `C` and `C * D`, the rate is `dim((C * D)^perp) / n`.

use itertools::Itertools;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::code::{Distance, LinearCode, DEFAULT_ENUM_BITS};
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::matrix::{dot, Matrix};

/// Evidence that `C` and `C * D` are transitive, which unlocks the
/// dimension-based rate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TransitivityHint {
    #[default]
    None,
    /// Both `C` and `C * D` are cyclic; checked.
    Cyclic,
    /// Both are invariant under the cyclic shift of coordinates `1..n`
    /// fixing coordinate 0; checked.
    ExtendedCyclic,
    /// `C` is the repetition code, so `C * D = D`; transitivity of `D` is
    /// taken on trust.
    Replicated,
}

/// Distances supplied by the caller instead of computed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct KnownDistances {
    pub storage: Option<Distance>,
    pub retrieval_dual: Option<Distance>,
    pub star: Option<Distance>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub hint: TransitivityHint,
    pub known: KnownDistances,
    pub cap_bits: u32,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            hint: TransitivityHint::None,
            known: KnownDistances::default(),
            cap_bits: DEFAULT_ENUM_BITS,
        }
    }
}

/// Every parameter of a `(C, D)` scheme.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PirAnalysis {
    pub n: usize,
    pub k: usize,
    #[serde(with = "crate::frac")]
    pub storage_rate: Ratio<i64>,
    pub storage_distance: Distance,
    #[serde(with = "crate::frac")]
    pub f: Ratio<i64>,
    pub retrieval_dim: usize,
    pub retrieval_dual_distance: Distance,
    pub t: usize,
    pub star_dim: usize,
    pub star_distance: Distance,
    #[serde(with = "crate::frac")]
    pub rate_basic: Ratio<i64>,
    #[serde(with = "crate::frac::option")]
    pub rate_transitive: Option<Ratio<i64>>,
    pub transitivity: TransitivityHint,
    /// `(n + 2) - (dim((C * D)^perp) + dim C + d(D^perp))`. Nonnegative when
    /// `C` and `D` are nonzero and the basic rate is positive.
    pub defect: i64,
}

impl PirAnalysis {
    /// The transitive rate when available, else the basic rate.
    pub fn best_rate(&self) -> Ratio<i64> {
        self.rate_transitive.unwrap_or(self.rate_basic)
    }
}

fn check_pair(c: &LinearCode, d: &LinearCode) -> Result<()> {
    if c.field() != d.field() {
        return Err(Error::FieldMismatch);
    }
    if c.len() != d.len() {
        return Err(Error::DimensionMismatch(format!(
            "storage length {} and retrieval length {}",
            c.len(),
            d.len()
        )));
    }
    Ok(())
}

/// Invariance under the shift that fixes coordinate 0 and cycles `1..n`.
pub fn is_extended_cyclic(code: &LinearCode) -> bool {
    let n = code.len();
    if n < 3 {
        return true;
    }
    let perm: Vec<usize> = (0..n)
        .map(|i| match i {
            0 => 0,
            1 => n - 1,
            _ => i - 1,
        })
        .collect();
    code.permute(&perm).is_ok_and(|p| p == *code)
}

fn verify_hint(hint: TransitivityHint, c: &LinearCode, star: &LinearCode) -> Result<()> {
    let ok = match hint {
        TransitivityHint::None => return Ok(()),
        TransitivityHint::Cyclic => c.is_cyclic() && star.is_cyclic(),
        TransitivityHint::ExtendedCyclic => is_extended_cyclic(c) && is_extended_cyclic(star),
        TransitivityHint::Replicated => *c == LinearCode::replicated(c.field(), c.len()),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::invalid(format!("transitivity hint {hint:?} does not hold")))
    }
}

pub fn analyze(c: &LinearCode, d: &LinearCode, opts: &AnalyzeOptions) -> Result<PirAnalysis> {
    check_pair(c, d)?;
    let n = c.len();
    let star = c.star(d)?;
    verify_hint(opts.hint, c, &star)?;
    let dist = |known: Option<Distance>, code: &LinearCode| match known {
        Some(v) => Ok(v),
        None => code.min_distance_with_cap(opts.cap_bits),
    };
    let storage_distance = dist(opts.known.storage, c)?;
    let retrieval_dual_distance = dist(opts.known.retrieval_dual, &d.dual())?;
    let star_distance = dist(opts.known.star, &star)?;
    let ni = n as i64;
    let dual_star_dim = (n - star.dim()) as i64;
    let d_dual = retrieval_dual_distance.clamped(n) as i64;
    Ok(PirAnalysis {
        n,
        k: c.dim(),
        storage_rate: Ratio::new(c.dim() as i64, ni),
        storage_distance,
        f: Ratio::new(storage_distance.clamped(n) as i64 - 1, ni),
        retrieval_dim: d.dim(),
        retrieval_dual_distance,
        t: d_dual as usize - 1,
        star_dim: star.dim(),
        star_distance,
        rate_basic: Ratio::new(star_distance.clamped(n) as i64 - 1, ni),
        rate_transitive: (opts.hint != TransitivityHint::None).then(|| Ratio::new(dual_star_dim, ni)),
        transitivity: opts.hint,
        defect: (ni + 2) - (dual_star_dim + c.dim() as i64 + d_dual),
    })
}

/// `d(D^perp) - 1`, with the zero dual counting as `n + 1`.
pub fn privacy_level(d: &LinearCode) -> Result<usize> {
    privacy_level_with_cap(d, DEFAULT_ENUM_BITS)
}

pub fn privacy_level_with_cap(d: &LinearCode, cap_bits: u32) -> Result<usize> {
    Ok(d.dual().min_distance_with_cap(cap_bits)?.clamped(d.len()) - 1)
}

/// Largest length accepted by [`privacy_verify`].
pub const MAX_PRIVACY_VERIFY_N: usize = 24;

/// Every `t` columns of the generator of `D` are independent, so any `t`
/// queries are jointly uniform whatever the requested index.
pub fn privacy_verify(d: &LinearCode, t: usize) -> Result<bool> {
    let n = d.len();
    if n > MAX_PRIVACY_VERIFY_N {
        return Err(Error::invalid(format!(
            "exhaustive subset check needs n <= {MAX_PRIVACY_VERIFY_N}"
        )));
    }
    if t > d.dim() {
        return Ok(false);
    }
    let g = d.generator();
    Ok((0..n).combinations(t).all(|cols| g.select_columns(&cols).rank() == t))
}

/// A partition of the coordinates into disjoint codeword supports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CollusionBound {
    /// `max_i w_i - 1`, minimized over all partitions.
    pub bound: usize,
    /// Supports of the witnessing partition, as sorted coordinate lists.
    pub supports: Vec<Vec<usize>>,
}

/// Budget of search nodes for one exact-cover threshold.
pub const COVER_NODE_BUDGET: u64 = 50_000_000;

/// Strongest bound from partitions of `[n]` into codeword supports.
///
/// Thresholds on the largest part increase over the weights present, and
/// the first threshold admitting a partition gives the bound.
pub fn thm51_bound(c: &LinearCode, cap_bits: u32) -> Result<Option<CollusionBound>> {
    let n = c.len();
    if n > 64 {
        return Err(Error::invalid("support partition search needs n <= 64"));
    }
    let mut supports = Vec::new();
    c.for_each_support(cap_bits, |mask| {
        if mask != 0 {
            supports.push(mask);
        }
    })?;
    supports.sort_unstable_by_key(|m| (m.count_ones(), *m));
    supports.dedup();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut weights: Vec<u32> = supports.iter().map(|m| m.count_ones()).collect();
    weights.dedup();
    for &w in &weights {
        let mut by_low: Vec<Vec<u64>> = vec![Vec::new(); n];
        for &m in supports.iter().take_while(|m| m.count_ones() <= w) {
            by_low[m.trailing_zeros() as usize].push(m);
        }
        let mut chosen = Vec::new();
        let mut nodes = 0u64;
        if exact_cover(&by_low, 0, full, &mut chosen, &mut nodes)? {
            let supports = chosen
                .iter()
                .map(|&m: &u64| (0..n).filter(|&i| m >> i & 1 == 1).collect())
                .collect();
            return Ok(Some(CollusionBound {
                bound: w as usize - 1,
                supports,
            }));
        }
    }
    Ok(None)
}

/// Options are bucketed by lowest bit: the lowest uncovered coordinate can
/// only be covered by an option whose lowest bit it is.
fn exact_cover(by_low: &[Vec<u64>], covered: u64, full: u64, chosen: &mut Vec<u64>, nodes: &mut u64) -> Result<bool> {
    if covered == full {
        return Ok(true);
    }
    *nodes += 1;
    if *nodes > COVER_NODE_BUDGET {
        return Err(Error::cap("exact-cover search nodes", COVER_NODE_BUDGET.ilog2()));
    }
    let low = (!covered).trailing_zeros() as usize;
    for &opt in &by_low[low] {
        if opt & covered == 0 {
            chosen.push(opt);
            if exact_cover(by_low, covered | opt, full, chosen, nodes)? {
                return Ok(true);
            }
            chosen.pop();
        }
    }
    Ok(false)
}

/// Files and what each server holds under storage code `C`.
#[derive(Clone, Debug)]
pub struct StorageSystem {
    code: LinearCode,
    files: Vec<Vec<Elem>>,
    servers: Vec<Vec<Elem>>,
}

impl StorageSystem {
    /// Server `j` stores `(<x_i, g_j>)_i` for the columns `g_j` of `G(C)`.
    pub fn new(code: &LinearCode, files: Vec<Vec<Elem>>) -> Result<StorageSystem> {
        if code.dim() == 0 {
            return Err(Error::invalid("storage code has dimension 0"));
        }
        let m = Matrix::from_rows(code.field(), code.dim(), &files)?;
        let servers = m.mul(code.generator())?.transpose().row_vecs();
        Ok(StorageSystem {
            code: code.clone(),
            files,
            servers,
        })
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn files(&self) -> &[Vec<Elem>] {
        &self.files
    }

    pub fn file_count(&self) -> usize {
        self.files.len()
    }

    pub fn server(&self, j: usize) -> &[Elem] {
        &self.servers[j]
    }

    /// Stored contents agree with the files re-encoded.
    pub fn is_consistent(&self) -> bool {
        StorageSystem::new(&self.code, self.files.clone()).is_ok_and(|s| s.servers == self.servers)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Round {
    /// Coordinates whose symbols this round recovers.
    pub positions: Vec<usize>,
    /// SHA-256 of the query matrix entries, row-major, as little-endian `u32`.
    pub query_digest: String,
    /// Column `j` of the query matrix, sent to server `j`.
    pub queries: Vec<Vec<Elem>>,
    pub responses: Vec<Elem>,
    /// `<x_w, g_j>` for `j` in `positions`.
    pub recovered: Vec<Elem>,
    /// Whether the response minus the decoded erasure vector lies in `C * D`.
    pub residual_in_star: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transcript {
    /// 1-based index of the requested file.
    pub w: usize,
    pub seed: u64,
    pub group_size: usize,
    pub rounds: Vec<Round>,
    pub recovered_file: Vec<Elem>,
    pub downloaded: usize,
    #[serde(with = "crate::frac")]
    pub realized_rate: Ratio<i64>,
}

/// Coordinates grouped into consecutive blocks of `size`.
pub fn round_groups(n: usize, size: usize) -> Vec<Vec<usize>> {
    (0..n).chunks(size.max(1)).into_iter().map(|c| c.collect()).collect()
}

fn random_codeword(code: &LinearCode, rng: &mut ChaCha8Rng) -> Vec<Elem> {
    let q = code.field().order();
    let msg: Vec<Elem> = (0..code.dim()).map(|_| Elem(rng.gen_range(0..q))).collect();
    code.encode(&msg).expect("message length matches")
}

fn digest(rows: &[Vec<Elem>]) -> String {
    let mut h = Sha256::new();
    for e in rows.iter().flatten() {
        h.update(e.index().to_le_bytes());
    }
    hex::encode(h.finalize())
}

/// Runs the basic star-product protocol for file `w` (1-based).
pub fn simulate(storage: &StorageSystem, d: &LinearCode, w: usize, seed: u64) -> Result<Transcript> {
    simulate_with_cap(storage, d, w, seed, DEFAULT_ENUM_BITS)
}

pub fn simulate_with_cap(
    storage: &StorageSystem,
    d: &LinearCode,
    w: usize,
    seed: u64,
    cap_bits: u32,
) -> Result<Transcript> {
    let c = storage.code();
    check_pair(c, d)?;
    let files = storage.file_count();
    if w == 0 || w > files {
        return Err(Error::invalid(format!("file index {w} outside 1..={files}")));
    }
    let f: &Field = c.field();
    let n = c.len();
    let star = c.star(d)?;
    let group_size = match star.min_distance_with_cap(cap_bits)? {
        Distance::Finite(ds) if ds >= 2 => ds - 1,
        other => {
            return Err(Error::invalid(format!(
                "star product distance {other} gives a zero-rate scheme"
            )))
        }
    };
    let h = star.parity_check();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rounds = Vec::new();
    let mut collected: Vec<usize> = Vec::new();
    let mut values: Vec<Elem> = Vec::new();
    for positions in round_groups(n, group_size) {
        if c.generator().select_columns(&collected).rank() == c.dim() {
            break;
        }
        let mut q: Vec<Vec<Elem>> = (0..files).map(|_| random_codeword(d, &mut rng)).collect();
        for &j in &positions {
            q[w - 1][j] = f.add(q[w - 1][j], Elem::ONE);
        }
        let queries: Vec<Vec<Elem>> = (0..n).map(|j| q.iter().map(|row| row[j]).collect()).collect();
        let responses: Vec<Elem> = (0..n).map(|j| dot(f, &queries[j], storage.server(j))).collect();
        let syndrome = h.mul_vec(&responses)?;
        let e_j = h
            .select_columns(&positions)
            .solve(&syndrome)?
            .ok_or_else(|| Error::Inconsistent("erasure system has no solution".into()))?;
        let mut residual = responses.clone();
        for (&j, &e) in positions.iter().zip(&e_j) {
            residual[j] = f.sub(residual[j], e);
        }
        collected.extend(&positions);
        values.extend(&e_j);
        rounds.push(Round {
            query_digest: digest(&q),
            positions,
            queries,
            responses,
            recovered: e_j,
            residual_in_star: star.contains(&residual),
        });
    }
    let a = c.generator().select_columns(&collected).transpose();
    if a.rank() < c.dim() {
        return Err(Error::Inconsistent("collected columns never reach full rank".into()));
    }
    let recovered_file = a
        .solve(&values)?
        .ok_or_else(|| Error::Inconsistent("recovered symbols are inconsistent".into()))?;
    let downloaded = rounds.len() * n;
    Ok(Transcript {
        w,
        seed,
        group_size,
        realized_rate: Ratio::new(c.dim() as i64, downloaded as i64),
        downloaded,
        rounds,
        recovered_file,
    })
}

/// Result of exhaustively tabulating the queries seen by `t` servers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QueryCensus {
    pub t: usize,
    pub files: usize,
    pub subsets: usize,
    /// Every `t`-subset sees each of its `q^{t * files}` views equally often.
    pub uniform: bool,
    /// The view counts coincide for every requested index.
    pub identical_across_w: bool,
}

/// Largest `q^{k * files}` tuple count tabulated by [`query_census`].
pub const MAX_CENSUS_BITS: u32 = 20;

/// Counts the joint queries of every `t`-subset over all tuples of
/// `files` retrieval codewords, for each requested index, with the
/// indicator added on `positions`.
pub fn query_census(d: &LinearCode, files: usize, t: usize, positions: &[usize]) -> Result<QueryCensus> {
    let n = d.len();
    let f = d.field();
    let q = f.order() as u128;
    let tuples = d.size().checked_pow(files as u32).unwrap_or(u128::MAX);
    if tuples > 1 << MAX_CENSUS_BITS || n > 16 {
        return Err(Error::cap("query census", MAX_CENSUS_BITS));
    }
    let mut words = Vec::new();
    d.for_each_codeword(MAX_CENSUS_BITS, |c| words.push(c.to_vec()))?;
    let views = q.pow((t * files) as u32);
    let subsets: Vec<Vec<usize>> = (0..n).combinations(t).collect();
    let mut uniform = true;
    let mut identical = true;
    for cols in &subsets {
        let mut reference: Option<Vec<u64>> = None;
        for w in 0..files {
            let mut counts = vec![0u64; views as usize];
            for tuple in (0..files).map(|_| 0..words.len()).multi_cartesian_product() {
                let mut key = 0usize;
                for (i, &word) in tuple.iter().enumerate() {
                    for &j in cols {
                        let mut v = words[word][j];
                        if i == w && positions.contains(&j) {
                            v = f.add(v, Elem::ONE);
                        }
                        key = key * q as usize + v.index() as usize;
                    }
                }
                counts[key] += 1;
            }
            uniform &= counts.iter().all_equal();
            match &reference {
                None => reference = Some(counts),
                Some(r) => identical &= *r == counts,
            }
        }
    }
    Ok(QueryCensus {
        t,
        files,
        subsets: subsets.len(),
        uniform,
        identical_across_w: identical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::CyclicContext;

    fn hamming() -> LinearCode {
        let ctx = CyclicContext::new(2, 7).unwrap();
        ctx.code(&ctx.spec(&[1, 2, 4]).unwrap()).unwrap()
    }

    #[test]
    fn replicated_with_hamming() {
        let f = Field::new(2, 1).unwrap();
        let c = LinearCode::replicated(&f, 7);
        let a = analyze(&c, &hamming(), &AnalyzeOptions::default()).unwrap();
        assert_eq!((a.t, a.star_dim), (3, 4));
        assert_eq!(a.rate_basic, Ratio::new(2, 7));
        assert_eq!(a.rate_transitive, None);
        assert!(a.defect >= 0);
        let opts = AnalyzeOptions {
            hint: TransitivityHint::Cyclic,
            ..Default::default()
        };
        assert_eq!(
            analyze(&c, &hamming(), &opts).unwrap().rate_transitive,
            Some(Ratio::new(3, 7))
        );
    }

    #[test]
    fn degenerate_retrieval_codes() {
        let f = Field::new(3, 1).unwrap();
        let c = LinearCode::replicated(&f, 5);
        let full = analyze(&c, &LinearCode::full(&f, 5), &AnalyzeOptions::default()).unwrap();
        assert_eq!(full.t, 5);
        assert_eq!(full.defect, 0);
        let zero = analyze(&c, &LinearCode::zero(&f, 5), &AnalyzeOptions::default()).unwrap();
        assert_eq!(zero.rate_basic, Ratio::new(1, 1));
        assert_eq!(zero.t, 0);
    }

    #[test]
    fn hints_are_checked() {
        let f = Field::new(2, 1).unwrap();
        let c = LinearCode::from_generator(&f, 4, &[vec![Elem(1), Elem(1), Elem(0), Elem(0)]]).unwrap();
        let opts = AnalyzeOptions {
            hint: TransitivityHint::Cyclic,
            ..Default::default()
        };
        assert!(analyze(&c, &LinearCode::full(&f, 4), &opts).is_err());
        let rm = crate::rmext::rm_code(3, 1).unwrap();
        assert!(is_extended_cyclic(&rm));
        assert!(!is_extended_cyclic(&c));
    }

    #[test]
    fn privacy_checks() {
        let d = hamming();
        assert_eq!(privacy_level(&d).unwrap(), 3);
        assert!(privacy_verify(&d, 3).unwrap());
        assert!(!privacy_verify(&d, 4).unwrap());
        let f = Field::new(2, 1).unwrap();
        assert_eq!(privacy_level(&LinearCode::full(&f, 6)).unwrap(), 6);
        assert!(privacy_verify(&LinearCode::full(&f, 6), 6).unwrap());
    }

    #[test]
    fn collusion_bounds_small() {
        let f = Field::new(2, 1).unwrap();
        assert_eq!(
            thm51_bound(&LinearCode::replicated(&f, 9), 26).unwrap().unwrap().bound,
            8
        );
        let ext = hamming().dual().dual().extend();
        let b = thm51_bound(&ext, 26).unwrap().unwrap();
        assert_eq!(b.bound, 3);
        assert_eq!(b.supports.iter().map(Vec::len).sum::<usize>(), 8);
        // Coordinate 3 is never in a support, so no partition exists.
        let c = LinearCode::from_generator(&f, 4, &[vec![Elem(1), Elem(1), Elem(1), Elem(0)]]).unwrap();
        assert_eq!(thm51_bound(&c, 26).unwrap(), None);
    }

    #[test]
    fn simulation_recovers_file() {
        let f = Field::new(2, 1).unwrap();
        let c = LinearCode::replicated(&f, 7);
        let files = vec![vec![Elem(1)], vec![Elem(0)], vec![Elem(1)]];
        let s = StorageSystem::new(&c, files).unwrap();
        assert!(s.is_consistent());
        for seed in 0..10 {
            let tr = simulate(&s, &hamming(), 3, seed).unwrap();
            assert_eq!(tr.recovered_file, vec![Elem(1)]);
            assert!(tr.rounds.iter().all(|r| r.residual_in_star));
            assert_eq!(tr, simulate(&s, &hamming(), 3, seed).unwrap());
        }
        assert!(simulate(&s, &hamming(), 4, 0).is_err());
        assert!(simulate(&s, &hamming(), 0, 0).is_err());
    }

    #[test]
    fn census_small() {
        let d = hamming();
        let census = query_census(&d, 2, 3, &[0, 1]).unwrap();
        assert!(census.uniform && census.identical_across_w);
        assert_eq!(census.subsets, 35);
        let leaky = query_census(&d, 2, 4, &[0, 1]).unwrap();
        assert!(!leaky.uniform);
    }
}
