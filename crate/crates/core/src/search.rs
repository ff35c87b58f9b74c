//! Retrieval-code search: enumerate structured candidate families for a
//! fixed storage code and keep the Pareto front over privacy and rate.

use itertools::Itertools;
use num_rational::Ratio;
use serde::Serialize;

use crate::agcode::{ag_one_point, curve_points, select_eval_points};
use crate::code::{LinearCode, DEFAULT_ENUM_BITS};
use crate::cyclic::{dual_defining_set, CyclicContext};
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::pir::{analyze, is_extended_cyclic, AnalyzeOptions, TransitivityHint};

/// Largest number of candidates a family may expand to.
pub const MAX_FAMILY_BITS: u32 = 20;

#[derive(Clone, Debug)]
pub enum CandidateFamily {
    /// Every cyclic code of the storage length, one per coset subset.
    AllCyclic,
    /// Duals of the BCH codes with zeros `b, ..., b + delta - 2`.
    BchDual {
        b: usize,
        deltas: Vec<usize>,
    },
    /// Direct sums with part `i` drawn from `parts[i]` and placed on `supports[i]`.
    DirectSum {
        supports: Vec<Vec<usize>>,
        parts: Vec<CandidateFamily>,
    },
    /// One-point codes `L(m O)` on `y^2 = x^3 + a x + b`. Without explicit
    /// points, the first point subset whose dual distance is `m` is used,
    /// falling back to the first `n` points.
    AgOnePoint {
        p: u32,
        a: u32,
        b: u32,
        points: Option<Vec<(u32, u32)>>,
        mults: Vec<usize>,
    },
    Explicit(Vec<(String, LinearCode)>),
}

/// How a candidate was built, enough to rebuild it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Provenance {
    Cyclic {
        q: u64,
        n: usize,
        defining_set: Vec<usize>,
    },
    BchDual {
        q: u64,
        n: usize,
        b: usize,
        delta: usize,
    },
    DirectSum {
        supports: Vec<Vec<usize>>,
        parts: Vec<Provenance>,
    },
    AgOnePoint {
        p: u32,
        a: u32,
        b: u32,
        points: Vec<(u32, u32)>,
        mult: usize,
    },
    Explicit {
        label: String,
    },
}

#[derive(Clone, Debug)]
pub struct Candidate {
    pub provenance: Provenance,
    pub code: LinearCode,
}

/// Candidates of length `n` over `field`, in a fixed order.
pub fn enumerate(family: &CandidateFamily, field: &Field, n: usize) -> Result<Vec<Candidate>> {
    let q = field.order() as u64;
    let out = match family {
        CandidateFamily::AllCyclic => {
            let ctx = CyclicContext::new(q, n)?;
            ctx.all_specs()?
                .into_iter()
                .map(|spec| {
                    Ok(Candidate {
                        code: ctx.code(&spec)?,
                        provenance: Provenance::Cyclic {
                            q,
                            n,
                            defining_set: spec.defining_set,
                        },
                    })
                })
                .collect::<Result<_>>()?
        }
        CandidateFamily::BchDual { b, deltas } => {
            let ctx = CyclicContext::new(q, n)?;
            deltas
                .iter()
                .map(|&delta| {
                    let spec = dual_defining_set(&ctx.bch(*b, delta)?);
                    Ok(Candidate {
                        code: ctx.code(&spec)?,
                        provenance: Provenance::BchDual { q, n, b: *b, delta },
                    })
                })
                .collect::<Result<_>>()?
        }
        CandidateFamily::DirectSum { supports, parts } => direct_sums(supports, parts, field, n)?,
        CandidateFamily::AgOnePoint { p, a, b, points, mults } => {
            let curve = curve_points(*p, *a, *b)?;
            if curve.field() != *field {
                return Err(Error::FieldMismatch);
            }
            let mut out = Vec::new();
            for &mult in mults {
                let (points, code) = match points {
                    Some(pts) => (pts.clone(), ag_one_point(&curve, pts, mult)?),
                    None => match select_eval_points(&curve, n, mult, mult) {
                        Ok(sel) => (sel.points, sel.code),
                        Err(Error::NotFound(_)) => {
                            let pts: Vec<_> = curve.points.iter().copied().take(n).collect();
                            let code = ag_one_point(&curve, &pts, mult)?;
                            (pts, code)
                        }
                        Err(e) => return Err(e),
                    },
                };
                out.push(Candidate {
                    code,
                    provenance: Provenance::AgOnePoint {
                        p: *p,
                        a: curve.a,
                        b: curve.b,
                        points,
                        mult,
                    },
                });
            }
            out
        }
        CandidateFamily::Explicit(list) => list
            .iter()
            .map(|(label, code)| Candidate {
                provenance: Provenance::Explicit { label: label.clone() },
                code: code.clone(),
            })
            .collect(),
    };
    for c in &out {
        if c.code.field() != field || c.code.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "candidate {:?} does not have length {n} over GF({q})",
                c.provenance
            )));
        }
    }
    Ok(out)
}

fn direct_sums(supports: &[Vec<usize>], parts: &[CandidateFamily], field: &Field, n: usize) -> Result<Vec<Candidate>> {
    if supports.len() != parts.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} supports for {} part families",
            supports.len(),
            parts.len()
        )));
    }
    let lists: Vec<Vec<Candidate>> = parts
        .iter()
        .zip(supports)
        .map(|(fam, sup)| enumerate(fam, field, sup.len()))
        .collect::<Result<_>>()?;
    let total = lists.iter().try_fold(1u64, |acc, l| acc.checked_mul(l.len() as u64));
    if total.is_none_or(|t| t > 1 << MAX_FAMILY_BITS) {
        return Err(Error::cap("direct-sum combinations", MAX_FAMILY_BITS));
    }
    lists
        .iter()
        .map(|l| l.iter())
        .multi_cartesian_product()
        .map(|choice| {
            let codes: Vec<&LinearCode> = choice.iter().map(|c| &c.code).collect();
            Ok(Candidate {
                code: LinearCode::direct_sum_on(&codes, supports, n)?,
                provenance: Provenance::DirectSum {
                    supports: supports.to_vec(),
                    parts: choice.iter().map(|c| c.provenance.clone()).collect(),
                },
            })
        })
        .collect()
}

/// Residue classes of `0..n` modulo `parts`.
pub fn residue_supports(n: usize, parts: usize) -> Vec<Vec<usize>> {
    (0..parts).map(|r| (r..n).step_by(parts).collect()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParetoEntry {
    pub provenance: Provenance,
    pub k: usize,
    pub t: usize,
    #[serde(with = "crate::frac")]
    pub rate_basic: Ratio<i64>,
    #[serde(with = "crate::frac::option")]
    pub rate_transitive: Option<Ratio<i64>>,
    pub defect: i64,
}

impl ParetoEntry {
    pub fn rate(&self) -> Ratio<i64> {
        self.rate_transitive.unwrap_or(self.rate_basic)
    }

    /// At least as good in both coordinates and better in one.
    pub fn dominates(&self, other: &ParetoEntry) -> bool {
        let (a, b) = ((self.t, self.rate()), (other.t, other.rate()));
        a.0 >= b.0 && a.1 >= b.1 && a != b
    }
}

/// Strongest transitivity evidence that holds for `C` and `C * D`.
pub fn detect_hint(c: &LinearCode, d: &LinearCode) -> Result<TransitivityHint> {
    let star = c.star(d)?;
    Ok(if c.is_cyclic() && star.is_cyclic() {
        TransitivityHint::Cyclic
    } else if is_extended_cyclic(c) && is_extended_cyclic(&star) {
        TransitivityHint::ExtendedCyclic
    } else {
        TransitivityHint::None
    })
}

/// Analyzes every candidate of every family against `C`.
pub fn evaluate(c: &LinearCode, families: &[CandidateFamily], cap_bits: u32) -> Result<Vec<ParetoEntry>> {
    let mut out = Vec::new();
    for fam in families {
        for cand in enumerate(fam, c.field(), c.len())? {
            let opts = AnalyzeOptions {
                hint: detect_hint(c, &cand.code)?,
                cap_bits,
                ..Default::default()
            };
            let a = analyze(c, &cand.code, &opts)?;
            out.push(ParetoEntry {
                provenance: cand.provenance,
                k: cand.code.dim(),
                t: a.t,
                rate_basic: a.rate_basic,
                rate_transitive: a.rate_transitive,
                defect: a.defect,
            });
        }
    }
    Ok(out)
}

/// Entries not dominated by any other, ordered by `t` then input order.
pub fn front(entries: Vec<ParetoEntry>) -> Vec<ParetoEntry> {
    let keep: Vec<bool> = entries
        .iter()
        .map(|e| !entries.iter().any(|o| o.dominates(e)))
        .collect();
    let mut out: Vec<ParetoEntry> = entries
        .into_iter()
        .zip(keep)
        .filter_map(|(e, k)| k.then_some(e))
        .collect();
    out.sort_by_key(|e| e.t);
    out
}

pub fn pareto(c: &LinearCode, families: &[CandidateFamily]) -> Result<Vec<ParetoEntry>> {
    pareto_with_cap(c, families, DEFAULT_ENUM_BITS)
}

pub fn pareto_with_cap(c: &LinearCode, families: &[CandidateFamily], cap_bits: u32) -> Result<Vec<ParetoEntry>> {
    Ok(front(evaluate(c, families, cap_bits)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn points(front: &[ParetoEntry]) -> Vec<(usize, Ratio<i64>)> {
        front.iter().map(|e| (e.t, e.rate())).collect()
    }

    fn r(a: i64, b: i64) -> Ratio<i64> {
        Ratio::new(a, b)
    }

    #[test]
    fn cyclic_family_sizes() {
        let f5 = Field::new(5, 1).unwrap();
        let f2 = Field::new(2, 1).unwrap();
        let five = enumerate(&CandidateFamily::AllCyclic, &f5, 7).unwrap();
        let mut dims: Vec<usize> = five.iter().map(|c| c.code.dim()).collect();
        dims.sort();
        assert_eq!(dims, vec![0, 1, 6, 7]);
        assert_eq!(enumerate(&CandidateFamily::AllCyclic, &f2, 7).unwrap().len(), 8);
        let bch = CandidateFamily::BchDual {
            b: 1,
            deltas: vec![2, 3, 5],
        };
        assert_eq!(enumerate(&bch, &f2, 15).unwrap().len(), 3);
    }

    #[test]
    fn replicated_cyclic_front() {
        let f = Field::new(5, 1).unwrap();
        let c = LinearCode::replicated(&f, 7);
        let cyc = pareto(&c, &[CandidateFamily::AllCyclic]).unwrap();
        assert_eq!(
            points(&cyc),
            vec![(0, r(1, 1)), (1, r(6, 7)), (6, r(1, 7)), (7, r(0, 1))]
        );
        let curve = crate::agcode::curve_search(5, 8).unwrap();
        let ag = CandidateFamily::AgOnePoint {
            p: 5,
            a: curve.a,
            b: curve.b,
            points: None,
            mults: vec![3],
        };
        let both = pareto(&c, &[CandidateFamily::AllCyclic, ag]).unwrap();
        assert!(points(&both).contains(&(2, r(3, 7))));
        for e in &cyc {
            assert!(both.iter().any(|o| o.t >= e.t && o.rate() >= e.rate()));
        }
    }

    #[test]
    fn front_is_an_antichain() {
        let f = Field::new(2, 1).unwrap();
        let c = LinearCode::replicated(&f, 15);
        let front = pareto(&c, &[CandidateFamily::AllCyclic]).unwrap();
        for a in &front {
            assert!(front.iter().all(|b| !a.dominates(b)));
        }
    }

    #[test]
    fn mds_tradeoff_at_length_seven() {
        let f = Field::new(2, 3).unwrap();
        let c = LinearCode::replicated(&f, 7);
        let rs = CandidateFamily::BchDual {
            b: 1,
            deltas: (2..=8).collect(),
        };
        let front = pareto(&c, &[rs]).unwrap();
        let best = front
            .iter()
            .map(|e| Ratio::from_integer(e.t as i64) + e.rate() * 7)
            .max()
            .unwrap();
        assert_eq!(best, r(7, 1));
    }

    #[test]
    fn residue_classes() {
        assert_eq!(residue_supports(5, 2), vec![vec![0, 2, 4], vec![1, 3]]);
    }
}
