//! JSON form of the retrieval-candidate families accepted by `search`.

use serde::{Deserialize, Serialize};
use starpir::search::CandidateFamily;
use starpir::Result;

use crate::descriptor::CodeDescriptor;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitCandidate {
    pub label: String,
    pub code: CodeDescriptor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilySpec {
    AllCyclic,
    BchDual {
        b: usize,
        deltas: Vec<usize>,
    },
    DirectSum {
        supports: Vec<Vec<usize>>,
        parts: Vec<FamilySpec>,
    },
    AgOnePoint {
        p: u32,
        a: u32,
        b: u32,
        #[serde(default)]
        points: Option<Vec<(u32, u32)>>,
        mults: Vec<usize>,
    },
    Explicit(Vec<ExplicitCandidate>),
}

impl FamilySpec {
    pub fn realize(&self) -> Result<CandidateFamily> {
        Ok(match self {
            FamilySpec::AllCyclic => CandidateFamily::AllCyclic,
            FamilySpec::BchDual { b, deltas } => CandidateFamily::BchDual {
                b: *b,
                deltas: deltas.clone(),
            },
            FamilySpec::DirectSum { supports, parts } => CandidateFamily::DirectSum {
                supports: supports.clone(),
                parts: parts.iter().map(FamilySpec::realize).collect::<Result<_>>()?,
            },
            FamilySpec::AgOnePoint { p, a, b, points, mults } => CandidateFamily::AgOnePoint {
                p: *p,
                a: *a,
                b: *b,
                points: points.clone(),
                mults: mults.clone(),
            },
            FamilySpec::Explicit(list) => CandidateFamily::Explicit(
                list.iter()
                    .map(|c| Ok((c.label.clone(), c.code.realize()?)))
                    .collect::<Result<_>>()?,
            ),
        })
    }
}
