//! JSON code descriptors: leaves build codes, nodes transform them.
//!
//! Field elements are either an integer in the encoding `sum c_i p^i` or a
//! little-endian coefficient array `[c_0, c_1, ...]` with `0 <= c_i < p`.

use serde::{Deserialize, Serialize};
use starpir::cyclic::{two_weight_irreducible, CyclicContext};
use starpir::rmext::rm_code;
use starpir::{agcode, Elem, Error, Field, LinearCode, Poly, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Symbol {
    Int(u32),
    Coeffs(Vec<u32>),
}

impl Symbol {
    pub fn realize(&self, f: &Field) -> Result<Elem> {
        match self {
            Symbol::Int(v) => f.elem(*v),
            Symbol::Coeffs(c) => f.from_coeffs(c),
        }
    }

    fn of(f: &Field, e: Elem) -> Symbol {
        if f.degree() == 1 {
            Symbol::Int(e.index())
        } else {
            Symbol::Coeffs(f.coeffs(e))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u64,
    pub e: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum CodeDescriptor {
    Generator {
        field: FieldSpec,
        /// Required only when `rows` is empty.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
        rows: Vec<Vec<Symbol>>,
    },
    Cyclic {
        q: u64,
        n: usize,
        defining_set: Vec<usize>,
    },
    /// Generator polynomial coefficients, lowest degree first.
    CyclicPoly {
        q: u64,
        n: usize,
        coefficients: Vec<Symbol>,
    },
    Bch {
        q: u64,
        n: usize,
        b: usize,
        delta: usize,
    },
    Rm {
        m: u32,
        r: u32,
    },
    Replicated {
        q: u64,
        n: usize,
    },
    AgElliptic {
        p: u32,
        a: u32,
        b: u32,
        points: Vec<(u32, u32)>,
        mult: usize,
    },
    /// The two-weight code `C_e^perp` of length `(2^m - 1) / e`.
    TwoWeight {
        m: u32,
        e: u64,
    },
    Dual(Box<CodeDescriptor>),
    Extend(Box<CodeDescriptor>),
    Puncture {
        code: Box<CodeDescriptor>,
        positions: Vec<usize>,
    },
    Shorten {
        code: Box<CodeDescriptor>,
        positions: Vec<usize>,
    },
    /// Concatenated supports unless `supports` is given.
    DirectSum {
        parts: Vec<CodeDescriptor>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        supports: Option<Vec<Vec<usize>>>,
    },
    Star(Box<CodeDescriptor>, Box<CodeDescriptor>),
    /// Coordinate `i` of the result is coordinate `perm[i]` of `code`.
    Permute {
        code: Box<CodeDescriptor>,
        perm: Vec<usize>,
    },
}

impl CodeDescriptor {
    pub fn realize(&self) -> Result<LinearCode> {
        use CodeDescriptor as D;
        match self {
            D::Generator { field, n, rows } => {
                let f = Field::new(field.p, field.e)?;
                let len = match (n, rows.first()) {
                    (Some(n), _) => *n,
                    (None, Some(r)) => r.len(),
                    (None, None) => return Err(Error::InvalidParameter("empty generator needs n".into())),
                };
                let rows = rows
                    .iter()
                    .map(|r| r.iter().map(|s| s.realize(&f)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                LinearCode::from_generator(&f, len, &rows)
            }
            D::Cyclic { q, n, defining_set } => {
                let ctx = CyclicContext::new(*q, *n)?;
                ctx.code(&ctx.spec(defining_set)?)
            }
            D::CyclicPoly { q, n, coefficients } => {
                let ctx = CyclicContext::new(*q, *n)?;
                let f = ctx.base_field();
                let coeffs = coefficients.iter().map(|s| s.realize(f)).collect::<Result<Vec<_>>>()?;
                ctx.code_from_poly(&Poly::new(coeffs))
            }
            D::Bch { q, n, b, delta } => {
                let ctx = CyclicContext::new(*q, *n)?;
                ctx.code(&ctx.bch(*b, *delta)?)
            }
            D::Rm { m, r } => rm_code(*m, *r),
            D::Replicated { q, n } => Ok(LinearCode::replicated(&Field::with_order(*q)?, *n)),
            D::AgElliptic { p, a, b, points, mult } => {
                agcode::ag_one_point(&agcode::curve_points(*p, *a, *b)?, points, *mult)
            }
            D::TwoWeight { m, e } => two_weight_irreducible(*m, *e).map(|(_, _, dual)| dual),
            D::Dual(c) => Ok(c.realize()?.dual()),
            D::Extend(c) => Ok(c.realize()?.extend()),
            D::Puncture { code, positions } => code.realize()?.puncture(positions),
            D::Shorten { code, positions } => code.realize()?.shorten(positions),
            D::DirectSum { parts, supports } => {
                let codes = parts.iter().map(CodeDescriptor::realize).collect::<Result<Vec<_>>>()?;
                let refs: Vec<&LinearCode> = codes.iter().collect();
                let supports = match supports {
                    Some(s) => s.clone(),
                    None => {
                        let mut start = 0;
                        codes
                            .iter()
                            .map(|c| {
                                start += c.len();
                                (start - c.len()..start).collect()
                            })
                            .collect()
                    }
                };
                let n = supports.iter().map(Vec::len).sum();
                LinearCode::direct_sum_on(&refs, &supports, n)
            }
            D::Star(a, b) => a.realize()?.star(&b.realize()?),
            D::Permute { code, perm } => code.realize()?.permute(perm),
        }
    }

    /// The canonical generator of a realized code as a leaf descriptor.
    pub fn normalized(code: &LinearCode) -> CodeDescriptor {
        let f = code.field();
        CodeDescriptor::Generator {
            field: FieldSpec {
                p: f.characteristic() as u64,
                e: f.degree(),
            },
            n: Some(code.len()),
            rows: code
                .generator()
                .row_vecs()
                .into_iter()
                .map(|r| r.into_iter().map(|e| Symbol::of(f, e)).collect())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> CodeDescriptor {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn leaves_and_nodes_parse() {
        let d = parse(r#"{"dual": {"bch": {"q": 2, "n": 15, "b": 1, "delta": 5}}}"#);
        assert_eq!(d.realize().unwrap().dim(), 8);
        let s =
            parse(r#"{"star": [{"replicated": {"q": 5, "n": 7}}, {"cyclic": {"q": 5, "n": 7, "defining_set": [0]}}]}"#);
        assert_eq!(s.realize().unwrap().dim(), 6);
        let g = parse(r#"{"generator": {"field": {"p": 2, "e": 2}, "rows": [[[0, 1], 1, 0]]}}"#);
        assert_eq!(g.realize().unwrap().len(), 3);
    }

    #[test]
    fn normalized_round_trip() {
        let d = parse(r#"{"extend": {"cyclic_poly": {"q": 2, "n": 7, "coefficients": [1, 1, 0, 1]}}}"#);
        let code = d.realize().unwrap();
        let text = serde_json::to_string(&CodeDescriptor::normalized(&code)).unwrap();
        let back: CodeDescriptor = serde_json::from_str(&text).unwrap();
        assert_eq!(back.realize().unwrap(), code);
        assert_eq!(
            serde_json::from_str::<CodeDescriptor>(&serde_json::to_string(&d).unwrap()).unwrap(),
            d
        );
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(serde_json::from_str::<CodeDescriptor>(r#"{"rm": {"m": 3, "r": 1, "x": 0}}"#).is_err());
        assert!(serde_json::from_str::<CodeDescriptor>(r#"{"hamming": {}}"#).is_err());
    }
}
