//! One-point algebraic-geometry codes on elliptic curves `y^2 = x^3 + a x + b`
//! over prime fields `GF(p)`, `p > 3`.
//!
//! `L(m O)` for the point at infinity `O` has the basis `x^i y^j` with
//! `2i + 3j <= m` and `j <= 1`, which has exactly `m` elements for `m >= 1`.

use itertools::Itertools;
use serde::Serialize;

use crate::code::{Distance, LinearCode, DEFAULT_ENUM_BITS};
use crate::error::{Error, Result};
use crate::gf::{is_prime, Elem, Field};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EllipticCurve {
    pub p: u32,
    pub a: u32,
    pub b: u32,
    /// Affine points, sorted by `(x, y)`.
    pub points: Vec<(u32, u32)>,
}

impl EllipticCurve {
    /// Rational points including the point at infinity.
    pub fn order(&self) -> usize {
        self.points.len() + 1
    }

    pub fn field(&self) -> Field {
        Field::new(self.p as u64, 1).expect("checked at construction")
    }

    pub fn contains(&self, (x, y): (u32, u32)) -> bool {
        self.points.binary_search(&(x, y)).is_ok()
    }
}

fn check_prime(p: u32) -> Result<()> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if p <= 3 {
        return Err(Error::invalid(format!(
            "characteristic {p} needs a general Weierstrass form"
        )));
    }
    Ok(())
}

fn is_singular(p: u64, a: u64, b: u64) -> bool {
    (4 * a % p * a % p * a + 27 * b % p * b).is_multiple_of(p)
}

/// Enumerates the affine points of `y^2 = x^3 + a x + b`.
pub fn curve_points(p: u32, a: u32, b: u32) -> Result<EllipticCurve> {
    check_prime(p)?;
    let (pp, a, b) = (p as u64, a as u64 % p as u64, b as u64 % p as u64);
    if is_singular(pp, a, b) {
        return Err(Error::invalid(format!(
            "y^2 = x^3 + {a}x + {b} is singular over GF({p})"
        )));
    }
    let mut roots: Vec<Vec<u32>> = vec![Vec::new(); p as usize];
    for y in 0..pp {
        roots[(y * y % pp) as usize].push(y as u32);
    }
    let points = (0..pp)
        .flat_map(|x| {
            let rhs = (x * x % pp * x + a * x + b) % pp;
            roots[rhs as usize].iter().map(move |&y| (x as u32, y))
        })
        .collect();
    Ok(EllipticCurve {
        p,
        a: a as u32,
        b: b as u32,
        points,
    })
}

/// Whether `p + 1 - 2 sqrt(p) < count < p + 1 + 2 sqrt(p)`.
pub fn in_hasse_window(p: u32, count: usize) -> bool {
    let gap = count as i64 - p as i64 - 1;
    gap * gap < 4 * p as i64
}

/// First `(a, b)` in lexicographic order whose curve has `count` points.
pub fn curve_search(p: u32, count: usize) -> Result<EllipticCurve> {
    check_prime(p)?;
    if !in_hasse_window(p, count) {
        return Err(Error::invalid(format!(
            "{count} points lies outside the Hasse window for p = {p}"
        )));
    }
    for a in 0..p {
        for b in 0..p {
            if is_singular(p as u64, a as u64, b as u64) {
                continue;
            }
            let curve = curve_points(p, a, b)?;
            if curve.order() == count {
                return Ok(curve);
            }
        }
    }
    Err(Error::NotFound(format!("no curve over GF({p}) with {count} points")))
}

/// Exponents `(i, j)` of the basis of `L(m O)`.
pub fn riemann_roch_basis(mult: usize) -> Vec<(usize, usize)> {
    (0..=1)
        .flat_map(|j| (0..=mult / 2).map(move |i| (i, j)))
        .filter(|&(i, j)| 2 * i + 3 * j <= mult)
        .collect()
}

/// Evaluates `L(m O)` at the given affine points.
pub fn ag_one_point(curve: &EllipticCurve, eval_points: &[(u32, u32)], mult: usize) -> Result<LinearCode> {
    let n = eval_points.len();
    if mult == 0 || mult >= n {
        return Err(Error::invalid(format!(
            "multiplicity {mult} must satisfy 0 < m < n = {n}"
        )));
    }
    if eval_points.iter().any(|&pt| !curve.contains(pt)) {
        return Err(Error::invalid("evaluation point not on the curve"));
    }
    if eval_points.iter().duplicates().next().is_some() {
        return Err(Error::invalid("duplicate evaluation point"));
    }
    let field = curve.field();
    let basis = riemann_roch_basis(mult);
    if basis.len() != mult {
        return Err(Error::Inconsistent(format!(
            "L({mult} O) basis has {} functions",
            basis.len()
        )));
    }
    let rows: Vec<Vec<Elem>> = basis
        .iter()
        .map(|&(i, j)| {
            eval_points
                .iter()
                .map(|&(x, y)| {
                    let x = field.from_int(x as i64);
                    let y = field.from_int(y as i64);
                    field.mul(field.pow(x, i as u64), field.pow(y, j as u64))
                })
                .collect()
        })
        .collect();
    let code = LinearCode::from_generator(&field, n, &rows)?;
    if code.dim() != mult {
        return Err(Error::Inconsistent(format!(
            "one-point code has dimension {} instead of {mult}",
            code.dim()
        )));
    }
    Ok(code)
}

/// A one-point code together with the point subset that produced it.
#[derive(Clone, Debug)]
pub struct AgSelection {
    pub points: Vec<(u32, u32)>,
    pub code: LinearCode,
    pub distance: Distance,
    pub dual_distance: Distance,
}

/// First `n`-subset of affine points (lexicographic) whose `m`-dimensional
/// one-point code has dual distance `target_dual`.
pub fn select_eval_points(curve: &EllipticCurve, n: usize, mult: usize, target_dual: usize) -> Result<AgSelection> {
    for subset in curve.points.iter().copied().combinations(n) {
        let code = ag_one_point(curve, &subset, mult)?;
        let dual_distance = code.dual().min_distance_with_cap(DEFAULT_ENUM_BITS)?;
        if dual_distance == Distance::Finite(target_dual) {
            let distance = code.min_distance_with_cap(DEFAULT_ENUM_BITS)?;
            return Ok(AgSelection {
                points: subset,
                code,
                distance,
                dual_distance,
            });
        }
    }
    Err(Error::NotFound(format!(
        "no {n}-point subset gives dual distance {target_dual}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_over_gf5_respect_hasse() {
        let mut seen_eight = false;
        for a in 0..5 {
            for b in 0..5 {
                match curve_points(5, a, b) {
                    Ok(c) => {
                        assert!(in_hasse_window(5, c.order()));
                        seen_eight |= c.order() == 8;
                    }
                    Err(_) => assert!(is_singular(5, a as u64, b as u64)),
                }
            }
        }
        assert!(seen_eight);
        assert!(curve_points(7, 0, 0).is_err());
        assert!(curve_points(3, 1, 1).is_err());
    }

    #[test]
    fn points_satisfy_the_equation() {
        let c = curve_points(7, 2, 3).unwrap();
        for &(x, y) in &c.points {
            let (x, y) = (x as u64, y as u64);
            assert_eq!(y * y % 7, (x * x * x + 2 * x + 3) % 7);
        }
    }

    #[test]
    fn search() {
        let c = curve_search(5, 8).unwrap();
        assert_eq!(c.order(), 8);
        assert_eq!(curve_search(5, 6).unwrap().order(), 6);
        assert!(curve_search(5, 20).is_err());
    }

    #[test]
    fn basis_sizes() {
        for m in 1..20 {
            assert_eq!(riemann_roch_basis(m).len(), m);
        }
    }

    #[test]
    fn one_point_codes_meet_the_goppa_bound() {
        let c = curve_search(5, 8).unwrap();
        for m in 1..7 {
            let code = ag_one_point(&c, &c.points, m).unwrap();
            assert_eq!(code.dim(), m);
            let d = code.min_distance().unwrap().finite().unwrap();
            assert!(d >= 7 - m);
        }
        assert!(ag_one_point(&c, &c.points, 7).is_err());
        assert!(ag_one_point(&c, &[c.points[0], c.points[0], c.points[1]], 1).is_err());
    }

    #[test]
    fn seven_point_code_with_dual_distance_three() {
        let c = curve_search(5, 8).unwrap();
        let sel = select_eval_points(&c, 7, 3, 3).unwrap();
        assert_eq!(sel.code.dim(), 3);
        assert_eq!(sel.distance, Distance::Finite(4));
    }
}
