//! Exact rational feasibility of mixed strict/non-strict linear systems by
//! Fourier–Motzkin elimination.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Gt,
    Ge,
}

/// `coeffs · x  (relation)  rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        Constraint { coeffs, relation, rhs }
    }

    /// `coeffs · x <= rhs` written as `-coeffs · x >= -rhs`.
    pub fn le(coeffs: &[Rational], rhs: &Rational) -> Self {
        Constraint::new(coeffs.iter().map(|c| -c).collect(), Relation::Ge, -rhs)
    }

    /// `coeffs · x < rhs`.
    pub fn lt(coeffs: &[Rational], rhs: &Rational) -> Self {
        Constraint::new(coeffs.iter().map(|c| -c).collect(), Relation::Gt, -rhs)
    }

    pub fn holds(&self, x: &[Rational]) -> bool {
        let lhs = rational::dot(&self.coeffs, x);
        match self.relation {
            Relation::Eq => lhs == self.rhs,
            Relation::Gt => lhs > self.rhs,
            Relation::Ge => lhs >= self.rhs,
        }
    }
}

#[derive(Clone, Debug)]
struct Ineq {
    coeffs: Vec<Rational>,
    strict: bool,
    rhs: Rational,
}

/// A point satisfying every constraint, or `None` when the system is empty.
pub fn solve(dim: usize, constraints: &[Constraint]) -> Option<Vec<Rational>> {
    // x_var = constant + Σ coeffs_j x_j, applied in reverse order at the end.
    let mut substitutions: Vec<(usize, Vec<Rational>, Rational)> = Vec::new();
    let mut eqs: Vec<(Vec<Rational>, Rational)> = Vec::new();
    let mut ineqs: Vec<Ineq> = Vec::new();
    for c in constraints {
        assert_eq!(c.coeffs.len(), dim, "constraint length mismatch");
        match c.relation {
            Relation::Eq => eqs.push((c.coeffs.clone(), c.rhs.clone())),
            r => ineqs.push(Ineq {
                coeffs: c.coeffs.clone(),
                strict: r == Relation::Gt,
                rhs: c.rhs.clone(),
            }),
        }
    }
    while let Some((coeffs, rhs)) = eqs.pop() {
        let Some(v) = coeffs.iter().position(|c| !c.is_zero()) else {
            if rhs.is_zero() {
                continue;
            }
            return None;
        };
        let inv = coeffs[v].recip();
        let mut expr: Vec<Rational> = coeffs.iter().map(|c| -(c * &inv)).collect();
        expr[v] = Rational::zero();
        let constant = &rhs * &inv;
        let substitute = |a: &mut Vec<Rational>, b: &mut Rational| {
            if a[v].is_zero() {
                return;
            }
            let f = std::mem::replace(&mut a[v], Rational::zero());
            for (aj, ej) in a.iter_mut().zip(&expr) {
                *aj += &f * ej;
            }
            *b -= &f * &constant;
        };
        for (a, b) in eqs.iter_mut() {
            substitute(a, b);
        }
        for q in ineqs.iter_mut() {
            substitute(&mut q.coeffs, &mut q.rhs);
        }
        substitutions.push((v, expr, constant));
    }
    let substituted: Vec<usize> = substitutions.iter().map(|s| s.0).collect();
    let free: Vec<usize> = (0..dim).filter(|v| !substituted.contains(v)).collect();

    let mut current = normalize(ineqs)?;
    let mut stages: Vec<(usize, Vec<Ineq>)> = Vec::new();
    for &v in &free {
        let (mut lower, mut upper, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for q in &current {
            if q.coeffs[v].is_positive() {
                lower.push(q);
            } else if q.coeffs[v].is_negative() {
                upper.push(q);
            } else {
                rest.push(q.clone());
            }
        }
        for p in &lower {
            for n in &upper {
                let (a, b) = (&p.coeffs[v], -&n.coeffs[v]);
                let coeffs = p.coeffs.iter().zip(&n.coeffs).map(|(x, y)| x * &b + y * a).collect();
                rest.push(Ineq {
                    coeffs,
                    strict: p.strict || n.strict,
                    rhs: &p.rhs * &b + &n.rhs * a,
                });
            }
        }
        let next = normalize(rest)?;
        stages.push((v, std::mem::replace(&mut current, next)));
    }
    debug_assert!(current.is_empty());

    let mut x = vec![Rational::zero(); dim];
    for (v, set) in stages.iter().rev() {
        let mut lo: Option<(Rational, bool)> = None;
        let mut hi: Option<(Rational, bool)> = None;
        for q in set {
            let a = &q.coeffs[*v];
            if a.is_zero() {
                continue;
            }
            let others: Rational = q
                .coeffs
                .iter()
                .enumerate()
                .filter(|(j, _)| j != v)
                .map(|(j, c)| c * &x[j])
                .sum();
            let bound = (&q.rhs - others) / a;
            if a.is_positive() {
                if lo.as_ref().is_none_or(|(b, s)| bound > *b || (bound == *b && q.strict && !s)) {
                    lo = Some((bound, q.strict));
                }
            } else if hi.as_ref().is_none_or(|(b, s)| bound < *b || (bound == *b && q.strict && !s)) {
                hi = Some((bound, q.strict));
            }
        }
        x[*v] = match (lo, hi) {
            (Some((l, _)), Some((h, _))) if l == h => l,
            (Some((l, _)), Some((h, _))) => (l + h) / rational::int(2),
            (Some((l, _)), None) => Rational::from_integer(rational::floor(&l)) + Rational::one(),
            (None, Some((h, _))) => Rational::from_integer(h.ceil().to_integer()) - Rational::one(),
            (None, None) => Rational::zero(),
        };
    }
    for (v, expr, constant) in substitutions.iter().rev() {
        x[*v] = constant + rational::dot(expr, &x);
    }
    assert!(
        constraints.iter().all(|c| c.holds(&x)),
        "Fourier-Motzkin witness fails its own system"
    );
    Some(x)
}

/// Scales each inequality so its first nonzero coefficient is ±1, drops
/// constant ones (failing if any is violated) and keeps the strongest
/// inequality per coefficient vector.
fn normalize(ineqs: Vec<Ineq>) -> Option<Vec<Ineq>> {
    let mut best: BTreeMap<Vec<Rational>, (Rational, bool)> = BTreeMap::new();
    for q in ineqs {
        let Some(first) = q.coeffs.iter().find(|c| !c.is_zero()) else {
            let ok = if q.strict { q.rhs.is_negative() } else { !q.rhs.is_positive() };
            if !ok {
                return None;
            }
            continue;
        };
        let s = first.abs().recip();
        let coeffs: Vec<Rational> = q.coeffs.iter().map(|c| c * &s).collect();
        let rhs = &q.rhs * &s;
        match best.get_mut(&coeffs) {
            Some((r, strict)) => {
                if rhs > *r || (rhs == *r && q.strict) {
                    *r = rhs;
                    *strict = q.strict;
                }
            }
            None => {
                best.insert(coeffs, (rhs, q.strict));
            }
        }
    }
    Some(
        best.into_iter()
            .map(|(coeffs, (rhs, strict))| Ineq { coeffs, strict, rhs })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn slab_witness() {
        // x > 0, x < 1
        let cs = vec![
            Constraint::new(vec![int(1)], Relation::Gt, int(0)),
            Constraint::lt(&[int(1)], &int(1)),
        ];
        assert_eq!(solve(1, &cs), Some(vec![Rational::new(1.into(), 2.into())]));
    }

    #[test]
    fn empty_slab() {
        let cs = vec![
            Constraint::lt(&[int(1)], &int(0)),
            Constraint::new(vec![int(1)], Relation::Gt, int(1)),
        ];
        assert_eq!(solve(1, &cs), None);
    }

    #[test]
    fn strictness_matters() {
        let closed = vec![
            Constraint::new(vec![int(1)], Relation::Ge, int(1)),
            Constraint::le(&[int(1)], &int(1)),
        ];
        assert_eq!(solve(1, &closed), Some(vec![int(1)]));
        let open = vec![
            Constraint::new(vec![int(1)], Relation::Gt, int(1)),
            Constraint::le(&[int(1)], &int(1)),
        ];
        assert_eq!(solve(1, &open), None);
    }

    #[test]
    fn equalities_then_inequalities() {
        // x + y = 1, x - y > 0, y > 0
        let cs = vec![
            Constraint::new(vec![int(1), int(1)], Relation::Eq, int(1)),
            Constraint::new(vec![int(1), int(-1)], Relation::Gt, int(0)),
            Constraint::new(vec![int(0), int(1)], Relation::Gt, int(0)),
        ];
        let x = solve(2, &cs).unwrap();
        assert!(cs.iter().all(|c| c.holds(&x)));
        let bad = vec![
            Constraint::new(vec![int(1), int(1)], Relation::Eq, int(1)),
            Constraint::new(vec![int(2), int(2)], Relation::Eq, int(3)),
        ];
        assert_eq!(solve(2, &bad), None);
    }
}
