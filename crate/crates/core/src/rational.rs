//! Exact rationals and their `"p/q"` text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serializer};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or a decimal-free integer.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    let r = match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Rational::new(p, q)
        }
        None => Rational::from_integer(s.parse().ok()?),
    };
    Some(r)
}

/// Always `"p/q"`, reduced, with positive denominator.
pub fn format(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn from_json(v: &serde_json::Value) -> Option<Rational> {
    match v {
        serde_json::Value::String(s) => parse(s),
        serde_json::Value::Number(n) => n.as_i64().map(int),
        _ => None,
    }
}

pub fn floor(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

pub fn is_unit_interval(r: &Rational) -> bool {
    !r.is_negative() && r < &Rational::one()
}

pub fn ser<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format(r))
}

pub fn ser_vec<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format))
}

pub fn de<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
    let v = serde_json::Value::deserialize(d)?;
    from_json(&v).ok_or_else(|| serde::de::Error::custom("expected a rational \"p/q\" or an integer"))
}

pub fn de_vec<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
    let v = Vec::<serde_json::Value>::deserialize(d)?;
    v.iter()
        .map(|x| from_json(x).ok_or_else(|| serde::de::Error::custom("expected a rational \"p/q\" or an integer")))
        .collect()
}

pub fn ser_bigints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|b| b.to_string()))
}

pub fn ser_bigint_table<S: Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|row| row.iter().map(|b| b.to_string()).collect::<Vec<_>>()))
}

/// Rank of a list of rational row vectors.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    row_echelon(rows).len()
}

/// Reduced row echelon form; returns the nonzero rows with their pivot columns.
pub fn row_echelon(rows: &[Vec<Rational>]) -> Vec<(usize, Vec<Rational>)> {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut out: Vec<(usize, Vec<Rational>)> = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    for (i, row) in m.into_iter().take(r).enumerate() {
        let pivot = row.iter().position(|x| !x.is_zero()).unwrap_or(i);
        out.push((pivot, row));
    }
    out
}

/// A basis of the right kernel `{x : rows · x = 0}`.
pub fn kernel(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let ech = row_echelon(rows);
    let pivots: Vec<usize> = ech.iter().map(|(p, _)| *p).collect();
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); ncols];
            v[free] = Rational::one();
            for (p, row) in &ech {
                v[*p] = -row[free].clone();
            }
            v
        })
        .collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        let r = parse("6/-4").unwrap();
        assert_eq!(format(&r), "-3/2");
        assert_eq!(format(&parse("5").unwrap()), "5/1");
        assert!(parse("1/0").is_none());
        assert!(parse("x").is_none());
    }

    #[test]
    fn kernel_of_plane() {
        let rows = vec![vec![int(1), int(1), int(0)]];
        let k = kernel(&rows, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(dot(&rows[0], v).is_zero());
        }
        assert_eq!(rank(&rows), 1);
    }
}
