//! Helpers for exact rational vectors: parsing, formatting, arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;
pub type RatVec = Vec<BigRational>;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_from_int(n: &BigInt) -> Rat {
    Rat::from_integer(n.clone())
}

/// Parse "p", "-p" or "p/q" into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("cannot parse rational '{s}'"));
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad())?;
        let d: BigInt = den.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Rat::new(n, d))
    } else {
        let n: BigInt = s.parse().map_err(|_| bad())?;
        Ok(Rat::from_integer(n))
    }
}

/// Parse a comma-separated rational vector such as "1/2,0,-3".
pub fn parse_rat_vec(s: &str) -> Result<RatVec> {
    s.split(',').map(parse_rat).collect()
}

/// Parse a comma-separated integer vector such as "1,0,-2".
pub fn parse_int_vec(s: &str) -> Result<Vec<BigInt>> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("cannot parse integer '{}'", p.trim())))
        })
        .collect()
}

/// Lowest-terms string: "0", "-3", "1/2".
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Vector string: "0" for the zero vector, otherwise "(a,b,...)".
pub fn format_rat_vec(v: &[Rat]) -> String {
    if v.iter().all(|x| x.is_zero()) {
        return "0".to_string();
    }
    let parts: Vec<String> = v.iter().map(format_rat).collect();
    format!("({})", parts.join(","))
}

pub fn format_int_vec(v: &[BigInt]) -> String {
    if v.iter().all(|x| x.is_zero()) {
        return "0".to_string();
    }
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn int_vec_to_rat(v: &[BigInt]) -> RatVec {
    v.iter().map(rat_from_int).collect()
}

/// Exact dot product of an integer row with a rational vector.
pub fn dot_int_rat(row: &[BigInt], v: &[Rat]) -> Rat {
    debug_assert_eq!(row.len(), v.len());
    let mut acc = Rat::zero();
    for (a, b) in row.iter().zip(v) {
        if !a.is_zero() {
            acc += rat_from_int(a) * b;
        }
    }
    acc
}

pub fn dot_int_int(row: &[BigInt], v: &[BigInt]) -> BigInt {
    debug_assert_eq!(row.len(), v.len());
    let mut acc = BigInt::zero();
    for (a, b) in row.iter().zip(v) {
        acc += a * b;
    }
    acc
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

pub fn is_integer_vec(v: &[Rat]) -> bool {
    v.iter().all(is_integer)
}

pub fn rat_vec_sub(a: &[Rat], b: &[Rat]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn rat_vec_add(a: &[Rat], b: &[Rat]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn int_vec_add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn int_vec_sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn int_vec_neg(a: &[BigInt]) -> Vec<BigInt> {
    a.iter().map(|x| -x).collect()
}

/// Truncate a rational vector to its integer part when every entry is integral.
pub fn rat_vec_to_int(v: &[Rat]) -> Option<Vec<BigInt>> {
    if is_integer_vec(v) {
        Some(v.iter().map(|r| r.numer().clone()).collect())
    } else {
        None
    }
}

/// floor(p) for a rational.
pub fn rat_floor(r: &Rat) -> BigInt {
    r.numer().div_floor(r.denom())
}

/// Sort key: lexicographic comparison of rational vectors.
pub fn cmp_rat_vec(a: &[Rat], b: &[Rat]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let c = x.cmp(y);
        if c != std::cmp::Ordering::Equal {
            return c;
        }
    }
    a.len().cmp(&b.len())
}

pub fn cmp_int_vec(a: &[BigInt], b: &[BigInt]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let c = x.cmp(y);
        if c != std::cmp::Ordering::Equal {
            return c;
        }
    }
    a.len().cmp(&b.len())
}

/// Largest absolute value among the entries, as a rational.
pub fn max_abs(v: &[Rat]) -> Rat {
    let mut m = Rat::zero();
    for x in v {
        let a = x.abs();
        if a > m {
            m = a;
        }
    }
    m
}
