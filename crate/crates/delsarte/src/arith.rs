//! Exact arithmetic helpers: big rationals, binomials, and the canonical
//! `p/q` text form used in reports and point-set files.

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}

pub fn rat_frac(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

/// Binomial coefficient C(n, k) as a big integer; 0 for k < 0 or k > n.
pub fn binomial(n: i64, k: i64) -> Int {
    if k < 0 || k > n || n < 0 {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut acc = Int::one();
    for i in 0..k {
        acc = acc * Int::from(n - i) / Int::from(i + 1);
    }
    acc
}

pub fn pow_u64(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

/// Renders a rational as `p` when integral, else `p/q` in lowest terms.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `-p`, or `p/q` into an exact rational.
pub fn rat_from_str(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: Int = n.trim().parse().ok()?;
        let d: Int = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rat::new(n, d))
    } else {
        let n: Int = s.parse().ok()?;
        Some(Rat::from_integer(n))
    }
}

/// The exact rational as f64 (best effort, used only for approximate paths).
pub fn rat_to_f64(r: &Rat) -> f64 {
    let n = r.numer();
    let d = r.denom();
    // fast path when both fit in i128
    if let (Some(n), Some(d)) = (to_i128(n), to_i128(d)) {
        return n as f64 / d as f64;
    }
    let nf = big_to_f64(n);
    let df = big_to_f64(d);
    nf / df
}

fn to_i128(v: &Int) -> Option<i128> {
    use num::ToPrimitive;
    v.to_i128()
}

fn big_to_f64(v: &Int) -> f64 {
    use num::ToPrimitive;
    v.to_f64().unwrap_or(if v.sign() == Sign::Minus {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

/// Exact integer square test helpers used by valency/multiplicity checks.
pub fn rat_is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

pub fn rat_abs(r: &Rat) -> Rat {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(23, 0), int(1));
        assert_eq!(binomial(4, 7), int(0));
        assert_eq!(binomial(24, 12), int(2704156));
    }

    #[test]
    fn rational_round_trip() {
        let r = rat_frac(-21, 14);
        assert_eq!(rat_to_string(&r), "-3/2");
        assert_eq!(rat_from_str("-3/2").unwrap(), r);
        assert_eq!(rat_from_str("7").unwrap(), rat(7));
        assert!(rat_from_str("1/0").is_none());
    }
}
