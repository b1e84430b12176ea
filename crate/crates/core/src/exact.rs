//! Exact scalar arithmetic.
//!
//! All Hamming-side computations run on arbitrary-precision rationals so
//! that identities can be asserted with zero residual. `Rat` is kept in
//! canonical reduced form (positive denominator, gcd 1) by `num-rational`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational scalar, always in canonical reduced form.
pub type Rat = BigRational;

/// Shorthand for an integer-valued `Rat`.
pub fn rat(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn rat_u(v: u64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Lossless conversion from an `f64` (every finite double is a dyadic rational).
pub fn rat_from_f64(x: f64) -> Option<Rat> {
    Rat::from_float(x)
}

pub fn to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Fall back to a quotient of truncated parts for extreme magnitudes.
        let n = x.numer().to_f64().unwrap_or(f64::NAN);
        let d = x.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Binomial coefficient C(n, k) as a big integer; 0 when k > n.
pub fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

pub fn binom_rat(n: u64, k: u64) -> Rat {
    Rat::from_integer(binom(n, k))
}

/// Generalized binomial C(z, j) = z(z-1)...(z-j+1)/j! for rational z.
pub fn binom_gen(z: &Rat, j: u64) -> Rat {
    let mut num = Rat::one();
    for i in 0..j {
        num *= z - rat_u(i);
    }
    let mut fact = BigInt::one();
    for i in 1..=j {
        fact *= BigInt::from(i);
    }
    num / Rat::from_integer(fact)
}

/// Nonnegative integer power of a rational.
pub fn rat_pow(base: &Rat, exp: u32) -> Rat {
    let mut acc = Rat::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        b = &b * &b;
        e >>= 1;
    }
    acc
}

/// q^e as a `Rat` for possibly negative exponents.
pub fn int_pow(q: u64, e: i64) -> Rat {
    let p = rat_pow(&rat_u(q), e.unsigned_abs() as u32);
    if e >= 0 {
        p
    } else {
        p.recip()
    }
}

pub fn is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}

/// Round a nonnegative rational down to `digits` decimal places
/// (directed rounding used when approximating irrational potentials).
pub fn round_down(x: f64, digits: u32) -> Rat {
    let scale = 10f64.powi(digits as i32);
    let scaled = (x * scale).floor();
    rat_from_f64(scaled).map(|r| r / rat_from_f64(scale).unwrap()).unwrap_or_else(Rat::zero)
}

/// Parse a rational from "p/q", integer, or decimal notation, exactly.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let num: BigInt = p.trim().parse().ok()?;
        let den: BigInt = q.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(Rat::new(num, den));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let neg = int_part.trim_start().starts_with('-');
        let int: BigInt = if int_part.is_empty() || int_part == "-" {
            BigInt::zero()
        } else {
            int_part.parse().ok()?
        };
        if frac_part.is_empty() {
            return Some(Rat::from_integer(int));
        }
        let frac: BigInt = frac_part.parse().ok()?;
        if frac.is_negative() {
            return None;
        }
        let den = BigInt::from(10u32).pow(frac_part.len() as u32);
        let abs = Rat::from_integer(int.abs()) + Rat::new(frac, den);
        return Some(if neg { -abs } else { abs });
    }
    let num: BigInt = s.parse().ok()?;
    Some(Rat::from_integer(num))
}

/// Render a rational as `p/q` (or a plain integer when the denominator is 1).
pub fn format_rat(x: &Rat) -> String {
    if is_integer(x) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
