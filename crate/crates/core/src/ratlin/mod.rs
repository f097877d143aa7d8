//! Exact rational linear algebra.
//!
//! Every scalar in the crate is a [`Rat`], an arbitrary-precision rational kept
//! in lowest terms. Vectors are plain `Vec<Rat>`; matrices are row-major
//! [`RatMat`]. Nothing in here ever touches floating point.

mod elim;
mod matrix;

pub use elim::{kernel_basis, rank, rref, solve, Rref};
pub use matrix::RatMat;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational scalar, always normalized.
pub type Rat = num_rational::BigRational;

/// Dense rational vector.
pub type RatVec = Vec<Rat>;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `num / den`, reduced. Panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_bigint(n: BigInt) -> Rat {
    Rat::from_integer(n)
}

pub fn ints(values: &[i64]) -> RatVec {
    values.iter().map(|&v| int(v)).collect()
}

pub fn zeros(n: usize) -> RatVec {
    vec![Rat::zero(); n]
}

/// `2^{-exp}` as an exact rational.
pub fn inverse_power_of_two(exp: usize) -> Rat {
    Rat::new(BigInt::one(), BigInt::one() << exp)
}

/// Parses `p`, `-p`, `p/q` or `-p/q` with decimal digits only. The sign may
/// only appear on the numerator and the denominator must be nonzero.
pub fn parse_rat(text: &str) -> Result<Rat, String> {
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (num_str, den_str) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !digits(num_str) {
        return Err(format!("malformed rational `{text}`"));
    }
    let mut num: BigInt = num_str.parse().map_err(|_| format!("malformed rational `{text}`"))?;
    if negative {
        num = -num;
    }
    let den: BigInt = match den_str {
        None => BigInt::one(),
        Some(d) if digits(d) => d.parse().map_err(|_| format!("malformed rational `{text}`"))?,
        Some(_) => return Err(format!("malformed denominator in `{text}`")),
    };
    if den.is_zero() {
        return Err(format!("zero denominator in `{text}`"));
    }
    Ok(Rat::new(num, den))
}

/// Space-separated rendering of a vector, e.g. `1/2 0 -3`.
pub fn format_vec(v: &[Rat]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

pub fn format_ints(v: &[BigInt]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn add(a: &[Rat], b: &[Rat]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rat], b: &[Rat]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(s: &Rat, v: &[Rat]) -> RatVec {
    v.iter().map(|x| s * x).collect()
}

/// `a + s * b`
pub fn axpy(a: &[Rat], s: &Rat, b: &[Rat]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}

pub fn neg(v: &[Rat]) -> RatVec {
    v.iter().map(|x| -x).collect()
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn l1_norm(v: &[Rat]) -> Rat {
    v.iter().fold(Rat::zero(), |acc, x| acc + x.abs())
}

/// Scales `v` by a positive factor so its entries become coprime integers.
/// The zero vector maps to all zeros. Orientation is preserved.
pub fn primitive_integer(v: &[Rat]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let gcd = scaled
        .iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() {
        return scaled;
    }
    scaled.into_iter().map(|x| x / &gcd).collect()
}

/// Like [`primitive_integer`] but flips the sign so the first nonzero entry is
/// positive.
pub fn canonical_integer(v: &[Rat]) -> Vec<BigInt> {
    let mut out = primitive_integer(v);
    if out.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative) {
        for x in &mut out {
            *x = -&*x;
        }
    }
    out
}

pub fn to_rats(v: &[BigInt]) -> RatVec {
    v.iter().cloned().map(Rat::from_integer).collect()
}

/// Number of bits needed for numerator plus denominator, the usual encoding
/// size of a rational.
pub fn bit_size(x: &Rat) -> u64 {
    x.numer().bits() + x.denom().bits()
}

/// If `v = t * w` for some rational `t > 0`, returns `t`.
pub fn positive_multiple(v: &[Rat], w: &[Rat]) -> Option<Rat> {
    let pivot = w.iter().position(|x| !x.is_zero())?;
    let t = &v[pivot] / &w[pivot];
    if !t.is_positive() {
        return None;
    }
    v.iter().zip(w).all(|(a, b)| *a == &t * b).then_some(t)
}
