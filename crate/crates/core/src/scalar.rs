//! Exact Gaussian-rational scalars.

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact complex number `re + i*im` with rational parts.
pub type Scalar = Complex<BigRational>;

pub fn rational(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn from_int(v: i64) -> Scalar {
    Complex::new(
        BigRational::from_integer(BigInt::from(v)),
        BigRational::zero(),
    )
}

pub fn from_rational(r: BigRational) -> Scalar {
    Complex::new(r, BigRational::zero())
}

pub fn gaussian(re: BigRational, im: BigRational) -> Scalar {
    Complex::new(re, im)
}

pub fn imaginary_unit() -> Scalar {
    Complex::new(BigRational::zero(), BigRational::one())
}

/// Lossy conversion to a floating-point complex number.
pub fn to_c64(s: &Scalar) -> Complex64 {
    Complex64::new(
        s.re.to_f64().unwrap_or(f64::NAN),
        s.im.to_f64().unwrap_or(f64::NAN),
    )
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational value of a finite float.
pub fn rational_from_f64(v: f64) -> Option<BigRational> {
    BigRational::from_float(v)
}

/// Parses an unsigned decimal (`12`, `0.25`) or fraction (`3/4`) literal.
pub fn parse_unsigned_rational(text: &str) -> Option<BigRational> {
    if let Some((p, q)) = text.split_once('/') {
        let p: BigInt = p.parse().ok()?;
        let q: BigInt = q.parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        if whole.is_empty() && frac.is_empty() {
            return None;
        }
        let digits = format!("{whole}{frac}");
        let p: BigInt = digits.parse().ok()?;
        let q = num_traits::pow(BigInt::from(10), frac.len());
        return Some(BigRational::new(p, q));
    }
    let p: BigInt = text.parse().ok()?;
    Some(BigRational::from_integer(p))
}

pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Formats a scalar in the input grammar, e.g. `3/4`, `-2i`, `(1+2i)`.
pub fn format_scalar(s: &Scalar) -> String {
    if s.im.is_zero() {
        return format_rational(&s.re);
    }
    let im_abs = s.im.abs();
    let im_part = if im_abs.is_one() {
        "i".to_string()
    } else {
        format!("{}i", format_rational(&im_abs))
    };
    if s.re.is_zero() {
        if s.im.is_negative() {
            format!("-{im_part}")
        } else {
            im_part
        }
    } else {
        let sign = if s.im.is_negative() { '-' } else { '+' };
        format!("({}{}{})", format_rational(&s.re), sign, im_part)
    }
}

pub fn is_one(s: &Scalar) -> bool {
    s.re.is_one() && s.im.is_zero()
}

/// Integer power, negative exponents allowed for nonzero `s`.
pub fn powi(s: &Scalar, e: i64) -> Option<Scalar> {
    let base = if e < 0 {
        if s.is_zero() {
            return None;
        }
        s.inv()
    } else {
        s.clone()
    };
    let mut acc = Scalar::one();
    let mut b = base;
    let mut k = e.unsigned_abs();
    while k > 0 {
        if k & 1 == 1 {
            acc = &acc * &b;
        }
        b = &b * &b;
        k >>= 1;
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_literals() {
        assert_eq!(parse_unsigned_rational("3/4"), Some(rational(3, 4)));
        assert_eq!(parse_unsigned_rational("0.25"), Some(rational(1, 4)));
        assert_eq!(parse_unsigned_rational("12"), Some(rational(12, 1)));
        assert_eq!(parse_unsigned_rational("1/0"), None);
    }

    #[test]
    fn formats_round_trip_shapes() {
        assert_eq!(format_scalar(&from_int(3)), "3");
        assert_eq!(
            format_scalar(&gaussian(rational(1, 1), rational(2, 1))),
            "(1+2i)"
        );
        assert_eq!(
            format_scalar(&gaussian(rational(0, 1), rational(-1, 1))),
            "-i"
        );
    }

    #[test]
    fn integer_powers() {
        let two = from_int(2);
        assert_eq!(powi(&two, -2), Some(from_rational(rational(1, 4))));
        assert_eq!(powi(&two, 0), Some(from_int(1)));
        assert_eq!(powi(&Scalar::zero(), -1), None);
    }
}
