//! Rigorous real and complex ball arithmetic over exact rationals.
//!
//! A ball is a rational midpoint plus a nonnegative rational radius; every
//! operation widens the radius enough to enclose the true result. Midpoints
//! are periodically rounded to dyadics (`compress`) so denominators stay
//! bounded at a chosen working precision.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq)]
pub struct RealBall {
    pub mid: BigRational,
    pub rad: BigRational,
}

impl RealBall {
    pub fn exact(mid: BigRational) -> Self {
        RealBall {
            mid,
            rad: BigRational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::exact(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn new(mid: BigRational, rad: BigRational) -> Self {
        debug_assert!(!rad.is_negative());
        RealBall { mid, rad }
    }

    pub fn add(&self, other: &Self) -> Self {
        RealBall {
            mid: &self.mid + &other.mid,
            rad: &self.rad + &other.rad,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        RealBall {
            mid: &self.mid - &other.mid,
            rad: &self.rad + &other.rad,
        }
    }

    pub fn neg(&self) -> Self {
        RealBall {
            mid: -&self.mid,
            rad: self.rad.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mid = &self.mid * &other.mid;
        let rad = self.mid.abs() * &other.rad + other.mid.abs() * &self.rad + &self.rad * &other.rad;
        RealBall { mid, rad }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        RealBall {
            mid: &self.mid * c,
            rad: &self.rad * c.abs(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.abs() <= self.rad
    }

    /// Reciprocal enclosure; panics if the ball contains zero.
    pub fn recip(&self) -> Self {
        let am = self.mid.abs();
        assert!(am > self.rad, "reciprocal of a ball containing zero");
        let mid = BigRational::one() / self.mid.clone();
        // sup |1/x - 1/m| over |x - m| <= r is r / (|m| (|m| - r))
        let rad = &self.rad / (&am * (&am - &self.rad));
        RealBall { mid, rad }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.recip())
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        (&self.mid - v).abs() <= self.rad
    }

    /// Upper bound on |x| over the ball.
    pub fn abs_upper(&self) -> BigRational {
        self.mid.abs() + &self.rad
    }

    /// Round the midpoint to a dyadic with denominator 2^prec, absorbing the
    /// rounding error into the radius (radius itself rounded up likewise).
    pub fn compress(&self, prec: u32) -> Self {
        let scale = BigInt::one() << prec;
        let mid_num = round_nearest(&(&self.mid * BigRational::from_integer(scale.clone())));
        let mid = BigRational::new(mid_num, scale.clone());
        let err = (&self.mid - &mid).abs();
        let rad_exact = &self.rad + err;
        let rad_num = ceil_int(&(rad_exact * BigRational::from_integer(scale.clone())));
        let rad = BigRational::new(rad_num, scale);
        RealBall { mid, rad }
    }

    /// Decimal rendering of the midpoint, with enough digits for the radius.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        rational_to_decimal(&self.mid, digits)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexBall {
    pub re: RealBall,
    pub im: RealBall,
}

impl ComplexBall {
    pub fn from_real(re: RealBall) -> Self {
        ComplexBall {
            re,
            im: RealBall::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::from_real(RealBall::zero())
    }

    pub fn one() -> Self {
        Self::from_real(RealBall::one())
    }

    pub fn add(&self, other: &Self) -> Self {
        ComplexBall {
            re: self.re.add(&other.re),
            im: self.im.add(&other.im),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        ComplexBall {
            re: self.re.sub(&other.re),
            im: self.im.sub(&other.im),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        ComplexBall {
            re: self.re.mul(&other.re).sub(&self.im.mul(&other.im)),
            im: self.re.mul(&other.im).add(&self.im.mul(&other.re)),
        }
    }

    pub fn conj(&self) -> Self {
        ComplexBall {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        ComplexBall {
            re: self.re.scale(c),
            im: self.im.scale(c),
        }
    }

    pub fn compress(&self, prec: u32) -> Self {
        ComplexBall {
            re: self.re.compress(prec),
            im: self.im.compress(prec),
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }
}

fn round_nearest(x: &BigRational) -> BigInt {
    let doubled = x * BigRational::from_integer(BigInt::from(2));
    let fl = doubled.floor().to_integer();
    num_traits::Euclid::div_euclid(&(fl + BigInt::one()), &BigInt::from(2))
}

fn ceil_int(x: &BigRational) -> BigInt {
    x.ceil().to_integer()
}

/// Enclosure of pi via Machin's formula; radius below 2^{-prec}.
pub fn pi_ball(prec: u32) -> RealBall {
    let a = arctan_inv(5, prec + 8).scale(&BigRational::from_integer(BigInt::from(16)));
    let b = arctan_inv(239, prec + 8).scale(&BigRational::from_integer(BigInt::from(4)));
    a.sub(&b).compress(prec + 4)
}

/// Enclosure of arctan(1/x) for integer x >= 2 by the alternating series.
fn arctan_inv(x: i64, prec: u32) -> RealBall {
    let xr = BigRational::from_integer(BigInt::from(x));
    let x2 = &xr * &xr;
    let tol = BigRational::new(BigInt::one(), BigInt::one() << prec);
    let mut term = BigRational::one() / &xr; // 1/(x^{2k+1}) part without the odd divisor
    let mut sum = BigRational::zero();
    let mut k: u64 = 0;
    loop {
        let contrib = &term / BigRational::from_integer(BigInt::from(2 * k + 1));
        if contrib < tol {
            // alternating series: truncation error bounded by first omitted term
            return RealBall::new(sum, contrib);
        }
        if k % 2 == 0 {
            sum += &contrib;
        } else {
            sum -= &contrib;
        }
        term = term / &x2;
        k += 1;
    }
}

/// cos over a ball, by Taylor series at the midpoint with Lagrange tail bound;
/// the input radius propagates with Lipschitz constant 1.
pub fn cos_ball(x: &RealBall, prec: u32) -> RealBall {
    let x = x.compress(prec + 16);
    let (c, tail) = cos_taylor(&x.mid, prec + 8);
    RealBall::new(c, tail + &x.rad).compress(prec + 4)
}

pub fn sin_ball(x: &RealBall, prec: u32) -> RealBall {
    let x = x.compress(prec + 16);
    let (s, tail) = sin_taylor(&x.mid, prec + 8);
    RealBall::new(s, tail + &x.rad).compress(prec + 4)
}

fn cos_taylor(m: &BigRational, prec: u32) -> (BigRational, BigRational) {
    let tol = BigRational::new(BigInt::one(), BigInt::one() << prec);
    let m2 = m * m;
    let mut term = BigRational::one(); // m^{2k}/(2k)!
    let mut sum = BigRational::zero();
    let mut k: u64 = 0;
    loop {
        if k % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        // next term: degree 2k+2
        let next = &term * &m2
            / BigRational::from_integer(BigInt::from((2 * k + 1) * (2 * k + 2)));
        // |cos^{(n)}| <= 1, so the Lagrange remainder after degree 2k is
        // bounded by |m|^{2k+2}/(2k+2)!, i.e. |next|
        if next.abs() < tol && BigRational::from_integer(BigInt::from(2 * k + 2)) > m.abs() {
            return (sum, next.abs());
        }
        term = next;
        k += 1;
    }
}

fn sin_taylor(m: &BigRational, prec: u32) -> (BigRational, BigRational) {
    let tol = BigRational::new(BigInt::one(), BigInt::one() << prec);
    let m2 = m * m;
    let mut term = m.clone(); // m^{2k+1}/(2k+1)!
    let mut sum = BigRational::zero();
    let mut k: u64 = 0;
    loop {
        if k % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        let next = &term * &m2
            / BigRational::from_integer(BigInt::from((2 * k + 2) * (2 * k + 3)));
        if next.abs() < tol && BigRational::from_integer(BigInt::from(2 * k + 3)) > m.abs() {
            return (sum, next.abs());
        }
        term = next;
        k += 1;
    }
}

/// Fixed-point decimal rendering of a rational.
pub fn rational_to_decimal(x: &BigRational, digits: usize) -> String {
    let neg = x.is_negative();
    let ax = x.abs();
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = (&ax * BigRational::from_integer(scale.clone())).round().to_integer();
    let int_part = &scaled / &scale;
    let frac_part = &scaled % &scale;
    let frac_str = format!("{:0>width$}", frac_part.to_string(), width = digits);
    let sign = if neg && (!int_part.is_zero() || !frac_part.is_zero()) {
        "-"
    } else {
        ""
    };
    if digits == 0 {
        format!("{}{}", sign, int_part)
    } else {
        format!("{}{}.{}", sign, int_part, frac_str)
    }
}

/// 2^{-bits} as a rational, handy for tolerances.
pub fn pow2_inv(bits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << bits)
}

/// 10^{-digits} as a rational.
pub fn pow10_inv(digits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u32).pow(digits))
}

#[allow(unused)]
fn f64_of(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn pi_encloses_reference() {
        let p = pi_ball(128);
        // 3.14159265358979323846264338327950288419716939937510...
        let lo = rat(314159265358979323, 100000000000000000);
        let hi = rat(314159265358979324, 100000000000000000);
        assert!(p.mid > lo && p.mid < hi);
        assert!(p.rad < pow2_inv(120));
    }

    #[test]
    fn cos_sin_known_values() {
        let p = pi_ball(160);
        // cos(pi/3) = 1/2, sin(pi/6) = 1/2
        let third = p.scale(&rat(1, 3));
        let c = cos_ball(&third, 128);
        assert!(c.contains(&rat(1, 2)));
        let sixth = p.scale(&rat(1, 6));
        let s = sin_ball(&sixth, 128);
        assert!(s.contains(&rat(1, 2)));
        // cos(pi) = -1
        let c = cos_ball(&p, 128);
        assert!(c.contains(&rat(-1, 1)));
        assert!(c.rad < pow2_inv(100));
    }

    #[test]
    fn mul_encloses_product() {
        let a = RealBall::new(rat(1, 3), rat(1, 1000));
        let b = RealBall::new(rat(-7, 2), rat(1, 500));
        let c = a.mul(&b);
        assert!(c.contains(&(rat(1, 3) * rat(-7, 2))));
        // endpoints of the true interval product stay inside
        let corner = (rat(1, 3) + rat(1, 1000)) * (rat(-7, 2) - rat(1, 500));
        assert!(c.contains(&corner));
    }

    #[test]
    fn compress_keeps_value() {
        let a = RealBall::new(rat(1, 3), rat(0, 1));
        let c = a.compress(64);
        assert!(c.contains(&rat(1, 3)));
        assert!(c.rad < pow2_inv(60));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(rational_to_decimal(&rat(-1, 2), 3), "-0.500");
        assert_eq!(rational_to_decimal(&rat(7, 1), 2), "7.00");
    }
}
