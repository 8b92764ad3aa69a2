//! Exact arithmetic in the cyclotomic field Q(zeta), zeta a primitive 2N-th
//! root of unity. The spin phase is omega = zeta^2 = e^{2 pi i / N}; working
//! with order M = 2N keeps half-integer powers of omega exact.
//!
//! Elements are vectors of rationals of length phi(M), reduced modulo the
//! M-th cyclotomic polynomial Phi_M. Equality is coefficient equality.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::ball::{cos_ball, pi_ball, sin_ball, ComplexBall};

/// The ambient field Q(zeta_M) with M = 2N.
#[derive(Debug)]
pub struct CycField {
    n: u32,
    m: u32,
    /// Phi_M as monic integer coefficient vector, ascending degree.
    phi_m: Vec<BigInt>,
    /// zeta^k for k in [0, M), each reduced to the power basis.
    power_table: Vec<Vec<BigRational>>,
    /// Cached numeric embeddings zeta^k -> e^{i pi k / N}, keyed by precision.
    embed_cache: Mutex<HashMap<u32, Arc<Vec<ComplexBall>>>>,
}

impl PartialEq for CycField {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
    }
}

impl Eq for CycField {}

impl CycField {
    pub fn new(n: u32) -> Arc<CycField> {
        assert!(n >= 2, "need N >= 2");
        let m = 2 * n;
        let phi_m = cyclotomic_polynomial(m);
        let deg = phi_m.len() - 1;
        // reduce zeta^k by repeated multiplication by zeta, reducing by Phi_M
        // whenever the degree reaches phi(M)
        let mut power_table: Vec<Vec<BigRational>> = Vec::with_capacity(m as usize);
        let mut cur = vec![BigRational::zero(); deg];
        cur[0] = BigRational::one();
        for _ in 0..m {
            power_table.push(cur.clone());
            // multiply by zeta
            let lead = cur[deg - 1].clone();
            for i in (1..deg).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = BigRational::zero();
            if !lead.is_zero() {
                // zeta^deg = -sum phi_m[i] zeta^i (Phi_M monic)
                for i in 0..deg {
                    cur[i] -= &lead * BigRational::from_integer(phi_m[i].clone());
                }
            }
        }
        Arc::new(CycField {
            n,
            m,
            phi_m,
            power_table,
            embed_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Ring order M = 2N.
    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.phi_m.len() - 1
    }

    pub fn phi_m(&self) -> &[BigInt] {
        &self.phi_m
    }

    /// Numeric enclosures of zeta^k for k in [0, M), at the given precision.
    pub fn zeta_embeddings(self: &Arc<Self>, precision_bits: u32) -> Arc<Vec<ComplexBall>> {
        let mut cache = self.embed_cache.lock().unwrap();
        if let Some(v) = cache.get(&precision_bits) {
            return v.clone();
        }
        let work = precision_bits + 16;
        let pi = pi_ball(work + 16);
        let mut out = Vec::with_capacity(self.m as usize);
        for k in 0..self.m {
            let angle = pi.scale(&BigRational::new(BigInt::from(k), BigInt::from(self.n)));
            out.push(ComplexBall {
                re: cos_ball(&angle, work),
                im: sin_ball(&angle, work),
            });
        }
        let out = Arc::new(out);
        cache.insert(precision_bits, out.clone());
        out
    }
}

/// An element of Q(zeta_{2N}), in canonical power-basis form.
#[derive(Debug, Clone)]
pub struct CycNum {
    field: Arc<CycField>,
    coeffs: Vec<BigRational>,
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        self.field.n == other.field.n && self.coeffs == other.coeffs
    }
}
impl Eq for CycNum {}

impl CycNum {
    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn zero(field: &Arc<CycField>) -> CycNum {
        CycNum {
            field: field.clone(),
            coeffs: vec![BigRational::zero(); field.degree()],
        }
    }

    pub fn one(field: &Arc<CycField>) -> CycNum {
        Self::from_rational(field, BigRational::one())
    }

    pub fn from_rational(field: &Arc<CycField>, r: BigRational) -> CycNum {
        let mut coeffs = vec![BigRational::zero(); field.degree()];
        coeffs[0] = r;
        CycNum {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_integer(field: &Arc<CycField>, n: i64) -> CycNum {
        Self::from_rational(field, BigRational::from_integer(BigInt::from(n)))
    }

    /// zeta^k, any integer k (reduced mod M). zeta_power(2k) is omega^k.
    pub fn zeta_power(field: &Arc<CycField>, k: i64) -> CycNum {
        let m = field.m as i64;
        let k = k.rem_euclid(m) as usize;
        CycNum {
            field: field.clone(),
            coeffs: field.power_table[k].clone(),
        }
    }

    /// omega^k = zeta^{2k}.
    pub fn omega_power(field: &Arc<CycField>, k: i64) -> CycNum {
        Self::zeta_power(field, 2 * k)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check_field(&self, other: &CycNum) {
        assert_eq!(
            self.field.n, other.field.n,
            "cyclotomic field mismatch: N={} vs N={}",
            self.field.n, other.field.n
        );
    }

    pub fn add(&self, other: &CycNum) -> CycNum {
        self.check_field(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycNum {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, other: &CycNum) -> CycNum {
        self.check_field(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        CycNum {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn neg(&self) -> CycNum {
        CycNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &CycNum) -> CycNum {
        self.check_field(other);
        let deg = self.field.degree();
        let mut prod = vec![BigRational::zero(); 2 * deg - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] += a * b;
            }
        }
        CycNum {
            field: self.field.clone(),
            coeffs: reduce_mod_phi(&self.field, prod),
        }
    }

    pub fn scale(&self, r: &BigRational) -> CycNum {
        CycNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm mod Phi_M.
    pub fn inverse(&self) -> CycNum {
        assert!(!self.is_zero(), "division by zero in Q(zeta)");
        let deg = self.field.degree();
        let phi: Vec<BigRational> = self
            .field
            .phi_m
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        // extended gcd of (self, Phi_M) over Q[x]
        let mut r0 = phi;
        let mut r1 = trim(self.coeffs.clone());
        let mut s0: Vec<BigRational> = vec![];
        let mut s1 = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 = gcd (a nonzero constant, since Phi_M is irreducible)
        assert_eq!(r0.len(), 1, "Phi_M not coprime to element");
        let inv_lead = BigRational::one() / r0[0].clone();
        let mut coeffs: Vec<BigRational> = s0.iter().map(|c| c * &inv_lead).collect();
        coeffs.resize(deg, BigRational::zero());
        CycNum {
            field: self.field.clone(),
            coeffs,
        }
    }

    /// Image under the automorphism zeta -> zeta^{M-1} = zeta^{-1}; this sends
    /// omega to omega^{-1} and is the complex conjugation of the standard
    /// embedding.
    pub fn conjugate(&self) -> CycNum {
        let mut acc = CycNum::zero(&self.field);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = CycNum::zeta_power(&self.field, -(i as i64)).scale(c);
            acc = acc.add(&term);
        }
        acc
    }

    /// The rational value, when the element lies in Q; None otherwise.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// The integer value, when the element lies in Z.
    pub fn to_integer(&self) -> Option<BigInt> {
        let r = self.to_rational()?;
        if r.is_integer() {
            Some(r.to_integer())
        } else {
            None
        }
    }

    /// Rigorous enclosure under zeta -> e^{i pi / N}.
    pub fn complex_embed(&self, precision_bits: u32) -> ComplexBall {
        assert!(precision_bits >= 32, "need precision_bits >= 32");
        let table = self.field.zeta_embeddings(precision_bits);
        let mut acc = ComplexBall::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&table[i].scale(c));
        }
        acc.compress(precision_bits + 8)
    }
}

/// Sum of a sequence of zeta powers with rational weights.
pub fn zeta_combination<I>(field: &Arc<CycField>, terms: I) -> CycNum
where
    I: IntoIterator<Item = (i64, BigRational)>,
{
    let mut acc = CycNum::zero(field);
    for (k, w) in terms {
        acc = acc.add(&CycNum::zeta_power(field, k).scale(&w));
    }
    acc
}

fn reduce_mod_phi(field: &CycField, mut coeffs: Vec<BigRational>) -> Vec<BigRational> {
    let deg = field.degree();
    for i in (deg..coeffs.len()).rev() {
        let lead = std::mem::replace(&mut coeffs[i], BigRational::zero());
        if lead.is_zero() {
            continue;
        }
        // zeta^i = zeta^{i-deg} * (-sum phi_m[j] zeta^j)
        for j in 0..deg {
            if !field.phi_m[j].is_zero() {
                let delta = &lead * BigRational::from_integer(field.phi_m[j].clone());
                coeffs[i - deg + j] -= delta;
            }
        }
    }
    coeffs.truncate(deg);
    coeffs.resize(deg, BigRational::zero());
    coeffs
}

// --- small exact polynomial helpers over Q, used only for the inverse ---

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!b.is_empty());
    let mut rem = a.to_vec();
    if rem.len() < b.len() {
        return (vec![], trim(rem));
    }
    let mut quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
    let lead = b.last().unwrap();
    for i in (0..quot.len()).rev() {
        let c = rem[i + b.len() - 1].clone() / lead;
        if !c.is_zero() {
            quot[i] = c.clone();
            for (j, bc) in b.iter().enumerate() {
                let delta = &c * bc;
                rem[i + j] -= delta;
            }
        }
    }
    (trim(quot), trim(rem))
}

/// The M-th cyclotomic polynomial by recursive exact division of x^M - 1 by
/// the lower cyclotomics.
pub fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    assert!(m >= 1);
    // x^m - 1
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            num = int_poly_div_exact(&num, &phi_d);
        }
    }
    num
}

fn int_poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut rem = a.to_vec();
    assert!(rem.len() >= b.len());
    let mut quot = vec![BigInt::zero(); rem.len() - b.len() + 1];
    let lead = b.last().unwrap();
    for i in (0..quot.len()).rev() {
        let c = &rem[i + b.len() - 1] / lead;
        assert_eq!(&c * lead, rem[i + b.len() - 1], "inexact division");
        quot[i] = c.clone();
        for (j, bc) in b.iter().enumerate() {
            let delta = &c * bc;
            rem[i + j] -= delta;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact division");
    quot
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::pow2_inv;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn cyclotomic_polys() {
        // Phi_4 = x^2 + 1, Phi_6 = x^2 - x + 1, Phi_12 = x^4 - x^2 + 1
        let p4: Vec<i64> = vec![1, 0, 1];
        assert_eq!(
            cyclotomic_polynomial(4),
            p4.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>()
        );
        let p6: Vec<i64> = vec![1, -1, 1];
        assert_eq!(
            cyclotomic_polynomial(6),
            p6.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>()
        );
        let p12: Vec<i64> = vec![1, 0, -1, 0, 1];
        assert_eq!(
            cyclotomic_polynomial(12),
            p12.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>()
        );
    }

    #[test]
    fn phi_divides_xm_minus_one() {
        for n in 2..=8u32 {
            let m = 2 * n;
            let phi = cyclotomic_polynomial(m);
            let mut xm1 = vec![BigInt::zero(); m as usize + 1];
            xm1[0] = -BigInt::one();
            xm1[m as usize] = BigInt::one();
            // exact division must not panic
            let _ = int_poly_div_exact(&xm1, &phi);
            assert_eq!(*phi.last().unwrap(), BigInt::one());
        }
    }

    #[test]
    fn zeta_power_basics() {
        let f = CycField::new(3);
        assert_eq!(CycNum::zeta_power(&f, 0), CycNum::one(&f));
        assert_eq!(CycNum::zeta_power(&f, 6), CycNum::one(&f));
        // 1 + omega + omega^2 = 0
        let s = CycNum::zeta_power(&f, 0)
            .add(&CycNum::zeta_power(&f, 2))
            .add(&CycNum::zeta_power(&f, 4));
        assert!(s.is_zero());
    }

    #[test]
    fn ring_arith_examples() {
        let f3 = CycField::new(3);
        let w = CycNum::omega_power(&f3, 1);
        let w2 = CycNum::omega_power(&f3, 2);
        assert_eq!(w.mul(&w2), CycNum::one(&f3));

        let f2 = CycField::new(2);
        let w = CycNum::omega_power(&f2, 1);
        assert!(CycNum::one(&f2).add(&w).is_zero());

        // (1 - omega)(1 - omega^2) = 3 for N = 3
        let one = CycNum::one(&f3);
        let a = one.sub(&CycNum::omega_power(&f3, 1));
        let b = one.sub(&CycNum::omega_power(&f3, 2));
        assert_eq!(a.mul(&b), CycNum::from_integer(&f3, 3));
    }

    #[test]
    fn conjugate_examples() {
        let f = CycField::new(3);
        let w = CycNum::omega_power(&f, 1);
        assert_eq!(w.conjugate(), CycNum::omega_power(&f, 2));
        let r = CycNum::from_rational(&f, rat(5, 7));
        assert_eq!(r.conjugate(), r);
        let a = CycNum::one(&f).add(&w);
        assert_eq!(a.conjugate(), CycNum::omega_power(&f, 1).neg());
        // involution
        assert_eq!(a.conjugate().conjugate(), a);
    }

    #[test]
    fn conjugate_is_homomorphism() {
        let f = CycField::new(5);
        let a = CycNum::zeta_power(&f, 3).add(&CycNum::from_integer(&f, 2));
        let b = CycNum::zeta_power(&f, 7).sub(&CycNum::zeta_power(&f, 1));
        assert_eq!(a.mul(&b).conjugate(), a.conjugate().mul(&b.conjugate()));
    }

    #[test]
    fn to_rational_examples() {
        let f3 = CycField::new(3);
        let s = CycNum::zeta_power(&f3, 0)
            .add(&CycNum::zeta_power(&f3, 2))
            .add(&CycNum::zeta_power(&f3, 4));
        assert_eq!(s.to_rational(), Some(BigRational::zero()));
        assert_eq!(CycNum::omega_power(&f3, 1).to_rational(), None);
        let f2 = CycField::new(2);
        assert_eq!(
            CycNum::omega_power(&f2, 2).to_rational(),
            Some(BigRational::one())
        );
    }

    #[test]
    fn inverse_works() {
        let f = CycField::new(4);
        let a = CycNum::zeta_power(&f, 3).add(&CycNum::from_integer(&f, 2));
        let inv = a.inverse();
        assert_eq!(a.mul(&inv), CycNum::one(&f));
    }

    #[test]
    fn pochhammer_product_is_n() {
        // prod_{j=1}^{N-1} (1 - omega^j) = N
        for n in 2..=8i64 {
            let f = CycField::new(n as u32);
            let one = CycNum::one(&f);
            let mut prod = one.clone();
            for j in 1..n {
                prod = prod.mul(&one.sub(&CycNum::omega_power(&f, j)));
            }
            assert_eq!(prod, CycNum::from_integer(&f, n));
        }
    }

    #[test]
    fn embed_examples() {
        let f2 = CycField::new(2);
        let w = CycNum::omega_power(&f2, 1);
        let e = w.complex_embed(64);
        assert!(e.re.contains(&rat(-1, 1)));
        assert!(e.im.contains_zero());
        assert!(e.re.rad < pow2_inv(60));

        let f4 = CycField::new(4);
        let w = CycNum::omega_power(&f4, 1);
        let e = w.complex_embed(64);
        assert!(e.re.contains_zero());
        assert!(e.im.contains(&rat(1, 1)));

        // |1 + omega| = 1 for N = 3: check against e^{i pi / 3}
        let f3 = CycField::new(3);
        let a = CycNum::one(&f3).add(&CycNum::omega_power(&f3, 1));
        let e = a.complex_embed(96);
        let norm = e.re.mul(&e.re).add(&e.im.mul(&e.im));
        assert!(norm.contains(&rat(1, 1)));
    }

    #[test]
    fn embed_respects_arithmetic() {
        let f = CycField::new(5);
        let a = CycNum::zeta_power(&f, 1).add(&CycNum::from_integer(&f, 1));
        let b = CycNum::zeta_power(&f, 4).sub(&CycNum::from_integer(&f, 3));
        let prod = a.mul(&b).complex_embed(80);
        let prod2 = a.complex_embed(80).mul(&b.complex_embed(80));
        // the two enclosures must overlap (both contain the true value)
        assert!(prod.sub(&prod2).contains_zero());
    }
}
