//! Polynomial layer: dense polynomials over Q(zeta), the counting polynomial
//! and its residue-class sections (the Drinfeld polynomial), the L-fold sums
//! K_m / Kbar_m by brute force and by generating-function expansion, and the
//! section polynomials G_Q / Gbar_Q.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::ball::RealBall;
use crate::compositions::{count_cm, enumerate, Composition};
use crate::cyclotomic::{CycField, CycNum};
use crate::error::Error;
use crate::qseries::QBinomialTable;
use crate::roots::RootSet;

/// Indeterminate tag for [`CycPoly`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    T,
    Z,
}

/// Dense polynomial over Q(zeta) in one indeterminate, ascending degree,
/// trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq)]
pub struct CycPoly {
    field: Arc<CycField>,
    var: Var,
    coeffs: Vec<CycNum>,
}

impl CycPoly {
    pub fn zero(field: &Arc<CycField>, var: Var) -> CycPoly {
        CycPoly {
            field: field.clone(),
            var,
            coeffs: vec![],
        }
    }

    pub fn constant(field: &Arc<CycField>, var: Var, c: CycNum) -> CycPoly {
        CycPoly {
            field: field.clone(),
            var,
            coeffs: vec![c],
        }
        .trimmed()
    }

    pub fn one(field: &Arc<CycField>, var: Var) -> CycPoly {
        Self::constant(field, var, CycNum::one(field))
    }

    pub fn from_coeffs(field: &Arc<CycField>, var: Var, coeffs: Vec<CycNum>) -> CycPoly {
        CycPoly {
            field: field.clone(),
            var,
            coeffs,
        }
        .trimmed()
    }

    /// c * x^k
    pub fn monomial(field: &Arc<CycField>, var: Var, c: CycNum, k: usize) -> CycPoly {
        let mut coeffs = vec![CycNum::zero(field); k + 1];
        coeffs[k] = c;
        CycPoly {
            field: field.clone(),
            var,
            coeffs,
        }
        .trimmed()
    }

    fn trimmed(mut self) -> CycPoly {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports None.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[CycNum] {
        &self.coeffs
    }

    /// Coefficient of x^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> CycNum {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| CycNum::zero(&self.field))
    }

    fn check_compat(&self, other: &CycPoly) {
        assert_eq!(self.var, other.var, "indeterminate mismatch");
        assert_eq!(self.field.n(), other.field.n(), "field mismatch");
    }

    pub fn add(&self, other: &CycPoly) -> CycPoly {
        self.check_compat(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i).add(&other.coeff(i)));
        }
        CycPoly {
            field: self.field.clone(),
            var: self.var,
            coeffs,
        }
        .trimmed()
    }

    pub fn sub(&self, other: &CycPoly) -> CycPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CycPoly {
        CycPoly {
            field: self.field.clone(),
            var: self.var,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, other: &CycPoly) -> CycPoly {
        self.check_compat(other);
        if self.is_zero() || other.is_zero() {
            return CycPoly::zero(&self.field, self.var);
        }
        let mut coeffs = vec![CycNum::zero(&self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        CycPoly {
            field: self.field.clone(),
            var: self.var,
            coeffs,
        }
        .trimmed()
    }

    pub fn scale(&self, c: &CycNum) -> CycPoly {
        CycPoly {
            field: self.field.clone(),
            var: self.var,
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
        .trimmed()
    }

    pub fn pow(&self, e: u32) -> CycPoly {
        let mut acc = CycPoly::one(&self.field, self.var);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &CycPoly) -> Result<CycPoly, Error> {
        self.check_compat(divisor);
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        if rem.len() < divisor.coeffs.len() {
            if rem.iter().all(|c| c.is_zero()) {
                return Ok(CycPoly::zero(&self.field, self.var));
            }
            return Err(Error::InexactDivision);
        }
        let dlen = divisor.coeffs.len();
        let lead_inv = divisor.coeffs[dlen - 1].inverse();
        let mut quot = vec![CycNum::zero(&self.field); rem.len() - dlen + 1];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dlen - 1].mul(&lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[i] = c.clone();
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].sub(&c.mul(d));
            }
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision);
        }
        Ok(CycPoly {
            field: self.field.clone(),
            var: self.var,
            coeffs: quot,
        }
        .trimmed())
    }

    /// Coefficientwise conjugation (realizes the bar of the generating
    /// functions for real indeterminates).
    pub fn conjugate(&self) -> CycPoly {
        CycPoly {
            field: self.field.clone(),
            var: self.var,
            coeffs: self.coeffs.iter().map(|c| c.conjugate()).collect(),
        }
    }

    pub fn evaluate(&self, x: &CycNum) -> CycNum {
        let mut acc = CycNum::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Substitute x -> omega^a x: scales the coefficient of x^m by omega^{am}.
    pub fn twist_by_omega(&self, a: i64) -> CycPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(m, c)| c.mul(&CycNum::omega_power(&self.field, a * m as i64)))
            .collect();
        CycPoly {
            field: self.field.clone(),
            var: self.var,
            coeffs,
        }
    }

    /// 1 - x^n
    pub fn one_minus_power(field: &Arc<CycField>, var: Var, n: usize) -> CycPoly {
        let mut coeffs = vec![CycNum::zero(field); n + 1];
        coeffs[0] = CycNum::one(field);
        coeffs[n] = CycNum::one(field).neg();
        CycPoly {
            field: field.clone(),
            var,
            coeffs,
        }
    }

    /// 1 - c x
    pub fn one_minus_linear(field: &Arc<CycField>, var: Var, c: &CycNum) -> CycPoly {
        CycPoly {
            field: field.clone(),
            var,
            coeffs: vec![CycNum::one(field), c.neg()],
        }
        .trimmed()
    }
}

/// The counting polynomial ((1 - t^N)/(1 - t))^L over Q(zeta).
pub fn counting_poly(field: &Arc<CycField>, l: usize) -> CycPoly {
    let n = field.n();
    let base = CycPoly::from_coeffs(
        field,
        Var::T,
        (0..n).map(|_| CycNum::one(field)).collect(),
    );
    base.pow(l as u32)
}

/// Integer-coefficient section polynomial P_Q with its degree data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrinfeldData {
    pub n: u32,
    pub l: usize,
    pub q: u32,
    /// Lambda^Q_m = c_{mN+Q}, ascending in m.
    pub lambda: Vec<BigInt>,
    /// Degree m_Q = floor(((N-1)L - Q)/N).
    pub m_q: usize,
}

impl DrinfeldData {
    pub fn evaluate_int(&self, z: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.lambda.iter().rev() {
            acc = acc * z + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// P_Q'(z) at a rational point.
    pub fn derivative_at(&self, z: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in self.lambda.iter().enumerate().skip(1) {
            acc += BigRational::from_integer(c.clone() * BigInt::from(m))
                * pow_rat(z, (m - 1) as u32);
        }
        acc
    }
}

fn pow_rat(z: &BigRational, e: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc *= z;
    }
    acc
}

/// Build P_Q from the counting coefficients, cross-checked against the
/// omega-average form N^{-1} t^{-Q} sum_a omega^{-Qa} Q(t omega^a).
pub fn drinfeld(n: u32, l: usize, q: u32) -> DrinfeldData {
    assert!(q <= n - 1, "Q out of range");
    let c = count_cm(l, n);
    let top = (n as usize - 1) * l;
    let m_q = (top - q as usize) / n as usize;
    let lambda: Vec<BigInt> = (0..=m_q)
        .map(|m| c[m * n as usize + q as usize].clone())
        .collect();

    // cross-check by exact omega-averaging in Q(zeta)[t]
    let field = CycField::new(n);
    let qt = counting_poly(&field, l);
    let mut avg = CycPoly::zero(&field, Var::T);
    for a in 0..n as i64 {
        let term = qt
            .twist_by_omega(a)
            .scale(&CycNum::omega_power(&field, -(q as i64) * a));
        avg = avg.add(&term);
    }
    let inv_n = BigRational::new(BigInt::one(), BigInt::from(n));
    for (e, coeff) in avg.coeffs().iter().enumerate() {
        let val = coeff.scale(&inv_n);
        if e < q as usize || (e - q as usize) % n as usize != 0 {
            assert!(val.is_zero(), "omega-average has stray coefficient");
            continue;
        }
        let m = (e - q as usize) / n as usize;
        let expect = lambda
            .get(m)
            .cloned()
            .unwrap_or_else(BigInt::zero);
        assert_eq!(
            val.to_rational(),
            Some(BigRational::from_integer(expect)),
            "omega-average disagrees with coefficient sieve at m={}",
            m
        );
    }

    let dd = DrinfeldData {
        n,
        l,
        q,
        lambda,
        m_q,
    };
    assert!(dd.lambda[0] > BigInt::zero());
    assert_eq!(dd.lambda.len(), dd.m_q + 1);
    dd
}

/// Which of the two sum families to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KVariant {
    K,
    Kbar,
}

/// The L-fold sum K_m (or Kbar_m) by direct enumeration. This path is the
/// independent oracle for [`k_via_g`]; it shares nothing with the
/// generating-function route beyond the ring itself.
pub fn k_brute(table: &QBinomialTable, c: &Composition, m: u32, variant: KVariant) -> CycNum {
    let field = table.field();
    let weights = match variant {
        KVariant::K => c.prefix_sums(),
        KVariant::Kbar => c.suffix_sums(),
    };
    let mut acc = CycNum::zero(field);
    for primed in enumerate(c.len(), c.bound(), m) {
        let mut term = CycNum::one(field);
        let mut phase: i64 = 0;
        let mut dead = false;
        for (j, &npj) in primed.parts().iter().enumerate() {
            let nj = c.parts()[j];
            let b = table.q_binomial(nj + npj, npj);
            if b.is_zero() {
                dead = true;
                break;
            }
            term = term.mul(&b);
            phase += npj as i64 * weights[j] as i64;
        }
        if dead {
            continue;
        }
        acc = acc.add(&term.mul(&CycNum::omega_power(field, phase)));
    }
    acc
}

/// Table of K_m and Kbar_m for one composition whose sum is a multiple of N.
#[derive(Debug, Clone)]
pub struct KTable {
    pub composition: Composition,
    /// k with sum(n_j) = kN.
    pub k: u32,
    pub k_coeffs: Vec<CycNum>,
    pub kbar_coeffs: Vec<CycNum>,
}

/// Closed-form generating function g({n_j}, t) =
/// (1 - t^N)^{L-k} / prod_j (1 - t omega^{N_j}), by exact division.
/// Valid only when sum n_j = kN; errors otherwise.
pub fn gen_g(field: &Arc<CycField>, c: &Composition) -> Result<CycPoly, Error> {
    let n = field.n();
    assert_eq!(c.bound(), n, "composition bound differs from field order");
    let total = c.sum();
    if total % n != 0 {
        return Err(Error::SumNotMultiple {
            sum: total,
            modulus: n,
        });
    }
    let k = total / n;
    let l = c.len() as u32;
    let mut poly = CycPoly::one_minus_power(field, Var::T, n as usize).pow(l - k);
    for nj in c.prefix_sums() {
        let root = CycNum::omega_power(field, nj as i64);
        let divisor = CycPoly::one_minus_linear(field, Var::T, &root);
        poly = poly.div_exact(&divisor)?;
    }
    Ok(poly)
}

/// K table from the generating function and its coefficientwise conjugate.
pub fn k_via_g(field: &Arc<CycField>, c: &Composition) -> Result<KTable, Error> {
    let g = gen_g(field, c)?;
    let n = field.n();
    let k = c.sum() / n;
    let top = (n as usize - 1) * c.len() - (k * n) as usize;
    let k_coeffs: Vec<CycNum> = (0..=top).map(|m| g.coeff(m)).collect();
    let kbar_coeffs: Vec<CycNum> = k_coeffs.iter().map(|x| x.conjugate()).collect();
    Ok(KTable {
        composition: c.clone(),
        k,
        k_coeffs,
        kbar_coeffs,
    })
}

/// Section polynomial G_Q (or Gbar_Q) in z: coefficients K_{mN+Q}.
pub fn g_poly(
    field: &Arc<CycField>,
    kt: &KTable,
    q: u32,
    variant: KVariant,
) -> CycPoly {
    let n = field.n() as usize;
    let src = match variant {
        KVariant::K => &kt.k_coeffs,
        KVariant::Kbar => &kt.kbar_coeffs,
    };
    let mut coeffs = vec![];
    let mut idx = q as usize;
    while idx < src.len() {
        coeffs.push(src[idx].clone());
        idx += n;
    }
    CycPoly::from_coeffs(field, Var::Z, coeffs)
}

/// Lagrange basis polynomial f^Q_k(z) = prod_{l != k} (z - z_l)/(z_k - z_l)
/// at the root set's precision; coefficients as real balls, ascending.
pub fn interp_f(rs: &RootSet, k: usize) -> Result<Vec<RealBall>, Error> {
    if !rs.distinct {
        return Err(Error::RepeatedRoots);
    }
    let roots = &rs.roots;
    assert!(k < roots.len());
    let mut num = vec![RealBall::one()];
    let mut denom = RealBall::one();
    for (l, z) in roots.iter().enumerate() {
        if l == k {
            continue;
        }
        // multiply num by (z - z_l)
        let mut next = vec![RealBall::zero(); num.len() + 1];
        for (i, c) in num.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c);
            next[i] = next[i].add(&c.mul(&z.neg()));
        }
        num = next;
        denom = denom.mul(&roots[k].sub(z));
    }
    let inv = denom.recip();
    Ok(num.iter().map(|c| c.mul(&inv)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::QBinomialTable;

    fn comp(parts: &[u32], n: u32) -> Composition {
        Composition::new(parts.to_vec(), n)
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn drinfeld_examples() {
        let d = drinfeld(3, 3, 0);
        assert_eq!(d.lambda, ints(&[1, 7, 1]));
        assert_eq!(d.m_q, 2);
        let d = drinfeld(3, 3, 1);
        assert_eq!(d.lambda, ints(&[3, 6]));
        assert_eq!(d.m_q, 1);
        let d = drinfeld(2, 2, 0);
        assert_eq!(d.lambda, ints(&[1, 1]));
        assert_eq!(d.m_q, 1);
    }

    #[test]
    fn drinfeld_value_at_one() {
        for (n, l) in [(2u32, 2usize), (2, 4), (3, 3), (3, 6), (4, 4)] {
            let mut total = BigInt::zero();
            for q in 0..n {
                let d = drinfeld(n, l, q);
                let at_one: BigInt = d.lambda.iter().sum();
                assert_eq!(at_one, BigInt::from(n).pow(l as u32 - 1));
                total += d.lambda.iter().sum::<BigInt>();
            }
            assert_eq!(total, BigInt::from(n).pow(l as u32));
        }
    }

    #[test]
    fn k_brute_zero_composition_gives_cm() {
        for (n, l) in [(2u32, 3usize), (3, 3), (3, 4)] {
            let field = CycField::new(n);
            let table = QBinomialTable::new(&field);
            let c = comp(&vec![0; l], n);
            let cm = count_cm(l, n);
            for m in 0..=((n - 1) * l as u32) {
                let k = k_brute(&table, &c, m, KVariant::K);
                let kb = k_brute(&table, &c, m, KVariant::Kbar);
                let expect = CycNum::from_rational(
                    &field,
                    BigRational::from_integer(cm[m as usize].clone()),
                );
                assert_eq!(k, expect);
                assert_eq!(kb, expect);
            }
        }
    }

    #[test]
    fn k_brute_examples() {
        let field = CycField::new(2);
        let table = QBinomialTable::new(&field);
        let c = comp(&[1, 1, 0, 0], 2);
        assert_eq!(
            k_brute(&table, &c, 1, KVariant::K),
            CycNum::from_integer(&field, 2)
        );
        let c = comp(&[1, 1], 2);
        assert_eq!(
            k_brute(&table, &c, 0, KVariant::K),
            CycNum::one(&field)
        );
    }

    #[test]
    fn gen_g_examples() {
        let field = CycField::new(2);
        let c = comp(&[1, 1], 2);
        let g = gen_g(&field, &c).unwrap();
        assert_eq!(g, CycPoly::one(&field, Var::T));

        let c = comp(&[1, 1, 0, 0], 2);
        let g = gen_g(&field, &c).unwrap();
        // (1+t)^2
        assert_eq!(g.coeff(0), CycNum::one(&field));
        assert_eq!(g.coeff(1), CycNum::from_integer(&field, 2));
        assert_eq!(g.coeff(2), CycNum::one(&field));
        assert_eq!(g.degree(), Some(2));

        // zero composition gives the counting polynomial
        let field = CycField::new(3);
        let c = comp(&[0, 0, 0], 3);
        let g = gen_g(&field, &c).unwrap();
        assert_eq!(g, counting_poly(&field, 3));
    }

    #[test]
    fn gen_g_rejects_bad_sum() {
        let field = CycField::new(3);
        let c = comp(&[1, 1], 3);
        assert!(matches!(
            gen_g(&field, &c),
            Err(Error::SumNotMultiple { .. })
        ));
    }

    #[test]
    fn gen_g_degree_bound() {
        for (n, l, parts) in [
            (3u32, 3usize, vec![1u32, 1, 1]),
            (3, 4, vec![2, 1, 0, 0]),
            (2, 4, vec![1, 0, 1, 0]),
        ] {
            let field = CycField::new(n);
            let c = comp(&parts, n);
            let k = c.sum() / n;
            let g = gen_g(&field, &c).unwrap();
            let expect = (n as usize - 1) * l - (k * n) as usize;
            assert_eq!(g.degree(), Some(expect));
        }
    }

    #[test]
    fn k_via_g_examples() {
        let field = CycField::new(2);
        let kt = k_via_g(&field, &comp(&[1, 1, 0, 0], 2)).unwrap();
        let expect: Vec<CycNum> = [1i64, 2, 1]
            .iter()
            .map(|&x| CycNum::from_integer(&field, x))
            .collect();
        assert_eq!(kt.k_coeffs, expect);
        let kt = k_via_g(&field, &comp(&[1, 1], 2)).unwrap();
        assert_eq!(kt.k_coeffs, vec![CycNum::one(&field)]);
        let kt = k_via_g(&field, &comp(&[0, 0], 2)).unwrap();
        let expect: Vec<CycNum> = [1i64, 2, 1]
            .iter()
            .map(|&x| CycNum::from_integer(&field, x))
            .collect();
        assert_eq!(kt.k_coeffs, expect);
    }

    #[test]
    fn g_poly_examples() {
        let field = CycField::new(2);
        let kt = k_via_g(&field, &comp(&[1, 1], 2)).unwrap();
        let g = g_poly(&field, &kt, 0, KVariant::K);
        assert_eq!(g, CycPoly::one(&field, Var::Z));

        let kt = k_via_g(&field, &comp(&[1, 1, 0, 0], 2)).unwrap();
        let g = g_poly(&field, &kt, 0, KVariant::K);
        assert_eq!(g.coeff(0), CycNum::one(&field));
        assert_eq!(g.coeff(1), CycNum::one(&field));
        assert_eq!(g.degree(), Some(1));
    }

    #[test]
    fn g_poly_zero_composition_is_drinfeld() {
        for (n, l) in [(2u32, 4usize), (3, 3), (3, 6)] {
            let field = CycField::new(n);
            let kt = k_via_g(&field, &comp(&vec![0; l], n)).unwrap();
            for q in 0..n {
                let d = drinfeld(n, l, q);
                let g = g_poly(&field, &kt, q, KVariant::K);
                assert_eq!(g.coeffs().len(), d.lambda.len());
                for (m, lam) in d.lambda.iter().enumerate() {
                    assert_eq!(
                        g.coeff(m).to_integer(),
                        Some(lam.clone()),
                        "n={} l={} q={} m={}",
                        n,
                        l,
                        q,
                        m
                    );
                }
            }
        }
    }
}
