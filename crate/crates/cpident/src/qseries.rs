//! omega-deformed integers, factorial ratios, Pochhammer symbols, the
//! reflection and expansion identities for omega-binomials, and the
//! terminating basic-hypergeometric site polynomials J_j / Jbar_j together
//! with their product identity.

use std::sync::Arc;

use crate::cyclotomic::{CycField, CycNum};
use crate::error::Error;
use crate::polyform::{CycPoly, Var};

/// Precomputed brackets, binomials and Pochhammer inverses for one field.
/// Built once per field and shared read-only.
#[derive(Debug)]
pub struct QBinomialTable {
    field: Arc<CycField>,
    bracket: Vec<CycNum>,
    /// binom[n][r] for 0 <= n <= 2N-2, 0 <= r <= N-1.
    binom: Vec<Vec<CycNum>>,
    /// (omega; omega)_r and its inverse, r <= N-1.
    poch_omega: Vec<CycNum>,
    poch_omega_inv: Vec<CycNum>,
}

impl QBinomialTable {
    pub fn new(field: &Arc<CycField>) -> QBinomialTable {
        let n = field.n() as usize;
        let bracket: Vec<CycNum> = (0..=(2 * n - 2) as i64)
            .map(|b| bracket_value(field, b as u32))
            .collect();
        let mut poch_omega = Vec::with_capacity(n);
        let mut cur = CycNum::one(field);
        for r in 0..n {
            if r > 0 {
                // multiply by (1 - omega^r)
                cur = cur.mul(&CycNum::one(field).sub(&CycNum::omega_power(field, r as i64)));
            }
            poch_omega.push(cur.clone());
        }
        let poch_omega_inv: Vec<CycNum> = poch_omega.iter().map(|x| x.inverse()).collect();

        // [n over r] = (omega^{1+n-r}; omega)_r / (omega; omega)_r
        let mut binom = Vec::with_capacity(2 * n - 1);
        for nn in 0..=(2 * n - 2) as i64 {
            let mut row = Vec::with_capacity(n);
            for r in 0..n as i64 {
                let num = pochhammer(
                    &CycNum::omega_power(field, 1 + nn - r),
                    r as u32,
                );
                row.push(num.mul(&poch_omega_inv[r as usize]));
            }
            binom.push(row);
        }
        QBinomialTable {
            field: field.clone(),
            bracket,
            binom,
            poch_omega,
            poch_omega_inv,
        }
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    /// [n] = 1 + omega + ... + omega^{n-1}, any n >= 0.
    pub fn bracket(&self, n: u32) -> CycNum {
        self.bracket
            .get(n as usize)
            .cloned()
            .unwrap_or_else(|| bracket_value(&self.field, n))
    }

    /// The omega-binomial [n over r] in Pochhammer-ratio form.
    /// Requires 0 <= n <= 2N-2 and 0 <= r <= N-1.
    pub fn q_binomial(&self, n: u32, r: u32) -> CycNum {
        let nf = self.field.n();
        assert!(r <= nf - 1, "denominator (omega;omega)_r vanishes for r >= N");
        assert!(n <= 2 * nf - 2, "n out of table range");
        self.binom[n as usize][r as usize].clone()
    }

    pub fn poch_omega(&self, r: u32) -> &CycNum {
        &self.poch_omega[r as usize]
    }

    pub fn poch_omega_inv(&self, r: u32) -> &CycNum {
        &self.poch_omega_inv[r as usize]
    }
}

fn bracket_value(field: &Arc<CycField>, n: u32) -> CycNum {
    let mut acc = CycNum::zero(field);
    for i in 0..n as i64 {
        acc = acc.add(&CycNum::omega_power(field, i));
    }
    acc
}

/// (x; omega)_s = prod_{j=1}^{s} (1 - x omega^{j-1}) for a scalar x.
pub fn pochhammer(x: &CycNum, s: u32) -> CycNum {
    let field = x.field();
    let mut acc = CycNum::one(field);
    for j in 0..s as i64 {
        let factor = CycNum::one(field).sub(&x.mul(&CycNum::omega_power(field, j)));
        acc = acc.mul(&factor);
    }
    acc
}

/// (p; omega)_s for a polynomial argument p.
pub fn pochhammer_poly(p: &CycPoly, s: u32) -> CycPoly {
    let field = p.field().clone();
    let var = p.var();
    let mut acc = CycPoly::one(&field, var);
    for j in 0..s as i64 {
        let term = CycPoly::one(&field, var)
            .sub(&p.scale(&CycNum::omega_power(&field, j)));
        acc = acc.mul(&term);
    }
    acc
}

/// Reflection identity: [n+r over r] = (-1)^r omega^{nr + r(r+1)/2} [N-1-n over r].
pub fn check_id1(table: &QBinomialTable, n: u32, r: u32) -> bool {
    let field = table.field();
    let nf = field.n();
    assert!(n <= nf - 1 && r <= nf - 1);
    let lhs = table.q_binomial(n + r, r);
    let phase_exp = (n * r) as i64 + (r * (r + 1) / 2) as i64;
    let mut rhs = table
        .q_binomial(nf - 1 - n, r)
        .mul(&CycNum::omega_power(field, phase_exp));
    if r % 2 == 1 {
        rhs = rhs.neg();
    }
    lhs == rhs
}

/// Finite expansion: sum_r [s over r] (-1)^r omega^{r(r-1)/2} x^r = (x; omega)_s,
/// checked coefficientwise with x an indeterminate.
pub fn check_id1a(table: &QBinomialTable, s: u32) -> bool {
    let field = table.field();
    assert!(s <= field.n() - 1);
    let x = CycPoly::monomial(field, Var::T, CycNum::one(field), 1);
    let mut lhs = CycPoly::zero(field, Var::T);
    for r in 0..=s {
        let phase_exp = (r * r.saturating_sub(1) / 2) as i64;
        let mut c = table
            .q_binomial(s, r)
            .mul(&CycNum::omega_power(field, phase_exp));
        if r % 2 == 1 {
            c = c.neg();
        }
        lhs = lhs.add(&CycPoly::monomial(field, Var::T, c, r as usize));
    }
    lhs == pochhammer_poly(&x, s)
}

/// Per-site parameters for the terminating hypergeometric polynomials:
/// mu_j, lambda_j in [0, N-1] and the prefix/suffix sums a_j (of mu) and
/// bbar_j (of lambda).
#[derive(Debug, Clone, Copy)]
pub struct SiteData {
    pub mu: u32,
    pub lambda: u32,
    pub a: u32,
    pub bbar: u32,
}

/// J_j(t): terminating 2-phi-1 type sum of degree <= mu_j,
/// argument t zeta^{1 + 2(mu_j + a_j + bbar_j)}.
pub fn eval_j(table: &QBinomialTable, site: SiteData) -> CycPoly {
    let arg_exp = 1 + 2 * (site.mu + site.a + site.bbar) as i64;
    hyper_sum(table, -(site.mu as i64), 1 + site.lambda as i64, site.mu, arg_exp)
}

/// Jbar_j(t): same shape with the roles of mu_j and lambda_j exchanged,
/// argument t zeta^{1 + 2(lambda_j + a_j + bbar_j)}; degree <= lambda_j.
pub fn eval_jbar(table: &QBinomialTable, site: SiteData) -> CycPoly {
    let arg_exp = 1 + 2 * (site.lambda + site.a + site.bbar) as i64;
    hyper_sum(table, -(site.lambda as i64), 1 + site.mu as i64, site.lambda, arg_exp)
}

/// sum_{n=0}^{top} (omega^{e1}; omega)_n (omega^{e2}; omega)_n
///                 / ((omega; omega)_n)^2 * (t zeta^{arg_exp})^n
fn hyper_sum(table: &QBinomialTable, e1: i64, e2: i64, top: u32, arg_exp: i64) -> CycPoly {
    let field = table.field();
    let mut coeffs = Vec::with_capacity(top as usize + 1);
    for n in 0..=top {
        let p1 = pochhammer(&CycNum::omega_power(field, e1), n);
        let p2 = pochhammer(&CycNum::omega_power(field, e2), n);
        let inv = table.poch_omega_inv(n);
        let zp = CycNum::zeta_power(field, arg_exp * n as i64);
        let c = p1.mul(&p2).mul(inv).mul(inv).mul(&zp);
        coeffs.push(c);
    }
    CycPoly::from_coeffs(field, Var::T, coeffs)
}

/// Prefix sums a_j of mu and suffix sums bbar_j of lambda, per site.
pub fn site_data(mu: &[u32], lambda: &[u32]) -> Vec<SiteData> {
    assert_eq!(mu.len(), lambda.len());
    let total_lambda: u32 = lambda.iter().sum();
    let mut a = 0u32;
    let mut consumed = 0u32;
    mu.iter()
        .zip(lambda)
        .map(|(&m, &l)| {
            consumed += l;
            let site = SiteData {
                mu: m,
                lambda: l,
                a,
                bbar: total_lambda - consumed,
            };
            a += m;
            site
        })
        .collect()
}

/// prod_j J_j(t) for the given parameter vectors.
pub fn product_j(table: &QBinomialTable, mu: &[u32], lambda: &[u32]) -> CycPoly {
    let field = table.field();
    site_data(mu, lambda)
        .into_iter()
        .fold(CycPoly::one(field, Var::T), |acc, s| {
            acc.mul(&eval_j(table, s))
        })
}

/// prod_j Jbar_j(t).
pub fn product_jbar(table: &QBinomialTable, mu: &[u32], lambda: &[u32]) -> CycPoly {
    let field = table.field();
    site_data(mu, lambda)
        .into_iter()
        .fold(CycPoly::one(field, Var::T), |acc, s| {
            acc.mul(&eval_jbar(table, s))
        })
}

/// Validate the parameter vectors: parts bounded by N-1, sums congruent
/// mod N with sum(mu) >= sum(lambda). Returns (ell, n, q).
pub fn admissible(field: &CycField, mu: &[u32], lambda: &[u32]) -> Result<(u32, u32, u32), Error> {
    let nf = field.n();
    if mu.len() != lambda.len() {
        return Err(Error::Precondition("length mismatch".into()));
    }
    if mu.iter().chain(lambda).any(|&p| p > nf - 1) {
        return Err(Error::Precondition("part out of range".into()));
    }
    let sm: u32 = mu.iter().sum();
    let sl: u32 = lambda.iter().sum();
    if sm % nf != sl % nf {
        return Err(Error::Precondition(
            "sums not congruent mod N".into(),
        ));
    }
    if sm < sl {
        return Err(Error::Precondition("sum(mu) < sum(lambda)".into()));
    }
    let q = sm % nf;
    Ok(((sm - q) / nf, (sl - q) / nf, q))
}

/// Product identity: prod_j J_j(t) = (1 + t^N)^{ell-n} prod_j Jbar_j(t),
/// exactly over Q(zeta)[t].
pub fn check_product_identity(
    table: &QBinomialTable,
    mu: &[u32],
    lambda: &[u32],
) -> Result<bool, Error> {
    let field = table.field();
    let (ell, n, _q) = admissible(field, mu, lambda)?;
    let lhs = product_j(table, mu, lambda);
    let factor =
        one_plus_power(field, field.n() as usize).pow(ell - n);
    let rhs = factor.mul(&product_jbar(table, mu, lambda));
    Ok(lhs == rhs)
}

fn one_plus_power(field: &Arc<CycField>, n: usize) -> CycPoly {
    let mut coeffs = vec![CycNum::zero(field); n + 1];
    coeffs[0] = CycNum::one(field);
    coeffs[n] = CycNum::one(field);
    CycPoly::from_coeffs(field, Var::T, coeffs)
}

/// Telescoping prefactor identity: with x_j = zeta^{1+2(lambda_j+a_j+bbar_j)},
/// prod_j (x_j t; omega)_{mu_j - lambda_j} = (1 + t^N)^{ell-n}, where factors
/// of negative length are moved to the other side as reciprocals.
pub fn check_prefactor_identity(
    table: &QBinomialTable,
    mu: &[u32],
    lambda: &[u32],
) -> Result<bool, Error> {
    let field = table.field();
    let (ell, n, _q) = admissible(field, mu, lambda)?;
    let t = CycPoly::monomial(field, Var::T, CycNum::one(field), 1);
    let mut lhs = CycPoly::one(field, Var::T);
    let mut rhs = one_plus_power(field, field.n() as usize).pow(ell - n);
    for s in site_data(mu, lambda) {
        let len = s.mu as i64 - s.lambda as i64;
        if len >= 0 {
            let x = CycNum::zeta_power(field, 1 + 2 * (s.lambda + s.a + s.bbar) as i64);
            lhs = lhs.mul(&pochhammer_poly(&t.scale(&x), len as u32));
        } else {
            // (x; omega)_{-k} = 1 / (x omega^{-k}; omega)_k
            let x = CycNum::zeta_power(
                field,
                1 + 2 * ((s.lambda + s.a + s.bbar) as i64 + len),
            );
            rhs = rhs.mul(&pochhammer_poly(&t.scale(&x), (-len) as u32));
        }
    }
    Ok(lhs == rhs)
}
