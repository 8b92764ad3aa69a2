//! The L-fold sums I_m / Ibar_m, the two binomial-sum lemmas, the Theta
//! tensor, the Gram matrix at certified roots, and the interpolation
//! corollary.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::ball::{pow10_inv, ComplexBall, RealBall};
use crate::compositions::enumerate;
use crate::cyclotomic::{CycField, CycNum};
use crate::error::Error;
use crate::polyform::{g_poly, interp_f, k_via_g, DrinfeldData, KTable, KVariant};
use crate::qseries::QBinomialTable;
use crate::roots::{compute_b, RootSet};

/// Which of the two sum families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IVariant {
    I,
    Ibar,
}

/// The L-fold sum I_m({mu};{lambda}) (or Ibar_m({lambda};{mu})) by direct
/// enumeration over bounded compositions of m.
pub fn i_sum(
    table: &QBinomialTable,
    mu: &[u32],
    lambda: &[u32],
    m: u32,
    variant: IVariant,
) -> CycNum {
    assert_eq!(mu.len(), lambda.len());
    let field = table.field();
    let nf = field.n();
    assert!(mu.iter().chain(lambda).all(|&p| p <= nf - 1));
    let l = mu.len();
    // prefix sums of mu, suffix sums of lambda
    let a: Vec<i64> = {
        let mut acc = 0i64;
        mu.iter()
            .map(|&x| {
                let v = acc;
                acc += x as i64;
                v
            })
            .collect()
    };
    let bbar: Vec<i64> = {
        let total: i64 = lambda.iter().map(|&x| x as i64).sum();
        let mut consumed = 0i64;
        lambda
            .iter()
            .map(|&x| {
                consumed += x as i64;
                total - consumed
            })
            .collect()
    };
    let mut acc = CycNum::zero(field);
    for comp in enumerate(l, nf, m) {
        let parts = comp.parts();
        let mut term = CycNum::one(field);
        let mut phase = 0i64;
        let mut dead = false;
        let weights: Vec<i64> = match variant {
            IVariant::I => comp.prefix_sums().iter().map(|&x| x as i64).collect(),
            IVariant::Ibar => comp.suffix_sums().iter().map(|&x| x as i64).collect(),
        };
        for j in 0..l {
            let nj = parts[j];
            let (first, second, ph) = match variant {
                // [mu_j over n_j] [n_j + lambda_j over n_j], phase n_j(a_j - N_j) + n_j bbar_j
                IVariant::I => (mu[j], nj + lambda[j], a[j] - weights[j] + bbar[j]),
                // [lambda_j over n_j] [n_j + mu_j over n_j], phase n_j(bbar_j - Nbar_j) + n_j a_j
                IVariant::Ibar => (lambda[j], nj + mu[j], bbar[j] - weights[j] + a[j]),
            };
            if nj > first {
                dead = true;
                break;
            }
            let b1 = table.q_binomial(first, nj);
            let b2 = table.q_binomial(second, nj);
            if b1.is_zero() || b2.is_zero() {
                dead = true;
                break;
            }
            term = term.mul(&b1).mul(&b2);
            phase += nj as i64 * ph;
        }
        if dead {
            continue;
        }
        acc = acc.add(&term.mul(&CycNum::omega_power(field, phase)));
    }
    acc
}

/// One verdict line of a lemma check.
#[derive(Debug, Clone)]
pub struct CheckLine {
    pub label: String,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct Lemma1Report {
    pub ell: u32,
    pub n: u32,
    pub q: u32,
    pub lines: Vec<CheckLine>,
}

impl Lemma1Report {
    pub fn all_pass(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }
}

/// Check the binomial-sum lemma for one admissible (mu, lambda) pair:
/// for sum(lambda) = Q the sum I_{kN} collapses to binomial(ell, k); in
/// general I and Ibar are related at m = N, ell*N and (ell-1)*N.
pub fn check_lemma1(
    table: &QBinomialTable,
    mu: &[u32],
    lambda: &[u32],
) -> Result<Lemma1Report, Error> {
    let field = table.field();
    let (ell, n, q) = crate::qseries::admissible(field, mu, lambda)?;
    let nf = field.n();
    let mut lines = Vec::new();

    if n == 0 {
        for k in 0..=ell {
            let lhs = i_sum(table, mu, lambda, k * nf, IVariant::I);
            let expect = CycNum::from_rational(
                field,
                BigRational::from_integer(binomial(BigInt::from(ell), BigInt::from(k))),
            );
            lines.push(CheckLine {
                label: format!("I_{{{}N}} = C({},{})", k, ell, k),
                pass: lhs == expect,
            });
        }
    }

    // the I/Ibar relations hold for any n <= ell
    let from_int = |v: i64| CycNum::from_integer(field, v);
    let i_n = i_sum(table, mu, lambda, nf, IVariant::I);
    let ibar_n = i_sum(table, mu, lambda, nf, IVariant::Ibar);
    lines.push(CheckLine {
        label: "I_N = (ell-n) + Ibar_N".into(),
        pass: i_n == from_int((ell - n) as i64).add(&ibar_n),
    });

    let i_elln = i_sum(table, mu, lambda, ell * nf, IVariant::I);
    let ibar_nn = i_sum(table, mu, lambda, n * nf, IVariant::Ibar);
    lines.push(CheckLine {
        label: "I_{ell N} = Ibar_{n N}".into(),
        pass: i_elln == ibar_nn,
    });

    if ell >= 1 {
        let i_prev = i_sum(table, mu, lambda, (ell - 1) * nf, IVariant::I);
        let ibar_prev = if n >= 1 {
            i_sum(table, mu, lambda, (n - 1) * nf, IVariant::Ibar)
        } else {
            // Ibar at negative index: empty sum convention would be wrong;
            // for n = 0 the term is Ibar_{-N} which has no compositions
            CycNum::zero(field)
        };
        let rhs = from_int((ell - n) as i64).mul(&ibar_nn).add(&ibar_prev);
        lines.push(CheckLine {
            label: "I_{(ell-1)N} = (ell-n) Ibar_{nN} + Ibar_{(n-1)N}".into(),
            pass: i_prev == rhs,
        });
    }

    Ok(Lemma1Report {
        ell,
        n,
        q,
        lines,
    })
}

/// Exact integer tensor Theta_{l,m,k} = sum over compositions of sum kN of
/// Kbar_{lN+Q} K_{mN+Q}, assembled from cached K tables.
#[derive(Debug, Clone)]
pub struct ThetaTensor {
    pub n: u32,
    pub l: usize,
    pub q: u32,
    pub k: u32,
    /// entries[l][m]; indices where lN+Q or mN+Q exceed the K range are
    /// identically zero and not stored.
    pub entries: Vec<Vec<BigInt>>,
}

impl ThetaTensor {
    pub fn get(&self, ell: usize, m: usize) -> BigInt {
        self.entries
            .get(ell)
            .and_then(|row| row.get(m))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn is_symmetric(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| self.get(i, j) == self.get(j, i)))
    }
}

/// K tables for every composition of sum kN, built once and shared.
pub fn k_tables(field: &Arc<CycField>, l: usize, k: u32) -> Result<Vec<KTable>, Error> {
    let nf = field.n();
    enumerate(l, nf, k * nf)
        .map(|c| k_via_g(field, &c))
        .collect()
}

/// Assemble the Theta tensor; every entry must land in Z, anything else is a
/// ring bug and fails hard.
pub fn theta_tensor(
    field: &Arc<CycField>,
    l: usize,
    q: u32,
    k: u32,
) -> Result<ThetaTensor, Error> {
    let nf = field.n() as usize;
    let tables = k_tables(field, l, k)?;
    // K_m ranges over 0 <= m <= (N-1)L - kN; negative means no compositions
    // of sum kN exist and the tensor is empty
    let top = (nf - 1) as i64 * l as i64 - k as i64 * nf as i64;
    let dim = if top < 0 || (q as i64) > top {
        0
    } else {
        ((top - q as i64) / nf as i64 + 1) as usize
    };
    // accumulate in the field, then demand integrality entrywise
    let mut acc = vec![vec![CycNum::zero(field); dim]; dim];
    for kt in &tables {
        for ell in 0..dim {
            let kbar = &kt.kbar_coeffs[ell * nf + q as usize];
            if kbar.is_zero() {
                continue;
            }
            for m in 0..dim {
                let kk = &kt.k_coeffs[m * nf + q as usize];
                if kk.is_zero() {
                    continue;
                }
                acc[ell][m] = acc[ell][m].add(&kbar.mul(kk));
            }
        }
    }
    let mut entries = vec![vec![BigInt::zero(); dim]; dim];
    for ell in 0..dim {
        for m in 0..dim {
            entries[ell][m] = acc[ell][m].to_integer().ok_or_else(|| {
                Error::NonInteger(format!(
                    "Theta entry (l={}, m={}, k={}) is not an integer",
                    ell, m, k
                ))
            })?;
        }
    }
    Ok(ThetaTensor {
        n: field.n(),
        l,
        q,
        k,
        entries,
    })
}

/// Single Theta entry by brute assembly.
pub fn theta(field: &Arc<CycField>, l: usize, q: u32, ell: usize, m: usize, k: u32) -> Result<BigInt, Error> {
    let t = theta_tensor(field, l, q, k)?;
    Ok(t.get(ell, m))
}

#[derive(Debug, Clone)]
pub struct Lemma2Report {
    pub n: u32,
    pub l: usize,
    pub q: u32,
    pub lines: Vec<CheckLine>,
}

impl Lemma2Report {
    pub fn all_pass(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }
}

/// Check the Theta recurrences: the m = 0 collapse for k in `ks`, and the
/// Lambda-convolution form for k = 1, over all index pairs in range.
pub fn check_lemma2(
    field: &Arc<CycField>,
    dd: &DrinfeldData,
    ks: &[u32],
) -> Result<Lemma2Report, Error> {
    let mut lines = Vec::new();
    let lam = |i: usize| -> BigInt {
        dd.lambda.get(i).cloned().unwrap_or_else(BigInt::zero)
    };

    for &k in ks {
        let t = theta_tensor(field, dd.l, dd.q, k)?;
        // Theta_{l,0,k} = C(l+k, k) Lambda_0 Lambda_{l+k}
        let sweep = t.dim().max(dd.m_q + 1);
        for ell in 0..sweep {
            let lhs = t.get(ell, 0);
            let rhs = binomial(BigInt::from(ell as u64 + k as u64), BigInt::from(k))
                * lam(0)
                * lam(ell + k as usize);
            lines.push(CheckLine {
                label: format!("Theta_{{{},0,{}}} = C({},{}) L0 L{}", ell, k, ell + k as usize, k, ell + k as usize),
                pass: lhs == rhs,
            });
        }
    }

    // k = 1 Lambda-convolution: Theta_{l,m,1} = sum_j (l+1+m-2j) L_j L_{l+1+m-j}
    let t = theta_tensor(field, dd.l, dd.q, 1)?;
    let dim = t.dim().max(dd.m_q);
    for ell in 0..dim {
        for m in 0..dim {
            let lhs = t.get(ell, m);
            let mut rhs = BigInt::zero();
            for j in 0..=m {
                let w = ell as i64 + 1 + m as i64 - 2 * j as i64;
                rhs += BigInt::from(w) * lam(j) * lam(ell + 1 + m - j);
            }
            lines.push(CheckLine {
                label: format!("Theta_{{{},{},1}} convolution", ell, m),
                pass: lhs == rhs,
            });
        }
    }

    Ok(Lemma2Report {
        n: dd.n,
        l: dd.l,
        q: dd.q,
        lines,
    })
}

/// Which verification path the Gram check ran.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GramPath {
    /// Distinct roots: full orthogonality with -B_k diagonals.
    Distinct,
    /// Repeated root: only the B_k = 0 degeneracy is asserted.
    MultipleRoot,
}

#[derive(Debug, Clone)]
pub struct GramReport {
    pub q: u32,
    pub path: GramPath,
    pub roots: Vec<RealBall>,
    /// matrix[i][k] encloses h^Q_k(z_i).
    pub matrix: Vec<Vec<RealBall>>,
    pub b_constants: Vec<RealBall>,
    pub off_diag_pass: bool,
    pub diag_pass: bool,
    /// sup of |mid| + rad over off-diagonal entries.
    pub max_offdiag_residual: BigRational,
    /// max over k of the diagonal ball radius relative to 1 + |B_k|.
    pub max_diag_rel_radius: BigRational,
}

impl GramReport {
    pub fn pass(&self) -> bool {
        self.off_diag_pass && self.diag_pass
    }
}

/// Evaluate the Gram matrix h^Q_k(z_i) = sum_{l,m} z_k^l z_i^m Theta_{l,m,1}
/// at the certified roots and test orthogonality: off-diagonal balls must
/// contain 0 and diagonal balls must contain -B_k.
pub fn gram_matrix(
    field: &Arc<CycField>,
    dd: &DrinfeldData,
    rs: &RootSet,
) -> Result<GramReport, Error> {
    let t = theta_tensor(field, dd.l, dd.q, 1)?;
    if !t.is_symmetric() {
        return Err(Error::Precondition("Theta tensor not symmetric".into()));
    }
    let path = if rs.distinct {
        GramPath::Distinct
    } else {
        GramPath::MultipleRoot
    };
    let b = compute_b(rs);
    let nroots = rs.roots.len();
    let dim = dd.m_q; // summation range 0..m_Q-1

    // powers of each root
    let powers: Vec<Vec<RealBall>> = rs
        .roots
        .iter()
        .map(|z| {
            let mut v = vec![RealBall::one()];
            for _ in 1..dim.max(1) {
                v.push(v.last().unwrap().mul(z));
            }
            v
        })
        .collect();

    let mut matrix = vec![vec![RealBall::zero(); nroots]; nroots];
    for i in 0..nroots {
        for k in 0..nroots {
            let mut acc = RealBall::zero();
            for ell in 0..dim {
                for m in 0..dim {
                    let c = t.get(ell, m);
                    if c.is_zero() {
                        continue;
                    }
                    let term = powers[k][ell]
                        .mul(&powers[i][m])
                        .scale(&BigRational::from_integer(c));
                    acc = acc.add(&term);
                }
            }
            matrix[i][k] = acc.compress(rs.precision_bits + 16);
        }
    }

    let mut off_diag_pass = true;
    let mut diag_pass = true;
    let mut max_off = BigRational::zero();
    let mut max_rel = BigRational::zero();
    for i in 0..nroots {
        for k in 0..nroots {
            if i == k {
                let expect = matrix[i][k].clone();
                let target = b[k].neg();
                // both are enclosures of exact quantities claimed equal;
                // equality holds iff the difference ball contains zero
                if !expect.sub(&target).contains_zero() {
                    diag_pass = false;
                }
                let denom = BigRational::one() + b[k].abs_upper();
                let rel = &matrix[i][k].rad / denom;
                if rel > max_rel {
                    max_rel = rel;
                }
                if path == GramPath::MultipleRoot && !b[k].contains_zero() {
                    diag_pass = false;
                }
            } else {
                if !matrix[i][k].contains_zero() {
                    off_diag_pass = false;
                }
                let bound = matrix[i][k].abs_upper();
                if bound > max_off {
                    max_off = bound;
                }
            }
        }
    }

    Ok(GramReport {
        q: dd.q,
        path,
        roots: rs.roots.clone(),
        matrix,
        b_constants: b,
        off_diag_pass,
        diag_pass,
        max_offdiag_residual: max_off,
        max_diag_rel_radius: max_rel,
    })
}

/// Brute-force Gram entry via complex embeddings of the section polynomials:
/// sum over compositions of Gbar(z_i) G(z_k). Used as a numeric diagnostic
/// against the exact-Theta route.
pub fn gram_brute_entry(
    field: &Arc<CycField>,
    dd: &DrinfeldData,
    rs: &RootSet,
    i: usize,
    k: usize,
) -> Result<ComplexBall, Error> {
    let prec = rs.precision_bits;
    let zi = ComplexBall::from_real(rs.roots[i].clone());
    let zk = ComplexBall::from_real(rs.roots[k].clone());
    let mut acc = ComplexBall::zero();
    for kt in k_tables(field, dd.l, 1)? {
        let gbar = g_poly(field, &kt, dd.q, KVariant::Kbar);
        let g = g_poly(field, &kt, dd.q, KVariant::K);
        let gbar_v = eval_complex(&gbar.coeffs(), &zi, prec);
        let g_v = eval_complex(&g.coeffs(), &zk, prec);
        acc = acc.add(&gbar_v.mul(&g_v));
    }
    Ok(acc.compress(prec + 16))
}

fn eval_complex(coeffs: &[CycNum], z: &ComplexBall, prec: u32) -> ComplexBall {
    let mut acc = ComplexBall::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(z).add(&c.complex_embed(prec));
    }
    acc
}

#[derive(Debug, Clone)]
pub struct CorollaryReport {
    pub q: u32,
    /// Per-(k, coefficient) relative mismatch bound against -B_k f^Q_k.
    pub max_rel_mismatch: BigRational,
    pub coeff_pass: bool,
    /// Imaginary parts of the complex-route coefficients all contain zero.
    pub realness_pass: bool,
}

impl CorollaryReport {
    pub fn pass(&self) -> bool {
        self.coeff_pass && self.realness_pass
    }
}

/// Coefficientwise check of h^Q_k(z) = -B_k f^Q_k(z), with a realness check
/// of the h coefficients via the complex-embedding route.
pub fn check_corollary(
    field: &Arc<CycField>,
    dd: &DrinfeldData,
    rs: &RootSet,
    rel_tol_digits: u32,
) -> Result<CorollaryReport, Error> {
    if !rs.distinct {
        return Err(Error::RepeatedRoots);
    }
    let t = theta_tensor(field, dd.l, dd.q, 1)?;
    let b = compute_b(rs);
    let dim = dd.m_q;
    let tol = pow10_inv(rel_tol_digits);
    let mut coeff_pass = true;
    let mut max_rel = BigRational::zero();
    let mut realness_pass = true;

    // complex-route h coefficients: h_m(k) = sum_c Gbar(c, z_k) K_{mN+Q}(c)
    let tables = k_tables(field, dd.l, 1)?;

    for k in 0..rs.roots.len() {
        let beta = interp_f(rs, k)?;
        // powers of z_k
        let mut zpow = vec![RealBall::one()];
        for _ in 1..dim.max(1) {
            zpow.push(zpow.last().unwrap().mul(&rs.roots[k]));
        }
        for m in 0..dim {
            let mut h = RealBall::zero();
            for ell in 0..dim {
                let c = t.get(ell, m);
                if c.is_zero() {
                    continue;
                }
                h = h.add(&zpow[ell].scale(&BigRational::from_integer(c)));
            }
            let h = h.compress(rs.precision_bits + 16);
            let target = b[k].neg().mul(&beta[m]);
            let diff = h.sub(&target);
            let denom = BigRational::one() + target.abs_upper();
            let rel = diff.abs_upper() / denom;
            if !diff.contains_zero() && rel > tol {
                coeff_pass = false;
            }
            if rel > max_rel && !diff.contains_zero() {
                max_rel = rel;
            }

            // realness of the same coefficient via the complex route
            let zk = ComplexBall::from_real(rs.roots[k].clone());
            let mut hc = ComplexBall::zero();
            for kt in &tables {
                let gbar = g_poly(field, kt, dd.q, KVariant::Kbar);
                let gbar_v = eval_complex(gbar.coeffs(), &zk, rs.precision_bits);
                let nf = field.n() as usize;
                let kcoeff = &kt.k_coeffs[m * nf + dd.q as usize];
                hc = hc.add(&gbar_v.mul(&kcoeff.complex_embed(rs.precision_bits)));
            }
            if !hc.im.contains_zero() {
                realness_pass = false;
            }
            // and the complex route must agree with the exact-Theta route
            if !hc.re.sub(&h).contains_zero() {
                realness_pass = false;
            }
        }
    }

    Ok(CorollaryReport {
        q: dd.q,
        max_rel_mismatch: max_rel,
        coeff_pass,
        realness_pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyform::drinfeld;
    use crate::qseries::{product_j, product_jbar};
    use crate::roots::isolate_and_refine;

    #[test]
    fn i_sum_basics() {
        let field = CycField::new(2);
        let t = QBinomialTable::new(&field);
        assert_eq!(
            i_sum(&t, &[1, 1], &[0, 0], 0, IVariant::I),
            CycNum::one(&field)
        );
        assert!(i_sum(&t, &[1, 1], &[0, 0], 1, IVariant::I).is_zero());
        assert_eq!(
            i_sum(&t, &[1, 1], &[0, 0], 2, IVariant::I),
            CycNum::one(&field)
        );
    }

    #[test]
    fn i_sum_matches_j_product() {
        // coefficient of t^m in prod J_j equals (-1)^m zeta^{m^2} I_m
        for (nf, mu, lambda) in [
            (2u32, vec![1u32, 1], vec![0u32, 0]),
            (3, vec![2, 2, 2], vec![1, 1, 1]),
            (3, vec![2, 1, 0], vec![0, 0, 0]),
            (3, vec![2, 2, 2], vec![0, 1, 2]),
        ] {
            let field = CycField::new(nf);
            let t = QBinomialTable::new(&field);
            let pj = product_j(&t, &mu, &lambda);
            let top: u32 = mu.iter().sum();
            for m in 0..=top {
                let i_m = i_sum(&t, &mu, &lambda, m, IVariant::I);
                let mut expect = i_m.mul(&CycNum::zeta_power(&field, (m as i64) * (m as i64)));
                if m % 2 == 1 {
                    expect = expect.neg();
                }
                assert_eq!(pj.coeff(m as usize), expect, "N={} m={}", nf, m);
            }
            // same for the bar side
            let pjb = product_jbar(&t, &mu, &lambda);
            let topb: u32 = lambda.iter().sum();
            for m in 0..=topb {
                let i_m = i_sum(&t, &mu, &lambda, m, IVariant::Ibar);
                let mut expect = i_m.mul(&CycNum::zeta_power(&field, (m as i64) * (m as i64)));
                if m % 2 == 1 {
                    expect = expect.neg();
                }
                assert_eq!(pjb.coeff(m as usize), expect, "bar N={} m={}", nf, m);
            }
        }
    }

    #[test]
    fn lemma1_examples() {
        let field = CycField::new(2);
        let t = QBinomialTable::new(&field);
        let r = check_lemma1(&t, &[1, 1], &[0, 0]).unwrap();
        assert!(r.all_pass(), "{:?}", r.lines);

        let field = CycField::new(3);
        let t = QBinomialTable::new(&field);
        let r = check_lemma1(&t, &[2, 2, 2], &[1, 1, 1]).unwrap();
        assert!(r.all_pass(), "{:?}", r.lines);
    }

    #[test]
    fn theta_examples() {
        let field = CycField::new(2);
        assert_eq!(
            theta(&field, 2, 0, 0, 0, 1).unwrap(),
            BigInt::from(1)
        );
        // N=3, L=3, Q=1, l=m=0, k=1: brute force resolves to 18
        let field = CycField::new(3);
        assert_eq!(
            theta(&field, 3, 1, 0, 0, 1).unwrap(),
            BigInt::from(18)
        );
    }

    #[test]
    fn theta_symmetric() {
        for (n, l, q) in [(2u32, 4usize, 0u32), (3, 3, 0), (3, 3, 1), (3, 4, 2)] {
            let field = CycField::new(n);
            let t = theta_tensor(&field, l, q, 1).unwrap();
            assert!(t.is_symmetric(), "n={} l={} q={}", n, l, q);
        }
    }

    #[test]
    fn lemma2_examples() {
        let field = CycField::new(2);
        let dd = drinfeld(2, 2, 0);
        let r = check_lemma2(&field, &dd, &[1, 2]).unwrap();
        assert!(r.all_pass(), "{:?}", r.lines);

        let field = CycField::new(3);
        for q in 0..3 {
            let dd = drinfeld(3, 3, q);
            let r = check_lemma2(&field, &dd, &[1, 2]).unwrap();
            assert!(r.all_pass(), "q={} {:?}", q, r.lines);
        }
    }

    #[test]
    fn gram_small_cases() {
        // N=2, L=2, Q=0: single root -1, Gram = [1], -B_1 = 1
        let field = CycField::new(2);
        let dd = drinfeld(2, 2, 0);
        let rs = isolate_and_refine(&dd, 128).unwrap();
        let g = gram_matrix(&field, &dd, &rs).unwrap();
        assert!(g.pass());
        assert!(g.matrix[0][0].contains(&BigRational::one()));

        // N=3, L=3, Q=1: diagonal 18
        let field = CycField::new(3);
        let dd = drinfeld(3, 3, 1);
        let rs = isolate_and_refine(&dd, 128).unwrap();
        let g = gram_matrix(&field, &dd, &rs).unwrap();
        assert!(g.pass());
        assert!(g.matrix[0][0].contains(&BigRational::from_integer(BigInt::from(18))));

        // N=3, L=3, Q=2: diagonal 18
        let dd = drinfeld(3, 3, 2);
        let rs = isolate_and_refine(&dd, 128).unwrap();
        let g = gram_matrix(&field, &dd, &rs).unwrap();
        assert!(g.pass());
        assert!(g.matrix[0][0].contains(&BigRational::from_integer(BigInt::from(18))));
    }

    #[test]
    fn gram_brute_agrees_with_theta_route() {
        let field = CycField::new(3);
        let dd = drinfeld(3, 3, 1);
        let rs = isolate_and_refine(&dd, 128).unwrap();
        let g = gram_matrix(&field, &dd, &rs).unwrap();
        let brute = gram_brute_entry(&field, &dd, &rs, 0, 0).unwrap();
        assert!(brute.im.contains_zero());
        assert!(brute.re.sub(&g.matrix[0][0]).contains_zero());
    }

    #[test]
    fn corollary_cases() {
        // m_Q = 1: h is the constant -B_1
        let field = CycField::new(2);
        let dd = drinfeld(2, 2, 0);
        let rs = isolate_and_refine(&dd, 128).unwrap();
        let r = check_corollary(&field, &dd, &rs, 25).unwrap();
        assert!(r.pass());

        // N=3, L=3, Q=0: degree-1 match for both roots
        let field = CycField::new(3);
        let dd = drinfeld(3, 3, 0);
        let rs = isolate_and_refine(&dd, 128).unwrap();
        let r = check_corollary(&field, &dd, &rs, 25).unwrap();
        assert!(r.pass());

        // N=2, L=4, Q=0: roots -3 +- 2 sqrt 2
        let field = CycField::new(2);
        let dd = drinfeld(2, 4, 0);
        let rs = isolate_and_refine(&dd, 128).unwrap();
        let r = check_corollary(&field, &dd, &rs, 25).unwrap();
        assert!(r.pass());
    }
}
