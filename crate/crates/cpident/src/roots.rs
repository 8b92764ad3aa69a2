//! Certified real roots of the section polynomials P_Q: exact Sturm-sequence
//! counting and resultant-based distinctness over the integers first, then
//! arbitrary-precision isolation and interval-Newton refinement.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ball::{pow2_inv, RealBall};
use crate::error::Error;
use crate::polyform::DrinfeldData;

/// Certified real root data for one P_Q.
#[derive(Debug, Clone)]
pub struct RootSet {
    pub dd: DrinfeldData,
    pub precision_bits: u32,
    /// Ascending real roots; radius <= 2^{-precision_bits} (zero when exact).
    pub roots: Vec<RealBall>,
    /// Per-root flag: found as an exact rational.
    pub exact: Vec<bool>,
    pub real_count: usize,
    pub distinct: bool,
    pub all_real: bool,
}

type RatPoly = Vec<BigRational>;

fn rat_poly(dd: &DrinfeldData) -> RatPoly {
    dd.lambda
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect()
}

fn trim(mut v: RatPoly) -> RatPoly {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

fn eval(p: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn derivative(p: &[BigRational]) -> RatPoly {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect()
}

fn rem(a: &[BigRational], b: &[BigRational]) -> RatPoly {
    let mut r = a.to_vec();
    let lead = b.last().unwrap();
    while r.len() >= b.len() {
        let c = r.last().unwrap() / lead;
        let shift = r.len() - b.len();
        for (j, bc) in b.iter().enumerate() {
            let delta = &c * bc;
            r[shift + j] -= delta;
        }
        r = trim(r);
        if r.is_empty() {
            break;
        }
        if r.len() < b.len() {
            break;
        }
    }
    r
}

/// Sturm chain of p (assumed squarefree or not; works either way for
/// counting distinct real roots).
fn sturm_chain(p: &[BigRational]) -> Vec<RatPoly> {
    let mut chain = vec![trim(p.to_vec())];
    let d = derivative(p);
    if !d.is_empty() {
        chain.push(d);
    }
    while chain.last().map_or(false, |q| q.len() > 1) {
        let n = chain.len();
        let r = rem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(r.iter().map(|c| -c).collect());
    }
    chain
}

fn sign(x: &BigRational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut count = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn variations_at(chain: &[RatPoly], x: &BigRational) -> usize {
    variations(chain.iter().map(|p| sign(&eval(p, x))))
}

fn variations_at_neg_inf(chain: &[RatPoly]) -> usize {
    variations(chain.iter().map(|p| {
        let s = sign(p.last().unwrap());
        if (p.len() - 1) % 2 == 0 {
            s
        } else {
            -s
        }
    }))
}

fn variations_at_pos_inf(chain: &[RatPoly]) -> usize {
    variations(chain.iter().map(|p| sign(p.last().unwrap())))
}

/// Number of distinct real roots in (a, b], by Sturm's theorem.
fn count_in(chain: &[RatPoly], a: &BigRational, b: &BigRational) -> usize {
    variations_at(chain, a) - variations_at(chain, b)
}

/// Cauchy bound: all roots lie in (-B, B).
fn root_bound(p: &[BigRational]) -> BigRational {
    let lead = p.last().unwrap().abs();
    let max = p[..p.len() - 1]
        .iter()
        .map(|c| c.abs())
        .fold(BigRational::zero(), |a, b| if b > a { b } else { a });
    BigRational::one() + max / lead
}

/// Resultant of p and q over Q via the Sylvester matrix.
fn resultant(p: &[BigRational], q: &[BigRational]) -> BigRational {
    let n = p.len() - 1;
    let m = q.len() - 1;
    if n == 0 || m == 0 {
        // res(p, const c) = c^deg(p)
        if m == 0 {
            let mut acc = BigRational::one();
            for _ in 0..n {
                acc *= q[0].clone();
            }
            return acc;
        }
        let mut acc = BigRational::one();
        for _ in 0..m {
            acc *= p[0].clone();
        }
        return acc;
    }
    let size = n + m;
    let mut mat = vec![vec![BigRational::zero(); size]; size];
    for i in 0..m {
        for (j, c) in p.iter().rev().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..n {
        for (j, c) in q.iter().rev().enumerate() {
            mat[m + i][i + j] = c.clone();
        }
    }
    // Gaussian elimination with exact rationals
    let mut det = BigRational::one();
    for col in 0..size {
        let pivot = (col..size).find(|&r| !mat[r][col].is_zero());
        let pivot = match pivot {
            Some(r) => r,
            None => return BigRational::zero(),
        };
        if pivot != col {
            mat.swap(pivot, col);
            det = -det;
        }
        let pv = mat[col][col].clone();
        det *= pv.clone();
        for r in col + 1..size {
            if mat[r][col].is_zero() {
                continue;
            }
            let factor = &mat[r][col] / &pv;
            for c in col..size {
                let delta = &factor * &mat[col][c];
                mat[r][c] -= delta;
            }
        }
    }
    det
}

/// Exact certificates: number of distinct real roots and squarefreeness.
pub fn certify_roots(dd: &DrinfeldData) -> (usize, bool) {
    let p = trim(rat_poly(dd));
    assert!(p.len() >= 2, "need m_Q >= 1");
    let chain = sturm_chain(&p);
    let real_count = variations_at_neg_inf(&chain) - variations_at_pos_inf(&chain);
    let d = derivative(&p);
    let distinct = !resultant(&p, &d).is_zero();
    (real_count, distinct)
}

/// Discriminant-free access to the resultant value, for reporting.
pub fn resultant_p_pprime(dd: &DrinfeldData) -> BigRational {
    let p = trim(rat_poly(dd));
    resultant(&p, &derivative(&p))
}

fn interval_eval(p: &[BigRational], x: &RealBall) -> RealBall {
    let mut acc = RealBall::zero();
    for c in p.iter().rev() {
        acc = acc.mul(x).add(&RealBall::exact(c.clone()));
    }
    acc
}

/// Isolate the real roots and refine each to radius <= 2^{-precision_bits}.
pub fn isolate_and_refine(dd: &DrinfeldData, precision_bits: u32) -> Result<RootSet, Error> {
    let (real_count, distinct) = certify_roots(dd);
    let mut p = squarefree_part(&trim(rat_poly(dd)));
    let mut exact_roots: Vec<BigRational> = Vec::new();

    // rational-root fast path: candidates num/den with num | Lambda_0,
    // den | Lambda_{m_Q}
    let lam0 = dd.lambda[0].clone();
    let lamtop = dd.lambda[dd.m_q].clone();
    'outer: loop {
        if p.len() < 2 {
            break;
        }
        for num in divisors(&lam0) {
            for den in divisors(&lamtop) {
                for s in [1i32, -1] {
                    let cand = BigRational::new(num.clone() * BigInt::from(s), den.clone());
                    if eval(&p, &cand).is_zero() {
                        exact_roots.push(cand.clone());
                        p = deflate(&p, &cand);
                        continue 'outer;
                    }
                }
            }
        }
        break;
    }

    // Sturm bisection on the remainder
    let mut intervals: Vec<(BigRational, BigRational)> = Vec::new();
    if p.len() >= 2 {
        let chain = sturm_chain(&p);
        let bound = root_bound(&p);
        let mut stack = vec![(-bound.clone(), bound)];
        while let Some((a, b)) = stack.pop() {
            let cnt = count_in(&chain, &a, &b);
            if cnt == 0 {
                continue;
            }
            if cnt == 1 {
                intervals.push((a, b));
                continue;
            }
            let mid = (&a + &b) / BigRational::from_integer(BigInt::from(2));
            stack.push((a, mid.clone()));
            stack.push((mid, b));
        }
        // separate isolating intervals from already-found exact roots
        // (exact roots were deflated out, so no overlap in root identity,
        // but interval endpoints may still touch them; harmless)
    }

    let target = pow2_inv(precision_bits);
    let mut balls: Vec<(RealBall, bool)> = exact_roots
        .iter()
        .map(|r| (RealBall::exact(r.clone()), true))
        .collect();

    for (mut a, mut b) in intervals {
        // make endpoints non-roots for sign bisection
        // (Sturm used (a, b]; a root exactly at b would be rational, and
        // rationals were deflated, so P(a), P(b) != 0 here)
        let mut fa = eval(&p, &a);
        debug_assert!(!fa.is_zero() && !eval(&p, &b).is_zero());
        let mut budget = 4 * (precision_bits as usize) + 256;
        let dp = derivative(&p);
        loop {
            let width = &b - &a;
            if width <= &target + &target {
                break;
            }
            if budget == 0 {
                let achieved = width_bits(&width);
                return Err(Error::RefinementBudget {
                    achieved_bits: achieved,
                });
            }
            budget -= 1;
            // interval-Newton step when the derivative enclosure excludes zero
            let half = (&b - &a) / BigRational::from_integer(BigInt::from(2));
            let mid = (&a + &b) / BigRational::from_integer(BigInt::from(2));
            let x = RealBall::new(mid.clone(), half.clone());
            let dball = interval_eval(&dp, &x);
            let mut stepped = false;
            if !dball.contains_zero() {
                let fm = eval(&p, &mid);
                let newton = RealBall::exact(mid.clone()).sub(
                    &RealBall::exact(fm).mul(&dball.recip()),
                );
                let lo = (&newton.mid - &newton.rad).max(a.clone());
                let hi = (&newton.mid + &newton.rad).min(b.clone());
                if lo < hi && (&hi - &lo) < (&b - &a) * BigRational::new(BigInt::from(3), BigInt::from(4)) {
                    let flo = eval(&p, &lo);
                    let fhi = eval(&p, &hi);
                    if flo.is_zero() {
                        a = lo.clone();
                        b = lo;
                        break;
                    }
                    if fhi.is_zero() {
                        a = hi.clone();
                        b = hi;
                        break;
                    }
                    if sign(&flo) != sign(&fhi) {
                        a = lo;
                        b = hi;
                        fa = flo;
                        stepped = true;
                    }
                }
            }
            if !stepped {
                let fm = eval(&p, &mid);
                if fm.is_zero() {
                    a = mid.clone();
                    b = mid;
                    break;
                }
                if sign(&fm) == sign(&fa) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
        }
        let mid = (&a + &b) / BigRational::from_integer(BigInt::from(2));
        let rad = (&b - &a) / BigRational::from_integer(BigInt::from(2));
        balls.push((RealBall::new(mid, rad).compress(precision_bits + 8), false));
    }

    balls.sort_by(|x, y| x.0.mid.cmp(&y.0.mid));
    let all_real = balls.len() == dd.m_q;
    debug_assert_eq!(balls.len(), real_count);

    let rs = RootSet {
        dd: dd.clone(),
        precision_bits,
        roots: balls.iter().map(|(b, _)| b.clone()).collect(),
        exact: balls.iter().map(|(_, e)| *e).collect(),
        real_count,
        distinct,
        all_real,
    };
    // no root ball may contain 0 (Lambda_0 = c_Q > 0 forbids z = 0)
    for r in &rs.roots {
        assert!(!r.contains_zero(), "root ball contains zero");
    }
    Ok(rs)
}

fn width_bits(w: &BigRational) -> u32 {
    let mut bits = 0u32;
    let mut v = w.clone();
    let one = BigRational::one();
    while v < one && bits < 100_000 {
        v = v * BigRational::from_integer(BigInt::from(2));
        bits += 1;
    }
    bits.saturating_sub(1)
}

fn poly_gcd(a: &[BigRational], b: &[BigRational]) -> RatPoly {
    let mut r0 = trim(a.to_vec());
    let mut r1 = trim(b.to_vec());
    while !r1.is_empty() {
        let r = rem(&r0, &r1);
        r0 = r1;
        r1 = r;
    }
    // monic normalization
    if let Some(lead) = r0.last().cloned() {
        for c in &mut r0 {
            *c /= lead.clone();
        }
    }
    r0
}

/// p / gcd(p, p'): same roots, all simple.
fn squarefree_part(p: &[BigRational]) -> RatPoly {
    let g = poly_gcd(p, &derivative(p));
    if g.len() <= 1 {
        return trim(p.to_vec());
    }
    // exact division p / g
    let mut rem_p = trim(p.to_vec());
    let mut quot = vec![BigRational::zero(); rem_p.len() - g.len() + 1];
    let lead = g.last().unwrap();
    for i in (0..quot.len()).rev() {
        let c = &rem_p[i + g.len() - 1] / lead;
        quot[i] = c.clone();
        for (j, gc) in g.iter().enumerate() {
            let delta = &c * gc;
            rem_p[i + j] -= delta;
        }
    }
    trim(quot)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = vec![];
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let q = &n / &d;
            if q != d {
                out.push(q);
            }
        }
        d += BigInt::one();
    }
    out.sort();
    out
}

fn deflate(p: &[BigRational], root: &BigRational) -> RatPoly {
    // synthetic division by (x - root)
    let mut out = vec![BigRational::zero(); p.len() - 1];
    let mut carry = BigRational::zero();
    for i in (0..p.len() - 1).rev() {
        carry = &p[i + 1] + &carry * root;
        out[i] = carry.clone();
    }
    debug_assert!((&p[0] + &carry * root).is_zero());
    trim(out)
}

/// B_k = z_k (Lambda_{m_Q})^2 prod_{l != k} (z_k - z_l)^2, as rigorous balls.
/// With a repeated root the theorem degenerates to B_k = 0; that path returns
/// exact zeros.
pub fn compute_b(rs: &RootSet) -> Vec<RealBall> {
    if !rs.distinct {
        return vec![RealBall::zero(); rs.roots.len()];
    }
    let lam_top = BigRational::from_integer(rs.dd.lambda[rs.dd.m_q].clone());
    let scale = &lam_top * &lam_top;
    rs.roots
        .iter()
        .enumerate()
        .map(|(k, zk)| {
            let mut acc = zk.scale(&scale);
            for (l, zl) in rs.roots.iter().enumerate() {
                if l == k {
                    continue;
                }
                let d = zk.sub(zl);
                acc = acc.mul(&d).mul(&d);
            }
            acc
        })
        .collect()
}
