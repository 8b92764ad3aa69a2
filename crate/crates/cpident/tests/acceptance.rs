//! Acceptance gate: one pass/fail line per criterion, executed over the full
//! pinned grids. Any hard failure fails the build; the benchmark criterion is
//! soft and only warns.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cpident::ball::pow10_inv;
use cpident::compositions::enumerate;
use cpident::cyclotomic::{CycField, CycNum};
use cpident::identities::gram_matrix;
use cpident::polyform::{drinfeld, k_brute, k_via_g, KVariant};
use cpident::qseries::{
    check_id1, check_id1a, check_product_identity, pochhammer, QBinomialTable,
};
use cpident::report::{run_bench, run_verify, OutputFormat, RunConfig, Suite};
use cpident::roots::isolate_and_refine;

fn config(n_list: Vec<u32>, l_list: Vec<usize>, suites: Vec<Suite>) -> RunConfig {
    RunConfig {
        n_list,
        l_list,
        q_list: None,
        suites,
        precision_bits: 128,
        threads: std::thread::available_parallelism()
            .map(|x| x.get())
            .unwrap_or(1),
        seed: 20_240_501,
        format: OutputFormat::Json,
        out: None,
    }
}

struct Gate {
    lines: Vec<(String, bool)>,
}

impl Gate {
    fn record(&mut self, idx: u32, what: &str, pass: bool) {
        println!(
            "criterion {}: {} - {}",
            idx,
            if pass { "PASS" } else { "FAIL" },
            what
        );
        self.lines.push((format!("criterion {}: {}", idx, what), pass));
    }
}

#[test]
fn acceptance() {
    let mut gate = Gate { lines: Vec::new() };

    // 1 + 2: dual-route K coefficients and conjugation, N in {2,3,4},
    // L in 2..=8, every composition of sum N. The conjugation identity is
    // asserted inside the same sweep.
    let mut oracle_pass = true;
    let mut conj_pass = true;
    for n in [2u32, 3, 4] {
        let field = CycField::new(n);
        let table = QBinomialTable::new(&field);
        for l in 2..=8usize {
            for c in enumerate(l, n, n) {
                let kt = match k_via_g(&field, &c) {
                    Ok(kt) => kt,
                    Err(_) => {
                        oracle_pass = false;
                        continue;
                    }
                };
                for (m, expect) in kt.k_coeffs.iter().enumerate() {
                    if &k_brute(&table, &c, m as u32, KVariant::K) != expect {
                        oracle_pass = false;
                    }
                    if k_brute(&table, &c, m as u32, KVariant::Kbar) != kt.kbar_coeffs[m] {
                        oracle_pass = false;
                    }
                    if kt.kbar_coeffs[m] != expect.conjugate() {
                        conj_pass = false;
                    }
                }
            }
        }
    }
    gate.record(1, "K brute-force equals generating-function route", oracle_pass);
    gate.record(2, "Kbar equals conjugate of K on the same grid", conj_pass);

    // 3: omega-binomial identities, exhaustive per N
    let mut q_pass = true;
    for n in 2..=6u32 {
        let field = CycField::new(n);
        let table = QBinomialTable::new(&field);
        for nn in 0..n {
            for r in 0..n {
                q_pass &= check_id1(&table, nn, r);
            }
        }
        for s in 0..n {
            q_pass &= check_id1a(&table, s);
        }
        q_pass &= pochhammer(&CycNum::omega_power(&field, 1), n - 1)
            == CycNum::from_integer(&field, n as i64);
    }
    gate.record(3, "omega-binomial identities for N in 2..=6", q_pass);

    // 4: product identity, exhaustive on small grids, seeded sample beyond
    let mut prod_pass = true;
    for n in [2u32, 3] {
        let field = CycField::new(n);
        let table = QBinomialTable::new(&field);
        for l in [2usize, 3] {
            let comps: Vec<Vec<u32>> = (0..=((n - 1) * l as u32))
                .flat_map(|s| enumerate(l, n, s).map(|c| c.parts().to_vec()))
                .collect();
            for mu in &comps {
                for lam in &comps {
                    let sm: u32 = mu.iter().sum();
                    let sl: u32 = lam.iter().sum();
                    if sm % n != sl % n || sl > sm {
                        continue;
                    }
                    prod_pass &= check_product_identity(&table, mu, lam).unwrap();
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_501);
    for n in [2u32, 3, 4] {
        let field = CycField::new(n);
        let table = QBinomialTable::new(&field);
        for l in [4usize, 5, 6] {
            let comps: Vec<Vec<u32>> = (0..=((n - 1) * l as u32))
                .flat_map(|s| enumerate(l, n, s).map(|c| c.parts().to_vec()))
                .collect();
            let mut done = 0;
            while done < 1000 {
                let a = comps.choose(&mut rng).unwrap();
                let b = comps.choose(&mut rng).unwrap();
                let sa: u32 = a.iter().sum();
                let sb: u32 = b.iter().sum();
                if sa % n != sb % n {
                    continue;
                }
                let (mu, lam) = if sa >= sb { (a, b) } else { (b, a) };
                prod_pass &= check_product_identity(&table, mu, lam).unwrap();
                done += 1;
            }
        }
    }
    gate.record(4, "J-product identity, exhaustive small + sampled 1000", prod_pass);

    // 5: Theta recurrences, N in {2,3}, L in 2..=6, all Q
    let r5 = run_verify(&config(
        vec![2, 3],
        vec![2, 3, 4, 5, 6],
        vec![Suite::Lemma2],
    ))
    .unwrap();
    gate.record(5, "Theta recurrences (m=0 collapse and convolution)", r5.all_pass());

    // 6: orthogonality theorem on the pinned (N, L) pairs, all Q, with the
    // radius gate and exact diagonal anchors
    let theorem_grid: [(u32, usize); 6] = [(2, 2), (2, 4), (2, 6), (3, 3), (3, 6), (4, 4)];
    let mut thm_pass = true;
    for (n, l) in theorem_grid {
        let r = run_verify(&config(vec![n], vec![l], vec![Suite::Theorem])).unwrap();
        if !r.all_pass() {
            for rec in r.records.iter().filter(|x| x.verdict != "pass") {
                eprintln!("theorem failure: N={} L={} Q={}: {}", rec.n, rec.l, rec.q, rec.detail);
            }
            thm_pass = false;
        }
    }
    // exact anchors: diagonal values 1, 18, 18
    for (n, l, q, anchor) in [(2u32, 2usize, 0u32, 1i64), (3, 3, 1, 18), (3, 3, 2, 18)] {
        let field = CycField::new(n);
        let dd = drinfeld(n, l, q);
        let rs = isolate_and_refine(&dd, 128).unwrap();
        let g = gram_matrix(&field, &dd, &rs).unwrap();
        let a = BigRational::from_integer(BigInt::from(anchor));
        for k in 0..rs.roots.len() {
            if !g.matrix[k][k].contains(&a) {
                eprintln!("anchor miss: N={} L={} Q={} k={}", n, l, q, k);
                thm_pass = false;
            }
        }
    }
    // radius gate is enforced inside the theorem suite; double-check the
    // bound constant used there
    assert!(pow10_inv(30) < pow10_inv(29));
    gate.record(6, "Gram orthogonality with radius gate and exact anchors", thm_pass);

    // 7: corollary, same grid, 1e-25 relative
    let mut cor_pass = true;
    for (n, l) in theorem_grid {
        let r = run_verify(&config(vec![n], vec![l], vec![Suite::Corollary])).unwrap();
        cor_pass &= r.all_pass();
    }
    gate.record(7, "corollary coefficient match within 1e-25 relative", cor_pass);

    // 8: root certificates on the same grid
    let mut root_pass = true;
    for (n, l) in theorem_grid {
        let r = run_verify(&config(vec![n], vec![l], vec![Suite::Roots])).unwrap();
        if !r.all_pass() {
            for rec in r.records.iter().filter(|x| x.verdict != "pass") {
                eprintln!("root certificate failure: N={} L={} Q={}: {}", rec.n, rec.l, rec.q, rec.detail);
            }
            root_pass = false;
        }
    }
    gate.record(8, "root certificates: count, distinctness, zero-free, P_Q(1)", root_pass);

    // 9: benchmark sanity (soft): routes must agree; timing only warns
    match run_bench(3, 9, 3) {
        Ok(b) => {
            let speedup: f64 = b.speedup.parse().unwrap_or(0.0);
            if speedup < 10.0 {
                eprintln!(
                    "warning: generating-function speedup {:.2}x below the 10x target (soft)",
                    speedup
                );
            }
            gate.record(9, "benchmark routes agree before timing", b.agreed);
        }
        Err(e) => {
            gate.record(9, &format!("benchmark failed: {}", e), false);
        }
    }

    let failed: Vec<&str> = gate
        .lines
        .iter()
        .filter(|(_, p)| !p)
        .map(|(s, _)| s.as_str())
        .collect();
    assert!(failed.is_empty(), "failed criteria: {:?}", failed);
}
