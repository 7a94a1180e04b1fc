//! Acceptance gate: runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any fails.

use std::collections::HashSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use arratlas::arrangement::{CharPolyOptions, TypeCSubarrangement};
use arratlas::combinat::{boxed_chain, odd_chain};
use arratlas::exactmath::{factorial, Polynomial};
use arratlas::formulas::{
    chi, chi_boxed_threshold, chi_boxed_via_egf, chi_coefficient, regions_boxed, regions_boxed_via_egf,
    regions_threshold, regions_threshold_eulerian, FamilyId,
};
use arratlas::graphs::{enumerate_colored, peel, SignedPermutation};
use arratlas::oracle::{compare_sets, enumerate_regions};
use arratlas::orders::{count_by_form, enumerate_half_orders, tally_by_form};
use arratlas::reference::TABLE1;
use arratlas::Sign;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn table1() -> Outcome {
    let expected_r10 = big(1_137_563_980);
    for row in TABLE1.iter() {
        let p = chi_boxed_threshold(row.n);
        ensure(p == Polynomial::from_i64(row.coeffs), || format!("n = {}: got {p}", row.n))?;
        let r = regions_boxed(row.n).map_err(|e| e.to_string())?;
        ensure(r == big(row.regions), || format!("n = {}: r = {r}", row.n))?;
    }
    let r10 = regions_boxed(10).map_err(|e| e.to_string())?;
    ensure(r10 == expected_r10, || format!("r(BT_10) = {r10}"))?;

    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = arratlas::cli::run(["arratlas", "verify", "--suite", "table1", "--n-max", "10"], &mut out, &mut err);
    let out = String::from_utf8_lossy(&out);
    ensure(code == 0, || format!("verify exited {code}: {}", String::from_utf8_lossy(&err)))?;
    ensure(
        out.lines().count() == TABLE1.len() && out.lines().all(|l| l.contains(r#""ok":true"#)),
        || format!("verify output: {out}"),
    )?;
    Ok(format!("{} rows, r(BT_10) = {r10}", TABLE1.len()))
}

fn finite_field_vs_formula() -> Outcome {
    for n in 2..=5 {
        let counted = TypeCSubarrangement::boxed_threshold(n)
            .char_poly_with(&CharPolyOptions::default())
            .map_err(|e| e.to_string())?;
        ensure(counted == chi_boxed_threshold(n), || format!("n = {n}: {counted}"))?;
    }
    Ok("n = 2..5".into())
}

fn shift_law() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let two = big(2);
    let trials = 20;
    for n in 2..=4 {
        for t in 0..trials {
            let arr = TypeCSubarrangement::random_type_c(n, &mut rng);
            let plain = arr.char_poly().map_err(|e| e.to_string())?;
            let boxed = arr.boxed().and_then(|b| b.char_poly()).map_err(|e| e.to_string())?;
            ensure(boxed == plain.shift(&two), || format!("n = {n}, trial {t}: {plain} vs {boxed}"))?;
        }
    }
    Ok(format!("{trials} random sub-arrangements at each n = 2, 3, 4"))
}

fn oracle_counts() -> Outcome {
    let threshold = [(2, 2), (3, 8), (4, 46), (5, 332)];
    let boxed = [(2, 12), (3, 64), (4, 436)];
    for (n, want) in threshold {
        let got = enumerate_regions(&TypeCSubarrangement::threshold(n)).map_err(|e| e.to_string())?.len();
        ensure(got == want, || format!("T_{n}: {got}"))?;
        ensure(regions_threshold(n) == big(want as i64), || format!("formula T_{n}"))?;
    }
    for (n, want) in boxed {
        let got = enumerate_regions(&TypeCSubarrangement::boxed_threshold(n))
            .map_err(|e| e.to_string())?
            .len();
        ensure(got == want, || format!("BT_{n}: {got}"))?;
    }
    Ok("T_2..T_5 = 2, 8, 46, 332; BT_2..BT_4 = 12, 64, 436".into())
}

fn bijections() -> Outcome {
    for n in 2..=4 {
        let regions = enumerate_regions(&TypeCSubarrangement::boxed_threshold(n)).map_err(|e| e.to_string())?;
        let orders = compare_sets(&regions, enumerate_half_orders(n).map_err(|e| e.to_string())?.map(|h| h.region()));
        ensure(orders.ok, || format!("orders n = {n}: {orders:?}"))?;
        let graphs = compare_sets(&regions, enumerate_colored(n).map(|g| g.region()));
        ensure(graphs.ok, || format!("graphs n = {n}: {graphs:?}"))?;
    }
    Ok("orders and colored graphs, n = 2..4".into())
}

fn form_counts() -> Outcome {
    let fact = |k: usize| factorial(k);
    for n in 2..=7 {
        // closed forms written out from Stirling numbers by set-partition counting
        let s = stirling_rows(n);
        let a = |m: usize| -> BigInt { (0..=m).map(|k| fact(k) * &s[m][k]).sum() };
        let nn = big(n as i64);
        let form1 = big(2) * a(n);
        let form2a = big(2) * (a(n) - &nn * a(n - 1));
        let form2b: BigInt = (1..=n)
            .map(|k| big(4) * (fact(k) - fact(k - 1)) * (big(k as i64) * &s[n][k] - &nn * &s[n - 1][k - 1]))
            .sum();
        let form3 = big(2) * &nn * a(n - 1);
        let c = count_by_form(n).map_err(|e| e.to_string())?;
        ensure(
            c.form1 == form1 && c.form2a == form2a && c.form2b == form2b && c.form3 == form3,
            || format!("n = {n}: {c:?}"),
        )?;
        let total = regions_boxed(n).map_err(|e| e.to_string())?;
        ensure(c.total() == total, || format!("n = {n}: sum {} vs {total}", c.total()))?;
        if n <= 5 {
            let tally = tally_by_form(n).map_err(|e| e.to_string())?;
            ensure(tally == c, || format!("n = {n}: enumeration {tally:?}"))?;
        }
    }
    Ok("n = 2..7, enumeration confirms n <= 5".into())
}

/// `S(m, k)` for `m <= n` by counting restricted growth strings.
fn stirling_rows(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows = vec![vec![BigInt::from(0); n + 2]; n + 1];
    fn go(i: usize, m: usize, max: usize, row: &mut [BigInt]) {
        if i == m {
            row[max] += 1;
            return;
        }
        for b in 0..=max {
            go(i + 1, m, max.max(b + 1), row);
        }
    }
    for (m, row) in rows.iter_mut().enumerate() {
        go(0, m, 0, row);
    }
    rows
}

fn egf() -> Outcome {
    let series = regions_boxed_via_egf(8).map_err(|e| e.to_string())?;
    ensure(series[0] == big(1) && series[1] == big(3), || format!("indices 0, 1: {:?}", &series[..2]))?;
    for (n, value) in series.iter().enumerate().skip(2) {
        let r = regions_boxed(n).map_err(|e| e.to_string())?;
        ensure(*value == r, || format!("n = {n}: {value} vs {r}"))?;
    }
    for t in [3, 5, 7] {
        let values = chi_boxed_via_egf(t, 6).map_err(|e| e.to_string())?;
        for (n, value) in values.iter().enumerate() {
            let direct = chi_boxed_threshold(n).eval_i64(t);
            ensure(*value == direct, || format!("t = {t}, n = {n}: {value} vs {direct}"))?;
        }
    }
    Ok("regions to n = 8; chi at t = 3, 5, 7 to n = 6".into())
}

fn eulerian() -> Outcome {
    for n in 2..=12 {
        let e = regions_threshold_eulerian(n).map_err(|e| e.to_string())?;
        ensure(e == regions_threshold(n), || format!("n = {n}: {e}"))?;
    }
    Ok("n = 2..12".into())
}

fn coefficients() -> Outcome {
    for family in [FamilyId::Threshold, FamilyId::BoxedThreshold] {
        for n in 0..=8 {
            let p = chi(family, n);
            for j in 0..=n + 1 {
                let c = chi_coefficient(family, n, j);
                ensure(c == p.coeff(j), || format!("{family:?} n = {n}, j = {j}: {c} vs {}", p.coeff(j)))?;
            }
        }
    }
    for k in 0..=8 {
        let b = boxed_chain(k);
        let c = odd_chain(k + 1);
        let mut prefix = big(0);
        for j in 0..=k {
            prefix += c.coeff(j);
            ensure(b.coeff(j) == -prefix.clone(), || format!("k = {k}, j = {j}"))?;
        }
    }
    Ok("n <= 8 both families; prefix relation k <= 8".into())
}

fn codec() -> Outcome {
    let mut rng = StdRng::seed_from_u64(10);
    let per_n = 1000;
    for n in 1..=6 {
        let mut distinct = HashSet::new();
        for _ in 0..per_n {
            let sp = SignedPermutation::random(n, true, &mut rng);
            distinct.insert(sp.clone());
            let base = sp.decode();

            if sp.half_marker() != Some(0) {
                let mut e = sp.entries().to_vec();
                e[0].1 = -e[0].1;
                let flipped = SignedPermutation::new(e, sp.half_marker()).map_err(|e| e.to_string())?;
                ensure(flipped.decode() == base, || format!("first-sign flip changed {sp}"))?;
            }

            // shuffle every maximal constant-sign run that does not cross the marker
            let mut e = sp.entries().to_vec();
            let mut start = 0;
            while start < n {
                let mut end = start + 1;
                while end < n && e[end].1 == e[start].1 && Some(end) != sp.half_marker() {
                    end += 1;
                }
                e[start..end].shuffle(&mut rng);
                start = end;
            }
            let reordered = SignedPermutation::new(e, sp.half_marker()).map_err(|e| e.to_string())?;
            ensure(reordered.decode() == base, || format!("block reorder changed {sp}"))?;

            let plain = SignedPermutation::new(sp.entries().to_vec(), None).map_err(|e| e.to_string())?;
            let peeled = peel(&plain.decode_graph()).map_err(|e| e.to_string())?;
            ensure(peeled == plain.canonical_blocks(), || format!("peel round trip failed on {plain}"))?;
            ensure(
                peeled.windows(2).all(|w| w[0].sign != w[1].sign),
                || format!("peel not alternating on {plain}"),
            )?;
            ensure(
                n == 1 || peeled[0].elements.len() >= 2,
                || format!("first peeled block is a singleton on {plain}"),
            )?;
            ensure(n > 1 || peeled[0].sign == Sign::Minus, || "n = 1 block sign".into())?;
        }
        ensure(distinct.len() > 1, || format!("n = {n}: degenerate sampling"))?;
    }
    Ok(format!("{per_n} random signed permutations at each n = 1..6"))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("Table 1 reproduction", table1),
        ("finite-field characteristic polynomial equals closed form", finite_field_vs_formula),
        ("shift law on random sub-arrangements", shift_law),
        ("oracle region counts", oracle_counts),
        ("bijection completeness against the oracle", bijections),
        ("sub-counts by canonical form", form_counts),
        ("generating function agreement", egf),
        ("Eulerian identity", eulerian),
        ("coefficient formulas", coefficients),
        ("signed-permutation codec properties", codec),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|p| Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panic".into())));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail}) [{secs:.2}s]", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why} [{secs:.2}s]", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
