//! Acceptance suite: one line per criterion, each with its time budget.
//!
//! Run with `cargo test -p tate-regulator-cli --test acceptance`.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use tate_regulator::bloch::{contour_regulator, eta0, CyclotomicNumber, PreBlochElement};
use tate_regulator::padic::{torsion_of_k1, FieldSpec, PAdicElement};
use tatereg::{run_file, run_suite, without_durations, Overrides, Report};

fn scenarios() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios")
}

fn scenario(name: &str) -> Report {
    run_file(&scenarios().join(name), Overrides::default()).expect("scenario loads")
}

/// Every listed scenario passes; failures are returned as notes.
fn all_pass(files: &[&str]) -> Result<Vec<Report>, String> {
    let reports: Vec<_> = files.iter().map(|f| scenario(f)).collect();
    let bad: Vec<String> = reports
        .iter()
        .zip(files)
        .flat_map(|(r, f)| r.checks.iter().filter(|c| !c.passed()).map(move |c| format!("{f}: {}", c.name)))
        .collect();
    if bad.is_empty() {
        Ok(reports)
    } else {
        Err(bad.join("; "))
    }
}

/// `G = (π/8) log(2 + √3) + (3/8) Σ 1/((2n+1)² C(2n, n))`.
fn catalan() -> f64 {
    let mut sum = 0.0;
    let mut central = 1.0f64;
    for n in 0..40u32 {
        if n > 0 {
            central *= (2 * n) as f64 * (2 * n - 1) as f64 / (n as f64 * n as f64);
        }
        sum += 1.0 / ((2 * n + 1) as f64).powi(2) / central;
    }
    std::f64::consts::PI / 8.0 * (2.0 + 3f64.sqrt()).ln() + 3.0 / 8.0 * sum
}

/// The image of `(q, ·)_4` on `Q₅*`, by brute force on residues mod 125.
fn torsion_image_mod_125(q_val: u32, q_unit: u64) -> BTreeSet<u64> {
    let m = 125u64;
    let powmod = |b: u64, e: u64| (0..e).fold(1u64, |acc, _| acc * (b % m) % m);
    let inv = |x: u64| powmod(x, 99);
    let mut image = BTreeSet::new();
    for j in 0..4u32 {
        for u in (1..m).filter(|u| u % 5 != 0) {
            let mut t = powmod(q_unit, j as u64) * powmod(inv(u), q_val as u64) % m;
            if (q_val * j) % 2 == 1 {
                t = (m - t) % m;
            }
            image.insert(powmod(t, 125));
        }
    }
    image
}

fn c1() -> Result<String, String> {
    all_pass(&["01-theta-identities.toml"]).map(|_| "residual and reflection vanish to O(5^40) on [-20, 20]".into())
}

fn c2() -> Result<String, String> {
    all_pass(&["02-weierstrass.toml"]).map(|_| "residual vanishes to O(5^40) on [-20, 20]".into())
}

fn c3() -> Result<String, String> {
    let r = all_pass(&["03-formula-table.toml"])?;
    let rows = r[0].checks.len();
    // 4 rows per constant, r rows tau-hat(theta(pi0^i u)), r^2 rows for pairs (i, j).
    if rows != 4 * 3 + 3 + 9 {
        return Err(format!("{rows} rows"));
    }
    Ok(format!("{rows} rows match mod 5^2-th powers"))
}

fn c4() -> Result<String, String> {
    all_pass(&["04-prop-sa-123.toml", "04-prop-sa-124.toml", "04-o-k-123.toml", "04-o-k-124.toml"])?;
    Ok("closed forms match; o_K = -1, -2".into())
}

fn c5() -> Result<String, String> {
    let r = all_pass(&["05-lemma-f0.toml", "05-lemma-f1.toml"])?;
    Ok(format!("{} comparisons match mod 5^2-th powers, incl. closed form vs closed form", r[0].checks.len() + r[1].checks.len()))
}

fn c6() -> Result<String, String> {
    all_pass(&["06-weil-reciprocity.toml"]).map(|_| "100 of 100 products equal 1".into())
}

fn c7() -> Result<String, String> {
    all_pass(&["07-five-term.toml", "07-distribution.toml"])?;
    let i = CyclotomicNumber::root_of_unity(4, 1).map_err(|e| e.to_string())?;
    let d = PreBlochElement::generator(&i).map_err(|e| e.to_string())?.borel_value(1);
    let err = (d - 0.915965594177).abs().max((d - catalan()).abs());
    if err >= 1e-11 {
        return Err(format!("D2(i) = {d:.15}"));
    }
    Ok(format!("D2(i) = {d:.12}; five-term and distribution residuals < 1e-10"))
}

fn c8() -> Result<String, String> {
    all_pass(&["08-bloch2cor.toml"])?;
    let z1 = CyclotomicNumber::root_of_unity(4, 1).map_err(|e| e.to_string())?;
    let z2 = CyclotomicNumber::root_of_unity(4, 2).map_err(|e| e.to_string())?;
    let sym = eta0(&z1, 4, &z2, 2).map_err(|e| e.to_string())?;
    let expected = 16.0 * catalan();
    let mut values = Vec::new();
    for angle in [-std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_4, 2.5] {
        values.push(contour_regulator(&sym, 1, angle, 1e-3, 1e-12).map_err(|e| e.to_string())?.value);
    }
    let dev = (values[0].abs() - expected).abs();
    let spread = values.iter().map(|v| (v - values[0]).abs()).fold(0.0, f64::max);
    if dev >= 1e-6 || spread >= 2e-9 {
        return Err(format!("|I| = {}, 16G = {expected}, spread {spread:.2e}", values[0].abs()));
    }
    Ok(format!("|I| = {:.12} = 16G to {dev:.1e}; spread over 3 rays {spread:.1e}", values[0].abs()))
}

fn c9() -> Result<String, String> {
    all_pass(&["09-galois-3-4.toml", "09-galois-7-4.toml", "09-galois-3-8.toml"])
        .map(|_| "sigma and tau identities exact, numeric residuals < 1e-10".into())
}

fn c10() -> Result<String, String> {
    all_pass(&["10-torsion-q5.toml", "10-torsion-q25.toml"])?;
    let k = FieldSpec::qp(5, 20).map_err(|e| e.to_string())?;
    for (q, v) in [(5i64, 1u32), (25, 2)] {
        let shape = torsion_of_k1(&k, &PAdicElement::from_int(&k, q)).map_err(|e| e.to_string())?;
        let image = torsion_image_mod_125(v, 1);
        if image.len() as u64 != shape.image_order {
            return Err(format!("q = {q}: image order {} vs oracle {}", shape.image_order, image.len()));
        }
        for (label, s) in &shape.symbols {
            let r: u64 = s.to_integer_mod(3).map_err(|e| e.to_string())?.to_string().parse().map_err(|_| "residue")?;
            if !image.contains(&r) {
                return Err(format!("q = {q}: ({label}) = {r} not in oracle image"));
            }
        }
    }
    Ok("[4, 4, 1] and [4, 4, 2], images agree with the mod 125 oracle".into())
}

fn c11() -> Result<String, String> {
    let a = run_suite(&scenarios(), 1, Overrides::default()).map_err(|e| e.to_string())?;
    let b = run_suite(&scenarios(), 4, Overrides::default()).map_err(|e| e.to_string())?;
    if !a.all_passed() || a.reports.is_empty() {
        return Err(format!("{} failed checks", a.summary.failed));
    }
    if without_durations(&a) != without_durations(&b) {
        return Err("serial and parallel reports differ".into());
    }
    Ok(format!("{} reports identical across runs, suite {:.2} s", a.reports.len(), a.duration_ms / 1e3))
}

type Criterion = (u32, &'static str, u64, fn() -> Result<String, String>);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        (1, "theta functional equation", 1, c1),
        (2, "Weierstrass residual", 5, c2),
        (3, "formula table", 10, c3),
        (4, "xi_L closed form and o_K", 60, c4),
        (5, "root-of-unity theta symbols", 60, c5),
        (6, "Weil reciprocity", 5, c6),
        (7, "Bloch-Wigner identities", 10, c7),
        (8, "contour regulator", 30, c8),
        (9, "Galois identities", 10, c9),
        (10, "torsion shapes", 5, c10),
        (11, "determinism", 300, c11),
    ];
    let start = Instant::now();
    let mut failures = 0;
    for (n, name, limit, run) in criteria {
        let t = Instant::now();
        let outcome = run();
        let elapsed = t.elapsed();
        let budget = if n == 11 { start.elapsed() } else { elapsed };
        let ok = outcome.is_ok() && budget < Duration::from_secs(limit);
        failures += usize::from(!ok);
        let note = outcome.unwrap_or_else(|e| e);
        println!(
            "criterion {n:>2} {:<4} {:<28} {:>8.3} s (limit {limit} s)  {note}",
            if ok { "PASS" } else { "FAIL" },
            name,
            elapsed.as_secs_f64()
        );
    }
    println!("total {:.3} s, {} of 11 criteria passed", start.elapsed().as_secs_f64(), 11 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
