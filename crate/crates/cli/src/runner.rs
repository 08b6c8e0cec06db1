//! Maps each scenario kind onto library calls and turns the outcomes into checks.

use std::path::Path;
use std::time::Instant;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tate_regulator::bloch::{
    contour_regulator, delta_bar, distribution_relation, eta0, eta0_closed_form, five_term, galois_beta_check,
    CyclotomicField, CyclotomicNumber,
};
use tate_regulator::k2::{
    build_xi_l, formula_table, lemma_f0_check, o_k, prop_sa_check, weil_product, IdentityCheck, LemmaF1,
    RationalFunction,
};
use tate_regulator::padic::{torsion_of_k1, FieldSpec, PAdicElement};
use tate_regulator::tate::TateCurve;

use crate::report::{padic, real, Check, Report, ScenarioEcho, Summary, SCHEMA_VERSION};
use crate::scenario::{Kind, Overrides, Params, Scenario};

type Outcome = Result<Vec<Check>, Box<dyn std::error::Error>>;

struct Ctx<'a> {
    scenario: &'a Scenario,
    params: Params<'a>,
    overrides: Overrides,
}

impl Ctx<'_> {
    fn field(&self) -> Result<FieldSpec, Box<dyn std::error::Error>> {
        Ok(self.scenario.field_spec(&self.overrides)?)
    }
}

/// Runs one scenario; failures inside a check never abort the report.
pub fn run_scenario(scenario: &Scenario, file: Option<&Path>, overrides: Overrides) -> Report {
    let start = Instant::now();
    let ctx = Ctx { scenario, params: Params::new(&scenario.parameters, overrides), overrides };
    let outcome = match scenario.kind {
        Kind::ThetaIdentities => theta_identities(&ctx),
        Kind::Weierstrass => weierstrass(&ctx),
        Kind::PropSa => prop_sa(&ctx),
        Kind::LemmaF0 => lemma_f0(&ctx),
        Kind::LemmaF1 => lemma_f1(&ctx),
        Kind::FormulaTable => formula_table_kind(&ctx),
        Kind::OK => o_k_kind(&ctx),
        Kind::WeilReciprocity => weil_reciprocity(&ctx),
        Kind::Bloch2cor => bloch2cor(&ctx),
        Kind::FiveTermSweep => five_term_sweep(&ctx),
        Kind::DistributionSweep => distribution_sweep(&ctx),
        Kind::GaloisBeta => galois_beta(&ctx),
        Kind::HilbertTorsion => hilbert_torsion(&ctx),
    };
    let checks = outcome.unwrap_or_else(|e| vec![Check::failed("error", e.to_string())]);
    Report {
        version: SCHEMA_VERSION,
        scenario: echo(scenario, file, overrides),
        summary: Summary::of(&checks),
        checks,
        duration_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

/// The scenario as it appears in a report.
pub fn echo(scenario: &Scenario, file: Option<&Path>, overrides: Overrides) -> ScenarioEcho {
    let field = if uses_field(scenario.kind) { scenario.field_spec(&overrides).ok().map(|f| f.to_string()) } else { None };
    ScenarioEcho {
        file: file.map(|p| p.file_name().unwrap_or(p.as_os_str()).to_string_lossy().into_owned()),
        kind: scenario.kind.to_string(),
        name: scenario.name.clone(),
        field,
        parameters: serde_json::to_value(&scenario.parameters).unwrap_or_default(),
    }
}

fn uses_field(kind: Kind) -> bool {
    !matches!(kind, Kind::Bloch2cor | Kind::FiveTermSweep | Kind::DistributionSweep | Kind::GaloisBeta)
}

fn int(k: &FieldSpec, n: i64) -> PAdicElement {
    PAdicElement::from_int(k, n)
}

fn curve(q: &PAdicElement) -> Result<TateCurve, Box<dyn std::error::Error>> {
    Ok(TateCurve::new(q)?)
}

fn teichmuller(k: &FieldSpec, n: i64) -> Result<PAdicElement, Box<dyn std::error::Error>> {
    Ok(int(k, n).teichmuller()?)
}

fn identity_check(name: &str, c: &IdentityCheck, threshold: i64) -> Check {
    Check::new(name, c.matches)
        .lhs(padic(&c.lhs))
        .rhs(padic(&c.rhs))
        .precision(format!("mod p^{}-th powers", c.nu))
        .margin(format!("principal ord {} (threshold {threshold})", c.margin))
}

fn threshold(k: &FieldSpec, nu: u32) -> i64 {
    1 + nu as i64 * k.e() as i64
}

fn theta_identities(ctx: &Ctx) -> Outcome {
    let k = ctx.field()?;
    let n = k.precision() as i64;
    let c = curve(&int(&k, ctx.params.int("q", 125)?))?;
    let w = ctx.params.int("window", 20)?;
    let theta = c.theta_series(w + 1, c.k_max_for(0))?;
    let shifted = c.theta_shifted_series(c.q(), w + 1, c.k_max_for(c.period()))?;
    let residual = shifted.add(&theta.shift(-1)).clip(-w, w);
    let fe = Check::new("theta(qu) + theta(u)/u = 0", residual.vanishes_on(-w, w, n))
        .lhs(format!("residual on [{}, {w}]: min abs precision {}", -w, residual.precision_on(-w, w)))
        .rhs("0")
        .precision(format!("O(π^{n})"));
    let reflection = (-(w - 1)..w).all(|m| {
        let d = &theta.coeff(-m) + &theta.coeff(m + 1);
        d.is_zero() && d.abs_precision() >= n
    });
    let refl = Check::new("theta(1/u) = -theta(u)/u", reflection).precision(format!("O(π^{n})"));
    Ok(vec![fe, refl])
}

fn weierstrass(ctx: &Ctx) -> Outcome {
    let k = ctx.field()?;
    let n = k.precision() as i64;
    let c = curve(&int(&k, ctx.params.int("q", 125)?))?;
    let w = ctx.params.int("window", 20)?;
    let r = c.weierstrass_residual(w);
    Ok(vec![Check::new("Y^2 + XY - X^3 - a4 X - a6 = 0", r.vanishes_on(-w, w, n))
        .lhs(format!("residual on [{}, {w}]: min abs precision {}", -w, r.precision_on(-w, w)))
        .rhs("0")
        .precision(format!("O(π^{n})"))])
}

fn xi_setup(ctx: &Ctx) -> Result<(FieldSpec, TateCurve, PAdicElement, i64, i64, i64, u32), Box<dyn std::error::Error>> {
    let k = ctx.field()?;
    let pi0 = int(&k, ctx.params.int("pi0", k.p() as i64)?);
    let (a, b, r) = (ctx.params.int("a", 1)?, ctx.params.int("b", 2)?, ctx.params.int("r", 3)?);
    let c = curve(&pi0.pow(r)?)?;
    Ok((k, c, pi0, a, b, r, ctx.params.nu()?))
}

fn prop_sa(ctx: &Ctx) -> Outcome {
    let (k, c, pi0, a, b, r, nu) = xi_setup(ctx)?;
    let check = prop_sa_check(&c, &pi0, a, b, r, nu)?;
    let expected = ctx.params.int("expected_ord", a * (b - a) * (b - r))?;
    let ord = check.lhs.ord()?;
    let stable = o_k(&build_xi_l(&c, &pi0, a, b, r)?, nu);
    Ok(vec![
        identity_check("tau_infty(xi_L) = closed form", &check, threshold(&k, nu)),
        Check::new("ord(lhs) = a(b-a)(b-r)", ord == expected).lhs(ord.to_string()).rhs(expected.to_string()),
        match stable {
            Ok(v) => Check::new("o_K stable in nu", v == ord).lhs(v.to_string()).rhs(ord.to_string()),
            Err(e) => Check::failed("o_K stable in nu", e.to_string()),
        },
    ])
}

fn o_k_kind(ctx: &Ctx) -> Outcome {
    let (_, c, pi0, a, b, r, nu) = xi_setup(ctx)?;
    let expected = ctx.params.int("expected", a * (b - a) * (b - r))?;
    let v = o_k(&build_xi_l(&c, &pi0, a, b, r)?, nu)?;
    Ok(vec![Check::new("o_K(xi_L)", v == expected)
        .lhs(v.to_string())
        .rhs(expected.to_string())
        .precision(format!("nu = {nu} and {}", nu + 1))])
}

fn lemma_f0(ctx: &Ctx) -> Outcome {
    let k = ctx.field()?;
    let nu = ctx.params.nu()?;
    let c = curve(&int(&k, ctx.params.int("q", 125)?))?;
    let z1 = teichmuller(&k, ctx.params.int("zeta1", 2)?)?;
    let z2 = teichmuller(&k, ctx.params.int("zeta2", -1)?)?;
    let (m1, m2) = (ctx.params.int("m1", 4)?, ctx.params.int("m2", 2)?);
    let check = lemma_f0_check(&c, &z1, m1, &z2, m2, nu)?;
    Ok(vec![identity_check("tau_infty = (S(z1^-1 z2)/(S(z1^-1)S(z2)))^(m1 m2)", &check, threshold(&k, nu))])
}

fn lemma_f1(ctx: &Ctx) -> Outcome {
    let k = ctx.field()?;
    let nu = ctx.params.nu()?;
    let q0 = int(&k, ctx.params.int("q0", 5)?);
    let a = ctx.params.int("a", 2)?;
    let params = LemmaF1 {
        zeta: teichmuller(&k, ctx.params.int("zeta", 2)?)?,
        m: ctx.params.int("m", 4)?,
        q0: q0.clone(),
        a,
        b: ctx.params.int("b", 1)?,
    };
    let c = curve(&q0.pow(a)?)?;
    let rep = params.check(&c, nu)?;
    let t = threshold(&k, nu);
    Ok(vec![
        identity_check("tau_infty = first closed form", &rep.first, t),
        identity_check("first closed form = second closed form", &rep.second, t),
        identity_check("tau_infty * S(zeta)^(ma) = unit product", &rep.unit_product, t),
    ])
}

fn formula_table_kind(ctx: &Ctx) -> Outcome {
    let k = ctx.field()?;
    let nu = ctx.params.nu()?;
    let pi0 = int(&k, ctx.params.int("pi0", k.p() as i64)?);
    let r = ctx.params.int("r", 3)?;
    let constants: Vec<_> = ctx.params.ints("constants", &[2, 3, 5])?.into_iter().map(|c| int(&k, c)).collect();
    let c = curve(&pi0.pow(r)?)?;
    let t = threshold(&k, nu);
    Ok(formula_table(&c, &pi0, r, &constants, nu)?.iter().map(|e| identity_check(&e.label, &e.check, t)).collect())
}

fn random_rational(k: &FieldSpec, rng: &mut ChaCha8Rng) -> Result<RationalFunction<PAdicElement>, Box<dyn std::error::Error>> {
    let five = int(k, k.p() as i64);
    let mut roots = Vec::new();
    for _ in 0..rng.gen_range(1..5) {
        let r = &int(k, rng.gen_range(1..2000)) * &five.pow(rng.gen_range(-2..3))?;
        roots.push((r, rng.gen_range(-3..4)));
    }
    let c = &int(k, rng.gen_range(1..500)) * &five.pow(rng.gen_range(-2..3))?;
    Ok(RationalFunction::new(c, rng.gen_range(-3..4), roots))
}

fn weil_reciprocity(ctx: &Ctx) -> Outcome {
    let k = ctx.field()?;
    let count = ctx.params.int("count", 100)?;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.params.int("seed", 1)? as u64);
    let one = PAdicElement::one(&k);
    let mut failures = Vec::new();
    for i in 0..count {
        let f = random_rational(&k, &mut rng)?;
        let g = random_rational(&k, &mut rng)?;
        let prod = weil_product(&f, &g)?;
        if !prod.approx_eq(&one) {
            failures.push(format!("pair {i}: {prod}"));
        }
    }
    Ok(vec![Check::new(format!("prod of tame symbols = 1 over {count} pairs"), failures.is_empty())
        .lhs(format!("{} of {count} pairs failed", failures.len()))
        .rhs("1")
        .precision(format!("O(π^{})", k.precision()))
        .detail(failures.join("; "))])
}

fn root(ctx: &Ctx, key: &str, default: [i64; 2]) -> Result<CyclotomicNumber, Box<dyn std::error::Error>> {
    let v = ctx.params.ints(key, &default)?;
    if v.len() != 2 || v[0] < 1 {
        return Err(format!("`{key}` must be [order, exponent]").into());
    }
    Ok(CyclotomicNumber::root_of_unity(v[0] as u64, v[1])?)
}

fn bloch2cor(ctx: &Ctx) -> Outcome {
    let z1 = root(ctx, "zeta1", [4, 1])?;
    let z2 = root(ctx, "zeta2", [4, 2])?;
    let (m1, m2) = (ctx.params.int("m1", 4)?, ctx.params.int("m2", 2)?);
    let tol = ctx.params.float("tolerance", 1e-7)?;
    let path_tol = ctx.params.float("path_tolerance", 2e-9)?;
    let margin = ctx.params.float("margin", 1e-3)?;
    let quad_tol = ctx.params.float("quadrature_tolerance", 1e-12)?;
    let sym = eta0(&z1, m1, &z2, m2)?;
    let mut checks = Vec::new();
    let membership = sym.membership()?;
    checks.push(Check::new("tame symbols away from the node are torsion", membership.trivial).detail(
        membership.values.iter().map(|(x, v)| format!("{x}: {v}")).collect::<Vec<_>>().join("; "),
    ));
    let db = delta_bar(&sym)?;
    let closed = eta0_closed_form(&z1, m1, &z2, m2)?;
    let minus = closed.scale(&BigRational::from_integer((-1).into()));
    let sign = if db == closed { Some(1) } else if db == minus { Some(-1) } else { None };
    checks.push(
        Check::new("delta_bar(eta_0) = ± m1 m2([z1/z2] - [z1] - [1/z2])", sign.is_some())
            .lhs(db.to_string())
            .rhs(closed.to_string())
            .detail(format!("sign {}", sign.map_or("none".into(), |s| s.to_string()))),
    );
    for k in db.field().embeddings() {
        let borel = db.borel_value(k);
        let angles = sym.admissible_angles(k, 2);
        let values = angles
            .iter()
            .map(|&a| contour_regulator(&sym, k, a, margin, quad_tol))
            .collect::<Result<Vec<_>, _>>()?;
        let v = values[0];
        let (plus, minus) = ((v.value - borel).abs(), (v.value + borel).abs());
        let sign = if plus <= minus { "+" } else { "-" };
        checks.push(
            Check::new(format!("contour = ± D2(delta_bar) at sigma_{k}"), plus.min(minus) < tol)
                .lhs(real(v.value, v.error_estimate))
                .rhs(format!("{sign}{borel:.15e}"))
                .tolerance(tol)
                .margin(format!("{:.3e}", plus.min(minus)))
                .detail(format!("ray angle {:.6}, sign {sign}", v.angle)),
        );
        if let Some(w) = values.get(1) {
            let diff = (v.value - w.value).abs();
            checks.push(
                Check::new(format!("path independence at sigma_{k}"), diff < path_tol)
                    .lhs(real(v.value, v.error_estimate))
                    .rhs(real(w.value, w.error_estimate))
                    .tolerance(path_tol)
                    .margin(format!("{diff:.3e}"))
                    .detail(format!("angles {:.6}, {:.6}", v.angle, w.angle)),
            );
        }
    }
    Ok(checks)
}

/// `Σ cⱼ ζ_n^{eⱼ}` with one to three small random terms.
fn random_cyclotomic(rng: &mut ChaCha8Rng, n: u64) -> Result<CyclotomicNumber, Box<dyn std::error::Error>> {
    let f = CyclotomicField::get(n)?;
    let step = (f.conductor() / n) as i64;
    let terms: Vec<_> = (0..rng.gen_range(1..4))
        .map(|_| (rng.gen_range(0..n as i64) * step, BigRational::from_integer(rng.gen_range(-3i64..4).into())))
        .collect();
    Ok(CyclotomicNumber::from_exponents(&f, &terms))
}

fn admissible(x: &CyclotomicNumber, distance: f64) -> bool {
    !x.is_zero()
        && x.field().embeddings().iter().all(|&k| {
            let z = x.embed(k);
            z.norm() >= distance && (z - 1.0).norm() >= distance
        })
}

fn five_term_sweep(ctx: &Ctx) -> Outcome {
    let count = ctx.params.int("count", 50)? as usize;
    let max_n = ctx.params.int("max_conductor", 24)? as u64;
    let tol = ctx.params.float("tolerance", 1e-10)?;
    let distance = ctx.params.float("distance", 1e-3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.params.int("seed", 7)? as u64);
    let (mut worst, mut tested, mut failures) = (0.0f64, 0, Vec::new());
    while tested < count {
        let n = rng.gen_range(3..=max_n);
        let x = random_cyclotomic(&mut rng, n)?;
        let y = random_cyclotomic(&mut rng, n)?;
        if !admissible(&x, distance) || !admissible(&y, distance) || x == y {
            continue;
        }
        let e = five_term(&x, &y)?;
        let r = e.regulator().max_abs();
        worst = worst.max(r);
        if r >= tol {
            failures.push(format!("x = {x}, y = {y}: {r:.3e}"));
        }
        tested += 1;
    }
    Ok(vec![Check::new(format!("D2 of five-term relation vanishes ({count} pairs, n <= {max_n})"), failures.is_empty())
        .lhs(format!("max residual {worst:.3e}"))
        .rhs("0")
        .tolerance(tol)
        .detail(failures.join("; "))])
}

fn distribution_sweep(ctx: &Ctx) -> Outcome {
    let ms = ctx.params.ints("m", &[2, 3, 4])?;
    let per_m = ctx.params.int("count", 5)? as usize;
    let max_n = ctx.params.int("max_conductor", 12)? as u64;
    let tol = ctx.params.float("tolerance", 1e-10)?;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.params.int("seed", 11)? as u64);
    let mut checks = Vec::new();
    for m in ms {
        let m = u64::try_from(m).map_err(|_| "m must be positive")?;
        let (mut worst, mut tested, mut attempts) = (0.0f64, 0, 0);
        while tested < per_m && attempts < 100 * per_m {
            attempts += 1;
            let n = rng.gen_range(3..=max_n);
            let x = random_cyclotomic(&mut rng, n)?;
            if x.is_zero() {
                continue;
            }
            let Ok(e) = distribution_relation(&x, m) else { continue };
            worst = worst.max(e.regulator().max_abs());
            tested += 1;
        }
        checks.push(
            Check::new(format!("m sum [zeta_m^i x] - [x^m] regulates to 0 (m = {m})"), tested == per_m && worst < tol)
                .lhs(format!("max residual {worst:.3e} over {tested} arguments"))
                .rhs("0")
                .tolerance(tol),
        );
    }
    Ok(checks)
}

fn galois_beta(ctx: &Ctx) -> Outcome {
    let (l, m) = (ctx.params.int("l", 3)?, ctx.params.int("m", 4)?);
    let tol = ctx.params.float("tolerance", 1e-10)?;
    let rep = galois_beta_check(u64::try_from(l)?, u64::try_from(m)?)?;
    let mut checks = Vec::new();
    for id in &rep.sigma {
        checks.push(
            Check::new(format!("{} (k = {})", id.name, id.k), id.exact && id.residual < tol)
                .lhs(format!("exact: {}", id.exact))
                .margin(format!("{:.3e}", id.residual))
                .tolerance(tol),
        );
    }
    let action = rep.tau_action();
    checks.push(
        Check::new("tau restriction to Q(zeta_l) determined", action.is_some()).detail(
            rep.tau.iter().map(|c| format!("class {}: {}", c.class, if c.holds { "holds" } else { "fails" })).collect::<Vec<_>>().join("; "),
        ),
    );
    for cand in rep.tau.iter().filter(|c| Some(c.class) == action) {
        for id in &cand.identities {
            checks.push(
                Check::new(format!("{} (k = {}, zeta_l -> zeta_l^{})", id.name, id.k, cand.class), id.exact && id.residual < tol)
                    .lhs(format!("exact: {}", id.exact))
                    .margin(format!("{:.3e}", id.residual))
                    .tolerance(tol),
            );
        }
    }
    Ok(checks)
}

fn hilbert_torsion(ctx: &Ctx) -> Outcome {
    let k = ctx.field()?;
    let q = int(&k, ctx.params.int("q", 5)?);
    let shape = torsion_of_k1(&k, &q)?;
    let orders: Vec<i64> = shape.orders.iter().map(|&o| o as i64).collect();
    let check = match ctx.scenario.parameters.get("expected") {
        Some(_) => {
            let expected = ctx.params.ints("expected", &[])?;
            Check::new("torsion shape", orders == expected).rhs(format!("{expected:?}"))
        }
        None => Check::new("torsion shape", true),
    };
    Ok(vec![check.lhs(format!("{orders:?}")).detail(
        shape.symbols.iter().map(|(g, s)| format!("(q, {g}) = {s}")).collect::<Vec<_>>().join("; "),
    )])
}
