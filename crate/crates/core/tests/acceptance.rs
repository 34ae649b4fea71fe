//! End-to-end acceptance run. Each criterion prints one PASS/FAIL line; the
//! process exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use syzygy::afprw::{
    antisymmetrize, co_wahl, euler_finisher, euler_identity, folk_verify, gamma, gamma_prime, koszul_map,
    koszul_module_dim, multiplication, wahl, EquivariantMap, FolkOptions, KoszulModuleInstance,
};
use syzygy::field::random_primes;
use syzygy::graded::{
    ci_module, default_ci_quadrics, omega_module, polynomial_ring_module, pushforward_module, rnc_module,
    tangent_module, GradedModule, TangentMethod,
};
use syzygy::koszul::{betti_table, check_np, koszul_differential, koszul_group, BettiTable};
use syzygy::multilinear::{multiplication_map, wedge_power_map, Space};
use syzygy::{Field, PrimeField, Rationals};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: syzygy::Error) -> String {
    e.to_string()
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

fn twisted_cubic() -> Outcome {
    let m = rnc_module(&Rationals, 3, 2);
    let (k11, k21) = (koszul_group(&m, 1, 1).map_err(err)?, koszul_group(&m, 2, 1).map_err(err)?);
    ensure(k11 == 3 && k21 == 2, || format!("K11 = {k11}, K21 = {k21}"))?;
    Ok(format!("K11 = {k11}, K21 = {k21}"))
}

fn elliptic_quartic() -> Outcome {
    let m = ci_module(&Rationals, &default_ci_quadrics(), 3).map_err(err)?;
    let t = betti_table(&m, 4, 2).map_err(err)?;
    let n1 = check_np(&t, 1).map_err(err)?;
    let n2 = check_np(&t, 2).map_err(err)?;
    ensure(n1.holds && !n2.holds && n2.first_failure == Some((2, 2, 1)), || {
        format!("N1 {:?}, N2 {:?}", n1, n2)
    })?;
    Ok("N1 holds, N2 fails at b[2][2] = 1".into())
}

fn dimension_identity() -> Outcome {
    for g in 3..=8 {
        let m = tangent_module(&Rationals, g, 3, TangentMethod::Image).map_err(err)?;
        for q in 1..=3 {
            let expected = (q * (g - 1) + 1) * (q + 1) - (q * g - 1);
            ensure(m.dim(q) == expected, || format!("g = {g}, q = {q}: {} != {expected}", m.dim(q)))?;
        }
    }
    Ok("g in 3..8, q in 1..3".into())
}

fn folk() -> Outcome {
    let p = PrimeField::new(1_000_000_007).map_err(err)?;
    for g in 3..=10 {
        let opts = FolkOptions {
            np_check: g <= 7,
            ..Default::default()
        };
        let r = folk_verify(&p, g, opts).map_err(err)?;
        ensure(r.pass, || format!("prime field, g = {g}: {:?}", r.entries))?;
    }
    for g in 3..=7 {
        let opts = FolkOptions {
            np_check: true,
            ..Default::default()
        };
        let r = folk_verify(&Rationals, g, opts).map_err(err)?;
        let np = r.np.as_ref().map(|n| n.holds).unwrap_or(false);
        ensure(r.pass && np, || format!("rationals, g = {g}: {:?}", r.np))?;
    }
    Ok("vanishing for g in 3..10 mod p and 3..7 over Q; N_p for g in 3..7".into())
}

fn triple_agreement() -> Outcome {
    let mut seen = Vec::new();
    for g in 4..=7 {
        let m = tangent_module(&Rationals, g, 2, TangentMethod::Image).map_err(err)?;
        let mut row = Vec::new();
        for i in 1..=g / 2 {
            let direct = koszul_group(&m, i, 1).map_err(err)?;
            let kg = gamma(&Rationals, g, i).map_err(err)?.kernel_dim();
            let kgp = gamma_prime(&Rationals, g, i).map_err(err)?.kernel_dim();
            ensure(direct == kg && kg == kgp, || format!("g = {g}, i = {i}: {direct} {kg} {kgp}"))?;
            row.push(direct);
        }
        seen.push(format!("g{g}={row:?}"));
    }
    Ok(seen.join(" "))
}

fn pushforward_closed_form() -> Outcome {
    for g in 4..=7 {
        let m = pushforward_module(&Rationals, g, 2);
        for i in 1..=g - 2 {
            let direct = koszul_group(&m, i, 1).map_err(err)?;
            let formula = binom(g - 1, i + 1) * (2 * i + 1);
            ensure(direct == formula, || format!("g = {g}, i = {i}: {direct} != {formula}"))?;
        }
    }
    Ok("g in 4..7, 1 <= i <= g-2".into())
}

fn hermite() -> Outcome {
    let mut cases = 0;
    for b in 0..=12 {
        for a in 1..=b + 1 {
            let r = syzygy::multilinear::hermite_verify(a, b);
            ensure(r.passed(), || format!("a = {a}, b = {b}: {r:?}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} cases"))
}

fn vanishing_theorem() -> Outcome {
    for i in 1..=5 {
        let inst = KoszulModuleInstance::co_wahl_image(&Rationals, i).map_err(err)?;
        let n = i + 2;
        for q in n - 3..=n - 2 {
            let r = koszul_module_dim(&inst, q).map_err(err)?;
            ensure(r.dim == 0, || format!("i = {i}, q = {q}: W_q = {}", r.dim))?;
        }
    }
    let one = Rationals.one();
    let decomposable = KoszulModuleInstance::new(&Rationals, 4, vec![vec![(0, one)]]).map_err(err)?;
    let w0 = koszul_module_dim(&decomposable, 0).map_err(err)?.dim;
    ensure(w0 > 0, || "W_0 vanishes for a decomposable form".into())?;
    Ok(format!("co-Wahl images vanish for i in 1..5; decomposable instance has W_0 = {w0}"))
}

fn euler() -> Outcome {
    for n in 3..=12 {
        let v = euler_identity(n);
        ensure(v == 0, || format!("n = {n}: identity value {v}"))?;
    }
    for g in [5, 7] {
        let r = euler_finisher(&Rationals, g).map_err(err)?;
        let m = tangent_module(&Rationals, g, 2, TangentMethod::Image).map_err(err)?;
        let direct = koszul_group(&m, r.n - 2, 1).map_err(err)?;
        ensure(r.conclusion == Some(0) && direct == 0, || {
            format!("g = {g}: finisher {:?}, direct {direct}", r.conclusion)
        })?;
    }
    Ok("identity vanishes for n in 3..12; finisher agrees at g = 5, 7".into())
}

fn equivariance() -> Outcome {
    let f = &Rationals;
    let mut count = 0;
    let mut check = |m: EquivariantMap<Rationals>| -> Result<(), String> {
        count += 1;
        ensure(m.is_certified() && m.defect == 0, || format!("{} has defect {}", m.name, m.defect))
    };
    for i in 1..=5 {
        check(wahl(f, i).map_err(err)?)?;
        check(co_wahl(f, i).map_err(err)?.0)?;
    }
    for g in 3..=7 {
        for i in 1..=g - 2 {
            check(gamma(f, g, i).map_err(err)?)?;
            check(gamma_prime(f, g, i).map_err(err)?)?;
        }
    }
    // differentials of Koszul complexes on V = S^(n-1) U
    for n in 2..=4 {
        let v = Space::sym_u(n - 1);
        let cert = |name: &str, dom: Space, cod: Space, m| EquivariantMap::certified(name, dom, cod, m).map_err(err);
        check(cert(
            "antisymmetrize",
            Space::wedge(2, v.clone()),
            Space::tensor(v.clone(), v.clone()),
            antisymmetrize(f, n),
        )?)?;
        for q in 0..=2 {
            check(cert(
                "koszul",
                Space::tensor(Space::wedge(2, v.clone()), Space::sym(q, v.clone())),
                Space::tensor(v.clone(), Space::sym(q + 1, v.clone())),
                koszul_map(f, n, q),
            )?)?;
            check(cert(
                "multiplication",
                Space::tensor(v.clone(), Space::sym(q, v.clone())),
                Space::sym(q + 1, v.clone()),
                multiplication(f, n, q),
            )?)?;
        }
    }
    for a in 1..=4 {
        for k in 1..=3 {
            let m = wedge_power_map(f, &multiplication_map(f, a, 1), k);
            check(EquivariantMap::certified(
                "wedge of multiplication",
                Space::wedge(k, Space::tensor(Space::sym_u(a), Space::U)),
                Space::wedge(k, Space::sym_u(a + 1)),
                m,
            )
            .map_err(err)?)?;
        }
    }
    // differentials of the rational normal curve, with W = S^g U and M_q = S^(qg) U
    for g in 2..=4 {
        let m = rnc_module(f, g, 3);
        for p in 1..=3 {
            for q in 0..=1 {
                let d = koszul_differential(&m, p, q as isize).map_err(err)?;
                check(EquivariantMap::certified(
                    "rnc differential",
                    Space::tensor(Space::wedge(p, Space::sym_u(g)), Space::sym_u(q * g)),
                    Space::tensor(Space::wedge(p - 1, Space::sym_u(g)), Space::sym_u((q + 1) * g)),
                    d,
                )
                .map_err(err)?)?;
            }
        }
    }
    Ok(format!("{count} maps with zero defect"))
}

fn tables<F: Field>(f: &F) -> Result<Vec<BettiTable>, String> {
    let mut out = Vec::new();
    let mut push = |m: GradedModule<F>| -> Result<(), String> {
        let t = betti_table(&m, m.num_forms(), 2).map_err(err)?;
        out.push(t.without_timings());
        Ok(())
    };
    push(ci_module(f, &default_ci_quadrics(), 3).map_err(err)?)?;
    for g in 2..=6 {
        push(rnc_module(f, g, 3))?;
        push(polynomial_ring_module(f, g + 1, 3))?;
    }
    for g in 3..=6 {
        push(tangent_module(f, g, 3, TangentMethod::Image).map_err(err)?)?;
        push(pushforward_module(f, g, 3))?;
        push(omega_module(f, g, 3))?;
    }
    Ok(out)
}

fn consensus() -> Outcome {
    let reference = tables(&Rationals)?;
    let primes = random_primes(2, 2026);
    for &p in &primes {
        let field = PrimeField::new(p).map_err(err)?;
        let modular = tables(&field)?;
        for (a, b) in reference.iter().zip(&modular) {
            ensure(a.same_grid(b), || format!("{} g = {} differs mod {p}", a.object, a.genus))?;
        }
    }
    Ok(format!("{} tables agree with primes {primes:?}", reference.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("twisted cubic Betti numbers", twisted_cubic),
        ("elliptic quartic N_1 and N_2", elliptic_quartic),
        ("tangent developable Hilbert function", dimension_identity),
        ("folk vanishing and N_p", folk),
        ("direct, gamma and gamma' agree", triple_agreement),
        ("pushforward K_(i,1) closed form", pushforward_closed_form),
        ("Hermite reciprocity sweep", hermite),
        ("Koszul module vanishing", vanishing_theorem),
        ("odd genus identity and finisher", euler),
        ("sl2 equivariance", equivariance),
        ("characteristic consensus", consensus),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2}: PASS  {name} ({detail}) [{secs:.2}s]", n + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({detail}) [{secs:.2}s]", n + 1);
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

