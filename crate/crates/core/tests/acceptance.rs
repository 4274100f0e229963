//! Acceptance criteria 1-9, one line each. Exact arithmetic throughout.

use std::collections::BTreeMap;
use std::time::Instant;

use sugawara::brauer::{identity_suite, jm_campaign};
use sugawara::coeff::Rational;
use sugawara::report::{Report, Status};
use sugawara::ssv::{
    ev_centrality_check, phi_integral, psi_relation_check, verify_annihilation, verify_commutativity,
    verify_equivalence, verify_rep_identities, Context,
};
use sugawara::superspace::{qxq_check, rep_relations_check, Signature};
use sugawara::uea::{f_matrix, utensor_supertrace, Engine, Mode};

type Outcome = Result<String, String>;

const REP_GRID: [(usize, usize); 5] = [(1, 1), (2, 1), (3, 1), (0, 1), (3, 0)];
const MAIN_GRID: [(usize, usize, usize); 10] =
    [(1, 1, 2), (1, 1, 3), (1, 1, 4), (2, 1, 2), (3, 1, 2), (0, 1, 2), (0, 1, 3), (3, 0, 2), (3, 0, 3), (5, 0, 2)];

fn ctx(m: usize, n: usize) -> Context {
    Context::new(Signature::new(m, n).expect("signature")).expect("context")
}

fn failures(r: &Report) -> Vec<String> {
    r.failures().map(|c| format!("{}: {}", c.name, c.witness.clone().unwrap_or_default())).collect()
}

fn require(r: &Report, what: &str) -> Result<(), String> {
    let bad = failures(r);
    if bad.is_empty() {
        Ok(())
    } else {
        Err(format!("{what}: {}", bad.join("; ")))
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn criterion1() -> Outcome {
    let r = identity_suite(4).map_err(err)?;
    require(&r, "brauer suite")?;
    Ok(format!("{} identities in B_2..B_9", r.checks.len()))
}

fn criterion2() -> Outcome {
    let r = jm_campaign(4, 5).map_err(err)?;
    require(&r, "J membership")?;
    Ok(format!("{} certificates re-expanded, control excluded", r.count(Status::Pass)))
}

fn criterion3() -> Outcome {
    let mut checks = 0;
    for (m, n) in REP_GRID {
        let sig = Signature::new(m, n).map_err(err)?;
        let r = rep_relations_check(sig, 4).map_err(err)?;
        require(&r, &format!("relations ({m},{n})"))?;
        checks += r.checks.len();
        for legs in 1..=3 {
            let r = qxq_check(sig, legs, 8, 11).map_err(err)?;
            require(&r, &format!("qxq ({m},{n}) m={legs}"))?;
            checks += r.checks.len();
        }
        // str_a F[r]_a = 0 in the free enveloping algebra
        let c = ctx(m, n);
        let free = Engine::new(c.osp().clone(), Mode::Free);
        for r in -2..=2 {
            for a in 0..2 {
                let f = f_matrix(c.osp(), r, a, 2).map_err(err)?;
                let t = utensor_supertrace(&free, &f, &[a]).map_err(err)?;
                if !t.is_zero() {
                    return Err(format!("str F[{r}]_{a} != 0 for ({m},{n})"));
                }
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} exact checks on 5 signatures"))
}

#[derive(Default)]
struct GridResults {
    annihilation: BTreeMap<(usize, usize, usize), bool>,
    commutativity: BTreeMap<(usize, usize), bool>,
    equivalence: BTreeMap<(usize, usize, usize), bool>,
}

fn criterion4(grid: &mut GridResults) -> Outcome {
    let mut zero = Vec::new();
    let mut bad = Vec::new();
    for (m, n, k) in MAIN_GRID {
        let c = ctx(m, n);
        let r = verify_annihilation(&c, k, &[0, 1]).map_err(err)?;
        let ok = r.all_passed();
        grid.annihilation.insert((m, n, k), ok);
        if !ok {
            bad.push(format!("({m},{n},{k}) {}", failures(&r).join("; ")));
        }
        let control = r.checks.iter().find(|c| c.name.starts_with("negative control")).map(|c| c.status);
        match control {
            Some(Status::Pass) => {}
            Some(Status::Skipped) => zero.push(format!("({m},{n},{k})")),
            _ => bad.push(format!("({m},{n},{k}) negative control missing or failed")),
        }
    }
    if !bad.is_empty() {
        return Err(bad.join(" | "));
    }
    Ok(format!(
        "{} configurations annihilated at the critical level; control fails at K=0 for all nonzero phi; phi = 0 for {}",
        MAIN_GRID.len(),
        zero.join(" ")
    ))
}

fn criterion5(grid: &mut GridResults) -> Outcome {
    let mut bad = Vec::new();
    for (m, n) in [(1, 1), (0, 1), (3, 0)] {
        let r = verify_commutativity(&ctx(m, n), &[2, 3]).map_err(err)?;
        grid.commutativity.insert((m, n), r.all_passed());
        if !r.all_passed() {
            bad.push(format!("({m},{n}) {}", failures(&r).join("; ")));
        }
    }
    if bad.is_empty() {
        Ok("[phi_2, phi_3] = 0 for (1,1), (0,1), (3,0)".into())
    } else {
        Err(bad.join(" | "))
    }
}

fn criterion6(grid: &mut GridResults) -> Outcome {
    let mut singular = Vec::new();
    let mut agree = 0;
    let mut bad = Vec::new();
    for (m, n, k) in MAIN_GRID {
        let r = verify_equivalence(&ctx(m, n), k).map_err(err)?;
        grid.equivalence.insert((m, n, k), r.all_passed());
        if !r.all_passed() {
            bad.push(format!("({m},{n},{k}) {}", failures(&r).join("; ")));
        } else if r.count(Status::Skipped) > 0 {
            singular.push(format!("({m},{n},{k})"));
        } else {
            agree += 1;
        }
    }
    if !bad.is_empty() {
        return Err(bad.join(" | "));
    }
    Ok(format!("{agree} agree exactly; singular rational form detected at {}", singular.join(" ")))
}

fn criterion7() -> Outcome {
    let mut lines = Vec::new();
    for (m, n) in [(1, 1), (3, 0)] {
        let c = ctx(m, n);
        for (deg, samples) in [(2, 50), (3, 10)] {
            let r = verify_rep_identities(&c, deg, samples, 2024).map_err(err)?;
            require(&r, &format!("({m},{n}) m={deg}"))?;
            if r.count(Status::Skipped) > 0 {
                return Err(format!("({m},{n}) m={deg}: skipped identities"));
            }
            lines.push(format!("({m},{n}) m={deg}: {} x {samples}", r.checks.len() - 1));
        }
    }
    Ok(format!("all exact; {}", lines.join(", ")))
}

fn criterion8(grid: &GridResults) -> Outcome {
    let classical = |m: usize, n: usize| n == 0 || m == 0;
    let mut seen = 0;
    for (&(m, n, k), &ok) in grid.annihilation.iter().chain(grid.equivalence.iter()) {
        if classical(m, n) {
            seen += 1;
            if !ok {
                return Err(format!("({m},{n},{k}) failed"));
            }
        }
    }
    for (&(m, n), &ok) in &grid.commutativity {
        if classical(m, n) {
            seen += 1;
            if !ok {
                return Err(format!("commutativity ({m},{n}) failed"));
            }
        }
    }
    if seen == 0 {
        return Err("no classical configuration was run".into());
    }
    Ok(format!("{seen} orthogonal/symplectic results from criteria 4-6 pass"))
}

fn criterion9() -> Outcome {
    for (m, n) in [(3, 0), (5, 0)] {
        let r = psi_relation_check(&ctx(m, n), 2, 2).map_err(err)?;
        require(&r, &format!("psi ({m},{n})"))?;
        if r.count(Status::Skipped) > 0 {
            return Err(format!("psi ({m},{n}) skipped"));
        }
    }
    for (m, n) in [(1, 1), (0, 1)] {
        let c = ctx(m, n);
        if phi_integral(&c, 2).map_err(err)?.value.is_zero() {
            return Err(format!("phi_2 vanishes for ({m},{n})"));
        }
        for z in [1, 2] {
            let r = ev_centrality_check(&c, 2, &Rational::from_int(z)).map_err(err)?;
            require(&r, &format!("centrality ({m},{n}) z={z}"))?;
        }
    }
    Ok("psi_20 = binom(w,2) psi_22 etc. for (3,0), (5,0); ev_z(phi_2) central for z=1,2 on (1,1), (0,1)".into())
}

fn main() {
    let mut grid = GridResults::default();
    let mut all = true;
    let mut report = |k: usize, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let out = f();
        let secs = t.elapsed().as_secs_f64();
        match out {
            Ok(msg) => println!("criterion {k}: PASS ({secs:.1}s) {msg}"),
            Err(msg) => {
                all = false;
                println!("criterion {k}: FAIL ({secs:.1}s) {msg}");
            }
        }
    };
    report(1, &mut criterion1);
    report(2, &mut criterion2);
    report(3, &mut criterion3);
    report(4, &mut || criterion4(&mut grid));
    report(5, &mut || criterion5(&mut grid));
    report(6, &mut || criterion6(&mut grid));
    report(7, &mut criterion7);
    report(8, &mut || criterion8(&grid));
    report(9, &mut criterion9);
    if !all {
        std::process::exit(1);
    }
}
