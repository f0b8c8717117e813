use mta_core::heisenberg::{verify_strong_identity, Mode, UElement};
use mta_core::lattice::EvenLattice;
use mta_core::peirce::{heisenberg_truncation, matrix_model, morita_context, zigzag, FdAlgebra, ModuleRep, Side};
use mta_core::rational::{frac, q};
use mta_core::zhu::{exceptional_degrees, heisenberg_block_sizes};
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};
use serde::Serialize;

use crate::args::SelftestArgs;
use crate::report::{mark, CliResult, Report};

#[derive(Serialize)]
struct Check {
    name: String,
    passed: bool,
}

fn strong_identities() -> bool {
    [(1, 4), (2, 2)]
        .iter()
        .all(|&(n, d)| (0..=d).all(|j| verify_strong_identity(n, j).map(|r| r.passed).unwrap_or(false)))
}

fn z8_weights() -> bool {
    let Ok(lat) = EvenLattice::new(vec![vec![8]]) else {
        return false;
    };
    let expected = [
        frac(0, 1),
        frac(1, 16),
        frac(1, 4),
        frac(9, 16),
        q(1),
        frac(9, 16),
        frac(1, 4),
        frac(1, 16),
    ];
    let Ok(cosets) = lat.dual_cosets() else {
        return false;
    };
    cosets.len() == 8
        && cosets
            .iter()
            .zip(&expected)
            .all(|(c, h)| lat.conformal_weight(&c.lambda).ok().as_ref() == Some(h))
}

fn random_word(rng: &mut StdRng) -> Vec<Mode> {
    let len = rng.random_range(0..=5);
    (0..len)
        .map(|_| Mode::new(rng.random_range(1..=2), rng.random_range(-3..=3)))
        .collect()
}

fn associativity(rng: &mut StdRng) -> bool {
    let mut el = || UElement::from_modes(2, &random_word(rng));
    let (Ok(a), Ok(b), Ok(c)) = (el(), el(), el()) else {
        return false;
    };
    let left = a.multiply(&b).and_then(|ab| ab.multiply(&c));
    let right = b.multiply(&c).and_then(|bc| a.multiply(&bc));
    matches!((left, right), (Ok(l), Ok(r)) if l == r)
}

fn random_model(rng: &mut StdRng) -> Vec<Vec<usize>> {
    let blocks = rng.random_range(1..=3);
    let top = rng.random_range(0..=2);
    (0..blocks)
        .map(|_| (0..=top).map(|_| rng.random_range(1..=3)).collect())
        .collect()
}

fn model_checks(sizes: &[Vec<usize>]) -> bool {
    let Ok(p) = matrix_model(sizes) else {
        return false;
    };
    if !p.validate().passed {
        return false;
    }
    (0..=p.max_degree()).all(|d| {
        let laws_ok = zigzag(&p, d).map(|z| z.laws().passed()).unwrap_or(false);
        let morita_ok = morita_context(&p, d).and_then(|ctx| {
            let corner = FdAlgebra {
                unit: Some(ctx.strong_identity.clone()),
                ..p.corner(d)
            };
            ctx.roundtrip(&ModuleRep::regular("regular", &corner, Side::Left))
        });
        laws_ok && morita_ok.map(|r| r.passed).unwrap_or(false)
    })
}

fn heisenberg_fixture() -> bool {
    [frac(1, 2), q(-3), frac(7, 5)].iter().all(|c| {
        heisenberg_truncation(1, 3, std::slice::from_ref(c))
            .map(|p| {
                p.validate().passed && (0..=3).all(|d| p.find_strong_identity(d).map(|s| s.found()).unwrap_or(false))
            })
            .unwrap_or(false)
    })
}

pub fn run(args: &SelftestArgs) -> CliResult<Report> {
    let mut rng = StdRng::seed_from_u64(args.seed);
    let mut checks = vec![
        Check {
            name: "strong identity n=1 d<=4, n=2 d<=2".into(),
            passed: strong_identities(),
        },
        Check {
            name: "Z8 conformal weights".into(),
            passed: z8_weights(),
        },
        Check {
            name: "Heisenberg truncations".into(),
            passed: heisenberg_fixture(),
        },
        Check {
            name: "Heisenberg has no exceptional degrees up to 8".into(),
            passed: heisenberg_block_sizes(1, 8)
                .and_then(|s| exceptional_degrees(&s, 8))
                .map(|e| e.is_empty())
                .unwrap_or(false),
        },
    ];
    for i in 0..args.cases {
        checks.push(Check {
            name: format!("random associativity #{i}"),
            passed: associativity(&mut rng),
        });
        let sizes = random_model(&mut rng);
        checks.push(Check {
            name: format!("matrix model {sizes:?}"),
            passed: model_checks(&sizes),
        });
    }
    let passed = checks.iter().all(|c| c.passed);
    let text = checks
        .iter()
        .map(|c| format!("{} {}\n", mark(c.passed), c.name))
        .collect();
    Ok(Report::new(
        serde_json::json!({"seed": args.seed, "passed": passed, "checks": checks}),
        text,
        passed,
    )
    .text_default())
}
