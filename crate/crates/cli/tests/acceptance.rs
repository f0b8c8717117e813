//! One PASS/FAIL line per acceptance criterion. All comparisons are exact;
//! the only tolerances are the wall-clock limits below.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use mta_core::heisenberg::{phil_rank_certificate, strong_identity, verify_strong_identity};
use mta_core::lattice::EvenLattice;
use mta_core::linalg::add_scaled;
use mta_core::partitions::{enumerate_labeled_partitions, LabeledPartition};
use mta_core::peirce::{
    heisenberg_truncation, morita_context, scalar_algebra, zigzag, FdAlgebra, MatrixModel, ModuleRep, PeirceAlgebra,
    Side,
};
use mta_core::rational::{frac, q, Rational};
use mta_core::zhu::{exceptional_degrees, heisenberg_block_sizes};

const IDENTITY_LIMIT: Duration = Duration::from_secs(60);
const LATTICE_LIMIT: Duration = Duration::from_secs(5);

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn mta(args: &[&str]) -> serde_json::Value {
    let out = Command::new(env!("CARGO_BIN_EXE_mta"))
        .args(args)
        .output()
        .expect("run mta");
    assert!(
        out.status.success(),
        "mta {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json output")
}

/// `∏ ℓ^{m_ℓ} m_ℓ!` from the raw parts.
fn norm(sigma: &LabeledPartition) -> Rational {
    let mut total = q(1);
    for slot in sigma.slots() {
        let mut mult: BTreeMap<u32, i64> = BTreeMap::new();
        for &l in slot.parts() {
            *mult.entry(l).or_default() += 1;
        }
        for (l, m) in mult {
            for k in 1..=m {
                total *= q(i64::from(l)) * q(k);
            }
        }
    }
    total
}

fn c1_strong_identity() -> Outcome {
    let mut slowest = Duration::ZERO;
    let cases = (0..=6).map(|d| (1, d)).chain((0..=4).map(|d| (2, d)));
    for (n, d) in cases {
        let start = Instant::now();
        let r = verify_strong_identity(n, d).map_err(|e| e.to_string())?;
        let took = start.elapsed();
        slowest = slowest.max(took);
        ensure(took < IDENTITY_LIMIT, format!("n={n} d={d} took {took:?}"))?;
        for (a, row) in r.matrix.iter().enumerate() {
            for (b, entry) in row.iter().enumerate() {
                let ok = if a == b {
                    entry.is_constant() && entry.constant_term() == norm(&r.basis[a])
                } else {
                    entry.is_zero()
                };
                ensure(ok, format!("n={n} d={d} entry ({a},{b}) = {entry}"))?;
            }
        }
    }
    Ok(format!(
        "pairing matrices diagonal with closed-form norms; slowest {slowest:.2?}"
    ))
}

fn block_sizes(rank: &str, degree: &str) -> Vec<u64> {
    let v = mta(&[
        "zhu",
        "heisenberg",
        "--rank",
        rank,
        "--degree",
        degree,
        "--format",
        "json",
    ]);
    v["blocks"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|b| {
            b["factors"]
                .as_array()
                .unwrap()
                .iter()
                .map(|f| f["size"].as_u64().unwrap())
        })
        .collect()
}

fn c2_heisenberg_blocks() -> Outcome {
    let cases: [(usize, u32, &[u64]); 2] = [(1, 5, &[1, 1, 2, 3, 5, 7]), (2, 3, &[1, 2, 5, 10])];
    for (n, d, expected) in cases {
        let got = block_sizes(&n.to_string(), &d.to_string());
        ensure(got == expected, format!("n={n} d={d}: {got:?}"))?;
        for j in 0..=d {
            let c = phil_rank_certificate(n, j).map_err(|e| e.to_string())?;
            ensure(
                c.nondegenerate && c.dimension as u64 == expected[j as usize],
                format!("certificate n={n} j={j}: {c:?}"),
            )?;
        }
    }
    Ok("[1,1,2,3,5,7] and [1,2,5,10], certified by the pairing".into())
}

fn c3_lattice_z8() -> Outcome {
    let start = Instant::now();
    let lat = EvenLattice::new(vec![vec![8]]).map_err(|e| e.to_string())?;
    let cosets = lat.dual_cosets().map_err(|e| e.to_string())?;
    let expected = [
        q(0),
        frac(1, 16),
        frac(1, 4),
        frac(9, 16),
        q(1),
        frac(9, 16),
        frac(1, 4),
        frac(1, 16),
    ];
    ensure(cosets.len() == 8, "eight cosets")?;
    for (c, h) in cosets.iter().zip(&expected) {
        let w = lat.conformal_weight(&c.lambda).map_err(|e| e.to_string())?;
        ensure(&w == h, format!("coset {} weight {w}", c.index))?;
        let d0 = lat.graded_dims(&c.lambda, 0).map_err(|e| e.to_string())?[0];
        let want = if c.index == 4 { 2 } else { 1 };
        ensure(d0 == want, format!("coset {} has D_0 = {d0}", c.index))?;
    }
    let vacuum = lat.graded_dims(&cosets[0].lambda, 1).map_err(|e| e.to_string())?;
    ensure(vacuum[1] == 1, format!("dim (V_L)_1 = {}", vacuum[1]))?;
    let took = start.elapsed();
    ensure(took < LATTICE_LIMIT, format!("took {took:?}"))?;
    let dims = mta(&[
        "lattice",
        "dims",
        "--gram",
        concat!(env!("CARGO_MANIFEST_DIR"), "/data/z8.gram"),
        "--coset",
        "4",
        "--max",
        "0",
    ]);
    ensure(dims["dims"] == serde_json::json!([2]), format!("cli: {dims}"))?;
    Ok(format!(
        "weights 0,1/16,1/4,9/16,1,9/16,1/4,1/16; D^4_0 = 2; dim (V_L)_1 = 1 in {took:.2?}"
    ))
}

/// Block lists with at most three blocks and every graded dimension at most 3.
fn matrix_fixtures() -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let vectors: Vec<Vec<usize>> = (1..=3).flat_map(|a| (0..=3).map(move |b| vec![a, b])).collect();
    for v in &vectors {
        out.push(vec![v.clone()]);
        for w in &vectors {
            if v <= w {
                out.push(vec![v.clone(), w.clone()]);
            }
        }
    }
    out.extend([
        vec![vec![1], vec![2], vec![3]],
        vec![vec![1, 1], vec![1, 0], vec![2, 1]],
        vec![vec![2, 1], vec![1, 2], vec![3, 0]],
        vec![vec![1, 2, 1], vec![2, 0, 3]],
        vec![vec![1, 1, 1], vec![1, 2, 0], vec![1, 0, 2]],
        vec![vec![3, 3, 3]],
        vec![vec![2, 1, 3], vec![1, 3, 2], vec![1, 1, 1]],
    ]);
    out
}

fn mutations(p: &PeirceAlgebra) -> Vec<PeirceAlgebra> {
    let top = p.max_degree();
    let mut out = Vec::new();
    for i in 0..=top {
        for j in 0..=top {
            for k in 0..=top {
                let first = p
                    .product(i, j, k)
                    .nonzero_entries()
                    .next()
                    .map(|(a, b, c, v)| (a, b, c, v.clone()));
                if let Some((a, b, c, v)) = first {
                    let mut m = p.clone();
                    m.set_structure_constant((i, j, k), (a, b, c), v * q(2)).unwrap();
                    out.push(m);
                }
            }
        }
    }
    out
}

fn c4_peirce_morita() -> Outcome {
    let (mut validated, mut roundtrips, mut mutants) = (0, 0, 0);
    for sizes in matrix_fixtures() {
        let m = MatrixModel::new(&sizes).map_err(|e| e.to_string())?;
        let p = m.algebra();
        let r = p.validate();
        ensure(r.passed, format!("{sizes:?} fails {:?}", r.first_failure))?;
        validated += 1;
        for d in 0..=p.max_degree() {
            let ctx = morita_context(p, d).map_err(|e| format!("{sizes:?} d={d}: {e}"))?;
            let corner = FdAlgebra {
                unit: Some(ctx.strong_identity.clone()),
                ..p.corner(d)
            };
            let mut modules = vec![ModuleRep::regular("regular", &corner, Side::Left)];
            modules.extend(m.support(d).into_iter().map(|b| m.column_module(b, d)));
            for w in modules {
                let rt = ctx.roundtrip(&w).map_err(|e| e.to_string())?;
                ensure(rt.passed, format!("{sizes:?} d={d} {}: {rt:?}", w.label))?;
                roundtrips += 1;
            }
        }
        for bad in mutations(p) {
            ensure(
                !bad.validate().passed,
                format!("{sizes:?}: a perturbed structure constant validated"),
            )?;
            mutants += 1;
        }
    }
    Ok(format!(
        "{validated} models validated, {roundtrips} round trips, {mutants} mutants rejected"
    ))
}

fn strong_identity_fixtures() -> Vec<(String, PeirceAlgebra)> {
    let mut out: Vec<(String, PeirceAlgebra)> = matrix_fixtures()
        .into_iter()
        .map(|s| (format!("{s:?}"), MatrixModel::new(&s).unwrap().into_algebra()))
        .collect();
    for c in [frac(1, 2), q(-3), frac(7, 5)] {
        out.push((
            format!("heisenberg(1, 3, {c})"),
            heisenberg_truncation(1, 3, &[c]).unwrap(),
        ));
    }
    out.push((
        "heisenberg(2, 2, (1, -1))".into(),
        heisenberg_truncation(2, 2, &[q(1), q(-1)]).unwrap(),
    ));
    out.push(("scalar(2)".into(), scalar_algebra(2)));
    out
}

fn c5_zigzag_laws() -> Outcome {
    let mut checked = 0;
    for (label, p) in strong_identity_fixtures() {
        for d in 0..=p.max_degree() {
            if !p.find_strong_identity(d).map_err(|e| e.to_string())?.found() {
                continue;
            }
            let laws = zigzag(&p, d).map_err(|e| e.to_string())?.laws();
            ensure(
                laws.well_defined && laws.associative,
                format!("{label} d={d}: composition"),
            )?;
            ensure(laws.star_homomorphism, format!("{label} d={d}: star"))?;
            ensure(
                laws.action_through_a.passed,
                format!("{label} d={d}: factoring identity"),
            )?;
            ensure(
                laws.zd_idempotent && laws.square_spans,
                format!("{label} d={d}: Z_d^2 = Z_d"),
            )?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (fixture, degree) pairs"))
}

fn c6_idempotent_split() -> Outcome {
    let mut checked = 0;
    for (label, p) in strong_identity_fixtures() {
        for d in 0..=p.max_degree() {
            let Ok(ctx) = morita_context(&p, d) else { continue };
            let s = &ctx.split;
            ensure(
                s.idempotent && s.central,
                format!("{label} d={d}: ε not a central idempotent"),
            )?;
            ensure(s.block_diagonal, format!("{label} d={d}: not block diagonal"))?;
            let eps2 = p.zhu_algebra().mul(&s.epsilon, &s.epsilon);
            ensure(eps2 == s.epsilon, format!("{label} d={d}: ε² ≠ ε"))?;
            let z = &ctx.zigzag;
            ensure(
                z.star_is_injective() && z.star_image().dim() == z.dim() && z.dim() == ctx.zd.dim(),
                format!("{label} d={d}: ⋆ not bijective onto Z_d"),
            )?;
            checked += 1;
        }
    }
    Ok(format!("{checked} unital Z_d split off with ⋆ bijective"))
}

fn c7_exceptional() -> Outcome {
    let fixtures: [(&[Vec<usize>], &[usize]); 3] = [
        (&[vec![1, 0, 2], vec![2, 0, 1]], &[1]),
        (&[vec![1, 0]], &[1]),
        (&[vec![2, 1, 0], vec![1, 2, 0]], &[2]),
    ];
    for (sizes, expected) in fixtures {
        let p = MatrixModel::new(sizes).map_err(|e| e.to_string())?.into_algebra();
        ensure(
            p.exceptional_degrees() == expected,
            format!("{sizes:?}: {:?}", p.exceptional_degrees()),
        )?;
        for &j in expected {
            let r = p.degree_report(j).map_err(|e| e.to_string())?;
            ensure(r.exceptional && r.zero_rings(), format!("{sizes:?} j={j}: {r:?}"))?;
        }
    }
    let s = scalar_algebra(3);
    for j in 1..=3 {
        ensure(
            s.degree_report(j).map_err(|e| e.to_string())?.zero_rings(),
            format!("scalar j={j}"),
        )?;
    }
    for n in 1..=4 {
        let sizes = heisenberg_block_sizes(n, 8).map_err(|e| e.to_string())?;
        let ex = exceptional_degrees(&sizes, 8).map_err(|e| e.to_string())?;
        ensure(ex.is_empty(), format!("Heisenberg rank {n}: {ex:?}"))?;
    }
    let h = heisenberg_truncation(1, 3, &[frac(1, 2)]).map_err(|e| e.to_string())?;
    ensure(
        h.exceptional_degrees().is_empty(),
        "Heisenberg truncation reports an exceptional degree",
    )?;
    Ok("zero components give zero rings; Heisenberg has none for d ≤ 8".into())
}

fn c8_cross_module() -> Outcome {
    for c in [frac(1, 2), q(-3), frac(7, 5)] {
        let p = heisenberg_truncation(1, 3, std::slice::from_ref(&c)).map_err(|e| e.to_string())?;
        let r = p.validate();
        ensure(r.passed, format!("c={c}: {:?}", r.first_failure))?;
        for d in 0..=3u32 {
            let found = p.find_strong_identity(d as usize).map_err(|e| e.to_string())?;
            let one = strong_identity(1, d);
            let basis = enumerate_labeled_partitions(1, d);
            let k = basis.len();
            let mut expected = vec![q(0); k * k];
            for term in &one.terms {
                let t = basis.iter().position(|s| *s == term.partition).unwrap();
                let mut e = vec![q(0); k * k];
                e[t * k + t] = q(1);
                add_scaled(&mut expected, &term.coeff, &e);
            }
            ensure(
                found.element.as_ref() == Some(&expected),
                format!("c={c} d={d}: {:?}", found.element),
            )?;
        }
    }
    Ok("three evaluation points validate; strong identities agree for d ≤ 3".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("C1 strong identity", c1_strong_identity),
        ("C2 Heisenberg block sizes", c2_heisenberg_blocks),
        ("C3 Z8 lattice example", c3_lattice_z8),
        ("C4 Peirce axioms and Morita", c4_peirce_morita),
        ("C5 zig-zag laws", c5_zigzag_laws),
        ("C6 idempotent splitting", c6_idempotent_split),
        ("C7 exceptional degrees", c7_exceptional),
        ("C8 cross-module consistency", c8_cross_module),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail} [{took:.2?}]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail} [{took:.2?}]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
