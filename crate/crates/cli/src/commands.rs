use std::fmt::Write as _;

use mta_core::heisenberg::{phil_rank_certificate, strong_identity, verify_strong_identity};
use mta_core::lattice::EvenLattice;
use mta_core::partitions::{enumerate_labeled_partitions, labeled_partition_count};
use mta_core::peirce::{
    action_through_a_check, degenerate_pairing, heisenberg_truncation, matrix_model, morita_context, scalar_algebra,
    zigzag, FdAlgebra, ModuleRep, PeirceAlgebra, RoundtripReport, Side,
};
use mta_core::rational::{self, Rational};
use mta_core::zhu::{
    exceptional_degrees, heisenberg_block_sizes, heisenberg_zhu_descriptor, rational_zhu_descriptor, zd_support,
    SimpleModuleData,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{FixtureCmd, HeisenbergCmd, LatticeCmd, PartitionsCmd, PeirceCmd, RankDegree, ZhuCmd};
use crate::report::{mark, read_input, read_json, CliError, CliResult, Limits, Report};

fn big_count(n: impl ToString) -> Value {
    let s = n.to_string();
    match s.parse::<u64>() {
        Ok(x) => json!(x),
        Err(_) => json!(s),
    }
}

fn check_rank_degree(limits: Limits, a: RankDegree) -> CliResult<()> {
    limits.rank(a.rank)?;
    limits.degree("--degree", a.degree)
}

pub fn partitions(cmd: PartitionsCmd, limits: Limits) -> CliResult<Report> {
    match cmd {
        PartitionsCmd::Count(a) => {
            limits.rank(a.rank)?;
            let count = labeled_partition_count(a.rank, a.weight as usize);
            let text = format!("p^{}_{} = {}", a.rank, a.weight, count);
            Ok(Report::new(
                json!({"rank": a.rank, "weight": a.weight, "count": big_count(count)}),
                text,
                true,
            ))
        }
        PartitionsCmd::List(a) => {
            limits.rank(a.rank)?;
            limits.degree("--weight", a.weight)?;
            let list = enumerate_labeled_partitions(a.rank, a.weight);
            let text = list.iter().map(|s| format!("{s}\n")).collect();
            Ok(Report::new(&list, text, true))
        }
    }
}

#[derive(Serialize)]
struct VerifyOut {
    rank: usize,
    degree: u32,
    passed: bool,
    dimension: usize,
    basis: Vec<mta_core::partitions::LabeledPartition>,
    diagonal: Vec<Option<String>>,
    expected_diagonal: Vec<String>,
    mismatches: Vec<(usize, usize)>,
}

pub fn heisenberg(cmd: HeisenbergCmd, limits: Limits) -> CliResult<Report> {
    match cmd {
        HeisenbergCmd::Identity(a) => {
            check_rank_degree(limits, a)?;
            let one = strong_identity(a.rank, a.degree);
            let text = one
                .terms
                .iter()
                .map(|t| format!("{} {}\n", t.coeff, t.partition))
                .collect();
            Ok(Report::new(&one, text, true))
        }
        HeisenbergCmd::Verify(a) => {
            check_rank_degree(limits, a)?;
            let r = verify_strong_identity(a.rank, a.degree)?;
            let diagonal: Vec<Option<String>> = r.diagonal().iter().map(|x| x.as_ref().map(rational::format)).collect();
            let shown: Vec<String> = diagonal
                .iter()
                .map(|x| x.clone().unwrap_or_else(|| "?".into()))
                .collect();
            let mut text = format!(
                "{} rank {} degree {}: {} basis elements\n",
                mark(r.passed),
                a.rank,
                a.degree,
                r.basis.len()
            );
            let _ = writeln!(text, "diagonal: {}", shown.join(" "));
            for (i, j) in &r.mismatches {
                let _ = writeln!(text, "mismatch at ({i}, {j}): {}", r.matrix[*i][*j]);
            }
            let out = VerifyOut {
                rank: r.rank,
                degree: r.degree,
                passed: r.passed,
                dimension: r.basis.len(),
                basis: r.basis.clone(),
                diagonal,
                expected_diagonal: r.expected_diagonal.clone(),
                mismatches: r.mismatches.clone(),
            };
            Ok(Report::new(out, text, r.passed))
        }
        HeisenbergCmd::Zhu(a) => {
            check_rank_degree(limits, a)?;
            let certs = (0..=a.degree)
                .map(|j| phil_rank_certificate(a.rank, j))
                .collect::<mta_core::Result<Vec<_>>>()?;
            let sizes = heisenberg_block_sizes(a.rank, a.degree as usize)?;
            let descriptor = heisenberg_zhu_descriptor(a.rank, a.degree as usize)?;
            let certified: Vec<u64> = certs.iter().map(|c| c.dimension as u64).collect();
            let passed = certs.iter().all(|c| c.nondegenerate) && certified == sizes;
            let mut text = String::new();
            for c in &certs {
                let _ = writeln!(
                    text,
                    "{} level {}: p = {}, pairing nondegenerate",
                    mark(c.nondegenerate),
                    c.degree,
                    c.dimension
                );
            }
            let _ = writeln!(text, "{descriptor}");
            let out = json!({
                "rank": a.rank,
                "degree": a.degree,
                "passed": passed,
                "block_sizes": sizes,
                "certificates": certs,
                "descriptor": descriptor,
            });
            Ok(Report::new(out, text, passed))
        }
    }
}

fn load_lattice(path: &std::path::Path, limits: Limits) -> CliResult<EvenLattice> {
    let lat = EvenLattice::parse(&read_input("--gram", path)?).map_err(|e| CliError::Usage(format!("--gram: {e}")))?;
    limits.lattice_rank(lat.rank())?;
    Ok(lat)
}

#[derive(Serialize)]
struct DimsOut {
    coset: usize,
    #[serde(with = "rational::serde_str")]
    conformal_weight: Rational,
    dims: Vec<u64>,
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

pub fn lattice(cmd: LatticeCmd, limits: Limits) -> CliResult<Report> {
    match cmd {
        LatticeCmd::Cosets(g) => {
            let lat = load_lattice(&g.gram, limits)?;
            let cosets = lat.dual_cosets()?;
            let text = cosets
                .iter()
                .map(|c| {
                    format!(
                        "{}: residues [{}] lambda [{}]\n",
                        c.index,
                        join(&c.residues),
                        join(&c.lambda)
                    )
                })
                .collect();
            Ok(Report::new(&cosets, text, true))
        }
        LatticeCmd::Weights(g) => {
            let lat = load_lattice(&g.gram, limits)?;
            let mut rows = Vec::new();
            let mut text = String::new();
            for c in lat.dual_cosets()? {
                let h = lat.conformal_weight(&c.lambda)?;
                let _ = writeln!(text, "{}: {}", c.index, h);
                rows.push(json!({"coset": c.index, "conformal_weight": rational::format(&h)}));
            }
            Ok(Report::new(rows, text, true))
        }
        LatticeCmd::Dims { gram, coset, max } => {
            let lat = load_lattice(&gram.gram, limits)?;
            let table = lat.coset_table(max)?;
            let rows: Vec<DimsOut> = table
                .into_iter()
                .map(|s| DimsOut {
                    coset: s.coset,
                    conformal_weight: s.conformal_weight,
                    dims: s.dims,
                })
                .collect();
            let line = |r: &DimsOut| format!("coset {} (h = {}): {}\n", r.coset, r.conformal_weight, join(&r.dims));
            match coset {
                Some(k) => {
                    let row = rows.into_iter().nth(k).ok_or_else(|| {
                        CliError::Usage(format!(
                            "--coset {k} out of range: the lattice has {} cosets",
                            lat.determinant()
                        ))
                    })?;
                    let text = line(&row);
                    Ok(Report::new(row, text, true))
                }
                None => {
                    let text = rows.iter().map(line).collect();
                    Ok(Report::new(rows, text, true))
                }
            }
        }
    }
}

fn load_algebra(path: &std::path::Path) -> CliResult<PeirceAlgebra> {
    read_json("--algebra", path)
}

fn degree_in_range(p: &PeirceAlgebra, d: usize) -> CliResult<()> {
    if d > p.max_degree() {
        return Err(CliError::Usage(format!(
            "--degree {d} exceeds the algebra's max degree {}",
            p.max_degree()
        )));
    }
    Ok(())
}

fn roundtrip_line(label: &str, r: &RoundtripReport) -> String {
    format!(
        "{} {label}: {} -> {} -> {} (well defined {}, equivariant {}, bijective {})\n",
        mark(r.passed),
        r.input_dim,
        r.intermediate_dim,
        r.output_dim,
        r.well_defined,
        r.equivariant,
        r.bijective
    )
}

pub fn peirce(cmd: PeirceCmd, limits: Limits) -> CliResult<Report> {
    match cmd {
        PeirceCmd::Validate(a) => {
            let p = load_algebra(&a.algebra)?;
            let r = p.validate();
            let mut text = String::new();
            for c in &r.checks {
                let name = serde_json::to_value(c.axiom).expect("axiom");
                let _ = write!(text, "{} {}", mark(c.passed), name.as_str().unwrap_or_default());
                match &c.detail {
                    Some(d) => {
                        let _ = writeln!(text, ": {d}");
                    }
                    None => text.push('\n'),
                }
            }
            let passed = r.passed;
            Ok(Report::new(r, text, passed))
        }
        PeirceCmd::Zigzag { algebra, degree } => {
            let p = load_algebra(&algebra.algebra)?;
            degree_in_range(&p, degree)?;
            let report = p.degree_report(degree)?;
            let search = p.find_strong_identity(degree)?;
            let z = zigzag(&p, degree)?;
            let laws = z.laws();
            let action = action_through_a_check(&z);
            let split = p.zhu_algebra().ideal_unit_and_split(&z.star_image());
            let mut text = format!(
                "degree {degree}: corner {} zig-zag {} Z_d {}{}\n",
                report.corner_dim,
                report.zigzag_dim,
                report.zd_dim,
                if report.exceptional {
                    " (exceptional: zero rings)"
                } else {
                    ""
                }
            );
            let _ = writeln!(text, "{} strong identity found", mark(search.found()));
            for (name, ok) in [
                ("well defined", laws.well_defined),
                ("associative", laws.associative),
                ("star is a ring map", laws.star_homomorphism),
                ("star injective", laws.star_injective),
                ("square spans", laws.square_spans),
                ("Z_d idempotent", laws.zd_idempotent),
                ("action through A", action.passed),
            ] {
                let _ = writeln!(text, "{} {name}", mark(ok));
            }
            let split_json = match &split {
                Ok(s) => {
                    let _ = writeln!(text, "{} Z_d splits off a unital factor", mark(s.passed()));
                    serde_json::to_value(s).expect("split")
                }
                Err(e) => {
                    let _ = writeln!(text, "FAIL Z_d split: {e}");
                    json!({"error": e.to_string()})
                }
            };
            let passed = laws.passed() && action.passed;
            let out = json!({
                "degree": degree,
                "passed": passed,
                "report": report,
                "strong_identity": search,
                "laws": laws,
                "action": action,
                "split": split_json,
            });
            Ok(Report::new(out, text, passed))
        }
        PeirceCmd::Morita {
            algebra,
            degree,
            module,
            zd_module,
        } => {
            let p = load_algebra(&algebra.algebra)?;
            degree_in_range(&p, degree)?;
            let ctx = morita_context(&p, degree)?;
            let corner = FdAlgebra {
                unit: Some(ctx.strong_identity.clone()),
                ..p.corner(degree)
            };
            let mut reports: Vec<(String, RoundtripReport)> = vec![
                (
                    "regular".into(),
                    ctx.roundtrip(&ModuleRep::regular("regular", &corner, Side::Left))?,
                ),
                (
                    "regular Z_d".into(),
                    ctx.roundtrip_zd(&ModuleRep::regular("regular Z_d", &ctx.zd_algebra, Side::Left))?,
                ),
            ];
            if let Some(path) = module {
                let w: ModuleRep = read_json("--module", &path)?;
                reports.push((w.label.clone(), ctx.roundtrip(&w)?));
            }
            if let Some(path) = zd_module {
                let w0: ModuleRep = read_json("--zd-module", &path)?;
                reports.push((w0.label.clone(), ctx.roundtrip_zd(&w0)?));
            }
            let passed = reports.iter().all(|(_, r)| r.passed);
            let text = reports.iter().map(|(l, r)| roundtrip_line(l, r)).collect();
            let list: Vec<Value> = reports
                .iter()
                .map(|(l, r)| {
                    let mut v = serde_json::to_value(r).expect("report");
                    v["module"] = json!(l);
                    v
                })
                .collect();
            Ok(Report::new(
                json!({"degree": degree, "passed": passed, "roundtrips": list}),
                text,
                passed,
            ))
        }
        PeirceCmd::Fixture(f) => {
            let p = fixture(f, limits)?;
            let text = serde_json::to_string_pretty(&p).expect("json");
            Ok(Report::new(&p, text, true))
        }
    }
}

fn parse_list<T: std::str::FromStr>(flag: &str, s: &str) -> CliResult<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| {
            x.parse()
                .map_err(|_| CliError::Usage(format!("{flag}: cannot parse {x:?}")))
        })
        .collect()
}

fn fixture(cmd: FixtureCmd, limits: Limits) -> CliResult<PeirceAlgebra> {
    match cmd {
        FixtureCmd::Matrix { sizes } => {
            let blocks = sizes
                .split(';')
                .map(|b| parse_list::<usize>("--sizes", b))
                .collect::<CliResult<Vec<_>>>()?;
            Ok(matrix_model(&blocks)?)
        }
        FixtureCmd::Heisenberg {
            rank,
            max_degree,
            point,
        } => {
            limits.rank(rank)?;
            limits.degree("--max-degree", max_degree)?;
            let c = point
                .split(',')
                .map(|x| rational::parse(x).map_err(|e| CliError::Usage(format!("--point: {e}"))))
                .collect::<CliResult<Vec<_>>>()?;
            Ok(heisenberg_truncation(rank, max_degree as usize, &c)?)
        }
        FixtureCmd::Degenerate => Ok(degenerate_pairing()),
        FixtureCmd::Scalar { max_degree } => Ok(scalar_algebra(max_degree)),
    }
}

pub fn zhu(cmd: ZhuCmd, limits: Limits) -> CliResult<Report> {
    match cmd {
        ZhuCmd::Rational { modules, degree } => {
            let mods: Vec<SimpleModuleData> = read_json("--modules", &modules)?;
            let d = rational_zhu_descriptor(&mods, degree)?;
            let support = zd_support(&mods, degree);
            let text = format!("{d}\nZ_{degree} support: {}\n", support.join(" "));
            Ok(Report::new(&d, text, true).text_default())
        }
        ZhuCmd::Heisenberg(a) => {
            check_rank_degree(limits, a)?;
            let d = heisenberg_zhu_descriptor(a.rank, a.degree as usize)?;
            let text = d.to_string();
            Ok(Report::new(&d, text, true).text_default())
        }
        ZhuCmd::Exceptional { dims, rank, max } => {
            let data = match (dims, rank) {
                (Some(s), _) => parse_list::<u64>("--dims", &s)?,
                (None, Some(n)) => {
                    limits.rank(n)?;
                    limits.degree("--max", max as u32)?;
                    heisenberg_block_sizes(n, max)?
                }
                (None, None) => return Err(CliError::Usage("one of --dims or --rank is required".into())),
            };
            let ex = exceptional_degrees(&data, max)?;
            let text = if ex.is_empty() {
                format!("no exceptional degrees up to {max}\n")
            } else {
                format!("exceptional degrees: {}\n", join(&ex))
            };
            Ok(Report::new(json!({"max": max, "exceptional": ex}), text, true).text_default())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists_parse() {
        assert_eq!(parse_list::<usize>("--sizes", "2, 1,").unwrap(), vec![2, 1]);
        assert!(parse_list::<usize>("--sizes", "2,x").is_err());
        assert_eq!(big_count(12u32), json!(12));
        assert_eq!(
            big_count("123456789012345678901234567890"),
            json!("123456789012345678901234567890")
        );
    }

    #[test]
    fn matrix_fixture_sizes() {
        let p = fixture(FixtureCmd::Matrix { sizes: "1,1;2".into() }, Limits { enforced: true }).unwrap();
        assert_eq!(p.dims(), &[vec![5, 1], vec![1, 1]]);
        let bad = fixture(
            FixtureCmd::Heisenberg {
                rank: 1,
                max_degree: 2,
                point: "1/0".into(),
            },
            Limits { enforced: true },
        );
        assert!(matches!(bad, Err(CliError::Usage(_))));
    }
}
