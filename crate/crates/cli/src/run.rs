//! Command dispatch: parse the request, call into the library, assemble
//! the report document.

use std::sync::Arc;

use serde_json::{json, Value};

use ramforge_core::localram::{
    check_solid, classify, triple_fiber_check, verify_l2, verify_mainlemma, ClassWitness,
    Classification,
};
use ramforge_core::thh::{
    hochschild_groups, les_assembly_check, ram_groups, thh_groups, thh_completion_coherent,
};
use ramforge_core::{Error, NumberRing, Result};

use crate::output::{bigint_json, group_json, table_json, Report};
use crate::parse;
use crate::Command;

pub fn run(command: &Command, precision: Option<u32>) -> Result<Report> {
    match command {
        Command::Factor { field, prime } => {
            let a = field_ring(field)?;
            let fac = a.factor_prime(*prime)?;
            let factors: Vec<Value> = fac
                .factors
                .iter()
                .map(|g| {
                    json!({
                        "lift": g.lift.iter().map(bigint_json).collect::<Vec<_>>(),
                        "e": g.e,
                        "f": g.f,
                    })
                })
                .collect();
            let mut warnings = Vec::new();
            if !a.dedekind_maximal(*prime)? {
                warnings.push(format!(
                    "order is not maximal at {prime}; factorization describes Z[theta] only"
                ));
            }
            Ok(Report::envelope(
                "factor",
                json!({"field": field_json(&a), "prime": prime}),
                json!({"factors": factors, "squarefree": fac.is_squarefree()}),
                warnings,
                None,
            ))
        }
        Command::Classify { field, prime } => {
            let a = field_ring(field)?;
            let c = classify(&a, *prime, precision)?;
            Ok(Report::envelope(
                "classify",
                json!({"field": field_json(&a), "prime": prime}),
                classification_json(&c),
                vec![],
                Some(c.precision),
            ))
        }
        Command::Omega1 { field } => {
            let a = field_ring(field)?;
            let g = a.kaehler_global()?;
            Ok(Report::envelope(
                "omega1",
                json!({"field": field_json(&a)}),
                json!({"group": group_json(&g), "order": bigint_json(&g.order().unwrap_or_default())}),
                vec![],
                None,
            ))
        }
        Command::Different { field } => {
            let a = field_ring(field)?;
            let d = a.inverse_different()?;
            let lattice_rows: Vec<Vec<Value>> = (0..d.lattice.rows)
                .map(|i| {
                    (0..d.lattice.cols)
                        .map(|j| {
                            let s = d.lattice.get(i, j);
                            match s {
                                ramforge_core::Scalar::Int(x) => bigint_json(x),
                                _ => unreachable!("integer lattice"),
                            }
                        })
                        .collect()
                })
                .collect();
            Ok(Report::envelope(
                "different",
                json!({"field": field_json(&a)}),
                json!({
                    "denominator": d.denominator.iter().map(bigint_json).collect::<Vec<_>>(),
                    "denominator_norm": bigint_json(&d.denominator_norm),
                    "numerator_lattice": lattice_rows,
                    "index_over_ring": bigint_json(&d.index_over_ring()),
                }),
                d.warnings.clone(),
                None,
            ))
        }
        Command::Thh { field, max_degree } => {
            let a = field_ring(field)?;
            let t = thh_groups(&a, *max_degree)?;
            Ok(Report::envelope(
                "thh",
                json!({"field": field_json(&a), "max_degree": max_degree}),
                json!({"table": table_json(&t)}),
                vec![],
                None,
            ))
        }
        Command::Hh { field, max_degree } => {
            let a = field_ring(field)?;
            let t = hochschild_groups(&a, *max_degree)?;
            Ok(Report::envelope(
                "hh",
                json!({"field": field_json(&a), "max_degree": max_degree}),
                json!({"table": table_json(&t)}),
                vec![],
                None,
            ))
        }
        Command::Ram { field, max_degree } => {
            let a = field_ring(field)?;
            let t = ram_groups(&a, *max_degree)?;
            Ok(Report::envelope(
                "ram",
                json!({"field": field_json(&a), "max_degree": max_degree}),
                json!({"table": table_json(&t)}),
                vec![],
                None,
            ))
        }
        Command::VerifyMainlemma { eisenstein, corrupt } => {
            let datum = Arc::new(parse::eisenstein(eisenstein, precision)?);
            let rep = verify_mainlemma(&datum, *corrupt)?;
            Ok(Report::envelope(
                "verify-mainlemma",
                json!({"eisenstein": eisenstein, "corrupt": corrupt}),
                json!({
                    "certified": rep.certified(),
                    "certificate": {
                        "in_ideal": rep.witness.certificate.in_ideal,
                        "relation_holds": rep.witness.certificate.relation_holds,
                        "derivative_identity": rep.witness.certificate.derivative_identity,
                        "differential_exponent": rep.witness.certificate.differential_exponent,
                        "coordinate_valuation": rep.witness.certificate.coordinate_valuation,
                    },
                    "iso_in_degrees": rep.iso_in_degrees,
                    "fiber_restatement": rep.fiber_restatement_ok,
                    "homology_dimensions": {
                        "ideal_complex": dims_json(&rep.top_homology),
                        "differential_complex": dims_json(&rep.bottom_homology),
                    },
                }),
                vec![],
                Some(datum.precision),
            ))
        }
        Command::VerifyL2 { eisenstein } => {
            let datum = Arc::new(parse::eisenstein(eisenstein, precision)?);
            let rep = verify_l2(&datum)?;
            Ok(Report::envelope(
                "verify-l2",
                json!({"eisenstein": eisenstein}),
                json!({
                    "differential_exponent": rep.differential_exponent,
                    "dimensions": [rep.dims.0, rep.dims.1],
                    "left_pipeline": dims_json(&rep.left),
                    "right_pipeline": dims_json(&rep.right),
                }),
                vec![],
                Some(datum.precision),
            ))
        }
        Command::VerifyTriple {
            mid,
            top,
            embed,
            prime,
            depth,
        } => {
            let b = field_ring(mid)?;
            let c = field_ring(top)?;
            let emb = parse::coeff_list(embed)?;
            let rep = triple_fiber_check(&b, &c, &emb, *prime, *depth)?;
            Ok(Report::envelope(
                "verify-triple",
                json!({
                    "mid": field_json(&b),
                    "top": field_json(&c),
                    "embed": emb.iter().map(bigint_json).collect::<Vec<_>>(),
                    "prime": prime,
                    "depth": depth,
                }),
                json!({
                    "indices": {"e_mid": rep.indices.0, "e_top": rep.indices.1, "e_relative": rep.indices.2},
                    "exact_slots": rep.slots,
                    "fiber_homology": {
                        "mid_over_base": dims_json(&rep.fiber_ba),
                        "top_over_base": dims_json(&rep.fiber_ca),
                        "top_over_mid": dims_json(&rep.fiber_cb),
                    },
                }),
                vec![],
                None,
            ))
        }
        Command::CheckSolid { target, depth } => {
            let map = parse::catalog_target(target)?;
            let rep = check_solid(map, *depth)?;
            Ok(Report::envelope(
                "check-solid",
                json!({"target": target, "depth": depth}),
                json!({
                    "solid": rep.solid,
                    "higher_tor": rep.higher_tor.iter().map(group_json).collect::<Vec<_>>(),
                    "detail": rep.detail,
                }),
                vec![],
                None,
            ))
        }
        Command::Report { field } => report_dossier(field, precision),
    }
}

fn field_ring(s: &str) -> Result<NumberRing> {
    NumberRing::new(parse::coeff_list(s)?)
}

fn field_json(a: &NumberRing) -> Value {
    json!({
        "coefficients": a.defining_poly().iter().map(bigint_json).collect::<Vec<_>>(),
        "pretty": a.describe(),
        "degree": a.degree(),
    })
}

fn dims_json(h: &ramforge_core::HomologyResult) -> Value {
    let rows: Vec<Value> = h
        .groups
        .iter()
        .map(|(d, g)| json!({"degree": d, "group": g.to_string()}))
        .collect();
    json!(rows)
}

fn classification_json(c: &Classification) -> Value {
    let factors: Vec<Value> = c
        .factors
        .iter()
        .map(|cf| {
            let witness = match &cf.witness {
                ClassWitness::OmegaVanishes => json!({"kind": "omega1-vanishes"}),
                ClassWitness::ClassicalOnly => json!({"kind": "classical-only"}),
                ClassWitness::MainLemma(rep) => json!({
                    "kind": "mainlemma-certified",
                    "certified": rep.certified(),
                    "iso_in_degrees": rep.iso_in_degrees,
                }),
            };
            json!({
                "e": cf.factor.e,
                "f": cf.factor.f,
                "differential_exponent": cf.factor.d,
                "class": cf.factor.class.as_str(),
                "witness": witness,
            })
        })
        .collect();
    json!({"factors": factors, "unramified": c.unramified()})
}

/// The full dossier: splitting and witnesses at every ramified prime,
/// differentials, the inverse different, and the three tables with
/// consistency checks. Non-maximal orders downgrade to the sections
/// that remain valid, with warnings, instead of failing.
fn report_dossier(field: &str, precision: Option<u32>) -> Result<Report> {
    const TABLE_DEGREE: i64 = 7;
    let a = field_ring(field)?;
    let mut warnings = Vec::new();
    let mut sections = serde_json::Map::new();

    sections.insert(
        "discriminant".into(),
        bigint_json(a.discriminant()),
    );
    let ramified = a.ramified_candidates()?;
    sections.insert(
        "ramified_primes".into(),
        json!(ramified.clone()),
    );

    let mut maximal_everywhere = true;
    let mut prime_sections = Vec::new();
    for &p in &ramified {
        if a.dedekind_maximal(p)? {
            let c = classify(&a, p, precision)?;
            prime_sections.push(json!({
                "prime": p,
                "classification": classification_json(&c),
                "completion_coherent": thh_completion_coherent(&a, p, 3).unwrap_or(false),
            }));
        } else {
            maximal_everywhere = false;
            warnings.push(format!("order is not maximal at {p}; local sections omitted"));
            prime_sections.push(json!({
                "prime": p,
                "classification": "unavailable (not maximal)",
            }));
        }
    }
    sections.insert("primes".into(), json!(prime_sections));

    let omega = a.kaehler_global()?;
    sections.insert("omega1".into(), group_json(&omega));

    let different = a.inverse_different()?;
    warnings.extend(different.warnings.clone());
    sections.insert(
        "inverse_different_index".into(),
        bigint_json(&different.index_over_ring()),
    );

    sections.insert(
        "hh".into(),
        json!({"table": table_json(&hochschild_groups(&a, TABLE_DEGREE)?)}),
    );
    sections.insert(
        "ram".into(),
        json!({"table": table_json(&ram_groups(&a, TABLE_DEGREE)?)}),
    );

    if maximal_everywhere {
        sections.insert(
            "thh".into(),
            json!({"table": table_json(&thh_groups(&a, TABLE_DEGREE)?)}),
        );
        let les = les_assembly_check(&a, 4)?;
        sections.insert(
            "les_assembly".into(),
            json!(les
                .checks
                .iter()
                .map(|(n, got, expected, embeds)| json!({
                    "n": n,
                    "order": bigint_json(got),
                    "expected": bigint_json(expected),
                    "embeds": embeds,
                }))
                .collect::<Vec<_>>()),
        );
    } else {
        sections.insert(
            "thh".into(),
            json!("unavailable (closed form needs a maximal order)"),
        );
    }

    // cheap cross-check of the two Hochschild pipelines
    if a.degree() <= 3 {
        let agree = ramforge_core::thh::direct::hochschild_pipelines_agree(&a, 3)?;
        if !agree {
            return Err(Error::MismatchFailure(
                "Hochschild pipelines disagree".into(),
            ));
        }
        sections.insert("hochschild_cross_check".into(), json!("agree through degree 3"));
    } else {
        sections.insert(
            "hochschild_cross_check".into(),
            json!("skipped (resource cap for degree > 3 fields)"),
        );
    }

    Ok(Report::envelope(
        "report",
        json!({"field": field_json(&a)}),
        Value::Object(sections),
        warnings,
        None,
    ))
}
