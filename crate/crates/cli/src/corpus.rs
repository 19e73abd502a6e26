//! The bundled example corpus and the golden invocations run against it.

use std::sync::Arc;

use gpdcoh::coefficients::{GradedRepresentation, Representation};
use gpdcoh::groupoid::{
    cyclic_delooping, pair, point, pullback_groupoid, s3_permutations, swap_action, symmetric_group_s3, FiniteGroupoid,
    GroupoidHom,
};
use gpdcoh::io::{graded_doc, groupoid_doc, hom_doc, rep_doc, Document, GroupoidDoc, JobDoc};
use gpdcoh::linalg::RationalMatrix;
use gpdcoh::Rational;

fn groupoid(g: &FiniteGroupoid) -> Document {
    Document::Groupoid(groupoid_doc(g))
}

fn job(id: &str, documents: Vec<Document>) -> Document {
    Document::Job(JobDoc {
        id: id.to_string(),
        documents,
    })
}

fn sign(g: &Arc<FiniteGroupoid>, odd: &[&str]) -> Representation {
    let vals: Vec<i64> = (0..g.num_arrows())
        .map(|a| if odd.contains(&g.arrow_name(a)) { -1 } else { 1 })
        .collect();
    Representation::character(g, &vals).expect("sign character")
}

fn two_term(g: &Arc<FiniteGroupoid>, d: fn(usize) -> RationalMatrix) -> GradedRepresentation {
    let t = Representation::trivial(g);
    let dn = (0..g.num_objects()).map(|_| d(1)).collect();
    GradedRepresentation::new(vec![t.clone(), t], vec![dn]).expect("two-term complex")
}

/// `pair(2)` with one entry of its composition table redirected.
fn corrupted_pair2() -> GroupoidDoc {
    let mut doc = groupoid_doc(&pair(2));
    doc.id = "pair2_corrupt".into();
    let slot = doc.compose.get_mut("p1_0|p0_1").expect("entry exists");
    *slot = "p0_0".into();
    doc
}

/// The delooping of Z/3 with `g1 g1` sent to the unit instead of `g2`.
fn corrupted_z3() -> GroupoidDoc {
    let mut doc = groupoid_doc(&cyclic_delooping(3));
    doc.id = "bz3_corrupt".into();
    *doc.compose.get_mut("g1|g1").expect("entry exists") = "g0".into();
    doc
}

/// File name and document of every corpus entry.
pub fn documents() -> Vec<(&'static str, Document)> {
    let bz2 = Arc::new(cyclic_delooping(2));
    let bs3 = Arc::new(symmetric_group_s3());
    let p2 = Arc::new(pair(2));
    let pt = Arc::new(point());

    let (fbz2, fshriek) = pullback_groupoid("fbz2", &bz2, &["a".into(), "b".into()], &[0, 0]).expect("pullback");
    let (fp2, fshriek_p2) =
        pullback_groupoid("fpair2", &p2, &["a".into(), "b".into(), "c".into()], &[0, 0, 1]).expect("pullback");
    let point_to_pair2 =
        GroupoidHom::new("point_to_pair2", pt.clone(), p2.clone(), vec![0], vec![p2.unit(0)]).expect("functor");
    let bz2_to_point = GroupoidHom::new("bz2_to_point", bz2.clone(), pt.clone(), vec![0], vec![0, 0]).expect("functor");

    let perms = s3_permutations();
    let standard = Representation::new(
        bs3.clone(),
        vec![3],
        (0..6)
            .map(|a| {
                let t: Vec<_> = (0..3).map(|i| (perms[a][i], i, Rational::one())).collect();
                RationalMatrix::from_triplets(3, 3, t).expect("permutation matrix")
            })
            .collect(),
    )
    .expect("permutation representation");

    vec![
        ("pair2.json", groupoid(&p2)),
        ("pair3.json", groupoid(&pair(3))),
        ("pair4.json", groupoid(&pair(4))),
        ("delooping_z2.json", groupoid(&bz2)),
        ("delooping_z3.json", groupoid(&cyclic_delooping(3))),
        ("delooping_s3.json", groupoid(&bs3)),
        ("swap.json", groupoid(&swap_action())),
        (
            "fshriek_bz2.json",
            job(
                "fshriek_bz2",
                vec![
                    groupoid(&bz2),
                    groupoid(&fbz2),
                    Document::Homomorphism(hom_doc(&fshriek)),
                ],
            ),
        ),
        (
            "fshriek_pair2.json",
            job(
                "fshriek_pair2",
                vec![
                    groupoid(&p2),
                    groupoid(&fp2),
                    Document::Homomorphism(hom_doc(&fshriek_p2)),
                ],
            ),
        ),
        (
            "point_pair2.json",
            job(
                "point_pair2",
                vec![
                    groupoid(&pt),
                    groupoid(&p2),
                    Document::Homomorphism(hom_doc(&point_to_pair2)),
                ],
            ),
        ),
        (
            "bz2_point.json",
            job(
                "bz2_point",
                vec![
                    groupoid(&bz2),
                    groupoid(&pt),
                    Document::Homomorphism(hom_doc(&bz2_to_point)),
                ],
            ),
        ),
        ("pair2_corrupt.json", Document::Groupoid(corrupted_pair2())),
        ("delooping_z3_corrupt.json", Document::Groupoid(corrupted_z3())),
        (
            "trivial.json",
            Document::Representation(rep_doc("trivial_bz2", &Representation::trivial(&bz2))),
        ),
        (
            "sign.json",
            Document::Representation(rep_doc("sign", &sign(&bz2, &["g1"]))),
        ),
        (
            "sign_s3.json",
            Document::Representation(rep_doc("sign_s3", &sign(&bs3, &["t01", "t02", "t12"]))),
        ),
        (
            "standard_s3.json",
            Document::Representation(rep_doc("standard_s3", &standard)),
        ),
        (
            "graded_identity.json",
            Document::GradedRepresentation(graded_doc("graded_identity", &two_term(&p2, RationalMatrix::identity))),
        ),
        (
            "graded_zero.json",
            Document::GradedRepresentation(graded_doc(
                "graded_zero",
                &two_term(&p2, |n| RationalMatrix::zeros(n, n)),
            )),
        ),
    ]
}

/// A recorded invocation: golden file stem, arguments after the program
/// name (corpus files by bare name), expected exit status.
pub struct GoldenCase {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

const fn case(name: &'static str, args: &'static [&'static str], exit: i32) -> GoldenCase {
    GoldenCase { name, args, exit }
}

pub const GOLDEN_CASES: &[GoldenCase] = &[
    case(
        "check_corpus",
        &[
            "check",
            "pair2.json",
            "pair3.json",
            "pair4.json",
            "delooping_z2.json",
            "delooping_z3.json",
            "delooping_s3.json",
            "swap.json",
        ],
        0,
    ),
    case(
        "check_corrupt",
        &["check", "pair2_corrupt.json", "delooping_z3_corrupt.json"],
        1,
    ),
    case("check_fshriek_sign", &["check", "fshriek_bz2.json", "sign.json"], 0),
    case(
        "cohomology_pair3",
        &["cohomology", "pair3.json", "--max-degree", "5"],
        0,
    ),
    case(
        "cohomology_pair3_tsv",
        &["cohomology", "pair3.json", "--format", "tsv"],
        0,
    ),
    case(
        "cohomology_deloopings",
        &[
            "cohomology",
            "delooping_z2.json",
            "delooping_z3.json",
            "swap.json",
            "pair2.json",
        ],
        0,
    ),
    case(
        "cohomology_s3",
        &["cohomology", "delooping_s3.json", "--max-degree", "4"],
        0,
    ),
    case(
        "cohomology_z2_sign",
        &["cohomology", "delooping_z2.json", "--coefficients", "sign.json"],
        0,
    ),
    case(
        "cohomology_s3_standard",
        &[
            "cohomology",
            "delooping_s3.json",
            "--coefficients",
            "standard_s3.json",
            "--max-degree",
            "4",
        ],
        0,
    ),
    case(
        "cohomology_pair2_graded_zero",
        &["cohomology", "pair2.json", "--coefficients", "graded_zero.json"],
        0,
    ),
    case("decalage_pair3", &["decalage", "pair3.json", "--max-degree", "4"], 0),
    case(
        "decalage_z2",
        &["decalage", "delooping_z2.json", "--max-degree", "4"],
        0,
    ),
    case(
        "decalage_s3_sign",
        &[
            "decalage",
            "delooping_s3.json",
            "--coefficients",
            "sign_s3.json",
            "--max-degree",
            "3",
        ],
        0,
    ),
    case(
        "doubles_fshriek_bz2",
        &["doubles", "fshriek_bz2.json", "--max-degree", "4"],
        0,
    ),
    case(
        "doubles_point_pair2",
        &["doubles", "point_pair2.json", "--max-degree", "4"],
        0,
    ),
    case(
        "morita_fshriek_bz2",
        &["morita", "fshriek_bz2.json", "--max-degree", "4"],
        0,
    ),
    case(
        "morita_fshriek_bz2_sign",
        &[
            "morita",
            "fshriek_bz2.json",
            "--coefficients",
            "sign.json",
            "--max-degree",
            "4",
        ],
        0,
    ),
    case(
        "morita_fshriek_pair2",
        &["morita", "fshriek_pair2.json", "--max-degree", "4"],
        0,
    ),
    case(
        "morita_point_pair2_graded",
        &[
            "morita",
            "point_pair2.json",
            "--coefficients",
            "graded_identity.json",
            "--max-degree",
            "4",
        ],
        0,
    ),
    case(
        "morita_bz2_point",
        &["morita", "bz2_point.json", "--max-degree", "4"],
        1,
    ),
    case("axioms_s3", &["axioms", "delooping_s3.json", "--max-degree", "3"], 0),
    case(
        "axioms_fshriek_bz2",
        &["axioms", "fshriek_bz2.json", "--max-degree", "3"],
        0,
    ),
];

/// Runs `args` with corpus file names resolved under `dir`.
pub fn invoke(dir: &std::path::Path, args: &[&str], env_budget: Option<String>) -> crate::Outcome {
    let mut argv = vec!["gpd".to_string()];
    argv.extend(args.iter().map(|a| {
        if a.ends_with(".json") {
            dir.join(a).display().to_string()
        } else {
            a.to_string()
        }
    }));
    crate::run(argv, env_budget)
}

/// Zeroes the timing fields of a JSON report; other output is unchanged.
pub fn normalize(stdout: &str) -> String {
    match serde_json::from_str::<serde_json::Value>(stdout) {
        Ok(mut v) if v.get("timing").is_some() => {
            v["timing"] = serde_json::json!({ "elapsed_ms": 0 });
            let mut s = serde_json::to_string_pretty(&v).expect("reports serialize");
            s.push('\n');
            s
        }
        _ => stdout.to_string(),
    }
}
