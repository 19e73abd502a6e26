//! Acceptance criteria over the bundled corpus, one line per criterion.
//! Runs without the libtest harness so the lines always print.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use gpdcoh::cochain::verify_retract;
use gpdcoh::coefficients::{
    axiom_report, cochains, graded_cochains, retract_cochains, search_goodness, GradedRepresentation, Representation,
};
use gpdcoh::groupoid::{FiniteGroupoid, GroupoidHom};
use gpdcoh::io::{read_document, Library};
use gpdcoh::morita::{certify_doubles, decalage_report, morita_check, CoefficientMode, FDouble, MoritaOptions};
use gpdcoh::simplicial::{nerve, principal_retract, verify_simplicial_retract, DEFAULT_LEVEL_BUDGET};
use gpdcoh::{Error, Rational};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn(&Corpus) -> Verdict);

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../cli/corpus")
}

fn load(files: &[&str]) -> Library {
    let docs = files
        .iter()
        .flat_map(|f| read_document(&corpus_dir().join(f)).unwrap().flattened())
        .collect();
    Library::from_documents(docs).unwrap()
}

const GROUPOID_FILES: &[&str] = &[
    "pair2.json",
    "pair3.json",
    "pair4.json",
    "delooping_z2.json",
    "delooping_z3.json",
    "delooping_s3.json",
    "swap.json",
    "fshriek_bz2.json",
    "fshriek_pair2.json",
    "point_pair2.json",
    "bz2_point.json",
];

struct Corpus {
    groupoids: Vec<Arc<FiniteGroupoid>>,
    /// (label, coefficients) over every groupoid, trivial ones included.
    coefficients: Vec<(String, GradedRepresentation)>,
    homs: Vec<GroupoidHom>,
}

impl Corpus {
    fn new() -> Self {
        let mut groupoids: Vec<Arc<FiniteGroupoid>> = Vec::new();
        let mut homs = Vec::new();
        for f in GROUPOID_FILES {
            let lib = load(&[f]);
            for (kind, id) in &lib.order {
                match *kind {
                    "groupoid" if !groupoids.iter().any(|g| g.name() == id) => {
                        groupoids.push(lib.groupoids[id].clone())
                    }
                    "homomorphism" => homs.push(lib.homomorphisms[id].clone()),
                    _ => {}
                }
            }
        }
        let mut coefficients: Vec<(String, GradedRepresentation)> = groupoids
            .iter()
            .map(|g| {
                (
                    format!("trivial on {}", g.name()),
                    GradedRepresentation::single(Representation::trivial(g)),
                )
            })
            .collect();
        for (base, rep) in [
            ("delooping_z2.json", "sign.json"),
            ("delooping_z2.json", "trivial.json"),
            ("delooping_s3.json", "sign_s3.json"),
            ("delooping_s3.json", "standard_s3.json"),
            ("pair2.json", "graded_identity.json"),
            ("pair2.json", "graded_zero.json"),
        ] {
            let lib = load(&[base, rep]);
            for (id, r) in &lib.representations {
                coefficients.push((id.clone(), GradedRepresentation::single(r.clone())));
            }
            for (id, r) in &lib.graded {
                coefficients.push((id.clone(), r.clone()));
            }
        }
        Corpus {
            groupoids,
            coefficients,
            homs,
        }
    }

    fn hom(&self, name: &str) -> &GroupoidHom {
        self.homs
            .iter()
            .find(|h| h.name() == name)
            .expect("corpus homomorphism")
    }

    fn rep(&self, files: &[&str], id: &str) -> GradedRepresentation {
        let lib = load(files);
        match lib.representations.get(id) {
            Some(r) => GradedRepresentation::single(r.clone()),
            None => lib.graded[id].clone(),
        }
    }
}

/// The identity scans use N = 4, and N = 3 for the largest group.
fn scan_degree(g: &FiniteGroupoid) -> usize {
    if g.name() == "bs3" {
        3
    } else {
        4
    }
}

fn opts(max_degree: usize) -> MoritaOptions {
    MoritaOptions {
        max_degree,
        budget: DEFAULT_LEVEL_BUDGET,
    }
}

fn ensure(ok: bool, witness: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(witness())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn identity_suites(c: &Corpus) -> Verdict {
    let start = Instant::now();
    let mut checked = 0;
    for (label, coeffs) in &c.coefficients {
        let g = coeffs.groupoid();
        let n = nerve(g, scan_degree(g), DEFAULT_LEVEL_BUDGET).map_err(err)?;
        let r = axiom_report(&n, coeffs).map_err(err)?;
        for check in &r.checks {
            checked += check.checked;
            ensure(check.pass(), || format!("{label}: {}: {:?}", check.name, check.witness))?;
        }
    }
    for f in &c.homs {
        let fd = FDouble::build(f, 4, DEFAULT_LEVEL_BUDGET).map_err(err)?;
        let r = fd.simplicial().check_identities(&|n, m, x| fd.describe(n, m, x));
        checked += r.checked;
        ensure(r.pass(), || format!("{}: {:?}", f.name(), r.violations.first()))?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1} s"))?;
    Ok(format!("{checked} instances in {secs:.1} s"))
}

fn square_zero(c: &Corpus) -> Verdict {
    let mut complexes = 0;
    for (label, coeffs) in &c.coefficients {
        let g = coeffs.groupoid();
        let n = nerve(g, scan_degree(g), DEFAULT_LEVEL_BUDGET).map_err(err)?;
        let r = axiom_report(&n, coeffs).map_err(err)?;
        for check in r.checks.iter().filter(|x| x.name.contains("squares to zero")) {
            complexes += 1;
            ensure(check.pass(), || format!("{label}: {}: {:?}", check.name, check.witness))?;
        }
    }
    for f in &c.homs {
        for (label, coeffs) in c
            .coefficients
            .iter()
            .filter(|(_, e)| e.groupoid().name() == f.target().name())
        {
            let r = certify_doubles(f, coeffs, opts(4)).map_err(err)?;
            let sq = r
                .certificates
                .0
                .iter()
                .find(|x| x.name == "square zero")
                .expect("certificate");
            complexes += 1;
            ensure(sq.pass, || format!("{} with {label}: {:?}", f.name(), sq.witness))?;
        }
    }
    Ok(format!("{complexes} complexes, doubles and triples"))
}

fn trivial_table(g: &Arc<FiniteGroupoid>, top: usize) -> Result<Vec<usize>, String> {
    let n = nerve(g, top, DEFAULT_LEVEL_BUDGET).map_err(err)?;
    Ok(cochains(n.simplicial(), &Representation::trivial(g))
        .complex()
        .cohomology(None, top - 2)
        .dims)
}

fn expect_point_tables(c: &Corpus, names: &[&str]) -> Verdict {
    for name in names {
        let g = c.groupoids.iter().find(|g| g.name() == *name).expect("corpus groupoid");
        let ours = trivial_table(g, 5)?;
        ensure(ours == [1, 0, 0, 0], || format!("{name}: {ours:?}"))?;
        let oracle = common::bar_cohomology(&Representation::trivial(g), 3);
        ensure(ours == oracle, || {
            format!("{name}: {ours:?} but the bar complex gives {oracle:?}")
        })?;
    }
    Ok(format!("{} groupoids at [1, 0, 0, 0]", names.len()))
}

fn pair_tables(c: &Corpus) -> Verdict {
    expect_point_tables(c, &["pair2", "pair3", "pair4"])
}

fn delooping_tables(c: &Corpus) -> Verdict {
    expect_point_tables(c, &["bz2", "bz3", "bs3"])
}

fn decalage_degree(g: &FiniteGroupoid) -> usize {
    if g.name() == "bs3" {
        4
    } else {
        5
    }
}

fn decalage_concentration(c: &Corpus) -> Verdict {
    let mut shifts = 0;
    for g in &c.groupoids {
        let n = nerve(g, decalage_degree(g), DEFAULT_LEVEL_BUDGET).map_err(err)?;
        let r = decalage_report(&n, &Representation::trivial(g), &[1, 2]).map_err(err)?;
        for s in &r.shifts {
            shifts += 1;
            let level = common::chains(g, s.k - 1).len();
            ensure(s.pass && s.expected_h0 == level && s.cohomology[0] == level, || {
                format!(
                    "{} {} shift k = {}: {:?}, augmented {:?}",
                    g.name(),
                    s.side,
                    s.k,
                    s.cohomology,
                    s.augmented
                )
            })?;
        }
        let right = r
            .certificates
            .0
            .iter()
            .find(|x| x.name == "right shift standard retracts")
            .unwrap();
        ensure(right.pass, || format!("{}: {:?}", g.name(), right.witness))?;
    }
    Ok(format!("{shifts} shifts concentrated"))
}

fn standard_augmentations(c: &Corpus) -> Verdict {
    let mut maps = 0;
    for g in &c.groupoids {
        let n = nerve(g, decalage_degree(g), DEFAULT_LEVEL_BUDGET).map_err(err)?;
        let r = decalage_report(&n, &Representation::trivial(g), &[1]).map_err(err)?;
        for q in &r.quasi_isomorphisms {
            maps += 1;
            ensure(!q.degrees.is_empty() && q.degrees.iter().all(|d| d.is_iso()), || {
                format!("{} {}: {:?}", g.name(), q.name, q.degrees)
            })?;
        }
    }
    ensure(maps == 2 * c.groupoids.len(), || format!("only {maps} maps checked"))?;
    Ok(format!("{maps} augmentations invertible in trusted degrees"))
}

fn find_cert<'a>(certs: &'a gpdcoh::morita::Certificates, name: &str) -> &'a gpdcoh::morita::Certificate {
    certs
        .0
        .iter()
        .find(|x| x.name == name)
        .unwrap_or_else(|| panic!("certificate {name}"))
}

fn homotopies(c: &Corpus) -> Verdict {
    // (a) principal retractions
    let mut principal = 0;
    for g in c.groupoids.iter().filter(|g| g.is_principal()) {
        let n = nerve(g, 4, DEFAULT_LEVEL_BUDGET).map_err(err)?;
        let r = principal_retract(&n).map_err(err)?;
        let s = verify_simplicial_retract(n.simplicial(), &r, &|l, x| n.describe(l, x));
        ensure(s.pass(), || format!("(a) {}: {:?}", g.name(), s.violations.first()))?;
        let v = cochains(n.simplicial(), &Representation::trivial(g));
        let rc = retract_cochains(n.simplicial(), &r, &Representation::trivial(g));
        let rep = verify_retract(&v, &rc).map_err(err)?;
        ensure(rep.pass(), || format!("(a) {}: {:?}", g.name(), rep.first_failure))?;
        principal += 1;
    }
    ensure(principal >= 3, || format!("(a) only {principal} principal groupoids"))?;
    // (b) right shifts
    for g in &c.groupoids {
        let n = nerve(g, decalage_degree(g), DEFAULT_LEVEL_BUDGET).map_err(err)?;
        let v = cochains(n.simplicial(), &Representation::trivial(g));
        for k in [1, 2] {
            let s = v.shift(gpdcoh::simplicial::Side::Right, k).map_err(err)?;
            let rep = verify_retract(&s, &v.right_shift_retract(k).map_err(err)?).map_err(err)?;
            ensure(rep.pass(), || {
                format!("(b) {} k = {k}: {:?}", g.name(), rep.first_failure)
            })?;
        }
    }
    // (c) and (d) through the double complex of each weak equivalence
    for f in c.homs.iter().filter(|f| f.name() != "bz2_to_point") {
        for (label, coeffs) in c
            .coefficients
            .iter()
            .filter(|(_, e)| e.groupoid().name() == f.target().name())
        {
            let r = certify_doubles(f, coeffs, opts(4)).map_err(err)?;
            for name in [
                "P_F retraction (simplicial)",
                "P_F retraction (cochains)",
                "rho retraction (simplicial)",
                "rho retraction (cochains)",
                "rho retraction compatible with the target family",
                "rho retraction glued over orbits",
            ] {
                let x = find_cert(&r.certificates, name);
                ensure(x.pass, || format!("{} with {label}: {name}: {:?}", f.name(), x.witness))?;
            }
        }
    }
    Ok(format!("{principal} principal, right shifts, P_F and rho retractions"))
}

fn verdict_for(
    f: &GroupoidHom,
    coeffs: &GradedRepresentation,
    mode: CoefficientMode,
) -> Result<(Vec<usize>, Vec<usize>), String> {
    let v = morita_check(f, coeffs, mode, opts(5)).map_err(err)?;
    ensure(v.pass, || format!("{}: {:?}", f.name(), v.first_failure))?;
    ensure(v.target_cohomology == v.source_cohomology, || {
        format!("{}: {:?} vs {:?}", f.name(), v.target_cohomology, v.source_cohomology)
    })?;
    Ok((v.target_cohomology, v.source_cohomology))
}

fn functions_theorem(c: &Corpus) -> Verdict {
    for f in [fshriek(c), c.hom("point_to_pair2")] {
        let (target, _) = verdict_for(
            f,
            &GradedRepresentation::single(Representation::trivial(f.target())),
            CoefficientMode::Functions,
        )?;
        let oracle = common::bar_cohomology(&Representation::trivial(f.source()), target.len() - 1);
        ensure(target == oracle, || {
            format!("{}: {target:?} but the bar complex gives {oracle:?}", f.name())
        })?;
    }
    Ok("f!(BZ/2) -> BZ/2 and point -> pair(2) pass".into())
}

fn fshriek(c: &Corpus) -> &GroupoidHom {
    c.homs
        .iter()
        .find(|h| h.target().name() == "bz2" && h.source().name() == "fbz2")
        .expect("pullback in corpus")
}

fn representation_theorem(c: &Corpus) -> Verdict {
    let f = fshriek(c);
    let trivial = c.rep(&["fshriek_bz2.json", "trivial.json"], "trivial_bz2");
    let sign = c.rep(&["fshriek_bz2.json", "sign.json"], "sign");
    let (t, _) = verdict_for(f, &trivial, CoefficientMode::Representation)?;
    ensure(t[0] == 1, || format!("trivial: {t:?}"))?;
    let (s, h) = verdict_for(f, &sign, CoefficientMode::Representation)?;
    ensure(s.iter().chain(&h).all(|&d| d == 0), || format!("sign: {s:?} and {h:?}"))?;
    Ok(format!("trivial {t:?}, sign {s:?}"))
}

fn graded_theorem(c: &Corpus) -> Verdict {
    let f = c.hom("point_to_pair2");
    let id = c.rep(&["point_pair2.json", "graded_identity.json"], "graded_identity");
    let zero = c.rep(&["point_pair2.json", "graded_zero.json"], "graded_zero");
    let (a, _) = verdict_for(f, &id, CoefficientMode::Graded)?;
    ensure(a.iter().all(|&d| d == 0), || format!("d_N = Id: {a:?}"))?;
    let (b, _) = verdict_for(f, &zero, CoefficientMode::Graded)?;
    ensure(b == [1, 1, 0], || format!("d_N = 0: {b:?}"))?;
    Ok(format!("d_N = Id gives {a:?}, d_N = 0 gives {b:?}"))
}

fn goodness(c: &Corpus) -> Verdict {
    let mut families = 0;
    for (label, coeffs) in &c.coefficients {
        let g = coeffs.groupoid();
        let n = nerve(g, 3, DEFAULT_LEVEL_BUDGET).map_err(err)?;
        for k in 0..=coeffs.top() {
            let (count, failures) = search_goodness(&n, coeffs.degree(k), 3).map_err(err)?;
            ensure(count > 0, || format!("{label}: no target families"))?;
            ensure(failures.is_empty(), || format!("{label}: {:?}", failures.first()))?;
            families += count;
        }
    }
    Ok(format!("{families} target families"))
}

fn truncation_stability(c: &Corpus) -> Verdict {
    let mut tables = 0;
    for (label, coeffs) in &c.coefficients {
        let g = coeffs.groupoid();
        let n0 = scan_degree(g);
        let table = |top: usize| -> Result<Vec<usize>, String> {
            let n = nerve(g, top, DEFAULT_LEVEL_BUDGET).map_err(err)?;
            let t = graded_cochains(n.simplicial(), coeffs)
                .map_err(err)?
                .total()
                .map_err(err)?;
            Ok(t.cohomology(None, top).dims)
        };
        let (a, b) = (table(n0)?, table(n0 + 1)?);
        ensure(a[..=n0 - 2] == b[..=n0 - 2], || format!("{label}: {a:?} vs {b:?}"))?;
        tables += 1;
    }
    Ok(format!("{tables} tables stable"))
}

fn negative_controls(c: &Corpus) -> Verdict {
    let mut controls = Vec::new();
    for f in ["pair2_corrupt.json", "delooping_z3_corrupt.json"] {
        let doc = read_document(&corpus_dir().join(f)).map_err(err)?;
        match Library::from_documents(vec![doc]) {
            Err(e @ Error::InvalidGroupoid { .. }) => controls.push(format!("{f}: {e}")),
            other => return Err(format!("{f} was not rejected: {:?}", other.map(|_| ()))),
        }
    }

    let f = c.hom("bz2_to_point");
    let v = morita_check(
        f,
        &GradedRepresentation::single(Representation::trivial(f.target())),
        CoefficientMode::Functions,
        opts(4),
    )
    .map_err(err)?;
    let rho = find_cert(&v.certificates, "rho retraction");
    ensure(!v.pass && !v.hypothesis_met && !rho.pass, || {
        "non-weak-equivalence passed".into()
    })?;
    let w = rho.witness.clone().unwrap_or_default();
    ensure(w.contains("arrows over"), || format!("witness lacks the lift: {w}"))?;
    controls.push(format!("bz2_to_point: {w}"));

    // a right-shift retract with one homotopy scaled
    let g = &c.groupoids.iter().find(|g| g.name() == "bz3").unwrap();
    let n = nerve(g, 4, DEFAULT_LEVEL_BUDGET).map_err(err)?;
    let v = cochains(n.simplicial(), &Representation::trivial(g));
    let s = v.shift(gpdcoh::simplicial::Side::Right, 1).map_err(err)?;
    let mut r = v.right_shift_retract(1).map_err(err)?;
    r.theta[1] = r.theta[1].scale(&Rational::from_int(2));
    let rep = verify_retract(&s, &r).map_err(err)?;
    let w = rep
        .first_failure
        .clone()
        .ok_or_else(|| "scaled right-shift retract passed".to_string())?;
    controls.push(format!("scaled theta1: {w}"));

    // the principal retraction of pair(3) with one image moved
    let p3 = c.groupoids.iter().find(|g| g.name() == "pair3").unwrap();
    let n = nerve(p3, 3, DEFAULT_LEVEL_BUDGET).map_err(err)?;
    let mut r = principal_retract(&n).map_err(err)?;
    let m = &mut r.maps[1].image;
    m[0] = (m[0] + 1) % n.size(2) as u32;
    let s = verify_simplicial_retract(n.simplicial(), &r, &|l, x| n.describe(l, x));
    let w = s
        .violations
        .first()
        .ok_or_else(|| "moved principal retraction passed".to_string())?;
    controls.push(format!("moved principal map: {} at {}", w.identity, w.witness));

    // the P_F column retraction with its augmentation redirected
    let fd = FDouble::build(fshriek(c), 3, DEFAULT_LEVEL_BUDGET).map_err(err)?;
    let col = fd.simplicial().column(1);
    let mut r = fd.column_retract(1);
    let a = &mut r.augmentation.image;
    a[0] = (a[0] + 1) % col.size(0) as u32;
    let s = verify_simplicial_retract(&col, &r, &|l, x| fd.describe(l, 1, x));
    let w = s
        .violations
        .first()
        .ok_or_else(|| "redirected P_F augmentation passed".to_string())?;
    controls.push(format!("redirected P_F augmentation: {}", w.identity));

    Ok(format!("{} controls failed with witnesses", controls.len()))
}

fn main() -> ExitCode {
    let corpus = Corpus::new();
    let criteria: [Criterion; 13] = [
        ("simplicial and cosimplicial identity suites", identity_suites),
        ("differentials square to zero", square_zero),
        ("pair groupoids have the cohomology of a point", pair_tables),
        (
            "deloopings of Z/2, Z/3, S3 have rational cohomology of a point",
            delooping_tables,
        ),
        ("decalage concentration", decalage_concentration),
        ("standard augmentations are quasi-isomorphisms", standard_augmentations),
        ("contracting homotopy identities", homotopies),
        ("functions along weak equivalences", functions_theorem),
        (
            "representation coefficients along weak equivalences",
            representation_theorem,
        ),
        ("graded coefficients along weak equivalences", graded_theorem),
        ("goodness relations", goodness),
        ("truncation stability", truncation_stability),
        ("negative controls fail with witnesses", negative_controls),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(|| check(&corpus))).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let ms = start.elapsed().as_millis();
        match result {
            Ok(note) => println!("criterion {:>2}: PASS  {title}: {note} [{ms} ms]", i + 1),
            Err(w) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {title}: {w} [{ms} ms]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
