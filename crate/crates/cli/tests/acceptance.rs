//! Acceptance criteria 1 to 11 on the fixture groups {1, Z2, Z3, Z4, S3} over
//! Q and F2. All comparisons are exact (zero tolerance).

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use parsmash::algebra::{
    diagonal_algebra, orthogonal_idempotent_basis, principal_generator, Semilattice,
};
use parsmash::hochss::{
    dual_bimodule, factorization_check, flatness_check, gamma_lambda_check, random_b_module,
    random_submodule, smash_flatness_check, spectral_low_degree, SpectralOptions,
};
use parsmash::kpar::kpar_dimension_formula;
use parsmash::linalg::{add_vectors, is_zero_vector, unit_vector, zero_vector};
use parsmash::parcoh::{hpar, HparOptions};
use parsmash::partial::fixtures::{nonunital_example, split_pair_partial, split_pair_swap};
use parsmash::partial::{raw_smash_witness, RawWitness};
use parsmash::random::{rng, small_vector};
use parsmash::{
    Bimodule, Field, FiniteGroup, GroupKind, Kpar, Matrix, PartialAction, PrimeField, Rationals,
    SmashAlgebra, Status, ValidationMode, Vector,
};
use parsmash_cli::input::{ProblemSpec, TaskKind, TaskSpec};
use parsmash_cli::{execute, output, Flags};

const KPAR_CAP: usize = 1024;

type Outcome = Result<String, String>;

fn groups() -> Vec<Arc<FiniteGroup>> {
    let std = |k| Arc::new(FiniteGroup::standard(k, 24).expect("fixture group"));
    vec![
        Arc::new(FiniteGroup::trivial()),
        std(GroupKind::Cyclic(2)),
        std(GroupKind::Cyclic(3)),
        std(GroupKind::Cyclic(4)),
        std(GroupKind::Symmetric(3)),
    ]
}

fn fields() -> (Rationals, PrimeField) {
    (Rationals, PrimeField::new(2).expect("prime"))
}

macro_rules! both_fields {
    ($f:ident) => {{
        let (q, f2) = fields();
        let a = $f(&q).map_err(|e| format!("Q: {e}"))?;
        let b = $f(&f2).map_err(|e| format!("F2: {e}"))?;
        Ok(format!("Q: {a}; F2: {b}"))
    }};
}

fn kpar<F: Field>(f: &F, g: &Arc<FiniteGroup>) -> Result<Kpar<F>, String> {
    Kpar::new(f, g.clone(), KPAR_CAP).map_err(|e| format!("{}: {e}", g.name()))
}

/// `K^G` with `G` translating the point masses, restricted to the ideal
/// spanned by `delta_e` and `delta_{g1}`: a genuinely partial action once
/// `|G| > 2`.
fn translation_partial<F: Field>(f: &F, g: &Arc<FiniteGroup>) -> Result<PartialAction<F>, String> {
    let n = g.order();
    let big = diagonal_algebra(f, n);
    let sigma: Vec<Matrix<F>> = g
        .elements()
        .map(|x| {
            let cols: Vec<Vector<F>> = g
                .elements()
                .map(|h| unit_vector(f, n, g.mul(x, h)))
                .collect();
            Matrix::from_columns(f, n, &cols)
        })
        .collect();
    let mut one_b = unit_vector(f, n, 0);
    if n > 1 {
        one_b = add_vectors(f, &one_b, &unit_vector(f, n, 1));
    }
    PartialAction::restrict_global(g.clone(), &big, &sigma, &one_b)
        .map(|x| x.0)
        .map_err(|e| format!("{}: {e}", g.name()))
}

fn criterion1_field<F: Field>(f: &F) -> Result<String, String> {
    let mut checked = 0;
    for g in groups() {
        FiniteGroup::from_table(g.table().to_vec())
            .map_err(|e| format!("{}: group axioms: {e}", g.name()))?;
        let kp = kpar(f, &g)?;
        kp.b_algebra()
            .validate()
            .map_err(|e| format!("{}: B: {e}", g.name()))?;
        kp.algebra()
            .validate()
            .map_err(|e| format!("{}: K_par G: {e}", g.name()))?;
        kp.beta()
            .validate(ValidationMode::Equality)
            .map_err(|e| format!("{}: beta: {e}", g.name()))?;
        for (name, r) in [
            ("closed form", kp.closed_form_check()),
            ("B", kp.b_check()),
            ("conjugation", kp.conj_rep_check()),
            ("augmentation", kp.augmentation_check()),
            ("w form", kp.w_form_check()),
        ] {
            r.map_err(|e| format!("{}: {name}: {e}", g.name()))?;
        }
        let pa = translation_partial(f, &g)?;
        pa.validate(ValidationMode::Weak)
            .map_err(|e| format!("{}: weak axioms: {e}", g.name()))?;
        let sm =
            SmashAlgebra::new(Arc::new(pa)).map_err(|e| format!("{}: smash: {e}", g.name()))?;
        sm.algebra()
            .validate()
            .map_err(|e| format!("{}: smash algebra: {e}", g.name()))?;
        checked += 1;
    }
    let d = nonunital_example(f);
    if PartialAction::from_domains(
        d.group.clone(),
        d.algebra.clone(),
        &d.domains,
        d.alpha.clone(),
        ValidationMode::Equality,
    )
    .is_ok()
    {
        return Err("non-associative example accepted by validation".into());
    }
    match raw_smash_witness(
        d.group.clone(),
        d.algebra.clone(),
        &d.domains,
        d.alpha.clone(),
    ) {
        RawWitness::NonAssociative { .. } => {}
        other => return Err(format!("unexpected raw witness {other:?}")),
    }
    Ok(format!("{checked} groups"))
}

fn criterion1() -> Outcome {
    let spec = ProblemSpec::parse_str(r#"{"fixture": "nonunital_example", "field": "Q"}"#)
        .map_err(|e| e.message)?;
    let run = execute(
        &spec,
        &[TaskSpec::bare(TaskKind::Validate)],
        &Flags::default(),
        None,
    )
    .map_err(|e| e.message)?;
    if run.passed {
        return Err("validate accepted the non-associative example".into());
    }
    let probe = run.document["tasks"][0]["checks"]
        .as_array()
        .and_then(|cs| cs.iter().find(|c| c["name"] == "probe (uu)u = u(uu)"))
        .and_then(|c| c["witness"].as_str())
        .ok_or("no probe witness")?
        .to_string();
    if probe != "(uu)u = 0, u(uu) = xyδ_g" {
        return Err(format!("witness `{probe}`"));
    }
    let rest: Result<String, String> = both_fields!(criterion1_field);
    Ok(format!("{}; witness \"{probe}\"", rest?))
}

fn criterion2() -> Outcome {
    let expected = [(2, 3), (3, 8), (4, 20), (6, 112)];
    let (q, _) = fields();
    let mut seen = Vec::new();
    for (n, want) in expected {
        let formula = kpar_dimension_formula(n);
        if formula != want {
            return Err(format!("formula({n}) = {formula}, expected {want}"));
        }
        let kinds: Vec<GroupKind> = if n == 6 {
            vec![GroupKind::Cyclic(6), GroupKind::Symmetric(3)]
        } else {
            vec![GroupKind::Cyclic(n)]
        };
        for k in kinds {
            let g = Arc::new(FiniteGroup::standard(k, 24).map_err(|e| e.to_string())?);
            let kp = kpar(&q, &g)?;
            if kp.dim() != want || kp.enumerate_basis() != want {
                return Err(format!(
                    "{}: dim {} enumeration {} expected {want}",
                    g.name(),
                    kp.dim(),
                    kp.enumerate_basis()
                ));
            }
            seen.push(format!("{}={}", g.name(), kp.dim()));
        }
    }
    Ok(seen.join(", "))
}

fn criterion3_field<F: Field>(f: &F) -> Result<String, String> {
    let mut r = rng(3);
    for g in groups() {
        let kp = kpar(f, &g)?;
        kp.bracket_relations_check()
            .map_err(|e| format!("{}: {e}", g.name()))?;
        kp.commutation_all()
            .map_err(|e| format!("{}: {e}", g.name()))?;
        kp.word_check(500, 8, &mut r)
            .map_err(|e| format!("{}: {e}", g.name()))?;
    }
    Ok("5 groups, 500 words each".into())
}

fn criterion3() -> Outcome {
    both_fields!(criterion3_field)
}

fn criterion4_field<F: Field>(f: &F) -> Result<String, String> {
    let mut r = rng(4);
    for g in groups() {
        kpar(f, &g)?
            .epsilon_identities_check(1000, 5, &mut r)
            .map_err(|e| format!("{}: {e}", g.name()))?;
    }
    Ok("1000 pairs per group".into())
}

fn criterion4() -> Outcome {
    both_fields!(criterion4_field)
}

const TRIPLE: [&str; 6] = [
    "H0 = partial invariants",
    "H0 = Hom(B, M)",
    "H1 = Der/Int",
    "H1 = coker(M -> Hom(IG, M))",
    "H2 = Ext1(IG, M)",
    "H3 = Ext2(IG, M)",
];

fn criterion5_field<F: Field>(f: &F) -> Result<String, String> {
    let mut count = 0;
    for g in groups() {
        let kp = kpar(f, &g)?;
        let mut modules = vec![
            ("B".to_string(), kp.b_module()),
            ("regular".to_string(), kp.regular_module()),
        ];
        for x in g.elements().skip(1) {
            modules.push((
                format!("D_{x}"),
                kp.domain_module(x).map_err(|e| e.to_string())?.0,
            ));
        }
        modules.push((
            "quotient".into(),
            kp.random_quotient(11).map_err(|e| e.to_string())?.0,
        ));
        for (name, m) in modules {
            let opts = HparOptions {
                max_degree: 3,
                ..HparOptions::default()
            };
            let rep = hpar(&kp, &m, &opts).map_err(|e| format!("{} {name}: {e}", g.name()))?;
            for want in TRIPLE {
                match rep.checks.iter().find(|c| c.name == want) {
                    Some(c) if c.status == Status::Pass => {}
                    Some(c) => return Err(format!("{} {name}: {want}: {:?}", g.name(), c.witness)),
                    None => return Err(format!("{} {name}: {want} missing", g.name())),
                }
            }
            if let Some(c) = rep.checks.iter().find(|c| !c.passed()) {
                return Err(format!("{} {name}: {}: {:?}", g.name(), c.name, c.witness));
            }
            count += 1;
        }
    }
    Ok(format!("{count} (group, module) pairs"))
}

fn criterion5() -> Outcome {
    both_fields!(criterion5_field)
}

fn criterion6_field<F: Field>(f: &F) -> Result<String, String> {
    for ground in 0..=5 {
        let s = Semilattice::boolean(ground).map_err(|e| e.to_string())?;
        let basis = orthogonal_idempotent_basis(f, &s).map_err(|e| e.to_string())?;
        let alg = s.algebra(f);
        let mut total = zero_vector(f, s.len());
        for (i, w) in basis.vectors.iter().enumerate() {
            for (j, w2) in basis.vectors.iter().enumerate() {
                let p = alg.mul(w, w2);
                if (i == j && &p != w) || (i != j && !is_zero_vector(f, &p)) {
                    return Err(format!("2^{ground}: w{i} w{j}"));
                }
            }
            total = add_vectors(f, &total, w);
        }
        if &total != alg.unit() || basis.change_of_basis(f).rank() != s.len() {
            return Err(format!("2^{ground}: not a basis summing to 1"));
        }
    }
    let mut r = rng(6);
    for k in 0..200 {
        let ground = 3 + k % 3;
        let s = Semilattice::boolean(ground).map_err(|e| e.to_string())?;
        let basis = orthogonal_idempotent_basis(f, &s).map_err(|e| e.to_string())?;
        let alg = s.algebra(f);
        let gens: Vec<Vector<F>> = (0..1 + k % 4)
            .map(|_| small_vector(f, s.len(), &mut r))
            .collect();
        let u = principal_generator(f, &s, &basis, &gens).u;
        if alg.mul(&u, &u) != u {
            return Err(format!("ideal {k}: u^2 != u"));
        }
        if let Some(i) = gens.iter().position(|x| &alg.mul(&u, x) != x) {
            return Err(format!("ideal {k}: u r_{i} != r_{i}"));
        }
        let ideal = alg.ideal_closure(&gens);
        if !ideal.contains(&u) || alg.ideal_closure(std::slice::from_ref(&u)) != ideal {
            return Err(format!("ideal {k}: u does not generate the ideal"));
        }
    }
    Ok("lattices 2^0..2^5, 200 ideals".into())
}

fn criterion6() -> Outcome {
    both_fields!(criterion6_field)
}

fn criterion7_field<F: Field>(f: &F) -> Result<String, String> {
    let mut dims = Vec::new();
    for pa in [split_pair_partial(f), split_pair_swap(f)] {
        let pa = Arc::new(pa);
        let kp = kpar(f, pa.group())?;
        let sm = SmashAlgebra::new(pa).map_err(|e| e.to_string())?;
        let m = Bimodule::regular(sm.algebra().clone());
        let xs = [
            ("B", kp.b_module()),
            ("regular", kp.regular_module()),
            ("D_g", kp.domain_module(1).map_err(|e| e.to_string())?.0),
        ];
        for (name, x) in xs {
            let d = gamma_lambda_check(&kp, &sm, &x, &m).map_err(|e| format!("X = {name}: {e}"))?;
            dims.push(d);
        }
        let fd = factorization_check(&kp, &sm, &m)?;
        dims.push(fd);
    }
    Ok(format!("hom dims {dims:?}"))
}

fn criterion7() -> Outcome {
    both_fields!(criterion7_field)
}

fn criterion8_field<F: Field>(f: &F) -> Result<String, String> {
    let mut r = rng(8);
    let mut total = 0;
    for g in groups() {
        let kp = kpar(f, &g)?;
        for k in 0..100 {
            let x = random_b_module(&kp, 1 + k % 3, &mut r);
            let y2 = random_b_module(&kp, 2 + k % 3, &mut r);
            let (y, j) = random_submodule(&y2, 1 + k % 2, &mut r);
            flatness_check(&kp, &x, &y, &y2, &j)
                .map_err(|e| format!("{} injection {k}: {e}", g.name()))?;
            total += 1;
        }
        let sm =
            SmashAlgebra::new(Arc::new(translation_partial(f, &g)?)).map_err(|e| e.to_string())?;
        let reg = kp.regular_module();
        for k in 0..10 {
            let (y, j) = random_submodule(&reg, 1 + k % 2, &mut r);
            smash_flatness_check(&kp, &sm, &y, &reg, &j)
                .map_err(|e| format!("{} smash injection {k}: {e}", g.name()))?;
            total += 1;
        }
    }
    Ok(format!("{total} injections"))
}

fn criterion8() -> Outcome {
    both_fields!(criterion8_field)
}

fn criterion9_field<F: Field>(f: &F) -> Result<String, String> {
    let pa = Arc::new(split_pair_partial(f));
    let kp = kpar(f, pa.group())?;
    let sm = SmashAlgebra::new(pa).map_err(|e| e.to_string())?;
    let m = Bimodule::regular(sm.algebra().clone());
    let rep = spectral_low_degree(&kp, &sm, &m, &SpectralOptions::default())
        .map_err(|e| e.to_string())?;
    if rep.hochschild_smash.len() != 3 || rep.hochschild_smash != rep.hpar_f1 {
        return Err(format!(
            "H(A x G, M) = {:?}, H_par(G, F1 M) = {:?}",
            rep.hochschild_smash, rep.hpar_f1
        ));
    }
    if rep.hochschild_base[1..].iter().any(|&d| d != 0) {
        return Err(format!("base not separable: {:?}", rep.hochschild_base));
    }
    Ok(format!("{:?}", rep.hochschild_smash))
}

fn criterion9() -> Outcome {
    both_fields!(criterion9_field)
}

fn criterion10_field<F: Field>(f: &F) -> Result<String, String> {
    let mut actions: Vec<PartialAction<F>> = vec![split_pair_partial(f), split_pair_swap(f)];
    for g in groups() {
        actions.push(translation_partial(f, &g)?);
    }
    let mut count = 0;
    for pa in actions {
        let pa = Arc::new(pa);
        let name = pa.group().name().to_string();
        let kp = kpar(f, pa.group())?;
        let sm = SmashAlgebra::new(pa).map_err(|e| e.to_string())?;
        let reg = Bimodule::regular(sm.algebra().clone());
        for (mname, m) in [("regular", reg.clone()), ("dual", dual_bimodule(&reg))] {
            let rep = spectral_low_degree(&kp, &sm, &m, &SpectralOptions::default())
                .map_err(|e| format!("{name} {mname}: {e}"))?;
            if rep.f_dim != rep.hpar_f1[0] {
                return Err(format!(
                    "{name} {mname}: dim F = {} but H^0_par = {}",
                    rep.f_dim, rep.hpar_f1[0]
                ));
            }
            let e10 = rep
                .e2(1, 0)
                .ok_or(format!("{name} {mname}: E^(1,0) unavailable"))?;
            if e10 > rep.hochschild_smash[1] {
                return Err(format!(
                    "{name} {mname}: E^(1,0) = {e10} > H^1 = {}",
                    rep.hochschild_smash[1]
                ));
            }
            if let Some(c) = rep.checks.iter().find(|c| !c.passed()) {
                return Err(format!("{name} {mname}: {}: {:?}", c.name, c.witness));
            }
            count += 1;
        }
    }
    Ok(format!("{count} (action, coefficient) pairs"))
}

fn criterion10() -> Outcome {
    both_fields!(criterion10_field)
}

const DETERMINISM_INPUTS: [&str; 4] = [
    r#"{"group": {"type": "symmetric", "n": 3}, "field": "F2", "tasks": [{"task": "kpar"}, {"task": "hpar", "module": "B", "max_degree": 2}, {"task": "orthogonalize", "seed": 5}]}"#,
    r#"{"fixture": "split_pair_partial", "tasks": [{"task": "validate"}, {"task": "smash"}, {"task": "hochschild"}, {"task": "spectral-check"}]}"#,
    r#"{"fixture": "dual_numbers_partial", "field": "F2", "tasks": [{"task": "spectral-check", "bimodule": "dual"}]}"#,
    r#"{"fixture": "nonunital_example", "tasks": [{"task": "validate"}]}"#,
];

fn suite_reports() -> Result<Vec<String>, String> {
    DETERMINISM_INPUTS
        .iter()
        .map(|text| {
            let spec =
                ProblemSpec::parse_str(text).map_err(|e| format!("{}: {}", e.path, e.message))?;
            let run =
                execute(&spec, &spec.tasks, &Flags::default(), None).map_err(|e| e.message)?;
            Ok(output::canonical_json(&run.document))
        })
        .collect()
}

fn criterion11() -> Outcome {
    let a = suite_reports()?;
    let b = suite_reports()?;
    if a != b {
        return Err("reports differ between runs".into());
    }
    let bin = env!("CARGO_BIN_EXE_parsmash");
    let dir = std::env::temp_dir().join(format!("parsmash-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let input = dir.join("input.json");
    std::fs::write(&input, DETERMINISM_INPUTS[1]).map_err(|e| e.to_string())?;
    let run = || {
        std::process::Command::new(bin)
            .arg("run")
            .arg(&input)
            .output()
            .map_err(|e| e.to_string())
    };
    let (x, y) = (run()?, run()?);
    std::fs::remove_dir_all(&dir).ok();
    if x.stdout != y.stdout || x.stdout.is_empty() {
        return Err("binary output differs between runs".into());
    }
    let bytes: usize = a.iter().map(String::len).sum();
    Ok(format!("{} reports, {bytes} bytes identical", a.len() + 1))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("axiom suites and the non-associative witness", criterion1),
        ("K_par G dimensions", criterion2),
        ("bracket relations and words", criterion3),
        ("epsilon identities", criterion4),
        ("triple agreement in low degree", criterion5),
        (
            "semilattice idempotents and principal generators",
            criterion6,
        ),
        ("Gamma/Lambda isomorphisms and factorization", criterion7),
        ("flatness on random injections", criterion8),
        ("spectral collapse for a separable base", criterion9),
        ("degree-0 identity and five-term inequality", criterion10),
        ("determinism", criterion11),
    ];
    let mut failed = 0;
    println!("tolerance: exact arithmetic, zero tolerance on every comparison");
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail}) [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
