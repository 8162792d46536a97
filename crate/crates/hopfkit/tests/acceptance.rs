//! Acceptance suite: one test per headline guarantee of the crate, each
//! checked with exact arithmetic (zero tolerance) and a wall-clock budget.
//! The tests serialize on a lock so the budgets measure isolated runs.

use std::process::Command;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use hopfkit::algebra::{bimodule_hom_basis, in_span, tensor_over, Bimodule};
use hopfkit::check::CheckReport;
use hopfkit::coalg::{antipode, free_module_coalgebra, Coalgebra, ComoduleAlgebra};
use hopfkit::coring::{
    conjugate_coring, mate_inverse, mate_of, sweedler_coring, trivial_coring, universal_factor,
    ExtensionData,
};
use hopfkit::exactla::{ExactField, ExactMatrix};
use hopfkit::hilbert90::{
    cohomologous, h1_classes, to_hopf_module, twist_semilinear, Cocycle, GroupAction,
    GroupPresentation, SemilinearModule,
};
use hopfkit::hopfmod::{
    adjunction_counit, canonical_map, check_hopf_equals_aux, check_operator_identities,
    coinv_projector, fthm_report, functor_b, fusion_operator, galois_map, hopf_module_isomorphism,
    hopf_operator, is_bijective, is_galois, regular_hopf_module, round_trip, schneider_colax,
    search_failing_hopf_module, smash_product, BcBimodule,
};
use hopfkit::library;

static LOCK: Mutex<()> = Mutex::new(());

fn q() -> ExactField {
    ExactField::rationals()
}

fn gf(p: u64) -> ExactField {
    ExactField::prime(p).unwrap()
}

/// Runs the body under the suite lock and asserts its wall-clock budget.
fn timed(budget: Duration, body: impl FnOnce()) {
    let guard = LOCK.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    body();
    let elapsed = start.elapsed();
    drop(guard);
    assert!(elapsed <= budget, "runtime budget {budget:?} exceeded: {elapsed:?}");
}

fn all_comodule_algebras() -> Vec<(&'static str, ComoduleAlgebra)> {
    vec![
        ("kc2", library::kc2_comodule_algebra(q())),
        ("kc2-dual", library::dual_c2_comodule_algebra(gf(2))),
        ("sweedler", library::sweedler_comodule_algebra()),
        ("idempotent", library::idempotent_comodule_algebra(q())),
        ("f4", library::f4_comodule_algebra()),
        ("f8", library::f8_comodule_algebra()),
    ]
}

fn f4_action() -> GroupAction {
    GroupAction::new(
        GroupPresentation::cyclic(2),
        library::f4(),
        vec![ExactMatrix::identity(gf(2), 2), library::f4_frobenius()],
    )
    .unwrap()
}

fn f8_action() -> GroupAction {
    let frob = library::f8_frobenius();
    GroupAction::new(
        GroupPresentation::cyclic(3),
        library::f8(),
        vec![ExactMatrix::identity(gf(2), 3), frob.clone(), frob.mul(&frob)],
    )
    .unwrap()
}

/// One structure constant, made wrong by the smallest possible amount.
fn bump(m: &mut ExactMatrix, r: usize, c: usize) {
    let f = m.field;
    let v = f.add(&m.get(r, c).clone(), &f.one());
    m.set(r, c, v);
}

/// A corrupted object must fail with named, index-carrying violations.
fn assert_caught(name: &str, report: CheckReport) {
    assert!(!report.passed(), "{name}: corruption was not detected");
    assert!(
        report.violations.iter().all(|v| !v.law.is_empty()),
        "{name}: violation without a law name"
    );
    assert!(
        report.violations.iter().any(|v| !v.indices.is_empty()),
        "{name}: no violation carries a witnessing index"
    );
}

#[test]
fn criterion_01_axiom_suites_pass_and_corrupted_mutants_are_caught() {
    timed(Duration::from_secs(1), || {
        let mut suites: Vec<(&str, CheckReport)> = vec![
            ("kc2 algebra", library::kc2_algebra(q()).check()),
            ("idempotent algebra", library::idempotent_algebra(q()).check()),
            ("f4 algebra", library::f4().check()),
            ("f8 algebra", library::f8().check()),
            ("sweedler algebra", library::sweedler_algebra().check()),
            ("kc2 coalgebra", library::kc2_coalgebra(q()).check()),
            ("sweedler coalgebra", library::sweedler_coalgebra().check()),
            ("trivial coalgebra", Coalgebra::trivial(q()).check()),
            ("kc2 bialgebra", library::kc2_bialgebra(q()).check()),
            ("idempotent bialgebra", library::idempotent_bialgebra(q()).check()),
            ("sweedler bialgebra", library::sweedler_bialgebra().check()),
            ("dual c2 bialgebra", library::dual_c2_bialgebra(gf(2)).check()),
            ("dual c3 bialgebra", library::dual_cyclic_bialgebra(gf(2), 3).check()),
            ("kc2 hopf", library::kc2_hopf(q()).check()),
            ("sweedler hopf", library::sweedler_hopf().check()),
            ("dual c2 hopf", library::dual_c2_hopf(gf(2)).check()),
            ("dual c3 hopf", library::dual_cyclic_hopf(gf(2), 3).check()),
            (
                "free module coalgebra",
                free_module_coalgebra(&library::kc2_bialgebra(q()), &library::kc2_coalgebra(q()))
                    .check(),
            ),
        ];
        for (name, ca) in all_comodule_algebras() {
            suites.push((name, ca.check()));
            let n = regular_hopf_module(&ca).unwrap();
            suites.push((name, n.check()));
        }
        for (name, report) in suites {
            assert!(report.passed(), "{name} suite failed:\n{report}");
        }

        let mut alg = library::kc2_algebra(q());
        bump(&mut alg.mult, 0, 0);
        assert_caught("algebra mutant", alg.check());

        let mut coalg = library::sweedler_coalgebra();
        bump(&mut coalg.comult, 0, 0);
        assert_caught("coalgebra mutant", coalg.check());

        let mut bialg = library::kc2_bialgebra(q());
        bump(&mut bialg.coalg.comult, 0, 0);
        assert_caught("bialgebra mutant", bialg.check());

        let mut hopf = library::sweedler_hopf();
        bump(&mut hopf.antipode, 0, 0);
        assert_caught("hopf mutant", hopf.check());

        let mut ca = library::f4_comodule_algebra();
        bump(&mut ca.nu, 0, 0);
        assert_caught("comodule algebra mutant", ca.check());

        let mut mc =
            free_module_coalgebra(&library::kc2_bialgebra(q()), &library::kc2_coalgebra(q()));
        bump(&mut mc.action, 0, 0);
        assert_caught("module coalgebra mutant", mc.check());

        let mut hm = regular_hopf_module(&library::kc2_comodule_algebra(q())).unwrap();
        bump(&mut hm.action, 0, 0);
        assert_caught("hopf module action mutant", hm.check());

        let mut hm = regular_hopf_module(&library::sweedler_comodule_algebra()).unwrap();
        bump(&mut hm.coaction, 0, 0);
        assert_caught("hopf module coaction mutant", hm.check());
    });
}

#[test]
fn criterion_02_antipode_oracle_with_fusion_cross_check() {
    timed(Duration::from_secs(1), || {
        let kc2 = antipode(&library::kc2_bialgebra(q())).unwrap();
        assert!(kc2.antipode.is_identity(), "kc2 antipode is not the identity on the basis");
        assert!(kc2.check().passed());
        assert!(is_bijective(&fusion_operator(&kc2.bialg, 1)));

        let h4 = antipode(&library::sweedler_bialgebra()).unwrap();
        assert!(h4.check().passed());
        let b = &h4.bialg;
        let d = b.dim();
        let id = ExactMatrix::identity(b.field(), d);
        let counit_to_unit = b.alg.unit.mul(&b.coalg.counit);
        assert_eq!(
            b.alg.mult.mul(&h4.antipode.kron(&id)).mul(&b.coalg.comult),
            counit_to_unit,
            "left antipode identity fails for the four dimensional hopf algebra"
        );
        assert_eq!(
            b.alg.mult.mul(&id.kron(&h4.antipode)).mul(&b.coalg.comult),
            counit_to_unit,
            "right antipode identity fails for the four dimensional hopf algebra"
        );
        assert!(is_bijective(&fusion_operator(b, 1)));

        let idem = library::idempotent_bialgebra(q());
        assert!(antipode(&idem).is_err(), "idempotent monoid bialgebra has no antipode");
        assert!(!is_bijective(&fusion_operator(&idem, 1)));
    });
}

#[test]
fn criterion_03_canonical_maps_invertible_and_galois_rank_factorizes() {
    timed(Duration::from_secs(1), || {
        let f4ca = library::f4_comodule_algebra();
        let can = canonical_map(&f4ca).unwrap();
        assert_eq!((can.matrix.rows, can.matrix.cols), (4, 4));
        assert_eq!(can.matrix.field, gf(2));
        assert!(is_bijective(&can.matrix));

        let kc2ca = library::kc2_comodule_algebra(q());
        assert!(is_bijective(&canonical_map(&kc2ca).unwrap().matrix));

        // The Galois operator at (X, M) is X ⊗ (its value at the ground
        // field and the base) ⊗ M, so over a ground-field base its rank is
        // multiplicative in dim X and dim M. X carries the group coalgebra
        // of order two; the idempotent monoid keeps the identity honest on
        // a non-invertible instance.
        let idem = library::idempotent_comodule_algebra(q());
        for ca in [&kc2ca, &f4ca, &idem] {
            let f = ca.a.field;
            let dx = library::kc2_coalgebra(f).dim;
            let base_rank = {
                let m = Bimodule::left_module(&ca.binc.sub, 1, ExactMatrix::identity(f, 1))
                    .unwrap();
                galois_map(ca, 1, &m).unwrap().matrix.rank()
            };
            for rank in 1..=2 {
                let m = Bimodule::left_module(&ca.binc.sub, rank, ExactMatrix::identity(f, rank))
                    .unwrap();
                let g = galois_map(ca, dx, &m).unwrap().matrix;
                assert_eq!(g.rank(), dx * base_rank * rank);
                if !std::ptr::eq(ca, &idem) {
                    assert!(is_bijective(&g));
                }
            }
        }
    });
}

#[test]
fn criterion_04_round_trips_bijective_for_all_modules_up_to_dim_four() {
    timed(Duration::from_secs(10), || {
        // Over a ground-field base every module is free, so ranks 1..=4
        // exhaust the modules of dimension at most four up to isomorphism.
        for ca in [library::kc2_comodule_algebra(q()), library::f4_comodule_algebra()] {
            for rank in 1..=4 {
                let m = BcBimodule::free_object(&ca.binc.sub, rank);
                let trip = round_trip(&ca, &m).unwrap();
                assert_eq!(trip.part.bimodule.dim, m.dim, "coinvariants dimension drifted");
                assert!(is_bijective(&trip.unit));
                let (counit, _) =
                    adjunction_counit(&ca, &m.c, &trip.induced.hopf_module).unwrap();
                assert!(is_bijective(&counit));
            }
        }
    });
}

#[test]
fn criterion_05_idempotent_monoid_counit_fails_on_a_concrete_witness() {
    timed(Duration::from_secs(10), || {
        let ca = library::idempotent_comodule_algebra(q());
        let witness = search_failing_hopf_module(&ca, 4).unwrap().expect("witness exists");
        assert!(witness.check().passed(), "the witness itself must be a valid hopf module");
        assert_eq!(witness.dim, 1);
        assert_eq!(witness.action, ExactMatrix::from_i64_rows(q(), &[&[1, 0]]));
        assert_eq!(witness.coaction, ExactMatrix::from_i64_rows(q(), &[&[1], &[0]]));

        let c = Coalgebra::trivial(q());
        let (counit, _) = adjunction_counit(&ca, &c, &witness).unwrap();
        assert!(!is_bijective(&counit));

        let report = fthm_report(
            &ca,
            &c,
            &[("base".to_string(), BcBimodule::base_object(&ca.binc.sub))],
            &[("witness".to_string(), witness)],
            None,
        )
        .unwrap();
        assert!(!report.galois);
        assert!(report.consistent);
        assert!(report.objects.iter().any(|o| !o.counit_bijective));
    });
}

#[test]
fn criterion_06_operator_identities_hold_exactly() {
    timed(Duration::from_secs(5), || {
        for (name, ca) in all_comodule_algebras() {
            let f = ca.a.field;
            for dx in 1..=2 {
                let mut rank = 1;
                while ca.a.dim * rank <= 4 {
                    let m =
                        Bimodule::left_module(&ca.binc.sub, rank, ExactMatrix::identity(f, rank))
                            .unwrap();
                    let report = check_operator_identities(&ca, dx, &m).unwrap();
                    assert!(report.passed(), "{name} dx={dx} rank={rank}:\n{report}");
                    rank += 1;
                }
                let reg = Bimodule::left_module(&ca.a, ca.a.dim, ca.a.mult.clone()).unwrap();
                let report = check_hopf_equals_aux(&ca, dx, &reg).unwrap();
                assert!(report.passed(), "{name} dx={dx} regular module:\n{report}");
            }
        }
    });
}

#[test]
fn criterion_07_conjugate_coring_universal_factor_and_mates() {
    timed(Duration::from_secs(2), || {
        let ext = ExtensionData::ground(&library::f4());
        let triv = trivial_coring(&ext.inc.sub);
        let conj = conjugate_coring(&ext, &triv).unwrap();
        assert_eq!(
            conj.coring,
            sweedler_coring(&ext),
            "conjugating the trivial coring must rebuild the canonical coring byte for byte"
        );

        let ca = library::f4_comodule_algebra();
        let c = Coalgebra::trivial(gf(2));
        let colax = schneider_colax(&ca, &c).unwrap();
        let lifted = conjugate_coring(&colax.ext, &colax.base_coring).unwrap();
        let rho = universal_factor(&colax.ext, &lifted, &colax.dk, &colax.sigma).unwrap();
        assert!(rho.check().passed());
        let reg = Bimodule::left_module(&ca.a, ca.a.dim, ca.a.mult.clone()).unwrap();
        assert_eq!(rho.map, hopf_operator(&ca, c.dim, &reg).unwrap().matrix);

        let d = &conj.coring;
        let a_left = Bimodule::ambient_left(&ext.inc);
        let a_right = Bimodule::ambient_right(&ext.inc);
        let ac = tensor_over(&a_left, &triv.carrier).unwrap();
        let ca_tensor = tensor_over(&triv.carrier, &a_right).unwrap();

        let forward =
            bimodule_hom_basis(&ac.bim, &d.carrier.restrict_right(&ext.inc).unwrap()).unwrap();
        assert!(!forward.is_empty());
        for h in &forward {
            let tau = mate_of(&ext, &triv, d, &h.matrix).unwrap();
            assert_eq!(mate_inverse(&ext, &triv, d, &tau).unwrap(), h.matrix);
        }
        let backward = bimodule_hom_basis(&ca_tensor.bim, &d.carrier.restrict_left(&ext.inc).unwrap())
            .unwrap();
        assert!(!backward.is_empty());
        for h in &backward {
            let sigma = mate_inverse(&ext, &triv, d, &h.matrix).unwrap();
            assert_eq!(mate_of(&ext, &triv, d, &sigma).unwrap(), h.matrix);
        }
    });
}

#[test]
fn criterion_08_coinvariant_projector_splits_onto_the_coinvariants() {
    timed(Duration::from_secs(1), || {
        let cases = vec![
            (library::kc2_hopf(q()), library::kc2_comodule_algebra(q())),
            (library::dual_c2_hopf(gf(2)), library::dual_c2_comodule_algebra(gf(2))),
            (library::sweedler_hopf(), library::sweedler_comodule_algebra()),
        ];
        for (hopf, ca) in cases {
            let n = regular_hopf_module(&ca).unwrap();
            let pi = coinv_projector(&hopf, &n).unwrap();
            assert_eq!(pi.mul(&pi), pi, "projector is not idempotent");
            let part = functor_b(&ca, &Coalgebra::trivial(ca.a.field), &n).unwrap();
            for col in 0..n.dim {
                assert!(in_span(&part.inclusion, &pi.column(col)));
            }
            for col in 0..part.inclusion.cols {
                let v = part.inclusion.column(col);
                assert_eq!(pi.mul(&v), v);
            }
            assert_eq!(pi.rank(), part.bimodule.dim);
        }
    });
}

#[test]
fn criterion_09_hilbert_90_class_counts_and_groupoid_equivalence() {
    timed(Duration::from_secs(5), || {
        let f4_module = SemilinearModule::regular(&f4_action());
        let report = h1_classes(&f4_module).unwrap();
        assert_eq!(report.cocycles, 3);
        assert_eq!(report.classes.len(), 1);
        assert_eq!(report.classes[0].1, 3);

        let report = h1_classes(&SemilinearModule::regular(&f8_action())).unwrap();
        assert_eq!(report.cocycles, 7);
        assert_eq!(report.classes.len(), 1);
        assert_eq!(report.classes[0].1, 7);

        let ground = hopfkit::algebra::Algebra::ground(gf(3));
        let action = GroupAction::trivial(GroupPresentation::cyclic(2), ground);
        let signs = SemilinearModule::regular(&action);
        let report = h1_classes(&signs).unwrap();
        assert_eq!(report.cocycles, 2);
        assert_eq!(report.classes.len(), 2);
        assert!(report.classes.iter().all(|(_, size)| *size == 1));

        // Cohomology agrees with the isomorphism classification of twists:
        // all cocycle pairs on F4 are cohomologous with isomorphic twists,
        // and the two sign cocycles over GF(3) are neither.
        let a = f4_module.action.algebra.clone();
        let id = ExactMatrix::identity(gf(2), 2);
        let omega = a.left_mult_basis(1);
        let cocycles: Vec<Cocycle> = [id.clone(), omega.clone(), omega.mul(&omega)]
            .into_iter()
            .map(|v| Cocycle::new(f4_module.clone(), vec![id.clone(), v]).unwrap())
            .collect();
        for phi in &cocycles {
            assert!(phi.check().passed());
            for psi in &cocycles {
                let witness = cohomologous(phi, psi).unwrap();
                let m = to_hopf_module(&twist_semilinear(phi)).unwrap();
                let n = to_hopf_module(&twist_semilinear(psi)).unwrap();
                let iso = hopf_module_isomorphism(&m, &n).unwrap();
                assert_eq!(witness.is_some(), iso.is_some());
                assert!(witness.is_some());
            }
        }

        let one = ExactMatrix::identity(gf(3), 1);
        let minus = one.scale(&gf(3).from_i64(-1));
        let phi = Cocycle::new(signs.clone(), vec![one.clone(), one.clone()]).unwrap();
        let psi = Cocycle::new(signs.clone(), vec![one, minus]).unwrap();
        assert!(cohomologous(&phi, &psi).unwrap().is_none());
        let m = to_hopf_module(&twist_semilinear(&phi)).unwrap();
        let n = to_hopf_module(&twist_semilinear(&psi)).unwrap();
        assert!(hopf_module_isomorphism(&m, &n).unwrap().is_none());
    });
}

#[test]
fn criterion_10_smash_invertibility_matches_the_canonical_map() {
    timed(Duration::from_secs(1), || {
        for (name, ca) in all_comodule_algebras() {
            let smash = smash_product(&ca).unwrap();
            assert!(smash.algebra.check().passed(), "{name} smash product is not an algebra");
            assert_eq!(
                smash.invertible,
                is_galois(&ca).unwrap(),
                "{name}: evaluation invertibility disagrees with the canonical map"
            );
        }
    });
}

#[test]
fn criterion_11_cli_reports_deterministic_with_exit_code_contract() {
    let _guard = LOCK.lock().unwrap_or_else(|e| e.into_inner());
    let exe = env!("CARGO_BIN_EXE_hopfkit");
    let run = |args: &[&str]| Command::new(exe).args(args).output().unwrap();

    let builtins = [
        ("kc2", 0),
        ("kc2-dual", 0),
        ("f4-galois", 0),
        ("f8-galois", 0),
        ("sweedler-h4", 0),
        ("idempotent-monoid", 1),
    ];
    for (name, code) in builtins {
        let first = run(&["run", "--builtin", name, "--format", "machine"]);
        let second = run(&["run", "--builtin", name, "--format", "machine"]);
        assert_eq!(first.status.code(), Some(code), "{name} exit code");
        assert_eq!(second.status.code(), Some(code), "{name} exit code on the second run");
        assert!(!first.stdout.is_empty());
        assert_eq!(first.stdout, second.stdout, "{name} machine report is not reproducible");
    }
    for name in ["kc2", "f4-galois", "idempotent-monoid"] {
        let first = run(&["run", "--builtin", name]);
        let second = run(&["run", "--builtin", name]);
        assert_eq!(first.stdout, second.stdout, "{name} text report is not reproducible");
    }

    assert_eq!(run(&["run"]).status.code(), Some(2), "missing input must be a usage error");
    assert_eq!(run(&["run", "--builtin", "nonesuch"]).status.code(), Some(2));
    assert_eq!(run(&["check", "--input", "/no/such/file.json"]).status.code(), Some(2));
}
