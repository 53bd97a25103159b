use morse_entropy::counter::Boundary;
use morse_entropy::laws::{
    check_bounds_and_max, check_concavity, check_domination, check_duality, check_fekete, check_laplace,
    check_superadditivity, check_unit_lower_bound, check_upper_semicontinuity, random_spectra, random_superadditivity,
    run_suite, standard_windows, Conventions, Law, Suite, SuiteParams, LAPLACE_BETAS,
};
use morse_entropy::{parse_rational, Preset};
use num_rational::Rational64;

fn r(text: &str) -> Rational64 {
    parse_rational(text).unwrap()
}

#[test]
fn fekete_examples() {
    let circle = Preset::Circle.spectrum();
    let rep = check_fekete(&circle, r("1/2"), r("1/10"), 256).unwrap();
    assert!(rep.passed, "{:?}", rep.violations);
    let rep = check_fekete(&circle, r("0.37"), r("0.05"), 256).unwrap();
    assert!(rep.passed, "{:?}", rep.violations);
    assert!(rep.instances_checked > 1000);
}

#[test]
fn fekete_on_random_spectra() {
    for spec in random_spectra(5, 6) {
        let rep = check_fekete(&spec, r("1/3"), r("1/8"), 96).unwrap();
        assert!(rep.passed, "{spec:?}: {:?}", rep.violations);
    }
}

#[test]
fn bounds_examples() {
    let rep = check_bounds_and_max(&Preset::Circle.spectrum(), 101).unwrap();
    assert!(rep.passed);
    let rep = check_bounds_and_max(&Preset::Torus.spectrum(), 11).unwrap();
    assert!(rep.passed);
    for spec in random_spectra(2024, 50) {
        let rep = check_bounds_and_max(&spec, 21).unwrap();
        assert!(rep.passed, "{spec:?}: {:?}", rep.violations);
    }
}

#[test]
fn superadditivity_random_instances() {
    let rep = random_superadditivity(11, 120).unwrap();
    assert!(rep.passed);
    // two kinds per instance
    assert_eq!(rep.instances_checked, 240);
    assert_eq!(rep.seed, Some(11));
}

#[test]
fn superadditivity_with_closed_betti_windows() {
    let conv = Conventions {
        critical: Boundary::ClosedClosed,
        betti: Boundary::ClosedClosed,
    };
    let rep = check_superadditivity(&Preset::Torus.spectrum(), 4, 7, r("1/4"), r("3/5"), r("1/10"), conv).unwrap();
    assert!(rep.passed);
}

#[test]
fn flipping_conventions_can_break_domination() {
    // A closed Betti window against a half-open critical window counts the
    // upper endpoint on one side only.
    let flipped = Conventions {
        critical: Boundary::ClosedOpen,
        betti: Boundary::ClosedClosed,
    };
    let rep = check_domination(&Preset::Circle.spectrum(), 6, &standard_windows(), flipped).unwrap();
    assert!(!rep.passed);
    let rep = check_domination(
        &Preset::Circle.spectrum(),
        6,
        &standard_windows(),
        Conventions::default(),
    )
    .unwrap();
    assert!(rep.passed);
}

#[test]
fn concavity_and_duality() {
    for spec in [Preset::Circle.spectrum(), Preset::Torus.spectrum()]
        .into_iter()
        .chain(random_spectra(3, 10))
    {
        assert!(check_concavity(&spec, 101, 1e-9).unwrap().passed);
        assert!(check_duality(&spec, 21, 1e-8).unwrap().passed);
    }
}

#[test]
fn unit_lower_bound() {
    for spec in [Preset::Circle.spectrum(), Preset::Torus.spectrum()] {
        let rep = check_unit_lower_bound(&spec, 32).unwrap();
        assert!(rep.passed);
        assert_eq!(rep.instances_checked, (1..=32u64).map(|n| n + 1).sum::<u64>());
    }
}

#[test]
fn upper_semicontinuity_on_circle() {
    let rep = check_upper_semicontinuity(&Preset::Circle.spectrum(), 101, 24, 1e-6).unwrap();
    assert!(rep.passed, "{:?}", rep.violations);
}

#[test]
fn laplace_grid() {
    let rep = check_laplace(&LAPLACE_BETAS, 256).unwrap();
    assert!(rep.passed, "{:?}", rep.violations);
}

#[test]
fn full_suite_on_torus_is_clean_and_deterministic() {
    let params = SuiteParams::with_seed(7);
    let a = run_suite(&Preset::Torus.spectrum(), Suite::All, &params).unwrap();
    let b = run_suite(&Preset::Torus.spectrum(), Suite::All, &params).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.len(), 9);
    for rep in &a {
        assert!(rep.passed, "{}: {:?}", rep.law, rep.violations);
        assert_eq!(rep.seed, Some(7));
    }
    let only = run_suite(&Preset::Circle.spectrum(), Suite::Only(Law::Duality), &params).unwrap();
    assert_eq!(only.len(), 1);
    assert_eq!(only[0].law, Law::Duality);
}
