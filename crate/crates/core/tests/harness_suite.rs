use orthokernel::harness::{
    emit_counterexamples, property_ids, run_property, run_suite, FormSource, GenConfig, SuiteConfig, AXIOM_PROPERTIES,
};
use orthokernel::orthogonality::perp_g;
use orthokernel::QuadraticSpace;
use serde_json::Value;
use std::sync::Arc;

#[test]
fn symmetry_holds_over_a_thousand_trials() {
    for form in FormSource::defaults(4) {
        let r = run_property("P-SYM", &GenConfig::new(4, form, 2024), 1000).unwrap();
        assert_eq!((r.trials, r.violations), (1000, 0), "{r:?}");
    }
}

#[test]
fn inclusion_implies_orthogonality_in_every_form() {
    for n in 1..=5 {
        for form in FormSource::defaults(n) {
            let r = run_property("P-ISO", &GenConfig::new(n, form, n as u64), 200).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.vacuous, 0);
        }
    }
}

#[test]
fn suite_report_is_sorted_and_self_describing() {
    let mut cfg = SuiteConfig::new(3, 10, 5);
    cfg.properties = vec!["P-SYM".into(), "P-AXO-A".into(), "P-SYM".into()];
    let report = run_suite(&cfg).unwrap().without_timing();
    let ids: Vec<&str> = report.reports.iter().map(|r| r.property_id.as_str()).collect();
    assert_eq!(ids, ["P-AXO-A", "P-AXO-A", "P-AXO-A", "P-SYM", "P-SYM", "P-SYM"]);
    let forms: Vec<&str> = report.reports[..3].iter().map(|r| r.form.as_str()).collect();
    let labels: Vec<String> = FormSource::defaults(3).iter().map(FormSource::label).collect();
    assert_eq!(forms, labels);
    assert!(report.reports.iter().all(|r| r.elapsed_ms == 0 && r.dim == 3 && r.trials == 10));

    let doc: Value = serde_json::to_value(&report).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["config"]["properties"], serde_json::json!(["P-AXO-A", "P-SYM"]));
    assert_eq!(doc["config"]["seed"], 5);
    let first = doc["reports"][0].as_object().unwrap();
    for key in ["property_id", "form", "dim", "trials", "violations", "vacuous", "elapsed_ms"] {
        assert!(first.contains_key(key), "missing {key}");
    }
    assert!(!first.contains_key("first_counterexample"));
}

#[test]
fn suite_output_depends_only_on_the_seed() {
    let run = |seed| {
        let mut cfg = SuiteConfig::new(4, 40, seed);
        cfg.properties = AXIOM_PROPERTIES.iter().map(|s| s.to_string()).collect();
        serde_json::to_string(&run_suite(&cfg).unwrap().without_timing()).unwrap()
    };
    let first = run(42);
    assert_eq!(first, run(42));
    assert_ne!(first, run(43));
}

#[test]
fn unknown_ids_and_empty_forms_are_rejected() {
    let mut cfg = SuiteConfig::new(3, 1, 0);
    cfg.properties = vec!["P-NOPE".into()];
    assert!(run_suite(&cfg).is_err());
    let mut cfg = SuiteConfig::new(3, 1, 0);
    cfg.forms.clear();
    assert!(run_suite(&cfg).is_err());
}

#[test]
fn registry_covers_every_axiom_property() {
    let ids = property_ids();
    for id in AXIOM_PROPERTIES {
        assert!(ids.contains(id), "{id}");
    }
    assert!(ids.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn counterexamples_survive_reload_and_recheck() {
    let s = Arc::new(QuadraticSpace::euclidean(3).unwrap());
    let instances = emit_counterexamples().unwrap();
    assert_eq!(instances.len(), 2);
    for inst in &instances {
        let flats = inst.reload(&s).unwrap();
        assert!(perp_g(&flats["A"], &flats["B"]).unwrap());
        assert!(!perp_g(&flats["A"], &flats["C"]).unwrap());
        assert!(inst.checks.iter().all(|c| c.expected == c.actual));
    }
}
