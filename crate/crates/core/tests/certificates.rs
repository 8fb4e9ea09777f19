use ndepth_core::certificates::{
    check_certificate, example_5_1_erratum, example_5_4_erratum, paper_corpus, parse_certificate,
    serialize_certificate, theorem_family, Claim, ClaimVerdict,
};
use ndepth_core::formulas::{closed_form, sorted_grid};
use ndepth_core::lattice::ValidationReport;

#[test]
fn corpus_names_in_order() {
    let names: Vec<String> = paper_corpus().into_iter().map(|c| c.name).collect();
    assert_eq!(
        names,
        [
            "case-k1", "case-k2", "example-3.1", "example-3.2", "example-4.1", "example-4.2",
            "example-5.1", "example-5.2", "example-5.3", "example-5.4", "example-5.5"
        ]
    );
}

#[test]
fn every_claim_matches_recomputed_tops() {
    // independently of the checker: evaluate min over tops on the grid and
    // compare with the claimed min-term wherever the structure is valid
    for c in paper_corpus().into_iter().chain([example_5_1_erratum(), example_5_4_erratum()]) {
        let report = check_certificate(&c);
        let Some(p) = c.partition() else {
            assert_eq!(c.name, "example-5.4");
            continue;
        };
        let Claim::MinTerm(term) = &c.claim else { unreachable!() };
        let agrees = sorted_grid(c.k, 4).iter().all(|w| p.ndepth(w).unwrap() == term.evaluate(w));
        assert_eq!(agrees, report.verified(), "{}", c.name);
        assert_eq!(agrees, c.name != "example-5.1", "{}", c.name);
    }
}

#[test]
fn printed_example_5_4_is_rejected_structurally() {
    let c = paper_corpus().into_iter().find(|c| c.name == "example-5.4").unwrap();
    let r = check_certificate(&c);
    assert!(matches!(r.structure, ValidationReport::DoubleCover(_)));
    assert_eq!(r.claim, ClaimVerdict::Skipped);
    assert!(r.erratum.is_some());
}

#[test]
fn families_attain_closed_form_on_grid() {
    for k in 3..=5 {
        let family: Vec<_> = theorem_family(k).iter().map(|c| c.partition().unwrap()).collect();
        for w in sorted_grid(k, 3) {
            let best = family.iter().map(|p| p.ndepth(&w).unwrap()).max().unwrap();
            assert_eq!(best, closed_form(&w).unwrap(), "k={k} {w}");
        }
    }
}

#[test]
fn text_round_trip_for_variants() {
    for c in [example_5_1_erratum(), example_5_4_erratum()] {
        let text = serialize_certificate(&c);
        assert_eq!(parse_certificate(&text).unwrap(), c);
    }
}
