use k3walls::charge::ChargeFamily;
use k3walls::mukai::K3Context;
use k3walls::paper::{verify, CheckStatus, CHECK_IDS};

#[test]
fn preset_passes_everything() {
    let rep = verify(&K3Context::gushel_mukai(), &ChargeFamily::gushel_mukai(), 1).unwrap();
    print!("{}", rep.render_table());
    let ids: Vec<&str> = rep.checks.iter().map(|c| c.id.as_str()).collect();
    assert_eq!(ids, CHECK_IDS);
    assert!(rep.all_pass());
}

#[test]
fn without_exclusions_enumeration_checks_fail() {
    let ctx = K3Context::gushel_mukai().with_excluded_degrees([]);
    let rep = verify(&ctx, &ChargeFamily::gushel_mukai(), 1).unwrap();
    print!("{}", rep.render_table());
    for i in [0, 3, 4, 5] {
        assert!(matches!(rep.checks[i].status, CheckStatus::Fail(_)), "{}", rep.checks[i].id);
    }
    for i in [2, 10, 11] {
        assert!(rep.checks[i].status.is_pass());
    }
}

#[test]
fn without_lines_or_conics_conditional_checks_pass() {
    let ctx = K3Context::gushel_mukai().with_lines(false).with_conics(false);
    let rep = verify(&ctx, &ChargeFamily::gushel_mukai(), 1).unwrap();
    print!("{}", rep.render_table());
    assert!(rep.checks[7].status.is_pass());
    assert!(rep.checks[8].status.is_pass());
}

#[test]
fn report_round_trips_through_json() {
    let rep = verify(&K3Context::gushel_mukai(), &ChargeFamily::gushel_mukai(), 1).unwrap();
    let text = serde_json::to_string_pretty(&rep).unwrap();
    let back: k3walls::paper::VerifyReport = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&back).unwrap(), text);
}
