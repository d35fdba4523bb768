//! Every registry claim against brute force for m <= 5 inside its hypothesis.

use tracepp::campaign::{run_theorem, CampaignOptions};
use tracepp::families::{registry, Claim};

#[test]
fn every_entry_agrees_with_brute_force() {
    let opts = CampaignOptions::default();
    for entry in registry() {
        // the main theorem has six parameters; m = 2 is its full sweep here
        let max_m = if entry.id == "T-MAIN" { 2 } else { 5 };
        for m in 2..=max_m {
            let mut disagreements = Vec::new();
            let summaries = run_theorem(&entry, None, m, &opts, &mut |r| {
                if r.disagrees() {
                    disagreements.push(format!("{} {}", r.family_id, r.params.compact()));
                }
            })
            .unwrap();
            assert!(disagreements.is_empty(), "m={m}: {disagreements:?}");
            for (k, s) in summaries.iter().enumerate() {
                assert_eq!(s.skipped, !entry.variants[k].hypothesis.holds(m), "{} m={m}", s.family_id);
                assert_eq!(s.unclaimed, 0, "{} m={m}", s.family_id);
            }
        }
    }
}

#[test]
fn outside_hypothesis_only_gamma_one_is_unclaimed() {
    let opts = CampaignOptions { ignore_hypothesis: true, ..CampaignOptions::default() };
    for (id, m) in [("F6", 2), ("F6", 5), ("F7", 4)] {
        let entry = registry().into_iter().find(|e| e.id == id).unwrap();
        let mut statuses = Vec::new();
        run_theorem(&entry, None, m, &opts, &mut |r| {
            statuses.push((r.params.g.clone().unwrap(), r.status, r.agree));
        })
        .unwrap();
        for (g, status, agree) in statuses {
            if g == "0x1" {
                assert_eq!((status, agree), ("unclaimed", None), "{id} m={m}");
            } else {
                assert_eq!((status, agree), ("claimed", Some(true)), "{id} m={m} g={g}");
            }
        }
    }
}

#[test]
fn claims_are_tri_state() {
    assert_eq!(Claim::from_bool(true), Claim::Pp);
    assert_eq!(Claim::Unclaimed.as_bool(), None);
}
