mod common;

use cohesion::decay::{DecayKind, DecaySpec};
use cohesion::dynamics::ExcitationConfig;
use cohesion::graph::{induce, TemporalMultigraph, UserId};
use cohesion::ingest::{parse_csv, parse_jsonl, write_csv, write_jsonl};
use cohesion::psych::{self, PsychConfig};
use common::{close, evs, random_records, rng, Kernel};
use proptest::prelude::*;
use rand::Rng;

fn graph(seed: u64, n_users: u64, n_events: usize) -> TemporalMultigraph {
    TemporalMultigraph::from_records(random_records(&mut rng(seed), n_users, n_events, 50))
}

fn decay() -> impl Strategy<Value = DecaySpec> {
    prop_oneof![
        (0.0..0.5f64).prop_map(|rate| DecaySpec { kind: DecayKind::Exponential, rate }),
        (0.01..3.0f64).prop_map(|rate| DecaySpec { kind: DecayKind::Polynomial, rate }),
    ]
}

fn subset(g: &TemporalMultigraph, seed: u64) -> Vec<UserId> {
    let mut r = rng(seed ^ 0x5eed);
    let mut members: Vec<UserId> = g.users().filter(|_| r.random_bool(0.6)).collect();
    if members.is_empty() {
        members.push(UserId(0));
    }
    members
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn negating_sentiment_negates_scores(
        seed in any::<u64>(),
        n_users in 2u64..10,
        n_events in 1usize..80,
        lambda0 in 0.05..3.0f64,
        decay in decay(),
    ) {
        let g = graph(seed, n_users, n_events);
        let neg = g.negated();
        let members = subset(&g, seed);
        let cfg = PsychConfig { excitation: ExcitationConfig::new(lambda0, decay).unwrap(), window: None };
        let t_cur = g.max_timestamp().unwrap();
        let a = psych::measure(&g, &induce(&g, members.iter().copied()).unwrap(), t_cur, &cfg).unwrap();
        let b = psych::measure(&neg, &induce(&neg, members.iter().copied()).unwrap(), t_cur, &cfg).unwrap();
        prop_assert_eq!(a.ei, -b.ei);
        prop_assert_eq!(a.sit, -b.sit);
        prop_assert_eq!(a.ced, -b.ced);
        prop_assert_eq!(a.gip.to_bits(), b.gip.to_bits());
        prop_assert_eq!(a.gid.map(f64::to_bits), b.gid.map(f64::to_bits));
    }

    #[test]
    fn scores_stay_in_range(
        seed in any::<u64>(),
        n_users in 1u64..10,
        n_events in 1usize..80,
        lambda0 in 0.05..3.0f64,
        decay in decay(),
        t_back in 0i64..60,
    ) {
        let g = graph(seed, n_users, n_events);
        let members = subset(&g, seed);
        let c = induce(&g, members.iter().copied()).unwrap();
        let t_cur = g.max_timestamp().unwrap() - t_back;
        let cfg = PsychConfig { excitation: ExcitationConfig::new(lambda0, decay).unwrap(), window: None };
        let s = psych::measure(&g, &c, t_cur, &cfg).unwrap();
        prop_assert!((0.0..=1.0).contains(&s.gip));
        prop_assert_eq!(s.gid.is_none(), members.len() < 2);
        prop_assert!(s.gid.is_none_or(|x| x >= 0.0));
        prop_assert!(s.ei.is_finite() && s.sit.is_finite() && s.ced.is_finite());

        let k = Kernel { kind: decay.kind, rate: decay.rate, lambda0 };
        let all = evs(&g.records().collect::<Vec<_>>());
        for e in &all {
            let x = k.excitation(e, &all);
            prop_assert!(x >= 0.0);
        }
    }

    #[test]
    fn zero_decay_reduces_to_plain_sums(
        seed in any::<u64>(),
        n_users in 2u64..8,
        n_events in 1usize..50,
        lambda0 in 0.05..3.0f64,
    ) {
        let g = graph(seed, n_users, n_events);
        let members = subset(&g, seed);
        let c = induce(&g, members.iter().copied()).unwrap();
        let t_cur = g.max_timestamp().unwrap();
        let exp = DecaySpec::exponential(0.0).unwrap();
        let cfg = PsychConfig { excitation: ExcitationConfig::new(lambda0, exp).unwrap(), window: None };
        let got = psych::measure(&g, &c, t_cur, &cfg).unwrap();
        let set = members.iter().map(|&u| g.external_id(u)).collect();
        let k = Kernel { kind: DecayKind::Exponential, rate: 0.0, lambda0 };
        let want = common::measures(&evs(&g.records().collect::<Vec<_>>()), &set, t_cur, &k, None);
        prop_assert!(close(got.ei, want.ei, 1e-10));
        prop_assert!(close(got.sit, want.sit, 1e-10));
        prop_assert!(close(got.ced, want.ced, 1e-10));
    }

    #[test]
    fn csv_export_round_trips(seed in any::<u64>(), n_users in 1u64..30, n_events in 0usize..200) {
        let g = graph(seed, n_users, n_events);
        let mut buf = Vec::new();
        write_csv(&g, &mut buf).unwrap();
        let back = TemporalMultigraph::from_records(parse_csv(buf.as_slice()).unwrap());
        prop_assert_eq!(back.records().collect::<Vec<_>>(), g.records().collect::<Vec<_>>());
        prop_assert_eq!(back.n_users(), g.n_users());
    }

    #[test]
    fn jsonl_export_round_trips(seed in any::<u64>(), n_users in 1u64..30, n_events in 0usize..200) {
        let g = graph(seed, n_users, n_events);
        let mut buf = Vec::new();
        write_jsonl(&g, &mut buf).unwrap();
        let back = TemporalMultigraph::from_records(parse_jsonl(buf.as_slice()).unwrap());
        prop_assert_eq!(back.records().collect::<Vec<_>>(), g.records().collect::<Vec<_>>());
    }

    #[test]
    fn ingestion_order_only_breaks_ties(seed in any::<u64>(), n_events in 1usize..100) {
        let mut records = random_records(&mut rng(seed), 6, n_events, 20);
        let g = TemporalMultigraph::from_records(records.clone());
        records.sort_by_key(|r| r.timestamp);
        let sorted = TemporalMultigraph::from_records(records.clone());
        prop_assert_eq!(g.records().collect::<Vec<_>>(), records);
        prop_assert_eq!(sorted.records().collect::<Vec<_>>(), g.records().collect::<Vec<_>>());
    }
}
