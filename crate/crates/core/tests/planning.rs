use nbp_tamp::planner::{plan, validate, DEFAULT_DEPTH};
use nbp_tamp::schema::{parse_domain, parse_problem, print_domain, GroundLiteral, Problem};
use std::sync::Arc;
use std::time::Instant;

const DOMAIN: &str = include_str!("../data/kitchen.domain");

fn problem(text: &str) -> Problem {
    let mut p = parse_problem(text).unwrap();
    for d in ["drawer1", "drawer2", "drawer3"] {
        p.init.insert(GroundLiteral::new("maybe-in", &["pear", d]));
    }
    p.init.insert(GroundLiteral::new("in", &["cup", "cupspot"]));
    p.init.insert(GroundLiteral::new("located", &["cup"]));
    p
}

fn names(text: &str) -> Vec<String> {
    let d: Vec<_> = parse_domain(DOMAIN)
        .unwrap()
        .into_iter()
        .map(Arc::new)
        .collect();
    let p = problem(text);
    let t = Instant::now();
    let s = plan(&d, &p.objects, &p.init, &p.goal, DEFAULT_DEPTH).unwrap();
    eprintln!("{} actions in {:?}", s.len(), t.elapsed());
    assert!(validate(&s, &p.init, &p.goal));
    s.iter().map(|a| a.to_string()).collect()
}

#[test]
fn retrieve_skeleton() {
    assert_eq!(
        names(include_str!("../data/retrieve.problem")),
        vec![
            "move(home, cabinet)",
            "open(drawer1, cabinet)",
            "inspect(pear, drawer1, cabinet)",
            "pick(pear, drawer1, cabinet)"
        ]
    );
}

#[test]
fn wash_extends_retrieve() {
    let w = names(include_str!("../data/wash.problem"));
    let r = names(include_str!("../data/retrieve.problem"));
    assert_eq!(w[..4], r[..]);
    assert_eq!(w.len(), 8);
    for a in [
        "move(cabinet, sink)",
        "place(pear, basin, sink)",
        "turn_on(tap, sink)",
        "wash(pear, basin, tap)",
    ] {
        assert!(w.iter().any(|x| x == a), "{a} missing from {w:?}");
    }
}

#[test]
fn cook_and_serve_are_longer() {
    let c = names(include_str!("../data/cook.problem"));
    let s = names(include_str!("../data/serve-meal.problem"));
    assert!(c.len() > 8 && s.len() > c.len(), "{c:?}\n{s:?}");
}

#[test]
fn domain_round_trips_through_printer() {
    let d = parse_domain(DOMAIN).unwrap();
    let again = parse_domain(&print_domain("kitchen", &d)).unwrap();
    assert_eq!(d, again);
}
