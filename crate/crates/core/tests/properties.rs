//! Algebraic invariants of the set algebra and the topology layer.

mod common;

use std::sync::Arc;

use proptest::prelude::*;

use topofix::generators::{random_set_expr, random_subset, rng};
use topofix::parse::{parse_set_expr, parse_set_expression};
use topofix::setalg::{GroundSpec, SetExpr, SymSet};
use topofix::topology::{cofinite_nat, discrete, example3_int, thm8_space, tower, Space};

use common::{expr_window, holds, oracle_grounds, window_points};

fn ground(i: usize) -> Arc<GroundSpec> {
    let gs = oracle_grounds();
    gs[i % gs.len()].clone()
}

fn expr(seed: u64, g: &GroundSpec, depth: usize) -> SetExpr {
    random_set_expr(&mut rng(seed), g, depth, 12)
}

fn set(seed: u64, g: &Arc<GroundSpec>) -> SymSet {
    expr(seed, g, 4).eval(g).unwrap()
}

fn space(i: usize) -> Space {
    match i % 6 {
        0 => discrete(3),
        1 => cofinite_nat(),
        2 => example3_int(),
        3 => thm8_space(),
        4 => tower(1),
        _ => tower(2),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn boolean_laws(gi in 0usize..4, s1: u64, s2: u64, s3: u64) {
        let g = ground(gi);
        let (a, b, c) = (set(s1, &g), set(s2, &g), set(s3, &g));
        prop_assert_eq!(a.union(&b), b.union(&a));
        prop_assert_eq!(a.inter(&b), b.inter(&a));
        prop_assert_eq!(a.union(&b.inter(&c)), a.union(&b).inter(&a.union(&c)));
        prop_assert_eq!(a.inter(&b.union(&c)), a.inter(&b).union(&a.inter(&c)));
        prop_assert_eq!(a.union(&b).complement(), a.complement().inter(&b.complement()));
        prop_assert_eq!(a.complement().complement(), a.clone());
        prop_assert_eq!(a.diff(&b), a.inter(&b.complement()));
        prop_assert_eq!(a.sym_diff(&b), a.diff(&b).union(&b.diff(&a)));
        prop_assert!(a.union(&a.complement()) == SymSet::all(&g));
        prop_assert!(a.inter(&a.complement()).is_empty());
        prop_assert_eq!(a.is_subset(&b), a.union(&b) == b);
    }

    /// Equal sets have one representation: equality agrees with pointwise
    /// membership on the derived window.
    #[test]
    fn normal_form_is_canonical(gi in 0usize..4, s1: u64, s2: u64) {
        let g = ground(gi);
        let (e1, e2) = (expr(s1, &g, 4), expr(s2, &g, 4));
        let (a, b) = (e1.eval(&g).unwrap(), e2.eval(&g).unwrap());
        let w = expr_window(&e1).max(expr_window(&e2)).max(a.oracle_bound()).max(b.oracle_bound());
        let same = window_points(&g, w).iter().all(|p| holds(&e1, &g, p) == holds(&e2, &g, p));
        prop_assert_eq!(a == b, same);
        let u = SetExpr::Union(Box::new(e1.clone()), Box::new(SetExpr::Compl(Box::new(SetExpr::Compl(Box::new(e1))))));
        prop_assert_eq!(u.eval(&g).unwrap(), a);
    }

    #[test]
    fn oracle_agrees(gi in 0usize..4, seed: u64) {
        let g = ground(gi);
        let e = expr(seed, &g, 6);
        let s = e.eval(&g).unwrap();
        let w = expr_window(&e).max(s.oracle_bound());
        for p in window_points(&g, w) {
            prop_assert_eq!(s.contains(&p), holds(&e, &g, &p), "at {} for {}", p, e);
        }
    }

    /// On integer channels shifting is invertible; on natural channels the
    /// round trip keeps exactly the points that stay positive.
    #[test]
    fn shift_inverse(gi in 0usize..4, seed: u64, k in -6i64..=6) {
        let g = ground(gi);
        let a = set(seed, &g);
        for c in g.channels() {
            let back = a.shift(k, Some(&c.name)).unwrap().shift(-k, Some(&c.name)).unwrap();
            match c.kind.min_value() {
                None => prop_assert_eq!(&back, &a),
                Some(lo) => {
                    let kept = SymSet::ge(&g, Some(&c.name), lo - k.min(0))
                        .unwrap()
                        .union(&SymSet::whole_channel(&g, g.channel_index(&c.name).unwrap()).complement());
                    prop_assert_eq!(&back, &a.inter(&kept));
                }
            }
        }
    }

    #[test]
    fn closure_laws(si in 0usize..6, s1: u64, s2: u64) {
        let sp = space(si);
        let a = random_subset(&mut rng(s1), &sp, 3);
        let b = random_subset(&mut rng(s2), &sp, 3);
        let ca = sp.closure(&a);
        prop_assert!(a.is_subset(&ca));
        prop_assert_eq!(sp.closure(&ca), ca.clone());
        prop_assert_eq!(sp.closure(&a.union(&b)), ca.union(&sp.closure(&b)));
        prop_assert!(sp.closure(&sp.empty_set()).is_empty());
        prop_assert!(sp.is_closed(&ca));
        let ia = sp.interior(&a);
        prop_assert!(ia.is_subset(&a));
        prop_assert!(sp.is_open(&ia));
        prop_assert_eq!(ia, sp.whole().diff(&sp.closure(&sp.whole().diff(&a))));
    }

    #[test]
    fn grammar_round_trip(gi in 0usize..4, seed: u64) {
        let g = ground(gi);
        let e = expr(seed, &g, 5);
        let text = e.to_string();
        let back = parse_set_expr(&text).unwrap();
        prop_assert_eq!(back.eval(&g).unwrap(), e.eval(&g).unwrap(), "{}", text);
        prop_assert_eq!(back.to_string(), text);
        let s = e.eval(&g).unwrap();
        prop_assert_eq!(parse_set_expression(&s.to_expr(), &g).unwrap(), s);
    }
}
