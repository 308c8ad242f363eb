//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use topofix::setalg::{ChannelKind, GroundSpec, Point, SetExpr};

/// Grounds exercised by the set-algebra oracle tests.
pub fn oracle_grounds() -> Vec<std::sync::Arc<GroundSpec>> {
    use topofix::setalg::Channel;
    use topofix::topology::{example3_int, thm8_space, tower};
    vec![
        thm8_space().ground().clone(),
        example3_int().ground().clone(),
        tower(2).ground().clone(),
        GroundSpec::new(vec!["u".into()], vec![Channel::nat("x"), Channel::int("w")]).unwrap(),
    ]
}

fn channel_name<'a>(g: &'a GroundSpec, channel: &'a Option<String>) -> &'a str {
    match channel {
        Some(c) => c,
        None => &g.channels()[0].name,
    }
}

fn kind_of(g: &GroundSpec, name: &str) -> ChannelKind {
    g.channels()
        .iter()
        .find(|c| c.name == name)
        .map(|c| c.kind)
        .expect("channel of the ground")
}

/// Membership of `p` in the set denoted by `e`, evaluated pointwise from the
/// definitions of the expression forms.
pub fn holds(e: &SetExpr, g: &GroundSpec, p: &Point) -> bool {
    let on = |channel: &Option<String>| -> Option<i64> {
        let name = channel_name(g, channel);
        match p {
            Point::Int { channel, value } if channel == name => Some(*value),
            _ => None,
        }
    };
    match e {
        SetExpr::Empty => false,
        SetExpr::All => true,
        SetExpr::Finite { values, channel } => on(channel).is_some_and(|v| values.contains(&v)),
        SetExpr::Cofinite { values, channel } => on(channel).is_some_and(|v| !values.contains(&v)),
        SetExpr::Odd { channel } => on(channel).is_some_and(|v| v.rem_euclid(2) == 1),
        SetExpr::Even { channel } => on(channel).is_some_and(|v| v.rem_euclid(2) == 0),
        SetExpr::NegNat0 { channel } => on(channel).is_some_and(|v| v <= 0),
        SetExpr::Ge { t, channel } => on(channel).is_some_and(|v| v >= *t),
        SetExpr::Le { t, channel } => on(channel).is_some_and(|v| v <= *t),
        SetExpr::Mod {
            m,
            residues,
            channel,
        } => on(channel).is_some_and(|v| residues.iter().any(|r| r.rem_euclid(*m) == v.rem_euclid(*m))),
        SetExpr::Atoms(names) => matches!(p, Point::Atom(a) if names.contains(a)),
        SetExpr::Union(a, b) => holds(a, g, p) || holds(b, g, p),
        SetExpr::Inter(a, b) => holds(a, g, p) && holds(b, g, p),
        SetExpr::Compl(a) => !holds(a, g, p),
        SetExpr::Shift { expr, k, channel } => match p {
            Point::Int { channel: c, value }
                if channel.as_deref().is_none_or(|name| name == c) =>
            {
                let source = value - k;
                kind_of(g, c).contains(source) && holds(expr, g, &Point::int(c.clone(), source))
            }
            _ => holds(expr, g, p),
        },
    }
}

/// Largest absolute constant and total absolute shift in `e`, plus the lcm
/// of its moduli: beyond `constants + shifts + 2·lcm` membership is periodic.
pub fn expr_window(e: &SetExpr) -> i64 {
    fn walk(e: &SetExpr, c: &mut i64, s: &mut i64, m: &mut i64) {
        let abs_max = |vs: &[i64]| vs.iter().map(|v| v.abs()).max().unwrap_or(0);
        match e {
            SetExpr::Finite { values, .. } | SetExpr::Cofinite { values, .. } => *c = (*c).max(abs_max(values)),
            SetExpr::Ge { t, .. } | SetExpr::Le { t, .. } => *c = (*c).max(t.abs()),
            SetExpr::Mod { m: k, .. } => *m = lcm(*m, *k),
            SetExpr::Odd { .. } | SetExpr::Even { .. } => *m = lcm(*m, 2),
            SetExpr::Union(a, b) | SetExpr::Inter(a, b) => {
                walk(a, c, s, m);
                walk(b, c, s, m);
            }
            SetExpr::Compl(a) => walk(a, c, s, m),
            SetExpr::Shift { expr, k, .. } => {
                *s += k.abs();
                walk(expr, c, s, m);
            }
            _ => {}
        }
    }
    let (mut c, mut s, mut m) = (0, 0, 1);
    walk(e, &mut c, &mut s, &mut m);
    c + s + 2 * m + 2
}

fn lcm(a: i64, b: i64) -> i64 {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 { a } else { gcd(b, a % b) }
    }
    a / gcd(a, b) * b
}

/// Every atom and every channel point with value in `[-w, w]`.
pub fn window_points(g: &GroundSpec, w: i64) -> Vec<Point> {
    let mut out: Vec<Point> = g.atoms().iter().map(Point::atom).collect();
    for c in g.channels() {
        out.extend((-w..=w).filter(|&v| c.kind.contains(v)).map(|v| Point::int(c.name.clone(), v)));
    }
    out
}
