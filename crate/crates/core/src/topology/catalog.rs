//! The shipped spaces and their string identifiers.

use crate::error::{CatalogError, SetError};
use crate::parse::parse_set_expression;
use crate::setalg::{Channel, GroundSpec, Point, SymSet};

use super::product::Product;
use super::Cover;
use super::space::{OpenRule, PointClass, Space, SpaceFlags};

const FLAGS: SpaceFlags = SpaceFlags {
    first_countable: true,
    compact: true,
};

fn discrete_atom(i: usize) -> String {
    const NAMES: [&str; 8] = ["p", "q", "r", "s", "t", "u", "v", "w"];
    NAMES
        .get(i)
        .map(|s| s.to_string())
        .unwrap_or_else(|| format!("x{}", i + 1))
}

/// `n` isolated points named `p, q, r, ...`.
pub fn discrete(n: usize) -> Space {
    let names: Vec<String> = (0..n).map(discrete_atom).collect();
    let ground = GroundSpec::new(names, vec![]).expect("distinct names");
    let all = SymSet::all(&ground);
    let classes = vec![PointClass {
        members: all.clone(),
        tail: SymSet::empty(&ground),
    }];
    Space::from_classes(format!("discrete:{n}"), all, classes, OpenRule::Discrete, FLAGS)
}

/// Positive integers (channel `n`) with the cofinite topology.
pub fn cofinite_nat() -> Space {
    let ground = GroundSpec::new(vec![], vec![Channel::nat("n")]).expect("valid ground");
    let all = SymSet::all(&ground);
    let classes = vec![PointClass {
        members: all.clone(),
        tail: all.clone(),
    }];
    Space::from_classes("cofinite-nat", all, classes, OpenRule::CofiniteNat, FLAGS)
}

/// All integers (channel `z`): positive integers are isolated, and each
/// `-n` (n ≥ 0) has the neighbourhoods `{-n} ∪ A` with `A` cofinite in the
/// positive integers.
pub fn example3_int() -> Space {
    let ground = GroundSpec::new(vec![], vec![Channel::int("z")]).expect("valid ground");
    let pos = SymSet::ge(&ground, None, 1).expect("channel exists");
    let neg = SymSet::negnat0(&ground, None).expect("channel exists");
    let classes = vec![
        PointClass {
            members: pos.clone(),
            tail: SymSet::empty(&ground),
        },
        PointClass {
            members: neg,
            tail: pos,
        },
    ];
    Space::from_classes(
        "example3-int",
        SymSet::all(&ground),
        classes,
        OpenRule::Example3,
        SpaceFlags {
            first_countable: true,
            compact: false,
        },
    )
}

/// Positive integers (channel `n`) plus atoms `a`, `b`. Odd numbers are
/// isolated, an even number's neighbourhoods add a cofinite part of the odd
/// numbers, and `a`, `b` have cofinite neighbourhoods.
pub fn thm8_space() -> Space {
    let ground =
        GroundSpec::new(vec!["a".into(), "b".into()], vec![Channel::nat("n")]).expect("valid");
    let odd = SymSet::odd(&ground, None).expect("channel exists");
    let even = SymSet::even(&ground, None).expect("channel exists");
    let nat = SymSet::whole_channel(&ground, 0);
    let atom = |n: &str| SymSet::atoms(&ground, &[n]).expect("atom exists");
    let classes = vec![
        PointClass {
            members: odd.clone(),
            tail: SymSet::empty(&ground),
        },
        PointClass {
            members: even,
            tail: odd,
        },
        PointClass {
            members: atom("a"),
            tail: nat.clone(),
        },
        PointClass {
            members: atom("b"),
            tail: nat,
        },
    ];
    Space::from_classes("thm8", SymSet::all(&ground), classes, OpenRule::Thm8, FLAGS)
}

/// Names of the atom and channel added at tower level `level ≥ 1`.
pub fn tower_level_names(level: usize) -> (String, String) {
    let chan = match level {
        1 => "y".to_string(),
        2 => "z".to_string(),
        3 => "w".to_string(),
        l => format!("v{l}"),
    };
    (format!("{chan}0"), chan)
}

/// The point `y_i` of tower level `level`: `i = 0` is the added atom, larger
/// `i` lie on the added channel.
pub fn tower_point(level: usize, i: i64) -> Point {
    let (atom, chan) = tower_level_names(level);
    if i == 0 {
        Point::atom(atom)
    } else {
        Point::int(chan, i)
    }
}

/// The rank-`k` tower: `tower(0)` is two isolated points, and `tower(k+1)`
/// adds a point `y_0` and isolated points `y_1, y_2, ...`; old points and
/// `y_0` get the cofinite parts of `{y_1, y_2, ...}` added to their
/// neighbourhoods.
pub fn tower(k: usize) -> Space {
    let base = discrete(2);
    let mut ground = base.ground().clone();
    let mut classes: Vec<PointClass> = base.classes().to_vec();
    for level in 1..=k {
        let (atom, chan) = tower_level_names(level);
        let next = ground
            .extend(&[atom.as_str()], vec![Channel::nat(chan.as_str())])
            .expect("level names are fresh");
        let lift = |s: &SymSet| s.transport(&next, |n| Some(n.to_string())).expect("superset");
        let newchan = SymSet::whole_channel(&next, next.channels().len() - 1);
        let mut lifted: Vec<PointClass> = classes
            .iter()
            .map(|c| PointClass {
                members: lift(&c.members),
                tail: lift(&c.tail).union(&newchan),
            })
            .collect();
        lifted.push(PointClass {
            members: SymSet::atoms(&next, &[atom.as_str()]).expect("fresh atom"),
            tail: newchan.clone(),
        });
        lifted.push(PointClass {
            members: newchan,
            tail: SymSet::empty(&next),
        });
        classes = lifted;
        ground = next;
    }
    Space::from_classes(
        format!("tower:{k}"),
        SymSet::all(&ground),
        classes,
        OpenRule::Schema,
        FLAGS,
    )
}

/// A space or a product of two spaces, as named by a catalog id.
#[derive(Debug, Clone)]
pub enum CatalogSpace {
    Single(Space),
    Product(Product<Space, Space>),
}

impl CatalogSpace {
    pub fn id(&self) -> String {
        match self {
            CatalogSpace::Single(s) => s.id().to_string(),
            CatalogSpace::Product(p) => format!("product:{},{}", p.left().id(), p.right().id()),
        }
    }
}

/// Identifiers accepted by [`lookup`], with a short description each.
pub fn catalog_entries() -> Vec<(&'static str, &'static str)> {
    vec![
        ("discrete:<n>", "n isolated points p, q, r, ..."),
        ("cofinite-nat", "positive integers with the cofinite topology"),
        ("example3-int", "integers; positives isolated, -n has cofinite-positive neighbourhoods"),
        ("thm8", "positive integers plus atoms a, b; odd isolated, even and a, b cofinite-based"),
        ("tower:<k>", "Hausdorff rank k tower over two points"),
        ("product:<id>,<id>", "product of two non-composite spaces"),
        ("sum:<id>,<id>", "disjoint sum of two non-composite spaces"),
        ("subspace:<id>:<set-expr>", "subspace on the given carrier"),
    ]
}

fn bad(id: &str, reason: &str) -> CatalogError {
    CatalogError::BadId {
        id: id.to_string(),
        reason: reason.to_string(),
    }
}

fn parse_count(id: &str, arg: &str) -> Result<usize, CatalogError> {
    arg.trim()
        .parse()
        .map_err(|_| bad(id, "expected a non-negative integer parameter"))
}

fn split_pair<'a>(id: &str, rest: &'a str) -> Result<(&'a str, &'a str), CatalogError> {
    let parts: Vec<&str> = rest.split(',').collect();
    match parts.as_slice() {
        [a, b] => Ok((a.trim(), b.trim())),
        _ => Err(bad(id, "expected exactly two comma-separated component ids")),
    }
}

/// Resolves an identifier to a single (non-product) space.
pub fn space_by_id(id: &str) -> Result<Space, CatalogError> {
    match lookup(id)? {
        CatalogSpace::Single(s) => Ok(s),
        CatalogSpace::Product(_) => Err(bad(id, "a product is not a single space here")),
    }
}

/// Resolves any catalog identifier.
pub fn lookup(id: &str) -> Result<CatalogSpace, CatalogError> {
    let id = id.trim();
    let single = |s: Space| Ok(CatalogSpace::Single(s));
    match id {
        "cofinite-nat" => return single(cofinite_nat()),
        "example3-int" => return single(example3_int()),
        "thm8" => return single(thm8_space()),
        _ => {}
    }
    if let Some(arg) = id.strip_prefix("discrete:") {
        let n = parse_count(id, arg)?;
        if n == 0 {
            return Err(bad(id, "a discrete space needs at least one point"));
        }
        return single(discrete(n));
    }
    if let Some(arg) = id.strip_prefix("tower:") {
        return single(tower(parse_count(id, arg)?));
    }
    if let Some(rest) = id.strip_prefix("product:") {
        let (a, b) = split_pair(id, rest)?;
        return Ok(CatalogSpace::Product(Product::new(
            space_by_id(a)?,
            space_by_id(b)?,
        )));
    }
    if let Some(rest) = id.strip_prefix("sum:") {
        let (a, b) = split_pair(id, rest)?;
        return single(Space::sum(&space_by_id(a)?, &space_by_id(b)?));
    }
    if let Some(rest) = id.strip_prefix("subspace:") {
        // The parent id may itself contain ':'; take the first split whose
        // left side resolves.
        let mut last_err = bad(id, "expected subspace:<id>:<set-expr>");
        for (i, _) in rest.match_indices(':') {
            let (parent, expr) = (&rest[..i], &rest[i + 1..]);
            match space_by_id(parent) {
                Ok(space) => {
                    let carrier = parse_set_expression(expr, space.ground())?;
                    return single(space.subspace(&carrier));
                }
                Err(e) => last_err = e,
            }
        }
        return Err(last_err);
    }
    Err(CatalogError::UnknownSpace(id.to_string()))
}

/// Parses a cover file: one open set expression per nonempty line, `#`
/// starting a comment, and lines holding `---` separating covers. Each
/// cover must cover the space.
pub fn parse_covers(text: &str, space: &Space) -> Result<Vec<Cover>, CatalogError> {
    let mut covers = Vec::new();
    let mut current: Vec<SymSet> = Vec::new();
    let mut start = 1;
    let mut finish = |elements: Vec<SymSet>, start: usize| -> Result<(), CatalogError> {
        if elements.is_empty() {
            return Ok(());
        }
        let cover = Cover::new(elements);
        if !cover.is_cover(space) {
            return Err(CatalogError::File {
                line: start,
                message: format!("the cover starting here does not cover {}", space.id()),
            });
        }
        covers.push(cover);
        Ok(())
    };
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line == "---" {
            finish(std::mem::take(&mut current), start)?;
            start = i + 2;
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let s = parse_set_expression(line, space.ground()).map_err(|e| CatalogError::File {
            line: i + 1,
            message: e.to_string(),
        })?;
        if !space.is_open(&s) {
            return Err(CatalogError::File {
                line: i + 1,
                message: format!("{s} is not open in {}", space.id()),
            });
        }
        current.push(s);
    }
    finish(current, start)?;
    Ok(covers)
}

/// Parses a pairs file: one pair `x y` (or `x, y`) per nonempty line.
pub fn parse_pairs(text: &str, space: &Space) -> Result<Vec<(Point, Point)>, CatalogError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| CatalogError::File {
            line: i + 1,
            message,
        };
        let toks: Vec<&str> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .collect();
        let [a, b] = toks.as_slice() else {
            return Err(err(format!("expected two points, found `{line}`")));
        };
        let pa = crate::parse::parse_point(a, space.ground()).map_err(|e| err(e.to_string()))?;
        let pb = crate::parse::parse_point(b, space.ground()).map_err(|e| err(e.to_string()))?;
        for p in [&pa, &pb] {
            space
                .check_point(p)
                .map_err(|e: SetError| err(e.to_string()))?;
        }
        out.push((pa, pb));
    }
    Ok(out)
}
