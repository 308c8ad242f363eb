use std::fmt;

use super::{SetAlgebra, Topology};

/// A finite union of rectangles `A × B`.
#[derive(Clone)]
pub struct RectSet<S, T> {
    rects: Vec<(S, T)>,
}

impl<S: SetAlgebra, T: SetAlgebra> RectSet<S, T> {
    pub fn empty() -> Self {
        RectSet { rects: Vec::new() }
    }

    pub fn rect(a: S, b: T) -> Self {
        let mut r = Self::empty();
        r.push(a, b);
        r
    }

    fn push(&mut self, a: S, b: T) {
        if !a.is_empty() && !b.is_empty() {
            self.rects.push((a, b));
        }
    }

    pub fn rects(&self) -> &[(S, T)] {
        &self.rects
    }

    fn diff_rect(&self, c: &S, d: &T) -> Self {
        let mut out = Self::empty();
        for (a, b) in &self.rects {
            // A×B ∖ C×D = (A∖C)×B ∪ (A∩C)×(B∖D)
            out.push(a.diff(c), b.clone());
            out.push(a.inter(c), b.diff(d));
        }
        out
    }
}

impl<S: SetAlgebra, T: SetAlgebra> SetAlgebra for RectSet<S, T> {
    fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, b) in &other.rects {
            out.push(a.clone(), b.clone());
        }
        out
    }

    fn inter(&self, other: &Self) -> Self {
        let mut out = Self::empty();
        for (a, b) in &self.rects {
            for (c, d) in &other.rects {
                out.push(a.inter(c), b.inter(d));
            }
        }
        out
    }

    fn diff(&self, other: &Self) -> Self {
        other
            .rects
            .iter()
            .fold(self.clone(), |acc, (c, d)| acc.diff_rect(c, d))
    }

    fn is_empty(&self) -> bool {
        self.rects.is_empty()
    }
}

/// Semantic equality: mutual inclusion.
impl<S: SetAlgebra, T: SetAlgebra> PartialEq for RectSet<S, T> {
    fn eq(&self, other: &Self) -> bool {
        self.is_subset(other) && other.is_subset(self)
    }
}

impl<S: fmt::Debug, T: fmt::Debug> fmt::Debug for RectSet<S, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.rects.iter().map(|(a, b)| Rect(a, b)))
            .finish()
    }
}

struct Rect<'a, S, T>(&'a S, &'a T);

impl<S: fmt::Debug, T: fmt::Debug> fmt::Debug for Rect<'_, S, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} × {:?}", self.0, self.1)
    }
}

/// Product of two spaces; sets are rectangle unions.
#[derive(Debug, Clone)]
pub struct Product<A, B> {
    left: A,
    right: B,
}

impl<A: Topology, B: Topology> Product<A, B> {
    pub fn new(left: A, right: B) -> Self {
        Product { left, right }
    }
}

impl<A, B> Product<A, B> {
    pub fn left(&self) -> &A {
        &self.left
    }

    pub fn right(&self) -> &B {
        &self.right
    }
}

impl<A: Topology, B: Topology> Topology for Product<A, B> {
    type Set = RectSet<A::Set, B::Set>;
    type Pt = (A::Pt, B::Pt);

    fn whole(&self) -> Self::Set {
        RectSet::rect(self.left.whole(), self.right.whole())
    }

    fn set_contains(&self, s: &Self::Set, (x, y): &Self::Pt) -> bool {
        s.rects
            .iter()
            .any(|(a, b)| self.left.set_contains(a, x) && self.right.set_contains(b, y))
    }

    fn singleton(&self, (x, y): &Self::Pt) -> Self::Set {
        RectSet::rect(self.left.singleton(x), self.right.singleton(y))
    }

    /// The closure of a finite union of rectangles is the union of
    /// `cl(A) × cl(B)`.
    fn closure(&self, s: &Self::Set) -> Self::Set {
        let mut out = RectSet::empty();
        for (a, b) in &s.rects {
            out.push(self.left.closure(a), self.right.closure(b));
        }
        out
    }

    fn is_open(&self, s: &Self::Set) -> bool {
        self.interior(s) == *s
    }

    fn can_separate(&self, (x1, y1): &Self::Pt, (x2, y2): &Self::Pt) -> bool {
        self.left.can_separate(x1, x2) || self.right.can_separate(y1, y2)
    }

    fn bracket(&self, (x, y): &Self::Pt) -> Self::Set {
        RectSet::rect(self.left.bracket(x), self.right.bracket(y))
    }

    fn bracket_subspace(&self, (x, y): &Self::Pt) -> Self {
        Product::new(self.left.bracket_subspace(x), self.right.bracket_subspace(y))
    }

    fn representatives(&self) -> Vec<Self::Pt> {
        let rs = self.right.representatives();
        self.left
            .representatives()
            .into_iter()
            .flat_map(|x| rs.iter().map(move |y| (x.clone(), y.clone())))
            .collect()
    }

    fn is_hausdorff(&self) -> bool {
        self.left.is_hausdorff() && self.right.is_hausdorff()
    }

    fn sample_points(&self, radius: i64) -> Vec<Self::Pt> {
        let rs = self.right.sample_points(radius);
        self.left
            .sample_points(radius)
            .into_iter()
            .flat_map(|x| rs.iter().map(move |y| (x.clone(), y.clone())))
            .collect()
    }

    fn point_label(&self, (x, y): &Self::Pt) -> String {
        format!("({}, {})", self.left.point_label(x), self.right.point_label(y))
    }
}
