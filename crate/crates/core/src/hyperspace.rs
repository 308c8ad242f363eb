//! The Vietoris hyperspace of nonempty closed sets, iterated function
//! systems and their Hutchinson operator.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::contraction::Refutation;
use crate::error::{CatalogError, MapError, VerifyError};
use crate::generators::{random_closed_set, rng};
use crate::maps::{default_space_for, map_by_id, Closedness, SpaceMap};
use crate::parse::parse_set_expression;
use crate::setalg::SymSet;
use crate::topology::{Cover, Space};
use crate::verdict::{Exhausted, Verdict};

/// A nonempty closed subset of the host space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HyperPoint {
    carrier: SymSet,
}

impl HyperPoint {
    pub fn new(space: &Space, carrier: SymSet) -> Result<Self, VerifyError> {
        let carrier = carrier.checked_inter(space.whole())?;
        if carrier.is_empty() {
            return Err(VerifyError::Precondition("hyperpoints are nonempty".into()));
        }
        if !space.is_closed(&carrier) {
            return Err(VerifyError::Precondition(format!("{carrier} is not closed")));
        }
        Ok(HyperPoint { carrier })
    }

    pub fn carrier(&self) -> &SymSet {
        &self.carrier
    }
}

/// The basic Vietoris set `S(V₀; V₁, ..., V_k)`: closed `K ⊆ V₀` meeting
/// every `V_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VietorisBasic {
    v0: SymSet,
    vs: Vec<SymSet>,
}

impl VietorisBasic {
    pub fn new(space: &Space, v0: SymSet, vs: Vec<SymSet>) -> Result<Self, VerifyError> {
        for v in std::iter::once(&v0).chain(&vs) {
            if !space.is_open(v) {
                return Err(VerifyError::Precondition(format!("{v} is not open")));
            }
        }
        Ok(VietorisBasic { v0, vs })
    }

    pub fn v0(&self) -> &SymSet {
        &self.v0
    }

    pub fn vs(&self) -> &[SymSet] {
        &self.vs
    }

    /// `V₀ ∩ V₁ ∩ ... ∩ V_k`.
    pub fn core(&self) -> SymSet {
        self.vs.iter().fold(self.v0.clone(), |acc, v| acc.inter(v))
    }
}

/// Parses a Vietoris basic set: the first expression line is `V₀`, every
/// following line one `V_i`; `#` starts a comment.
pub fn parse_vietoris(text: &str, space: &Space) -> Result<VietorisBasic, CatalogError> {
    let mut sets = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let s = parse_set_expression(line, space.ground()).map_err(|e| CatalogError::File {
            line: i + 1,
            message: e.to_string(),
        })?;
        sets.push((i + 1, s.inter(space.whole())));
    }
    let mut it = sets.into_iter();
    let (_, v0) = it.next().ok_or(CatalogError::File {
        line: 1,
        message: "missing V0 line".into(),
    })?;
    let vs: Vec<SymSet> = it.map(|(_, s)| s).collect();
    VietorisBasic::new(space, v0, vs).map_err(|e| CatalogError::File {
        line: 0,
        message: e.to_string(),
    })
}

pub fn vietoris_member(k: &HyperPoint, b: &VietorisBasic) -> bool {
    k.carrier.is_subset(&b.v0) && b.vs.iter().all(|v| !k.carrier.inter(v).is_empty())
}

/// A finite nonempty family of closed self-maps of one space.
#[derive(Debug, Clone)]
pub struct Ifs {
    maps: Vec<SpaceMap>,
    closedness: Vec<Closedness>,
}

/// Closed sets sampled when a map carries no certificate.
const CLOSED_SAMPLES: usize = 40;

impl Ifs {
    /// Checks that the maps share a space and are closed maps (by catalog
    /// certificate plus samples, or by sampling alone).
    pub fn new(maps: Vec<SpaceMap>) -> Result<Self, VerifyError> {
        let first = maps
            .first()
            .ok_or_else(|| VerifyError::Precondition("an IFS needs at least one map".into()))?;
        let space = first.space().clone();
        let mut closedness = Vec::with_capacity(maps.len());
        let mut r = rng(0x1f5);
        for m in &maps {
            if m.space().id() != space.id() {
                return Err(MapError::WrongSpace {
                    map: m.id().to_string(),
                    expected: space.id().to_string(),
                    got: m.space().id().to_string(),
                }
                .into());
            }
            let samples: Vec<SymSet> = (0..CLOSED_SAMPLES)
                .map(|_| random_closed_set(&mut r, &space))
                .chain([space.whole().clone()])
                .collect();
            let c = m.is_closed_map(samples)?;
            if let Closedness::Refuted { set, image } = &c {
                return Err(VerifyError::Precondition(format!(
                    "{} is not a closed map: {set} is closed but its image {image} is not",
                    m.id()
                )));
            }
            closedness.push(c);
        }
        Ok(Ifs { maps, closedness })
    }

    /// Comma-joined map ids, e.g. `thm8-f,thm8-g`. Without a space the
    /// first catalog map fixes it.
    pub fn from_ids(ids: &str, space: Option<&Space>) -> Result<Self, VerifyError> {
        let ids: Vec<&str> = ids.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        let space = match space {
            Some(s) => s.clone(),
            None => ids
                .iter()
                .find_map(|id| default_space_for(id))
                .ok_or_else(|| VerifyError::Precondition("no map fixes the host space".into()))?,
        };
        let maps = ids
            .iter()
            .map(|id| map_by_id(id, &space))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| VerifyError::Precondition(e.to_string()))?;
        Self::new(maps)
    }

    pub fn maps(&self) -> &[SpaceMap] {
        &self.maps
    }

    pub fn closedness(&self) -> &[Closedness] {
        &self.closedness
    }

    pub fn space(&self) -> &Space {
        self.maps[0].space()
    }

    pub fn id(&self) -> String {
        self.maps.iter().map(SpaceMap::id).collect::<Vec<_>>().join(",")
    }
}

/// `F(K) = f₁[K] ∪ ... ∪ f_m[K]`.
pub fn hutchinson(ifs: &Ifs, k: &SymSet) -> Result<SymSet, MapError> {
    let mut out = ifs.space().empty_set();
    for f in &ifs.maps {
        out = out.union(&f.image(k)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IfsContractivity {
    pub depth: usize,
    /// Distinct word-image values per depth, from depth 0.
    pub layer_sizes: Vec<usize>,
    /// The distinct values `f_{i₁} ∘ ... ∘ f_{i_n}[X]` at the proving depth.
    pub word_images: Vec<SymSet>,
}

fn dedup_sets(sets: Vec<SymSet>) -> Vec<SymSet> {
    let mut keyed: Vec<(String, SymSet)> = sets.into_iter().map(|s| (s.to_expr(), s)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    keyed.into_iter().map(|(_, s)| s).collect()
}

/// The distinct word images at each depth `0..=depth`, with duplicate
/// values merged.
pub fn word_image_layers(ifs: &Ifs, depth: usize) -> Result<Vec<Vec<SymSet>>, MapError> {
    let mut layers = vec![vec![ifs.space().whole().clone()]];
    for _ in 0..depth {
        layers.push(next_layer(ifs, layers.last().expect("nonempty"))?);
    }
    Ok(layers)
}

fn next_layer(ifs: &Ifs, layer: &[SymSet]) -> Result<Vec<SymSet>, MapError> {
    let next: Vec<SymSet> = layer
        .par_iter()
        .flat_map_iter(|v| ifs.maps.iter().map(move |f| f.image(v)))
        .collect::<Result<_, _>>()?;
    Ok(dedup_sets(next))
}

/// Breadth-first search over composition depth: proved at the first depth
/// where every word image fits in an element of every cover; refuted when
/// the layers start repeating without ever fitting.
pub fn check_ifs_contractive(
    ifs: &Ifs,
    covers: &[Cover],
    nmax: usize,
) -> Result<Verdict<IfsContractivity, Refutation>, VerifyError> {
    for f in &ifs.maps {
        if !f.has_symbolic_image() {
            return Err(MapError::Unsupported(f.id().to_string()).into());
        }
    }
    for (i, c) in covers.iter().enumerate() {
        if !c.is_cover(ifs.space()) {
            return Err(VerifyError::Precondition(format!("cover {i} is not an open cover")));
        }
    }
    let mut layers: Vec<Vec<SymSet>> = vec![vec![ifs.space().whole().clone()]];
    loop {
        let depth = layers.len() - 1;
        let layer = layers.last().expect("nonempty");
        let misfit = covers.iter().enumerate().find_map(|(ci, c)| {
            layer
                .iter()
                .find(|v| c.element_containing(v).is_none())
                .map(|v| (ci, v.clone()))
        });
        let Some((ci, v)) = misfit else {
            return Ok(Verdict::Proved(IfsContractivity {
                depth,
                layer_sizes: layers.iter().map(Vec::len).collect(),
                word_images: layer.clone(),
            }));
        };
        if depth >= nmax {
            return Ok(Verdict::Unknown(Exhausted::new(
                nmax,
                format!("word image {v} fits no element of cover {ci}"),
            )));
        }
        let next = next_layer(ifs, layer)?;
        if layers.contains(&next) {
            // The layer sequence is periodic from here on and no layer in
            // the period fits every cover.
            return Ok(Verdict::Refuted(Refutation {
                cover_index: Some(ci),
                pair: None,
                reason: format!("word images repeat and {v} fits no element"),
            }));
        }
        layers.push(next);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Attractor {
    pub carrier: SymSet,
    /// Hutchinson steps from `X` to stabilization.
    pub steps: usize,
}

/// Iterates `K₀ = X`, `K_{t+1} = F(K_t)` until `F(K_t) = K_t`.
pub fn attractor(ifs: &Ifs, nmax: usize) -> Result<Verdict<Attractor, String>, VerifyError> {
    let space = ifs.space();
    let mut k = space.whole().clone();
    for steps in 0..=nmax {
        let next = hutchinson(ifs, &k)?;
        if next == k {
            if k.is_empty() || !space.is_closed(&k) {
                return Ok(Verdict::Refuted(format!("stable set {k} is not a hyperpoint")));
            }
            return Ok(Verdict::Proved(Attractor { carrier: k, steps }));
        }
        k = next;
    }
    Ok(Verdict::unknown(nmax, "Hutchinson chain did not stabilize"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum NoPreimage {
    /// No set at all is mapped into `K`.
    EmptyStar,
    /// The largest candidate is closed but its image misses part of `K`.
    ShortImage { star: SymSet, image: SymSet },
}

/// Decides whether `K = F(E)` for some closed nonempty `E`, through
/// `E* = ⋂ f_i⁻¹[K]`, the largest set with `F(E*) ⊆ K`.
pub fn has_preimage(ifs: &Ifs, k: &HyperPoint) -> Result<Verdict<SymSet, NoPreimage>, VerifyError> {
    let space = ifs.space();
    let mut star = space.whole().clone();
    for f in &ifs.maps {
        star = star.inter(&f.preimage(k.carrier())?);
    }
    if star.is_empty() {
        return Ok(Verdict::Refuted(NoPreimage::EmptyStar));
    }
    let image = hutchinson(ifs, &star)?;
    if space.is_closed(&star) {
        return Ok(if image == *k.carrier() {
            Verdict::Proved(star)
        } else {
            Verdict::Refuted(NoPreimage::ShortImage { star, image })
        });
    }
    // E* is not closed: try closed subsets of it.
    let mut candidates: Vec<SymSet> = Vec::new();
    let window = star.oracle_bound() + 4;
    let pts = star.enumerate_window(-window, window);
    candidates.push(SymSet::from_points(space.ground(), &pts)?);
    let mut r = rng(0x9e3);
    for _ in 0..200 {
        let c = random_closed_set(&mut r, space);
        if r.gen_bool(0.5) {
            candidates.push(space.closure(&c.inter(&star)));
        }
        candidates.push(c);
    }
    for e in candidates {
        if !e.is_empty() && e.is_subset(&star) && space.is_closed(&e) && hutchinson(ifs, &e)? == *k.carrier() {
            return Ok(Verdict::Proved(e));
        }
    }
    Ok(Verdict::unknown(200, "E* is not closed and no closed subset was found"))
}

/// A point of `F[2^X]` inside a basic Vietoris set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LimitWitness {
    pub witness: HyperPoint,
    pub preimage: SymSet,
}

fn is_thm8_ifs(ifs: &Ifs) -> bool {
    let mut ids: Vec<&str> = ifs.maps.iter().map(SpaceMap::id).collect();
    ids.sort_unstable();
    ids.dedup();
    ifs.space().id() == "thm8" && ids == ["thm8-f", "thm8-g"]
}

/// Finds `F(E) ∈ B` for `B ∋ K`. On the thm8 IFS the least even number
/// `2n` in the core of `B` gives `F({2n-1}) = {2n}`; elsewhere a bounded
/// search over singletons and generated closed sets is used.
pub fn limit_point_witness(
    ifs: &Ifs,
    k: &HyperPoint,
    b: &VietorisBasic,
) -> Result<Verdict<LimitWitness, String>, VerifyError> {
    if !vietoris_member(k, b) {
        return Err(VerifyError::Precondition("K is not in the basic set".into()));
    }
    let space = ifs.space();
    let check = |e: SymSet| -> Result<Option<LimitWitness>, VerifyError> {
        if e.is_empty() || !space.is_closed(&e) {
            return Ok(None);
        }
        let image = hutchinson(ifs, &e)?;
        if image.is_empty() || !space.is_closed(&image) {
            return Ok(None);
        }
        let witness = HyperPoint::new(space, image)?;
        Ok(vietoris_member(&witness, b).then_some(LimitWitness {
            witness,
            preimage: e,
        }))
    };
    if is_thm8_ifs(ifs) {
        let even = SymSet::even(space.ground(), None)?;
        if let Some(v) = b.core().inter(&even).min_int_element(None)? {
            let e = SymSet::finite(space.ground(), None, &[v - 1])?;
            if let Some(w) = check(e)? {
                return Ok(Verdict::Proved(w));
            }
        }
    }
    let core = b.core();
    let window = core.oracle_bound() + 4;
    let mut candidates: Vec<SymSet> = Vec::new();
    for p in space.whole().enumerate_window(-window, window) {
        candidates.push(SymSet::singleton(space.ground(), &p)?);
    }
    let mut r = rng(0x71a);
    for _ in 0..200 {
        candidates.push(random_closed_set(&mut r, space));
    }
    candidates.push(space.whole().clone());
    let searched = candidates.len();
    for e in candidates {
        if let Some(w) = check(e)? {
            return Ok(Verdict::Proved(w));
        }
    }
    Ok(Verdict::Refuted(format!(
        "no image of {searched} searched closed sets lies in the basic set"
    )))
}

/// Contradiction data for two distinct fixed sets of `F`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoFixedSets {
    /// A point of one fixed set outside the other.
    pub z: crate::setalg::Point,
    /// `{E₂ᶜ, {z}ᶜ}`: every word image meets `E₂` and some contains `z`,
    /// so none fits this cover.
    pub cover: Cover,
    pub contractivity: Verdict<IfsContractivity, Refutation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum AttractorUniqueness {
    Same,
    Distinct(Box<TwoFixedSets>),
}

/// Proved when `E₁ = E₂` or when their difference yields a cover on which
/// the IFS is not contractive; refuted if that cover is absorbed anyway.
pub fn attractor_uniqueness(
    ifs: &Ifs,
    e1: &SymSet,
    e2: &SymSet,
    nmax: usize,
) -> Result<Verdict<AttractorUniqueness, String>, VerifyError> {
    let space = ifs.space();
    for e in [e1, e2] {
        if hutchinson(ifs, e)? != *e {
            return Err(VerifyError::Precondition(format!("{e} is not fixed by F")));
        }
        if e.is_empty() || !space.is_closed(e) {
            return Err(VerifyError::Precondition(format!("{e} is not a hyperpoint")));
        }
    }
    if e1 == e2 {
        return Ok(Verdict::Proved(AttractorUniqueness::Same));
    }
    let (inside, outside) = if e1.is_subset(e2) { (e2, e1) } else { (e1, e2) };
    let z = inside
        .diff(outside)
        .any_element()
        .expect("distinct sets differ somewhere");
    let g = space.ground();
    let cover = Cover::new(vec![
        space.whole().diff(outside),
        space.whole().diff(&SymSet::singleton(g, &z)?),
    ]);
    let contractivity = check_ifs_contractive(ifs, std::slice::from_ref(&cover), nmax)?;
    if contractivity.is_proved() {
        return Ok(Verdict::Refuted(
            "the separating cover was absorbed despite two fixed sets".into(),
        ));
    }
    Ok(Verdict::Proved(AttractorUniqueness::Distinct(Box::new(
        TwoFixedSets {
            z,
            cover,
            contractivity,
        },
    ))))
}

/// Fixed sets of `F` among the candidates, deduplicated.
pub fn fixed_sets_among(ifs: &Ifs, candidates: &[SymSet]) -> Result<Vec<SymSet>, MapError> {
    let mut out = Vec::new();
    for c in candidates {
        if !c.is_empty() && ifs.space().is_closed(c) && hutchinson(ifs, c)? == *c {
            out.push(c.clone());
        }
    }
    Ok(dedup_sets(out))
}
