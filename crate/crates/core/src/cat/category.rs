use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::report::LawReport;

pub type ObjId = usize;
pub type MorId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MorphismRecord {
    pub name: String,
    pub dom: ObjId,
    pub cod: ObjId,
}

/// A finite category given by explicit tables.
///
/// Objects and morphisms are numbered densely from zero; every enumeration is
/// emitted in id order. Composition is stored as a full `m × m` table where
/// `compose[g * m + f]` holds `g ∘ f` when `cod(f) = dom(g)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<MorphismRecord>,
    identity: Vec<MorId>,
    compose: Vec<Option<MorId>>,
}

impl FiniteCategory {
    /// Builds a category from tables and verifies every category law.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<MorphismRecord>,
        identity: Vec<MorId>,
        compose: &BTreeMap<(MorId, MorId), MorId>,
    ) -> Result<Self> {
        let c = Self::new_unchecked(objects, morphisms, identity, compose)?;
        if let Some(r) = c.check_laws().failures().next() {
            return Err(Error::IllFormedCategory {
                law: law_name(&r.law),
                witness: r.witness.clone(),
            });
        }
        Ok(c)
    }

    /// Builds a category from tables checking only that ids are in range.
    ///
    /// Intended for constructing deliberately broken inputs for law checkers.
    pub fn new_unchecked(
        objects: Vec<String>,
        morphisms: Vec<MorphismRecord>,
        identity: Vec<MorId>,
        compose: &BTreeMap<(MorId, MorId), MorId>,
    ) -> Result<Self> {
        let n = objects.len();
        let m = morphisms.len();
        if identity.len() != n {
            return Err(Error::IllFormedCategory {
                law: "identity-total",
                witness: format!("{} identities for {} objects", identity.len(), n),
            });
        }
        for r in &morphisms {
            if r.dom >= n || r.cod >= n {
                return Err(Error::IllFormedCategory {
                    law: "typing",
                    witness: format!("morphism {} has endpoint out of range", r.name),
                });
            }
        }
        if identity.iter().any(|&i| i >= m) {
            return Err(Error::IllFormedCategory {
                law: "identity-total",
                witness: "identity id out of range".into(),
            });
        }
        let mut table = vec![None; m * m];
        for (&(g, f), &h) in compose {
            if g >= m || f >= m || h >= m {
                return Err(Error::IllFormedCategory {
                    law: "typing",
                    witness: format!("composition entry ({g},{f})->{h} out of range"),
                });
            }
            table[g * m + f] = Some(h);
        }
        Ok(Self {
            objects,
            morphisms,
            identity,
            compose: table,
        })
    }

    /// Builds a category from a composition function evaluated on every composable pair.
    pub fn from_fn(
        objects: Vec<String>,
        morphisms: Vec<MorphismRecord>,
        identity: Vec<MorId>,
        mut compose: impl FnMut(MorId, MorId) -> MorId,
    ) -> Result<Self> {
        let mut table = BTreeMap::new();
        for f in 0..morphisms.len() {
            for g in 0..morphisms.len() {
                if morphisms[f].cod == morphisms[g].dom {
                    table.insert((g, f), compose(g, f));
                }
            }
        }
        Self::new(objects, morphisms, identity, &table)
    }

    /// The category with one object and one morphism.
    pub fn terminal() -> Self {
        Self::discrete(&["*"])
    }

    /// A discrete category on the given object names.
    pub fn discrete(names: &[&str]) -> Self {
        let objects: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let morphisms = (0..objects.len())
            .map(|i| MorphismRecord {
                name: format!("id_{}", objects[i]),
                dom: i,
                cod: i,
            })
            .collect();
        let identity = (0..objects.len()).collect();
        Self::from_fn(objects, morphisms, identity, |g, _| g).expect("discrete category")
    }

    /// The finite preorder on `n` objects where `leq(i, j)` gives a unique arrow `i → j`.
    ///
    /// `leq` must be reflexive and transitive.
    pub fn preorder(names: &[String], leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = names.len();
        let mut morphisms = Vec::new();
        let mut index = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                if leq(i, j) {
                    index.insert((i, j), morphisms.len());
                    morphisms.push(MorphismRecord {
                        name: if i == j {
                            format!("id_{}", names[i])
                        } else {
                            format!("{}<{}", names[i], names[j])
                        },
                        dom: i,
                        cod: j,
                    });
                }
            }
        }
        let mut identity = Vec::with_capacity(n);
        for i in 0..n {
            match index.get(&(i, i)) {
                Some(&id) => identity.push(id),
                None => {
                    return Err(Error::IllFormedCategory {
                        law: "identity-total",
                        witness: format!("preorder not reflexive at {}", names[i]),
                    })
                }
            }
        }
        let mut table = BTreeMap::new();
        for (&(a, b), &f) in &index {
            for (&(b2, c), &g) in &index {
                if b == b2 {
                    match index.get(&(a, c)) {
                        Some(&h) => {
                            table.insert((g, f), h);
                        }
                        None => {
                            return Err(Error::IllFormedCategory {
                                law: "composition-total",
                                witness: format!(
                                    "preorder not transitive at {} {} {}",
                                    names[a], names[b], names[c]
                                ),
                            })
                        }
                    }
                }
            }
        }
        Self::new(names.to_vec(), morphisms, identity, &table)
    }

    /// The arrow category `a → b`.
    pub fn arrow() -> Self {
        Self::preorder(&["a".to_string(), "b".to_string()], |i, j| i <= j).expect("arrow")
    }

    /// The one-object category of the cyclic group of order `n`.
    pub fn cyclic_group(n: usize) -> Self {
        let objects = vec!["*".to_string()];
        let morphisms = (0..n)
            .map(|k| MorphismRecord {
                name: format!("g{k}"),
                dom: 0,
                cod: 0,
            })
            .collect();
        Self::from_fn(objects, morphisms, vec![0], |g, f| (g + f) % n).expect("cyclic group")
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> std::ops::Range<ObjId> {
        0..self.objects.len()
    }

    pub fn morphisms(&self) -> std::ops::Range<MorId> {
        0..self.morphisms.len()
    }

    pub fn object_name(&self, o: ObjId) -> &str {
        &self.objects[o]
    }

    pub fn morphism_name(&self, f: MorId) -> &str {
        &self.morphisms[f].name
    }

    pub fn record(&self, f: MorId) -> &MorphismRecord {
        &self.morphisms[f]
    }

    pub fn dom(&self, f: MorId) -> ObjId {
        self.morphisms[f].dom
    }

    pub fn cod(&self, f: MorId) -> ObjId {
        self.morphisms[f].cod
    }

    pub fn identity(&self, o: ObjId) -> MorId {
        self.identity[o]
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        self.identity[self.dom(f)] == f
    }

    /// `g ∘ f`, defined iff `cod(f) = dom(g)`.
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        self.compose[g * self.morphisms.len() + f]
    }

    pub fn object_by_name(&self, name: &str) -> Option<ObjId> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_by_name(&self, name: &str) -> Option<MorId> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    /// Morphisms `a → b` in id order.
    pub fn hom(&self, a: ObjId, b: ObjId) -> Vec<MorId> {
        self.morphisms()
            .filter(|&f| self.dom(f) == a && self.cod(f) == b)
            .collect()
    }

    /// Exhaustive scan of the category laws: composition typing and totality,
    /// both identity laws and associativity on all composable triples.
    pub fn check_laws(&self) -> LawReport {
        let mut report = LawReport::new();
        let m = self.morphisms.len();
        let mut ok = true;
        for o in self.objects() {
            let i = self.identity[o];
            if self.dom(i) != o || self.cod(i) != o {
                ok = false;
                report.fail("category.identity-typing", self.objects[o].clone(), self.morphism_name(i).to_string());
            }
        }
        for f in 0..m {
            for g in 0..m {
                let composable = self.cod(f) == self.dom(g);
                match (composable, self.compose(g, f)) {
                    (true, None) => {
                        ok = false;
                        report.fail(
                            "category.composition-total",
                            format!("{}∘{}", self.morphism_name(g), self.morphism_name(f)),
                            "undefined",
                        );
                    }
                    (false, Some(_)) => {
                        ok = false;
                        report.fail(
                            "category.composition-typing",
                            format!("{}∘{}", self.morphism_name(g), self.morphism_name(f)),
                            "defined on non-composable pair",
                        );
                    }
                    (true, Some(h)) => {
                        if self.dom(h) != self.dom(f) || self.cod(h) != self.cod(g) {
                            ok = false;
                            report.fail(
                                "category.composition-typing",
                                format!("{}∘{}", self.morphism_name(g), self.morphism_name(f)),
                                self.morphism_name(h).to_string(),
                            );
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        if !ok {
            return report;
        }
        for f in 0..m {
            let left = self.compose(self.identity[self.cod(f)], f);
            let right = self.compose(f, self.identity[self.dom(f)]);
            if left != Some(f) || right != Some(f) {
                report.fail(
                    "category.identity",
                    self.morphism_name(f).to_string(),
                    format!("left={left:?} right={right:?}"),
                );
            }
        }
        for f in 0..m {
            for g in 0..m {
                let Some(gf) = self.compose(g, f) else { continue };
                for h in 0..m {
                    let Some(hg) = self.compose(h, g) else { continue };
                    let a = self.compose(h, gf);
                    let b = self.compose(hg, f);
                    if a != b {
                        report.fail(
                            "category.associativity",
                            format!(
                                "{},{},{}",
                                self.morphism_name(h),
                                self.morphism_name(g),
                                self.morphism_name(f)
                            ),
                            format!("{a:?}!={b:?}"),
                        );
                    }
                }
            }
        }
        if report.is_empty() {
            report.pass("category.laws", format!("{}obj/{}mor", self.objects.len(), m));
        }
        report
    }

    /// Structural isomorphism test by brute force over object and morphism bijections.
    ///
    /// Only meant for the tiny categories used in tests.
    pub fn is_isomorphic(&self, other: &FiniteCategory) -> bool {
        if self.object_count() != other.object_count() || self.morphism_count() != other.morphism_count() {
            return false;
        }
        let n = self.object_count();
        let perms = permutations(n);
        for po in perms {
            let mut hom_ok = true;
            for a in 0..n {
                for b in 0..n {
                    if self.hom(a, b).len() != other.hom(po[a], po[b]).len() {
                        hom_ok = false;
                    }
                }
            }
            if !hom_ok {
                continue;
            }
            if self.extend_iso(other, &po, 0, &mut vec![None; self.morphism_count()]) {
                return true;
            }
        }
        false
    }

    fn extend_iso(
        &self,
        other: &FiniteCategory,
        po: &[usize],
        f: MorId,
        assign: &mut Vec<Option<MorId>>,
    ) -> bool {
        if f == self.morphism_count() {
            for x in self.morphisms() {
                for y in self.morphisms() {
                    if let Some(yx) = self.compose(y, x) {
                        let (ax, ay) = (assign[x].unwrap(), assign[y].unwrap());
                        if other.compose(ay, ax) != assign[yx] {
                            return false;
                        }
                    }
                }
            }
            return self
                .objects()
                .all(|o| assign[self.identity(o)] == Some(other.identity(po[o])));
        }
        let used: Vec<MorId> = assign.iter().flatten().copied().collect();
        for cand in other.hom(po[self.dom(f)], po[self.cod(f)]) {
            if used.contains(&cand) {
                continue;
            }
            assign[f] = Some(cand);
            if self.extend_iso(other, po, f + 1, assign) {
                return true;
            }
            assign[f] = None;
        }
        false
    }
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn law_name(law: &str) -> &'static str {
    match law {
        "category.identity-typing" => "identity-typing",
        "category.composition-total" => "composition-total",
        "category.composition-typing" => "composition-typing",
        "category.identity" => "identity",
        "category.associativity" => "associativity",
        _ => "category",
    }
}

impl fmt::Display for FiniteCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(category (objects")?;
        for o in &self.objects {
            write!(f, " {o}")?;
        }
        write!(f, ") (morphisms")?;
        for m in &self.morphisms {
            write!(f, " ({} {} {})", m.name, self.objects[m.dom], self.objects[m.cod])?;
        }
        write!(f, "))")
    }
}

/// A functor between finite categories, given by its object and morphism maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FunctorData {
    pub src: Arc<FiniteCategory>,
    pub dst: Arc<FiniteCategory>,
    pub on_objects: Vec<ObjId>,
    pub on_morphisms: Vec<MorId>,
}

impl FunctorData {
    /// Builds a functor and verifies the functor laws exhaustively.
    pub fn new(
        src: Arc<FiniteCategory>,
        dst: Arc<FiniteCategory>,
        on_objects: Vec<ObjId>,
        on_morphisms: Vec<MorId>,
    ) -> Result<Self> {
        let f = Self::new_unchecked(src, dst, on_objects, on_morphisms)?;
        if let Some(r) = f.check_laws().failures().next() {
            return Err(Error::IllFormedFunctor {
                law: match r.law.as_str() {
                    "functor.typing" => "typing",
                    "functor.identity" => "identity",
                    _ => "composition",
                },
                witness: r.witness.clone(),
            });
        }
        Ok(f)
    }

    pub fn new_unchecked(
        src: Arc<FiniteCategory>,
        dst: Arc<FiniteCategory>,
        on_objects: Vec<ObjId>,
        on_morphisms: Vec<MorId>,
    ) -> Result<Self> {
        if on_objects.len() != src.object_count()
            || on_morphisms.len() != src.morphism_count()
            || on_objects.iter().any(|&o| o >= dst.object_count())
            || on_morphisms.iter().any(|&m| m >= dst.morphism_count())
        {
            return Err(Error::IllFormedFunctor {
                law: "typing",
                witness: "map sizes or targets out of range".into(),
            });
        }
        Ok(Self {
            src,
            dst,
            on_objects,
            on_morphisms,
        })
    }

    pub fn identity(c: Arc<FiniteCategory>) -> Self {
        Self {
            on_objects: c.objects().collect(),
            on_morphisms: c.morphisms().collect(),
            src: c.clone(),
            dst: c,
        }
    }

    pub fn obj(&self, o: ObjId) -> ObjId {
        self.on_objects[o]
    }

    pub fn mor(&self, f: MorId) -> MorId {
        self.on_morphisms[f]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &FunctorData) -> Result<FunctorData> {
        if first.dst != self.src {
            return Err(Error::BaseMismatch(
                "functor composite: codomain of first differs from domain of second".into(),
            ));
        }
        Ok(FunctorData {
            src: first.src.clone(),
            dst: self.dst.clone(),
            on_objects: first.on_objects.iter().map(|&o| self.on_objects[o]).collect(),
            on_morphisms: first.on_morphisms.iter().map(|&m| self.on_morphisms[m]).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.dst
            && self.on_objects.iter().enumerate().all(|(i, &o)| i == o)
            && self.on_morphisms.iter().enumerate().all(|(i, &m)| i == m)
    }

    /// Exhaustive functor-law check: typing, identities and composites.
    pub fn check_laws(&self) -> LawReport {
        let mut report = LawReport::new();
        let (s, d) = (&self.src, &self.dst);
        for f in s.morphisms() {
            let g = self.on_morphisms[f];
            if d.dom(g) != self.on_objects[s.dom(f)] || d.cod(g) != self.on_objects[s.cod(f)] {
                report.fail(
                    "functor.typing",
                    s.morphism_name(f).to_string(),
                    format!("{} ↦ {}", s.morphism_name(f), d.morphism_name(g)),
                );
            }
        }
        if !report.is_empty() {
            return report;
        }
        for o in s.objects() {
            let got = self.on_morphisms[s.identity(o)];
            let want = d.identity(self.on_objects[o]);
            if got != want {
                report.fail(
                    "functor.identity",
                    s.object_name(o).to_string(),
                    format!("id ↦ {}", d.morphism_name(got)),
                );
            }
        }
        for f in s.morphisms() {
            for g in s.morphisms() {
                if let Some(gf) = s.compose(g, f) {
                    let lhs = self.on_morphisms[gf];
                    let rhs = d.compose(self.on_morphisms[g], self.on_morphisms[f]);
                    if Some(lhs) != rhs {
                        report.fail(
                            "functor.composition",
                            format!("{}∘{}", s.morphism_name(g), s.morphism_name(f)),
                            format!(
                                "F({}∘{})={} but F({})∘F({})={:?}",
                                s.morphism_name(g),
                                s.morphism_name(f),
                                d.morphism_name(lhs),
                                s.morphism_name(g),
                                s.morphism_name(f),
                                rhs.map(|r| d.morphism_name(r).to_string())
                            ),
                        );
                    }
                }
            }
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_categories_are_well_formed() {
        for c in [
            FiniteCategory::terminal(),
            FiniteCategory::arrow(),
            FiniteCategory::cyclic_group(3),
            FiniteCategory::discrete(&["a", "b", "c"]),
        ] {
            assert!(c.check_laws().all_passed(), "{c}");
        }
    }

    #[test]
    fn broken_associativity_is_detected() {
        // a monoid table on {e, x, y} that is not associative
        let objects = vec!["*".to_string()];
        let morphisms: Vec<MorphismRecord> = ["e", "x", "y"]
            .iter()
            .map(|n| MorphismRecord { name: n.to_string(), dom: 0, cod: 0 })
            .collect();
        let mut table = BTreeMap::new();
        let mul = [[0, 1, 2], [1, 2, 0], [2, 1, 1]];
        for g in 0..3 {
            for f in 0..3 {
                table.insert((g, f), mul[g][f]);
            }
        }
        let err = FiniteCategory::new(objects, morphisms, vec![0], &table).unwrap_err();
        assert!(matches!(err, Error::IllFormedCategory { law: "associativity", .. }), "{err}");
    }

    #[test]
    fn isomorphism_ignores_labels() {
        let a = FiniteCategory::preorder(&["p".into(), "q".into()], |i, j| i >= j).unwrap();
        assert!(a.is_isomorphic(&FiniteCategory::arrow()));
        assert!(!FiniteCategory::cyclic_group(2).is_isomorphic(&FiniteCategory::terminal()));
    }

    #[test]
    fn functor_law_violation_names_pair() {
        let c = Arc::new(FiniteCategory::cyclic_group(2));
        let t = Arc::new(FiniteCategory::cyclic_group(2));
        // sends the generator to itself but the identity to the generator
        let err = FunctorData::new(c, t, vec![0], vec![1, 1]).unwrap_err();
        assert!(matches!(err, Error::IllFormedFunctor { .. }));
    }
}
