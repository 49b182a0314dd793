use std::sync::Arc;

use super::category::{FiniteCategory, FunctorData, MorId, ObjId};
use crate::error::{Error, Result};
use crate::report::LawReport;

/// A contravariant functor `M: S^op → Cat` with finite values.
///
/// `action[χ]` is `M(χ): M(cod χ) → M(dom χ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexedCategory {
    pub base: Arc<FiniteCategory>,
    pub fibers: Vec<Arc<FiniteCategory>>,
    pub action: Vec<FunctorData>,
}

impl IndexedCategory {
    pub fn new(
        base: Arc<FiniteCategory>,
        fibers: Vec<Arc<FiniteCategory>>,
        action: Vec<FunctorData>,
    ) -> Result<Self> {
        let m = Self::new_unchecked(base, fibers, action)?;
        if let Some(r) = m.check_laws().failures().next() {
            return Err(Error::IllFormedIndexed {
                law: if r.law.ends_with("identity") {
                    "identity"
                } else if r.law.ends_with("composition") {
                    "composition"
                } else {
                    "functor"
                },
                witness: r.witness.clone(),
            });
        }
        Ok(m)
    }

    /// Builds an indexed category checking only shapes, not functoriality.
    pub fn new_unchecked(
        base: Arc<FiniteCategory>,
        fibers: Vec<Arc<FiniteCategory>>,
        action: Vec<FunctorData>,
    ) -> Result<Self> {
        if fibers.len() != base.object_count() || action.len() != base.morphism_count() {
            return Err(Error::IllFormedIndexed {
                law: "shape",
                witness: "fiber or action count differs from base".into(),
            });
        }
        for chi in base.morphisms() {
            let a = &action[chi];
            if a.src != fibers[base.cod(chi)] || a.dst != fibers[base.dom(chi)] {
                return Err(Error::IllFormedIndexed {
                    law: "shape",
                    witness: format!("action of {} has wrong endpoints", base.morphism_name(chi)),
                });
            }
        }
        Ok(Self { base, fibers, action })
    }

    /// The indexed category with the same fiber `c` everywhere and identity actions.
    pub fn constant(base: Arc<FiniteCategory>, c: Arc<FiniteCategory>) -> Self {
        let fibers = vec![c.clone(); base.object_count()];
        let action = base.morphisms().map(|_| FunctorData::identity(c.clone())).collect();
        Self { base, fibers, action }
    }

    pub fn fiber(&self, s: ObjId) -> &Arc<FiniteCategory> {
        &self.fibers[s]
    }

    pub fn act(&self, chi: MorId) -> &FunctorData {
        &self.action[chi]
    }

    /// Checks every action functor and the two functoriality laws of `M`.
    pub fn check_laws(&self) -> LawReport {
        let mut report = LawReport::new();
        for chi in self.base.morphisms() {
            for r in self.action[chi].check_laws().failures() {
                report.fail(
                    "indexed.action-functor",
                    self.base.morphism_name(chi).to_string(),
                    format!("{}: {}", r.law, r.witness),
                );
            }
        }
        for s in self.base.objects() {
            if !self.action[self.base.identity(s)].is_identity() {
                report.fail(
                    "indexed.identity",
                    self.base.object_name(s).to_string(),
                    "M(id) is not the identity functor",
                );
            }
        }
        for f in self.base.morphisms() {
            for g in self.base.morphisms() {
                let Some(gf) = self.base.compose(g, f) else { continue };
                // M(g∘f) = M(f) ∘ M(g)
                let rhs = self.action[f].after(&self.action[g]);
                if rhs.as_ref().ok() != Some(&self.action[gf]) {
                    report.fail(
                        "indexed.composition",
                        format!("{}∘{}", self.base.morphism_name(g), self.base.morphism_name(f)),
                        format!(
                            "M({}∘{}) differs from M({})∘M({})",
                            self.base.morphism_name(g),
                            self.base.morphism_name(f),
                            self.base.morphism_name(f),
                            self.base.morphism_name(g)
                        ),
                    );
                }
            }
        }
        report
    }

    /// `M ∘ L^op`, indexed over `src(L)`.
    pub fn precompose(&self, l: &FunctorData) -> Result<IndexedCategory> {
        if l.dst != self.base {
            return Err(Error::BaseMismatch(
                "reindexing functor does not land in the base of the indexed category".into(),
            ));
        }
        let fibers = l.src.objects().map(|s| self.fibers[l.obj(s)].clone()).collect();
        let action = l.src.morphisms().map(|chi| self.action[l.mor(chi)].clone()).collect();
        Ok(IndexedCategory {
            base: l.src.clone(),
            fibers,
            action,
        })
    }
}

/// A natural transformation `η: M → M'` between indexed categories over one base.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexedNatTransform {
    pub src: IndexedCategory,
    pub dst: IndexedCategory,
    pub components: Vec<FunctorData>,
}

impl IndexedNatTransform {
    pub fn new(src: IndexedCategory, dst: IndexedCategory, components: Vec<FunctorData>) -> Result<Self> {
        let t = Self::new_unchecked(src, dst, components)?;
        if let Some(r) = t.check_naturality().failures().next() {
            return Err(Error::Naturality(format!("{} {}", r.case, r.witness)));
        }
        Ok(t)
    }

    pub fn new_unchecked(
        src: IndexedCategory,
        dst: IndexedCategory,
        components: Vec<FunctorData>,
    ) -> Result<Self> {
        if src.base != dst.base {
            return Err(Error::BaseMismatch("transform endpoints over different bases".into()));
        }
        if components.len() != src.base.object_count() {
            return Err(Error::BaseMismatch("component count differs from base objects".into()));
        }
        for s in src.base.objects() {
            if components[s].src != src.fibers[s] || components[s].dst != dst.fibers[s] {
                return Err(Error::BaseMismatch(format!(
                    "component at {} has wrong endpoints",
                    src.base.object_name(s)
                )));
            }
        }
        Ok(Self { src, dst, components })
    }

    pub fn identity(m: &IndexedCategory) -> Self {
        Self {
            src: m.clone(),
            dst: m.clone(),
            components: m.fibers.iter().map(|f| FunctorData::identity(f.clone())).collect(),
        }
    }

    pub fn base(&self) -> &Arc<FiniteCategory> {
        &self.src.base
    }

    /// Vertical composite `self ∘ first`.
    pub fn after(&self, first: &IndexedNatTransform) -> Result<IndexedNatTransform> {
        if first.dst != self.src {
            return Err(Error::BaseMismatch("vertical composite endpoints differ".into()));
        }
        let components = self
            .components
            .iter()
            .zip(&first.components)
            .map(|(g, f)| g.after(f))
            .collect::<Result<Vec<_>>>()?;
        Ok(IndexedNatTransform {
            src: first.src.clone(),
            dst: self.dst.clone(),
            components,
        })
    }

    /// Whiskering `η L^op: M ∘ L^op → M' ∘ L^op`.
    pub fn precompose(&self, l: &FunctorData) -> Result<IndexedNatTransform> {
        let src = self.src.precompose(l)?;
        let dst = self.dst.precompose(l)?;
        let components = l.src.objects().map(|s| self.components[l.obj(s)].clone()).collect();
        Ok(IndexedNatTransform { src, dst, components })
    }

    /// Naturality squares `η_Σ ∘ M(χ) = M'(χ) ∘ η_Σ'` for every base morphism.
    pub fn check_naturality(&self) -> LawReport {
        let mut report = LawReport::new();
        let base = self.base().clone();
        for (s, c) in self.components.iter().enumerate() {
            for r in c.check_laws().failures() {
                report.fail("nat.component-functor", base.object_name(s).to_string(), r.witness.clone());
            }
        }
        for chi in base.morphisms() {
            let (s, t) = (base.dom(chi), base.cod(chi));
            let lhs = self.components[s].after(&self.src.action[chi]);
            let rhs = self.dst.action[chi].after(&self.components[t]);
            match (lhs, rhs) {
                (Ok(a), Ok(b)) if a == b => {}
                _ => report.fail(
                    "nat.naturality",
                    base.morphism_name(chi).to_string(),
                    format!("square at {} does not commute", base.morphism_name(chi)),
                ),
            }
        }
        report
    }
}
