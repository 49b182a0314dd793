use std::collections::HashMap;
use std::sync::Arc;

use super::category::{FiniteCategory, FunctorData, MorId, MorphismRecord, ObjId};
use super::indexed::{IndexedCategory, IndexedNatTransform};
use crate::error::{Error, Result};

/// Which of the two constructions over an indexed category is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Construction {
    /// The category of elements `∐_S M`.
    Elements,
    /// The category of lists (sections) `∏_S M`.
    Lists,
}

/// Default cap on the number of partial sections visited by the lists search.
pub const DEFAULT_SECTION_BUDGET: usize = 1_000_000;

/// A morphism `⟨h, χ⟩: ⟨A, Σ⟩ → ⟨A', Σ'⟩` of the category of elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementMorphism {
    pub h: MorId,
    pub chi: MorId,
    pub target: ObjId,
}

/// The category of elements together with its labelling and projection.
#[derive(Debug, Clone)]
pub struct Elements {
    pub category: Arc<FiniteCategory>,
    pub projection: FunctorData,
    /// `(A, Σ)` for every object id.
    pub objects: Vec<(ObjId, ObjId)>,
    pub morphisms: Vec<ElementMorphism>,
    obj_index: HashMap<(ObjId, ObjId), ObjId>,
    mor_index: HashMap<ElementMorphism, MorId>,
}

impl Elements {
    pub fn object(&self, a: ObjId, sigma: ObjId) -> Option<ObjId> {
        self.obj_index.get(&(a, sigma)).copied()
    }

    pub fn morphism(&self, m: ElementMorphism) -> Option<MorId> {
        self.mor_index.get(&m).copied()
    }
}

fn ensure_well_formed(m: &IndexedCategory) -> Result<()> {
    if let Some(r) = m.check_laws().failures().next() {
        return Err(Error::IllFormedIndexed {
            law: if r.law.ends_with("identity") {
                "identity"
            } else if r.law.ends_with("composition") {
                "composition"
            } else {
                "action-functor"
            },
            witness: format!("{} {}", r.case, r.witness),
        });
    }
    Ok(())
}

/// Builds `∐_S M` with its projection `π: ⟨h, χ⟩ ↦ χ`.
pub fn category_of_elements(m: &IndexedCategory) -> Result<Elements> {
    ensure_well_formed(m)?;
    let base = &m.base;
    let mut objects = Vec::new();
    let mut obj_index = HashMap::new();
    let mut names = Vec::new();
    for s in base.objects() {
        for a in m.fibers[s].objects() {
            obj_index.insert((a, s), objects.len());
            objects.push((a, s));
            names.push(format!("<{},{}>", m.fibers[s].object_name(a), base.object_name(s)));
        }
    }
    let mut morphisms = Vec::new();
    let mut records = Vec::new();
    let mut mor_index = HashMap::new();
    for chi in base.morphisms() {
        let (s, t) = (base.dom(chi), base.cod(chi));
        let fs = &m.fibers[s];
        let act = &m.action[chi];
        for a in fs.objects() {
            for a2 in m.fibers[t].objects() {
                for h in fs.hom(a, act.obj(a2)) {
                    let em = ElementMorphism { h, chi, target: a2 };
                    mor_index.insert(em, morphisms.len());
                    morphisms.push(em);
                    records.push(MorphismRecord {
                        name: format!("<{},{}>", fs.morphism_name(h), base.morphism_name(chi)),
                        dom: obj_index[&(a, s)],
                        cod: obj_index[&(a2, t)],
                    });
                }
            }
        }
    }
    let identity = objects
        .iter()
        .map(|&(a, s)| {
            mor_index[&ElementMorphism {
                h: m.fibers[s].identity(a),
                chi: base.identity(s),
                target: a,
            }]
        })
        .collect();
    let category = FiniteCategory::from_fn(names, records, identity, |g, f| {
        let (mf, mg) = (morphisms[f], morphisms[g]);
        let fiber = &m.fibers[base.dom(mf.chi)];
        let h = fiber
            .compose(m.action[mf.chi].mor(mg.h), mf.h)
            .expect("typed composite in fiber");
        let chi = base.compose(mg.chi, mf.chi).expect("typed composite in base");
        mor_index[&ElementMorphism { h, chi, target: mg.target }]
    })?;
    let category = Arc::new(category);
    let projection = FunctorData::new(
        category.clone(),
        base.clone(),
        objects.iter().map(|&(_, s)| s).collect(),
        morphisms.iter().map(|em| em.chi).collect(),
    )?;
    Ok(Elements {
        category,
        projection,
        objects,
        morphisms,
        obj_index,
        mor_index,
    })
}

/// A section `c` of the projection, written by its first components:
/// an object `A_Σ` per base object and an arrow `h_χ: A_Σ → M(χ)(A_Σ')` per base morphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Section {
    pub objects: Vec<ObjId>,
    pub arrows: Vec<MorId>,
}

/// A morphism of sections: one fiber arrow `k_Σ: A_Σ → A'_Σ` per base object.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SectionMorphism {
    pub src: usize,
    pub dst: usize,
    pub components: Vec<MorId>,
}

/// The category of lists together with the sections and morphisms it is built from.
#[derive(Debug, Clone)]
pub struct Lists {
    pub category: Arc<FiniteCategory>,
    pub sections: Vec<Section>,
    pub morphisms: Vec<SectionMorphism>,
    sec_index: HashMap<Section, usize>,
    mor_index: HashMap<SectionMorphism, MorId>,
}

impl Lists {
    pub fn section(&self, s: &Section) -> Option<usize> {
        self.sec_index.get(s).copied()
    }

    pub fn morphism(&self, m: &SectionMorphism) -> Option<MorId> {
        self.mor_index.get(m).copied()
    }
}

/// Enumerates all sections of `π: ∐_S M → S` by backtracking, pruning on the
/// functoriality constraints as soon as all three arrows involved are chosen.
pub fn sections(m: &IndexedCategory, budget: usize) -> Result<Vec<Section>> {
    ensure_well_formed(m)?;
    let base = &m.base;
    let mut out = Vec::new();
    let mut visited = 0usize;
    let mut objects = vec![0; base.object_count()];
    choose_objects(m, 0, &mut objects, &mut out, &mut visited, budget)?;
    Ok(out)
}

fn choose_objects(
    m: &IndexedCategory,
    s: usize,
    objects: &mut Vec<ObjId>,
    out: &mut Vec<Section>,
    visited: &mut usize,
    budget: usize,
) -> Result<()> {
    if s == objects.len() {
        let mut arrows = vec![None; m.base.morphism_count()];
        return choose_arrows(m, 0, objects, &mut arrows, out, visited, budget);
    }
    for a in m.fibers[s].objects() {
        objects[s] = a;
        choose_objects(m, s + 1, objects, out, visited, budget)?;
    }
    Ok(())
}

fn choose_arrows(
    m: &IndexedCategory,
    chi: usize,
    objects: &[ObjId],
    arrows: &mut Vec<Option<MorId>>,
    out: &mut Vec<Section>,
    visited: &mut usize,
    budget: usize,
) -> Result<()> {
    *visited += 1;
    if *visited > budget {
        return Err(Error::Budget(format!("section search exceeded {budget} nodes")));
    }
    let base = &m.base;
    if chi == base.morphism_count() {
        out.push(Section {
            objects: objects.to_vec(),
            arrows: arrows.iter().map(|a| a.expect("assigned")).collect(),
        });
        return Ok(());
    }
    let (s, t) = (base.dom(chi), base.cod(chi));
    let candidates = if base.is_identity(chi) {
        vec![m.fibers[s].identity(objects[s])]
    } else {
        m.fibers[s].hom(objects[s], m.action[chi].obj(objects[t]))
    };
    for h in candidates {
        arrows[chi] = Some(h);
        if consistent_so_far(m, arrows, chi) {
            choose_arrows(m, chi + 1, objects, arrows, out, visited, budget)?;
        }
    }
    arrows[chi] = None;
    Ok(())
}

/// Checks `h_{g∘f} = M(f)(h_g) ∘ h_f` for every triple that involves `last` and is fully assigned.
fn consistent_so_far(m: &IndexedCategory, arrows: &[Option<MorId>], last: usize) -> bool {
    let base = &m.base;
    for f in base.morphisms() {
        for g in base.morphisms() {
            let Some(gf) = base.compose(g, f) else { continue };
            if f != last && g != last && gf != last {
                continue;
            }
            let (Some(hf), Some(hg), Some(hgf)) = (arrows[f], arrows[g], arrows[gf]) else {
                continue;
            };
            let fiber = &m.fibers[base.dom(f)];
            if fiber.compose(m.action[f].mor(hg), hf) != Some(hgf) {
                return false;
            }
        }
    }
    true
}

/// Builds `∏_S M`: sections of the projection and the vertical natural
/// transformations between them.
pub fn category_of_lists(m: &IndexedCategory, budget: usize) -> Result<Lists> {
    let sections = sections(m, budget)?;
    let base = &m.base;
    let mut sec_index = HashMap::new();
    let mut names = Vec::new();
    for (i, s) in sections.iter().enumerate() {
        sec_index.insert(s.clone(), i);
        let parts: Vec<String> = base
            .objects()
            .map(|o| m.fibers[o].object_name(s.objects[o]).to_string())
            .collect();
        names.push(format!("[{}]#{i}", parts.join(",")));
    }
    let mut morphisms = Vec::new();
    let mut records = Vec::new();
    let mut mor_index = HashMap::new();
    let mut steps = 0usize;
    for (ci, c) in sections.iter().enumerate() {
        for (di, d) in sections.iter().enumerate() {
            let choices: Vec<Vec<MorId>> = base
                .objects()
                .map(|o| m.fibers[o].hom(c.objects[o], d.objects[o]))
                .collect();
            for comps in cartesian(&choices) {
                steps += 1;
                if steps > budget {
                    return Err(Error::Budget(format!("section morphism search exceeded {budget} candidates")));
                }
                if is_natural(m, c, d, &comps) {
                    let sm = SectionMorphism { src: ci, dst: di, components: comps };
                    mor_index.insert(sm.clone(), morphisms.len());
                    records.push(MorphismRecord {
                        name: format!(
                            "{{{}}}",
                            base.objects()
                                .map(|o| m.fibers[o].morphism_name(sm.components[o]))
                                .collect::<Vec<_>>()
                                .join(",")
                        ),
                        dom: ci,
                        cod: di,
                    });
                    morphisms.push(sm);
                }
            }
        }
    }
    let identity = sections
        .iter()
        .enumerate()
        .map(|(i, c)| {
            mor_index[&SectionMorphism {
                src: i,
                dst: i,
                components: base.objects().map(|o| m.fibers[o].identity(c.objects[o])).collect(),
            }]
        })
        .collect();
    let category = FiniteCategory::from_fn(names, records, identity, |g, f| {
        let (mf, mg) = (&morphisms[f], &morphisms[g]);
        let components = base
            .objects()
            .map(|o| m.fibers[o].compose(mg.components[o], mf.components[o]).expect("typed"))
            .collect();
        mor_index[&SectionMorphism { src: mf.src, dst: mg.dst, components }]
    })?;
    Ok(Lists {
        category: Arc::new(category),
        sections,
        morphisms,
        sec_index,
        mor_index,
    })
}

/// Naturality of `k: c ⇒ d`: `h^d_χ ∘ k_Σ = M(χ)(k_Σ') ∘ h^c_χ` for every `χ: Σ → Σ'`.
fn is_natural(m: &IndexedCategory, c: &Section, d: &Section, k: &[MorId]) -> bool {
    let base = &m.base;
    base.morphisms().all(|chi| {
        let (s, t) = (base.dom(chi), base.cod(chi));
        let fiber = &m.fibers[s];
        fiber.compose(d.arrows[chi], k[s]) == fiber.compose(m.action[chi].mor(k[t]), c.arrows[chi])
    })
}

pub(crate) fn cartesian(choices: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for c in choices {
        let mut next = Vec::with_capacity(out.len() * c.len());
        for prefix in &out {
            for &x in c {
                let mut p = prefix.clone();
                p.push(x);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// `∐_S η` or `∏_S η` as a functor between the constructed categories.
pub fn apply_nat_transform(
    kind: Construction,
    eta: &IndexedNatTransform,
    budget: usize,
) -> Result<FunctorData> {
    if let Some(r) = eta.check_naturality().failures().next() {
        return Err(Error::Naturality(format!("{} {}", r.case, r.witness)));
    }
    match kind {
        Construction::Elements => {
            let src = category_of_elements(&eta.src)?;
            let dst = category_of_elements(&eta.dst)?;
            let on_objects = src
                .objects
                .iter()
                .map(|&(a, s)| dst.object(eta.components[s].obj(a), s).expect("object image"))
                .collect();
            let base = eta.base();
            let on_morphisms = src
                .morphisms
                .iter()
                .map(|em| {
                    let s = base.dom(em.chi);
                    let t = base.cod(em.chi);
                    dst.morphism(ElementMorphism {
                        h: eta.components[s].mor(em.h),
                        chi: em.chi,
                        target: eta.components[t].obj(em.target),
                    })
                    .expect("morphism image")
                })
                .collect();
            FunctorData::new(src.category, dst.category, on_objects, on_morphisms)
        }
        Construction::Lists => {
            let src = category_of_lists(&eta.src, budget)?;
            let dst = category_of_lists(&eta.dst, budget)?;
            let base = eta.base();
            let map_section = |c: &Section| Section {
                objects: base.objects().map(|o| eta.components[o].obj(c.objects[o])).collect(),
                arrows: base
                    .morphisms()
                    .map(|chi| eta.components[base.dom(chi)].mor(c.arrows[chi]))
                    .collect(),
            };
            let on_objects = src
                .sections
                .iter()
                .map(|c| dst.section(&map_section(c)).expect("section image"))
                .collect::<Vec<_>>();
            let on_morphisms = src
                .morphisms
                .iter()
                .map(|k| {
                    dst.morphism(&SectionMorphism {
                        src: on_objects[k.src],
                        dst: on_objects[k.dst],
                        components: base.objects().map(|o| eta.components[o].mor(k.components[o])).collect(),
                    })
                    .expect("section morphism image")
                })
                .collect();
            FunctorData::new(src.category, dst.category, on_objects, on_morphisms)
        }
    }
}

/// The reindexing functor along `L: S → S'` for `M` indexed over `S'`.
///
/// For elements this is `∐_L M: ∐_S(M∘L^op) → ∐_{S'} M`; for lists it is
/// `∏_L M: ∏_{S'} M → ∏_S(M∘L^op)`, precomposing sections with `L`.
pub fn reindex(kind: Construction, l: &FunctorData, m: &IndexedCategory, budget: usize) -> Result<FunctorData> {
    if l.dst != m.base {
        return Err(Error::BaseMismatch(
            "reindexing functor does not land in the base of the indexed category".into(),
        ));
    }
    let ml = m.precompose(l)?;
    match kind {
        Construction::Elements => {
            let src = category_of_elements(&ml)?;
            let dst = category_of_elements(m)?;
            let on_objects = src
                .objects
                .iter()
                .map(|&(a, s)| dst.object(a, l.obj(s)).expect("object image"))
                .collect();
            let on_morphisms = src
                .morphisms
                .iter()
                .map(|em| {
                    dst.morphism(ElementMorphism { h: em.h, chi: l.mor(em.chi), target: em.target })
                        .expect("morphism image")
                })
                .collect();
            FunctorData::new(src.category, dst.category, on_objects, on_morphisms)
        }
        Construction::Lists => {
            let src = category_of_lists(m, budget)?;
            let dst = category_of_lists(&ml, budget)?;
            let s = &l.src;
            let on_objects = src
                .sections
                .iter()
                .map(|c| {
                    dst.section(&Section {
                        objects: s.objects().map(|o| c.objects[l.obj(o)]).collect(),
                        arrows: s.morphisms().map(|chi| c.arrows[l.mor(chi)]).collect(),
                    })
                    .expect("section image")
                })
                .collect::<Vec<_>>();
            let on_morphisms = src
                .morphisms
                .iter()
                .map(|k| {
                    dst.morphism(&SectionMorphism {
                        src: on_objects[k.src],
                        dst: on_objects[k.dst],
                        components: s.objects().map(|o| k.components[l.obj(o)]).collect(),
                    })
                    .expect("section morphism image")
                })
                .collect();
            FunctorData::new(src.category, dst.category, on_objects, on_morphisms)
        }
    }
}
