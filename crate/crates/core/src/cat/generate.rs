//! Seeded generator of small indexed categories with transforms and base functors.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::category::{FiniteCategory, FunctorData, MorphismRecord};
use super::indexed::{IndexedCategory, IndexedNatTransform};
use super::laws::monotone_functors;

/// A generated test case: an indexed category, transforms out of it and
/// base functors for reindexing.
#[derive(Debug, Clone)]
pub struct GeneratedCase {
    pub seed: u64,
    pub m: IndexedCategory,
    /// `η₁: M → M₁` and `η₂: M₁ → M₂`.
    pub etas: Vec<IndexedNatTransform>,
    /// Functors `L: S₀ → S₁` and `L': S₁ → base` (and some landing directly in the base).
    pub functors: Vec<FunctorData>,
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// A random partial order on `n` elements compatible with the index order.
fn random_poset(rng: &mut ChaCha8Rng, prefix: &str, n: usize) -> FiniteCategory {
    let mut rel = vec![vec![false; n]; n];
    for (i, row) in rel.iter_mut().enumerate() {
        row[i] = true;
    }
    for i in 0..n {
        for j in i + 1..n {
            rel[i][j] = rng.gen_bool(0.5);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if rel[i][k] && rel[k][j] {
                    rel[i][j] = true;
                }
            }
        }
    }
    FiniteCategory::preorder(&names(prefix, n), |i, j| rel[i][j]).expect("poset")
}

/// Union-find style partition given as a class label per element.
fn random_partition(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut labels: Vec<usize> = (0..n).collect();
    for _ in 0..n {
        if rng.gen_bool(0.35) {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            let (la, lb) = (labels[a], labels[b]);
            for l in labels.iter_mut() {
                if *l == lb {
                    *l = la;
                }
            }
        }
    }
    normalize(&labels)
}

fn normalize(labels: &[usize]) -> Vec<usize> {
    let mut map = BTreeMap::new();
    labels
        .iter()
        .map(|l| {
            let next = map.len();
            *map.entry(*l).or_insert(next)
        })
        .collect()
}

/// The finest partition coarser than both arguments.
fn join(a: &[usize], b: &[usize]) -> Vec<usize> {
    let n = a.len();
    let mut labels: Vec<usize> = (0..n).collect();
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..n {
            for j in 0..n {
                if (a[i] == a[j] || b[i] == b[j]) && labels[i] != labels[j] {
                    let (x, y) = (labels[i].min(labels[j]), labels[i].max(labels[j]));
                    for l in labels.iter_mut() {
                        if *l == y {
                            *l = x;
                        }
                    }
                    changed = true;
                }
            }
        }
    }
    normalize(&labels)
}

/// The quotient of a thin category by a partition of its objects, with the
/// preorder generated by the original arrows.
fn quotient(g: &FiniteCategory, part: &[usize]) -> FiniteCategory {
    let k = part.iter().max().map_or(0, |m| m + 1);
    let mut rel = vec![vec![false; k]; k];
    for (i, row) in rel.iter_mut().enumerate() {
        row[i] = true;
    }
    for f in g.morphisms() {
        rel[part[g.dom(f)]][part[g.cod(f)]] = true;
    }
    for m in 0..k {
        for i in 0..k {
            for j in 0..k {
                if rel[i][m] && rel[m][j] {
                    rel[i][j] = true;
                }
            }
        }
    }
    let labels = (0..k)
        .map(|c| {
            let members: Vec<&str> = g.objects().filter(|&o| part[o] == c).map(|o| g.object_name(o)).collect();
            members.join("")
        })
        .collect::<Vec<_>>();
    FiniteCategory::preorder(&labels, |i, j| rel[i][j]).expect("quotient preorder")
}

/// The functor between thin categories induced by an object map.
fn thin_functor(src: &Arc<FiniteCategory>, dst: &Arc<FiniteCategory>, on_objects: Vec<usize>) -> FunctorData {
    let on_morphisms = src
        .morphisms()
        .map(|f| dst.hom(on_objects[src.dom(f)], on_objects[src.cod(f)])[0])
        .collect();
    FunctorData::new(src.clone(), dst.clone(), on_objects, on_morphisms).expect("thin functor")
}

/// Product `a × b` of finite categories.
pub fn product(a: &FiniteCategory, b: &FiniteCategory) -> FiniteCategory {
    let nb = b.object_count();
    let mb = b.morphism_count();
    let mut objects = Vec::new();
    for x in a.objects() {
        for y in b.objects() {
            objects.push(format!("{}.{}", a.object_name(x), b.object_name(y)));
        }
    }
    let mut morphisms = Vec::new();
    for f in a.morphisms() {
        for g in b.morphisms() {
            morphisms.push(MorphismRecord {
                name: format!("{}.{}", a.morphism_name(f), b.morphism_name(g)),
                dom: a.dom(f) * nb + b.dom(g),
                cod: a.cod(f) * nb + b.cod(g),
            });
        }
    }
    let identity = a
        .objects()
        .flat_map(|x| b.objects().map(move |y| (x, y)))
        .map(|(x, y)| a.identity(x) * mb + b.identity(y))
        .collect();
    FiniteCategory::from_fn(objects, morphisms, identity, |h, k| {
        let (hf, hg) = (h / mb, h % mb);
        let (kf, kg) = (k / mb, k % mb);
        a.compose(hf, kf).unwrap() * mb + b.compose(hg, kg).unwrap()
    })
    .expect("product category")
}

/// `F × id` for a functor `F` and a fixed right factor.
fn product_functor(
    f: &FunctorData,
    right: &FiniteCategory,
    src: &Arc<FiniteCategory>,
    dst: &Arc<FiniteCategory>,
) -> FunctorData {
    let nb = right.object_count();
    let mb = right.morphism_count();
    let on_objects = src.objects().map(|o| f.obj(o / nb) * nb + o % nb).collect();
    let on_morphisms = src.morphisms().map(|m| f.mor(m / mb) * mb + m % mb).collect();
    FunctorData::new(src.clone(), dst.clone(), on_objects, on_morphisms).expect("product functor")
}

/// Builds the presheaf `Σ ↦ (G/~_Σ) × C` over a poset base, where `~_Σ` joins
/// the given partitions of every object above `Σ`, so that restriction along
/// `Σ ≤ Σ'` is the quotient map `G/~_Σ' → G/~_Σ`.
fn presheaf_from_partitions(
    base: &Arc<FiniteCategory>,
    g: &FiniteCategory,
    parts: &[Vec<usize>],
    extra: &FiniteCategory,
) -> (IndexedCategory, Vec<Vec<usize>>) {
    let n = base.object_count();
    let mut eq = Vec::with_capacity(n);
    for s in 0..n {
        let mut p: Vec<usize> = (0..g.object_count()).collect();
        for t in 0..n {
            if !base.hom(s, t).is_empty() {
                p = join(&p, &parts[t]);
            }
        }
        eq.push(p);
    }
    let (fibers, action) = fibers_for(base, g, &eq, extra);
    (IndexedCategory::new(base.clone(), fibers, action).expect("generated presheaf"), eq)
}

fn fibers_for(
    base: &Arc<FiniteCategory>,
    g: &FiniteCategory,
    eq: &[Vec<usize>],
    extra: &FiniteCategory,
) -> (Vec<Arc<FiniteCategory>>, Vec<FunctorData>) {
    let thin: Vec<Arc<FiniteCategory>> = eq.iter().map(|p| Arc::new(quotient(g, p))).collect();
    let fibers: Vec<Arc<FiniteCategory>> = thin.iter().map(|q| Arc::new(product(q, extra))).collect();
    let action = base
        .morphisms()
        .map(|chi| {
            let (s, t) = (base.dom(chi), base.cod(chi));
            let q = class_map(g, &eq[t], &eq[s]);
            let tf = thin_functor(&thin[t], &thin[s], q);
            product_functor(&tf, extra, &fibers[t], &fibers[s])
        })
        .collect();
    (fibers, action)
}

/// Map from classes of a finer partition to classes of a coarser one.
fn class_map(g: &FiniteCategory, fine: &[usize], coarse: &[usize]) -> Vec<usize> {
    let k = fine.iter().max().map_or(0, |m| m + 1);
    let mut out = vec![0; k];
    for o in g.objects() {
        out[fine[o]] = coarse[o];
    }
    out
}

fn coarsen(
    base: &Arc<FiniteCategory>,
    g: &FiniteCategory,
    m: &IndexedCategory,
    eq: &[Vec<usize>],
    q: &[usize],
    extra: &FiniteCategory,
) -> (IndexedNatTransform, Vec<Vec<usize>>) {
    let eq2: Vec<Vec<usize>> = eq.iter().map(|p| join(p, q)).collect();
    let (fibers, action) = fibers_for(base, g, &eq2, extra);
    let m2 = IndexedCategory::new(base.clone(), fibers, action).expect("coarsened presheaf");
    let thin_src: Vec<FiniteCategory> = eq.iter().map(|p| quotient(g, p)).collect();
    let thin_dst: Vec<FiniteCategory> = eq2.iter().map(|p| quotient(g, p)).collect();
    let components = base
        .objects()
        .map(|s| {
            let tf = thin_functor(
                &Arc::new(thin_src[s].clone()),
                &Arc::new(thin_dst[s].clone()),
                class_map(g, &eq[s], &eq2[s]),
            );
            product_functor(&tf, extra, &m.fibers[s], &m2.fibers[s])
        })
        .collect();
    let eta = IndexedNatTransform::new(m.clone(), m2, components).expect("coarsening is natural");
    (eta, eq2)
}

/// Generates an indexed category over a poset of at most 3 objects with fibers
/// of at most 3 objects, two stacked transforms and reindexing functors.
pub fn generate_case(seed: u64) -> GeneratedCase {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=3);
    let base = Arc::new(random_poset(&mut rng, "s", n));
    let k = rng.gen_range(1..=3);
    let g = random_poset(&mut rng, "a", k);
    let extra = if rng.gen_bool(0.3) {
        FiniteCategory::cyclic_group(2)
    } else {
        FiniteCategory::terminal()
    };
    let parts: Vec<Vec<usize>> = (0..n).map(|_| random_partition(&mut rng, k)).collect();
    let (m, eq) = presheaf_from_partitions(&base, &g, &parts, &extra);
    let q1 = random_partition(&mut rng, k);
    let (eta1, eq1) = coarsen(&base, &g, &m, &eq, &q1, &extra);
    let q2 = random_partition(&mut rng, k);
    let (eta2, _) = coarsen(&base, &g, &eta1.dst, &eq1, &q2, &extra);

    let mut functors = Vec::new();
    let n1 = rng.gen_range(1..=3);
    let s1 = Arc::new(random_poset(&mut rng, "t", n1));
    let n0 = rng.gen_range(1..=3);
    let s0 = Arc::new(random_poset(&mut rng, "u", n0));
    let into_base = monotone_functors(&s1, &base);
    let into_s1 = monotone_functors(&s0, &s1);
    for _ in 0..2 {
        if !into_base.is_empty() {
            functors.push(into_base[rng.gen_range(0..into_base.len())].clone());
        }
        if !into_s1.is_empty() {
            functors.push(into_s1[rng.gen_range(0..into_s1.len())].clone());
        }
    }
    let direct = monotone_functors(&s0, &base);
    if !direct.is_empty() {
        functors.push(direct[rng.gen_range(0..direct.len())].clone());
    }
    functors.dedup();
    GeneratedCase {
        seed,
        m,
        etas: vec![eta1, eta2],
        functors,
    }
}

/// The swap action of the two-element group on the chaotic category `{a, b}`;
/// a non-thin base with a non-trivial action.
pub fn swap_case() -> IndexedCategory {
    let base = Arc::new(FiniteCategory::cyclic_group(2));
    let fiber = Arc::new(
        FiniteCategory::preorder(&["a".to_string(), "b".to_string()], |_, _| true).expect("chaotic"),
    );
    let swap_objects = vec![1, 0];
    let swap = thin_functor(&fiber, &fiber, swap_objects);
    IndexedCategory::new(base, vec![fiber.clone()], vec![FunctorData::identity(fiber), swap])
        .expect("swap action")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_cases_are_deterministic() {
        let a = generate_case(7);
        let b = generate_case(7);
        assert_eq!(a.m, b.m);
        assert_eq!(a.functors, b.functors);
    }

    #[test]
    fn product_with_terminal_is_isomorphic() {
        let a = FiniteCategory::arrow();
        assert!(product(&a, &FiniteCategory::terminal()).is_isomorphic(&a));
        assert_eq!(product(&a, &FiniteCategory::cyclic_group(2)).morphism_count(), 6);
    }
}
