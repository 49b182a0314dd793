use super::category::{FiniteCategory, FunctorData};
use super::constructions::{apply_nat_transform, reindex, Construction};
use super::indexed::{IndexedCategory, IndexedNatTransform};
use crate::report::LawReport;
use std::sync::Arc;

fn kind_name(kind: Construction) -> &'static str {
    match kind {
        Construction::Elements => "elements",
        Construction::Lists => "lists",
    }
}

fn functor_diff(a: &FunctorData, b: &FunctorData) -> String {
    if a.src != b.src || a.dst != b.dst {
        return "endpoints differ".into();
    }
    for (i, (x, y)) in a.on_objects.iter().zip(&b.on_objects).enumerate() {
        if x != y {
            return format!("object {} ↦ {} vs {}", a.src.object_name(i), a.dst.object_name(*x), b.dst.object_name(*y));
        }
    }
    for (i, (x, y)) in a.on_morphisms.iter().zip(&b.on_morphisms).enumerate() {
        if x != y {
            return format!(
                "morphism {} ↦ {} vs {}",
                a.src.morphism_name(i),
                a.dst.morphism_name(*x),
                b.dst.morphism_name(*y)
            );
        }
    }
    "equal".into()
}

fn record_eq(
    report: &mut LawReport,
    law: &str,
    case: String,
    lhs: crate::error::Result<FunctorData>,
    rhs: crate::error::Result<FunctorData>,
) {
    match (lhs, rhs) {
        (Ok(a), Ok(b)) => {
            let ok = a == b;
            report.check(law, case, ok, || functor_diff(&a, &b));
        }
        (Err(e), _) | (_, Err(e)) => report.fail(law, case, e.to_string()),
    }
}

/// Checks, for both constructions, the functoriality of `∐_S`/`∏_S` on the
/// sampled transforms, the identity and composition laws of reindexing along
/// the sampled base functors, and naturality of reindexing in `M`.
///
/// Transform samples compose when their endpoints match; base functors `L`, `L'`
/// are paired whenever `L' ∘ L` lands in the base of `m`.
pub fn verify_construction_laws(
    m: &IndexedCategory,
    eta_samples: &[IndexedNatTransform],
    l_samples: &[FunctorData],
    budget: usize,
) -> LawReport {
    let mut report = LawReport::new();
    let wf = m.check_laws();
    if !wf.all_passed() {
        report.extend(wf);
        return report;
    }
    for kind in [Construction::Elements, Construction::Lists] {
        let k = kind_name(kind);

        // functoriality of the construction itself
        let mut transforms: Vec<IndexedNatTransform> = vec![IndexedNatTransform::identity(m)];
        transforms.extend(eta_samples.iter().cloned());
        for (i, eta) in transforms.iter().enumerate() {
            match apply_nat_transform(kind, eta, budget) {
                Ok(f) => {
                    let laws = f.check_laws();
                    report.check(&format!("{k}.transform-functor"), format!("eta{i}"), laws.all_passed(), || {
                        laws.failures().map(|r| r.witness.clone()).collect::<Vec<_>>().join("; ")
                    });
                    if i == 0 {
                        report.check(&format!("{k}.identity-transform"), "id".to_string(), f.is_identity(), || {
                            "image of the identity transform is not the identity functor".into()
                        });
                    }
                }
                Err(e) => report.fail(format!("{k}.transform-functor"), format!("eta{i}"), e.to_string()),
            }
        }
        for (i, eta) in transforms.iter().enumerate() {
            for (j, eta2) in transforms.iter().enumerate() {
                if eta.dst != eta2.src {
                    continue;
                }
                let lhs = eta2.after(eta).and_then(|c| apply_nat_transform(kind, &c, budget));
                let rhs = apply_nat_transform(kind, eta, budget)
                    .and_then(|a| apply_nat_transform(kind, eta2, budget).and_then(|b| b.after(&a)));
                record_eq(&mut report, &format!("{k}.transform-composition"), format!("eta{j}∘eta{i}"), lhs, rhs);
            }
        }

        // reindexing along the identity
        let id = FunctorData::identity(m.base.clone());
        match reindex(kind, &id, m, budget) {
            Ok(f) => report.check(&format!("{k}.reindex-identity"), "id".to_string(), f.is_identity(), || {
                "reindexing along the identity is not the identity".into()
            }),
            Err(e) => report.fail(format!("{k}.reindex-identity"), "id", e.to_string()),
        }

        for (i, l) in l_samples.iter().enumerate() {
            if l.dst != m.base {
                continue;
            }
            match reindex(kind, l, m, budget) {
                Ok(f) => {
                    let laws = f.check_laws();
                    report.check(&format!("{k}.reindex-functor"), format!("L{i}"), laws.all_passed(), || {
                        laws.failures().map(|r| r.witness.clone()).collect::<Vec<_>>().join("; ")
                    });
                }
                Err(e) => report.fail(format!("{k}.reindex-functor"), format!("L{i}"), e.to_string()),
            }
            // naturality of reindexing in M
            for (j, eta) in eta_samples.iter().enumerate() {
                if eta.src != *m {
                    continue;
                }
                let case = format!("L{i}/eta{j}");
                let res = (|| {
                    let eta_l = eta.precompose(l)?;
                    Ok::<_, crate::error::Error>(match kind {
                        Construction::Elements => (
                            reindex(kind, l, &eta.dst, budget)?.after(&apply_nat_transform(kind, &eta_l, budget)?)?,
                            apply_nat_transform(kind, eta, budget)?.after(&reindex(kind, l, m, budget)?)?,
                        ),
                        Construction::Lists => (
                            reindex(kind, l, &eta.dst, budget)?.after(&apply_nat_transform(kind, eta, budget)?)?,
                            apply_nat_transform(kind, &eta_l, budget)?.after(&reindex(kind, l, m, budget)?)?,
                        ),
                    })
                })();
                match res {
                    Ok((a, b)) => record_eq(&mut report, &format!("{k}.reindex-naturality"), case, Ok(a), Ok(b)),
                    Err(e) => report.fail(format!("{k}.reindex-naturality"), case, e.to_string()),
                }
            }
        }

        // composition law for pairs L: S → S', L': S' → base
        for (i, l) in l_samples.iter().enumerate() {
            for (j, l2) in l_samples.iter().enumerate() {
                if l.dst != l2.src || l2.dst != m.base {
                    continue;
                }
                let case = format!("L{j}∘L{i}");
                let res = (|| {
                    let composite = l2.after(l)?;
                    let whole = reindex(kind, &composite, m, budget)?;
                    let outer = reindex(kind, l2, m, budget)?;
                    let inner = reindex(kind, l, &m.precompose(l2)?, budget)?;
                    let pasted = match kind {
                        Construction::Elements => outer.after(&inner)?,
                        Construction::Lists => inner.after(&outer)?,
                    };
                    Ok::<_, crate::error::Error>((whole, pasted))
                })();
                match res {
                    Ok((a, b)) => record_eq(&mut report, &format!("{k}.reindex-composition"), case, Ok(a), Ok(b)),
                    Err(e) => report.fail(format!("{k}.reindex-composition"), case, e.to_string()),
                }
            }
        }
    }
    report
}

/// All monotone maps between two thin categories, as functors.
pub fn monotone_functors(src: &Arc<FiniteCategory>, dst: &Arc<FiniteCategory>) -> Vec<FunctorData> {
    let n = src.object_count();
    let mut out = Vec::new();
    let total = dst.object_count().pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let mut on_objects = Vec::with_capacity(n);
        for _ in 0..n {
            on_objects.push(c % dst.object_count());
            c /= dst.object_count();
        }
        let mut on_morphisms = Vec::with_capacity(src.morphism_count());
        let mut ok = true;
        for f in src.morphisms() {
            match dst.hom(on_objects[src.dom(f)], on_objects[src.cod(f)]).first() {
                Some(&g) => on_morphisms.push(g),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            if let Ok(f) = FunctorData::new(src.clone(), dst.clone(), on_objects, on_morphisms) {
                out.push(f);
            }
        }
    }
    out
}
