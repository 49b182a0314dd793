use std::sync::Arc;

use dexlogic::cat::generate::{generate_case, swap_case};
use dexlogic::cat::*;
use dexlogic::Error;

fn chain(prefix: &str, n: usize) -> Arc<FiniteCategory> {
    let names: Vec<String> = (0..n).map(|i| format!("{prefix}{i}")).collect();
    Arc::new(FiniteCategory::preorder(&names, |i, j| i <= j).unwrap())
}

fn thin_functor(src: &Arc<FiniteCategory>, dst: &Arc<FiniteCategory>, objs: Vec<usize>) -> FunctorData {
    let mors = src
        .morphisms()
        .map(|f| dst.hom(objs[src.dom(f)], objs[src.cod(f)])[0])
        .collect();
    FunctorData::new(src.clone(), dst.clone(), objs, mors).unwrap()
}

/// Arrow base `a → b` with `M(a)` the 2-chain, `M(b)` the 3-chain and the
/// restriction `y0, y1 ↦ x0`, `y2 ↦ x1`.
fn arrow_case() -> IndexedCategory {
    let base = Arc::new(FiniteCategory::arrow());
    let ma = chain("x", 2);
    let mb = chain("y", 3);
    let restrict = thin_functor(&mb, &ma, vec![0, 0, 1]);
    let mut action = Vec::new();
    for chi in base.morphisms() {
        action.push(match (base.dom(chi), base.cod(chi)) {
            (0, 0) => FunctorData::identity(ma.clone()),
            (1, 1) => FunctorData::identity(mb.clone()),
            _ => restrict.clone(),
        });
    }
    IndexedCategory::new(base, vec![ma, mb], action).unwrap()
}

#[test]
fn elements_of_single_fiber_is_the_fiber() {
    let c = Arc::new(FiniteCategory::cyclic_group(3));
    let m = IndexedCategory::constant(Arc::new(FiniteCategory::terminal()), c.clone());
    let el = category_of_elements(&m).unwrap();
    assert!(el.category.is_isomorphic(&c));
}

#[test]
fn elements_over_terminal_fibers_is_the_base() {
    let base = Arc::new(FiniteCategory::arrow());
    let m = IndexedCategory::constant(base.clone(), Arc::new(FiniteCategory::terminal()));
    let el = category_of_elements(&m).unwrap();
    assert!(el.category.is_isomorphic(&base));
    assert!(el.projection.check_laws().all_passed());
}

#[test]
fn elements_over_arrow_matches_brute_force_count() {
    let m = arrow_case();
    let el = category_of_elements(&m).unwrap();
    assert_eq!(el.category.object_count(), 5);
    // independent count: a morphism ⟨h, χ⟩ : ⟨A,Σ⟩ → ⟨A',Σ'⟩ exists (uniquely,
    // fibers being chains) iff A ≤ M(χ)(A') in the fiber over Σ
    let restrict = [0usize, 0, 1];
    let mut count = 0;
    for a in 0..2 {
        for a2 in 0..2 {
            if a <= a2 {
                count += 1;
            }
        }
    }
    for b in 0..3 {
        for b2 in 0..3 {
            if b <= b2 {
                count += 1;
            }
        }
    }
    for a in 0..2 {
        for b in 0..3 {
            if a <= restrict[b] {
                count += 1;
            }
        }
    }
    assert_eq!(el.category.morphism_count(), count);
    assert!(el.category.check_laws().all_passed());
}

#[test]
fn ill_formed_action_is_rejected_with_law_name() {
    let base = Arc::new(FiniteCategory::cyclic_group(2));
    let fiber = Arc::new(FiniteCategory::preorder(&["a".into(), "b".into()], |_, _| true).unwrap());
    // the generator acting as a constant map squares to a non-identity functor
    let constant = thin_functor(&fiber, &fiber, vec![0, 0]);
    let m = IndexedCategory::new_unchecked(base, vec![fiber.clone()], vec![FunctorData::identity(fiber), constant])
        .unwrap();
    let err = category_of_elements(&m).unwrap_err();
    assert!(matches!(err, Error::IllFormedIndexed { law: "composition", .. }), "{err}");
}

#[test]
fn lists_of_single_fiber_is_the_fiber() {
    let c = Arc::new(FiniteCategory::arrow());
    let m = IndexedCategory::constant(Arc::new(FiniteCategory::terminal()), c.clone());
    let lists = category_of_lists(&m, DEFAULT_SECTION_BUDGET).unwrap();
    assert!(lists.category.is_isomorphic(&c));
}

#[test]
fn lists_over_terminal_fibers_is_terminal() {
    let base = Arc::new(FiniteCategory::arrow());
    let m = IndexedCategory::constant(base, Arc::new(FiniteCategory::terminal()));
    let lists = category_of_lists(&m, DEFAULT_SECTION_BUDGET).unwrap();
    assert!(lists.category.is_isomorphic(&FiniteCategory::terminal()));
}

#[test]
fn lists_over_discrete_base_is_a_product() {
    let base = Arc::new(FiniteCategory::discrete(&["p", "q"]));
    let f2 = Arc::new(FiniteCategory::discrete(&["a", "b"]));
    let f3 = Arc::new(FiniteCategory::discrete(&["x", "y", "z"]));
    let action = vec![FunctorData::identity(f2.clone()), FunctorData::identity(f3.clone())];
    let m = IndexedCategory::new(base, vec![f2, f3], action).unwrap();
    let lists = category_of_lists(&m, DEFAULT_SECTION_BUDGET).unwrap();
    assert_eq!(lists.category.object_count(), 2 * 3);
    assert_eq!(lists.category.morphism_count(), 6);
}

#[test]
fn lists_of_swap_action_are_the_fixed_sections() {
    let m = swap_case();
    let lists = category_of_lists(&m, DEFAULT_SECTION_BUDGET).unwrap();
    // A ∈ {a, b} with the unique arrow A → swap(A)
    assert_eq!(lists.sections.len(), 2);
    assert!(lists.category.check_laws().all_passed());
}

#[test]
fn section_search_respects_budget() {
    let m = arrow_case();
    let err = category_of_lists(&m, 2).unwrap_err();
    assert!(matches!(err, Error::Budget(_)));
}

#[test]
fn identity_transform_acts_as_identity() {
    let m = arrow_case();
    let id = IndexedNatTransform::identity(&m);
    for kind in [Construction::Elements, Construction::Lists] {
        assert!(apply_nat_transform(kind, &id, DEFAULT_SECTION_BUDGET).unwrap().is_identity());
    }
}

#[test]
fn single_fiber_transform_is_its_component() {
    let c = chain("x", 3);
    let d = chain("y", 2);
    let t = Arc::new(FiniteCategory::terminal());
    let m = IndexedCategory::constant(t.clone(), c.clone());
    let m2 = IndexedCategory::constant(t, d.clone());
    let comp = thin_functor(&c, &d, vec![0, 1, 1]);
    let eta = IndexedNatTransform::new(m, m2, vec![comp.clone()]).unwrap();
    let f = apply_nat_transform(Construction::Elements, &eta, DEFAULT_SECTION_BUDGET).unwrap();
    assert_eq!(f.on_objects, comp.on_objects);
    assert_eq!(f.on_morphisms.len(), comp.on_morphisms.len());
}

#[test]
fn stacked_transforms_compose_pointwise() {
    for seed in 0..10 {
        let case = generate_case(seed);
        let (e1, e2) = (&case.etas[0], &case.etas[1]);
        for kind in [Construction::Elements, Construction::Lists] {
            let whole = apply_nat_transform(kind, &e2.after(e1).unwrap(), DEFAULT_SECTION_BUDGET).unwrap();
            let a = apply_nat_transform(kind, e1, DEFAULT_SECTION_BUDGET).unwrap();
            let b = apply_nat_transform(kind, e2, DEFAULT_SECTION_BUDGET).unwrap();
            assert_eq!(whole, b.after(&a).unwrap(), "seed {seed}");
        }
    }
}

#[test]
fn non_natural_transform_is_rejected() {
    let m = swap_case();
    let fiber = m.fibers[0].clone();
    let constant = thin_functor(&fiber, &fiber, vec![0, 0]);
    let eta = IndexedNatTransform::new_unchecked(m.clone(), m, vec![constant]).unwrap();
    let err = apply_nat_transform(Construction::Elements, &eta, DEFAULT_SECTION_BUDGET).unwrap_err();
    assert!(matches!(err, Error::Naturality(_)));
}

#[test]
fn reindex_along_identity_is_identity() {
    let m = arrow_case();
    let id = FunctorData::identity(m.base.clone());
    for kind in [Construction::Elements, Construction::Lists] {
        assert!(reindex(kind, &id, &m, DEFAULT_SECTION_BUDGET).unwrap().is_identity());
    }
}

#[test]
fn reindex_along_constant_functor_shares_second_coordinate() {
    let base = Arc::new(FiniteCategory::discrete(&["p", "q"]));
    let target = Arc::new(FiniteCategory::terminal());
    let l = FunctorData::new(base.clone(), target.clone(), vec![0, 0], vec![0, 0]).unwrap();
    let m = IndexedCategory::constant(target, chain("x", 2));
    let f = reindex(Construction::Elements, &l, &m, DEFAULT_SECTION_BUDGET).unwrap();
    let dst = category_of_elements(&m).unwrap();
    for o in f.src.objects() {
        assert_eq!(dst.objects[f.obj(o)].1, 0);
    }
    assert_eq!(f.src.object_count(), 4);
}

#[test]
fn reindex_base_mismatch_is_an_error() {
    let m = arrow_case();
    let other = Arc::new(FiniteCategory::terminal());
    let l = FunctorData::identity(other);
    assert!(matches!(
        reindex(Construction::Elements, &l, &m, DEFAULT_SECTION_BUDGET),
        Err(Error::BaseMismatch(_))
    ));
}

#[test]
fn identity_samples_pass_all_laws() {
    let m = arrow_case();
    let report = verify_construction_laws(
        &m,
        &[IndexedNatTransform::identity(&m)],
        &[FunctorData::identity(m.base.clone())],
        DEFAULT_SECTION_BUDGET,
    );
    assert!(report.all_passed(), "{report}");
    assert!(report.len() > 5);
}

#[test]
fn corrupted_action_reports_composition_failure() {
    let base = Arc::new(FiniteCategory::cyclic_group(2));
    let fiber = Arc::new(FiniteCategory::preorder(&["a".into(), "b".into()], |_, _| true).unwrap());
    let constant = thin_functor(&fiber, &fiber, vec![1, 1]);
    let m = IndexedCategory::new_unchecked(base, vec![fiber.clone()], vec![FunctorData::identity(fiber), constant])
        .unwrap();
    let report = verify_construction_laws(&m, &[], &[], DEFAULT_SECTION_BUDGET);
    let fail = report.failures().find(|r| r.law == "indexed.composition").expect("composition failure");
    assert_eq!(fail.case, "g1∘g1");
}

#[test]
fn generated_cases_pass_construction_laws() {
    for seed in 0..20 {
        let case = generate_case(seed);
        let report = verify_construction_laws(&case.m, &case.etas, &case.functors, DEFAULT_SECTION_BUDGET);
        assert!(report.all_passed(), "seed {seed}:\n{report}");
        let el = category_of_elements(&case.m).unwrap();
        assert!(el.category.check_laws().all_passed());
    }
}
