//! Explicit finite categories, functors, indexed categories, and the
//! category-of-elements and category-of-lists constructions.

mod category;
mod constructions;
pub mod generate;
mod indexed;
mod laws;

pub use category::{FiniteCategory, FunctorData, MorId, MorphismRecord, ObjId};
pub use constructions::{
    apply_nat_transform, category_of_elements, category_of_lists, reindex, sections, Construction, ElementMorphism,
    Elements, Lists, Section, SectionMorphism, DEFAULT_SECTION_BUDGET,
};
pub use indexed::{IndexedCategory, IndexedNatTransform};
pub use laws::{monotone_functors, verify_construction_laws};
