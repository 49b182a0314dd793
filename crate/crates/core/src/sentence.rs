//! First-order sentences over any institution with variable extensions:
//! atoms from the base, negation, finite disjunction and existential
//! quantification over a block.

use std::fmt;

use crate::error::{Error, Result};
use crate::institution::Institution;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sentence<I: Institution> {
    Atom(I::Atom),
    Not(Box<Sentence<I>>),
    /// Finite disjunction; the empty disjunction is falsum.
    Or(Vec<Sentence<I>>),
    /// `∃X.φ` with `φ` a sentence over `Σ^Dex[X]`.
    Exists(I::Block, Box<Sentence<I>>),
}

impl<I: Institution> Sentence<I> {
    pub fn not(s: Sentence<I>) -> Self {
        Sentence::Not(Box::new(s))
    }

    pub fn exists(x: I::Block, s: Sentence<I>) -> Self {
        Sentence::Exists(x, Box::new(s))
    }

    pub fn falsum() -> Self {
        Sentence::Or(Vec::new())
    }

    /// Number of connectives and atoms.
    pub fn size(&self) -> usize {
        match self {
            Sentence::Atom(_) => 1,
            Sentence::Not(s) | Sentence::Exists(_, s) => 1 + s.size(),
            Sentence::Or(v) => 1 + v.iter().map(Sentence::size).sum::<usize>(),
        }
    }

    /// Nesting depth; atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Sentence::Atom(_) => 0,
            Sentence::Not(s) | Sentence::Exists(_, s) => 1 + s.depth(),
            Sentence::Or(v) => 1 + v.iter().map(Sentence::depth).max().unwrap_or(0),
        }
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Sentence::Atom(_))
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Sentence::Atom(_) => true,
            Sentence::Not(s) => s.is_quantifier_free(),
            Sentence::Or(v) => v.iter().all(Sentence::is_quantifier_free),
            Sentence::Exists(..) => false,
        }
    }
}

impl<I: Institution> fmt::Display for Sentence<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sentence::Atom(a) => write!(f, "(atom {a})"),
            Sentence::Not(s) => write!(f, "(not {s})"),
            Sentence::Or(v) => {
                write!(f, "(or")?;
                for s in v {
                    write!(f, " {s}")?;
                }
                write!(f, ")")
            }
            Sentence::Exists(x, s) => write!(f, "(exists {x} {s})"),
        }
    }
}

/// Checks that `phi` is a sentence over `sig`.
pub fn check<I: Institution>(ins: &I, sig: &I::Sig, phi: &Sentence<I>) -> Result<()> {
    match phi {
        Sentence::Atom(a) => ins.check_atom(sig, a),
        Sentence::Not(s) => check(ins, sig, s),
        Sentence::Or(v) => v.iter().try_for_each(|s| check(ins, sig, s)),
        Sentence::Exists(x, s) => {
            if !ins.is_block(sig, x) {
                return Err(Error::NotABlock(format!("{x} over {sig}")));
            }
            check(ins, &ins.extend(sig, x)?.extended, s)
        }
    }
}

/// `Sen(χ)(φ)`.
pub fn translate<I: Institution>(ins: &I, chi: &I::Mor, phi: &Sentence<I>) -> Result<Sentence<I>> {
    Ok(match phi {
        Sentence::Atom(a) => Sentence::Atom(ins.translate_atom(chi, a)?),
        Sentence::Not(s) => Sentence::not(translate(ins, chi, s)?),
        Sentence::Or(v) => Sentence::Or(v.iter().map(|s| translate(ins, chi, s)).collect::<Result<_>>()?),
        Sentence::Exists(x, s) => {
            Sentence::exists(ins.translate_block(chi, x)?, translate(ins, &ins.translate_ext(chi, x)?, s)?)
        }
    })
}

/// `model ⊨ φ`; an existential holds iff some expansion satisfies its body.
pub fn satisfies<I: Institution>(ins: &I, model: &I::Model, phi: &Sentence<I>) -> Result<bool> {
    Ok(match phi {
        Sentence::Atom(a) => ins.satisfies_atom(model, a)?,
        Sentence::Not(s) => !satisfies(ins, model, s)?,
        Sentence::Or(v) => {
            for s in v {
                if satisfies(ins, model, s)? {
                    return Ok(true);
                }
            }
            false
        }
        Sentence::Exists(x, s) => {
            for e in ins.expansions(model, x)? {
                if satisfies(ins, &e, s)? {
                    return Ok(true);
                }
            }
            false
        }
    })
}

/// Whether `theta: Σ^Dex[X] → Σ` is a substitution, i.e. `θ ∘ Σ^Dex(X) = id`.
pub fn is_substitution<I: Institution>(ins: &I, sig: &I::Sig, x: &I::Block, theta: &I::Mor) -> Result<bool> {
    let bundle = ins.extend(sig, x)?;
    if ins.mor_dom(theta) != bundle.extended || ins.mor_cod(theta) != *sig {
        return Ok(false);
    }
    Ok(ins.compose(theta, &bundle.inclusion)? == ins.identity(sig))
}

/// The substitution `Σ^Dex[X]^Dex[X'] → Σ^Dex[X]` sending the translated copy
/// `X'` of `X` back onto `X`, where `X'` is `X` translated along `Σ^Dex(X)`.
pub fn canonical_substitution<I: Institution>(ins: &I, sig: &I::Sig, x: &I::Block) -> Result<I::Mor> {
    let bundle = ins.extend(sig, x)?;
    let id = ins.identity(&bundle.extended);
    ins.pushout_mediator(&bundle.inclusion, x, &id, &id)
}

/// For `χ: Σ → Σ'` and a substitution `θ: Σ^Dex[X] → Σ`, the unique
/// substitution `θ': Σ'^Dex[χ_Dex X] → Σ'` with `θ' ∘ χ^Dex[X] = χ ∘ θ`.
pub fn translate_substitution<I: Institution>(
    ins: &I,
    chi: &I::Mor,
    x: &I::Block,
    theta: &I::Mor,
) -> Result<I::Mor> {
    let f = ins.compose(chi, theta)?;
    ins.pushout_mediator(chi, x, &f, &ins.identity(&ins.mor_cod(chi)))
}
