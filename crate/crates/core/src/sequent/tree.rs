use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::institution::Institution;
use crate::sentence::{self, Sentence};

pub type SentenceSet<I> = BTreeSet<Sentence<I>>;

/// `Γ ⊢_Σ Δ`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Sequent<I: Institution> {
    pub gamma: SentenceSet<I>,
    pub sig: I::Sig,
    pub delta: SentenceSet<I>,
}

impl<I: Institution> Sequent<I> {
    pub fn new(
        gamma: impl IntoIterator<Item = Sentence<I>>,
        sig: I::Sig,
        delta: impl IntoIterator<Item = Sentence<I>>,
    ) -> Self {
        Sequent { gamma: gamma.into_iter().collect(), sig, delta: delta.into_iter().collect() }
    }

    /// Checks that every sentence lives over `sig`.
    pub fn check(&self, ins: &I) -> Result<()> {
        for s in self.gamma.iter().chain(&self.delta) {
            sentence::check(ins, &self.sig, s)?;
        }
        Ok(())
    }

    pub fn atoms(side: &SentenceSet<I>) -> Vec<I::Atom> {
        side.iter()
            .filter_map(|s| match s {
                Sentence::Atom(a) => Some(a.clone()),
                _ => None,
            })
            .collect()
    }
}

impl<I: Institution> fmt::Display for Sequent<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: &SentenceSet<I>| s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        write!(f, "{} ⊢_{} {}", join(&self.gamma), self.sig, join(&self.delta))
    }
}

/// A rule name together with its choice data.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Rule<I: Institution> {
    Atom,
    NegL,
    NegR,
    OrL,
    OrR(usize),
    ExistsL,
    /// The substitution `θ: Σ^Dex[X] → Σ` used to instantiate the body.
    ExistsR(I::Mor),
}

impl<I: Institution> Rule<I> {
    pub fn keyword(&self) -> &'static str {
        match self {
            Rule::Atom => "atom",
            Rule::NegL => "neg-l",
            Rule::NegR => "neg-r",
            Rule::OrL => "or-l",
            Rule::OrR(_) => "or-r",
            Rule::ExistsL => "exists-l",
            Rule::ExistsR(_) => "exists-r",
        }
    }

    /// Whether the premises live at an extended signature.
    pub fn adds_variables(&self) -> bool {
        matches!(self, Rule::ExistsL)
    }
}

/// The principal sentences of one sequent, without side sentences.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Part<I: Institution> {
    pub left: SentenceSet<I>,
    pub right: SentenceSet<I>,
}

impl<I: Institution> Part<I> {
    pub fn new(left: impl IntoIterator<Item = Sentence<I>>, right: impl IntoIterator<Item = Sentence<I>>) -> Self {
        Part { left: left.into_iter().collect(), right: right.into_iter().collect() }
    }

    pub fn left(s: Sentence<I>) -> Self {
        Part::new([s], [])
    }

    pub fn right(s: Sentence<I>) -> Self {
        Part::new([], [s])
    }
}

impl<I: Institution> fmt::Display for Part<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: &SentenceSet<I>| s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        write!(f, "{} ⊢ {}", join(&self.left), join(&self.right))
    }
}

/// The applied part of a rule instance: the premise and conclusion sequents
/// stripped of side sentences.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Applied<I: Institution> {
    pub premises: Vec<Part<I>>,
    pub conclusion: Part<I>,
}

/// A proof tree node: rule with choice, premise trees, root sequent and
/// applied part. The applied part is stored because set-based sequents do
/// not determine which sentence a rule acted on.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ProofTree<I: Institution> {
    pub rule: Rule<I>,
    pub premises: Vec<ProofTree<I>>,
    pub root: Sequent<I>,
    pub applied: Applied<I>,
}

impl<I: Institution> ProofTree<I> {
    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(ProofTree::size).sum::<usize>()
    }

    /// Number of nodes on the longest root-to-leaf path.
    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(ProofTree::height).max().unwrap_or(0)
    }

    /// Number of inference steps on the longest root-to-leaf path; leaves have depth 0.
    pub fn depth(&self) -> usize {
        self.height() - 1
    }

    /// An `Atom` leaf on the given atomic sequent with arbitrary sides.
    pub fn atom_leaf(root: Sequent<I>, gamma_b: SentenceSet<I>, delta_b: SentenceSet<I>) -> Self {
        ProofTree {
            rule: Rule::Atom,
            premises: Vec::new(),
            root,
            applied: Applied { premises: Vec::new(), conclusion: Part { left: gamma_b, right: delta_b } },
        }
    }

    /// The node at `path` (premise indices from the root).
    pub fn at(&self, path: &[usize]) -> Option<&ProofTree<I>> {
        let mut t = self;
        for &i in path {
            t = t.premises.get(i)?;
        }
        Some(t)
    }

    /// All nodes with their paths, in pre-order.
    pub fn nodes(&self) -> Vec<(Vec<usize>, &ProofTree<I>)> {
        let mut out = Vec::new();
        let mut stack = vec![(Vec::new(), self)];
        while let Some((path, t)) = stack.pop() {
            for (i, p) in t.premises.iter().enumerate().rev() {
                let mut q = path.clone();
                q.push(i);
                stack.push((q, p));
            }
            out.push((path, t));
        }
        out
    }

    /// Whether the root is exactly `Γ ⊢_Σ Δ`.
    pub fn proves(&self, gamma: &SentenceSet<I>, sig: &I::Sig, delta: &SentenceSet<I>) -> bool {
        self.root.gamma == *gamma && self.root.sig == *sig && self.root.delta == *delta
    }
}

impl<I: Institution> fmt::Display for ProofTree<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go<I: Institution>(t: &ProofTree<I>, indent: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            let choice = match &t.rule {
                Rule::OrR(n) => format!(" {n}"),
                Rule::ExistsR(theta) => format!(" {theta}"),
                _ => String::new(),
            };
            writeln!(f, "{:indent$}{}{choice}: {}", "", t.rule.keyword(), t.root)?;
            for p in &t.premises {
                go(p, indent + 2, f)?;
            }
            Ok(())
        }
        go(self, 0, f)
    }
}

pub(crate) fn translate_set<I: Institution>(ins: &I, chi: &I::Mor, s: &SentenceSet<I>) -> Result<SentenceSet<I>> {
    s.iter().map(|p| sentence::translate(ins, chi, p)).collect()
}

pub(crate) fn union<I: Institution>(a: &SentenceSet<I>, b: &SentenceSet<I>) -> SentenceSet<I> {
    a.union(b).cloned().collect()
}

pub(crate) fn without<I: Institution>(a: &SentenceSet<I>, x: &Sentence<I>) -> SentenceSet<I> {
    let mut out = a.clone();
    out.remove(x);
    out
}

pub(crate) fn with<I: Institution>(a: &SentenceSet<I>, x: &Sentence<I>) -> SentenceSet<I> {
    let mut out = a.clone();
    out.insert(x.clone());
    out
}

/// The translation `ι_i` from the conclusion's signature to premise `i`'s
/// signature: `Σ^Dex(X)` for `ExistsL`, the identity otherwise.
pub(crate) fn premise_translation<I: Institution>(
    ins: &I,
    rule: &Rule<I>,
    conclusion: &Part<I>,
    sig: &I::Sig,
) -> Result<(I::Sig, I::Mor)> {
    if let Rule::ExistsL = rule {
        match conclusion.left.iter().next() {
            Some(Sentence::Exists(x, _)) => {
                let b = ins.extend(sig, x)?;
                Ok((b.extended, b.inclusion))
            }
            _ => Err(Error::Precondition("exists-l without an existential principal".into())),
        }
    } else {
        Ok((sig.clone(), ins.identity(sig)))
    }
}
