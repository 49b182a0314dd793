use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::ring::FiniteRing;
use crate::error::{Error, Result};
use crate::instances::fol0::Sym;

/// A monomial: variables with positive exponents.
pub type Monomial = BTreeMap<Sym, u32>;

/// A polynomial in normal form: monomials with nonzero coefficients
/// (element indices of the coefficient ring).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, usize>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: usize) -> Self {
        Self::monomial(c, Monomial::new())
    }

    pub fn var(ring: &FiniteRing, v: Sym) -> Self {
        Self::monomial(ring.one(), Monomial::from([(v, 1)]))
    }

    pub fn monomial(c: usize, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, usize> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.values().sum()).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<Sym> {
        self.terms.keys().flat_map(|m| m.keys().cloned()).collect()
    }

    pub fn add(&self, ring: &FiniteRing, other: &Poly) -> Poly {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let e = terms.entry(m.clone()).or_insert(0);
            *e = ring.add(*e, *c);
            if *e == 0 {
                terms.remove(m);
            }
        }
        Poly { terms }
    }

    pub fn neg(&self, ring: &FiniteRing) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), ring.neg(*c))).collect() }
    }

    pub fn mul(&self, ring: &FiniteRing, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut m = m1.clone();
                for (v, e) in m2 {
                    *m.entry(v.clone()).or_insert(0) += e;
                }
                out = out.add(ring, &Poly::monomial(ring.mul(*c1, *c2), m));
            }
        }
        out
    }

    pub fn pow(&self, ring: &FiniteRing, e: u32) -> Poly {
        (0..e).fold(Poly::constant(ring.one()), |acc, _| acc.mul(ring, self))
    }

    /// Value in `target` with coefficients sent through `base` and variables
    /// through `assign`.
    pub fn eval(&self, target: &FiniteRing, base: &[usize], assign: &impl Fn(&Sym) -> Result<usize>) -> Result<usize> {
        let mut acc = 0;
        for (m, c) in &self.terms {
            let mut t = base[*c];
            for (v, e) in m {
                t = target.mul(t, target.pow(assign(v)?, *e));
            }
            acc = target.add(acc, t);
        }
        Ok(acc)
    }

    /// The image under the ring map given by `base` on coefficients and
    /// `image` on variables, computed in `target`.
    pub fn substitute(&self, target: &FiniteRing, base: &[usize], image: &impl Fn(&Sym) -> Result<Poly>) -> Result<Poly> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(base[*c]);
            for (v, e) in m {
                t = t.mul(target, &image(v)?.pow(target, *e));
            }
            out = out.add(target, &t);
        }
        Ok(out)
    }

    pub fn check(&self, ring: &FiniteRing, vars: &BTreeSet<Sym>) -> Result<()> {
        for (m, c) in &self.terms {
            if *c == 0 || *c >= ring.size() {
                return Err(Error::IllFormedSentence(format!("coefficient {c} is not a nonzero element of {ring}")));
            }
            if let Some(v) = m.keys().find(|v| !vars.contains(*v)) {
                return Err(Error::UnknownSymbol(v.to_string()));
            }
            if m.values().any(|e| *e == 0) {
                return Err(Error::IllFormedSentence("zero exponent in a monomial".into()));
            }
        }
        Ok(())
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, c: usize, m: &Monomial) -> fmt::Result {
    if m.is_empty() {
        return write!(f, "{c}");
    }
    let factors: Vec<String> = m.iter().flat_map(|(v, e)| std::iter::repeat_n(v.to_string(), *e as usize)).collect();
    write!(f, "(* {c} {})", factors.join(" "))
}

/// S-expression form; every coefficient is printed as its element index,
/// since the unit of the ring need not be element 1.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.terms.len() {
            0 => write!(f, "0"),
            1 => {
                let (m, c) = self.terms.iter().next().expect("one term");
                write_monomial(f, *c, m)
            }
            _ => {
                write!(f, "(+")?;
                for (m, c) in &self.terms {
                    write!(f, " ")?;
                    write_monomial(f, *c, m)?;
                }
                write!(f, ")")
            }
        }
    }
}

/// A ring expression before normalization.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Expr {
    /// The image of an integer under `ℤ → R`.
    Int(i64),
    /// A ring element by index.
    Elem(usize),
    Var(Sym),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(vec![a, b])
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(vec![a, b])
    }

    pub fn var(name: &str) -> Expr {
        Expr::Var(Sym::named(name))
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, op: &str, v: &[Expr]| {
            write!(f, "({op}")?;
            for e in v {
                write!(f, " {e}")?;
            }
            write!(f, ")")
        };
        match self {
            Expr::Int(k) if *k < 0 => write!(f, "(- {})", k.unsigned_abs()),
            Expr::Int(k) => write!(f, "(int {k})"),
            Expr::Elem(i) => write!(f, "{i}"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Add(v) => list(f, "+", v),
            Expr::Mul(v) => list(f, "*", v),
            Expr::Neg(e) => write!(f, "(- {e})"),
            Expr::Pow(e, k) => write!(f, "(^ {e} {k})"),
        }
    }
}

/// Normal form of an expression as a polynomial over `ring`.
pub fn poly_normalize(ring: &FiniteRing, e: &Expr) -> Result<Poly> {
    Ok(match e {
        Expr::Int(k) => Poly::constant(ring.from_int(*k)),
        Expr::Elem(i) if *i < ring.size() => Poly::constant(*i),
        Expr::Elem(i) => return Err(Error::IllFormedSentence(format!("{i} is not an element of {ring}"))),
        Expr::Var(v) => Poly::var(ring, v.clone()),
        Expr::Add(v) => {
            let mut acc = Poly::zero();
            for x in v {
                acc = acc.add(ring, &poly_normalize(ring, x)?);
            }
            acc
        }
        Expr::Mul(v) => {
            let mut acc = Poly::constant(ring.one());
            for x in v {
                acc = acc.mul(ring, &poly_normalize(ring, x)?);
            }
            acc
        }
        Expr::Neg(x) => poly_normalize(ring, x)?.neg(ring),
        Expr::Pow(x, k) => poly_normalize(ring, x)?.pow(ring, *k),
    })
}

/// Direct evaluation of an expression, without normalizing.
pub fn eval_expr(ring: &FiniteRing, e: &Expr, assign: &impl Fn(&Sym) -> Result<usize>) -> Result<usize> {
    Ok(match e {
        Expr::Int(k) => ring.from_int(*k),
        Expr::Elem(i) if *i < ring.size() => *i,
        Expr::Elem(i) => return Err(Error::IllFormedSentence(format!("{i} is not an element of {ring}"))),
        Expr::Var(v) => assign(v)?,
        Expr::Add(v) => v.iter().try_fold(0, |acc, x| Ok::<_, Error>(ring.add(acc, eval_expr(ring, x, assign)?)))?,
        Expr::Mul(v) => v.iter().try_fold(ring.one(), |acc, x| Ok::<_, Error>(ring.mul(acc, eval_expr(ring, x, assign)?)))?,
        Expr::Neg(x) => ring.neg(eval_expr(ring, x, assign)?),
        Expr::Pow(x, k) => ring.pow(eval_expr(ring, x, assign)?, *k),
    })
}
