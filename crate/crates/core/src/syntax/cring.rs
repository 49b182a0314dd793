use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::{At, Ctx, Pos, SExpr, SResult, Scope, Syntax, SyntaxError};
use crate::instances::cring::{poly_normalize, CRing, CRingAtom, CRingBlock, CRingModel, CRingMor, CRingSig, Expr, FiniteRing, Poly};
use crate::instances::fol0::{Name, Sym};
use crate::institution::Institution;

fn clause<'a>(e: &'a SExpr, what: &str) -> SResult<(&'a str, &'a [SExpr])> {
    let v = e.expect_list(what)?;
    match v.first().and_then(SExpr::as_symbol) {
        Some(h) => Ok((h, &v[1..])),
        None => Err(SyntaxError::parse(e.pos(), format!("expected {what}"))),
    }
}

/// Largest ring the reader builds; validating the tables is cubic in the size.
pub const MAX_RING_SIZE: usize = 64;

/// A catalog ring, `Zn`, or a left-nested product `AxBx...`, of at most
/// [`MAX_RING_SIZE`] elements.
pub fn ring_by_name(name: &str) -> Option<FiniteRing> {
    if let Some(r) = FiniteRing::catalog(7).into_iter().find(|r| r.name() == name) {
        return Some((*r).clone());
    }
    let mut parts = name.split('x');
    let mut ring = factor(parts.next()?)?;
    for part in parts {
        let b = factor(part)?;
        if ring.size() * b.size() > MAX_RING_SIZE {
            return None;
        }
        ring = FiniteRing::product(&ring, &b).ok()?;
    }
    Some(ring)
}

fn factor(name: &str) -> Option<FiniteRing> {
    if let Some(r) = FiniteRing::catalog(7).into_iter().find(|r| r.name() == name) {
        return Some((*r).clone());
    }
    let n = name.strip_prefix('Z')?.parse::<usize>().ok()?;
    (n > 0 && n <= MAX_RING_SIZE && name == format!("Z{n}")).then(|| FiniteRing::zn(n).ok()).flatten()
}

fn read_ring(e: &SExpr) -> SResult<Arc<FiniteRing>> {
    let name = e.expect_symbol("a ring name")?;
    ring_by_name(name).map(Arc::new).ok_or_else(|| SyntaxError::resolve(e.pos(), format!("unknown ring `{name}`")))
}

fn is_var_name(s: &str) -> bool {
    s.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_') && !s.starts_with(':')
}

/// Ring expressions: element indices, `(int k)`, `(- e)`, `(+ e ...)`,
/// `(* e ...)`, `(^ e k)` and variables.
pub fn read_expr(sig: &CRingSig, scope: &Scope, e: &SExpr) -> SResult<Expr> {
    match e {
        SExpr::Symbol(s, pos) => {
            if let Ok(i) = s.parse::<usize>() {
                return Ok(Expr::Elem(i));
            }
            let sym = scope.lookup(s).unwrap_or_else(|| Sym::named(s));
            if !is_var_name(s) || !sig.vars().contains(&sym) {
                return Err(SyntaxError::resolve(*pos, format!("unknown variable `{s}`")));
            }
            Ok(Expr::Var(sym))
        }
        SExpr::List(v, pos) => {
            let Some((op, args)) = v.split_first() else {
                return Err(SyntaxError::parse(*pos, "empty expression"));
            };
            let sub = |args: &[SExpr]| args.iter().map(|a| read_expr(sig, scope, a)).collect::<SResult<Vec<_>>>();
            match (op.expect_symbol("an operator")?, args) {
                ("int", [k]) => {
                    let s = k.expect_symbol("an integer")?;
                    s.parse::<i64>()
                        .ok()
                        .filter(|k| k.unsigned_abs() <= 1 << 16)
                        .map(Expr::Int)
                        .ok_or_else(|| SyntaxError::parse(k.pos(), format!("expected an integer, found `{s}`")))
                }
                ("-", [a]) => Ok(Expr::Neg(Box::new(read_expr(sig, scope, a)?))),
                ("+", args) => Ok(Expr::Add(sub(args)?)),
                ("*", args) => Ok(Expr::Mul(sub(args)?)),
                ("^", [a, k]) => {
                    let k = k.expect_usize("an exponent")?;
                    let k = u32::try_from(k).ok().filter(|k| u64::from(*k) <= MAX_DEGREE);
                    let k = k.ok_or_else(|| SyntaxError::parse(*pos, "exponent too large"))?;
                    Ok(Expr::Pow(Box::new(read_expr(sig, scope, a)?), k))
                }
                (op, _) => Err(SyntaxError::parse(*pos, format!("unknown operator or wrong arity: `{op}`"))),
            }
        }
    }
}

pub fn read_poly(sig: &CRingSig, scope: &Scope, e: &SExpr) -> SResult<Poly> {
    let expr = read_expr(sig, scope, e)?;
    if degree_bound(&expr) > MAX_DEGREE {
        return Err(SyntaxError::parse(e.pos(), format!("polynomial degree may exceed {MAX_DEGREE}")));
    }
    poly_normalize(sig.ring(), &expr).at(e.pos())
}

/// Largest total degree the reader normalizes.
pub const MAX_DEGREE: u64 = 64;

fn degree_bound(e: &Expr) -> u64 {
    match e {
        Expr::Int(_) | Expr::Elem(_) => 0,
        Expr::Var(_) => 1,
        Expr::Add(v) => v.iter().map(degree_bound).max().unwrap_or(0),
        Expr::Mul(v) => v.iter().map(degree_bound).fold(0, u64::saturating_add),
        Expr::Neg(a) => degree_bound(a),
        Expr::Pow(a, k) => degree_bound(a).saturating_mul(u64::from(*k)),
    }
}

pub fn print_poly(ring: &FiniteRing, scope: &Scope, p: &Poly) -> SExpr {
    let monomial = |c: usize, m: &BTreeMap<Sym, u32>| {
        let mut factors: Vec<SExpr> =
            m.iter().flat_map(|(v, e)| std::iter::repeat_n(SExpr::sym(scope.name_of(v)), *e as usize)).collect();
        if factors.is_empty() {
            return SExpr::sym(c.to_string());
        }
        if c == ring.one() && factors.len() == 1 {
            return factors.pop().expect("one factor");
        }
        let mut v = vec![SExpr::sym("*")];
        if c != ring.one() {
            v.push(SExpr::sym(c.to_string()));
        }
        v.extend(factors);
        SExpr::list(v)
    };
    let mut terms: Vec<SExpr> = p.terms().iter().map(|(m, c)| monomial(*c, m)).collect();
    match terms.len() {
        0 => SExpr::sym("0"),
        1 => terms.pop().expect("one term"),
        _ => {
            terms.insert(0, SExpr::sym("+"));
            SExpr::list(terms)
        }
    }
}

fn elements(v: &[SExpr]) -> SResult<Vec<usize>> {
    v.iter().map(|e| e.expect_usize("an element")).collect()
}

/// The base map when none is given: the only homomorphism, or the identity.
fn default_base(from: &FiniteRing, to: &FiniteRing) -> Option<Vec<usize>> {
    if from == to {
        return Some((0..from.size()).collect());
    }
    let homs = from.homomorphisms(to);
    (homs.len() == 1).then(|| homs[0].clone())
}

fn var_name(e: &SExpr) -> SResult<&str> {
    let s = e.expect_symbol("a variable")?;
    if !is_var_name(s) || s.contains('#') {
        return Err(SyntaxError::parse(e.pos(), format!("`{s}` is not a valid variable name")));
    }
    Ok(s)
}

impl Syntax for CRing {
    const KEYWORD: &'static str = "cring";

    fn with_var_budget(n: usize) -> Self {
        CRing { var_budget: n, ..CRing::default() }
    }

    fn var_budget(&self) -> usize {
        self.var_budget
    }

    /// `(ring R) (vars x ...)`
    fn read_signature(&self, body: &[SExpr], pos: Pos) -> SResult<CRingSig> {
        let mut ring = None;
        let mut vars = BTreeSet::new();
        for e in body {
            match clause(e, "a signature clause")? {
                ("ring", [r]) if ring.is_none() => ring = Some(read_ring(r)?),
                ("vars", names) => {
                    for n in names {
                        if !vars.insert(Sym::named(var_name(n)?)) {
                            return Err(SyntaxError::resolve(n.pos(), format!("variable `{n}` declared twice")));
                        }
                    }
                }
                (other, _) => return Err(SyntaxError::parse(e.pos(), format!("unexpected signature clause `{other}`"))),
            }
        }
        let ring = ring.ok_or_else(|| SyntaxError::parse(pos, "missing (ring R)"))?;
        Ok(CRingSig::new(ring, vars))
    }

    fn print_signature(&self, sig: &CRingSig) -> Vec<SExpr> {
        let scope = Scope::default();
        let mut vars = vec![SExpr::sym("vars")];
        vars.extend(sig.vars().iter().map(|v| SExpr::sym(scope.name_of(v))));
        vec![SExpr::list(vec![SExpr::sym("ring"), SExpr::sym(sig.ring().name())]), SExpr::list(vars)]
    }

    /// `(base c ...) (var x POLY) ...`; unmentioned variables map to the
    /// variable of the same name.
    fn read_morphism(&self, dom: &Ctx<Self>, cod: &Ctx<Self>, body: &[SExpr], pos: Pos) -> SResult<CRingMor> {
        let (ds, cs) = (&dom.sig, &cod.sig);
        let mut base = None;
        let mut images: BTreeMap<Sym, Poly> =
            ds.vars().iter().filter(|v| cs.vars().contains(v)).map(|v| (v.clone(), Poly::var(cs.ring(), v.clone()))).collect();
        for e in body {
            match clause(e, "a morphism clause")? {
                ("base", v) if base.is_none() => base = Some(elements(v)?),
                ("var", [x, p]) => {
                    let text = x.expect_symbol("a variable")?;
                    let sym = dom.scope.lookup(text).unwrap_or_else(|| Sym::named(text));
                    if !ds.vars().contains(&sym) {
                        return Err(SyntaxError::resolve(x.pos(), format!("unknown variable `{text}`")));
                    }
                    images.insert(sym, read_poly(cs, &cod.scope, p)?);
                }
                (other, _) => return Err(SyntaxError::parse(e.pos(), format!("unexpected morphism clause `{other}`"))),
            }
        }
        let base = match base {
            Some(b) => b,
            None => default_base(ds.ring(), cs.ring())
                .ok_or_else(|| SyntaxError::resolve(pos, "the base map is not determined; give (base ...)"))?,
        };
        CRingMor::new(ds.clone(), cs.clone(), base, images).at(pos)
    }

    fn print_morphism(&self, m: &CRingMor, dom: &Scope, cod: &Scope) -> Vec<SExpr> {
        let mut out = Vec::new();
        if default_base(m.dom().ring(), m.cod().ring()).as_deref() != Some(m.base()) {
            let mut v = vec![SExpr::sym("base")];
            v.extend(m.base().iter().map(|c| SExpr::sym(c.to_string())));
            out.push(SExpr::list(v));
        }
        for (x, p) in m.images() {
            if m.cod().vars().contains(x) && *p == Poly::var(m.cod().ring(), x.clone()) {
                continue;
            }
            out.push(SExpr::list(vec![SExpr::sym("var"), SExpr::sym(dom.name_of(x)), print_poly(m.cod().ring(), cod, p)]));
        }
        out
    }

    /// `(ring R) (base c ...) (value x k) ...`
    fn read_model(&self, ctx: &Ctx<Self>, body: &[SExpr], pos: Pos) -> SResult<CRingModel> {
        let sig = &ctx.sig;
        let mut ring = None;
        let mut base = None;
        let mut assign = BTreeMap::new();
        for e in body {
            match clause(e, "a model clause")? {
                ("ring", [r]) if ring.is_none() => ring = Some(read_ring(r)?),
                ("base", v) if base.is_none() => base = Some(elements(v)?),
                ("value", [x, k]) => {
                    let text = x.expect_symbol("a variable")?;
                    let sym = ctx.scope.lookup(text).unwrap_or_else(|| Sym::named(text));
                    if !sig.vars().contains(&sym) {
                        return Err(SyntaxError::resolve(x.pos(), format!("unknown variable `{text}`")));
                    }
                    if assign.insert(sym, k.expect_usize("an element")?).is_some() {
                        return Err(SyntaxError::resolve(x.pos(), format!("`{text}` given twice")));
                    }
                }
                (other, _) => return Err(SyntaxError::parse(e.pos(), format!("unexpected model clause `{other}`"))),
            }
        }
        let ring = ring.ok_or_else(|| SyntaxError::parse(pos, "missing (ring R)"))?;
        let base = match base {
            Some(b) => b,
            None => default_base(sig.ring(), &ring)
                .ok_or_else(|| SyntaxError::resolve(pos, "the base map is not determined; give (base ...)"))?,
        };
        CRingModel::new(sig.clone(), ring, base, assign).at(pos)
    }

    fn print_model(&self, m: &CRingModel, scope: &Scope) -> Vec<SExpr> {
        let mut base = vec![SExpr::sym("base")];
        base.extend(m.base().iter().map(|c| SExpr::sym(c.to_string())));
        let mut out = vec![SExpr::list(vec![SExpr::sym("ring"), SExpr::sym(m.ring().name())]), SExpr::list(base)];
        for (x, k) in m.assignment() {
            out.push(SExpr::list(vec![SExpr::sym("value"), SExpr::sym(scope.name_of(x)), SExpr::sym(k.to_string())]));
        }
        out
    }

    /// `= p q`
    fn read_atom(&self, ctx: &Ctx<Self>, args: &[SExpr], pos: Pos) -> SResult<CRingAtom> {
        let [eq, l, r] = args else {
            return Err(SyntaxError::parse(pos, "expected (atom = p q)"));
        };
        if eq.as_symbol() != Some("=") {
            return Err(SyntaxError::parse(eq.pos(), "expected (atom = p q)"));
        }
        Ok(CRingAtom { lhs: read_poly(&ctx.sig, &ctx.scope, l)?, rhs: read_poly(&ctx.sig, &ctx.scope, r)? })
    }

    fn print_atom(&self, sig: &CRingSig, a: &CRingAtom, scope: &Scope) -> Vec<SExpr> {
        vec![SExpr::sym("="), print_poly(sig.ring(), scope, &a.lhs), print_poly(sig.ring(), scope, &a.rhs)]
    }

    /// `(x ...)`
    fn read_block(&self, sig: &CRingSig, e: &SExpr) -> SResult<CRingBlock> {
        let mut vars = BTreeSet::new();
        for v in e.expect_list("a block (x ...)")? {
            let name = var_name(v)?;
            if !vars.insert(Name::from(name)) {
                return Err(SyntaxError::resolve(v.pos(), format!("variable `{name}` bound twice")));
            }
        }
        Ok(CRingBlock::new(sig, vars))
    }

    fn print_block(&self, x: &CRingBlock) -> SExpr {
        SExpr::list(x.vars.iter().map(|n| SExpr::sym(&**n)).collect())
    }

    fn bindings(&self, x: &CRingBlock) -> Vec<(String, Sym)> {
        x.vars.iter().map(|n| (n.to_string(), x.symbol(n))).collect()
    }

    fn read_substitution(&self, ctx: &Ctx<Self>, x: &CRingBlock, e: &SExpr) -> SResult<CRingMor> {
        let mut images = BTreeMap::new();
        for entry in e.expect_list("a substitution ((x p) ...)")? {
            let pair = entry.expect_list("(x p)")?;
            let [v, p] = pair else {
                return Err(SyntaxError::parse(entry.pos(), "expected (x p)"));
            };
            let name = v.expect_symbol("a variable")?;
            if !x.vars.contains(name) {
                return Err(SyntaxError::resolve(v.pos(), format!("`{name}` is not a variable of the block")));
            }
            if images.insert(x.symbol(name), read_poly(&ctx.sig, &ctx.scope, p)?).is_some() {
                return Err(SyntaxError::resolve(v.pos(), format!("`{name}` substituted twice")));
            }
        }
        if images.len() != x.vars.len() {
            return Err(SyntaxError::resolve(e.pos(), "every variable of the block needs a polynomial"));
        }
        substitution(self, &ctx.sig, x, images).at(e.pos())
    }

    fn print_substitution(&self, theta: &CRingMor, x: &CRingBlock, scope: &Scope) -> Option<SExpr> {
        let sig = theta.cod();
        let images: BTreeMap<Sym, Poly> =
            x.vars.iter().map(|n| Some((x.symbol(n), theta.images().get(&x.symbol(n))?.clone()))).collect::<Option<_>>()?;
        if substitution(self, sig, x, images.clone()).ok()? != *theta {
            return None;
        }
        Some(SExpr::list(
            x.vars.iter().map(|n| SExpr::list(vec![SExpr::sym(&**n), print_poly(sig.ring(), scope, &images[&x.symbol(n)])])).collect(),
        ))
    }
}

fn substitution(ins: &CRing, sig: &CRingSig, x: &CRingBlock, images: BTreeMap<Sym, Poly>) -> crate::Result<CRingMor> {
    let ext = ins.extend(sig, x)?.extended;
    let mut all = ins.identity(sig).images().clone();
    all.extend(images);
    CRingMor::new(ext, sig.clone(), (0..sig.ring().size()).collect(), all)
}
