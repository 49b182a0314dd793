use std::collections::{BTreeMap, BTreeSet};

use super::{At, Ctx, Pos, SExpr, SResult, Scope, Syntax, SyntaxError};
use crate::instances::fol0::{Fol0, Fol0Atom, Fol0Block, Fol0Model, Fol0Mor, Fol0Sig, FuncDecl, Name, Sym, Term};
use crate::institution::Institution;

use crate::util::Odometer;

fn clause<'a>(e: &'a SExpr, what: &str) -> SResult<(&'a str, &'a [SExpr])> {
    let v = e.expect_list(what)?;
    match v.first().and_then(SExpr::as_symbol) {
        Some(h) => Ok((h, &v[1..])),
        None => Err(SyntaxError::parse(e.pos(), format!("expected {what}"))),
    }
}

fn names(v: &[SExpr], what: &str) -> SResult<Vec<Name>> {
    v.iter().map(|e| Ok(Name::from(e.expect_symbol(what)?))).collect()
}

fn symbol(sig: &Fol0Sig, scope: &Scope, e: &SExpr) -> SResult<Sym> {
    let text = e.expect_symbol("a function symbol")?;
    let sym = scope.lookup(text).unwrap_or_else(|| Sym::named(text));
    if sig.funcs().contains_key(&sym) {
        Ok(sym)
    } else {
        Err(SyntaxError::resolve(e.pos(), format!("unknown function symbol `{text}`")))
    }
}

/// A term; `#i` is the `i`-th hole.
fn read_term(sig: &Fol0Sig, scope: &Scope, e: &SExpr) -> SResult<Term> {
    match e {
        SExpr::Symbol(s, pos) => match s.strip_prefix('#').filter(|_| !s.contains(char::is_alphabetic)) {
            Some(i) => Ok(Term::Hole(i.parse().map_err(|_| SyntaxError::parse(*pos, format!("bad hole `{s}`")))?)),
            None => Ok(Term::constant(symbol(sig, scope, e)?)),
        },
        SExpr::List(v, pos) => {
            let Some((f, args)) = v.split_first() else {
                return Err(SyntaxError::parse(*pos, "empty term"));
            };
            let f = symbol(sig, scope, f)?;
            Ok(Term::App(f, args.iter().map(|a| read_term(sig, scope, a)).collect::<SResult<_>>()?))
        }
    }
}

fn print_term(scope: &Scope, t: &Term) -> SExpr {
    match t {
        Term::Hole(i) => SExpr::sym(format!("#{i}")),
        Term::App(f, args) if args.is_empty() => SExpr::sym(scope.name_of(f)),
        Term::App(f, args) => {
            let mut v = vec![SExpr::sym(scope.name_of(f))];
            v.extend(args.iter().map(|a| print_term(scope, a)));
            SExpr::list(v)
        }
    }
}

fn arity(sig: &Fol0Sig, f: &Sym) -> usize {
    sig.funcs().get(f).map(|d| d.args.len()).unwrap_or(0)
}

/// Morphism images of the form `g(#0, …, #n-1)` are written as just `g`.
fn print_image(cod: &Fol0Sig, scope: &Scope, t: &Term) -> SExpr {
    match t {
        Term::App(g, _) if *t == Term::generic(g.clone(), arity(cod, g)) => SExpr::sym(scope.name_of(g)),
        _ => print_term(scope, t),
    }
}

fn tuple(e: &SExpr, what: &str) -> SResult<Vec<usize>> {
    e.expect_list(what)?.iter().map(|v| v.expect_usize("an element")).collect()
}

fn row_index(radices: &[usize], tuple: &[usize]) -> Option<usize> {
    if tuple.len() != radices.len() || tuple.iter().zip(radices).any(|(v, r)| v >= r) {
        return None;
    }
    Some(tuple.iter().zip(radices).fold(0, |acc, (v, r)| acc * r + v))
}

fn tuple_expr(t: &[usize]) -> SExpr {
    SExpr::list(t.iter().map(|v| SExpr::sym(v.to_string())).collect())
}

impl Syntax for Fol0 {
    const KEYWORD: &'static str = "fol0";

    fn with_var_budget(n: usize) -> Self {
        Fol0::with_var_budget(n)
    }

    fn var_budget(&self) -> usize {
        self.var_budget
    }

    /// `(sorts s ...) (funcs (f (s ...) t) ...) (preds (P (s ...)) ...) (equality)`
    fn read_signature(&self, body: &[SExpr], pos: Pos) -> SResult<Fol0Sig> {
        let mut sorts = BTreeSet::new();
        let mut funcs = BTreeMap::new();
        let mut preds = BTreeMap::new();
        let mut equality = false;
        for e in body {
            let (head, rest) = clause(e, "a signature clause")?;
            match head {
                "sorts" => sorts.extend(names(rest, "a sort")?),
                "funcs" => {
                    for f in rest {
                        let v = f.expect_list("(f (s ...) t)")?;
                        let [name, args, result] = v else {
                            return Err(SyntaxError::parse(f.pos(), "expected (f (s ...) t)"));
                        };
                        let decl = FuncDecl {
                            args: names(args.expect_list("argument sorts")?, "a sort")?,
                            result: result.expect_symbol("a result sort")?.into(),
                        };
                        let name = name.expect_symbol("a function name")?;
                        if funcs.insert(Sym::named(name), decl).is_some() {
                            return Err(SyntaxError::resolve(f.pos(), format!("function `{name}` declared twice")));
                        }
                    }
                }
                "preds" => {
                    for p in rest {
                        let v = p.expect_list("(P (s ...))")?;
                        let [name, args] = v else {
                            return Err(SyntaxError::parse(p.pos(), "expected (P (s ...))"));
                        };
                        let name = name.expect_symbol("a predicate name")?;
                        let args = names(args.expect_list("argument sorts")?, "a sort")?;
                        if preds.insert(Name::from(name), args).is_some() {
                            return Err(SyntaxError::resolve(p.pos(), format!("predicate `{name}` declared twice")));
                        }
                    }
                }
                "equality" if rest.is_empty() => equality = true,
                other => return Err(SyntaxError::parse(e.pos(), format!("unknown signature clause `{other}`"))),
            }
        }
        Fol0Sig::new(sorts, funcs, preds, equality).at(pos)
    }

    fn print_signature(&self, sig: &Fol0Sig) -> Vec<SExpr> {
        let scope = Scope::default();
        let mut sorts = vec![SExpr::sym("sorts")];
        sorts.extend(sig.sorts().iter().map(|s| SExpr::sym(&**s)));
        let mut funcs = vec![SExpr::sym("funcs")];
        for (f, d) in sig.funcs() {
            funcs.push(SExpr::list(vec![
                SExpr::sym(scope.name_of(f)),
                SExpr::list(d.args.iter().map(|s| SExpr::sym(&**s)).collect()),
                SExpr::sym(&*d.result),
            ]));
        }
        let mut preds = vec![SExpr::sym("preds")];
        for (p, args) in sig.preds() {
            preds.push(SExpr::list(vec![SExpr::sym(&**p), SExpr::list(args.iter().map(|s| SExpr::sym(&**s)).collect())]));
        }
        let mut out = vec![SExpr::list(sorts), SExpr::list(funcs), SExpr::list(preds)];
        if sig.has_equality() {
            out.push(SExpr::list(vec![SExpr::sym("equality")]));
        }
        out
    }

    /// `(sort s u) (func f IMAGE) (pred P Q)`; unmentioned symbols map to the
    /// symbol of the same name.
    fn read_morphism(&self, dom: &Ctx<Self>, cod: &Ctx<Self>, body: &[SExpr], pos: Pos) -> SResult<Fol0Mor> {
        let (ds, cs) = (&dom.sig, &cod.sig);
        let mut sorts: BTreeMap<Name, Name> = ds.sorts().iter().map(|s| (s.clone(), s.clone())).collect();
        let mut funcs: BTreeMap<Sym, Term> = ds.funcs().keys().map(|f| (f.clone(), Term::generic(f.clone(), arity(cs, f)))).collect();
        let mut preds: BTreeMap<Name, Name> = ds.preds().keys().map(|p| (p.clone(), p.clone())).collect();
        for e in body {
            let (head, rest) = clause(e, "a morphism clause")?;
            let [a, b] = rest else {
                return Err(SyntaxError::parse(e.pos(), format!("({head} FROM TO) takes two arguments")));
            };
            match head {
                "sort" => {
                    let s = a.expect_symbol("a sort")?;
                    if !ds.has_sort(s) {
                        return Err(SyntaxError::resolve(a.pos(), format!("unknown sort `{s}`")));
                    }
                    sorts.insert(s.into(), b.expect_symbol("a sort")?.into());
                }
                "func" => {
                    let f = symbol(ds, &dom.scope, a)?;
                    let img = match b {
                        SExpr::Symbol(..) if !b.expect_symbol("")?.starts_with('#') => {
                            let g = symbol(cs, &cod.scope, b)?;
                            Term::generic(g.clone(), arity(cs, &g))
                        }
                        _ => read_term(cs, &cod.scope, b)?,
                    };
                    funcs.insert(f, img);
                }
                "pred" => {
                    let p = a.expect_symbol("a predicate")?;
                    if !ds.preds().contains_key(p) {
                        return Err(SyntaxError::resolve(a.pos(), format!("unknown predicate `{p}`")));
                    }
                    preds.insert(p.into(), b.expect_symbol("a predicate")?.into());
                }
                other => return Err(SyntaxError::parse(e.pos(), format!("unknown morphism clause `{other}`"))),
            }
        }
        Fol0Mor::new(ds.clone(), cs.clone(), sorts, funcs, preds).at(pos)
    }

    fn print_morphism(&self, m: &Fol0Mor, dom: &Scope, cod: &Scope) -> Vec<SExpr> {
        let mut out = Vec::new();
        for (s, t) in m.sort_map() {
            if s != t {
                out.push(SExpr::list(vec![SExpr::sym("sort"), SExpr::sym(&**s), SExpr::sym(&**t)]));
            }
        }
        for (f, t) in m.func_map() {
            if *t != Term::generic(f.clone(), arity(m.cod(), f)) {
                out.push(SExpr::list(vec![SExpr::sym("func"), SExpr::sym(dom.name_of(f)), print_image(m.cod(), cod, t)]));
            }
        }
        for (p, q) in m.pred_map() {
            if p != q {
                out.push(SExpr::list(vec![SExpr::sym("pred"), SExpr::sym(&**p), SExpr::sym(&**q)]));
            }
        }
        out
    }

    /// `(carrier s 0 1 ...) (func f ((0) 1) ...) (pred P (0) ...)`
    fn read_model(&self, ctx: &Ctx<Self>, body: &[SExpr], pos: Pos) -> SResult<Fol0Model> {
        let sig = &ctx.sig;
        let mut carriers: BTreeMap<Name, usize> = BTreeMap::new();
        let mut func_clauses = Vec::new();
        let mut pred_clauses = Vec::new();
        for e in body {
            let (head, rest) = clause(e, "a model clause")?;
            match head {
                "carrier" => {
                    let Some((s, elems)) = rest.split_first() else {
                        return Err(SyntaxError::parse(e.pos(), "(carrier s 0 1 ...) needs a sort"));
                    };
                    for (i, x) in elems.iter().enumerate() {
                        if x.expect_usize("an element")? != i {
                            return Err(SyntaxError::parse(x.pos(), format!("carrier elements must be 0..n in order, found `{x}`")));
                        }
                    }
                    carriers.insert(s.expect_symbol("a sort")?.into(), elems.len());
                }
                "func" => func_clauses.push((e, rest)),
                "pred" => pred_clauses.push((e, rest)),
                other => return Err(SyntaxError::parse(e.pos(), format!("unknown model clause `{other}`"))),
            }
        }
        for s in sig.sorts() {
            if !carriers.contains_key(s) {
                return Err(SyntaxError::resolve(pos, format!("no carrier for sort `{s}`")));
            }
        }
        let radices = |args: &[Name]| -> SResult<Vec<usize>> {
            args.iter()
                .map(|s| carriers.get(s).copied().ok_or_else(|| SyntaxError::resolve(pos, format!("no carrier for sort `{s}`"))))
                .collect()
        };
        let mut funcs = BTreeMap::new();
        for (e, rest) in func_clauses {
            let Some((f, entries)) = rest.split_first() else {
                return Err(SyntaxError::parse(e.pos(), "(func f ...) needs a symbol"));
            };
            let f = symbol(sig, &ctx.scope, f)?;
            let r = radices(&sig.funcs()[&f].args)?;
            let mut table = vec![None; Odometer::count_all(&r)];
            for entry in entries {
                let v = entry.expect_list("((args) value)")?;
                let [args, val] = v else {
                    return Err(SyntaxError::parse(entry.pos(), "expected ((args) value)"));
                };
                let i = row_index(&r, &tuple(args, "an argument tuple")?)
                    .ok_or_else(|| SyntaxError::resolve(args.pos(), format!("`{args}` is not an argument tuple of `{f}`")))?;
                table[i] = Some(val.expect_usize("an element")?);
            }
            let table: Option<Vec<usize>> = table.into_iter().collect();
            let table = table.ok_or_else(|| SyntaxError::resolve(e.pos(), format!("incomplete table for `{f}`")))?;
            funcs.insert(f, table);
        }
        let mut preds = BTreeMap::new();
        for (e, rest) in pred_clauses {
            let Some((p, entries)) = rest.split_first() else {
                return Err(SyntaxError::parse(e.pos(), "(pred P ...) needs a predicate"));
            };
            let name = p.expect_symbol("a predicate")?;
            let Some(args) = sig.preds().get(name) else {
                return Err(SyntaxError::resolve(p.pos(), format!("unknown predicate `{name}`")));
            };
            let r = radices(args)?;
            let mut table = vec![false; Odometer::count_all(&r)];
            for entry in entries {
                let i = row_index(&r, &tuple(entry, "a tuple")?)
                    .ok_or_else(|| SyntaxError::resolve(entry.pos(), format!("`{entry}` is not a tuple of `{name}`")))?;
                table[i] = true;
            }
            preds.insert(Name::from(name), table);
        }
        for p in sig.preds().keys() {
            if !preds.contains_key(p) {
                let r = radices(&sig.preds()[p])?;
                preds.insert(p.clone(), vec![false; Odometer::count_all(&r)]);
            }
        }
        Fol0Model::new(sig.clone(), carriers, funcs, preds).at(pos)
    }

    fn print_model(&self, m: &Fol0Model, scope: &Scope) -> Vec<SExpr> {
        let sig = m.signature();
        let mut out = Vec::new();
        for (s, n) in m.carriers() {
            let mut v = vec![SExpr::sym("carrier"), SExpr::sym(&**s)];
            v.extend((0..*n).map(|i| SExpr::sym(i.to_string())));
            out.push(SExpr::list(v));
        }
        let radices = |args: &[Name]| args.iter().map(|s| m.carriers()[s]).collect::<Vec<_>>();
        for (f, d) in sig.funcs() {
            let table = m.func_table(f).expect("total model");
            let mut v = vec![SExpr::sym("func"), SExpr::sym(scope.name_of(f))];
            for (i, t) in Odometer::new(radices(&d.args)).enumerate() {
                v.push(SExpr::list(vec![tuple_expr(&t), SExpr::sym(table[i].to_string())]));
            }
            out.push(SExpr::list(v));
        }
        for (p, args) in sig.preds() {
            let table = m.pred_table(p).expect("total model");
            let mut v = vec![SExpr::sym("pred"), SExpr::sym(&**p)];
            for (i, t) in Odometer::new(radices(args)).enumerate() {
                if table[i] {
                    v.push(tuple_expr(&t));
                }
            }
            out.push(SExpr::list(v));
        }
        out
    }

    /// `P t ...` or `= t u`.
    fn read_atom(&self, ctx: &Ctx<Self>, args: &[SExpr], pos: Pos) -> SResult<Fol0Atom> {
        let Some((head, terms)) = args.split_first() else {
            return Err(SyntaxError::parse(pos, "(atom P t ...) needs a predicate"));
        };
        let terms: Vec<Term> = terms.iter().map(|t| read_term(&ctx.sig, &ctx.scope, t)).collect::<SResult<_>>()?;
        match head.expect_symbol("a predicate")? {
            "=" => match <[Term; 2]>::try_from(terms) {
                Ok([a, b]) => Ok(Fol0Atom::Eq(a, b)),
                Err(_) => Err(SyntaxError::parse(pos, "(atom = t u) takes two terms")),
            },
            p => Ok(Fol0Atom::Pred(p.into(), terms)),
        }
    }

    fn print_atom(&self, _sig: &Fol0Sig, a: &Fol0Atom, scope: &Scope) -> Vec<SExpr> {
        match a {
            Fol0Atom::Pred(p, args) => {
                let mut v = vec![SExpr::sym(&**p)];
                v.extend(args.iter().map(|t| print_term(scope, t)));
                v
            }
            Fol0Atom::Eq(l, r) => vec![SExpr::sym("="), print_term(scope, l), print_term(scope, r)],
        }
    }

    /// `((x s) ...)`
    fn read_block(&self, sig: &Fol0Sig, e: &SExpr) -> SResult<Fol0Block> {
        let mut vars = BTreeMap::new();
        for v in e.expect_list("a block ((x s) ...)")? {
            // `x:s` is accepted as shorthand for `(x s)`.
            let (name, sort, x, s) = match v {
                SExpr::Symbol(text, pos) => match text.split_once(':') {
                    Some((n, s)) if !n.is_empty() && !s.is_empty() => (n, s, v, v),
                    _ => return Err(SyntaxError::parse(*pos, format!("expected (x s) or x:s, found `{text}`"))),
                },
                SExpr::List(pair, pos) => {
                    let [x, s] = pair.as_slice() else {
                        return Err(SyntaxError::parse(*pos, "expected (x s)"));
                    };
                    (x.expect_symbol("a variable")?, s.expect_symbol("a sort")?, x, s)
                }
            };
            if name.contains('#') || name.starts_with(':') {
                return Err(SyntaxError::parse(x.pos(), format!("`{name}` is not a valid variable name")));
            }
            if sig.funcs().contains_key(&Sym::named(name)) {
                return Err(SyntaxError::resolve(x.pos(), format!("variable `{name}` shadows a function symbol")));
            }
            if !sig.has_sort(sort) {
                return Err(SyntaxError::resolve(s.pos(), format!("unknown sort `{sort}`")));
            }
            if vars.insert(Name::from(name), Name::from(sort)).is_some() {
                return Err(SyntaxError::resolve(x.pos(), format!("variable `{name}` bound twice")));
            }
        }
        Ok(Fol0Block::new(sig, vars))
    }

    fn print_block(&self, x: &Fol0Block) -> SExpr {
        SExpr::list(x.vars.iter().map(|(n, s)| SExpr::list(vec![SExpr::sym(&**n), SExpr::sym(&**s)])).collect())
    }

    fn bindings(&self, x: &Fol0Block) -> Vec<(String, Sym)> {
        x.vars.keys().map(|n| (n.to_string(), x.symbol(n))).collect()
    }

    fn read_substitution(&self, ctx: &Ctx<Self>, x: &Fol0Block, e: &SExpr) -> SResult<Fol0Mor> {
        let mut images = BTreeMap::new();
        for entry in e.expect_list("a substitution ((x t) ...)")? {
            let pair = entry.expect_list("(x t)")?;
            let [v, t] = pair else {
                return Err(SyntaxError::parse(entry.pos(), "expected (x t)"));
            };
            let name = v.expect_symbol("a variable")?;
            if !x.vars.contains_key(name) {
                return Err(SyntaxError::resolve(v.pos(), format!("`{name}` is not a variable of the block")));
            }
            if images.insert(x.symbol(name), read_term(&ctx.sig, &ctx.scope, t)?).is_some() {
                return Err(SyntaxError::resolve(v.pos(), format!("`{name}` substituted twice")));
            }
        }
        if images.len() != x.vars.len() {
            return Err(SyntaxError::resolve(e.pos(), "every variable of the block needs a term"));
        }
        substitution(&ctx.sig, x, images).at(e.pos())
    }

    fn print_substitution(&self, theta: &Fol0Mor, x: &Fol0Block, scope: &Scope) -> Option<SExpr> {
        let sig = self.mor_cod(theta);
        let images: BTreeMap<Sym, Term> =
            x.vars.keys().map(|n| Some((x.symbol(n), theta.func_map().get(&x.symbol(n))?.clone()))).collect::<Option<_>>()?;
        if substitution(&sig, x, images.clone()).ok()? != *theta {
            return None;
        }
        Some(SExpr::list(
            x.vars
                .keys()
                .map(|n| SExpr::list(vec![SExpr::sym(&**n), print_term(scope, &images[&x.symbol(n)])]))
                .collect(),
        ))
    }
}

fn substitution(sig: &Fol0Sig, x: &Fol0Block, images: BTreeMap<Sym, Term>) -> crate::Result<Fol0Mor> {
    let ext = Fol0::default().extend(sig, x)?.extended;
    let mut funcs = Fol0Mor::identity(sig).func_map().clone();
    funcs.extend(images);
    Fol0Mor::new(
        ext,
        sig.clone(),
        sig.sorts().iter().map(|s| (s.clone(), s.clone())).collect(),
        funcs,
        sig.preds().keys().map(|p| (p.clone(), p.clone())).collect(),
    )
}
