use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::util::Odometer;

/// A finite commutative ring on `0..size` with `0` as zero.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FiniteRing {
    name: String,
    size: usize,
    one: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
}

impl FiniteRing {
    /// Builds a ring from its tables, checking the commutative ring axioms.
    pub fn from_tables(name: &str, size: usize, one: usize, add: Vec<usize>, mul: Vec<usize>) -> Result<Self> {
        let r = FiniteRing { name: name.to_string(), size, one, add, mul };
        r.validate()?;
        Ok(r)
    }

    fn validate(&self) -> Result<()> {
        let n = self.size;
        let bad = |m: String| Err(Error::NotARing(format!("{}: {m}", self.name)));
        if n == 0 || self.add.len() != n * n || self.mul.len() != n * n || self.one >= n {
            return bad("table shape".into());
        }
        if self.add.iter().chain(&self.mul).any(|v| *v >= n) {
            return bad("table value out of range".into());
        }
        for a in 0..n {
            if self.add(a, 0) != a {
                return bad(format!("0 is not neutral for {a}"));
            }
            if self.mul(a, self.one) != a {
                return bad(format!("1 is not neutral for {a}"));
            }
            if !(0..n).any(|b| self.add(a, b) == 0) {
                return bad(format!("{a} has no additive inverse"));
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return bad(format!("not commutative at ({a}, {b})"));
                }
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c))
                        || self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
                        || self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c))
                    {
                        return bad(format!("associativity or distributivity fails at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// `ℤ/n`.
    pub fn zn(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::NotARing("Z0 is infinite".into()));
        }
        let add = Odometer::new(vec![n, n]).map(|v| (v[0] + v[1]) % n).collect();
        let mul = Odometer::new(vec![n, n]).map(|v| (v[0] * v[1]) % n).collect();
        Self::from_tables(&format!("Z{n}"), n, 1 % n, add, mul)
    }

    /// `a × b`, with `(i, j)` stored at `i·|b| + j`.
    pub fn product(a: &FiniteRing, b: &FiniteRing) -> Result<Self> {
        let (m, k) = (a.size, b.size);
        let n = m * k;
        let split = |x: usize| (x / k, x % k);
        let op = |f: &dyn Fn(&FiniteRing, usize, usize) -> usize, g: &dyn Fn(&FiniteRing, usize, usize) -> usize| {
            Odometer::new(vec![n, n])
                .map(|v| {
                    let ((a1, b1), (a2, b2)) = (split(v[0]), split(v[1]));
                    f(a, a1, a2) * k + g(b, b1, b2)
                })
                .collect::<Vec<_>>()
        };
        let add = op(&|r, x, y| r.add(x, y), &|r, x, y| r.add(x, y));
        let mul = op(&|r, x, y| r.mul(x, y), &|r, x, y| r.mul(x, y));
        Self::from_tables(&format!("{}x{}", a.name, b.name), n, a.one * k + b.one, add, mul)
    }

    /// `ℤ/p[t]/(f)` for a monic `f` given by its lower coefficients
    /// `f = t^d + c[d-1] t^(d-1) + … + c[0]`. Elements are coefficient vectors
    /// read as base-`p` numerals, constant term least significant.
    pub fn quotient(name: &str, p: usize, lower: &[usize]) -> Result<Self> {
        let d = lower.len();
        let n = p.pow(d as u32);
        let digits = |x: usize| (0..d).map(|i| (x / p.pow(i as u32)) % p).collect::<Vec<_>>();
        let number = |v: &[usize]| v.iter().enumerate().map(|(i, c)| c * p.pow(i as u32)).sum::<usize>();
        let add = Odometer::new(vec![n, n])
            .map(|v| {
                let (a, b) = (digits(v[0]), digits(v[1]));
                number(&a.iter().zip(&b).map(|(x, y)| (x + y) % p).collect::<Vec<_>>())
            })
            .collect();
        let mul = Odometer::new(vec![n, n])
            .map(|v| {
                let (a, b) = (digits(v[0]), digits(v[1]));
                let mut prod = vec![0usize; 2 * d];
                for (i, x) in a.iter().enumerate() {
                    for (j, y) in b.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for k in (d..2 * d).rev() {
                    let c = prod[k];
                    prod[k] = 0;
                    for (i, l) in lower.iter().enumerate() {
                        prod[k - d + i] = (prod[k - d + i] + p - (c * l) % p) % p;
                    }
                }
                number(&prod[..d])
            })
            .collect();
        Self::from_tables(name, n, if n == 1 { 0 } else { 1 }, add, mul)
    }

    /// Every commutative ring of order at most `max_order` (at most 7), one per
    /// isomorphism class.
    pub fn catalog(max_order: usize) -> Vec<Arc<FiniteRing>> {
        let mut out = Vec::new();
        for n in 1..=max_order.min(CATALOG_COMPLETE_UP_TO) {
            out.push(Self::zn(n).expect("Z/n"));
            if n == 4 {
                let z2 = Self::zn(2).expect("Z2");
                out.push(Self::product(&z2, &z2).expect("Z2xZ2"));
                out.push(Self::quotient("F4", 2, &[1, 1]).expect("F4"));
                out.push(Self::quotient("Z2[e]", 2, &[0, 0]).expect("dual numbers"));
            }
        }
        out.into_iter().map(Arc::new).collect()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b]
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.size).find(|b| self.add(a, *b) == 0).expect("additive inverse")
    }

    pub fn pow(&self, a: usize, e: u32) -> usize {
        (0..e).fold(self.one, |acc, _| self.mul(acc, a))
    }

    /// The image of the integer `k` under `ℤ → R`.
    pub fn from_int(&self, k: i64) -> usize {
        let m = (0..k.unsigned_abs()).fold(0, |acc, _| self.add(acc, self.one));
        if k < 0 {
            self.neg(m)
        } else {
            m
        }
    }

    /// The least `k ≥ 0` with `k·1 = a`, if any.
    pub fn as_int(&self, a: usize) -> Option<usize> {
        let mut acc = 0;
        for k in 0..self.size {
            if acc == a {
                return Some(k);
            }
            acc = self.add(acc, self.one);
        }
        None
    }

    pub fn canonical(&self) -> String {
        format!("{} {} {} {:?} {:?}", self.name, self.size, self.one, self.add, self.mul)
    }

    /// All ring homomorphisms `self → other`, as tables.
    pub fn homomorphisms(&self, other: &FiniteRing) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut f = vec![usize::MAX; self.size];
        self.extend_hom(other, &mut f, 0, &mut out);
        out
    }

    fn extend_hom(&self, other: &FiniteRing, f: &mut Vec<usize>, next: usize, out: &mut Vec<Vec<usize>>) {
        if next == self.size {
            out.push(f.clone());
            return;
        }
        let choices: Vec<usize> = if next == 0 {
            vec![0]
        } else if next == self.one {
            vec![other.one]
        } else {
            (0..other.size).collect()
        };
        if next == self.one && next == 0 && other.one != 0 {
            return;
        }
        for v in choices {
            f[next] = v;
            let consistent = (0..=next).all(|a| {
                let checks = [(self.add(a, next), other.add(f[a], v)), (self.mul(a, next), other.mul(f[a], v))];
                checks.iter().all(|(r, img)| f[*r] == usize::MAX || f[*r] == *img)
            });
            if consistent {
                self.extend_hom(other, f, next + 1, out);
            }
        }
        f[next] = usize::MAX;
    }
}

/// Orders up to which [`FiniteRing::catalog`] lists every commutative ring.
pub const CATALOG_COMPLETE_UP_TO: usize = 7;

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_rings_satisfy_the_axioms() {
        let cat = FiniteRing::catalog(7);
        assert_eq!(cat.len(), 10);
        for r in &cat {
            r.validate().unwrap();
        }
    }

    #[test]
    fn homomorphism_counts() {
        let z6 = FiniteRing::zn(6).unwrap();
        let z2 = FiniteRing::zn(2).unwrap();
        let z3 = FiniteRing::zn(3).unwrap();
        assert_eq!(z6.homomorphisms(&z2).len(), 1);
        assert_eq!(z6.homomorphisms(&z3).len(), 1);
        assert_eq!(z2.homomorphisms(&z3).len(), 0);
        let z2z3 = FiniteRing::product(&z2, &z3).unwrap();
        assert_eq!(z6.homomorphisms(&z2z3).len(), 1);
        let z2z2 = FiniteRing::product(&z2, &z2).unwrap();
        assert_eq!(z2z2.homomorphisms(&z2).len(), 2);
        let f4 = FiniteRing::quotient("F4", 2, &[1, 1]).unwrap();
        assert_eq!(f4.homomorphisms(&f4).len(), 2);
    }

    #[test]
    fn non_ring_tables_are_rejected() {
        let add = vec![0, 1, 1, 0];
        let mul = vec![0, 0, 0, 0];
        assert!(matches!(FiniteRing::from_tables("bad", 2, 1, add, mul), Err(Error::NotARing(_))));
    }
}
