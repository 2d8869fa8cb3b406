//! Sparse multivariate polynomials over exact rationals.
//!
//! A [`Poly`] is a map from exponent vectors to nonzero rational
//! coefficients, tied to a hash-consed coordinate list ([`Coords`]). The term
//! order is graded lexicographic, which fixes the canonical printed form used
//! by the CLI: `"x13 - 1/2*x12*x23"`.

use crate::jet::Scalar;
use crate::rational::{fmt_rat, is_negative, one, Rat};
use crate::{Error, Result};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Shared, immutable coordinate list. Cloning is cheap; equality is pointer
/// equality with a content fallback, so identical lists built independently
/// still compare equal.
#[derive(Clone, Debug)]
pub struct Coords(Arc<Vec<String>>);

impl Coords {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Self {
        Coords(Arc::new(names.into_iter().map(Into::into).collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

impl PartialEq for Coords {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}
impl Eq for Coords {}

/// Exponent vector; length always equals the coordinate count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mono(pub Vec<u16>);

impl Mono {
    pub fn constant(n: usize) -> Self {
        Mono(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Mono(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn mul(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

/// Graded lexicographic: lower total degree first, then lexicographic on the
/// exponent vector. Ascending iteration over a `BTreeMap<Mono, _>` is the
/// canonical print order.
impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}
impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coords: Coords,
    terms: BTreeMap<Mono, Rat>,
}

impl Poly {
    pub fn zero(coords: &Coords) -> Self {
        Poly {
            coords: coords.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(coords: &Coords, c: Rat) -> Self {
        let mut p = Poly::zero(coords);
        if !c.is_zero() {
            p.terms.insert(Mono::constant(coords.len()), c);
        }
        p
    }

    pub fn one(coords: &Coords) -> Self {
        Poly::constant(coords, one())
    }

    pub fn var(coords: &Coords, i: usize) -> Self {
        assert!(i < coords.len(), "variable index out of range");
        let mut p = Poly::zero(coords);
        p.terms.insert(Mono::var(coords.len(), i), one());
        p
    }

    /// Variable by name; `None` if the name is not a coordinate.
    pub fn var_named(coords: &Coords, name: &str) -> Option<Poly> {
        coords.index_of(name).map(|i| Poly::var(coords, i))
    }

    pub fn coords(&self) -> &Coords {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().degree() == 0)
    }

    /// The constant term.
    pub fn constant_term(&self) -> Rat {
        self.terms
            .get(&Mono::constant(self.coords.len()))
            .cloned()
            .unwrap_or_else(crate::rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn check_coords(&self, o: &Poly) -> Result<()> {
        if self.coords != o.coords {
            return Err(Error::CoordMismatch(format!(
                "{:?} vs {:?}",
                self.coords.names(),
                o.coords.names()
            )));
        }
        Ok(())
    }

    pub fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        self.check_coords(o).expect("polynomial coordinate mismatch");
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> Poly {
        let mut r = self.clone();
        for c in r.terms.values_mut() {
            *c = -&*c;
        }
        r
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.coords);
        }
        let mut r = self.clone();
        for v in r.terms.values_mut() {
            *v = &*v * c;
        }
        r
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        self.check_coords(o).expect("polynomial coordinate mismatch");
        let mut r = Poly::zero(&self.coords);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                r.add_term(ma.mul(mb), ca * cb);
            }
        }
        r
    }

    /// ∂/∂x_i.
    pub fn diff(&self, i: usize) -> Poly {
        let mut r = Poly::zero(&self.coords);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] = e - 1;
            r.add_term(m2, c * Rat::from_integer((e as i64).into()));
        }
        r
    }

    /// Evaluate at a point over any scalar ring (rationals or jets).
    pub fn eval<T: Scalar>(&self, point: &[T]) -> T {
        assert_eq!(point.len(), self.coords.len());
        let mut acc = T::zero();
        for (m, c) in &self.terms {
            let mut t = T::from_rat(c);
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&point[i]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    pub fn eval_rat(&self, point: &[Rat]) -> Rat {
        self.eval(point)
    }

    /// Substitute each variable by a polynomial over a (possibly different)
    /// coordinate list. `images[i]` replaces variable `i`.
    pub fn substitute(&self, target: &Coords, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.coords.len());
        let mut acc = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&images[i]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Rebuild the same polynomial over a larger coordinate list via an index
    /// map `old index -> new index`.
    pub fn lift(&self, target: &Coords, index_map: &[usize]) -> Poly {
        let mut r = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u16; target.len()];
            for (i, &ei) in m.0.iter().enumerate() {
                e[index_map[i]] = ei;
            }
            r.add_term(Mono(e), c.clone());
        }
        r
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let neg = is_negative(c);
            let abs = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.coords.name(i).to_string()),
                    _ => factors.push(format!("{}^{}", self.coords.name(i), e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{}", fmt_rat(&abs))?;
            } else if abs == one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_rat(&abs), factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn xyz() -> Coords {
        Coords::new(vec!["x", "y", "z"])
    }

    #[test]
    fn arithmetic_and_display() {
        let c = xyz();
        let x = Poly::var(&c, 0);
        let y = Poly::var(&c, 1);
        let p = x.mul(&y).scale(&rat(-1, 2));
        let q = Poly::var(&c, 2);
        let s = q.add(&p);
        assert_eq!(format!("{}", s), "z - 1/2*x*y");
        assert_eq!(s.total_degree(), 2);
    }

    #[test]
    fn derivative() {
        let c = xyz();
        let x = Poly::var(&c, 0);
        let y = Poly::var(&c, 1);
        let p = x.mul(&x).mul(&y); // x^2 y
        assert_eq!(format!("{}", p.diff(0)), "2*x*y");
        assert_eq!(format!("{}", p.diff(1)), "x^2");
        assert!(p.diff(2).is_zero());
    }

    #[test]
    fn substitution() {
        let c = xyz();
        let t = Coords::new(vec!["u"]);
        let x = Poly::var(&c, 0);
        let p = x.mul(&x); // x^2
        let u = Poly::var(&t, 0);
        let img = vec![u.add(&Poly::one(&t)), Poly::zero(&t), Poly::zero(&t)];
        let q = p.substitute(&t, &img);
        assert_eq!(format!("{}", q), "1 + 2*u + u^2");
    }

    #[test]
    fn eval_exact() {
        let c = xyz();
        let x = Poly::var(&c, 0);
        let y = Poly::var(&c, 1);
        let p = x.mul(&y).add(&Poly::constant(&c, rat(1, 3)));
        let v = p.eval_rat(&[rat(1, 2), rat(2, 3), int(0)]);
        assert_eq!(v, rat(2, 3));
    }
}
