//! Rational functions `C·u^E·∏(u − r)^m` on `P¹` over an exact or p-adic
//! field, and their tame symbols.

use std::fmt;

use crate::padic::PAdicElement;

use super::K2Error;

/// Field operations the tame-symbol engine needs.
pub trait Scalar: Clone + fmt::Debug {
    fn one_like(&self) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    /// `None` for zero.
    fn recip(&self) -> Option<Self>;
    fn vanishes(&self) -> bool;
    fn same(&self, other: &Self) -> bool {
        self.minus(other).vanishes()
    }

    fn power(&self, k: i64) -> Option<Self> {
        let base = if k < 0 { self.recip()? } else { self.clone() };
        let mut acc = self.one_like();
        let mut b = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&b);
            }
            b = b.times(&b);
            e >>= 1;
        }
        Some(acc)
    }
}

impl Scalar for PAdicElement {
    fn one_like(&self) -> Self {
        PAdicElement::one(self.field())
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn recip(&self) -> Option<Self> {
        self.inverse().ok()
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn power(&self, k: i64) -> Option<Self> {
        self.pow(k).ok()
    }
}

/// A place of `P¹`.
#[derive(Clone, Debug)]
pub enum Place<F> {
    Finite(F),
    Infinity,
}

/// `constant · u^{u_power} · ∏(u − root)^{multiplicity}` with nonzero, pairwise distinct roots.
#[derive(Clone, Debug)]
pub struct RationalFunction<F> {
    pub constant: F,
    pub u_power: i64,
    pub roots: Vec<(F, i64)>,
}

impl<F: Scalar> RationalFunction<F> {
    pub fn new(constant: F, u_power: i64, roots: Vec<(F, i64)>) -> Self {
        let mut f = RationalFunction { constant, u_power, roots: Vec::new() };
        for (r, m) in roots {
            f.push_root(r, m);
        }
        f.roots.retain(|(_, m)| *m != 0);
        f
    }

    fn push_root(&mut self, r: F, m: i64) {
        if r.vanishes() {
            self.u_power += m;
        } else if let Some(entry) = self.roots.iter_mut().find(|(x, _)| x.same(&r)) {
            entry.1 += m;
        } else {
            self.roots.push((r, m));
        }
    }

    pub fn constant_function(c: F) -> Self {
        Self::new(c, 0, Vec::new())
    }

    /// `u − r`.
    pub fn linear(r: F) -> Self {
        let one = r.one_like();
        Self::new(one, 0, vec![(r, 1)])
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = RationalFunction {
            constant: self.constant.times(&other.constant),
            u_power: self.u_power + other.u_power,
            roots: self.roots.clone(),
        };
        for (r, m) in &other.roots {
            out.push_root(r.clone(), *m);
        }
        out.roots.retain(|(_, m)| *m != 0);
        out
    }

    pub fn pow(&self, k: i64) -> Result<Self, K2Error> {
        Ok(RationalFunction {
            constant: self.constant.power(k).ok_or(K2Error::ZeroConstant)?,
            u_power: self.u_power * k,
            roots: self.roots.iter().map(|(r, m)| (r.clone(), m * k)).filter(|(_, m)| *m != 0).collect(),
        })
    }

    pub fn degree(&self) -> i64 {
        self.u_power + self.roots.iter().map(|(_, m)| m).sum::<i64>()
    }

    pub fn order_at(&self, place: &Place<F>) -> i64 {
        match place {
            Place::Infinity => -self.degree(),
            Place::Finite(x) if x.vanishes() => self.u_power,
            Place::Finite(x) => self.roots.iter().find(|(r, _)| r.same(x)).map_or(0, |(_, m)| *m),
        }
    }

    /// Leading coefficient in the local parameter `u − x`, `u`, or `1/u`.
    pub fn leading_at(&self, place: &Place<F>) -> Result<F, K2Error> {
        let x = match place {
            Place::Infinity => return Ok(self.constant.clone()),
            Place::Finite(x) => x,
        };
        let at_zero = x.vanishes();
        let mut acc = self.constant.clone();
        if !at_zero {
            acc = acc.times(&x.power(self.u_power).ok_or(K2Error::ZeroConstant)?);
        }
        for (r, m) in &self.roots {
            if !at_zero && r.same(x) {
                continue;
            }
            let d = x.minus(r);
            acc = acc.times(&d.power(*m).ok_or(K2Error::Degenerate)?);
        }
        Ok(acc)
    }

    pub fn eval(&self, x: &F) -> Result<F, K2Error> {
        let p = Place::Finite(x.clone());
        match self.order_at(&p) {
            0 => self.leading_at(&p),
            _ => Err(K2Error::Degenerate),
        }
    }

    /// `0`, `∞`, and every root, each once.
    pub fn places(&self) -> Vec<Place<F>> {
        let zero = self.constant.minus(&self.constant);
        let mut out = vec![Place::Finite(zero), Place::Infinity];
        out.extend(self.roots.iter().map(|(r, _)| Place::Finite(r.clone())));
        out
    }
}

/// `τ_x{f, g} = (−1)^{ab} f̃^b / g̃^a` with `a = ord_x f`, `b = ord_x g`.
pub fn tame_symbol_p1<F: Scalar>(
    f: &RationalFunction<F>,
    g: &RationalFunction<F>,
    place: &Place<F>,
) -> Result<F, K2Error> {
    let a = f.order_at(place);
    let b = g.order_at(place);
    let fl = f.leading_at(place)?;
    let gl = g.leading_at(place)?;
    let mut v = fl.power(b).ok_or(K2Error::Degenerate)?.times(&gl.power(-a).ok_or(K2Error::Degenerate)?);
    if (a * b).rem_euclid(2) == 1 {
        v = v.negated();
    }
    Ok(v)
}

/// All places where `f` or `g` has a zero or pole, plus `0` and `∞`.
pub fn joint_places<F: Scalar>(f: &RationalFunction<F>, g: &RationalFunction<F>) -> Vec<Place<F>> {
    let mut out = f.places();
    for (r, _) in &g.roots {
        if !f.roots.iter().any(|(x, _)| x.same(r)) {
            out.push(Place::Finite(r.clone()));
        }
    }
    out
}

/// `∏_x τ_x{f, g}` over all places, which Weil reciprocity forces to be 1.
pub fn weil_product<F: Scalar>(f: &RationalFunction<F>, g: &RationalFunction<F>) -> Result<F, K2Error> {
    let mut acc = f.constant.one_like();
    for p in joint_places(f, g) {
        acc = acc.times(&tame_symbol_p1(f, g, &p)?);
    }
    Ok(acc)
}

pub fn weil_reciprocity_check<F: Scalar>(f: &RationalFunction<F>, g: &RationalFunction<F>) -> Result<bool, K2Error> {
    let prod = weil_product(f, g)?;
    Ok(prod.same(&prod.one_like()))
}
