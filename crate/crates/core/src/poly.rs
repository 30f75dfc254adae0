//! Sparse multivariate polynomials over an exact scalar type.
//!
//! `Poly<C, K>` maps exponent vectors `[u32; K]` to nonzero coefficients.
//! The scalar type only needs the `Scalar` bundle (ring operations, sign and
//! display); the crate root instantiates it at big integers and big rationals.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{FromPrimitive, Signed};

use crate::error::{Error, Result};

/// Coefficient requirements for all polynomial and exterior arithmetic.
pub trait Scalar: Clone + Signed + FromPrimitive + PartialEq + fmt::Display {}

impl<T: Clone + Signed + FromPrimitive + PartialEq + fmt::Display> Scalar for T {}

pub fn scalar_i64<C: Scalar>(v: i64) -> C {
    C::from_i64(v).expect("small integer must embed into the scalar type")
}

pub fn scalar_pow<C: Scalar>(base: &C, exp: usize) -> C {
    let mut acc = C::one();
    for _ in 0..exp {
        acc = acc * base.clone();
    }
    acc
}

pub fn factorial<C: Scalar>(k: usize) -> C {
    let mut acc = C::one();
    for i in 1..=k {
        acc = acc * scalar_i64::<C>(i as i64);
    }
    acc
}

#[derive(Clone, PartialEq, Eq)]
pub struct Poly<C, const K: usize> {
    terms: BTreeMap<[u32; K], C>,
}

pub type UniPoly<C> = Poly<C, 1>;
pub type BiPoly<C> = Poly<C, 2>;
pub type QuadPoly<C> = Poly<C, 4>;

impl<C: Scalar, const K: usize> Default for Poly<C, K> {
    fn default() -> Self {
        Poly::zero()
    }
}

impl<C: Scalar, const K: usize> Poly<C, K> {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Poly::monomial([0; K], C::one())
    }

    pub fn constant(c: C) -> Self {
        Poly::monomial([0; K], c)
    }

    pub fn monomial(exps: [u32; K], coeff: C) -> Self {
        let mut p = Poly::zero();
        p.add_term(exps, coeff);
        p
    }

    /// The variable with index `var` (zero-based) as a polynomial.
    pub fn var(var: usize) -> Self {
        assert!(var < K);
        let mut exps = [0u32; K];
        exps[var] = 1;
        Poly::monomial(exps, C::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: [u32; K], coeff: C) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn coeff(&self, exps: [u32; K]) -> C {
        self.terms.get(&exps).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; K], &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, -c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Poly::zero();
        }
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, c.clone() * s.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Poly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut e = *ea;
                for i in 0..K {
                    e[i] += eb[i];
                }
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn pow(&self, exp: usize) -> Self {
        let mut acc = Poly::one();
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, point: &[C; K]) -> C {
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for i in 0..K {
                term = term * scalar_pow(&point[i], e[i] as usize);
            }
            acc = acc + term;
        }
        acc
    }

    /// Substitutes `args[i]` for variable `i`; general polynomial composition.
    pub fn compose<const M: usize>(&self, args: &[Poly<C, M>; K]) -> Poly<C, M> {
        let mut max_deg = [0u32; K];
        for e in self.terms.keys() {
            for i in 0..K {
                max_deg[i] = max_deg[i].max(e[i]);
            }
        }
        // powers[i][d] = args[i]^d
        let mut powers: Vec<Vec<Poly<C, M>>> = Vec::with_capacity(K);
        for i in 0..K {
            let mut row = Vec::with_capacity(max_deg[i] as usize + 1);
            row.push(Poly::<C, M>::one());
            for d in 1..=max_deg[i] as usize {
                let next = row[d - 1].mul(&args[i]);
                row.push(next);
            }
            powers.push(row);
        }
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let mut term = Poly::<C, M>::constant(c.clone());
            for i in 0..K {
                if e[i] > 0 {
                    term = term.mul(&powers[i][e[i] as usize]);
                }
            }
            out = out.add(&term);
        }
        out
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Poly<D, K> {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, f(c));
        }
        out
    }

    /// Text form with the given variable names: terms in descending
    /// exponent order (first variable weighs heaviest), explicit signs,
    /// unit coefficients omitted next to a variable.
    pub fn to_text(&self, vars: [&str; K]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let has_var = e.iter().any(|&d| d > 0);
            if !has_var || !abs.is_one() {
                out.push_str(&abs.to_string());
            }
            for i in 0..K {
                match e[i] {
                    0 => {}
                    1 => out.push_str(vars[i]),
                    d => out.push_str(&format!("{}^{}", vars[i], d)),
                }
            }
        }
        out
    }
}

impl<C: Scalar> UniPoly<C> {
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|e| e[0])
    }

    pub fn coeff_deg(&self, d: u32) -> C {
        self.coeff([d])
    }

    pub fn eval_at(&self, x: &C) -> C {
        self.eval(&[x.clone()])
    }

    /// `c - x` for constant `c` (handy for substitutions like `1 - λ`).
    pub fn const_minus_var(c: i64) -> Self {
        let mut p = UniPoly::monomial([1], -C::one());
        p.add_term([0], scalar_i64(c));
        p
    }
}

impl<C: Scalar> BiPoly<C> {
    pub fn coeff_xy(&self, dx: u32, dy: u32) -> C {
        self.coeff([dx, dy])
    }

    /// `P(x + a, y + b)`, by binomial expansion through composition.
    pub fn shift_vars(&self, a: i64, b: i64) -> Self {
        let mut x_shift = BiPoly::var(0);
        x_shift.add_term([0, 0], scalar_i64(a));
        let mut y_shift = BiPoly::var(1);
        y_shift.add_term([0, 0], scalar_i64(b));
        self.compose(&[x_shift, y_shift])
    }

    pub fn eval_at(&self, x: &C, y: &C) -> C {
        self.eval(&[x.clone(), y.clone()])
    }
}

impl<C: Scalar, const K: usize> fmt::Debug for Poly<C, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..K).map(|i| format!("x{i}")).collect();
        let mut arr: [&str; K] = [""; K];
        for i in 0..K {
            arr[i] = &names[i];
        }
        write!(f, "{}", self.to_text(arr))
    }
}

/// Converts a rational-coefficient polynomial to integer coefficients,
/// failing if any coefficient has a nontrivial denominator.
pub fn rational_to_integer<const K: usize>(
    p: &Poly<crate::Rat, K>,
    what: &'static str,
) -> Result<Poly<crate::Int, K>> {
    let mut out = Poly::zero();
    for (e, c) in p.terms() {
        if !c.is_integer() {
            return Err(Error::NonIntegerCoefficients(what));
        }
        out.add_term(*e, c.to_integer());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Int, Rat};

    fn int(v: i64) -> Int {
        Int::from(v)
    }

    #[test]
    fn arithmetic_and_normalization() {
        let x: UniPoly<Int> = UniPoly::var(0);
        let p = x.mul(&x).sub(&x.scale(&int(2))); // x^2 - 2x
        assert_eq!(p.coeff_deg(2), int(1));
        assert_eq!(p.coeff_deg(1), int(-2));
        let q = p.sub(&p);
        assert!(q.is_zero());
        assert_eq!(q.num_terms(), 0);
    }

    #[test]
    fn display_matches_convention() {
        // λ^3 - 6λ^2 + 11λ - 6 printed exactly in descending degree.
        let mut p: UniPoly<Int> = UniPoly::zero();
        p.add_term([3], int(1));
        p.add_term([2], int(-6));
        p.add_term([1], int(11));
        p.add_term([0], int(-6));
        assert_eq!(p.to_text(["λ"]), "λ^3 - 6λ^2 + 11λ - 6");

        let mut t: BiPoly<Int> = BiPoly::zero();
        for (e, c) in [
            ([3, 0], 1),
            ([2, 0], 3),
            ([1, 1], 4),
            ([1, 0], 2),
            ([0, 3], 1),
            ([0, 2], 3),
            ([0, 1], 2),
        ] {
            t.add_term(e, int(c));
        }
        assert_eq!(
            t.to_text(["x", "y"]),
            "x^3 + 3x^2 + 4xy + 2x + y^3 + 3y^2 + 2y"
        );
        assert_eq!(BiPoly::<Int>::zero().to_text(["x", "y"]), "0");
    }

    #[test]
    fn composition_substitutes_polynomials() {
        // T(x, y) = x^2 + y; T(1-λ, 0) = (1-λ)^2 = λ^2 - 2λ + 1
        let mut t: BiPoly<Int> = BiPoly::zero();
        t.add_term([2, 0], int(1));
        t.add_term([0, 1], int(1));
        let sub = t.compose(&[UniPoly::const_minus_var(1), UniPoly::zero()]);
        assert_eq!(sub.coeff_deg(2), int(1));
        assert_eq!(sub.coeff_deg(1), int(-2));
        assert_eq!(sub.coeff_deg(0), int(1));
    }

    #[test]
    fn shift_recovers_binomial_expansion() {
        // (x+1)^2 (y-1) expanded from x^2 y via shift
        let p: BiPoly<Int> = BiPoly::monomial([2, 1], int(1));
        let s = p.shift_vars(1, -1);
        assert_eq!(s.coeff_xy(2, 1), int(1));
        assert_eq!(s.coeff_xy(2, 0), int(-1));
        assert_eq!(s.coeff_xy(0, 1), int(1));
        assert_eq!(s.coeff_xy(0, 0), int(-1));
        assert_eq!(s.coeff_xy(1, 1), int(2));
    }

    #[test]
    fn rational_evaluation_is_exact() {
        let mut p: UniPoly<Rat> = UniPoly::zero();
        p.add_term([1], Rat::new(int(1), int(2)));
        p.add_term([0], Rat::new(int(1), int(3)));
        let v = p.eval_at(&Rat::new(int(2), int(3)));
        assert_eq!(v, Rat::new(int(2), int(3))); // 1/2 * 2/3 + 1/3 = 2/3
    }

    #[test]
    fn integerization_detects_fractions() {
        let mut p: UniPoly<Rat> = UniPoly::zero();
        p.add_term([0], Rat::new(int(1), int(2)));
        assert!(rational_to_integer(&p, "test").is_err());
        let q: UniPoly<Rat> = UniPoly::constant(Rat::from_integer(int(7)));
        let z = rational_to_integer(&q, "test").unwrap();
        assert_eq!(z.coeff_deg(0), int(7));
    }
}
