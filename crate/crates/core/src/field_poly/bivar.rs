use std::collections::BTreeMap;
use std::fmt;

use super::poly::Poly;
use super::scalar::Field;

/// A formal polynomial `P(X, Y)`; `terms[(i, j)]` is the coefficient of `X^i Y^j`.
///
/// Used for membership certificates: `P(f, g) = u` exhibits `u ∈ k[f, g]`.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct BivarExpr<F: Field> {
    terms: BTreeMap<(u32, u32), F>,
}

impl<F: Field> Default for BivarExpr<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> BivarExpr<F> {
    pub fn zero() -> Self {
        BivarExpr { terms: BTreeMap::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(F::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(F::one(), 0, 1)
    }

    pub fn monomial(c: F, i: u32, j: u32) -> Self {
        let mut e = Self::zero();
        e.add_term(i, j, c);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u32, u32, F)>) -> Self {
        let mut e = Self::zero();
        for (i, j, c) in terms {
            e.add_term(i, j, c);
        }
        e
    }

    /// Adds `c * X^i Y^j` in place.
    pub fn add_term(&mut self, i: u32, j: u32, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((i, j)) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Terms in increasing `(i, j)` order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &F)> + '_ {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn coeff(&self, i: u32, j: u32) -> F {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(F::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        BivarExpr { terms: self.terms.iter().map(|(&k, c)| (k, c.neg())).collect() }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BivarExpr { terms: self.terms.iter().map(|(&k, a)| (k, a.mul(c))).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (&(i1, j1), a) in &self.terms {
            for (&(i2, j2), b) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, a.mul(b));
            }
        }
        out
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(F::one());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exchanges the roles of `X` and `Y`.
    pub fn swap_xy(&self) -> Self {
        BivarExpr { terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect() }
    }

    /// Largest `i * wx + j * wy` over the terms, `None` for the zero expression.
    pub fn weighted_degree(&self, wx: usize, wy: usize) -> Option<usize> {
        self.terms.keys().map(|&(i, j)| i as usize * wx + j as usize * wy).max()
    }

    /// Substitutes `X ↦ f`, `Y ↦ g` and expands.
    pub fn eval(&self, f: &Poly<F>, g: &Poly<F>) -> Poly<F> {
        let Some(max_j) = self.terms.keys().map(|&(_, j)| j).max() else {
            return Poly::zero();
        };
        // group into coefficients Q_j(X) over shared powers of f, then Horner in Y
        let max_i = self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0);
        let mut powers = vec![Poly::one()];
        for _ in 0..max_i {
            let next = powers.last().unwrap() * f;
            powers.push(next);
        }
        let mut columns: Vec<Vec<(u32, &F)>> = vec![Vec::new(); max_j as usize + 1];
        for (&(i, j), c) in &self.terms {
            columns[j as usize].push((i, c));
        }
        let mut acc = Poly::zero();
        for col in columns.iter().rev() {
            acc = &acc * g;
            for &(i, c) in col {
                acc = &acc + &powers[i as usize].scale(c);
            }
        }
        acc
    }

    /// Renders with the given variable names, highest total degree first.
    pub fn render(&self, xv: &str, yv: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(i, j)| std::cmp::Reverse((i + j, i)));
        let mut out = String::new();
        for (i, j) in keys {
            let text = self.terms[&(i, j)].to_string();
            let simple = text
                .trim_start_matches('-')
                .chars()
                .all(|c| c.is_ascii_digit() || c == '/');
            let (negative, body) = match text.strip_prefix('-') {
                Some(rest) if simple => (true, rest.to_string()),
                _ if simple => (false, text.clone()),
                _ => (false, format!("({text})")),
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            for (v, e) in [(xv, i), (yv, j)] {
                match e {
                    0 => {}
                    1 => factors.push(v.to_string()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            if factors.is_empty() {
                out.push_str(&body);
            } else {
                if body != "1" {
                    out.push_str(&body);
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

/// `P(f, g)`.
pub fn eval_bivariate<F: Field>(p: &BivarExpr<F>, f: &Poly<F>, g: &Poly<F>) -> Poly<F> {
    p.eval(f, g)
}

impl<F: Field> fmt::Display for BivarExpr<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("X", "Y"))
    }
}

impl<F: Field> fmt::Debug for BivarExpr<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivarExpr({})", self.render("X", "Y"))
    }
}
