//! Weighted-graded polynomials and the divided-power dualizing module.
//!
//! [`Polynomial`] is an element of `R = k[x_1, ..., x_n]`; [`DividedPolynomial`]
//! is an element of `D = k_DP[X_1, ..., X_n]`, stored in the divided-power
//! basis `X^[a] = X_1^[a_1] ... X_n^[a_n]` in every characteristic. `R` acts on
//! `D` by contraction, `x^a o X^[b] = X^[b - a]` (zero unless `b >= a`).
//!
//! Monomials are compared by weighted degree first and then reverse
//! lexicographically in the declared variable order, so within a degree the
//! canonical descending order for two standard variables is `x^2, xy, y^2`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// Ordered variable names with positive integer weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VariableTable {
    names: Vec<String>,
    weights: Vec<u32>,
}

impl VariableTable {
    pub fn new(vars: Vec<(String, u32)>) -> Result<Self> {
        let mut names = Vec::with_capacity(vars.len());
        let mut weights = Vec::with_capacity(vars.len());
        for (name, w) in vars {
            if !is_identifier(&name) {
                return Err(Error::InvalidTable(format!("bad variable name {name:?}")));
            }
            if w == 0 {
                return Err(Error::InvalidTable(format!("variable {name} has weight 0")));
            }
            if names.contains(&name) {
                return Err(Error::InvalidTable(format!("duplicate variable {name}")));
            }
            names.push(name);
            weights.push(w);
        }
        Ok(VariableTable { names, weights })
    }

    /// Standard grading: every variable has weight 1.
    pub fn standard<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        Self::new(names.iter().map(|n| (n.as_ref().to_string(), 1)).collect())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.weights[i]
    }

    pub fn max_weight(&self) -> u32 {
        self.weights.iter().copied().max().unwrap_or(1)
    }

    pub fn is_standard(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Name used for the dual variable of `x_i` when printing divided
    /// polynomials: the upper-cased ring name.
    pub fn dual_name(&self, i: usize) -> String {
        self.names[i].to_uppercase()
    }

    /// Resolves an identifier in a divided polynomial: an exact ring name wins,
    /// otherwise the unique variable whose upper-cased name matches.
    pub fn dual_index_of(&self, name: &str) -> Option<usize> {
        self.index_of(name).or_else(|| {
            let mut hits = (0..self.len()).filter(|&i| self.dual_name(i) == name);
            let first = hits.next()?;
            hits.next().is_none().then_some(first)
        })
    }

    /// A copy with one more variable appended.
    pub fn with_variable(&self, name: &str, weight: u32) -> Result<Self> {
        let mut vars: Vec<(String, u32)> = self
            .names
            .iter()
            .cloned()
            .zip(self.weights.iter().copied())
            .collect();
        vars.push((name.to_string(), weight));
        Self::new(vars)
    }

    /// A name based on `base` that is not yet in the table.
    pub fn fresh_name(&self, base: &str) -> String {
        if self.index_of(base).is_none() {
            return base.to_string();
        }
        (0..)
            .map(|i| format!("{base}{i}"))
            .find(|n| self.index_of(n).is_none())
            .expect("unbounded search")
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// An exponent vector together with its weighted degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>, table: &VariableTable) -> Self {
        assert_eq!(exponents.len(), table.len(), "exponent vector length");
        let degree = exponents
            .iter()
            .zip(table.weights())
            .map(|(e, w)| e * w)
            .sum();
        Monomial { exponents, degree }
    }

    pub fn one(table: &VariableTable) -> Self {
        Monomial {
            exponents: vec![0; table.len()],
            degree: 0,
        }
    }

    pub fn variable(i: usize, table: &VariableTable) -> Self {
        let mut e = vec![0; table.len()];
        e[i] = 1;
        Monomial::new(e, table)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
            degree: self.degree + other.degree,
        }
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = Vec::with_capacity(self.exponents.len());
        for (a, b) in self.exponents.iter().zip(&other.exponents) {
            e.push(a.checked_sub(*b)?);
        }
        Some(Monomial {
            exponents: e,
            degree: self.degree - other.degree,
        })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exponents
            .iter()
            .zip(&other.exponents)
            .all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            for (a, b) in self.exponents.iter().zip(&other.exponents).rev() {
                if a != b {
                    // smaller exponent in the last differing variable is larger
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of weighted degree exactly `d`, in descending canonical order.
pub fn monomials_of_degree(table: &VariableTable, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; table.len()];
    fill_monomials(table, 0, d, &mut exps, &mut out);
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn fill_monomials(
    table: &VariableTable,
    i: usize,
    remaining: u32,
    exps: &mut Vec<u32>,
    out: &mut Vec<Monomial>,
) {
    if i == table.len() {
        if remaining == 0 {
            out.push(Monomial::new(exps.clone(), table));
        }
        return;
    }
    let w = table.weight(i);
    for e in 0..=remaining / w {
        exps[i] = e;
        fill_monomials(table, i + 1, remaining - e * w, exps, out);
    }
    exps[i] = 0;
}

/// Marker for ordinary polynomials in `R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ring;
/// Marker for divided-power polynomials in `D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Divided;

/// A finite linear combination of monomials; the kind marker decides whether
/// monomials denote ordinary or divided powers.
pub struct Poly<K> {
    table: Arc<VariableTable>,
    field: Field,
    terms: BTreeMap<Monomial, Scalar>,
    _kind: PhantomData<K>,
}

pub type Polynomial = Poly<Ring>;
pub type DividedPolynomial = Poly<Divided>;

impl<K> Clone for Poly<K> {
    fn clone(&self) -> Self {
        Poly {
            table: self.table.clone(),
            field: self.field,
            terms: self.terms.clone(),
            _kind: PhantomData,
        }
    }
}

impl<K> PartialEq for Poly<K> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && *self.table == *other.table && self.terms == other.terms
    }
}

impl<K> Eq for Poly<K> {}

impl<K> fmt::Debug for Poly<K>
where
    Poly<K>: fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl<K> Poly<K> {
    pub fn zero(table: Arc<VariableTable>, field: Field) -> Self {
        Poly {
            table,
            field,
            terms: BTreeMap::new(),
            _kind: PhantomData,
        }
    }

    pub fn constant(table: Arc<VariableTable>, c: Scalar) -> Self {
        let m = Monomial::one(&table);
        Self::monomial(table, m, c)
    }

    pub fn one(table: Arc<VariableTable>, field: Field) -> Self {
        Self::constant(table, field.one())
    }

    pub fn monomial(table: Arc<VariableTable>, m: Monomial, c: Scalar) -> Self {
        let field = c.field();
        let mut p = Self::zero(table, field);
        p.add_term(m, c);
        p
    }

    pub fn variable(table: Arc<VariableTable>, field: Field, i: usize) -> Self {
        let m = Monomial::variable(i, &table);
        Self::monomial(table, m, field.one())
    }

    pub fn from_terms(
        table: Arc<VariableTable>,
        field: Field,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Self {
        let mut p = Self::zero(table, field);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn table(&self) -> &Arc<VariableTable> {
        &self.table
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Adds `c * m`, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Weighted degree of the largest term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// The common degree of all terms; `None` for zero or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// The homogeneous component of degree `d`.
    pub fn component(&self, d: u32) -> Self {
        Self::from_terms(
            self.table.clone(),
            self.field,
            self.terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    pub fn compatible(&self, other: &Poly<impl Sized>) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if !Arc::ptr_eq(&self.table, &other.table) && *self.table != *other.table {
            return Err(Error::TableMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coefficients(|c| -c)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero(self.table.clone(), self.field);
        }
        self.map_coefficients(|c| c * s)
    }

    fn map_coefficients(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        Self::from_terms(
            self.table.clone(),
            self.field,
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))),
        )
    }

    /// Re-express in `target`, sending variable `i` to `index_map[i]`.
    pub fn embed(&self, target: Arc<VariableTable>, index_map: &[usize]) -> Result<Self> {
        let mut out = Self::zero(target.clone(), self.field);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &x) in m.exponents().iter().enumerate() {
                e[index_map[i]] += x;
            }
            let nm = Monomial::new(e, &target);
            if nm.degree() != m.degree() {
                return Err(Error::DegreeMismatch(
                    "embedding changes variable weights".into(),
                ));
            }
            out.add_term(nm, c.clone());
        }
        Ok(out)
    }

    /// Embed into `target` matching variables by name.
    pub fn embed_by_name(&self, target: Arc<VariableTable>) -> Result<Self> {
        let map = self
            .table
            .names()
            .iter()
            .map(|n| {
                target
                    .index_of(n)
                    .ok_or_else(|| Error::InvalidTable(format!("variable {n} missing from target")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.embed(target, &map)
    }
}

impl Polynomial {
    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.compatible(other)?;
        let mut out = Polynomial::zero(self.table.clone(), self.field);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial::from_terms(
            self.table.clone(),
            self.field,
            self.terms.iter().map(|(n, c)| (n.mul(m), c.clone())),
        )
    }

    pub fn pow(&self, e: u32) -> Result<Polynomial> {
        let mut acc = Polynomial::one(self.table.clone(), self.field);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Substitute `images[i]` for `x_i`; every image lives over `target`.
    pub fn substitute(&self, target: &Arc<VariableTable>, images: &[Polynomial]) -> Result<Polynomial> {
        assert_eq!(images.len(), self.table.len(), "one image per variable");
        for p in images {
            if p.field != self.field {
                return Err(Error::FieldMismatch);
            }
            if *p.table != **target {
                return Err(Error::TableMismatch);
            }
        }
        let target = target.clone();
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(target.clone(), self.field), p.clone()])
            .collect();
        let mut out = Polynomial::zero(target.clone(), self.field);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target.clone(), c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i])?;
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][e as usize])?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }
}

/// Contraction `f o F`: bilinear extension of `x^a o X^[b] = X^[b-a]`.
pub fn contract(f: &Polynomial, dual: &DividedPolynomial) -> Result<DividedPolynomial> {
    f.compatible(dual)?;
    let mut out = DividedPolynomial::zero(dual.table.clone(), dual.field);
    for (a, c) in &f.terms {
        for (b, d) in &dual.terms {
            if let Some(q) = b.checked_div(a) {
                out.add_term(q, c * d);
            }
        }
    }
    Ok(out)
}

/// Contraction by a single monomial with unit coefficient.
pub fn contract_monomial(a: &Monomial, dual: &DividedPolynomial) -> DividedPolynomial {
    DividedPolynomial::from_terms(
        dual.table.clone(),
        dual.field,
        dual.terms
            .iter()
            .filter_map(|(b, d)| b.checked_div(a).map(|q| (q, d.clone()))),
    )
}

/// Binomial coefficient `C(n, k)` reduced in `field`, by Pascal's rule.
pub fn binomial(field: Field, n: u32, k: u32) -> Scalar {
    if k > n {
        return field.zero();
    }
    let k = k.min(n - k) as usize;
    let mut row = vec![field.zero(); k + 1];
    row[0] = field.one();
    for i in 1..=n as usize {
        for j in (1..=k.min(i)).rev() {
            row[j] = &row[j] + &row[j - 1];
        }
    }
    row[k].clone()
}

/// Divided-power product: `X^[a] X^[b] = C(a+b, a) X^[a+b]` per variable.
pub fn dp_multiply(f: &DividedPolynomial, g: &DividedPolynomial) -> Result<DividedPolynomial> {
    f.compatible(g)?;
    let field = f.field;
    let mut out = DividedPolynomial::zero(f.table.clone(), field);
    for (a, c) in &f.terms {
        for (b, d) in &g.terms {
            let mut coeff = c * d;
            for (&x, &y) in a.exponents().iter().zip(b.exponents()) {
                if x > 0 && y > 0 {
                    coeff = &coeff * &binomial(field, x + y, x);
                }
            }
            out.add_term(a.mul(b), coeff);
        }
    }
    Ok(out)
}

fn write_poly(
    f: &mut fmt::Formatter<'_>,
    terms: &BTreeMap<Monomial, Scalar>,
    mut factor: impl FnMut(usize, u32) -> String,
) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (n, (m, c)) in terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        let abs = if neg { -c } else { c.clone() };
        if n == 0 {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        let factors: Vec<String> = m
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| factor(i, e))
            .collect();
        if factors.is_empty() {
            write!(f, "{abs}")?;
        } else {
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            write!(f, "{}", factors.join("*"))?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let table = self.table.clone();
        write_poly(f, &self.terms, |i, e| {
            if e == 1 {
                table.name(i).to_string()
            } else {
                format!("{}^{e}", table.name(i))
            }
        })
    }
}

impl fmt::Display for DividedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let table = self.table.clone();
        write_poly(f, &self.terms, |i, e| {
            if e == 1 {
                table.dual_name(i)
            } else {
                format!("{}^[{e}]", table.dual_name(i))
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_divided, parse_polynomial};

    fn table(names: &[&str]) -> Arc<VariableTable> {
        Arc::new(VariableTable::standard(names).unwrap())
    }

    #[test]
    fn difference_of_squares() {
        let t = table(&["x", "y"]);
        let q = Field::Rationals;
        let a = parse_polynomial("x+y", &t, q).unwrap();
        let b = parse_polynomial("x-y", &t, q).unwrap();
        assert_eq!(a.mul(&b).unwrap(), parse_polynomial("x^2-y^2", &t, q).unwrap());
        let zero = Polynomial::zero(t.clone(), q);
        assert!(a.mul(&zero).unwrap().is_zero());
    }

    #[test]
    fn freshmans_dream_mod_three() {
        let t = table(&["x", "y"]);
        let f = Field::prime(3).unwrap();
        let s = parse_polynomial("x+y", &t, f).unwrap();
        assert_eq!(s.pow(3).unwrap(), parse_polynomial("x^3+y^3", &t, f).unwrap());
    }

    #[test]
    fn mismatched_tables_are_rejected() {
        let q = Field::Rationals;
        let a = parse_polynomial("x", &table(&["x"]), q).unwrap();
        let b = parse_polynomial("y", &table(&["y"]), q).unwrap();
        assert!(matches!(a.mul(&b), Err(Error::TableMismatch)));
        let c = parse_polynomial("x", &table(&["x"]), Field::prime(5).unwrap()).unwrap();
        assert!(matches!(a.add(&c), Err(Error::FieldMismatch)));
    }

    #[test]
    fn canonical_monomial_order() {
        let t = table(&["x", "y"]);
        let ms: Vec<String> = monomials_of_degree(&t, 2)
            .into_iter()
            .map(|m| Polynomial::monomial(t.clone(), m, Field::Rationals.one()).to_string())
            .collect();
        assert_eq!(ms, ["x^2", "x*y", "y^2"]);
        assert_eq!(monomials_of_degree(&t, 0), vec![Monomial::one(&t)]);
    }

    #[test]
    fn weighted_monomials() {
        let t = Arc::new(VariableTable::new(vec![("b".into(), 2), ("c".into(), 1)]).unwrap());
        let ms: Vec<Vec<u32>> = monomials_of_degree(&t, 3)
            .into_iter()
            .map(|m| m.exponents().to_vec())
            .collect();
        // Enumeration oracle: all (i, j) with 2i + j = 3, largest first.
        assert_eq!(ms, vec![vec![1, 1], vec![0, 3]]);
    }

    #[test]
    fn contraction_examples() {
        let t = table(&["x", "y"]);
        let q = Field::Rationals;
        let x = parse_polynomial("x", &t, q).unwrap();
        let f3 = parse_divided("X^[3]", &t, q).unwrap();
        assert_eq!(contract(&x, &f3).unwrap(), parse_divided("X^[2]", &t, q).unwrap());
        let m = parse_polynomial("x^2*y", &t, q).unwrap();
        let g = parse_divided("X^[2]*Y", &t, q).unwrap();
        assert_eq!(contract(&m, &g).unwrap(), DividedPolynomial::one(t.clone(), q));
    }

    #[test]
    fn perazzo_generator_annihilates() {
        let t = table(&["x", "y", "z", "u", "v"]);
        let q = Field::Rationals;
        let fb = parse_divided("X*U^[2] + Y*U*V + Z*V^[2]", &t, q).unwrap();
        for g in ["u*y - v*z", "u*x - v*y", "u*z", "v*x", "x^2", "y*z"] {
            let g = parse_polynomial(g, &t, q).unwrap();
            assert!(contract(&g, &fb).unwrap().is_zero(), "{g}");
        }
    }

    #[test]
    fn divided_products() {
        let t = table(&["x", "t", "u"]);
        let q = Field::Rationals;
        let tt = parse_divided("T", &t, q).unwrap();
        let xu = parse_divided("X*U^[2]", &t, q).unwrap();
        assert_eq!(
            dp_multiply(&tt, &xu).unwrap(),
            parse_divided("T*X*U^[2]", &t, q).unwrap()
        );
        let x = parse_divided("X", &t, q).unwrap();
        assert_eq!(
            dp_multiply(&x, &x).unwrap(),
            parse_divided("2*X^[2]", &t, q).unwrap()
        );
        let f2 = Field::prime(2).unwrap();
        let x2 = parse_divided("X", &t, f2).unwrap();
        assert!(dp_multiply(&x2, &x2).unwrap().is_zero());
    }

    #[test]
    fn pascal_binomials() {
        assert_eq!(binomial(Field::Rationals, 6, 2), Field::Rationals.from_i64(15));
        assert!(binomial(Field::prime(5).unwrap(), 5, 2).is_zero());
        assert_eq!(binomial(Field::prime(7).unwrap(), 9, 3), Field::prime(7).unwrap().from_i64(84));
    }

    #[test]
    fn substitution() {
        let src = table(&["b", "c"]);
        let dst = table(&["x", "y", "z"]);
        let q = Field::Rationals;
        let f = parse_polynomial("b^3 - c^6", &src, q).unwrap();
        let images = [
            parse_polynomial("x*y", &dst, q).unwrap(),
            parse_polynomial("z", &dst, q).unwrap(),
        ];
        assert_eq!(
            f.substitute(&dst, &images).unwrap(),
            parse_polynomial("x^3*y^3 - z^6", &dst, q).unwrap()
        );
    }

    #[test]
    fn display_roundtrip_examples() {
        let t = table(&["x", "y"]);
        let q = Field::Rationals;
        let p = parse_polynomial("-3/2*x^2*y + x - 1", &t, q).unwrap();
        assert_eq!(p.to_string(), "-3/2*x^2*y + x - 1");
        let d = parse_divided("X^[2]*Y - 4*Y^[3]", &t, q).unwrap();
        assert_eq!(d.to_string(), "X^[2]*Y - 4*Y^[3]");
    }
}
