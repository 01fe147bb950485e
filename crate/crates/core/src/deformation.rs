//! One-parameter deformation of a free extension to its tensor product.
//!
//! Given a free extension `A -> C -> B`, a Jordan basis `{l_B^i z_j}` of `B`
//! and preimages `Lambda` of `l_B` and `v_j` of `z_j`, the products
//! `iota(a) Lambda^i v_j` (`a` over the standard basis of `A`) form a basis of
//! `C`. In that basis:
//!
//! * `psi_t(a Lambda^i v_j) = t^{deg a} a Lambda^i v_j`,
//! * `Psi_t(a Lambda^i v_j) = a psi_t(Lambda^{i+1} v_j)`,
//! * `L_t = x iota(l_A) + Psi_t`,
//! * `chi_t(a Lambda^i v_j) = t^{deg(Lambda^i v_j)} a Lambda^i v_j`,
//! * `l_t = iota(l_A) + t Lambda`.
//!
//! At `t = 0`, `L_0` is conjugate to `x (l_A (x) 1 + 1 (x) l_B)` on `A (x) B`
//! through `Phi_s(a (x) l_B^i z_j) = iota(a) Lambda^i v_j`. For `t != 0`,
//! `chi_t L_t = (x l_t) chi_t`.

use serde::Serialize;

use crate::algebra::{Element, GradedAlgebra};
use crate::error::{Error, Result};
use crate::extension::{verify_free_extension, ExtensionTriple};
use crate::field::Scalar;
use crate::jordan::{element_jordan_type, jordan_chain_basis, jordan_type_from_ranks, rank_sequence, Chain};
use crate::matrix::ExactMatrix;
use crate::partition::{dominance_compare, Dominance, Partition};

/// Section data: chains of `B`, their lifts, and the resulting basis of `C`.
#[derive(Clone, Debug)]
pub struct SectionData {
    pub triple: ExtensionTriple,
    pub ell_b: Element,
    pub chains: Vec<Chain>,
    pub lambda: Element,
    pub v: Vec<Element>,
    /// Columns `iota(a) Lambda^i v_j`, ordered by `a`, then chain `j`, then `i`.
    pub basis_map: ExactMatrix,
    pub basis_inv: ExactMatrix,
    /// `(a, j, i)` for each column of `basis_map`.
    pub columns: Vec<(usize, usize, usize)>,
    /// Whether `pi(Lambda) = l_B` and `pi(v_j) = z_j` hold exactly.
    pub exact_preimages: bool,
}

impl SectionData {
    pub fn fibre_dim(&self) -> usize {
        self.chains.iter().map(|c| c.length).sum()
    }

    /// Flattened index of `(j, i)` among the chain vectors.
    fn chain_index(&self, j: usize, i: usize) -> usize {
        self.chains[..j].iter().map(|c| c.length).sum::<usize>() + i
    }

    /// Nominal degree of `Lambda^i v_j`.
    fn chain_degree(&self, j: usize, i: usize) -> u32 {
        self.chains[j].degree + i as u32
    }
}

/// Canonical preimage of a homogeneous element of `B` under `pi`.
fn preimage(t: &ExtensionTriple, pi: &ExactMatrix, e: &Element) -> Result<Element> {
    let field = t.c.field();
    let mut out = t.c.zero().into_coeffs();
    if e.is_zero() {
        return Ok(Element::new(out));
    }
    let d = t
        .b
        .element_degree(e)
        .ok_or_else(|| Error::NotHomogeneous("preimage of a mixed-degree element".into()))?;
    let (hc, hb) = (t.c.h(d), t.b.h(d));
    let (oc, ob) = (t.c.offset(d), t.b.offset(d));
    let mut block = ExactMatrix::zeros(field, hb, hc);
    for r in 0..hb {
        for c in 0..hc {
            block.set(r, c, pi.get(ob + r, oc + c).clone());
        }
    }
    let x = block
        .solve(&e.coeffs()[ob..ob + hb])
        .map_err(|_| Error::NotFreeExtension(format!("pi is not onto in degree {d}")))?;
    out[oc..oc + hc].clone_from_slice(&x);
    Ok(Element::new(out))
}

fn check_linear(a: &GradedAlgebra, e: &Element, what: &str) -> Result<()> {
    if e.coeffs().len() != a.dimension() {
        return Err(Error::InvalidArgument(format!("{what} has the wrong length")));
    }
    if !e.is_zero() && a.element_degree(e) != Some(1) {
        return Err(Error::NotLinear);
    }
    Ok(())
}

pub fn build_section(t: &ExtensionTriple, ell_b: &Element) -> Result<SectionData> {
    let report = verify_free_extension(t)?;
    if !report.verdict {
        return Err(Error::NotFreeExtension(report.failures.join("; ")));
    }
    check_linear(&t.b, ell_b, "l_B")?;
    let chains = jordan_chain_basis(&t.b, ell_b)?;
    let pi = t.pi_matrix()?;
    let lambda = preimage(t, &pi, ell_b)?;
    let v = chains
        .iter()
        .map(|c| preimage(t, &pi, &c.generator))
        .collect::<Result<Vec<_>>>()?;
    section_from_lifts(t, ell_b, chains, lambda, v)
}

/// Assemble section data from arbitrary lifts; used directly for negative
/// controls where the lifts are deliberately wrong.
pub fn section_from_lifts(
    t: &ExtensionTriple,
    ell_b: &Element,
    chains: Vec<Chain>,
    lambda: Element,
    v: Vec<Element>,
) -> Result<SectionData> {
    let c = &t.c;
    let pi = t.pi_matrix()?;
    let image = |e: &Element| Element::new(pi.mul_vec(e.coeffs()));
    let exact_preimages = image(&lambda) == *ell_b
        && v.iter().zip(&chains).all(|(vj, ch)| image(vj) == ch.generator);
    let iota = t.iota_matrix()?;
    let mut cols = Vec::with_capacity(c.dimension());
    let mut columns = Vec::with_capacity(c.dimension());
    for ai in 0..t.a.dimension() {
        let ia = Element::new(iota.column(ai));
        for (j, (vj, ch)) in v.iter().zip(&chains).enumerate() {
            let mut x = c.multiply(&ia, vj);
            for i in 0..ch.length {
                cols.push(x.coeffs().to_vec());
                columns.push((ai, j, i));
                x = c.multiply(&lambda, &x);
            }
        }
    }
    if cols.len() != c.dimension() {
        return Err(Error::NotFreeExtension(format!(
            "{} section vectors for dim C = {}",
            cols.len(),
            c.dimension()
        )));
    }
    let basis_map = ExactMatrix::from_columns(c.field(), c.dimension(), &cols);
    let basis_inv = basis_map
        .inverse()
        .ok_or_else(|| Error::NotFreeExtension("section vectors are not an A-basis of C".into()))?;
    Ok(SectionData {
        triple: t.clone(),
        ell_b: ell_b.clone(),
        chains,
        lambda,
        v,
        basis_map,
        basis_inv,
        columns,
        exact_preimages,
    })
}

/// A matrix whose entries are polynomials in one parameter, stored by powers.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamMatrix {
    coeffs: Vec<ExactMatrix>,
}

impl ParamMatrix {
    pub fn new(coeffs: Vec<ExactMatrix>) -> Self {
        assert!(!coeffs.is_empty(), "at least the constant coefficient");
        ParamMatrix { coeffs }
    }

    pub fn coefficient(&self, k: usize) -> Option<&ExactMatrix> {
        self.coeffs.get(k)
    }

    /// Largest power of the parameter with a nonzero coefficient.
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|m| !m.is_zero()).unwrap_or(0)
    }

    pub fn eval(&self, t: &Scalar) -> ExactMatrix {
        let mut acc = self.coeffs[0].clone();
        let mut p = t.field().one();
        for c in &self.coeffs[1..] {
            p = &p * t;
            acc = acc.add(&c.scale(&p));
        }
        acc
    }
}

#[derive(Clone, Debug)]
pub struct DeformationFamily {
    pub section: SectionData,
    pub ell_a: Element,
    /// `iota(l_A)` as an element of `C`.
    pub iota_ell_a: Element,
    pub l: ParamMatrix,
    /// `Phi_s: A (x) B -> C` over the Kronecker basis `a (x) b`.
    pub phi: ExactMatrix,
    /// `x (l_A (x) 1 + 1 (x) l_B)` on `A (x) B`.
    pub tensor_operator: ExactMatrix,
    degrees: Vec<u32>,
}

pub fn build_family(t: &ExtensionTriple, ell_a: &Element, ell_b: &Element) -> Result<DeformationFamily> {
    let section = build_section(t, ell_b)?;
    family_from_section(section, ell_a)
}

pub fn family_from_section(section: SectionData, ell_a: &Element) -> Result<DeformationFamily> {
    let t = &section.triple;
    let (a, b, c) = (&t.a, &t.b, &t.c);
    check_linear(a, ell_a, "l_A")?;
    let field = c.field();
    let n = section.fibre_dim();
    let dim = c.dimension();

    // a * a' in A, over A's basis
    let a_units: Vec<Element> = (0..a.dimension()).map(|i| a.unit(i)).collect();
    let products: Vec<Vec<Element>> = a_units
        .iter()
        .map(|x| a_units.iter().map(|y| a.multiply(x, y)).collect())
        .collect();

    let top = a.socle_degree() as usize;
    let mut psi = vec![ExactMatrix::zeros(field, dim, dim); top + 1];
    for (j, ch) in section.chains.iter().enumerate() {
        let mut next = section.v[j].clone();
        for i in 0..ch.length {
            next = c.multiply(&section.lambda, &next);
            let u = section.basis_inv.mul_vec(next.coeffs());
            let src_k = section.chain_index(j, i);
            for (pos, coef) in u.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let (a2, j2, i2) = section.columns[pos];
                let power = a.basis_degree(a2) as usize;
                let dst_k = section.chain_index(j2, i2);
                for a1 in 0..a.dimension() {
                    let col = a1 * n + src_k;
                    for (a3, w) in products[a1][a2].coeffs().iter().enumerate().filter(|(_, w)| !w.is_zero()) {
                        let row = a3 * n + dst_k;
                        let cur = psi[power].get(row, col).clone();
                        psi[power].set(row, col, &cur + &(coef * w));
                    }
                }
            }
        }
    }
    let iota = t.iota_matrix()?;
    let iota_ell_a = Element::new(iota.mul_vec(ell_a.coeffs()));
    let mut l_coeffs: Vec<ExactMatrix> = psi
        .iter()
        .map(|p| section.basis_map.mul(p).mul(&section.basis_inv))
        .collect();
    l_coeffs[0] = l_coeffs[0].add(&c.multiplication_matrix(&iota_ell_a));

    // Phi_s = Bmap (I_A (x) Q^{-1}) with Q the chain basis of B
    let mut q_cols = vec![Vec::new(); n];
    for (j, ch) in section.chains.iter().enumerate() {
        let mut x = ch.generator.clone();
        for i in 0..ch.length {
            q_cols[section.chain_index(j, i)] = x.coeffs().to_vec();
            x = b.multiply(&section.ell_b, &x);
        }
    }
    let q = ExactMatrix::from_columns(field, b.dimension(), &q_cols);
    let q_inv = q
        .inverse()
        .ok_or_else(|| Error::NotFreeExtension("chain vectors are not a basis of B".into()))?;
    let phi = section.basis_map.mul(&ExactMatrix::identity(field, a.dimension()).kron(&q_inv));
    let tensor_operator = a
        .multiplication_matrix(ell_a)
        .kron(&ExactMatrix::identity(field, b.dimension()))
        .add(&ExactMatrix::identity(field, a.dimension()).kron(&b.multiplication_matrix(&section.ell_b)));

    let degrees = section
        .columns
        .iter()
        .map(|&(_, j, i)| section.chain_degree(j, i))
        .collect();
    Ok(DeformationFamily {
        section,
        ell_a: ell_a.clone(),
        iota_ell_a,
        l: ParamMatrix::new(l_coeffs),
        phi,
        tensor_operator,
        degrees,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramCheck {
    pub holds: bool,
    /// First column where the two sides differ.
    pub witness_column: Option<usize>,
}

impl DiagramCheck {
    fn compare(lhs: &ExactMatrix, rhs: &ExactMatrix) -> Self {
        let witness_column = lhs.first_differing_column(rhs);
        DiagramCheck {
            holds: witness_column.is_none(),
            witness_column,
        }
    }
}

impl DeformationFamily {
    pub fn algebra(&self) -> &GradedAlgebra {
        &self.section.triple.c
    }

    pub fn l_at(&self, t: &Scalar) -> ExactMatrix {
        self.l.eval(t)
    }

    /// `chi_t`, diagonal in the section basis.
    pub fn chi(&self, t: &Scalar) -> Result<ExactMatrix> {
        if t.is_zero() {
            return Err(Error::ZeroParameter);
        }
        let n = self.degrees.len();
        let mut diag = ExactMatrix::zeros(t.field(), n, n);
        for (k, &d) in self.degrees.iter().enumerate() {
            diag.set(k, k, t.pow(d));
        }
        Ok(self.section.basis_map.mul(&diag).mul(&self.section.basis_inv))
    }

    /// `l_t = iota(l_A) + t Lambda`.
    pub fn ell_t(&self, t: &Scalar) -> Element {
        self.iota_ell_a.add(&self.section.lambda.scale(t))
    }
}

pub fn verify_diagram_zero(f: &DeformationFamily) -> DiagramCheck {
    let l0 = f.l.coefficient(0).expect("constant coefficient");
    DiagramCheck::compare(&f.phi.mul(&f.tensor_operator), &l0.mul(&f.phi))
}

/// `chi_t o L_t = (x l_t) o chi_t`.
pub fn verify_diagram_t(f: &DeformationFamily, t: &Scalar) -> Result<DiagramCheck> {
    let chi = f.chi(t)?;
    let mult = f.algebra().multiplication_matrix(&f.ell_t(t));
    Ok(DiagramCheck::compare(&chi.mul(&f.l_at(t)), &mult.mul(&chi)))
}

#[derive(Clone, Debug, Serialize)]
pub struct SemicontinuityEntry {
    pub t: String,
    pub p_lt: Partition,
    pub p_ell_t: Partition,
    pub vs_l0: Dominance,
    pub conjugation_invariant: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SemicontinuityReport {
    pub p_l0: Partition,
    pub entries: Vec<SemicontinuityEntry>,
    pub falsified: bool,
}

pub fn matrix_jordan_type(m: &ExactMatrix) -> Result<Partition> {
    jordan_type_from_ranks(m.rows(), &rank_sequence(m)?)
}

pub fn semicontinuity_experiment(f: &DeformationFamily, ts: &[Scalar]) -> Result<SemicontinuityReport> {
    let p_l0 = matrix_jordan_type(f.l.coefficient(0).expect("constant coefficient"))?;
    let mut entries = Vec::new();
    let mut falsified = false;
    for t in ts {
        if t.is_zero() {
            return Err(Error::ZeroParameter);
        }
        let p_lt = matrix_jordan_type(&f.l_at(t))?;
        let p_ell_t = element_jordan_type(f.algebra(), &f.ell_t(t))?;
        let vs_l0 = dominance_compare(&p_lt, &p_l0)?;
        let conjugation_invariant = p_lt == p_ell_t;
        if !vs_l0.is_ge() || !conjugation_invariant {
            falsified = true;
        }
        entries.push(SemicontinuityEntry {
            t: t.to_string(),
            p_lt,
            p_ell_t,
            vs_l0,
            conjugation_invariant,
        });
    }
    Ok(SemicontinuityReport {
        p_l0,
        entries,
        falsified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, AlgebraSpec};
    use crate::extension::{build_dual_extension, tensor_triple};
    use crate::field::Field;
    use crate::jordan::{generic_jordan_type, SampleMode};
    use crate::parse::{parse_divided, parse_polynomial};
    use crate::poly::VariableTable;
    use std::sync::Arc;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn perazzo() -> ExtensionTriple {
        let t = Arc::new(VariableTable::standard(&["x", "y", "z", "u", "v"]).unwrap());
        let q = Field::Rationals;
        let b = build_algebra(AlgebraSpec::dual(parse_divided("XU^[2]+YUV+ZV^[2]", &t, q).unwrap())).unwrap();
        let g = parse_divided("X^[2]UV + XYV^[2]", &t, q).unwrap();
        build_dual_extension(&b, 1, &g).unwrap()
    }

    fn trivial() -> ExtensionTriple {
        let q = Field::Rationals;
        let ta = Arc::new(VariableTable::standard(&["s"]).unwrap());
        let a = build_algebra(AlgebraSpec::ideal(ta.clone(), q, vec![parse_polynomial("s^3", &ta, q).unwrap()])).unwrap();
        let tb = Arc::new(VariableTable::standard(&["x", "y"]).unwrap());
        let b = build_algebra(AlgebraSpec::dual(parse_divided("X^[2]Y + Y^[3]", &tb, q).unwrap())).unwrap();
        tensor_triple(&a, &b).unwrap()
    }

    fn elem(a: &GradedAlgebra, s: &str) -> Element {
        a.normal_form(&parse_polynomial(s, a.table(), a.field()).unwrap()).unwrap()
    }

    fn ts() -> Vec<Scalar> {
        let q = Field::Rationals;
        [1, 2, -1, 3].iter().map(|&t| q.from_i64(t)).collect()
    }

    #[test]
    fn trivial_tensor_family() {
        let tr = trivial();
        let la = tr.a.variable(0);
        let lb = elem(&tr.b, "x + 2y");
        let fam = build_family(&tr, &la, &lb).unwrap();
        assert!(fam.section.exact_preimages);
        // Lambda and v_j are the canonical lifts 1 (x) l_B and 1 (x) z_j
        assert_eq!(tr.c.to_polynomial(&fam.section.lambda).to_string(), "x + 2*y");
        assert!(verify_diagram_zero(&fam).holds);
        for t in ts() {
            assert!(verify_diagram_t(&fam, &t).unwrap().holds);
        }
        let direct = tr.c.multiplication_matrix(&elem(&tr.c, "s + x + 2y"));
        assert_eq!(matrix_jordan_type(fam.l.coefficient(0).unwrap()).unwrap(), matrix_jordan_type(&direct).unwrap());
        let rep = semicontinuity_experiment(&fam, &ts()).unwrap();
        assert!(!rep.falsified);
        assert!(rep.entries.iter().all(|e| e.p_lt == rep.p_l0));
    }

    #[test]
    fn perazzo_family() {
        let tr = perazzo();
        let lb = generic_jordan_type(&tr.b, SampleMode::LinearForms, 7, 0).unwrap().witness;
        let la = tr.a.variable(0);
        let fam = build_family(&tr, &la, &lb).unwrap();
        assert_eq!(fam.section.chains.len(), 6);
        assert!(verify_diagram_zero(&fam).holds);
        for t in ts() {
            assert!(verify_diagram_t(&fam, &t).unwrap().holds);
        }
        assert!(fam.l.degree() <= tr.c.socle_degree() as usize);
        let rep = semicontinuity_experiment(&fam, &ts()).unwrap();
        assert_eq!(rep.p_l0, p("5,3,3,3,3,2,2,1,1,1"));
        assert!(!rep.falsified);
        assert!(matches!(verify_diagram_t(&fam, &Field::Rationals.zero()), Err(Error::ZeroParameter)));
    }

    #[test]
    fn literal_orientation_fails() {
        let tr = trivial();
        let fam = build_family(&tr, &tr.a.variable(0), &elem(&tr.b, "x + y")).unwrap();
        let t = Field::Rationals.from_i64(2);
        let chi = fam.chi(&t).unwrap();
        let mult = tr.c.multiplication_matrix(&fam.ell_t(&t));
        assert_ne!(chi.mul(&mult), fam.l_at(&t).mul(&chi));
        assert!(verify_diagram_t(&fam, &t).unwrap().holds);
    }

    #[test]
    fn chi_inverse() {
        let tr = perazzo();
        let lb = generic_jordan_type(&tr.b, SampleMode::LinearForms, 7, 0).unwrap().witness;
        let fam = build_family(&tr, &tr.a.variable(0), &lb).unwrap();
        let q = Field::Rationals;
        let two = q.from_i64(2);
        let half = two.inverse().unwrap();
        let id = fam.chi(&two).unwrap().mul(&fam.chi(&half).unwrap());
        assert_eq!(id, ExactMatrix::identity(q, tr.c.dimension()));
    }

    #[test]
    fn corrupted_lifts_are_detected() {
        let tr = perazzo();
        let lb = generic_jordan_type(&tr.b, SampleMode::LinearForms, 7, 0).unwrap().witness;
        let good = build_section(&tr, &lb).unwrap();
        let j = good
            .chains
            .iter()
            .position(|c| c.degree == 1 && c.length == 2)
            .expect("a length-two chain in degree one");

        // homogeneous but no longer a preimage: breaks the t = 0 square
        let mut v = good.v.clone();
        v[j] = v[j].add(&good.lambda);
        let bad = section_from_lifts(&tr, &lb, good.chains.clone(), good.lambda.clone(), v).unwrap();
        assert!(!bad.exact_preimages);
        let fam = family_from_section(bad, &tr.a.variable(0)).unwrap();
        let zero = verify_diagram_zero(&fam);
        assert!(!zero.holds);
        assert!(zero.witness_column.is_some());

        // mixed degrees: breaks the t != 0 square
        let mut v = good.v.clone();
        let l2 = tr.c.multiply(&good.lambda, &good.lambda);
        v[j] = v[j].add(&l2);
        let bad = section_from_lifts(&tr, &lb, good.chains.clone(), good.lambda.clone(), v).unwrap();
        let fam = family_from_section(bad, &tr.a.variable(0)).unwrap();
        let q = Field::Rationals;
        assert!(!verify_diagram_t(&fam, &q.from_i64(2)).unwrap().holds);
    }

    #[test]
    fn zero_fibre_form() {
        let tr = trivial();
        let fam = build_family(&tr, &tr.a.variable(0), &tr.b.zero()).unwrap();
        assert!(fam.section.chains.iter().all(|c| c.length == 1));
        assert!(verify_diagram_zero(&fam).holds);
        assert!(verify_diagram_t(&fam, &Field::Rationals.from_i64(3)).unwrap().holds);
    }

    #[test]
    fn param_matrix_eval() {
        let q = Field::Rationals;
        let m = ParamMatrix::new(vec![
            ExactMatrix::from_i64(q, &[&[1]]),
            ExactMatrix::from_i64(q, &[&[0]]),
            ExactMatrix::from_i64(q, &[&[2]]),
        ]);
        assert_eq!(m.eval(&q.from_i64(3)), ExactMatrix::from_i64(q, &[&[19]]));
        assert_eq!(m.degree(), 2);
    }
}
