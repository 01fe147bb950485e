//! Tensor products, free extensions and their dual generators.
//!
//! A triple `A -> C -> B` (maps `iota`, `pi`) is a free extension when `C` is
//! a free `A`-module and `pi` is surjective with `ker pi = iota(m_A) C`. For
//! graded algebras this is checked per degree through the dimension criterion:
//! `pi` onto, the kernel condition, and `dim C = dim A * dim B`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{build_algebra, AlgebraSpec, GradedAlgebra, Presentation};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::jordan::{generic_jordan_type, SampleMode};
use crate::matrix::{ExactMatrix, RowSpace};
use crate::partition::{dominance_compare, Dominance, Partition};
use crate::poly::{contract, dp_multiply, monomials_of_degree, DividedPolynomial, Monomial, Polynomial, VariableTable};

/// A graded ring map given by the images of the source variables.
#[derive(Clone, Debug)]
pub struct RingMapSpec {
    source: Arc<VariableTable>,
    target: Arc<VariableTable>,
    images: Vec<Polynomial>,
}

impl RingMapSpec {
    pub fn new(source: Arc<VariableTable>, target: Arc<VariableTable>, images: Vec<Polynomial>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::InvalidRingMap(format!(
                "{} images for {} variables",
                images.len(),
                source.len()
            )));
        }
        for (i, p) in images.iter().enumerate() {
            if **p.table() != *target {
                return Err(Error::TableMismatch);
            }
            if !p.is_zero() && p.homogeneous_degree() != Some(source.weight(i)) {
                return Err(Error::InvalidRingMap(format!(
                    "image {p} of {} is not homogeneous of degree {}",
                    source.name(i),
                    source.weight(i)
                )));
            }
        }
        Ok(RingMapSpec {
            source,
            target,
            images,
        })
    }

    /// Images given by name; unlisted variables map to the same-named target
    /// variable if present, otherwise to zero.
    pub fn from_named(
        source: &Arc<VariableTable>,
        target: &Arc<VariableTable>,
        field: Field,
        named: &HashMap<String, Polynomial>,
    ) -> Result<Self> {
        for k in named.keys() {
            if source.index_of(k).is_none() {
                return Err(Error::InvalidRingMap(format!("{k} is not a source variable")));
            }
        }
        let images = source
            .names()
            .iter()
            .map(|n| match named.get(n) {
                Some(p) => p.clone(),
                None => match target.index_of(n) {
                    Some(i) => Polynomial::variable(target.clone(), field, i),
                    None => Polynomial::zero(target.clone(), field),
                },
            })
            .collect();
        RingMapSpec::new(source.clone(), target.clone(), images)
    }

    pub fn source(&self) -> &Arc<VariableTable> {
        &self.source
    }

    pub fn target(&self) -> &Arc<VariableTable> {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        f.substitute(&self.target, &self.images)
    }

    pub fn describe(&self) -> Vec<String> {
        self.source
            .names()
            .iter()
            .zip(&self.images)
            .map(|(n, p)| format!("{n}={p}"))
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct ExtensionTriple {
    pub a: GradedAlgebra,
    pub b: GradedAlgebra,
    pub c: GradedAlgebra,
    pub iota: RingMapSpec,
    pub pi: RingMapSpec,
}

impl ExtensionTriple {
    pub fn new(a: GradedAlgebra, b: GradedAlgebra, c: GradedAlgebra, iota: RingMapSpec, pi: RingMapSpec) -> Result<Self> {
        let f = c.field();
        if a.field() != f || b.field() != f {
            return Err(Error::FieldMismatch);
        }
        if **iota.source() != **a.table() || **iota.target() != **c.table() {
            return Err(Error::InvalidRingMap("iota must map A's variables into C".into()));
        }
        if **pi.source() != **c.table() || **pi.target() != **b.table() {
            return Err(Error::InvalidRingMap("pi must map C's variables into B".into()));
        }
        if iota.images().iter().chain(pi.images()).any(|p| p.field() != f) {
            return Err(Error::FieldMismatch);
        }
        Ok(ExtensionTriple { a, b, c, iota, pi })
    }

    /// Matrix of `pi: C -> B` over the standard bases.
    pub fn pi_matrix(&self) -> Result<ExactMatrix> {
        map_matrix(&self.c, &self.b, &self.pi)
    }

    /// Matrix of `iota: A -> C` over the standard bases.
    pub fn iota_matrix(&self) -> Result<ExactMatrix> {
        map_matrix(&self.a, &self.c, &self.iota)
    }
}

fn map_matrix(src: &GradedAlgebra, dst: &GradedAlgebra, map: &RingMapSpec) -> Result<ExactMatrix> {
    let cols = src
        .basis()
        .iter()
        .map(|m| {
            let p = Polynomial::monomial(src.table().clone(), m.clone(), src.field().one());
            Ok(dst.normal_form(&map.apply(&p)?)?.into_coeffs())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExactMatrix::from_columns(src.field(), dst.dimension(), &cols))
}

/// Generators of the defining ideal: the given ones for ideal presentations,
/// a minimal set for dual presentations.
pub fn ideal_generators(a: &GradedAlgebra) -> Vec<Polynomial> {
    match &a.spec().presentation {
        Presentation::IdealGenerators(g) => g.iter().filter(|p| !p.is_zero()).cloned().collect(),
        Presentation::DualGenerator(_) => a.minimal_generators(),
    }
}

/// Variables of `B` renamed where they clash with `taken`.
fn disjoint_names(taken: &VariableTable, other: &VariableTable) -> Vec<(String, u32)> {
    let mut names: Vec<(String, u32)> = taken
        .names()
        .iter()
        .cloned()
        .zip(taken.weights().iter().copied())
        .collect();
    let mut out = Vec::new();
    for (i, n) in other.names().iter().enumerate() {
        let current = VariableTable::new(names.clone()).expect("distinct names");
        let fresh = current.fresh_name(n);
        names.push((fresh.clone(), other.weight(i)));
        out.push((fresh, other.weight(i)));
    }
    out
}

/// `A (x) B` presented by the union of both generator sets; clashing variable
/// names of `B` get numeric suffixes.
pub fn tensor_algebra(a: &GradedAlgebra, b: &GradedAlgebra) -> Result<GradedAlgebra> {
    Ok(tensor_parts(a, b)?.0)
}

fn tensor_parts(a: &GradedAlgebra, b: &GradedAlgebra) -> Result<(GradedAlgebra, Vec<usize>, Vec<usize>)> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    let field = a.field();
    let b_names = disjoint_names(a.table(), b.table());
    let mut vars: Vec<(String, u32)> = a
        .table()
        .names()
        .iter()
        .cloned()
        .zip(a.table().weights().iter().copied())
        .collect();
    vars.extend(b_names);
    let table = Arc::new(VariableTable::new(vars)?);
    let na = a.table().len();
    let a_map: Vec<usize> = (0..na).collect();
    let b_map: Vec<usize> = (na..table.len()).collect();
    let mut gens = Vec::new();
    for g in ideal_generators(a) {
        gens.push(g.embed(table.clone(), &a_map)?);
    }
    for g in ideal_generators(b) {
        gens.push(g.embed(table.clone(), &b_map)?);
    }
    let cap = a.spec().degree_cap.max(b.spec().degree_cap);
    let mut spec = AlgebraSpec::ideal(table, field, gens).with_degree_cap(cap);
    if let (Some(x), Some(y)) = (a.label(), b.label()) {
        spec = spec.with_label(format!("{x} (x) {y}"));
    }
    Ok((build_algebra(spec)?, a_map, b_map))
}

/// The triple `A -> A (x) B -> B` with the canonical maps.
pub fn tensor_triple(a: &GradedAlgebra, b: &GradedAlgebra) -> Result<ExtensionTriple> {
    let (c, a_map, b_map) = tensor_parts(a, b)?;
    let field = c.field();
    let ct = c.table().clone();
    let iota_images = a_map.iter().map(|&i| Polynomial::variable(ct.clone(), field, i)).collect();
    let iota = RingMapSpec::new(a.table().clone(), ct.clone(), iota_images)?;
    let bt = b.table().clone();
    let mut pi_images = vec![Polynomial::zero(bt.clone(), field); ct.len()];
    for (k, &i) in b_map.iter().enumerate() {
        pi_images[i] = Polynomial::variable(bt.clone(), field, k);
    }
    let pi = RingMapSpec::new(ct, bt, pi_images)?;
    ExtensionTriple::new(a.clone(), b.clone(), c, iota, pi)
}

/// Convolution of two Hilbert functions.
pub fn convolve(h: &[usize], g: &[usize]) -> Vec<usize> {
    if h.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; h.len() + g.len() - 1];
    for (i, x) in h.iter().enumerate() {
        for (k, y) in g.iter().enumerate() {
            out[i + k] += x * y;
        }
    }
    out
}

/// Clebsch-Gordan product: `J_a (x) J_b = (a+b-1, a+b-3, ..., |a-b|+1)`.
pub fn cg_tensor(p: &Partition, q: &Partition, characteristic: u64) -> Result<Partition> {
    let required = (p.largest() + q.largest()).saturating_sub(1) as u64;
    if characteristic != 0 && characteristic < required {
        return Err(Error::CharTooSmall {
            characteristic,
            required,
        });
    }
    let mut parts = Vec::with_capacity(p.len() * q.len());
    for &a in p.parts() {
        for &b in q.parts() {
            parts.extend((0..a.min(b)).map(|k| a + b - 1 - 2 * k));
        }
    }
    Ok(Partition::from_unsorted(parts))
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionReport {
    pub well_defined: (bool, bool),
    pub pi_surjective: bool,
    pub kernel_condition: bool,
    pub dim_product: bool,
    pub verdict: bool,
    pub criterion: &'static str,
    pub dimensions: (usize, usize, usize),
    pub failures: Vec<String>,
}

pub fn verify_free_extension(t: &ExtensionTriple) -> Result<ExtensionReport> {
    let mut failures = Vec::new();
    let iota_ok = maps_ideal(&t.a, &t.c, &t.iota, "iota", &mut failures)?;
    let pi_ok = maps_ideal(&t.c, &t.b, &t.pi, "pi", &mut failures)?;

    let field = t.c.field();
    let pi_mat = t.pi_matrix()?;
    let mut surjective = true;
    let mut kernel_ok = true;
    let a_vars: Vec<Polynomial> = t.iota.images().to_vec();
    for d in 0..=t.c.socle_degree().max(t.b.socle_degree()) {
        let (hc, hb) = (t.c.h(d), t.b.h(d));
        let (oc, ob) = (t.c.offset(d), t.b.offset(d));
        let mut block = ExactMatrix::zeros(field, hb, hc);
        for r in 0..hb {
            for c in 0..hc {
                block.set(r, c, pi_mat.get(ob + r, oc + c).clone());
            }
        }
        let rank = block.rank();
        if rank != hb {
            surjective = false;
            failures.push(format!("pi is not onto in degree {d}: rank {rank} < {hb}"));
        }
        // iota(m_A) C in degree d
        let mut image = RowSpace::new(field, hc);
        for (i, img) in a_vars.iter().enumerate() {
            let w = t.a.table().weight(i);
            if img.is_zero() || w > d {
                continue;
            }
            for m in t.c.standard_monomials(d - w) {
                let v = t.c.normal_form(&img.mul_monomial(m))?;
                image.insert(&v.coeffs()[oc..oc + hc]);
            }
        }
        let kernel = block.kernel_basis();
        let contained = image
            .echelon_basis()
            .echelon
            .row_vectors()
            .iter()
            .all(|v| block.mul_vec(v).iter().all(Scalar::is_zero));
        if !contained || image.rank() != kernel.rows() {
            kernel_ok = false;
            failures.push(format!(
                "degree {d}: dim ker pi = {}, dim iota(m_A)C = {}",
                kernel.rows(),
                image.rank()
            ));
        }
    }
    let dims = (t.a.dimension(), t.b.dimension(), t.c.dimension());
    let dim_product = dims.0 * dims.1 == dims.2;
    if !dim_product {
        failures.push(format!("dim C = {} but dim A * dim B = {}", dims.2, dims.0 * dims.1));
    }
    let verdict = iota_ok && pi_ok && surjective && kernel_ok && dim_product;
    Ok(ExtensionReport {
        well_defined: (iota_ok, pi_ok),
        pi_surjective: surjective,
        kernel_condition: kernel_ok,
        dim_product,
        verdict,
        criterion: "dimension",
        dimensions: dims,
        failures,
    })
}

fn maps_ideal(
    src: &GradedAlgebra,
    dst: &GradedAlgebra,
    map: &RingMapSpec,
    name: &str,
    failures: &mut Vec<String>,
) -> Result<bool> {
    let mut ok = true;
    for g in ideal_generators(src) {
        let img = map.apply(&g)?;
        if !dst.contains(&img)? {
            ok = false;
            failures.push(format!("{name}({g}) = {img} is not in the target ideal"));
        }
    }
    Ok(ok)
}

/// Spans of `(I_B)^2` in each degree `e <= top`, as monomial coordinate rows,
/// together with a representative product pair for each row.
struct SquareIdeal {
    degrees: Vec<(u32, Vec<Monomial>, Vec<(Vec<Scalar>, Polynomial, Polynomial)>)>,
}

fn square_ideal(b: &GradedAlgebra, top: u32) -> Result<SquareIdeal> {
    let mut degrees = Vec::new();
    for e in 2..=top {
        let mons = monomials_of_degree(b.table(), e);
        let index: HashMap<&Monomial, usize> = mons.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut space = RowSpace::new(b.field(), mons.len());
        let mut rows = Vec::new();
        for d1 in 1..=e / 2 {
            let left = b.ideal_degree_basis(d1);
            let right = b.ideal_degree_basis(e - d1);
            for f in &left {
                for g in &right {
                    let p = f.mul(g)?;
                    let mut row = vec![b.field().zero(); mons.len()];
                    for (m, c) in p.terms() {
                        row[index[m]] = c.clone();
                    }
                    if space.insert(&row) {
                        rows.push((row, f.clone(), g.clone()));
                    }
                }
            }
        }
        degrees.push((e, mons, rows));
    }
    Ok(SquareIdeal { degrees })
}

/// A pair `f, g` in `I_B` with `(f g) o G != 0`, if any.
pub fn condition_witness(b: &GradedAlgebra, g: &DividedPolynomial) -> Result<Option<(Polynomial, Polynomial)>> {
    let Some(n) = g.degree() else {
        return Ok(None);
    };
    for (_, mons, rows) in square_ideal(b, n)?.degrees {
        for (row, f1, f2) in rows {
            let p = Polynomial::from_terms(b.table().clone(), b.field(), mons.iter().cloned().zip(row));
            if !contract(&p, g)?.is_zero() {
                return Ok(Some((f1, f2)));
            }
        }
    }
    Ok(None)
}

/// Basis of `{G in D_{j_B + m} : (I_B)^2 o G = 0}`.
pub fn valid_g_space(b: &GradedAlgebra, m: u32) -> Result<Vec<DividedPolynomial>> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    let field = b.field();
    let n = b.socle_degree() + m;
    let cols = monomials_of_degree(b.table(), n);
    let mut system = RowSpace::new(field, cols.len());
    for (e, mons, rows) in square_ideal(b, n)?.degrees {
        let targets = monomials_of_degree(b.table(), n - e);
        for (row, _, _) in &rows {
            for gamma in &targets {
                // coefficient of X^[gamma] in h o X^[beta] is h_{beta - gamma}
                let eq: Vec<Scalar> = cols
                    .iter()
                    .map(|beta| match beta.checked_div(gamma) {
                        Some(alpha) => mons
                            .iter()
                            .position(|x| *x == alpha)
                            .map_or_else(|| field.zero(), |i| row[i].clone()),
                        None => field.zero(),
                    })
                    .collect();
                system.insert(&eq);
            }
        }
    }
    let rows = system.echelon_basis().echelon;
    let kernel = if rows.rows() == 0 {
        ExactMatrix::identity(field, cols.len())
    } else {
        rows.kernel_basis()
    };
    Ok(kernel
        .row_vectors()
        .into_iter()
        .map(|v| DividedPolynomial::from_terms(b.table().clone(), field, cols.iter().cloned().zip(v)))
        .collect())
}

/// `C = S/Ann(T^[m] F_B + G)` over `S = R[t]`, with `A = k[t]/(t^{m+1})`.
pub fn build_dual_extension(b: &GradedAlgebra, m: u32, g: &DividedPolynomial) -> Result<ExtensionTriple> {
    let fb = b
        .dual_generator()
        .ok_or_else(|| Error::InvalidArgument("the fibre must be given by a dual generator".into()))?;
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    let n = b.socle_degree() + m;
    if g.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    if **g.table() != **b.table() {
        return Err(Error::TableMismatch);
    }
    if !g.is_zero() && g.homogeneous_degree() != Some(n) {
        return Err(Error::DegreeMismatch(format!("G must be homogeneous of degree {n}")));
    }
    if let Some((f1, f2)) = condition_witness(b, g)? {
        return Err(Error::ConditionFails {
            f: f1.to_string(),
            g: f2.to_string(),
        });
    }
    let field = b.field();
    let tname = b.table().fresh_name("t");
    let s = Arc::new(b.table().with_variable(&tname, 1)?);
    let ti = s.len() - 1;
    let embed: Vec<usize> = (0..b.table().len()).collect();
    let mut tm = vec![0; s.len()];
    tm[ti] = m;
    let t_pow = DividedPolynomial::monomial(s.clone(), Monomial::new(tm, &s), field.one());
    let f = dp_multiply(&t_pow, &fb.embed(s.clone(), &embed)?)?.add(&g.embed(s.clone(), &embed)?)?;
    let mut cspec = AlgebraSpec::dual(f);
    if let Some(l) = b.label() {
        cspec = cspec.with_label(format!("dual extension of {l}"));
    }
    let c = build_algebra(cspec)?;

    let at = Arc::new(VariableTable::standard(&[tname.as_str()])?);
    let t_a = Polynomial::variable(at.clone(), field, 0);
    let a = build_algebra(AlgebraSpec::ideal(at.clone(), field, vec![t_a.pow(m + 1)?]))?;
    let iota = RingMapSpec::new(at, s.clone(), vec![Polynomial::variable(s.clone(), field, ti)])?;
    let bt = b.table().clone();
    let mut images: Vec<Polynomial> = (0..bt.len()).map(|i| Polynomial::variable(bt.clone(), field, i)).collect();
    images.push(Polynomial::zero(bt.clone(), field));
    let pi = RingMapSpec::new(s, bt, images)?;
    ExtensionTriple::new(a, b.clone(), c, iota, pi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TheoremOutcome {
    #[serde(rename = "GT")]
    Greater,
    #[serde(rename = "EQ")]
    Equal,
    /// Sampled types were incomparable; neither confirms nor refutes.
    #[serde(rename = "GE_unresolved")]
    Unresolved,
    #[serde(rename = "FALSIFICATION")]
    Falsified,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub outcome: TheoremOutcome,
    pub p_c: Partition,
    pub p_tensor: Partition,
    pub hilbert_c: Vec<usize>,
    pub hilbert_tensor: Vec<usize>,
}

/// Compares sampled generic linear Jordan types of `C` and `A (x) B`.
pub fn theorem_check(t: &ExtensionTriple, samples: usize, seed: u64) -> Result<TheoremReport> {
    let report = verify_free_extension(t)?;
    if !report.verdict {
        return Err(Error::NotFreeExtension(report.failures.join("; ")));
    }
    let tensor = tensor_algebra(&t.a, &t.b)?;
    let pc = generic_jordan_type(&t.c, SampleMode::LinearForms, samples, seed)?.partition;
    let pt = generic_jordan_type(&tensor, SampleMode::LinearForms, samples, seed)?.partition;
    let outcome = match dominance_compare(&pc, &pt)? {
        Dominance::Greater => TheoremOutcome::Greater,
        Dominance::Equal => TheoremOutcome::Equal,
        Dominance::Incomparable => TheoremOutcome::Unresolved,
        Dominance::Less => TheoremOutcome::Falsified,
    };
    Ok(TheoremReport {
        outcome,
        p_c: pc,
        p_tensor: pt,
        hilbert_c: t.c.hilbert().to_vec(),
        hilbert_tensor: tensor.hilbert().to_vec(),
    })
}
