//! Jordan types of multiplication maps and Lefschetz certification.
//!
//! The Jordan type of a nilpotent operator `M` on a space of dimension `n` is
//! read off its rank sequence `r_k = rank M^k`: the number of blocks of size at
//! least `k` is `r_{k-1} - r_k`. For a homogeneous element the powers are
//! assembled from the graded pieces `A_d -> A_{d + k delta}`, which keeps the
//! matrices small.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Element, GradedAlgebra};
use crate::error::{Error, Result};
use crate::matrix::{ExactMatrix, RowSpace};
use crate::partition::{dominance_compare, Partition};
use crate::field::Scalar;

/// Default number of random elements drawn by generic sampling.
pub const DEFAULT_SAMPLES: usize = 7;

pub fn jordan_type_from_ranks(dim: usize, ranks: &[usize]) -> Result<Partition> {
    let bad = |m: String| Err(Error::InvalidRankSequence(m));
    if ranks.last().copied().unwrap_or(0) != 0 {
        return bad(format!("{ranks:?} does not end in 0"));
    }
    let mut prev = dim;
    let mut at_least = Vec::with_capacity(ranks.len());
    for &r in ranks {
        if r > prev || (r == prev && prev > 0) {
            return bad(format!("{ranks:?} is not strictly decreasing from {dim}"));
        }
        at_least.push(prev - r);
        prev = r;
    }
    if at_least.windows(2).any(|w| w[0] < w[1]) {
        return bad(format!("block counts from {ranks:?} are inconsistent"));
    }
    Ok(Partition::from_unsorted(at_least).conjugate())
}

/// `[rank M, rank M^2, ...]` up to and including the first zero.
pub fn rank_sequence(m: &ExactMatrix) -> Result<Vec<usize>> {
    let n = m.rows();
    let mut ranks = Vec::new();
    let mut p = m.clone();
    loop {
        let r = p.rank();
        ranks.push(r);
        if r == 0 {
            return Ok(ranks);
        }
        if ranks.len() > n {
            return Err(Error::NonNilpotent);
        }
        p = p.mul(m);
    }
}

/// Powers of a homogeneous element between graded pieces:
/// `maps[d][k]` is multiplication by `e^k` from `A_d` to `A_{d + k delta}`.
pub struct GradedPowers {
    delta: u32,
    maps: Vec<Vec<ExactMatrix>>,
}

impl GradedPowers {
    pub fn new(a: &GradedAlgebra, e: &Element, delta: u32) -> Self {
        assert!(delta >= 1, "graded powers need positive degree");
        let j = a.socle_degree();
        let blocks: Vec<ExactMatrix> = (0..=j).map(|d| a.graded_block(e, delta, d)).collect();
        let mut maps = Vec::new();
        for d in 0..=j {
            let mut row = vec![ExactMatrix::identity(a.field(), a.h(d))];
            let mut k = 1;
            while d + k * delta <= j {
                let prev = &row[k as usize - 1];
                row.push(blocks[(d + (k - 1) * delta) as usize].mul(prev));
                k += 1;
            }
            maps.push(row);
        }
        GradedPowers { delta, maps }
    }

    /// `e^k` on `A_d`; `None` when the target degree exceeds the socle.
    pub fn get(&self, d: u32, k: u32) -> Option<&ExactMatrix> {
        self.maps.get(d as usize)?.get(k as usize)
    }

    pub fn ranks(&self) -> Vec<usize> {
        let mut ranks = Vec::new();
        for k in 1.. {
            let r: usize = self
                .maps
                .iter()
                .filter_map(|row| row.get(k))
                .map(ExactMatrix::rank)
                .sum();
            ranks.push(r);
            if r == 0 {
                break;
            }
        }
        ranks
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }
}

/// Rank sequence of multiplication by `e`, using graded pieces when possible.
pub fn element_rank_sequence(a: &GradedAlgebra, e: &Element) -> Result<Vec<usize>> {
    if !a.constant_term(e).is_zero() {
        return Err(Error::NonNilpotent);
    }
    if e.is_zero() {
        return Ok(vec![0]);
    }
    match a.element_degree(e) {
        Some(delta) => Ok(GradedPowers::new(a, e, delta).ranks()),
        None => rank_sequence(&a.mult_operator(e)?),
    }
}

pub fn element_jordan_type(a: &GradedAlgebra, e: &Element) -> Result<Partition> {
    jordan_type_from_ranks(a.dimension(), &element_rank_sequence(a, e)?)
}

/// Conjugate of a Hilbert function after sorting it descending.
pub fn hf_conjugate(h: &[usize]) -> Partition {
    Partition::from_unsorted(h.to_vec()).conjugate()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum JordanVerdict {
    #[serde(rename = "SLJT")]
    Sljt,
    #[serde(rename = "NotSLJT")]
    NotSljt,
}

#[derive(Clone, Debug, Serialize)]
pub struct JordanReport {
    pub element: String,
    pub rank_sequence: Vec<usize>,
    pub partition: Partition,
    pub hf_conjugate: Partition,
    /// Which Hilbert function bounds the type: "graded" or "local".
    pub bound: &'static str,
    pub verdict: JordanVerdict,
}

pub fn jordan_type(a: &GradedAlgebra, e: &Element) -> Result<JordanReport> {
    let rank_sequence = element_rank_sequence(a, e)?;
    let partition = jordan_type_from_ranks(a.dimension(), &rank_sequence)?;
    let (bound, h) = if a.element_degree(e) == Some(1) {
        ("graded", a.hilbert().to_vec())
    } else {
        ("local", a.local_hilbert())
    };
    let hf = hf_conjugate(&h);
    let verdict = if partition == hf {
        JordanVerdict::Sljt
    } else {
        JordanVerdict::NotSljt
    };
    Ok(JordanReport {
        element: a.to_polynomial(e).to_string(),
        rank_sequence,
        partition,
        hf_conjugate: hf,
        bound,
        verdict,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SampleMode {
    #[serde(rename = "linear")]
    LinearForms,
    #[serde(rename = "local")]
    MaximalIdeal,
}

#[derive(Clone, Debug)]
pub struct GenericJordan {
    pub partition: Partition,
    pub witness: Element,
    /// Every sampled type, in draw order.
    pub samples: Vec<Partition>,
    /// Set over finite fields, where a Zariski-generic element need not exist.
    pub lower_bound_only: bool,
}

/// A random element: nonzero coefficients on `A_1` (linear mode) or on every
/// positive-degree basis vector (local mode).
pub fn random_element(a: &GradedAlgebra, mode: SampleMode, rng: &mut ChaCha8Rng) -> Element {
    let field = a.field();
    let range = match mode {
        SampleMode::LinearForms => a.offset(1)..a.offset(2),
        SampleMode::MaximalIdeal => a.offset(1)..a.dimension(),
    };
    let mut coeffs = vec![field.zero(); a.dimension()];
    for c in &mut coeffs[range] {
        *c = field.random_nonzero(rng);
    }
    Element::new(coeffs)
}

pub fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_add(index as u64))
}

/// Dominance maximum of several sampled types, if one exists.
pub fn dominance_maximum(types: &[Partition]) -> Option<usize> {
    (0..types.len()).find(|&i| {
        types
            .iter()
            .all(|q| matches!(dominance_compare(&types[i], q), Ok(d) if d.is_ge()))
    })
}

pub fn generic_jordan_type(
    a: &GradedAlgebra,
    mode: SampleMode,
    samples: usize,
    seed: u64,
) -> Result<GenericJordan> {
    if samples == 0 {
        return Err(Error::InvalidArgument("at least one sample is required".into()));
    }
    if mode == SampleMode::LinearForms && a.h(1) == 0 {
        return Err(Error::EmptyStratum);
    }
    let mut types = Vec::with_capacity(samples);
    let mut elements = Vec::with_capacity(samples);
    for i in 0..samples {
        let e = random_element(a, mode, &mut sample_rng(seed, i));
        types.push(element_jordan_type(a, &e)?);
        elements.push(e);
    }
    let best = dominance_maximum(&types).ok_or_else(|| Error::IncomparableSamples {
        types: types.iter().map(|p| p.parts().to_vec()).collect(),
    })?;
    Ok(GenericJordan {
        partition: types[best].clone(),
        witness: elements.swap_remove(best),
        samples: types,
        lower_bound_only: a.field().is_finite(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RankEntry {
    pub degree: u32,
    pub power: u32,
    pub rank: usize,
    pub expected: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SlRankCheck {
    pub holds: bool,
    pub table: Vec<RankEntry>,
}

/// Whether every `x l^k : A_i -> A_{i+k}` has rank `min(h_i, h_{i+k})`.
pub fn sl_rank_check(a: &GradedAlgebra, l: &Element) -> Result<SlRankCheck> {
    if a.element_degree(l) != Some(1) {
        return Err(Error::NotLinear);
    }
    let powers = GradedPowers::new(a, l, 1);
    let mut table = Vec::new();
    let j = a.socle_degree();
    for i in 0..=j {
        for k in 1..=j - i {
            let rank = powers.get(i, k).expect("within socle").rank();
            let expected = a.h(i).min(a.h(i + k));
            table.push(RankEntry {
                degree: i,
                power: k,
                rank,
                expected,
            });
        }
    }
    let holds = table.iter().all(|e| e.rank == e.expected);
    Ok(SlRankCheck { holds, table })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LefschetzMode {
    #[serde(rename = "sl")]
    Graded,
    #[serde(rename = "sljt")]
    Local,
}

#[derive(Clone, Debug, Serialize)]
pub struct LefschetzReport {
    pub mode: LefschetzMode,
    pub verdict: bool,
    pub hilbert: Vec<usize>,
    pub bound: Partition,
    pub partition: Partition,
    pub obstruction: Option<String>,
    pub lower_bound_only: bool,
    pub witness: String,
}

pub fn is_unimodal(h: &[usize]) -> bool {
    let peak = h.windows(2).take_while(|w| w[0] <= w[1]).count();
    h[peak..].windows(2).all(|w| w[0] >= w[1])
}

pub fn lefschetz_certify(
    a: &GradedAlgebra,
    mode: LefschetzMode,
    samples: usize,
    seed: u64,
) -> Result<LefschetzReport> {
    let (hilbert, sample_mode) = match mode {
        LefschetzMode::Graded => (a.hilbert().to_vec(), SampleMode::LinearForms),
        LefschetzMode::Local => (a.local_hilbert(), SampleMode::MaximalIdeal),
    };
    let bound = hf_conjugate(&hilbert);
    if a.dimension() == 1 {
        return Ok(LefschetzReport {
            mode,
            verdict: true,
            hilbert,
            partition: bound.clone(),
            bound,
            obstruction: None,
            lower_bound_only: false,
            witness: "0".into(),
        });
    }
    let generic = generic_jordan_type(a, sample_mode, samples, seed)?;
    let obstruction = (mode == LefschetzMode::Graded && !is_unimodal(&hilbert))
        .then(|| format!("Hilbert function {hilbert:?} is not unimodal"));
    let verdict = obstruction.is_none() && generic.partition == bound;
    Ok(LefschetzReport {
        mode,
        verdict,
        hilbert,
        bound,
        partition: generic.partition,
        obstruction,
        lower_bound_only: generic.lower_bound_only,
        witness: a.to_polynomial(&generic.witness).to_string(),
    })
}

/// A Jordan chain `z, l z, ..., l^{length-1} z` with homogeneous generator.
#[derive(Clone, Debug)]
pub struct Chain {
    pub generator: Element,
    pub degree: u32,
    pub length: usize,
}

fn embed(a: &GradedAlgebra, d: u32, local: &[Scalar]) -> Element {
    let mut e = a.zero().into_coeffs();
    let o = a.offset(d);
    e[o..o + local.len()].clone_from_slice(local);
    Element::new(e)
}

/// Homogeneous chain generators for multiplication by a linear form (or by
/// zero), sorted by length descending, then degree, then selection order.
pub fn jordan_chain_basis(a: &GradedAlgebra, l: &Element) -> Result<Vec<Chain>> {
    let field = a.field();
    let j = a.socle_degree();
    if l.is_zero() {
        return Ok((0..a.dimension())
            .map(|i| Chain {
                generator: a.unit(i),
                degree: a.basis_degree(i),
                length: 1,
            })
            .collect());
    }
    if a.element_degree(l) != Some(1) {
        return Err(Error::NotLinear);
    }
    let powers = GradedPowers::new(a, l, 1);
    let kernel = |d: u32, k: u32| -> Vec<Vec<Scalar>> {
        match powers.get(d, k) {
            Some(m) => m.kernel_basis().row_vectors(),
            None => ExactMatrix::identity(field, a.h(d)).row_vectors(),
        }
    };
    let mut chains = Vec::new();
    for d in 0..=j {
        let h = a.h(d);
        if h == 0 {
            continue;
        }
        for k in 1..=(j - d + 1) {
            let mut w = RowSpace::new(field, h);
            for v in kernel(d, k - 1) {
                w.insert(&v);
            }
            if d > 0 {
                let step = powers.get(d - 1, 1).expect("adjacent degrees");
                for u in kernel(d - 1, k + 1) {
                    w.insert(&step.mul_vec(&u));
                }
            }
            for v in kernel(d, k) {
                if w.insert(&v) {
                    chains.push(Chain {
                        generator: embed(a, d, &v),
                        degree: d,
                        length: k as usize,
                    });
                }
            }
        }
    }
    chains.sort_by(|x, y| y.length.cmp(&x.length).then(x.degree.cmp(&y.degree)));
    Ok(chains)
}

/// Lengths of the chains as a partition.
pub fn chain_type(chains: &[Chain]) -> Partition {
    Partition::from_unsorted(chains.iter().map(|c| c.length).collect())
}

/// `p >= q` in dominance; false when incomparable.
pub fn dominates(p: &Partition, q: &Partition) -> Result<bool> {
    Ok(dominance_compare(p, q)?.is_ge())
}
