//! Coinvariant algebras of the reflection groups `G(r,1,n)` and `G(3,3,3)`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::algebra::{build_algebra, AlgebraSpec};
use crate::error::{Error, Result};
use crate::extension::{ExtensionTriple, RingMapSpec};
use crate::field::Field;
use crate::parse::parse_polynomial;
use crate::poly::{Polynomial, VariableTable};

fn check_rn(r: u32, n: usize) -> Result<()> {
    if r == 0 || n == 0 {
        return Err(Error::InvalidArgument(format!("r and n must be positive (r = {r}, n = {n})")));
    }
    Ok(())
}

fn x_table(n: usize) -> Result<Arc<VariableTable>> {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    Ok(Arc::new(VariableTable::standard(&names)?))
}

/// `e_i(x_1^r, ..., x_n^r)` in `Q[x1..xn]`.
pub fn elementary_r_symmetric(r: u32, n: usize, i: usize) -> Result<Polynomial> {
    check_rn(r, n)?;
    if i == 0 || i > n {
        return Err(Error::InvalidArgument(format!("need 1 <= i <= n, got i = {i}, n = {n}")));
    }
    let table = x_table(n)?;
    elementary_in(&table, Field::Rationals, r, n, i)
}

fn elementary_in(table: &Arc<VariableTable>, field: Field, r: u32, n: usize, i: usize) -> Result<Polynomial> {
    // e[k] over the first processed variables
    let mut e = vec![Polynomial::zero(table.clone(), field); i + 1];
    e[0] = Polynomial::one(table.clone(), field);
    for v in 0..n {
        let p = Polynomial::variable(table.clone(), field, v).pow(r)?;
        for k in (1..=i.min(v + 1)).rev() {
            e[k] = e[k].add(&e[k - 1].mul(&p)?)?;
        }
    }
    Ok(e.pop().expect("nonempty"))
}

/// `Q[x1..xn]/(e_1(r,n), ..., e_n(r,n))`, of dimension `r^n n!`.
pub fn coinv_gr1n(r: u32, n: usize) -> Result<AlgebraSpec> {
    check_rn(r, n)?;
    let table = x_table(n)?;
    let q = Field::Rationals;
    let gens = (1..=n).map(|i| elementary_in(&table, q, r, n, i)).collect::<Result<_>>()?;
    Ok(AlgebraSpec::ideal(table, q, gens).with_label(format!("G({r},1,{n}) coinvariants")))
}

/// `Q[xn]/(xn^{nr})`.
pub fn coinv_gr1n_relative(r: u32, n: usize) -> Result<AlgebraSpec> {
    check_rn(r, n)?;
    let table = Arc::new(VariableTable::standard(&[format!("x{n}")])?);
    let q = Field::Rationals;
    let gen = Polynomial::variable(table.clone(), q, 0).pow(n as u32 * r)?;
    Ok(AlgebraSpec::ideal(table, q, vec![gen]).with_label(format!("G({r},1,{n}) relative coinvariants")))
}

/// `A = Q[xn]/(xn^{nr}) -> C = coinv(r,n) -> B = coinv(r,n-1)`.
pub fn gr1n_chain_triple(r: u32, n: usize) -> Result<ExtensionTriple> {
    check_rn(r, n)?;
    if n < 2 {
        return Err(Error::InvalidArgument("the chain triple needs n >= 2".into()));
    }
    let a = build_algebra(coinv_gr1n_relative(r, n)?)?;
    let b = build_algebra(coinv_gr1n(r, n - 1)?)?;
    let c = build_algebra(coinv_gr1n(r, n)?)?;
    let q = Field::Rationals;
    let empty = HashMap::new();
    let iota = RingMapSpec::from_named(a.table(), c.table(), q, &empty)?;
    let pi = RingMapSpec::from_named(c.table(), b.table(), q, &empty)?;
    ExtensionTriple::new(a, b, c, iota, pi)
}

fn ideal_from(table: Arc<VariableTable>, gens: &[&str], label: &str) -> AlgebraSpec {
    let q = Field::Rationals;
    let gens = gens
        .iter()
        .map(|g| parse_polynomial(g, &table, q).expect("preset polynomial"))
        .collect();
    AlgebraSpec::ideal(table, q, gens).with_label(label)
}

/// `R_W` for `W = G(3,3,3)`.
pub fn g333_w() -> AlgebraSpec {
    let t = Arc::new(VariableTable::standard(&["x", "y", "z"]).expect("distinct names"));
    ideal_from(t, &["x^3+y^3+z^3", "x^3y^3+x^3z^3+y^3z^3", "xyz"], "G(3,3,3) coinvariants")
}

/// `R_K` for `K = G(3,3,2)`.
pub fn g333_k() -> AlgebraSpec {
    let t = Arc::new(VariableTable::standard(&["x", "y"]).expect("distinct names"));
    ideal_from(t, &["x^3+y^3", "xy"], "G(3,3,2) coinvariants")
}

/// `R_W^K = Q[b,c]/(b^3 - c^6, bc)` with `deg b = 2`, `deg c = 1`.
pub fn g333_relative() -> AlgebraSpec {
    let t = Arc::new(VariableTable::new(vec![("b".into(), 2), ("c".into(), 1)]).expect("distinct names"));
    ideal_from(t, &["b^3-c^6", "bc"], "G(3,3,3) relative coinvariants")
}

/// `R_W^K -> R_W -> R_K` with `b -> xy`, `c -> z` and `z -> 0`.
pub fn g333_triple() -> Result<ExtensionTriple> {
    let a = build_algebra(g333_relative())?;
    let b = build_algebra(g333_k())?;
    let c = build_algebra(g333_w())?;
    let q = Field::Rationals;
    let images: HashMap<String, Polynomial> = [("b", "xy"), ("c", "z")]
        .into_iter()
        .map(|(v, p)| Ok((v.to_string(), parse_polynomial(p, c.table(), q)?)))
        .collect::<Result<_>>()?;
    let iota = RingMapSpec::from_named(a.table(), c.table(), q, &images)?;
    let pi = RingMapSpec::from_named(c.table(), b.table(), q, &HashMap::new())?;
    ExtensionTriple::new(a, b, c, iota, pi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoinvariantPreset {
    Gr1n { r: u32, n: usize },
    Gr1nRelative { r: u32, n: usize },
    G333W,
    G333K,
    G333Relative,
}

impl CoinvariantPreset {
    pub const NAMES: [&'static str; 5] = ["g-r-1-n", "g-r-1-n-relative", "g333", "g333-k", "g333-relative"];

    /// Resolve a preset name; `r` and `n` are used only by the `G(r,1,n)` presets.
    pub fn from_name(name: &str, r: u32, n: usize) -> Result<Self> {
        let p = match name {
            "g-r-1-n" => CoinvariantPreset::Gr1n { r, n },
            "g-r-1-n-relative" => CoinvariantPreset::Gr1nRelative { r, n },
            "g333" | "g333-w" => CoinvariantPreset::G333W,
            "g333-k" => CoinvariantPreset::G333K,
            "g333-relative" => CoinvariantPreset::G333Relative,
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "unknown preset {name:?}; expected one of {}",
                    Self::NAMES.join(", ")
                )))
            }
        };
        if let CoinvariantPreset::Gr1n { r, n } | CoinvariantPreset::Gr1nRelative { r, n } = p {
            check_rn(r, n)?;
        }
        Ok(p)
    }

    pub fn spec(&self) -> Result<AlgebraSpec> {
        match *self {
            CoinvariantPreset::Gr1n { r, n } => coinv_gr1n(r, n),
            CoinvariantPreset::Gr1nRelative { r, n } => coinv_gr1n_relative(r, n),
            CoinvariantPreset::G333W => Ok(g333_w()),
            CoinvariantPreset::G333K => Ok(g333_k()),
            CoinvariantPreset::G333Relative => Ok(g333_relative()),
        }
    }

    /// The free-extension triple the preset belongs to, when there is one.
    pub fn triple(&self) -> Option<Result<ExtensionTriple>> {
        match *self {
            CoinvariantPreset::Gr1n { r, n } | CoinvariantPreset::Gr1nRelative { r, n } if n >= 2 => {
                Some(gr1n_chain_triple(r, n))
            }
            CoinvariantPreset::Gr1n { .. } | CoinvariantPreset::Gr1nRelative { .. } => None,
            _ => Some(g333_triple()),
        }
    }
}

impl fmt::Display for CoinvariantPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoinvariantPreset::Gr1n { r, n } => write!(f, "G({r},1,{n})"),
            CoinvariantPreset::Gr1nRelative { r, n } => write!(f, "G({r},1,{n}) relative"),
            CoinvariantPreset::G333W => f.write_str("G(3,3,3)"),
            CoinvariantPreset::G333K => f.write_str("G(3,3,2)"),
            CoinvariantPreset::G333Relative => f.write_str("G(3,3,3) relative"),
        }
    }
}

impl FromStr for CoinvariantPreset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CoinvariantPreset::from_name(s, 1, 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::verify_free_extension;
    use crate::jordan::{element_jordan_type, lefschetz_certify, LefschetzMode};
    use crate::partition::Partition;

    #[test]
    fn elementary_examples() {
        assert_eq!(elementary_r_symmetric(2, 2, 1).unwrap().to_string(), "x1^2 + x2^2");
        assert_eq!(elementary_r_symmetric(2, 2, 2).unwrap().to_string(), "x1^2*x2^2");
        assert_eq!(elementary_r_symmetric(1, 3, 1).unwrap().to_string(), "x1 + x2 + x3");
        assert_eq!(elementary_r_symmetric(1, 3, 3).unwrap().to_string(), "x1*x2*x3");
        assert!(elementary_r_symmetric(1, 3, 4).is_err());
        assert!(elementary_r_symmetric(1, 3, 0).is_err());
    }

    #[test]
    fn gr1n_dimensions() {
        let a = build_algebra(coinv_gr1n(2, 2).unwrap()).unwrap();
        assert_eq!(a.hilbert(), &[1, 2, 2, 2, 1]);
        assert_eq!(build_algebra(coinv_gr1n(1, 3).unwrap()).unwrap().dimension(), 6);
        assert_eq!(build_algebra(coinv_gr1n(3, 2).unwrap()).unwrap().dimension(), 18);
        for (r, n) in [(1, 2), (2, 3), (3, 3), (1, 4), (4, 2)] {
            let d = build_algebra(coinv_gr1n(r, n).unwrap()).unwrap().dimension();
            let fact: usize = (1..=n).product();
            assert_eq!(d, (r as usize).pow(n as u32) * fact);
        }
    }

    #[test]
    fn relative_presets() {
        assert_eq!(build_algebra(coinv_gr1n_relative(2, 2).unwrap()).unwrap().hilbert(), &[1, 1, 1, 1]);
        assert_eq!(build_algebra(coinv_gr1n_relative(1, 2).unwrap()).unwrap().hilbert(), &[1, 1]);
        assert_eq!(build_algebra(coinv_gr1n_relative(3, 3).unwrap()).unwrap().dimension(), 9);
    }

    #[test]
    fn chain_triples_are_free() {
        for (r, n) in [(1, 2), (2, 2), (1, 3), (2, 3), (3, 2)] {
            let t = gr1n_chain_triple(r, n).unwrap();
            assert!(verify_free_extension(&t).unwrap().verdict, "G({r},1,{n})");
        }
        assert!(gr1n_chain_triple(2, 1).is_err());
    }

    #[test]
    fn gr1n_is_sl() {
        for (r, n) in [(1, 3), (2, 2), (3, 2), (2, 3)] {
            let a = build_algebra(coinv_gr1n(r, n).unwrap()).unwrap();
            assert!(lefschetz_certify(&a, LefschetzMode::Graded, 7, 0).unwrap().verdict);
        }
    }

    #[test]
    fn g333() {
        let t = g333_triple().unwrap();
        assert_eq!(t.a.hilbert(), &[1, 1, 2, 1, 2, 1, 1]);
        assert_eq!(t.a.local_hilbert(), vec![1, 2, 2, 1, 1, 1, 1]);
        assert_eq!(t.c.hilbert(), &[1, 3, 6, 8, 9, 9, 8, 6, 3, 1]);
        assert_eq!(t.c.dimension(), 54);
        assert_eq!(t.b.dimension(), 6);
        assert!(verify_free_extension(&t).unwrap().verdict);

        let bc = t.a.normal_form(&parse_polynomial("b+c", t.a.table(), Field::Rationals).unwrap()).unwrap();
        let p = element_jordan_type(&t.a, &bc).unwrap();
        assert_eq!(p, Partition::new(vec![7, 2]).unwrap());
        assert!(!lefschetz_certify(&t.a, LefschetzMode::Graded, 7, 0).unwrap().verdict);
        assert!(lefschetz_certify(&t.a, LefschetzMode::Local, 7, 0).unwrap().verdict);
    }

    #[test]
    fn preset_names() {
        assert_eq!(
            CoinvariantPreset::from_name("g-r-1-n", 2, 3).unwrap(),
            CoinvariantPreset::Gr1n { r: 2, n: 3 }
        );
        assert_eq!("g333".parse::<CoinvariantPreset>().unwrap(), CoinvariantPreset::G333W);
        assert!(CoinvariantPreset::from_name("g-r-1-n", 0, 3).is_err());
        assert!(CoinvariantPreset::from_name("e8", 1, 1).is_err());
        assert!(CoinvariantPreset::G333K.triple().is_some());
        assert!(CoinvariantPreset::Gr1nRelative { r: 1, n: 1 }.triple().is_none());
    }
}
