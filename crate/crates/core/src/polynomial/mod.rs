//! Laurent polynomials, the Kauffman bracket, Jones polynomials and their
//! behaviour at `t = -1`.
//!
//! Brackets use the variable `A`; Jones polynomials use `x = t^(1/2)`, so
//! `A^k` becomes `x^(-k/2)`. Evaluation at `t = -1` takes `x = i`. The
//! quantities read off there (`|V(-1)|` and `V'(-1)/V(-1)`) do not depend on
//! which square root of `-1` is used.

mod gauss;
mod laurent;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::diagram::{LinkDiagram, Orientation, Resolution};

pub use gauss::GaussRational;
pub use laurent::LaurentPoly;

pub const DEFAULT_BRACKET_BUDGET: u64 = 1 << 26;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("skein expansion exceeded its budget of {budget} nodes")]
    ResourceLimit { budget: u64 },
    #[error("V(-1) = 0")]
    ZeroDeterminant,
    #[error("V'(-1)/V(-1) = {0} is not real")]
    NonRealRatio(String),
    #[error("|V(-1)| = {0} is not an integer")]
    NonIntegralDeterminant(String),
    #[error("bracket exponent {0} is odd")]
    OddExponent(i64),
}

/// `-A^2 - A^-2`, the value of a disjoint circle.
pub fn loop_value() -> LaurentPoly {
    LaurentPoly::from_terms([(2, -1), (-2, -1)])
}

/// Memoized state-sum expansion. One engine per worker; the memo is keyed
/// on canonical diagram strings so repeated subdiagrams cost one lookup.
pub struct BracketEngine {
    memo: HashMap<String, LaurentPoly>,
    budget: u64,
    nodes: u64,
}

impl Default for BracketEngine {
    fn default() -> Self {
        Self::new(DEFAULT_BRACKET_BUDGET)
    }
}

impl BracketEngine {
    pub fn new(budget: u64) -> Self {
        BracketEngine {
            memo: HashMap::new(),
            budget,
            nodes: 0,
        }
    }

    /// Expansion nodes visited so far.
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    pub fn bracket(&mut self, d: &LinkDiagram) -> Result<LaurentPoly, PolyError> {
        let loops = d.free_loops();
        if d.crossing_count() == 0 {
            return Ok(loop_value().pow(loops.saturating_sub(1) as u32));
        }
        if loops > 0 {
            let core = self.bracket(&d.without_free_loops())?;
            return Ok(&core * &loop_value().pow(loops as u32));
        }
        let key = d.canonical_key();
        if let Some(p) = self.memo.get(&key) {
            return Ok(p.clone());
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(PolyError::ResourceLimit {
                budget: self.budget,
            });
        }
        let one = d.resolve(0, Resolution::One).expect("crossing 0 exists");
        let zero = d.resolve(0, Resolution::Zero).expect("crossing 0 exists");
        let p1 = self.bracket(&one)?.shift(1);
        let p0 = self.bracket(&zero)?.shift(-1);
        let p = &p1 + &p0;
        self.memo.insert(key, p.clone());
        Ok(p)
    }

    pub fn jones(&mut self, d: &LinkDiagram, o: &Orientation) -> Result<LaurentPoly, PolyError> {
        let b = self.bracket(d)?;
        bracket_to_jones(&b, d.writhe(o))
    }
}

/// `<D>` with the default budget.
pub fn kauffman_bracket(d: &LinkDiagram) -> Result<LaurentPoly, PolyError> {
    BracketEngine::default().bracket(d)
}

/// Jones polynomial in `x = t^(1/2)`.
pub fn jones(d: &LinkDiagram, o: &Orientation) -> Result<LaurentPoly, PolyError> {
    BracketEngine::default().jones(d, o)
}

/// `(-A^3)^(-w) <D>`, rewritten in `t^(1/2)`.
pub fn bracket_to_jones(bracket: &LaurentPoly, writhe: i64) -> Result<LaurentPoly, PolyError> {
    let sign = if writhe.rem_euclid(2) == 0 { 1 } else { -1 };
    let mut terms = Vec::new();
    for (k, c) in bracket.terms() {
        let k = k - 3 * writhe;
        if k % 2 != 0 {
            return Err(PolyError::OddExponent(k));
        }
        terms.push((-k / 2, sign * c));
    }
    Ok(LaurentPoly::from_terms(terms))
}

/// `|V(-1)|`.
pub fn determinant_from_jones(v: &LaurentPoly) -> Result<u64, PolyError> {
    let z = v.eval_at_i();
    let bad = || PolyError::NonIntegralDeterminant(z.to_string());
    let a = z.axis_abs().ok_or_else(bad)?;
    if !a.is_integer() {
        return Err(bad());
    }
    a.to_integer().to_u64().ok_or_else(bad)
}

pub fn determinant_jones(d: &LinkDiagram, o: &Orientation) -> Result<u64, PolyError> {
    determinant_from_jones(&jones(d, o)?)
}

/// `V'(-1)/V(-1)` for `V` in `x = t^(1/2)`, using `dV/dt = (dV/dx)/(2x)`.
pub fn log_derivative_at_minus_one(v: &LaurentPoly) -> Result<BigRational, PolyError> {
    let value = v.eval_at_i();
    if value.is_zero() {
        return Err(PolyError::ZeroDeterminant);
    }
    let dx = v.derivative().eval_at_i();
    let two_i = GaussRational::from_ints(0, 2);
    let ratio = &dx / &(&two_i * &value);
    if !ratio.is_real() {
        return Err(PolyError::NonRealRatio(ratio.to_string()));
    }
    Ok(ratio.re)
}

pub(crate) fn int(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

pub(crate) fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
