//! Multivariate polynomials with exact differentiation.
//!
//! Hamiltonian profiles and synthetic action profiles are polynomials in the
//! momentum coordinates (F_1, ..., F_n). Keeping them polynomial makes every
//! derivative up to second order closed-form, so hypothesis checks evaluate
//! exactly instead of through finite differences.

use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// A polynomial in `nvars` real variables, stored as a map from exponent
/// tuples to coefficients. Terms are kept in the BTreeMap's lexicographic
/// order, which makes iteration, serialization, and summation deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, f64>,
}

impl Poly {
    /// Zero polynomial in `nvars` variables.
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    /// Build from a list of (exponents, coefficient) terms. Duplicate
    /// exponent tuples are summed; exact zero coefficients are dropped.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, f64)>,
    {
        let mut map: BTreeMap<Vec<u32>, f64> = BTreeMap::new();
        for (exps, coeff) in terms {
            if exps.len() != nvars {
                return Err(Error::ExponentArity {
                    got: exps.len(),
                    expected: nvars,
                });
            }
            if !coeff.is_finite() {
                return Err(Error::InvalidModel(format!(
                    "non-finite polynomial coefficient {coeff}"
                )));
            }
            *map.entry(exps).or_insert(0.0) += coeff;
        }
        map.retain(|_, c| *c != 0.0);
        Ok(Self { nvars, terms: map })
    }

    /// Convenience constructor: a single term c * prod F_i^{e_i}.
    pub fn term(nvars: usize, exps: &[u32], coeff: f64) -> Self {
        Self::from_terms(nvars, [(exps.to_vec(), coeff)]).expect("term arity checked by caller")
    }

    /// Constant polynomial.
    pub fn constant(nvars: usize, c: f64) -> Self {
        if c == 0.0 {
            return Self::zero(nvars);
        }
        Self::term(nvars, &vec![0u32; nvars], c)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterate terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], f64)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), *c))
    }

    /// Largest total degree over all terms (0 for the zero polynomial).
    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Evaluate at a point. Summation runs in canonical term order.
    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.nvars);
        let mut acc = 0.0;
        for (exps, coeff) in &self.terms {
            let mut t = *coeff;
            for (xi, &e) in x.iter().zip(exps.iter()) {
                if e > 0 {
                    t *= xi.powi(e as i32);
                }
            }
            acc += t;
        }
        acc
    }

    /// Exact partial derivative with respect to variable `var`.
    pub fn partial(&self, var: usize) -> Self {
        assert!(var < self.nvars, "variable index out of range");
        let mut out: BTreeMap<Vec<u32>, f64> = BTreeMap::new();
        for (exps, coeff) in &self.terms {
            let e = exps[var];
            if e == 0 {
                continue;
            }
            let mut de = exps.clone();
            de[var] = e - 1;
            *out.entry(de).or_insert(0.0) += coeff * f64::from(e);
        }
        out.retain(|_, c| *c != 0.0);
        Self {
            nvars: self.nvars,
            terms: out,
        }
    }

    /// Value of the constant term, i.e. the polynomial evaluated at the origin.
    pub fn at_origin(&self) -> f64 {
        self.terms
            .get(&vec![0u32; self.nvars])
            .copied()
            .unwrap_or(0.0)
    }

    /// Gradient at a point.
    pub fn gradient(&self, x: &[f64]) -> Vec<f64> {
        (0..self.nvars).map(|i| self.partial(i).eval(x)).collect()
    }

    /// Rename variables: term exponents are permuted so that new variable
    /// `perm[i]` receives the exponent of old variable `i`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.nvars);
        let mut out = BTreeMap::new();
        for (exps, coeff) in &self.terms {
            let mut pe = vec![0u32; self.nvars];
            for (i, &e) in exps.iter().enumerate() {
                pe[perm[i]] = e;
            }
            out.insert(pe, *coeff);
        }
        Self {
            nvars: self.nvars,
            terms: out,
        }
    }

    /// Scale every coefficient by `a` and, if `shift` is nonzero, add it to
    /// the constant term.
    pub fn affine(&self, a: f64, shift: f64) -> Self {
        let mut terms: BTreeMap<Vec<u32>, f64> =
            self.terms.iter().map(|(e, c)| (e.clone(), a * c)).collect();
        if shift != 0.0 {
            *terms.entry(vec![0u32; self.nvars]).or_insert(0.0) += shift;
        }
        terms.retain(|_, c| *c != 0.0);
        Self {
            nvars: self.nvars,
            terms,
        }
    }
}

/// Serialized shape of one polynomial term.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct TermRecord {
    exponents: Vec<u32>,
    coeff: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct PolyRecord {
    terms: Vec<TermRecord>,
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rec = PolyRecord {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermRecord {
                    exponents: e.clone(),
                    coeff: *c,
                })
                .collect(),
        };
        rec.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rec = PolyRecord::deserialize(d)?;
        let nvars = rec
            .terms
            .first()
            .map(|t| t.exponents.len())
            .ok_or_else(|| D::Error::custom("polynomial must have at least one term"))?;
        Poly::from_terms(nvars, rec.terms.into_iter().map(|t| (t.exponents, t.coeff)))
            .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_and_partials_are_exact() {
        // H = F1^2/2 + F2
        let h = Poly::from_terms(2, [(vec![2, 0], 0.5), (vec![0, 1], 1.0)]).unwrap();
        assert_eq!(h.eval(&[3.0, 4.0]), 8.5);
        assert_eq!(h.partial(0).eval(&[3.0, 0.0]), 3.0);
        assert_eq!(h.partial(1).eval(&[3.0, 0.0]), 1.0);
        assert_eq!(h.partial(0).partial(0).eval(&[0.0, 0.0]), 1.0);
        assert_eq!(h.partial(1).partial(1).eval(&[0.0, 0.0]), 0.0);
    }

    #[test]
    fn duplicate_terms_merge_and_zeros_drop() {
        let p = Poly::from_terms(1, [(vec![1], 2.0), (vec![1], -2.0), (vec![0], 1.0)]).unwrap();
        assert_eq!(p.terms().count(), 1);
        assert_eq!(p.eval(&[100.0]), 1.0);
    }

    #[test]
    fn arity_mismatch_rejected() {
        assert!(Poly::from_terms(2, [(vec![1], 1.0)]).is_err());
    }

    #[test]
    fn total_degree() {
        let p = Poly::from_terms(2, [(vec![2, 1], 1.0), (vec![0, 1], 5.0)]).unwrap();
        assert_eq!(p.total_degree(), 3);
        assert_eq!(Poly::zero(2).total_degree(), 0);
    }

    #[test]
    fn permute_moves_exponents() {
        // p = F1^2 * F3 in 3 vars; swap vars 1 and 2 (0-indexed: 1 <-> 2).
        let p = Poly::from_terms(3, [(vec![2, 0, 1], 7.0)]).unwrap();
        let q = p.permute_vars(&[0, 2, 1]);
        assert_eq!(q.eval(&[2.0, 5.0, 1.0]), 7.0 * 4.0 * 5.0);
    }

    #[test]
    fn json_round_trip() {
        let p = Poly::from_terms(2, [(vec![2, 0], 0.5), (vec![0, 1], -1.25)]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        let q: Poly = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
        assert_eq!(s, serde_json::to_string(&q).unwrap());
    }
}
