//! Truncated exponential generating series: f = sum c_m x^m / m!.
//!
//! Products follow the EGF convolution law
//! `(f*g)_m = sum_a binom(m,a) f_a g_{m-a}`, which is exactly how the
//! marked-point distribution binomials enter the localization relations.

use crate::affine::{AffineExpr, ArithError};
use crate::rat::{binomial, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EgfSeries {
    /// Coefficient of x^m/m! at index m; length = order + 1.
    pub coeffs: Vec<AffineExpr>,
}

impl EgfSeries {
    pub fn zero(order: usize) -> Self {
        EgfSeries {
            coeffs: vec![AffineExpr::zero(); order + 1],
        }
    }

    pub fn from_coeffs(coeffs: Vec<AffineExpr>) -> Self {
        EgfSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, m: usize) -> &AffineExpr {
        &self.coeffs[m]
    }

    pub fn add(&self, other: &EgfSeries) -> EgfSeries {
        let order = self.order().min(other.order());
        let mut out = EgfSeries::zero(order);
        for m in 0..=order {
            out.coeffs[m] = self.coeffs[m].add(&other.coeffs[m]);
        }
        out
    }

    pub fn sub(&self, other: &EgfSeries) -> EgfSeries {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> EgfSeries {
        EgfSeries {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn scale(&self, r: &Rat) -> EgfSeries {
        EgfSeries {
            coeffs: self.coeffs.iter().map(|c| c.scale(r)).collect(),
        }
    }

    pub fn scale_poly(&self, p: &crate::mpoly::MPoly) -> EgfSeries {
        EgfSeries {
            coeffs: self.coeffs.iter().map(|c| c.scale_poly(p)).collect(),
        }
    }

    /// d/dx: shifts indices down by one, losing the top coefficient.
    pub fn derivative(&self) -> EgfSeries {
        EgfSeries {
            coeffs: self.coeffs[1..].to_vec(),
        }
    }

    /// Substitutes x -> -x: negates odd coefficients.
    pub fn flip_x(&self) -> EgfSeries {
        EgfSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(m, c)| if m % 2 == 1 { c.neg() } else { c.clone() })
                .collect(),
        }
    }

    /// EGF product truncated at `order`. Errors if two unknown-bearing
    /// coefficients would multiply.
    pub fn mul(&self, other: &EgfSeries, order: usize) -> Result<EgfSeries, ArithError> {
        let mut out = EgfSeries::zero(order);
        for m in 0..=order {
            let mut acc = AffineExpr::zero();
            for a in 0..=m {
                if a > self.order() || m - a > other.order() {
                    continue;
                }
                let f = &self.coeffs[a];
                let g = &other.coeffs[m - a];
                if f.is_zero() || g.is_zero() {
                    continue;
                }
                let prod = f.mul(g)?;
                acc = acc.add(&prod.scale(&binomial(m as u64, a as u64)));
            }
            out.coeffs[m] = acc;
        }
        Ok(out)
    }
}
