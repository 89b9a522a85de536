//! Dense truncated power series in one variable with polynomial coefficients.

use std::fmt;

use num_traits::{One, Signed};

use super::{ExactError, MultiPoly};

/// `sum_{k=0}^{N} c_k t^k`, always carrying exactly `N + 1` coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<MultiPoly>,
}

impl TruncSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![MultiPoly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(MultiPoly::one(), order)
    }

    pub fn constant(c: MultiPoly, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// Pads with zeros or truncates to `order`.
    pub fn from_coeffs(mut coeffs: Vec<MultiPoly>, order: usize) -> Self {
        coeffs.resize(order + 1, MultiPoly::zero());
        Self { coeffs }
    }

    /// Reads a polynomial as a series in `var`, the remaining variables
    /// becoming coefficients.
    pub fn from_poly_in(p: &MultiPoly, var: &str, order: usize) -> Self {
        let mut coeffs = vec![MultiPoly::zero(); order + 1];
        let vars = p.vars().to_vec();
        let pos = vars.iter().position(|v| v == var);
        for (e, c) in p.terms() {
            let k = pos.map_or(0, |i| e[i] as usize);
            if k > order {
                continue;
            }
            let mut rest = e.clone();
            if let Some(i) = pos {
                rest[i] = 0;
            }
            let term = MultiPoly::from_terms(vars.clone(), [(rest, c.clone())]);
            coeffs[k] = &coeffs[k] + &term;
        }
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &MultiPoly {
        &self.coeffs[k]
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self {
            coeffs: (0..=n)
                .map(|k| &self.coeffs[k] + &other.coeffs[k])
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self {
            coeffs: (0..=n)
                .map(|k| &self.coeffs[k] - &other.coeffs[k])
                .collect(),
        }
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![MultiPoly::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self { coeffs: out }
    }

    pub fn scale(&self, c: &MultiPoly) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.order());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Multiplicative inverse; the constant coefficient must be `1` or `-1`.
    pub fn inverse(&self) -> Result<Self, ExactError> {
        let c0 = &self.coeffs[0];
        let unit = c0.constant_term();
        if c0.num_terms() != 1 || !unit.abs().is_one() {
            return Err(ExactError::NonUnitConstantTerm(c0.to_canonical_string()));
        }
        let n = self.order();
        let mut inv = vec![MultiPoly::zero(); n + 1];
        inv[0] = MultiPoly::constant(unit.clone());
        // inv_k = -unit * sum_{j=1}^{k} a_j inv_{k-j}, using unit^{-1} = unit
        for k in 1..=n {
            let mut acc = MultiPoly::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() && !inv[k - j].is_zero() {
                    acc = &acc + &(&self.coeffs[j] * &inv[k - j]);
                }
            }
            inv[k] = acc.scale(&(-unit.clone()));
        }
        Ok(Self { coeffs: inv })
    }

    /// Evaluates every coefficient under a substitution.
    pub fn map_coeffs(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Coefficients as polynomial strings, lowest order first.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs
            .iter()
            .map(|c| c.to_canonical_string())
            .collect()
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncSeries[")?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "t^{k}: {c}")?;
        }
        write!(f, "]")
    }
}

/// Expands `num / den` as a power series in `var` up to `t^order`.
///
/// `den` must have constant term `+1` or `-1`.
pub fn series_from_rational(
    num: &MultiPoly,
    den: &MultiPoly,
    var: &str,
    order: usize,
) -> Result<TruncSeries, ExactError> {
    let n = TruncSeries::from_poly_in(num, var, order);
    let d = TruncSeries::from_poly_in(den, var, order);
    Ok(n.mul(&d.inverse()?))
}

/// `1 - a*t` read as a series.
pub fn one_minus(a: &MultiPoly, order: usize) -> TruncSeries {
    let mut s = TruncSeries::one(order);
    if order >= 1 {
        s.coeffs[1] = -a;
    }
    s
}

/// `(1 - t)^e` for a possibly negative integer exponent.
pub fn one_minus_t_pow(e: i64, order: usize) -> TruncSeries {
    let base = one_minus(&MultiPoly::one(), order);
    if e >= 0 {
        base.pow(e as u32)
    } else {
        base.inverse().expect("unit constant term").pow((-e) as u32)
    }
}
