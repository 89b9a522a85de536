//! Sparse multivariate polynomials with arbitrary-precision integer coefficients.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::ExactError;

/// A polynomial in named variables over `ZZ`.
///
/// The variable list is always the sorted set of variables that actually
/// occur, so two polynomials are equal exactly when their term maps agree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Self {
            vars: Vec::new(),
            terms,
        }
    }

    pub fn var(name: &str) -> Self {
        Self::monomial(BigInt::one(), &[(name, 1)])
    }

    /// `c * x1^a1 * ... * xk^ak`; repeated names multiply together.
    pub fn monomial(c: impl Into<BigInt>, powers: &[(&str, u32)]) -> Self {
        let mut exps: BTreeMap<String, u32> = BTreeMap::new();
        for (name, e) in powers {
            *exps.entry((*name).to_string()).or_default() += e;
        }
        let vars: Vec<String> = exps.keys().cloned().collect();
        let exp: Vec<u32> = exps.values().copied().collect();
        Self::from_terms(vars, [(exp, c.into())])
    }

    /// Builds a polynomial from raw terms over `vars`, which need not be
    /// sorted or minimal. Duplicate exponent vectors are summed.
    pub fn from_terms<I>(vars: Vec<String>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut order: Vec<usize> = (0..vars.len()).collect();
        order.sort_by(|&a, &b| vars[a].cmp(&vars[b]));
        let mut sorted_vars: Vec<String> = Vec::with_capacity(vars.len());
        let mut slot = vec![0usize; vars.len()];
        for &i in &order {
            if sorted_vars.last() != Some(&vars[i]) {
                sorted_vars.push(vars[i].clone());
            }
            slot[i] = sorted_vars.len() - 1;
        }
        let mut map: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (exp, c) in terms {
            assert_eq!(exp.len(), vars.len(), "exponent vector length mismatch");
            if c.is_zero() {
                continue;
            }
            let mut e = vec![0u32; sorted_vars.len()];
            for (i, a) in exp.iter().enumerate() {
                e[slot[i]] += a;
            }
            *map.entry(e).or_insert_with(BigInt::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Self {
            vars: sorted_vars,
            terms: map,
        }
        .pruned()
    }

    fn pruned(mut self) -> Self {
        let used: Vec<bool> = (0..self.vars.len())
            .map(|i| self.terms.keys().any(|e| e[i] > 0))
            .collect();
        if used.iter().all(|&u| u) {
            return self;
        }
        let keep: Vec<usize> = (0..self.vars.len()).filter(|&i| used[i]).collect();
        let vars = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let terms = std::mem::take(&mut self.terms)
            .into_iter()
            .map(|(e, c)| (keep.iter().map(|&i| e[i]).collect(), c))
            .collect();
        Self { vars, terms }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Vec::new()).is_some_and(|c| c.is_one())
    }

    /// The constant term, zero if absent.
    pub fn constant_term(&self) -> BigInt {
        self.terms
            .get(&vec![0; self.vars.len()])
            .cloned()
            .unwrap_or_default()
    }

    /// Coefficient of the monomial given as `(name, exponent)` pairs.
    pub fn coeff(&self, powers: &[(&str, u32)]) -> BigInt {
        let m = Self::monomial(1, powers);
        let Some((exp, _)) = m.terms.iter().next() else {
            return BigInt::zero();
        };
        let mut full = vec![0u32; self.vars.len()];
        for (name, e) in m.vars.iter().zip(exp) {
            match self.vars.binary_search(name) {
                Ok(i) => full[i] = *e,
                Err(_) => return BigInt::zero(),
            }
        }
        self.terms.get(&full).cloned().unwrap_or_default()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, name: &str) -> u32 {
        match self.vars.binary_search_by(|v| v.as_str().cmp(name)) {
            Ok(i) => self.terms.keys().map(|e| e[i]).max().unwrap_or(0),
            Err(_) => 0,
        }
    }

    /// Weighted degree of every term; unknown variables get weight 1.
    fn weighted_degrees<'a>(
        &'a self,
        weight: &'a dyn Fn(&str) -> u32,
    ) -> impl Iterator<Item = (u32, &'a Vec<u32>, &'a BigInt)> + 'a {
        let w: Vec<u32> = self.vars.iter().map(|v| weight(v)).collect();
        self.terms.iter().map(move |(e, c)| {
            let d = e.iter().zip(&w).map(|(a, b)| a * b).sum();
            (d, e, c)
        })
    }

    /// Splits into homogeneous components for the given variable weights.
    pub fn homogeneous_components(&self, weight: &dyn Fn(&str) -> u32) -> BTreeMap<u32, MultiPoly> {
        let mut parts: BTreeMap<u32, Vec<(Vec<u32>, BigInt)>> = BTreeMap::new();
        for (d, e, c) in self.weighted_degrees(weight) {
            parts.entry(d).or_default().push((e.clone(), c.clone()));
        }
        parts
            .into_iter()
            .map(|(d, ts)| (d, Self::from_terms(self.vars.clone(), ts)))
            .collect()
    }

    /// The common weighted degree if the polynomial is homogeneous and nonzero.
    pub fn homogeneous_degree(&self, weight: &dyn Fn(&str) -> u32) -> Option<u32> {
        let mut degs = self.weighted_degrees(weight).map(|(d, _, _)| d);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Re-expresses the exponent vectors over a sorted superset of variables.
    fn embedded(&self, target: &[String]) -> Vec<(Vec<u32>, &BigInt)> {
        let idx: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                target
                    .binary_search(v)
                    .expect("target must contain all variables")
            })
            .collect();
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut full = vec![0u32; target.len()];
                for (i, a) in e.iter().enumerate() {
                    full[idx[i]] = *a;
                }
                (full, c)
            })
            .collect()
    }

    fn merged_vars(a: &[String], b: &[String]) -> Vec<String> {
        let set: BTreeSet<&String> = a.iter().chain(b).collect();
        set.into_iter().cloned().collect()
    }

    /// Expresses this polynomial as a dense map over the given variable list,
    /// which must contain every variable of `self`.
    pub fn exponents_over(&self, vars: &[String]) -> Vec<(Vec<u32>, BigInt)> {
        let pos: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                vars.iter()
                    .position(|w| w == v)
                    .unwrap_or_else(|| panic!("variable {v} not in target list"))
            })
            .collect();
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut full = vec![0u32; vars.len()];
                for (i, a) in e.iter().enumerate() {
                    full[pos[i]] = *a;
                }
                (full, c.clone())
            })
            .collect()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Substitutes polynomials for variables. Variables without an entry in
    /// `subs` are left in place, so the map is a ring homomorphism.
    pub fn specialize(&self, subs: &BTreeMap<String, MultiPoly>) -> Self {
        let images: Vec<MultiPoly> = self
            .vars
            .iter()
            .map(|v| subs.get(v).cloned().unwrap_or_else(|| Self::var(v)))
            .collect();
        let mut cache: Vec<BTreeMap<u32, MultiPoly>> = vec![BTreeMap::new(); images.len()];
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut term = Self::constant(c.clone());
            for (i, &a) in e.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let p = cache[i]
                    .entry(a)
                    .or_insert_with(|| images[i].pow(a))
                    .clone();
                term = &term * &p;
            }
            out = &out + &term;
        }
        out
    }

    /// Renames variables; names absent from the map are kept.
    pub fn rename(&self, map: &BTreeMap<String, String>) -> Self {
        let vars = self
            .vars
            .iter()
            .map(|v| map.get(v).cloned().unwrap_or_else(|| v.clone()))
            .collect();
        Self::from_terms(vars, self.terms.iter().map(|(e, c)| (e.clone(), c.clone())))
    }

    /// Terms in graded-lex order: higher total degree first, ties broken by
    /// the lexicographically larger exponent vector.
    pub fn sorted_terms(&self) -> Vec<(&Vec<u32>, &BigInt)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|(a, _), (b, _)| grlex_desc(a, b));
        ts
    }

    /// Canonical text form, e.g. `2*t^2 + 3*c*t + c^2`.
    pub fn to_canonical_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let abs = c.abs();
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(i, &a)| {
                    if a == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{}", self.vars[i], a)
                    }
                })
                .collect();
            if factors.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

fn grlex_desc(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({})", self.to_canonical_string())
    }
}

impl From<i64> for MultiPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl From<BigInt> for MultiPoly {
    fn from(c: BigInt) -> Self {
        Self::constant(c)
    }
}

fn add_impl(a: &MultiPoly, b: &MultiPoly, negate_b: bool) -> MultiPoly {
    if a.vars == b.vars {
        let mut terms = a.terms.clone();
        for (e, c) in &b.terms {
            let entry = terms.entry(e.clone()).or_insert_with(BigInt::zero);
            if negate_b {
                *entry -= c;
            } else {
                *entry += c;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        return MultiPoly {
            vars: a.vars.clone(),
            terms,
        }
        .pruned();
    }
    let vars = MultiPoly::merged_vars(&a.vars, &b.vars);
    let mut terms: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
    for (e, c) in a.embedded(&vars) {
        *terms.entry(e).or_insert_with(BigInt::zero) += c;
    }
    for (e, c) in b.embedded(&vars) {
        let entry = terms.entry(e).or_insert_with(BigInt::zero);
        if negate_b {
            *entry -= c;
        } else {
            *entry += c;
        }
    }
    terms.retain(|_, c| !c.is_zero());
    MultiPoly { vars, terms }.pruned()
}

fn mul_impl(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() || b.is_zero() {
        return MultiPoly::zero();
    }
    let vars = MultiPoly::merged_vars(&a.vars, &b.vars);
    let ea = a.embedded(&vars);
    let eb = b.embedded(&vars);
    let mut terms: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
    for (x, cx) in &ea {
        for (y, cy) in &eb {
            let e: Vec<u32> = x.iter().zip(y).map(|(p, q)| p + q).collect();
            *terms.entry(e).or_insert_with(BigInt::zero) += *cx * *cy;
        }
    }
    terms.retain(|_, c| !c.is_zero());
    MultiPoly { vars, terms }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        add_impl(self, rhs, false)
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        add_impl(self, rhs, true)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        mul_impl(self, rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl std::iter::Sum for MultiPoly {
    fn sum<I: Iterator<Item = MultiPoly>>(iter: I) -> Self {
        iter.fold(MultiPoly::zero(), |acc, p| &acc + &p)
    }
}

impl std::iter::Product for MultiPoly {
    fn product<I: Iterator<Item = MultiPoly>>(iter: I) -> Self {
        iter.fold(MultiPoly::one(), |acc, p| &acc * &p)
    }
}

impl FromStr for MultiPoly {
    type Err = ExactError;

    /// Parses the canonical text form (and anything close to it: spacing is
    /// free, a factor may repeat, coefficients may appear anywhere in a term).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Parser {
            src: s.as_bytes(),
            pos: 0,
        }
        .parse()
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ExactError {
        ExactError::Parse(format!("{msg} at byte {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<BigInt, ExactError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse().map_err(|_| self.err("expected integer"))
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn term(&mut self) -> Result<MultiPoly, ExactError> {
        let mut acc = MultiPoly::one();
        loop {
            let factor = match self.peek() {
                Some(c) if c.is_ascii_digit() => MultiPoly::constant(self.number()?),
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    let name = self.ident();
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.skip_ws();
                        let e = self.number()?;
                        let e: u32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
                        MultiPoly::monomial(1, &[(&name, e)])
                    } else {
                        MultiPoly::var(&name)
                    }
                }
                _ => return Err(self.err("expected factor")),
            };
            acc = &acc * &factor;
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok(acc);
            }
        }
    }

    fn parse(mut self) -> Result<MultiPoly, ExactError> {
        let mut total = MultiPoly::zero();
        let mut first = true;
        loop {
            let negate = match self.peek() {
                None if first => return Err(self.err("empty input")),
                None => return Ok(total),
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                Some(b'+') if !first => {
                    self.pos += 1;
                    false
                }
                Some(_) if first => false,
                Some(_) => return Err(self.err("expected '+' or '-'")),
            };
            let t = self.term()?;
            total = if negate { &total - &t } else { &total + &t };
            first = false;
        }
    }
}

/// Shorthand for building polynomials in tests and examples.
pub fn poly(s: &str) -> MultiPoly {
    s.parse()
        .unwrap_or_else(|e| panic!("bad polynomial literal {s:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn difference_of_squares() {
        let a = poly("x + 1");
        let b = poly("x - 1");
        assert_eq!(&a * &b, poly("x^2 - 1"));
    }

    #[test]
    fn product_with_zero_has_no_terms() {
        let p = poly("3*x*y - 7");
        let z = &p * &MultiPoly::zero();
        assert!(z.is_zero());
        assert!(z.terms().is_empty());
        assert!(z.vars().is_empty());
    }

    #[test]
    fn expansion_of_q22() {
        let p = poly("t + c") * poly("2*t + c");
        assert_eq!(p, poly("2*t^2 + 3*c*t + c^2"));
        assert_eq!(p.to_canonical_string(), "c^2 + 3*c*t + 2*t^2");
    }

    #[test]
    fn vars_merge_by_name() {
        let a = poly("b + a");
        let b = poly("c - a");
        let s = &a + &b;
        assert_eq!(s.vars(), ["b", "c"]);
        assert_eq!(s, poly("b + c"));
    }

    #[test]
    fn canonical_string_ordering_and_signs() {
        assert_eq!(poly("1 - x + x^2*y").to_canonical_string(), "x^2*y - x + 1");
        assert_eq!(poly("-x").to_canonical_string(), "-x");
        assert_eq!(poly("0").to_canonical_string(), "0");
        assert_eq!(
            poly("y^2 + x*y + x^2").to_canonical_string(),
            "x^2 + x*y + y^2"
        );
        assert_eq!(poly("-2*eps_1_3*H").to_canonical_string(), "-2*H*eps_1_3");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("x +".parse::<MultiPoly>().is_err());
        assert!("".parse::<MultiPoly>().is_err());
        assert!("x y".parse::<MultiPoly>().is_err());
    }

    #[test]
    fn specialize_lefschetz() {
        let mut to_one = BTreeMap::new();
        to_one.insert("L".to_string(), MultiPoly::one());
        assert_eq!(
            poly("L + 1").pow(2).specialize(&to_one),
            MultiPoly::constant(4)
        );
        assert_eq!(poly("L^5").specialize(&to_one), MultiPoly::one());

        let mut hd = BTreeMap::new();
        hd.insert("L".to_string(), poly("u*v"));
        assert_eq!(poly("L + 1").specialize(&hd), poly("u*v + 1"));
    }

    #[test]
    fn homogeneity_with_weights() {
        let p = poly("x^2 + y");
        let w = |v: &str| if v == "y" { 2 } else { 1 };
        assert_eq!(p.homogeneous_degree(&w), Some(2));
        assert_eq!(p.homogeneous_degree(&|_| 1), None);
        let parts = p.homogeneous_components(&|_| 1);
        assert_eq!(parts[&1], poly("y"));
        assert_eq!(parts[&2], poly("x^2"));
    }

    #[test]
    fn coefficients_grow_past_64_bits() {
        let p = poly("2*x + 3").pow(80);
        let c = p.coeff(&[("x", 80)]);
        assert_eq!(c, BigInt::from(2).pow(80));
        assert!(p.constant_term() > BigInt::from(u64::MAX));
    }
}
