//! Integer polynomials in one and two variables.

use std::collections::BTreeMap;
use std::fmt;

fn checked(value: Option<i64>) -> i64 {
    value.expect("integer overflow in polynomial arithmetic")
}

fn superscript(mut exp: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    let mut out = Vec::new();
    while exp > 0 {
        out.push(DIGITS[exp % 10]);
        exp /= 10;
    }
    out.iter().rev().collect()
}

fn monomial(var: &str, exp: usize) -> String {
    match exp {
        0 => String::new(),
        1 => var.to_string(),
        e => format!("{var}{}", superscript(e)),
    }
}

fn render_terms(terms: impl Iterator<Item = (String, i64)>) -> String {
    let mut out = String::new();
    for (mono, c) in terms {
        if c == 0 {
            continue;
        }
        let sign = if c < 0 {
            "-"
        } else if out.is_empty() {
            ""
        } else {
            "+"
        };
        out.push_str(sign);
        let abs = c.unsigned_abs();
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else {
            if abs != 1 {
                out.push_str(&abs.to_string());
            }
            out.push_str(&mono);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// `Σ c_k t^k`, stored by ascending degree without trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UnivariatePolynomial {
    coeffs: Vec<i64>,
}

impl UnivariatePolynomial {
    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Coefficients listed from the highest degree down.
    pub fn from_descending(mut coeffs: Vec<i64>) -> Self {
        coeffs.reverse();
        Self::from_coeffs(coeffs)
    }

    pub fn monomial(coeff: i64, degree: usize) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = coeff;
        Self::from_coeffs(coeffs)
    }

    /// `(t - root)`.
    pub fn linear(root: i64) -> Self {
        Self::from_coeffs(vec![-root, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, degree: usize) -> i64 {
        self.coeffs.get(degree).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn add_term(&mut self, degree: usize, coeff: i64) {
        if self.coeffs.len() <= degree {
            self.coeffs.resize(degree + 1, 0);
        }
        self.coeffs[degree] = checked(self.coeffs[degree].checked_add(coeff));
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::default();
        }
        let mut out = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = checked(out[i + j].checked_add(checked(a.checked_mul(*b))));
            }
        }
        Self::from_coeffs(out)
    }

    pub fn pow(&self, exp: usize) -> Self {
        (0..exp).fold(Self::from_coeffs(vec![1]), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0i64, |acc, c| checked(checked(acc.checked_mul(t)).checked_add(*c)))
    }

    pub fn render(&self, var: &str) -> String {
        render_terms(
            self.coeffs
                .iter()
                .enumerate()
                .rev()
                .map(|(d, c)| (monomial(var, d), *c)),
        )
    }

    /// Degree-keyed coefficient map for JSON output.
    pub fn to_json_value(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(d, c)| (d.to_string(), (*c).into()))
            .collect();
        serde_json::Value::Object(map)
    }
}

impl fmt::Display for UnivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}

/// `Σ c_{a,b} u^a v^b` with only nonzero coefficients stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BivariatePolynomial {
    coeffs: BTreeMap<(usize, usize), i64>,
}

impl BivariatePolynomial {
    pub fn add_term(&mut self, u_degree: usize, v_degree: usize, coeff: i64) {
        let entry = self.coeffs.entry((u_degree, v_degree)).or_insert(0);
        *entry = checked(entry.checked_add(coeff));
        if *entry == 0 {
            self.coeffs.remove(&(u_degree, v_degree));
        }
    }

    pub fn coeff(&self, u_degree: usize, v_degree: usize) -> i64 {
        self.coeffs.get(&(u_degree, v_degree)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), i64)> + '_ {
        self.coeffs.iter().map(|(k, c)| (*k, *c))
    }

    pub fn eval(&self, u: i64, v: i64) -> i64 {
        self.terms().fold(0i64, |acc, ((a, b), c)| {
            let term = checked(
                checked(u.checked_pow(a as u32))
                    .checked_mul(checked(v.checked_pow(b as u32)))
                    .and_then(|x| x.checked_mul(c)),
            );
            checked(acc.checked_add(term))
        })
    }

    /// The univariate polynomial in `v` obtained by fixing `u`.
    pub fn at_u(&self, u: i64) -> UnivariatePolynomial {
        let mut out = UnivariatePolynomial::default();
        for ((a, b), c) in self.terms() {
            out.add_term(b, checked(c.checked_mul(checked(u.checked_pow(a as u32)))));
        }
        out
    }

    /// The univariate polynomial in `u` obtained by fixing `v`.
    pub fn at_v(&self, v: i64) -> UnivariatePolynomial {
        let mut out = UnivariatePolynomial::default();
        for ((a, b), c) in self.terms() {
            out.add_term(a, checked(c.checked_mul(checked(v.checked_pow(b as u32)))));
        }
        out
    }

    pub fn render(&self) -> String {
        let mut keys: Vec<_> = self.coeffs.keys().copied().collect();
        keys.sort_by_key(|&(a, b)| std::cmp::Reverse((a + b, a)));
        render_terms(keys.into_iter().map(|(a, b)| {
            (
                format!("{}{}", monomial("u", a), monomial("v", b)),
                self.coeffs[&(a, b)],
            )
        }))
    }

    /// `{"a,b": c}` coefficient map for JSON output.
    pub fn to_json_value(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> =
            self.terms().map(|((a, b), c)| (format!("{a},{b}"), c.into())).collect();
        serde_json::Value::Object(map)
    }
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_with_superscripts() {
        let p = UnivariatePolynomial::from_descending(vec![1, 12, 28, 18, 1]);
        assert_eq!(p.render("t"), "t⁴+12t³+28t²+18t+1");
        let q = UnivariatePolynomial::from_descending(vec![1, -3, 2]);
        assert_eq!(q.to_string(), "t²-3t+2");
        assert_eq!(UnivariatePolynomial::default().to_string(), "0");
        assert_eq!(UnivariatePolynomial::monomial(-1, 11).to_string(), "-t¹¹");
    }

    #[test]
    fn arithmetic() {
        let p = UnivariatePolynomial::linear(1).mul(&UnivariatePolynomial::linear(2).pow(2));
        assert_eq!(p.coeffs(), &[-4, 8, -5, 1]);
        assert_eq!(p.eval(-1), -18);
        assert_eq!(p.degree(), Some(3));
    }

    #[test]
    fn bivariate_specializations() {
        // u + v - 1
        let mut m = BivariatePolynomial::default();
        m.add_term(1, 0, 1);
        m.add_term(0, 1, 1);
        m.add_term(0, 0, -1);
        assert_eq!(m.at_u(0).coeffs(), &[-1, 1]);
        assert_eq!(m.at_v(-1).coeffs(), &[-2, 1]);
        assert_eq!(m.eval(2, 3), 4);
        assert_eq!(m.render(), "u+v-1");
        m.add_term(1, 0, -1);
        assert_eq!(m.coeff(1, 0), 0);
        assert_eq!(m.terms().count(), 2);
    }
}
