// Dense polynomials in ascending power order.

pub(crate) fn eval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Antiderivative vanishing at 0.
pub(crate) fn antiderivative(coeffs: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(coeffs.len() + 1);
    out.push(0.0);
    for (k, &c) in coeffs.iter().enumerate() {
        out.push(c / (k as f64 + 1.0));
    }
    out
}

/// Coefficients of `q(x) = p(x + c)`.
pub(crate) fn shift(coeffs: &[f64], c: f64) -> Vec<f64> {
    if c == 0.0 {
        return coeffs.to_vec();
    }
    // repeated synthetic division (Taylor shift)
    let mut a = coeffs.to_vec();
    let n = a.len();
    for i in 0..n {
        for k in (i..n.saturating_sub(1)).rev() {
            a[k] += c * a[k + 1];
        }
    }
    a
}

pub(crate) fn add_assign(acc: &mut Vec<f64>, other: &[f64], scale: f64) {
    if acc.len() < other.len() {
        acc.resize(other.len(), 0.0);
    }
    for (a, &b) in acc.iter_mut().zip(other) {
        *a += scale * b;
    }
}

/// Drops trailing exact zeros, keeping at least one coefficient.
pub(crate) fn trim(mut coeffs: Vec<f64>) -> Vec<f64> {
    while coeffs.len() > 1 && coeffs[coeffs.len() - 1] == 0.0 {
        coeffs.pop();
    }
    if coeffs.is_empty() {
        coeffs.push(0.0);
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_matches_direct_evaluation() {
        let p = [1.0, -2.0, 0.5, 3.0];
        let q = shift(&p, 1.75);
        for &x in &[-2.0, -0.3, 0.0, 0.9, 4.2] {
            assert!((eval(&q, x) - eval(&p, x + 1.75)).abs() < 1e-12);
        }
    }

    #[test]
    fn antiderivative_differentiates_back() {
        let p = [2.0, 0.0, -3.0];
        let a = antiderivative(&p);
        assert_eq!(a, vec![0.0, 2.0, 0.0, -1.0]);
    }
}
