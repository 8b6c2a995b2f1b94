//! Independent numerical oracles shared by the integration tests. Nothing
//! here calls into the library's special functions.
#![allow(dead_code)]

/// Gauss–Legendre nodes and weights on [-1, 1], found by Newton iteration on
/// the Legendre polynomial.
pub fn gauss_legendre(order: usize) -> Vec<(f64, f64)> {
    let n = order as f64;
    let mut out = Vec::with_capacity(order);
    for i in 1..=order {
        let mut x = (std::f64::consts::PI * (i as f64 - 0.25) / (n + 0.5)).cos();
        let mut deriv = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=order {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            deriv = n * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / deriv;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * deriv * deriv)));
    }
    out
}

/// Adaptive Gauss–Legendre quadrature: a panel is accepted when the 20-point
/// rule on the whole agrees with the rule on its two halves.
pub struct Quadrature {
    rule: Vec<(f64, f64)>,
}

impl Default for Quadrature {
    fn default() -> Self {
        Quadrature {
            rule: gauss_legendre(20),
        }
    }
}

impl Quadrature {
    fn panel<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        half * self.rule.iter().map(|(x, w)| w * f(mid + half * x)).sum::<f64>()
    }

    fn recurse<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let mid = 0.5 * (a + b);
        let left = self.panel(f, a, mid);
        let right = self.panel(f, mid, b);
        let split = left + right;
        // Stop at the requested tolerance or once the two estimates agree to
        // within rounding.
        if depth == 0 || (split - whole).abs() <= tol.max(4.0 * f64::EPSILON * split.abs()) {
            return split;
        }
        self.recurse(f, a, mid, left, 0.5 * tol, depth - 1)
            + self.recurse(f, mid, b, right, 0.5 * tol, depth - 1)
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64, tol: f64) -> f64 {
        if a == b {
            return 0.0;
        }
        let whole = self.panel(&f, a, b);
        self.recurse(&f, a, b, whole, tol, 30)
    }
}

/// `x^k` with `0⁰ = 1`.
pub fn powi0(x: f64, k: u32) -> f64 {
    if k == 0 {
        1.0
    } else {
        x.powi(k as i32)
    }
}

/// Beta integrand `y^(a-1) (1-y)^(b-1)` for integer shapes.
pub fn beta_integrand(a: u32, b: u32) -> impl Fn(f64) -> f64 {
    move |y| powi0(y, a - 1) * powi0(1.0 - y, b - 1)
}

/// `B(a, b)` by quadrature.
pub fn beta_by_quadrature(q: &Quadrature, a: u32, b: u32) -> f64 {
    q.integrate(beta_integrand(a, b), 0.0, 1.0, 1e-17)
}

/// `I_x(a, b)` as a ratio of two quadratures.
pub fn inc_beta_by_quadrature(q: &Quadrature, x: f64, a: u32, b: u32) -> f64 {
    let norm = beta_by_quadrature(q, a, b);
    q.integrate(beta_integrand(a, b), 0.0, x, 1e-17 * norm.max(1e-300)) / norm
}

/// Binomial coefficient as f64 by the multiplicative formula.
pub fn choose(n: u32, k: u32) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

/// `P(X <= k)` for `X ~ Binomial(n, q)`, by direct summation.
pub fn binomial_cdf_brute(n: u32, k: u32, q: f64) -> f64 {
    (0..=k)
        .map(|j| choose(n, j) * powi0(q, j) * powi0(1.0 - q, n - j))
        .sum()
}

/// Standard normal CDF by its Maclaurin series, `Φ(x) = ½ + φ-series`;
/// accurate to ~1e-15 for |x| <= 5.
pub fn normal_cdf_series(x: f64) -> f64 {
    // erf(z) = 2/√π Σ (-1)^k z^(2k+1) / (k! (2k+1)),  z = x/√2
    let z = x / std::f64::consts::SQRT_2;
    let mut term = z;
    let mut sum = z;
    let z2 = z * z;
    for k in 1..400 {
        let kf = k as f64;
        term *= -z2 / kf;
        let add = term / (2.0 * kf + 1.0);
        sum += add;
        if add.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    0.5 + sum / std::f64::consts::PI.sqrt()
}

/// `1 - Φ(x)` by quadrature of the normal density over `[x, x + 40]`.
pub fn normal_upper_tail(q: &Quadrature, x: f64) -> f64 {
    let phi = |t: f64| (-0.5 * t * t).exp() / (2.0 * std::f64::consts::PI).sqrt();
    let scale = phi(x).max(1e-300);
    q.integrate(phi, x, x + 40.0, 1e-16 * scale)
}

/// Bisection for a root of an increasing function on `[lo, hi]`.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, target: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Γ(z) for half-integers z = j + ½ via Γ(½) = √π and Γ(z + 1) = zΓ(z).
pub fn ln_gamma_half_integer(j: u32) -> f64 {
    let mut ln = 0.5 * std::f64::consts::PI.ln();
    for i in 0..j {
        ln += (i as f64 + 0.5).ln();
    }
    ln
}
