//! Composite Gauss–Legendre quadrature and the L² norms built on it.

use num_complex::Complex64;

use super::{Domain, Interval, LabError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureSettings {
    pub panels: usize,
    pub nodes: usize,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        QuadratureSettings {
            panels: 16,
            nodes: 32,
        }
    }
}

impl QuadratureSettings {
    pub fn doubled(self) -> Self {
        QuadratureSettings {
            panels: self.panels,
            nodes: self.nodes * 2,
        }
    }
}

/// Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Newton iteration on `P_n` from the Chebyshev-like initial guesses.
    pub fn new(n: usize) -> Self {
        assert!(n > 0, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, d) = legendre(n, z);
                let dz = p / d;
                z -= dz;
                if dz.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre(n, z);
            let w = 2.0 / ((1.0 - z * z) * dp * dp);
            nodes[i] = -z;
            nodes[n - 1 - i] = z;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// `(P_n(z), P_n'(z))` by the three-term recurrence.
fn legendre(n: usize, z: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, z);
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// Composite rule: `panels` equal panels, each with an `nodes`-point Gauss–Legendre rule.
#[derive(Debug, Clone)]
pub struct Quadrature {
    settings: QuadratureSettings,
    rule: GaussLegendre,
}

impl Default for Quadrature {
    fn default() -> Self {
        Quadrature::new(QuadratureSettings::default())
    }
}

impl Quadrature {
    pub fn new(settings: QuadratureSettings) -> Self {
        Quadrature {
            settings,
            rule: GaussLegendre::new(settings.nodes),
        }
    }

    pub fn settings(&self) -> QuadratureSettings {
        self.settings
    }

    /// `∫_lo^hi g(x) dx`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, lo: f64, hi: f64, mut g: F) -> f64 {
        let h = (hi - lo) / self.settings.panels as f64;
        let mut total = 0.0;
        for p in 0..self.settings.panels {
            let a = lo + h * p as f64;
            let mid = a + 0.5 * h;
            let panel: f64 = self
                .rule
                .nodes
                .iter()
                .zip(&self.rule.weights)
                .map(|(z, w)| w * g(mid + 0.5 * h * z))
                .sum();
            total += 0.5 * h * panel;
        }
        total
    }

    /// `√∫|g|² dμ` over `window`, with `dμ = dx` or `dx/|x|`; a singleton is the point `x = 1`.
    pub fn l2_norm<F: FnMut(f64) -> Complex64>(
        &self,
        mut g: F,
        window: Interval,
        domain: Domain,
    ) -> Result<f64, LabError> {
        domain.check_window(window)?;
        let value = match domain {
            Domain::Singleton => g(Domain::SINGLETON_POINT).norm_sqr(),
            Domain::Line => self.integrate(window.lo, window.hi, |x| g(x).norm_sqr()),
            Domain::PuncturedLine => {
                self.integrate(window.lo, window.hi, |x| g(x).norm_sqr() / x.abs())
            }
        };
        Ok(value.sqrt())
    }
}

/// `max |g|` over `points` equispaced samples of the window, endpoints included.
pub fn sup_on_grid<F: FnMut(f64) -> Complex64>(
    mut g: F,
    window: Interval,
    domain: Domain,
    points: usize,
) -> Result<f64, LabError> {
    domain.check_window(window)?;
    if domain == Domain::Singleton {
        return Ok(g(Domain::SINGLETON_POINT).norm());
    }
    let step = window.width() / (points.max(2) - 1) as f64;
    Ok((0..points.max(2))
        .map(|k| g(window.lo + step * k as f64).norm())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        for n in [1, 2, 5, 16, 32] {
            let rule = GaussLegendre::new(n);
            let total: f64 = rule.weights().iter().sum();
            assert!((total - 2.0).abs() < 1e-13, "n={n}");
            // degree 2n-1 is exact
            let deg = 2 * n - 2;
            let got: f64 = rule
                .nodes()
                .iter()
                .zip(rule.weights())
                .map(|(z, w)| w * z.powi(deg as i32))
                .sum();
            let want = 2.0 / (deg as f64 + 1.0);
            assert!((got - want).abs() < 1e-13, "n={n}");
        }
    }

    #[test]
    fn nodes_are_sorted_and_symmetric() {
        let rule = GaussLegendre::new(7);
        assert!(rule.nodes().windows(2).all(|w| w[0] < w[1]));
        assert!(rule.nodes()[3].abs() < 1e-15);
        assert!((rule.nodes()[0] + rule.nodes()[6]).abs() < 1e-15);
    }

    #[test]
    fn composite_integration() {
        let q = Quadrature::default();
        let got = q.integrate(0.0, std::f64::consts::PI, f64::sin);
        assert!((got - 2.0).abs() < 1e-14);
    }

    #[test]
    fn norms_by_measure() {
        let q = Quadrature::default();
        let w = Interval::new(1.0, 2.0).unwrap();
        let one = |_: f64| Complex64::new(1.0, 0.0);
        let line = q.l2_norm(one, w, Domain::Line).unwrap();
        assert!((line - 1.0).abs() < 1e-14);
        let punct = q.l2_norm(one, w, Domain::PuncturedLine).unwrap();
        assert!((punct - 2f64.ln().sqrt()).abs() < 1e-14);
        let zero = q.l2_norm(|_| Complex64::new(0.0, 0.0), w, Domain::Line).unwrap();
        assert_eq!(zero, 0.0);
        let across = Interval::new(-1.0, 1.0).unwrap();
        assert!(q.l2_norm(one, across, Domain::PuncturedLine).is_err());
    }

    #[test]
    fn sup_grid_hits_endpoints() {
        let w = Interval::new(0.0, 2.0).unwrap();
        let s = sup_on_grid(|x| Complex64::new(x, 0.0), w, Domain::Line, 1001).unwrap();
        assert_eq!(s, 2.0);
    }
}
