//! Waldschmidt constants and facet-valuation asymptotics as exact LPs over
//! the symbolic polyhedron `{a >= 0 : Σ_{j ∈ S_i} a_j >= μ_i}`.

use super::MonomialFatScheme;
use crate::lp::LpOutcome;
use crate::newton::FacetValuation;
use crate::rational::{int, ratio, Rational};

impl MonomialFatScheme {
    /// `α̂(I(Z))`, the LP minimum of `Σ a_j`.
    pub fn waldschmidt(&self) -> Rational {
        self.minimize_over_polyhedron(vec![int(1); self.nvars()]).0
    }

    /// `v̂(I(Z))`, the LP minimum of `<normal, a>`.
    pub fn valuation_hat(&self, v: &FacetValuation) -> Rational {
        self.minimize_over_polyhedron(v.normal_rational()).0
    }

    /// Lexicographically least optimal point for `<normal, a>`.
    pub fn valuation_hat_point(&self, v: &FacetValuation) -> (Rational, Vec<Rational>) {
        self.minimize_over_polyhedron(v.normal_rational())
    }

    fn minimize_over_polyhedron(&self, objective: Vec<Rational>) -> (Rational, Vec<Rational>) {
        match self.symbolic_polyhedron(1, objective).lex_min_optimal() {
            LpOutcome::Optimal { value, point } => (value, point),
            // Nonnegative objective over a nonempty polyhedron in the orthant.
            other => unreachable!("symbolic polyhedron LP returned {other:?}"),
        }
    }

    /// `min_{1 <= m <= m_max} α(I(mZ)) / m`.
    pub fn waldschmidt_upper(&self, m_max: u32) -> crate::Result<Rational> {
        let mut best: Option<Rational> = None;
        for m in 1..=m_max {
            let q = ratio(self.alpha_symbolic(m)?, u64::from(m));
            if best.as_ref().is_none_or(|b| q < *b) {
                best = Some(q);
            }
        }
        best.ok_or(crate::Error::Undefined("empty range"))
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{three_points_scheme, vertices_n2};
    use super::*;
    use crate::rational::frac;

    #[test]
    fn waldschmidt_examples() {
        assert_eq!(three_points_scheme().waldschmidt(), frac(3, 2));
        assert_eq!(vertices_n2().waldschmidt(), int(2));
        let point = MonomialFatScheme::coordinate_points(3, &[(0, 1)]).unwrap();
        assert_eq!(point.waldschmidt(), int(1));
    }

    #[test]
    fn valuation_hat_examples() {
        let z = three_points_scheme();
        let f = |normal: Vec<u64>, value| FacetValuation { normal, value };
        assert_eq!(z.valuation_hat(&f(vec![1, 1, 1], 2)), frac(3, 2));
        assert_eq!(z.valuation_hat(&f(vec![0, 1, 1], 1)), int(1));
        let point = MonomialFatScheme::coordinate_points(2, &[(0, 1)]).unwrap();
        assert_eq!(point.valuation_hat(&f(vec![1, 1, 1], 1)), point.waldschmidt());
    }

    #[test]
    fn lp_value_matches_symbolic_initial_degrees() {
        for z in [three_points_scheme(), vertices_n2()] {
            let w = z.waldschmidt();
            assert_eq!(z.waldschmidt_upper(12).unwrap(), w);
            for m in 1..=8u32 {
                assert!(w <= ratio(z.alpha_symbolic(m).unwrap(), u64::from(m)));
            }
        }
    }
}
