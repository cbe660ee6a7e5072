use semilab::num::dual::{
    jbracket, partial1, partial2, partial3, partial4, partial_multi, Jet, ScalarField,
};

/// x³y + sin(x)·e^y — every mixed partial has a closed form.
struct Mixed;

impl ScalarField for Mixed {
    fn eval<T: Jet>(&self, z: &[T]) -> T {
        let (x, y) = (z[0], z[1]);
        x * x * x * y + x.sin() * y.exp()
    }
}

struct Bracket;

impl ScalarField for Bracket {
    fn eval<T: Jet>(&self, z: &[T]) -> T {
        jbracket(z)
    }
}

/// Rational with nested roots: exercises div/sqrt/powf chain rules.
struct Gnarly;

impl ScalarField for Gnarly {
    fn eval<T: Jet>(&self, z: &[T]) -> T {
        let x = z[0];
        (T::one() + x * x).sqrt().ln() / (T::one() + x.sq()) + x.powf_c(2.5)
    }
}

#[test]
fn first_partials_match_closed_forms() {
    let z = [0.7, -0.3];
    let (x, y) = (z[0], z[1]);
    let fx = 3.0 * x * x * y + x.cos() * y.exp();
    let fy = x * x * x + x.sin() * y.exp();
    assert!((partial1(&Mixed, &z, 0) - fx).abs() < 1e-14);
    assert!((partial1(&Mixed, &z, 1) - fy).abs() < 1e-14);
}

#[test]
fn second_and_third_partials() {
    let z = [0.7, -0.3];
    let (x, y) = (z[0], z[1]);
    let fxy = 3.0 * x * x + x.cos() * y.exp();
    let fxx = 6.0 * x * y - x.sin() * y.exp();
    let fxxx = 6.0 * y - x.cos() * y.exp();
    assert!((partial2(&Mixed, &z, 0, 1) - fxy).abs() < 1e-13);
    assert!((partial2(&Mixed, &z, 1, 0) - fxy).abs() < 1e-13);
    assert!((partial2(&Mixed, &z, 0, 0) - fxx).abs() < 1e-13);
    assert!((partial3(&Mixed, &z, 0, 0, 0) - fxxx).abs() < 1e-13);
}

#[test]
fn fourth_order_mixed_partial() {
    let z = [0.7, -0.3];
    let (x, y) = (z[0], z[1]);
    // ∂²x ∂²y (x³y + sin x e^y) = -sin(x) e^y
    let expected = -x.sin() * y.exp();
    assert!((partial4(&Mixed, &z, 0, 0, 1, 1) - expected).abs() < 1e-12);
    assert!((partial_multi(&Mixed, &z, &[0, 0, 1, 1]) - expected).abs() < 1e-12);
    // ∂⁴x sin(x)e^y = sin(x) e^y
    let expected_x4 = x.sin() * y.exp();
    assert!((partial4(&Mixed, &z, 0, 0, 0, 0) - expected_x4).abs() < 1e-12);
}

#[test]
fn bracket_weight_derivatives() {
    let z = [3.0, 4.0];
    let r = 26.0f64.sqrt();
    assert!((Bracket.eval(&z) - r).abs() < 1e-14);
    assert!((partial1(&Bracket, &z, 0) - 3.0 / r).abs() < 1e-14);
    // ∂²_{00}⟨z⟩ = (1 + z1²)/⟨z⟩³ evaluated with the 1 from the bracket
    let fxx = (1.0 + 16.0) / r.powi(3);
    assert!((partial2(&Bracket, &z, 0, 0) - fxx).abs() < 1e-13);
}

#[test]
fn composite_chain_rules_against_finite_differences() {
    let z = [1.3];
    let exact = partial1(&Gnarly, &z, 0);
    let h = 1e-6;
    let fd = (Gnarly.eval(&[z[0] + h]) - Gnarly.eval(&[z[0] - h])) / (2.0 * h);
    assert!((exact - fd).abs() < 1e-8, "exact={exact} fd={fd}");
    let exact2 = partial2(&Gnarly, &z, 0, 0);
    let fd2 = (Gnarly.eval(&[z[0] + h]) - 2.0 * Gnarly.eval(&z) + Gnarly.eval(&[z[0] - h]))
        / (h * h);
    assert!((exact2 - fd2).abs() < 1e-3, "exact={exact2} fd={fd2}");
}

#[test]
fn partial_multi_dispatches_orders() {
    let z = [0.4, 1.1];
    assert_eq!(partial_multi(&Mixed, &z, &[]), Mixed.eval(&z));
    assert_eq!(partial_multi(&Mixed, &z, &[1]), partial1(&Mixed, &z, 1));
    assert_eq!(partial_multi(&Mixed, &z, &[0, 1]), partial2(&Mixed, &z, 0, 1));
    assert_eq!(
        partial_multi(&Mixed, &z, &[0, 1, 1]),
        partial3(&Mixed, &z, 0, 1, 1)
    );
}
