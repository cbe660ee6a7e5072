//! Forward-mode dual numbers, nestable to arbitrary derivative order.
//!
//! Every model coefficient in this crate is written once, generically over
//! [`Jet`], and differentiated by instantiating the same code at
//! `Dual<f64>`, `Dual<Dual<f64>>`, ... . Nesting depth k yields exact
//! mixed partial derivatives of order k (no finite differencing).

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Scalar admitting the elementary calculus this crate needs.
///
/// Implemented by `f64` and by `Dual<T>` for any `T: Jet`, so nesting is
/// free. Branching (cutoffs) must inspect `val()` only: the branch point
/// is always in a region where the function is locally constant, so the
/// derivative parts stay consistent.
pub trait Jet:
    Copy
    + std::fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn cst(c: f64) -> Self;
    /// Underlying scalar value (all derivative parts dropped).
    fn val(self) -> f64;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn sqrt(self) -> Self;
    /// Power with a constant (non-differentiated) exponent.
    fn powf_c(self, c: f64) -> Self;

    fn zero() -> Self {
        Self::cst(0.0)
    }
    fn one() -> Self {
        Self::cst(1.0)
    }
    fn sq(self) -> Self {
        self * self
    }
}

impl Jet for f64 {
    fn cst(c: f64) -> Self {
        c
    }
    fn val(self) -> f64 {
        self
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn powf_c(self, c: f64) -> Self {
        f64::powf(self, c)
    }
}

/// First-order jet over `T`: value plus one directional derivative.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual<T> {
    pub re: T,
    pub eps: T,
}

impl<T: Jet> Dual<T> {
    pub fn new(re: T, eps: T) -> Self {
        Dual { re, eps }
    }
    /// Seed with unit derivative: the variable of differentiation.
    pub fn var(v: T) -> Self {
        Dual { re: v, eps: T::one() }
    }
    pub fn constant(v: T) -> Self {
        Dual { re: v, eps: T::zero() }
    }
}

impl<T: Jet> Add for Dual<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Dual::new(self.re + o.re, self.eps + o.eps)
    }
}

impl<T: Jet> Sub for Dual<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Dual::new(self.re - o.re, self.eps - o.eps)
    }
}

impl<T: Jet> Mul for Dual<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Dual::new(self.re * o.re, self.eps * o.re + self.re * o.eps)
    }
}

impl<T: Jet> Div for Dual<T> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let inv = T::one() / o.re;
        Dual::new(self.re * inv, (self.eps - self.re * inv * o.eps) * inv)
    }
}

impl<T: Jet> Neg for Dual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual::new(-self.re, -self.eps)
    }
}

impl<T: Jet> Jet for Dual<T> {
    fn cst(c: f64) -> Self {
        Dual::constant(T::cst(c))
    }
    fn val(self) -> f64 {
        self.re.val()
    }
    fn exp(self) -> Self {
        let e = self.re.exp();
        Dual::new(e, self.eps * e)
    }
    fn ln(self) -> Self {
        Dual::new(self.re.ln(), self.eps / self.re)
    }
    fn sin(self) -> Self {
        Dual::new(self.re.sin(), self.eps * self.re.cos())
    }
    fn cos(self) -> Self {
        Dual::new(self.re.cos(), -self.eps * self.re.sin())
    }
    fn sqrt(self) -> Self {
        let s = self.re.sqrt();
        Dual::new(s, self.eps / (T::cst(2.0) * s))
    }
    fn powf_c(self, c: f64) -> Self {
        Dual::new(
            self.re.powf_c(c),
            self.eps * T::cst(c) * self.re.powf_c(c - 1.0),
        )
    }
}

/// Japanese bracket ⟨x⟩ = sqrt(1 + |x|²), written for jets.
pub fn jbracket<T: Jet>(x: &[T]) -> T {
    let mut s = T::one();
    for &c in x {
        s = s + c * c;
    }
    s.sqrt()
}

/// Scalar field on R^m with derivatives delivered by jet instantiation.
///
/// Implementors write `eval` once; the helpers below obtain exact partials
/// by calling it at nested dual types.
pub trait ScalarField: Sync {
    fn eval<T: Jet>(&self, x: &[T]) -> T;
}

fn seed<T: Jet>(x: &[f64], i: usize) -> Vec<Dual<T>> {
    x.iter()
        .enumerate()
        .map(|(k, &v)| {
            if k == i {
                Dual::var(T::cst(v))
            } else {
                Dual::constant(T::cst(v))
            }
        })
        .collect()
}

fn seed2<T: Jet>(x: &[f64], i: usize, j: usize) -> Vec<Dual<Dual<T>>> {
    x.iter()
        .enumerate()
        .map(|(k, &v)| {
            let inner = if k == j {
                Dual::var(T::cst(v))
            } else {
                Dual::constant(T::cst(v))
            };
            if k == i {
                Dual::var(inner)
            } else {
                Dual::constant(inner)
            }
        })
        .collect()
}

/// First partial ∂_i f.
pub fn partial1<F: ScalarField + ?Sized>(f: &F, x: &[f64], i: usize) -> f64 {
    f.eval(&seed::<f64>(x, i)).eps
}

/// Mixed second partial ∂_i ∂_j f.
pub fn partial2<F: ScalarField + ?Sized>(f: &F, x: &[f64], i: usize, j: usize) -> f64 {
    f.eval(&seed2::<f64>(x, i, j)).eps.eps
}

/// Mixed third partial ∂_i ∂_j ∂_k f.
pub fn partial3<F: ScalarField + ?Sized>(f: &F, x: &[f64], i: usize, j: usize, k: usize) -> f64 {
    let xs: Vec<Dual<Dual<Dual<f64>>>> = x
        .iter()
        .enumerate()
        .map(|(m, &v)| {
            let l0: Dual<f64> = if m == k { Dual::var(v) } else { Dual::constant(v) };
            let l1: Dual<Dual<f64>> = if m == j { Dual::var(l0) } else { Dual::constant(l0) };
            if m == i {
                Dual::var(l1)
            } else {
                Dual::constant(l1)
            }
        })
        .collect();
    f.eval(&xs).eps.eps.eps
}

/// Mixed fourth partial ∂_i ∂_j ∂_k ∂_l f.
pub fn partial4<F: ScalarField + ?Sized>(
    f: &F,
    x: &[f64],
    i: usize,
    j: usize,
    k: usize,
    l: usize,
) -> f64 {
    let xs: Vec<Dual<Dual<Dual<Dual<f64>>>>> = x
        .iter()
        .enumerate()
        .map(|(m, &v)| {
            let l0: Dual<f64> = if m == l { Dual::var(v) } else { Dual::constant(v) };
            let l1: Dual<Dual<f64>> = if m == k { Dual::var(l0) } else { Dual::constant(l0) };
            let l2: Dual<Dual<Dual<f64>>> =
                if m == j { Dual::var(l1) } else { Dual::constant(l1) };
            if m == i {
                Dual::var(l2)
            } else {
                Dual::constant(l2)
            }
        })
        .collect();
    f.eval(&xs).eps.eps.eps.eps
}

/// Partial derivative for a multi-index of order ≤ 4, e.g. `&[0, 0, 1]`
/// for ∂²_{x0} ∂_{x1}. Empty multi-index returns the plain value.
pub fn partial_multi<F: ScalarField + ?Sized>(f: &F, x: &[f64], idx: &[usize]) -> f64 {
    match *idx {
        [] => {
            let xs: Vec<f64> = x.to_vec();
            f.eval(&xs)
        }
        [i] => partial1(f, x, i),
        [i, j] => partial2(f, x, i, j),
        [i, j, k] => partial3(f, x, i, j, k),
        [i, j, k, l] => partial4(f, x, i, j, k, l),
        _ => panic!("derivative order > 4 not supported"),
    }
}
