// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{json_err, Rational, Scalar, ScalarKind};
use crate::error::{Error, Result};

/// `(a₀ + a₁ω + a₂ω² + a₃ω³) / √2ᵏ` with `ω = e^{iπ/4}`, so `ω⁴ = −1`.
///
/// Canonical form: `k = 0`, or the numerator is not divisible by
/// `√2 = ω − ω³` inside ℤ\[ω\]. Zero is stored with `k = 0`. Every
/// constructor and operation returns canonical values, so the derived
/// equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycloScalar {
    coeffs: [BigInt; 4],
    root2_denom_exp: u32,
}

type Coeffs = [BigInt; 4];

fn zero_coeffs() -> Coeffs {
    [BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero()]
}

/// `a · √2`, using `√2 = ω − ω³`.
fn times_root2(a: &Coeffs) -> Coeffs {
    [
        &a[1] - &a[3],
        &a[0] + &a[2],
        &a[1] + &a[3],
        &a[2] - &a[0],
    ]
}

/// The unique `x` with `√2 · x = a`, if it lies in ℤ\[ω\].
fn div_root2(a: &Coeffs) -> Option<Coeffs> {
    let t = times_root2(a);
    if t.iter().all(|x| x.is_even()) {
        Some(t.map(|x| x / 2))
    } else {
        None
    }
}

fn poly_mul(a: &Coeffs, b: &Coeffs) -> Coeffs {
    let mut out = zero_coeffs();
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            let p = ai * bj;
            let n = i + j;
            if n < 4 {
                out[n] += p;
            } else {
                out[n - 4] -= p;
            }
        }
    }
    out
}

impl CycloScalar {
    /// Builds and canonicalizes `(c₀ + c₁ω + c₂ω² + c₃ω³) / √2ᵏ`.
    pub fn from_parts(coeffs: [BigInt; 4], root2_denom_exp: u32) -> Self {
        let mut s = CycloScalar {
            coeffs,
            root2_denom_exp,
        };
        s.reduce();
        s
    }

    pub fn new(coeffs: [i64; 4], root2_denom_exp: u32) -> Self {
        Self::from_parts(coeffs.map(BigInt::from), root2_denom_exp)
    }

    pub fn from_int(n: i64) -> Self {
        Self::new([n, 0, 0, 0], 0)
    }

    /// `ωʲ` for any integer `j`.
    pub fn omega_pow(j: i64) -> Self {
        let j = j.rem_euclid(8) as usize;
        let mut c = [0i64; 4];
        if j < 4 {
            c[j] = 1;
        } else {
            c[j - 4] = -1;
        }
        Self::new(c, 0)
    }

    pub fn omega() -> Self {
        Self::omega_pow(1)
    }

    /// The imaginary unit `i = ω²`.
    pub fn i() -> Self {
        Self::omega_pow(2)
    }

    pub fn root2() -> Self {
        Self::new([0, 1, 0, -1], 0)
    }

    pub fn inv_root2() -> Self {
        Self::new([1, 0, 0, 0], 1)
    }

    pub fn coeffs(&self) -> &[BigInt; 4] {
        &self.coeffs
    }

    pub fn root2_denom_exp(&self) -> u32 {
        self.root2_denom_exp
    }

    fn reduce(&mut self) {
        if self.coeffs.iter().all(Zero::is_zero) {
            self.root2_denom_exp = 0;
            return;
        }
        while self.root2_denom_exp > 0 {
            match div_root2(&self.coeffs) {
                Some(c) => {
                    self.coeffs = c;
                    self.root2_denom_exp -= 1;
                }
                None => break,
            }
        }
    }

    /// Numerator rewritten over the denominator `√2ᵉ`, `e ≥ k`.
    fn numerator_at(&self, exp: u32) -> Coeffs {
        let mut c = self.coeffs.clone();
        for _ in self.root2_denom_exp..exp {
            c = times_root2(&c);
        }
        c
    }

    pub fn neg(&self) -> Self {
        CycloScalar {
            coeffs: self.coeffs.clone().map(|x| -x),
            root2_denom_exp: self.root2_denom_exp,
        }
    }

    /// Galois automorphism `ω ↦ ω³`; it sends `√2` to `−√2`.
    pub fn galois(&self) -> Self {
        let [a0, a1, a2, a3] = self.coeffs.clone();
        let mut c = [a0, a3, -a2, a1];
        if self.root2_denom_exp % 2 == 1 {
            c = c.map(|x| -x);
        }
        CycloScalar {
            coeffs: c,
            root2_denom_exp: self.root2_denom_exp,
        }
    }

    /// `dagger(self) · self` as a rational.
    ///
    /// Fails only when the product has an irrational part, which cannot
    /// happen for amplitudes of stabiliser states.
    pub fn squared_modulus(&self) -> Result<Rational> {
        self.dagger().mul(self).as_rational().ok_or_else(|| {
            Error::Ring(format!("squared modulus of {self} is not rational"))
        })
    }

    /// The value as a rational, if it is one.
    pub fn as_rational(&self) -> Option<Rational> {
        let [a0, a1, a2, a3] = &self.coeffs;
        if !(a1.is_zero() && a2.is_zero() && a3.is_zero()) {
            return None;
        }
        if self.root2_denom_exp % 2 == 1 {
            return if a0.is_zero() {
                Some(<Rational as Zero>::zero())
            } else {
                None
            };
        }
        let den = BigInt::one() << (self.root2_denom_exp / 2);
        Some(Rational::new(a0.clone(), den))
    }

    pub fn from_rational(r: &Rational) -> Option<Self> {
        let num = [r.numer().clone(), BigInt::zero(), BigInt::zero(), BigInt::zero()];
        Self::from_parts(num, 0).div_rational(&Rational::from_integer(r.denom().clone()))
    }

    /// Exact division by a nonzero rational, when the quotient stays in
    /// ℤ\[ω\]\[1/√2\] (that is, the odd part of the numerator divides).
    pub fn div_rational(&self, r: &Rational) -> Option<Self> {
        if Zero::is_zero(r) {
            return None;
        }
        let mut c = self.coeffs.clone().map(|x| x * r.denom());
        let mut p = r.numer().clone();
        if p.is_negative() {
            p = -p;
            c = c.map(|x| -x);
        }
        let twos = p.trailing_zeros().unwrap_or(0);
        let odd = &p >> twos;
        if !c.iter().all(|x| x.is_multiple_of(&odd)) {
            return None;
        }
        let c = c.map(|x| x / &odd);
        let k = self.root2_denom_exp.checked_add(u32::try_from(2 * twos).ok()?)?;
        Some(Self::from_parts(c, k))
    }

    /// Field norm to ℚ: the product of all four Galois conjugates.
    pub fn norm(&self) -> Rational {
        let d = self.dagger();
        let g = self.galois();
        let gd = g.dagger();
        self.mul(&d)
            .mul(&g)
            .mul(&gd)
            .as_rational()
            .expect("field norm is rational")
    }

    /// Floating-point image under the embedding `ω ↦ e^{iπ/4}`.
    pub fn to_complex(&self) -> (f64, f64) {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let units = [(1.0, 0.0), (h, h), (0.0, 1.0), (-h, h)];
        let scale = 2f64.powf(-(self.root2_denom_exp as f64) / 2.0);
        let mut re = 0.0;
        let mut im = 0.0;
        for (a, (ur, ui)) in self.coeffs.iter().zip(units) {
            let a = a.to_f64().unwrap_or(f64::NAN);
            re += a * ur;
            im += a * ui;
        }
        (re * scale, im * scale)
    }

    fn abs_f64(&self) -> f64 {
        let (re, im) = self.to_complex();
        re.hypot(im)
    }

    /// Exact square root inside ℤ\[ω\]\[1/√2\], if one exists.
    ///
    /// The value is scaled to an integral element `T`, and a root `s` of `T`
    /// is searched for using `|s|² + |σ(s)|² = 2·Σ sᵢ²`, which bounds the
    /// integer coefficients of `s`.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let m = (self.root2_denom_exp + 2) / 2;
        let target = CycloScalar {
            coeffs: self.numerator_at(2 * m),
            root2_denom_exp: 0,
        };
        let radius = (target.abs_f64() + target.galois().abs_f64()) / 2.0;
        let r = radius.round();
        if !r.is_finite() || (radius - r).abs() > 1e-6 || r > 1e8 {
            return None;
        }
        let r = r as i64;
        let bound = (r as f64).sqrt().floor() as i64;
        for s0 in -bound..=bound {
            let r0 = r - s0 * s0;
            let b1 = (r0 as f64).sqrt().floor() as i64;
            for s1 in -b1..=b1 {
                let r1 = r0 - s1 * s1;
                let b2 = (r1 as f64).sqrt().floor() as i64;
                for s2 in -b2..=b2 {
                    let r2 = r1 - s2 * s2;
                    let s3 = (r2 as f64).sqrt().round() as i64;
                    if s3 * s3 != r2 {
                        continue;
                    }
                    for s3 in [s3, -s3] {
                        let s = CycloScalar::new([s0, s1, s2, s3], 0);
                        if s.mul(&s) == target {
                            // Principal root: Re > 0, or Re = 0 and Im > 0.
                            let (re, im) = s.to_complex();
                            let s = if re > 1e-9 || (re.abs() <= 1e-9 && im > 0.0) { s } else { s.neg() };
                            return Some(CycloScalar::from_parts(s.coeffs, m));
                        }
                    }
                }
            }
        }
        None
    }
}

impl Scalar for CycloScalar {
    const KIND: ScalarKind = ScalarKind::Cyclotomic;

    fn zero() -> Self {
        CycloScalar {
            coeffs: zero_coeffs(),
            root2_denom_exp: 0,
        }
    }

    fn one() -> Self {
        Self::from_int(1)
    }

    fn add(&self, other: &Self) -> Self {
        let k = self.root2_denom_exp.max(other.root2_denom_exp);
        let a = self.numerator_at(k);
        let b = other.numerator_at(k);
        let mut c = zero_coeffs();
        for i in 0..4 {
            c[i] = &a[i] + &b[i];
        }
        Self::from_parts(c, k)
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::from_parts(
            poly_mul(&self.coeffs, &other.coeffs),
            self.root2_denom_exp + other.root2_denom_exp,
        )
    }

    /// `ω ↦ ω⁷ = −ω³`.
    fn dagger(&self) -> Self {
        let [a0, a1, a2, a3] = self.coeffs.clone();
        CycloScalar {
            coeffs: [a0, -a3, -a2, -a1],
            root2_denom_exp: self.root2_denom_exp,
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn same_modulus(&self, other: &Self) -> bool {
        self.dagger().mul(self) == other.dagger().mul(other)
    }

    fn phase_normalizer(&self) -> Self {
        if self.is_zero() {
            return Self::one();
        }
        for j in 0..8 {
            let u = Self::omega_pow(j);
            let v = u.mul(self);
            let [_, a1, a2, a3] = &v.coeffs;
            if a2.is_zero() && *a1 == -a3 && v.to_complex().0 > 0.0 {
                return u;
            }
        }
        Self::one()
    }

    fn checked_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        // a / d = a · d̄ · σ(d) · σ(d̄) / N(d)
        let g = divisor.galois();
        let cofactor = divisor.dagger().mul(&g).mul(&g.dagger());
        self.mul(&cofactor).div_rational(&divisor.norm())
    }

    fn to_json(&self) -> serde_json::Value {
        let c: Vec<serde_json::Value> = self.coeffs.iter().map(bigint_to_json).collect();
        serde_json::json!({ "c": c, "k": self.root2_denom_exp })
    }

    fn from_json(value: &serde_json::Value) -> Result<Self> {
        let c = value
            .get("c")
            .and_then(|c| c.as_array())
            .filter(|c| c.len() == 4)
            .ok_or_else(|| json_err("{\"c\":[a0,a1,a2,a3],\"k\":k}", value))?;
        let k = value
            .get("k")
            .and_then(|k| k.as_u64())
            .and_then(|k| u32::try_from(k).ok())
            .ok_or_else(|| json_err("non-negative k", value))?;
        let mut coeffs = zero_coeffs();
        for (slot, v) in coeffs.iter_mut().zip(c) {
            *slot = bigint_from_json(v)?;
        }
        Ok(Self::from_parts(coeffs, k))
    }

    fn sqrt(&self) -> Option<Self> {
        CycloScalar::sqrt(self)
    }

    fn checked_neg(&self) -> Option<Self> {
        Some(CycloScalar::neg(self))
    }
}

pub(crate) fn bigint_to_json(x: &BigInt) -> serde_json::Value {
    match x.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(x.to_string()),
    }
}

pub(crate) fn bigint_from_json(v: &serde_json::Value) -> Result<BigInt> {
    if let Some(i) = v.as_i64() {
        return Ok(BigInt::from(i));
    }
    v.as_str()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| json_err("integer", v))
}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const UNITS: [&str; 4] = ["", "ω", "ω²", "ω³"];
        let mut terms = Vec::new();
        for (a, unit) in self.coeffs.iter().zip(UNITS) {
            if a.is_zero() {
                continue;
            }
            let mag = a.abs();
            let sign = if a.is_negative() { "-" } else { "+" };
            let body = match (unit.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => unit.to_string(),
                (false, false) => format!("{mag}{unit}"),
            };
            terms.push((sign, body));
        }
        let mut num = String::new();
        for (i, (sign, body)) in terms.iter().enumerate() {
            if i == 0 {
                if *sign == "-" {
                    num.push('-');
                }
            } else {
                num.push_str(sign);
            }
            num.push_str(body);
        }
        if num.is_empty() {
            num.push('0');
        }
        match self.root2_denom_exp {
            0 => f.write_str(&num),
            k => {
                let num = if terms.len() > 1 { format!("({num})") } else { num };
                if k == 1 {
                    write!(f, "{num}/√2")
                } else {
                    write!(f, "{num}/√2^{k}")
                }
            }
        }
    }
}

impl fmt::Debug for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Neg for &CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        CycloScalar::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(a: [i64; 4], k: u32) -> CycloScalar {
        CycloScalar::new(a, k)
    }

    #[test]
    fn half_is_one_over_root2_squared() {
        let h = CycloScalar::inv_root2();
        let p = h.mul(&h);
        assert_eq!(p.coeffs(), &[1, 0, 0, 0].map(BigInt::from));
        assert_eq!(p.root2_denom_exp(), 2);
        assert_eq!(p.as_rational(), Some(Rational::new(1.into(), 2.into())));
    }

    #[test]
    fn dagger_of_omega() {
        let d = CycloScalar::omega().dagger();
        assert_eq!(d, c([0, 0, 0, -1], 0));
        assert_eq!(d, CycloScalar::omega_pow(7));
    }

    #[test]
    fn root2_reduces_to_one() {
        // (ω − ω³)/√2 = 1
        assert_eq!(c([0, 1, 0, -1], 1), CycloScalar::one());
        let r2 = CycloScalar::root2();
        assert_eq!(r2.mul(&r2), CycloScalar::from_int(2));
    }

    #[test]
    fn omega_identities() {
        let w = CycloScalar::omega();
        let w3 = CycloScalar::omega_pow(3);
        assert_eq!(w.mul(&w3), CycloScalar::from_int(-1));
        assert_eq!(w.mul(&w), CycloScalar::i());
        assert_eq!(CycloScalar::i().mul(&CycloScalar::i()), CycloScalar::from_int(-1));
    }

    #[test]
    fn squared_moduli() {
        let sq = |x: &CycloScalar| x.squared_modulus().unwrap();
        assert_eq!(sq(&CycloScalar::inv_root2()), Rational::new(1.into(), 2.into()));
        assert_eq!(sq(&CycloScalar::omega()), <Rational as One>::one());
        // (1 + i)/√2
        assert_eq!(sq(&c([1, 0, 1, 0], 1)), <Rational as One>::one());
        // 1 + ω has modulus² 2 + √2
        assert!(c([1, 1, 0, 0], 0).squared_modulus().is_err());
    }

    #[test]
    fn division_and_sqrt() {
        let a = c([3, -1, 2, 5], 3);
        let d = c([1, 1, 0, 0], 1);
        let q = a.mul(&d).checked_div(&d).unwrap();
        assert_eq!(q, a);
        // 1 + ω has norm 2; 3 has norm 81 and does not divide 1.
        assert!(CycloScalar::one().checked_div(&CycloScalar::from_int(3)).is_none());
        assert_eq!(CycloScalar::from_int(2).sqrt(), Some(CycloScalar::root2()));
        assert_eq!(CycloScalar::i().sqrt().map(|s| s.mul(&s)), Some(CycloScalar::i()));
        assert_eq!(c([1, 0, 0, 0], 2).sqrt(), Some(CycloScalar::inv_root2()));
        assert!(CycloScalar::omega().sqrt().is_none());
        assert!(CycloScalar::from_int(3).sqrt().is_none());
    }

    #[test]
    fn phase_normalizer_makes_positive_real() {
        let x = c([0, 0, 0, -2], 1);
        let u = x.phase_normalizer();
        assert!(u.same_modulus(&CycloScalar::one()));
        assert_eq!(u.mul(&x), CycloScalar::root2());
    }

    #[test]
    fn display() {
        assert_eq!(CycloScalar::inv_root2().to_string(), "1/√2");
        assert_eq!(c([1, 1, 0, 0], 1).to_string(), "(1+ω)/√2");
        assert_eq!(c([1, 0, 1, 0], 1).to_string(), "ω");
        assert_eq!(c([0, 0, 0, -1], 0).to_string(), "-ω³");
        assert_eq!(CycloScalar::zero().to_string(), "0");
    }

    #[test]
    fn json_shape() {
        let x = c([1, 0, 0, 1], 3);
        let v = x.to_json();
        assert_eq!(v, serde_json::json!({"c":[1,0,0,1],"k":3}));
        assert_eq!(CycloScalar::from_json(&v).unwrap(), x);
    }
}
