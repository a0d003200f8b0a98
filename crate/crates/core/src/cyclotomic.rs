//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! A [`CycNumber`] stores its coefficients on the power basis
//! `1, ζ_N, …, ζ_N^{φ(N)-1}`, reduced modulo the `N`-th cyclotomic
//! polynomial. Numbers of different orders are combined by lifting both to
//! the field of the least common multiple.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Integer coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    // x^n - 1
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let div = cyclotomic_polynomial(d);
            num = divide_monic(&num, &div);
        }
    }
    let p = Arc::new(num);
    cache.lock().unwrap().insert(n, p.clone());
    p
}

fn divide_monic(num: &[i64], div: &[i64]) -> Vec<i64> {
    let dn = div.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        for (j, &d) in div.iter().enumerate() {
            rem[k + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0), "inexact cyclotomic division");
    quot
}

/// Euler's totient, as the degree of `Φ_n`.
pub fn totient(n: u32) -> usize {
    cyclotomic_polynomial(n).len() - 1
}

#[derive(Clone, Debug)]
pub struct CycNumber {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl CycNumber {
    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(q: BigRational) -> Self {
        CycNumber {
            order: 1,
            coeffs: vec![q],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    /// `num/den` as an element of `Q`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    /// `ζ_n^k`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n >= 1);
        let e = k.rem_euclid(n as i64) as usize;
        let mut raw = vec![BigRational::zero(); n as usize];
        raw[e] = BigRational::one();
        Self::reduce(n, raw)
    }

    /// Builds `Σ c_k ζ_n^k` from coefficients on any number of powers.
    pub fn from_powers(n: u32, coeffs: &[BigRational]) -> Self {
        assert!(n >= 1);
        let mut raw = vec![BigRational::zero(); n as usize];
        for (k, c) in coeffs.iter().enumerate() {
            raw[k % n as usize] += c;
        }
        Self::reduce(n, raw)
    }

    /// Reduces a polynomial in `ζ_n` (exponents `0..n`) modulo `Φ_n`.
    fn reduce(n: u32, mut raw: Vec<BigRational>) -> Self {
        let phi = cyclotomic_polynomial(n);
        let deg = phi.len() - 1;
        for k in (deg..raw.len()).rev() {
            if raw[k].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut raw[k], BigRational::zero());
            for (j, &pj) in phi.iter().enumerate().take(deg) {
                if pj != 0 {
                    raw[k - deg + j] -= &c * BigRational::from_integer(pj.into());
                }
            }
        }
        raw.truncate(deg);
        CycNumber {
            order: n,
            coeffs: raw,
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficients on the power basis of `Q(ζ_order)`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Re-expresses this number in `Q(ζ_target)`; `target` must be a multiple of the order.
    pub fn lift(&self, target: u32) -> Self {
        assert!(
            target.is_multiple_of(self.order),
            "cannot lift order {} to {target}",
            self.order
        );
        if target == self.order {
            return self.clone();
        }
        let step = (target / self.order) as usize;
        let mut raw = vec![BigRational::zero(); target as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            raw[(k * step) % target as usize] += c;
        }
        Self::reduce(target, raw)
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let l = a.order.lcm(&b.order);
        (a.lift(l), b.lift(l))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// Complex conjugate, `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let n = self.order as usize;
        let mut raw = vec![BigRational::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            raw[(n - k) % n] += c;
        }
        Self::reduce(self.order, raw)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CycNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&BigRational::from_integer(k.into()))
    }

    /// Canonical text form: a rational `p/q` (or `p`), otherwise `[c0,c1,…]@N`.
    pub fn to_canonical_string(&self) -> String {
        if let Some(q) = self.to_rational() {
            return format_rational(&q);
        }
        let parts: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        format!("[{}]@{}", parts.join(","), self.order)
    }
}

/// `p/q` with `q > 0` in lowest terms, or just `p` for integers.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `p/q` or a decimal-free signed rational.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| format!("bad rational `{s}`"))?;
    let d: BigInt = d.parse().map_err(|_| format!("bad rational `{s}`"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(BigRational::new(n, d))
}

impl FromStr for CycNumber {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('[') {
            let (body, order) = rest
                .split_once("]@")
                .ok_or_else(|| format!("expected `[c0,c1,...]@N`, got `{s}`"))?;
            let order: u32 = order
                .trim()
                .parse()
                .map_err(|_| format!("bad cyclotomic order in `{s}`"))?;
            if order == 0 {
                return Err("cyclotomic order must be positive".into());
            }
            let coeffs = if body.trim().is_empty() {
                Vec::new()
            } else {
                body.split(',')
                    .map(parse_rational)
                    .collect::<Result<Vec<_>, _>>()?
            };
            Ok(CycNumber::from_powers(order, &coeffs))
        } else {
            parse_rational(s).map(CycNumber::from_rational)
        }
    }
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycNumber {}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl Add for &CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: &CycNumber) -> CycNumber {
        let (mut a, b) = CycNumber::common(self, rhs);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs) {
            *x += y;
        }
        a
    }
}

impl Sub for &CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: &CycNumber) -> CycNumber {
        let (mut a, b) = CycNumber::common(self, rhs);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs) {
            *x -= y;
        }
        a
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: &CycNumber) -> CycNumber {
        if self.order == 1 {
            return rhs.scale(&self.coeffs[0]);
        }
        if rhs.order == 1 {
            return self.scale(&rhs.coeffs[0]);
        }
        let (a, b) = CycNumber::common(self, rhs);
        let n = a.order as usize;
        let mut raw = vec![BigRational::zero(); n];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    raw[(i + j) % n] += x * y;
                }
            }
        }
        CycNumber::reduce(a.order, raw)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CycNumber {
            type Output = CycNumber;
            fn $m(self, rhs: CycNumber) -> CycNumber {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        -&self
    }
}

impl std::iter::Sum for CycNumber {
    fn sum<I: Iterator<Item = CycNumber>>(iter: I) -> CycNumber {
        iter.fold(CycNumber::zero(), |acc, x| &acc + &x)
    }
}

impl From<BigRational> for CycNumber {
    fn from(q: BigRational) -> Self {
        CycNumber::from_rational(q)
    }
}

impl From<i64> for CycNumber {
    fn from(n: i64) -> Self {
        CycNumber::from_int(n)
    }
}
