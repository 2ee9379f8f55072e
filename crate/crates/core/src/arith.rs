//! Exact scalars and normalized arithmetic functions.

use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

#[derive(Clone)]
enum Kind {
    One,
    Id,
    Square,
    SigmaK(u32),
    Table(Arc<Vec<Rational>>),
    Tilde(Box<ArithFn>),
}

/// A normalized arithmetic function `g` with `g(1) = 1`.
///
/// Divisor-sum kinds keep a sieve-filled memo that grows on demand; clones
/// share it, so a window filled once is visible to every copy.
#[derive(Clone)]
pub struct ArithFn {
    kind: Kind,
    label: String,
    memo: Arc<RwLock<Vec<BigInt>>>,
}

impl fmt::Debug for ArithFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("ArithFn").field(&self.label).finish()
    }
}

impl ArithFn {
    fn with_kind(kind: Kind, label: impl Into<String>) -> Self {
        ArithFn {
            kind,
            label: label.into(),
            memo: Arc::new(RwLock::new(Vec::new())),
        }
    }

    pub fn one() -> Self {
        Self::with_kind(Kind::One, "one")
    }

    pub fn id() -> Self {
        Self::with_kind(Kind::Id, "id")
    }

    pub fn square() -> Self {
        Self::with_kind(Kind::Square, "square")
    }

    pub fn sigma() -> Self {
        Self::with_kind(Kind::SigmaK(1), "sigma")
    }

    /// `sigma_k(n) = sum_{d | n} d^k`.
    pub fn sigma_k(k: u32) -> Self {
        if k == 1 {
            return Self::sigma();
        }
        Self::with_kind(Kind::SigmaK(k), format!("sigma_k={k}"))
    }

    /// A user table; `values[k]` is `g(k + 1)`. Rejects tables with `g(1) != 1`.
    pub fn custom(label: impl Into<String>, values: Vec<Rational>) -> Result<Self> {
        let label = label.into();
        match values.first() {
            Some(v) if v.is_one() => Ok(Self::with_kind(Kind::Table(Arc::new(values)), label)),
            Some(v) => Err(Error::NotNormalized {
                label,
                value: v.to_string(),
            }),
            None => Err(Error::Domain(format!("empty table for {label}"))),
        }
    }

    /// Parses a built-in name: `one`, `id`, `square`, `sigma`, `sigma_k=K`,
    /// each optionally followed by `~` for the tilde transform.
    pub fn from_name(name: &str) -> Result<Self> {
        let name = name.trim();
        if let Some(inner) = name.strip_suffix('~') {
            return Ok(Self::from_name(inner)?.tilde());
        }
        match name {
            "one" | "1" => Ok(Self::one()),
            "id" => Ok(Self::id()),
            "square" | "s" => Ok(Self::square()),
            "sigma" => Ok(Self::sigma()),
            _ => match name.strip_prefix("sigma_k=").map(str::parse::<u32>) {
                Some(Ok(k)) => Ok(Self::sigma_k(k)),
                _ => Err(Error::UnknownFunction(name.to_string())),
            },
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Largest `n` the function is defined at, `None` when unbounded.
    pub fn domain_limit(&self) -> Option<usize> {
        match &self.kind {
            Kind::Table(v) => Some(v.len()),
            Kind::Tilde(inner) => inner.domain_limit(),
            _ => None,
        }
    }

    pub fn eval(&self, n: usize) -> Result<Rational> {
        if n == 0 {
            return Err(Error::out_of_range(0, "n >= 1"));
        }
        Ok(match &self.kind {
            Kind::One => Rational::one(),
            Kind::Id => Rational::from_integer(n.into()),
            Kind::Square => Rational::from_integer(BigInt::from(n) * n),
            Kind::SigmaK(k) => {
                self.fill_sigma(n, *k);
                let memo = self.memo.read().expect("sigma memo poisoned");
                Rational::from_integer(memo[n].clone())
            }
            Kind::Table(values) => values
                .get(n - 1)
                .cloned()
                .ok_or_else(|| Error::out_of_range(n, format!("1..={}", values.len())))?,
            Kind::Tilde(inner) => inner.eval(n)? / BigInt::from(n),
        })
    }

    /// `g(1), ..., g(n_max)`; sieve kinds are filled in one batch.
    pub fn values(&self, n_max: usize) -> Result<Vec<Rational>> {
        if let Some(limit) = self.domain_limit() {
            if n_max > limit {
                return Err(Error::out_of_range(n_max, format!("1..={limit}")));
            }
        }
        match &self.kind {
            Kind::SigmaK(k) => {
                self.fill_sigma(n_max, *k);
                let memo = self.memo.read().expect("sigma memo poisoned");
                Ok(memo[1..=n_max]
                    .iter()
                    .map(|v| Rational::from_integer(v.clone()))
                    .collect())
            }
            Kind::Tilde(inner) => Ok(inner
                .values(n_max)?
                .into_iter()
                .enumerate()
                .map(|(i, v)| v / BigInt::from(i + 1))
                .collect()),
            _ => (1..=n_max).map(|n| self.eval(n)).collect(),
        }
    }

    /// `g(1..=n_max)` as integers, or `None` if some value is not integral.
    pub fn integer_values(&self, n_max: usize) -> Result<Option<Vec<BigInt>>> {
        let values = self.values(n_max)?;
        if values.iter().all(|v| v.is_integer()) {
            Ok(Some(values.into_iter().map(|v| v.to_integer()).collect()))
        } else {
            Ok(None)
        }
    }

    /// `n -> g(n) / n`.
    pub fn tilde(&self) -> ArithFn {
        Self::with_kind(
            Kind::Tilde(Box::new(self.clone())),
            format!("{}~", self.label),
        )
    }

    /// `f(n) = sum_{d | n} mu(d) g(n / d)` for `n <= n_max`.
    pub fn moebius_convolve(&self, n_max: usize) -> Result<ArithFn> {
        let n_max = n_max.max(1);
        let g = self.values(n_max)?;
        let mu = moebius_sieve(n_max);
        let mut f = vec![Rational::zero(); n_max];
        for d in 1..=n_max {
            if mu[d] == 0 {
                continue;
            }
            for j in 1..=n_max / d {
                let term = &g[j - 1];
                if mu[d] > 0 {
                    f[d * j - 1] += term;
                } else {
                    f[d * j - 1] -= term;
                }
            }
        }
        Ok(Self::with_kind(
            Kind::Table(Arc::new(f)),
            format!("mu*{}", self.label),
        ))
    }

    fn fill_sigma(&self, n: usize, k: u32) {
        if self.memo.read().expect("sigma memo poisoned").len() > n {
            return;
        }
        let mut memo = self.memo.write().expect("sigma memo poisoned");
        if memo.len() <= n {
            let target = n.max(2 * memo.len()).max(64);
            *memo = sigma_k_sieve(target, k);
        }
    }
}

/// Linear sieve for the Moebius function; index 0 is unused.
pub fn moebius_sieve(n_max: usize) -> Vec<i8> {
    let mut mu = vec![0i8; n_max + 1];
    if n_max >= 1 {
        mu[1] = 1;
    }
    let mut spf = vec![0usize; n_max + 1];
    let mut primes = Vec::new();
    for i in 2..=n_max {
        if spf[i] == 0 {
            spf[i] = i;
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            if p > spf[i] || i * p > n_max {
                break;
            }
            spf[i * p] = p;
            mu[i * p] = if p == spf[i] { 0 } else { -mu[i] };
        }
    }
    mu
}

/// Linear sieve for `sigma_k(n)`, `1 <= n <= n_max`; index 0 holds 0.
///
/// Uses multiplicativity with the smallest-prime-power part `pw[n]`:
/// `sigma_k(n) = sigma_k(n / pw) * sigma_k(pw)` and
/// `sigma_k(p^e) = sigma_k(p^(e-1)) + p^(e k)`.
pub fn sigma_k_sieve(n_max: usize, k: u32) -> Vec<BigInt> {
    let mut sig = vec![BigInt::zero(); n_max + 1];
    if n_max == 0 {
        return sig;
    }
    sig[1] = BigInt::one();
    let mut spf = vec![0usize; n_max + 1];
    let mut pw = vec![0usize; n_max + 1];
    let mut primes: Vec<usize> = Vec::new();
    for i in 2..=n_max {
        if spf[i] == 0 {
            spf[i] = i;
            pw[i] = i;
            primes.push(i);
            sig[i] = BigInt::one() + Pow::pow(BigInt::from(i), k);
        }
        for &p in &primes {
            if p > spf[i] || i * p > n_max {
                break;
            }
            let ip = i * p;
            spf[ip] = p;
            if p == spf[i] {
                pw[ip] = pw[i] * p;
                sig[ip] = if pw[ip] == ip {
                    &sig[i] + Pow::pow(BigInt::from(ip), k)
                } else {
                    &sig[ip / pw[ip]] * &sig[pw[ip]]
                };
            } else {
                pw[ip] = p;
                sig[ip] = &sig[i] * &sig[p];
            }
        }
    }
    sig
}

/// `H(n) = 1 + 1/2 + ... + 1/n`, with `H(0) = 0`.
pub fn harmonic(n: usize) -> Rational {
    harmonic_prefix(n).pop().unwrap_or_else(Rational::zero)
}

/// `[H(0), H(1), ..., H(n)]`.
pub fn harmonic_prefix(n: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n + 1);
    let mut h = Rational::zero();
    out.push(h.clone());
    for k in 1..=n {
        h += Rational::new(BigInt::one(), BigInt::from(k));
        out.push(h.clone());
    }
    out
}

/// Harmonic numbers over a common denominator: `(a, l)` with
/// `H(k) = a[k] / l` for `0 <= k <= n` and `l = lcm(1, ..., n)`.
///
/// Long scans compare these integers instead of reduced fractions, whose
/// normalization dominates the cost once `n` reaches the thousands.
pub fn harmonic_numerators(n: usize) -> (Vec<BigInt>, BigInt) {
    let mut l = BigInt::one();
    let mut composite = vec![false; n + 1];
    for p in 2..=n {
        if composite[p] {
            continue;
        }
        for q in (p * p..=n).step_by(p) {
            composite[q] = true;
        }
        let mut pk = p;
        while pk <= n / p {
            pk *= p;
        }
        l *= pk;
    }
    let mut a = Vec::with_capacity(n + 1);
    let mut acc = BigInt::zero();
    a.push(acc.clone());
    for k in 1..=n {
        acc += &l / k;
        a.push(acc.clone());
    }
    (a, l)
}

pub fn factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
