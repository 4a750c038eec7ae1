//! Dirichlet characters modulo `q`.
//!
//! The unit group `(Z/qZ)^*` is split by the Chinese remainder theorem into
//! cyclic components with fixed generators: the smallest primitive root for an
//! odd prime power, `-1` and `5` for `2^e` with `e >= 3`, and `-1` for `4`.
//! A character is an exponent vector against those generators. Values are
//! carried as exact rational angles ([`RootOfUnity`]) and only converted to
//! floating complex numbers when accumulated.

use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64;

use crate::arith::{factor, gcd, inv_mod, lcm, pow_mod, reduce};
use crate::error::{Error, Result};

/// Largest modulus accepted by [`factor_modulus`].
pub const MODULUS_CEILING: u64 = 10_000_000;

const NONUNIT: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentKind {
    /// Cyclic group of an odd prime power.
    OddPrimePower,
    /// The order-2 factor generated by `-1` modulo `2^e`, `e >= 2`.
    MinusOne,
    /// The factor generated by `5` modulo `2^e`, `e >= 3`.
    Five,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicComponent {
    pub prime: u64,
    pub exponent: u32,
    pub prime_power: u64,
    pub order: u64,
    /// Generator as a residue modulo `prime_power`.
    pub generator: u64,
    pub kind: ComponentKind,
}

/// A modulus together with the cyclic decomposition of its unit group and
/// discrete-log tables for every component.
#[derive(Debug, Clone)]
pub struct FactoredModulus {
    q: u64,
    prime_powers: Vec<(u64, u32)>,
    components: Vec<CyclicComponent>,
    phi: u64,
    exponent: u64,
    dlog: Vec<Vec<u32>>,
}

/// `exp(2 pi i numerator / denominator)` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    pub numerator: u64,
    pub denominator: u64,
}

impl RootOfUnity {
    pub fn new(numerator: u64, denominator: u64) -> Self {
        let numerator = numerator % denominator;
        let g = gcd(numerator, denominator).max(1);
        RootOfUnity {
            numerator: numerator / g,
            denominator: denominator / g,
        }
    }

    pub fn one() -> Self {
        RootOfUnity {
            numerator: 0,
            denominator: 1,
        }
    }

    pub fn order(&self) -> u64 {
        self.denominator
    }

    pub fn to_complex(&self) -> Complex64 {
        unit_root(self.numerator, self.denominator)
    }
}

/// `exp(2 pi i k / n)`, exact on the real and imaginary axes.
pub fn unit_root(k: u64, n: u64) -> Complex64 {
    let k = k % n;
    if 4 * k % n == 0 {
        return match 4 * k / n {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    // Reduce to an angle in (-pi, pi] before taking sin/cos.
    let (k, sign) = if 2 * k > n { (n - k, -1.0) } else { (k, 1.0) };
    let (s, c) = (TAU * k as f64 / n as f64).sin_cos();
    Complex64::new(c, sign * s)
}

fn prime_divisors(n: u64) -> Vec<u64> {
    factor(n).into_iter().map(|(p, _)| p).collect()
}

fn has_order(g: u64, order: u64, modulus: u64, order_primes: &[u64]) -> bool {
    pow_mod(g, order, modulus) == 1
        && order_primes
            .iter()
            .all(|&r| pow_mod(g, order / r, modulus) != 1)
}

/// Smallest primitive root modulo an odd prime power, verified by exponentiation.
fn smallest_primitive_root(p: u64, e: u32) -> u64 {
    let pe = p.pow(e);
    let order = pe / p * (p - 1);
    let order_primes = prime_divisors(order);
    (2..pe)
        .find(|&g| g % p != 0 && has_order(g, order, pe, &order_primes))
        .expect("odd prime powers are cyclic")
}

/// Factor `q` and build the cyclic decomposition of `(Z/qZ)^*`.
pub fn factor_modulus(q: u64) -> Result<FactoredModulus> {
    if q == 0 {
        return Err(Error::ZeroModulus);
    }
    if q > MODULUS_CEILING {
        return Err(Error::ModulusTooLarge(q, MODULUS_CEILING));
    }
    let prime_powers = factor(q);
    let mut components = Vec::new();
    let mut dlog = Vec::new();
    for &(p, e) in &prime_powers {
        let pe = p.pow(e);
        if p == 2 {
            match e {
                1 => {}
                2 => {
                    let mut table = vec![NONUNIT; 4];
                    table[1] = 0;
                    table[3] = 1;
                    components.push(CyclicComponent {
                        prime: 2,
                        exponent: 2,
                        prime_power: 4,
                        order: 2,
                        generator: 3,
                        kind: ComponentKind::MinusOne,
                    });
                    dlog.push(table);
                }
                _ => {
                    let half = pe / 4;
                    let mut sign = vec![NONUNIT; pe as usize];
                    let mut five = vec![NONUNIT; pe as usize];
                    let mut x = 1u64;
                    for b in 0..half {
                        sign[x as usize] = 0;
                        sign[(pe - x) as usize] = 1;
                        five[x as usize] = b as u32;
                        five[(pe - x) as usize] = b as u32;
                        x = x * 5 % pe;
                    }
                    components.push(CyclicComponent {
                        prime: 2,
                        exponent: e,
                        prime_power: pe,
                        order: 2,
                        generator: pe - 1,
                        kind: ComponentKind::MinusOne,
                    });
                    components.push(CyclicComponent {
                        prime: 2,
                        exponent: e,
                        prime_power: pe,
                        order: half,
                        generator: 5,
                        kind: ComponentKind::Five,
                    });
                    dlog.push(sign);
                    dlog.push(five);
                }
            }
        } else {
            let g = smallest_primitive_root(p, e);
            let order = pe / p * (p - 1);
            let mut table = vec![NONUNIT; pe as usize];
            let mut x = 1u64;
            for k in 0..order {
                table[x as usize] = k as u32;
                x = x * g % pe;
            }
            components.push(CyclicComponent {
                prime: p,
                exponent: e,
                prime_power: pe,
                order,
                generator: g,
                kind: ComponentKind::OddPrimePower,
            });
            dlog.push(table);
        }
    }
    let phi = components.iter().map(|c| c.order).product::<u64>();
    let exponent = components.iter().fold(1, |acc, c| lcm(acc, c.order));
    let m = FactoredModulus {
        q,
        prime_powers,
        components,
        phi,
        exponent,
        dlog,
    };
    debug_assert!(m.verify_generators());
    Ok(m)
}

impl FactoredModulus {
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn prime_powers(&self) -> &[(u64, u32)] {
        &self.prime_powers
    }

    pub fn components(&self) -> &[CyclicComponent] {
        &self.components
    }

    /// Euler's totient of `q`: the product of the component orders.
    pub fn phi(&self) -> u64 {
        self.phi
    }

    /// Exponent of the unit group (lcm of component orders); every character
    /// value is a root of unity of order dividing it.
    pub fn group_exponent(&self) -> u64 {
        self.exponent
    }

    /// Checks every stated generator has exactly its stated order.
    pub fn verify_generators(&self) -> bool {
        let product: u64 = self.prime_powers.iter().map(|&(p, e)| p.pow(e)).product();
        product == self.q
            && self.components.iter().all(|c| {
                let primes = prime_divisors(c.order);
                c.order == 1 || has_order(c.generator, c.order, c.prime_power, &primes)
            })
    }

    /// Discrete logs of `n` against each component generator, or `None` when
    /// `gcd(n, q) > 1`.
    pub fn discrete_logs(&self, n: i64) -> Option<Vec<u64>> {
        let r = reduce(n, self.q);
        if self.q > 1 && gcd(r, self.q) != 1 {
            return None;
        }
        Some(
            self.components
                .iter()
                .zip(&self.dlog)
                .map(|(c, t)| t[(r % c.prime_power) as usize] as u64)
                .collect(),
        )
    }

    /// The element of `(Z/qZ)^*` that equals the generator of component `i`
    /// at its prime power and `1` at every other prime power.
    pub fn component_lift(&self, i: usize) -> u64 {
        let c = &self.components[i];
        let rest = self.q / c.prime_power;
        if rest == 1 {
            return c.generator % self.q;
        }
        let inv = inv_mod(rest % c.prime_power, c.prime_power).expect("coprime cofactors");
        let t = ((c.generator + c.prime_power - 1) % c.prime_power) * inv % c.prime_power;
        (1 + rest * t) % self.q
    }

    /// Number of characters modulo `q` (equals `phi(q)`).
    pub fn character_count(&self) -> u64 {
        self.phi
    }

    /// The character with the given mixed-radix index over the component orders.
    pub fn character(self: &Arc<Self>, index: u64) -> Result<DirichletCharacter> {
        if index >= self.phi {
            return Err(Error::InvalidParameters(format!(
                "character index {index} out of range for modulus {} ({} characters)",
                self.q, self.phi
            )));
        }
        let mut rest = index;
        let exponents = self
            .components
            .iter()
            .map(|c| {
                let a = rest % c.order;
                rest /= c.order;
                a
            })
            .collect();
        Ok(DirichletCharacter::from_exponents(self.clone(), exponents))
    }

    pub fn principal(self: &Arc<Self>) -> DirichletCharacter {
        DirichletCharacter::from_exponents(self.clone(), vec![0; self.components.len()])
    }

    /// `sum_{chi mod q} chi(m) conj(chi(n)) - phi(q) [m = n mod q]` in floating point.
    pub fn orthogonality_defect(self: &Arc<Self>, m: i64, n: i64) -> Result<Complex64> {
        self.check_coprime(m)?;
        self.check_coprime(n)?;
        let mut acc = crate::summation::ComplexTwoFold::new();
        for index in 0..self.phi {
            let chi = self.character(index)?;
            acc.add(chi.evaluate(m) * chi.evaluate(n).conj());
        }
        let diag = if reduce(m, self.q) == reduce(n, self.q) {
            self.phi as f64
        } else {
            0.0
        };
        Ok(acc.value() - diag)
    }

    /// The same defect in exact cyclotomic arithmetic: the residue of
    /// `sum_chi x^{angle(chi(m) conj chi(n))} - phi(q)[m = n]` modulo the
    /// cyclotomic polynomial of the group exponent. The defect vanishes
    /// exactly when every returned coefficient is zero.
    pub fn orthogonality_defect_exact(self: &Arc<Self>, m: i64, n: i64) -> Result<Vec<i64>> {
        self.check_coprime(m)?;
        self.check_coprime(n)?;
        let l = self.exponent;
        let mut counts = vec![0i64; l as usize];
        for index in 0..self.phi {
            let chi = self.character(index)?;
            let a = chi.angle_index(m).expect("coprime");
            let b = chi.angle_index(n).expect("coprime");
            counts[((a + l - b) % l) as usize] += 1;
        }
        if reduce(m, self.q) == reduce(n, self.q) {
            counts[0] -= self.phi as i64;
        }
        Ok(reduce_mod_cyclotomic(counts, &cyclotomic_polynomial(l)))
    }

    fn check_coprime(&self, n: i64) -> Result<()> {
        if self.q > 1 && gcd(reduce(n, self.q), self.q) != 1 {
            return Err(Error::NotCoprime { n, q: self.q });
        }
        Ok(())
    }
}

/// Integer coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    let mut numerators = Vec::new();
    let mut denominators = Vec::new();
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        match mobius(n / d) {
            1 => numerators.push(d as usize),
            -1 => denominators.push(d as usize),
            _ => {}
        }
    }
    let mut poly = vec![1i64];
    for d in numerators {
        // multiply by x^d - 1
        let mut next = vec![0i64; poly.len() + d];
        for (i, &c) in poly.iter().enumerate() {
            next[i + d] += c;
            next[i] -= c;
        }
        poly = next;
    }
    for d in denominators {
        // exact division by x^d - 1: q_i = q_{i-d} - p_i
        let deg = poly.len() - 1 - d;
        let mut quot = vec![0i64; deg + 1];
        for i in 0..=deg {
            let prev = if i >= d { quot[i - d] } else { 0 };
            quot[i] = prev - poly[i];
        }
        poly = quot;
    }
    poly
}

fn mobius(n: u64) -> i32 {
    let f = factor(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

fn reduce_mod_cyclotomic(mut poly: Vec<i64>, phi: &[i64]) -> Vec<i64> {
    let deg = phi.len() - 1;
    let support: Vec<(usize, i64)> = phi
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (i, c))
        .collect();
    for i in (deg..poly.len()).rev() {
        let lead = poly[i];
        if lead == 0 {
            continue;
        }
        for &(j, c) in &support {
            poly[i - deg + j] -= lead * c;
        }
    }
    poly.truncate(deg.max(1));
    if deg == 0 {
        poly[0] = 0;
    }
    poly
}

/// A Dirichlet character as an exponent vector against the component generators.
#[derive(Debug, Clone)]
pub struct DirichletCharacter {
    modulus: Arc<FactoredModulus>,
    exponents: Vec<u64>,
    steps: Vec<u64>,
    conductor: u64,
    parity: i8,
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus.q == other.modulus.q && self.exponents == other.exponents
    }
}

impl Eq for DirichletCharacter {}

impl DirichletCharacter {
    pub fn from_exponents(modulus: Arc<FactoredModulus>, exponents: Vec<u64>) -> Self {
        assert_eq!(exponents.len(), modulus.components.len());
        let l = modulus.exponent;
        let exponents: Vec<u64> = exponents
            .into_iter()
            .zip(&modulus.components)
            .map(|(a, c)| a % c.order)
            .collect();
        let steps = exponents
            .iter()
            .zip(&modulus.components)
            .map(|(&a, c)| a * (l / c.order) % l)
            .collect();
        let conductor = conductor_of(&modulus, &exponents);
        let mut chi = DirichletCharacter {
            modulus,
            exponents,
            steps,
            conductor,
            parity: 1,
        };
        chi.parity = match chi.angle_index(-1) {
            Some(0) | None => 1,
            Some(_) => -1,
        };
        chi
    }

    pub fn modulus(&self) -> &Arc<FactoredModulus> {
        &self.modulus
    }

    pub fn q(&self) -> u64 {
        self.modulus.q
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// Mixed-radix index of the exponent vector (inverse of [`FactoredModulus::character`]).
    pub fn index(&self) -> u64 {
        let mut index = 0;
        let mut radix = 1;
        for (a, c) in self.exponents.iter().zip(&self.modulus.components) {
            index += a * radix;
            radix *= c.order;
        }
        index
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus.q
    }

    pub fn is_principal(&self) -> bool {
        self.exponents.iter().all(|&a| a == 0)
    }

    /// `chi(-1)` as `+1` or `-1`.
    pub fn parity(&self) -> i8 {
        self.parity
    }

    /// Order of the character in the character group.
    pub fn order(&self) -> u64 {
        self.exponents
            .iter()
            .zip(&self.modulus.components)
            .fold(1, |acc, (&a, c)| lcm(acc, c.order / gcd(a, c.order)))
    }

    /// Angle of `chi(n)` as an index modulo the group exponent, `None` off units.
    pub fn angle_index(&self, n: i64) -> Option<u64> {
        let m = &self.modulus;
        let r = reduce(n, m.q);
        if m.q > 1 && gcd(r, m.q) != 1 {
            return None;
        }
        let l = m.exponent;
        let mut acc = 0u64;
        for ((c, table), &step) in m.components.iter().zip(&m.dlog).zip(&self.steps) {
            let k = table[(r % c.prime_power) as usize] as u64;
            acc = (acc + k * step) % l;
        }
        Some(acc)
    }

    /// Exact value of `chi(n)`; `None` when `gcd(n, q) > 1`.
    pub fn value(&self, n: i64) -> Option<RootOfUnity> {
        self.angle_index(n)
            .map(|k| RootOfUnity::new(k, self.modulus.exponent))
    }

    pub fn evaluate(&self, n: i64) -> Complex64 {
        match self.angle_index(n) {
            Some(k) => unit_root(k, self.modulus.exponent),
            None => Complex64::new(0.0, 0.0),
        }
    }

    /// Values `chi(0), chi(1), ..., chi(q - 1)`.
    pub fn values(&self) -> Vec<Complex64> {
        let l = self.modulus.exponent;
        let roots: Vec<Complex64> = (0..l).map(|k| unit_root(k, l)).collect();
        (0..self.modulus.q)
            .map(|r| match self.angle_index(r as i64) {
                Some(k) => roots[k as usize],
                None => Complex64::new(0.0, 0.0),
            })
            .collect()
    }

    pub fn conj(&self) -> DirichletCharacter {
        let exps = self
            .exponents
            .iter()
            .zip(&self.modulus.components)
            .map(|(&a, c)| (c.order - a) % c.order)
            .collect();
        DirichletCharacter::from_exponents(self.modulus.clone(), exps)
    }
}

fn conductor_of(m: &FactoredModulus, exponents: &[u64]) -> u64 {
    let mut conductor = 1u64;
    let mut i = 0;
    while i < m.components.len() {
        let c = &m.components[i];
        match c.kind {
            ComponentKind::OddPrimePower => {
                let a = exponents[i];
                if a != 0 {
                    // smallest k with chi trivial on units = 1 mod p^k
                    let p = c.prime;
                    let mut pk = p;
                    for _ in 1..=c.exponent {
                        let phi_pk = pk / p * (p - 1);
                        if (a as u128 * phi_pk as u128) % c.order as u128 == 0 {
                            break;
                        }
                        pk *= p;
                    }
                    conductor *= pk;
                }
                i += 1;
            }
            ComponentKind::MinusOne => {
                let sign = exponents[i];
                let five = if c.exponent >= 3 {
                    let f = &m.components[i + 1];
                    let b = exponents[i + 1];
                    i += 2;
                    (b != 0).then(|| f.order / gcd(b, f.order))
                } else {
                    i += 1;
                    None
                };
                conductor *= match five {
                    Some(t) => 4 * t,
                    None if sign != 0 => 4,
                    None => 1,
                };
            }
            ComponentKind::Five => unreachable!("five component always follows its sign component"),
        }
    }
    conductor
}

/// Which characters a family contains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Selection {
    All,
    PrimitiveOnly,
    /// Explicit character indices (see [`DirichletCharacter::index`]).
    Custom(Vec<u64>),
}

#[derive(Debug, Clone)]
pub struct CharacterFamily {
    pub q: u64,
    pub members: Vec<DirichletCharacter>,
    pub selection: Selection,
}

impl CharacterFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &DirichletCharacter> {
        self.members.iter()
    }
}

pub fn enumerate_characters(m: &Arc<FactoredModulus>, selection: Selection) -> Result<CharacterFamily> {
    let members = match &selection {
        Selection::All => (0..m.phi).map(|i| m.character(i)).collect::<Result<Vec<_>>>()?,
        Selection::PrimitiveOnly => (0..m.phi)
            .map(|i| m.character(i))
            .filter(|c| c.as_ref().map(|c| c.is_primitive()).unwrap_or(true))
            .collect::<Result<Vec<_>>>()?,
        Selection::Custom(indices) => {
            let mut sorted = indices.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != indices.len() {
                return Err(Error::InvalidParameters("custom family repeats a character".into()));
            }
            indices.iter().map(|&i| m.character(i)).collect::<Result<Vec<_>>>()?
        }
    };
    Ok(CharacterFamily {
        q: m.q,
        members,
        selection,
    })
}

/// Number of primitive characters modulo `q`, from its multiplicative formula.
pub fn primitive_count(q: u64) -> u64 {
    factor(q)
        .into_iter()
        .map(|(p, e)| {
            if e == 1 {
                p.saturating_sub(2)
            } else {
                let phi_e = p.pow(e - 1) * (p - 1);
                let phi_e1 = if e == 2 { p - 1 } else { p.pow(e - 2) * (p - 1) };
                phi_e - phi_e1
            }
        })
        .product()
}

/// The character modulo `q` induced by `psi` (modulo `f`, `f | q`).
pub fn induce(psi: &DirichletCharacter, q: u64) -> Result<DirichletCharacter> {
    let f = psi.q();
    if q == 0 || q % f != 0 {
        return Err(Error::NotADivisor { f, q });
    }
    let target = Arc::new(factor_modulus(q)?);
    let exponents = (0..target.components.len())
        .map(|i| {
            let c = &target.components[i];
            let lift = target.component_lift(i);
            let v = psi.value(lift as i64).expect("lift is a unit");
            // v has order dividing the component order
            debug_assert_eq!(c.order % v.denominator, 0);
            v.numerator * (c.order / v.denominator)
        })
        .collect();
    Ok(DirichletCharacter::from_exponents(target, exponents))
}

pub fn conductor(chi: &DirichletCharacter) -> u64 {
    chi.conductor()
}

pub fn evaluate(chi: &DirichletCharacter, n: i64) -> Complex64 {
    chi.evaluate(n)
}

pub fn orthogonality_defect(q: u64, m: i64, n: i64) -> Result<Complex64> {
    Arc::new(factor_modulus(q)?).orthogonality_defect(m, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn modulus(q: u64) -> Arc<FactoredModulus> {
        Arc::new(factor_modulus(q).unwrap())
    }

    #[test]
    fn trivial_modulus() {
        let m = modulus(1);
        assert_eq!(m.phi(), 1);
        assert!(m.components().is_empty());
        let chi = m.principal();
        assert_eq!(chi.evaluate(17), Complex64::new(1.0, 0.0));
        assert!(chi.is_primitive());
        assert_eq!(factor_modulus(0).unwrap_err(), Error::ZeroModulus);
    }

    #[test]
    fn modulus_eight_has_two_order_two_components() {
        let m = modulus(8);
        let c = m.components();
        assert_eq!(c.len(), 2);
        assert_eq!((c[0].order, c[0].generator), (2, 7));
        assert_eq!((c[1].order, c[1].generator), (2, 5));
        // 5^2 = 25 = 1 mod 8 while 5 != 1
        assert_eq!(pow_mod(5, 2, 8), 1);
        assert_ne!(5 % 8, 1);
        assert!(m.verify_generators());
    }

    #[test]
    fn modulus_101_is_cyclic_of_order_100() {
        let m = modulus(101);
        let c = &m.components()[0];
        assert_eq!(c.order, 100);
        // brute-force order of the chosen generator
        let mut x = 1;
        let mut order = 0;
        loop {
            x = x * c.generator % 101;
            order += 1;
            if x == 1 {
                break;
            }
        }
        assert_eq!(order, 100);
        assert_eq!(c.generator, 2);
    }

    #[test]
    fn prime_power_generators_have_full_order() {
        for (p, e) in [(3u64, 4u32), (5, 3), (487, 2), (7, 2)] {
            let g = smallest_primitive_root(p, e);
            let pe = p.pow(e);
            let order = pe / p * (p - 1);
            assert!(has_order(g, order, pe, &prime_divisors(order)));
            // nothing smaller generates
            assert!((2..g).all(|h| h % p == 0 || !has_order(h, order, pe, &prime_divisors(order))));
        }
    }

    #[test]
    fn family_sizes() {
        let all4 = enumerate_characters(&modulus(4), Selection::All).unwrap();
        assert_eq!(all4.len(), 2);
        let prim8 = enumerate_characters(&modulus(8), Selection::PrimitiveOnly).unwrap();
        assert_eq!(prim8.len(), 2);
        let prim2 = enumerate_characters(&modulus(2), Selection::PrimitiveOnly).unwrap();
        assert!(prim2.is_empty());
        // brute force over all four characters mod 8
        let all8 = enumerate_characters(&modulus(8), Selection::All).unwrap();
        let conductors: Vec<u64> = all8.iter().map(|c| c.conductor()).collect();
        assert_eq!(conductors.iter().filter(|&&f| f == 8).count(), 2);
        let custom = enumerate_characters(&modulus(7), Selection::Custom(vec![1, 3])).unwrap();
        assert_eq!(custom.len(), 2);
        assert!(enumerate_characters(&modulus(7), Selection::Custom(vec![1, 1])).is_err());
    }

    #[test]
    fn character_mod_four() {
        let m = modulus(4);
        let chi = m.character(1).unwrap();
        assert_eq!(chi.evaluate(3), Complex64::new(-1.0, 0.0));
        assert_eq!(chi.evaluate(1), Complex64::new(1.0, 0.0));
        assert_eq!(chi.parity(), -1);
        // orthogonality over n: sum_{n mod 4} chi(n) = 0
        let s: Complex64 = (0..4).map(|n| chi.evaluate(n)).sum();
        assert_eq!(s, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn non_units_vanish() {
        let m = modulus(6);
        for chi in enumerate_characters(&m, Selection::All).unwrap().iter() {
            assert_eq!(chi.evaluate(3), Complex64::new(0.0, 0.0));
            assert!(chi.value(3).is_none());
        }
    }

    #[test]
    fn induction() {
        let one = modulus(1).principal();
        let induced = induce(&one, 12).unwrap();
        assert!(induced.is_principal());
        assert_eq!(induced.conductor(), 1);

        let psi = modulus(4).character(1).unwrap();
        let chi = induce(&psi, 12).unwrap();
        assert_eq!(chi.evaluate(5), psi.evaluate(5));
        assert_eq!(chi.evaluate(3), Complex64::new(0.0, 0.0));
        assert_eq!(chi.conductor(), 4);
        assert!(matches!(induce(&psi, 10), Err(Error::NotADivisor { .. })));
    }

    #[test]
    fn principal_conductor() {
        assert_eq!(modulus(12).principal().conductor(), 1);
    }

    #[test]
    fn orthogonality_examples() {
        let m7 = modulus(7);
        assert!(m7.orthogonality_defect(3, 3).unwrap().norm() < 1e-12);
        assert!(m7.orthogonality_defect(2, 3).unwrap().norm() < 1e-12);
        let m12 = modulus(12);
        // direct summation over the four characters mod 12
        let direct: Complex64 = (0..4)
            .map(|i| {
                let chi = m12.character(i).unwrap();
                chi.evaluate(5) * chi.evaluate(7).conj()
            })
            .sum();
        assert!(direct.norm() < 1e-12);
        assert!(m12.orthogonality_defect(5, 7).unwrap().norm() < 1e-12);
        assert!(m12.orthogonality_defect_exact(5, 7).unwrap().iter().all(|&c| c == 0));
        assert!(matches!(m12.orthogonality_defect(2, 5), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        // 1 + x + ... + x^{n-1} vanishes mod Phi_n
        let ones = vec![1i64; 12];
        assert!(reduce_mod_cyclotomic(ones, &cyclotomic_polynomial(12)).iter().all(|&c| c == 0));
    }

    #[test]
    fn primitive_count_matches_enumeration() {
        for q in 1..=200u64 {
            let m = modulus(q);
            let direct = enumerate_characters(&m, Selection::PrimitiveOnly).unwrap().len() as u64;
            assert_eq!(direct, primitive_count(q), "q = {q}");
        }
    }

    #[test]
    fn index_round_trip() {
        let m = modulus(120);
        for i in 0..m.phi() {
            assert_eq!(m.character(i).unwrap().index(), i);
        }
    }
}
