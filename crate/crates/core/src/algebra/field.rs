use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::poly;
use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// A field element, stored as the base-p digit packing of its canonical
/// residue `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub(crate) fn from_encoding(e: u32) -> Elem {
        Elem(e)
    }

    pub fn encoding(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Which subset of the field the coordinates range over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Full,
    Units,
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Domain::Full => "full",
            Domain::Units => "units",
        })
    }
}

impl FromStr for Domain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Domain::Full),
            "units" => Ok(Domain::Units),
            other => Err(Error::Parse(format!("unknown domain {other:?}"))),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Validated description of F_{p^m}: characteristic, degree and a monic
/// irreducible modulus `c_0, ..., c_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FieldSpec {
    p: u32,
    m: u32,
    modulus: Vec<u32>,
}

impl FieldSpec {
    /// Validate `(p, m, modulus)`. Without a modulus the lexicographically
    /// first monic irreducible polynomial of degree `m` is used.
    pub fn new(p: u64, m: u32, modulus: Option<Vec<u32>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m < 1 {
            return Err(Error::InvalidDegree);
        }
        match p.checked_pow(m) {
            Some(q) if q <= MAX_FIELD_ORDER => {}
            _ => return Err(Error::FieldTooLarge { p, m }),
        }
        let p = p as u32;
        let modulus = match modulus {
            None => poly::default_modulus(p, m),
            Some(c) => {
                if c.len() != m as usize + 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected {} coefficients for degree {m}, got {}",
                        m + 1,
                        c.len()
                    )));
                }
                if let Some(&bad) = c.iter().find(|&&x| x >= p) {
                    return Err(Error::InvalidModulus(format!(
                        "coefficient {bad} is not in [0, {p})"
                    )));
                }
                if c[m as usize] != 1 {
                    return Err(Error::InvalidModulus("modulus must be monic".into()));
                }
                if m == 1 && c[0] != 0 {
                    return Err(Error::InvalidModulus(
                        "prime fields use the modulus t, i.e. 0,1".into(),
                    ));
                }
                if !poly::is_irreducible(&c, p) {
                    return Err(Error::ReducibleModulus { modulus: c, p });
                }
                c
            }
        };
        Ok(FieldSpec { p, m, modulus })
    }

    /// The field of order `q` with its default modulus.
    pub fn with_order(q: u64) -> Result<Self> {
        let not_prime_power = || Error::InvalidModulus(format!("{q} is not a prime power"));
        let p = (2..=q).find(|d| q.is_multiple_of(*d)).ok_or_else(not_prime_power)?;
        let (mut rest, mut m) = (q, 0u32);
        while rest % p == 0 {
            rest /= p;
            m += 1;
        }
        if rest != 1 {
            return Err(not_prime_power());
        }
        FieldSpec::new(p, m, None)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.m)
    }
}

/// Accepts `p`, `p^m` or `p^m:c0,c1,...,cm`.
impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("field {s:?}: {what}"));
        let (head, modulus) = match s.split_once(':') {
            Some((h, tail)) => {
                let coeffs = tail
                    .split(',')
                    .map(|c| c.trim().parse::<u32>().map_err(|_| bad("bad modulus coefficient")))
                    .collect::<Result<Vec<_>>>()?;
                (h, Some(coeffs))
            }
            None => (s, None),
        };
        let (p, m) = match head.split_once('^') {
            Some((p, m)) => (
                p.trim().parse::<u64>().map_err(|_| bad("bad characteristic"))?,
                m.trim().parse::<u32>().map_err(|_| bad("bad degree"))?,
            ),
            None => (head.trim().parse::<u64>().map_err(|_| bad("bad order"))?, 1),
        };
        FieldSpec::new(p, m, modulus)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 1 {
            write!(f, "{}", self.p)
        } else {
            let coeffs: Vec<String> = self.modulus.iter().map(u32::to_string).collect();
            write!(f, "{}^{}:{}", self.p, self.m, coeffs.join(","))
        }
    }
}

/// A realized finite field: the spec plus exp/log tables over a primitive
/// element, so multiplication is two lookups.
#[derive(Clone, Debug)]
pub struct Field {
    spec: FieldSpec,
    q: u32,
    primitive: Elem,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl Field {
    pub fn new(spec: FieldSpec) -> Field {
        let q = spec.order();
        let primitive = find_primitive(&spec);
        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut log = vec![0u32; q as usize];
        let gen = to_digits(primitive.0, &spec);
        let mut cur = vec![1u32];
        for i in 0..q - 1 {
            let enc = from_digits(&cur, spec.p);
            exp.push(enc);
            log[enc as usize] = i;
            cur = poly::mul_mod(&cur, &gen, &spec.modulus, spec.p);
        }
        Field {
            spec,
            q,
            primitive,
            exp,
            log,
        }
    }

    /// Convenience constructor: validate and realize in one step.
    pub fn with_params(p: u64, m: u32, modulus: Option<Vec<u32>>) -> Result<Field> {
        FieldSpec::new(p, m, modulus).map(Field::new)
    }

    pub fn prime(p: u64) -> Result<Field> {
        Field::with_params(p, 1, None)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn p(&self) -> u32 {
        self.spec.p
    }

    pub fn m(&self) -> u32 {
        self.spec.m
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn elem(&self, encoding: u64) -> Result<Elem> {
        if encoding < self.q as u64 {
            Ok(Elem(encoding as u32))
        } else {
            Err(Error::ElementOutOfRange {
                value: encoding,
                order: self.q as u64,
            })
        }
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.spec.p as i64) as u32)
    }

    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        let p = self.spec.p;
        if self.spec.m == 1 {
            return Elem((x.0 + y.0) % p);
        }
        if p == 2 {
            return Elem(x.0 ^ y.0);
        }
        let (mut a, mut b, mut place, mut out) = (x.0, y.0, 1u32, 0u32);
        for _ in 0..self.spec.m {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        Elem(out)
    }

    pub fn neg(&self, x: Elem) -> Elem {
        let p = self.spec.p;
        if self.spec.m == 1 {
            return Elem((p - x.0) % p);
        }
        if p == 2 {
            return x;
        }
        let (mut a, mut place, mut out) = (x.0, 1u32, 0u32);
        for _ in 0..self.spec.m {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        Elem(out)
    }

    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        if x.0 == 0 || y.0 == 0 {
            return Elem::ZERO;
        }
        let n = self.q - 1;
        let l = (self.log[x.0 as usize] as u64 + self.log[y.0 as usize] as u64) % n as u64;
        Elem(self.exp[l as usize])
    }

    pub fn inv(&self, x: Elem) -> Result<Elem> {
        if x.0 == 0 {
            return Err(Error::InverseOfZero);
        }
        let n = self.q - 1;
        let l = self.log[x.0 as usize];
        Ok(Elem(self.exp[((n - l) % n) as usize]))
    }

    pub fn div(&self, x: Elem, y: Elem) -> Result<Elem> {
        Ok(self.mul(x, self.inv(y)?))
    }

    pub fn pow(&self, x: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if x.0 == 0 {
            return Elem::ZERO;
        }
        let n = (self.q - 1) as u64;
        let l = self.log[x.0 as usize] as u64 * (e % n) % n;
        Elem(self.exp[l as usize])
    }

    /// Multiplication by explicit polynomial arithmetic modulo the modulus,
    /// independent of the exp/log tables.
    pub fn mul_reference(&self, x: Elem, y: Elem) -> Elem {
        let a = to_digits(x.0, &self.spec);
        let b = to_digits(y.0, &self.spec);
        Elem(from_digits(
            &poly::mul_mod(&a, &b, &self.spec.modulus, self.spec.p),
            self.spec.p,
        ))
    }

    pub fn sum<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items.into_iter().fold(Elem::ZERO, |acc, x| self.add(acc, x))
    }

    /// Elements in ascending encoding order; `Units` omits zero.
    pub fn elements(&self, domain: Domain) -> impl Iterator<Item = Elem> {
        let start = match domain {
            Domain::Full => 0,
            Domain::Units => 1,
        };
        (start..self.q).map(Elem)
    }

    pub fn domain_size(&self, domain: Domain) -> u32 {
        match domain {
            Domain::Full => self.q,
            Domain::Units => self.q - 1,
        }
    }

    /// True iff the canonical representative is a constant polynomial.
    pub fn in_prime_subfield(&self, x: Elem) -> bool {
        x.0 < self.spec.p
    }

    /// Smallest-encoding element of multiplicative order q - 1.
    pub fn primitive_element(&self) -> Elem {
        self.primitive
    }
}

fn to_digits(mut enc: u32, spec: &FieldSpec) -> Vec<u32> {
    let mut digits = Vec::with_capacity(spec.m as usize);
    for _ in 0..spec.m {
        digits.push(enc % spec.p);
        enc /= spec.p;
    }
    digits
}

fn from_digits(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn find_primitive(spec: &FieldSpec) -> Elem {
    let q = spec.order();
    if q == 2 {
        return Elem::ONE;
    }
    let order = (q - 1) as u64;
    let factors = prime_factors(order);
    let pow = |x: &[u32], mut e: u64| {
        let mut base = x.to_vec();
        let mut acc = vec![1u32];
        while e > 0 {
            if e & 1 == 1 {
                acc = poly::mul_mod(&acc, &base, &spec.modulus, spec.p);
            }
            base = poly::mul_mod(&base, &base, &spec.modulus, spec.p);
            e >>= 1;
        }
        acc
    };
    for enc in 1..q {
        let x = to_digits(enc, spec);
        if factors
            .iter()
            .all(|&r| from_digits(&pow(&x, order / r), spec.p) != 1)
        {
            return Elem(enc);
        }
    }
    unreachable!("the multiplicative group of a finite field is cyclic")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_from_order() {
        let f9 = FieldSpec::with_order(9).unwrap();
        assert_eq!((f9.p(), f9.m(), f9.modulus()), (3, 2, &[1, 0, 1][..]));
        assert_eq!(FieldSpec::with_order(7).unwrap().modulus(), &[0, 1]);
        for bad in [0, 1, 6, 12] {
            assert!(FieldSpec::with_order(bad).is_err());
        }
    }

    #[test]
    fn make_field_examples() {
        let f3: FieldSpec = "3".parse().unwrap();
        assert_eq!(f3.modulus(), &[0, 1]);
        let f9 = FieldSpec::new(3, 2, None).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        assert_eq!(FieldSpec::new(4, 1, None), Err(Error::NotPrime(4)));
        assert_eq!(FieldSpec::new(3, 0, None), Err(Error::InvalidDegree));
        assert!(matches!(
            FieldSpec::new(2, 2, Some(vec![1, 0, 1])),
            Err(Error::ReducibleModulus { .. })
        ));
        assert!(matches!(
            FieldSpec::new(2, 21, None),
            Err(Error::FieldTooLarge { .. })
        ));
    }

    #[test]
    fn parse_field_strings() {
        let f: FieldSpec = "2^2:1,1,1".parse().unwrap();
        assert_eq!((f.p(), f.m(), f.order()), (2, 2, 4));
        let g: FieldSpec = "3^2".parse().unwrap();
        assert_eq!(g.to_string(), "3^2:1,0,1");
        assert!("x".parse::<FieldSpec>().is_err());
        assert!("5^2:1,1".parse::<FieldSpec>().is_err());
        assert!("6".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let f9 = Field::with_params(3, 2, None).unwrap();
        assert_eq!(f9.mul(Elem(3), Elem(3)), Elem(2));
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.inv(Elem(2)), Ok(Elem(3)));
        assert_eq!(f5.inv(Elem::ZERO), Err(Error::InverseOfZero));
        for x in f9.elements(Domain::Full) {
            assert_eq!(f9.add(x, Elem::ZERO), x);
        }
    }

    #[test]
    fn enumeration_orders() {
        let f3 = Field::prime(3).unwrap();
        let full: Vec<u32> = f3.elements(Domain::Full).map(Elem::encoding).collect();
        let units: Vec<u32> = f3.elements(Domain::Units).map(Elem::encoding).collect();
        assert_eq!(full, vec![0, 1, 2]);
        assert_eq!(units, vec![1, 2]);
        let f9 = Field::with_params(3, 2, None).unwrap();
        let all: Vec<u32> = f9.elements(Domain::Full).map(Elem::encoding).collect();
        assert_eq!(all, (0..9).collect::<Vec<_>>());
    }

    #[test]
    fn prime_subfield_membership() {
        let f9 = Field::with_params(3, 2, None).unwrap();
        assert!(f9.in_prime_subfield(Elem(2)));
        assert!(!f9.in_prime_subfield(Elem(3)));
        let f5 = Field::prime(5).unwrap();
        assert!(f5.elements(Domain::Full).all(|x| f5.in_prime_subfield(x)));
    }

    #[test]
    fn primitive_elements() {
        assert_eq!(Field::prime(5).unwrap().primitive_element(), Elem(2));
        assert_eq!(Field::prime(7).unwrap().primitive_element(), Elem(3));
        assert_eq!(Field::prime(2).unwrap().primitive_element(), Elem(1));
        let f4 = Field::with_params(2, 2, None).unwrap();
        assert_eq!(f4.spec().modulus(), &[1, 1, 1]);
        assert_eq!(f4.primitive_element(), Elem(2));
    }
}
