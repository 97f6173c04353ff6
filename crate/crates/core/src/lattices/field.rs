use crate::error::{Error, Result};

/// Largest prime-power order for which full addition/multiplication tables are built.
const MAX_TABLE_ORDER: u32 = 256;

/// `q = p^e` with `p` prime, or `None`.
pub fn prime_power_decomposition(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut rest, mut e) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// The finite field `F_q`. Elements are `0..q`; for `q = p^e` with `e > 1`
/// an element is the base-`p` encoding of a polynomial of degree `< e`
/// modulo a fixed irreducible polynomial.
#[derive(Clone, Debug)]
pub struct GaloisField {
    q: u32,
    p: u32,
    degree: u32,
    tables: Option<Tables>,
}

#[derive(Clone, Debug)]
struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    modulus: Vec<u32>,
}

impl GaloisField {
    pub fn new(q: u32) -> Result<Self> {
        let (p, degree) = prime_power_decomposition(q)
            .ok_or_else(|| Error::InvalidArgument(format!("{q} is not a prime power")))?;
        if degree == 1 {
            return Ok(GaloisField { q, p, degree, tables: None });
        }
        if q > MAX_TABLE_ORDER {
            return Err(Error::ResourceGuard(format!(
                "prime-power fields are tabulated only up to order {MAX_TABLE_ORDER}"
            )));
        }
        let modulus = find_irreducible(p, degree as usize);
        let size = q as usize;
        let mut add = vec![0; size * size];
        let mut mul = vec![0; size * size];
        for a in 0..q {
            let pa = decode(a, p, degree);
            for b in 0..q {
                let pb = decode(b, p, degree);
                let sum: Vec<u32> = pa.iter().zip(&pb).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = encode(&sum, p);
                let prod = poly_rem(&poly_mul(&pa, &pb, p), &modulus, p);
                mul[(a * q + b) as usize] = encode(&prod, p);
            }
        }
        Ok(GaloisField {
            q,
            p,
            degree,
            tables: Some(Tables { add, mul, modulus }),
        })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Coefficients (low to high) of the defining polynomial, for `e > 1`.
    pub fn modulus(&self) -> Option<&[u32]> {
        self.tables.as_ref().map(|t| t.modulus.as_slice())
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        match &self.tables {
            None => (a + b) % self.p,
            Some(t) => t.add[(a * self.q + b) as usize],
        }
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.tables {
            None => ((a as u64 * b as u64) % self.p as u64) as u32,
            Some(t) => t.mul[(a * self.q + b) as usize],
        }
    }

    pub fn neg(&self, a: u32) -> u32 {
        match &self.tables {
            None => (self.p - a) % self.p,
            Some(_) => {
                let digits: Vec<u32> = decode(a, self.p, self.degree)
                    .into_iter()
                    .map(|d| (self.p - d) % self.p)
                    .collect();
                encode(&digits, self.p)
            }
        }
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        match &self.tables {
            None => Some(self.pow(a, self.p - 2)),
            Some(_) => (1..self.q).find(|&b| self.mul(a, b) == 1),
        }
    }

    pub fn pow(&self, a: u32, mut e: u32) -> u32 {
        let (mut base, mut acc) = (a, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

fn decode(mut a: u32, p: u32, degree: u32) -> Vec<u32> {
    (0..degree)
        .map(|_| {
            let d = a % p;
            a /= p;
            d
        })
        .collect()
}

fn encode(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut out = vec![0; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().expect("nonempty");
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + (p - lead) * c) % p;
        }
        r = trim(r);
    }
    r.resize(dm, 0);
    r
}

fn monic_polys(p: u32, degree: usize) -> impl Iterator<Item = Vec<u32>> {
    (0..p.pow(degree as u32)).map(move |code| {
        let mut v = decode(code, p, degree as u32);
        v.push(1);
        v
    })
}

/// The first monic irreducible polynomial of the given degree, in the
/// order of its base-`p` coefficient code.
fn find_irreducible(p: u32, degree: usize) -> Vec<u32> {
    monic_polys(p, degree)
        .find(|f| {
            (1..=degree / 2).all(|d| {
                monic_polys(p, d).all(|g| poly_rem(f, &g, p).iter().any(|&c| c != 0))
            })
        })
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decomposition() {
        assert_eq!(prime_power_decomposition(2), Some((2, 1)));
        assert_eq!(prime_power_decomposition(9), Some((3, 2)));
        assert_eq!(prime_power_decomposition(8), Some((2, 3)));
        assert_eq!(prime_power_decomposition(6), None);
        assert_eq!(prime_power_decomposition(1), None);
        assert!(GaloisField::new(12).is_err());
    }

    #[test]
    fn field_axioms_small_orders() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let f = GaloisField::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "q={q} a={a}");
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn gf4_modulus() {
        let f = GaloisField::new(4).unwrap();
        // x^2 + x + 1 is the only irreducible quadratic over F_2
        assert_eq!(f.modulus(), Some(&[1, 1, 1][..]));
        // x * x = x + 1
        assert_eq!(f.mul(2, 2), 3);
    }
}
