//! Finite fields of order at most 81 with fixed Conway moduli.
//!
//! Elements are `u32` codes: the code of `Σ c_i x^i` is `Σ c_i p^i`, so the
//! prime subfield is `0..p` and addition in `GF(p)` is ordinary mod-`p`.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("no field of order {0} is supported (need a prime power at most 81)")]
    UnsupportedOrder(usize),
}

/// Lowest-degree-first coefficients of the monic modulus, leading 1 omitted.
fn conway_modulus(p: u32, e: u32) -> Option<Vec<u32>> {
    let m: &[u32] = match (p, e) {
        (_, 1) => &[],
        (2, 2) => &[1, 1],
        (2, 3) => &[1, 1, 0],
        (2, 4) => &[1, 1, 0, 0],
        (2, 5) => &[1, 0, 1, 0, 0],
        (2, 6) => &[1, 1, 0, 1, 1, 0],
        (3, 2) => &[2, 2],
        (3, 3) => &[1, 2, 0],
        (3, 4) => &[2, 0, 0, 2],
        (5, 2) => &[2, 4],
        (7, 2) => &[3, 6],
        _ => return None,
    };
    Some(m.to_vec())
}

fn prime_power(q: usize) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut r, mut e) = (q, 0);
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p as u32, e))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteField {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

pub fn gf(q: usize) -> Result<FiniteField, FieldError> {
    let (p, e) = prime_power(q).filter(|_| q <= 81).ok_or(FieldError::UnsupportedOrder(q))?;
    let modulus = conway_modulus(p, e).ok_or(FieldError::UnsupportedOrder(q))?;
    Ok(FiniteField::build(p, e, modulus))
}

impl FiniteField {
    fn build(p: u32, e: u32, modulus: Vec<u32>) -> Self {
        let q = p.pow(e);
        let digits = |x: u32| -> Vec<u32> { (0..e).map(|i| x / p.pow(i) % p).collect() };
        let code = |c: &[u32]| -> u32 { c.iter().rev().fold(0, |acc, &d| acc * p + d) };
        let qs = q as usize;
        let mut add = vec![0; qs * qs];
        let mut mul = vec![0; qs * qs];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = code(&s);
                // Schoolbook product, then reduce by x^e = −Σ m_i x^i.
                let mut prod = vec![0u32; 2 * e as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for k in (e as usize..prod.len()).rev() {
                    let c = prod[k];
                    if c == 0 {
                        continue;
                    }
                    prod[k] = 0;
                    for (i, m) in modulus.iter().enumerate() {
                        let idx = k - e as usize + i;
                        prod[idx] = (prod[idx] + p * p - c * m % p) % p;
                    }
                }
                mul[(a * q + b) as usize] = code(&prod[..e as usize]);
            }
        }
        let neg = (0..q).map(|a| (0..q).find(|&b| add[(a * q + b) as usize] == 0).unwrap()).collect();
        let inv = (0..q)
            .map(|a| if a == 0 { 0 } else { (1..q).find(|&b| mul[(a * q + b) as usize] == 1).unwrap_or(0) })
            .collect();
        Self { p, e, q, modulus, add, mul, neg, inv }
    }

    pub fn order(&self) -> usize {
        self.q as usize
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    /// Monic modulus, lowest degree first, leading coefficient included.
    pub fn modulus(&self) -> Vec<u32> {
        let mut m = self.modulus.clone();
        m.push(1);
        m
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        1
    }

    /// The class of `x`, the generator of the extension.
    pub fn x(&self) -> u32 {
        if self.e == 1 {
            0
        } else {
            self.p
        }
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn pow(&self, a: u32, mut k: u64) -> u32 {
        let (mut base, mut acc) = (a, 1);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `a ↦ a^p`.
    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.p as u64)
    }

    pub fn from_int(&self, k: i64) -> u32 {
        k.rem_euclid(self.p as i64) as u32
    }

    pub fn multiplicative_order(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let mut x = a;
        for k in 1..self.q {
            if x == 1 {
                return Some(k);
            }
            x = self.mul(x, a);
        }
        None
    }

    /// The least code generating the multiplicative group.
    pub fn primitive_element(&self) -> u32 {
        (1..self.q).find(|&a| self.multiplicative_order(a) == Some(self.q - 1)).expect("finite fields have primitive elements")
    }

    pub fn is_square(&self, a: u32) -> bool {
        self.elements().any(|b| self.mul(b, b) == a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = gf(5).unwrap();
        assert_eq!(f.add(2, 3), 0);
        assert_eq!(f.mul(2, 3), 1);
        assert_eq!(f.inv(2), Some(3));
    }

    #[test]
    fn extension_square_reduces_by_modulus() {
        let f = gf(9).unwrap();
        // x² = −2x − 2 = x + 1 under x² + 2x + 2.
        let x = f.x();
        assert_eq!(f.mul(x, x), f.add(x, 1));
    }

    #[test]
    fn unsupported_orders() {
        for q in [0, 1, 6, 10, 12, 83, 121, 128] {
            assert_eq!(gf(q), Err(FieldError::UnsupportedOrder(q)));
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 16, 25, 27, 32, 49, 64, 81] {
            let f = gf(q).unwrap();
            let els: Vec<u32> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "q={q} a={a}");
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    if q <= 27 {
                        for &c in &els {
                            assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                            assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn conway_moduli_are_primitive() {
        for q in [4, 8, 9, 16, 25, 27, 32, 49, 64, 81] {
            let f = gf(q).unwrap();
            assert_eq!(f.multiplicative_order(f.x()), Some(q as u32 - 1), "q={q}");
        }
    }
}
