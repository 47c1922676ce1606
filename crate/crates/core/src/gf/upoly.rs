//! Univariate polynomials and binary forms.

use super::field::Field;

/// A univariate polynomial, coefficients from degree 0 upwards, no trailing
/// zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UPoly<F: Field> {
    c: Vec<F>,
}

impl<F: Field> UPoly<F> {
    pub fn new(mut c: Vec<F>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn constant(a: F) -> Self {
        UPoly::new(vec![a])
    }

    /// `t − a`.
    pub fn linear_root(a: F) -> Self {
        UPoly::new(vec![-a, F::one()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&F> {
        self.c.last()
    }

    pub fn eval(&self, t: &F) -> F {
        self.c.iter().rev().fold(F::zero(), |acc, a| acc * t.clone() + a.clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        UPoly::new(
            (0..n)
                .map(|i| {
                    self.c.get(i).cloned().unwrap_or_else(F::zero) + o.c.get(i).cloned().unwrap_or_else(F::zero)
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        UPoly { c: self.c.iter().map(|a| -a.clone()).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &F) -> Self {
        UPoly::new(self.c.iter().map(|a| a.clone() * k.clone()).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![F::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        UPoly::new(c)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = UPoly::constant(F::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => UPoly::zero(),
            Some(l) => self.scale(&l.inverse().unwrap()),
        }
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lead().unwrap().inverse().unwrap();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![F::zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let f = r[k].clone() * inv.clone();
            if f.is_zero() {
                continue;
            }
            q[k - dd] = f.clone();
            for (j, b) in d.c.iter().enumerate() {
                r[k - dd + j] = r[k - dd + j].clone() - f.clone() * b.clone();
            }
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Multiplicity of `a` as a root.
    pub fn root_multiplicity(&self, a: &F) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = UPoly::linear_root(a.clone());
        let mut p = self.clone();
        let mut k = 0;
        loop {
            let (q, r) = p.divrem(&lin);
            if !r.is_zero() {
                return k;
            }
            p = q;
            k += 1;
        }
    }
}

/// A binary form of fixed degree in `(s, t)`, stored as the coefficients of
/// `t^0 s^n, t^1 s^(n−1), …`. Dehomogenizing at `s = 1` gives a [`UPoly`];
/// the degree deficiency is the multiplicity of the root `[s:t] = [0:1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm<F: Field> {
    pub degree: usize,
    pub poly: UPoly<F>,
}

impl<F: Field> BinaryForm<F> {
    pub fn new(degree: usize, poly: UPoly<F>) -> Self {
        assert!(poly.degree().map_or(true, |d| d <= degree), "form degree too small");
        BinaryForm { degree, poly }
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Multiplicity of the point at infinity `s = 0`.
    pub fn mult_at_infinity(&self) -> usize {
        match self.poly.degree() {
            None => usize::MAX,
            Some(d) => self.degree - d,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        BinaryForm::new(self.degree + o.degree, self.poly.mul(&o.poly))
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.degree, o.degree, "adding forms of different degree");
        BinaryForm::new(self.degree, self.poly.add(&o.poly))
    }

    pub fn scale(&self, k: &F) -> Self {
        BinaryForm::new(self.degree, self.poly.scale(k))
    }

    /// Greatest common divisor as a form; `gcd(0, W) = W`.
    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let g = self.poly.gcd(&o.poly);
        let inf = self.mult_at_infinity().min(o.mult_at_infinity());
        let d = g.degree().unwrap() + inf;
        BinaryForm::new(d, g)
    }

    /// Exact division by a form dividing `self`.
    pub fn div_exact(&self, o: &Self) -> Option<Self> {
        if o.is_zero() || o.degree > self.degree {
            return None;
        }
        if self.is_zero() {
            return Some(BinaryForm::new(self.degree - o.degree, UPoly::zero()));
        }
        let (q, r) = self.poly.divrem(&o.poly);
        if !r.is_zero() || self.mult_at_infinity() < o.mult_at_infinity() {
            return None;
        }
        Some(BinaryForm::new(self.degree - o.degree, q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::field::Gf25;

    fn u(c: &[i64]) -> UPoly<Gf25> {
        UPoly::new(c.iter().map(|&a| Gf25::new(a, 0)).collect())
    }

    #[test]
    fn divrem_and_gcd() {
        let a = u(&[1, 1]).mul(&u(&[2, 1])).mul(&u(&[3, 1]));
        let b = u(&[1, 1]).mul(&u(&[4, 1]));
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert_eq!(a.gcd(&b), u(&[1, 1]));
        assert_eq!(a.gcd(&UPoly::zero()), a.monic());
    }

    #[test]
    fn multiplicities() {
        let p = u(&[4, 1]).pow(3).mul(&u(&[1, 1]));
        assert_eq!(p.root_multiplicity(&Gf25::new(1, 0)), 3);
        assert_eq!(p.root_multiplicity(&Gf25::new(2, 0)), 0);
    }

    #[test]
    fn binary_forms_track_infinity() {
        // s^2 t  and  s t^2: gcd is s t (degree 2)
        let a = BinaryForm::new(3, u(&[0, 1]));
        let b = BinaryForm::new(3, u(&[0, 0, 1]));
        let g = a.gcd(&b);
        assert_eq!(g.degree, 2);
        assert_eq!(g.mult_at_infinity(), 1);
        let z = BinaryForm::new(3, UPoly::zero());
        assert_eq!(z.gcd(&a), a);
        assert_eq!(a.div_exact(&g).unwrap().degree, 1);
    }
}
