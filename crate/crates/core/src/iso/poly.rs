//! Dense-enough multivariate polynomials with exact coefficient arithmetic,
//! used to check differential identities on low-degree polynomials without
//! any discretization error. Coefficients are kept in f64; with integer
//! inputs of modest size every operation here is exact.

use std::collections::BTreeMap;

/// A polynomial in `d` variables, stored as exponent-vector -> coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiPoly {
    d: usize,
    terms: BTreeMap<Vec<u8>, f64>,
}

impl MultiPoly {
    pub fn zero(d: usize) -> Self {
        Self {
            d,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(d: usize, c: f64) -> Self {
        let mut p = Self::zero(d);
        if c != 0.0 {
            p.terms.insert(vec![0; d], c);
        }
        p
    }

    /// The coordinate monomial `x_i`.
    pub fn var(d: usize, i: usize) -> Self {
        assert!(i < d);
        let mut e = vec![0u8; d];
        e[i] = 1;
        let mut p = Self::zero(d);
        p.terms.insert(e, 1.0);
        p
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    fn insert(&mut self, exp: Vec<u8>, c: f64) {
        if c == 0.0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = *o.get() + c;
                if sum == 0.0 {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.d, other.d);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), *c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = Self::zero(self.d);
        for (e, c) in &self.terms {
            out.insert(e.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.d, other.d);
        let mut out = Self::zero(self.d);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp: Vec<u8> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert(exp, ca * cb);
            }
        }
        out
    }

    /// Partial derivative with respect to `x_i`.
    pub fn deriv(&self, i: usize) -> Self {
        assert!(i < self.d);
        let mut out = Self::zero(self.d);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut exp = e.clone();
                exp[i] -= 1;
                out.insert(exp, c * e[i] as f64);
            }
        }
        out
    }

    pub fn laplacian(&self) -> Self {
        let mut out = Self::zero(self.d);
        for i in 0..self.d {
            out = out.add(&self.deriv(i).deriv(i));
        }
        out
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.d);
        let mut sum = 0.0;
        for (e, c) in &self.terms {
            let mut t = *c;
            for (xi, &p) in x.iter().zip(e) {
                t *= xi.powi(p as i32);
            }
            sum += t;
        }
        sum
    }

    /// True when every stored coefficient is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|c| *c == 0.0)
    }

    /// Largest coefficient magnitude, for diagnostics.
    pub fn max_coeff(&self) -> f64 {
        self.terms.values().fold(0.0, |m, c| m.max(c.abs()))
    }
}
