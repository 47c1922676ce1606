//! Buchberger's algorithm and normal forms.

use std::collections::BTreeMap;

use super::field::{Field, Gf25};
use super::poly::{Mono, Poly, W, X, Y};

/// Dimension of a quotient ring `k[vars]/I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotientDim {
    Finite(usize),
    Infinite,
}

impl QuotientDim {
    pub fn finite(self) -> Option<usize> {
        match self {
            QuotientDim::Finite(n) => Some(n),
            QuotientDim::Infinite => None,
        }
    }
}

/// A reduced Gröbner basis, monic, sorted by ascending leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealGb<F: Field> {
    basis: Vec<Poly<F>>,
}

/// Full reduction of `f` by `divisors` (any order of divisors is allowed,
/// the result is the normal form only when they form a Gröbner basis).
pub fn reduce<F: Field>(f: &Poly<F>, divisors: &[Poly<F>]) -> Poly<F> {
    if f.is_zero() || divisors.is_empty() {
        return f.clone();
    }
    let leads: Vec<(Mono, F)> = divisors
        .iter()
        .map(|g| {
            let (m, c) = g.leading().expect("zero divisor polynomial");
            (*m, c.inverse().expect("nonzero"))
        })
        .collect();
    let mut work: BTreeMap<Mono, F> = f.terms().iter().cloned().collect();
    let mut rem: Vec<(Mono, F)> = Vec::new();
    while let Some((m, c)) = work.pop_last() {
        if c.is_zero() {
            continue;
        }
        match leads.iter().position(|(lm, _)| lm.divides(m)) {
            None => rem.push((m, c)),
            Some(i) => {
                let q = leads[i].0.quotient_of(m);
                let k = c * leads[i].1.clone();
                for (n, d) in divisors[i].terms().iter().skip(1) {
                    let key = n.mul(q);
                    let e = work.entry(key).or_insert_with(F::zero);
                    *e = e.clone() - k.clone() * d.clone();
                    if e.is_zero() {
                        work.remove(&key);
                    }
                }
            }
        }
    }
    Poly::from_sorted(rem)
}

fn s_poly<F: Field>(f: &Poly<F>, g: &Poly<F>) -> Poly<F> {
    let (fm, fc) = f.leading().unwrap();
    let (gm, gc) = g.leading().unwrap();
    let l = fm.lcm(*gm);
    let a = f.mul_term(fm.quotient_of(l), &fc.inverse().unwrap());
    let b = g.mul_term(gm.quotient_of(l), &gc.inverse().unwrap());
    a.sub(&b)
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger<F: Field>(gens: &[Poly<F>]) -> IdealGb<F> {
    let mut g: Vec<Poly<F>> = Vec::new();
    for p in gens {
        let r = reduce(p, &g);
        if !r.is_zero() {
            g.push(r.monic());
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..g.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    let mut live = vec![true; g.len()];
    while !pairs.is_empty() {
        // normal selection: smallest lcm first
        let (idx, _) = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, &(i, j))| g[i].leading_mono().unwrap().lcm(g[j].leading_mono().unwrap()))
            .unwrap();
        let (i, j) = pairs.swap_remove(idx);
        if !live[i] || !live[j] {
            continue;
        }
        let mi = g[i].leading_mono().unwrap();
        let mj = g[j].leading_mono().unwrap();
        if mi.is_coprime(mj) {
            continue;
        }
        let l = mi.lcm(mj);
        // chain criterion
        let chain = (0..g.len()).any(|k| {
            k != i
                && k != j
                && live[k]
                && g[k].leading_mono().unwrap().divides(l)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let active: Vec<Poly<F>> = g.iter().zip(&live).filter(|(_, &a)| a).map(|(p, _)| p.clone()).collect();
        let r = reduce(&s_poly(&g[i], &g[j]), &active);
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        let n = g.len();
        g.push(r);
        live.push(true);
        for k in 0..n {
            if live[k] {
                pairs.push((k, n));
            }
        }
    }
    let mut basis: Vec<Poly<F>> = g.into_iter().zip(live).filter(|(_, a)| *a).map(|(p, _)| p).collect();
    // minimal basis
    basis.sort_by_key(|p| p.leading_mono().unwrap());
    let mut minimal: Vec<Poly<F>> = Vec::new();
    for p in basis {
        let m = p.leading_mono().unwrap();
        if !minimal.iter().any(|q| q.leading_mono().unwrap().divides(m)) {
            minimal.retain(|q| !m.divides(q.leading_mono().unwrap()));
            minimal.push(p);
        }
    }
    // reduce tails
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Poly<F>> =
            minimal.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, q)| q.clone()).collect();
        let (m, c) = minimal[k].leading().unwrap().clone();
        let tail = Poly::from_sorted(minimal[k].terms()[1..].to_vec());
        let t = reduce(&tail, &others);
        reduced.push(Poly::monomial(m, c).add(&t).monic());
    }
    reduced.sort_by_key(|p| p.leading_mono().unwrap());
    IdealGb { basis: reduced }
}

impl<F: Field> IdealGb<F> {
    pub fn basis(&self) -> &[Poly<F>] {
        &self.basis
    }

    pub fn reduce(&self, f: &Poly<F>) -> Poly<F> {
        reduce(f, &self.basis)
    }

    pub fn contains(&self, f: &Poly<F>) -> bool {
        self.reduce(f).is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.basis.iter().any(|p| p.leading_mono() == Some(Mono::ONE))
    }

    /// Leading monomials, in basis order.
    pub fn leading_monos(&self) -> Vec<Mono> {
        self.basis.iter().map(|p| p.leading_mono().unwrap()).collect()
    }

    /// Number of standard monomials in the given variables. Variables not
    /// listed must not occur in the basis.
    pub fn quotient_dimension_in(&self, vars: &[usize]) -> QuotientDim {
        if self.is_unit() {
            return QuotientDim::Finite(0);
        }
        let leads = self.leading_monos();
        let mut bound = Vec::with_capacity(vars.len());
        for &v in vars {
            let pure = leads.iter().filter_map(|m| {
                let e = m.exps();
                let only_v = (0..4).all(|u| u == v || e[u] == 0);
                if only_v && e[v] > 0 {
                    Some(e[v])
                } else {
                    None
                }
            });
            match pure.min() {
                Some(b) => bound.push(b),
                None => return QuotientDim::Infinite,
            }
        }
        let mut count = 0usize;
        let mut e = [0u8; 4];
        fn rec(k: usize, vars: &[usize], bound: &[u8], e: &mut [u8; 4], leads: &[Mono], count: &mut usize) {
            if k == vars.len() {
                let m = Mono::new(*e);
                if !leads.iter().any(|l| l.divides(m)) {
                    *count += 1;
                }
                return;
            }
            for a in 0..bound[k] {
                e[vars[k]] = a;
                rec(k + 1, vars, bound, e, leads, count);
            }
            e[vars[k]] = 0;
        }
        rec(0, vars, &bound, &mut e, &leads, &mut count);
        QuotientDim::Finite(count)
    }

    /// Quotient dimension over the affine coordinates `(w, x, y)`.
    pub fn quotient_dimension(&self) -> QuotientDim {
        self.quotient_dimension_in(&[W, X, Y])
    }
}

/// The affine surface relation `F = w² − x⁶ − y⁶ − 1`.
pub fn surface_relation() -> Poly<Gf25> {
    let m1 = -Gf25::ONE;
    Poly::from_terms([
        (Mono::wxyz(2, 0, 0, 0), Gf25::ONE),
        (Mono::wxyz(0, 6, 0, 0), m1),
        (Mono::wxyz(0, 0, 6, 0), m1),
        (Mono::ONE, m1),
    ])
}

/// Normal form modulo `F`: rewrites `w²` as `x⁶ + y⁶ + 1` until the
/// `w`-degree is at most one.
pub fn normal_form_f(g: &Poly<Gf25>) -> Poly<Gf25> {
    if g.degree_in(W) <= 1 {
        return g.clone();
    }
    let s = Poly::from_terms([
        (Mono::wxyz(0, 6, 0, 0), Gf25::ONE),
        (Mono::wxyz(0, 0, 6, 0), Gf25::ONE),
        (Mono::ONE, Gf25::ONE),
    ]);
    let maxw = g.degree_in(W) as usize;
    let mut spow = vec![Poly::one()];
    for k in 1..=maxw / 2 {
        spow.push(spow[k - 1].mul(&s));
    }
    let mut acc: BTreeMap<Mono, Gf25> = BTreeMap::new();
    for (m, c) in g.terms() {
        let mut e = m.exps();
        let a = e[W] as usize;
        e[W] = (a % 2) as u8;
        let base = Mono::new(e);
        for (n, d) in spow[a / 2].terms() {
            let k = base.mul(*n);
            let slot = acc.entry(k).or_insert(Gf25::ZERO);
            *slot = *slot + *c * *d;
        }
    }
    Poly::from_terms(acc)
}

/// Gröbner basis of `I^ν + (F)` in the affine chart.
pub fn ideal_power_plus_f(gens: &[Poly<Gf25>], nu: u32) -> IdealGb<Gf25> {
    assert!(nu >= 1, "power must be positive");
    let mut prods: Vec<Poly<Gf25>> = vec![Poly::one()];
    for _ in 0..nu {
        let mut next = Vec::new();
        for p in &prods {
            for g in gens {
                let q = p.mul(g);
                // reduce by F early to keep the generators small
                let q = normal_form_f(&q);
                if !next.contains(&q) {
                    next.push(q);
                }
            }
        }
        prods = next;
    }
    prods.push(surface_relation());
    buchberger(&prods)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::text::parse_poly;

    fn p(s: &str) -> Poly<Gf25> {
        parse_poly(s).unwrap()
    }

    #[test]
    fn monomial_ideal() {
        let gb = buchberger(&[p("x"), p("y")]);
        assert_eq!(gb.basis(), &[p("y"), p("x")]);
        assert_eq!(gb.quotient_dimension(), QuotientDim::Infinite);
        let gb = buchberger(&[p("x"), p("y"), p("w")]);
        assert_eq!(gb.quotient_dimension(), QuotientDim::Finite(1));
        assert_eq!(buchberger(&[p("x")]).quotient_dimension(), QuotientDim::Infinite);
    }

    #[test]
    fn normal_form_examples() {
        assert_eq!(normal_form_f(&p("w^2")), p("x^6+y^6+1"));
        assert_eq!(normal_form_f(&p("w^3")), p("w*x^6+w*y^6+w"));
        let g = p("w*x^2 + y^3 + 1");
        assert_eq!(normal_form_f(&g), g);
    }

    #[test]
    fn s_polys_reduce_to_zero() {
        let gb = buchberger(&[p("x^2*y - 1"), p("x*y^2 - x"), p("w^2 - x*y")]);
        for a in gb.basis() {
            for b in gb.basis() {
                assert!(gb.reduce(&s_poly(a, b)).is_zero());
            }
        }
        assert!(gb.contains(&p("x^2*y - 1").mul(&p("w + 3"))));
    }

    #[test]
    fn power_membership() {
        let gens = [p("y+4√2+1"), p("x^3+4w")];
        let gb = ideal_power_plus_f(&gens, 2);
        assert!(gb.contains(&gens[0].pow(2)));
        assert!(!gb.contains(&gens[0]));
        assert!(gb.contains(&gens[0].mul(&gens[1])));
        let gb1 = ideal_power_plus_f(&gens, 1);
        let mut all = gens.to_vec();
        all.push(surface_relation());
        assert_eq!(gb1, buchberger(&all));
    }
}
