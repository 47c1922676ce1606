//! Lines on the surface lying over tangent lines of the branch curve.

use std::fmt;

use crate::gf::{buchberger, parse_poly, Gf25, Mono, Poly, QuotientDim, W, X, Y, Z};

use super::points::{fermat_value, normalize, tangent_line, Point};
use super::FermatError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// A line `{a x + b y + c z = 0, w = g}` on the surface, where the linear
/// form is monic in its first variable `v` and `g` is a cubic form in the
/// two other variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HLine {
    pub point: Point,
    pub linear: [Gf25; 3],
    pub cubic: Poly<Gf25>,
}

fn var_of(i: usize) -> usize {
    [X, Y, Z][i]
}

impl HLine {
    /// Index (into `x, y, z`) of the eliminated variable.
    pub fn elim(&self) -> usize {
        self.linear.iter().position(|c| !c.is_zero()).unwrap()
    }

    pub fn linear_poly(&self) -> Poly<Gf25> {
        Poly::from_terms((0..3).map(|i| (Mono::var(var_of(i)), self.linear[i])))
    }

    /// `w − g`.
    pub fn w_generator(&self) -> Poly<Gf25> {
        Poly::var(W).sub(&self.cubic)
    }

    pub fn generators(&self) -> [Poly<Gf25>; 2] {
        [self.linear_poly(), self.w_generator()]
    }

    /// Substitution eliminating the first variable of the linear form.
    fn elimination(&self) -> [Poly<Gf25>; 4] {
        elimination(&self.linear)
    }

    /// Value of `w` over a point of the plane line.
    pub fn w_at(&self, p: &[Gf25; 3]) -> Gf25 {
        self.cubic.eval(&[Gf25::ZERO, p[0], p[1], p[2]])
    }

    /// The other component over the same plane line.
    pub fn deck(&self) -> HLine {
        HLine { point: self.point, linear: self.linear, cubic: self.cubic.neg() }
    }

    /// Coefficientwise Frobenius.
    pub fn conjugate(&self) -> HLine {
        let lin = [self.linear[0].frobenius(), self.linear[1].frobenius(), self.linear[2].frobenius()];
        HLine {
            point: [self.point[0].frobenius(), self.point[1].frobenius(), self.point[2].frobenius()],
            linear: lin,
            cubic: self.cubic.conjugate(),
        }
    }

    /// Canonical form of the line defined by a linear form and a generator
    /// `k·w + (cubic)` with `k` a nonzero constant.
    pub fn from_generators(point: Point, a: &Poly<Gf25>, b: &Poly<Gf25>) -> Result<HLine, FermatError> {
        let (lin, other) = if a.uses_var(W) { (b, a) } else { (a, b) };
        if !lin.is_homogeneous(1) || lin.uses_var(W) {
            return Err(FermatError::BadLine(format!("{lin} is not a linear form")));
        }
        let linear = normalize([
            lin.coeff(Mono::var(X)),
            lin.coeff(Mono::var(Y)),
            lin.coeff(Mono::var(Z)),
        ])
        .ok_or_else(|| FermatError::BadLine("zero linear form".into()))?;
        let k = other.coeff(Mono::var(W));
        let rest = other.sub(&Poly::monomial(Mono::var(W), k));
        if k.is_zero() || rest.uses_var(W) || !rest.is_homogeneous(3) {
            return Err(FermatError::BadLine(format!("{other} is not of the form k·w + cubic")));
        }
        let g = rest.scale(&(-k.inv().unwrap()));
        let cubic = g.substitute(&elimination(&linear));
        Ok(HLine { point, linear, cubic })
    }

    /// Whether the line lies on `w² = x⁶ + y⁶ + z⁶`.
    pub fn lies_on_surface(&self) -> bool {
        let sub = self.elimination();
        let sextic = Poly::from_terms([
            (Mono::wxyz(0, 6, 0, 0), Gf25::ONE),
            (Mono::wxyz(0, 0, 6, 0), Gf25::ONE),
            (Mono::wxyz(0, 0, 0, 6), Gf25::ONE),
        ])
        .substitute(&sub);
        self.cubic.pow(2) == sextic
    }
}

/// `v ↦ −(b y + c z)` etc. for the first variable `v` of a monic linear form.
fn elimination(linear: &[Gf25; 3]) -> [Poly<Gf25>; 4] {
    let e = linear.iter().position(|c| !c.is_zero()).unwrap();
    let mut sub = [Poly::var(W), Poly::var(X), Poly::var(Y), Poly::var(Z)];
    let mut repl = Poly::zero();
    for i in 0..3 {
        if i != e {
            repl = repl.add(&Poly::monomial(Mono::var(var_of(i)), -linear[i]));
        }
    }
    sub[var_of(e)] = repl;
    sub
}

/// Square root of a binary sextic given by coefficients of `u^i v^(6−i)`.
fn sqrt_binary_sextic(s: &[Gf25; 7]) -> Option<[Gf25; 4]> {
    let rev = s[6].is_zero();
    let mut c = *s;
    if rev {
        c.reverse();
    }
    if c[6].is_zero() {
        return None;
    }
    let mut g = [Gf25::ZERO; 4];
    g[3] = c[6].sqrt().ok()?;
    let two_g3 = (g[3] + g[3]).inv()?;
    for i in (0..3).rev() {
        // coefficient of u^(3+i) in g² is Σ_{a+b=3+i} g_a g_b
        let mut acc = c[3 + i];
        for a in i + 1..=3 {
            let b = 3 + i - a;
            if b > i && b <= 3 && a != 3 {
                acc = acc - g[a] * g[b];
            }
        }
        g[i] = acc * two_g3;
    }
    // verify
    let mut sq = [Gf25::ZERO; 7];
    for a in 0..4 {
        for b in 0..4 {
            sq[a + b] = sq[a + b] + g[a] * g[b];
        }
    }
    if sq != c {
        return None;
    }
    if rev {
        g.reverse();
    }
    Some(g)
}

/// The two components over the tangent line at `p`, in no particular sign
/// order: the second is the deck image of the first.
pub fn split_line(p: &Point) -> Result<(HLine, HLine), FermatError> {
    if !fermat_value(p).is_zero() {
        return Err(FermatError::NotOnCurve(*p));
    }
    let linear = tangent_line(p);
    let e = linear.iter().position(|c| !c.is_zero()).unwrap();
    let others: Vec<usize> = (0..3).filter(|&i| i != e).collect();
    let (u, v) = (var_of(others[0]), var_of(others[1]));
    let sub = elimination(&linear);
    let sextic = Poly::from_terms([
        (Mono::wxyz(0, 6, 0, 0), Gf25::ONE),
        (Mono::wxyz(0, 0, 6, 0), Gf25::ONE),
        (Mono::wxyz(0, 0, 0, 6), Gf25::ONE),
    ])
    .substitute(&sub);
    let mono = |i: usize, j: usize| {
        let mut ex = [0u8; 4];
        ex[u] = i as u8;
        ex[v] = j as u8;
        Mono::new(ex)
    };
    let mut s = [Gf25::ZERO; 7];
    for (i, c) in s.iter_mut().enumerate() {
        *c = sextic.coeff(mono(i, 6 - i));
    }
    let g = sqrt_binary_sextic(&s).ok_or(FermatError::NotSquare(*p))?;
    let cubic = Poly::from_terms((0..4).map(|i| (mono(i, 3 - i), g[i])));
    let a = HLine { point: *p, linear, cubic };
    let b = a.deck();
    Ok((a, b))
}

/// Intersection number of two distinct lines, as the length of
/// `O/(I_a + I_b + F)` summed over three charts: `z = 1`; `x = 1` localized
/// at `z = 0`; `y = 1` localized at `x = z = 0`.
pub fn intersection_number(a: &HLine, b: &HLine) -> Result<i64, FermatError> {
    if a == b {
        return Err(FermatError::InfiniteIntersection);
    }
    let mut gens: Vec<Poly<Gf25>> = Vec::new();
    gens.extend(a.generators());
    gens.extend(b.generators());
    gens.push(Poly::from_terms([
        (Mono::wxyz(2, 0, 0, 0), Gf25::ONE),
        (Mono::wxyz(0, 6, 0, 0), -Gf25::ONE),
        (Mono::wxyz(0, 0, 6, 0), -Gf25::ONE),
        (Mono::wxyz(0, 0, 0, 6), -Gf25::ONE),
    ]));
    const N: u8 = 8;
    let chart = |var: usize, extra: &[usize], vars: [usize; 3]| -> Result<usize, FermatError> {
        let mut g: Vec<Poly<Gf25>> = gens.iter().map(|p| p.dehomogenize(var)).collect();
        for &e in extra {
            let mut ex = [0u8; 4];
            ex[e] = N;
            g.push(Poly::monomial(Mono::new(ex), Gf25::ONE));
        }
        match buchberger(&g).quotient_dimension_in(&vars) {
            QuotientDim::Finite(n) => Ok(n),
            QuotientDim::Infinite => Err(FermatError::InfiniteIntersection),
        }
    };
    let n = chart(Z, &[], [W, X, Y])? + chart(X, &[Z], [W, Y, Z])? + chart(Y, &[X, Z], [W, X, Z])?;
    Ok(n as i64)
}

/// Intersection number from the geometry of the plane lines: distinct
/// tangent lines meet once, off the curve, and the components meet there
/// iff their `w`-values agree. Used to cross-check [`intersection_number`].
pub fn intersection_direct(a: &HLine, b: &HLine) -> i64 {
    if a == b {
        return -2;
    }
    if a.linear == b.linear {
        return 3;
    }
    let q = super::points::cross(&a.linear, &b.linear);
    if a.w_at(&q) == b.w_at(&q) {
        1
    } else {
        0
    }
}

/// One row of the basis table: sign, base point and the two generators.
pub struct TableRow {
    pub sign: Sign,
    pub point: &'static str,
    pub gens: [&'static str; 2],
}

const fn row(sign: Sign, point: &'static str, a: &'static str, b: &'static str) -> TableRow {
    TableRow { sign, point, gens: [a, b] }
}

use Sign::{Minus as M, Plus as P};

/// The 22 basis lines, transcribed verbatim.
pub const BASIS_TABLE: [TableRow; 22] = [
    row(P, "0:1:1+√2", "y+4z√2+z", "x^3+4w"),
    row(M, "0:1:1+√2", "y+4z√2+z", "w+x^3"),
    row(P, "0:1:1+4√2", "x^3+4w", "y+z√2+z"),
    row(P, "0:1:2", "x^3+4w", "y+2z"),
    row(P, "0:1:3", "x^3+4w", "y+3z"),
    row(P, "0:1:4+√2", "x^3+4w", "y+4z+4z√2"),
    row(P, "1:0:1+√2", "x+4z√2+z", "y^3+4w"),
    row(P, "1:0:1+4√2", "y^3+4w", "x+z√2+z"),
    row(P, "1:0:2", "x+2z", "w+y^3"),
    row(P, "1:0:4+√2", "w+y^3", "x+4z+4z√2"),
    row(P, "1:√2:1", "x+4√2y+z", "y^3+2z√2y^2+3w+z^2y+3z^3√2"),
    row(M, "1:√2:2+2√2", "x+4√2y+3z√2+2z", "3z^3√2+2z^2y+2z^2√2y+3w+y^3+2zy^2+4z√2y^2"),
    row(M, "1:√2:2+3√2", "3z^3√2+2z^2y+3z^2√2y+3w+y^3+3zy^2+4z√2y^2", "x+4√2y+2z√2+2z"),
    row(P, "1:√2:3+2√2", "x+4√2y+3z+3z√2", "2z^3√2+2z^2y+3z^2√2y+2w+y^3+2zy^2+z√2y^2"),
    row(M, "1:√2:3+3√2", "x+4√2y+2z√2+3z", "2z^3√2+2z^2y+2z^2√2y+2w+y^3+3zy^2+z√2y^2"),
    row(P, "1:2√2:2√2", "y^3+4z^3+2zy^2+4√2w+3z^2y", "x+3√2y+3z√2"),
    row(P, "1:2√2:3√2", "x+3√2y+2z√2", "y^3+z^3+3zy^2+√2w+3z^2y"),
    row(M, "1:2√2:2+√2", "x+3√2y+2z+4z√2", "z^3+z^2y+z^2√2y+√2w+y^3+zy^2+4z√2y^2"),
    row(P, "1:2√2:2+4√2", "x+3√2y+2z+z√2", "4z^3+z^2y+4z^2√2y+4√2w+y^3+4zy^2+4z√2y^2"),
    row(P, "1:2√2:3+√2", "x+3√2y+3z+4z√2", "z^3+z^2y+4z^2√2y+√2w+y^3+zy^2+z√2y^2"),
    row(P, "1:1+√2:0", "x+y+4√2y", "w+z^3"),
    row(P, "1:1+3√2:1", "x+y+2√2y+z", "2z^3√2+2z^2y+3z^2√2y+3w+y^3+2zy^2+z√2y^2"),
];

/// Parses `a:b:c` into a normalized point.
pub fn parse_point(s: &str) -> Result<Point, FermatError> {
    let parts: Vec<&str> = s.trim().trim_start_matches('[').trim_end_matches(']').split(':').collect();
    if parts.len() != 3 {
        return Err(FermatError::BadLine(format!("bad point {s:?}")));
    }
    let mut p = [Gf25::ZERO; 3];
    for (i, t) in parts.iter().enumerate() {
        let poly = parse_poly(t).map_err(|e| FermatError::BadLine(e.to_string()))?;
        if poly.degree().unwrap_or(0) > 0 {
            return Err(FermatError::BadLine(format!("bad coordinate {t:?}")));
        }
        p[i] = poly.coeff(Mono::ONE);
    }
    normalize(p).ok_or_else(|| FermatError::BadLine("zero point".into()))
}

/// The basis lines as written in [`BASIS_TABLE`].
pub fn basis_from_table() -> Result<Vec<(Sign, HLine)>, FermatError> {
    BASIS_TABLE
        .iter()
        .map(|r| {
            let p = parse_point(r.point)?;
            let a = parse_poly(r.gens[0]).map_err(|e| FermatError::BadLine(e.to_string()))?;
            let b = parse_poly(r.gens[1]).map_err(|e| FermatError::BadLine(e.to_string()))?;
            Ok((r.sign, HLine::from_generators(p, &a, &b)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermat::points::hermitian_points;

    #[test]
    fn table_lines_are_tangent_components() {
        for (_, l) in basis_from_table().unwrap() {
            assert!(l.lies_on_surface(), "{l:?}");
            assert_eq!(l.linear, tangent_line(&l.point));
            let (a, b) = split_line(&l.point).unwrap();
            assert!(l == a || l == b);
        }
    }

    #[test]
    fn split_components_lie_on_surface() {
        for p in hermitian_points() {
            let (a, b) = split_line(&p).unwrap();
            assert!(a.lies_on_surface() && b.lies_on_surface());
            assert_eq!(b, a.deck());
            assert_ne!(a, b);
        }
    }

    #[test]
    fn first_row_matches_the_displayed_line() {
        let t = basis_from_table().unwrap();
        let shown = HLine::from_generators(
            parse_point("0:1:1+√2").unwrap(),
            &parse_poly("x^3-w").unwrap(),
            &parse_poly("y+(1-√2)z").unwrap(),
        )
        .unwrap();
        assert_eq!(t[0].1, shown);
    }

    #[test]
    fn pair_over_one_point_meets_in_three() {
        let t = basis_from_table().unwrap();
        assert_eq!(intersection_number(&t[0].1, &t[1].1).unwrap(), 3);
        assert_eq!(intersection_direct(&t[0].1, &t[1].1), 3);
        assert!(intersection_number(&t[0].1, &t[0].1).is_err());
    }

    #[test]
    fn groebner_and_direct_agree_on_basis() {
        let t = basis_from_table().unwrap();
        for i in 0..22 {
            for j in 0..22 {
                if i != j {
                    assert_eq!(intersection_number(&t[i].1, &t[j].1).unwrap(), intersection_direct(&t[i].1, &t[j].1));
                }
            }
        }
    }
}
