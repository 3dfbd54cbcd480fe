//! Univariate polynomial arithmetic over a [`Field`], plus the root finding
//! used by the idempotent search.
//!
//! Polynomials are coefficient vectors in ascending degree with no trailing
//! zeros. Root finding over F_p is exhaustive for small p and a
//! gcd-with-Frobenius split otherwise; over Q it lifts roots from prime
//! reductions and verifies each candidate exactly, so a returned root is
//! always genuine.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field::{Field, PrimeField, Rationals};

pub type Poly<F> = Vec<<F as Field>::Elem>;

pub fn ptrim<F: Field>(f: &F, p: &mut Poly<F>) {
    while p.last().is_some_and(|c| f.is_zero(c)) {
        p.pop();
    }
}

pub fn pdeg<T>(p: &[T]) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn padd<F: Field>(f: &F, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    let mut out = vec![f.zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] = f.add(&out[i], c);
    }
    for (i, c) in b.iter().enumerate() {
        out[i] = f.add(&out[i], c);
    }
    ptrim(f, &mut out);
    out
}

pub fn psub<F: Field>(f: &F, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    let mut out = vec![f.zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] = f.add(&out[i], c);
    }
    for (i, c) in b.iter().enumerate() {
        out[i] = f.sub(&out[i], c);
    }
    ptrim(f, &mut out);
    out
}

pub fn pmul<F: Field>(f: &F, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if f.is_zero(ca) {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(ca, cb));
        }
    }
    ptrim(f, &mut out);
    out
}

/// Division with remainder; `b` must be nonzero.
pub fn pdivrem<F: Field>(f: &F, a: &Poly<F>, b: &Poly<F>) -> (Poly<F>, Poly<F>) {
    let db = pdeg(b).expect("division by zero polynomial");
    let lead_inv = f.inv(&b[db]).expect("leading coefficient invertible");
    let mut rem = a.clone();
    ptrim(f, &mut rem);
    if rem.len() <= db {
        return (vec![], rem);
    }
    let mut quot = vec![f.zero(); rem.len() - db];
    while rem.len() > db {
        let dr = rem.len() - 1;
        let c = f.mul(&rem[dr], &lead_inv);
        let shift = dr - db;
        quot[shift] = c.clone();
        for i in 0..=db {
            let v = f.sub(&rem[shift + i], &f.mul(&c, &b[i]));
            rem[shift + i] = v;
        }
        ptrim(f, &mut rem);
        if rem.is_empty() {
            break;
        }
    }
    ptrim(f, &mut quot);
    (quot, rem)
}

pub fn pmonic<F: Field>(f: &F, a: &Poly<F>) -> Poly<F> {
    match pdeg(a) {
        None => vec![],
        Some(d) => {
            let inv = f.inv(&a[d]).expect("leading coefficient invertible");
            a.iter().map(|c| f.mul(c, &inv)).collect()
        }
    }
}

pub fn pgcd<F: Field>(f: &F, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    let mut x = a.clone();
    let mut y = b.clone();
    ptrim(f, &mut x);
    ptrim(f, &mut y);
    while !y.is_empty() {
        let (_, r) = pdivrem(f, &x, &y);
        x = y;
        y = r;
    }
    pmonic(f, &x)
}

/// Extended gcd: returns `(g, u, v)` with `u a + v b = g`, `g` monic.
pub fn pxgcd<F: Field>(f: &F, a: &Poly<F>, b: &Poly<F>) -> (Poly<F>, Poly<F>, Poly<F>) {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    ptrim(f, &mut r0);
    ptrim(f, &mut r1);
    let mut u0 = vec![f.one()];
    let mut u1: Poly<F> = vec![];
    let mut v0: Poly<F> = vec![];
    let mut v1 = vec![f.one()];
    while !r1.is_empty() {
        let (q, r) = pdivrem(f, &r0, &r1);
        let nu = psub(f, &u0, &pmul(f, &q, &u1));
        let nv = psub(f, &v0, &pmul(f, &q, &v1));
        r0 = std::mem::replace(&mut r1, r);
        u0 = std::mem::replace(&mut u1, nu);
        v0 = std::mem::replace(&mut v1, nv);
    }
    match pdeg(&r0) {
        None => (vec![], u0, v0),
        Some(d) => {
            let inv = f.inv(&r0[d]).unwrap();
            let scale = |p: &Poly<F>| p.iter().map(|c| f.mul(c, &inv)).collect::<Vec<_>>();
            (scale(&r0), scale(&u0), scale(&v0))
        }
    }
}

pub fn pderiv<F: Field>(f: &F, a: &Poly<F>) -> Poly<F> {
    let mut out = Vec::new();
    for (i, c) in a.iter().enumerate().skip(1) {
        out.push(f.mul(&f.from_i64(i as i64), c));
    }
    ptrim(f, &mut out);
    out
}

pub fn peval<F: Field>(f: &F, a: &Poly<F>, x: &F::Elem) -> F::Elem {
    let mut acc = f.zero();
    for c in a.iter().rev() {
        acc = f.add(&f.mul(&acc, x), c);
    }
    acc
}

/// `base^exp mod m` with polynomial arithmetic.
pub fn ppowmod<F: Field>(f: &F, base: &Poly<F>, mut exp: u64, m: &Poly<F>) -> Poly<F> {
    let (_, mut b) = pdivrem(f, base, m);
    let mut acc = vec![f.one()];
    while exp > 0 {
        if exp & 1 == 1 {
            let prod = pmul(f, &acc, &b);
            acc = pdivrem(f, &prod, m).1;
        }
        let sq = pmul(f, &b, &b);
        b = pdivrem(f, &sq, m).1;
        exp >>= 1;
    }
    acc
}

/// All roots of `poly` in F_p, multiplicities collapsed.
pub fn roots_prime(fp: &PrimeField, poly: &[u64]) -> Vec<u64> {
    let f = fp;
    let p = fp.modulus();
    let mut q = poly.to_vec();
    ptrim(f, &mut q);
    if q.len() <= 1 {
        return vec![];
    }
    if p <= 4096 {
        return (0..p).filter(|r| f.is_zero(&peval(f, &q, r))).collect();
    }
    // squarefree part, then the product of linear factors via X^p - X
    let d = pderiv(f, &q);
    let sf = if d.is_empty() {
        q.clone()
    } else {
        let g = pgcd(f, &q, &d);
        if pdeg(&g) == Some(0) {
            pmonic(f, &q)
        } else {
            pdivrem(f, &q, &g).0
        }
    };
    let x = vec![0, 1];
    let xp = ppowmod(f, &x, p, &sf);
    let lin = pgcd(f, &psub(f, &xp, &x), &sf);
    let mut roots = Vec::new();
    let mut stack = vec![lin];
    while let Some(h) = stack.pop() {
        match pdeg(&h) {
            None | Some(0) => {}
            Some(1) => {
                // monic t + c has root -c
                let r = f.neg(&f.div(&h[0], &h[1]).unwrap());
                roots.push(r);
            }
            Some(_) => {
                // split by gcd with (t + c)^((p-1)/2) - 1 for successive shifts
                let mut done = false;
                for c in 0..512u64 {
                    let shifted = vec![c % p, 1];
                    let pw = ppowmod(f, &shifted, (p - 1) / 2, &h);
                    let g = pgcd(f, &psub(f, &pw, &vec![f.one()]), &h);
                    if let Some(dg) = pdeg(&g) {
                        if dg > 0 && dg < pdeg(&h).unwrap() {
                            let rest = pdivrem(f, &h, &g).0;
                            stack.push(g);
                            stack.push(rest);
                            done = true;
                            break;
                        }
                    }
                }
                if !done {
                    // all shifts failed to separate; give up on this factor
                }
            }
        }
    }
    roots.sort_unstable();
    roots.dedup();
    roots
}

const LIFT_PRIMES: [u64; 3] = [1_000_003, 1_000_033, 1_000_037];

/// Rational roots of a polynomial over Q, found by reducing mod a prime,
/// finding roots there, reconstructing rational candidates and verifying
/// exactly. Roots whose numerator and denominator both exceed the
/// reconstruction bound are missed; returned roots are always exact.
pub fn roots_rational(poly: &[BigRational]) -> Vec<BigRational> {
    let q = Rationals;
    let mut pl = poly.to_vec();
    ptrim(&q, &mut pl);
    if pl.len() <= 1 {
        return vec![];
    }
    // clear denominators
    let mut lcm = BigInt::one();
    for c in &pl {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = pl
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut found: Vec<BigRational> = Vec::new();
    for &pr in &LIFT_PRIMES {
        let fp = PrimeField::new(pr).unwrap();
        let lead = ints.last().unwrap();
        if (lead % BigInt::from(pr)).is_zero() {
            continue;
        }
        let red: Vec<u64> = ints
            .iter()
            .map(|c| {
                let m = BigInt::from(pr);
                let r = ((c % &m) + &m) % &m;
                *r.to_u64_digits().1.first().unwrap_or(&0)
            })
            .collect();
        for r in roots_prime(&fp, &red) {
            for cand in reconstruct_candidates(r, pr) {
                if q.is_zero(&peval(&q, &pl, &cand)) && !found.contains(&cand) {
                    found.push(cand);
                }
            }
        }
        if !found.is_empty() {
            break;
        }
    }
    found
}

/// Candidate rationals congruent to `r` mod `p`: the balanced integer
/// representative plus two Euclidean reconstructions (balanced and
/// integer-leaning bounds).
fn reconstruct_candidates(r: u64, p: u64) -> Vec<BigRational> {
    let mut out = Vec::new();
    let ri = if r > p / 2 {
        BigInt::from(r) - BigInt::from(p)
    } else {
        BigInt::from(r)
    };
    out.push(BigRational::from_integer(ri));
    let balanced = ((p as f64 / 2.0).sqrt()) as i128;
    for (nb, db) in [(balanced, balanced), (100_000i128, 10i128)] {
        if let Some((n, d)) = rational_reconstruct(r as i128, p as i128, nb, db) {
            let cand = BigRational::new(BigInt::from(n), BigInt::from(d));
            if !out.contains(&cand) {
                out.push(cand);
            }
        }
    }
    out
}

/// Euclidean rational reconstruction of `r mod m` with |num| <= nb, den <= db.
fn rational_reconstruct(r: i128, m: i128, nb: i128, db: i128) -> Option<(i128, i128)> {
    let (mut r0, mut r1) = (m, r.rem_euclid(m));
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1.abs() > nb {
        if r1 == 0 {
            return None;
        }
        let quo = r0.div_euclid(r1);
        let r2 = r0 - quo * r1;
        let t2 = t0 - quo * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if t1 == 0 || t1.abs() > db {
        return None;
    }
    let (mut n, mut d) = (r1, t1);
    if d < 0 {
        n = -n;
        d = -d;
    }
    if n.gcd(&d) != 1 {
        return None;
    }
    Some((n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn fp() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    #[test]
    fn divrem_identity() {
        let f = fp();
        let a = vec![1u64, 0, 2, 5]; // 5t^3 + 2t^2 + 1
        let b = vec![3u64, 1]; // t + 3
        let (q, r) = pdivrem(&f, &a, &b);
        let back = padd(&f, &pmul(&f, &q, &b), &r);
        assert_eq!(back, a);
    }

    #[test]
    fn xgcd_bezout() {
        let f = fp();
        // (t-1)(t-2) and (t-1)(t-3): gcd t-1
        let a = pmul(&f, &vec![f.neg(&1), 1], &vec![f.neg(&2), 1]);
        let b = pmul(&f, &vec![f.neg(&1), 1], &vec![f.neg(&3), 1]);
        let (g, u, v) = pxgcd(&f, &a, &b);
        assert_eq!(g, vec![f.neg(&1), 1]);
        let lhs = padd(&f, &pmul(&f, &u, &a), &pmul(&f, &v, &b));
        assert_eq!(lhs, g);
    }

    #[test]
    fn prime_roots_exhaustive_and_large() {
        let small = PrimeField::new(7).unwrap();
        // (t-2)(t-3) over F_7
        let p = pmul(&small, &vec![5u64, 1], &vec![4u64, 1]);
        assert_eq!(roots_prime(&small, &p), vec![2, 3]);

        let f = fp();
        let p = pmul(&f, &vec![f.neg(&17), 1], &pmul(&f, &vec![f.neg(&123), 1], &vec![f.neg(&17), 1]));
        let rs = roots_prime(&f, &p);
        assert_eq!(rs, vec![17, 123]);
    }

    #[test]
    fn irreducible_has_no_roots() {
        let f = fp();
        // t^2 + 1 has roots only if -1 is a square mod 32003; 32003 % 4 == 3 so none
        let p = vec![1u64, 0, 1];
        assert!(roots_prime(&f, &p).is_empty());
    }

    #[test]
    fn rational_roots_with_denominator() {
        let q = Rationals;
        // (2t - 1)(t + 3) = 2t^2 + 5t - 3
        let p = vec![q.from_i64(-3), q.from_i64(5), q.from_i64(2)];
        let mut roots = roots_rational(&p);
        roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(roots, vec![q.from_i64(-3), q.parse("1/2").unwrap()]);
    }

    #[test]
    fn rational_roots_none_for_irrational() {
        let q = Rationals;
        // t^2 - 2
        let p = vec![q.from_i64(-2), q.from_i64(0), q.from_i64(1)];
        assert!(roots_rational(&p).is_empty());
    }
}
