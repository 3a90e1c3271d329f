use num::One;

use super::laurent::{Arg, LaurentOperator as Op, LaurentPoly as P, OperatorMatrix, Q};
use super::params::Params;

fn c(x: &Q) -> P {
    P::constant(x.clone())
}

/// `c₀ + c₁·z`.
fn lin(c0: &Q, c1: &Q) -> P {
    P::linear(c0.clone(), c1.clone())
}

fn z(k: i64) -> P {
    P::z(k)
}

fn prod(ps: &[P]) -> P {
    ps.iter().fold(P::one(), |acc, p| acc.mul(p))
}

/// `f ↦ z·f`.
pub fn op_z() -> Op {
    Op::multiply(z(1))
}

pub fn op_z_inv() -> Op {
    Op::multiply(z(-1))
}

/// `T₁(a,b)`: `[((a+b)z−(1+ab))f[z] + (1−az)(1−bz)f[z⁻¹]] / (1−z²)`.
pub fn op_t1(p: &Params) -> Op {
    let (a, b) = (&p.a, &p.b);
    let one = Q::one();
    let m0 = lin(&-(&one + a * b), &(a + b));
    let m1 = lin(&one, &-a).mul(&lin(&one, &-b));
    Op::rational(vec![(m0, Arg::Z), (m1, Arg::InvZ)], P::from_pairs([(0, one.clone()), (2, -one)]), p.q.clone())
}

/// `T₀(c,d)`: `[q⁻¹z((cd+q)z−(c+d)q)f[z] − (c−z)(d−z)f[q/z]] / (q−z²)`.
pub fn op_t0(p: &Params) -> Op {
    let (cc, d, q) = (&p.c, &p.d, &p.q);
    let m0 = z(1).mul(&lin(&-((cc + d) * q), &(cc * d + q))).scale(&q.recip());
    let m1 = lin(cc, &-Q::one()).mul(&lin(d, &-Q::one())).neg();
    Op::rational(vec![(m0, Arg::Z), (m1, Arg::QOverZ)], P::from_pairs([(0, q.clone()), (2, -Q::one())]), q.clone())
}

/// `T₁⁻¹ = −(T₁ + 1 + ab)/(ab)`, from `(T₁+ab)(T₁+1) = 0`.
pub fn op_t1_inv(p: &Params) -> Op {
    let ab = &p.a * &p.b;
    op_t1(p).shift(&-(Q::one() + &ab)).scale(&-ab.recip())
}

/// `T₀⁻¹ = −(q/cd)(T₀ + 1 + cd/q)`, from `(T₀+cd/q)(T₀+1) = 0`.
pub fn op_t0_inv(p: &Params) -> Op {
    let r = &p.c * &p.d / &p.q;
    op_t0(p).shift(&-(Q::one() + &r)).scale(&-r.recip())
}

/// `(K̂₁, K̂₂, K̂₃, K̂₄) = (−T₁, −aT₁⁻¹Z⁻¹, −T₀, −(a√q)⁻¹T₀⁻¹Z)`.
pub fn hatted_generators(p: &Params) -> [Op; 4] {
    let m1 = -Q::one();
    [
        op_t1(p).scale(&m1),
        op_t1_inv(p).then(&op_z_inv()).scale(&-p.a.clone()),
        op_t0(p).scale(&m1),
        op_t0_inv(p).then(&op_z()).scale(&-(&p.a * &p.sqrt_q).recip()),
    ]
}

/// `eᵢ = tᵢ²/(1−tᵢ²)·(K̂ᵢ − 1)` for `i = 1, 2, 3` (zero-based).
pub fn idempotents(p: &Params) -> [Op; 3] {
    let k = hatted_generators(p);
    [0, 1, 2].map(|i| {
        let t2 = p.t_sq(i);
        k[i].shift(&Q::one()).scale(&(&t2 / (Q::one() - &t2)))
    })
}

/// Which of the three invariant subspaces `f` lies in:
/// `(Sym, (bz−1)·Sym, Sym_q)`.
pub fn eigenspace_predicates(p: &Params, f: &P) -> (bool, bool, bool) {
    let shifted = f.div_exact(&lin(&-Q::one(), &p.b)).map(|g| g.is_symmetric()).unwrap_or(false);
    (f.is_symmetric(), f.is_q_symmetric(&p.q), shifted)
}

/// Whether the triple lies in `E(V) = Sym ⊕ (bz−1)Sym ⊕ Sym_q`.
pub fn in_e_of_v(p: &Params, v: &[P; 3]) -> bool {
    eigenspace_predicates(p, &v[0]).0 && eigenspace_predicates(p, &v[1]).2 && eigenspace_predicates(p, &v[2]).1
}

/// The entries `a_ij` of the pseudo-reflections restricted to `E(V)`:
/// `a_ij = eᵢ(K̂_j − 1)` off the diagonal, `a_ii = eᵢK̂ᵢ`.
pub fn killing_entries(p: &Params) -> Vec<Vec<Op>> {
    let k = hatted_generators(p);
    let e = idempotents(p);
    (0..3)
        .map(|i| {
            (0..3)
                .map(|j| if i == j { e[i].then(&k[i]) } else { e[i].then(&k[j].shift(&Q::one())) })
                .collect()
        })
        .collect()
}

/// Operators obtained from the hatted generators alone.
#[derive(Clone, Debug)]
pub struct DerivedOperators {
    pub en: [OperatorMatrix; 3],
    pub u: OperatorMatrix,
    pub l: OperatorMatrix,
    pub u_inv: OperatorMatrix,
    pub l_inv: OperatorMatrix,
    pub pi: OperatorMatrix,
}

pub fn derived_operators(p: &Params) -> DerivedOperators {
    let a = killing_entries(p);
    let id = Op::identity;
    let zero = Op::zero;
    let en = [0, 1, 2].map(|r| {
        OperatorMatrix::from_fn(|i, j| {
            if i == r {
                a[i][j].clone()
            } else if i == j {
                id()
            } else {
                zero()
            }
        })
    });
    let u = OperatorMatrix::from_fn(|i, j| match (i, j) {
        (0, 2) => a[0][2].add(&a[0][1].then(&a[1][2])),
        _ if i == j => id(),
        _ if i < j => a[i][j].clone(),
        _ => zero(),
    });
    let l = OperatorMatrix::from_fn(|i, j| if i >= j { a[i][j].clone() } else { zero() });
    let u_inv = OperatorMatrix::from_fn(|i, j| match (i, j) {
        _ if i == j => id(),
        _ if i < j => a[i][j].scale(&-Q::one()),
        _ => zero(),
    });
    // a_ii acts as t_i^{-2} on e_i(V).
    let d: Vec<Op> = (0..3).map(|i| Op::scalar(p.t_sq(i))).collect();
    let m1 = -Q::one();
    let l_inv = OperatorMatrix::from_fn(|i, j| match (i, j) {
        _ if i == j => d[i].clone(),
        (1, 0) => d[1].then(&a[1][0]).then(&d[0]).scale(&m1),
        (2, 1) => d[2].then(&a[2][1]).then(&d[1]).scale(&m1),
        (2, 0) => d[2]
            .then(&a[2][0])
            .then(&d[0])
            .scale(&m1)
            .add(&d[2].then(&a[2][1]).then(&d[1]).then(&a[1][0]).then(&d[0])),
        _ => zero(),
    });
    let pi = l_inv.then(&u_inv);
    DerivedOperators { en, u, l, u_inv, l_inv, pi }
}

/// Closed-form transcription of the restricted pseudo-reflections and
/// their Killing factors, entry by entry.
#[derive(Clone, Debug)]
pub struct ClosedForms {
    pub en: [OperatorMatrix; 3],
    pub l: OperatorMatrix,
    pub u: OperatorMatrix,
    pub pi: OperatorMatrix,
}

/// Which closed forms to build: verbatim, or with the sign and exponent
/// slips fixed (see [`CORRECTIONS`]).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transcription {
    Verbatim,
    Corrected,
}

/// Entries where the verbatim closed forms disagree with the operators
/// derived from the hatted generators.
pub const CORRECTIONS: &[&str] = &[
    "EN3[3][1]: factor (z−d) read as (d−z), as in L[3][1]",
    "L[2][1]: sign flipped to agree with EN2[2][1]",
    "L[3][3]: diagonal q/(cd) read as cd/q = t₃⁻²",
    "Π[1][2], Π[2][2], Π[3][2]: v₂ read as p, where v₂ = (bz−1)·p",
    "Π[2][3]: missing factor z on the v₃[z] term restored",
];

struct Entries {
    map: Vec<((usize, usize), Op)>,
}

impl Entries {
    fn new() -> Self {
        Entries { map: Vec::new() }
    }

    fn set(&mut self, i: usize, j: usize, op: Op) -> &mut Self {
        self.map.push(((i, j), op));
        self
    }

    fn unit_diagonal(&mut self) -> &mut Self {
        for i in 0..3 {
            if !self.map.iter().any(|((a, b), _)| *a == i && *b == i) {
                self.set(i, i, Op::identity());
            }
        }
        self
    }

    fn build(&self) -> OperatorMatrix {
        OperatorMatrix::from_fn(|i, j| {
            self.map.iter().find(|((a, b), _)| *a == i && *b == j).map(|(_, o)| o.clone()).unwrap_or_else(Op::zero)
        })
    }
}

pub fn closed_forms(p: &Params, mode: Transcription) -> ClosedForms {
    let (a, b, cc, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
    let one = Q::one();
    let m1 = -one.clone();
    let ab = a * b;
    let cd = cc * d;
    let rat = |parts: Vec<(P, Arg)>, den: P| Op::rational(parts, den, q.clone());
    let z2m1 = P::from_pairs([(0, m1.clone()), (2, one.clone())]);
    let qmz2 = P::from_pairs([(0, q.clone()), (2, m1.clone())]);
    let z2mq = qmz2.neg();
    // Linear factors.
    let a_z = lin(a, &m1); // a − z
    let b_z = lin(b, &m1); // b − z
    let c_z = lin(cc, &m1); // c − z
    let d_z = lin(d, &m1); // d − z
    let az1 = lin(&m1, a); // az − 1
    let bz1 = lin(&m1, b); // bz − 1
    let czq = lin(&-q.clone(), cc); // cz − q
    let dzq = lin(&-q.clone(), d); // dz − q

    let e12 = rat(vec![(b_z.scale(&((a - b) / (b * (&ab - &one)))), Arg::Z)], z(1));
    let e13 = {
        let k = (&cd - q) / ((&ab - &one) * q);
        rat(vec![(prod(&[az1.clone(), bz1.clone()]).scale(&k), Arg::InvZ), (prod(&[a_z.clone(), b_z.clone()]).scale(&-k), Arg::Z)], z2m1.clone())
    };
    let e23 = {
        let k = (&cd - q) / ((a - b) * q);
        rat(
            vec![(prod(&[bz1.clone(), a_z.clone()]).scale(&k), Arg::Z), (prod(&[bz1.clone(), z(1), az1.clone()]).scale(&-k), Arg::InvZ)],
            z2m1.clone(),
        )
    };
    let lower = |sign_dz: bool, k: Q| {
        let second = if sign_dz { d_z.clone() } else { d_z.neg() };
        rat(
            vec![(prod(&[c(q), c_z.clone(), second]).scale(&k), Arg::QOverZ), (prod(&[czq.clone(), dzq.clone()]).scale(&-k.clone()), Arg::Z)],
            qmz2.clone(),
        )
    };
    let k31 = (&ab - &one) / (&cd - q);
    let k32 = (a - b) / (b * (&cd - q));
    let fixed = mode == Transcription::Corrected;
    let sign = |s: bool| if s { one.clone() } else { m1.clone() };
    // Column-2 entries written in the cofactor p of v₂ = (bz−1)·p.
    let cofactor = |op: Op| {
        if fixed {
            let d = bz1.clone();
            op.then(&Op::new(move |f| f.div_exact(&d)))
        } else {
            op
        }
    };

    let en1 = Entries::new()
        .set(0, 0, Op::scalar(ab.clone()))
        .set(0, 1, e12.clone())
        .set(0, 2, e13)
        .unit_diagonal()
        .build();
    let a21 = |s: Q| Op::multiply(bz1.scale(&(s * a * (&ab - &one) / (a - b))));
    let en2 = Entries::new()
        .set(1, 0, a21(m1.clone()))
        .set(1, 1, Op::scalar(a / b))
        .set(1, 2, e23.clone())
        .unit_diagonal()
        .build();
    let en3 = Entries::new()
        .set(2, 0, lower(fixed, k31.clone()))
        .set(2, 1, lower(true, k32.clone()))
        .set(2, 2, Op::scalar(&cd / q))
        .unit_diagonal()
        .build();
    let l = Entries::new()
        .set(0, 0, Op::scalar(ab.clone()))
        .set(1, 0, a21(sign(!fixed)))
        .set(1, 1, Op::scalar(a / b))
        .set(2, 0, lower(true, k31))
        .set(2, 1, lower(true, k32))
        .set(2, 2, Op::scalar(if fixed { &cd / q } else { q / &cd }))
        .build();
    let u13 = {
        let k = (&cd - q) / (q * (&ab - &one) * b);
        rat(
            vec![(prod(&[z(2), az1.clone(), bz1.clone()]).scale(&k), Arg::InvZ), (prod(&[a_z.clone(), b_z.clone()]).scale(&-k), Arg::Z)],
            z(1).mul(&z2m1),
        )
    };
    let u = Entries::new().set(0, 1, e12).set(0, 2, u13).set(1, 2, e23).unit_diagonal().build();

    let zma = a_z.neg();
    let zmb = b_z.neg();
    let p11 = Op::scalar(ab.recip());
    let p12 = rat(vec![(prod(&[zmb.clone(), bz1.clone()]).scale(&((a - b) / (a * b * b * (&ab - &one)))), Arg::Z)], z(1));
    let p13 = {
        let k = (&cd - q) / (&ab * (&ab - &one) * q);
        rat(vec![(prod(&[zma, zmb]).scale(&k), Arg::Z), (prod(&[az1.clone(), bz1.clone()]).scale(&-k.clone()), Arg::InvZ)], z2m1.clone())
    };
    let p21 = Op::multiply(bz1.scale(&((&ab - &one) / (a * (a - b)))));
    let p22 = rat(
        vec![(prod(&[bz1.clone(), P::from_pairs([(0, b.clone()), (1, m1.clone()), (2, b.clone())])]).scale(&ab.recip()), Arg::Z)],
        z(1),
    );
    let p23 = {
        let k = (&cd - q) / (a * (a - b) * q);
        let zf = if fixed { z(1) } else { P::one() };
        rat(vec![(prod(&[bz1.clone(), az1.clone()]).scale(&k), Arg::InvZ), (prod(&[zf, bz1.clone(), a_z.clone()]).scale(&-k.clone()), Arg::Z)], z2m1)
    };
    let p31 = {
        let k = (&ab - &one) * q / (a * &cd * (&cd - q));
        rat(
            vec![
                (prod(&[c(&(q * q)), c_z.clone(), d_z.clone()]).scale(&k), Arg::QOverZ),
                (prod(&[z(2), czq.clone(), dzq.clone()]).scale(&-k.clone()), Arg::Z),
            ],
            z(1).mul(&z2mq),
        )
    };
    let p32 = {
        let k = (a - b) * q / (&ab * &cd * (&cd - q));
        rat(
            vec![
                (prod(&[c(&(q * q)), lin(&(b * q), &m1), c_z.clone(), d_z.clone()]).scale(&k), Arg::QOverZ),
                (prod(&[z(3), bz1.clone(), czq.clone(), dzq.clone()]).scale(&-k.clone()), Arg::Z),
            ],
            z(2).mul(&z2mq),
        )
    };
    let p33 = {
        let k = (a * &cd).recip();
        let first = prod(&[c(q), c_z.clone(), d_z.clone(), lin(&-q.clone(), a)]).scale(&-k.clone());
        let inner = d_z.scale(&(a * q)).add(&lin(&(a * cc + q), &-cc.clone()).mul(&lin(q, &-d.clone())));
        let second = prod(&[z(2), inner]).scale(&-k);
        rat(vec![(first, Arg::QOverZ), (second, Arg::Z)], z(1).mul(&z2mq))
    };
    let pi = Entries::new()
        .set(0, 0, p11)
        .set(0, 1, cofactor(p12))
        .set(0, 2, p13)
        .set(1, 0, p21)
        .set(1, 1, cofactor(p22))
        .set(1, 2, p23)
        .set(2, 0, p31)
        .set(2, 1, cofactor(p32))
        .set(2, 2, p33)
        .build();
    ClosedForms { en: [en1, en2, en3], l, u, pi }
}
