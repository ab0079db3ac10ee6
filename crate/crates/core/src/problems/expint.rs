//! Exponential integral E_n(x), instrumented.
//!
//! Classic continued-fraction / power-series routine. Argument errors abort
//! execution the way the reference routine's error handler does.

use super::branch::{Cond, Tracer};

pub const STATEMENTS: usize = 26;
pub const BRANCHES: usize = 8;

const MAXIT: i64 = 100;
const EULER: f64 = 0.577_215_664_9;
const FPMIN: f64 = 1.0e-30;
const EPS: f64 = 1.0e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    BadArguments,
    ContinuedFractionFailed,
    SeriesFailed,
}

pub fn expint(t: &mut Tracer, n: i64, x: f64) -> Result<f64, Fault> {
    t.stmt(0);
    let nm1 = n - 1;
    let bad = Cond::int_lt(n, 0)
        .or(Cond::lt(x, 0.0))
        .or(Cond::eq(x, 0.0).and(Cond::int_eq(n, 0).or(Cond::int_eq(n, 1))));
    if t.branch(0, bad) {
        t.stmt(1);
        return Err(Fault::BadArguments);
    }
    if t.branch(1, Cond::int_eq(n, 0)) {
        t.stmt(2);
        return Ok((-x).exp() / x);
    }
    if t.branch(2, Cond::eq(x, 0.0)) {
        t.stmt(3);
        return Ok(1.0 / nm1 as f64);
    }
    if t.branch(3, Cond::gt(x, 1.0)) {
        t.stmt(4);
        let mut b = x + n as f64;
        t.stmt(5);
        let mut c = 1.0 / FPMIN;
        t.stmt(6);
        let mut d = 1.0 / b;
        t.stmt(7);
        let mut h = d;
        for i in 1..=MAXIT {
            t.stmt(8);
            let a = -(i * (nm1 + i)) as f64;
            t.stmt(9);
            b += 2.0;
            t.stmt(10);
            d = 1.0 / (a * d + b);
            t.stmt(11);
            c = b + a / c;
            t.stmt(12);
            let del = c * d;
            t.stmt(13);
            h *= del;
            if t.branch(4, Cond::lt((del - 1.0).abs(), EPS)) {
                t.stmt(14);
                return Ok(h * (-x).exp());
            }
        }
        t.stmt(15);
        Err(Fault::ContinuedFractionFailed)
    } else {
        t.stmt(16);
        let mut ans = if t.branch(5, Cond::int_ne(nm1, 0)) {
            1.0 / nm1 as f64
        } else {
            -x.ln() - EULER
        };
        t.stmt(17);
        let mut fact = 1.0;
        for i in 1..=MAXIT {
            t.stmt(18);
            fact *= -x / i as f64;
            let del = if t.branch(6, Cond::int_ne(i, nm1)) {
                t.stmt(19);
                -fact / (i - nm1) as f64
            } else {
                t.stmt(20);
                let mut psi = -EULER;
                for ii in 1..=nm1 {
                    t.stmt(21);
                    psi += 1.0 / ii as f64;
                }
                t.stmt(22);
                fact * (-x.ln() + psi)
            };
            t.stmt(23);
            ans += del;
            if t.branch(7, Cond::lt(del.abs(), ans.abs() * EPS)) {
                t.stmt(24);
                return Ok(ans);
            }
        }
        t.stmt(25);
        Err(Fault::SeriesFailed)
    }
}
