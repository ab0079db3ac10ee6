//! Incomplete gamma function Q(a, x), instrumented, together with its
//! series and continued-fraction helpers and the log-gamma routine.

use super::branch::{Cond, Tracer};

pub const STATEMENTS: usize = 39;
pub const BRANCHES: usize = 9;

const ITMAX: i64 = 100;
const EPS: f64 = 3.0e-7;
const FPMIN: f64 = 1.0e-30;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    InvalidArguments,
    NegativeX,
    SeriesTooSlow,
    FractionTooSlow,
}

pub fn gammq(t: &mut Tracer, a: f64, x: f64) -> Result<f64, Fault> {
    if t.branch(0, Cond::lt(x, 0.0).or(Cond::le(a, 0.0))) {
        t.stmt(0);
        return Err(Fault::InvalidArguments);
    }
    if t.branch(1, Cond::lt(x, a + 1.0)) {
        t.stmt(1);
        let gamser = gser(t, a, x)?;
        t.stmt(2);
        Ok(1.0 - gamser)
    } else {
        t.stmt(3);
        let gammcf = gcf(t, a, x)?;
        t.stmt(4);
        Ok(gammcf)
    }
}

fn gser(t: &mut Tracer, a: f64, x: f64) -> Result<f64, Fault> {
    t.stmt(5);
    let gln = gammln(t, a);
    if t.branch(2, Cond::le(x, 0.0)) {
        if t.branch(3, Cond::lt(x, 0.0)) {
            t.stmt(6);
            return Err(Fault::NegativeX);
        }
        t.stmt(7);
        let gamser = 0.0;
        t.stmt(8);
        return Ok(gamser);
    }
    t.stmt(9);
    let mut ap = a;
    t.stmt(10);
    let mut del = 1.0 / a;
    let mut sum = del;
    for _ in 1..=ITMAX {
        t.stmt(11);
        ap += 1.0;
        t.stmt(12);
        del *= x / ap;
        t.stmt(13);
        sum += del;
        if t.branch(4, Cond::lt(del.abs(), sum.abs() * EPS)) {
            t.stmt(14);
            let gamser = sum * (-x + a * x.ln() - gln).exp();
            t.stmt(15);
            return Ok(gamser);
        }
    }
    t.stmt(16);
    Err(Fault::SeriesTooSlow)
}

fn gcf(t: &mut Tracer, a: f64, x: f64) -> Result<f64, Fault> {
    t.stmt(17);
    let gln = gammln(t, a);
    t.stmt(18);
    let mut b = x + 1.0 - a;
    t.stmt(19);
    let mut c = 1.0 / FPMIN;
    t.stmt(20);
    let mut d = 1.0 / b;
    t.stmt(21);
    let mut h = d;
    let mut i = 1;
    while i <= ITMAX {
        t.stmt(22);
        let an = -(i as f64) * (i as f64 - a);
        t.stmt(23);
        b += 2.0;
        t.stmt(24);
        d = an * d + b;
        if t.branch(5, Cond::lt(d.abs(), FPMIN)) {
            t.stmt(25);
            d = FPMIN;
        }
        t.stmt(26);
        c = b + an / c;
        if t.branch(6, Cond::lt(c.abs(), FPMIN)) {
            t.stmt(27);
            c = FPMIN;
        }
        t.stmt(28);
        d = 1.0 / d;
        t.stmt(29);
        let del = d * c;
        t.stmt(30);
        h *= del;
        if t.branch(7, Cond::lt((del - 1.0).abs(), EPS)) {
            break;
        }
        i += 1;
    }
    if t.branch(8, Cond::int_gt(i, ITMAX)) {
        t.stmt(31);
        return Err(Fault::FractionTooSlow);
    }
    t.stmt(32);
    let gammcf = (-x + a * x.ln() - gln).exp() * h;
    t.stmt(33);
    Ok(gammcf)
}

fn gammln(t: &mut Tracer, xx: f64) -> f64 {
    const COF: [f64; 6] = [
        76.180_091_729_471_46,
        -86.505_320_329_416_77,
        24.014_098_240_830_91,
        -1.231_739_572_450_155,
        0.120_865_097_386_617_9e-2,
        -0.539_523_938_495_3e-5,
    ];
    t.stmt(34);
    let x = xx;
    let mut y = xx;
    let mut tmp = x + 5.5;
    t.stmt(35);
    tmp -= (x + 0.5) * tmp.ln();
    t.stmt(36);
    let mut ser = 1.000_000_000_190_015;
    for c in COF {
        t.stmt(37);
        y += 1.0;
        ser += c / y;
    }
    t.stmt(38);
    -tmp + (2.506_628_274_631_000_5 * ser / x).ln()
}
