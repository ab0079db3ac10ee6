//! Three-integer triangle classifier, instrumented.

use super::branch::{Cond, Tracer};

pub const STATEMENTS: usize = 12;
pub const BRANCHES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Invalid,
    Scalene,
    Isosceles,
    Equilateral,
}

pub fn classify(t: &mut Tracer, i: i64, j: i64, k: i64) -> Shape {
    let non_positive = Cond::int_le(i, 0)
        .or(Cond::int_le(j, 0))
        .or(Cond::int_le(k, 0));
    if t.branch(0, non_positive) {
        t.stmt(0);
        return Shape::Invalid;
    }
    t.stmt(1);
    let mut tri = 0;
    if t.branch(1, Cond::int_eq(i, j)) {
        t.stmt(2);
        tri += 1;
    }
    if t.branch(2, Cond::int_eq(i, k)) {
        t.stmt(3);
        tri += 2;
    }
    if t.branch(3, Cond::int_eq(j, k)) {
        t.stmt(4);
        tri += 3;
    }
    if t.branch(4, Cond::int_eq(tri, 0)) {
        let degenerate = Cond::int_le(i + j, k)
            .or(Cond::int_le(j + k, i))
            .or(Cond::int_le(i + k, j));
        if t.branch(5, degenerate) {
            t.stmt(5);
            return Shape::Invalid;
        }
        t.stmt(6);
        return Shape::Scalene;
    }
    if t.branch(6, Cond::int_gt(tri, 3)) {
        t.stmt(7);
        return Shape::Equilateral;
    }
    if t.branch(7, Cond::int_eq(tri, 1).and(Cond::int_gt(i + j, k))) {
        t.stmt(8);
        return Shape::Isosceles;
    }
    if t.branch(8, Cond::int_eq(tri, 2).and(Cond::int_gt(i + k, j))) {
        t.stmt(9);
        return Shape::Isosceles;
    }
    if t.branch(9, Cond::int_eq(tri, 3).and(Cond::int_gt(j + k, i))) {
        t.stmt(10);
        return Shape::Isosceles;
    }
    t.stmt(11);
    Shape::Invalid
}
