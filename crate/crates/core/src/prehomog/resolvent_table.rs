// @generated by tools/gen_resolvent.py; do not edit.
//
// Inputs are indexed as [a00, a11, a22, a01, a02, a12, b00, b11, b22, b01, b02, b12].
// Each entry (c, i, j, k) contributes c · v[i] · v[j] · v[k].

pub(crate) const CUBIC_A: [(i64, usize, usize, usize); 5] = [
    (1, 3, 4, 5),
    (-1, 2, 3, 3),
    (-1, 1, 4, 4),
    (-1, 0, 5, 5),
    (4, 0, 1, 2),
];

pub(crate) const CUBIC_B: [(i64, usize, usize, usize); 12] = [
    (1, 5, 5, 6),
    (-1, 4, 5, 9),
    (1, 4, 4, 7),
    (-1, 3, 5, 10),
    (-1, 3, 4, 11),
    (1, 3, 3, 8),
    (2, 2, 3, 9),
    (2, 1, 4, 10),
    (-4, 1, 2, 6),
    (2, 0, 5, 11),
    (-4, 0, 2, 7),
    (-4, 0, 1, 8),
];

pub(crate) const CUBIC_C: [(i64, usize, usize, usize); 12] = [
    (1, 5, 9, 10),
    (-2, 5, 6, 11),
    (1, 4, 9, 11),
    (-2, 4, 7, 10),
    (1, 3, 10, 11),
    (-2, 3, 8, 9),
    (-1, 2, 9, 9),
    (4, 2, 6, 7),
    (-1, 1, 10, 10),
    (4, 1, 6, 8),
    (-1, 0, 11, 11),
    (4, 0, 7, 8),
];

pub(crate) const CUBIC_D: [(i64, usize, usize, usize); 5] = [
    (-1, 9, 10, 11),
    (1, 8, 9, 9),
    (1, 7, 10, 10),
    (1, 6, 11, 11),
    (-4, 6, 7, 8),
];

