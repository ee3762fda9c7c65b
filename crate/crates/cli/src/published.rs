//! Published reference values checked by `verify-paper`.

/// `(r, a, δ)`.
pub type Triple = (u32, u32, u8);

/// `(j,k,l)` of `ρ′_{jkl}` with its `(r, a, δ)`.
pub const DIAGONAL_PRIME_INVARIANTS: [((u8, u8, u8), Triple); 6] = [
    ((1, 2, 2), (2, 0, 0)),
    ((1, 2, 4), (3, 1, 1)),
    ((1, 4, 4), (4, 2, 1)),
    ((3, 2, 2), (1, 1, 1)),
    ((3, 2, 4), (2, 2, 1)),
    ((3, 4, 4), (3, 3, 1)),
];

/// Swap forms by `m`.
pub const SWAP_PRIME_INVARIANTS: [(u8, (u32, u32, u8)); 2] = [(2, (2, 2, 0)), (4, (3, 3, 1))];

pub const DOUBLE_PRIME_INVARIANTS: [(u8, (u32, u32, u8)); 6] =
    [(1, (16, 0, 0)), (2, (8, 0, 0)), (3, (8, 0, 0)), (4, (0, 0, 0)), (5, (8, 8, 0)), (6, (8, 8, 0))];

pub const FAMILY_COUNTS: [usize; 4] = [27, 8, 8, 16];
pub const PRIME_PAIR_COUNT: usize = 59;
pub const TOTAL_PAIRS: usize = 531;
pub const TUPLE_COUNT: usize = 342;

pub const DOUBLE_PRIME_INDEX_PAIRS: [(u8, u8); 9] =
    [(1, 4), (2, 3), (2, 4), (4, 1), (4, 2), (4, 4), (4, 5), (5, 4), (5, 6)];

pub const PRIME_TUPLES: [[(u32, u32); 3]; 38] = [
    [(1, 1), (1, 1), (4, 2)],
    [(1, 1), (4, 2), (1, 1)],
    [(4, 2), (1, 1), (1, 1)],
    [(1, 1), (2, 0), (3, 1)],
    [(1, 1), (3, 1), (2, 0)],
    [(2, 0), (1, 1), (3, 1)],
    [(2, 0), (3, 1), (1, 1)],
    [(3, 1), (1, 1), (2, 0)],
    [(3, 1), (2, 0), (1, 1)],
    [(1, 1), (2, 2), (3, 1)],
    [(1, 1), (3, 1), (2, 2)],
    [(2, 2), (1, 1), (3, 1)],
    [(2, 2), (3, 1), (1, 1)],
    [(3, 1), (1, 1), (2, 2)],
    [(3, 1), (2, 2), (1, 1)],
    [(1, 1), (2, 2), (3, 3)],
    [(1, 1), (3, 3), (2, 2)],
    [(2, 2), (1, 1), (3, 3)],
    [(2, 2), (3, 3), (1, 1)],
    [(3, 3), (1, 1), (2, 2)],
    [(3, 3), (2, 2), (1, 1)],
    [(2, 0), (2, 0), (2, 0)],
    [(2, 0), (2, 2), (2, 2)],
    [(2, 2), (2, 0), (2, 2)],
    [(2, 2), (2, 2), (2, 0)],
    [(2, 0), (3, 3), (3, 3)],
    [(3, 3), (2, 0), (3, 3)],
    [(3, 3), (3, 3), (2, 0)],
    [(2, 2), (2, 2), (2, 2)],
    [(2, 2), (2, 2), (4, 2)],
    [(2, 2), (4, 2), (2, 2)],
    [(4, 2), (2, 2), (2, 2)],
    [(2, 2), (3, 3), (3, 3)],
    [(3, 3), (2, 2), (3, 3)],
    [(3, 3), (3, 3), (2, 2)],
    [(3, 3), (3, 3), (4, 2)],
    [(3, 3), (4, 2), (3, 3)],
    [(4, 2), (3, 3), (3, 3)],
];

pub const DOUBLE_PRIME_TUPLES: [[(u32, u32); 3]; 9] = [
    [(0, 0), (0, 0), (16, 0)],
    [(0, 0), (16, 0), (0, 0)],
    [(16, 0), (0, 0), (0, 0)],
    [(0, 0), (8, 0), (8, 0)],
    [(8, 0), (0, 0), (8, 0)],
    [(8, 0), (8, 0), (0, 0)],
    [(0, 0), (8, 8), (8, 8)],
    [(8, 8), (0, 0), (8, 8)],
    [(8, 8), (8, 8), (0, 0)],
];

pub const SIMPLE_TRIPLE_COUNT: usize = 28;
pub const SIMPLE_TRIPLE_EXAMPLES: [(u32, u32, u8); 4] = [(1, 1, 1), (10, 10, 0), (11, 11, 1), (2, 0, 0)];

pub const ORBIFOLD_BETTI: (u32, u32, u32) = (0, 0, 23);

pub const CASE1_TABLE: [(u32, &[u32]); 10] = [
    (2, &[25, 29, 33, 37, 41, 45, 49, 53, 57, 61, 65]),
    (4, &[27, 31, 35, 39, 43, 47, 51, 55, 59, 63, 67]),
    (6, &[37, 41, 45, 49, 53, 57]),
    (8, &[39, 43, 47, 51, 55]),
    (10, &[41, 45, 49, 53, 57]),
    (12, &[43, 47, 51, 55, 59]),
    (14, &[45, 49]),
    (16, &[47]),
    (18, &[41, 45, 49]),
    (20, &[43, 47, 51]),
];

/// Catalogued `(r₂, a₂)` said to be left out of the Case 1 table.
pub const CASE1_EXCLUDED: [(u32, u32); 7] = [(11, 9), (11, 11), (12, 10), (18, 2), (19, 1), (19, 3), (20, 2)];

pub const CASE2_EXAMPLE: ((u32, u32), (u32, u32), (u32, u32)) = ((1, 1), (11, 11), (4, 67));
pub const CASE2_SUM_PAIRS: usize = 60;
pub const CASE2_KOVALEV_LEE: usize = 31;

/// `(b², b³, r₁+r₂, a₁+a₂)`.
pub const CASE2_ROWS: [(u32, u32, u32, u32); 29] = [
    (4, 27, 22, 22),
    (4, 31, 21, 21),
    (4, 35, 20, 20),
    (4, 39, 19, 19),
    (4, 43, 18, 18),
    (4, 59, 14, 14),
    (4, 63, 13, 13),
    (4, 67, 12, 12),
    (6, 29, 23, 21),
    (6, 33, 22, 20),
    (6, 37, 21, 19),
    (6, 41, 20, 18),
    (6, 45, 19, 17),
    (6, 61, 15, 13),
    (6, 65, 14, 12),
    (6, 69, 13, 11),
    (6, 73, 12, 10),
    (8, 43, 21, 17),
    (8, 47, 20, 16),
    (8, 75, 13, 9),
    (20, 75, 22, 6),
    (20, 79, 21, 5),
    (20, 83, 20, 4),
    (20, 87, 19, 3),
    (22, 77, 23, 5),
    (22, 81, 22, 4),
    (22, 85, 21, 3),
    (22, 89, 20, 2),
    (24, 91, 21, 1),
];

pub const CASE2_LITERATURE_REMAINING: [(u32, u32); 7] =
    [(4, 31), (6, 29), (6, 37), (22, 77), (22, 81), (22, 85), (24, 91)];

pub const CASE3_B3_VALUES: [u32; 3] = [63, 71, 79];
pub const CASE3_BARELY_B3: u32 = 71;

pub const D4_TABLE: [(u32, &[u32]); 11] = [
    (8, &[31, 39, 47, 55, 63, 95, 103, 111, 119, 127, 135, 143, 151, 159, 167, 175, 183, 191]),
    (12, &[35, 43, 51, 59, 67, 99, 107, 115, 123, 131, 139, 147, 155, 163, 171, 179, 187, 195]),
    (16, &[63, 71, 127, 135, 143, 151, 159, 167, 175, 183, 191, 199]),
    (20, &[139, 147, 155, 163, 171, 179]),
    (24, &[79, 87, 95, 103, 111, 143, 151, 159, 167, 175]),
    (28, &[83, 91, 99, 107, 115, 147, 155, 163, 171, 179]),
    (32, &[111, 119, 151, 159, 167, 175, 183]),
    (36, &[155, 163]),
    (40, &[127, 135, 143, 151, 159]),
    (44, &[131, 139, 147, 155, 163]),
    (48, &[159, 167]),
];

pub const D4_COUNT: usize = 95;
pub const D4_LITERATURE_REMAINING: usize = 67;
