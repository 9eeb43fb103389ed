//! Reference values transcribed from the published tables, in table order.

/// `(N, k_min(N))`.
pub const K_MIN: &[(u64, i64)] = &[
    (6, 1), (10, 2), (12, 1), (14, 3), (15, 2), (16, 2), (18, 2), (20, 2), (21, 3), (22, 4),
    (24, 2), (26, 5), (28, 3), (30, 2), (32, 2), (34, 6), (36, 2), (38, 7), (39, 5), (40, 2),
    (42, 2), (44, 3), (45, 2), (46, 8), (48, 2), (50, 2), (51, 6), (52, 4), (54, 2), (56, 2),
    (57, 6), (60, 2), (63, 2), (64, 2), (66, 3), (68, 4), (70, 2), (72, 2), (74, 13), (75, 3),
    (78, 3), (80, 2), (81, 3), (84, 2), (85, 6), (88, 2), (90, 2), (94, 16), (96, 2), (98, 3),
    (99, 4), (100, 2), (102, 3), (104, 3), (105, 3), (108, 2), (111, 11), (112, 2), (120, 2),
    (126, 2), (128, 3), (130, 3), (133, 8), (135, 3), (136, 3), (138, 3), (140, 2), (144, 2),
    (148, 8), (150, 2), (154, 3), (162, 3), (168, 2), (170, 4), (172, 9), (176, 2), (180, 2),
    (182, 3), (184, 3), (189, 3), (192, 2), (196, 3), (200, 3), (209, 11), (216, 2), (240, 2),
    (243, 3), (252, 2), (256, 3), (288, 2), (324, 2), (432, 2), (512, 3), (576, 2), (625, 5),
    (729, 3), (768, 2), (1024, 3), (1649, 21), (2048, 3), (2187, 5), (2401, 7), (3125, 5),
    (4096, 3), (6561, 5), (8192, 3), (16384, 3), (32768, 4),
];

/// `(N, k_max(N), κ(N))`.
pub const K_MAX_KAPPA: &[(u64, i64, u64)] = &[
    (6, 2, 8), (10, 4, 16), (12, 3, 12), (14, 6, 24), (15, 8, 32), (16, 2, 5), (18, 5, 16),
    (20, 5, 24), (21, 12, 48), (24, 5, 16), (26, 12, 48), (28, 8, 36), (30, 15, 64),
    (32, 2, 6), (34, 16, 64), (36, 6, 24), (38, 18, 72), (39, 24, 96), (40, 8, 32),
    (42, 23, 96), (44, 13, 60), (45, 18, 64), (46, 22, 88), (48, 6, 20), (50, 17, 48),
    (51, 32, 128), (52, 16, 72), (54, 7, 24), (56, 12, 48), (57, 36, 144), (64, 3, 7),
    (66, 38, 160), (68, 20, 96), (70, 33, 192), (74, 36, 144), (78, 45, 192), (80, 11, 40),
    (85, 64, 256), (88, 20, 80), (94, 46, 184), (96, 8, 24), (98, 37, 96), (99, 45, 160),
    (100, 25, 72), (102, 60, 256), (104, 24, 96), (105, 56, 384), (111, 72, 288),
    (112, 18, 60), (128, 3, 8), (133, 108, 432), (135, 32, 96), (136, 34, 128), (148, 48, 216),
    (162, 13, 32), (170, 85, 512), (172, 56, 252), (176, 30, 100), (209, 180, 720),
    (256, 4, 9), (512, 5, 10), (1006, 502, 2008), (1024, 6, 11), (1649, 1536, 6144),
    (2048, 6, 12), (4096, 7, 13), (8192, 7, 14), (16384, 9, 15), (32768, 9, 16),
];

pub fn k_min_reference(n: u64) -> Option<i64> {
    K_MIN.iter().find(|r| r.0 == n).map(|r| r.1)
}

pub fn k_max_reference(n: u64) -> Option<(i64, u64)> {
    K_MAX_KAPPA.iter().find(|r| r.0 == n).map(|r| (r.1, r.2))
}
