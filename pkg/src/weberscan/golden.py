"""Published reference values used by the acceptance and regression tests."""
from __future__ import annotations

# (N, p, ascending coefficients of a monic factor mod p, spurious, table section)
# Sections: "main" is the all-primes annihilator table; "split-muN" lists solutions
# p < 10N with p = 1 mod N. A spurious row is a known artefact of a bad multiplier.

TABLE_ROWS: tuple = (
    (2, 13, (1, 1), False, "main"),
    (2, 31, (1, 1), False, "main"),
    (3, 7, (5, 1), False, "main"),
    (3, 73, (9, 1), False, "main"),
    (4, 13, (5, 1), False, "main"),
    (4, 29, (12, 1), False, "main"),
    (4, 37, (31, 1), False, "main"),
    (5, 11, (7, 1), False, "main"),
    (5, 11, (8, 1), False, "main"),
    (6, 7, (2, 1), False, "main"),
    (6, 13, (9, 1), False, "main"),
    (6, 43, (36, 1), False, "main"),
    (8, 3, (2, 1, 1), False, "main"),
    (8, 521, (206, 1), False, "main"),
    (10, 3, (1, 2, 1, 2, 1), True, "main"),
    (12, 13, (7, 1), False, "main"),
    (14, 113, (106, 1), False, "main"),
    (15, 31, (11, 1), False, "main"),
    (15, 31, (22, 1), False, "main"),
    (15, 241, (81, 1), False, "main"),
    (15, 1291, (958, 1), False, "main"),
    (17, 239, (172, 1), False, "main"),
    (18, 37, (33, 1), False, "main"),
    (22, 397, (16, 1), False, "main"),
    (22, 2729, (1268, 1), False, "main"),
    (23, 47, (19, 1), False, "main"),
    (25, 101, (21, 1), False, "main"),
    (25, 1151, (744, 1), False, "main"),
    (25, 2251, (1033, 1), False, "main"),
    (27, 109, (20, 1), False, "main"),
    (28, 701, (338, 1), False, "main"),
    (29, 59, (56, 1), False, "main"),
    (30, 1831, (261, 1), False, "main"),
    (33, 397, (136, 1), False, "main"),
    (38, 2357, (659, 1), False, "main"),
    (39, 157, (44, 1), False, "main"),
    (40, 41, (22, 1), False, "main"),
    (40, 41, (30, 1), False, "main"),
    (40, 41, (35, 1), False, "main"),
    (43, 173, (41, 1), False, "main"),
    (45, 541, (336, 1), False, "main"),
    (47, 283, (27, 1), False, "main"),
    (48, 193, (28, 1), False, "main"),
    (50, 101, (88, 1), False, "main"),
    (50, 251, (123, 1), False, "main"),
    (50, 1201, (493, 1), False, "main"),
    (52, 53, (12, 1), False, "main"),
    (52, 53, (21, 1), False, "main"),
    (52, 53, (27, 1), False, "main"),
    (52, 157, (128, 1), False, "main"),
    (54, 163, (21, 1), False, "main"),
    (56, 13, (5, 5, 1), False, "main"),
    (60, 61, (43, 1), False, "main"),
    (63, 379, (302, 1), False, "main"),
    (64, 193, (160, 1), False, "main"),
    (66, 1321, (617, 1), False, "main"),
    (67, 269, (176, 1), False, "main"),
    (67, 269, (208, 1), False, "main"),
    (69, 829, (532, 1), False, "main"),
    (70, 71, (40, 1), False, "main"),
    (70, 211, (76, 1), False, "main"),
    (72, 73, (28, 1), False, "main"),
    (80, 241, (124, 1), False, "main"),
    (81, 487, (287, 1), False, "main"),
    (83, 499, (312, 1), False, "main"),
    (84, 757, (685, 1), False, "main"),
    (86, 431, (145, 1), False, "main"),
    (87, 349, (157, 1), False, "main"),
    (87, 523, (62, 1), False, "main"),
    (88, 353, (17, 1), False, "main"),
    (93, 373, (307, 1), False, "main"),
    (95, 191, (132, 1), False, "main"),
    (95, 191, (137, 1), False, "main"),
    (99, 991, (91, 1), False, "main"),
    (99, 991, (818, 1), False, "main"),
    (100, 199, (1, 173, 1), False, "main"),
    (101, 607, (277, 1), False, "main"),
    (101, 607, (514, 1), False, "main"),
    (102, 103, (83, 1), False, "main"),
    (102, 103, (97, 1), False, "main"),
    (104, 937, (609, 1), False, "main"),
    (106, 107, (39, 1), False, "main"),
    (106, 107, (61, 1), False, "main"),
    (107, 857, (263, 1), False, "main"),
    (108, 109, (24, 1), False, "main"),
    (111, 223, (176, 1), False, "main"),
    (115, 461, (87, 1), False, "main"),
    (115, 461, (103, 1), False, "main"),
    (118, 709, (27, 1), False, "main"),
    (124, 5, (3, 2, 2, 1), False, "main"),
    (124, 373, (139, 1), False, "main"),
    (124, 373, (340, 1), False, "main"),
    (126, 379, (165, 1), False, "main"),
    (128, 257, (113, 1), False, "main"),
    (128, 641, (287, 1), False, "main"),
    (129, 257, (1, 81, 1), False, "main"),
    (136, 137, (35, 1), False, "main"),
    (138, 139, (31, 1), False, "main"),
    (140, 29, (5, 3, 1), False, "main"),
    (144, 433, (292, 1), False, "main"),
    (153, 307, (178, 1), False, "main"),
    (155, 311, (203, 1), False, "main"),
    (156, 157, (80, 1), False, "main"),
    (172, 173, (143, 1), False, "main"),
    (174, 349, (16, 1), False, "main"),
    (178, 179, (129, 1), False, "main"),
    (190, 761, (94, 1), False, "main"),
    (191, 383, (315, 1), False, "main"),
    (191, 383, (360, 1), False, "main"),
    (192, 193, (115, 1), False, "main"),
    (210, 211, (59, 1), False, "split-muN"),
    (210, 211, (154, 1), False, "split-muN"),
    (215, 431, (74, 1), False, "split-muN"),
    (215, 1721, (162, 1), False, "split-muN"),
    (225, 1801, (1536, 1), False, "split-muN"),
    (226, 227, (160, 1), False, "split-muN"),
    (230, 691, (345, 1), False, "split-muN"),
    (230, 1381, (144, 1), False, "split-muN"),
    (234, 1171, (988, 1), False, "split-muN"),
    (236, 1181, (939, 1), False, "split-muN"),
    (240, 241, (110, 1), False, "split-muN"),
    (242, 2179, (1976, 1), False, "split-muN"),
    (249, 499, (242, 1), False, "split-muN"),
    (261, 2089, (1080, 1), False, "split-muN"),
    (265, 1061, (919, 1), False, "split-muN"),
    (276, 277, (272, 1), False, "split-muN"),
    (281, 563, (551, 1), False, "split-muN"),
    (284, 2557, (1876, 1), False, "split-muN"),
    (288, 1153, (428, 1), False, "split-muN"),
    (288, 1153, (577, 1), False, "split-muN"),
    (290, 1451, (135, 1), False, "split-muN"),
    (292, 877, (405, 1), False, "split-muN"),
    (293, 587, (323, 1), False, "split-muN"),
    (296, 593, (447, 1), False, "split-muN"),
    (296, 1481, (444, 1), False, "split-muN"),
    (303, 607, (59, 1), False, "split-muN"),
    (303, 607, (564, 1), False, "split-muN"),
    (306, 307, (7, 1), False, "split-muN"),
    (306, 919, (81, 1), False, "split-muN"),
    (307, 1229, (121, 1), False, "split-muN"),
    (309, 619, (32, 1), False, "split-muN"),
    (315, 631, (346, 1), False, "split-muN"),
    (321, 643, (520, 1), False, "split-muN"),
    (324, 2269, (1878, 1), False, "split-muN"),
    (324, 2593, (1526, 1), False, "split-muN"),
    (328, 2953, (2160, 1), False, "split-muN"),
    (330, 331, (46, 1), False, "split-muN"),
    (330, 331, (110, 1), False, "split-muN"),
    (335, 2011, (919, 1), False, "split-muN"),
    (340, 1021, (417, 1), False, "split-muN"),
    (340, 1021, (993, 1), False, "split-muN"),
    (340, 2381, (1143, 1), False, "split-muN"),
    (344, 1721, (939, 1), False, "split-muN"),
    (345, 1381, (502, 1), False, "split-muN"),
    (346, 2423, (2301, 1), False, "split-muN"),
    (348, 349, (132, 1), False, "split-muN"),
    (352, 353, (238, 1), False, "split-muN"),
    (358, 359, (111, 1), False, "split-muN"),
    (358, 359, (240, 1), False, "split-muN"),
    (362, 1087, (172, 1), False, "split-muN"),
    (363, 1453, (1416, 1), False, "split-muN"),
    (363, 2179, (18, 1), False, "split-muN"),
    (368, 3313, (2536, 1), False, "split-muN"),
    (375, 751, (335, 1), False, "split-muN"),
    (382, 383, (23, 1), False, "split-muN"),
    (386, 1931, (1315, 1), False, "split-muN"),
    (388, 389, (233, 1), False, "split-muN"),
    (388, 1553, (421, 1), False, "split-muN"),
    (388, 1553, (464, 1), False, "split-muN"),
    (395, 2371, (2137, 1), False, "split-muN"),
    (400, 401, (294, 1), False, "split-muN"),
    (401, 3209, (154, 1), False, "split-muN"),
    (401, 4813, (3529, 1), False, "split-muN"),
    (405, 811, (645, 1), False, "split-muN"),
    (407, 3257, (894, 1), False, "split-muN"),
    (407, 3257, (2268, 1), False, "split-muN"),
    (408, 409, (370, 1), False, "split-muN"),
    (412, 1237, (387, 1), False, "split-muN"),
    (420, 421, (367, 1), False, "split-muN"),
    (422, 2111, (615, 1), False, "split-muN"),
    (427, 1709, (922, 1), False, "split-muN"),
    (428, 857, (31, 1), False, "split-muN"),
    (429, 3433, (702, 1), False, "split-muN"),
    (430, 1291, (1091, 1), False, "split-muN"),
    (431, 863, (406, 1), False, "split-muN"),
    (431, 863, (754, 1), False, "split-muN"),
    (432, 3889, (2110, 1), False, "split-muN"),
    (442, 443, (325, 1), False, "split-muN"),
    (443, 887, (226, 1), False, "split-muN"),
)

# Largest p in the all-primes section.
TABLE_MAX_P = max(r[1] for r in TABLE_ROWS if r[4] == "main")

# Totally split pairs with their degree-one annihilator x + a mod p.
COROLLARY_ROWS: tuple = (
    (2, 31, 1), (2, 1546463, 1), (256, 18433, 9723), (1024, 114689, 66688),
    (3, 73, 9), (81, 487, 287), (81, 238627, 106366), (25, 2251, 1033),
)

# (N, p) -> F_p-rank of the regulator matrix.
REGULATOR_RANKS: dict = {
    (3, 7): 1, (3, 73): 1, (5, 11): 2, (17, 239): 15, (23, 47): 21, (29, 59): 27,
    (2, 13): 0, (2, 31): 0, (4, 13): 1, (4, 29): 2, (4, 37): 2, (8, 521): 6,
}

# (N, p) -> rank of the genus symbol matrix.
GENUS_RANKS: dict = {(2, 31): 0, (3, 73): 1, (25, 2251): 23, (2, 1546463): 0, (81, 487): 79}

# (l, n, p) prime-power layers l^n with nontrivial T* component found by the mod-r test.
PRIME_POWER_SOLUTIONS: tuple = (
    (3, 1, 7), (3, 1, 73), (3, 3, 109), (3, 3, 17713), (3, 4, 487), (3, 4, 1621), (3, 7, 17497),
    (5, 1, 11), (5, 2, 101), (5, 2, 1151), (5, 2, 2251), (5, 2, 6701), (5, 3, 2251), (5, 3, 27751),
    (5, 4, 11251), (17, 1, 239), (23, 1, 47), (29, 1, 59), (37, 1, 4441), (43, 1, 173), (47, 1, 283),
    (61, 1, 1709), (67, 1, 269), (83, 1, 499), (101, 1, 607), (107, 1, 857), (109, 1, 50359),
    (131, 1, 2621), (131, 1, 8123), (131, 1, 34061), (137, 1, 1097), (151, 1, 907), (191, 1, 383),
    (2, 1, 13), (2, 1, 31), (2, 2, 13), (2, 2, 29), (2, 2, 37), (2, 3, 3), (2, 3, 521), (2, 5, 3617),
    (2, 5, 4513), (2, 6, 193), (2, 7, 257), (2, 7, 641), (2, 8, 18433), (2, 10, 114689),
)


def table_window(nmax: int, budget: int = 200000, nmin: int = 2) -> set:
    """Non-spurious main-table factors (N, p, coeffs) with nmin <= N <= nmax and p <= budget // N."""
    return {(N, p, co) for N, p, co, spurious, sec in TABLE_ROWS
            if sec == "main" and not spurious and nmin <= N <= nmax and p <= budget // N}
