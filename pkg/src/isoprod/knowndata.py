"""Literal building data and move claims for the known families.

Abelian vectors are written additively: ``e1+e2`` over an elementary
abelian 2-group, residue tuples ``(1,3)`` otherwise.  A base vector
``(g; h1, h2)`` stands for the elliptic pair ``(g, -g)``.  Permutations
are in cycle notation, composed right to left.
"""
from __future__ import annotations

# abelian families: label -> (invariants, fibre branching, g_C)
ABELIAN_FAMILIES = {
    "I": ((2, 2), (2, 2, 2, 2, 2, 2), 3),
    "II": ((2, 2, 2), (2, 2, 2, 2, 2), 5),
    "III": ((2, 4), (2, 2, 4, 4), 5),
    "IV": ((2, 8), (2, 8, 8), 9),
}

EXPECTED_COMPONENTS = {"I": (1, 5), "II": (1, 4), "III": (2, 3), "IV": (1, 2)}

TYPE_I = {
    "W": {
        "W1": ("e1", "e2", "0"),
        "W2": ("e1", "e2", "e1"),
        "W3": ("e1", "e2", "e2"),
        "W4": ("e1", "e2", "e1+e2"),
    },
    "chains": [("W2", "1,3,5,3", "W1"), ("W3", "1", "W1"), ("W4", "1,1,3,5,3", "W1")],
    "V": {
        "V1": ("e2", "e2", "e2", "e2", "e1+e2", "e1+e2"),
        "V2": ("e1+e2", "e1+e2", "e1+e2", "e1+e2", "e2", "e2"),
    },
    # e1 -> e1, e2 -> e1+e2
    "aut": {"images": ("e1", "e1+e2"), "V_from": "V1", "V_to": "V2",
            "W_from": "W1", "W_image": ("e1", "e1+e2", "0"), "chain": "3"},
}

TYPE_II = {
    "W": ("e1", "e2", "e3"),
    "lambda0": {"images": ("e1", "e3", "e2"), "W_image": ("e1", "e3", "e2"), "chain": "5"},
    "V": {
        "V1": ("e2", "e2", "e3", "e1+e2", "e1+e2+e3"),
        "V2": ("e2", "e2", "e1+e3", "e1+e2", "e2+e3"),
        "V3": ("e1+e2+e3", "e1+e2+e3", "e3", "e2+e3", "e2"),
        "V4": ("e1+e2+e3", "e1+e2+e3", "e1+e2", "e2+e3", "e1+e3"),
        "V5": ("e1+e2", "e1+e2", "e3", "e2", "e2+e3"),
        "V6": ("e1+e2", "e1+e2", "e1+e3", "e2", "e1+e2+e3"),
        "V7": ("e2+e3", "e2+e3", "e2", "e1+e2+e3", "e1+e3"),
    },
    # row i: lambda_i(W) and the chain taking it back to W
    "table": [
        ("lambda1", ("e1", "e2", "e3"), ""),
        ("lambda2", ("e1", "e2", "e1+e3"), "5,3,2,5"),
        ("lambda3", ("e1", "e1+e2+e3", "e3"), "3"),
        ("lambda4", ("e1", "e1+e2+e3", "e1+e2"), "2,5,3,2"),
        ("lambda5", ("e1", "e1+e2", "e3"), "3,2"),
        ("lambda6", ("e1", "e1+e2", "e1+e3"), "1,3,5,2"),
        ("lambda7", ("e1", "e2+e3", "e2"), "2,5"),
    ],
}

TYPE_III = {
    "forbidden_g": "(0,2)",
    "W_options": (("(1,0)", "(0,1)", "(0,0)"), ("(1,0)", "(0,1)", "(1,0)")),
    "W_chain": "1,3,5,4",
    "W": ("(1,0)", "(0,1)", "(1,0)"),
    "V": {
        "V1": ("(1,2)", "(0,2)", "(0,1)", "(1,3)"),
        "V2": ("(1,2)", "(0,2)", "(0,3)", "(1,1)"),
        "V3": ("(1,2)", "(1,2)", "(0,1)", "(0,3)"),
        "V4": ("(1,2)", "(1,2)", "(1,3)", "(1,1)"),
    },
    "auts": [
        {"images": ("(1,0)", "(0,3)"), "V_from": "V1", "V_to": "V2",
         "W_image": ("(1,0)", "(0,3)", "(1,0)"), "chain": "4"},
        {"images": ("(1,0)", "(1,3)"), "V_from": "V3", "V_to": "V4",
         "W_image": ("(1,0)", "(1,3)", "(1,0)"), "chain": "2,4"},
    ],
    "fixed_element": "(0,2)",
    "inequivalent": ("V1", "V3"),
}

TYPE_IV = {
    "forbidden_g": "(0,4)",
    "W": ("(1,0)", "(0,1)", "(1,0)"),
    "V": {
        "V1": ("(1,4)", "(0,1)", "(1,3)"),
        "V2": ("(1,4)", "(1,1)", "(0,3)"),
        "V3": ("(1,4)", "(1,7)", "(0,5)"),
        "V4": ("(1,4)", "(0,7)", "(1,5)"),
    },
    "auts": [
        {"images": ("(1,0)", "(1,1)"), "V_from": "V1", "V_to": "V2",
         "W_image": ("(1,0)", "(1,1)", "(1,0)"), "chain": "2"},
        {"images": ("(1,0)", "(1,7)"), "V_from": "V1", "V_to": "V3",
         "W_image": ("(1,0)", "(1,7)", "(1,0)"), "chain": "2,4"},
        {"images": ("(1,0)", "(0,7)"), "V_from": "V1", "V_to": "V4",
         "W_image": ("(1,0)", "(0,7)", "(1,0)"), "chain": "4"},
    ],
}

# nonabelian constructions: group spec, m, n, g_C, g_F, V, (ell; h1, h2).
# D_n words: r = rotation, s = reflection, with r s = s r^(n-1).
NONABELIAN_EXAMPLES = [
    {"tag": "S3", "group": "S3", "m": (2, 2, 2, 2, 2, 2), "n": (3,), "g_C": 3, "g_F": 4,
     "V": ("(1 2)", "(1 2)", "(1 3)", "(1 3)", "(2 3)", "(2 3)"),
     "ell": ("(1 3 2)",), "hyp": ("(1 2)", "(1 2 3)")},
    {"tag": "D4", "group": "D4", "m": (2, 2, 2, 2, 2, 2), "n": (2,), "g_C": 3, "g_F": 5,
     "V": ("s", "s", "s", "s", "r s", "r s"),
     "ell": ("r^2",), "hyp": ("s", "r")},
    {"tag": "D6", "group": "D6", "m": (2, 2, 2, 6), "n": (2, 2), "g_C": 7, "g_F": 3,
     "V": ("r^3", "r s", "r^5 s", "r"),
     "ell": ("s", "s"), "hyp": ("r", "r")},
    {"tag": "A4", "group": "A4", "m": (3, 3, 3, 3), "n": (2,), "g_C": 4, "g_F": 5,
     "V": ("(2 3 4)", "(1 2 3)", "(1 2 4)", "(1 3 4)"),
     "ell": ("(1 2)(3 4)",), "hyp": ("(1 2 3)", "(1 2 4)")},
    {"tag": "S4", "group": "S4", "m": (2, 2, 2, 4), "n": (3,), "g_C": 9, "g_F": 4,
     "V": ("(2 3)", "(2 4)", "(1 2)", "(1 2 3 4)"),
     "ell": ("(1 3 2)",), "hyp": ("(1 2)", "(1 2 3 4)")},
    {"tag": "A5", "group": "A5", "m": (2, 5, 5), "n": (3,), "g_C": 21, "g_F": 4,
     "V": ("(2 4)(3 5)", "(1 3 4 5 2)", "(1 2 3 4 5)"),
     "ell": ("(2 3 5)",), "hyp": ("(3 4 5)", "(1 5 4 3 2)")},
]

# products quoted alongside the A5 construction: (word over V/W names, result)
A5_PRODUCTS = [(("g3", "g1", "g3"), "(1 5 2)"), (("l1", "h1", "l1"), "(2 4)(3 5)")]

# abelian candidates with r = 4 that solve the genus equation, by label
R4_CANDIDATES = {
    "i": ((2, 2, 3, 3), 12),
    "ii": ((2, 2, 3, 6), 8),
    "iii": ((2, 2, 4, 4), 8),
    "iv": ((2, 2, 4, 12), 6),
    "v": ((2, 2, 6, 6), 6),
}
