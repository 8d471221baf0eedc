"""Regenerate fixtures/: input documents, expected CLI outputs and manifest.json.

Each case pins the arguments, the expected exit code and, where the value was
worked out by hand, a ``snippet``: a partial JSON object that the output must
contain.  Snippets are written here, never copied from the program's output,
so a regression cannot silently rewrite them.

    python3 scripts/regen_fixtures.py          # rewrite expected outputs
    python3 scripts/regen_fixtures.py --check  # compare only, exit 1 on drift
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from pathlib import Path

from lctpoly.cli import run

ROOT = Path(__file__).resolve().parent.parent
FIX = ROOT / "fixtures"


def fn(slope, intercept):
    return {"slope": slope, "intercept": intercept}


def row(a, b="0", label=None, kind="exceptional"):
    out = {"a": a, "b": b, "kind": kind}
    if label:
        out["label"] = label
    return out


def crow(alpha, bound_alpha, beta=None, bound_beta="0", label=None):
    out = {"alpha": alpha, "bound_alpha": bound_alpha, "bound_beta": bound_beta}
    out["beta"] = beta if beta is not None else ["0"] * len(alpha)
    if label:
        out["label"] = label
    return out


UNIT_SQUARE = {"dim": 2, "ineqs": [["-1", "0", "0"], ["0", "-1", "0"], ["1", "0", "1"], ["0", "1", "1"]]}
ORTHANT = {"dim": 2, "ineqs": [["-1", "0", "0"], ["0", "-1", "0"]]}
TRIANGLE = {"dim": 2, "ineqs": [["0", "-1", "0"], ["-2", "1", "0"], ["2", "1", "4"]]}
EMPTY = {"dim": 2, "ineqs": [["1", "0", "1"], ["-1", "0", "-2"]]}
MONOMIAL_P = {"dim": 2, "ineqs": [["-1", "0", "0"], ["0", "-1", "0"], ["2", "0", "1"], ["0", "3", "1"], ["2", "3", "2"]]}

SQUARE_DATUM = {"s": 2, "rows": [row(["1", "0"], label="C1", kind="strict"), row(["0", "1"], label="C2", kind="strict"),
                                 row(["1/2", "1/2"], label="E")]}
MONOMIAL_DATUM = {"s": 2, "rows": [row(["2", "0"], label="Cx", kind="strict"), row(["0", "3"], label="Cy", kind="strict"),
                                   row(["1", "3/2"], label="E11")]}
LINE_DATUM = {"s": 1, "rows": [row(["1"], label="C", kind="strict")]}
ZERO_COLUMN_DATUM = {"s": 2, "rows": [row(["1", "0"], label="C1", kind="strict")]}
NEGATIVE_DATUM = {"s": 1, "rows": [row(["-1"], label="bad")]}

TWO_ROW_SEGMENT = {"datum": {"s": 2, "rows": [row(["1", "1"], label="row1"), row(["0", "2"], label="row2")]},
                   "base_coeffs": [fn("1", "0"), fn("0", "0")], "test_column": 2, "interval": ["0", "1"]}
SEVENTH_SEGMENT = {"datum": {"s": 2, "rows": [row(["1", "1"], label="row1"), row(["0", "7/6"], label="row2")]},
                   "base_coeffs": [fn("1", "0"), fn("0", "0")], "test_column": 2, "interval": ["0", "1"]}
SINGLE_ROW_SEGMENT = {"datum": {"s": 2, "rows": [row(["1", "2"], label="only")]},
                      "base_coeffs": [fn("0", "1/2"), fn("0", "0")], "test_column": 2, "interval": ["0", "1"]}
SATURATED_SEGMENT = {"datum": {"s": 2, "rows": [row(["1", "1"], label="row1")]},
                     "base_coeffs": [fn("0", "1"), fn("0", "0")], "test_column": 2, "interval": ["1/2", "1"]}

ASC_0_1 = {"families": [{"kind": "asc", "a": "0", "b": "1"}]}
DESC_1_1 = {"families": [{"kind": "desc", "a": "1", "b": "1"}]}
ASC_1_1 = {"families": [{"kind": "asc", "a": "1", "b": "1"}]}
FINITE_123_DESC_5_1 = {"finite": ["1", "2", "3"], "families": [{"kind": "desc", "a": "5", "b": "1"}]}
FINITE_2_DESC_1_HALF = {"finite": ["2"], "families": [{"kind": "desc", "a": "1", "b": "1/2"}]}
FINITE_HALF_THIRD = {"finite": ["1/2", "1/3"]}
FINITE_ONE = {"finite": ["1"]}
DESC_1_HALF = {"families": [{"kind": "desc", "a": "1", "b": "1/2"}]}

F_ONE = {"interval": ["0", "1"], "fns": [fn("0", "1")]}
F_ONE_HALF = {"interval": ["0", "1"], "fns": [fn("0", "1"), fn("0", "1/2")]}
F_ONE_T = {"interval": ["0", "1"], "fns": [fn("0", "1"), fn("1", "0")]}
DINV_T = {"family": F_ONE_T, "D0": [fn("1", "0")]}
DINV_ONE = {"family": F_ONE, "D0": [fn("0", "1")]}
DINV_EMPTY = {"family": F_ONE, "D0": []}

CORNER_CUT = {"s": 2, "rows": [crow(["-1", "0"], "0", label="x1>=0"), crow(["0", "-1"], "0", label="x2>=0"),
                               crow(["0", "1"], "2", label="x2<=2"), crow(["1", "1"], "3", label="x1+x2<=3"),
                               crow(["1", "0"], "3", label="x1<=3"),
                               crow(["1", "2"], "5", bound_beta="-1", label="cut")]}
CONSTANT_CHAIN = {"s": 2, "rows": [crow(["-1", "0"], "0"), crow(["0", "-1"], "0"), crow(["1", "0"], "1"), crow(["0", "1"], "1")]}
SLIDING_CHAIN = {"s": 2, "rows": [crow(["-1", "0"], "0"), crow(["0", "-1"], "0"), crow(["1", "0"], "1", bound_beta="-1"),
                                  crow(["0", "1"], "1")]}
REVERSED_CHAIN = {"s": 2, "rows": [crow(["-1", "0"], "0"), crow(["0", "-1"], "0"), crow(["1", "0"], "1", bound_beta="1"),
                                   crow(["0", "1"], "1")]}

INPUTS = {
    "unit_square.json": UNIT_SQUARE, "orthant.json": ORTHANT, "triangle.json": TRIANGLE, "empty.json": EMPTY,
    "monomial_polytope.json": MONOMIAL_P, "square_datum.json": SQUARE_DATUM, "monomial_datum.json": MONOMIAL_DATUM,
    "line_datum.json": LINE_DATUM, "zero_column_datum.json": ZERO_COLUMN_DATUM, "negative_datum.json": NEGATIVE_DATUM,
    "segment_two_rows.json": TWO_ROW_SEGMENT, "segment_seventh.json": SEVENTH_SEGMENT,
    "segment_single_row.json": SINGLE_ROW_SEGMENT, "segment_saturated.json": SATURATED_SEGMENT,
    "set_asc_0_1.json": ASC_0_1, "set_desc_1_1.json": DESC_1_1, "set_asc_1_1.json": ASC_1_1,
    "set_finite_123_desc_5_1.json": FINITE_123_DESC_5_1, "set_finite_2_desc_1_half.json": FINITE_2_DESC_1_HALF,
    "set_finite_half_third.json": FINITE_HALF_THIRD, "set_finite_one.json": FINITE_ONE, "set_desc_1_half.json": DESC_1_HALF,
    "family_one.json": F_ONE, "family_one_half.json": F_ONE_HALF, "family_one_t.json": F_ONE_T,
    "dinv_t.json": DINV_T, "dinv_one.json": DINV_ONE, "dinv_empty.json": DINV_EMPTY,
    "chain_corner_cut.json": CORNER_CUT, "chain_constant.json": CONSTANT_CHAIN, "chain_sliding.json": SLIDING_CHAIN,
    "chain_reversed.json": REVERSED_CHAIN,
    "malformed.json": "{not json",
}


def I(name):  # noqa: E743 - short helper for the case table
    return f"fixtures/inputs/{name}"


# (name, args, exit code, hand-derived snippet or None)
CASES = [
    ("polytope_vertices_square", ["polytope", "vertices", "-i", I("unit_square.json")], 0,
     {"vertices": [["0", "0"], ["0", "1"], ["1", "0"], ["1", "1"]], "rays": []}),
    ("polytope_vertices_orthant", ["polytope", "vertices", "-i", I("orthant.json")], 0,
     {"vertices": [["0", "0"]], "rays": [["0", "1"], ["1", "0"]]}),
    ("polytope_vertices_monomial", ["polytope", "vertices", "-i", I("monomial_polytope.json")], 0,
     {"vertices": [["0", "0"], ["0", "1/3"], ["1/2", "0"], ["1/2", "1/3"]]}),
    ("polytope_project_square", ["polytope", "project", "--drop", "2", "-i", I("unit_square.json")], 0,
     {"polytope": {"vertices": [["0"], ["1"]]}}),
    ("polytope_project_triangle", ["polytope", "project", "--drop", "2", "-i", I("triangle.json")], 0,
     {"polytope": {"vertices": [["0"], ["2"]]}}),
    ("polytope_project_monomial", ["polytope", "project", "--drop", "2", "-i", I("monomial_polytope.json")], 0,
     {"polytope": {"vertices": [["0"], ["1/2"]]}}),
    ("polytope_build_square", ["polytope", "build", "-i", I("square_datum.json")], 0,
     {"polytope": {"vertices": [["0", "0"], ["0", "1"], ["1", "0"], ["1", "1"]]}}),
    ("polytope_build_monomial", ["polytope", "build", "-i", I("monomial_datum.json")], 0,
     {"polytope": {"vertices": [["0", "0"], ["0", "1/3"], ["1/2", "0"], ["1/2", "1/3"]]}}),
    ("polytope_build_line", ["polytope", "build", "-i", I("line_datum.json")], 0,
     {"polytope": {"vertices": [["0"], ["1"]]}}),
    ("polytope_build_negative", ["polytope", "build", "-i", I("negative_datum.json")], 3, None),
    ("polytope_facets_square", ["polytope", "facets", "-i", I("unit_square.json")], 0, None),
    ("polytope_facets_monomial", ["polytope", "facets", "-i", I("monomial_datum.json")], 0, None),
    ("polytope_facets_empty", ["polytope", "facets", "-i", I("empty.json")], 3, None),
    ("lct_ray_monomial", ["lct", "ray", "--direction", "1,1", "-i", I("monomial_datum.json")], 0, {"lct": "1/3"}),
    ("lct_ray_square", ["lct", "ray", "--direction", "1,0", "-i", I("square_datum.json")], 0, {"lct": "1"}),
    ("lct_ray_zero_column", ["lct", "ray", "--direction", "0,1", "-i", I("zero_column_datum.json")], 0, {"lct": "inf"}),
    ("lct_segment_two_rows", ["lct", "segment", "-i", I("segment_two_rows.json")], 0,
     {"zeta": {"knots": ["0", "1/2", "1"], "pieces": [fn("0", "1/2"), fn("-1", "1")]},
      "places": [{"interval": ["0", "1/2"], "rows": ["row2"]}, {"interval": ["1/2", "1"], "rows": ["row1"]}]}),
    ("lct_segment_single_row", ["lct", "segment", "-i", I("segment_single_row.json")], 0,
     {"zeta": {"knots": ["0", "1"], "pieces": [fn("0", "1/4")]}}),
    ("lct_segment_saturated", ["lct", "segment", "-i", I("segment_saturated.json")], 0,
     {"zeta": {"knots": ["1/2", "1"], "pieces": [fn("0", "0")]}}),
    ("lct_local_two_rows", ["lct", "local", "--lambda0", "1", "-i", I("segment_two_rows.json")], 0,
     {"t": fn("0", "1/2"), "c": "1/2"}),
    ("lct_local_seventh", ["lct", "local", "--lambda0", "1", "-i", I("segment_seventh.json")], 0,
     {"t": fn("0", "6/7"), "c": "1/7"}),
    ("lct_local_single_row", ["lct", "local", "--lambda0", "1", "-i", I("segment_single_row.json")], 0,
     {"t": fn("0", "1/4"), "c": "1"}),
    ("sets_dcc_asc_0_1", ["sets", "dcc", "-i", I("set_asc_0_1.json")], 0, {"dcc": False, "witness": ["1", "1/2", "1/3"]}),
    ("sets_dcc_desc_1_1", ["sets", "dcc", "-i", I("set_desc_1_1.json")], 0, {"dcc": True}),
    ("sets_dcc_finite_desc", ["sets", "dcc", "-i", I("set_finite_123_desc_5_1.json")], 0, {"dcc": True}),
    ("sets_acc_asc_1_1", ["sets", "acc", "-i", I("set_asc_1_1.json")], 0, {"acc": True}),
    ("sets_acc_desc_1_1", ["sets", "acc", "-i", I("set_desc_1_1.json")], 0, {"acc": False, "witness": ["0", "1/2", "2/3"]}),
    ("sets_acc_finite", ["sets", "acc", "-i", I("set_finite_half_third.json")], 0, {"acc": True}),
    ("sets_min_desc_1_1", ["sets", "min", "-i", I("set_desc_1_1.json")], 0, {"min": "0"}),
    ("sets_min_finite", ["sets", "min", "-i", I("set_finite_half_third.json")], 0, {"min": "1/3"}),
    ("sets_min_mixed", ["sets", "min", "-i", I("set_finite_2_desc_1_half.json")], 0, {"min": "1/2"}),
    ("sets_min_asc", ["sets", "min", "-i", I("set_asc_0_1.json")], 3, None),
    ("sets_sum_one", ["sets", "sum", "--bound", "3", "--terms", "3", "-i", I("set_finite_one.json")], 0,
     {"sums": ["1", "2", "3"], "complete": True}),
    ("sets_sum_half_third", ["sets", "sum", "--bound", "1", "--terms", "3", "-i", I("set_finite_half_third.json")], 0,
     {"sums": ["1/3", "1/2", "2/3", "5/6", "1"], "complete": True}),
    ("sets_sum_desc_family", ["sets", "sum", "--bound", "1", "--terms", "2", "--m-cap", "8", "-i", I("set_desc_1_half.json")], 0,
     {"complete": False}),
    ("sets_derived_one", ["sets", "derived", "--m-cap", "4", "-i", I("family_one.json")], 0,
     {"complete": False, "members": [{"w": fn("0", v)} for v in ("0", "1/2", "2/3", "3/4", "1")]}),
    ("sets_derived_one_t", ["sets", "derived", "--c", "1/2", "--m-cap", "2", "-i", I("family_one_t.json")], 0, {"complete": False}),
    ("sets_derived_grid", ["sets", "derived", "--grid", "1,1/2,1/3,1/4,1/5,1/6", "--m-cap", "4", "-i", I("family_one_t.json")],
     0, {"complete": False}),
    ("sets_dinv_t", ["sets", "dinv", "-i", I("dinv_t.json")], 0,
     {"members": [{"f": fn("1", "0"), "m": 1, "n": 1, "rest": []}]}),
    ("sets_dinv_one", ["sets", "dinv", "-i", I("dinv_one.json")], 0, {"members": [{"f": fn("0", "1"), "m": 1, "n": 1}]}),
    ("sets_dinv_empty", ["sets", "dinv", "-i", I("dinv_empty.json")], 0, {"members": []}),
    ("sets_decompose_k2", ["sets", "decompose", "--K", "2", "-i", I("family_one.json")], 0, None),
    ("sets_decompose_k1", ["sets", "decompose", "--K", "1", "-i", I("family_one.json")], 0, None),
    ("sets_decompose_small", ["sets", "decompose", "--K", "1/3", "-i", I("family_one.json")], 0, {"decompositions": []}),
    ("sets_idem_one", ["sets", "idem", "-i", I("family_one.json")], 0, {"passed": True, "violations": []}),
    ("sets_idem_one_half", ["sets", "idem", "-i", I("family_one_half.json")], 0, {"passed": True, "violations": []}),
    ("sets_idem_one_t", ["sets", "idem", "-i", I("family_one_t.json")], 0, {"passed": True, "violations": []}),
    ("toric_monomial", ["toric", "--exponents", "2,0;0,3", "--bound", "10"], 0, None),
    ("toric_xy", ["toric", "--exponents", "1,1", "--bound", "10"], 0,
     {"s": 1, "rows": [{"a": ["1"], "b": "0"}]}),
    ("toric_xyz", ["toric", "--exponents", "1,1,1", "--bound", "10"], 0, {"s": 1, "rows": [{"a": ["1"], "b": "0"}]}),
    ("toric_xy_stability", ["toric", "--exponents", "1,1", "--bound", "4", "--stability"], 0, {"stable_from": 1}),
    ("chain_analyze_corner", ["chain", "analyze", "-i", I("chain_corner_cut.json")], 0,
     {"increasing": True, "strict": True, "hausdorff_sq_to_limit": {"5": "1/125"}}),
    ("chain_analyze_constant", ["chain", "analyze", "-i", I("chain_constant.json")], 0, {"increasing": True, "strict": False}),
    ("chain_analyze_reversed", ["chain", "analyze", "-i", I("chain_reversed.json")], 0, {"increasing": False, "first_violation": 1}),
    ("chain_stabilize_x1_1", ["chain", "stabilize", "--base", "1,0", "--direction", "0,1", "-i", I("chain_corner_cut.json")], 0,
     {"verdict": "never", "exit_value": "2 - 1/(2m)"}),
    ("chain_stabilize_x1_half", ["chain", "stabilize", "--base", "1/2,0", "--direction", "0,1", "-i", I("chain_corner_cut.json")],
     0, {"verdict": "stabilizes", "m0": 2, "value": "2"}),
    ("chain_stabilize_ray_1_2", ["chain", "stabilize", "--base", "0,0", "--direction", "1,2", "-i", I("chain_corner_cut.json")],
     0, {"verdict": "never", "exit_value": "1 - 1/(5m)"}),
    ("chain_unstable_corner", ["chain", "unstable", "-i", I("chain_corner_cut.json")], 0,
     {"unstable_points": [{"point": ["1", "2"]}]}),
    ("chain_unstable_constant", ["chain", "unstable", "-i", I("chain_constant.json")], 0, {"unstable_points": []}),
    ("chain_union_corner", ["chain", "union-check", "--seed", "7", "-i", I("chain_corner_cut.json")], 0,
     {"hypothesis_holds": False, "witness_ray": ["1", "2"]}),
    ("chain_union_constant", ["chain", "union-check", "--seed", "7", "-i", I("chain_constant.json")], 0,
     {"hypothesis_holds": True}),
    ("chain_union_sliding", ["chain", "union-check", "--seed", "7", "-i", I("chain_sliding.json")], 0,
     {"hypothesis_holds": False, "witness_ray": ["1", "0"]}),
    ("chain_union_no_seed", ["chain", "union-check", "-i", I("chain_corner_cut.json")], 2, None),
    ("verify_cone_lemma", ["verify", "cone-lemma", "--trials", "20", "--seed", "1"], 0, {"failures": [], "verified": 20}),
    ("verify_facet_cone", ["verify", "facet-cone", "--trials", "40", "--seed", "1"], 0, {"counterexamples": []}),
    ("verify_no_seed", ["verify", "facet-cone", "--trials", "5"], 2, None),
    ("plot_square", ["plot", "-i", I("unit_square.json")], 0, None),
    ("plot_corner_cut", ["plot", "--m", "1,2,5,inf", "-i", I("chain_corner_cut.json")], 0, None),
    ("plot_empty", ["plot", "-i", I("empty.json")], 3, None),
    ("plot_datum", ["plot", "-i", I("monomial_datum.json"), "--title", "planar datum"], 0, None),
    ("malformed_json", ["sets", "dcc", "-i", I("malformed.json")], 2, None),
    ("unknown_command", ["frobnicate"], 2, None),
]


def run_case(args: list[str]) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    code = run(args, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def expected_name(name: str, args: list[str]) -> str:
    return f"expected/{name}.{'svg' if args[0] == 'plot' else 'json'}"


def write_inputs() -> None:
    (FIX / "inputs").mkdir(parents=True, exist_ok=True)
    for fname, doc in INPUTS.items():
        text = doc if isinstance(doc, str) else json.dumps(doc, indent=2, sort_keys=True) + "\n"
        (FIX / "inputs" / fname).write_text(text)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true", help="compare against the stored outputs instead of writing")
    opts = ap.parse_args()
    import os

    os.chdir(ROOT)
    if not opts.check:
        write_inputs()
        (FIX / "expected").mkdir(parents=True, exist_ok=True)
    manifest, drift = [], 0
    for name, args, code_expected, snippet in CASES:
        code, out, _ = run_case(args)
        exp = expected_name(name, args)
        if code != code_expected:
            print(f"{name}: exit {code}, expected {code_expected}")
            drift += 1
        if opts.check:
            if (FIX / exp).read_text() != out:
                print(f"{name}: output differs from {exp}")
                drift += 1
        else:
            (FIX / exp).write_text(out)
        entry = {"name": name, "args": args, "expected": exp, "exit": code_expected}
        if snippet is not None:
            entry["snippet"] = snippet
        manifest.append(entry)
    if not opts.check:
        (FIX / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    print(f"{len(CASES)} fixtures, {drift} problems")
    return 1 if drift else 0


if __name__ == "__main__":
    sys.exit(main())
