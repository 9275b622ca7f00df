"""Command line front end.

Subcommands
-----------
expand     p q          dual chains, conjugate, edge data, polyline endpoints
components p q          one record per smoothing component (k, matrices, ...)
fan        p q          fan rays for every component
poly       p q          deformation-polynomial chains and factorization
classify   p q1 k1 q2 k2   compare two filling descriptors
sweep      max_sum_a    exhaustive verification over all chains with
                        sum(a_i) <= max_sum_a

Output is a human-readable table by default, one JSON document with
``--json`` (keys sorted, matrices row-major with explicit dimensions), or
tab-separated matrices with ``--tsv``.  Identical invocations produce
byte-identical output.  Exit codes: 0 success, 2 bad input or usage,
3 a verification failed.
"""

import argparse
import json
import sys

from .contfrac import hj_expand, q_conjugate, edge_data, z_value
from .conegeom import sigma_polyline, supplementary_polyline, verify_precdual
from .deformpoly import (
    DEFAULT_DEGREE_CAP,
    deformation_chain,
    verify_factorization,
)
from .errors import DegreeCapError, VerificationError
from .fillings import (
    FillingDescriptor,
    classify,
    diagonal_model,
    gram_from_blocks,
    lisca_fingerprint,
    milnor_numbers,
    recover_k,
)
from .toricfan import build_fan, indeterminacy_count, verify_chart_restrictions
from .zeroseq import (
    IntegerMatrix,
    all_zero_sequences,
    block_matrix,
    catalan,
    cumsum_rows,
    enumerate_K,
    weights_l,
)

_SWEEP_CAP = 20
_CHECK_NAMES = ("catalan", "incidence", "gram", "fingerprint", "fan", "factorization", "pullback")


def _matrix_json(mat):
    return {
        "rows": mat.rows,
        "cols": mat.cols,
        "data": [x for row in mat.entries for x in row],
    }


def _matrix_lines(mat, tsv=False):
    if tsv:
        return ["\t".join(str(x) for x in row) for row in mat.entries]
    widths = [max((len(str(row[j])) for row in mat.entries), default=1) for j in range(mat.cols)]
    return [
        "  [ " + "  ".join(str(x).rjust(w) for x, w in zip(row, widths)) + " ]"
        for row in mat.entries
    ]


def _parse_k(text):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ValueError(f"cannot parse {text!r} as a comma-separated integer sequence")


def _component_record(a, k, perm_eq, degree_cap, with_poly):
    mat = block_matrix(a, k.k)
    cum = cumsum_rows(mat)
    if perm_eq:
        order = mat.column_order()
        mat = mat.permute_columns(order)
        cum = cum.permute_columns(order)
    fingerprint = lisca_fingerprint(diagonal_model(a, k.k))
    numbers = milnor_numbers(a, k.k)
    fan = build_fan(k.k)
    record = {
        "k": list(k.k),
        "l": list(weights_l(a)),
        "n": numbers.n_points,
        "D": _matrix_json(mat),
        "cumD": _matrix_json(cum),
        "fingerprint": list(fingerprint),
        "mu": numbers.mu,
        "fan_rays": [list(u) for u in fan.rays],
        "factorization_ok": None,
    }
    if with_poly:
        chain = deformation_chain(a, k.k, degree_cap=degree_cap)
        record["factorization_ok"] = verify_factorization(a, k.k, chain=chain)
        record["_chain"] = chain
    return record


def _verify_component(a, k, record, chain):
    """Run every per-component identity; returns a list of failure strings."""
    failures = []
    try:
        gram_from_blocks(a, k.k)
    except VerificationError as exc:
        failures.append(f"gram: {exc}")
    expected_fp = tuple(2 * (ai - ki) for ai, ki in zip(a, k.k))
    if tuple(record["fingerprint"]) != expected_fp:
        failures.append(f"fingerprint: got {record['fingerprint']}, expected {expected_fp}")
    if recover_k(a, record["fingerprint"]).k != k.k:
        failures.append("fingerprint: recovery does not round-trip")
    cum = cumsum_rows(block_matrix(a, k.k))
    if any(x not in (0, 1) for row in cum.entries for x in row):
        failures.append("incidence: entries not all 0/1")
    if cum.row_sums() != weights_l(a):
        failures.append("incidence: row sums differ from the decorations l")
    if cum.cols != record["n"]:
        failures.append("incidence: column count differs from n")
    if record["factorization_ok"] is not True:
        failures.append("factorization: identity failed")
    for j in range(1, len(a) + 1):
        if indeterminacy_count(a, k.k, j, chain=chain) != a[j - 1] - k.k[j - 1]:
            failures.append(f"fan: indeterminacy count in chart {j}")
    return failures


def _cmd_expand(args):
    p, q = args.p, args.q
    b = hj_expand(p, q)
    a = hj_expand(p, p - q)
    qp = q_conjugate(p, q)
    ed = edge_data(a)
    sig = sigma_polyline(p, q)
    sup = supplementary_polyline(p, q)
    doc = {
        "p": p,
        "q": q,
        "b": list(b),
        "a": list(a),
        "q_prime": qp,
        "edge_m": list(ed.m),
        "edge_n": list(ed.n),
        "t": ed.t_count,
        "sigma_points": [list(v) for v in sig.points],
        "supplementary_points": [list(v) for v in sup.points],
    }
    if args.json:
        print(json.dumps(doc, sort_keys=True, indent=2))
        return 0
    print(f"p/q      = {p}/{q} = {list(b)}")
    print(f"p/(p-q)  = {p}/{p - q} = {list(a)}")
    print(f"q'       = {qp}")
    print(f"edges    m={list(ed.m)}  n={list(ed.n)}  t={ed.t_count}")
    print(f"sigma polyline        {sig.points[0]} .. {sig.points[-1]} ({len(sig.points)} points)")
    print(f"supplementary polyline {sup.points[0]} .. {sup.points[-1]} ({len(sup.points)} points)")
    return 0


def _cmd_components(args):
    p, q = args.p, args.q
    a = hj_expand(p, p - q)
    b = hj_expand(p, q)
    ks = enumerate_K(a)
    want_poly = args.verify or args.emit_poly or z_value(a) <= args.degree_cap
    if args.verify and z_value(a) > args.degree_cap:
        raise DegreeCapError(
            f"--verify needs the polynomial chain but Z(a) = {z_value(a)} exceeds "
            f"--degree-cap {args.degree_cap}"
        )
    records = []
    failures = []
    for k in ks:
        rec = _component_record(a, k, args.perm_eq, args.degree_cap, want_poly)
        chain = rec.pop("_chain", None)
        if args.verify:
            failures.extend(f"k={k.k}: {msg}" for msg in _verify_component(a, k, rec, chain))
        records.append(rec)
    doc = {
        "input": {"p": p, "q": q, "a": list(a), "b": list(b), "q_prime": q_conjugate(p, q)},
        "components": records,
    }
    if args.json:
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        print(f"p={p} q={q}  b={list(b)}  a={list(a)}  q'={q_conjugate(p, q)}")
        print(f"{len(records)} component(s)")
        for rec in records:
            print()
            print(
                f"k={rec['k']}  l={rec['l']}  n={rec['n']}  mu={rec['mu']}  "
                f"fingerprint={rec['fingerprint']}"
            )
            print(f"fan rays: {rec['fan_rays']}")
            if rec["factorization_ok"] is not None:
                print(f"factorization_ok: {rec['factorization_ok']}")
            if args.emit_matrices:
                print("D:")
                print("\n".join(_matrix_lines_from_json(rec["D"], args.tsv)))
                print("integrated D:")
                print("\n".join(_matrix_lines_from_json(rec["cumD"], args.tsv)))
        if args.verify:
            print()
            print("verify: " + ("all checks passed" if not failures else "FAILURES"))
    if failures:
        for msg in failures:
            print(f"FAIL {msg}", file=sys.stderr)
        return 3
    return 0


def _matrix_lines_from_json(mj, tsv):
    rows, cols, data = mj["rows"], mj["cols"], mj["data"]
    grid = tuple(tuple(data[i * cols : (i + 1) * cols]) for i in range(rows))
    return _matrix_lines(IntegerMatrix(rows, cols, grid), tsv)


def _cmd_fan(args):
    a = hj_expand(args.p, args.p - args.q)
    doc = []
    for k in enumerate_K(a):
        fan = build_fan(k.k)
        doc.append({"k": list(k.k), "rays": [list(u) for u in fan.rays]})
    if args.json:
        print(json.dumps({"a": list(a), "fans": doc}, sort_keys=True, indent=2))
    else:
        print(f"a={list(a)}")
        for entry in doc:
            print(f"k={entry['k']}  rays={entry['rays']}")
    return 0


def _cmd_poly(args):
    a = hj_expand(args.p, args.p - args.q)
    doc = []
    for k in enumerate_K(a):
        chain = deformation_chain(a, k.k, degree_cap=args.degree_cap)
        ok = verify_factorization(a, k.k, chain=chain)
        entry = {
            "k": list(k.k),
            "z1_degrees": [poly.max_degrees()[2] for poly in chain],
            "term_counts": [len(poly) for poly in chain],
            "factorization_ok": ok,
        }
        if args.terms:
            entry["polynomials"] = [str(poly) for poly in chain]
        doc.append(entry)
    if args.json:
        print(json.dumps({"a": list(a), "chains": doc}, sort_keys=True, indent=2))
    else:
        print(f"a={list(a)}")
        for entry in doc:
            print(
                f"k={entry['k']}  z1-degrees={entry['z1_degrees']}  "
                f"terms={entry['term_counts']}  factorization_ok={entry['factorization_ok']}"
            )
            for i, text in enumerate(entry.get("polynomials", [])):
                print(f"  P_{i} = {text}")
    return 0


def _cmd_classify(args):
    d1 = FillingDescriptor(args.p, args.q1, _parse_k(args.k1), args.order1)
    d2 = FillingDescriptor(args.p, args.q2, _parse_k(args.k2), args.order2)
    same = classify(d1, d2, respect_order=args.respect_order)
    if args.json:
        print(json.dumps({"equivalent": same, "respect_order": args.respect_order}, sort_keys=True))
    else:
        mode = "with order" if args.respect_order else "ignoring order"
        print(f"equivalent ({mode}): {'yes' if same else 'no'}")
    return 0


def _a_chains(max_sum):
    """All chains with entries >= 2 and sum <= max_sum, in canonical order."""
    out = []

    def rec(prefix, budget):
        if prefix:
            out.append(tuple(prefix))
        for v in range(2, budget + 1):
            prefix.append(v)
            rec(prefix, budget - v)
            prefix.pop()

    rec([], max_sum)
    out.sort(key=lambda c: (len(c), c))
    return out


def _cmd_sweep(args):
    if args.max_sum_a > args.cap:
        raise ValueError(f"max_sum_a {args.max_sum_a} exceeds the cap {args.cap} (raise --cap)")
    checks = tuple(args.checks.split(",")) if args.checks else ("incidence", "gram", "fingerprint", "fan")
    for name in checks:
        if name not in _CHECK_NAMES:
            raise ValueError(f"unknown check {name!r}; choose from {', '.join(_CHECK_NAMES)}")
    failures = []
    counts = {name: 0 for name in checks}

    if "catalan" in checks:
        for r in range(1, args.max_sum_a // 2 + 1):
            ks = all_zero_sequences(r)
            counts["catalan"] += 1
            if len(ks) != catalan(r - 1) or len({k.k for k in ks}) != len(ks):
                failures.append(f"catalan: r={r} gives {len(ks)} sequences")

    per_pair = [name for name in checks if name != "catalan"]
    if per_pair:
        for a in _a_chains(args.max_sum_a):
            for k in enumerate_K(a):
                chain = None
                if "factorization" in checks or "pullback" in checks:
                    chain = deformation_chain(a, k.k, degree_cap=args.degree_cap)
                for name in per_pair:
                    counts[name] += 1
                    try:
                        ok = _sweep_one(name, a, k, chain)
                    except (VerificationError, ValueError) as exc:
                        ok = False
                        failures.append(f"{name}: a={a} k={k.k}: {exc}")
                        continue
                    if not ok:
                        failures.append(f"{name}: a={a} k={k.k}")
    for name in checks:
        state = "PASS" if not any(f.startswith(name + ":") for f in failures) else "FAIL"
        print(f"{name}: {counts[name]} checked, {state}")
    if failures:
        for msg in failures:
            print(f"FAIL {msg}", file=sys.stderr)
        return 3
    return 0


def _sweep_one(name, a, k, chain):
    if name == "incidence":
        cum = cumsum_rows(block_matrix(a, k.k))
        n = len(a) - 1 + sum(ai - ki for ai, ki in zip(a, k.k))
        return (
            all(x in (0, 1) for row in cum.entries for x in row)
            and cum.row_sums() == weights_l(a)
            and cum.cols == n
        )
    if name == "gram":
        gram_from_blocks(a, k.k)
        return True
    if name == "fingerprint":
        fp = lisca_fingerprint(diagonal_model(a, k.k))
        return fp == tuple(2 * (ai - ki) for ai, ki in zip(a, k.k)) and recover_k(a, fp).k == k.k
    if name == "fan":
        build_fan(k.k)
        return True
    if name == "factorization":
        return verify_factorization(a, k.k, chain=chain)
    if name == "pullback":
        return all(verify_chart_restrictions(a, k.k, j, chain=chain) for j in range(1, len(a) + 1))
    raise ValueError(name)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="cqsmooth",
        description="Exact smoothing-component combinatorics of cyclic quotient singularities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_pq(sp):
        sp.add_argument("p", type=int)
        sp.add_argument("q", type=int)
        sp.add_argument("--json", action="store_true", help="emit one JSON document")

    sp = sub.add_parser("expand", help="dual chains and cone polylines of p/q")
    add_pq(sp)
    sp.set_defaults(func=_cmd_expand)

    sp = sub.add_parser("components", help="per-component data for p/q")
    add_pq(sp)
    sp.add_argument("--emit-matrices", action="store_true", help="print D and its row sums matrix")
    sp.add_argument("--emit-poly", action="store_true", help="force computing polynomial chains")
    sp.add_argument("--verify", action="store_true", help="run all identities, exit 3 on failure")
    sp.add_argument("--perm-eq", action="store_true",
                    help="emit matrices with columns sorted into a permutation-invariant order")
    sp.add_argument("--tsv", action="store_true", help="matrices as tab-separated values")
    sp.add_argument("--degree-cap", type=int, default=DEFAULT_DEGREE_CAP)
    sp.set_defaults(func=_cmd_components)

    sp = sub.add_parser("fan", help="fan rays for every component of p/q")
    add_pq(sp)
    sp.set_defaults(func=_cmd_fan)

    sp = sub.add_parser("poly", help="deformation-polynomial chains for p/q")
    add_pq(sp)
    sp.add_argument("--degree-cap", type=int, default=DEFAULT_DEGREE_CAP)
    sp.add_argument("--terms", action="store_true", help="print full polynomials")
    sp.set_defaults(func=_cmd_poly)

    sp = sub.add_parser("classify", help="compare two filling descriptors over the same p")
    sp.add_argument("p", type=int)
    sp.add_argument("q1", type=int)
    sp.add_argument("k1", help="comma-separated, e.g. 1,2,2,1")
    sp.add_argument("q2", type=int)
    sp.add_argument("k2")
    sp.add_argument("--order1", choices=("as_given", "conjugated"), default="as_given")
    sp.add_argument("--order2", choices=("as_given", "conjugated"), default="as_given")
    sp.add_argument("--respect-order", action="store_true")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=_cmd_classify)

    sp = sub.add_parser("sweep", help="verify identities over all chains with sum(a) <= N")
    sp.add_argument("max_sum_a", type=int)
    sp.add_argument("--checks", default="",
                    help=f"comma-separated subset of {','.join(_CHECK_NAMES)}")
    sp.add_argument("--cap", type=int, default=_SWEEP_CAP)
    sp.add_argument("--degree-cap", type=int, default=DEFAULT_DEGREE_CAP)
    sp.set_defaults(func=_cmd_sweep)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 3
    except (ValueError, DegreeCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
