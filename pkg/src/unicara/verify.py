"""Independent certificate checking by direct constraint evaluation.

Only parses integers and evaluates sums; never calls solver code, so a bug in
the solvers cannot mask itself here.
"""

from __future__ import annotations

from .errors import UsageError
from .exactmath import parse_int


def instance_kind(data: dict) -> str:
    if not isinstance(data, dict):
        raise UsageError("instance must be a JSON object")
    if "a" in data:
        return "monoid"
    if "b0" in data:
        return "nfold"
    if "supplies" in data:
        return "flow"
    if "w" in data:
        return "table"
    raise UsageError("cannot tell the instance kind (expected a, b0, supplies or w)")


def _ints(v):
    return [parse_int(x) for x in v]


def _mat(v):
    return [_ints(r) for r in v]


def _row_dot(row, x):
    return sum(r * v for r, v in zip(row, x))


def verify_certificate(instance: dict, cert: dict) -> list:
    """Return a list of violation messages; an empty list means the certificate is valid."""
    kind = instance_kind(instance)
    status = cert.get("status")
    if status not in ("member", "feasible"):
        return [f"no certificate to verify (status {status!r})"]
    try:
        return {
            "monoid": _verify_monoid,
            "table": _verify_table,
            "flow": _verify_flow,
            "nfold": _verify_nfold,
        }[kind](instance, cert)
    except (KeyError, TypeError, IndexError) as exc:
        return [f"malformed certificate: {exc!r}"]


def _verify_monoid(inst, cert):
    A, b, a = _mat(inst["A"]), _ints(inst["b"]), _ints(inst["a"])
    L = _mat(inst["L"]) if "L" in inst else None
    out = []
    total = [0] * len(a)
    for k, term in enumerate(cert["terms"]):
        lam = parse_int(term["lambda"])
        x = _ints(term["x"])
        if lam < 1:
            out.append(f"term {k}: multiplicity {lam} is not a positive integer")
        if len(x) != len(a):
            out.append(f"term {k}: support point has dimension {len(x)}, expected {len(a)}")
            continue
        if L is None:
            point = x
        else:
            if "y" not in term:
                out.append(f"term {k}: projected certificate lacks preimage y")
                continue
            point = _ints(term["y"])
            if [_row_dot(row, point) for row in L] != x:
                out.append(f"term {k}: L y does not equal support point")
        for i, (row, bi) in enumerate(zip(A, b)):
            if _row_dot(row, point) > bi:
                out.append(f"support point {k} violates row {i}")
        total = [t + lam * v for t, v in zip(total, x)]
    if total != a:
        out.append("target sum mismatch")
    return out


def _layer_violations(tag, layer, u, v):
    out = []
    l, m = len(v), len(u)
    if len(layer) != l or any(len(r) != m for r in layer):
        return [f"{tag}: wrong layer shape"]
    if any(x < 0 for r in layer for x in r):
        out.append(f"{tag}: negative entry")
    for j in range(m):
        if sum(layer[i][j] for i in range(l)) != u[j]:
            out.append(f"{tag}: column sum {j} mismatch")
    for i in range(l):
        if sum(layer[i]) != v[i]:
            out.append(f"{tag}: row sum {i} mismatch")
    return out


def _verify_table(inst, cert):
    l, m = parse_int(inst["l"]), parse_int(inst["m"])
    w = _mat(inst["w"])
    out = []
    total = [[0] * m for _ in range(l)]
    if len(cert["types"]) != len(inst["types"]):
        return ["number of layer types mismatch"]
    for k, (t, ct) in enumerate(zip(inst["types"], cert["types"])):
        u, v, count = _ints(t["u"]), _ints(t["v"]), parse_int(t["count"])
        s = 0
        for j, term in enumerate(ct["terms"]):
            lam = parse_int(term["lambda"])
            layer = _mat(term["layer"])
            if lam < 1:
                out.append(f"type {k} term {j}: multiplicity {lam} is not a positive integer")
            out += _layer_violations(f"type {k} term {j}", layer, u, v)
            s += lam
            for i in range(min(l, len(layer))):
                for jj in range(min(m, len(layer[i]))):
                    total[i][jj] += lam * layer[i][jj]
        if s != count:
            out.append(f"type {k}: multiplicities sum to {s}, expected {count}")
    if total != w:
        out.append("vertical sums mismatch")
    return out


def _verify_flow(inst, cert):
    l, m = parse_int(inst["l"]), parse_int(inst["m"])
    supplies = _mat(inst["supplies"])
    out = []
    shipped = [[0] * m for _ in range(l)]
    if len(cert["types"]) != len(inst["types"]):
        return ["number of consumer types mismatch"]
    for r, (t, ct) in enumerate(zip(inst["types"], cert["types"])):
        c, caps, count = _ints(t["c"]), _ints(t["cap"]), parse_int(t["count"])
        s = 0
        for j, pat in enumerate(ct["patterns"]):
            lam = parse_int(pat["lambda"])
            flow = _mat(pat["flow"])
            tag = f"type {r} pattern {j}"
            if lam < 1:
                out.append(f"{tag}: multiplicity {lam} is not a positive integer")
            if len(flow) != l or any(len(row) != m for row in flow):
                out.append(f"{tag}: wrong flow shape")
                continue
            if any(x < 0 for row in flow for x in row):
                out.append(f"{tag}: negative flow")
            for k in range(l):
                if sum(flow[k]) != c[k]:
                    out.append(f"{tag}: consumption of commodity {k} mismatch")
            for i in range(m):
                if sum(flow[k][i] for k in range(l)) > caps[i]:
                    out.append(f"{tag}: capacity from supplier {i} exceeded")
            s += lam
            for k in range(l):
                for i in range(m):
                    shipped[k][i] += lam * flow[k][i]
        if s != count:
            out.append(f"type {r}: multiplicities sum to {s}, expected {count}")
    if shipped != supplies:
        out.append("supplies mismatch")
    return out


def _verify_nfold(inst, cert):
    A = _mat(inst["A"])
    b0 = _ints(inst["b0"])
    d = len(b0)
    out = []
    total = [0] * d
    if len(cert["types"]) != len(inst["types"]):
        return ["number of brick types mismatch"]
    for k, (t, ct) in enumerate(zip(inst["types"], cert["types"])):
        b, lo, hi, count = _ints(t["b"]), _ints(t["lo"]), _ints(t["hi"]), parse_int(t["count"])
        s = 0
        for j, term in enumerate(ct["terms"]):
            lam = parse_int(term["lambda"])
            x = _ints(term["x"])
            tag = f"type {k} term {j}"
            if lam < 1:
                out.append(f"{tag}: multiplicity {lam} is not a positive integer")
            if len(x) != d:
                out.append(f"{tag}: brick has dimension {len(x)}, expected {d}")
                continue
            for i, (row, bi) in enumerate(zip(A, b)):
                if _row_dot(row, x) != bi:
                    out.append(f"{tag}: brick violates row {i}")
            if any(not (p <= v <= q) for p, v, q in zip(lo, x, hi)):
                out.append(f"{tag}: brick outside bounds")
            s += lam
            total = [a + lam * v for a, v in zip(total, x)]
        if s != count:
            out.append(f"type {k}: multiplicities sum to {s}, expected {count}")
    if total != b0:
        out.append("bricks do not sum to b0")
    return out
