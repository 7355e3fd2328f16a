"""A fixed zoo of small groups, plus the JSON group-description loader."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import BadParams, UnknownName
from .field import FiniteField, make_field
from .groups import TABLE_LIMIT, FiniteGroup, closure, direct_product, from_table
from .matrices import MatrixFq, field_for, projective_special_linear_group, unitriangular_group


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise BadParams("cyclic group needs n >= 1")
    ar = np.arange(n)
    return FiniteGroup((ar[:, None] + ar[None, :]) % n, labels=[str(i) for i in range(n)], name=f"Z{n}", check=False)


def abelian(invariants) -> FiniteGroup:
    invariants = [int(d) for d in invariants]
    if not invariants or any(d < 1 for d in invariants):
        raise BadParams("abelian group needs a nonempty list of positive orders")
    G = cyclic(invariants[0])
    for d in invariants[1:]:
        G = direct_product(G, cyclic(d))
    G.name = "Z" + "xZ".join(str(d) for d in invariants)
    return G


def _semidirect_cyclic(m: int, k: int, t: int, name: str) -> FiniteGroup:
    """Z_m x| Z_k with the generator of Z_k acting by a -> a^t; element
    a^i b^j is index i + m*j."""
    if pow(t, k, m) != 1 % m:
        raise BadParams("action exponent has the wrong order")
    n = m * k
    idx = np.arange(n)
    i, j = idx % m, idx // m
    tj = np.array([pow(t, int(x), m) for x in range(k)])
    # (a^i b^j)(a^i' b^j') = a^(i + t^j i') b^(j + j')
    ii = (i[:, None] + tj[j][:, None] * i[None, :]) % m
    jj = (j[:, None] + j[None, :]) % k
    return FiniteGroup(ii + m * jj, name=name, check=False)


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order n (n even, n >= 4)."""
    if n < 4 or n % 2:
        raise BadParams("dihedral group of order n needs even n >= 4")
    return _semidirect_cyclic(n // 2, 2, n // 2 - 1, f"D{n}")


def quaternion() -> FiniteGroup:
    f = make_field(3, 1)
    i = MatrixFq.from_rows(f, [[0, 2], [1, 0]])
    j = MatrixFq.from_rows(f, [[1, 1], [1, 2]])
    return closure([i, j], name="Q8")


def modular16() -> FiniteGroup:
    """<a, b | a^8 = b^2 = 1, b a b = a^5>."""
    return _semidirect_cyclic(8, 2, 5, "M16")


def heisenberg(p: int) -> FiniteGroup:
    G = unitriangular_group(make_field(p, 1), 3)
    G.name = f"Heis({p})"
    return G


def extraspecial(p: int, sign: str) -> FiniteGroup:
    """p^(1+2): type '+' has exponent p (p odd), type '-' exponent p^2.
    For p = 2, '+' is D8 and '-' is Q8."""
    if sign not in ("+", "-"):
        raise BadParams("sign must be '+' or '-'")
    if p == 2:
        G = dihedral(8) if sign == "+" else quaternion()
    elif sign == "+":
        G = heisenberg(p)
    else:
        G = _semidirect_cyclic(p * p, p, 1 + p, "")
    G.name = f"{p}^(1+2){sign}"
    return G


def symmetric(n: int) -> FiniteGroup:
    if n < 1:
        raise BadParams("symmetric group needs n >= 1")
    if n == 1:
        return cyclic(1)
    if n == 2:
        return closure([(1, 0)], name="S2")
    swap = tuple([1, 0] + list(range(2, n)))
    cyc = tuple(list(range(1, n)) + [0])
    return closure([swap, cyc], name=f"S{n}")


def alternating(n: int) -> FiniteGroup:
    if n < 3:
        return cyclic(1)
    gens = []
    for k in range(2, n):
        g = list(range(n))
        g[0], g[1], g[k] = 1, k, 0  # 3-cycle (0 1 k)
        gens.append(tuple(g))
    return closure(gens, name=f"A{n}")


def _params(params: dict, *names, **defaults):
    out = []
    for nm in names:
        if nm in params:
            out.append(params[nm])
        elif nm in defaults:
            out.append(defaults[nm])
        else:
            raise BadParams(f"missing parameter {nm!r}")
    return out


def catalog(name: str, params: dict | None = None, max_order: int = TABLE_LIMIT) -> FiniteGroup:
    """Construct a named group; ``params`` keys depend on the family."""
    params = dict(params or {})
    try:
        if name == "cyclic":
            (n,) = _params(params, "n")
            return cyclic(int(n))
        if name == "abelian":
            (inv,) = _params(params, "invariants")
            return abelian(inv)
        if name == "dihedral":
            (n,) = _params(params, "n")
            return dihedral(int(n))
        if name == "quaternion":
            return quaternion()
        if name == "modular16":
            return modular16()
        if name == "heisenberg":
            (p,) = _params(params, "p")
            return heisenberg(int(p))
        if name == "extraspecial":
            p, sign = _params(params, "p", "sign", sign="+")
            return extraspecial(int(p), str(sign))
        if name == "ut":
            q, n = _params(params, "q", "n")
            return unitriangular_group(field_for(int(q)), int(n), max_order)
        if name == "symmetric":
            (n,) = _params(params, "n")
            return symmetric(int(n))
        if name == "alternating":
            (n,) = _params(params, "n")
            return alternating(int(n))
        if name == "psl":
            n, q = _params(params, "n", "q")
            return projective_special_linear_group(int(n), int(q), max_order)
        if name == "direct":
            (factors,) = _params(params, "factors")
            groups = [catalog(f["name"], f.get("params"), max_order) for f in factors]
            G = groups[0]
            for H in groups[1:]:
                G = direct_product(G, H)
            return G
    except (TypeError, ValueError) as exc:
        if isinstance(exc, BadParams):
            raise
        raise BadParams(str(exc)) from exc
    raise UnknownName(name)


def parse_name(spec: str) -> tuple[str, dict]:
    """Parse CLI shorthand like ``dihedral:n=8`` or ``abelian:invariants=2,4``."""
    name, _, rest = spec.partition(":")
    params: dict = {}
    if rest:
        for item in rest.split(";"):
            k, _, v = item.partition("=")
            if "," in v:
                params[k] = [int(x) for x in v.split(",")]
            else:
                try:
                    params[k] = int(v)
                except ValueError:
                    params[k] = v
    return name, params


# Groups used by the vanishing-law and determinism suites.
ZOO: list[tuple[str, dict]] = [
    ("cyclic", {"n": 2}),
    ("cyclic", {"n": 6}),
    ("cyclic", {"n": 8}),
    ("cyclic", {"n": 12}),
    ("abelian", {"invariants": [2, 2]}),
    ("abelian", {"invariants": [2, 4]}),
    ("abelian", {"invariants": [2, 2, 2]}),
    ("abelian", {"invariants": [3, 3]}),
    ("abelian", {"invariants": [2, 2, 2, 2]}),
    ("abelian", {"invariants": [4, 4]}),
    ("abelian", {"invariants": [3, 9]}),
    ("dihedral", {"n": 6}),
    ("dihedral", {"n": 8}),
    ("dihedral", {"n": 10}),
    ("dihedral", {"n": 12}),
    ("dihedral", {"n": 16}),
    ("quaternion", {}),
    ("modular16", {}),
    ("heisenberg", {"p": 2}),
    ("heisenberg", {"p": 3}),
    ("extraspecial", {"p": 3, "sign": "+"}),
    ("extraspecial", {"p": 3, "sign": "-"}),
    ("ut", {"q": 2, "n": 3}),
    ("symmetric", {"n": 3}),
    ("symmetric", {"n": 4}),
    ("alternating", {"n": 4}),
    ("direct", {"factors": [{"name": "dihedral", "params": {"n": 8}}, {"name": "cyclic", "params": {"n": 2}}]}),
    ("direct", {"factors": [{"name": "quaternion"}, {"name": "cyclic", "params": {"n": 2}}]}),
]


def zoo_name(name: str, params: dict) -> str:
    if not params:
        return name
    if name == "direct":
        return "x".join(zoo_name(f["name"], f.get("params") or {}) for f in params["factors"])
    return name + ":" + ";".join(f"{k}={','.join(map(str, v)) if isinstance(v, list) else v}" for k, v in params.items())


# ---------------------------------------------------------------------------
# JSON group descriptions
# ---------------------------------------------------------------------------

def group_from_json(desc: dict, max_order: int | None = None) -> FiniteGroup:
    limit = int(desc.get("max_order", max_order or TABLE_LIMIT))
    if max_order is not None:
        limit = min(limit, max_order)
    if "table" in desc:
        return from_table(desc["table"], labels=desc.get("labels"))
    if "perm_gens" in desc:
        return closure([tuple(g) for g in desc["perm_gens"]], limit)
    if "matrix_gens" in desc:
        mg = desc["matrix_gens"]
        f = FiniteField.from_json(mg["field"])
        n = int(mg["n"])
        gens = [MatrixFq(f, n, [f.from_coeffs(c) for row in g for c in row]) for g in mg["gens"]]
        projective = bool(desc.get("projective", mg.get("projective", False)))
        return closure(gens, limit, projective=projective)
    if "catalog" in desc:
        c = desc["catalog"]
        return catalog(c["name"], c.get("params"), limit)
    raise BadParams("group description needs table, perm_gens, matrix_gens or catalog")


def load_group(path: str | Path, max_order: int | None = None) -> FiniteGroup:
    desc = json.loads(Path(path).read_text())
    G = group_from_json(desc, max_order)
    if not G.name:
        G.name = Path(path).stem
    return G

