"""Group constructors, the group-spec DSL, and Cayley-table file I/O.

Spec grammar (whitespace-insensitive, "x" is the direct product,
left-associative):

    Spec := Atom | Spec "x" Spec
    Atom := NAME "(" args ")" | "file:" PATH

with atoms Cyc(n), Dih(n), Dic(n), Sym(n), Alt(n), Heis(p), ExSp(p,m,e),
GL2(q), SL2(q), SemiDirect(kernel, complementOrder, actionSeed),
Product(a, b) and TableFile(path).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from itertools import permutations, product
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .errors import InvalidParameter, InvalidTable, OrderCapExceeded, ParseError
from .groups import (
    DEFAULT_ORDER_CAP,
    FiniteGroup,
    Subgroup,
    direct_product,
    is_prime,
    quotient,
    subgroup_generated,
    validate_group,
)

__all__ = [
    "GroupSpec",
    "parse_spec",
    "render_spec",
    "spec_order",
    "build_from_spec",
    "build_group",
    "cyclic",
    "dihedral",
    "dicyclic",
    "symmetric",
    "alternating",
    "heisenberg",
    "modular_p3",
    "extraspecial",
    "general_linear_2",
    "special_linear_2",
    "semidirect_cyclic_action",
    "load_cayley_file",
    "write_cayley_file",
]


# ---------------------------------------------------------------------------
# spec AST


@dataclass(frozen=True)
class Atom:
    name: str
    args: tuple


@dataclass(frozen=True)
class ProductSpec:
    left: "GroupSpec"
    right: "GroupSpec"


@dataclass(frozen=True)
class FileSpec:
    path: str


GroupSpec = Union[Atom, ProductSpec, FileSpec]

# name -> argument kinds ("int", "sign", "spec")
_ATOM_SIGNATURES = {
    "Cyc": ("int",),
    "Dih": ("int",),
    "Dic": ("int",),
    "Sym": ("int",),
    "Alt": ("int",),
    "Heis": ("int",),
    "ExSp": ("int", "int", "sign"),
    "GL2": ("int",),
    "SL2": ("int",),
    "SemiDirect": ("spec", "int", "int"),
    "Product": ("spec", "spec"),
    "TableFile": ("path",),
}

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<file>file:[^\s,()]+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<int>\d+)|(?P<punct>[(),+\-]))"
)


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ParseError(f"unexpected character at position {pos}: {text[pos:]!r}")
            break
        pos = m.end()
        for kind in ("file", "name", "int", "punct"):
            val = m.group(kind)
            if val is not None:
                tokens.append((kind, val))
                break
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> Optional[tuple[str, str]]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> tuple[str, str]:
        tok = self.peek()
        if tok is None:
            raise ParseError(f"unexpected end of spec: {self.text!r}")
        self.pos += 1
        return tok

    def expect(self, value: str) -> None:
        tok = self.take()
        if tok[1] != value:
            raise ParseError(f"expected {value!r}, got {tok[1]!r} in {self.text!r}")

    def parse(self) -> GroupSpec:
        spec = self.parse_spec()
        if self.peek() is not None:
            raise ParseError(f"trailing input after spec: {self.text!r}")
        return spec

    def parse_spec(self) -> GroupSpec:
        node = self.parse_atom()
        while True:
            tok = self.peek()
            if tok is not None and tok == ("name", "x"):
                self.take()
                node = ProductSpec(node, self.parse_atom())
            else:
                return node

    def parse_atom(self) -> GroupSpec:
        kind, val = self.take()
        if kind == "file":
            return FileSpec(val[len("file:"):])
        if kind != "name" or val == "x":
            raise ParseError(f"expected a constructor name, got {val!r}")
        sig = _ATOM_SIGNATURES.get(val)
        if sig is None:
            raise ParseError(f"unknown constructor {val!r}")
        self.expect("(")
        if val == "TableFile":
            return self._parse_tablefile()
        args = []
        for i, kind_wanted in enumerate(sig):
            if i:
                self.expect(",")
            args.append(self._parse_arg(kind_wanted))
        self.expect(")")
        if val == "Product":
            return ProductSpec(args[0], args[1])
        return Atom(val, tuple(args))

    def _parse_tablefile(self) -> FileSpec:
        # path runs to the closing parenthesis
        parts = []
        while True:
            tok = self.take()
            if tok == ("punct", ")"):
                break
            parts.append(tok[1])
        if not parts:
            raise ParseError("TableFile() needs a path")
        return FileSpec("".join(parts))

    def _parse_arg(self, kind: str):
        if kind == "int":
            tok = self.take()
            if tok[0] != "int":
                raise ParseError(f"expected an integer, got {tok[1]!r}")
            return int(tok[1])
        if kind == "sign":
            tok = self.take()
            if tok[1] not in ("+", "-"):
                raise ParseError(f"expected '+' or '-', got {tok[1]!r}")
            return tok[1]
        if kind == "spec":
            return self.parse_spec()
        raise AssertionError(kind)


def parse_spec(text: str) -> GroupSpec:
    """Parse a group-spec string into its AST."""
    return _Parser(text).parse()


def render_spec(spec: GroupSpec) -> str:
    """Canonical string form; parse(render(s)) reproduces s."""
    if isinstance(spec, FileSpec):
        return f"file:{spec.path}"
    if isinstance(spec, ProductSpec):
        return f"{render_spec(spec.left)} x {render_spec(spec.right)}"
    args = ", ".join(
        render_spec(a) if isinstance(a, (Atom, ProductSpec, FileSpec)) else str(a)
        for a in spec.args
    )
    return f"{spec.name}({args})"


# ---------------------------------------------------------------------------
# concrete constructors


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise InvalidParameter(f"Cyc(n) needs n >= 1, got {n}")
    idx = np.arange(n, dtype=np.int64)
    return FiniteGroup((idx[:, None] + idx[None, :]) % n, f"Cyc({n})")


def dihedral(n: int) -> FiniteGroup:
    """Order 2n; index a*n + i encodes s^a r^i with s r s = r^-1."""
    if n < 1:
        raise InvalidParameter(f"Dih(n) needs n >= 1, got {n}")
    table = np.empty((2 * n, 2 * n), dtype=np.int64)
    i = np.arange(n)
    for a in (0, 1):
        for b in (0, 1):
            rot = (i[:, None] if b == 0 else -i[:, None]) + i[None, :]
            table[a * n : a * n + n, b * n : b * n + n] = ((a ^ b) * n) + (rot % n)
    return FiniteGroup(table, f"Dih({n})")


def dicyclic(n: int) -> FiniteGroup:
    """Order 4n; index e*2n + i encodes b^e a^i with a^2n = 1, b^2 = a^n,
    b a b^-1 = a^-1.  Dic(2) is the quaternion group."""
    if n < 1:
        raise InvalidParameter(f"Dic(n) needs n >= 1, got {n}")
    m = 2 * n
    table = np.empty((2 * m, 2 * m), dtype=np.int64)
    i = np.arange(m)
    # (b^e a^i)(b^f a^j): move a^i past b^f, then fold b^(e+f)
    for e in (0, 1):
        for f in (0, 1):
            ii = i[:, None] if f == 0 else -i[:, None]
            rot = ii + i[None, :]
            if e and f:  # b^2 = a^n
                table[e * m : e * m + m, f * m : f * m + m] = (rot + n) % m
            else:
                table[e * m : e * m + m, f * m : f * m + m] = ((e ^ f) * m) + (rot % m)
    return FiniteGroup(table, f"Dic({n})")


def _perm_group(perms: list[tuple[int, ...]], name: str) -> FiniteGroup:
    index = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    table = np.empty((n, n), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            table[i, j] = index[tuple(p[q[k]] for k in range(len(p)))]
    return FiniteGroup(table, name)


def symmetric(n: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    if n < 1:
        raise InvalidParameter(f"Sym(n) needs n >= 1, got {n}")
    if math.factorial(n) > cap:
        raise OrderCapExceeded(f"Sym({n}) has order {math.factorial(n)} > cap {cap}")
    return _perm_group(list(permutations(range(n))), f"Sym({n})")


def _perm_sign(p: tuple[int, ...]) -> int:
    sign = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = p[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def alternating(n: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    if n < 1:
        raise InvalidParameter(f"Alt(n) needs n >= 1, got {n}")
    order = max(1, math.factorial(n) // 2)
    if order > cap:
        raise OrderCapExceeded(f"Alt({n}) has order {order} > cap {cap}")
    evens = [p for p in permutations(range(n)) if _perm_sign(p) == 1]
    return _perm_group(evens, f"Alt({n})")


def heisenberg(p: int) -> FiniteGroup:
    """Unitriangular 3x3 matrices over F_p; order p^3, center of order p."""
    if not is_prime(p):
        raise InvalidParameter(f"Heis(p) needs a prime, got {p}")
    a, b, c = np.meshgrid(np.arange(p), np.arange(p), np.arange(p), indexing="ij")
    a, b, c = a.ravel(), b.ravel(), c.ravel()
    n = p**3
    aa = a[:, None] + a[None, :]
    bb = b[:, None] + b[None, :]
    cc = c[:, None] + c[None, :] + a[:, None] * b[None, :]
    table = ((aa % p) * p + (bb % p)) * p + (cc % p)
    return FiniteGroup(table, f"Heis({p})")


def modular_p3(p: int) -> FiniteGroup:
    """The exponent-p^2 extraspecial group of order p^3 (odd p):
    <a, b | a^(p^2) = b^p = 1, b a b^-1 = a^(1+p)>.  Index encodes a^i b^j."""
    if not is_prime(p) or p == 2:
        raise InvalidParameter(f"modular_p3 needs an odd prime, got {p}")
    p2 = p * p
    i = np.arange(p2)
    j = np.arange(p)
    twist = np.array([pow(1 + p, int(e), p2) for e in range(p)])
    # (a^i b^j)(a^k b^l) = a^(i + k*(1+p)^j) b^(j+l)
    ii = i[:, None, None, None]
    jj = j[None, :, None, None]
    kk = i[None, None, :, None]
    ll = j[None, None, None, :]
    new_i = (ii + kk * twist[jj]) % p2
    new_j = (jj + ll) % p
    table = (new_i * p + new_j).reshape(p2 * p, p2 * p)
    return FiniteGroup(table, f"M{p}^3")


def _central_product(g1: FiniteGroup, g2: FiniteGroup, p: int, name: str) -> FiniteGroup:
    """Quotient of g1 x g2 identifying the order-p centers."""
    z1 = next(
        x for x in g1.center().elements if x != 0 and g1.element_order(x) == p
    )
    z2 = next(
        x for x in g2.center().elements if x != 0 and g2.element_order(x) == p
    )
    prod = direct_product(g1, g2, cap=g1.order * g2.order)
    diag = z1 * g2.order + g2.inverse(z2)
    kernel = subgroup_generated(prod, [diag])
    return quotient(prod, kernel, name=name).group


def extraspecial(p: int, m: int, sign: str, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Extraspecial group of order p^(1+2m) as an iterated central product.

    For odd p, "+" selects exponent p (central products of Heis(p)) and "-"
    exponent p^2 (one factor replaced by the modular group of order p^3).
    For p = 2, "+" is the central product of m copies of Dih(4) and "-" swaps
    the last factor for Dic(2).
    """
    if not is_prime(p):
        raise InvalidParameter(f"ExSp(p, m, e) needs a prime, got p={p}")
    if m < 1:
        raise InvalidParameter(f"ExSp(p, m, e) needs m >= 1, got m={m}")
    if sign not in ("+", "-"):
        raise InvalidParameter(f"ExSp sign must be '+' or '-', got {sign!r}")
    order = p ** (1 + 2 * m)
    if order > cap:
        raise OrderCapExceeded(f"ExSp({p},{m},{sign}) has order {order} > cap {cap}")
    if p == 2:
        plus, minus = dihedral(4), dicyclic(2)
    else:
        plus, minus = heisenberg(p), modular_p3(p)
    name = f"ExSp({p}, {m}, {sign})"
    factors = [plus] * (m - 1) + [plus if sign == "+" else minus]
    g = factors[0]
    for f in factors[1:]:
        g = _central_product(g, f, p, name)
    if g.order != order:
        raise InvalidTable(f"central product built order {g.order}, wanted {order}")
    return FiniteGroup(g.table, name)


def _matrix_group_2x2(q: int, det_one: bool, name: str, cap: int) -> FiniteGroup:
    if not is_prime(q):
        raise InvalidParameter(f"{name} needs a prime field order, got {q}")
    mats = []
    for a, b, c, d in product(range(q), repeat=4):
        det = (a * d - b * c) % q
        if det == 0 or (det_one and det != 1):
            continue
        mats.append((a, b, c, d))
    ident = (1, 0, 0, 1)
    mats.remove(ident)
    mats = [ident] + mats
    if len(mats) > cap:
        raise OrderCapExceeded(f"{name}({q}) has order {len(mats)} > cap {cap}")
    index = {m: i for i, m in enumerate(mats)}
    n = len(mats)
    table = np.empty((n, n), dtype=np.int64)
    for i, (a, b, c, d) in enumerate(mats):
        for j, (e, f, g, h) in enumerate(mats):
            table[i, j] = index[
                ((a * e + b * g) % q, (a * f + b * h) % q,
                 (c * e + d * g) % q, (c * f + d * h) % q)
            ]
    return FiniteGroup(table, f"{name}({q})")


def general_linear_2(q: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    return _matrix_group_2x2(q, det_one=False, name="GL2", cap=cap)


def special_linear_2(q: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    return _matrix_group_2x2(q, det_one=True, name="SL2", cap=cap)


# ---------------------------------------------------------------------------
# semidirect products


def _permutation_order(perm: np.ndarray) -> int:
    seen = np.zeros(len(perm), dtype=bool)
    order = 1
    for start in range(len(perm)):
        if not seen[start]:
            length, j = 0, start
            while not seen[j]:
                seen[j] = True
                j = int(perm[j])
                length += 1
            order = order * length // math.gcd(order, length)
    return order


def _is_fixed_point_free(perm: np.ndarray, order: int) -> bool:
    cur = perm.copy()
    for _ in range(order - 1):
        if (cur == np.arange(len(perm))).sum() != 1:  # only the identity fixed
            return False
        cur = perm[cur]
    return True


def _automorphisms_of_order(kernel: FiniteGroup, d: int, search_cap: int = 200_000):
    """Yield (perm, fixed_point_free) for automorphisms of order exactly d,
    enumerating candidate generator images in lexicographic order."""
    from .groups import _extend_map, _greedy_generators, conjugacy_classes

    gens = _greedy_generators(kernel)
    if not gens:  # trivial kernel
        if d == 1:
            yield np.arange(1), True
        return
    orders = kernel.element_orders
    cand_lists = [
        [y for y in range(kernel.order) if orders[y] == orders[g]] for g in gens
    ]
    total = 1
    for lst in cand_lists:
        total *= len(lst)
    if total > search_cap:
        raise InvalidParameter(
            f"automorphism search space {total} too large for kernel {kernel.name}"
        )
    n = kernel.order
    arange = np.arange(n)
    for images in product(*cand_lists):
        mapping = _extend_map(kernel, kernel, gens, list(images))
        if mapping is None or (mapping < 0).any():
            continue
        if not (mapping[kernel.table] == kernel.table[np.ix_(mapping, mapping)]).all():
            continue
        if _permutation_order(mapping) != d:
            continue
        yield mapping, _is_fixed_point_free(mapping, d)


def semidirect_cyclic_action(
    kernel: FiniteGroup,
    complement_order: int,
    action_seed: int = 0,
    cap: int = DEFAULT_ORDER_CAP,
    name: Optional[str] = None,
) -> FiniteGroup:
    """Kernel extended by a cyclic group acting through an automorphism.

    The action is the first automorphism of order complement_order found by a
    deterministic search over generator images in lexicographic order,
    preferring automorphisms whose nontrivial powers are fixed-point-free (a
    Frobenius action) when one exists; action_seed rotates the start of that
    list so alternative actions stay reproducible.
    """
    d = complement_order
    if d < 1:
        raise InvalidParameter(f"complement order must be >= 1, got {d}")
    total = kernel.order * d
    if total > cap:
        raise OrderCapExceeded(f"semidirect product order {total} exceeds cap {cap}")
    if d == 1:
        return FiniteGroup(kernel.table, name or kernel.name)
    fpf, others = [], []
    for perm, is_fpf in _automorphisms_of_order(kernel, d):
        (fpf if is_fpf else others).append(perm)
    pool = fpf if fpf else others
    if not pool:
        raise InvalidParameter(
            f"kernel {kernel.name} has no automorphism of order {d}"
        )
    phi = pool[action_seed % len(pool)]

    nk = kernel.order
    powers = [np.arange(nk)]
    for _ in range(d - 1):
        powers.append(phi[powers[-1]])
    pw = np.stack(powers)  # pw[c] = phi^c as an index map
    k_idx = np.arange(nk)
    c_idx = np.arange(d)
    # (k1, c1)(k2, c2) = (k1 * phi^c1(k2), c1 + c2); index = k*d + c
    k1 = k_idx[:, None, None, None]
    c1 = c_idx[None, :, None, None]
    k2 = k_idx[None, None, :, None]
    c2 = c_idx[None, None, None, :]
    acted = pw[c1, k2]  # shape (1, d, nk, 1)
    new_k = kernel.table[k1, acted]  # broadcasts to (nk, d, nk, 1)
    new_c = (c1 + c2) % d  # shape (1, d, 1, d)
    table = (new_k.astype(np.int64) * d + new_c).reshape(total, total)
    return FiniteGroup(table, name or f"SemiDirect({kernel.name}, {d}, 0)")


# ---------------------------------------------------------------------------
# Cayley-table files


def load_cayley_file(path: str, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Read the Cayley-table format: line 1 is n, then n rows of n indices.

    '#' starts a comment line; element 0 must be the identity.  The table is
    fully validated since file input is untrusted.
    """
    lines = []
    try:
        raw = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read table file {path}: {exc}") from exc
    for line in raw.splitlines():
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            lines.append(stripped)
    if not lines:
        raise ParseError(f"table file {path} is empty")
    try:
        n = int(lines[0])
    except ValueError as exc:
        raise ParseError(f"first line of {path} must be the order") from exc
    if n < 1:
        raise ParseError(f"order must be positive, got {n}")
    if n > cap:
        raise OrderCapExceeded(f"table file order {n} exceeds cap {cap}")
    if len(lines) != n + 1:
        raise ParseError(f"expected {n} table rows in {path}, got {len(lines) - 1}")
    rows = []
    for line in lines[1:]:
        row = [int(v) for v in line.split()]
        if len(row) != n:
            raise ParseError(f"row with {len(row)} entries in {path}, expected {n}")
        rows.append(row)
    g = FiniteGroup(np.asarray(rows), f"file:{path}")
    try:
        validate_group(g, assoc="auto")
    except InvalidTable as exc:
        raise InvalidTable(f"{path}: {exc}") from exc
    return g


def write_cayley_file(g: FiniteGroup, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(f"# {g.name}\n{g.order}\n")
        for row in g.table:
            fh.write(" ".join(str(int(v)) for v in row) + "\n")


# ---------------------------------------------------------------------------
# build from spec


def spec_order(spec: GroupSpec) -> int:
    """Order of the group a spec would build, without building it."""
    if isinstance(spec, ProductSpec):
        return spec_order(spec.left) * spec_order(spec.right)
    if isinstance(spec, FileSpec):
        try:
            with open(spec.path) as fh:
                for line in fh:
                    line = line.strip()
                    if line and not line.startswith("#"):
                        return int(line)
        except (OSError, ValueError) as exc:
            raise ParseError(f"cannot read order from {spec.path}: {exc}") from exc
        raise ParseError(f"table file {spec.path} is empty")
    name, args = spec.name, spec.args
    if name == "Cyc":
        return max(1, args[0])
    if name == "Dih":
        return 2 * args[0]
    if name == "Dic":
        return 4 * args[0]
    if name == "Sym":
        return math.factorial(args[0])
    if name == "Alt":
        return max(1, math.factorial(args[0]) // 2)
    if name == "Heis":
        return args[0] ** 3
    if name == "ExSp":
        return args[0] ** (1 + 2 * args[1])
    if name == "GL2":
        q = args[0]
        return (q * q - 1) * (q * q - q)
    if name == "SL2":
        q = args[0]
        return (q * q - 1) * q
    if name == "SemiDirect":
        return spec_order(args[0]) * args[1]
    raise ParseError(f"unknown constructor {name!r}")


def build_from_spec(
    spec: GroupSpec, cap: int = DEFAULT_ORDER_CAP, validate: str = "auto"
) -> FiniteGroup:
    """Build and validate the group described by a parsed spec.

    Raises OrderCapExceeded before constructing anything too large, and
    InvalidTable if validation fails (validate="none" skips it).
    """
    total = spec_order(spec)
    if total > cap:
        raise OrderCapExceeded(f"spec order {total} exceeds cap {cap}")
    g = _build(spec, cap)
    g = FiniteGroup(g.table, render_spec(spec))
    if validate != "none":
        validate_group(g, assoc=validate)
    return g


def build_group(text: str, cap: int = DEFAULT_ORDER_CAP, validate: str = "auto") -> FiniteGroup:
    """Parse and build in one step."""
    return build_from_spec(parse_spec(text), cap=cap, validate=validate)


def _build(spec: GroupSpec, cap: int) -> FiniteGroup:
    if isinstance(spec, ProductSpec):
        return direct_product(_build(spec.left, cap), _build(spec.right, cap), cap=cap)
    if isinstance(spec, FileSpec):
        return load_cayley_file(spec.path, cap=cap)
    name, args = spec.name, spec.args
    if name == "Cyc":
        return cyclic(args[0])
    if name == "Dih":
        return dihedral(args[0])
    if name == "Dic":
        return dicyclic(args[0])
    if name == "Sym":
        return symmetric(args[0], cap=cap)
    if name == "Alt":
        return alternating(args[0], cap=cap)
    if name == "Heis":
        return heisenberg(args[0])
    if name == "ExSp":
        return extraspecial(args[0], args[1], args[2], cap=cap)
    if name == "GL2":
        return general_linear_2(args[0], cap=cap)
    if name == "SL2":
        return special_linear_2(args[0], cap=cap)
    if name == "SemiDirect":
        kernel = _build(args[0], cap)
        return semidirect_cyclic_action(kernel, args[1], args[2], cap=cap)
    raise ParseError(f"unknown constructor {name!r}")
