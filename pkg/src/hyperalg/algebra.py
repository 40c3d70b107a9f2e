"""Four-dimensional hypercomplex algebras defined by signed-basis Cayley tables.

An algebra here is fixed by a 4x4 table over the basis (1, i, j, k) whose
entries are signed basis elements.  Numbers are :class:`HNum` values with
either exact rational (``fractions.Fraction``) or float64 coefficients.
Products are the bilinear extension of the table.

Built-in tables:

* ``omega`` -- the bicomplex algebra with subalgebras psi = span(1, i)
  and phi = span(j, k).  Commutative, associative, has zero divisors.
* ``quaternion`` -- Hamilton's quaternions.
* ``complex`` -- the classical tessarine table (i^2 = j^2 = -1, k = ij),
  used as a reference embedding of C as span(1, i).

Search-space sizes for unital 4-basis tables: 8**16 with no constraint,
8**9 once the identity row/column is fixed, 8**6 when additionally
commutative.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from numbers import Rational
from pathlib import Path
from typing import NamedTuple, Sequence

import numpy as np

BASIS_NAMES = ("1", "i", "j", "k")
DEFAULT_TOL = 1e-12


class SingularElement(ArithmeticError):
    """Raised when an element has no two-sided inverse."""


class SignedBasis(NamedTuple):
    sign: int
    basis: int

    @classmethod
    def parse(cls, text: str) -> "SignedBasis":
        text = text.strip()
        sign = 1
        if text.startswith("-"):
            sign, text = -1, text[1:]
        elif text.startswith("+"):
            text = text[1:]
        if text not in BASIS_NAMES:
            raise ValueError(f"not a signed basis element: {text!r}")
        return cls(sign, BASIS_NAMES.index(text))

    @property
    def code(self) -> int:
        """Ordering key: 1, -1, i, -i, j, -j, k, -k map to 0..7."""
        return 2 * self.basis + (self.sign < 0)

    @classmethod
    def from_code(cls, code: int) -> "SignedBasis":
        return cls(-1 if code & 1 else 1, code >> 1)

    def __str__(self) -> str:
        return ("-" if self.sign < 0 else "") + BASIS_NAMES[self.basis]


SYMBOLS = tuple(str(SignedBasis.from_code(c)) for c in range(8))


@dataclass(frozen=True)
class MultiplicationTable:
    """Unital 4x4 Cayley table; ``entries[a][b]`` is the product e_a * e_b."""

    entries: tuple[tuple[SignedBasis, ...], ...]
    name: str = ""

    def __post_init__(self):
        entries = tuple(tuple(SignedBasis(*e) for e in row) for row in self.entries)
        if len(entries) != 4 or any(len(row) != 4 for row in entries):
            raise ValueError("table must be 4x4")
        for row in entries:
            for sign, basis in row:
                if sign not in (1, -1) or basis not in range(4):
                    raise ValueError(f"bad table entry ({sign}, {basis})")
        for a in range(4):
            if entries[0][a] != (1, a) or entries[a][0] != (1, a):
                raise ValueError("table is not unital: row/column 0 must be the identity")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_strings(cls, rows: Sequence[Sequence[str]], name: str = "") -> "MultiplicationTable":
        return cls(tuple(tuple(SignedBasis.parse(s) for s in row) for row in rows), name)

    @classmethod
    def from_codes(cls, codes: Sequence[int], name: str = "") -> "MultiplicationTable":
        """Build from 16 row-major entry codes (see :attr:`SignedBasis.code`)."""
        it = iter(codes)
        return cls(tuple(tuple(SignedBasis.from_code(next(it)) for _ in range(4)) for _ in range(4)), name)

    def to_strings(self) -> list[list[str]]:
        return [[str(e) for e in row] for row in self.entries]

    def codes(self) -> tuple[int, ...]:
        return tuple(e.code for row in self.entries for e in row)

    def __str__(self) -> str:
        lines = ["    " + " ".join(f"{b:>3}" for b in BASIS_NAMES)]
        for name, row in zip(BASIS_NAMES, self.to_strings()):
            lines.append(f"{name:>3} " + " ".join(f"{s:>3}" for s in row))
        return "\n".join(lines)


class HNum:
    """Hypercomplex number a*1 + b*i + c*j + d*k.

    Coefficients are all ``Fraction`` (exact mode) or all ``float``.  Ints
    are accepted in either mode; mixing floats with Fractions is rejected.
    Multiplication depends on an algebra and so is not an operator here;
    use :func:`mul`.
    """

    __slots__ = ("_c", "_exact")

    def __init__(self, a=0, b=0, c=0, d=0):
        raw = (a, b, c, d)
        has_float = any(isinstance(v, (float, np.floating)) for v in raw)
        has_frac = any(isinstance(v, Fraction) for v in raw)
        if has_float and has_frac:
            raise TypeError("mixed exact and float coefficients")
        if has_float:
            coeffs = tuple(float(v) for v in raw)
            if not all(math.isfinite(v) for v in coeffs):
                raise OverflowError(f"non-finite coefficient in {coeffs}")
        else:
            if not all(isinstance(v, (Rational, np.integer)) for v in raw):
                raise TypeError(f"unsupported coefficient types: {[type(v).__name__ for v in raw]}")
            coeffs = tuple(Fraction(int(v)) if isinstance(v, np.integer) else Fraction(v) for v in raw)
        self._c = coeffs
        self._exact = not has_float

    @classmethod
    def from_coeffs(cls, coeffs: Sequence, exact: bool | None = None) -> "HNum":
        a, b, c, d = coeffs
        if exact is True:
            return cls(*(Fraction(v) for v in coeffs))
        if exact is False:
            return cls(*(float(v) for v in coeffs))
        return cls(a, b, c, d)

    @classmethod
    def basis(cls, index: int, sign: int = 1, exact: bool = True) -> "HNum":
        coeffs = [0, 0, 0, 0]
        coeffs[index] = sign
        return cls.from_coeffs(coeffs, exact=exact)

    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def exact(self) -> bool:
        return self._exact

    @property
    def mode(self) -> str:
        return "exact" if self._exact else "float"

    def __iter__(self):
        return iter(self._c)

    def __getitem__(self, idx):
        return self._c[idx]

    def to_float(self) -> "HNum":
        return self if not self._exact else HNum(*(float(v) for v in self._c))

    def to_exact(self) -> "HNum":
        return self if self._exact else HNum(*(Fraction(v) for v in self._c))

    def to_array(self) -> np.ndarray:
        return np.array([float(v) for v in self._c])

    def is_zero(self) -> bool:
        return not any(self._c)

    def norm(self) -> float:
        """Euclidean norm of the coefficient vector."""
        return math.sqrt(sum(float(v) ** 2 for v in self._c))

    def isclose(self, other: "HNum", tol: float = DEFAULT_TOL) -> bool:
        return (self - _coerce_like(other, self)).norm() <= tol

    def _check(self, other: "HNum") -> None:
        if not isinstance(other, HNum):
            raise TypeError(f"expected HNum, got {type(other).__name__}")
        if other._exact != self._exact:
            raise TypeError("coefficient modes differ; convert with to_float()/to_exact()")

    def __add__(self, other):
        if not isinstance(other, HNum):
            return NotImplemented
        self._check(other)
        return HNum(*(x + y for x, y in zip(self._c, other._c)))

    def __sub__(self, other):
        if not isinstance(other, HNum):
            return NotImplemented
        self._check(other)
        return HNum(*(x - y for x, y in zip(self._c, other._c)))

    def __neg__(self):
        return HNum(*(-x for x in self._c))

    def __pos__(self):
        return self

    def __mul__(self, s):
        # scalar scaling only; a float scalar moves an exact value to float mode
        if isinstance(s, HNum):
            raise TypeError("HNum*HNum needs an algebra: use mul(alg, x, y)")
        if isinstance(s, (float, np.floating)):
            return HNum(*(float(x) * float(s) for x in self._c))
        if isinstance(s, (Rational, np.integer)):
            s = int(s) if isinstance(s, np.integer) else s
            return HNum(*(x * s for x in self._c))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, s):
        if isinstance(s, HNum):
            raise TypeError("HNum/HNum needs an algebra: use mul(alg, x, invert(alg, y))")
        if isinstance(s, (Rational, np.integer)) and self._exact:
            return HNum(*(x / Fraction(int(s)) if isinstance(s, np.integer) else x / Fraction(s) for x in self._c))
        if isinstance(s, (Rational, float, np.number)):
            return HNum(*(float(x) / float(s) for x in self._c))
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, HNum):
            return self._c == other._c
        if isinstance(other, (int, float, Fraction)):
            return self._c == (other, 0, 0, 0)
        return NotImplemented

    def __hash__(self):
        return hash(self._c)

    def __repr__(self):
        return f"HNum({', '.join(map(str, self._c))})" if self._exact else f"HNum({', '.join(map(repr, self._c))})"

    def __str__(self):
        parts = []
        for idx, v in enumerate(self._c):
            if v == 0:
                continue
            mag = abs(v)
            sym = "" if idx == 0 else BASIS_NAMES[idx]
            if idx and mag == 1:
                body = sym
            else:
                num = str(mag) if self._exact else repr(float(mag))
                body = num if not sym else (f"{num}*{sym}" if "/" in num else f"{num}{sym}")
            parts.append(("-" if v < 0 else "+", body))
        if not parts:
            return "0"
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def _coerce_like(x: HNum, ref: HNum) -> HNum:
    return x.to_exact() if ref.exact else x.to_float()


ONE = HNum(1)
I = HNum(0, 1)
J = HNum(0, 0, 1)
K = HNum(0, 0, 0, 1)
ZERO = HNum()


class ComplexStructure(NamedTuple):
    """A 2-dim subalgebra with unity ``unity`` and ``imaginary**2 == -unity``."""

    subset: tuple[int, ...]
    unity: HNum
    imaginary: HNum


@dataclass(frozen=True)
class PropertyReport:
    unital: bool
    commutative: bool
    associative: bool
    zero_divisor_witness: tuple[HNum, HNum] | None
    closed_subalgebras: tuple[tuple[int, ...], ...]
    complex_structures: tuple[ComplexStructure, ...]
    non_commuting_pair: tuple[int, int] | None = None
    non_associative_triple: tuple[int, int, int] | None = None

    def complex_structure_for(self, subset) -> ComplexStructure | None:
        subset = tuple(sorted(subset))
        return next((cs for cs in self.complex_structures if cs.subset == subset), None)

    def to_dict(self) -> dict:
        def num(x: HNum) -> list:
            return [str(v) for v in x.coeffs]

        return {
            "unital": self.unital,
            "commutative": self.commutative,
            "associative": self.associative,
            "zero_divisor_witness": None if self.zero_divisor_witness is None
            else {"x": str(self.zero_divisor_witness[0]), "y": str(self.zero_divisor_witness[1]),
                  "x_coeffs": num(self.zero_divisor_witness[0]), "y_coeffs": num(self.zero_divisor_witness[1])},
            "closed_subalgebras": [[BASIS_NAMES[i] for i in s] for s in self.closed_subalgebras],
            "complex_structures": [
                {"subset": [BASIS_NAMES[i] for i in cs.subset], "unity": str(cs.unity),
                 "imaginary": str(cs.imaginary)}
                for cs in self.complex_structures
            ],
            "non_commuting_pair": None if self.non_commuting_pair is None
            else [BASIS_NAMES[i] for i in self.non_commuting_pair],
            "non_associative_triple": None if self.non_associative_triple is None
            else [BASIS_NAMES[i] for i in self.non_associative_triple],
        }


class Algebra:
    """A named multiplication table with a lazily computed property report."""

    def __init__(self, table: MultiplicationTable):
        self.table = table
        self._report: PropertyReport | None = None
        self._structure: np.ndarray | None = None

    @property
    def name(self) -> str:
        return self.table.name

    @property
    def properties(self) -> PropertyReport:
        # compute-once; a concurrent duplicate computation writes an equal value
        if self._report is None:
            self._report = check_properties(self)
        return self._report

    @property
    def structure(self) -> np.ndarray:
        """Structure constants S[a, b, c]: e_a * e_b = sum_c S[a, b, c] e_c."""
        if self._structure is None:
            s = np.zeros((4, 4, 4))
            for a, row in enumerate(self.table.entries):
                for b, (sign, c) in enumerate(row):
                    s[a, b, c] = sign
            s.setflags(write=False)
            self._structure = s
        return self._structure

    def __repr__(self):
        return f"Algebra({self.name!r})"


# -- arithmetic ---------------------------------------------------------------

def basis_mul(alg: Algebra, a: int, b: int) -> SignedBasis:
    return alg.table.entries[a][b]


def mul(alg: Algebra, x: HNum, y: HNum) -> HNum:
    """Bilinear product of ``x`` and ``y`` under ``alg``'s table."""
    x._check(y)
    zero = Fraction(0) if x.exact else 0.0
    out = [zero] * 4
    entries = alg.table.entries
    for a, xa in enumerate(x.coeffs):
        if not xa:
            continue
        row = entries[a]
        for b, yb in enumerate(y.coeffs):
            if not yb:
                continue
            sign, c = row[b]
            out[c] += sign * xa * yb
    return HNum(*out)


def mul_array(alg: Algebra, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Vectorised float product over the trailing axis of length 4."""
    return np.einsum("...a,...b,abc->...c", x, y, alg.structure)


def conjugate(alg: Algebra, x: HNum, kind: str = "full") -> HNum:
    """Coefficient-negation conjugations.

    ``psi`` negates the i part, ``phi`` negates the j part (complex
    conjugation of span(j, k) with unity k), ``full`` negates i, j and k.
    The result does not depend on the table; ``alg`` is kept for symmetry
    with the other operations.
    """
    a, b, c, d = x.coeffs
    if kind == "psi":
        return HNum(a, -b, c, d)
    if kind == "phi":
        return HNum(a, b, -c, d)
    if kind == "full":
        return HNum(a, -b, -c, -d)
    raise ValueError(f"unknown conjugation kind {kind!r}")


def left_matrix(alg: Algebra, x: HNum) -> list[list]:
    """Matrix L with L @ coeffs(y) == coeffs(x * y)."""
    cols = [mul(alg, x, HNum.basis(b, exact=x.exact)).coeffs for b in range(4)]
    return [[cols[b][r] for b in range(4)] for r in range(4)]


def right_matrix(alg: Algebra, x: HNum) -> list[list]:
    cols = [mul(alg, HNum.basis(b, exact=x.exact), x).coeffs for b in range(4)]
    return [[cols[b][r] for b in range(4)] for r in range(4)]


def solve_exact(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """Solve a (possibly overdetermined) rational system by Gauss-Jordan.

    Returns the unique solution, or None when the system is inconsistent or
    underdetermined.
    """
    n = len(rows[0])
    m = [[Fraction(v) for v in row] + [Fraction(r)] for row, r in zip(rows, rhs)]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][col]
        m[r] = [v / p for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [vi - f * vr for vi, vr in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    if any(all(v == 0 for v in row[:n]) and row[n] != 0 for row in m):
        return None
    if len(pivots) < n:
        return None
    return [m[i][n] for i in range(n)]


def invert(alg: Algebra, x: HNum, cond_limit: float = 1e12) -> HNum:
    """Two-sided inverse of ``x``.

    Solves (left multiplication by x) y = 1; raises :class:`SingularElement`
    when that system is singular or, in float mode, worse conditioned than
    ``cond_limit``.
    """
    if x.exact:
        sol = solve_exact(left_matrix(alg, x), [1, 0, 0, 0])
        if sol is None:
            raise SingularElement(f"{x} has no inverse in {alg.name or 'this algebra'}")
        y = HNum(*sol)
        if mul(alg, y, x) != ONE:
            raise SingularElement(f"{x} has a one-sided inverse only")
        return y
    mat = np.array(left_matrix(alg, x), dtype=float)
    if not np.all(np.isfinite(mat)) or np.linalg.cond(mat) > cond_limit:
        raise SingularElement(f"{x} is singular (or numerically so) in {alg.name or 'this algebra'}")
    y = HNum(*np.linalg.solve(mat, np.array([1.0, 0.0, 0.0, 0.0])))
    if not mul(alg, y, x).isclose(ONE.to_float(), 1e3 * DEFAULT_TOL * max(1.0, x.norm() * y.norm())):
        raise SingularElement(f"{x} has a one-sided inverse only")
    return y


# -- structural analysis ------------------------------------------------------

def _basis_product(t: MultiplicationTable, a: int, b: int, sign: int = 1) -> tuple[int, int]:
    s, c = t.entries[a][b]
    return sign * s, c


def _zero_divisor_candidates() -> list[HNum]:
    binomials = []
    for a, b in combinations(range(4), 2):
        for s in (1, -1):
            coeffs = [0, 0, 0, 0]
            coeffs[a], coeffs[b] = 1, s
            binomials.append(HNum(*coeffs))
    singles = [HNum.basis(a) for a in range(4)]
    return binomials + singles


def find_zero_divisor(alg: Algebra) -> tuple[HNum, HNum] | None:
    """Bounded witness search over basis elements and binomials e +- f.

    Left factors are scanned binomials first; right factors are scanned
    single basis elements from k down to 1, then binomials.  Sign variants
    of single basis elements are omitted because they cannot change whether
    a product vanishes.
    """
    cands = _zero_divisor_candidates()
    binomials, singles = cands[:12], cands[12:]
    for x in binomials + singles:
        for y in singles[::-1] + binomials:
            if mul(alg, x, y).is_zero():
                return x, y
    return None


def _closed(t: MultiplicationTable, subset: Sequence[int]) -> bool:
    return all(t.entries[a][b].basis in subset for a in subset for b in subset)


def _complex_structure(alg: Algebra, subset: tuple[int, int]) -> ComplexStructure | None:
    a, b = subset
    ea, eb = HNum.basis(a), HNum.basis(b)

    def coords(x: HNum) -> tuple[Fraction, Fraction]:
        return x.coeffs[a], x.coeffs[b]

    # unity e = p*ea + q*eb: e*ea = ea, e*eb = eb, ea*e = ea, eb*e = eb
    rows, rhs = [], []
    for target in (ea, eb):
        left = [coords(mul(alg, ea, target)), coords(mul(alg, eb, target))]
        right = [coords(mul(alg, target, ea)), coords(mul(alg, target, eb))]
        for prods in (left, right):
            for comp in range(2):
                rows.append([prods[0][comp], prods[1][comp]])
                rhs.append(coords(target)[comp])
    sol = solve_exact(rows, rhs)
    if sol is None:
        return None
    e = ea * sol[0] + eb * sol[1]
    if mul(alg, e, e) != e:
        return None
    # v: first basis element of the subset independent of e
    v = next(x for x in (ea, eb) if coords(x)[0] * coords(e)[1] != coords(x)[1] * coords(e)[0])
    v2 = mul(alg, v, v)
    ec, vc, sc = coords(e), coords(v), coords(v2)
    ab = solve_exact([[ec[0], vc[0]], [ec[1], vc[1]]], [sc[0], sc[1]])
    if ab is None:
        return None
    alpha, beta = ab
    w = v - e * (beta / 2)
    c = -(alpha + beta * beta / 4)  # w*w == -c*e
    if c <= 0:
        return None
    root = _rational_sqrt(c)
    u = w / root if root is not None else w.to_float() / math.sqrt(c)
    return ComplexStructure(subset, e, u)


def _rational_sqrt(q: Fraction) -> Fraction | None:
    n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def check_properties(alg: Algebra) -> PropertyReport:
    """Exact structural analysis of ``alg``'s table."""
    t = alg.table
    unital = all(t.entries[0][a] == (1, a) and t.entries[a][0] == (1, a) for a in range(4))

    non_comm = next(((a, b) for a in range(4) for b in range(a + 1, 4)
                     if t.entries[a][b] != t.entries[b][a]), None)

    non_assoc = None
    for a in range(4):
        for b in range(4):
            for c in range(4):
                s1, ab = t.entries[a][b]
                lhs = _basis_product(t, ab, c, s1)
                s2, bc = t.entries[b][c]
                rhs = _basis_product(t, a, bc, s2)
                if lhs != rhs and non_assoc is None:
                    non_assoc = (a, b, c)

    closed = [s for s in combinations(range(4), 2) if _closed(t, s)] + [(0, 1, 2, 3)]
    structures = [cs for s in closed if len(s) == 2 and (cs := _complex_structure(alg, s)) is not None]

    return PropertyReport(
        unital=unital,
        commutative=non_comm is None,
        associative=non_assoc is None,
        zero_divisor_witness=find_zero_divisor(alg),
        closed_subalgebras=tuple(closed),
        complex_structures=tuple(structures),
        non_commuting_pair=non_comm,
        non_associative_triple=non_assoc,
    )


# -- built-ins and loading ----------------------------------------------------

OMEGA_TABLE = MultiplicationTable.from_strings(
    [["1", "i", "j", "k"],
     ["i", "-1", "-k", "j"],
     ["j", "-k", "-k", "j"],
     ["k", "j", "j", "k"]],
    name="omega",
)

QUATERNION_TABLE = MultiplicationTable.from_strings(
    [["1", "i", "j", "k"],
     ["i", "-1", "k", "-j"],
     ["j", "-k", "-1", "i"],
     ["k", "j", "-i", "-1"]],
    name="quaternion",
)

COMPLEX_TABLE = MultiplicationTable.from_strings(
    [["1", "i", "j", "k"],
     ["i", "-1", "k", "-j"],
     ["j", "k", "-1", "-i"],
     ["k", "-j", "-i", "1"]],
    name="complex",
)

OMEGA = Algebra(OMEGA_TABLE)
QUATERNION = Algebra(QUATERNION_TABLE)
COMPLEX = Algebra(COMPLEX_TABLE)

BUILTINS = {"omega": OMEGA, "quaternion": QUATERNION, "complex": COMPLEX}


def _self_check() -> None:
    t = OMEGA_TABLE.entries
    if any(t[a][b] != t[b][a] for a in range(4) for b in range(4)):
        raise RuntimeError("built-in omega table is not commutative")


_self_check()


def algebra_from_json(data: dict) -> Algebra:
    return Algebra(MultiplicationTable.from_strings(data["table"], name=data.get("name", "")))


def load_algebra(path: str | Path) -> Algebra:
    with open(path, encoding="utf-8") as fh:
        return algebra_from_json(json.load(fh))


def dump_algebra(alg: Algebra) -> str:
    return json.dumps({"name": alg.name, "table": alg.table.to_strings()})


def get_algebra(name: str) -> Algebra:
    """Resolve ``omega``, ``quaternion``, ``complex`` or ``file:<path>``."""
    if name in BUILTINS:
        return BUILTINS[name]
    if name.startswith("file:"):
        return load_algebra(name[len("file:"):])
    raise KeyError(f"unknown algebra {name!r}; expected one of {sorted(BUILTINS)} or file:<path>")
