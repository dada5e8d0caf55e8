"""Periodic quantum graphs: vertex couplings, scattering matrices, secular function.

Vertex conditions are given in ST-form: with r <= n, a Hermitian r x r
matrix S and an r x (n-r) matrix T,

    [[I, T], [0, 0]] psi' = [[S, 0], [-T*, I]] psi

and the on-shell scattering matrix at momentum k is

    Sv(k) = -I + 2 [I; T*] (I + T T* - S/(ik))^{-1} [I, T].

Bonds.  Edge e gives two directed bonds, 2e (tail -> head) and 2e+1
(head -> tail).  Slots at each vertex are numbered by walking the edges in
order and appending the tail end to the tail vertex, then the head end to
the head vertex.  A bond leaves a vertex through one slot and arrives
through another; the bond matrix entry for "arrive through slot s, leave
through slot s'" is Sv[s', s].  A forward bond picks up the Bloch phase
theta.z_e, a reverse bond -theta.z_e.

The secular function is F(k; theta) = det(I - exp(i(A + kL)) Sb(k)).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from typing import Any, Sequence

import numpy as np

from . import kernels
from .diophantine import dirichlet_simultaneous
from .errors import CouplingResonanceError, InputError, NumericalFailure
from .lattice import GapInterval

__all__ = [
    "VertexCoupling",
    "Edge",
    "PeriodicCellGraph",
    "SchemaError",
    "delta_coupling",
    "kirchhoff",
    "st_coupling",
    "vertex_scattering",
    "associated_scale_invariant",
    "bond_scattering",
    "secular",
    "secular_grid",
    "in_spectrum",
    "min_abs_secular",
    "scan_bands",
    "momentum_period",
    "rectangular_lattice",
    "loop_graph",
    "parse_graph",
    "load_graph",
    "graph_to_document",
    "dirichlet_shift",
]


class SchemaError(InputError):
    """Graph document violates the schema; ``path`` names the offending field."""

    def __init__(self, path: str, msg: str):
        self.path = path
        super().__init__(f"{path}: {msg}")


# ---------------------------------------------------------------------------
# Couplings
# ---------------------------------------------------------------------------

def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=np.complex128)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class VertexCoupling:
    """ST-form vertex condition of degree n."""

    degree: int
    r: int
    S: np.ndarray
    T: np.ndarray

    def __post_init__(self):
        n, r = int(self.degree), int(self.r)
        if n < 1:
            raise InputError(f"degree must be >= 1, got {n}")
        if not 0 <= r <= n:
            raise InputError(f"r must lie in [0, {n}], got {r}")
        S = np.array(self.S, dtype=np.complex128)
        T = np.array(self.T, dtype=np.complex128)
        # empty blocks may arrive without a usable shape
        S = _frozen(S.reshape(r, r) if S.size == 0 else S)
        T = _frozen(T.reshape(r, n - r) if T.size == 0 else T)
        if S.shape != (r, r):
            raise InputError(f"S must be {r}x{r}, got shape {S.shape}")
        if T.shape != (r, n - r):
            raise InputError(f"T must be {r}x{n - r}, got shape {T.shape}")
        if not np.array_equal(S, S.conj().T):
            raise InputError("S must be Hermitian")
        object.__setattr__(self, "degree", n)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "T", T)

    @property
    def is_scale_invariant(self) -> bool:
        return not self.S.any()

    def conditions(self) -> tuple[np.ndarray, np.ndarray]:
        """(A, B) with the vertex condition reading A psi' = B psi."""
        n, r = self.degree, self.r
        A = np.zeros((n, n), dtype=np.complex128)
        B = np.zeros((n, n), dtype=np.complex128)
        A[:r, :r] = np.eye(r)
        A[:r, r:] = self.T
        B[:r, :r] = self.S
        B[r:, :r] = -self.T.conj().T
        B[r:, r:] = np.eye(n - r)
        return A, B

    def __eq__(self, other):
        if not isinstance(other, VertexCoupling):
            return NotImplemented
        return (self.degree == other.degree and self.r == other.r
                and np.array_equal(self.S, other.S) and np.array_equal(self.T, other.T))

    def __hash__(self):
        return hash((self.degree, self.r, self.S.tobytes(), self.T.tobytes()))

    def __repr__(self):
        return f"VertexCoupling(degree={self.degree}, r={self.r}, S={self.S.tolist()}, T={self.T.tolist()})"


def st_coupling(S, T) -> VertexCoupling:
    """Coupling from an r x r matrix S and an r x (n-r) matrix T (both 2-D)."""
    T = np.asarray(T, dtype=np.complex128)
    if T.ndim != 2:
        raise InputError("T must be a 2-D array")
    r = T.shape[0]
    return VertexCoupling(r + T.shape[1], r, S, T)


def delta_coupling(degree: int, alpha: float) -> VertexCoupling:
    """Continuity plus sum of outgoing derivatives = alpha * common value."""
    if degree < 1:
        raise InputError(f"degree must be >= 1, got {degree}")
    return VertexCoupling(degree, 1, [[alpha]], np.ones((1, degree - 1)))


def kirchhoff(degree: int) -> VertexCoupling:
    return delta_coupling(degree, 0.0)


def associated_scale_invariant(c: VertexCoupling) -> VertexCoupling:
    """Same (r, T) with the Robin part S set to zero."""
    if c.is_scale_invariant:
        return c
    return VertexCoupling(c.degree, c.r, np.zeros((c.r, c.r)), c.T)


def vertex_scattering(c: VertexCoupling, k: float) -> np.ndarray:
    """On-shell scattering matrix Sv(k), unitary for k > 0."""
    if not k > 0:
        raise InputError(f"k must be positive, got {k}")
    n, r = c.degree, c.r
    if r == 0:
        return -np.eye(n, dtype=np.complex128)
    I_r = np.eye(r, dtype=np.complex128)
    M = I_r + c.T @ c.T.conj().T - c.S / (1j * k)
    left = np.vstack([I_r, c.T.conj().T])
    right = np.hstack([I_r, c.T])
    try:
        X = np.linalg.solve(M, right)
    except np.linalg.LinAlgError:
        raise CouplingResonanceError(
            f"I + TT* - S/(ik) is singular at k={k}; the coupling data is corrupted") from None
    return -np.eye(n, dtype=np.complex128) + 2 * left @ X


# ---------------------------------------------------------------------------
# Graphs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str
    length: float | Fraction
    z: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class PeriodicCellGraph:
    """Elementary cell: vertices with couplings and edges with Bloch exponents."""

    vertices: tuple[tuple[str, VertexCoupling], ...]
    edges: tuple[Edge, ...]
    nu: int

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        if not 1 <= self.nu <= 3:
            raise InputError(f"nu must be 1, 2 or 3, got {self.nu}")
        ids = [v for v, _ in self.vertices]
        if len(set(ids)) != len(ids):
            raise InputError("vertex ids must be unique")
        if len({e.id for e in self.edges}) != len(self.edges):
            raise InputError("edge ids must be unique")
        if not self.edges:
            raise InputError("a cell needs at least one edge")
        deg = {v: 0 for v in ids}
        for e in self.edges:
            for end in (e.tail, e.head):
                if end not in deg:
                    raise InputError(f"edge {e.id} refers to unknown vertex {end!r}")
                deg[end] += 1
            if not e.length > 0:
                raise InputError(f"edge {e.id} has non-positive length {e.length}")
            if len(e.z) != self.nu:
                raise InputError(f"edge {e.id}: z must have {self.nu} components")
        for v, c in self.vertices:
            if c.degree != deg[v]:
                raise InputError(
                    f"vertex {v}: coupling degree {c.degree} but {deg[v]} edge ends attach")

    @cached_property
    def slots(self) -> dict[str, list[tuple[int, str]]]:
        """Per vertex, its (edge index, 'tail'|'head') ends in slot order."""
        out: dict[str, list[tuple[int, str]]] = {v: [] for v, _ in self.vertices}
        for i, e in enumerate(self.edges):
            out[e.tail].append((i, "tail"))
            out[e.head].append((i, "head"))
        return out

    @property
    def n_bonds(self) -> int:
        return 2 * len(self.edges)

    @cached_property
    def bond_lengths(self) -> np.ndarray:
        return np.repeat([float(e.length) for e in self.edges], 2)

    @cached_property
    def bond_z(self) -> np.ndarray:
        z = np.zeros((self.n_bonds, self.nu))
        for i, e in enumerate(self.edges):
            z[2 * i] = e.z
            z[2 * i + 1] = [-x for x in e.z]
        return z

    def coupling(self, vid: str) -> VertexCoupling:
        return dict(self.vertices)[vid]

    def with_couplings(self, fn) -> "PeriodicCellGraph":
        return PeriodicCellGraph(tuple((v, fn(c)) for v, c in self.vertices), self.edges, self.nu)


def _out_bond(edge: int, end: str) -> int:
    return 2 * edge if end == "tail" else 2 * edge + 1


def _in_bond(edge: int, end: str) -> int:
    return 2 * edge + 1 if end == "tail" else 2 * edge


def bond_scattering(g: PeriodicCellGraph, k: float) -> np.ndarray:
    """2E x 2E bond scattering matrix; rows/columns are bonds 2e (forward), 2e+1 (reverse)."""
    nb = g.n_bonds
    Sb = np.zeros((nb, nb), dtype=np.complex128)
    for vid, c in g.vertices:
        sv = vertex_scattering(c, k)
        sl = g.slots[vid]
        for s_out, (e_out, end_out) in enumerate(sl):
            for s_in, (e_in, end_in) in enumerate(sl):
                Sb[_out_bond(e_out, end_out), _in_bond(e_in, end_in)] = sv[s_out, s_in]
    return Sb


def _theta_rows(theta, nu: int) -> np.ndarray:
    t = np.ascontiguousarray(np.atleast_2d(np.asarray(theta, dtype=float)))
    if t.shape[1] != nu:
        raise InputError(f"theta must have {nu} components")
    return t


def secular_grid(g: PeriodicCellGraph, k: float, thetas) -> np.ndarray:
    """F(k; theta) for every row of ``thetas``."""
    sb = np.ascontiguousarray(bond_scattering(g, k))
    kl = np.ascontiguousarray(k * g.bond_lengths)
    return kernels.secular_batch(kl, sb, np.ascontiguousarray(g.bond_z), _theta_rows(thetas, g.nu))


def secular(g: PeriodicCellGraph, k: float, theta) -> complex:
    """F(k; theta) = det(I - exp(i(A + kL)) Sb(k))."""
    return complex(secular_grid(g, k, theta)[0])


# ---------------------------------------------------------------------------
# Spectrum detection
# ---------------------------------------------------------------------------

def _torus_grid(n: int, nu: int) -> np.ndarray:
    axis = -math.pi + 2 * math.pi * np.arange(1, n + 1) / n
    mesh = np.meshgrid(*([axis] * nu), indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


class _RealSecular:
    """F(k; .) rotated to a real function of theta.

    With U = exp(i(A + kL)) Sb unitary, det(I - U) = det(-U) conj(det(I - U)),
    and det(-U) = exp(ik sum l_b) det Sb does not depend on theta (the
    phases of a bond pair cancel).  Dividing F by a fixed square root of it
    leaves a real function, whose sign changes locate zeros.
    """

    def __init__(self, g: PeriodicCellGraph, k: float):
        self.sb = np.ascontiguousarray(bond_scattering(g, k))
        self.kl = np.ascontiguousarray(k * g.bond_lengths)
        self.z = np.ascontiguousarray(g.bond_z)
        d = np.exp(1j * self.kl.sum()) * np.linalg.det(self.sb)
        self.rot = 1 / np.sqrt(d)

    def __call__(self, thetas: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        f = kernels.secular_batch(self.kl, self.sb, self.z, np.ascontiguousarray(thetas))
        zeta = f * self.rot
        return zeta.real, np.abs(f)


def _offsets(nu: int) -> np.ndarray:
    axis = np.linspace(-2.0, 2.0, 9)
    mesh = np.meshgrid(*([axis] * nu), indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def _refine(fn: _RealSecular, center: np.ndarray, h: float, depth: int,
            eps: float, stop_on_sign: bool = True) -> tuple[bool, float]:
    offs = _offsets(center.size)
    best = math.inf
    for _ in range(depth):
        pts = center[None, :] + h * offs
        re, ab = fn(pts)
        i = int(np.argmin(ab))
        best = min(best, float(ab[i]))
        if best < eps or (stop_on_sign and re.max() > 0 and re.min() < 0):
            return True, best
        center = pts[i]
        h /= 4
    return False, best


def in_spectrum(g: PeriodicCellGraph, k: float, grid: int = 32, eps: float | None = None,
                depth: int = 12, candidates: int = 4) -> bool:
    """Whether k^2 belongs to the spectrum.

    True as soon as the real-rotated secular function changes sign on the
    theta grid, or when the minimum of |F| refined around the smallest grid
    values drops below ``eps`` (default 1e-13 times the matrix dimension).
    """
    return _spectral_test(g, k, grid, eps, depth, candidates)[0]


def min_abs_secular(g: PeriodicCellGraph, k: float, grid: int = 32, depth: int = 12) -> float:
    """Refined minimum of |F(k; .)| over the torus."""
    return _spectral_test(g, k, grid, 0.0, depth, 4, stop_on_sign=False)[1]


def _spectral_test(g, k, grid, eps, depth, candidates, stop_on_sign=True):
    if grid < 8:
        raise InputError("grid must be >= 8 per axis")
    if not k > 0:
        raise InputError(f"k must be positive, got {k}")
    if eps is None:
        eps = 1e-13 * g.n_bonds
    fn = _RealSecular(g, k)
    pts = _torus_grid(grid, g.nu)
    re, ab = fn(pts)
    if not np.isfinite(ab).all():
        raise NumericalFailure(f"non-finite secular values at k={k}")
    best = float(ab.min())
    if stop_on_sign and ((re.max() > 0 and re.min() < 0) or best < eps):
        return True, best
    h = 2 * math.pi / grid
    for i in np.argsort(ab)[:candidates]:
        if stop_on_sign:
            hit, b = _refine(fn, pts[i].copy(), h, depth, eps)
            best = min(best, b)
            if hit:
                return True, best
        else:
            _, b = _refine(fn, pts[i].copy(), h, depth, -1.0, stop_on_sign=False)
            best = min(best, b)
    return best < eps, best


def scan_bands(g: PeriodicCellGraph, kmin: float, kmax: float, dk: float, grid: int = 32,
               eps: float | None = None, tol: float = 1e-9) -> list[GapInterval]:
    """Gaps in [kmin, kmax] found by testing a k-grid and bisecting each transition.

    Gaps narrower than ``dk`` can be missed.  Intervals touching kmin or
    kmax are marked uncertified.
    """
    if not 0 < kmin < kmax or not dk > 0:
        raise InputError("need 0 < kmin < kmax and dk > 0")
    n = max(1, int(math.ceil((kmax - kmin) / dk)))
    ks = np.linspace(kmin, kmax, n + 1)
    test = lambda k: in_spectrum(g, float(k), grid, eps)
    flags = [test(k) for k in ks]

    def edge(lo, hi, flag_lo):
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            if test(mid) == flag_lo:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    gaps = []
    start = None if flags[0] else (float(ks[0]), False)
    for i in range(1, len(ks)):
        if flags[i - 1] and not flags[i]:
            start = (edge(ks[i - 1], ks[i], True), True)
        elif not flags[i - 1] and flags[i]:
            k_hi = edge(ks[i - 1], ks[i], False)
            gaps.append(GapInterval(start[0], k_hi, start[1]))
            start = None
    if start is not None:
        gaps.append(GapInterval(start[0], float(ks[-1]), False))
    return gaps


def _fraction_gcd(xs: Sequence[Fraction]) -> Fraction:
    num = reduce(math.gcd, (x.numerator * (math.lcm(*[y.denominator for y in xs]) // x.denominator)
                            for x in xs))
    return Fraction(num, math.lcm(*[y.denominator for y in xs]))


def momentum_period(g: PeriodicCellGraph) -> float | None:
    """2*pi/L_base when every coupling is scale-invariant and all lengths are
    exact rational multiples of a common L_base; otherwise None."""
    base = momentum_base_length(g)
    return None if base is None else 2 * math.pi / float(base)


def momentum_base_length(g: PeriodicCellGraph) -> Fraction | None:
    if not all(c.is_scale_invariant for _, c in g.vertices):
        return None
    lengths = [e.length for e in g.edges]
    if not all(isinstance(x, (int, Fraction)) for x in lengths):
        return None
    return _fraction_gcd([Fraction(x) for x in lengths])


def dirichlet_shift(g: PeriodicCellGraph, k: float, kmin: float, N: int) -> float:
    """A momentum k' > kmin at which every exp(i k' l_e) is close to exp(i k l_e).

    With l0 the first edge length and q, p_j from the simultaneous Dirichlet
    theorem for l_j/l0, k' = k + 2*pi*m*q/l0 moves every phase k*l_j by
    2*pi*m*(q*l_j/l0 - p_j) modulo 2*pi.
    """
    lengths = [Fraction(e.length) for e in g.edges]
    l0 = lengths[0]
    ratios = [x / l0 for x in lengths[1:]] or [Fraction(0)]
    _, q = dirichlet_simultaneous(ratios, N)
    step = 2 * math.pi * q / float(l0)
    m = max(1, math.ceil((kmin - k) / step) + 1)
    return k + m * step


# ---------------------------------------------------------------------------
# Builders and documents
# ---------------------------------------------------------------------------

def rectangular_lattice(a, b, alpha: float) -> PeriodicCellGraph:
    """One vertex with a degree-4 delta coupling and two loops of lengths a, b."""
    return PeriodicCellGraph(
        (("v", delta_coupling(4, alpha)),),
        (Edge("a", "v", "v", a, (1, 0)), Edge("b", "v", "v", b, (0, 1))),
        2,
    )


def loop_graph(length, coupling: VertexCoupling | None = None) -> PeriodicCellGraph:
    """One edge closing on one degree-2 vertex, nu = 1."""
    c = coupling or kirchhoff(2)
    return PeriodicCellGraph((("v", c),), (Edge("e", "v", "v", length, (1,)),), 1)


def _parse_length(x, path: str):
    if isinstance(x, bool):
        raise SchemaError(path, "length must be a number or a rational string")
    if isinstance(x, int):
        v: Any = Fraction(x)
    elif isinstance(x, float):
        v = x
    elif isinstance(x, str):
        try:
            v = Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise SchemaError(path, f"cannot parse length {x!r}; use 'p/q' or a decimal") from None
    else:
        raise SchemaError(path, "length must be a number or a rational string")
    if not v > 0:
        raise SchemaError(path, "length must be positive")
    return v


def _parse_matrix(x, path: str, shape: tuple[int, int]) -> np.ndarray:
    if not isinstance(x, list) or len(x) != shape[0]:
        raise SchemaError(path, f"expected {shape[0]} rows")
    out = np.zeros(shape, dtype=np.complex128)
    for i, row in enumerate(x):
        if not isinstance(row, list) or len(row) != shape[1]:
            raise SchemaError(f"{path}[{i}]", f"expected {shape[1]} entries")
        for j, ent in enumerate(row):
            p = f"{path}[{i}][{j}]"
            if (not isinstance(ent, list) or len(ent) != 2
                    or not all(isinstance(t, (int, float)) and not isinstance(t, bool) for t in ent)):
                raise SchemaError(p, "entries are [re, im] pairs")
            out[i, j] = complex(ent[0], ent[1])
    return out


def _require(d: dict, key: str, path: str):
    if not isinstance(d, dict):
        raise SchemaError(path, "expected an object")
    if key not in d:
        raise SchemaError(f"{path}.{key}" if path else key, "missing field")
    return d[key]


def parse_graph(doc: dict) -> PeriodicCellGraph:
    """Build a cell graph from a JSON-like document.

    ``{"nu": 2, "vertices": [{"id": "v", "coupling": {"type": "delta",
    "alpha": 10}}], "edges": [{"id": "a", "from": "v", "to": "v",
    "length": "1", "z": [1, 0]}, ...]}``.  ST couplings use ``{"type":
    "st", "r": r, "S": [[[re, im], ...], ...], "T": ...}``.
    """
    nu = _require(doc, "nu", "")
    if not isinstance(nu, int) or isinstance(nu, bool) or not 1 <= nu <= 3:
        raise SchemaError("nu", "must be an integer in 1..3")
    verts = _require(doc, "vertices", "")
    edges_doc = _require(doc, "edges", "")
    if not isinstance(verts, list) or not verts:
        raise SchemaError("vertices", "must be a nonempty list")
    if not isinstance(edges_doc, list) or not edges_doc:
        raise SchemaError("edges", "must be a nonempty list")
    edges = []
    vids = set()
    for i, v in enumerate(verts):
        vid = _require(v, "id", f"vertices[{i}]")
        vids.add(str(vid))
    degree: dict[str, int] = {v: 0 for v in vids}
    for i, e in enumerate(edges_doc):
        p = f"edges[{i}]"
        eid = str(_require(e, "id", p))
        tail, head = str(_require(e, "from", p)), str(_require(e, "to", p))
        for key, end in (("from", tail), ("to", head)):
            if end not in vids:
                raise SchemaError(f"{p}.{key}", f"unknown vertex {end!r}")
            degree[end] += 1
        length = _parse_length(_require(e, "length", p), f"{p}.length")
        z = _require(e, "z", p)
        if (not isinstance(z, list) or len(z) != nu
                or not all(isinstance(t, int) and not isinstance(t, bool) for t in z)):
            raise SchemaError(f"{p}.z", f"must be a list of {nu} integers")
        edges.append(Edge(eid, tail, head, length, tuple(z)))
    vertices = []
    for i, v in enumerate(verts):
        p = f"vertices[{i}]"
        vid = str(v["id"])
        c = _require(v, "coupling", p)
        kind = _require(c, "type", f"{p}.coupling")
        n = degree[vid]
        if n == 0:
            raise SchemaError(p, "vertex has no attached edges")
        if kind == "delta":
            alpha = _require(c, "alpha", f"{p}.coupling")
            if not isinstance(alpha, (int, float)) or isinstance(alpha, bool):
                raise SchemaError(f"{p}.coupling.alpha", "must be a number")
            coupling = delta_coupling(n, float(alpha))
        elif kind == "st":
            r = _require(c, "r", f"{p}.coupling")
            if not isinstance(r, int) or not 0 <= r <= n:
                raise SchemaError(f"{p}.coupling.r", f"must be an integer in 0..{n}")
            S = _parse_matrix(c.get("S", []), f"{p}.coupling.S", (r, r))
            T = _parse_matrix(c.get("T", [[] for _ in range(r)]), f"{p}.coupling.T", (r, n - r))
            try:
                coupling = VertexCoupling(n, r, S, T)
            except InputError as exc:
                raise SchemaError(f"{p}.coupling", str(exc)) from None
        else:
            raise SchemaError(f"{p}.coupling.type", f"unknown coupling type {kind!r}")
        vertices.append((vid, coupling))
    try:
        return PeriodicCellGraph(tuple(vertices), tuple(edges), nu)
    except SchemaError:
        raise
    except InputError as exc:
        raise SchemaError("graph", str(exc)) from None


def load_graph(path: str) -> PeriodicCellGraph:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    return parse_graph(doc)


def _matrix_doc(m: np.ndarray) -> list:
    return [[[float(x.real), float(x.imag)] for x in row] for row in m]


def graph_to_document(g: PeriodicCellGraph) -> dict:
    """Inverse of :func:`parse_graph` (couplings are written in ST form)."""
    verts = []
    for vid, c in g.vertices:
        verts.append({"id": vid, "coupling": {"type": "st", "r": c.r,
                                              "S": _matrix_doc(c.S), "T": _matrix_doc(c.T)}})
    edges = []
    for e in g.edges:
        length = str(e.length) if isinstance(e.length, Fraction) else e.length
        edges.append({"id": e.id, "from": e.tail, "to": e.head, "length": length, "z": list(e.z)})
    return {"nu": g.nu, "vertices": verts, "edges": edges}
