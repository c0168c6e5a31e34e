"""Exact linear algebra over Z: Smith normal form, free complexes, homology.

Matrices act on column vectors (M: Z^n -> Z^m).  All entries are Python
ints, so arithmetic is arbitrary precision throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd


class Matrix:
    """Dense integer matrix, row-major."""

    __slots__ = ("m", "n", "rows")

    def __init__(self, rows, shape=None):
        if shape is not None:
            self.m, self.n = shape
            self.rows = [list(r) for r in rows]
        else:
            self.rows = [list(r) for r in rows]
            self.m = len(self.rows)
            self.n = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.n:
                raise ValueError("ragged matrix")

    @staticmethod
    def zeros(m, n):
        return Matrix([[0] * n for _ in range(m)], shape=(m, n))

    @staticmethod
    def identity(n):
        return Matrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def from_columns(cols, m):
        M = Matrix.zeros(m, len(cols))
        for j, c in enumerate(cols):
            for i, v in enumerate(c):
                M.rows[i][j] = v
        return M

    def copy(self):
        return Matrix([list(r) for r in self.rows], shape=(self.m, self.n))

    def column(self, j):
        return [self.rows[i][j] for i in range(self.m)]

    def columns(self):
        return [self.column(j) for j in range(self.n)]

    def transpose(self):
        return Matrix([[self.rows[i][j] for i in range(self.m)] for j in range(self.n)],
                      shape=(self.n, self.m))

    def is_zero(self):
        return all(v == 0 for r in self.rows for v in r)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.m == other.m
                and self.n == other.n and self.rows == other.rows)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.n != other.m:
                raise ValueError(f"shape mismatch {self.m}x{self.n} * {other.m}x{other.n}")
            ot = other.transpose().rows
            out = [[sum(a * b for a, b in zip(row, col)) for col in ot] for row in self.rows]
            return Matrix(out, shape=(self.m, other.n))
        raise TypeError

    def mulvec(self, v):
        if len(v) != self.n:
            raise ValueError("vector length mismatch")
        return [sum(a * b for a, b in zip(row, v)) for row in self.rows]

    def scale(self, c):
        return Matrix([[c * v for v in r] for r in self.rows], shape=(self.m, self.n))

    def __neg__(self):
        return self.scale(-1)

    def __add__(self, other):
        if self.m != other.m or self.n != other.n:
            raise ValueError("shape mismatch")
        return Matrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)],
                      shape=(self.m, self.n))

    def __sub__(self, other):
        return self + (-other)

    def __repr__(self):
        return f"Matrix({self.rows})"


def block_matrix(blocks):
    """Assemble a matrix from a 2D list of blocks (each a Matrix)."""
    out_rows = []
    for brow in blocks:
        h = brow[0].m
        for b in brow:
            if b.m != h:
                raise ValueError("block heights differ")
        for i in range(h):
            row = []
            for b in brow:
                row.extend(b.rows[i])
            out_rows.append(row)
    return Matrix(out_rows) if out_rows else Matrix.zeros(0, sum(b.n for b in blocks[0]) if blocks else 0)


def _pivot(rows, start, m, n):
    """Smallest |value| pivot, ties broken by (row, col)."""
    best = None
    for i in range(start, m):
        ri = rows[i]
        for j in range(start, n):
            v = ri[j]
            if v != 0:
                a = abs(v)
                if best is None or a < best[0]:
                    best = (a, i, j)
                    if a == 1:
                        return best
    return best


def smith_normal_form(M: Matrix):
    """Return (U, S, V) with U*M*V = S, S diagonal with d1 | d2 | ..., U, V unimodular."""
    m, n = M.m, M.n
    S = [list(r) for r in M.rows]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        if i != j:
            S[i], S[j] = S[j], S[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for r in S:
                r[i], r[j] = r[j], r[i]
            for r in V:
                r[i], r[j] = r[j], r[i]

    def addmul_row(dst, src, c):
        if c:
            Sd, Ss = S[dst], S[src]
            for k in range(n):
                Sd[k] += c * Ss[k]
            Ud, Us = U[dst], U[src]
            for k in range(m):
                Ud[k] += c * Us[k]

    def addmul_col(dst, src, c):
        if c:
            for r in S:
                r[dst] += c * r[src]
            for r in V:
                r[dst] += c * r[src]

    def negate_row(i):
        S[i] = [-v for v in S[i]]
        U[i] = [-v for v in U[i]]

    t = 0
    limit = min(m, n)
    while t < limit:
        piv = _pivot(S, t, m, n)
        if piv is None:
            break
        _, pi, pj = piv
        swap_rows(t, pi)
        swap_cols(t, pj)
        # clear row & column t, restarting when remainders appear
        while True:
            a = S[t][t]
            done = True
            for i in range(t + 1, m):
                v = S[i][t]
                if v:
                    q = v // a
                    addmul_row(i, t, -q)
                    if S[i][t]:
                        swap_rows(t, i)
                        done = False
                        a = S[t][t]
            for j in range(t + 1, n):
                v = S[t][j]
                if v:
                    q = v // a
                    addmul_col(j, t, -q)
                    if S[t][j]:
                        swap_cols(t, j)
                        done = False
                        a = S[t][t]
            if done:
                break
        # enforce divisibility of later entries by S[t][t]
        a = S[t][t]
        bad = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if S[i][j] % a:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            addmul_row(t, bad, 1)
            continue
        if a < 0:
            negate_row(t)
        t += 1

    return (Matrix(U, shape=(m, m)), Matrix(S, shape=(m, n)),
            Matrix(V, shape=(n, n)))


def snf_diagonal(S: Matrix):
    return [S.rows[i][i] for i in range(min(S.m, S.n))]


def det_unimodular_check(M: Matrix):
    """|det M| via fraction-free elimination; used to verify transforms."""
    n = M.n
    if M.m != n:
        raise ValueError("square only")
    a = [list(r) for r in M.rows]
    prev = 1
    sign = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


@dataclass
class SNF:
    """SNF of a matrix together with solve/kernel services."""

    M: Matrix
    U: Matrix
    S: Matrix
    V: Matrix
    rank: int

    @staticmethod
    def of(M: Matrix) -> "SNF":
        U, S, V = smith_normal_form(M)
        diag = snf_diagonal(S)
        rank = sum(1 for d in diag if d != 0)
        return SNF(M, U, S, V, rank)

    def solve(self, b):
        """Integer x with M x = b, or None."""
        y = self.U.mulvec(b)
        x = [0] * self.M.n
        diag = snf_diagonal(self.S)
        for i, v in enumerate(y):
            d = diag[i] if i < len(diag) else 0
            if d == 0:
                if v != 0:
                    return None
            else:
                if v % d:
                    return None
                x[i] = v // d
        for i in range(len(diag), self.M.m):
            if y[i] != 0:
                return None
        return self.V.mulvec(x)

    def kernel_basis(self) -> Matrix:
        """Columns form a Z-basis of ker(M)."""
        cols = [self.V.column(j) for j in range(self.rank, self.M.n)]
        return Matrix.from_columns(cols, self.M.n)


def rational_rank(M: Matrix) -> int:
    """Rank over Q via fraction-free elimination (oracle-friendly)."""
    a = [list(r) for r in M.rows]
    m, n = M.m, M.n
    rank = 0
    row = 0
    for col in range(n):
        piv = None
        for i in range(row, m):
            if a[i][col]:
                piv = i
                break
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        for i in range(row + 1, m):
            if a[i][col]:
                g = a[row][col]
                f = a[i][col]
                for j in range(col, n):
                    a[i][j] = a[i][j] * g - f * a[row][j]
        row += 1
        rank += 1
        if row == m:
            break
    return rank


@dataclass
class AbGroupData:
    """A finitely generated abelian group presented as homology output.

    torsion lists the invariant factors > 1 in divisibility order.  class_map
    sends a cycle's ambient coordinates to class coordinates (torsion residues
    followed by free coordinates); reps are one chosen ambient cycle per
    generator.
    """

    free_rank: int
    torsion: list
    ambient_dim: int = 0
    _cycles: SNF | None = None
    _uinv_cols: list = field(default_factory=list)
    _class_rows: list = field(default_factory=list)
    reps: list = field(default_factory=list)

    def order(self):
        if self.free_rank:
            return 0
        o = 1
        for d in self.torsion:
            o *= d
        return o

    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    def p_exponent(self, p):
        e = 0
        for d in self.torsion:
            k = 0
            while d % p == 0:
                d //= p
                k += 1
            e = max(e, k)
        return e

    def is_p_primary(self, p):
        if self.free_rank:
            return False
        for d in self.torsion:
            while d % p == 0:
                d //= p
            if d != 1:
                return False
        return True

    def elementary_divisors(self):
        out = []
        for d in self.torsion:
            dd = d
            q = 2
            while q * q <= dd:
                if dd % q == 0:
                    e = 1
                    dd //= q
                    while dd % q == 0:
                        dd //= q
                        e += 1
                    out.append(q ** e)
                q += 1
            if dd > 1:
                out.append(dd)
        return sorted(out) + [0] * self.free_rank

    def class_of(self, vec):
        """Class coordinates of an ambient cycle (torsion residues, free ints)."""
        if self._cycles is None:
            raise ValueError("class data unavailable")
        w = self._cycles.solve(vec)
        if w is None:
            raise ValueError("vector is not a cycle")
        coords = []
        for row, d in self._class_rows:
            c = sum(a * b for a, b in zip(row, w))
            coords.append(c % d if d else c)
        return tuple(coords)

    def is_zero_class(self, vec):
        return all(c == 0 for c in self.class_of(vec))

    def to_json(self):
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def same_group(self, other: "AbGroupData"):
        return (self.free_rank == other.free_rank
                and self.elementary_divisors() == other.elementary_divisors())


def direct_sum_groups(groups):
    """Recombine components into a single AbGroupData (invariant factors)."""
    from collections import defaultdict
    primes = defaultdict(list)
    free = 0
    for g in groups:
        free += g.free_rank
        for q in g.elementary_divisors():
            if q == 0:
                continue
            p = smallest_prime_factor(q)
            e = 0
            qq = q
            while qq > 1:
                qq //= p
                e += 1
            primes[p].append(e)
    for p in primes:
        primes[p].sort(reverse=True)
    width = max((len(v) for v in primes.values()), default=0)
    factors = []
    for i in range(width):
        f = 1
        for p, exps in primes.items():
            if i < len(exps):
                f *= p ** exps[i]
        factors.append(f)
    factors.sort()
    return AbGroupData(free_rank=free, torsion=[f for f in factors if f > 1])


def smallest_prime_factor(q):
    d = 2
    while d * d <= q:
        if q % d == 0:
            return d
        d += 1
    return q


def homology_of_maps(d_in: Matrix | None, d_out: Matrix | None, dim: int) -> AbGroupData:
    """ker(d_out)/im(d_in) on an ambient Z^dim."""
    if d_out is None or d_out.m == 0:
        d_out = Matrix.zeros(0, dim)
    if d_in is None or d_in.n == 0:
        d_in = Matrix.zeros(dim, 0)
    ker = SNF.of(d_out)
    K = ker.kernel_basis()  # dim x k
    k = K.n
    ksnf = SNF.of(K)
    # express each boundary generator in kernel coordinates
    zcols = []
    for j in range(d_in.n):
        b = d_in.column(j)
        z = ksnf.solve(b)
        if z is None:
            raise ValueError("d^2 != 0: boundary is not a cycle")
        zcols.append(z)
    Z = Matrix.from_columns(zcols, k)
    U, S, V = smith_normal_form(Z)
    diag = snf_diagonal(S)
    rank = sum(1 for d in diag if d != 0)
    free_rank = k - rank
    torsion = [d for d in diag if d > 1]
    # class coordinates: rows of U for torsion (d>1) then free positions
    class_rows = []
    for i, d in enumerate(diag):
        if d > 1:
            class_rows.append((U.rows[i], d))
    for i in range(rank, k):
        class_rows.append((U.rows[i], 0))
    # representatives: ambient K * Uinv e_i ; solve U w = e_i
    usnf = SNF.of(U)
    reps = []
    for row_idx, (_, d) in zip(
            [i for i, dd in enumerate(diag) if dd > 1] + list(range(rank, k)),
            class_rows):
        e = [0] * k
        e[row_idx] = 1
        w = usnf.solve(e)
        reps.append(K.mulvec(w))
    return AbGroupData(free_rank=free_rank, torsion=torsion, ambient_dim=dim,
                       _cycles=ksnf, _class_rows=class_rows, reps=reps)


class FreeComplex:
    """Finite free cochain complex over Z.

    terms[i] is an ordered tuple of basis labels; diff(i) maps term(i) to
    term(i+1).  Chain complexes are stored via C_n := C^{-n}.  An optional
    grade function on labels splits everything into graded pieces preserved
    by the differential.
    """

    def __init__(self, terms: dict, diffs: dict, grade=None, check=True):
        self.terms = {i: tuple(t) for i, t in terms.items() if len(t) > 0}
        self.diffs = {}
        for i, M in diffs.items():
            src = len(self.terms.get(i, ()))
            dst = len(self.terms.get(i + 1, ()))
            if M is None:
                continue
            if M.n != src or M.m != dst:
                raise ValueError(f"diff({i}) shape {M.m}x{M.n} != {dst}x{src}")
            self.diffs[i] = M
        self.grade = grade
        if check:
            self.check_d2()

    def degrees(self):
        return sorted(self.terms)

    def dim(self, i):
        return len(self.terms.get(i, ()))

    def labels(self, i):
        return self.terms.get(i, ())

    def diff(self, i) -> Matrix:
        M = self.diffs.get(i)
        if M is None:
            return Matrix.zeros(self.dim(i + 1), self.dim(i))
        return M

    def check_d2(self):
        for i in self.degrees():
            if self.dim(i + 1) and self.dim(i + 2):
                P = self.diff(i + 1) * self.diff(i)
                if not P.is_zero():
                    raise ValueError(f"d^2 != 0 at degree {i}")

    def index(self, i, label):
        return self.labels(i).index(label)

    def vector(self, i, coeffs: dict):
        """Ambient vector at degree i from a {label: coefficient} dict."""
        v = [0] * self.dim(i)
        lab = self.labels(i)
        pos = {l: k for k, l in enumerate(lab)}
        for l, c in coeffs.items():
            if c:
                v[pos[l]] += c
        return v

    def homology(self, i) -> AbGroupData:
        return homology_of_maps(self.diff(i - 1) if self.dim(i - 1) else None,
                                self.diff(i) if self.dim(i + 1) else Matrix.zeros(0, self.dim(i)),
                                self.dim(i))

    def homology_graded(self, i):
        """dict grade -> AbGroupData, plus combined group (direct sum)."""
        pieces = self.graded_pieces()
        out = {}
        for g, (piece, _) in sorted(pieces.items(), key=lambda kv: str(kv[0])):
            if piece.dim(i) or piece.dim(i - 1) or piece.dim(i + 1):
                out[g] = piece.homology(i)
        return out, direct_sum_groups(out.values())

    def graded_pieces(self):
        """Split into graded subcomplexes; returns {grade: (FreeComplex, index maps)}."""
        if self.grade is None:
            raise ValueError("complex has no grading")
        if getattr(self, "_pieces", None) is not None:
            return self._pieces
        grades = {}
        for i, labs in self.terms.items():
            for k, l in enumerate(labs):
                grades.setdefault(self.grade(l), {}).setdefault(i, []).append(k)
        pieces = {}
        for g, idx in grades.items():
            terms = {i: tuple(self.terms[i][k] for k in ks) for i, ks in idx.items()}
            diffs = {}
            for i, ks in idx.items():
                tgt = idx.get(i + 1)
                if tgt and self.dim(i + 1):
                    M = self.diff(i)
                    sub = Matrix([[M.rows[a][b] for b in ks] for a in tgt])
                    diffs[i] = sub
                # verify no leakage out of the piece
                if self.dim(i + 1):
                    M = self.diff(i)
                    tgtset = set(tgt or [])
                    for a in range(M.m):
                        if a in tgtset:
                            continue
                        for b in ks:
                            if M.rows[a][b] != 0:
                                raise ValueError("differential does not preserve grading")
            pieces[g] = (FreeComplex(terms, diffs, check=False), idx)
        self._pieces = pieces
        return pieces

    def shift(self, k) -> "FreeComplex":
        """C[k]^i = C^{i+k}, differential scaled by (-1)^k."""
        terms = {i - k: labs for i, labs in self.terms.items()}
        sign = -1 if k % 2 else 1
        diffs = {i - k: M.scale(sign) for i, M in self.diffs.items()}
        return FreeComplex(terms, diffs, grade=self.grade, check=False)

    def mod_p(self, p) -> "FreeComplex":
        """Derived mod-p complex: term(i) = C^i + C^{i+1},
        d(a, b) = (da + p b, -db)."""
        terms = {}
        degs = set(self.degrees()) | {i - 1 for i in self.degrees()}
        for i in sorted(degs):
            labs = tuple(("a", l) for l in self.labels(i)) + tuple(("b", l) for l in self.labels(i + 1))
            if labs:
                terms[i] = labs
        diffs = {}
        for i in terms:
            if i + 1 not in terms:
                continue
            na, nb = self.dim(i), self.dim(i + 1)
            ma, mb = self.dim(i + 1), self.dim(i + 2)
            blocks = [[self.diff(i), Matrix.identity(nb).scale(p) if nb else Matrix.zeros(ma, 0)],
                      [Matrix.zeros(mb, na), self.diff(i + 1).scale(-1)]]
            diffs[i] = block_matrix(blocks)
        g = None
        if self.grade is not None:
            base = self.grade
            g = lambda lab: base(lab[1])
        return FreeComplex(terms, diffs, grade=g, check=False)


@dataclass
class ChainMap:
    """Degree-0 map of cochain complexes; comps[i]: src.term(i) -> dst.term(i)."""

    src: FreeComplex
    dst: FreeComplex
    comps: dict

    def comp(self, i) -> Matrix:
        M = self.comps.get(i)
        if M is None:
            return Matrix.zeros(self.dst.dim(i), self.src.dim(i))
        return M

    def verify(self):
        for i in set(self.src.degrees()) | set(self.dst.degrees()):
            left = self.dst.diff(i) * self.comp(i)
            right = self.comp(i + 1) * self.src.diff(i)
            if not (left - right).is_zero():
                bad = None
                D = left - right
                for b in range(D.n):
                    if any(D.rows[a][b] for a in range(D.m)):
                        bad = self.src.labels(i)[b]
                        break
                raise ValueError(f"not a chain map at degree {i}, basis {bad!r}")
        return True


def cone(f: ChainMap, check=True) -> FreeComplex:
    """Cone(f)^i = src^{i+1} (+) dst^i, d(x, y) = (-dx, f(x) + dy)."""
    if check:
        f.verify()
    X, Y = f.src, f.dst
    terms = {}
    degs = set()
    for i in X.degrees():
        degs.add(i - 1)
    degs.update(Y.degrees())
    for i in sorted(degs):
        labs = tuple(("s", l) for l in X.labels(i + 1)) + tuple(("t", l) for l in Y.labels(i))
        if labs:
            terms[i] = labs
    diffs = {}
    for i in terms:
        if i + 1 not in terms:
            continue
        nx, ny = X.dim(i + 1), Y.dim(i)
        mx, my = X.dim(i + 2), Y.dim(i + 1)
        diffs[i] = block_matrix([
            [X.diff(i + 1).scale(-1), Matrix.zeros(mx, ny)],
            [f.comp(i + 1), Y.diff(i)],
        ])
    g = None
    if X.grade is not None and Y.grade is not None:
        gX, gY = X.grade, Y.grade
        g = lambda lab: gX(lab[1]) if lab[0] == "s" else gY(lab[1])
    return FreeComplex(terms, diffs, grade=g, check=False)


def fiber(f: ChainMap, check=True) -> FreeComplex:
    """Cone(f)[-1]: term(i) = src^i (+) dst^{i-1}, d(x, y) = (dx, f(x) - dy)."""
    if check:
        f.verify()
    X, Y = f.src, f.dst
    terms = {}
    degs = set(X.degrees())
    degs.update(i + 1 for i in Y.degrees())
    for i in sorted(degs):
        labs = tuple(("s", l) for l in X.labels(i)) + tuple(("t", l) for l in Y.labels(i - 1))
        if labs:
            terms[i] = labs
    diffs = {}
    for i in terms:
        if i + 1 not in terms:
            continue
        nx, ny = X.dim(i), Y.dim(i - 1)
        mx, my = X.dim(i + 1), Y.dim(i)
        diffs[i] = block_matrix([
            [X.diff(i), Matrix.zeros(mx, ny)],
            [f.comp(i), Y.diff(i - 1).scale(-1)],
        ])
    g = None
    if X.grade is not None and Y.grade is not None:
        gX, gY = X.grade, Y.grade
        g = lambda lab: gX(lab[1]) if lab[0] == "s" else gY(lab[1])
    return FreeComplex(terms, diffs, grade=g, check=False)


def total_complex(rows, verticals, check=True) -> FreeComplex:
    """Total complex of a two-or-more-row double complex.

    Row j sits at cohomological offset +j (the paper's chain-degree -j row);
    its internal differential carries sign (-1)^j and verticals[j] maps row j
    to row j+1 as a degree-0 chain map.
    """
    if check:
        for v in verticals:
            v.verify()
    terms = {}
    for j, R in enumerate(rows):
        for i in R.degrees():
            terms.setdefault(i + j, [])
    for i in sorted(terms):
        labs = []
        for j, R in enumerate(rows):
            labs.extend((j, l) for l in R.labels(i - j))
        terms[i] = tuple(labs)
    terms = {i: t for i, t in terms.items() if t}
    diffs = {}
    for i in terms:
        if i + 1 not in terms:
            continue
        src_blocks = [(j, rows[j].dim(i - j)) for j in range(len(rows))]
        dst_blocks = [(j, rows[j].dim(i + 1 - j)) for j in range(len(rows))]
        grid = []
        for (jd, hd) in dst_blocks:
            grow = []
            for (js, ws) in src_blocks:
                if jd == js:
                    M = rows[js].diff(i - js)
                    if js % 2:
                        M = M.scale(-1)
                elif jd == js + 1:
                    M = verticals[js].comp(i - js)
                else:
                    M = Matrix.zeros(hd, ws)
                grow.append(M)
            grid.append(grow)
        diffs[i] = block_matrix(grid)
    g = None
    if all(R.grade is not None for R in rows):
        gs = [R.grade for R in rows]
        g = lambda lab: gs[lab[0]](lab[1])
    out = FreeComplex(terms, diffs, grade=g, check=False)
    if check:
        out.check_d2()
    return out


def direct_sum(complexes) -> FreeComplex:
    terms = {}
    for k, C in enumerate(complexes):
        for i in C.degrees():
            terms.setdefault(i, [])
    for i in terms:
        labs = []
        for k, C in enumerate(complexes):
            labs.extend((k, l) for l in C.labels(i))
        terms[i] = tuple(labs)
    terms = {i: t for i, t in terms.items() if t}
    diffs = {}
    for i in terms:
        if i + 1 not in terms:
            continue
        grid = [[complexes[k].diff(i) if k == k2 else
                 Matrix.zeros(complexes[k].dim(i + 1), complexes[k2].dim(i))
                 for k2 in range(len(complexes))] for k in range(len(complexes))]
        diffs[i] = block_matrix(grid)
    g = None
    if all(C.grade is not None for C in complexes):
        gs = [C.grade for C in complexes]
        g = lambda lab: gs[lab[0]](lab[1])
    return FreeComplex(terms, diffs, grade=g, check=False)
