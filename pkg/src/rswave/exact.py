"""Exact polynomial arithmetic over a fixed physics variable set.

Sparse multivariate polynomials with rational-complex coefficients
(arbitrary-precision ``Fraction`` real and imaginary parts), plus
matrices of them.  Every operation is exact: a verified identity is a
machine check that a residual polynomial is *identically* zero, never a
floating-point "small enough".

Variables, in canonical order: E, px, py, pz, m, c, pt.  ``pt`` stands
for the energy divided by the wave speed; it is a separate generator so
the ring stays free of division (see the bridging check in the test
suite, which asserts pt*c = E where the two appear together).
"""

from fractions import Fraction

VARIABLES = ("E", "px", "py", "pz", "m", "c", "pt")

_INDEX = {name: i for i, name in enumerate(VARIABLES)}
_NV = len(VARIABLES)
_ZERO_EXP = (0,) * _NV


class RationalComplex:
    """Complex number a + b*i with exact rational a and b."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    @staticmethod
    def coerce(value):
        if isinstance(value, RationalComplex):
            return value
        if isinstance(value, (int, Fraction)):
            return RationalComplex(value)
        if isinstance(value, complex):
            return RationalComplex(Fraction(value.real), Fraction(value.imag))
        raise TypeError(f"cannot interpret {value!r} as a rational complex number")

    def __add__(self, other):
        other = RationalComplex.coerce(other)
        return RationalComplex(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = RationalComplex.coerce(other)
        return RationalComplex(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return RationalComplex.coerce(other) - self

    def __mul__(self, other):
        other = RationalComplex.coerce(other)
        return RationalComplex(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RationalComplex.coerce(other)
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise ZeroDivisionError("division by zero rational complex")
        return RationalComplex(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def __neg__(self):
        return RationalComplex(-self.re, -self.im)

    def conjugate(self):
        return RationalComplex(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            other = RationalComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def to_complex(self):
        return complex(self.re) + 1j * complex(self.im)

    def __repr__(self):
        return f"RationalComplex({self.re!s}, {self.im!s})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


_RC_ZERO = RationalComplex(0)
_RC_ONE = RationalComplex(1)
I_UNIT = RationalComplex(0, 1)


def _as_poly(value):
    if isinstance(value, Poly):
        return value
    return Poly.constant(value)


class Poly:
    """Sparse polynomial: map from exponent tuples to nonzero coefficients.

    Canonical form is maintained by construction -- zero coefficients are
    never stored, so equality is plain dictionary comparison.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        data = {}
        if terms:
            for exps, coeff in terms.items():
                exps = tuple(exps)
                if len(exps) != _NV or any(e < 0 or not isinstance(e, int) for e in exps):
                    raise ValueError(f"bad exponent tuple {exps!r}")
                coeff = RationalComplex.coerce(coeff)
                if coeff:
                    data[exps] = data[exps] + coeff if exps in data else coeff
                    if not data[exps]:
                        del data[exps]
        self._terms = data

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def constant(cls, value):
        coeff = RationalComplex.coerce(value)
        p = cls.__new__(cls)
        p._terms = {_ZERO_EXP: coeff} if coeff else {}
        return p

    @classmethod
    def one(cls):
        return cls.constant(1)

    @classmethod
    def variable(cls, name):
        if name not in _INDEX:
            raise KeyError(f"unknown variable {name!r}; choose from {VARIABLES}")
        exps = tuple(1 if i == _INDEX[name] else 0 for i in range(_NV))
        p = cls.__new__(cls)
        p._terms = {exps: _RC_ONE}
        return p

    @property
    def is_zero(self):
        return not self._terms

    @property
    def nterms(self):
        return len(self._terms)

    def sorted_terms(self):
        """Terms in canonical (lexicographic exponent) order."""
        return sorted(self._terms.items())

    def __add__(self, other):
        if isinstance(other, PolyMatrix):
            return NotImplemented
        other = _as_poly(other)
        data = dict(self._terms)
        for exps, coeff in other._terms.items():
            if exps in data:
                s = data[exps] + coeff
                if s:
                    data[exps] = s
                else:
                    del data[exps]
            else:
                data[exps] = coeff
        p = Poly.__new__(Poly)
        p._terms = data
        return p

    __radd__ = __add__

    def __neg__(self):
        p = Poly.__new__(Poly)
        p._terms = {exps: -coeff for exps, coeff in self._terms.items()}
        return p

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, PolyMatrix):
            return NotImplemented
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        data = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                if exps in data:
                    s = data[exps] + prod
                    if s:
                        data[exps] = s
                    else:
                        del data[exps]
                else:
                    data[exps] = prod
        p = Poly.__new__(Poly)
        p._terms = data
        return p

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, RationalComplex, complex)):
            other = Poly.constant(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None

    def evaluate(self, point):
        """Exact value at a point: dict from variable name to rational(-complex)."""
        values = {}
        for name, v in point.items():
            values[_INDEX[name]] = RationalComplex.coerce(v)
        total = RationalComplex(0)
        for exps, coeff in self._terms.items():
            term = coeff
            for i, e in enumerate(exps):
                if e:
                    if i not in values:
                        raise KeyError(f"no value supplied for variable {VARIABLES[i]!r}")
                    base = values[i]
                    for _ in range(e):
                        term = term * base
            total = total + term
        return total

    def substitute(self, point):
        """Partial evaluation: substitute exact values for a subset of variables."""
        values = {_INDEX[name]: RationalComplex.coerce(v) for name, v in point.items()}
        data = {}
        for exps, coeff in self._terms.items():
            new_exps = list(exps)
            term = coeff
            for i, v in values.items():
                e = exps[i]
                if e:
                    for _ in range(e):
                        term = term * v
                    new_exps[i] = 0
            if not term:
                continue
            key = tuple(new_exps)
            if key in data:
                s = data[key] + term
                if s:
                    data[key] = s
                else:
                    del data[key]
            else:
                data[key] = term
        p = Poly.__new__(Poly)
        p._terms = data
        return p

    def coefficient_of(self, name, power):
        """The polynomial coefficient of name**power (the variable removed)."""
        i = _INDEX[name]
        data = {}
        for exps, coeff in self._terms.items():
            if exps[i] == power:
                key = exps[:i] + (0,) + exps[i + 1:]
                data[key] = coeff
        p = Poly.__new__(Poly)
        p._terms = data
        return p

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for exps, coeff in self.sorted_terms():
            factors = []
            for i, e in enumerate(exps):
                if e == 1:
                    factors.append(VARIABLES[i])
                elif e > 1:
                    factors.append(f"{VARIABLES[i]}^{e}")
            mono = "*".join(factors)
            cs = str(coeff)
            if ("+" in cs[1:]) or ("-" in cs[1:]):
                cs = f"({cs})"
            parts.append(f"{cs}*{mono}" if mono else cs)
        return " + ".join(parts)

    def __repr__(self):
        return f"Poly({self})"


def variables():
    """Generator polynomials for the full variable set, keyed by name."""
    return {name: Poly.variable(name) for name in VARIABLES}


class PolyMatrix:
    """Dense matrix of exact polynomials."""

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, rows):
        rows = [tuple(_as_poly(v) for v in row) for row in rows]
        if not rows or not rows[0]:
            raise ValueError("matrix must be non-empty")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        self.nrows = len(rows)
        self.ncols = width
        self._rows = tuple(rows)

    @classmethod
    def identity(cls, n):
        one = Poly.one()
        zero = Poly.zero()
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, nrows, ncols=None):
        if ncols is None:
            ncols = nrows
        zero = Poly.zero()
        return cls([[zero] * ncols for _ in range(nrows)])

    def entry(self, i, j):
        return self._rows[i][j]

    def rows(self):
        return self._rows

    def __add__(self, other):
        self._check_shape(other)
        return PolyMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self._rows, other._rows)]
        )

    def __sub__(self, other):
        self._check_shape(other)
        return PolyMatrix(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self._rows, other._rows)]
        )

    def __neg__(self):
        return PolyMatrix([[-a for a in row] for row in self._rows])

    def __mul__(self, other):
        if isinstance(other, PolyMatrix):
            if self.ncols != other.nrows:
                raise ValueError(
                    f"shape mismatch: ({self.nrows},{self.ncols}) @ ({other.nrows},{other.ncols})"
                )
            cols = list(zip(*other._rows))
            out = []
            for row in self._rows:
                out.append(
                    [_dot(row, col) for col in cols]
                )
            return PolyMatrix(out)
        other = _as_poly(other)
        return PolyMatrix([[a * other for a in row] for row in self._rows])

    def __rmul__(self, other):
        # scalar * matrix; matrix @ matrix goes through __mul__
        other = _as_poly(other)
        return PolyMatrix([[other * a for a in row] for row in self._rows])

    def transpose(self):
        return PolyMatrix([list(col) for col in zip(*self._rows)])

    def map_entries(self, fn):
        return PolyMatrix([[fn(a) for a in row] for row in self._rows])

    @property
    def is_zero(self):
        return all(a.is_zero for row in self._rows for a in row)

    @property
    def nterms(self):
        return sum(a.nterms for row in self._rows for a in row)

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (
            self.nrows == other.nrows
            and self.ncols == other.ncols
            and self._rows == other._rows
        )

    __hash__ = None

    def evaluate(self, point):
        """Exact matrix of RationalComplex values at the point."""
        return tuple(tuple(a.evaluate(point) for a in row) for row in self._rows)

    def _check_shape(self, other):
        if not isinstance(other, PolyMatrix):
            raise TypeError("expected a PolyMatrix")
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValueError("shape mismatch")

    def __str__(self):
        return "\n".join("[" + ", ".join(str(a) for a in row) + "]" for row in self._rows)

    def __repr__(self):
        return f"PolyMatrix({self.nrows}x{self.ncols})"


def _dot(row, col):
    acc = Poly.zero()
    for a, b in zip(row, col):
        acc = acc + a * b
    return acc


def num_matmul(a, b):
    """Plain matrix product of nested RationalComplex tuples (numeric path)."""
    bt = list(zip(*b))
    out = []
    for row in a:
        out.append(
            tuple(_num_dot(row, col) for col in bt)
        )
    return tuple(out)


def _num_dot(row, col):
    acc = RationalComplex(0)
    for x, y in zip(row, col):
        acc = acc + x * y
    return acc


def num_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(r1, r2)) for r1, r2 in zip(a, b))


def num_is_zero(a):
    return all(not x for row in a for x in row)
