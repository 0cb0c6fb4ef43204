"""Exact univariate and multivariate polynomial arithmetic over the rationals.

Univariate polynomials (:class:`UPoly`) are dense coefficient sequences,
multivariate polynomials (:class:`MPoly`) are sparse maps from exponent
vectors to nonzero rational coefficients.  All arithmetic is exact.
"""

from __future__ import annotations

from fractions import Fraction

#: Degree of the zero polynomial.  Compares smaller than every integer.
NEG_INF = float("-inf")

#: Per-variable exponent cap enforced by the parser and by ``__pow__``.
MAX_EXPONENT = 64


class PolyParseError(ValueError):
    """Syntax or semantic error in polynomial text, with the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UPoly:
    """Dense univariate polynomial; ``coeffs[i]`` is the coefficient of X^i.

    The trailing (highest-index) coefficient is nonzero unless the polynomial
    is zero, in which case ``coeffs`` is empty.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> "UPoly":
        return cls()

    @classmethod
    def one(cls) -> "UPoly":
        return cls((1,))

    @classmethod
    def x(cls) -> "UPoly":
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> "UPoly":
        return cls((c,))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self):
        """Degree, or ``NEG_INF`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def lc(self) -> Fraction:
        """Leading coefficient; zero for the zero polynomial."""
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> "UPoly":
        """Divide by the leading coefficient; zero stays zero."""
        if self.is_zero or self.coeffs[-1] == 1:
            return self
        lead = self.coeffs[-1]
        return UPoly(c / lead for c in self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, UPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self) -> "UPoly":
        return UPoly(-c for c in self.coeffs)

    def __add__(self, other) -> "UPoly":
        other = _as_upoly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        res = list(a)
        for i, c in enumerate(b):
            res[i] += c
        return UPoly(res)

    __radd__ = __add__

    def __sub__(self, other) -> "UPoly":
        other = _as_upoly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "UPoly":
        return _as_upoly(other) - self

    def __mul__(self, other) -> "UPoly":
        if isinstance(other, (int, Fraction)):
            return UPoly(c * other for c in self.coeffs)
        if not isinstance(other, UPoly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return UPoly()
        res = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                res[i + j] += a * b
        return UPoly(res)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UPoly":
        if n < 0:
            raise ValueError("negative exponent")
        result = UPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "UPoly"):
        """Exact polynomial division with remainder."""
        if not isinstance(other, UPoly):
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd, dg = len(rem) - 1, len(other.coeffs) - 1
        if dd < dg:
            return UPoly(), self
        lead = other.coeffs[-1]
        quo = [Fraction(0)] * (dd - dg + 1)
        for k in range(dd - dg, -1, -1):
            c = rem[k + dg] / lead
            if c == 0:
                continue
            quo[k] = c
            for j, b in enumerate(other.coeffs):
                rem[k + j] -= c * b
        return UPoly(quo), UPoly(rem[:dg])

    def __mod__(self, other: "UPoly") -> "UPoly":
        return divmod(self, other)[1]

    def __floordiv__(self, other: "UPoly") -> "UPoly":
        return divmod(self, other)[0]

    def derivative(self) -> "UPoly":
        return UPoly(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def eval(self, x) -> Fraction:
        """Exact evaluation by Horner's rule."""
        x = x if isinstance(x, Fraction) else Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose_neg(self) -> "UPoly":
        """Return f(-X): flips the sign of every odd-degree coefficient."""
        return UPoly(-c if i % 2 else c for i, c in enumerate(self.coeffs))

    def to_mpoly(self) -> "MPoly":
        return MPoly(1, {(i,): c for i, c in enumerate(self.coeffs) if c != 0})

    def __str__(self) -> str:
        return str(self.to_mpoly())

    def __repr__(self) -> str:
        return f"UPoly({list(self.coeffs)!r})"


def _as_upoly(value):
    if isinstance(value, UPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return UPoly((value,))
    return NotImplemented


def gcd_upoly(f: UPoly, g: UPoly) -> UPoly:
    """Monic greatest common divisor by the Euclidean algorithm; gcd(0,0)=0."""
    while not g.is_zero:
        f, g = g, f % g
    return f.monic()


def sign_changes(f: UPoly) -> int:
    """Number of sign changes in the ordered nonzero coefficients of f."""
    if f.is_zero:
        raise ValueError("sign changes of the zero polynomial are undefined")
    signs = [c > 0 for c in f.coeffs if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


class MPoly:
    """Sparse multivariate polynomial: exponent vector -> nonzero coefficient."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean = {}
        for alpha, c in (terms or {}).items():
            alpha = tuple(int(e) for e in alpha)
            if len(alpha) != nvars:
                raise ValueError(f"exponent vector {alpha} has wrong length for {nvars} variables")
            c = c if isinstance(c, Fraction) else Fraction(c)
            if c != 0:
                clean[alpha] = c
        self.terms = clean

    @classmethod
    def zero(cls, nvars: int) -> "MPoly":
        return cls(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "MPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "MPoly":
        """The variable x_i (1-based)."""
        if not 1 <= i <= nvars:
            raise ValueError(f"variable index {i} out of range 1..{nvars}")
        alpha = [0] * nvars
        alpha[i - 1] = 1
        return cls(nvars, {tuple(alpha): 1})

    @classmethod
    def monomial(cls, alpha, coeff=1) -> "MPoly":
        return cls(len(alpha), {tuple(alpha): coeff})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self):
        return max((sum(a) for a in self.terms), default=NEG_INF)

    def degree_in(self, i: int) -> int:
        """Largest exponent of variable x_i (1-based); 0 for the zero polynomial."""
        return max((a[i - 1] for a in self.terms), default=0)

    def support(self) -> list[tuple[int, ...]]:
        return sorted(self.terms, key=_grlex_key)

    def coeff(self, alpha) -> Fraction:
        return self.terms.get(tuple(alpha), Fraction(0))

    def __eq__(self, other) -> bool:
        return isinstance(other, MPoly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __neg__(self) -> "MPoly":
        return MPoly(self.nvars, {a: -c for a, c in self.terms.items()})

    def _coerce(self, other):
        if isinstance(other, MPoly):
            if other.nvars != self.nvars:
                raise ValueError("mixed variable counts")
            return other
        if isinstance(other, (int, Fraction)):
            return MPoly.constant(self.nvars, other)
        return None

    def __add__(self, other) -> "MPoly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for a, c in other.terms.items():
            terms[a] = terms.get(a, Fraction(0)) + c
        return MPoly(self.nvars, terms)

    __radd__ = __add__

    def __sub__(self, other) -> "MPoly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "MPoly":
        if isinstance(other, (int, Fraction)):
            return MPoly(self.nvars, {a: c * other for a, c in self.terms.items()})
        if not isinstance(other, MPoly):
            return NotImplemented
        if other.nvars != self.nvars:
            raise ValueError("mixed variable counts")
        terms: dict = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                key = tuple(x + y for x, y in zip(a, b))
                terms[key] = terms.get(key, Fraction(0)) + ca * cb
        return MPoly(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MPoly":
        if n < 0:
            raise ValueError("negative exponent")
        result = MPoly.constant(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def eval(self, point) -> Fraction:
        """Exact evaluation at a rational point."""
        pt = [x if isinstance(x, Fraction) else Fraction(x) for x in point]
        if len(pt) != self.nvars:
            raise ValueError(f"point has length {len(pt)}, expected {self.nvars}")
        total = Fraction(0)
        for alpha, c in self.terms.items():
            v = c
            for x, e in zip(pt, alpha):
                if e:
                    v *= x**e
            total += v
        return total

    def derivative(self, i: int) -> "MPoly":
        """Formal partial derivative with respect to x_i (1-based)."""
        if not 1 <= i <= self.nvars:
            raise ValueError(f"variable index {i} out of range 1..{self.nvars}")
        k = i - 1
        terms = {}
        for alpha, c in self.terms.items():
            e = alpha[k]
            if e == 0:
                continue
            beta = alpha[:k] + (e - 1,) + alpha[k + 1 :]
            terms[beta] = terms.get(beta, Fraction(0)) + c * e
        return MPoly(self.nvars, terms)

    def homogenize(self) -> "MPoly":
        """Homogenization with a fresh variable in the first position.

        The result has ``nvars + 1`` variables and is homogeneous of the same
        total degree; dehomogenizing recovers the original polynomial.  The
        zero polynomial homogenizes to zero.
        """
        if self.is_zero:
            return MPoly.zero(self.nvars + 1)
        d = self.degree()
        terms = {(d - sum(a),) + a: c for a, c in self.terms.items()}
        return MPoly(self.nvars + 1, terms)

    def dehomogenize(self) -> "MPoly":
        """Substitute 1 for the first variable."""
        if self.nvars == 0:
            raise ValueError("no variable to dehomogenize")
        terms: dict = {}
        for alpha, c in self.terms.items():
            key = alpha[1:]
            terms[key] = terms.get(key, Fraction(0)) + c
        return MPoly(self.nvars - 1, terms)

    def leading_form(self) -> "MPoly":
        """Sum of the terms of maximal total degree; zero for the zero polynomial."""
        if self.is_zero:
            return self
        d = self.degree()
        return MPoly(self.nvars, {a: c for a, c in self.terms.items() if sum(a) == d})

    def to_upoly(self) -> UPoly:
        if self.nvars != 1:
            raise ValueError("only single-variable polynomials convert to UPoly")
        if not self.terms:
            return UPoly()
        coeffs = [Fraction(0)] * (max(a[0] for a in self.terms) + 1)
        for (e,), c in self.terms.items():
            coeffs[e] = c
        return UPoly(coeffs)

    def __str__(self) -> str:
        return poly_text(self)

    def __repr__(self) -> str:
        return f"MPoly({self.nvars}, {self.terms!r})"


def _grlex_key(alpha):
    # graded-lex: lower total degree first, then x1-major within a degree
    return (sum(alpha), tuple(-e for e in alpha))


def _var_name(index: int, nvars: int) -> str:
    if nvars <= 3:
        return "xyz"[index]
    return f"x{index + 1}"


def poly_text(f: MPoly) -> str:
    """Canonical text form: graded-lex descending terms, rational coefficients."""
    if f.is_zero:
        return "0"
    parts = []
    for alpha in sorted(f.terms, key=lambda a: (-sum(a), tuple(-e for e in a))):
        c = f.terms[alpha]
        mag = abs(c)
        factors = []
        for i, e in enumerate(alpha):
            if e == 1:
                factors.append(_var_name(i, f.nvars))
            elif e > 1:
                factors.append(f"{_var_name(i, f.nvars)}^{e}")
        if not factors or mag != 1:
            factors.insert(0, str(mag))
        body = "*".join(factors)
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"{'+' if c > 0 else '-'} {body}")
    return " ".join(parts)


def infer_nvars(text: str) -> int:
    """Smallest variable count covering every variable mentioned in the text."""
    n = 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "y":
            n = max(n, 2)
        elif ch == "z":
            n = max(n, 3)
        elif ch == "x":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            if j > i + 1:
                n = max(n, int(text[i + 1 : j]))
            i = j - 1
        i += 1
    return n


class _Parser:
    """Recursive-descent parser for the polynomial grammar.

    poly   := ws [sign] term (ws ('+'|'-') ws term)* ws
    term   := coef? ('*'? factor)*
    factor := var ('^' nat)?
    var    := 'x' nat | 'x' | 'y' | 'z'
    coef   := nat ('/' nat)?
    """

    def __init__(self, text: str, nvars: int):
        self.text = text
        self.pos = 0
        self.nvars = nvars

    def error(self, message: str):
        raise PolyParseError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in (" ", "\t", "\r", "\n"):
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take_nat(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected a number")
        return int(self.text[start : self.pos])

    def parse(self) -> MPoly:
        result = MPoly.zero(self.nvars)
        self.skip_ws()
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
            self.skip_ws()
        result = result + self.parse_term() * sign
        self.skip_ws()
        while self.peek() in ("+", "-"):
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
            self.skip_ws()
            result = result + self.parse_term() * sign
            self.skip_ws()
        if self.pos != len(self.text):
            self.error(f"unexpected character {self.text[self.pos]!r}")
        return result

    def parse_term(self) -> MPoly:
        coeff = Fraction(1)
        saw_coeff = False
        if self.peek().isdigit():
            num = self.take_nat()
            den = 1
            if self.peek() == "/":
                self.pos += 1
                den_pos = self.pos
                den = self.take_nat()
                if den == 0:
                    self.pos = den_pos
                    self.error("zero denominator")
            coeff = Fraction(num, den)
            saw_coeff = True
        exps = [0] * self.nvars
        saw_factor = False
        while True:
            save = self.pos
            self.skip_ws()
            if self.peek() == "*":
                self.pos += 1
                self.skip_ws()
                self.parse_factor(exps)
                saw_factor = True
                continue
            if self.peek() in ("x", "y", "z"):
                self.parse_factor(exps)
                saw_factor = True
                continue
            self.pos = save
            break
        if not saw_coeff and not saw_factor:
            self.error("expected a term")
        return MPoly(self.nvars, {tuple(exps): coeff})

    def parse_factor(self, exps: list):
        var_pos = self.pos
        ch = self.peek()
        if ch == "x":
            self.pos += 1
            if self.peek().isdigit():
                index = self.take_nat()
            else:
                index = 1
        elif ch == "y":
            self.pos += 1
            index = 2
        elif ch == "z":
            self.pos += 1
            index = 3
        else:
            self.error("expected a variable")
        if not 1 <= index <= self.nvars:
            self.pos = var_pos
            self.error(f"unknown variable x{index} with {self.nvars} variable(s)")
        power = 1
        if self.peek() == "^":
            self.pos += 1
            exp_pos = self.pos
            power = self.take_nat()
            if power > MAX_EXPONENT:
                self.pos = exp_pos
                self.error(f"exponent {power} exceeds the cap {MAX_EXPONENT}")
        exps[index - 1] += power
        if exps[index - 1] > MAX_EXPONENT:
            self.pos = var_pos
            self.error(f"accumulated exponent exceeds the cap {MAX_EXPONENT}")


def parse_poly(text: str, nvars: int | None = None) -> MPoly:
    """Parse polynomial text into an exact MPoly.

    Variables are x1..xn with aliases x, y, z for x1, x2, x3.  When ``nvars``
    is omitted it is inferred from the variables that occur.
    """
    if nvars is None:
        nvars = infer_nvars(text)
    return _Parser(text, nvars).parse()


def parse_upoly(text: str) -> UPoly:
    """Parse text that must denote a univariate polynomial in x."""
    return parse_poly(text, 1).to_upoly()
