"""Presented Hopf data: generator tables and their homomorphic extensions.

A HopfPresentation lists generators, each carrying a coproduct table (sum of
word-pairs), antipode and inverse-antipode tables (word-sums), a counit
constant, an additive weight, and a representing matrix on a fixed module V.
Words over the generators are never rewritten; every structure map extends
homomorphically (anti-homomorphically for the antipode) and all identity
checking happens after evaluation in End(V)^n.

Weights live on an integer lattice, pre-scaled so that half-integer weights
of the underlying root data become integers; the matching convention is that
the tables use q^2 where the usual deformation parameter would be q.
"""

from __future__ import annotations

from . import linalg
from .scalar import ONE, ZERO, Scalar, parse_scalar, weight_add, weight_neg, weight_zero

Word = tuple  # tuple of generator names; () is the unit


class HopfError(Exception):
    pass


class Generator:
    __slots__ = ("name", "weight", "epsilon", "delta", "gamma", "gamma_inv", "rho")

    def __init__(self, name, weight, epsilon, delta, gamma, gamma_inv, rho):
        self.name = name
        self.weight = tuple(weight)
        self.epsilon = epsilon
        self.delta = list(delta)          # [(word1, word2, coeff)]
        self.gamma = list(gamma)          # [(word, coeff)]
        self.gamma_inv = list(gamma_inv)  # [(word, coeff)]
        self.rho = linalg.mat(rho)


class HopfPresentation:
    """Immutable after construction; all derived data is cached."""

    def __init__(self, name, dim, coords, basis_weights, generators):
        self.name = name
        self.dim = dim
        self.coords = coords
        self.basis_weights = [tuple(w) for w in basis_weights]
        self.generators = {g.name: g for g in generators}
        if len(basis_weights) != dim:
            raise HopfError("one weight per basis vector is required")
        self._rho_cache = {(): linalg.identity(dim)}
        self._intertwiner = None

    # -- word-level structure maps ------------------------------------------

    def weight_of_word(self, word):
        w = weight_zero(self.coords)
        for name in word:
            w = weight_add(w, self.generators[name].weight)
        return w

    def rho_word(self, word):
        cached = self._rho_cache.get(word)
        if cached is not None:
            return cached
        g = self.generators[word[0]]
        out = linalg.mat_mul(g.rho, self.rho_word(word[1:]))
        self._rho_cache[word] = out
        return out

    def grouplike_generators(self):
        """Names of the abelian weight subalgebra H: generators with a
        single-term grouplike coproduct g|g."""
        out = []
        for name, g in self.generators.items():
            if len(g.delta) == 1:
                w1, w2, c = g.delta[0]
                if w1 == (name,) and w2 == (name,) and c == ONE:
                    out.append(name)
        return out

    def antipode_intertwiner(self):
        """Invertible A with A * rho(x)^T * A^-1 = rho(antipode(x)) for all x.

        Exists whenever V is self-dual; derived by solving the linear system
        on the generators and verified before use.
        """
        if self._intertwiner is not None:
            return self._intertwiner
        n = self.dim
        rows = []
        for g in self.generators.values():
            rt = linalg.mat_transpose(g.rho)
            rg = evaluate(antipode(element_from_word(self, (g.name,))))
            # A @ rt - rg @ A = 0, unknowns A[a][b] flattened row-major
            for i in range(n):
                for j in range(n):
                    row = [ZERO] * (n * n)
                    for k in range(n):
                        row[i * n + k] = row[i * n + k] + rt[k][j]
                        row[k * n + j] = row[k * n + j] - rg[i][k]
                    rows.append(tuple(row))
        basis = linalg.solve_right_nullspace(tuple(rows))
        candidates = list(basis)
        if len(basis) > 1:
            total = basis[0]
            for vec in basis[1:]:
                total = tuple(a + b for a, b in zip(total, vec))
            candidates.append(total)
        for vec in candidates:
            cand = tuple(tuple(vec[i * n + j] for j in range(n)) for i in range(n))
            try:
                linalg.mat_inv(cand)
            except linalg.SingularMatrixError:
                continue
            self._intertwiner = cand
            return cand
        raise HopfError("no invertible antipode intertwiner; module is not self-dual")

    # -- validation ----------------------------------------------------------

    def validate(self):
        """Check the evaluation-level Hopf axioms; returns a list of failures."""
        problems = []
        dim = self.dim
        ident = linalg.identity(dim)
        for name, g in self.generators.items():
            x = element_from_word(self, (name,))
            # weight grading of rho
            for i in range(dim):
                for j in range(dim):
                    if g.rho[i][j].num:
                        expect = weight_add(self.basis_weights[j], g.weight)
                        if tuple(expect) != tuple(self.basis_weights[i]):
                            problems.append(f"{name}: rho breaks the weight grading at ({i},{j})")
            # counit axioms (eps (x) id) Delta = id = (id (x) eps) Delta
            left = linalg.zeros(dim)
            right = linalg.zeros(dim)
            for w1, w2, c in g.delta:
                left = linalg.mat_add(left, linalg.mat_scale(self.rho_word(w2), c * counit_word(self, w1)))
                right = linalg.mat_add(right, linalg.mat_scale(self.rho_word(w1), c * counit_word(self, w2)))
            if left != g.rho:
                problems.append(f"{name}: (eps x id) coproduct does not evaluate to rho")
            if right != g.rho:
                problems.append(f"{name}: (id x eps) coproduct does not evaluate to rho")
            # antipode axioms m(gamma x id)Delta = eps * 1 = m(id x gamma)Delta
            acc1 = linalg.zeros(dim)
            acc2 = linalg.zeros(dim)
            for w1, w2, c in g.delta:
                g1 = evaluate(antipode(element_from_word(self, w1)))
                g2 = evaluate(antipode(element_from_word(self, w2)))
                acc1 = linalg.mat_add(acc1, linalg.mat_scale(linalg.mat_mul(g1, self.rho_word(w2)), c))
                acc2 = linalg.mat_add(acc2, linalg.mat_scale(linalg.mat_mul(self.rho_word(w1), g2), c))
            target = linalg.mat_scale(ident, g.epsilon)
            if acc1 != target:
                problems.append(f"{name}: antipode axiom m(gamma x id)Delta failed")
            if acc2 != target:
                problems.append(f"{name}: antipode axiom m(id x gamma)Delta failed")
            # gamma_inv really inverts gamma at evaluation level
            if evaluate(antipode_inv(antipode(x))) != g.rho:
                problems.append(f"{name}: gamma_inv does not invert gamma")
            if evaluate(antipode(antipode_inv(x))) != g.rho:
                problems.append(f"{name}: gamma does not invert gamma_inv")
            # coassociativity at evaluation level on V^3
            lhs = _eval_tensor(self, coproduct_iter(x, 3, (0, 1, 2), _bracket="left"))
            rhs = _eval_tensor(self, coproduct_iter(x, 3, (0, 1, 2), _bracket="right"))
            if lhs != rhs:
                problems.append(f"{name}: coproduct not coassociative at evaluation level")
            # weight additivity of the tables
            for w1, w2, _ in g.delta:
                if weight_add(self.weight_of_word(w1), self.weight_of_word(w2)) != g.weight:
                    problems.append(f"{name}: coproduct table breaks weight additivity")
            # the antipode preserves the adjoint weight grading
            for w, _ in g.gamma:
                if self.weight_of_word(w) != g.weight:
                    problems.append(f"{name}: antipode table breaks the weight grading")
        # the intertwiner must exist and match gamma on every generator
        A = self.antipode_intertwiner()
        Ainv = linalg.mat_inv(A)
        for name, g in self.generators.items():
            via_a = linalg.mat_mul(A, linalg.mat_mul(linalg.mat_transpose(g.rho), Ainv))
            direct = evaluate(antipode(element_from_word(self, (name,))))
            if via_a != direct:
                problems.append(f"{name}: antipode intertwiner mismatch")
        return problems


class HopfElement:
    """Formal sum of generator words with Scalar coefficients."""

    __slots__ = ("presentation", "terms")

    def __init__(self, presentation, terms):
        self.presentation = presentation
        merged = {}
        for word, c in (terms.items() if isinstance(terms, dict) else terms):
            s = merged.get(word)
            s = c if s is None else s + c
            if s.num:
                merged[word] = s
            elif word in merged:
                del merged[word]
        self.terms = merged

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            s = c if s is None else s + c
            if s.num:
                out[w] = s
            elif w in out:
                del out[w]
        return HopfElement(self.presentation, out)

    def __neg__(self):
        return HopfElement(self.presentation, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Scalar):
            return HopfElement(self.presentation, {w: c * other for w, c in self.terms.items()})
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                s = out.get(w)
                s = c if s is None else s + c
                if s.num:
                    out[w] = s
                elif w in out:
                    del out[w]
        return HopfElement(self.presentation, out)

    def __rmul__(self, other):
        if isinstance(other, Scalar):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        return isinstance(other, HopfElement) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "HopfElement(0)"
        bits = [f"({c!r})*{'.'.join(w) or '1'}" for w, c in sorted(self.terms.items())]
        return "HopfElement(" + " + ".join(bits) + ")"


def element_from_word(presentation, word, coeff=ONE):
    return HopfElement(presentation, {tuple(word): coeff})


def unit(presentation):
    return element_from_word(presentation, ())


def antipode(x):
    """Anti-homomorphic extension of the generator antipode tables."""
    pres = x.presentation
    out = HopfElement(pres, {})
    for word, c in x.terms.items():
        acc = element_from_word(pres, (), c)
        for name in reversed(word):
            img = HopfElement(pres, {tuple(w): k for w, k in pres.generators[name].gamma})
            acc = acc * img
        out = out + acc
    return out


def antipode_inv(x):
    pres = x.presentation
    out = HopfElement(pres, {})
    for word, c in x.terms.items():
        acc = element_from_word(pres, (), c)
        for name in reversed(word):
            img = HopfElement(pres, {tuple(w): k for w, k in pres.generators[name].gamma_inv})
            acc = acc * img
        out = out + acc
    return out


def counit_word(pres, word):
    c = ONE
    for name in word:
        c = c * pres.generators[name].epsilon
        if not c.num:
            return ZERO
    return c


def counit(x):
    total = ZERO
    for word, c in x.terms.items():
        total = total + c * counit_word(x.presentation, word)
    return total


def evaluate(x):
    """Representation matrix of x on V; an algebra homomorphism."""
    pres = x.presentation
    out = linalg.zeros(pres.dim)
    for word, c in x.terms.items():
        out = linalg.mat_add(out, linalg.mat_scale(pres.rho_word(word), c))
    return out


def coproduct_word(pres, word):
    """Delta(word) as [(word1, word2, coeff)], multiplying the tables out."""
    terms = [((), (), ONE)]
    for name in word:
        table = pres.generators[name].delta
        new = []
        for w1, w2, c in terms:
            for d1, d2, k in table:
                new.append((w1 + d1, w2 + d2, c * k))
        terms = new
    return terms


def coproduct_iter(x, n, sigma, _bracket="left"):
    """Iterated coproduct with permuted slots.

    Returns rank-n word tensors as [(words_tuple, coeff)].  sigma is a tuple
    with sigma[i] = destination slot of tensor factor i.
    """
    if n < 1:
        raise HopfError("coproduct arity must be at least 1")
    pres = x.presentation
    if len(sigma) != n or sorted(sigma) != list(range(n)):
        raise HopfError(f"not a permutation of {n} slots: {sigma}")
    terms = [(tuple([word]), c) for word, c in x.terms.items()]
    for step in range(n - 1):
        new = []
        # split the leftmost slot for the "left" bracketing, the last for "right"
        slot = 0 if _bracket == "left" else len(terms[0][0]) - 1 if terms else 0
        for words, c in terms:
            for w1, w2, k in coproduct_word(pres, words[slot]):
                new.append((words[:slot] + (w1, w2) + words[slot + 1:], c * k))
        terms = new
    out = []
    for words, c in terms:
        permuted = [None] * n
        for i, w in enumerate(words):
            permuted[sigma[i]] = w
        out.append((tuple(permuted), c))
    return out


def _eval_tensor(pres, terms, n=None):
    if n is None:
        n = len(terms[0][0])
    out = linalg.zeros(pres.dim ** n)
    for words, c in terms:
        m = pres.rho_word(words[0])
        for w in words[1:]:
            m = linalg.kron(m, pres.rho_word(w))
        out = linalg.mat_add(out, linalg.mat_scale(m, c))
    return out


# --------------------------------------------------------------------------
# built-in presentation: the rank-one quantum group on a 2-dimensional module
# --------------------------------------------------------------------------

def builtin_uqsl2():
    """Generators E, F, K, Kbar on dim V = 2 with basis weights (+1, -1).

    Conventions (q2 = q^2 plays the usual deformation parameter):
      Delta(E) = E x 1 + K x E      gamma(E) = -Kbar*E
      Delta(F) = F x Kbar + 1 x F   gamma(F) = -F*K
      Delta(K) = K x K              gamma(K) = Kbar
    """
    q = Scalar.q
    E = Generator(
        "E",
        weight=(2,),
        epsilon=ZERO,
        delta=[(("E",), (), ONE), (("K",), ("E",), ONE)],
        gamma=[(("Kbar", "E"), -ONE)],
        gamma_inv=[(("Kbar", "E"), -q(4))],
        rho=[[ZERO, ONE], [ZERO, ZERO]],
    )
    F = Generator(
        "F",
        weight=(-2,),
        epsilon=ZERO,
        delta=[(("F",), ("Kbar",), ONE), ((), ("F",), ONE)],
        gamma=[(("F", "K"), -ONE)],
        gamma_inv=[(("F", "K"), -q(-4))],
        rho=[[ZERO, ZERO], [ONE, ZERO]],
    )
    K = Generator(
        "K",
        weight=(0,),
        epsilon=ONE,
        delta=[(("K",), ("K",), ONE)],
        gamma=[(("Kbar",), ONE)],
        gamma_inv=[(("Kbar",), ONE)],
        rho=[[q(2), ZERO], [ZERO, q(-2)]],
    )
    Kbar = Generator(
        "Kbar",
        weight=(0,),
        epsilon=ONE,
        delta=[(("Kbar",), ("Kbar",), ONE)],
        gamma=[(("K",), ONE)],
        gamma_inv=[(("K",), ONE)],
        rho=[[q(-2), ZERO], [ZERO, q(2)]],
    )
    return HopfPresentation(
        name="uqsl2",
        dim=2,
        coords=1,
        basis_weights=[(1,), (-1,)],
        generators=[E, F, K, Kbar],
    )


def builtin_rmatrix(pres):
    """Image of the quasitriangular structure on V x V for builtin_uqsl2.

    Cartan part q^(w_i * w_j) on the weight basis, nilpotent part
    (q^2 - q^-2) F x E; verified against the coproduct-intertwining axiom
    by the twist-module tests.
    """
    dim = pres.dim
    lam = Scalar.q(2) - Scalar.q(-2)
    cart = []
    for i in range(dim):
        for j in range(dim):
            wi = sum(pres.basis_weights[i])
            wj = sum(pres.basis_weights[j])
            cart.append((i * dim + j, Scalar.q(wi * wj)))
    out = [[ZERO] * (dim * dim) for _ in range(dim * dim)]
    for idx, c in cart:
        out[idx][idx] = c
    fe = linalg.kron(pres.rho_word(("F",)), pres.rho_word(("E",)))
    cartm = linalg.mat(out)
    return linalg.mat_add(cartm, linalg.mat_mul(cartm, linalg.mat_scale(fe, lam)))


# --------------------------------------------------------------------------
# presentation text format
# --------------------------------------------------------------------------

def _parse_word(text):
    text = text.strip()
    if text in ("1", ""):
        return ()
    return tuple(part.strip() for part in text.split("*"))


def _parse_word_sum(text):
    """`-q^2*Kbar*E + F*K` -> [(word, coeff)]; a leading scalar factor is
    split off by treating every '*'-joined prefix of scalar tokens as the
    coefficient."""
    out = []
    for chunk in _split_sum(text):
        word, coeff = _split_coeff_word(chunk)
        out.append((word, coeff))
    return out


def _split_sum(text):
    parts = []
    depth = 0
    cur = ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and cur.strip():
            parts.append(cur)
            cur = ch
        else:
            cur += ch
    if cur.strip():
        parts.append(cur)
    return parts


def _split_coeff_word(chunk):
    chunk = chunk.strip()
    sign = ONE
    while chunk and chunk[0] in "+-":
        if chunk[0] == "-":
            sign = -sign
        chunk = chunk[1:].strip()
    factors = []
    depth = 0
    cur = ""
    for ch in chunk:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "*" and depth == 0:
            factors.append(cur)
            cur = ""
        else:
            cur += ch
    if cur:
        factors.append(cur)
    coeff = sign
    word = []
    for f in factors:
        f = f.strip()
        if f and (f[0].isupper()):
            word.append(f)
        elif f in ("1", ""):
            continue
        else:
            coeff = coeff * parse_scalar(f)
    return tuple(word), coeff


def _parse_matrix(text):
    rows = []
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    for row_text in body.split(";"):
        row = [parse_scalar(x) for x in row_text.split(",")]
        rows.append(row)
    return rows


def parse_presentation(lines):
    """Parse the presentation block of an instance file (list of lines)."""
    dim = None
    coords = 1
    weights = None
    gens = []
    cur = None

    def flush():
        if cur is not None:
            for field in ("weight", "epsilon", "delta", "gamma", "gammainv", "rho"):
                if field not in cur:
                    raise HopfError(f"generator {cur['name']} is missing '{field}:'")
            gens.append(
                Generator(
                    cur["name"],
                    cur["weight"],
                    cur["epsilon"],
                    cur["delta"],
                    cur["gamma"],
                    cur["gammainv"],
                    cur["rho"],
                )
            )

    for raw in lines:
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, value = line.partition(":")
        key = key.strip().lower()
        value = value.strip()
        if key == "dim":
            dim = int(value)
        elif key == "coords":
            coords = int(value)
        elif key == "weights":
            weights = [(int(w),) for w in value.split()]
        elif key == "generator":
            flush()
            cur = {"name": value}
        elif key == "weight":
            cur["weight"] = tuple(int(w) for w in value.split())
        elif key == "epsilon":
            cur["epsilon"] = parse_scalar(value)
        elif key == "delta":
            terms = []
            for chunk in _split_sum(value):
                left, _, right = chunk.partition("|")
                word1, c1 = _split_coeff_word(left)
                word2, c2 = _split_coeff_word(right)
                terms.append((word1, word2, c1 * c2))
            cur["delta"] = terms
        elif key == "gamma":
            cur["gamma"] = _parse_word_sum(value)
        elif key == "gammainv":
            cur["gammainv"] = _parse_word_sum(value)
        elif key == "rho":
            cur["rho"] = _parse_matrix(value)
        else:
            raise HopfError(f"unknown presentation field '{key}'")
    flush()
    if dim is None or weights is None:
        raise HopfError("presentation requires 'dim:' and 'weights:'")
    return HopfPresentation("loaded", dim, coords, weights, gens)


def format_presentation(pres):
    from .scalar import format_scalar

    def word_str(w):
        return "*".join(w) if w else "1"

    def sum_str(terms):
        return " + ".join(f"({format_scalar(c)})*{word_str(w)}" for w, c in terms)

    lines = [f"dim: {pres.dim}", f"coords: {pres.coords}",
             "weights: " + " ".join(str(w[0]) for w in pres.basis_weights)]
    for name, g in pres.generators.items():
        lines.append(f"generator: {name}")
        lines.append("weight: " + " ".join(str(w) for w in g.weight))
        lines.append(f"epsilon: {format_scalar(g.epsilon)}")
        lines.append("delta: " + " + ".join(
            f"({format_scalar(c)})*{word_str(w1)}|{word_str(w2)}" for w1, w2, c in g.delta))
        lines.append("gamma: " + sum_str(g.gamma))
        lines.append("gammainv: " + sum_str(g.gamma_inv))
        rows = "; ".join(", ".join(format_scalar(x) for x in row) for row in g.rho)
        lines.append(f"rho: [{rows}]")
    return lines
