"""Generator words for truncated para(co)cyclic objects, their canonical
normal forms, relation checking, and transport along Hom functors.

A word is a composable string of the four generator kinds

    d(n,i) : level n-1 -> n      (coface,        0 <= i <= n)
    s(n,j) : level n+1 -> n      (codegeneracy,  0 <= j <= n)
    t(n), t^-1(n) : level n -> n (cyclic operator and its inverse)

written left of the generators they follow, so text like "t(2).d(2,0)"
applies d(2,0) first. Normalization maps a word to the unique canonical
form (coface string) o (codegeneracy string) o (power of t at the source
level), with coface indices weakly increasing and codegeneracy indices
strictly increasing read left to right.

The normal form is computed semantically rather than by string rewriting:
a word denotes a monotone map F: Z -> Z with F(i + a + 1) = F(i) + b + 1
(a, b the source and target levels), composition of words being
composition of maps. The t-exponent is the unique shift putting the
window {0..a} inside {0..b}, and the simplicial part is read off from the
missing values and repeats of the shifted window. This implements the
tau-rightmost rewriting convention exactly, with uniqueness for free.
"""

from __future__ import annotations

import re

from .braiding import CategoryCtx, IdentityTwist, TrivialBraiding
from .errors import ShapeError, TruncationError, WordError
from .reports import Report, parallel_map
from .tensorcat import Mor, Obj, chain, compose, invert


_TOKEN_RE = re.compile(
    r"""(?P<kind>d|s|t\^-1|t|id)\(
        (?P<n>\d+)
        (?:,(?P<i>\d+))?
        \)""",
    re.VERBOSE,
)


class GenWord:
    """A level-checked generator string, stored in composition order
    (first element applied last)."""

    __slots__ = ("gens", "source", "target")

    def __init__(self, gens, source=None):
        gens = tuple(gens)
        level = None
        for g in reversed(gens):
            level = _check_token(g, level)
        if level is None:
            if source is None:
                raise WordError("empty word needs an explicit level")
            if source < 0:
                raise WordError("level must be nonnegative")
            self.source = self.target = source
        else:
            self.source = _token_source(gens[-1])
            if source is not None and source != self.source:
                raise WordError(
                    "declared source %d but word starts at %d"
                    % (source, self.source))
            self.target = _token_target(gens[0])
        self.gens = gens

    def __eq__(self, other):
        return (isinstance(other, GenWord) and self.gens == other.gens
                and self.source == other.source)

    def __hash__(self):
        return hash((self.gens, self.source))

    def __repr__(self):
        return "GenWord(%s)" % (self.text() or "id(%d)" % self.source)

    def text(self):
        return ".".join(_token_text(g) for g in self.gens)


def _token_source(g):
    kind, n = g[0], g[1]
    if kind == "d":
        return n - 1
    if kind == "s":
        return n + 1
    return n


def _token_target(g):
    return g[1]


def _check_token(g, level_below):
    """Validate one token given the level produced by the tokens to its
    right (None at the start); return the level it produces."""
    kind, n = g[0], g[1]
    if kind in ("d", "s"):
        i = g[2]
        if not 0 <= i <= n:
            raise WordError("index %d out of range for %s at level %d"
                            % (i, kind, n))
        if kind == "d" and n < 1:
            raise WordError("coface target level must be >= 1")
    elif kind not in ("t", "ti"):
        raise WordError("unknown generator kind %r" % (kind,))
    if n < 0:
        raise WordError("level must be nonnegative")
    src = _token_source(g)
    if level_below is not None and src != level_below:
        raise WordError(
            "generator %s starts at level %d but follows level %d"
            % (_token_text(g), src, level_below))
    return _token_target(g)


def _token_text(g):
    kind, n = g[0], g[1]
    if kind == "d":
        return "d(%d,%d)" % (n, g[2])
    if kind == "s":
        return "s(%d,%d)" % (n, g[2])
    if kind == "t":
        return "t(%d)" % n
    return "t^-1(%d)" % n


def parse_word(text):
    """Parse the dotted text syntax; "id(n)" alone denotes the empty word."""
    s = text.strip()
    if not s:
        raise WordError("empty input; write id(n) for the identity word")
    gens = []
    for part in s.split("."):
        part = part.strip()
        m = _TOKEN_RE.fullmatch(part)
        if m is None:
            raise WordError("cannot parse generator %r" % part)
        kind = m.group("kind")
        n = int(m.group("n"))
        i = m.group("i")
        if kind in ("d", "s"):
            if i is None:
                raise WordError("%s(...) needs two arguments in %r"
                                % (kind, part))
            gens.append((kind, n, int(i)))
        else:
            if i is not None:
                raise WordError("%s(...) takes one argument in %r"
                                % (kind, part))
            if kind == "id":
                if part != s:
                    raise WordError("id(n) must stand alone")
                return GenWord((), n)
            gens.append(("t", n) if kind == "t" else ("ti", n))
    return GenWord(gens)


# -- semantic model ------------------------------------------------------

class _ZMap:
    """Monotone F: Z -> Z with F(i + a + 1) = F(i) + b + 1, stored by its
    window values F(0..a)."""

    __slots__ = ("a", "b", "vals")

    def __init__(self, a, b, vals):
        self.a = a
        self.b = b
        self.vals = tuple(vals)

    def at(self, i):
        q, r = divmod(i, self.a + 1)
        return self.vals[r] + q * (self.b + 1)

    def after(self, other):
        """self o other."""
        if other.b != self.a:
            raise WordError("level mismatch in composition")
        return _ZMap(other.a, self.b, [self.at(v) for v in other.vals])


def _token_zmap(g):
    kind, n = g[0], g[1]
    if kind == "d":
        i = g[2]
        return _ZMap(n - 1, n, [j if j < i else j + 1 for j in range(n)])
    if kind == "s":
        j = g[2]
        return _ZMap(n + 1, n, [t if t <= j else t - 1 for t in range(n + 2)])
    if kind == "t":
        return _ZMap(n, n, [i - 1 for i in range(n + 1)])
    return _ZMap(n, n, [i + 1 for i in range(n + 1)])


class NormalForm:
    """Canonical factorization: cofaces (weakly increasing indices), then
    codegeneracies (strictly increasing), then tau^k at the source level."""

    __slots__ = ("source", "target", "cofaces", "codegens", "tau_exp")

    def __init__(self, source, target, cofaces, codegens, tau_exp):
        self.source = source
        self.target = target
        self.cofaces = tuple(cofaces)
        self.codegens = tuple(codegens)
        self.tau_exp = tau_exp

    def __eq__(self, other):
        return (isinstance(other, NormalForm)
                and self.source == other.source
                and self.target == other.target
                and self.cofaces == other.cofaces
                and self.codegens == other.codegens
                and self.tau_exp == other.tau_exp)

    def __hash__(self):
        return hash((self.source, self.target, self.cofaces,
                     self.codegens, self.tau_exp))

    def __repr__(self):
        w = self.to_word()
        return "NormalForm(%s)" % (w.text() or "id(%d)" % self.source)

    def to_word(self):
        """Rebuild the explicit generator word of this normal form."""
        gens = []
        level = self.source
        tail = []
        kind = "t" if self.tau_exp >= 0 else "ti"
        for _ in range(abs(self.tau_exp)):
            tail.append((kind, level))
        mid = []
        for j in reversed(self.codegens):
            level -= 1
            mid.append(("s", level, j))
        mid.reverse()
        head = []
        for i in reversed(self.cofaces):
            level += 1
            head.append(("d", level, i))
        head.reverse()
        gens = head + mid + tail
        return GenWord(gens, self.source)


def normalize(word):
    """Canonical form of a word; idempotent, and evaluation-invariant on
    any para(co)cyclic data satisfying the defining relations."""
    if not isinstance(word, GenWord):
        raise WordError("normalize wants a GenWord")
    F = _ZMap(word.source, word.source,
              list(range(word.source + 1)))
    for g in reversed(word.gens):
        F = _token_zmap(g).after(F)
    a, b = F.a, F.b
    # tau exponent: the unique shift k with 0 <= F(k) and F(k + a) <= b;
    # k = min{k : F(k) >= 0} has both, since F(k'+a) >= F(k) + b + 1 for
    # any later candidate. Jump near zero in whole periods, then settle.
    k = -(F.at(0) // (b + 1)) * (a + 1)
    while F.at(k - 1) >= 0:
        k -= 1
    window = [F.at(k + i) for i in range(a + 1)]
    if window[0] < 0 or window[-1] > b:
        raise WordError("no canonical shift exists; broken word semantics")
    repeats = [t for t in range(a) if window[t] == window[t + 1]]
    image = set(window)
    missing = [v for v in range(b + 1) if v not in image]
    cofaces = [d - t for t, d in enumerate(missing)]
    return NormalForm(a, b, cofaces, repeats, k)


# -- truncated para(co)cyclic data ---------------------------------------

class ParaCocyclicData:
    """Levels 0..N_max of a paracocyclic object with generator matrices.

    cofaces[n][i] : levels[n-1] -> levels[n]   (1 <= n <= N_max)
    codegens[n][j]: levels[n+1] -> levels[n]   (0 <= n <= N_max-1)
    tau[n]        : levels[n] -> levels[n], invertible
    """

    def __init__(self, ctx, levels, cofaces, codegens, tau, n_max):
        if n_max < 1 or len(levels) != n_max + 1:
            raise ShapeError("need levels 0..N_max with N_max >= 1")
        self.ctx = ctx
        self.levels = list(levels)
        self.cofaces = {n: list(cofaces[n]) for n in range(1, n_max + 1)}
        self.codegens = {n: list(codegens[n]) for n in range(n_max)}
        self.tau = list(tau)
        self.n_max = n_max
        for n in range(1, n_max + 1):
            if len(self.cofaces[n]) != n + 1:
                raise ShapeError("level %d wants %d cofaces" % (n, n + 1))
            for i, f in enumerate(self.cofaces[n]):
                if f.dom != levels[n - 1] or f.cod != levels[n]:
                    raise ShapeError("coface d(%d,%d) has wrong boundary"
                                     % (n, i))
        for n in range(n_max):
            if len(self.codegens[n]) != n + 1:
                raise ShapeError("level %d wants %d codegeneracies"
                                 % (n, n + 1))
            for j, f in enumerate(self.codegens[n]):
                if f.dom != levels[n + 1] or f.cod != levels[n]:
                    raise ShapeError("codegeneracy s(%d,%d) has wrong boundary"
                                     % (n, j))
        if len(self.tau) != n_max + 1:
            raise ShapeError("need tau at every level 0..N_max")
        self.tau_inv = []
        for n, t in enumerate(self.tau):
            if t.dom != levels[n] or t.cod != levels[n]:
                raise ShapeError("t(%d) must be an endomorphism of its level"
                                 % n)
            try:
                self.tau_inv.append(invert(t))
            except ValueError:
                raise ShapeError("t(%d) is not invertible" % n)

    def generator(self, g):
        kind, n = g[0], g[1]
        if kind == "d":
            if not 1 <= n <= self.n_max:
                raise TruncationError("coface level %d outside truncation %d"
                                      % (n, self.n_max))
            return self.cofaces[n][g[2]]
        if kind == "s":
            if not 0 <= n <= self.n_max - 1:
                raise TruncationError(
                    "codegeneracy level %d outside truncation %d"
                    % (n, self.n_max))
            return self.codegens[n][g[2]]
        if not 0 <= n <= self.n_max:
            raise TruncationError("level %d outside truncation %d"
                                  % (n, self.n_max))
        return self.tau[n] if kind == "t" else self.tau_inv[n]


def evaluate_word(P, word):
    """Composite matrix of a word (or normal form) on truncated data."""
    if isinstance(word, NormalForm):
        word = word.to_word()
    if word.source > P.n_max or word.target > P.n_max:
        raise TruncationError("word levels exceed truncation %d" % P.n_max)
    out = Mor.identity(P.levels[word.source])
    for g in reversed(word.gens):
        out = compose(P.generator(g), out)
    return out


# -- relation checking ----------------------------------------------------

_FAMILIES = ("SR", "PCR", "CC", "TwistedCC")


def check_relations(P, up_to, families):
    """Evaluate every relation instance of the chosen families as exact
    matrix equality, for target levels up to `up_to`.

    Report check order is deterministic: by level, then relation id, then
    indices, independent of the evaluation schedule.
    """
    bad = set(families) - set(_FAMILIES)
    if bad:
        raise ValueError("unknown families: %s" % ", ".join(sorted(bad)))
    if up_to > P.n_max:
        raise TruncationError("up_to %d exceeds truncation %d"
                              % (up_to, P.n_max))
    jobs = []
    for n in range(up_to + 1):
        if "SR" in families:
            jobs.extend(_sr_jobs(P, n))
        if "PCR" in families:
            jobs.extend(_pcr_jobs(P, n))
        if "CC" in families:
            jobs.append(("n=%d CC t^%d = id" % (n, n + 1),
                         lambda n=n: (_tau_power(P, n, n + 1),
                                      Mor.identity(P.levels[n]))))
        if "TwistedCC" in families:
            jobs.append(("n=%d TwistedCC t^%d = twist" % (n, n + 1),
                         lambda n=n: (_tau_power(P, n, n + 1),
                                      P.ctx.theta(P.levels[n]))))
    results = parallel_map(lambda job: job[1](), jobs)
    rep = Report("relations")
    for (name, _), (lhs, rhs) in zip(jobs, results):
        rep.add_eq(name, lhs, rhs)
    return rep


def _tau_power(P, n, k):
    out = Mor.identity(P.levels[n])
    for _ in range(k):
        out = compose(P.tau[n], out)
    return out


def _sr_jobs(P, n):
    jobs = []
    if 2 <= n <= P.n_max:
        for j in range(n + 1):
            for i in range(j):
                jobs.append((
                    "n=%d SR1 d(%d,%d).d(%d,%d)" % (n, n, j, n - 1, i),
                    lambda n=n, i=i, j=j: (
                        compose(P.cofaces[n][j], P.cofaces[n - 1][i]),
                        compose(P.cofaces[n][i], P.cofaces[n - 1][j - 1])),
                ))
    if n + 2 <= P.n_max:
        for j in range(n + 1):
            for i in range(j + 1):
                jobs.append((
                    "n=%d SR2 s(%d,%d).s(%d,%d)" % (n, n, j, n + 1, i),
                    lambda n=n, i=i, j=j: (
                        compose(P.codegens[n][j], P.codegens[n + 1][i]),
                        compose(P.codegens[n][i], P.codegens[n + 1][j + 1])),
                ))
    if n + 1 <= P.n_max:
        for j in range(n + 1):
            for i in range(n + 2):
                def rhs(n=n, i=i, j=j):
                    lhs = compose(P.codegens[n][j], P.cofaces[n + 1][i])
                    if i < j:
                        return (lhs, compose(P.cofaces[n][i],
                                             P.codegens[n - 1][j - 1]))
                    if i in (j, j + 1):
                        return (lhs, Mor.identity(P.levels[n]))
                    return (lhs, compose(P.cofaces[n][i - 1],
                                         P.codegens[n - 1][j]))
                jobs.append(("n=%d SR3 s(%d,%d).d(%d,%d)" % (n, n, j, n + 1, i),
                             rhs))
    return jobs


def _pcr_jobs(P, n):
    jobs = []
    if 1 <= n <= P.n_max:
        for i in range(n + 1):
            def pair(n=n, i=i):
                lhs = compose(P.tau[n], P.cofaces[n][i])
                if i == 0:
                    return (lhs, P.cofaces[n][n])
                return (lhs, compose(P.cofaces[n][i - 1], P.tau[n - 1]))
            jobs.append(("n=%d PCRd t.d(%d,%d)" % (n, n, i), pair))
    if n + 1 <= P.n_max:
        for i in range(n + 1):
            def pair(n=n, i=i):
                lhs = compose(P.tau[n], P.codegens[n][i])
                if i == 0:
                    return (lhs, chain(P.codegens[n][n],
                                       P.tau[n + 1], P.tau[n + 1]))
                return (lhs, compose(P.codegens[n][i - 1], P.tau[n + 1]))
            jobs.append(("n=%d PCRs t.s(%d,%d)" % (n, n, i), pair))
    return jobs


# -- Hom transport ---------------------------------------------------------

def _grade_zero_indices(obj):
    return [i for i, g in enumerate(obj.grades) if g == 0]


def hom_transport(P, direction):
    """Transport truncated data along Hom(unit, -) or Hom(-, unit).

    Structure maps are grade homogeneous, so Hom(unit, X) is the grade-zero
    subspace of X and Hom(X, unit) its dual; the generator matrices are the
    grade-zero blocks (FromUnit) or their transposes with variance reversed
    (ToUnit). Twist components at the unit are identities, hence the
    transported tau satisfies plain cyclicity whenever P satisfies the
    twisted one.
    """
    if direction not in ("FromUnit", "ToUnit"):
        raise ValueError("direction must be FromUnit or ToUnit")
    field = P.ctx.field
    keep = [_grade_zero_indices(x) for x in P.levels]
    ctx = CategoryCtx(field, TrivialBraiding(), IdentityTwist())
    levels = [Obj("hom%d" % n, len(keep[n]), (0,) * len(keep[n]), field)
              for n in range(P.n_max + 1)]

    def block(f, src_level, dst_level):
        rows = keep[dst_level]
        cols = keep[src_level]
        rpos = {r: a for a, r in enumerate(rows)}
        out = {}
        for c_new, c_old in enumerate(cols):
            col = f.cols.get(c_old, {})
            entries = {rpos[r]: v for r, v in col.items() if r in rpos}
            if entries:
                out[c_new] = entries
        return Mor(levels[src_level], levels[dst_level], out)

    def transpose_block(f, src_level, dst_level):
        # Hom(-, unit): precomposition reverses arrows; matrix transposes.
        rpos = {r: a for a, r in enumerate(keep[src_level])}
        cpos = {r: a for a, r in enumerate(keep[dst_level])}
        out = {}
        for c_old, col in f.cols.items():
            if c_old not in rpos:
                continue
            for r_old, v in col.items():
                if r_old in cpos:
                    out.setdefault(cpos[r_old], {})[rpos[c_old]] = v
        return Mor(levels[dst_level], levels[src_level], out)

    if direction == "FromUnit":
        cofaces = {n: [block(f, n - 1, n) for f in P.cofaces[n]]
                   for n in range(1, P.n_max + 1)}
        codegens = {n: [block(f, n + 1, n) for f in P.codegens[n]]
                    for n in range(P.n_max)}
        tau = [block(P.tau[n], n, n) for n in range(P.n_max + 1)]
        return ParaCocyclicData(ctx, levels, cofaces, codegens, tau, P.n_max)
    # ToUnit: cofaces become "faces" (arrows reverse); repackage the
    # transposed generators as paracocyclic data of the opposite shape:
    # transposed codegeneracies raise levels, so they sit in the coface
    # slots and vice versa. The resulting container satisfies the same
    # relation families with the roles of d and s exchanged.
    faces = {n: [transpose_block(f, n - 1, n) for f in P.cofaces[n]]
             for n in range(1, P.n_max + 1)}
    degens = {n: [transpose_block(f, n + 1, n) for f in P.codegens[n]]
              for n in range(P.n_max)}
    tau = [transpose_block(P.tau[n], n, n) for n in range(P.n_max + 1)]
    return CyclicModuleData(ctx, levels, faces, degens, tau, P.n_max)


class CyclicModuleData:
    """Chain-side twin of ParaCocyclicData: faces lower levels, degeneracies
    raise them, tau is still a level endomorphism.

    faces[n][i]   : levels[n] -> levels[n-1]   (1 <= n <= N_max)
    degens[n][j]  : levels[n] -> levels[n+1]   (0 <= n <= N_max-1)
    """

    def __init__(self, ctx, levels, faces, degens, tau, n_max):
        self.ctx = ctx
        self.levels = list(levels)
        self.faces = {n: list(faces[n]) for n in range(1, n_max + 1)}
        self.degens = {n: list(degens[n]) for n in range(n_max)}
        self.tau = list(tau)
        self.n_max = n_max
        for n in range(1, n_max + 1):
            for i, f in enumerate(self.faces[n]):
                if f.dom != levels[n] or f.cod != levels[n - 1]:
                    raise ShapeError("face (%d,%d) has wrong boundary" % (n, i))
        for n in range(n_max):
            for j, f in enumerate(self.degens[n]):
                if f.dom != levels[n] or f.cod != levels[n + 1]:
                    raise ShapeError("degeneracy (%d,%d) has wrong boundary"
                                     % (n, j))
        self.tau_inv = []
        for n, t in enumerate(self.tau):
            if t.dom != levels[n] or t.cod != levels[n]:
                raise ShapeError("t(%d) must be an endomorphism of its level"
                                 % n)
            try:
                self.tau_inv.append(invert(t))
            except ValueError:
                raise ShapeError("t(%d) is not invertible" % n)


def check_cyclic_relations(C, up_to, families):
    """Relation checker for the chain-side container: the same families
    with arrows reversed (composites read in the opposite order)."""
    bad = set(families) - set(_FAMILIES)
    if bad:
        raise ValueError("unknown families: %s" % ", ".join(sorted(bad)))
    jobs = []
    for n in range(up_to + 1):
        if "SR" in families:
            if 2 <= n <= C.n_max:
                for j in range(n + 1):
                    for i in range(j):
                        jobs.append((
                            "n=%d SR1 face(%d,%d).face(%d,%d)"
                            % (n, n - 1, i, n, j),
                            lambda n=n, i=i, j=j: (
                                compose(C.faces[n - 1][i], C.faces[n][j]),
                                compose(C.faces[n - 1][j - 1], C.faces[n][i])),
                        ))
            if n + 2 <= C.n_max:
                for j in range(n + 1):
                    for i in range(j + 1):
                        jobs.append((
                            "n=%d SR2 deg(%d,%d).deg(%d,%d)"
                            % (n, n + 1, i, n, j),
                            lambda n=n, i=i, j=j: (
                                compose(C.degens[n + 1][i], C.degens[n][j]),
                                compose(C.degens[n + 1][j + 1], C.degens[n][i])),
                        ))
            if n + 1 <= C.n_max:
                for j in range(n + 1):
                    for i in range(n + 2):
                        def pair(n=n, i=i, j=j):
                            lhs = compose(C.faces[n + 1][i], C.degens[n][j])
                            if i < j:
                                return (lhs, compose(C.degens[n - 1][j - 1],
                                                     C.faces[n][i]))
                            if i in (j, j + 1):
                                return (lhs, Mor.identity(C.levels[n]))
                            return (lhs, compose(C.degens[n - 1][j],
                                                 C.faces[n][i - 1]))
                        jobs.append((
                            "n=%d SR3 face(%d,%d).deg(%d,%d)"
                            % (n, n + 1, i, n, j), pair))
        if "PCR" in families:
            if 1 <= n <= C.n_max:
                for i in range(n + 1):
                    def pair(n=n, i=i):
                        lhs = compose(C.faces[n][i], C.tau[n])
                        if i == 0:
                            return (lhs, C.faces[n][n])
                        return (lhs, compose(C.tau[n - 1], C.faces[n][i - 1]))
                    jobs.append(("n=%d PCRd face(%d,%d).t" % (n, n, i), pair))
            if n + 1 <= C.n_max:
                for i in range(n + 1):
                    def pair(n=n, i=i):
                        lhs = compose(C.degens[n][i], C.tau[n])
                        if i == 0:
                            return (lhs, chain(C.tau[n + 1], C.tau[n + 1],
                                               C.degens[n][n]))
                        return (lhs, compose(C.tau[n + 1], C.degens[n][i - 1]))
                    jobs.append(("n=%d PCRs deg(%d,%d).t" % (n, n, i), pair))
        if "CC" in families:
            jobs.append(("n=%d CC t^%d = id" % (n, n + 1),
                         lambda n=n: (_cyc_tau_power(C, n, n + 1),
                                      Mor.identity(C.levels[n]))))
        if "TwistedCC" in families:
            jobs.append(("n=%d TwistedCC t^%d = twist" % (n, n + 1),
                         lambda n=n: (_cyc_tau_power(C, n, n + 1),
                                      C.ctx.theta(C.levels[n]))))
    results = parallel_map(lambda job: job[1](), jobs)
    rep = Report("cyclic-relations")
    for (name, _), (lhs, rhs) in zip(jobs, results):
        rep.add_eq(name, lhs, rhs)
    return rep


def _cyc_tau_power(C, n, k):
    out = Mor.identity(C.levels[n])
    for _ in range(k):
        out = compose(C.tau[n], out)
    return out
