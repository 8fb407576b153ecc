"""Cycle rewrites used when lifting a solution one stage up.

Every rewrite is a ``Step``: for each string it lists groups of old cycles and
the cycles that replace them, plus identities such as ``a'_1 = (r t s) a_1``
that tie the new permutation to the old one.  ``verify_step`` checks those
identities and the product identity by composing permutations, so the same
blocks serve the lifting code and the formula tests.

Cycle arguments are value lists.  ``rho[i]`` and ``sig[i]`` are the parts of
string i's cycles around the named witness values, 0-based over strings.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .perm_core import Perm


@dataclass
class Step:
    name: str
    before: list          # per string: list of groups, each a list of cycles
    after: list           # same shape as before
    checks: list          # (string index, factors); a factor is 1..3 (old a_k) or a cycle list
    extra: list = field(default_factory=lambda: [[], [], []])
    values: dict = field(default_factory=dict)

    def new_cycles(self, i: int) -> list:
        return [c for g in self.after[i] for c in g] + list(self.extra[i])

    def old_cycles(self, i: int) -> list:
        return [c for g in self.before[i] for c in g]


class FormulaError(AssertionError):
    pass


def _perm(cycles, n):
    return Perm.from_cycles([c for c in cycles if len(c) > 1], n)


def verify_step(step: Step, betas=None, degree: int | None = None, product: bool = True) -> None:
    """Raise FormulaError unless every identity of the step holds.

    ``betas`` are the untouched cycles of each string.  When ``product`` is
    set, the old and new triples must both satisfy a_1 a_2 = a_3.
    """
    betas = betas or [[], [], []]
    vals = set()
    for i in range(3):
        for c in list(betas[i]) + step.old_cycles(i) + step.new_cycles(i):
            vals.update(c)
    n = degree or max(vals)
    old = [_perm(list(betas[i]) + step.old_cycles(i), n) for i in range(3)]
    new = [_perm(list(betas[i]) + step.new_cycles(i), n) for i in range(3)]
    for i, factors in step.checks:
        acc = Perm.identity(n)
        for f in factors:
            acc = acc * (old[f - 1] if isinstance(f, int) else _perm(f, n))
        if acc != new[i]:
            raise FormulaError("%s: identity for string %d fails" % (step.name, i + 1))
    if product:
        if old[0] * old[1] != old[2]:
            raise FormulaError("%s: old triple is not a solution" % step.name)
        if new[0] * new[1] != new[2]:
            raise FormulaError("%s: new triple is not a solution" % step.name)


_SWAP = (1, 0, 2)


def mirror_step(step: Step) -> Step:
    """The same rewrite read on reversed strings with strings 1 and 2 swapped.

    Reversing every cycle inverts each permutation, and a_1 a_2 = a_3 becomes
    a_2^-1 a_1^-1 = a_3^-1, so every identity is inverted factor by factor.
    """
    rev = lambda cycles: [list(c)[::-1] for c in cycles]
    before = [[rev(g) for g in step.before[_SWAP[i]]] for i in range(3)]
    after = [[rev(g) for g in step.after[_SWAP[i]]] for i in range(3)]
    extra = [rev(step.extra[_SWAP[i]]) for i in range(3)]
    checks = []
    for i, factors in step.checks:
        inv = [_SWAP[f - 1] + 1 if isinstance(f, int) else rev(f[::-1]) for f in reversed(factors)]
        checks.append((_SWAP[i], inv))
    return Step(step.name + "_reversed", before, after, checks, extra, dict(step.values))


def _odd(xs):
    """Entries x_1, x_3, ... of a 1-based sequence."""
    return list(xs[0::2])


def _even(xs):
    return list(xs[1::2])


# ---------------------------------------------------------------- parity pairs

def parity_pair(rho, sig, r, s, t, u, v) -> Step:
    """Two parity columns removed at once.

    Before: a_1 = (rho1 r)(s)(sig1 t u)(v), a_2 = (rho2 r)(s)(sig2 u)(v),
    a_3 = (rho3 r)(s)(sig3 t)(v).
    """
    before = [
        [[rho[0] + [r], [s]], [sig[0] + [t, u], [v]]],
        [[rho[1] + [r], [s]], [sig[1] + [u], [v]]],
        [[rho[2] + [r], [s]], [sig[2] + [t], [v]]],
    ]
    after = [
        [[rho[0] + [s, r]], [sig[0] + [t, v, u]]],
        [[rho[1] + [v, s]], [sig[1] + [u, r]]],
        [[rho[2] + [v, r]], [sig[2] + [t, s]]],
    ]
    checks = [(0, [1, [[r, s], [u, v]]]), (1, [[[r, u, s]], 2, [[r, v, s]]])]
    return Step("parity_pair", before, after, checks, values=dict(r=r, s=s, t=t, u=u, v=v))


# ---------------------------------------------------------------- shutters

def shutter_single(j, rho, sig, r, s) -> Step:
    """Drop the break at a shutter column in the two strings other than j.

    Before: a_i = (rho_i r)(s sig_i) around the column.
    """
    before = [[[rho[i] + [r], [s] + sig[i]]] for i in range(3)]
    rs = [[r, s]]
    if j == 1:
        after = [[[rho[0] + [r], [s] + sig[0]]], [[rho[1] + [s] + sig[1] + [r]]],
                 [[rho[2] + [s] + sig[2] + [r]]]]
        checks = [(0, [1]), (1, [2, rs]), (2, [3, rs])]
    elif j == 2:
        after = [[[rho[0] + [r] + sig[0] + [s]]], [[rho[1] + [r], [s] + sig[1]]],
                 [[rho[2] + [r] + sig[2] + [s]]]]
        checks = [(0, [rs, 1]), (1, [2]), (2, [rs, 3])]
    elif j == 3:
        after = [[[rho[0] + [s] + sig[0] + [r]]], [[rho[1] + [r] + sig[1] + [s]]],
                 [[rho[2] + [r], [s] + sig[2]]]]
        checks = [(0, [1, rs]), (1, [rs, 2]), (2, [3])]
    else:
        raise ValueError("j must be 1, 2 or 3")
    return Step("shutter_single_%d" % j, before, after, checks, values=dict(r=r, s=s))


def shutter_pair(j, rho, sig, r, s, t, u) -> Step:
    """Drop two shutter columns two apart whose middle column breaks only in string j.

    Before: a_j = (rho_j r)(s)(t)(u sig_j), a_i = (rho_i r)(s t)(u sig_i).
    """
    before = []
    for i in range(3):
        mid = [[s], [t]] if i + 1 == j else [[s, t]]
        before.append([[rho[i] + [r]] + mid + [[u] + sig[i]]])
    if j == 1:
        after = [[[rho[0] + [r, s], [u, t] + sig[0]]],
                 [[rho[1] + [t, s, u] + sig[1] + [r]]],
                 [[rho[2] + [t] + sig[2] + [r, u, s]]]]
        checks = [(0, [[[r, s], [t, u]], 1]), (1, [2, [[r, t, u]]]),
                  (2, [[[r, s], [t, u]], 3, [[r, t, u]]])]
    elif j == 2:
        after = [[[rho[0] + [r] + sig[0] + [u, s, t]]],
                 [[rho[1] + [s, r], [t, u] + sig[1]]],
                 [[rho[2] + [s, u, r] + sig[2] + [t]]]]
        checks = [(0, [[[r, u, t]], 1]), (1, [2, [[r, s], [t, u]]]),
                  (2, [[[r, u, t]], 3, [[r, s], [t, u]]])]
    elif j == 3:
        after = [[[rho[0] + [r, t, s] + sig[0] + [u]]],
                 [[rho[1] + [t, s, u] + sig[1] + [r]]],
                 [[rho[2] + [t, u], [r, s] + sig[2]]]]
        checks = [(0, [[[r, s, u]], 1]), (1, [2, [[r, t, u]]]),
                  (2, [[[r, s, u]], 3, [[r, t, u]]])]
    else:
        raise ValueError("j must be 1, 2 or 3")
    return Step("shutter_pair_%d" % j, before, after, checks, values=dict(r=r, s=s, t=t, u=u))


# ---------------------------------------------------------------- traps

def trap_pair(rho, sig, r, s, t) -> Step:
    """Merge (rho r)(s)(t sig) into one cycle in every string."""
    before = [[[rho[i] + [r], [s], [t] + sig[i]]] for i in range(3)]
    after = [
        [[rho[0] + [r] + sig[0] + [t, s]]],
        [[rho[1] + [t] + sig[1] + [s, r]]],
        [[rho[2] + [t, r] + sig[2] + [s]]],
    ]
    rts = [[r, t, s]]
    checks = [(0, [rts, 1]), (1, [2, rts]), (2, [rts, 3, rts])]
    return Step("trap_pair", before, after, checks, values=dict(r=r, s=s, t=t))


# ---------------------------------------------------------------- ledges

def ledge_plus(i3, rho, sig, r, s, t, u, v, w=None, rho4=None) -> Step:
    """Spread a ledge over two fresh points u, v (third string breaking one step right).

    i3 = 1: r common on the left, (s, t) with a_1(s) = a_2(s) = t on the right.
    i3 = 2: r common on the left, (s, t) with s common and a_1(s) = a_2(s) = t.
    i3 = 3: (r, s) with s = a_1(r) on the left, (t, w) with a_1(t) = a_2(t) = w
    on the right; string 3's left cycle is (rho3 r rho4 s).
    """
    if i3 == 1:
        before = [[[rho[0] + [r], [u], [v], [s, t] + sig[0]]],
                  [[rho[1] + [r], [u], [v], [s, t] + sig[1]]],
                  [[rho[2] + [r], [u], [v], [t] + sig[2]]]]
        after = [[[rho[0] + [t, s, u], [r, v] + sig[0]]],
                 [[rho[1] + [r, t], [s, v, u] + sig[1]]],
                 [[rho[2] + [r, u], [t, v] + sig[2]]]]
        checks = [(0, [[[r, u], [t, v]], 1, [[r, t, u, v, s]]]),
                  (1, [[[r, s, v, u, t]], 2]),
                  (2, [[[r, u], [t, v]], 3])]
    elif i3 == 2:
        before = [[[rho[0] + [r], [u], [v], [s, t] + sig[0]]],
                  [[rho[1] + [r], [u], [v], [s, t] + sig[1]]],
                  [[rho[2] + [r], [u], [v], [s] + sig[2]]]]
        after = [[[rho[0] + [u, v], [r, s, t] + sig[0]]],
                 [[rho[1] + [r, t, u], [s, v] + sig[1]]],
                 [[rho[2] + [r, v], [s, u] + sig[2]]]]
        checks = [(0, [[[r, u, v]], 1, [[r, u, s]]]),
                  (1, [[[r, s, v, t, u]], 2]),
                  (2, [[[r, u, v]], 1, [[u, v, t]], 2])]
    elif i3 == 3:
        before = [[[rho[0] + [r, s], [u], [v], [t, w] + sig[0]]],
                  [[rho[1] + [s], [u], [v], [t, w] + sig[1]]],
                  [[rho[2] + [r] + rho4 + [s], [u], [v]]]]
        after = [[[rho[0] + [r, t, v], [s, u, w] + sig[0]]],
                 [[rho[1] + [s, w], [t, u, v] + sig[1]]],
                 [[rho[2] + [r, u] + rho4 + [s, v]]]]
        checks = [(0, [[[s, u, t, v]], 1, [[s, t]]]),
                  (1, [[[s, t, u, v, w]], 2]),
                  (2, [[[s, u, t, v]], 1, [[s, u, v, w]], 2])]
    else:
        raise ValueError("i3 must be 1, 2 or 3")
    vals = dict(r=r, s=s, t=t, u=u, v=v)
    if w is not None:
        vals["w"] = w
    return Step("ledge_%d" % i3, before, after, checks, values=vals)


# ---------------------------------------------------------------- nests

def nest_odd(i, rho1, rho2, r, xs) -> Step:
    """Put an odd cycle (x_1 .. x_d) back into string i.

    ``rho1[k] + [r] + rho2[k]`` is string k's cycle through the nest column.
    """
    xs = list(xs)
    d = len(xs)
    if d % 2 == 0:
        raise ValueError("nest_odd needs an odd cycle")
    cyc = [rho1[k] + [r] + rho2[k] for k in range(3)]
    before = [[[c]] for c in cyc]
    if i == 1:
        sigma = [xs]
        after = [[[cyc[0]]],
                 [[rho1[1] + xs + [r] + rho2[1]]],
                 [[rho1[2] + _odd(xs) + _even(xs) + [r] + rho2[2]]]]
        checks = [(0, [sigma, 1]), (1, [2, [[r] + xs]])]
    elif i == 2:
        sigma = [xs]
        after = [[[rho1[0] + [r] + xs + rho2[0]]],
                 [[cyc[1]]],
                 [[rho1[2] + [r] + _even(xs) + _odd(xs) + rho2[2]]]]
        checks = [(0, [[[r] + xs], 1]), (1, [2, sigma])]
    elif i == 3:
        sigma = [_odd(xs) + _even(xs)]
        after = [[[rho1[0] + xs + [r] + rho2[0]]],
                 [[rho1[1] + [r] + xs[1:] + xs[:1] + rho2[1]]],
                 [[cyc[2]]]]
        checks = [(0, [1, [[r] + xs]]), (1, [[[r] + xs[1:] + xs[:1]], 2]), (2, [3, sigma])]
    else:
        raise ValueError("i must be 1, 2 or 3")
    extra = [[], [], []]
    extra[i - 1] = sigma
    return Step("nest_odd_%d" % i, before, after, checks, extra=extra,
                values=dict(r=r, x=xs))


def nest_even(i, rho1, rho2, r, ys, zs) -> Step:
    """Put two even cycles (y_1 .. y_e)(z_1 .. z_f) back into string i.

    For i = 3 the shorter cycle must come first (e <= f).
    """
    ys, zs = list(ys), list(zs)
    e, f = len(ys), len(zs)
    if e % 2 or f % 2 or e < 2 or f < 2:
        raise ValueError("nest_even needs two even cycles")
    cyc = [rho1[k] + [r] + rho2[k] for k in range(3)]
    before = [[[c]] for c in cyc]
    y = lambda k: ys[k - 1]
    z = lambda k: zs[k - 1]
    sigma = [ys, zs]
    if i in (1, 2):
        chain = [z(2)] + ys[1:] + [z(1), y(1)] + zs[2:]
        if i == 1:
            mid3 = _even(zs) + _odd(ys) + [z(1)] + _even(ys) + _odd(zs)[1:]
            after = [[[cyc[0]]],
                     [[rho1[1] + chain + [r] + rho2[1]]],
                     [[rho1[2] + mid3 + [r] + rho2[2]]]]
            checks = [(0, [sigma, 1]), (1, [2, [[r] + chain]])]
        else:
            mid3 = (_odd(zs)[1:] + [z(1)] + _even(ys) + [z(2)] + _odd(ys)[1:] + [y(1)]
                    + _even(zs)[1:])
            after = [[[rho1[0] + [r] + chain + rho2[0]]],
                     [[cyc[1]]],
                     [[rho1[2] + [r] + mid3 + rho2[2]]]]
            checks = [(0, [[[r] + chain], 1]), (1, [2, sigma])]
    elif i == 3:
        if e > f:
            raise ValueError("nest_even with i = 3 needs e <= f")
        tau = []
        for k in range(3, e + 1):
            tau += [y(k), z(k - 1)]
        ups = _upsilon(zs, e, f)
        mid = [y(1), z(1)] + tau + [y(2), z(e)] + ups
        mid2 = ups + [z(1), y(2), z(e)] + tau + [y(1)]
        after = [[[rho1[0] + mid + [r] + rho2[0]]],
                 [[rho1[1] + [r] + mid2 + rho2[1]]],
                 [[cyc[2]]]]
        checks = [(0, [1, [[r] + mid]]), (1, [[[r] + mid2], 2]), (2, [3, sigma])]
    else:
        raise ValueError("i must be 1, 2 or 3")
    extra = [[], [], []]
    extra[i - 1] = sigma
    return Step("nest_even_%d" % i, before, after, checks, extra=extra,
                values=dict(r=r, y=ys, z=zs))


def _upsilon(zs, e, f):
    """(z_{g+1}, z_{e+1}, z_{g+2}, z_{e+2}, ..., z_f, z_g) with g = (e+f)/2."""
    g = (e + f) // 2
    out = []
    for k in range(f - g):
        out += [zs[g + k], zs[e + k]]
    return out


# ---------------------------------------------------------------- short even cycles

def short_even(j, rho, r, s, xs) -> Step:
    """Put a short even cycle of length len(xs) back into class j.

    Each string's long cycle is (r rho_i).  ``values['common']`` names the
    value shared by the new long cycles and ``values['long']`` the index of
    the long cycle inside each string's new group.
    """
    xs = list(xs)
    k = len(xs)
    if k % 2 or k < 2:
        raise ValueError("short_even needs an even cycle length")
    x = lambda q: xs[q - 1]
    before = [[[[r] + rho[i]]] for i in range(3)]
    if j == 1:
        after = [[[xs, [r, s] + rho[0]]],
                 [[xs[:-1] + [r] + rho[1] + [x(k), s]]],
                 [[_odd(xs) + [s] + rho[2] + [x(k)] + _even(xs)[:-1] + [r]]]]
        checks = [(0, [[[r, s], xs], 1]), (1, [2, [xs[:-1] + [r, x(k), s]]])]
        common, long_ = r, (1, 0, 0)
    elif j == 2:
        after = [[[[x(1), s] + xs[1:] + rho[0] + [r]]],
                 [[xs, [s, r] + rho[1]]],
                 [[[x(1), r] + _even(xs) + rho[2] + [s] + _odd(xs)[1:]]]]
        checks = [(0, [[[x(1), s] + xs[1:] + [r]], 1]), (1, [2, [xs, [r, s]]])]
        common, long_ = r, (0, 1, 0)
    elif j == 3:
        after = [[[[x(1), s] + xs[1:] + rho[0] + [r]]],
                 [[xs[:-1] + [s, x(k), r] + rho[1]]],
                 [[_even(xs)[:-1] + [s] + _odd(xs)[1:] + [r], [x(1), x(k)] + rho[2]]]]
        checks = [(0, [[[x(1), s] + xs[1:] + [r]], 1]), (1, [2, [xs[:-1] + [s, x(k), r]]])]
        common, long_ = x(1), (0, 0, 1)
    else:
        raise ValueError("j must be 1, 2 or 3")
    return Step("short_even_%d" % j, before, after, checks,
                values=dict(r=r, s=s, x=xs, common=common, long=long_))


def chain8(rho, r, xs) -> Step:
    """Add eight points so that x_1 .. x_6 form a common chain of a_1 and a_2."""
    xs = list(xs)
    if len(xs) != 8:
        raise ValueError("chain8 needs eight new points")
    x = lambda q: xs[q - 1]
    before = [[[[r] + rho[i]]] for i in range(3)]
    after = [[[xs[:7] + rho[0] + [r, x(8)]]],
             [[xs[:6] + [r] + rho[1] + [x(8), x(7)]]],
             [[[x(1), x(3), x(5), r, x(7)] + rho[2] + [x(8), x(2), x(4), x(6)]]]]
    checks = [(0, [[xs[:7] + [r, x(8)]], 1]), (1, [2, [xs[:6] + [r, x(8), x(7)]]])]
    return Step("chain8", before, after, checks, values=dict(r=r, x=xs))


# ---------------------------------------------------------------- half switching

def half_variants(alphas, chain):
    """The eight triples reachable by the half-switching moves.

    ``chain`` holds five values with a_1(x_k) = a_2(x_k) = x_{k+1}.  Each entry
    is (name, flips, triple) where flips marks which of the three factors
    changed its alternating-group class.
    """
    a1, a2, a3 = alphas
    n = a1.n
    c = list(chain)
    sigma = Perm.from_cycles([(c[0], c[2]), (c[1], c[3])], n)
    tau = Perm.from_cycles([(c[0], c[2], c[4], c[1], c[3])], n)
    g = Perm.from_cycles([(c[0], c[1])], n)
    base = [
        ("identity", (0, 0, 0), (a1, a2, a3)),
        ("sigma", (1, 1, 0), (a1 * sigma, sigma * a2, a3)),
        ("tau", (1, 0, 0), (a1 * tau, ~tau * a2, a3)),
        ("tau_inverse", (0, 1, 0), (a1 * ~tau, tau * a2, a3)),
    ]
    out = list(base)
    for name, flips, trip in base:
        out.append((name + "_swap", tuple(1 - f for f in flips), tuple(p ** g for p in trip)))
    return out
