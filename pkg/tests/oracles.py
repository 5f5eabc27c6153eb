"""Independent straight-line re-implementations of the randomized operators.

Each oracle replays the documented draw protocol against a generator seeded
identically to the one handed to the package, and computes the formulas with
plain scalar arithmetic wherever the result must match componentwise. They
share no code with the package; agreement is checked to 1e-12 per component.
"""

import math

import numpy as np


def draw_distinct(rng, size, count, exclude):
    taken = set(exclude)
    out = []
    while len(out) < count:
        c = int(rng.integers(size))
        if c not in taken:
            taken.add(c)
            out.append(c)
    return out


def roulette(rng, weights):
    u = rng.random() * sum(weights)
    acc = 0.0
    for i, w in enumerate(weights):
        acc += w
        if u < acc:
            return i
    return len(weights) - 1


def argmin_first(values):
    best, best_i = values[0], 0
    for i, v in enumerate(values):
        if v < best:
            best, best_i = v, i
    return best_i


def stable_order(values):
    return sorted(range(len(values)), key=lambda i: values[i])


def pbest_pick(rng, fitness):
    m = len(fitness)
    p = max(0.05, 3.0 / m)
    top = max(1, math.ceil(p * m))
    return stable_order(list(fitness))[int(rng.integers(top))]


# --- mutation strategies ------------------------------------------------

def mutate_rand_1(pop, target, f, rng):
    r = draw_distinct(rng, pop.size, 3, {target})
    xs = pop.xs
    donor = np.array(
        [xs[r[0]][j] + f * (xs[r[1]][j] - xs[r[2]][j]) for j in range(pop.n)]
    )
    return donor, xs[r[0]].copy(), tuple(r)


def mutate_best_1(pop, target, f, rng):
    r = draw_distinct(rng, pop.size, 2, {target})
    xs = pop.xs
    b = argmin_first(list(pop.fitness))
    donor = np.array(
        [xs[b][j] + f * (xs[r[0]][j] - xs[r[1]][j]) for j in range(pop.n)]
    )
    return donor, xs[b].copy(), tuple(r)


def mutate_target_to_best_1(pop, target, f, rng):
    r = draw_distinct(rng, pop.size, 2, {target})
    xs = pop.xs
    b = argmin_first(list(pop.fitness))
    donor = np.array(
        [
            xs[target][j]
            + f * (xs[b][j] - xs[target][j])
            + f * (xs[r[0]][j] - xs[r[1]][j])
            for j in range(pop.n)
        ]
    )
    return donor, xs[target].copy(), tuple(r)


def mutate_best_2(pop, target, f, rng):
    r = draw_distinct(rng, pop.size, 4, {target})
    xs = pop.xs
    b = argmin_first(list(pop.fitness))
    donor = np.array(
        [
            xs[b][j]
            + f * (xs[r[0]][j] - xs[r[1]][j])
            + f * (xs[r[2]][j] - xs[r[3]][j])
            for j in range(pop.n)
        ]
    )
    return donor, xs[b].copy(), tuple(r)


def mutate_rand_2(pop, target, f, rng):
    r = draw_distinct(rng, pop.size, 5, {target})
    xs = pop.xs
    donor = np.array(
        [
            xs[r[0]][j]
            + f * (xs[r[1]][j] - xs[r[2]][j])
            + f * (xs[r[3]][j] - xs[r[4]][j])
            for j in range(pop.n)
        ]
    )
    return donor, xs[r[0]].copy(), tuple(r)


def mutate_target_to_best_2(pop, target, f, rng):
    r = draw_distinct(rng, pop.size, 4, {target})
    xs = pop.xs
    b = argmin_first(list(pop.fitness))
    donor = np.array(
        [
            xs[target][j]
            + f * (xs[b][j] - xs[target][j])
            + f * (xs[r[0]][j] - xs[r[1]][j])
            + f * (xs[r[2]][j] - xs[r[3]][j])
            for j in range(pop.n)
        ]
    )
    return donor, xs[target].copy(), tuple(r)


def mutate_target_to_pbest_1(pop, target, f, rng):
    pb = pbest_pick(rng, pop.fitness)
    r = draw_distinct(rng, pop.size, 2, {target})
    xs = pop.xs
    donor = np.array(
        [
            xs[target][j]
            + f * (xs[pb][j] - xs[target][j])
            + f * (xs[r[0]][j] - xs[r[1]][j])
            for j in range(pop.n)
        ]
    )
    return donor, xs[target].copy(), tuple(r)


def mutate_rand_2_dir(pop, target, f, rng):
    r = draw_distinct(rng, pop.size, 4, {target})
    fit = pop.fitness
    if fit[r[0]] > fit[r[1]]:
        r[0], r[1] = r[1], r[0]
    if fit[r[2]] > fit[r[3]]:
        r[2], r[3] = r[3], r[2]
    xs = pop.xs
    donor = np.array(
        [
            xs[r[0]][j]
            + (f / 2.0)
            * (xs[r[0]][j] - xs[r[1]][j] + xs[r[2]][j] - xs[r[3]][j])
            for j in range(pop.n)
        ]
    )
    return donor, xs[r[0]].copy(), tuple(r)


def mutate_nsde(pop, target, f, rng):
    r = draw_distinct(rng, pop.size, 3, {target})
    if rng.random() < 0.5:
        s = rng.normal(0.5, 0.5)
    else:
        s = rng.standard_cauchy()
    xs = pop.xs
    donor = np.array(
        [xs[r[0]][j] + (xs[r[1]][j] - xs[r[2]][j]) * s for j in range(pop.n)]
    )
    return donor, xs[r[0]].copy(), tuple(r)


def mutate_trigonometric(pop, target, f, rng):
    r = draw_distinct(rng, pop.size, 3, {target})
    xs = pop.xs
    if rng.random() < 0.05:
        a = [abs(pop.fitness[i]) for i in r]
        total = a[0] + a[1] + a[2]
        if total > 0.0:
            p = [ai / total for ai in a]
            x0, x1, x2 = xs[r[0]], xs[r[1]], xs[r[2]]
            base = np.array([(x0[j] + x1[j] + x2[j]) / 3.0 for j in range(pop.n)])
            donor = np.array(
                [
                    base[j]
                    + (p[1] - p[0]) * (x0[j] - x1[j])
                    + (p[2] - p[1]) * (x1[j] - x2[j])
                    + (p[0] - p[2]) * (x2[j] - x0[j])
                    for j in range(pop.n)
                ]
            )
            return donor, base, tuple(r)
    donor = np.array(
        [xs[r[0]][j] + f * (xs[r[1]][j] - xs[r[2]][j]) for j in range(pop.n)]
    )
    return donor, xs[r[0]].copy(), tuple(r)


def mutate_two_opt_1(pop, target, f, rng):
    r = draw_distinct(rng, pop.size, 3, {target})
    fit = pop.fitness
    lead, trail = (r[0], r[1]) if fit[r[0]] < fit[r[1]] else (r[1], r[0])
    xs = pop.xs
    donor = np.array(
        [xs[lead][j] + f * (xs[trail][j] - xs[r[2]][j]) for j in range(pop.n)]
    )
    return donor, xs[lead].copy(), tuple(r)


def mutate_two_opt_2(pop, target, f, rng):
    r = draw_distinct(rng, pop.size, 5, {target})
    fit = pop.fitness
    lead, trail = (r[0], r[1]) if fit[r[0]] < fit[r[1]] else (r[1], r[0])
    xs = pop.xs
    donor = np.array(
        [
            xs[lead][j]
            + f * (xs[trail][j] - xs[r[2]][j])
            + f * (xs[r[3]][j] - xs[r[4]][j])
            for j in range(pop.n)
        ]
    )
    return donor, xs[lead].copy(), tuple(r)


def mutate_proximity_rand_1(pop, target, f, rng):
    # Distances must match the implementation bit-for-bit because the
    # roulette compares cumulative sums against a single uniform draw.
    d = np.sqrt(((pop.xs - pop.xs[target]) ** 2).sum(axis=1))
    pool = [i for i in range(pop.size) if i != target]
    weights = [d[i] for i in pool]
    r = []
    for _ in range(3):
        w = weights if sum(weights) > 0.0 else [1.0] * len(pool)
        k = roulette(rng, w)
        r.append(pool.pop(k))
        del weights[k]
    xs = pop.xs
    donor = np.array(
        [xs[r[0]][j] + f * (xs[r[1]][j] - xs[r[2]][j]) for j in range(pop.n)]
    )
    return donor, xs[r[0]].copy(), tuple(r)


def mutate_ranking_pbest_1(pop, target, f, rng):
    pb = pbest_pick(rng, pop.fitness)
    m = pop.size
    order = stable_order(list(pop.fitness))
    weights = [0.0] * m
    for rank, i in enumerate(order):
        weights[i] = float(m - rank)
    pool = [i for i in range(m) if i != target]
    r1 = pool[roulette(rng, [weights[i] for i in pool])]
    r2 = draw_distinct(rng, m, 1, {target, r1})[0]
    xs = pop.xs
    donor = np.array(
        [
            xs[target][j]
            + f * (xs[pb][j] - xs[target][j])
            + f * (xs[r1][j] - xs[r2][j])
            for j in range(pop.n)
        ]
    )
    return donor, xs[target].copy(), (r1, r2)


MUTATION_ORACLES = {
    "rand/1": mutate_rand_1,
    "best/1": mutate_best_1,
    "target-to-best/1": mutate_target_to_best_1,
    "best/2": mutate_best_2,
    "rand/2": mutate_rand_2,
    "target-to-best/2": mutate_target_to_best_2,
    "target-to-pbest/1": mutate_target_to_pbest_1,
    "rand/2/dir": mutate_rand_2_dir,
    "nsde": mutate_nsde,
    "trigonometric": mutate_trigonometric,
    "2-opt/1": mutate_two_opt_1,
    "2-opt/2": mutate_two_opt_2,
    "proximity-rand/1": mutate_proximity_rand_1,
    "ranking-pbest/1": mutate_ranking_pbest_1,
}


# --- crossover ----------------------------------------------------------

def crossover_bin(target, donor, cr, rng):
    n = len(target)
    j_rand = int(rng.integers(n))
    us = [rng.random() for _ in range(n)]
    return np.array(
        [
            donor[j] if (us[j] <= cr or j == j_rand) else target[j]
            for j in range(n)
        ]
    )


def crossover_exp(target, donor, cr, rng):
    n = len(target)
    trial = [float(t) for t in target]
    j = int(rng.integers(n))
    trial[j] = donor[j]
    copied = 1
    while copied < n and rng.random() < cr:
        j = (j + 1) % n
        trial[j] = donor[j]
        copied += 1
    return np.array(trial)


# --- componentwise repair rules ------------------------------------------

def repair_projection(v, lo, hi, **_):
    return np.array([min(max(x, l), h) for x, l, h in zip(v, lo, hi)])


def repair_reflection(v, lo, hi, **_):
    out = []
    for x, l, h in zip(v, lo, hi):
        if l <= x <= h:
            out.append(x)
            continue
        if h == l:
            out.append(l)
            continue
        while x < l or x > h:
            x = 2.0 * l - x if x < l else 2.0 * h - x
        out.append(x)
    return np.array(out)


def repair_wrapping(v, lo, hi, **_):
    out = []
    for x, l, h in zip(v, lo, hi):
        w = h - l
        if l <= x <= h:
            out.append(x)
        elif w == 0.0:
            out.append(l)
        elif x < l:
            out.append(h - ((l - x) % w))
        else:
            out.append(l + ((x - h) % w))
    return np.array(out)


def transform_component(x, l, h):
    w = h - l
    if w == 0.0:
        return l
    al = min(w / 2.0, 1.0 + abs(l) / 20.0)
    au = min(w / 2.0, 1.0 + abs(h) / 20.0)
    period = 2.0 * (w + al + au)
    start = l - 2.0 * al - w / 2.0
    x = x - period * math.floor((x - start) / period)
    if x > h + au:
        x = 2.0 * (h + au) - x
    if x < l - al:
        x = 2.0 * (l - al) - x
    if x < l + al:
        return l + (x - (l - al)) ** 2 / (4.0 * al)
    if x > h - au:
        return h - (x - (h + au)) ** 2 / (4.0 * au)
    return x


def repair_transformation(v, lo, hi, **_):
    return np.array([transform_component(x, l, h) for x, l, h in zip(v, lo, hi)])


def repair_reinitialization(v, lo, hi, rng=None, **_):
    out = list(v)
    for j, (x, l, h) in enumerate(zip(v, lo, hi)):
        if x < l or x > h:
            out[j] = l + (h - l) * rng.random()
    return np.array(out)


def repair_rand_base(v, lo, hi, base=None, rng=None, **_):
    out = list(v)
    for j in range(len(v)):
        if v[j] < lo[j]:
            out[j] = lo[j] + (base[j] - lo[j]) * rng.random()
    for j in range(len(v)):
        if v[j] > hi[j]:
            out[j] = base[j] + (hi[j] - base[j]) * rng.random()
    return np.array(out)


def repair_midpoint_base(v, lo, hi, base=None, **_):
    out = []
    for j in range(len(v)):
        if v[j] < lo[j]:
            out.append((lo[j] + base[j]) / 2.0)
        elif v[j] > hi[j]:
            out.append((base[j] + hi[j]) / 2.0)
        else:
            out.append(v[j])
    return np.array(out)


def repair_midpoint_target(v, lo, hi, target=None, **_):
    out = []
    for j in range(len(v)):
        if v[j] < lo[j]:
            out.append((lo[j] + target[j]) / 2.0)
        elif v[j] > hi[j]:
            out.append((target[j] + hi[j]) / 2.0)
        else:
            out.append(v[j])
    return np.array(out)


def repair_conservatism(v, lo, hi, base=None, **_):
    if any(x < l or x > h for x, l, h in zip(v, lo, hi)):
        return np.array([float(b) for b in base])
    return np.array(v)


def _repair_alpha_blend(v, lo, hi, anchor):
    n = len(v)
    ratio = [1.0] * n
    bound = [0.0] * n
    violated = [False] * n
    for j in range(n):
        if v[j] < lo[j] or v[j] > hi[j]:
            violated[j] = True
            bound[j] = hi[j] if v[j] > hi[j] else lo[j]
            ratio[j] = (bound[j] - anchor[j]) / (v[j] - anchor[j])
    if not any(violated):
        return np.array(v)
    alpha = min(ratio)
    out = [anchor[j] + alpha * (v[j] - anchor[j]) for j in range(n)]
    for j in range(n):
        if violated[j] and ratio[j] == alpha:
            out[j] = bound[j]
        out[j] = min(max(out[j], lo[j]), hi[j])
    return np.array(out)


def repair_projection_midpoint(v, lo, hi, **_):
    mid = [(l + h) / 2.0 for l, h in zip(lo, hi)]
    return _repair_alpha_blend(v, lo, hi, mid)


def repair_projection_base(v, lo, hi, base=None, **_):
    return _repair_alpha_blend(v, lo, hi, list(base))


REPAIR_ORACLES = {
    "reinitialization": repair_reinitialization,
    "projection": repair_projection,
    "reflection": repair_reflection,
    "wrapping": repair_wrapping,
    "transformation": repair_transformation,
    "rand-base": repair_rand_base,
    "midpoint-base": repair_midpoint_base,
    "midpoint-target": repair_midpoint_target,
    "conservatism": repair_conservatism,
    "projection-midpoint": repair_projection_midpoint,
    "projection-base": repair_projection_base,
}


# --- success-history sampling --------------------------------------------

def sample_parameters_oracle(m_f, m_cr, rng):
    slot = int(rng.integers(len(m_f)))
    f = m_f[slot] + 0.1 * rng.standard_cauchy()
    while f <= 0.0:
        f = m_f[slot] + 0.1 * rng.standard_cauchy()
    f = min(float(f), 1.0)
    cr = rng.normal(m_cr[slot], 0.1)
    cr = min(max(float(cr), 0.0), 1.0)
    return f, cr
