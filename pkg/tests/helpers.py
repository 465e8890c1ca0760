"""Shared test oracles, all deliberately independent of the code they check."""

import itertools

from cliquelab import GenSpec, Graph, gen_random_graph


def random_graph(n, a, b, seed):
    return gen_random_graph(GenSpec(n, a, b, seed))


def all_graphs(n):
    """Every labelled simple graph on n vertices."""
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for bits in range(1 << len(pairs)):
        yield Graph.from_edges(n, [p for i, p in enumerate(pairs) if (bits >> i) & 1])


def subset_is_clique(g, vs):
    """Pairwise edge check straight from the definition."""
    return all(g.has_edge(i, j) for i, j in itertools.combinations(vs, 2))


def cliques_lex(g, max_size):
    """All nonempty cliques of size <= max_size as sorted tuples, in
    lexicographic (= depth-first extension) order."""
    out = []

    def extend(prefix, cands):
        for idx, v in enumerate(cands):
            clique = prefix + (v,)
            out.append(clique)
            if len(clique) < max_size:
                extend(clique, [u for u in cands[idx + 1 :] if g.has_edge(u, v)])

    extend((), list(range(1, g.n + 1)))
    return out


def truth_table_satisfiable(num_vars, clauses):
    """Exhaustive 2^n check; the ground truth for small formulas."""
    for bits in range(1 << num_vars):
        assignment = [(bits >> (v - 1)) & 1 for v in range(num_vars + 1)]
        if all(any(assignment[abs(l)] == (l > 0) for l in c) for c in clauses):
            return True
    return False


def clause_universe_3vars():
    """All non-tautological clauses over variables 1..3, width 1..3, each
    using distinct variables, in a fixed order."""
    out = []
    for width in (1, 2, 3):
        for vs in itertools.combinations((1, 2, 3), width):
            for signs in itertools.product((1, -1), repeat=width):
                out.append(tuple(s * v for s, v in zip(signs, vs)))
    return out
