#pragma once

// Brute-force reference computations used by the acceptance suite and the
// unit tests. Each one follows the textbook definition and shares no code
// with the library routine it checks.

#include <cstdint>
#include <vector>

#include "clem/ghf.hpp"
#include "clem/graph.hpp"
#include "clem/rng.hpp"

namespace clem::oracle {

/// Random multigraph on n vertices: each pair joined with probability p,
/// a few pairs doubled. Positions are random points in the unit square.
Graph random_graph(CounterRng& rng, int n, double p);

/// All-pairs hop distances by Floyd-Warshall (+infinity when disconnected).
std::vector<double> floyd_warshall(const Graph& g);

/// All-pairs effective resistances from the Moore-Penrose pseudo-inverse of
/// the full Laplacian (+infinity across components).
std::vector<double> pinv_resistance(const Graph& g);

/// Articulation points by deleting each vertex and counting components.
std::vector<bool> articulation_by_removal(const Graph& g);

/// Minimum of dis(R)/2 + mark mismatch over every relation R of A x B that
/// is a correspondence (exhaustive include/exclude over all pairs).
double ghf_brute_force(const MarkedMetricSpace& a, const MarkedMetricSpace& b);

/// Whether a bijection preserving distances, marks and values exists
/// (search over all permutations).
bool mark_matching_isometry(const MarkedMetricSpace& a, const MarkedMetricSpace& b, double tol = 1e-12);

}  // namespace clem::oracle
