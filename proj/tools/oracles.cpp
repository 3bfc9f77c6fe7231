#include "oracles.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace clem::oracle {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

int count_components(const Graph& g, int removed) {
  const int n = static_cast<int>(g.size());
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  int count = 0;
  for (int s = 0; s < n; ++s) {
    if (s == removed || label[static_cast<std::size_t>(s)] >= 0) continue;
    std::vector<int> stack{s};
    label[static_cast<std::size_t>(s)] = count;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const auto& arc : g.arcs(v)) {
        if (arc.to != removed && label[static_cast<std::size_t>(arc.to)] < 0) {
          label[static_cast<std::size_t>(arc.to)] = count;
          stack.push_back(arc.to);
        }
      }
    }
    ++count;
  }
  return count;
}
}  // namespace

Graph random_graph(CounterRng& rng, int n, double p) {
  Graph g;
  for (int i = 0; i < n; ++i) g.add_vertex({rng.uniform(), rng.uniform()});
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.uniform() < p) {
        g.add_edge(i, j);
        if (rng.uniform() < 0.1) g.add_edge(i, j);
      }
    }
  }
  return g;
}

std::vector<double> floyd_warshall(const Graph& g) {
  const std::size_t n = g.size();
  std::vector<double> d(n * n, kInf);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0.0;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.edge(static_cast<int>(e));
    d[static_cast<std::size_t>(u) * n + static_cast<std::size_t>(v)] = 1.0;
    d[static_cast<std::size_t>(v) * n + static_cast<std::size_t>(u)] = 1.0;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
    }
  }
  return d;
}

std::vector<double> pinv_resistance(const Graph& g) {
  const std::size_t n = g.size();
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.edge(static_cast<int>(e));
    lap(u, u) += 1.0;
    lap(v, v) += 1.0;
    lap(u, v) -= 1.0;
    lap(v, u) -= 1.0;
  }
  Eigen::MatrixXd pinv = lap.completeOrthogonalDecomposition().pseudoInverse();
  auto fw = floyd_warshall(g);
  std::vector<double> r(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
      r[i * n + j] = std::isinf(fw[i * n + j]) ? kInf : pinv(ii, ii) + pinv(jj, jj) - 2.0 * pinv(ii, jj);
    }
  }
  return r;
}

std::vector<bool> articulation_by_removal(const Graph& g) {
  const int base = count_components(g, -1);
  std::vector<bool> out(g.size(), false);
  for (int v = 0; v < static_cast<int>(g.size()); ++v) {
    // Removing an isolated vertex lowers the count by one; a cut vertex raises it.
    out[static_cast<std::size_t>(v)] = count_components(g, v) > base - (g.degree(v) == 0 ? 1 : 0);
  }
  return out;
}

double ghf_brute_force(const MarkedMetricSpace& a, const MarkedMetricSpace& b) {
  const std::size_t na = a.size, nb = b.size, np = na * nb;
  std::vector<int> pa(np), pb(np);
  for (std::size_t k = 0; k < np; ++k) {
    pa[k] = static_cast<int>(k / nb);
    pb[k] = static_cast<int>(k % nb);
  }
  std::vector<int> mark_a(na, -1), mark_b(nb, -1);
  for (std::size_t k = 0; k < a.marked.size(); ++k) mark_a[static_cast<std::size_t>(a.marked[k])] = static_cast<int>(k);
  for (std::size_t k = 0; k < b.marked.size(); ++k) mark_b[static_cast<std::size_t>(b.marked[k])] = static_cast<int>(k);

  double best = kInf;
  std::vector<std::size_t> chosen;
  std::vector<int> cover_a(na, 0), cover_b(nb, 0);
  std::function<void(std::size_t, double)> walk = [&](std::size_t k, double dis) {
    if (k == np) {
      for (std::size_t i = 0; i < na; ++i) {
        if (!cover_a[i]) return;
      }
      for (std::size_t j = 0; j < nb; ++j) {
        if (!cover_b[j]) return;
      }
      double mismatch = 0.0;
      if (a.marked.empty() != b.marked.empty()) {
        mismatch = kInf;
      } else {
        for (int side = 0; side < 2; ++side) {
          const auto& marks = side == 0 ? a.marked : b.marked;
          for (int m : marks) {
            double partner = kInf;
            for (std::size_t c : chosen) {
              int x = side == 0 ? pa[c] : pb[c];
              if (x != m) continue;
              int ka = mark_a[static_cast<std::size_t>(pa[c])], kb = mark_b[static_cast<std::size_t>(pb[c])];
              if (ka < 0 || kb < 0) continue;
              partner = std::min(partner, std::abs(a.values[static_cast<std::size_t>(ka)] -
                                                   b.values[static_cast<std::size_t>(kb)]));
            }
            mismatch = std::max(mismatch, partner);
          }
        }
      }
      best = std::min(best, dis / 2.0 + mismatch);
      return;
    }
    walk(k + 1, dis);
    double d = dis;
    for (std::size_t c : chosen) {
      d = std::max(d, std::abs(a.d(static_cast<std::size_t>(pa[k]), static_cast<std::size_t>(pa[c])) -
                               b.d(static_cast<std::size_t>(pb[k]), static_cast<std::size_t>(pb[c]))));
    }
    chosen.push_back(k);
    ++cover_a[static_cast<std::size_t>(pa[k])];
    ++cover_b[static_cast<std::size_t>(pb[k])];
    walk(k + 1, d);
    --cover_a[static_cast<std::size_t>(pa[k])];
    --cover_b[static_cast<std::size_t>(pb[k])];
    chosen.pop_back();
  };
  walk(0, 0.0);
  return best;
}

bool mark_matching_isometry(const MarkedMetricSpace& a, const MarkedMetricSpace& b, double tol) {
  if (a.size != b.size || a.marked.size() != b.marked.size()) return false;
  std::vector<int> perm(a.size);
  std::iota(perm.begin(), perm.end(), 0);
  auto value_at = [](const MarkedMetricSpace& s, int v) -> const double* {
    for (std::size_t k = 0; k < s.marked.size(); ++k) {
      if (s.marked[k] == v) return &s.values[k];
    }
    return nullptr;
  };
  do {
    bool ok = true;
    for (std::size_t i = 0; i < a.size && ok; ++i) {
      for (std::size_t j = 0; j < a.size && ok; ++j) {
        ok = std::abs(a.d(i, j) - b.d(static_cast<std::size_t>(perm[i]), static_cast<std::size_t>(perm[j]))) <= tol;
      }
      const double* fa = value_at(a, static_cast<int>(i));
      const double* fb = value_at(b, perm[i]);
      if ((fa == nullptr) != (fb == nullptr)) ok = false;
      if (ok && fa && std::abs(*fa - *fb) > tol) ok = false;
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace clem::oracle
