#include "clem/metrics.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>
#include <algorithm>
#include <stdexcept>

namespace clem {

std::string MetricScheme::name() const {
  switch (kind) {
    case SchemeKind::chemical:
      return "chemical";
    case SchemeKind::resistance:
      return "resistance";
    case SchemeKind::geodesic_functional:
      return functional.name();
  }
  return "chemical";
}

MetricScheme MetricScheme::parse(const std::string& name, double eps) {
  if (name == "chemical") return chemical();
  if (name == "resistance") return resistance();
  if (name == "area") return geodesic(PathFunctional::area(eps));
  if (name == "count") return geodesic(PathFunctional::count(eps));
  throw std::invalid_argument("unknown metric scheme: " + name);
}

Region make_region(std::vector<int> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  Region r;
  r.vertices = std::move(vertices);
  return r;
}

namespace {

// Laplacian of one connected component with the ground vertex removed.
class GroundedLaplacian {
 public:
  GroundedLaplacian(const Graph& g, const std::vector<int>& component, int ground) {
    index_.assign(g.size(), -1);
    int k = 0;
    for (int v : component) {
      if (v != ground) index_[static_cast<std::size_t>(v)] = k++;
    }
    n_ = k;
    if (n_ == 0) return;
    std::vector<Eigen::Triplet<double>> triplets;
    for (int v : component) {
      int iv = index_[static_cast<std::size_t>(v)];
      if (iv < 0) continue;
      for (const auto& a : g.arcs(v)) {
        triplets.emplace_back(iv, iv, 1.0);
        int iw = index_[static_cast<std::size_t>(a.to)];
        if (iw >= 0) triplets.emplace_back(iv, iw, -1.0);
      }
    }
    Eigen::SparseMatrix<double> lap(n_, n_);
    lap.setFromTriplets(triplets.begin(), triplets.end());
    if (static_cast<std::size_t>(n_) <= kDenseLimit) {
      dense_.compute(Eigen::MatrixXd(lap));
      if (dense_.info() != Eigen::Success) throw std::runtime_error("resistance: Cholesky failed");
      use_dense_ = true;
    } else {
      sparse_ = lap;
      cg_.setTolerance(1e-14);
      cg_.setMaxIterations(20 * n_ + 1000);
      cg_.compute(sparse_);
    }
  }

  /// Column of the inverse grounded Laplacian for vertex v (zero at ground).
  Eigen::VectorXd green(int v) const {
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n_);
    int iv = index_[static_cast<std::size_t>(v)];
    if (iv < 0) return rhs;
    rhs(iv) = 1.0;
    if (use_dense_) return dense_.solve(rhs);
    Eigen::VectorXd sol = cg_.solve(rhs);
    if (cg_.info() != Eigen::Success) throw std::runtime_error("resistance: conjugate gradients did not converge");
    return sol;
  }

  double at(const Eigen::VectorXd& column, int v) const {
    int iv = index_[static_cast<std::size_t>(v)];
    return iv < 0 ? 0.0 : column(iv);
  }

 private:
  std::vector<int> index_;
  int n_ = 0;
  bool use_dense_ = false;
  Eigen::LLT<Eigen::MatrixXd> dense_;
  Eigen::SparseMatrix<double> sparse_;
  Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                           Eigen::DiagonalPreconditioner<double>>
      cg_;
};

}  // namespace

std::vector<double> resistance_table(const Graph& g, const std::vector<int>& marked) {
  const std::size_t m = marked.size();
  std::vector<double> table(m * m, kInfiniteDistance);
  auto comp = connected_components(g);
  std::vector<bool> done(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    if (done[i]) continue;
    const int label = comp[static_cast<std::size_t>(marked[i])];
    std::vector<int> members;
    for (std::size_t v = 0; v < g.size(); ++v) {
      if (comp[v] == label) members.push_back(static_cast<int>(v));
    }
    std::vector<std::size_t> group;
    for (std::size_t j = i; j < m; ++j) {
      if (comp[static_cast<std::size_t>(marked[j])] == label) group.push_back(j);
    }
    const int ground = marked[i];
    GroundedLaplacian lap(g, members, ground);
    // With G the grounded Green function, R(a,b) = G_aa + G_bb - 2 G_ab.
    std::vector<Eigen::VectorXd> columns;
    for (std::size_t j : group) columns.push_back(lap.green(marked[j]));
    for (std::size_t a = 0; a < group.size(); ++a) {
      for (std::size_t b = 0; b < group.size(); ++b) {
        int va = marked[group[a]], vb = marked[group[b]];
        double r = va == vb ? 0.0
                            : lap.at(columns[a], va) + lap.at(columns[b], vb) - 2.0 * lap.at(columns[a], vb);
        table[group[a] * m + group[b]] = std::max(0.0, r);
      }
      done[group[a]] = true;
    }
  }
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      double s = 0.5 * (table[a * m + b] + table[b * m + a]);
      table[a * m + b] = table[b * m + a] = s;
    }
  }
  return table;
}

std::vector<double> chemical_table(const Graph& g, const std::vector<int>& marked) {
  const std::size_t m = marked.size();
  std::vector<double> table(m * m, kInfiniteDistance);
  for (std::size_t i = 0; i < m; ++i) {
    auto dist = bfs_distances(g, marked[i]);
    for (std::size_t j = 0; j < m; ++j) {
      int d = dist[static_cast<std::size_t>(marked[j])];
      if (d != kUnreachable) table[i * m + j] = d;
    }
  }
  return table;
}

namespace {

void require_in(const Region& u, int v) {
  if (!u.contains(v)) throw std::invalid_argument("vertex outside region");
}

}  // namespace

double chemical_distance(const GasketGraph& g, const Region& u, int x, int y) {
  require_in(u, x);
  require_in(u, y);
  InducedGraph sub = admissible_distance_graph(g, u);
  auto dist = bfs_distances(sub.graph, sub.from_parent[static_cast<std::size_t>(x)]);
  int d = dist[static_cast<std::size_t>(sub.from_parent[static_cast<std::size_t>(y)])];
  return d == kUnreachable ? kInfiniteDistance : d;
}

double effective_resistance(const GasketGraph& g, const Region& u, int x, int y) {
  require_in(u, x);
  require_in(u, y);
  if (x == y) return 0.0;
  InducedGraph sub = admissible_distance_graph(g, u);
  auto table = resistance_table(sub.graph, {sub.from_parent[static_cast<std::size_t>(x)],
                                            sub.from_parent[static_cast<std::size_t>(y)]});
  return table[1];
}

double InternalMetric::between(int a, int b) const {
  auto ia = std::find(marked.begin(), marked.end(), a);
  auto ib = std::find(marked.begin(), marked.end(), b);
  if (ia == marked.end() || ib == marked.end()) throw std::out_of_range("InternalMetric: vertex not marked");
  return (*this)(static_cast<std::size_t>(ia - marked.begin()), static_cast<std::size_t>(ib - marked.begin()));
}

InternalMetric internal_metric(const GasketGraph& g, const Region& u, const MetricScheme& scheme,
                               const std::vector<int>& marked) {
  for (int v : marked) require_in(u, v);
  InternalMetric out;
  out.region = u;
  out.scheme = scheme;
  out.marked = marked;
  InducedGraph sub = admissible_distance_graph(g, u);
  std::vector<int> local;
  for (int v : marked) local.push_back(sub.from_parent[static_cast<std::size_t>(v)]);
  const std::size_t m = marked.size();
  switch (scheme.kind) {
    case SchemeKind::chemical:
      out.values = chemical_table(sub.graph, local);
      break;
    case SchemeKind::resistance:
      out.values = resistance_table(sub.graph, local);
      break;
    case SchemeKind::geodesic_functional:
      out.values.assign(m * m, 0.0);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
          auto gv = approx_geodesic_metric(g, u, scheme.functional, marked[i], marked[j]);
          out.values[i * m + j] = out.values[j * m + i] = gv.value;
          out.exact = out.exact && gv.exact;
        }
      }
      break;
  }
  return out;
}

double metric_distance(const GasketGraph& g, const Region& u, const MetricScheme& scheme, int x, int y) {
  switch (scheme.kind) {
    case SchemeKind::chemical:
      return chemical_distance(g, u, x, y);
    case SchemeKind::resistance:
      return effective_resistance(g, u, x, y);
    case SchemeKind::geodesic_functional:
      return approx_geodesic_metric(g, u, scheme.functional, x, y).value;
  }
  return kInfiniteDistance;
}

std::pair<double, double> restrict_and_compare(const GasketGraph& g, const Region& v, const Region& v_prime,
                                               const MetricScheme& scheme, int x, int y) {
  for (int w : v.vertices) {
    if (!v_prime.contains(w)) throw std::invalid_argument("restrict_and_compare: V is not contained in V'");
  }
  return {metric_distance(g, v, scheme, x, y), metric_distance(g, v_prime, scheme, x, y)};
}

}  // namespace clem
