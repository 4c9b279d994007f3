#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "lacewalk/gaussian_mixture.hpp"
#include "lacewalk/majorant.hpp"
#include "lacewalk/mc.hpp"

namespace lacewalk {
namespace lace {

/// An edge {s, t} with s < t on an integer interval.
struct Edge {
  int s = 0;
  int t = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// A set of edges on [a, b]; kept sorted and duplicate-free.
class Graph {
 public:
  Graph(int a, int b, std::vector<Edge> edges);
  int a() const { return a_; }
  int b() const { return b_; }
  const std::vector<Edge>& edges() const { return edges_; }
  Graph with_edge(Edge e) const;

 private:
  int a_, b_;
  std::vector<Edge> edges_;
};

/// Connected in the interval sense: a and b are endpoints of edges, and the
/// open intervals (s, t) of the edges cover the open interval (a, b).
bool is_connected(const Graph& g);

/// A minimally connected graph, with edges in prescription order and the
/// equivalent interdistance vector (m_1, ..., m_{2N-1}).
struct Lace {
  int a = 0;
  int b = 0;
  std::vector<Edge> edges;

  int size() const { return static_cast<int>(edges.size()); }  // N
  std::vector<int> m_vector() const;
  Graph as_graph() const { return Graph(a, b, edges); }
  static Lace from_m(int a, std::span<const int> m);
};

/// Position-to-bond maps of the sorted-endpoint layout: bond i covers sorted
/// positions (underline(i), overline(i)); beta(p) is the bond owning p.
int underline_pos(int i, int N);
int overline_pos(int i, int N);
int beta_bond(int p, int N);

/// Extracts the unique lace of a connected graph by the greedy prescription
/// t_1 = max{t : (a,t) in g}, then alternately the farthest reachable t and
/// the smallest s attaining it. Throws ValidationError on disconnected input.
Lace lace_of(const Graph& g);

/// Edges st not in l whose addition leaves the extracted lace unchanged.
std::vector<Edge> compatible_edges(const Lace& l);

/// All laces with exactly N edges on [0, n], ordered by m-vector.
std::vector<Lace> enumerate_laces(int N, int n);

/// A walk x_0 = 0, x_1, ..., x_n in R^d stored flat.
struct Path {
  int dim = 0;
  std::vector<double> coords;  // (steps + 1) * dim; x_0 = 0

  int steps() const { return static_cast<int>(coords.size()) / dim - 1; }
  const double* point(int i) const { return coords.data() + static_cast<std::size_t>(i) * dim; }
  double dist(int i, int j) const;
};

/// prod_{a <= i < j <= b} (1 - lambda 1{|x_j - x_i| <= rho}); closed ball.
double k_weight(const Path& p, int a, int b, double lambda, double rho);

/// Sum over connected graphs on [0, n] of prod (-lambda U_st), by explicit
/// enumeration of subsets of the active edges. Rejects n > 6.
double j_weight_bruteforce(const Path& p, int n, double lambda, double rho);

/// The same sum through the lace resummation:
/// sum_N (-lambda)^N sum_{laces} prod_{lace} U prod_{compatible} (1 - lambda U).
/// N_max < 0 means all feasible N (exact). Requires n <= 7 (cached tables).
double j_weight_lace(const Path& p, int n, double lambda, double rho, int N_max = -1);

/// Relative residual of K[0,n] = K[1,n] + sum_m J[0,m] K[m,n] on one path.
double recursion_residual(const Path& p, int n, double lambda, double rho);

/// Full-expansion check: sum over ALL graphs on [0,n] of prod (-lambda U)
/// equals k_weight. Returns the absolute difference. n <= 4.
double kab_expansion_residual(const Path& p, int n, double lambda, double rho);

/// Census helpers on [0, n] (n <= 6): number of connected graphs, and the
/// partition identity sum over laces of 2^{|C(lace)|}.
std::int64_t count_connected_graphs(int n);
std::int64_t lace_partition_sum(int n);

/// Chain family G_u for the overlap integrals: u = 0 is the point mass.
struct XiFamily {
  std::function<std::optional<GaussianMixture>(double u)> at;

  /// G_u = phi_{nu u}.
  static XiFamily phi_semigroup(int dim, double nu = 1.0);
  /// G_u = Gamma_{round(u)} of an envelope family (integer u only).
  static XiFamily from_majorant(const MajorantFamily& family);
};

/// Monte Carlo estimate of int Xi_l(G, rho, t_shift)(x) dx: samples the chain
/// of G increments over the sorted lace points and averages the product of
/// bond indicators, scaled by the G masses. N <= 3.
McEstimate xi_mc(const Lace& l, const XiFamily& G, double rho,
                 std::span<const double> t_shift, std::int64_t n_samples, std::uint64_t seed);

}  // namespace lace
}  // namespace lacewalk
