#include "lacewalk/lace.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <mutex>

#include "lacewalk/common.hpp"
#include "lacewalk/parallel.hpp"
#include "lacewalk/rng.hpp"

namespace lacewalk {
namespace lace {

Graph::Graph(int a, int b, std::vector<Edge> edges) : a_(a), b_(b), edges_(std::move(edges)) {
  if (a_ < 0 || b_ < a_) throw ValidationError("Graph: need 0 <= a <= b");
  for (const auto& e : edges_)
    if (e.s >= e.t || e.s < a_ || e.t > b_)
      throw ValidationError("Graph: edge outside interval or not s < t");
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

Graph Graph::with_edge(Edge e) const {
  std::vector<Edge> es = edges_;
  es.push_back(e);
  return Graph(a_, b_, std::move(es));
}

bool is_connected(const Graph& g) {
  const int a = g.a(), b = g.b();
  if (b <= a) return false;
  bool has_a = false, has_b = false;
  for (const auto& e : g.edges()) {
    has_a = has_a || e.s == a;
    has_b = has_b || e.t == b;
  }
  if (!has_a || !has_b) return false;
  for (int c = a + 1; c < b; ++c) {
    bool covered = false;
    for (const auto& e : g.edges())
      if (e.s < c && c < e.t) { covered = true; break; }
    if (!covered) return false;
  }
  for (int c = a; c < b; ++c) {  // unit cells (c, c+1)
    bool covered = false;
    for (const auto& e : g.edges())
      if (e.s <= c && e.t >= c + 1) { covered = true; break; }
    if (!covered) return false;
  }
  return true;
}

int underline_pos(int i, int N) {
  if (i < 1 || i > N) throw ValidationError("underline_pos: bond index out of range");
  return i == 1 ? 0 : 2 * i - 3;
}

int overline_pos(int i, int N) {
  if (i < 1 || i > N) throw ValidationError("overline_pos: bond index out of range");
  return i <= N - 1 ? 2 * i : 2 * N - 1;
}

int beta_bond(int p, int N) {
  if (p < 0 || p > 2 * N - 1) throw ValidationError("beta_bond: position out of range");
  if (p == 0) return 1;
  if (p == 2 * N - 1) return N;
  return p % 2 == 0 ? p / 2 : (p + 3) / 2;
}

std::vector<int> Lace::m_vector() const {
  const int N = size();
  std::vector<int> pts(2 * N);
  for (int i = 1; i <= N; ++i) {
    pts[underline_pos(i, N)] = edges[i - 1].s;
    pts[overline_pos(i, N)] = edges[i - 1].t;
  }
  std::vector<int> m(2 * N - 1);
  for (int j = 1; j < 2 * N; ++j) m[j - 1] = pts[j] - pts[j - 1];
  return m;
}

Lace Lace::from_m(int a, std::span<const int> m) {
  if (m.size() % 2 == 0 || m.empty()) throw ValidationError("Lace::from_m: need 2N-1 entries");
  const int N = (static_cast<int>(m.size()) + 1) / 2;
  const int last = 2 * N - 1;
  for (int j = 1; j <= last; ++j) {
    const int lb = (j == 1 || j == last || j % 2 == 0) ? 1 : 0;
    if (m[j - 1] < lb) throw ValidationError("Lace::from_m: interdistance below its bound");
  }
  std::vector<int> pts(2 * N);
  pts[0] = a;
  for (int j = 1; j < 2 * N; ++j) pts[j] = pts[j - 1] + m[j - 1];
  Lace l;
  l.a = a;
  l.b = pts.back();
  l.edges.resize(N);
  for (int i = 1; i <= N; ++i)
    l.edges[i - 1] = {pts[underline_pos(i, N)], pts[overline_pos(i, N)]};
  for (int i = 0; i < N; ++i)
    if (l.edges[i].s >= l.edges[i].t) throw ValidationError("Lace::from_m: degenerate bond");
  for (int i = 0; i + 1 < N; ++i)
    if (!(l.edges[i + 1].s < l.edges[i].t)) throw ValidationError("Lace::from_m: no overlap");
  for (int i = 0; i + 2 < N; ++i)
    if (!(l.edges[i].t <= l.edges[i + 2].s)) throw ValidationError("Lace::from_m: bad ordering");
  return l;
}

Lace lace_of(const Graph& g) {
  if (!is_connected(g)) throw ValidationError("lace_of: graph is not connected");
  const int a = g.a(), b = g.b();
  Lace l;
  l.a = a;
  l.b = b;
  int t = -1;
  for (const auto& e : g.edges())
    if (e.s == a) t = std::max(t, e.t);
  l.edges.push_back({a, t});
  while (t < b) {
    int next_t = -1;
    for (const auto& e : g.edges())
      if (e.s < t) next_t = std::max(next_t, e.t);
    int next_s = b;
    for (const auto& e : g.edges())
      if (e.t == next_t) next_s = std::min(next_s, e.s);
    l.edges.push_back({next_s, next_t});
    t = next_t;
  }
  return l;
}

std::vector<Edge> compatible_edges(const Lace& l) {
  std::vector<Edge> out;
  const Graph base = l.as_graph();
  for (int s = l.a; s < l.b; ++s) {
    for (int t = s + 1; t <= l.b; ++t) {
      const Edge e{s, t};
      if (std::find(l.edges.begin(), l.edges.end(), e) != l.edges.end()) continue;
      const Lace extracted = lace_of(base.with_edge(e));
      if (extracted.edges == l.edges) out.push_back(e);
    }
  }
  return out;
}

std::vector<Lace> enumerate_laces(int N, int n) {
  if (N < 1 || n < 1) throw ValidationError("enumerate_laces: N, n >= 1 required");
  if (N > 8) throw ValidationError("enumerate_laces: N <= 8 (desk scale)");
  std::vector<Lace> out;
  if (N == 1) {
    out.push_back(Lace::from_m(0, std::array<int, 1>{n}));
    return out;
  }
  const int len = 2 * N - 1;
  std::vector<int> m(len, 0);
  auto lb = [len](int j) { return (j == 1 || j == len || j % 2 == 0) ? 1 : 0; };
  std::function<void(int, int)> gen = [&](int j, int remaining) {
    if (j == len) {
      if (remaining >= lb(j)) {
        m[j - 1] = remaining;
        out.push_back(Lace::from_m(0, m));
      }
      return;
    }
    int tail_min = 0;
    for (int t = j + 1; t <= len; ++t) tail_min += lb(t);
    for (int v = lb(j); v <= remaining - tail_min; ++v) {
      m[j - 1] = v;
      gen(j + 1, remaining - v);
    }
  };
  gen(1, n);
  return out;
}

double Path::dist(int i, int j) const {
  const double* a = point(i);
  const double* b = point(j);
  double s = 0.0;
  for (int c = 0; c < dim; ++c) {
    const double d = a[c] - b[c];
    s += d * d;
  }
  return std::sqrt(s);
}

double k_weight(const Path& p, int a, int b, double lambda, double rho) {
  double w = 1.0;
  for (int i = a; i < b; ++i)
    for (int j = i + 1; j <= b; ++j)
      if (p.dist(i, j) <= rho) w *= 1.0 - lambda;
  return w;
}

namespace {

// Edge universe on [0, n] with coverage masks: bits [0, n-2] interior points,
// [n-1, 2n-2] unit cells, 2n-1 endpoint 0, 2n endpoint n.
struct Universe {
  int n = 0;
  std::vector<Edge> edges;
  std::vector<std::uint64_t> cover;
  std::uint64_t full = 0;
};

Universe make_universe(int n) {
  Universe u;
  u.n = n;
  for (int s = 0; s < n; ++s)
    for (int t = s + 1; t <= n; ++t) u.edges.push_back({s, t});
  u.cover.resize(u.edges.size());
  for (std::size_t e = 0; e < u.edges.size(); ++e) {
    const auto [s, t] = u.edges[e];
    std::uint64_t m = 0;
    for (int c = std::max(1, s + 1); c <= std::min(n - 1, t - 1); ++c) m |= 1ull << (c - 1);
    for (int c = s; c < t; ++c) m |= 1ull << (n - 1 + c);
    if (s == 0) m |= 1ull << (2 * n - 1);
    if (t == n) m |= 1ull << (2 * n);
    u.cover[e] = m;
  }
  for (int c = 1; c < n; ++c) u.full |= 1ull << (c - 1);
  for (int c = 0; c < n; ++c) u.full |= 1ull << (n - 1 + c);
  u.full |= 1ull << (2 * n - 1);
  u.full |= 1ull << (2 * n);
  return u;
}

int edge_index(const Universe& u, Edge e) {
  const auto it = std::lower_bound(u.edges.begin(), u.edges.end(), e);
  return static_cast<int>(it - u.edges.begin());
}

std::uint32_t active_mask(const Universe& u, const Path& p, double rho) {
  std::uint32_t m = 0;
  for (std::size_t e = 0; e < u.edges.size(); ++e)
    if (p.dist(u.edges[e].s, u.edges[e].t) <= rho) m |= 1u << e;
  return m;
}

// Lace resummation tables: per lace, its edge mask and compatible-edge mask
// over the [0, n] universe.
struct LaceEntry {
  int N = 0;
  std::uint32_t lace_mask = 0;
  std::uint32_t compat_mask = 0;
};

struct LaceTable {
  Universe universe;
  std::vector<LaceEntry> entries;
};

const LaceTable& lace_table(int n) {
  constexpr int kMaxN = 7;
  if (n < 1 || n > kMaxN) throw ValidationError("lace table: n in [1, 7] required");
  static std::array<LaceTable, kMaxN + 1> tables;
  static std::array<std::once_flag, kMaxN + 1> built;
  std::call_once(built[n], [n]() {
    LaceTable t;
    t.universe = make_universe(n);
    for (int N = 1; N < std::max(2, n); ++N) {
      for (const Lace& l : enumerate_laces(N, n)) {
        LaceEntry e;
        e.N = N;
        for (const Edge& ed : l.edges) e.lace_mask |= 1u << edge_index(t.universe, ed);
        for (const Edge& ed : compatible_edges(l)) e.compat_mask |= 1u << edge_index(t.universe, ed);
        t.entries.push_back(e);
      }
    }
    tables[n] = std::move(t);
  });
  return tables[n];
}

}  // namespace

double j_weight_bruteforce(const Path& p, int n, double lambda, double rho) {
  if (n < 1 || n > 6) throw ValidationError("j_weight_bruteforce: n in [1, 6] required");
  const Universe u = make_universe(n);
  std::vector<std::uint64_t> cover;
  for (std::size_t e = 0; e < u.edges.size(); ++e)
    if (p.dist(u.edges[e].s, u.edges[e].t) <= rho) cover.push_back(u.cover[e]);

  double total = 0.0;
  // depth-first over subsets of the active edges; a subset contributes
  // (-lambda)^{|subset|} iff its coverage is complete
  std::function<void(std::size_t, std::uint64_t, double)> walk =
      [&](std::size_t idx, std::uint64_t mask, double weight) {
        if (idx == cover.size()) {
          if (mask == u.full) total += weight;
          return;
        }
        walk(idx + 1, mask, weight);
        walk(idx + 1, mask | cover[idx], weight * -lambda);
      };
  walk(0, 0, 1.0);
  return total;
}

double j_weight_lace(const Path& p, int n, double lambda, double rho, int N_max) {
  const LaceTable& table = lace_table(n);
  if (N_max < 0) N_max = n;  // all feasible N
  const std::uint32_t active = active_mask(table.universe, p, rho);
  std::array<double, 8> neg_pow{};
  neg_pow[0] = 1.0;
  for (int i = 1; i < 8; ++i) neg_pow[i] = neg_pow[i - 1] * -lambda;
  std::array<double, 32> sup_pow{};
  sup_pow[0] = 1.0;
  for (int i = 1; i < 32; ++i) sup_pow[i] = sup_pow[i - 1] * (1.0 - lambda);

  double total = 0.0;
  for (const LaceEntry& e : table.entries) {
    if (e.N > N_max) continue;
    if ((e.lace_mask & ~active) != 0) continue;  // some lace bond inactive
    total += neg_pow[e.N] * sup_pow[std::popcount(e.compat_mask & active)];
  }
  return total;
}

double recursion_residual(const Path& p, int n, double lambda, double rho) {
  const double k0n = k_weight(p, 0, n, lambda, rho);
  double rhs = k_weight(p, 1, n, lambda, rho);
  for (int m = 1; m <= n; ++m)
    rhs += j_weight_lace(p, m, lambda, rho) * k_weight(p, m, n, lambda, rho);
  return std::abs(k0n - rhs) / std::max(1.0, std::abs(k0n));
}

double kab_expansion_residual(const Path& p, int n, double lambda, double rho) {
  if (n < 1 || n > 4) throw ValidationError("kab_expansion_residual: n in [1, 4] required");
  const Universe u = make_universe(n);
  std::vector<double> factor(u.edges.size());
  for (std::size_t e = 0; e < u.edges.size(); ++e)
    factor[e] = p.dist(u.edges[e].s, u.edges[e].t) <= rho ? -lambda : 0.0;
  double total = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << u.edges.size()); ++mask) {
    double prod = 1.0;
    for (std::size_t e = 0; e < u.edges.size(); ++e)
      if (mask & (1u << e)) prod *= factor[e];
    total += prod;
  }
  return std::abs(total - k_weight(p, 0, n, lambda, rho));
}

std::int64_t count_connected_graphs(int n) {
  if (n < 1 || n > 6) throw ValidationError("count_connected_graphs: n in [1, 6] required");
  const Universe u = make_universe(n);
  std::int64_t count = 0;
  for (std::uint32_t mask = 0; mask < (1u << u.edges.size()); ++mask) {
    std::uint64_t cov = 0;
    for (std::uint32_t m = mask; m != 0; m &= m - 1)
      cov |= u.cover[std::countr_zero(m)];
    if (cov == u.full) ++count;
  }
  return count;
}

std::int64_t lace_partition_sum(int n) {
  if (n < 1 || n > 6) throw ValidationError("lace_partition_sum: n in [1, 6] required");
  std::int64_t total = 0;
  for (int N = 1; N < std::max(2, n); ++N)
    for (const Lace& l : enumerate_laces(N, n))
      total += std::int64_t{1} << compatible_edges(l).size();
  return total;
}

XiFamily XiFamily::phi_semigroup(int dim, double nu) {
  XiFamily f;
  f.at = [dim, nu](double u) -> std::optional<GaussianMixture> {
    if (u == 0.0) return std::nullopt;
    return GaussianMixture::gaussian(dim, nu * u);
  };
  return f;
}

XiFamily XiFamily::from_majorant(const MajorantFamily& family) {
  XiFamily f;
  f.at = [family](double u) -> std::optional<GaussianMixture> {
    if (u == 0.0) return std::nullopt;
    const int n = static_cast<int>(std::lround(u));
    if (std::abs(u - n) > 1e-12 || n < 1)
      throw ValidationError("XiFamily: envelope families are defined at integers only");
    return family.gamma(n);
  };
  return f;
}

McEstimate xi_mc(const Lace& l, const XiFamily& G, double rho,
                 std::span<const double> t_shift, std::int64_t n_samples, std::uint64_t seed) {
  const int N = l.size();
  if (N > 3) throw ValidationError("xi_mc: N <= 3 required");
  const auto m = l.m_vector();
  const int legs = 2 * N - 1;
  if (!t_shift.empty() && static_cast<int>(t_shift.size()) != legs)
    throw ValidationError("xi_mc: t_shift must have 2N-1 entries");

  struct Leg {
    bool point = true;
    std::vector<double> cum_weight;  // normalized cumulative component weights
    std::vector<double> sigma;       // per-component standard deviations
  };
  std::vector<Leg> legs_data(legs);
  int dim = 0;
  double total_mass = 1.0;
  for (int i = 0; i < legs; ++i) {
    const double u = m[i] + (t_shift.empty() ? 0.0 : t_shift[i]);
    const auto mix = G.at(u);
    if (!mix) continue;
    if (!mix->positive()) throw ValidationError("xi_mc: chain family must be positive");
    dim = mix->dim();
    const double mass = mix->mass();
    total_mass *= mass;
    Leg leg;
    leg.point = false;
    double cum = 0.0;
    for (const auto& t : mix->terms()) {
      cum += t.weight / mass;
      leg.cum_weight.push_back(cum);
      leg.sigma.push_back(std::sqrt(t.var));
    }
    leg.cum_weight.back() = 1.0;
    legs_data[i] = std::move(leg);
  }
  if (dim == 0) throw ValidationError("xi_mc: all legs are point masses");

  struct Bond {
    int lo, hi;
  };
  std::vector<Bond> bonds(N);
  for (int i = 1; i <= N; ++i)
    bonds[i - 1] = {underline_pos(i, N), overline_pos(i, N)};

  const Accum acc = parallel_chunks(
      n_samples, 8192, Accum{},
      [&](std::int64_t lo, std::int64_t hi, Accum& a) {
        std::vector<double> pos(static_cast<std::size_t>(legs + 1) * dim, 0.0);
        for (std::int64_t s = lo; s < hi; ++s) {
          CounterRng rng(seed, stream_id(7, static_cast<std::uint64_t>(s)));
          for (int i = 0; i < legs; ++i) {
            double* cur = pos.data() + static_cast<std::size_t>(i + 1) * dim;
            const double* prev = pos.data() + static_cast<std::size_t>(i) * dim;
            const Leg& leg = legs_data[i];
            if (leg.point) {
              std::copy(prev, prev + dim, cur);
              continue;
            }
            const double u = rng.uniform();
            std::size_t c = 0;
            while (c + 1 < leg.cum_weight.size() && u > leg.cum_weight[c]) ++c;
            const double sigma = leg.sigma[c];
            for (int k = 0; k < dim; ++k) cur[k] = prev[k] + sigma * rng.normal();
          }
          double ind = 1.0;
          for (const Bond& b : bonds) {
            double d2 = 0.0;
            const double* x = pos.data() + static_cast<std::size_t>(b.lo) * dim;
            const double* y = pos.data() + static_cast<std::size_t>(b.hi) * dim;
            for (int k = 0; k < dim; ++k) d2 += (x[k] - y[k]) * (x[k] - y[k]);
            if (d2 > rho * rho) {
              ind = 0.0;
              break;
            }
          }
          a.add(ind);
        }
      },
      [](Accum& t, const Accum& p) { t.merge(p); });

  McEstimate e = acc.estimate();
  e.mean *= total_mass;
  e.std_err *= total_mass;
  return e;
}

}  // namespace lace
}  // namespace lacewalk
