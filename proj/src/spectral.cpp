#include "onefact/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "onefact/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace onefact {

namespace {

constexpr double kSlack = 1e-7;

int require_regular(const Graph& g) {
  auto d = g.regular_degree();
  if (!d) throw std::invalid_argument("graph is not regular");
  return *d;
}

void apply_adjacency(const Graph& g, const std::vector<double>& x,
                     std::vector<double>& y) {
  const int n = g.vertex_count();
#pragma omp parallel for schedule(static) if (n >= 2048)
  for (int u = 0; u < n; ++u) {
    double acc = 0.0;
    for (const auto& h : g.neighbors(u)) acc += x[h.to];
    y[u] = acc;
  }
}

void deflate_ones(std::vector<double>& x) {
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  for (double& v : x) v -= mean;
}

double norm(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace

double epsilon_star_for(int d, double lambda) {
  if (d <= 1) return lambda <= 1.0 ? 1.0 : 0.0;
  if (lambda <= 1.0) return 1.0;
  if (lambda >= d) return 0.0;
  return std::clamp(1.0 - std::log(lambda) / std::log(double(d)), 0.0, 1.0);
}

SpectralReport second_eigenvalue_dense(const Graph& g) {
  const int d = require_regular(g);
  const int n = g.vertex_count();
  SpectralReport rep;
  rep.d = d;
  rep.method = "dense";
  if (n <= 1) {
    rep.epsilon_star = 1.0;
    return rep;
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [u, v] : g.edges()) {
    a(u, v) = 1.0;
    a(v, u) = 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a,
                                                        Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();  // ascending
  // For disconnected or bipartite graphs d (or -d) can repeat; lambda(G) is
  // still max{|ev[i]|} over the n-1 smallest, since ev[n-1] = d.
  rep.lambda = std::max(std::abs(ev(0)), std::abs(ev(n - 2)));
  rep.epsilon_star = epsilon_star_for(d, rep.lambda);
  return rep;
}

SpectralReport second_eigenvalue_iterative(const Graph& g, double tol) {
  const int d = require_regular(g);
  const int n = g.vertex_count();
  if (tol <= 0) throw std::invalid_argument("tol must be positive");
  SpectralReport rep;
  rep.d = d;
  rep.method = "iterative";
  if (n <= 1 || g.edge_count() == 0) {
    rep.epsilon_star = 1.0;
    return rep;
  }
  // Power iteration on A^2 restricted to 1^perp: the top eigenvalue there is
  // max{lambda_2^2, lambda_n^2}, whose square root is lambda(G).
  const long cap = static_cast<long>(
      50.0 * n * std::max(1.0, std::log(static_cast<double>(n))));
  double best = 0.0;
  double best_residual = 0.0;
  bool converged = false;
  Rng rng(0xa2c2f00dULL);
  for (int restart = 0; restart < 3; ++restart) {
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) x[i] = rng.unit() - 0.5;
    deflate_ones(x);
    double nx = norm(x);
    if (nx == 0) continue;
    for (double& v : x) v /= nx;
    double mu = 0.0;
    for (long it = 0; it < cap; ++it) {
      apply_adjacency(g, x, y);
      apply_adjacency(g, y, x);
      deflate_ones(x);
      double nn = norm(x);
      if (nn < 1e-300) {  // x fell in the kernel of A^2 on 1^perp
        mu = 0.0;
        converged = true;
        break;
      }
      for (double& v : x) v /= nn;
      double prev = mu;
      mu = nn;  // Rayleigh quotient of A^2 at the previous unit iterate
      if (it > 0 && std::abs(std::sqrt(mu) - std::sqrt(prev)) < tol) {
        converged = true;
        best_residual = std::abs(std::sqrt(mu) - std::sqrt(prev));
        break;
      }
    }
    best = std::max(best, std::sqrt(std::max(0.0, mu)));
  }
  if (!converged)
    throw std::runtime_error("power iteration budget exceeded");
  rep.lambda = std::min(best, static_cast<double>(d));
  rep.residual = best_residual;
  rep.epsilon_star = epsilon_star_for(d, rep.lambda);
  return rep;
}

SpectralReport second_eigenvalue(const Graph& g, double tol) {
  if (g.vertex_count() <= 512) return second_eigenvalue_dense(g);
  return second_eigenvalue_iterative(g, tol);
}

long ordered_edge_count(const Graph& g, const std::vector<int>& s,
                        const std::vector<int>& t) {
  std::vector<char> in_t(g.vertex_count(), 0);
  for (int v : t) in_t[v] = 1;
  long e = 0;
  for (int u : s)
    for (const auto& h : g.neighbors(u)) e += in_t[h.to];
  return e;
}

namespace {

std::vector<int> mask_to_vec(unsigned mask) {
  std::vector<int> v;
  for (int i = 0; mask; ++i, mask >>= 1)
    if (mask & 1u) v.push_back(i);
  return v;
}

MixingWitness make_witness(const Graph& g, unsigned s_mask, unsigned t_mask,
                           long e, double d, double lambda) {
  MixingWitness w;
  w.s = mask_to_vec(s_mask);
  w.t = mask_to_vec(t_mask);
  w.e_st = e;
  w.expected = d * double(w.s.size()) * double(w.t.size()) / g.vertex_count();
  w.bound = lambda * std::sqrt(double(w.s.size()) * double(w.t.size()));
  return w;
}

// Exhaustive check over all subset pairs of an n<=16 vertex graph. For each
// S we precompute x[v] = |N(v) & S| and walk T in Gray-code order keeping
// e(S,T) = sum_{v in T} x[v] incrementally.
MixingAudit exhaustive_audit(const Graph& g, double lambda) {
  const int n = g.vertex_count();
  const int d = *g.regular_degree();
  const unsigned total = 1u << n;
  std::vector<unsigned> adj_mask(n, 0);
  for (const auto& [u, v] : g.edges()) {
    adj_mask[u] |= 1u << v;
    adj_mask[v] |= 1u << u;
  }
  std::vector<double> sqrt_tab(static_cast<std::size_t>(n) * n + 1);
  for (std::size_t i = 0; i < sqrt_tab.size(); ++i)
    sqrt_tab[i] = std::sqrt(static_cast<double>(i));
  const double coef = static_cast<double>(d) / n;

  MixingAudit audit;
  audit.exhaustive = true;
  audit.pairs_checked = static_cast<long>(total) * total;
  bool failed = false;
  unsigned bad_s = 0, bad_t = 0;
  long bad_e = 0;

#pragma omp parallel for schedule(dynamic, 64)
  for (long long sm = 1; sm < static_cast<long long>(total); ++sm) {
    if (failed) continue;
    const unsigned s_mask = static_cast<unsigned>(sm);
    const int s_size = std::popcount(s_mask);
    int x[16];
    for (int v = 0; v < n; ++v) x[v] = std::popcount(adj_mask[v] & s_mask);
    long e = 0;
    int t_size = 0;
    unsigned gray = 0;
    for (unsigned k = 1; k < total; ++k) {
      const int b = std::countr_zero(k);
      const unsigned next = gray ^ (1u << b);
      if (next > gray) {
        e += x[b];
        ++t_size;
      } else {
        e -= x[b];
        --t_size;
      }
      gray = next;
      const double mean = coef * s_size * t_size;
      const double bound = lambda * sqrt_tab[s_size * t_size] + kSlack;
      if (std::abs(e - mean) > bound) {
#pragma omp critical
        if (!failed) {
          failed = true;
          bad_s = s_mask;
          bad_t = gray;
          bad_e = e;
        }
      }
    }
  }
  if (failed) {
    audit.pass = false;
    audit.witness = make_witness(g, bad_s, bad_t, bad_e, d, lambda);
  }
  return audit;
}

}  // namespace

MixingAudit mixing_audit_reference(const Graph& g, double lambda) {
  const int n = g.vertex_count();
  const int d = *g.regular_degree();
  if (n > 16) throw std::invalid_argument("reference audit limited to n<=16");
  MixingAudit audit;
  audit.exhaustive = true;
  const unsigned total = 1u << n;
  audit.pairs_checked = static_cast<long>(total) * total;
  for (unsigned s_mask = 0; s_mask < total; ++s_mask) {
    auto s = mask_to_vec(s_mask);
    for (unsigned t_mask = 0; t_mask < total; ++t_mask) {
      auto t = mask_to_vec(t_mask);
      long e = ordered_edge_count(g, s, t);
      double mean = double(d) * s.size() * t.size() / n;
      double bound = lambda * std::sqrt(double(s.size()) * t.size()) + kSlack;
      if (std::abs(e - mean) > bound) {
        audit.pass = false;
        audit.witness = make_witness(g, s_mask, t_mask, e, d, lambda);
        return audit;
      }
    }
  }
  return audit;
}

MixingAudit mixing_audit(const Graph& g, double lambda, int trials,
                         std::uint64_t seed) {
  const int n = g.vertex_count();
  const int d = require_regular(g);
  if (lambda < 0) throw std::invalid_argument("lambda must be nonnegative");
  if (n <= 16) return exhaustive_audit(g, lambda);

  MixingAudit audit;
  Rng rng(seed);
  std::vector<int> s, t;
  for (int trial = 0; trial < trials; ++trial) {
    int ssz = 1 + rng.index(n);
    int tsz = 1 + rng.index(n);
    s = rng.sample(n, ssz);
    t = rng.sample(n, tsz);
    long e = ordered_edge_count(g, s, t);
    double mean = double(d) * ssz * tsz / n;
    double bound = lambda * std::sqrt(double(ssz) * tsz) + kSlack;
    ++audit.pairs_checked;
    if (std::abs(e - mean) > bound) {
      audit.pass = false;
      MixingWitness w;
      w.s = s;
      w.t = t;
      w.e_st = e;
      w.expected = mean;
      w.bound = bound - kSlack;
      audit.witness = w;
      return audit;
    }
  }
  return audit;
}

}  // namespace onefact
