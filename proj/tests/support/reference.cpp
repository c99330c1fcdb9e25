#include "support/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

namespace ref {

double factor_value(const hatcc::FactorGraph& graph, int f, const std::vector<int>& x) {
  const auto& fac = graph.factors[static_cast<std::size_t>(f)];
  std::size_t index = 0;
  for (int v : fac.scope) {
    index = index * static_cast<std::size_t>(graph.variables[static_cast<std::size_t>(v)].cardinality) +
            static_cast<std::size_t>(x[static_cast<std::size_t>(v)]);
  }
  return fac.table[index];
}

Exact enumerate(const hatcc::FactorGraph& graph) {
  const std::size_t n = graph.variables.size();
  Exact out;
  out.marginals.resize(n);
  for (std::size_t v = 0; v < n; ++v) out.marginals[v].assign(static_cast<std::size_t>(graph.variables[v].cardinality), 0.0);
  std::vector<int> x(n, 0);
  bool done = false;
  while (!done) {
    double w = 1.0;
    for (std::size_t f = 0; f < graph.factors.size(); ++f) w *= factor_value(graph, static_cast<int>(f), x);
    out.z += w;
    for (std::size_t v = 0; v < n; ++v) out.marginals[v][static_cast<std::size_t>(x[v])] += w;
    done = true;
    for (std::size_t i = n; i-- > 0;) {
      if (++x[i] < graph.variables[i].cardinality) {
        done = false;
        break;
      }
      x[i] = 0;
    }
  }
  for (auto& m : out.marginals) {
    for (double& p : m) p /= out.z;
  }
  return out;
}

std::vector<double> marginalize(const std::vector<int>& scope, const std::vector<int>& cards,
                                const std::vector<double>& table, const std::vector<int>& keep,
                                hatcc::Semiring semiring) {
  std::vector<int> keep_pos;
  std::size_t out_size = 1;
  for (int k : keep) {
    const auto it = std::find(scope.begin(), scope.end(), k);
    keep_pos.push_back(static_cast<int>(it - scope.begin()));
    out_size *= static_cast<std::size_t>(cards[static_cast<std::size_t>(keep_pos.back())]);
  }
  std::vector<double> out(out_size, semiring.zero());
  std::vector<int> digits(scope.size(), 0);
  for (std::size_t idx = 0; idx < table.size(); ++idx) {
    std::size_t rem = idx;
    for (std::size_t p = scope.size(); p-- > 0;) {
      digits[p] = static_cast<int>(rem % static_cast<std::size_t>(cards[p]));
      rem /= static_cast<std::size_t>(cards[p]);
    }
    std::size_t o = 0;
    for (int p : keep_pos) o = o * static_cast<std::size_t>(cards[static_cast<std::size_t>(p)]) + static_cast<std::size_t>(digits[static_cast<std::size_t>(p)]);
    out[o] = semiring.add(out[o], table[idx]);
  }
  return out;
}

BoolMatrix bool_product(const BoolMatrix& a, const BoolMatrix& b) {
  BoolMatrix c(a.size(), std::vector<int>(b.empty() ? 0 : b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (!a[i][k]) continue;
      for (std::size_t j = 0; j < b[k].size(); ++j) c[i][j] |= b[k][j];
    }
  }
  return c;
}

BoolMatrix to_rows(const std::vector<std::string>& rows) {
  BoolMatrix m;
  for (const auto& r : rows) {
    m.emplace_back();
    for (char c : r) m.back().push_back(c == '1' ? 1 : 0);
  }
  return m;
}

double tv(const std::vector<double>& p, const std::vector<double>& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

double max_tv(const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, tv(a[i], b[i]));
  }
  return worst;
}

namespace {

std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
    i = j + 1;
  }
  return r;
}

}  // namespace

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sxy / std::sqrt(sxx * syy);
}

hatcc::FactorGraph random_graph(const std::vector<int>& cards, const std::vector<std::vector<int>>& scopes,
                                std::uint64_t seed, double lo, double hi) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  hatcc::FactorGraph g;
  for (std::size_t v = 0; v < cards.size(); ++v) g.variables.push_back({static_cast<int>(v), cards[v], ""});
  for (std::size_t f = 0; f < scopes.size(); ++f) {
    hatcc::FactorDecl d;
    d.id = static_cast<int>(f);
    d.scope = scopes[f];
    std::size_t size = 1;
    for (int v : d.scope) size *= static_cast<std::size_t>(cards[static_cast<std::size_t>(v)]);
    for (std::size_t i = 0; i < size; ++i) d.table.push_back(dist(gen));
    g.factors.push_back(std::move(d));
  }
  return g;
}

}  // namespace ref
