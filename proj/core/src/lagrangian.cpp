#include "flagbound/lagrangian.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <optional>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "flagbound/error.hpp"
#include "flagbound/io.hpp"
#include "flagbound/parallel.hpp"

namespace flagbound {

SimplexPoint::SimplexPoint(std::vector<Rational> weights) : weights_(std::move(weights)) {
  Rational sum = 0;
  for (const auto& w : weights_) {
    if (w < 0) throw Error(ErrorKind::InvalidSimplexPoint, "negative weight " + format_rational(w));
    sum += w;
  }
  if (sum != 1) throw Error(ErrorKind::InvalidSimplexPoint, "weights sum to " + format_rational(sum) + ", not 1");
}

SimplexPoint SimplexPoint::uniform(int n) {
  if (n <= 0) throw Error(ErrorKind::InvalidSimplexPoint, "simplex needs at least one coordinate");
  return SimplexPoint(std::vector<Rational>(static_cast<std::size_t>(n), Rational(1, n)));
}

Rational evaluate(const Hypergraph& f, const SimplexPoint& x) {
  if (static_cast<int>(x.size()) != f.order()) {
    throw Error(ErrorKind::DimensionMismatch, "witness length differs from vertex count");
  }
  Rational sum = 0;
  for (VertexMask e : f.edges()) {
    Rational term = 1;
    for (VertexMask t = e; t; t &= t - 1) term *= x[static_cast<std::size_t>(std::countr_zero(t))];
    sum += term;
  }
  Integer factorial = 1;
  for (int i = 2; i <= f.uniformity(); ++i) factorial *= i;
  return sum * factorial;
}

bool verify_lower_bound(const Hypergraph& f, const SimplexPoint& x, const Rational& target) {
  return evaluate(f, x) >= target;
}

namespace {

struct FloatPoly {
  int n;
  double scale;
  std::vector<VertexMask> edges;

  double value(const std::vector<double>& x) const {
    double sum = 0;
    for (VertexMask e : edges) {
      double term = 1;
      for (VertexMask t = e; t; t &= t - 1) term *= x[static_cast<std::size_t>(std::countr_zero(t))];
      sum += term;
    }
    return scale * sum;
  }

  void gradient(const std::vector<double>& x, std::vector<double>& g) const {
    std::fill(g.begin(), g.end(), 0.0);
    for (VertexMask e : edges) {
      for (VertexMask t = e; t; t &= t - 1) {
        const int i = std::countr_zero(t);
        double term = 1;
        for (VertexMask u = e & ~(VertexMask{1} << i); u; u &= u - 1) term *= x[static_cast<std::size_t>(std::countr_zero(u))];
        g[static_cast<std::size_t>(i)] += term;
      }
    }
    for (double& v : g) v *= scale;
  }
};

// Euclidean projection onto the probability simplex.
void project(std::vector<double>& y) {
  std::vector<double> u = y;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0;
  double theta = 0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    cumulative += u[k];
    const double t = (cumulative - 1) / static_cast<double>(k + 1);
    if (u[k] - t > 0) theta = t;
  }
  for (double& v : y) v = std::max(0.0, v - theta);
}

std::vector<double> ascend(const FloatPoly& p, std::vector<double> x, int iterations) {
  std::vector<double> g(x.size());
  std::vector<double> y(x.size());
  double step = 1.0;
  double current = p.value(x);
  for (int it = 0; it < iterations; ++it) {
    p.gradient(x, g);
    bool moved = false;
    for (int tries = 0; tries < 40; ++tries) {
      for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + step * g[i];
      project(y);
      const double v = p.value(y);
      if (v >= current) {
        moved = v > current;
        x.swap(y);
        current = v;
        step *= 1.5;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return x;
}

// Rational points near x, each summing to 1 exactly: a continued-fraction
// rounding with small denominators, then roundings to multiples of 1/10^k.
std::vector<SimplexPoint> roundings(const std::vector<double>& x, std::uint64_t max_denominator) {
  std::vector<SimplexPoint> out;
  const auto largest = static_cast<std::size_t>(std::max_element(x.begin(), x.end()) - x.begin());
  auto close = [&](std::vector<Rational> w) {
    Rational others = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i != largest) others += w[i];
    }
    w[largest] = 1 - others;
    if (w[largest] >= 0) out.emplace_back(std::move(w));
  };
  for (std::uint64_t den = 1000;; den *= 10) {
    den = std::min(den, max_denominator);
    std::vector<Rational> w;
    w.reserve(x.size());
    if (den == 1000) {
      for (double v : x) w.push_back(v < 1e-12 ? Rational(0) : best_rational(v, den));
      close(w);
      w.clear();
    }
    const Integer big(std::to_string(den), 10);
    for (double v : x) {
      Rational scaled = Rational(v) * big + Rational(1, 2);
      Integer floor;
      mpz_fdiv_q(floor.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
      w.emplace_back(floor, big);
      w.back().canonicalize();
    }
    close(w);
    if (den >= max_denominator) break;
  }
  return out;
}

}  // namespace

LagrangianBound maximize(const Hypergraph& f, const MaximizeOptions& options) {
  const int n = f.order();
  if (n == 0) throw Error(ErrorKind::InvalidSimplexPoint, "graph has no vertices");
  if (f.size() == 0) return {f, SimplexPoint::uniform(n), Rational(0)};

  double factorial = 1;
  for (int i = 2; i <= f.uniformity(); ++i) factorial *= i;
  const FloatPoly poly{n, factorial, std::vector<VertexMask>(f.edges().begin(), f.edges().end())};

  const int restarts = std::max(1, options.restarts);
  std::vector<std::vector<double>> found(static_cast<std::size_t>(restarts));
  parallel_for(found.size(), [&](std::size_t k) {
    std::vector<double> x(static_cast<std::size_t>(n));
    if (k == 0) {
      std::fill(x.begin(), x.end(), 1.0 / n);
    } else {
      std::seed_seq seq{options.seed, static_cast<std::uint64_t>(k)};
      std::mt19937_64 rng(seq);
      std::exponential_distribution<double> gamma(1.0);
      double sum = 0;
      for (double& v : x) sum += (v = gamma(rng));
      for (double& v : x) v /= sum;
    }
    found[k] = ascend(poly, std::move(x), options.iterations);
  });

  std::size_t best = 0;
  for (std::size_t k = 1; k < found.size(); ++k) {
    if (poly.value(found[k]) > poly.value(found[best])) best = k;
  }

  LagrangianBound result{f, SimplexPoint::uniform(n), 0};
  result.value = evaluate(f, result.witness);
  for (auto& w : roundings(found[best], options.denominator_bound)) {
    Rational v = evaluate(f, w);
    if (v > result.value) {
      result.value = v;
      result.witness = std::move(w);
    }
  }
  return result;
}

SimplexPoint parse_simplex_point(std::string_view text) {
  std::vector<Rational> w;
  std::istringstream words{std::string(text)};
  std::string t;
  while (words >> t) w.push_back(parse_rational(t));
  return SimplexPoint(std::move(w));
}

std::vector<LagrangianBound> read_lagrangian_bounds(std::istream& in) {
  std::vector<LagrangianBound> out;
  std::optional<Hypergraph> graph;
  std::optional<SimplexPoint> witness;
  int number = 0;
  auto flush = [&] {
    if (!graph && !witness) return;
    if (!graph || !witness) throw Error(ErrorKind::Parse, "witness block before line " + std::to_string(number) + " needs both graph and witness");
    Rational v = evaluate(*graph, *witness);
    out.push_back({std::move(*graph), std::move(*witness), std::move(v)});
    graph.reset();
    witness.reset();
  };
  std::string line;
  while (std::getline(in, line)) {
    ++number;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (t == "---") {
      flush();
      continue;
    }
    const auto colon = t.find(':');
    if (colon == std::string_view::npos) throw Error(ErrorKind::Parse, "line " + std::to_string(number) + ": expected 'key: value'");
    const auto key = trim(t.substr(0, colon));
    const auto value = trim(t.substr(colon + 1));
    if (key == "graph") {
      if (graph) flush();
      graph = parse_inline(value);
    } else if (key == "witness") {
      witness = parse_simplex_point(value);
    } else if (key == "value") {
      // informational; recomputed
    } else {
      throw Error(ErrorKind::Parse, "line " + std::to_string(number) + ": unknown key '" + std::string(key) + "'");
    }
  }
  flush();
  return out;
}

std::vector<LagrangianBound> read_lagrangian_file(const std::string& path) {
  std::istringstream in(read_file(path));
  return read_lagrangian_bounds(in);
}

void write_lagrangian_bounds(std::ostream& out, const std::vector<LagrangianBound>& bounds) {
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (i) out << "---\n";
    out << "graph: " << format_inline(bounds[i].graph) << "\n";
    out << "witness:";
    for (const auto& w : bounds[i].witness.weights()) out << ' ' << format_rational(w);
    out << "\n";
    out << "value: " << format_rational(bounds[i].value) << "\n";
  }
}

}  // namespace flagbound
