#include <doctest.h>

#include <Eigen/Dense>
#include <cfenv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "flagbound/certificate.hpp"
#include "flagbound/error.hpp"
#include "flagbound/jump.hpp"
#include "flagbound/parallel.hpp"
#include "flagbound/sdp.hpp"
#include "support.hpp"

using namespace flagbound;

namespace {

ForbiddenFamily k4m() { return builtin_family("K4-minus"); }
TypeSpec spec(int s, std::string_view edges, int m) { return {TypeSigma(Hypergraph::from_compact(3, s, edges)), m}; }

RationalMatrix golden_q() {
  return {{test::frac(1, 3), test::frac(-2, 3)}, {test::frac(-2, 3), test::frac(4, 3)}};
}

Certificate golden_certificate(Rational claimed) {
  return Certificate{k4m(), 4, Coordinates::Raw, {{spec(2, "", 3), {golden_q()}}}, std::move(claimed)};
}

std::string sdpa_text(const SdpData& d) {
  std::ostringstream os;
  write_sdpa(d, os);
  return os.str();
}

std::filesystem::path temp_path(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST_CASE("assembly") {
  auto p = assemble(k4m(), 4, {spec(2, "", 3)});
  CHECK(p.graphs.size() == 3);
  REQUIRE(p.specs.size() == 1);
  CHECK(p.specs[0].tensor.block_sizes == std::vector<int>{2});
  CHECK(p.psd_dimension() == 2);
  CHECK_THROWS_AS(assemble(k4m(), 4, {spec(2, "", 4)}), Error);
  CHECK_THROWS_AS(assemble(k4m(), 5, {spec(4, "123 124 134", 4)}), Error);
}

TEST_CASE("interchange export") {
  auto p = assemble(k4m(), 4, {spec(2, "", 3)});
  auto d = to_sdpa(p);
  CHECK(d.objective.size() == 3);
  CHECK(d.block_sizes == std::vector<int>{2, -4});
  const auto text = sdpa_text(d);
  std::istringstream in(text);
  CHECK(sdpa_text(read_sdpa(in)) == text);

  // block coordinates shrink the largest block when a minus part exists
  auto family = builtin_family("F-star");
  std::vector<TypeSpec> specs{spec(3, "", 4)};
  auto raw = to_sdpa(assemble(family, 5, specs, Coordinates::Raw));
  auto blocked = assemble(family, 5, specs, Coordinates::Block);
  REQUIRE(blocked.specs[0].orbits.minus.size() >= 1);
  auto block = to_sdpa(blocked);
  CHECK(*std::max_element(block.block_sizes.begin(), block.block_sizes.end() - 1) <
        *std::max_element(raw.block_sizes.begin(), raw.block_sizes.end() - 1));
  std::istringstream in2(sdpa_text(block));
  CHECK(sdpa_text(read_sdpa(in2)) == sdpa_text(block));
}

TEST_CASE("embedded solver") {
  auto p = assemble(k4m(), 4, {spec(2, "", 3)});
  auto s = solve_embedded(p);
  CHECK(std::abs(s.bound - 1.0 / 3) < 1e-6);

  ForbiddenFamily edge({Hypergraph::from_compact(3, 3, "123")});
  auto zero = assemble(edge, 4, {spec(2, "", 3)});
  CHECK(std::abs(solve_embedded(zero).bound) < 1e-6);

  SolverOptions tiny;
  tiny.psd_cap = 1;
  CHECK_THROWS_AS(solve_embedded(p, tiny), Error);
}

TEST_CASE("adding a type never raises the optimum") {
  auto a = solve_embedded(assemble(k4m(), 5, {spec(2, "", 3)}));
  auto b = solve_embedded(assemble(k4m(), 5, {spec(2, "", 3), spec(3, "123", 4)}));
  CHECK(b.bound <= a.bound + 1e-7);
}

TEST_CASE("rationalization") {
  CHECK(best_rational(0.3333333333, 10) == test::frac(1, 3));
  CHECK(best_rational(0.0000001, 10) == 0);
  FloatMatrix f{{1.0 / 3, -2.0 / 3}, {-2.0 / 3, 4.0 / 3}};
  CHECK(rationalize(f, 100) == golden_q());
}

TEST_CASE("exact PSD test") {
  CHECK(verify_psd(golden_q()));
  CHECK_FALSE(verify_psd(RationalMatrix{{1, 2}, {2, 1}}));
  CHECK(verify_psd(RationalMatrix(3, std::vector<Rational>(3))));
  CHECK_THROWS_AS(verify_psd(RationalMatrix{{1, 2}, {3, 1}}), Error);
}

TEST_CASE("exact PSD test agrees with float eigenvalues") {
  std::mt19937_64 rng(99);
  int checked = 0, psd = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + trial % 8;
    std::uniform_int_distribution<int> d(-4, 4);
    // mix of Gram matrices (PSD, often singular) and perturbed ones
    const std::size_t rank = 1 + rng() % n;
    RationalMatrix l(n, std::vector<Rational>(rank));
    for (auto& row : l)
      for (auto& x : row) x = test::frac(d(rng), 1 + static_cast<long>(rng() % 3));
    RationalMatrix q(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < rank; ++k) q[i][j] += l[i][k] * l[j][k];
    if (trial % 3 == 0) {
      const std::size_t i = rng() % n, j = rng() % n;
      const Rational bump = test::frac(d(rng), 7);
      q[i][j] += bump;
      if (i != j) q[j][i] += bump;
    }
    Eigen::MatrixXd m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = q[i][j].get_d();
    const double lo = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues().minCoeff();
    const bool exact = verify_psd(q);
    psd += exact;
    if (std::abs(lo) < 1e-9) continue;  // guard band
    ++checked;
    CHECK(exact == (lo > 0));
  }
  CHECK(checked > 400);
  CHECK(psd > 100);
}

TEST_CASE("certificate verification") {
  CHECK(verify_certificate(golden_certificate(test::frac(1, 3))) == test::frac(1, 3));
  try {
    verify_certificate(golden_certificate(test::frac(1, 4)));
    FAIL("expected bound-exceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BoundExceeded);
  }
  auto zero = golden_certificate(1);
  zero.specs[0].blocks[0] = RationalMatrix(2, std::vector<Rational>(2));
  CHECK(verify_certificate(zero) == test::frac(1, 2));
  auto bad = golden_certificate(1);
  bad.specs[0].blocks[0] = {{1, 2}, {2, 1}};
  try {
    verify_certificate(bad);
    FAIL("expected psd-failure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PsdFailure);
  }
  auto wrong = golden_certificate(1);
  wrong.specs[0].blocks[0] = {{1}};
  CHECK_THROWS_AS(verify_certificate(wrong), Error);
}

TEST_CASE("certificate text round-trip") {
  auto c = golden_certificate(test::frac(1, 3));
  std::ostringstream a;
  write_certificate(c, a);
  std::istringstream in(a.str());
  auto back = read_certificate(in);
  std::ostringstream b;
  write_certificate(back, b);
  CHECK(a.str() == b.str());
  CHECK(verify_certificate(back) == test::frac(1, 3));
  CHECK_THROWS_AS(read_certificate_file("/nonexistent/missing.cert"), Error);
}

TEST_CASE("solve, round and verify; block and raw coordinates agree") {
  std::vector<TypeSpec> specs{spec(2, "", 4), spec(3, "123", 4), spec(4, "", 5)};
  auto raw = assemble(k4m(), 6, specs, Coordinates::Raw);
  auto block = assemble(k4m(), 6, specs, Coordinates::Block);
  SolverOptions opt;
  auto sr = solve_embedded(raw, opt);
  auto sb = solve_embedded(block, opt);
  CHECK(std::abs(sr.bound - sb.bound) < 1e-6);

  auto rb = round_certificate(block, sb);
  auto vb = verify_certificate(rb.certificate);
  CHECK(vb.get_d() >= sb.bound - 10 * opt.tolerance);
  CHECK(vb.get_d() <= sb.bound + 1e-4);
  CHECK(vb <= averaging_bound(raw.graphs));
  CHECK(vb * 20 <= turan_number(k4m(), 6));

  // the same matrices expressed in raw coordinates give the same bound
  Certificate as_raw{k4m(), 6, Coordinates::Raw, {}, rb.certificate.claimed_bound};
  for (std::size_t s = 0; s < specs.size(); ++s)
    as_raw.specs.push_back({specs[s], {raw_from_blocks(block.specs[s].orbits, rb.certificate.specs[s].blocks)}});
  CHECK(verify_certificate(as_raw) == vb);
}

TEST_CASE("verification performs no floating-point arithmetic") {
  std::vector<TypeSpec> specs{spec(2, "", 3), spec(3, "123", 4)};
  auto p = assemble(k4m(), 5, specs, Coordinates::Block);
  auto report = round_certificate(p, solve_embedded(p));
  std::ostringstream out;
  write_certificate(report.certificate, out);
  const std::string text = out.str();

  set_thread_count(1);  // floating-point flags are per thread
  std::feclearexcept(FE_ALL_EXCEPT);
  std::istringstream in(text);
  const Rational b = verify_certificate(read_certificate(in));
  const int raised = std::fetestexcept(FE_ALL_EXCEPT);
  set_thread_count(0);
  CHECK(raised == 0);
  CHECK(b == report.certificate.claimed_bound);
}

#ifdef FLAGBOUND_SDPA_SCRIPT
TEST_CASE("embedded and external solvers agree") {
  auto p = assemble(k4m(), 5, {spec(2, "", 3)});
  const auto dat = temp_path("flagbound_cross.dat-s");
  const auto sol = temp_path("flagbound_cross.sol");
  export_standard(p, dat);
  const std::string cmd = std::string(FLAGBOUND_PYTHON) + " " + FLAGBOUND_SDPA_SCRIPT + " " + dat.string() + " " +
                          sol.string() + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  if (rc != 0) {
    MESSAGE("external solver unavailable, skipped");
    return;
  }
  std::ifstream in(sol);
  auto external = read_solution(p, in);
  auto embedded = solve_embedded(p);
  CHECK(std::abs(external.bound - embedded.bound) < 1e-6);
  auto cert = round_certificate(p, external).certificate;
  CHECK(std::abs(verify_certificate(cert).get_d() - embedded.bound) < 1e-5);
  std::filesystem::remove(dat);
  std::filesystem::remove(sol);
}
#endif
