#include <doctest.h>

#include "flagbound/error.hpp"
#include "flagbound/jump.hpp"
#include "support.hpp"

using namespace flagbound;

namespace {

Hypergraph edge3() { return Hypergraph::from_compact(3, 3, "123"); }

LagrangianBound bound_of(const Hypergraph& g, SimplexPoint x) {
  Rational v = evaluate(g, x);
  return {g, std::move(x), v};
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("builtin families") {
  auto star = builtin_family("F-star");
  REQUIRE(star.members().size() == 3);
  CHECK(star.members()[0].size() == 3);
  CHECK(star.members()[1].size() == 4);
  CHECK(star.members()[2].size() == 5);
  auto prime = builtin_family("F-prime");
  REQUIRE(prime.members().size() == 5);
  for (int i : {3, 4}) {
    CHECK(prime.members()[i].size() == 13);
    CHECK(prime.members()[i].order() == 7);
  }
  auto k = builtin_family("K4-minus");
  REQUIRE(k.members().size() == 1);
  CHECK(is_isomorphic(k.members()[0], test::k4_minus()));
  CHECK(kind_of([] { builtin_family("K5"); }) == ErrorKind::UnknownName);
}

TEST_CASE("single edge: every alpha below 2/9 is a jump") {
  ForbiddenFamily f({edge3()}, "edge");
  auto iv = jump_interval(f, 0, {bound_of(edge3(), SimplexPoint::uniform(3))});
  CHECK(iv.r == 3);
  CHECK(iv.lo == 0);
  CHECK(iv.hi == test::frac(2, 9));

  // the same through a verified certificate with Q = 0 (only the empty graph is admissible)
  Certificate cert{f, 4, Coordinates::Raw, {{{TypeSigma(Hypergraph(3, 2)), 3}, {RationalMatrix{{0}}}}}, 0};
  auto viac = jump_interval(cert, {bound_of(edge3(), SimplexPoint::uniform(3))});
  CHECK(viac.lo == 0);
  CHECK(viac.hi == test::frac(2, 9));
  CHECK(viac.provenance.size() == 2);
}

TEST_CASE("no jump when the threshold reaches min lambda") {
  Certificate cert{builtin_family("K4-minus"), 4, Coordinates::Raw,
                   {{{TypeSigma(Hypergraph(3, 2)), 3},
                     {{{test::frac(1, 3), test::frac(-2, 3)}, {test::frac(-2, 3), test::frac(4, 3)}}}}},
                   test::frac(1, 3)};
  std::vector<LagrangianBound> lam{bound_of(test::k4_minus(), SimplexPoint({test::frac(1, 3), test::frac(2, 9),
                                                                            test::frac(2, 9), test::frac(2, 9)}))};
  CHECK(lam[0].value == test::frac(8, 27));
  CHECK(kind_of([&] { jump_interval(cert, lam); }) == ErrorKind::NoJumpDerivable);
  // at a (hypothetical) threshold below 8/27 the interval is exact
  auto iv = jump_interval(cert.family, parse_rational("0.2871"), lam);
  CHECK(iv.lo == parse_rational("0.2871"));
  CHECK(iv.hi == test::frac(8, 27));
}

TEST_CASE("coverage and consistency") {
  auto f = builtin_family("F-star");
  auto members = f.members();
  std::vector<LagrangianBound> partial;
  for (std::size_t i = 0; i < 2; ++i) partial.push_back(bound_of(members[i], SimplexPoint::uniform(members[i].order())));
  CHECK(kind_of([&] { jump_interval(f, 0, partial); }) == ErrorKind::CoverageGap);

  auto full = partial;
  full.push_back(bound_of(members[2], SimplexPoint::uniform(members[2].order())));
  auto tampered = full;
  tampered[0].value += 1;
  CHECK(kind_of([&] { jump_interval(f, 0, tampered); }) == ErrorKind::InternalInconsistency);

  // relabeled graphs still cover their member
  auto relabeled = full;
  relabeled[1] = bound_of(members[1].relabel(Permutation({4, 3, 2, 1, 0})), SimplexPoint::uniform(5));
  CHECK(jump_interval(f, 0, relabeled).hi == jump_interval(f, 0, full).hi);
}

TEST_CASE("interval endpoints move monotonically with the inputs") {
  auto f = builtin_family("F-star");
  auto lam = builtin_lagrangian_bounds(f);
  auto a = jump_interval(f, test::frac(1, 5), lam);
  auto b = jump_interval(f, test::frac(1, 10), lam);
  CHECK(b.lo < a.lo);
  CHECK(a.hi == b.hi);
  Rational min_value = lam[0].value;
  for (const auto& l : lam) min_value = std::min(min_value, l.value);
  CHECK(a.hi == min_value);
  auto weaker = lam;
  for (auto& l : weaker) {
    l.witness = SimplexPoint::uniform(l.graph.order());
    l.value = evaluate(l.graph, l.witness);
  }
  CHECK(jump_interval(f, test::frac(1, 10), weaker).hi <= a.hi);
}
