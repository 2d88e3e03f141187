#include <doctest.h>

#include <functional>
#include <random>
#include <set>

#include "masurelab/coweight_monoid.hpp"
#include "masurelab/error.hpp"
#include "oracles/monoid_box.hpp"

using namespace masurelab;

namespace {

ErrorCode code_of_error(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Parse;
}

bool leq(const IntVec& a, const IntVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

std::vector<IntVec> brute_minimals(const std::vector<IntVec>& pts) {
  std::set<IntVec> out;
  for (const auto& p : pts) {
    bool minimal = true;
    for (const auto& o : pts)
      if (o != p && leq(o, p)) minimal = false;
    if (minimal) out.insert(p);
  }
  return {out.begin(), out.end()};
}

std::vector<IntVec> lattice_basis(const MonoidBasis& b) {
  std::vector<IntVec> out;
  for (std::size_t i = 0; i < b.inessential_gens.size(); i += 2) out.push_back(b.inessential_gens[i]);
  return out;
}

void check_box(const RootGeneratingSystem& sys, const MonoidBasis& basis, std::int64_t b, std::int64_t radius) {
  for (const auto& y : oracle::dominant_box(sys, b, radius)) {
    CHECK(oracle::in_span(sys, basis.strict_gens, lattice_basis(basis), y, b + 1));
    auto c = decompose_in_basis(sys, basis, y);
    CHECK(recombine(basis, c, sys.ambient_rank()) == y);
    for (auto x : c) CHECK(x >= 0);
  }
}

}  // namespace

TEST_CASE("dickson_minimals examples") {
  CHECK(dickson_minimals({{1, 2}, {2, 1}, {2, 2}}) == std::vector<IntVec>{{1, 2}, {2, 1}});
  CHECK(dickson_minimals({}).empty());
  CHECK(dickson_minimals({{3, 3}, {3, 3}}) == std::vector<IntVec>{{3, 3}});
}

TEST_CASE("dickson_minimals matches the pairwise scan") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> c(0, 9);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<IntVec> pts(50);
    for (auto& p : pts) p = {c(rng), c(rng)};
    auto got = dickson_minimals(pts);
    CHECK(got == brute_minimals(pts));
    for (std::size_t i = 0; i < got.size(); ++i)
      for (std::size_t j = 0; j < got.size(); ++j)
        if (i != j) CHECK_FALSE(leq(got[i], got[j]));
    for (const auto& p : pts) {
      bool covered = false;
      for (const auto& m : got) covered = covered || leq(m, p);
      CHECK(covered);
    }
  }
}

TEST_CASE("hilbert_basis for simply connected SL2") {
  auto sys = simply_connected_datum(KacMoodyMatrix::validate({{2}}));
  auto b = hilbert_basis(sys, 1, 64);
  CHECK(b.inessential_gens.empty());
  CHECK(b.strict_gens == std::vector<IntVec>{{1}});
  CHECK(b.strict_images == std::vector<IntVec>{{2}});
  CHECK(decompose_in_basis(sys, b, {5}) == IntVec{5});
  check_box(sys, b, 12, 8);
}

TEST_CASE("hilbert_basis for the canonical rank one datum") {
  auto sys = canonical_datum(KacMoodyMatrix::validate({{2}}));
  auto b = hilbert_basis(sys, 1, 64);
  CHECK(b.strict_gens == std::vector<IntVec>{{1, 0}});
  REQUIRE(b.inessential_gens.size() == 2);
  CHECK(b.inessential_gens[0] == IntVec{0, 1});
  CHECK(b.inessential_gens[1] == IntVec{0, -1});
  auto c = decompose_in_basis(sys, b, {3, -2});
  CHECK(recombine(b, c, 2) == IntVec{3, -2});
  CHECK(c == IntVec{3, 0, 2});
  // the box of dominant coweights is exactly a >= 0
  for (const auto& y : oracle::dominant_box(sys, 8, 4)) CHECK(y[0] >= 0);
  check_box(sys, b, 8, 4);
  CHECK(code_of_error([&] { decompose_in_basis(sys, b, {-1, 0}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("hilbert_basis for A1 x A1") {
  auto sys = simply_connected_datum(KacMoodyMatrix::validate({{2, 0}, {0, 2}}));
  auto b = hilbert_basis(sys, 1, 64);
  CHECK(b.inessential_gens.empty());
  CHECK(std::set<IntVec>(b.strict_gens.begin(), b.strict_gens.end()) == std::set<IntVec>{{1, 0}, {0, 1}});
  check_box(sys, b, 6, 4);
}

TEST_CASE("generators decompose to indicator vectors") {
  for (auto sys : {simply_connected_datum(KacMoodyMatrix::validate({{2, -1}, {-1, 2}})),
                   canonical_datum(KacMoodyMatrix::validate({{2, -1}, {-1, 2}})),
                   canonical_datum(KacMoodyMatrix::validate({{2, -2}, {-2, 2}}))}) {
    auto b = hilbert_basis(sys, 1, 64);
    auto gens = b.generators();
    for (std::size_t i = 0; i < b.strict_gens.size(); ++i) {
      IntVec expect(gens.size(), 0);
      expect[i] = 1;
      CHECK(decompose_in_basis(sys, b, gens[i]) == expect);
    }
    for (const auto& g : gens) CHECK(in_dominant_monoid(sys, g));
  }
}

TEST_CASE("property: strict generators are indecomposable in the box") {
  for (auto sys : {simply_connected_datum(KacMoodyMatrix::validate({{2, -1}, {-1, 2}})),
                   canonical_datum(KacMoodyMatrix::validate({{2, -1}, {-1, 2}}))}) {
    auto b = hilbert_basis(sys, 1, 64);
    auto box = oracle::dominant_box(sys, 6, 3);
    std::vector<IntVec> strict_box;
    for (const auto& y : box) {
      auto a = sys.alpha_values(y);
      bool nonzero = false;
      for (auto x : a) nonzero = nonzero || x != 0;
      if (nonzero) strict_box.push_back(y);
    }
    for (const auto& e : b.strict_gens) {
      auto ea = sys.alpha_values(e);
      for (const auto& x : strict_box) {
        auto xa = sys.alpha_values(x);
        bool nonneg = true, nonzero = false;
        for (std::size_t i = 0; i < ea.size(); ++i) {
          Rational d = ea[i] - xa[i];
          nonneg = nonneg && d >= 0;
          nonzero = nonzero || d != 0;
        }
        // x and e - x cannot both be strictly dominant
        CHECK_FALSE((nonneg && nonzero));
      }
    }
    check_box(sys, b, 6, 3);
  }
}

TEST_CASE("property: span is unchanged by reordering the ambient basis") {
  auto m = KacMoodyMatrix::validate({{2, -1}, {-1, 2}});
  auto sys = canonical_datum(m);
  auto b = hilbert_basis(sys, 1, 64);
  // swap the two complement coordinates
  std::vector<IntVec> coroots, roots;
  auto perm = [](IntVec v) {
    std::swap(v[2], v[3]);
    return v;
  };
  for (const auto& c : sys.simple_coroots()) coroots.push_back(perm(c));
  for (const auto& r : sys.simple_roots()) roots.push_back(perm(r));
  auto swapped = RootGeneratingSystem::make(m, sys.ambient_rank(), roots, coroots);
  auto b2 = hilbert_basis(swapped, 1, 64);
  for (const auto& g : b2.generators()) CHECK(recombine(b, decompose_in_basis(sys, b, perm(g)), 4) == perm(g));
  for (const auto& g : b.generators())
    CHECK(recombine(b2, decompose_in_basis(swapped, b2, perm(g)), 4) == perm(g));
}
