#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "masurelab/error.hpp"
#include "masurelab/hecke_paths.hpp"
#include "oracles/a1_paths.hpp"
#include "oracles/shrink_fixpoint.hpp"

using namespace masurelab;

namespace {

RatVec rv(std::initializer_list<long> xs) {
  RatVec v;
  for (auto x : xs) v.push_back(Rational(x));
  return v;
}

RootGeneratingSystem a1() { return simply_connected_datum(KacMoodyMatrix::validate({{2}})); }
RootGeneratingSystem a2() { return simply_connected_datum(KacMoodyMatrix::validate({{2, -1}, {-1, 2}})); }

Word witness(const RootGeneratingSystem& sys, const RatVec& dir) {
  Word w = dominant_representative(sys, dir, 1000).word;
  std::reverse(w.begin(), w.end());
  return w;
}

LambdaPath make_path(const RootGeneratingSystem& sys, RatVec shape, RatVec start, std::vector<Rational> breaks,
                     std::vector<RatVec> dirs) {
  LambdaPath p{std::move(shape), std::move(start), std::move(breaks), std::move(dirs), {}};
  for (const auto& d : p.directions) p.witnesses.push_back(witness(sys, d));
  check_lambda_path(sys, p);
  return p;
}

Rational half() { return make_rational(1, 2); }

LambdaPath a1_folded() { return make_path(a1(), rv({1}), rv({0}), {0, half(), 1}, {rv({-1}), rv({1})}); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Parse;
}

void check_path_properties(const RootGeneratingSystem& sys, const LambdaPath& p, const HeckeCertificate& cert) {
  check_lambda_path(sys, p);
  auto v = validate_hecke(sys, p, 20);
  CHECK(v.status == HeckeStatus::Valid);
  for (const auto& c : cert.chains) CHECK(check_chain(sys, p, c));
  CHECK(deficit(sys, p).in_real_cone);
  auto ft = final_time_check(sys, p, default_scale(p.shape));
  CHECK(ft.holds);
  CHECK(dominance_monotonicity_check(sys, p));
}

}  // namespace

TEST_CASE("validate_hecke examples") {
  auto s = a1();
  auto straight = make_path(s, rv({1}), rv({0}), {0, 1}, {rv({1})});
  auto v = validate_hecke(s, straight, 10);
  CHECK(v.status == HeckeStatus::Valid);
  CHECK(v.certificate.chains.empty());

  auto folded = a1_folded();
  CHECK(folded.position(half()) == RatVec{-half()});
  auto f = validate_hecke(s, folded, 10);
  REQUIRE(f.status == HeckeStatus::Valid);
  REQUIRE(f.certificate.chains.size() == 1);
  const auto& c = f.certificate.chains[0];
  CHECK(c.t == half());
  CHECK(c.xis == std::vector<RatVec>{rv({-1}), rv({1})});
  REQUIRE(c.betas.size() == 1);
  CHECK(c.betas[0].form == IntVec{1});
  CHECK(check_chain(s, folded, c));

  auto a = a2();
  RatVec lam = a.coroot_vector(rv({1, 1}));
  RatVec neg = scale(Rational(-1), lam);
  auto good = make_path(a, lam, rv({0, 0}), {0, half(), 1}, {neg, lam});
  CHECK(validate_hecke(a, good, 10).status == HeckeStatus::Valid);
  auto bad = make_path(a, lam, rv({0, 0}), {0, make_rational(1, 3), 1}, {neg, lam});
  auto r = validate_hecke(a, bad, 10);
  CHECK(r.status == HeckeStatus::Invalid);
  REQUIRE(r.breakpoint);
  CHECK(*r.breakpoint == 1);
}

TEST_CASE("check_lambda_path rejects malformed paths") {
  auto s = a1();
  LambdaPath p{rv({1}), rv({0}), {Rational(0), Rational(1)}, {rv({2})}, {Word{}}};
  CHECK(code_of([&] { check_lambda_path(s, p); }) == ErrorCode::InvalidPath);
  LambdaPath q{rv({1}), rv({0}), {Rational(0), half(), half(), Rational(1)}, {rv({1}), rv({-1}), rv({1})},
               {Word{}, Word{0}, Word{}}};
  CHECK(code_of([&] { check_lambda_path(s, q); }) == ErrorCode::InvalidPath);
}

TEST_CASE("enumerate_hecke examples in rank one") {
  auto s = a1();
  EnumerationCutoffs cut;
  auto up = enumerate_hecke(s, rv({1}), rv({0}), rv({1}), cut);
  REQUIRE(up.paths.size() == 1);
  CHECK(up.paths[0].first.segments() == 1);
  CHECK_FALSE(up.truncated);

  auto back = enumerate_hecke(s, rv({1}), rv({0}), rv({0}), cut);
  REQUIRE(back.paths.size() == 1);
  CHECK(normal_form(back.paths[0].first).breakpoints == std::vector<Rational>{0, half(), 1});

  auto down = enumerate_hecke(s, rv({1}), rv({0}), rv({-1}), cut);
  REQUIRE(down.paths.size() == 1);
  CHECK(down.paths[0].first.directions == std::vector<RatVec>{rv({-1})});
  CHECK(enumerate_hecke(s, rv({1}), rv({0}), rv({2}), cut).paths.empty());
}

TEST_CASE("enumerate_hecke agrees with the rank one brute force") {
  auto s = a1();
  for (std::int64_t n = 1; n <= 4; ++n) {
    auto all = oracle::a1_hecke_paths(n, Rational(0), 2 * n);
    for (std::int64_t b = -4; b <= 4; ++b) {
      std::set<oracle::A1Path> expect;
      for (const auto& p : all)
        if (oracle::a1_endpoint(p, Rational(0)) == b) expect.insert(p);
      auto got = enumerate_hecke(s, rv({static_cast<long>(n)}), rv({0}), rv({static_cast<long>(b)}), {});
      CHECK_FALSE(got.truncated);
      std::set<oracle::A1Path> seen;
      for (const auto& [p, cert] : got.paths) {
        auto nf = normal_form(p);
        oracle::A1Path o{nf.breakpoints, {}};
        for (const auto& d : nf.directions) o.directions.push_back(d[0]);
        seen.insert(o);
        check_path_properties(s, p, cert);
      }
      CHECK(seen.size() == got.paths.size());
      CHECK(seen == expect);
    }
  }
}

TEST_CASE("deficit and final direction time") {
  auto s = a1();
  auto straight = make_path(s, rv({1}), rv({0}), {0, 1}, {rv({1})});
  CHECK(is_zero(deficit(s, straight).mu));
  CHECK(final_direction_time(straight) == Rational(0));

  auto folded = a1_folded();
  auto d = deficit(s, folded);
  CHECK(d.mu == rv({1}));
  CHECK(d.in_real_cone);
  CHECK(final_direction_time(folded) == half());
  auto ft = final_time_check(s, folded, default_scale(folded.shape));
  CHECK(ft.bound == 1);
  CHECK_FALSE(ft.applies);

  auto negative = make_path(s, rv({1}), rv({0}), {0, 1}, {rv({-1})});
  CHECK(deficit(s, negative).mu == rv({2}));
  CHECK_FALSE(final_direction_time(negative));
}

TEST_CASE("final time bound: a valid path and a mutant") {
  auto s = a1();
  auto sc = default_scale(rv({3}));
  CHECK(sc.scale == 3);
  CHECK(sc.nu == rv({1}));
  auto valid = make_path(s, rv({3}), rv({0}), {0, make_rational(1, 6), 1}, {rv({-3}), rv({3})});
  CHECK(validate_hecke(s, valid, 10).status == HeckeStatus::Valid);
  auto ft = final_time_check(s, valid, sc);
  CHECK(ft.applies);
  CHECK(ft.holds);
  CHECK(ft.bound == make_rational(1, 3));

  auto mutant = make_path(s, rv({3}), rv({0}), {0, half(), make_rational(2, 3), 1}, {rv({3}), rv({-3}), rv({3})});
  CHECK(deficit(s, mutant).mu == rv({1}));
  CHECK_FALSE(final_time_check(s, mutant, sc).holds);
  CHECK(validate_hecke(s, mutant, 10).status == HeckeStatus::Invalid);
}

TEST_CASE("dominance monotonicity") {
  auto s = a1();
  CHECK(dominance_monotonicity_check(s, make_path(s, rv({1}), rv({0}), {0, 1}, {rv({1})})));
  CHECK(dominance_monotonicity_check(s, a1_folded()));
  auto mutant = make_path(s, rv({1}), rv({0}), {0, half(), make_rational(3, 4), 1}, {rv({-1}), rv({1}), rv({-1})});
  CHECK_FALSE(dominance_monotonicity_check(s, mutant));
  CHECK(validate_hecke(s, mutant, 10).status == HeckeStatus::Invalid);
}

TEST_CASE("mirror and normal form") {
  auto p = a1_folded();
  auto m = mirror(p);
  CHECK(m.position(Rational(0)) == scale(Rational(-1), p.endpoint()));
  CHECK(m.endpoint() == scale(Rational(-1), p.start));
  CHECK(mirror(m).breakpoints == p.breakpoints);
  CHECK(mirror(m).directions == p.directions);
  auto s = a1();
  auto split = make_path(s, rv({1}), rv({0}), {0, half(), 1}, {rv({1}), rv({1})});
  CHECK(normal_form(split).segments() == 1);
}

TEST_CASE("sufficiently_dominant_bound examples") {
  auto s = a1();
  CHECK(sufficiently_dominant_bound(s, rv({0}), rv({1})) == rv({0}));
  CHECK(sufficiently_dominant_bound(s, rv({-1}), rv({1})) == rv({2}));
  auto a = a2();
  RatVec lam = a.coroot_vector(rv({1, 1}));
  CHECK(sufficiently_dominant_bound(a, scale(Rational(-1), lam), lam) == rv({2, 2}));
  CHECK(code_of([&] { sufficiently_dominant_bound(s, rv({1}), rv({1})); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { sufficiently_dominant_bound(s, rv({-1}), rv({0})); }) == ErrorCode::InvalidArgument);

  // above the threshold alpha_i(lambda - k nu) stays positive for k in [0, h(-mu)]
  RatVec mu = a.coroot_vector(rv({-1, -2}));
  auto b = sufficiently_dominant_bound(a, mu, lam);
  for (long x = 0; x <= 8; ++x)
    for (long y = 0; y <= 8; ++y) {
      RatVec l = a.coroot_vector(rv({x, y}));
      auto av = a.alpha_values(l);
      if (!(av[0] > b[0] && av[1] > b[1])) continue;
      for (long k = 0; k <= 3; ++k)
        for (const auto& v : a.alpha_values(sub(l, scale(Rational(k), lam)))) CHECK(v > 0);
    }
}

TEST_CASE("bounding_ball examples") {
  auto s = a1();
  auto basis = hilbert_basis(s, 1, 64);
  auto ball = bounding_ball(s, basis, {5}, rv({-1}));
  CHECK(ball.h_param == 2);
  CHECK(ball.center == IntVec{3});
  CHECK(ball.shape == IntVec{2});
  auto small = bounding_ball(s, basis, {1}, rv({-1}));
  CHECK(small.center == IntVec{0});
  CHECK(small.shape == IntVec{1});
  CHECK(small.in_j == std::vector<bool>{false});

  auto aa = simply_connected_datum(KacMoodyMatrix::validate({{2, 0}, {0, 2}}));
  auto bb = hilbert_basis(aa, 1, 64);
  auto coeffs = decompose_in_basis(aa, bb, {6, 3});
  auto big = bounding_ball(aa, bb, coeffs, rv({-1, -2}));
  CHECK(big.h_param == 4);
  CHECK(big.center == IntVec{2, 0});
  CHECK(big.shape == IntVec{4, 3});
  CHECK(code_of([&] { bounding_ball(s, basis, {5}, rv({1})); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("property: bounding_ball matches the shrinking fixpoint") {
  std::mt19937_64 rng(63);
  std::uniform_int_distribution<int> c(0, 12), m(0, 3);
  for (auto sys : {simply_connected_datum(KacMoodyMatrix::validate({{2, 0}, {0, 2}})), a2(),
                   canonical_datum(KacMoodyMatrix::validate({{2}}))}) {
    auto basis = hilbert_basis(sys, 1, 64);
    auto gens = basis.generators();
    for (int t = 0; t < 100; ++t) {
      IntVec coeffs(gens.size());
      for (auto& x : coeffs) x = c(rng);
      RatVec mu_coords(sys.rank());
      for (auto& x : mu_coords) x = Rational(-m(rng));
      RatVec mu = sys.coroot_vector(mu_coords);
      auto ball = bounding_ball(sys, basis, coeffs, mu);
      CHECK(ball.h_param == 1 - to_int64(Integer(sys.height(mu).get_num())));
      auto split = oracle::shrink_to_fixpoint(coeffs, ball.h_param);
      CHECK(ball.shape_coefficients == split.shape_coefficients);
      CHECK(ball.shape == oracle::combine(gens, split.shape_coefficients, sys.ambient_rank()));
      CHECK(ball.center == oracle::combine(gens, split.center_coefficients, sys.ambient_rank()));
      auto lambda = oracle::combine(gens, coeffs, sys.ambient_rank());
      IntVec sum(lambda.size());
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = ball.center[i] + ball.shape[i];
      CHECK(sum == lambda);
      for (std::size_t e = 0; e < gens.size(); ++e)
        CHECK(ball.shape_coefficients[e] <= std::max<std::int64_t>(coeffs[e], ball.h_param));
      CHECK(in_dominant_monoid(sys, ball.center));
    }
  }
}

TEST_CASE("property: enumerated rank two paths validate") {
  auto a = a2();
  RatVec lam = a.coroot_vector(rv({1, 1}));
  for (long k : {1L, 2L}) {
    RatVec shape = scale(Rational(k), lam);
    EnumerationCutoffs cut;
    cut.direction_height = Rational(4 * k);
    auto e = enumerate_hecke(a, shape, rv({0, 0}), std::nullopt, cut);
    CHECK_FALSE(e.paths.empty());
    std::set<std::pair<std::vector<Rational>, std::vector<RatVec>>> seen;
    for (const auto& [p, cert] : e.paths) {
      check_path_properties(a, p, cert);
      auto nf = normal_form(p);
      seen.insert({nf.breakpoints, nf.directions});
    }
    CHECK(seen.size() == e.paths.size());
    // straight path and the single fold through the origin
    std::set<RatVec, RatVecLess> ends;
    for (const auto& [p, cert] : e.paths) ends.insert(p.endpoint());
    CHECK(ends.count(shape) == 1);
    CHECK(ends.count(rv({0, 0})) == 1);
  }
}
