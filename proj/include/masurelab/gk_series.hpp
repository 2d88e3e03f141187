#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "masurelab/hecke_paths.hpp"
#include "masurelab/rational.hpp"
#include "masurelab/rootdata.hpp"

namespace masurelab {

// Finite Laurent polynomial in q with rational coefficients.
class QLaurent {
public:
  QLaurent() = default;
  static QLaurent constant(const Rational& c) { return monomial(0, c); }
  static QLaurent monomial(std::int64_t exponent, const Rational& c = Rational(1));

  const std::map<std::int64_t, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(std::int64_t exponent) const;
  Rational evaluate(const Rational& q) const;

  QLaurent& operator+=(const QLaurent& o);
  QLaurent& operator-=(const QLaurent& o);
  QLaurent operator+(const QLaurent& o) const;
  QLaurent operator-(const QLaurent& o) const;
  QLaurent operator*(const QLaurent& o) const;
  bool operator==(const QLaurent& o) const { return terms_ == o.terms_; }

  std::string to_string() const;

private:
  void set(std::int64_t exponent, const Rational& c);
  std::map<std::int64_t, Rational> terms_;
};

// 1 - q^{-1}
QLaurent one_minus_inverse_q();

// Truncated series in e^mu for mu in Q^vee_- with h(mu) >= -N; keys are simple-coroot coordinates.
class CoweightSeries {
public:
  CoweightSeries(std::size_t rank, std::int64_t truncation);
  static CoweightSeries one(std::size_t rank, std::int64_t truncation);

  std::size_t rank() const { return rank_; }
  std::int64_t truncation() const { return truncation_; }
  const std::map<IntVec, QLaurent>& coefficients() const { return coeffs_; }

  QLaurent coefficient(const IntVec& mu) const;
  void add_term(const IntVec& mu, const QLaurent& c);  // ignored beyond the truncation

  CoweightSeries operator*(const CoweightSeries& o) const;
  CoweightSeries operator+(const CoweightSeries& o) const;
  // Requires the constant term to be a single monomial c q^k.
  CoweightSeries inverse() const;
  bool operator==(const CoweightSeries& o) const;

  // Entries sorted by (-h(mu), lex mu).
  std::vector<std::pair<IntVec, QLaurent>> sorted() const;

private:
  bool in_range(const IntVec& mu) const;
  std::size_t rank_;
  std::int64_t truncation_;
  std::map<IntVec, QLaurent> coeffs_;
};

// Every mu in Q^vee_- with h(mu) >= -N, sorted by (-h, lex).
std::vector<IntVec> truncated_support(std::size_t rank, std::int64_t truncation);

// Keys are coroot coordinates of positive real roots.
using Multiplicities = std::map<IntVec, std::int64_t>;

CoweightSeries rhs_product(const RootGeneratingSystem& sys, std::int64_t truncation,
                           const std::optional<Multiplicities>& multiplicities,
                           const std::optional<CoweightSeries>& h0);

CoweightSeries lhs_from_counts(std::size_t rank, const std::function<std::uint64_t(const IntVec&)>& counter,
                               std::int64_t truncation);

struct SeriesDifference {
  IntVec mu;
  QLaurent left, right;
  std::optional<Rational> left_value, right_value;  // when compared at a numeric q
};

// Exact per-monomial comparison, symbolic in q unless q is given.
std::vector<SeriesDifference> compare(const CoweightSeries& a, const CoweightSeries& b,
                                      const std::optional<Rational>& q = std::nullopt);

struct PathCountEstimate {
  QLaurent value;
  std::size_t paths = 0;
  bool experimental = true;
  bool calibrated = false;  // every component has rank 1
  bool truncated = false;
  std::vector<std::string> notes;
};

// Weight of one Hecke path: q to the number of negative wall crossings, times 1 - q^{-1} per fold.
QLaurent path_weight(const RootGeneratingSystem& sys, const LambdaPath& path, const HeckeCertificate& cert,
                     const std::vector<RealRoot>& roots);

PathCountEstimate path_count_estimate(const RootGeneratingSystem& sys, const RatVec& lambda, const RatVec& nu,
                                      const EnumerationCutoffs& cutoffs);

}  // namespace masurelab
