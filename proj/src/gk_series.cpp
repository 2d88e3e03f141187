#include "masurelab/gk_series.hpp"

#include <algorithm>

#include "masurelab/error.hpp"
#include "masurelab/weylgeom.hpp"

namespace masurelab {

QLaurent QLaurent::monomial(std::int64_t exponent, const Rational& c) {
  QLaurent p;
  p.set(exponent, c);
  return p;
}

void QLaurent::set(std::int64_t exponent, const Rational& c) {
  if (sgn(c) == 0)
    terms_.erase(exponent);
  else
    terms_[exponent] = c;
}

Rational QLaurent::coefficient(std::int64_t exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational QLaurent::evaluate(const Rational& q) const {
  if (sgn(q) == 0) throw Error(ErrorCode::InvalidArgument, "cannot evaluate a Laurent polynomial at q = 0");
  Rational out = 0;
  for (const auto& [e, c] : terms_) {
    Rational p = 1;
    Rational base = e < 0 ? Rational(1 / q) : q;
    for (std::int64_t i = 0; i < (e < 0 ? -e : e); ++i) p *= base;
    out += c * p;
  }
  return out;
}

QLaurent& QLaurent::operator+=(const QLaurent& o) {
  for (const auto& [e, c] : o.terms_) set(e, coefficient(e) + c);
  return *this;
}

QLaurent& QLaurent::operator-=(const QLaurent& o) {
  for (const auto& [e, c] : o.terms_) set(e, coefficient(e) - c);
  return *this;
}

QLaurent QLaurent::operator+(const QLaurent& o) const {
  QLaurent r = *this;
  return r += o;
}

QLaurent QLaurent::operator-(const QLaurent& o) const {
  QLaurent r = *this;
  return r -= o;
}

QLaurent QLaurent::operator*(const QLaurent& o) const {
  QLaurent r;
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) r.set(e1 + e2, r.coefficient(e1 + e2) + c1 * c2);
  return r;
}

std::string QLaurent::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string coeff = masurelab::to_string(abs(c));
    if (out.empty())
      out += sgn(c) < 0 ? "-" : "";
    else
      out += sgn(c) < 0 ? " - " : " + ";
    if (e == 0) {
      out += coeff;
      continue;
    }
    if (abs(c) != 1) out += coeff + "*";
    out += e == 1 ? "q" : "q^" + (e < 0 ? "(" + std::to_string(e) + ")" : std::to_string(e));
  }
  return out;
}

QLaurent one_minus_inverse_q() { return QLaurent::constant(1) - QLaurent::monomial(-1); }

namespace {

std::int64_t neg_height(const IntVec& mu) {
  std::int64_t s = 0;
  for (auto x : mu) s -= x;
  return s;
}

}  // namespace

CoweightSeries::CoweightSeries(std::size_t rank, std::int64_t truncation) : rank_(rank), truncation_(truncation) {
  if (truncation < 0) throw Error(ErrorCode::InvalidArgument, "truncation must be nonnegative");
}

CoweightSeries CoweightSeries::one(std::size_t rank, std::int64_t truncation) {
  CoweightSeries s(rank, truncation);
  s.add_term(IntVec(rank, 0), QLaurent::constant(1));
  return s;
}

bool CoweightSeries::in_range(const IntVec& mu) const {
  if (mu.size() != rank_) return false;
  for (auto x : mu)
    if (x > 0) return false;
  return neg_height(mu) <= truncation_;
}

QLaurent CoweightSeries::coefficient(const IntVec& mu) const {
  auto it = coeffs_.find(mu);
  return it == coeffs_.end() ? QLaurent() : it->second;
}

void CoweightSeries::add_term(const IntVec& mu, const QLaurent& c) {
  if (mu.size() != rank_) throw Error(ErrorCode::InvalidArgument, "monomial " + to_string(mu) + " has wrong rank");
  for (auto x : mu)
    if (x > 0) throw Error(ErrorCode::InvalidArgument, "monomial " + to_string(mu) + " is not in the negative cone");
  if (!in_range(mu)) return;
  QLaurent v = coefficient(mu) + c;
  if (v.is_zero())
    coeffs_.erase(mu);
  else
    coeffs_[mu] = v;
}

CoweightSeries CoweightSeries::operator*(const CoweightSeries& o) const {
  if (rank_ != o.rank_) throw Error(ErrorCode::InvalidArgument, "series ranks differ");
  CoweightSeries r(rank_, std::min(truncation_, o.truncation_));
  for (const auto& [m1, c1] : coeffs_)
    for (const auto& [m2, c2] : o.coeffs_) {
      if (neg_height(m1) + neg_height(m2) > r.truncation_) continue;
      IntVec m(rank_);
      for (std::size_t i = 0; i < rank_; ++i) m[i] = m1[i] + m2[i];
      r.add_term(m, c1 * c2);
    }
  return r;
}

CoweightSeries CoweightSeries::operator+(const CoweightSeries& o) const {
  if (rank_ != o.rank_) throw Error(ErrorCode::InvalidArgument, "series ranks differ");
  CoweightSeries r(rank_, std::min(truncation_, o.truncation_));
  for (const auto& [m, c] : coeffs_) r.add_term(m, c);
  for (const auto& [m, c] : o.coeffs_) r.add_term(m, c);
  return r;
}

CoweightSeries CoweightSeries::inverse() const {
  QLaurent c0 = coefficient(IntVec(rank_, 0));
  if (c0.terms().size() != 1)
    throw Error(ErrorCode::NotInvertible, "constant term " + c0.to_string() + " is not a monomial in q");
  auto [e, c] = *c0.terms().begin();
  QLaurent inv0 = QLaurent::monomial(-e, 1 / c);
  // s = c0 (1 - u), so s^{-1} = c0^{-1} (1 + u + u^2 + ...), with u of order >= 1.
  CoweightSeries u(rank_, truncation_);
  for (const auto& [m, v] : coeffs_)
    if (neg_height(m) > 0) u.add_term(m, QLaurent() - v * inv0);
  CoweightSeries total = one(rank_, truncation_);
  CoweightSeries power = one(rank_, truncation_);
  for (std::int64_t k = 1; k <= truncation_; ++k) {
    power = power * u;
    total = total + power;
  }
  CoweightSeries r(rank_, truncation_);
  for (const auto& [m, v] : total.coeffs_) r.add_term(m, v * inv0);
  return r;
}

bool CoweightSeries::operator==(const CoweightSeries& o) const {
  return rank_ == o.rank_ && truncation_ == o.truncation_ && coeffs_ == o.coeffs_;
}

std::vector<std::pair<IntVec, QLaurent>> CoweightSeries::sorted() const {
  std::vector<std::pair<IntVec, QLaurent>> out(coeffs_.begin(), coeffs_.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    auto ha = neg_height(a.first), hb = neg_height(b.first);
    return ha != hb ? ha < hb : a.first < b.first;
  });
  return out;
}

std::vector<IntVec> truncated_support(std::size_t rank, std::int64_t truncation) {
  std::vector<IntVec> out;
  IntVec cur(rank, 0);
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t left) {
    if (i == rank) {
      out.push_back(cur);
      return;
    }
    for (std::int64_t k = 0; k <= left; ++k) {
      cur[i] = -k;
      rec(i + 1, left - k);
    }
    cur[i] = 0;
  };
  rec(0, truncation);
  std::stable_sort(out.begin(), out.end(), [](const IntVec& a, const IntVec& b) {
    auto ha = neg_height(a), hb = neg_height(b);
    return ha != hb ? ha < hb : a < b;
  });
  return out;
}

CoweightSeries rhs_product(const RootGeneratingSystem& sys, std::int64_t truncation,
                           const std::optional<Multiplicities>& multiplicities,
                           const std::optional<CoweightSeries>& h0) {
  std::size_t k = sys.rank();
  bool finite = sys.matrix().is_finite_type();
  if (!multiplicities && !finite)
    throw Error(ErrorCode::MissingMultiplicity, "multiplicities are required outside finite type");
  if (!h0 && !finite) throw Error(ErrorCode::NotInvertible, "H0 is required outside finite type");

  CoweightSeries out = CoweightSeries::one(k, truncation);
  QLaurent c = one_minus_inverse_q();
  for (const auto& beta : real_roots_up_to_coroot_height(sys, truncation)) {
    std::int64_t m = 1;
    if (multiplicities) {
      auto it = multiplicities->find(beta.coroot);
      if (it == multiplicities->end())
        throw Error(ErrorCode::MissingMultiplicity, "no multiplicity for the root with coroot " + to_string(beta.coroot));
      m = it->second;
      if (m < 1) throw Error(ErrorCode::InvalidArgument, "multiplicities must be positive");
    }
    // (1 - q^{-1} x) / (1 - x) = 1 + (1 - q^{-1})(x + x^2 + ...) with x = e^{-beta^vee}
    CoweightSeries factor = CoweightSeries::one(k, truncation);
    std::int64_t h = beta.coroot_height();
    for (std::int64_t j = 1; j * h <= truncation; ++j) {
      IntVec mu(k);
      for (std::size_t i = 0; i < k; ++i) mu[i] = -j * beta.coroot[i];
      factor.add_term(mu, c);
    }
    for (std::int64_t r = 0; r < m; ++r) out = out * factor;
  }
  if (h0) {
    if (h0->rank() != k) throw Error(ErrorCode::InvalidArgument, "H0 has the wrong rank");
    out = out * h0->inverse();
  }
  return out;
}

CoweightSeries lhs_from_counts(std::size_t rank, const std::function<std::uint64_t(const IntVec&)>& counter,
                               std::int64_t truncation) {
  CoweightSeries out(rank, truncation);
  for (const auto& mu : truncated_support(rank, truncation)) {
    std::uint64_t n = counter(mu);
    if (n == 0) continue;
    out.add_term(mu, QLaurent::monomial(-neg_height(mu), Rational(Integer(std::to_string(n)))));
  }
  return out;
}

std::vector<SeriesDifference> compare(const CoweightSeries& a, const CoweightSeries& b,
                                      const std::optional<Rational>& q) {
  if (a.rank() != b.rank()) throw Error(ErrorCode::InvalidArgument, "series ranks differ");
  std::int64_t n = std::min(a.truncation(), b.truncation());
  std::vector<SeriesDifference> out;
  for (const auto& mu : truncated_support(a.rank(), n)) {
    QLaurent l = a.coefficient(mu), r = b.coefficient(mu);
    if (q) {
      Rational lv = l.evaluate(*q), rv = r.evaluate(*q);
      if (lv != rv) out.push_back({mu, l, r, lv, rv});
    } else if (!(l == r)) {
      out.push_back({mu, l, r, std::nullopt, std::nullopt});
    }
  }
  return out;
}

QLaurent path_weight(const RootGeneratingSystem& sys, const LambdaPath& path, const HeckeCertificate& cert,
                     const std::vector<RealRoot>& roots) {
  std::int64_t walls = 0;
  for (std::size_t k = 0; k < path.segments(); ++k) {
    RatVec from = path.position(path.breakpoints[k]);
    RatVec to = path.position(path.breakpoints[k + 1]);
    for (const auto& beta : roots) {
      if (sgn(beta.evaluate(sys, path.directions[k])) >= 0) continue;
      // beta decreases along the segment; count integers in (beta(to), beta(from)].
      walls += to_int64(Integer(floor(beta.evaluate(sys, from)) - floor(beta.evaluate(sys, to))));
    }
  }
  QLaurent w = QLaurent::monomial(walls);
  QLaurent c = one_minus_inverse_q();
  for (const auto& chain : cert.chains)
    for (std::size_t i = 0; i < chain.betas.size(); ++i) w = w * c;
  return w;
}

PathCountEstimate path_count_estimate(const RootGeneratingSystem& sys, const RatVec& lambda, const RatVec& nu,
                                      const EnumerationCutoffs& cutoffs) {
  PathCountEstimate out;
  out.notes.push_back("EXPERIMENTAL: weights are calibrated against rank-1 tree counts only");
  auto comps = sys.matrix().components();
  out.calibrated = std::all_of(comps.begin(), comps.end(), [](const auto& c) { return c.size() == 1; });
  RatVec start(sys.ambient_rank(), Rational(0));
  auto en = enumerate_hecke(sys, lambda, start, nu, cutoffs);
  out.truncated = en.truncated;
  for (const auto& n : en.notes) out.notes.push_back(n);

  std::vector<RealRoot> roots;
  if (sys.matrix().is_finite_type()) {
    std::int64_t h = 1;
    for (;; h *= 2) {
      roots = real_roots_up_to_height(sys, h);
      if (real_roots_up_to_height(sys, 2 * h).size() == roots.size()) break;
    }
  } else {
    roots = real_roots_up_to_height(sys, std::max<std::int64_t>(en.root_height, 1));
    out.truncated = true;
    out.notes.push_back("wall crossings counted for roots of height <= " + std::to_string(std::max<std::int64_t>(en.root_height, 1)));
  }
  for (const auto& [path, cert] : en.paths) out.value += path_weight(sys, path, cert, roots);
  out.paths = en.paths.size();
  return out;
}

}  // namespace masurelab
