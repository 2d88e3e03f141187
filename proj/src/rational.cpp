#include "masurelab/rational.hpp"

#include <cctype>
#include <limits>

#include "masurelab/error.hpp"

namespace masurelab {

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  Rational r(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_string(const RatVec& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += to_string(v[i]);
  }
  return out + "]";
}

std::string to_string(const IntVec& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(v[i]);
  }
  return out + "]";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool valid_integer_text(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Integer parse_integer(std::string_view s) {
  s = trim(s);
  if (!valid_integer_text(s)) throw Error(ErrorCode::Parse, "not an integer: '" + std::string(s) + "'");
  if (s.front() == '+') s.remove_prefix(1);
  return Integer(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = trim(s.substr(1, s.size() - 2));
  auto slash = s.find('/');
  Integer num = parse_integer(s.substr(0, slash));
  Integer den = 1;
  if (slash != std::string_view::npos) den = parse_integer(s.substr(slash + 1));
  if (den == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + std::string(s) + "'");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

RatVec parse_rational_list(std::string_view text) {
  std::string_view s = trim(text);
  if (!s.empty() && s.front() == '[') {
    if (s.back() != ']') throw Error(ErrorCode::Parse, "unbalanced brackets in '" + std::string(text) + "'");
    s = trim(s.substr(1, s.size() - 2));
  }
  RatVec out;
  if (s.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    auto comma = s.find(',', pos);
    out.push_back(parse_rational(s.substr(pos, comma == std::string_view::npos ? s.npos : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

bool is_integer(const Rational& r) { return r.get_den() == 1; }

std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) throw Error(ErrorCode::ResourceLimit, "integer exceeds 64 bits");
  return static_cast<std::int64_t>(z.get_si());
}

std::int64_t to_int64(const Rational& r) {
  if (!is_integer(r)) throw Error(ErrorCode::InvalidArgument, "expected an integer, got " + to_string(r));
  return to_int64(r.get_num());
}

Integer floor(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

Integer ceil(const Rational& r) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

RatVec to_rational(const IntVec& v) {
  RatVec out;
  out.reserve(v.size());
  for (auto x : v) out.emplace_back(Integer(static_cast<long>(x)));
  return out;
}

bool is_integral(const RatVec& v) {
  for (const auto& x : v)
    if (!is_integer(x)) return false;
  return true;
}

IntVec to_integers(const RatVec& v) {
  IntVec out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(to_int64(x));
  return out;
}

bool is_zero(const RatVec& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

RatVec add(const RatVec& a, const RatVec& b) {
  MASURELAB_ASSERT(a.size() == b.size());
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RatVec sub(const RatVec& a, const RatVec& b) {
  MASURELAB_ASSERT(a.size() == b.size());
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

RatVec scale(const Rational& c, const RatVec& v) {
  RatVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = c * v[i];
  return out;
}

RatVec negate(const RatVec& v) {
  RatVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
  return out;
}

void axpy(const Rational& c, const RatVec& x, RatVec& y) {
  MASURELAB_ASSERT(x.size() == y.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += c * x[i];
}

Rational dot(const IntVec& form, const RatVec& v) {
  MASURELAB_ASSERT(form.size() == v.size());
  Rational out = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (form[i] != 0) out += Rational(Integer(static_cast<long>(form[i]))) * v[i];
  return out;
}

Rational dot(const RatVec& form, const RatVec& v) {
  MASURELAB_ASSERT(form.size() == v.size());
  Rational out = 0;
  for (std::size_t i = 0; i < v.size(); ++i) out += form[i] * v[i];
  return out;
}

Rational sum(const RatVec& v) {
  Rational out = 0;
  for (const auto& x : v) out += x;
  return out;
}

bool all_nonnegative(const RatVec& v) {
  for (const auto& x : v)
    if (sgn(x) < 0) return false;
  return true;
}

bool all_nonpositive(const RatVec& v) {
  for (const auto& x : v)
    if (sgn(x) > 0) return false;
  return true;
}

bool leq_componentwise(const RatVec& a, const RatVec& b) {
  MASURELAB_ASSERT(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

std::strong_ordering lex_compare(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) return a.size() <=> b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

}  // namespace masurelab
