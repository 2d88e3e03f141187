#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace masurelab {

using Integer = mpz_class;
using Rational = mpq_class;

using RatVec = std::vector<Rational>;
using IntVec = std::vector<std::int64_t>;

Rational make_rational(std::int64_t num, std::int64_t den = 1);

// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& r);
std::string to_string(const RatVec& v);
std::string to_string(const IntVec& v);

// Accepts "p", "-p", "p/q" with optional surrounding whitespace.
Rational parse_rational(std::string_view text);

// Accepts "[a, b/c, ...]" or "a,b/c,..." (brackets optional).
RatVec parse_rational_list(std::string_view text);

bool is_integer(const Rational& r);
std::int64_t to_int64(const Integer& z);
std::int64_t to_int64(const Rational& r);  // requires an integral value
Integer floor(const Rational& r);
Integer ceil(const Rational& r);

RatVec to_rational(const IntVec& v);
bool is_integral(const RatVec& v);
IntVec to_integers(const RatVec& v);  // requires integral entries

bool is_zero(const RatVec& v);
RatVec add(const RatVec& a, const RatVec& b);
RatVec sub(const RatVec& a, const RatVec& b);
RatVec scale(const Rational& c, const RatVec& v);
RatVec negate(const RatVec& v);
void axpy(const Rational& c, const RatVec& x, RatVec& y);  // y += c*x
Rational dot(const IntVec& form, const RatVec& v);
Rational dot(const RatVec& form, const RatVec& v);
Rational sum(const RatVec& v);
bool all_nonnegative(const RatVec& v);
bool all_nonpositive(const RatVec& v);
bool leq_componentwise(const RatVec& a, const RatVec& b);

// Lexicographic order on equal-length rational vectors.
std::strong_ordering lex_compare(const RatVec& a, const RatVec& b);

struct RatVecLess {
  bool operator()(const RatVec& a, const RatVec& b) const { return lex_compare(a, b) < 0; }
};

}  // namespace masurelab
