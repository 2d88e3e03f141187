#pragma once

#include <optional>
#include <string>
#include <vector>

#include "masurelab/coweight_monoid.hpp"
#include "masurelab/rootdata.hpp"
#include "masurelab/weylgeom.hpp"

namespace masurelab {

struct LambdaPath {
  RatVec shape;                  // dominant lambda
  RatVec start;
  std::vector<Rational> breakpoints;  // 0 = t_0 < ... < t_n = 1
  std::vector<RatVec> directions;     // one per segment
  std::vector<Word> witnesses;        // from_word(w).apply(shape) == direction

  std::size_t segments() const { return directions.size(); }
  RatVec position(const Rational& t) const;
  RatVec endpoint() const;
};

// Throws InvalidPath when the path is not a lambda-path.
void check_lambda_path(const RootGeneratingSystem& sys, const LambdaPath& path);

// Merges collinear consecutive segments.
LambdaPath normal_form(const LambdaPath& path);

// mirror(pi)(t) = -pi(1 - t).
LambdaPath mirror(const LambdaPath& path);

struct HeckeChain {
  Rational t;
  std::vector<RatVec> xis;       // xi_0 = pi'_-(t), ..., xi_s = pi'_+(t)
  std::vector<RealRoot> betas;   // beta_1, ..., beta_s
};

struct HeckeCertificate {
  std::vector<HeckeChain> chains;  // one per interior breakpoint
};

enum class HeckeStatus { Valid, Invalid, Inconclusive };

const char* status_name(HeckeStatus s);

struct HeckeValidation {
  HeckeStatus status = HeckeStatus::Valid;
  HeckeCertificate certificate;
  std::optional<std::size_t> breakpoint;  // failing interior breakpoint index
  std::string reason;
};

// Checks the chain conditions at every interior breakpoint using positive real
// roots of height <= root_height_cutoff.
HeckeValidation validate_hecke(const RootGeneratingSystem& sys, const LambdaPath& path,
                               std::int64_t root_height_cutoff);

// Checks a supplied chain against the four conditions.
bool check_chain(const RootGeneratingSystem& sys, const LambdaPath& path, const HeckeChain& chain);

struct EnumerationCutoffs {
  std::int64_t root_height = 0;                  // 0: no cap beyond what the deficit forces
  std::optional<Rational> direction_height;      // required when no end point is given
  std::optional<std::int64_t> denominator;       // breakpoints in (1/D)Z; default from shape
  std::size_t max_paths = 200000;
};

struct HeckeEnumeration {
  std::vector<std::pair<LambdaPath, HeckeCertificate>> paths;
  bool truncated = false;
  std::int64_t denominator = 1;
  std::int64_t root_height = 0;
  std::vector<std::string> notes;
};

HeckeEnumeration enumerate_hecke(const RootGeneratingSystem& sys, const RatVec& shape, const RatVec& start,
                                 const std::optional<RatVec>& end, const EnumerationCutoffs& cutoffs);

std::int64_t default_denominator(const RootGeneratingSystem& sys, const RatVec& shape);

struct Deficit {
  RatVec mu;
  std::optional<RatVec> coords;  // over the simple coroots
  bool in_real_cone = false;     // mu in Q^vee_{R+}
};

Deficit deficit(const RootGeneratingSystem& sys, const LambdaPath& path);

// Smallest t with derivative equal to the shape on (t, 1], or nullopt.
std::optional<Rational> final_direction_time(const LambdaPath& path);

bool dominance_monotonicity_check(const RootGeneratingSystem& sys, const LambdaPath& path);

struct ShapeScale {
  Rational scale;  // T
  RatVec nu;       // shape = T nu
};

// T is the gcd of the coordinates of an integral shape; otherwise T = 1.
ShapeScale default_scale(const RatVec& shape);

struct FinalTimeCheck {
  bool applies = false;  // T > h(mu)
  bool holds = true;
  std::optional<Rational> t_star;
  Rational bound;        // h(mu) / T
};

FinalTimeCheck final_time_check(const RootGeneratingSystem& sys, const LambdaPath& path, const ShapeScale& scale);

// b_i = h(-mu) alpha_i(nu).
RatVec sufficiently_dominant_bound(const RootGeneratingSystem& sys, const RatVec& mu, const RatVec& nu);

struct BoundingBall {
  std::int64_t h_param = 0;   // H = -h(mu) + 1
  std::vector<bool> in_j;     // lambda_e >= H
  IntVec center;
  IntVec shape;
  IntVec shape_coefficients;  // over basis.generators()
};

BoundingBall bounding_ball(const RootGeneratingSystem& sys, const MonoidBasis& basis, const IntVec& coefficients,
                           const RatVec& mu);

}  // namespace masurelab
