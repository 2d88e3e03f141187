#pragma once

#include <string>
#include <vector>

#include "masurelab/rootdata.hpp"

namespace masurelab {

// Componentwise-minimal elements of `points`, deduplicated and sorted lexicographically.
std::vector<IntVec> dickson_minimals(const std::vector<IntVec>& points);

struct MonoidBasis {
  std::vector<IntVec> inessential_gens;  // b1, -b1, b2, -b2, ...
  std::vector<IntVec> strict_gens;       // one per minimal root-value image
  std::vector<IntVec> strict_images;     // root values of strict_gens, lexicographic
  std::int64_t certified_bound = 0;      // shell certificate holds at this box size
  Integer exponent;                      // minimal images lie in [0, exponent]^I
  bool exponent_checked = false;         // the box [0, exponent]^I was scanned
  std::vector<std::string> notes;

  // strict_gens followed by inessential_gens; decompose_in_basis indexes into this.
  std::vector<IntVec> generators() const;
};

MonoidBasis hilbert_basis(const RootGeneratingSystem& sys, std::int64_t initial_bound, std::int64_t ceiling);

bool in_dominant_monoid(const RootGeneratingSystem& sys, const IntVec& y);

// Nonnegative coefficients over basis.generators() summing to lambda.
IntVec decompose_in_basis(const RootGeneratingSystem& sys, const MonoidBasis& basis, const IntVec& lambda);

IntVec recombine(const MonoidBasis& basis, const IntVec& coefficients, std::size_t ambient_rank);

}  // namespace masurelab
