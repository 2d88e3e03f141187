#pragma once

#include <json.hpp>

#include "masurelab/coweight_monoid.hpp"
#include "masurelab/gk_series.hpp"
#include "masurelab/hecke_paths.hpp"
#include "masurelab/rootdata.hpp"
#include "masurelab/tree_masure.hpp"
#include "masurelab/weylgeom.hpp"

namespace masurelab::io {

using nlohmann::json;

json to_json(const Rational& r);  // "p/q", or "p" when integral
json to_json(const RatVec& v);
Rational rational_from_json(const json& j);
RatVec ratvec_from_json(const json& j);

json datum_to_json(const RootGeneratingSystem& sys);
// Accepts the full schema, or only "matrix" (completed by `kind`).
RootGeneratingSystem datum_from_json(const json& j, DatumKind kind = DatumKind::Auto);

json root_to_json(const RealRoot& r);
json chain_to_json(const HeckeChain& c);
json path_to_json(const LambdaPath& p, const HeckeCertificate* cert = nullptr);
// Missing witnesses are recomputed from the directions.
LambdaPath path_from_json(const RootGeneratingSystem& sys, const json& j);

json laurent_to_json(const QLaurent& p);
json series_to_json(const CoweightSeries& s);
json monoid_basis_to_json(const MonoidBasis& b);
json verify_report_to_json(const VerifyReport& r);

}  // namespace masurelab::io
