#include "masurelab/io.hpp"

#include <algorithm>

#include "masurelab/error.hpp"

namespace masurelab::io {

namespace {

std::vector<IntVec> int_rows(const json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorCode::Parse, std::string(what) + " must be an array of integer arrays");
  std::vector<IntVec> out;
  for (const auto& row : j) {
    if (!row.is_array()) throw Error(ErrorCode::Parse, std::string(what) + " must be an array of integer arrays");
    IntVec r;
    for (const auto& x : row) {
      if (!x.is_number_integer()) throw Error(ErrorCode::Parse, std::string(what) + " entries must be integers");
      r.push_back(x.get<std::int64_t>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

json word_to_json(const Word& w) { return json(w); }

}  // namespace

json to_json(const Rational& r) { return to_string(r); }

json to_json(const RatVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return make_rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw Error(ErrorCode::Parse, "expected a rational as an integer or a \"p/q\" string, got " + j.dump());
}

RatVec ratvec_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::Parse, "expected an array of rationals, got " + j.dump());
  RatVec v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

json datum_to_json(const RootGeneratingSystem& sys) {
  return json{{"matrix", sys.matrix().entries()},
              {"ambient_rank", sys.ambient_rank()},
              {"simple_roots", sys.simple_roots()},
              {"simple_coroots", sys.simple_coroots()}};
}

RootGeneratingSystem datum_from_json(const json& j, DatumKind kind) {
  if (!j.is_object() || !j.contains("matrix")) throw Error(ErrorCode::Parse, "root datum needs a \"matrix\" field");
  auto m = KacMoodyMatrix::validate(int_rows(j.at("matrix"), "matrix"));
  bool has_roots = j.contains("simple_roots"), has_coroots = j.contains("simple_coroots");
  if (!has_roots && !has_coroots && !j.contains("ambient_rank")) return make_datum(m, kind);
  if (!has_roots || !has_coroots || !j.contains("ambient_rank"))
    throw Error(ErrorCode::Parse, "give ambient_rank, simple_roots and simple_coroots together");
  if (!j.at("ambient_rank").is_number_unsigned()) throw Error(ErrorCode::Parse, "ambient_rank must be a natural number");
  return RootGeneratingSystem::make(m, j.at("ambient_rank").get<std::size_t>(), int_rows(j.at("simple_roots"), "simple_roots"),
                                    int_rows(j.at("simple_coroots"), "simple_coroots"));
}

json root_to_json(const RealRoot& r) {
  return json{{"root", r.form},
              {"coroot", r.coroot},
              {"height", r.height()},
              {"coroot_height", r.coroot_height()},
              {"witness", word_to_json(r.witness)},
              {"witness_index", r.witness_index}};
}

json chain_to_json(const HeckeChain& c) {
  json xis = json::array(), betas = json::array();
  for (const auto& x : c.xis) xis.push_back(to_json(x));
  for (const auto& b : c.betas) betas.push_back(b.form);
  return json{{"t", to_json(c.t)}, {"xis", xis}, {"betas", betas}};
}

json path_to_json(const LambdaPath& p, const HeckeCertificate* cert) {
  json bps = json::array(), dirs = json::array(), wit = json::array();
  for (const auto& t : p.breakpoints) bps.push_back(to_json(t));
  for (const auto& d : p.directions) dirs.push_back(to_json(d));
  for (const auto& w : p.witnesses) wit.push_back(word_to_json(w));
  json out{{"shape", to_json(p.shape)}, {"start", to_json(p.start)}, {"breakpoints", bps}, {"directions", dirs},
           {"witnesses", wit}};
  if (cert) {
    json chains = json::array();
    for (const auto& c : cert->chains) chains.push_back(chain_to_json(c));
    out["certificate"] = chains;
  }
  return out;
}

LambdaPath path_from_json(const RootGeneratingSystem& sys, const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::Parse, "path must be a JSON object");
  for (const char* f : {"shape", "start", "breakpoints", "directions"})
    if (!j.contains(f)) throw Error(ErrorCode::Parse, std::string("path is missing \"") + f + "\"");
  LambdaPath p;
  p.shape = ratvec_from_json(j.at("shape"));
  p.start = ratvec_from_json(j.at("start"));
  p.breakpoints = ratvec_from_json(j.at("breakpoints"));
  for (const auto& d : j.at("directions")) p.directions.push_back(ratvec_from_json(d));
  if (j.contains("witnesses")) {
    for (const auto& w : j.at("witnesses")) p.witnesses.push_back(w.get<Word>());
    return p;
  }
  for (const auto& d : p.directions) {
    if (d.size() != sys.ambient_rank()) throw Error(ErrorCode::InvalidPath, "direction has wrong arity");
    DominantResult dom = [&] {
      try {
        return dominant_representative(sys, d, 10000);
      } catch (const Error&) {
        throw Error(ErrorCode::InvalidPath, "direction " + to_string(d) + " is not in the orbit of the shape");
      }
    }();
    if (dom.dominant != p.shape)
      throw Error(ErrorCode::InvalidPath, "direction " + to_string(d) + " is not in the orbit of the shape");
    Word w = dom.word;
    std::reverse(w.begin(), w.end());
    p.witnesses.push_back(w);
  }
  return p;
}

json laurent_to_json(const QLaurent& p) {
  json out = json::object();
  for (const auto& [e, c] : p.terms()) out[std::to_string(e)] = to_json(c);
  return out;
}

json series_to_json(const CoweightSeries& s) {
  json out = json::array();
  for (const auto& [mu, c] : s.sorted()) out.push_back(json{{"mu", mu}, {"coeff", laurent_to_json(c)}});
  return out;
}

json monoid_basis_to_json(const MonoidBasis& b) {
  return json{{"strict_generators", b.strict_gens},
              {"strict_images", b.strict_images},
              {"inessential_generators", b.inessential_gens},
              {"certified_bound", b.certified_bound},
              {"lattice_exponent", b.exponent.get_str()},
              {"exponent_checked", b.exponent_checked},
              {"notes", b.notes}};
}

json verify_report_to_json(const VerifyReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back(json{{"lambda", row.lambda},
                        {"bi_count", row.bi_count},
                        {"sphere_count", row.sphere_count},
                        {"inclusion", row.inclusion},
                        {"equality", row.equality}});
  json out{{"mu", r.mu}, {"rows", rows}, {"reference_count", r.reference_count}, {"invariance", r.invariance},
           {"threshold", r.threshold}};
  out["min_inclusion"] = r.min_inclusion ? json(*r.min_inclusion) : json(nullptr);
  out["min_equality"] = r.min_equality ? json(*r.min_equality) : json(nullptr);
  return out;
}

}  // namespace masurelab::io
