#include "masurelab/cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "masurelab/coweight_monoid.hpp"
#include "masurelab/error.hpp"
#include "masurelab/gk_series.hpp"
#include "masurelab/hecke_paths.hpp"
#include "masurelab/io.hpp"
#include "masurelab/rootdata.hpp"
#include "masurelab/tree_masure.hpp"
#include "masurelab/weylgeom.hpp"

namespace masurelab::cli {

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw InternalError("SHA-256 computation failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return os.str();
}

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Outcome {
  json payload;
  std::vector<std::string> certification;
  std::optional<Table> table;
  int exit = 0;
};

json table_to_json(const Table& t) { return json{{"header", t.header}, {"rows", t.rows}}; }

Table table_from_json(const json& j) {
  return Table{j.at("header").get<std::vector<std::string>>(), j.at("rows").get<std::vector<std::vector<std::string>>>()};
}

// Options that were given on the command line, plus the parsed contents of any input files.
struct Config {
  std::string command;
  std::string mode;
  std::map<std::string, std::string> options;
  std::optional<json> datum;
  std::optional<json> path;

  json canonical() const {
    json j{{"command", command}, {"options", options}};
    if (!mode.empty()) j["mode"] = mode;
    if (datum) j["datum"] = *datum;
    if (path) j["path"] = *path;
    return j;
  }

  bool has(const std::string& name) const { return options.count(name) > 0; }

  const std::string& str(const std::string& name) const {
    auto it = options.find(name);
    if (it == options.end()) throw UsageError("--" + name + " is required");
    return it->second;
  }

  std::int64_t integer(const std::string& name) const {
    const std::string& s = str(name);
    std::size_t pos = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != s.size()) throw UsageError("--" + name + " expects an integer, got '" + s + "'");
    return v;
  }

  std::int64_t integer(const std::string& name, std::int64_t fallback) const {
    return has(name) ? integer(name) : fallback;
  }

  std::int64_t positive(const std::string& name, std::int64_t fallback) const {
    std::int64_t v = integer(name, fallback);
    if (v < 1) throw UsageError("--" + name + " must be positive");
    return v;
  }

  Rational rational(const std::string& name) const { return parse_rational(str(name)); }
  RatVec vector(const std::string& name) const { return parse_rational_list(str(name)); }

  std::int64_t q() const {
    std::int64_t v = integer("q", 2);
    if (v < 2) throw UsageError("--q must be at least 2");
    return v;
  }
};

DatumKind datum_kind(const Config& c) {
  if (!c.has("datum-kind")) return DatumKind::Auto;
  const std::string& k = c.str("datum-kind");
  if (k == "auto") return DatumKind::Auto;
  if (k == "simply-connected") return DatumKind::SimplyConnected;
  if (k == "canonical") return DatumKind::Canonical;
  throw UsageError("--datum-kind must be auto, simply-connected or canonical");
}

RootGeneratingSystem load_datum(const Config& c, DatumKind fallback = DatumKind::Auto) {
  if (!c.datum) throw UsageError("a root datum is required: pass --matrix or --datum-file");
  return io::datum_from_json(*c.datum, c.has("datum-kind") ? datum_kind(c) : fallback);
}

std::string cell(const IntVec& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

std::pair<std::int64_t, std::int64_t> lambda_range(const Config& c) {
  std::string s = c.has("lambda-range") ? c.str("lambda-range") : "-3..3";
  auto dots = s.find("..");
  if (dots == std::string::npos) throw UsageError("--lambda-range expects a..b");
  Config tmp;
  tmp.options["a"] = s.substr(0, dots);
  tmp.options["b"] = s.substr(dots + 2);
  auto a = tmp.integer("a"), b = tmp.integer("b");
  if (a > b) throw UsageError("--lambda-range is empty");
  return {a, b};
}

json tits_to_json(const TitsResult& t) {
  json j{{"answer", tits_name(t.answer)}, {"note", t.note}};
  j["word"] = t.word ? json(*t.word) : json(nullptr);
  j["certificate"] = t.certificate ? json(*t.certificate) : json(nullptr);
  return j;
}

// ---- commands -------------------------------------------------------------

Outcome cmd_rootdata_validate(const Config& c) {
  if (!c.datum) throw UsageError("--matrix or --datum-file is required");
  Outcome o;
  if (!c.datum->contains("matrix")) throw Error(ErrorCode::Parse, "root datum needs a \"matrix\" field");
  std::vector<IntVec> rows;
  try {
    rows = c.datum->at("matrix").get<std::vector<IntVec>>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::Parse, "matrix must be an array of integer arrays");
  }
  auto m = KacMoodyMatrix::validate(rows);
  json comps = json::array();
  for (const auto& comp : m.components()) comps.push_back(json{{"indices", comp}, {"type", type_name(m.component_type(comp))}});
  o.payload = json{{"valid", true}, {"size", m.size()}, {"determinant", to_string(m.determinant())},
                   {"finite_type", m.is_finite_type()}, {"components", comps}};
  if (c.datum->contains("simple_roots")) o.payload["datum"] = io::datum_to_json(load_datum(c));
  return o;
}

Outcome cmd_rootdata_canonical(const Config& c) {
  auto sys = load_datum(c, DatumKind::Canonical);
  Outcome o;
  o.payload = io::datum_to_json(sys);
  o.payload["yin_basis"] = sys.yin_basis();
  return o;
}

Outcome cmd_roots_enumerate(const Config& c) {
  auto sys = load_datum(c);
  Outcome o;
  std::vector<RealRoot> roots;
  if (c.has("coroot-height")) {
    auto n = c.positive("coroot-height", 1);
    roots = real_roots_up_to_coroot_height(sys, n);
    o.certification.push_back("all positive real roots whose coroot has height <= " + std::to_string(n));
  } else {
    auto n = c.positive("height", 3);
    roots = real_roots_up_to_height(sys, n);
    o.certification.push_back("all positive real roots of height <= " + std::to_string(n));
  }
  json list = json::array();
  Table t{{"root", "coroot", "height", "coroot_height"}, {}};
  for (const auto& r : roots) {
    list.push_back(io::root_to_json(r));
    t.rows.push_back({cell(r.form), cell(r.coroot), std::to_string(r.height()), std::to_string(r.coroot_height())});
  }
  o.payload = json{{"roots", list}, {"count", roots.size()}};
  o.table = t;
  return o;
}

Outcome cmd_weyl_dominant(const Config& c) {
  auto sys = load_datum(c);
  RatVec v = c.vector("vector");
  if (v.size() != sys.ambient_rank()) throw Error(ErrorCode::InvalidArgument, "vector has wrong arity");
  auto budget = static_cast<std::size_t>(c.positive("budget", 10000));
  Outcome o;
  o.payload = json{{"vector", io::to_json(v)}};
  try {
    auto dom = dominant_representative(sys, v, budget);
    o.payload["dominant"] = io::to_json(dom.dominant);
    o.payload["word"] = dom.word;
    auto face = face_signature(sys, dom.dominant);
    o.payload["face"] = json{{"zero", face.zero}, {"positive", face.positive}};
    o.payload["tits"] = json{{"answer", "yes"}};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotDominantable) throw;
    o.payload["dominant"] = nullptr;
    o.payload["tits"] = tits_to_json(in_tits_cone(sys, v, budget));
    o.payload["reason"] = e.what();
    o.exit = 3;
  }
  o.certification.push_back("reflection budget " + std::to_string(budget));
  return o;
}

MonoidBasis basis_for(const RootGeneratingSystem& sys, const Config& c, Outcome& o) {
  auto bound = c.positive("bound", 1);
  auto ceiling = c.positive("ceiling", 64);
  auto basis = hilbert_basis(sys, bound, ceiling);
  for (const auto& n : basis.notes) o.certification.push_back(n);
  return basis;
}

Outcome cmd_monoid_basis(const Config& c) {
  auto sys = load_datum(c);
  Outcome o;
  auto basis = basis_for(sys, c, o);
  o.payload = io::monoid_basis_to_json(basis);
  o.payload["generators"] = basis.generators();
  return o;
}

Outcome cmd_monoid_decompose(const Config& c) {
  auto sys = load_datum(c);
  RatVec v = c.vector("vector");
  if (v.size() != sys.ambient_rank()) throw Error(ErrorCode::InvalidArgument, "vector has wrong arity");
  if (!is_integral(v)) throw Error(ErrorCode::InvalidArgument, "vector must lie in Y");
  Outcome o;
  auto basis = basis_for(sys, c, o);
  IntVec lambda = to_integers(v);
  auto coeffs = decompose_in_basis(sys, basis, lambda);
  MASURELAB_ASSERT(recombine(basis, coeffs, sys.ambient_rank()) == lambda);
  auto split = sys.inessential_decompose(v);
  o.payload = json{{"vector", lambda},
                   {"generators", basis.generators()},
                   {"coefficients", coeffs},
                   {"inessential_split", json{{"inessential", io::to_json(split.inessential)}, {"lattice", split.lattice}}}};
  return o;
}

Outcome cmd_path_check(const Config& c) {
  auto sys = load_datum(c);
  if (!c.path) throw UsageError("--path-file or --path is required");
  LambdaPath path = io::path_from_json(sys, *c.path);
  check_lambda_path(sys, path);
  auto cutoff = c.positive("height", 10);
  auto v = validate_hecke(sys, path, cutoff);
  Outcome o;
  o.payload = io::path_to_json(path, v.status == HeckeStatus::Valid ? &v.certificate : nullptr);
  o.payload["status"] = status_name(v.status);
  o.payload["reason"] = v.reason;
  o.payload["breakpoint"] = v.breakpoint ? json(*v.breakpoint) : json(nullptr);
  auto d = deficit(sys, path);
  o.payload["deficit"] = json{{"mu", io::to_json(d.mu)}, {"in_real_cone", d.in_real_cone}};
  o.payload["deficit"]["coords"] = d.coords ? io::to_json(*d.coords) : json(nullptr);
  if (d.coords && v.status == HeckeStatus::Valid) {
    auto ft = final_time_check(sys, path, default_scale(path.shape));
    o.payload["final_time"] = json{{"applies", ft.applies}, {"holds", ft.holds}, {"bound", io::to_json(ft.bound)}};
    o.payload["final_time"]["t_star"] = ft.t_star ? io::to_json(*ft.t_star) : json(nullptr);
  }
  o.certification.push_back("chains searched among positive real roots of height <= " + std::to_string(cutoff));
  if (v.status != HeckeStatus::Valid) o.exit = 3;
  return o;
}

EnumerationCutoffs cutoffs_from(const Config& c) {
  EnumerationCutoffs cut;
  cut.root_height = c.integer("height", 0);
  if (cut.root_height < 0) throw UsageError("--height must be nonnegative");
  if (c.has("direction-height")) cut.direction_height = c.rational("direction-height");
  if (c.has("denominator")) cut.denominator = c.positive("denominator", 1);
  cut.max_paths = static_cast<std::size_t>(c.positive("max-paths", 200000));
  return cut;
}

Outcome cmd_path_enumerate(const Config& c) {
  auto sys = load_datum(c);
  RatVec shape = c.vector("shape");
  RatVec start = c.has("start") ? c.vector("start") : RatVec(sys.ambient_rank(), Rational(0));
  std::optional<RatVec> end;
  if (c.has("end")) end = c.vector("end");
  auto en = enumerate_hecke(sys, shape, start, end, cutoffs_from(c));
  Outcome o;
  json paths = json::array();
  for (const auto& [p, cert] : en.paths) paths.push_back(io::path_to_json(p, &cert));
  o.payload = json{{"paths", paths}, {"count", en.paths.size()}, {"truncated", en.truncated},
                   {"denominator", en.denominator}, {"root_height", en.root_height}};
  o.certification = en.notes;
  if (en.truncated) {
    o.payload["reason"] = "CutoffTooSmall";
    o.exit = 3;
  }
  return o;
}

Outcome cmd_tree_build_info(const Config& c) {
  auto q = c.q();
  auto depth = c.integer("depth", 1);
  auto tree = TreeMasure::build(q, depth);
  Outcome o;
  std::uint64_t per_gate = 1;
  for (std::int64_t i = 0; i < depth; ++i) per_gate *= static_cast<std::uint64_t>(q);
  o.payload = json{{"q", q},
                   {"depth", depth},
                   {"vertex_count", tree.vertex_count()},
                   {"apartment_vertices", 2 * depth + 1},
                   {"vertices_per_gate", per_gate},
                   {"interior_degree", q + 1},
                   {"formula", "(2*depth + 1) * q^depth"}};
  o.certification.push_back("region: gate in [-depth, depth], branch depth <= depth; vertices are implicit");
  return o;
}

std::uint64_t closed_form_count(std::int64_t q, std::int64_t n) {
  if (n == 0) return 1;
  std::uint64_t v = static_cast<std::uint64_t>(q - 1);
  for (std::int64_t i = 1; i < n; ++i) v *= static_cast<std::uint64_t>(q);
  return v;
}

Outcome cmd_tree_counts(const Config& c) {
  auto q = c.q();
  auto lambda = c.integer("lambda", 0);
  std::vector<std::int64_t> mus;
  if (c.has("mu"))
    mus.push_back(c.integer("mu"));
  else
    for (std::int64_t n = 0; n <= c.integer("truncation", 5); ++n) mus.push_back(-n);
  std::int64_t need = 0;
  for (auto m : mus) need = std::max(need, 2 * (lambda < 0 ? -lambda : lambda) + (m < 0 ? -2 * m : 0));
  need = std::max<std::int64_t>(need, 2 * std::max<std::int64_t>(1, -*std::min_element(mus.begin(), mus.end())));
  auto depth = c.integer("depth", need);
  auto tree = TreeMasure::build(q, depth);
  Outcome o;
  json rows = json::array();
  Table t{{"lambda", "mu", "count", "closed_form"}, {}};
  for (auto m : mus) {
    auto r = tree.count_bi_retraction(2 * lambda, 2 * m);
    std::uint64_t expect = m > 0 ? 0 : closed_form_count(q, -m);
    rows.push_back(json{{"mu", m}, {"count", r.count}, {"closed_form", expect}, {"certificate", r.certificate}});
    t.rows.push_back({std::to_string(lambda), std::to_string(m), std::to_string(r.count), std::to_string(expect)});
  }
  o.payload = json{{"q", q}, {"depth", depth}, {"lambda", lambda}, {"counts", rows}};
  o.table = t;
  o.certification.push_back("brute force over the ball of radius 2|mu| around lambda; tree depth " + std::to_string(depth));
  return o;
}

Outcome cmd_tree_verify(const Config& c) {
  if (c.mode != "inclusion" && c.mode != "invariance" && c.mode != "equality")
    throw UsageError("tree-verify expects one of inclusion, invariance, equality");
  auto q = c.q();
  auto mu = c.integer("mu", -1);
  if (mu > 0) throw Error(ErrorCode::InvalidArgument, "--mu must be a nonpositive multiple of alpha^vee");
  auto [a, b] = lambda_range(c);
  std::int64_t reach = 2 * std::max(a < 0 ? -a : a, b < 0 ? -b : b) - 2 * mu;
  auto depth = c.integer("depth", reach);
  auto tree = TreeMasure::build(q, depth);
  auto rep = verify_tree(tree, mu, a, b);
  Outcome o;
  o.payload = io::verify_report_to_json(rep);
  o.payload["mode"] = c.mode;
  o.payload["q"] = q;
  o.payload["depth"] = depth;
  bool verdict = true;
  if (c.mode == "invariance") {
    verdict = rep.invariance;
  } else if (c.mode == "inclusion") {
    for (const auto& r : rep.rows)
      if (r.lambda >= rep.threshold && !r.inclusion) verdict = false;
    if (b < rep.threshold) o.certification.push_back("range ends below the threshold; no row is constrained");
  } else {
    verdict = rep.min_equality && *rep.min_equality <= rep.threshold;
  }
  o.payload["verdict"] = verdict;
  Table t{{"lambda", "bi_count", "sphere_count", "inclusion", "equality"}, {}};
  for (const auto& r : rep.rows)
    t.rows.push_back({std::to_string(r.lambda), std::to_string(r.bi_count), std::to_string(r.sphere_count),
                      r.inclusion ? "true" : "false", r.equality ? "true" : "false"});
  o.table = t;
  o.certification.push_back("set comparison by brute force; tree depth " + std::to_string(depth) +
                            ", sufficiently dominant threshold lambda >= " + std::to_string(rep.threshold));
  if (!verdict) o.exit = 3;
  return o;
}

RootGeneratingSystem series_datum(const Config& c) {
  if (c.datum) return load_datum(c);
  return simply_connected_datum(KacMoodyMatrix::validate({{2}}));
}

Table series_table(const CoweightSeries& s, const std::optional<Rational>& q) {
  Table t{{"mu", "coefficient"}, {}};
  if (q) t.header.push_back("value");
  for (const auto& [mu, coeff] : s.sorted()) {
    std::vector<std::string> row{cell(mu), coeff.to_string()};
    if (q) row.push_back(to_string(coeff.evaluate(*q)));
    t.rows.push_back(row);
  }
  return t;
}

CoweightSeries tree_lhs(const RootGeneratingSystem& sys, std::int64_t q, std::int64_t truncation,
                        std::optional<std::int64_t> depth, Outcome& o) {
  const auto& m = sys.matrix();
  auto comps = m.components();
  bool a1 = m.size() <= 2 && std::all_of(comps.begin(), comps.end(), [](const auto& c) { return c.size() == 1; });
  if (!a1) throw Error(ErrorCode::Unsupported, "tree counts exist only for A1 and A1 x A1 matrices");
  auto d = depth.value_or(2 * truncation);
  auto tree = TreeMasure::build(q, d);
  o.certification.push_back("counts by brute force on trees of depth " + std::to_string(d) + " with q = " + std::to_string(q));
  if (m.size() == 1)
    return lhs_from_counts(1, [&](const IntVec& mu) { return tree.count_bi_retraction(0, 2 * mu[0]).count; }, truncation);
  ProductMasure prod(tree, tree);
  return lhs_from_counts(
      2, [&](const IntVec& mu) { return prod.count_bi_retraction({0, 0}, {2 * mu[0], 2 * mu[1]}); }, truncation);
}

std::optional<Multiplicities> multiplicities_from(const Config& c) {
  if (!c.has("multiplicities")) return std::nullopt;
  json j = json::parse(c.str("multiplicities"));
  Multiplicities m;
  for (const auto& e : j) m[e.at("coroot").get<IntVec>()] = e.at("m").get<std::int64_t>();
  return m;
}

std::optional<CoweightSeries> h0_from(const Config& c, std::size_t rank, std::int64_t truncation) {
  if (!c.has("h0")) return std::nullopt;
  json j = json::parse(c.str("h0"));
  CoweightSeries s(rank, truncation);
  for (const auto& e : j) {
    QLaurent p;
    for (const auto& [exp, coeff] : e.at("coeff").items())
      p += QLaurent::monomial(std::stoll(exp), io::rational_from_json(coeff));
    s.add_term(e.at("mu").get<IntVec>(), p);
  }
  return s;
}

Outcome cmd_gk_lhs(const Config& c) {
  auto sys = series_datum(c);
  auto q = c.q();
  auto n = c.integer("truncation", 6);
  if (n < 0) throw UsageError("--truncation must be nonnegative");
  Outcome o;
  std::optional<std::int64_t> depth;
  if (c.has("depth")) depth = c.integer("depth");
  auto s = tree_lhs(sys, q, n, depth, o);
  o.payload = json{{"q", q}, {"truncation", n}, {"series", io::series_to_json(s)}};
  o.table = series_table(s, std::nullopt);
  return o;
}

Outcome cmd_gk_rhs(const Config& c) {
  auto sys = series_datum(c);
  auto n = c.integer("truncation", 6);
  if (n < 0) throw UsageError("--truncation must be nonnegative");
  auto s = rhs_product(sys, n, multiplicities_from(c), h0_from(c, sys.rank(), n));
  Outcome o;
  std::optional<Rational> q;
  if (c.has("q")) q = Rational(c.q());
  o.payload = json{{"truncation", n}, {"series", io::series_to_json(s)}};
  o.table = series_table(s, q);
  o.certification.push_back("product over positive real roots whose coroot has height <= " + std::to_string(n));
  if (!c.has("multiplicities")) o.certification.push_back("finite type: all multiplicities 1, H0 = 1");
  return o;
}

json difference_to_json(const SeriesDifference& d) {
  json j{{"mu", d.mu}, {"lhs", io::laurent_to_json(d.left)}, {"rhs", io::laurent_to_json(d.right)}};
  if (d.left_value) j["lhs_value"] = io::to_json(*d.left_value);
  if (d.right_value) j["rhs_value"] = io::to_json(*d.right_value);
  return j;
}

Outcome cmd_gk_compare(const Config& c) {
  auto sys = series_datum(c);
  auto q = c.q();
  auto n = c.integer("truncation", 6);
  if (n < 0) throw UsageError("--truncation must be nonnegative");
  Outcome o;
  std::optional<std::int64_t> depth;
  if (c.has("depth")) depth = c.integer("depth");
  auto lhs = tree_lhs(sys, q, n, depth, o);
  auto rhs = rhs_product(sys, n, multiplicities_from(c), h0_from(c, sys.rank(), n));
  auto diff = compare(lhs, rhs, Rational(q));
  json list = json::array();
  Table t{{"mu", "lhs_value", "rhs_value"}, {}};
  for (const auto& d : diff) {
    list.push_back(difference_to_json(d));
    t.rows.push_back({cell(d.mu), to_string(*d.left_value), to_string(*d.right_value)});
  }
  o.payload = json{{"q", q}, {"truncation", n}, {"differences", list}, {"equal", diff.empty()}};
  o.table = t;
  o.certification.push_back("exact rational comparison at q = " + std::to_string(q) + " for h(mu) >= -" + std::to_string(n));
  if (!diff.empty()) o.exit = 3;
  return o;
}

Outcome cmd_path_count_estimate(const Config& c) {
  auto sys = series_datum(c);
  RatVec shape = c.vector("shape");
  RatVec end = c.vector("end");
  auto est = path_count_estimate(sys, shape, end, cutoffs_from(c));
  Outcome o;
  o.payload = json{{"value", io::laurent_to_json(est.value)}, {"value_text", est.value.to_string()},
                   {"paths", est.paths}, {"experimental", est.experimental}, {"calibrated", est.calibrated},
                   {"truncated", est.truncated}};
  if (c.has("q")) o.payload["numeric"] = io::to_json(est.value.evaluate(Rational(c.q())));
  o.certification = est.notes;
  if (est.truncated) {
    o.payload["reason"] = "CutoffTooSmall";
    o.exit = 3;
  }
  return o;
}

// ---- plumbing -------------------------------------------------------------

struct Command {
  const char* name;
  const char* help;
  Outcome (*run)(const Config&);
  std::vector<const char*> options;
  bool has_mode = false;
};

const std::vector<Command>& commands() {
  static const std::vector<const char*> datum{"matrix", "datum-file", "datum-kind"};
  auto with_datum = [](std::vector<const char*> extra) {
    std::vector<const char*> o = datum;
    o.insert(o.end(), extra.begin(), extra.end());
    return o;
  };
  static const std::vector<Command> cmds{
      {"rootdata-validate", "validate a Kac-Moody matrix or root datum", cmd_rootdata_validate, with_datum({})},
      {"rootdata-canonical", "build the canonical root datum of a matrix", cmd_rootdata_canonical, with_datum({})},
      {"roots-enumerate", "list positive real roots", cmd_roots_enumerate, with_datum({"height", "coroot-height"})},
      {"weyl-dominant", "dominant representative of a vector", cmd_weyl_dominant, with_datum({"vector", "budget"})},
      {"monoid-basis", "Hilbert basis of the dominant coweights", cmd_monoid_basis, with_datum({"bound", "ceiling"})},
      {"monoid-decompose", "decompose a dominant coweight", cmd_monoid_decompose,
       with_datum({"vector", "bound", "ceiling"})},
      {"path-check", "validate a Hecke path", cmd_path_check, with_datum({"path-file", "path", "height"})},
      {"path-enumerate", "enumerate Hecke paths", cmd_path_enumerate,
       with_datum({"shape", "start", "end", "height", "direction-height", "denominator", "max-paths"})},
      {"tree-build-info", "size of a finite tree region", cmd_tree_build_info, {"q", "depth"}},
      {"tree-counts", "bi-retraction fiber counts on the tree", cmd_tree_counts,
       {"q", "depth", "lambda", "mu", "truncation"}},
      {"tree-verify", "check inclusion, invariance or equality on the tree", cmd_tree_verify,
       {"q", "depth", "mu", "lambda-range"}, true},
      {"gk-lhs", "counting side of the series identity", cmd_gk_lhs, with_datum({"q", "truncation", "depth"})},
      {"gk-rhs", "product side of the series identity", cmd_gk_rhs,
       with_datum({"q", "truncation", "multiplicities", "h0"})},
      {"gk-compare", "compare both sides of the series identity", cmd_gk_compare,
       with_datum({"q", "truncation", "depth", "multiplicities", "h0"})},
      {"path-count-estimate", "weighted Hecke path count (experimental)", cmd_path_count_estimate,
       with_datum({"shape", "end", "q", "height", "direction-height", "denominator", "max-paths"})},
  };
  return cmds;
}

std::string read_file(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw UsageError("cannot read " + p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(what + " is not valid JSON: " + e.what());
  }
}

std::string timestamp() {
  std::time_t t = std::time(nullptr);
  if (const char* sde = std::getenv("SOURCE_DATE_EPOCH")) t = static_cast<std::time_t>(std::atoll(sde));
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

fs::path cache_dir(const std::optional<std::string>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("MASURELAB_CACHE")) return env;
  if (const char* home = std::getenv("HOME")) return fs::path(home) / ".cache" / "masurelab";
  return fs::path(".masurelab-cache");
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

void render(std::ostream& out, const std::string& format, const json& envelope, const std::optional<Table>& table) {
  if (format == "json") {
    out << envelope.dump(2) << "\n";
    return;
  }
  if (format == "csv") {
    for (std::size_t i = 0; i < table->header.size(); ++i) out << (i ? "," : "") << csv_cell(table->header[i]);
    out << "\n";
    for (const auto& row : table->rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
      out << "\n";
    }
    return;
  }
  out << envelope.at("command").get<std::string>() << "  [" << envelope.at("config_hash").get<std::string>().substr(0, 12)
      << "]\n";
  if (table) {
    std::vector<std::size_t> width(table->header.size(), 0);
    for (std::size_t i = 0; i < width.size(); ++i) width[i] = table->header[i].size();
    for (const auto& row : table->rows)
      for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    auto line = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << r[i];
      out << "\n";
    };
    line(table->header);
    for (const auto& row : table->rows) line(row);
  } else {
    out << envelope.at("payload").dump(2) << "\n";
  }
  for (const auto& n : envelope.at("certification")) out << "note: " << n.get<std::string>() << "\n";
}

int exit_for(ErrorCode code) { return code == ErrorCode::Parse ? 2 : 3; }

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kac-Moody root data, Hecke paths and rank-1 masure oracles", "masurelab"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string format = "json";
  std::optional<std::string> cache_flag;
  bool no_cache = false;

  struct Registered {
    const Command* cmd;
    CLI::App* sub;
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
    std::string mode;
  };
  std::map<std::string, Registered> reg;
  for (const auto& cmd : commands()) {
    auto& r = reg[cmd.name];
    r.cmd = &cmd;
    r.sub = app.add_subcommand(cmd.name, cmd.help);
    r.sub->add_option("--format", format, "json, csv or pretty")->check(CLI::IsMember({"json", "csv", "pretty"}));
    r.sub->add_option_function<std::string>("--cache-dir", [&](const std::string& s) { cache_flag = s; }, "cache directory");
    r.sub->add_flag("--no-cache", no_cache, "bypass the result cache");
    if (cmd.has_mode) r.sub->add_option("mode", r.mode, "inclusion, invariance or equality")->required();
    for (const char* name : cmd.options) r.options[name] = r.sub->add_option(std::string("--") + name, r.values[name]);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }

  const Registered* chosen = nullptr;
  for (const auto& [name, r] : reg)
    if (r.sub->parsed()) chosen = &r;
  MASURELAB_ASSERT(chosen != nullptr);
  const std::string command = chosen->cmd->name;

  auto refuse = [&](const std::string& code, const std::string& message, int rc) {
    json e{{"command", command}, {"error", json{{"code", code}, {"message", message}}}};
    out << e.dump(2) << "\n";
    err << "masurelab " << command << ": " << message << "\n";
    return rc;
  };

  try {
    Config cfg;
    cfg.command = command;
    cfg.mode = chosen->mode;
    for (const auto& [name, opt] : chosen->options)
      if (opt->count() > 0) cfg.options[name] = chosen->values.at(name);
    if (cfg.has("matrix") && cfg.has("datum-file")) throw UsageError("give --matrix or --datum-file, not both");
    if (cfg.has("matrix")) cfg.datum = json{{"matrix", parse_json_text(cfg.str("matrix"), "--matrix")}};
    if (cfg.has("datum-file")) cfg.datum = parse_json_text(read_file(cfg.str("datum-file")), cfg.str("datum-file"));
    cfg.options.erase("matrix");
    cfg.options.erase("datum-file");
    if (cfg.has("path") && cfg.has("path-file")) throw UsageError("give --path or --path-file, not both");
    if (cfg.has("path")) cfg.path = parse_json_text(cfg.str("path"), "--path");
    if (cfg.has("path-file")) cfg.path = parse_json_text(read_file(cfg.str("path-file")), cfg.str("path-file"));
    cfg.options.erase("path");
    cfg.options.erase("path-file");

    std::string hash = sha256_hex(cfg.canonical().dump() + "\nmasurelab " + kVersion);
    fs::path cache_file = cache_dir(cache_flag) / (hash + ".json");

    json envelope;
    std::optional<Table> table;
    int rc = 0;
    bool hit = false;
    if (!no_cache && fs::exists(cache_file)) {
      try {
        json stored = json::parse(read_file(cache_file.string()));
        envelope = stored.at("envelope");
        rc = stored.at("exit").get<int>();
        if (stored.contains("table")) table = table_from_json(stored.at("table"));
        hit = true;
      } catch (const std::exception&) {
        hit = false;
      }
    }
    if (!hit) {
      Outcome o = chosen->cmd->run(cfg);
      envelope = json{{"command", command}, {"config_hash", hash}, {"timestamp", timestamp()},
                      {"payload", o.payload}, {"certification", o.certification}};
      table = o.table;
      rc = o.exit;
      if (!no_cache) {
        json stored{{"exit", rc}, {"envelope", envelope}};
        if (table) stored["table"] = table_to_json(*table);
        std::error_code ec;
        fs::create_directories(cache_file.parent_path(), ec);
        std::ofstream f(cache_file, std::ios::binary);
        if (f) f << stored.dump();
        if (ec || !f) err << "masurelab: warning: could not write cache entry " << cache_file.string() << "\n";
      }
    }
    if (format == "csv" && !table) throw UsageError("csv output is only available for tabular commands");
    render(out, format, envelope, table);
    return rc;
  } catch (const UsageError& e) {
    err << "masurelab " << command << ": " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    return refuse(std::string(code_name(e.code())), e.what(), exit_for(e.code()));
  } catch (const json::exception& e) {
    err << "masurelab " << command << ": malformed JSON input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "masurelab " << command << ": internal error: " << e.what() << "\n";
    return 70;
  }
}

}  // namespace masurelab::cli
