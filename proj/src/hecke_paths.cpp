#include "masurelab/hecke_paths.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "masurelab/error.hpp"

namespace masurelab {

RatVec LambdaPath::position(const Rational& t) const {
  RatVec p = start;
  for (std::size_t k = 0; k < directions.size(); ++k) {
    if (t <= breakpoints[k]) break;
    Rational end = t < breakpoints[k + 1] ? t : breakpoints[k + 1];
    axpy(end - breakpoints[k], directions[k], p);
  }
  return p;
}

RatVec LambdaPath::endpoint() const { return position(Rational(1)); }

void check_lambda_path(const RootGeneratingSystem& sys, const LambdaPath& path) {
  std::size_t n = sys.ambient_rank();
  auto bad = [](const std::string& why) { throw Error(ErrorCode::InvalidPath, why); };
  if (path.shape.size() != n || path.start.size() != n) bad("shape or start has wrong arity");
  if (!sys.is_dominant(path.shape)) bad("shape " + to_string(path.shape) + " is not dominant");
  if (path.directions.empty()) bad("path has no segments");
  if (path.breakpoints.size() != path.directions.size() + 1) bad("expected one more breakpoint than segments");
  if (path.witnesses.size() != path.directions.size()) bad("expected one witness per segment");
  if (path.breakpoints.front() != 0 || path.breakpoints.back() != 1) bad("breakpoints must run from 0 to 1");
  for (std::size_t k = 0; k + 1 < path.breakpoints.size(); ++k)
    if (!(path.breakpoints[k] < path.breakpoints[k + 1])) bad("breakpoints must increase strictly");
  for (std::size_t k = 0; k < path.directions.size(); ++k) {
    if (path.directions[k].size() != n) bad("direction has wrong arity");
    auto w = WeylElement::from_word(sys, path.witnesses[k]);
    if (w.apply(path.shape) != path.directions[k])
      bad("witness of segment " + std::to_string(k) + " does not map the shape to its direction");
  }
}

LambdaPath normal_form(const LambdaPath& path) {
  LambdaPath out;
  out.shape = path.shape;
  out.start = path.start;
  out.breakpoints.push_back(path.breakpoints.front());
  for (std::size_t k = 0; k < path.directions.size(); ++k) {
    if (!out.directions.empty() && out.directions.back() == path.directions[k]) {
      out.breakpoints.back() = path.breakpoints[k + 1];
      continue;
    }
    out.directions.push_back(path.directions[k]);
    out.witnesses.push_back(path.witnesses[k]);
    out.breakpoints.push_back(path.breakpoints[k + 1]);
  }
  return out;
}

LambdaPath mirror(const LambdaPath& path) {
  LambdaPath out;
  out.shape = path.shape;
  out.start = negate(path.endpoint());
  for (auto it = path.breakpoints.rbegin(); it != path.breakpoints.rend(); ++it) out.breakpoints.push_back(1 - *it);
  out.directions.assign(path.directions.rbegin(), path.directions.rend());
  out.witnesses.assign(path.witnesses.rbegin(), path.witnesses.rend());
  return out;
}

const char* status_name(HeckeStatus s) {
  switch (s) {
    case HeckeStatus::Valid: return "valid";
    case HeckeStatus::Invalid: return "invalid";
    case HeckeStatus::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

Integer denominator_lcm(const RatVec& v) {
  Integer d = 1;
  for (const auto& x : v) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
  return d;
}

struct ChainSearch {
  bool found = false;
  HeckeChain chain;
};

// Breadth-first search for a chain from `from` to `to` at the point p using `roots`.
ChainSearch search_chain(const RootGeneratingSystem& sys, const std::vector<RealRoot>& roots, const RatVec& p,
                         const Rational& t, const RatVec& from, const RatVec& to) {
  ChainSearch res;
  res.chain.t = t;
  std::vector<const RealRoot*> usable;
  for (const auto& r : roots)
    if (is_integer(r.evaluate(sys, p))) usable.push_back(&r);

  struct Parent {
    RatVec prev;
    const RealRoot* root;
  };
  std::map<RatVec, std::optional<Parent>, RatVecLess> seen;
  std::deque<RatVec> queue;
  seen.emplace(from, std::nullopt);
  queue.push_back(from);
  while (!queue.empty()) {
    RatVec cur = queue.front();
    queue.pop_front();
    if (cur == to) break;
    for (const RealRoot* r : usable) {
      Rational b = r->evaluate(sys, cur);
      if (sgn(b) >= 0) continue;
      RatVec next = cur;
      axpy(-b, r->coroot_vector(sys), next);
      if (seen.count(next)) continue;
      if (!sys.qvee_leq(next, to, Cone::Real)) continue;
      seen.emplace(next, Parent{cur, r});
      queue.push_back(next);
    }
  }
  if (!seen.count(to)) return res;
  res.found = true;
  std::vector<RatVec> xis{to};
  std::vector<RealRoot> betas;
  RatVec cur = to;
  while (seen.at(cur)) {
    const auto& par = *seen.at(cur);
    betas.push_back(*par.root);
    xis.push_back(par.prev);
    cur = par.prev;
  }
  std::reverse(xis.begin(), xis.end());
  std::reverse(betas.begin(), betas.end());
  res.chain.xis = std::move(xis);
  res.chain.betas = std::move(betas);
  return res;
}

}  // namespace

bool check_chain(const RootGeneratingSystem& sys, const LambdaPath& path, const HeckeChain& chain) {
  if (chain.xis.size() != chain.betas.size() + 1) return false;
  auto it = std::find(path.breakpoints.begin(), path.breakpoints.end(), chain.t);
  if (it == path.breakpoints.end() || it == path.breakpoints.begin() || it + 1 == path.breakpoints.end())
    return false;
  std::size_t k = static_cast<std::size_t>(it - path.breakpoints.begin());
  if (chain.xis.front() != path.directions[k - 1] || chain.xis.back() != path.directions[k]) return false;
  RatVec p = path.position(chain.t);
  for (std::size_t i = 0; i < chain.betas.size(); ++i) {
    const auto& beta = chain.betas[i];
    bool positive = true;
    for (auto x : beta.form) positive = positive && x >= 0;
    if (!positive || !beta.positive) return false;
    Rational b = beta.evaluate(sys, chain.xis[i]);
    if (sgn(b) >= 0) return false;
    if (!is_integer(beta.evaluate(sys, p))) return false;
    if (reflect(sys, beta, chain.xis[i]) != chain.xis[i + 1]) return false;
  }
  return true;
}

HeckeValidation validate_hecke(const RootGeneratingSystem& sys, const LambdaPath& path,
                               std::int64_t root_height_cutoff) {
  if (root_height_cutoff < 1) throw Error(ErrorCode::InvalidArgument, "root height cutoff must be positive");
  check_lambda_path(sys, path);
  HeckeValidation res;
  Integer den = denominator_lcm(sys.alpha_values(path.shape));
  auto roots = real_roots_up_to_height(sys, root_height_cutoff);

  for (std::size_t k = 1; k + 1 < path.breakpoints.size(); ++k) {
    const Rational& t = path.breakpoints[k];
    const RatVec& from = path.directions[k - 1];
    const RatVec& to = path.directions[k];
    if (from == to) {
      res.certificate.chains.push_back(HeckeChain{t, {from}, {}});
      continue;
    }
    auto gap = sys.qvee_decompose(sub(to, from));
    if (!gap || !all_nonnegative(*gap)) {
      res.status = HeckeStatus::Invalid;
      res.breakpoint = k;
      res.reason = "right derivative is not above the left one in the rational dominance order";
      return res;
    }
    RatVec p = path.position(t);
    std::int64_t coroot_cap = to_int64(floor(sum(*gap) * Rational(den)));
    std::vector<RealRoot> usable;
    for (const auto& r : roots)
      if (r.coroot_height() <= coroot_cap) usable.push_back(r);
    auto search = search_chain(sys, usable, p, t, from, to);
    if (search.found) {
      res.certificate.chains.push_back(std::move(search.chain));
      continue;
    }
    res.breakpoint = k;
    // The search is exhaustive when every root that could take part is in the pool.
    bool exhaustive = true;
    for (const auto& r : real_roots_up_to_coroot_height(sys, coroot_cap))
      if (r.height() > root_height_cutoff) {
        exhaustive = false;
        break;
      }
    if (exhaustive) {
      res.status = HeckeStatus::Invalid;
      res.reason = "no chain of positive folds at t = " + to_string(t) + " connects the two derivatives";
    } else {
      res.status = HeckeStatus::Inconclusive;
      res.reason = "no chain found at t = " + to_string(t) + " with roots of height <= " +
                   std::to_string(root_height_cutoff);
    }
    return res;
  }
  return res;
}

std::int64_t default_denominator(const RootGeneratingSystem& sys, const RatVec& shape) {
  RatVec a = sys.alpha_values(shape);
  Integer den = denominator_lcm(a);
  std::int64_t m = std::max<std::int64_t>(1, to_int64(ceil(2 * sum(a))));
  m = std::min<std::int64_t>(m, 40);
  std::int64_t l = 1;
  for (std::int64_t i = 2; i <= m; ++i) l = std::lcm(l, i);
  return to_int64(Integer(den * Integer(static_cast<long>(l))));
}

namespace {

struct Enumerator {
  const RootGeneratingSystem& sys;
  RatVec shape;
  std::optional<RatVec> end;
  std::optional<RatVec> mu_coords;  // target deficit over the simple coroots
  Rational denominator;
  std::vector<RealRoot> roots;
  std::map<RatVec, Word, RatVecLess> directions;
  std::size_t max_paths;
  HeckeEnumeration out;

  LambdaPath current;
  HeckeCertificate cert;
  RatVec partial;  // accumulated deficit coordinates

  RatVec gap_coords(const RatVec& xi) const { return sys.qvee_coords(sub(shape, xi)); }

  bool within_target(const RatVec& coords) const {
    if (!mu_coords) return true;
    return leq_componentwise(coords, *mu_coords);
  }

  // Event times in (t, 1) where a root negative on xi is integral along the segment.
  std::vector<Rational> events(const Rational& t, const RatVec& p, const RatVec& xi) {
    std::set<Rational> times;
    for (const auto& r : roots) {
      Rational b = r.evaluate(sys, xi);
      if (sgn(b) >= 0) continue;
      Rational v = r.evaluate(sys, p);
      Rational speed = -b;
      // beta(p + u xi) = v - u speed hits c < v at u = (v - c) / speed.
      Integer c = ceil(v) - 1;
      while (true) {
        Rational s = t + (v - Rational(c)) / speed;
        if (s >= 1) break;
        times.insert(s);
        c -= 1;
      }
    }
    std::vector<Rational> out_times;
    for (const auto& s : times) {
      Rational scaled = s * denominator;
      if (!is_integer(scaled)) {
        out.truncated = true;
        continue;
      }
      out_times.push_back(s);
    }
    return out_times;
  }

  // All directions reachable from xi by positive folds at p, with their chains.
  std::vector<std::pair<RatVec, HeckeChain>> folds(const Rational& t, const RatVec& p, const RatVec& xi) {
    std::vector<const RealRoot*> usable;
    for (const auto& r : roots)
      if (is_integer(r.evaluate(sys, p))) usable.push_back(&r);
    struct Parent {
      RatVec prev;
      const RealRoot* root;
    };
    std::map<RatVec, std::optional<Parent>, RatVecLess> seen;
    std::deque<RatVec> queue;
    seen.emplace(xi, std::nullopt);
    queue.push_back(xi);
    while (!queue.empty()) {
      RatVec cur = queue.front();
      queue.pop_front();
      for (const RealRoot* r : usable) {
        Rational b = r->evaluate(sys, cur);
        if (sgn(b) >= 0) continue;
        RatVec next = cur;
        axpy(-b, r->coroot_vector(sys), next);
        if (seen.count(next)) continue;
        seen.emplace(next, Parent{cur, r});
        queue.push_back(next);
      }
    }
    std::vector<std::pair<RatVec, HeckeChain>> res;
    for (const auto& [v, par] : seen) {
      if (!par || !directions.count(v)) continue;
      HeckeChain chain;
      chain.t = t;
      RatVec cur = v;
      chain.xis.push_back(v);
      while (seen.at(cur)) {
        const auto& pp = *seen.at(cur);
        chain.betas.push_back(*pp.root);
        chain.xis.push_back(pp.prev);
        cur = pp.prev;
      }
      std::reverse(chain.xis.begin(), chain.xis.end());
      std::reverse(chain.betas.begin(), chain.betas.end());
      res.emplace_back(v, std::move(chain));
    }
    return res;
  }

  void emit() {
    if (out.paths.size() >= max_paths)
      throw Error(ErrorCode::ResourceLimit, "more than " + std::to_string(max_paths) + " paths");
    out.paths.emplace_back(current, cert);
  }

  void explore(const Rational& t, const RatVec& p, const RatVec& xi) {
    RatVec gap = gap_coords(xi);
    // Straight to the end.
    {
      RatVec finish = p;
      axpy(1 - t, xi, finish);
      if (!end || finish == *end) {
        current.breakpoints.push_back(Rational(1));
        emit();
        current.breakpoints.pop_back();
      }
    }
    for (const auto& s : events(t, p, xi)) {
      RatVec next_partial = partial;
      axpy(s - t, gap, next_partial);
      if (!within_target(next_partial)) break;
      RatVec q = p;
      axpy(s - t, xi, q);
      for (auto& [next, chain] : folds(s, q, xi)) {
        RatVec saved = partial;
        partial = next_partial;
        current.breakpoints.push_back(s);
        current.directions.push_back(next);
        current.witnesses.push_back(directions.at(next));
        cert.chains.push_back(chain);
        explore(s, q, next);
        cert.chains.pop_back();
        current.witnesses.pop_back();
        current.directions.pop_back();
        current.breakpoints.pop_back();
        partial = saved;
      }
    }
  }
};

}  // namespace

HeckeEnumeration enumerate_hecke(const RootGeneratingSystem& sys, const RatVec& shape, const RatVec& start,
                                 const std::optional<RatVec>& end, const EnumerationCutoffs& cutoffs) {
  if (shape.size() != sys.ambient_rank() || start.size() != sys.ambient_rank() ||
      (end && end->size() != sys.ambient_rank()))
    throw Error(ErrorCode::InvalidArgument, "vector has wrong arity");
  if (!sys.is_dominant(shape)) throw Error(ErrorCode::InvalidArgument, "shape must be dominant");

  Enumerator en{sys, shape, end, std::nullopt, Rational(1), {}, {}, cutoffs.max_paths, {}, {}, {}, {}};
  std::int64_t d = cutoffs.denominator ? *cutoffs.denominator : default_denominator(sys, shape);
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "breakpoint denominator must be positive");
  en.denominator = Rational(static_cast<long>(d));
  en.out.denominator = d;
  en.out.notes.push_back("breakpoints restricted to (1/" + std::to_string(d) + ")Z");

  Rational max_height;
  if (end) {
    RatVec mu = sub(add(start, shape), *end);
    auto coords = sys.qvee_decompose(mu);
    if (!coords || !all_nonnegative(*coords)) {
      en.out.notes.push_back("deficit outside the rational positive coroot cone: no Hecke path");
      return en.out;
    }
    en.mu_coords = coords;
    // Every segment lasts at least 1/D, so (shape - xi) <= D mu coordinatewise.
    max_height = sum(*coords) * en.denominator;
    en.out.notes.push_back("directions limited to shape - xi <= " + std::to_string(d) + " * deficit");
  } else if (cutoffs.direction_height) {
    max_height = *cutoffs.direction_height;
    en.out.notes.push_back("directions limited to h(shape - xi) <= " + to_string(max_height));
  } else if (sys.matrix().is_finite_type()) {
    max_height = Rational(-1);
    en.out.notes.push_back("finite type: full orbit of the shape");
  } else {
    throw Error(ErrorCode::InvalidArgument, "a direction height cutoff is required without an end point");
  }

  std::vector<OrbitElement> orbit;
  if (sgn(max_height) < 0) {
    // Finite orbits: grow the height bound until the orbit closes.
    Rational h = 1;
    while (true) {
      orbit = lower_orbit(sys, shape, h, 100000);
      auto bigger = lower_orbit(sys, shape, 2 * h + 1, 100000);
      if (bigger.size() == orbit.size()) break;
      h = 2 * h + 1;
    }
  } else {
    orbit = lower_orbit(sys, shape, max_height, 100000);
  }
  Rational hmax = 0;
  for (const auto& el : orbit) {
    RatVec gap = sys.qvee_coords(sub(shape, el.vector));
    if (en.mu_coords && !leq_componentwise(gap, scale(en.denominator, *en.mu_coords))) continue;
    en.directions.emplace(el.vector, el.word);
    hmax = std::max(hmax, sum(gap));
  }

  Integer den = denominator_lcm(sys.alpha_values(shape));
  std::int64_t coroot_cap = to_int64(floor(hmax * Rational(den)));
  auto pool = real_roots_up_to_coroot_height(sys, coroot_cap);
  for (auto& r : pool) {
    if (cutoffs.root_height > 0 && r.height() > cutoffs.root_height) {
      en.out.truncated = true;
      continue;
    }
    en.roots.push_back(r);
  }
  en.out.root_height = 0;
  for (const auto& r : en.roots) en.out.root_height = std::max(en.out.root_height, r.height());
  en.out.notes.push_back("fold roots: positive real roots with coroot height <= " + std::to_string(coroot_cap));

  en.partial = RatVec(sys.rank(), Rational(0));
  for (const auto& [xi, word] : en.directions) {
    en.current = LambdaPath{shape, start, {Rational(0)}, {xi}, {word}};
    en.cert = {};
    en.explore(Rational(0), start, xi);
  }
  if (en.out.truncated) en.out.notes.push_back("CutoffTooSmall: some fold times or roots fell outside the cutoffs");
  return en.out;
}

Deficit deficit(const RootGeneratingSystem& sys, const LambdaPath& path) {
  Deficit d;
  d.mu = sub(add(path.start, path.shape), path.endpoint());
  d.coords = sys.qvee_decompose(d.mu);
  d.in_real_cone = d.coords && all_nonnegative(*d.coords);
  return d;
}

std::optional<Rational> final_direction_time(const LambdaPath& path) {
  if (path.directions.empty() || path.directions.back() != path.shape) return std::nullopt;
  std::size_t k = path.directions.size() - 1;
  while (k > 0 && path.directions[k - 1] == path.shape) --k;
  return path.breakpoints[k];
}

bool dominance_monotonicity_check(const RootGeneratingSystem& sys, const LambdaPath& path) {
  for (std::size_t k = 0; k < path.directions.size(); ++k) {
    if (!sys.is_dominant(path.directions[k])) continue;
    for (std::size_t j = k + 1; j < path.directions.size(); ++j)
      if (path.directions[j] != path.directions[k]) return false;
    return true;
  }
  return true;
}

ShapeScale default_scale(const RatVec& shape) {
  ShapeScale s{Rational(1), shape};
  if (!is_integral(shape) || is_zero(shape)) return s;
  Integer g = 0;
  for (const auto& x : shape) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
  s.scale = Rational(g);
  s.nu = scale(1 / s.scale, shape);
  return s;
}

FinalTimeCheck final_time_check(const RootGeneratingSystem& sys, const LambdaPath& path, const ShapeScale& sc) {
  FinalTimeCheck c;
  auto d = deficit(sys, path);
  c.t_star = final_direction_time(path);
  if (!d.in_real_cone) {
    c.holds = false;
    return c;
  }
  Rational h = sum(*d.coords);
  c.bound = h / sc.scale;
  c.applies = sc.scale > h;
  if (c.applies) c.holds = c.t_star.has_value() && *c.t_star <= c.bound;
  return c;
}

RatVec sufficiently_dominant_bound(const RootGeneratingSystem& sys, const RatVec& mu, const RatVec& nu) {
  auto coords = sys.qvee_decompose(mu);
  if (!coords || !all_nonpositive(*coords))
    throw Error(ErrorCode::InvalidArgument, to_string(mu) + " is not in the negative coroot cone");
  if (!is_integral(nu) || !sys.is_strictly_dominant(nu))
    throw Error(ErrorCode::InvalidArgument, to_string(nu) + " is not a strictly dominant lattice vector");
  Rational h = -sum(*coords);
  return scale(h, sys.alpha_values(nu));
}

BoundingBall bounding_ball(const RootGeneratingSystem& sys, const MonoidBasis& basis, const IntVec& coefficients,
                           const RatVec& mu) {
  auto coords = sys.qvee_decompose(mu);
  if (!coords || !is_integral(*coords) || !all_nonpositive(*coords))
    throw Error(ErrorCode::InvalidArgument, to_string(mu) + " is not in the negative integer coroot cone");
  auto gens = basis.generators();
  if (coefficients.size() != gens.size()) throw Error(ErrorCode::InvalidArgument, "one coefficient per generator expected");
  for (auto c : coefficients)
    if (c < 0) throw Error(ErrorCode::InvalidArgument, "coefficients must be nonnegative");
  BoundingBall ball;
  ball.h_param = to_int64(-sum(*coords)) + 1;
  std::size_t n = sys.ambient_rank();
  ball.center.assign(n, 0);
  ball.shape.assign(n, 0);
  ball.shape_coefficients.assign(gens.size(), 0);
  ball.in_j.assign(gens.size(), false);
  for (std::size_t e = 0; e < gens.size(); ++e) {
    std::int64_t take = coefficients[e];
    if (coefficients[e] >= ball.h_param) {
      ball.in_j[e] = true;
      take = ball.h_param;
    }
    ball.shape_coefficients[e] = take;
    for (std::size_t c = 0; c < n; ++c) {
      ball.shape[c] += take * gens[e][c];
      ball.center[c] += (coefficients[e] - take) * gens[e][c];
    }
  }
  return ball;
}

}  // namespace masurelab
