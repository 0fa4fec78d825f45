#include "tug/homog.hpp"

#include <stdexcept>

#include "tug/lp.hpp"

namespace tug {

namespace {

RationalVector unit(std::size_t dim, std::size_t coord) {
  RationalVector e(dim);
  e[coord] = Rational(1);
  return e;
}

void check_population(const CommunityGame& g, const RationalVector& x) {
  if (static_cast<int>(x.size()) != g.num_types) {
    throw std::invalid_argument("population: length differs from type count");
  }
  for (const Rational& xi : x) {
    if (xi.sign() < 0) throw std::invalid_argument("population: negative entry");
  }
}

std::vector<AssignmentColumn> supported_columns(const CommunityGame& g, Coalition support) {
  std::vector<AssignmentColumn> cols;
  for (std::size_t k = 0; k < g.communities.size(); ++k) {
    if ((g.communities[k].members & ~support) != 0) continue;
    for (std::size_t t = 0; t < g.communities[k].profiles.size(); ++t) {
      cols.push_back({k, t});
    }
  }
  return cols;
}

LinearProgram gains_lp(const CommunityGame& g, const RationalVector& x,
                       const std::vector<AssignmentColumn>& cols) {
  RationalVector obj;
  obj.reserve(cols.size());
  for (const AssignmentColumn& c : cols) obj.push_back(g.profile_total(c.community, c.profile));
  LinearProgram lp(Sense::kMaximize, obj);
  for (int i : coalition_members(population_support(x))) {
    RationalVector row(cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (g.communities[cols[j].community].members & (Coalition{1} << i)) row[j] = Rational(1);
    }
    lp.add_constraint(std::move(row), Relation::kEq, x[i]);
  }
  return lp;
}

}  // namespace

PayoffFace::PayoffFace(Polytope poly, int num_types, Coalition support, Rational value)
    : poly_(std::move(poly)), num_types_(num_types), support_(support), value_(std::move(value)) {}

Probe PayoffFace::min_payoff(int type) const {
  return poly_.minimize(unit(poly_.dim(), static_cast<std::size_t>(type)));
}

Probe PayoffFace::max_payoff(int type) const {
  return poly_.maximize(unit(poly_.dim(), static_cast<std::size_t>(type)));
}

bool PayoffFace::singleton_on_support() const {
  for (int i : coalition_members(support_)) {
    Probe lo = min_payoff(i);
    Probe hi = max_payoff(i);
    if (!lo.optimal() || !hi.optimal() || lo.value != hi.value) return false;
  }
  return true;
}

std::optional<RationalVector> PayoffFace::gradient() const {
  RationalVector grad(static_cast<std::size_t>(num_types_));
  for (int i : coalition_members(support_)) {
    Probe lo = min_payoff(i);
    Probe hi = max_payoff(i);
    if (!lo.optimal() || !hi.optimal() || lo.value != hi.value) return std::nullopt;
    grad[static_cast<std::size_t>(i)] = lo.value;
  }
  return grad;
}

RationalVector PayoffFace::lex_min_payoffs() const {
  Polytope work = poly_;
  RationalVector r(static_cast<std::size_t>(num_types_));
  for (int j = 0; j < num_types_; ++j) {
    const RationalVector e = unit(work.dim(), static_cast<std::size_t>(j));
    Probe p = work.minimize(e);
    if (!p.optimal()) throw SolverInternalError("payoff face: coordinate unbounded below");
    r[static_cast<std::size_t>(j)] = p.value;
    work.add(e, Relation::kEq, p.value);
  }
  return r;
}

Probe PayoffFace::min_functional(const RationalVector& d) const {
  if (d.size() != static_cast<std::size_t>(num_types_)) {
    throw std::invalid_argument("min_functional: direction length");
  }
  RationalVector f(poly_.dim());
  for (int i = 0; i < num_types_; ++i) f[static_cast<std::size_t>(i)] = d[static_cast<std::size_t>(i)];
  return poly_.minimize(f);
}

CommunityGains::CommunityGains(CommunityGame game) : game_(std::move(game)) {}

Rational CommunityGains::value(const RationalVector& x) const {
  check_population(game_, x);
  const Coalition support = population_support(x);
  if (support == 0) return Rational();
  const std::vector<AssignmentColumn> cols = supported_columns(game_, support);
  const LpSolution sol = solve(gains_lp(game_, x, cols));
  if (sol.status != LpStatus::kOptimal) {
    throw std::invalid_argument("gains program infeasible: supported singleton missing");
  }
  return sol.objective_value;
}

PayoffFace CommunityGains::payoff_face(const RationalVector& x) const {
  const Rational f = value(x);
  const std::size_t n = static_cast<std::size_t>(game_.num_types);
  Polytope poly(n);
  // Dual feasibility rows for every community profile (not only those inside
  // the support: the extra rows touch off-support coordinates only through
  // their own lower bounds, so the support projection is unchanged and
  // off-support marginals stay finite).
  for (std::size_t k = 0; k < game_.communities.size(); ++k) {
    RationalVector row(n);
    for (int i : coalition_members(game_.communities[k].members)) {
      row[static_cast<std::size_t>(i)] = Rational(1);
    }
    for (std::size_t t = 0; t < game_.communities[k].profiles.size(); ++t) {
      poly.add(row, Relation::kGe, game_.profile_total(k, t));
    }
  }
  RationalVector xs(x);
  poly.add(std::move(xs), Relation::kEq, f);
  return PayoffFace(std::move(poly), game_.num_types, population_support(x), f);
}

AssignmentFace::AssignmentFace(Polytope poly, std::vector<AssignmentColumn> columns,
                               Rational value)
    : poly_(std::move(poly)), columns_(std::move(columns)), value_(std::move(value)) {}

RationalVector AssignmentFace::lex_min() const {
  auto point = poly_.lex_min();
  if (!point) throw SolverInternalError("assignment face empty");
  return *point;
}

Probe AssignmentFace::maximize(const RationalVector& column_functional) const {
  return poly_.maximize(column_functional);
}

bool AssignmentFace::singleton() const {
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    auto [lo, hi] = poly_.coordinate_range(j);
    if (!lo.optimal() || !hi.optimal() || lo.value != hi.value) return false;
  }
  return true;
}

AssignmentFace assignment_face(const CommunityGame& g, const RationalVector& x) {
  check_population(g, x);
  const Coalition support = population_support(x);
  if (support == 0) throw std::invalid_argument("assignment_face: zero population");
  const std::vector<AssignmentColumn> cols = supported_columns(g, support);
  const Rational f = gains_value(g, x);
  Polytope poly(cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    poly.add(unit(cols.size(), j), Relation::kGe, Rational());
  }
  for (int i : coalition_members(support)) {
    RationalVector row(cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (g.communities[cols[j].community].members & (Coalition{1} << i)) row[j] = Rational(1);
    }
    poly.add(std::move(row), Relation::kEq, x[i]);
  }
  RationalVector totals;
  totals.reserve(cols.size());
  for (const AssignmentColumn& c : cols) totals.push_back(g.profile_total(c.community, c.profile));
  poly.add(std::move(totals), Relation::kEq, f);
  return AssignmentFace(std::move(poly), cols, f);
}

Rational gains_value(const CommunityGame& g, const RationalVector& x) {
  return CommunityGains(g).value(x);
}

PayoffFace subdifferential(const CommunityGame& g, const RationalVector& x) {
  return CommunityGains(g).payoff_face(x);
}

RationalVector direct_utilities(const CommunityGame& g, const RationalVector& x,
                                const std::vector<AssignmentColumn>& columns,
                                const RationalVector& y) {
  RationalVector d(x.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    const Community& c = g.communities[columns[j].community];
    const std::vector<int> members = coalition_members(c.members);
    const CommunityProfile& prof = c.profiles[columns[j].profile];
    for (std::size_t m = 0; m < members.size(); ++m) {
      d[static_cast<std::size_t>(members[m])] += y[j] * prof.member_utilities[m];
    }
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].sign() > 0) d[i] /= x[i];
  }
  return d;
}

SaddlePoint saddle_point(const CommunityGame& g, const RationalVector& x) {
  SaddlePoint sp;
  const PayoffFace face = subdifferential(g, x);
  sp.value = face.value();
  sp.payoffs = face.lex_min_payoffs();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) sp.payoffs[i] = Rational();
  }
  const AssignmentFace aface = assignment_face(g, x);
  sp.columns = aface.columns();
  sp.assignment = aface.lex_min();
  const RationalVector d = direct_utilities(g, x, sp.columns, sp.assignment);
  sp.transfers.assign(x.size(), Rational());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].sign() > 0) sp.transfers[i] = d[i] - sp.payoffs[i];
  }
  return sp;
}

SaddleValue saddle_value_check(const CommunityGame& g, const RationalVector& x) {
  const SaddlePoint sp = saddle_point(g, x);
  SaddleValue out;
  out.value = sp.value;
  out.payoff_identity = dot(sp.payoffs, x) == sp.value;
  Rational total_direct;
  const RationalVector d = direct_utilities(g, x, sp.columns, sp.assignment);
  for (std::size_t i = 0; i < x.size(); ++i) total_direct += d[i] * x[i];
  out.assignment_identity = total_direct == sp.value;
  out.transfers_balance = dot(sp.transfers, x).is_zero();
  return out;
}

namespace {

RationalVector combine(const RationalVector& x, long k, const RationalVector& d) {
  RationalVector y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = Rational(k) * x[i] + d[i];
  return y;
}

}  // namespace

Rational discrete_difference(const GainsSystem& gains, const RationalVector& x,
                             const RationalVector& d, long k) {
  if (k < 1) throw std::invalid_argument("discrete_difference: k >= 1 required");
  const RationalVector shifted = combine(x, k, d);
  for (const Rational& v : shifted) {
    if (v.sign() < 0) throw std::domain_error("discrete_difference: kx + d leaves the domain");
  }
  return gains.value(shifted) - gains.value(combine(x, k, RationalVector(x.size())));
}

// Both gaps weight each type's per-unit marginal by its population mass, so
// the sum pays every unit its marginal. At x = 1 this is the plain sum of
// marginals; at general x the weighting is what keeps the gap nonnegative
// and zero exactly on singleton faces.
Rational discrete_euler_gap(const GainsSystem& gains, const RationalVector& x, long k) {
  if (k < 1) throw std::invalid_argument("discrete_euler_gap: k >= 1 required");
  const Coalition support = population_support(x);
  if (support == 0) throw std::invalid_argument("discrete_euler_gap: zero population");
  const RationalVector kx = combine(x, k, RationalVector(x.size()));
  const Rational f_kx = gains.value(kx);
  Rational gap = -gains.value(x);
  for (int i : coalition_members(support)) {
    RationalVector less = kx;
    less[static_cast<std::size_t>(i)] -= Rational(1);
    if (less[static_cast<std::size_t>(i)].sign() < 0) {
      throw std::domain_error("discrete_euler_gap: kx - e_i leaves the domain");
    }
    gap += x[static_cast<std::size_t>(i)] * (f_kx - gains.value(less));
  }
  return gap;
}

Rational infinitesimal_euler_gap(const GainsSystem& gains, const RationalVector& x) {
  const Coalition support = population_support(x);
  if (support == 0) throw std::invalid_argument("infinitesimal_euler_gap: zero population");
  const PayoffFace face = gains.payoff_face(x);
  Rational gap = -face.value();
  for (int i : coalition_members(support)) {
    Probe hi = face.max_payoff(i);
    if (!hi.optimal()) throw SolverInternalError("payoff unbounded on support");
    gap += x[static_cast<std::size_t>(i)] * hi.value;
  }
  return gap;
}

Differentiability is_differentiable(const GainsSystem& gains, const RationalVector& x) {
  const PayoffFace face = gains.payoff_face(x);
  Differentiability out;
  out.gradient = face.gradient();
  out.differentiable = out.gradient.has_value();
  return out;
}

bool one_sided_euler_test(const GainsSystem& gains, const RationalVector& x) {
  const Coalition support = population_support(x);
  if (support == 0) throw std::invalid_argument("one_sided_euler_test: zero population");
  const PayoffFace face = gains.payoff_face(x);
  Rational lhs;
  for (int i : coalition_members(support)) {
    Probe hi = face.max_payoff(i);
    if (!hi.optimal()) throw SolverInternalError("payoff unbounded on support");
    lhs += x[static_cast<std::size_t>(i)] * hi.value;
  }
  return lhs == face.value();
}

DirectionalDerivative directional_derivative(const GainsSystem& gains, const RationalVector& x,
                                             const RationalVector& d) {
  DirectionalDerivative out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero() && d[i].sign() < 0) {
      out.status = DirectionalDerivative::Status::kDomainExit;
      return out;
    }
  }
  const PayoffFace face = gains.payoff_face(x);
  Probe p = face.min_functional(d);
  if (!p.optimal()) {
    out.status = DirectionalDerivative::Status::kUnbounded;
    return out;
  }
  out.value = p.value;
  return out;
}

GapSweep gap_sweep(const GainsSystem& gains, const RationalVector& x, long k_max) {
  GapSweep sweep;
  for (long k = 1; k <= k_max; ++k) {
    sweep.discrete.push_back(discrete_euler_gap(gains, x, k));
  }
  sweep.infinitesimal = infinitesimal_euler_gap(gains, x);
  for (long k = 1; k <= k_max; ++k) {
    if (sweep.discrete[static_cast<std::size_t>(k - 1)] == sweep.infinitesimal) {
      sweep.stabilization_k = k;
      break;
    }
  }
  return sweep;
}

Rational discrete_euler_gap(const CommunityGame& g, const RationalVector& x, long k) {
  return discrete_euler_gap(CommunityGains(g), x, k);
}

Rational infinitesimal_euler_gap(const CommunityGame& g, const RationalVector& x) {
  return infinitesimal_euler_gap(CommunityGains(g), x);
}

Differentiability is_differentiable(const CommunityGame& g, const RationalVector& x) {
  return is_differentiable(CommunityGains(g), x);
}

bool one_sided_euler_test(const CommunityGame& g, const RationalVector& x) {
  return one_sided_euler_test(CommunityGains(g), x);
}

DirectionalDerivative directional_derivative(const CommunityGame& g, const RationalVector& x,
                                             const RationalVector& d) {
  return directional_derivative(CommunityGains(g), x, d);
}

GapSweep gap_sweep(const CommunityGame& g, const RationalVector& x, long k_max) {
  return gap_sweep(CommunityGains(g), x, k_max);
}

}  // namespace tug
