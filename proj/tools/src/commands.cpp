#include "tug_cli/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "tug/charfn.hpp"
#include "tug/exchange.hpp"
#include "tug/game.hpp"
#include "tug/homog.hpp"
#include "tug/incentives.hpp"
#include "tug/io.hpp"
#include "tug/lp.hpp"
#include "tug/solutions.hpp"

namespace tug::cli {

namespace {

using nlohmann::ordered_json;

struct Options {
  std::string input;
  std::string out_path;
  std::string format = "json";
  std::string mode = "standard";
  std::string rule = "optimistic";
  std::string baseline;
  std::string x;
  long k = 1;
  long kmax = 5;
  std::string tol = "1/1000000000";
  long max_iter = 10000;
  std::string gamma0;
  bool damping = false;
  std::string payment = "marginal";
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

RationalVector parse_rationals(const std::string& s, const std::string& what) {
  RationalVector out;
  for (const std::string& part : split(s, ',')) {
    auto r = Rational::parse(part);
    if (!r) throw ParseError(what + ": not a rational: \"" + part + "\"");
    out.push_back(*r);
  }
  return out;
}

RationalVector population_from(const Options& opt, int n) {
  if (opt.x.empty()) return RationalVector(static_cast<std::size_t>(n), Rational(1));
  RationalVector x = parse_rationals(opt.x, "--x");
  const auto bad = validate_population(x, n);
  if (!bad.empty()) throw ParseError("--x: " + bad.front());
  return x;
}

CharFnMode mode_from(const Options& opt) {
  if (opt.mode == "standard") return CharFnMode::kStandard;
  if (opt.mode == "property-rights") return CharFnMode::kPropertyRights;
  throw ParseError("--mode: expected standard|property-rights");
}

OutsiderPolicy policy_from(const Options& opt) {
  OutsiderPolicy policy;
  if (opt.rule == "optimistic") {
    policy.rule = OutsiderRule::kOptimistic;
  } else if (opt.rule == "minimax") {
    policy.rule = OutsiderRule::kMinimax;
  } else if (opt.rule == "baseline") {
    policy.rule = OutsiderRule::kBaseline;
    for (const std::string& part : split(opt.baseline, ',')) {
      if (part.empty()) throw ParseError("--baseline: required with --rule baseline");
      policy.baseline.push_back(std::stoi(part));
    }
  } else {
    throw ParseError("--rule: expected optimistic|baseline|minimax");
  }
  return policy;
}

PaymentRule payment_from(const Options& opt) {
  if (opt.payment == "marginal") return PaymentRule::marginal(opt.k);
  if (opt.payment == "shapley-cover") return PaymentRule::shapley_of_cover();
  if (opt.payment == "core-lex-min") return PaymentRule::core_lex_min();
  throw ParseError("--payment: expected marginal|shapley-cover|core-lex-min");
}

GameFile load_input(const Options& opt, std::ostream& err) {
  GameFile file = parse_game_file(read_file(opt.input));
  const auto bad = validate_game_file(file);
  if (!bad.empty()) {
    for (const std::string& b : bad) err << opt.input << ": " << b << "\n";
    throw ParseError("input failed validation");
  }
  return file;
}

CoalitionGame coalition_input(const GameFile& file, const Options& opt) {
  switch (file.kind) {
    case GameFile::Kind::kCoalition:
      return *file.coalition;
    case GameFile::Kind::kNormalForm:
      return characteristic_function(*file.normal_form, mode_from(opt), policy_from(opt));
    default:
      throw ParseError("this command needs a coalition or normal_form input");
  }
}

CommunityGame community_input(const GameFile& file, const Options& opt) {
  switch (file.kind) {
    case GameFile::Kind::kCommunity:
      return *file.community;
    case GameFile::Kind::kCoalition:
      return coalition_to_community(*file.coalition);
    case GameFile::Kind::kNormalForm:
      return community_from_normal_form(*file.normal_form, mode_from(opt), policy_from(opt));
    default:
      throw ParseError("this command needs a community, coalition or normal_form input");
  }
}

// --- report building ---

ordered_json jvec(const RationalVector& v) {
  ordered_json a = ordered_json::array();
  for (const Rational& r : v) a.push_back(r.str());
  return a;
}

ordered_json jcoalition(Coalition s) {
  ordered_json a = ordered_json::array();
  for (int i : coalition_members(s)) a.push_back(i + 1);
  return a;
}

ordered_json jprobe(const Probe& p) {
  switch (p.status) {
    case LpStatus::kOptimal:
      return p.value.str();
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kInfeasible:
      return "infeasible";
  }
  return "?";
}

// --- rendering ---

bool is_rational_string(const ordered_json& j, Rational* out) {
  if (!j.is_string()) return false;
  auto r = Rational::parse(j.get<std::string>());
  if (!r) return false;
  *out = *r;
  return true;
}

std::string cell_text(const ordered_json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "-";
  return j.dump();
}

std::string approx_text(const ordered_json& j) {
  Rational r;
  if (!is_rational_string(j, &r) || r.is_integer()) return "";
  std::ostringstream os;
  os << "~" << r.approx();
  return os.str();
}

void render_aligned(const std::vector<std::vector<std::string>>& rows, std::ostream& os) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c >= width.size()) width.push_back(0);
      width[c] = std::max(width[c], row[c].size());
    }
  }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::string cell = row[c];
      cell.resize(width[c], ' ');
      line += cell;
      if (c + 1 < row.size()) line += "  ";
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << "\n";
  }
}

void render_table(const ordered_json& report, std::ostream& os);

void render_object_table(const std::string& key, const ordered_json& array, std::ostream& os) {
  std::vector<std::string> columns;
  for (const auto& [k, v] : array.front().items()) {
    (void)v;
    columns.push_back(k);
  }
  std::vector<std::vector<std::string>> rows;
  rows.push_back(columns);
  for (const ordered_json& item : array) {
    std::vector<std::string> row;
    for (const std::string& c : columns) {
      const ordered_json& cell = item.contains(c) ? item.at(c) : ordered_json();
      std::string text = cell.is_array() ? cell.dump() : cell_text(cell);
      const std::string approx = approx_text(cell);
      if (!approx.empty()) text += " (" + approx + ")";
      row.push_back(std::move(text));
    }
    rows.push_back(std::move(row));
  }
  os << key << ":\n";
  render_aligned(rows, os);
}

void render_table(const ordered_json& report, std::ostream& os) {
  for (const auto& [key, value] : report.items()) {
    if (value.is_array() && !value.empty() && value.front().is_object()) {
      render_object_table(key, value, os);
    } else if (value.is_array()) {
      os << key << ": " << value.dump() << "\n";
    } else if (value.is_object()) {
      os << key << ":\n";
      for (const auto& [k2, v2] : value.items()) {
        std::string text = v2.is_array() ? v2.dump() : cell_text(v2);
        const std::string approx = approx_text(v2);
        if (!approx.empty()) text += " (" + approx + ")";
        os << "  " << k2 << ": " << text << "\n";
      }
    } else {
      std::string text = cell_text(value);
      const std::string approx = approx_text(value);
      if (!approx.empty()) text += " (" + approx + ")";
      os << key << ": " << text << "\n";
    }
  }
}

void emit(const ordered_json& report, const Options& opt, std::ostream& out) {
  std::ostringstream body;
  if (opt.format == "json") {
    body << report.dump(2) << "\n";
  } else if (opt.format == "table") {
    render_table(report, body);
  } else if (opt.format == "csv") {
    if (!report.contains("rows")) throw ParseError("--format csv: only sweep commands emit CSV");
    body << "k,gap\n";
    for (const ordered_json& row : report.at("rows")) {
      body << row.at("k").get<long>() << "," << row.at("gap").get<std::string>() << "\n";
    }
    body << "inf," << report.at("infinitesimal").get<std::string>() << "\n";
    body << "stabilization_k,"
         << (report.contains("stabilization_k") && !report.at("stabilization_k").is_null()
                 ? std::to_string(report.at("stabilization_k").get<long>())
                 : std::string("none"))
         << "\n";
  } else {
    throw ParseError("--format: expected json|table|csv");
  }
  if (opt.out_path.empty()) {
    out << body.str();
  } else {
    std::ofstream f(opt.out_path, std::ios::binary);
    if (!f) throw ParseError("cannot open output file: " + opt.out_path);
    f << body.str();
  }
}

// --- commands ---

int cmd_validate(const Options& opt, std::ostream& out, std::ostream& err) {
  GameFile file = parse_game_file(read_file(opt.input));
  const auto bad = validate_game_file(file);
  ordered_json report;
  report["command"] = "validate";
  report["kind"] = kind_name(file.kind);
  report["ok"] = bad.empty();
  report["diagnostics"] = bad;
  emit(report, opt, out);
  if (!bad.empty()) {
    for (const std::string& b : bad) err << opt.input << ": " << b << "\n";
    return kInputError;
  }
  return kOk;
}

int cmd_value(const Options& opt, std::ostream& out, std::ostream& err) {
  const GameFile file = load_input(opt, err);
  if (file.kind != GameFile::Kind::kNormalForm) {
    throw ParseError("value: needs a normal_form input");
  }
  const CoalitionGame v =
      characteristic_function(*file.normal_form, mode_from(opt), policy_from(opt));
  ordered_json report;
  report["command"] = "value";
  report["mode"] = opt.mode;
  report["rule"] = opt.rule;
  ordered_json rows = ordered_json::array();
  const Coalition all = full_coalition(v.num_players);
  for (Coalition s = 1; s <= all; ++s) {
    ordered_json row;
    row["coalition"] = jcoalition(s);
    row["value"] = v.value(s).str();
    rows.push_back(std::move(row));
  }
  report["coalitions"] = std::move(rows);
  emit(report, opt, out);
  return kOk;
}

int cmd_cover(const Options& opt, std::ostream& out, std::ostream& err) {
  const GameFile file = load_input(opt, err);
  const CoalitionGame g = coalition_input(file, opt);
  ordered_json report;
  report["command"] = "cover";
  ordered_json rows = ordered_json::array();
  const Coalition all = full_coalition(g.num_players);
  bool totally = true;
  for (Coalition s = 1; s <= all; ++s) {
    const Rational cover = superadditive_cover_value(g, s);
    if (cover != g.value(s)) totally = false;
    ordered_json row;
    row["coalition"] = jcoalition(s);
    row["value"] = g.value(s).str();
    row["cover"] = cover.str();
    row["tight"] = cover == g.value(s);
    rows.push_back(std::move(row));
  }
  report["coalitions"] = std::move(rows);
  const SuperadditivityReport sup = is_superadditive(g);
  report["superadditive"] = sup.superadditive;
  if (!sup.superadditive) {
    report["violating_pair"] =
        ordered_json::array({jcoalition(sup.witness_s), jcoalition(sup.witness_t)});
  }
  report["totally_balanced"] = totally;
  emit(report, opt, out);
  return kOk;
}

int cmd_shapley(const Options& opt, std::ostream& out, std::ostream& err) {
  const GameFile file = load_input(opt, err);
  const CoalitionGame g = coalition_input(file, opt);
  ordered_json report;
  report["command"] = "shapley";
  report["values"] = jvec(shapley_value(g).values);
  report["total"] = g.value(full_coalition(g.num_players)).str();
  ordered_json subgames = ordered_json::array();
  const Coalition all = full_coalition(g.num_players);
  for (Coalition s = 1; s <= all; ++s) {
    const ShapleyResult sub = shapley_subgame(g, s);
    RationalVector member_values;
    for (int i : coalition_members(s)) {
      member_values.push_back(sub.values[static_cast<std::size_t>(i)]);
    }
    ordered_json row;
    row["coalition"] = jcoalition(s);
    row["values"] = jvec(member_values);
    row["sum"] = sum(member_values).str();
    subgames.push_back(std::move(row));
  }
  report["subgames"] = std::move(subgames);
  emit(report, opt, out);
  return kOk;
}

ordered_json core_report(const CorePolytope& c) {
  ordered_json j;
  j["empty"] = c.empty();
  if (!c.empty()) {
    ordered_json ranges = ordered_json::array();
    for (int i = 0; i < c.num_players(); ++i) {
      auto [lo, hi] = c.payoff_range(i);
      ordered_json row;
      row["player"] = i + 1;
      row["min"] = jprobe(lo);
      row["max"] = jprobe(hi);
      ranges.push_back(std::move(row));
    }
    j["payoff_ranges"] = std::move(ranges);
    auto lex = c.lex_min_point();
    if (lex) j["lex_min"] = jvec(*lex);
  }
  return j;
}

int cmd_core(const Options& opt, std::ostream& out, std::ostream& err) {
  const GameFile file = load_input(opt, err);
  const CoalitionGame g = coalition_input(file, opt);
  ordered_json report;
  report["command"] = "core";
  report["balanced"] = is_balanced(g);
  report.update(core_report(core(g)));
  emit(report, opt, out);
  return kOk;
}

int cmd_etcore(const Options& opt, std::ostream& out, std::ostream& err) {
  const GameFile file = load_input(opt, err);
  const CommunityGame g = community_input(file, opt);
  ordered_json report;
  report["command"] = "etcore";
  report["k"] = opt.k;
  report.update(core_report(equal_treatment_core(g, opt.k)));
  emit(report, opt, out);
  return kOk;
}

ordered_json face_ranges(const PayoffFace& face) {
  ordered_json ranges = ordered_json::array();
  for (int i = 0; i < face.num_types(); ++i) {
    ordered_json row;
    row["player"] = i + 1;
    row["min"] = jprobe(face.min_payoff(i));
    row["max"] = jprobe(face.max_payoff(i));
    ranges.push_back(std::move(row));
  }
  return ranges;
}

int cmd_core_equiv(const Options& opt, std::ostream& out, std::ostream& err) {
  const GameFile file = load_input(opt, err);
  const CommunityGame g = community_input(file, opt);
  const CommunityGains gains(g);
  ordered_json report;
  report["command"] = "core-equiv";
  report["k"] = opt.k;
  report["equivalent"] = core_equivalence(gains, opt.k);
  const RationalVector ones(static_cast<std::size_t>(g.num_types), Rational(1));
  report["face_ranges"] = face_ranges(gains.payoff_face(ones));
  const CorePolytope etc = equal_treatment_core(gains, opt.k);
  ordered_json etc_ranges = ordered_json::array();
  for (int i = 0; i < etc.num_players(); ++i) {
    auto [lo, hi] = etc.payoff_range(i);
    ordered_json row;
    row["player"] = i + 1;
    row["min"] = jprobe(lo);
    row["max"] = jprobe(hi);
    etc_ranges.push_back(std::move(row));
  }
  report["etcore_ranges"] = std::move(etc_ranges);
  emit(report, opt, out);
  return kOk;
}

ordered_json sweep_report(const GapSweep& sweep, const Differentiability& diff) {
  ordered_json j;
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < sweep.discrete.size(); ++i) {
    ordered_json row;
    row["k"] = static_cast<long>(i + 1);
    row["gap"] = sweep.discrete[i].str();
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  j["infinitesimal"] = sweep.infinitesimal.str();
  if (sweep.stabilization_k) {
    j["stabilization_k"] = *sweep.stabilization_k;
  } else {
    j["stabilization_k"] = nullptr;
  }
  j["differentiable"] = diff.differentiable;
  if (diff.gradient) j["gradient"] = jvec(*diff.gradient);
  return j;
}

int cmd_gap(const Options& opt, std::ostream& out, std::ostream& err) {
  const GameFile file = load_input(opt, err);
  const CommunityGame g = community_input(file, opt);
  const RationalVector x = population_from(opt, g.num_types);
  ordered_json report;
  report["command"] = "gap";
  report["x"] = jvec(x);
  report.update(sweep_report(gap_sweep(g, x, opt.kmax), is_differentiable(g, x)));
  emit(report, opt, out);
  return kOk;
}

int cmd_saddle(const Options& opt, std::ostream& out, std::ostream& err) {
  const GameFile file = load_input(opt, err);
  const CommunityGame g = community_input(file, opt);
  const RationalVector x = population_from(opt, g.num_types);
  const SaddlePoint sp = saddle_point(g, x);
  const SaddleValue sv = saddle_value_check(g, x);
  ordered_json report;
  report["command"] = "saddle";
  report["x"] = jvec(x);
  report["value"] = sp.value.str();
  report["payoffs"] = jvec(sp.payoffs);
  ordered_json assignment = ordered_json::array();
  for (std::size_t j = 0; j < sp.columns.size(); ++j) {
    if (sp.assignment[j].is_zero()) continue;
    ordered_json row;
    row["community"] = jcoalition(g.communities[sp.columns[j].community].members);
    row["profile"] = static_cast<long>(sp.columns[j].profile);
    row["mass"] = sp.assignment[j].str();
    assignment.push_back(std::move(row));
  }
  report["assignment"] = std::move(assignment);
  report["transfers"] = jvec(sp.transfers);
  ordered_json identities;
  identities["payoffs_cover_value"] = sv.payoff_identity;
  identities["assignment_attains_value"] = sv.assignment_identity;
  identities["transfers_balance"] = sv.transfers_balance;
  report["identities"] = std::move(identities);
  emit(report, opt, out);
  return kOk;
}

int cmd_ic(const Options& opt, std::ostream& out, std::ostream& err) {
  const GameFile file = load_input(opt, err);
  const PaymentRule rule = payment_from(opt);
  std::vector<IcVerdict> verdicts;
  MechanismOutcome truthful;
  if (file.kind == GameFile::Kind::kNormalForm) {
    const NormalFormGame& g = *file.normal_form;
    const RationalVector x = population_from(opt, g.num_players);
    verdicts = incentive_compatibility(g, mode_from(opt), policy_from(opt), rule, x);
    const CommunityGame community =
        community_from_normal_form(g, mode_from(opt), policy_from(opt));
    truthful = mechanism_outcome(community, community, rule, x);
  } else {
    const CommunityGame g = community_input(file, opt);
    const RationalVector x = population_from(opt, g.num_types);
    verdicts = incentive_compatibility(g, rule, x);
    truthful = mechanism_outcome(g, g, rule, x);
  }
  ordered_json report;
  report["command"] = "ic";
  report["payment"] = opt.payment;
  report["k"] = opt.k;
  ordered_json rows = ordered_json::array();
  for (const IcVerdict& v : verdicts) {
    ordered_json row;
    row["player"] = v.player + 1;
    row["ic_within_family"] = v.compatible_within_family;
    row["best_gain"] = v.best_gain.str();
    if (!v.compatible_within_family) {
      row["witness"] = jvec(v.witness);
    } else {
      row["witness"] = nullptr;
    }
    rows.push_back(std::move(row));
  }
  report["verdicts"] = std::move(rows);
  ordered_json budget;
  budget["payoffs"] = jvec(truthful.payoffs);
  budget["transfers"] = jvec(truthful.transfers);
  budget["deficit"] = truthful.deficit.str();
  report["truthful_outcome"] = std::move(budget);
  emit(report, opt, out);
  return kOk;
}

int cmd_ntu(const Options& opt, std::ostream& out, std::ostream& err) {
  const GameFile file = load_input(opt, err);
  const CommunityGame g = community_input(file, opt);
  const RationalVector x = population_from(opt, g.num_types);
  NtuOptions options;
  auto tol = Rational::parse(opt.tol);
  if (!tol) throw ParseError("--tol: not a rational");
  options.tolerance = *tol;
  options.max_iterations = opt.max_iter;
  options.damping = opt.damping;
  RationalVector gamma0;
  if (opt.gamma0.empty()) {
    gamma0.assign(static_cast<std::size_t>(g.num_types), Rational(1, g.num_types));
  } else {
    gamma0 = parse_rationals(opt.gamma0, "--gamma0");
  }
  const NtuResult res = ntu_fixed_point(g, x, gamma0, options);
  ordered_json report;
  report["command"] = "ntu";
  switch (res.status) {
    case NtuStatus::kConverged:
      report["status"] = "converged";
      break;
    case NtuStatus::kMaxIterations:
      report["status"] = "max-iterations";
      break;
    case NtuStatus::kCycleDetected:
      report["status"] = "cycling-detected";
      break;
  }
  report["iterations"] = res.iterations;
  report["weights"] = jvec(res.weights);
  report["transfers"] = jvec(res.transfers);
  emit(report, opt, out);
  return kOk;
}

int cmd_exchange(const std::string& sub, const Options& opt, std::ostream& out,
                 std::ostream& err) {
  const GameFile file = load_input(opt, err);
  if (file.kind != GameFile::Kind::kExchange) {
    throw ParseError("exchange: needs an exchange input");
  }
  const ExchangeEconomy& e = *file.exchange;
  const RationalVector x = population_from(opt, e.num_types());
  ordered_json report;
  if (sub == "value") {
    report["command"] = "exchange value";
    report["x"] = jvec(x);
    report["value"] = market_value(e, x).str();
  } else if (sub == "walras") {
    const WalrasOutcome w = walras(e, x);
    report["command"] = "exchange walras";
    report["x"] = jvec(x);
    report["value"] = w.value.str();
    report["prices"] = jvec(w.prices);
    report["payoffs"] = jvec(w.payoffs);
    report["transfers"] = jvec(w.transfers);
    ordered_json mixtures = ordered_json::array();
    for (const RationalVector& z : w.mixtures) mixtures.push_back(jvec(z));
    report["mixtures"] = std::move(mixtures);
    ordered_json ranges = ordered_json::array();
    for (int c = 0; c < e.num_commodities; ++c) {
      auto [lo, hi] = price_range(e, x, c);
      ordered_json row;
      row["commodity"] = c + 1;
      row["min"] = jprobe(lo);
      row["max"] = jprobe(hi);
      ranges.push_back(std::move(row));
    }
    report["price_ranges"] = std::move(ranges);
  } else if (sub == "char") {
    const CoalitionGame v = exchange_characteristic(e);
    report["command"] = "exchange char";
    ordered_json rows = ordered_json::array();
    const Coalition all = full_coalition(v.num_players);
    for (Coalition s = 1; s <= all; ++s) {
      ordered_json row;
      row["coalition"] = jcoalition(s);
      row["value"] = v.value(s).str();
      rows.push_back(std::move(row));
    }
    report["coalitions"] = std::move(rows);
    report["totally_balanced"] = is_self_concavifying(v);
  } else if (sub == "gap") {
    const ExchangeEulerReport rep = exchange_euler_analysis(e, x, opt.kmax);
    report["command"] = "exchange gap";
    report["x"] = jvec(x);
    report.update(sweep_report(rep.sweep, rep.differentiability));
    report["characteristic_totally_balanced"] = rep.characteristic_totally_balanced;
  } else {
    throw ParseError("exchange: expected value|walras|char|gap");
  }
  emit(report, opt, out);
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact rational analysis of transferable-utility games"};
  app.require_subcommand(1);

  Options opt;
  std::string exchange_sub;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--input", opt.input, "input game file (JSON)")->required();
    cmd->add_option("--out", opt.out_path, "write the report to a file");
    cmd->add_option("--format", opt.format, "json|table|csv (default json)");
    cmd->add_option("--mode", opt.mode, "standard|property-rights (default standard)");
    cmd->add_option("--rule", opt.rule, "optimistic|baseline|minimax (default optimistic)");
    cmd->add_option("--baseline", opt.baseline, "baseline profile, comma-separated actions");
    cmd->add_option("--x", opt.x, "population, comma-separated rationals (default all ones)");
  };

  add_common(app.add_subcommand("validate", "check a game file and report diagnostics"));
  add_common(app.add_subcommand("value", "characteristic-function table of a normal form"));
  add_common(app.add_subcommand("cover", "superadditive cover and balancedness"));
  add_common(app.add_subcommand("shapley", "Shapley values with subgame tables"));
  add_common(app.add_subcommand("core", "core emptiness and payoff ranges"));
  CLI::App* etcore = app.add_subcommand("etcore", "equal-treatment core at k*1");
  add_common(etcore);
  etcore->add_option("--k", opt.k, "replication level (default 1)");
  CLI::App* equiv = app.add_subcommand("core-equiv", "equal-treatment core vs payoff face");
  add_common(equiv);
  equiv->add_option("--k", opt.k, "replication level (default 1)");
  CLI::App* gap = app.add_subcommand("gap", "discrete and infinitesimal Euler gaps");
  add_common(gap);
  gap->add_option("--kmax", opt.kmax, "largest discrete step (default 5)");
  add_common(app.add_subcommand("saddle", "canonical saddle point with transfers"));
  CLI::App* ic = app.add_subcommand("ic", "incentive-compatibility sweep");
  add_common(ic);
  ic->add_option("--payment", opt.payment, "marginal|shapley-cover|core-lex-min");
  ic->add_option("--k", opt.k, "marginal-rule scale (default 1)");
  CLI::App* ntu = app.add_subcommand("ntu", "utility-weight fixed-point iteration");
  add_common(ntu);
  ntu->add_option("--gamma0", opt.gamma0, "starting weights (default uniform)");
  ntu->add_option("--tol", opt.tol, "stopping tolerance (default 1/1000000000)");
  ntu->add_option("--max-iter", opt.max_iter, "iteration cap (default 10000)");
  ntu->add_flag("--damping", opt.damping, "average each step with the previous weights");
  CLI::App* exchange = app.add_subcommand("exchange", "linear exchange economies");
  exchange->require_subcommand(1);
  for (const char* name : {"value", "walras", "char", "gap"}) {
    CLI::App* sub = exchange->add_subcommand(name);
    add_common(sub);
    if (std::string(name) == "gap") sub->add_option("--kmax", opt.kmax, "largest step");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return kOk;
    }
    err << e.what() << "\n";
    return kInputError;
  }

  // TUG_LOG=1 traces command timing on stderr; reports are unaffected.
  const char* log_env = std::getenv("TUG_LOG");
  const bool trace = log_env != nullptr && *log_env != '\0';
  const auto started = std::chrono::steady_clock::now();
  const auto log_elapsed = [&](int code) {
    if (trace) {
      const auto elapsed = std::chrono::duration<double, std::milli>(
          std::chrono::steady_clock::now() - started);
      err << "tug: exit " << code << " after " << elapsed.count() << " ms\n";
    }
    return code;
  };

  try {
    if (app.got_subcommand("validate")) return log_elapsed(cmd_validate(opt, out, err));
    if (app.got_subcommand("value")) return log_elapsed(cmd_value(opt, out, err));
    if (app.got_subcommand("cover")) return log_elapsed(cmd_cover(opt, out, err));
    if (app.got_subcommand("shapley")) return log_elapsed(cmd_shapley(opt, out, err));
    if (app.got_subcommand("core")) return log_elapsed(cmd_core(opt, out, err));
    if (app.got_subcommand("etcore")) return log_elapsed(cmd_etcore(opt, out, err));
    if (app.got_subcommand("core-equiv")) return log_elapsed(cmd_core_equiv(opt, out, err));
    if (app.got_subcommand("gap")) return log_elapsed(cmd_gap(opt, out, err));
    if (app.got_subcommand("saddle")) return log_elapsed(cmd_saddle(opt, out, err));
    if (app.got_subcommand("ic")) return log_elapsed(cmd_ic(opt, out, err));
    if (app.got_subcommand("ntu")) return log_elapsed(cmd_ntu(opt, out, err));
    if (app.got_subcommand("exchange")) {
      CLI::App* ex = app.get_subcommand("exchange");
      for (const char* name : {"value", "walras", "char", "gap"}) {
        if (ex->got_subcommand(name)) return log_elapsed(cmd_exchange(name, opt, out, err));
      }
    }
    err << "no command selected\n";
    return log_elapsed(kInputError);
  } catch (const SizeGuardError& e) {
    err << "size guard: " << e.what() << "\n";
    return log_elapsed(kSizeGuard);
  } catch (const SolverInternalError& e) {
    err << "internal invariant failure: " << e.what() << "\n";
    return log_elapsed(kInternalError);
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return log_elapsed(kInputError);
  } catch (const RuleNotApplicableError& e) {
    err << e.what() << "\n";
    return log_elapsed(kInputError);
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return log_elapsed(kInputError);
  }
}

}  // namespace tug::cli
