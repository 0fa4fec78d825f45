#include "tug/io.hpp"

#include <json.hpp>

namespace tug {

namespace {

using nlohmann::json;

Rational parse_rational(const json& j, const std::string& where) {
  if (j.is_number_integer()) {
    return Rational(static_cast<long>(j.get<long long>()));
  }
  if (j.is_string()) {
    auto r = Rational::parse(j.get<std::string>());
    if (r) return *r;
    throw ParseError(where + ": not a rational: \"" + j.get<std::string>() + "\"");
  }
  throw ParseError(where + ": expected integer or \"p/q\" string");
}

RationalVector parse_rational_array(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected array");
  RationalVector out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(parse_rational(j[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

int parse_count(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where + ": expected integer");
  const long long v = j.get<long long>();
  if (v < 1 || v > 64) throw ParseError(where + ": out of range");
  return static_cast<int>(v);
}

const json& field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw ParseError(std::string("missing field \"") + name + "\"");
  return *it;
}

NormalFormGame parse_normal_form(const json& j) {
  NormalFormGame g;
  g.num_players = parse_count(field(j, "players"), "players");
  const json& counts = field(j, "action_counts");
  if (!counts.is_array()) throw ParseError("action_counts: expected array");
  for (std::size_t i = 0; i < counts.size(); ++i) {
    g.action_counts.push_back(
        parse_count(counts[i], "action_counts[" + std::to_string(i) + "]"));
  }
  const json& tables = field(j, "utilities");
  if (!tables.is_array()) throw ParseError("utilities: expected array");
  for (std::size_t i = 0; i < tables.size(); ++i) {
    g.utilities.push_back(
        parse_rational_array(tables[i], "utilities[" + std::to_string(i + 1) + "]"));
  }
  return g;
}

CoalitionGame parse_coalition(const json& j) {
  CoalitionGame g;
  g.num_players = parse_count(field(j, "players"), "players");
  g.values = parse_rational_array(field(j, "values"), "values");
  return g;
}

CommunityGame parse_community(const json& j) {
  CommunityGame g;
  g.num_types = parse_count(field(j, "players"), "players");
  const json& communities = field(j, "communities");
  if (!communities.is_array()) throw ParseError("communities: expected array");
  for (std::size_t k = 0; k < communities.size(); ++k) {
    const std::string where = "communities[" + std::to_string(k) + "]";
    const json& cj = communities[k];
    Community c;
    const json& members = field(cj, "members");
    if (!members.is_array()) throw ParseError(where + ".members: expected array");
    std::vector<int> ids;
    for (const json& m : members) {
      if (!m.is_number_integer()) throw ParseError(where + ".members: expected integers");
      const long long v = m.get<long long>();
      if (v < 1 || v > kMaxPlayers) throw ParseError(where + ".members: player out of range");
      ids.push_back(static_cast<int>(v) - 1);
    }
    c.members = coalition_of(ids);
    const json& profiles = field(cj, "profiles");
    if (!profiles.is_array()) throw ParseError(where + ".profiles: expected array");
    for (std::size_t t = 0; t < profiles.size(); ++t) {
      c.profiles.push_back({parse_rational_array(
          profiles[t], where + ".profiles[" + std::to_string(t) + "]")});
    }
    g.communities.push_back(std::move(c));
  }
  return g;
}

ExchangeEconomy parse_exchange(const json& j) {
  ExchangeEconomy e;
  e.num_commodities = parse_count(field(j, "commodities"), "commodities");
  const json& types = field(j, "types");
  if (!types.is_array()) throw ParseError("types: expected array");
  for (std::size_t i = 0; i < types.size(); ++i) {
    const std::string where = "types[" + std::to_string(i + 1) + "]";
    const json& tj = types[i];
    ExchangeType t;
    const json& trades = field(tj, "trades");
    if (!trades.is_array()) throw ParseError(where + ".trades: expected array");
    for (std::size_t a = 0; a < trades.size(); ++a) {
      t.trades.push_back(
          parse_rational_array(trades[a], where + ".trades[" + std::to_string(a) + "]"));
    }
    t.values = parse_rational_array(field(tj, "values"), where + ".values");
    e.types.push_back(std::move(t));
  }
  return e;
}

}  // namespace

GameFile parse_game_file(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& err) {
    throw ParseError(std::string("invalid JSON: ") + err.what());
  }
  if (!j.is_object()) throw ParseError("top level: expected object");
  const json& kind = field(j, "kind");
  if (!kind.is_string()) throw ParseError("kind: expected string");
  const std::string name = kind.get<std::string>();
  GameFile out;
  if (name == "normal_form") {
    out.kind = GameFile::Kind::kNormalForm;
    out.normal_form = parse_normal_form(j);
  } else if (name == "coalition") {
    out.kind = GameFile::Kind::kCoalition;
    out.coalition = parse_coalition(j);
  } else if (name == "community") {
    out.kind = GameFile::Kind::kCommunity;
    out.community = parse_community(j);
  } else if (name == "exchange") {
    out.kind = GameFile::Kind::kExchange;
    out.exchange = parse_exchange(j);
  } else {
    throw ParseError("kind: unknown \"" + name + "\"");
  }
  return out;
}

std::vector<std::string> validate_game_file(const GameFile& file) {
  switch (file.kind) {
    case GameFile::Kind::kNormalForm:
      return validate(*file.normal_form);
    case GameFile::Kind::kCoalition:
      return validate(*file.coalition);
    case GameFile::Kind::kCommunity:
      return validate(*file.community);
    case GameFile::Kind::kExchange:
      return validate(*file.exchange);
  }
  return {"unknown kind"};
}

const char* kind_name(GameFile::Kind kind) {
  switch (kind) {
    case GameFile::Kind::kNormalForm:
      return "normal_form";
    case GameFile::Kind::kCoalition:
      return "coalition";
    case GameFile::Kind::kCommunity:
      return "community";
    case GameFile::Kind::kExchange:
      return "exchange";
  }
  return "?";
}

}  // namespace tug
