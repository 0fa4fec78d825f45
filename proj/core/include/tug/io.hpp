#ifndef TUG_IO_HPP
#define TUG_IO_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "tug/exchange.hpp"
#include "tug/game.hpp"
#include "tug/rational.hpp"

namespace tug {

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// One input document: "kind" selects the payload. Rationals are JSON
/// integers or exact "p/q" strings; players and commodities are 1-based in
/// files and reports.
struct GameFile {
  enum class Kind { kNormalForm, kCoalition, kCommunity, kExchange };
  Kind kind = Kind::kCoalition;
  std::optional<NormalFormGame> normal_form;
  std::optional<CoalitionGame> coalition;
  std::optional<CommunityGame> community;
  std::optional<ExchangeEconomy> exchange;
};

/// Parses and shape-checks a document (ParseError on malformed JSON or
/// schema). Value-level invariants are reported by validate_game_file.
GameFile parse_game_file(const std::string& text);

std::vector<std::string> validate_game_file(const GameFile& file);

const char* kind_name(GameFile::Kind kind);

}  // namespace tug

#endif  // TUG_IO_HPP
