#include "coalint/types.hpp"

#include <algorithm>

namespace coalint {

Limits& limits() {
  static Limits instance;
  return instance;
}

void require_game_size(int n) {
  if (n < 1) throw ValidationError("player count must be at least 1, got " + std::to_string(n));
  if (n > limits().max_game_n)
    throw SizeCapExceeded("n = " + std::to_string(n) + " exceeds the game size cap " +
                          std::to_string(limits().max_game_n) +
                          " (raise it with --max-n or COALITION_INTERACT_MAX_N)");
}

void require_enum_size(int n) {
  if (n > limits().max_enum_n)
    throw SizeCapExceeded("n = " + std::to_string(n) + " exceeds the enumeration cap " +
                          std::to_string(limits().max_enum_n) +
                          " (raise it with --max-n or COALITION_INTERACT_MAX_N)");
}

Coalition::Coalition(Mask bits_, int n_) : bits(bits_), n(n_) {
  if (n < 0 || n > 31) throw ValidationError("coalition width out of range");
  if (bits & ~full_mask(n)) throw PlayerOutOfRange("coalition has a player above n = " + std::to_string(n));
}

Coalition Coalition::from_players(const std::vector<int>& players, int n) {
  Mask bits = 0;
  for (int p : players) {
    if (p < 1 || p > n)
      throw PlayerOutOfRange("player " + std::to_string(p) + " outside 1.." + std::to_string(n));
    if (has_player(bits, p)) throw ValidationError("duplicate player " + std::to_string(p));
    bits |= player_bit(p);
  }
  return Coalition(bits, n);
}

std::vector<int> Coalition::players() const {
  std::vector<int> out;
  for (Mask m = bits; m; m &= m - 1) out.push_back(lowest_player(m));
  return out;
}

std::string Coalition::str() const { return coalition_key(bits); }

std::string coalition_key(Mask bits) {
  std::string out;
  for (Mask m = bits; m; m &= m - 1) {
    if (!out.empty()) out += ',';
    out += std::to_string(lowest_player(m));
  }
  return out;
}

Mask parse_coalition_key(const std::string& key, int n) {
  if (key.empty()) throw ParseError("empty coalition key is forbidden");
  Mask bits = 0;
  int prev = 0;
  std::size_t pos = 0;
  while (pos < key.size()) {
    std::size_t comma = key.find(',', pos);
    std::string tok = key.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("bad coalition key '" + key + "'");
    int p = std::stoi(tok);
    if (p < 1 || p > n)
      throw ParseError("player " + std::to_string(p) + " outside 1.." + std::to_string(n) +
                       " in key '" + key + "'");
    if (p <= prev) throw ParseError("coalition key '" + key + "' must list ascending player ids");
    prev = p;
    bits |= player_bit(p);
    if (comma == std::string::npos) break;
    pos = comma + 1;
    if (pos == key.size()) throw ParseError("trailing comma in coalition key '" + key + "'");
  }
  return bits;
}

}  // namespace coalint
