#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace coalint {

// A coalition over players 1..n is a bitmask: player i occupies bit i-1.
// The mask doubles as the index into every lattice-wide table.
using Mask = std::uint32_t;

inline int popcount(Mask m) { return std::popcount(m); }
inline Mask full_mask(int n) { return n >= 32 ? ~Mask{0} : (Mask{1} << n) - 1; }
inline Mask player_bit(int i) { return Mask{1} << (i - 1); }
inline bool has_player(Mask m, int i) { return (m & player_bit(i)) != 0; }
inline int lowest_player(Mask m) { return std::countr_zero(m) + 1; }

// Iterates sub over all submasks of m, descending, ending with 0.
// Usage: for (Mask sub = m;; sub = (sub - 1) & m) { ...; if (sub == 0) break; }

// Absolute tolerance for value/dividend equality.
inline constexpr double value_tol = 1e-12;
// Absolute tolerance for axiom residuals (accumulated arithmetic).
inline constexpr double axiom_tol = 1e-9;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad inputs or violated preconditions; CLI maps these to exit code 2.
struct ValidationError : Error {
  using Error::Error;
};

// Exact computation refused above the configured size cap; CLI exit code 3.
struct SizeCapExceeded : Error {
  using Error::Error;
};

// Filesystem failures; CLI exit code 1.
struct IoError : Error {
  using Error::Error;
};

struct NonZeroEmptyCoalition : ValidationError { using ValidationError::ValidationError; };
struct SizeMismatch : ValidationError { using ValidationError::ValidationError; };
struct EmptyCoalition : ValidationError { using ValidationError::ValidationError; };
struct PlayerOutOfRange : ValidationError { using ValidationError::ValidationError; };
struct OverlappingArguments : ValidationError { using ValidationError::ValidationError; };
struct OrderOutOfRange : ValidationError { using ValidationError::ValidationError; };
struct UnknownKind : ValidationError { using ValidationError::ValidationError; };
struct NoSuchEdge : ValidationError { using ValidationError::ValidationError; };
struct EdgeAlreadyPresent : ValidationError { using ValidationError::ValidationError; };
struct LoopEdge : ValidationError { using ValidationError::ValidationError; };
struct DuplicateEdge : ValidationError { using ValidationError::ValidationError; };
struct ParseError : ValidationError { using ValidationError::ValidationError; };
struct NotATree : ValidationError { using ValidationError::ValidationError; };
struct PreconditionViolated : ValidationError { using ValidationError::ValidationError; };
struct NotAVetoGraphPartnership : ValidationError { using ValidationError::ValidationError; };

// Size caps. Exact lattice work is O(n * 2^n) or worse; the caps make the
// failure mode explicit instead of letting a query run for hours.
struct Limits {
  int max_game_n = 20;        // game storage and transforms
  int max_enum_n = 16;        // per-query subset enumeration (minimal connecting sets, veto detection)
  int max_axiom_n = 6;        // exhaustive axiom quantification (ICE, IGN, IF)
  int max_partnership_n = 5;  // ISRVPC partnership enumeration
};

Limits& limits();  // process-wide, set once at startup

void require_game_size(int n);
void require_enum_size(int n);

// Validated coalition used at API boundaries (parsing, printing, tables).
// Hot paths operate on raw Mask values.
struct Coalition {
  Mask bits = 0;
  int n = 0;

  Coalition() = default;
  Coalition(Mask bits, int n);
  static Coalition from_players(const std::vector<int>& players, int n);

  int size() const { return popcount(bits); }
  bool empty() const { return bits == 0; }
  bool contains(int player) const { return has_player(bits, player); }
  std::vector<int> players() const;
  std::string str() const;
};

// "1,3,5" with ascending player ids; "" for the empty coalition.
std::string coalition_key(Mask bits);
// Parses the key format; rejects empty keys, duplicates, descending order.
Mask parse_coalition_key(const std::string& key, int n);

}  // namespace coalint
