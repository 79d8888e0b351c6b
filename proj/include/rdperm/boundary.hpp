#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rdperm/alpha.hpp"
#include "rdperm/permutation.hpp"

namespace rdperm {

/// Named families of infinite paths rho_1 -> rho_2 -> ... in the record graph.
struct PathSpec {
  enum class Kind {
    all_ones,      // 1^n
    frozen_zeros,  // zeros exactly at the listed positions
    sqrt_prefix,   // ones at 1..floor(sqrt n), zeros after
    half_zeros,    // ones at 1..max(1, floor(n/2)), zeros after
    drifting_zero, // 1^(n-1) 0: a single zero at the end
    ones_prefix    // ones at 1..c, zeros after
  };
  Kind kind = Kind::all_ones;
  std::vector<int> zeros;  // frozen_zeros
  int c = 1;               // ones_prefix

  /// "ones", "frozen:3,6", "sqrt", "half", "drift", "prefix:4".
  static PathSpec parse(std::string_view text);
  std::string to_string() const;
};

/// rho_n of the path.
RecordWord path_word(const PathSpec& spec, int n);

/// rho_1, ..., rho_depth.
std::vector<RecordWord> path_prefix(const PathSpec& spec, int depth);

struct ClassifyOptions {
  double threshold = 1e-6;  // L below this counts as vanished
  int trend_window = 10;    // levels over which L must be non-increasing
};

struct LimitClass {
  enum class Kind { star, alpha_p, undetermined };
  Kind kind = Kind::undetermined;
  std::optional<OmegaPoint> omega;  // set unless undetermined
  double p1 = 0;                    // L at the last level
  double p2 = 0;                    // prod (1 - 1/alpha_i) over settled zeros
  int settled_horizon = 0;          // coordinates 1..h required to be frozen
  std::string to_string() const;
};

/// Finite-depth guess of the limit of the elementary measures along a path.
///
/// L is evaluated without the factor of a zero at position 2 (see
/// reduced_L_real). Star when that L is below the threshold and has been
/// non-increasing over the trend window. Otherwise coordinates 1..floor(N/4)
/// must agree across levels ceil(N/2)..N, else Undetermined; the zeros there
/// give alpha_i = l_i - 1, and p = L(rho_N) / prod over alpha_i >= 2 of (1 - 1/alpha_i).
/// Throws InvalidPath when consecutive words are not edges.
LimitClass classify_limit(std::span<const RecordWord> path, ClassifyOptions options = {});

}  // namespace rdperm
