#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "asyncbool/boolean_core.hpp"
#include "asyncbool/runs.hpp"

namespace asyncbool {

// A permutation of B^n. Acts on states and, for h' in Omega_n, on masks.
class StateBijection {
 public:
  StateBijection(unsigned width, std::vector<std::uint32_t> forward);

  static StateBijection identity(unsigned width);
  // (mu_1, ..., mu_n) -> (mu_{p(1)}, ..., mu_{p(n)}), p given 0-based.
  static StateBijection coordinate_permutation(std::span<const unsigned> p);

  unsigned width() const { return width_; }
  std::span<const std::uint32_t> forward() const { return forward_; }
  std::span<const std::uint32_t> inverse() const { return inverse_; }

  std::uint32_t operator()(std::uint32_t mu) const { return forward_[mu]; }
  State operator()(State mu) const;
  UpdateMask operator()(UpdateMask nu) const;

  bool is_identity() const;

  auto operator<=>(const StateBijection& other) const { return forward_ <=> other.forward_; }
  bool operator==(const StateBijection& other) const { return forward_ == other.forward_; }

 private:
  unsigned width_;
  std::vector<std::uint32_t> forward_;
  std::vector<std::uint32_t> inverse_;
};

// mu^1 u ... u mu^k, coordinatewise OR.
State union_states(std::span<const State> mus);

struct OmegaMembership {
  StateBijection subject;
  bool verdict;
  // Set S with [uS = top] != [uh(S) = top], when bottom and top are fixed but
  // the covering condition fails.
  std::optional<std::vector<State>> witness;
};

inline constexpr unsigned kMaxOmegaCheckWidth = 4;

// Decides h in Omega_n. The covering condition quantifies over tuples of any
// length k >= 2; union is idempotent and commutative, so only the underlying
// set matters and it suffices to scan the 2^(2^n) subsets of B^n.
OmegaMembership is_in_omega(const StateBijection& h);

StateBijection compose(const StateBijection& outer, const StateBijection& inner);
StateBijection invert(const StateBijection& h);

inline constexpr unsigned kMaxOmegaEnumerationWidth = 3;

// Omega_n in lexicographic order of the forward table.
std::vector<StateBijection> enumerate_omega(unsigned width);

// h-hat(alpha). Throws UsageError when the image is not progressive, which
// cannot happen for h in Omega_n.
LassoMaskSequence map_sequence(const StateBijection& h, const LassoMaskSequence& alpha);
ProgressiveFunction map_progressive_function(const StateBijection& h,
                                             const ProgressiveFunction& rho);

}  // namespace asyncbool
