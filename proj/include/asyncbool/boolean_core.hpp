#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "asyncbool/error.hpp"

namespace asyncbool {

inline constexpr unsigned kMaxWidth = 16;

// A point of B^n packed into an integer. Coordinate i (1-based) is bit i-1,
// so the integer encoding of mu is sum mu_i * 2^(i-1).
template <typename Tag>
class BitVector {
 public:
  constexpr BitVector() = default;
  constexpr BitVector(unsigned width, std::uint32_t bits) : bits_(bits), width_(width) {
    if (width == 0 || width > kMaxWidth) {
      throw UsageError("width must be in 1.." + std::to_string(kMaxWidth));
    }
    if (bits >> width) {
      throw UsageError("bits exceed width " + std::to_string(width));
    }
  }

  static constexpr BitVector zeros(unsigned width) { return BitVector(width, 0); }
  static constexpr BitVector ones(unsigned width) { return BitVector(width, (1u << width) - 1); }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr unsigned width() const { return width_; }

  // 1-based coordinate access, matching mu = (mu_1, ..., mu_n).
  constexpr bool operator[](unsigned i) const { return (bits_ >> (i - 1)) & 1u; }
  bool at(unsigned i) const {
    if (i < 1 || i > width_) throw UsageError("coordinate index out of range");
    return (*this)[i];
  }

  constexpr bool is_zero() const { return bits_ == 0; }
  constexpr bool is_ones() const { return bits_ == (1u << width_) - 1; }

  constexpr auto operator<=>(const BitVector&) const = default;

 private:
  std::uint32_t bits_ = 0;
  unsigned width_ = 0;
};

struct StateTag {};
struct MaskTag {};

using State = BitVector<StateTag>;
using UpdateMask = BitVector<MaskTag>;

inline UpdateMask as_mask(State s) { return UpdateMask(s.width(), s.bits()); }
inline State as_state(UpdateMask m) { return State(m.width(), m.bits()); }

// Coordinate 1 first, e.g. (0,1) -> "01".
template <typename Tag>
std::string to_bits(BitVector<Tag> v) {
  std::string out(v.width(), '0');
  for (unsigned i = 1; i <= v.width(); ++i) {
    if (v[i]) out[i - 1] = '1';
  }
  return out;
}

// Parses a coordinate-1-first bit string. Throws UsageError on bad input.
State state_from_bits(std::string_view text);
UpdateMask mask_from_bits(std::string_view text);

void require_same_width(unsigned a, unsigned b, const char* what);

// A total generator function Phi: B^n -> B^n, stored densely by input encoding.
class TruthTable {
 public:
  TruthTable(unsigned width, std::vector<std::uint32_t> outputs);

  static TruthTable identity(unsigned width);
  static TruthTable negation(unsigned width);
  static TruthTable constant(State value);

  unsigned width() const { return width_; }
  std::size_t size() const { return outputs_.size(); }

  State operator()(State mu) const;
  std::uint32_t lookup(std::uint32_t mu) const { return outputs_[mu]; }
  std::span<const std::uint32_t> outputs() const { return outputs_; }

  bool is_identity() const;

  bool operator==(const TruthTable&) const = default;

 private:
  unsigned width_;
  std::vector<std::uint32_t> outputs_;
};

using MaskSequencePrefix = std::vector<UpdateMask>;

// Phi^nu(mu): coordinates selected by nu are recomputed, the rest are copied.
State apply_masked(const TruthTable& phi, UpdateMask nu, State mu);

// Phi^{alpha^0 ... alpha^k}(mu), a left fold of apply_masked.
State iterate(const TruthTable& phi, std::span<const UpdateMask> prefix, State mu);

// NC_i = { mu | Phi_i(mu) = mu_i }, sorted by encoding.
std::vector<State> nullclin(const TruthTable& phi, unsigned i);

bool is_fixed_point(const TruthTable& phi, State mu);
std::vector<State> fixed_points(const TruthTable& phi);

// Raw-integer kernels used by the exhaustive analyses.
namespace detail {
inline std::uint32_t apply_masked(const TruthTable& phi, std::uint32_t nu, std::uint32_t mu) {
  return (mu & ~nu) | (phi.lookup(mu) & nu);
}
}  // namespace detail

}  // namespace asyncbool
