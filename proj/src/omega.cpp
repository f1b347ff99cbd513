#include "asyncbool/omega.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace asyncbool {

StateBijection::StateBijection(unsigned width, std::vector<std::uint32_t> forward)
    : width_(width), forward_(std::move(forward)) {
  if (width == 0 || width > kMaxWidth) throw UsageError("bijection width out of range");
  const std::size_t count = std::size_t{1} << width;
  if (forward_.size() != count) throw UsageError("bijection must have exactly 2^n rows");
  inverse_.assign(count, static_cast<std::uint32_t>(count));
  for (std::uint32_t mu = 0; mu < count; ++mu) {
    const auto image = forward_[mu];
    if (image >= count) throw UsageError("bijection output exceeds width");
    if (inverse_[image] != count) throw UsageError("map is not a bijection");
    inverse_[image] = mu;
  }
}

StateBijection StateBijection::identity(unsigned width) {
  std::vector<std::uint32_t> fwd(std::size_t{1} << width);
  std::iota(fwd.begin(), fwd.end(), 0u);
  return StateBijection(width, std::move(fwd));
}

StateBijection StateBijection::coordinate_permutation(std::span<const unsigned> p) {
  const auto width = static_cast<unsigned>(p.size());
  std::vector<std::uint32_t> fwd(std::size_t{1} << width);
  for (std::uint32_t mu = 0; mu < fwd.size(); ++mu) {
    std::uint32_t out = 0;
    for (unsigned i = 0; i < width; ++i) {
      if (p[i] >= width) throw UsageError("coordinate permutation index out of range");
      out |= ((mu >> p[i]) & 1u) << i;
    }
    fwd[mu] = out;
  }
  return StateBijection(width, std::move(fwd));
}

State StateBijection::operator()(State mu) const {
  require_same_width(width_, mu.width(), "bijection");
  return State(width_, forward_[mu.bits()]);
}

UpdateMask StateBijection::operator()(UpdateMask nu) const {
  require_same_width(width_, nu.width(), "bijection");
  return UpdateMask(width_, forward_[nu.bits()]);
}

bool StateBijection::is_identity() const {
  for (std::uint32_t mu = 0; mu < forward_.size(); ++mu) {
    if (forward_[mu] != mu) return false;
  }
  return true;
}

State union_states(std::span<const State> mus) {
  if (mus.empty()) throw UsageError("union_states: empty list");
  std::uint32_t acc = 0;
  for (const auto& mu : mus) {
    require_same_width(mus.front().width(), mu.width(), "union_states");
    acc |= mu.bits();
  }
  return State(mus.front().width(), acc);
}

OmegaMembership is_in_omega(const StateBijection& h) {
  const unsigned n = h.width();
  const std::uint32_t top = (1u << n) - 1;
  if (h(0u) != 0 || h(top) != top) return {h, false, std::nullopt};
  if (n > kMaxOmegaCheckWidth) {
    throw CapabilityError("Omega membership is decided for n <= " +
                          std::to_string(kMaxOmegaCheckWidth));
  }
  const std::uint32_t elements = 1u << n;
  const std::uint64_t subsets = std::uint64_t{1} << elements;
  // Unions of every subset and of its image, built from the subset without its lowest element.
  std::vector<std::uint32_t> plain(subsets, 0), mapped(subsets, 0);
  for (std::uint64_t s = 1; s < subsets; ++s) {
    const auto low = static_cast<std::uint32_t>(std::countr_zero(s));
    plain[s] = plain[s & (s - 1)] | low;
    mapped[s] = mapped[s & (s - 1)] | h(low);
  }
  auto witness_of = [&](std::uint64_t s) {
    std::vector<State> out;
    for (std::uint32_t mu = 0; mu < elements; ++mu) {
      if ((s >> mu) & 1u) out.emplace_back(n, mu);
    }
    return out;
  };
  // The "=>" direction is scanned before "<=" so that witnesses are found in a stable order.
  for (int direction = 0; direction < 2; ++direction) {
    for (std::uint64_t s = 1; s < subsets; ++s) {
      if (std::popcount(s) < 2) continue;
      const bool covers = plain[s] == top;
      const bool image_covers = mapped[s] == top;
      if (direction == 0 ? (covers && !image_covers) : (!covers && image_covers)) {
        return {h, false, witness_of(s)};
      }
    }
  }
  return {h, true, std::nullopt};
}

StateBijection compose(const StateBijection& outer, const StateBijection& inner) {
  require_same_width(outer.width(), inner.width(), "compose");
  std::vector<std::uint32_t> fwd(inner.forward().size());
  for (std::uint32_t mu = 0; mu < fwd.size(); ++mu) fwd[mu] = outer(inner(mu));
  return StateBijection(outer.width(), std::move(fwd));
}

StateBijection invert(const StateBijection& h) {
  return StateBijection(h.width(), std::vector<std::uint32_t>(h.inverse().begin(), h.inverse().end()));
}

std::vector<StateBijection> enumerate_omega(unsigned width) {
  if (width == 0 || width > kMaxOmegaEnumerationWidth) {
    throw CapabilityError("Omega enumeration supports 1 <= n <= " +
                          std::to_string(kMaxOmegaEnumerationWidth));
  }
  const std::uint32_t top = (1u << width) - 1;
  std::vector<std::uint32_t> middle;
  for (std::uint32_t mu = 1; mu < top; ++mu) middle.push_back(mu);
  std::vector<StateBijection> out;
  // Bottom and top are pinned, so permuting the middle in lexicographic order
  // walks the forward tables in lexicographic order.
  do {
    std::vector<std::uint32_t> fwd{0};
    fwd.insert(fwd.end(), middle.begin(), middle.end());
    fwd.push_back(top);
    StateBijection h(width, std::move(fwd));
    if (is_in_omega(h).verdict) out.push_back(std::move(h));
  } while (std::next_permutation(middle.begin(), middle.end()));
  return out;
}

LassoMaskSequence map_sequence(const StateBijection& h, const LassoMaskSequence& alpha) {
  require_same_width(h.width(), alpha.width(), "map_sequence");
  auto map_all = [&h](const std::vector<UpdateMask>& in) {
    std::vector<UpdateMask> out;
    out.reserve(in.size());
    for (const auto& nu : in) out.push_back(h(nu));
    return out;
  };
  LassoMaskSequence mapped(map_all(alpha.prefix()), map_all(alpha.cycle()));
  if (alpha.is_progressive() && !mapped.is_progressive()) {
    throw UsageError("map_sequence: image is not progressive; h is not in Omega_n");
  }
  return mapped;
}

ProgressiveFunction map_progressive_function(const StateBijection& h,
                                             const ProgressiveFunction& rho) {
  return ProgressiveFunction(rho.times(), map_sequence(h, rho.masks()), rho.period());
}

}  // namespace asyncbool
