#include "asyncbool/boolean_core.hpp"

namespace asyncbool {

namespace {

std::uint32_t parse_bit_string(std::string_view text) {
  if (text.empty() || text.size() > kMaxWidth) {
    throw UsageError("bit string must have 1.." + std::to_string(kMaxWidth) + " characters");
  }
  std::uint32_t bits = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      bits |= 1u << i;
    } else if (text[i] != '0') {
      throw UsageError("invalid bit character '" + std::string(1, text[i]) + "'");
    }
  }
  return bits;
}

}  // namespace

State state_from_bits(std::string_view text) {
  return State(static_cast<unsigned>(text.size()), parse_bit_string(text));
}

UpdateMask mask_from_bits(std::string_view text) {
  return UpdateMask(static_cast<unsigned>(text.size()), parse_bit_string(text));
}

void require_same_width(unsigned a, unsigned b, const char* what) {
  if (a != b) {
    throw UsageError(std::string(what) + ": width mismatch (" + std::to_string(a) + " vs " +
                     std::to_string(b) + ")");
  }
}

TruthTable::TruthTable(unsigned width, std::vector<std::uint32_t> outputs)
    : width_(width), outputs_(std::move(outputs)) {
  if (width == 0 || width > kMaxWidth) {
    throw UsageError("truth table width must be in 1.." + std::to_string(kMaxWidth));
  }
  if (outputs_.size() != (std::size_t{1} << width)) {
    throw UsageError("truth table must have exactly 2^n rows");
  }
  for (auto out : outputs_) {
    if (out >> width) throw UsageError("truth table output exceeds width");
  }
}

TruthTable TruthTable::identity(unsigned width) {
  std::vector<std::uint32_t> out(std::size_t{1} << width);
  for (std::uint32_t mu = 0; mu < out.size(); ++mu) out[mu] = mu;
  return TruthTable(width, std::move(out));
}

TruthTable TruthTable::negation(unsigned width) {
  const std::uint32_t top = (1u << width) - 1;
  std::vector<std::uint32_t> out(std::size_t{1} << width);
  for (std::uint32_t mu = 0; mu < out.size(); ++mu) out[mu] = mu ^ top;
  return TruthTable(width, std::move(out));
}

TruthTable TruthTable::constant(State value) {
  return TruthTable(value.width(),
                    std::vector<std::uint32_t>(std::size_t{1} << value.width(), value.bits()));
}

State TruthTable::operator()(State mu) const {
  require_same_width(width_, mu.width(), "truth table lookup");
  return State(width_, outputs_[mu.bits()]);
}

bool TruthTable::is_identity() const {
  for (std::uint32_t mu = 0; mu < outputs_.size(); ++mu) {
    if (outputs_[mu] != mu) return false;
  }
  return true;
}

State apply_masked(const TruthTable& phi, UpdateMask nu, State mu) {
  require_same_width(phi.width(), nu.width(), "apply_masked");
  require_same_width(phi.width(), mu.width(), "apply_masked");
  return State(phi.width(), detail::apply_masked(phi, nu.bits(), mu.bits()));
}

State iterate(const TruthTable& phi, std::span<const UpdateMask> prefix, State mu) {
  if (prefix.empty()) throw UsageError("iterate: mask prefix must be nonempty");
  for (const auto& nu : prefix) mu = apply_masked(phi, nu, mu);
  return mu;
}

std::vector<State> nullclin(const TruthTable& phi, unsigned i) {
  if (i < 1 || i > phi.width()) throw UsageError("nullclin: coordinate index out of range");
  const std::uint32_t bit = 1u << (i - 1);
  std::vector<State> out;
  for (std::uint32_t mu = 0; mu < phi.size(); ++mu) {
    if ((phi.lookup(mu) & bit) == (mu & bit)) out.emplace_back(phi.width(), mu);
  }
  return out;
}

bool is_fixed_point(const TruthTable& phi, State mu) { return phi(mu) == mu; }

std::vector<State> fixed_points(const TruthTable& phi) {
  std::vector<State> out;
  for (std::uint32_t mu = 0; mu < phi.size(); ++mu) {
    if (phi.lookup(mu) == mu) out.emplace_back(phi.width(), mu);
  }
  return out;
}

}  // namespace asyncbool
