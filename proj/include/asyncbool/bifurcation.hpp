#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "asyncbool/boolean_core.hpp"
#include "asyncbool/conjugacy.hpp"
#include "asyncbool/omega.hpp"

namespace asyncbool {

// Phi(., lambda) for every lambda in B^m, indexed by the encoding of lambda.
class ParamFamily {
 public:
  ParamFamily(unsigned state_width, unsigned param_width, std::vector<TruthTable> members);

  unsigned state_width() const { return state_width_; }
  unsigned param_width() const { return param_width_; }
  std::size_t size() const { return members_.size(); }
  const TruthTable& member(std::uint32_t lambda) const { return members_.at(lambda); }
  const std::vector<TruthTable>& members() const { return members_; }

  bool operator==(const ParamFamily&) const = default;

 private:
  unsigned state_width_;
  unsigned param_width_;
  std::vector<TruthTable> members_;
};

inline constexpr unsigned kMaxParamWidth = 3;

// Every pair of members is equivalent; false means a dynamic bifurcation.
bool family_structurally_stable(const ParamFamily& f, const SearchOptions& options = {});

struct CertifiedPair {
  std::uint32_t lambda;
  std::uint32_t lambda_prime;
  ConjugacyWitness witness;
};

struct BifurcationDiagram {
  // Each class sorted ascending; classes ordered by their smallest member,
  // which is also the representative.
  std::vector<std::vector<std::uint32_t>> classes;
  std::vector<std::uint32_t> representatives;
  std::vector<std::string> portraits;  // DOT, one per representative
  std::vector<CertifiedPair> within_class;
  // Pairs in different classes; each one is an exhausted search.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> inequivalent;
};

BifurcationDiagram bifurcation_diagram(const ParamFamily& f, const SearchOptions& options = {});

struct FixedPointDiagram {
  std::vector<std::vector<State>> fixed_points;  // indexed by lambda
  // No member has a fixed point, so the diagram cannot show anything.
  bool uninformative = false;
};

FixedPointDiagram fixed_point_diagram(const ParamFamily& f);

// Lexicographically first h'' with Phi(., lambda) ~ Psi(., h''(lambda)) for
// every lambda, or nullopt.
std::optional<StateBijection> families_equivalent(const ParamFamily& f, const ParamFamily& g,
                                                  const SearchOptions& options = {});

}  // namespace asyncbool
