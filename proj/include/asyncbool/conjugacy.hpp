#pragma once

#include <optional>
#include <span>
#include <vector>

#include "asyncbool/boolean_core.hpp"
#include "asyncbool/omega.hpp"
#include "asyncbool/runs.hpp"

namespace asyncbool {

// Phi -(h, h')-> Psi. h is any bijection of B^n; h' must lie in Omega_n.
struct ConjugacyWitness {
  StateBijection h;
  StateBijection h_prime;
  bool operator==(const ConjugacyWitness&) const = default;
};

// A (nu, mu) where h(Phi^nu(mu)) != Psi^{h'(nu)}(h(mu)).
struct DiagramInstance {
  UpdateMask nu;
  State mu;
  bool operator==(const DiagramInstance&) const = default;
};

struct EquivalenceVerdict {
  bool equivalent = false;
  std::optional<ConjugacyWitness> witness;
  std::optional<DiagramInstance> counterexample;
};

// Checks all 4^n commuting squares; reports the first failure with nu major,
// mu minor. Throws UsageError when h' is not in Omega_n.
EquivalenceVerdict check_conjugacy(const TruthTable& phi, const TruthTable& psi,
                                   const ConjugacyWitness& w);

struct RunSample {
  State mu;
  ProgressiveFunction rho;
};

// The run-level forms of conjugacy: h(Phi-hat^alpha(k, mu)) equals
// Psi-hat^{h'(alpha)}(k, h(mu)) for -1 <= k <= max_k, and h(Phi^rho(t, mu))
// equals Psi^{h'(rho)}(t, h(mu)) at every breakpoint and mask instant probed.
bool check_conjugacy_runs(const TruthTable& phi, const TruthTable& psi,
                          const ConjugacyWitness& w, std::span<const RunSample> corpus,
                          std::int64_t max_k = 8);

// Runs starting with every single mask nu from every state, followed by
// full updates. Sufficient to expose any failing commuting square.
std::vector<RunSample> single_step_corpus(unsigned width);

inline constexpr unsigned kMaxSearchWidth = 3;

struct SearchOptions {
  unsigned jobs = 1;
};

// Exhaustive search, h major and h' minor, both in lexicographic order of
// their forward tables. Candidates h that do not carry the fixed points of
// Phi onto those of Psi are skipped: conjugacy maps fixed points to fixed
// points through h, and h is a bijection.
EquivalenceVerdict find_equivalence(const TruthTable& phi, const TruthTable& psi,
                                    const SearchOptions& options = {});

// Some Psi != Phi is conjugate to Phi. With nu = (1,...,1) the square forces
// Psi = h o Phi o h^-1, so only those candidates are tried.
bool has_nontrivial_conjugate(const TruthTable& phi);

struct InvariantReport {
  bool fixed_points_mapped = false;     // Fix(Psi) = h(Fix(Phi))
  bool periods_preserved = false;       // equal minimal T0 on every periodic corpus run
  bool transitivity_preserved = false;  // tt1 and tt2 agree on both sides
  bool identity_dichotomy = false;      // Phi = 1 iff Psi = 1
  bool all() const {
    return fixed_points_mapped && periods_preserved && transitivity_preserved &&
           identity_dichotomy;
  }
};

// Throws UsageError when w does not conjugate phi to psi.
InvariantReport check_invariants_transfer(const TruthTable& phi, const TruthTable& psi,
                                          const ConjugacyWitness& w,
                                          std::span<const RunSample> corpus);

}  // namespace asyncbool
