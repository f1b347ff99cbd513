#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "asyncbool/boolean_core.hpp"
#include "asyncbool/runs.hpp"

namespace asyncbool {

inline constexpr unsigned kMaxGraphWidth = 12;

// The asynchronous transition graph of Xi_Phi: mu -> Phi^nu(mu) for every nu.
class TransitionGraph {
 public:
  struct Edge {
    std::uint32_t target = 0;
    std::vector<std::uint32_t> masks;  // every nu producing this successor, ascending
    std::uint32_t mask_union = 0;
  };

  explicit TransitionGraph(const TruthTable& phi);

  unsigned width() const { return width_; }
  std::size_t state_count() const { return edges_.size(); }

  // Successors of mu ordered by target encoding; always contains mu itself.
  const std::vector<Edge>& edges(std::uint32_t mu) const { return edges_[mu]; }
  std::vector<State> successors(State mu) const;

 private:
  unsigned width_;
  std::vector<std::vector<Edge>> edges_;
};

TransitionGraph build_graph(const TruthTable& phi);

struct OrbitSet {
  State source;
  std::vector<State> reachable;  // sorted by encoding, contains source
};

// Or_rho(mu): the values of Phi^rho(., mu).
OrbitSet orbit(const TruthTable& phi, const ProgressiveFunction& rho, State mu);

// Exists rho, t with Phi^rho(t, mu) = mu_prime. Any finite mask path extends
// to a progressive function by appending a full-update cycle after the
// witness instant, so this is plain graph reachability.
bool accessible(const TruthTable& phi, State mu, State mu_prime);
bool accessible(const TransitionGraph& graph, std::uint32_t mu, std::uint32_t mu_prime);

// tt1: every state is accessible from every state.
bool is_transitive_exists(const TruthTable& phi);

// True iff some progressive run from mu never takes the value target.
//
// Restrict the graph to states != target and edges not entering target. The
// tail of an infinite progressive run stays inside one strongly connected
// component and the masks it fires union to (1,...,1); conversely, a
// component reachable from mu whose internal edges carry masks covering all
// coordinates admits a closed walk firing all of them, which unrolls into a
// progressive lasso avoiding target. Such components are called fair.
bool can_avoid_forever(const TransitionGraph& graph, std::uint32_t mu, std::uint32_t target);

// tt2: every progressive run from every state reaches every state.
bool is_transitive_forall(const TruthTable& phi);

struct PortraitOptions {
  bool self_loops = false;  // draw mu -> mu at fixed points
};

// Graphviz digraph. Unstable coordinates are bracketed in node labels
// ("[0][1]" for (0,1) when both coordinates are excited). Edges: mu ->
// Phi^{e_i}(mu) for each excited coordinate i, plus mu -> Phi(mu) when it
// differs from mu and from every single-coordinate successor.
std::string export_portrait(const TruthTable& phi, const PortraitOptions& options = {});

}  // namespace asyncbool
