#include "asyncbool/state_graph.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace asyncbool {

TransitionGraph::TransitionGraph(const TruthTable& phi) : width_(phi.width()) {
  if (width_ > kMaxGraphWidth) {
    throw CapabilityError("transition graph supports n <= " + std::to_string(kMaxGraphWidth));
  }
  const std::uint32_t count = 1u << width_;
  edges_.resize(count);
  for (std::uint32_t mu = 0; mu < count; ++mu) {
    std::map<std::uint32_t, Edge> by_target;
    for (std::uint32_t nu = 0; nu < count; ++nu) {
      const auto next = detail::apply_masked(phi, nu, mu);
      auto& edge = by_target[next];
      edge.target = next;
      edge.masks.push_back(nu);
      edge.mask_union |= nu;
    }
    for (auto& [target, edge] : by_target) edges_[mu].push_back(std::move(edge));
  }
}

std::vector<State> TransitionGraph::successors(State mu) const {
  require_same_width(width_, mu.width(), "successors");
  std::vector<State> out;
  for (const auto& e : edges_[mu.bits()]) out.emplace_back(width_, e.target);
  return out;
}

TransitionGraph build_graph(const TruthTable& phi) { return TransitionGraph(phi); }

OrbitSet orbit(const TruthTable& phi, const ProgressiveFunction& rho, State mu) {
  return OrbitSet{mu, continuous_run(phi, rho, mu).values()};
}

bool accessible(const TransitionGraph& graph, std::uint32_t mu, std::uint32_t mu_prime) {
  std::vector<bool> seen(graph.state_count(), false);
  std::vector<std::uint32_t> stack{mu};
  seen[mu] = true;
  while (!stack.empty()) {
    const auto cur = stack.back();
    stack.pop_back();
    if (cur == mu_prime) return true;
    for (const auto& e : graph.edges(cur)) {
      if (!seen[e.target]) {
        seen[e.target] = true;
        stack.push_back(e.target);
      }
    }
  }
  return false;
}

bool accessible(const TruthTable& phi, State mu, State mu_prime) {
  require_same_width(phi.width(), mu.width(), "accessible");
  require_same_width(phi.width(), mu_prime.width(), "accessible");
  return accessible(build_graph(phi), mu.bits(), mu_prime.bits());
}

bool is_transitive_exists(const TruthTable& phi) {
  const TransitionGraph graph(phi);
  const auto count = static_cast<std::uint32_t>(graph.state_count());
  // Strongly connected iff state 0 reaches everything and everything reaches 0.
  std::vector<std::vector<std::uint32_t>> reverse(count);
  for (std::uint32_t mu = 0; mu < count; ++mu) {
    for (const auto& e : graph.edges(mu)) reverse[e.target].push_back(mu);
  }
  auto covers_all = [count](auto&& neighbours) {
    std::vector<bool> seen(count, false);
    std::vector<std::uint32_t> stack{0};
    seen[0] = true;
    std::uint32_t visited = 1;
    while (!stack.empty()) {
      const auto cur = stack.back();
      stack.pop_back();
      for (auto next : neighbours(cur)) {
        if (!seen[next]) {
          seen[next] = true;
          ++visited;
          stack.push_back(next);
        }
      }
    }
    return visited == count;
  };
  const bool forward = covers_all([&](std::uint32_t s) {
    std::vector<std::uint32_t> out;
    for (const auto& e : graph.edges(s)) out.push_back(e.target);
    return out;
  });
  return forward && covers_all([&](std::uint32_t s) { return reverse[s]; });
}

namespace {

// Marks the states lying in fair components of the graph with `target`
// removed.
std::vector<bool> fair_states(const TransitionGraph& graph, std::uint32_t target) {
  const auto count = static_cast<std::uint32_t>(graph.state_count());
  const std::uint32_t top = (1u << graph.width()) - 1;
  constexpr std::uint32_t kUnvisited = ~0u;

  // Iterative Tarjan.
  std::vector<std::uint32_t> index(count, kUnvisited), low(count, 0), component(count, kUnvisited);
  std::vector<bool> on_stack(count, false);
  std::vector<std::uint32_t> scc_stack;
  std::uint32_t next_index = 0;
  std::uint32_t components = 0;
  struct Frame {
    std::uint32_t node;
    std::size_t edge;
  };
  for (std::uint32_t root = 0; root < count; ++root) {
    if (root == target || index[root] != kUnvisited) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = next_index++;
    scc_stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& frame = call.back();
      const auto& out = graph.edges(frame.node);
      if (frame.edge < out.size()) {
        const auto next = out[frame.edge++].target;
        if (next == target) continue;
        if (index[next] == kUnvisited) {
          index[next] = low[next] = next_index++;
          scc_stack.push_back(next);
          on_stack[next] = true;
          call.push_back({next, 0});
        } else if (on_stack[next]) {
          low[frame.node] = std::min(low[frame.node], index[next]);
        }
        continue;
      }
      const auto node = frame.node;
      call.pop_back();
      if (!call.empty()) low[call.back().node] = std::min(low[call.back().node], low[node]);
      if (low[node] == index[node]) {
        std::uint32_t member;
        do {
          member = scc_stack.back();
          scc_stack.pop_back();
          on_stack[member] = false;
          component[member] = components;
        } while (member != node);
        ++components;
      }
    }
  }

  std::vector<std::uint32_t> internal_union(components, 0);
  for (std::uint32_t mu = 0; mu < count; ++mu) {
    if (mu == target) continue;
    for (const auto& e : graph.edges(mu)) {
      if (e.target != target && component[e.target] == component[mu]) {
        internal_union[component[mu]] |= e.mask_union;
      }
    }
  }
  std::vector<bool> fair(count, false);
  for (std::uint32_t mu = 0; mu < count; ++mu) {
    fair[mu] = mu != target && internal_union[component[mu]] == top;
  }
  return fair;
}

}  // namespace

bool can_avoid_forever(const TransitionGraph& graph, std::uint32_t mu, std::uint32_t target) {
  if (mu == target) return false;
  const auto fair = fair_states(graph, target);
  std::vector<bool> seen(graph.state_count(), false);
  std::vector<std::uint32_t> stack{mu};
  seen[mu] = true;
  while (!stack.empty()) {
    const auto cur = stack.back();
    stack.pop_back();
    if (fair[cur]) return true;
    for (const auto& e : graph.edges(cur)) {
      if (e.target != target && !seen[e.target]) {
        seen[e.target] = true;
        stack.push_back(e.target);
      }
    }
  }
  return false;
}

bool is_transitive_forall(const TruthTable& phi) {
  const TransitionGraph graph(phi);
  // A fair component avoiding target is reachable from its own members, so
  // tt2 fails exactly when some avoidance graph has a fair component.
  for (std::uint32_t target = 0; target < graph.state_count(); ++target) {
    const auto fair = fair_states(graph, target);
    if (std::find(fair.begin(), fair.end(), true) != fair.end()) return false;
  }
  return true;
}

std::string export_portrait(const TruthTable& phi, const PortraitOptions& options) {
  const unsigned n = phi.width();
  const auto count = static_cast<std::uint32_t>(phi.size());
  std::ostringstream dot;
  dot << "digraph portrait {\n  node [shape=plaintext];\n";
  for (std::uint32_t mu = 0; mu < count; ++mu) {
    const auto image = phi.lookup(mu);
    std::string label;
    for (unsigned i = 0; i < n; ++i) {
      const char bit = ((mu >> i) & 1u) ? '1' : '0';
      if (((image ^ mu) >> i) & 1u) {
        label += '[';
        label += bit;
        label += ']';
      } else {
        label += bit;
      }
    }
    dot << "  s" << mu << " [label=\"" << label << "\"];\n";
  }
  for (std::uint32_t mu = 0; mu < count; ++mu) {
    const auto image = phi.lookup(mu);
    const auto excited = image ^ mu;
    if (excited == 0) {
      if (options.self_loops) dot << "  s" << mu << " -> s" << mu << ";\n";
      continue;
    }
    std::map<std::uint32_t, std::uint32_t> edges;  // successor -> mask
    for (unsigned i = 0; i < n; ++i) {
      const std::uint32_t nu = 1u << i;
      if (excited & nu) edges.emplace(detail::apply_masked(phi, nu, mu), nu);
    }
    edges.emplace(image, count - 1);  // no-op when a single-coordinate edge already hits Phi(mu)
    for (const auto& [target, nu] : edges) {
      dot << "  s" << mu << " -> s" << target << " [label=\"" << to_bits(UpdateMask(n, nu))
          << "\"];\n";
    }
  }
  dot << "}\n";
  return dot.str();
}

}  // namespace asyncbool
