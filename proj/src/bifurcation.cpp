#include "asyncbool/bifurcation.hpp"

#include <algorithm>
#include <numeric>

#include "asyncbool/state_graph.hpp"

namespace asyncbool {

ParamFamily::ParamFamily(unsigned state_width, unsigned param_width,
                         std::vector<TruthTable> members)
    : state_width_(state_width), param_width_(param_width), members_(std::move(members)) {
  if (param_width == 0 || param_width > kMaxWidth) {
    throw UsageError("parameter width out of range");
  }
  if (members_.size() != (std::size_t{1} << param_width)) {
    throw UsageError("family needs exactly 2^m members");
  }
  for (const auto& t : members_) require_same_width(state_width_, t.width(), "family member");
}

namespace {

void require_searchable(const ParamFamily& f) {
  if (f.state_width() > kMaxSearchWidth || f.param_width() > kMaxParamWidth) {
    throw CapabilityError("bifurcation analysis supports n <= " +
                          std::to_string(kMaxSearchWidth) + " and m <= " +
                          std::to_string(kMaxParamWidth));
  }
}

std::uint32_t find_root(std::vector<std::uint32_t>& parent, std::uint32_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

bool family_structurally_stable(const ParamFamily& f, const SearchOptions& options) {
  require_searchable(f);
  const auto count = static_cast<std::uint32_t>(f.size());
  for (std::uint32_t a = 0; a < count; ++a) {
    for (std::uint32_t b = a + 1; b < count; ++b) {
      if (!find_equivalence(f.member(a), f.member(b), options).equivalent) return false;
    }
  }
  return true;
}

BifurcationDiagram bifurcation_diagram(const ParamFamily& f, const SearchOptions& options) {
  require_searchable(f);
  const auto count = static_cast<std::uint32_t>(f.size());
  std::vector<std::uint32_t> parent(count);
  std::iota(parent.begin(), parent.end(), 0u);

  BifurcationDiagram diagram;
  for (std::uint32_t a = 0; a < count; ++a) {
    for (std::uint32_t b = a + 1; b < count; ++b) {
      auto verdict = find_equivalence(f.member(a), f.member(b), options);
      if (verdict.equivalent) {
        diagram.within_class.push_back({a, b, std::move(*verdict.witness)});
        const auto ra = find_root(parent, a);
        const auto rb = find_root(parent, b);
        parent[std::max(ra, rb)] = std::min(ra, rb);
      } else {
        diagram.inequivalent.emplace_back(a, b);
      }
    }
  }
  for (std::uint32_t lambda = 0; lambda < count; ++lambda) {
    const auto root = find_root(parent, lambda);
    if (root == lambda) {
      diagram.classes.push_back({lambda});
      diagram.representatives.push_back(lambda);
      diagram.portraits.push_back(export_portrait(f.member(lambda)));
    } else {
      const auto pos = std::find(diagram.representatives.begin(), diagram.representatives.end(), root);
      diagram.classes[static_cast<std::size_t>(pos - diagram.representatives.begin())].push_back(lambda);
    }
  }
  return diagram;
}

FixedPointDiagram fixed_point_diagram(const ParamFamily& f) {
  FixedPointDiagram diagram;
  bool any = false;
  for (const auto& member : f.members()) {
    diagram.fixed_points.push_back(fixed_points(member));
    any = any || !diagram.fixed_points.back().empty();
  }
  diagram.uninformative = !any;
  return diagram;
}

std::optional<StateBijection> families_equivalent(const ParamFamily& f, const ParamFamily& g,
                                                  const SearchOptions& options) {
  require_same_width(f.state_width(), g.state_width(), "families_equivalent");
  require_same_width(f.param_width(), g.param_width(), "families_equivalent");
  require_searchable(f);

  auto class_sizes = [&](const ParamFamily& family) {
    std::vector<std::size_t> sizes;
    for (const auto& c : bifurcation_diagram(family, options).classes) sizes.push_back(c.size());
    std::sort(sizes.begin(), sizes.end());
    return sizes;
  };
  if (class_sizes(f) != class_sizes(g)) return std::nullopt;

  const auto count = static_cast<std::uint32_t>(f.size());
  std::vector<std::vector<bool>> related(count, std::vector<bool>(count));
  for (std::uint32_t a = 0; a < count; ++a) {
    for (std::uint32_t b = 0; b < count; ++b) {
      related[a][b] = find_equivalence(f.member(a), g.member(b), options).equivalent;
    }
  }
  std::vector<std::uint32_t> fwd(count);
  std::iota(fwd.begin(), fwd.end(), 0u);
  do {
    bool ok = true;
    for (std::uint32_t lambda = 0; lambda < count && ok; ++lambda) ok = related[lambda][fwd[lambda]];
    if (ok) return StateBijection(f.param_width(), fwd);
  } while (std::next_permutation(fwd.begin(), fwd.end()));
  return std::nullopt;
}

}  // namespace asyncbool
