#include "asyncbool/conjugacy.hpp"

#include <algorithm>
#include <thread>

#include "asyncbool/state_graph.hpp"

namespace asyncbool {

namespace {

std::optional<DiagramInstance> first_failing_square(const TruthTable& phi, const TruthTable& psi,
                                                    const StateBijection& h,
                                                    const StateBijection& h_prime) {
  const auto count = static_cast<std::uint32_t>(phi.size());
  for (std::uint32_t nu = 0; nu < count; ++nu) {
    const auto nu_image = h_prime(nu);
    for (std::uint32_t mu = 0; mu < count; ++mu) {
      if (h(detail::apply_masked(phi, nu, mu)) != detail::apply_masked(psi, nu_image, h(mu))) {
        return DiagramInstance{UpdateMask(phi.width(), nu), State(phi.width(), mu)};
      }
    }
  }
  return std::nullopt;
}

void require_omega(const StateBijection& h_prime) {
  if (!is_in_omega(h_prime).verdict) throw UsageError("h' is not in Omega_n");
}

}  // namespace

EquivalenceVerdict check_conjugacy(const TruthTable& phi, const TruthTable& psi,
                                   const ConjugacyWitness& w) {
  require_same_width(phi.width(), psi.width(), "check_conjugacy");
  require_same_width(phi.width(), w.h.width(), "check_conjugacy");
  require_same_width(phi.width(), w.h_prime.width(), "check_conjugacy");
  require_omega(w.h_prime);
  if (auto bad = first_failing_square(phi, psi, w.h, w.h_prime)) {
    return {false, std::nullopt, bad};
  }
  return {true, w, std::nullopt};
}

bool check_conjugacy_runs(const TruthTable& phi, const TruthTable& psi,
                          const ConjugacyWitness& w, std::span<const RunSample> corpus,
                          std::int64_t max_k) {
  require_same_width(phi.width(), psi.width(), "check_conjugacy_runs");
  for (const auto& [mu, rho] : corpus) {
    const auto alpha = rho.masks();
    const auto mapped_alpha = map_sequence(w.h_prime, alpha);
    const State h_mu = w.h(mu);
    for (std::int64_t k = -1; k <= max_k; ++k) {
      if (w.h(discrete_run(phi, alpha, mu, k)) != discrete_run(psi, mapped_alpha, h_mu, k)) {
        return false;
      }
    }

    const auto mapped_rho = map_progressive_function(w.h_prime, rho);
    const Signal x = continuous_run(phi, rho, mu);
    const Signal y = continuous_run(psi, mapped_rho, h_mu);
    std::vector<Time> probes{rho.time_at(0) - 1};
    for (std::size_t k = 0; k <= static_cast<std::size_t>(std::max<std::int64_t>(max_k, 0)); ++k) {
      probes.push_back(rho.time_at(k));
      probes.push_back((rho.time_at(k) + rho.time_at(k + 1)) / 2);
    }
    for (const Signal* s : {&x, &y}) {
      for (const auto& [t, v] : s->breakpoints()) probes.push_back(t);
      if (const auto* tail = std::get_if<PeriodicTail>(&s->tail())) {
        for (const auto& t : s->segment_starts_between(tail->start - 1,
                                                       tail->start + tail->period * 2)) {
          probes.push_back(t);
        }
      }
    }
    for (const auto& t : probes) {
      if (w.h(x(t)) != y(t)) return false;
    }
  }
  return true;
}

std::vector<RunSample> single_step_corpus(unsigned width) {
  const std::uint32_t count = 1u << width;
  std::vector<RunSample> corpus;
  for (std::uint32_t nu = 0; nu < count; ++nu) {
    const LassoMaskSequence alpha({UpdateMask(width, nu)}, {UpdateMask::ones(width)});
    const ProgressiveFunction rho({0, 1}, alpha, 1);
    for (std::uint32_t mu = 0; mu < count; ++mu) corpus.push_back({State(width, mu), rho});
  }
  return corpus;
}

EquivalenceVerdict find_equivalence(const TruthTable& phi, const TruthTable& psi,
                                    const SearchOptions& options) {
  require_same_width(phi.width(), psi.width(), "find_equivalence");
  const unsigned n = phi.width();
  if (n > kMaxSearchWidth) {
    throw CapabilityError("equivalence search supports n <= " + std::to_string(kMaxSearchWidth));
  }
  const auto fix_phi = fixed_points(phi);
  const auto fix_psi = fixed_points(psi);
  if (fix_phi.size() != fix_psi.size()) return {};

  const auto omega = enumerate_omega(n);
  const auto count = static_cast<std::uint32_t>(phi.size());

  // Worker `slot` owns the candidates whose h(0) is congruent to slot.
  auto search_slice = [&](unsigned slot, unsigned stride) -> std::optional<ConjugacyWitness> {
    for (std::uint32_t first = slot; first < count; first += stride) {
      std::vector<std::uint32_t> rest;
      for (std::uint32_t v = 0; v < count; ++v) {
        if (v != first) rest.push_back(v);
      }
      do {
        std::vector<std::uint32_t> fwd{first};
        fwd.insert(fwd.end(), rest.begin(), rest.end());
        const bool carries_fixed = std::all_of(fix_phi.begin(), fix_phi.end(), [&](State mu) {
          return psi.lookup(fwd[mu.bits()]) == fwd[mu.bits()];
        });
        if (!carries_fixed) continue;
        const StateBijection h(n, std::move(fwd));
        for (const auto& h_prime : omega) {
          if (!first_failing_square(phi, psi, h, h_prime)) return ConjugacyWitness{h, h_prime};
        }
      } while (std::next_permutation(rest.begin(), rest.end()));
    }
    return std::nullopt;
  };

  const unsigned jobs = std::clamp(options.jobs, 1u, count);
  std::vector<std::optional<ConjugacyWitness>> found(jobs);
  if (jobs == 1) {
    found[0] = search_slice(0, 1);
  } else {
    std::vector<std::thread> workers;
    for (unsigned slot = 0; slot < jobs; ++slot) {
      workers.emplace_back([&, slot] { found[slot] = search_slice(slot, jobs); });
    }
    for (auto& t : workers) t.join();
  }

  std::optional<ConjugacyWitness> best;
  for (auto& candidate : found) {
    if (!candidate) continue;
    if (!best || std::tie(candidate->h, candidate->h_prime) < std::tie(best->h, best->h_prime)) {
      best = std::move(candidate);
    }
  }
  if (!best) return {};
  return {true, std::move(best), std::nullopt};
}

bool has_nontrivial_conjugate(const TruthTable& phi) {
  const unsigned n = phi.width();
  if (n > kMaxSearchWidth) {
    throw CapabilityError("conjugate search supports n <= " + std::to_string(kMaxSearchWidth));
  }
  const auto omega = enumerate_omega(n);
  const auto count = static_cast<std::uint32_t>(phi.size());
  std::vector<std::uint32_t> fwd(count);
  for (std::uint32_t v = 0; v < count; ++v) fwd[v] = v;
  do {
    const StateBijection h(n, fwd);
    std::vector<std::uint32_t> out(count);
    for (std::uint32_t mu = 0; mu < count; ++mu) out[h(mu)] = h(phi.lookup(mu));
    const TruthTable psi(n, std::move(out));
    if (psi == phi) continue;
    for (const auto& h_prime : omega) {
      if (!first_failing_square(phi, psi, h, h_prime)) return true;
    }
  } while (std::next_permutation(fwd.begin(), fwd.end()));
  return false;
}

InvariantReport check_invariants_transfer(const TruthTable& phi, const TruthTable& psi,
                                          const ConjugacyWitness& w,
                                          std::span<const RunSample> corpus) {
  if (!check_conjugacy(phi, psi, w).equivalent) {
    throw UsageError("check_invariants_transfer: witness does not conjugate phi to psi");
  }
  InvariantReport report;

  std::vector<State> mapped;
  for (const auto& mu : fixed_points(phi)) mapped.push_back(w.h(mu));
  std::sort(mapped.begin(), mapped.end());
  report.fixed_points_mapped = mapped == fixed_points(psi);

  report.periods_preserved = true;
  for (const auto& [mu, rho] : corpus) {
    const auto left = detect_period(continuous_run(phi, rho, mu));
    const auto right =
        detect_period(continuous_run(psi, map_progressive_function(w.h_prime, rho), w.h(mu)));
    const bool same = left.has_value() == right.has_value() &&
                      (!left || left->period == right->period);
    if (!same) report.periods_preserved = false;
  }

  report.transitivity_preserved =
      is_transitive_exists(phi) == is_transitive_exists(psi) &&
      is_transitive_forall(phi) == is_transitive_forall(psi);
  report.identity_dichotomy = phi.is_identity() == psi.is_identity();
  return report;
}

}  // namespace asyncbool
