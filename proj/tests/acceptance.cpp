// Acceptance suite: one line per criterion, exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "asyncbool/bifurcation.hpp"
#include "asyncbool/cli.hpp"
#include "asyncbool/conjugacy.hpp"
#include "asyncbool/state_graph.hpp"
#include "asyncbool/text_format.hpp"
#include "test_support.hpp"

using namespace asyncbool;
using namespace testing_support;

namespace {

// Raised by require() with a description of the first violated check.
struct Failure {
  std::string what;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

std::vector<RunSample> corpus_for(unsigned n, const std::vector<ProgressiveFunction>& rhos) {
  std::vector<RunSample> out;
  for (const auto& rho : rhos) {
    for (std::uint32_t mu = 0; mu < (1u << n); ++mu) out.push_back({State(n, mu), rho});
  }
  return out;
}

// 1: Phi(mu) = mu, every graph successor is mu, and mu in every NC_i agree,
// and orbits over a 50-element corpus are trivial exactly at fixed points.
std::string fixed_point_characterisations() {
  const auto corpus = rho_corpus(2, 50, 1001);
  for (std::uint64_t idx = 0; idx < 256; ++idx) {
    const auto phi = table_from_index(2, idx);
    const auto g = build_graph(phi);
    for (std::uint32_t mu = 0; mu < 4; ++mu) {
      const State s(2, mu);
      const bool fixed = phi(s) == s;
      bool in_nullclins = true;
      for (unsigned i = 1; i <= 2; ++i) {
        const auto nc = nullclin(phi, i);
        in_nullclins = in_nullclins && std::find(nc.begin(), nc.end(), s) != nc.end();
      }
      require(fixed == (g.successors(s) == std::vector<State>{s}), "graph characterisation, table " + std::to_string(idx));
      require(fixed == in_nullclins, "nullclin characterisation, table " + std::to_string(idx));
      require(fixed == is_fixed_point(phi, s), "is_fixed_point, table " + std::to_string(idx));
      for (const auto& rho : corpus) {
        const bool trivial = orbit(phi, rho, s).reachable == std::vector<State>{s};
        require(fixed == trivial, "orbit characterisation, table " + std::to_string(idx));
      }
    }
  }
  return "256 tables x 4 states, 50 progressive functions";
}

// 2: every constant tail is a fixed point.
std::string final_values_are_fixed() {
  const auto corpus = rho_corpus(2, 50, 1001);
  std::size_t constant = 0;
  for (std::uint64_t idx = 0; idx < 256; ++idx) {
    const auto phi = table_from_index(2, idx);
    for (std::uint32_t mu = 0; mu < 4; ++mu) {
      for (const auto& rho : corpus) {
        const auto v = final_value(continuous_run(phi, rho, State(2, mu)));
        if (!v) continue;
        ++constant;
        require(phi(*v) == *v, "final value not fixed, table " + std::to_string(idx));
      }
    }
  }
  return std::to_string(constant) + " constant-tail runs checked";
}

// 3: once a run reaches a fixed point it stays there.
std::string accessible_fixed_points_are_final() {
  const auto corpus = rho_corpus(2, 50, 1001);
  std::size_t hits = 0;
  for (std::uint64_t idx = 0; idx < 256; ++idx) {
    const auto phi = table_from_index(2, idx);
    for (std::uint32_t mu = 0; mu < 4; ++mu) {
      for (const auto& rho : corpus) {
        const Signal x = continuous_run(phi, rho, State(2, mu));
        for (const auto& [t, s] : x.breakpoints()) {
          if (phi(s) != s) continue;
          ++hits;
          for (int k = 0; k < 10; ++k) {
            const Time probe = t + Time(k * k, 3) + Time(k, 7);
            require(x(probe) == s, "left fixed point, table " + std::to_string(idx));
          }
          break;
        }
      }
    }
  }
  require(hits > 0, "no run reached a fixed point at a breakpoint");
  return std::to_string(hits) + " runs reaching a fixed point, 10 probes each";
}

// 4: tt2 decided by fair components agrees with lasso enumeration.
std::string transitivity_against_oracle() {
  const LassoTransitivityOracle oracle(2, 8);
  std::vector<std::uint64_t> separating;
  for (std::uint64_t idx = 0; idx < 256; ++idx) {
    const auto phi = table_from_index(2, idx);
    const bool tt1 = is_transitive_exists(phi);
    const bool tt2 = is_transitive_forall(phi);
    require(tt1 == oracle_transitive_exists(phi), "tt1 oracle mismatch, table " + std::to_string(idx));
    require(tt2 == oracle.transitive_forall(phi), "tt2 oracle mismatch, table " + std::to_string(idx));
    require(!tt2 || tt1, "tt2 without tt1, table " + std::to_string(idx));
    require(!tt1 || fixed_points(phi).empty(), "transitive with a fixed point, table " + std::to_string(idx));
    if (tt1 && !tt2) separating.push_back(idx);
  }
  require(!separating.empty(), "no function separates tt1 from tt2");
  const auto neg = TruthTable::negation(2);
  require(is_transitive_exists(neg) && !is_transitive_forall(neg), "negation on B^2 does not separate");
  std::ostringstream note;
  note << separating.size() << " separating functions, e.g. negation on B^2 (" << oracle.cycle_count()
       << " oracle cycles)";
  return note.str();
}

// 5: sizes and group laws of Omega_n.
std::string omega_group() {
  // frozen from the tuple oracle over all 6! middle-layer permutations of B^3
  constexpr std::size_t kOmega3Size = 6;
  const std::size_t expected[] = {0, 1, 2, kOmega3Size};
  for (unsigned n = 1; n <= 3; ++n) {
    const auto group = enumerate_omega(n);
    require(group.size() == expected[n], "|Omega_" + std::to_string(n) + "| = " + std::to_string(group.size()));
    std::vector<std::uint32_t> perm(1u << n);
    for (std::uint32_t k = 0; k < perm.size(); ++k) perm[k] = k;
    std::size_t by_tuples = 0;
    do by_tuples += omega_by_tuples(StateBijection(n, perm), std::max(2u, n));
    while (std::next_permutation(perm.begin(), perm.end()));
    require(by_tuples == group.size(), "tuple oracle disagrees at n=" + std::to_string(n));
    const std::set<StateBijection> members(group.begin(), group.end());
    require(members.count(StateBijection::identity(n)) == 1, "identity missing");
    for (const auto& a : group) {
      require(members.count(invert(a)) == 1, "not closed under inverse");
      for (const auto& b : group) require(members.count(compose(a, b)) == 1, "not closed under composition");
    }
  }
  require(enumerate_omega(2)[1] == swap2(), "Omega_2 is not {identity, swap}");
  return "|Omega_1|=1 |Omega_2|=2 |Omega_3|=6";
}

// 6: the four-cycle conjugacy with its witness.
std::string four_cycle_conjugacy() {
  const auto phi = four_cycle_phi();
  const auto psi = four_cycle_psi();
  const ConjugacyWitness w{four_cycle_h(), swap2()};
  // the tabulated squares for nu in {(1,1), (0,1), (1,0)}: (nu, mu, Phi^nu(mu), h(mu), Psi^{h'(nu)}(h(mu)))
  const char* squares[][5] = {
      {"11", "00", "01", "11", "01"}, {"11", "01", "10", "01", "10"}, {"11", "10", "11", "10", "00"},
      {"11", "11", "00", "00", "11"}, {"01", "00", "01", "11", "01"}, {"01", "01", "00", "01", "11"},
      {"01", "10", "11", "10", "00"}, {"01", "11", "10", "00", "10"}, {"10", "00", "00", "11", "11"},
      {"10", "01", "11", "01", "00"}, {"10", "10", "10", "10", "10"}, {"10", "11", "01", "00", "01"},
  };
  for (const auto& s : squares) {
    const auto nu = mask_from_bits(s[0]);
    const auto mu = state_from_bits(s[1]);
    require(apply_masked(phi, nu, mu) == state_from_bits(s[2]), std::string("Phi square ") + s[0] + "/" + s[1]);
    require(w.h(mu) == state_from_bits(s[3]), std::string("h square ") + s[0] + "/" + s[1]);
    require(apply_masked(psi, w.h_prime(nu), w.h(mu)) == state_from_bits(s[4]),
            std::string("Psi square ") + s[0] + "/" + s[1]);
  }
  require(check_conjugacy(phi, psi, w).equivalent, "check_conjugacy rejects the four-cycle witness");
  std::vector<RunSample> corpus;
  std::mt19937_64 rng(1006);
  corpus.push_back({state_from_bits("00"), ProgressiveFunction::full_update(2)});
  while (corpus.size() < 20) corpus.push_back({State(2, static_cast<std::uint32_t>(rng() % 4)), random_rho(rng, 2)});
  require(check_conjugacy_runs(phi, psi, w, corpus, 8), "run-level conjugacy fails");
  return "12 tabulated squares, 20 runs with k <= 8";
}

// 7: the diagram check and the run check give the same verdict.
std::string diagram_and_run_checks_agree() {
  std::mt19937_64 rng(1007);
  const auto omega = enumerate_omega(2);
  auto corpus = single_step_corpus(2);
  for (const auto& s : corpus_for(2, rho_corpus(2, 5, 1077))) corpus.push_back(s);
  int conjugate = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto phi = random_table(rng, 2);
    const ConjugacyWitness w{random_bijection(rng, 2), omega[rng() % omega.size()]};
    TruthTable psi = random_table(rng, 2);
    if (trial % 2 == 0) {
      std::vector<std::uint32_t> out(4);
      for (std::uint32_t mu = 0; mu < 4; ++mu) out[w.h(mu)] = w.h(phi.lookup(mu));
      psi = TruthTable(2, out);
    }
    const bool diagram = check_conjugacy(phi, psi, w).equivalent;
    require(diagram == check_conjugacy_runs(phi, psi, w, corpus, 8), "verdicts differ at trial " + std::to_string(trial));
    conjugate += diagram;
  }
  return "100 candidates, " + std::to_string(conjugate) + " conjugate";
}

// 8: invariants transfer across every conjugate pair on B^2.
std::string invariants_over_sweep() {
  const auto corpus = corpus_for(2, rho_corpus(2, 6, 1008));
  std::size_t pairs = 0;
  for (std::uint64_t a = 0; a < 256; ++a) {
    const auto phi = table_from_index(2, a);
    for (std::uint64_t b = 0; b < 256; ++b) {
      const auto psi = table_from_index(2, b);
      const auto v = find_equivalence(phi, psi);
      if (!v.equivalent) continue;
      ++pairs;
      const auto report = check_invariants_transfer(phi, psi, *v.witness, corpus);
      const std::string where = " for tables " + std::to_string(a) + ", " + std::to_string(b);
      require(report.fixed_points_mapped, "fixed points not mapped" + where);
      require(report.periods_preserved, "periods differ" + where);
      require(report.transitivity_preserved, "transitivity differs" + where);
      require(report.identity_dichotomy, "identity dichotomy fails" + where);
    }
  }
  return std::to_string(pairs) + " conjugate ordered pairs out of 65536";
}

// 9: bifurcation examples.
std::string bifurcation_examples() {
  const auto read_family = [](const char* name) { return parse_family(slurp(data_path(name))); };
  const auto id_neg = read_family("identity_negation.fam");
  require(!family_structurally_stable(id_neg), "identity/negation reported stable");
  require(bifurcation_diagram(id_neg).classes.size() == 2, "identity/negation does not give 2 classes");
  const auto dup = read_family("duplicated.fam");
  require(family_structurally_stable(dup), "duplicated family reported unstable");
  require(bifurcation_diagram(dup).classes.size() == 1, "duplicated family does not give 1 class");
  const auto free = read_family("fixed_point_free.fam");
  require(!family_structurally_stable(free), "fixed-point-free family reported stable");
  require(fixed_point_diagram(free).uninformative, "fixed-point diagram not flagged uninformative");
  std::ostringstream out, err;
  cli::run({"bifurcation", data_path("fixed_point_free.fam"), "--format", "text"}, out, err);
  require(out.str().find("note: no member has fixed points") != std::string::npos, "CLI note missing");
  return "2 classes / 1 class / fixed-point-free bifurcation with note";
}

// 10: byte-identical CLI output and parse/render round trips.
std::string cli_determinism() {
  const std::vector<std::vector<std::string>> commands{
      {"fixed-points", data_path("two_fixed_points.tt")},
      {"nullclins", data_path("two_fixed_points.tt"), "--format", "json"},
      {"portrait", data_path("two_fixed_points.tt")},
      {"run", data_path("two_fixed_points.tt"), "--mu", "01", "--rho-file", data_path("alternating.rho"), "--trace"},
      {"reach", data_path("two_fixed_points.tt"), "--from", "01", "--to", "00"},
      {"transitive", "--mode", "forall", data_path("negation2.tt")},
      {"omega", "--enumerate", "3"},
      {"conjugate", "--search", data_path("four_cycle_phi.tt"), data_path("four_cycle_psi.tt"), "--jobs", "4"},
      {"bifurcation", data_path("fixed_point_free.fam")},
      {"family-equiv", data_path("identity_negation.fam"), data_path("negation_identity.fam")},
  };
  for (const auto& c : commands) {
    std::string first;
    for (int rep = 0; rep < 3; ++rep) {
      std::ostringstream out, err;
      cli::run(c, out, err);
      if (rep == 0) first = out.str();
      require(out.str() == first, "output differs for " + c[0]);
    }
  }
  for (std::uint64_t idx = 0; idx < 256; ++idx) {
    const auto phi = table_from_index(2, idx);
    require(parse_truth_table(render_truth_table(phi)) == phi, "round trip fails, table " + std::to_string(idx));
  }
  return "10 subcommands x 3 runs, 256 round trips";
}

struct Criterion {
  int number;
  const char* title;
  double limit_seconds;  // 0: no limit
  std::function<std::string()> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "fixed-point characterisations agree", 5, fixed_point_characterisations},
      {2, "final values are fixed points", 10, final_values_are_fixed},
      {3, "reached fixed points are final", 0, accessible_fixed_points_are_final},
      {4, "tt2 matches lasso oracle; tt2 => tt1 => no fixed points", 60, transitivity_against_oracle},
      {5, "Omega_n sizes and group laws", 0, omega_group},
      {6, "four-cycle conjugacy witness", 0, four_cycle_conjugacy},
      {7, "diagram and run conjugacy checks agree", 0, diagram_and_run_checks_agree},
      {8, "invariants transfer across all conjugate pairs", 300, invariants_over_sweep},
      {9, "bifurcation examples", 0, bifurcation_examples},
      {10, "CLI determinism and round trip", 0, cli_determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = c.body();
    } catch (const Failure& f) {
      ok = false;
      detail = f.what;
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && c.limit_seconds > 0 && seconds > c.limit_seconds) {
      ok = false;
      detail += " (over the " + std::to_string(static_cast<int>(c.limit_seconds)) + " s limit)";
    }
    failures += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << c.number << "  " << c.title << "  ["
              << std::fixed << std::setprecision(2) << seconds << " s]  " << detail << "\n";
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
