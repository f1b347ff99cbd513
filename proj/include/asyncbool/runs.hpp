#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

#include "asyncbool/boolean_core.hpp"

namespace asyncbool {

// Exact time instant. Rationals keep Seq ordering and period arithmetic exact.
using Time = boost::rational<std::int64_t>;

// Accepts "p/q", "p" or "-p/q".
Time parse_time(std::string_view text);
std::string to_string(const Time& t);

// Finite representation of an infinite mask sequence alpha^0, alpha^1, ...
// as prefix . cycle . cycle . ...
class LassoMaskSequence {
 public:
  LassoMaskSequence(std::vector<UpdateMask> prefix, std::vector<UpdateMask> cycle);

  unsigned width() const { return cycle_.front().width(); }
  const std::vector<UpdateMask>& prefix() const { return prefix_; }
  const std::vector<UpdateMask>& cycle() const { return cycle_; }

  // alpha^k of the represented sequence.
  UpdateMask at(std::size_t k) const;

  // Every coordinate is selected somewhere in the cycle, i.e. infinitely often.
  bool is_progressive() const;

  bool operator==(const LassoMaskSequence&) const = default;

 private:
  std::vector<UpdateMask> prefix_;
  std::vector<UpdateMask> cycle_;
};

// A progressive function rho: mask alpha^k fires at instant t_k. The first
// prefix().size() times belong to the prefix masks, the rest to the cycle
// slots; cycle slot j recurs at times[P + j] + m * period.
class ProgressiveFunction {
 public:
  ProgressiveFunction(std::vector<Time> times, LassoMaskSequence masks, Time period);

  // Full-update masks at t_k = start + k * step.
  static ProgressiveFunction full_update(unsigned width, Time start = 0, Time step = 1);

  unsigned width() const { return masks_.width(); }
  const std::vector<Time>& times() const { return times_; }
  const LassoMaskSequence& masks() const { return masks_; }
  const Time& period() const { return period_; }

  Time time_at(std::size_t k) const;
  UpdateMask mask_at(std::size_t k) const { return masks_.at(k); }

  // Smallest k with t_k > t.
  std::size_t first_index_after(const Time& t) const;

  // rho . chi_(t, inf): drops every mask firing at or before t.
  ProgressiveFunction suffix_after(const Time& t) const;

  bool operator==(const ProgressiveFunction&) const = default;

 private:
  std::vector<Time> times_;
  LassoMaskSequence masks_;
  Time period_;
};

struct ConstantTail {
  bool operator==(const ConstantTail&) const = default;
};

// Values from `start` on repeat with `period`; pattern offsets are relative
// to start, begin at 0 and are strictly increasing below period.
struct PeriodicTail {
  Time start;
  std::vector<std::pair<Time, State>> pattern;
  Time period;
  bool operator==(const PeriodicTail&) const = default;
};

using SignalTail = std::variant<ConstantTail, PeriodicTail>;

// Piecewise-constant x: R -> B^n. Equal to initial() before the first
// breakpoint; a breakpoint (t, s) sets the value s on [t, next breakpoint).
class Signal {
 public:
  Signal(State initial, std::vector<std::pair<Time, State>> breakpoints, SignalTail tail);

  static Signal constant(State value) { return Signal(value, {}, ConstantTail{}); }

  const State& initial() const { return initial_; }
  const std::vector<std::pair<Time, State>>& breakpoints() const { return breakpoints_; }
  const SignalTail& tail() const { return tail_; }
  bool has_constant_tail() const { return std::holds_alternative<ConstantTail>(tail_); }

  State operator()(const Time& t) const;

  // Every value the signal takes, sorted by encoding.
  std::vector<State> values() const;

  // Instants in the open interval (lo, hi) where a new segment begins.
  std::vector<Time> segment_starts_between(const Time& lo, const Time& hi) const;

  bool operator==(const Signal&) const = default;

 private:
  State initial_;
  std::vector<std::pair<Time, State>> breakpoints_;
  SignalTail tail_;
};

State eval_signal(const Signal& x, const Time& t);

// x(inf - 0), present iff the tail is constant.
std::optional<State> final_value(const Signal& x);

struct PeriodWitness {
  Time period;   // minimal T0
  Time t_prime;  // earliest breakpoint-aligned t' with x(t) = x(t + T0) for t >= t'
  bool operator==(const PeriodWitness&) const = default;
};

std::optional<PeriodWitness> detect_period(const Signal& x);

// Phi-hat^alpha(k, mu); k = -1 yields mu.
State discrete_run(const TruthTable& phi, const LassoMaskSequence& alpha, State mu,
                   std::int64_t k);

// Phi^rho(., mu) with an exact tail classification.
Signal continuous_run(const TruthTable& phi, const ProgressiveFunction& rho, State mu);

// Removes all-zero masks, mapping rho to its image in Pi-hat_n.
LassoMaskSequence canonical_surjection(const ProgressiveFunction& rho);

// Self-test: continuous_run evaluated at rho's instants matches the discrete
// run over rho's (unstripped) mask sequence.
bool runs_agree(const TruthTable& phi, const ProgressiveFunction& rho, State mu);

}  // namespace asyncbool
