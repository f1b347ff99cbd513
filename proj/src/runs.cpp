#include "asyncbool/runs.hpp"

#include <algorithm>
#include <charconv>

namespace asyncbool {

namespace {

std::int64_t floor_to_int(const Time& q) {
  auto num = q.numerator();
  auto den = q.denominator();  // always > 0
  auto quot = num / den;
  if (num % den != 0 && num < 0) --quot;
  return quot;
}

// a mod b in [0, b) for b > 0.
Time floor_mod(const Time& a, const Time& b) { return a - Time(floor_to_int(a / b)) * b; }

std::int64_t parse_int(std::string_view text) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw UsageError("invalid integer '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

Time parse_time(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Time(parse_int(text));
  auto den = parse_int(text.substr(slash + 1));
  if (den <= 0) throw UsageError("time denominator must be positive");
  return Time(parse_int(text.substr(0, slash)), den);
}

std::string to_string(const Time& t) {
  if (t.denominator() == 1) return std::to_string(t.numerator());
  return std::to_string(t.numerator()) + "/" + std::to_string(t.denominator());
}

// ---------------------------------------------------------------------------

LassoMaskSequence::LassoMaskSequence(std::vector<UpdateMask> prefix, std::vector<UpdateMask> cycle)
    : prefix_(std::move(prefix)), cycle_(std::move(cycle)) {
  if (cycle_.empty()) throw UsageError("mask sequence cycle must be nonempty");
  for (const auto& m : prefix_) require_same_width(width(), m.width(), "mask sequence");
  for (const auto& m : cycle_) require_same_width(width(), m.width(), "mask sequence");
}

UpdateMask LassoMaskSequence::at(std::size_t k) const {
  if (k < prefix_.size()) return prefix_[k];
  return cycle_[(k - prefix_.size()) % cycle_.size()];
}

bool LassoMaskSequence::is_progressive() const {
  std::uint32_t seen = 0;
  for (const auto& m : cycle_) seen |= m.bits();
  return seen == UpdateMask::ones(width()).bits();
}

// ---------------------------------------------------------------------------

ProgressiveFunction::ProgressiveFunction(std::vector<Time> times, LassoMaskSequence masks,
                                         Time period)
    : times_(std::move(times)), masks_(std::move(masks)), period_(period) {
  const auto expected = masks_.prefix().size() + masks_.cycle().size();
  if (times_.size() != expected) {
    throw UsageError("progressive function needs one time per prefix mask and cycle slot (" +
                     std::to_string(expected) + "), got " + std::to_string(times_.size()));
  }
  for (std::size_t k = 1; k < times_.size(); ++k) {
    if (!(times_[k - 1] < times_[k])) throw UsageError("times must be strictly increasing");
  }
  if (period_ <= Time(0)) throw UsageError("period must be positive");
  if (!(times_[masks_.prefix().size()] + period_ > times_.back())) {
    throw UsageError("period too short: cycle repeat would not be strictly increasing");
  }
  if (!masks_.is_progressive()) {
    throw UsageError("cycle not progressive: some coordinate is never selected");
  }
}

ProgressiveFunction ProgressiveFunction::full_update(unsigned width, Time start, Time step) {
  return ProgressiveFunction({start}, LassoMaskSequence({}, {UpdateMask::ones(width)}), step);
}

Time ProgressiveFunction::time_at(std::size_t k) const {
  const auto p = masks_.prefix().size();
  if (k < p) return times_[k];
  const auto c = masks_.cycle().size();
  const auto r = k - p;
  return times_[p + r % c] + Time(static_cast<std::int64_t>(r / c)) * period_;
}

std::size_t ProgressiveFunction::first_index_after(const Time& t) const {
  const auto p = masks_.prefix().size();
  for (std::size_t k = 0; k < p; ++k) {
    if (times_[k] > t) return k;
  }
  const auto c = masks_.cycle().size();
  std::int64_t m = std::max<std::int64_t>(0, floor_to_int((t - times_[p]) / period_));
  for (;; ++m) {
    for (std::size_t j = 0; j < c; ++j) {
      if (times_[p + j] + Time(m) * period_ > t) return p + static_cast<std::size_t>(m) * c + j;
    }
  }
}

ProgressiveFunction ProgressiveFunction::suffix_after(const Time& t) const {
  const auto k = first_index_after(t);
  const auto& prefix = masks_.prefix();
  const auto& cycle = masks_.cycle();
  const auto p = prefix.size();
  if (k <= p) {
    std::vector<UpdateMask> new_prefix(prefix.begin() + static_cast<std::ptrdiff_t>(k),
                                       prefix.end());
    std::vector<Time> new_times(times_.begin() + static_cast<std::ptrdiff_t>(k), times_.end());
    return ProgressiveFunction(std::move(new_times),
                               LassoMaskSequence(std::move(new_prefix), cycle), period_);
  }
  const auto c = cycle.size();
  const auto r = k - p;
  const auto m = static_cast<std::int64_t>(r / c);
  const auto j = r % c;
  std::vector<UpdateMask> rotated;
  std::vector<Time> new_times;
  for (std::size_t i = 0; i < c; ++i) {
    const auto slot = (j + i) % c;
    const auto lap = m + (slot < j ? 1 : 0);
    rotated.push_back(cycle[slot]);
    new_times.push_back(times_[p + slot] + Time(lap) * period_);
  }
  return ProgressiveFunction(std::move(new_times), LassoMaskSequence({}, std::move(rotated)),
                             period_);
}

// ---------------------------------------------------------------------------

Signal::Signal(State initial, std::vector<std::pair<Time, State>> breakpoints, SignalTail tail)
    : initial_(initial), breakpoints_(std::move(breakpoints)), tail_(std::move(tail)) {
  for (std::size_t k = 0; k < breakpoints_.size(); ++k) {
    require_same_width(initial_.width(), breakpoints_[k].second.width(), "signal");
    if (k > 0 && !(breakpoints_[k - 1].first < breakpoints_[k].first)) {
      throw UsageError("signal breakpoints must be strictly increasing");
    }
  }
  if (auto* periodic = std::get_if<PeriodicTail>(&tail_)) {
    const auto& pattern = periodic->pattern;
    if (periodic->period <= Time(0)) throw UsageError("signal period must be positive");
    if (pattern.empty() || pattern.front().first != Time(0)) {
      throw UsageError("periodic pattern must start at offset 0");
    }
    std::vector<std::uint32_t> distinct;
    for (std::size_t k = 0; k < pattern.size(); ++k) {
      require_same_width(initial_.width(), pattern[k].second.width(), "signal");
      if (k > 0 && !(pattern[k - 1].first < pattern[k].first)) {
        throw UsageError("periodic pattern offsets must be strictly increasing");
      }
      if (pattern[k].first >= periodic->period) {
        throw UsageError("periodic pattern offset must be below the period");
      }
      distinct.push_back(pattern[k].second.bits());
    }
    std::sort(distinct.begin(), distinct.end());
    if (std::unique(distinct.begin(), distinct.end()) - distinct.begin() < 2) {
      throw UsageError("periodic tail needs two distinct states; use a constant tail");
    }
    if (!breakpoints_.empty() && !(breakpoints_.back().first < periodic->start)) {
      throw UsageError("breakpoints must precede the periodic tail");
    }
  }
}

State Signal::operator()(const Time& t) const {
  if (const auto* periodic = std::get_if<PeriodicTail>(&tail_); periodic && t >= periodic->start) {
    const Time r = floor_mod(t - periodic->start, periodic->period);
    const auto& pattern = periodic->pattern;
    auto it = std::upper_bound(pattern.begin(), pattern.end(), r,
                               [](const Time& v, const auto& e) { return v < e.first; });
    return std::prev(it)->second;
  }
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t,
                             [](const Time& v, const auto& e) { return v < e.first; });
  if (it == breakpoints_.begin()) return initial_;
  return std::prev(it)->second;
}

std::vector<State> Signal::values() const {
  std::vector<State> out{initial_};
  for (const auto& [t, s] : breakpoints_) out.push_back(s);
  if (const auto* periodic = std::get_if<PeriodicTail>(&tail_)) {
    for (const auto& [t, s] : periodic->pattern) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Time> Signal::segment_starts_between(const Time& lo, const Time& hi) const {
  std::vector<Time> out;
  for (const auto& [t, s] : breakpoints_) {
    if (lo < t && t < hi) out.push_back(t);
  }
  if (const auto* periodic = std::get_if<PeriodicTail>(&tail_)) {
    std::int64_t m = std::max<std::int64_t>(0, floor_to_int((lo - periodic->start) / periodic->period));
    for (;; ++m) {
      const Time base = periodic->start + Time(m) * periodic->period;
      if (base >= hi) break;
      for (const auto& [off, s] : periodic->pattern) {
        const Time t = base + off;
        if (lo < t && t < hi) out.push_back(t);
      }
    }
  }
  return out;
}

State eval_signal(const Signal& x, const Time& t) { return x(t); }

std::optional<State> final_value(const Signal& x) {
  if (!x.has_constant_tail()) return std::nullopt;
  if (x.breakpoints().empty()) return x.initial();
  return x.breakpoints().back().second;
}

namespace {

// True iff x equals v everywhere on [lo, hi).
bool constant_on(const Signal& x, const Time& lo, const Time& hi, State v) {
  if (x(lo) != v) return false;
  for (const auto& t : x.segment_starts_between(lo, hi)) {
    if (x(t) != v) return false;
  }
  return true;
}

}  // namespace

std::optional<PeriodWitness> detect_period(const Signal& x) {
  const auto* periodic = std::get_if<PeriodicTail>(&x.tail());
  if (periodic == nullptr) return std::nullopt;

  // Keep only real value changes, compared cyclically, so that any period of
  // the tail maps change points onto change points.
  const auto& pattern = periodic->pattern;
  std::vector<std::pair<Time, State>> changes;
  for (std::size_t k = 0; k < pattern.size(); ++k) {
    const auto& prev = pattern[(k + pattern.size() - 1) % pattern.size()];
    if (prev.second != pattern[k].second) changes.push_back(pattern[k]);
  }
  const Time full = periodic->period;
  const auto count = changes.size();
  Time best = full;
  for (std::size_t shift = 1; shift < count; ++shift) {
    if (count % shift != 0) continue;
    const Time step = floor_mod(changes[shift].first - changes[0].first, full);
    if (step * Time(static_cast<std::int64_t>(count / shift)) != full) continue;
    bool ok = true;
    for (std::size_t j = 0; j < count && ok; ++j) {
      const auto& a = changes[j];
      const auto& b = changes[(j + shift) % count];
      ok = a.second == b.second && floor_mod(b.first - a.first, full) == step;
    }
    if (ok) {
      best = step;
      break;
    }
  }

  Time t_prime = periodic->start;
  const auto& bps = x.breakpoints();
  for (auto k = bps.size(); k-- > 0;) {
    const Time seg_end = (k + 1 < bps.size()) ? bps[k + 1].first : periodic->start;
    if (!constant_on(x, bps[k].first + best, seg_end + best, bps[k].second)) break;
    t_prime = bps[k].first;
  }
  return PeriodWitness{best, t_prime};
}

// ---------------------------------------------------------------------------

State discrete_run(const TruthTable& phi, const LassoMaskSequence& alpha, State mu,
                   std::int64_t k) {
  if (k < -1) throw UsageError("discrete_run: k must be >= -1");
  require_same_width(phi.width(), alpha.width(), "discrete_run");
  require_same_width(phi.width(), mu.width(), "discrete_run");
  for (std::int64_t step = 0; step <= k; ++step) {
    mu = apply_masked(phi, alpha.at(static_cast<std::size_t>(step)), mu);
  }
  return mu;
}

Signal continuous_run(const TruthTable& phi, const ProgressiveFunction& rho, State mu) {
  require_same_width(phi.width(), rho.width(), "continuous_run");
  require_same_width(phi.width(), mu.width(), "continuous_run");
  const unsigned n = phi.width();
  const std::size_t space = std::size_t{1} << n;
  const auto p = rho.masks().prefix().size();
  const auto c = rho.masks().cycle().size();

  // Inside the cycle the pair (cycle slot, current state) determines the rest
  // of the run, so the first repeated pair closes the lasso.
  std::vector<std::size_t> seen(c * space, 0);
  std::vector<std::uint32_t> states;
  std::uint32_t cur = mu.bits();
  std::size_t enter = 0;
  std::size_t close = 0;
  for (std::size_t k = 0;; ++k) {
    if (k >= p) {
      auto& slot = seen[((k - p) % c) * space + cur];
      if (slot != 0) {
        enter = slot - 1;
        close = k;
        break;
      }
      slot = k + 1;
    }
    cur = detail::apply_masked(phi, rho.mask_at(k).bits(), cur);
    states.push_back(cur);
  }

  std::vector<std::pair<Time, State>> bps;
  std::uint32_t last = mu.bits();
  for (std::size_t k = 0; k < enter; ++k) {
    if (states[k] != last) {
      bps.emplace_back(rho.time_at(k), State(n, states[k]));
      last = states[k];
    }
  }
  const bool constant = std::all_of(states.begin() + static_cast<std::ptrdiff_t>(enter),
                                    states.begin() + static_cast<std::ptrdiff_t>(close),
                                    [&](auto s) { return s == states[enter]; });
  if (constant) {
    if (states[enter] != last) bps.emplace_back(rho.time_at(enter), State(n, states[enter]));
    return Signal(mu, std::move(bps), ConstantTail{});
  }
  PeriodicTail tail{rho.time_at(enter), {}, rho.time_at(close) - rho.time_at(enter)};
  for (std::size_t k = enter; k < close; ++k) {
    if (k == enter || states[k] != states[k - 1]) {
      tail.pattern.emplace_back(rho.time_at(k) - tail.start, State(n, states[k]));
    }
  }
  return Signal(mu, std::move(bps), std::move(tail));
}

LassoMaskSequence canonical_surjection(const ProgressiveFunction& rho) {
  auto strip = [](const std::vector<UpdateMask>& in) {
    std::vector<UpdateMask> out;
    std::copy_if(in.begin(), in.end(), std::back_inserter(out),
                 [](const UpdateMask& m) { return !m.is_zero(); });
    return out;
  };
  return LassoMaskSequence(strip(rho.masks().prefix()), strip(rho.masks().cycle()));
}

bool runs_agree(const TruthTable& phi, const ProgressiveFunction& rho, State mu) {
  const Signal x = continuous_run(phi, rho, mu);
  const auto& alpha = rho.masks();
  if (x(rho.time_at(0) - 1) != mu) return false;
  // Enough steps to pass the lasso entry and one full state period after it.
  const std::size_t horizon = alpha.prefix().size() +
                              alpha.cycle().size() * ((std::size_t{2} << phi.width()) + 1);
  State expected = mu;
  for (std::size_t k = 0; k < horizon; ++k) {
    expected = apply_masked(phi, alpha.at(k), expected);
    const Time t = rho.time_at(k);
    const Time mid = (t + rho.time_at(k + 1)) / 2;
    if (x(t) != expected || x(mid) != expected) return false;
  }
  return true;
}

}  // namespace asyncbool
