#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tnopt/stochastic.hpp"

namespace tnopt {

TsallisVisitor::TsallisVisitor(double visit) : visit_(visit) {
  const double pi = std::numbers::pi;
  const double factor2 = std::exp((4.0 - visit) * std::log(visit - 1.0));
  const double factor3 = std::exp((2.0 - visit) * std::log(2.0) / (visit - 1.0));
  factor4_p_ = std::sqrt(pi) * factor2 / (factor3 * (3.0 - visit));
  const double factor5 = 1.0 / (visit - 1.0) - 0.5;
  const double d1 = 2.0 - factor5;
  factor6_ = pi * (1.0 - factor5) / std::sin(pi * (1.0 - factor5)) / std::exp(std::lgamma(d1));
}

double TsallisVisitor::draw(double temperature, Rng& rng) const {
  const double x = rng.normal();
  const double y = rng.normal();
  const double factor1 = std::exp(std::log(temperature) / (visit_ - 1.0));
  const double factor4 = factor4_p_ * factor1;
  const double sigma = std::exp(-(visit_ - 1.0) * std::log(factor6_ / factor4) / (3.0 - visit_));
  const double den = std::exp((visit_ - 1.0) * std::log(std::abs(y)) / (3.0 - visit_));
  return x * sigma / den;
}

double gsa_visit_temperature(double initial_temp, double visit, std::size_t t) {
  const double t1 = std::exp((visit - 1.0) * std::log(2.0)) - 1.0;
  const double t2 = std::exp((visit - 1.0) * std::log(static_cast<double>(t) + 1.0)) - 1.0;
  return initial_temp * t1 / t2;
}

double gsa_acceptance(double delta, double temperature, double accept) {
  if (delta <= 0.0) return 1.0;
  const double base = 1.0 - (1.0 - accept) * delta / temperature;
  if (base <= 0.0) return 0.0;
  return std::min(1.0, std::exp(std::log(base) / (1.0 - accept)));
}

namespace {

constexpr double kTailLimit = 1e8;

double wrap_unit(double x) {
  double w = std::fmod(std::fmod(x, 1.0) + 1.0, 1.0);
  return (w >= 0.0 && w <= 1.0) ? w : 0.0;
}

void validate(const SAConfig& cfg, const TensorNetwork& net) {
  if (!(cfg.visit > 1.0 && cfg.visit <= 3.0)) throw std::invalid_argument("SA visit must lie in (1, 3]");
  if (!(cfg.restart_temp_ratio > 0.0 && cfg.restart_temp_ratio < 1.0)) {
    throw std::invalid_argument("SA restart_temp_ratio must lie in (0, 1)");
  }
  if (!(cfg.initial_temp > 0.0)) throw std::invalid_argument("SA initial_temp must be > 0");
  if (!(cfg.max_full_evaluations >= 1.0)) throw std::invalid_argument("SA budget must be >= 1 evaluation");
  if (net.remaining_edge_count() < 2) throw std::invalid_argument("SA needs at least two edges");
}

// Annealing state: a random-key vector and its decoded sequence.
struct KeyState {
  std::vector<double> keys;
  ContractionSequence sequence;
  Cost cost;
  // states[i]: network before step i; prefix[i]: cost of steps 0..i-1.
  std::vector<TensorNetwork> states;
  std::vector<Cost> prefix;
};

// Energy difference to - from, in multiplications.
double energy_increase(const Cost& from, const Cost& to) {
  if (to < from) return -Cost(from.value() - to.value()).value().convert_to<double>();
  return Cost(to.value() - from.value()).value().convert_to<double>();
}

// Reassigns the sorted key values of `keys` so that they decode to `seq`.
std::vector<double> rekey(const std::vector<double>& keys, const ContractionSequence& seq,
                          std::span<const EdgeId> edge_ids) {
  std::vector<double> sorted = keys;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> position(edge_ids.empty() ? 0 : *std::max_element(edge_ids.begin(), edge_ids.end()) + 1);
  for (std::size_t i = 0; i < edge_ids.size(); ++i) position[edge_ids[i]] = i;
  std::vector<double> out(keys.size());
  for (std::size_t r = 0; r < seq.order.size(); ++r) out[position[seq.order[r]]] = sorted[r];
  return out;
}

class DualAnnealing {
 public:
  DualAnnealing(const TensorNetwork& net, const SAConfig& cfg, EvalBudget& budget, const StopRule& stop)
      : net_(net),
        cfg_(cfg),
        budget_(budget),
        gate_(cfg.max_full_evaluations, stop),
        rng_(cfg.seed),
        visitor_(cfg.visit),
        edge_ids_(net.remaining_edges()) {}

  OptimizerResult run() {
    const double restart_below = cfg_.initial_temp * cfg_.restart_temp_ratio;
    while (true) {
      if (!reset()) break;
      bool exhausted = false;
      for (std::size_t iteration = 0;; ++iteration) {
        const double temperature = gsa_visit_temperature(cfg_.initial_temp, cfg_.visit, iteration + 1);
        if (temperature < restart_below) break;
        if (!markov_chain(iteration, temperature) || !maybe_local_search()) {
          exhausted = true;
          break;
        }
      }
      if (exhausted) break;
    }
    return std::move(best_).finish("sa", budget_);
  }

 private:
  // Evaluates `keys`; false if the budget refused the evaluation.
  bool evaluate(std::vector<double> keys, KeyState& out) {
    if (!gate_.admits(budget_, best_.best())) return false;
    out.keys = std::move(keys);
    out.sequence = decode_keys(out.keys, edge_ids_);
    out.cost = sequence_cost(net_, out.sequence.order, budget_);
    return true;
  }

  // Evaluates a candidate reusing the prefix it shares with current_.
  // Returns false if refused by the gate; sets `complete` false if the
  // evaluation was cut short because the candidate cannot be accepted.
  bool evaluate_incremental(std::vector<double> keys, KeyState& out, const Cost* abort_at, bool& complete) {
    const std::size_t n = edge_ids_.size();
    ContractionSequence seq = decode_keys(keys, edge_ids_);
    std::size_t p = 0;
    while (p < n && seq.order[p] == current_.sequence.order[p]) ++p;
    if (!gate_.admits_steps(budget_, best_.best(), n - p)) return false;
    out.keys = std::move(keys);
    out.sequence = std::move(seq);
    out.states.resize(n + 1);
    out.prefix.resize(n + 1);
    for (std::size_t i = 0; i <= p; ++i) {
      out.states[i] = current_.states[i];
      out.prefix[i] = current_.prefix[i];
    }
    complete = true;
    for (std::size_t i = p; i < n; ++i) {
      out.states[i + 1] = out.states[i];
      out.prefix[i + 1] = out.prefix[i] + out.states[i + 1].contract(out.sequence.order[i]);
      budget_.record_steps();
      if (abort_at && out.prefix[i + 1] >= *abort_at && i + 1 < n) {
        complete = false;
        return true;
      }
    }
    out.cost = out.prefix[n];
    return true;
  }

  void fill_states(KeyState& s) {
    const std::size_t n = edge_ids_.size();
    s.states.assign(n + 1, net_);
    s.prefix.assign(n + 1, Cost{});
    for (std::size_t i = 0; i < n; ++i) {
      s.states[i + 1] = s.states[i];
      s.prefix[i + 1] = s.prefix[i] + s.states[i + 1].contract(s.sequence.order[i]);
    }
  }

  bool reset() {
    std::vector<double> keys(edge_ids_.size());
    for (auto& k : keys) k = rng_.uniform01();
    if (!evaluate(std::move(keys), current_)) return false;
    fill_states(current_);
    if (best_.offer(current_.cost, current_.sequence.order, budget_)) {
      best_state_ = current_;
      improved_ = true;
    }
    return true;
  }

  std::vector<double> visit(std::size_t j, double temperature) {
    const std::size_t dim = edge_ids_.size();
    std::vector<double> x = current_.keys;
    auto displace = [&](std::size_t i) {
      double d = visitor_.draw(temperature, rng_);
      if (!std::isfinite(d) || d > kTailLimit) {
        d = kTailLimit * rng_.uniform01();
      } else if (d < -kTailLimit) {
        d = -kTailLimit * rng_.uniform01();
      }
      x[i] = wrap_unit(x[i] + d);
    };
    if (j < dim) {
      for (std::size_t i = 0; i < dim; ++i) displace(i);
    } else {
      displace(j - dim);
    }
    return x;
  }

  // One Markov chain of length 2E at fixed temperature: E moves displacing
  // every key, then E moves displacing one key each.
  bool markov_chain(std::size_t iteration, double temperature) {
    const double accept_temperature = temperature / static_cast<double>(iteration + 1);
    const std::size_t dim = edge_ids_.size();
    KeyState candidate;
    // Any candidate at least this expensive has zero acceptance probability.
    const double margin = std::ceil(accept_temperature / (1.0 - cfg_.accept));
    for (std::size_t j = 0; j < 2 * dim; ++j) {
      Cost abort_at = current_.cost + Cost(Cost::Integer(margin));
      bool complete = true;
      if (!evaluate_incremental(visit(j, temperature), candidate, &abort_at, complete)) return false;
      if (!complete) {
        rng_.uniform01();
        continue;
      }
      if (candidate.cost < current_.cost) {
        current_ = candidate;
        if (best_.offer(current_.cost, current_.sequence.order, budget_)) {
          best_state_ = current_;
          improved_ = true;
        }
      } else {
        const double p = gsa_acceptance(energy_increase(current_.cost, candidate.cost), accept_temperature, cfg_.accept);
        if (rng_.uniform01() <= p) current_ = candidate;
      }
    }
    return true;
  }

  // Polishes the best state whenever the preceding chain improved it.
  bool maybe_local_search() {
    if (!cfg_.local_search || !improved_) return true;
    improved_ = false;
    auto polished = local_search(net_, best_state_.sequence, budget_, gate_, best_state_.cost);
    if (polished.cost < best_state_.cost) {
      best_.offer(polished.cost, polished.sequence.order, budget_);
      best_state_.keys = rekey(best_state_.keys, polished.sequence, edge_ids_);
      best_state_.sequence = std::move(polished.sequence);
      best_state_.cost = std::move(polished.cost);
      fill_states(best_state_);
      current_ = best_state_;
    }
    return gate_.admits(budget_, best_.best());
  }

  const TensorNetwork& net_;
  const SAConfig& cfg_;
  EvalBudget& budget_;
  EvaluationGate gate_;
  Rng rng_;
  TsallisVisitor visitor_;
  std::vector<EdgeId> edge_ids_;
  KeyState current_;
  KeyState best_state_;
  BestTracker best_;
  bool improved_ = false;
};

}  // namespace

OptimizerResult sa_run(const TensorNetwork& net, const SAConfig& cfg, EvalBudget& budget,
                       const StopRule& stop) {
  validate(cfg, net);
  return DualAnnealing(net, cfg, budget, stop).run();
}

LocalSearchResult local_search(const TensorNetwork& net, ContractionSequence seq, EvalBudget& budget,
                               const EvaluationGate& gate, std::optional<Cost> known_cost) {
  if (auto v = validate_sequence(net, seq)) throw NetworkError("invalid sequence: " + v->message());
  const std::size_t n = seq.size();
  // states[i] is the network before step i; steps[i] the cost of step i.
  std::vector<TensorNetwork> states(n + 1, net);
  std::vector<Cost> steps(n);
  Cost cost;
  for (std::size_t i = 0; i < n; ++i) {
    states[i + 1] = states[i];
    steps[i] = states[i + 1].contract(seq.order[i]);
    cost += steps[i];
  }
  if (known_cost && *known_cost != cost) throw std::logic_error("local_search: known_cost mismatch");
  budget.record_steps(n);
  std::optional<Cost> best = cost;

  // Swapping positions i and i+1 changes only those two step costs: the
  // network after both steps is the same in either order.
  for (;;) {
    std::optional<std::size_t> best_swap;
    Cost best_gain;
    TensorNetwork best_middle;
    Cost best_first, best_second;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (!gate.admits_steps(budget, best, 2)) break;
      TensorNetwork middle = states[i];
      Cost first = middle.contract(seq.order[i + 1]);
      Cost second = middle.step_cost(seq.order[i]);
      budget.record_steps(2);
      const Cost before = steps[i] + steps[i + 1];
      const Cost after = first + second;
      if (after < before) {
        Cost gain(before.value() - after.value());
        if (!best_swap || gain > best_gain) {
          best_swap = i;
          best_gain = std::move(gain);
          best_middle = std::move(middle);
          best_first = std::move(first);
          best_second = std::move(second);
        }
      }
    }
    if (!best_swap) break;
    const auto i = *best_swap;
    std::swap(seq.order[i], seq.order[i + 1]);
    states[i + 1] = std::move(best_middle);
    steps[i] = std::move(best_first);
    steps[i + 1] = std::move(best_second);
    cost = Cost(cost.value() - best_gain.value());
    best = cost;
  }
  return LocalSearchResult{std::move(seq), std::move(cost)};
}

}  // namespace tnopt
