#include "dialectic/sat.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace dialectic::sat {

Solver::Solver(std::size_t num_vars, Options options)
    : num_vars_(num_vars),
      options_(options),
      watches_(2 * num_vars),
      assigns_(num_vars, -1),
      level_(num_vars, 0),
      reason_(num_vars, kNoReason),
      order_(num_vars),
      position_(num_vars),
      polarity_(num_vars, false),
      seen_(num_vars, 0) {
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  if (options_.seed) {
    std::mt19937_64 rng(*options_.seed);
    std::shuffle(order_.begin(), order_.end(), rng);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t v = 0; v < num_vars; ++v) polarity_[v] = coin(rng);
  }
  for (std::size_t i = 0; i < num_vars; ++i) position_[order_[i]] = i;
}

Solver::Lit Solver::to_lit(Literal l) const {
  const auto v = static_cast<std::size_t>(l < 0 ? -static_cast<long long>(l) : l);
  if (l == 0 || v > num_vars_) throw std::out_of_range("literal " + std::to_string(l) + " out of range");
  return static_cast<Lit>(2 * (v - 1) + (l < 0 ? 1 : 0));
}

void Solver::add_clause(const Clause& clause) {
  if (unsat_) return;
  cancel_until(0);
  std::vector<Lit> lits;
  lits.reserve(clause.size());
  for (Literal l : clause) lits.push_back(to_lit(l));
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  std::vector<Lit> kept;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    if (i + 1 < lits.size() && lits[i + 1] == negate(lits[i])) return;  // tautology
    const int v = value(lits[i]);
    if (v == 1) return;  // satisfied at level 0
    if (v == 0) continue;
    kept.push_back(lits[i]);
  }
  if (kept.empty()) {
    unsat_ = true;
    return;
  }
  if (kept.size() == 1) {
    enqueue(kept[0], kNoReason);
    if (propagate() != kNoReason) unsat_ = true;
    return;
  }
  attach(std::move(kept));
}

int Solver::attach(std::vector<Lit> lits) {
  const int index = static_cast<int>(clauses_.size());
  watches_[lits[0]].push_back(index);
  watches_[lits[1]].push_back(index);
  clauses_.push_back(std::move(lits));
  return index;
}

void Solver::enqueue(Lit l, int reason) {
  const std::size_t v = var_of(l);
  assigns_[v] = static_cast<int>((l & 1u) ^ 1u);
  level_[v] = decision_level();
  reason_[v] = reason;
  trail_.push_back(l);
}

// Watches are kept on the literals clauses_[c][0] and clauses_[c][1];
// watches_[l] lists clauses to revisit when l becomes false.
int Solver::propagate() {
  while (qhead_ < trail_.size()) {
    const Lit falsified = negate(trail_[qhead_++]);
    ++stats_.propagations;
    auto& list = watches_[falsified];
    std::size_t keep = 0;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const int ci = list[i];
      auto& c = clauses_[static_cast<std::size_t>(ci)];
      if (c[0] == falsified) std::swap(c[0], c[1]);
      if (value(c[0]) == 1) {
        list[keep++] = ci;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (value(c[k]) != 0) {
          std::swap(c[1], c[k]);
          watches_[c[1]].push_back(ci);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      list[keep++] = ci;
      if (value(c[0]) == 0) {
        for (std::size_t j = i + 1; j < list.size(); ++j) list[keep++] = list[j];
        list.resize(keep);
        qhead_ = trail_.size();
        return ci;
      }
      enqueue(c[0], ci);
    }
    list.resize(keep);
  }
  return kNoReason;
}

void Solver::analyze(int conflict, std::vector<Lit>& learnt, int& backjump_level) {
  learnt.clear();
  learnt.push_back(0);  // slot for the asserting literal
  int pending = 0;
  std::size_t index = trail_.size();
  Lit p = 0;
  bool first = true;
  int reason = conflict;
  do {
    const auto& c = clauses_[static_cast<std::size_t>(reason)];
    for (std::size_t j = first ? 0 : 1; j < c.size(); ++j) {
      const Lit q = c[j];
      const std::size_t v = var_of(q);
      if (seen_[v] || level_[v] == 0) continue;
      seen_[v] = 1;
      if (level_[v] == decision_level()) {
        ++pending;
      } else {
        learnt.push_back(q);
      }
    }
    first = false;
    do {
      p = trail_[--index];
    } while (!seen_[var_of(p)]);
    reason = reason_[var_of(p)];
    seen_[var_of(p)] = 0;
    --pending;
  } while (pending > 0);
  learnt[0] = negate(p);

  backjump_level = 0;
  std::size_t max_i = 1;
  for (std::size_t i = 1; i < learnt.size(); ++i) {
    if (level_[var_of(learnt[i])] > backjump_level) {
      backjump_level = level_[var_of(learnt[i])];
      max_i = i;
    }
  }
  if (learnt.size() > 1) std::swap(learnt[1], learnt[max_i]);
  for (std::size_t i = 1; i < learnt.size(); ++i) seen_[var_of(learnt[i])] = 0;
}

void Solver::cancel_until(int level) {
  if (decision_level() <= level) return;
  const std::size_t stop = trail_lim_[static_cast<std::size_t>(level)];
  for (std::size_t i = trail_.size(); i-- > stop;) {
    const std::size_t v = var_of(trail_[i]);
    assigns_[v] = -1;
    reason_[v] = kNoReason;
    next_branch_ = std::min(next_branch_, position_[v]);
  }
  trail_.resize(stop);
  trail_lim_.resize(static_cast<std::size_t>(level));
  qhead_ = trail_.size();
}

std::optional<Solver::Lit> Solver::pick_branch() {
  while (next_branch_ < order_.size() && assigns_[order_[next_branch_]] >= 0) ++next_branch_;
  if (next_branch_ == order_.size()) return std::nullopt;
  const std::size_t v = order_[next_branch_];
  return static_cast<Lit>(2 * v + (polarity_[v] ? 0u : 1u));
}

Result Solver::solve() {
  if (unsat_) return Result::kUnsat;
  cancel_until(0);
  next_branch_ = 0;
  if (propagate() != kNoReason) {
    unsat_ = true;
    return Result::kUnsat;
  }

  const auto start = std::chrono::steady_clock::now();
  std::vector<Lit> learnt;
  for (;;) {
    const int conflict = propagate();
    if (conflict != kNoReason) {
      ++stats_.conflicts;
      if (decision_level() == 0) {
        unsat_ = true;
        return Result::kUnsat;
      }
      int backjump = 0;
      analyze(conflict, learnt, backjump);
      cancel_until(backjump);
      if (learnt.size() == 1) {
        enqueue(learnt[0], kNoReason);
      } else {
        const int ci = attach(learnt);
        ++stats_.learned;
        enqueue(clauses_[static_cast<std::size_t>(ci)][0], ci);
      }
      if (options_.time_limit && (stats_.conflicts & 255u) == 0 &&
          std::chrono::steady_clock::now() - start > *options_.time_limit) {
        cancel_until(0);
        return Result::kUnknown;
      }
      continue;
    }
    auto next = pick_branch();
    if (!next) {
      model_.assign(num_vars_, false);
      for (std::size_t v = 0; v < num_vars_; ++v) model_[v] = assigns_[v] == 1;
      return Result::kSat;
    }
    ++stats_.decisions;
    trail_lim_.push_back(trail_.size());
    enqueue(*next, kNoReason);
  }
}

}  // namespace dialectic::sat
