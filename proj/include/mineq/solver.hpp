#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mineq/bipartite.hpp"
#include "mineq/demand.hpp"
#include "mineq/model.hpp"
#include "mineq/raise.hpp"

namespace mineq {

enum class Status { Equilibrium, NoEquilibrium };

inline const char* to_string(Status s) { return s == Status::Equilibrium ? "equilibrium" : "no_equilibrium"; }

/// One line of the solver trace. `step` is "start", "alpha", "beta",
/// "gamma", "reduce" (marking on the reduced graph) or "unbounded".
struct StageRecord {
  std::string step;
  std::vector<Scalar> prices;
  std::vector<char> marks;
  std::vector<std::size_t> critical;
  std::vector<std::size_t> component_buyers;
  std::vector<std::size_t> component_items;
  std::vector<Edge> hits;
};

/// Internal checks gathered during a solve.
struct InvariantReport {
  bool uniform_marks = true;    // every G* neighbourhood all marked or all unmarked
  bool no_final_critical = true;  // G* has no critical set at the matching step
  bool counters_within = true;  // phases <= mn, stages <= (mn)^2
};

struct Outcome {
  Status status = Status::NoEquilibrium;
  std::vector<std::optional<std::size_t>> allocation;  // per real buyer
  PricePlusVector prices;                              // empty unless equilibrium
  std::vector<Scalar> base_prices;                     // prices when the loop stopped
  std::vector<char> marks;
  BipartiteGraph market;  // H, the graph the final matching was taken from
  std::vector<char> must_cover;
  std::vector<StageRecord> trace;
  std::size_t phases = 0;
  std::size_t stages = 0;
  std::size_t iterations = 0;
  InvariantReport invariants;

  bool has_equilibrium() const noexcept { return status == Status::Equilibrium; }
};

struct SolveOptions {
  bool trace = false;
};

namespace detail {

inline Instance with_dummies(const Instance& inst) {
  if (inst.include_dummies()) return inst;
  return Instance(inst.family(), inst.n_buyers(), inst.m_items(), inst.params(), inst.reserves(), true);
}

inline void record(Outcome& out, const SolveOptions& opt, std::string step, const DemandState& s,
                   std::vector<std::size_t> critical = {}, const Component* c = nullptr,
                   std::vector<Edge> hits = {}) {
  if (!opt.trace) return;
  StageRecord r;
  r.step = std::move(step);
  r.prices = s.prices;
  r.marks = s.marks;
  r.critical = std::move(critical);
  if (c != nullptr) {
    r.component_buyers = c->buyers;
    r.component_items = c->items;
  }
  r.hits = std::move(hits);
  out.trace.push_back(std::move(r));
}

}  // namespace detail

/// Moves the state to a raise's prices and applies its event: unmark
/// raised marked items, price out beta buyers, and on a pure gamma mark
/// the component and delete its tight edges.
inline void apply_raise(const Instance& inst, DemandState& s, const Component& c, const RaiseResult& r,
                        std::size_t& stages, std::size_t& phases) {
  const std::size_t m = inst.m_items();
  for (auto j : c.items)
    if (s.marks[j] && r.prices[j] > s.prices[j]) s.marks[j] = 0;
  s.prices = r.prices;
  const RaiseEvent& ev = r.event;
  if (!ev.alpha.empty()) ++stages;
  if (!ev.beta.empty()) {
    ++phases;
    for (const auto& e : ev.beta) {
      s.priced_out[e.buyer] = 1;
      for (std::size_t j = 0; j < m; ++j) s.delete_edge(e.buyer, j);
    }
  }
  if (ev.alpha.empty() && ev.beta.empty()) {
    if (ev.gamma.empty()) throw ContractError("price raise ended without an event");
    ++phases;
    for (auto j : c.items) s.marks[j] = 1;
    for (auto i : c.buyers)
      for (auto j : c.items)
        if (inst.budget(i, j) == s.prices[j]) s.delete_edge(i, j);
  }
}

/// Minimum competitive equilibrium, or NoEquilibrium.
inline Outcome solve(const Instance& input, const SolveOptions& opt = {}) {
  const Instance inst = detail::with_dummies(input);
  const std::size_t n = inst.n_buyers();
  const std::size_t m = inst.m_items();
  const std::size_t universe = n * m;
  const std::size_t phase_bound = universe;
  const std::size_t stage_bound = universe * universe;
  // Hard stop far past the proven bounds; reaching it means a bug.
  const std::size_t guard = 4 * (stage_bound + phase_bound) + 64;

  Outcome out;
  DemandState s = DemandState::initial(inst);
  detail::record(out, opt, "start", s);

  auto finish = [&](Status st) {
    out.status = st;
    out.base_prices = s.prices;
    out.marks = s.marks;
    out.invariants.counters_within = out.phases <= phase_bound && out.stages <= stage_bound;
    if (st != Status::Equilibrium) {
      out.allocation.assign(n, std::nullopt);
      out.prices.clear();
    }
    return out;
  };

  DemandGraph gplus;
  for (;;) {
    // Step 3: raise over-demanded components until G+ has no critical set.
    for (;;) {
      gplus = build_demand_graph(inst, s);
      auto crit = critical_set_active(gplus.graph);
      if (crit.empty()) break;
      if (++out.iterations > guard) throw ContractError("solver exceeded its iteration bound");
      const Component c = components(gplus.graph, crit).front();
      RaiseResult r = increase_price(inst, s, c);
      if (r.unbounded) {
        detail::record(out, opt, "unbounded", s, std::move(crit), &c);
        return finish(Status::NoEquilibrium);
      }
      apply_raise(inst, s, c, r, out.stages, out.phases);
      const RaiseEvent& ev = r.event;
      std::vector<Edge> hits = ev.kind == EventKind::Alpha  ? ev.alpha
                               : ev.kind == EventKind::Beta ? ev.beta
                                                            : ev.gamma;
      detail::record(out, opt, to_string(ev.kind), s, std::move(crit), &c, std::move(hits));
    }

    // Steps 4-5: the reduced graph must not be over-demanded either.
    const BipartiteGraph reduced = reduced_graph(gplus, s);
    const auto crit = critical_set_active(reduced);
    if (crit.empty()) break;
    for (auto j : neighborhood(reduced, crit)) s.marks[j] = 1;
    std::vector<Edge> tight;
    for (auto i : crit)
      for (auto j : reduced.neighbors(i))
        if (inst.budget(i, j) == s.prices[j]) tight.push_back({i, j});
    for (const auto& e : tight) s.delete_edge(e.buyer, e.item);
    const bool again = !tight.empty();
    if (again) ++out.phases;
    if (++out.iterations > guard) throw ContractError("solver exceeded its iteration bound");
    detail::record(out, opt, "reduce", s, crit, nullptr, tight);
    if (!again) break;
  }

  // Steps 6-8.
  FinalGraphs f = build_final_graphs(inst, s, gplus);
  out.invariants.uniform_marks = neighborhoods_uniformly_marked(f.exact, s);
  out.invariants.no_final_critical = critical_set_active(f.exact).empty();
  auto matching = lex_matching(f.market, gplus.u_plus, m);
  out.market = std::move(f.market);
  out.must_cover = gplus.u_plus;
  if (!matching) return finish(Status::NoEquilibrium);

  out.allocation.assign(n, std::nullopt);
  for (std::size_t i = 0; i < n; ++i)
    if (matching->left_mate[i] != kUnmatched) out.allocation[i] = matching->left_mate[i];
  out.prices.resize(m);
  for (std::size_t j = 0; j < m; ++j) out.prices[j] = {s.prices[j], s.marks[j] != 0};
  return finish(Status::Equilibrium);
}

inline Outcome solve_with_trace(const Instance& inst) { return solve(inst, SolveOptions{true}); }

/// Concrete prices for an equilibrium outcome: marked items lifted into
/// (p_j, p_j + epsilon].
inline std::vector<Scalar> realize(const Instance& inst, const Outcome& out, const Scalar& epsilon) {
  if (!out.has_equilibrium()) throw ContractError("no equilibrium to realize");
  return lift_plus(detail::with_dummies(inst), out.base_prices, out.marks, epsilon, out.market);
}

}  // namespace mineq
