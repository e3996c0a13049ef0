#pragma once

#include <cstdint>
#include <exception>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mineq/io.hpp"
#include "mineq/mechanism.hpp"
#include "mineq/oracle.hpp"
#include "mineq/solver.hpp"
#include "mineq/verify.hpp"

namespace mineq::cli {

enum Exit : int { kOk = 0, kInputError = 1, kBudgetRefused = 2, kNoEquilibrium = 3, kCheckFailed = 4 };

struct SolveArgs {
  std::string instance;
  bool trace = false;
  bool realize = false;
  std::string epsilon = "1/100";
};

struct CheckArgs {
  std::string instance;
  std::string outcome;
  std::string mode = "ce";
  std::optional<std::string> epsilon;
};

struct OracleArgs {
  std::string instance;
  std::optional<std::string> resolution;
  std::optional<std::string> bound;
  std::uint64_t budget = OracleOptions{}.budget;
};

struct NashArgs {
  std::string instance;
  std::string deviator;
  std::optional<std::string> grid_spec;
  std::optional<std::string> deviations;
  std::string epsilon = "1/100";
};

namespace detail {

inline Scalar positive(const std::string& text, const char* what) {
  Scalar x = Scalar::parse(text);
  if (!(x.sign() > 0) || !x.is_finite()) throw InvalidInstance(std::string(what) + " must be a positive rational");
  return x;
}

// Maps every library failure onto the exit-code contract.
template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kBudgetRefused;
  } catch (const InvalidInstance& e) {
    err << "error: " << e.what() << "\n";
  } catch (const IndexError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const ContractError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
  }
  return kInputError;
}

/// "dv=-1,0,1;db=-2,0;inf" -> value deltas, budget deltas, infinite-budget flag.
struct GridSpec {
  std::vector<Scalar> dv{Scalar(-2), Scalar(-1), Scalar(0), Scalar(1), Scalar(2)};
  std::vector<Scalar> db{Scalar(-2), Scalar(-1), Scalar(0), Scalar(1), Scalar(2)};
  bool inf = true;
};

inline std::vector<Scalar> scalar_list(const std::string& s) {
  std::vector<Scalar> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto piece = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!piece.empty()) out.push_back(Scalar::parse(piece));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

inline GridSpec parse_grid_spec(const std::string& spec) {
  GridSpec g;
  g.inf = false;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const auto semi = spec.find(';', start);
    const auto part = spec.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
    if (part == "inf") {
      g.inf = true;
    } else if (part.rfind("dv=", 0) == 0) {
      g.dv = scalar_list(part.substr(3));
    } else if (part.rfind("db=", 0) == 0) {
      g.db = scalar_list(part.substr(3));
    } else if (!part.empty()) {
      throw InvalidInstance("grid spec: unknown part '" + part + "'");
    }
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  return g;
}

inline std::vector<Scalar> uniform_raise(Family f, const PricePlusVector& p, const Scalar& eps) {
  std::vector<Scalar> out;
  for (const auto& x : p) {
    if (!x.plus) out.push_back(x.value);
    else if (f == Family::Roi) out.push_back(x.value * (Scalar(1) + eps));
    else out.push_back(x.value + eps);
  }
  return out;
}

}  // namespace detail

inline int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const InstanceDoc d = load_instance(a.instance);
    const Scalar eps = detail::positive(a.epsilon, "epsilon");
    const Outcome o = solve(d.instance, SolveOptions{a.trace});
    std::optional<std::vector<Scalar>> realized;
    if (a.realize && o.has_equilibrium()) realized = realize(d.instance, o, eps);
    out << outcome_json(d, o, a.trace, realized ? &*realized : nullptr).dump(2) << "\n";
    return o.has_equilibrium() ? kOk : kNoEquilibrium;
  });
}

inline int cmd_check(const CheckArgs& a, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&]() -> int {
    const InstanceDoc d = load_instance(a.instance);
    const OutcomeDoc o = parse_outcome(mineq::detail::read_json_file(a.outcome), d);
    if (a.mode != "ce" && a.mode != "weak" && a.mode != "strong")
      throw InvalidInstance("mode must be ce, weak or strong");
    std::vector<Scalar> prices;
    if (o.realized) {
      prices = *o.realized;
    } else if (o.prices.empty()) {
      if (o.status == Status::NoEquilibrium && !a.epsilon) {
        // Nothing allocated: every item must sit at its reserve.
        prices = d.instance.reserves();
      } else {
        throw InvalidInstance("outcome has no prices");
      }
    } else {
      bool plus = false;
      for (const auto& p : o.prices) plus = plus || p.plus;
      if (plus && !a.epsilon) throw InvalidInstance("plus-flagged prices need realized_prices or --epsilon");
      prices = plus ? detail::uniform_raise(d.instance.family(), o.prices, detail::positive(*a.epsilon, "epsilon"))
                    : detail::uniform_raise(d.instance.family(), o.prices, Scalar(1));
    }
    Verdict v;
    try {
      if (a.mode == "ce") v = check_competitive_equilibrium(d.instance, o.allocation, prices);
      else v = check_stability(d.instance, o.allocation, prices, a.mode == "weak" ? StabilityMode::Weak : StabilityMode::Strong);
    } catch (const ContractError& e) {
      const std::string what = e.what();
      if (what.find("individually rational") == std::string::npos) throw;
      out << json{{"mode", a.mode}, {"ok", false}, {"reason", what}}.dump(2) << "\n";
      return kCheckFailed;
    }
    json viol = json::array();
    for (const auto& x : v.violations) {
      json e = {{"kind", x.kind}};
      if (x.buyer != kNone) e["buyer"] = d.buyer_name(x.buyer);
      if (x.item != kNone) e["item"] = d.item_name(x.item);
      viol.push_back(e);
    }
    out << json{{"mode", a.mode}, {"ok", v.ok()}, {"prices", prices_json(d, prices)}, {"violations", viol}}.dump(2)
        << "\n";
    return v.ok() ? kOk : kCheckFailed;
  });
}

inline int cmd_oracle(const OracleArgs& a, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const InstanceDoc d = load_instance(a.instance);
    const Scalar res = a.resolution ? detail::positive(*a.resolution, "resolution") : default_resolution(d.instance);
    const Scalar bound = a.bound ? Scalar::parse(*a.bound) : default_bound(d.instance);
    OracleOptions opt;
    opt.budget = a.budget;
    if (d.instance.family() == Family::Roi) opt.extra_points = roi_extra_points(d.instance);
    const auto eq = grid_equilibria(d.instance, res, bound, opt);
    json list = json::array();
    std::optional<std::vector<Scalar>> lo;
    for (const auto& e : eq) {
      list.push_back({{"allocation", allocation_json(d, e.allocation)}, {"prices", prices_json(d, e.prices)}});
      if (!lo) lo = e.prices;
      else
        for (std::size_t j = 0; j < lo->size(); ++j) (*lo)[j] = min((*lo)[j], e.prices[j]);
    }
    out << json{{"resolution", scalar_json(res)},
                {"bound", scalar_json(bound)},
                {"count", eq.size()},
                {"equilibria", list},
                {"infimum", lo ? prices_json(d, *lo) : json(nullptr)}}
               .dump(2)
        << "\n";
    return eq.empty() ? kNoEquilibrium : kOk;
  });
}

inline int cmd_nash(const NashArgs& a, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const InstanceDoc d = load_instance(a.instance);
    const Instance& inst = d.instance;
    const std::size_t dev = mineq::detail::lookup(d.buyers, json(a.deviator), "deviator");
    const Scalar eps = detail::positive(a.epsilon, "epsilon");
    std::vector<std::vector<PairParams>> rows;
    if (a.deviations) {
      const json arr = mineq::detail::read_json_file(*a.deviations);
      if (!arr.is_array()) throw InvalidInstance("deviations: expected an array of rows");
      for (std::size_t k = 0; k < arr.size(); ++k)
        rows.push_back(parse_row(arr[k], inst.family(), inst.m_items(), "deviations[" + std::to_string(k) + "]"));
    }
    if (a.grid_spec || !a.deviations) {
      const auto g = a.grid_spec ? detail::parse_grid_spec(*a.grid_spec) : detail::GridSpec{};
      auto more = deviation_grid(inst, dev, g.dv, g.db, g.inf);
      rows.insert(rows.end(), more.begin(), more.end());
    }
    const ProbeReport rep = best_response_probe(inst, dev, rows, eps);
    json best = nullptr;
    if (rep.best_index) {
      best = buyer_utility_json(d, rep.best);
      best["bid"] = row_json(rep.runs[*rep.best_index].bid, inst.family());
    }
    out << json{{"deviator", d.buyer_name(dev)},
                {"truthful_equilibrium", rep.truthful_has_equilibrium},
                {"truthful", buyer_utility_json(d, rep.truthful)},
                {"deviations_tried", rep.runs.size()},
                {"profitable", rep.profitable()},
                {"best_deviation", best}}
               .dump(2)
        << "\n";
    return rep.profitable() ? kCheckFailed : kOk;
  });
}

}  // namespace mineq::cli
