#pragma once

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "mineq/errors.hpp"
#include "mineq/mechanism.hpp"
#include "mineq/model.hpp"
#include "mineq/solver.hpp"
#include "mineq/verify.hpp"

namespace mineq {

using json = nlohmann::json;

/// An instance plus the display names used in files.
struct InstanceDoc {
  Instance instance;
  std::vector<std::string> buyers;
  std::vector<std::string> items;

  std::string buyer_name(std::size_t i) const {
    return i < buyers.size() ? buyers[i] : "dummy" + std::to_string(i - buyers.size() + 1);
  }
  std::string item_name(std::size_t j) const { return items.at(j); }
};

inline const char* value_key(Family f) {
  switch (f) {
    case Family::QuasiLinear: return "v";
    case Family::Roi: return "t";
    case Family::Ranked: return "M";
  }
  return "v";
}

/// Rationals are strings ("3", "-7/2", "inf"); plain JSON integers are accepted too.
inline Scalar parse_scalar(const json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return Scalar::parse(j.get<std::string>());
    } catch (const std::exception& e) {
      throw InvalidInstance(where + ": " + e.what());
    }
  }
  if (j.is_number_integer()) return Scalar(j.get<long long>());
  throw InvalidInstance(where + ": expected a rational string");
}

inline json scalar_json(const Scalar& x) { return x.str(); }

namespace detail {

inline const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw InvalidInstance(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw InvalidInstance(where + ": missing field '" + key + "'");
  return *it;
}

inline std::vector<std::string> names(const json& doc, const char* key, std::size_t count, char prefix) {
  std::vector<std::string> out;
  if (auto it = doc.find(key); it != doc.end()) {
    if (!it->is_array()) throw InvalidInstance(std::string(key) + ": expected an array of names");
    for (std::size_t k = 0; k < it->size(); ++k) {
      if (!(*it)[k].is_string()) throw InvalidInstance(std::string(key) + "[" + std::to_string(k) + "]: expected a string");
      out.push_back((*it)[k].get<std::string>());
    }
    if (out.size() != count) throw InvalidInstance(std::string(key) + ": expected " + std::to_string(count) + " names");
    auto sorted = out;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw InvalidInstance(std::string(key) + ": names must be distinct");
  } else {
    for (std::size_t k = 0; k < count; ++k) out.push_back(prefix + std::to_string(k + 1));
  }
  return out;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInstance(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw InvalidInstance(path + ": " + e.what());
  }
}

inline std::size_t lookup(const std::vector<std::string>& names, const json& j, const std::string& where) {
  if (j.is_number_unsigned()) {
    const auto k = j.get<std::size_t>();
    if (k >= names.size()) throw InvalidInstance(where + ": index out of range");
    return k;
  }
  if (!j.is_string()) throw InvalidInstance(where + ": expected a name");
  const auto s = j.get<std::string>();
  for (std::size_t k = 0; k < names.size(); ++k)
    if (names[k] == s) return k;
  throw InvalidInstance(where + ": unknown name '" + s + "'");
}

}  // namespace detail

/// Row of parameters for one buyer: m objects {"v"|"t"|"M": ..., "b": ...}.
inline std::vector<PairParams> parse_row(const json& row, Family family, std::size_t m, const std::string& where) {
  if (!row.is_array() || row.size() != m)
    throw InvalidInstance(where + ": expected an array of " + std::to_string(m) + " entries");
  std::vector<PairParams> out;
  for (std::size_t j = 0; j < m; ++j) {
    const std::string w = where + "[" + std::to_string(j) + "]";
    out.push_back({parse_scalar(detail::field(row[j], value_key(family), w), w + "." + value_key(family)),
                   parse_scalar(detail::field(row[j], "b", w), w + ".b")});
  }
  return out;
}

inline InstanceDoc parse_instance(const json& doc) {
  if (!doc.is_object()) throw InvalidInstance("instance: expected a JSON object");
  const json& fam = detail::field(doc, "family", "instance");
  if (!fam.is_string()) throw InvalidInstance("family: expected a string");
  const Family family = family_from_string(fam.get<std::string>());
  const json& params = detail::field(doc, "params", "instance");
  if (!params.is_array()) throw InvalidInstance("params: expected an array");

  std::size_t n = 0;
  std::size_t m = 0;
  const bool nested = !params.empty() && params[0].is_array();
  if (doc.contains("buyers")) n = doc["buyers"].size();
  if (doc.contains("items")) m = doc["items"].size();
  if (nested) {
    if (!doc.contains("buyers")) n = params.size();
    if (!doc.contains("items")) m = params[0].size();
  } else if (!doc.contains("buyers") || !doc.contains("items")) {
    throw InvalidInstance("params: a flat parameter array needs 'buyers' and 'items'");
  }

  std::vector<PairParams> flat;
  if (nested) {
    if (params.size() != n) throw InvalidInstance("params: expected " + std::to_string(n) + " rows");
    for (std::size_t i = 0; i < n; ++i) {
      auto row = parse_row(params[i], family, m, "params[" + std::to_string(i) + "]");
      flat.insert(flat.end(), row.begin(), row.end());
    }
  } else {
    if (params.size() != n * m) throw InvalidInstance("params: expected " + std::to_string(n * m) + " entries");
    for (std::size_t k = 0; k < params.size(); ++k) {
      const std::string w = "params[" + std::to_string(k) + "]";
      flat.push_back({parse_scalar(detail::field(params[k], value_key(family), w), w + "." + value_key(family)),
                      parse_scalar(detail::field(params[k], "b", w), w + ".b")});
    }
  }

  std::vector<Scalar> reserves;
  if (auto it = doc.find("reserves"); it != doc.end()) {
    if (!it->is_array() || it->size() != m) throw InvalidInstance("reserves: expected " + std::to_string(m) + " entries");
    for (std::size_t j = 0; j < m; ++j) reserves.push_back(parse_scalar((*it)[j], "reserves[" + std::to_string(j) + "]"));
  }
  InstanceDoc out{Instance(family, n, m, std::move(flat), std::move(reserves)), detail::names(doc, "buyers", n, 'i'),
                  detail::names(doc, "items", m, 'j')};
  return out;
}

inline InstanceDoc load_instance(const std::string& path) { return parse_instance(detail::read_json_file(path)); }

inline json row_json(const std::vector<PairParams>& row, Family family) {
  json r = json::array();
  for (const auto& q : row) r.push_back({{value_key(family), scalar_json(q.value)}, {"b", scalar_json(q.budget)}});
  return r;
}

inline json to_json(const InstanceDoc& d) {
  const Instance& inst = d.instance;
  json params = json::array();
  for (std::size_t i = 0; i < inst.n_buyers(); ++i) {
    std::vector<PairParams> row;
    for (std::size_t j = 0; j < inst.m_items(); ++j) row.push_back(inst.param(i, j));
    params.push_back(row_json(row, inst.family()));
  }
  json reserves = json::array();
  for (const auto& r : inst.reserves()) reserves.push_back(scalar_json(r));
  return {{"family", std::string(to_string(inst.family()))},
          {"buyers", d.buyers},
          {"items", d.items},
          {"params", params},
          {"reserves", reserves}};
}

inline json allocation_json(const InstanceDoc& d, const Allocation& x) {
  json a = json::array();
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i]) a.push_back({{"buyer", d.buyer_name(i)}, {"item", d.item_name(*x[i])}});
  return a;
}

inline json prices_json(const InstanceDoc& d, const std::vector<Scalar>& p) {
  json a = json::array();
  for (std::size_t j = 0; j < p.size(); ++j) a.push_back({{"item", d.item_name(j)}, {"value", scalar_json(p[j])}});
  return a;
}

inline json trace_json(const InstanceDoc& d, const std::vector<StageRecord>& trace) {
  json t = json::array();
  for (const auto& r : trace) {
    json marked = json::array(), crit = json::array(), cb = json::array(), ci = json::array(), hits = json::array();
    for (std::size_t j = 0; j < r.marks.size(); ++j)
      if (r.marks[j]) marked.push_back(d.item_name(j));
    for (auto i : r.critical) crit.push_back(d.buyer_name(i));
    for (auto i : r.component_buyers) cb.push_back(d.buyer_name(i));
    for (auto j : r.component_items) ci.push_back(d.item_name(j));
    for (const auto& e : r.hits) hits.push_back({{"buyer", d.buyer_name(e.buyer)}, {"item", d.item_name(e.item)}});
    json prices = json::array();
    for (const auto& p : r.prices) prices.push_back(scalar_json(p));
    t.push_back({{"step", r.step},
                 {"prices", prices},
                 {"marked", marked},
                 {"critical", crit},
                 {"component", {{"buyers", cb}, {"items", ci}}},
                 {"hits", hits}});
  }
  return t;
}

inline json outcome_json(const InstanceDoc& d, const Outcome& out, bool with_trace = false,
                         const std::vector<Scalar>* realized = nullptr) {
  json j = {{"status", to_string(out.status)}};
  j["allocation"] = out.has_equilibrium() ? allocation_json(d, out.allocation) : json::array();
  json prices = json::array();
  for (std::size_t k = 0; k < out.prices.size(); ++k)
    prices.push_back({{"item", d.item_name(k)}, {"value", scalar_json(out.prices[k].value)}, {"plus", out.prices[k].plus}});
  j["prices"] = prices;
  if (realized != nullptr) j["realized_prices"] = prices_json(d, *realized);
  if (with_trace) j["trace"] = trace_json(d, out.trace);
  return j;
}

/// The parts of an outcome file a checker needs.
struct OutcomeDoc {
  Status status = Status::NoEquilibrium;
  Allocation allocation;
  PricePlusVector prices;
  std::optional<std::vector<Scalar>> realized;
};

inline std::vector<Scalar> parse_price_list(const json& arr, const InstanceDoc& d, const std::string& where,
                                            std::vector<char>* plus = nullptr) {
  const std::size_t m = d.instance.m_items();
  if (!arr.is_array() || arr.size() != m) throw InvalidInstance(where + ": expected " + std::to_string(m) + " prices");
  std::vector<Scalar> p(m);
  std::vector<char> seen(m);
  if (plus != nullptr) plus->assign(m, 0);
  for (std::size_t k = 0; k < m; ++k) {
    const std::string w = where + "[" + std::to_string(k) + "]";
    const std::size_t j = detail::lookup(d.items, detail::field(arr[k], "item", w), w + ".item");
    if (seen[j]) throw InvalidInstance(w + ": item listed twice");
    seen[j] = 1;
    p[j] = parse_scalar(detail::field(arr[k], "value", w), w + ".value");
    if (!p[j].is_finite() || p[j].sign() < 0) throw InvalidInstance(w + ".value: prices must be finite and non-negative");
    if (plus != nullptr && arr[k].contains("plus")) {
      if (!arr[k]["plus"].is_boolean()) throw InvalidInstance(w + ".plus: expected a boolean");
      (*plus)[j] = arr[k]["plus"].get<bool>() ? 1 : 0;
    }
  }
  return p;
}

inline OutcomeDoc parse_outcome(const json& doc, const InstanceDoc& d) {
  if (!doc.is_object()) throw InvalidInstance("outcome: expected a JSON object");
  OutcomeDoc o;
  const json& st = detail::field(doc, "status", "outcome");
  if (st == "equilibrium") o.status = Status::Equilibrium;
  else if (st == "no_equilibrium") o.status = Status::NoEquilibrium;
  else throw InvalidInstance("status: expected \"equilibrium\" or \"no_equilibrium\"");

  o.allocation.assign(d.instance.n_buyers(), std::nullopt);
  if (auto it = doc.find("allocation"); it != doc.end()) {
    if (!it->is_array()) throw InvalidInstance("allocation: expected an array");
    for (std::size_t k = 0; k < it->size(); ++k) {
      const std::string w = "allocation[" + std::to_string(k) + "]";
      const auto i = detail::lookup(d.buyers, detail::field((*it)[k], "buyer", w), w + ".buyer");
      const auto j = detail::lookup(d.items, detail::field((*it)[k], "item", w), w + ".item");
      if (o.allocation[i]) throw InvalidInstance(w + ": buyer allocated twice");
      o.allocation[i] = j;
    }
  }
  if (auto it = doc.find("prices"); it != doc.end() && !it->empty()) {
    std::vector<char> plus;
    const auto p = parse_price_list(*it, d, "prices", &plus);
    for (std::size_t j = 0; j < p.size(); ++j) o.prices.push_back({p[j], plus[j] != 0});
  }
  if (auto it = doc.find("realized_prices"); it != doc.end()) o.realized = parse_price_list(*it, d, "realized_prices");
  return o;
}

inline json buyer_utility_json(const InstanceDoc& d, const BuyerUtility& u) {
  return {{"item", u.item ? json(d.item_name(*u.item)) : json(nullptr)},
          {"limit", scalar_json(u.limit)},
          {"limit_from_below", u.minus},
          {"realized", scalar_json(u.realized)}};
}

}  // namespace mineq
