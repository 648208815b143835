#pragma once

#include <optional>
#include <sstream>
#include <string>

#include "json.hpp"

#include "ietlab/diagnostics.hpp"
#include "ietlab/skew.hpp"

namespace ietlab {

using json = nlohmann::ordered_json;

template <class S>
std::optional<S> scalar_parse(const std::string& text);

template <>
inline std::optional<Rational> scalar_parse<Rational>(const std::string& text) {
  return Rational::parse(text);
}

template <>
inline std::optional<double> scalar_parse<double>(const std::string& text) {
  if (auto r = Rational::parse(text)) return r->to_double();
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size()) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

// {lengths: ["3/5", "2/5"], permutation: [2, 1]}
template <class S>
json iet_to_json(const Iet<S>& iet) {
  json lengths = json::array();
  for (const S& l : iet.lengths()) lengths.push_back(ArithTraits<S>::str(l));
  return json{{"lengths", lengths}, {"permutation", iet.perm().images()}};
}

template <class S>
Iet<S> iet_from_json(const json& j, bool strict = true) {
  if (!j.contains("lengths") || !j.contains("permutation"))
    throw ValidationError("iet json needs 'lengths' and 'permutation'");
  std::vector<S> lengths;
  for (const auto& item : j.at("lengths")) {
    auto v = scalar_parse<S>(item.template get<std::string>());
    if (!v) throw ValidationError("unparsable length entry");
    lengths.push_back(*v);
  }
  std::vector<int> images = j.at("permutation").template get<std::vector<int>>();
  if (strict) return Iet<S>(std::move(lengths), Permutation(std::move(images)));
  return Iet<S>::unchecked(std::move(lengths), Permutation(std::move(images)));
}

json element_to_json(const GroupElement& g);
GroupElement element_from_json(Backend b, const json& coords);

// {backend: "su2", elements: [[w,x,y,z], ...]}
json tuple_to_json(const GTuple& t);
GTuple tuple_from_json(const json& j);

// {backend: "su2", label: "spin:1/2"}
json rep_to_json(const Representation& rep);
Representation rep_from_json(const json& j);

template <class S>
json triple_to_json(const SkewTriple<S>& s) {
  return json{{"iet", iet_to_json(s.iet)}, {"gtuple", tuple_to_json(s.tuple)}};
}

template <class S>
SkewTriple<S> triple_from_json(const json& j, bool strict = true) {
  return SkewTriple<S>(iet_from_json<S>(j.at("iet"), strict), tuple_from_json(j.at("gtuple")));
}

json consistency_to_json(const ConsistencyReport& r);

// One row per induction step: m, rule, |lambda_m|, p1_b, p2_min_ratio.
template <class S>
std::string trace_csv(const InductionTrace<S>& trace) {
  std::ostringstream os;
  os << "m,rule,total,p1_b,p2_min_ratio\n";
  for (std::size_t m = 0; m < trace.rules.size(); ++m) {
    const auto& st = trace.states[m];
    os << m << ',' << to_string(trace.rules[m]) << ',' << ArithTraits<S>::str(st.total) << ',';
    if (st.p1_b >= 0) os << st.p1_b;
    os << ',' << ArithTraits<S>::str(st.p2_min_ratio) << '\n';
  }
  return os.str();
}

template <class S>
std::string trace_jsonl(const InductionTrace<S>& trace) {
  std::ostringstream os;
  for (std::size_t m = 0; m < trace.rules.size(); ++m) {
    const auto& st = trace.states[m];
    json row;
    row["m"] = m;
    row["rule"] = to_string(trace.rules[m]);
    json lengths = json::array();
    for (const S& l : st.lengths) lengths.push_back(ArithTraits<S>::str(l));
    row["lengths"] = lengths;
    row["permutation"] = st.perm.images();
    row["total"] = ArithTraits<S>::str(st.total);
    row["return_times"] = st.return_times;
    row["p2_min_ratio"] = ArithTraits<S>::str(st.p2_min_ratio);
    if (st.p1_b >= 0) {
      row["p1_b"] = st.p1_b;
      row["p1_pass"] = st.p1_pass;
    }
    row["irreducible_c1"] = st.cond1;
    row["irreducible_c2"] = st.cond2;
    os << row.dump() << '\n';
  }
  return os.str();
}

std::string scan_csv(const SpectralScan& scan);
std::string trajectory_csv(const DefectTrajectory& traj);

}  // namespace ietlab
