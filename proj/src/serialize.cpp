#include "ietlab/serialize.hpp"

namespace ietlab {

json element_to_json(const GroupElement& g) {
  json coords = json::array();
  if (g.backend() == Backend::U1 || g.backend() == Backend::Torus) {
    for (const Rational& a : g.angles()) coords.push_back(a.str());
  } else {
    for (double c : g.quat()) coords.push_back(c);
  }
  return coords;
}

GroupElement element_from_json(Backend b, const json& coords) {
  switch (b) {
    case Backend::U1:
    case Backend::Torus: {
      std::vector<Rational> angles;
      for (const auto& item : coords) {
        auto r = Rational::parse(item.get<std::string>());
        if (!r) throw ValidationError("unparsable angle in group element");
        angles.push_back(*r);
      }
      if (b == Backend::U1) {
        if (angles.size() != 1) throw ValidationError("u1 element needs exactly one angle");
        return GroupElement::u1(angles[0]);
      }
      return GroupElement::torus(std::move(angles));
    }
    case Backend::SU2:
    case Backend::SO3: {
      std::vector<double> q = coords.get<std::vector<double>>();
      if (q.size() != 4) throw ValidationError("su2/so3 element needs four coordinates");
      return b == Backend::SU2 ? GroupElement::su2(q[0], q[1], q[2], q[3])
                               : GroupElement::so3(q[0], q[1], q[2], q[3]);
    }
  }
  throw ValidationError("bad backend");
}

json tuple_to_json(const GTuple& t) {
  json elems = json::array();
  for (const GroupElement& g : t.elements()) elems.push_back(element_to_json(g));
  return json{{"backend", to_string(t.backend())}, {"elements", elems}};
}

GTuple tuple_from_json(const json& j) {
  const Backend b = backend_from_string(j.at("backend").get<std::string>());
  std::vector<GroupElement> elems;
  for (const auto& item : j.at("elements")) elems.push_back(element_from_json(b, item));
  return GTuple(std::move(elems));
}

json rep_to_json(const Representation& rep) {
  return json{{"backend", to_string(rep.backend())}, {"label", rep.label()}};
}

Representation rep_from_json(const json& j) {
  const Backend b = backend_from_string(j.at("backend").get<std::string>());
  auto rep = Representation::parse(b, j.at("label").get<std::string>());
  if (!rep) throw ValidationError("unparsable representation label");
  return *rep;
}

json consistency_to_json(const ConsistencyReport& r) {
  return json{
      {"max_base_err", r.max_base_err},
      {"max_fiber_dist", r.max_fiber_dist},
      {"samples", r.samples},
      {"depth", r.depth},
      {"return_time_mismatches", r.return_time_mismatches},
      {"exact", r.exact},
  };
}

std::string scan_csv(const SpectralScan& scan) {
  std::ostringstream os;
  os << "alpha_index,value\n";
  for (long j = 0; j < scan.grid; ++j)
    os << j << ',' << ArithTraits<double>::str(scan.values[static_cast<std::size_t>(j)]) << '\n';
  return os.str();
}

std::string trajectory_csv(const DefectTrajectory& traj) {
  std::ostringstream os;
  os << "m,defect\n";
  for (std::size_t m = 0; m < traj.defect.size(); ++m)
    os << m << ',' << ArithTraits<double>::str(traj.defect[m]) << '\n';
  return os.str();
}

}  // namespace ietlab
