// SPDX-License-Identifier: Apache-2.0
#include "lambdap/io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "lambdap/error.hpp"

namespace lambdap {

namespace {

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

[[noreturn]] void malformed(const std::string& what) { throw Error(Errc::parse, "malformed JSON: " + what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) malformed(std::string("expected an object holding '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) malformed(std::string("missing key '") + key + "'");
  return *it;
}

std::vector<double> number_array(const Json& j, const char* what) {
  if (!j.is_array()) malformed(std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& x : j) {
    if (!x.is_number()) malformed(std::string(what) + " must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::size_t index_value(const Json& j) {
  if (!j.is_number_unsigned()) malformed("indices must be nonnegative integers");
  return j.get<std::size_t>();
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) malformed(std::string(what) + " must be a number");
  return j.get<double>();
}

}  // namespace

Json to_json(const MeasureSpace& space) { return {{"weights", space.weights()}}; }

Json to_json(const SimpleFunction& f) { return {{"values", f.values()}}; }

Json to_json(const FunctionFamily& family) {
  Json members = Json::array();
  for (const auto& f : family.members()) members.push_back(to_json(f));
  Json fam = {{"label", family.label()}, {"members", std::move(members)}};
  if (family.growth_index()) fam["growth_index"] = *family.growth_index();
  return {{"space", to_json(family.space())}, {"family", std::move(fam)}};
}

Json to_json(const CoveringCertificate& cert) {
  Json assignment = Json::array();
  for (const auto& a : cert.assignment) assignment.push_back(Json::array({a.member, a.center, a.distance}));
  return {{"epsilon", cert.epsilon}, {"centers", cert.centers}, {"assignment", std::move(assignment)}};
}

Json to_json(const PackingWitness& witness) { return {{"epsilon", witness.epsilon}, {"points", witness.points}}; }

Json metric_json(const DistanceOracle& oracle) {
  Json level = oracle.level() ? Json(oracle.level()->value()) : Json(nullptr);
  return {{"kind", to_string(oracle.kind())}, {"p", oracle.exponent().value()}, {"level", std::move(level)}};
}

Json to_json(const ConditionProfile& profile) {
  Json records = Json::array();
  for (const auto& r : profile.records) {
    records.push_back({{"M", r.level},
                       {"sup_truncation_error", r.sup_truncation_error},
                       {"sup_level_set_measure", r.sup_level_set_measure}});
  }
  return {{"label", profile.label}, {"p", profile.p}, {"records", std::move(records)}};
}

Json to_json(const CompactnessReport& report) {
  Json covers = Json::array();
  for (const auto& c : report.level_covers) {
    covers.push_back({{"M", c.level}, {"epsilon", c.epsilon}, {"cover_size", c.cover_size}});
  }
  Json lift = nullptr;
  if (report.lift) {
    lift = {{"M", report.lift->level},
            {"split", report.lift->split},
            {"lp_cover_size", report.lift->lp_cover_size},
            {"ambient_max_distance", report.lift->ambient_max_distance}};
  }
  const Json metric = {{"kind", "lambda"}, {"p", report.p}, {"level", nullptr}};
  Json net = nullptr;
  if (report.net) net = {{"metric", metric}, {"certificate", to_json(*report.net)}};
  return {{"label", report.label},
          {"growth_index", optional_json(report.growth_index)},
          {"p", report.p},
          {"epsilon", report.epsilon},
          {"family_size", report.family_size},
          {"verdict", to_string(report.verdict)},
          {"profile", to_json(report.profile)},
          {"almost_equibounded_check", optional_json(report.almost_equibounded_check)},
          {"condition_ii", std::move(covers)},
          {"min_M_for_half_epsilon", optional_json(report.min_level_for_half_epsilon)},
          {"lift", std::move(lift)},
          {"net", std::move(net)},
          {"packing", {{"metric", metric}, {"certificate", to_json(report.packing)}}}};
}

Json to_json(const LadderTrend& trend) {
  Json rows = Json::array();
  for (const auto& r : trend.rows) {
    rows.push_back({{"index", r.index},
                    {"family_size", r.family_size},
                    {"cover_size", optional_json(r.cover_size)},
                    {"packing_size", r.packing_size},
                    {"min_M_for_half_epsilon", optional_json(r.min_level_for_half_epsilon)}});
  }
  return {{"verdict", to_string(trend.verdict)}, {"rows", std::move(rows)}};
}

MeasureSpace space_from_json(const Json& j) {
  try {
    return MeasureSpace(number_array(field(j, "weights"), "weights"));
  } catch (const Error& e) {
    if (e.code() == Errc::parse) throw;
    malformed(std::string("space: ") + e.what());
  }
}

SimpleFunction function_from_json(const Json& j, const MeasureSpace& space) {
  try {
    return SimpleFunction(space, number_array(field(j, "values"), "values"));
  } catch (const Error& e) {
    if (e.code() == Errc::parse) throw;
    malformed(std::string("function: ") + e.what());
  }
}

FunctionFamily family_from_json(const Json& j) {
  MeasureSpace space = space_from_json(field(j, "space"));
  const Json& fam = field(j, "family");
  const Json& members_json = field(fam, "members");
  if (!members_json.is_array() || members_json.empty()) malformed("family members must be a non-empty array");
  std::vector<SimpleFunction> members;
  for (const auto& m : members_json) members.push_back(function_from_json(m, space));
  std::string label;
  if (const auto it = fam.find("label"); it != fam.end() && it->is_string()) label = it->get<std::string>();
  std::optional<std::uint64_t> index;
  if (const auto it = fam.find("growth_index"); it != fam.end() && !it->is_null()) {
    if (!it->is_number_unsigned() || it->get<std::uint64_t>() == 0) malformed("growth_index must be a positive integer");
    index = it->get<std::uint64_t>();
  }
  return FunctionFamily(std::move(space), std::move(members), std::move(label), index);
}

CoveringCertificate cover_from_json(const Json& j) {
  CoveringCertificate cert;
  cert.epsilon = number(field(j, "epsilon"), "epsilon");
  const Json& centers = field(j, "centers");
  if (!centers.is_array()) malformed("centers must be an array");
  for (const auto& c : centers) cert.centers.push_back(index_value(c));
  const Json& assignment = field(j, "assignment");
  if (!assignment.is_array()) malformed("assignment must be an array");
  for (const auto& a : assignment) {
    if (!a.is_array() || a.size() != 3) malformed("assignment entries must be [member, center, distance]");
    cert.assignment.push_back({index_value(a[0]), index_value(a[1]), number(a[2], "distance")});
  }
  return cert;
}

PackingWitness packing_from_json(const Json& j) {
  PackingWitness witness;
  witness.epsilon = number(field(j, "epsilon"), "epsilon");
  const Json& points = field(j, "points");
  if (!points.is_array()) malformed("points must be an array");
  for (const auto& i : points) witness.points.push_back(index_value(i));
  return witness;
}

DistanceOracle oracle_from_json(const Json& metric, const FunctionFamily& family) {
  const Json& kind = field(metric, "kind");
  const double p = number(field(metric, "p"), "p");
  try {
    if (kind == "lambda") return DistanceOracle::lambda(family, Exponent(p));
    if (kind == "lp") {
      const Json& level = field(metric, "level");
      if (level.is_null()) return DistanceOracle::lp(family, Exponent(p));
      return DistanceOracle::lp(family, Exponent(p), TruncationLevel(number(level, "level")));
    }
  } catch (const Error& e) {
    if (e.code() == Errc::parse) throw;
    malformed(std::string("metric: ") + e.what());
  }
  malformed("metric kind must be \"lambda\" or \"lp\"");
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open '" + path + "' for reading");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(Errc::parse, "'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io, "cannot open '" + path + "' for writing");
  out << text;
  if (!out.flush()) throw Error(Errc::io, "failed writing '" + path + "'");
}

FunctionFamily read_family_file(const std::string& path) {
  const Json j = read_json_file(path);
  try {
    return family_from_json(j);
  } catch (const Error& e) {
    throw Error(e.code(), "'" + path + "': " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_trend_csv(std::ostream& out, const LadderTrend& trend) {
  out << "index,cover_size,packing_size,min_M_for_half_epsilon\n";
  for (const auto& r : trend.rows) {
    out << r.index << ',';
    if (r.cover_size) out << *r.cover_size;
    out << ',' << r.packing_size << ',';
    if (r.min_level_for_half_epsilon) out << Json(*r.min_level_for_half_epsilon).dump();
    out << '\n';
  }
}

}  // namespace lambdap
