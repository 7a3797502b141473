#pragma once

#include "sqca/nearincl.hpp"
#include "sqca/qca.hpp"

#include <json.hpp>

namespace sqca {

using json = nlohmann::ordered_json;

// rows of [re, im] pairs
json mat_to_json(const Mat& m);
Mat mat_from_json(const json& j);

json group_to_json(const FiniteGroup& g);
// preset name or {order, table}
FiniteGroup group_from_json(const json& j);

json site_to_json(const Site& s);
Site site_from_json(const json& j, const FiniteGroup& g);
json window_to_json(const ChainWindow& w);
ChainWindow window_from_json(const json& j, const FiniteGroup& g);

// {window, realization: {type: preset | global_unitary | block_maps, payload}}
json qca_to_json(const QcaRealization& q);
QcaRealization qca_from_json(const json& j, const FiniteGroup& g);

json triple_to_json(const IndexTriple& t);
json index_report_to_json(const QcaIndexReport& r, const std::vector<FactorizationReport>& cells = {});
json decoupling_to_json(const Decoupling& d);
json bound_checks_to_json(const std::vector<BoundCheck>& checks);

struct ProblemFile {
  int version = 1;
  FiniteGroup group;
  json qca;
  json options = json::object();
};

ProblemFile parse_problem(const json& j);
ProblemFile load_problem(const std::string& path);

}  // namespace sqca
