#include "sqca/io.hpp"

#include <fstream>

namespace sqca {

namespace {

[[noreturn]] void schema(const std::string& what) { throw Error(Errc::InvalidInput, "schema: " + what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return j.at(key).get<T>();
}

template <typename F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    schema(e.what());
  }
}

Eigen::VectorXi grading_from_json(const json& j) {
  if (!j.is_array() || j.empty()) schema("grading must be a non-empty array");
  Eigen::VectorXi g(Eigen::Index(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    int v = j[i].get<int>();
    if (v != 1 && v != -1) schema("grading entries must be +1 or -1");
    g(Eigen::Index(i)) = v;
  }
  return g;
}

json grading_to_json(const Eigen::VectorXi& g) {
  json out = json::array();
  for (Eigen::Index i = 0; i < g.size(); ++i) out.push_back(g(i));
  return out;
}

std::vector<Mat> mats_from_json(const json& j) {
  if (!j.is_array()) schema("expected an array of matrices");
  std::vector<Mat> out;
  for (const auto& m : j) out.push_back(mat_from_json(m));
  return out;
}

json mats_to_json(const std::vector<Mat>& ms) {
  json out = json::array();
  for (const auto& m : ms) out.push_back(mat_to_json(m));
  return out;
}

json gates_to_json(const std::vector<GateBlock>& gates) {
  json out = json::array();
  for (const auto& b : gates) out.push_back({{"sites", b.sites}, {"unitary", mat_to_json(b.unitary)}});
  return out;
}

QcaRealization preset_from_json(const json& p, const json& window, const FiniteGroup& g) {
  const std::string name = field(p, "name").get<std::string>();
  auto need_window = [&]() {
    if (window.is_null()) schema("preset '" + name + "' needs a window");
    return window_from_json(window, g);
  };
  auto sub = [&](const char* key) { return qca_from_json(field(p, key), g); };
  const Eigen::Index sites = get_or<Eigen::Index>(p, "sites", 6);
  const bool left = get_or<bool>(p, "left", false);
  const bool periodic = get_or<bool>(p, "periodic", false);
  if (name == "identity") return identity_qca(need_window());
  if (name == "shift") return preset_shift(field(p, "d").get<int>(), sites, left, periodic);
  if (name == "site_shift") return preset_site_shift(need_window(), left);
  if (name == "majorana") return preset_majorana_shift(sites, left, periodic, get_or<bool>(p, "swap_order", false));
  if (name == "zeta_example") {
    Z2Hom z{field(p, "zeta").get<std::vector<int>>()};
    return preset_zeta_example(g, mats_from_json(field(p, "v")), z, sites, get_or<bool>(p, "half_sites", false));
  }
  if (name == "cocycle_example")
    return preset_cocycle_example(g, mats_from_json(field(p, "v")), sites, get_or<bool>(p, "half_sites", false));
  if (name == "circuit") {
    ChainWindow w = need_window();
    Rng rng(get_or<std::uint64_t>(p, "seed", 0));
    return circuit_from_layers(w, random_brickwork(w, rng));
  }
  if (name == "compose") return compose_qca(sub("a"), sub("b"));
  if (name == "stack") return stack_qca(sub("a"), sub("b"));
  if (name == "inverse") return inverse_qca(sub("qca"));
  if (name == "coarse_grain") return coarse_grain(sub("qca"), field(p, "factor").get<int>());
  schema("unknown preset '" + name + "'");
}

}  // namespace

json mat_to_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat mat_from_json(const json& j) {
  return guarded([&] {
    if (j.is_array() && j.empty()) return Mat(0, 0);
    if (!j.is_array() || !j[0].is_array()) schema("matrix must be an array of rows");
    const std::size_t rows = j.size(), cols = j[0].size();
    Mat m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
      if (j[r].size() != cols) schema("ragged matrix");
      for (std::size_t c = 0; c < cols; ++c) {
        const json& e = j[r][c];
        if (e.is_number()) {
          m(Eigen::Index(r), Eigen::Index(c)) = e.get<double>();
        } else if (e.is_array() && e.size() == 2) {
          m(Eigen::Index(r), Eigen::Index(c)) = cplx(e[0].get<double>(), e[1].get<double>());
        } else {
          schema("matrix entries must be numbers or [re, im]");
        }
      }
    }
    return m;
  });
}

json group_to_json(const FiniteGroup& g) {
  json table = json::array();
  for (int a = 0; a < g.order; ++a) {
    json row = json::array();
    for (int b = 0; b < g.order; ++b) row.push_back(g.mul(a, b));
    table.push_back(row);
  }
  return {{"name", g.name}, {"order", g.order}, {"table", table}};
}

FiniteGroup group_from_json(const json& j) {
  return guarded([&] {
    if (j.is_string()) return group_preset(j.get<std::string>());
    auto table = field(j, "table").get<std::vector<std::vector<int>>>();
    if (j.contains("order") && j.at("order").get<std::size_t>() != table.size()) schema("order does not match table");
    return group_from_table(table, get_or<std::string>(j, "name", ""));
  });
}

json site_to_json(const Site& s) { return {{"grading", grading_to_json(s.grading)}, {"rep", mats_to_json(s.rep)}}; }

Site site_from_json(const json& j, const FiniteGroup& g) {
  return guarded([&] {
    const std::string kind = get_or<std::string>(j, "kind", "explicit");
    if (kind == "plain") return plain_site(g, field(j, "dim").get<Eigen::Index>());
    if (kind == "graded") return graded_site(g, grading_from_json(field(j, "grading")));
    if (kind == "regular") return regular_site(g);
    if (kind != "explicit") schema("unknown site kind '" + kind + "'");
    Site s;
    s.grading = grading_from_json(field(j, "grading"));
    s.rep = mats_from_json(field(j, "rep"));
    if (int(s.rep.size()) != g.order) schema("site rep needs one matrix per group element");
    return s;
  });
}

json window_to_json(const ChainWindow& w) {
  json sites = json::array();
  for (const auto& s : w.sites) sites.push_back(site_to_json(s));
  return {{"periodic", w.periodic}, {"sites", sites}};
}

ChainWindow window_from_json(const json& j, const FiniteGroup& g) {
  return guarded([&] {
    ChainWindow w;
    const bool periodic = get_or<bool>(j, "periodic", false);
    if (j.contains("site")) {
      w = uniform_window(g, site_from_json(j.at("site"), g), field(j, "count").get<Eigen::Index>(), periodic);
    } else {
      w.group = g;
      w.periodic = periodic;
      for (const auto& s : field(j, "sites")) w.sites.push_back(site_from_json(s, g));
    }
    validate_window(w);
    return w;
  });
}

json qca_to_json(const QcaRealization& q) {
  json real;
  if (q.kind == RealizationKind::GlobalUnitary) {
    real = {{"type", "global_unitary"}, {"payload", {{"unitary", mat_to_json(q.unitary)}}}};
  } else {
    real = {{"type", "block_maps"}, {"payload", {{"block_size", q.block_size}, {"patches", mats_to_json(q.patches)}}}};
  }
  return {{"window", window_to_json(q.window)}, {"realization", real}, {"provenance", q.provenance}};
}

QcaRealization qca_from_json(const json& j, const FiniteGroup& g) {
  return guarded([&] {
    const json& real = field(j, "realization");
    const std::string type = field(real, "type").get<std::string>();
    const json& payload = field(real, "payload");
    const json window = j.contains("window") ? j.at("window") : json();
    QcaRealization q;
    if (type == "preset") {
      q = preset_from_json(payload, window, g);
    } else if (type == "global_unitary" || type == "block_maps") {
      if (window.is_null()) schema("explicit realizations need a window");
      q.window = window_from_json(window, g);
      if (type == "global_unitary") {
        q.kind = RealizationKind::GlobalUnitary;
        q.unitary = mat_from_json(field(payload, "unitary"));
        if (q.unitary.rows() != q.window.total_dim() || q.unitary.cols() != q.window.total_dim())
          throw Error(Errc::DimensionMismatch, "global unitary does not match the window");
      } else {
        q.kind = RealizationKind::BlockMaps;
        q.block_size = get_or<int>(payload, "block_size", 1);
        q.patches = mats_from_json(field(payload, "patches"));
      }
      q.provenance = get_or<std::string>(j, "provenance", type);
    } else {
      schema("unknown realization type '" + type + "'");
    }
    return q;
  });
}

json triple_to_json(const IndexTriple& t) {
  json canon = json::array();
  for (Eigen::Index r = 0; r < t.nu.canonical.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < t.nu.canonical.cols(); ++c) row.push_back(t.nu.canonical(r, c));
    canon.push_back(row);
  }
  return {{"d", {{"num", t.d.num}, {"den", t.d.den}, {"radical", t.d.radical != 0}}},
          {"zeta", t.zeta.values},
          {"nu", {{"modulus", t.nu.modulus}, {"canonical", canon}}}};
}

json index_report_to_json(const QcaIndexReport& r, const std::vector<FactorizationReport>& cells) {
  json out = triple_to_json(r.index);
  json diag = {{"cell", r.cell},
               {"dim_l", r.dim_l},
               {"dim_r", r.dim_r},
               {"shape_l", r.shape_l},
               {"shape_r", r.shape_r},
               {"cocycle", mat_to_json(r.index.nu_rep.phases)},
               {"left_route", triple_to_json(r.left_route)}};
  json fact = json::array();
  for (const auto& f : cells)
    fact.push_back({{"cell", f.cell},
                    {"dim_c", f.dim_c},
                    {"dim_b", f.dim_b},
                    {"dim_l", f.dim_l},
                    {"dim_r", f.dim_r},
                    {"dim_r_prev", f.dim_r_prev},
                    {"shape_l", f.shape_l},
                    {"shape_r", f.shape_r},
                    {"ok", f.ok},
                    {"failures", f.failures}});
  if (!cells.empty()) diag["factorization"] = fact;
  out["diagnostics"] = diag;
  return out;
}

json decoupling_to_json(const Decoupling& d) {
  return {{"phi", gates_to_json(d.phi)},
          {"psi", gates_to_json(d.psi)},
          {"auxiliaries", d.auxiliaries},
          {"roundtrip_error", d.roundtrip_error}};
}

json bound_checks_to_json(const std::vector<BoundCheck>& checks) {
  json out = json::array();
  for (const auto& c : checks)
    out.push_back({{"tag", c.tag},
                   {"constant", c.constant},
                   {"bound", c.bound},
                   {"observed", c.observed},
                   {"applicable", c.applicable},
                   {"pass", c.pass}});
  return out;
}

ProblemFile parse_problem(const json& j) {
  return guarded([&] {
    ProblemFile p;
    if (!j.is_object()) schema("problem file must be an object");
    p.version = get_or<int>(j, "version", 1);
    if (p.version != 1) schema("unsupported version " + std::to_string(p.version));
    p.group = group_from_json(j.contains("group") ? j.at("group") : json("trivial"));
    p.qca = field(j, "qca");
    if (j.contains("options")) p.options = j.at("options");
    return p;
  });
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidInput, "cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    schema(e.what());
  }
  return parse_problem(j);
}

}  // namespace sqca
