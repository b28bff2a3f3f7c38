#include "cubedim/io.hpp"

#include <istream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace cubedim {

using nlohmann::json;

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    cells.push_back(cell);
  }
  return cells;
}

double parse_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(Errc::InvalidParams, "bad numeric field '" + s + "'");
  }
}

json rational_json(const Rational& q) {
  json out;
  const BigInt num = numerator(q), den = denominator(q);
  // integers that survive a double round-trip stay numeric, larger ones
  // become strings
  const BigInt cap = BigInt(1) << 53;
  if (num < cap && num > -cap)
    out["num"] = num.convert_to<long long>();
  else
    out["num"] = num.str();
  if (den < cap)
    out["den"] = den.convert_to<long long>();
  else
    out["den"] = den.str();
  return out;
}

BigInt bigint_from_json(const json& j) {
  if (j.is_number_integer()) return BigInt(j.get<long long>());
  if (j.is_string()) return BigInt(j.get<std::string>());
  fail(Errc::InvalidParams, "expected an integer or integer string");
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(BigInt(j.get<long long>()));
  if (!j.is_object() || !j.contains("num") || !j.contains("den"))
    fail(Errc::InvalidParams, "expected {num, den}");
  const BigInt den = bigint_from_json(j.at("den"));
  if (den == 0) fail(Errc::InvalidParams, "zero denominator");
  return Rational(bigint_from_json(j.at("num")), den);
}

json versioned(json j) {
  j["version"] = std::string(kToolName) + " " + kVersion;
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json evidence_json(const Evidence& ev) {
  json row;
  row["descriptor"] = ev.descriptor;
  if (ev.x >= 0) row["x"] = ev.x;
  if (ev.big_r > 0) {
    row["R"] = ev.big_r;
    row["r"] = ev.small_r;
  }
  if (ev.cube_from >= 0) {
    row["cube_from"] = ev.cube_from;
    row["cube_to"] = ev.cube_to;
  }
  row["scale_gap"] = ev.scale_gap;
  row["log_ratio"] = ev.log_ratio;
  row["exponent"] = ev.exponent;
  return row;
}

}  // namespace

FiniteMetricSpace load_points_csv(std::istream& in, CoordMetric metric) {
  std::string line;
  if (!std::getline(in, line)) fail(Errc::InvalidParams, "empty point file");
  const std::vector<std::string> header = split_csv_line(line);

  if (header.size() == 3 && header[0] == "id_row" && header[1] == "id_col" &&
      header[2] == "dist") {
    std::vector<std::string> ids;
    std::map<std::string, int> index;
    std::map<std::pair<int, int>, double> entries;
    auto intern = [&](const std::string& id) {
      auto it = index.find(id);
      if (it != index.end()) return it->second;
      const int i = static_cast<int>(ids.size());
      ids.push_back(id);
      index.emplace(id, i);
      return i;
    };
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto cells = split_csv_line(line);
      if (cells.size() != 3) fail(Errc::InvalidParams, "matrix rows need id_row,id_col,dist");
      const int a = intern(cells[0]), b = intern(cells[1]);
      entries[{a, b}] = parse_double(cells[2]);
    }
    const int n = static_cast<int>(ids.size());
    if (n == 0) fail(Errc::InvalidParams, "no matrix entries");
    std::vector<double> dense(static_cast<std::size_t>(n) * n, 0.0);
    std::vector<char> known(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) known[static_cast<std::size_t>(i) * n + i] = 1;
    for (const auto& [key, value] : entries) {
      dense[static_cast<std::size_t>(key.first) * n + key.second] = value;
      known[static_cast<std::size_t>(key.first) * n + key.second] = 1;
      // mirror unless the file states the transposed entry itself
      if (!entries.count({key.second, key.first})) {
        dense[static_cast<std::size_t>(key.second) * n + key.first] = value;
        known[static_cast<std::size_t>(key.second) * n + key.first] = 1;
      }
    }
    for (std::size_t i = 0; i < known.size(); ++i)
      if (!known[i]) fail(Errc::InvalidParams, "distance matrix is incomplete");
    return FiniteMetricSpace::from_matrix(std::move(ids), std::move(dense));
  }

  if (header.size() < 2 || header[0] != "id")
    fail(Errc::InvalidParams, "expected 'id,x1,...' or 'id_row,id_col,dist' header");
  const int dim = static_cast<int>(header.size()) - 1;
  std::vector<std::string> ids;
  std::vector<std::vector<double>> coords;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (static_cast<int>(cells.size()) != dim + 1)
      fail(Errc::InvalidParams, "coordinate row width does not match the header");
    ids.push_back(cells[0]);
    std::vector<double> row(dim);
    for (int k = 0; k < dim; ++k) row[k] = parse_double(cells[k + 1]);
    coords.push_back(std::move(row));
  }
  return FiniteMetricSpace::from_coordinates(std::move(ids), std::move(coords), metric);
}

FiniteMetricSpace load_points_csv_string(const std::string& text, CoordMetric metric) {
  std::istringstream in(text);
  return load_points_csv(in, metric);
}

std::string points_to_csv(const FiniteMetricSpace& space) {
  std::ostringstream out;
  out.precision(17);
  if (space.has_coordinates()) {
    out << "id";
    for (int k = 1; k <= space.coord_dim(); ++k) out << ",x" << k;
    out << "\n";
    for (int i = 0; i < space.size(); ++i) {
      out << space.id(i);
      for (int k = 0; k < space.coord_dim(); ++k) out << "," << space.coordinate(i, k);
      out << "\n";
    }
  } else {
    out << "id_row,id_col,dist\n";
    for (int i = 0; i < space.size(); ++i)
      for (int j = i + 1; j < space.size(); ++j)
        out << space.id(i) << "," << space.id(j) << "," << space.distance(i, j) << "\n";
  }
  return out.str();
}

std::string tree_spec_to_json(const TreeSpec& spec) {
  json j;
  j["delta"] = rational_json(spec.delta);
  j["root"] = spec.root;
  j["J"] = spec.num_slots;
  json types = json::array();
  for (const auto& t : spec.types) {
    json children = json::array();
    for (const auto& c : t.children) {
      json child;
      child["type"] = c.type;
      child["kind"] = c.central() ? "central" : "boundary";
      if (c.central()) child["slot"] = c.slot;
      children.push_back(child);
    }
    types.push_back(json{{"children", children}});
  }
  j["types"] = types;
  return dump(versioned(j));
}

TreeSpec tree_spec_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, true, true);
  TreeSpec spec;
  spec.delta = rational_from_json(j.at("delta"));
  spec.root = j.value("root", 0);
  spec.num_slots = j.value("J", 1);
  for (const auto& t : j.at("types")) {
    SpecType type;
    for (const auto& c : t.at("children")) {
      SpecChild child;
      child.type = c.at("type").get<int>();
      const std::string kind = c.at("kind").get<std::string>();
      if (kind == "central")
        child.slot = c.value("slot", 1);
      else if (kind == "boundary")
        child.slot = 0;
      else
        fail(Errc::InvalidParams, "child kind must be central or boundary");
      type.children.push_back(child);
    }
    spec.types.push_back(std::move(type));
  }
  // loading is permissive about the delta < 1/7 hypothesis; constructors are
  // the strict path
  spec.relaxed_delta = true;
  spec.validate();
  return spec;
}

std::string cube_tree_to_json(const CubeTree& tree) {
  json j;
  j["delta"] = rational_json(tree.delta);
  j["source"] = to_string(tree.source);
  j["levels"] = tree.num_levels;
  j["J"] = tree.num_slots;
  if (tree.source == TreeSource::metric) {
    j["origin"] = tree.origin;
    j["scale"] = tree.scale;
    j["point_ids"] = tree.point_ids;
    if (tree.vacuous_from >= 0) j["vacuous_from"] = tree.vacuous_from;
  }
  json cubes = json::array();
  for (const auto& cube : tree.cubes) {
    json c;
    c["id"] = cube.id;
    c["k"] = cube.level;
    if (cube.parent >= 0) c["parent"] = cube.parent;
    if (cube.kind != CubeKind::root) c["kind"] = to_string(cube.kind);
    if (cube.slot > 0) c["slot"] = cube.slot;
    if (cube.center >= 0) c["center"] = cube.center;
    if (cube.type >= 0) c["type"] = cube.type;
    c["children"] = cube.children;
    if (tree.source == TreeSource::metric) c["members"] = cube.members;
    cubes.push_back(std::move(c));
  }
  j["cubes"] = cubes;
  return dump(versioned(j));
}

CubeTree cube_tree_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, true, true);
  CubeTree tree;
  tree.delta = rational_from_json(j.at("delta"));
  const std::string source = j.at("source").get<std::string>();
  if (source == "metric")
    tree.source = TreeSource::metric;
  else if (source == "spec")
    tree.source = TreeSource::spec;
  else
    fail(Errc::InvalidParams, "tree source must be metric or spec");
  tree.num_levels = j.at("levels").get<int>();
  tree.num_slots = j.value("J", 1);
  if (tree.source == TreeSource::metric) {
    tree.origin = j.value("origin", -1);
    tree.scale = j.value("scale", 1.0);
    tree.vacuous_from = j.value("vacuous_from", -1);
    if (j.contains("point_ids")) tree.point_ids = j.at("point_ids").get<std::vector<std::string>>();
  }
  const auto& cubes = j.at("cubes");
  tree.cubes.resize(cubes.size());
  tree.level_cubes.assign(tree.num_levels + 1, {});
  for (const auto& c : cubes) {
    Cube cube;
    cube.id = c.at("id").get<int>();
    cube.level = c.at("k").get<int>();
    cube.parent = c.value("parent", -1);
    cube.center = c.value("center", -1);
    cube.type = c.value("type", -1);
    const std::string kind = c.value("kind", "root");
    cube.kind = kind == "central" ? CubeKind::central
                                  : (kind == "boundary" ? CubeKind::boundary : CubeKind::root);
    cube.slot = c.value("slot", cube.kind == CubeKind::central ? 1 : 0);
    cube.children = c.at("children").get<std::vector<int>>();
    if (c.contains("members")) cube.members = c.at("members").get<std::vector<int>>();
    if (cube.id < 0 || cube.id >= static_cast<int>(tree.cubes.size()))
      fail(Errc::InvalidParams, "cube id out of range");
    if (cube.level < 0 || cube.level > tree.num_levels)
      fail(Errc::InvalidParams, "cube level out of range");
    tree.level_cubes[cube.level].push_back(cube.id);
    tree.cubes[cube.id] = std::move(cube);
  }
  return tree;
}

std::string mass_assignment_to_json(const MassAssignment& mu, const std::string& tree_ref) {
  json j;
  j["tree"] = tree_ref;
  j["p"] = rational_json(mu.p);
  json eta = json::array();
  for (const auto& e : mu.eta) eta.push_back(rational_json(e));
  j["eta"] = eta;
  json masses = json::array();
  for (std::size_t id = 0; id < mu.masses.size(); ++id) {
    json m;
    m["cube"] = id;
    const Rational& q = mu.masses[id];
    m["num"] = rational_json(q)["num"];
    m["den"] = rational_json(q)["den"];
    masses.push_back(std::move(m));
  }
  j["masses"] = masses;
  return dump(versioned(j));
}

MassAssignment mass_assignment_from_json(const std::string& text, const CubeTree& tree) {
  json j = json::parse(text, nullptr, true, true);
  MassAssignment mu;
  mu.p = rational_from_json(j.at("p"));
  for (const auto& e : j.at("eta")) mu.eta.push_back(rational_from_json(e));
  mu.masses.assign(tree.cubes.size(), Rational(0));
  for (const auto& m : j.at("masses")) {
    const std::size_t cube = m.at("cube").get<std::size_t>();
    if (cube >= mu.masses.size()) fail(Errc::InvalidParams, "mass entry for a missing cube");
    mu.masses[cube] = Rational(bigint_from_json(m.at("num")), bigint_from_json(m.at("den")));
  }
  // children must sum to their parents; catches corrupt or truncated files
  for (const auto& cube : tree.cubes) {
    if (cube.leaf()) continue;
    Rational sum = 0;
    for (int ch : cube.children) sum += mu.masses[ch];
    if (sum != mu.masses[cube.id])
      fail(Errc::StructureError,
           "masses of cube " + std::to_string(cube.id) + "'s children do not sum to its mass");
  }
  return mu;
}

std::string metric_validation_to_json(const MetricValidation& report) {
  json j;
  j["pass"] = report.pass;
  j["sampled"] = report.sampled;
  json violations = json::array();
  for (const auto& v : report.violations)
    violations.push_back(json{{"kind", v.kind}, {"ids", v.ids}, {"values", v.values}});
  j["violations"] = violations;
  return dump(versioned(j));
}

std::string tree_validation_to_json(const TreeValidation& report) {
  json j;
  j["pass"] = report.pass;
  json props = json::array();
  for (const auto& p : report.properties) {
    json row;
    row["property"] = p.property;
    row["checked"] = p.checked;
    row["pass"] = p.pass;
    row["witnesses"] = p.witnesses;
    props.push_back(std::move(row));
  }
  j["properties"] = props;
  return dump(versioned(j));
}

std::string dimension_report_to_json(const DimensionReport& report, bool emit_evidence) {
  json j;
  j["kind"] = to_string(report.kind);
  j["method"] = to_string(report.method);
  j["value"] = report.value;
  j["infinite"] = report.infinite;
  j["constant"] = report.constant;
  j["sup_exponent"] = report.sup_exponent;
  if (report.window_r_max > 0)
    j["window"] = json{{"r_min", report.window_r_min}, {"r_max", report.window_r_max}};
  if (report.depth_max >= 0)
    j["window"] = json{{"m_min", report.depth_min}, {"m_max", report.depth_max}};
  j["flags"] = report.flags;
  if (emit_evidence) {
    json rows = json::array();
    for (const auto& ev : report.evidence) rows.push_back(evidence_json(ev));
    j["evidence"] = rows;
  } else {
    j["evidence_rows"] = report.evidence.size();
  }
  return dump(versioned(j));
}

std::string exact_dimension_to_json(const ExactDimension& dim, bool emit_evidence) {
  json j;
  j["kind"] = to_string(dim.kind);
  j["method"] = "exact_cycle";
  j["value"] = dim.value();
  j["ratio"] = rational_json(dim.ratio);
  j["cycle_length"] = dim.length;
  j["delta"] = rational_json(dim.delta);
  if (emit_evidence) {
    json cycle = json::array();
    for (const auto& step : dim.cycle) {
      json s;
      s["from_type"] = step.from_type;
      s["to_type"] = step.to_type;
      s["kind"] = step.boundary ? "boundary" : "central";
      if (step.slot > 0) s["slot"] = step.slot;
      s["growth"] = rational_json(step.growth);
      cycle.push_back(std::move(s));
    }
    j["cycle"] = cycle;
  }
  return dump(versioned(j));
}

std::string key_estimate_to_json(const KeyEstimateResult& result) {
  json j;
  j["pass"] = result.pass;
  j["epsilon"] = result.epsilon;
  j["chains_checked"] = result.chains_checked;
  j["worst_slack"] = result.worst_slack;
  if (result.worst_to >= 0) {
    j["worst_chain"] = json{{"from", result.worst_from},
                            {"to", result.worst_to},
                            {"chain", result.worst_chain.chain},
                            {"boundary_steps", result.worst_chain.boundary_steps}};
  }
  return dump(versioned(j));
}

std::string continuity_report_to_json(const ContinuityReport& report) {
  json j;
  j["pass"] = report.pass;
  json rows = json::array();
  for (const auto& row : report.rows) {
    rows.push_back(json{{"p", rational_json(row.p)},
                        {"p2", rational_json(row.p2)},
                        {"gap_assouad", row.gap_assouad},
                        {"gap_lower", row.gap_lower},
                        {"modulus", row.modulus},
                        {"pass", row.pass}});
  }
  j["pairs"] = rows;
  return dump(versioned(j));
}

std::string binom_bound_to_json(const BinomBoundResult& result) {
  json j;
  j["pass"] = result.pass;
  j["hypothesis_holds"] = result.hypothesis_holds;
  j["max_boundary_steps"] = result.max_boundary_steps;
  j["cap"] = result.cap;
  j["admissible"] = result.admissible.str();
  j["total"] = result.total.str();
  j["bound"] = result.bound;
  return dump(versioned(j));
}

std::string blowup_report_to_json(const BlowupReport& report) {
  json j;
  j["applicable"] = report.applicable;
  j["beta_hat"] = rational_json(report.beta_hat);
  j["pass"] = report.pass;
  j["diverging"] = report.diverging;
  json rows = json::array();
  for (const auto& row : report.rows) {
    rows.push_back(json{{"p", rational_json(row.p)},
                        {"value", row.value},
                        {"lower_bound", row.lower_bound},
                        {"pass", row.pass}});
  }
  j["rows"] = rows;
  return dump(versioned(j));
}

std::string solve_result_to_json(const SolveResult& result) {
  json j;
  j["p"] = rational_json(result.p);
  json eta = json::array();
  for (const auto& e : result.eta) eta.push_back(rational_json(e));
  j["eta"] = eta;
  j["achieved"] = result.achieved;
  j["target"] = result.target;
  j["tol"] = result.tol;
  j["iterations"] = result.iterations;
  j["range"] = json{{"min", result.range_min}, {"max", result.range_max}};
  return dump(versioned(j));
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out.precision(17);
  out << "p_num,p_den,dim_assouad,dim_lower\n";
  for (const auto& row : rows) {
    out << numerator(row.p).str() << "," << denominator(row.p).str() << ","
        << row.assouad.value() << "," << row.lower.value() << "\n";
  }
  return out.str();
}

std::string sweep_to_json(const std::vector<SweepRow>& rows) {
  json j;
  json out = json::array();
  for (const auto& row : rows) {
    out.push_back(json{{"p", rational_json(row.p)},
                       {"dim_assouad", row.assouad.value()},
                       {"dim_lower", row.lower.value()}});
  }
  j["rows"] = out;
  return dump(versioned(j));
}

}  // namespace cubedim
