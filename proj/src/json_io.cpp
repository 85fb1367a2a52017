#include "isoflow/json_io.hpp"

#include <fstream>
#include <sstream>

#include "isoflow/errors.hpp"

namespace isoflow {

json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Vec vector_from_json(const json& j) {
  if (!j.is_array()) throw ConfigError("expected an array of numbers");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ConfigError("expected an array of numbers");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

namespace {

template <typename T>
T field(const json& j, const char* name) {
  if (!j.contains(name)) throw ConfigError(std::string("missing field '") + name + "'");
  try {
    return j.at(name).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("field '") + name + "' has the wrong type: " + e.what());
  }
}

}  // namespace

json to_json(const RootDatum& datum) {
  json roots = json::array();
  for (const Vec& r : datum.roots) roots.push_back(vector_to_json(r));
  return json{{"rank", datum.rank},
              {"roots", roots},
              {"mult", datum.mult},
              {"double_mult", datum.double_mult}};
}

RootDatum datum_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("root datum must be a JSON object");
  RootDatum d;
  d.rank = field<int>(j, "rank");
  if (!j.contains("roots") || !j["roots"].is_array()) throw ConfigError("missing field 'roots'");
  for (const json& r : j["roots"]) d.roots.push_back(vector_from_json(r));
  d.mult = field<std::vector<int>>(j, "mult");
  d.double_mult = field<std::vector<int>>(j, "double_mult");
  d.verified = false;
  d.validate();
  return d;
}

json to_json(const FoliationConfig& cfg) {
  json b = json::array();
  for (const Vec& v : cfg.b_basis) b.push_back(vector_to_json(v));
  json out;
  out["model"] = cfg.model ? json(cfg.model->lie().id()) : json(nullptr);
  out["root_datum"] = to_json(cfg.datum);
  out["b_basis"] = b;
  out["chosen_roots"] = cfg.set.indices;
  out["xi_index"] = cfg.xi_index;
  out["offsets"] = cfg.offsets;
  return out;
}

FoliationConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  FoliationConfig cfg;
  if (j.contains("model") && !j["model"].is_null()) {
    const auto id = field<std::string>(j, "model");
    cfg.model = std::make_shared<const SolvableModel>(load_model(id));
    cfg.datum = cfg.model->datum();
    if (j.contains("root_datum") && !j["root_datum"].is_null()) {
      const RootDatum given = datum_from_json(j["root_datum"]);
      bool same = given.rank == cfg.datum.rank && given.size() == cfg.datum.size() &&
                  given.mult == cfg.datum.mult && given.double_mult == cfg.datum.double_mult;
      for (int i = 0; same && i < given.size(); ++i) {
        same = (given.roots[i] - cfg.datum.roots[i]).cwiseAbs().maxCoeff() <= 1e-8;
      }
      if (!same) throw ConfigError("root_datum does not match the datum of model '" + id + "'");
    }
  } else {
    if (!j.contains("root_datum")) throw ConfigError("config needs a model or a root_datum");
    cfg.datum = datum_from_json(j["root_datum"]);
  }
  if (j.contains("b_basis")) {
    if (!j["b_basis"].is_array()) throw ConfigError("'b_basis' must be an array");
    for (const json& v : j["b_basis"]) cfg.b_basis.push_back(vector_from_json(v));
  }
  if (j.contains("chosen_roots")) cfg.set.indices = field<std::vector<int>>(j, "chosen_roots");
  if (j.contains("xi_index")) {
    cfg.xi_index = field<std::vector<int>>(j, "xi_index");
  } else {
    cfg.xi_index.assign(cfg.set.indices.size(), 0);
  }
  if (j.contains("offsets")) {
    cfg.offsets = field<std::vector<double>>(j, "offsets");
  } else {
    cfg.offsets.assign(cfg.set.indices.size(), 0.0);
  }
  for (int idx : cfg.set.indices) {
    if (idx < 0 || idx >= cfg.datum.size()) throw ConfigError("chosen root index out of range");
  }
  cfg.validate();
  return cfg;
}

json to_json(const SolvableModel& model) {
  json basis = json::array();
  const int n = model.dimension();
  for (int i = 0; i < n; ++i) {
    const int root = model.root_of(i);
    std::string label = root < 0 ? "a:" + std::to_string(i) : "root:" + std::to_string(root);
    basis.push_back(json{{"label", label}, {"matrix", matrix_to_json(model.matrix(Vec::Unit(n, i)))}});
  }
  json spaces = json::array();
  for (int r = 0; r < model.datum().size(); ++r) spaces.push_back(model.root_space(r));
  json norms = json::array();
  for (int r = 0; r < model.datum().size(); ++r) norms.push_back(model.datum().norm(r));
  return json{{"model", model.lie().id()},
              {"dimension_g", model.lie().dimension()},
              {"dimension_an", n},
              {"dimension_k", model.k_dimension()},
              {"root_datum", to_json(model.datum())},
              {"root_norms", norms},
              {"root_spaces", spaces},
              {"adapted_basis", basis}};
}

json to_json(const BlockOperator& op) {
  json blocks = json::array();
  for (const Block& b : op.blocks) {
    json jb{{"label", b.label},
            {"offset", b.offset},
            {"size", b.size},
            {"matrix", matrix_to_json(op.matrix.block(b.offset, b.offset, b.size, b.size))}};
    if (b.pair_norm != 0) jb["pair_norm"] = b.pair_norm;
    blocks.push_back(std::move(jb));
  }
  return json{{"blocks", blocks}, {"matrix", matrix_to_json(op.matrix)}, {"basis", matrix_to_json(op.basis)}};
}

json to_json(const AdaptednessReport& report) {
  json entries = json::array();
  for (const auto& e : report.entries) {
    entries.push_back(json{{"normal", e.normal},
                           {"commutator_norm", e.commutator_norm},
                           {"normal_leak", e.normal_leak},
                           {"adapted", e.adapted}});
  }
  json pairs = json::array();
  for (const auto& p : report.pairs) {
    pairs.push_back(json{{"block", p.label},
                         {"t", p.t},
                         {"pair_norm", p.pair_norm},
                         {"oracle", {p.oracle_x_to_y, p.oracle_y_to_x}},
                         {"corrected", {p.corrected_x_to_y, p.corrected_y_to_x}},
                         {"reference", {p.reference_x_to_y, p.reference_y_to_x}}});
  }
  return json{{"verdict", report.adapted ? "adapted" : "not adapted"},
              {"method", report.method},
              {"verified", report.verified},
              {"tolerance", report.tolerance},
              {"normals", entries},
              {"pair_commutators", pairs}};
}

json to_json(const FlowVerdict& verdict) {
  return json{{"exists_for_all_time", verdict.exists_for_all_time},
              {"regime", verdict.regime},
              {"decay_exponents", verdict.decay_exponents},
              {"verified", verdict.verified}};
}

json to_json(const MeanCurvatureCoefficients& coeffs) {
  return json{{"drift", coeffs.drift},
              {"root_norm", coeffs.root_norm},
              {"weight", coeffs.weight},
              {"decay_rates", coeffs.decay_rates()},
              {"verified", coeffs.verified}};
}

}  // namespace isoflow
