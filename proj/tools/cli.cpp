#include "cli.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "isoflow/errors.hpp"
#include "isoflow/flow.hpp"
#include "isoflow/foliation.hpp"
#include "isoflow/json_io.hpp"
#include "isoflow/verify.hpp"

namespace isoflow::cli {

namespace {

constexpr int kMaxOffsets = 8;

struct Options {
  std::string model = "su21";
  std::string datum;
  std::string config;
  int k = 1;
  int b_dim = 0;
  std::vector<int> roots;
  std::vector<int> xi_index;
  std::array<double, kMaxOffsets> t{};
  std::array<CLI::Option*, kMaxOffsets> t_opt{};
  double horizon = 10;
  double step = 1e-3;
  int stride = 1;
  std::string out;
  std::string format;
};

std::vector<double> offsets_from_flags(const Options& o, int k) {
  for (int j = k; j < kMaxOffsets; ++j) {
    if (o.t_opt[j]->count() > 0) {
      throw ConfigError("--t" + std::to_string(j + 1) + " given but k = " + std::to_string(k));
    }
  }
  std::vector<double> offsets(k, 0.0);
  for (int j = 0; j < k; ++j) {
    if (o.t_opt[j]->count() > 0) {
      offsets[j] = o.t[j];
    } else if (j == 0) {
      offsets[j] = 1.0;
    }
  }
  return offsets;
}

FoliationConfig build_config(const Options& o) {
  if (!o.config.empty()) {
    FoliationConfig cfg = config_from_json(read_json_file(o.config));
    bool any = false;
    for (int j = 0; j < kMaxOffsets; ++j) any = any || o.t_opt[j]->count() > 0;
    if (!any) return cfg;
    std::vector<double> offsets = cfg.offsets;
    for (int j = 0; j < kMaxOffsets; ++j) {
      if (o.t_opt[j]->count() == 0) continue;
      if (j >= cfg.k()) throw ConfigError("--t" + std::to_string(j + 1) + " given but k = " + std::to_string(cfg.k()));
      offsets[j] = o.t[j];
    }
    FoliationConfig out = cfg.with_offsets(offsets);
    out.validate();
    return out;
  }
  ConfigOptions copts;
  copts.k = o.k;
  copts.b_dim = o.b_dim;
  copts.offsets = offsets_from_flags(o, std::max(o.k, 0));
  copts.chosen = o.roots;
  copts.xi_index = o.xi_index;
  if (!o.datum.empty()) return make_config(datum_from_json(read_json_file(o.datum)), copts);
  return make_config(std::make_shared<const SolvableModel>(load_model(o.model)), copts);
}

json describe(const FoliationConfig& cfg) {
  json roots = json::array();
  for (int r = 0; r < cfg.datum.size(); ++r) {
    json jr{{"index", r},
            {"vector", vector_to_json(cfg.datum.roots[r])},
            {"norm", cfg.datum.norm(r)},
            {"multiplicity", cfg.datum.mult[r]}};
    if (const auto d = cfg.datum.double_of(r)) jr["double"] = *d;
    roots.push_back(std::move(jr));
  }
  json blocks = json::array();
  for (const Block& b : block_structure(cfg)) {
    json jb{{"label", b.label}, {"size", b.size}};
    if (b.pair_norm != 0) jb["pair_norm"] = b.pair_norm;
    blocks.push_back(std::move(jb));
  }
  json out;
  out["model"] = cfg.model ? json(cfg.model->lie().id()) : json(nullptr);
  out["verified"] = cfg.datum.verified;
  if (cfg.model) {
    out["dimension_g"] = cfg.model->lie().dimension();
    out["dimension_an"] = cfg.model->dimension();
    out["dimension_k"] = cfg.model->k_dimension();
  }
  out["rank"] = cfg.datum.rank;
  out["roots"] = roots;
  out["config"] = to_json(cfg);
  out["doubled_root_chosen"] = cfg.has_doubled_root();
  out["blocks"] = blocks;
  out["mean_curvature"] = to_json(cfg.coefficients());
  out["flow"] = to_json(classify(cfg));
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string flow_csv(const FlowTrajectory& traj, int dim) {
  std::ostringstream os;
  os << 't';
  for (int i = 1; i <= dim; ++i) os << ",u_" << i;
  os << ",speed,dist_to_ref,residual\n";
  for (std::size_t s = 0; s < traj.times.size(); ++s) {
    os << format_double(traj.times[s]);
    for (int i = 0; i < dim; ++i) os << ',' << format_double(traj.states[s](i));
    os << ',' << format_double(traj.speed[s]) << ',' << format_double(traj.dist_to_ref[s]) << ','
       << format_double(traj.residual[s]) << '\n';
  }
  return os.str();
}

json flow_json(const FoliationConfig& cfg, const FlowTrajectory& traj) {
  json samples = json::array();
  for (std::size_t s = 0; s < traj.times.size(); ++s) {
    samples.push_back(json{{"t", traj.times[s]},
                           {"u", vector_to_json(traj.states[s])},
                           {"speed", traj.speed[s]},
                           {"dist_to_ref", traj.dist_to_ref[s]},
                           {"residual", traj.residual[s]}});
  }
  return json{{"config", to_json(cfg)},
              {"verdict", to_json(classify(cfg))},
              {"mean_curvature", to_json(cfg.coefficients())},
              {"max_residual", traj.max_residual()},
              {"trajectory", samples}};
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw InputError("cannot write '" + o.out + "'");
  file << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void require_json_format(const Options& o, const std::string& command) {
  if (!o.format.empty() && o.format != "json") {
    throw ConfigError("--format " + o.format + " is not available for " + command);
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Isoparametric foliations of solvable models: closed forms, oracle checks and flows"};
  app.name("isoflow");
  app.fallthrough();
  app.require_subcommand(1);

  Options o;
  auto* model_opt = app.add_option("--model", o.model, "Matrix model id (sl2r, sl3r, su21, su31)")
                        ->capture_default_str();
  auto* datum_opt = app.add_option("--datum", o.datum, "Root datum JSON file (no matrix model)");
  auto* config_opt = app.add_option("--config", o.config, "Foliation config JSON file");
  auto* k_opt = app.add_option("--k", o.k, "Number of chosen orthogonal roots")->capture_default_str();
  auto* b_opt = app.add_option("--b-dim", o.b_dim, "Dimension of b")->capture_default_str();
  auto* roots_opt = app.add_option("--roots", o.roots, "Chosen root indices")->delimiter(',');
  auto* xi_opt = app.add_option("--xi-index", o.xi_index, "Basis vector of each chosen root space")
                     ->delimiter(',');
  for (int j = 0; j < kMaxOffsets; ++j) {
    o.t_opt[j] = app.add_option("--t" + std::to_string(j + 1), o.t[j],
                                "Offset t_" + std::to_string(j + 1) + (j == 0 ? " (default 1.0)" : " (default 0)"));
  }
  app.add_option("--horizon", o.horizon, "Flow horizon")->capture_default_str();
  app.add_option("--step", o.step, "Integration step")->capture_default_str();
  app.add_option("--sample-stride", o.stride, "Record every n-th step")->capture_default_str();
  app.add_option("--out", o.out, "Write output to this file");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  datum_opt->excludes(model_opt);
  for (auto* opt : {model_opt, datum_opt, k_opt, b_opt, roots_opt, xi_opt}) config_opt->excludes(opt);

  auto* describe_cmd = app.add_subcommand("describe", "Root datum, block structure and mean curvature coefficients");
  auto* adapted_cmd = app.add_subcommand("adaptedness", "Curvature-adaptedness verdict");
  auto* flow_cmd = app.add_subcommand("flow", "Integrate the mean curvature flow on the section");
  auto* verify_cmd = app.add_subcommand("verify", "Run all oracle-versus-closed-form checks");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    const FoliationConfig cfg = build_config(o);
    if (describe_cmd->parsed()) {
      require_json_format(o, "describe");
      emit(o, dump(describe(cfg)), out);
      return kSuccess;
    }
    if (adapted_cmd->parsed()) {
      require_json_format(o, "adaptedness");
      json j = to_json(adaptedness(cfg));
      j["config"] = to_json(cfg);
      j["doubled_root_chosen"] = cfg.has_doubled_root();
      emit(o, dump(j), out);
      return kSuccess;
    }
    if (flow_cmd->parsed()) {
      if (!(o.horizon > 0) || !(o.step > 0)) throw ConfigError("--horizon and --step must be positive");
      const MeanCurvatureCoefficients coeffs = cfg.coefficients();
      IntegrateOptions iopt;
      iopt.step = o.step;
      iopt.stride = o.stride;
      const FlowTrajectory traj = integrate(coeffs, cfg.section_point(), o.horizon, iopt);
      if (o.format == "json") {
        emit(o, dump(flow_json(cfg, traj)), out);
      } else {
        emit(o, flow_csv(traj, coeffs.dimension()), out);
      }
      return kSuccess;
    }
    if (verify_cmd->parsed()) {
      require_json_format(o, "verify");
      VerifyOptions vopts;
      vopts.step = o.step;
      const VerifyReport report = verify_config(cfg, vopts);
      emit(o, dump(to_json(report)), out);
      if (!report.passed()) {
        err << "verification failed:";
        for (const std::string& id : report.failures()) err << ' ' << id;
        err << '\n';
        return kVerificationFailed;
      }
      return kSuccess;
    }
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << '\n';
    return kVerificationFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace isoflow::cli
