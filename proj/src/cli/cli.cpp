#include "solenoid_lab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "solenoid_lab/analysis.hpp"
#include "solenoid_lab/error.hpp"
#include "solenoid_lab/global_map.hpp"
#include "solenoid_lab/lens_atlas.hpp"
#include "solenoid_lab/parallel.hpp"
#include "solenoid_lab/periodic.hpp"
#include "solenoid_lab/point_cloud.hpp"

namespace solenoid_lab {

namespace {

using Json = nlohmann::ordered_json;

struct CommandResult {
  Json inputs;
  Json results;
  int exit_code = 0;
};

Json report(const std::string& command, CommandResult r) {
  Json doc;
  doc["command"] = command;
  doc["inputs"] = std::move(r.inputs);
  doc["results"] = std::move(r.results);
  doc["version"] = version_string;
  return doc;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw LabError(ErrorCode::Io, "cannot open '" + path + "' for writing");
  f << text;
  f.flush();
  if (!f) throw LabError(ErrorCode::Io, "write to '" + path + "' failed");
}

std::vector<double> parse_scales(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size())
      throw LabError(ErrorCode::InvalidArgument, "bad scale '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::string fate_name(FateKind k) {
  switch (k) {
    case FateKind::ConvergedToAttractor: return "ConvergedToAttractor";
    case FateKind::OnRepeller: return "OnRepeller";
    case FateKind::Undecided: return "Undecided";
  }
  return "Undecided";
}

// ---- subcommands --------------------------------------------------------

struct VerifyArgs {
  std::int64_t p = 0;
  std::int64_t q = 0;
  int m = 1;
  double eps = default_eps;
};

CommandResult do_verify(const VerifyArgs& a) {
  CommandResult r;
  r.inputs = {{"p", a.p}, {"q", a.q}, {"m", a.m}, {"eps", a.eps}};
  const GluingMatrix g = complete_gluing(a.p, a.q);
  const GlobalModel model = build_model(a.p, a.q, a.m, a.eps);
  const std::int64_t order = h1_order(g);
  const std::int64_t core = loop_class(g, 1, 0);
  const std::int64_t winding = braid_winding(model, Chart::One);
  const std::int64_t braid_cls = loop_class(g, winding, 0);
  const LatticeAngles meridian = transfer_cycle(g, {0, 1, Chart::Two});

  const bool det_ok = g.determinant() == 1;
  const bool orient_ok = g.angle_determinant() == -1;
  const bool order_ok = order == a.p;
  const bool winding_ok = winding == model.w;
  const bool class_ok = braid_cls == core;
  const bool meridian_ok = meridian.k == g.p && meridian.l == g.q;

  r.results["matrix"] = {{"p", g.p}, {"q", g.q}, {"r", g.r}, {"s", g.s}};
  r.results["ps_minus_qr"] = g.determinant();
  r.results["angle_determinant"] = g.angle_determinant();
  r.results["h1_order"] = order;
  r.results["core_class"] = core;
  r.results["knotted"] = core_is_knotted(g);
  r.results["w"] = model.w;
  r.results["braid_winding"] = winding;
  r.results["braid_class"] = braid_cls;
  r.results["checks"] = {{"determinant_one", det_ok},   {"orientation_reversing", orient_ok},
                         {"h1_order_is_p", order_ok},   {"braid_winding_is_w", winding_ok},
                         {"braid_class_is_core_class", class_ok},
                         {"meridian_is_pq_curve", meridian_ok}};
  const bool all = det_ok && orient_ok && order_ok && winding_ok && class_ok && meridian_ok;
  r.results["all_hold"] = all;
  r.exit_code = all ? 0 : 1;
  return r;
}

struct AttractorArgs {
  int w = 2;
  double eps = default_eps;
  int depth = 40;
  std::uint64_t samples = 1000;
  std::uint64_t seed = 0;
  std::string out;
};

CommandResult do_attractor(const AttractorArgs& a) {
  CommandResult r;
  r.inputs = {{"w", a.w},           {"eps", a.eps},   {"depth", a.depth},
              {"samples", a.samples}, {"seed", a.seed}, {"out", a.out}};
  const SolenoidMap map = make_solenoid_map(a.w, a.eps);
  const PointCloud cloud = sample_attractor(map, a.depth, a.samples, a.seed);
  save_cloud(a.out, cloud);
  double max_radius = 0.0;
  for (std::size_t i = 0; i < cloud.size(); ++i)
    max_radius = std::max(max_radius, cloud.point(i).fiber_radius());
  r.results = {{"points", cloud.size()},
               {"lambda", map.lambda()},
               {"max_fiber_radius", max_radius},
               {"file", a.out}};
  return r;
}

struct PeriodicArgs {
  int w = 2;
  int n = 1;
  double eps = default_eps;
};

CommandResult do_periodic(const PeriodicArgs& a) {
  CommandResult r;
  r.inputs = {{"w", a.w}, {"n", a.n}, {"eps", a.eps}};
  const SolenoidMap map = make_solenoid_map(a.w, a.eps);
  const auto pts = periodic_points(map, a.n);
  std::uint64_t expected = 1;
  for (int i = 0; i < a.n; ++i) expected *= static_cast<std::uint64_t>(a.w);
  expected -= 1;

  double residual = 0.0;
  std::map<int, std::uint64_t> by_period;
  Json list = Json::array();
  for (const auto& pp : pts) {
    TorusPoint x = pp.point;
    for (int i = 0; i < a.n; ++i) x = apply(map, x);
    residual = std::max(residual, torus_distance(x, pp.point));
    ++by_period[pp.minimal_period];
    list.push_back({{"theta", pp.point.theta},
                    {"x", pp.point.x},
                    {"y", pp.point.y},
                    {"minimal_period", pp.minimal_period}});
  }
  Json hist = Json::object();
  for (const auto& [d, c] : by_period) hist[std::to_string(d)] = c;
  r.results["count"] = pts.size();
  r.results["expected"] = expected;
  r.results["max_residual"] = residual;
  r.results["minimal_periods"] = hist;
  r.results["points"] = std::move(list);
  r.exit_code = pts.size() == expected ? 0 : 1;
  return r;
}

struct SimulateArgs {
  std::int64_t p = 1;
  std::int64_t q = 0;
  int m = 1;
  double eps = default_eps;
  std::uint64_t starts = 1000;
  int max_steps = 60;
  std::uint64_t seed = 0;
  int ref_depth = 20;
  std::uint64_t ref_samples = 1000;
  std::string direction = "forward";
};

CommandResult do_simulate(const SimulateArgs& a) {
  CommandResult r;
  r.inputs = {{"p", a.p},
              {"q", a.q},
              {"m", a.m},
              {"eps", a.eps},
              {"starts", a.starts},
              {"max_steps", a.max_steps},
              {"seed", a.seed},
              {"ref_depth", a.ref_depth},
              {"ref_samples", a.ref_samples},
              {"direction", a.direction}};
  const GlobalModel model = build_model(a.p, a.q, a.m, a.eps);
  const bool forward = a.direction == "forward";
  const TimeDirection dir = forward ? TimeDirection::Forward : TimeDirection::Backward;
  const PointCloud ref = sample_attractor(forward ? model.e2 : model.e1, a.ref_depth,
                                          a.ref_samples, a.seed);
  std::vector<OrbitFate> fates(a.starts, OrbitFate{FateKind::Undecided, std::nullopt, 0.0});
  parallel_for(a.starts, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      fates[i] = classify_orbit(model, random_manifold_point(a.seed, i), a.max_steps, ref, dir);
  }, 64);

  std::map<std::string, std::uint64_t> counts{
      {"ConvergedToAttractor", 0}, {"OnRepeller", 0}, {"Undecided", 0}};
  int max_transit = -1;
  double max_final = 0.0;
  for (const auto& f : fates) {
    ++counts[fate_name(f.kind)];
    if (f.transit_step) max_transit = std::max(max_transit, *f.transit_step);
    if (f.kind == FateKind::ConvergedToAttractor) max_final = std::max(max_final, f.final_distance);
  }
  Json fractions = Json::object();
  Json count_json = Json::object();
  for (const char* k : {"ConvergedToAttractor", "OnRepeller", "Undecided"}) {
    count_json[k] = counts[k];
    fractions[k] = static_cast<double>(counts[k]) / static_cast<double>(a.starts);
  }
  r.results["w"] = model.w;
  r.results["gluing"] = {{"p", model.gluing.p}, {"q", model.gluing.q},
                         {"r", model.gluing.r}, {"s", model.gluing.s}};
  r.results["counts"] = count_json;
  r.results["fractions"] = fractions;
  r.results["max_transit_step"] = max_transit < 0 ? Json(nullptr) : Json(max_transit);
  r.results["max_final_distance"] = max_final;
  return r;
}

struct DimensionArgs {
  std::string in;
  std::string scales = "0.125,0.0625,0.03125,0.015625,0.0078125,0.00390625,0.001953125";
};

CommandResult do_dimension(const DimensionArgs& a) {
  CommandResult r;
  r.inputs = {{"in", a.in}, {"scales", a.scales}};
  const std::vector<double> scales = parse_scales(a.scales);
  const PointCloud cloud = load_cloud(a.in);
  const DimensionReport rep = box_dimension(cloud, scales);
  r.results = {{"points", cloud.size()},
               {"scales", rep.scales},
               {"counts", rep.counts},
               {"slope", rep.slope},
               {"intercept", rep.intercept},
               {"r2", rep.r2},
               {"fit_range", {rep.fit_first, rep.fit_last}}};
  return r;
}

struct LyapunovArgs {
  int w = 2;
  double eps = default_eps;
  int steps = 10000;
  int reorth_period = 1;
  double theta0 = 0.1;
  double x0 = 0.0;
  double y0 = 0.0;
};

CommandResult do_lyapunov(const LyapunovArgs& a) {
  CommandResult r;
  r.inputs = {{"w", a.w},           {"eps", a.eps},       {"steps", a.steps},
              {"reorth_period", a.reorth_period}, {"theta0", a.theta0},
              {"x0", a.x0},         {"y0", a.y0}};
  const SolenoidMap map = make_solenoid_map(a.w, a.eps);
  const auto ex = lyapunov_exponents(map, TorusPoint(a.theta0, a.x0, a.y0), a.steps,
                                     {a.reorth_period});
  const double lw = std::log(static_cast<double>(a.w));
  const std::array<double, 3> ref{lw, -2.0 * lw, -2.0 * lw};
  double err = 0.0;
  for (int i = 0; i < 3; ++i) err = std::max(err, std::abs(ex[i] - ref[i]));
  r.results = {{"exponents", ex},
               {"reference", ref},
               {"sum", ex[0] + ex[1] + ex[2]},
               {"max_abs_error", err}};
  return r;
}

struct EntropyArgs {
  int w = 2;
  int n_max = 12;
  double eps = default_eps;
};

CommandResult do_entropy(const EntropyArgs& a) {
  CommandResult r;
  r.inputs = {{"w", a.w}, {"n_max", a.n_max}, {"eps", a.eps}};
  const SolenoidMap map = make_solenoid_map(a.w, a.eps);
  const double h = entropy_estimate(map, a.n_max);
  const double lw = std::log(static_cast<double>(a.w));
  r.results = {{"estimate", h}, {"log_w", lw}, {"abs_error", std::abs(h - lw)}};
  return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Smale solenoid models on lens spaces", "solenoid_lab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version_string);

  std::string out_path;

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Gluing algebra and homology witnesses for L(p,q)");
  verify->add_option("--p", va.p)->required();
  verify->add_option("--q", va.q)->required();
  verify->add_option("--m", va.m, "braid multiplier, w = m*p + 1")->capture_default_str();
  verify->add_option("--eps", va.eps)->capture_default_str();
  verify->add_option("--out", out_path, "also write the report here");

  AttractorArgs aa;
  auto* attractor = app.add_subcommand("attractor", "Sample the solenoid attractor to a file");
  attractor->add_option("--w", aa.w)->required();
  attractor->add_option("--eps", aa.eps)->capture_default_str();
  attractor->add_option("--depth", aa.depth)->capture_default_str();
  attractor->add_option("--samples", aa.samples)->capture_default_str();
  attractor->add_option("--seed", aa.seed)->capture_default_str();
  attractor->add_option("--out", aa.out, "point cloud file")->required();

  PeriodicArgs pa;
  auto* periodic = app.add_subcommand("periodic", "Enumerate fixed points of e^n");
  periodic->add_option("--w", pa.w)->required();
  periodic->add_option("--n", pa.n)->required();
  periodic->add_option("--eps", pa.eps)->capture_default_str();
  periodic->add_option("--out", out_path, "also write the report here");

  SimulateArgs sa;
  auto* simulate = app.add_subcommand("simulate", "Classify random orbits of the global model");
  simulate->add_option("--p", sa.p)->required();
  simulate->add_option("--q", sa.q)->required();
  simulate->add_option("--m", sa.m)->capture_default_str();
  simulate->add_option("--eps", sa.eps)->capture_default_str();
  simulate->add_option("--starts", sa.starts)->capture_default_str();
  simulate->add_option("--max-steps", sa.max_steps)->capture_default_str();
  simulate->add_option("--seed", sa.seed)->capture_default_str();
  simulate->add_option("--ref-depth", sa.ref_depth)->capture_default_str();
  simulate->add_option("--ref-samples", sa.ref_samples)->capture_default_str();
  simulate->add_option("--direction", sa.direction)
      ->check(CLI::IsMember({"forward", "backward"}))
      ->capture_default_str();
  simulate->add_option("--out", out_path, "also write the report here");

  DimensionArgs da;
  auto* dimension = app.add_subcommand("dimension", "Box-counting dimension of a point cloud");
  dimension->add_option("--in", da.in)->required();
  dimension->add_option("--scales", da.scales, "comma-separated box sizes")->capture_default_str();
  dimension->add_option("--out", out_path, "also write the report here");

  LyapunovArgs la;
  auto* lyapunov = app.add_subcommand("lyapunov", "Lyapunov spectrum of the solenoid map");
  lyapunov->add_option("--w", la.w)->required();
  lyapunov->add_option("--eps", la.eps)->capture_default_str();
  lyapunov->add_option("--steps", la.steps)->capture_default_str();
  lyapunov->add_option("--reorth-period", la.reorth_period)->capture_default_str();
  lyapunov->add_option("--theta0", la.theta0)->capture_default_str();
  lyapunov->add_option("--x0", la.x0)->capture_default_str();
  lyapunov->add_option("--y0", la.y0)->capture_default_str();
  lyapunov->add_option("--out", out_path, "also write the report here");

  EntropyArgs ea;
  auto* entropy = app.add_subcommand("entropy", "Entropy from periodic-point growth");
  entropy->add_option("--w", ea.w)->required();
  entropy->add_option("--n-max", ea.n_max)->capture_default_str();
  entropy->add_option("--eps", ea.eps)->capture_default_str();
  entropy->add_option("--out", out_path, "also write the report here");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << version_string << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: InvalidArgument: " << e.what() << "\n";
    return 1;
  }

  try {
    thread_cap();  // reject a malformed SOLENOID_LAB_THREADS up front
    std::string name;
    CommandResult result;
    if (verify->parsed()) {
      name = "verify";
      result = do_verify(va);
    } else if (attractor->parsed()) {
      name = "attractor";
      result = do_attractor(aa);
    } else if (periodic->parsed()) {
      name = "periodic";
      result = do_periodic(pa);
    } else if (simulate->parsed()) {
      name = "simulate";
      result = do_simulate(sa);
    } else if (dimension->parsed()) {
      name = "dimension";
      result = do_dimension(da);
    } else if (lyapunov->parsed()) {
      name = "lyapunov";
      result = do_lyapunov(la);
    } else {
      name = "entropy";
      result = do_entropy(ea);
    }
    if (name != "attractor") result.inputs["out"] = out_path.empty() ? Json(nullptr) : Json(out_path);
    const int code = result.exit_code;
    const std::string text = report(name, std::move(result)).dump(2) + "\n";
    if (!out_path.empty()) write_text(out_path, text);
    out << text;
    return code;
  } catch (const LabError& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::Io ? 2 : 1;
  }
}

}  // namespace solenoid_lab
