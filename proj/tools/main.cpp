#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "convexcr/flow.hpp"
#include "convexcr/harness.hpp"
#include "convexcr/io.hpp"

namespace {

using namespace convexcr;

Vec parse_point(const std::string& text) {
  std::vector<double> coords;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      coords.push_back(std::stod(item, &pos));
      while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos])))
        ++pos;
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidInput, "cannot parse coordinate \"" + item + "\"");
    }
  }
  if (coords.empty())
    throw Error(ErrorCode::InvalidInput, "empty point \"" + text + "\"");
  return Vec(std::move(coords));
}

std::uint64_t seed_with_env(std::uint64_t seed) {
  if (const char* env = std::getenv("CONVEXCR_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidInput,
                  std::string("CONVEXCR_SEED is not an integer: ") + env);
    }
  }
  return seed;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path);
  out << content;
}

int run_analyze(const std::string& body_path, const std::string& point, double tol,
                std::uint64_t seed) {
  ConvexBody k = load_body_file(body_path, tol);
  Vec o = parse_point(point);
  Json out;
  Json cps = Json::array();
  LcdResult l = lcd(k, o, tol);
  for (const CriticalPoint& cp : l.all_points) cps.push_back(to_json(cp));
  out["critical_points"] = cps;
  Json lj;
  lj["value"] = l.value;
  lj["attaining_point"] = to_json(l.attaining_point.location);
  out["lcd"] = lj;
  SamplingParams params;
  params.seed = seed;
  double resolution = 1e-4 * k.diameter();
  out["cr"] = to_json(connectivity_radius(k, o, resolution, params, tol));
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_levels(const std::string& body_path, const std::string& point, double radius,
               std::string method, const std::string& csv_path, double tol,
               std::uint64_t seed) {
  ConvexBody k = load_body_file(body_path, tol);
  Vec o = parse_point(point);
  if (method.empty()) method = k.dim() == 2 ? "exact2d" : "sampled";

  ComponentReport rep;
  Json out;
  if (method == "exact2d") {
    if (k.dim() != 2)
      throw Error(ErrorCode::BadDimension, "exact2d requires a 2-dimensional body");
    ArcSet arcs = level_arcs_2d(k, o, radius, tol);
    rep.radius = radius;
    rep.method = LevelMethod::kExact2d;
    rep.component_count = arcs.component_count;
    for (auto& [s, e] : arcs.arcs) {
      double mid = 0.5 * (s + e);
      rep.representative_points.push_back(
          Vec{o[0] + radius * std::cos(mid), o[1] + radius * std::sin(mid)});
    }
    out = to_json(rep);
    out["arcs"] = to_json(arcs)["arcs"];
  } else if (method == "sampled") {
    SamplingParams params;
    params.seed = seed;
    rep = level_components_sampled(k, o, radius, params, tol);
    out = to_json(rep);
  } else {
    throw Error(ErrorCode::InvalidInput, "unknown method " + method);
  }
  if (!csv_path.empty()) write_file(csv_path, components_csv({rep}));
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_flow(const std::string& body_path, const std::string& point, double r_from,
             double r_to, int samples, const std::string& csv_path, double tol,
             std::uint64_t seed) {
  ConvexBody k = load_body_file(body_path, tol);
  Vec o = parse_point(point);
  SamplingParams params;
  params.seed = seed;
  std::vector<Vec> pts = sample_level(k, o, r_from, samples, params, tol);
  if (pts.empty())
    throw Error(ErrorCode::BadRadius, "level set is empty at the start radius");

  Json out;
  out["from"] = r_from;
  out["to"] = r_to;
  out["samples"] = static_cast<int>(pts.size());
  try {
    PushResult res = push_level_traced(k, o, pts, r_to, tol);
    Json trajs = Json::array();
    for (const auto& traj : res.trajectories) {
      Json t = Json::array();
      for (const Vec& q : traj) t.push_back(to_json(q));
      trajs.push_back(std::move(t));
    }
    out["trajectories"] = trajs;
    if (!csv_path.empty()) {
      std::ostringstream os;
      os.precision(17);
      os << "point_id,step";
      for (int d = 0; d < k.dim(); ++d) os << ",x" << d;
      os << "\n";
      for (std::size_t i = 0; i < res.trajectories.size(); ++i) {
        for (std::size_t s = 0; s < res.trajectories[i].size(); ++s) {
          os << i << ',' << s;
          for (double c : res.trajectories[i][s].coords()) os << ',' << c;
          os << "\n";
        }
      }
      write_file(csv_path, os.str());
    }
  } catch (const StalledAtCritical& e) {
    out["error"] = "StalledAtCritical";
    out["message"] = e.what();
    Json recs = Json::array();
    for (const StallRecord& r : e.records()) {
      Json rj;
      rj["point_index"] = r.point_index;
      rj["location"] = r.location;
      rj["radius"] = r.radius;
      rj["blocking_critical_point"] = r.blocking_critical_point;
      rj["blocking_critical_distance"] = r.blocking_critical_distance;
      recs.push_back(std::move(rj));
    }
    out["stalled"] = recs;
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_verify(CampaignConfig cfg, const std::string& out_path) {
  cfg.seed = seed_with_env(cfg.seed);
  Report report = verify_campaign(cfg);
  std::string json = report.to_json_string();
  if (out_path.empty()) {
    std::cout << json;
  } else {
    write_file(out_path, json);
    std::string csv_path = out_path;
    auto dot = csv_path.find_last_of('.');
    csv_path = (dot == std::string::npos ? csv_path : csv_path.substr(0, dot)) + ".csv";
    write_file(csv_path, report.to_csv());
    std::cerr << "report: " << out_path << "\nsidecar: " << csv_path << "\n";
  }
  std::cerr << "instances=" << report.instances.size()
            << " violations=" << report.violations << " min_margin=" << report.min_margin
            << " angle_ratio_max=" << report.angle_ratio_max
            << " oracle_agreement=" << report.oracle_agreement_rate
            << " errors=" << report.errors << "\n";
  return report.violations > 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"critical points, least critical distance, and connectivity radius "
               "of compact convex bodies"};
  app.require_subcommand(1);

  std::string body_path, point, method, csv_path, out_path;
  double tol = kDefaultTol;
  double radius = 0.0, r_from = 0.0, r_to = 0.0;
  int samples = 256;
  CampaignConfig cfg;
  cfg.trials_2d = 100;
  cfg.trials_3d = 20;

  auto* analyze = app.add_subcommand("analyze", "critical points, LCD and CR at O");
  analyze->add_option("--body", body_path, "body JSON file")->required();
  analyze->add_option("--point", point, "boundary point O as x,y[,z[,w]]")->required();
  analyze->add_option("--tol", tol, "relative tolerance");

  auto* levels = app.add_subcommand("levels", "components of the level set at one radius");
  levels->add_option("--body", body_path, "body JSON file")->required();
  levels->add_option("--point", point, "boundary point O")->required();
  levels->add_option("--radius", radius, "level radius")->required();
  levels->add_option("--method", method, "exact2d or sampled");
  levels->add_option("--csv", csv_path, "also write a CSV row");
  levels->add_option("--tol", tol, "relative tolerance");

  auto* flow = app.add_subcommand("flow", "push a sampled level set outward");
  flow->add_option("--body", body_path, "body JSON file")->required();
  flow->add_option("--point", point, "boundary point O")->required();
  flow->add_option("--from", r_from, "starting level radius")->required();
  flow->add_option("--to", r_to, "target level radius")->required();
  flow->add_option("--samples", samples, "level samples to push");
  flow->add_option("--csv", csv_path, "write per-step trajectories as CSV");
  flow->add_option("--tol", tol, "relative tolerance");

  auto* verify = app.add_subcommand("verify", "randomized verification campaign");
  verify->add_option("--trials-2d", cfg.trials_2d, "number of random 2D instances");
  verify->add_option("--trials-3d", cfg.trials_3d, "number of random 3D instances");
  verify->add_option("--seed", cfg.seed, "campaign seed (CONVEXCR_SEED overrides)");
  verify->add_option("--resolution", cfg.resolution, "CR resolution relative to diameter");
  verify->add_option("--points-per-hull", cfg.points_per_hull, "points per random hull");
  verify->add_option("--samples", cfg.sampling.samples_per_sphere,
                     "sphere samples (0 = per-dimension default)");
  verify->add_option("--out", out_path, "write the JSON report here (plus CSV sidecar)");

  CLI11_PARSE(app, argc, argv);

  try {
    std::uint64_t op_seed = seed_with_env(cfg.seed);
    if (app.got_subcommand(analyze)) return run_analyze(body_path, point, tol, op_seed);
    if (app.got_subcommand(levels))
      return run_levels(body_path, point, radius, method, csv_path, tol, op_seed);
    if (app.got_subcommand(flow))
      return run_flow(body_path, point, r_from, r_to, samples, csv_path, tol, op_seed);
    if (app.got_subcommand(verify)) return run_verify(cfg, out_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
