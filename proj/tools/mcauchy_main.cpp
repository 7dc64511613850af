// Command-line front end: sampling, fitting, Moebius transforms, density
// grids, and the verification suite.
//
// Exit codes: 0 success, 2 flag errors, 3 domain errors, 4 verification
// failure. Data goes to stdout, logs to stderr.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include "mcauchy/batch.hpp"
#include "mcauchy/estimation.hpp"
#include "mcauchy/json_io.hpp"
#include "mcauchy/moments.hpp"
#include "mcauchy/sampling.hpp"
#include "mcauchy/verify.hpp"

namespace {

using namespace mcauchy;
using nlohmann::json;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("MCAUCHY_SEED")) return std::strtoull(env, nullptr, 10);
  return 7;
}

void print_row(const Vec& v) {
  char buf[32];
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", v(i));
    std::fputs(buf, stdout);
    std::fputc(i + 1 < v.size() ? ',' : '\n', stdout);
  }
}

Mat read_csv(const std::string& path) {
  std::ifstream file;
  std::istream* in = &std::cin;
  if (path != "-") {
    file.open(path);
    if (!file) throw invalid_parameter("cannot open input file: " + path);
    in = &file;
  }
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(*in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (!rows.empty() && row.size() != rows.front().size())
      throw invalid_parameter("csv: ragged rows");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw invalid_parameter("csv: no data rows");
  Mat m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  return m;
}

ExtendedComplex theta_from_json(const json& j) {
  return ExtendedComplex(vector_from_json(j.at("mu")), j.at("sigma").get<double>());
}

json theta_to_json(const ExtendedComplex& t) {
  return {{"mu", to_json(t.mu())}, {"sigma", t.sigma()}};
}

// ---------------------------------------------------------------- sample --

struct SampleOpts {
  std::string family, params;
  Eigen::Index n = 10;
  std::uint64_t seed = default_seed(), stream = 0;
  bool parallel = false;
};

int run_sample(const SampleOpts& o) {
  const json p = o.params.empty() ? json::object() : json::parse(o.params);
  const RngStream rng{o.seed, o.stream};
  const ExecPolicy pol = o.parallel ? ExecPolicy::Parallel : ExecPolicy::Serial;
  std::fprintf(stderr, "sample family=%s n=%lld seed=%llu stream=%llu\n", o.family.c_str(),
               static_cast<long long>(o.n), static_cast<unsigned long long>(o.seed),
               static_cast<unsigned long long>(o.stream));
  Mat out;
  if (o.family == "uniform-sphere") {
    out = sample_uniform_sphere(p.at("d").get<int>(), o.n, rng, pol);
  } else if (o.family == "sphere-cauchy") {
    out = sample_sphere_cauchy(vector_from_json(p.at("phi")), o.n, rng, pol);
  } else if (o.family == "euclid-cauchy") {
    out = sample_euclid_cauchy(theta_from_json(p), o.n, rng, pol);
  } else if (o.family == "kent") {
    out = sample_kent(vector_from_json(p.at("mu")), matrix_from_json(p.at("L")), o.n, rng, pol);
  } else if (o.family == "marginal") {
    const Vec s = sample_marginal(p.at("varphi").get<double>(), p.at("nu").get<int>(), o.n, rng, pol);
    out = s;
  } else {
    throw CLI::ValidationError("--family", "unknown family: " + o.family);
  }
  for (Eigen::Index i = 0; i < out.rows(); ++i) print_row(out.row(i));
  return 0;
}

// ------------------------------------------------------------------- fit --

json diagnostics_to_json(const StationaryDiagnostics& d) {
  return {{"grad_mu_residual", d.grad_mu_residual},
          {"grad_sigma_residual", d.grad_sigma_residual},
          {"hessian_max_eigenvalue", d.hessian_max_eigenvalue},
          {"coincidence_flag", d.coincidence_flag}};
}

json contour_to_json(const ContourCircleResult& c) {
  return {{"center", to_json(c.center)},
          {"radius", c.radius},
          {"plane_u", to_json(c.u)},
          {"plane_v", to_json(c.v)}};
}

struct FitOpts {
  std::string family = "euclid", method = "mle", input = "-";
  double tol = 1e-8;
  int max_evals = 10000;
  std::uint64_t seed = default_seed();
};

int run_fit(const FitOpts& o) {
  const Mat data = read_csv(o.input);
  std::fprintf(stderr, "fit family=%s method=%s n=%lld d_ambient=%lld\n", o.family.c_str(),
               o.method.c_str(), static_cast<long long>(data.rows()),
               static_cast<long long>(data.cols()));
  json out;
  if (o.method == "mom") {
    if (o.family != "sphere")
      throw CLI::ValidationError("--method", "method-of-moments needs --family sphere");
    const MomResult r = mom_estimate(data, static_cast<int>(data.cols()) - 1);
    out = {{"variant", "estimate"},
           {"estimate", {{"phi", to_json(r.phi)}}},
           {"clamped", r.clamped}};
  } else if (o.family == "euclid") {
    const MleResult r = mle_numeric(data, {o.tol, o.max_evals, o.seed});
    if (const auto* pm = std::get_if<PointMassResult>(&r)) {
      out = {{"variant", "point-mass"}, {"estimate", {{"location", to_json(pm->location.coords())}}}};
    } else if (const auto* cc = std::get_if<ContourCircleResult>(&r)) {
      out = {{"variant", "contour-circle"}, {"estimate", contour_to_json(*cc)}};
    } else {
      const auto& est = std::get<EstimateResult>(r);
      out = {{"variant", "estimate"},
             {"estimate", theta_to_json(est.theta)},
             {"loglik", est.loglik},
             {"diagnostics", diagnostics_to_json(est.diag)},
             {"converged", est.converged}};
    }
  } else if (o.family == "sphere") {
    const SphereMleResult r = mle_sphere(data, {o.tol, o.max_evals, o.seed});
    if (const auto* pm = std::get_if<Vec>(&r)) {
      out = {{"variant", "point-mass"}, {"estimate", {{"phi", to_json(*pm)}}}};
    } else if (const auto* cc = std::get_if<ContourCircleResult>(&r)) {
      out = {{"variant", "contour-circle"}, {"estimate", contour_to_json(*cc)}};
    } else {
      const auto& est = std::get<SphereEstimateResult>(r);
      out = {{"variant", "estimate"},
             {"estimate", {{"phi", to_json(est.phi)}}},
             {"loglik", est.loglik},
             {"diagnostics", diagnostics_to_json(est.diag)},
             {"converged", est.converged}};
    }
  } else {
    throw CLI::ValidationError("--family", "unknown family: " + o.family);
  }
  std::printf("%s\n", out.dump(2).c_str());
  return 0;
}

// ------------------------------------------------------------- transform --

struct TransformOpts {
  std::string family = "euclid", map, points, param, direction = "to-sphere";
};

int run_transform(const TransformOpts& o) {
  if (o.points.empty() == o.param.empty())
    throw CLI::ValidationError("transform", "provide exactly one of --points or --param");
  std::fprintf(stderr, "transform family=%s %s\n", o.family.c_str(),
               o.points.empty() ? "param" : "points");

  if (o.family == "euclid") {
    const MoebiusChain chain = moebius_chain_from_json(json::parse(o.map));
    if (!o.param.empty()) {
      const ExtendedComplex t = chain_apply_param(chain, theta_from_json(json::parse(o.param)));
      std::printf("%s\n", json(theta_to_json(t)).dump(2).c_str());
      return 0;
    }
    const Mat pts = read_csv(o.points);
    for (Eigen::Index i = 0; i < pts.rows(); ++i) {
      const ExtendedPoint img = chain_apply(chain, ExtendedPoint(Vec(pts.row(i))));
      if (img.is_infinite())
        std::printf("inf\n");
      else
        print_row(img.coords());
    }
    return 0;
  }
  if (o.family == "sphere") {
    const SphereMoebius s = sphere_moebius_from_json(json::parse(o.map));
    if (!o.param.empty()) {
      const json jp = json::parse(o.param);
      const SphericalCauchy pushed =
          pushforward_sphere(s, SphericalCauchy(vector_from_json(jp.at("phi"))));
      json out = pushed.is_uniform() ? json{{"phi", "uniform"}} : json{{"phi", to_json(pushed.phi())}};
      std::printf("%s\n", out.dump(2).c_str());
      return 0;
    }
    const Mat pts = read_csv(o.points);
    for (Eigen::Index i = 0; i < pts.rows(); ++i)
      print_row(sphere_moebius_apply_unit(s, pts.row(i).transpose()));
    return 0;
  }
  if (o.family == "stereographic") {
    if (!o.param.empty()) {
      const json jp = json::parse(o.param);
      if (o.direction == "to-sphere") {
        const SphericalCauchy out = transport_to_sphere(EuclideanCauchy(theta_from_json(jp)));
        std::printf("%s\n", json{{"phi", to_json(out.phi())}}.dump(2).c_str());
      } else {
        const EuclideanCauchy out = transport_to_euclid(SphericalCauchy(vector_from_json(jp.at("phi"))));
        std::printf("%s\n", json(theta_to_json(out.theta())).dump(2).c_str());
      }
      return 0;
    }
    const Mat pts = read_csv(o.points);
    for (Eigen::Index i = 0; i < pts.rows(); ++i) {
      if (o.direction == "to-sphere")
        print_row(inv_stereographic(ExtendedPoint(Vec(pts.row(i)))));
      else {
        const ExtendedComplex t = stereographic(ExtendedPoint(Vec(pts.row(i))));
        print_row(t.mu());
      }
    }
    return 0;
  }
  throw CLI::ValidationError("--family", "unknown family: " + o.family);
}

// ----------------------------------------------------------- density-grid --

struct GridOpts {
  std::string family, params;
  double lo = -3.0, hi = 3.0;
  int n = 101;
};

int run_density_grid(const GridOpts& o) {
  const json p = json::parse(o.params);
  std::fprintf(stderr, "density-grid family=%s n=%d\n", o.family.c_str(), o.n);
  char buf[32];
  auto emit = [&](std::initializer_list<double> coords, double pdf) {
    for (double c : coords) {
      std::snprintf(buf, sizeof buf, "%.17g", c);
      std::fputs(buf, stdout);
      std::fputc(',', stdout);
    }
    std::snprintf(buf, sizeof buf, "%.17g", pdf);
    std::fputs(buf, stdout);
    std::fputc('\n', stdout);
  };

  if (o.family == "euclid") {
    const EuclideanCauchy dist(theta_from_json(p));
    if (dist.dim() == 1) {
      std::printf("coord1,pdf\n");
      for (int i = 0; i < o.n; ++i) {
        const double x = o.lo + (o.hi - o.lo) * i / (o.n - 1);
        emit({x}, dist.pdf(Vec::Constant(1, x)));
      }
    } else if (dist.dim() == 2) {
      std::printf("coord1,coord2,pdf\n");
      for (int i = 0; i < o.n; ++i)
        for (int j = 0; j < o.n; ++j) {
          Vec x(2);
          x << o.lo + (o.hi - o.lo) * i / (o.n - 1), o.lo + (o.hi - o.lo) * j / (o.n - 1);
          emit({x(0), x(1)}, dist.pdf(x));
        }
    } else {
      throw CLI::ValidationError("--params", "density-grid supports d <= 2");
    }
    return 0;
  }
  if (o.family == "marginal") {
    const MarginalCauchyBeta dist(p.at("varphi").get<double>(), p.at("nu").get<double>());
    std::printf("coord1,pdf\n");
    for (int i = 0; i < o.n; ++i) {
      const double y = -1.0 + 2.0 * (i + 0.5) / o.n;
      emit({y}, dist.pdf(y));
    }
    return 0;
  }
  if (o.family == "sphere") {
    const SphericalCauchy dist(vector_from_json(p.at("phi")));
    if (dist.sphere_dim() == 1) {
      std::printf("coord1,pdf\n");  // angle on the circle
      for (int i = 0; i < o.n; ++i) {
        const double a = -M_PI + 2.0 * M_PI * i / o.n;
        Vec y(2);
        y << std::cos(a), std::sin(a);
        emit({a}, dist.pdf(y));
      }
    } else if (dist.sphere_dim() == 2) {
      std::printf("coord1,coord2,pdf\n");  // colatitude, longitude
      for (int i = 0; i < o.n; ++i)
        for (int j = 0; j < o.n; ++j) {
          const double xi1 = M_PI * (i + 0.5) / o.n;
          const double xi2 = -M_PI + 2.0 * M_PI * j / o.n;
          Vec y(3);
          y << std::sin(xi1) * std::cos(xi2), std::sin(xi1) * std::sin(xi2), std::cos(xi1);
          emit({xi1, xi2}, dist.pdf(y));
        }
    } else {
      throw CLI::ValidationError("--params", "density-grid supports spheres up to S^2");
    }
    return 0;
  }
  if (o.family == "kent") {
    const KentTypeCauchy dist(vector_from_json(p.at("mu")), matrix_from_json(p.at("L")));
    if (dist.sphere_dim() != 2)
      throw CLI::ValidationError("--params", "kent density-grid needs d = 2");
    std::printf("coord1,coord2,pdf\n");
    for (int i = 0; i < o.n; ++i)
      for (int j = 0; j < o.n; ++j) {
        const double xi1 = M_PI * (i + 0.5) / o.n;
        const double xi2 = -M_PI + 2.0 * M_PI * j / o.n;
        Vec y(3);
        y << std::sin(xi1) * std::cos(xi2), std::sin(xi1) * std::sin(xi2), std::cos(xi1);
        emit({xi1, xi2}, dist.pdf(y));
      }
    return 0;
  }
  throw CLI::ValidationError("--family", "unknown family: " + o.family);
}

struct LambertOpts {
  double a11 = 4.0, a12 = 0.0, a22 = 4.0;
  int n = 201;
};

int run_lambert_grid(const LambertOpts& o) {
  std::fprintf(stderr, "lambert-grid a11=%g a12=%g a22=%g n=%d\n", o.a11, o.a12, o.a22, o.n);
  std::printf("v1,v2,pdf\n");
  char buf[96];
  for (int i = 0; i < o.n; ++i)
    for (int j = 0; j < o.n; ++j) {
      const double v1 = -2.0 + 4.0 * i / (o.n - 1);
      const double v2 = -2.0 + 4.0 * j / (o.n - 1);
      const double f =
          v1 * v1 + v2 * v2 <= 4.0 ? kent_lambert_pdf(o.a11, o.a12, o.a22, v1, v2) : 0.0;
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", v1, v2, f);
      std::fputs(buf, stdout);
    }
  return 0;
}

// ---------------------------------------------------------------- verify --

struct VerifyOpts {
  std::string suite = "all";
  std::uint64_t seed = default_seed();
  bool emit_json = false;
};

int run_verify(const VerifyOpts& o) {
  OracleConfig cfg;
  cfg.seed = o.seed;
  std::fprintf(stderr, "verify suite=%s seed=%llu\n", o.suite.c_str(),
               static_cast<unsigned long long>(o.seed));
  std::vector<CheckResult> results;
  if (o.suite == "all") {
    results = run_acceptance(cfg);
  } else {
    using Runner = std::vector<CheckResult> (*)(const OracleConfig&);
    const std::pair<const char*, Runner> table[] = {
        {"normalization", checks::normalization},
        {"euclid-closure", checks::euclid_closure},
        {"sphere-closure", checks::sphere_closure},
        {"stereographic", checks::stereographic_transport},
        {"composition", checks::sphere_composition},
        {"moments", checks::moments_closed_forms},
        {"mle-n3", checks::mle_three_points},
        {"mle-n2", checks::mle_two_points},
        {"stationary", checks::stationary_checks},
        {"equivariance", checks::equivariance},
        {"samplers", checks::samplers},
        {"kent", checks::kent_checks},
        {"marginal-closure", checks::marginal_closure},
    };
    bool found = false;
    for (const auto& [name, fn] : table)
      if (o.suite == name) {
        results = fn(cfg);
        found = true;
      }
    if (!found) throw CLI::ValidationError("--suite", "unknown suite: " + o.suite);
  }
  int failures = 0;
  json report = json::array();
  for (const auto& r : results) {
    if (!r.pass) ++failures;
    if (o.emit_json)
      report.push_back(
          {{"check", r.check}, {"value", r.value}, {"tolerance", r.tolerance}, {"pass", r.pass}});
    else
      std::printf("%-4s %-38s value=%.3e  tol=%.3e\n", r.pass ? "PASS" : "FAIL", r.check.c_str(),
                  r.value, r.tolerance);
  }
  if (o.emit_json) std::printf("%s\n", report.dump(2).c_str());
  std::fprintf(stderr, "%zu checks, %d failures\n", results.size(), failures);
  return failures == 0 ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multivariate Cauchy families on R^d and S^d: Moebius actions, "
               "samplers, moments, maximum likelihood"};
  app.require_subcommand(1);

  SampleOpts so;
  auto* sample = app.add_subcommand("sample", "draw variates, CSV to stdout");
  sample->add_option("--family", so.family, "uniform-sphere|sphere-cauchy|euclid-cauchy|kent|marginal")
      ->required();
  sample->add_option("--params", so.params, "family parameters as JSON")->required();
  sample->add_option("--n", so.n, "number of variates");
  sample->add_option("--seed", so.seed, "rng seed (default env MCAUCHY_SEED or 7)");
  sample->add_option("--stream", so.stream, "rng stream id");
  sample->add_flag("--parallel", so.parallel, "fill rows with OpenMP (bit-identical)");

  FitOpts fo;
  auto* fit = app.add_subcommand("fit", "estimate parameters from CSV points, JSON to stdout");
  fit->add_option("--family", fo.family, "euclid|sphere")->required();
  fit->add_option("--method", fo.method, "mle|mom");
  fit->add_option("--input", fo.input, "CSV file ('-' for stdin)");
  fit->add_option("--tol", fo.tol, "stationarity tolerance");
  fit->add_option("--max-evals", fo.max_evals, "optimizer budget");
  fit->add_option("--seed", fo.seed, "optimizer restart seed");

  TransformOpts to;
  auto* tr = app.add_subcommand("transform", "apply a Moebius map to points or a parameter");
  tr->add_option("--family", to.family, "euclid|sphere|stereographic")->required();
  tr->add_option("--map", to.map, "JSON map/chain ({A,gamma,a,b,epsilon} or {maps:[...]}, {R,phi})");
  tr->add_option("--points", to.points, "CSV of points ('-' for stdin)");
  tr->add_option("--param", to.param, "parameter JSON to push forward");
  tr->add_option("--direction", to.direction, "to-sphere|to-euclid (stereographic only)");

  GridOpts go;
  auto* dg = app.add_subcommand("density-grid", "tabulate a pdf, CSV with header to stdout");
  dg->add_option("--family", go.family, "euclid|sphere|marginal|kent")->required();
  dg->add_option("--params", go.params, "family parameters as JSON")->required();
  dg->add_option("--min", go.lo, "grid lower bound (euclid)");
  dg->add_option("--max", go.hi, "grid upper bound (euclid)");
  dg->add_option("--n", go.n, "points per axis");

  LambertOpts lo;
  auto* lg = app.add_subcommand("lambert-grid", "equal-area-projection density grid, d = 2");
  lg->add_option("--a11", lo.a11)->required();
  lg->add_option("--a12", lo.a12)->required();
  lg->add_option("--a22", lo.a22)->required();
  lg->add_option("--n", lo.n, "points per axis");

  VerifyOpts vo;
  auto* vf = app.add_subcommand("verify", "run the oracle-backed acceptance suite");
  vf->add_option("--suite", vo.suite, "all or one of the listed suites");
  vf->add_option("--seed", vo.seed, "suite seed");
  vf->add_flag("--json", vo.emit_json, "emit the JSON report instead of text rows");

  try {
    app.parse(argc, argv);
    if (*sample) return run_sample(so);
    if (*fit) return run_fit(fo);
    if (*tr) return run_transform(to);
    if (*dg) return run_density_grid(go);
    if (*lg) return run_lambert_grid(lo);
    if (*vf) return run_verify(vo);
  } catch (const CLI::ParseError& e) {  // also covers post-parse validation errors
    app.exit(e);
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::fprintf(stderr, "json error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
