#include "trfem/harness.hpp"

#include <atomic>
#include <fstream>
#include <mutex>
#include <thread>

#include "trfem/csv.hpp"

namespace trfem {

namespace {

std::ofstream open_out(const std::filesystem::path& out_dir,
                       const std::string& name) {
  std::filesystem::create_directories(out_dir);
  const auto path = out_dir / name;
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write output file " + path.string());
  return os;
}

struct SweepPoint {
  TransformKind formulation;
  double p1, p2, bulk;
  double f1, f2;
};

struct SweepRow {
  std::string text;
};

SweepRow run_sweep_point(const SweepJobConfig& cfg, const SweepPoint& pt) {
  const MaterialParams mat = make_material(cfg.problem, pt.p1, pt.p2, pt.bulk);
  const Problem problem = build_problem(cfg.problem, mat);
  SolverConfig sc = cfg.solver;
  sc.transform = pt.formulation;
  sc.beta_sq = cfg.beta_sq;
  LoadSchedule schedule;
  schedule.steps = {pt.f1, pt.f2};
  const SolveReport rep = solve(problem, schedule, sc);

  const int sentinel = sc.max_iter + 1;
  int iters_step1 = rep.steps.empty() ? sentinel : rep.steps[0].iterations;
  int iterations = sentinel;
  bool converged = rep.all_converged() && rep.steps.size() == 2;
  Termination term = Termination::MaxIterations;
  if (!rep.steps.empty()) {
    term = rep.steps.back().termination;
    if (converged) iterations = rep.steps.back().iterations;
  }
  SweepRow row;
  row.text = to_string(pt.formulation) + "," + cfg.problem.model + "," +
             csv_num(pt.p1) + "," + csv_num(pt.p2) + "," + csv_num(pt.bulk) +
             "," + csv_num(pt.f1) + "," + csv_num(pt.f2) + "," +
             std::to_string(iters_step1) + "," + std::to_string(iterations) +
             "," + (converged ? "true" : "false") + "," + to_string(term);
  return row;
}

void write_curve_csv(const CurveConfig& cc, std::ostream& os) {
  const ScalarFunction g = make_named_function(cc.name, cc.params);
  const ScalarFunction tg = transformed_function(g, cc.transform, cc.beta_sq);
  os << "x,g,dg,d2g,cbar_standard,t_g,t_dg,t_d2g,cbar_transform\n";
  for (double x : cc.grid.points()) {
    os << csv_num(x);
    auto emit = [&os](auto fn) {
      try {
        os << ',' << csv_num(fn());
      } catch (const std::runtime_error&) {
        os << ",nan";
      }
    };
    emit([&] { return g.f(x); });
    emit([&] { return g.df(x); });
    emit([&] { return g.d2f(x); });
    emit([&] { return local_nonlinearity(g, x); });
    emit([&] { return tg.f(x); });
    emit([&] { return tg.df(x); });
    emit([&] { return tg.d2f(x); });
    emit([&] { return local_nonlinearity(tg, x); });
    os << '\n';
  }
}

}  // namespace

SolveReport run_single(const SolveJobConfig& cfg,
                       const std::filesystem::path& out_dir) {
  const Problem problem = build_problem(cfg.problem, single_material(cfg.problem));
  LoadSchedule schedule;
  schedule.steps = cfg.steps;
  const SolveReport rep = solve(problem, schedule, cfg.solver);
  {
    auto os = open_out(out_dir, cfg.output_prefix + "_report.csv");
    write_report_csv(rep, os);
  }
  if (cfg.error_series) {
    auto os = open_out(out_dir, cfg.output_prefix + "_error_series.csv");
    os << "step,iter,disp_error_vs_final\n";
    for (std::size_t s = 0; s < rep.steps.size(); ++s) {
      const auto& step = rep.steps[s];
      for (std::size_t i = 0; i < step.error_vs_final.size(); ++i) {
        os << (s + 1) << ',' << (i + 1) << ','
           << csv_num(step.error_vs_final[i]) << '\n';
      }
    }
  }
  return rep;
}

SolveReport run_single(const std::filesystem::path& config_file,
                       const std::filesystem::path& out_dir) {
  return run_single(parse_solve_config(load_json_file(config_file)), out_dir);
}

void run_sweep(const SweepJobConfig& cfg, const std::filesystem::path& out_dir,
               int jobs) {
  std::vector<SweepPoint> points;
  for (TransformKind f : cfg.formulations)
    for (double p1 : cfg.problem.p1)
      for (double p2 : cfg.problem.p2)
        for (double bulk : cfg.problem.bulk)
          for (double f1 : cfg.f1)
            for (double f2 : cfg.f2)
              points.push_back({f, p1, p2, bulk, f1, f2});

  std::vector<SweepRow> rows(points.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string error_message;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= points.size() || failed.load()) break;
      try {
        rows[i] = run_sweep_point(cfg, points[i]);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        error_message = e.what();
        failed.store(true);
        break;
      }
    }
  };
  const int n_workers = std::max(1, jobs);
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failed.load()) throw ConfigError("sweep failed: " + error_message);

  auto os = open_out(out_dir, cfg.output);
  const bool vw = cfg.problem.model == "vw";
  os << "formulation,model," << (vw ? "A,B,K" : "mu,upsilon,K")
     << ",f1,f2,iters_step1,iterations,converged,termination\n";
  for (const auto& row : rows) os << row.text << '\n';
}

void run_sweep(const std::filesystem::path& config_file,
               const std::filesystem::path& out_dir, int jobs) {
  run_sweep(parse_sweep_config(load_json_file(config_file)), out_dir, jobs);
}

void run_metrics(const MetricsJobConfig& cfg,
                 const std::filesystem::path& out_dir) {
  for (const auto& cc : cfg.curves) {
    auto os = open_out(out_dir, cc.output + ".csv");
    write_curve_csv(cc, os);
  }
  for (const auto& rc : cfg.regions) {
    const ScalarFunction g = make_named_function(rc.name, rc.params);
    const ComparisonRegion region =
        comparison_region(g, rc.transform, rc.x.points(), rc.xn.points(),
                          rc.sup_samples, rc.beta_sq);
    auto os = open_out(out_dir, rc.output + ".csv");
    write_region_csv(region, os);
  }
}

void run_metrics(const std::filesystem::path& config_file,
                 const std::filesystem::path& out_dir) {
  run_metrics(parse_metrics_config(load_json_file(config_file)), out_dir);
}

}  // namespace trfem
