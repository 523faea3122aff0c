// hardtsp: generate and analyze metric TSP instances whose subtour
// relaxation leaves a large integrality gap.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "hardtsp/dot_export.hpp"
#include "hardtsp/metric.hpp"
#include "hardtsp/pipeline.hpp"
#include "hardtsp/tsplib.hpp"

namespace fs = std::filesystem;
using namespace hardtsp;

namespace {

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << text;
}

void print_report(const std::string& label, const EvaluationReport& rep) {
  std::cout << label << ": TOUR=" << rep.tour_value << " SUBT=" << rep.subt_value
            << " gap=" << rep.gap << " fractional=" << (rep.sep_fractional ? "yes" : "no");
  if (rep.hardness.reps > 0) {
    std::cout << " nodes=" << rep.hardness.nodes_mean << "±" << rep.hardness.nodes_std
              << " runtime=" << rep.hardness.runtime_mean << "s±" << rep.hardness.runtime_std;
  }
  std::cout << "\n";
}

void write_run_log(const fs::path& path, const HardeningStats& stats) {
  std::ofstream out(path);
  for (const SeparationRecord& r : stats.log) {
    out << "{\"type\":\"" << r.type << "\",\"violation\":" << r.violation
        << ",\"rows_added\":" << r.rows_added << ",\"lp_objective\":" << r.lp_objective
        << ",\"node\":" << r.node << "}\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"metric TSP instances with a large subtour-relaxation integrality gap"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  std::int64_t delta = 1000;
  double time_limit = std::numeric_limits<double>::infinity();
  int reps = 5;
  std::string out_dir = ".";
  app.add_option("--seed", seed, "random seed")->capture_default_str();
  app.add_option("--delta", delta, "tour right-hand side of the integer stage")
      ->capture_default_str();
  app.add_option("--time-limit", time_limit, "time limit in seconds per hardening run");
  app.add_option("--reps", reps, "repetitions for the hardness proxy")->capture_default_str();
  app.add_option("--out-dir", out_dir, "output directory")->capture_default_str();

  // sample
  auto* sample = app.add_subcommand("sample", "sample metric-polytope points or relaxation vertices");
  int sample_n = 10, sample_count = 10, burn_in = 1000, thin = 10;
  bool sample_vertices_flag = false;
  sample->add_option("-n,--nodes", sample_n, "node count")->capture_default_str();
  sample->add_option("-c,--count", sample_count, "points / vertices to emit")->capture_default_str();
  sample->add_option("--burn-in", burn_in, "chain burn-in steps")->capture_default_str();
  sample->add_option("--thin", thin, "chain thinning")->capture_default_str();
  sample->add_flag("--vertices", sample_vertices_flag,
                   "emit fractional relaxation vertices instead of raw points");

  // evaluate
  auto* eval = app.add_subcommand("evaluate", "exact value, relaxation value, gap, hardness proxy");
  std::string eval_path;
  eval->add_option("file", eval_path, "TSPLIB instance")->required();

  // harden
  auto* harden_cmd = app.add_subcommand("harden", "harden one instance end to end");
  std::string harden_path;
  harden_cmd->add_option("file", harden_path, "TSPLIB instance")->required();

  // generate
  auto* gen = app.add_subcommand("generate", "sample vertices and harden the batch");
  int gen_n = 10, gen_r = 10, gen_jobs = 1;
  gen->add_option("-n,--nodes", gen_n, "node count")->capture_default_str();
  gen->add_option("-r,--vertices", gen_r, "number of vertices")->capture_default_str();
  gen->add_option("-j,--jobs", gen_jobs, "worker pool size")->capture_default_str();

  // convert
  auto* conv = app.add_subcommand("convert", "parse a TSPLIB file and rewrite it as FULL_MATRIX");
  std::string conv_in, conv_out;
  conv->add_option("input", conv_in, "TSPLIB instance")->required();
  conv->add_option("output", conv_out, "output path")->required();

  // export-dot
  auto* dotc = app.add_subcommand("export-dot", "support graph of the relaxation optimum as DOT");
  std::string dot_in, dot_out;
  dotc->add_option("input", dot_in, "TSPLIB instance")->required();
  dotc->add_option("output", dot_out, "output .dot path (- for stdout)")->capture_default_str();

  // regress
  auto* regress = app.add_subcommand("regress", "least squares of log10(runtime) on n");
  std::string regress_csv;
  regress->add_option("file", regress_csv, "CSV with n,runtime rows")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    fs::create_directories(out_dir);

    if (*sample) {
      if (sample_vertices_flag) {
        SampleVertexConfig cfg{burn_in, thin, 100000};
        auto vertices = sample_vertices(sample_n, sample_count, seed, cfg);
        std::cout << "vertex_hash,sep_value,n_cuts,support_edges\n";
        for (const auto& v : vertices) {
          int support = 0;
          for (double xe : v.vertex.x.values)
            if (xe > 1e-9) ++support;
          std::cout << v.vertex_hash << ',' << v.vertex.value << ',' << v.vertex.n_cuts_added
                    << ',' << support << "\n";
        }
      } else {
        auto points = sample_metric(sample_n, sample_count, burn_in, thin, seed);
        for (const auto& p : points) {
          for (int e = 0; e < p.values.size(); ++e) {
            if (e) std::cout << ' ';
            std::cout << p.values[e];
          }
          std::cout << "\n";
        }
      }
      return 0;
    }

    if (*eval) {
      TspInstance inst = tsplib_read(eval_path);
      EvaluationReport rep = evaluate(inst, reps, seed);
      print_report(inst.name().empty() ? eval_path : inst.name(), rep);
      return 0;
    }

    if (*harden_cmd) {
      TspInstance inst = tsplib_read(harden_path);
      PipelineConfig cfg;
      cfg.delta = delta;
      cfg.seed = seed;
      cfg.reps = reps;
      cfg.time_limit_sec = time_limit;
      std::string reason;
      auto outcome = harden_instance(inst, cfg, &reason);
      if (!outcome) {
        std::cout << "aborted: " << reason << "\n";
        return 2;
      }
      print_report("before", outcome->before);
      print_report("after", outcome->after);
      std::cout << "integer stage: status=" << to_string(outcome->integer_stage.status)
                << " lb=" << outcome->integer_stage.lower_bound
                << " ub=" << outcome->integer_stage.upper_bound
                << " nodes=" << outcome->integer_stage.stats.bnb_nodes << "\n";
      const fs::path base = fs::path(out_dir) / (outcome->hard.name().empty()
                                                     ? std::string("hardened")
                                                     : outcome->hard.name());
      tsplib_write(outcome->hard, base.string() + ".tsp");
      write_run_log(base.string() + ".log.jsonl", outcome->integer_stage.stats);
      std::cout << "wrote " << base.string() << ".tsp\n";
      return 0;
    }

    if (*gen) {
      PipelineConfig cfg;
      cfg.delta = delta;
      cfg.seed = seed;
      cfg.reps = reps;
      cfg.jobs = gen_jobs;
      cfg.time_limit_sec = time_limit;
      GenerateOutcome outcome = generate_hard_instances(gen_n, gen_r, cfg);
      for (const std::string& f : outcome.failures) std::cerr << "skipped: " << f << "\n";
      for (const GeneratedInstance& g : outcome.ranked) {
        const fs::path base = fs::path(out_dir) / g.instance.name();
        tsplib_write(g.instance, base.string() + ".tsp");
        write_file(base.string() + ".meta", sidecar_text(g, cfg));
      }
      write_file(fs::path(out_dir) / "summary.csv", summary_csv(outcome.ranked));
      std::cout << summary_csv(outcome.ranked);
      return 0;
    }

    if (*conv) {
      TspInstance inst = tsplib_read(conv_in);
      tsplib_write(inst, conv_out);
      std::cout << "wrote " << conv_out << "\n";
      return 0;
    }

    if (*dotc) {
      TspInstance inst = tsplib_read(dot_in);
      SepSolution sep = solve_sep(inst);
      const std::string text = export_dot(inst, sep.x);
      if (dot_out.empty() || dot_out == "-") {
        std::cout << text;
      } else {
        write_file(dot_out, text);
      }
      return 0;
    }

    if (*regress) {
      std::ifstream in(regress_csv);
      if (!in) throw std::runtime_error("cannot open " + regress_csv);
      std::vector<std::pair<int, double>> records;
      std::string line;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        int n;
        double t;
        if (std::sscanf(line.c_str(), "%d,%lf", &n, &t) == 2) records.push_back({n, t});
      }
      RegressionFit fit = fit_runtime_regression(records);
      std::cout << "slope=" << fit.slope << " intercept=" << fit.intercept << "\n";
      std::cout << "model: runtime = 10^(" << fit.slope << "*n + " << fit.intercept << ")\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
