// wchaos -- batch front door for the finite Wigner chaos laboratory.
//
// Subcommands: verify, product, moments, spectrum, reduce, probe.
// Exit codes: 0 success, 1 failed check or reduction disagreement,
// 2 usage / precondition error, 3 file or format error.

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wchaos/chaos.hpp"
#include "wchaos/checks.hpp"
#include "wchaos/io.hpp"
#include "wchaos/reduction.hpp"
#include "wchaos/spectra.hpp"

namespace {

std::string points_path_for(const std::string& csv_path) {
  const std::string suffix = ".csv";
  if (csv_path.size() >= suffix.size() &&
      csv_path.compare(csv_path.size() - suffix.size(), suffix.size(), suffix) == 0) {
    return csv_path.substr(0, csv_path.size() - suffix.size()) + ".points.csv";
  }
  return csv_path + ".points.csv";
}

wchaos::ChaosElement load_element(const std::string& path) {
  return wchaos::parse_chaos_json(wchaos::read_text_file(path));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wchaos: a numerical laboratory for the finite Wigner chaos"};
  app.require_subcommand(1);

  // verify
  int cells = 2;
  double horizon = 2.0;
  int degree = 3;
  std::uint64_t seed = 1;
  int trials = 25;
  std::string verify_out = "verify.json";
  CLI::App* verify = app.add_subcommand(
      "verify", "Run the deterministic verification suite and write a report");
  verify->add_option("--cells", cells, "Grid cell count m (default 2)");
  verify->add_option("--horizon", horizon, "Grid horizon T (default 2)");
  verify->add_option("--degree", degree, "Degree budget for random elements (default 3)");
  verify->add_option("--seed", seed, "Seed for the SplitMix64 generator (default 1)");
  verify->add_option("--trials", trials, "Trials per check (default 25)");
  verify->add_option("--out", verify_out, "Report path (default verify.json)");

  // product
  std::string product_lhs, product_rhs, product_out;
  CLI::App* product = app.add_subcommand(
      "product", "Ito product of two chaos documents");
  product->add_option("--lhs", product_lhs, "Left factor document")->required();
  product->add_option("--rhs", product_rhs, "Right factor document")->required();
  product->add_option("--out", product_out, "Output document")->required();

  // moments
  std::string moments_in, moments_out;
  int max_k = 8;
  CLI::App* moments = app.add_subcommand(
      "moments", "Exact moments tau(Y^k) for k = 0..max-k, as CSV");
  moments->add_option("--input", moments_in, "Chaos document")->required();
  moments->add_option("--max-k", max_k, "Largest moment order (default 8)");
  moments->add_option("--out", moments_out, "Output CSV")->required();

  // spectrum
  std::string spectrum_in, spectrum_out;
  int truncation = 8;
  int bins = 32;
  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "Vacuum spectral measure at finite truncation, as histogram CSV");
  spectrum->add_option("--input", spectrum_in, "Self-adjoint chaos document")->required();
  spectrum->add_option("--truncation", truncation, "Fock truncation degree D (default 8)");
  spectrum->add_option("--bins", bins, "Histogram bin count (default 32)");
  spectrum->add_option("--out", spectrum_out,
                       "Output CSV; raw points go to the matching .points.csv")
      ->required();

  // reduce
  std::string reduce_in, reduce_steps, reduce_out;
  CLI::App* reduce = app.add_subcommand(
      "reduce", "Iterate Delta_{p,h} steps down to a scalar and compare with the prediction");
  reduce->add_option("--input", reduce_in, "Chaos document")->required();
  reduce->add_option("--steps", reduce_steps, "Reduction steps document")->required();
  reduce->add_option("--out", reduce_out, "Report path")->required();

  // probe
  std::string probe_in, probe_other, probe_out;
  CLI::App* probe = app.add_subcommand(
      "probe", "Zero-divisor probe: report ||Y u|| and ||Y* u||");
  probe->add_option("--input", probe_in, "Chaos document Y")->required();
  probe->add_option("--other", probe_other, "Chaos document u")->required();
  probe->add_option("--out", probe_out, "Report path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*verify) {
      wchaos::CheckParams params;
      params.grid = wchaos::GridSpec{horizon, cells};
      params.degree = degree;
      params.seed = seed;
      params.trials = trials;
      const std::vector<wchaos::CheckResult> results = wchaos::run_all_checks(params);
      wchaos::write_text_file(verify_out, wchaos::emit_verify_json(params, results));
      int failed = 0;
      for (const wchaos::CheckResult& r : results) {
        if (!r.pass) ++failed;
        std::printf("%s %s residual=%s tolerance=%s\n", r.pass ? "pass" : "FAIL",
                    r.name.c_str(), wchaos::format_double(r.residual).c_str(),
                    wchaos::format_double(r.tolerance).c_str());
      }
      std::printf("verify: %zu/%zu checks passed, report written to %s\n",
                  results.size() - static_cast<std::size_t>(failed), results.size(),
                  verify_out.c_str());
      return failed == 0 ? 0 : 1;
    }

    if (*product) {
      const wchaos::ChaosElement lhs = load_element(product_lhs);
      const wchaos::ChaosElement rhs = load_element(product_rhs);
      wchaos::write_text_file(product_out,
                              wchaos::emit_chaos_json(wchaos::ito_product(lhs, rhs)));
      return 0;
    }

    if (*moments) {
      if (max_k < 0) throw std::invalid_argument("moments: --max-k must be >= 0");
      const wchaos::ChaosElement Y = load_element(moments_in);
      std::vector<wchaos::Complex> values;
      values.reserve(static_cast<std::size_t>(max_k) + 1);
      for (int k = 0; k <= max_k; ++k) values.push_back(wchaos::moment(Y, k));
      wchaos::write_text_file(moments_out, wchaos::emit_moments_csv(values));
      return 0;
    }

    if (*spectrum) {
      const wchaos::ChaosElement Y = load_element(spectrum_in);
      const wchaos::SpectralMeasure mu = wchaos::vacuum_spectral_measure(Y, truncation);
      wchaos::write_text_file(spectrum_out, wchaos::emit_spectrum_csv(mu, bins));
      wchaos::write_text_file(points_path_for(spectrum_out), wchaos::emit_points_csv(mu));
      return 0;
    }

    if (*reduce) {
      const wchaos::ChaosElement Y = load_element(reduce_in);
      const std::vector<wchaos::ReductionStep> steps =
          wchaos::parse_reduction_steps(wchaos::read_text_file(reduce_steps), Y.grid);
      const wchaos::ReductionReport report = wchaos::iterate_reduction(Y, steps);
      wchaos::write_text_file(reduce_out, wchaos::emit_reduction_report_json(report));
      std::printf("final=[%s, %s] predicted=[%s, %s] difference=%s agrees=%s\n",
                  wchaos::format_double(report.final_scalar.real()).c_str(),
                  wchaos::format_double(report.final_scalar.imag()).c_str(),
                  wchaos::format_double(report.predicted_scalar.real()).c_str(),
                  wchaos::format_double(report.predicted_scalar.imag()).c_str(),
                  wchaos::format_double(report.abs_difference).c_str(),
                  report.agrees ? "yes" : "no");
      return report.agrees ? 0 : 1;
    }

    if (*probe) {
      const wchaos::ChaosElement Y = load_element(probe_in);
      const wchaos::ChaosElement u = load_element(probe_other);
      const wchaos::ZeroDivisorReport report = wchaos::zero_divisor_probe(Y, u);
      wchaos::write_text_file(probe_out, wchaos::emit_probe_report_json(report));
      std::printf("norm_Yu=%s norm_Ystar_u=%s\n",
                  wchaos::format_double(report.norm_Yu).c_str(),
                  wchaos::format_double(report.norm_Ystar_u).c_str());
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::runtime_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 2;
}
