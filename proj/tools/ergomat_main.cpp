// Command-line front end: sample / estimate / decompose / cf / verify,
// mirroring the pipeline construct -> identify -> decompose ->
// characterize -> verify. Every run is byte-reproducible from its flags
// and seed; "-" as an output path means stdout.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ergomat/decomposition.hpp"
#include "ergomat/diagnostics.hpp"
#include "ergomat/io.hpp"
#include "ergomat/moments.hpp"
#include "ergomat/parallel.hpp"
#include "ergomat/sampling.hpp"
#include "ergomat/verification.hpp"

namespace {

using namespace ergomat;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;   // runtime failure or failed suite
constexpr int kExitUsage = 2;     // flag/validation error

struct OutputTarget {
  std::ostream& stream() {
    if (path == "-") return std::cout;
    file = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file) throw IoFailure("cannot open output path " + path);
    return *file;
  }
  std::string path = "-";
  std::unique_ptr<std::ofstream> file;
};

std::vector<double> parse_csv_floats(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    std::size_t pos = 0;
    const double v = std::stod(token, &pos);
    if (pos != token.size()) throw OutOfRange("cannot parse number: " + token);
    out.push_back(v);
  }
  if (out.empty()) throw OutOfRange("empty number list");
  return out;
}

SpectrumDelta parse_spectrum(const std::string& text, bool sort_first) {
  std::vector<double> v = parse_csv_floats(text);
  if (sort_first) return SpectrumDelta::from_unsorted(std::move(v));
  try {
    return SpectrumDelta(std::move(v));
  } catch (const OutOfRange&) {
    throw OutOfRange("--s must be descending with nonnegative entries "
                     "(s_1 >= ... >= s_m >= 0); pass --sort-s to sort first");
  }
}

ScalarField parse_field_flag(const std::string& text) {
  if (text == "real") return ScalarField::Real;
  if (text == "complex") return ScalarField::Complex;
  throw OutOfRange("--field must be real or complex");
}

// Grid spec: "default", or semicolon-separated points, each a
// comma-separated descending m-tuple (e.g. "2,1;1,0.5;0,0").
CFGrid parse_grid(const std::string& text, std::size_t m) {
  if (text == "default") return default_grid(m);
  std::vector<SpectrumDelta> pts;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ';')) {
    std::vector<double> v = parse_csv_floats(token);
    if (v.size() != m)
      throw OutOfRange("grid point '" + token + "' has rank " + std::to_string(v.size()) +
                       ", expected " + std::to_string(m));
    pts.emplace_back(std::move(v));
  }
  if (pts.empty()) throw OutOfRange("empty grid");
  return CFGrid(m, std::move(pts));
}

ojson resolved_config(std::initializer_list<std::pair<std::string, ojson>> kv) {
  ojson j;
  for (const auto& [k, v] : kv) j[k] = v;
  return j;
}

int cmd_sample(const std::string& s_text, bool sort_s, const std::string& field_text,
               std::size_t rows, std::size_t count, std::uint64_t seed, OutputTarget& out) {
  const SpectrumDelta spec = parse_spectrum(s_text, sort_s);
  const ScalarField field = parse_field_flag(field_text);
  const RngHandle base{seed, 0};

  std::vector<SampleRecord> records;
  records.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const RngHandle h = base.split(i);
    Rng rng(h);
    const CornerMatrix x = sample_mu_s(spec, field, rows, rng);
    records.push_back(SampleRecord::from_matrix("s" + std::to_string(i), x, h));
  }
  write_samples(records, out.stream());
  return kExitOk;
}

int cmd_estimate(const std::string& in_path, const std::string& method, std::size_t k_depth,
                 bool check, OutputTarget& out) {
  const std::vector<SampleRecord> records = read_samples_file(in_path);
  if (records.empty()) throw EmptySampleSet("no samples in " + in_path);

  std::vector<std::string> ids;
  std::vector<SpectrumEstimate> estimates;
  double worst_gap = 0.0;
  for (const auto& rec : records) {
    const CornerMatrix x = rec.to_matrix();
    SpectrumEstimate est = method == "moments" ? spectrum_estimate_moments(x)
                                               : spectrum_estimate_eigen(x);
    if (k_depth > 0 && std::isfinite(est.residual))
      est.residual = a_s_statistic(x, est.spec, k_depth);
    if (check) {
      const SpectrumEstimate other = method == "moments" ? spectrum_estimate_eigen(x)
                                                         : spectrum_estimate_moments(x);
      worst_gap = std::max(worst_gap, est.spec.sup_distance(other.spec));
    }
    ids.push_back(rec.id);
    estimates.push_back(std::move(est));
  }
  write_estimates_csv(ids, estimates, out.stream());
  if (check && worst_gap > 1e-8) {
    std::cerr << "estimate --check: eigen and moments routes disagree by " << worst_gap << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_decompose(const std::string& in_path, double tol, bool tol_set, OutputTarget& out) {
  const std::vector<SampleRecord> records = read_samples_file(in_path);
  if (records.empty()) {
    std::cerr << "decompose: no samples in " << in_path << "\n";
    return kExitUsage;
  }
  std::vector<CornerMatrix> samples;
  samples.reserve(records.size());
  for (const auto& rec : records) samples.push_back(rec.to_matrix());

  const double used_tol = tol_set ? tol : default_cluster_tol(samples);
  const EmpiricalMixture mixture = decompose_samples(samples, used_tol);
  const ojson config = resolved_config(
      {{"command", "decompose"}, {"in", in_path}, {"tol", used_tol}, {"tol_was_auto", !tol_set}});
  write_document(mixture_to_json(mixture, config), out.stream());
  return kExitOk;
}

int cmd_cf(const std::string& s_text, bool sort_s, const std::string& field_text,
           const std::string& grid_text, std::size_t mc_iters, std::uint64_t seed,
           OutputTarget& out) {
  const SpectrumDelta spec = parse_spectrum(s_text, sort_s);
  const ScalarField field = parse_field_flag(field_text);
  CFGrid grid(1, {});
  try {
    grid = parse_grid(grid_text, spec.rank());
  } catch (const Error& e) {
    throw OutOfRange(std::string("grid parse failure: ") + e.what());
  }
  Rng rng(RngHandle{seed, 0});
  const CFEvaluation cf = cf_mu_s(spec, grid, field, mc_iters, rng);
  const ojson config = resolved_config({{"command", "cf"},
                                        {"s", spec.values()},
                                        {"field", field_text},
                                        {"grid", grid_text},
                                        {"mc", mc_iters},
                                        {"seed", seed}});
  write_document(cf_to_json(cf, config), out.stream());
  return kExitOk;
}

int run_reports(const std::vector<TestReport>& reports, const ojson& config, OutputTarget& out) {
  write_document(report_set_to_json(reports, config), out.stream());
  for (const auto& r : reports)
    if (!r.passed) return kExitFailure;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ergomat: sampling, identification, decomposition and verification "
               "for rotation-invariant ensembles of infinite rank-m matrices"};
  app.set_config("--config");
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 0;
  unsigned threads = default_threads();
  std::string out_path = "-";
  app.add_option("--seed", seed, "base seed; every derived stream is logged in the output");
  app.add_option("--threads", threads, "worker threads (results identical for any count)");

  // sample: draw from the ergodic ensemble mu_s = law of G diag(s) Q.
  auto* sample = app.add_subcommand(
      "sample", "draw corners of the ergodic ensemble mu_s (Gaussian block times diag(s) "
                "times a Haar rotation) as NDJSON records");
  std::string sample_measure = "mu_s", sample_s, sample_field = "real";
  std::size_t sample_rows = 64, sample_count = 1;
  bool sample_sort = false;
  sample->add_option("--measure", sample_measure, "ensemble family (mu_s)")
      ->check(CLI::IsMember({"mu_s"}));
  sample->add_option("--s", sample_s, "spectrum parameter, descending CSV (e.g. 2,1)")
      ->required();
  sample->add_flag("--sort-s", sample_sort, "sort the given entries descending first");
  sample->add_option("--field", sample_field, "real | complex");
  sample->add_option("--rows", sample_rows, "corner rows n")->check(CLI::PositiveNumber);
  sample->add_option("--count", sample_count, "number of samples")->check(CLI::PositiveNumber);
  sample->add_option("--out", out_path, "output path or -");

  // estimate: invert corner statistics back to the spectrum parameter.
  auto* estimate = app.add_subcommand(
      "estimate", "estimate the spectrum parameter s per sample (singular values of the "
                  "scaled corner, or power sums inverted by Newton's identities)");
  std::string est_in, est_method = "eigen";
  std::size_t est_k = 0;
  bool est_check = false;
  estimate->add_option("--in", est_in, "sample file")->required();
  estimate->add_option("--method", est_method, "eigen | moments")
      ->check(CLI::IsMember({"eigen", "moments"}));
  estimate->add_option("--k", est_k, "moment depth diagnostic (default: rank)");
  estimate->add_flag("--check", est_check, "assert both routes agree within 1e-8");
  estimate->add_option("--out", out_path, "output CSV path or -");

  // decompose: recover the mixing measure across ergodic components.
  auto* decompose = app.add_subcommand(
      "decompose", "estimate the mixing measure of an invariant law: cluster per-sample "
                   "spectrum estimates into weighted atoms");
  std::string dec_in;
  double dec_tol = 0.0;
  decompose->add_option("--in", dec_in, "sample file")->required();
  auto* dec_tol_opt =
      decompose->add_option("--tol", dec_tol, "sup-norm clustering tolerance (> 0)")
          ->check(CLI::PositiveNumber);
  decompose->add_option("--out", out_path, "output JSON path or -");

  // cf: evaluate the characteristic functional at diagonal directions.
  auto* cf = app.add_subcommand(
      "cf", "evaluate the characteristic functional of mu_s at diagonal directions "
            "D_lambda (Gaussian integral exact, Haar average by Monte Carlo)");
  std::string cf_s, cf_field = "real", cf_grid = "default";
  std::size_t cf_mc = 100000;
  bool cf_sort = false;
  cf->add_option("--s", cf_s, "spectrum parameter, descending CSV")->required();
  cf->add_flag("--sort-s", cf_sort, "sort the given entries descending first");
  cf->add_option("--field", cf_field, "real | complex");
  cf->add_option("--grid", cf_grid, "default, or points like 2,1;1,0.5;0,0");
  cf->add_option("--mc", cf_mc, "Monte Carlo iterations")->check(CLI::PositiveNumber);
  cf->add_option("--out", out_path, "output JSON path or -");

  // verify: statistical verification suites.
  auto* verify = app.add_subcommand("verify", "statistical verification suites");
  verify->require_subcommand(1);
  auto* v_borel = verify->add_subcommand(
      "borel", "Gaussian truncation limit of scaled Haar corners (KS at alpha = 0.01)");
  std::size_t vb_n = 1000, vb_s = 1, vb_samples = 100000;
  std::string vb_field = "real";
  v_borel->add_option("--N", vb_n, "group dimension")->check(CLI::PositiveNumber);
  v_borel->add_option("--S", vb_s, "corner size")->check(CLI::PositiveNumber);
  v_borel->add_option("--samples", vb_samples, "number of Haar draws")
      ->check(CLI::PositiveNumber);
  v_borel->add_option("--field", vb_field, "real | complex");
  v_borel->add_option("--out", out_path, "report path or -");

  auto* v_inv = verify->add_subcommand(
      "invariance", "two-sided invariance of mu_s in law under u X v^-1");
  std::string vi_s = "2,1", vi_field = "real";
  std::size_t vi_n = 64, vi_samples = 10000;
  v_inv->add_option("--s", vi_s, "spectrum parameter");
  v_inv->add_option("--n", vi_n, "corner rows")->check(CLI::PositiveNumber);
  v_inv->add_option("--samples", vi_samples, "samples per side")->check(CLI::PositiveNumber);
  v_inv->add_option("--field", vi_field, "real | complex");
  v_inv->add_option("--out", out_path, "report path or -");

  auto* v_orb = verify->add_subcommand(
      "orbital", "orbital measures at finite resolution reproduce mu_s (limit-orbit check)");
  std::string vo_s = "1";
  std::size_t vo_n = 1024, vo_samples = 10000;
  v_orb->add_option("--s", vo_s, "spectrum parameter");
  v_orb->add_option("--n", vo_n, "orbit resolution")->check(CLI::PositiveNumber);
  v_orb->add_option("--samples", vo_samples, "orbital draws")->check(CLI::PositiveNumber);
  v_orb->add_option("--out", out_path, "report path or -");

  auto* v_tight = verify->add_subcommand(
      "tightness", "norm quantiles stay bounded relative to s_1 (tightness criterion shadow)");
  std::string vt_s = "1;10;100";
  std::size_t vt_n = 256, vt_samples = 2000;
  v_tight->add_option("--s-list", vt_s, "spectra separated by ';' (e.g. 1;10;100)");
  v_tight->add_option("--n", vt_n, "corner rows")->check(CLI::PositiveNumber);
  v_tight->add_option("--samples", vt_samples, "samples per spectrum")
      ->check(CLI::PositiveNumber);
  v_tight->add_option("--out", out_path, "report path or -");

  auto* v_all = verify->add_subcommand(
      "all", "the full verification battery with documented default parameters");
  v_all->add_option("--out", out_path, "report path or -");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  OutputTarget out;
  out.path = out_path;

  try {
    if (sample->parsed())
      return cmd_sample(sample_s, sample_sort, sample_field, sample_rows, sample_count, seed, out);
    if (estimate->parsed()) return cmd_estimate(est_in, est_method, est_k, est_check, out);
    if (decompose->parsed()) return cmd_decompose(dec_in, dec_tol, dec_tol_opt->count() > 0, out);
    if (cf->parsed()) return cmd_cf(cf_s, cf_sort, cf_field, cf_grid, cf_mc, seed, out);

    if (verify->parsed()) {
      std::vector<TestReport> reports;
      ojson config;
      if (v_borel->parsed()) {
        reports.push_back(borel_test(vb_n, vb_s, vb_samples, parse_field_flag(vb_field),
                                     RngHandle{seed, 0}, threads));
        config = resolved_config({{"command", "verify borel"},
                                  {"N", vb_n},
                                  {"S", vb_s},
                                  {"samples", vb_samples},
                                  {"field", vb_field},
                                  {"seed", seed}});
      } else if (v_inv->parsed()) {
        const SpectrumDelta spec = parse_spectrum(vi_s, false);
        const ScalarField field = parse_field_flag(vi_field);
        const RngHandle h{seed, 0};
        Rng gen(h.split(0));
        const SquareMatrix u = haar_square(vi_n, field, gen);
        const SquareMatrix v = haar_square(spec.rank(), field, gen);
        reports.push_back(invariance_test(spec, vi_n, u, v, vi_samples,
                                          default_grid(spec.rank()), h.split(1), threads));
        config = resolved_config({{"command", "verify invariance"},
                                  {"s", spec.values()},
                                  {"n", vi_n},
                                  {"samples", vi_samples},
                                  {"field", vi_field},
                                  {"seed", seed}});
      } else if (v_orb->parsed()) {
        const SpectrumDelta spec = parse_spectrum(vo_s, false);
        reports.push_back(orbital_convergence_test(spec, vo_n, vo_samples,
                                                   default_grid(spec.rank()), RngHandle{seed, 0},
                                                   ScalarField::Real, threads));
        config = resolved_config({{"command", "verify orbital"},
                                  {"s", spec.values()},
                                  {"n", vo_n},
                                  {"samples", vo_samples},
                                  {"seed", seed}});
      } else if (v_tight->parsed()) {
        std::vector<SpectrumDelta> specs;
        std::stringstream ss(vt_s);
        std::string token;
        while (std::getline(ss, token, ';')) specs.push_back(parse_spectrum(token, false));
        if (specs.empty()) throw OutOfRange("--s-list must name at least one spectrum");
        reports.push_back(tightness_diagnostic(specs, vt_n, vt_samples, RngHandle{seed, 0},
                                               ScalarField::Real, threads));
        config = resolved_config({{"command", "verify tightness"},
                                  {"s_list", vt_s},
                                  {"n", vt_n},
                                  {"samples", vt_samples},
                                  {"seed", seed}});
      } else if (v_all->parsed()) {
        reports = verification_battery(seed, threads);
        config = resolved_config({{"command", "verify all"}, {"seed", seed}});
      }
      return run_reports(reports, config, out);
    }
  } catch (const OutOfRange& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SchemaViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const EmptySampleSet& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
