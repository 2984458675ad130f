#include "ergomat/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include "ergomat/errors.hpp"

namespace ergomat {

namespace {

const char* field_token(ScalarField f) { return f == ScalarField::Complex ? "complex" : "real"; }

ScalarField parse_field(const std::string& s, std::size_t line) {
  if (s == "real") return ScalarField::Real;
  if (s == "complex") return ScalarField::Complex;
  throw SchemaViolation("field must be \"real\" or \"complex\"", line);
}

// CSV floats: shortest representation that still round-trips.
std::string csv_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace

SampleRecord SampleRecord::from_matrix(std::string id, const CornerMatrix& x, RngHandle h) {
  return SampleRecord{std::move(id), x.field(), x.rows(), x.cols(), h.seed, h.stream, x.data()};
}

CornerMatrix SampleRecord::to_matrix() const {
  return CornerMatrix::from_data(field, n, m, data);
}

void write_samples(const std::vector<SampleRecord>& samples, std::ostream& out) {
  for (const auto& rec : samples) {
    ojson j;
    j["id"] = rec.id;
    j["field"] = field_token(rec.field);
    j["n"] = rec.n;
    j["m"] = rec.m;
    j["seed"] = rec.seed;
    j["stream"] = rec.stream;
    j["data"] = rec.data;
    j["v"] = 1;
    out << j.dump() << '\n';
  }
  if (!out) throw IoFailure("write_samples: stream write failed");
}

void write_samples_file(const std::vector<SampleRecord>& samples, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoFailure("write_samples: cannot open " + path);
  write_samples(samples, out);
}

std::vector<SampleRecord> read_samples(std::istream& in) {
  std::vector<SampleRecord> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    ojson j;
    try {
      j = ojson::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw SchemaViolation(std::string("invalid JSON: ") + e.what(), lineno);
    }
    if (!j.is_object()) throw SchemaViolation("record must be a JSON object", lineno);
    for (const char* key : {"id", "field", "n", "m", "seed", "stream", "data", "v"})
      if (!j.contains(key)) throw SchemaViolation(std::string("missing field ") + key, lineno);
    if (!j["v"].is_number_integer() || j["v"].get<std::int64_t>() != 1)
      throw SchemaViolation("unsupported schema version", lineno);
    if (!j["id"].is_string() || !j["field"].is_string())
      throw SchemaViolation("id and field must be strings", lineno);
    if (!j["n"].is_number_unsigned() || !j["m"].is_number_unsigned() ||
        !j["seed"].is_number_unsigned() || !j["stream"].is_number_unsigned())
      throw SchemaViolation("n, m, seed, stream must be unsigned integers", lineno);
    if (!j["data"].is_array()) throw SchemaViolation("data must be an array", lineno);

    SampleRecord rec;
    rec.id = j["id"].get<std::string>();
    rec.field = parse_field(j["field"].get<std::string>(), lineno);
    rec.n = j["n"].get<std::size_t>();
    rec.m = j["m"].get<std::size_t>();
    rec.seed = j["seed"].get<std::uint64_t>();
    rec.stream = j["stream"].get<std::uint64_t>();
    if (rec.n == 0 || rec.m == 0) throw SchemaViolation("n and m must be >= 1", lineno);
    rec.data.reserve(j["data"].size());
    for (const auto& v : j["data"]) {
      if (!v.is_number()) throw SchemaViolation("data entries must be numbers", lineno);
      const double d = v.get<double>();
      if (!std::isfinite(d)) throw SchemaViolation("data entries must be finite", lineno);
      rec.data.push_back(d);
    }
    if (rec.data.size() != rec.n * rec.m * scalars_per_entry(rec.field))
      throw SchemaViolation("data length does not match n*m (and field)", lineno);
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<SampleRecord> read_samples_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("read_samples: cannot open " + path);
  return read_samples(in);
}

ojson report_to_json(const TestReport& report, const ojson& config) {
  ojson j;
  j["type"] = "test_report";
  j["name"] = report.name;
  j["statistic"] = report.statistic;
  j["threshold"] = report.threshold;
  j["passed"] = report.passed;
  ojson det = ojson::object();
  for (const auto& [k, v] : report.details) det[k] = v;
  j["details"] = det;
  if (!config.empty()) j["config"] = config;
  return j;
}

ojson report_set_to_json(const std::vector<TestReport>& reports, const ojson& config) {
  ojson j;
  j["type"] = "report_set";
  bool all = true;
  for (const auto& r : reports) all = all && r.passed;
  j["all_passed"] = all;
  ojson arr = ojson::array();
  for (const auto& r : reports) arr.push_back(report_to_json(r));
  j["reports"] = arr;
  if (!config.empty()) j["config"] = config;
  return j;
}

ojson mixture_to_json(const EmpiricalMixture& mixture, const ojson& config) {
  ojson j;
  j["type"] = "mixture";
  j["m"] = mixture.m;
  j["raw_cloud"] = mixture.raw_cloud;
  ojson atoms = ojson::array();
  for (const auto& atom : mixture.atoms) {
    ojson a;
    a["s"] = atom.spec.values();
    a["weight"] = atom.weight;
    atoms.push_back(a);
  }
  j["atoms"] = atoms;
  if (!config.empty()) j["config"] = config;
  return j;
}

ojson cf_to_json(const CFEvaluation& cf, const ojson& config) {
  ojson j;
  j["type"] = "cf_evaluation";
  j["m"] = cf.grid.m;
  ojson grid = ojson::array();
  for (const auto& p : cf.grid.points) grid.push_back(p.values());
  j["grid"] = grid;
  ojson values = ojson::array();
  for (const auto& v : cf.values) values.push_back(ojson::array({v.real(), v.imag()}));
  j["values"] = values;
  j["mc_stderr"] = cf.mc_stderr;
  if (!config.empty()) j["config"] = config;
  return j;
}

void write_document(const ojson& doc, std::ostream& out) {
  out << doc.dump(2) << '\n';
  if (!out) throw IoFailure("write_document: stream write failed");
}

void write_document_file(const ojson& doc, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoFailure("write_document: cannot open " + path);
  write_document(doc, out);
}

void write_estimates_csv(const std::vector<std::string>& ids,
                         const std::vector<SpectrumEstimate>& estimates, std::ostream& out) {
  if (ids.size() != estimates.size())
    throw OutOfRange("write_estimates_csv: ids and estimates must align");
  const std::size_t m = estimates.empty() ? 0 : estimates.front().spec.rank();
  out << "id";
  for (std::size_t j = 1; j <= m; ++j) out << ",s_" << j;
  out << ",method,n,residual\n";
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    const auto& est = estimates[i];
    if (est.spec.rank() != m) throw RankMismatch("write_estimates_csv: mixed ranks");
    out << ids[i];
    for (std::size_t j = 0; j < m; ++j) out << ',' << csv_double(est.spec[j]);
    out << ',' << method_name(est.method) << ',' << est.n << ',' << csv_double(est.residual)
        << '\n';
  }
  if (!out) throw IoFailure("write_estimates_csv: stream write failed");
}

}  // namespace ergomat
