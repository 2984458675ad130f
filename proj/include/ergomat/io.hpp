#ifndef ERGOMAT_IO_HPP
#define ERGOMAT_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ergomat/characteristic.hpp"
#include "ergomat/decomposition.hpp"
#include "ergomat/diagnostics.hpp"
#include "ergomat/matrix.hpp"
#include "ergomat/moments.hpp"
#include "ergomat/rng.hpp"

namespace ergomat {

using ojson = nlohmann::ordered_json;

/// One serialized sample: the corner block plus the stream identity that
/// regenerates it. Complex data is interleaved re,im.
struct SampleRecord {
  std::string id;
  ScalarField field = ScalarField::Real;
  std::size_t n = 0, m = 0;
  std::uint64_t seed = 0, stream = 0;
  std::vector<double> data;

  static SampleRecord from_matrix(std::string id, const CornerMatrix& x, RngHandle h);
  CornerMatrix to_matrix() const;
};

/// Writes newline-delimited records, one JSON object per line, with the
/// fixed key order id, field, n, m, seed, stream, data, v. Deterministic:
/// identical inputs give byte-identical output (shortest round-trip float
/// formatting).
void write_samples(const std::vector<SampleRecord>& samples, std::ostream& out);
void write_samples_file(const std::vector<SampleRecord>& samples, const std::string& path);

/// Reads records back; read(write(x)) == x bit-exactly for finite
/// doubles. Throws SchemaViolation with the offending line number.
std::vector<SampleRecord> read_samples(std::istream& in);
std::vector<SampleRecord> read_samples_file(const std::string& path);

// Structured single-document writers. `config` carries the fully
// resolved parameter set and seed lineage of the producing run and is
// embedded verbatim.

ojson report_to_json(const TestReport& report, const ojson& config = ojson::object());
ojson report_set_to_json(const std::vector<TestReport>& reports,
                         const ojson& config = ojson::object());
ojson mixture_to_json(const EmpiricalMixture& mixture, const ojson& config = ojson::object());
ojson cf_to_json(const CFEvaluation& cf, const ojson& config = ojson::object());

void write_document(const ojson& doc, std::ostream& out);
void write_document_file(const ojson& doc, const std::string& path);

/// Estimate table: CSV with header id, s_1..s_m, method, n, residual.
void write_estimates_csv(const std::vector<std::string>& ids,
                         const std::vector<SpectrumEstimate>& estimates, std::ostream& out);

}  // namespace ergomat

#endif  // ERGOMAT_IO_HPP
