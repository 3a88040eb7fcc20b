#pragma once

#include "qrm/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qrm {

// Shortest-round-trip decimal text for a double ("%.17g"); used for every
// numeric field written by the library so output bytes are reproducible.
std::string format_double(double x);

// FNV-1a 64-bit over raw bytes; used to stamp config identity into CSVs.
std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t v);

// RFC 4180 field quoting (quotes fields containing comma, quote, CR or LF).
std::string csv_escape(const std::string& field);

// Line-oriented CSV writer with CRLF-free LF endings and a leading comment
// row "# <note>" when note is nonempty.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::string& note,
            const std::vector<std::string>& columns);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void row(const std::vector<std::string>& fields);
  void close();

 private:
  void* file_ = nullptr;
  std::string path_;
  std::size_t n_cols_ = 0;
};

// Standard note line placed in every harness CSV.
std::string csv_note(std::uint64_t config_hash, std::uint64_t seed);

void write_trace_csv(const std::string& path,
                     const std::vector<TraceRecord>& trace,
                     const std::string& note);

// Flat vector CSV: "value" header then one entry per line.
void write_vector_csv(const std::string& path, const Vec& v);
Vec read_vector_csv(const std::string& path);

// 16-bit PGM. peak <= 0 means scale by the image maximum; the scale used is
// recorded in a '#' header comment. binary selects P5 (big-endian samples)
// over P2. Values are clamped to [0, peak] before quantization.
void write_pgm(const std::string& path, const Image& img, double peak = -1.0,
               bool binary = true);
// Reads P2/P5, rescaling samples back to [0, peak] using the recorded peak
// comment (1.0 when absent).
Image read_pgm(const std::string& path);

// P1 portable bitmap for sampling masks.
void write_pbm(const std::string& path, const Mask& mask);
Mask read_pbm(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);

} // namespace qrm
