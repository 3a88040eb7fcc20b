#include "qrm/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace qrm {

std::string format_double(double x) {
  // std::to_chars emits the shortest text that round-trips, locale-free.
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(v));
  return std::string(buf);
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

CsvWriter::CsvWriter(const std::string& path, const std::string& note,
                     const std::vector<std::string>& columns)
    : path_(path), n_cols_(columns.size()) {
  FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("CsvWriter: cannot open " + path);
  file_ = f;
  if (!note.empty()) std::fprintf(f, "# %s\n", note.c_str());
  row(columns);
}

CsvWriter::~CsvWriter() {
  if (file_) std::fclose(static_cast<FILE*>(file_));
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  if (!file_) throw std::runtime_error("CsvWriter: writer is closed");
  if (fields.size() != n_cols_)
    throw std::invalid_argument("CsvWriter: field count mismatch in " + path_);
  FILE* f = static_cast<FILE*>(file_);
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const std::string e = csv_escape(fields[i]);
    if (i) std::fputc(',', f);
    std::fwrite(e.data(), 1, e.size(), f);
  }
  std::fputc('\n', f);
}

void CsvWriter::close() {
  if (file_) {
    std::fclose(static_cast<FILE*>(file_));
    file_ = nullptr;
  }
}

std::string csv_note(std::uint64_t config_hash, std::uint64_t seed) {
  return "config_hash=" + hex64(config_hash) + " seed=" + std::to_string(seed);
}

void write_trace_csv(const std::string& path,
                     const std::vector<TraceRecord>& trace,
                     const std::string& note) {
  CsvWriter w(path, note,
              {"k", "G", "R", "fidelity", "u_norm", "Au_minus_f_norm",
               "rel_change", "inner_iters"});
  for (const auto& r : trace)
    w.row({std::to_string(r.k), format_double(r.objective),
           format_double(r.ratio), format_double(r.fidelity),
           format_double(r.u_norm), format_double(r.au_minus_f_norm),
           format_double(r.rel_change), std::to_string(r.inner_iters)});
}

void write_vector_csv(const std::string& path, const Vec& v) {
  CsvWriter w(path, "", {"value"});
  for (Eigen::Index i = 0; i < v.size(); ++i) w.row({format_double(v[i])});
}

Vec read_vector_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_vector_csv: cannot open " + path);
  std::string line;
  std::vector<double> vals;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true; // "value"
      continue;
    }
    vals.push_back(std::strtod(line.c_str(), nullptr));
  }
  Vec v(static_cast<Eigen::Index>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = vals[i];
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_file: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_file: cannot open " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write_file: short write to " + path);
}

// ----------------------------------------------------------------- netpbm

namespace {

constexpr int kMaxval = 65535;

// Reads whitespace-separated header tokens, skipping '#' comments, and
// collects comment text for the peak annotation.
struct TokenReader {
  const std::string& s;
  std::size_t pos = 0;
  std::vector<std::string> comments;

  explicit TokenReader(const std::string& text) : s(text) {}

  std::string next() {
    while (pos < s.size()) {
      if (s[pos] == '#') {
        std::size_t end = s.find('\n', pos);
        if (end == std::string::npos) end = s.size();
        comments.push_back(s.substr(pos + 1, end - pos - 1));
        pos = end;
      } else if (std::isspace(static_cast<unsigned char>(s[pos]))) {
        ++pos;
      } else {
        break;
      }
    }
    const std::size_t start = pos;
    while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (start == pos) throw std::runtime_error("netpbm: truncated header");
    return s.substr(start, pos - start);
  }
};

int parse_dim(const std::string& tok, const char* what) {
  char* end = nullptr;
  const long v = std::strtol(tok.c_str(), &end, 10);
  if (!end || *end != '\0' || v < 1)
    throw std::runtime_error(std::string("netpbm: bad ") + what);
  return static_cast<int>(v);
}

int parse_sample(const std::string& tok, int maxval) {
  char* end = nullptr;
  const long v = std::strtol(tok.c_str(), &end, 10);
  if (!end || *end != '\0' || v < 0 || v > maxval)
    throw std::runtime_error("netpbm: bad sample value '" + tok + "'");
  return static_cast<int>(v);
}

} // namespace

void write_pgm(const std::string& path, const Image& img, double peak,
               bool binary) {
  if (img.rows() < 1 || img.cols() < 1)
    throw std::invalid_argument("write_pgm: empty image");
  if (!img.allFinite())
    throw std::invalid_argument("write_pgm: non-finite pixels");
  if (peak <= 0.0) peak = std::max(img.maxCoeff(), 0.0);
  if (peak <= 0.0) peak = 1.0;
  const int h = static_cast<int>(img.rows()), w = static_cast<int>(img.cols());
  std::string out;
  out += binary ? "P5\n" : "P2\n";
  out += "# peak " + format_double(peak) + "\n";
  out += std::to_string(w) + " " + std::to_string(h) + "\n65535\n";
  auto quant = [&](double v) {
    const double c = std::min(std::max(v, 0.0), peak);
    return static_cast<int>(std::lround(c / peak * kMaxval));
  };
  if (binary) {
    out.reserve(out.size() + static_cast<std::size_t>(h) * w * 2);
    for (int i = 0; i < h; ++i)
      for (int j = 0; j < w; ++j) {
        const int q = quant(img(i, j));
        out += static_cast<char>((q >> 8) & 0xFF);
        out += static_cast<char>(q & 0xFF);
      }
  } else {
    for (int i = 0; i < h; ++i) {
      for (int j = 0; j < w; ++j) {
        if (j) out += ' ';
        out += std::to_string(quant(img(i, j)));
      }
      out += '\n';
    }
  }
  write_file(path, out);
}

Image read_pgm(const std::string& path) {
  const std::string s = read_file(path);
  TokenReader tr(s);
  const std::string magic = tr.next();
  if (magic != "P2" && magic != "P5")
    throw std::runtime_error("read_pgm: not a PGM file: " + path);
  const int w = parse_dim(tr.next(), "width");
  const int h = parse_dim(tr.next(), "height");
  const int maxval = parse_dim(tr.next(), "maxval");
  double peak = 1.0;
  for (const auto& c : tr.comments) {
    std::istringstream ss(c);
    std::string word;
    double v;
    if (ss >> word >> v && word == "peak") peak = v;
  }
  Image img(h, w);
  if (magic == "P5") {
    std::size_t pos = tr.pos + 1; // single whitespace after maxval
    const int bytes = maxval > 255 ? 2 : 1;
    if (s.size() < pos + static_cast<std::size_t>(h) * w * bytes)
      throw std::runtime_error("read_pgm: truncated pixel data");
    for (int i = 0; i < h; ++i)
      for (int j = 0; j < w; ++j) {
        int q = static_cast<unsigned char>(s[pos++]);
        if (bytes == 2) q = (q << 8) | static_cast<unsigned char>(s[pos++]);
        img(i, j) = static_cast<double>(q) / maxval * peak;
      }
  } else {
    for (int i = 0; i < h; ++i)
      for (int j = 0; j < w; ++j) {
        const int q = parse_sample(tr.next(), maxval);
        img(i, j) = static_cast<double>(q) / maxval * peak;
      }
  }
  return img;
}

void write_pbm(const std::string& path, const Mask& mask) {
  const int h = static_cast<int>(mask.rows()), w = static_cast<int>(mask.cols());
  if (h < 1 || w < 1) throw std::invalid_argument("write_pbm: empty mask");
  std::string out = "P1\n" + std::to_string(w) + " " + std::to_string(h) + "\n";
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      if (j) out += ' ';
      out += mask(i, j) ? '1' : '0';
    }
    out += '\n';
  }
  write_file(path, out);
}

Mask read_pbm(const std::string& path) {
  const std::string s = read_file(path);
  TokenReader tr(s);
  if (tr.next() != "P1")
    throw std::runtime_error("read_pbm: not a plain PBM file: " + path);
  const int w = parse_dim(tr.next(), "width");
  const int h = parse_dim(tr.next(), "height");
  Mask m(h, w);
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < w; ++j) {
      const std::string t = tr.next();
      if (t != "0" && t != "1")
        throw std::runtime_error("read_pbm: bad bit value '" + t + "'");
      m(i, j) = t == "1";
    }
  return m;
}

} // namespace qrm
