#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qrm {

// Config/CLI errors carry the conventional exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Minimal INI reader: [section] headers, key = value pairs, '#'/';' comments,
// blank lines. Parse errors and typed-get failures throw ConfigError with
// "file:line:" prefixes so the CLI can report the offending line.
class IniFile {
 public:
  static IniFile load(const std::string& path);
  static IniFile parse(const std::string& text, const std::string& name);

  bool has_section(const std::string& section) const;
  bool has(const std::string& section, const std::string& key) const;

  std::string get_string(const std::string& section,
                         const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key) const;
  double get_double(const std::string& section, const std::string& key,
                    double fallback) const;
  int get_int(const std::string& section, const std::string& key) const;
  int get_int(const std::string& section, const std::string& key,
              int fallback) const;
  std::uint64_t get_u64(const std::string& section, const std::string& key,
                        std::uint64_t fallback) const;
  // Comma-separated lists, e.g. "250, 260, 270".
  std::vector<int> get_int_list(const std::string& section,
                                const std::string& key) const;
  std::vector<double> get_double_list(const std::string& section,
                                      const std::string& key) const;

  // Raw file bytes as loaded; hashed into CSV headers.
  const std::string& text() const { return text_; }
  const std::string& name() const { return name_; }

 private:
  struct Entry {
    std::string value;
    int line = 0;
  };
  const Entry* find(const std::string& section, const std::string& key) const;
  [[noreturn]] void fail_missing(const std::string& section,
                                 const std::string& key) const;

  std::string name_;
  std::string text_;
  std::map<std::string, std::map<std::string, Entry>> sections_;
};

} // namespace qrm
